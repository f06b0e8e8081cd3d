//! The explicit maximal direct-product families in Aut(F_N) and Out(F_N):
//! transvection factors L_i / R_i (and their τ-fixed variants), inner
//! factors I(A), and the mixed factors adjoining the Nielsen transformation
//! τ — plus desk-scale verification that they really assemble into direct
//! products.

use std::collections::BTreeSet;
use std::str::FromStr;

use thiserror::Error;

use crate::automorphisms::{AutError, Automorphism};
use crate::mk_product::{centralizer_probe, MkElement, MkError};
use crate::splittings::{rose_stab_membership, rose_to_mk, RoseSplitting, SplitError};
use crate::words::{enumerate_ball, Basis, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("rank {0} too small; families need N >= 3")]
    RankTooSmall(usize),
    #[error("unknown family kind `{0}`")]
    UnknownKind(String),
    #[error("malformed family spec `{0}`")]
    BadSpec(String),
    #[error("family generators do not stabilize the standard rose")]
    NotInRoseStabilizer,
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Mk(#[from] MkError),
    #[error(transparent)]
    Split(#[from] SplitError),
}

/// The seven listed product families plus the basic product D_B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// L_1 × R_1 × … × L_{N-2} × R_{N-2}.
    DB,
    /// L_1 × … × L_{N-2} × R_1 × … × R_{N-2} × I(A).
    AutPlain,
    /// τ-fixed transvections and inners, with a central ⟨τ⟩ factor.
    AutTauCentral,
    /// ⟨τ, L_1⟩ mixed with the remaining τ-fixed factors.
    AutTauFirst,
    /// τ-fixed transvections with the mixed factor ⟨I(A), τ⟩.
    AutTauInner,
    /// Out-version: L_1 × … × L_{N-2} × R_1 × … × R_{N-2}.
    OutPlain,
    /// Out-version with a central ⟨[τ]⟩ factor.
    OutTauCentral,
    /// Out-version with the mixed factor ⟨[τ], L_1⟩.
    OutTauFirst,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 8] = [
        FamilyKind::DB,
        FamilyKind::AutPlain,
        FamilyKind::AutTauCentral,
        FamilyKind::AutTauFirst,
        FamilyKind::AutTauInner,
        FamilyKind::OutPlain,
        FamilyKind::OutTauCentral,
        FamilyKind::OutTauFirst,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::DB => "DB",
            FamilyKind::AutPlain => "AutPlain",
            FamilyKind::AutTauCentral => "AutTauCentral",
            FamilyKind::AutTauFirst => "AutTauFirst",
            FamilyKind::AutTauInner => "AutTauInner",
            FamilyKind::OutPlain => "OutPlain",
            FamilyKind::OutTauCentral => "OutTauCentral",
            FamilyKind::OutTauFirst => "OutTauFirst",
        }
    }
}

impl FromStr for FamilyKind {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<FamilyKind, FamilyError> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| FamilyError::UnknownKind(s.to_string()))
    }
}

/// One direct factor, presented by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedFactor {
    pub label: String,
    pub generators: Vec<Automorphism>,
    /// Whether the factor is one of the nonabelian free factors the
    /// theorems count (⟨τ⟩ and ⟨[τ]⟩ are cyclic, hence excluded).
    pub expect_nonabelian: bool,
}

fn tau_fixed_params(basis: &Basis) -> Vec<Word> {
    // generators of Fix(τ) ∩ A
    vec![
        basis.parse_word("a1 a2 a1^-1").unwrap(),
        basis.parse_word("a2").unwrap(),
    ]
}

fn plain_params(basis: &Basis) -> Vec<Word> {
    vec![
        basis.parse_word("a1").unwrap(),
        basis.parse_word("a2").unwrap(),
    ]
}

fn left_factor(basis: &Basis, i: usize, params: &[Word], suffix: &str) -> GeneratedFactor {
    GeneratedFactor {
        label: format!("L_{i}{suffix}"),
        generators: params
            .iter()
            .map(|w| Automorphism::left_transvection(basis, i, w).unwrap())
            .collect(),
        expect_nonabelian: true,
    }
}

fn right_factor(basis: &Basis, i: usize, params: &[Word], suffix: &str) -> GeneratedFactor {
    GeneratedFactor {
        label: format!("R_{i}{suffix}"),
        generators: params
            .iter()
            .map(|w| Automorphism::right_transvection(basis, i, w).unwrap())
            .collect(),
        expect_nonabelian: true,
    }
}

fn inner_factor(params: &[Word], label: &str) -> GeneratedFactor {
    GeneratedFactor {
        label: label.to_string(),
        generators: params.iter().map(Automorphism::inner).collect(),
        expect_nonabelian: true,
    }
}

/// Factor-wise generator sets for the given family at rank `n`.
pub fn family_generators(kind: FamilyKind, n: usize) -> Result<Vec<GeneratedFactor>, FamilyError> {
    if n < 3 {
        return Err(FamilyError::RankTooSmall(n));
    }
    let basis = Basis::standard(n);
    let k = n - 2;
    let plain = plain_params(&basis);
    let fixed = tau_fixed_params(&basis);
    let tau = Automorphism::nielsen_tau(&basis);
    let mut factors = Vec::new();
    match kind {
        FamilyKind::DB => {
            for i in 1..=k {
                factors.push(left_factor(&basis, i, &plain, ""));
                factors.push(right_factor(&basis, i, &plain, ""));
            }
        }
        FamilyKind::AutPlain => {
            for i in 1..=k {
                factors.push(left_factor(&basis, i, &plain, ""));
            }
            for i in 1..=k {
                factors.push(right_factor(&basis, i, &plain, ""));
            }
            factors.push(inner_factor(&plain, "I(A)"));
        }
        FamilyKind::AutTauCentral => {
            for i in 1..=k {
                factors.push(left_factor(&basis, i, &fixed, "^t"));
            }
            for i in 1..=k {
                factors.push(right_factor(&basis, i, &fixed, "^t"));
            }
            factors.push(inner_factor(&fixed, "I(A)^t"));
            factors.push(GeneratedFactor {
                label: "<t>".to_string(),
                generators: vec![tau],
                expect_nonabelian: false,
            });
        }
        FamilyKind::AutTauFirst => {
            let mut mixed_gens = vec![tau];
            mixed_gens.extend(left_factor(&basis, 1, &plain, "").generators);
            factors.push(GeneratedFactor {
                label: "<t, L_1>".to_string(),
                generators: mixed_gens,
                expect_nonabelian: true,
            });
            for i in 2..=k {
                factors.push(left_factor(&basis, i, &fixed, "^t"));
            }
            for i in 1..=k {
                factors.push(right_factor(&basis, i, &fixed, "^t"));
            }
            factors.push(inner_factor(&fixed, "I(A)^t"));
        }
        FamilyKind::AutTauInner => {
            for i in 1..=k {
                factors.push(left_factor(&basis, i, &fixed, "^t"));
            }
            for i in 1..=k {
                factors.push(right_factor(&basis, i, &fixed, "^t"));
            }
            let mut mixed = inner_factor(&plain, "<I(A), t>");
            mixed.generators.push(tau);
            factors.push(mixed);
        }
        FamilyKind::OutPlain => {
            for i in 1..=k {
                factors.push(left_factor(&basis, i, &plain, ""));
            }
            for i in 1..=k {
                factors.push(right_factor(&basis, i, &plain, ""));
            }
        }
        FamilyKind::OutTauCentral => {
            for i in 1..=k {
                factors.push(left_factor(&basis, i, &fixed, "^t"));
            }
            for i in 1..=k {
                factors.push(right_factor(&basis, i, &fixed, "^t"));
            }
            factors.push(GeneratedFactor {
                label: "<[t]>".to_string(),
                generators: vec![tau],
                expect_nonabelian: false,
            });
        }
        FamilyKind::OutTauFirst => {
            let mut mixed_gens = vec![tau];
            mixed_gens.extend(left_factor(&basis, 1, &plain, "").generators);
            factors.push(GeneratedFactor {
                label: "<[t], L_1>".to_string(),
                generators: mixed_gens,
                expect_nonabelian: true,
            });
            for i in 2..=k {
                factors.push(left_factor(&basis, i, &fixed, "^t"));
            }
            for i in 1..=k {
                factors.push(right_factor(&basis, i, &fixed, "^t"));
            }
        }
    }
    Ok(factors)
}

/// Outcome of the pairwise commutation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectProductReport {
    /// Cross-factor generator pairs that failed to commute, as
    /// (label1, gen index, label2, gen index).
    pub cross_failures: Vec<(String, usize, String, usize)>,
    /// Per factor: a non-commuting generator pair when one exists.
    pub nonabelian_witnesses: Vec<(String, Option<(usize, usize)>)>,
}

impl DirectProductReport {
    /// All cross pairs commute and every listed-nonabelian factor has a
    /// witness pair.
    pub fn passes(&self, factors: &[GeneratedFactor]) -> bool {
        self.cross_failures.is_empty()
            && factors.iter().zip(&self.nonabelian_witnesses).all(|(f, (_, w))| {
                !f.expect_nonabelian || w.is_some()
            })
    }
}

fn commutes(a: &Automorphism, b: &Automorphism) -> bool {
    a.compose(b).unwrap() == b.compose(a).unwrap()
}

/// Symbolic commutator evaluation across and within factors.
pub fn check_direct_product(factors: &[GeneratedFactor]) -> DirectProductReport {
    let mut cross_failures = Vec::new();
    for (fi, f) in factors.iter().enumerate() {
        for g in factors.iter().skip(fi + 1) {
            for (i, a) in f.generators.iter().enumerate() {
                for (j, b) in g.generators.iter().enumerate() {
                    if !commutes(a, b) {
                        cross_failures.push((f.label.clone(), i, g.label.clone(), j));
                    }
                }
            }
        }
    }
    let nonabelian_witnesses = factors
        .iter()
        .map(|f| {
            let mut witness = None;
            'search: for i in 0..f.generators.len() {
                for j in i + 1..f.generators.len() {
                    if !commutes(&f.generators[i], &f.generators[j]) {
                        witness = Some((i, j));
                        break 'search;
                    }
                }
            }
            (f.label.clone(), witness)
        })
        .collect();
    DirectProductReport { cross_failures, nonabelian_witnesses }
}

/// All automorphisms expressible as products of at most `depth` generators
/// of the factor and their inverses, sorted and deduplicated.
pub fn depth_table(factor: &GeneratedFactor, depth: usize) -> Vec<Automorphism> {
    let mut seen: BTreeSet<Automorphism> = BTreeSet::new();
    let Some(first) = factor.generators.first() else {
        return Vec::new();
    };
    let mut frontier = vec![Automorphism::identity(first.basis())];
    seen.insert(frontier[0].clone());
    for _ in 0..depth {
        let mut next = Vec::new();
        for phi in &frontier {
            for g in &factor.generators {
                for h in [g.clone(), g.inverse()] {
                    let prod = phi.compose(&h).unwrap();
                    if seen.insert(prod.clone()) {
                        next.push(prod);
                    }
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

/// Elements common to the two factors' depth-`d` composition tables.
pub fn bounded_intersection(
    f1: &GeneratedFactor,
    f2: &GeneratedFactor,
    d: usize,
) -> Vec<Automorphism> {
    let t1: BTreeSet<Automorphism> = depth_table(f1, d).into_iter().collect();
    depth_table(f2, d).into_iter().filter(|phi| t1.contains(phi)).collect()
}

/// Depth-table members acting trivially on homology mod 3.
pub fn ia3_filter(factor: &GeneratedFactor, depth: usize) -> Vec<Automorphism> {
    depth_table(factor, depth)
        .into_iter()
        .filter(Automorphism::is_in_ia3)
        .collect()
}

/// Replaces every generator φ by ψ∘φ∘ψ⁻¹.
pub fn conjugate_family(
    factors: &[GeneratedFactor],
    psi: &Automorphism,
) -> Result<Vec<GeneratedFactor>, FamilyError> {
    let psi_inv = psi.inverse();
    factors
        .iter()
        .map(|f| {
            Ok(GeneratedFactor {
                label: f.label.clone(),
                generators: f
                    .generators
                    .iter()
                    .map(|g| Ok(psi.compose(g)?.compose(&psi_inv)?))
                    .collect::<Result<Vec<Automorphism>, FamilyError>>()?,
                expect_nonabelian: f.expect_nonabelian,
            })
        })
        .collect()
}

/// Bounds for the M_{2k}(A) centralizer probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeBounds {
    /// Coordinate words range over the ball of this radius in A.
    pub coord_len: usize,
    /// Aut-parts range over τ^p for |p| ≤ tau_power, plus inner
    /// automorphisms by ball words.
    pub tau_power: u32,
}

/// Per-generator commutation data for τ against a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerEvidence {
    pub kind: FamilyKind,
    /// (factor label, generator index, commutes with τ).
    pub per_generator: Vec<(String, usize, bool)>,
    /// Labels of factors whose generator list contains τ itself.
    pub tau_factors: Vec<String>,
    /// Bounded probe through the rose bridge, when bounds were supplied:
    /// all enumerated M_{2k}(A) elements commuting with every factor image.
    pub probe: Option<Vec<MkElement>>,
}

impl CentralizerEvidence {
    /// τ commutes with every generator of every factor.
    pub fn tau_centralizes_all(&self) -> bool {
        self.per_generator.iter().all(|&(_, _, c)| c)
    }

    /// τ commutes with every generator outside the factors containing it.
    pub fn tau_centralizes_other_factors(&self) -> bool {
        self.per_generator
            .iter()
            .all(|(label, _, c)| *c || self.tau_factors.contains(label))
    }

    pub fn failing_pair(&self) -> Option<(&str, usize)> {
        self.per_generator
            .iter()
            .find(|&&(_, _, c)| !c)
            .map(|(l, i, _)| (l.as_str(), *i))
    }
}

/// Symbolic commutation of τ against every generator, plus an optional
/// bounded centralizer probe of the whole family inside M_{2k}(A) via the
/// rose-stabilizer bridge.
pub fn centralizer_evidence(
    kind: FamilyKind,
    n: usize,
    bounds: Option<ProbeBounds>,
) -> Result<CentralizerEvidence, FamilyError> {
    let factors = family_generators(kind, n)?;
    let basis = Basis::standard(n);
    let tau = Automorphism::nielsen_tau(&basis);
    let mut per_generator = Vec::new();
    let mut tau_factors = Vec::new();
    for f in &factors {
        if f.generators.contains(&tau) {
            tau_factors.push(f.label.clone());
        }
        for (i, g) in f.generators.iter().enumerate() {
            per_generator.push((f.label.clone(), i, commutes(&tau, g)));
        }
    }
    let probe = match bounds {
        None => None,
        Some(b) => Some(probe_family(&factors, n, b)?),
    };
    Ok(CentralizerEvidence { kind, per_generator, tau_factors, probe })
}

fn probe_family(
    factors: &[GeneratedFactor],
    n: usize,
    bounds: ProbeBounds,
) -> Result<Vec<MkElement>, FamilyError> {
    let basis = Basis::standard(n);
    let rose = RoseSplitting::new(&basis, n - 2)?;
    let mut images = Vec::new();
    for f in factors {
        for g in &f.generators {
            let d = rose_stab_membership(g, &rose).ok_or(FamilyError::NotInRoseStabilizer)?;
            images.push(rose_to_mk(&d)?);
        }
    }
    let a_basis = Basis::standard(2);
    let arity = 2 * (n - 2);
    let tau_a = Automorphism::nielsen_tau(&a_basis);
    let mut phis: Vec<Automorphism> = (-(bounds.tau_power as i32)..=bounds.tau_power as i32)
        .map(|p| tau_a.pow(p))
        .collect();
    for g in enumerate_ball(&a_basis, bounds.coord_len) {
        let ad = Automorphism::inner(&g);
        if !phis.contains(&ad) {
            phis.push(ad);
        }
    }
    let words: Vec<Word> = enumerate_ball(&a_basis, bounds.coord_len).collect();
    let mut enumerator = Vec::new();
    let mut idx = vec![0usize; arity];
    'outer: loop {
        let coords: Vec<Word> = idx.iter().map(|&i| words[i].clone()).collect();
        for phi in &phis {
            enumerator.push(MkElement::new(coords.clone(), phi.clone())?);
        }
        let mut c = 0;
        loop {
            if c == arity {
                break 'outer;
            }
            idx[c] += 1;
            if idx[c] < words.len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
    Ok(centralizer_probe(&images, enumerator)?)
}

/// Parsed `Kind@N=4` spec with optional `~conj=<automorphism literal>`.
#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    pub conjugator: Option<Automorphism>,
}

impl FamilySpec {
    pub fn factors(&self) -> Result<Vec<GeneratedFactor>, FamilyError> {
        let factors = family_generators(self.kind, self.n)?;
        match &self.conjugator {
            None => Ok(factors),
            Some(psi) => conjugate_family(&factors, psi),
        }
    }
}

pub fn parse_family_spec(text: &str) -> Result<FamilySpec, FamilyError> {
    let (head, conj_text) = match text.split_once("~conj=") {
        Some((h, c)) => (h.trim_end(), Some(c)),
        None => (text, None),
    };
    let (kind_text, n_text) = head
        .split_once('@')
        .ok_or_else(|| FamilyError::BadSpec(text.to_string()))?;
    let kind = kind_text.trim().parse::<FamilyKind>()?;
    let n = n_text
        .trim()
        .strip_prefix("N=")
        .and_then(|v| v.parse::<usize>().ok())
        .ok_or_else(|| FamilyError::BadSpec(text.to_string()))?;
    if n < 3 {
        return Err(FamilyError::RankTooSmall(n));
    }
    let conjugator = match conj_text {
        None => None,
        Some(lit) => Some(Automorphism::parse(&Basis::standard(n), lit, 4)?),
    };
    Ok(FamilySpec { kind, n, conjugator })
}
