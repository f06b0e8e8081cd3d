//! Rank-2 analysis: recognizing powers of the Nielsen transformation τ
//! (a1 ↦ a1 a2) up to inner automorphisms and conjugacy, with explicit
//! similarity witnesses.

use thiserror::Error;

use crate::automorphisms::{AutError, Automorphism, IntMatrix};
use crate::words::{enumerate_ball, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NielsenError {
    #[error("operation requires a rank-2 basis, got rank {0}")]
    RankNot2(usize),
    #[error("input is not a conjugate of τ^±1 within the validation bounds")]
    NotNielsenConjugate,
    #[error(transparent)]
    Aut(#[from] AutError),
}

/// Witness that φ = ad_y ∘ τ^p ∘ ad_y⁻¹, equivalently φ = ad_w ∘ τ^p with
/// w = y·τ^p(y)⁻¹.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NielsenWitness {
    pub p: i32,
    pub y: Word,
}

impl NielsenWitness {
    /// Rebuilds ad_y ∘ τ^p ∘ ad_y⁻¹ over the witness's own basis.
    pub fn reconstruct(&self) -> Automorphism {
        let ad_y = Automorphism::inner(&self.y);
        let tau_p = Automorphism::nielsen_tau(self.y.basis()).pow(self.p);
        ad_y.compose(&tau_p).unwrap().compose(&ad_y.inverse()).unwrap()
    }

    pub fn reproduces(&self, phi: &Automorphism) -> bool {
        &self.reconstruct() == phi
    }
}

/// Outcome of a bounded witness search: the abelianized obstruction gives
/// cheap definitive negatives, everything else within bounds is honest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome {
    Witness(NielsenWitness),
    DefinitiveNo,
    Inconclusive,
}

impl WitnessOutcome {
    pub fn witness(&self) -> Option<&NielsenWitness> {
        match self {
            WitnessOutcome::Witness(w) => Some(w),
            _ => None,
        }
    }
}

fn require_rank2(phi: &Automorphism) -> Result<(), NielsenError> {
    let rank = phi.basis().rank();
    if rank != 2 {
        return Err(NielsenError::RankNot2(rank));
    }
    Ok(())
}

/// Outer-class criterion: the abelianization matrix has trace 2 and
/// determinant 1. By convention this includes the zeroth power (identity
/// class) and all inner automorphisms.
pub fn is_nielsen_power_outer(phi: &Automorphism) -> Result<bool, NielsenError> {
    require_rank2(phi)?;
    let m = phi.abelianization_matrix(None);
    Ok(m.trace() == 2 && m.det2() == 1)
}

/// Searches for (p, y) with φ = ad_y ∘ τ^p ∘ ad_y⁻¹, |p| ≤ `max_power` and
/// |y| ≤ `ball_bound`.
///
/// If φ = ad_w ∘ τ^p, a witness y must satisfy w = y·τ^p(y)⁻¹; abelianized,
/// (I − M_τ^p)·ŷ = ŵ forces ŵ₁ = 0 and p | ŵ₂, which yields definitive
/// negatives without any search. When φ is not even of the ad_w∘τ^p shape
/// (wrong matrix, or the τ^p-corrected map is not inner) the answer is also
/// a definitive no.
pub fn nielsen_power_witness(
    phi: &Automorphism,
    ball_bound: usize,
    max_power: u32,
) -> Result<WitnessOutcome, NielsenError> {
    require_rank2(phi)?;
    let basis = phi.basis();
    let m = phi.abelianization_matrix(None);
    // ad_w abelianizes trivially, so φ = ad_w ∘ τ^p forces the matrix of τ^p.
    if m.entries[0][0] != 1 || m.entries[0][1] != 0 || m.entries[1][1] != 1 {
        return Ok(WitnessOutcome::DefinitiveNo);
    }
    let p64 = m.entries[1][0];
    if p64.unsigned_abs() > u64::from(max_power) {
        return Ok(WitnessOutcome::Inconclusive);
    }
    let p = p64 as i32;
    let tau = Automorphism::nielsen_tau(basis);
    let corrected = phi.compose(&tau.pow(-p)).unwrap();
    let w = match corrected.inner_conjugator() {
        Ok(w) => w,
        Err(AutError::NotInner) => return Ok(WitnessOutcome::DefinitiveNo),
        Err(e) => return Err(e.into()),
    };
    if p == 0 {
        // y·τ^0(y)⁻¹ = ε, so only the identity has a zeroth-power witness.
        return Ok(if w.is_identity() {
            WitnessOutcome::Witness(NielsenWitness { p: 0, y: Word::identity(basis) })
        } else {
            WitnessOutcome::DefinitiveNo
        });
    }
    let sums = w.exponent_sums();
    if sums[0] != 0 || sums[1] % p64 != 0 {
        return Ok(WitnessOutcome::DefinitiveNo);
    }
    let tau_p = tau.pow(p);
    for y in enumerate_ball(basis, ball_bound) {
        if y.mul(&tau_p.apply(&y).invert()) == w {
            let witness = NielsenWitness { p, y };
            debug_assert!(witness.reproduces(phi));
            return Ok(WitnessOutcome::Witness(witness));
        }
    }
    Ok(WitnessOutcome::Inconclusive)
}

/// Report on a pair of conjugates of τ^±1 at given powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutingReport {
    /// Whether τ0^p and τ1^q commute.
    pub powers_commute: bool,
    /// Whether τ0 and τ1 themselves commute.
    pub commute: bool,
    /// When both hold: a bounded search result for w ∈ Fix(τ0) with
    /// τ1 = ad_w ∘ τ0^±1, as (w, sign).
    pub fix_witness: Option<(Word, i32)>,
}

/// Validates that both inputs are conjugates of τ^±1, checks commutation of
/// the given powers and of the transformations themselves, and when both
/// commute searches Fix(τ0) (length ≤ `fix_bound`) for w with
/// τ1 = ad_w ∘ τ0^±1.
pub fn commuting_nielsen_check(
    tau0: &Automorphism,
    tau1: &Automorphism,
    p: i32,
    q: i32,
    fix_bound: usize,
) -> Result<CommutingReport, NielsenError> {
    require_rank2(tau0)?;
    if tau0.basis() != tau1.basis() {
        return Err(NielsenError::Aut(AutError::BasisMismatch));
    }
    // Inputs must look like first powers: matrix [[1,0],[±1,1]]. (Inner
    // twists without conjugation witnesses are admitted; the report's job is
    // precisely to discover whether a Fix(τ0) witness relates the pair.)
    for t in [tau0, tau1] {
        let m = t.abelianization_matrix(None);
        let shape_ok = m.entries[0][0] == 1
            && m.entries[0][1] == 0
            && m.entries[1][1] == 1
            && m.entries[1][0].abs() == 1;
        if !shape_ok {
            return Err(NielsenError::NotNielsenConjugate);
        }
    }
    let powers_commute = {
        let a = tau0.pow(p);
        let b = tau1.pow(q);
        a.compose(&b).unwrap() == b.compose(&a).unwrap()
    };
    let commute = tau0.compose(tau1).unwrap() == tau1.compose(tau0).unwrap();
    let mut fix_witness = None;
    if powers_commute && commute {
        'outer: for w in tau0.fixed_words(fix_bound) {
            for sign in [1, -1] {
                let candidate = Automorphism::inner(&w).compose(&tau0.pow(sign)).unwrap();
                if &candidate == tau1 {
                    fix_witness = Some((w, sign));
                    break 'outer;
                }
            }
        }
    }
    Ok(CommutingReport { powers_commute, commute, fix_witness })
}

/// Exhaustive micro-theorem about 2x2 integer matrices: if M has trace 2 and
/// det 1, and M·E_n also has trace 2 for some n ≠ 0 (E_n the elementary
/// matrix with n in the upper-right corner), then the lower-left entry of M
/// vanishes. Checks all entries and n in [-bound, bound]; returns the list
/// of violations (expected empty).
pub fn trace_closure_violations(bound: i64) -> Vec<(IntMatrix, i64)> {
    let mut violations = Vec::new();
    let range = -bound..=bound;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                let d = 2 - a;
                if d < -bound || d > bound || a * d - b * c != 1 {
                    continue;
                }
                for n in range.clone() {
                    if n == 0 {
                        continue;
                    }
                    // trace(M·E_n) = a + (c·n + d) = 2 + c·n
                    if a + c * n + d == 2 && c != 0 {
                        violations.push((
                            IntMatrix {
                                entries: vec![vec![a, b], vec![c, d]],
                                modulus: None,
                            },
                            n,
                        ));
                    }
                }
            }
        }
    }
    violations
}
