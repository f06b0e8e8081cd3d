//! Collapsed roses and cages: coset-level pieces of their Bass–Serre trees,
//! the twisted-equivariant action of stabilizing automorphisms, and the
//! decomposition of rose stabilizers into signed-permutation and M_{2k}(A)
//! data.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automorphisms::{AutError, Automorphism};
use crate::mk_product::{MkElement, MkError};
use crate::words::{enumerate_ball, Basis, Letter, Sign, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("petal count {k} out of range for rank {n}")]
    BadPetalCount { n: usize, k: usize },
    #[error("petal index {0} out of range")]
    PetalOutOfRange(usize),
    #[error("factors do not partition the basis")]
    BadPartition,
    #[error("automorphism does not carry the vertex factor to a conjugate of itself")]
    NotCosetCompatible,
    #[error("decomposition has a nontrivial petal permutation or inversion")]
    WNotIdentity,
    #[error("splitting has an empty vertex factor; no Aut(A) part exists")]
    DegenerateVertexFactor,
    #[error("element arity {0} does not match the splitting (expected {1})")]
    WrongArity(usize, usize),
    #[error("path edge ({0}, {1}) is not in the ball")]
    PathNotInBall(String, String),
    #[error("path is not a simple edge path")]
    PathNotSimple,
    #[error("automorphism fails the edge-stabilizer condition for petal {0}")]
    NotEdgeStabilizer(usize),
    #[error("ball file is malformed: {0}")]
    BadBallFile(String),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Mk(#[from] MkError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// One-vertex free splitting: the vertex group is the standard free factor
/// spanned by `vertex_factor`, and each index in `stable` is a petal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoseSplitting {
    basis: Basis,
    vertex_factor: Vec<usize>,
    stable: Vec<usize>,
}

impl RoseSplitting {
    /// Rose with `k` petals on the last `k` basis letters.
    pub fn new(basis: &Basis, k: usize) -> Result<RoseSplitting, SplitError> {
        let n = basis.rank();
        if k == 0 || k > n {
            return Err(SplitError::BadPetalCount { n, k });
        }
        Ok(RoseSplitting {
            basis: basis.clone(),
            vertex_factor: (0..n - k).collect(),
            stable: (n - k..n).collect(),
        })
    }

    fn from_parts(basis: &Basis, vertex_factor: Vec<usize>, stable: Vec<usize>) -> RoseSplitting {
        RoseSplitting { basis: basis.clone(), vertex_factor, stable }
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn vertex_factor(&self) -> &[usize] {
        &self.vertex_factor
    }

    pub fn stable(&self) -> &[usize] {
        &self.stable
    }

    pub fn petal_count(&self) -> usize {
        self.stable.len()
    }

    /// Basis index of a 1-based petal.
    pub fn petal_letter(&self, petal: usize) -> Result<usize, SplitError> {
        self.stable
            .get(petal.wrapping_sub(1))
            .copied()
            .ok_or(SplitError::PetalOutOfRange(petal))
    }

    /// The coset gA in normal form: strip the maximal A-suffix. Two words
    /// strip to the same representative iff they lie in the same coset,
    /// because a reduced difference of distinct representatives retains a
    /// stable letter.
    pub fn coset_normal_form(&self, g: &Word) -> CosetVertex {
        let (rep, _) = g.strip_suffix(&self.vertex_factor);
        CosetVertex { rep }
    }

    /// Edge criterion: gA and hA are adjacent iff g⁻¹h, with its maximal
    /// A-prefix and A-suffix stripped, is a single stable letter. Returns
    /// the 1-based petal and the sign of crossing.
    pub fn are_adjacent(&self, g: &CosetVertex, h: &CosetVertex) -> Option<(usize, Sign)> {
        let d = g.rep.invert().mul(&h.rep);
        let (_, rest) = d.strip_prefix(&self.vertex_factor);
        let (mid, _) = rest.strip_suffix(&self.vertex_factor);
        match mid.letters() {
            [l] => self
                .stable
                .iter()
                .position(|&i| i == l.index)
                .map(|p| (p + 1, l.sign)),
            _ => None,
        }
    }

    /// Collapses petal `j` (1-based): its stable letter joins the vertex
    /// factor.
    pub fn collapse_petal(&self, j: usize) -> Result<RoseSplitting, SplitError> {
        if self.stable.len() < 2 {
            return Err(SplitError::BadPetalCount { n: self.basis.rank(), k: self.stable.len() });
        }
        let letter = self.petal_letter(j)?;
        let mut vertex_factor = self.vertex_factor.clone();
        vertex_factor.push(letter);
        vertex_factor.sort_unstable();
        let stable = self.stable.iter().copied().filter(|&i| i != letter).collect();
        Ok(RoseSplitting::from_parts(&self.basis, vertex_factor, stable))
    }

    /// Image of a vertex under the collapse: re-normalize against the
    /// enlarged vertex factor.
    pub fn collapse_vertex_map(&self, v: &CosetVertex) -> CosetVertex {
        self.coset_normal_form(&v.rep)
    }
}

/// A coset of the vertex factor, held in normal form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CosetVertex {
    rep: Word,
}

impl CosetVertex {
    pub fn rep(&self) -> &Word {
        &self.rep
    }
}

impl std::fmt::Display for CosetVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.rep)
    }
}

/// Signed permutation of the petals; the image of the rose stabilizer in
/// the symmetries of the petal set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WkElement {
    /// perm[i] = image petal of petal i (0-based).
    pub perm: Vec<usize>,
    /// signs[i] = sign attached to petal i's image.
    pub signs: Vec<Sign>,
}

impl WkElement {
    pub fn identity(k: usize) -> WkElement {
        WkElement { perm: (0..k).collect(), signs: vec![Sign::Plus; k] }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p == i)
            && self.signs.iter().all(|&s| s == Sign::Plus)
    }

    /// (self ∘ other): first apply `other`, then `self`, matching
    /// automorphism composition.
    pub fn compose(&self, other: &WkElement) -> WkElement {
        let k = self.perm.len();
        assert_eq!(k, other.perm.len());
        let mut perm = vec![0usize; k];
        let mut signs = vec![Sign::Plus; k];
        for j in 0..k {
            perm[j] = self.perm[other.perm[j]];
            signs[j] = if self.signs[other.perm[j]] == other.signs[j] {
                Sign::Plus
            } else {
                Sign::Minus
            };
        }
        WkElement { perm, signs }
    }

    pub fn inverse(&self) -> WkElement {
        let k = self.perm.len();
        let mut perm = vec![0usize; k];
        let mut signs = vec![Sign::Plus; k];
        for j in 0..k {
            perm[self.perm[j]] = j;
            signs[self.perm[j]] = self.signs[j];
        }
        WkElement { perm, signs }
    }
}

/// The canonical stabilizer decomposition: φ(x_i) = u_i·w(x_i)·v_i
/// with u_i, v_i in the vertex factor, w a signed petal permutation, and
/// φ|_A the restricted automorphism (absent for an empty vertex factor).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoseStabDecomposition {
    pub u: Vec<Word>,
    pub v: Vec<Word>,
    pub w: WkElement,
    pub phi_a: Option<Automorphism>,
}

/// Restricts φ to the standard free factor spanned by `indices`, carrying
/// the witness along. Fails if either direction leaves the factor.
fn restrict(
    phi: &Automorphism,
    indices: &[usize],
    target: &Basis,
) -> Result<Automorphism, SplitError> {
    let mut images = Vec::with_capacity(indices.len());
    let mut inverse_images = Vec::with_capacity(indices.len());
    for &i in indices {
        let letter = Word::generator(phi.basis(), i);
        images.push(
            phi.apply(&letter)
                .reindex(indices, target)
                .ok_or(SplitError::NotCosetCompatible)?,
        );
        inverse_images.push(
            phi.apply_inverse(&letter)
                .reindex(indices, target)
                .ok_or(SplitError::NotCosetCompatible)?,
        );
    }
    Ok(Automorphism::new(target, images, inverse_images)?)
}

/// Tests membership of φ in the stabilizer of the rose's base vertex and
/// returns the unique decomposition on success.
pub fn rose_stab_membership(
    phi: &Automorphism,
    s: &RoseSplitting,
) -> Option<RoseStabDecomposition> {
    let k = s.petal_count();
    let phi_a = if s.vertex_factor.is_empty() {
        None
    } else {
        let a_basis = s.basis.sub_basis(&s.vertex_factor).ok()?;
        Some(restrict(phi, &s.vertex_factor, &a_basis).ok()?)
    };
    let mut u = Vec::with_capacity(k);
    let mut v = Vec::with_capacity(k);
    let mut perm = vec![usize::MAX; k];
    let mut signs = vec![Sign::Plus; k];
    for (i, &letter) in s.stable.iter().enumerate() {
        let image = phi.apply(&Word::generator(&s.basis, letter));
        let (ui, rest) = image.strip_prefix(&s.vertex_factor);
        let (mid, vi) = rest.strip_suffix(&s.vertex_factor);
        let [l] = mid.letters() else { return None };
        let target = s.stable.iter().position(|&t| t == l.index)?;
        if perm.contains(&target) {
            return None;
        }
        perm[i] = target;
        signs[i] = l.sign;
        u.push(ui);
        v.push(vi);
    }
    Some(RoseStabDecomposition { u, v, w: WkElement { perm, signs }, phi_a })
}

/// The Stab⁰ isomorphism onto M_{2k}(A): φ ↦ (u₁⁻¹,…,u_k⁻¹, v₁,…,v_k; φ|_A).
/// Requires a trivial signed permutation.
pub fn rose_to_mk(d: &RoseStabDecomposition) -> Result<MkElement, SplitError> {
    if !d.w.is_identity() {
        return Err(SplitError::WNotIdentity);
    }
    let phi_a = d.phi_a.as_ref().ok_or(SplitError::DegenerateVertexFactor)?;
    let a_basis = phi_a.basis();
    let reindex_all = |ws: &[Word], invert: bool| -> Result<Vec<Word>, SplitError> {
        ws.iter()
            .map(|w| {
                let w = if invert { w.invert() } else { w.clone() };
                // u_i, v_i already lie in A, so the identity reindex holds
                // whenever A is a basis prefix; rebuild over A's own basis.
                a_basis.parse_word(&w.to_string()).map_err(SplitError::from)
            })
            .collect()
    };
    let mut coords = reindex_all(&d.u, true)?;
    coords.extend(reindex_all(&d.v, false)?);
    Ok(MkElement::new(coords, phi_a.clone())?)
}

/// Inverse of [`rose_to_mk`]: builds the automorphism a ↦ φ_A(a),
/// x_i ↦ g_i⁻¹·x_i·g_{k+i}, with its witness.
pub fn mk_to_rose(m: &MkElement, s: &RoseSplitting) -> Result<Automorphism, SplitError> {
    let k = s.petal_count();
    if m.arity() != 2 * k {
        return Err(SplitError::WrongArity(m.arity(), 2 * k));
    }
    if s.vertex_factor.is_empty() {
        return Err(SplitError::DegenerateVertexFactor);
    }
    let basis = &s.basis;
    let lift = |w: &Word| -> Result<Word, SplitError> {
        basis.parse_word(&w.to_string()).map_err(SplitError::from)
    };
    let phi_a = m.phi();
    let mut images: Vec<Word> = (0..basis.rank()).map(|i| Word::generator(basis, i)).collect();
    let mut inverse_images = images.clone();
    for (pos, &a_index) in s.vertex_factor.iter().enumerate() {
        let a_letter = Word::generator(phi_a.basis(), pos);
        images[a_index] = lift(&phi_a.apply(&a_letter))?;
        inverse_images[a_index] = lift(&phi_a.apply_inverse(&a_letter))?;
    }
    for (i, &x_index) in s.stable.iter().enumerate() {
        let gi = m.coord(i);
        let gki = m.coord(k + i);
        let x = Word::generator(basis, x_index);
        images[x_index] = lift(&gi.invert())?.mul(&x).mul(&lift(gki)?);
        // φ⁻¹(x_i) = φ_A⁻¹(u_i⁻¹)·x_i·φ_A⁻¹(v_i⁻¹) with u_i = g_i⁻¹, v_i = g_{k+i}
        inverse_images[x_index] = lift(&phi_a.apply_inverse(gi))?
            .mul(&x)
            .mul(&lift(&phi_a.apply_inverse(&gki.invert()))?);
    }
    Ok(Automorphism::new(basis, images, inverse_images)?)
}

/// True iff φ stabilizes the rose with trivial signed permutation and
/// fixes the initial A-coset of petal j's edge (u_j = ε).
pub fn edge_stab_membership(phi: &Automorphism, s: &RoseSplitting, j: usize) -> bool {
    s.petal_letter(j).is_ok()
        && rose_stab_membership(phi, s)
            .is_some_and(|d| d.w.is_identity() && d.u[j - 1].is_identity())
}

/// Edge-stabilizer image in M_{2k-1}(A): the u_j coordinate (identically
/// trivial on the edge stabilizer) is dropped.
pub fn edge_stab_to_mk(
    d: &RoseStabDecomposition,
    j: usize,
) -> Result<MkElement, SplitError> {
    if !d.w.is_identity() {
        return Err(SplitError::WNotIdentity);
    }
    if j == 0 || j > d.u.len() {
        return Err(SplitError::PetalOutOfRange(j));
    }
    if !d.u[j - 1].is_identity() {
        return Err(SplitError::NotEdgeStabilizer(j));
    }
    let full = rose_to_mk(d)?;
    let mut coords = full.coords().to_vec();
    coords.remove(j - 1);
    Ok(MkElement::new(coords, full.phi().clone())?)
}

/// Conjugator c with φ(A) = cAc⁻¹, determined up to right multiplication by
/// A (which the coset action quotients away). Recovered from the cyclic
/// decomposition of the image of the first A-letter and verified on the
/// whole factor.
fn vertex_conjugator(phi: &Automorphism, s: &RoseSplitting) -> Result<Word, SplitError> {
    if s.vertex_factor.is_empty() {
        return Ok(Word::identity(&s.basis));
    }
    let (p, _) = phi
        .apply(&Word::generator(&s.basis, s.vertex_factor[0]))
        .cyclic_decomposition();
    let pi = p.invert();
    for &i in &s.vertex_factor {
        let conjugated = pi.mul(&phi.apply(&Word::generator(&s.basis, i))).mul(&p);
        if !conjugated.in_factor(&s.vertex_factor) {
            return Err(SplitError::NotCosetCompatible);
        }
    }
    Ok(p)
}

/// The twisted-equivariant tree map f_φ on vertices: f_φ(hA) = φ(h)·c·A
/// where φ(A) = cAc⁻¹. Satisfies f_φ(g·x) = φ(g)·f_φ(x); for φ = ad_g it is
/// left translation by g. Errors when φ does not carry A to a conjugate of
/// itself.
pub fn twisted_vertex_action(
    phi: &Automorphism,
    v: &CosetVertex,
    s: &RoseSplitting,
) -> Result<CosetVertex, SplitError> {
    let c = vertex_conjugator(phi, s)?;
    Ok(s.coset_normal_form(&phi.apply(&v.rep).mul(&c)))
}

/// Finite piece of the Bass–Serre tree: all cosets with normal form of
/// length at most `l`, and every edge between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeBall {
    pub splitting: RoseSplitting,
    pub l: usize,
    /// Sorted by normal form.
    pub vertices: Vec<CosetVertex>,
    /// Index pairs (a < b) into `vertices`, with petal (1-based) and sign.
    pub edges: Vec<(usize, usize, usize, Sign)>,
}

pub fn build_ball(s: &RoseSplitting, l: usize) -> TreeBall {
    let vertices: Vec<CosetVertex> = enumerate_ball(&s.basis, l)
        .filter(|w| {
            w.letters()
                .last()
                .is_none_or(|last| !s.vertex_factor.contains(&last.index))
        })
        .map(|rep| CosetVertex { rep })
        .collect();
    // enumerate_ball is length-lex, which is CosetVertex order already
    debug_assert!(vertices.windows(2).all(|p| p[0] < p[1]));
    let mut edges = Vec::new();
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            if let Some((petal, sign)) = s.are_adjacent(&vertices[a], &vertices[b]) {
                edges.push((a, b, petal, sign));
            }
        }
    }
    TreeBall { splitting: s.clone(), l, vertices, edges }
}

impl TreeBall {
    pub fn vertex_index(&self, v: &CosetVertex) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub fn contains_edge(&self, a: &CosetVertex, b: &CosetVertex) -> bool {
        match (self.vertex_index(a), self.vertex_index(b)) {
            (Some(i), Some(j)) => {
                let (lo, hi) = if i < j { (i, j) } else { (j, i) };
                self.edges.iter().any(|&(x, y, _, _)| (x, y) == (lo, hi))
            }
            _ => false,
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &(a, b, _, _) in &self.edges {
                let other = if a == i {
                    b
                } else if b == i {
                    a
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.vertices.len()
    }

    /// Deterministic DOT rendering: vertices and edges in sorted order,
    /// edge labels carrying petal and sign.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph ball {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for &(a, b, petal, sign) in &self.edges {
            let name = self
                .splitting
                .basis
                .name(self.splitting.stable[petal - 1]);
            let sign_char = if sign == Sign::Plus { '+' } else { '-' };
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\" [label=\"{}{}\"];",
                self.vertices[a], self.vertices[b], name, sign_char
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        let file = BallFile {
            names: self.splitting.basis.names().to_vec(),
            vertex_factor: self.splitting.vertex_factor.clone(),
            l: self.l,
            vertices: self.vertices.iter().map(|v| v.to_string()).collect(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b, petal, sign)| BallEdge {
                    a,
                    b,
                    petal,
                    sign: sign.as_i8(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable by construction")
    }

    pub fn from_json(text: &str) -> Result<TreeBall, SplitError> {
        let file: BallFile =
            serde_json::from_str(text).map_err(|e| SplitError::BadBallFile(e.to_string()))?;
        let basis = Basis::new(file.names)?;
        let stable: Vec<usize> =
            (0..basis.rank()).filter(|i| !file.vertex_factor.contains(i)).collect();
        let splitting = RoseSplitting::from_parts(&basis, file.vertex_factor, stable);
        let vertices = file
            .vertices
            .iter()
            .map(|t| Ok(CosetVertex { rep: basis.parse_word(t)? }))
            .collect::<Result<Vec<CosetVertex>, SplitError>>()?;
        let n = vertices.len();
        let edges = file
            .edges
            .into_iter()
            .map(|e| {
                if e.a >= n || e.b >= n {
                    return Err(SplitError::BadBallFile("edge index out of range".into()));
                }
                let sign = if e.sign >= 0 { Sign::Plus } else { Sign::Minus };
                Ok((e.a, e.b, e.petal, sign))
            })
            .collect::<Result<Vec<_>, SplitError>>()?;
        Ok(TreeBall { splitting, l: file.l, vertices, edges })
    }
}

#[derive(Serialize, Deserialize)]
struct BallFile {
    names: Vec<String>,
    vertex_factor: Vec<usize>,
    l: usize,
    vertices: Vec<String>,
    edges: Vec<BallEdge>,
}

#[derive(Serialize, Deserialize)]
struct BallEdge {
    a: usize,
    b: usize,
    petal: usize,
    sign: i8,
}

/// True iff the twisted action of φ fixes every vertex of the given edge
/// path (edges of a free splitting are determined by their endpoints).
pub fn fixes_arc(
    phi: &Automorphism,
    ball: &TreeBall,
    path: &[(CosetVertex, CosetVertex)],
) -> Result<bool, SplitError> {
    let mut visited_edges: Vec<(usize, usize)> = Vec::new();
    for (i, (a, b)) in path.iter().enumerate() {
        if !ball.contains_edge(a, b) {
            return Err(SplitError::PathNotInBall(a.to_string(), b.to_string()));
        }
        let ia = ball.vertex_index(a).unwrap();
        let ib = ball.vertex_index(b).unwrap();
        let key = (ia.min(ib), ia.max(ib));
        if visited_edges.contains(&key) {
            return Err(SplitError::PathNotSimple);
        }
        visited_edges.push(key);
        if i > 0 {
            let (pa, pb) = &path[i - 1];
            if a != pa && a != pb && b != pa && b != pb {
                return Err(SplitError::PathNotSimple);
            }
        }
    }
    for (a, b) in path {
        for v in [a, b] {
            if &twisted_vertex_action(phi, v, &ball.splitting)? != v {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of the third-case analysis for a petal-1 edge stabilizer: does
/// f_φ fix the triple ε, x1, w·x1, and if so does φ fix w itself?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThirdCaseReport {
    pub fixes_triple: bool,
    /// Present only when the triple is fixed.
    pub fixed_element_holds: Option<bool>,
}

pub fn third_case_fixed_element_check(
    phi: &Automorphism,
    s: &RoseSplitting,
    w: &Word,
) -> Result<ThirdCaseReport, SplitError> {
    if !edge_stab_membership(phi, s, 1) {
        return Err(SplitError::NotEdgeStabilizer(1));
    }
    if !w.in_factor(&s.vertex_factor) {
        return Err(SplitError::NotCosetCompatible);
    }
    let x1 = Word::generator(&s.basis, s.petal_letter(1)?);
    let triple = [
        s.coset_normal_form(&Word::identity(&s.basis)),
        s.coset_normal_form(&x1),
        s.coset_normal_form(&w.mul(&x1)),
    ];
    let fixes_triple = triple
        .iter()
        .map(|v| Ok(&twisted_vertex_action(phi, v, s)? == v))
        .collect::<Result<Vec<bool>, SplitError>>()?
        .into_iter()
        .all(|b| b);
    let fixed_element_holds = fixes_triple.then(|| &phi.apply(w) == w);
    Ok(ThirdCaseReport { fixes_triple, fixed_element_holds })
}

/// Two-vertex free splitting: vertex groups on `factor_a` and `factor_b`,
/// one edge per connector letter plus the base edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CageSplitting {
    basis: Basis,
    factor_a: Vec<usize>,
    factor_b: Vec<usize>,
    connectors: Vec<usize>,
}

impl CageSplitting {
    pub fn new(
        basis: &Basis,
        factor_a: Vec<usize>,
        factor_b: Vec<usize>,
    ) -> Result<CageSplitting, SplitError> {
        let mut seen = vec![false; basis.rank()];
        for &i in factor_a.iter().chain(factor_b.iter()) {
            if i >= basis.rank() || std::mem::replace(&mut seen[i], true) {
                return Err(SplitError::BadPartition);
            }
        }
        let connectors = (0..basis.rank()).filter(|&i| !seen[i]).collect();
        Ok(CageSplitting {
            basis: basis.clone(),
            factor_a,
            factor_b,
            connectors,
        })
    }

    pub fn connectors(&self) -> &[usize] {
        &self.connectors
    }
}

/// Succeeds iff φ restricts to automorphisms of both vertex factors and
/// each connector image has the form a_i·x_i·b_i with a_i ∈ A, b_i ∈ B.
pub fn cage_stab_representative(
    phi: &Automorphism,
    c: &CageSplitting,
) -> Option<(Automorphism, Automorphism, Vec<(Word, Word)>)> {
    let a_basis = c.basis.sub_basis(&c.factor_a).ok()?;
    let b_basis = c.basis.sub_basis(&c.factor_b).ok()?;
    let phi_a = restrict(phi, &c.factor_a, &a_basis).ok()?;
    let phi_b = restrict(phi, &c.factor_b, &b_basis).ok()?;
    let mut pairs = Vec::with_capacity(c.connectors.len());
    for &x in &c.connectors {
        let image = phi.apply(&Word::generator(&c.basis, x));
        let (ai, rest) = image.strip_prefix(&c.factor_a);
        let (mid, bi) = rest.strip_suffix(&c.factor_b);
        if mid.letters() != [Letter::new(x, Sign::Plus)] {
            return None;
        }
        pairs.push((ai, bi));
    }
    Some((phi_a, phi_b, pairs))
}

/// Membership table of ball vertices fixed by each automorphism in a
/// family; handy in diagnostics.
pub fn fixed_vertices(
    phi: &Automorphism,
    ball: &TreeBall,
) -> Result<Vec<CosetVertex>, SplitError> {
    let mut fixed = Vec::new();
    for v in &ball.vertices {
        if &twisted_vertex_action(phi, v, &ball.splitting)? == v {
            fixed.push(v.clone());
        }
    }
    Ok(fixed)
}

/// Count of vertices per distance from the base vertex; a convenience view
/// used by diagnostics and tests.
pub fn sphere_sizes(ball: &TreeBall) -> BTreeMap<usize, usize> {
    let mut map = BTreeMap::new();
    for v in &ball.vertices {
        *map.entry(v.rep.len()).or_insert(0) += 1;
    }
    map
}
