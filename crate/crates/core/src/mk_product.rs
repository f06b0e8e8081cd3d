//! The semidirect product M_k(A) = A^k ⋊ Aut(A) with the diagonal action:
//! (g₁,…,g_k; φ)·(h₁,…,h_k; ψ) = (g₁φ(h₁),…,g_kφ(h_k); φ∘ψ). Includes the
//! diagonal-inverse subgroup J, the A^{k+1} ≅ M⁰_k correspondence, the
//! involutions α_i generating a Sym(k+1) action, and the retraction π.

use std::fmt;

use thiserror::Error;

use crate::automorphisms::{compact_literal, AutError, Automorphism, IntMatrix};
use crate::words::{Basis, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MkError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("coordinate index {0} out of range for arity {1}")]
    IndexOutOfRange(usize, usize),
    #[error("the Aut-part is not inner; tuple extraction undefined")]
    NotInner,
    #[error("empty tuple: arity k+1 must be at least 1")]
    EmptyTuple,
    #[error("malformed element literal: {0}")]
    Parse(String),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// An element (g₁,…,g_k; φ) of M_k(A).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MkElement {
    coords: Vec<Word>,
    phi: Automorphism,
}

impl MkElement {
    pub fn new(coords: Vec<Word>, phi: Automorphism) -> Result<MkElement, MkError> {
        for g in &coords {
            if g.basis() != phi.basis() {
                return Err(MkError::Aut(AutError::BasisMismatch));
            }
        }
        Ok(MkElement { coords, phi })
    }

    pub fn identity(basis: &Basis, k: usize) -> MkElement {
        MkElement {
            coords: vec![Word::identity(basis); k],
            phi: Automorphism::identity(basis),
        }
    }

    /// The J element (g⁻¹,…,g⁻¹; ad_g).
    pub fn j(g: &Word, k: usize) -> MkElement {
        MkElement {
            coords: vec![g.invert(); k],
            phi: Automorphism::inner(g),
        }
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Word] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Word {
        &self.coords[i]
    }

    /// The retraction π: M_k → Aut(A).
    pub fn phi(&self) -> &Automorphism {
        &self.phi
    }

    pub fn basis(&self) -> &Basis {
        self.phi.basis()
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(Word::is_identity) && self.phi.is_identity()
    }

    pub fn mul(&self, other: &MkElement) -> Result<MkElement, MkError> {
        if self.arity() != other.arity() {
            return Err(MkError::ArityMismatch(self.arity(), other.arity()));
        }
        if self.basis() != other.basis() {
            return Err(MkError::Aut(AutError::BasisMismatch));
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(g, h)| g.mul(&self.phi.apply(h)))
            .collect();
        Ok(MkElement { coords, phi: self.phi.compose(&other.phi)? })
    }

    pub fn inverse(&self) -> MkElement {
        let inv = self.phi.inverse();
        let coords = self.coords.iter().map(|g| inv.apply(&g.invert())).collect();
        MkElement { coords, phi: inv }
    }

    /// If the Aut-part is ad_g and every coordinate is g⁻¹, returns g.
    pub fn as_j_element(&self) -> Option<Word> {
        let g = self.phi.inner_conjugator().ok()?;
        let gi = g.invert();
        self.coords.iter().all(|c| c == &gi).then_some(g)
    }

    /// The involution α_i (1-based): (g₁,…,g_k; φ) ↦
    /// (g₁g_i⁻¹,…,g_i⁻¹,…,g_kg_i⁻¹; ad_{g_i}∘φ).
    pub fn alpha(&self, i: usize) -> Result<MkElement, MkError> {
        if i == 0 || i > self.arity() {
            return Err(MkError::IndexOutOfRange(i, self.arity()));
        }
        let gi = self.coords[i - 1].clone();
        let gii = gi.invert();
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(j, g)| if j == i - 1 { gii.clone() } else { g.mul(&gii) })
            .collect();
        Ok(MkElement {
            coords,
            phi: Automorphism::inner(&gi).compose(&self.phi)?,
        })
    }

    /// Abelianization matrix of the Aut-part: the projection π̄ composed
    /// with Out(F₂) ≅ GL(2,Z).
    pub fn pi_bar_matrix(&self, modulus: Option<i64>) -> IntMatrix {
        self.phi.abelianization_matrix(modulus)
    }

    /// Parses `(g1 | g2 | ... | gk ; phi-literal)`.
    pub fn parse(basis: &Basis, text: &str, search_depth: usize) -> Result<MkElement, MkError> {
        let text = text.trim();
        let inner = text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| MkError::Parse(format!("expected parenthesized literal, got `{text}`")))?;
        let (coord_text, phi_text) = inner
            .split_once(';')
            .ok_or_else(|| MkError::Parse("missing `;` before the Aut-part".to_string()))?;
        let coords = coord_text
            .split('|')
            .map(|g| basis.parse_word(g))
            .collect::<Result<Vec<Word>, WordError>>()?;
        let phi = Automorphism::parse(basis, phi_text, search_depth)?;
        MkElement::new(coords, phi)
    }
}

impl fmt::Display for MkElement {
    /// `(g1 | g2 | ... ; compact-phi)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, " ; {})", compact_literal(&self.phi))
    }
}

/// A point of A^{k+1}, the domain of the isomorphism onto M⁰_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleElement {
    pub entries: Vec<Word>,
}

impl TupleElement {
    pub fn new(entries: Vec<Word>) -> Result<TupleElement, MkError> {
        if entries.is_empty() {
            return Err(MkError::EmptyTuple);
        }
        Ok(TupleElement { entries })
    }
}

/// (g₁,…,g_k,x) ↦ (g₁x⁻¹,…,g_kx⁻¹; ad_x).
pub fn embed_tuple(t: &TupleElement) -> MkElement {
    let (x, gs) = t.entries.split_last().expect("nonempty by invariant");
    let xi = x.invert();
    MkElement {
        coords: gs.iter().map(|g| g.mul(&xi)).collect(),
        phi: Automorphism::inner(x),
    }
}

/// Inverse of [`embed_tuple`]: (g₁,…,g_k; ad_x) ↦ (g₁x,…,g_kx,x). The
/// conjugator x is recovered syntactically, so no search bound is needed.
pub fn extract_tuple(m: &MkElement) -> Result<TupleElement, MkError> {
    let x = m.phi.inner_conjugator().map_err(|_| MkError::NotInner)?;
    let mut entries: Vec<Word> = m.coords.iter().map(|g| g.mul(&x)).collect();
    entries.push(x);
    Ok(TupleElement { entries })
}

/// Everything in the probe stream commuting with every generator, sorted.
pub fn centralizer_probe(
    generators: &[MkElement],
    enumerator: impl IntoIterator<Item = MkElement>,
) -> Result<Vec<MkElement>, MkError> {
    let mut found = Vec::new();
    for x in enumerator {
        let mut commutes = true;
        for g in generators {
            if x.mul(g)? != g.mul(&x)? {
                commutes = false;
                break;
            }
        }
        if commutes {
            found.push(x);
        }
    }
    found.sort_by(|a, b| a.coords.cmp(&b.coords).then_with(|| a.phi.cmp(&b.phi)));
    found.dedup();
    Ok(found)
}
