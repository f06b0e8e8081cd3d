//! Automorphisms of a free group as basis-image maps carrying inverse
//! witnesses. General invertibility of an endomorphism is never decided:
//! every constructor either builds the witness or demands one, and the
//! round-trip check at construction is what certifies the map is an
//! automorphism.

use std::fmt;

use thiserror::Error;

use crate::words::{enumerate_ball, Basis, Letter, Sign, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error("round trip failed on basis letter `{letter}`")]
    RoundTripFailure { letter: String },
    #[error("automorphisms are over different bases")]
    BasisMismatch,
    #[error("parameter word `{0}` does not lie in the required factor")]
    NotInFactor(String),
    #[error("stable-letter index {0} out of range")]
    PetalOutOfRange(usize),
    #[error("sequence {0:?} is not a permutation of the petals")]
    NotAPermutation(Vec<usize>),
    #[error("automorphism is not inner")]
    NotInner,
    #[error("no inverse witness found within search depth {0}")]
    NoWitnessFound(usize),
    #[error("malformed automorphism literal: {0}")]
    Parse(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Square integer matrix recording an abelianized action: entry (r, c) is
/// the exponent sum of basis letter r in the image of basis letter c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub entries: Vec<Vec<i64>>,
    pub modulus: Option<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> IntMatrix {
        let entries = (0..n)
            .map(|r| (0..n).map(|c| i64::from(r == c)).collect())
            .collect();
        IntMatrix { entries, modulus: None }
    }

    pub fn side(&self) -> usize {
        self.entries.len()
    }

    fn normalize(mut self) -> IntMatrix {
        if let Some(m) = self.modulus {
            for row in &mut self.entries {
                for e in row.iter_mut() {
                    *e = e.rem_euclid(m);
                }
            }
        }
        self
    }

    pub fn with_modulus(mut self, modulus: Option<i64>) -> IntMatrix {
        self.modulus = modulus;
        self.normalize()
    }

    pub fn multiply(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.side();
        assert_eq!(n, other.side());
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| (0..n).map(|t| self.entries[r][t] * other.entries[t][c]).sum())
                    .collect()
            })
            .collect();
        IntMatrix { entries, modulus: self.modulus.or(other.modulus) }.normalize()
    }

    pub fn trace(&self) -> i64 {
        (0..self.side()).map(|i| self.entries[i][i]).sum()
    }

    /// Determinant for the 2x2 case used by the Nielsen criterion.
    pub fn det2(&self) -> i64 {
        assert_eq!(self.side(), 2);
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(r, row)| {
            row.iter().enumerate().all(|(c, &e)| {
                let want = i64::from(r == c);
                match self.modulus {
                    Some(m) => e.rem_euclid(m) == want.rem_euclid(m),
                    None => e == want,
                }
            })
        })
    }

    pub fn pow(&self, n: u32) -> IntMatrix {
        let mut out = IntMatrix::identity(self.side()).with_modulus(self.modulus);
        for _ in 0..n {
            out = out.multiply(self);
        }
        out
    }
}

/// Invertible basis-image map; the inverse witness is validated once at
/// construction and composed contravariantly afterwards.
#[derive(Debug, Clone)]
pub struct Automorphism {
    basis: Basis,
    images: Vec<Word>,
    inverse_images: Vec<Word>,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        // Witnesses are not part of the identity of the map.
        self.basis == other.basis && self.images == other.images
    }
}

impl Eq for Automorphism {}

impl std::hash::Hash for Automorphism {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl PartialOrd for Automorphism {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Automorphism {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.images.cmp(&other.images)
    }
}

fn apply_map(images: &[Word], basis: &Basis, w: &Word) -> Word {
    let mut out = Word::identity(basis);
    for l in w.letters() {
        let image = &images[l.index];
        out = match l.sign {
            Sign::Plus => out.mul(image),
            Sign::Minus => out.mul(&image.invert()),
        };
    }
    out
}

impl Automorphism {
    /// Validates both round trips; rejects with the first offending letter.
    pub fn new(
        basis: &Basis,
        images: Vec<Word>,
        inverse_images: Vec<Word>,
    ) -> Result<Automorphism, AutError> {
        if images.len() != basis.rank() || inverse_images.len() != basis.rank() {
            return Err(AutError::Parse("image list length != basis rank".into()));
        }
        for w in images.iter().chain(inverse_images.iter()) {
            if w.basis() != basis {
                return Err(AutError::BasisMismatch);
            }
        }
        for i in 0..basis.rank() {
            let letter = Word::generator(basis, i);
            let there = apply_map(&inverse_images, basis, &images[i]);
            let back = apply_map(&images, basis, &inverse_images[i]);
            if there != letter || back != letter {
                return Err(AutError::RoundTripFailure { letter: basis.name(i).to_string() });
            }
        }
        Ok(Automorphism { basis: basis.clone(), images, inverse_images })
    }

    fn raw(basis: &Basis, images: Vec<Word>, inverse_images: Vec<Word>) -> Automorphism {
        let aut = Automorphism { basis: basis.clone(), images, inverse_images };
        debug_assert!(
            (0..basis.rank()).all(|i| {
                let letter = Word::generator(basis, i);
                aut.apply(&aut.inverse_images[i]) == letter
                    && apply_map(&aut.inverse_images, basis, &aut.images[i]) == letter
            }),
            "internal constructor produced an invalid witness"
        );
        aut
    }

    pub fn identity(basis: &Basis) -> Automorphism {
        let images: Vec<Word> = (0..basis.rank()).map(|i| Word::generator(basis, i)).collect();
        Automorphism::raw(basis, images.clone(), images)
    }

    /// The Nielsen transformation a1 ↦ a1·a2, all other letters fixed.
    pub fn nielsen_tau(basis: &Basis) -> Automorphism {
        let a1 = Word::generator(basis, 0);
        let a2 = Word::generator(basis, 1);
        let mut images: Vec<Word> = (0..basis.rank()).map(|i| Word::generator(basis, i)).collect();
        let mut inverse_images = images.clone();
        images[0] = a1.mul(&a2);
        inverse_images[0] = a1.mul(&a2.invert());
        Automorphism::raw(basis, images, inverse_images)
    }

    /// Conjugation w ↦ g·w·g⁻¹.
    pub fn inner(g: &Word) -> Automorphism {
        let basis = g.basis();
        let gi = g.invert();
        let images = (0..basis.rank())
            .map(|i| g.mul(&Word::generator(basis, i)).mul(&gi))
            .collect();
        let inverse_images = (0..basis.rank())
            .map(|i| gi.mul(&Word::generator(basis, i)).mul(g))
            .collect();
        Automorphism::raw(basis, images, inverse_images)
    }

    /// x_petal ↦ w·x_petal, all else fixed; `petal` is 1-based over the
    /// stable letters and `w` must lie in the vertex factor A.
    pub fn left_transvection(basis: &Basis, petal: usize, w: &Word) -> Result<Automorphism, AutError> {
        let index = petal_index(basis, petal)?;
        require_in_a(w)?;
        let mut images: Vec<Word> = (0..basis.rank()).map(|i| Word::generator(basis, i)).collect();
        let mut inverse_images = images.clone();
        images[index] = w.mul(&Word::generator(basis, index));
        inverse_images[index] = w.invert().mul(&Word::generator(basis, index));
        Ok(Automorphism::raw(basis, images, inverse_images))
    }

    /// x_petal ↦ x_petal·w, all else fixed.
    pub fn right_transvection(basis: &Basis, petal: usize, w: &Word) -> Result<Automorphism, AutError> {
        let index = petal_index(basis, petal)?;
        require_in_a(w)?;
        let mut images: Vec<Word> = (0..basis.rank()).map(|i| Word::generator(basis, i)).collect();
        let mut inverse_images = images.clone();
        images[index] = Word::generator(basis, index).mul(w);
        inverse_images[index] = Word::generator(basis, index).mul(&w.invert());
        Ok(Automorphism::raw(basis, images, inverse_images))
    }

    /// x_i ↦ x_{σ(i)} where `sigma` lists σ(1), …, σ(k) in 1-based petal
    /// numbering; a-letters are fixed.
    pub fn petal_permutation(basis: &Basis, sigma: &[usize]) -> Result<Automorphism, AutError> {
        let k = basis.rank() - 2;
        if sigma.len() != k || {
            let mut seen = vec![false; k + 1];
            sigma.iter().any(|&s| s < 1 || s > k || std::mem::replace(&mut seen[s], true))
        } {
            return Err(AutError::NotAPermutation(sigma.to_vec()));
        }
        let mut images: Vec<Word> = (0..basis.rank()).map(|i| Word::generator(basis, i)).collect();
        let mut inverse_images = images.clone();
        for (i, &s) in sigma.iter().enumerate() {
            images[i + 2] = Word::generator(basis, s + 1);
            inverse_images[s + 1] = Word::generator(basis, i + 2);
        }
        Ok(Automorphism::raw(basis, images, inverse_images))
    }

    /// x_petal ↦ x_petal⁻¹, all else fixed.
    pub fn petal_inversion(basis: &Basis, petal: usize) -> Result<Automorphism, AutError> {
        let index = petal_index(basis, petal)?;
        let mut images: Vec<Word> = (0..basis.rank()).map(|i| Word::generator(basis, i)).collect();
        images[index] = images[index].invert();
        let inverse_images = images.clone();
        Ok(Automorphism::raw(basis, images, inverse_images))
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn image(&self, index: usize) -> &Word {
        &self.images[index]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn inverse_image(&self, index: usize) -> &Word {
        &self.inverse_images[index]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.letters() == [Letter::new(i, Sign::Plus)])
    }

    pub fn apply(&self, w: &Word) -> Word {
        assert_eq!(w.basis(), &self.basis, "word over a different basis");
        apply_map(&self.images, &self.basis, w)
    }

    pub fn apply_checked(&self, w: &Word) -> Result<Word, AutError> {
        if w.basis() != &self.basis {
            return Err(AutError::BasisMismatch);
        }
        Ok(self.apply(w))
    }

    pub fn apply_inverse(&self, w: &Word) -> Word {
        assert_eq!(w.basis(), &self.basis);
        apply_map(&self.inverse_images, &self.basis, w)
    }

    /// (self ∘ other)(w) = self(other(w)); witnesses compose the other way.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism, AutError> {
        if self.basis != other.basis {
            return Err(AutError::BasisMismatch);
        }
        let images = other.images.iter().map(|w| self.apply(w)).collect();
        let inverse_images = self.inverse_images.iter().map(|w| other.apply_inverse(w)).collect();
        Ok(Automorphism::raw(&self.basis, images, inverse_images))
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            basis: self.basis.clone(),
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    pub fn pow(&self, n: i32) -> Automorphism {
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        let mut out = Automorphism::identity(&self.basis);
        for _ in 0..n.unsigned_abs() {
            out = out.compose(&base).expect("same basis");
        }
        out
    }

    /// Columns are the abelianized images of the basis letters.
    pub fn abelianization_matrix(&self, modulus: Option<i64>) -> IntMatrix {
        let n = self.basis.rank();
        let mut entries = vec![vec![0i64; n]; n];
        for (c, image) in self.images.iter().enumerate() {
            for (r, &s) in image.exponent_sums().iter().enumerate() {
                entries[r][c] = s;
            }
        }
        IntMatrix { entries, modulus }.normalize()
    }

    /// True iff the action on homology mod 3 is trivial.
    pub fn is_in_ia3(&self) -> bool {
        self.abelianization_matrix(Some(3)).is_identity()
    }

    /// All reduced words of length <= `bound` fixed by the map, in
    /// enumeration order.
    pub fn fixed_words(&self, bound: usize) -> Vec<Word> {
        enumerate_ball(&self.basis, bound)
            .filter(|w| &self.apply(w) == w)
            .collect()
    }

    /// If the map is conjugation by some word, recovers that word exactly.
    ///
    /// The conjugator is determined syntactically: the cyclically reduced
    /// core of the image of the first basis letter must be that letter, its
    /// conjugating prefix determines g up to a power of the letter, and the
    /// image of the second letter pins the power down. A full verification
    /// pass guards the reconstruction.
    pub fn inner_conjugator(&self) -> Result<Word, AutError> {
        let basis = &self.basis;
        let x0 = Word::generator(basis, 0);
        let (p, core) = self.images[0].cyclic_decomposition();
        if core != x0 {
            return Err(AutError::NotInner);
        }
        // g = p·x0^m for some integer m; read m off the second letter.
        let v = p.invert().mul(&self.images[1]).mul(&p);
        let mut m: i32 = 0;
        for l in v.letters() {
            if l.index != 0 {
                break;
            }
            m += l.sign.as_i8() as i32;
        }
        let g = p.mul(&x0.pow(m));
        let gi = g.invert();
        for i in 0..basis.rank() {
            if g.mul(&Word::generator(basis, i)).mul(&gi) != self.images[i] {
                return Err(AutError::NotInner);
            }
        }
        Ok(g)
    }

    pub fn is_inner(&self) -> bool {
        self.inner_conjugator().is_ok()
    }

    /// Parses `a1 -> a1 a2; a2 -> a2` with optional `| <witness literal>`;
    /// unlisted letters default to fixed and `1` denotes the identity map.
    /// Without a witness, inverse images are searched in the ball of radius
    /// `search_depth`.
    pub fn parse(basis: &Basis, text: &str, search_depth: usize) -> Result<Automorphism, AutError> {
        let (image_text, witness_text) = match text.split_once('|') {
            Some((a, b)) => (a, Some(b)),
            None => (text, None),
        };
        let images = parse_image_list(basis, image_text)?;
        let inverse_images = match witness_text {
            Some(w) => parse_image_list(basis, w)?,
            None => search_inverse_images(basis, &images, search_depth)?,
        };
        Automorphism::new(basis, images, inverse_images)
    }
}

fn petal_index(basis: &Basis, petal: usize) -> Result<usize, AutError> {
    if petal == 0 || petal + 1 >= basis.rank() {
        return Err(AutError::PetalOutOfRange(petal));
    }
    Ok(petal + 1)
}

fn require_in_a(w: &Word) -> Result<(), AutError> {
    if w.in_factor(&[0, 1]) {
        Ok(())
    } else {
        Err(AutError::NotInFactor(w.to_string()))
    }
}

fn parse_image_list(basis: &Basis, text: &str) -> Result<Vec<Word>, AutError> {
    let mut images: Vec<Word> = (0..basis.rank()).map(|i| Word::generator(basis, i)).collect();
    let text = text.trim();
    if text.is_empty() || text == "1" {
        return Ok(images);
    }
    for clause in text.split(';') {
        let clause = clause.trim();
        if clause.is_empty() {
            continue;
        }
        let (name, image) = clause
            .split_once("->")
            .ok_or_else(|| AutError::Parse(format!("missing `->` in `{clause}`")))?;
        let index = basis
            .index_of(name.trim())
            .ok_or_else(|| AutError::Parse(format!("unknown letter `{}`", name.trim())))?;
        images[index] = basis.parse_word(image)?;
    }
    Ok(images)
}

fn search_inverse_images(
    basis: &Basis,
    images: &[Word],
    depth: usize,
) -> Result<Vec<Word>, AutError> {
    let mut inverse_images: Vec<Option<Word>> = vec![None; basis.rank()];
    let mut remaining = basis.rank();
    // Radius 1 is always needed: even the identity's witness has length 1.
    for candidate in enumerate_ball(basis, depth.max(1)) {
        let image = apply_map(images, basis, &candidate);
        if image.len() == 1 {
            let l = image.letters()[0];
            if l.sign == Sign::Plus && inverse_images[l.index].is_none() {
                inverse_images[l.index] = Some(candidate);
                remaining -= 1;
                if remaining == 0 {
                    break;
                }
            }
        }
    }
    inverse_images
        .into_iter()
        .collect::<Option<Vec<Word>>>()
        .ok_or(AutError::NoWitnessFound(depth))
}

impl fmt::Display for Automorphism {
    /// Full listing, one clause per basis letter.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, image) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} -> {}", self.basis.name(i), image)?;
        }
        Ok(())
    }
}

/// Compact literal: only non-fixed letters listed, `1` for the identity.
pub fn compact_literal(phi: &Automorphism) -> String {
    let clauses: Vec<String> = phi
        .images()
        .iter()
        .enumerate()
        .filter(|(i, w)| w.letters() != [Letter::new(*i, Sign::Plus)])
        .map(|(i, w)| format!("{} -> {}", phi.basis().name(i), w))
        .collect();
    if clauses.is_empty() {
        "1".to_string()
    } else {
        clauses.join("; ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::subgroup_ball;

    fn b2() -> Basis {
        Basis::standard(2)
    }

    fn b3() -> Basis {
        Basis::standard(3)
    }

    fn w(basis: &Basis, s: &str) -> Word {
        basis.parse_word(s).unwrap()
    }

    #[test]
    fn constructor_enforces_round_trip() {
        let b = b2();
        let id = Automorphism::identity(&b);
        assert!(id.is_identity());
        let tau = Automorphism::new(
            &b,
            vec![w(&b, "a1 a2"), w(&b, "a2")],
            vec![w(&b, "a1 a2^-1"), w(&b, "a2")],
        )
        .unwrap();
        assert_eq!(tau, Automorphism::nielsen_tau(&b));

        let bad = Automorphism::new(
            &b,
            vec![w(&b, "a1 a1"), w(&b, "a2")],
            vec![w(&b, "a1"), w(&b, "a2")],
        );
        assert_eq!(bad, Err(AutError::RoundTripFailure { letter: "a1".into() }));
    }

    #[test]
    fn apply_examples() {
        let b = b2();
        let tau = Automorphism::nielsen_tau(&b);
        assert_eq!(tau.apply(&w(&b, "a1")), w(&b, "a1 a2"));
        assert_eq!(tau.apply(&w(&b, "a1 a2")), w(&b, "a1 a2 a2"));
        assert_eq!(tau.apply(&w(&b, "a2^-1")), w(&b, "a2^-1"));
        // homomorphism on a sample pair
        let u = w(&b, "a1 a2^-1");
        let v = w(&b, "a2 a1");
        assert_eq!(tau.apply(&u.mul(&v)), tau.apply(&u).mul(&tau.apply(&v)));
    }

    #[test]
    fn compose_inverse_inner() {
        let b = b2();
        let tau = Automorphism::nielsen_tau(&b);
        assert!(tau.compose(&tau.inverse()).unwrap().is_identity());

        let ad1 = Automorphism::inner(&w(&b, "a1"));
        assert_eq!(ad1.apply(&w(&b, "a2")), w(&b, "a1 a2 a1^-1"));
        assert!(ad1.compose(&Automorphism::inner(&w(&b, "a1^-1"))).unwrap().is_identity());

        // inner is a homomorphism for all g, h of length <= 3
        for g in enumerate_ball(&b, 3) {
            for h in enumerate_ball(&b, 3) {
                let lhs = Automorphism::inner(&g).compose(&Automorphism::inner(&h)).unwrap();
                assert_eq!(lhs, Automorphism::inner(&g.mul(&h)));
            }
        }
    }

    #[test]
    fn abelianization_and_ia3() {
        let b = b2();
        let tau = Automorphism::nielsen_tau(&b);
        let m = tau.abelianization_matrix(None);
        assert_eq!(m.entries, vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(m.trace(), 2);
        assert_eq!(m.det2(), 1);
        assert!(Automorphism::inner(&w(&b, "a1")).abelianization_matrix(None).is_identity());
        assert!(tau.pow(3).is_in_ia3());
        assert!(!tau.is_in_ia3());

        // functoriality spot checks
        let ad = Automorphism::inner(&w(&b, "a2 a1"));
        let comp = tau.compose(&ad).unwrap();
        assert_eq!(
            comp.abelianization_matrix(None),
            tau.abelianization_matrix(None).multiply(&ad.abelianization_matrix(None))
        );
    }

    #[test]
    fn fixed_words_examples() {
        let b = b2();
        assert_eq!(Automorphism::identity(&b).fixed_words(2).len(), 17);

        let tau = Automorphism::nielsen_tau(&b);
        let fixed3 = tau.fixed_words(3);
        for text in [
            "1", "a2", "a2^-1", "a2 a2", "a2^-1 a2^-1", "a2 a2 a2", "a2^-1 a2^-1 a2^-1",
            "a1 a2 a1^-1", "a1 a2^-1 a1^-1",
        ] {
            assert!(fixed3.contains(&w(&b, text)), "missing {text}");
        }
        assert_eq!(fixed3.len(), 9);

        let flip = Automorphism::new(
            &b,
            vec![w(&b, "a1^-1"), w(&b, "a2^-1")],
            vec![w(&b, "a1^-1"), w(&b, "a2^-1")],
        )
        .unwrap();
        assert_eq!(flip.fixed_words(4), vec![Word::identity(&b)]);
    }

    #[test]
    fn fixed_subgroup_of_tau_powers() {
        let b = b2();
        let tau = Automorphism::nielsen_tau(&b);
        let gens = [w(&b, "a1 a2 a1^-1"), w(&b, "a2")];
        let oracle: Vec<Word> = subgroup_ball(&gens, 10)
            .into_iter()
            .filter(|u| u.len() <= 5)
            .collect();
        let mut oracle_sorted = oracle;
        oracle_sorted.sort();
        for p in 1..=3 {
            assert_eq!(tau.pow(p).fixed_words(5), oracle_sorted, "power {p}");
        }
    }

    #[test]
    fn transvections_and_petal_maps() {
        let b = b3();
        let l = Automorphism::left_transvection(&b, 1, &w(&b, "a1")).unwrap();
        assert_eq!(l.apply(&w(&b, "x1")), w(&b, "a1 x1"));
        let r = Automorphism::right_transvection(&b, 1, &w(&b, "a2^-1")).unwrap();
        assert_eq!(r.apply(&w(&b, "x1")), w(&b, "x1 a2^-1"));
        let inv = Automorphism::petal_inversion(&b, 1).unwrap();
        assert_eq!(inv.apply(&w(&b, "x1")), w(&b, "x1^-1"));
        assert!(inv.compose(&inv).unwrap().is_identity());

        let b4 = Basis::standard(4);
        let swap = Automorphism::petal_permutation(&b4, &[2, 1]).unwrap();
        assert_eq!(swap.apply(&b4.parse_word("x1").unwrap()), b4.parse_word("x2").unwrap());
        assert!(swap.compose(&swap).unwrap().is_identity());

        assert!(matches!(
            Automorphism::left_transvection(&b, 1, &w(&b, "x1")),
            Err(AutError::NotInFactor(_))
        ));
        assert!(matches!(
            Automorphism::left_transvection(&b, 2, &w(&b, "a1")),
            Err(AutError::PetalOutOfRange(2))
        ));
        assert!(matches!(
            Automorphism::petal_permutation(&b4, &[1, 1]),
            Err(AutError::NotAPermutation(_))
        ));
    }

    #[test]
    fn apply_is_injective_on_small_ball() {
        let b = b3();
        let phi = Automorphism::left_transvection(&b, 1, &w(&b, "a1 a2"))
            .unwrap()
            .compose(&Automorphism::nielsen_tau(&b))
            .unwrap();
        let mut images: Vec<Word> = enumerate_ball(&b, 4).map(|u| phi.apply(&u)).collect();
        let total = images.len();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), total);
    }

    #[test]
    fn inner_conjugator_recovery() {
        let b = b3();
        for text in ["1", "a1", "a2^-1 a1", "x1 a1 a2", "a1 x1^-1 a2 x1", "x1 x1 a1^-1"] {
            let g = w(&b, text);
            assert_eq!(Automorphism::inner(&g).inner_conjugator().unwrap(), g, "g = {text}");
        }
        assert_eq!(
            Automorphism::nielsen_tau(&b).inner_conjugator(),
            Err(AutError::NotInner)
        );
        let l = Automorphism::left_transvection(&b, 1, &w(&b, "a1")).unwrap();
        assert!(!l.is_inner());
    }

    #[test]
    fn parse_and_display() {
        let b = b2();
        let tau = Automorphism::parse(&b, "a1 -> a1 a2; a2 -> a2", 4).unwrap();
        assert_eq!(tau, Automorphism::nielsen_tau(&b));
        assert_eq!(tau.to_string(), "a1 -> a1 a2; a2 -> a2");
        assert_eq!(compact_literal(&tau), "a1 -> a1 a2");
        assert_eq!(compact_literal(&Automorphism::identity(&b)), "1");

        // witness supplied explicitly
        let t2 = Automorphism::parse(&b, "a1 -> a1 a2 | a1 -> a1 a2^-1", 0).unwrap();
        assert_eq!(t2, tau);

        // identity literal
        assert!(Automorphism::parse(&b, "1", 0).unwrap().is_identity());

        // non-automorphism rejected even via search
        assert!(Automorphism::parse(&b, "a1 -> a1 a1", 3).is_err());
    }
}
