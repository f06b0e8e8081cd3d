//! Reduced-word algebra over a ranked free-group basis.
//!
//! Every other module consumes these types. A [`Word`] is freely reduced by
//! construction: the constructor cancels adjacent inverse pairs, so equality
//! of words is equality in the free group.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("words are over different bases")]
    BasisMismatch,
    #[error("unknown generator name `{0}`")]
    UnknownName(String),
    #[error("basis names must be nonempty and pairwise distinct")]
    BadBasis,
    #[error("letter index {index} out of range for basis of rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("malformed word token `{0}`")]
    BadToken(String),
}

/// Sign of a letter; `Plus` sorts before `Minus` so that the deterministic
/// enumeration order is length-lexicographic by (index, sign) with +1 < -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A single basis letter or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub index: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(index: usize, sign: Sign) -> Letter {
        Letter { index, sign }
    }

    pub fn inverse(self) -> Letter {
        Letter { index: self.index, sign: self.sign.flip() }
    }

    fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.sign != other.sign
    }
}

/// An ordered basis of a free group. The first two names are, by convention,
/// the generators of the distinguished vertex factor A; the remaining names
/// are stable letters.
#[derive(Debug, Clone)]
pub struct Basis {
    names: Arc<Vec<String>>,
}

impl PartialEq for Basis {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Basis {}

impl Basis {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Basis, WordError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(WordError::BadBasis);
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(WordError::BadBasis);
        }
        Ok(Basis { names: Arc::new(names) })
    }

    /// The canonical basis `a1, a2, x1, ..., x_{rank-2}`.
    pub fn standard(rank: usize) -> Basis {
        assert!(rank >= 2, "standard basis needs rank >= 2");
        let mut names = vec!["a1".to_string(), "a2".to_string()];
        for i in 1..=rank - 2 {
            names.push(format!("x{i}"));
        }
        Basis { names: Arc::new(names) }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Basis consisting of the named subset of letters, in the given order.
    pub fn sub_basis(&self, indices: &[usize]) -> Result<Basis, WordError> {
        let mut names = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= self.rank() {
                return Err(WordError::IndexOutOfRange { index: i, rank: self.rank() });
            }
            names.push(self.names[i].clone());
        }
        Basis::new(names)
    }

    /// Parses the whitespace-separated word syntax: tokens are `name` or
    /// `name^k` for a nonzero integer k; `1` or the empty string denotes the
    /// identity.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let text = text.trim();
        let mut letters = Vec::new();
        if text.is_empty() || text == "1" {
            return Ok(Word::identity(self));
        }
        for token in text.split_whitespace() {
            let (name, exponent) = match token.split_once('^') {
                None => (token, 1i64),
                Some((name, exp)) => {
                    let e: i64 = exp.parse().map_err(|_| WordError::BadToken(token.to_string()))?;
                    if e == 0 {
                        return Err(WordError::BadToken(token.to_string()));
                    }
                    (name, e)
                }
            };
            let index = self
                .index_of(name)
                .ok_or_else(|| WordError::UnknownName(name.to_string()))?;
            let sign = if exponent > 0 { Sign::Plus } else { Sign::Minus };
            for _ in 0..exponent.unsigned_abs() {
                letters.push(Letter::new(index, sign));
            }
        }
        Ok(Word::reduce(self, letters))
    }
}

/// A freely reduced word. Immutable; reduction happens at construction, so a
/// `Word` is reduced by invariant rather than by convention.
#[derive(Debug, Clone)]
pub struct Word {
    basis: Basis,
    letters: Vec<Letter>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.letters == other.letters
    }
}

impl Eq for Word {}

impl std::hash::Hash for Word {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.basis.rank().hash(state);
        self.letters.hash(state);
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    /// Length-lexicographic order by (index, sign) with +1 < -1; the
    /// deterministic order used by `enumerate_ball` and all sorted listings.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl Word {
    pub fn identity(basis: &Basis) -> Word {
        Word { basis: basis.clone(), letters: Vec::new() }
    }

    /// The one-letter word for basis letter `index`.
    pub fn generator(basis: &Basis, index: usize) -> Word {
        assert!(index < basis.rank());
        Word { basis: basis.clone(), letters: vec![Letter::new(index, Sign::Plus)] }
    }

    pub fn letter(basis: &Basis, letter: Letter) -> Word {
        assert!(letter.index < basis.rank());
        Word { basis: basis.clone(), letters: vec![letter] }
    }

    /// Free reduction of a raw letter sequence; idempotent.
    pub fn reduce(basis: &Basis, raw: impl IntoIterator<Item = Letter>) -> Word {
        let mut letters: Vec<Letter> = Vec::new();
        for letter in raw {
            assert!(letter.index < basis.rank(), "letter index out of range");
            if letters.last().is_some_and(|last| last.cancels(letter)) {
                letters.pop();
            } else {
                letters.push(letter);
            }
        }
        Word { basis: basis.clone(), letters }
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Result<Word, WordError> {
        if self.basis != other.basis {
            return Err(WordError::BasisMismatch);
        }
        Ok(self.mul(other))
    }

    pub(crate) fn mul(&self, other: &Word) -> Word {
        debug_assert_eq!(self.basis, other.basis);
        Word::reduce(
            &self.basis,
            self.letters.iter().chain(other.letters.iter()).copied(),
        )
    }

    pub fn invert(&self) -> Word {
        Word {
            basis: self.basis.clone(),
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Returns `g * self * g^-1`.
    pub fn conjugate(&self, g: &Word) -> Result<Word, WordError> {
        if self.basis != g.basis {
            return Err(WordError::BasisMismatch);
        }
        Ok(g.mul(self).mul(&g.invert()))
    }

    pub fn pow(&self, n: i32) -> Word {
        let base = if n >= 0 { self.clone() } else { self.invert() };
        let mut out = Word::identity(&self.basis);
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// True iff every letter index lies in `factor`.
    pub fn in_factor(&self, factor: &[usize]) -> bool {
        self.letters.iter().all(|l| factor.contains(&l.index))
    }

    /// Splits off the maximal suffix whose letters all lie in `factor`,
    /// returning `(remainder, suffix)` with `self = remainder * suffix`.
    pub fn strip_suffix(&self, factor: &[usize]) -> (Word, Word) {
        let cut = self
            .letters
            .iter()
            .rposition(|l| !factor.contains(&l.index))
            .map_or(0, |p| p + 1);
        let remainder = Word { basis: self.basis.clone(), letters: self.letters[..cut].to_vec() };
        let suffix = Word { basis: self.basis.clone(), letters: self.letters[cut..].to_vec() };
        (remainder, suffix)
    }

    /// Splits off the maximal prefix whose letters all lie in `factor`,
    /// returning `(prefix, remainder)` with `self = prefix * remainder`.
    pub fn strip_prefix(&self, factor: &[usize]) -> (Word, Word) {
        let cut = self
            .letters
            .iter()
            .position(|l| !factor.contains(&l.index))
            .unwrap_or(self.letters.len());
        let prefix = Word { basis: self.basis.clone(), letters: self.letters[..cut].to_vec() };
        let remainder = Word { basis: self.basis.clone(), letters: self.letters[cut..].to_vec() };
        (prefix, remainder)
    }

    /// Exponent sum per basis letter (the abelianized image).
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.basis.rank()];
        for l in &self.letters {
            sums[l.index] += l.sign.as_i8() as i64;
        }
        sums
    }

    /// Writes `self = p * core * p^-1` with `core` cyclically reduced,
    /// returning `(p, core)`.
    pub fn cyclic_decomposition(&self) -> (Word, Word) {
        let mut lo = 0usize;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo].cancels(self.letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        let p = Word { basis: self.basis.clone(), letters: self.letters[..lo].to_vec() };
        let core = Word { basis: self.basis.clone(), letters: self.letters[lo..hi].to_vec() };
        (p, core)
    }

    /// Reinterprets this word over `target`, mapping the letter at position
    /// `indices[j]` of the current basis to letter `j` of `target`. Returns
    /// `None` if a letter falls outside `indices`.
    pub(crate) fn reindex(&self, indices: &[usize], target: &Basis) -> Option<Word> {
        debug_assert_eq!(indices.len(), target.rank());
        let mut letters = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            let j = indices.iter().position(|&i| i == l.index)?;
            letters.push(Letter::new(j, l.sign));
        }
        Some(Word { basis: target.clone(), letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match l.sign {
                Sign::Plus => write!(f, "{}", self.basis.name(l.index))?,
                Sign::Minus => write!(f, "{}^-1", self.basis.name(l.index))?,
            }
        }
        Ok(())
    }
}

/// Iterator over every reduced word of length <= the bound, in the
/// deterministic length-lexicographic order.
pub struct Ball {
    basis: Basis,
    bound: usize,
    current_len: usize,
    frontier: Vec<Word>,
    position: usize,
}

impl Iterator for Ball {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.position < self.frontier.len() {
            let w = self.frontier[self.position].clone();
            self.position += 1;
            return Some(w);
        }
        if self.current_len >= self.bound {
            return None;
        }
        // Grow the next sphere; children of each word are appended in letter
        // order, so length-lex order is preserved.
        let mut next = Vec::new();
        for w in &self.frontier {
            for index in 0..self.basis.rank() {
                for sign in [Sign::Plus, Sign::Minus] {
                    let l = Letter::new(index, sign);
                    if w.letters.last().is_some_and(|last| last.cancels(l)) {
                        continue;
                    }
                    let mut letters = w.letters.clone();
                    letters.push(l);
                    next.push(Word { basis: self.basis.clone(), letters });
                }
            }
        }
        self.current_len += 1;
        self.frontier = next;
        self.position = 0;
        self.next()
    }
}

/// Streams every reduced word of length <= `bound` exactly once.
pub fn enumerate_ball(basis: &Basis, bound: usize) -> Ball {
    Ball {
        basis: basis.clone(),
        bound,
        current_len: 0,
        frontier: vec![Word::identity(basis)],
        position: 0,
    }
}

/// Every element expressible as a product of at most `product_len` of the
/// given generators and their inverses, sorted and deduplicated. Brute-force
/// oracle substrate for bounded subgroup questions.
pub fn subgroup_ball(generators: &[Word], product_len: usize) -> Vec<Word> {
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    if generators.is_empty() {
        return Vec::new();
    }
    let basis = generators[0].basis().clone();
    let mut frontier: Vec<Word> = vec![Word::identity(&basis)];
    seen.insert(Word::identity(&basis));
    for _ in 0..product_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in generators {
                for h in [g.clone(), g.invert()] {
                    let prod = w.mul(&h);
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

/// Predicted size of the reduced-word ball: 1 + sum over lengths of
/// 2N(2N-1)^(len-1).
pub fn ball_size(rank: usize, bound: usize) -> u64 {
    let n2 = 2 * rank as u64;
    let mut total = 1u64;
    let mut sphere = 1u64;
    for len in 1..=bound as u64 {
        sphere *= if len == 1 { n2 } else { n2 - 1 };
        total += sphere;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

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
    fn reduce_cancels_inverse_pairs() {
        let b = b3();
        assert!(w(&b, "a1 a1^-1").is_identity());
        assert_eq!(w(&b, "a1 a2 a2^-1 a1"), w(&b, "a1 a1"));
        assert_eq!(w(&b, "a1 x1 a2").len(), 3);
    }

    #[test]
    fn multiply_examples() {
        let b = b3();
        assert!(w(&b, "a1").mul(&w(&b, "a1^-1")).is_identity());
        assert_eq!(w(&b, "x1 a1").mul(&w(&b, "a1^-1 x1")), w(&b, "x1 x1"));
        let v = w(&b, "a2 x1^-1");
        assert_eq!(Word::identity(&b).mul(&v), v);
    }

    #[test]
    fn multiply_rejects_basis_mismatch() {
        let u = w(&b2(), "a1");
        let v = w(&b3(), "a1");
        assert_eq!(u.multiply(&v), Err(WordError::BasisMismatch));
    }

    #[test]
    fn invert_and_conjugate() {
        let b = b3();
        assert_eq!(w(&b, "a1 a2").invert(), w(&b, "a2^-1 a1^-1"));
        assert_eq!(w(&b, "a2").conjugate(&w(&b, "a1")).unwrap(), w(&b, "a1 a2 a1^-1"));
        assert_eq!(w(&b, "a1").conjugate(&w(&b, "a1")).unwrap(), w(&b, "a1"));
        assert_eq!(w(&b, "a2").conjugate(&Word::identity(&b)).unwrap(), w(&b, "a2"));
    }

    #[test]
    fn factor_membership_and_strips() {
        let b = b3();
        let a = [0usize, 1];
        assert!(w(&b, "a1 a2^-1").in_factor(&a));
        assert!(!w(&b, "a1 x1").in_factor(&a));

        let (rem, suf) = w(&b, "x1 a1 a2").strip_suffix(&a);
        assert_eq!(rem, w(&b, "x1"));
        assert_eq!(suf, w(&b, "a1 a2"));

        let (rem, suf) = w(&b, "a1 x1").strip_suffix(&a);
        assert_eq!(rem, w(&b, "a1 x1"));
        assert!(suf.is_identity());

        let (pre, rem) = w(&b, "a1 x1 a2").strip_prefix(&a);
        assert_eq!(pre, w(&b, "a1"));
        assert_eq!(rem, w(&b, "x1 a2"));
    }

    #[test]
    fn ball_counts_match_formula() {
        assert_eq!(enumerate_ball(&b2(), 0).count(), 1);
        assert_eq!(enumerate_ball(&b2(), 1).count(), 5);
        assert_eq!(enumerate_ball(&b2(), 2).count(), 17);
        for rank in [2usize, 3] {
            let b = Basis::standard(rank);
            for bound in 0..=4 {
                assert_eq!(enumerate_ball(&b, bound).count() as u64, ball_size(rank, bound));
            }
        }
    }

    #[test]
    fn ball_is_deterministic_reduced_and_unique() {
        let b = b2();
        let words: Vec<Word> = enumerate_ball(&b, 3).collect();
        let again: Vec<Word> = enumerate_ball(&b, 3).collect();
        assert_eq!(words, again);
        let mut sorted = words.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), words.len());
        assert_eq!(sorted, words, "enumeration order is length-lex");
        for w in &words {
            let reduced = Word::reduce(&b, w.letters().iter().copied());
            assert_eq!(&reduced, w);
        }
    }

    #[test]
    fn parse_display_round_trip() {
        let b = b3();
        for text in ["1", "a1 a2^-1 x1", "x1 x1 a1^-1"] {
            let word = w(&b, text);
            assert_eq!(b.parse_word(&word.to_string()).unwrap(), word);
        }
        assert_eq!(w(&b, "a1^3"), w(&b, "a1 a1 a1"));
        assert_eq!(w(&b, "a1^-2"), w(&b, "a1^-1 a1^-1"));
        assert!(matches!(b.parse_word("q7"), Err(WordError::UnknownName(_))));
        assert!(matches!(b.parse_word("a1^0"), Err(WordError::BadToken(_))));
    }

    #[test]
    fn cyclic_decomposition_examples() {
        let b = b3();
        let u = w(&b, "a1 x1 a2 x1^-1 a1^-1");
        let (p, core) = u.cyclic_decomposition();
        assert_eq!(p, w(&b, "a1 x1"));
        assert_eq!(core, w(&b, "a2"));
        assert_eq!(p.mul(&core).mul(&p.invert()), u);
    }

    #[test]
    fn subgroup_ball_contains_products() {
        let b = b2();
        let gens = [w(&b, "a1 a2 a1^-1"), w(&b, "a2")];
        let ball = subgroup_ball(&gens, 3);
        assert!(ball.contains(&Word::identity(&b)));
        assert!(ball.contains(&w(&b, "a1 a2 a1^-1 a2")));
        assert!(ball.contains(&w(&b, "a2^-1 a1 a2 a1^-1")));
        assert!(!ball.contains(&w(&b, "a1")));
    }

    fn arb_raw(max_len: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
        prop::collection::vec((0usize..3, any::<bool>()), 0..=max_len)
    }

    fn to_letters(raw: &[(usize, bool)]) -> Vec<Letter> {
        raw.iter()
            .map(|&(i, pos)| Letter::new(i, if pos { Sign::Plus } else { Sign::Minus }))
            .collect()
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(raw in arb_raw(12)) {
            let b = b3();
            let once = Word::reduce(&b, to_letters(&raw));
            let twice = Word::reduce(&b, once.letters().iter().copied());
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn multiply_is_associative(
            r1 in arb_raw(8), r2 in arb_raw(8), r3 in arb_raw(8)
        ) {
            let b = b3();
            let u = Word::reduce(&b, to_letters(&r1));
            let v = Word::reduce(&b, to_letters(&r2));
            let t = Word::reduce(&b, to_letters(&r3));
            prop_assert_eq!(u.mul(&v).mul(&t), u.mul(&v.mul(&t)));
            prop_assert!(u.mul(&u.invert()).is_identity());
        }

        #[test]
        fn strip_suffix_is_sound(raw in arb_raw(10)) {
            let b = b3();
            let factor = [0usize, 1];
            let u = Word::reduce(&b, to_letters(&raw));
            let (rem, suf) = u.strip_suffix(&factor);
            prop_assert_eq!(rem.mul(&suf), u);
            prop_assert!(suf.in_factor(&factor));
            if let Some(last) = rem.letters().last() {
                prop_assert!(!factor.contains(&last.index));
            }
        }
    }
}
