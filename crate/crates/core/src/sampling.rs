//! Seeded random generators for property runs. Everything flows from one
//! 64-bit seed through ChaCha8, so suites are reproducible and independent
//! of platform RNG details.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automorphisms::Automorphism;
use crate::mk_product::{MkElement, TupleElement};
use crate::words::{Basis, Letter, Sign, Word};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Uniform length in 0..=max_len, then a uniformly random reduced word
    /// of that length.
    pub fn word(&mut self, basis: &Basis, max_len: usize) -> Word {
        let len = self.rng.gen_range(0..=max_len);
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        while letters.len() < len {
            let l = Letter::new(
                self.rng.gen_range(0..basis.rank()),
                if self.rng.gen() { Sign::Plus } else { Sign::Minus },
            );
            if letters
                .last()
                .is_some_and(|last| last.index == l.index && last.sign != l.sign)
            {
                continue;
            }
            letters.push(l);
        }
        Word::reduce(basis, letters)
    }

    /// Word drawn from the vertex factor (first two letters) of `basis`.
    pub fn factor_word(&mut self, basis: &Basis, max_len: usize) -> Word {
        let len = self.rng.gen_range(0..=max_len);
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        while letters.len() < len {
            let l = Letter::new(
                self.rng.gen_range(0..2),
                if self.rng.gen() { Sign::Plus } else { Sign::Minus },
            );
            if letters
                .last()
                .is_some_and(|last| last.index == l.index && last.sign != l.sign)
            {
                continue;
            }
            letters.push(l);
        }
        Word::reduce(basis, letters)
    }

    /// Random product of `steps` elementary rank-2 automorphisms: τ^±1, the
    /// basis swap, the inversion of a1, and inner automorphisms by letters.
    pub fn f2_automorphism(&mut self, basis: &Basis, steps: usize) -> Automorphism {
        assert_eq!(basis.rank(), 2);
        let a1 = Word::generator(basis, 0);
        let a2 = Word::generator(basis, 1);
        let swap = Automorphism::new(
            basis,
            vec![a2.clone(), a1.clone()],
            vec![a2.clone(), a1.clone()],
        )
        .unwrap();
        let invert_a1 = Automorphism::new(
            basis,
            vec![a1.invert(), a2.clone()],
            vec![a1.invert(), a2.clone()],
        )
        .unwrap();
        let tau = Automorphism::nielsen_tau(basis);
        let mut out = Automorphism::identity(basis);
        for _ in 0..steps {
            let next = match self.rng.gen_range(0..6) {
                0 => tau.clone(),
                1 => tau.inverse(),
                2 => swap.clone(),
                3 => invert_a1.clone(),
                4 => Automorphism::inner(&a1),
                _ => Automorphism::inner(&a2),
            };
            out = out.compose(&next).unwrap();
        }
        out
    }

    /// Random product of `steps` rose-stabilizer generators with trivial
    /// petal permutation: transvections with short A-parameters, inner
    /// automorphisms by A-letters, and τ extended over the basis.
    pub fn stab0_automorphism(&mut self, basis: &Basis, steps: usize) -> Automorphism {
        let k = basis.rank() - 2;
        let mut out = Automorphism::identity(basis);
        for _ in 0..steps {
            let param = loop {
                let p = self.factor_word(basis, 2);
                if !p.is_identity() {
                    break p;
                }
            };
            let next = match self.rng.gen_range(0..4) {
                0 => {
                    let petal = self.rng.gen_range(1..=k);
                    Automorphism::left_transvection(basis, petal, &param).unwrap()
                }
                1 => {
                    let petal = self.rng.gen_range(1..=k);
                    Automorphism::right_transvection(basis, petal, &param).unwrap()
                }
                2 => Automorphism::inner(&param),
                _ => Automorphism::nielsen_tau(basis),
            };
            out = out.compose(&next).unwrap();
        }
        out
    }

    pub fn mk_element(
        &mut self,
        basis: &Basis,
        k: usize,
        max_len: usize,
        phi_steps: usize,
    ) -> MkElement {
        let coords = (0..k).map(|_| self.word(basis, max_len)).collect();
        MkElement::new(coords, self.f2_automorphism(basis, phi_steps)).unwrap()
    }

    pub fn tuple(&mut self, basis: &Basis, arity: usize, max_len: usize) -> TupleElement {
        TupleElement::new((0..arity).map(|_| self.word(basis, max_len)).collect()).unwrap()
    }
}

/// FNV-1a hash of a suite name; XORed into the master seed so that adding
/// suites never perturbs existing streams.
pub fn suite_seed(master: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    master ^ h
}
