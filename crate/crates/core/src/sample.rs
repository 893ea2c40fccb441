//! Seeded random rationals, points and polynomials.
//!
//! Everything here is deterministic in the seed (ChaCha8), so reports and
//! property runs are reproducible across platforms.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diffpoly::{rat, DiffPoly, Monomial, Point, Rational, Sym};

pub struct Sampler {
    rng: ChaCha8Rng,
}

/// FNV-1a, used to derive independent per-check streams from one seed.
fn fnv(label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A stream determined by `seed` and a label, independent of call order.
    pub fn derived(seed: u64, label: &str) -> Self {
        Self::new(seed ^ fnv(label))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Numerator in [-9, 9] (zero excluded when `nonzero`), denominator in [1, 9].
    pub fn rational(&mut self, nonzero: bool) -> Rational {
        loop {
            let n: i64 = self.rng.gen_range(-9..=9);
            if nonzero && n == 0 {
                continue;
            }
            let d: i64 = self.rng.gen_range(1..=9);
            return rat(n, d);
        }
    }

    pub fn small_int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Assigns every symbol; symbols in `nonzero` never receive zero.
    pub fn point<'a>(
        &mut self,
        syms: impl IntoIterator<Item = &'a Sym>,
        nonzero: &BTreeSet<Sym>,
    ) -> Point {
        syms.into_iter()
            .map(|s| (s.clone(), self.rational(nonzero.contains(s))))
            .collect()
    }

    /// A random polynomial with up to `terms` terms, each a product of at
    /// most `max_deg` generators with a small nonzero rational coefficient.
    pub fn poly(&mut self, gens: &[Sym], terms: usize, max_deg: usize) -> DiffPoly {
        let mut p = DiffPoly::zero();
        for _ in 0..terms {
            let deg = self.rng.gen_range(0..=max_deg);
            let factors: Vec<(Sym, i32)> = (0..deg)
                .map(|_| (gens[self.rng.gen_range(0..gens.len())].clone(), 1))
                .collect();
            let m = Monomial::from_factors(factors).expect("positive exponents");
            p += DiffPoly::term(self.rational(true), m);
        }
        p
    }

    /// Random antisymmetric `n x n` rational matrix.
    pub fn antisymmetric(&mut self, n: usize) -> Vec<Vec<Rational>> {
        let mut m = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = self.rational(false);
                m[j][i] = -v.clone();
                m[i][j] = v;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<Rational> = (0..10).map({
            let mut s = Sampler::derived(7, "x");
            move |_| s.rational(false)
        }).collect();
        let b: Vec<Rational> = (0..10).map({
            let mut s = Sampler::derived(7, "x");
            move |_| s.rational(false)
        }).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn nonzero_is_respected() {
        let mut s = Sampler::new(1);
        assert!((0..500).all(|_| !s.rational(true).is_zero()));
    }
}
