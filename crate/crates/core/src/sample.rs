//! Seeded random sampling of polynomials, words and matrices.

use num_traits::Zero;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::elementary::{word_eval, word_inverse, word_plus_eval, ElemGen, ElemWord};
use crate::forms::{sigma, GroupCase};
use crate::local::{LocRing, LocalizedPoly};
use crate::matrix::MatrixG;
use crate::ring::{Coeff, CoefficientRing, GradedPoly, Monomial, PolyRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleBounds {
    pub max_degree: u32,
    pub max_coeff: i64,
    pub max_terms: usize,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            max_degree: 3,
            max_coeff: 9,
            max_terms: 4,
        }
    }
}

/// Seed of trial `i` of a run seeded with `seed`; independent of scheduling.
pub fn trial_seed(seed: u64, i: usize) -> u64 {
    let mut z = seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub struct Sampler {
    pub rng: ChaCha8Rng,
    pub bounds: SampleBounds,
}

impl Sampler {
    pub fn new(seed: u64, bounds: SampleBounds) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bounds,
        }
    }

    pub fn for_trial(seed: u64, trial: usize, bounds: SampleBounds) -> Self {
        Self::new(trial_seed(seed, trial), bounds)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty choice")
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    /// A coefficient of the ring with numerator bounded by `max_coeff`; over
    /// the rationals the denominator is bounded the same way.
    pub fn coeff(&mut self, cr: CoefficientRing) -> Coeff {
        let b = self.bounds.max_coeff.max(1);
        let n = self.rng.random_range(-b..=b);
        let c = match cr {
            CoefficientRing::Rationals if self.coin() => {
                Coeff::new(n.into(), self.rng.random_range(1..=b).into())
            }
            _ => Coeff::from_integer(n.into()),
        };
        cr.reduce(&c)
            .expect("integers lie in every coefficient ring")
    }

    pub fn nonzero_coeff(&mut self, cr: CoefficientRing) -> Coeff {
        loop {
            let c = self.coeff(cr);
            if !c.is_zero() {
                return c;
            }
        }
    }

    fn monomial(&mut self, ring: &PolyRing, min_degree: u32) -> Monomial {
        let k = ring.num_vars;
        if k == 0 {
            return Monomial::one(0);
        }
        let d = self
            .rng
            .random_range(min_degree..=self.bounds.max_degree.max(min_degree));
        let mut exps = vec![0u32; k];
        for _ in 0..d {
            exps[self.below(k)] += 1;
        }
        Monomial::new(exps)
    }

    fn poly_from(&mut self, ring: &PolyRing, min_degree: u32) -> GradedPoly {
        let terms = self.rng.random_range(0..=self.bounds.max_terms);
        let mut p = ring.zero();
        for _ in 0..terms {
            let m = self.monomial(ring, min_degree);
            let c = self.coeff(ring.coeffs);
            // a repeated monomial is dropped so coefficients stay in bounds
            if p.coeff_of(&m).is_zero() {
                p = p.add(&GradedPoly::monomial(*ring, m, c));
            }
        }
        p
    }

    /// Sparse polynomial with bounded degree, coefficients and term count.
    pub fn poly(&mut self, ring: &PolyRing) -> GradedPoly {
        self.poly_from(ring, 0)
    }

    /// Polynomial with vanishing degree-0 part.
    pub fn positive_poly(&mut self, ring: &PolyRing) -> GradedPoly {
        if ring.num_vars == 0 {
            return ring.zero();
        }
        self.poly_from(ring, 1)
    }

    pub fn constant(&mut self, ring: &PolyRing) -> GradedPoly {
        let c = self.coeff(ring.coeffs);
        ring.constant(&c)
    }

    /// Uniform valid index pair for a generator of `case` in size `n`.
    pub fn gen_indices(&mut self, case: GroupCase, n: usize) -> (usize, usize) {
        loop {
            let i = self.below(n) + 1;
            let j = self.below(n) + 1;
            if i == j {
                continue;
            }
            if case == GroupCase::Orthogonal && sigma(j, n).ok() == Some(i) {
                continue;
            }
            return (i, j);
        }
    }

    pub fn gen(&mut self, case: GroupCase, n: usize, arg: GradedPoly) -> ElemGen<GradedPoly> {
        let (i, j) = self.gen_indices(case, n);
        ElemGen::new(case, n, i, j, arg).expect("sampled indices are valid")
    }

    /// Word of exactly `len` generators with arbitrary polynomial arguments.
    pub fn word(
        &mut self,
        case: GroupCase,
        n: usize,
        ring: &PolyRing,
        len: usize,
    ) -> ElemWord<GradedPoly> {
        let gens = (0..len)
            .map(|_| {
                let arg = self.poly(ring);
                self.gen(case, n, arg)
            })
            .collect();
        ElemWord::new(case, n, ring, gens).expect("sampled generators fit")
    }

    /// Word with constant arguments; evaluates into `E(n, A_0)`.
    pub fn constant_word(
        &mut self,
        case: GroupCase,
        n: usize,
        ring: &PolyRing,
        len: usize,
    ) -> ElemWord<GradedPoly> {
        let gens = (0..len)
            .map(|_| {
                let arg = self.constant(ring);
                self.gen(case, n, arg)
            })
            .collect();
        ElemWord::new(case, n, ring, gens).expect("sampled generators fit")
    }

    /// Word of length at most `2 * half` evaluating into the level-`A₊`
    /// subgroup: `u · u⁺(0)⁻¹` for a random word `u`.
    pub fn level_word(
        &mut self,
        case: GroupCase,
        n: usize,
        ring: &PolyRing,
        half: usize,
    ) -> ElemWord<GradedPoly> {
        let len = self.rng.random_range(1..=half.max(1));
        let u = self.word(case, n, ring, len);
        level_close(&u)
    }

    /// `w` with `⟨e₁, w⟩ = 0`, and isotropic in the orthogonal case so that
    /// `I + M(e₁, w)` lies in the group.
    pub fn admissible_vector(
        &mut self,
        case: GroupCase,
        n: usize,
        ring: &PolyRing,
    ) -> Vec<GradedPoly> {
        let mut w: Vec<GradedPoly> = (0..n).map(|_| self.poly(ring)).collect();
        match case {
            GroupCase::Linear => w[0] = ring.zero(),
            // ⟨e₁, w⟩ = w₂ in both form cases
            GroupCase::Symplectic => w[1] = ring.zero(),
            GroupCase::Orthogonal => {
                w[1] = ring.zero();
                // ⟨w, w⟩ = 2 Σ w_{2l-1} w_{2l}; cancel the pairs l ≥ 2 in twos
                let mut l = 2;
                while 2 * l + 2 <= n {
                    let t = self.constant(ring);
                    w[2 * l + 1] = t.mul(&w[2 * l - 2]).neg();
                    w[2 * l - 1] = t.mul(&w[2 * l]);
                    l += 2;
                }
                if l == n / 2 {
                    // a single leftover hyperbolic pair
                    w[2 * l - 1] = ring.zero();
                }
            }
        }
        w
    }

    /// A word `u` over `A` moved to `A_s` with each positive-degree part of its
    /// arguments divided by a random power of `s` (at most `max_k`).
    pub fn localized_word(
        &mut self,
        loc: &LocRing,
        case: GroupCase,
        n: usize,
        len: usize,
        max_k: u32,
    ) -> ElemWord<LocalizedPoly> {
        let ring = loc.ring;
        let gens = (0..len)
            .map(|_| {
                let zero = self.constant(&ring);
                let pos = self.positive_poly(&ring);
                let k = self.rng.random_range(0..=max_k);
                let arg = loc
                    .element(zero.scale(&loc.s_power(k)), k)
                    .add(&loc.element(pos, k));
                let (i, j) = self.gen_indices(case, n);
                ElemGen::new(case, n, i, j, arg).expect("sampled indices are valid")
            })
            .collect();
        ElemWord::new(case, n, loc, gens).expect("sampled generators fit")
    }

    /// Diagonal matrix of units of the coefficient ring (±1 over ℤ).
    pub fn unit_diagonal(&mut self, ring: &PolyRing, n: usize) -> MatrixG {
        let mut d = MatrixG::identity(ring, n);
        for i in 0..n {
            let u = match ring.coeffs {
                CoefficientRing::Integers => {
                    Coeff::from_integer(if self.coin() { 1 } else { -1 }.into())
                }
                cr => self.nonzero_coeff(cr),
            };
            d.set(i, i, ring.constant(&u));
        }
        d
    }
}

/// `u · u⁺(0)⁻¹` as a word; its value is congruent to `I` modulo `A₊`.
pub fn level_close<E: Element>(u: &ElemWord<E>) -> ElemWord<E> {
    let zero = Coeff::from_integer(0.into());
    u.concat(&word_inverse(&word_plus_eval(u, &zero)))
        .expect("same shape")
}

/// Random level-`A₊` matrix from a word; the word is returned alongside.
pub fn level_matrix(
    s: &mut Sampler,
    case: GroupCase,
    n: usize,
    ring: &PolyRing,
    half: usize,
) -> (ElemWord<GradedPoly>, MatrixG) {
    let w = s.level_word(case, n, ring, half);
    let m = word_eval(&w);
    (w, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{inner_product, is_in_g, transvection_matrix};

    #[test]
    fn sampling_is_deterministic() {
        let ring = PolyRing::new(CoefficientRing::Integers, 2);
        let mut a = Sampler::for_trial(7, 3, SampleBounds::default());
        let mut b = Sampler::for_trial(7, 3, SampleBounds::default());
        for _ in 0..10 {
            assert_eq!(a.poly(&ring), b.poly(&ring));
        }
        assert_ne!(trial_seed(7, 0), trial_seed(7, 1));
    }

    #[test]
    fn bounds_are_respected() {
        let ring = PolyRing::new(CoefficientRing::Integers, 3);
        let mut s = Sampler::new(1, SampleBounds::default());
        for _ in 0..200 {
            let p = s.poly(&ring);
            assert!(p.num_terms() <= 4);
            assert!(p.degree().unwrap_or(0) <= 3);
            assert!(p
                .terms()
                .all(|(_, c)| c.numer().magnitude() <= &9u32.into()));
            assert!(s.positive_poly(&ring).degree_zero_part().is_zero());
        }
    }

    #[test]
    fn level_words_are_level_plus() {
        let ring = PolyRing::new(CoefficientRing::Integers, 2);
        let mut s = Sampler::new(5, SampleBounds::default());
        for case in GroupCase::ALL {
            let w = s.level_word(case, 6, &ring, 4);
            assert!(w.len() <= 8);
            assert!(word_eval(&w).is_level_plus());
        }
    }

    #[test]
    fn admissible_vectors_give_group_elements() {
        let ring = PolyRing::new(CoefficientRing::Integers, 2);
        let mut s = Sampler::new(11, SampleBounds::default());
        for (case, n) in [
            (GroupCase::Linear, 4),
            (GroupCase::Symplectic, 6),
            (GroupCase::Orthogonal, 6),
            (GroupCase::Orthogonal, 8),
            (GroupCase::Orthogonal, 10),
        ] {
            for _ in 0..10 {
                let w = s.admissible_vector(case, n, &ring);
                let e1: Vec<GradedPoly> = (0..n)
                    .map(|i| if i == 0 { ring.one() } else { ring.zero() })
                    .collect();
                assert!(inner_product(&ring, case, &e1, &w).unwrap().is_zero());
                let t = transvection_matrix(&ring, case, &e1, &w).unwrap();
                assert!(case == GroupCase::Linear || is_in_g(case, &t));
            }
        }
    }

    #[test]
    fn localized_words_have_denominators() {
        let ring = PolyRing::new(CoefficientRing::Integers, 1);
        let loc = LocRing::from_int(ring, 2).unwrap();
        let mut s = Sampler::new(2, SampleBounds::default());
        let mut seen = false;
        for _ in 0..20 {
            let w = s.localized_word(&loc, GroupCase::Linear, 3, 2, 3);
            seen |= w.gens().iter().any(|g| g.arg().k() > 0);
            for g in w.gens() {
                // degree-0 parts stay integral
                assert!(g.arg().degree_zero_part().to_global().is_some());
            }
        }
        assert!(seen);
    }
}
