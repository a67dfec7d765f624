//! Constructive factorizations: rearrangement, normalization modulo the
//! positive ideal, transvection words and commutator identities.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::forms::{inner_product, is_in_g, transvection_matrix, GroupCase};
use crate::matrix::Matrix;
use crate::ring::Coeff;

use super::word::{word_eval, word_inverse, ElemGen, ElemWord};

/// A factorization certificate: the labelled factors multiply to `target`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<E: Element> {
    pub target: Matrix<E>,
    pub factors: Vec<(String, Matrix<E>)>,
    pub checked: bool,
}

impl<E: Element> Witness<E> {
    /// Multiplies the factors and records whether they reproduce the target.
    pub fn new(target: Matrix<E>, factors: Vec<(String, Matrix<E>)>) -> Result<Self> {
        let mut w = Witness {
            target,
            factors,
            checked: false,
        };
        w.checked = w.product()? == w.target;
        Ok(w)
    }

    pub fn product(&self) -> Result<Matrix<E>> {
        Matrix::product(
            self.target.ctx(),
            self.target.n(),
            self.factors.iter().map(|(_, m)| m),
        )
    }

    /// Like [`Witness::new`] but an unchecked product is an internal error.
    fn certified(target: Matrix<E>, factors: Vec<(String, Matrix<E>)>, what: &str) -> Result<Self> {
        let w = Self::new(target, factors)?;
        if !w.checked {
            return Err(Error::Internal(format!(
                "{what}: factors do not reproduce the target"
            )));
        }
        Ok(w)
    }
}

fn zero() -> Coeff {
    Coeff::from_integer(0.into())
}

/// `Π aᵢbᵢ = (Π Jᵢ bᵢ Jᵢ⁻¹)(Π aᵢ)` with `J_k = a_1 ⋯ a_k`.
pub fn rearrange_product<E: Element>(pairs: &[(Matrix<E>, Matrix<E>)]) -> Result<Witness<E>> {
    let Some((first, _)) = pairs.first() else {
        return Err(Error::Malformed("no pairs to rearrange".into()));
    };
    let (ctx, n) = (first.ctx().clone(), first.n());
    let mut target = Matrix::identity(&ctx, n);
    let mut j = Matrix::identity(&ctx, n);
    let mut j_inv = Matrix::identity(&ctx, n);
    let mut conjugates = Vec::with_capacity(pairs.len());
    for (k, (a, b)) in pairs.iter().enumerate() {
        let a_inv = a.inverse()?;
        if !b.is_invertible() {
            return Err(Error::NotInvertible(format!("b{}", k + 1)));
        }
        target = target.mul(a)?.mul(b)?;
        j = j.mul(a)?;
        j_inv = a_inv.mul(&j_inv)?;
        conjugates.push((format!("J{0} b{0} J{0}^-1", k + 1), j.mul(b)?.mul(&j_inv)?));
    }
    let tail = pairs
        .iter()
        .enumerate()
        .map(|(k, (a, _))| (format!("a{}", k + 1), a.clone()));
    conjugates.extend(tail);
    Witness::certified(target, conjugates, "rearrangement")
}

/// Output of [`normalize_mod_plus`]: the input equals `Π ε_k core_k ε_k⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugatedWord<E: Element> {
    pub pairs: Vec<(ElemWord<E>, ElemGen<E>)>,
    /// `Π ge((a_0)_k)`, which is the identity for level-plus input.
    pub residual: ElemWord<E>,
}

impl<E: Element> ConjugatedWord<E> {
    pub fn eval(&self) -> Result<Matrix<E>> {
        let (ctx, n) = (self.residual.ctx(), self.residual.n());
        let mut acc = Matrix::identity(ctx, n);
        for (eps, core) in &self.pairs {
            let core_word = ElemWord::new(self.residual.case(), n, ctx, vec![core.clone()])?;
            acc = acc.mul(&word_eval(&super::word::word_conjugate(&core_word, eps)?))?;
        }
        Ok(acc)
    }
}

/// Rewrites a word with level-plus value as a product of conjugates of
/// generators with positive-degree arguments by degree-zero words.
pub fn normalize_mod_plus<E: Element>(w: &ElemWord<E>) -> Result<ConjugatedWord<E>> {
    w.case().check_lemma_size(w.n())?;
    let alpha = word_eval(w);
    if !alpha.is_level_plus() {
        return Err(Error::NotInCongruenceSubgroup);
    }
    let mut eps = ElemWord::empty(w.case(), w.n(), w.ctx())?;
    let mut pairs = Vec::with_capacity(w.len());
    for g in w.gens() {
        let a0 = g.arg().degree_zero_part();
        let ap = g.arg().sub(&a0);
        eps.push(g.with_arg(a0))?;
        pairs.push((eps.clone(), g.with_arg(ap)));
    }
    let out = ConjugatedWord {
        pairs,
        residual: eps,
    };
    if !word_eval(&out.residual).is_identity() {
        return Err(Error::Internal(
            "degree-zero residual of a level-plus word is not the identity".into(),
        ));
    }
    if out.eval()? != alpha {
        return Err(Error::Internal(
            "normalized word does not re-evaluate".into(),
        ));
    }
    Ok(out)
}

fn check_vec<E: Element>(case: GroupCase, n: usize, w: &[E]) -> Result<()> {
    case.check_lemma_size(n)?;
    if w.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for size {n}",
            w.len()
        )));
    }
    Ok(())
}

fn basis<E: Element>(ctx: &E::Ctx, n: usize, i: usize) -> Vec<E> {
    (0..n)
        .map(|j| if j == i { E::one(ctx) } else { E::zero(ctx) })
        .collect()
}

/// A word evaluating to `I + M(e_1, w)`, for `⟨e_1, w⟩ = 0`.
///
/// Symplectic: `se_{1,2l}(w_{2l-1}) se_{1,2l-1}(-w_{2l})` for `l = 2..m`, then
/// `se_{12}(2w_1 - Σ w_{2l-1} w_{2l})` absorbs the cross terms. Orthogonal:
/// `oe_{1,2l}(w_{2l-1}) oe_{1,2l-1}(w_{2l})`, which needs `w` isotropic.
pub fn transvection_word<E: Element>(
    ctx: &E::Ctx,
    case: GroupCase,
    w: &[E],
) -> Result<ElemWord<E>> {
    let n = w.len();
    check_vec(case, n, w)?;
    let e1 = basis(ctx, n, 0);
    let pairing = inner_product(ctx, case, &e1, w)?;
    if !pairing.is_zero() {
        return Err(Error::OrthogonalityViolation(pairing.to_string()));
    }
    let target = transvection_matrix(ctx, case, &e1, w)?;
    if case != GroupCase::Linear && !is_in_g(case, &target) {
        let ww = inner_product(ctx, case, w, w)?;
        return Err(Error::TransvectionNotInGroup(format!("<w, w> = {ww}")));
    }
    let mut triples = Vec::new();
    match case {
        GroupCase::Linear => {
            for (j, wj) in w.iter().enumerate().skip(1) {
                triples.push((1, j + 1, wj.clone()));
            }
        }
        GroupCase::Symplectic => {
            let mut cross = E::zero(ctx);
            for l in 2..=n / 2 {
                let (odd, even) = (&w[2 * l - 2], &w[2 * l - 1]);
                triples.push((1, 2 * l, odd.clone()));
                triples.push((1, 2 * l - 1, even.neg()));
                cross = cross.add(&odd.mul(even));
            }
            triples.push((1, 2, w[0].add(&w[0]).sub(&cross)));
        }
        GroupCase::Orthogonal => {
            for l in 2..=n / 2 {
                triples.push((1, 2 * l, w[2 * l - 2].clone()));
                triples.push((1, 2 * l - 1, w[2 * l - 1].clone()));
            }
        }
    }
    let word = ElemWord::from_triples(case, n, ctx, triples)?.pruned();
    if word_eval(&word) != target {
        return Err(Error::Internal(format!(
            "transvection word does not evaluate to I + M(e1, w) ({case})"
        )));
    }
    Ok(word)
}

/// Result of [`transvection_word_conj`]: the witness `ε (I + M(e_1, w')) ε⁻¹`
/// and the word for the middle factor.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugatedTransvection<E: Element> {
    pub witness: Witness<E>,
    pub transported: Vec<E>,
    pub core: ElemWord<E>,
    pub word: ElemWord<E>,
}

/// `I + M(v, w)` for `v = ε e_1` as a conjugate of a base transvection.
pub fn transvection_word_conj<E: Element>(
    eps: &ElemWord<E>,
    w: &[E],
) -> Result<ConjugatedTransvection<E>> {
    let (case, n, ctx) = (eps.case(), eps.n(), eps.ctx());
    check_vec(case, n, w)?;
    let e = word_eval(eps);
    let v = e.column(0);
    let pairing = inner_product(ctx, case, &v, w)?;
    if !pairing.is_zero() {
        return Err(Error::OrthogonalityViolation(pairing.to_string()));
    }
    let e_inv = word_eval(&word_inverse(eps));
    let transported = match case {
        GroupCase::Linear => e.transpose().mul_vec(w)?,
        _ => e_inv.mul_vec(w)?,
    };
    let core = transvection_word(ctx, case, &transported)?;
    let target = transvection_matrix(ctx, case, &v, w)?;
    let witness = Witness::certified(
        target,
        vec![
            ("eps".into(), e),
            ("I + M(e1, w')".into(), word_eval(&core)),
            ("eps^-1".into(), e_inv),
        ],
        "conjugated transvection",
    )?;
    let word = super::word::word_conjugate(&core, eps)?;
    Ok(ConjugatedTransvection {
        witness,
        transported,
        core,
        word,
    })
}

fn commutator<E: Element>(a: &Matrix<E>, b: &Matrix<E>) -> Result<Matrix<E>> {
    a.mul(b)?.mul(&a.inverse()?)?.mul(&b.inverse()?)
}

fn check_det_one<E: Element>(m: &Matrix<E>) -> Result<()> {
    let d = m.det();
    if !d.is_one() {
        return Err(Error::DeterminantNotOne(d.to_string()));
    }
    Ok(())
}

/// `[α, β]` as `[a, b]` times three elementary tails, where `a = α α⁺(0)⁻¹`
/// and `b = β β⁺(0)⁻¹`:
///
/// `(aba⁻¹b⁻¹)(bab⁻¹ α₀ ba⁻¹b⁻¹)(ba β₀ α₀⁻¹ a⁻¹b⁻¹)(b β₀⁻¹ b⁻¹)`.
pub fn commutator_factor<E: Element>(
    alpha: &Matrix<E>,
    beta: &Matrix<E>,
    alpha0_word: &ElemWord<E>,
    beta0_word: &ElemWord<E>,
) -> Result<Witness<E>> {
    check_det_one(alpha)?;
    check_det_one(beta)?;
    let zero = zero();
    let (alpha0, beta0) = (alpha.plus_eval(&zero), beta.plus_eval(&zero));
    if word_eval(alpha0_word) != alpha0 {
        return Err(Error::WordMismatch("word for α⁺(0)".into()));
    }
    if word_eval(beta0_word) != beta0 {
        return Err(Error::WordMismatch("word for β⁺(0)".into()));
    }
    let alpha0_inv = word_eval(&word_inverse(alpha0_word));
    let beta0_inv = word_eval(&word_inverse(beta0_word));
    let a = alpha.mul(&alpha0_inv)?;
    let b = beta.mul(&beta0_inv)?;
    let (a_inv, b_inv) = (a.inverse()?, b.inverse()?);
    let ba = b.mul(&a)?;
    let ba_inv = a_inv.mul(&b_inv)?;
    let bab = ba.mul(&b_inv)?;
    let bab_inv = b.mul(&a_inv)?.mul(&b_inv)?;
    let factors = vec![
        ("[a, b]".to_string(), commutator(&a, &b)?),
        (
            "(bab^-1) α0 (bab^-1)^-1".to_string(),
            bab.mul(&alpha0)?.mul(&bab_inv)?,
        ),
        (
            "(ba) β0 α0^-1 (ba)^-1".to_string(),
            ba.mul(&beta0)?.mul(&alpha0_inv)?.mul(&ba_inv)?,
        ),
        ("b β0^-1 b^-1".to_string(), b.mul(&beta0_inv)?.mul(&b_inv)?),
    ];
    Witness::certified(
        commutator(alpha, beta)?,
        factors,
        "commutator factorization",
    )
}

/// A target `Π [a_k, b_k] · ε₀` rewritten as `Π [β_k, γ_k] · ε` with every
/// `β_k, γ_k, ε` congruent to the identity modulo the positive ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorNormalForm<E: Element> {
    pub pairs: Vec<(Matrix<E>, Matrix<E>)>,
    pub eps: Matrix<E>,
    pub witness: Witness<E>,
}

pub fn commutator_normal_form<E: Element>(
    comms: &[(Matrix<E>, Matrix<E>)],
    eps: &ElemWord<E>,
) -> Result<CommutatorNormalForm<E>> {
    let (ctx, n) = (eps.ctx(), eps.n());
    let zero = zero();
    let mut target = Matrix::identity(ctx, n);
    let mut pairs = Vec::with_capacity(comms.len());
    let mut normalized = Matrix::identity(ctx, n);
    for (a, b) in comms {
        check_det_one(a)?;
        check_det_one(b)?;
        target = target.mul(&commutator(a, b)?)?;
        let beta = a.mul(&a.plus_eval(&zero).inverse()?)?;
        let gamma = b.mul(&b.plus_eval(&zero).inverse()?)?;
        normalized = normalized.mul(&commutator(&beta, &gamma)?)?;
        pairs.push((beta, gamma));
    }
    target = target.mul(&word_eval(eps))?;
    if !target.is_level_plus() {
        return Err(Error::NotInCongruenceSubgroup);
    }
    let residual = normalized.inverse()?.mul(&target)?;
    if !residual.is_level_plus() {
        return Err(Error::Internal("residual is not congruent to I".into()));
    }
    let mut factors: Vec<(String, Matrix<E>)> = pairs
        .iter()
        .enumerate()
        .map(|(k, (b, g))| Ok((format!("[β{0}, γ{0}]", k + 1), commutator(b, g)?)))
        .collect::<Result<_>>()?;
    factors.push(("ε".into(), residual.clone()));
    let witness = Witness::certified(target, factors, "commutator normal form")?;
    Ok(CommutatorNormalForm {
        pairs,
        eps: residual,
        witness,
    })
}
