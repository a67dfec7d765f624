//! Randomized and exhaustive verification suites, one per lemma-level
//! operation. Each suite plans its trials from a [`SuiteConfig`]; trial `i`
//! draws from its own seeded stream, so reports do not depend on scheduling.

use std::fmt::Display;
use std::time::Instant;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::elementary::{
    commutator_factor, commutator_normal_form, gen_matrix, normalize_mod_plus, rearrange_product,
    split_word, transvection_word, transvection_word_conj, word_eval, word_inverse, word_plus_eval,
    ElemGen, ElemWord,
};
use crate::error::{Error, Result};
use crate::forms::{form_matrix, is_in_g, is_in_s, mat_plus_eval, FormKind, GroupCase};
use crate::local::{
    comaximal_powers, commutator_patch, complete_unimodular, dilate_pullback, dilation_exponent,
    injectivity_check, telescoping_patch, LocRing, LocalCommutatorData, LocalizedPoly,
    SemilocalInstance,
};
use crate::matrix::{det_bareiss, det_cofactor, Matrix, MatrixG};
use crate::ring::{Coeff, CoefficientRing, GradedPoly, PolyRing};
use crate::sample::{level_close, SampleBounds, Sampler};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: Option<usize>,
    pub case: Option<GroupCase>,
    pub n: Option<usize>,
    pub ring: Option<CoefficientRing>,
    pub vars: Option<usize>,
    pub primes: Option<Vec<u64>>,
    pub bounds: SampleBounds,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            trials: None,
            case: None,
            n: None,
            ring: None,
            vars: None,
            primes: None,
            bounds: SampleBounds::default(),
        }
    }
}

impl SuiteConfig {
    pub fn with_seed(seed: u64) -> Self {
        SuiteConfig {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub trials: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
    pub verdict: Verdict,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

type Trial = std::result::Result<(), Failure>;

struct Plan {
    trials: usize,
    /// Enumerated suites: `--trials` can only shorten the enumeration.
    exhaustive: bool,
    run: Box<dyn Fn(usize) -> Trial + Send + Sync>,
}

pub struct Suite {
    pub name: &'static str,
    pub summary: &'static str,
    plan: fn(&SuiteConfig) -> Result<Plan>,
}

pub static SUITES: &[Suite] = &[
    Suite {
        name: "splitting",
        summary: "ge(x + y) = ge(x) ge(y) for every generator type",
        plan: splitting,
    },
    Suite {
        name: "swan-weibel",
        summary: "b ↦ b⁺(t) is a ring map with (b⁺(s))⁺(t) = b⁺(st) and b⁺(0) = b₀",
        plan: swan_weibel,
    },
    Suite {
        name: "forms",
        summary: "form symmetry and membership of every generator",
        plan: forms,
    },
    Suite {
        name: "normalization",
        summary: "level-A₊ words as conjugates of positive generators",
        plan: normalization,
    },
    Suite {
        name: "rearrangement",
        summary: "Π aᵢbᵢ = (Π Jᵢ bᵢ Jᵢ⁻¹)(Π aᵢ)",
        plan: rearrangement,
    },
    Suite {
        name: "dilation",
        summary: "minimal denominator-clearing exponent and pullback round trip",
        plan: dilation,
    },
    Suite {
        name: "patch",
        summary: "telescoping patch along comaximal prime powers",
        plan: patch,
    },
    Suite {
        name: "transvection",
        summary: "transvection words against direct expansion of I + M(v, w)",
        plan: transvection,
    },
    Suite {
        name: "commutator",
        summary: "four-factor commutator identity, normal form and commutator patch",
        plan: commutator,
    },
    Suite {
        name: "unimodular",
        summary: "completion of unimodular rows over F_p and Z_S",
        plan: unimodular,
    },
    Suite {
        name: "det-stability",
        summary: "det α⁺(t) = 1 for elementary α",
        plan: det_stability,
    },
    Suite {
        name: "normality",
        summary: "conjugates of elementary matrices stay in the group",
        plan: normality,
    },
    Suite {
        name: "injectivity",
        summary: "localization at a constant identifies no distinct matrices",
        plan: injectivity,
    },
];

pub fn find_suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// Runs a suite. Errors mean the configuration itself is unusable.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report> {
    let suite = find_suite(name).ok_or_else(|| {
        Error::Malformed(format!(
            "unknown suite `{name}` (known: {})",
            suite_names().join(", ")
        ))
    })?;
    if cfg.trials == Some(0) {
        return Err(Error::Malformed("--trials must be positive".into()));
    }
    let start = Instant::now();
    let plan = (suite.plan)(cfg)?;
    let trials = match cfg.trials {
        Some(t) if plan.exhaustive => t.min(plan.trials),
        Some(t) => t,
        None => plan.trials,
    };
    let outcomes: Vec<Trial> = (0..trials).into_par_iter().map(|i| (plan.run)(i)).collect();
    let failures: Vec<Failure> = outcomes.into_iter().filter_map(|o| o.err()).collect();
    let verdict = if failures.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(Report {
        suite: suite.name.into(),
        trials,
        failures,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
        verdict,
    })
}

fn fail(input: impl Display, expected: impl Display, got: impl Display) -> Failure {
    Failure {
        input: input.to_string(),
        expected: expected.to_string(),
        got: got.to_string(),
    }
}

fn ensure(ok: bool, input: &str, expected: impl Display, got: impl Display) -> Trial {
    if ok {
        Ok(())
    } else {
        Err(fail(input, expected, got))
    }
}

fn ensure_eq<T: PartialEq + Display>(input: &str, what: &str, expected: &T, got: &T) -> Trial {
    ensure(
        expected == got,
        input,
        format!("{what}: {expected}"),
        format!("{what}: {got}"),
    )
}

/// Lifts a library error into a trial failure.
fn ok<T>(input: &str, what: &str, r: Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| fail(input, format!("{what} succeeds"), format!("error: {e}")))
}

fn poly_ring(cfg: &SuiteConfig, coeffs: CoefficientRing, vars: usize) -> PolyRing {
    PolyRing::new(cfg.ring.unwrap_or(coeffs), cfg.vars.unwrap_or(vars))
}

/// Restricts a suite's default `(case, n)` list by the `--case` / `--n` flags.
fn shapes(
    cfg: &SuiteConfig,
    defaults: &[(GroupCase, usize)],
    coeffs: CoefficientRing,
    lemma_size: bool,
) -> Result<Vec<(GroupCase, usize)>> {
    let mut out: Vec<_> = defaults
        .iter()
        .copied()
        .filter(|(c, _)| cfg.case.is_none_or(|k| k == *c))
        .collect();
    if out.is_empty() {
        if let Some(c) = cfg.case {
            out.push((c, c.min_size()));
        }
    }
    if let Some(n) = cfg.n {
        for s in &mut out {
            s.1 = n;
        }
        out.dedup();
    }
    for &(c, n) in &out {
        if lemma_size {
            c.check_lemma_size(n)?;
        } else {
            c.check_shape(n)?;
        }
    }
    if coeffs == CoefficientRing::PrimeField(2) {
        out.retain(|(c, _)| *c != GroupCase::Orthogonal);
        if out.is_empty() {
            return Err(Error::Malformed(
                "the orthogonal case is not supported in characteristic 2".into(),
            ));
        }
    }
    Ok(out)
}

fn primes_or(cfg: &SuiteConfig, default: &[u64]) -> Result<Vec<u64>> {
    let ps = cfg.primes.clone().unwrap_or_else(|| default.to_vec());
    if ps.is_empty() {
        return Err(Error::Malformed("empty prime list".into()));
    }
    for &p in &ps {
        CoefficientRing::prime_field(p)?;
    }
    Ok(ps)
}

fn no_primes(cfg: &SuiteConfig) -> Result<()> {
    if cfg.primes.is_some() {
        return Err(Error::Malformed("this suite takes no --primes".into()));
    }
    Ok(())
}

fn unit_vector(ring: &PolyRing, n: usize, i: usize) -> Vec<GradedPoly> {
    (0..n)
        .map(|j| if j == i { ring.one() } else { ring.zero() })
        .collect()
}

fn show_vec<T: Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn splitting(cfg: &SuiteConfig) -> Result<Plan> {
    no_primes(cfg)?;
    let ring = poly_ring(cfg, CoefficientRing::Integers, 2);
    let shapes = shapes(
        cfg,
        &[
            (GroupCase::Linear, 3),
            (GroupCase::Linear, 4),
            (GroupCase::Linear, 5),
            (GroupCase::Symplectic, 6),
            (GroupCase::Symplectic, 8),
            (GroupCase::Orthogonal, 6),
            (GroupCase::Orthogonal, 8),
        ],
        ring.coeffs,
        true,
    )?;
    let cfg = cfg.clone();
    Ok(Plan {
        trials: 200,
        exhaustive: false,
        run: Box::new(move |t| {
            let mut s = Sampler::for_trial(cfg.seed, t, cfg.bounds);
            let (case, n) = shapes[t % shapes.len()];
            let (i, j) = s.gen_indices(case, n);
            let (x, y) = (s.poly(&ring), s.poly(&ring));
            let input = format!("{case} n={n} ({i}, {j}) x = {x}, y = {y}");
            let g = |a: &GradedPoly| {
                ElemGen::new(case, n, i, j, a.clone()).map(|g| gen_matrix(&g, &ring, n))
            };
            let sum = ok(&input, "generator", g(&x.add(&y)))?;
            let prod = ok(&input, "product", g(&x).and_then(|a| a.mul(&g(&y)?)))?;
            ensure_eq(&input, "ge(x + y) vs ge(x) ge(y)", &prod, &sum)?;
            // splitting a whole word into homogeneous pieces keeps its value
            let w = s.word(case, n, &ring, 3);
            ensure_eq(
                &input,
                "split word value",
                &word_eval(&w),
                &word_eval(&split_word(&w)),
            )
        }),
    })
}

/// `b⁺(t)` computed term by term: the degree-`d` coefficient scaled by `tᵈ`.
fn plus_eval_oracle(b: &GradedPoly, t: &Coeff) -> GradedPoly {
    let cr = b.coeff_ring();
    b.terms().fold(b.ring().zero(), |acc, (m, c)| {
        let c = cr.mul(c, &cr.pow(t, m.degree()));
        acc.add(&GradedPoly::monomial(b.ring(), m.clone(), c))
    })
}

fn swan_weibel(cfg: &SuiteConfig) -> Result<Plan> {
    no_primes(cfg)?;
    let rings: Vec<PolyRing> = match cfg.ring {
        Some(r) => vec![PolyRing::new(r, cfg.vars.unwrap_or(2))],
        None => [
            CoefficientRing::Integers,
            CoefficientRing::Rationals,
            CoefficientRing::PrimeField(7),
        ]
        .into_iter()
        .map(|r| PolyRing::new(r, cfg.vars.unwrap_or(2)))
        .collect(),
    };
    if cfg.case.is_some() || cfg.n.is_some() {
        return Err(Error::Malformed("this suite takes no --case or --n".into()));
    }
    let cfg = cfg.clone();
    Ok(Plan {
        trials: 100 * rings.len(),
        exhaustive: false,
        run: Box::new(move |t| {
            let mut sm = Sampler::for_trial(cfg.seed, t, cfg.bounds);
            let ring = rings[t % rings.len()];
            let cr = ring.coeffs;
            let (b, c) = (sm.poly(&ring), sm.poly(&ring));
            let (s, u) = (sm.coeff(cr), sm.coeff(cr));
            let input = format!("{ring}: b = {b}, c = {c}, s = {s}, t = {u}");
            ensure_eq(
                &input,
                "b⁺(t)",
                &plus_eval_oracle(&b, &u),
                &b.plus_eval_coeff(&u),
            )?;
            ensure_eq(
                &input,
                "(b⁺(s))⁺(t)",
                &b.plus_eval_coeff(&cr.mul(&s, &u)),
                &b.plus_eval_coeff(&s).plus_eval_coeff(&u),
            )?;
            ensure_eq(
                &input,
                "b⁺(0)",
                &b.homogeneous_component(0),
                &b.plus_eval_coeff(&Coeff::zero()),
            )?;
            ensure_eq(
                &input,
                "b⁺(1)",
                &b,
                &b.plus_eval_coeff(&Coeff::from_integer(1.into())),
            )?;
            ensure_eq(
                &input,
                "(b + c)⁺(t)",
                &b.plus_eval_coeff(&u).add(&c.plus_eval_coeff(&u)),
                &b.add(&c).plus_eval_coeff(&u),
            )?;
            ensure_eq(
                &input,
                "(bc)⁺(t)",
                &b.plus_eval_coeff(&u).mul(&c.plus_eval_coeff(&u)),
                &b.mul(&c).plus_eval_coeff(&u),
            )?;
            ensure_eq(
                &input,
                "1⁺(t)",
                &ring.one(),
                &ring.one().plus_eval_coeff(&u),
            )?;
            ensure_eq(
                &input,
                "reassembly",
                &b,
                &b.grade_decompose().reassemble(ring),
            )?;
            let (eb, ec) = (b.swan_weibel_extend(), c.swan_weibel_extend());
            ensure(
                eb.mul(&ec) == b.mul(&c).swan_weibel_extend()
                    && eb.add(&ec) == b.add(&c).swan_weibel_extend(),
                &input,
                "ε is a ring map",
                "ε(bc) ≠ ε(b)ε(c) or ε(b + c) ≠ ε(b) + ε(c)",
            )?;
            ensure_eq(&input, "ε(b)(t)", &b.plus_eval_coeff(&u), &eb.eval(&u))?;
            let m1 = Matrix::from_fn(&ring, 4, |_, _| sm.poly(&ring));
            let m2 = Matrix::from_fn(&ring, 4, |_, _| sm.poly(&ring));
            let tp = ring.constant(&u);
            let lhs = ok(
                &input,
                "matrix evaluation",
                m1.mul(&m2).and_then(|p| mat_plus_eval(&p, &tp)),
            )?;
            let rhs = ok(
                &input,
                "matrix evaluation",
                mat_plus_eval(&m1, &tp).and_then(|a| a.mul(&mat_plus_eval(&m2, &tp)?)),
            )?;
            ensure_eq(&input, "(MN)⁺(t)", &rhs, &lhs)
        }),
    })
}

enum FormItem {
    Symmetry(usize),
    Generator(GroupCase, usize, usize, usize),
}

fn forms(cfg: &SuiteConfig) -> Result<Plan> {
    no_primes(cfg)?;
    let ring = poly_ring(cfg, CoefficientRing::Integers, 2);
    let mut defaults = Vec::new();
    for n in 2..=5 {
        defaults.push((GroupCase::Linear, n));
    }
    for m in 1..=4 {
        defaults.push((GroupCase::Symplectic, 2 * m));
    }
    for m in 2..=4 {
        defaults.push((GroupCase::Orthogonal, 2 * m));
    }
    let shapes = shapes(cfg, &defaults, ring.coeffs, false)?;
    let mut items: Vec<FormItem> = if cfg.case.is_none() && cfg.n.is_none() {
        (1..=4).map(FormItem::Symmetry).collect()
    } else {
        Vec::new()
    };
    for (case, n) in shapes {
        for i in 1..=n {
            for j in 1..=n {
                if ElemGen::new(case, n, i, j, ring.zero()).is_ok()
                    && (i, j) == canonical(case, n, i, j)
                {
                    items.push(FormItem::Generator(case, n, i, j));
                }
            }
        }
    }
    let cfg = cfg.clone();
    Ok(Plan {
        trials: items.len(),
        exhaustive: true,
        run: Box::new(move |t| match items[t] {
            FormItem::Symmetry(m) => {
                let input = format!("m = {m}");
                let psi: MatrixG = form_matrix(&ring, m, FormKind::Psi);
                let tilde: MatrixG = form_matrix(&ring, m, FormKind::PsiTilde);
                ensure_eq(&input, "ψᵗ", &psi.neg(), &psi.transpose())?;
                ensure_eq(&input, "ψ̃ᵗ", &tilde, &tilde.transpose())?;
                let id = MatrixG::identity(&ring, 2 * m);
                ensure_eq(
                    &input,
                    "ψ²",
                    &id.neg(),
                    &ok(&input, "product", psi.mul(&psi))?,
                )?;
                ensure_eq(
                    &input,
                    "ψ̃²",
                    &id,
                    &ok(&input, "product", tilde.mul(&tilde))?,
                )
            }
            FormItem::Generator(case, n, i, j) => {
                let mut s = Sampler::for_trial(cfg.seed, t, cfg.bounds);
                let z = s.poly(&ring);
                let input = format!("{case} n={n} ({i}, {j}) z = {z}");
                let g = ok(&input, "generator", ElemGen::new(case, n, i, j, z))?;
                let m = gen_matrix(&g, &ring, n);
                ensure(is_in_g(case, &m), &input, "in G", format!("not in G: {m}"))?;
                ensure_eq(&input, "det", &ring.one(), &m.det())?;
                // the inverse generator undoes it
                let back = ok(
                    &input,
                    "product",
                    m.mul(&gen_matrix(&g.inverse(), &ring, n)),
                )?;
                ensure(back.is_identity(), &input, "ge(z) ge(-z) = I", back)
            }
        }),
    })
}

/// Index pair stored by the generator for `(i, j)`; pairs that name the same
/// generator are enumerated once.
fn canonical(case: GroupCase, n: usize, i: usize, j: usize) -> (usize, usize) {
    let ring = PolyRing::new(CoefficientRing::Integers, 0);
    ElemGen::new(case, n, i, j, ring.one()).map_or((i, j), |g| (g.i(), g.j()))
}

fn normalization(cfg: &SuiteConfig) -> Result<Plan> {
    no_primes(cfg)?;
    let ring = poly_ring(cfg, CoefficientRing::Integers, 2);
    let shapes = shapes(
        cfg,
        &[
            (GroupCase::Linear, 3),
            (GroupCase::Symplectic, 6),
            (GroupCase::Orthogonal, 6),
        ],
        ring.coeffs,
        true,
    )?;
    let cfg = cfg.clone();
    Ok(Plan {
        trials: 50 * shapes.len(),
        exhaustive: false,
        run: Box::new(move |t| {
            let mut s = Sampler::for_trial(cfg.seed, t, cfg.bounds);
            let (case, n) = shapes[t % shapes.len()];
            let w = s.level_word(case, n, &ring, 4);
            let input = format!("{case} n={n} word {}", show_vec(w.gens()));
            let alpha = word_eval(&w);
            let out = ok(&input, "normalization", normalize_mod_plus(&w))?;
            let mut acc = MatrixG::identity(&ring, n);
            for (eps, core) in &out.pairs {
                ensure(
                    core.arg().degree_zero_part().is_zero(),
                    &input,
                    "core with vanishing degree-0 part",
                    core,
                )?;
                ensure(
                    eps.gens().iter().all(|g| g.arg().is_constant()),
                    &input,
                    "degree-0 conjugator",
                    show_vec(eps.gens()),
                )?;
                let e = word_eval(eps);
                let conj = e
                    .mul(&gen_matrix(core, &ring, n))
                    .and_then(|m| m.mul(&word_eval(&word_inverse(eps))))
                    .and_then(|m| acc.mul(&m));
                acc = ok(&input, "product", conj)?;
            }
            let residual = word_eval(&out.residual);
            ensure(residual.is_identity(), &input, "residual I", &residual)?;
            acc = ok(&input, "product", acc.mul(&residual))?;
            ensure_eq(&input, "re-evaluation", &alpha, &acc)
        }),
    })
}

fn rearrangement(cfg: &SuiteConfig) -> Result<Plan> {
    no_primes(cfg)?;
    let ring = poly_ring(cfg, CoefficientRing::Integers, 2);
    let fixed = if cfg.case.is_some() || cfg.n.is_some() {
        Some(shapes(cfg, &[(GroupCase::Linear, 3)], ring.coeffs, false)?)
    } else {
        None
    };
    let cfg = cfg.clone();
    Ok(Plan {
        trials: 100,
        exhaustive: false,
        run: Box::new(move |t| {
            let mut s = Sampler::for_trial(cfg.seed, t, cfg.bounds);
            let (case, n) = match &fixed {
                Some(sh) => sh[t % sh.len()],
                None => (GroupCase::Linear, 2 + s.below(5)),
            };
            let r = 1 + s.below(4);
            let random_invertible = |s: &mut Sampler| -> Result<MatrixG> {
                let len = 1 + s.below(3);
                let w = s.word(case, n, &ring, len);
                if case == GroupCase::Linear {
                    s.unit_diagonal(&ring, n).mul(&word_eval(&w))
                } else {
                    Ok(word_eval(&w))
                }
            };
            let input = format!("{case} n={n} r={r} trial {t}");
            let pairs = (0..r)
                .map(|_| Ok((random_invertible(&mut s)?, random_invertible(&mut s)?)))
                .collect::<Result<Vec<_>>>();
            let pairs = ok(&input, "sampling", pairs)?;
            let w = ok(&input, "rearrangement", rearrange_product(&pairs))?;
            let mut direct = MatrixG::identity(&ring, n);
            for (a, b) in &pairs {
                direct = ok(&input, "product", direct.mul(a).and_then(|m| m.mul(b)))?;
            }
            ensure_eq(&input, "target", &direct, &w.target)?;
            ensure(w.checked, &input, "checked witness", "unchecked")?;
            ensure_eq(
                &input,
                "witness product",
                &direct,
                &ok(&input, "product", w.product())?,
            )
        }),
    })
}

fn dilation(cfg: &SuiteConfig) -> Result<Plan> {
    let ring = poly_ring(cfg, CoefficientRing::Integers, 2);
    if ring.coeffs != CoefficientRing::Integers {
        return Err(Error::Malformed(
            "dilation localizes ℤ-algebras; use --ring int".into(),
        ));
    }
    let primes = primes_or(cfg, &[2, 3, 5])?;
    let shapes = shapes(
        cfg,
        &[
            (GroupCase::Linear, 3),
            (GroupCase::Symplectic, 6),
            (GroupCase::Orthogonal, 6),
        ],
        ring.coeffs,
        true,
    )?;
    let cfg = cfg.clone();
    Ok(Plan {
        trials: 50,
        exhaustive: false,
        run: Box::new(move |t| {
            let mut sm = Sampler::for_trial(cfg.seed, t, cfg.bounds);
            let (case, n) = shapes[t % shapes.len()];
            let p = primes[t % primes.len()];
            let loc = LocRing::from_int(ring, p as i64).expect("prime");
            let len = 1 + sm.below(3);
            let u = sm.localized_word(&loc, case, n, len, 3);
            let w = level_close(&u);
            let input = format!("{case} n={n} s={p} word {}", show_vec(w.gens()));
            let alpha = word_eval(&w);
            let l = ok(&input, "dilation exponent", dilation_exponent(&alpha))?;
            // the first l' with α⁺(s^l') free of denominators, found by search
            let first_clear = (0..=l + 1).find(|&k| {
                alpha
                    .plus_eval(&loc.s_power(k))
                    .entries()
                    .iter()
                    .all(|e| e.to_global().is_some())
            });
            ensure(
                first_clear == Some(l),
                &input,
                format!("minimal exponent {l}"),
                format!("first clearing exponent {first_clear:?}"),
            )?;
            let beta = ok(&input, "pullback", dilate_pullback(&alpha, l))?;
            let round = ok(&input, "localization", loc.localize_matrix(&beta))?;
            ensure_eq(&input, "α⁺(sˡ)", &alpha.plus_eval(&loc.s_power(l)), &round)?;
            ensure(beta.is_level_plus(), &input, "pullback ≡ I mod A₊", &beta)?;
            if l > 0 {
                let below = dilate_pullback(&alpha, l - 1);
                ensure(
                    matches!(below, Err(Error::DenominatorNotCleared(_))),
                    &input,
                    format!("l - 1 = {} leaves a denominator", l - 1),
                    format!("{below:?}"),
                )?;
            }
            if case != GroupCase::Linear {
                ensure(is_in_g(case, &beta), &input, "pullback in G", &beta)?;
            }
            Ok(())
        }),
    })
}

fn localize_word(w: &ElemWord<GradedPoly>, loc: &LocRing) -> ElemWord<LocalizedPoly> {
    w.map_args(loc, |a| loc.element(a.clone(), 0))
}

fn patch(cfg: &SuiteConfig) -> Result<Plan> {
    let ring = poly_ring(cfg, CoefficientRing::Integers, 2);
    if ring.coeffs != CoefficientRing::Integers {
        return Err(Error::Malformed(
            "patching localizes ℤ-algebras; use --ring int".into(),
        ));
    }
    let prime_sets: Vec<Vec<u64>> = match &cfg.primes {
        Some(_) => vec![primes_or(cfg, &[])?],
        None => vec![vec![2, 3], vec![2, 5], vec![3, 5], vec![2, 3, 5]],
    };
    let shapes = shapes(
        cfg,
        &[
            (GroupCase::Linear, 3),
            (GroupCase::Symplectic, 6),
            (GroupCase::Orthogonal, 6),
        ],
        ring.coeffs,
        true,
    )?;
    let cfg = cfg.clone();
    Ok(Plan {
        trials: 30,
        exhaustive: false,
        run: Box::new(move |t| {
            let mut sm = Sampler::for_trial(cfg.seed, t, cfg.bounds);
            let (case, n) = shapes[t % shapes.len()];
            let ps = &prime_sets[t % prime_sets.len()];
            let s: Vec<Coeff> = ps.iter().map(|&p| Coeff::from_integer(p.into())).collect();
            let l: Vec<u32> = ps.iter().map(|_| 1 + sm.below(2) as u32).collect();
            let w = sm.level_word(case, n, &ring, 2);
            let input = format!("{case} n={n} s={ps:?} l={l:?} word {}", show_vec(w.gens()));
            let alpha = word_eval(&w);
            let cd = ok(
                &input,
                "comaximal data",
                comaximal_powers(ring.coeffs, &s, &l),
            )?;
            let words: Vec<_> = s
                .iter()
                .map(|si| localize_word(&w, &LocRing::new(ring, si).expect("prime")))
                .collect();
            let pw = ok(
                &input,
                "patch",
                telescoping_patch(&alpha, &cd, Some(&words)),
            )?;
            ensure(pw.checked, &input, "checked patch witness", "unchecked")?;
            ensure(
                pw.certificates_hold(),
                &input,
                "certificates hold",
                "a certificate fails",
            )?;
            let mut prod = MatrixG::identity(&ring, n);
            for (i, f) in pw.factors.iter().enumerate() {
                prod = ok(&input, "product", prod.mul(&f.matrix))?;
                if case != GroupCase::Linear {
                    ensure(
                        is_in_g(case, &f.matrix),
                        &input,
                        format!("F{} in G", i + 1),
                        &f.matrix,
                    )?;
                }
                let cert = f
                    .certificate
                    .as_ref()
                    .ok_or_else(|| fail(&input, "certificate", "none"))?;
                ensure(
                    cert.dilation_matches,
                    &input,
                    "re-localization matches dilation",
                    "mismatch",
                )?;
                let lw = cert
                    .local_word
                    .as_ref()
                    .ok_or_else(|| fail(&input, "local word", "none"))?;
                let loc = LocRing::new(ring, &s[i]).expect("prime");
                let local = ok(&input, "localization", loc.localize_matrix(&f.matrix))?;
                ensure_eq(&input, "local word value", &local, &word_eval(lw))?;
            }
            ensure_eq(&input, "Π Fᵢ", &alpha, &prod)
        }),
    })
}

/// Form entry `F[r][c]` written out directly (0-based).
fn form_entry(case: GroupCase, r: usize, c: usize) -> i64 {
    let paired = r / 2 == c / 2 && r != c;
    match case {
        GroupCase::Linear => (r == c) as i64,
        GroupCase::Symplectic if paired => {
            if r.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        GroupCase::Orthogonal if paired => 1,
        _ => 0,
    }
}

/// `I + M(v, w)` by direct expansion: `δ + v_r (wᵗF)_c ± w_r (vᵗF)_c`.
fn expand_transvection(
    ring: &PolyRing,
    case: GroupCase,
    v: &[GradedPoly],
    w: &[GradedPoly],
) -> MatrixG {
    let n = v.len();
    let twist = |u: &[GradedPoly], c: usize| {
        (0..n).fold(ring.zero(), |acc, k| match form_entry(case, k, c) {
            0 => acc,
            f => acc.add(&u[k].scale(&Coeff::from_integer(f.into()))),
        })
    };
    let sign = match case {
        GroupCase::Linear => 0,
        GroupCase::Symplectic => 1,
        GroupCase::Orthogonal => -1,
    };
    let vt: Vec<GradedPoly> = (0..n).map(|c| twist(v, c)).collect();
    let wt: Vec<GradedPoly> = (0..n).map(|c| twist(w, c)).collect();
    Matrix::from_fn(ring, n, |r, c| {
        let mut e = v[r].mul(&wt[c]);
        if sign != 0 {
            e = e.add(&w[r].mul(&vt[c]).scale(&Coeff::from_integer(sign.into())));
        }
        if r == c {
            e = e.add(&ring.one());
        }
        e
    })
}

fn transvection(cfg: &SuiteConfig) -> Result<Plan> {
    no_primes(cfg)?;
    let ring = poly_ring(cfg, CoefficientRing::Integers, 2);
    let shapes = shapes(
        cfg,
        &[
            (GroupCase::Linear, 3),
            (GroupCase::Linear, 4),
            (GroupCase::Linear, 5),
            (GroupCase::Symplectic, 6),
            (GroupCase::Orthogonal, 6),
        ],
        ring.coeffs,
        true,
    )?;
    let cfg = cfg.clone();
    Ok(Plan {
        trials: 100 * shapes.len(),
        exhaustive: false,
        run: Box::new(move |t| {
            let mut sm = Sampler::for_trial(cfg.seed, t, cfg.bounds);
            let (case, n) = shapes[t % shapes.len()];
            let w = sm.admissible_vector(case, n, &ring);
            let input = format!("{case} n={n} w = {}", show_vec(&w));
            let e1 = unit_vector(&ring, n, 0);
            let word = ok(
                &input,
                "transvection word",
                transvection_word(&ring, case, &w),
            )?;
            let expected = expand_transvection(&ring, case, &e1, &w);
            ensure_eq(&input, "I + M(e1, w)", &expected, &word_eval(&word))?;
            // conjugated form: v = ε e1 and w chosen with ⟨v, w⟩ = 0
            let eps = sm.word(case, n, &ring, 1);
            let e = word_eval(&eps);
            let w = ok(
                &input,
                "transport",
                match case {
                    GroupCase::Linear => word_eval(&word_inverse(&eps)).transpose().mul_vec(&w),
                    _ => e.mul_vec(&w),
                },
            )?;
            let input = format!(
                "{input}; ε = {}, transported w = {}",
                show_vec(eps.gens()),
                show_vec(&w)
            );
            let conj = ok(
                &input,
                "conjugated transvection",
                transvection_word_conj(&eps, &w),
            )?;
            let expected = expand_transvection(&ring, case, &e.column(0), &w);
            ensure(conj.witness.checked, &input, "checked witness", "unchecked")?;
            ensure_eq(&input, "witness target", &expected, &conj.witness.target)?;
            ensure_eq(
                &input,
                "witness product",
                &expected,
                &ok(&input, "product", conj.witness.product())?,
            )?;
            ensure_eq(&input, "conjugated word", &expected, &word_eval(&conj.word))
        }),
    })
}

/// `a b a⁻¹ b⁻¹` as a word.
fn commutator_word<E: Element>(a: &ElemWord<E>, b: &ElemWord<E>) -> Result<ElemWord<E>> {
    a.concat(b)?
        .concat(&word_inverse(a))?
        .concat(&word_inverse(b))
}

fn commutator(cfg: &SuiteConfig) -> Result<Plan> {
    let ring = poly_ring(cfg, CoefficientRing::Integers, 1);
    if ring.coeffs != CoefficientRing::Integers {
        return Err(Error::Malformed(
            "the commutator patch localizes ℤ-algebras; use --ring int".into(),
        ));
    }
    let primes = primes_or(cfg, &[2, 3])?;
    let shapes = shapes(
        cfg,
        &[(GroupCase::Linear, 3), (GroupCase::Symplectic, 6)],
        ring.coeffs,
        true,
    )?;
    let cfg = cfg.clone();
    let zero = Coeff::zero();
    Ok(Plan {
        trials: 30,
        exhaustive: false,
        run: Box::new(move |t| {
            let mut sm = Sampler::for_trial(cfg.seed, t, cfg.bounds);
            let (case, n) = shapes[t % shapes.len()];
            let len = 1 + sm.below(2);
            let wa = sm.word(case, n, &ring, len);
            let len = 1 + sm.below(2);
            let wb = sm.word(case, n, &ring, len);
            let input = format!(
                "{case} n={n} α = {}, β = {}",
                show_vec(wa.gens()),
                show_vec(wb.gens())
            );
            let (alpha, beta) = (word_eval(&wa), word_eval(&wb));
            let (a0, b0) = (word_plus_eval(&wa, &zero), word_plus_eval(&wb, &zero));
            let fw = ok(
                &input,
                "commutator factorization",
                commutator_factor(&alpha, &beta, &a0, &b0),
            )?;
            let direct = word_eval(&ok(&input, "word", commutator_word(&wa, &wb))?);
            ensure(fw.checked, &input, "checked witness", "unchecked")?;
            ensure_eq(&input, "[α, β]", &direct, &fw.target)?;
            ensure_eq(
                &input,
                "four-factor product",
                &direct,
                &ok(&input, "product", fw.product())?,
            )?;
            // normal form of [α, β]·ε₀ with ε₀ = [α⁺(0), β⁺(0)]⁻¹
            let eps0 = word_inverse(&ok(&input, "word", commutator_word(&a0, &b0))?);
            let nf = ok(
                &input,
                "normal form",
                commutator_normal_form(&[(alpha.clone(), beta.clone())], &eps0),
            )?;
            ensure(
                nf.witness.checked,
                &input,
                "checked normal form",
                "unchecked",
            )?;
            ensure(
                nf.eps.plus_eval(&zero).is_identity(),
                &input,
                "ε⁺(0) = I",
                &nf.eps,
            )?;
            for (b, g) in &nf.pairs {
                ensure(
                    b.is_level_plus() && g.is_level_plus(),
                    &input,
                    "β, γ ≡ I",
                    "not level",
                )?;
            }
            let target = ok(&input, "product", direct.mul(&word_eval(&eps0)))?;
            ensure_eq(&input, "normal form target", &target, &nf.witness.target)?;
            // commutator patch along s₁ = p, s₂ = q
            let ps = [primes[t % primes.len()], primes[(t + 1) % primes.len()]];
            let ps: Vec<u64> = if ps[0] == ps[1] {
                vec![ps[0]]
            } else {
                ps.to_vec()
            };
            let s: Vec<Coeff> = ps.iter().map(|&p| Coeff::from_integer(p.into())).collect();
            let cd = ok(
                &input,
                "comaximal data",
                comaximal_powers(ring.coeffs, &s, &vec![1; s.len()]),
            )?;
            let data = s
                .iter()
                .map(|si| {
                    let loc = LocRing::new(ring, si)?;
                    Ok(LocalCommutatorData {
                        pairs: nf
                            .pairs
                            .iter()
                            .map(|(b, g)| Ok((loc.localize_matrix(b)?, loc.localize_matrix(g)?)))
                            .collect::<Result<_>>()?,
                        eps: loc.localize_matrix(&nf.eps)?,
                    })
                })
                .collect::<Result<Vec<_>>>();
            let data = ok(&input, "local data", data)?;
            let pw = ok(
                &input,
                "commutator patch",
                commutator_patch(&target, &cd, &data),
            )?;
            ensure(
                pw.checked && pw.certificates_hold(),
                &input,
                "checked commutator patch",
                "unchecked",
            )?;
            let mut prod = MatrixG::identity(&ring, n);
            for (i, f) in pw.factors.iter().enumerate() {
                prod = ok(&input, "product", prod.mul(&f.matrix))?;
                let exp = f
                    .certificate
                    .as_ref()
                    .and_then(|c| c.expansion.as_ref())
                    .ok_or_else(|| fail(&input, "expansion", "none"))?;
                let loc = &data[i].eps.ctx().clone();
                let ex = ok(
                    &input,
                    "product",
                    Matrix::product(loc, n, exp.iter().map(|(_, m)| m)),
                )?;
                let local = ok(&input, "localization", loc.localize_matrix(&f.matrix))?;
                ensure_eq(&input, "expansion vs factor", &local, &ex)?;
            }
            ensure_eq(&input, "Π Fᵢ", &target, &prod)
        }),
    })
}

/// Row-reduction oracle: unimodular iff, modulo each prime, some entry survives.
fn unimodular_oracle(v: &[Coeff], primes: &[u64]) -> bool {
    primes.iter().all(|&p| {
        let p = num_bigint::BigInt::from(p);
        v.iter().any(|c| {
            let d = c.denom() % &p;
            let n = c.numer() % &p;
            d != 0.into() && n != 0.into()
        })
    })
}

enum RowItem {
    Field(u64, Vec<i64>),
    Localized(Vec<u64>, Vec<i64>),
}

fn unimodular(cfg: &SuiteConfig) -> Result<Plan> {
    if cfg.case.is_some_and(|c| c != GroupCase::Linear) {
        return Err(Error::Malformed("row completion is linear only".into()));
    }
    let fields: Vec<u64> = match cfg.ring {
        Some(CoefficientRing::PrimeField(p)) => vec![p],
        Some(r) => {
            return Err(Error::Malformed(format!(
                "completion runs over prime fields, not {r}"
            )))
        }
        None => vec![3, 5],
    };
    let sizes: Vec<usize> = match cfg.n {
        Some(n) if n >= 2 => vec![n],
        Some(n) => {
            return Err(Error::Malformed(format!(
                "rows need length at least 2, got {n}"
            )))
        }
        None => vec![2, 3],
    };
    let primes = primes_or(cfg, &[2, 3])?;
    let mut items = Vec::new();
    for &p in &fields {
        for &n in &sizes {
            let total = (p as usize).pow(n as u32);
            for code in 0..total {
                let mut v = Vec::with_capacity(n);
                let mut c = code;
                for _ in 0..n {
                    v.push((c % p as usize) as i64);
                    c /= p as usize;
                }
                items.push(RowItem::Field(p, v));
            }
        }
    }
    let mut sm = Sampler::new(cfg.seed, cfg.bounds);
    for _ in 0..60 {
        let n = sizes[sm.below(sizes.len())];
        let b = cfg.bounds.max_coeff.max(1);
        let v = (0..n)
            .map(|_| rand::Rng::random_range(&mut sm.rng, -b..=b))
            .collect();
        items.push(RowItem::Localized(primes.clone(), v));
    }
    Ok(Plan {
        trials: items.len(),
        exhaustive: true,
        run: Box::new(move |t| {
            let (inst, v, ps) = match &items[t] {
                RowItem::Field(p, v) => (SemilocalInstance::prime_field(*p), v, vec![*p]),
                RowItem::Localized(ps, v) => {
                    (SemilocalInstance::localized_integers(ps), v, ps.clone())
                }
            };
            let input = format!("{:?} v = {v:?}", inst);
            let inst = ok(&input, "instance", inst)?;
            let v: Vec<Coeff> = v.iter().map(|&x| Coeff::from_integer(x.into())).collect();
            let cr = inst.ring().coeffs;
            let expect = unimodular_oracle(&v, &ps);
            match complete_unimodular(&inst, &v) {
                Ok(word) => {
                    ensure(expect, &input, "rejected as not unimodular", "completed")?;
                    // apply v ↦ v·E_ij(c) directly: v_j += c v_i
                    let mut row: Vec<Coeff> =
                        v.iter().map(|c| cr.reduce(c).expect("in ring")).collect();
                    for g in word.gens() {
                        let c = g
                            .arg()
                            .constant_value()
                            .ok_or_else(|| fail(&input, "constant argument", g))?;
                        ensure(inst.contains(&c), &input, "argument in the ring", &c)?;
                        row[g.j() - 1] = cr.add(&row[g.j() - 1], &cr.mul(&c, &row[g.i() - 1]));
                    }
                    let e1 = row[0].is_one() && row[1..].iter().all(|c| c.is_zero());
                    ensure(e1, &input, "v·ε = e1", show_vec(&row))
                }
                Err(Error::NotUnimodular(msg)) => ensure(!expect, &input, "a completion", msg),
                Err(e) => Err(fail(&input, "completion", e)),
            }
        }),
    })
}

fn det_stability(cfg: &SuiteConfig) -> Result<Plan> {
    no_primes(cfg)?;
    let ring = poly_ring(cfg, CoefficientRing::Integers, 2);
    let shapes = shapes(
        cfg,
        &[
            (GroupCase::Linear, 3),
            (GroupCase::Linear, 4),
            (GroupCase::Symplectic, 6),
            (GroupCase::Orthogonal, 6),
        ],
        ring.coeffs,
        true,
    )?;
    let cfg = cfg.clone();
    Ok(Plan {
        trials: 100,
        exhaustive: false,
        run: Box::new(move |t| {
            let mut sm = Sampler::for_trial(cfg.seed, t, cfg.bounds);
            let (case, n) = shapes[t % shapes.len()];
            let len = 1 + sm.below(4);
            let w = sm.word(case, n, &ring, len);
            let input = format!("{case} n={n} word {}", show_vec(w.gens()));
            let alpha = word_eval(&w);
            ensure_eq(&input, "det α", &ring.one(), &alpha.det())?;
            for tv in [0i64, 1, 2, -1] {
                let at = alpha.plus_eval(&ring.coeffs.from_int(tv));
                let d = det_bareiss(&at);
                ensure_eq(&input, &format!("det α⁺({tv})"), &ring.one(), &d)?;
                if n <= 4 {
                    ensure_eq(
                        &input,
                        &format!("cofactor det α⁺({tv})"),
                        &d,
                        &det_cofactor(&at),
                    )?;
                }
            }
            Ok(())
        }),
    })
}

/// Diagonal units preserving the form: `diag(u, u⁻¹)` on each hyperbolic pair.
fn form_diagonal(sm: &mut Sampler, ring: &PolyRing, case: GroupCase, n: usize) -> MatrixG {
    if case == GroupCase::Linear {
        return sm.unit_diagonal(ring, n);
    }
    let cr = ring.coeffs;
    let mut d = MatrixG::identity(ring, n);
    for p in 0..n / 2 {
        let u = match cr {
            CoefficientRing::Integers => cr.from_int(if sm.coin() { 1 } else { -1 }),
            _ => sm.nonzero_coeff(cr),
        };
        d.set(2 * p, 2 * p, ring.constant(&u));
        d.set(
            2 * p + 1,
            2 * p + 1,
            ring.constant(&cr.inverse(&u).expect("unit")),
        );
    }
    d
}

fn normality(cfg: &SuiteConfig) -> Result<Plan> {
    no_primes(cfg)?;
    let ring = poly_ring(cfg, CoefficientRing::Integers, 2);
    let shapes = shapes(
        cfg,
        &[
            (GroupCase::Linear, 3),
            (GroupCase::Symplectic, 6),
            (GroupCase::Orthogonal, 6),
        ],
        ring.coeffs,
        true,
    )?;
    let cfg = cfg.clone();
    Ok(Plan {
        trials: 60,
        exhaustive: false,
        run: Box::new(move |t| {
            let mut sm = Sampler::for_trial(cfg.seed, t, cfg.bounds);
            let (case, n) = shapes[t % shapes.len()];
            let len = 1 + sm.below(2);
            let gw = sm.word(case, n, &ring, len);
            let d = form_diagonal(&mut sm, &ring, case, n);
            let len = 1 + sm.below(2);
            let ew = sm.word(case, n, &ring, len);
            let input = format!(
                "{case} n={n} g = D·{}, e = {}",
                show_vec(gw.gens()),
                show_vec(ew.gens())
            );
            let g = ok(&input, "product", d.mul(&word_eval(&gw)))?;
            ensure(is_in_g(case, &g), &input, "g in G", &g)?;
            let c = ok(
                &input,
                "conjugate",
                g.mul(&word_eval(&ew)).and_then(|m| m.mul(&g.inverse()?)),
            )?;
            ensure(is_in_s(case, &c), &input, "g e g⁻¹ in G with det 1", &c)?;
            // a transvection conjugated by an elementary word has a witness
            let w0 = sm.admissible_vector(case, n, &ring);
            let core = ok(&input, "transvection", transvection_word(&ring, case, &w0))?;
            let e = word_eval(&gw);
            let w = ok(
                &input,
                "transport",
                match case {
                    GroupCase::Linear => word_eval(&word_inverse(&gw)).transpose().mul_vec(&w0),
                    _ => e.mul_vec(&w0),
                },
            )?;
            let conj = ok(
                &input,
                "conjugated transvection",
                transvection_word_conj(&gw, &w),
            )?;
            let direct = ok(
                &input,
                "conjugate",
                e.mul(&word_eval(&core))
                    .and_then(|m| m.mul(&word_eval(&word_inverse(&gw)))),
            )?;
            ensure(
                is_in_s(case, &direct),
                &input,
                "conjugate in G with det 1",
                &direct,
            )?;
            ensure_eq(
                &input,
                "conjugate vs witness",
                &direct,
                &ok(&input, "product", conj.witness.product())?,
            )
        }),
    })
}

fn injectivity(cfg: &SuiteConfig) -> Result<Plan> {
    let ring = poly_ring(cfg, CoefficientRing::Integers, 2);
    let primes = primes_or(cfg, &[2, 3, 5])?;
    let n = cfg.n.unwrap_or(3);
    if n == 0 {
        return Err(Error::Malformed("--n must be positive".into()));
    }
    let cfg = cfg.clone();
    Ok(Plan {
        trials: 60,
        exhaustive: false,
        run: Box::new(move |t| {
            let mut sm = Sampler::for_trial(cfg.seed, t, cfg.bounds);
            let p = primes[t % primes.len()];
            let a = Matrix::from_fn(&ring, n, |_, _| sm.poly(&ring));
            let mut b = a.clone();
            if sm.coin() {
                let (r, c) = (sm.below(n), sm.below(n));
                let bump = sm.poly(&ring);
                b.set(r, c, b.get(r, c).add(&bump));
            }
            let input = format!("s = {p}, a = {a}, b = {b}");
            let s = Coeff::from_integer(p.into());
            ok(&input, "injectivity", injectivity_check(&a, &b, &s)).map(|_| ())
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(trials: usize) -> SuiteConfig {
        SuiteConfig {
            trials: Some(trials),
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn every_suite_runs_briefly() {
        for name in suite_names() {
            let r = run_suite(name, &quick(3)).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures);
            assert_eq!(r.trials, 3);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let mut a = run_suite("splitting", &quick(20)).unwrap();
        let mut b = run_suite("splitting", &quick(20)).unwrap();
        a.elapsed_ms = None;
        b.elapsed_ms = None;
        assert_eq!(a, b);
    }

    #[test]
    fn bad_configurations_are_rejected() {
        let bad_n = SuiteConfig {
            case: Some(GroupCase::Symplectic),
            n: Some(5),
            ..quick(1)
        };
        assert!(run_suite("splitting", &bad_n).is_err());
        let f2 = SuiteConfig {
            case: Some(GroupCase::Orthogonal),
            ring: Some(CoefficientRing::PrimeField(2)),
            ..quick(1)
        };
        assert!(run_suite("normalization", &f2).is_err());
        assert!(run_suite("nonsense", &quick(1)).is_err());
        assert!(run_suite("splitting", &quick(0)).is_err());
    }

    #[test]
    fn transvection_oracle_matches_definition() {
        let ring = PolyRing::new(CoefficientRing::Integers, 2);
        let mut sm = Sampler::new(3, SampleBounds::default());
        for case in GroupCase::ALL {
            let v: Vec<GradedPoly> = (0..6).map(|_| sm.poly(&ring)).collect();
            let w: Vec<GradedPoly> = (0..6).map(|_| sm.poly(&ring)).collect();
            let lib = crate::forms::transvection_matrix(&ring, case, &v, &w).unwrap();
            assert_eq!(expand_transvection(&ring, case, &v, &w), lib);
        }
    }

    #[test]
    fn exhaustive_unimodular_counts() {
        let r = run_suite("unimodular", &SuiteConfig::default()).unwrap();
        assert_eq!(r.trials, 9 + 27 + 25 + 125 + 60);
        assert!(r.passed(), "{:?}", r.failures);
    }
}
