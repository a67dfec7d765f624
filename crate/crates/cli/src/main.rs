use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use graded_qs::elementary::{
    commutator_factor, gen_matrix, normalize_mod_plus, split_word, transvection_word,
    transvection_word_conj, word_eval, word_inverse, word_plus_eval, ElemWord, Witness,
};
use graded_qs::forms::{is_in_g, mat_plus_eval, transvection_matrix};
use graded_qs::json::{GenJson, MatrixJson, PatchWitnessJson, PolyJson, WitnessJson, WordJson};
use graded_qs::local::{
    comaximal_powers, complete_unimodular, telescoping_patch, LocRing, SemilocalInstance,
};
use graded_qs::sample::SampleBounds;
use graded_qs::suites::{run_suite, suite_names, SuiteConfig};
use graded_qs::{Coeff, CoefficientRing, Error, GradedPoly, GroupCase, Matrix, MatrixG, PolyRing};

#[derive(Parser)]
#[command(
    name = "gqs",
    version,
    about = "Elementary-group factorizations and patching witnesses over graded polynomial rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
struct Common {
    /// linear, symplectic or orthogonal
    #[arg(long)]
    case: Option<GroupCase>,
    #[arg(long)]
    n: Option<usize>,
    /// int, rat or fp:<p>
    #[arg(long)]
    ring: Option<CoefficientRing>,
    /// number of polynomial variables
    #[arg(long)]
    vars: Option<usize>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    trials: Option<usize>,
    /// comma-separated primes, e.g. 2,3,5
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    #[arg(long)]
    input: Option<PathBuf>,
    /// compact single-line JSON
    #[arg(long)]
    json: bool,
    /// omit elapsed times so output is byte-for-byte reproducible
    #[arg(long)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print its report
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long)]
        max_coeff: Option<i64>,
        #[arg(long)]
        max_terms: Option<usize>,
    },
    /// Produce a factorization witness
    Factor {
        kind: FactorKind,
        #[command(flatten)]
        common: Common,
        /// comma-separated vector entries
        #[arg(long)]
        vector: Option<String>,
        /// word JSON for the conjugating element of a transvection
        #[arg(long)]
        eps: Option<PathBuf>,
    },
    /// Telescoping patch of a level-plus matrix along prime powers
    Patch {
        #[command(flatten)]
        common: Common,
        /// matrix literal: rows separated by `;`, entries by `,`
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, value_delimiter = ',')]
        dilation_exponent: Option<Vec<u32>>,
    },
    /// Complete a unimodular row by an elementary word
    Complete {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        vector: Option<String>,
    },
    /// Evaluate a word, or apply b ↦ b⁺(t) to a polynomial or matrix
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        at: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FactorKind {
    Transvection,
    Split,
    Normalize,
    Commutator,
}

enum Failure {
    Usage(String),
    Input(Error),
    Unchecked(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Unchecked(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error[{}]: {e}", e.kind());
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify {
            suite,
            common,
            max_degree,
            max_coeff,
            max_terms,
        } => verify(&suite, &common, max_degree, max_coeff, max_terms),
        Command::Factor {
            kind,
            common,
            vector,
            eps,
        } => factor(kind, &common, vector.as_deref(), eps.as_deref()),
        Command::Patch {
            common,
            matrix,
            dilation_exponent,
        } => patch(&common, matrix.as_deref(), dilation_exponent),
        Command::Complete { common, vector } => complete(&common, vector.as_deref()),
        Command::Eval {
            common,
            matrix,
            poly,
            at,
        } => eval(&common, matrix.as_deref(), poly.as_deref(), at.as_deref()),
    }
}

fn emit<T: serde::Serialize>(common: &Common, value: &T) {
    let text = if common.json {
        serde_json::to_string(value)
    } else {
        serde_json::to_string_pretty(value)
    };
    println!("{}", text.expect("JSON values serialize"));
}

fn unused(flag: &str, present: bool, verb: &str) -> Outcome {
    if present {
        return Err(Failure::Usage(format!("{flag} is not used by `{verb}`")));
    }
    Ok(())
}

fn ring_of(common: &Common) -> PolyRing {
    PolyRing::new(
        common.ring.unwrap_or(CoefficientRing::Integers),
        common.vars.unwrap_or(2),
    )
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Input(Error::Malformed(format!("{}: {e}", path.display()))))
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::Input(Error::Malformed(format!("{what}: {e}"))))
}

fn read_word(path: &Path, ring: PolyRing) -> Result<ElemWord<GradedPoly>, Failure> {
    let wj: WordJson = from_value(read_json(path)?, "word JSON")?;
    Ok(wj.to_word(Some(ring))?)
}

fn parse_matrix(ring: &PolyRing, text: &str) -> Result<MatrixG, Failure> {
    let rows = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|e| ring.parse(e))
                .collect::<graded_qs::Result<Vec<_>>>()
        })
        .collect::<graded_qs::Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(ring, rows)?)
}

fn parse_vector(ring: &PolyRing, text: &str) -> Result<Vec<GradedPoly>, Failure> {
    Ok(text
        .split(',')
        .map(|e| ring.parse(e))
        .collect::<graded_qs::Result<Vec<_>>>()?)
}

fn check_shape(common: &Common, a: &MatrixG) -> Outcome {
    if let Some(n) = common.n {
        if n != a.n() {
            return Err(Error::DimensionMismatch(format!(
                "--n {n} but the input has size {}",
                a.n()
            ))
            .into());
        }
    }
    if let Some(case) = common.case {
        case.check_shape(a.n())?;
        if !is_in_g(case, a) {
            return Err(Error::InvalidForm(format!("input is not in the {case} group")).into());
        }
    }
    Ok(())
}

fn verify(
    suite: &str,
    common: &Common,
    max_degree: Option<u32>,
    max_coeff: Option<i64>,
    max_terms: Option<usize>,
) -> Outcome {
    unused("--input", common.input.is_some(), "verify")?;
    let defaults = SampleBounds::default();
    let cfg = SuiteConfig {
        seed: common.seed,
        trials: common.trials,
        case: common.case,
        n: common.n,
        ring: common.ring,
        vars: common.vars,
        primes: common.primes.clone(),
        bounds: SampleBounds {
            max_degree: max_degree.unwrap_or(defaults.max_degree),
            max_coeff: max_coeff.unwrap_or(defaults.max_coeff),
            max_terms: max_terms.unwrap_or(defaults.max_terms),
        },
    };
    if !suite_names().contains(&suite) {
        return Err(Failure::Usage(format!(
            "unknown suite `{suite}`; known suites: {}",
            suite_names().join(", ")
        )));
    }
    let mut report = run_suite(suite, &cfg).map_err(|e| Failure::Usage(e.to_string()))?;
    if common.no_timing {
        report.elapsed_ms = None;
    }
    emit(common, &report);
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Unchecked(format!(
            "suite {suite}: {} of {} trials failed",
            report.failures.len(),
            report.trials
        )))
    }
}

fn word_witness(
    target: MatrixG,
    word: &ElemWord<GradedPoly>,
) -> graded_qs::Result<Witness<GradedPoly>> {
    let n = word.n();
    let factors = word
        .gens()
        .iter()
        .map(|g| {
            (
                format!("ge({}, {})", g.i(), g.j()),
                gen_matrix(g, word.ctx(), n),
            )
        })
        .collect();
    Witness::new(target, factors)
}

fn factor(kind: FactorKind, common: &Common, vector: Option<&str>, eps: Option<&Path>) -> Outcome {
    let ring = ring_of(common);
    let out = match kind {
        FactorKind::Transvection => {
            let case = common
                .case
                .ok_or_else(|| Failure::Usage("factor transvection needs --case".into()))?;
            let w = match (vector, &common.input) {
                (Some(v), None) => parse_vector(&ring, v)?,
                (None, Some(path)) => {
                    let entries: Vec<PolyJson> = from_value(read_json(path)?, "vector JSON")?;
                    entries
                        .iter()
                        .map(PolyJson::to_poly)
                        .collect::<graded_qs::Result<_>>()?
                }
                _ => {
                    return Err(Failure::Usage(
                        "give exactly one of --vector and --input".into(),
                    ))
                }
            };
            if let Some(n) = common.n {
                if n != w.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "--n {n} but w has {} entries",
                        w.len()
                    ))
                    .into());
                }
            }
            let ring = w.first().map_or(ring, GradedPoly::ring);
            match eps {
                None => {
                    let word = transvection_word(&ring, case, &w)?;
                    let e1: Vec<GradedPoly> = (0..w.len())
                        .map(|i| if i == 0 { ring.one() } else { ring.zero() })
                        .collect();
                    let target = transvection_matrix(&ring, case, &e1, &w)?;
                    let witness = word_witness(target, &word)?;
                    json!({"word": WordJson::from(&word), "witness": WitnessJson::from(&witness)})
                }
                Some(path) => {
                    let eps = read_word(path, ring)?;
                    let c = transvection_word_conj(&eps, &w)?;
                    json!({
                        "word": WordJson::from(&c.word),
                        "core": WordJson::from(&c.core),
                        "transported": c.transported.iter().map(PolyJson::from).collect::<Vec<_>>(),
                        "witness": WitnessJson::from(&c.witness),
                    })
                }
            }
        }
        FactorKind::Split | FactorKind::Normalize => {
            unused("--vector", vector.is_some(), "factor")?;
            let path = common.input.as_deref().ok_or_else(|| {
                Failure::Usage("this factorization needs --input <word.json>".into())
            })?;
            let word = read_word(path, ring)?;
            if matches!(kind, FactorKind::Split) {
                let split = split_word(&word);
                let witness = word_witness(word_eval(&word), &split)?;
                json!({"word": WordJson::from(&split), "witness": WitnessJson::from(&witness)})
            } else {
                let out = normalize_mod_plus(&word)?;
                let (ctx, n) = (word.ctx(), word.n());
                let mut factors = Vec::new();
                for (k, (conj, core)) in out.pairs.iter().enumerate() {
                    let m = word_eval(conj)
                        .mul(&gen_matrix(core, ctx, n))?
                        .mul(&word_eval(&word_inverse(conj)))?;
                    factors.push((format!("ε{0} g{0} ε{0}^-1", k + 1), m));
                }
                factors.push(("residual".into(), word_eval(&out.residual)));
                let witness = Witness::new(word_eval(&word), factors)?;
                let pairs: Vec<Value> = out
                    .pairs
                    .iter()
                    .map(|(conj, core)| {
                        json!({
                            "conjugator": WordJson::from(conj),
                            "core": GenJson { i: core.i(), j: core.j(), arg: core.arg().into() },
                        })
                    })
                    .collect();
                json!({
                    "pairs": pairs,
                    "residual": WordJson::from(&out.residual),
                    "witness": WitnessJson::from(&witness),
                })
            }
        }
        FactorKind::Commutator => {
            let path = common.input.as_deref().ok_or_else(|| {
                Failure::Usage("factor commutator needs --input <pair.json>".into())
            })?;
            let mut v = read_json(path)?;
            let mut take = |key: &str| -> Result<ElemWord<GradedPoly>, Failure> {
                let wj: WordJson = from_value(v[key].take(), &format!("`{key}` word"))?;
                Ok(wj.to_word(Some(ring))?)
            };
            let (wa, wb) = (take("alpha")?, take("beta")?);
            let zero = Coeff::from_integer(0.into());
            let witness = commutator_factor(
                &word_eval(&wa),
                &word_eval(&wb),
                &word_plus_eval(&wa, &zero),
                &word_plus_eval(&wb, &zero),
            )?;
            serde_json::to_value(WitnessJson::from(&witness)).expect("witness serializes")
        }
    };
    emit(common, &out);
    Ok(())
}

fn patch(common: &Common, matrix: Option<&str>, exps: Option<Vec<u32>>) -> Outcome {
    let primes = common
        .primes
        .clone()
        .ok_or_else(|| Failure::Usage("patch needs --primes".into()))?;
    let ring = ring_of(common);
    let (alpha, word) = match (matrix, &common.input) {
        (Some(text), None) => (parse_matrix(&ring, text)?, None),
        (None, Some(path)) => {
            let v = read_json(path)?;
            if v.get("gens").is_some() {
                let w = from_value::<WordJson>(v, "word JSON")?.to_word(Some(ring))?;
                (word_eval(&w), Some(w))
            } else {
                let m = from_value::<MatrixJson>(v, "matrix JSON")?.to_matrix()?;
                (m, None)
            }
        }
        _ => {
            return Err(Failure::Usage(
                "give exactly one of --matrix and --input".into(),
            ))
        }
    };
    check_shape(common, &alpha)?;
    let ring = *alpha.ctx();
    let l = match exps {
        None => vec![1; primes.len()],
        Some(l) if l.len() == 1 => vec![l[0]; primes.len()],
        Some(l) if l.len() == primes.len() => l,
        Some(l) => {
            return Err(Failure::Usage(format!(
                "--dilation-exponent has {} values for {} primes",
                l.len(),
                primes.len()
            )))
        }
    };
    let s: Vec<Coeff> = primes
        .iter()
        .map(|&p| Coeff::from_integer(p.into()))
        .collect();
    let cd = comaximal_powers(ring.coeffs, &s, &l)?;
    let local_words = match &word {
        Some(w) => Some(
            s.iter()
                .map(|si| {
                    let loc = LocRing::new(ring, si)?;
                    Ok(w.map_args(&loc, |a| loc.element(a.clone(), 0)))
                })
                .collect::<graded_qs::Result<Vec<_>>>()?,
        ),
        None => None,
    };
    let pw = telescoping_patch(&alpha, &cd, local_words.as_deref())?;
    emit(
        common,
        &serde_json::to_value(PatchWitnessJson::from(&pw)).expect("witness serializes"),
    );
    if pw.checked && pw.certificates_hold() {
        Ok(())
    } else {
        Err(Failure::Unchecked("patch witness does not check".into()))
    }
}

fn complete(common: &Common, vector: Option<&str>) -> Outcome {
    let text = vector.ok_or_else(|| Failure::Usage("complete needs --vector".into()))?;
    let inst = match (common.ring, &common.primes) {
        (Some(CoefficientRing::PrimeField(p)), None) => SemilocalInstance::prime_field(p)?,
        (None | Some(CoefficientRing::Rationals), Some(ps)) => {
            SemilocalInstance::localized_integers(ps)?
        }
        _ => {
            return Err(Failure::Usage(
                "complete needs either --ring fp:<p> or --primes <p,...>".into(),
            ))
        }
    };
    let cr = inst.ring().coeffs;
    let v = text
        .split(',')
        .map(|c| {
            CoefficientRing::Rationals
                .parse_coeff(c)
                .and_then(|q| match cr {
                    CoefficientRing::PrimeField(_) => cr.reduce(&q),
                    _ => Ok(q),
                })
        })
        .collect::<graded_qs::Result<Vec<_>>>()?;
    let word = complete_unimodular(&inst, &v)?;
    emit(
        common,
        &serde_json::to_value(WordJson::from(&word)).expect("word serializes"),
    );
    Ok(())
}

fn eval(common: &Common, matrix: Option<&str>, poly: Option<&str>, at: Option<&str>) -> Outcome {
    let ring = ring_of(common);
    let at = at.map(|t| ring.coeffs.parse_coeff(t)).transpose()?;
    let out = match (poly, matrix, &common.input) {
        (Some(text), None, None) => {
            let p = ring.parse(text)?;
            let t = at.ok_or_else(|| Failure::Usage("eval --poly needs --at".into()))?;
            serde_json::to_value(PolyJson::from(&p.plus_eval_coeff(&t)))
        }
        (None, Some(text), None) => {
            let m = parse_matrix(&ring, text)?;
            let t = at.ok_or_else(|| Failure::Usage("eval --matrix needs --at".into()))?;
            serde_json::to_value(MatrixJson::from(&mat_plus_eval(&m, &ring.constant(&t))?))
        }
        (None, None, Some(path)) => {
            let v = read_json(path)?;
            let m = if v.get("gens").is_some() {
                word_eval(&from_value::<WordJson>(v, "word JSON")?.to_word(Some(ring))?)
            } else {
                from_value::<MatrixJson>(v, "matrix JSON")?.to_matrix()?
            };
            let m = match at {
                Some(t) => m.plus_eval(&m.ctx().coeffs.reduce(&t)?),
                None => m,
            };
            serde_json::to_value(MatrixJson::from(&m))
        }
        _ => {
            return Err(Failure::Usage(
                "give exactly one of --poly, --matrix and --input".into(),
            ))
        }
    };
    emit(common, &out.expect("JSON values serialize"));
    Ok(())
}
