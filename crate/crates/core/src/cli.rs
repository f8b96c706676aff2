//! Command implementations behind the `ortho-lattice` binary.
//!
//! Each `run_*` function takes already-read input and returns an [`Outcome`]
//! so the binary stays a thin shell and the commands can be tested in-process.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::json;

use crate::error::Error;
use crate::exact_linalg::{FieldOrder, IntMatrix};
use crate::exec::Exec;
use crate::orthogonality::cvp::dist_sq;
use crate::orthogonality::{
    brute_force_orthogonal, cvp_exhaustive, cvp_round, decide_with, gen_instance, InstanceSpec,
    Verdict, CVP_EXHAUSTIVE_LIMIT,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_ORTHOGONAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable holding the worker-thread hint.
pub const THREADS_ENV: &str = "ORTHO_LATTICE_THREADS";

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CliError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lattice(#[from] Error),
}

fn parse_err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Basis file: a `q n` header, `n` rows of `n` integers, and an optional
/// `target:` line of `n` rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFile {
    pub q: FieldOrder,
    pub basis: IntMatrix,
    pub target: Option<Vec<BigRational>>,
}

/// Parses `p/q` (with `q > 0`) or a plain integer.
pub fn parse_rational(tok: &str) -> Option<BigRational> {
    match tok.split_once('/') {
        None => BigInt::from_str(tok).ok().map(BigRational::from_integer),
        Some((p, q)) => {
            let p = BigInt::from_str(p).ok()?;
            let q = BigInt::from_str(q).ok()?;
            q.is_positive().then(|| BigRational::new(p, q))
        }
    }
}

pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl FromStr for MatrixFile {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        let [q, n] = h[..] else {
            return Err(parse_err(hline, "header must be `q n`"));
        };
        let q: u64 = q
            .parse()
            .map_err(|_| parse_err(hline, format!("bad q `{q}`")))?;
        let q = FieldOrder::from_q(q).map_err(|e| parse_err(hline, e.to_string()))?;
        let n: usize = n
            .parse()
            .map_err(|_| parse_err(hline, format!("bad n `{n}`")))?;
        if n == 0 {
            return Err(parse_err(hline, "n must be at least 1"));
        }

        let mut rows = Vec::with_capacity(n);
        let mut target = None;
        for (line, text) in lines {
            if let Some(rest) = text.strip_prefix("target:") {
                if target.is_some() {
                    return Err(parse_err(line, "duplicate target line"));
                }
                let t = rest
                    .split_whitespace()
                    .map(|tok| {
                        parse_rational(tok)
                            .ok_or_else(|| parse_err(line, format!("bad rational `{tok}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if t.len() != n {
                    return Err(parse_err(
                        line,
                        format!("target has {} entries, expected {n}", t.len()),
                    ));
                }
                target = Some(t);
                continue;
            }
            if target.is_some() {
                return Err(parse_err(line, "nothing may follow the target line"));
            }
            if rows.len() == n {
                return Err(parse_err(line, format!("more than {n} rows")));
            }
            let row = text
                .split_whitespace()
                .map(|tok| {
                    BigInt::from_str(tok)
                        .map_err(|_| parse_err(line, format!("bad integer `{tok}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != n {
                return Err(parse_err(
                    line,
                    format!("row has {} entries, expected {n}", row.len()),
                ));
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(parse_err(
                0,
                format!("expected {n} rows, found {}", rows.len()),
            ));
        }
        let basis = IntMatrix::try_from_rows(rows)?;
        Ok(MatrixFile { q, basis, target })
    }
}

impl fmt::Display for MatrixFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.q.q(), self.basis.rows())?;
        write!(f, "{}", self.basis)?;
        if let Some(t) = &self.target {
            let toks: Vec<String> = t.iter().map(format_rational).collect();
            writeln!(f, "target: {}", toks.join(" "))?;
        }
        Ok(())
    }
}

/// Parses `orthogonal` or `code:k`.
pub fn parse_kind(s: &str) -> Result<InstanceSpec, CliError> {
    if s == "orthogonal" {
        return Ok(InstanceSpec::Orthogonal);
    }
    s.strip_prefix("code:")
        .and_then(|k| k.parse().ok())
        .map(InstanceSpec::RandomCode)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "unknown kind `{s}`; expected `orthogonal` or `code:k`"
            ))
        })
}

/// Thread count from [`THREADS_ENV`]; unset means 1.
pub fn threads_from_env() -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(1),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t >= 1)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "{THREADS_ENV} must be a positive integer, got `{v}`"
                ))
            }),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(e: impl fmt::Display) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

impl From<CliError> for Outcome {
    fn from(e: CliError) -> Self {
        Outcome::input_error(e)
    }
}

fn rows_json(b: &IntMatrix) -> serde_json::Value {
    let rows: Vec<Vec<serde_json::Value>> = (0..b.rows())
        .map(|i| {
            b.row(i)
                .iter()
                .map(|x| json!(i64::try_from(x).expect("orthogonal basis entries are at most q")))
                .collect()
        })
        .collect();
    json!(rows)
}

fn report(v: &Verdict, q: FieldOrder, as_json: bool) -> String {
    match (v, as_json) {
        (Verdict::NotOrthogonal, false) => "NOT_ORTHOGONAL\n".into(),
        (Verdict::NotOrthogonal, true) => {
            format!(
                "{}\n",
                json!({ "verdict": "NOT_ORTHOGONAL", "basis": null, "components": [] })
            )
        }
        (
            Verdict::Orthogonal {
                basis,
                decomposition,
            },
            false,
        ) => {
            let mut out = format!("ORTHOGONAL\n{}components:\n", basis.basis());
            for c in &decomposition.components {
                let idx: Vec<String> = c.coords.iter().map(|j| (j + 1).to_string()).collect();
                out += &format!("{} {}\n", c.kind.label(q), idx.join(" "));
            }
            out
        }
        (
            Verdict::Orthogonal {
                basis,
                decomposition,
            },
            true,
        ) => {
            let comps: Vec<_> = decomposition
                .components
                .iter()
                .map(|c| {
                    let idx: Vec<usize> = c.coords.iter().map(|j| j + 1).collect();
                    json!({ "kind": c.kind.label(q), "coords": idx })
                })
                .collect();
            let doc = json!({ "verdict": "ORTHOGONAL", "basis": rows_json(basis.basis()), "components": comps });
            format!("{doc}\n")
        }
    }
}

/// `decide`: exit 0 when orthogonal, 1 when not, 2 on bad input.
pub fn run_decide(input: &str, q_override: Option<u64>, as_json: bool, exec: Exec) -> Outcome {
    let file = match input.parse::<MatrixFile>() {
        Ok(f) => f,
        Err(e) => return e.into(),
    };
    let q = match q_override.map(FieldOrder::from_q).transpose() {
        Ok(q) => q.unwrap_or(file.q),
        Err(e) => return Outcome::input_error(e),
    };
    match decide_with(&file.basis, q, exec) {
        Ok(v) => {
            let code = if v.is_orthogonal() {
                EXIT_OK
            } else {
                EXIT_NOT_ORTHOGONAL
            };
            Outcome::ok(code, report(&v, q, as_json))
        }
        Err(e @ Error::InternalVerificationFailure(_)) => Outcome {
            code: EXIT_INTERNAL,
            stdout: String::new(),
            stderr: format!("internal error: {e}\n"),
        },
        Err(e) => Outcome::input_error(e),
    }
}

/// `gen`: a seeded instance in [`MatrixFile`] format.
pub fn run_gen(q: u64, n: usize, seed: u64, kind: &str) -> Outcome {
    let run = || -> Result<String, CliError> {
        let q = FieldOrder::from_q(q)?;
        let spec = parse_kind(kind)?;
        let basis = gen_instance(q, n, seed, spec)?;
        Ok(MatrixFile {
            q,
            basis,
            target: None,
        }
        .to_string())
    };
    match run() {
        Ok(s) => Outcome::ok(EXIT_OK, s),
        Err(e) => e.into(),
    }
}

/// `oracle`: brute-force search, `n ≤ 8`.
pub fn run_oracle(input: &str) -> Outcome {
    let run = || -> Result<Outcome, CliError> {
        let file: MatrixFile = input.parse()?;
        Ok(match brute_force_orthogonal(&file.basis, file.q)? {
            Some(b) => Outcome::ok(EXIT_OK, format!("ORTHOGONAL\n{}", b.basis())),
            None => Outcome::ok(EXIT_NOT_ORTHOGONAL, "NOT_ORTHOGONAL\n".into()),
        })
    };
    run().unwrap_or_else(Outcome::from)
}

/// `cvp`: rounding against an orthogonal basis when one exists, exhaustive
/// search for `n ≤ 6` otherwise.
pub fn run_cvp(input: &str, exec: Exec) -> Outcome {
    let run = || -> Result<String, CliError> {
        let file: MatrixFile = input.parse()?;
        let t = file
            .target
            .ok_or_else(|| CliError::Usage("file has no target line".into()))?;
        let v = match decide_with(&file.basis, file.q, exec)? {
            Verdict::Orthogonal { basis, .. } => cvp_round(&basis, &t),
            Verdict::NotOrthogonal if file.basis.rows() <= CVP_EXHAUSTIVE_LIMIT => cvp_exhaustive(&file.basis, &t)?,
            Verdict::NotOrthogonal => {
                return Err(CliError::Usage(format!(
                    "lattice is not orthogonal and n = {} exceeds the exhaustive limit {CVP_EXHAUSTIVE_LIMIT}",
                    file.basis.rows()
                )))
            }
        };
        let d = dist_sq(&v, &t);
        let toks: Vec<String> = v.iter().map(BigInt::to_string).collect();
        Ok(format!(
            "vector: {}\ndist2: {}\n",
            toks.join(" "),
            format_rational(&d)
        ))
    };
    match run() {
        Ok(s) => Outcome::ok(EXIT_OK, s),
        Err(e) => e.into(),
    }
}
