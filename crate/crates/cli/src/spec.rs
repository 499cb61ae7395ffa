//! Distribution strings.
//!
//! Fields are separated by `:`; nested specs go in square brackets:
//!
//! ```text
//! poisson:<lambda>[:<tail_eps>]
//! binomial:<n>:<p>
//! bernoulli_sum:<p1>,<p2>,...
//! pmf:<w0>,<w1>,...
//! file:<path>
//! mixture:<alpha>:[<spec>]:[<spec>]
//! convolve:[<spec>]:[<spec>]
//! ```

use std::fmt;
use std::path::PathBuf;

use poincare_core::Pmf;

use crate::error::CliError;

pub const DEFAULT_TAIL_EPS: f64 = 1e-12;
pub const TAIL_EPS_VAR: &str = "POINCARE_TAIL_EPS";

#[derive(Debug, Clone, PartialEq)]
pub enum DistSpec {
    Poisson {
        lambda: f64,
        tail_eps: Option<f64>,
    },
    Binomial {
        n: u64,
        p: f64,
    },
    BernoulliSum(Vec<f64>),
    Weights(Vec<f64>),
    File(PathBuf),
    Mixture {
        alpha: f64,
        left: Box<DistSpec>,
        right: Box<DistSpec>,
    },
    Convolve(Box<DistSpec>, Box<DistSpec>),
}

/// Splits on `:` outside brackets.
fn split_fields(s: &str) -> Result<Vec<&str>, String> {
    let mut fields = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err("unbalanced `]`".into());
                }
            }
            ':' if depth == 0 => {
                fields.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err("unbalanced `[`".into());
    }
    fields.push(&s[start..]);
    Ok(fields)
}

fn nested(field: &str) -> Result<DistSpec, String> {
    let inner = field
        .strip_prefix('[')
        .and_then(|f| f.strip_suffix(']'))
        .ok_or_else(|| format!("nested spec `{field}` must be wrapped in [ ]"))?;
    parse(inner)
}

fn number<T: std::str::FromStr>(field: &str, what: &str) -> Result<T, String> {
    field
        .trim()
        .parse()
        .map_err(|_| format!("bad {what} `{field}`"))
}

fn list(field: &str) -> Result<Vec<f64>, String> {
    field.split(',').map(|f| number(f, "number")).collect()
}

fn parse(s: &str) -> Result<DistSpec, String> {
    let fields = split_fields(s.trim())?;
    let arity = |n: usize| {
        if fields.len() == n + 1 {
            Ok(())
        } else {
            Err(format!(
                "`{}` takes {n} field(s), got {}",
                fields[0],
                fields.len() - 1
            ))
        }
    };
    Ok(match fields[0] {
        "poisson" => {
            if !(2..=3).contains(&fields.len()) {
                return Err("`poisson` takes lambda and an optional tail_eps".into());
            }
            DistSpec::Poisson {
                lambda: number(fields[1], "lambda")?,
                tail_eps: fields.get(2).map(|f| number(f, "tail_eps")).transpose()?,
            }
        }
        "binomial" => {
            arity(2)?;
            DistSpec::Binomial {
                n: number(fields[1], "trial count")?,
                p: number(fields[2], "probability")?,
            }
        }
        "bernoulli_sum" | "bernoulli-sum" => {
            arity(1)?;
            DistSpec::BernoulliSum(list(fields[1])?)
        }
        "pmf" => {
            arity(1)?;
            DistSpec::Weights(list(fields[1])?)
        }
        "file" => {
            // Paths may contain colons.
            let path = s.trim().strip_prefix("file:").unwrap_or_default();
            if path.is_empty() {
                return Err("`file` needs a path".into());
            }
            DistSpec::File(PathBuf::from(path))
        }
        "mixture" => {
            arity(3)?;
            DistSpec::Mixture {
                alpha: number(fields[1], "alpha")?,
                left: Box::new(nested(fields[2])?),
                right: Box::new(nested(fields[3])?),
            }
        }
        "convolve" => {
            arity(2)?;
            DistSpec::Convolve(Box::new(nested(fields[1])?), Box::new(nested(fields[2])?))
        }
        other => return Err(format!("unknown distribution `{other}`")),
    })
}

impl std::str::FromStr for DistSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        parse(s).map_err(|message| CliError::Spec {
            spec: s.to_string(),
            message,
        })
    }
}

impl fmt::Display for DistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[f64]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        match self {
            DistSpec::Poisson {
                lambda,
                tail_eps: None,
            } => write!(f, "poisson:{lambda}"),
            DistSpec::Poisson {
                lambda,
                tail_eps: Some(e),
            } => write!(f, "poisson:{lambda}:{e:e}"),
            DistSpec::Binomial { n, p } => write!(f, "binomial:{n}:{p}"),
            DistSpec::BernoulliSum(ps) => write!(f, "bernoulli_sum:{}", join(ps)),
            DistSpec::Weights(ws) => write!(f, "pmf:{}", join(ws)),
            DistSpec::File(path) => write!(f, "file:{}", path.display()),
            DistSpec::Mixture { alpha, left, right } => {
                write!(f, "mixture:{alpha}:[{left}]:[{right}]")
            }
            DistSpec::Convolve(a, b) => write!(f, "convolve:[{a}]:[{b}]"),
        }
    }
}

/// Tail truncation for Poisson specs that do not set one.
pub fn default_tail_eps() -> Result<f64, CliError> {
    match std::env::var(TAIL_EPS_VAR) {
        Ok(v) => {
            let eps: f64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Env(format!("not a number: `{v}`")))?;
            if eps > 0.0 && eps < 1.0 {
                Ok(eps)
            } else {
                Err(CliError::Env(format!("must lie in (0, 1), got {eps}")))
            }
        }
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_TAIL_EPS),
        Err(e) => Err(CliError::Env(e.to_string())),
    }
}

impl DistSpec {
    pub fn build(&self, tail_eps: f64) -> Result<Pmf, CliError> {
        Ok(match self {
            DistSpec::Poisson {
                lambda,
                tail_eps: eps,
            } => Pmf::poisson(*lambda, eps.unwrap_or(tail_eps))?,
            DistSpec::Binomial { n, p } => Pmf::binomial(*n, *p)?,
            DistSpec::BernoulliSum(ps) => Pmf::bernoulli_sum(ps)?,
            DistSpec::Weights(ws) => Pmf::new(ws.clone())?,
            DistSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                Pmf::from_text(&text)?
            }
            DistSpec::Mixture { alpha, left, right } => {
                Pmf::mixture(*alpha, &left.build(tail_eps)?, &right.build(tail_eps)?)?
            }
            DistSpec::Convolve(a, b) => a.build(tail_eps)?.convolve(&b.build(tail_eps)?),
        })
    }

    /// Direct operands when this is a convolution.
    pub fn convolution_parts(&self) -> Option<[&DistSpec; 2]> {
        match self {
            DistSpec::Convolve(a, b) => Some([a, b]),
            _ => None,
        }
    }
}
