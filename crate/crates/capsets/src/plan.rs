//! A small plan language for towers of constructions.
//!
//! Theorem-scale cap sets cannot be materialised, but their exact sizes
//! can: every step of the construction multiplies dimensions and maps
//! sizes through closed-form expressions. A [`BuildPlan`] records a base
//! collection and a sequence of steps; [`plan_count`] folds it into an
//! exact dimension and cardinality without building anything.
//!
//! The file format is line-oriented:
//!
//! ```text
//! base <n> <a0> <a1>
//! rstep <m>
//! final <m> <w>
//! final-meta <size-expr> <m> <w>
//! ```
//!
//! with `#` comments and blank lines ignored. `base` describes an
//! extendable collection of dimension n with |A0| = a0 and
//! |A1| = |A2| = a1. Each `rstep m` applies a recursive extension along
//! the length-m chain set. The optional last line applies a final
//! extended product along a complete constant-weight admissible set —
//! `final m w` for C(m,w) pattern vectors, or `final-meta` when the
//! pattern family is itself constructed (the expression gives its exact
//! cardinality, e.g. `142*37*C(11,7)^141`).

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// One multiplicand of a size expression.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SizeFactor {
    /// A literal nonnegative integer.
    Int(BigUint),
    /// A binomial coefficient C(a, b).
    Binomial(u64, u64),
}

impl SizeFactor {
    fn value(&self) -> BigUint {
        match self {
            SizeFactor::Int(v) => v.clone(),
            SizeFactor::Binomial(a, b) => crate::bounds::binomial(*a, *b),
        }
    }
}

/// A product of factors, each optionally raised to a power.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SizeExpr {
    terms: Vec<(SizeFactor, u32)>,
}

impl SizeExpr {
    /// Exact value of the expression.
    pub fn value(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (factor, exp) in &self.terms {
            acc *= factor.value().pow(*exp);
        }
        acc
    }
}

impl fmt::Display for SizeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (factor, exp)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            match factor {
                SizeFactor::Int(v) => write!(f, "{v}")?,
                SizeFactor::Binomial(a, b) => write!(f, "C({a},{b})")?,
            }
            if *exp != 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for SizeExpr {
    type Err = Error;

    /// Grammar: `expr := term ('*' term)*`,
    /// `term := factor ('^' uint)?`, `factor := uint | 'C(' uint ',' uint ')'`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidPlan(format!("size expression `{s}`: {msg}"));
        let mut terms = Vec::new();
        for raw in s.split('*') {
            let term = raw.trim();
            let (factor_str, exp) = match term.split_once('^') {
                Some((f, e)) => {
                    let exp: u32 = e
                        .trim()
                        .parse()
                        .map_err(|_| bad("exponent is not a small integer"))?;
                    (f.trim(), exp)
                }
                None => (term, 1),
            };
            let factor = if let Some(args) = factor_str
                .strip_prefix("C(")
                .and_then(|r| r.strip_suffix(')'))
            {
                let (a, b) = args
                    .split_once(',')
                    .ok_or_else(|| bad("C(..) needs two arguments"))?;
                let a: u64 = a.trim().parse().map_err(|_| bad("bad binomial argument"))?;
                let b: u64 = b.trim().parse().map_err(|_| bad("bad binomial argument"))?;
                if b > a {
                    return Err(bad("binomial C(a,b) needs b <= a"));
                }
                SizeFactor::Binomial(a, b)
            } else {
                let v = BigUint::parse_bytes(factor_str.as_bytes(), 10)
                    .ok_or_else(|| bad("factor is neither an integer nor C(a,b)"))?;
                SizeFactor::Int(v)
            };
            terms.push((factor, exp));
        }
        if terms.is_empty() {
            return Err(bad("empty expression"));
        }
        Ok(SizeExpr { terms })
    }
}

/// One step of a plan.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PlanStep {
    /// Recursive extension along the chain set of length m.
    Recursive { m: usize },
    /// Final extended product along a complete constant-weight set with
    /// C(m,w) patterns.
    Final { m: usize, w: usize },
    /// Final extended product along a pattern family of explicitly given
    /// cardinality, length m and uniform weight w.
    FinalMeta { expr: SizeExpr, m: usize, w: usize },
}

/// A parsed and validated construction plan.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BuildPlan {
    /// Base dimension n.
    pub base_dim: usize,
    /// |A0| of the base collection.
    pub base_a0: u64,
    /// |A1| = |A2| of the base collection.
    pub base_a1: u64,
    /// Steps in application order.
    pub steps: Vec<PlanStep>,
}

impl BuildPlan {
    /// Parses the line-oriented plan format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut base: Option<(usize, u64, u64)> = None;
        let mut steps: Vec<PlanStep> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            let err = |msg: String| Error::Parse { line: lineno, msg };
            let mut parts = line.split_whitespace();
            let keyword = parts.next().expect("nonempty line");
            let args: Vec<&str> = parts.collect();
            match keyword {
                "base" => {
                    if base.is_some() {
                        return Err(err("duplicate base line".into()));
                    }
                    if !steps.is_empty() {
                        return Err(err("base must come first".into()));
                    }
                    if args.len() != 3 {
                        return Err(err("base needs <n> <a0> <a1>".into()));
                    }
                    let n = args[0]
                        .parse()
                        .map_err(|_| err("bad base dimension".into()))?;
                    let a0 = args[1].parse().map_err(|_| err("bad base a0".into()))?;
                    let a1 = args[2].parse().map_err(|_| err("bad base a1".into()))?;
                    base = Some((n, a0, a1));
                }
                "rstep" => {
                    if base.is_none() {
                        return Err(err("rstep before base".into()));
                    }
                    if args.len() != 1 {
                        return Err(err("rstep needs <m>".into()));
                    }
                    let m: usize = args[0].parse().map_err(|_| err("bad rstep m".into()))?;
                    steps.push(PlanStep::Recursive { m });
                }
                "final" => {
                    if base.is_none() {
                        return Err(err("final before base".into()));
                    }
                    if args.len() != 2 {
                        return Err(err("final needs <m> <w>".into()));
                    }
                    let m: usize = args[0].parse().map_err(|_| err("bad final m".into()))?;
                    let w: usize = args[1].parse().map_err(|_| err("bad final w".into()))?;
                    steps.push(PlanStep::Final { m, w });
                }
                "final-meta" => {
                    if base.is_none() {
                        return Err(err("final-meta before base".into()));
                    }
                    if args.len() != 3 {
                        return Err(err("final-meta needs <size-expr> <m> <w>".into()));
                    }
                    let expr: SizeExpr = args[0].parse()?;
                    let m: usize = args[1]
                        .parse()
                        .map_err(|_| err("bad final-meta m".into()))?;
                    let w: usize = args[2]
                        .parse()
                        .map_err(|_| err("bad final-meta w".into()))?;
                    steps.push(PlanStep::FinalMeta { expr, m, w });
                }
                other => {
                    return Err(err(format!("unknown plan keyword `{other}`")));
                }
            }
        }
        let (base_dim, base_a0, base_a1) =
            base.ok_or_else(|| Error::InvalidPlan("missing base line".into()))?;
        let plan = BuildPlan {
            base_dim,
            base_a0,
            base_a1,
            steps,
        };
        plan.validate()?;
        Ok(plan)
    }

    /// Reads and parses a plan file.
    pub fn read_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Structural validation: positive base, rstep m >= 2, final steps
    /// well-formed and last.
    pub fn validate(&self) -> Result<()> {
        if self.base_dim == 0 || self.base_a0 == 0 || self.base_a1 == 0 {
            return Err(Error::InvalidPlan(
                "base dimension and sizes must be positive".into(),
            ));
        }
        for (i, step) in self.steps.iter().enumerate() {
            let is_last = i + 1 == self.steps.len();
            match step {
                PlanStep::Recursive { m } => {
                    if *m < 2 {
                        return Err(Error::InvalidPlan(format!("rstep needs m >= 2, got {m}")));
                    }
                }
                PlanStep::Final { m, w } => {
                    if !is_last {
                        return Err(Error::InvalidPlan(
                            "final step must be the last step".into(),
                        ));
                    }
                    if *m == 0 || *w > *m {
                        return Err(Error::InvalidPlan(format!(
                            "final needs 1 <= m and w <= m, got m={m}, w={w}"
                        )));
                    }
                }
                PlanStep::FinalMeta { m, w, .. } => {
                    if !is_last {
                        return Err(Error::InvalidPlan(
                            "final-meta step must be the last step".into(),
                        ));
                    }
                    if *m == 0 || *w > *m {
                        return Err(Error::InvalidPlan(format!(
                            "final-meta needs 1 <= m and w <= m, got m={m}, w={w}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for BuildPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "base {} {} {}",
            self.base_dim, self.base_a0, self.base_a1
        )?;
        for step in &self.steps {
            match step {
                PlanStep::Recursive { m } => writeln!(f, "rstep {m}")?,
                PlanStep::Final { m, w } => writeln!(f, "final {m} {w}")?,
                PlanStep::FinalMeta { expr, m, w } => writeln!(f, "final-meta {expr} {m} {w}")?,
            }
        }
        Ok(())
    }
}

/// Folds a plan into the exact dimension and cardinality of the cap set
/// it denotes, with no materialisation.
///
/// State is (n, a0, a1) for the current collection. A recursive step
/// along the length-m chain maps it to (n·m, m·a1^{m-1}·a0, a1^m); a
/// final step with pattern count P, length m and weight w produces the
/// cap set of size P·a0^{m-w}·a1^w at dimension n·m. A plan with no
/// final step denotes the current A0.
pub fn plan_count(plan: &BuildPlan) -> Result<(usize, BigUint)> {
    plan.validate()?;
    let mut n = plan.base_dim;
    let mut a0 = BigUint::from(plan.base_a0);
    let mut a1 = BigUint::from(plan.base_a1);
    for step in &plan.steps {
        match step {
            PlanStep::Recursive { m } => {
                let mu = *m as u32;
                let new_a0 = BigUint::from(*m) * a1.pow(mu - 1) * &a0;
                a1 = a1.pow(mu);
                a0 = new_a0;
                n *= m;
            }
            PlanStep::Final { m, w } => {
                let patterns = crate::bounds::binomial(*m as u64, *w as u64);
                let size = patterns * a0.pow((*m - *w) as u32) * a1.pow(*w as u32);
                return Ok((n * m, size));
            }
            PlanStep::FinalMeta { expr, m, w } => {
                let size = expr.value() * a0.pow((*m - *w) as u32) * a1.pow(*w as u32);
                return Ok((n * m, size));
            }
        }
    }
    Ok((n, a0))
}
