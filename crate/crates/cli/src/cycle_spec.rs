//! Cycle specifications on the command line.
//!
//! Either a comma separated list of integer coefficients in ascending vertex
//! id order (`1,2,0`), or a sum of terms `k*ATOM` with `k ≥ 0` and `ATOM` one
//! of `Estar(v3)`, `E(v3)`, `E` (the reduced cycle), `Z_K`, `Z_min`, `Z_max`.

use num_bigint::BigInt;
use num_rational::BigRational;

use plumbing_core::{laufer_zmin, maximal_ideal_cycle, Cycle, IntersectionForm, RatCycle};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    DualVertex(i64),
    Vertex(i64),
    Reduced,
    Canonical,
    Fundamental,
    MaximalIdeal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleSpec {
    Coefficients(Vec<i64>),
    Sum(Vec<(u64, Atom)>),
}

fn bad(spec: &str, why: impl std::fmt::Display) -> CliError {
    CliError::Argument(format!("cycle spec {spec:?}: {why}"))
}

fn parse_vertex(spec: &str, inner: &str) -> Result<i64, CliError> {
    let digits = inner.strip_prefix('v').unwrap_or(inner);
    digits
        .parse()
        .map_err(|_| bad(spec, format!("bad vertex {inner:?}")))
}

fn parse_atom(spec: &str, text: &str) -> Result<Atom, CliError> {
    let call = |name: &str| {
        text.strip_prefix(name)
            .and_then(|r| r.strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
    };
    if let Some(inner) = call("Estar") {
        return Ok(Atom::DualVertex(parse_vertex(spec, inner)?));
    }
    if let Some(inner) = call("E") {
        return Ok(Atom::Vertex(parse_vertex(spec, inner)?));
    }
    match text {
        "E" => Ok(Atom::Reduced),
        "Z_K" => Ok(Atom::Canonical),
        "Z_min" => Ok(Atom::Fundamental),
        "Z_max" => Ok(Atom::MaximalIdeal),
        _ => Err(bad(spec, format!("unknown term {text:?}"))),
    }
}

pub fn parse(spec: &str) -> Result<CycleSpec, CliError> {
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad(spec, "empty"));
    }
    let looks_numeric = compact
        .chars()
        .all(|c| c.is_ascii_digit() || c == ',' || c == '-');
    if looks_numeric {
        let coeffs = compact
            .split(',')
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| bad(spec, format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(CycleSpec::Coefficients(coeffs));
    }
    let mut terms = Vec::new();
    for term in compact.split('+') {
        let (k, atom) = match term.split_once('*') {
            Some((k, atom)) => (
                k.parse::<u64>()
                    .map_err(|_| bad(spec, format!("bad multiplier {k:?}")))?,
                atom,
            ),
            None => (1, term),
        };
        terms.push((k, parse_atom(spec, atom)?));
    }
    Ok(CycleSpec::Sum(terms))
}

impl CycleSpec {
    pub fn evaluate(&self, f: &IntersectionForm) -> Result<RatCycle, CliError> {
        match self {
            CycleSpec::Coefficients(c) => {
                if c.len() != f.len() {
                    return Err(CliError::Argument(format!(
                        "expected {} coefficients, found {}",
                        f.len(),
                        c.len()
                    )));
                }
                Ok(Cycle::from_i64s(c).to_rat())
            }
            CycleSpec::Sum(terms) => {
                let mut out = RatCycle::zero(f.len());
                for (k, atom) in terms {
                    let x = match atom {
                        Atom::DualVertex(v) => f.dual_cycle(*v)?,
                        Atom::Vertex(v) => f.vertex_cycle(*v)?.to_rat(),
                        Atom::Reduced => Cycle::reduced(f.len()).to_rat(),
                        Atom::Canonical => f.canonical_cycle().clone(),
                        Atom::Fundamental => laufer_zmin(f).to_rat(),
                        Atom::MaximalIdeal => maximal_ideal_cycle(f)?.cycle.to_rat(),
                    };
                    let k = BigRational::from_integer(BigInt::from(*k));
                    out = &out + &x.scale(&k);
                }
                Ok(out)
            }
        }
    }

    pub fn evaluate_integral(&self, f: &IntersectionForm) -> Result<Cycle, CliError> {
        self.evaluate(f)?
            .to_cycle()
            .ok_or_else(|| CliError::Argument("cycle is not integral".into()))
    }
}
