//! Invariant suite for one graph, plus oracle comparison on small graphs.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use plumbing_core::{
    analyze, blow_up_edge, blow_up_generic, build_form, classify, geometric_genus,
    in_analytic_semigroup, laufer_zmin, min_chi, multiplicity_generic, star_condition, ClassTag,
    Constraint, Cycle, IntersectionForm, RatCycle,
};
use plumbing_oracle::{brute_zmin, oracle_min_chi, oracle_semigroup};

use crate::error::CliError;
use crate::report::graph_name;
use crate::Output;

/// Graphs up to this size are also compared against the oracle.
pub const ORACLE_MAX_VERTICES: usize = 8;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn record(&mut self, name: &str, outcome: Result<bool, CliError>, detail: String) {
        let (passed, detail) = match outcome {
            Ok(p) => (p, detail),
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

struct Summary {
    min_chi: num_rational::BigRational,
    p_g: BigInt,
    mult: Option<BigInt>,
}

fn summary(f: &IntersectionForm) -> Result<Summary, CliError> {
    Ok(Summary {
        min_chi: min_chi(f, &RatCycle::zero(f.len()), &Constraint::unbounded())?.min_value,
        p_g: geometric_genus(f)?,
        mult: multiplicity_generic(f)?.multiplicity,
    })
}

fn to_i64s(c: &Cycle) -> Option<Vec<i64>> {
    c.coeffs().iter().map(|x| x.to_i64()).collect()
}

fn oracle_agrees(f: &IntersectionForm) -> Result<bool, CliError> {
    let n = f.len();
    let zero = RatCycle::zero(n);
    let oracle_err = |e: plumbing_oracle::OracleError| CliError::SelfCheck(format!("oracle: {e}"));
    for c in [
        Constraint::unbounded(),
        Constraint::nonnegative(n),
        Constraint::positive(n),
    ] {
        let fast = min_chi(f, &zero, &c)?;
        let lower = c.lower.as_ref().and_then(to_i64s);
        let slow =
            oracle_min_chi(f, &zero, lower.as_deref(), None, c.nonzero).map_err(oracle_err)?;
        if fast.min_value != slow.min_value || fast.minimizers != slow.minimizers {
            return Ok(false);
        }
    }
    let z = laufer_zmin(f);
    if brute_zmin(f, &z).map_err(oracle_err)? != z {
        return Ok(false);
    }
    let mut classes = vec![z.to_rat(), f.canonical_cycle().clone()];
    classes.extend((0..n).map(|i| f.dual_cycle_at(i)));
    for x in &classes {
        if in_analytic_semigroup(f, x)? != oracle_semigroup(f, x).map_err(oracle_err)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn run(f: &IntersectionForm) -> Result<(Output, bool), CliError> {
    let mut s = Suite { checks: Vec::new() };
    let g = f.graph().clone();

    s.record(
        "analyze consistency",
        analyze(f).map(|_| true).map_err(Into::into),
        "genus branches, Z_min <= Z_max, chi(Z_max) = min chi".into(),
    );

    let base = summary(f);
    let report = multiplicity_generic(f);
    s.record(
        "multiplicity formula",
        report.as_ref().map_err(|e| e.clone().into()).map(|r| {
            let floor = r.wagreich_floor.to_integer();
            r.multiplicity
                .as_ref()
                .is_some_and(|m| m >= &floor && m - &floor == r.correction())
        }),
        "mult >= -Z_max^2 with the base-point correction".into(),
    );

    let rational = classify(f).map(|c| c.tag == ClassTag::Rational);
    if let Ok(true) = rational {
        let z = laufer_zmin(f).to_rat();
        let outcome = (|| -> Result<bool, CliError> {
            for (i, &v) in f.ids().iter().enumerate() {
                if f.pairing_with_vertex(&z, i).is_negative() && star_condition(f, &z, v)?.1 {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        s.record(
            "rational base-point freeness",
            outcome,
            "(*_v) fails at every vertex".into(),
        );
    }

    let zk = f.canonical_cycle();
    let symmetric = (0..f.len()).all(|i| {
        let x = f.dual_cycle_at(i);
        f.chi(&x) == f.chi(&(zk - &x))
    });
    s.record(
        "chi symmetry",
        Ok(symmetric),
        "chi(l') = chi(Z_K - l') on E*_v".into(),
    );

    match &base {
        Err(e) => s.record(
            "blow-up invariance",
            Err(CliError::SelfCheck(e.to_string())),
            String::new(),
        ),
        Ok(base) => {
            let outcome = (|| -> Result<bool, CliError> {
                for &v in f.ids() {
                    let b = blow_up_generic(&g, v)?;
                    let other = summary(&build_form(&b.graph)?)?;
                    if other.min_chi != base.min_chi
                        || other.p_g != base.p_g
                        || other.mult != base.mult
                    {
                        return Ok(false);
                    }
                }
                for &(u, w) in g.edges() {
                    let b = blow_up_edge(&g, u, w)?;
                    let fb = build_form(&b.graph)?;
                    let m = min_chi(&fb, &RatCycle::zero(fb.len()), &Constraint::unbounded())?;
                    if m.min_value != base.min_chi || geometric_genus(&fb)? != base.p_g {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            s.record(
                "blow-up invariance",
                outcome,
                "min chi, p_g, mult under generic and edge blow-ups".into(),
            );
        }
    }

    if f.len() <= ORACLE_MAX_VERTICES {
        s.record(
            "oracle agreement",
            oracle_agrees(f),
            "min chi, minimizers, Z_min, semigroup membership".into(),
        );
    }

    let passed = s.checks.iter().all(|c| c.passed);
    let mut text = format!("self-check {}\n", graph_name(f));
    for c in &s.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        text += &format!("{mark}  {}: {}\n", c.name, c.detail);
    }
    #[derive(Serialize)]
    struct Json<'a> {
        graph: String,
        passed: bool,
        checks: &'a [Check],
    }
    let json = serde_json::to_value(Json {
        graph: graph_name(f),
        passed,
        checks: &s.checks,
    })
    .expect("json");
    Ok((Output { text, json }, passed))
}
