//! Base points of natural line bundles `O(-l')` on a generic resolution,
//! their `A_t` types, and the multiplicity formula at the maximal ideal
//! cycle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cycle::{Cycle, RatCycle};
use crate::error::{Error, Result};
use crate::form::IntersectionForm;
use crate::invariants::{
    classify, in_analytic_semigroup, maximal_ideal_cycle, minimally_elliptic_cycle, ClassTag,
};
use crate::lattice_opt::{
    laufer_zmin, min_chi, minimizer_join, minimizer_meet, ChiMinResult, Constraint,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexBaseData {
    pub vertex: i64,
    /// `(l', E_v)`.
    pub pairing: BigRational,
    /// `min_{l ≥ E_v} χ(l' + l) - χ(l')`.
    pub d_v: BigRational,
    pub star: bool,
    /// Number of base points on `E_v`.
    pub count: BigInt,
    /// `E_v`-coefficient of `l'`.
    pub m_v: BigRational,
    /// `E_v`-coefficient of `s_max`; set when `star`.
    pub m_v_plus: Option<BigRational>,
    /// `m_v⁺ - m_v`; set when `star`.
    pub t: Option<BigInt>,
    /// Least `l ≥ E_v` with `χ(l' + l) = χ(l') + 1`.
    pub m_min: Option<Cycle>,
    /// Largest `l' + l` with `l ≥ E_v`, `χ(l' + l) = χ(l') + 1`.
    pub s_max: Option<RatCycle>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePointReport {
    pub l: RatCycle,
    /// Vertices with `(l', E_v) < 0`; empty for rational graphs in release
    /// builds.
    pub per_vertex: Vec<VertexBaseData>,
    pub total_base_points: BigInt,
    /// `mult(X, o)`; set only when `l'` is the maximal ideal cycle.
    pub multiplicity: Option<BigInt>,
    /// `-(l')²`.
    pub wagreich_floor: BigRational,
}

impl BasePointReport {
    /// `Σ_v t(v) · count(v)`.
    pub fn correction(&self) -> BigInt {
        self.per_vertex
            .iter()
            .filter_map(|d| d.t.as_ref().map(|t| t * &d.count))
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distinctness {
    ExpectedDistinct,
    PossiblyCommon,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctCheck {
    pub verdict: Distinctness,
    /// `m(l'₁) = m(l'₂)` at the vertex.
    pub same_minimal_cycle: bool,
    pub m_first: Cycle,
    pub m_second: Cycle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticClaims {
    pub c: Cycle,
    pub c_squared: BigInt,
    pub z_max_is_canonical: bool,
    pub has_base_point: bool,
}

impl EllipticClaims {
    /// `Z_max = Z_K`, and a base point exists exactly when `C² = -1`.
    pub fn hold(&self) -> bool {
        self.z_max_is_canonical && self.has_base_point == (self.c_squared == -BigInt::one())
    }
}

fn check_semigroup(f: &IntersectionForm, l: &RatCycle) -> Result<()> {
    if in_analytic_semigroup(f, l)? {
        Ok(())
    } else {
        Err(Error::NotInSemigroup)
    }
}

fn star_search(
    f: &IntersectionForm,
    l: &RatCycle,
    i: usize,
) -> Result<(BigRational, ChiMinResult)> {
    let r = min_chi(f, l, &Constraint::at_least_vertex(f.len(), i))?;
    Ok((&r.min_value - f.chi(l), r))
}

/// `d_v = min_{l ≥ E_v} χ(l' + l) - χ(l')` and whether `(*_v)` holds, i.e.
/// `d_v = 1`.
pub fn star_condition(f: &IntersectionForm, l: &RatCycle, v: i64) -> Result<(BigRational, bool)> {
    let i = f.index_of(v)?;
    check_semigroup(f, l)?;
    let (d, _) = star_search(f, l, i)?;
    let star = d.is_one();
    Ok((d, star))
}

fn vertex_data(f: &IntersectionForm, l: &RatCycle, i: usize) -> Result<VertexBaseData> {
    let pairing = f.pairing_with_vertex(l, i);
    let (d_v, r) = star_search(f, l, i)?;
    let star = d_v.is_one();
    let m_v = l.coeffs()[i].clone();
    let mut data = VertexBaseData {
        vertex: f.id_at(i),
        count: if star && pairing.is_negative() {
            (-&pairing).to_integer()
        } else {
            BigInt::zero()
        },
        pairing,
        d_v,
        star,
        m_v: m_v.clone(),
        m_v_plus: None,
        t: None,
        m_min: None,
        s_max: None,
    };
    if star {
        // The level set at χ(l') + 1 is the minimizer set of the search.
        let join = minimizer_join(&r)?;
        let meet = minimizer_meet(&r)?;
        let s_max = l + &join;
        data.m_v_plus = Some(s_max.coeffs()[i].clone());
        data.t = Some(join.coeffs()[i].clone());
        data.m_min = Some(meet);
        data.s_max = Some(s_max);
    }
    Ok(data)
}

/// Base points of `O(-l')` on `E_v`: their number `-(l', E_v)`, their type
/// `t(v) = m_v⁺ - m_v`, and the extremal cycles of the level set.
pub fn base_point_data(f: &IntersectionForm, l: &RatCycle, v: i64) -> Result<VertexBaseData> {
    let i = f.index_of(v)?;
    check_semigroup(f, l)?;
    let data = vertex_data(f, l, i)?;
    if !data.star || !data.pairing.is_negative() {
        return Err(Error::NotStar { vertex: v });
    }
    Ok(data)
}

/// Base-point structure of `O(-l')` for `l' ∈ S'_an`, over every vertex with
/// `(l', E_v) < 0`.
pub fn base_point_report(f: &IntersectionForm, l: &RatCycle) -> Result<BasePointReport> {
    check_semigroup(f, l)?;
    let mut per_vertex = Vec::new();
    for i in 0..f.len() {
        if f.pairing_with_vertex(l, i).is_negative() {
            per_vertex.push(vertex_data(f, l, i)?);
        }
    }
    let total_base_points = per_vertex.iter().map(|d| &d.count).sum();
    let report = BasePointReport {
        l: l.clone(),
        per_vertex,
        total_base_points,
        multiplicity: None,
        wagreich_floor: -f.self_intersection(l),
    };
    for d in &report.per_vertex {
        if d.count.is_positive() && !d.t.as_ref().is_some_and(|t| t >= &BigInt::one()) {
            return Err(Error::Invariant(format!(
                "base points on v{} with t < 1",
                d.vertex
            )));
        }
        if let Some(s) = &d.s_max {
            if !in_analytic_semigroup(f, s)? {
                return Err(Error::Invariant(format!(
                    "s' at v{} is not in the semigroup",
                    d.vertex
                )));
            }
        }
    }
    Ok(report)
}

/// `mult(X, o) = -Z_max² + Σ_v t(v) · (-(Z_max, E_v))` over the vertices
/// satisfying `(*_v)`; `-Z_min²` on rational graphs.
pub fn multiplicity_generic(f: &IntersectionForm) -> Result<BasePointReport> {
    let class = classify(f)?;
    if class.tag == ClassTag::Rational {
        let z = laufer_zmin(f);
        let zr = z.to_rat();
        if cfg!(debug_assertions) {
            for i in 0..f.len() {
                if f.pairing_with_vertex(&zr, i).is_negative() {
                    let (d, _) = star_search(f, &zr, i)?;
                    debug_assert!(d > BigRational::one(), "(*_v) holds on a rational graph");
                }
            }
        }
        let floor = -f.pairing_int(&z, &z);
        return Ok(BasePointReport {
            l: zr,
            per_vertex: Vec::new(),
            total_base_points: BigInt::zero(),
            multiplicity: Some(floor.clone()),
            wagreich_floor: BigRational::from_integer(floor),
        });
    }
    let z_max = maximal_ideal_cycle(f)?.cycle;
    let mut report = base_point_report(f, &z_max.to_rat())?;
    let floor = -f.pairing_int(&z_max, &z_max);
    let mult = &floor + report.correction();
    if mult < floor {
        return Err(Error::Invariant("multiplicity below -Z_max²".into()));
    }
    report.multiplicity = Some(mult);
    Ok(report)
}

/// Whether the generic sections of `O(-l'₁)` and `O(-l'₂)` are expected to
/// have distinct base points on `E_v`: this is the case when `l'₂` is the
/// minimal semigroup element `s' ≥ l'₁ + E_v`.
pub fn distinct_base_points_check(
    f: &IntersectionForm,
    first: &RatCycle,
    second: &RatCycle,
    v: i64,
) -> Result<DistinctCheck> {
    let a = base_point_data(f, first, v)?;
    let b = base_point_data(f, second, v)?;
    let (Some(m_first), Some(m_second), Some(s)) = (a.m_min, b.m_min, a.s_max) else {
        return Err(Error::NotStar { vertex: v });
    };
    let verdict = if first != second && &s == second {
        Distinctness::ExpectedDistinct
    } else {
        Distinctness::PossiblyCommon
    };
    Ok(DistinctCheck {
        verdict,
        same_minimal_cycle: m_first == m_second,
        m_first,
        m_second,
    })
}

/// The minimally elliptic cycle together with the claims about `Z_max` and
/// base points, meaningful for minimal numerically Gorenstein elliptic graphs.
pub fn elliptic_claims(f: &IntersectionForm) -> Result<EllipticClaims> {
    let c = minimally_elliptic_cycle(f)?;
    let c_squared = f.pairing_int(&c, &c);
    let z_max = maximal_ideal_cycle(f)?.cycle;
    let z_max_is_canonical = &z_max.to_rat() == f.canonical_cycle();
    let has_base_point = multiplicity_generic(f)?.total_base_points.is_positive();
    Ok(EllipticClaims {
        c,
        c_squared,
        z_max_is_canonical,
        has_base_point,
    })
}
