//! Topological formulas for the analytic invariants of a generic analytic
//! structure: geometric genus, `h¹` of natural line bundles, the Hilbert
//! function, the analytic semigroup and the maximal ideal cycle.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cycle::{Cycle, RatCycle};
use crate::error::{Error, Result};
use crate::form::{build_form, IntersectionForm};
use crate::lattice_opt::{
    laufer_zmin, min_chi, minimizer_join, minimizer_meet, ChiMinResult, Constraint,
};

/// Iterations allowed when enlarging `Z` until a large-`Z` value stabilizes.
pub const STABILIZATION_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassTag {
    Rational,
    Elliptic,
    General,
}

impl std::fmt::Display for ClassTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassTag::Rational => write!(f, "rational"),
            ClassTag::Elliptic => write!(f, "elliptic"),
            ClassTag::General => write!(f, "general"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphClass {
    pub tag: ClassTag,
    /// `min_{l > 0} χ(l)`.
    pub min_chi_positive: BigRational,
    /// `Z_K ∈ L`.
    pub numerically_gorenstein: bool,
    /// No `-1` vertex.
    pub is_minimal: bool,
}

impl GraphClass {
    pub fn is_rational(&self) -> bool {
        self.tag == ClassTag::Rational
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub p_g: BigInt,
    pub z_min: Cycle,
    /// Maximal ideal cycle; `Z_min` on rational graphs.
    pub z_max: Cycle,
    pub class: GraphClass,
    /// `min_{l ∈ L} χ(l)`.
    pub min_chi: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedH1 {
    pub value: BigInt,
    /// `l'_v > 0` on every vertex of `|Z|`.
    pub hypothesis_holds: bool,
    /// The value includes the `+1` of the natural line bundle formula.
    pub natural_correction: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalIdealCycle {
    pub cycle: Cycle,
    /// Rational graph: the cycle is `Z_min`.
    pub artin_case: bool,
}

fn min_positive(f: &IntersectionForm) -> Result<ChiMinResult> {
    min_chi(f, &RatCycle::zero(f.len()), &Constraint::positive(f.len()))
}

fn int_value(x: &BigRational) -> Result<BigInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::Invariant(format!("expected an integer, found {x}")))
    }
}

/// Rational, elliptic or neither, by the sign of `min_{l > 0} χ`.
pub fn classify(f: &IntersectionForm) -> Result<GraphClass> {
    let m = min_positive(f)?.min_value;
    let tag = if m >= BigRational::one() {
        ClassTag::Rational
    } else if m.is_zero() {
        ClassTag::Elliptic
    } else {
        ClassTag::General
    };
    Ok(GraphClass {
        tag,
        min_chi_positive: m,
        numerically_gorenstein: f.is_numerically_gorenstein(),
        is_minimal: f.is_minimal(),
    })
}

/// `p_g = 1 - min_{l > 0} χ(l)` on non-rational graphs and `0` on rational
/// ones; the expression through `min_{l ∈ L} χ` is checked to agree.
pub fn geometric_genus(f: &IntersectionForm) -> Result<BigInt> {
    let n = f.len();
    let positive = min_positive(f)?.min_value;
    let all = min_chi(f, &RatCycle::zero(n), &Constraint::unbounded())?.min_value;
    let rational = positive >= BigRational::one();
    let via_positive = if rational {
        BigInt::zero()
    } else {
        int_value(&(BigRational::one() - &positive))?
    };
    let via_all = int_value(&-all)? + if rational { 0 } else { 1 };
    if via_positive != via_all {
        return Err(Error::Invariant(format!(
            "geometric genus branches disagree: {via_positive} vs {via_all}"
        )));
    }
    Ok(via_positive)
}

fn check_positive(f: &IntersectionForm, z: &Cycle) -> Result<()> {
    f.check_len(z.len())?;
    if !z.is_effective() {
        return Err(Error::NegativeInput);
    }
    if z.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(())
}

fn support_ids(f: &IntersectionForm, z: &Cycle) -> BTreeSet<i64> {
    z.support().into_iter().map(|i| f.id_at(i)).collect()
}

/// The form of the subgraph on `ids` and the restriction of `z` to it.
fn restrict_to(
    f: &IntersectionForm,
    ids: &BTreeSet<i64>,
    z: &Cycle,
) -> Result<(IntersectionForm, Cycle)> {
    let sub = f.graph().induced_subgraph(ids)?;
    let form = build_form(&sub)?;
    let coeffs = form
        .ids()
        .iter()
        .map(|id| Ok(z.coeffs()[f.index_of(*id)?].clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok((form, Cycle::new(coeffs)))
}

/// `h¹(O_Z) = 1 - min_{0 < l ≤ Z} χ(l)` for `Z > 0` with connected support,
/// evaluated on the subgraph spanned by `|Z|`.
pub fn h1_cycle(f: &IntersectionForm, z: &Cycle) -> Result<BigInt> {
    check_positive(f, z)?;
    let ids = support_ids(f, z);
    if f.graph().components(&ids).len() != 1 {
        return Err(Error::DisconnectedSupport);
    }
    let (sub, zs) = restrict_to(f, &ids, z)?;
    let m = min_chi(
        &sub,
        &RatCycle::zero(sub.len()),
        &Constraint::positive_up_to(zs),
    )?
    .min_value;
    int_value(&(BigRational::one() - m))
}

fn check_dual(f: &IntersectionForm, l: &RatCycle) -> Result<()> {
    f.check_len(l.len())?;
    if f.in_dual_lattice(l) {
        Ok(())
    } else {
        Err(Error::NotInDualLattice)
    }
}

/// Integral and `≤ 0`.
fn is_nonpositive_integral(l: &RatCycle) -> bool {
    l.is_integral() && l.coeffs().iter().all(|c| !c.is_positive())
}

/// `h¹(Z, O_Z(-l')) = χ(l') - min_{0 ≤ l ≤ Z} χ(l' + l)`.
///
/// When some `l'_v ≤ 0` on `|Z|` the value is still returned, flagged, and
/// carries the `+1` correction of the natural line bundle formula when `l'`
/// is an integral cycle `≤ 0` on a non-rational graph.
pub fn h1_twisted(f: &IntersectionForm, z: &Cycle, l: &RatCycle) -> Result<TwistedH1> {
    check_positive(f, z)?;
    check_dual(f, l)?;
    let hypothesis_holds = z.support().iter().all(|&i| l.coeffs()[i].is_positive());
    let m = min_chi(f, l, &Constraint::between(Cycle::zero(f.len()), z.clone()))?.min_value;
    let mut value = int_value(&(f.chi(l) - m))?;
    let natural_correction =
        !hypothesis_holds && is_nonpositive_integral(l) && !classify(f)?.is_rational();
    if natural_correction {
        value += 1;
    }
    Ok(TwistedH1 {
        value,
        hypothesis_holds,
        natural_correction,
    })
}

/// `h¹(O(-l')) = χ(l') - min_{l ≥ 0} χ(l' + l) + [l' ∈ L_{≤0}, non-rational]`.
///
/// The correction is applied only to integral `l'`.
pub fn h1_natural(f: &IntersectionForm, l: &RatCycle) -> Result<BigInt> {
    check_dual(f, l)?;
    let m = min_chi(f, l, &Constraint::nonnegative(f.len()))?.min_value;
    let mut value = int_value(&(f.chi(l) - m))?;
    if is_nonpositive_integral(l) && !classify(f)?.is_rational() {
        value += 1;
    }
    Ok(value)
}

/// `Z_c = max(⌈Z_K⌉, 0) + c E`.
pub fn large_cycle(f: &IntersectionForm, c: u64) -> Cycle {
    let zk = f.canonical_cycle().ceil();
    let zero = Cycle::zero(f.len());
    &zk.join(&zero) + &(&BigInt::from(c) * &Cycle::reduced(f.len()))
}

/// Evaluates `value(Z_c)` for `c = 1, 2, ...` until two consecutive values
/// agree; returns that value and the `Z` it was first reached at.
pub fn stabilized<F>(f: &IntersectionForm, mut value: F) -> Result<(BigInt, Cycle)>
where
    F: FnMut(&Cycle) -> Result<BigInt>,
{
    let mut z = large_cycle(f, 1);
    let mut prev = value(&z)?;
    for c in 2..=STABILIZATION_LIMIT as u64 {
        let next_z = large_cycle(f, c);
        let next = value(&next_z)?;
        if next == prev {
            return Ok((prev, z));
        }
        prev = next;
        z = next_z;
    }
    Err(Error::Invariant(
        "large-cycle value did not stabilize".into(),
    ))
}

/// `h¹(O_Z)` for `Z ≫ 0`.
pub fn h1_cycle_large(f: &IntersectionForm) -> Result<(BigInt, Cycle)> {
    stabilized(f, |z| h1_cycle(f, z))
}

/// `h¹(Z, O_Z(-l'))` for `Z ≫ 0`.
pub fn h1_twisted_large(f: &IntersectionForm, l: &RatCycle) -> Result<(TwistedH1, Cycle)> {
    let (value, z) = stabilized(f, |z| Ok(h1_twisted(f, z, l)?.value))?;
    let full = h1_twisted(f, &z, l)?;
    debug_assert_eq!(full.value, value);
    Ok((full, z))
}

/// Hilbert function `𝔥(l₀) = dim H⁰(O) / H⁰(O(-l₀))`.
pub fn hilbert_h(f: &IntersectionForm, l0: &Cycle) -> Result<BigInt> {
    HilbertFunction::new(f)?.value(l0)
}

/// `𝔥` with the graph-level terms computed once.
#[derive(Debug, Clone)]
pub struct HilbertFunction<'f> {
    form: &'f IntersectionForm,
    /// `min_{l ≥ 0} χ(l)`.
    base: BigRational,
    /// `1` on non-rational graphs.
    correction: BigInt,
}

impl<'f> HilbertFunction<'f> {
    pub fn new(f: &'f IntersectionForm) -> Result<Self> {
        let n = f.len();
        let base = min_chi(f, &RatCycle::zero(n), &Constraint::nonnegative(n))?.min_value;
        let correction = if classify(f)?.is_rational() {
            BigInt::zero()
        } else {
            BigInt::one()
        };
        Ok(HilbertFunction {
            form: f,
            base,
            correction,
        })
    }

    pub fn value(&self, l0: &Cycle) -> Result<BigInt> {
        let f = self.form;
        f.check_len(l0.len())?;
        if !l0.is_effective() {
            return Err(Error::NegativeInput);
        }
        if l0.is_zero() {
            return Ok(BigInt::zero());
        }
        let shifted = min_chi(f, &l0.to_rat(), &Constraint::nonnegative(f.len()))?.min_value;
        Ok(int_value(&(shifted - &self.base))? + &self.correction)
    }
}

/// `l' ∈ S'_an`: `l' = 0`, or `χ(l' + l) > χ(l')` for every `l > 0`.
pub fn in_analytic_semigroup(f: &IntersectionForm, l: &RatCycle) -> Result<bool> {
    check_dual(f, l)?;
    if l.is_zero() {
        return Ok(true);
    }
    let m = min_chi(f, l, &Constraint::positive(f.len()))?.min_value;
    Ok(m > f.chi(l))
}

/// The maximal ideal cycle: the largest `Z > 0` with `χ(Z) = min_L χ`, or
/// `Z_min` on rational graphs.
pub fn maximal_ideal_cycle(f: &IntersectionForm) -> Result<MaximalIdealCycle> {
    let r = min_positive(f)?;
    if r.min_value >= BigRational::one() {
        return Ok(MaximalIdealCycle {
            cycle: laufer_zmin(f),
            artin_case: true,
        });
    }
    let all = min_chi(f, &RatCycle::zero(f.len()), &Constraint::unbounded())?.min_value;
    if all != r.min_value {
        return Err(Error::Invariant(format!(
            "minimum over L ({all}) differs from minimum over L>0 ({})",
            r.min_value
        )));
    }
    Ok(MaximalIdealCycle {
        cycle: minimizer_join(&r)?,
        artin_case: false,
    })
}

/// The minimally elliptic cycle: the least `l > 0` with `χ(l) = 0`.
pub fn minimally_elliptic_cycle(f: &IntersectionForm) -> Result<Cycle> {
    let r = min_positive(f)?;
    if !r.min_value.is_zero() {
        return Err(Error::NotElliptic);
    }
    minimizer_meet(&r)
}

/// `e(l') = p_g(Γ) - Σ_K p_g(K)` over the components `K` of the graph with
/// the vertices `I(l') = {v : (l', E_v) ≠ 0}` removed.
pub fn e_dimension(f: &IntersectionForm, l: &RatCycle) -> Result<BigInt> {
    check_dual(f, l)?;
    let removed: BTreeSet<i64> = (0..f.len())
        .filter(|&i| !f.pairing_with_vertex(l, i).is_zero())
        .map(|i| f.id_at(i))
        .collect();
    let rest: BTreeSet<i64> = f
        .ids()
        .iter()
        .copied()
        .filter(|id| !removed.contains(id))
        .collect();
    let mut value = geometric_genus(f)?;
    for component in f.graph().components(&rest) {
        let ids: BTreeSet<i64> = component.into_iter().collect();
        let sub = build_form(&f.graph().induced_subgraph(&ids)?)?;
        value -= geometric_genus(&sub)?;
    }
    Ok(value)
}

/// Genus, fundamental and maximal ideal cycles, and class, with their
/// mutual consistency checked.
pub fn analyze(f: &IntersectionForm) -> Result<InvariantReport> {
    let class = classify(f)?;
    let p_g = geometric_genus(f)?;
    let z_min = laufer_zmin(f);
    let z_max = maximal_ideal_cycle(f)?.cycle;
    let min_chi_all = min_chi(f, &RatCycle::zero(f.len()), &Constraint::unbounded())?.min_value;
    if p_g.is_negative() {
        return Err(Error::Invariant("negative geometric genus".into()));
    }
    if !class.is_rational() {
        if !z_min.leq(&z_max) {
            return Err(Error::Invariant("Z_min is not below Z_max".into()));
        }
        if BigRational::from_integer(f.chi_int(&z_max)) != min_chi_all {
            return Err(Error::Invariant("χ(Z_max) is not the minimum of χ".into()));
        }
    }
    Ok(InvariantReport {
        p_g,
        z_min,
        z_max,
        class,
        min_chi: min_chi_all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn form(g: crate::ResolutionGraph) -> IntersectionForm {
        build_form(&g).unwrap()
    }

    #[test]
    fn rational_single_vertex() {
        let f = form(catalog::a_n(1));
        assert_eq!(geometric_genus(&f).unwrap(), BigInt::zero());
        assert_eq!(classify(&f).unwrap().tag, ClassTag::Rational);
        let m = maximal_ideal_cycle(&f).unwrap();
        assert!(m.artin_case);
        assert_eq!(m.cycle, Cycle::from_i64s(&[1]));
        assert_eq!(
            minimally_elliptic_cycle(&f).unwrap_err(),
            Error::NotElliptic
        );
        assert_eq!(
            h1_cycle(&f, &Cycle::from_i64s(&[1])).unwrap(),
            BigInt::zero()
        );
    }

    #[test]
    fn hilbert_rejects_negative_input() {
        let f = form(catalog::a_n(2));
        assert_eq!(
            hilbert_h(&f, &Cycle::from_i64s(&[1, -1])).unwrap_err(),
            Error::NegativeInput
        );
        assert_eq!(hilbert_h(&f, &Cycle::zero(2)).unwrap(), BigInt::zero());
    }

    #[test]
    fn disconnected_support_is_rejected() {
        let f = form(catalog::a_n(3));
        assert_eq!(
            h1_cycle(&f, &Cycle::from_i64s(&[1, 0, 1])).unwrap_err(),
            Error::DisconnectedSupport
        );
    }

    #[test]
    fn semigroup_requires_dual_lattice() {
        let f = form(catalog::a_n(1));
        let half = RatCycle::new(vec![BigRational::new(1.into(), 4.into())]);
        assert_eq!(
            in_analytic_semigroup(&f, &half).unwrap_err(),
            Error::NotInDualLattice
        );
        assert!(in_analytic_semigroup(&f, &RatCycle::zero(1)).unwrap());
    }

    #[test]
    fn large_cycle_dominates_canonical_cycle() {
        let f = form(catalog::minus13_two_nodes());
        let z = large_cycle(&f, 1);
        assert!(f.canonical_cycle().leq(&z.to_rat()));
        assert!(z.is_positive());
    }

    #[test]
    fn sigma_2_3_17_values() {
        let f = form(catalog::seifert_2_3_17());
        let r = analyze(&f).unwrap();
        assert_eq!(r.p_g, BigInt::from(1));
        assert_eq!(r.class.tag, ClassTag::Elliptic);
        assert_eq!(r.z_min, Cycle::from_i64s(&[1, 1, 2, 3, 4, 5, 6, 4, 2, 3]));
        assert_eq!(r.z_max, Cycle::from_i64s(&[1, 2, 4, 6, 8, 10, 12, 8, 4, 6]));
        assert_eq!(r.z_max.to_rat(), *f.canonical_cycle());
        assert!(!in_analytic_semigroup(&f, &r.z_min.to_rat()).unwrap());
        assert!(in_analytic_semigroup(&f, f.canonical_cycle()).unwrap());
        let c = minimally_elliptic_cycle(&f).unwrap();
        assert_eq!(c, Cycle::from_i64s(&[0, 1, 2, 3, 4, 5, 6, 4, 2, 3]));
        assert_eq!(f.chi_int(&c), BigInt::zero());
        assert_eq!(f.pairing_int(&c, &c), BigInt::from(-1));
        assert_eq!(h1_cycle_large(&f).unwrap().0, r.p_g);
    }

    #[test]
    fn minus13_two_nodes_values() {
        let f = form(catalog::minus13_two_nodes());
        let r = analyze(&f).unwrap();
        assert_eq!(r.p_g, BigInt::from(2));
        assert_eq!(r.class.tag, ClassTag::General);
        assert_eq!(r.min_chi, BigRational::from_integer((-1).into()));
        let e3 = f.dual_cycle(3).unwrap();
        assert_eq!(
            r.z_max.to_rat(),
            e3.scale(&BigRational::from_integer(2.into()))
        );
        assert_eq!(h1_natural(&f, &RatCycle::zero(f.len())).unwrap(), r.p_g);
        assert_eq!(
            hilbert_h(&f, &Cycle::reduced(f.len())).unwrap(),
            BigInt::one()
        );
    }
}
