//! Exact constrained minimization of `l ↦ χ(l' + l)` over integral cycles.
//!
//! Writing `Q = -I` (positive definite), `κ_v = E_v² + 2` and `p = Q l'`,
//!
//! ```text
//! 2 (χ(l' + l) - χ(l')) = lᵀ Q l + (κ + 2p)ᵀ l.
//! ```
//!
//! Multiplying by the common denominator `s` of `p` gives an integral
//! quadratic `F(l) = s lᵀQl + hᵀl`. The enumeration is a depth-first
//! Fincke–Pohst search on `F` using a `MᵀDM` decomposition of `Q` in
//! vertex order of decreasing `Q⁻¹_vv`; every comparison is exact.
//!
//! On coordinates bounded below the linear term is split into its negative
//! part, kept inside the ellipsoid, and its positive part, which is a
//! monotone penalty on `u = l - lower ≥ 0`. Both parts give valid lower
//! bounds on every subtree, so pruning never loses a feasible point.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cycle::{Cycle, RatCycle};
use crate::error::{Error, Extremal, Result};
use crate::form::IntersectionForm;
use crate::linalg::floor_sqrt;

/// Componentwise bounds on `l`, plus an optional exclusion of `l = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub lower: Option<Cycle>,
    pub upper: Option<Cycle>,
    pub nonzero: bool,
}

impl Constraint {
    /// All of `L`.
    pub fn unbounded() -> Self {
        Constraint {
            lower: None,
            upper: None,
            nonzero: false,
        }
    }

    /// `l ≥ 0`.
    pub fn nonnegative(n: usize) -> Self {
        Constraint {
            lower: Some(Cycle::zero(n)),
            upper: None,
            nonzero: false,
        }
    }

    /// `l > 0`.
    pub fn positive(n: usize) -> Self {
        Constraint {
            lower: Some(Cycle::zero(n)),
            upper: None,
            nonzero: true,
        }
    }

    /// `l ≥ lower`.
    pub fn at_least(lower: Cycle) -> Self {
        Constraint {
            lower: Some(lower),
            upper: None,
            nonzero: false,
        }
    }

    /// `l ≥ E_v` for the vertex at position `i`.
    pub fn at_least_vertex(n: usize, i: usize) -> Self {
        Self::at_least(Cycle::unit(n, i))
    }

    /// `lower ≤ l ≤ upper`.
    pub fn between(lower: Cycle, upper: Cycle) -> Self {
        Constraint {
            lower: Some(lower),
            upper: Some(upper),
            nonzero: false,
        }
    }

    /// `0 < l ≤ upper`.
    pub fn positive_up_to(upper: Cycle) -> Self {
        let n = upper.len();
        Constraint {
            lower: Some(Cycle::zero(n)),
            upper: Some(upper),
            nonzero: true,
        }
    }

    pub fn contains(&self, l: &Cycle) -> bool {
        if let Some(lo) = &self.lower {
            if !lo.leq(l) {
                return false;
            }
        }
        if let Some(up) = &self.upper {
            if !l.leq(up) {
                return false;
            }
        }
        !(self.nonzero && l.is_zero())
    }

    fn check(&self, n: usize) -> Result<()> {
        for c in [&self.lower, &self.upper].into_iter().flatten() {
            if c.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.len(),
                });
            }
        }
        if let (Some(lo), Some(up)) = (&self.lower, &self.upper) {
            if !lo.leq(up) {
                return Err(Error::EmptyFeasibleRegion);
            }
        }
        Ok(())
    }

    fn lower_at(&self, i: usize) -> Option<&BigInt> {
        self.lower.as_ref().map(|c| &c.coeffs()[i])
    }

    fn upper_at(&self, i: usize) -> Option<&BigInt> {
        self.upper.as_ref().map(|c| &c.coeffs()[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SearchStats {
    /// Number of lattice points in the Cauchy–Schwarz box around the
    /// continuous minimizer, intersected with the constraint.
    pub box_volume: BigUint,
    /// Search-tree nodes visited.
    pub nodes: u64,
    /// Complete candidates evaluated.
    pub leaves: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiMinResult {
    pub min_value: BigRational,
    /// Every minimizer, sorted lexicographically by ascending vertex id.
    pub minimizers: Vec<Cycle>,
    pub stats: SearchStats,
}

/// Members of a sublevel set together with their `χ(l' + l)` values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SublevelSet {
    pub members: Vec<(Cycle, BigRational)>,
    pub stats: SearchStats,
}

/// `min { χ(l' + l) : l ∈ L, l satisfies c }` with every minimizer.
pub fn min_chi(f: &IntersectionForm, shift: &RatCycle, c: &Constraint) -> Result<ChiMinResult> {
    let problem = Problem::new(f, shift, c)?;
    let reference = problem.reference_point()?;
    let threshold = problem.objective(&reference);
    let mut search = Search::new(&problem, threshold, Mode::Minimize);
    search.run()?;
    let (value, mut found) = search.finish();
    found.sort();
    let min_value = problem.chi_of_objective(&BigRational::from_integer(value));
    let stats = problem.stats(&min_value, search.nodes, search.leaves);
    Ok(ChiMinResult {
        min_value,
        minimizers: found,
        stats,
    })
}

/// All `l` satisfying `c` with `χ(l' + l) ≤ bound`, sorted.
pub fn sublevel_set(
    f: &IntersectionForm,
    shift: &RatCycle,
    c: &Constraint,
    bound: &BigRational,
) -> Result<SublevelSet> {
    let problem = Problem::new(f, shift, c)?;
    let scaled = (bound - f.chi(shift)) * BigRational::from_integer(BigInt::from(2) * &problem.s);
    let threshold = scaled.floor().to_integer();
    let mut search = Search::new(&problem, threshold, Mode::Collect);
    search.run()?;
    let mut members: Vec<(Cycle, BigRational)> = search
        .collected
        .drain(..)
        .map(|(l, v)| {
            let chi = problem.chi_of_objective(&BigRational::from_integer(v));
            (l, chi)
        })
        .collect();
    members.sort();
    let stats = problem.stats(bound, search.nodes, search.leaves);
    Ok(SublevelSet { members, stats })
}

/// All `l` satisfying `c` with `χ(l' + l) = value`, sorted.
pub fn level_set(
    f: &IntersectionForm,
    shift: &RatCycle,
    c: &Constraint,
    value: &BigRational,
) -> Result<Vec<Cycle>> {
    Ok(sublevel_set(f, shift, c, value)?
        .members
        .into_iter()
        .filter(|(_, v)| v == value)
        .map(|(l, _)| l)
        .collect())
}

/// Componentwise join of a sorted set, required to be a member.
pub fn extremal_join(set: &[Cycle]) -> Result<Cycle> {
    let join = crate::cycle::join_all(set).ok_or(Error::EmptyMinimizerSet)?;
    if set.binary_search(&join).is_ok() {
        Ok(join)
    } else {
        Err(Error::ExtremalNotMinimizer(Extremal::Join))
    }
}

/// Componentwise meet of a sorted set, required to be a member.
pub fn extremal_meet(set: &[Cycle]) -> Result<Cycle> {
    let meet = crate::cycle::meet_all(set).ok_or(Error::EmptyMinimizerSet)?;
    if set.binary_search(&meet).is_ok() {
        Ok(meet)
    } else {
        Err(Error::ExtremalNotMinimizer(Extremal::Meet))
    }
}

pub fn minimizer_join(r: &ChiMinResult) -> Result<Cycle> {
    extremal_join(&r.minimizers)
}

pub fn minimizer_meet(r: &ChiMinResult) -> Result<Cycle> {
    extremal_meet(&r.minimizers)
}

/// Artin's fundamental cycle by Laufer's algorithm: start from `E` and add
/// `E_v` while `(z, E_v) > 0` for some `v`.
pub fn laufer_zmin(f: &IntersectionForm) -> Cycle {
    let n = f.len();
    let mut z = Cycle::reduced(n);
    'outer: loop {
        for i in 0..n {
            if f.pairing_with_vertex_int(&z, i).is_positive() {
                z = &z + &Cycle::unit(n, i);
                continue 'outer;
            }
        }
        return z;
    }
}

/// One lower bound for every subtree: `G(u) + rᵀu ≤ F(b + u) - F(b)` where
/// `G` is a convex quadratic and `r ≥ 0` is supported on coordinates with
/// `u ≥ 0`. Quantities are scaled to integers, see [`Problem`].
struct Bound {
    /// Per position `k`: `A_k` with `den_k · centre_k = A_k - Σ_{j<k} M_kj u_j`.
    offset: Vec<BigInt>,
    /// `Λ · min G`.
    start: BigInt,
    /// Per position: `Λ r_k`.
    penalty: Vec<BigInt>,
}

/// The minimization problem in integral form, permuted into search order.
///
/// With `Q = Mᵀ D M` (`M` unit lower triangular in search order) and `μ`
/// the minimizer of `G`, `G(u) = min G + s Σ_k d_k (u_k - centre_k)²` where
/// `centre_k` depends only on `u_0 .. u_{k-1}`. Every rational is brought
/// to a per-position denominator `den_k` and a global scale `Λ`, so the
/// search itself only touches integers.
struct Problem<'a> {
    form: &'a IntersectionForm,
    shift: RatCycle,
    constraint: Constraint,
    n: usize,
    s: BigInt,
    /// `Q = -I`.
    q: Vec<Vec<BigInt>>,
    /// `h = s (κ + 2p)`.
    h: Vec<BigInt>,
    /// Search position → internal index.
    perm: Vec<usize>,
    /// `b`: lower bound where present, else 0 (internal index).
    base: Vec<BigInt>,
    /// Per search position: `u ≥ 0` is enforced.
    bounded: Vec<bool>,
    /// Per search position: upper bound on `u`.
    upper: Vec<Option<BigInt>>,
    den: Vec<BigInt>,
    /// `M_kj = den_k m_kj`.
    coupling: Vec<Vec<BigInt>>,
    /// `S_k = Λ s d_k / den_k²`.
    weight: Vec<BigInt>,
    scale: BigInt,
    bounds: Vec<Bound>,
    f_base: BigInt,
}

fn lcm_of_denominators<'x, I: IntoIterator<Item = &'x BigRational>>(init: BigInt, xs: I) -> BigInt {
    xs.into_iter().fold(init, |acc, x| acc.lcm(x.denom()))
}

fn scaled(x: &BigRational, by: &BigInt) -> BigInt {
    let v = x * BigRational::from_integer(by.clone());
    debug_assert!(v.is_integer());
    v.to_integer()
}

impl<'a> Problem<'a> {
    fn new(f: &'a IntersectionForm, shift: &RatCycle, c: &Constraint) -> Result<Self> {
        let n = f.len();
        f.check_len(shift.len())?;
        c.check(n)?;

        let q: Vec<Vec<BigInt>> = f
            .matrix()
            .iter()
            .map(|row| row.iter().map(|x| -x).collect())
            .collect();
        let p: Vec<BigRational> = f.dual_coordinates(shift);
        let s = lcm_of_denominators(BigInt::one(), &p);
        let s_rat = BigRational::from_integer(s.clone());
        let two = BigRational::from_integer(BigInt::from(2));
        let h: Vec<BigInt> = (0..n)
            .map(|i| {
                let kappa = BigRational::from_integer(f.euler_at(i) + 2);
                scaled(&(kappa + &p[i] * &two), &s)
            })
            .collect();

        let inv = f.inverse();
        let mut perm: Vec<usize> = (0..n).collect();
        // decreasing Q⁻¹_vv = -I⁻¹_vv, ties by position
        perm.sort_by(|&a, &b| inv[a][a].cmp(&inv[b][b]).then(a.cmp(&b)));

        let base: Vec<BigInt> = (0..n)
            .map(|i| c.lower_at(i).cloned().unwrap_or_else(BigInt::zero))
            .collect();
        let bounded: Vec<bool> = perm.iter().map(|&i| c.lower_at(i).is_some()).collect();
        let upper: Vec<Option<BigInt>> = perm
            .iter()
            .map(|&i| c.upper_at(i).map(|up| up - &base[i]))
            .collect();

        // F(b + u) = F(b) + s uᵀQu + gᵀu with g = 2sQb + h
        let two_s = BigInt::from(2) * &s;
        let g: Vec<BigInt> = (0..n)
            .map(|i| {
                let qb: BigInt = (0..n).map(|j| &q[i][j] * &base[j]).sum();
                &two_s * qb + &h[i]
            })
            .collect();

        // plain split, and the split moving positive bounded parts into r
        let mut splits: Vec<(Vec<BigInt>, Vec<BigInt>)> =
            vec![(g.clone(), vec![BigInt::zero(); n])];
        if perm
            .iter()
            .enumerate()
            .any(|(k, &i)| bounded[k] && g[i].is_positive())
        {
            let mut lin = g.clone();
            let mut r = vec![BigInt::zero(); n];
            for (k, &i) in perm.iter().enumerate() {
                if bounded[k] && g[i].is_positive() {
                    r[k] = std::mem::take(&mut lin[i]);
                }
            }
            splits.push((lin, r));
        }

        // MᵀDM by eliminating from the last search position
        let mut pm: Vec<Vec<BigRational>> = perm
            .iter()
            .map(|&i| {
                perm.iter()
                    .map(|&j| BigRational::from_integer(q[i][j].clone()))
                    .collect()
            })
            .collect();
        let mut d = vec![BigRational::zero(); n];
        let mut m = vec![Vec::new(); n];
        for k in (0..n).rev() {
            d[k] = pm[k][k].clone();
            debug_assert!(d[k].is_positive());
            let row: Vec<BigRational> = (0..k).map(|j| &pm[k][j] / &d[k]).collect();
            for i in 0..k {
                for j in 0..k {
                    let t = &d[k] * &row[i] * &row[j];
                    pm[i][j] -= t;
                }
            }
            m[k] = row;
        }

        // per split: μ = -Q⁻¹ lin / (2s) = I⁻¹ lin / (2s) in search order,
        // a_k = μ_k + Σ_{j<k} m_kj μ_j and min G = lin·μ / 2
        let two_s_rat = BigRational::from_integer(two_s);
        let mut raw = Vec::with_capacity(splits.len());
        for (lin, r) in splits {
            let mu_int: Vec<BigRational> = (0..n)
                .map(|i| {
                    let acc: BigRational = (0..n)
                        .filter(|&j| !lin[j].is_zero())
                        .map(|j| &inv[i][j] * BigRational::from_integer(lin[j].clone()))
                        .sum();
                    acc / &two_s_rat
                })
                .collect();
            let g_min: BigRational = (0..n)
                .map(|i| BigRational::from_integer(lin[i].clone()) * &mu_int[i])
                .sum::<BigRational>()
                / &two;
            let mu: Vec<BigRational> = perm.iter().map(|&i| mu_int[i].clone()).collect();
            let a: Vec<BigRational> = (0..n)
                .map(|k| {
                    let mut acc = mu[k].clone();
                    for j in 0..k {
                        acc += &m[k][j] * &mu[j];
                    }
                    acc
                })
                .collect();
            raw.push((a, g_min, r));
        }

        let den: Vec<BigInt> = (0..n)
            .map(|k| {
                let d0 = lcm_of_denominators(BigInt::one(), &m[k]);
                raw.iter().fold(d0, |acc, (a, _, _)| acc.lcm(a[k].denom()))
            })
            .collect();
        let coupling: Vec<Vec<BigInt>> = (0..n)
            .map(|k| m[k].iter().map(|x| scaled(x, &den[k])).collect())
            .collect();
        let unit_weight: Vec<BigRational> = (0..n)
            .map(|k| &d[k] * &s_rat / BigRational::from_integer(&den[k] * &den[k]))
            .collect();
        let scale = raw.iter().fold(
            lcm_of_denominators(BigInt::one(), &unit_weight),
            |acc, (_, g_min, _)| acc.lcm(g_min.denom()),
        );
        let weight: Vec<BigInt> = unit_weight.iter().map(|w| scaled(w, &scale)).collect();
        let bounds: Vec<Bound> = raw
            .into_iter()
            .map(|(a, g_min, r)| Bound {
                offset: (0..n).map(|k| scaled(&a[k], &den[k])).collect(),
                start: scaled(&g_min, &scale),
                penalty: r.iter().map(|x| x * &scale).collect(),
            })
            .collect();

        let mut problem = Problem {
            form: f,
            shift: shift.clone(),
            constraint: c.clone(),
            n,
            s,
            q,
            h,
            perm,
            base,
            bounded,
            upper,
            den,
            coupling,
            weight,
            scale,
            bounds,
            f_base: BigInt::zero(),
        };
        problem.f_base = problem.objective(&Cycle::new(problem.base.clone()));
        Ok(problem)
    }

    /// `F(l) = s lᵀQl + hᵀl`.
    fn objective(&self, l: &Cycle) -> BigInt {
        let x = l.coeffs();
        let mut quad = BigInt::zero();
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            let row: BigInt = (0..self.n).map(|j| &self.q[i][j] * &x[j]).sum();
            quad += &x[i] * row;
        }
        let lin: BigInt = (0..self.n).map(|i| &self.h[i] * &x[i]).sum();
        &self.s * quad + lin
    }

    fn chi_of_objective(&self, value: &BigRational) -> BigRational {
        self.form.chi(&self.shift) + value / BigRational::from_integer(BigInt::from(2) * &self.s)
    }

    /// Rounded continuous minimizer clamped into the constraint; nudged off
    /// zero when zero is excluded.
    fn reference_point(&self) -> Result<Cycle> {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let nu = self.continuous_minimizer();
        let mut point: Vec<BigInt> = nu
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, x)| self.clamp(i, (x + &half).floor().to_integer()))
            .collect();
        if self.constraint.nonzero && point.iter().all(Zero::is_zero) {
            let nudged = (0..self.n)
                .find_map(|i| {
                    let one = BigInt::one();
                    if self.allows(i, &one) {
                        Some((i, one))
                    } else if self.allows(i, &-one) {
                        Some((i, BigInt::from(-1)))
                    } else {
                        None
                    }
                })
                .ok_or(Error::EmptyFeasibleRegion)?;
            point[nudged.0] = nudged.1;
        }
        Ok(Cycle::new(point))
    }

    /// `ν = Z_K/2 - l'`.
    fn continuous_minimizer(&self) -> RatCycle {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        &self.form.canonical_cycle().scale(&half) - &self.shift
    }

    fn clamp(&self, i: usize, x: BigInt) -> BigInt {
        let mut x = x;
        if let Some(lo) = self.constraint.lower_at(i) {
            if &x < lo {
                x = lo.clone();
            }
        }
        if let Some(up) = self.constraint.upper_at(i) {
            if &x > up {
                x = up.clone();
            }
        }
        x
    }

    fn allows(&self, i: usize, x: &BigInt) -> bool {
        self.constraint.lower_at(i).is_none_or(|lo| lo <= x)
            && self.constraint.upper_at(i).is_none_or(|up| x <= up)
    }

    /// Lattice points in `{(l - ν)_v² ≤ 2 (level - χ(Z_K/2)) Q⁻¹_vv}`
    /// intersected with the constraint.
    fn stats(&self, level: &BigRational, nodes: u64, leaves: u64) -> SearchStats {
        let nu = self.continuous_minimizer();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let chi_cont = self.form.chi(&self.form.canonical_cycle().scale(&half));
        let excess = level - chi_cont;
        let mut volume = BigUint::one();
        if excess.is_negative() {
            volume = BigUint::zero();
        } else {
            for i in 0..self.n {
                let radius_sq = &excess
                    * BigRational::from_integer(BigInt::from(2))
                    * -&self.form.inverse()[i][i];
                let centre = &nu.coeffs()[i];
                let a = floor_sqrt(&radius_sq);
                let mut lo = centre.floor().to_integer() - &a - 1;
                let mut hi = centre.ceil().to_integer() + &a + 1;
                let inside = |x: &BigInt| {
                    let w = BigRational::from_integer(x.clone()) - centre;
                    &w * &w <= radius_sq
                };
                while lo <= hi && !inside(&lo) {
                    lo += 1;
                }
                while lo <= hi && !inside(&hi) {
                    hi -= 1;
                }
                if let Some(l) = self.constraint.lower_at(i) {
                    lo = lo.max(l.clone());
                }
                if let Some(u) = self.constraint.upper_at(i) {
                    hi = hi.min(u.clone());
                }
                let width: BigInt = (hi - lo + 1i32).max(BigInt::zero());
                volume *= width.to_biguint().unwrap_or_default();
            }
        }
        SearchStats {
            box_volume: volume,
            nodes,
            leaves,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Minimize,
    Collect,
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

struct Search<'p, 'a> {
    p: &'p Problem<'a>,
    mode: Mode,
    /// `Λ · (threshold - F(b))`.
    budget: BigInt,
    u: Vec<BigInt>,
    best: Vec<Cycle>,
    collected: Vec<(Cycle, BigInt)>,
    nodes: u64,
    leaves: u64,
}

impl<'p, 'a> Search<'p, 'a> {
    fn new(p: &'p Problem<'a>, threshold: BigInt, mode: Mode) -> Self {
        Search {
            p,
            mode,
            budget: (threshold - &p.f_base) * &p.scale,
            u: vec![BigInt::zero(); p.n],
            best: Vec::new(),
            collected: Vec::new(),
            nodes: 0,
            leaves: 0,
        }
    }

    fn run(&mut self) -> Result<()> {
        let start: Vec<BigInt> = self.p.bounds.iter().map(|b| b.start.clone()).collect();
        if start.iter().any(|b| b > &self.budget) {
            return Ok(());
        }
        self.descend(0, start)
    }

    fn finish(&self) -> (BigInt, Vec<Cycle>) {
        (
            &self.p.f_base + &self.budget / &self.p.scale,
            self.best.clone(),
        )
    }

    fn descend(&mut self, k: usize, bound: Vec<BigInt>) -> Result<()> {
        self.nodes += 1;
        if let Some(limit) = self.p.form.search_limit() {
            if self.nodes > limit {
                return Err(Error::SearchLimitExceeded { limit });
            }
        }
        if k == self.p.n {
            self.leaf(bound);
            return Ok(());
        }
        let p = self.p;
        let den = &p.den[k];
        let mut pull = BigInt::zero();
        for j in 0..k {
            let mkj = &p.coupling[k][j];
            if !mkj.is_zero() && !self.u[j].is_zero() {
                pull += mkj * &self.u[j];
            }
        }
        // den_k · centre_k for each bound
        let centres: Vec<BigInt> = p.bounds.iter().map(|b| &b.offset[k] - &pull).collect();

        let mut lo: Option<BigInt> = if p.bounded[k] {
            Some(BigInt::zero())
        } else {
            None
        };
        let mut hi: Option<BigInt> = p.upper[k].clone();
        for (c, b) in centres.iter().zip(&bound) {
            let a = ((&self.budget - b) / &p.weight[k]).sqrt();
            let from = div_ceil(&(c - &a), den);
            let to = (c + &a).div_floor(den);
            if lo.as_ref().is_none_or(|l| &from > l) {
                lo = Some(from);
            }
            if hi.as_ref().is_none_or(|h| &to < h) {
                hi = Some(to);
            }
        }
        let (mut x, hi) = (lo.expect("finite range"), hi.expect("finite range"));
        while x <= hi {
            let mut children = Vec::with_capacity(bound.len());
            let mut admissible = true;
            let mut past = false;
            for (s, (c, b)) in centres.iter().zip(&bound).enumerate() {
                let w = &x * den - c;
                let mut child = b + &p.weight[k] * &w * &w;
                let r = &p.bounds[s].penalty[k];
                if !r.is_zero() {
                    child += r * &x;
                }
                if child > self.budget {
                    admissible = false;
                    // both terms only grow with x beyond the centre
                    past |= w.is_positive();
                }
                children.push(child);
            }
            // ties are kept so that every minimizer is reported
            if admissible {
                self.u[k] = x.clone();
                self.descend(k + 1, children)?;
            } else if past {
                break;
            }
            x += 1;
        }
        self.u[k] = BigInt::zero();
        Ok(())
    }

    fn leaf(&mut self, bound: Vec<BigInt>) {
        let p = self.p;
        let mut l = p.base.clone();
        for (k, &i) in p.perm.iter().enumerate() {
            l[i] += &self.u[k];
        }
        let l = Cycle::new(l);
        if p.constraint.nonzero && l.is_zero() {
            return;
        }
        self.leaves += 1;
        // at a leaf every bound is the exact excess
        let value = bound[0].clone();
        debug_assert!(bound.iter().all(|b| b == &value));
        debug_assert!((&value % &p.scale).is_zero());
        debug_assert_eq!(&value / &p.scale + &p.f_base, p.objective(&l));
        match self.mode {
            Mode::Minimize => {
                if value < self.budget {
                    self.budget = value;
                    self.best.clear();
                }
                self.best.push(l);
            }
            Mode::Collect => {
                let excess = value / &p.scale;
                self.collected.push((l, excess + &p.f_base));
            }
        }
    }
}

/// Convenience: `χ(l)` for an integral cycle, as a rational.
pub fn chi_of(f: &IntersectionForm, l: &Cycle) -> BigRational {
    BigRational::from_integer(f.chi_int(l))
}

/// Small helper for callers that want `min χ` as a machine integer when it
/// fits.
pub fn as_i64(x: &BigRational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::form::build_form;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn single_minus_two_positive_minimum() {
        let f = build_form(&catalog::a_n(1)).unwrap();
        let r = min_chi(&f, &RatCycle::zero(1), &Constraint::positive(1)).unwrap();
        assert_eq!(r.min_value, int(1));
        assert_eq!(r.minimizers, vec![Cycle::from_i64s(&[1])]);
        let r = min_chi(&f, &RatCycle::zero(1), &Constraint::unbounded()).unwrap();
        assert_eq!(r.min_value, int(0));
        assert_eq!(r.minimizers, vec![Cycle::from_i64s(&[0])]);
    }

    #[test]
    fn empty_region_is_reported() {
        let f = build_form(&catalog::a_n(2)).unwrap();
        let c = Constraint::between(Cycle::from_i64s(&[1, 0]), Cycle::from_i64s(&[0, 0]));
        assert_eq!(
            min_chi(&f, &RatCycle::zero(2), &c).unwrap_err(),
            Error::EmptyFeasibleRegion
        );
        let c = Constraint::positive_up_to(Cycle::zero(2));
        assert_eq!(
            min_chi(&f, &RatCycle::zero(2), &c).unwrap_err(),
            Error::EmptyFeasibleRegion
        );
    }

    #[test]
    fn upper_bounds_are_respected() {
        let f = build_form(&catalog::seifert_2_3_17()).unwrap();
        let n = f.len();
        let c = Constraint::positive_up_to(Cycle::reduced(n));
        let r = min_chi(&f, &RatCycle::zero(n), &c).unwrap();
        assert!(r.minimizers.iter().all(|l| c.contains(l)));
        assert_eq!(r.min_value, int(1));
    }

    #[test]
    fn laufer_on_a_chain_is_reduced() {
        let f = build_form(&catalog::a_n(4)).unwrap();
        assert_eq!(laufer_zmin(&f), Cycle::reduced(4));
    }

    #[test]
    fn laufer_on_e8_is_the_highest_root() {
        let f = build_form(&catalog::e_n(8)).unwrap();
        let z = laufer_zmin(&f);
        let total: BigInt = z.coeffs().iter().sum();
        assert_eq!(total, BigInt::from(29));
        assert_eq!(f.chi_int(&z), BigInt::from(1));
    }

    #[test]
    fn extremal_membership_is_checked() {
        let set = vec![Cycle::from_i64s(&[0, 1]), Cycle::from_i64s(&[1, 0])];
        assert_eq!(
            extremal_join(&set).unwrap_err(),
            Error::ExtremalNotMinimizer(Extremal::Join)
        );
        assert_eq!(
            extremal_meet(&set).unwrap_err(),
            Error::ExtremalNotMinimizer(Extremal::Meet)
        );
        let single = vec![Cycle::from_i64s(&[2, 3])];
        assert_eq!(extremal_join(&single).unwrap(), single[0]);
        assert_eq!(extremal_meet(&single).unwrap(), single[0]);
        assert_eq!(extremal_join(&[]).unwrap_err(), Error::EmptyMinimizerSet);
    }

    #[test]
    fn search_limit_is_enforced() {
        let f = build_form(&catalog::minus13_two_nodes())
            .unwrap()
            .with_search_limit(Some(3));
        let err = min_chi(&f, &RatCycle::zero(f.len()), &Constraint::unbounded()).unwrap_err();
        assert_eq!(err, Error::SearchLimitExceeded { limit: 3 });
    }

    #[test]
    fn sublevel_values_are_exact() {
        let f = build_form(&catalog::seifert_2_3_17()).unwrap();
        let n = f.len();
        let set = sublevel_set(&f, &RatCycle::zero(n), &Constraint::positive(n), &int(1)).unwrap();
        assert!(!set.members.is_empty());
        for (l, v) in &set.members {
            assert_eq!(chi_of(&f, l), *v);
            assert!(*v <= int(1));
        }
    }
}
