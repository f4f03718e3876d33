//! Exhaustive box scans in checked machine arithmetic.
//!
//! Values are evaluated as `2 D² χ(x) = -Xᵀ I X + D Σ_v X_v (E_v² + 2)` with
//! `X = D x` integral, which avoids `Z_K` entirely. The scan walks the box
//! like an odometer and updates `I X` incrementally.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use plumbing_core::{ChiMinResult, Cycle, IntersectionForm, RatCycle, SearchStats};

use crate::OracleError;

/// Candidate count above which a scan is refused.
pub const MAX_CANDIDATES: u128 = 100_000_000;

/// An explicit integer box `lower ≤ l ≤ upper`, optionally without `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanBox {
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    pub nonzero: bool,
}

impl ScanBox {
    pub fn candidates(&self) -> u128 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, up)| if up < lo { 0 } else { (up - lo + 1) as u128 })
            .fold(1u128, |acc, w| acc.saturating_mul(w))
    }
}

fn to_i128(x: &BigInt) -> Result<i128, OracleError> {
    x.to_i128().ok_or(OracleError::Overflow)
}

fn mul(a: i128, b: i128) -> Result<i128, OracleError> {
    a.checked_mul(b).ok_or(OracleError::Overflow)
}

fn add(a: i128, b: i128) -> Result<i128, OracleError> {
    a.checked_add(b).ok_or(OracleError::Overflow)
}

/// `χ(shift + l)` evaluator over a fixed shift.
struct Evaluator {
    n: usize,
    matrix: Vec<Vec<i128>>,
    kappa: Vec<i128>,
    denom: i128,
    /// `D · shift`.
    base: Vec<i128>,
}

impl Evaluator {
    fn new(f: &IntersectionForm, shift: &RatCycle) -> Result<Self, OracleError> {
        let n = f.len();
        let matrix = f
            .matrix()
            .iter()
            .map(|row| row.iter().map(to_i128).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let kappa = (0..n)
            .map(|i| add(matrix[i][i], 2))
            .collect::<Result<Vec<_>, _>>()?;
        let denom = to_i128(&shift.denominator())?;
        let d = BigRational::from_integer(BigInt::from(denom));
        let base = shift
            .coeffs()
            .iter()
            .map(|c| to_i128(&(c * &d).to_integer()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Evaluator {
            n,
            matrix,
            kappa,
            denom,
            base,
        })
    }

    /// `X = D (shift + l)`.
    fn scaled(&self, l: &[i64]) -> Result<Vec<i128>, OracleError> {
        (0..self.n)
            .map(|i| add(self.base[i], mul(self.denom, l[i] as i128)?))
            .collect()
    }

    /// `2 D² χ` from `X` and `I X`.
    fn twice_scaled_chi(&self, x: &[i128], ix: &[i128]) -> Result<i128, OracleError> {
        let mut acc = 0i128;
        for i in 0..self.n {
            acc = add(acc, -mul(x[i], ix[i])?)?;
            acc = add(acc, mul(self.denom, mul(x[i], self.kappa[i])?)?)?;
        }
        Ok(acc)
    }

    fn apply(&self, x: &[i128]) -> Result<Vec<i128>, OracleError> {
        (0..self.n)
            .map(|i| {
                let mut acc = 0i128;
                for j in 0..self.n {
                    acc = add(acc, mul(self.matrix[i][j], x[j])?)?;
                }
                Ok(acc)
            })
            .collect()
    }

    fn to_chi(&self, value: i128) -> BigRational {
        BigRational::new(
            BigInt::from(value),
            BigInt::from(2 * self.denom * self.denom),
        )
    }
}

/// Visits every point of the box in lexicographic order with its scaled
/// `2 D² χ` value.
fn scan<F>(ev: &Evaluator, b: &ScanBox, mut visit: F) -> Result<u64, OracleError>
where
    F: FnMut(&[i64], i128) -> Result<(), OracleError>,
{
    let n = ev.n;
    if b.candidates() > MAX_CANDIDATES {
        return Err(OracleError::BoxTooLarge {
            candidates: b.candidates(),
        });
    }
    if b.lower.iter().zip(&b.upper).any(|(lo, up)| up < lo) {
        return Ok(0);
    }
    let mut l = b.lower.clone();
    let mut x = ev.scaled(&l)?;
    let mut ix = ev.apply(&x)?;
    let mut count = 0u64;
    loop {
        if !(b.nonzero && l.iter().all(|&c| c == 0)) {
            visit(&l, ev.twice_scaled_chi(&x, &ix)?)?;
            count += 1;
        }
        // odometer step, last coordinate fastest
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(count);
            }
            k -= 1;
            if l[k] < b.upper[k] {
                l[k] += 1;
                x[k] = add(x[k], ev.denom)?;
                for i in 0..n {
                    ix[i] = add(ix[i], mul(ev.matrix[i][k], ev.denom)?)?;
                }
                break;
            }
            let back = (l[k] - b.lower[k]) as i128;
            l[k] = b.lower[k];
            x[k] = add(x[k], -mul(back, ev.denom)?)?;
            for i in 0..n {
                ix[i] = add(ix[i], -mul(mul(ev.matrix[i][k], ev.denom)?, back)?)?;
            }
        }
    }
}

/// Exhaustive minimum of `χ(shift + l)` over the box, with every minimizer.
pub fn brute_min_chi(
    f: &IntersectionForm,
    shift: &RatCycle,
    b: &ScanBox,
) -> Result<ChiMinResult, OracleError> {
    let ev = Evaluator::new(f, shift)?;
    let mut best: Option<i128> = None;
    let mut found: Vec<Vec<i64>> = Vec::new();
    let scanned = scan(&ev, b, |l, v| {
        match best {
            Some(m) if v > m => {}
            Some(m) if v == m => found.push(l.to_vec()),
            _ => {
                best = Some(v);
                found.clear();
                found.push(l.to_vec());
            }
        }
        Ok(())
    })?;
    let best = best.ok_or(OracleError::EmptyBox)?;
    let mut minimizers: Vec<Cycle> = found.iter().map(|l| Cycle::from_i64s(l)).collect();
    minimizers.sort();
    Ok(ChiMinResult {
        min_value: ev.to_chi(best),
        minimizers,
        stats: SearchStats {
            box_volume: BigUint::from(b.candidates()),
            nodes: scanned,
            leaves: scanned,
        },
    })
}

/// Every point of the box with `χ(shift + l) ≤ bound`, sorted.
pub fn brute_sublevel(
    f: &IntersectionForm,
    shift: &RatCycle,
    b: &ScanBox,
    bound: &BigRational,
) -> Result<Vec<(Cycle, BigRational)>, OracleError> {
    let ev = Evaluator::new(f, shift)?;
    let mut out = Vec::new();
    scan(&ev, b, |l, v| {
        let chi = ev.to_chi(v);
        if &chi <= bound {
            out.push((Cycle::from_i64s(l), chi));
        }
        Ok(())
    })?;
    out.sort();
    Ok(out)
}

/// `χ(shift)` by the same scaled formula.
pub fn brute_chi(f: &IntersectionForm, shift: &RatCycle) -> Result<BigRational, OracleError> {
    let ev = Evaluator::new(f, shift)?;
    let x = ev.scaled(&vec![0; ev.n])?;
    let ix = ev.apply(&x)?;
    Ok(ev.to_chi(ev.twice_scaled_chi(&x, &ix)?))
}

/// Definitional semigroup test: `l' = 0`, or `χ(l' + l) > χ(l')` for every
/// `0 < l ≤ radius · E`.
pub fn brute_semigroup(
    f: &IntersectionForm,
    shift: &RatCycle,
    radius: i64,
) -> Result<bool, OracleError> {
    if shift.is_zero() {
        return Ok(true);
    }
    let ev = Evaluator::new(f, shift)?;
    let x0 = ev.scaled(&vec![0; ev.n])?;
    let base = ev.twice_scaled_chi(&x0, &ev.apply(&x0)?)?;
    let b = ScanBox {
        lower: vec![0; ev.n],
        upper: vec![radius; ev.n],
        nonzero: true,
    };
    let mut member = true;
    scan(&ev, &b, |_, v| {
        if v <= base {
            member = false;
        }
        Ok(())
    })?;
    Ok(member)
}

fn in_lipman_cone(f: &IntersectionForm, l: &[i64]) -> bool {
    let m = f.matrix();
    (0..l.len()).all(|i| {
        let s: BigInt = (0..l.len()).map(|j| &m[i][j] * BigInt::from(l[j])).sum();
        !s.is_positive()
    })
}

/// Minimal nonzero element of `S = S' ∩ L` inside `0 ≤ l ≤ bound`, by scan.
/// Fails if the scanned part of `S \ 0` has no least element.
pub fn brute_zmin(f: &IntersectionForm, bound: &Cycle) -> Result<Cycle, OracleError> {
    let upper: Vec<i64> = bound
        .coeffs()
        .iter()
        .map(|c| c.to_i64().ok_or(OracleError::Overflow))
        .collect::<Result<_, _>>()?;
    let n = upper.len();
    let b = ScanBox {
        lower: vec![0; n],
        upper,
        nonzero: true,
    };
    let ev = Evaluator::new(f, &RatCycle::zero(n))?;
    let mut members: BTreeSet<Vec<i64>> = BTreeSet::new();
    scan(&ev, &b, |l, _| {
        if in_lipman_cone(f, l) {
            members.insert(l.to_vec());
        }
        Ok(())
    })?;
    let first = members.iter().next().ok_or(OracleError::EmptyBox)?.clone();
    let meet: Vec<i64> = members.iter().fold(first, |acc, l| {
        acc.iter().zip(l).map(|(a, b)| *a.min(b)).collect()
    });
    if members.contains(&meet) {
        Ok(Cycle::from_i64s(&meet))
    } else {
        Err(OracleError::NoLeastElement)
    }
}

/// A box around the continuous minimizer of `χ(shift + ·)` that contains
/// every `l` of the constraint region with `χ(shift + l) ≤ level`.
///
/// Computed from `(x_v)² ≤ Q(x) · Q⁻¹_vv` with `Q = -I` and
/// `Q(x) = 2 (χ - χ_min)`. The squared radius is doubled as a safety margin.
pub fn analytic_box(
    f: &IntersectionForm,
    shift: &RatCycle,
    lower: Option<&[i64]>,
    upper: Option<&[i64]>,
    nonzero: bool,
    level: &BigRational,
) -> Result<ScanBox, OracleError> {
    let n = f.len();
    let inv = f.inverse();
    // own Z_K from adjunction, cross-checked against the form
    let kappa: Vec<BigRational> = (0..n)
        .map(|i| BigRational::from_integer(&f.matrix()[i][i] + 2))
        .collect();
    let zk: Vec<BigRational> = (0..n)
        .map(|i| (0..n).map(|j| &inv[i][j] * &kappa[j]).sum())
        .collect();
    if zk.as_slice() != f.canonical_cycle().coeffs() {
        return Err(OracleError::Inconsistent("canonical cycle"));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let centre: Vec<BigRational> = (0..n)
        .map(|i| &zk[i] * &half - &shift.coeffs()[i])
        .collect();
    let zk_half = RatCycle::new(zk.iter().map(|z| z * &half).collect());
    let chi_min = brute_chi(f, &zk_half)?;
    let excess = level - chi_min;
    let mut lo_out = Vec::with_capacity(n);
    let mut up_out = Vec::with_capacity(n);
    for i in 0..n {
        let r2 = if excess.is_negative() {
            BigRational::zero()
        } else {
            BigRational::from_integer(BigInt::from(4)) * &excess * -&inv[i][i]
        };
        // ceil(sqrt(r2)) by integer search on the numerator/denominator
        let r = ceil_sqrt(&r2);
        let lo: BigInt = (&centre[i] - BigRational::from_integer(r.clone()))
            .floor()
            .to_integer()
            - 1;
        let up: BigInt = (&centre[i] + BigRational::from_integer(r))
            .ceil()
            .to_integer()
            + 1;
        let mut lo = lo.to_i64().ok_or(OracleError::Overflow)?;
        let mut up = up.to_i64().ok_or(OracleError::Overflow)?;
        if let Some(l) = lower {
            lo = lo.max(l[i]);
        }
        if let Some(u) = upper {
            up = up.min(u[i]);
        }
        lo_out.push(lo);
        up_out.push(up);
    }
    Ok(ScanBox {
        lower: lo_out,
        upper: up_out,
        nonzero,
    })
}

fn ceil_sqrt(r: &BigRational) -> BigInt {
    let p = r.numer() * r.denom();
    let q = r.denom();
    let mut s = p.sqrt();
    if &s * &s < p {
        s += 1;
    }
    // sqrt(p)/q rounded up
    let (quot, rem) = (&s / q, &s % q);
    if rem.is_zero() {
        quot
    } else {
        quot + 1
    }
}

/// `χ(shift + p)` at a feasible point `p` near the continuous minimizer:
/// the best of the clamped floor, ceiling and rounding of the centre, and
/// when zero is excluded, of `±E_v`.
pub fn feasible_level(
    f: &IntersectionForm,
    shift: &RatCycle,
    lower: Option<&[i64]>,
    upper: Option<&[i64]>,
    nonzero: bool,
) -> Result<BigRational, OracleError> {
    let n = f.len();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let centre: Vec<BigRational> = (0..n)
        .map(|i| &f.canonical_cycle().coeffs()[i] * &half - &shift.coeffs()[i])
        .collect();
    let clamp = |i: usize, x: i64| {
        let mut x = x;
        if let Some(l) = lower {
            x = x.max(l[i]);
        }
        if let Some(u) = upper {
            x = x.min(u[i]);
        }
        x
    };
    let allowed = |p: &[i64]| {
        (0..n).all(|i| lower.is_none_or(|l| l[i] <= p[i]) && upper.is_none_or(|u| p[i] <= u[i]))
            && !(nonzero && p.iter().all(|&c| c == 0))
    };
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    for round in [
        |c: &BigRational| c.floor(),
        |c: &BigRational| c.ceil(),
        |c: &BigRational| (c + BigRational::new(BigInt::one(), BigInt::from(2))).floor(),
    ] {
        let p = (0..n)
            .map(|i| {
                round(&centre[i])
                    .to_integer()
                    .to_i64()
                    .map(|x| clamp(i, x))
                    .ok_or(OracleError::Overflow)
            })
            .collect::<Result<Vec<_>, _>>()?;
        candidates.push(p);
    }
    for i in 0..n {
        for s in [1, -1] {
            let mut p = vec![0; n];
            p[i] = s;
            candidates.push(p);
        }
    }
    let mut best: Option<BigRational> = None;
    for p in candidates.iter().filter(|p| allowed(p)) {
        let x = shift + &Cycle::from_i64s(p);
        let v = brute_chi(f, &x)?;
        if best.as_ref().is_none_or(|b| &v < b) {
            best = Some(v);
        }
    }
    best.ok_or(OracleError::EmptyBox)
}

/// Oracle minimum over the constraint region: a feasible level, the
/// margin-doubled analytic box at that level, then an exhaustive tree
/// dynamic program over that box.
pub fn oracle_min_chi(
    f: &IntersectionForm,
    shift: &RatCycle,
    lower: Option<&[i64]>,
    upper: Option<&[i64]>,
    nonzero: bool,
) -> Result<ChiMinResult, OracleError> {
    let level = feasible_level(f, shift, lower, upper, nonzero)?;
    let b = analytic_box(f, shift, lower, upper, nonzero, &level)?;
    crate::tree_dp::tree_min_chi(f, shift, &b)
}

/// Semigroup membership with a complete search region: the analytic box for
/// `l > 0` at level `χ(l')`, scanned definitionally when small and by the
/// tree program otherwise.
pub fn oracle_semigroup(f: &IntersectionForm, shift: &RatCycle) -> Result<bool, OracleError> {
    if shift.is_zero() {
        return Ok(true);
    }
    let n = f.len();
    let level = f.chi(shift);
    let zeros = vec![0; n];
    let b = match analytic_box(f, shift, Some(&zeros), None, true, &level) {
        Ok(b) => b,
        Err(OracleError::EmptyBox) => return Ok(true),
        Err(e) => return Err(e),
    };
    let radius = b.upper.iter().copied().max().unwrap_or(0);
    let cube = (radius as u128 + 1).checked_pow(n as u32);
    if cube.is_some_and(|c| c <= 100_000) {
        return brute_semigroup(f, shift, radius);
    }
    match crate::tree_dp::tree_min_chi(f, shift, &b) {
        Ok(r) => Ok(r.min_value > level),
        Err(OracleError::EmptyBox) => Ok(true),
        Err(e) => Err(e),
    }
}
