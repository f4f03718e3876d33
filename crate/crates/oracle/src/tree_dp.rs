//! Exhaustive minimization over a box by dynamic programming on the tree.
//!
//! With `X = D (shift + l)`, `2 D² χ = Σ_v (-e_v X_v² + D κ_v X_v) - 2 Σ_{uw} X_u X_w`
//! splits into vertex and edge terms, so the minimum over a product box is a
//! min-sum problem on the tree. Every point of the box is accounted for; the
//! full minimizer set is recovered by backtracking through tie tables.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use plumbing_core::{ChiMinResult, Cycle, IntersectionForm, RatCycle, SearchStats};

use crate::brute::ScanBox;
use crate::OracleError;

/// Guard on `Σ_edges W_u W_w`, the number of edge evaluations.
pub const MAX_WORK: u128 = 100_000_000;

const INF: i128 = i128::MAX;

fn checked(x: Option<i128>) -> Result<i128, OracleError> {
    x.ok_or(OracleError::Overflow)
}

struct Tables {
    /// `acc[v][x][j][f]`: best over `v`, its first `j` children and their
    /// subtrees, with `l_v = lo_v + x` and nonzero flag `f`.
    acc: Vec<Vec<Vec<[i128; 2]>>>,
    children: Vec<Vec<usize>>,
    lo: Vec<i64>,
    width: Vec<usize>,
    scaled: Vec<Vec<i128>>,
    denom: i128,
}

impl Tables {
    fn best(&self, v: usize, x: usize) -> [i128; 2] {
        *self.acc[v][x].last().unwrap()
    }

    fn pair(&self, v: usize, x: usize, c: usize, y: usize) -> Result<i128, OracleError> {
        let p = checked(self.scaled[v][x].checked_mul(self.scaled[c][y]))?;
        checked(p.checked_mul(-2))
    }

    /// All subtree assignments below and including `v` with `l_v` fixed,
    /// flag `f` and optimal cost.
    fn enumerate(
        &self,
        v: usize,
        x: usize,
        f: usize,
    ) -> Result<Vec<Vec<(usize, i64)>>, OracleError> {
        self.back(v, x, self.children[v].len(), f)
    }

    fn back(
        &self,
        v: usize,
        x: usize,
        j: usize,
        f: usize,
    ) -> Result<Vec<Vec<(usize, i64)>>, OracleError> {
        let target = self.acc[v][x][j][f];
        if target == INF {
            return Ok(Vec::new());
        }
        if j == 0 {
            return Ok(vec![vec![(v, self.lo[v] + x as i64)]]);
        }
        let c = self.children[v][j - 1];
        let mut out = Vec::new();
        for fp in 0..2 {
            let prev = self.acc[v][x][j - 1][fp];
            if prev == INF {
                continue;
            }
            for y in 0..self.width[c] {
                let bc = self.best(c, y);
                for fc in 0..2 {
                    if fp | fc != f || bc[fc] == INF {
                        continue;
                    }
                    let total = checked(prev.checked_add(self.pair(v, x, c, y)?))?;
                    let total = checked(total.checked_add(bc[fc]))?;
                    if total != target {
                        continue;
                    }
                    let left = self.back(v, x, j - 1, fp)?;
                    let right = self.enumerate(c, y, fc)?;
                    for a in &left {
                        for b in &right {
                            let mut merged = a.clone();
                            merged.extend_from_slice(b);
                            out.push(merged);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Minimum of `χ(shift + l)` over every point of the box, with all
/// minimizers.
pub fn tree_min_chi(
    f: &IntersectionForm,
    shift: &RatCycle,
    b: &ScanBox,
) -> Result<ChiMinResult, OracleError> {
    let n = f.len();
    if b.lower.iter().zip(&b.upper).any(|(lo, up)| up < lo) {
        return Err(OracleError::EmptyBox);
    }
    let width: Vec<usize> = (0..n)
        .map(|i| (b.upper[i] - b.lower[i] + 1) as usize)
        .collect();

    let mut adjacency = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && f.matrix()[i][j] != BigInt::from(0) {
                adjacency[i].push(j);
            }
        }
    }
    let work: u128 = (0..n)
        .flat_map(|i| adjacency[i].iter().map(move |&j| (i, j)))
        .filter(|(i, j)| i < j)
        .map(|(i, j)| width[i] as u128 * width[j] as u128)
        .sum();
    if work > MAX_WORK {
        return Err(OracleError::BoxTooLarge { candidates: work });
    }

    // root at 0; children in ascending order; post-order by reversed BFS
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut k = 0;
    while k < order.len() {
        let v = order[k];
        for &w in &adjacency[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                order.push(w);
            }
        }
        k += 1;
    }
    let mut children = vec![Vec::new(); n];
    for &v in &order[1..] {
        children[parent[v]].push(v);
    }

    let denom = shift.denominator().to_i128().ok_or(OracleError::Overflow)?;
    let d = BigRational::from_integer(BigInt::from(denom));
    let mut scaled = Vec::with_capacity(n);
    let mut unary = Vec::with_capacity(n);
    for i in 0..n {
        let base = (&shift.coeffs()[i] * &d)
            .to_integer()
            .to_i128()
            .ok_or(OracleError::Overflow)?;
        let e = f.matrix()[i][i].to_i128().ok_or(OracleError::Overflow)?;
        let kappa = e + 2;
        let mut xs = Vec::with_capacity(width[i]);
        let mut us = Vec::with_capacity(width[i]);
        for x in 0..width[i] {
            let l = (b.lower[i] + x as i64) as i128;
            let big_x = checked(base.checked_add(checked(denom.checked_mul(l))?))?;
            let sq = checked(big_x.checked_mul(big_x))?;
            let quad = checked(sq.checked_mul(-e))?;
            let lin = checked(checked(denom.checked_mul(kappa))?.checked_mul(big_x))?;
            xs.push(big_x);
            us.push(checked(quad.checked_add(lin))?);
        }
        scaled.push(xs);
        unary.push(us);
    }

    let mut t = Tables {
        acc: vec![Vec::new(); n],
        children,
        lo: b.lower.clone(),
        width: width.clone(),
        scaled,
        denom,
    };
    for &v in order.iter().rev() {
        let mut per_x = Vec::with_capacity(width[v]);
        for x in 0..width[v] {
            let nz = usize::from(b.lower[v] + x as i64 != 0);
            let mut cur = [INF; 2];
            cur[nz] = unary[v][x];
            let mut steps = vec![cur];
            for &c in &t.children[v] {
                let mut next = [INF; 2];
                for fp in 0..2 {
                    if cur[fp] == INF {
                        continue;
                    }
                    for y in 0..width[c] {
                        let bc = t.best(c, y);
                        let pair = t.pair(v, x, c, y)?;
                        for fc in 0..2 {
                            if bc[fc] == INF {
                                continue;
                            }
                            let total =
                                checked(checked(cur[fp].checked_add(pair))?.checked_add(bc[fc]))?;
                            let slot = &mut next[fp | fc];
                            if total < *slot {
                                *slot = total;
                            }
                        }
                    }
                }
                cur = next;
                steps.push(cur);
            }
            per_x.push(steps);
        }
        t.acc[v] = per_x;
    }

    let flags: &[usize] = if b.nonzero { &[1] } else { &[0, 1] };
    let mut best = INF;
    for x in 0..width[0] {
        for &fl in flags {
            best = best.min(t.best(0, x)[fl]);
        }
    }
    if best == INF {
        return Err(OracleError::EmptyBox);
    }
    let mut minimizers = Vec::new();
    for x in 0..width[0] {
        for &fl in flags {
            if t.best(0, x)[fl] == best {
                for assignment in t.enumerate(0, x, fl)? {
                    let map: BTreeMap<usize, i64> = assignment.into_iter().collect();
                    minimizers.push(Cycle::from_i64s(&map.values().copied().collect::<Vec<_>>()));
                }
            }
        }
    }
    minimizers.sort();
    Ok(ChiMinResult {
        min_value: BigRational::new(BigInt::from(best), BigInt::from(2 * t.denom * t.denom)),
        minimizers,
        stats: SearchStats {
            box_volume: BigUint::from(b.candidates()),
            nodes: work as u64,
            leaves: 0,
        },
    })
}
