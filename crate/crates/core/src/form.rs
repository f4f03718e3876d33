//! The intersection lattice of a plumbing graph.
//!
//! With `I` the intersection matrix (Euler numbers on the diagonal, `1` per
//! edge) the pairing on `L ⊗ Q` is `(x, y) = xᵀ I y`. The dual base elements
//! satisfy `(E_v*, E_w) = -δ_vw`, the canonical class `Z_K` satisfies the
//! adjunction relations `(Z_K, E_v) = E_v² + 2`, and the Riemann–Roch
//! expression is `χ(x) = -(x, x - Z_K) / 2`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cycle::{Cycle, RatCycle};
use crate::error::{Error, Result};
use crate::graph::{GraphError, ResolutionGraph};
use crate::linalg;

/// Intersection form of a validated, negative definite plumbing tree.
///
/// Internal positions follow ascending vertex id, so lexicographic order of
/// coefficient vectors is vertex-id-lexicographic order.
#[derive(Debug, Clone)]
pub struct IntersectionForm {
    graph: ResolutionGraph,
    ids: Vec<i64>,
    index: BTreeMap<i64, usize>,
    matrix: Vec<Vec<BigInt>>,
    inverse: Vec<Vec<BigRational>>,
    det_neg: BigInt,
    canonical: RatCycle,
    search_limit: Option<u64>,
}

impl IntersectionForm {
    /// Builds the exact matrix, its inverse and `det(-I)`, rejecting forms
    /// that are not negative definite.
    pub fn build(graph: &ResolutionGraph) -> std::result::Result<Self, GraphError> {
        let mut ids: Vec<i64> = graph.vertices().iter().map(|v| v.id).collect();
        ids.sort_unstable();
        let index: BTreeMap<i64, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let n = ids.len();
        let mut matrix = vec![vec![BigInt::zero(); n]; n];
        for v in graph.vertices() {
            let i = index[&v.id];
            matrix[i][i] = BigInt::from(v.euler);
        }
        for &(a, b) in graph.edges() {
            let (i, j) = (index[&a], index[&b]);
            matrix[i][j] = BigInt::one();
            matrix[j][i] = BigInt::one();
        }

        let neg: Vec<Vec<BigInt>> = matrix
            .iter()
            .map(|r| r.iter().map(|x| -x).collect())
            .collect();
        let minors = linalg::leading_minors_until_nonpositive(&neg);
        if minors.len() < n || !minors[n - 1].is_positive() {
            return Err(GraphError::NotNegativeDefinite {
                minor_index: minors.len(),
            });
        }
        let det_neg = minors[n - 1].clone();

        let inverse = linalg::invert(&linalg::to_rational(&matrix))
            .expect("negative definite matrix is invertible");
        let adjunction: Vec<BigRational> = (0..n)
            .map(|i| BigRational::from_integer(&matrix[i][i] + 2))
            .collect();
        let canonical = RatCycle::new(
            (0..n)
                .map(|i| (0..n).map(|j| &inverse[i][j] * &adjunction[j]).sum())
                .collect(),
        );

        Ok(IntersectionForm {
            graph: graph.clone(),
            ids,
            index,
            matrix,
            inverse,
            det_neg,
            canonical,
            search_limit: None,
        })
    }

    /// Caps the number of search nodes any single lattice enumeration on
    /// this form may visit.
    pub fn with_search_limit(mut self, limit: Option<u64>) -> Self {
        self.search_limit = limit;
        self
    }

    pub fn search_limit(&self) -> Option<u64> {
        self.search_limit
    }

    pub fn graph(&self) -> &ResolutionGraph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Vertex ids in internal (ascending) order.
    pub fn ids(&self) -> &[i64] {
        &self.ids
    }

    pub fn id_at(&self, i: usize) -> i64 {
        self.ids[i]
    }

    pub fn index_of(&self, id: i64) -> Result<usize> {
        self.index.get(&id).copied().ok_or(Error::NoSuchVertex(id))
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.matrix
    }

    pub fn inverse(&self) -> &[Vec<BigRational>] {
        &self.inverse
    }

    /// `det(-I) = |L'/L| = |H_1(M)|`.
    pub fn det_neg(&self) -> &BigInt {
        &self.det_neg
    }

    pub fn euler_at(&self, i: usize) -> &BigInt {
        &self.matrix[i][i]
    }

    pub fn neighbors_at(&self, i: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| j != i && !self.matrix[i][j].is_zero())
            .collect()
    }

    /// No `-1` vertex.
    pub fn is_minimal(&self) -> bool {
        (0..self.len()).all(|i| self.matrix[i][i] != BigInt::from(-1))
    }

    /// `Z_K ∈ L`.
    pub fn is_numerically_gorenstein(&self) -> bool {
        self.canonical.is_integral()
    }

    pub fn check_len(&self, found: usize) -> Result<()> {
        if found == self.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.len(),
                found,
            })
        }
    }

    /// `E_v` for the vertex with the given id.
    pub fn vertex_cycle(&self, id: i64) -> Result<Cycle> {
        Ok(Cycle::unit(self.len(), self.index_of(id)?))
    }

    /// Builds a cycle from `id → coefficient`; missing ids get zero.
    pub fn cycle_from_map(&self, coeffs: &BTreeMap<i64, BigInt>) -> Result<Cycle> {
        let mut out = vec![BigInt::zero(); self.len()];
        for (id, c) in coeffs {
            out[self.index_of(*id)?] = c.clone();
        }
        Ok(Cycle::new(out))
    }

    pub fn rat_cycle_from_map(&self, coeffs: &BTreeMap<i64, BigRational>) -> Result<RatCycle> {
        let mut out = vec![BigRational::zero(); self.len()];
        for (id, c) in coeffs {
            out[self.index_of(*id)?] = c.clone();
        }
        Ok(RatCycle::new(out))
    }

    /// The dual base element `E_v*` at internal position `i`.
    pub fn dual_cycle_at(&self, i: usize) -> RatCycle {
        RatCycle::new((0..self.len()).map(|r| -&self.inverse[r][i]).collect())
    }

    /// `E_v*`, characterized by `(E_v*, E_w) = -δ_vw`.
    pub fn dual_cycle(&self, id: i64) -> Result<RatCycle> {
        Ok(self.dual_cycle_at(self.index_of(id)?))
    }

    /// The anticanonical cycle `Z_K`.
    pub fn canonical_cycle(&self) -> &RatCycle {
        &self.canonical
    }

    /// `(x, E_v)` for the vertex at position `i`.
    pub fn pairing_with_vertex(&self, x: &RatCycle, i: usize) -> BigRational {
        let row = &self.matrix[i];
        x.coeffs()
            .iter()
            .zip(row)
            .filter(|(_, m)| !m.is_zero())
            .map(|(c, m)| c * BigRational::from_integer(m.clone()))
            .sum()
    }

    /// `(l, E_v)` for an integral cycle.
    pub fn pairing_with_vertex_int(&self, l: &Cycle, i: usize) -> BigInt {
        let row = &self.matrix[i];
        l.coeffs()
            .iter()
            .zip(row)
            .filter(|(_, m)| !m.is_zero())
            .map(|(c, m)| c * m)
            .sum()
    }

    /// The vector `((x, E_v))_v`.
    pub fn pairings_with_vertices(&self, x: &RatCycle) -> Vec<BigRational> {
        (0..self.len())
            .map(|i| self.pairing_with_vertex(x, i))
            .collect()
    }

    pub fn pairing(&self, x: &RatCycle, y: &RatCycle) -> BigRational {
        assert_eq!(x.len(), self.len(), "cycle length mismatch");
        assert_eq!(y.len(), self.len(), "cycle length mismatch");
        (0..self.len())
            .map(|i| &x.coeffs()[i] * self.pairing_with_vertex(y, i))
            .sum()
    }

    pub fn pairing_int(&self, x: &Cycle, y: &Cycle) -> BigInt {
        (0..self.len())
            .map(|i| &x.coeffs()[i] * self.pairing_with_vertex_int(y, i))
            .sum()
    }

    pub fn self_intersection(&self, x: &RatCycle) -> BigRational {
        self.pairing(x, x)
    }

    /// `χ(x) = -(x, x - Z_K) / 2`.
    pub fn chi(&self, x: &RatCycle) -> BigRational {
        let diff = x - &self.canonical;
        -self.pairing(x, &diff) / BigRational::from_integer(BigInt::from(2))
    }

    /// `χ` on integral cycles; the value is always an integer there.
    pub fn chi_int(&self, l: &Cycle) -> BigInt {
        // χ(l) = (-(l,l) + Σ l_v (E_v² + 2)) / 2
        let mut twice = -self.pairing_int(l, l);
        for (i, c) in l.coeffs().iter().enumerate() {
            twice += c * (&self.matrix[i][i] + 2);
        }
        debug_assert!(twice.is_even());
        twice / 2
    }

    /// Lipman cone `S'`: `(x, E_v) ≤ 0` for every vertex.
    pub fn in_lipman_cone(&self, x: &RatCycle) -> bool {
        (0..self.len()).all(|i| !self.pairing_with_vertex(x, i).is_positive())
    }

    /// `x ∈ L'`: every pairing `(x, E_v)` is an integer.
    pub fn in_dual_lattice(&self, x: &RatCycle) -> bool {
        x.len() == self.len()
            && (0..self.len()).all(|i| self.pairing_with_vertex(x, i).is_integer())
    }

    /// Coordinates `a_v = -(x, E_v)` of `x` in the dual basis.
    pub fn dual_coordinates(&self, x: &RatCycle) -> Vec<BigRational> {
        (0..self.len())
            .map(|i| -self.pairing_with_vertex(x, i))
            .collect()
    }

    /// Human-readable name of the vertex at position `i`.
    pub fn vertex_label(&self, i: usize) -> String {
        format!("v{}", self.ids[i])
    }

    /// Cycle coefficients keyed by vertex id.
    pub fn cycle_to_map(&self, l: &Cycle) -> BTreeMap<i64, BigInt> {
        self.ids
            .iter()
            .copied()
            .zip(l.coeffs().iter().cloned())
            .collect()
    }

    pub fn rat_cycle_to_map(&self, x: &RatCycle) -> BTreeMap<i64, BigRational> {
        self.ids
            .iter()
            .copied()
            .zip(x.coeffs().iter().cloned())
            .collect()
    }
}

/// `build_form`: exact matrix, inverse, and `det(-I)` of a graph.
pub fn build_form(graph: &ResolutionGraph) -> std::result::Result<IntersectionForm, GraphError> {
    IntersectionForm::build(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn single_minus_two() {
        let g = ResolutionGraph::from_pairs(&[(1, -2)], &[]).unwrap();
        let f = build_form(&g).unwrap();
        assert_eq!(f.matrix()[0][0], BigInt::from(-2));
        assert_eq!(*f.det_neg(), BigInt::from(2));
        assert_eq!(f.dual_cycle(1).unwrap(), RatCycle::new(vec![q(1, 2)]));
        assert!(f.canonical_cycle().is_zero());
    }

    #[test]
    fn single_minus_three_canonical() {
        let g = ResolutionGraph::from_pairs(&[(1, -3)], &[]).unwrap();
        let f = build_form(&g).unwrap();
        assert_eq!(f.canonical_cycle(), &RatCycle::new(vec![q(1, 3)]));
        assert_eq!(f.chi(f.canonical_cycle()), BigRational::zero());
    }

    #[test]
    fn positive_vertex_is_rejected() {
        let g = ResolutionGraph::from_pairs(&[(1, 1)], &[]).unwrap();
        assert_eq!(
            build_form(&g).unwrap_err(),
            GraphError::NotNegativeDefinite { minor_index: 1 }
        );
    }

    #[test]
    fn indefinite_chain_reports_failing_minor() {
        // -1 - -1 has det(-I) = 0
        let g = ResolutionGraph::from_pairs(&[(1, -1), (2, -1)], &[(1, 2)]).unwrap();
        assert_eq!(
            build_form(&g).unwrap_err(),
            GraphError::NotNegativeDefinite { minor_index: 2 }
        );
    }

    #[test]
    fn a2_dual_cycle() {
        let f = build_form(&catalog::a_n(2)).unwrap();
        assert_eq!(
            f.dual_cycle(1).unwrap(),
            RatCycle::new(vec![q(2, 3), q(1, 3)])
        );
        assert_eq!(*f.det_neg(), BigInt::from(3));
    }

    #[test]
    fn e8_is_unimodular() {
        let f = build_form(&catalog::e_n(8)).unwrap();
        assert_eq!(*f.det_neg(), BigInt::from(1));
        assert!(f.canonical_cycle().is_zero());
    }

    #[test]
    fn dual_cycles_are_dual_and_positive() {
        let f = build_form(&catalog::seifert_2_3_17()).unwrap();
        for u in 0..f.len() {
            let eu = f.dual_cycle_at(u);
            assert!(eu.coeffs().iter().all(|c| c.is_positive()));
            assert!(f.in_lipman_cone(&eu));
            for v in 0..f.len() {
                let expected = if u == v { q(-1, 1) } else { q(0, 1) };
                assert_eq!(f.pairing_with_vertex(&eu, v), expected);
            }
        }
    }

    #[test]
    fn chi_int_agrees_with_rational_chi() {
        let f = build_form(&catalog::minus13_two_nodes()).unwrap();
        let l = Cycle::from_i64s(&[1, -2, 3, 0, 2, -1, 1]);
        assert_eq!(BigRational::from_integer(f.chi_int(&l)), f.chi(&l.to_rat()));
    }

    #[test]
    fn dual_lattice_membership() {
        let f = build_form(&catalog::a_n(3)).unwrap();
        let e1 = f.dual_cycle(1).unwrap();
        assert!(f.in_dual_lattice(&e1));
        let half = e1.scale(&q(1, 2));
        assert!(!f.in_dual_lattice(&half));
    }
}
