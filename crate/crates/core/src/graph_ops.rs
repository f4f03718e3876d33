//! Blow-ups with their pullback maps, and restriction of Chern classes to
//! subgraphs.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use crate::cycle::{Cycle, RatCycle};
use crate::error::{Error, Result};
use crate::form::{build_form, IntersectionForm};
use crate::graph::{ResolutionGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowUpResult {
    pub graph: ResolutionGraph,
    pub new_vertex: i64,
    /// Vertices whose pullback picks up `E_new`: one for a generic point,
    /// two for an intersection point.
    pub centre: Vec<i64>,
}

impl BlowUpResult {
    /// `b*E_v` as a list of new vertex ids, each with coefficient 1.
    pub fn pullback_of_vertex(&self, v: i64) -> Vec<i64> {
        if self.centre.contains(&v) {
            vec![v, self.new_vertex]
        } else {
            vec![v]
        }
    }

    /// `b*x`: old coefficients are kept and `E_new` gets the sum of the
    /// coefficients of the centre.
    pub fn pull_back(
        &self,
        old: &IntersectionForm,
        new: &IntersectionForm,
        x: &RatCycle,
    ) -> Result<RatCycle> {
        old.check_len(x.len())?;
        let mut coeffs = vec![BigRational::zero(); new.len()];
        for (i, c) in x.coeffs().iter().enumerate() {
            for id in self.pullback_of_vertex(old.id_at(i)) {
                coeffs[new.index_of(id)?] += c;
            }
        }
        Ok(RatCycle::new(coeffs))
    }

    pub fn pull_back_cycle(
        &self,
        old: &IntersectionForm,
        new: &IntersectionForm,
        l: &Cycle,
    ) -> Result<Cycle> {
        let x = self.pull_back(old, new, &l.to_rat())?;
        x.to_cycle()
            .ok_or_else(|| Error::Invariant("pullback of an integral cycle".into()))
    }

    /// `E_new` in the new lattice.
    pub fn exceptional(&self, new: &IntersectionForm) -> Result<Cycle> {
        new.vertex_cycle(self.new_vertex)
    }
}

fn finish(
    g: &ResolutionGraph,
    vertices: Vec<Vertex>,
    edges: Vec<(i64, i64)>,
    new_vertex: i64,
    centre: Vec<i64>,
) -> Result<BlowUpResult> {
    let graph = ResolutionGraph::new(vertices, edges)?;
    let result = BlowUpResult {
        graph,
        new_vertex,
        centre,
    };
    let old = build_form(g)?;
    let new = build_form(&result.graph)?;
    for i in 0..old.len() {
        let bi = result.pull_back(&old, &new, &old.vertex_cycle(old.id_at(i))?.to_rat())?;
        for j in i..old.len() {
            let bj = result.pull_back(&old, &new, &old.vertex_cycle(old.id_at(j))?.to_rat())?;
            if new.pairing(&bi, &bj) != BigRational::from_integer(old.matrix()[i][j].clone()) {
                return Err(Error::Invariant(
                    "pullback does not preserve the pairing".into(),
                ));
            }
        }
    }
    Ok(result)
}

/// Blow-up of a generic point of `E_v`: `e_v ↦ e_v - 1` and a new `-1`
/// vertex attached to `v`.
pub fn blow_up_generic(g: &ResolutionGraph, v: i64) -> Result<BlowUpResult> {
    if !g.contains(v) {
        return Err(Error::NoSuchVertex(v));
    }
    let new_vertex = g.max_id() + 1;
    let mut vertices: Vec<Vertex> = g
        .vertices()
        .iter()
        .map(|x| Vertex {
            id: x.id,
            euler: if x.id == v { x.euler - 1 } else { x.euler },
        })
        .collect();
    vertices.push(Vertex {
        id: new_vertex,
        euler: -1,
    });
    let mut edges = g.edges().to_vec();
    edges.push((v, new_vertex));
    finish(g, vertices, edges, new_vertex, vec![v])
}

/// Blow-up of the intersection point `E_u ∩ E_w`: both Euler numbers drop
/// by one and the edge is subdivided by a new `-1` vertex.
pub fn blow_up_edge(g: &ResolutionGraph, u: i64, w: i64) -> Result<BlowUpResult> {
    if !g.has_edge(u, w) {
        return Err(Error::NoSuchEdge(u, w));
    }
    let new_vertex = g.max_id() + 1;
    let mut vertices: Vec<Vertex> = g
        .vertices()
        .iter()
        .map(|x| Vertex {
            id: x.id,
            euler: if x.id == u || x.id == w {
                x.euler - 1
            } else {
                x.euler
            },
        })
        .collect();
    vertices.push(Vertex {
        id: new_vertex,
        euler: -1,
    });
    let mut edges: Vec<(i64, i64)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| !((a == u && b == w) || (a == w && b == u)))
        .collect();
    edges.push((u, new_vertex));
    edges.push((new_vertex, w));
    finish(g, vertices, edges, new_vertex, vec![u, w])
}

/// `R₁`: writes `l' = Σ a_v E_v*` with `a_v = -(l', E_v)` and keeps the terms
/// with `v ∈ sub`, read in the dual basis of the subgraph.
pub fn restrict_class(
    f: &IntersectionForm,
    sub: &BTreeSet<i64>,
    l: &RatCycle,
) -> Result<(IntersectionForm, RatCycle)> {
    f.check_len(l.len())?;
    for &id in sub {
        f.index_of(id)?;
    }
    if f.graph().components(sub).len() != 1 {
        return Err(Error::DisconnectedSubgraph);
    }
    let sub_form = build_form(&f.graph().induced_subgraph(sub)?)?;
    let a = f.dual_coordinates(l);
    let mut out = RatCycle::zero(sub_form.len());
    for (j, &id) in sub_form.ids().iter().enumerate() {
        let coeff = &a[f.index_of(id)?];
        if !coeff.is_zero() {
            out = &out + &sub_form.dual_cycle_at(j).scale(coeff);
        }
    }
    Ok((sub_form, out))
}
