//! Named plumbing graphs used by tests, the CLI and the acceptance suite.

use crate::graph::ResolutionGraph;

/// A chain with the given Euler numbers, ids `1..=len`.
pub fn chain(eulers: &[i64]) -> ResolutionGraph {
    let vertices: Vec<(i64, i64)> = eulers
        .iter()
        .enumerate()
        .map(|(i, &e)| (i as i64 + 1, e))
        .collect();
    let edges: Vec<(i64, i64)> = (1..eulers.len() as i64).map(|i| (i, i + 1)).collect();
    ResolutionGraph::from_pairs(&vertices, &edges).expect("chain is a tree")
}

/// A star: central vertex `1`, then each arm numbered outward from the
/// centre, arms in the given order.
pub fn star(centre: i64, arms: &[&[i64]]) -> ResolutionGraph {
    let mut vertices = vec![(1, centre)];
    let mut edges = Vec::new();
    let mut next = 2;
    for arm in arms {
        let mut prev = 1;
        for &e in arm.iter() {
            vertices.push((next, e));
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    ResolutionGraph::from_pairs(&vertices, &edges).expect("star is a tree")
}

/// `A_n`: a chain of `n` vertices with Euler number `-2`.
pub fn a_n(n: usize) -> ResolutionGraph {
    assert!(n >= 1);
    chain(&vec![-2; n]).with_name(format!("A{n}"))
}

/// `D_n`, `n ≥ 4`: chain `1..n-1` with vertex `n` attached to `n-2`.
pub fn d_n(n: usize) -> ResolutionGraph {
    assert!(n >= 4);
    let n = n as i64;
    let vertices: Vec<(i64, i64)> = (1..=n).map(|i| (i, -2)).collect();
    let mut edges: Vec<(i64, i64)> = (1..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 2, n));
    ResolutionGraph::from_pairs(&vertices, &edges)
        .expect("D_n is a tree")
        .with_name(format!("D{n}"))
}

/// `E_6`, `E_7`, `E_8`: chain `1..n-1` with vertex `n` attached to `3`.
pub fn e_n(n: usize) -> ResolutionGraph {
    assert!((6..=8).contains(&n));
    let n = n as i64;
    let vertices: Vec<(i64, i64)> = (1..=n).map(|i| (i, -2)).collect();
    let mut edges: Vec<(i64, i64)> = (1..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((3, n));
    ResolutionGraph::from_pairs(&vertices, &edges)
        .expect("E_n is a tree")
        .with_name(format!("E{n}"))
}

/// Every ADE graph with at most `max_vertices` vertices.
pub fn ade(max_vertices: usize) -> Vec<ResolutionGraph> {
    let mut out: Vec<ResolutionGraph> = (1..=max_vertices).map(a_n).collect();
    out.extend((4..=max_vertices).map(d_n));
    out.extend((6..=max_vertices.min(8)).map(e_n));
    out
}

/// The integral homology sphere `Σ(2,3,17)`: an `E_8` configuration of
/// `-2` curves whose long arm continues with a `-3` vertex (id 2) and a
/// final `-2` end (id 1). Ids `3..=9` run along the chain away from vertex 2
/// and vertex 10 is the leaf on vertex 7.
pub fn seifert_2_3_17() -> ResolutionGraph {
    let mut vertices = vec![(1, -2), (2, -3)];
    vertices.extend((3..=10).map(|i| (i, -2)));
    let mut edges: Vec<(i64, i64)> = (1..9).map(|i| (i, i + 1)).collect();
    edges.push((7, 10));
    ResolutionGraph::from_pairs(&vertices, &edges)
        .expect("tree")
        .with_name("sigma_2_3_17")
}

/// The chain `-3, -1, -13, -1, -3` (ids 1..=5) with a `-2` leaf on each
/// `-1` vertex (ids 6 on 2, 7 on 4).
pub fn minus13_two_nodes() -> ResolutionGraph {
    ResolutionGraph::from_pairs(
        &[
            (1, -3),
            (2, -1),
            (3, -13),
            (4, -1),
            (5, -3),
            (6, -2),
            (7, -2),
        ],
        &[(1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (4, 7)],
    )
    .expect("tree")
    .with_name("minus13_two_nodes")
}

/// Minimal, numerically Gorenstein elliptic graphs: `-2` stars with three
/// arms, plus `Σ(2,3,17)`.
pub fn gorenstein_elliptic() -> Vec<ResolutionGraph> {
    let stars: [(&str, [&[i64]; 3]); 6] = [
        ("ell_2_222_223", [&[-2], &[-2, -2, -2], &[-2, -2, -3]]),
        ("ell_2_223_223", [&[-2], &[-2, -2, -3], &[-2, -2, -3]]),
        ("ell_22_22_23", [&[-2, -2], &[-2, -2], &[-2, -3]]),
        ("ell_22_23_23", [&[-2, -2], &[-2, -3], &[-2, -3]]),
        ("ell_23_23_23", [&[-2, -3], &[-2, -3], &[-2, -3]]),
        ("ell_23_23_222", [&[-2, -3], &[-2, -3], &[-2, -2, -2]]),
    ];
    let mut out: Vec<ResolutionGraph> = stars
        .iter()
        .map(|(name, arms)| star(-2, arms).with_name(*name))
        .collect();
    out.push(seifert_2_3_17());
    out
}
