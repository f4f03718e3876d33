//! The fixed graph corpus and seeded random negative definite trees.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use plumbing_core::catalog::{self, star};
use plumbing_core::{build_form, ResolutionGraph, Vertex};

/// Seed for every random graph in the standard corpus.
pub const CORPUS_SEED: u64 = 0x5eed_c0de;

/// Non-ADE star-shaped graphs with at most 8 vertices, mixing rational and
/// non-rational ones.
pub fn stars() -> Vec<ResolutionGraph> {
    let specs: [(&str, i64, &[&[i64]]); 8] = [
        ("star_1_2_3_7", -1, &[&[-2], &[-3], &[-7]]),
        ("star_2_3333", -2, &[&[-3], &[-3], &[-3], &[-3]]),
        ("star_3_33_3", -3, &[&[-3, -2], &[-3], &[-2]]),
        ("star_2_2_3_3", -2, &[&[-2], &[-3], &[-3]]),
        ("star_1_2_3_11", -1, &[&[-2], &[-3], &[-11]]),
        ("star_4_222", -4, &[&[-2], &[-2], &[-2]]),
        ("star_1_3_3_4", -1, &[&[-3], &[-3], &[-4]]),
        ("star_3_22222", -3, &[&[-2], &[-2], &[-2], &[-2], &[-2]]),
    ];
    specs
        .iter()
        .map(|(name, c, arms)| star(*c, arms).with_name(*name))
        .filter(|g| build_form(g).is_ok())
        .collect()
}

/// Chains that are not ADE.
pub fn chains() -> Vec<ResolutionGraph> {
    vec![
        catalog::chain(&[-3]).with_name("chain_3"),
        catalog::chain(&[-5, -2, -3]).with_name("chain_5_2_3"),
        catalog::chain(&[-2, -1, -3]).with_name("chain_2_1_3"),
    ]
}

/// A random negative definite tree with `n` vertices. Euler numbers are
/// drawn from `-1..=-4` with `-2` most likely; samples that are not negative
/// definite are rejected.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> ResolutionGraph {
    loop {
        let edges: Vec<(i64, i64)> = (2..=n as i64).map(|i| (rng.gen_range(1..i), i)).collect();
        let vertices: Vec<Vertex> = (1..=n as i64)
            .map(|id| {
                let euler = match rng.gen_range(0..10) {
                    0 => -1,
                    1..=5 => -2,
                    6..=8 => -3,
                    _ => -4,
                };
                Vertex { id, euler }
            })
            .collect();
        let g = ResolutionGraph::new(vertices, edges).expect("random tree");
        if build_form(&g).is_ok() {
            return g;
        }
    }
}

/// A random rational tree: `e_v ≤ -max(deg v, 1)` with at least one strict
/// inequality, so that `E` lies in the Lipman cone with `χ(E) = 1`.
pub fn random_rational_tree(rng: &mut ChaCha8Rng, n: usize) -> ResolutionGraph {
    loop {
        let edges: Vec<(i64, i64)> = (2..=n as i64).map(|i| (rng.gen_range(1..i), i)).collect();
        let mut degree = vec![0i64; n + 1];
        for &(a, b) in &edges {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let vertices: Vec<Vertex> = (1..=n as i64)
            .map(|id| Vertex {
                id,
                euler: -degree[id as usize].max(1) - rng.gen_range(0..=2),
            })
            .collect();
        let g = ResolutionGraph::new(vertices, edges).expect("random tree");
        if build_form(&g).is_ok() {
            return g;
        }
    }
}

pub fn random_trees(seed: u64, count: usize, min_n: usize, max_n: usize) -> Vec<ResolutionGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let n = rng.gen_range(min_n..=max_n);
            random_tree(&mut rng, n).with_name(format!("random_{k}"))
        })
        .collect()
}

pub fn random_rational_trees(
    seed: u64,
    count: usize,
    min_n: usize,
    max_n: usize,
) -> Vec<ResolutionGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let n = rng.gen_range(min_n..=max_n);
            random_rational_tree(&mut rng, n).with_name(format!("random_rational_{k}"))
        })
        .collect()
}

/// The standard corpus: small ADE graphs, stars, chains, the elliptic
/// family, both worked examples and seeded random trees. Only
/// `seifert_2_3_17` exceeds 8 vertices.
pub fn standard() -> Vec<ResolutionGraph> {
    let mut out = vec![
        catalog::a_n(1),
        catalog::a_n(2),
        catalog::a_n(4),
        catalog::d_n(4),
        catalog::d_n(6),
        catalog::e_n(6),
        catalog::e_n(7),
        catalog::e_n(8),
    ];
    out.extend(stars());
    out.extend(chains());
    out.extend(catalog::gorenstein_elliptic());
    out.push(catalog::minus13_two_nodes());
    out.extend(random_trees(CORPUS_SEED, 8, 3, 7));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid_and_large_enough() {
        let corpus = standard();
        assert!(corpus.len() >= 25, "{}", corpus.len());
        for g in &corpus {
            assert!(build_form(g).is_ok(), "{:?}", g.name());
            assert!(g.len() <= 8 || g.name() == Some("sigma_2_3_17"));
        }
        assert_eq!(stars().len(), 8);
    }

    #[test]
    fn random_graphs_are_reproducible() {
        assert_eq!(random_trees(7, 3, 3, 6), random_trees(7, 3, 3, 6));
    }
}
