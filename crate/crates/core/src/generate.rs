//! Random product-state sets realizing a prescribed orthogonality graph.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::graph::{compute_graph, OrthoGraph};
use crate::linalg::{self, CVec};
use crate::states::{ProductState, StateSet};

pub const MAX_ATTEMPTS: usize = 200;
pub const DEFAULT_DIM: usize = 5;

fn gaussian_ket(rng: &mut ChaCha8Rng, dim: usize) -> CVec {
    CVec::from_fn(dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Smallest-last order of the `party` edges: every vertex has as few
/// neighbors placed before it as the graph allows.
fn placement_order(target: &OrthoGraph, party: usize) -> Vec<usize> {
    let n = target.n();
    let mut left: Vec<usize> = (0..n).collect();
    let mut removed = Vec::with_capacity(n);
    while !left.is_empty() {
        let deg = |v: usize| {
            left.iter()
                .filter(|&&u| target.has_edge(party, u, v))
                .count()
        };
        let (i, _) = left
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| deg(v))
            .expect("nonempty");
        removed.push(left.remove(i));
    }
    removed.reverse();
    removed
}

fn attempt(
    target: &OrthoGraph,
    dims: &[usize],
    rng: &mut ChaCha8Rng,
    tol: f64,
) -> Option<StateSet> {
    let n = target.n();
    let mut locals: Vec<Vec<CVec>> = vec![Vec::with_capacity(dims.len()); n];
    for (p, &dim) in dims.iter().enumerate() {
        let mut placed: Vec<Option<CVec>> = vec![None; n];
        for j in placement_order(target, p) {
            let earlier: Vec<(usize, &CVec)> = placed
                .iter()
                .enumerate()
                .filter_map(|(k, v)| v.as_ref().map(|v| (k, v)))
                .collect();
            let required: Vec<CVec> = earlier
                .iter()
                .filter(|&&(k, _)| target.has_edge(p, j, k))
                .map(|&(_, v)| v.clone())
                .collect();
            let mut v = gaussian_ket(rng, dim);
            for u in linalg::orthonormal_basis(&required, tol) {
                let overlap = u.dotc(&v);
                v -= u * overlap;
            }
            let v = linalg::normalize(&v).ok().filter(|_| v.norm() > 1e-6)?;
            let forbidden = earlier
                .iter()
                .any(|&(k, u)| !target.has_edge(p, j, k) && u.dotc(&v).norm() < 10.0 * tol);
            if forbidden {
                return None;
            }
            placed[j] = Some(v);
        }
        for (j, v) in placed.into_iter().enumerate() {
            locals[j].push(v.expect("every vertex placed"));
        }
    }
    let states = locals
        .into_iter()
        .map(ProductState::new)
        .collect::<Result<Vec<_>>>()
        .ok()?;
    let set = StateSet::with_tol(dims.to_vec(), states, tol).ok()?;
    match compute_graph(&set) {
        Ok(g) if g == *target => Some(set),
        _ => None,
    }
}

/// Samples a set whose orthogonality graph is exactly `target`.
///
/// Each party's kets are drawn in smallest-last order; each is a complex
/// Gaussian vector projected off the span of the earlier kets it must be
/// orthogonal to. A
/// draw with an accidental orthogonality is discarded. Deterministic in
/// `seed`.
pub fn generate_from_graph(
    target: &OrthoGraph,
    dims: Option<&[usize]>,
    seed: u64,
    tol: f64,
) -> Result<StateSet> {
    let dims: Vec<usize> = match dims {
        Some(d) => d.to_vec(),
        None => vec![DEFAULT_DIM; target.parties()],
    };
    if dims.len() != target.parties() {
        return Err(Error::DimensionMismatch {
            expected: target.parties(),
            found: dims.len(),
        });
    }
    if target.pairs().any(|(j, k)| target.label(j, k) == 0) {
        return Err(Error::UnsupportedGraph("some pair has no color".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(set) = attempt(target, &dims, &mut rng, tol) {
            return Ok(set);
        }
    }
    Err(Error::Infeasible {
        attempts: MAX_ATTEMPTS,
    })
}

/// A random single-colored graph on `n` vertices with exactly `counts[p]`
/// edges of color `p`. `counts` must sum to `n(n-1)/2`.
pub fn random_graph_with_counts(n: usize, counts: &[usize], seed: u64) -> Result<OrthoGraph> {
    use rand::seq::SliceRandom;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| ((j + 1)..n).map(move |k| (j, k)))
        .collect();
    if counts.iter().sum::<usize>() != pairs.len() {
        return Err(Error::UnsupportedGraph(format!(
            "counts {counts:?} do not sum to {}",
            pairs.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shuffled = pairs;
    shuffled.shuffle(&mut rng);
    let mut edges = Vec::new();
    let mut it = shuffled.into_iter();
    for (p, &c) in counts.iter().enumerate() {
        for (j, k) in it.by_ref().take(c) {
            edges.push((p, j, k));
        }
    }
    OrthoGraph::from_edges(n, counts.len(), &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_spec;
    use crate::linalg::DEFAULT_TOL;
    use crate::states::validate;

    #[test]
    fn realizes_double_cycle() {
        let g = parse_edge_spec(5, 2, "1:1-4,1-5,2-3,2-5,3-4;2:1-2,1-3,2-4,3-5,4-5").unwrap();
        let set = generate_from_graph(&g, None, 3, DEFAULT_TOL).unwrap();
        assert_eq!(compute_graph(&set).unwrap(), g);
        assert!(validate(&set).unique_party_per_pair);
    }

    #[test]
    fn deterministic_in_seed() {
        let g = random_graph_with_counts(5, &[7, 3], 11).unwrap();
        let a = generate_from_graph(&g, None, 5, DEFAULT_TOL).unwrap();
        let b = generate_from_graph(&g, None, 5, DEFAULT_TOL).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn one_color_everywhere() {
        let g = random_graph_with_counts(5, &[10, 0], 0).unwrap();
        let set = generate_from_graph(&g, None, 1, DEFAULT_TOL).unwrap();
        for j in 0..5 {
            for k in (j + 1)..5 {
                assert!(set.orthogonal_on(0, j, k));
                assert!(!set.orthogonal_on(1, j, k));
            }
        }
    }

    #[test]
    fn too_small_dimension_is_infeasible() {
        let g = random_graph_with_counts(5, &[10, 0], 0).unwrap();
        let r = generate_from_graph(&g, Some(&[3, 3]), 1, DEFAULT_TOL);
        assert!(matches!(r, Err(Error::Infeasible { .. })));
    }
}
