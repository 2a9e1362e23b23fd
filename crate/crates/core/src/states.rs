//! Product states and sets of product states.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CVec, DEFAULT_TOL};

/// A fully separable pure state: one normalized local ket per party.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductState {
    locals: Vec<CVec>,
}

impl ProductState {
    /// Normalizes every local ket. Fails on a zero ket.
    pub fn new(locals: Vec<CVec>) -> Result<Self> {
        let locals = locals
            .iter()
            .map(linalg::normalize)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { locals })
    }

    /// Takes the kets as given; each must already be normalized within `tol`.
    pub fn from_normalized(locals: Vec<CVec>, tol: f64) -> Result<Self> {
        for v in &locals {
            let n = v.norm();
            if (n - 1.0).abs() > tol {
                return Err(Error::NotNormalized { norm: n });
            }
        }
        Ok(Self { locals })
    }

    pub fn local(&self, party: usize) -> &CVec {
        &self.locals[party]
    }

    pub fn locals(&self) -> &[CVec] {
        &self.locals
    }

    pub fn parties(&self) -> usize {
        self.locals.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.locals.iter().map(|v| v.len()).collect()
    }
}

/// `∏_i ⟨p_i|q_i⟩`.
pub fn product_inner(p: &ProductState, q: &ProductState) -> Result<Complex64> {
    if p.parties() != q.parties() {
        return Err(Error::DimensionMismatch {
            expected: p.parties(),
            found: q.parties(),
        });
    }
    p.locals
        .iter()
        .zip(&q.locals)
        .try_fold(Complex64::new(1.0, 0.0), |acc, (u, v)| {
            Ok(acc * linalg::inner(u, v)?)
        })
}

/// An ordered collection of product states over common local dimensions.
///
/// Each member carries a label, the 0-based index it had in the set the
/// caller started from; labels survive subsetting and measurement updates so
/// that protocol leaves can name original states.
#[derive(Clone, Debug, PartialEq)]
pub struct StateSet {
    dims: Vec<usize>,
    states: Vec<ProductState>,
    labels: Vec<usize>,
    tol: f64,
}

impl StateSet {
    pub fn new(dims: Vec<usize>, states: Vec<ProductState>) -> Result<Self> {
        Self::with_tol(dims, states, DEFAULT_TOL)
    }

    pub fn with_tol(dims: Vec<usize>, states: Vec<ProductState>, tol: f64) -> Result<Self> {
        let labels = (0..states.len()).collect();
        Self::labeled(dims, states, labels, tol)
    }

    pub fn labeled(
        dims: Vec<usize>,
        states: Vec<ProductState>,
        labels: Vec<usize>,
        tol: f64,
    ) -> Result<Self> {
        if labels.len() != states.len() {
            return Err(Error::DimensionMismatch {
                expected: states.len(),
                found: labels.len(),
            });
        }
        for s in &states {
            if s.parties() != dims.len() {
                return Err(Error::DimensionMismatch {
                    expected: dims.len(),
                    found: s.parties(),
                });
            }
            for (v, &d) in s.locals.iter().zip(&dims) {
                if v.len() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        found: v.len(),
                    });
                }
                let n = v.norm();
                if (n - 1.0).abs() > tol.max(1e-12) {
                    return Err(Error::NotNormalized { norm: n });
                }
            }
        }
        Ok(Self {
            dims,
            states,
            labels,
            tol,
        })
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn states(&self) -> &[ProductState] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &ProductState {
        &self.states[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn position_of(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn local(&self, party: usize, i: usize) -> &CVec {
        &self.states[i].locals[party]
    }

    /// Party-`party` kets of all members, in set order.
    pub fn locals(&self, party: usize) -> Vec<CVec> {
        self.states
            .iter()
            .map(|s| s.locals[party].clone())
            .collect()
    }

    pub fn check_party(&self, party: usize) -> Result<()> {
        if party >= self.parties() {
            return Err(Error::PartyOutOfRange {
                party,
                parties: self.parties(),
            });
        }
        Ok(())
    }

    /// Members at the given positions, keeping their labels.
    pub fn subset(&self, positions: &[usize]) -> StateSet {
        StateSet {
            dims: self.dims.clone(),
            states: positions.iter().map(|&i| self.states[i].clone()).collect(),
            labels: positions.iter().map(|&i| self.labels[i]).collect(),
            tol: self.tol,
        }
    }

    /// Replaces one party's ket for each member (already normalized).
    pub(crate) fn replace_party(&self, party: usize, kets: Vec<CVec>, keep: &[usize]) -> StateSet {
        let states = keep
            .iter()
            .zip(kets)
            .map(|(&i, k)| {
                let mut locals = self.states[i].locals.clone();
                locals[party] = k;
                ProductState { locals }
            })
            .collect();
        StateSet {
            dims: self.dims.clone(),
            states,
            labels: keep.iter().map(|&i| self.labels[i]).collect(),
            tol: self.tol,
        }
    }

    /// New set whose `i`-th member is this set's `perm[i]`-th member.
    /// Labels are reset to `0..n`.
    pub fn permute_states(&self, perm: &[usize]) -> StateSet {
        StateSet {
            dims: self.dims.clone(),
            states: perm.iter().map(|&i| self.states[i].clone()).collect(),
            labels: (0..perm.len()).collect(),
            tol: self.tol,
        }
    }

    /// New set whose party `i` is this set's party `perm[i]`.
    pub fn permute_parties(&self, perm: &[usize]) -> StateSet {
        StateSet {
            dims: perm.iter().map(|&p| self.dims[p]).collect(),
            states: self
                .states
                .iter()
                .map(|s| ProductState {
                    locals: perm.iter().map(|&p| s.locals[p].clone()).collect(),
                })
                .collect(),
            labels: self.labels.clone(),
            tol: self.tol,
        }
    }

    /// Pads one party's kets with zeros up to `dim`.
    pub fn embed_party(&self, party: usize, dim: usize) -> Result<StateSet> {
        self.check_party(party)?;
        if dim < self.dims[party] {
            return Err(Error::DimensionMismatch {
                expected: self.dims[party],
                found: dim,
            });
        }
        let mut out = self.clone();
        out.dims[party] = dim;
        for s in &mut out.states {
            let old = &s.locals[party];
            let mut v = CVec::zeros(dim);
            v.rows_mut(0, old.len()).copy_from(old);
            s.locals[party] = v;
        }
        Ok(out)
    }

    /// Whether members `i` and `j` have orthogonal party-`party` kets.
    pub fn orthogonal_on(&self, party: usize, i: usize, j: usize) -> bool {
        self.local(party, i).dotc(self.local(party, j)).norm() <= self.tol
    }

    /// Parties on which members `i` and `j` are orthogonal, as a bitmask.
    pub fn orthogonality_mask(&self, i: usize, j: usize) -> u8 {
        (0..self.parties())
            .filter(|&p| self.orthogonal_on(p, i, j))
            .fold(0u8, |m, p| m | (1 << p))
    }
}

/// Findings of [`validate`]. Pairs are positions in the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub orthogonal: bool,
    pub unique_party_per_pair: bool,
    /// Pairs that are not fully orthogonal.
    pub non_orthogonal_pairs: Vec<(usize, usize)>,
    /// Pairs orthogonal on more than one party.
    pub multi_party_pairs: Vec<(usize, usize)>,
}

pub fn validate(set: &StateSet) -> ValidationReport {
    let mut non_orthogonal_pairs = Vec::new();
    let mut multi_party_pairs = Vec::new();
    for i in 0..set.len() {
        for j in (i + 1)..set.len() {
            let mask = set.orthogonality_mask(i, j);
            match mask.count_ones() {
                0 => non_orthogonal_pairs.push((i, j)),
                1 => {}
                _ => multi_party_pairs.push((i, j)),
            }
        }
    }
    ValidationReport {
        orthogonal: non_orthogonal_pairs.is_empty(),
        unique_party_per_pair: non_orthogonal_pairs.is_empty() && multi_party_pairs.is_empty(),
        non_orthogonal_pairs,
        multi_party_pairs,
    }
}

/// Rank of the party-`party` kets of the set.
pub fn local_rank(set: &StateSet, party: usize) -> Result<usize> {
    set.check_party(party)?;
    linalg::rank_of(&set.locals(party), set.tol())
}
