//! Certificates that no party can start an informative
//! orthogonality-preserving measurement.
//!
//! For one party, every POVM element `E` of a measurement that keeps the set
//! orthogonal must satisfy `⟨a_j|E|a_k⟩ = 0` for each pair `(j, k)` that is
//! orthogonal on that party alone. If every Hermitian solution acts on the
//! span of the party's kets as a multiple of the identity, each outcome
//! leaves the set unchanged up to scale, so no round makes progress.

use itertools::Itertools;

use crate::error::Result;
use crate::linalg::{self, CMat, CVec};
use crate::measurement::Measurement;
use crate::states::StateSet;

/// Pairs (positions) orthogonal on `party` and on no other party.
pub fn constraint_pairs(set: &StateSet, party: usize) -> Vec<(usize, usize)> {
    (0..set.len())
        .tuple_combinations()
        .filter(|&(j, k)| set.orthogonality_mask(j, k) == 1 << party)
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct OpmSolutionSpace {
    pub party: usize,
    pub basis: Vec<CMat>,
    pub constraint_pairs: Vec<(usize, usize)>,
    pub span_projector: CMat,
}

impl OpmSolutionSpace {
    /// Largest `|⟨a_j|B|a_k⟩|` over basis elements and constraint pairs.
    pub fn constraint_residual(&self, set: &StateSet) -> f64 {
        let mut worst: f64 = 0.0;
        for b in &self.basis {
            for &(j, k) in &self.constraint_pairs {
                let r =
                    linalg::sandwich(set.local(self.party, j), b, set.local(self.party, k)).norm();
                worst = worst.max(r);
            }
        }
        worst
    }
}

pub fn opm_space(set: &StateSet, party: usize) -> Result<OpmSolutionSpace> {
    set.check_party(party)?;
    let pairs = constraint_pairs(set, party);
    let constraints: Vec<(CVec, CVec)> = pairs
        .iter()
        .map(|&(j, k)| (set.local(party, j).clone(), set.local(party, k).clone()))
        .collect();
    let dim = set.dims()[party];
    let basis = linalg::hermitian_solution_space(&constraints, dim, set.tol())?;
    Ok(OpmSolutionSpace {
        party,
        basis,
        constraint_pairs: pairs,
        span_projector: linalg::span_projector(&set.locals(party), dim, set.tol()),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum TrivialityVerdict {
    ProportionalIdentityOnSpan,
    EqualProbabilitiesOnly,
    /// `witness` and `I - witness` form a two-outcome orthogonality-preserving
    /// POVM whose statistics differ between the two members of `pair`.
    Informative {
        witness: CMat,
        pair: (usize, usize),
    },
}

impl TrivialityVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            TrivialityVerdict::ProportionalIdentityOnSpan => "ProportionalIdentityOnSpan",
            TrivialityVerdict::EqualProbabilitiesOnly => "EqualProbabilitiesOnly",
            TrivialityVerdict::Informative { .. } => "Informative",
        }
    }
}

/// Frobenius distance of `P B P` from the nearest multiple of `P`.
pub fn proportionality_residual(b: &CMat, p: &CMat) -> f64 {
    let pbp = p * b * p;
    let rank = p.trace().re;
    if rank <= 0.5 {
        return 0.0;
    }
    let lambda = pbp.trace() / rank;
    (pbp - p * lambda).norm()
}

fn diagonal_values(b: &CMat, set: &StateSet, party: usize) -> Vec<f64> {
    (0..set.len())
        .map(|j| {
            let a = set.local(party, j);
            linalg::sandwich(a, b, a).re
        })
        .collect()
}

pub fn triviality(space: &OpmSolutionSpace, set: &StateSet) -> TrivialityVerdict {
    let tol = set.tol();
    let p = &space.span_projector;
    if space
        .basis
        .iter()
        .all(|b| proportionality_residual(b, p) <= tol * b.norm().max(1.0))
    {
        return TrivialityVerdict::ProportionalIdentityOnSpan;
    }
    for delta in &space.basis {
        let diag = diagonal_values(delta, set, space.party);
        let pair = (0..diag.len())
            .tuple_combinations()
            .max_by(|&(a, b), &(c, d)| {
                (diag[a] - diag[b])
                    .abs()
                    .total_cmp(&(diag[c] - diag[d]).abs())
            });
        if let Some((j, k)) = pair {
            if (diag[j] - diag[k]).abs() > tol {
                let eps = 0.5 / (1.0 + delta.norm());
                let dim = delta.nrows();
                let witness = (linalg::identity(dim) + delta.scale(eps)).scale(0.5);
                return TrivialityVerdict::Informative {
                    witness,
                    pair: (j, k),
                };
            }
        }
    }
    TrivialityVerdict::EqualProbabilitiesOnly
}

/// The two-outcome measurement `{E, I - E}` built from an informative witness.
pub fn witness_measurement(party: usize, witness: &CMat) -> Result<Measurement> {
    let rest = linalg::identity(witness.nrows()) - witness;
    Measurement::from_elements(
        party,
        &[witness.clone(), rest],
        vec!["E".into(), "I-E".into()],
        1e-9,
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartyCertificate {
    pub space: OpmSolutionSpace,
    pub constraint_residual: f64,
    pub proportionality_residual: f64,
}

/// Evidence that every party's orthogonality-preserving elements act as
/// scalars on the span of its kets.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub parties: Vec<PartyCertificate>,
}

impl Certificate {
    pub fn max_constraint_residual(&self) -> f64 {
        self.parties
            .iter()
            .map(|p| p.constraint_residual)
            .fold(0.0, f64::max)
    }

    pub fn max_proportionality_residual(&self) -> f64 {
        self.parties
            .iter()
            .map(|p| p.proportionality_residual)
            .fold(0.0, f64::max)
    }

    /// Re-derives the constraint pairs and re-checks every stored basis
    /// element against `set`. Also checks that the stored basis has full
    /// dimension, by recomputing the solution space.
    pub fn recheck(&self, set: &StateSet) -> bool {
        if self.parties.len() != set.parties() {
            return false;
        }
        let tol = set.tol();
        self.parties.iter().enumerate().all(|(party, pc)| {
            let s = &pc.space;
            let fresh = match opm_space(set, party) {
                Ok(f) => f,
                Err(_) => return false,
            };
            s.party == party
                && s.constraint_pairs == constraint_pairs(set, party)
                && fresh.basis.len() == s.basis.len()
                && s.constraint_residual(set) <= tol
                && s.basis.iter().all(|b| {
                    proportionality_residual(b, &fresh.span_projector) <= tol * b.norm().max(1.0)
                })
        })
    }
}

/// Per-party spaces and verdicts.
pub fn analyze(set: &StateSet) -> Result<Vec<(OpmSolutionSpace, TrivialityVerdict)>> {
    (0..set.parties())
        .map(|p| {
            let s = opm_space(set, p)?;
            let v = triviality(&s, set);
            Ok((s, v))
        })
        .collect()
}

pub fn certify_indistinguishable(set: &StateSet) -> Result<Option<Certificate>> {
    let mut parties = Vec::new();
    for (space, verdict) in analyze(set)? {
        if verdict != TrivialityVerdict::ProportionalIdentityOnSpan {
            return Ok(None);
        }
        let constraint_residual = space.constraint_residual(set);
        let proportionality_residual = space
            .basis
            .iter()
            .map(|b| proportionality_residual(b, &space.span_projector))
            .fold(0.0, f64::max);
        parties.push(PartyCertificate {
            space,
            constraint_residual,
            proportionality_residual,
        });
    }
    Ok(Some(Certificate { parties }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{family_eq10, family_eq11, family_eq3};
    use crate::linalg::re;
    use crate::measurement::{apply, preserves_all};

    #[test]
    fn cycle_constraints() {
        let set = family_eq3(re(1.0), re(1.0), re(1.0), re(1.0)).unwrap();
        assert_eq!(
            constraint_pairs(&set, 0),
            vec![(0, 3), (0, 4), (1, 2), (1, 4), (2, 3)]
        );
        let t = family_eq11();
        assert_eq!(constraint_pairs(&t, 2), vec![(1, 3), (2, 4)]);
    }

    #[test]
    fn simple_family_space_is_identity() {
        let set = family_eq3(re(1.0), re(1.0), re(1.0), re(1.0)).unwrap();
        let s = opm_space(&set, 0).unwrap();
        assert_eq!(s.basis.len(), 1);
        let b = &s.basis[0];
        let lambda = b[(0, 0)];
        assert!((b - linalg::identity(3) * lambda).norm() < 1e-12);
        assert_eq!(
            triviality(&s, &set),
            TrivialityVerdict::ProportionalIdentityOnSpan
        );
    }

    #[test]
    fn embedded_space_keeps_identity_block() {
        let set = family_eq3(re(1.0), re(1.0), re(1.0), re(1.0))
            .unwrap()
            .embed_party(0, 4)
            .unwrap();
        let s = opm_space(&set, 0).unwrap();
        // identity block, plus row/column 3 (6 real parameters) and entry (3,3)
        assert_eq!(s.basis.len(), 1 + 6 + 1);
        for b in &s.basis {
            let top = b.view((0, 0), (3, 3)).into_owned();
            let lambda = top[(0, 0)];
            assert!((top - linalg::identity(3) * lambda).norm() < 1e-9);
        }
        assert_eq!(
            triviality(&s, &set),
            TrivialityVerdict::ProportionalIdentityOnSpan
        );
    }

    #[test]
    fn tripartite_certificates() {
        let cert = certify_indistinguishable(&family_eq10())
            .unwrap()
            .expect("certified");
        assert_eq!(cert.parties.len(), 3);
        assert!(cert.recheck(&family_eq10()));
        assert!(certify_indistinguishable(&family_eq11()).unwrap().is_none());
    }

    #[test]
    fn informative_witness_is_usable() {
        let set = family_eq11();
        let s = opm_space(&set, 2).unwrap();
        let TrivialityVerdict::Informative { witness, pair } = triviality(&s, &set) else {
            panic!("party 3 should be informative");
        };
        let m = witness_measurement(2, &witness).unwrap();
        assert!(preserves_all(&set, &m).unwrap());
        let p = apply(&set, &m, 0).unwrap().probabilities;
        assert!((p[pair.0] - p[pair.1]).abs() > 1e-6);
    }
}
