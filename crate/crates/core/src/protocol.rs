//! Protocol trees of local measurements and their exact simulation.

use crate::error::{Error, Result};
use crate::measurement::{apply, orthogonality_violations, Measurement};
use crate::states::StateSet;

/// Terminal node. State indices are labels of the original set (0-based).
#[derive(Clone, Debug, PartialEq)]
pub enum LeafKind {
    Identified(usize),
    Ambiguous(Vec<usize>),
    /// The branch cannot continue because these pairs lost orthogonality.
    DeadBranch {
        offending: Vec<(usize, usize)>,
    },
}

/// Why a step was chosen. Informational only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    CompleteLocal,
    Isolating,
    PairBlock,
    EdgeSplit,
    Components,
    SpanSplit,
    HittingSet,
    Gadget,
    Given,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::CompleteLocal => "complete-local",
            Rule::Isolating => "isolating",
            Rule::PairBlock => "pair-block",
            Rule::EdgeSplit => "edge-split",
            Rule::Components => "components",
            Rule::SpanSplit => "span-split",
            Rule::HittingSet => "hitting-set",
            Rule::Gadget => "gadget",
            Rule::Given => "given",
        }
    }

    pub fn from_name(s: &str) -> Option<Rule> {
        [
            Rule::CompleteLocal,
            Rule::Isolating,
            Rule::PairBlock,
            Rule::EdgeSplit,
            Rule::Components,
            Rule::SpanSplit,
            Rule::HittingSet,
            Rule::Gadget,
            Rule::Given,
        ]
        .into_iter()
        .find(|r| r.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProtocolNode {
    Leaf(LeafKind),
    Step {
        measurement: Measurement,
        rule: Rule,
        branches: Vec<ProtocolNode>,
    },
}

impl ProtocolNode {
    pub fn identified(label: usize) -> Self {
        ProtocolNode::Leaf(LeafKind::Identified(label))
    }

    pub fn ambiguous(labels: Vec<usize>) -> Self {
        ProtocolNode::Leaf(LeafKind::Ambiguous(labels))
    }

    pub fn step(measurement: Measurement, rule: Rule, branches: Vec<ProtocolNode>) -> Self {
        ProtocolNode::Step {
            measurement,
            rule,
            branches,
        }
    }

    /// Number of measurement steps on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        match self {
            ProtocolNode::Leaf(_) => 0,
            ProtocolNode::Step { branches, .. } => {
                1 + branches.iter().map(|b| b.depth()).max().unwrap_or(0)
            }
        }
    }

    pub fn count_steps(&self) -> usize {
        match self {
            ProtocolNode::Leaf(_) => 0,
            ProtocolNode::Step { branches, .. } => {
                1 + branches.iter().map(|b| b.count_steps()).sum::<usize>()
            }
        }
    }

    /// Visits every measurement in depth-first order.
    pub fn for_each_measurement(&self, f: &mut impl FnMut(&Measurement)) {
        if let ProtocolNode::Step {
            measurement,
            branches,
            ..
        } = self
        {
            f(measurement);
            for b in branches {
                b.for_each_measurement(f);
            }
        }
    }

    /// Same tree with every state label passed through `map`.
    pub fn map_labels(&self, map: &impl Fn(usize) -> usize) -> ProtocolNode {
        match self {
            ProtocolNode::Leaf(LeafKind::Identified(j)) => ProtocolNode::identified(map(*j)),
            ProtocolNode::Leaf(LeafKind::Ambiguous(v)) => {
                ProtocolNode::ambiguous(v.iter().map(|&j| map(j)).collect())
            }
            ProtocolNode::Leaf(LeafKind::DeadBranch { offending }) => {
                ProtocolNode::Leaf(LeafKind::DeadBranch {
                    offending: offending.iter().map(|&(a, b)| (map(a), map(b))).collect(),
                })
            }
            ProtocolNode::Step {
                measurement,
                rule,
                branches,
            } => ProtocolNode::step(
                measurement.clone(),
                *rule,
                branches.iter().map(|b| b.map_labels(map)).collect(),
            ),
        }
    }
}

/// How one path ended for one input state.
#[derive(Clone, Debug, PartialEq)]
pub enum LeafOutcome {
    Identified,
    Misidentified(usize),
    Ambiguous,
    Dead,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathRecord {
    /// Outcome indices from the root.
    pub path: Vec<usize>,
    pub probability: f64,
    pub outcome: LeafOutcome,
}

/// Indexed by position in the simulated set.
#[derive(Clone, Debug, PartialEq)]
pub struct SimulationReport {
    pub labels: Vec<usize>,
    pub priors: Vec<f64>,
    pub paths: Vec<Vec<PathRecord>>,
    pub success: Vec<f64>,
    pub overall: f64,
    /// Orthogonality lost at some step, as pairs of labels.
    pub violations: Vec<(usize, usize)>,
}

impl SimulationReport {
    /// Total path probability per state.
    pub fn conservation(&self) -> Vec<f64> {
        self.paths
            .iter()
            .map(|ps| ps.iter().map(|p| p.probability).fold(0.0, |a, b| a + b))
            .collect()
    }

    /// Largest probability with which a state reaches a leaf naming another.
    pub fn misidentified_mass(&self) -> f64 {
        self.paths
            .iter()
            .flat_map(|ps| ps.iter())
            .filter(|p| matches!(p.outcome, LeafOutcome::Misidentified(_)))
            .map(|p| p.probability)
            .fold(0.0, f64::max)
    }
}

fn walk(
    node: &ProtocolNode,
    set: &StateSet,
    mass: &[f64],
    path: &mut Vec<usize>,
    out: &mut [Vec<PathRecord>],
    index_of: &dyn Fn(usize) -> usize,
    violations: &mut Vec<(usize, usize)>,
) -> Result<()> {
    match node {
        ProtocolNode::Leaf(kind) => {
            for (pos, &m) in mass.iter().enumerate() {
                let label = set.label(pos);
                let outcome = match kind {
                    LeafKind::Identified(j) if *j == label => LeafOutcome::Identified,
                    LeafKind::Identified(j) => LeafOutcome::Misidentified(*j),
                    LeafKind::Ambiguous(_) => LeafOutcome::Ambiguous,
                    LeafKind::DeadBranch { .. } => LeafOutcome::Dead,
                };
                out[index_of(label)].push(PathRecord {
                    path: path.clone(),
                    probability: m,
                    outcome,
                });
            }
            Ok(())
        }
        ProtocolNode::Step {
            measurement,
            branches,
            ..
        } => {
            if branches.len() != measurement.outcomes() {
                return Err(Error::MalformedProtocol(format!(
                    "{} branches for {} outcomes",
                    branches.len(),
                    measurement.outcomes()
                )));
            }
            set.check_party(measurement.party())
                .map_err(|e| Error::MalformedProtocol(e.to_string()))?;
            if set.dims()[measurement.party()] != measurement.dim() {
                return Err(Error::MalformedProtocol(format!(
                    "measurement of dimension {} on party {} of dimension {}",
                    measurement.dim(),
                    measurement.party() + 1,
                    set.dims()[measurement.party()]
                )));
            }
            for (m, branch) in branches.iter().enumerate() {
                let upd = apply(set, measurement, m)?;
                for (a, b) in orthogonality_violations(set, measurement, m)? {
                    violations.push((set.label(a), set.label(b)));
                }
                let next: Vec<f64> = upd
                    .kept
                    .iter()
                    .map(|&pos| mass[pos] * upd.probabilities[pos])
                    .collect();
                path.push(m);
                walk(
                    branch,
                    &upd.post_set,
                    &next,
                    path,
                    out,
                    index_of,
                    violations,
                )?;
                path.pop();
            }
            Ok(())
        }
    }
}

/// Traverses every branch of `protocol` for every member of `set`.
/// `priors` defaults to uniform.
pub fn simulate(
    protocol: &ProtocolNode,
    set: &StateSet,
    priors: Option<&[f64]>,
) -> Result<SimulationReport> {
    let n = set.len();
    let priors: Vec<f64> = match priors {
        Some(p) => {
            if p.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.len(),
                });
            }
            let s: f64 = p.iter().sum();
            if p.iter().any(|&x| x.is_nan() || x < 0.0) || (s - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidParams(
                    "priors must be nonnegative and sum to 1".into(),
                ));
            }
            p.to_vec()
        }
        None => vec![1.0 / n.max(1) as f64; n],
    };
    let labels = set.labels().to_vec();
    let index_of = |label: usize| {
        labels
            .iter()
            .position(|&l| l == label)
            .expect("known label")
    };
    let mut paths = vec![Vec::new(); n];
    let mut violations = Vec::new();
    let mut path = Vec::new();
    walk(
        protocol,
        set,
        &vec![1.0; n],
        &mut path,
        &mut paths,
        &index_of,
        &mut violations,
    )?;
    for ps in &mut paths {
        ps.sort_by(|a, b| a.path.cmp(&b.path));
    }
    violations.sort_unstable();
    violations.dedup();
    let success: Vec<f64> = paths
        .iter()
        .map(|ps| {
            ps.iter()
                .filter(|p| p.outcome == LeafOutcome::Identified)
                .map(|p| p.probability)
                .fold(0.0, |a, b| a + b)
        })
        .collect();
    let overall = success.iter().zip(&priors).fold(0.0, |a, (s, p)| a + s * p);
    Ok(SimulationReport {
        labels: labels.clone(),
        priors,
        paths,
        success,
        overall,
        violations,
    })
}

/// Every state is identified with certainty.
pub fn verify_perfect(report: &SimulationReport, tol: f64) -> bool {
    report.success.iter().all(|s| (s - 1.0).abs() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{family_eq11, family_eq2, FamilyParams};
    use crate::measurement::{complete_local_discrimination, eq12_povm, theorem4_measurements};

    #[test]
    fn ambiguous_leaf_identifies_nothing() {
        let set = family_eq11();
        let r = simulate(&ProtocolNode::ambiguous((0..5).collect()), &set, None).unwrap();
        assert!(r.success.iter().all(|&s| s == 0.0));
        assert!(r.conservation().iter().all(|&c| (c - 1.0).abs() < 1e-15));
        assert!(!verify_perfect(&r, 1e-9));
    }

    #[test]
    fn branch_count_mismatch_is_malformed() {
        let set = family_eq11();
        let p = ProtocolNode::step(
            eq12_povm(),
            Rule::Given,
            vec![ProtocolNode::ambiguous(vec![])],
        );
        assert!(matches!(
            simulate(&p, &set, None),
            Err(Error::MalformedProtocol(_))
        ));
    }

    #[test]
    fn first_case_contribution() {
        let p = FamilyParams::first_party(1.0, 1.0, 1.0, 0.0, 0.0);
        let set = family_eq2(&p).unwrap();
        let tree = ProtocolNode::step(
            theorem4_measurements(&p, 1).unwrap(),
            Rule::Given,
            vec![
                ProtocolNode::identified(2),
                ProtocolNode::ambiguous((0..5).collect()),
            ],
        );
        let r = simulate(&tree, &set, None).unwrap();
        assert!((r.success[2] * r.priors[2] - 0.05).abs() < 1e-12);
        assert!((r.overall - 0.05).abs() < 1e-12);
    }

    #[test]
    fn identity_step_contracts() {
        let set = family_eq11().subset(&[0, 3]);
        let inner = ProtocolNode::step(
            complete_local_discrimination(&set, 0).unwrap(),
            Rule::CompleteLocal,
            vec![
                ProtocolNode::identified(0),
                ProtocolNode::identified(3),
                ProtocolNode::ambiguous(vec![]),
            ],
        );
        let outer = ProtocolNode::step(
            Measurement::identity(1, 3),
            Rule::Given,
            vec![inner.clone()],
        );
        let a = simulate(&inner, &set, None).unwrap();
        let b = simulate(&outer, &set, None).unwrap();
        for (x, y) in a.success.iter().zip(&b.success) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!(verify_perfect(&a, 1e-12));
    }

    #[test]
    fn empty_set_is_vacuously_perfect() {
        let set = family_eq11().subset(&[]);
        let r = simulate(&ProtocolNode::ambiguous(vec![]), &set, None).unwrap();
        assert!(verify_perfect(&r, 1e-9));
    }
}
