//! Protocol search: perfect LOCC discrimination, certified failure, or the
//! best probabilistic protocol among a fixed family of local gadgets.
//!
//! The perfect search is an AND-OR recursion. At each node the candidate
//! measurements are tried in a fixed order (complete local discrimination,
//! isolating projectors, pair blocks, star splits, then the generic family)
//! and one is accepted when every outcome keeps the survivors orthogonal and
//! rules out at least one state, and every resulting branch is itself
//! solvable within the remaining depth.

use std::collections::HashMap;

use itertools::Itertools;

use crate::cert::{self, Certificate, TrivialityVerdict};
use crate::error::{Error, Result};
use crate::graph::{classify, compute_graph, Pattern};
use crate::linalg::{self, CMat, CVec};
use crate::measurement::{
    self, apply, block_split, complete_local_discrimination, hitting_set_povm, pair_split,
    projective_split, span_split, Measurement,
};
use crate::protocol::{simulate, verify_perfect, ProtocolNode, Rule, SimulationReport};
use crate::states::{local_rank, validate, StateSet};

pub const DEFAULT_DEPTH: usize = 6;
/// Upper bound on measurement applications per search.
pub const DEFAULT_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Perfect {
        protocol: ProtocolNode,
        report: SimulationReport,
    },
    Probabilistic {
        protocol: ProtocolNode,
        report: SimulationReport,
    },
    IndistinguishableCertified {
        certificate: Certificate,
    },
    Unknown {
        reason: String,
        findings: Vec<(usize, String)>,
    },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Perfect { .. } => "Perfect",
            Verdict::Probabilistic { .. } => "Probabilistic",
            Verdict::IndistinguishableCertified { .. } => "IndistinguishableCertified",
            Verdict::Unknown { .. } => "Unknown",
        }
    }

    pub fn protocol(&self) -> Option<&ProtocolNode> {
        match self {
            Verdict::Perfect { protocol, .. } | Verdict::Probabilistic { protocol, .. } => {
                Some(protocol)
            }
            _ => None,
        }
    }

    pub fn report(&self) -> Option<&SimulationReport> {
        match self {
            Verdict::Perfect { report, .. } | Verdict::Probabilistic { report, .. } => Some(report),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub depth_limit: usize,
    pub budget: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            depth_limit: DEFAULT_DEPTH,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Normalized directions worth projecting on for one party: the members'
/// kets, the orthonormal complement of their span, and for each member the
/// part of its ket outside the span of the others. Deduplicated up to phase.
pub fn candidate_projectors(set: &StateSet, party: usize) -> Vec<CVec> {
    let tol = set.tol();
    let dim = set.dims()[party];
    let locals = set.locals(party);
    let mut out: Vec<CVec> = Vec::new();
    let push = |v: CVec, out: &mut Vec<CVec>| {
        if let Ok(v) = linalg::normalize(&v) {
            if !out.iter().any(|u| linalg::same_ray(u, &v, 1e-9)) {
                out.push(v);
            }
        }
    };
    for v in &locals {
        push(v.clone(), &mut out);
    }
    for v in linalg::orthonormal_complement(&locals, dim, tol).unwrap_or_default() {
        push(v, &mut out);
    }
    for j in 0..locals.len() {
        let others: Vec<CVec> = (0..locals.len())
            .filter(|&k| k != j)
            .map(|k| locals[k].clone())
            .collect();
        let p = linalg::span_projector(&others, dim, tol);
        let r = &locals[j] - p * &locals[j];
        if r.norm() > 1e-6 {
            push(r, &mut out);
        }
    }
    out
}

type Candidate = (Rule, Measurement);

fn same_operator(a: &CMat, b: &CMat) -> bool {
    (a - b).norm() <= 1e-9
}

/// Ordered candidate measurements for one node.
fn candidates(set: &StateSet) -> Vec<Candidate> {
    let tol = set.tol();
    let m = set.parties();
    let n = set.len();
    let mut out: Vec<Candidate> = Vec::new();
    let graph = compute_graph(set).ok();
    let edge = |p: usize, j: usize, k: usize| set.orthogonal_on(p, j, k);

    for p in 0..m {
        if (0..n).tuple_combinations().all(|(j, k)| edge(p, j, k)) {
            if let Ok(meas) = complete_local_discrimination(set, p) {
                out.push((Rule::CompleteLocal, meas));
            }
        }
    }
    for p in 0..m {
        for j in 0..n {
            if (0..n).filter(|&k| k != j).all(|k| edge(p, j, k)) {
                if let Ok(meas) = projective_split(p, set.local(p, j)) {
                    out.push((Rule::Isolating, meas));
                }
            }
        }
    }
    if n > 2 {
        for p in 0..m {
            for (j, k) in (0..n).tuple_combinations() {
                let covers = (0..n)
                    .filter(|&u| u != j && u != k)
                    .all(|u| edge(p, j, u) && edge(p, k, u));
                if !covers {
                    continue;
                }
                let (a, b) = (set.local(p, j), set.local(p, k));
                let meas = if edge(p, j, k) {
                    pair_split(p, a, b, tol)
                } else {
                    span_split(p, &[a.clone(), b.clone()], tol)
                };
                if let Ok(meas) = meas {
                    out.push((Rule::PairBlock, meas));
                }
            }
        }
    }
    if let Some(g) = &graph {
        for p in 0..m {
            let edges = g.edges(p);
            if edges.is_empty() {
                continue;
            }
            for c in 0..n {
                if g.degree(p, c) == edges.len() {
                    if let Ok(meas) = projective_split(p, set.local(p, c)) {
                        out.push((Rule::EdgeSplit, meas));
                    }
                }
            }
        }
    }
    for p in 0..m {
        let comps = components(set, p);
        if comps.len() > 1 {
            let blocks: Vec<Vec<CVec>> = comps
                .iter()
                .map(|c| c.iter().map(|&j| set.local(p, j).clone()).collect())
                .collect();
            if let Ok(meas) = block_split(p, &blocks, set.dims()[p], tol) {
                out.push((Rule::Components, meas));
            }
        }
    }
    let mut seen: Vec<Vec<CMat>> = vec![Vec::new(); m];
    for (p, seen) in seen.iter_mut().enumerate() {
        for v in candidate_projectors(set, p) {
            let proj = match linalg::projector(&v) {
                Ok(x) => x,
                Err(_) => continue,
            };
            if seen.iter().any(|s| same_operator(s, &proj)) {
                continue;
            }
            seen.push(proj);
            if let Ok(meas) = projective_split(p, &v) {
                out.push((Rule::SpanSplit, meas));
            }
        }
    }
    for (p, seen) in seen.iter_mut().enumerate() {
        let dim = set.dims()[p];
        for size in 2..n {
            for subset in (0..n).combinations(size) {
                let vs: Vec<CVec> = subset.iter().map(|&j| set.local(p, j).clone()).collect();
                let proj = linalg::span_projector(&vs, dim, tol);
                let rank = proj.trace().re.round() as usize;
                if rank == 0 || rank >= dim {
                    continue;
                }
                let comp = linalg::identity(dim) - &proj;
                if seen
                    .iter()
                    .any(|s| same_operator(s, &proj) || same_operator(s, &comp))
                {
                    continue;
                }
                seen.push(proj);
                if let Ok(meas) = span_split(p, &vs, tol) {
                    out.push((Rule::SpanSplit, meas));
                }
            }
        }
    }
    for p in 0..m {
        let pairs = cert::constraint_pairs(set, p);
        if let Some(meas) = hitting_set_povm(set, p, &pairs) {
            if meas.outcomes() > 2 {
                out.push((Rule::HittingSet, meas));
            }
        }
    }
    out
}

/// Connected components of the non-orthogonality relation on one party.
fn components(set: &StateSet, party: usize) -> Vec<Vec<usize>> {
    let n = set.len();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while c[r] != r {
            r = c[r];
        }
        c[x] = r;
        r
    }
    for (j, k) in (0..n).tuple_combinations() {
        if !set.orthogonal_on(party, j, k) {
            let (a, b) = (find(&mut comp, j), find(&mut comp, k));
            comp[a.max(b)] = a.min(b);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for j in 0..n {
        let r = find(&mut comp, j);
        match roots.iter().position(|&x| x == r) {
            Some(i) => groups[i].push(j),
            None => {
                roots.push(r);
                groups.push(vec![j]);
            }
        }
    }
    groups
}

/// Four tripartite states whose colors are three distinct perfect matchings
/// and whose local ranks are all 2.
pub fn is_hard_matching(set: &StateSet) -> bool {
    if set.len() != 4 || set.parties() != 3 {
        return false;
    }
    let Ok(g) = compute_graph(set) else {
        return false;
    };
    let matching = classify(&g)
        .map(|c| c.pattern == Pattern::Matching13)
        .unwrap_or(false);
    matching && (0..3).all(|p| local_rank(set, p).ok() == Some(2))
}

fn rank_sum(set: &StateSet) -> usize {
    (0..set.parties())
        .map(|p| local_rank(set, p).unwrap_or(0))
        .sum()
}

struct Searcher {
    budget: usize,
    used: usize,
    failed: HashMap<Vec<i64>, usize>,
}

fn set_key(set: &StateSet) -> Vec<i64> {
    let mut key: Vec<i64> = set.labels().iter().map(|&l| l as i64).collect();
    for s in set.states() {
        for v in s.locals() {
            // fixes the global phase by the first significant amplitude
            let phase = v
                .iter()
                .find(|z| z.norm() > 1e-6)
                .map(|z| z.conj() / z.norm())
                .unwrap_or(num_complex::Complex64::new(1.0, 0.0));
            for z in v.iter() {
                let w = z * phase;
                key.push((w.re * 1e7).round() as i64);
                key.push((w.im * 1e7).round() as i64);
            }
        }
    }
    key
}

enum Step {
    Leaf(ProtocolNode),
    Branches(Vec<(usize, StateSet)>),
}

impl Searcher {
    fn new(budget: usize) -> Self {
        Self {
            budget,
            used: 0,
            failed: HashMap::new(),
        }
    }

    fn exhausted(&self) -> bool {
        self.used >= self.budget
    }

    fn trivial_leaf(set: &StateSet) -> Option<ProtocolNode> {
        match set.len() {
            0 => Some(ProtocolNode::ambiguous(vec![])),
            1 => Some(ProtocolNode::identified(set.label(0))),
            _ => None,
        }
    }

    /// Children of an accepted candidate, or `None` when some outcome breaks
    /// orthogonality or (with `strict`) fails to rule out any state.
    fn expand(&mut self, set: &StateSet, meas: &Measurement, strict: bool) -> Option<Vec<Step>> {
        let mut out = Vec::with_capacity(meas.outcomes());
        let mut progress = false;
        for o in 0..meas.outcomes() {
            self.used += 1;
            let upd = apply(set, meas, o).ok()?;
            if !measurement::orthogonality_violations(set, meas, o)
                .ok()?
                .is_empty()
            {
                return None;
            }
            let shrinks = upd.post_set.len() < set.len();
            if !shrinks {
                if strict {
                    return None;
                }
                if rank_sum(&upd.post_set) < rank_sum(set) {
                    progress = true;
                    out.push(Step::Branches(vec![(o, upd.post_set)]));
                } else {
                    out.push(Step::Leaf(ProtocolNode::ambiguous(
                        upd.post_set.labels().to_vec(),
                    )));
                }
                continue;
            }
            progress = true;
            match Self::trivial_leaf(&upd.post_set) {
                Some(leaf) => out.push(Step::Leaf(leaf)),
                None => out.push(Step::Branches(vec![(o, upd.post_set)])),
            }
        }
        progress.then_some(out)
    }

    fn perfect(&mut self, set: &StateSet, depth: usize) -> Option<ProtocolNode> {
        if let Some(leaf) = Self::trivial_leaf(set) {
            return Some(leaf);
        }
        if depth == 0 || self.exhausted() || is_hard_matching(set) {
            return None;
        }
        let key = set_key(set);
        if self.failed.get(&key).is_some_and(|&d| d >= depth) {
            return None;
        }
        for (rule, meas) in candidates(set) {
            let Some(steps) = self.expand(set, &meas, true) else {
                continue;
            };
            let mut branches = Vec::with_capacity(steps.len());
            let mut ok = true;
            for s in steps {
                match s {
                    Step::Leaf(l) => branches.push(l),
                    Step::Branches(v) => {
                        let (_, child) = &v[0];
                        match self.perfect(child, depth - 1) {
                            Some(node) => branches.push(node),
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                }
            }
            if ok {
                return Some(ProtocolNode::step(meas, rule, branches));
            }
            if self.exhausted() {
                return None;
            }
        }
        let entry = self.failed.entry(key).or_insert(0);
        *entry = (*entry).max(depth);
        None
    }

    /// Protocol maximizing `Σ weight_j · P(identify j)`; weights by position.
    fn best(&mut self, set: &StateSet, weights: &[f64], depth: usize) -> (ProtocolNode, f64) {
        let total: f64 = weights.iter().sum();
        if let Some(node) = self.perfect(set, depth) {
            return (node, total);
        }
        let mut best = (ProtocolNode::ambiguous(set.labels().to_vec()), 0.0);
        if depth == 0 || self.exhausted() {
            return best;
        }
        for (rule, meas) in candidates(set) {
            let Some(steps) = self.expand(set, &meas, false) else {
                continue;
            };
            let mut branches = Vec::with_capacity(steps.len());
            let mut value = 0.0;
            for (o, s) in steps.into_iter().enumerate() {
                match s {
                    Step::Leaf(l) => {
                        if let ProtocolNode::Leaf(crate::protocol::LeafKind::Identified(lbl)) = &l {
                            let upd = apply(set, &meas, o).expect("checked");
                            let pos = set.position_of(*lbl).expect("member");
                            value += weights[pos] * upd.probabilities[pos];
                        }
                        branches.push(l);
                    }
                    Step::Branches(v) => {
                        let (_, child) = &v[0];
                        let upd = apply(set, &meas, o).expect("checked");
                        let w: Vec<f64> = upd
                            .kept
                            .iter()
                            .map(|&pos| weights[pos] * upd.probabilities[pos])
                            .collect();
                        let (node, val) = self.best(child, &w, depth - 1);
                        value += val;
                        branches.push(node);
                    }
                }
            }
            if value > best.1 + 1e-12 {
                best = (ProtocolNode::step(meas, rule, branches), value);
                if (best.1 - total).abs() <= 1e-12 {
                    break;
                }
            }
            if self.exhausted() {
                break;
            }
        }
        best
    }
}

/// A perfect protocol for a set of at most four states, if one exists in the
/// search space. Four-state hard matchings are never claimed.
pub fn base_case(set: &StateSet) -> Option<ProtocolNode> {
    if set.len() > 4 || is_hard_matching(set) {
        return None;
    }
    Searcher::new(DEFAULT_BUDGET).perfect(set, DEFAULT_DEPTH)
}

/// Perfect protocol search alone.
pub fn find_perfect(set: &StateSet, opts: &Options) -> Option<ProtocolNode> {
    Searcher::new(opts.budget).perfect(set, opts.depth_limit)
}

pub fn synthesize(set: &StateSet, opts: &Options) -> Result<Verdict> {
    let report = validate(set);
    if !report.orthogonal {
        return Err(Error::NotOrthogonal {
            pairs: report.non_orthogonal_pairs,
        });
    }
    let mut searcher = Searcher::new(opts.budget);
    if let Some(protocol) = searcher.perfect(set, opts.depth_limit) {
        let report = simulate(&protocol, set, None)?;
        if !verify_perfect(&report, 1e-9) || !report.violations.is_empty() {
            return Err(Error::Invariant(
                "synthesized protocol failed re-simulation".into(),
            ));
        }
        return Ok(Verdict::Perfect { protocol, report });
    }
    let exhausted = searcher.exhausted();
    if let Some(certificate) = cert::certify_indistinguishable(set)? {
        return Ok(Verdict::IndistinguishableCertified { certificate });
    }
    let n = set.len();
    let weights = vec![1.0 / n as f64; n];
    let mut prob = Searcher::new(opts.budget);
    let (protocol, value) = prob.best(set, &weights, opts.depth_limit);
    if value > set.tol() {
        let report = simulate(&protocol, set, None)?;
        if (report.overall - value).abs() > 1e-9 || !report.violations.is_empty() {
            return Err(Error::Invariant(
                "probabilistic protocol failed re-simulation".into(),
            ));
        }
        if report.misidentified_mass() > set.tol() {
            return Err(Error::Invariant("protocol misidentifies a state".into()));
        }
        return Ok(Verdict::Probabilistic { protocol, report });
    }
    let findings = cert::analyze(set)?
        .into_iter()
        .map(|(s, v)| (s.party, v.name().to_string()))
        .collect();
    let reason = if exhausted {
        "search budget exhausted".to_string()
    } else {
        format!(
            "no protocol within depth {} and no certificate",
            opts.depth_limit
        )
    };
    Ok(Verdict::Unknown { reason, findings })
}

/// Every party's triviality verdict, for reporting.
pub fn triviality_summary(set: &StateSet) -> Result<Vec<TrivialityVerdict>> {
    Ok(cert::analyze(set)?.into_iter().map(|(_, v)| v).collect())
}
