//! The operations behind the `opsdisc` binary, usable without a process.
//!
//! Each command returns a [`ReportDocument`]; `generate` returns the state
//! set itself so its output can be fed back to the other commands.

use std::path::Path;

use crate::cert::{self, TrivialityVerdict};
use crate::error::{Error, Result};
use crate::family::{family_eq10, family_eq11, family_eq2, family_eq3, FamilyParams};
use crate::generate::{generate_from_graph, random_graph_with_counts};
use crate::graph::{classify, compute_graph, parse_edge_spec, relation_vector, OrthoGraph};
use crate::io::{
    certificate_doc, parse_protocol, parse_state_set, PartyAnalysisDoc, PatternDoc, ProtocolDoc,
    ReportDocument,
};
use crate::linalg::{re, DEFAULT_TOL};
use crate::measurement::{
    apply, eq12_povm, hitting_set_povm, preserves_orthogonality, theorem4_measurements,
};
use crate::protocol::{simulate, ProtocolNode, Rule};
use crate::states::{local_rank, StateSet};
use crate::synthesis::{find_perfect, synthesize, Options, Verdict};

pub const DEMOS: [&str; 7] = [
    "eq3",
    "eq10",
    "eq11",
    "theorem4-1",
    "theorem4-2",
    "theorem4-3",
    "eq12",
];

/// Process exit status for an error: 2 for bad input, 3 for a broken
/// internal invariant.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) | Error::NotHermitian { .. } | Error::ZeroVector => 3,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// Reads a state set, applying `tol` when given.
pub fn load_set(path: &Path, tol: Option<f64>) -> Result<StateSet> {
    let set = parse_state_set(&read(path)?).map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
        other => other,
    })?;
    Ok(match tol {
        Some(t) => set.with_tolerance(t),
        None => set,
    })
}

pub fn load_protocol(path: &Path) -> Result<ProtocolNode> {
    parse_protocol(&read(path)?)
}

fn structure(mut doc: ReportDocument, set: &StateSet) -> Result<ReportDocument> {
    let g = compute_graph(set)?;
    doc.relation_vector = Some(relation_vector(&g));
    match classify(&g) {
        Ok(case) => doc.pattern = Some(PatternDoc::from_pattern(&case.pattern)),
        Err(e) => doc.notes.push(format!("not classified: {e}")),
    }
    doc.local_ranks = Some(
        (0..set.parties())
            .map(|p| local_rank(set, p))
            .collect::<Result<_>>()?,
    );
    Ok(doc.with_graph(&g))
}

pub fn classify_set(set: &StateSet) -> Result<ReportDocument> {
    structure(ReportDocument::new("classify"), set)
}

pub fn cmd_classify(input: &Path, tol: Option<f64>) -> Result<ReportDocument> {
    classify_set(&load_set(input, tol)?)
}

fn analysis_docs(set: &StateSet) -> Result<Vec<PartyAnalysisDoc>> {
    Ok(cert::analyze(set)?
        .into_iter()
        .map(|(space, verdict)| PartyAnalysisDoc {
            party: space.party + 1,
            verdict: verdict.name().into(),
            constraint_pairs: space
                .constraint_pairs
                .iter()
                .map(|&(a, b)| [a + 1, b + 1])
                .collect(),
            space_dimension: space.basis.len(),
            constraint_residual: Some(space.constraint_residual(set)),
            proportionality_residual: None,
            distinguished_pair: match verdict {
                TrivialityVerdict::Informative { pair, .. } => Some([pair.0 + 1, pair.1 + 1]),
                _ => None,
            },
            basis: None,
        })
        .collect())
}

pub fn synthesize_set(set: &StateSet, opts: &Options) -> Result<ReportDocument> {
    let mut doc = structure(ReportDocument::new("synthesize"), set)?;
    let verdict = synthesize(set, opts)?;
    doc.verdict = Some(verdict.name().into());
    if let (Some(p), Some(r)) = (verdict.protocol(), verdict.report()) {
        doc.protocol = Some(ProtocolDoc::from_node(p));
        doc = doc.with_simulation(r);
    }
    match &verdict {
        Verdict::IndistinguishableCertified { certificate } => {
            doc.parties = Some(certificate_doc(certificate));
        }
        Verdict::Unknown { reason, .. } => {
            doc.notes.push(reason.clone());
            doc.parties = Some(analysis_docs(set)?);
        }
        _ => {}
    }
    Ok(doc)
}

pub fn cmd_synthesize(
    input: &Path,
    depth: Option<usize>,
    tol: Option<f64>,
) -> Result<ReportDocument> {
    let mut opts = Options::default();
    if let Some(d) = depth {
        opts.depth_limit = d;
    }
    synthesize_set(&load_set(input, tol)?, &opts)
}

pub fn certify_set(set: &StateSet) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("certify");
    match cert::certify_indistinguishable(set)? {
        Some(c) => {
            if !c.recheck(set) {
                return Err(Error::Invariant(
                    "certificate failed its own re-check".into(),
                ));
            }
            doc.verdict = Some("IndistinguishableCertified".into());
            doc.parties = Some(certificate_doc(&c));
        }
        None => {
            doc.verdict = Some("NotCertified".into());
            doc.parties = Some(analysis_docs(set)?);
        }
    }
    Ok(doc)
}

pub fn cmd_certify(input: &Path, tol: Option<f64>) -> Result<ReportDocument> {
    certify_set(&load_set(input, tol)?)
}

pub fn simulate_set(set: &StateSet, protocol: &ProtocolNode) -> Result<ReportDocument> {
    let report = simulate(protocol, set, None)?;
    let mut doc = ReportDocument::new("simulate");
    doc.protocol = Some(ProtocolDoc::from_node(protocol));
    for &(a, b) in &report.violations {
        doc.notes.push(format!(
            "orthogonality lost between states {} and {}",
            a + 1,
            b + 1
        ));
    }
    Ok(doc.with_simulation(&report))
}

pub fn cmd_simulate(input: &Path, protocol: &Path, tol: Option<f64>) -> Result<ReportDocument> {
    simulate_set(&load_set(input, tol)?, &load_protocol(protocol)?)
}

/// What to realize.
#[derive(Clone, Debug)]
pub enum GraphSpec {
    /// An explicit edge list (see [`parse_edge_spec`]).
    Edges {
        states: usize,
        parties: usize,
        spec: String,
    },
    /// A random graph with these per-party edge counts.
    Counts { states: usize, counts: Vec<usize> },
}

impl GraphSpec {
    pub fn graph(&self, seed: u64) -> Result<OrthoGraph> {
        match self {
            GraphSpec::Edges {
                states,
                parties,
                spec,
            } => parse_edge_spec(*states, *parties, spec),
            GraphSpec::Counts { states, counts } => random_graph_with_counts(*states, counts, seed),
        }
    }
}

pub fn cmd_generate(
    spec: &GraphSpec,
    seed: u64,
    dims: Option<&[usize]>,
    tol: Option<f64>,
) -> Result<StateSet> {
    let g = spec.graph(seed)?;
    generate_from_graph(&g, dims, seed, tol.unwrap_or(DEFAULT_TOL))
}

/// Parameter presets for the three probabilistic cases (`h = 0`; second
/// party `a' = b' = 1` with its optional parameters zero).
pub fn theorem4_params(case: u8) -> Result<FamilyParams> {
    let (d, g) = match case {
        1 => (1.0, 0.0),
        2 => (0.0, 1.0),
        3 => (1.0, 1.0),
        _ => return Err(Error::Input(format!("no case {case}"))),
    };
    Ok(FamilyParams::first_party(1.0, 1.0, d, g, 0.0))
}

/// The first-party measurement for `case`, followed by a perfect protocol on
/// whatever survives outcome `M1`. Outcome `M2` is left unresolved.
pub fn theorem4_protocol(set: &StateSet, p: &FamilyParams, case: u8) -> Result<ProtocolNode> {
    let m = theorem4_measurements(p, case)?;
    let first = apply(set, &m, 0)?;
    let second = apply(set, &m, 1)?;
    let resolved = find_perfect(&first.post_set, &Options::default())
        .ok_or_else(|| Error::Invariant("outcome M1 survivors are not separable".into()))?;
    Ok(ProtocolNode::step(
        m,
        Rule::Gadget,
        vec![
            resolved,
            ProtocolNode::ambiguous(second.post_set.labels().to_vec()),
        ],
    ))
}

fn theorem4_demo(case: u8) -> Result<ReportDocument> {
    let p = theorem4_params(case)?;
    let set = family_eq2(&p)?;
    let mut doc = structure(ReportDocument::new(&format!("demo theorem4-{case}")), &set)?;
    let protocol = theorem4_protocol(&set, &p, case)?;
    let report = simulate(&protocol, &set, None)?;
    let m = theorem4_measurements(&p, case)?;
    let first = apply(&set, &m, 0)?;
    for (j, q) in first.probabilities.iter().enumerate() {
        doc.values.insert(format!("P(M1 | state {})", j + 1), *q);
    }
    let (b, c, d, e, g) = (p.b, p.c(), p.d, p.e(), p.g);
    match case {
        1 => {
            let f = d.norm_sqr() / (5.0 * (1.0 + b.norm_sqr() + c.norm_sqr() + d.norm_sqr()));
            doc.values
                .insert("state 3 contribution (closed form)".into(), f);
            doc.values.insert(
                "state 3 contribution (simulated)".into(),
                report.success[2] / 5.0,
            );
        }
        2 => {
            let f = g.norm_sqr() / (5.0 * (1.0 + e.norm_sqr() + g.norm_sqr()));
            doc.values
                .insert("state 4 contribution (closed form)".into(), f);
            doc.values.insert(
                "state 4 contribution (simulated)".into(),
                report.success[3] / 5.0,
            );
        }
        _ => {
            let db = d.norm_sqr() + b.norm_sqr();
            doc.values
                .insert("P(M1 | state 5) (closed form)".into(), d.norm_sqr() / db);
            doc.values.insert(
                "P(M1 | state 4) (closed form)".into(),
                (d - g * b).norm_sqr() / (db * (1.0 + e.norm_sqr() + g.norm_sqr())),
            );
        }
    }
    let (ok, _) = preserves_orthogonality(&set, &m, 1)?;
    doc.notes.push(format!(
        "outcome M2 {} orthogonality",
        if ok { "preserves" } else { "breaks" }
    ));
    doc.verdict = Some("Probabilistic".into());
    doc.protocol = Some(ProtocolDoc::from_node(&protocol));
    Ok(doc.with_simulation(&report))
}

fn eq12_demo() -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("demo eq12");
    let m = eq12_povm();
    let set = family_eq11();
    doc.values
        .insert("completeness residual".into(), m.completeness_residual());
    doc.values.insert("psd residual".into(), m.psd_residual());
    let mut all = true;
    for o in 0..m.outcomes() {
        let (ok, _) = preserves_orthogonality(&set, &m, o)?;
        all &= ok;
        let upd = apply(&set, &m, o)?;
        let ruled_out: Vec<String> = upd.dropped.iter().map(|j| (j + 1).to_string()).collect();
        doc.notes.push(format!(
            "outcome {} rules out states {}",
            m.labels()[o],
            ruled_out.join(", ")
        ));
    }
    doc.notes.push(format!(
        "on the tripartite set every outcome {} orthogonality",
        if all { "preserves" } else { "breaks" }
    ));
    let pairs = cert::constraint_pairs(&set, 2);
    if let Some(h) = hitting_set_povm(&set, 2, &pairs) {
        let dist = h
            .elements()
            .iter()
            .map(|e| {
                m.elements()
                    .iter()
                    .map(|f| (e - f).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max);
        doc.values
            .insert("distance to hitting-set construction".into(), dist);
    }
    let protocol = ProtocolNode::step(
        m,
        Rule::Given,
        (0..4)
            .map(|o| {
                let upd = apply(&set, &eq12_povm(), o)?;
                find_perfect(&upd.post_set, &Options::default())
                    .ok_or_else(|| Error::Invariant("POVM outcome left an unresolved set".into()))
            })
            .collect::<Result<_>>()?,
    );
    let report = simulate(&protocol, &set, None)?;
    doc.protocol = Some(ProtocolDoc::from_node(&protocol));
    Ok(doc.with_simulation(&report))
}

pub fn demo_set(name: &str) -> Result<StateSet> {
    match name {
        "eq3" => family_eq3(re(1.0), re(1.0), re(1.0), re(1.0)),
        "eq10" => Ok(family_eq10()),
        "eq11" | "eq12" => Ok(family_eq11()),
        "theorem4-1" => family_eq2(&theorem4_params(1)?),
        "theorem4-2" => family_eq2(&theorem4_params(2)?),
        "theorem4-3" => family_eq2(&theorem4_params(3)?),
        _ => Err(Error::Input(format!(
            "unknown demo {name:?}; expected one of {}",
            DEMOS.join(", ")
        ))),
    }
}

pub fn cmd_demo(name: &str) -> Result<ReportDocument> {
    let mut doc = match name {
        "eq12" => return eq12_demo(),
        "theorem4-1" => return theorem4_demo(1),
        "theorem4-2" => return theorem4_demo(2),
        "theorem4-3" => return theorem4_demo(3),
        _ => synthesize_set(&demo_set(name)?, &Options::default())?,
    };
    doc.command = format!("demo {name}");
    Ok(doc)
}
