//! JSON documents for state sets, protocols, certificates and reports.
//!
//! Every index written to a document is 1-based; amplitudes are `[re, im]`
//! pairs written in shortest round-trip form.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cert::{Certificate, TrivialityVerdict};
use crate::error::{Error, Result};
use crate::graph::{OrthoGraph, Pattern, RelationVector};
use crate::linalg::{CMat, CVec, DEFAULT_TOL};
use crate::measurement::Measurement;
use crate::protocol::{LeafKind, LeafOutcome, ProtocolNode, Rule, SimulationReport};
use crate::states::{validate, ProductState, StateSet};

pub const STATES_VERSION: &str = "opsdisc-states/1";
pub const PROTOCOL_VERSION: &str = "opsdisc-protocol/1";
pub const REPORT_VERSION: &str = "opsdisc-report/1";

pub type Amp = [f64; 2];

fn amp(z: &Complex64) -> Amp {
    // adding 0.0 turns -0.0 into 0.0
    [z.re + 0.0, z.im + 0.0]
}

fn ket_doc(v: &CVec) -> Vec<Amp> {
    v.iter().map(amp).collect()
}

fn mat_doc(m: &CMat) -> Vec<Vec<Amp>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| amp(&m[(r, c)])).collect())
        .collect()
}

fn mat_from_doc(rows: &[Vec<Amp>], what: &str) -> Result<CMat> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Input(format!(
            "{what}: matrix must be square and nonempty"
        )));
    }
    Ok(CMat::from_fn(n, n, |r, c| {
        Complex64::new(rows[r][c][0], rows[r][c][1])
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSetDocument {
    pub version: String,
    pub parties: usize,
    pub dims: Vec<usize>,
    /// `states[j][i]` is the party-`i` ket of state `j`.
    pub states: Vec<Vec<Vec<Amp>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

impl StateSetDocument {
    pub fn from_set(set: &StateSet) -> Self {
        Self {
            version: STATES_VERSION.into(),
            parties: set.parties(),
            dims: set.dims().to_vec(),
            states: set
                .states()
                .iter()
                .map(|s| s.locals().iter().map(ket_doc).collect())
                .collect(),
            labels: None,
            tol: (set.tol() != DEFAULT_TOL).then_some(set.tol()),
        }
    }

    /// Builds the set, reporting the first structural problem with its
    /// location, then any non-orthogonal pairs.
    pub fn to_set(&self) -> Result<StateSet> {
        if self.version != STATES_VERSION {
            return Err(Error::Input(format!(
                "unsupported version {:?}",
                self.version
            )));
        }
        if self.parties != self.dims.len() {
            return Err(Error::Input(format!(
                "parties = {} but {} dims given",
                self.parties,
                self.dims.len()
            )));
        }
        if !(2..=3).contains(&self.parties) {
            return Err(Error::Input(format!(
                "{} parties; 2 or 3 supported",
                self.parties
            )));
        }
        if let Some(l) = &self.labels {
            if l.len() != self.states.len() {
                return Err(Error::Input(format!(
                    "{} labels for {} states",
                    l.len(),
                    self.states.len()
                )));
            }
        }
        let tol = self.tol.unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Error::Input(format!("tolerance {tol} out of range")));
        }
        let mut states = Vec::with_capacity(self.states.len());
        for (j, s) in self.states.iter().enumerate() {
            if s.len() != self.parties {
                return Err(Error::Input(format!(
                    "state {}: {} party kets, expected {}",
                    j + 1,
                    s.len(),
                    self.parties
                )));
            }
            let mut locals = Vec::with_capacity(self.parties);
            for (i, amps) in s.iter().enumerate() {
                if amps.len() != self.dims[i] {
                    return Err(Error::Input(format!(
                        "state {}, party {}: {} amplitudes, expected {}",
                        j + 1,
                        i + 1,
                        amps.len(),
                        self.dims[i]
                    )));
                }
                if amps.iter().flatten().any(|x| !x.is_finite()) {
                    return Err(Error::Input(format!(
                        "state {}, party {}: non-finite amplitude",
                        j + 1,
                        i + 1
                    )));
                }
                let v = CVec::from_iterator(
                    amps.len(),
                    amps.iter().map(|a| Complex64::new(a[0], a[1])),
                );
                let norm = v.norm();
                if (norm - 1.0).abs() > tol.max(1e-12) {
                    return Err(Error::Input(format!(
                        "state {}, party {}: ket norm {norm} is not 1",
                        j + 1,
                        i + 1
                    )));
                }
                locals.push(v);
            }
            states.push(ProductState::from_normalized(locals, 1.0)?);
        }
        let set = StateSet::with_tol(self.dims.clone(), states, tol)?;
        let report = validate(&set);
        if !report.orthogonal {
            let pairs: Vec<String> = report
                .non_orthogonal_pairs
                .iter()
                .map(|(j, k)| format!("({}, {})", j + 1, k + 1))
                .collect();
            return Err(Error::Input(format!(
                "states not pairwise orthogonal: {}",
                pairs.join(", ")
            )));
        }
        Ok(set)
    }
}

fn json_error(e: serde_json::Error) -> Error {
    // the message carries "at line L column C" for syntax errors
    Error::Input(e.to_string())
}

pub fn parse_state_set(text: &str) -> Result<StateSet> {
    let doc: StateSetDocument = serde_json::from_str(text).map_err(json_error)?;
    doc.to_set()
}

pub fn state_set_to_json(set: &StateSet) -> String {
    to_json(&StateSetDocument::from_set(set))
}

/// Indents objects, puts each element of an outermost array of arrays on
/// its own line and keeps deeper arrays inline.
struct ObjectIndent {
    depth: usize,
    nonempty: Vec<bool>,
    /// Open arrays since the innermost object; whether each broke lines.
    arrays: Vec<Vec<bool>>,
}

impl ObjectIndent {
    fn newline<W: ?Sized + std::io::Write>(&self, w: &mut W) -> std::io::Result<()> {
        w.write_all(b"\n")?;
        for _ in 0..self.depth {
            w.write_all(b"  ")?;
        }
        Ok(())
    }
}

impl serde_json::ser::Formatter for ObjectIndent {
    fn begin_array<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        let open = self.arrays.last_mut().expect("arrays sit inside a frame");
        if open.len() == 1 {
            if !open[0] {
                open[0] = true;
                self.depth += 1;
            }
            self.newline(w)?;
        }
        self.arrays.last_mut().unwrap().push(false);
        w.write_all(b"[")
    }

    fn end_array<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        if self.arrays.last_mut().unwrap().pop().unwrap_or(false) {
            self.depth -= 1;
            self.newline(w)?;
        }
        w.write_all(b"]")
    }

    fn begin_object<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.depth += 1;
        self.nonempty.push(false);
        self.arrays.push(Vec::new());
        w.write_all(b"{")
    }

    fn end_object<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.arrays.pop();
        self.depth -= 1;
        if self.nonempty.pop().unwrap_or(false) {
            self.newline(w)?;
        }
        w.write_all(b"}")
    }

    fn begin_object_key<W: ?Sized + std::io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> std::io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        if let Some(n) = self.nonempty.last_mut() {
            *n = true;
        }
        self.newline(w)
    }

    fn begin_object_value<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        w.write_all(b": ")
    }

    fn begin_array_value<W: ?Sized + std::io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> std::io::Result<()> {
        let broken = self
            .arrays
            .last()
            .and_then(|a| a.last())
            .copied()
            .unwrap_or(false);
        match (first, broken) {
            (true, _) => Ok(()),
            (false, true) => w.write_all(b","),
            (false, false) => w.write_all(b", "),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let fmt = ObjectIndent {
        depth: 0,
        nonempty: Vec::new(),
        arrays: vec![Vec::new()],
    };
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    value.serialize(&mut ser).expect("documents serialize");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProtocolDoc {
    Identified {
        state: usize,
    },
    Ambiguous {
        states: Vec<usize>,
    },
    DeadBranch {
        offending: Vec<[usize; 2]>,
    },
    Step {
        party: usize,
        rule: String,
        outcomes: Vec<String>,
        /// Kraus operators, row-major.
        kraus: Vec<Vec<Vec<Amp>>>,
        branches: Vec<ProtocolDoc>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolDocument {
    pub version: String,
    pub root: ProtocolDoc,
}

impl ProtocolDoc {
    pub fn from_node(node: &ProtocolNode) -> Self {
        match node {
            ProtocolNode::Leaf(LeafKind::Identified(j)) => ProtocolDoc::Identified { state: j + 1 },
            ProtocolNode::Leaf(LeafKind::Ambiguous(v)) => ProtocolDoc::Ambiguous {
                states: v.iter().map(|j| j + 1).collect(),
            },
            ProtocolNode::Leaf(LeafKind::DeadBranch { offending }) => ProtocolDoc::DeadBranch {
                offending: offending.iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
            },
            ProtocolNode::Step {
                measurement,
                rule,
                branches,
            } => ProtocolDoc::Step {
                party: measurement.party() + 1,
                rule: rule.name().into(),
                outcomes: measurement.labels().to_vec(),
                kraus: measurement.kraus().iter().map(mat_doc).collect(),
                branches: branches.iter().map(ProtocolDoc::from_node).collect(),
            },
        }
    }

    pub fn to_node(&self) -> Result<ProtocolNode> {
        let idx = |x: usize| {
            x.checked_sub(1)
                .ok_or_else(|| Error::Input("state indices start at 1".into()))
        };
        Ok(match self {
            ProtocolDoc::Identified { state } => ProtocolNode::identified(idx(*state)?),
            ProtocolDoc::Ambiguous { states } => {
                ProtocolNode::ambiguous(states.iter().map(|&s| idx(s)).collect::<Result<_>>()?)
            }
            ProtocolDoc::DeadBranch { offending } => ProtocolNode::Leaf(LeafKind::DeadBranch {
                offending: offending
                    .iter()
                    .map(|&[a, b]| Ok((idx(a)?, idx(b)?)))
                    .collect::<Result<_>>()?,
            }),
            ProtocolDoc::Step {
                party,
                rule,
                outcomes,
                kraus,
                branches,
            } => {
                let party = party
                    .checked_sub(1)
                    .ok_or_else(|| Error::Input("parties are numbered from 1".into()))?;
                let ops = kraus
                    .iter()
                    .enumerate()
                    .map(|(i, k)| mat_from_doc(k, &format!("kraus operator {}", i + 1)))
                    .collect::<Result<Vec<_>>>()?;
                let meas = Measurement::new(party, ops, outcomes.clone(), 1e-8)
                    .map_err(|e| Error::Input(e.to_string()))?;
                let rule = Rule::from_name(rule)
                    .ok_or_else(|| Error::Input(format!("unknown rule {rule:?}")))?;
                ProtocolNode::step(
                    meas,
                    rule,
                    branches
                        .iter()
                        .map(|b| b.to_node())
                        .collect::<Result<_>>()?,
                )
            }
        })
    }
}

pub fn protocol_to_json(node: &ProtocolNode) -> String {
    to_json(&ProtocolDocument {
        version: PROTOCOL_VERSION.into(),
        root: ProtocolDoc::from_node(node),
    })
}

/// Accepts a protocol document or a report that carries a protocol.
pub fn parse_protocol(text: &str) -> Result<ProtocolNode> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
    if value.get("version").and_then(|v| v.as_str()) == Some(REPORT_VERSION) {
        let report: ReportDocument = serde_json::from_value(value).map_err(json_error)?;
        return report
            .protocol
            .ok_or_else(|| Error::Input("report carries no protocol".into()))?
            .to_node();
    }
    let doc: ProtocolDocument = serde_json::from_value(value).map_err(json_error)?;
    if doc.version != PROTOCOL_VERSION {
        return Err(Error::Input(format!(
            "unsupported version {:?}",
            doc.version
        )));
    }
    doc.root.to_node()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatternDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub party: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub states: Vec<usize>,
}

impl PatternDoc {
    pub fn from_pattern(p: &Pattern) -> Self {
        let (party, states) = match p {
            Pattern::IsolatingState { party, state } => (Some(party + 1), vec![state + 1]),
            Pattern::PairBlock { party, pair } => (Some(party + 1), vec![pair.0 + 1, pair.1 + 1]),
            Pattern::SplitEdge {
                party,
                center,
                leaves,
            } => (
                Some(party + 1),
                std::iter::once(center + 1)
                    .chain(leaves.iter().map(|l| l + 1))
                    .collect(),
            ),
            _ => (None, vec![]),
        };
        Self {
            name: p.name().into(),
            party,
            states,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartyAnalysisDoc {
    pub party: usize,
    pub verdict: String,
    pub constraint_pairs: Vec<[usize; 2]>,
    pub space_dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraint_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proportionality_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinguished_pair: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<Vec<Amp>>>>,
}

pub fn certificate_doc(cert: &Certificate) -> Vec<PartyAnalysisDoc> {
    cert.parties
        .iter()
        .map(|pc| PartyAnalysisDoc {
            party: pc.space.party + 1,
            verdict: TrivialityVerdict::ProportionalIdentityOnSpan.name().into(),
            constraint_pairs: pc
                .space
                .constraint_pairs
                .iter()
                .map(|&(a, b)| [a + 1, b + 1])
                .collect(),
            space_dimension: pc.space.basis.len(),
            constraint_residual: Some(pc.constraint_residual),
            proportionality_residual: Some(pc.proportionality_residual),
            distinguished_pair: None,
            basis: Some(pc.space.basis.iter().map(mat_doc).collect()),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathDoc {
    pub path: Vec<usize>,
    pub probability: f64,
    pub outcome: String,
}

/// Output of every command.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub tool: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation_vector: Option<RelationVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<PatternDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<Vec<[usize; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_ranks: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub protocol: Option<ProtocolDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub success: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overall: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paths: Option<Vec<Vec<PathDoc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parties: Option<Vec<PartyAnalysisDoc>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ReportDocument {
    pub fn new(command: &str) -> Self {
        Self {
            version: REPORT_VERSION.into(),
            tool: format!("opsdisc {}", env!("CARGO_PKG_VERSION")),
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn with_graph(mut self, g: &OrthoGraph) -> Self {
        self.edges = Some(
            (0..g.parties())
                .map(|p| g.edges(p).iter().map(|&(a, b)| [a + 1, b + 1]).collect())
                .collect(),
        );
        self
    }

    pub fn with_simulation(mut self, r: &SimulationReport) -> Self {
        self.success = Some(r.success.clone());
        self.overall = Some(r.overall);
        self.paths = Some(
            r.paths
                .iter()
                .map(|ps| {
                    ps.iter()
                        .map(|p| PathDoc {
                            path: p.path.iter().map(|o| o + 1).collect(),
                            probability: p.probability,
                            outcome: match &p.outcome {
                                LeafOutcome::Identified => "identified".into(),
                                LeafOutcome::Misidentified(j) => {
                                    format!("misidentified as {}", j + 1)
                                }
                                LeafOutcome::Ambiguous => "ambiguous".into(),
                                LeafOutcome::Dead => "dead".into(),
                            },
                        })
                        .collect()
                })
                .collect(),
        );
        self
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    /// Plain-text rendering of the same content.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("{} ({})", self.command, self.tool));
        if let Some(seed) = self.seed {
            line(format!("seed: {seed}"));
        }
        if let Some(v) = &self.verdict {
            line(format!("verdict: {v}"));
        }
        if let Some(rv) = &self.relation_vector {
            line(format!(
                "relation vector: ({}) canonical ({})",
                join(&rv.counts),
                join(&rv.canonical)
            ));
        }
        if let Some(p) = &self.pattern {
            let mut s = format!("pattern: {}", p.name);
            if let Some(party) = p.party {
                s.push_str(&format!(" party {party}"));
            }
            if !p.states.is_empty() {
                s.push_str(&format!(" states {}", join(&p.states)));
            }
            line(s);
        }
        if let Some(edges) = &self.edges {
            for (p, es) in edges.iter().enumerate() {
                let list: Vec<String> = es.iter().map(|[a, b]| format!("({a},{b})")).collect();
                line(format!("party {} edges: {}", p + 1, list.join(" ")));
            }
        }
        if let Some(r) = &self.local_ranks {
            line(format!("local ranks: {}", join(r)));
        }
        if let Some(p) = &self.protocol {
            line("protocol:".into());
            render_protocol(p, 1, &mut line);
        }
        if let Some(s) = &self.success {
            let list: Vec<String> = s.iter().map(|x| format!("{x:.12}")).collect();
            line(format!("success per state: {}", list.join(" ")));
        }
        if let Some(o) = self.overall {
            line(format!("overall success: {o:.12}"));
        }
        if let Some(parties) = &self.parties {
            for p in parties {
                let pairs: Vec<String> = p
                    .constraint_pairs
                    .iter()
                    .map(|[a, b]| format!("({a},{b})"))
                    .collect();
                let mut s = format!(
                    "party {}: {} (space dimension {}, constraints {})",
                    p.party,
                    p.verdict,
                    p.space_dimension,
                    pairs.join(" ")
                );
                if let Some(r) = p.constraint_residual {
                    s.push_str(&format!(", constraint residual {r:.3e}"));
                }
                if let Some(r) = p.proportionality_residual {
                    s.push_str(&format!(", proportionality residual {r:.3e}"));
                }
                if let Some([a, b]) = p.distinguished_pair {
                    s.push_str(&format!(", separates states {a} and {b}"));
                }
                line(s);
            }
        }
        for (k, v) in &self.values {
            let v = if *v != 0.0 && v.abs() < 1e-4 {
                format!("{v:.3e}")
            } else {
                v.to_string()
            };
            line(format!("{k}: {v}"));
        }
        for n in &self.notes {
            line(format!("note: {n}"));
        }
        out
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn render_protocol(p: &ProtocolDoc, indent: usize, line: &mut impl FnMut(String)) {
    let pad = "  ".repeat(indent);
    match p {
        ProtocolDoc::Identified { state } => line(format!("{pad}-> state {state}")),
        ProtocolDoc::Ambiguous { states } if states.is_empty() => {
            line(format!("{pad}-> (impossible)"))
        }
        ProtocolDoc::Ambiguous { states } => {
            line(format!("{pad}-> ambiguous {{{}}}", join(states)))
        }
        ProtocolDoc::DeadBranch { offending } => {
            let list: Vec<String> = offending
                .iter()
                .map(|[a, b]| format!("({a},{b})"))
                .collect();
            line(format!("{pad}-> dead branch {}", list.join(" ")))
        }
        ProtocolDoc::Step {
            party,
            rule,
            outcomes,
            branches,
            ..
        } => {
            line(format!(
                "{pad}party {party} measures ({rule}, {} outcomes)",
                outcomes.len()
            ));
            for (o, b) in outcomes.iter().zip(branches) {
                line(format!("{pad}  outcome {o}:"));
                render_protocol(b, indent + 2, line);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::family_eq11;

    #[test]
    fn state_set_round_trip() {
        let set = family_eq11();
        let text = state_set_to_json(&set);
        let back = parse_state_set(&text).unwrap();
        assert_eq!(back, set);
        assert_eq!(state_set_to_json(&back), text);
    }

    #[test]
    fn malformed_amplitudes_are_located() {
        let set = family_eq11();
        let mut doc = StateSetDocument::from_set(&set);
        doc.states[1][2].pop();
        let err = doc.to_set().unwrap_err().to_string();
        assert!(err.contains("state 2, party 3"), "{err}");
        let err = parse_state_set("{\"version\": 3}").unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn non_orthogonal_input_lists_pairs() {
        let set = family_eq11();
        let mut doc = StateSetDocument::from_set(&set);
        doc.states[4] = doc.states[3].clone();
        let err = doc.to_set().unwrap_err().to_string();
        assert!(err.contains("(4, 5)"), "{err}");
    }
}
