//! Edge-colored orthogonality graphs.
//!
//! Vertex `j` is the `j`-th member of a set; the pair `(j, k)` carries color
//! `p` when the two members' party-`p` kets are orthogonal. Colors are stored
//! as a bitmask per unordered pair.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::StateSet;

pub const MAX_PARTIES: usize = 3;
pub const MAX_VERTICES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrthoGraph {
    n: usize,
    parties: usize,
    masks: Vec<u8>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl OrthoGraph {
    /// Graph on `n` vertices with no edges. Not a valid orthogonality graph
    /// until every pair has a color.
    pub fn empty(n: usize, parties: usize) -> Self {
        Self {
            n,
            parties,
            masks: vec![0; n * n.saturating_sub(1) / 2],
        }
    }

    /// Builds a graph from colored edges `(party, j, k)`, 0-based.
    pub fn from_edges(n: usize, parties: usize, edges: &[(usize, usize, usize)]) -> Result<Self> {
        if parties == 0 || parties > MAX_PARTIES {
            return Err(Error::UnsupportedGraph(format!("{parties} parties")));
        }
        let mut g = Self::empty(n, parties);
        for &(p, j, k) in edges {
            if p >= parties {
                return Err(Error::PartyOutOfRange { party: p, parties });
            }
            if j >= n || k >= n || j == k {
                return Err(Error::UnsupportedGraph(format!("bad edge ({j}, {k})")));
            }
            g.masks[pair_index(n, j, k)] |= 1 << p;
        }
        if let Some((j, k)) = g.pairs().find(|&(j, k)| g.label(j, k) == 0) {
            return Err(Error::UnsupportedGraph(format!(
                "pair ({}, {}) has no color",
                j + 1,
                k + 1
            )));
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    /// Unordered pairs `(j, k)`, `j < k`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).tuple_combinations()
    }

    /// Color bitmask of the pair; bit `p` set when orthogonal on party `p`.
    pub fn label(&self, j: usize, k: usize) -> u8 {
        self.masks[pair_index(self.n, j, k)]
    }

    pub fn has_edge(&self, party: usize, j: usize, k: usize) -> bool {
        j != k && self.label(j, k) & (1 << party) != 0
    }

    /// Edges of one color.
    pub fn edges(&self, party: usize) -> Vec<(usize, usize)> {
        self.pairs()
            .filter(|&(j, k)| self.has_edge(party, j, k))
            .collect()
    }

    pub fn degree(&self, party: usize, v: usize) -> usize {
        (0..self.n).filter(|&u| self.has_edge(party, v, u)).count()
    }

    /// Graph whose vertex `i` is this graph's vertex `state_perm[i]` and whose
    /// color `p` is this graph's color `party_perm[p]`.
    pub fn relabeled(&self, state_perm: &[usize], party_perm: &[usize]) -> OrthoGraph {
        let mut g = Self::empty(self.n, self.parties);
        for (i, j) in (0..self.n).tuple_combinations() {
            let old = self.label(state_perm[i], state_perm[j]);
            let mut m = 0u8;
            for (p, &q) in party_perm.iter().enumerate() {
                if old & (1 << q) != 0 {
                    m |= 1 << p;
                }
            }
            g.masks[pair_index(self.n, i, j)] = m;
        }
        g
    }

    /// The subgraph induced on the given vertices, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> OrthoGraph {
        let mut g = Self::empty(vertices.len(), self.parties);
        for (i, j) in (0..vertices.len()).tuple_combinations() {
            g.masks[pair_index(vertices.len(), i, j)] = self.label(vertices[i], vertices[j]);
        }
        g
    }

    /// Every pair carries exactly one color.
    pub fn single_colored(&self) -> bool {
        self.masks.iter().all(|m| m.count_ones() == 1)
    }
}

/// Orthogonality graph of a set of pairwise orthogonal product states.
pub fn compute_graph(set: &StateSet) -> Result<OrthoGraph> {
    let n = set.len();
    let mut g = OrthoGraph::empty(n, set.parties());
    let mut bad = Vec::new();
    for (j, k) in (0..n).tuple_combinations() {
        let m = set.orthogonality_mask(j, k);
        if m == 0 {
            bad.push((j, k));
        }
        g.masks[pair_index(n, j, k)] = m;
    }
    if !bad.is_empty() {
        return Err(Error::NotOrthogonal { pairs: bad });
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationVector {
    pub counts: Vec<usize>,
    pub canonical: Vec<usize>,
}

pub fn relation_vector(g: &OrthoGraph) -> RelationVector {
    let counts: Vec<usize> = (0..g.parties).map(|p| g.edges(p).len()).collect();
    let mut canonical = counts.clone();
    canonical.sort_unstable_by(|a, b| b.cmp(a));
    RelationVector { counts, canonical }
}

/// Isomorphism-class key under state relabeling and party permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub n: usize,
    pub parties: usize,
    pub masks: Vec<u8>,
}

/// Lexicographically least mask list over all `n!·m!` relabelings.
pub fn canonical_form(g: &OrthoGraph) -> CanonicalKey {
    let mut best: Option<Vec<u8>> = None;
    for pp in (0..g.parties).permutations(g.parties) {
        for sp in (0..g.n).permutations(g.n) {
            let h = g.relabeled(&sp, &pp);
            if best.as_ref().is_none_or(|b| h.masks < *b) {
                best = Some(h.masks);
            }
        }
    }
    CanonicalKey {
        n: g.n,
        parties: g.parties,
        masks: best.unwrap_or_default(),
    }
}

/// Structural patterns the discrimination strategies key on. Indices are
/// 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Pattern {
    /// `state` is orthogonal to every other vertex on `party`.
    IsolatingState {
        party: usize,
        state: usize,
    },
    /// Two colors, each a 5-cycle, complementary.
    Cycle54,
    /// Four vertices, three colors, each color a distinct perfect matching.
    Matching13,
    /// `pair.0` and `pair.1` are both `party`-adjacent to all other vertices.
    PairBlock {
        party: usize,
        pair: (usize, usize),
    },
    /// The `party` edges form a star around `center`.
    SplitEdge {
        party: usize,
        center: usize,
        leaves: Vec<usize>,
    },
    Generic,
}

impl Pattern {
    pub fn name(&self) -> &'static str {
        match self {
            Pattern::IsolatingState { .. } => "IsolatingState",
            Pattern::Cycle54 => "Cycle54",
            Pattern::Matching13 => "Matching13",
            Pattern::PairBlock { .. } => "PairBlock",
            Pattern::SplitEdge { .. } => "SplitEdge",
            Pattern::Generic => "Generic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseId {
    pub category: RelationVector,
    pub pattern: Pattern,
}

fn isolating(g: &OrthoGraph) -> Option<Pattern> {
    for party in 0..g.parties {
        for state in 0..g.n {
            if g.degree(party, state) == g.n - 1 {
                return Some(Pattern::IsolatingState { party, state });
            }
        }
    }
    None
}

fn is_cycle(g: &OrthoGraph, party: usize) -> bool {
    if (0..g.n).any(|v| g.degree(party, v) != 2) {
        return false;
    }
    let (mut prev, mut cur, mut len) = (None, 0usize, 0usize);
    loop {
        let next = (0..g.n)
            .find(|&u| Some(u) != prev && g.has_edge(party, cur, u))
            .expect("degree 2");
        prev = Some(cur);
        cur = next;
        len += 1;
        if cur == 0 {
            return len == g.n;
        }
    }
}

fn cycle54(g: &OrthoGraph) -> bool {
    if g.n != 5 || !g.single_colored() {
        return false;
    }
    let used: Vec<usize> = (0..g.parties).filter(|&p| !g.edges(p).is_empty()).collect();
    used.len() == 2 && used.iter().all(|&p| is_cycle(g, p))
}

fn matching13(g: &OrthoGraph) -> bool {
    if g.n != 4 || g.parties != 3 || !g.single_colored() {
        return false;
    }
    let classes: Vec<Vec<(usize, usize)>> = (0..3).map(|p| g.edges(p)).collect();
    classes
        .iter()
        .enumerate()
        .all(|(p, e)| e.len() == 2 && (0..4).all(|v| g.degree(p, v) == 1))
        && classes.iter().tuple_combinations().all(|(x, y)| x != y)
}

fn pair_block(g: &OrthoGraph) -> Option<Pattern> {
    for party in 0..g.parties {
        for (j, k) in g.pairs() {
            let covers = (0..g.n)
                .filter(|&u| u != j && u != k)
                .all(|u| g.has_edge(party, j, u) && g.has_edge(party, k, u));
            if covers && g.n > 2 {
                return Some(Pattern::PairBlock {
                    party,
                    pair: (j, k),
                });
            }
        }
    }
    None
}

fn split_edge(g: &OrthoGraph) -> Option<Pattern> {
    for party in 0..g.parties {
        let edges = g.edges(party);
        if edges.is_empty() {
            continue;
        }
        for center in 0..g.n {
            let deg = g.degree(party, center);
            if deg == edges.len() && deg < g.n - 1 {
                let leaves = (0..g.n).filter(|&u| g.has_edge(party, center, u)).collect();
                return Some(Pattern::SplitEdge {
                    party,
                    center,
                    leaves,
                });
            }
        }
    }
    None
}

/// Category and first matching pattern, in the order isolating state,
/// double 5-cycle, three matchings, pair block, star split, generic.
pub fn classify(g: &OrthoGraph) -> Result<CaseId> {
    if g.n < 2 || g.n > MAX_VERTICES {
        return Err(Error::UnsupportedGraph(format!("{} vertices", g.n)));
    }
    if g.parties < 2 || g.parties > MAX_PARTIES {
        return Err(Error::UnsupportedGraph(format!("{} parties", g.parties)));
    }
    let pattern = isolating(g)
        .or_else(|| cycle54(g).then_some(Pattern::Cycle54))
        .or_else(|| matching13(g).then_some(Pattern::Matching13))
        .or_else(|| pair_block(g))
        .or_else(|| split_edge(g))
        .unwrap_or(Pattern::Generic);
    Ok(CaseId {
        category: relation_vector(g),
        pattern,
    })
}

/// Re-checks that `pattern` holds on `g`.
pub fn pattern_holds(g: &OrthoGraph, pattern: &Pattern) -> bool {
    match pattern {
        Pattern::IsolatingState { party, state } => g.degree(*party, *state) == g.n - 1,
        Pattern::Cycle54 => cycle54(g),
        Pattern::Matching13 => matching13(g),
        Pattern::PairBlock { party, pair } => (0..g.n)
            .filter(|&u| u != pair.0 && u != pair.1)
            .all(|u| g.has_edge(*party, pair.0, u) && g.has_edge(*party, pair.1, u)),
        Pattern::SplitEdge {
            party,
            center,
            leaves,
        } => {
            let edges = g.edges(*party);
            edges.len() == leaves.len() && leaves.iter().all(|&l| g.has_edge(*party, *center, l))
        }
        Pattern::Generic => true,
    }
}

/// Parses an edge list such as `1:1-4,1-5;2:1-2` (1-based party and state
/// indices, party groups separated by `;`).
pub fn parse_edge_spec(n: usize, parties: usize, spec: &str) -> Result<OrthoGraph> {
    let bad = |what: &str| Error::Input(format!("edge spec: {what}"));
    let mut edges = Vec::new();
    for group in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (party, list) = group.split_once(':').ok_or_else(|| bad(group))?;
        let party: usize = party.trim().parse().map_err(|_| bad(party))?;
        if party == 0 {
            return Err(bad("parties are numbered from 1"));
        }
        for e in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (a, b) = e.split_once('-').ok_or_else(|| bad(e))?;
            let a: usize = a.trim().parse().map_err(|_| bad(e))?;
            let b: usize = b.trim().parse().map_err(|_| bad(e))?;
            if a == 0 || b == 0 {
                return Err(bad("states are numbered from 1"));
            }
            edges.push((party - 1, a - 1, b - 1));
        }
    }
    OrthoGraph::from_edges(n, parties, &edges)
}
