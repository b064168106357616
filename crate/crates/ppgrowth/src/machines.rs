//! Node-labeled digraph automata whose closed paths spell cyclically reduced
//! words: property verification, closed-path counting, language extraction,
//! and constructors for the machines bounding potentially-positive growth.
//!
//! A closed path is a node sequence `v1..vn` with an edge between consecutive
//! nodes and an edge `vn -> v1`; its image is the word of node labels. In a
//! reduced automaton (no edge joins inversely labeled nodes) every closed
//! path spells a cyclically reduced cyclic word.

use std::collections::{BTreeSet, HashMap, VecDeque};


use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::spectral::{self, IntMatrix};
use crate::words::{CyclicWord, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MachineError {
    #[error("duplicate node id {0}")]
    DuplicateNode(u32),
    #[error("edge references missing node id {0}")]
    DanglingEdge(u32),
    #[error("automaton is not reduced (edge {0} -> {1} joins inverse labels)")]
    NotReduced(u32, u32),
    #[error("automaton is not mixing")]
    NotMixing,
    #[error("rank must be at least 3 for the rank machine, got {0}")]
    RankTooSmall(u16),
    #[error("criterion pair needs y distinct from x and x^-1")]
    InvalidCriterionPair,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Word(#[from] crate::words::WordError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Node {
    pub id: u32,
    pub label: Letter,
}

/// Immutable node-labeled digraph. Nodes are kept sorted by id and edges in
/// lexicographic order; positions in `nodes` are the row/column indices of
/// the adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    rank: u16,
    nodes: Vec<Node>,
    edges: BTreeSet<(u32, u32)>,
    index_of: HashMap<u32, usize>,
}

impl Automaton {
    pub fn new(
        rank: u16,
        nodes: Vec<(u32, Letter)>,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Automaton, MachineError> {
        let mut ns: Vec<Node> = nodes
            .into_iter()
            .map(|(id, label)| Node { id, label })
            .collect();
        ns.sort_by_key(|n| n.id);
        let mut index_of = HashMap::new();
        for (i, n) in ns.iter().enumerate() {
            if index_of.insert(n.id, i).is_some() {
                return Err(MachineError::DuplicateNode(n.id));
            }
        }
        let mut es = BTreeSet::new();
        for (u, v) in edges {
            if !index_of.contains_key(&u) {
                return Err(MachineError::DanglingEdge(u));
            }
            if !index_of.contains_key(&v) {
                return Err(MachineError::DanglingEdge(v));
            }
            es.insert((u, v));
        }
        Ok(Automaton {
            rank,
            nodes: ns,
            edges: es,
            index_of,
        })
    }

    pub fn rank(&self) -> u16 {
        self.rank
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edges.contains(&(u, v))
    }

    fn succ_positions(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(u, v) in &self.edges {
            adj[self.index_of[&u]].push(self.index_of[&v]);
        }
        adj
    }

    /// 0/1 adjacency matrix in node-id order.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.nodes.len();
        let mut m = IntMatrix::zero(n);
        for &(u, v) in &self.edges {
            m.set(self.index_of[&u], self.index_of[&v], 1.into());
        }
        m
    }

    /// True iff no edge joins a node to an inversely labeled node; on failure
    /// the offending edge is the witness.
    pub fn check_reduced(&self) -> Result<(), (u32, u32)> {
        for &(u, v) in &self.edges {
            let lu = self.nodes[self.index_of[&u]].label;
            let lv = self.nodes[self.index_of[&v]].label;
            if lu.is_inverse_of(lv) {
                return Err((u, v));
            }
        }
        Ok(())
    }

    /// Primitivity of the adjacency matrix, decided by strict positivity of
    /// `A^((n-1)^2 + 1)` (Wielandt bound). On failure the witness is either
    /// an ordered pair with no connecting path at all, or the period `d > 1`.
    pub fn check_mixing(&self) -> Result<(), MixingFailure> {
        let n = self.nodes.len();
        if n == 0 {
            return Err(MixingFailure::UnreachablePair(0, 0));
        }
        if spectral::is_primitive(&self.adjacency_matrix()) {
            return Ok(());
        }
        let adj = self.succ_positions();
        // find an unreachable ordered pair (paths of length >= 1)
        for s in 0..n {
            let mut seen = vec![false; n];
            let mut dq: VecDeque<usize> = adj[s].iter().copied().collect();
            for &v in &adj[s] {
                seen[v] = true;
            }
            while let Some(v) = dq.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        dq.push_back(w);
                    }
                }
            }
            if let Some(t) = (0..n).find(|&t| !seen[t]) {
                return Err(MixingFailure::UnreachablePair(
                    self.nodes[s].id,
                    self.nodes[t].id,
                ));
            }
        }
        // strongly connected but imprimitive: report the period
        let mut level = vec![usize::MAX; n];
        level[0] = 0;
        let mut dq = VecDeque::from([0usize]);
        while let Some(v) = dq.pop_front() {
            for &w in &adj[v] {
                if level[w] == usize::MAX {
                    level[w] = level[v] + 1;
                    dq.push_back(w);
                }
            }
        }
        let mut d: u64 = 0;
        for &(u, v) in &self.edges {
            let lu = level[self.index_of[&u]] as i64;
            let lv = level[self.index_of[&v]] as i64;
            let diff = (lu + 1 - lv).unsigned_abs();
            d = num_integer::gcd(d, diff);
        }
        Err(MixingFailure::Periodic(d.max(2)))
    }

    /// Pair-graph test for the one-to-constant property of the labeling:
    /// false iff two distinct paths share start point, end point, and image.
    /// Requires mixing.
    pub fn check_one_to_constant(&self) -> Result<Result<(), DuplicatePaths>, MachineError> {
        if self.check_mixing().is_err() {
            return Err(MachineError::NotMixing);
        }
        Ok(self.duplicate_paths())
    }

    /// The pair-graph search itself, usable without the mixing precondition
    /// (the witness is meaningful either way).
    pub fn duplicate_paths(&self) -> Result<(), DuplicatePaths> {
        let n = self.nodes.len();
        let adj = self.succ_positions();
        let label = |i: usize| self.nodes[i].label;
        // Vertices: ordered pairs with equal labels. A walk from a diagonal
        // pair through an off-diagonal pair back to a diagonal pair projects
        // to two distinct equal-image paths with shared endpoints.
        let pair_id = |u: usize, v: usize| u * n + v;
        let mut fwd_parent: HashMap<usize, usize> = HashMap::new();
        let mut fwd_seen = vec![false; n * n];
        let mut dq = VecDeque::new();
        for u in 0..n {
            fwd_seen[pair_id(u, u)] = true;
            dq.push_back((u, u));
        }
        while let Some((u, v)) = dq.pop_front() {
            for &u2 in &adj[u] {
                for &v2 in &adj[v] {
                    if label(u2) != label(v2) {
                        continue;
                    }
                    let id = pair_id(u2, v2);
                    if !fwd_seen[id] {
                        fwd_seen[id] = true;
                        fwd_parent.insert(id, pair_id(u, v));
                        dq.push_back((u2, v2));
                    }
                }
            }
        }
        // backward reachability to the diagonal
        let mut radj = vec![Vec::new(); n];
        for (u, vs) in adj.iter().enumerate() {
            for &v in vs {
                radj[v].push(u);
            }
        }
        let mut bwd_parent: HashMap<usize, usize> = HashMap::new();
        let mut bwd_seen = vec![false; n * n];
        let mut dq = VecDeque::new();
        for u in 0..n {
            bwd_seen[pair_id(u, u)] = true;
            dq.push_back((u, u));
        }
        while let Some((u, v)) = dq.pop_front() {
            for &u2 in &radj[u] {
                for &v2 in &radj[v] {
                    if label(u2) != label(v2) {
                        continue;
                    }
                    let id = pair_id(u2, v2);
                    if !bwd_seen[id] {
                        bwd_seen[id] = true;
                        bwd_parent.insert(id, pair_id(u, v));
                        dq.push_back((u2, v2));
                    }
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                if u == v || label(u) != label(v) {
                    continue;
                }
                let id = pair_id(u, v);
                if fwd_seen[id] && bwd_seen[id] {
                    // stitch the witness: diagonal -> (u,v) -> diagonal
                    let mut left: Vec<(usize, usize)> = vec![(u, v)];
                    let mut cur = id;
                    while let Some(&p) = fwd_parent.get(&cur) {
                        left.push((p / n, p % n));
                        cur = p;
                    }
                    left.reverse();
                    let mut cur = id;
                    while let Some(&p) = bwd_parent.get(&cur) {
                        left.push((p / n, p % n));
                        cur = p;
                    }
                    let path_a: Vec<u32> = left.iter().map(|&(x, _)| self.nodes[x].id).collect();
                    let path_b: Vec<u32> = left.iter().map(|&(_, y)| self.nodes[y].id).collect();
                    let image: Vec<Letter> = left.iter().map(|&(x, _)| label(x)).collect();
                    let image = Word::reduce(self.rank, image).expect("labels are in-rank");
                    return Err(DuplicatePaths {
                        path_a,
                        path_b,
                        image,
                    });
                }
            }
        }
        Ok(())
    }

    /// Full property report with witnesses.
    pub fn property_report(&self) -> PropertyReport {
        let reduced = self.check_reduced();
        let mixing = self.check_mixing();
        let one_to_constant = self.check_one_to_constant().ok();
        PropertyReport {
            reduced: reduced.is_ok(),
            reduced_witness: reduced.err(),
            strongly_connected: !matches!(mixing, Err(MixingFailure::UnreachablePair(_, _))),
            mixing: mixing.is_ok(),
            mixing_witness: mixing.err(),
            one_to_constant: one_to_constant.as_ref().map(|r| r.is_ok()),
            duplicate_witness: one_to_constant.and_then(|r| r.err()),
        }
    }

    /// Number of closed paths of length `n` (rotations distinct): trace(A^n).
    pub fn count_closed_paths(&self, n: u64) -> BigUint {
        assert!(n >= 1, "closed paths have length >= 1");
        spectral::closed_walk_count(&self.adjacency_matrix(), n)
    }

    /// Distinct cyclic words spelled by closed paths of length `n`.
    pub fn language(&self, n: usize) -> Result<BTreeSet<CyclicWord>, MachineError> {
        if let Err((u, v)) = self.check_reduced() {
            return Err(MachineError::NotReduced(u, v));
        }
        let mut out = BTreeSet::new();
        if n == 0 {
            return Ok(out);
        }
        let adj = self.succ_positions();
        let nn = self.nodes.len();
        let mut path: Vec<usize> = Vec::with_capacity(n);
        let mut letters: Vec<Letter> = Vec::with_capacity(n);
        for start in 0..nn {
            path.push(start);
            letters.push(self.nodes[start].label);
            self.language_dfs(n, start, &adj, &mut path, &mut letters, &mut out);
            path.pop();
            letters.pop();
        }
        Ok(out)
    }

    fn language_dfs(
        &self,
        n: usize,
        start: usize,
        adj: &[Vec<usize>],
        path: &mut Vec<usize>,
        letters: &mut Vec<Letter>,
        out: &mut BTreeSet<CyclicWord>,
    ) {
        if path.len() == n {
            let last = *path.last().unwrap();
            if adj[last].contains(&start) {
                out.insert(CyclicWord::from_cyclically_reduced(self.rank, letters.clone()));
            }
            return;
        }
        let cur = *path.last().unwrap();
        for &next in &adj[cur] {
            path.push(next);
            letters.push(self.nodes[next].label);
            self.language_dfs(n, start, adj, path, letters, out);
            path.pop();
            letters.pop();
        }
    }

    /// Membership of a cyclic word in the closed-path language, by dynamic
    /// programming over (position, node).
    pub fn accepts_cyclic(&self, w: &CyclicWord) -> bool {
        if w.is_empty() {
            return false;
        }
        let nn = self.nodes.len();
        let adj = self.succ_positions();
        let letters = w.letters();
        for start in 0..nn {
            if self.nodes[start].label != letters[0] {
                continue;
            }
            let mut cur = vec![false; nn];
            cur[start] = true;
            for &l in &letters[1..] {
                let mut next = vec![false; nn];
                for (v, &on) in cur.iter().enumerate() {
                    if !on {
                        continue;
                    }
                    for &wv in &adj[v] {
                        if self.nodes[wv].label == l {
                            next[wv] = true;
                        }
                    }
                }
                cur = next;
            }
            // closing edge back to start
            for (v, &on) in cur.iter().enumerate() {
                if on && adj[v].contains(&start) {
                    return true;
                }
            }
        }
        false
    }

    /// Canonical text form: `rank`, sorted `node` lines, sorted `edge` lines.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("rank {}\n", self.rank));
        for n in &self.nodes {
            s.push_str(&format!("node {} {}\n", n.id, n.label));
        }
        for (u, v) in &self.edges {
            s.push_str(&format!("edge {u} {v}\n"));
        }
        s
    }

    /// Parse the line-based format: `rank <r>`, `node <id> <label>`,
    /// `edge <src> <dst>`, with `#` comments.
    pub fn from_text(text: &str) -> Result<Automaton, MachineError> {
        let mut rank: Option<u16> = None;
        let mut nodes: Vec<(u32, Letter)> = Vec::new();
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let kw = parts.next().unwrap();
            let err = |msg: String| MachineError::Parse { line: line_no, msg };
            match kw {
                "rank" => {
                    let r: u16 = parts
                        .next()
                        .ok_or_else(|| err("missing rank value".into()))?
                        .parse()
                        .map_err(|_| err("bad rank value".into()))?;
                    rank = Some(r);
                }
                "node" => {
                    let id: u32 = parts
                        .next()
                        .ok_or_else(|| err("missing node id".into()))?
                        .parse()
                        .map_err(|_| err("bad node id".into()))?;
                    let label_tok = parts.next().ok_or_else(|| err("missing node label".into()))?;
                    let r = rank.ok_or_else(|| err("node before rank".into()))?;
                    let label = Word::parse(r, label_tok)
                        .map_err(|e| err(e.to_string()))
                        .and_then(|w| {
                            if w.len() == 1 {
                                Ok(w.letters()[0])
                            } else {
                                Err(err(format!("label {label_tok:?} is not a single letter")))
                            }
                        })?;
                    nodes.push((id, label));
                }
                "edge" => {
                    let u: u32 = parts
                        .next()
                        .ok_or_else(|| err("missing edge source".into()))?
                        .parse()
                        .map_err(|_| err("bad edge source".into()))?;
                    let v: u32 = parts
                        .next()
                        .ok_or_else(|| err("missing edge target".into()))?
                        .parse()
                        .map_err(|_| err("bad edge target".into()))?;
                    edges.push((u, v));
                }
                other => return Err(err(format!("unknown keyword {other:?}"))),
            }
        }
        let rank = rank.ok_or(MachineError::Parse {
            line: 0,
            msg: "missing rank line".into(),
        })?;
        Automaton::new(rank, nodes, edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MixingFailure {
    /// No path of any positive length from the first node to the second.
    UnreachablePair(u32, u32),
    /// Strongly connected but with this period.
    Periodic(u64),
}

/// Two distinct node paths with the same start, end, and spelled image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DuplicatePaths {
    pub path_a: Vec<u32>,
    pub path_b: Vec<u32>,
    #[serde(serialize_with = "crate::machines::serialize_word")]
    pub image: Word,
}

pub(crate) fn serialize_word<S: serde::Serializer>(w: &Word, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

impl DuplicatePaths {
    /// Validate the witness against an automaton: both sequences are paths,
    /// they differ, and share endpoints and image.
    pub fn verify(&self, aut: &Automaton) -> bool {
        if self.path_a == self.path_b
            || self.path_a.len() != self.path_b.len()
            || self.path_a.is_empty()
        {
            return false;
        }
        for p in [&self.path_a, &self.path_b] {
            for pair in p.windows(2) {
                if !aut.has_edge(pair[0], pair[1]) {
                    return false;
                }
            }
        }
        if self.path_a[0] != self.path_b[0]
            || self.path_a.last() != self.path_b.last()
        {
            return false;
        }
        let label = |id: u32| aut.nodes[aut.index_of[&id]].label;
        self.path_a
            .iter()
            .zip(self.path_b.iter())
            .all(|(&x, &y)| label(x) == label(y))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub reduced: bool,
    pub reduced_witness: Option<(u32, u32)>,
    pub strongly_connected: bool,
    pub mixing: bool,
    pub mixing_witness: Option<MixingFailure>,
    /// None when the mixing precondition for the pair-graph lemma fails.
    pub one_to_constant: Option<bool>,
    pub duplicate_witness: Option<DuplicatePaths>,
}

// ---- constructors ----

fn letter(c: char) -> Letter {
    Letter::from_char(c).unwrap()
}

/// The five-node machine whose closed paths are exactly the cyclic words
/// over rank 2 avoiding BA, AB, and B a^k B for every k >= 0. Its growth
/// rate is the dominant root of x^4 - 3x^3 + x^2 + x - 1.
pub fn build_f2_lower() -> Automaton {
    let labels = [
        (1, letter('a')),
        (2, letter('B')),
        (3, letter('a')),
        (4, letter('b')),
        (5, letter('A')),
    ];
    let edges = [
        (1, 1),
        (1, 2),
        (1, 4),
        (2, 3),
        (3, 3),
        (3, 4),
        (4, 4),
        (4, 1),
        (4, 5),
        (5, 5),
        (5, 4),
    ];
    Automaton::new(2, labels.to_vec(), edges).expect("static machine is well formed")
}

/// Base goldstein machine for the pair (x, y) = (B, a): nodes (A, b, a, B).
fn goldstein_base_edges() -> Vec<(u32, u32)> {
    vec![
        (1, 1),
        (1, 2),
        (2, 2),
        (2, 1),
        (2, 3),
        (3, 3),
        (3, 2),
        (3, 4),
        (4, 3),
    ]
}

/// Four-node machine producing exactly the rank-2 cyclic words in which
/// every occurrence of `x` is preceded and followed by `y`.
pub fn build_goldstein(x: Letter, y: Letter) -> Result<Automaton, MachineError> {
    if y == x || y.is_inverse_of(x) {
        return Err(MachineError::InvalidCriterionPair);
    }
    // relabel the (B, a) machine under the signed permutation with
    // B -> x (so b -> x^-1) and a -> y (so A -> y^-1)
    let map = |l: Letter| -> Letter {
        if l.generator() == 2 {
            if l.is_positive() {
                x.inverse()
            } else {
                x
            }
        } else if l.is_positive() {
            y
        } else {
            y.inverse()
        }
    };
    let labels = vec![
        (1, map(letter('A'))),
        (2, map(letter('b'))),
        (3, map(letter('a'))),
        (4, map(letter('B'))),
    ];
    Automaton::new(2, labels, goldstein_base_edges())
}

/// Block kinds of the rank-r machine's block adjacency array.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    Zero,
    Ones,
    Upper,
    Lower,
    UpperLower,
    UpperId,
    LowerId,
    Id,
}

impl Block {
    fn transpose(self) -> Block {
        match self {
            Block::Upper => Block::Lower,
            Block::Lower => Block::Upper,
            Block::UpperId => Block::LowerId,
            Block::LowerId => Block::UpperId,
            b => b,
        }
    }

    fn entry(self, i: usize, j: usize) -> bool {
        match self {
            Block::Zero => false,
            Block::Ones => true,
            Block::Upper => i < j,
            Block::Lower => i > j,
            Block::UpperLower => i != j,
            Block::UpperId => i <= j,
            Block::LowerId => i >= j,
            Block::Id => i == j,
        }
    }
}

/// The general machine for rank r >= 3, with 3 + 6(r-2) nodes in block order
/// alpha(x1), beta(x2..x_{r-1}), gamma(x_r), delta(x_r^-1),
/// epsilon(x2^-1..), zeta(x2^-1..), eta(x2..), theta(x1^-1..x_{r-2}^-1),
/// iota(x2..). The block array below is written column-as-source (an entry
/// in block row R, block column C is an edge from C to R), matching the
/// convention in which epsilon nodes always follow x1 and zeta nodes always
/// precede it; the builder transposes it into ordinary row-as-source form.
pub fn build_rank_machine(r: u16) -> Result<Automaton, MachineError> {
    if r < 3 {
        return Err(MachineError::RankTooSmall(r));
    }
    use Block::*;
    const SPEC: [[Block; 9]; 9] = [
        [Ones, Ones, Ones, Ones, Zero, Ones, Zero, Zero, Ones],
        [Ones, Ones, Ones, Ones, UpperLower, Upper, Zero, Zero, Upper],
        [Ones, Ones, Ones, Zero, Ones, Zero, Zero, Zero, Zero],
        [Ones, Ones, Zero, Ones, Ones, Zero, Zero, Zero, Zero],
        [Ones, Lower, Zero, Zero, LowerId, Zero, Zero, Zero, Zero],
        [Ones, UpperLower, Ones, Ones, Lower, UpperId, Zero, Zero, Upper],
        [Ones, Lower, Zero, Zero, Lower, Zero, Id, Zero, Zero],
        [Zero, Zero, Zero, Zero, Zero, Zero, Id, Zero, Zero],
        [Zero, Zero, Zero, Zero, Zero, Zero, Zero, Id, Id],
    ];
    let k = (r - 2) as usize;
    let dims = [1usize, k, 1, 1, k, k, k, k, k];
    let mut labels: Vec<Letter> = Vec::new();
    labels.push(Letter::positive(1)); // alpha
    labels.extend((2..r).map(Letter::positive)); // beta
    labels.push(Letter::positive(r)); // gamma
    labels.push(Letter::negative(r)); // delta
    labels.extend((2..r).map(Letter::negative)); // epsilon
    labels.extend((2..r).map(Letter::negative)); // zeta
    labels.extend((2..r).map(Letter::positive)); // eta
    labels.extend((1..r - 1).map(Letter::negative)); // theta
    labels.extend((2..r).map(Letter::positive)); // iota
    let mut offs = vec![0usize];
    for d in dims {
        offs.push(offs.last().unwrap() + d);
    }
    let nodes: Vec<(u32, Letter)> = labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| (i as u32, l))
        .collect();
    let mut edges = Vec::new();
    for (bi, row) in SPEC.iter().enumerate() {
        for (bj, blk) in row.iter().enumerate() {
            // transpose: displayed entry (bi, bj) is an edge bj -> bi
            let b = blk.transpose();
            for i in 0..dims[bj] {
                for j in 0..dims[bi] {
                    if b.entry(i, j) {
                        edges.push(((offs[bj] + i) as u32, (offs[bi] + j) as u32));
                    }
                }
            }
        }
    }
    Automaton::new(r, nodes, edges)
}

/// Shared builder for the bounded-run machines over rank 2.
///
/// Forbids BA, AB, and B a^k B for 0 <= k <= `gap`. When `abar_cap` is set,
/// additionally restricts A-runs to appear only between b's with length at
/// most the cap (which also excludes pure-A cycles).
fn bounded_run_machine(gap: usize, abar_cap: Option<usize>) -> Automaton {
    let a = letter('a');
    let bb = letter('b');
    let big_a = letter('A');
    let big_b = letter('B');
    let mut nodes: Vec<(u32, Letter)> = Vec::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut next_id = 0u32;
    let mut fresh = |l: Letter, nodes: &mut Vec<(u32, Letter)>| {
        let id = next_id;
        next_id += 1;
        nodes.push((id, l));
        id
    };
    let n_b = fresh(bb, &mut nodes);
    let n_big_b = fresh(big_b, &mut nodes);
    let a_counted: Vec<u32> = (0..gap).map(|_| fresh(a, &mut nodes)).collect();
    let a_free = fresh(a, &mut nodes);
    edges.push((n_b, n_b));
    edges.push((n_b, a_free));
    edges.push((a_free, a_free));
    edges.push((a_free, n_b));
    edges.push((a_free, n_big_b));
    // after B: count a's until the run is long enough for another B
    let first_a = *a_counted.first().unwrap_or(&a_free);
    edges.push((n_big_b, first_a));
    for (i, &id) in a_counted.iter().enumerate() {
        edges.push((id, n_b));
        let next = if i + 1 < gap { a_counted[i + 1] } else { a_free };
        edges.push((id, next));
    }
    match abar_cap {
        None => {
            let n_big_a = fresh(big_a, &mut nodes);
            edges.push((n_big_a, n_big_a));
            edges.push((n_big_a, n_b));
            edges.push((n_b, n_big_a));
        }
        Some(cap) => {
            // chain of A states entered and exited only at b: caps the run
            // and rules out pure-A cycles
            let chain: Vec<u32> = (0..cap).map(|_| fresh(big_a, &mut nodes)).collect();
            if let Some(&first) = chain.first() {
                edges.push((n_b, first));
            }
            for (i, &id) in chain.iter().enumerate() {
                edges.push((id, n_b));
                if i + 1 < cap {
                    edges.push((id, chain[i + 1]));
                }
            }
        }
    }
    Automaton::new(2, nodes, edges).expect("static machine is well formed")
}

/// Machine for the language of cyclic words avoiding BA, AB, and B a^k B for
/// 0 <= k <= n (the words still satisfying the flanking criterion after n
/// applications of b -> ba).
pub fn build_rn(n: usize) -> Automaton {
    bounded_run_machine(n, None)
}

/// The `build_rn(n)` language further restricted so that A-runs sit between
/// b's with length at most n + 2 (and pure-A cycles are excluded), matching
/// the words that also survive one final a <-> b switch.
pub fn build_rnl(n: usize) -> Automaton {
    bounded_run_machine(n, Some(n + 2))
}
