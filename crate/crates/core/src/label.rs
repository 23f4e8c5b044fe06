//! A/B/C-labelled operations, underlying graphs and proper labellings.
//!
//! A labelled operation carries a label on each source and on the target,
//! subject to the cospan rule: an `A` target forces all sources to be `A`,
//! and a `B` target forces them to be `B`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::graph::Digraph;
use crate::hat::{HatOracle, Membership};
use crate::path::{Colour, PathError, PathOp, Permutation, Token};
use crate::tree::{op_to_tree, BWTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    A,
    B,
    C,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::A, Label::B, Label::C];

    pub fn as_char(self) -> char {
        match self {
            Label::A => 'A',
            Label::B => 'B',
            Label::C => 'C',
        }
    }

    pub fn from_char(c: char) -> Option<Label> {
        match c {
            'A' => Some(Label::A),
            'B' => Some(Label::B),
            'C' => Some(Label::C),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Parses a label word such as `BAB`.
pub fn parse_labels(text: &str) -> Option<Vec<Label>> {
    text.chars().map(Label::from_char).collect()
}

pub fn labels_to_string(labels: &[Label]) -> String {
    labels.iter().map(|l| l.as_char()).collect()
}

/// All `3^n` label words, lexicographic with `A < B < C`.
pub fn all_labellings(n: usize) -> Vec<Vec<Label>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                Label::ALL.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("{found} source labels for an operation with {expected} colours")]
    SourceCount { expected: usize, found: usize },
    #[error("malformed labelled operation {0:?}, expected \"<op> :: (A,B) -> C\"")]
    Syntax(String),
    #[error("slot {slot} is labelled {expected} but the inner target is {found}")]
    LabelMismatch { slot: usize, expected: Label, found: Label },
    #[error(transparent)]
    Path(#[from] PathError),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelledOp {
    pub op: PathOp,
    pub sources: Vec<Label>,
    pub target: Label,
}

impl LabelledOp {
    pub fn new(op: PathOp, sources: Vec<Label>, target: Label) -> Result<Self, LabelError> {
        if sources.len() != op.colours() as usize {
            return Err(LabelError::SourceCount { expected: op.colours() as usize, found: sources.len() });
        }
        Ok(LabelledOp { op, sources, target })
    }

    pub fn uniform(op: PathOp, label: Label) -> Self {
        let sources = vec![label; op.colours() as usize];
        LabelledOp { op, sources, target: label }
    }

    pub fn parse(text: &str) -> Result<Self, LabelError> {
        let bad = || LabelError::Syntax(text.into());
        let (op, rest) = text.split_once("::").ok_or_else(bad)?;
        let (srcs, tgt) = rest.split_once("->").ok_or_else(bad)?;
        let srcs = srcs.trim().strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
        let sources = srcs
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                let mut cs = s.chars();
                match (cs.next().and_then(Label::from_char), cs.next()) {
                    (Some(l), None) => Ok(l),
                    _ => Err(bad()),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut tc = tgt.trim().chars();
        let target = match (tc.next().and_then(Label::from_char), tc.next()) {
            (Some(l), None) => l,
            _ => return Err(bad()),
        };
        LabelledOp::new(PathOp::parse(op)?, sources, target)
    }

    pub fn cospan_valid(&self) -> bool {
        match self.target {
            Label::C => true,
            t => self.sources.iter().all(|&s| s == t),
        }
    }

    /// Renames colour `c` to `σ(c)` and moves its label along.
    pub fn permute(&self, sigma: &Permutation) -> Result<Self, LabelError> {
        let op = self.op.permute(sigma)?;
        let mut sources = self.sources.clone();
        for (c, &l) in self.sources.iter().enumerate() {
            sources[sigma.apply(c as Colour + 1) as usize - 1] = l;
        }
        Ok(LabelledOp { op, sources, target: self.target })
    }
}

impl fmt::Display for LabelledOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} :: (", self.op)?;
        for (i, l) in self.sources.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ") -> {}", self.target)
    }
}

impl fmt::Debug for LabelledOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabelledOp({:?})", alloc::format!("{self}"))
    }
}

impl FromStr for LabelledOp {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LabelledOp::parse(s)
    }
}

/// Vertices are the colours (vertex `c - 1` for colour `c`); `u → v` when
/// the pair has corner count `m` and `u` occurs first.
pub fn underlying_graph(op: &PathOp, m: usize) -> Digraph {
    let k = op.colours() as usize;
    let corners = op.corner_matrix();
    let mut g = Digraph::new(k);
    for a in 0..k {
        for b in a + 1..k {
            if corners[a][b] == m {
                let (u, v) = if op.occurs_before(a as Colour + 1, b as Colour + 1) { (a, b) } else { (b, a) };
                g.add_edge(u, v).expect("distinct vertices in range");
            }
        }
    }
    g
}

/// Every edge starts at an `A` or ends at a `B`.
pub fn properly_labelled(g: &Digraph, labels: &[Label]) -> bool {
    g.edges().all(|(u, v)| labels[u] == Label::A || labels[v] == Label::B)
}

/// Membership in `P_{·+·}`: cospan rule, `Ĥ_m` membership and a properly
/// labelled underlying graph. `Unknown` only when the oracle cannot decide.
pub fn in_plus(lop: &LabelledOp, m: usize, oracle: &dyn HatOracle) -> Membership {
    if !lop.cospan_valid() || !properly_labelled(&underlying_graph(&lop.op, m), &lop.sources) {
        return Membership::NotMember;
    }
    oracle.membership(&lop.op)
}

/// Every way of adding a fresh colour `k + 1` exactly `m` times, one per
/// multiset of `m` gaps among the `len + 1` gaps, in gap order.
pub fn insertions(op: &PathOp, m: usize) -> Vec<PathOp> {
    let fresh = Token::Colour(op.colours() + 1);
    crate::enumerate::multisets(op.len() + 1, m)
        .into_iter()
        .map(|gaps| {
            let mut tokens = Vec::with_capacity(op.len() + m);
            let mut g = gaps.iter().peekable();
            for (pos, t) in op.tokens().iter().enumerate() {
                while g.next_if(|&&p| p == pos).is_some() {
                    tokens.push(fresh);
                }
                tokens.push(*t);
            }
            tokens.extend(g.map(|_| fresh));
            PathOp::new(tokens).expect("fresh colour follows the old ones")
        })
        .collect()
}

/// [`insertions`] with the new source labelled `label`.
pub fn labelled_insertions(lop: &LabelledOp, m: usize, label: Label) -> Vec<LabelledOp> {
    insertions(&lop.op, m)
        .into_iter()
        .map(|op| {
            let mut sources = lop.sources.clone();
            sources.push(label);
            LabelledOp { op, sources, target: lop.target }
        })
        .collect()
}

/// Membership in `P_{·∘·}`: in `P_{·+·}`, and no insertion of a fresh
/// colour labelled `insert` stays in `P_{·+·}`.
pub fn in_circ(lop: &LabelledOp, m: usize, oracle: &dyn HatOracle, insert: Label) -> Membership {
    match in_plus(lop, m, oracle) {
        Membership::Member => {}
        other => return other,
    }
    let mut unknown = false;
    for ins in labelled_insertions(lop, m, insert) {
        match in_plus(&ins, m, oracle) {
            Membership::Member => return Membership::NotMember,
            Membership::Unknown => unknown = true,
            Membership::NotMember => {}
        }
    }
    if unknown {
        Membership::Unknown
    } else {
        Membership::Member
    }
}

/// Labelled composition. Slot `i` of `x` must carry the target label of
/// `ys[i]`.
pub fn compose_labelled(x: &LabelledOp, ys: &[LabelledOp]) -> Result<LabelledOp, LabelError> {
    for (i, (y, &l)) in ys.iter().zip(&x.sources).enumerate() {
        if y.target != l {
            return Err(LabelError::LabelMismatch { slot: i + 1, expected: l, found: y.target });
        }
    }
    let inner: Vec<PathOp> = ys.iter().map(|y| y.op.clone()).collect();
    let op = x.op.compose(&inner)?;
    let sources = ys.iter().flat_map(|y| y.sources.iter().copied()).collect();
    Ok(LabelledOp { op, sources, target: x.target })
}

/// Adjacent pairs, roots and leaves of a graph (0-based vertices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStructure {
    pub adjacent: Vec<(usize, usize)>,
    pub roots: Vec<usize>,
    pub leaves: Vec<usize>,
}

pub fn graph_structure(g: &Digraph) -> GraphStructure {
    GraphStructure { adjacent: g.adjacent_pairs(), roots: g.roots(), leaves: g.leaves() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Xk {
    X,
    K,
}

/// Adjacent vertices carry different labels, and roots and leaves are `X`.
pub fn semifree_terminal(op: &PathOp, m: usize, xk: &[Xk]) -> bool {
    let s = graph_structure(&underlying_graph(op, m));
    s.adjacent.iter().all(|&(u, v)| xk[u] != xk[v]) && s.roots.iter().chain(&s.leaves).all(|&v| xk[v] == Xk::X)
}

/// The tree form of `P_{·∘·}` at level 2, for labelled white trees with
/// target `C`. Along every path from the root the labels read `A* C? B*`,
/// and a path that ends on a leaf edge, or at a nullary vertex not labelled
/// `A`, meets exactly one `C`. `None` if `op` is not a white tree.
pub fn tree_c_line(lop: &LabelledOp) -> Option<bool> {
    let t = op_to_tree(&lop.op).ok()?;
    if !t.is_all_white() {
        return None;
    }
    Some(paths_ok(&t, &lop.sources, State::Top))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    /// Only `A` so far.
    Top,
    /// Passed the `C`.
    Crossed,
    /// Met a `B` without a `C`.
    Missed,
}

fn paths_ok(t: &BWTree, labels: &[Label], state: State) -> bool {
    match t {
        BWTree::Leaf => state == State::Crossed,
        BWTree::Black { .. } => false,
        BWTree::White { colour, children } => {
            let l = labels[*colour as usize - 1];
            let next = match (state, l) {
                (State::Top, Label::A) => State::Top,
                (State::Top, Label::C) => State::Crossed,
                (State::Top, Label::B) => State::Missed,
                (State::Crossed | State::Missed, Label::B) => state,
                _ => return false,
            };
            if children.is_empty() {
                return next != State::Missed;
            }
            children.iter().all(|c| paths_ok(c, labels, next))
        }
    }
}
