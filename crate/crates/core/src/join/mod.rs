//! Joins of operations along cut bars.
//!
//! For a level `m`, the even operand is cut at `⌊m/2⌋` of its bars and the
//! odd operand at `⌊(m-1)/2⌋` of its bars. The cut bars are consumed and the
//! `m + 1` resulting segments are interleaved, even first. The odd operand's
//! colours are shifted past the even operand's.

mod axioms;
mod reindex;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::path::{canonicalize_tokens, Colour, PathOp, Token};

pub use axioms::{
    check_associativity, check_interchange, check_units, compare_formulas, AssocInstance, AxiomRecord, AxiomReport,
    Diagram, FormulaMismatch, FormulaReport, InterchangeInstance,
};
pub use reindex::{
    bar_trace, reindex_formula_i, reindex_formula_j, reindex_oracle, transport, transport_closed_form, BarTrace,
};

/// Which operand of a join a bar or segment comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Even,
    Odd,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Even => "even",
            Side::Odd => "odd",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum JoinError {
    #[error("complexity level must be at least 1")]
    LevelTooSmall,
    #[error("{side} cut tuple must have {expected} entries, got {found}")]
    TupleLength { side: Side, expected: usize, found: usize },
    #[error("{side} cut position {position} is outside 1..={bars}")]
    TupleRange { side: Side, position: usize, bars: usize },
    #[error("cut positions must be strictly increasing and at least 1")]
    NotIncreasing,
    #[error("bar {position} on the {side} side is a cut position")]
    HitsCut { side: Side, position: usize },
    #[error("tuples {0:?} and {1:?} share an element")]
    Overlap(Vec<usize>, Vec<usize>),
    #[error("the interchange diagram needs an even level, got {0}")]
    InterchangeNeedsEvenLevel(usize),
}

/// Strictly increasing 1-based bar positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CutTuple(Vec<usize>);

impl CutTuple {
    pub fn new(positions: Vec<usize>) -> Result<Self, JoinError> {
        if positions.first() == Some(&0) || positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(JoinError::NotIncreasing);
        }
        Ok(CutTuple(positions))
    }

    pub fn empty() -> Self {
        CutTuple(Vec::new())
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, bar: usize) -> bool {
        self.0.binary_search(&bar).is_ok()
    }

    pub fn is_disjoint(&self, other: &CutTuple) -> bool {
        self.0.iter().all(|p| !other.contains(*p))
    }

    /// Left unit tuple `(1, 3, …, 2⌊m/2⌋ - 1)`.
    pub fn left_unit(m: usize) -> Self {
        CutTuple((0..even_cuts(m)).map(|a| 2 * a + 1).collect())
    }

    /// Right unit tuple `(2, 4, …, 2⌊(m-1)/2⌋)`.
    pub fn right_unit(m: usize) -> Self {
        CutTuple((1..=odd_cuts(m)).map(|a| 2 * a).collect())
    }
}

impl fmt::Display for CutTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (n, p) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Cuts on the even operand: `⌊m/2⌋`.
pub fn even_cuts(m: usize) -> usize {
    m / 2
}

/// Cuts on the odd operand: `⌊(m-1)/2⌋`.
pub fn odd_cuts(m: usize) -> usize {
    m.saturating_sub(1) / 2
}

/// `r ∨ s = r + s - m + 1`.
pub fn joined_bars(r: usize, s: usize, m: usize) -> usize {
    r + s + 1 - m
}

pub(crate) fn check_tuple(side: Side, t: &CutTuple, expected: usize, bars: usize) -> Result<(), JoinError> {
    if t.len() != expected {
        return Err(JoinError::TupleLength { side, expected, found: t.len() });
    }
    if let Some(&position) = t.positions().iter().find(|&&p| p > bars) {
        return Err(JoinError::TupleRange { side, position, bars });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinResult {
    pub result: PathOp,
    /// For every result bar (in order), the operand and original bar index.
    pub bar_origin: Vec<(Side, usize)>,
}

fn split_at_cuts(
    tokens: &[Token],
    cuts: &CutTuple,
    side: Side,
    shift: Colour,
) -> Vec<Vec<(Token, Option<(Side, usize)>)>> {
    let mut segments = Vec::with_capacity(cuts.len() + 1);
    let mut current = Vec::new();
    let mut bar = 0;
    for t in tokens {
        match *t {
            Token::Bar => {
                bar += 1;
                if cuts.contains(bar) {
                    segments.push(core::mem::take(&mut current));
                } else {
                    current.push((Token::Bar, Some((side, bar))));
                }
            }
            Token::Colour(c) => current.push((Token::Colour(c + shift), None)),
        }
    }
    segments.push(current);
    segments
}

/// Joins `x` (cut at `i`) with `y` (cut at `j`) at level `m`.
pub fn join(x: &PathOp, i: &CutTuple, y: &PathOp, j: &CutTuple, m: usize) -> Result<JoinResult, JoinError> {
    if m < 1 {
        return Err(JoinError::LevelTooSmall);
    }
    check_tuple(Side::Even, i, even_cuts(m), x.bars())?;
    check_tuple(Side::Odd, j, odd_cuts(m), y.bars())?;
    let even = split_at_cuts(x.tokens(), i, Side::Even, 0);
    let odd = split_at_cuts(y.tokens(), j, Side::Odd, x.colours());
    let mut tokens = Vec::with_capacity(x.len() + y.len());
    let mut bar_origin = Vec::new();
    let mut odd_iter = odd.into_iter();
    for seg in even {
        for (t, origin) in seg.into_iter().chain(odd_iter.next().unwrap_or_default()) {
            tokens.push(t);
            if let Some(o) = origin {
                bar_origin.push(o);
            }
        }
    }
    let result = PathOp::from_parts(tokens, x.colours() + y.colours());
    Ok(JoinResult { result, bar_origin })
}

/// A way of reading an operation as a join: `(even, i, odd, j)` with both
/// operands σ-canonical.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Decomposition {
    pub even: PathOp,
    pub even_cuts: CutTuple,
    pub odd: PathOp,
    pub odd_cuts: CutTuple,
}

/// Every split of `z` into `m + 1` consecutive (possibly empty) segments
/// whose even and odd segments share no colour, deduplicated.
pub fn join_decompositions(z: &PathOp, m: usize) -> Vec<Decomposition> {
    let mut out = BTreeSet::new();
    for_each_split(z, m, |d| {
        out.insert(d);
    });
    out.into_iter().collect()
}

/// Callback form of [`join_decompositions`]; may report duplicates.
pub fn for_each_split(z: &PathOp, m: usize, mut f: impl FnMut(Decomposition)) {
    if m < 1 {
        return;
    }
    let tokens = z.tokens();
    let mut parity = alloc::vec![NONE; z.colours() as usize];
    let mut bounds = alloc::vec![0usize; m + 2];
    bounds[m + 1] = tokens.len();
    split_rec(1, m, tokens, &mut bounds, &mut parity, &mut f);
}

const NONE: u8 = 2;

/// Assigns `tokens[from..to]` to segments of parity `p`; returns the colours
/// it newly fixed, or `None` on a parity clash (after undoing).
fn assign(tokens: &[Token], from: usize, to: usize, p: u8, parity: &mut [u8]) -> Option<Vec<usize>> {
    let mut fixed = Vec::new();
    for t in &tokens[from..to] {
        if let Token::Colour(c) = *t {
            let ci = c as usize - 1;
            if parity[ci] == NONE {
                parity[ci] = p;
                fixed.push(ci);
            } else if parity[ci] != p {
                for &ci in &fixed {
                    parity[ci] = NONE;
                }
                return None;
            }
        }
    }
    Some(fixed)
}

fn split_rec(
    depth: usize,
    m: usize,
    tokens: &[Token],
    bounds: &mut Vec<usize>,
    parity: &mut Vec<u8>,
    f: &mut dyn FnMut(Decomposition),
) {
    let lo = bounds[depth - 1];
    let p = ((depth - 1) % 2) as u8;
    if depth == m + 1 {
        if let Some(fixed) = assign(tokens, lo, tokens.len(), p, parity) {
            f(build_decomposition(tokens, bounds, m));
            for ci in fixed {
                parity[ci] = NONE;
            }
        }
        return;
    }
    // grow segment depth-1 one token at a time
    let mut fixed_all: Vec<usize> = Vec::new();
    let mut b = lo;
    loop {
        bounds[depth] = b;
        split_rec(depth + 1, m, tokens, bounds, parity, f);
        if b == tokens.len() {
            break;
        }
        match assign(tokens, b, b + 1, p, parity) {
            Some(fixed) => fixed_all.extend(fixed),
            None => break,
        }
        b += 1;
    }
    for ci in fixed_all {
        parity[ci] = NONE;
    }
}

fn build_decomposition(tokens: &[Token], bounds: &[usize], m: usize) -> Decomposition {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    let mut even_cuts = Vec::new();
    let mut odd_cuts = Vec::new();
    for s in 0..=m {
        let seg = &tokens[bounds[s]..bounds[s + 1]];
        let (buf, cuts) = if s % 2 == 0 { (&mut even, &mut even_cuts) } else { (&mut odd, &mut odd_cuts) };
        if s >= 2 {
            buf.push(Token::Bar);
            cuts.push(buf.iter().filter(|t| t.is_bar()).count());
        }
        buf.extend_from_slice(seg);
    }
    Decomposition {
        even: canonicalize_tokens(&even),
        even_cuts: CutTuple(even_cuts),
        odd: canonicalize_tokens(&odd),
        odd_cuts: CutTuple(odd_cuts),
    }
}
