//! Transport of bar positions through a join.
//!
//! [`bar_trace`] follows bars positionally through the interleaving and is
//! the reference used by the axiom checks. The closed formulas are kept
//! verbatim next to it so that they can be compared instance by instance.

use alloc::vec;
use alloc::vec::Vec;

use super::{check_tuple, even_cuts, odd_cuts, CutTuple, JoinError, Side};
use crate::path::PathOp;

/// Where every surviving bar of both operands lands in the joined result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarTrace {
    even: Vec<Option<usize>>,
    odd: Vec<Option<usize>>,
}

impl BarTrace {
    /// Result bar (1-based) of `bar` on `side`, `None` for cut bars.
    pub fn get(&self, side: Side, bar: usize) -> Option<usize> {
        let v = match side {
            Side::Even => &self.even,
            Side::Odd => &self.odd,
        };
        v.get(bar.checked_sub(1)?).copied().flatten()
    }

    /// `(side, bar, result bar)` triples, even side first.
    pub fn entries(&self) -> Vec<(Side, usize, usize)> {
        let even = self.even.iter().enumerate().filter_map(|(b, r)| r.map(|r| (Side::Even, b + 1, r)));
        let odd = self.odd.iter().enumerate().filter_map(|(b, r)| r.map(|r| (Side::Odd, b + 1, r)));
        even.chain(odd).collect()
    }
}

/// Positional bookkeeping for a join of an `r`-bar operand cut at `i` with an
/// `s`-bar operand cut at `j`. Depends only on the bar counts.
pub fn bar_trace(r: usize, i: &CutTuple, s: usize, j: &CutTuple, m: usize) -> Result<BarTrace, JoinError> {
    if m < 1 {
        return Err(JoinError::LevelTooSmall);
    }
    check_tuple(Side::Even, i, even_cuts(m), r)?;
    check_tuple(Side::Odd, j, odd_cuts(m), s)?;
    let mut even = vec![None; r];
    let mut odd = vec![None; s];
    let mut next = 1;
    // segment a of a side holds the bars strictly between cut a and cut a+1
    let span = |cuts: &[usize], a: usize, bars: usize| {
        let lo = if a == 0 { 0 } else { cuts[a - 1] };
        let hi = if a < cuts.len() { cuts[a] } else { bars + 1 };
        (lo + 1)..hi
    };
    for seg in 0..=m {
        let a = seg / 2;
        if seg % 2 == 0 {
            for b in span(i.positions(), a, r) {
                even[b - 1] = Some(next);
                next += 1;
            }
        } else {
            for b in span(j.positions(), a, s) {
                odd[b - 1] = Some(next);
                next += 1;
            }
        }
    }
    Ok(BarTrace { even, odd })
}

/// Image of the tuple `t` of `side` bars under the join, sorted.
pub fn transport(
    r: usize,
    i: &CutTuple,
    s: usize,
    j: &CutTuple,
    side: Side,
    t: &CutTuple,
    m: usize,
) -> Result<CutTuple, JoinError> {
    let trace = bar_trace(r, i, s, j, m)?;
    let bars = if side == Side::Even { r } else { s };
    let mut out = Vec::with_capacity(t.len());
    for &b in t.positions() {
        if b > bars {
            return Err(JoinError::TupleRange { side, position: b, bars });
        }
        out.push(trace.get(side, b).ok_or(JoinError::HitsCut { side, position: b })?);
    }
    out.sort_unstable();
    CutTuple::new(out)
}

/// [`transport`] with bar counts read off the operands.
pub fn reindex_oracle(
    x: &PathOp,
    i: &CutTuple,
    y: &PathOp,
    j: &CutTuple,
    side: Side,
    t: &CutTuple,
    m: usize,
) -> Result<CutTuple, JoinError> {
    transport(x.bars(), i, y.bars(), j, side, t, m)
}

fn overlap(a: &CutTuple, b: &CutTuple) -> Result<(), JoinError> {
    if a.is_disjoint(b) {
        Ok(())
    } else {
        Err(JoinError::Overlap(a.positions().to_vec(), b.positions().to_vec()))
    }
}

/// Literal evaluation of `i'_α = i_{n+1} + j'_α - 2n + 1`, where `n` counts
/// entries of `j` below `j'_α` and `i_{n+1}` falls back to `r` past the end.
pub fn reindex_formula_i(
    i: &CutTuple,
    j: &CutTuple,
    j_prime: &CutTuple,
    _m: usize,
    r: usize,
) -> Result<Vec<i64>, JoinError> {
    overlap(j, j_prime)?;
    Ok(j_prime
        .positions()
        .iter()
        .map(|&jp| {
            let n = j.positions().iter().filter(|&&v| v < jp).count();
            let base = i.positions().get(n).copied().unwrap_or(r);
            base as i64 + jp as i64 - 2 * n as i64 + 1
        })
        .collect())
}

/// Literal evaluation of `j'_α = j_n + i'_α - 2n`, with `j_0 = 0` and
/// `j_n = s` when `n > ⌊(m-1)/2⌋`.
pub fn reindex_formula_j(
    i: &CutTuple,
    i_prime: &CutTuple,
    j: &CutTuple,
    m: usize,
    s: usize,
) -> Result<Vec<i64>, JoinError> {
    overlap(i, i_prime)?;
    Ok(i_prime
        .positions()
        .iter()
        .map(|&ip| {
            let n = i.positions().iter().filter(|&&v| v < ip).count();
            let base = if n == 0 {
                0
            } else if n <= odd_cuts(m) {
                j.positions()[n - 1]
            } else {
                s
            };
            base as i64 + ip as i64 - 2 * n as i64
        })
        .collect())
}

/// Closed form matching [`transport`]: odd bars go to
/// `i_{n+1} + b - 2n - 1` (with `i_{n+1} = r + 1` past the end) and even bars
/// to `j_n + b - 2n` (with `j_0 = 0`, `j_n = s + 1` past the end).
pub fn transport_closed_form(r: usize, i: &CutTuple, s: usize, j: &CutTuple, side: Side, t: &CutTuple) -> Vec<i64> {
    t.positions()
        .iter()
        .map(|&b| match side {
            Side::Odd => {
                let n = j.positions().iter().filter(|&&v| v < b).count();
                let base = i.positions().get(n).copied().unwrap_or(r + 1);
                base as i64 + b as i64 - 2 * n as i64 - 1
            }
            Side::Even => {
                let n = i.positions().iter().filter(|&&v| v < b).count();
                let base = if n == 0 { 0 } else { j.positions().get(n - 1).copied().unwrap_or(s + 1) };
                base as i64 + b as i64 - 2 * n as i64
            }
        })
        .collect()
}
