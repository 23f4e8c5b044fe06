//! Unbounded membership in the join closure of `eta(m)` and the identities.
//!
//! The only colourless member is `eta(m)`. A coloured string `z` is a member
//! iff some `w` reachable from `z` by splitting off an `eta(m)` operand is an
//! identity or a join of two coloured members. Splitting off `eta(m)` keeps
//! the colour count, and a join of two coloured operands has strictly fewer
//! colours on each side, so the search terminates.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cell::RefCell;

use super::{HatOracle, Membership};
use crate::join::for_each_split;
use crate::path::PathOp;

/// Memoized membership oracle for the join closure. Composition is not
/// searched; on generated tables it never adds orbits (see
/// [`GenStats::gamma_only`](super::GenStats)).
#[derive(Debug)]
pub struct JoinClosure {
    m: usize,
    eta: PathOp,
    memo: RefCell<BTreeMap<PathOp, bool>>,
}

impl JoinClosure {
    pub fn new(m: usize) -> Option<Self> {
        let eta = PathOp::eta(m).ok()?;
        Some(JoinClosure { m, eta, memo: RefCell::new(BTreeMap::new()) })
    }

    pub fn is_member(&self, op: &PathOp) -> bool {
        self.decide(op.sigma_canonical().0)
    }

    /// Number of memoized representatives.
    pub fn memo_len(&self) -> usize {
        self.memo.borrow().len()
    }

    fn decide(&self, z: PathOp) -> bool {
        if z.colours() == 0 {
            return z == self.eta;
        }
        if let Some(&b) = self.memo.borrow().get(&z) {
            return b;
        }
        if !z.in_filtration(self.m) {
            self.memo.borrow_mut().insert(z, false);
            return false;
        }
        let mut seen = BTreeSet::new();
        let mut stack = alloc::vec![z.clone()];
        seen.insert(z.clone());
        let mut found = false;
        while let Some(w) = stack.pop() {
            if self.memo.borrow().get(&w) == Some(&true) || is_identity(&w) {
                found = true;
                break;
            }
            let mut pairs = Vec::new();
            for_each_split(&w, self.m, |d| {
                let (ek, ok) = (d.even.colours(), d.odd.colours());
                if ek == 0 && d.even == self.eta {
                    if seen.insert(d.odd.clone()) {
                        stack.push(d.odd);
                    }
                } else if ok == 0 && d.odd == self.eta {
                    if seen.insert(d.even.clone()) {
                        stack.push(d.even);
                    }
                } else if ek > 0 && ok > 0 {
                    pairs.push((d.even, d.odd));
                }
            });
            if pairs.into_iter().any(|(a, b)| self.decide(a) && self.decide(b)) {
                found = true;
                break;
            }
        }
        let mut memo = self.memo.borrow_mut();
        if found {
            memo.insert(z, true);
        } else {
            // nothing reachable from z is a member, z included
            for w in seen {
                memo.insert(w, false);
            }
        }
        found
    }
}

fn is_identity(w: &PathOp) -> bool {
    w.colours() == 1 && *w == PathOp::identity(w.bars())
}

impl HatOracle for JoinClosure {
    fn level(&self) -> usize {
        self.m
    }

    fn membership(&self, op: &PathOp) -> Membership {
        Membership::from_bool(self.is_member(op))
    }
}
