//! Budgeted least-fixpoint generation of `Ĥ_m`.
//!
//! Everything runs on σ-canonical representatives: the orbit of a join or
//! a composite only depends on the orbits of its operands. Each round first
//! closes the known orbits under joins (pairs are visited once, in discovery
//! order) and then makes one pass of partial composites over pairs that
//! involve an orbit found since the previous pass.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use super::{GenTable, HatError, Orbit, Origin, Witness};
use crate::enumerate::increasing_tuples;
use crate::join::{even_cuts, join, odd_cuts, CutTuple};
use crate::path::PathOp;

/// `Ĥ_m` restricted to operations with at most `budget` tokens.
pub fn generate(m: usize, budget: usize) -> Result<GenTable, HatError> {
    let mut table = GenTable::empty(m, budget)?;
    table.close();
    Ok(table)
}

struct Closure<'a> {
    table: &'a mut GenTable,
    /// Representatives in discovery order.
    order: Vec<PathOp>,
    index: BTreeMap<PathOp, usize>,
    queue: VecDeque<usize>,
    /// Processed representatives by token count.
    done_by_len: Vec<Vec<usize>>,
    even_tuples: Vec<Vec<CutTuple>>,
    odd_tuples: Vec<Vec<CutTuple>>,
}

impl GenTable {
    /// Runs the fixpoint from the current contents (seeds are added if
    /// missing). Returns the number of orbits added.
    pub fn close(&mut self) -> usize {
        let before = self.orbits.len();
        let m = self.m;
        let budget = self.budget;
        let mut c = Closure {
            order: Vec::new(),
            index: BTreeMap::new(),
            queue: VecDeque::new(),
            done_by_len: alloc::vec![Vec::new(); budget + 1],
            even_tuples: (0..=budget).map(|r| tuples(r, even_cuts(m))).collect(),
            odd_tuples: (0..=budget).map(|s| tuples(s, odd_cuts(m))).collect(),
            table: self,
        };
        let known: Vec<PathOp> = c.table.orbits.keys().cloned().collect();
        for rep in known {
            c.enqueue(rep);
        }
        c.offer(PathOp::eta(m).expect("m >= 1"), Witness::Eta, Origin::Seed);
        for n in 0..=budget.saturating_sub(1) / 2 {
            c.offer(PathOp::identity(n), Witness::Identity(n), Origin::Seed);
        }
        let mut compose_from = 0;
        loop {
            c.table.stats.rounds += 1;
            c.join_closure();
            let fresh_from = c.order.len();
            c.compose_pass(compose_from);
            compose_from = fresh_from;
            if c.queue.is_empty() {
                break;
            }
        }
        self.orbits.len() - before
    }
}

fn tuples(bars: usize, size: usize) -> Vec<CutTuple> {
    increasing_tuples(bars, size).into_iter().map(|t| CutTuple::new(t).expect("increasing")).collect()
}

impl Closure<'_> {
    fn enqueue(&mut self, rep: PathOp) {
        let id = self.order.len();
        self.index.insert(rep.clone(), id);
        self.order.push(rep);
        self.queue.push_back(id);
    }

    /// Records `carrier` if its orbit is new and within budget.
    fn offer(&mut self, carrier: PathOp, witness: Witness, origin: Origin) {
        if carrier.len() > self.table.budget {
            return;
        }
        let rep = carrier.sigma_canonical().0;
        if self.index.contains_key(&rep) {
            return;
        }
        if origin == Origin::Gamma {
            self.table.stats.gamma_only += 1;
        }
        self.table.orbits.entry(rep.clone()).or_insert(Orbit { carrier, witness, origin });
        self.enqueue(rep);
    }

    fn join_closure(&mut self) {
        let m = self.table.m;
        let limit = self.table.budget + m - 1;
        while let Some(z) = self.queue.pop_front() {
            let zl = self.order[z].len();
            self.done_by_len[zl].push(z);
            for wl in 0..=limit.saturating_sub(zl).min(self.table.budget) {
                let mut n = 0;
                while n < self.done_by_len[wl].len() {
                    let w = self.done_by_len[wl][n];
                    self.joins(z, w);
                    if w != z {
                        self.joins(w, z);
                    }
                    n += 1;
                }
            }
        }
    }

    fn joins(&mut self, x: usize, y: usize) {
        let m = self.table.m;
        let (xo, yo) = (self.order[x].clone(), self.order[y].clone());
        if xo.len() + yo.len() > self.table.budget + m - 1 {
            return;
        }
        let (xk, yk) = (xo.to_general(), yo.to_general());
        for i in self.even_tuples[xo.bars()].clone() {
            for j in &self.odd_tuples[yo.bars()].clone() {
                let r = join(&xo, &i, &yo, j, m).expect("tuples are valid").result;
                let w = Witness::Join { lhs: xk.clone(), lhs_cuts: i.clone(), rhs: yk.clone(), rhs_cuts: j.clone() };
                self.offer(r, w, Origin::Join);
            }
        }
    }

    /// Partial composites `x ∘_i y` (identities in the other slots) within
    /// budget, for pairs where `x` or `y` was discovered at index `from` or
    /// later. These generate all composites: plugging the slots that shrink
    /// the string first keeps every intermediate within budget.
    fn compose_pass(&mut self, from: usize) {
        let budget = self.table.budget;
        let mut by_bars: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (id, rep) in self.order.iter().enumerate() {
            if rep.colours() == 1 && *rep == PathOp::identity(rep.bars()) {
                continue;
            }
            by_bars.entry(rep.bars()).or_default().push((rep.len() - rep.bars(), id));
        }
        for v in by_bars.values_mut() {
            v.sort_unstable();
        }
        let mut found = Vec::new();
        for x in 0..self.order.len() {
            let outer = &self.order[x];
            let arities = outer.arities();
            for (slot, &n) in arities.iter().enumerate() {
                let Some(cands) = by_bars.get(&n) else {
                    continue;
                };
                let room = budget + n + 1 - outer.len();
                for &(_, y) in cands.iter().take_while(|&&(cost, _)| cost <= room) {
                    if x < from && y < from {
                        continue;
                    }
                    let mut inner: Vec<PathOp> = arities.iter().map(|&a| PathOp::identity(a)).collect();
                    inner[slot] = self.order[y].clone();
                    let r = outer.compose(&inner).expect("arities match");
                    if self.index.contains_key(&r.sigma_canonical().0) {
                        continue;
                    }
                    let w = Witness::Gamma {
                        outer: outer.to_general(),
                        inner: inner.iter().map(PathOp::to_general).collect(),
                    };
                    found.push((r, w));
                }
            }
        }
        for (r, w) in found {
            self.offer(r, w, Origin::Gamma);
        }
    }
}
