//! Verification suites. Each returns a [`SuiteReport`]; a suite passes when
//! it found no counterexample.

use std::collections::BTreeMap;

use latticepath_core::enumerate::canonical_ops_up_to;
use latticepath_core::graph::dag_enumerate;
use latticepath_core::join::{
    check_associativity, check_interchange, check_units, compare_formulas, AxiomReport, FormulaReport,
};
use latticepath_core::label::{all_labellings, in_circ, in_plus, tree_c_line};
use latticepath_core::lift::{erase, LiftError, Route};
use latticepath_core::nerve::{decompose_at_vertex, nerve_report};
use latticepath_core::tree::{enumerate_trees, op_to_tree, tree_to_op};
use latticepath_core::{lifting_graph, BWTree, GenTable, JoinClosure, Label, LabelledOp, Lifter, PathOp, Permutation};
use serde::Serialize;

use crate::sample;

/// Counterexamples kept verbatim; the rest are only counted.
const KEEP: usize = 20;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub failures: usize,
    pub counterexamples: Vec<String>,
    /// Named tallies.
    pub counts: BTreeMap<String, usize>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(describe());
        }
    }

    pub fn fail(&mut self, what: String) {
        self.failures += 1;
        if self.counterexamples.len() < KEEP {
            self.counterexamples.push(what);
        }
    }

    pub fn tally(&mut self, key: &str, by: usize) {
        *self.counts.entry(key.into()).or_default() += by;
    }

    pub fn absorb(&mut self, other: SuiteReport) {
        self.checked += other.checked;
        for c in other.counterexamples {
            if self.counterexamples.len() < KEEP {
                self.counterexamples.push(c);
            }
        }
        self.failures += other.failures;
        for (k, v) in other.counts {
            self.tally(&k, v);
        }
    }
}

fn composite_tau(ys: &[PathOp], moved: &[PathOp], sigma: &Permutation) -> Permutation {
    let k = ys.len();
    let mut new_offset = vec![0u32; k + 1];
    for s in 1..=k {
        new_offset[s] = new_offset[s - 1] + moved[s - 1].colours();
    }
    let mut images = Vec::new();
    for c in 1..=k {
        let target = sigma.apply(c as u32) as usize;
        images.extend((1..=ys[c - 1].colours()).map(|d| new_offset[target - 1] + d));
    }
    Permutation::from_images(images).expect("block permutation")
}

/// Unit, associativity and equivariance laws of composition on `n` seeded
/// instances of at most `max_tokens` tokens.
pub fn operad_laws(seed: u64, n: usize, max_tokens: usize) -> SuiteReport {
    let mut report = SuiteReport::new("operad-laws");
    let mut rng = sample::rng(seed);
    for _ in 0..n {
        let (x, ys, zs) = sample::composable_triple(&mut rng, max_tokens);
        let ids: Vec<PathOp> = x.arities().into_iter().map(PathOp::identity).collect();
        report.check(x.compose(&ids).as_ref() == Ok(&x), || format!("right unit fails on {x}"));
        let left = PathOp::identity(x.bars()).compose(std::slice::from_ref(&x));
        report.check(left.as_ref() == Ok(&x), || format!("left unit fails on {x}"));

        let xy = x.compose(&ys).expect("sampled composable");
        let outer = xy.compose(&zs).expect("sampled composable");
        let mut rest = zs.as_slice();
        let mut inner = Vec::new();
        for y in &ys {
            let (block, tail) = rest.split_at(y.colours() as usize);
            inner.push(y.compose(block).expect("sampled composable"));
            rest = tail;
        }
        let nested = x.compose(&inner).expect("sampled composable");
        report.check(outer == nested, || format!("associativity fails on {x} with {ys:?} and {zs:?}"));

        let sigma = sample::permutation(&mut rng, x.colours() as usize);
        let mut moved = vec![PathOp::empty(); ys.len()];
        for (c, y) in ys.iter().enumerate() {
            moved[sigma.apply(c as u32 + 1) as usize - 1] = y.clone();
        }
        let lhs = x.permute(&sigma).and_then(|p| p.compose(&moved)).expect("sampled composable");
        let rhs = xy.permute(&composite_tau(&ys, &moved, &sigma)).expect("sizes agree");
        report.check(lhs == rhs, || format!("equivariance fails on {x} under {sigma}"));
    }
    report
}

/// Exhaustive: for canonical `x` in `L_m` and canonical inputs in `L_m`,
/// `x ∘ ys` is in `L_m`. `x` and the inputs have at most `max_tokens`
/// tokens together. Composites commute with colour permutations, so
/// canonical operands cover every orbit.
pub fn filtration(m: usize, max_tokens: usize) -> SuiteReport {
    let mut report = SuiteReport::new("filtration");
    let ops: Vec<PathOp> = canonical_ops_up_to(max_tokens).into_iter().filter(|o| o.in_filtration(m)).collect();
    // shortest first, so the slot loops can stop early
    let mut by_bars: Vec<Vec<&PathOp>> = vec![Vec::new(); max_tokens + 1];
    for o in &ops {
        by_bars[o.bars()].push(o);
    }
    for x in &ops {
        let arities = x.arities();
        let mut chosen: Vec<PathOp> = Vec::with_capacity(arities.len());
        fill(&mut report, m, x, &arities, &by_bars, max_tokens - x.len(), &mut chosen);
    }
    report
}

fn fill(
    report: &mut SuiteReport,
    m: usize,
    x: &PathOp,
    arities: &[usize],
    by_bars: &[Vec<&PathOp>],
    room: usize,
    chosen: &mut Vec<PathOp>,
) {
    let slot = chosen.len();
    if slot == arities.len() {
        let z = x.compose(chosen).expect("arities match");
        report.check(z.in_filtration(m), || format!("{x} ∘ {chosen:?} = {z} has complexity {}", z.complexity()));
        return;
    }
    // every later slot needs at least its bars
    let reserve: usize = arities[slot + 1..].iter().sum();
    for y in &by_bars[arities[slot]] {
        if y.len() + reserve > room {
            break;
        }
        chosen.push((*y).clone());
        fill(report, m, x, arities, by_bars, room - y.len(), chosen);
        chosen.pop();
    }
}

/// Every member of the table lies in `L_m`.
pub fn containment(table: &GenTable) -> SuiteReport {
    let mut report = SuiteReport::new("containment");
    let m = table.m();
    for rep in table.representatives() {
        report.check(rep.in_filtration(m), || format!("{rep} has complexity {}", rep.complexity()));
    }
    report.tally("orbits", table.orbit_count());
    report.tally("entries", table.entry_count());
    report
}

fn leaves(t: &BWTree) -> usize {
    match t {
        BWTree::Leaf => 1,
        _ => t.children().iter().map(leaves).sum(),
    }
}

/// Tree round trips on a level-2 table and on `L_2`, and the table's counts
/// against counts taken from enumerated white trees.
pub fn trees(table: &GenTable, max_tokens: usize) -> SuiteReport {
    let mut report = SuiteReport::new("trees");
    let round_trip = |o: &PathOp| op_to_tree(o).ok().and_then(|t| tree_to_op(&t).ok()).as_ref() == Some(o);
    table.for_each_member(|o| {
        if o.len() <= max_tokens {
            report.check(round_trip(o), || format!("{o} does not round-trip"));
        }
    });
    for o in canonical_ops_up_to(max_tokens).into_iter().filter(|o| o.in_filtration(2)) {
        report.check(round_trip(&o), || format!("{o} does not round-trip"));
    }
    for t in enumerate_trees(max_tokens, false) {
        let back = tree_to_op(&t).ok().and_then(|o| op_to_tree(&o).ok());
        report.check(back.as_ref() == Some(&t), || format!("tree {t:?} does not round-trip"));
    }

    let mut from_table: BTreeMap<(usize, Vec<usize>, usize), usize> = BTreeMap::new();
    for row in table.counts() {
        if row.arities.iter().sum::<usize>() + row.colours + row.bars <= max_tokens {
            from_table.insert((row.colours, row.arities, row.bars), row.count);
        }
    }
    let mut from_trees: BTreeMap<(usize, Vec<usize>, usize), usize> = BTreeMap::new();
    for t in enumerate_trees(max_tokens, true).into_iter().filter(BWTree::is_all_white) {
        let mut slots: Vec<(u32, usize)> = Vec::new();
        collect_slots(&t, &mut slots);
        slots.sort_unstable();
        let arities: Vec<usize> = slots.into_iter().map(|(_, a)| a).collect();
        *from_trees.entry((arities.len(), arities, leaves(&t))).or_default() += 1;
    }
    report.tally("count-groups", from_trees.len());
    for key in from_table.keys().chain(from_trees.keys()) {
        let (a, b) = (from_table.get(key), from_trees.get(key));
        report.check(a == b, || format!("group {key:?}: table {a:?}, trees {b:?}"));
    }
    report
}

fn collect_slots(t: &BWTree, out: &mut Vec<(u32, usize)>) {
    if let BWTree::White { colour, children } = t {
        out.push((*colour, children.len()));
    }
    t.children().iter().for_each(|c| collect_slots(c, out));
}

/// Result of [`axioms`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomRun {
    pub report: AxiomReport,
    pub formulas: FormulaReport,
}

/// Unit laws on every representative of `table`, and `n` seeded
/// associativity and (even `m`) interchange instances over its members.
pub fn axioms(table: &GenTable, seed: u64, n: usize) -> Result<AxiomRun, latticepath_core::join::JoinError> {
    let m = table.m();
    let pool = sample::representatives(table);
    let mut rng = sample::rng(seed);
    let assoc = sample::assoc_instances(&mut rng, m, &pool, n);
    let inter = sample::interchange_instances(&mut rng, m, &pool, n);
    let mut report = check_units(m, &pool)?;
    report.extend(check_associativity(m, &assoc)?);
    report.extend(check_interchange(m, &inter)?);
    let formulas = compare_formulas(m, &assoc, &inter)?;
    Ok(AxiomRun { report, formulas })
}

pub fn axiom_suite(run: &AxiomRun, m: usize) -> SuiteReport {
    let mut report = SuiteReport::new("axioms");
    for r in &run.report.records {
        let diagram = r.diagram.name();
        report.tally(diagram, 1);
        report.check(r.holds(), || format!("m={m} {diagram} fails on {:?}", r.inputs));
    }
    report.tally("formula-compared", run.formulas.compared);
    report.tally("formula-printed-agree", run.formulas.printed_agree);
    report.tally("formula-closed-form-agree", run.formulas.closed_form_agree);
    report
}

/// Nerve and decomposition checks for every acyclic digraph on at most
/// `max_vertices` vertices, one per isomorphism class.
pub fn nerves(max_vertices: usize) -> SuiteReport {
    let mut report = SuiteReport::new("nerves");
    for n in 0..=max_vertices {
        for g in dag_enumerate(n, true) {
            report.tally("graphs", 1);
            match nerve_report(&g) {
                Ok(r) => {
                    report.tally(r.verdict.as_str(), 1);
                    let ok = r.components == 1 && r.homology.is_trivial();
                    report.check(ok, || format!("nerve of {g} is not acyclic: {r:?}"));
                }
                Err(e) => report.fail(format!("{g}: {e}")),
            }
            for v in g.roots() {
                let ok = decompose_at_vertex(&g, v).map(|d| d.all_checks_pass());
                report.check(ok == Ok(true), || format!("decomposition of {g} at {} fails: {ok:?}", v + 1));
            }
        }
    }
    report
}

/// Lifting graphs of `n` seeded tuples of table members are acyclic.
pub fn lifting_graphs(table: &GenTable, seed: u64, n: usize) -> SuiteReport {
    let mut report = SuiteReport::new("lifting-graphs");
    let pool = sample::representatives(table);
    let mut rng = sample::rng(seed);
    for ops in sample::member_tuples(&mut rng, &pool, n, 3) {
        let g = lifting_graph(&ops, table.m());
        report.tally("edges", g.edge_count());
        report.check(!g.has_cycle(), || format!("lifting graph of {ops:?} has a cycle"));
    }
    report
}

/// Lifts every `P_{·+·}` element of at most `max_tokens` tokens (orbit
/// representatives with every labelling), erases the lift again and runs
/// the uniqueness search.
pub fn lifts(table: &GenTable, max_tokens: usize) -> Result<SuiteReport, LiftError> {
    let m = table.m();
    let mut report = SuiteReport::new("lift");
    let lifter = Lifter::new(table)?;
    for rep in table.representatives().filter(|o| o.len() <= max_tokens) {
        for sources in all_labellings(rep.colours() as usize) {
            for target in Label::ALL {
                let x = LabelledOp { op: rep.clone(), sources: sources.clone(), target };
                if !in_plus(&x, m, lifter.oracle()).is_member() {
                    continue;
                }
                report.tally("plus", 1);
                let lifted = match lifter.lift(&x) {
                    Ok(r) => r,
                    Err(LiftError::NoLift(_)) => {
                        report.tally("no-lift", 1);
                        report.fail(format!("{x}: no lift"));
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                report.tally(
                    match lifted.route {
                        Route::Unchanged => "route-unchanged",
                        Route::Identity => "route-identity",
                        Route::Witness => "route-witness",
                        Route::Saturation => "route-saturation",
                    },
                    1,
                );
                let back = erase(&lifted, m)?;
                report.check(back == x, || format!("{x}: lift {} erases to {back}", lifted.lifted));
                let u = lifter.verify_unique(&x)?;
                if u.unique() {
                    report.tally("unique", 1);
                } else if let Some(e) = &u.extension {
                    report.tally("extendable", 1);
                    report.fail(format!("{x}: lift {} extends to {e}", lifted.lifted));
                } else {
                    report.tally(if u.truncated { "truncated" } else { "ambiguous" }, 1);
                    report.fail(format!("{x}: {} maximal insertions, truncated={}", u.maximal.len(), u.truncated));
                }
            }
        }
    }
    Ok(report)
}

/// `in_circ` against the tree predicate for every labelled member of a
/// level-2 table with target `C` and at most `max_tokens` tokens. The
/// B-insertion variant is compared too; its disagreements are tallied and
/// listed in `disagreements`, and do not count as failures.
pub fn circ(table: &GenTable, max_tokens: usize) -> (SuiteReport, Vec<String>) {
    let mut report = SuiteReport::new("circ");
    let mut disagreements = Vec::new();
    let oracle = JoinClosure::new(2).expect("level 2");
    table.for_each_member(|o| {
        if o.len() > max_tokens {
            return;
        }
        for sources in all_labellings(o.colours() as usize) {
            let x = LabelledOp { op: o.clone(), sources, target: Label::C };
            let with_c = in_circ(&x, 2, &oracle, Label::C);
            let tree = tree_c_line(&x);
            report.check(tree.is_some() && Some(with_c.is_member()) == tree, || {
                format!("{x}: in_circ {with_c:?}, tree predicate {tree:?}")
            });
            let with_b = in_circ(&x, 2, &oracle, Label::B);
            if with_b != with_c {
                report.tally("b-variant-disagrees", 1);
                disagreements.push(format!("{x}\tC:{with_c:?}\tB:{with_b:?}"));
            }
        }
    });
    (report, disagreements)
}
