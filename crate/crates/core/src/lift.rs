//! Saturating a labelled operation with C-labelled colours.
//!
//! An operation of `P_{·+·}` with target C can usually take extra colours,
//! each inserted `m` times and labelled C, while staying in `P_{·+·}`. Doing
//! this until no insertion is possible gives an element of `P_{·∘·}`. For
//! `m = 3` identities have an explicit answer and joins are lifted side by
//! side; everything else goes through a greedy search. Inserted colours are
//! numbered after the original ones, by first occurrence.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use thiserror::Error;

use crate::hat::{GenTable, HatOracle, JoinClosure, Membership, Witness};
use crate::join::{join, join_decompositions};
use crate::label::{in_plus, labelled_insertions, Label, LabelledOp};
use crate::path::{Colour, PathError, PathOp, Token};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("lifting is only implemented for 1 <= m <= 3, got {0}")]
    Unsupported(usize),
    #[error("{0} is not in P_(+)")]
    NotInPlus(String),
    #[error("membership of {0} is undecided")]
    Undecided(String),
    #[error("the witness of {0} gives no lift")]
    NoLift(String),
    #[error("no witness for {0}")]
    MissingWitness(String),
    #[error("search passed {0} tokens")]
    SearchBound(usize),
    #[error("colour {colour} occurs {found} times, expected {expected}")]
    Arity { colour: Colour, found: usize, expected: usize },
    #[error(transparent)]
    Path(#[from] PathError),
}

/// How a lift was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Target A or B, or nothing to insert.
    Unchanged,
    Identity,
    Witness,
    Saturation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftResult {
    pub lifted: LabelledOp,
    pub inserted_colours: BTreeSet<Colour>,
    pub route: Route,
}

impl LiftResult {
    fn new(lifted: LabelledOp, original: usize, route: Route) -> Self {
        let inserted_colours = (original as Colour + 1..=lifted.op.colours()).collect();
        LiftResult { lifted, inserted_colours, route }
    }
}

/// Renumbers colours above `keep` by first occurrence.
pub fn renumber_inserted(op: &PathOp, keep: Colour) -> PathOp {
    let mut map: Vec<Colour> = vec![0; op.colours() as usize + 1];
    let mut next = keep;
    let tokens = op
        .tokens()
        .iter()
        .map(|&t| match t {
            Token::Colour(c) if c > keep => {
                if map[c as usize] == 0 {
                    next += 1;
                    map[c as usize] = next;
                }
                Token::Colour(map[c as usize])
            }
            t => t,
        })
        .collect();
    PathOp::new(tokens).expect("bijective renumbering")
}

/// The lift of an `n`-bar identity whose source is labelled `label`.
pub fn lift_identity(n: usize, label: Label, m: usize) -> Result<LiftResult, LiftError> {
    if !(1..=3).contains(&m) {
        return Err(LiftError::Unsupported(m));
    }
    let x = LabelledOp { op: PathOp::identity(n), sources: vec![label], target: Label::C };
    if label == Label::C {
        return Ok(LiftResult::new(x, 1, Route::Unchanged));
    }
    if m < 3 {
        let oracle = JoinClosure::new(m).expect("m >= 1");
        return saturate(&x, m, &oracle, usize::MAX);
    }
    let col = Token::Colour;
    let mut tokens = vec![col(1)];
    if n > 0 {
        tokens.push(col(2));
        for i in 1..n as Colour {
            tokens.extend([Token::Bar, col(i + 1), col(1), col(i + 2)]);
        }
        let top = n as Colour + 1;
        tokens.extend([Token::Bar, col(top), col(1), col(top)]);
        tokens.extend((2..top).rev().map(col));
    }
    if label == Label::B {
        tokens.reverse();
    }
    let op = renumber_inserted(&PathOp::new(tokens)?, 1);
    let sources = core::iter::once(label).chain((0..n).map(|_| Label::C)).collect();
    Ok(LiftResult::new(LabelledOp { op, sources, target: Label::C }, 1, Route::Identity))
}

/// Deletes the listed colours, each of which must occur `m` times, and
/// renumbers the rest in order. This is composition with `eta(m)` in those
/// slots.
pub fn erase_colours(op: &PathOp, colours: &BTreeSet<Colour>, m: usize) -> Result<PathOp, LiftError> {
    for &c in colours {
        let found = op.occurrences(c);
        if found != m {
            return Err(LiftError::Arity { colour: c, found, expected: m });
        }
    }
    let shift: Vec<Colour> = (0..=op.colours()).map(|c| colours.range(..c).count() as Colour).collect();
    let tokens = op
        .tokens()
        .iter()
        .filter(|t| !matches!(t, Token::Colour(c) if colours.contains(c)))
        .map(|&t| match t {
            Token::Colour(c) => Token::Colour(c - shift[c as usize]),
            t => t,
        })
        .collect();
    Ok(PathOp::new(tokens)?)
}

/// [`erase_colours`] on a whole lift, recovering the input.
pub fn erase(result: &LiftResult, m: usize) -> Result<LabelledOp, LiftError> {
    let op = erase_colours(&result.lifted.op, &result.inserted_colours, m)?;
    let sources = result
        .lifted
        .sources
        .iter()
        .enumerate()
        .filter(|(i, _)| !result.inserted_colours.contains(&(*i as Colour + 1)))
        .map(|(_, &l)| l)
        .collect();
    Ok(LabelledOp { op, sources, target: result.lifted.target })
}

fn require(m: Membership, what: &LabelledOp) -> Result<bool, LiftError> {
    match m {
        Membership::Member => Ok(true),
        Membership::NotMember => Ok(false),
        Membership::Unknown => Err(LiftError::Undecided(alloc::format!("{what}"))),
    }
}

/// Insertions of one C-labelled colour that stay in `P_{·+·}`, renumbered
/// and deduplicated.
fn extensions(lop: &LabelledOp, m: usize, oracle: &dyn HatOracle, keep: Colour) -> Result<Vec<LabelledOp>, LiftError> {
    let mut out = BTreeSet::new();
    for mut ins in labelled_insertions(lop, m, Label::C) {
        if require(in_plus(&ins, m, oracle), &ins)? {
            ins.op = renumber_inserted(&ins.op, keep);
            out.insert(ins);
        }
    }
    Ok(out.into_iter().collect())
}

/// Greedy insertion until nothing fits. Fails once the string would pass
/// `max_tokens`.
pub fn saturate(
    lop: &LabelledOp,
    m: usize,
    oracle: &dyn HatOracle,
    max_tokens: usize,
) -> Result<LiftResult, LiftError> {
    if !require(in_plus(lop, m, oracle), lop)? {
        return Err(LiftError::NotInPlus(alloc::format!("{lop}")));
    }
    let keep = lop.op.colours();
    let mut cur = lop.clone();
    loop {
        let mut found = None;
        for ins in labelled_insertions(&cur, m, Label::C) {
            if require(in_plus(&ins, m, oracle), &ins)? {
                found = Some(ins);
                break;
            }
        }
        let Some(next) = found else {
            break;
        };
        if next.op.len() > max_tokens {
            return Err(LiftError::SearchBound(max_tokens));
        }
        cur = next;
    }
    cur.op = renumber_inserted(&cur.op, keep);
    let route = if cur == *lop { Route::Unchanged } else { Route::Saturation };
    Ok(LiftResult::new(cur, keep as usize, route))
}

/// Outcome of the exhaustive insertion search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Uniqueness {
    /// Maximal results, up to renumbering of the inserted colours.
    pub maximal: Vec<LabelledOp>,
    pub lifted: LabelledOp,
    pub states: usize,
    /// The search hit its state or token cap.
    pub truncated: bool,
    /// An insertion into `lifted` that stays in `P_{·+·}`, if any.
    pub extension: Option<LabelledOp>,
}

impl Uniqueness {
    pub fn unique(&self) -> bool {
        self.extension.is_none() && !self.truncated && self.maximal.len() == 1 && self.maximal[0] == self.lifted
    }
}

/// Lifts over the witnesses of a generated table, with unbounded membership
/// from [`JoinClosure`].
#[derive(Debug)]
pub struct Lifter<'a> {
    m: usize,
    table: &'a GenTable,
    oracle: JoinClosure,
    pub max_tokens: usize,
    pub max_states: usize,
    memo: RefCell<BTreeMap<(PathOp, Vec<Label>), Option<PathOp>>>,
}

impl<'a> Lifter<'a> {
    pub fn new(table: &'a GenTable) -> Result<Self, LiftError> {
        let m = table.m();
        if !(1..=3).contains(&m) {
            return Err(LiftError::Unsupported(m));
        }
        Ok(Lifter {
            m,
            table,
            oracle: JoinClosure::new(m).expect("m >= 1"),
            max_tokens: 48,
            max_states: 5000,
            memo: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn oracle(&self) -> &JoinClosure {
        &self.oracle
    }

    pub fn in_circ(&self, lop: &LabelledOp) -> Membership {
        crate::label::in_circ(lop, self.m, &self.oracle, Label::C)
    }

    /// Greedy saturation for `m <= 2`; for `m = 3` identities use the
    /// explicit strings and joins are lifted operand by operand.
    pub fn lift(&self, lop: &LabelledOp) -> Result<LiftResult, LiftError> {
        if !require(in_plus(lop, self.m, &self.oracle), lop)? {
            return Err(LiftError::NotInPlus(alloc::format!("{lop}")));
        }
        if lop.target != Label::C {
            return Ok(LiftResult::new(lop.clone(), lop.sources.len(), Route::Unchanged));
        }
        if self.m < 3 {
            return saturate(lop, self.m, &self.oracle, self.max_tokens);
        }
        let Some(op) = self.by_witness(&lop.op, &lop.sources, 0)? else {
            return Err(LiftError::NoLift(alloc::format!("{lop}")));
        };
        let lifted = LabelledOp { sources: with_inserted(&lop.sources, &op), op, target: Label::C };
        let route = if lifted == *lop { Route::Unchanged } else { Route::Witness };
        Ok(LiftResult::new(lifted, lop.sources.len(), route))
    }

    /// The lifted string of `op` with the given source labels and target C,
    /// or `None` where the witness gives no usable recursion.
    fn by_witness(&self, op: &PathOp, sources: &[Label], depth: usize) -> Result<Option<PathOp>, LiftError> {
        let key = (op.clone(), sources.to_vec());
        if let Some(r) = self.memo.borrow().get(&key) {
            return Ok(r.clone());
        }
        // a split off eta can lead back here
        self.memo.borrow_mut().insert(key.clone(), None);
        let r = self.lift_uncached(op, sources, depth)?;
        self.memo.borrow_mut().insert(key, r.clone());
        Ok(r)
    }

    fn lift_uncached(&self, op: &PathOp, sources: &[Label], depth: usize) -> Result<Option<PathOp>, LiftError> {
        let m = self.m;
        let here = LabelledOp { op: op.clone(), sources: sources.to_vec(), target: Label::C };
        if depth > 64 || !require(in_plus(&here, m, &self.oracle), &here)? {
            return Ok(None);
        }
        if op.colours() == 0 {
            return Ok((*op == PathOp::eta(m)?).then(|| PathOp::identity(m - 1)));
        }
        if op.colours() == 1 && *op == PathOp::identity(op.bars()) {
            return Ok(Some(lift_identity(op.bars(), sources[0], m)?.lifted.op));
        }
        let mut candidates = Vec::new();
        if let Some(Witness::Join { lhs, lhs_cuts, rhs, rhs_cuts }) = self.table.witness(op) {
            candidates.push((PathOp::parse(&lhs)?, lhs_cuts, PathOp::parse(&rhs)?, rhs_cuts));
        }
        let mut splits = join_decompositions(op, m);
        splits.sort_by_key(|d| d.even.colours() == 0 || d.odd.colours() == 0);
        candidates.extend(splits.into_iter().map(|d| (d.even, d.even_cuts, d.odd, d.odd_cuts)));
        for (x, i, y, j) in candidates {
            let Ok(plain) = join(&x, &i, &y, &j, m) else {
                continue;
            };
            // `plain` is `op` up to renaming colours; read the renaming off
            // the common layout
            let mut to_op: Vec<Colour> = vec![0; plain.result.colours() as usize + 1];
            for (a, b) in plain.result.tokens().iter().zip(op.tokens()) {
                if let (Token::Colour(ca), Token::Colour(cb)) = (a, b) {
                    to_op[*ca as usize] = *cb;
                }
            }
            let (kx, ky) = (x.colours(), y.colours());
            let src = |c: Colour| sources[to_op[c as usize] as usize - 1];
            let xs: Vec<Label> = (1..=kx).map(src).collect();
            let ys: Vec<Label> = (kx + 1..=kx + ky).map(src).collect();
            let Some(xl) = self.by_witness(&x, &xs, depth + 1)? else {
                continue;
            };
            let Some(yl) = self.by_witness(&y, &ys, depth + 1)? else {
                continue;
            };
            let Ok(z) = join(&xl, &i, &yl, &j, m) else {
                continue;
            };
            let (kxl, kz) = (xl.colours(), kx + ky);
            let ix = kxl - kx;
            let tokens = z
                .result
                .tokens()
                .iter()
                .map(|&t| match t {
                    Token::Colour(c) if c <= kx => Token::Colour(to_op[c as usize]),
                    Token::Colour(c) if c <= kxl => Token::Colour(kz + c - kx),
                    Token::Colour(c) if c <= kxl + ky => Token::Colour(to_op[(kx + c - kxl) as usize]),
                    Token::Colour(c) => Token::Colour(kz + ix + c - kxl - ky),
                    t => t,
                })
                .collect();
            let lifted = renumber_inserted(&PathOp::new(tokens)?, kz);
            let check = LabelledOp { sources: with_inserted(sources, &lifted), op: lifted, target: Label::C };
            if require(in_plus(&check, m, &self.oracle), &check)? {
                return Ok(Some(check.op));
            }
        }
        Ok(None)
    }

    /// Exhaustive search over insertion sequences. A lift that still takes
    /// an insertion is reported straight away.
    pub fn verify_unique(&self, lop: &LabelledOp) -> Result<Uniqueness, LiftError> {
        let lifted = self.lift(lop)?.lifted;
        let keep = lop.op.colours();
        let extension = extensions(&lifted, self.m, &self.oracle, lifted.op.colours())?.into_iter().next();
        if extension.is_some() {
            return Ok(Uniqueness { maximal: Vec::new(), lifted, states: 0, truncated: false, extension });
        }
        let mut seen: BTreeSet<LabelledOp> = BTreeSet::new();
        let mut maximal = Vec::new();
        let mut truncated = false;
        let mut stack = vec![lop.clone()];
        seen.insert(lop.clone());
        while let Some(cur) = stack.pop() {
            if cur.op.len() > self.max_tokens || seen.len() > self.max_states {
                truncated = true;
                break;
            }
            let next = extensions(&cur, self.m, &self.oracle, keep)?;
            if next.is_empty() {
                maximal.push(cur);
            }
            for n in next {
                if seen.insert(n.clone()) {
                    stack.push(n);
                }
            }
        }
        maximal.sort();
        Ok(Uniqueness { maximal, lifted, states: seen.len(), truncated, extension: None })
    }
}

fn with_inserted(sources: &[Label], op: &PathOp) -> Vec<Label> {
    let mut s = sources.to_vec();
    s.resize(op.colours() as usize, Label::C);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hat::generate;
    use crate::label::all_labellings;

    fn op(s: &str) -> PathOp {
        PathOp::parse(s).unwrap()
    }

    #[test]
    fn identity_strings() {
        let a = lift_identity(3, Label::A, 3).unwrap();
        assert_eq!(a.lifted.op.to_compact().unwrap(), "12|213|314|41432");
        assert_eq!(a.inserted_colours, BTreeSet::from([2, 3, 4]));
        let b = lift_identity(3, Label::B, 3).unwrap();
        assert_eq!(b.lifted.op.to_compact().unwrap(), "23414|413|312|21");
        for n in 0..4 {
            let c = lift_identity(n, Label::C, 3).unwrap();
            assert_eq!(c.lifted.op, PathOp::identity(n));
            assert!(c.inserted_colours.is_empty());
            assert_eq!(lift_identity(n, Label::A, 3).unwrap().inserted_colours.len(), n);
        }
        assert_eq!(lift_identity(1, Label::A, 4), Err(LiftError::Unsupported(4)));
    }

    #[test]
    fn erase_inverts_identity_lifts() {
        let a = lift_identity(3, Label::A, 3).unwrap();
        assert_eq!(erase_colours(&a.lifted.op, &a.inserted_colours, 3).unwrap().to_compact().unwrap(), "1|1|1|1");
        let x = op("12|21");
        assert_eq!(erase_colours(&x, &BTreeSet::new(), 2).unwrap(), x);
        assert!(matches!(erase_colours(&x, &BTreeSet::from([1]), 3), Err(LiftError::Arity { .. })));
    }

    #[test]
    fn erase_is_composition_with_eta() {
        let x = op("12|213|314|41432");
        let eta = PathOp::eta(3).unwrap();
        let cols = BTreeSet::from([2, 4]);
        let inner: Vec<PathOp> = x
            .arities()
            .iter()
            .enumerate()
            .map(|(i, &a)| if cols.contains(&(i as Colour + 1)) { eta.clone() } else { PathOp::identity(a) })
            .collect();
        assert_eq!(erase_colours(&x, &cols, 3).unwrap(), x.compose(&inner).unwrap());
    }

    #[test]
    fn level_three_identity_lifts() {
        let t = generate(3, 7).unwrap();
        let l = Lifter::new(&t).unwrap();
        for n in 0..=3 {
            for label in Label::ALL {
                let x = LabelledOp { op: PathOp::identity(n), sources: vec![label], target: Label::C };
                assert_eq!(l.lift(&x).unwrap().lifted, lift_identity(n, label, 3).unwrap().lifted);
            }
        }
        let eta = LabelledOp { op: PathOp::eta(3).unwrap(), sources: vec![], target: Label::C };
        assert_eq!(l.lift(&eta).unwrap().lifted.op, PathOp::identity(2));
    }

    #[test]
    fn level_three_lifts_still_extend() {
        // a block of a fresh colour in one gap has complexity 1 against
        // everything, so it adds no edge and stays in P_(+)
        let t = generate(3, 7).unwrap();
        let l = Lifter::new(&t).unwrap();
        let x = LabelledOp { op: PathOp::identity(3), sources: vec![Label::A], target: Label::C };
        let u = l.verify_unique(&x).unwrap();
        assert!(!u.unique());
        let ext = u.extension.unwrap();
        assert_eq!(ext.op.to_compact().unwrap(), "12|213|314|41432555");
        let y = LabelledOp::parse("1|1 :: (C) -> C").unwrap();
        assert_eq!(l.in_circ(&y), Membership::NotMember);
    }

    #[test]
    fn lifts_at_small_levels() {
        for m in 1..=3 {
            let t = generate(m, 6).unwrap();
            let l = Lifter::new(&t).unwrap();
            for rep in t.representatives() {
                for sources in all_labellings(rep.colours() as usize) {
                    let x = LabelledOp { op: rep.clone(), sources, target: Label::C };
                    if in_plus(&x, m, l.oracle()) != Membership::Member {
                        continue;
                    }
                    let r = match l.lift(&x) {
                        Err(LiftError::NoLift(_)) if m == 3 => continue,
                        r => r.unwrap(),
                    };
                    assert_eq!(erase(&r, m).unwrap(), x);
                    assert_eq!(
                        in_plus(&r.lifted, m, l.oracle()),
                        Membership::Member,
                        "{x} -> {} {:?}",
                        r.lifted,
                        r.route
                    );
                    if m < 3 {
                        assert_eq!(l.in_circ(&r.lifted), Membership::Member, "{x} -> {}", r.lifted);
                        assert_eq!(l.lift(&r.lifted).unwrap().lifted, r.lifted);
                        assert!(l.verify_unique(&x).unwrap().unique(), "{x}");
                    }
                }
            }
        }
    }

    #[test]
    fn target_a_is_unchanged() {
        let t = generate(3, 6).unwrap();
        let l = Lifter::new(&t).unwrap();
        let x = LabelledOp::uniform(PathOp::identity(2), Label::A);
        let r = l.lift(&x).unwrap();
        assert_eq!(r.route, Route::Unchanged);
        assert!(l.verify_unique(&x).unwrap().unique());
    }

    #[test]
    fn level_two_inserts_unary_c() {
        // two leaves under an A vertex, target C: each leaf edge lacks a C
        let t = generate(2, 8).unwrap();
        let l = Lifter::new(&t).unwrap();
        let x = LabelledOp { op: PathOp::identity(2), sources: vec![Label::A], target: Label::C };
        let r = l.lift(&x).unwrap();
        assert_eq!(r.inserted_colours.len(), 2);
        assert!(l.verify_unique(&x).unwrap().unique());
    }
}
