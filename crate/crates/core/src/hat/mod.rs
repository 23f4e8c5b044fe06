//! The suboperads `Ĥ_m`: generated from the nullary `eta(m)` and the
//! identities under joins, composition and the symmetric action.
//!
//! A [`GenTable`] holds every `Ĥ_m` operation up to a token budget. It keeps
//! one carrier string per Σ-orbit together with the witness that built it;
//! the other members of the orbit are its colour permutations and get
//! [`Witness::Perm`] witnesses on demand. [`JoinClosure`] decides membership
//! for strings of any length by searching join decompositions.

mod closure;
mod gen;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::enumerate::permutations;
use crate::join::{join, CutTuple, JoinError};
use crate::path::{PathError, PathOp, Permutation};

pub use closure::JoinClosure;
pub use gen::generate;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HatError {
    #[error("complexity level must be at least 1")]
    LevelTooSmall,
    #[error("budget {budget} cannot hold eta({m}), which needs {needed} tokens")]
    BudgetTooSmall { m: usize, budget: usize, needed: usize },
    #[error("no table entry for {0:?}")]
    UnknownKey(String),
    #[error("witness for {key:?} replays to {got:?}")]
    ReplayMismatch { key: String, got: String },
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Join(#[from] JoinError),
}

/// How a table entry was built. Operands are named by their general-form
/// keys.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Witness {
    Eta,
    Identity(usize),
    Join { lhs: String, lhs_cuts: CutTuple, rhs: String, rhs_cuts: CutTuple },
    Gamma { outer: String, inner: Vec<String> },
    Perm { base: String, perm: Permutation },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Eta => f.write_str("eta"),
            Witness::Identity(n) => write!(f, "identity {n}"),
            Witness::Join { lhs, lhs_cuts, rhs, rhs_cuts } => {
                write!(f, "join [{lhs}] {lhs_cuts} [{rhs}] {rhs_cuts}")
            }
            Witness::Gamma { outer, inner } => {
                write!(f, "gamma [{outer}]")?;
                inner.iter().try_for_each(|i| write!(f, " [{i}]"))
            }
            Witness::Perm { base, perm } => write!(f, "perm [{base}] {perm}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("cannot parse witness {0:?}")]
pub struct WitnessSyntax(pub String);

enum Item<'a> {
    Key(&'a str),
    Cuts(&'a str),
    Word(&'a str),
}

fn items(text: &str) -> Option<Vec<Item<'_>>> {
    let mut out = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        let (item, tail) = match rest.as_bytes()[0] {
            b'[' => {
                let end = rest.find(']')?;
                (Item::Key(&rest[1..end]), &rest[end + 1..])
            }
            b'(' => {
                let end = rest.find(')')?;
                (Item::Cuts(&rest[1..end]), &rest[end + 1..])
            }
            _ => {
                let end = rest.find(' ').unwrap_or(rest.len());
                (Item::Word(&rest[..end]), &rest[end..])
            }
        };
        out.push(item);
        rest = tail.trim_start();
    }
    Some(out)
}

fn cuts(text: &str) -> Option<CutTuple> {
    let positions = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().ok())
        .collect::<Option<Vec<usize>>>()?;
    CutTuple::new(positions).ok()
}

impl core::str::FromStr for Witness {
    type Err = WitnessSyntax;

    /// Inverse of `Display`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || WitnessSyntax(text.into());
        let all = items(text).ok_or_else(bad)?;
        let w = match all.as_slice() {
            [Item::Word("eta")] => Witness::Eta,
            [Item::Word("identity"), Item::Word(n)] => Witness::Identity(n.parse().map_err(|_| bad())?),
            [Item::Word("join"), Item::Key(l), Item::Cuts(i), Item::Key(r), Item::Cuts(j)] => Witness::Join {
                lhs: (*l).into(),
                lhs_cuts: cuts(i).ok_or_else(bad)?,
                rhs: (*r).into(),
                rhs_cuts: cuts(j).ok_or_else(bad)?,
            },
            [Item::Word("gamma"), Item::Key(o), inner @ ..] => Witness::Gamma {
                outer: (*o).into(),
                inner: inner
                    .iter()
                    .map(|i| match i {
                        Item::Key(k) => Ok(String::from(*k)),
                        _ => Err(bad()),
                    })
                    .collect::<Result<_, _>>()?,
            },
            [Item::Word("perm"), Item::Key(b), rest @ ..] => {
                let images = match rest {
                    [] => Vec::new(),
                    [Item::Word(p)] => p.split(',').map(|c| c.parse().map_err(|_| bad())).collect::<Result<_, _>>()?,
                    _ => return Err(bad()),
                };
                Witness::Perm { base: (*b).into(), perm: Permutation::from_images(images).map_err(|_| bad())? }
            }
            _ => return Err(bad()),
        };
        Ok(w)
    }
}

/// Three-valued membership: tables cannot decide strings above their budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Membership {
    Member,
    NotMember,
    Unknown,
}

impl Membership {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Membership::Member
        } else {
            Membership::NotMember
        }
    }

    pub fn is_member(self) -> bool {
        self == Membership::Member
    }
}

/// Anything that can answer `Ĥ_m` membership.
pub trait HatOracle {
    fn level(&self) -> usize;
    fn membership(&self, op: &PathOp) -> Membership;
}

/// Which closure step first produced an orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Origin {
    Seed,
    Join,
    Gamma,
}

impl Origin {
    pub fn as_str(self) -> &'static str {
        match self {
            Origin::Seed => "seed",
            Origin::Join => "join",
            Origin::Gamma => "gamma",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [Origin::Seed, Origin::Join, Origin::Gamma].into_iter().find(|o| o.as_str() == name)
    }
}

/// One Σ-orbit of a table: the string its witness builds, and the witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub carrier: PathOp,
    pub witness: Witness,
    pub origin: Origin,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GenStats {
    /// Fixpoint rounds (a join closure followed by a composition pass).
    pub rounds: usize,
    /// Orbits first produced by composition rather than a join.
    pub gamma_only: usize,
}

/// One row of [`GenTable::counts`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CountRow {
    pub colours: usize,
    pub arities: Vec<usize>,
    pub bars: usize,
    pub count: usize,
}

/// `Ĥ_m` up to a token budget, stored by Σ-orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenTable {
    m: usize,
    budget: usize,
    /// σ-canonical representative to orbit.
    orbits: BTreeMap<PathOp, Orbit>,
    stats: GenStats,
}

impl GenTable {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn stats(&self) -> GenStats {
        self.stats
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// Number of operations, counting every colour permutation.
    pub fn entry_count(&self) -> usize {
        self.orbits.keys().map(|r| factorial(r.colours() as usize)).sum()
    }

    /// Orbits keyed by σ-canonical representative, in key order.
    pub fn orbits(&self) -> impl Iterator<Item = (&PathOp, &Orbit)> {
        self.orbits.iter()
    }

    /// σ-canonical representatives.
    pub fn representatives(&self) -> impl Iterator<Item = &PathOp> {
        self.orbits.keys()
    }

    /// Calls `f` on every member, all permutations included. Orbits are
    /// visited in key order and permutations lexicographically.
    pub fn for_each_member(&self, mut f: impl FnMut(&PathOp)) {
        for rep in self.orbits.keys() {
            for p in permutations(rep.colours() as usize) {
                let perm = Permutation::from_images(p).expect("valid permutation");
                f(&rep.permute(&perm).expect("sizes agree"));
            }
        }
    }

    /// Membership of `op`; `Unknown` above the budget. Exact and orbit
    /// lookup agree because tables are Σ-closed.
    pub fn contains(&self, op: &PathOp, up_to_sigma: bool) -> Membership {
        if op.len() > self.budget {
            return Membership::Unknown;
        }
        let (rep, _) = op.sigma_canonical();
        let _ = up_to_sigma;
        Membership::from_bool(self.orbits.contains_key(&rep))
    }

    pub fn orbit_of(&self, op: &PathOp) -> Option<&Orbit> {
        self.orbits.get(&op.sigma_canonical().0)
    }

    /// The stored witness of `op`: its orbit's witness when `op` is the
    /// carrier, otherwise a permutation of the carrier.
    pub fn witness(&self, op: &PathOp) -> Option<Witness> {
        let orbit = self.orbit_of(op)?;
        if &orbit.carrier == op {
            return Some(orbit.witness.clone());
        }
        let (_, to_rep) = op.sigma_canonical();
        let (_, carrier_to_rep) = orbit.carrier.sigma_canonical();
        let perm = to_rep.inverse().after(&carrier_to_rep);
        Some(Witness::Perm { base: orbit.carrier.to_general(), perm })
    }

    /// Rebuilds `op` from witnesses alone, checking every intermediate.
    pub fn replay(&self, op: &PathOp) -> Result<PathOp, HatError> {
        let key = op.to_general();
        let w = self.witness(op).ok_or_else(|| HatError::UnknownKey(key.clone()))?;
        let got = self.replay_witness(&w)?;
        if &got != op {
            return Err(HatError::ReplayMismatch { key, got: got.to_general() });
        }
        Ok(got)
    }

    pub fn replay_witness(&self, w: &Witness) -> Result<PathOp, HatError> {
        let lookup = |key: &str| -> Result<PathOp, HatError> {
            let op = PathOp::parse(key)?;
            self.replay(&op)
        };
        Ok(match w {
            Witness::Eta => PathOp::eta(self.m)?,
            Witness::Identity(n) => PathOp::identity(*n),
            Witness::Join { lhs, lhs_cuts, rhs, rhs_cuts } => {
                join(&lookup(lhs)?, lhs_cuts, &lookup(rhs)?, rhs_cuts, self.m)?.result
            }
            Witness::Gamma { outer, inner } => {
                let ys = inner.iter().map(|k| lookup(k)).collect::<Result<Vec<_>, _>>()?;
                lookup(outer)?.compose(&ys)?
            }
            Witness::Perm { base, perm } => lookup(base)?.permute(perm)?,
        })
    }

    /// Entry counts grouped by colour count, source arity sequence and bar
    /// count, sorted.
    pub fn counts(&self) -> Vec<CountRow> {
        let mut acc: BTreeMap<(usize, Vec<usize>, usize), usize> = BTreeMap::new();
        for rep in self.orbits.keys() {
            let mut arities = rep.arities();
            arities.sort_unstable();
            let repeats: usize = multiplicities(&arities).iter().map(|&c| factorial(c)).product();
            loop {
                *acc.entry((arities.len(), arities.clone(), rep.bars())).or_default() += repeats;
                if !next_permutation(&mut arities) {
                    break;
                }
            }
        }
        acc.into_iter().map(|((colours, arities, bars), count)| CountRow { colours, arities, bars, count }).collect()
    }

    /// Assembles a table from stored orbits, e.g. a cache file. Every
    /// carrier must replay.
    pub fn from_orbits(
        m: usize,
        budget: usize,
        stats: GenStats,
        orbits: impl IntoIterator<Item = Orbit>,
    ) -> Result<Self, HatError> {
        let mut table = GenTable::empty(m, budget)?;
        table.stats = stats;
        for o in orbits {
            table.orbits.insert(o.carrier.sigma_canonical().0, o);
        }
        for o in table.orbits.values() {
            table.replay(&o.carrier)?;
        }
        Ok(table)
    }

    fn empty(m: usize, budget: usize) -> Result<Self, HatError> {
        if m < 1 {
            return Err(HatError::LevelTooSmall);
        }
        if budget < m - 1 {
            return Err(HatError::BudgetTooSmall { m, budget, needed: m - 1 });
        }
        Ok(GenTable { m, budget, orbits: BTreeMap::new(), stats: GenStats::default() })
    }
}

impl HatOracle for GenTable {
    fn level(&self) -> usize {
        self.m
    }

    fn membership(&self, op: &PathOp) -> Membership {
        self.contains(op, true)
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn multiplicities(sorted: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&v| v == sorted[i]).count();
        out.push(j);
        i += j;
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests;
