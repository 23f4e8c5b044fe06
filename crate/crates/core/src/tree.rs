//! Planar trees with black and white vertices, in bijection with `L_2`.
//!
//! The contour of a tree is read off as a string: a white vertex writes its
//! colour in each of its sectors, a leaf writes a bar, and a black vertex
//! writes nothing. So a white corolla of arity `n` is `identity(n)` and the
//! tree made of a single edge is `|`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::enumerate::permutations;
use crate::path::{Colour, PathOp, Token};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("complexity {0} exceeds 2")]
    ComplexityTooHigh(usize),
    #[error("operation does not read as a black and white tree")]
    NotATree,
    #[error("a black vertex has a black child")]
    AdjacentBlack,
    #[error("a black vertex is unary")]
    UnaryBlack,
    #[error("white colours must be exactly 1..=k without repeats")]
    BadColours,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BWTree {
    Leaf,
    White { colour: Colour, children: Vec<BWTree> },
    Black { children: Vec<BWTree> },
}

impl BWTree {
    pub fn corolla(colour: Colour, arity: usize) -> Self {
        BWTree::White { colour, children: vec![BWTree::Leaf; arity] }
    }

    pub fn children(&self) -> &[BWTree] {
        match self {
            BWTree::Leaf => &[],
            BWTree::White { children, .. } | BWTree::Black { children } => children,
        }
    }

    pub fn is_black(&self) -> bool {
        matches!(self, BWTree::Black { .. })
    }

    pub fn is_all_white(&self) -> bool {
        !self.is_black() && self.children().iter().all(BWTree::is_all_white)
    }

    pub fn white_count(&self) -> usize {
        usize::from(matches!(self, BWTree::White { .. }))
            + self.children().iter().map(BWTree::white_count).sum::<usize>()
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            BWTree::Leaf => 1,
            _ => self.children().iter().map(BWTree::leaf_count).sum(),
        }
    }

    /// Length of the contour string.
    pub fn token_count(&self) -> usize {
        let own = match self {
            BWTree::Leaf => 1,
            BWTree::White { children, .. } => children.len() + 1,
            BWTree::Black { .. } => 0,
        };
        own + self.children().iter().map(BWTree::token_count).sum::<usize>()
    }

    /// Checks the two shape conditions.
    pub fn validate(&self) -> Result<(), TreeError> {
        if let BWTree::Black { children } = self {
            if children.len() == 1 {
                return Err(TreeError::UnaryBlack);
            }
            if children.iter().any(BWTree::is_black) {
                return Err(TreeError::AdjacentBlack);
            }
        }
        self.children().iter().try_for_each(BWTree::validate)
    }

    fn write_contour(&self, out: &mut Vec<Token>) {
        match self {
            BWTree::Leaf => out.push(Token::Bar),
            BWTree::Black { children } => children.iter().for_each(|c| c.write_contour(out)),
            BWTree::White { colour, children } => {
                out.push(Token::Colour(*colour));
                for c in children {
                    c.write_contour(out);
                    out.push(Token::Colour(*colour));
                }
            }
        }
    }

    fn relabel(&mut self, f: &mut impl FnMut(Colour) -> Colour) {
        match self {
            BWTree::Leaf => {}
            BWTree::White { colour, children } => {
                *colour = f(*colour);
                children.iter_mut().for_each(|c| c.relabel(f));
            }
            BWTree::Black { children } => children.iter_mut().for_each(|c| c.relabel(f)),
        }
    }

    /// Replaces the `leaf`-th leaf (1-based, left to right) by `other`, whose
    /// colours are shifted past the largest colour of `self`. `None` if there
    /// is no such leaf.
    pub fn graft(&self, leaf: usize, other: &BWTree) -> Option<BWTree> {
        let shift = self.max_colour();
        let mut other = other.clone();
        other.relabel(&mut |c| c + shift);
        let mut seen = 0;
        let mut out = self.clone();
        out.replace_leaf(leaf, &mut seen, &other).then_some(out)
    }

    fn max_colour(&self) -> Colour {
        let own = match self {
            BWTree::White { colour, .. } => *colour,
            _ => 0,
        };
        self.children().iter().map(BWTree::max_colour).fold(own, Colour::max)
    }

    fn replace_leaf(&mut self, leaf: usize, seen: &mut usize, with: &BWTree) -> bool {
        match self {
            BWTree::Leaf => {
                *seen += 1;
                if *seen == leaf {
                    *self = with.clone();
                    return true;
                }
                false
            }
            BWTree::White { children, .. } | BWTree::Black { children } => {
                children.iter_mut().any(|c| c.replace_leaf(leaf, seen, with))
            }
        }
    }
}

/// Contour string of `t`.
pub fn tree_to_op(t: &BWTree) -> Result<PathOp, TreeError> {
    t.validate()?;
    let mut tokens = Vec::with_capacity(t.token_count());
    t.write_contour(&mut tokens);
    let op = PathOp::new(tokens).map_err(|_| TreeError::BadColours)?;
    if op.colours() as usize != t.white_count() {
        return Err(TreeError::BadColours);
    }
    Ok(op)
}

/// Inverse of [`tree_to_op`] on operations of complexity at most 2.
pub fn op_to_tree(op: &PathOp) -> Result<BWTree, TreeError> {
    let c = op.complexity();
    if c > 2 {
        return Err(TreeError::ComplexityTooHigh(c));
    }
    let t = parse_slot(op.tokens())?;
    if tree_to_op(&t).as_ref() != Ok(op) {
        return Err(TreeError::NotATree);
    }
    Ok(t)
}

fn parse_slot(ts: &[Token]) -> Result<BWTree, TreeError> {
    if ts == [Token::Bar] {
        return Ok(BWTree::Leaf);
    }
    if let (Some(&Token::Colour(a)), Some(&Token::Colour(b))) = (ts.first(), ts.last()) {
        if ts.len() == 1 {
            return Ok(BWTree::White { colour: a, children: Vec::new() });
        }
        if a == b {
            let children =
                ts[1..ts.len() - 1].split(|t| *t == Token::Colour(a)).map(parse_slot).collect::<Result<Vec<_>, _>>()?;
            return Ok(BWTree::White { colour: a, children });
        }
    }
    let mut children = Vec::new();
    let mut p = 0;
    while p < ts.len() {
        match ts[p] {
            Token::Bar => {
                children.push(BWTree::Leaf);
                p += 1;
            }
            Token::Colour(c) => {
                let q = ts.iter().rposition(|t| *t == Token::Colour(c)).expect("present");
                children.push(parse_slot(&ts[p..=q])?);
                p = q + 1;
            }
        }
    }
    let t = BWTree::Black { children };
    t.validate()?;
    Ok(t)
}

type ShapeKey = (usize, bool);

struct ShapeCache(BTreeMap<ShapeKey, Vec<BWTree>>);

impl ShapeCache {
    /// Unlabelled shapes (white colours 0) with exactly `size` tokens.
    fn shapes(&mut self, size: usize, allow_black: bool) -> Vec<BWTree> {
        if let Some(v) = self.0.get(&(size, allow_black)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            out.push(BWTree::Leaf);
        }
        for arity in 0..size {
            for children in self.forests(size - arity - 1, arity, true) {
                out.push(BWTree::White { colour: 0, children });
            }
        }
        if allow_black {
            if size == 0 {
                out.push(BWTree::Black { children: Vec::new() });
            }
            for count in 2..=size {
                for children in self.forests(size, count, false) {
                    out.push(BWTree::Black { children });
                }
            }
        }
        self.0.insert((size, allow_black), out.clone());
        out
    }

    /// Sequences of `count` shapes with `total` tokens in all.
    fn forests(&mut self, total: usize, count: usize, allow_black: bool) -> Vec<Vec<BWTree>> {
        if count == 0 {
            return if total == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for first in 0..=total {
            let heads = self.shapes(first, allow_black);
            if heads.is_empty() {
                continue;
            }
            for rest in self.forests(total - first, count - 1, allow_black) {
                for h in &heads {
                    let mut v = Vec::with_capacity(count);
                    v.push(h.clone());
                    v.extend(rest.iter().cloned());
                    out.push(v);
                }
            }
        }
        out
    }
}

/// Every tree with at most `max_tokens` contour tokens. White vertices are
/// numbered in contour order, or with every numbering if `all_labellings`.
/// Ordered by token count, then structurally.
pub fn enumerate_trees(max_tokens: usize, all_labellings: bool) -> Vec<BWTree> {
    let mut cache = ShapeCache(BTreeMap::new());
    let mut out = Vec::new();
    for size in 0..=max_tokens {
        let mut batch = Vec::new();
        for mut t in cache.shapes(size, true) {
            let mut next = 0;
            t.relabel(&mut |_| {
                next += 1;
                next
            });
            if all_labellings {
                for p in permutations(t.white_count()) {
                    let mut u = t.clone();
                    u.relabel(&mut |c| p[c as usize - 1]);
                    batch.push(u);
                }
            } else {
                batch.push(t);
            }
        }
        batch.sort();
        out.extend(batch);
    }
    out
}
