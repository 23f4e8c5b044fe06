//! The string model of lattice path operations.
//!
//! An operation in `L(n_1, …, n_k; n)` is a string over the colours `1..=k`
//! and the bar `|`, where colour `i` occurs `n_i + 1` times and there are
//! exactly `n` bars. Composition substitutes bar-delimited segments for
//! colour occurrences; the complexity index counts corners of the pairwise
//! projected lattice paths.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

/// Colour index. Colours are numbered from 1.
pub type Colour = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    Bar,
    Colour(Colour),
}

impl Token {
    pub fn is_bar(self) -> bool {
        matches!(self, Token::Bar)
    }

    pub fn colour(self) -> Option<Colour> {
        match self {
            Token::Bar => None,
            Token::Colour(c) => Some(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("colour {missing} is missing (colours must be exactly 1..={colours})")]
    ColourGap { missing: Colour, colours: Colour },
    #[error("colour indices start at 1")]
    ZeroColour,
    #[error("invalid character {ch:?} at byte {position}")]
    InvalidCharacter { ch: char, position: usize },
    #[error("empty colour index at byte {position}")]
    EmptyColourIndex { position: usize },
    #[error("colour index too large at byte {position}")]
    ColourOverflow { position: usize },
    #[error("compact form needs at most 9 colours, operation has {colours}")]
    CompactTooManyColours { colours: Colour },
    #[error("expected {expected} inner operations, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("slot {slot} has arity {expected} but the inner operation has {found} bars")]
    ArityMismatch { slot: Colour, expected: usize, found: usize },
    #[error("not a permutation of 1..={size}")]
    BadPermutation { size: usize },
    #[error("colour pair ({a}, {b}) is not a valid pair a < b <= {colours}")]
    BadPair { a: Colour, b: Colour, colours: Colour },
    #[error("complexity level must be at least 1")]
    LevelTooSmall,
}

/// Textual style for [`PathOp::render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// One character per token, e.g. `213|13|23`. Needs `k <= 9`.
    Compact,
    /// Space separated tokens, e.g. `2 1 3 | 1 3 | 2 3`.
    General,
}

/// A bijection of `{1, …, k}`, stored by images: `images[c - 1] = σ(c)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<Colour>);

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Permutation((1..=size as Colour).collect())
    }

    pub fn from_images(images: Vec<Colour>) -> Result<Self, PathError> {
        let size = images.len();
        let mut seen = vec![false; size];
        for &c in &images {
            let idx = (c as usize).wrapping_sub(1);
            if c == 0 || idx >= size || seen[idx] {
                return Err(PathError::BadPermutation { size });
            }
            seen[idx] = true;
        }
        Ok(Permutation(images))
    }

    /// The transposition of `a` and `b` in `{1..=size}`.
    pub fn swap(size: usize, a: Colour, b: Colour) -> Self {
        let mut p = Self::identity(size);
        p.0.swap(a as usize - 1, b as usize - 1);
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[Colour] {
        &self.0
    }

    pub fn apply(&self, c: Colour) -> Colour {
        self.0[c as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &c)| c as usize == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &c) in self.0.iter().enumerate() {
            inv[c as usize - 1] = i as Colour + 1;
        }
        Permutation(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&c| self.apply(c)).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Source and target arities `(n_1, …, n_k; n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArityProfile {
    pub sources: Vec<usize>,
    pub target: usize,
}

/// A lattice path operation as a bar-string.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathOp {
    tokens: Vec<Token>,
    colours: Colour,
}

impl PathOp {
    /// Validates that the colours are exactly `1..=k`.
    pub fn new(tokens: Vec<Token>) -> Result<Self, PathError> {
        let mut max = 0;
        for t in &tokens {
            if let Token::Colour(c) = *t {
                if c == 0 {
                    return Err(PathError::ZeroColour);
                }
                max = max.max(c);
            }
        }
        let mut seen = vec![false; max as usize];
        for t in &tokens {
            if let Token::Colour(c) = *t {
                seen[c as usize - 1] = true;
            }
        }
        if let Some(gap) = seen.iter().position(|s| !s) {
            return Err(PathError::ColourGap { missing: gap as Colour + 1, colours: max });
        }
        Ok(PathOp { tokens, colours: max })
    }

    /// Caller guarantees the colour set is exactly `1..=colours`.
    pub(crate) fn from_parts(tokens: Vec<Token>, colours: Colour) -> Self {
        debug_assert!(PathOp::new(tokens.clone()).map(|o| o.colours) == Ok(colours));
        PathOp { tokens, colours }
    }

    /// The empty string: no sources, target arity 0.
    pub fn empty() -> Self {
        PathOp { tokens: Vec::new(), colours: 0 }
    }

    /// `1|1|…|1` with `n` bars.
    pub fn identity(n: usize) -> Self {
        let mut tokens = Vec::with_capacity(2 * n + 1);
        tokens.push(Token::Colour(1));
        for _ in 0..n {
            tokens.push(Token::Bar);
            tokens.push(Token::Colour(1));
        }
        PathOp { tokens, colours: 1 }
    }

    /// The nullary unit of complexity `m`: `m - 1` bars and no colours.
    pub fn eta(m: usize) -> Result<Self, PathError> {
        if m < 1 {
            return Err(PathError::LevelTooSmall);
        }
        Ok(PathOp { tokens: vec![Token::Bar; m - 1], colours: 0 })
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn into_tokens(self) -> Vec<Token> {
        self.tokens
    }

    /// Number of sources `k`.
    pub fn colours(&self) -> Colour {
        self.colours
    }

    /// Target arity: the number of bars.
    pub fn bars(&self) -> usize {
        self.tokens.iter().filter(|t| t.is_bar()).count()
    }

    /// Token count, bars included.
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn occurrences(&self, c: Colour) -> usize {
        self.tokens.iter().filter(|&&t| t == Token::Colour(c)).count()
    }

    /// Source arities `n_i = occurrences(i) - 1`.
    pub fn arities(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.colours as usize];
        for t in &self.tokens {
            if let Token::Colour(c) = *t {
                counts[c as usize - 1] += 1;
            }
        }
        counts.into_iter().map(|n| n - 1).collect()
    }

    pub fn profile(&self) -> ArityProfile {
        ArityProfile { sources: self.arities(), target: self.bars() }
    }

    /// Whether `a` occurs before `b` (by first occurrence).
    pub fn occurs_before(&self, a: Colour, b: Colour) -> bool {
        for t in &self.tokens {
            match *t {
                Token::Colour(c) if c == a => return true,
                Token::Colour(c) if c == b => return false,
                _ => {}
            }
        }
        false
    }

    pub fn render(&self, style: Style) -> Result<String, PathError> {
        match style {
            Style::Compact => self.to_compact(),
            Style::General => Ok(self.to_general()),
        }
    }

    pub fn to_compact(&self) -> Result<String, PathError> {
        if self.colours > 9 {
            return Err(PathError::CompactTooManyColours { colours: self.colours });
        }
        Ok(self
            .tokens
            .iter()
            .map(|t| match *t {
                Token::Bar => '|',
                Token::Colour(c) => char::from_digit(c, 10).unwrap_or('?'),
            })
            .collect())
    }

    /// Space separated form; the canonical persisted key.
    pub fn to_general(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            match *t {
                Token::Bar => out.push('|'),
                Token::Colour(c) => {
                    let _ = write!(out, "{c}");
                }
            }
        }
        out
    }

    /// Accepts the compact form (no spaces) or the general form.
    pub fn parse(text: &str) -> Result<Self, PathError> {
        let start = text.len() - text.trim_start().len();
        let body = text.trim();
        let tokens = if body.contains(' ') { parse_general(body, start)? } else { parse_compact(body, start)? };
        PathOp::new(tokens)
    }

    /// Replaces colour `c` by `σ(c)`.
    pub fn permute(&self, sigma: &Permutation) -> Result<PathOp, PathError> {
        if sigma.len() != self.colours as usize {
            return Err(PathError::BadPermutation { size: self.colours as usize });
        }
        Ok(PathOp {
            tokens: self
                .tokens
                .iter()
                .map(|t| match *t {
                    Token::Bar => Token::Bar,
                    Token::Colour(c) => Token::Colour(sigma.apply(c)),
                })
                .collect(),
            colours: self.colours,
        })
    }

    /// Relabels colours by order of first occurrence. Returns the orbit
    /// representative and the permutation `σ` with `permute(self, σ) = rep`.
    pub fn sigma_canonical(&self) -> (PathOp, Permutation) {
        let mut images = vec![0; self.colours as usize];
        let mut next = 1;
        for t in &self.tokens {
            if let Token::Colour(c) = *t {
                let slot = &mut images[c as usize - 1];
                if *slot == 0 {
                    *slot = next;
                    next += 1;
                }
            }
        }
        let perm = Permutation(images);
        let rep = self.permute(&perm).expect("sizes agree");
        (rep, perm)
    }

    pub fn is_sigma_canonical(&self) -> bool {
        let mut next = 1;
        for t in &self.tokens {
            if let Token::Colour(c) = *t {
                if c == next {
                    next += 1;
                } else if c > next {
                    return false;
                }
            }
        }
        true
    }

    /// Operadic composition: the `j`-th occurrence of colour `i` is replaced
    /// by the `j`-th bar-delimited segment of `ys[i - 1]`, whose colours are
    /// shifted past those of `ys[..i - 1]`.
    pub fn compose(&self, ys: &[PathOp]) -> Result<PathOp, PathError> {
        let k = self.colours as usize;
        if ys.len() != k {
            return Err(PathError::LengthMismatch { expected: k, found: ys.len() });
        }
        let arities = self.arities();
        let mut segments: Vec<Vec<&[Token]>> = Vec::with_capacity(k);
        let mut offsets = Vec::with_capacity(k);
        let mut total = 0;
        for (slot, y) in ys.iter().enumerate() {
            if y.bars() != arities[slot] {
                return Err(PathError::ArityMismatch {
                    slot: slot as Colour + 1,
                    expected: arities[slot],
                    found: y.bars(),
                });
            }
            segments.push(y.tokens.split(|t| t.is_bar()).collect());
            offsets.push(total);
            total += y.colours;
        }
        let mut seen = vec![0usize; k];
        let mut tokens = Vec::new();
        for t in &self.tokens {
            match *t {
                Token::Bar => tokens.push(Token::Bar),
                Token::Colour(c) => {
                    let slot = c as usize - 1;
                    let seg = segments[slot][seen[slot]];
                    seen[slot] += 1;
                    let shift = offsets[slot];
                    tokens.extend(seg.iter().map(|s| match *s {
                        Token::Colour(d) => Token::Colour(d + shift),
                        Token::Bar => Token::Bar,
                    }));
                }
            }
        }
        Ok(PathOp { tokens, colours: total })
    }

    /// Subsequence of the colours `a` and `b`, everything else dropped.
    pub fn projection(&self, a: Colour, b: Colour) -> Result<Vec<Colour>, PathError> {
        self.check_pair(a, b)?;
        Ok(self.tokens.iter().filter_map(|t| t.colour()).filter(|&c| c == a || c == b).collect())
    }

    /// Corners of the lattice path `φ_ab`: alternations in the projection.
    pub fn corner_count(&self, a: Colour, b: Colour) -> Result<usize, PathError> {
        self.check_pair(a, b)?;
        Ok(self.corners_unchecked(a, b))
    }

    fn corners_unchecked(&self, a: Colour, b: Colour) -> usize {
        let mut last = None;
        let mut corners = 0;
        for t in &self.tokens {
            if let Token::Colour(c) = *t {
                if c == a || c == b {
                    if last.is_some_and(|l| l != c) {
                        corners += 1;
                    }
                    last = Some(c);
                }
            }
        }
        corners
    }

    fn check_pair(&self, a: Colour, b: Colour) -> Result<(), PathError> {
        if a == 0 || a >= b || b > self.colours {
            return Err(PathError::BadPair { a, b, colours: self.colours });
        }
        Ok(())
    }

    /// All pairwise corner counts `c_ab` for `a < b`, row-major.
    pub fn corner_matrix(&self) -> Vec<Vec<usize>> {
        let k = self.colours as usize;
        let mut last: Vec<Option<Colour>> = vec![None; k * k];
        let mut corners = vec![vec![0usize; k]; k];
        for t in &self.tokens {
            if let Token::Colour(c) = *t {
                let ci = c as usize - 1;
                for other in 0..k {
                    if other == ci {
                        continue;
                    }
                    let (lo, hi) = if ci < other { (ci, other) } else { (other, ci) };
                    let cell = &mut last[lo * k + hi];
                    if cell.is_some_and(|l| l != c) {
                        corners[lo][hi] += 1;
                    }
                    *cell = Some(c);
                }
            }
        }
        corners
    }

    /// Maximum corner count over colour pairs; 0 when `k <= 1`.
    pub fn complexity(&self) -> usize {
        let k = self.colours as usize;
        if k < 2 {
            return 0;
        }
        let corners = self.corner_matrix();
        (0..k).flat_map(|a| ((a + 1)..k).map(move |b| (a, b))).map(|(a, b)| corners[a][b]).max().unwrap_or(0)
    }

    /// Membership in the filtration stage `L_m`.
    pub fn in_filtration(&self, m: usize) -> bool {
        self.complexity() <= m
    }
}

impl fmt::Debug for PathOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PathOp({:?})", self.to_general())
    }
}

/// Compact form when `k <= 9`, general form otherwise.
impl fmt::Display for PathOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_compact() {
            Ok(s) => f.write_str(&s),
            Err(_) => f.write_str(&self.to_general()),
        }
    }
}

impl FromStr for PathOp {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PathOp::parse(s)
    }
}

fn parse_compact(body: &str, base: usize) -> Result<Vec<Token>, PathError> {
    body.char_indices()
        .map(|(i, ch)| match ch {
            '|' => Ok(Token::Bar),
            '0' => Err(PathError::ZeroColour),
            '1'..='9' => Ok(Token::Colour(ch as Colour - '0' as Colour)),
            _ => Err(PathError::InvalidCharacter { ch, position: base + i }),
        })
        .collect()
}

fn parse_general(body: &str, base: usize) -> Result<Vec<Token>, PathError> {
    let mut tokens = Vec::new();
    let mut position = base;
    for piece in body.split(' ') {
        if piece.is_empty() {
            return Err(PathError::EmptyColourIndex { position });
        }
        if piece == "|" {
            tokens.push(Token::Bar);
        } else {
            if let Some((i, ch)) = piece.char_indices().find(|(_, ch)| !ch.is_ascii_digit()) {
                return Err(PathError::InvalidCharacter { ch, position: position + i });
            }
            let c: Colour = piece.parse().map_err(|_| PathError::ColourOverflow { position })?;
            if c == 0 {
                return Err(PathError::ZeroColour);
            }
            tokens.push(Token::Colour(c));
        }
        position += piece.len() + 1;
    }
    Ok(tokens)
}

/// Relabels an arbitrary token sequence by first occurrence of its colours,
/// so that the result uses exactly `1..=k`.
pub fn canonicalize_tokens(tokens: &[Token]) -> PathOp {
    let mut map: Vec<(Colour, Colour)> = Vec::new();
    let mut out = Vec::with_capacity(tokens.len());
    for t in tokens {
        match *t {
            Token::Bar => out.push(Token::Bar),
            Token::Colour(c) => {
                let image = match map.iter().find(|(from, _)| *from == c) {
                    Some(&(_, to)) => to,
                    None => {
                        let to = map.len() as Colour + 1;
                        map.push((c, to));
                        to
                    }
                };
                out.push(Token::Colour(image));
            }
        }
    }
    PathOp { colours: map.len() as Colour, tokens: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn op(s: &str) -> PathOp {
        PathOp::parse(s).unwrap()
    }

    #[test]
    fn parse_compact_example() {
        let x = op("1|12|21");
        assert_eq!(
            x.tokens(),
            &[
                Token::Colour(1),
                Token::Bar,
                Token::Colour(1),
                Token::Colour(2),
                Token::Bar,
                Token::Colour(2),
                Token::Colour(1)
            ]
        );
        assert_eq!(x.colours(), 2);
        assert_eq!(x.arities(), vec![2, 1]);
        assert_eq!(x.bars(), 2);
    }

    #[test]
    fn parse_empty() {
        let e = op("");
        assert_eq!(e.colours(), 0);
        assert_eq!(e.bars(), 0);
        assert_eq!(e, PathOp::empty());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(PathOp::parse("10 | 10"), Err(PathError::ColourGap { missing: 1, colours: 10 }));
        assert!(matches!(PathOp::parse("1|a"), Err(PathError::InvalidCharacter { ch: 'a', position: 2 })));
        assert!(matches!(PathOp::parse("1  2"), Err(PathError::EmptyColourIndex { .. })));
        assert_eq!(PathOp::parse("13"), Err(PathError::ColourGap { missing: 2, colours: 3 }));
        assert_eq!(PathOp::parse("1|0"), Err(PathError::ZeroColour));
        assert_eq!(PathOp::parse("0 | 1"), Err(PathError::ZeroColour));
    }

    #[test]
    fn general_form_round_trip() {
        let x = op("2 1 3 | 1 3 | 2 3");
        assert_eq!(x, op("213|13|23"));
        assert_eq!(x.to_general(), "2 1 3 | 1 3 | 2 3");
        assert_eq!(op("||").to_general(), "| |");
    }

    #[test]
    fn render_compact_and_large() {
        assert_eq!(op("1|1").to_compact().unwrap(), "1|1");
        let big: Vec<Token> = (1..=12).map(Token::Colour).collect();
        let big = PathOp::new(big).unwrap();
        assert_eq!(big.to_compact(), Err(PathError::CompactTooManyColours { colours: 12 }));
        assert_eq!(big.to_general(), "1 2 3 4 5 6 7 8 9 10 11 12");
        assert_eq!(op(&big.to_general()), big);
        assert_eq!(big.to_string(), "1 2 3 4 5 6 7 8 9 10 11 12");
    }

    #[test]
    fn identity_and_eta() {
        assert_eq!(PathOp::identity(0).to_string(), "1");
        assert_eq!(PathOp::identity(2).to_string(), "1|1|1");
        assert_eq!(PathOp::identity(3).to_string(), "1|1|1|1");
        assert_eq!(PathOp::eta(1).unwrap().to_string(), "");
        assert_eq!(PathOp::eta(2).unwrap().to_string(), "|");
        assert_eq!(PathOp::eta(3).unwrap().to_string(), "||");
        assert_eq!(PathOp::eta(0), Err(PathError::LevelTooSmall));
    }

    #[test]
    fn composition_example() {
        let x = op("1|12|21");
        let got = x.compose(&[op("213|13|23"), op("122|211")]).unwrap();
        assert_eq!(got.to_string(), "213|13455|54423");
    }

    #[test]
    fn composition_units() {
        let y = op("213|13|23");
        assert_eq!(PathOp::identity(2).compose(&[y.clone()]).unwrap(), y);
        let ids: Vec<_> = y.arities().into_iter().map(PathOp::identity).collect();
        assert_eq!(y.compose(&ids).unwrap(), y);
    }

    #[test]
    fn composition_errors() {
        let x = op("1|12|21");
        assert_eq!(x.compose(&[op("1|1")]), Err(PathError::LengthMismatch { expected: 2, found: 1 }));
        assert_eq!(
            x.compose(&[op("1|1"), op("1|1")]),
            Err(PathError::ArityMismatch { slot: 1, expected: 2, found: 1 })
        );
    }

    #[test]
    fn nullary_plugging_deletes() {
        // colour 2 of "1|212|1" has arity 1; plugging "|" erases it.
        let x = op("1|212|1");
        let got = x.compose(&[PathOp::identity(2), PathOp::eta(2).unwrap()]).unwrap();
        assert_eq!(got.to_string(), "1|1|1");
    }

    #[test]
    fn permute_examples() {
        let swap = Permutation::swap(2, 1, 2);
        assert_eq!(op("12").permute(&swap).unwrap().to_string(), "21");
        assert_eq!(op("1|12|21").permute(&swap).unwrap().to_string(), "2|21|12");
        let x = op("213|13|23");
        assert_eq!(x.permute(&Permutation::identity(3)).unwrap(), x);
        assert!(x.permute(&swap).is_err());
        assert!(Permutation::from_images(vec![1, 1]).is_err());
        assert!(Permutation::from_images(vec![2, 3, 1]).is_ok());
    }

    #[test]
    fn sigma_canonical_examples() {
        let (rep, perm) = op("21|12").sigma_canonical();
        assert_eq!(rep.to_string(), "12|21");
        assert_eq!(perm, Permutation::swap(2, 1, 2));
        let (rep, perm) = op("12|21").sigma_canonical();
        assert_eq!(rep.to_string(), "12|21");
        assert!(perm.is_identity());
        let raw: Vec<Token> = "3|34|4|4|43"
            .chars()
            .map(|c| if c == '|' { Token::Bar } else { Token::Colour(c.to_digit(10).unwrap()) })
            .collect();
        assert_eq!(canonicalize_tokens(&raw).to_string(), "1|12|2|2|21");
    }

    #[test]
    fn projection_and_corners() {
        assert_eq!(op("1|12|21").projection(1, 2).unwrap(), vec![1, 1, 2, 2, 1]);
        assert_eq!(op("1|1|1|323").projection(2, 3).unwrap(), vec![3, 2, 3]);
        assert_eq!(op("1122").projection(1, 2).unwrap(), vec![1, 1, 2, 2]);
        assert_eq!(op("1|12|21").corner_count(1, 2).unwrap(), 2);
        assert_eq!(op("1|1|1|323").corner_count(2, 3).unwrap(), 2);
        assert_eq!(op("12321434").corner_count(3, 4).unwrap(), 3);
        assert!(op("12").corner_count(2, 1).is_err());
        assert!(op("12").corner_count(1, 3).is_err());
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(PathOp::identity(5).complexity(), 0);
        assert_eq!(op("1|1|1|323").complexity(), 2);
        assert_eq!(op("213|13|23").complexity(), 3);
        assert!(op("1|1|1|323").in_filtration(2));
        assert!(!op("213|13|23").in_filtration(2));
        for m in 1..5 {
            assert!(PathOp::eta(m).unwrap().in_filtration(m));
        }
    }

    #[test]
    fn permutation_algebra() {
        let p = Permutation::from_images(vec![2, 3, 1]).unwrap();
        assert!(p.after(&p.inverse()).is_identity());
        assert_eq!(p.to_string(), "2,3,1");
    }
}
