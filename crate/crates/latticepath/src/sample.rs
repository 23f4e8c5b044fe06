//! Seeded random instances. Every sampler draws from a caller-owned
//! `ChaCha8Rng`, so a seed fixes the whole corpus.

use latticepath_core::join::{even_cuts, odd_cuts, AssocInstance, InterchangeInstance};
use latticepath_core::path::canonicalize_tokens;
use latticepath_core::{CutTuple, GenTable, PathOp, Permutation, Token};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn permutation(rng: &mut ChaCha8Rng, k: usize) -> Permutation {
    let mut images: Vec<u32> = (1..=k as u32).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("shuffled identity")
}

/// An operation with exactly `bars` bars, at most `max_colours` colours and
/// bar-delimited segments of at most `max_segment` tokens. Colours come out
/// in a random order.
pub fn op_with_bars(rng: &mut ChaCha8Rng, bars: usize, max_colours: u32, max_segment: usize) -> PathOp {
    let mut tokens = Vec::new();
    for n in 0..=bars {
        if n > 0 {
            tokens.push(Token::Bar);
        }
        for _ in 0..rng.gen_range(0..=max_segment) {
            tokens.push(Token::Colour(rng.gen_range(1..=max_colours)));
        }
    }
    let op = canonicalize_tokens(&tokens);
    let sigma = permutation(rng, op.colours() as usize);
    op.permute(&sigma).expect("sizes agree")
}

/// `x` and inputs `ys` for every colour of `x`, with at most `max_tokens`
/// tokens between them.
pub fn composable(rng: &mut ChaCha8Rng, max_tokens: usize) -> (PathOp, Vec<PathOp>) {
    loop {
        let bars = rng.gen_range(0..=3);
        let x = op_with_bars(rng, bars, 3, 2);
        let ys: Vec<PathOp> = x.arities().into_iter().map(|a| op_with_bars(rng, a, 2, 2)).collect();
        if x.len() + ys.iter().map(PathOp::len).sum::<usize>() <= max_tokens {
            return (x, ys);
        }
    }
}

/// Inputs for every colour of `x`.
pub fn inputs_for(rng: &mut ChaCha8Rng, x: &PathOp) -> Vec<PathOp> {
    x.arities().into_iter().map(|a| op_with_bars(rng, a, 2, 1)).collect()
}

/// `x`, `ys` and inputs `zs` for `x ∘ ys`, at most `max_tokens` tokens in
/// all.
pub fn composable_triple(rng: &mut ChaCha8Rng, max_tokens: usize) -> (PathOp, Vec<PathOp>, Vec<PathOp>) {
    loop {
        let (x, ys) = composable(rng, max_tokens);
        let xy = x.compose(&ys).expect("arities match");
        let zs = inputs_for(rng, &xy);
        let total = x.len() + ys.iter().chain(&zs).map(PathOp::len).sum::<usize>();
        if total <= max_tokens {
            return (x, ys, zs);
        }
    }
}

/// `size` distinct bars out of `1..=bars`, increasing.
pub fn cuts(rng: &mut ChaCha8Rng, bars: usize, size: usize) -> CutTuple {
    disjoint_cuts(rng, bars, size, 0).0
}

/// Two disjoint increasing tuples of the given sizes.
pub fn disjoint_cuts(rng: &mut ChaCha8Rng, bars: usize, a: usize, b: usize) -> (CutTuple, CutTuple) {
    let picked = rand::seq::index::sample(rng, bars, a + b).into_vec();
    let mut first: Vec<usize> = picked[..a].iter().map(|p| p + 1).collect();
    let mut second: Vec<usize> = picked[a..].iter().map(|p| p + 1).collect();
    first.sort_unstable();
    second.sort_unstable();
    (CutTuple::new(first).expect("increasing"), CutTuple::new(second).expect("increasing"))
}

/// A uniformly chosen table member with at least `min_bars` bars and some
/// colour; `None` if there is none.
pub fn member(rng: &mut ChaCha8Rng, pool: &[PathOp], min_bars: usize) -> Option<PathOp> {
    let fits: Vec<&PathOp> = pool.iter().filter(|o| o.bars() >= min_bars && o.colours() > 0).collect();
    let rep = fits.choose(rng)?;
    let sigma = permutation(rng, rep.colours() as usize);
    Some(rep.permute(&sigma).expect("sizes agree"))
}

pub fn representatives(table: &GenTable) -> Vec<PathOp> {
    table.representatives().cloned().collect()
}

pub fn assoc_instances(rng: &mut ChaCha8Rng, m: usize, pool: &[PathOp], n: usize) -> Vec<AssocInstance> {
    let (ev, od) = (even_cuts(m), odd_cuts(m));
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (Some(x), Some(y), Some(z)) = (member(rng, pool, ev), member(rng, pool, ev + od), member(rng, pool, od))
        else {
            break;
        };
        let i = cuts(rng, x.bars(), ev);
        let (j, j_prime) = disjoint_cuts(rng, y.bars(), ev, od);
        let k = cuts(rng, z.bars(), od);
        out.push(AssocInstance { x, i, y, j, j_prime, z, k });
    }
    out
}

/// Interchange instances; empty for odd `m`.
pub fn interchange_instances(rng: &mut ChaCha8Rng, m: usize, pool: &[PathOp], n: usize) -> Vec<InterchangeInstance> {
    if m % 2 != 0 {
        return Vec::new();
    }
    let (ev, od) = (even_cuts(m), odd_cuts(m));
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (Some(x), Some(y), Some(z)) = (member(rng, pool, 2 * ev), member(rng, pool, od), member(rng, pool, od))
        else {
            break;
        };
        let (i, i_prime) = disjoint_cuts(rng, x.bars(), ev, ev);
        let j = cuts(rng, y.bars(), od);
        let k = cuts(rng, z.bars(), od);
        out.push(InterchangeInstance { x, i, i_prime, y, j, z, k });
    }
    out
}

/// Tuples of one to `max_len` table members.
pub fn member_tuples(rng: &mut ChaCha8Rng, pool: &[PathOp], n: usize, max_len: usize) -> Vec<Vec<PathOp>> {
    (0..n)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            (0..len).filter_map(|_| member(rng, pool, 0)).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_corpus() {
        let a: Vec<_> = (0..20).map(|_| composable(&mut rng(7), 12)).collect();
        let b: Vec<_> = (0..20).map(|_| composable(&mut rng(7), 12)).collect();
        assert_eq!(a, b);
        let mut r = rng(7);
        let c: Vec<_> = (0..20).map(|_| composable(&mut r, 12)).collect();
        assert!(c.iter().all(|(x, ys)| x.len() + ys.iter().map(PathOp::len).sum::<usize>() <= 12));
    }

    #[test]
    fn cut_tuples_are_disjoint() {
        let mut r = rng(1);
        for _ in 0..50 {
            let (a, b) = disjoint_cuts(&mut r, 6, 2, 2);
            assert!(a.is_disjoint(&b));
            assert!(a.positions().iter().chain(b.positions()).all(|&p| (1..=6).contains(&p)));
        }
    }
}
