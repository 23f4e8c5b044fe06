//! Exhaustive enumerators used by sweeps and generators.

use alloc::vec;
use alloc::vec::Vec;

use crate::path::{Colour, PathOp, Token};

/// All σ-canonical operations (colours numbered by first occurrence) with
/// exactly `len` tokens, in lexicographic token order.
pub fn canonical_ops(len: usize) -> Vec<PathOp> {
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(len);
    fill_canonical(len, 0, &mut buf, &mut out);
    out
}

/// All σ-canonical operations with at most `max_len` tokens, shortest first.
pub fn canonical_ops_up_to(max_len: usize) -> Vec<PathOp> {
    (0..=max_len).flat_map(canonical_ops).collect()
}

fn fill_canonical(len: usize, used: Colour, buf: &mut Vec<Token>, out: &mut Vec<PathOp>) {
    if buf.len() == len {
        out.push(PathOp::from_parts(buf.clone(), used));
        return;
    }
    buf.push(Token::Bar);
    fill_canonical(len, used, buf, out);
    buf.pop();
    for c in 1..=used + 1 {
        buf.push(Token::Colour(c));
        fill_canonical(len, used.max(c), buf, out);
        buf.pop();
    }
}

/// Strictly increasing `size`-subsets of `1..=n`, lexicographic.
pub fn increasing_tuples(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            if n - v + 1 < size - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(1, n, size, &mut cur, &mut out);
    out
}

/// Weakly increasing `size`-tuples over `0..slots` (multisets of gaps).
pub fn multisets(slots: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if slots == 0 {
        if size == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0; size];
    loop {
        out.push(cur.clone());
        // advance to the next weakly increasing tuple
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] + 1 < slots {
                let v = cur[i] + 1;
                for c in cur.iter_mut().skip(i) {
                    *c = v;
                }
                break;
            }
        }
    }
}

/// All permutations of `1..=k` as image vectors, lexicographic.
pub fn permutations(k: usize) -> Vec<Vec<Colour>> {
    let mut out = Vec::new();
    let mut cur: Vec<Colour> = (1..=k as Colour).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
