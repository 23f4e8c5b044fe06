//! Simplicial complexes and reduced integral homology.
//!
//! Boundary maps of the augmented chain complex are reduced to Smith normal
//! form: unit pivots are eliminated on a sparse copy first, and whatever is
//! left goes through a dense reduction over `i128`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("complex has dimension {dim}, above the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("integer overflow during Smith normal form")]
    Overflow,
}

/// A finite simplicial complex, simplices stored as sorted vertex lists and
/// graded by dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Complex {
    graded: Vec<Vec<Vec<usize>>>,
}

impl Complex {
    /// Closure of `faces` under taking subsets (the empty simplex excluded).
    pub fn from_faces(faces: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut stack: Vec<Vec<usize>> = Vec::new();
        for mut f in faces {
            f.sort_unstable();
            f.dedup();
            stack.push(f);
        }
        while let Some(s) = stack.pop() {
            if s.is_empty() || all.contains(&s) {
                continue;
            }
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    stack.push(f);
                }
            }
            all.insert(s);
        }
        Complex::from_closed(all)
    }

    /// Builds from a set that is already closed under faces.
    pub fn from_closed(simplices: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut graded: Vec<Vec<Vec<usize>>> = Vec::new();
        for s in simplices {
            let d = s.len() - 1;
            if graded.len() <= d {
                graded.resize(d + 1, Vec::new());
            }
            graded[d].push(s);
        }
        for g in &mut graded {
            g.sort();
        }
        Complex { graded }
    }

    /// `-1` encodes the empty complex.
    pub fn dimension(&self) -> isize {
        self.graded.len() as isize - 1
    }

    pub fn simplices(&self, dim: usize) -> &[Vec<usize>] {
        self.graded.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn simplex_count(&self) -> usize {
        self.graded.iter().map(Vec::len).sum()
    }

    pub fn vertex_count(&self) -> usize {
        self.simplices(0).len()
    }

    pub fn euler_characteristic(&self) -> isize {
        self.graded
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as isize } else { -(s.len() as isize) })
            .sum()
    }

    /// Number of connected components of the 1-skeleton.
    pub fn components(&self) -> usize {
        let verts = self.simplices(0);
        let index: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, v)| (v[0], i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in self.simplices(1) {
            let (a, b) = (find(&mut parent, index[&e[0]]), find(&mut parent, index[&e[1]]));
            parent[a] = b;
        }
        (0..verts.len()).filter(|&i| find(&mut parent, i) == i).count()
    }

    /// Greedy elementary collapses. True if a single vertex remains.
    pub fn collapses_to_point(&self) -> bool {
        let all: Vec<&Vec<usize>> = self.graded.iter().flatten().collect();
        if all.is_empty() {
            return false;
        }
        let id: BTreeMap<&[usize], usize> = all.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let facets: Vec<Vec<usize>> = all
            .iter()
            .map(|s| {
                if s.len() < 2 {
                    return Vec::new();
                }
                (0..s.len())
                    .map(|i| {
                        let mut f = (*s).clone();
                        f.remove(i);
                        id[f.as_slice()]
                    })
                    .collect()
            })
            .collect();
        let mut cofacets = vec![Vec::new(); all.len()];
        for (t, fs) in facets.iter().enumerate() {
            for &f in fs {
                cofacets[f].push(t);
            }
        }
        let mut alive = vec![true; all.len()];
        let mut count: Vec<usize> = cofacets.iter().map(Vec::len).collect();
        let mut remaining = all.len();
        let mut queue: Vec<usize> = (0..all.len()).filter(|&s| count[s] == 1).collect();
        while let Some(s) = queue.pop() {
            if !alive[s] || count[s] != 1 {
                continue;
            }
            let t = *cofacets[s].iter().find(|&&t| alive[t]).expect("one live cofacet");
            for x in [s, t] {
                alive[x] = false;
                remaining -= 1;
                for &f in &facets[x] {
                    if alive[f] {
                        count[f] -= 1;
                        if count[f] == 1 {
                            queue.push(f);
                        }
                    }
                }
            }
        }
        remaining == 1
    }
}

/// Reduced integral homology by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyReport {
    /// `betti[d]` is the rank of reduced `H_d`, for `d` in `0..=dim`.
    pub betti: Vec<usize>,
    /// Invariant factors greater than 1 of reduced `H_d`.
    pub torsion: Vec<Vec<u128>>,
}

impl HomologyReport {
    pub fn is_trivial(&self) -> bool {
        self.betti.iter().all(|&b| b == 0) && self.torsion.iter().all(Vec::is_empty)
    }
}

/// Reduced homology of `c`. The empty complex gets `H_{-1} = Z`, which is
/// not representable here, so it reports nothing and is not trivial only by
/// convention of the caller.
pub fn reduced_homology(c: &Complex, dim_cap: usize) -> Result<HomologyReport, HomologyError> {
    let dim = c.dimension();
    if dim < 0 {
        return Ok(HomologyReport::default());
    }
    let dim = dim as usize;
    if dim > dim_cap {
        return Err(HomologyError::DimensionCap { dim, cap: dim_cap });
    }
    // ranks[d] and factors[d] describe the boundary C_d -> C_{d-1}, with
    // C_{-1} = Z for the augmentation
    let mut ranks = vec![0usize; dim + 2];
    let mut factors: Vec<Vec<u128>> = vec![Vec::new(); dim + 2];
    for d in 0..=dim {
        let rows: Vec<BTreeMap<usize, i128>> = if d == 0 {
            c.simplices(0).iter().map(|_| BTreeMap::from([(0usize, 1i128)])).collect()
        } else {
            let lower: BTreeMap<&[usize], usize> =
                c.simplices(d - 1).iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
            c.simplices(d)
                .iter()
                .map(|s| {
                    (0..s.len())
                        .map(|i| {
                            let mut f = s.clone();
                            f.remove(i);
                            (lower[f.as_slice()], if i % 2 == 0 { 1 } else { -1 })
                        })
                        .collect()
                })
                .collect()
        };
        let (r, f) = smith(rows)?;
        ranks[d] = r;
        factors[d] = f;
    }
    let mut report = HomologyReport::default();
    for d in 0..=dim {
        let n = c.simplices(d).len();
        report.betti.push(n - ranks[d] - ranks[d + 1]);
        report.torsion.push(factors[d + 1].clone());
    }
    Ok(report)
}

/// Rank and invariant factors `> 1` of a sparse integer matrix given by rows.
pub fn smith(rows: Vec<BTreeMap<usize, i128>>) -> Result<(usize, Vec<u128>), HomologyError> {
    let mut rows: Vec<Option<BTreeMap<usize, i128>>> = rows.into_iter().map(Some).collect();
    let mut col_rows: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (r, row) in rows.iter().enumerate() {
        for &c in row.as_ref().expect("live").keys() {
            col_rows.entry(c).or_default().insert(r);
        }
    }
    let mut rank = 0;
    loop {
        let pivot = rows.iter().enumerate().find_map(|(r, row)| {
            let row = row.as_ref()?;
            row.iter().find(|(_, v)| v.abs() == 1).map(|(&c, &v)| (r, c, v))
        });
        let Some((pr, pc, pv)) = pivot else {
            break;
        };
        let prow = rows[pr].take().expect("live");
        for &c in prow.keys() {
            col_rows.get_mut(&c).expect("indexed").remove(&pr);
        }
        let others: Vec<usize> = col_rows.get(&pc).map(|s| s.iter().copied().collect()).unwrap_or_default();
        for r in others {
            let row = rows[r].as_mut().expect("live");
            let factor = row[&pc] * pv;
            for (&c, &v) in &prow {
                let e = row.entry(c).or_insert(0);
                *e = e
                    .checked_sub(factor.checked_mul(v).ok_or(HomologyError::Overflow)?)
                    .ok_or(HomologyError::Overflow)?;
                if *e == 0 {
                    row.remove(&c);
                    col_rows.get_mut(&c).expect("indexed").remove(&r);
                } else {
                    col_rows.entry(c).or_default().insert(r);
                }
            }
        }
        col_rows.remove(&pc);
        rank += 1;
    }
    let live: Vec<BTreeMap<usize, i128>> = rows.into_iter().flatten().filter(|r| !r.is_empty()).collect();
    if live.is_empty() {
        return Ok((rank, Vec::new()));
    }
    let cols: Vec<usize> = live.iter().flat_map(|r| r.keys().copied()).collect::<BTreeSet<_>>().into_iter().collect();
    let mut dense: Vec<Vec<i128>> =
        live.iter().map(|r| cols.iter().map(|c| r.get(c).copied().unwrap_or(0)).collect()).collect();
    let diag = dense_smith(&mut dense)?;
    let mut factors = Vec::new();
    for d in diag {
        rank += 1;
        if d > 1 {
            factors.push(d);
        }
    }
    Ok((rank, factors))
}

/// Nonzero diagonal of the Smith normal form (absolute values, each
/// dividing the next).
fn dense_smith(a: &mut [Vec<i128>]) -> Result<Vec<u128>, HomologyError> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| a[r][c] != 0)
            .min_by_key(|&(r, c)| a[r][c].unsigned_abs())
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        let mut clean = true;
        for r in t + 1..rows {
            let q = a[r][t] / a[t][t];
            if q != 0 {
                for c in t..cols {
                    a[r][c] = a[r][c]
                        .checked_sub(q.checked_mul(a[t][c]).ok_or(HomologyError::Overflow)?)
                        .ok_or(HomologyError::Overflow)?;
                }
            }
            clean &= a[r][t] == 0;
        }
        for c in t + 1..cols {
            let q = a[t][c] / a[t][t];
            if q != 0 {
                for r in t..rows {
                    a[r][c] = a[r][c]
                        .checked_sub(q.checked_mul(a[r][t]).ok_or(HomologyError::Overflow)?)
                        .ok_or(HomologyError::Overflow)?;
                }
            }
            clean &= a[t][c] == 0;
        }
        if !clean {
            continue;
        }
        let p = a[t][t];
        let bad = (t + 1..rows).flat_map(|r| (t + 1..cols).map(move |c| (r, c))).find(|&(r, c)| a[r][c] % p != 0);
        if let Some((r, _)) = bad {
            for c in t..cols {
                a[t][c] = a[t][c].checked_add(a[r][c]).ok_or(HomologyError::Overflow)?;
            }
            continue;
        }
        diag.push(p.unsigned_abs());
        t += 1;
    }
    Ok(diag)
}
