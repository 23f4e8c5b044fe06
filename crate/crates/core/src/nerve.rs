//! The poset `C(G)` of proper labellings of a digraph and its nerve.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::Digraph;
use crate::homology::{reduced_homology, Complex, HomologyError, HomologyReport};
use crate::label::{all_labellings, labels_to_string, properly_labelled, underlying_graph, Label};
use crate::path::PathOp;

pub const DEFAULT_OBJECT_CAP: usize = 2000;
pub const DEFAULT_DIMENSION_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NerveError {
    #[error("labellings on {0} and {1} vertices")]
    VertexMismatch(usize, usize),
    #[error("{count} objects, above the cap of {cap}")]
    ObjectCap { count: usize, cap: usize },
    #[error("vertex {0} has incoming edges")]
    HasIncoming(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexRange { vertex: usize, n: usize },
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// Proper labellings of `g`, lexicographic with `A < B < C`.
pub fn proper_labellings(g: &Digraph) -> Vec<Vec<Label>> {
    all_labellings(g.vertex_count()).into_iter().filter(|l| properly_labelled(g, l)).collect()
}

/// `l <= r`: every vertex keeps its label or moves from A or B to C.
pub fn leq(l: &[Label], r: &[Label]) -> Result<bool, NerveError> {
    if l.len() != r.len() {
        return Err(NerveError::VertexMismatch(l.len(), r.len()));
    }
    Ok(l.iter().zip(r).all(|(a, b)| a == b || *b == Label::C))
}

fn le(l: &[Label], r: &[Label]) -> bool {
    l.iter().zip(r).all(|(a, b)| a == b || *b == Label::C)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelPoset {
    pub objects: Vec<Vec<Label>>,
}

impl LabelPoset {
    pub fn new(objects: Vec<Vec<Label>>, cap: usize) -> Result<Self, NerveError> {
        if objects.len() > cap {
            return Err(NerveError::ObjectCap { count: objects.len(), cap });
        }
        Ok(LabelPoset { objects })
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        le(&self.objects[i], &self.objects[j])
    }

    /// Reflexive, antisymmetric and transitive on the stored objects.
    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| self.leq(i, i))
            && (0..n).all(|i| (0..n).all(|j| i == j || !(self.leq(i, j) && self.leq(j, i))))
            && (0..n).all(|i| (0..n).all(|j| !self.leq(i, j) || (0..n).all(|k| !self.leq(j, k) || self.leq(i, k))))
    }

    /// Pairs `i < j` in the order with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |i: usize, j: usize| i != j && self.leq(i, j);
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Hasse diagram.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph {name} {{\n");
        for (i, o) in self.objects.iter().enumerate() {
            s += &format!("  n{i} [label=\"{}\"];\n", labels_to_string(o));
        }
        for (i, j) in self.covers() {
            s += &format!("  n{i} -> n{j};\n");
        }
        s += "}\n";
        s
    }
}

pub fn poset(g: &Digraph) -> Result<LabelPoset, NerveError> {
    poset_capped(g, DEFAULT_OBJECT_CAP)
}

pub fn poset_capped(g: &Digraph, cap: usize) -> Result<LabelPoset, NerveError> {
    let n = g.vertex_count();
    if n > 16 {
        // refuse before enumerating 3^n candidates
        return Err(NerveError::ObjectCap { count: 3usize.saturating_pow(n as u32), cap });
    }
    LabelPoset::new(proper_labellings(g), cap)
}

/// All chains of `p`, one simplex each.
pub fn order_complex(p: &LabelPoset, dim_cap: usize) -> Result<Complex, NerveError> {
    let n = p.len();
    let above: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| j != i && p.leq(i, j)).collect()).collect();
    let mut chains = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|i| alloc::vec![i]).collect();
    while let Some(chain) = stack.pop() {
        let top = *chain.last().expect("nonempty");
        if chain.len() > dim_cap + 1 {
            return Err(HomologyError::DimensionCap { dim: chain.len() - 1, cap: dim_cap }.into());
        }
        for &j in &above[top] {
            let mut c = chain.clone();
            c.push(j);
            stack.push(c);
        }
        let mut sorted = chain;
        sorted.sort_unstable();
        chains.push(sorted);
    }
    Ok(Complex::from_closed(chains))
}

pub fn homology(c: &Complex) -> Result<HomologyReport, NerveError> {
    Ok(reduced_homology(c, DEFAULT_DIMENSION_CAP)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Collapsible,
    AcyclicHomology,
    Inconclusive,
    HasCycle,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Collapsible => "collapsible",
            Verdict::AcyclicHomology => "acyclic_homology",
            Verdict::Inconclusive => "inconclusive",
            Verdict::HasCycle => "has_cycle",
        }
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Everything computed for one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveReport {
    pub objects: usize,
    pub components: usize,
    pub homology: HomologyReport,
    pub verdict: Verdict,
}

pub fn contractibility_verdict(g: &Digraph) -> Result<Verdict, NerveError> {
    Ok(nerve_report(g)?.verdict)
}

pub fn nerve_report(g: &Digraph) -> Result<NerveReport, NerveError> {
    let p = poset(g)?;
    let c = order_complex(&p, DEFAULT_DIMENSION_CAP)?;
    let h = homology(&c)?;
    let components = c.components();
    let verdict = if g.has_cycle() {
        Verdict::HasCycle
    } else if c.collapses_to_point() {
        Verdict::Collapsible
    } else if components == 1 && h.is_trivial() {
        Verdict::AcyclicHomology
    } else {
        Verdict::Inconclusive
    };
    Ok(NerveReport { objects: p.len(), components, homology: h, verdict })
}

/// The three graphs obtained by deleting a source vertex `v`, together with
/// the outcome of checking the cover and the restriction bijections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub without_v: Digraph,
    /// `G` with every vertex strictly above `v` removed.
    pub g_v: Digraph,
    pub g_v_without_v: Digraph,
    /// Vertices of `G` kept in `g_v`, in order.
    pub kept: Vec<usize>,
    /// Labellings with `v = A` restrict bijectively onto `C(G \ v)`.
    pub a_bijection: bool,
    /// Labellings with everything above `v` labelled B restrict
    /// bijectively onto `C(G_v)`.
    pub b_bijection: bool,
    pub intersection_bijection: bool,
    pub covers: bool,
}

impl Decomposition {
    pub fn all_checks_pass(&self) -> bool {
        self.a_bijection && self.b_bijection && self.intersection_bijection && self.covers
    }
}

pub fn decompose_at_vertex(g: &Digraph, v: usize) -> Result<Decomposition, NerveError> {
    let n = g.vertex_count();
    if v >= n {
        return Err(NerveError::VertexRange { vertex: v, n });
    }
    if g.in_degree(v) > 0 {
        return Err(NerveError::HasIncoming(v));
    }
    let mut above = g.reachable_from(v);
    above.remove(&v);
    let kept: Vec<usize> = (0..n).filter(|u| !above.contains(u)).collect();
    let rest: Vec<usize> = (0..n).filter(|&u| u != v).collect();
    let kept_rest: Vec<usize> = kept.iter().copied().filter(|&u| u != v).collect();
    let without_v = g.induced(&rest);
    let g_v = g.induced(&kept);
    let g_v_without_v = g.induced(&kept_rest);

    let all = proper_labellings(g);
    let in_a = |l: &Vec<Label>| l[v] == Label::A;
    let in_b = |l: &Vec<Label>| above.iter().all(|&u| l[u] == Label::B);
    let a: Vec<&Vec<Label>> = all.iter().filter(|l| in_a(l)).collect();
    let b: Vec<&Vec<Label>> = all.iter().filter(|l| in_b(l)).collect();
    let ab: Vec<&Vec<Label>> = all.iter().filter(|l| in_a(l) && in_b(l)).collect();

    let a_bijection = restriction_is_iso(&a, &rest, &without_v);
    let b_bijection = restriction_is_iso(&b, &kept, &g_v);
    let intersection_bijection = restriction_is_iso(&ab, &kept_rest, &g_v_without_v);
    let covers = all.iter().all(|l| in_a(l) || in_b(l));
    Ok(Decomposition { without_v, g_v, g_v_without_v, kept, a_bijection, b_bijection, intersection_bijection, covers })
}

/// Restriction to `keep` maps `source` bijectively onto `C(target)` and
/// preserves and reflects the order.
fn restriction_is_iso(source: &[&Vec<Label>], keep: &[usize], target: &Digraph) -> bool {
    let image: Vec<Vec<Label>> = source.iter().map(|l| keep.iter().map(|&u| l[u]).collect()).collect();
    let distinct: BTreeSet<&Vec<Label>> = image.iter().collect();
    let expected: BTreeSet<Vec<Label>> = proper_labellings(target).into_iter().collect();
    if distinct.len() != image.len()
        || distinct.len() != expected.len()
        || !distinct.iter().all(|l| expected.contains(*l))
    {
        return false;
    }
    (0..source.len()).all(|i| (0..source.len()).all(|j| le(source[i], source[j]) == le(&image[i], &image[j])))
}

/// Labellings that agree with `base` off `s` and are either `base` or C on
/// `s`. `None` if `base` is not A or B on all of `s`, or if one of them is
/// not proper.
pub fn fibre(g: &Digraph, base: &[Label], s: &[usize]) -> Option<LabelPoset> {
    if s.iter().any(|&v| base[v] == Label::C) {
        return None;
    }
    let mut objects = Vec::new();
    for mask in 0..1usize << s.len() {
        let mut l = base.to_vec();
        for (bit, &v) in s.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                l[v] = Label::C;
            }
        }
        if !properly_labelled(g, &l) {
            return None;
        }
        objects.push(l);
    }
    objects.sort();
    Some(LabelPoset { objects })
}

/// Disjoint union of the underlying graphs, in order.
pub fn lifting_graph(ops: &[PathOp], m: usize) -> Digraph {
    ops.iter().fold(Digraph::new(0), |acc, op| acc.disjoint_union(&underlying_graph(op, m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::dag_enumerate;
    use crate::label::parse_labels;
    use alloc::vec;

    fn l(s: &str) -> Vec<Label> {
        parse_labels(s).unwrap()
    }

    fn star() -> Digraph {
        Digraph::parse_edges("2>1,2>3", 3).unwrap()
    }

    #[test]
    fn star_objects() {
        let got: BTreeSet<Vec<Label>> = proper_labellings(&star()).into_iter().collect();
        let want: BTreeSet<Vec<Label>> = ["AAB", "CAB", "AAC", "BBB", "BCB", "BAB", "CAC", "AAA", "BAC", "CAA", "BAA"]
            .iter()
            .map(|s| l(s))
            .collect();
        assert_eq!(got, want);
        assert!(leq(&l("BAB"), &l("CAC")).unwrap());
        assert!(leq(&l("AAA"), &l("CAA")).unwrap());
        assert!(leq(&l("BBB"), &l("BCB")).unwrap());
        assert!(!leq(&l("AB"), &l("BA")).unwrap());
        assert_eq!(leq(&l("A"), &l("AB")), Err(NerveError::VertexMismatch(1, 2)));
        let v = contractibility_verdict(&star()).unwrap();
        assert!(matches!(v, Verdict::Collapsible | Verdict::AcyclicHomology));
    }

    #[test]
    fn small_posets() {
        assert_eq!(proper_labellings(&Digraph::new(3)).len(), 27);
        let edge = Digraph::parse_edges("1>2", 2).unwrap();
        let p = poset(&edge).unwrap();
        let names: Vec<String> = p.objects.iter().map(|o| labels_to_string(o)).collect();
        assert_eq!(names, ["AA", "AB", "AC", "BB", "CB"]);
        let c = order_complex(&p, 12).unwrap();
        assert_eq!(c.vertex_count(), 5);
        assert_eq!(c.simplices(1).len(), 4);
        assert_eq!(c.dimension(), 1);
        assert_eq!(c.components(), 1);
        assert!(homology(&c).unwrap().is_trivial());

        let point = poset(&Digraph::new(0)).unwrap();
        assert_eq!(point.len(), 1);
        assert_eq!(order_complex(&point, 12).unwrap().simplex_count(), 1);
        let single = order_complex(&poset(&Digraph::new(1)).unwrap(), 12).unwrap();
        assert_eq!((single.vertex_count(), single.simplices(1).len()), (3, 2));
    }

    #[test]
    fn caps_are_errors() {
        assert_eq!(poset_capped(&star(), 10), Err(NerveError::ObjectCap { count: 11, cap: 10 }));
        let p = poset(&Digraph::new(3)).unwrap();
        assert!(matches!(order_complex(&p, 2), Err(NerveError::Homology(HomologyError::DimensionCap { .. }))));
    }

    #[test]
    fn cycle_is_reported() {
        let g = Digraph::parse_edges("1>2,2>3,3>1", 3).unwrap();
        assert_eq!(contractibility_verdict(&g).unwrap(), Verdict::HasCycle);
    }

    #[test]
    fn small_dags_are_contractible() {
        for n in 0..=4 {
            for g in dag_enumerate(n, true) {
                let p = poset(&g).unwrap();
                assert!(p.is_partial_order());
                let r = nerve_report(&g).unwrap();
                assert_eq!(r.components, 1, "{g}");
                assert!(r.homology.is_trivial(), "{g}");
                assert_ne!(r.verdict, Verdict::Inconclusive, "{g}");
                for v in g.roots() {
                    assert!(decompose_at_vertex(&g, v).unwrap().all_checks_pass(), "{g} at {v}");
                }
            }
        }
    }

    #[test]
    fn decompositions() {
        let d = decompose_at_vertex(&star(), 1).unwrap();
        assert_eq!(d.without_v, Digraph::new(2));
        assert_eq!(d.g_v, Digraph::new(1));
        assert_eq!(d.kept, vec![1]);
        assert!(d.all_checks_pass());
        assert_eq!(decompose_at_vertex(&star(), 0), Err(NerveError::HasIncoming(0)));

        let chain = Digraph::parse_edges("1>2,2>3", 3).unwrap();
        let d = decompose_at_vertex(&chain, 0).unwrap();
        assert_eq!(d.kept, vec![0]);
        assert!(d.all_checks_pass());

        let d = decompose_at_vertex(&Digraph::new(2), 0).unwrap();
        assert_eq!(d.g_v, Digraph::new(2));
        assert!(d.all_checks_pass());
    }

    #[test]
    fn fibres_are_cubes() {
        let g = Digraph::new(3);
        for base in all_labellings(3) {
            let s: Vec<usize> = (0..3).filter(|&v| base[v] != Label::C).collect();
            let f = fibre(&g, &base, &s).unwrap();
            assert_eq!(f.len(), 1 << s.len());
            let c = order_complex(&f, 12).unwrap();
            assert!(c.collapses_to_point());
            assert!(homology(&c).unwrap().is_trivial());
        }
        // C on the source of an edge labelled (A, A) is an obstruction
        let edge = Digraph::parse_edges("1>2", 2).unwrap();
        assert!(fibre(&edge, &l("AA"), &[0]).is_none());
        assert_eq!(fibre(&edge, &l("AB"), &[0]).unwrap().len(), 2);
        assert!(fibre(&edge, &l("AB"), &[0, 1]).is_none());
    }

    #[test]
    fn lifting_graphs() {
        let x = PathOp::parse("12321434").unwrap();
        let g = lifting_graph(&[x.clone(), x], 3);
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 6));
        assert!(!g.has_cycle());
        let g = lifting_graph(&[PathOp::identity(2)], 3);
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
    }

    #[test]
    fn dot_has_hasse_edges() {
        let p = poset(&Digraph::parse_edges("1>2", 2).unwrap()).unwrap();
        assert_eq!(p.covers().len(), 4);
        assert!(p.to_dot("c").contains("n0 -> n2;"));
    }
}
