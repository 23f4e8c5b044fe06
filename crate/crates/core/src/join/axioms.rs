//! Executable unit, associativity and interchange diagrams for joins.
//!
//! Both legs of every diagram are evaluated with [`join`]; cut tuples are
//! carried across the first join by [`transport`].

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::reindex::{reindex_formula_i, reindex_formula_j, transport, transport_closed_form};
use super::{check_tuple, even_cuts, join, odd_cuts, CutTuple, JoinError, Side};
use crate::enumerate::increasing_tuples;
use crate::path::{PathOp, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Diagram {
    LeftUnit,
    RightUnit,
    Associativity,
    Interchange,
}

impl Diagram {
    pub fn name(self) -> &'static str {
        match self {
            Diagram::LeftUnit => "left-unit",
            Diagram::RightUnit => "right-unit",
            Diagram::Associativity => "associativity",
            Diagram::Interchange => "interchange",
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One evaluated diagram.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AxiomRecord {
    pub diagram: Diagram,
    pub m: usize,
    /// Operations in general form followed by their cut tuples.
    pub inputs: Vec<String>,
    /// The two legs when they differ.
    pub counterexample: Option<(PathOp, PathOp)>,
}

impl AxiomRecord {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub records: Vec<AxiomRecord>,
}

impl AxiomReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &AxiomRecord> {
        self.records.iter().filter(|r| !r.holds())
    }

    pub fn is_clean(&self) -> bool {
        self.counterexamples().next().is_none()
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.records.extend(other.records);
    }

    /// Sorts records canonically so that aggregation order does not matter.
    pub fn normalize(&mut self) {
        self.records.sort();
    }
}

fn record(diagram: Diagram, m: usize, inputs: Vec<String>, lhs: PathOp, rhs: PathOp) -> AxiomRecord {
    let counterexample = if lhs == rhs { None } else { Some((lhs, rhs)) };
    AxiomRecord { diagram, m, inputs, counterexample }
}

/// Both unit laws for every operation of `corpus` and every admissible tuple.
pub fn check_units(m: usize, corpus: &[PathOp]) -> Result<AxiomReport, JoinError> {
    let eta = PathOp::eta(m).map_err(|_| JoinError::LevelTooSmall)?;
    let mut report = AxiomReport::default();
    for op in corpus {
        let left = CutTuple::left_unit(m);
        for jv in increasing_tuples(op.bars(), odd_cuts(m)) {
            let j = CutTuple::new(jv)?;
            let got = join(&eta, &left, op, &j, m)?.result;
            let inputs = vec![op.to_general(), format!("{j}")];
            report.records.push(record(Diagram::LeftUnit, m, inputs, got, op.clone()));
        }
        let right = CutTuple::right_unit(m);
        for iv in increasing_tuples(op.bars(), even_cuts(m)) {
            let i = CutTuple::new(iv)?;
            let got = join(op, &i, &eta, &right, m)?.result;
            let inputs = vec![op.to_general(), format!("{i}")];
            report.records.push(record(Diagram::RightUnit, m, inputs, got, op.clone()));
        }
    }
    Ok(report)
}

/// Data for one associativity square: `x ∘_i (y ∘_j z)` against
/// `(x ∘_{i} y) ∘ z` where the inner join of the second leg cuts `y` at
/// `j_prime` and `j` is carried into the joined bars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocInstance {
    pub x: PathOp,
    /// `⌊m/2⌋` bars of `x`.
    pub i: CutTuple,
    pub y: PathOp,
    /// `⌊m/2⌋` bars of `y`, used when `y` is the even operand.
    pub j: CutTuple,
    /// `⌊(m-1)/2⌋` bars of `y`, used when `y` is the odd operand; disjoint from `j`.
    pub j_prime: CutTuple,
    pub z: PathOp,
    /// `⌊(m-1)/2⌋` bars of `z`.
    pub k: CutTuple,
}

impl AssocInstance {
    fn validate(&self, m: usize) -> Result<(), JoinError> {
        check_tuple(Side::Even, &self.i, even_cuts(m), self.x.bars())?;
        check_tuple(Side::Even, &self.j, even_cuts(m), self.y.bars())?;
        check_tuple(Side::Odd, &self.j_prime, odd_cuts(m), self.y.bars())?;
        check_tuple(Side::Odd, &self.k, odd_cuts(m), self.z.bars())?;
        if !self.j.is_disjoint(&self.j_prime) {
            return Err(JoinError::Overlap(self.j.positions().to_vec(), self.j_prime.positions().to_vec()));
        }
        Ok(())
    }

    fn inputs(&self) -> Vec<String> {
        vec![
            self.x.to_general(),
            format!("{}", self.i),
            self.y.to_general(),
            format!("{}", self.j),
            format!("{}", self.j_prime),
            self.z.to_general(),
            format!("{}", self.k),
        ]
    }

    /// `k'`: the bars `j_prime` of `y` after `y ∘_j z`.
    fn k_prime(&self, m: usize) -> Result<CutTuple, JoinError> {
        transport(self.y.bars(), &self.j, self.z.bars(), &self.k, Side::Even, &self.j_prime, m)
    }

    /// `i'`: the bars `j` of `y` after `x ∘_{i, j'} y`.
    fn i_prime(&self, m: usize) -> Result<CutTuple, JoinError> {
        transport(self.x.bars(), &self.i, self.y.bars(), &self.j_prime, Side::Odd, &self.j, m)
    }
}

pub fn check_associativity(m: usize, instances: &[AssocInstance]) -> Result<AxiomReport, JoinError> {
    let mut report = AxiomReport::default();
    for inst in instances {
        inst.validate(m)?;
        let yz = join(&inst.y, &inst.j, &inst.z, &inst.k, m)?.result;
        let top = join(&inst.x, &inst.i, &yz, &inst.k_prime(m)?, m)?.result;
        let xy = join(&inst.x, &inst.i, &inst.y, &inst.j_prime, m)?.result;
        let bottom = join(&xy, &inst.i_prime(m)?, &inst.z, &inst.k, m)?.result;
        report.records.push(record(Diagram::Associativity, m, inst.inputs(), top, bottom));
    }
    Ok(report)
}

/// Data for one interchange diagram (even `m`): `y` and `z` are joined into
/// `x` at the disjoint cut tuples `i` and `i_prime`, in either order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterchangeInstance {
    pub x: PathOp,
    pub i: CutTuple,
    pub i_prime: CutTuple,
    pub y: PathOp,
    pub j: CutTuple,
    pub z: PathOp,
    pub k: CutTuple,
}

impl InterchangeInstance {
    fn validate(&self, m: usize) -> Result<(), JoinError> {
        if m % 2 != 0 {
            return Err(JoinError::InterchangeNeedsEvenLevel(m));
        }
        check_tuple(Side::Even, &self.i, even_cuts(m), self.x.bars())?;
        check_tuple(Side::Even, &self.i_prime, even_cuts(m), self.x.bars())?;
        check_tuple(Side::Odd, &self.j, odd_cuts(m), self.y.bars())?;
        check_tuple(Side::Odd, &self.k, odd_cuts(m), self.z.bars())?;
        if !self.i.is_disjoint(&self.i_prime) {
            return Err(JoinError::Overlap(self.i.positions().to_vec(), self.i_prime.positions().to_vec()));
        }
        Ok(())
    }

    fn inputs(&self) -> Vec<String> {
        vec![
            self.x.to_general(),
            format!("{}", self.i),
            format!("{}", self.i_prime),
            self.y.to_general(),
            format!("{}", self.j),
            self.z.to_general(),
            format!("{}", self.k),
        ]
    }

    /// `j'`: the bars `i_prime` of `x` after `x ∘_{i, j} y`.
    fn j_prime(&self, m: usize) -> Result<CutTuple, JoinError> {
        transport(self.x.bars(), &self.i, self.y.bars(), &self.j, Side::Even, &self.i_prime, m)
    }

    /// `k'`: the bars `i` of `x` after `x ∘_{i', k} z`.
    fn k_prime(&self, m: usize) -> Result<CutTuple, JoinError> {
        transport(self.x.bars(), &self.i_prime, self.z.bars(), &self.k, Side::Even, &self.i, m)
    }
}

pub fn check_interchange(m: usize, instances: &[InterchangeInstance]) -> Result<AxiomReport, JoinError> {
    let mut report = AxiomReport::default();
    for inst in instances {
        inst.validate(m)?;
        let xy = join(&inst.x, &inst.i, &inst.y, &inst.j, m)?.result;
        let first = join(&xy, &inst.j_prime(m)?, &inst.z, &inst.k, m)?.result;
        let xz = join(&inst.x, &inst.i_prime, &inst.z, &inst.k, m)?.result;
        let second = join(&xz, &inst.k_prime(m)?, &inst.y, &inst.j, m)?.result;
        // second leg numbers colours x, z, y; bring them to x, y, z
        let (kx, ky, kz) = (inst.x.colours(), inst.y.colours(), inst.z.colours());
        let images = (1..=kx).chain((1..=kz).map(|c| kx + ky + c)).chain((1..=ky).map(|c| kx + c)).collect();
        let swap = Permutation::from_images(images).expect("block permutation");
        let second = second.permute(&swap).expect("sizes agree");
        report.records.push(record(Diagram::Interchange, m, inst.inputs(), first, second));
    }
    Ok(report)
}

/// One transported tuple where a printed closed formula and the positional
/// transport disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaMismatch {
    pub diagram: Diagram,
    /// Which reindexed tuple: `i'`, `k'` or `j'`.
    pub tuple: &'static str,
    pub inputs: Vec<String>,
    pub transported: Vec<usize>,
    pub printed: Vec<i64>,
}

/// Comparison of the printed reindexing formulas against [`transport`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormulaReport {
    /// Number of tuples compared.
    pub compared: usize,
    /// Tuples where the printed formula reproduces the transport.
    pub printed_agree: usize,
    /// Tuples where [`transport_closed_form`] reproduces the transport.
    pub closed_form_agree: usize,
    pub mismatches: Vec<FormulaMismatch>,
}

impl FormulaReport {
    fn add(
        &mut self,
        diagram: Diagram,
        tuple: &'static str,
        inputs: &[String],
        transported: &CutTuple,
        printed: Vec<i64>,
        closed: Vec<i64>,
    ) {
        self.compared += 1;
        let oracle: Vec<i64> = transported.positions().iter().map(|&p| p as i64).collect();
        // transport sorts its output; the formulas are evaluated entrywise
        let mut printed_sorted = printed.clone();
        printed_sorted.sort_unstable();
        let mut closed_sorted = closed;
        closed_sorted.sort_unstable();
        if closed_sorted == oracle {
            self.closed_form_agree += 1;
        }
        if printed_sorted == oracle {
            self.printed_agree += 1;
        } else {
            self.mismatches.push(FormulaMismatch {
                diagram,
                tuple,
                inputs: inputs.to_vec(),
                transported: transported.positions().to_vec(),
                printed,
            });
        }
    }
}

/// Evaluates the printed reindexing formulas on the same instances the
/// axiom checks use and tallies agreement with the transport.
pub fn compare_formulas(
    m: usize,
    assoc: &[AssocInstance],
    inter: &[InterchangeInstance],
) -> Result<FormulaReport, JoinError> {
    let mut report = FormulaReport::default();
    for inst in assoc {
        inst.validate(m)?;
        let inputs = inst.inputs();
        let (r, s, t) = (inst.x.bars(), inst.y.bars(), inst.z.bars());
        let i_prime = inst.i_prime(m)?;
        let printed = reindex_formula_i(&inst.i, &inst.j_prime, &inst.j, m, r)?;
        let closed = transport_closed_form(r, &inst.i, s, &inst.j_prime, Side::Odd, &inst.j);
        report.add(Diagram::Associativity, "i'", &inputs, &i_prime, printed, closed);
        let k_prime = inst.k_prime(m)?;
        let printed = reindex_formula_j(&inst.j, &inst.j_prime, &inst.k, m, t)?;
        let closed = transport_closed_form(s, &inst.j, t, &inst.k, Side::Even, &inst.j_prime);
        report.add(Diagram::Associativity, "k'", &inputs, &k_prime, printed, closed);
    }
    for inst in inter {
        inst.validate(m)?;
        let inputs = inst.inputs();
        let (r, s, t) = (inst.x.bars(), inst.y.bars(), inst.z.bars());
        let j_prime = inst.j_prime(m)?;
        let printed = reindex_formula_j(&inst.i, &inst.i_prime, &inst.j, m, s)?;
        let closed = transport_closed_form(r, &inst.i, s, &inst.j, Side::Even, &inst.i_prime);
        report.add(Diagram::Interchange, "j'", &inputs, &j_prime, printed, closed);
        let k_prime = inst.k_prime(m)?;
        let printed = reindex_formula_j(&inst.i_prime, &inst.i, &inst.k, m, t)?;
        let closed = transport_closed_form(r, &inst.i_prime, t, &inst.k, Side::Even, &inst.i);
        report.add(Diagram::Interchange, "k'", &inputs, &k_prime, printed, closed);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::canonical_ops_up_to;

    fn op(s: &str) -> PathOp {
        PathOp::parse(s).unwrap()
    }

    fn cuts(v: &[usize]) -> CutTuple {
        CutTuple::new(v.to_vec()).unwrap()
    }

    #[test]
    fn units_hold_on_small_corpus() {
        let corpus = canonical_ops_up_to(6);
        for m in 1..=4 {
            let report = check_units(m, &corpus).unwrap();
            assert!(!report.records.is_empty());
            assert!(report.is_clean(), "m={m}: {:?}", report.counterexamples().next());
        }
    }

    #[test]
    fn associativity_level_two_is_sequential_grafting() {
        let inst = AssocInstance {
            x: op("1|1|1"),
            i: cuts(&[2]),
            y: op("1|12|2"),
            j: cuts(&[1]),
            j_prime: CutTuple::empty(),
            z: op("1|1"),
            k: CutTuple::empty(),
        };
        let report = check_associativity(2, &[inst]).unwrap();
        assert!(report.is_clean());
    }

    #[test]
    fn associativity_exhaustive_level_three() {
        let ops: Vec<PathOp> = canonical_ops_up_to(5).into_iter().filter(|o| o.bars() >= 1).collect();
        let mut instances = Vec::new();
        for x in ops.iter().take(30) {
            for y in ops.iter().filter(|y| y.bars() >= 2).take(30) {
                for z in ops.iter().take(10) {
                    for iv in increasing_tuples(x.bars(), 1) {
                        for jv in increasing_tuples(y.bars(), 1) {
                            for jpv in increasing_tuples(y.bars(), 1).into_iter().filter(|t| t != &jv) {
                                for kv in increasing_tuples(z.bars(), 1) {
                                    instances.push(AssocInstance {
                                        x: x.clone(),
                                        i: cuts(&iv),
                                        y: y.clone(),
                                        j: cuts(&jv),
                                        j_prime: cuts(&jpv),
                                        z: z.clone(),
                                        k: cuts(&kv),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(instances.len() > 1000);
        let report = check_associativity(3, &instances).unwrap();
        assert!(report.is_clean());
        let formulas = compare_formulas(3, &instances, &[]).unwrap();
        assert_eq!(formulas.closed_form_agree, formulas.compared);
        assert!(formulas.printed_agree < formulas.compared);
    }

    #[test]
    fn interchange_level_four() {
        let inst = InterchangeInstance {
            x: op("1|1|1|1|1|1"),
            i: cuts(&[1, 4]),
            i_prime: cuts(&[2, 5]),
            y: op("1|12|2"),
            j: cuts(&[1]),
            z: op("12|21|1"),
            k: cuts(&[2]),
        };
        let report = check_interchange(4, &[inst.clone()]).unwrap();
        assert!(report.is_clean(), "{:?}", report.records);
        assert_eq!(check_interchange(3, &[inst]), Err(JoinError::InterchangeNeedsEvenLevel(3)));
    }

    #[test]
    fn malformed_instances_are_errors() {
        let inst = AssocInstance {
            x: op("1|1"),
            i: cuts(&[1]),
            y: op("1|1|1"),
            j: cuts(&[2]),
            j_prime: cuts(&[2]),
            z: op("1|1"),
            k: cuts(&[1]),
        };
        assert!(matches!(check_associativity(3, &[inst]), Err(JoinError::Overlap(..))));
    }
}
