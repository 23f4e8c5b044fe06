//! Command reports and their renderings.
//!
//! JSON is pretty-printed and newline-terminated, with fields in declaration
//! order. Text puts the headline value on the first line. DOT exists for
//! graphs and posets, CSV for counts.

use std::fmt::Write as _;

use clap::ValueEnum;
use latticepath_core::hat::CountRow;
use serde::Serialize;
use thiserror::Error;

use crate::verify::SuiteReport;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    #[default]
    Text,
    Dot,
    Csv,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "text",
            Format::Dot => "dot",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Error)]
pub enum EmitError {
    #[error("{report} reports have no {format} rendering")]
    Unsupported { report: &'static str, format: &'static str },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountsRow {
    pub k: usize,
    pub arities: String,
    pub bars: usize,
    pub count: usize,
}

impl From<&CountRow> for CountsRow {
    fn from(r: &CountRow) -> Self {
        let arities = r.arities.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        CountsRow { k: r.colours, arities, bars: r.bars, count: r.count }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "report", rename_all = "kebab-case")]
pub enum Report {
    Compose {
        op: String,
        with: Vec<String>,
        result: String,
    },
    Complexity {
        op: String,
        complexity: usize,
        corners: Vec<Vec<usize>>,
    },
    Graph {
        op: String,
        m: usize,
        vertices: usize,
        edges: Vec<GraphEdge>,
        #[serde(skip)]
        dot: String,
    },
    Join {
        lhs: String,
        lhs_cuts: Vec<usize>,
        rhs: String,
        rhs_cuts: Vec<usize>,
        m: usize,
        result: String,
    },
    Generate {
        m: usize,
        budget: usize,
        orbits: usize,
        entries: usize,
        rounds: usize,
        gamma_only: usize,
        source: String,
        cache: String,
    },
    Contains {
        op: String,
        m: usize,
        budget: usize,
        membership: String,
    },
    Counts {
        m: usize,
        budget: usize,
        rows: Vec<CountsRow>,
    },
    Labellings {
        edges: String,
        vertices: usize,
        count: usize,
        objects: Vec<String>,
        #[serde(skip)]
        count_only: bool,
        #[serde(skip)]
        dot: String,
    },
    Homology {
        edges: String,
        objects: usize,
        components: usize,
        betti: Vec<usize>,
        torsion: Vec<Vec<u128>>,
        verdict: String,
    },
    CheckAxioms {
        m: usize,
        seed: u64,
        suite: SuiteReport,
        formula_mismatches: Vec<String>,
    },
    Lift {
        input: String,
        lifted: String,
        inserted_colours: Vec<u32>,
        unique: bool,
        extension: Option<String>,
    },
    Verify {
        suites: Vec<SuiteReport>,
        notes: Vec<String>,
    },
}

impl Report {
    pub fn kind(&self) -> &'static str {
        match self {
            Report::Compose { .. } => "compose",
            Report::Complexity { .. } => "complexity",
            Report::Graph { .. } => "graph",
            Report::Join { .. } => "join",
            Report::Generate { .. } => "generate",
            Report::Contains { .. } => "contains",
            Report::Counts { .. } => "counts",
            Report::Labellings { .. } => "labellings",
            Report::Homology { .. } => "homology",
            Report::CheckAxioms { .. } => "check-axioms",
            Report::Lift { .. } => "lift",
            Report::Verify { .. } => "verify",
        }
    }

    /// Number of counterexamples carried by a verification report.
    pub fn failures(&self) -> usize {
        match self {
            Report::CheckAxioms { suite, .. } => suite.failures,
            Report::Verify { suites, .. } => suites.iter().map(|s| s.failures).sum(),
            _ => 0,
        }
    }

    pub fn emit(&self, format: Format) -> Result<Vec<u8>, EmitError> {
        let unsupported = || EmitError::Unsupported { report: self.kind(), format: format.name() };
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self)?;
                s.push('\n');
                Ok(s.into_bytes())
            }
            Format::Text => Ok(self.text().into_bytes()),
            Format::Dot => match self {
                Report::Graph { dot, .. } | Report::Labellings { dot, .. } => Ok(dot.clone().into_bytes()),
                _ => Err(unsupported()),
            },
            Format::Csv => match self {
                Report::Counts { rows, .. } => counts_csv(rows),
                _ => Err(unsupported()),
            },
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        match self {
            Report::Compose { result, .. } => writeln!(s, "{result}"),
            Report::Complexity { complexity, .. } => writeln!(s, "{complexity}"),
            Report::Graph { edges, .. } => {
                let list: Vec<String> = edges.iter().map(|e| format!("{}>{}", e.from, e.to)).collect();
                writeln!(s, "{}", list.join(","))
            }
            Report::Join { result, .. } => writeln!(s, "{result}"),
            Report::Generate { m, budget, orbits, entries, rounds, gamma_only, source, cache } => writeln!(
                s,
                "m={m} budget={budget} orbits={orbits} entries={entries} rounds={rounds} gamma_only={gamma_only} {source} {cache}"
            ),
            Report::Contains { membership, .. } => writeln!(s, "{membership}"),
            Report::Counts { rows, .. } => rows
                .iter()
                .try_for_each(|r| writeln!(s, "k={} arities=[{}] bars={} count={}", r.k, r.arities, r.bars, r.count)),
            Report::Labellings { count, objects, count_only, .. } => {
                if *count_only {
                    writeln!(s, "{count}")
                } else {
                    objects.iter().try_for_each(|o| writeln!(s, "{o}"))
                }
            }
            Report::Homology { verdict, objects, components, betti, torsion, .. } => writeln!(
                s,
                "{verdict}\nobjects={objects} components={components} betti={betti:?} torsion={torsion:?}"
            ),
            Report::CheckAxioms { suite, formula_mismatches, .. } => {
                suite_text(&mut s, suite);
                writeln!(s, "printed formula mismatches: {}", formula_mismatches.len())
            }
            Report::Lift { lifted, inserted_colours, unique, extension, .. } => {
                writeln!(s, "{lifted}").and_then(|_| writeln!(s, "inserted={inserted_colours:?} unique={unique}")).and_then(
                    |_| match extension {
                        Some(e) => writeln!(s, "extends to {e}"),
                        None => Ok(()),
                    },
                )
            }
            Report::Verify { suites, notes } => {
                suites.iter().for_each(|r| suite_text(&mut s, r));
                notes.iter().try_for_each(|n| writeln!(s, "note: {n}"))
            }
        }
        .expect("writing to a String");
        s
    }
}

fn suite_text(s: &mut String, r: &SuiteReport) {
    let status = if r.passed() { "ok" } else { "FAILED" };
    let _ = writeln!(s, "{}: {status} checked={} failures={}", r.suite, r.checked, r.failures);
    for (k, v) in &r.counts {
        let _ = writeln!(s, "  {k}={v}");
    }
    for c in &r.counterexamples {
        let _ = writeln!(s, "  counterexample: {c}");
    }
}

pub fn counts_csv(rows: &[CountsRow]) -> Result<Vec<u8>, EmitError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    if rows.is_empty() {
        w.write_record(["k", "arities", "bars", "count"])?;
    }
    w.into_inner().map_err(|e| EmitError::Csv(e.into_error().into()))
}
