//! Acceptance run: one PASS/FAIL line per criterion, with timings.
//!
//! Criteria listed in `KNOWN_FAILURES` are expected to fail; the run exits
//! non-zero only when the set of failing criteria differs from that list
//! by a new failure.

use std::collections::BTreeSet;
use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use latticepath::cache;
use latticepath::cli::{run, Cli};
use latticepath::sample;
use latticepath::verify::{self, SuiteReport};
use latticepath_core::label::{parse_labels, underlying_graph};
use latticepath_core::lift::lift_identity;
use latticepath_core::nerve::leq;
use latticepath_core::{generate, join, proper_labellings, CutTuple, Digraph, Label, PathOp};

/// Uniqueness of `C`-insertion lifts at level 3 does not hold for the
/// generated `Ĥ_3`; see the lift suite output.
const KNOWN_FAILURES: &[u32] = &[13];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn op(s: &str) -> PathOp {
    PathOp::parse(s).expect("valid operation")
}

fn cuts(p: &[usize]) -> CutTuple {
    CutTuple::new(p.to_vec()).expect("increasing")
}

fn summary(r: &SuiteReport) -> String {
    let counts: Vec<String> = r.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut s = format!("{} checked={} failures={}", r.suite, r.checked, r.failures);
    if !counts.is_empty() {
        s += &format!(" [{}]", counts.join(" "));
    }
    if let Some(c) = r.counterexamples.first() {
        s += &format!(" first: {c}");
    }
    s
}

fn c1() -> Outcome {
    let got = op("1|12|21").compose(&[op("213|13|23"), op("122|211")]).map(|z| z.to_string());
    Outcome::new(got.as_deref() == Ok("213|13455|54423"), format!("{got:?}"))
}

fn c2() -> Outcome {
    let got = join(&op("1|1212|2|2"), &cuts(&[2]), &op("1|12|2|2|21"), &cuts(&[3]), 3).map(|z| z.result.to_string());
    Outcome::new(got.as_deref() == Ok("1|12123|34|42|24|43"), format!("{got:?}"))
}

fn c3() -> Outcome {
    let c = op("1|1|1|323").complexity();
    let ids = (0..8).all(|n| PathOp::identity(n).complexity() == 0);
    let g = underlying_graph(&op("12321434"), 3);
    let want = Digraph::from_edges(4, [(0, 2), (1, 2), (2, 3)]).expect("valid edges");
    Outcome::new(c == 2 && ids && g == want, format!("complexity={c} identities_zero={ids} edges={g}"))
}

fn c4() -> Outcome {
    let r = verify::operad_laws(2024, 200, 12);
    Outcome::new(r.passed() && r.checked == 800, summary(&r))
}

fn c5() -> Outcome {
    let mut all = SuiteReport::new("filtration");
    for m in 1..=3 {
        all.absorb(verify::filtration(m, 10));
    }
    Outcome::new(all.passed() && all.checked > 0, summary(&all))
}

fn c6() -> Outcome {
    let mut all = SuiteReport::new("containment");
    for m in 1..=3 {
        match generate(m, 10) {
            Ok(t) => all.absorb(verify::containment(&t)),
            Err(e) => all.fail(format!("generate({m}, 10): {e}")),
        }
    }
    Outcome::new(all.passed(), summary(&all))
}

fn c7() -> Outcome {
    match generate(2, 8) {
        Ok(t) => {
            let r = verify::trees(&t, 8);
            Outcome::new(r.passed() && r.counts.get("count-groups").copied().unwrap_or(0) > 0, summary(&r))
        }
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn axiom_runs() -> Vec<(usize, Result<verify::AxiomRun, String>)> {
    (1..=4)
        .map(|m| {
            let run = generate(m, 9)
                .map_err(|e| e.to_string())
                .and_then(|t| verify::axioms(&t, 17, 100).map_err(|e| e.to_string()));
            (m, run)
        })
        .collect()
}

fn c8() -> Outcome {
    let mut all = SuiteReport::new("axioms");
    for (m, run) in axiom_runs() {
        match run {
            Ok(run) => {
                let r = verify::axiom_suite(&run, m);
                let assoc = r.counts.get("associativity").copied().unwrap_or(0);
                let inter = r.counts.get("interchange").copied().unwrap_or(0);
                if assoc != 100 || (m % 2 == 0 && inter != 100) {
                    all.fail(format!("m={m}: only {assoc} associativity and {inter} interchange instances"));
                }
                all.absorb(r);
            }
            Err(e) => all.fail(format!("m={m}: {e}")),
        }
    }
    Outcome::new(all.passed(), summary(&all))
}

fn c9() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (m, run) in axiom_runs() {
        match run {
            Ok(run) => {
                let f = &run.formulas;
                ok &= run.report.is_clean() && f.closed_form_agree == f.compared;
                parts.push(format!(
                    "m={m}: compared={} printed_agree={} closed_form_agree={}",
                    f.compared, f.printed_agree, f.closed_form_agree
                ));
                for mm in f.mismatches.iter().take(2) {
                    parts.push(format!(
                        "  printed {} {}: transported {:?} printed {:?}",
                        mm.diagram, mm.tuple, mm.transported, mm.printed
                    ));
                }
            }
            Err(e) => {
                ok = false;
                parts.push(format!("m={m}: {e}"));
            }
        }
    }
    Outcome::new(ok, parts.join("\n      "))
}

fn c10() -> Outcome {
    let star = Digraph::parse_edges("2>1,2>3", 3).expect("valid edges");
    let got: BTreeSet<String> =
        proper_labellings(&star).iter().map(|l| latticepath_core::label::labels_to_string(l)).collect();
    let want: BTreeSet<String> = ["AAB", "CAB", "AAC", "BBB", "BCB", "BAB", "CAC", "AAA", "BAC", "CAA", "BAA"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let arrows = [("BAB", "CAC"), ("AAA", "CAA"), ("BBB", "BCB")]
        .iter()
        .all(|(a, b)| leq(&parse_labels(a).expect("labels"), &parse_labels(b).expect("labels")) == Ok(true));
    Outcome::new(got == want && arrows, format!("objects={} arrows={arrows}", got.len()))
}

fn c11() -> Outcome {
    let r = verify::nerves(4);
    Outcome::new(r.passed(), summary(&r))
}

fn c12() -> Outcome {
    match generate(3, 8) {
        Ok(t) => {
            let r = verify::lifting_graphs(&t, 99, 100);
            Outcome::new(r.passed() && r.checked == 100, summary(&r))
        }
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn c13() -> Outcome {
    let a = lift_identity(3, Label::A, 3).map(|r| r.lifted.op.to_string());
    let b = lift_identity(3, Label::B, 3).map(|r| r.lifted.op.to_string());
    let strings = a.as_deref() == Ok("12|213|314|41432") && b.as_deref() == Ok("23414|413|312|21");
    let mut parts = vec![format!("lift_identity A={a:?} B={b:?}")];
    let mut ok = strings;
    for m in 1..=3 {
        let r = generate(m, 8).map_err(|e| e.to_string()).and_then(|t| verify::lifts(&t, 8).map_err(|e| e.to_string()));
        match r {
            Ok(r) => {
                ok &= r.passed();
                parts.push(format!("m={m}: {}", summary(&r)));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("m={m}: {e}"));
            }
        }
    }
    Outcome::new(ok, parts.join("\n      "))
}

fn c14() -> Outcome {
    match generate(2, 8) {
        Ok(t) => {
            let (r, disagreements) = verify::circ(&t, 8);
            let mut detail = summary(&r);
            for d in disagreements.iter().take(3) {
                detail += &format!("\n      B-insertion disagrees: {d}");
            }
            Outcome::new(r.passed() && r.checked > 0, detail)
        }
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn cli_bytes(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let cli = Cli::try_parse_from(args).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    let code = run(&cli, &mut out).map_err(|e| e.to_string())?;
    Ok((code, out))
}

fn c15() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    let t = match generate(3, 8) {
        Ok(t) => t,
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    let mut texts = 0;
    t.for_each_member(|o| {
        texts += 1;
        let general = PathOp::parse(&o.to_general()).ok();
        let compact = o.to_compact().ok().map(|c| PathOp::parse(&c).ok());
        ok &= general.as_ref() == Some(o) && compact.is_none_or(|c| c.as_ref() == Some(o));
    });
    notes.push(format!("round-trips={texts}"));

    let dir = tempfile::tempdir().expect("temporary directory");
    let fixpoint = (|| -> Result<bool, String> {
        let path = cache::save(&t, dir.path()).map_err(|e| e.to_string())?;
        let written = fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let mut loaded = cache::load(dir.path(), 3, 8).map_err(|e| e.to_string())?.ok_or("missing cache")?;
        let same = loaded == t && cache::render(&loaded) == written;
        let added = loaded.close();
        let (again, source) = cache::load_or_generate(dir.path(), 3, 8).map_err(|e| e.to_string())?;
        Ok(same && added == 0 && source == cache::Source::Loaded && again.representatives().eq(t.representatives()))
    })();
    notes.push(format!("cache fixpoint={fixpoint:?}"));
    ok &= fixpoint == Ok(true);

    let cache_dir = dir.path().to_str().expect("utf-8 path");
    let runs: [&[&str]; 3] = [
        &[
            "latticepath",
            "--seed",
            "5",
            "--format",
            "json",
            "verify",
            "--suite",
            "operad-laws",
            "--instances",
            "50",
            "--max-tokens",
            "12",
        ],
        &[
            "latticepath",
            "--seed",
            "5",
            "--cache-dir",
            cache_dir,
            "--format",
            "json",
            "check-axioms",
            "-m",
            "2",
            "-b",
            "7",
        ],
        &["latticepath", "--cache-dir", cache_dir, "--format", "csv", "counts", "-m", "2", "-b", "7"],
    ];
    for args in runs {
        let first = cli_bytes(args);
        let second = cli_bytes(args);
        let same = first.is_ok() && first == second;
        ok &= same;
        notes.push(format!("{} rerun identical={same}", args[args.len() - 5..].join(" ")));
    }
    let samples = |seed| -> Vec<(PathOp, Vec<PathOp>)> {
        let mut r = sample::rng(seed);
        (0..100).map(|_| sample::composable(&mut r, 12)).collect()
    };
    let same_corpus = samples(3) == samples(3);
    ok &= same_corpus;
    notes.push(format!("seeded corpus identical={same_corpus}"));
    Outcome::new(ok, notes.join(" "))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    check: fn() -> Outcome,
}

fn main() -> ExitCode {
    let ms = Duration::from_millis;
    let s = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "composition fidelity", limit: ms(1), check: c1 },
        Criterion { id: 2, name: "join fidelity", limit: ms(1), check: c2 },
        Criterion { id: 3, name: "complexity and graphs", limit: ms(1), check: c3 },
        Criterion { id: 4, name: "operad laws", limit: s(10), check: c4 },
        Criterion { id: 5, name: "filtration closure", limit: s(60), check: c5 },
        Criterion { id: 6, name: "generated tables lie in the filtration", limit: s(120), check: c6 },
        Criterion { id: 7, name: "level-2 tree correspondence", limit: s(60), check: c7 },
        Criterion { id: 8, name: "axioms of complexity m", limit: s(60), check: c8 },
        Criterion { id: 9, name: "reindexing transport", limit: s(10), check: c9 },
        Criterion { id: 10, name: "labelling category of the star", limit: ms(1), check: c10 },
        Criterion { id: 11, name: "nerves of small acyclic digraphs", limit: s(300), check: c11 },
        Criterion { id: 12, name: "lifting graphs are acyclic", limit: s(5), check: c12 },
        Criterion { id: 13, name: "C-insertion lifts", limit: s(300), check: c13 },
        Criterion { id: 14, name: "level-2 bimodule predicate", limit: s(60), check: c14 },
        Criterion { id: 15, name: "plumbing", limit: s(10), check: c15 },
    ];

    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.check)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.limit;
        let pass = outcome.pass && in_time;
        let status = if pass { "PASS" } else { "FAIL" };
        let timing = if in_time { String::new() } else { format!(" over limit {:?}", c.limit) };
        println!("{status} {:>2} {} ({elapsed:.2?}{timing})", c.id, c.name);
        println!("      {}", outcome.detail);
        if !pass {
            failed.push(c.id);
        }
    }

    let unexpected: Vec<u32> = failed.iter().copied().filter(|id| !KNOWN_FAILURES.contains(id)).collect();
    println!(
        "{} of {} criteria pass; failing: {failed:?}; known failures: {KNOWN_FAILURES:?}",
        criteria.len() - failed.len(),
        criteria.len()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
