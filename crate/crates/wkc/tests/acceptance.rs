//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Exit status is 0 when every criterion passes or fails only on a
//! documented deviation (listed in `DOCUMENTED`); `ACCEPTANCE_STRICT=1`
//! makes any FAIL fatal. `ACCEPTANCE_ONLY=1,5` runs a subset.

use std::time::{Duration, Instant};

use anyhow::Result;
use wkc::commands::{self, dcosets, fields, groups, groups::Instance, matrix, sanov, tables, Context};
use wkc::expected::A23_ROWS;
use wkc::report::{Check, Outcome};
use wkc_core::abelian::EnumerationMode;

/// Checks known to disagree with the reference values, with the reason.
const DOCUMENTED: [(usize, &str, &str); 3] = [
    (5, "graded-lex f = (15,16)", "transposition row computes as class 5; see decisions ledger"),
    (5, "plain-lex f = (15,16)", "transposition row computes as class 5; see decisions ledger"),
    (6, "G(GF(27);inv)", "GF(27) inverse group has order 3^8 and class 2; see decisions ledger"),
];

fn timed(name: &str, limit: Duration, start: Instant) -> Check {
    let took = start.elapsed();
    Check::new(format!("{name} time"), format!("< {:.0?}", limit), format!("{took:.2?}"), took < limit)
}

fn merge(outs: Vec<Outcome>) -> Vec<Check> {
    outs.into_iter().flat_map(|o| o.checks).collect()
}

fn c1(_: &Context) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (p, k, secs) in [(2, 3, 1), (3, 3, 1), (2, 4, 30)] {
        let start = Instant::now();
        checks.extend(dcosets::count(p, k)?.checks);
        checks.push(timed(&format!("A_{{{p},{k}}} count"), Duration::from_secs(secs), start));
    }
    Ok(checks)
}

fn c2(ctx: &Context) -> Result<Vec<Check>> {
    let start = Instant::now();
    let mut checks = tables::a23(ctx, EnumerationMode::GradedLex)?.checks;
    checks.push(timed("four rows", Duration::from_secs(60), start));
    Ok(checks)
}

fn c3(ctx: &Context) -> Result<Vec<Check>> {
    let mode = EnumerationMode::GradedLex;
    let out = dcosets::reps(ctx, 2, 3, mode)?;
    let mut checks = out.checks.clone();
    let reps: Vec<String> = out.report["list"]["representatives"]
        .as_array()
        .map(|v| v.iter().filter_map(|x| x.as_str().map(str::to_string)).collect())
        .unwrap_or_default();
    checks.push(Check::equal("representatives listed", 4, reps.len()));
    let same = |f: &str, g: &str| -> Result<bool> {
        Ok(dcosets::same(2, 3, mode, f, g)?.report["same"].as_bool().unwrap_or(false))
    };
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            checks.push(Check::equal(format!("{} vs {} inequivalent", reps[i], reps[j]), false, same(&reps[i], &reps[j])?));
        }
    }
    for (listed, ..) in A23_ROWS {
        let hits = reps.iter().map(|r| same(r, listed)).collect::<Result<Vec<bool>>>()?;
        checks.push(Check::equal(format!("{listed} matches one representative"), 1, hits.iter().filter(|&&h| h).count()));
    }
    Ok(checks)
}

fn c4(ctx: &Context) -> Result<Vec<Check>> {
    let ctx = Context { jobs: ctx.jobs.max(4), ..ctx.clone() };
    let start = Instant::now();
    let mut checks = tables::a33(&ctx, EnumerationMode::GradedLex)?.checks;
    checks.push(timed("252 analyses", Duration::from_secs(30 * 60), start));
    Ok(checks)
}

fn c5(ctx: &Context) -> Result<Vec<Check>> {
    let out = tables::a24(ctx, &[EnumerationMode::GradedLex, EnumerationMode::PlainLex])?;
    let mut checks = out.checks.clone();
    for conv in out.report["conventions"].as_array().into_iter().flatten() {
        let mode = conv["mode"].as_str().unwrap_or("?");
        println!("    {mode} remaining (c,d) multiset: {}", conv["remaining_multiset"]);
        for row in conv["rows"].as_array().into_iter().flatten() {
            if let Some(s) = row["seconds"].as_f64() {
                let f = row["f"].as_str().unwrap_or("?");
                checks.push(Check::new(format!("{mode} f = {f} enumeration time"), "<= 900 s", format!("{s:.1} s"), s <= 900.0));
            }
        }
    }
    println!("    expected remaining multiset: {}", out.report["expected_remaining_multiset"]);
    Ok(checks)
}

fn c6(ctx: &Context) -> Result<Vec<Check>> {
    Ok(merge([8, 16, 27, 5, 7, 11].iter().map(|&q| fields::fieldinv(ctx, q)).collect::<Result<_>>()?))
}

fn c7(ctx: &Context) -> Result<Vec<Check>> {
    Ok(groups::example1(ctx, 3)?.checks)
}

fn c8(ctx: &Context) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for k in [3, 4] {
        checks.extend(groups::extension(ctx, k)?.checks.into_iter().map(|c| Check { name: format!("k = {k}: {}", c.name), ..c }));
    }
    let all = [Instance::Chi(3), Instance::Chi(4), Instance::Toy(false), Instance::Toy(true)];
    checks.extend(groups::extension_theorems(ctx, &all)?.checks);
    Ok(checks)
}

fn c9(ctx: &Context) -> Result<Vec<Check>> {
    let outs = [3, 4].iter().map(|&k| groups::transposition(ctx, k)).collect::<Result<Vec<_>>>()?;
    for o in &outs {
        print!("{}", o.text.lines().map(|l| format!("    {l}\n")).collect::<String>());
    }
    Ok(merge(outs))
}

fn c10(ctx: &Context) -> Result<Vec<Check>> {
    Ok(groups::metab(ctx)?.checks)
}

fn c11(ctx: &Context) -> Result<Vec<Check>> {
    Ok(groups::chi_reduction(ctx)?.checks)
}

fn c12(ctx: &Context) -> Result<Vec<Check>> {
    let start = Instant::now();
    let rep = wkc_core::polymat::verify_representation()?;
    let mut checks = vec![timed("matrix identities", Duration::from_secs(1), start)];
    checks.extend(matrix::verify_matrix(ctx)?.checks);
    checks.push(Check::equal("all matrix identities", true, rep.pass()));
    Ok(checks)
}

fn c13(ctx: &Context) -> Result<Vec<Check>> {
    Ok(commands::combinat::suite(ctx, 1000, 0)?.checks)
}

fn c14(_: &Context) -> Result<Vec<Check>> {
    Ok(fields::suite()?.checks)
}

fn c15(ctx: &Context) -> Result<Vec<Check>> {
    let out = sanov::sanov(ctx, 2, 2, 20, 0)?;
    let orders: Vec<String> = out.report["instances"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|r| r["order"].as_u64().map_or("-".into(), |o| o.to_string()))
        .collect();
    println!("    orders: {}  (n e^(n-1) = {:.1}, informational)", orders.join(" "), sanov::order_bound(4));
    Ok(out.checks)
}

type Criterion = (usize, &'static str, fn(&Context) -> Result<Vec<Check>>);

const CRITERIA: [Criterion; 15] = [
    (1, "double-coset counts 4 / 252 / 3374", c1),
    (2, "A_{2,3} table under graded-lex", c2),
    (3, "A_{2,3} representatives match the listed four", c3),
    (4, "A_{3,3} aggregate classification", c4),
    (5, "A_{2,4} spot checks under both conventions", c5),
    (6, "field-inverse groups", c6),
    (7, "six-relator group over A_{3,3}", c7),
    (8, "rank-k extension and theorem checkers", c8),
    (9, "transposition against chi(A_{2,k})", c9),
    (10, "class(G/G'') <= |A|", c10),
    (11, "chi reduction", c11),
    (12, "affine matrix representation", c12),
    (13, "combinatorial property suite", c13),
    (14, "field orbit identities", c14),
    (15, "generalized presentation instances", c15),
];

fn main() {
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let only: Option<Vec<usize>> = std::env::var("ACCEPTANCE_ONLY").ok().map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let cache_dir = tempfile::tempdir().expect("temporary cache directory");
    let ctx = Context {
        jobs: std::thread::available_parallelism().map_or(4, |n| n.get()).clamp(1, 8),
        cache: Some(wkc::cache::Cache::new(cache_dir.path()).expect("cache")),
        ..Context::default()
    };
    let mut fatal = 0;
    let mut failed = 0;
    let total = Instant::now();
    for (n, title, run) in CRITERIA {
        if only.as_ref().is_some_and(|o| !o.contains(&n)) {
            continue;
        }
        let start = Instant::now();
        let result = run(&ctx);
        let took = start.elapsed();
        match result {
            Ok(checks) => {
                let bad: Vec<&Check> = checks.iter().filter(|c| !c.pass).collect();
                let mut reasons: Vec<&str> = bad
                    .iter()
                    .map(|c| DOCUMENTED.iter().find(|d| d.0 == n && d.1 == c.name).map(|d| d.2))
                    .collect::<Option<Vec<_>>>()
                    .unwrap_or_default();
                if bad.is_empty() {
                    println!("PASS criterion {n:>2}: {title} [{} checks, {took:.1?}]", checks.len());
                } else {
                    failed += 1;
                    let documented = reasons.len() == bad.len();
                    reasons.dedup();
                    if documented {
                        println!("FAIL criterion {n:>2}: {title} [{took:.1?}] (documented deviation: {})", reasons.join("; "));
                    } else {
                        fatal += 1;
                        println!("FAIL criterion {n:>2}: {title} [{took:.1?}]");
                    }
                    for c in bad {
                        println!("    {}: expected {}, observed {}", c.name, c.expected, c.observed);
                    }
                }
            }
            Err(e) => {
                failed += 1;
                fatal += 1;
                println!("FAIL criterion {n:>2}: {title} [{took:.1?}] error: {e:#}");
            }
        }
    }
    println!("acceptance: {failed} failing, {fatal} undocumented, {:.1?} total", total.elapsed());
    if fatal > 0 || (strict && failed > 0) {
        std::process::exit(1);
    }
}
