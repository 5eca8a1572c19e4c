//! Classification tables for `A_{2,3}`, `A_{2,4}` and `A_{3,3}`.

use std::collections::BTreeMap;

use anyhow::{bail, Result};
use serde_json::json;
use wkc_core::abelian::{EnumerationMode, PointedBijection};

use super::dcosets::{representatives, Action};
use super::{elementary, triple, Context};
use crate::expected::{A23_ROWS, A24_ROWS, A33_ORDER_EXPONENTS};
use crate::record::{row_text, ResultRecord};
use crate::report::{Check, Outcome};
use crate::sweep::{run_sweep, to_csv, SweepOutcome, Task};

fn record_triple(r: &ResultRecord) -> String {
    triple(r.order_value as u128, r.class, r.derived_length)
}

fn listed_tasks(p: u32, k: usize, mode: EnumerationMode, cycles: &[&str]) -> Result<Vec<Task>> {
    let a = elementary(p, k)?;
    let ordering = a.ordering(mode);
    cycles
        .iter()
        .map(|c| Ok(Task { label: (*c).to_string(), f: PointedBijection::from_cycles(&a, &ordering, c)? }))
        .collect()
}

fn rows_json(tasks: &[Task], out: &SweepOutcome) -> Vec<serde_json::Value> {
    tasks
        .iter()
        .zip(&out.records)
        .map(|(t, r)| match r {
            Ok(r) => serde_json::to_value(r).expect("record serializes"),
            Err(e) => json!({"f": t.label, "error": e}),
        })
        .collect()
}

fn rows_text(tasks: &[Task], out: &SweepOutcome) -> String {
    let mut s = String::new();
    for (t, r) in tasks.iter().zip(&out.records) {
        match r {
            Ok(r) => s.push_str(&format!("{:<24} {}\n", t.label, row_text(r))),
            Err(e) => s.push_str(&format!("{:<24} error: {e}\n", t.label)),
        }
    }
    s
}

fn observed(out: &SweepOutcome, i: usize) -> String {
    match &out.records[i] {
        Ok(r) => record_triple(r),
        Err(e) => format!("error: {e}"),
    }
}

pub fn a23(ctx: &Context, mode: EnumerationMode) -> Result<Outcome> {
    let cycles: Vec<&str> = A23_ROWS.iter().map(|r| r.0).collect();
    let tasks = listed_tasks(2, 3, mode, &cycles)?;
    let out = run_sweep(&tasks, ctx.sweep_config(tasks[0].f.domain(), mode), ctx.cache.as_ref())?;
    let checks = A23_ROWS
        .iter()
        .enumerate()
        .map(|(i, &(f, e, c, d))| Check::equal(format!("f = {f}"), triple(1 << e, Some(c), Some(d)), observed(&out, i)))
        .collect();
    Ok(Outcome {
        report: json!({"command": "tables", "which": "a23", "mode": mode.name(), "rows": rows_json(&tasks, &out)}),
        text: rows_text(&tasks, &out),
        checks,
    })
}

/// All five rows under every requested convention. The identity and the
/// transposition rows are compared under each convention; the other three
/// row by row under graded-lex only, with their multisets reported.
pub fn a24(ctx: &Context, modes: &[EnumerationMode]) -> Result<Outcome> {
    let cycles: Vec<&str> = A24_ROWS.iter().map(|r| r.0).collect();
    let expected: Vec<String> = A24_ROWS.iter().map(|&(_, e, c, d)| triple(1u128 << e, Some(c), Some(d))).collect();
    let mut checks = Vec::new();
    let mut per_mode = Vec::new();
    let mut text = String::new();
    for &mode in modes {
        let tasks = listed_tasks(2, 4, mode, &cycles)?;
        let out = run_sweep(&tasks, ctx.sweep_config(tasks[0].f.domain(), mode), ctx.cache.as_ref())?;
        for i in 0..2 {
            checks.push(Check::equal(format!("{} f = {}", mode.name(), cycles[i]), &expected[i], observed(&out, i)));
        }
        if mode == EnumerationMode::GradedLex {
            for i in 2..5 {
                checks.push(Check::equal(format!("{} f = {}", mode.name(), cycles[i]), &expected[i], observed(&out, i)));
            }
        }
        let mut got: Vec<String> = (2..5).map(|i| observed(&out, i)).collect();
        got.sort();
        text.push_str(&format!("[{}]\n{}", mode.name(), rows_text(&tasks, &out)));
        per_mode.push(json!({"mode": mode.name(), "rows": rows_json(&tasks, &out), "remaining_multiset": got}));
    }
    let mut want: Vec<String> = expected[2..].to_vec();
    want.sort();
    Ok(Outcome {
        report: json!({"command": "tables", "which": "a24", "conventions": per_mode, "expected_remaining_multiset": want}),
        text,
        checks,
    })
}

/// Aggregate facts over a classification of `A_{3,3}`.
pub fn a33_checks(records: &[ResultRecord], count: u128) -> Vec<Check> {
    let exps: Vec<u32> = records.iter().map(|r| r.order_value.ilog(3)).collect();
    let allowed = exps.iter().all(|e| A33_ORDER_EXPONENTS.contains(e)) && records.iter().all(|r| 3u64.pow(r.order_value.ilog(3)) == r.order_value);
    let mut hist: BTreeMap<String, usize> = BTreeMap::new();
    for r in records {
        *hist.entry(r.order.clone()).or_default() += 1;
    }
    let top = records.iter().filter(|r| r.order_value == 3u64.pow(9)).count();
    let nonabelian_class2 = records.iter().filter(|r| !r.is_abelian()).all(|r| r.class == Some(2));
    let small_abelian = records.iter().filter(|r| r.order_value == 729).all(|r| r.is_abelian());
    vec![
        Check::equal("representatives", 252, count),
        Check::new("orders within 3^6..3^9", "3^6, 3^7, 3^8, 3^9", format!("{hist:?}"), allowed),
        Check::equal("groups of order 3^9", 1, top),
        Check::equal("non-abelian groups have class 2", true, nonabelian_class2),
        Check::equal("groups of order 3^6 are abelian", true, small_abelian),
    ]
}

/// Classification over all double-coset representatives of `A_{p,k}`;
/// `A_{2,4}` needs `stretch`.
pub fn classify(ctx: &Context, p: u32, k: usize, mode: EnumerationMode, stretch: bool) -> Result<(Outcome, String)> {
    if p == 2 && k >= 4 && !stretch {
        bail!("classifying A_{{2,{k}}} needs representative enumeration beyond the default index cap; pass --stretch");
    }
    let action = Action::new(p, k, mode)?;
    let list = representatives(ctx, &action)?;
    let tasks: Vec<Task> = list.permutations()?.iter().map(|q| action.task(q)).collect::<Result<_>>()?;
    let out = run_sweep(&tasks, ctx.sweep_config(&action.a, mode), ctx.cache.as_ref())?;
    let ok: Vec<ResultRecord> = out.records.iter().filter_map(|r| r.as_ref().ok().cloned()).collect();
    let mut checks = Vec::new();
    let failed = out.records.len() - ok.len();
    checks.push(Check::equal("analyses completed", out.records.len(), ok.len()));
    if (p, k) == (3, 3) {
        checks.extend(a33_checks(&ok, list.count));
    }
    let mut hist: BTreeMap<String, usize> = BTreeMap::new();
    for r in &ok {
        *hist.entry(format!("{} c={:?} d={:?}", r.order, r.class, r.derived_length)).or_default() += 1;
    }
    let mut text = format!("{} representatives under {}; {} enumerations, {} cached, {failed} failed\n", list.count, list.group, out.enumerations, out.cache_hits);
    for (k, v) in &hist {
        text.push_str(&format!("{v:>5}  {k}\n"));
    }
    let csv = to_csv(&tasks, &out);
    Ok((
        Outcome {
            report: json!({
                "command": "classify", "p": p, "k": k, "mode": mode.name(), "group": list.group,
                "count": list.count.to_string(), "enumerations": out.enumerations, "cache_hits": out.cache_hits,
                "records": rows_json(&tasks, &out),
            }),
            text,
            checks,
        },
        csv,
    ))
}

pub fn a33(ctx: &Context, mode: EnumerationMode) -> Result<Outcome> {
    Ok(classify(ctx, 3, 3, mode, false)?.0)
}
