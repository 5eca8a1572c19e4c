//! Parallel analysis of many `G(A;f)` with result caching.
//!
//! Workers receive immutable tasks and return records; only the calling
//! thread touches the cache.

use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::time::Instant;

use anyhow::Result;
use rayon::prelude::*;
use wkc_core::abelian::{EnumerationMode, PointedBijection};
use wkc_core::enumerator::{EnumerationOptions, Strategy};
use wkc_core::presentations::{build_pairs_presentation, PairSet};
use wkc_core::regular::RegularGroup;
use wkc_core::structure::{analyze, check_metabelian_quotient};

use crate::cache::Cache;
use crate::record::ResultRecord;

/// One bijection to analyse, labelled by its canonical cycle string.
#[derive(Clone, Debug)]
pub struct Task {
    pub label: String,
    pub f: PointedBijection,
}

#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    pub mode: EnumerationMode,
    pub jobs: usize,
    pub opts: EnumerationOptions,
}

#[derive(Debug)]
pub struct SweepOutcome {
    /// In task order; errors are kept per item.
    pub records: Vec<Result<ResultRecord, String>>,
    pub enumerations: usize,
    pub cache_hits: usize,
}

/// Enumeration options for `G(A;f)`: HLT with lookahead once `|A| >= 16`,
/// where the groups reach `2^19`.
pub fn options_for(order_of_a: usize, max_cosets: usize) -> EnumerationOptions {
    let opts = EnumerationOptions::with_max_cosets(max_cosets);
    if order_of_a >= 16 {
        opts.with_strategy(Strategy::Hlt)
    } else {
        opts
    }
}

pub fn cache_key(task: &Task, mode: EnumerationMode, opts: &EnumerationOptions) -> String {
    let a = task.f.domain();
    format!("pairs|A={a}|mode={}|f={}|max_cosets={}", mode.name(), task.label, opts.max_cosets)
}

/// Enumerates and analyses `G(A;f)`.
pub fn analyze_bijection(label: &str, f: &PointedBijection, mode: EnumerationMode, opts: EnumerationOptions) -> Result<ResultRecord> {
    let start = Instant::now();
    let pres = build_pairs_presentation(&PairSet::graph(f))?;
    let g = RegularGroup::from_presentation(&pres, opts)?;
    let a = f.domain();
    let params = [("A", a.to_string()), ("mode", mode.name().to_string())];
    let mut rec = ResultRecord::new("pairs", &params, Some(label.to_string()), &analyze(&g), start.elapsed());
    rec.metabelian_class = check_metabelian_quotient(&g, a.order()).quotient_class;
    rec.seconds = start.elapsed().as_secs_f64();
    Ok(rec)
}

pub fn run_sweep(tasks: &[Task], cfg: SweepConfig, cache: Option<&Cache>) -> Result<SweepOutcome> {
    let mut records: Vec<Option<Result<ResultRecord, String>>> = vec![None; tasks.len()];
    let mut pending = Vec::new();
    let mut cache_hits = 0;
    for (i, t) in tasks.iter().enumerate() {
        match cache.and_then(|c| c.load::<ResultRecord>(&cache_key(t, cfg.mode, &cfg.opts))) {
            Some(r) => {
                records[i] = Some(Ok(r));
                cache_hits += 1;
            }
            None => pending.push(i),
        }
    }
    let executed = AtomicUsize::new(0);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs.max(1)).build()?;
    let fresh: Vec<(usize, Result<ResultRecord, String>)> = pool.install(|| {
        pending
            .par_iter()
            .map(|&i| {
                executed.fetch_add(1, AtomicOrdering::Relaxed);
                let t = &tasks[i];
                (i, analyze_bijection(&t.label, &t.f, cfg.mode, cfg.opts).map_err(|e| format!("{e:#}")))
            })
            .collect()
    });
    for (i, r) in fresh {
        if let (Some(c), Ok(rec)) = (cache, &r) {
            if let Err(e) = c.store(&cache_key(&tasks[i], cfg.mode, &cfg.opts), rec) {
                log::warn!("cache store failed: {e:#}");
            }
        }
        records[i] = Some(r);
    }
    Ok(SweepOutcome {
        records: records.into_iter().map(|r| r.expect("every task resolved")).collect(),
        enumerations: executed.into_inner(),
        cache_hits,
    })
}

/// CSV with one row per task.
pub fn to_csv(tasks: &[Task], outcome: &SweepOutcome) -> String {
    let mut out = String::from("f,order,class,derived_length,exponent,center_order,fingerprint,error\n");
    let opt = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());
    for (t, r) in tasks.iter().zip(&outcome.records) {
        match r {
            Ok(r) => out.push_str(&format!(
                "\"{}\",{},{},{},{},{},{},\n",
                t.label,
                r.order,
                opt(r.class),
                opt(r.derived_length),
                r.exponent,
                r.center_order,
                r.fingerprint
            )),
            Err(e) => out.push_str(&format!("\"{}\",,,,,,,\"{}\"\n", t.label, e.replace('"', "'"))),
        }
    }
    out
}
