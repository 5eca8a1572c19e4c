//! One function per command. Each returns an [`Outcome`] whose checks decide
//! the exit status; the acceptance suite calls the same functions.

pub mod combinat;
pub mod dcosets;
pub mod fields;
pub mod groups;
pub mod matrix;
pub mod sanov;
pub mod tables;

use anyhow::{bail, Result};
use wkc_core::abelian::{AbelianGroup, EnumerationMode};
use wkc_core::enumerator::DEFAULT_MAX_COSETS;
use wkc_core::doublecosets::DEFAULT_INDEX_CAP;
use wkc_core::structure::GroupAnalysis;
use wkc_core::util::format_order;

use crate::cache::Cache;
use crate::sweep::{options_for, SweepConfig};

/// Settings shared by all commands.
#[derive(Clone, Debug)]
pub struct Context {
    pub jobs: usize,
    pub cache: Option<Cache>,
    pub max_cosets: usize,
    pub index_cap: u128,
}

impl Default for Context {
    fn default() -> Self {
        Context { jobs: 1, cache: None, max_cosets: DEFAULT_MAX_COSETS, index_cap: DEFAULT_INDEX_CAP }
    }
}

impl Context {
    pub fn sweep_config(&self, a: &AbelianGroup, mode: EnumerationMode) -> SweepConfig {
        SweepConfig { mode, jobs: self.jobs, opts: options_for(a.order(), self.max_cosets) }
    }
}

pub fn elementary(p: u32, k: usize) -> Result<AbelianGroup> {
    if k == 0 {
        bail!("rank must be positive");
    }
    Ok(AbelianGroup::elementary(p, k)?)
}

/// `order c d` summary used in checks, e.g. `2^10 3 2`.
pub fn triple(order: u128, class: Option<usize>, derived: Option<usize>) -> String {
    let show = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    format!("{} {} {}", format_order(order), show(class), show(derived))
}

pub fn analysis_json(a: &GroupAnalysis) -> serde_json::Value {
    serde_json::json!({
        "order": format_order(a.order as u128),
        "order_value": a.order,
        "class": a.nilpotency_class,
        "derived_length": a.derived_length,
        "lcs_quotients": a.lcs_quotients,
        "derived_quotients": a.derived_quotients,
        "exponent": a.exponent,
        "derived_exponent": a.derived_exponent,
        "center_order": a.center_order,
        "abelian_invariants": a.abelian_invariants,
        "fingerprint": crate::record::fingerprint(a),
    })
}

pub fn analysis_text(a: &GroupAnalysis) -> String {
    format!(
        "order {}  class {}  derived length {}  exponent {}  |G'| exponent {}  |Z| {}  G/G' {:?}",
        format_order(a.order as u128),
        a.nilpotency_class.map_or("-".into(), |c| c.to_string()),
        a.derived_length.map_or("-".into(), |c| c.to_string()),
        a.exponent,
        a.derived_exponent,
        a.center_order,
        a.abelian_invariants
    )
}
