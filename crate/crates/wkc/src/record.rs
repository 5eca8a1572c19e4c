//! Result records: one analysed group with the parameters that produced it.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use wkc_core::structure::GroupAnalysis;
use wkc_core::util::format_order;

pub const SCHEMA: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema: u32,
    pub version: String,
    pub construction: String,
    pub params: BTreeMap<String, String>,
    /// Canonical cycle form of the bijection, when there is one.
    pub f: Option<String>,
    pub order: String,
    pub order_value: u64,
    pub class: Option<usize>,
    pub derived_length: Option<usize>,
    pub lcs_quotients: Vec<usize>,
    pub derived_quotients: Vec<usize>,
    pub exponent: u64,
    pub derived_exponent: u64,
    pub center_order: usize,
    pub abelian_invariants: Vec<u64>,
    /// Class of `G/G''`, filled in by the sweep.
    #[serde(default)]
    pub metabelian_class: Option<usize>,
    pub fingerprint: String,
    pub seconds: f64,
}

/// Hash over the invariants only, so two records of isomorphic-looking
/// groups share it regardless of how they were built.
pub fn fingerprint(a: &GroupAnalysis) -> String {
    let text = format!(
        "{}|{:?}|{:?}|{:?}|{:?}|{}|{}|{}|{:?}",
        a.order,
        a.nilpotency_class,
        a.derived_length,
        a.lcs_quotients,
        a.derived_quotients,
        a.exponent,
        a.derived_exponent,
        a.center_order,
        a.abelian_invariants
    );
    let digest = Sha256::digest(text.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

impl ResultRecord {
    pub fn new(construction: &str, params: &[(&str, String)], f: Option<String>, a: &GroupAnalysis, elapsed: Duration) -> Self {
        ResultRecord {
            schema: SCHEMA,
            version: VERSION.into(),
            construction: construction.into(),
            params: params.iter().map(|(k, v)| ((*k).to_string(), v.clone())).collect(),
            f,
            order: format_order(a.order as u128),
            order_value: a.order as u64,
            class: a.nilpotency_class,
            derived_length: a.derived_length,
            lcs_quotients: a.lcs_quotients.clone(),
            derived_quotients: a.derived_quotients.clone(),
            exponent: a.exponent,
            derived_exponent: a.derived_exponent,
            center_order: a.center_order,
            abelian_invariants: a.abelian_invariants.clone(),
            metabelian_class: None,
            fingerprint: fingerprint(a),
            seconds: elapsed.as_secs_f64(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.class.is_some_and(|c| c <= 1)
    }

    /// Copy with timing cleared, for byte comparisons.
    pub fn without_timing(&self) -> Self {
        ResultRecord { seconds: 0.0, ..self.clone() }
    }
}

/// `|G| c d` row text, with `-` for an absent invariant.
pub fn row_text(r: &ResultRecord) -> String {
    let show = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    format!("{:<8} c={:<2} d={:<2}", r.order, show(r.class), show(r.derived_length))
}
