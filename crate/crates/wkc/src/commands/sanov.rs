//! Random instances of `< H, K | h h^f = h^a h^b >`.

use anyhow::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use wkc_core::abelian::{AbelianGroup, EnumerationMode};
use wkc_core::combinat::random_bijection;
use wkc_core::enumerator::{group_order, EnumerationOptions};
use wkc_core::presentations::build_sanov;

use super::{elementary, Context};
use crate::report::{Check, Outcome};

/// Coset cap for the random instances.
pub const SANOV_CAP: usize = 100_000;

/// `n e^{n-1}` for `n = |H|`, shown next to the observed orders.
pub fn order_bound(n: usize) -> f64 {
    n as f64 * ((n - 1) as f64).exp()
}

/// Identity-fixing table on `0..n` with arbitrary other values.
fn random_table(rng: &mut ChaCha8Rng, n: usize) -> Vec<u32> {
    let mut t: Vec<u32> = (0..n).map(|_| rng.gen_range(0..n as u32)).collect();
    t[0] = 0;
    t
}

pub fn sanov(_ctx: &Context, p: u32, k: usize, count: usize, seed: u64) -> Result<Outcome> {
    let a: AbelianGroup = elementary(p, k)?;
    let n = a.order();
    let ordering = a.ordering(EnumerationMode::GradedLex);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut closed = 0;
    let mut text = String::new();
    for i in 0..count {
        let f = random_bijection(&a, &mut rng);
        let (am, bm) = (random_table(&mut rng, n), random_table(&mut rng, n));
        let pres = build_sanov(&f, &am, &bm)?;
        let result = group_order(&pres, EnumerationOptions::with_max_cosets(SANOV_CAP));
        let shown = match &result {
            Ok(o) => o.to_string(),
            Err(e) => format!("error: {e}"),
        };
        closed += result.is_ok() as usize;
        text.push_str(&format!("{i:>3} f = {:<20} a = {am:?} b = {bm:?} order {shown}\n", f.to_cycle_string(&ordering)));
        rows.push(json!({"f": f.to_cycle_string(&ordering), "a": am, "b": bm, "order": result.as_ref().ok(), "error": result.err().map(|e| e.to_string())}));
    }
    let bound = order_bound(n);
    text.push_str(&format!("n e^(n-1) = {bound:.1} (informational)\n"));
    let checks = vec![Check::equal(format!("instances closing under {SANOV_CAP} cosets"), count, closed)];
    let out = Outcome {
        report: json!({"command": "sanov", "p": p, "k": k, "seed": seed, "cap": SANOV_CAP, "instances": rows, "bound": bound}),
        text,
        checks,
    };
    let text = format!("{}{}", out.text, out.check_lines());
    Ok(Outcome { text, ..out })
}
