//! The affine representation of `chi(A_{2,3}, S; 2)` and a finite-quotient
//! cross-check of the kernel.

use anyhow::Result;
use serde_json::json;
use wkc_core::abelian::AbelianGroup;
use wkc_core::enumerator::{EnumerationOptions, Strategy};
use wkc_core::polymat::{verify_representation, xi_word};
use wkc_core::presentations::{build_pairs_presentation, Expr, GroupWord, PairSet, Presentation};
use wkc_core::regular::RegularGroup;
use wkc_core::util::format_order;

use super::Context;
use crate::report::{Check, Outcome};

/// `|chi(A_{2,3})| * 3^4`: the kernel is free abelian of rank 4, so adding
/// `xi^3` leaves `K/3K` of order `3^4`.
pub const CUBED_QUOTIENT_ORDER: u128 = 1024 * 81;

/// `chi(A_{2,3}, S; 2)` with `xi^3` added.
pub fn cubed_quotient() -> Result<Presentation> {
    let a = AbelianGroup::elementary(2, 3)?;
    let basis: Vec<_> = (0..3).map(|i| a.generator(i)).collect();
    let base = build_pairs_presentation(&PairSet::chi(&a, &basis, 2)?)?;
    let mut relators = base.relators.clone();
    relators.push(Expr::from_word(&xi_word().pow(3)));
    Ok(Presentation::new(base.generators.clone(), relators)?)
}

const GROUPS: [&str; 6] = ["affine", "relators", "xi", "action", "rank", "table"];

pub fn verify_matrix(ctx: &Context) -> Result<Outcome> {
    let rep = verify_representation()?;
    let mut checks: Vec<Check> = GROUPS
        .iter()
        .filter(|g| rep.checks.iter().any(|c| c.group == **g))
        .map(|g| {
            let n = rep.checks.iter().filter(|c| c.group == *g).count();
            let bad: Vec<&str> = rep.checks.iter().filter(|c| c.group == *g && !c.pass).map(|c| c.identity.as_str()).collect();
            Check::new(format!("{g} identities"), format!("{n} hold"), if bad.is_empty() { format!("{n} hold") } else { bad.join("; ") }, bad.is_empty())
        })
        .collect();
    let others = rep.checks.iter().filter(|c| !GROUPS.contains(&c.group));
    for c in others {
        checks.push(Check::equal(c.identity.clone(), true, c.pass));
    }

    // word-level: in the finite quotient by 3K, psi inverts xi
    let pres = cubed_quotient()?;
    let opts = EnumerationOptions::with_max_cosets(ctx.max_cosets).with_strategy(Strategy::Hlt);
    let g = RegularGroup::from_presentation(&pres, opts)?;
    let xi = xi_word();
    let swap: Vec<GroupWord> = (0..6).map(|i| GroupWord::letter((i + 3) % 6, 1)).collect();
    let xe = g.evaluate(&xi);
    let swapped = g.evaluate(&xi.substitute(&swap));
    checks.push(Check::equal("|G / 3K|", format_order(CUBED_QUOTIENT_ORDER), format_order(g.order() as u128)));
    checks.push(Check::equal("xi has order 3 in G / 3K", 3, g.element_order(xe)));
    checks.push(Check::equal("xi^psi = xi^-1 in G / 3K", true, swapped == g.inv(xe)));

    let identities: Vec<_> = rep.checks.iter().map(|c| json!({"group": c.group, "identity": c.identity, "pass": c.pass})).collect();
    let report = json!({
        "command": "verify-matrix",
        "identities": identities,
        "xi_translation": rep.xi_translation.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "rank_certificate": rep.rank_certificate.to_string(),
        "cubed_quotient_order": g.order(),
    });
    let out = Outcome {
        report,
        text: format!(
            "xi translation ({})\nrank certificate {}\n",
            rep.xi_translation.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "),
            rep.rank_certificate
        ),
        checks,
    };
    let text = format!("{}{}", out.text, out.check_lines());
    Ok(Outcome { text, ..out })
}
