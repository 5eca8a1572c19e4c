//! Inversion maps of finite fields and the orbit identities behind them.

use anyhow::{bail, Result};
use serde_json::json;
use wkc_core::field::FiniteField;
use wkc_core::fieldlab::{
    anti_additive_check, check_char2, check_power_forms_mod_p, check_power_forms_rational, check_commutator_word, inversion_presentation,
    commutator_word_domain, CheckStatus,
};
use wkc_core::regular::RegularGroup;
use wkc_core::structure::analyze;
use wkc_core::util::{factorize, format_order};

use super::{analysis_json, analysis_text, Context};
use crate::expected::field_inverse;
use crate::report::{Check, Outcome};

pub fn field_of_order(q: u32) -> Result<FiniteField> {
    match factorize(q as u128).as_slice() {
        [(p, k)] => Ok(FiniteField::new(*p as u32, *k as usize)?),
        _ => bail!("{q} is not a prime power"),
    }
}

/// `G(F; x -> 1/x)` on the additive group of `GF(q)`.
pub fn fieldinv(ctx: &Context, q: u32) -> Result<Outcome> {
    let f = field_of_order(q)?;
    let pres = inversion_presentation(&f)?;
    let opts = crate::sweep::options_for(q as usize, ctx.max_cosets);
    let g = RegularGroup::from_presentation(&pres, opts)?;
    let a = analyze(&g);
    let summary = if a.is_abelian() {
        format!("abelian, order {}", format_order(a.order as u128))
    } else {
        format!("order {}, class {}", format_order(a.order as u128), a.nilpotency_class.map_or("-".into(), |c| c.to_string()))
    };
    let mut checks = Vec::new();
    if let Some((order, class)) = field_inverse(q) {
        let expected = match class {
            None => format!("abelian, order {}", format_order(order as u128)),
            Some(c) => format!("order {}, class {c}", format_order(order as u128)),
        };
        checks.push(Check::equal(format!("G(GF({q});inv)"), expected, &summary));
    }
    let anti = anti_additive_check(&f);
    let mut report = json!({
        "command": "fieldinv", "q": q, "summary": summary, "analysis": analysis_json(&a),
        "anti_additive": anti.anti_additive, "anti_additive_predicted": anti.predicted,
    });
    let mut text = format!("GF({q}): {summary}\n{}\n", analysis_text(&a));
    text.push_str(&format!("inversion anti-additive: {} (predicted {})\n", anti.anti_additive, anti.predicted));
    if f.characteristic() == 2 {
        let c2 = check_char2(&f)?;
        report["char2"] = char2_json(&c2);
        text.push_str(&format!(
            "char 2 closed forms {}, orbit lengths {}, non-generating c on {} pairs\n",
            c2.closed_form, c2.orbit_lengths, c2.generator_failures
        ));
    }
    Ok(Outcome { report, text, checks })
}

fn char2_json(c: &wkc_core::fieldlab::Char2Report) -> serde_json::Value {
    json!({
        "field_order": c.field_order, "involutions": c.involutions, "closed_form": c.closed_form,
        "orbit_lengths": c.orbit_lengths, "prime_unit_group": c.prime_unit_group,
        "generator_failures": c.generator_failures, "translate_failures": c.translate_failures, "pass": c.pass(),
    })
}

/// The orbit identities for `alpha: (a,b) -> (a, b + 1/a)` and
/// `beta: (a,b) -> (a + 1/b, b)`.
pub fn suite() -> Result<Outcome> {
    let mut checks = Vec::new();
    let mut report = json!({"command": "fieldlab suite"});

    let rational = check_power_forms_rational(10);
    checks.push(Check::equal("rational closed forms, i <= 10", rational.cases.len(), rational.count(CheckStatus::Pass)));
    let mut wilson = Vec::new();
    for p in [5u32, 7, 11, 13] {
        let r = check_power_forms_mod_p(p, None)?;
        checks.push(Check::new(
            format!("GF({p}) closed forms and Wilson case"),
            "no failures",
            format!("{} pass, {} skipped, {} fail", r.count(CheckStatus::Pass), r.count(CheckStatus::Skipped), r.count(CheckStatus::Fail)),
            r.pass(),
        ));
        wilson.push(json!({"p": p, "pass": r.count(CheckStatus::Pass), "skipped": r.count(CheckStatus::Skipped)}));
    }
    report["mod_p"] = json!(wilson);

    let gf9 = FiniteField::new(3, 2)?;
    let domain = commutator_word_domain(&gf9);
    let (mut pairs, mut failed) = (0, Vec::new());
    for i in -4i64..=4 {
        for j in -4i64..=4 {
            let r = check_commutator_word(&gf9, i, j, &domain)?;
            pairs += r.checked;
            if !r.pass() {
                failed.push(format!("({i},{j})"));
            }
        }
    }
    checks.push(Check::new(
        "GF(9) commutator relations, |i|,|j| <= 4, whole domain",
        "no failures",
        if failed.is_empty() { format!("{pairs} starts") } else { failed.join(" ") },
        failed.is_empty(),
    ));

    let gf8 = check_char2(&FiniteField::new(2, 3)?)?;
    checks.push(Check::equal("GF(8) char 2 identities and generator hypothesis", true, gf8.pass()));
    let gf16 = check_char2(&FiniteField::new(2, 4)?)?;
    checks.push(Check::equal(
        "GF(16) closed forms hold",
        true,
        gf16.involutions && gf16.closed_form && gf16.orbit_lengths,
    ));
    checks.push(Check::new(
        "GF(16) generator hypothesis fails (15 composite)",
        "> 0 non-generating c",
        gf16.generator_failures,
        !gf16.prime_unit_group && gf16.generator_failures > 0,
    ));
    report["gf8"] = char2_json(&gf8);
    report["gf16"] = char2_json(&gf16);
    let out = Outcome { report, text: String::new(), checks };
    Ok(Outcome { text: out.check_lines(), ..out })
}
