//! Extensions, theorem checkers, chi reductions and the rank-3 example.

use anyhow::{bail, Result};
use serde_json::json;
use wkc_core::abelian::{AbelianGroup, EnumerationMode, PointedBijection};
use wkc_core::enumerator::EnumerationOptions;
use wkc_core::error::Error as CoreError;
use wkc_core::fieldlab::{classify_extension_orbits, OrbitType};
use wkc_core::presentations::{
    build_pairs_presentation, chi_extension_spec, cyclic_toy_extension_spec, GroupWord, PairSet,
};
use wkc_core::regular::RegularGroup;
use wkc_core::structure::{
    analyze, check_copy_identities, check_extension_theorem, check_rank_theorem, derived_generator_census,
    ExtensionInstance, TheoremReport,
};
use wkc_core::util::format_order;

use super::{analysis_json, analysis_text, elementary, triple, Context};
use crate::record::ResultRecord;
use crate::report::{Check, Outcome};
use crate::sweep::{options_for, run_sweep, Task};

/// `2^{2^k + k - 1}`, the order of `chi(A_{2,k})`.
pub fn chi_order(k: usize) -> u128 {
    1u128 << ((1usize << k) + k - 1)
}

/// Runs the listed bijections through the cached sweep, failing on the
/// first error.
fn records(ctx: &Context, a: &AbelianGroup, mode: EnumerationMode, fs: Vec<(String, PointedBijection)>) -> Result<Vec<ResultRecord>> {
    let tasks: Vec<Task> = fs.into_iter().map(|(label, f)| Task { label, f }).collect();
    let out = run_sweep(&tasks, ctx.sweep_config(a, mode), ctx.cache.as_ref())?;
    out.records
        .into_iter()
        .zip(&tasks)
        .map(|(r, t)| r.map_err(|e| anyhow::anyhow!("{}: {e}", t.label)))
        .collect()
}

fn identity_task(a: &AbelianGroup) -> (String, PointedBijection) {
    ("()".to_string(), PointedBijection::identity(a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Instance {
    Chi(usize),
    /// `C_4` over `C_2`; the flag selects the swapping `gamma`.
    Toy(bool),
}

impl Instance {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "toy" => Ok(Instance::Toy(false)),
            "toy-swap" => Ok(Instance::Toy(true)),
            _ => match s.strip_prefix("chi").map(str::parse::<usize>) {
                Some(Ok(k)) if k >= 2 => Ok(Instance::Chi(k)),
                _ => bail!("unknown instance {s:?}; expected chiK (K >= 2), toy or toy-swap"),
            },
        }
    }

    pub fn name(self) -> String {
        match self {
            Instance::Chi(k) => format!("chi{k}"),
            Instance::Toy(false) => "toy".into(),
            Instance::Toy(true) => "toy-swap".into(),
        }
    }

    fn options(self, ctx: &Context) -> EnumerationOptions {
        match self {
            Instance::Chi(k) => options_for(1 << k, ctx.max_cosets),
            Instance::Toy(_) => EnumerationOptions::with_max_cosets(ctx.max_cosets),
        }
    }

    pub fn build(self, ctx: &Context) -> Result<ExtensionInstance> {
        let spec = match self {
            Instance::Chi(k) => chi_extension_spec(k)?,
            Instance::Toy(swaps) => cyclic_toy_extension_spec(swaps),
        };
        Ok(ExtensionInstance::build(&spec, self.options(ctx))?)
    }
}

fn theorem_json(r: &TheoremReport) -> serde_json::Value {
    json!({
        "clauses": r.clauses.iter().map(|c| json!({"clause": c.clause, "pass": c.pass, "witness": c.witness})).collect::<Vec<_>>(),
        "precondition_failure": r.precondition_failure,
        "notes": r.notes,
        "pass": r.all_pass(),
    })
}

fn theorem_checks(prefix: &str, r: &TheoremReport) -> Vec<Check> {
    let mut out: Vec<Check> = r
        .clauses
        .iter()
        .map(|c| Check::new(format!("{prefix}: {}", c.clause), "holds", c.witness.clone().unwrap_or_else(|| if c.pass { "holds".into() } else { "fails".into() }), c.pass))
        .collect();
    if let Some(why) = &r.precondition_failure {
        out.push(Check::new(format!("{prefix}: hypotheses"), "hold", why, false));
    }
    out
}

/// The central-extension checker on each instance.
pub fn ext_theorem(ctx: &Context, instances: &[Instance]) -> Result<Outcome> {
    theorem_command(ctx, instances, "ext-theorem", |inst, opts| Ok(check_extension_theorem(inst, opts)?))
}

/// Rank bound for `<M,N>^G`.
pub fn rank_theorem(ctx: &Context, instances: &[Instance]) -> Result<Outcome> {
    theorem_command(ctx, instances, "rank-theorem", |inst, _| Ok(check_rank_theorem(inst)?))
}

fn theorem_command(
    ctx: &Context,
    instances: &[Instance],
    name: &str,
    check: impl Fn(&ExtensionInstance, EnumerationOptions) -> Result<TheoremReport>,
) -> Result<Outcome> {
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    let mut text = String::new();
    for &i in instances {
        let inst = i.build(ctx)?;
        let r = check(&inst, i.options(ctx))?;
        checks.extend(theorem_checks(&i.name(), &r));
        text.push_str(&format!("{} (order {}): {}\n", i.name(), format_order(inst.group.order() as u128), if r.all_pass() { "all clauses hold" } else { "FAILED" }));
        for note in &r.notes {
            text.push_str(&format!("  note: {note}\n"));
        }
        rows.push(json!({"instance": i.name(), "order": inst.group.order(), "report": theorem_json(&r)}));
    }
    let out = Outcome { report: json!({"command": format!("check {name}"), "instances": rows}), text, checks };
    let text = format!("{}{}", out.text, out.check_lines());
    Ok(Outcome { text, ..out })
}

/// Both theorem checkers on every instance, building each group once.
pub fn extension_theorems(ctx: &Context, instances: &[Instance]) -> Result<Outcome> {
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for &i in instances {
        let inst = i.build(ctx)?;
        let ext = check_extension_theorem(&inst, i.options(ctx))?;
        let rank = check_rank_theorem(&inst)?;
        checks.extend(theorem_checks(&format!("{} extension", i.name()), &ext));
        checks.extend(theorem_checks(&format!("{} rank", i.name()), &rank));
        rows.push(json!({"instance": i.name(), "extension": theorem_json(&ext), "rank": theorem_json(&rank)}));
    }
    let out = Outcome { report: json!({"command": "check extension-theorems", "instances": rows}), text: String::new(), checks };
    Ok(Outcome { text: out.check_lines(), ..out })
}

/// The `A_{2,k}` extension built from `chi(A_{2,k-1})`-style data, compared
/// with `chi(A_{2,k})`.
pub fn extension(ctx: &Context, k: usize) -> Result<Outcome> {
    if !(3..=5).contains(&k) {
        bail!("extension needs 3 <= k <= 5");
    }
    let inst = Instance::Chi(k).build(ctx)?;
    let an = analyze(&inst.group);
    let a = elementary(2, k)?;
    let chi = records(ctx, &a, EnumerationMode::GradedLex, vec![identity_task(&a)])?.remove(0);
    let mut checks = vec![
        Check::equal("order", format_order(chi_order(k)), format_order(an.order as u128)),
        Check::equal("class", k, an.nilpotency_class.map_or("-".into(), |c| c.to_string())),
        Check::equal("derived length", 2, an.derived_length.map_or("-".into(), |c| c.to_string())),
        Check::equal("same order as chi(A)", chi.order.clone(), format_order(an.order as u128)),
    ];
    if k == 3 {
        checks.push(Check::equal("derived subgroup exponent", 4, an.derived_exponent));
        checks.push(Check::equal("chi(A) derived subgroup exponent", 2, chi.derived_exponent));
    }
    let census = derived_generator_census(&inst, k)?;
    checks.push(Check::new(
        "[b_j,a_1] all of order 2",
        format!("{} of order 2", k - 1),
        census.first_kind.iter().map(|x| x.1.to_string()).collect::<Vec<_>>().join(" "),
        census.first_kind.len() == k - 1 && census.first_kind_all_order(2),
    ));
    checks.push(Check::new(
        "longer commutators of order at most 4",
        format!("{} dividing 4", (1usize << (k - 1)) - k),
        census.second_kind.iter().map(|x| x.1.to_string()).collect::<Vec<_>>().join(" "),
        census.second_kind.len() == (1 << (k - 1)) - k && census.second_kind_orders_divide(4),
    ));
    checks.push(Check::equal("listed commutators generate G'", true, census.generates_derived));
    let orbits = classify_extension_orbits(k)?;
    checks.push(Check::equal("orbits cover A x A", orbits.total_pairs, orbits.covered_pairs()));
    checks.push(Check::equal("unclassified orbits", 0, orbits.count(OrbitType::Unclassified)));
    let types = [OrbitType::Fixed, OrbitType::I, OrbitType::II, OrbitType::III, OrbitType::Degenerate];
    let census_json: serde_json::Map<String, serde_json::Value> =
        types.iter().map(|&t| (t.name().to_string(), json!(orbits.lengths(t)))).collect();
    let copy = check_copy_identities(&inst)?;
    let report = json!({
        "command": "extension", "k": k, "analysis": analysis_json(&an), "chi": chi,
        "derived_generators": {"first_kind": census.first_kind, "second_kind": census.second_kind},
        "orbit_lengths": census_json, "copy_identity_failure": copy,
    });
    let mut text = format!("extension k = {k}: {}\nchi(A_{{2,{k}}}): {}\n", analysis_text(&an), triple(chi.order_value as u128, chi.class, chi.derived_length));
    text.push_str(&format!(
        "orbit types: fixed {}, i {}, ii {}, iii {}, degenerate {}\n",
        orbits.count(OrbitType::Fixed),
        orbits.count(OrbitType::I),
        orbits.count(OrbitType::II),
        orbits.count(OrbitType::III),
        orbits.count(OrbitType::Degenerate)
    ));
    text.push_str(&format!("copy identities: {}\n", copy.as_deref().unwrap_or("all hold")));
    let out = Outcome { report, text, checks };
    let text = format!("{}{}", out.text, out.check_lines());
    Ok(Outcome { text, ..out })
}

/// `G(A_{2,k}; last transposition)` against `chi(A_{2,k})`.
pub fn transposition(ctx: &Context, k: usize) -> Result<Outcome> {
    let a = elementary(2, k)?;
    let ordering = a.ordering(EnumerationMode::GradedLex);
    let t = PointedBijection::last_transposition(&a, &ordering)?;
    let label = t.to_cycle_string(&ordering);
    let recs = records(ctx, &a, EnumerationMode::GradedLex, vec![identity_task(&a), (label.clone(), t)])?;
    let (chi, tr) = (&recs[0], &recs[1]);
    let checks = vec![
        Check::equal(format!("|G(A_{{2,{k}}};{label})| = |chi(A)|"), chi.order.clone(), tr.order.clone()),
        Check::equal("chi(A) order", format_order(chi_order(k)), chi.order.clone()),
    ];
    let out = Outcome {
        report: json!({"command": "check transposition", "k": k, "chi": chi, "transposition": tr}),
        text: format!(
            "chi(A_{{2,{k}}})      {}  fingerprint {}\nG(A_{{2,{k}}};{label}) {}  fingerprint {}\n",
            triple(chi.order_value as u128, chi.class, chi.derived_length),
            chi.fingerprint,
            triple(tr.order_value as u128, tr.class, tr.derived_length),
            tr.fingerprint
        ),
        checks,
    };
    Ok(out)
}

/// `class(G/G'') <= |A|` over the `A_{2,3}` representatives and the
/// `A_{2,4}` transposition.
pub fn metab(ctx: &Context) -> Result<Outcome> {
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    let mut text = String::new();
    let a23 = elementary(2, 3)?;
    let o23 = a23.ordering(EnumerationMode::GradedLex);
    let mut fs = Vec::new();
    for (c, ..) in crate::expected::A23_ROWS {
        fs.push((c.to_string(), PointedBijection::from_cycles(&a23, &o23, c)?));
    }
    let mut recs: Vec<(usize, ResultRecord)> = records(ctx, &a23, EnumerationMode::GradedLex, fs)?.into_iter().map(|r| (8, r)).collect();
    let a24 = elementary(2, 4)?;
    let o24 = a24.ordering(EnumerationMode::GradedLex);
    let t = PointedBijection::from_cycles(&a24, &o24, "(15,16)")?;
    recs.extend(records(ctx, &a24, EnumerationMode::GradedLex, vec![("(15,16)".into(), t)])?.into_iter().map(|r| (16, r)));
    for (bound, r) in &recs {
        let f = r.f.clone().unwrap_or_default();
        let a = r.params.get("A").cloned().unwrap_or_default();
        let shown = r.metabelian_class.map_or("-".to_string(), |c| c.to_string());
        checks.push(Check::new(format!("class of G/G'' for {a} f = {f}"), format!("<= {bound}"), &shown, r.metabelian_class.is_some_and(|c| c <= *bound)));
        text.push_str(&format!("{a:<12} {f:<12} class(G/G'') {shown}  bound {bound}\n"));
        rows.push(json!({"A": a, "f": f, "quotient_class": r.metabelian_class, "bound": bound}));
    }
    Ok(Outcome { report: json!({"command": "check metab", "rows": rows}), text, checks })
}

fn chi_group(a: &AbelianGroup, m: Option<usize>, max_cosets: usize) -> Result<RegularGroup> {
    let pairs = match m {
        Some(m) => PairSet::chi(a, &(0..a.rank()).map(|i| a.generator(i)).collect::<Vec<_>>(), m)?,
        None => PairSet::graph(&PointedBijection::identity(a)),
    };
    Ok(RegularGroup::from_presentation(&build_pairs_presentation(&pairs)?, options_for(a.order(), max_cosets))?)
}

/// Coset cap used to witness that `chi(A_{2,2}, S; 1)` does not close.
pub const NON_FINITE_CAP: usize = 100_000;

/// `chi(A,S;2)` against `chi(A)` on odd order, and the `A_{2,2}` contrast.
pub fn chi_reduction(ctx: &Context) -> Result<Outcome> {
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for (p, k) in [(3u32, 2usize), (3, 3), (5, 2)] {
        let a = elementary(p, k)?;
        let two = chi_group(&a, Some(2), ctx.max_cosets)?.order();
        let full = chi_group(&a, None, ctx.max_cosets)?.order();
        checks.push(Check::equal(format!("A_{{{p},{k}}}: |chi(A,S;2)| = |chi(A)|"), format_order(full as u128), format_order(two as u128)));
        rows.push(json!({"p": p, "k": k, "chi_s2": format_order(two as u128), "chi": format_order(full as u128)}));
    }
    let a22 = elementary(2, 2)?;
    let one = match chi_group(&a22, Some(1), NON_FINITE_CAP) {
        Ok(g) => format!("closed at {}", g.order()),
        Err(e) => match e.downcast_ref::<CoreError>() {
            Some(CoreError::Overflow { max_cosets }) => format!("overflow at {max_cosets} cosets"),
            _ => return Err(e),
        },
    };
    checks.push(Check::new("A_{2,2}: chi(A,S;1) exceeds the coset cap", format!("overflow at {NON_FINITE_CAP} cosets"), &one, one.starts_with("overflow")));
    let two = chi_group(&a22, Some(2), ctx.max_cosets)?.order();
    checks.push(Check::equal("A_{2,2}: |chi(A,S;2)|", "2^5", format_order(two as u128)));
    let report = json!({"command": "check chi-reduction", "odd": rows, "a22_m1": one, "a22_m2": format_order(two as u128)});
    let out = Outcome { report, text: String::new(), checks };
    Ok(Outcome { text: out.check_lines(), ..out })
}

/// The six-relator group over `A_{p,3}` with its word checks.
pub fn example1(ctx: &Context, p: u32) -> Result<Outcome> {
    let pres = build_pairs_presentation(&PairSet::example1(p)?)?;
    let g = RegularGroup::from_presentation(&pres, EnumerationOptions::with_max_cosets(ctx.max_cosets))?;
    let an = analyze(&g);
    let x = |i: usize, e: i32| GroupWord::letter(i, e);
    let prod = |ws: &[GroupWord]| ws.iter().fold(GroupWord::identity(), |acc, w| acc.mul(w));
    let trivial = |w: &GroupWord| g.evaluate(w) == g.evaluate(&GroupWord::identity());
    // a1..a3 are letters 0..2, b1..b3 are 3..5
    let identities = [
        ("[a1 a2^-1, b1 b2]", prod(&[x(0, 1), x(1, -1)]), prod(&[x(3, 1), x(4, 1)])),
        ("[a1 a3^-1, b1 b3^-1]", prod(&[x(0, 1), x(2, -1)]), prod(&[x(3, 1), x(5, -1)])),
        ("[a2 a3^-1, b2 b3^-1]", prod(&[x(1, 1), x(2, -1)]), prod(&[x(4, 1), x(5, -1)])),
    ];
    let order = u128::from(p).pow(11);
    let mut checks = vec![
        Check::equal("order", format_order(order), format_order(an.order as u128)),
        Check::equal("class", 3, an.nilpotency_class.map_or("-".into(), |c| c.to_string())),
        Check::equal("derived length", 2, an.derived_length.map_or("-".into(), |c| c.to_string())),
    ];
    for (name, l, r) in &identities {
        checks.push(Check::equal(format!("{name} = e"), true, trivial(&GroupWord::commutator(l, r))));
    }
    let a123 = prod(&[x(0, 1), x(1, 1), x(2, 1)]);
    let mut vanishing = Vec::new();
    for i in 1..p as i32 {
        for j in 1..p as i32 {
            if trivial(&GroupWord::commutator(&a123, &prod(&[x(3, i), x(4, j), x(5, 1)]))) {
                vanishing.push(format!("({i},{j})"));
            }
        }
    }
    checks.push(Check::new(
        "[a1a2a3, b1^i b2^j b3] != e for 1 <= i,j <= p-1",
        "none trivial",
        if vanishing.is_empty() { "none trivial".to_string() } else { vanishing.join(" ") },
        vanishing.is_empty(),
    ));
    let out = Outcome {
        report: json!({"command": "check example1", "p": p, "analysis": analysis_json(&an)}),
        text: format!("{}\n", analysis_text(&an)),
        checks,
    };
    let text = format!("{}{}", out.text, out.check_lines());
    Ok(Outcome { text, ..out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_names() {
        assert_eq!(Instance::parse("chi4").unwrap(), Instance::Chi(4));
        assert_eq!(Instance::parse("toy-swap").unwrap(), Instance::Toy(true));
        assert!(Instance::parse("chi1").is_err());
        for i in [Instance::Chi(3), Instance::Toy(false), Instance::Toy(true)] {
            assert_eq!(Instance::parse(&i.name()).unwrap(), i);
        }
    }

    #[test]
    fn chi_orders() {
        assert_eq!(chi_order(3), 1 << 10);
        assert_eq!(chi_order(4), 1 << 19);
    }
}
