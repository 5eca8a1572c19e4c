//! Double cosets of the automorphism group in the symmetric group.

use std::time::Instant;

use anyhow::{bail, Result};
use serde_json::json;
use wkc_core::abelian::{AbelianGroup, ActionDomain, EnumerationMode, PointedBijection};
use wkc_core::doublecosets::{count_burnside, enumerate_reps, same_double_coset};
use wkc_core::perm::{Permutation, PermutationGroup};
use wkc_core::util::factorial;

use super::{elementary, Context};
use crate::expected;
use crate::formats::{parse_bijection, RepresentativeList};
use crate::report::{Check, Outcome};
use crate::sweep::Task;

/// `Aut(A)` acting on `A#` for `p = 2` and on the cyclic subgroups for odd
/// `p`, where it induces `PGL(k,p)`.
#[derive(Clone, Debug)]
pub struct Action {
    pub a: AbelianGroup,
    pub mode: EnumerationMode,
    pub group: PermutationGroup,
    pub name: String,
    pub domain: ActionDomain,
    /// Label of point 0 in cycle strings.
    pub base: usize,
}

impl Action {
    pub fn new(p: u32, k: usize, mode: EnumerationMode) -> Result<Self> {
        let a = elementary(p, k)?;
        let ordering = a.ordering(mode);
        let (domain, name, base) =
            if p == 2 { (ActionDomain::Elements, format!("SL({k},2)"), 2) } else { (ActionDomain::Lines, format!("PGL({k},{p})"), 1) };
        let group = a.automorphism_perm_group(&ordering, domain)?;
        Ok(Action { a, mode, group, name, domain, base })
    }

    /// Bijection of `A` for a permutation of the acted-on points.
    pub fn bijection(&self, perm: &Permutation) -> Result<PointedBijection> {
        let ordering = self.a.ordering(self.mode);
        Ok(match self.domain {
            ActionDomain::Elements => PointedBijection::from_sharp_permutation(&self.a, &ordering, perm)?,
            ActionDomain::Lines => PointedBijection::line_linear(&self.a, &self.a.cyclic_subgroups(&ordering)?, perm)?,
        })
    }

    pub fn task(&self, perm: &Permutation) -> Result<Task> {
        let f = self.bijection(perm)?;
        Ok(Task { label: f.to_cycle_string(&self.a.ordering(self.mode)), f })
    }
}

pub fn count(p: u32, k: usize) -> Result<Outcome> {
    let action = Action::new(p, k, EnumerationMode::GradedLex)?;
    let start = Instant::now();
    let n = count_burnside(&action.group)?;
    let seconds = start.elapsed().as_secs_f64();
    let mut checks = Vec::new();
    if let Some(e) = expected::double_coset_count(p, k) {
        checks.push(Check::equal(format!("{0}\\Sym({1})/{0}", action.name, action.group.degree()), e, n));
    }
    Ok(Outcome {
        report: json!({
            "command": "dcosets count", "p": p, "k": k, "group": action.name,
            "degree": action.group.degree(), "group_order": action.group.order().to_string(),
            "count": n.to_string(), "method": "burnside", "seconds": seconds,
        }),
        text: format!("{n}\n"),
        checks,
    })
}

fn reps_key(action: &Action, cap: u128) -> String {
    format!("reps|A={}|mode={}|cap={cap}", action.a, action.mode.name())
}

/// Representatives (least element of each double coset), cached.
pub fn representatives(ctx: &Context, action: &Action) -> Result<RepresentativeList> {
    let key = reps_key(action, ctx.index_cap);
    if let Some(list) = ctx.cache.as_ref().and_then(|c| c.load::<RepresentativeList>(&key)) {
        return Ok(list);
    }
    let rep = enumerate_reps(&action.group, ctx.index_cap)?;
    let perms = rep.representatives.unwrap_or_default();
    let list = RepresentativeList {
        group: action.name.clone(),
        n: action.group.degree(),
        method: rep.method.name().into(),
        count: rep.count,
        base: action.base,
        representatives: perms.iter().map(|p| p.to_cycle_string_with_base(action.base)).collect(),
    };
    if let Some(c) = &ctx.cache {
        c.store(&key, &list)?;
    }
    Ok(list)
}

pub fn reps(ctx: &Context, p: u32, k: usize, mode: EnumerationMode) -> Result<Outcome> {
    let action = Action::new(p, k, mode)?;
    let start = Instant::now();
    let rep = enumerate_reps(&action.group, ctx.index_cap)?;
    let seconds = start.elapsed().as_secs_f64();
    let perms = rep.representatives.clone().unwrap_or_default();
    let sizes = rep.sizes.clone().unwrap_or_default();
    let mut checks = vec![Check::equal("count equals the Burnside count", count_burnside(&action.group)?, rep.count)];
    let total: u128 = sizes.iter().sum();
    checks.push(Check::equal("double coset sizes sum to n!", factorial(action.group.degree() as u64), total));
    if let Some(e) = expected::double_coset_count(p, k) {
        checks.push(Check::equal("count", e, rep.count));
    }
    let list = RepresentativeList {
        group: action.name.clone(),
        n: action.group.degree(),
        method: rep.method.name().into(),
        count: rep.count,
        base: action.base,
        representatives: perms.iter().map(|q| q.to_cycle_string_with_base(action.base)).collect(),
    };
    if let Some(c) = &ctx.cache {
        c.store(&reps_key(&action, ctx.index_cap), &list)?;
    }
    let mut text = String::new();
    for (r, s) in list.representatives.iter().zip(&sizes) {
        text.push_str(&format!("{r}  |UfU| = {s}\n"));
    }
    Ok(Outcome {
        report: json!({
            "command": "dcosets reps", "p": p, "k": k, "mode": mode.name(), "list": list,
            "sizes": sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>(), "seconds": seconds,
        }),
        text,
        checks,
    })
}

/// Decides whether two bijections lie in one double coset of `Aut(A)`
/// acting on `A#`.
pub fn same(p: u32, k: usize, mode: EnumerationMode, f: &str, g: &str) -> Result<Outcome> {
    let a = elementary(p, k)?;
    let ordering = a.ordering(mode);
    let u = a.automorphism_perm_group(&ordering, ActionDomain::Elements)?;
    let fp = parse_bijection(f, &a, mode)?.to_sharp_permutation(&ordering);
    let gp = parse_bijection(g, &a, mode)?.to_sharp_permutation(&ordering);
    if u.degree() != fp.degree() {
        bail!("degree mismatch");
    }
    let r = same_double_coset(&u, &fp, &gp)?;
    let witness = r.witness.as_ref().map(|(x, y)| [x.to_cycle_string_with_base(2), y.to_cycle_string_with_base(2)]);
    Ok(Outcome {
        report: json!({"command": "dcosets same", "p": p, "k": k, "mode": mode.name(), "f": f, "g": g, "same": r.same, "witness": witness}),
        text: format!("{}\n", if r.same { "same double coset" } else { "different double cosets" }),
        checks: Vec::new(),
    })
}
