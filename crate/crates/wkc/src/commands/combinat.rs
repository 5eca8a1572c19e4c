//! Bases, independence counts, incidence matrices and matching extraction.

use anyhow::{bail, Context as _, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use wkc_core::abelian::{AbelianGroup, EnumerationMode};
use wkc_core::combinat::{
    check_independence_bound, default_count_mode, extract_power_compatible, find_f_independent_basis, generate_s_u,
    graph_within_power_relation, incidence_matrix, normalize_fix_basis, random_bijection, totally_singular_decompose,
    CountMode, Singularity,
};
use wkc_core::enumerator::group_order;
use wkc_core::perm::Permutation;
use wkc_core::presentations::{build_pairs_presentation, PairSet};

use super::{elementary, Context};
use crate::formats::parse_bijection;
use crate::report::{Check, Outcome};

fn element_names(a: &AbelianGroup, codes: &[usize]) -> Vec<String> {
    codes.iter().map(|&c| a.format_element(&a.element(c))).collect()
}

pub fn basis(p: u32, k: usize, mode: EnumerationMode, f: &str) -> Result<Outcome> {
    let a = elementary(p, k)?;
    let ordering = a.ordering(mode);
    let f = parse_bijection(f, &a, mode)?;
    let c = find_f_independent_basis(&f, &ordering)?;
    let image: Vec<usize> = c.iter().map(|&x| f.image_code(x)).collect();
    let is_basis = |codes: &[usize]| a.is_basis(&codes.iter().map(|&x| a.element(x)).collect::<Vec<_>>());
    let checks = vec![Check::equal("C is a basis", true, is_basis(&c)?), Check::equal("C^f is a basis", true, is_basis(&image)?)];
    let norm = normalize_fix_basis(&f, &ordering)?;
    Ok(Outcome {
        report: json!({
            "command": "combinat basis", "p": p, "k": k, "mode": mode.name(),
            "basis": element_names(&a, &c), "image": element_names(&a, &image),
            "normalized": norm.map.to_cycle_string(&ordering),
        }),
        text: format!(
            "C   = {}\nC^f = {}\nnormalized f = {}\n",
            element_names(&a, &c).join(", "),
            element_names(&a, &image).join(", "),
            norm.map.to_cycle_string(&ordering)
        ),
        checks,
    })
}

pub fn bound(p: u32, k: usize, mode: EnumerationMode, f: &str, samples: Option<usize>, seed: u64) -> Result<Outcome> {
    let a = elementary(p, k)?;
    let f = parse_bijection(f, &a, mode)?;
    let count_mode = match samples {
        Some(samples) => CountMode::Sampled { samples, seed },
        None => default_count_mode(p, k),
    };
    let r = check_independence_bound(&f, count_mode)?;
    Ok(Outcome {
        report: json!({
            "command": "combinat bound", "p": p, "k": k, "count": r.count.to_string(), "exact": r.exact,
            "samples": r.samples, "total_bases": r.total_bases.to_string(),
            "bound": r.bound.to_string(), "stated_bound": r.stated_bound.to_string(),
        }),
        text: format!(
            "{} f-independent ordered bases ({}) of {}; bound {}, closed form {}\n",
            r.count,
            if r.exact { "exact" } else { "estimated" },
            r.total_bases,
            r.bound,
            r.stated_bound
        ),
        checks: vec![Check::new("count at least the bound", format!(">= {}", r.bound), r.count, r.pass)],
    })
}

pub fn extract(p: u32, k: usize, mode: EnumerationMode, f: &str) -> Result<Outcome> {
    let a = elementary(p, k)?;
    let ordering = a.ordering(mode);
    let f = parse_bijection(f, &a, mode)?;
    let lines = a.cyclic_subgroups(&ordering)?;
    let m = incidence_matrix(&f, &lines)?;
    let maps = extract_power_compatible(&f, &lines)?;
    let mut checks = vec![Check::equal("incidence matrix has all line sums p-1", true, m.is_balanced())];
    checks.push(Check::equal("maps extracted", p - 1, maps.len()));
    for (i, g) in maps.iter().enumerate() {
        checks.push(Check::equal(format!("g{} power-compatible", i + 1), true, g.is_power_compatible()));
        checks.push(Check::equal(format!("g{} graph inside R", i + 1), true, graph_within_power_relation(g, &f)));
    }
    let cycles: Vec<String> = maps.iter().map(|g| g.to_cycle_string(&ordering)).collect();
    let rows: Vec<String> = m.entries.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
    Ok(Outcome {
        report: json!({"command": "combinat extract", "p": p, "k": k, "mode": mode.name(), "incidence": m.entries, "maps": cycles}),
        text: format!("{}\n{}\n", rows.join("\n"), cycles.join("\n")),
        checks,
    })
}

/// Rows separated by `;`, entries by `,` or whitespace.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<u64>>> {
    let rows: Vec<Vec<u64>> = text
        .split(';')
        .map(|r| r.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(|s| s.parse::<u64>()).collect())
        .collect::<std::result::Result<_, _>>()
        .with_context(|| format!("parsing matrix {text:?}"))?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        bail!("matrix must be square");
    }
    Ok(rows)
}

pub fn singular(matrix: &str) -> Result<Outcome> {
    let m = parse_matrix(matrix)?;
    let (report, text) = match totally_singular_decompose(&m)? {
        Singularity::NotSingular(sigma) => (json!({"singular": false, "diagonal": sigma}), format!("not totally singular; diagonal {sigma:?}\n")),
        Singularity::Singular(w) => (
            json!({
                "singular": true, "row_order": w.row_order, "col_order": w.col_order,
                "zero_rows": w.zero_rows, "zero_cols": w.zero_cols,
            }),
            format!("totally singular; zero block {}x{} on rows {:?}, columns {:?}\n", w.zero_rows, w.zero_cols, w.block_rows(), w.block_cols()),
        ),
    };
    let mut report = report;
    report["command"] = json!("combinat singular");
    Ok(Outcome { report, text, checks: Vec::new() })
}

pub fn su(m: usize, n: u32, f: &str) -> Result<Outcome> {
    let size = wkc_core::combinat::s_set(m, n)?.len();
    let perm = Permutation::parse_cycles(f, size)?;
    let data = generate_s_u(m, n, &perm)?;
    let words: Vec<String> = (0..data.s.len()).map(|i| data.word(i)).collect();
    let terms = data.u_terms();
    Ok(Outcome {
        report: json!({"command": "combinat su", "m": m, "n": n, "s": words, "u": terms}),
        text: format!("S = {{{}}}\nU = {{{}}}\n", words.join(", "), terms.join(", ")),
        checks: Vec::new(),
    })
}

fn permanent_support_positive(m: &[Vec<u64>]) -> bool {
    fn go(m: &[Vec<u64>], row: usize, used: &mut Vec<bool>) -> bool {
        if row == m.len() {
            return true;
        }
        for c in 0..m.len() {
            if !used[c] && m[row][c] > 0 {
                used[c] = true;
                if go(m, row + 1, used) {
                    return true;
                }
                used[c] = false;
            }
        }
        false
    }
    go(m, 0, &mut vec![false; m.len()])
}

fn order_of(f: &wkc_core::abelian::PointedBijection, ctx: &Context) -> Result<usize> {
    let opts = wkc_core::enumerator::EnumerationOptions::with_max_cosets(ctx.max_cosets);
    Ok(group_order(&build_pairs_presentation(&PairSet::graph(f))?, opts)?)
}

/// Property sweep over random bijections: balanced incidence matrices,
/// extraction, order divisibility, singularity against a brute-force
/// permanent, and the independence bound.
pub fn suite(ctx: &Context, samples: usize, seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let mut report = serde_json::Map::new();
    for (p, k) in [(3u32, 2usize), (3, 3)] {
        let a = elementary(p, k)?;
        let lines = a.cyclic_subgroups(&a.ordering(EnumerationMode::GradedLex))?;
        let (mut balanced, mut extracted) = (0, 0);
        for _ in 0..samples {
            let f = random_bijection(&a, &mut rng);
            balanced += incidence_matrix(&f, &lines)?.is_balanced() as usize;
            let maps = extract_power_compatible(&f, &lines)?;
            let good = maps.len() == p as usize - 1 && maps.iter().all(|g| g.is_power_compatible() && graph_within_power_relation(g, &f));
            extracted += good as usize;
        }
        checks.push(Check::equal(format!("A_{{{p},{k}}} balanced incidence"), samples, balanced));
        checks.push(Check::equal(format!("A_{{{p},{k}}} extraction of p-1 maps"), samples, extracted));
    }

    let a32 = elementary(3, 2)?;
    let lines = a32.cyclic_subgroups(&a32.ordering(EnumerationMode::GradedLex))?;
    let instances = 25;
    let mut divides = 0;
    let mut pairs_checked = 0;
    for _ in 0..instances {
        let f = random_bijection(&a32, &mut rng);
        let n = order_of(&f, ctx)?;
        let mut ok = true;
        for g in extract_power_compatible(&f, &lines)? {
            ok &= order_of(&g, ctx)? % n == 0;
            pairs_checked += 1;
        }
        divides += ok as usize;
    }
    checks.push(Check::equal("A_{3,2} |G(A;f)| divides |G(A;g)|", instances, divides));
    report.insert("divisibility_pairs".into(), json!(pairs_checked));

    let mut agree = 0;
    let matrices = samples;
    for _ in 0..matrices {
        let k = rng.gen_range(1..=6);
        let density = rng.gen_range(0.1..0.9);
        let m: Vec<Vec<u64>> = (0..k).map(|_| (0..k).map(|_| if rng.gen_bool(density) { rng.gen_range(1..3) } else { 0 }).collect()).collect();
        let singular = matches!(totally_singular_decompose(&m)?, Singularity::Singular(_));
        agree += (singular != permanent_support_positive(&m)) as usize;
    }
    checks.push(Check::equal("total singularity matches the permanent of the support (k <= 6)", matrices, agree));

    let mut bound_rows = Vec::new();
    let per_group = 5;
    for (p, k) in [(2u32, 2usize), (2, 3), (3, 2), (3, 3), (5, 2), (5, 3)] {
        let a = elementary(p, k)?;
        let mut held = 0;
        let mut least = u128::MAX;
        let mut bound = 0;
        for _ in 0..per_group {
            let f = random_bijection(&a, &mut rng);
            let r = check_independence_bound(&f, default_count_mode(p, k))?;
            held += r.pass as usize;
            least = least.min(r.count);
            bound = r.bound;
        }
        checks.push(Check::equal(format!("A_{{{p},{k}}} independence bound"), per_group, held));
        bound_rows.push(json!({"p": p, "k": k, "bound": bound.to_string(), "least_count": least.to_string()}));
    }
    report.insert("command".into(), json!("combinat suite"));
    report.insert("samples".into(), json!(samples));
    report.insert("seed".into(), json!(seed));
    report.insert("bounds".into(), json!(bound_rows));
    let out = Outcome { report: serde_json::Value::Object(report), text: String::new(), checks };
    let text = out.check_lines();
    Ok(Outcome { text, ..out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_text() {
        assert_eq!(parse_matrix("1,0;0 2").unwrap(), vec![vec![1, 0], vec![0, 2]]);
        assert!(parse_matrix("1,0;1").is_err());
        assert!(parse_matrix("a").is_err());
    }

    #[test]
    fn support_permanent() {
        assert!(permanent_support_positive(&[vec![0, 1], vec![1, 0]]));
        assert!(!permanent_support_positive(&[vec![1, 1], vec![0, 0]]));
    }
}
