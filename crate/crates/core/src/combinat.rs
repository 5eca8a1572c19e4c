//! Combinatorics of identity-fixing bijections on `A_{p,k}`: bases whose
//! images are again bases, normalization to a basis-fixing map, the incidence
//! matrix between cyclic subgroups, extraction of power-compatible maps by
//! repeated perfect matching, and totally singular matrices.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::{
    invert_mod_p, AbelianGroup, CyclicSubgroupIndex, Matrix, Ordering, PointedBijection,
};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest number of ordered bases that exact counting will walk through.
pub const EXACT_BASIS_LIMIT: u128 = 1 << 25;
pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_SEED: u64 = 0;

/// Uniformly random identity-fixing bijection of `a`.
pub fn random_bijection<R: Rng>(a: &AbelianGroup, rng: &mut R) -> PointedBijection {
    let mut images: Vec<u32> = (1..a.order() as u32).collect();
    images.shuffle(rng);
    let mut table = vec![0u32];
    table.extend(images);
    PointedBijection::from_code_table(a.clone(), a.clone(), table).expect("shuffled table is a bijection")
}

/// Codes of the subgroup generated by `span` and `x`, as a membership mask.
fn extend_span(a: &AbelianGroup, p: u32, span: &[bool], x: usize) -> Vec<bool> {
    let mut out = vec![false; span.len()];
    let multiples: Vec<usize> = (0..p as i64).map(|s| a.scale_code(x, s)).collect();
    for (c, &inside) in span.iter().enumerate() {
        if inside {
            for &m in &multiples {
                out[a.add_codes(c, m)] = true;
            }
        }
    }
    out
}

fn trivial_span(a: &AbelianGroup) -> Vec<bool> {
    let mut s = vec![false; a.order()];
    s[0] = true;
    s
}

fn require_self_map(f: &PointedBijection) -> Result<(AbelianGroup, u32)> {
    if f.domain() != f.codomain() {
        return Err(Error::GroupMismatch);
    }
    let a = f.domain().clone();
    let p = a.elementary_prime()?;
    Ok((a, p))
}

/// Greedy basis `C` with `C^f` also a basis: each step takes the least element
/// (under `ordering`) independent of `C` whose image is independent of `C^f`.
/// Returns element codes.
pub fn find_f_independent_basis(f: &PointedBijection, ordering: &Ordering) -> Result<Vec<usize>> {
    let (a, p) = require_self_map(f)?;
    let mut span = trivial_span(&a);
    let mut image_span = trivial_span(&a);
    let mut basis = Vec::with_capacity(a.rank());
    for _ in 0..a.rank() {
        let x = ordering
            .codes
            .iter()
            .map(|&c| c as usize)
            .find(|&c| !span[c] && !image_span[f.image_code(c)])
            .ok_or_else(|| Error::Internal("no element extends an f-independent set".into()))?;
        span = extend_span(&a, p, &span, x);
        image_span = extend_span(&a, p, &image_span, f.image_code(x));
        basis.push(x);
    }
    Ok(basis)
}

/// `|B_k| = prod_{j<k} (p^k - p^j)`, the number of ordered bases.
pub fn ordered_basis_count(p: u32, k: usize) -> u128 {
    let q = (p as u128).pow(k as u32);
    (0..k as u32).map(|j| q - (p as u128).pow(j)).product()
}

/// Lower bounds for the number of ordered bases `C` with `C^f` a basis.
/// `recursive` multiplies the factors `p^{j+1} - 2p^j + j + 1`, `stated`
/// the factors `p^j - 2p^{j-1} + j + 1`.
pub fn independence_bounds(p: u32, k: usize) -> (i128, i128) {
    if k == 0 {
        return (1, 1);
    }
    let p = p as i128;
    let mut recursive = p.pow(k as u32) - 1;
    let mut stated = recursive;
    for j in 1..k as u32 {
        let lines = (p.pow(k as u32 - j) - 1) / (p - 1);
        recursive *= lines * (p.pow(j + 1) - 2 * p.pow(j) + j as i128 + 1);
        stated *= lines * (p.pow(j) - 2 * p.pow(j - 1) + j as i128 + 1);
    }
    (recursive, stated)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    Exact,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct IndependenceReport {
    pub p: u32,
    pub k: usize,
    /// Exact count, or the rounded estimate in sampled mode.
    pub count: u128,
    pub exact: bool,
    /// Sampled mode: tuples drawn and tuples hitting.
    pub samples: Option<(usize, usize)>,
    pub total_bases: u128,
    pub bound: i128,
    pub stated_bound: i128,
    pub pass: bool,
}

fn count_exact(a: &AbelianGroup, p: u32, f: &PointedBijection) -> u128 {
    fn walk(a: &AbelianGroup, p: u32, f: &PointedBijection, depth: usize, span: &[bool], img: &[bool]) -> u128 {
        let candidates = (1..a.order()).filter(|&c| !span[c] && !img[f.image_code(c)]);
        if depth + 1 == a.rank() {
            return candidates.count() as u128;
        }
        let mut total = 0;
        for c in candidates {
            let s = extend_span(a, p, span, c);
            let t = extend_span(a, p, img, f.image_code(c));
            total += walk(a, p, f, depth + 1, &s, &t);
        }
        total
    }
    if a.rank() == 0 {
        return 1;
    }
    walk(a, p, f, 0, &trivial_span(a), &trivial_span(a))
}

fn independent(a: &AbelianGroup, p: u32, codes: impl Iterator<Item = usize>) -> bool {
    let rows: Vec<Vec<u32>> = codes.map(|c| a.element(c).digits).collect();
    crate::abelian::rank_mod_p(&rows, p) == rows.len()
}

/// Counts ordered bases `C` of `A_{p,k}` with `C^f` a basis and compares the
/// count with the recursive lower bound.
pub fn check_independence_bound(f: &PointedBijection, mode: CountMode) -> Result<IndependenceReport> {
    let (a, p) = require_self_map(f)?;
    let k = a.rank();
    let total_bases = ordered_basis_count(p, k);
    let (bound, stated_bound) = independence_bounds(p, k);
    let (count, exact, samples) = match mode {
        CountMode::Exact => {
            if total_bases > EXACT_BASIS_LIMIT {
                return Err(Error::Capacity { what: "ordered bases for exact counting", limit: EXACT_BASIS_LIMIT });
            }
            (count_exact(&a, p, f), true, None)
        }
        CountMode::Sampled { samples, seed } => {
            if samples == 0 {
                return Err(Error::InvalidInput("at least one sample is required".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = a.order();
            let mut hits = 0usize;
            let mut tuple = vec![0usize; k];
            for _ in 0..samples {
                for t in tuple.iter_mut() {
                    *t = rng.gen_range(0..n);
                }
                if independent(&a, p, tuple.iter().copied())
                    && independent(&a, p, tuple.iter().map(|&c| f.image_code(c)))
                {
                    hits += 1;
                }
            }
            let tuples = (n as u128).pow(k as u32) as f64;
            let estimate = (hits as f64 / samples as f64 * tuples + 0.5) as u128;
            (estimate, false, Some((samples, hits)))
        }
    };
    Ok(IndependenceReport {
        p,
        k,
        count,
        exact,
        samples,
        total_bases,
        bound,
        stated_bound,
        pass: count as i128 >= bound,
    })
}

/// Exact counting when the ordered bases fit under [`EXACT_BASIS_LIMIT`],
/// sampling with the default size and seed otherwise.
pub fn default_count_mode(p: u32, k: usize) -> CountMode {
    if ordered_basis_count(p, k) <= EXACT_BASIS_LIMIT {
        CountMode::Exact
    } else {
        CountMode::Sampled { samples: DEFAULT_SAMPLES, seed: DEFAULT_SEED }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    /// `pre` then `f` then `post`; fixes every standard basis vector.
    pub map: PointedBijection,
    /// The basis `C` found for `f`, as codes.
    pub basis: Vec<usize>,
    /// Row-vector matrices of the automorphisms applied before and after `f`.
    pub pre: Matrix,
    pub post: Matrix,
}

/// Rewrites `f` inside its double coset `Aut(A) f Aut(A)` so that it fixes
/// the standard basis pointwise.
pub fn normalize_fix_basis(f: &PointedBijection, ordering: &Ordering) -> Result<Normalized> {
    let (a, p) = require_self_map(f)?;
    let basis = find_f_independent_basis(f, ordering)?;
    let pre: Matrix = basis.iter().map(|&c| a.element(c).digits).collect();
    let images: Matrix = basis.iter().map(|&c| a.element(f.image_code(c)).digits).collect();
    let post = invert_mod_p(&images, p).ok_or_else(|| Error::Internal("image of basis is singular".into()))?;
    let map = a.matrix_bijection(&pre)?.then(f)?.then(&a.matrix_bijection(&post)?)?;
    Ok(Normalized { map, basis, pre, post })
}

/// Square non-negative integer matrix indexed by cyclic subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    pub p: u32,
    pub entries: Vec<Vec<u64>>,
}

impl IncidenceMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<u64> {
        (0..self.size()).map(|j| self.entries.iter().map(|r| r[j]).sum()).collect()
    }

    /// Every row and column sums to `p - 1`.
    pub fn is_balanced(&self) -> bool {
        let target = self.p as u64 - 1;
        self.row_sums().iter().chain(self.column_sums().iter()).all(|&s| s == target)
    }
}

/// `N_ij` = number of non-identity `x` in subgroup `i` with `f(x)` in
/// subgroup `j`.
pub fn incidence_matrix(f: &PointedBijection, lines: &CyclicSubgroupIndex) -> Result<IncidenceMatrix> {
    let (a, p) = require_self_map(f)?;
    let n = lines.len();
    let mut entries = vec![vec![0u64; n]; n];
    for c in 1..a.order() {
        let i = lines.subgroup_of[c] as usize;
        let j = lines.subgroup_of[f.image_code(c)] as usize;
        entries[i][j] += 1;
    }
    Ok(IncidenceMatrix { p, entries })
}

/// Maximum matching of rows to columns over the positive entries. Rows are
/// tried in index order and columns in ascending order, so the result is
/// reproducible.
fn maximum_matching(m: &[Vec<u64>]) -> Vec<Option<usize>> {
    fn augment(m: &[Vec<u64>], r: usize, seen: &mut [bool], col_match: &mut [Option<usize>]) -> bool {
        if let Some(c) = (0..m[r].len()).find(|&c| m[r][c] > 0 && col_match[c].is_none()) {
            seen[c] = true;
            col_match[c] = Some(r);
            return true;
        }
        for c in 0..m[r].len() {
            if m[r][c] == 0 || seen[c] {
                continue;
            }
            seen[c] = true;
            if col_match[c].is_none_or(|r2| augment(m, r2, seen, col_match)) {
                col_match[c] = Some(r);
                return true;
            }
        }
        false
    }
    let n = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut col_match = vec![None; cols];
    for r in 0..n {
        let mut seen = vec![false; cols];
        augment(m, r, &mut seen, &mut col_match);
    }
    let mut row_match = vec![None; n];
    for (c, r) in col_match.iter().enumerate() {
        if let Some(r) = r {
            row_match[*r] = Some(c);
        }
    }
    row_match
}

/// `p - 1` power-compatible maps `g` whose graphs lie inside
/// `{(x^i, y^i) : f(x) = y}`. Each round takes a perfect matching of the
/// remaining incidence support; for a matched pair of subgroups the least
/// unused `x` in the first with `f(x)` in the second defines `g(x^i) = f(x)^i`.
pub fn extract_power_compatible(f: &PointedBijection, lines: &CyclicSubgroupIndex) -> Result<Vec<PointedBijection>> {
    let (a, p) = require_self_map(f)?;
    let n = lines.len();
    let mut remaining = incidence_matrix(f, lines)?.entries;
    let mut edges: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; n];
    for c in 1..a.order() {
        let i = lines.subgroup_of[c] as usize;
        let j = lines.subgroup_of[f.image_code(c)] as usize;
        edges[i][j].push(c);
    }
    let mut maps = Vec::with_capacity(p as usize - 1);
    for _ in 1..p {
        let matching = maximum_matching(&remaining);
        let mut table = vec![0u32; a.order()];
        for (i, col) in matching.iter().enumerate() {
            let j = col.ok_or_else(|| Error::Internal("incidence support has no perfect matching".into()))?;
            let x = edges[i][j].remove(0);
            remaining[i][j] -= 1;
            let y = f.image_code(x);
            for s in 1..p as i64 {
                table[a.scale_code(x, s)] = a.scale_code(y, s) as u32;
            }
        }
        maps.push(PointedBijection::from_code_table(a.clone(), a.clone(), table)?);
    }
    Ok(maps)
}

/// True iff every `(x, g(x))` has the form `(u^i, f(u)^i)`.
pub fn graph_within_power_relation(g: &PointedBijection, f: &PointedBijection) -> bool {
    let a = f.domain();
    let Ok(p) = a.elementary_prime() else { return false };
    (1..a.order()).all(|x| {
        (1..p as i64).any(|i| {
            let inv = (1..p as i64).find(|t| (t * i) % p as i64 == 1).expect("prime modulus");
            let u = a.scale_code(x, inv);
            a.scale_code(f.image_code(u), i) == g.image_code(x)
        })
    })
}

/// Rows and columns arranged so that the first `zero_rows` rows meet the last
/// `zero_cols` columns in zeros only; `zero_rows + zero_cols = size + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularWitness {
    pub row_order: Vec<usize>,
    pub col_order: Vec<usize>,
    pub zero_rows: usize,
    pub zero_cols: usize,
}

impl SingularWitness {
    pub fn block_rows(&self) -> &[usize] {
        &self.row_order[..self.zero_rows]
    }

    pub fn block_cols(&self) -> &[usize] {
        &self.col_order[self.col_order.len() - self.zero_cols..]
    }

    pub fn holds_for(&self, m: &[Vec<u64>]) -> bool {
        self.zero_rows + self.zero_cols == m.len() + 1
            && self.block_rows().iter().all(|&r| self.block_cols().iter().all(|&c| m[r][c] == 0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Singularity {
    /// A permutation `sigma` (row to column) with all `M[i][sigma(i)] > 0`.
    NotSingular(Vec<usize>),
    Singular(SingularWitness),
}

/// Decides whether every diagonal product `prod M[i][sigma(i)]` vanishes, and
/// if so returns a zero block read off a minimum vertex cover.
pub fn totally_singular_decompose(m: &[Vec<u64>]) -> Result<Singularity> {
    let k = m.len();
    if m.iter().any(|r| r.len() != k) {
        return Err(Error::InvalidInput("matrix must be square".into()));
    }
    let matching = maximum_matching(m);
    if matching.iter().all(Option::is_some) {
        return Ok(Singularity::NotSingular(matching.into_iter().map(|c| c.expect("checked")).collect()));
    }
    let mut col_match = vec![None; k];
    for (r, c) in matching.iter().enumerate() {
        if let Some(c) = c {
            col_match[*c] = Some(r);
        }
    }
    // Alternating reachability from unmatched rows.
    let mut row_seen = vec![false; k];
    let mut col_seen = vec![false; k];
    let mut stack: Vec<usize> = (0..k).filter(|&r| matching[r].is_none()).collect();
    for &r in &stack {
        row_seen[r] = true;
    }
    while let Some(r) = stack.pop() {
        for c in 0..k {
            if m[r][c] > 0 && !col_seen[c] {
                col_seen[c] = true;
                if let Some(r2) = col_match[c] {
                    if !row_seen[r2] {
                        row_seen[r2] = true;
                        stack.push(r2);
                    }
                }
            }
        }
    }
    let mut rows: Vec<usize> = (0..k).filter(|&r| row_seen[r]).collect();
    let mut cols: Vec<usize> = (0..k).filter(|&c| !col_seen[c]).collect();
    while rows.len() + cols.len() > k + 1 {
        if cols.len() > 1 {
            cols.remove(0);
        } else {
            rows.pop();
        }
    }
    let (zero_rows, zero_cols) = (rows.len(), cols.len());
    let mut row_order = rows.clone();
    row_order.extend((0..k).filter(|r| !rows.contains(r)));
    let mut col_order: Vec<usize> = (0..k).filter(|c| !cols.contains(c)).collect();
    col_order.extend(cols);
    Ok(Singularity::Singular(SingularWitness { row_order, col_order, zero_rows, zero_cols }))
}

/// The generating set `S(m,n)` and the formal pairs `(x, f(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemData {
    pub m: usize,
    pub n: u32,
    /// Exponent vectors `(l_1, ..., l_m)` of the words `a_1^{l_1} ... a_m^{l_m}`.
    pub s: Vec<Vec<u32>>,
    /// Index pairs into `s`.
    pub u: Vec<(usize, usize)>,
}

impl ProblemData {
    pub fn word(&self, i: usize) -> String {
        render_monomial(&self.s[i])
    }

    /// `(1 - x)(1 - f(x))` for each pair.
    pub fn u_terms(&self) -> Vec<String> {
        self.u.iter().map(|&(x, y)| format!("(1 - {})(1 - {})", self.word(x), self.word(y))).collect()
    }
}

pub fn render_monomial(exps: &[u32]) -> String {
    let mut s = String::new();
    for (i, &e) in exps.iter().enumerate() {
        match e {
            0 => {}
            1 => s.push_str(&format!("a{}", i + 1)),
            _ => s.push_str(&format!("a{}^{}", i + 1, e)),
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// Words whose last letter `a_j` has exponent 1 and whose earlier letters
/// have exponents in `0..n`, listed by `j`, then by support, then exponents.
pub fn s_set(m: usize, n: u32) -> Result<Vec<Vec<u32>>> {
    if m == 0 || n < 2 {
        return Err(Error::InvalidInput(format!("need m >= 1 and n >= 2, got m = {m}, n = {n}")));
    }
    let mut out = Vec::new();
    for j in 0..m {
        let mut block = Vec::new();
        let count = (n as u64).checked_pow(j as u32).filter(|&c| c <= 1 << 20).ok_or(Error::Capacity {
            what: "size of S(m,n)",
            limit: 1 << 20,
        })?;
        for idx in 0..count {
            let mut exps = vec![0u32; m];
            let mut t = idx;
            for e in exps[..j].iter_mut().rev() {
                *e = (t % n as u64) as u32;
                t /= n as u64;
            }
            exps[j] = 1;
            block.push(exps);
        }
        block.sort_by(|x, y| {
            let sx: Vec<usize> = (0..j).filter(|&i| x[i] != 0).collect();
            let sy: Vec<usize> = (0..j).filter(|&i| y[i] != 0).collect();
            sx.len().cmp(&sy.len()).then_with(|| sx.cmp(&sy)).then_with(|| x.cmp(y))
        });
        out.extend(block);
    }
    Ok(out)
}

/// `S(m,n)` together with the pairs `(x, f(x))` for a permutation `f` of the
/// indices of `S(m,n)`.
pub fn generate_s_u(m: usize, n: u32, f: &Permutation) -> Result<ProblemData> {
    let s = s_set(m, n)?;
    if f.degree() != s.len() {
        return Err(Error::DegreeMismatch { left: s.len(), right: f.degree() });
    }
    let u = (0..s.len()).map(|i| (i, f.apply(i))).collect();
    Ok(ProblemData { m, n, s, u })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{ActionDomain, EnumerationMode};
    use crate::doublecosets::same_double_coset;
    use proptest::prelude::*;

    fn group(p: u32, k: usize) -> (AbelianGroup, Ordering) {
        let a = AbelianGroup::elementary(p, k).unwrap();
        let o = a.ordering(EnumerationMode::GradedLex);
        (a, o)
    }

    fn standard_basis(a: &AbelianGroup) -> Vec<usize> {
        (0..a.rank()).map(|i| a.code(&a.generator(i))).collect()
    }

    #[test]
    fn basis_of_identity_and_automorphisms_is_standard() {
        let (a, o) = group(2, 3);
        let id = PointedBijection::identity(&a);
        assert_eq!(find_f_independent_basis(&id, &o).unwrap(), standard_basis(&a));
        let (b, ob) = group(3, 3);
        for m in b.gl_generators().unwrap() {
            let f = b.matrix_bijection(&m).unwrap();
            assert_eq!(find_f_independent_basis(&f, &ob).unwrap(), standard_basis(&b));
        }
    }

    #[test]
    fn greedy_basis_is_least_by_exhaustive_search() {
        let (a, o) = group(3, 2);
        let f = random_bijection(&a, &mut ChaCha8Rng::seed_from_u64(0));
        let mut best: Option<(usize, usize)> = None;
        let mut bases = 0;
        for x in 1..9 {
            for y in 1..9 {
                if !independent(&a, 3, [x, y].into_iter()) {
                    continue;
                }
                bases += 1;
                if independent(&a, 3, [f.image_code(x), f.image_code(y)].into_iter()) {
                    let key = (o.position_of(x), o.position_of(y));
                    best = Some(best.map_or(key, |b| b.min(key)));
                }
            }
        }
        assert_eq!(bases, 48);
        let found = find_f_independent_basis(&f, &o).unwrap();
        assert_eq!((o.position_of(found[0]), o.position_of(found[1])), best.unwrap());
    }

    #[test]
    fn small_bound_cases() {
        let (a, _) = group(2, 2);
        let r = check_independence_bound(&PointedBijection::identity(&a), CountMode::Exact).unwrap();
        assert_eq!((r.count, r.bound, r.total_bases), (6, 6, 6));
        assert!(r.pass);
        let (b, _) = group(3, 2);
        let f = PointedBijection::reflection_on_lines(&b).unwrap();
        let r = check_independence_bound(&f, CountMode::Exact).unwrap();
        assert_eq!(r.count, 48);
        assert_eq!(r.total_bases, 48);
        assert!(r.pass);
    }

    #[test]
    fn bound_factors() {
        assert_eq!(independence_bounds(2, 2), (6, 6));
        // 26 * 4 * (9 - 6 + 2) * 1 * (27 - 18 + 3)
        assert_eq!(independence_bounds(3, 3).0, 26 * 4 * 5 * 12);
        assert_eq!(independence_bounds(3, 3).1, 26 * 4 * 3 * 6);
        assert_eq!(ordered_basis_count(3, 4), 80 * 78 * 72 * 54);
    }

    #[test]
    fn sampling_tracks_exact_count() {
        let (a, _) = group(3, 3);
        let f = random_bijection(&a, &mut ChaCha8Rng::seed_from_u64(5));
        let exact = check_independence_bound(&f, CountMode::Exact).unwrap();
        let est = check_independence_bound(&f, CountMode::Sampled { samples: 10_000, seed: 0 }).unwrap();
        let rel = (est.count as f64 - exact.count as f64).abs() / exact.count as f64;
        assert!(rel < 0.1, "exact {} estimate {}", exact.count, est.count);
    }

    #[test]
    fn exact_count_refuses_large_groups() {
        let (a, _) = group(2, 7);
        let err = check_independence_bound(&PointedBijection::identity(&a), CountMode::Exact).unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
        assert!(matches!(default_count_mode(2, 7), CountMode::Sampled { .. }));
    }

    #[test]
    fn normalization_examples() {
        let (a, o) = group(2, 3);
        let id = normalize_fix_basis(&PointedBijection::identity(&a), &o).unwrap();
        assert_eq!(id.map, PointedBijection::identity(&a));
        let f = a.matrix_bijection(&a.gl_generators().unwrap()[0]).unwrap();
        let g = normalize_fix_basis(&f, &o).unwrap().map;
        assert!(g.is_additive());
        assert_eq!(g, PointedBijection::identity(&a));
        let t = PointedBijection::from_cycles(&a, &o, "(6,7)").unwrap();
        let g = normalize_fix_basis(&t, &o).unwrap().map;
        for c in standard_basis(&a) {
            assert_eq!(g.image_code(c), c);
        }
    }

    #[test]
    fn incidence_examples() {
        let (a, o) = group(2, 3);
        let lines = a.cyclic_subgroups(&o).unwrap();
        let f = PointedBijection::from_cycles(&a, &o, "(2,5,8)(3,4)").unwrap();
        let n = incidence_matrix(&f, &lines).unwrap();
        let perm = f.to_sharp_permutation(&o);
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(n.entries[i][j], u64::from(perm.apply(i) == j));
            }
        }
        let (b, ob) = group(3, 1);
        let n = incidence_matrix(&PointedBijection::identity(&b), &b.cyclic_subgroups(&ob).unwrap()).unwrap();
        assert_eq!(n.entries, vec![vec![2]]);
    }

    #[test]
    fn incidence_of_line_reflection() {
        let (a, o) = group(3, 2);
        let lines = a.cyclic_subgroups(&o).unwrap();
        let f = PointedBijection::reflection_on_lines(&a).unwrap();
        let n = incidence_matrix(&f, &lines).unwrap();
        // Direct construction: i a1 and i a2 are fixed, i(a1 + j a2) goes to i(a1 - j a2).
        let mut expected = vec![vec![0u64; 4]; 4];
        for d0 in 0..3u32 {
            for d1 in 0..3u32 {
                if (d0, d1) == (0, 0) {
                    continue;
                }
                let x = crate::abelian::AbelianElement { digits: vec![d0, d1] };
                let y = if d0 == 0 || d1 == 0 { x.clone() } else { crate::abelian::AbelianElement { digits: vec![d0, 3 - d1] } };
                let i = lines.subgroup_of[a.code(&x)] as usize;
                let j = lines.subgroup_of[a.code(&y)] as usize;
                expected[i][j] += 1;
            }
        }
        assert_eq!(n.entries, expected);
        assert!(n.is_balanced());
        assert_eq!(n.entries.iter().map(|r| r.iter().filter(|&&v| v == 2).count()).sum::<usize>(), 4);
    }

    #[test]
    fn extraction_examples() {
        let (a, o) = group(2, 3);
        let lines = a.cyclic_subgroups(&o).unwrap();
        let f = PointedBijection::from_cycles(&a, &o, "(2,3,8)").unwrap();
        assert_eq!(extract_power_compatible(&f, &lines).unwrap(), vec![f.clone()]);

        let (b, ob) = group(3, 1);
        let lines = b.cyclic_subgroups(&ob).unwrap();
        let id = PointedBijection::identity(&b);
        assert_eq!(extract_power_compatible(&id, &lines).unwrap(), vec![id.clone(), id.clone()]);
        let inv = PointedBijection::from_code_table(b.clone(), b.clone(), vec![0, 2, 1]).unwrap();
        // The relation {(x^i, f(x)^i)} is {(a, a^2), (a^2, a)}; its only power-compatible map is inversion.
        assert!(graph_within_power_relation(&inv, &inv));
        assert!(!graph_within_power_relation(&id, &inv));
        assert_eq!(extract_power_compatible(&inv, &lines).unwrap(), vec![inv.clone(), inv]);
    }

    #[test]
    fn singular_examples() {
        let w = match totally_singular_decompose(&[vec![1, 0], vec![1, 0]]).unwrap() {
            Singularity::Singular(w) => w,
            other => panic!("{other:?}"),
        };
        assert_eq!((w.zero_rows, w.zero_cols), (2, 1));
        assert_eq!(w.block_cols(), &[1]);
        assert!(w.holds_for(&[vec![1, 0], vec![1, 0]]));
        assert_eq!(totally_singular_decompose(&[vec![1, 1], vec![1, 1]]).unwrap(), Singularity::NotSingular(vec![0, 1]));
        assert!(totally_singular_decompose(&[vec![1, 0]]).is_err());
    }

    fn random_doubly_stochastic(k: usize, s: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
        let mut m = vec![vec![0u64; k]; k];
        for _ in 0..s {
            let mut sigma: Vec<usize> = (0..k).collect();
            sigma.shuffle(rng);
            for (i, &j) in sigma.iter().enumerate() {
                m[i][j] += 1;
            }
        }
        m
    }

    #[test]
    fn doubly_stochastic_matrices_are_not_singular() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for t in 0..1000 {
            let k = 1 + t % 8;
            let m = random_doubly_stochastic(k, 1 + t % 3, &mut rng);
            assert!(matches!(totally_singular_decompose(&m).unwrap(), Singularity::NotSingular(_)), "{m:?}");
        }
    }

    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for pos in 0..k {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn s_sets() {
        let s = s_set(2, 3).unwrap();
        let words: Vec<String> = s.iter().map(|e| render_monomial(e)).collect();
        assert_eq!(words, ["a1", "a2", "a1a2", "a1^2a2"]);
        assert_eq!(s_set(1, 7).unwrap(), vec![vec![1]]);
        let direct = (0..4u32)
            .map(|c| vec![c & 1, c >> 1])
            .filter(|e| e.iter().rev().find(|&&d| d != 0) == Some(&1))
            .count();
        assert_eq!(s_set(2, 2).unwrap().len(), direct);
        assert_eq!(direct, 3);
        let f = Permutation::parse_cycles("(1,2,3)", 4).unwrap();
        let data = generate_s_u(2, 3, &f).unwrap();
        assert_eq!(data.u[0], (0, 1));
        assert_eq!(data.u_terms()[3], "(1 - a1^2a2)(1 - a1^2a2)");
        assert!(generate_s_u(2, 3, &Permutation::identity(3)).is_err());
        assert!(s_set(0, 3).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn bound_holds(seed in any::<u64>(), pk in 0usize..6) {
            let (p, k) = [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (5, 3)][pk];
            let (a, o) = group(p, k);
            let f = random_bijection(&a, &mut ChaCha8Rng::seed_from_u64(seed));
            let r = check_independence_bound(&f, CountMode::Exact).unwrap();
            prop_assert!(r.pass, "{:?}", r);
            let basis = find_f_independent_basis(&f, &o).unwrap();
            let image: Vec<usize> = basis.iter().map(|&c| f.image_code(c)).collect();
            prop_assert!(a.is_basis(&basis.iter().map(|&c| a.element(c)).collect::<Vec<_>>()).unwrap());
            prop_assert!(a.is_basis(&image.iter().map(|&c| a.element(c)).collect::<Vec<_>>()).unwrap());
        }

        #[test]
        fn incidence_and_extraction(seed in any::<u64>(), pk in 0usize..5) {
            let (p, k) = [(2, 3), (3, 2), (3, 3), (5, 2), (7, 2)][pk];
            let (a, o) = group(p, k);
            let lines = a.cyclic_subgroups(&o).unwrap();
            let f = random_bijection(&a, &mut ChaCha8Rng::seed_from_u64(seed));
            let n = incidence_matrix(&f, &lines).unwrap();
            prop_assert!(n.is_balanced());
            let maps = extract_power_compatible(&f, &lines).unwrap();
            prop_assert_eq!(maps.len(), p as usize - 1);
            let mut remaining = n.entries.clone();
            for g in &maps {
                prop_assert!(g.is_power_compatible());
                prop_assert!(graph_within_power_relation(g, &f));
                for (i, &x) in lines.generators.iter().enumerate() {
                    let j = lines.subgroup_of[g.image_code(x as usize)] as usize;
                    prop_assert!(remaining[i][j] > 0);
                    remaining[i][j] -= 1;
                }
            }
            prop_assert!(remaining.iter().flatten().all(|&v| v == 0));
        }

        #[test]
        fn singularity_matches_permanent_support(k in 1usize..7, cells in proptest::collection::vec(0u64..3, 36)) {
            let m: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(cells[i * 6 + j] == 0)).collect()).collect();
            let brute = permutations(k).iter().any(|s| (0..k).all(|i| m[i][s[i]] > 0));
            match totally_singular_decompose(&m).unwrap() {
                Singularity::NotSingular(s) => {
                    prop_assert!(brute);
                    prop_assert!((0..k).all(|i| m[i][s[i]] > 0));
                }
                Singularity::Singular(w) => {
                    prop_assert!(!brute);
                    prop_assert!(w.holds_for(&m));
                }
            }
        }

        #[test]
        fn normalization_stays_in_double_coset(seed in any::<u64>(), pk in 0usize..3) {
            let (p, k) = [(2, 3), (3, 2), (3, 3)][pk];
            let (a, o) = group(p, k);
            let f = random_bijection(&a, &mut ChaCha8Rng::seed_from_u64(seed));
            let g = normalize_fix_basis(&f, &o).unwrap().map;
            for c in standard_basis(&a) {
                prop_assert_eq!(g.image_code(c), c);
            }
            let u = a.automorphism_perm_group(&o, ActionDomain::Elements).unwrap();
            let same = same_double_coset(&u, &f.to_sharp_permutation(&o), &g.to_sharp_permutation(&o)).unwrap();
            prop_assert!(same.same);
        }
    }
}
