//! Todd-Coxeter coset enumeration.
//!
//! Each generator gets a column and, unless it is an involution (the
//! presentation contains `g^2`), a separate inverse column. Cosets are
//! numbered from 1 inside the enumerator; 0 marks an undefined entry. The
//! finished table is compressed to 0-based, definition-ordered cosets.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};
use crate::presentations::{GroupWord, Presentation};

pub const DEFAULT_MAX_COSETS: usize = 1 << 21;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Felsch,
    Hlt,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Felsch => "felsch",
            Strategy::Hlt => "hlt+lookahead",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerationOptions {
    pub max_cosets: usize,
    /// `None` picks Felsch up to 64 generators and HLT beyond.
    pub strategy: Option<Strategy>,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { max_cosets: DEFAULT_MAX_COSETS, strategy: None }
    }
}

impl EnumerationOptions {
    pub fn with_max_cosets(max_cosets: usize) -> Self {
        EnumerationOptions { max_cosets, strategy: None }
    }

    pub fn with_strategy(mut self, s: Strategy) -> Self {
        self.strategy = Some(s);
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    pub total_defined: usize,
    pub max_live: usize,
    pub coincidences: usize,
}

/// A closed coset table.
#[derive(Clone, Debug)]
pub struct CosetTable {
    num_gens: usize,
    /// Column of generator `g` and of its inverse.
    gen_col: Vec<u32>,
    inv_gen_col: Vec<u32>,
    num_cols: usize,
    /// `index * num_cols` entries, 0-based cosets.
    rows: Vec<u32>,
    index: usize,
    pub strategy: Strategy,
    pub stats: EnumerationStats,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn num_generators(&self) -> usize {
        self.num_gens
    }

    /// Image of `coset` under generator `g` (or its inverse).
    #[inline]
    pub fn act(&self, coset: usize, g: usize, inverse: bool) -> usize {
        let col = if inverse { self.inv_gen_col[g] } else { self.gen_col[g] } as usize;
        self.rows[coset * self.num_cols + col] as usize
    }

    pub fn trace(&self, coset: usize, w: &GroupWord) -> usize {
        let mut c = coset;
        for &(g, e) in w.letters() {
            for _ in 0..e.unsigned_abs() {
                c = self.act(c, g as usize, e < 0);
            }
        }
        c
    }

    /// Right action of generator `g` on the cosets.
    pub fn generator_permutation(&self, g: usize) -> Permutation {
        let images = (0..self.index).map(|c| self.act(c, g, false) as u32).collect();
        Permutation::from_images_unchecked(images)
    }

    /// One permutation per presentation generator.
    pub fn perm_image(&self) -> Result<PermutationGroup> {
        let gens = (0..self.num_gens).map(|g| self.generator_permutation(g)).collect();
        PermutationGroup::new(self.index, gens)
    }

    /// Generator action arrays `right[g][coset]`.
    pub fn generator_images(&self) -> Vec<Vec<u32>> {
        (0..self.num_gens).map(|g| (0..self.index).map(|c| self.act(c, g, false) as u32).collect()).collect()
    }

    pub fn to_csv(&self, names: &[String]) -> String {
        let mut s = String::from("coset");
        for n in names.iter().take(self.num_gens) {
            s.push(',');
            s.push_str(n);
        }
        s.push('\n');
        for c in 0..self.index {
            s.push_str(&alloc::format!("{}", c + 1));
            for g in 0..self.num_gens {
                s.push_str(&alloc::format!(",{}", self.act(c, g, false) + 1));
            }
            s.push('\n');
        }
        s
    }
}

struct Enumerator {
    num_cols: usize,
    inv: Vec<u32>,
    table: Vec<u32>,
    /// Union-find parent; `parent[c] == c` for live cosets.
    parent: Vec<u32>,
    live: Vec<bool>,
    allocated: usize,
    num_live: usize,
    capacity: usize,
    max_cosets: usize,
    deductions: Vec<(u32, u32)>,
    track_deductions: bool,
    queue: Vec<u32>,
    stats: EnumerationStats,
}

impl Enumerator {
    fn new(num_cols: usize, inv: Vec<u32>, max_cosets: usize, track: bool) -> Self {
        let capacity = max_cosets.saturating_add(max_cosets / 2).max(16);
        let mut e = Enumerator {
            num_cols,
            inv,
            table: vec![0; 2 * num_cols],
            parent: vec![0, 1],
            live: vec![false, true],
            allocated: 1,
            num_live: 1,
            capacity,
            max_cosets,
            deductions: Vec::new(),
            track_deductions: track,
            queue: Vec::new(),
            stats: EnumerationStats { total_defined: 1, max_live: 1, coincidences: 0 },
        };
        e.table.reserve(num_cols * 1024);
        e
    }

    #[inline]
    fn get(&self, c: u32, x: u32) -> u32 {
        self.table[c as usize * self.num_cols + x as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, x: u32, d: u32) {
        self.table[c as usize * self.num_cols + x as usize] = d;
    }

    fn new_coset(&mut self) -> Result<u32> {
        if self.num_live >= self.max_cosets {
            return Err(Error::Overflow { max_cosets: self.max_cosets });
        }
        let c = self.allocated as u32 + 1;
        self.allocated += 1;
        self.table.extend(core::iter::repeat_n(0, self.num_cols));
        self.parent.push(c);
        self.live.push(true);
        self.num_live += 1;
        self.stats.total_defined += 1;
        self.stats.max_live = self.stats.max_live.max(self.num_live);
        Ok(c)
    }

    fn define(&mut self, c: u32, x: u32) -> Result<u32> {
        let d = self.new_coset()?;
        self.set(c, x, d);
        self.set(d, self.inv[x as usize], c);
        if self.track_deductions {
            self.deductions.push((c, x));
        }
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        self.live[hi as usize] = false;
        self.num_live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.stats.coincidences += 1;
        self.queue.clear();
        self.merge(a, b);
        let mut qi = 0;
        while qi < self.queue.len() {
            let g = self.queue[qi];
            qi += 1;
            for x in 0..self.num_cols as u32 {
                let d = self.get(g, x);
                if d == 0 {
                    continue;
                }
                let ix = self.inv[x as usize];
                // Clear the back pointer before re-deriving it.
                if self.get(d, ix) == g {
                    self.set(d, ix, 0);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let m_img = self.get(mu, x);
                if m_img != 0 {
                    let t = self.rep(m_img);
                    self.merge(nu, t);
                } else {
                    let n_img = self.get(nu, ix);
                    if n_img != 0 {
                        let t = self.rep(n_img);
                        self.merge(mu, t);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, ix, mu);
                        if self.track_deductions {
                            self.deductions.push((mu, x));
                        }
                    }
                }
            }
        }
    }

    /// Deduction-only scan of `w` from `alpha`.
    fn scan(&mut self, alpha: u32, w: &[u32]) {
        let n = w.len();
        let mut f = alpha;
        let mut i = 0;
        while i < n {
            let nx = self.get(f, w[i]);
            if nx == 0 {
                break;
            }
            f = nx;
            i += 1;
        }
        if i == n {
            if f != alpha {
                self.coincidence(f, alpha);
            }
            return;
        }
        let mut b = alpha;
        let mut j = n;
        while j > i {
            let nx = self.get(b, self.inv[w[j - 1] as usize]);
            if nx == 0 {
                break;
            }
            b = nx;
            j -= 1;
        }
        if j == i {
            if f != b {
                self.coincidence(f, b);
            }
        } else if j == i + 1 {
            let x = w[i];
            self.set(f, x, b);
            self.set(b, self.inv[x as usize], f);
            if self.track_deductions {
                self.deductions.push((f, x));
            }
        }
    }

    /// Scan that defines new cosets to close the gap.
    fn scan_and_fill(&mut self, alpha: u32, w: &[u32]) -> Result<()> {
        let n = w.len();
        let mut f = alpha;
        let mut i = 0;
        let mut b = alpha;
        let mut j = n;
        loop {
            while i < j {
                let nx = self.get(f, w[i]);
                if nx == 0 {
                    break;
                }
                f = nx;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let nx = self.get(b, self.inv[w[j - 1] as usize]);
                if nx == 0 {
                    break;
                }
                b = nx;
                j -= 1;
            }
            if j == i {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            if j == i + 1 {
                let x = w[i];
                self.set(f, x, b);
                self.set(b, self.inv[x as usize], f);
                if self.track_deductions {
                    self.deductions.push((f, x));
                }
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Renumbers live cosets to `1..=num_live` in index order. Returns the
    /// new number of `keep`.
    fn compact(&mut self, keep: u32) -> u32 {
        let mut map = vec![0u32; self.allocated + 1];
        let mut next = 0u32;
        for c in 1..=self.allocated {
            if self.live[c] {
                next += 1;
                map[c] = next;
            }
        }
        let nc = self.num_cols;
        let mut table = vec![0u32; (next as usize + 1) * nc];
        for c in 1..=self.allocated {
            if !self.live[c] {
                continue;
            }
            let nc_row = map[c] as usize * nc;
            for x in 0..nc {
                let d = self.table[c * nc + x];
                table[nc_row + x] = if d == 0 { 0 } else { map[d as usize] };
            }
        }
        self.table = table;
        self.allocated = next as usize;
        self.parent = (0..=next).collect();
        self.live = vec![true; next as usize + 1];
        self.live[0] = false;
        let deductions = core::mem::take(&mut self.deductions);
        self.deductions = deductions.into_iter().filter(|&(c, _)| map[c as usize] != 0).map(|(c, x)| (map[c as usize], x)).collect();
        map[keep as usize]
    }

    fn live_rep_of(&mut self, c: u32) -> u32 {
        self.rep(c)
    }
}

struct Prepared {
    num_cols: usize,
    inv: Vec<u32>,
    gen_col: Vec<u32>,
    inv_gen_col: Vec<u32>,
    relators: Vec<Vec<u32>>,
    /// Cyclic conjugates of relators and their inverses, by first column.
    conjugates: Vec<Vec<Vec<u32>>>,
}

fn cyclically_reduce(w: &GroupWord) -> GroupWord {
    let mut letters: Vec<(u32, i32)> = w.letters().to_vec();
    loop {
        if letters.len() >= 2 {
            let first = letters[0];
            let last = *letters.last().unwrap();
            if first.0 == last.0 {
                let total = first.1 + last.1;
                letters.pop();
                if total == 0 {
                    letters.remove(0);
                } else {
                    letters[0].1 = total;
                }
                continue;
            }
        }
        break;
    }
    GroupWord::from_letters(&letters)
}

fn prepare(p: &Presentation, subgroup: &[GroupWord]) -> Result<(Prepared, Vec<Vec<u32>>)> {
    let ng = p.num_generators();
    let words: Vec<GroupWord> = p.relator_words().iter().map(cyclically_reduce).collect();
    let mut involution = vec![false; ng];
    for w in &words {
        if let [(g, e)] = w.letters() {
            if e.abs() == 2 {
                involution[*g as usize] = true;
            }
        }
    }
    let mut gen_col = vec![0u32; ng];
    let mut inv_gen_col = vec![0u32; ng];
    let mut inv = Vec::new();
    let mut col = 0u32;
    for g in 0..ng {
        gen_col[g] = col;
        if involution[g] {
            inv_gen_col[g] = col;
            inv.push(col);
            col += 1;
        } else {
            inv_gen_col[g] = col + 1;
            inv.push(col + 1);
            inv.push(col);
            col += 2;
        }
    }
    let num_cols = col as usize;
    let to_cols = |w: &GroupWord| -> Vec<u32> {
        w.unit_letters().into_iter().map(|(g, neg)| if neg { inv_gen_col[g as usize] } else { gen_col[g as usize] }).collect()
    };
    let mut relators: Vec<Vec<u32>> = Vec::new();
    for w in &words {
        if w.is_identity() {
            continue;
        }
        if let [(g, e)] = w.letters() {
            if e.abs() == 2 && involution[*g as usize] {
                continue;
            }
        }
        let cols = to_cols(w);
        if !relators.contains(&cols) {
            relators.push(cols);
        }
    }
    let mut conjugates: Vec<Vec<Vec<u32>>> = vec![Vec::new(); num_cols];
    for r in &relators {
        let inverse: Vec<u32> = r.iter().rev().map(|&x| inv[x as usize]).collect();
        for base in [r, &inverse] {
            for s in 0..base.len() {
                let rot: Vec<u32> = base[s..].iter().chain(&base[..s]).copied().collect();
                let bucket = &mut conjugates[rot[0] as usize];
                if !bucket.contains(&rot) {
                    bucket.push(rot);
                }
            }
        }
    }
    let subgroup_cols: Vec<Vec<u32>> = subgroup.iter().filter(|w| !w.is_identity()).map(to_cols).collect();
    for w in subgroup {
        if w.max_generator().is_some_and(|g| g as usize >= ng) {
            return Err(Error::OutOfRange { what: "subgroup generator", value: w.max_generator().unwrap() as usize, limit: ng });
        }
    }
    Ok((Prepared { num_cols, inv, gen_col, inv_gen_col, relators, conjugates }, subgroup_cols))
}

/// Enumerates the cosets of `<subgroup>` in the group presented by `p`.
/// An empty subgroup list gives the regular table.
pub fn todd_coxeter(p: &Presentation, subgroup: &[GroupWord], opts: EnumerationOptions) -> Result<CosetTable> {
    if opts.max_cosets < 1 {
        return Err(Error::InvalidInput("max_cosets must be at least 1".into()));
    }
    let (prep, sub) = prepare(p, subgroup)?;
    let strategy = opts.strategy.unwrap_or(if p.num_generators() <= 64 { Strategy::Felsch } else { Strategy::Hlt });
    let mut e = Enumerator::new(prep.num_cols, prep.inv.clone(), opts.max_cosets, strategy == Strategy::Felsch);
    for w in &sub {
        e.scan_and_fill(1, w)?;
    }
    match strategy {
        Strategy::Felsch => run_felsch(&mut e, &prep)?,
        Strategy::Hlt => run_hlt(&mut e, &prep)?,
    }
    finish(e, &prep, &sub, p.num_generators(), strategy)
}

fn process_deductions(e: &mut Enumerator, prep: &Prepared) {
    while let Some((c, x)) = e.deductions.pop() {
        if !e.live[c as usize] {
            continue;
        }
        for w in &prep.conjugates[x as usize] {
            if !e.live[c as usize] {
                break;
            }
            e.scan(c, w);
        }
        let d = e.get(c, x);
        if d == 0 || !e.live[d as usize] {
            continue;
        }
        let ix = e.inv[x as usize];
        for w in &prep.conjugates[ix as usize] {
            if !e.live[d as usize] {
                break;
            }
            e.scan(d, w);
        }
    }
}

fn run_felsch(e: &mut Enumerator, prep: &Prepared) -> Result<()> {
    process_deductions(e, prep);
    // Relators must hold at coset 1 even when no deduction touches them.
    for r in &prep.relators {
        let one = e.live_rep_of(1);
        e.scan_and_fill(one, r)?;
        process_deductions(e, prep);
    }
    let mut alpha: u32 = 1;
    while (alpha as usize) <= e.allocated {
        if e.live[alpha as usize] {
            for x in 0..e.num_cols as u32 {
                if !e.live[alpha as usize] {
                    break;
                }
                if e.get(alpha, x) != 0 {
                    continue;
                }
                if e.allocated >= e.capacity {
                    alpha = e.compact(alpha);
                }
                e.define(alpha, x)?;
                process_deductions(e, prep);
            }
        }
        alpha += 1;
    }
    Ok(())
}

fn lookahead(e: &mut Enumerator, prep: &Prepared) {
    let mut c = 1u32;
    while (c as usize) <= e.allocated {
        for r in &prep.relators {
            if !e.live[c as usize] {
                break;
            }
            e.scan(c, r);
        }
        c += 1;
    }
}

fn run_hlt(e: &mut Enumerator, prep: &Prepared) -> Result<()> {
    let mut alpha: u32 = 1;
    while (alpha as usize) <= e.allocated {
        if e.live[alpha as usize] {
            let mut r_idx = 0;
            while r_idx < prep.relators.len() && e.live[alpha as usize] {
                if e.allocated >= e.capacity {
                    alpha = e.compact(alpha);
                }
                match e.scan_and_fill(alpha, &prep.relators[r_idx]) {
                    Ok(()) => r_idx += 1,
                    Err(Error::Overflow { .. }) => {
                        let before = e.num_live;
                        lookahead(e, prep);
                        if !e.live[alpha as usize] {
                            break;
                        }
                        if e.num_live >= before {
                            return Err(Error::Overflow { max_cosets: e.max_cosets });
                        }
                    }
                    Err(err) => return Err(err),
                }
            }
            for x in 0..e.num_cols as u32 {
                if !e.live[alpha as usize] {
                    break;
                }
                if e.get(alpha, x) == 0 {
                    if e.allocated >= e.capacity {
                        alpha = e.compact(alpha);
                    }
                    if e.define(alpha, x).is_err() {
                        let before = e.num_live;
                        lookahead(e, prep);
                        if e.num_live >= before {
                            return Err(Error::Overflow { max_cosets: e.max_cosets });
                        }
                        if e.live[alpha as usize] && e.get(alpha, x) == 0 {
                            e.define(alpha, x)?;
                        }
                    }
                }
            }
        }
        alpha += 1;
    }
    Ok(())
}

fn finish(mut e: Enumerator, prep: &Prepared, sub: &[Vec<u32>], num_gens: usize, strategy: Strategy) -> Result<CosetTable> {
    e.compact(1);
    let n = e.allocated;
    let nc = e.num_cols;
    let mut rows = vec![0u32; n * nc];
    for c in 1..=n {
        for x in 0..nc {
            let d = e.table[c * nc + x];
            if d == 0 {
                return Err(Error::Internal("coset table incomplete after enumeration".into()));
            }
            rows[(c - 1) * nc + x] = d - 1;
        }
    }
    let trace = |start: usize, w: &[u32]| w.iter().fold(start, |c, &x| rows[c * nc + x as usize] as usize);
    for r in &prep.relators {
        for c in 0..n {
            if trace(c, r) != c {
                return Err(Error::Internal("relator does not close in the final table".into()));
            }
        }
    }
    for w in sub {
        if trace(0, w) != 0 {
            return Err(Error::Internal("subgroup generator does not fix the first coset".into()));
        }
    }
    Ok(CosetTable {
        num_gens,
        gen_col: prep.gen_col.clone(),
        inv_gen_col: prep.inv_gen_col.clone(),
        num_cols: nc,
        rows,
        index: n,
        strategy,
        stats: e.stats,
    })
}

/// Order of the presented group by regular enumeration.
pub fn group_order(p: &Presentation, opts: EnumerationOptions) -> Result<usize> {
    Ok(todd_coxeter(p, &[], opts)?.index())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{AbelianGroup, EnumerationMode, PointedBijection};
    use crate::presentations::{build_pairs_presentation, PairSet};

    fn pres(s: &str) -> Presentation {
        Presentation::parse(s).unwrap()
    }

    fn both(p: &Presentation, sub: &[GroupWord]) -> usize {
        let f = todd_coxeter(p, sub, EnumerationOptions::default().with_strategy(Strategy::Felsch)).unwrap();
        let h = todd_coxeter(p, sub, EnumerationOptions::default().with_strategy(Strategy::Hlt)).unwrap();
        assert_eq!(f.index(), h.index());
        f.index()
    }

    #[test]
    fn cyclic_group() {
        let p = pres("< a | a^5 >");
        assert_eq!(both(&p, &[]), 5);
        let t = todd_coxeter(&p, &[], EnumerationOptions::default()).unwrap();
        let img = t.perm_image().unwrap();
        assert_eq!(img.order(), 5);
        assert_eq!(img.generators()[0].cycle_type(), vec![5]);
    }

    #[test]
    fn small_groups() {
        assert_eq!(both(&pres("< a,b | a^2, b^3, (a*b)^3 >"), &[]), 12);
        assert_eq!(both(&pres("< a,b | a^2, b^3, (a*b)^4 >"), &[]), 24);
        assert_eq!(both(&pres("< a,b | a^2, b^3, (a*b)^5 >"), &[]), 60);
        assert_eq!(both(&pres("< a,b | a^8, b^2*a^4, b^-1*a*b*a >"), &[]), 16);
        assert_eq!(both(&pres("< a,b | a^3, b^3, [a,b] >"), &[]), 9);
        assert_eq!(both(&pres("< a | a >"), &[]), 1);
    }

    #[test]
    fn subgroup_index_divides() {
        let p = pres("< a,b | a^2, b^3, (a*b)^5 >");
        let sub = [GroupWord::letter(1, 1)];
        assert_eq!(both(&p, &sub), 20);
        let sub = [GroupWord::letter(0, 1), GroupWord::letter(1, 1)];
        assert_eq!(both(&p, &sub), 1);
    }

    #[test]
    fn overflow_reported() {
        let p = pres("< a,b | a^2, b^2 >");
        let r = todd_coxeter(&p, &[], EnumerationOptions::with_max_cosets(100));
        assert_eq!(r.unwrap_err(), Error::Overflow { max_cosets: 100 });
        let r = todd_coxeter(&p, &[], EnumerationOptions::with_max_cosets(100).with_strategy(Strategy::Hlt));
        assert_eq!(r.unwrap_err(), Error::Overflow { max_cosets: 100 });
    }

    #[test]
    fn weak_commutativity_rank_three_identity() {
        let a = AbelianGroup::elementary(2, 3).unwrap();
        let p = build_pairs_presentation(&PairSet::graph(&PointedBijection::identity(&a))).unwrap();
        assert_eq!(both(&p, &[]), 1024);
    }

    #[test]
    fn cyclic_four_all_bijections() {
        let c4 = AbelianGroup::new(vec![4]).unwrap();
        let ord = c4.ordering(EnumerationMode::PlainLex);
        for cyc in ["()", "(2,3)", "(2,4)", "(3,4)", "(2,3,4)", "(2,4,3)"] {
            let f = PointedBijection::from_cycles(&c4, &ord, cyc).unwrap();
            let p = build_pairs_presentation(&PairSet::graph(&f)).unwrap();
            assert_eq!(both(&p, &[]), 16, "{cyc}");
        }
    }

    #[test]
    fn shuffled_relators_same_index() {
        let a = AbelianGroup::elementary(2, 3).unwrap();
        let ord = a.ordering(EnumerationMode::GradedLex);
        let f = PointedBijection::from_cycles(&a, &ord, "(6,7,8)").unwrap();
        let mut p = build_pairs_presentation(&PairSet::graph(&f)).unwrap();
        let n1 = both(&p, &[]);
        p.relators.reverse();
        let n2 = both(&p, &[]);
        assert_eq!((n1, n2), (256, 256));
    }

    #[test]
    fn csv_dump() {
        let t = todd_coxeter(&pres("< a | a^3 >"), &[], EnumerationOptions::default()).unwrap();
        assert_eq!(t.to_csv(&["a".into()]), "coset,a\n1,2\n2,3\n3,1\n");
    }
}
