//! Finite groups given by a regular action (a closed coset table over the
//! trivial subgroup). Elements are the points `0..order`, with `0` the
//! identity. Every element carries a shortest word in the generators, so a
//! product `x*y` costs one table lookup per letter of `y`.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::enumerator::{todd_coxeter, CosetTable, EnumerationOptions};
use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};
use crate::presentations::{GroupWord, Presentation};
use crate::util::factorize;

pub type Element = u32;

pub const IDENTITY: Element = 0;

#[derive(Clone, Debug)]
pub struct RegularGroup {
    order: usize,
    num_gens: usize,
    /// `cols[2g][x] = x*g`, `cols[2g+1][x] = x*g^-1`.
    cols: Vec<Vec<u32>>,
    word_start: Vec<u32>,
    /// Column indices, flattened.
    letters: Vec<u8>,
}

/// A subgroup as a membership bitset plus its element list and generators.
#[derive(Clone, Debug)]
pub struct Subgroup {
    bits: Vec<u64>,
    elements: Vec<Element>,
    gens: Vec<Element>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, x: Element) -> bool {
        self.bits[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn generators(&self) -> &[Element] {
        &self.gens
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.gens.iter().all(|&g| other.contains(g))
    }

    pub fn same_as(&self, other: &Subgroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    #[inline]
    fn insert(&mut self, x: Element) -> bool {
        let (w, b) = ((x >> 6) as usize, x & 63);
        if self.bits[w] >> b & 1 == 1 {
            return false;
        }
        self.bits[w] |= 1 << b;
        self.elements.push(x);
        true
    }
}

impl RegularGroup {
    /// Builds the group from generator actions on the points of a regular
    /// action, point 0 being the identity. Regularity is the caller's
    /// promise; transitivity is checked.
    pub fn from_actions(actions: Vec<Vec<u32>>) -> Result<Self> {
        let num_gens = actions.len();
        if num_gens > 127 {
            return Err(Error::Capacity { what: "generators of a regular group", limit: 127 });
        }
        let order = actions.first().map_or(1, |a| a.len());
        let mut cols = Vec::with_capacity(2 * num_gens);
        for a in actions {
            if a.len() != order {
                return Err(Error::DegreeMismatch { left: order, right: a.len() });
            }
            let mut inv = vec![u32::MAX; order];
            for (x, &y) in a.iter().enumerate() {
                if y as usize >= order || inv[y as usize] != u32::MAX {
                    return Err(Error::NotBijection("generator action".into()));
                }
                inv[y as usize] = x as u32;
            }
            cols.push(a);
            cols.push(inv);
        }
        // BFS spanning tree from the identity.
        let mut parent = vec![u32::MAX; order];
        let mut via = vec![0u8; order];
        let mut bfs = Vec::with_capacity(order);
        parent[0] = 0;
        bfs.push(0u32);
        let mut head = 0;
        while head < bfs.len() {
            let x = bfs[head];
            head += 1;
            for (c, col) in cols.iter().enumerate() {
                let y = col[x as usize];
                if parent[y as usize] == u32::MAX {
                    parent[y as usize] = x;
                    via[y as usize] = c as u8;
                    bfs.push(y);
                }
            }
        }
        if bfs.len() != order {
            return Err(Error::InvalidInput("action is not transitive".into()));
        }
        let mut depth = vec![0u32; order];
        for &x in &bfs[1..] {
            depth[x as usize] = depth[parent[x as usize] as usize] + 1;
        }
        let mut word_start = Vec::with_capacity(order + 1);
        let mut total = 0u32;
        for &d in &depth {
            word_start.push(total);
            total += d;
        }
        word_start.push(total);
        let mut letters = vec![0u8; total as usize];
        for x in 0..order {
            let (s, e) = (word_start[x] as usize, word_start[x + 1] as usize);
            let mut y = x;
            for i in (s..e).rev() {
                letters[i] = via[y];
                y = parent[y] as usize;
            }
        }
        Ok(RegularGroup { order, num_gens, cols, word_start, letters })
    }

    pub fn from_table(table: &CosetTable) -> Result<Self> {
        Self::from_actions(table.generator_images())
    }

    /// Enumerates the cosets of the trivial subgroup.
    pub fn from_presentation(p: &Presentation, opts: EnumerationOptions) -> Result<Self> {
        Self::from_table(&todd_coxeter(p, &[], opts)?)
    }

    /// Regular representation of a permutation group, built by listing its
    /// elements (at most `cap`).
    pub fn from_permutation_group(g: &PermutationGroup, cap: usize) -> Result<Self> {
        let order = g.order();
        if order > cap as u128 {
            return Err(Error::Capacity { what: "permutation group order", limit: cap as u128 });
        }
        let gens = g.generators();
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut elems: Vec<Permutation> = vec![Permutation::identity(g.degree())];
        index.insert(elems[0].images().to_vec(), 0);
        let mut actions = vec![Vec::new(); gens.len()];
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head].clone();
            for (i, s) in gens.iter().enumerate() {
                let y = x.mul(s);
                let next = elems.len() as u32;
                let id = *index.entry(y.images().to_vec()).or_insert(next);
                if id == next {
                    elems.push(y);
                }
                actions[i].push(id);
            }
            head += 1;
        }
        if gens.is_empty() {
            return Self::from_actions(Vec::new());
        }
        Self::from_actions(actions)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_generators(&self) -> usize {
        self.num_gens
    }

    pub fn generator(&self, g: usize) -> Element {
        self.cols[2 * g][0]
    }

    pub fn generator_elements(&self) -> Vec<Element> {
        (0..self.num_gens).map(|g| self.generator(g)).collect()
    }

    #[inline]
    fn letters_of(&self, x: Element) -> &[u8] {
        let x = x as usize;
        &self.letters[self.word_start[x] as usize..self.word_start[x + 1] as usize]
    }

    pub fn word_length(&self, x: Element) -> usize {
        self.letters_of(x).len()
    }

    /// A shortest word for `x` in the generators.
    pub fn word(&self, x: Element) -> GroupWord {
        let letters: Vec<(u32, i32)> = self
            .letters_of(x)
            .iter()
            .map(|&c| ((c / 2) as u32, if c % 2 == 0 { 1 } else { -1 }))
            .collect();
        GroupWord::from_letters(&letters)
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        let mut z = x;
        for &c in self.letters_of(y) {
            z = self.cols[c as usize][z as usize];
        }
        z
    }

    /// `x * y^-1`.
    #[inline]
    pub fn mul_inv(&self, x: Element, y: Element) -> Element {
        let mut z = x;
        for &c in self.letters_of(y).iter().rev() {
            z = self.cols[(c ^ 1) as usize][z as usize];
        }
        z
    }

    pub fn inv(&self, x: Element) -> Element {
        self.mul_inv(IDENTITY, x)
    }

    pub fn pow(&self, x: Element, e: i64) -> Element {
        let base = if e < 0 { self.inv(x) } else { x };
        let mut e = e.unsigned_abs();
        let (mut acc, mut sq) = (IDENTITY, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(sq, sq);
            }
        }
        acc
    }

    /// `g^-1 x g`.
    pub fn conj(&self, x: Element, g: Element) -> Element {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `x^-1 y^-1 x y`.
    pub fn commutator(&self, x: Element, y: Element) -> Element {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(self.inv(yx), xy)
    }

    /// Left-normed `[x1, x2, ..., xr]`.
    pub fn commutator_chain(&self, xs: &[Element]) -> Element {
        let mut it = xs.iter();
        let mut acc = it.next().copied().unwrap_or(IDENTITY);
        for &y in it {
            acc = self.commutator(acc, y);
        }
        acc
    }

    /// Value of a word in the presentation generators.
    pub fn evaluate(&self, w: &GroupWord) -> Element {
        let mut z = IDENTITY;
        for &(g, e) in w.letters() {
            let c = 2 * g as usize + usize::from(e < 0);
            for _ in 0..e.unsigned_abs() {
                z = self.cols[c][z as usize];
            }
        }
        z
    }

    /// Value of a word whose letters are variables bound to `values`.
    pub fn substitute(&self, w: &GroupWord, values: &[Element]) -> Element {
        let mut z = IDENTITY;
        for &(v, e) in w.letters() {
            let x = values[v as usize];
            for _ in 0..e.unsigned_abs() {
                z = if e < 0 { self.mul_inv(z, x) } else { self.mul(z, x) };
            }
        }
        z
    }

    pub fn element_order(&self, x: Element) -> u64 {
        let mut y = x;
        let mut k = 1u64;
        while y != IDENTITY {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn commute(&self, x: Element, y: Element) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    /// Commutes with every generator of the whole group.
    pub fn is_central(&self, x: Element) -> bool {
        (0..self.num_gens).all(|g| {
            let gx = self.mul(self.generator(g), x);
            self.cols[2 * g][x as usize] == gx
        })
    }

    fn empty_subgroup(&self) -> Subgroup {
        let mut s = Subgroup { bits: vec![0; self.order.div_ceil(64)], elements: Vec::new(), gens: Vec::new() };
        s.insert(IDENTITY);
        s
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.empty_subgroup()
    }

    pub fn whole(&self) -> Subgroup {
        let mut s = Subgroup {
            bits: vec![u64::MAX; self.order.div_ceil(64)],
            elements: (0..self.order as u32).collect(),
            gens: self.generator_elements().into_iter().filter(|&g| g != IDENTITY).collect(),
        };
        if !self.order.is_multiple_of(64) {
            let last = s.bits.len() - 1;
            s.bits[last] = (1u64 << (self.order % 64)) - 1;
        }
        s
    }

    /// Adds `s` to the generators of `h` and closes up.
    pub fn extend(&self, h: &mut Subgroup, s: Element) {
        if h.contains(s) {
            return;
        }
        h.gens.push(s);
        let old = h.elements.len();
        for i in 0..old {
            let y = self.mul(h.elements[i], s);
            h.insert(y);
        }
        let mut head = old;
        while head < h.elements.len() {
            let x = h.elements[head];
            head += 1;
            for gi in 0..h.gens.len() {
                let y = self.mul(x, h.gens[gi]);
                h.insert(y);
            }
        }
    }

    pub fn subgroup(&self, gens: &[Element]) -> Subgroup {
        let mut h = self.empty_subgroup();
        for &g in gens {
            self.extend(&mut h, g);
        }
        h
    }

    /// Join of two subgroups (the subgroup they generate).
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut h = a.clone();
        for &g in &b.gens {
            self.extend(&mut h, g);
        }
        h
    }

    /// Smallest subgroup containing `seeds` and invariant under conjugation
    /// by every element of `by`.
    pub fn closure_under_conjugation(&self, seeds: &[Element], by: &[Element]) -> Subgroup {
        let mut h = self.subgroup(seeds);
        let by_inv: Vec<Element> = by.iter().map(|&g| self.inv(g)).collect();
        let mut done = 0;
        while done < h.gens.len() {
            let t = h.gens[done];
            done += 1;
            for (&g, &gi) in by.iter().zip(&by_inv) {
                let c = self.mul(self.mul(gi, t), g);
                if !h.contains(c) {
                    self.extend(&mut h, c);
                }
            }
        }
        h
    }

    pub fn normal_closure(&self, seeds: &[Element]) -> Subgroup {
        self.closure_under_conjugation(seeds, &self.generator_elements())
    }

    /// `[A, B]`, generated by commutators of generators and closed under
    /// conjugation by `<A, B>`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut seeds = Vec::new();
        for &x in &a.gens {
            for &y in &b.gens {
                let c = self.commutator(x, y);
                if c != IDENTITY {
                    seeds.push(c);
                }
            }
        }
        let by: Vec<Element> = a.gens.iter().chain(&b.gens).copied().collect();
        self.closure_under_conjugation(&seeds, &by)
    }

    /// Subgroup generated by `x^e` for `x` in `h`; for abelian `h` the
    /// powers of its generators suffice.
    pub fn power_subgroup(&self, h: &Subgroup, e: i64) -> Subgroup {
        if self.is_abelian(h) {
            let gens: Vec<Element> = h.gens.iter().map(|&g| self.pow(g, e)).collect();
            self.subgroup(&gens)
        } else {
            let gens: Vec<Element> = h.elements.iter().map(|&g| self.pow(g, e)).collect();
            self.subgroup(&gens)
        }
    }

    pub fn is_abelian(&self, h: &Subgroup) -> bool {
        let g = &h.gens;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| self.commute(g[i], g[j])))
    }

    /// `h` is normalized by every generator of the whole group.
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let by = self.generator_elements();
        h.gens.iter().all(|&t| by.iter().all(|&g| h.contains(self.conj(t, g))))
    }

    pub fn center(&self) -> Subgroup {
        let mut bits = vec![0u64; self.order.div_ceil(64)];
        let mut elements = Vec::new();
        for x in 0..self.order as u32 {
            if self.is_central(x) {
                bits[(x >> 6) as usize] |= 1 << (x & 63);
                elements.push(x);
            }
        }
        let mut z = Subgroup { bits, elements, gens: Vec::new() };
        // A generating set, for later joins and commutators.
        let mut sub = self.empty_subgroup();
        for i in 0..z.elements.len() {
            let x = z.elements[i];
            if !sub.contains(x) {
                self.extend(&mut sub, x);
            }
        }
        z.gens = sub.gens;
        z
    }

    pub fn exponent(&self, h: &Subgroup) -> u64 {
        let mut e = 1u64;
        for &x in &h.elements {
            let o = self.element_order(x);
            e = crate::util::lcm(e, o);
        }
        e
    }

    /// Lower central series `G = γ1 > γ2 > ...`, stopping when a term
    /// repeats. The last entry is trivial exactly when the group is
    /// nilpotent.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let g = self.whole();
        let mut series = vec![g.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                break;
            }
            let next = self.commutator_subgroup(last, &g);
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                break;
            }
            let next = self.commutator_subgroup(last, last);
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Nilpotency class of `G/N` for a normal subgroup `N`, or `None` when
    /// the relative lower central series stalls above `N`.
    pub fn class_modulo(&self, n: &Subgroup) -> Option<usize> {
        let g = self.whole();
        let mut term = g.clone();
        let mut c = 0;
        while term.order() > n.order() {
            let next = self.join(&self.commutator_subgroup(&term, &g), n);
            if next.order() == term.order() {
                return None;
            }
            term = next;
            c += 1;
        }
        Some(c)
    }

    /// Abelian invariants (prime powers, ascending) of `G/N` for a normal
    /// `N` containing the derived subgroup.
    pub fn abelian_invariants_modulo(&self, n: &Subgroup) -> Vec<u64> {
        let quotient = (self.order / n.order()) as u128;
        let mut out = Vec::new();
        for (p, _) in factorize(quotient) {
            let p = p as u64;
            // ranks[i] = log_p |Omega_i(G/N)|
            let mut ranks = vec![0u32];
            let mut powers: Vec<Element> = (0..self.order as u32).collect();
            loop {
                for y in powers.iter_mut() {
                    *y = self.pow(*y, p as i64);
                }
                let count = powers.iter().filter(|&&y| n.contains(y)).count() / n.order();
                let r = crate::util::log_exact(count as u128, p as u128).unwrap_or(0);
                if r == *ranks.last().unwrap() {
                    break;
                }
                ranks.push(r);
            }
            let steps: Vec<u32> = ranks.windows(2).map(|w| w[1] - w[0]).collect();
            for i in 0..steps.len() {
                let next = steps.get(i + 1).copied().unwrap_or(0);
                for _ in 0..steps[i] - next {
                    out.push(p.pow(i as u32 + 1));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Cycle type of right multiplication by `x` on `G`, as a permutation.
    pub fn right_regular_permutation(&self, x: Element) -> Permutation {
        let images = (0..self.order as u32).map(|y| self.mul(y, x)).collect();
        Permutation::from_images_unchecked(images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(text: &str) -> RegularGroup {
        RegularGroup::from_presentation(&Presentation::parse(text).unwrap(), EnumerationOptions::default()).unwrap()
    }

    #[test]
    fn dihedral_structure() {
        let g = group("< r, s | r^4, s^2, (r*s)^2 >");
        assert_eq!(g.order(), 8);
        let lcs = g.lower_central_series();
        assert_eq!(lcs.iter().map(|s| s.order()).collect::<Vec<_>>(), vec![8, 2, 1]);
        assert_eq!(g.center().order(), 2);
        assert_eq!(g.exponent(&g.whole()), 4);
        let d = g.derived_series();
        assert_eq!(d.len(), 3);
        assert_eq!(g.abelian_invariants_modulo(&d[1]), vec![2, 2]);
    }

    #[test]
    fn words_evaluate_back() {
        let g = group("< a, b | a^3, b^2, (a*b)^2 >");
        for x in 0..g.order() as u32 {
            assert_eq!(g.evaluate(&g.word(x)), x);
            assert_eq!(g.mul(x, g.inv(x)), IDENTITY);
        }
    }

    #[test]
    fn symmetric_group_not_nilpotent() {
        let g = group("< a, b | a^2, b^3, (a*b)^2 >");
        assert_eq!(g.order(), 6);
        assert_eq!(g.class_modulo(&g.trivial_subgroup()), None);
        let lcs = g.lower_central_series();
        assert_eq!(lcs.last().unwrap().order(), 3);
        assert_eq!(g.derived_series().len(), 3);
    }

    #[test]
    fn products_match_permutations() {
        let s4 = PermutationGroup::symmetric(4).unwrap();
        let g = RegularGroup::from_permutation_group(&s4, 100).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.center().order(), 1);
        assert_eq!(g.commutator_subgroup(&g.whole(), &g.whole()).order(), 12);
        assert_eq!(g.exponent(&g.whole()), 12);
        assert_eq!(g.abelian_invariants_modulo(&g.derived_series()[1]), vec![2]);
    }

    #[test]
    fn abelian_invariants_of_mixed_group() {
        let g = group("< a, b | a^4, b^6, [a,b] >");
        assert_eq!(g.abelian_invariants_modulo(&g.trivial_subgroup()), vec![2, 3, 4]);
    }

    #[test]
    fn conjugation_closure() {
        let g = group("< r, s | r^4, s^2, (r*s)^2 >");
        let s = g.generator(1);
        assert_eq!(g.subgroup(&[s]).order(), 2);
        assert_eq!(g.normal_closure(&[s]).order(), 4);
        assert!(g.is_normal(&g.normal_closure(&[s])));
        let r2 = g.pow(g.generator(0), 2);
        assert!(g.is_central(r2));
    }
}
