//! Double cosets `U \ Sym(n) / U`: Burnside counting, canonical
//! representatives and equality tests.
//!
//! Products follow the crate convention: `u * g` applies `u` first, so the
//! image array of `u * g` is `x -> g(u(x))`. A right coset `U g` is stored
//! as its lexicographically least image array.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};

pub const MAX_BURNSIDE_ORDER: u128 = 1_000_000;
pub const DEFAULT_INDEX_CAP: u128 = 2_000_000;
pub const MAX_WITNESS_ORDER: u128 = 10_000;
/// Packed coset keys use five bits per point.
pub const MAX_POINTS: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    Burnside,
    OrbitEnumeration,
}

impl CountMethod {
    pub fn name(self) -> &'static str {
        match self {
            CountMethod::Burnside => "burnside",
            CountMethod::OrbitEnumeration => "orbit-enumeration",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCosetReport {
    pub count: u128,
    /// Least element of each double coset, ascending.
    pub representatives: Option<Vec<Permutation>>,
    /// `|U f U|` for each representative.
    pub sizes: Option<Vec<u128>>,
    pub method: CountMethod,
}

fn centralizer_order(cycle_type: &[usize]) -> Option<u128> {
    let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
    for &k in cycle_type {
        *counts.entry(k).or_insert(0) += 1;
    }
    let mut c: u128 = 1;
    for (k, m) in counts {
        c = c.checked_mul((k as u128).checked_pow(m)?)?;
        c = c.checked_mul(crate::util::factorial(m as u64))?;
    }
    Some(c)
}

/// Full cycle type including fixed points.
fn full_cycle_type(p: &Permutation) -> Vec<usize> {
    let mut t: Vec<usize> = p.cycles().iter().map(|c| c.len()).collect();
    let moved: usize = t.iter().sum();
    t.extend(core::iter::repeat_n(1, p.degree() - moved));
    t.sort_unstable();
    t
}

/// Number of double cosets `U \ Sym(n) / U`, from the cycle-type census of
/// `U`: `sum over types of m_type^2 * |C(type)| / |U|^2`.
pub fn count_burnside(u: &PermutationGroup) -> Result<u128> {
    let order = u.order();
    if order > MAX_BURNSIDE_ORDER {
        return Err(Error::Capacity { what: "group order for Burnside counting", limit: MAX_BURNSIDE_ORDER });
    }
    let mut census: HashMap<Vec<usize>, u128> = HashMap::new();
    for g in u.elements(MAX_BURNSIDE_ORDER)? {
        *census.entry(full_cycle_type(&g)).or_insert(0) += 1;
    }
    let overflow = || Error::Capacity { what: "Burnside sum", limit: u128::MAX };
    let mut total: u128 = 0;
    for (t, m) in &census {
        let c = centralizer_order(t).ok_or_else(overflow)?;
        total = total.checked_add(m.checked_mul(*m).and_then(|x| x.checked_mul(c)).ok_or_else(overflow)?).ok_or_else(overflow)?;
    }
    let denom = order * order;
    if !total.is_multiple_of(denom) {
        return Err(Error::Internal("Burnside sum not divisible by |U|^2".into()));
    }
    Ok(total / denom)
}

/// Transversals of the chain `U = U_0 >= U_1 >= ...` where `U_i` fixes the
/// points `0..i` pointwise.
#[derive(Clone, Debug)]
pub struct OrderedChain {
    degree: usize,
    order: u128,
    /// `levels[i]`: pairs `(y, t)` with `t(i) = y`, `t` in `U_i`.
    levels: Vec<Vec<(u32, Permutation)>>,
    elements: Vec<Permutation>,
}

impl OrderedChain {
    pub fn new(u: &PermutationGroup) -> Result<Self> {
        let degree = u.degree();
        let elements = u.elements(MAX_BURNSIDE_ORDER)?;
        let mut levels = Vec::with_capacity(degree);
        let mut current: Vec<&Permutation> = elements.iter().collect();
        for i in 0..degree {
            let mut reps: Vec<(u32, Permutation)> = Vec::new();
            let mut seen = vec![false; degree];
            for g in &current {
                let y = g.apply(i);
                if !seen[y] {
                    seen[y] = true;
                    reps.push((y as u32, (*g).clone()));
                }
            }
            reps.sort_by_key(|r| r.0);
            levels.push(reps);
            current.retain(|g| g.apply(i) == i);
        }
        Ok(OrderedChain { degree, order: u.order(), levels, elements })
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// Least image array in the right coset `U g`, with the element `u`
    /// attaining it.
    pub fn coset_minimum(&self, g: &Permutation) -> (Permutation, Permutation) {
        let mut cur = g.clone();
        let mut acc = Permutation::identity(self.degree);
        for reps in &self.levels {
            if reps.len() == 1 {
                continue;
            }
            let (_, t) = reps.iter().min_by_key(|(y, _)| cur.apply(*y as usize)).expect("nonempty level");
            cur = t.mul(&cur);
            acc = t.mul(&acc);
        }
        (cur, acc)
    }

    fn coset_key(&self, g: &Permutation) -> u128 {
        pack(&self.coset_minimum(g).0)
    }
}

fn pack(p: &Permutation) -> u128 {
    p.images().iter().fold(0u128, |acc, &x| acc << 5 | x as u128)
}

fn unpack(key: u128, n: usize) -> Permutation {
    let images = (0..n).map(|i| ((key >> (5 * (n - 1 - i))) & 31) as u32).collect();
    Permutation::from_images(images).expect("packed permutation")
}

fn sym_generators(n: usize) -> Vec<Permutation> {
    if n < 2 {
        return Vec::new();
    }
    let mut swap: Vec<u32> = (0..n as u32).collect();
    swap.swap(0, 1);
    let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    vec![Permutation::from_images(swap).unwrap(), Permutation::from_images(cycle).unwrap()]
}

fn factorial_u128(n: usize) -> Result<u128> {
    if n > MAX_POINTS {
        return Err(Error::Capacity { what: "points for double cosets", limit: MAX_POINTS as u128 });
    }
    Ok(crate::util::factorial(n as u64))
}

/// All double cosets, by listing the right cosets `U g` and merging them
/// into orbits of right multiplication by `U`. Refuses when
/// `[Sym(n) : U] > index_cap`.
pub fn enumerate_reps(u: &PermutationGroup, index_cap: u128) -> Result<DoubleCosetReport> {
    let n = u.degree();
    let index = factorial_u128(n)? / u.order();
    if index > index_cap {
        return Err(Error::Capacity { what: "index of U in Sym(n)", limit: index_cap });
    }
    let chain = OrderedChain::new(u)?;
    let mut ids: HashMap<u128, u32> = HashMap::with_capacity(index as usize);
    let mut keys: Vec<u128> = Vec::with_capacity(index as usize);
    let start = pack(&chain.coset_minimum(&Permutation::identity(n)).0);
    ids.insert(start, 0);
    keys.push(start);
    let sym = sym_generators(n);
    let mut head = 0;
    while head < keys.len() {
        let g = unpack(keys[head], n);
        head += 1;
        for s in &sym {
            let k = chain.coset_key(&g.mul(s));
            if !ids.contains_key(&k) {
                ids.insert(k, keys.len() as u32);
                keys.push(k);
            }
        }
    }
    if keys.len() as u128 != index {
        return Err(Error::Internal("coset count differs from the index".into()));
    }
    let mut parent: Vec<u32> = (0..keys.len() as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for i in 0..keys.len() {
        let g = unpack(keys[i], n);
        for v in u.generators() {
            let j = ids[&chain.coset_key(&g.mul(v))];
            let (a, b) = (find(&mut parent, i as u32), find(&mut parent, j));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    let mut best: HashMap<u32, (u128, u128)> = HashMap::new();
    for i in 0..keys.len() {
        let r = find(&mut parent, i as u32);
        let e = best.entry(r).or_insert((u128::MAX, 0));
        e.0 = e.0.min(keys[i]);
        e.1 += 1;
    }
    let mut reps: Vec<(u128, u128)> = best.into_values().collect();
    reps.sort_unstable();
    Ok(DoubleCosetReport {
        count: reps.len() as u128,
        sizes: Some(reps.iter().map(|r| r.1 * u.order()).collect()),
        representatives: Some(reps.iter().map(|r| unpack(r.0, n)).collect()),
        method: CountMethod::OrbitEnumeration,
    })
}

/// Least element of the double coset `U f U`.
pub fn canonical_double_coset_rep(chain: &OrderedChain, f: &Permutation) -> Permutation {
    let mut best: Option<Permutation> = None;
    for v in chain.elements() {
        let (m, _) = chain.coset_minimum(&f.mul(v));
        if best.as_ref().is_none_or(|b| m.images() < b.images()) {
            best = Some(m);
        }
    }
    best.expect("nonempty group")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SameDoubleCoset {
    pub same: bool,
    /// `(a, b)` in `U` with `g = a * f * b`.
    pub witness: Option<(Permutation, Permutation)>,
}

/// Decides `U f U = U g U`; a witness is produced for `|U| <= 10^4`.
pub fn same_double_coset(u: &PermutationGroup, f: &Permutation, g: &Permutation) -> Result<SameDoubleCoset> {
    let chain = OrderedChain::new(u)?;
    same_double_coset_with(&chain, f, g)
}

pub fn same_double_coset_with(chain: &OrderedChain, f: &Permutation, g: &Permutation) -> Result<SameDoubleCoset> {
    if f.degree() != chain.degree || g.degree() != chain.degree {
        return Err(Error::DegreeMismatch { left: chain.degree, right: f.degree().max(g.degree()) });
    }
    let target = chain.coset_minimum(g).0;
    for v in chain.elements() {
        let fv = f.mul(v);
        if chain.coset_minimum(&fv).0 == target {
            let witness = (chain.order <= MAX_WITNESS_ORDER).then(|| (g.mul(&fv.inverse()), v.clone()));
            return Ok(SameDoubleCoset { same: true, witness });
        }
    }
    Ok(SameDoubleCoset { same: false, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{ActionDomain, AbelianGroup, EnumerationMode};

    fn sl32() -> PermutationGroup {
        let a = AbelianGroup::elementary(2, 3).unwrap();
        a.automorphism_perm_group(&a.ordering(EnumerationMode::GradedLex), ActionDomain::Elements).unwrap()
    }

    fn sharp(s: &str) -> Permutation {
        Permutation::parse_cycles_with_base(s, 7, 2).unwrap()
    }

    #[test]
    fn sl32_counts() {
        let u = sl32();
        assert_eq!(u.order(), 168);
        assert_eq!(count_burnside(&u).unwrap(), 4);
        let rep = enumerate_reps(&u, DEFAULT_INDEX_CAP).unwrap();
        assert_eq!(rep.count, 4);
        assert_eq!(rep.sizes.unwrap().iter().sum::<u128>(), 5040);
    }

    #[test]
    fn trivial_and_full_groups() {
        let t = PermutationGroup::trivial(3);
        assert_eq!(count_burnside(&t).unwrap(), 6);
        assert_eq!(enumerate_reps(&t, DEFAULT_INDEX_CAP).unwrap().count, 6);
        let s = PermutationGroup::symmetric(5).unwrap();
        let rep = enumerate_reps(&s, DEFAULT_INDEX_CAP).unwrap();
        assert_eq!(rep.count, 1);
        assert!(rep.representatives.unwrap()[0].is_identity());
    }

    #[test]
    fn coset_minimum_is_brute_force_minimum() {
        let u = sl32();
        let chain = OrderedChain::new(&u).unwrap();
        let g = sharp("(2,5,3)(4,8)");
        let brute = chain.elements().iter().map(|x| pack(&x.mul(&g))).min().unwrap();
        let (m, w) = chain.coset_minimum(&g);
        assert_eq!(pack(&m), brute);
        assert!(u.contains(&w));
        assert_eq!(w.mul(&g), m);
    }

    #[test]
    fn listed_representatives_are_distinct() {
        let u = sl32();
        let listed = ["()", "(6,7)", "(6,7,8)", "(5,6,7,8)"].map(sharp);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(same_double_coset(&u, &listed[i], &listed[j]).unwrap().same, i == j);
            }
        }
    }

    #[test]
    fn two_transitivity_witness() {
        let u = sl32();
        let (f, g) = (sharp("(6,7)"), sharp("(2,3)"));
        let r = same_double_coset(&u, &f, &g).unwrap();
        assert!(r.same);
        let (a, b) = r.witness.unwrap();
        assert!(u.contains(&a) && u.contains(&b));
        assert_eq!(a.mul(&f).mul(&b), g);
        // oracle: exhaustive search over U x U
        let elems = u.elements(1000).unwrap();
        assert!(elems.iter().any(|x| elems.iter().any(|y| x.mul(&f).mul(y) == g)));
    }

    #[test]
    fn capacity_refusal() {
        let a = AbelianGroup::elementary(2, 4).unwrap();
        let u = a.automorphism_perm_group(&a.ordering(EnumerationMode::GradedLex), ActionDomain::Elements).unwrap();
        assert!(matches!(enumerate_reps(&u, DEFAULT_INDEX_CAP), Err(Error::Capacity { .. })));
    }
}
