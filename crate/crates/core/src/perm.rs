//! Permutations on `n` points and stabilizer-chain algorithms.
//!
//! Permutations act on the right: `i^(pq) = (i^p)^q`. Points are 0-based
//! internally; the cycle-notation text form is 1-based with fixed points
//! omitted and `()` for the identity.

use alloc::collections::VecDeque;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::util::lcm;

/// Largest degree any operation in this module accepts.
pub const MAX_DEGREE: usize = 1 << 21;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidInput("permutation of degree 0".into()));
        }
        if n > MAX_DEGREE {
            return Err(Error::Capacity { what: "permutation degree", limit: MAX_DEGREE as u128 });
        }
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotBijection(alloc::format!("image {x} repeated or out of range")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Permutation { images }
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cyc in cycles {
            for (i, &pt) in cyc.iter().enumerate() {
                if pt >= degree {
                    return Err(Error::OutOfRange { what: "cycle point", value: pt + 1, limit: degree });
                }
                if seen[pt] {
                    return Err(Error::NotBijection(alloc::format!("point {} repeated in cycles", pt + 1)));
                }
                seen[pt] = true;
                images[pt] = cyc[(i + 1) % cyc.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation whose labels start at `first_label` (1 for the
    /// ordinary 1-based form).
    pub fn parse_cycles_with_base(s: &str, degree: usize, first_label: usize) -> Result<Self> {
        let cycles = parse_cycle_list(s)?;
        let mut zero_based = Vec::with_capacity(cycles.len());
        for cyc in cycles {
            let mut c = Vec::with_capacity(cyc.len());
            for label in cyc {
                if label < first_label || label - first_label >= degree {
                    return Err(Error::OutOfRange { what: "cycle point", value: label, limit: degree + first_label - 1 });
                }
                c.push(label - first_label);
            }
            zero_based.push(c);
        }
        Self::from_cycles(degree, &zero_based)
    }

    pub fn parse_cycles(s: &str, degree: usize) -> Result<Self> {
        Self::parse_cycles_with_base(s, degree, 1)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.mul(other))
    }

    /// Unchecked `self` then `other`; degrees must agree.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // i^(g^-1 s g): maps i^g to (i^s)^g.
        let mut out = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation { images: out }
    }

    /// `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Non-trivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Element order from the cycle type.
    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i)
    }

    pub fn to_cycle_string_with_base(&self, first_label: usize) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for cyc in cycles {
            s.push('(');
            for (i, p) in cyc.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&(p + first_label).to_string());
            }
            s.push(')');
        }
        s
    }

    pub fn to_cycle_string(&self) -> String {
        self.to_cycle_string_with_base(1)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

/// Parses `"(2,7,4)(6,8)"` into raw label lists. Whitespace is ignored,
/// `()` is the empty product.
pub fn parse_cycle_list(s: &str) -> Result<Vec<Vec<usize>>> {
    let err = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty string"));
    }
    let mut out = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(err("expected '('"));
        }
        let close = rest.find(')').ok_or_else(|| err("unclosed cycle"))?;
        let body = &rest[1..close];
        rest = &rest[close + 1..];
        if body.is_empty() {
            continue;
        }
        let mut cyc = Vec::new();
        for tok in body.split(',') {
            let v: usize = tok.parse().map_err(|_| err("non-numeric point"))?;
            cyc.push(v);
        }
        if cyc.len() > 1 {
            out.push(cyc);
        }
    }
    Ok(out)
}

/// Orbit of `point` under `gens`, in discovery order.
pub fn orbit_of(point: usize, gens: &[Permutation]) -> Vec<usize> {
    let degree = gens.first().map(|g| g.degree()).unwrap_or(point + 1);
    let mut seen = vec![false; degree.max(point + 1)];
    let mut orbit = vec![point];
    seen[point] = true;
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i];
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                orbit.push(y);
            }
        }
        i += 1;
    }
    orbit
}

/// Partition of all points into orbits, each sorted, ordered by least point.
pub fn orbits(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for p in 0..degree {
        if seen[p] {
            continue;
        }
        let mut orb = orbit_of(p, gens);
        for &x in &orb {
            seen[x] = true;
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    inv_gens: Vec<Permutation>,
    orbit: Vec<u32>,
    /// Per point: `NOT_IN_ORBIT`, `ROOT`, or the index of the generator whose
    /// image reached it.
    schreier: Vec<i32>,
}

const NOT_IN_ORBIT: i32 = -1;
const ROOT: i32 = -2;

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut schreier = vec![NOT_IN_ORBIT; degree];
        schreier[base] = ROOT;
        Level { base, gens: Vec::new(), inv_gens: Vec::new(), orbit: vec![base as u32], schreier }
    }

    fn contains(&self, point: usize) -> bool {
        self.schreier[point] != NOT_IN_ORBIT
    }

    /// Coset representative `u` with `base^u = point`.
    fn transversal(&self, point: usize) -> Permutation {
        let degree = self.schreier.len();
        let mut letters = Vec::new();
        let mut x = point;
        while self.schreier[x] != ROOT {
            let s = self.schreier[x] as usize;
            letters.push(s);
            x = self.inv_gens[s].apply(x);
        }
        let mut u = Permutation::identity(degree);
        for &s in letters.iter().rev() {
            u = u.mul(&self.gens[s]);
        }
        u
    }

    /// Applies `u_point^-1` to `g` on the right, returning `g u^-1`.
    fn strip_one(&self, g: &Permutation, point: usize) -> Permutation {
        let mut h = g.clone();
        let mut x = point;
        while self.schreier[x] != ROOT {
            let s = self.schreier[x] as usize;
            h = h.mul(&self.inv_gens[s]);
            x = self.inv_gens[s].apply(x);
        }
        h
    }
}

/// Base and strong generating set with Schreier-vector transversals.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn trivial(degree: usize) -> Self {
        StabilizerChain { degree, levels: Vec::new() }
    }

    /// Deterministic Schreier-Sims.
    pub fn build(degree: usize, gens: &[Permutation]) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::Capacity { what: "permutation degree", limit: MAX_DEGREE as u128 });
        }
        let mut chain = StabilizerChain::trivial(degree);
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: g.degree() });
            }
            chain.extend(g);
        }
        Ok(chain)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self, level: usize) -> &[Permutation] {
        &self.levels[level].gens
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Sifts `g` from `from` downwards; returns the residue and the level
    /// where sifting stopped (`levels.len()` when it went through).
    pub fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.base);
            if !level.contains(beta) {
                return (h, i);
            }
            h = level.strip_one(&h, beta);
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, _) = self.strip(g, 0);
        h.is_identity()
    }

    /// Adds `g` to the group if it is not already a member.
    pub fn extend(&mut self, g: &Permutation) -> bool {
        let (h, _) = self.strip(g, 0);
        if h.is_identity() {
            return false;
        }
        self.add_generator(0, h);
        true
    }

    fn add_generator(&mut self, i: usize, g: Permutation) {
        if i == self.levels.len() {
            let base = g.first_moved_point().expect("non-identity generator");
            self.levels.push(Level::new(base, self.degree));
        }
        let old_len;
        let new_idx;
        {
            let level = &mut self.levels[i];
            old_len = level.orbit.len();
            new_idx = level.gens.len();
            level.inv_gens.push(g.inverse());
            level.gens.push(g);
            // Old points only need the new generator; new points need all.
            for k in 0..old_len {
                let y = level.gens[new_idx].apply(level.orbit[k] as usize);
                if level.schreier[y] == NOT_IN_ORBIT {
                    level.schreier[y] = new_idx as i32;
                    level.orbit.push(y as u32);
                }
            }
            let mut k = old_len;
            while k < level.orbit.len() {
                let x = level.orbit[k] as usize;
                for s in 0..level.gens.len() {
                    let y = level.gens[s].apply(x);
                    if level.schreier[y] == NOT_IN_ORBIT {
                        level.schreier[y] = s as i32;
                        level.orbit.push(y as u32);
                    }
                }
                k += 1;
            }
        }
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        {
            let level = &self.levels[i];
            for k in 0..old_len {
                pairs.push((level.orbit[k] as usize, new_idx));
            }
            for k in old_len..level.orbit.len() {
                for s in 0..level.gens.len() {
                    pairs.push((level.orbit[k] as usize, s));
                }
            }
        }
        for (beta, s) in pairs {
            let schreier_gen = {
                let level = &self.levels[i];
                let image = level.gens[s].apply(beta);
                if level.schreier[image] == s as i32 && level.inv_gens[s].apply(image) == beta {
                    continue;
                }
                let u = level.transversal(beta).mul(&level.gens[s]);
                level.strip_one(&u, image)
            };
            if schreier_gen.is_identity() {
                continue;
            }
            let (h, _) = self.strip(&schreier_gen, i + 1);
            if !h.is_identity() {
                self.add_generator(i + 1, h);
            }
        }
    }

    /// All group elements, in transversal-product order. Refuses above `cap`.
    pub fn elements(&self, cap: u128) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > cap {
            return Err(Error::Capacity { what: "element enumeration", limit: cap });
        }
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let reps: Vec<Permutation> = level.orbit.iter().map(|&p| level.transversal(p as usize)).collect();
            let mut next = Vec::with_capacity(out.len() * reps.len());
            for x in &out {
                for u in &reps {
                    next.push(x.mul(u));
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Coset representatives for the first level, keyed by point.
    pub fn level_transversal(&self, level: usize) -> Vec<(usize, Permutation)> {
        let l = &self.levels[level];
        l.orbit.iter().map(|&p| (p as usize, l.transversal(p as usize))).collect()
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn level_base(&self, level: usize) -> usize {
        self.levels[level].base
    }

    pub fn level_orbit(&self, level: usize) -> &[u32] {
        &self.levels[level].orbit
    }
}

/// A permutation group given by generators, with its stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabilizerChain,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput("degree 0".into()));
        }
        let generators: Vec<Permutation> = generators.into_iter().filter(|g| !g.is_identity() || g.degree() != degree).collect();
        let chain = StabilizerChain::build(degree, &generators)?;
        Ok(PermutationGroup { degree, generators, chain })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup { degree, generators: Vec::new(), chain: StabilizerChain::trivial(degree) }
    }

    /// The full symmetric group via a transposition and an n-cycle.
    pub fn symmetric(degree: usize) -> Result<Self> {
        if degree < 2 {
            return Ok(Self::trivial(degree.max(1)));
        }
        let t = Permutation::from_cycles(degree, &[vec![0, 1]])?;
        let c = Permutation::from_cycles(degree, &[(0..degree).collect()])?;
        Self::new(degree, vec![t, c])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        &self.chain
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        if self.generators.is_empty() {
            return vec![point];
        }
        orbit_of(point, &self.generators)
    }

    pub fn elements(&self, cap: u128) -> Result<Vec<Permutation>> {
        self.chain.elements(cap)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    fn check_degree(&self, p: &Permutation) -> Result<()> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: p.degree() });
        }
        Ok(())
    }

    /// Smallest subgroup containing `seeds` that is normalized by `self`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermutationGroup> {
        for s in seeds {
            self.check_degree(s)?;
        }
        let mut chain = StabilizerChain::trivial(self.degree);
        let mut gens: Vec<Permutation> = Vec::new();
        for s in seeds {
            if chain.extend(s) {
                gens.push(s.clone());
            }
        }
        let mut i = 0;
        while i < gens.len() {
            for g in &self.generators {
                let c = gens[i].conjugate_by(g);
                if chain.extend(&c) {
                    gens.push(c);
                }
            }
            i += 1;
        }
        Ok(PermutationGroup { degree: self.degree, generators: gens, chain })
    }

    /// `[H, K]`: normal closure in `<H, K>` of commutators of generators.
    pub fn commutator_subgroup(h: &PermutationGroup, k: &PermutationGroup) -> Result<PermutationGroup> {
        if h.degree != k.degree {
            return Err(Error::DegreeMismatch { left: h.degree, right: k.degree });
        }
        let mut joint_gens = h.generators.clone();
        joint_gens.extend(k.generators.iter().cloned());
        let joint = PermutationGroup::new(h.degree, joint_gens)?;
        let mut seeds = Vec::new();
        for a in &h.generators {
            for b in &k.generators {
                let c = a.commutator(b);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        joint.normal_closure(&seeds)
    }

    /// Subgroup generated by the given elements.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermutationGroup> {
        for g in &gens {
            self.check_degree(g)?;
        }
        PermutationGroup::new(self.degree, gens)
    }
}

/// All elements of `<gens>` by breadth-first multiplication, or `None` above `cap`.
pub fn closure_by_multiplication(gens: &[Permutation], cap: usize) -> Option<Vec<Permutation>> {
    let degree = gens.first()?.degree();
    let mut seen = hashbrown::HashSet::new();
    let id = Permutation::identity(degree);
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn compose_and_inverse() {
        let t = p("(1,2)", 2);
        assert!(t.compose(&t).unwrap().is_identity());
        let g = p("(1,3,2)(4,5)", 5);
        assert_eq!(Permutation::identity(5).compose(&g).unwrap(), g);
        assert!(g.compose(&g.inverse()).unwrap().is_identity());
        assert!(matches!(t.compose(&g), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn right_action_convention() {
        // (1,2) then (2,3): 1 -> 2 -> 3.
        let a = p("(1,2)", 3);
        let b = p("(2,3)", 3);
        assert_eq!(a.mul(&b).apply(0), 2);
    }

    #[test]
    fn sl32_generators_product_order_from_cycles() {
        let a = p("(2,7,4,6,5,8,3)", 8);
        let b = p("(2,8,7)(3,4,6)", 8);
        let c = a.compose(&b).unwrap();
        // Oracle: walk the cycles directly.
        let mut lens = Vec::new();
        let mut seen = [false; 8];
        for s in 0..8 {
            if seen[s] {
                continue;
            }
            let mut l = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = c.apply(x);
                l += 1;
            }
            lens.push(l);
        }
        let oracle = lens.iter().fold(1u64, |a, &l| lcm(a, l));
        assert_eq!(c.order(), oracle);
        assert_eq!(oracle, 3);
        assert_eq!(c.to_cycle_string(), "(3,8,4)(5,7,6)");
    }

    #[test]
    fn cycle_strings_round_trip() {
        for s in ["()", "(2,7,4,6,5,8,3)", "(1,2)(3,4)", "(2,8,7)(3,4,6)"] {
            assert_eq!(p(s, 8).to_cycle_string(), s);
        }
        assert!(Permutation::parse_cycles("(1,9)", 8).is_err());
        assert!(Permutation::parse_cycles("(1,2,1)", 8).is_err());
        assert!(Permutation::parse_cycles("1,2", 8).is_err());
    }

    #[test]
    fn chain_orders() {
        let g = PermutationGroup::new(8, vec![p("(2,7,4,6,5,8,3)", 8), p("(2,8,7)(3,4,6)", 8)]).unwrap();
        assert_eq!(g.order(), 168);
        let t = PermutationGroup::new(5, vec![Permutation::identity(5)]).unwrap();
        assert_eq!(t.order(), 1);
        let s4 = PermutationGroup::new(4, vec![p("(1,2)", 4), p("(1,2,3,4)", 4)]).unwrap();
        let oracle = closure_by_multiplication(s4.generators(), 1000).unwrap();
        assert_eq!(oracle.len(), 24);
        assert_eq!(s4.order(), 24);
        assert_eq!(PermutationGroup::symmetric(7).unwrap().order(), 5040);
    }

    #[test]
    fn chain_invariants() {
        let g = PermutationGroup::new(8, vec![p("(2,7,4,6,5,8,3)", 8), p("(2,8,7)(3,4,6)", 8)]).unwrap();
        let prod: u128 = g.chain().orbit_lengths().iter().map(|&x| x as u128).product();
        assert_eq!(prod, g.order());
        for s in g.generators() {
            assert!(g.contains(s));
        }
        let elems = g.elements(10_000).unwrap();
        assert_eq!(elems.len(), 168);
        assert!(!g.contains(&p("(2,3)", 8)));
    }

    #[test]
    fn orbit_examples() {
        let gens = vec![p("(2,7,4,6,5,8,3)", 8), p("(2,8,7)(3,4,6)", 8)];
        let mut o = orbit_of(1, &gens);
        o.sort_unstable();
        assert_eq!(o, (1..8).collect::<Vec<_>>());
        assert_eq!(orbit_of(3, &[]), vec![3]);
        let mut o = orbit_of(0, &[p("(1,2)(3,4)", 4)]);
        o.sort_unstable();
        assert_eq!(o, vec![0, 1]);
        let parts = orbits(8, &gens);
        assert_eq!(parts, vec![vec![0], (1..8).collect::<Vec<_>>()]);
    }

    #[test]
    fn normal_closure_examples() {
        let s4 = PermutationGroup::new(4, vec![p("(1,2)", 4), p("(1,2,3,4)", 4)]).unwrap();
        let all = s4.normal_closure(s4.generators()).unwrap();
        assert_eq!(all.order(), 24);
        let triv = s4.normal_closure(&[Permutation::identity(4)]).unwrap();
        assert_eq!(triv.order(), 1);
        // Klein four-group is normal in S4; closure of a double transposition.
        let v4 = s4.normal_closure(&[p("(1,2)(3,4)", 4)]).unwrap();
        assert_eq!(v4.order(), 4);
        for s in v4.generators() {
            for g in s4.generators() {
                assert!(v4.contains(&s.conjugate_by(g)));
            }
        }
        let a4 = PermutationGroup::commutator_subgroup(&s4, &s4).unwrap();
        assert_eq!(a4.order(), 12);
    }

    #[test]
    fn commutator_subgroup_trivial_cases() {
        let v = PermutationGroup::new(4, vec![p("(1,2)(3,4)", 4), p("(1,3)(2,4)", 4)]).unwrap();
        assert_eq!(PermutationGroup::commutator_subgroup(&v, &v).unwrap().order(), 1);
        let t = PermutationGroup::trivial(4);
        assert_eq!(PermutationGroup::commutator_subgroup(&v, &t).unwrap().order(), 1);
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn membership_matches_closure(a in perm_strategy(6), b in perm_strategy(6), c in perm_strategy(6)) {
            let g = PermutationGroup::new(6, vec![a.clone(), b.clone()]).unwrap();
            let all = closure_by_multiplication(&[a, b], 5000).unwrap();
            prop_assert_eq!(all.len() as u128, g.order());
            let in_closure = all.contains(&c);
            prop_assert_eq!(in_closure, g.contains(&c));
        }

        #[test]
        fn orbits_partition_points(a in perm_strategy(9), b in perm_strategy(9)) {
            let parts = orbits(9, &[a.clone(), b.clone()]);
            let mut all: Vec<usize> = parts.iter().flatten().copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..9).collect::<Vec<_>>());
            for part in &parts {
                let mut again = orbit_of(part[0], &[a.clone(), b.clone()]);
                again.sort_unstable();
                prop_assert_eq!(&again, part);
            }
        }

        #[test]
        fn cycle_string_round_trip(a in perm_strategy(10)) {
            let s = a.to_cycle_string();
            prop_assert_eq!(Permutation::parse_cycles(&s, 10).unwrap(), a);
        }
    }
}
