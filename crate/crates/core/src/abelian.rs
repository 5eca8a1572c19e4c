//! Finite abelian groups as digit vectors, their element orderings, bases,
//! cyclic subgroups, automorphism images and identity-fixing bijections.
//!
//! Every element has an integer *code*: the mixed-radix value of its digit
//! vector with the first digit most significant, so code order is plain
//! lexicographic order and the identity has code 0.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};
use crate::util::{factorize, is_prime};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianElement {
    pub digits: Vec<u32>,
}

impl AbelianElement {
    pub fn is_identity(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        self.digits.iter().enumerate().filter(|(_, &d)| d != 0).map(|(i, _)| i).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EnumerationMode {
    PlainLex,
    GradedLex,
}

impl EnumerationMode {
    pub fn name(self) -> &'static str {
        match self {
            EnumerationMode::PlainLex => "plain-lex",
            EnumerationMode::GradedLex => "graded-lex",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "plain-lex" => Ok(EnumerationMode::PlainLex),
            "graded-lex" => Ok(EnumerationMode::GradedLex),
            _ => Err(Error::Parse { input: s.into(), reason: "expected plain-lex or graded-lex".into() }),
        }
    }
}

impl AbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.iter().any(|&n| n < 2) {
            return Err(Error::InvalidInput("cyclic factor of order < 2".into()));
        }
        let total = orders.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n as u64));
        match total {
            Some(t) if t <= (1 << 24) => Ok(AbelianGroup { orders }),
            _ => Err(Error::Capacity { what: "abelian group order", limit: 1 << 24 }),
        }
    }

    /// `A_{p,k}`, elementary abelian of rank `k`.
    pub fn elementary(p: u32, k: usize) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Self::new(vec![p; k])
    }

    pub fn trivial() -> Self {
        AbelianGroup { orders: Vec::new() }
    }

    pub fn cyclic_orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.orders.windows(2).all(|w| w[0] == w[1])
    }

    /// The prime `p` when this is `A_{p,k}` with `k >= 1`.
    pub fn elementary_prime(&self) -> Result<u32> {
        let p = *self.orders.first().ok_or(Error::NotHomogeneous)?;
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(p)
    }

    pub fn identity(&self) -> AbelianElement {
        AbelianElement { digits: vec![0; self.rank()] }
    }

    /// The `i`-th standard generator.
    pub fn generator(&self, i: usize) -> AbelianElement {
        let mut d = vec![0; self.rank()];
        d[i] = 1;
        AbelianElement { digits: d }
    }

    pub fn code(&self, x: &AbelianElement) -> usize {
        x.digits.iter().zip(&self.orders).fold(0usize, |acc, (&d, &n)| acc * n as usize + d as usize)
    }

    pub fn element(&self, mut code: usize) -> AbelianElement {
        let mut digits = vec![0u32; self.rank()];
        for i in (0..self.rank()).rev() {
            let n = self.orders[i] as usize;
            digits[i] = (code % n) as u32;
            code /= n;
        }
        AbelianElement { digits }
    }

    fn check(&self, x: &AbelianElement) -> Result<()> {
        if x.digits.len() != self.rank() || x.digits.iter().zip(&self.orders).any(|(&d, &n)| d >= n) {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    /// `x + scalar * y`, componentwise.
    pub fn combine(&self, x: &AbelianElement, y: &AbelianElement, scalar: i64) -> Result<AbelianElement> {
        self.check(x)?;
        self.check(y)?;
        let digits = x
            .digits
            .iter()
            .zip(&y.digits)
            .zip(&self.orders)
            .map(|((&a, &b), &n)| {
                let n = n as i64;
                (a as i64 + scalar.rem_euclid(n) * b as i64).rem_euclid(n) as u32
            })
            .collect();
        Ok(AbelianElement { digits })
    }

    pub fn add_codes(&self, x: usize, y: usize) -> usize {
        let a = self.element(x);
        let b = self.element(y);
        self.code(&self.combine(&a, &b, 1).expect("codes in range"))
    }

    pub fn scale_code(&self, x: usize, s: i64) -> usize {
        let id = self.identity();
        let a = self.element(x);
        self.code(&self.combine(&id, &a, s).expect("codes in range"))
    }

    pub fn element_order(&self, x: &AbelianElement) -> u64 {
        x.digits
            .iter()
            .zip(&self.orders)
            .map(|(&d, &n)| if d == 0 { 1 } else { n as u64 / crate::util::gcd(d as u64, n as u64) })
            .fold(1, crate::util::lcm)
    }

    /// All elements in the requested order; the identity is always first.
    pub fn enumerate(&self, mode: EnumerationMode) -> Vec<AbelianElement> {
        let mut all: Vec<AbelianElement> = (0..self.order()).map(|c| self.element(c)).collect();
        if mode == EnumerationMode::GradedLex {
            all.sort_by(|a, b| {
                let sa = a.support();
                let sb = b.support();
                sa.len().cmp(&sb.len()).then_with(|| sa.cmp(&sb)).then_with(|| a.digits.cmp(&b.digits))
            });
        }
        all
    }

    pub fn ordering(&self, mode: EnumerationMode) -> Ordering {
        let codes: Vec<u32> = self.enumerate(mode).iter().map(|x| self.code(x) as u32).collect();
        let mut position = vec![0u32; codes.len()];
        for (i, &c) in codes.iter().enumerate() {
            position[c as usize] = i as u32;
        }
        Ordering { mode, codes, position }
    }

    pub fn format_element(&self, x: &AbelianElement) -> String {
        if x.is_identity() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, &d) in x.digits.iter().enumerate() {
            if d == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('+');
            }
            if d > 1 {
                s.push_str(&alloc::format!("{d}"));
            }
            s.push_str(&alloc::format!("a{}", i + 1));
        }
        s
    }

    /// True iff `set` has exactly `k` elements and spans `A_{p,k}`.
    pub fn is_basis(&self, set: &[AbelianElement]) -> Result<bool> {
        let p = self.elementary_prime()?;
        for x in set {
            self.check(x)?;
        }
        if set.len() != self.rank() {
            return Ok(false);
        }
        let rows: Vec<Vec<u32>> = set.iter().map(|x| x.digits.clone()).collect();
        Ok(rank_mod_p(&rows, p) == self.rank())
    }

    /// Non-trivial cyclic subgroups of `A_{p,k}`, canonical generator the
    /// least member under `ordering`; subgroups are listed in order of their
    /// canonical generators.
    pub fn cyclic_subgroups(&self, ordering: &Ordering) -> Result<CyclicSubgroupIndex> {
        let p = self.elementary_prime()?;
        let n = self.order();
        let mut subgroup_of = vec![u32::MAX; n];
        let mut generators = Vec::new();
        for &c in ordering.codes.iter().skip(1) {
            let c = c as usize;
            if subgroup_of[c] != u32::MAX {
                continue;
            }
            let id = generators.len() as u32;
            generators.push(c as u32);
            for s in 1..p as i64 {
                subgroup_of[self.scale_code(c, s)] = id;
            }
        }
        Ok(CyclicSubgroupIndex { p, generators, subgroup_of })
    }

    /// Applies a `GF(p)` matrix to `x` as a row vector: `x M`.
    pub fn apply_matrix(&self, m: &Matrix, code: usize) -> usize {
        let p = self.orders[0];
        let x = self.element(code);
        let k = self.rank();
        let digits = (0..k)
            .map(|j| (0..k).fold(0u64, |acc, i| (acc + x.digits[i] as u64 * m[i][j] as u64) % p as u64) as u32)
            .collect();
        self.code(&AbelianElement { digits })
    }

    /// The two standard generators of `GL(k,p)`: a Singer cycle (companion
    /// matrix of a primitive polynomial) and the transvection `I + E_{12}`.
    pub fn gl_generators(&self) -> Result<Vec<Matrix>> {
        let p = self.elementary_prime()?;
        let k = self.rank();
        let mut gens = vec![companion_matrix(&primitive_polynomial(p, k), p)];
        if k >= 2 {
            let mut t = identity_matrix(k);
            t[0][1] = 1;
            gens.push(t);
        }
        Ok(gens)
    }

    /// `GL(k,p)` acting on `A#` (points = positions 2.. of `ordering`, shifted
    /// to 0-based) or on the cyclic subgroups.
    pub fn automorphism_perm_group(&self, ordering: &Ordering, on: ActionDomain) -> Result<PermutationGroup> {
        let mats = self.gl_generators()?;
        let mut perms = Vec::new();
        match on {
            ActionDomain::Elements => {
                let degree = self.order() - 1;
                for m in &mats {
                    let images = (0..degree)
                        .map(|pt| {
                            let code = ordering.codes[pt + 1] as usize;
                            ordering.position[self.apply_matrix(m, code)] - 1
                        })
                        .collect();
                    perms.push(Permutation::from_images(images)?);
                }
                PermutationGroup::new(degree, perms)
            }
            ActionDomain::Lines => {
                let lines = self.cyclic_subgroups(ordering)?;
                let degree = lines.len();
                for m in &mats {
                    let images =
                        lines.generators.iter().map(|&g| lines.subgroup_of[self.apply_matrix(m, g as usize)]).collect();
                    perms.push(Permutation::from_images(images)?);
                }
                PermutationGroup::new(degree, perms)
            }
        }
    }

    /// Automorphism given by a matrix, as a pointed bijection `A -> A`.
    pub fn matrix_bijection(&self, m: &Matrix) -> Result<PointedBijection> {
        let p = self.elementary_prime()?;
        let rows: Vec<Vec<u32>> = m.clone();
        if rank_mod_p(&rows, p) != self.rank() {
            return Err(Error::NotBijection("singular matrix".into()));
        }
        let table = (0..self.order()).map(|c| self.apply_matrix(m, c) as u32).collect();
        PointedBijection::from_code_table(self.clone(), self.clone(), table)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "1");
        }
        for (i, n) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "C{n}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionDomain {
    Elements,
    Lines,
}

/// A fixed ordering of the elements: `codes[i]` is the element at 1-based
/// position `i+1`, and `position[code]` is its 0-based index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ordering {
    pub mode: EnumerationMode,
    pub codes: Vec<u32>,
    pub position: Vec<u32>,
}

impl Ordering {
    pub fn code_at_position(&self, pos1: usize) -> usize {
        self.codes[pos1 - 1] as usize
    }

    pub fn position_of(&self, code: usize) -> usize {
        self.position[code] as usize + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSubgroupIndex {
    pub p: u32,
    /// Canonical generator code of each subgroup.
    pub generators: Vec<u32>,
    /// Subgroup id of every element code; `u32::MAX` for the identity.
    pub subgroup_of: Vec<u32>,
}

impl CyclicSubgroupIndex {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

pub type Matrix = Vec<Vec<u32>>;

pub fn identity_matrix(k: usize) -> Matrix {
    (0..k).map(|i| (0..k).map(|j| u32::from(i == j)).collect()).collect()
}

pub fn mat_mul_mod(a: &Matrix, b: &Matrix, p: u32) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).fold(0u64, |acc, t| (acc + a[i][t] as u64 * b[t][j] as u64) % p as u64) as u32)
                .collect()
        })
        .collect()
}

/// Rank over `GF(p)` of the given rows.
pub fn rank_mod_p(rows: &[Vec<u32>], p: u32) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x as u64 % p as u64).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let p = p as u64;
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = inverse_mod(m[rank][c], p);
        for v in m[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for j in 0..cols {
                    m[r][j] = (m[r][j] + p - f * m[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Inverse of a square matrix over `GF(p)`, if it exists.
pub fn invert_mod_p(a: &Matrix, p: u32) -> Option<Matrix> {
    let k = a.len();
    let p64 = p as u64;
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<u64> = r.iter().map(|&x| x as u64 % p64).collect();
            row.extend((0..k).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    for c in 0..k {
        let piv = (c..k).find(|&r| m[r][c] != 0)?;
        m.swap(c, piv);
        let inv = inverse_mod(m[c][c], p64);
        for v in m[c].iter_mut() {
            *v = *v * inv % p64;
        }
        for r in 0..k {
            if r != c && m[r][c] != 0 {
                let f = m[r][c];
                for j in 0..2 * k {
                    m[r][j] = (m[r][j] + p64 - f * m[c][j] % p64) % p64;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[k..].iter().map(|&x| x as u32).collect()).collect())
}

pub(crate) fn inverse_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn companion_matrix(coeffs: &[u32], p: u32) -> Matrix {
    // coeffs = [c_0, ..., c_{k-1}] of x^k + c_{k-1} x^{k-1} + ... + c_0.
    let k = coeffs.len();
    let mut m = vec![vec![0u32; k]; k];
    for i in 0..k.saturating_sub(1) {
        m[i][i + 1] = 1;
    }
    for j in 0..k {
        m[k - 1][j] = (p - coeffs[j] % p) % p;
    }
    m
}

fn mat_pow_mod(m: &Matrix, mut e: u128, p: u32) -> Matrix {
    let mut acc = identity_matrix(m.len());
    let mut base = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul_mod(&acc, &base, p);
        }
        base = mat_mul_mod(&base, &base, p);
        e >>= 1;
    }
    acc
}

/// Least (in coefficient order) monic primitive polynomial of degree `k`
/// over `GF(p)`, as `[c_0, ..., c_{k-1}]`.
pub fn primitive_polynomial(p: u32, k: usize) -> Vec<u32> {
    let target = (p as u128).pow(k as u32) - 1;
    let primes: Vec<u128> = factorize(target).into_iter().map(|(q, _)| q).collect();
    let total = (p as u64).pow(k as u32);
    for idx in 0..total {
        let mut coeffs = vec![0u32; k];
        let mut t = idx;
        for c in coeffs.iter_mut() {
            *c = (t % p as u64) as u32;
            t /= p as u64;
        }
        if coeffs[0] == 0 {
            continue;
        }
        let m = companion_matrix(&coeffs, p);
        let id = identity_matrix(k);
        if mat_pow_mod(&m, target, p) != id {
            continue;
        }
        if primes.iter().all(|&q| mat_pow_mod(&m, target / q, p) != id) {
            return coeffs;
        }
    }
    unreachable!("primitive polynomials exist for every prime field and degree")
}

/// An identity-fixing bijection `f: A -> B` stored as a code table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedBijection {
    domain: AbelianGroup,
    codomain: AbelianGroup,
    table: Vec<u32>,
}

impl PointedBijection {
    pub fn from_code_table(domain: AbelianGroup, codomain: AbelianGroup, table: Vec<u32>) -> Result<Self> {
        let n = domain.order();
        if codomain.order() != n || table.len() != n {
            return Err(Error::NotBijection(alloc::format!("table of length {} for groups of order {n}", table.len())));
        }
        if table[0] != 0 {
            return Err(Error::IdentityMoved);
        }
        let mut seen = vec![false; n];
        for &c in &table {
            let c = c as usize;
            if c >= n || seen[c] {
                return Err(Error::NotBijection(alloc::format!("image code {c} repeated or out of range")));
            }
            seen[c] = true;
        }
        Ok(PointedBijection { domain, codomain, table })
    }

    pub fn identity(a: &AbelianGroup) -> Self {
        PointedBijection { domain: a.clone(), codomain: a.clone(), table: (0..a.order() as u32).collect() }
    }

    /// From a cycle string on 1-based enumeration positions.
    pub fn from_cycles(a: &AbelianGroup, ordering: &Ordering, cycles: &str) -> Result<Self> {
        let n = a.order();
        let raw = crate::perm::parse_cycle_list(cycles)?;
        for cyc in &raw {
            for &pt in cyc {
                if pt == 1 {
                    return Err(Error::IdentityMoved);
                }
                if pt == 0 || pt > n {
                    return Err(Error::OutOfRange { what: "cycle point", value: pt, limit: n });
                }
            }
        }
        let perm = Permutation::parse_cycles(cycles, n)?;
        Self::from_position_perm(a, ordering, &perm)
    }

    fn from_position_perm(a: &AbelianGroup, ordering: &Ordering, perm: &Permutation) -> Result<Self> {
        let n = a.order();
        let mut table = vec![0u32; n];
        for pos0 in 0..n {
            table[ordering.codes[pos0] as usize] = ordering.codes[perm.apply(pos0)];
        }
        Self::from_code_table(a.clone(), a.clone(), table)
    }

    /// From 1-based positions of the images of positions `2..=n`.
    pub fn from_position_images(a: &AbelianGroup, ordering: &Ordering, images: &[usize]) -> Result<Self> {
        let n = a.order();
        if images.len() + 1 != n {
            return Err(Error::NotBijection(alloc::format!("expected {} images, got {}", n - 1, images.len())));
        }
        let mut table = vec![0u32; n];
        for (i, &img) in images.iter().enumerate() {
            if img == 1 {
                return Err(Error::IdentityMoved);
            }
            if img == 0 || img > n {
                return Err(Error::OutOfRange { what: "image position", value: img, limit: n });
            }
            table[ordering.codes[i + 1] as usize] = ordering.codes[img - 1];
        }
        Self::from_code_table(a.clone(), a.clone(), table)
    }

    /// From a permutation of the `n-1` non-identity positions (0-based point
    /// `i` is position `i+2`).
    pub fn from_sharp_permutation(a: &AbelianGroup, ordering: &Ordering, perm: &Permutation) -> Result<Self> {
        if perm.degree() + 1 != a.order() {
            return Err(Error::DegreeMismatch { left: a.order() - 1, right: perm.degree() });
        }
        let images: Vec<usize> = (0..perm.degree()).map(|i| perm.apply(i) + 2).collect();
        Self::from_position_images(a, ordering, &images)
    }

    /// Permutation of the `n-1` non-identity positions.
    pub fn to_sharp_permutation(&self, ordering: &Ordering) -> Permutation {
        let n = self.domain.order();
        let images =
            (1..n).map(|pos0| ordering.position[self.table[ordering.codes[pos0] as usize] as usize] - 1).collect();
        Permutation::from_images_unchecked(images)
    }

    /// Images of positions `2..=n` as 1-based positions.
    pub fn to_position_images(&self, ordering: &Ordering) -> Vec<usize> {
        (1..self.domain.order())
            .map(|pos0| ordering.position[self.table[ordering.codes[pos0] as usize] as usize] as usize + 1)
            .collect()
    }

    /// Cycle string on 1-based positions.
    pub fn to_cycle_string(&self, ordering: &Ordering) -> String {
        self.to_sharp_permutation(ordering).to_cycle_string_with_base(2)
    }

    /// `i a1 -> i a1`, `i a2 -> i a2`, `i(a1 + j a2) -> i(a1 - j a2)` on `A_{p,2}`.
    pub fn reflection_on_lines(a: &AbelianGroup) -> Result<Self> {
        let p = a.elementary_prime()?;
        if a.rank() != 2 {
            return Err(Error::InvalidInput("rank 2 required".into()));
        }
        let table = (0..a.order())
            .map(|c| {
                let x = a.element(c);
                if x.digits[0] == 0 || x.digits[1] == 0 {
                    c as u32
                } else {
                    let d = vec![x.digits[0], (p - x.digits[1]) % p];
                    a.code(&AbelianElement { digits: d }) as u32
                }
            })
            .collect();
        Self::from_code_table(a.clone(), a.clone(), table)
    }

    /// Swaps the last two positions of the ordering.
    pub fn last_transposition(a: &AbelianGroup, ordering: &Ordering) -> Result<Self> {
        let n = a.order();
        if n < 3 {
            return Err(Error::InvalidInput("need at least two non-identity elements".into()));
        }
        Self::from_cycles(a, ordering, &alloc::format!("({},{})", n - 1, n))
    }

    /// Extends a permutation of the cyclic subgroups: the canonical generator
    /// `a` of each line goes to the canonical generator `b` of its image line,
    /// and `i a -> i b`.
    pub fn line_linear(a: &AbelianGroup, lines: &CyclicSubgroupIndex, line_perm: &Permutation) -> Result<Self> {
        if line_perm.degree() != lines.len() {
            return Err(Error::DegreeMismatch { left: lines.len(), right: line_perm.degree() });
        }
        let mut table = vec![0u32; a.order()];
        for (l, &g) in lines.generators.iter().enumerate() {
            let target = lines.generators[line_perm.apply(l)] as usize;
            for s in 1..lines.p as i64 {
                table[a.scale_code(g as usize, s)] = a.scale_code(target, s) as u32;
            }
        }
        Self::from_code_table(a.clone(), a.clone(), table)
    }

    pub fn domain(&self) -> &AbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &AbelianGroup {
        &self.codomain
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn image_code(&self, code: usize) -> usize {
        self.table[code] as usize
    }

    pub fn image(&self, x: &AbelianElement) -> AbelianElement {
        self.codomain.element(self.table[self.domain.code(x)] as usize)
    }

    pub fn inverse(&self) -> PointedBijection {
        let mut inv = vec![0u32; self.table.len()];
        for (c, &d) in self.table.iter().enumerate() {
            inv[d as usize] = c as u32;
        }
        PointedBijection { domain: self.codomain.clone(), codomain: self.domain.clone(), table: inv }
    }

    /// `self` then `other`.
    pub fn then(&self, other: &PointedBijection) -> Result<PointedBijection> {
        if self.codomain != other.domain {
            return Err(Error::GroupMismatch);
        }
        let table = self.table.iter().map(|&c| other.table[c as usize]).collect();
        Ok(PointedBijection { domain: self.domain.clone(), codomain: other.codomain.clone(), table })
    }

    pub fn is_additive(&self) -> bool {
        let n = self.domain.order();
        (0..n).all(|x| {
            (0..n).all(|y| {
                self.image_code(self.domain.add_codes(x, y)) == self.codomain.add_codes(self.image_code(x), self.image_code(y))
            })
        })
    }

    /// `(a^i)^f = (a^f)^i` for every element and integer `i`.
    pub fn is_power_compatible(&self) -> bool {
        let Ok(p) = self.domain.elementary_prime() else { return false };
        (1..self.domain.order()).all(|c| {
            (2..p as i64).all(|s| self.image_code(self.domain.scale_code(c, s)) == self.codomain.scale_code(self.image_code(c), s))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(p: u32, k: usize) -> AbelianGroup {
        AbelianGroup::elementary(p, k).unwrap()
    }

    #[test]
    fn graded_lex_matches_displayed_list() {
        let g = a(2, 3);
        let names: Vec<String> = g.enumerate(EnumerationMode::GradedLex).iter().map(|x| g.format_element(x)).collect();
        assert_eq!(names, ["0", "a1", "a2", "a3", "a1+a2", "a1+a3", "a2+a3", "a1+a2+a3"]);
    }

    #[test]
    fn graded_lex_rank_four_layout() {
        let g = a(2, 4);
        let e = g.enumerate(EnumerationMode::GradedLex);
        assert_eq!(g.format_element(&e[5]), "a1+a2");
        assert_eq!(g.format_element(&e[10]), "a3+a4");
        assert_eq!(g.format_element(&e[14]), "a2+a3+a4");
        assert_eq!(g.format_element(&e[15]), "a1+a2+a3+a4");
    }

    #[test]
    fn plain_lex_successor() {
        let g = a(3, 2);
        let e = g.enumerate(EnumerationMode::PlainLex);
        assert!(e[0].is_identity());
        assert_eq!(e[1].digits, vec![0, 1]);
    }

    #[test]
    fn combine_examples() {
        let g = a(2, 3);
        let a1 = g.generator(0);
        assert!(g.combine(&a1, &a1, 1).unwrap().is_identity());
        assert_eq!(g.combine(&a1, &g.generator(1), 1).unwrap().digits, vec![1, 1, 0]);
        let c9 = AbelianGroup::new(vec![9]).unwrap();
        let x = c9.generator(0);
        assert_eq!(c9.combine(&x, &x, 1).unwrap().digits, vec![2]);
        assert_eq!(g.combine(&a1, &g.identity(), 5).unwrap(), a1);
        assert!(g.combine(&a1, &c9.generator(0), 1).is_err());
    }

    #[test]
    fn basis_checks() {
        let g = a(2, 3);
        let std: Vec<_> = (0..3).map(|i| g.generator(i)).collect();
        assert!(g.is_basis(&std).unwrap());
        let dep = vec![g.generator(0), g.generator(1), g.combine(&g.generator(0), &g.generator(1), 1).unwrap()];
        assert!(!g.is_basis(&dep).unwrap());
        let g2 = a(2, 2);
        let elems: Vec<_> = (1..4).map(|c| g2.element(c)).collect();
        let mut count = 0;
        for x in &elems {
            for y in &elems {
                if g2.is_basis(&[x.clone(), y.clone()]).unwrap() {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 6);
        assert!(AbelianGroup::new(vec![2, 4]).unwrap().is_basis(&[]).is_err());
    }

    #[test]
    fn cyclic_subgroup_counts() {
        let g = a(3, 3);
        let ord = g.ordering(EnumerationMode::GradedLex);
        assert_eq!(g.cyclic_subgroups(&ord).unwrap().len(), 13);
        let g = a(2, 4);
        assert_eq!(g.cyclic_subgroups(&g.ordering(EnumerationMode::PlainLex)).unwrap().len(), 15);
        // Oracle: generate <x> for each non-identity x and dedupe.
        let g = a(3, 2);
        let mut subs: Vec<Vec<usize>> = (1..9)
            .map(|c| {
                let mut s: Vec<usize> = (0..3).map(|i| g.scale_code(c, i)).collect();
                s.sort_unstable();
                s
            })
            .collect();
        subs.sort();
        subs.dedup();
        let idx = g.cyclic_subgroups(&g.ordering(EnumerationMode::PlainLex)).unwrap();
        assert_eq!(idx.len(), subs.len());
        assert_eq!(subs.len(), 4);
    }

    #[test]
    fn canonical_generator_is_least() {
        let g = a(3, 2);
        let ord = g.ordering(EnumerationMode::GradedLex);
        let idx = g.cyclic_subgroups(&ord).unwrap();
        for c in 1..g.order() {
            let gen = idx.generators[idx.subgroup_of[c] as usize] as usize;
            assert!(ord.position[gen] <= ord.position[c]);
        }
    }

    #[test]
    fn automorphism_group_orders() {
        for (p, k) in [(2u32, 2usize), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            let g = a(p, k);
            let ord = g.ordering(EnumerationMode::GradedLex);
            let gl: u128 = (0..k as u32).map(|j| (p as u128).pow(k as u32) - (p as u128).pow(j)).product();
            let elems = g.automorphism_perm_group(&ord, ActionDomain::Elements).unwrap();
            assert_eq!(elems.order(), gl, "GL({k},{p})");
            let lines = g.automorphism_perm_group(&ord, ActionDomain::Lines).unwrap();
            assert_eq!(lines.order(), gl / (p as u128 - 1), "PGL({k},{p})");
        }
        let g = a(3, 3);
        let lines = g.automorphism_perm_group(&g.ordering(EnumerationMode::GradedLex), ActionDomain::Lines).unwrap();
        assert_eq!((lines.degree(), lines.order()), (13, 5616));
        let g = a(2, 1);
        let t = g.automorphism_perm_group(&g.ordering(EnumerationMode::GradedLex), ActionDomain::Elements).unwrap();
        assert_eq!((t.degree(), t.order()), (1, 1));
    }

    #[test]
    fn sl32_contains_displayed_generators() {
        let g = a(2, 3);
        let u = g.automorphism_perm_group(&g.ordering(EnumerationMode::GradedLex), ActionDomain::Elements).unwrap();
        for s in ["(2,7,4,6,5,8,3)", "(2,8,7)(3,4,6)"] {
            let perm = Permutation::parse_cycles_with_base(s, 7, 2).unwrap();
            assert!(u.contains(&perm));
        }
    }

    #[test]
    fn bijection_from_cycles() {
        let g = a(2, 3);
        let ord = g.ordering(EnumerationMode::GradedLex);
        let f = PointedBijection::from_cycles(&g, &ord, "(6,7)").unwrap();
        let x = g.element(ord.code_at_position(6));
        assert_eq!(g.format_element(&x), "a1+a3");
        assert_eq!(g.format_element(&f.image(&x)), "a2+a3");
        assert_eq!(f.image(&g.generator(0)), g.generator(0));
        assert_eq!(PointedBijection::from_cycles(&g, &ord, "()").unwrap(), PointedBijection::identity(&g));
        assert_eq!(PointedBijection::from_cycles(&g, &ord, "(1,2)"), Err(Error::IdentityMoved));
        assert!(matches!(PointedBijection::from_cycles(&g, &ord, "(2,9)"), Err(Error::OutOfRange { .. })));
        assert_eq!(f.to_cycle_string(&ord), "(6,7)");
        let imgs = f.to_position_images(&ord);
        assert_eq!(PointedBijection::from_position_images(&g, &ord, &imgs).unwrap(), f);
    }

    #[test]
    fn reflection_example() {
        let g = a(3, 2);
        let f = PointedBijection::reflection_on_lines(&g).unwrap();
        let x = AbelianElement { digits: vec![1, 1] };
        assert_eq!(f.image(&x).digits, vec![1, 2]);
    }

    #[test]
    fn reflection_linear_on_lines_permutes_bases_not_additive() {
        for p in [3u32, 5] {
            let g = a(p, 2);
            let f = PointedBijection::reflection_on_lines(&g).unwrap();
            assert!(f.is_power_compatible());
            let lines = g.cyclic_subgroups(&g.ordering(EnumerationMode::PlainLex)).unwrap();
            for c in 1..g.order() {
                for s in 1..p as i64 {
                    assert_eq!(lines.subgroup_of[f.image_code(c)], lines.subgroup_of[f.image_code(g.scale_code(c, s))]);
                }
            }
            for x in 1..g.order() {
                for y in 1..g.order() {
                    let b = [g.element(x), g.element(y)];
                    let fb = [f.image(&b[0]), f.image(&b[1])];
                    assert_eq!(g.is_basis(&b).unwrap(), g.is_basis(&fb).unwrap());
                }
            }
            assert!(!f.is_additive());
        }
    }

    #[test]
    fn line_linear_extension() {
        let g = a(3, 3);
        let ord = g.ordering(EnumerationMode::GradedLex);
        let lines = g.cyclic_subgroups(&ord).unwrap();
        let perm = Permutation::parse_cycles("(1,2)(3,7,5)", 13).unwrap();
        let f = PointedBijection::line_linear(&g, &lines, &perm).unwrap();
        assert!(f.is_power_compatible());
        let a0 = lines.generators[0] as usize;
        assert_eq!(f.image_code(a0), lines.generators[1] as usize);
    }

    #[test]
    fn primitive_polynomials_have_full_order() {
        assert_eq!(primitive_polynomial(2, 3), vec![1, 1, 0]);
        for (p, k) in [(2u32, 4usize), (3, 3), (5, 2), (7, 1)] {
            let c = primitive_polynomial(p, k);
            assert_eq!(c.len(), k);
        }
    }

    #[test]
    fn matrix_inverse_round_trip() {
        let m = vec![vec![1, 2, 0], vec![0, 1, 1], vec![1, 0, 2]];
        let inv = invert_mod_p(&m, 3).unwrap();
        assert_eq!(mat_mul_mod(&m, &inv, 3), identity_matrix(3));
        assert!(invert_mod_p(&vec![vec![1, 1], vec![1, 1]], 2).is_none());
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn cycle_string_round_trip(seed in proptest::collection::vec(0usize..1000, 7)) {
            let g = AbelianGroup::elementary(2, 3).unwrap();
            let ord = g.ordering(EnumerationMode::GradedLex);
            let mut pts: Vec<u32> = (0..7).collect();
            for (i, s) in seed.iter().enumerate() {
                pts.swap(i, s % (i + 1));
            }
            let perm = Permutation::from_images(pts).unwrap();
            let f = PointedBijection::from_sharp_permutation(&g, &ord, &perm).unwrap();
            let s = f.to_cycle_string(&ord);
            prop_assert_eq!(PointedBijection::from_cycles(&g, &ord, &s).unwrap(), f.clone());
            prop_assert_eq!(f.to_sharp_permutation(&ord), perm);
        }
    }
}
