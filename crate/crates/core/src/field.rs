//! Small finite fields `GF(p^k)` with table arithmetic.
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! where `c_i` is the coefficient of `x^i` in the polynomial basis.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::abelian::{AbelianElement, AbelianGroup, PointedBijection};
use crate::error::{Error, Result};
use crate::util::{factorize, is_prime};

pub const MAX_FIELD_ORDER: u32 = 1024;

pub type FieldElement = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    k: usize,
    /// Monic modulus, coefficients from `x^0` to `x^k`.
    modulus: Vec<u32>,
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    primitive: u32,
}

/// Fixed moduli for the fields used throughout; other fields take the least
/// monic irreducible polynomial.
fn table_modulus(p: u32, k: usize) -> Option<Vec<u32>> {
    Some(match (p, k) {
        (_, 1) => vec![0, 1],
        (2, 2) => vec![1, 1, 1],
        (2, 3) => vec![1, 1, 0, 1],
        (2, 4) => vec![1, 1, 0, 0, 1],
        (2, 5) => vec![1, 0, 1, 0, 0, 1],
        (3, 2) => vec![1, 0, 1],
        (3, 3) => vec![1, 2, 0, 1],
        _ => return None,
    })
}

fn digits(mut x: u32, p: u32, k: usize) -> Vec<u32> {
    let mut d = vec![0u32; k];
    for c in d.iter_mut() {
        *c = x % p;
        x /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (t, &m) in modulus.iter().enumerate().take(k) {
            let idx = d - k + t;
            prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
        }
        prod[d] = 0;
    }
    prod[..k].iter().map(|&c| c as u32).collect()
}

impl FiniteField {
    /// `GF(p^k)` with the fixed modulus for this `(p, k)`.
    pub fn new(p: u32, k: usize) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(Error::InvalidInput("field degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(k as u32).filter(|&q| q <= MAX_FIELD_ORDER as u64).ok_or(Error::Capacity {
            what: "field order",
            limit: MAX_FIELD_ORDER as u128,
        })?;
        if let Some(m) = table_modulus(p, k) {
            return Self::with_modulus(p, m);
        }
        for idx in 0..q as u32 {
            let mut m = digits(idx, p, k);
            m.push(1);
            if m[0] == 0 {
                continue;
            }
            if let Ok(f) = Self::with_modulus(p, m) {
                return Ok(f);
            }
        }
        Err(Error::Internal(format!("no irreducible polynomial of degree {k} over GF({p})")))
    }

    /// Field from a monic modulus given by coefficients `x^0 .. x^k`; fails if
    /// the modulus is reducible.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let k = modulus.len().checked_sub(1).filter(|&k| k >= 1).ok_or_else(|| Error::InvalidInput("modulus degree must be at least 1".into()))?;
        if modulus[k] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidInput("modulus must be monic with coefficients below p".into()));
        }
        let q = (p as u64).pow(k as u32);
        if q > MAX_FIELD_ORDER as u64 {
            return Err(Error::Capacity { what: "field order", limit: MAX_FIELD_ORDER as u128 });
        }
        let q = q as u32;
        let n = q as usize;
        let ds: Vec<Vec<u32>> = (0..q).map(|x| digits(x, p, k)).collect();
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            for y in x..n {
                let s: Vec<u32> = ds[x].iter().zip(&ds[y]).map(|(a, b)| (a + b) % p).collect();
                let s = undigits(&s, p);
                let m = undigits(&poly_mul_mod(&ds[x], &ds[y], &modulus, p), p);
                add[x * n + y] = s;
                add[y * n + x] = s;
                mul[x * n + y] = m;
                mul[y * n + x] = m;
            }
        }
        let mut inv = vec![0u32; n];
        for x in 1..n {
            inv[x] = (1..q).find(|&y| mul[x * n + y as usize] == 1).ok_or_else(|| {
                Error::InvalidInput(format!("modulus {modulus:?} is reducible over GF({p})"))
            })?;
        }
        let mut field = FiniteField { p, k, modulus, q, add, mul, inv, primitive: 0 };
        let primes: Vec<u128> = factorize(q as u128 - 1).into_iter().map(|(r, _)| r).collect();
        field.primitive = (1..q)
            .find(|&g| primes.iter().all(|&r| field.pow(g, ((q - 1) as u128 / r) as i64) != 1))
            .ok_or_else(|| Error::Internal("multiplicative group is not cyclic".into()))?;
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> core::ops::Range<u32> {
        0..self.q
    }

    /// The element `x` (the class of the indeterminate), or `1` in a prime field.
    pub fn root(&self) -> FieldElement {
        if self.k == 1 {
            1
        } else {
            self.p
        }
    }

    /// Least generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add[(x * self.q + y) as usize]
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        self.scalar(self.p as i64 - 1, x)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.mul[(x * self.q + y) as usize]
    }

    /// Multiplicative inverse, with `inv(0) = 0`.
    #[inline]
    pub fn inv(&self, x: FieldElement) -> FieldElement {
        self.inv[x as usize]
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.mul(x, self.inv(y))
    }

    /// `x^e`; negative exponents go through `inv`, so `0^e = 0` for `e != 0`.
    pub fn pow(&self, x: FieldElement, e: i64) -> FieldElement {
        let mut base = if e < 0 { self.inv(x) } else { x };
        let mut e = e.unsigned_abs();
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The integer `n` as a field element.
    pub fn from_int(&self, n: i64) -> FieldElement {
        n.rem_euclid(self.p as i64) as u32
    }

    /// `n * x`.
    pub fn scalar(&self, n: i64, x: FieldElement) -> FieldElement {
        self.mul(self.from_int(n), x)
    }

    pub fn in_prime_field(&self, x: FieldElement) -> bool {
        x < self.p
    }

    pub fn multiplicative_order(&self, x: FieldElement) -> u32 {
        if x == 0 {
            return 0;
        }
        let mut y = x;
        let mut n = 1;
        while y != 1 {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    pub fn coefficients(&self, x: FieldElement) -> Vec<u32> {
        digits(x, self.p, self.k)
    }

    /// Coefficient vector, lowest power first.
    pub fn format(&self, x: FieldElement) -> String {
        format!("{:?}", self.coefficients(x))
    }

    /// The additive group as `A_{p,k}`, coefficient of `x^i` in digit `i`.
    pub fn additive_group(&self) -> AbelianGroup {
        AbelianGroup::elementary(self.p, self.k).expect("prime characteristic")
    }

    pub fn to_code(&self, x: FieldElement) -> usize {
        self.additive_group().code(&AbelianElement { digits: self.coefficients(x) })
    }

    pub fn from_code(&self, code: usize) -> FieldElement {
        undigits(&self.additive_group().element(code).digits, self.p)
    }

    /// Inversion `0 -> 0, x -> x^{-1}` as a bijection of the additive group.
    pub fn inversion_bijection(&self) -> PointedBijection {
        let a = self.additive_group();
        let mut table = vec![0u32; self.q as usize];
        for x in self.elements() {
            table[self.to_code(x)] = self.to_code(self.inv(x)) as u32;
        }
        PointedBijection::from_code_table(a.clone(), a, table).expect("inversion is a pointed bijection")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_root_inverse_pair() {
        let f = FiniteField::new(2, 3).unwrap();
        let g = f.root();
        assert_eq!(f.mul(g, f.pow(g, 6)), 1);
        assert_eq!(f.inv(g), f.pow(g, 6));
        assert_eq!(f.multiplicative_order(g), 7);
        assert_eq!(f.inv(0), 0);
        assert_eq!(f.pow(0, -1), 0);
    }

    #[test]
    fn prime_field_inverse() {
        let f = FiniteField::new(5, 1).unwrap();
        assert_eq!(f.inv(2), 3);
        assert_eq!(f.from_int(-1), 4);
        assert_eq!(f.primitive_element(), 2);
    }

    #[test]
    fn fixed_moduli() {
        for (p, k, m) in [
            (2, 2, vec![1, 1, 1]),
            (2, 3, vec![1, 1, 0, 1]),
            (2, 4, vec![1, 1, 0, 0, 1]),
            (2, 5, vec![1, 0, 1, 0, 0, 1]),
            (3, 2, vec![1, 0, 1]),
            (3, 3, vec![1, 2, 0, 1]),
        ] {
            let f = FiniteField::new(p, k).unwrap();
            assert_eq!(f.modulus(), &m[..]);
            // x^k reduces to minus the lower coefficients.
            let xk = f.pow(f.root(), k as i64);
            let expected: Vec<u32> = m[..k].iter().map(|&c| (p - c) % p).collect();
            assert_eq!(f.coefficients(xk), expected);
        }
        assert!(FiniteField::with_modulus(2, vec![1, 0, 1]).is_err());
        assert_eq!(FiniteField::new(5, 2).unwrap().modulus(), &[2, 0, 1]);
    }

    #[test]
    fn field_axioms_on_gf9_and_gf16() {
        for (p, k) in [(3, 2), (2, 4), (5, 2)] {
            let f = FiniteField::new(p, k).unwrap();
            for x in f.elements() {
                assert_eq!(f.add(x, f.neg(x)), 0);
                if x != 0 {
                    assert_eq!(f.mul(x, f.inv(x)), 1);
                }
                for y in f.elements() {
                    for z in [1, f.root(), f.q - 1] {
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                    }
                }
            }
            assert_eq!(f.multiplicative_order(f.primitive_element()), f.order() - 1);
        }
    }

    #[test]
    fn inversion_bijection_round_trip() {
        let f = FiniteField::new(3, 2).unwrap();
        let inv = f.inversion_bijection();
        for x in f.elements() {
            assert_eq!(f.from_code(f.to_code(x)), x);
            assert_eq!(f.from_code(inv.image_code(f.to_code(x))), f.inv(x));
        }
    }
}
