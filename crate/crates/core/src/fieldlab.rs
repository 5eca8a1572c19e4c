//! The substitutions `alpha: (h,k) -> (h, h^f k)` and
//! `beta: (h,k) -> (k^{f^-1} h, k)` on `H x K`: orbits, closed forms for the
//! inversion map of a field, and the orbit census of the extension map `f*`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::{AbelianElement, AbelianGroup, PointedBijection};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::presentations::{build_pairs_presentation, PairSet, Presentation};
use crate::util::is_prime;

/// Arithmetic needed to run the substitutions for the inversion map.
trait Scalars {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn int(&self, n: i64) -> Self::E;
    fn add(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn mul(&self, x: &Self::E, y: &Self::E) -> Self::E;
    /// Multiplicative inverse with `0 -> 0`.
    fn inv(&self, x: &Self::E) -> Self::E;
}

impl Scalars for FiniteField {
    type E = FieldElement;
    fn zero(&self) -> u32 {
        0
    }
    fn int(&self, n: i64) -> u32 {
        self.from_int(n)
    }
    fn add(&self, x: &u32, y: &u32) -> u32 {
        FiniteField::add(self, *x, *y)
    }
    fn mul(&self, x: &u32, y: &u32) -> u32 {
        FiniteField::mul(self, *x, *y)
    }
    fn inv(&self, x: &u32) -> u32 {
        FiniteField::inv(self, *x)
    }
}

struct Rationals;

impl Scalars for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x + y
    }
    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }
    fn inv(&self, x: &BigRational) -> BigRational {
        if x.is_zero() {
            BigRational::zero()
        } else {
            x.recip()
        }
    }
}

/// `alpha^i` for the inversion map: `(h, k) -> (h, k + i/h)`.
fn alpha_pow<S: Scalars>(s: &S, i: i64, (h, k): (S::E, S::E)) -> (S::E, S::E) {
    let k2 = s.add(&k, &s.mul(&s.int(i), &s.inv(&h)));
    (h, k2)
}

/// `beta^j` for the inversion map: `(h, k) -> (h + j/k, k)`.
fn beta_pow<S: Scalars>(s: &S, j: i64, (h, k): (S::E, S::E)) -> (S::E, S::E) {
    let h2 = s.add(&h, &s.mul(&s.int(j), &s.inv(&k)));
    (h2, k)
}

/// Applies `alpha^{e_1} beta^{e_2} alpha^{e_3} ...`, left to right.
fn apply_word<S: Scalars>(s: &S, word: &[i64], start: (S::E, S::E)) -> (S::E, S::E) {
    word.iter().enumerate().fold(start, |pt, (t, &e)| if t % 2 == 0 { alpha_pow(s, e, pt) } else { beta_pow(s, e, pt) })
}

fn alpha_beta_steps<S: Scalars>(s: &S, i: usize, start: (S::E, S::E)) -> (S::E, S::E) {
    (0..i).fold(start, |pt, _| beta_pow(s, 1, alpha_pow(s, 1, pt)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A required factorial is not invertible.
    Skipped,
}

impl CheckStatus {
    pub fn name(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerForm {
    /// `(alpha beta)^i (0, b)`.
    Power,
    /// `(alpha beta)^i alpha (0, b)`.
    PowerThenAlpha,
    /// `(alpha beta)^{(p+1)/2} (0, b) = (0, (-1)^{(p-1)/2} b)`.
    Wilson,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerFormCase {
    pub i: usize,
    pub b: String,
    pub form: PowerForm,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerFormReport {
    /// `None` for exact rational arithmetic.
    pub modulus: Option<u32>,
    pub cases: Vec<PowerFormCase>,
}

impl PowerFormReport {
    pub fn pass(&self) -> bool {
        self.cases.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }
}

fn factorial_big(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, t| acc * BigInt::from(t))
}

/// `(X, Y, Z)` with `(alpha beta)^i (0,b) = (X/b, Y b)` and
/// `(alpha beta)^i alpha (0,b) = (X/b, Z b)`.
fn power_form_coefficients(i: usize) -> (BigRational, BigRational, BigRational) {
    let two_pow = BigInt::from(2).pow(i as u32 - 1);
    let d = two_pow * factorial_big(i - 1);
    let d2 = &d * &d;
    let odd = factorial_big(2 * i - 1);
    let x = BigRational::new(odd.clone(), d2.clone());
    let y = BigRational::new(BigInt::from(2).pow(2 * i as u32 - 2) * factorial_big(i - 1).pow(2), factorial_big(2 * i - 2));
    let z = BigRational::new(BigInt::from(2 * i) * d2, odd);
    (x, y, z)
}

fn status(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

/// Closed forms for `(alpha beta)^i` from `(0, b)` over the rationals, for
/// `1 <= i <= max_i` and the witnesses `b = 1, 2`. Both sides are linear in
/// `b` and `1/b`, so two witnesses determine the identity.
pub fn check_power_forms_rational(max_i: usize) -> PowerFormReport {
    let q = Rationals;
    let mut cases = Vec::new();
    for i in 1..=max_i {
        let (x, y, z) = power_form_coefficients(i);
        for b in [1i64, 2] {
            let b = q.int(b);
            let start = (q.zero(), b.clone());
            let after = alpha_beta_steps(&q, i, start);
            let binv = b.recip();
            let expected = (&x * &binv, &y * &b);
            cases.push(PowerFormCase { i, b: b.to_string(), form: PowerForm::Power, status: status(after == expected) });
            let after_alpha = alpha_pow(&q, 1, after);
            let expected = (&x * &binv, &z * &b);
            cases.push(PowerFormCase {
                i,
                b: b.to_string(),
                form: PowerForm::PowerThenAlpha,
                status: status(after_alpha == expected),
            });
        }
    }
    PowerFormReport { modulus: None, cases }
}

fn rational_mod_p(x: &BigRational, f: &FiniteField) -> Option<u32> {
    let p = f.characteristic();
    let pb = BigInt::from(p);
    let num = ((x.numer() % &pb) + &pb) % &pb;
    let den = ((x.denom() % &pb) + &pb) % &pb;
    let den: u64 = den.try_into().ok()?;
    if den == 0 {
        return None;
    }
    let num: u64 = num.try_into().ok()?;
    Some(f.div(num as u32, den as u32))
}

/// The same closed forms in `GF(p)` for `1 <= i <= (p+1)/2`; cases where
/// `(2i-1)!` vanishes mod `p` are skipped, and `i = (p+1)/2` is checked
/// against `(0, (-1)^{(p-1)/2} b)`. `b = None` runs every non-zero `b`.
pub fn check_power_forms_mod_p(p: u32, b: Option<u32>) -> Result<PowerFormReport> {
    if p == 2 || !is_prime(p as u64) {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    let f = FiniteField::new(p, 1)?;
    let bs: Vec<u32> = match b {
        Some(b) if b % p == 0 => return Err(Error::InvalidInput("b must be non-zero".into())),
        Some(b) => vec![b % p],
        None => (1..p).collect(),
    };
    let wilson_i = (p as usize).div_ceil(2);
    let mut cases = Vec::new();
    for &b in &bs {
        for i in 1..=wilson_i {
            let after = alpha_beta_steps(&f, i, (0, b));
            if 2 * i > p as usize {
                cases.push(PowerFormCase { i, b: b.to_string(), form: PowerForm::Power, status: CheckStatus::Skipped });
                cases.push(PowerFormCase {
                    i,
                    b: b.to_string(),
                    form: PowerForm::PowerThenAlpha,
                    status: CheckStatus::Skipped,
                });
            } else {
                let (x, y, z) = power_form_coefficients(i);
                let (x, y, z) = (rational_mod_p(&x, &f), rational_mod_p(&y, &f), rational_mod_p(&z, &f));
                let binv = f.inv(b);
                let power = match (x, y) {
                    (Some(x), Some(y)) => status(after == (f.mul(x, binv), f.mul(y, b))),
                    _ => CheckStatus::Skipped,
                };
                cases.push(PowerFormCase { i, b: b.to_string(), form: PowerForm::Power, status: power });
                let after_alpha = alpha_pow(&f, 1, after);
                let then_alpha = match (x, z) {
                    (Some(x), Some(z)) => status(after_alpha == (f.mul(x, binv), f.mul(z, b))),
                    _ => CheckStatus::Skipped,
                };
                cases.push(PowerFormCase { i, b: b.to_string(), form: PowerForm::PowerThenAlpha, status: then_alpha });
            }
            if i == wilson_i {
                let sign = if ((p - 1) / 2).is_multiple_of(2) { b } else { f.neg(b) };
                cases.push(PowerFormCase { i, b: b.to_string(), form: PowerForm::Wilson, status: status(after == (0, sign)) });
            }
        }
    }
    Ok(PowerFormReport { modulus: Some(p), cases })
}

/// Pairs `(a, b)` with `a, b != 0` and `ab` outside the prime field.
pub fn commutator_word_domain(f: &FiniteField) -> Vec<(FieldElement, FieldElement)> {
    let mut out = Vec::new();
    for a in 1..f.order() {
        for b in 1..f.order() {
            if !f.in_prime_field(f.mul(a, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

/// `count` pairs drawn uniformly from [`commutator_word_domain`] with a fixed seed.
pub fn commutator_word_sample(f: &FiniteField, count: usize, seed: u64) -> Vec<(FieldElement, FieldElement)> {
    let domain = commutator_word_domain(f);
    if domain.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| domain[rng.gen_range(0..domain.len())]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorWordReport {
    pub i: i64,
    pub j: i64,
    pub checked: usize,
    /// Starts where `[alpha^i, beta^j]` and `[alpha^j, beta^i]` disagree.
    pub relation_failures: usize,
    /// Starts moved by `alpha^i beta^{-i-j} alpha^j beta^i alpha^{-i-j} beta^j`.
    pub word_failures: usize,
    pub first_failure: Option<(FieldElement, FieldElement)>,
}

impl CommutatorWordReport {
    pub fn pass(&self) -> bool {
        self.relation_failures == 0 && self.word_failures == 0
    }
}

/// Checks both commutator relations at every start; starts outside the
/// domain (`a, b != 0`, `ab` not in the prime field) are rejected.
pub fn check_commutator_word(f: &FiniteField, i: i64, j: i64, starts: &[(FieldElement, FieldElement)]) -> Result<CommutatorWordReport> {
    let mut report = CommutatorWordReport { i, j, checked: 0, relation_failures: 0, word_failures: 0, first_failure: None };
    for &(a, b) in starts {
        if a >= f.order() || b >= f.order() || a == 0 || b == 0 || f.in_prime_field(f.mul(a, b)) {
            return Err(Error::InvalidInput(format!("start ({}, {}) is outside the domain", f.format(a), f.format(b))));
        }
        let left = apply_word(f, &[-i, -j, i, j], (a, b));
        let right = apply_word(f, &[-j, -i, j, i], (a, b));
        let word = apply_word(f, &[i, -i - j, j, i, -i - j, j], (a, b));
        let bad_rel = left != right;
        let bad_word = word != (a, b);
        report.relation_failures += usize::from(bad_rel);
        report.word_failures += usize::from(bad_word);
        if (bad_rel || bad_word) && report.first_failure.is_none() {
            report.first_failure = Some((a, b));
        }
        report.checked += 1;
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Char2Report {
    pub field_order: u32,
    /// `alpha^2 = beta^2 = e` on all of `F x F`.
    pub involutions: bool,
    /// `(alpha beta)^n = (c^n a, c^-n b)` and `(alpha beta)^n beta = (c^{n-1} a, c^-n b)`
    /// for `0 <= n <= |F|` and every admissible `(a, b)`.
    pub closed_form: bool,
    /// Every admissible orbit has length `2 o(c)`.
    pub orbit_lengths: bool,
    /// `|F| - 1` is prime.
    pub prime_unit_group: bool,
    /// Admissible pairs whose `c` does not generate `F^#`.
    pub generator_failures: usize,
    pub first_generator_failure: Option<(FieldElement, FieldElement)>,
    /// Admissible pairs where `{(1 + c^i) a : 0 < i < o(c)}` is not
    /// `F^# \ {a}` or does not span `F` additively.
    pub translate_failures: usize,
}

impl Char2Report {
    /// The closed forms hold, and when `|F| - 1` is prime so does the
    /// generator hypothesis.
    pub fn pass(&self) -> bool {
        self.involutions
            && self.closed_form
            && self.orbit_lengths
            && (!self.prime_unit_group || (self.generator_failures == 0 && self.translate_failures == 0))
    }
}

fn additive_span_is_field(f: &FiniteField, set: &[FieldElement]) -> bool {
    let mut seen = vec![false; f.order() as usize];
    seen[0] = true;
    let mut members = vec![0u32];
    for &x in set {
        if seen[x as usize] {
            continue;
        }
        let current = members.clone();
        for y in current {
            let z = f.add(x, y);
            if !seen[z as usize] {
                seen[z as usize] = true;
                members.push(z);
            }
        }
    }
    members.len() == f.order() as usize
}

/// Closed forms for the inversion map of a field of characteristic 2, with
/// `c = ab / (1 + ab)` over pairs with `a, b != 0` and `ab != 1`.
pub fn check_char2(f: &FiniteField) -> Result<Char2Report> {
    if f.characteristic() != 2 {
        return Err(Error::InvalidInput("characteristic 2 required".into()));
    }
    let q = f.order();
    let mut report = Char2Report {
        field_order: q,
        involutions: true,
        closed_form: true,
        orbit_lengths: true,
        prime_unit_group: is_prime(q as u64 - 1),
        generator_failures: 0,
        first_generator_failure: None,
        translate_failures: 0,
    };
    let inv = f.inversion_bijection();
    for a in 0..q {
        for b in 0..q {
            if alpha_pow(f, 2, (a, b)) != (a, b) || beta_pow(f, 2, (a, b)) != (a, b) {
                report.involutions = false;
            }
            if a == 0 || b == 0 || f.mul(a, b) == 1 {
                continue;
            }
            let ab = f.mul(a, b);
            let c = f.div(ab, f.add(1, ab));
            let oc = f.multiplicative_order(c);
            let mut pt = (a, b);
            for n in 0..=q as i64 {
                if pt != (f.mul(f.pow(c, n), a), f.mul(f.pow(c, -n), b)) {
                    report.closed_form = false;
                }
                if beta_pow(f, 1, pt) != (f.mul(f.pow(c, n - 1), a), f.mul(f.pow(c, -n), b)) {
                    report.closed_form = false;
                }
                pt = beta_pow(f, 1, alpha_pow(f, 1, pt));
            }
            let orbit = alphabeta_orbit(&inv, (f.to_code(a), f.to_code(b)));
            if orbit.len() != 2 * oc as usize {
                report.orbit_lengths = false;
            }
            if oc != q - 1 {
                report.generator_failures += 1;
                report.first_generator_failure.get_or_insert((a, b));
            }
            let translates: Vec<FieldElement> = (1..oc as i64).map(|i| f.mul(f.add(1, f.pow(c, i)), a)).collect();
            let mut expected: Vec<FieldElement> = (1..q).filter(|&x| x != a).collect();
            let mut got = translates.clone();
            got.sort_unstable();
            got.dedup();
            expected.sort_unstable();
            if got != expected || !additive_span_is_field(f, &translates) {
                report.translate_failures += 1;
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiAdditiveReport {
    pub field_order: u32,
    /// `inv(x + y) != inv(x) + inv(y)` whenever `0` is not among `x, y, x + y`.
    pub anti_additive: bool,
    pub counterexample: Option<(FieldElement, FieldElement)>,
    /// Characteristic is not 3 and `3` does not divide `|F| - 1`.
    pub predicted: bool,
    pub pairs_checked: usize,
}

impl AntiAdditiveReport {
    pub fn pass(&self) -> bool {
        self.anti_additive
    }
}

pub fn anti_additive_check(f: &FiniteField) -> AntiAdditiveReport {
    let mut report = AntiAdditiveReport {
        field_order: f.order(),
        anti_additive: true,
        counterexample: None,
        predicted: f.characteristic() != 3 && !(f.order() - 1).is_multiple_of(3),
        pairs_checked: 0,
    };
    for x in 1..f.order() {
        for y in 1..f.order() {
            let s = f.add(x, y);
            if s == 0 {
                continue;
            }
            report.pairs_checked += 1;
            if f.inv(s) == f.add(f.inv(x), f.inv(y)) && report.anti_additive {
                report.anti_additive = false;
                report.counterexample = Some((x, y));
            }
        }
    }
    report
}

/// `G(F; inv) = < F, F' | [a, 1/a'] for a != 0 >`.
pub fn inversion_presentation(f: &FiniteField) -> Result<Presentation> {
    build_pairs_presentation(&PairSet::graph(&f.inversion_bijection()))
}

/// One orbit of `<alpha, beta>` on `H x K`, as element codes in discovery
/// order (breadth first, `alpha` before `beta`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    pub start: (usize, usize),
    pub elements: Vec<(usize, usize)>,
}

impl OrbitRecord {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `alpha(h, k) = (h, f(h) + k)` on codes.
pub fn alpha(f: &PointedBijection, (h, k): (usize, usize)) -> (usize, usize) {
    (h, f.codomain().add_codes(f.image_code(h), k))
}

/// `beta(h, k) = (f^{-1}(k) + h, k)` on codes, given the inverse table.
fn beta_with(f: &PointedBijection, finv: &PointedBijection, (h, k): (usize, usize)) -> (usize, usize) {
    (f.domain().add_codes(finv.image_code(k), h), k)
}

pub fn beta(f: &PointedBijection, pt: (usize, usize)) -> (usize, usize) {
    beta_with(f, &f.inverse(), pt)
}

fn orbit_with(f: &PointedBijection, finv: &PointedBijection, start: (usize, usize), seen: &mut HashMap<(usize, usize), ()>) -> OrbitRecord {
    let mut elements = vec![start];
    seen.insert(start, ());
    let mut head = 0;
    while head < elements.len() {
        let pt = elements[head];
        head += 1;
        for next in [alpha(f, pt), beta_with(f, finv, pt)] {
            if seen.insert(next, ()).is_none() {
                elements.push(next);
            }
        }
    }
    OrbitRecord { start, elements }
}

pub fn alphabeta_orbit(f: &PointedBijection, start: (usize, usize)) -> OrbitRecord {
    orbit_with(f, &f.inverse(), start, &mut HashMap::new())
}

/// All orbits on `H x K`, each started at its least pair.
pub fn orbit_partition(f: &PointedBijection) -> Vec<OrbitRecord> {
    let finv = f.inverse();
    let (nh, nk) = (f.domain().order(), f.codomain().order());
    let mut seen = HashMap::with_capacity(nh * nk);
    let mut out = Vec::new();
    for h in 0..nh {
        for k in 0..nk {
            if !seen.contains_key(&(h, k)) {
                out.push(orbit_with(f, &finv, (h, k), &mut seen));
            }
        }
    }
    out
}

/// `f*` on `A_{2,k}`: `a1 -> b1`, `h -> b1 h` and `a1 h -> h` for `h` a
/// non-identity element of `<a2, ..., ak>`, with `b_i` identified with `a_i`.
pub fn extension_map(k: usize) -> Result<PointedBijection> {
    if k < 2 {
        return Err(Error::InvalidInput("rank at least 2 required".into()));
    }
    let a = AbelianGroup::elementary(2, k)?;
    let a1 = a.code(&a.generator(0));
    let table = (0..a.order())
        .map(|c| {
            let x = a.element(c);
            let in_a = x.digits[0] == 0;
            let rest = a.code(&AbelianElement { digits: core::iter::once(0).chain(x.digits[1..].iter().copied()).collect() });
            (match (c, in_a, rest) {
                (0, _, _) => 0,
                (_, false, 0) => a1,
                (_, true, h) => a.add_codes(a1, h),
                (_, false, h) => h,
            }) as u32
        })
        .collect();
    PointedBijection::from_code_table(a.clone(), a, table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitType {
    Fixed,
    I,
    II,
    III,
    /// Contains a pair with an identity coordinate, or matches a template
    /// only with the identity for `u` or `w`.
    Degenerate,
    Unclassified,
}

impl OrbitType {
    pub fn name(self) -> &'static str {
        match self {
            OrbitType::Fixed => "fixed",
            OrbitType::I => "i",
            OrbitType::II => "ii",
            OrbitType::III => "iii",
            OrbitType::Degenerate => "degenerate",
            OrbitType::Unclassified => "unclassified",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCensus {
    pub k: usize,
    pub orbits: Vec<(OrbitRecord, OrbitType)>,
    pub total_pairs: usize,
}

impl OrbitCensus {
    pub fn count(&self, t: OrbitType) -> usize {
        self.orbits.iter().filter(|(_, ty)| *ty == t).count()
    }

    pub fn covered_pairs(&self) -> usize {
        self.orbits.iter().map(|(o, _)| o.len()).sum()
    }

    pub fn lengths(&self, t: OrbitType) -> Vec<usize> {
        self.orbits.iter().filter(|(_, ty)| *ty == t).map(|(o, _)| o.len()).collect()
    }
}

fn orbit_key(mut pts: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    pts.sort_unstable();
    pts.dedup();
    pts
}

/// Partitions `A_{2,k} x A_{2,k}` into orbits for `f*` and matches each orbit
/// against the three six-pair families indexed by `u != w` in `<a2, ..., ak>`.
pub fn classify_extension_orbits(k: usize) -> Result<OrbitCensus> {
    if k < 3 {
        return Err(Error::InvalidInput("rank at least 3 required".into()));
    }
    let f = extension_map(k)?;
    let a = f.domain().clone();
    let a1 = a.code(&a.generator(0));
    let sub: Vec<usize> = (0..a.order()).filter(|&c| a.element(c).digits[0] == 0).collect();
    let plus = |x: usize, y: usize| a.add_codes(x, y);
    let mut templates: HashMap<Vec<(usize, usize)>, OrbitType> = HashMap::new();
    let mut record = |pts: Vec<(usize, usize)>, ty: OrbitType, degenerate: bool| {
        let ty = if degenerate { OrbitType::Degenerate } else { ty };
        templates.entry(orbit_key(pts)).or_insert(ty);
    };
    for &u in &sub {
        let (b1, a1u) = (a1, plus(a1, u));
        record(vec![(a1, u), (u, u), (u, b1), (a1u, b1), (a1u, plus(b1, u)), (a1, plus(b1, u))], OrbitType::I, u == 0);
    }
    for &u in &sub {
        for &w in &sub {
            if u == w {
                continue;
            }
            let degenerate = u == 0 || w == 0;
            let uw = plus(u, w);
            let (b1, a1uw, a1u, a1w) = (a1, plus(a1, uw), plus(a1, u), plus(a1, w));
            record(
                vec![(u, w), (a1uw, w), (a1uw, u), (w, u), (w, plus(b1, uw)), (u, plus(b1, uw))],
                OrbitType::II,
                degenerate,
            );
            record(
                vec![
                    (a1u, plus(b1, w)),
                    (a1uw, plus(b1, w)),
                    (a1uw, plus(b1, u)),
                    (a1w, plus(b1, u)),
                    (a1w, plus(b1, uw)),
                    (a1u, plus(b1, uw)),
                ],
                OrbitType::III,
                degenerate,
            );
        }
    }
    let orbits = orbit_partition(&f)
        .into_iter()
        .map(|o| {
            let ty = if o.len() == 1 {
                OrbitType::Fixed
            } else if o.elements.iter().any(|&(x, y)| x == 0 || y == 0) {
                OrbitType::Degenerate
            } else {
                templates.get(&orbit_key(o.elements.clone())).copied().unwrap_or(OrbitType::Unclassified)
            };
            (o, ty)
        })
        .collect();
    Ok(OrbitCensus { k, orbits, total_pairs: a.order() * a.order() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_step_from_zero() {
        let q = Rationals;
        for b in [1i64, 3, -5] {
            let b = q.int(b);
            assert_eq!(alpha_beta_steps(&q, 1, (q.zero(), b.clone())), (b.recip(), b));
        }
    }

    #[test]
    fn power_forms_rational_first_ten() {
        let r = check_power_forms_rational(10);
        assert_eq!(r.cases.len(), 40);
        assert!(r.pass(), "{:?}", r.cases.iter().find(|c| c.status == CheckStatus::Fail));
    }

    fn direct_iteration(p: u32, b: u32, steps: usize) -> (u32, u32) {
        let (mut h, mut k) = (0u32, b);
        let inv = |x: u32| (1..p).find(|y| x * y % p == 1).unwrap_or(0);
        for _ in 0..steps {
            k = (k + inv(h)) % p;
            h = (h + inv(k)) % p;
        }
        (h, k)
    }

    #[test]
    fn wilson_cases() {
        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!(alpha_beta_steps(&f5, 3, (0, 2)), (0, 2));
        assert_eq!(direct_iteration(5, 2, 3), (0, 2));
        let f7 = FiniteField::new(7, 1).unwrap();
        assert_eq!(alpha_beta_steps(&f7, 4, (0, 3)), (0, 4));
        assert_eq!(direct_iteration(7, 3, 4), (0, 4));
        for p in [3, 5, 7, 11, 13] {
            let r = check_power_forms_mod_p(p, None).unwrap();
            assert!(r.pass(), "p = {p}");
            assert_eq!(r.cases.iter().filter(|c| c.form == PowerForm::Wilson).count(), p as usize - 1);
            assert!(r.count(CheckStatus::Skipped) > 0);
        }
        assert!(check_power_forms_mod_p(4, None).is_err());
        assert!(check_power_forms_mod_p(5, Some(0)).is_err());
    }

    #[test]
    fn commutator_word_gf9_exhaustive_and_gf25_sampled() {
        let f = FiniteField::new(3, 2).unwrap();
        let t = commutator_word_domain(&f);
        assert!(!t.is_empty());
        let r = check_commutator_word(&f, 1, 2, &t).unwrap();
        assert_eq!(r.checked, t.len());
        assert!(r.pass(), "{r:?}");
        let r = check_commutator_word(&f, 2, 2, &t).unwrap();
        assert!(r.pass());
        let g = FiniteField::new(5, 2).unwrap();
        let starts = commutator_word_sample(&g, 100, 0);
        assert!(check_commutator_word(&g, 2, 3, &starts).unwrap().pass());
        assert!(check_commutator_word(&f, 1, 2, &[(1, 1)]).is_err());
    }

    #[test]
    fn char2_reports() {
        let r = check_char2(&FiniteField::new(2, 3).unwrap()).unwrap();
        assert!(r.involutions && r.closed_form && r.orbit_lengths);
        assert!(r.prime_unit_group);
        assert_eq!((r.generator_failures, r.translate_failures), (0, 0));
        assert!(r.pass());
        let r = check_char2(&FiniteField::new(2, 4).unwrap()).unwrap();
        assert!(r.closed_form && r.orbit_lengths && r.involutions);
        assert!(r.generator_failures > 0);
        let r = check_char2(&FiniteField::new(2, 5).unwrap()).unwrap();
        assert!(r.pass());
        assert!(check_char2(&FiniteField::new(3, 2).unwrap()).is_err());
    }

    #[test]
    fn generator_failure_oracle_gf16() {
        // c = ab/(1+ab) fails to generate exactly when ab/(1+ab) has order 3 or 5.
        let f = FiniteField::new(2, 4).unwrap();
        let mut expected = 0;
        for a in 1..16 {
            for b in 1..16 {
                let ab = f.mul(a, b);
                if ab != 1 && f.multiplicative_order(f.div(ab, f.add(1, ab))) != 15 {
                    expected += 1;
                }
            }
        }
        assert_eq!(check_char2(&f).unwrap().generator_failures, expected);
    }

    #[test]
    fn anti_additivity() {
        let r = anti_additive_check(&FiniteField::new(2, 3).unwrap());
        assert!(r.pass() && r.predicted);
        let r = anti_additive_check(&FiniteField::new(2, 2).unwrap());
        assert!(!r.pass() && !r.predicted);
        let (x, y) = r.counterexample.unwrap();
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.inv(f.add(x, y)), f.add(f.inv(x), f.inv(y)));
        assert!(anti_additive_check(&FiniteField::new(5, 1).unwrap()).pass());
        for (p, k) in [(3, 1), (3, 2), (7, 1), (2, 4), (2, 5), (11, 1), (5, 2)] {
            let r = anti_additive_check(&FiniteField::new(p, k).unwrap());
            assert_eq!(r.pass(), r.predicted, "GF({p}^{k})");
        }
    }

    #[test]
    fn orbit_of_identity_is_fixed() {
        let f = FiniteField::new(2, 3).unwrap().inversion_bijection();
        assert_eq!(alphabeta_orbit(&f, (0, 0)).len(), 1);
        let total: usize = orbit_partition(&f).iter().map(|o| o.len()).sum();
        assert_eq!(total, 64);
    }

    #[test]
    fn extension_orbits_rank_three() {
        let census = classify_extension_orbits(3).unwrap();
        assert_eq!(census.covered_pairs(), 64);
        assert_eq!(census.count(OrbitType::Unclassified), 0);
        assert_eq!(census.count(OrbitType::Fixed), 1);
        assert_eq!(census.lengths(OrbitType::Degenerate), vec![3; 7]);
        assert_eq!((census.count(OrbitType::I), census.count(OrbitType::II), census.count(OrbitType::III)), (3, 3, 1));
        for t in [OrbitType::I, OrbitType::II, OrbitType::III] {
            assert!(census.lengths(t).iter().all(|&l| l == 6));
        }
        let f = extension_map(3).unwrap();
        let a = f.domain();
        let a1 = a.code(&a.generator(0));
        for u in [2usize, 1, 3] {
            let o = alphabeta_orbit(&f, (a1, u));
            let b1 = a1;
            let a1u = a.add_codes(a1, u);
            let expected =
                orbit_key(vec![(a1, u), (u, u), (u, b1), (a1u, b1), (a1u, a.add_codes(b1, u)), (a1, a.add_codes(b1, u))]);
            assert_eq!(orbit_key(o.elements), expected);
        }
    }

    #[test]
    fn extension_orbits_rank_four_partition() {
        let census = classify_extension_orbits(4).unwrap();
        assert_eq!(census.total_pairs, 1 << 8);
        assert_eq!(census.covered_pairs(), 256);
        let sizes: usize = orbit_partition(&extension_map(4).unwrap()).iter().map(|o| o.len()).sum();
        assert_eq!(sizes, 256);
        let census = classify_extension_orbits(5).unwrap();
        assert_eq!(census.covered_pairs(), 1 << 10);
    }
}
