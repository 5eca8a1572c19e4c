//! Exact 5x5 matrices over `Z[x, y, w]` and the affine representation of the
//! rank-3 reduced presentation `chi(A_{2,3}, S; 2)`.
//!
//! An affine matrix has last column `(0,0,0,0,1)^T`; its last row holds the
//! translation. Words act on the left: the image of `g_1 g_2 ... g_n` is
//! `M(g_n) ... M(g_2) M(g_1)`, the reading under which the commutator
//! `[b1b2b3, a1a2a3]` lands on the translation `+4(-x - y + w)`. Multiplying
//! in word order instead gives the inverse translation for that word, with
//! every relator still mapping to the identity.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};
use crate::presentations::{build_pairs_presentation, GroupWord, PairSet};

/// Exponents of `x`, `y`, `w`.
pub type Monomial = [u32; 3];

const VARIABLES: [&str; 3] = ["x", "y", "w"];

/// Integer polynomial in `x, y, w`; no zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, i64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: i64) -> Self {
        Poly::term([0, 0, 0], c)
    }

    pub fn one() -> Self {
        Poly::constant(1)
    }

    pub fn term(m: Monomial, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn x() -> Self {
        Poly::term([1, 0, 0], 1)
    }

    pub fn y() -> Self {
        Poly::term([0, 1, 0], 1)
    }

    pub fn w() -> Self {
        Poly::term([0, 0, 1], 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &i64)> {
        self.terms.iter()
    }

    /// `Some(c)` if the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&[0, 0, 0]).copied(),
            _ => None,
        }
    }

    fn accumulate(&mut self, m: Monomial, c: i64) {
        let entry = self.terms.entry(m).or_insert(0);
        *entry = entry.checked_add(c).expect("polynomial coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: i64) -> Poly {
        let mut out = Poly::zero();
        for (&m, &v) in &self.terms {
            out.accumulate(m, v.checked_mul(c).expect("polynomial coefficient overflow"));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            out.accumulate(m, c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        self + &-other
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, &c) in &self.terms {
            for (b, &d) in &other.terms {
                let m = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                out.accumulate(m, c.checked_mul(d).expect("polynomial coefficient overflow"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest total degree first, then variable order.
        let mut terms: Vec<(&Monomial, &i64)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (i, (m, &c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = m
                .iter()
                .zip(VARIABLES)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, v)| if e == 1 { String::from(v) } else { format!("{v}^{e}") })
                .collect();
            let mono = mono.join("*");
            let sign = if c < 0 { "-" } else { "+" };
            let abs = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (abs, mono.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (1, false) => write!(f, "{mono}")?,
                (_, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

pub const DIM: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: Vec<Vec<Poly>>,
}

impl PolyMatrix {
    pub fn identity() -> Self {
        PolyMatrix {
            rows: (0..DIM).map(|i| (0..DIM).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect()).collect(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        if rows.len() != DIM || rows.iter().any(|r| r.len() != DIM) {
            return Err(Error::InvalidInput(format!("matrix must be {DIM}x{DIM}")));
        }
        Ok(PolyMatrix { rows })
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i][j]
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.rows[i]
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        let rows = (0..DIM)
            .map(|i| {
                (0..DIM)
                    .map(|j| (0..DIM).fold(Poly::zero(), |acc, t| &acc + &(&self.rows[i][t] * &other.rows[t][j])))
                    .collect()
            })
            .collect();
        PolyMatrix { rows }
    }

    /// Last column is `e_5` and the linear block is a signed permutation.
    pub fn is_affine(&self) -> bool {
        let last_column = (0..DIM).all(|i| self.rows[i][DIM - 1].as_constant() == Some(i64::from(i == DIM - 1)));
        last_column && self.is_signed_permutation_block()
    }

    fn is_signed_permutation_block(&self) -> bool {
        let n = DIM - 1;
        let mut col_used = vec![false; n];
        for i in 0..n {
            let mut found = None;
            for j in 0..n {
                match self.rows[i][j].as_constant() {
                    Some(0) => {}
                    Some(1) | Some(-1) if found.is_none() && !col_used[j] => found = Some(j),
                    _ => return false,
                }
            }
            match found {
                Some(j) => col_used[j] = true,
                None => return false,
            }
        }
        true
    }

    /// The first four entries of the last row.
    pub fn translation(&self) -> Vec<Poly> {
        self.rows[DIM - 1][..DIM - 1].to_vec()
    }

    /// Affine with identity linear block.
    pub fn is_translation(&self) -> bool {
        self.is_affine() && (0..DIM - 1).all(|i| self.rows[i][i].as_constant() == Some(1))
    }

    /// Inverse of an affine matrix: the linear block is transposed and the
    /// translation becomes `-t P^T`.
    pub fn inverse(&self) -> Result<PolyMatrix> {
        if !self.is_affine() {
            return Err(Error::InvalidInput("only affine matrices with signed-permutation blocks are inverted".into()));
        }
        let n = DIM - 1;
        let mut out = PolyMatrix::identity();
        for i in 0..n {
            for j in 0..n {
                out.rows[i][j] = self.rows[j][i].clone();
            }
        }
        let t = self.translation();
        for j in 0..n {
            let v = (0..n).fold(Poly::zero(), |acc, i| &acc + &(&t[i] * &out.rows[i][j]));
            out.rows[n][j] = -&v;
        }
        Ok(out)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|p| format!("{p}")).collect();
            write!(f, "({})", cells.join(", "))?;
            if i + 1 < DIM {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Poly::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect()).collect();
        let term = &m[0][c] * &determinant(&minor);
        det = if c % 2 == 0 { &det + &term } else { &det - &term };
    }
    det
}

fn affine(linear: [[i64; 4]; 4], translation: [Poly; 4]) -> PolyMatrix {
    let mut rows: Vec<Vec<Poly>> =
        linear.iter().map(|r| r.iter().map(|&c| Poly::constant(c)).chain(core::iter::once(Poly::zero())).collect()).collect();
    rows.push(translation.into_iter().chain(core::iter::once(Poly::one())).collect());
    PolyMatrix { rows }
}

/// Images of `a1, a2, a3, a1', a2', a3'` where `a'` is the copy of `a`.
pub fn build_representation() -> [PolyMatrix; 6] {
    let (x, y, w) = (Poly::x(), Poly::y(), Poly::w());
    let nx = -&x;
    [
        affine([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]], [x.clone(), nx.clone(), y.clone(), y.clone()]),
        affine([[0, 0, 1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, -1, 0, 0]], [x.clone(), y.clone(), nx.clone(), y.clone()]),
        affine([[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]], [x.clone(), y.clone(), y.clone(), nx]),
        affine([[0, -1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]], [w.clone(), w.clone(), y.clone(), y.clone()]),
        affine([[0, 0, -1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, -1, 0, 0]], [w.clone(), y.clone(), w.clone(), y.clone()]),
        affine([[0, 0, 0, -1], [0, 0, -1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]], [w.clone(), y.clone(), y, w]),
    ]
}

/// Image of a word in the six generators, last letter leftmost.
pub fn evaluate(gens: &[PolyMatrix], word: &GroupWord) -> Result<PolyMatrix> {
    let inverses: Vec<PolyMatrix> = gens.iter().map(|g| g.inverse()).collect::<Result<_>>()?;
    let mut acc = PolyMatrix::identity();
    for &(g, e) in word.letters() {
        let g = g as usize;
        if g >= gens.len() {
            return Err(Error::OutOfRange { what: "generator", value: g, limit: gens.len() });
        }
        let m = if e > 0 { &gens[g] } else { &inverses[g] };
        for _ in 0..e.unsigned_abs() {
            acc = m.mul(&acc);
        }
    }
    Ok(acc)
}

/// `4(-x - y + w)`.
pub fn xi_translation() -> Poly {
    (&(&Poly::w() - &Poly::x()) - &Poly::y()).scale(4)
}

fn gen(i: usize) -> GroupWord {
    GroupWord::letter(i, 1)
}

/// `a_i` for `i` in `1..=3`.
fn a(i: usize) -> GroupWord {
    gen(i - 1)
}

/// The copy `a_i'` for `i` in `1..=3`.
fn b(i: usize) -> GroupWord {
    gen(i + 2)
}

fn comm(x: &GroupWord, y: &GroupWord) -> GroupWord {
    GroupWord::commutator(x, y)
}

fn comm3(x: &GroupWord, y: &GroupWord, z: &GroupWord) -> GroupWord {
    comm(&comm(x, y), z)
}

/// `[a1' a2' a3', a1 a2 a3]`.
pub fn xi_word() -> GroupWord {
    comm(&b(1).mul(&b(2)).mul(&b(3)), &a(1).mul(&a(2)).mul(&a(3)))
}

/// Swaps each `a_i` with its copy.
fn swap_copies(w: &GroupWord) -> GroupWord {
    w.substitute(&[b(1), b(2), b(3), a(1), a(2), a(3)])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixCheck {
    pub group: &'static str,
    pub identity: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationReport {
    pub checks: Vec<MatrixCheck>,
    /// Translation part of the image of the defining commutator.
    pub xi_translation: Vec<Poly>,
    /// Determinant of the four translation vectors of its conjugates by
    /// `e, a1, a2, a3`.
    pub rank_certificate: Poly,
}

impl RepresentationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn group_pass(&self, group: &str) -> bool {
        self.checks.iter().filter(|c| c.group == group).all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&MatrixCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

const NAMES: [&str; 6] = ["a1", "a2", "a3", "a1'", "a2'", "a3'"];

fn render(w: &GroupWord) -> String {
    let names: Vec<String> = NAMES.iter().map(|s| String::from(*s)).collect();
    crate::presentations::Expr::from_word(w).render(&names)
}

/// Checks the relators, the image of the defining commutator, the conjugation
/// table, the rank certificate and the triple-commutator table.
pub fn verify_representation() -> Result<RepresentationReport> {
    let gens = build_representation();
    let eval = |w: &GroupWord| evaluate(&gens, w);
    let mut checks = Vec::new();
    let mut push = |group: &'static str, identity: String, pass: bool| checks.push(MatrixCheck { group, identity, pass });

    for (i, g) in gens.iter().enumerate() {
        push("affine", format!("{} is affine", NAMES[i]), g.is_affine());
    }

    let a23 = AbelianGroup::elementary(2, 3)?;
    let basis: Vec<_> = (0..3).map(|i| a23.generator(i)).collect();
    let presentation = build_pairs_presentation(&PairSet::chi(&a23, &basis, 2)?)?;
    for r in presentation.relator_words() {
        let m = eval(&r)?;
        push("relators", format!("{} = 1", render(&r)), m == PolyMatrix::identity());
    }

    let xi = xi_word();
    let xm = eval(&xi)?;
    let z = xi_translation();
    let expected_translation = vec![z.clone(), Poly::zero(), Poly::zero(), Poly::zero()];
    push("xi", "xi is the translation (z, 0, 0, 0), z = 4(-x - y + w)".into(), xm.is_translation() && xm.translation() == expected_translation);
    let swapped = eval(&swap_copies(&xi))?;
    push("xi", "swapping a_i with a_i' inverts xi".into(), swapped == xm.inverse()?);

    let conj = |g: &GroupWord| xi.conjugate(g);
    for i in 1..=3 {
        let lhs = eval(&conj(&b(i)))?;
        let rhs = eval(&conj(&a(i)))?.inverse()?;
        push("action", format!("xi^(a{i}') = (xi^a{i})^-1"), lhs == rhs);
    }
    for i in 1..=3 {
        for j in 1..=3 {
            if i == j {
                continue;
            }
            let k = 6 - i - j;
            let lhs = eval(&conj(&a(i).mul(&a(j))))?;
            let mid = eval(&conj(&a(k)))?.inverse()?;
            let rhs = eval(&conj(&a(j).mul(&b(i))))?;
            push("action", format!("xi^(a{i} a{j}) = (xi^a{k})^-1 = xi^(a{j} a{i}')"), lhs == mid && mid == rhs);
        }
    }

    let conjugates: Vec<PolyMatrix> =
        [GroupWord::identity(), a(1), a(2), a(3)].iter().map(|g| eval(&conj(g))).collect::<Result<_>>()?;
    let vectors: Vec<Vec<Poly>> = conjugates.iter().map(|m| m.translation()).collect();
    let certificate = determinant(&vectors);
    push("rank", "conjugates of xi by 1, a1, a2, a3 are translations".into(), conjugates.iter().all(|m| m.is_translation()));
    push("rank", format!("translation determinant {certificate} is non-zero"), !certificate.is_zero());
    push(
        "rank",
        "xi commutes with its conjugates".into(),
        conjugates.iter().all(|m| m.mul(&xm) == xm.mul(m)),
    );

    for (lhs, by, rhs) in commutator_table() {
        let l = eval(&lhs.conjugate(&by))?;
        let r = eval(&rhs)?.inverse()?;
        push("table", format!("{}^{} = ({})^-1", render(&lhs), render(&by), render(&rhs)), l == r);
    }

    Ok(RepresentationReport { checks, xi_translation: xm.translation(), rank_certificate: certificate })
}

/// Entries `(u, g, v)` meaning `u^g = v^{-1}`.
fn commutator_table() -> Vec<(GroupWord, GroupWord, GroupWord)> {
    vec![
        (comm3(&b(3), &a(2), &a(1)), b(2), comm3(&b(2), &a(1), &a(3))),
        (comm3(&b(3), &a(2), &a(1)), b(3), comm3(&b(1), &a(3), &a(2))),
        (comm3(&a(3), &b(2), &b(1)), a(2), comm3(&a(2), &b(1), &b(3))),
        (comm3(&a(3), &b(2), &b(1)), a(3), comm3(&a(1), &b(3), &b(2))),
        (comm3(&b(3), &a(2), &b(1)), a(2), comm3(&b(2), &a(1), &b(3))),
        (comm3(&b(3), &a(2), &b(1)), a(3), comm3(&b(1), &a(3), &b(2))),
        (comm3(&b(1), &a(2), &b(3)), a(1), comm3(&b(3), &a(1), &b(2))),
        (comm3(&b(1), &a(3), &b(2)), a(1), comm3(&b(2), &a(1), &b(3))),
        (comm3(&b(2), &a(1), &b(3)), a(2), comm3(&b(3), &a(2), &b(1))),
    ]
}
