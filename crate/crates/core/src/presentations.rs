//! Words, presentations and the builders for weak-commutativity groups.
//!
//! Generator `i` with exponent `e` is the letter `(i, e)`. A relator keeps
//! the expression it was written as (products, powers, left-normed
//! commutators) so that printing is canonical; its word is derived from it.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::abelian::{AbelianElement, AbelianGroup, PointedBijection};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<(u32, i32)>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord { letters: Vec::new() }
    }

    pub fn letter(gen: usize, exp: i32) -> Self {
        let mut w = GroupWord::identity();
        w.push(gen as u32, exp);
        w
    }

    /// Freely reduces the given letters.
    pub fn from_letters(letters: &[(u32, i32)]) -> Self {
        let mut w = GroupWord::identity();
        for &(g, e) in letters {
            w.push(g, e);
        }
        w
    }

    fn push(&mut self, g: u32, e: i32) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((g, e));
    }

    pub fn letters(&self) -> &[(u32, i32)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Total number of generator symbols, counting multiplicity.
    pub fn length(&self) -> usize {
        self.letters.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord { letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn pow(&self, e: i32) -> GroupWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut w = GroupWord::identity();
        for _ in 0..e.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(x: &GroupWord, y: &GroupWord) -> GroupWord {
        x.inverse().mul(&y.inverse()).mul(x).mul(y)
    }

    /// `y^-1 x y`.
    pub fn conjugate(&self, by: &GroupWord) -> GroupWord {
        by.inverse().mul(self).mul(by)
    }

    /// Expands into a sequence of signed unit letters `(gen, +1|-1)`.
    pub fn unit_letters(&self) -> Vec<(u32, bool)> {
        let mut out = Vec::with_capacity(self.length());
        for &(g, e) in &self.letters {
            for _ in 0..e.unsigned_abs() {
                out.push((g, e < 0));
            }
        }
        out
    }

    pub fn max_generator(&self) -> Option<u32> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    /// Replaces every generator by a word.
    pub fn substitute(&self, images: &[GroupWord]) -> GroupWord {
        let mut w = GroupWord::identity();
        for &(g, e) in &self.letters {
            w = w.mul(&images[g as usize].pow(e));
        }
        w
    }
}

/// Relator expression tree kept for printing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Letter(u32, i32),
    Product(Vec<Expr>),
    Power(Box<Expr>, i32),
    /// Left-normed commutator `[x1, x2, ..., xn]`.
    Commutator(Vec<Expr>),
}

impl Expr {
    pub fn word(&self) -> GroupWord {
        match self {
            Expr::Letter(g, e) => GroupWord::letter(*g as usize, *e),
            Expr::Product(items) => items.iter().fold(GroupWord::identity(), |acc, x| acc.mul(&x.word())),
            Expr::Power(x, e) => x.word().pow(*e),
            Expr::Commutator(items) => {
                let mut it = items.iter();
                let first = it.next().map(|x| x.word()).unwrap_or_default();
                it.fold(first, |acc, x| GroupWord::commutator(&acc, &x.word()))
            }
        }
    }

    /// Expression for a word written letter by letter.
    pub fn from_word(w: &GroupWord) -> Expr {
        let items: Vec<Expr> = w.letters().iter().map(|&(g, e)| Expr::Letter(g, e)).collect();
        if items.len() == 1 {
            items.into_iter().next().unwrap()
        } else {
            Expr::Product(items)
        }
    }

    pub fn commutator(x: Expr, y: Expr) -> Expr {
        Expr::Commutator(vec![x, y])
    }

    fn max_generator(&self) -> Option<u32> {
        match self {
            Expr::Letter(g, _) => Some(*g),
            Expr::Product(items) | Expr::Commutator(items) => items.iter().filter_map(|x| x.max_generator()).max(),
            Expr::Power(x, _) => x.max_generator(),
        }
    }

    /// Text form with the given generator names.
    pub fn render(&self, names: &[String]) -> String {
        let mut s = String::new();
        self.write(names, &mut s);
        s
    }

    fn write(&self, names: &[String], out: &mut String) {
        match self {
            Expr::Letter(g, e) => {
                out.push_str(&names[*g as usize]);
                if *e != 1 {
                    out.push('^');
                    out.push_str(&e.to_string());
                }
            }
            Expr::Product(items) => {
                if items.is_empty() {
                    out.push('1');
                }
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push('*');
                    }
                    let wrap = matches!(x, Expr::Product(_));
                    if wrap {
                        out.push('(');
                    }
                    x.write(names, out);
                    if wrap {
                        out.push(')');
                    }
                }
            }
            Expr::Power(x, e) => {
                let wrap = !matches!(**x, Expr::Commutator(_));
                if wrap {
                    out.push('(');
                }
                x.write(names, out);
                if wrap {
                    out.push(')');
                }
                out.push('^');
                out.push_str(&e.to_string());
            }
            Expr::Commutator(items) => {
                out.push('[');
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    x.write(names, out);
                }
                out.push(']');
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Expr>,
    /// Construction tag, e.g. `pairs` or `sanov`.
    pub tag: String,
    pub params: Vec<(String, String)>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Expr>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidInput("presentation without generators".into()));
        }
        let n = generators.len() as u32;
        for r in &relators {
            if r.max_generator().is_some_and(|g| g >= n) {
                return Err(Error::OutOfRange { what: "generator index", value: r.max_generator().unwrap() as usize, limit: n as usize });
            }
        }
        Ok(Presentation { generators, relators, tag: String::new(), params: Vec::new() })
    }

    pub fn with_tag(mut self, tag: &str, params: Vec<(String, String)>) -> Self {
        self.tag = tag.into();
        self.params = params;
        self
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_words(&self) -> Vec<GroupWord> {
        self.relators.iter().map(|r| r.word()).collect()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Parses `"< a1,a2 | a1^2, [a1,a2] >"`.
    pub fn parse(text: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse { input: text.to_string(), reason: reason.to_string() };
        let t = text.trim();
        let inner = t.strip_prefix('<').and_then(|s| s.strip_suffix('>')).ok_or_else(|| err("expected '< ... >'"))?;
        let (gens, rels) = inner.split_once('|').ok_or_else(|| err("expected '|'"))?;
        let generators: Vec<String> = gens.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        for g in &generators {
            if !g.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) || !g.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(err("bad generator name"));
            }
        }
        let mut relators = Vec::new();
        for piece in split_top_level(rels) {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let mut parser = ExprParser { src: piece.as_bytes(), pos: 0, names: &generators };
            let e = parser.product().map_err(|r| err(&r))?;
            parser.skip_ws();
            if parser.pos != parser.src.len() {
                return Err(err("trailing input in relator"));
            }
            relators.push(e);
        }
        Presentation::new(generators, relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::from("< ");
        s.push_str(&self.generators.join(","));
        s.push_str(" | ");
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            r.write(&self.generators, &mut s);
        }
        s.push_str(" >");
        f.write_str(&s)
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn product(&mut self) -> core::result::Result<Expr, String> {
        let mut items = vec![self.factor()?];
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    items.push(self.factor()?);
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'[' || c == b'(' => items.push(self.factor()?),
                _ => break,
            }
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Expr::Product(items) })
    }

    fn factor(&mut self) -> core::result::Result<Expr, String> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok(match atom {
                Expr::Letter(g, e1) => Expr::Letter(g, e1 * e),
                other => Expr::Power(Box::new(other), e),
            });
        }
        Ok(atom)
    }

    fn integer(&mut self) -> core::result::Result<i32, String> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.src.len() && self.src[self.pos] == b'-' {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = core::str::from_utf8(&self.src[start..self.pos]).map_err(|_| "bad utf8".to_string())?;
        s.parse().map_err(|_| alloc::format!("bad exponent '{s}'"))
    }

    fn atom(&mut self) -> core::result::Result<Expr, String> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let mut items = vec![self.product()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    items.push(self.product()?);
                }
                if self.peek() != Some(b']') {
                    return Err("unclosed '['".into());
                }
                self.pos += 1;
                if items.len() < 2 {
                    return Err("commutator needs two entries".into());
                }
                Ok(Expr::Commutator(items))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.product()?;
                if self.peek() != Some(b')') {
                    return Err("unclosed '('".into());
                }
                self.pos += 1;
                Ok(match e {
                    Expr::Product(v) => Expr::Product(v),
                    other => Expr::Product(vec![other]),
                })
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Expr::Product(Vec::new()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let g = self.names.iter().position(|n| n == name).ok_or_else(|| alloc::format!("unknown generator '{name}'"))?;
                Ok(Expr::Letter(g as u32, 1))
            }
            _ => Err("unexpected token".into()),
        }
    }
}

/// Word for `x` in normal digit order over generators starting at `offset`.
pub fn element_expr(x: &AbelianElement, offset: usize) -> Expr {
    let items: Vec<Expr> =
        x.digits.iter().enumerate().filter(|(_, &d)| d != 0).map(|(i, &d)| Expr::Letter((offset + i) as u32, d as i32)).collect();
    if items.len() == 1 {
        items.into_iter().next().unwrap()
    } else {
        Expr::Product(items)
    }
}

/// Commuting pairs `(u, v)`, `u` in `a`, `v` in `b`, as element codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSet {
    pub a: AbelianGroup,
    pub b: AbelianGroup,
    pub pairs: Vec<(usize, usize)>,
}

impl PairSet {
    fn new(a: AbelianGroup, b: AbelianGroup, raw: Vec<(usize, usize)>) -> Self {
        let mut pairs = Vec::with_capacity(raw.len());
        for p in raw {
            if p.0 != 0 && p.1 != 0 && !pairs.contains(&p) {
                pairs.push(p);
            }
        }
        PairSet { a, b, pairs }
    }

    /// `(h, h^f)` for every non-identity `h`, in code order.
    pub fn graph(f: &PointedBijection) -> Self {
        let raw = (1..f.domain().order()).map(|c| (c, f.image_code(c))).collect();
        PairSet::new(f.domain().clone(), f.codomain().clone(), raw)
    }

    /// `(w, w^psi)` for every non-identity product `w` of at most `m`
    /// elements of `s`; `b` is a copy of `a`.
    pub fn chi(a: &AbelianGroup, s: &[AbelianElement], m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidInput("m must be at least 1".into()));
        }
        for x in s {
            if x.digits.len() != a.rank() || x.digits.iter().zip(a.cyclic_orders()).any(|(&d, &n)| d >= n) {
                return Err(Error::GroupMismatch);
            }
        }
        let s_codes: Vec<usize> = s.iter().map(|x| a.code(x)).collect();
        let mut seen = vec![false; a.order()];
        seen[0] = true;
        let mut reached = vec![0usize];
        let mut frontier = vec![0usize];
        for _ in 0..m {
            let mut next = Vec::new();
            for &w in &frontier {
                for &x in &s_codes {
                    let y = a.add_codes(w, x);
                    if !seen[y] {
                        seen[y] = true;
                        next.push(y);
                    }
                }
            }
            reached.extend_from_slice(&next);
            frontier = next;
        }
        let mut all: Vec<usize> = reached.into_iter().filter(|&c| c != 0).collect();
        all.sort_unstable();
        let raw = all.into_iter().map(|c| (c, c)).collect();
        Ok(PairSet::new(a.clone(), a.clone(), raw))
    }

    /// The six pairs of the rank-3 example over `A_{p,3}`.
    pub fn example1(p: u32) -> Result<Self> {
        let a = AbelianGroup::elementary(p, 3)?;
        let v = |d: [u32; 3]| a.code(&AbelianElement { digits: d.to_vec() });
        let minus = p - 1;
        let raw = vec![
            (v([1, 0, 0]), v([1, 0, 0])),
            (v([0, 1, 0]), v([0, 1, 0])),
            (v([0, 0, 1]), v([0, 0, 1])),
            (v([1, 1, 0]), v([1, minus, 0])),
            (v([1, 0, 1]), v([1, 0, 1])),
            (v([0, 1, 1]), v([0, 1, 1])),
        ];
        Ok(PairSet::new(a.clone(), a, raw))
    }

    pub fn inverse(&self) -> PairSet {
        PairSet { a: self.b.clone(), b: self.a.clone(), pairs: self.pairs.iter().map(|&(u, v)| (v, u)).collect() }
    }
}

fn abelian_relators(g: &AbelianGroup, offset: usize) -> Vec<Expr> {
    let mut out = Vec::new();
    for (i, &n) in g.cyclic_orders().iter().enumerate() {
        out.push(Expr::Letter((offset + i) as u32, n as i32));
    }
    for i in 0..g.rank() {
        for j in i + 1..g.rank() {
            out.push(Expr::commutator(Expr::Letter((offset + i) as u32, 1), Expr::Letter((offset + j) as u32, 1)));
        }
    }
    out
}

fn generator_names(a: &AbelianGroup, b: &AbelianGroup) -> Vec<String> {
    let mut names: Vec<String> = (1..=a.rank()).map(|i| alloc::format!("a{i}")).collect();
    names.extend((1..=b.rank()).map(|i| alloc::format!("b{i}")));
    names
}

/// `< A, B | abelian relators, [u, v] for (u, v) in pairs >`.
pub fn build_pairs_presentation(pairs: &PairSet) -> Result<Presentation> {
    let (a, b) = (&pairs.a, &pairs.b);
    if a.rank() == 0 || b.rank() == 0 {
        return Err(Error::InvalidInput("empty generator list".into()));
    }
    let mut relators = abelian_relators(a, 0);
    relators.extend(abelian_relators(b, a.rank()));
    for &(u, v) in &pairs.pairs {
        relators.push(Expr::commutator(element_expr(&a.element(u), 0), element_expr(&b.element(v), a.rank())));
    }
    let params = vec![("a".into(), a.to_string()), ("b".into(), b.to_string()), ("pairs".into(), pairs.pairs.len().to_string())];
    Ok(Presentation::new(generator_names(a, b), relators)?.with_tag("pairs", params))
}

/// `< H, K | h h^f = h^a h^b for h != e >` with `a: H -> K`, `b: H -> H`
/// given as code tables.
pub fn build_sanov(f: &PointedBijection, a_map: &[u32], b_map: &[u32]) -> Result<Presentation> {
    let h = f.domain();
    let k = f.codomain();
    if a_map.len() != h.order() || b_map.len() != h.order() {
        return Err(Error::InvalidInput("map table length differs from |H|".into()));
    }
    if a_map.iter().any(|&x| x as usize >= k.order()) || b_map.iter().any(|&x| x as usize >= h.order()) {
        return Err(Error::InvalidInput("map table entry out of range".into()));
    }
    let mut relators = abelian_relators(h, 0);
    relators.extend(abelian_relators(k, h.rank()));
    for c in 1..h.order() {
        let present = |e: Expr| if e == Expr::Product(Vec::new()) { None } else { Some(e) };
        let mut items: Vec<Expr> = [element_expr(&h.element(c), 0), element_expr(&k.element(f.image_code(c)), h.rank())]
            .into_iter()
            .filter_map(present)
            .collect();
        let rhs: Vec<Expr> = [element_expr(&k.element(a_map[c] as usize), h.rank()), element_expr(&h.element(b_map[c] as usize), 0)]
            .into_iter()
            .filter_map(present)
            .collect();
        if !rhs.is_empty() {
            items.push(Expr::Power(Box::new(Expr::Product(rhs)), -1));
        }
        relators.push(Expr::Product(items));
    }
    let params = vec![("h".into(), h.to_string()), ("k".into(), k.to_string())];
    Ok(Presentation::new(generator_names(h, k), relators)?.with_tag("sanov", params))
}

/// Data for the central-extension construction: groups `H~`, `K~`, central
/// subgroups `M`, `N`, transversals `H`, `K`, and bijections `alpha`,
/// `gamma: M -> N`, `f: H -> K` given as code pairs.
#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    pub h_tilde: AbelianGroup,
    pub k_tilde: AbelianGroup,
    pub m_gens: Vec<AbelianElement>,
    pub n_gens: Vec<AbelianElement>,
    pub h_gens: Vec<AbelianElement>,
    pub k_gens: Vec<AbelianElement>,
    pub alpha: Vec<(usize, usize)>,
    pub gamma: Vec<(usize, usize)>,
    pub f: Vec<(usize, usize)>,
}

/// A subgroup (or transversal) as a sorted code list.
pub fn span(g: &AbelianGroup, gens: &[AbelianElement]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut out = vec![0usize];
    let mut i = 0;
    while i < out.len() {
        for x in gens {
            let y = g.add_codes(out[i], g.code(x));
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Transversal of `sub` spanned by `gens`: all `sum c_i g_i` with `c_i`
/// below the order of `g_i` modulo `sub`.
pub fn transversal(g: &AbelianGroup, sub: &[usize], gens: &[AbelianElement]) -> Result<Vec<usize>> {
    let mut in_sub = vec![false; g.order()];
    for &c in sub {
        in_sub[c] = true;
    }
    let mut reps = vec![0usize];
    for x in gens {
        let xc = g.code(x);
        let mut r = 1;
        let mut acc = xc;
        while !in_sub[acc] {
            acc = g.add_codes(acc, xc);
            r += 1;
        }
        let mut next = Vec::with_capacity(reps.len() * r);
        for &t in &reps {
            let mut y = t;
            for _ in 0..r {
                next.push(y);
                y = g.add_codes(y, xc);
            }
        }
        reps = next;
    }
    if reps.len() * sub.len() != g.order() {
        return Err(Error::InvalidInput("generators do not give a transversal".into()));
    }
    let mut coset_seen = vec![false; g.order()];
    for &t in &reps {
        for &m in sub {
            let y = g.add_codes(t, m);
            if coset_seen[y] {
                return Err(Error::InvalidInput("transversal elements share a coset".into()));
            }
            coset_seen[y] = true;
        }
    }
    Ok(reps)
}

fn map_from_pairs(pairs: &[(usize, usize)], domain: &[usize], codomain: &[usize], fix_identity: bool, what: &str) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::with_capacity(domain.len());
    for &x in domain {
        let img: Vec<usize> = pairs.iter().filter(|p| p.0 == x).map(|p| p.1).collect();
        if img.len() != 1 {
            return Err(Error::NotBijection(alloc::format!("{what}: element {x} has {} images", img.len())));
        }
        if !codomain.contains(&img[0]) {
            return Err(Error::NotBijection(alloc::format!("{what}: image {} outside codomain", img[0])));
        }
        out.push((x, img[0]));
    }
    let mut imgs: Vec<usize> = out.iter().map(|p| p.1).collect();
    imgs.sort_unstable();
    imgs.dedup();
    if imgs.len() != codomain.len() || domain.len() != codomain.len() {
        return Err(Error::NotBijection(alloc::format!("{what} is not bijective")));
    }
    if fix_identity && out.iter().any(|&(x, y)| (x == 0) != (y == 0)) {
        return Err(Error::IdentityMoved);
    }
    Ok(out)
}

/// Resolved extension data: subgroup and transversal code lists plus the
/// assembled `f*`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub spec: ExtensionSpec,
    pub m: Vec<usize>,
    pub n: Vec<usize>,
    pub h: Vec<usize>,
    pub k: Vec<usize>,
    pub alpha: Vec<(usize, usize)>,
    pub gamma: Vec<(usize, usize)>,
    pub f: Vec<(usize, usize)>,
    pub f_star: PointedBijection,
}

impl Extension {
    pub fn alpha(&self, m: usize) -> usize {
        self.alpha.iter().find(|p| p.0 == m).expect("element of M").1
    }

    pub fn alpha_inv(&self, n: usize) -> usize {
        self.alpha.iter().find(|p| p.1 == n).expect("element of N").0
    }

    pub fn gamma(&self, m: usize) -> usize {
        self.gamma.iter().find(|p| p.0 == m).expect("element of M").1
    }

    pub fn gamma_inv(&self, n: usize) -> usize {
        self.gamma.iter().find(|p| p.1 == n).expect("element of N").0
    }

    /// `m^delta = m^alpha ((m m^{alpha gamma^-1})^gamma)^-1`, in `N`.
    pub fn delta(&self, m: usize) -> usize {
        let (ht, kt) = (&self.spec.h_tilde, &self.spec.k_tilde);
        let inner = ht.add_codes(m, self.gamma_inv(self.alpha(m)));
        kt.add_codes(self.alpha(m), kt.scale_code(self.gamma(inner), -1))
    }

    /// `m^epsilon = m ((m^alpha m^gamma)^{gamma^-1})^-1`, in `M`.
    pub fn epsilon(&self, m: usize) -> usize {
        let (ht, kt) = (&self.spec.h_tilde, &self.spec.k_tilde);
        let inner = kt.add_codes(self.alpha(m), self.gamma(m));
        ht.add_codes(m, ht.scale_code(self.gamma_inv(inner), -1))
    }
}

/// Assembles `f*: m -> m^alpha, m h -> m^gamma h^f (h != e)` and the
/// presentation of `G(H~, K~; f*)`.
pub fn build_extension(spec: &ExtensionSpec) -> Result<(Presentation, Extension)> {
    let (ht, kt) = (&spec.h_tilde, &spec.k_tilde);
    if ht.order() != kt.order() {
        return Err(Error::InvalidInput("H~ and K~ differ in order".into()));
    }
    let m = span(ht, &spec.m_gens);
    let n = span(kt, &spec.n_gens);
    let h = transversal(ht, &m, &spec.h_gens)?;
    let k = transversal(kt, &n, &spec.k_gens)?;
    let alpha = map_from_pairs(&spec.alpha, &m, &n, true, "alpha")?;
    let gamma = map_from_pairs(&spec.gamma, &m, &n, false, "gamma")?;
    let f = map_from_pairs(&spec.f, &h, &k, true, "f")?;
    let mut table = vec![u32::MAX; ht.order()];
    for &(mc, ac) in &alpha {
        table[mc] = ac as u32;
    }
    for &(hc, fc) in f.iter().filter(|p| p.0 != 0) {
        for &(mc, gc) in &gamma {
            table[ht.add_codes(mc, hc)] = kt.add_codes(gc, fc) as u32;
        }
    }
    let f_star = PointedBijection::from_code_table(ht.clone(), kt.clone(), table)?;
    let pres = build_pairs_presentation(&PairSet::graph(&f_star))?.with_tag(
        "extension",
        vec![("h_tilde".into(), ht.to_string()), ("m".into(), m.len().to_string())],
    );
    let ext = Extension { spec: spec.clone(), m, n, h, k, alpha, gamma, f, f_star };
    Ok((pres, ext))
}

/// The `chi(A_{2,k})` extension: `M = <a1>`, `N = <b1>`, `f` the natural
/// isomorphism on `<a2..ak>`, `alpha: a1 -> b1`, `gamma: e -> b1, a1 -> e`.
pub fn chi_extension_spec(k: usize) -> Result<ExtensionSpec> {
    if k < 2 {
        return Err(Error::InvalidInput("rank at least 2 required".into()));
    }
    let a = AbelianGroup::elementary(2, k)?;
    let a1 = a.code(&a.generator(0));
    let rest: Vec<AbelianElement> = (1..k).map(|i| a.generator(i)).collect();
    let h = span(&a, &rest);
    Ok(ExtensionSpec {
        h_tilde: a.clone(),
        k_tilde: a.clone(),
        m_gens: vec![a.generator(0)],
        n_gens: vec![a.generator(0)],
        h_gens: rest.clone(),
        k_gens: rest,
        alpha: vec![(0, 0), (a1, a1)],
        gamma: vec![(0, a1), (a1, 0)],
        f: h.iter().map(|&c| (c, c)).collect(),
    })
}

/// `H~ = K~ = C_4`, `M = N = C_2`; `gamma_swaps` selects `gamma: e -> n`.
pub fn cyclic_toy_extension_spec(gamma_swaps: bool) -> ExtensionSpec {
    let c4 = AbelianGroup::new(vec![4]).expect("C4");
    let two = AbelianElement { digits: vec![2] };
    let one = AbelianElement { digits: vec![1] };
    let gamma = if gamma_swaps { vec![(0, 2), (2, 0)] } else { vec![(0, 0), (2, 2)] };
    ExtensionSpec {
        h_tilde: c4.clone(),
        k_tilde: c4,
        m_gens: vec![two.clone()],
        n_gens: vec![two],
        h_gens: vec![one.clone()],
        k_gens: vec![one],
        alpha: vec![(0, 0), (2, 2)],
        gamma,
        f: vec![(0, 0), (1, 1)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::EnumerationMode;

    #[test]
    fn free_reduction() {
        let w = GroupWord::from_letters(&[(0, 1), (1, 2), (1, -2), (0, 1)]);
        assert_eq!(w.letters(), &[(0, 2)]);
        let x = GroupWord::from_letters(&[(0, 1), (1, -1)]);
        assert!(x.mul(&x.inverse()).is_identity());
        assert_eq!(GroupWord::commutator(&x, &x), GroupWord::identity());
    }

    #[test]
    fn text_round_trip() {
        let s = "< a1,a2,b1,b2 | a1^2, [a1,a2], (a1*b1)^3, [a1*a2,b1*b2^-1,a1], a1*b1^-1 >";
        let p = Presentation::parse(s).unwrap();
        assert_eq!(p.to_string(), s);
        assert_eq!(p.relators.len(), 5);
        assert_eq!(p.relator_words()[1], GroupWord::from_letters(&[(0, -1), (1, -1), (0, 1), (1, 1)]));
        assert!(Presentation::parse("< a | b >").is_err());
        assert!(Presentation::parse("a | a").is_err());
    }

    #[test]
    fn graph_of_identity_pairs() {
        let a = AbelianGroup::elementary(2, 3).unwrap();
        let ps = PairSet::graph(&PointedBijection::identity(&a));
        assert_eq!(ps.pairs.len(), 7);
        assert!(ps.pairs.iter().all(|&(u, v)| u == v));
        let p = build_pairs_presentation(&ps).unwrap();
        assert_eq!(p.relators.len(), 19);
        assert_eq!(p.num_generators(), 6);
    }

    #[test]
    fn chi_pairs_rank_two() {
        let a = AbelianGroup::elementary(2, 2).unwrap();
        let s = [a.generator(0), a.generator(1)];
        assert_eq!(PairSet::chi(&a, &s, 2).unwrap().pairs.len(), 3);
        assert_eq!(PairSet::chi(&a, &s, 1).unwrap().pairs.len(), 2);
        assert!(PairSet::chi(&a, &s, 0).is_err());
        let a3 = AbelianGroup::elementary(3, 3).unwrap();
        let s3: Vec<_> = (0..3).map(|i| a3.generator(i)).collect();
        // Sums of at most two generators: 3 + 3 doubles + 3 pairs.
        assert_eq!(PairSet::chi(&a3, &s3, 2).unwrap().pairs.len(), 9);
    }

    #[test]
    fn example1_pairs() {
        let ps = PairSet::example1(3).unwrap();
        assert_eq!(ps.pairs.len(), 6);
        let a = &ps.a;
        let (u, v) = ps.pairs[3];
        assert_eq!(a.format_element(&a.element(u)), "a1+a2");
        assert_eq!(a.format_element(&a.element(v)), "a1+2a2");
        let p = build_pairs_presentation(&ps).unwrap();
        assert_eq!(p.relators.len(), 12 + 6);
    }

    #[test]
    fn sanov_relator_shape() {
        let a = AbelianGroup::elementary(2, 1).unwrap();
        let f = PointedBijection::identity(&a);
        let p = build_sanov(&f, &[0, 1], &[0, 1]).unwrap();
        // a1^2, b1^2, a1 b1 (b1 a1)^-1
        assert_eq!(p.relators.len(), 3);
        assert_eq!(p.relator_words()[2], GroupWord::commutator(&GroupWord::letter(0, -1), &GroupWord::letter(1, -1)));
    }

    #[test]
    fn chi_extension_fstar() {
        let spec = chi_extension_spec(3).unwrap();
        let (_, ext) = build_extension(&spec).unwrap();
        let a = &spec.h_tilde;
        let ord = a.ordering(EnumerationMode::GradedLex);
        let _ = ord;
        let g = |d: [u32; 3]| a.code(&AbelianElement { digits: d.to_vec() });
        assert_eq!(ext.f_star.image_code(g([1, 0, 0])), g([1, 0, 0]));
        assert_eq!(ext.f_star.image_code(g([0, 1, 0])), g([1, 1, 0]));
        assert_eq!(ext.f_star.image_code(g([1, 1, 1])), g([0, 1, 1]));
        // delta and epsilon are pointed bijections-like: e <-> e only.
        for &m in &ext.m {
            assert_eq!(ext.delta(m) == 0, m == 0);
            assert_eq!(ext.epsilon(m) == 0, m == 0);
        }
    }

    #[test]
    fn degenerate_extension_is_alpha() {
        let c2 = AbelianGroup::elementary(2, 1).unwrap();
        let spec = ExtensionSpec {
            h_tilde: c2.clone(),
            k_tilde: c2.clone(),
            m_gens: vec![c2.generator(0)],
            n_gens: vec![c2.generator(0)],
            h_gens: vec![],
            k_gens: vec![],
            alpha: vec![(0, 0), (1, 1)],
            gamma: vec![(0, 0), (1, 1)],
            f: vec![(0, 0)],
        };
        let (_, ext) = build_extension(&spec).unwrap();
        assert_eq!(ext.f_star, PointedBijection::identity(&c2));
    }

    #[test]
    fn extension_rejects_bad_alpha() {
        let mut spec = chi_extension_spec(3).unwrap();
        spec.alpha = vec![(0, 1), (1, 0)];
        assert!(build_extension(&spec).is_err());
    }

    #[test]
    fn toy_transversal() {
        let spec = cyclic_toy_extension_spec(true);
        let (_, ext) = build_extension(&spec).unwrap();
        assert_eq!(ext.h, vec![0, 1]);
        assert_eq!(ext.f_star.table(), &[0, 3, 2, 1]);
    }
}
