//! Sparse polynomials over Q in `x_1..x_n, y_1..y_n`.

use crate::error::{domain, Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Largest supported number of variable pairs.
pub const MAX_PAIRS: usize = 8;
const BITS: u32 = 4;
const MAX_EXP: u32 = (1 << BITS) - 1;

/// Packed exponent vector. Ordered by total degree, then lexicographically
/// with `x_1` most significant, then `x_2`, …, `y_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exp {
    deg: u32,
    packed: u64,
}

impl Exp {
    fn shift(k: usize) -> u32 {
        (2 * MAX_PAIRS as u32 - 1 - k as u32) * BITS
    }

    /// Exponent of variable slot `k` (`x_i` is `i`, `y_i` is `n_max + i`).
    pub fn get(&self, k: usize) -> u32 {
        ((self.packed >> Self::shift(k)) & MAX_EXP as u64) as u32
    }

    fn set(&mut self, k: usize, e: u32) {
        assert!(e <= MAX_EXP, "exponent {e} exceeds packed capacity");
        let old = self.get(k);
        let s = Self::shift(k);
        self.packed = (self.packed & !((MAX_EXP as u64) << s)) | ((e as u64) << s);
        self.deg = self.deg + e - old;
    }

    pub fn from_slices(xs: &[u32], ys: &[u32]) -> Self {
        let mut e = Exp::default();
        for (i, &v) in xs.iter().enumerate() {
            e.set(i, v);
        }
        for (i, &v) in ys.iter().enumerate() {
            e.set(MAX_PAIRS + i, v);
        }
        e
    }

    /// Moves the exponents of pair `i` to pair `sigma[i]`.
    pub(crate) fn permuted(&self, sigma: &[usize]) -> Exp {
        let mut f = Exp::default();
        for (i, &j) in sigma.iter().enumerate() {
            let (a, b) = (self.x(i), self.y(i));
            if a > 0 {
                f.set(j, a);
            }
            if b > 0 {
                f.set(MAX_PAIRS + j, b);
            }
        }
        f
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn x(&self, i: usize) -> u32 {
        self.get(i)
    }

    pub fn y(&self, i: usize) -> u32 {
        self.get(MAX_PAIRS + i)
    }

    /// (x-degree, y-degree).
    pub fn bidegree(&self) -> (u32, u32) {
        let mut a = 0;
        for i in 0..MAX_PAIRS {
            a += self.x(i);
        }
        (a, self.deg - a)
    }

    fn mul(&self, o: &Exp) -> Exp {
        let mut r = *self;
        for k in 0..2 * MAX_PAIRS {
            let e = o.get(k);
            if e > 0 {
                r.set(k, r.get(k) + e);
            }
        }
        r
    }

    fn divides(&self, o: &Exp) -> bool {
        (0..2 * MAX_PAIRS).all(|k| self.get(k) <= o.get(k))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X(usize),
    Y(usize),
}

impl Var {
    fn slot(&self) -> usize {
        match *self {
            Var::X(i) => i,
            Var::Y(i) => MAX_PAIRS + i,
        }
    }

    fn index(&self) -> usize {
        match *self {
            Var::X(i) | Var::Y(i) => i,
        }
    }
}

/// Polynomial in `n` pairs of variables with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    n: usize,
    terms: BTreeMap<Exp, BigRational>,
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, b| a * BigInt::from(b))
}

/// `e (e-1) ... (e-k+1)`.
fn falling(e: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |a, i| a * BigInt::from(e - i))
}

impl MPoly {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_PAIRS, "at most {MAX_PAIRS} variable pairs supported");
        MPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, BigRational::one())
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Exp::default(), c);
        p
    }

    pub fn var(n: usize, v: Var) -> Result<Self> {
        if v.index() >= n {
            return domain(format!("variable index {} out of range for n={n}", v.index() + 1));
        }
        let mut e = Exp::default();
        e.set(v.slot(), 1);
        let mut p = Self::zero(n);
        p.add_term(e, BigRational::one());
        Ok(p)
    }

    pub fn monomial(n: usize, xs: &[u32], ys: &[u32], c: BigRational) -> Self {
        assert!(xs.len() <= n && ys.len() <= n);
        let mut p = Self::zero(n);
        p.add_term(Exp::from_slices(xs, ys), c);
        p
    }

    pub fn from_terms(n: usize, it: impl IntoIterator<Item = (Exp, BigRational)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exp, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exp, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exp) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Largest monomial under the term order.
    pub fn leading(&self) -> Option<(&Exp, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Bidegree if all terms share one.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(|e| e.bidegree());
        let first = it.next()?;
        if it.all(|b| b == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Bihomogeneous components.
    pub fn components(&self) -> BTreeMap<(u32, u32), MPoly> {
        let mut out: BTreeMap<(u32, u32), MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e.bidegree()).or_insert_with(|| MPoly::zero(self.n)).terms.insert(*e, c.clone());
        }
        out
    }

    fn check_n(&self, o: &MPoly) -> Result<()> {
        if self.n != o.n {
            return domain(format!("variable count mismatch: {} vs {}", self.n, o.n));
        }
        Ok(())
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c);
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.n);
        }
        MPoly { n: self.n, terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero(self.n.max(o.n));
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                r.add_term(e.mul(f), c * d);
            }
        }
        r
    }

    /// `∂^k / ∂v^k`.
    pub fn diff(&self, v: Var, k: u32) -> Result<MPoly> {
        if v.index() >= self.n {
            return domain(format!("variable index {} out of range for n={}", v.index() + 1, self.n));
        }
        let slot = v.slot();
        let mut r = MPoly::zero(self.n);
        for (e, c) in &self.terms {
            let a = e.get(slot);
            if a >= k {
                let mut f = *e;
                f.set(slot, a - k);
                r.terms.insert(f, c * BigRational::from_integer(falling(a, k)));
            }
        }
        Ok(r)
    }

    /// Applies `∂^e` for a monomial exponent `e`.
    fn diff_mono(&self, m: &Exp) -> MPoly {
        let mut r = MPoly::zero(self.n);
        for (e, c) in &self.terms {
            if !m.divides(e) {
                continue;
            }
            let mut f = *e;
            let mut coef = BigInt::one();
            for k in 0..2 * MAX_PAIRS {
                let d = m.get(k);
                if d > 0 {
                    let a = e.get(k);
                    coef *= falling(a, d);
                    f.set(k, a - d);
                }
            }
            r.terms.insert(f, c * BigRational::from_integer(coef));
        }
        r
    }

    /// `P(∂_x; ∂_y) Q`.
    pub fn apply_operator(&self, q: &MPoly) -> Result<MPoly> {
        self.check_n(q)?;
        let mut r = MPoly::zero(self.n);
        for (e, c) in &self.terms {
            let d = q.diff_mono(e);
            for (f, v) in d.terms {
                r.add_term(f, v * c);
            }
        }
        Ok(r)
    }

    /// `⟨P, Q⟩ = P(∂)Q` at the origin.
    pub fn apolar(&self, q: &MPoly) -> Result<BigRational> {
        self.check_n(q)?;
        let mut acc = BigRational::zero();
        let (small, big) = if self.len() <= q.len() { (self, q) } else { (q, self) };
        for (e, c) in &small.terms {
            if let Some(d) = big.terms.get(e) {
                let mut w = BigInt::one();
                for k in 0..2 * MAX_PAIRS {
                    w *= factorial(e.get(k));
                }
                acc += c * d * BigRational::from_integer(w);
            }
        }
        Ok(acc)
    }

    /// Simultaneous substitution `x_i -> x_{σ(i)}`, `y_i -> y_{σ(i)}` (0-based σ).
    pub fn diagonal_act(&self, sigma: &[usize]) -> Result<MPoly> {
        check_perm(sigma, self.n)?;
        Ok(self.act_unchecked(sigma))
    }

    pub(crate) fn act_unchecked(&self, sigma: &[usize]) -> MPoly {
        MPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.permuted(sigma), c.clone())).collect() }
    }

    /// `D_{hk} = Σ_i ∂_{x_i}^h ∂_{y_i}^k`.
    pub fn polarize(&self, h: u32, k: u32) -> Result<MPoly> {
        if h + k == 0 {
            return domain("polarization needs h+k >= 1");
        }
        let mut r = MPoly::zero(self.n);
        for i in 0..self.n {
            let mut m = Exp::default();
            m.set(i, h);
            m.set(MAX_PAIRS + i, k);
            for (f, v) in self.diff_mono(&m).terms {
                r.add_term(f, v);
            }
        }
        Ok(r)
    }

    /// Sets `x_i = y_i = 0` for one index.
    pub fn kill_pair(&self, i: usize) -> MPoly {
        MPoly {
            n: self.n,
            terms: self.terms.iter().filter(|(e, _)| e.x(i) == 0 && e.y(i) == 0).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// Reinterprets in `n` pairs; the dropped variables must not occur.
    pub fn with_pairs(&self, n: usize) -> Result<MPoly> {
        for e in self.terms.keys() {
            if (n..self.n).any(|i| e.x(i) > 0 || e.y(i) > 0) {
                return domain("polynomial uses a dropped variable");
            }
        }
        Ok(MPoly { n, terms: self.terms.clone() })
    }

    /// Multiplies by `c` so the leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }
}

pub(crate) fn check_perm(sigma: &[usize], n: usize) -> Result<()> {
    if sigma.len() != n {
        return domain(format!("permutation has length {}, expected {n}", sigma.len()));
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return domain(format!("{sigma:?} is not a permutation"));
        }
        seen[s] = true;
    }
    Ok(())
}

/// Sign of a permutation (0-based images).
pub fn perm_sign(sigma: &[usize]) -> i32 {
    let mut seen = vec![false; sigma.len()];
    let mut sign = 1;
    for i in 0..sigma.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = sigma[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn fmt_rat(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MPoly {
    /// Terms from the largest monomial down, e.g. `3*x1^2*y2 - 1/2*y1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mut vars = Vec::new();
            for (name, base) in [("x", 0), ("y", MAX_PAIRS)] {
                for i in 0..self.n {
                    match e.get(base + i) {
                        0 => {}
                        1 => vars.push(format!("{name}{}", i + 1)),
                        p => vars.push(format!("{name}{}^{p}", i + 1)),
                    }
                }
            }
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let body = if vars.is_empty() {
                fmt_rat(&abs)
            } else if abs.is_one() {
                vars.join("*")
            } else {
                format!("{}*{}", fmt_rat(&abs), vars.join("*"))
            };
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses the printed form back, for `n` variable pairs.
pub fn parse_mpoly(s: &str, n: usize) -> Result<MPoly> {
    let perr = |m: String| Error::Parse(m);
    let mut p = MPoly::zero(n);
    let s = s.trim();
    if s == "0" {
        return Ok(p);
    }
    // split into signed terms on top-level " + " / " - " and a leading "-"
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut neg = false;
    let mut cur = String::new();
    let toks: Vec<&str> = s.split_whitespace().collect();
    for (k, tok) in toks.iter().enumerate() {
        match *tok {
            "+" | "-" if k > 0 => {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = *tok == "-";
            }
            _ => {
                let t = if k == 0 && tok.starts_with('-') {
                    neg = true;
                    &tok[1..]
                } else {
                    tok
                };
                cur.push_str(t);
            }
        }
    }
    terms.push((neg, cur));
    for (neg, body) in terms {
        let mut coef = BigRational::one();
        let mut e = Exp::default();
        for f in body.split('*') {
            if let Some(rest) = f.strip_prefix('x').or_else(|| f.strip_prefix('y')) {
                let base = if f.starts_with('x') { 0 } else { MAX_PAIRS };
                let (idx, pow) = match rest.split_once('^') {
                    Some((a, b)) => (a, b.parse::<u32>().map_err(|e| perr(e.to_string()))?),
                    None => (rest, 1),
                };
                let i: usize = idx.parse().map_err(|_| perr(format!("bad variable {f:?}")))?;
                if i == 0 || i > n {
                    return Err(perr(format!("variable {f} out of range")));
                }
                e.set(base + i - 1, e.get(base + i - 1) + pow);
            } else {
                let c = match f.split_once('/') {
                    Some((a, b)) => BigRational::new(
                        a.parse::<BigInt>().map_err(|e| perr(e.to_string()))?,
                        b.parse::<BigInt>().map_err(|e| perr(e.to_string()))?,
                    ),
                    None => BigRational::from_integer(f.parse::<BigInt>().map_err(|e| perr(format!("{f:?}: {e}")))?),
                };
                coef *= c;
            }
        }
        if neg {
            coef = -coef;
        }
        p.add_term(e, coef);
    }
    Ok(p)
}
