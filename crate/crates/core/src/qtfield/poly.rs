//! Integer polynomials in q and t.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::collections::HashMap;

/// Sparse polynomial in `q`, `t` with integer coefficients.
///
/// Keys are `(q exponent, t exponent)`. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QTPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

/// Print order: larger total degree first, then larger q exponent.
pub(crate) fn term_order(a: &(u32, u32), b: &(u32, u32)) -> Ordering {
    (a.0 + a.1, a.0).cmp(&(b.0 + b.1, b.0))
}

impl QTPoly {
    pub fn zero() -> Self {
        QTPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn monomial(qe: u32, te: u32, c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(qe, te, c);
        p
    }

    pub fn q() -> Self {
        Self::monomial(1, 0, BigInt::one())
    }

    pub fn t() -> Self {
        Self::monomial(0, 1, BigInt::one())
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), BigInt)>>(it: I) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in it {
            p.add_term(a, b, c);
        }
        p
    }

    pub fn add_term(&mut self, qe: u32, te: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = (qe, te);
        let remove = match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                v.is_zero()
            }
            None => {
                self.terms.insert(key, c);
                false
            }
        };
        if remove {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).map_or(false, |c| c.is_one())
    }

    /// Returns the constant coefficient when the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, qe: u32, te: u32) -> BigInt {
        self.terms.get(&(qe, te)).cloned().unwrap_or_default()
    }

    pub fn deg_q(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_t(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Leading term under the print order.
    pub fn leading(&self) -> Option<(&(u32, u32), &BigInt)> {
        self.terms.iter().max_by(|a, b| term_order(a.0, b.0))
    }

    /// Componentwise minimum of exponents (the largest monomial dividing every term).
    pub fn min_exponents(&self) -> (u32, u32) {
        let mut it = self.terms.keys();
        match it.next() {
            None => (0, 0),
            Some(&(a, b)) => it.fold((a, b), |(x, y), &(c, d)| (x.min(c), y.min(d))),
        }
    }

    /// Multiplies by `q^a t^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        QTPoly {
            terms: self.terms.iter().map(|(&(x, y), c)| ((x + a, y + b), c.clone())).collect(),
        }
    }

    /// Divides by `q^a t^b`; caller guarantees divisibility.
    pub fn unshift(&self, a: u32, b: u32) -> Self {
        QTPoly {
            terms: self.terms.iter().map(|(&(x, y), c)| ((x - a, y - b), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QTPoly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Exact division of every coefficient by an integer.
    pub fn div_int(&self, c: &BigInt) -> Self {
        QTPoly { terms: self.terms.iter().map(|(k, v)| (*k, v / c)).collect() }
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for v in self.terms.values() {
            g = num_integer::Integer::gcd(&g, v);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn neg(&self) -> Self {
        QTPoly { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (&(a, b), c) in &other.terms {
            r.add_term(a, b, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (&(a, b), c) in &other.terms {
            r.add_term(a, b, -c);
        }
        r
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut acc: HashMap<(u32, u32), BigInt> = HashMap::new();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &other.terms {
                *acc.entry((a + x, b + y)).or_default() += c * d;
            }
        }
        QTPoly { terms: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Swaps the roles of q and t.
    pub fn swap(&self) -> Self {
        QTPoly { terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect() }
    }

    /// `q^{deg_q} t^{deg_t} P(1/q, 1/t)`.
    pub fn reverse(&self) -> Self {
        let (dq, dt) = (self.deg_q(), self.deg_t());
        QTPoly { terms: self.terms.iter().map(|(&(a, b), c)| ((dq - a, dt - b), c.clone())).collect() }
    }

    pub fn eval(&self, q0: &BigRational, t0: &BigRational) -> BigRational {
        let mut qp: HashMap<u32, BigRational> = HashMap::new();
        let mut tp: HashMap<u32, BigRational> = HashMap::new();
        let mut acc = BigRational::zero();
        for (&(a, b), c) in &self.terms {
            let qa = qp.entry(a).or_insert_with(|| pow_rat(q0, a)).clone();
            let tb = tp.entry(b).or_insert_with(|| pow_rat(t0, b)).clone();
            acc += BigRational::from_integer(c.clone()) * qa * tb;
        }
        acc
    }

    /// Dense form indexed `[q exponent][t exponent]`.
    pub(crate) fn to_dense(&self) -> Vec<Vec<BigInt>> {
        if self.is_zero() {
            return Vec::new();
        }
        let dq = self.deg_q() as usize;
        let mut out: Vec<Vec<BigInt>> = vec![Vec::new(); dq + 1];
        for (&(a, b), c) in &self.terms {
            let row = &mut out[a as usize];
            if row.len() <= b as usize {
                row.resize(b as usize + 1, BigInt::zero());
            }
            row[b as usize] = c.clone();
        }
        out
    }

    pub(crate) fn from_dense(d: &[Vec<BigInt>]) -> Self {
        let mut p = Self::zero();
        for (a, row) in d.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    p.terms.insert((a as u32, b as u32), c.clone());
                }
            }
        }
        p
    }

    /// Sign of the leading coefficient under the print order.
    pub fn leading_sign_negative(&self) -> bool {
        self.leading().map_or(false, |(_, c)| c.is_negative())
    }

    pub fn fmt_poly(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|a, b| term_order(b, a));
        let mut s = String::new();
        for (i, k) in keys.iter().enumerate() {
            let c = &self.terms[k];
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let mono = mono_str(k.0, k.1);
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&abs.to_string());
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }
}

fn mono_str(a: u32, b: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let qs = part("q", a);
    let ts = part("t", b);
    match (qs.is_empty(), ts.is_empty()) {
        (true, _) => ts,
        (_, true) => qs,
        _ => format!("{qs}*{ts}"),
    }
}

pub(crate) fn pow_rat(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow::pow(x.clone(), e as usize)
}

impl std::fmt::Debug for QTPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.fmt_poly())
    }
}

impl std::fmt::Display for QTPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.fmt_poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[((u32, u32), i64)]) -> QTPoly {
        QTPoly::from_terms(terms.iter().map(|&(k, c)| (k, BigInt::from(c))))
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[((1, 0), 1), ((0, 1), -1)]);
        let b = p(&[((1, 0), 1), ((0, 1), 1)]);
        let prod = a.mul(&b);
        assert_eq!(prod, p(&[((2, 0), 1), ((0, 2), -1)]));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.pow(2), a.mul(&a));
    }

    #[test]
    fn print_order() {
        let a = p(&[((0, 2), 1), ((1, 0), -1)]);
        assert_eq!(a.fmt_poly(), "t^2-q");
        let b = p(&[((1, 0), 1), ((0, 1), 1)]);
        assert_eq!(b.fmt_poly(), "q+t");
        assert_eq!(p(&[((2, 1), 3), ((0, 0), -2)]).fmt_poly(), "3*q^2*t-2");
    }

    #[test]
    fn reverse_and_swap() {
        let a = p(&[((2, 0), 1), ((0, 1), 5)]);
        assert_eq!(a.swap().swap(), a);
        assert_eq!(a.reverse(), p(&[((0, 1), 1), ((2, 0), 5)]));
    }
}
