//! The field Q(q,t) with a unique canonical form.

use super::gcd;
use super::poly::QTPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Laurent monomial `q^q t^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono {
    pub q: i64,
    pub t: i64,
}

impl Mono {
    pub const ONE: Mono = Mono { q: 0, t: 0 };

    pub fn new(q: i64, t: i64) -> Self {
        Mono { q, t }
    }

    pub fn q_pow(e: i64) -> Self {
        Mono { q: e, t: 0 }
    }

    pub fn t_pow(e: i64) -> Self {
        Mono { q: 0, t: e }
    }

    pub fn inv(self) -> Self {
        Mono { q: -self.q, t: -self.t }
    }

    pub fn pow(self, e: i64) -> Self {
        Mono { q: self.q * e, t: self.t * e }
    }

    pub fn swap(self) -> Self {
        Mono { q: self.t, t: self.q }
    }

    pub fn to_scalar(self) -> QTScalar {
        QTScalar::mono(self.q, self.t)
    }
}

impl Mul for Mono {
    type Output = Mono;
    fn mul(self, o: Mono) -> Mono {
        Mono { q: self.q + o.q, t: self.t + o.t }
    }
}

impl Div for Mono {
    type Output = Mono;
    fn div(self, o: Mono) -> Mono {
        Mono { q: self.q - o.q, t: self.t - o.t }
    }
}

impl std::fmt::Display for Mono {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_scalar())
    }
}

/// Substitution rules for [`QTScalar::substitute`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subst {
    /// (q,t) -> (1/q, 1/t)
    Invert,
    /// (q,t) -> (t,q)
    Swap,
}

/// Element of Q(q,t) stored as `num/den` in lowest terms over Z[q,t].
///
/// The denominator's leading coefficient (largest total degree, then largest
/// q exponent) is positive, so equal field elements are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QTScalar {
    num: QTPoly,
    den: QTPoly,
}

impl Default for QTScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl QTScalar {
    pub fn zero() -> Self {
        QTScalar { num: QTPoly::zero(), den: QTPoly::one() }
    }

    pub fn one() -> Self {
        QTScalar { num: QTPoly::one(), den: QTPoly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        QTScalar { num: QTPoly::constant(BigInt::from(c)), den: QTPoly::one() }
    }

    pub fn from_bigint(c: BigInt) -> Self {
        QTScalar { num: QTPoly::constant(c), den: QTPoly::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::normalize(QTPoly::constant(r.numer().clone()), QTPoly::constant(r.denom().clone()))
            .expect("rational has nonzero denominator")
    }

    pub fn from_poly(p: QTPoly) -> Self {
        QTScalar { num: p, den: QTPoly::one() }
    }

    pub fn q() -> Self {
        Self::mono(1, 0)
    }

    pub fn t() -> Self {
        Self::mono(0, 1)
    }

    /// `q^a t^b` for arbitrary integer exponents.
    pub fn mono(a: i64, b: i64) -> Self {
        let (nq, dq) = if a >= 0 { (a as u32, 0) } else { (0, (-a) as u32) };
        let (nt, dt) = if b >= 0 { (b as u32, 0) } else { (0, (-b) as u32) };
        QTScalar {
            num: QTPoly::monomial(nq, nt, BigInt::one()),
            den: QTPoly::monomial(dq, dt, BigInt::one()),
        }
    }

    pub fn num(&self) -> &QTPoly {
        &self.num
    }

    pub fn den(&self) -> &QTPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Canonical form of `num/den`.
    pub fn normalize(num: QTPoly, den: QTPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        // strip the common monomial factor
        let (na, nb) = num.min_exponents();
        let (da, db) = den.min_exponents();
        let (ma, mb) = (na.min(da), nb.min(db));
        let (mut num, mut den) = if ma > 0 || mb > 0 {
            (num.unshift(ma, mb), den.unshift(ma, mb))
        } else {
            (num, den)
        };
        if den.len() == 1 || num.len() == 1 {
            // one side is a monomial: only integer content and monomials can be shared
            let (na, nb) = num.min_exponents();
            let (da, db) = den.min_exponents();
            let (ma, mb) = (na.min(da), nb.min(db));
            if ma > 0 || mb > 0 {
                num = num.unshift(ma, mb);
                den = den.unshift(ma, mb);
            }
            let g = num_integer::Integer::gcd(&num.content(), &den.content());
            if !g.is_one() {
                num = num.div_int(&g);
                den = den.div_int(&g);
            }
        } else {
            let g = gcd::gcd(&num, &den);
            if !(g.as_constant().map_or(false, |c| c.abs().is_one())) {
                num = gcd::div_exact(&num, &g).ok_or_else(|| Error::Internal("gcd does not divide".into()))?;
                den = gcd::div_exact(&den, &g).ok_or_else(|| Error::Internal("gcd does not divide".into()))?;
            }
        }
        if den.leading_sign_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(QTScalar { num, den })
    }

    fn from_parts(num: QTPoly, den: QTPoly) -> Self {
        Self::normalize(num, den).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Self::normalize(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        Ok(QTScalar { num: self.num.pow(e as u32), den: self.den.pow(e as u32) }.renormalized())
    }

    fn renormalized(self) -> Self {
        // powers and sign flips of a canonical pair stay coprime; only fix the sign.
        let QTScalar { num, den } = self;
        if den.leading_sign_negative() {
            QTScalar { num: num.neg(), den: den.neg() }
        } else {
            QTScalar { num, den }
        }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::from_parts(self.num.add(&o.num), self.den.clone());
        }
        if o.den.is_one() {
            return Self::from_parts(self.num.add(&o.num.mul(&self.den)), self.den.clone());
        }
        if self.den.is_one() {
            return Self::from_parts(self.num.mul(&o.den).add(&o.num), o.den.clone());
        }
        Self::from_parts(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg_ref(&self) -> Self {
        QTScalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        Self::from_parts(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div_ref(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::from_parts(self.num.mul(&o.den), self.den.mul(&o.num)))
    }

    pub fn mul_mono(&self, m: Mono) -> Self {
        self.mul_ref(&m.to_scalar())
    }

    /// Applies (q,t) -> (1/q,1/t) or (q,t) -> (t,q).
    pub fn substitute(&self, rule: Subst) -> Self {
        match rule {
            Subst::Swap => Self::from_parts(self.num.swap(), self.den.swap()),
            Subst::Invert => {
                // P(1/q,1/t) = q^{-dq} t^{-dt} rev(P)
                let (nq, nt) = (self.num.deg_q() as i64, self.num.deg_t() as i64);
                let (dq, dt) = (self.den.deg_q() as i64, self.den.deg_t() as i64);
                let ratio = QTScalar::from_parts(self.num.reverse(), self.den.reverse());
                ratio.mul_ref(&QTScalar::mono(dq - nq, dt - nt))
            }
        }
    }

    /// Substitutes `q -> qi`, `t -> ti` for Laurent monomials `qi`, `ti`.
    pub fn subst_monomials(&self, qi: Mono, ti: Mono) -> Self {
        let ev = |p: &QTPoly| -> QTScalar {
            let mut acc = QTScalar::zero();
            for (&(a, b), c) in p.terms() {
                let m = qi.pow(a as i64) * ti.pow(b as i64);
                acc = acc.add_ref(&QTScalar::from_bigint(c.clone()).mul_mono(m));
            }
            acc
        };
        ev(&self.num).div_ref(&ev(&self.den)).expect("monomial substitution keeps denominator nonzero")
    }

    /// Exact value at a rational point; refuses poles.
    pub fn eval_at(&self, q0: &BigRational, t0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q0, t0);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(q0, t0) / d)
    }

    /// Value when the element is a rational constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    pub fn fmt_scalar(&self) -> String {
        let wrap = |p: &QTPoly| {
            if p.len() > 1 {
                format!("({})", p.fmt_poly())
            } else {
                p.fmt_poly()
            }
        };
        if self.den.is_one() {
            return self.num.fmt_poly();
        }
        let den = self.den.fmt_poly();
        // `1/2*t` would read back as `t/2`
        let den = if self.den.len() > 1 || den.contains('*') { format!("({den})") } else { den };
        format!("{}/{}", wrap(&self.num), den)
    }
}

impl std::fmt::Display for QTScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.fmt_scalar())
    }
}

impl std::fmt::Debug for QTScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.fmt_scalar())
    }
}

impl std::str::FromStr for QTScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_scalar(s)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:ident) => {
        impl $tr<&QTScalar> for &QTScalar {
            type Output = QTScalar;
            fn $m(self, o: &QTScalar) -> QTScalar {
                self.$body(o)
            }
        }
        impl $tr<QTScalar> for QTScalar {
            type Output = QTScalar;
            fn $m(self, o: QTScalar) -> QTScalar {
                self.$body(&o)
            }
        }
        impl $tr<&QTScalar> for QTScalar {
            type Output = QTScalar;
            fn $m(self, o: &QTScalar) -> QTScalar {
                self.$body(o)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Div<&QTScalar> for &QTScalar {
    type Output = QTScalar;
    fn div(self, o: &QTScalar) -> QTScalar {
        self.div_ref(o).expect("division by zero in Q(q,t)")
    }
}

impl Div<QTScalar> for QTScalar {
    type Output = QTScalar;
    fn div(self, o: QTScalar) -> QTScalar {
        self.div_ref(&o).expect("division by zero in Q(q,t)")
    }
}

impl Neg for QTScalar {
    type Output = QTScalar;
    fn neg(self) -> QTScalar {
        self.neg_ref()
    }
}

impl Neg for &QTScalar {
    type Output = QTScalar;
    fn neg(self) -> QTScalar {
        self.neg_ref()
    }
}

impl From<i64> for QTScalar {
    fn from(c: i64) -> Self {
        QTScalar::from_int(c)
    }
}

impl From<Mono> for QTScalar {
    fn from(m: Mono) -> Self {
        m.to_scalar()
    }
}

impl std::iter::Sum for QTScalar {
    fn sum<I: Iterator<Item = QTScalar>>(iter: I) -> Self {
        iter.fold(QTScalar::zero(), |a, b| a.add_ref(&b))
    }
}

impl std::iter::Product for QTScalar {
    fn product<I: Iterator<Item = QTScalar>>(iter: I) -> Self {
        iter.fold(QTScalar::one(), |a, b| a.mul_ref(&b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> QTScalar {
        x.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(s("(1-q^2)/(1-q)"), s("1+q"));
        let z = QTScalar::normalize(QTPoly::zero(), QTPoly::t().scale(&BigInt::from(7))).unwrap();
        assert_eq!(z, QTScalar::zero());
        assert_eq!(z.den(), &QTPoly::one());
        assert_eq!(s("(t-q)*(1-t)/(q-t)"), s("t-1"));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(QTScalar::normalize(QTPoly::one(), QTPoly::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn substitutions() {
        assert_eq!(QTScalar::q().substitute(Subst::Invert), QTScalar::mono(-1, 0));
        let f = s("(1-q)/(1-t)");
        assert_eq!(f.substitute(Subst::Invert), s("t*(1-q)/(q*(1-t))"));
        assert_eq!(s("t^2/q").substitute(Subst::Swap), s("q^2/t"));
        assert_eq!(f.substitute(Subst::Invert).substitute(Subst::Invert), f);
    }

    #[test]
    fn evaluation() {
        let one = BigRational::one();
        assert_eq!(s("(1-q^2)/(1-q)").eval_at(&one, &one).unwrap(), BigRational::from_integer(2.into()));
        assert_eq!(s("(t-q)/(1-q)").eval_at(&one, &one), Err(Error::Pole));
        assert_eq!(s("q*t").eval_at(&one, &one).unwrap(), one);
    }

    #[test]
    fn monomial_substitution() {
        let f = s("(q-t)/(1+q*t)");
        let g = f.subst_monomials(Mono::q_pow(1), Mono::q_pow(-1));
        assert_eq!(g, s("(q^2-1)/(2*q)"));
    }
}
