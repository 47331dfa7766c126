//! GCD and exact division in Z[t] and Z[t][q], via primitive remainder sequences.

use super::poly::QTPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

type U = Vec<BigInt>;
type B = Vec<U>;

// ---- Z[t] ----

fn u_trim(a: &mut U) {
    while a.last().map_or(false, |c| c.is_zero()) {
        a.pop();
    }
}

fn u_is_zero(a: &U) -> bool {
    a.is_empty()
}

fn u_sub(a: &U, b: &U) -> U {
    let mut r = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        r[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        r[i] -= c;
    }
    u_trim(&mut r);
    r
}

fn u_mul(a: &U, b: &U) -> U {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, d) in b.iter().enumerate() {
            r[i + j] += c * d;
        }
    }
    u_trim(&mut r);
    r
}

fn u_content(a: &U) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn u_div_int(a: &U, c: &BigInt) -> U {
    a.iter().map(|x| x / c).collect()
}

/// Exact division in Z[t]; `None` when `b` does not divide `a`.
fn u_divexact(a: &U, b: &U) -> Option<U> {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut quo = vec![BigInt::zero(); a.len() - db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let (qc, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &qc * c;
        }
        quo[shift] = qc;
        u_trim(&mut r);
    }
    if r.is_empty() {
        u_trim(&mut quo);
        Some(quo)
    } else {
        None
    }
}

fn u_prem(a: &U, b: &U) -> U {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &lr * c;
        }
        u_trim(&mut r);
    }
    r
}

fn u_primitive(a: &U) -> U {
    let c = u_content(a);
    let mut r = u_div_int(a, &c);
    if r.last().map_or(false, |x| x.is_negative()) {
        for x in r.iter_mut() {
            *x = -x.clone();
        }
    }
    r
}

/// GCD in Z[t], normalized with positive leading coefficient.
fn u_gcd(a: &U, b: &U) -> U {
    if u_is_zero(a) {
        return if u_is_zero(b) { Vec::new() } else { normalize_u(b) };
    }
    if u_is_zero(b) {
        return normalize_u(a);
    }
    let c = u_content(a).gcd(&u_content(b));
    let (mut x, mut y) = (u_primitive(a), u_primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        if y.len() == 1 {
            return vec![c];
        }
        let r = u_prem(&x, &y);
        if r.is_empty() {
            let mut g = u_primitive(&y);
            for v in g.iter_mut() {
                *v *= &c;
            }
            return g;
        }
        x = y;
        y = u_primitive(&r);
    }
}

fn normalize_u(a: &U) -> U {
    if a.last().map_or(false, |x| x.is_negative()) {
        a.iter().map(|x| -x).collect()
    } else {
        a.clone()
    }
}

// ---- Z[t][q] ----

fn b_trim(a: &mut B) {
    while a.last().map_or(false, |c| c.is_empty()) {
        a.pop();
    }
}

fn b_content(a: &B) -> U {
    let mut g: U = Vec::new();
    for c in a {
        if c.is_empty() {
            continue;
        }
        g = u_gcd(&g, c);
        if g.len() == 1 && g[0].is_one() {
            break;
        }
    }
    g
}

fn b_div_u(a: &B, c: &U) -> B {
    a.iter()
        .map(|x| if x.is_empty() { Vec::new() } else { u_divexact(x, c).expect("content divides") })
        .collect()
}

fn b_primitive(a: &B) -> B {
    let c = b_content(a);
    b_div_u(a, &c)
}

fn b_prem(a: &B, b: &B) -> B {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = u_mul(c, &lb);
        }
        for (i, c) in b.iter().enumerate() {
            let prod = u_mul(&lr, c);
            r[i + shift] = u_sub(&r[i + shift], &prod);
        }
        b_trim(&mut r);
    }
    r
}

fn b_divexact(a: &B, b: &B) -> Option<B> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut quo: B = vec![Vec::new(); a.len() - db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let qc = u_divexact(&r[dr], lb)?;
        let shift = dr - db;
        for (i, c) in b.iter().enumerate() {
            let prod = u_mul(&qc, c);
            r[i + shift] = u_sub(&r[i + shift], &prod);
        }
        quo[shift] = qc;
        b_trim(&mut r);
    }
    if r.is_empty() {
        b_trim(&mut quo);
        Some(quo)
    } else {
        None
    }
}

fn b_gcd(a: &B, b: &B) -> B {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let c = u_gcd(&b_content(a), &b_content(b));
    let (mut x, mut y) = (b_primitive(a), b_primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        if y.len() == 1 {
            return vec![c];
        }
        let r = b_prem(&x, &y);
        if r.is_empty() {
            let g = b_primitive(&y);
            return g.iter().map(|v| u_mul(v, &c)).collect();
        }
        x = y;
        y = b_primitive(&r);
    }
}

fn to_b(p: &QTPoly) -> B {
    let mut d = p.to_dense();
    for row in d.iter_mut() {
        u_trim(row);
    }
    b_trim(&mut d);
    d
}

/// GCD of two polynomials in Z[q,t] (sign not normalized).
pub fn gcd(a: &QTPoly, b: &QTPoly) -> QTPoly {
    QTPoly::from_dense(&b_gcd(&to_b(a), &to_b(b)))
}

/// Exact quotient `a / b` in Z[q,t], or `None` if `b` does not divide `a`.
pub fn div_exact(a: &QTPoly, b: &QTPoly) -> Option<QTPoly> {
    if b.is_zero() {
        return None;
    }
    if let Some(c) = b.as_constant() {
        let mut ok = true;
        for (_, v) in a.terms() {
            if !(v % &c).is_zero() {
                ok = false;
                break;
            }
        }
        return if ok { Some(a.div_int(&c)) } else { None };
    }
    b_divexact(&to_b(a), &to_b(b)).map(|d| QTPoly::from_dense(&d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[((u32, u32), i64)]) -> QTPoly {
        QTPoly::from_terms(terms.iter().map(|&(k, c)| (k, BigInt::from(c))))
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[((1, 0), 1), ((0, 1), -1)]); // q - t
        let b = p(&[((2, 0), 1), ((0, 0), -1)]); // q^2 - 1
        let c = p(&[((0, 3), 2), ((1, 1), 1), ((0, 0), 7)]);
        let g = gcd(&a.mul(&b).mul(&c), &a.mul(&c).mul(&p(&[((0, 1), 1), ((0, 0), 1)])));
        let expected = a.mul(&c);
        assert!(g == expected || g == expected.neg(), "{g}");
    }

    #[test]
    fn gcd_coprime_and_integer_content() {
        let a = p(&[((1, 0), 6), ((0, 0), 4)]);
        let b = p(&[((0, 1), 9), ((0, 0), 3)]);
        let g = gcd(&a, &b);
        assert_eq!(g.as_constant().map(|c| c.abs()), Some(BigInt::from(1)));
        let g2 = gcd(&a, &a.scale(&BigInt::from(3)));
        assert!(g2 == a || g2 == a.neg());
    }

    #[test]
    fn exact_division() {
        let a = p(&[((1, 0), 1), ((0, 1), -1)]);
        let b = p(&[((1, 1), 3), ((0, 0), 1)]);
        let prod = a.mul(&b);
        assert_eq!(div_exact(&prod, &a), Some(b.clone()));
        assert_eq!(div_exact(&b, &a), None);
    }
}
