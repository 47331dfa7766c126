//! Exact sparse linear algebra on polynomials viewed as coefficient vectors.

use crate::exactpoly::{Exp, MPoly};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Reduced row-echelon basis; each row has coefficient 1 at its pivot (its
/// largest monomial) and 0 at every other row's pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    n: usize,
    rows: Vec<MPoly>,
    pivots: BTreeMap<Exp, usize>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon { n, rows: Vec::new(), pivots: BTreeMap::new() }
    }

    pub fn from_polys<'a>(n: usize, it: impl IntoIterator<Item = &'a MPoly>) -> Self {
        let mut e = Echelon::new(n);
        for p in it {
            e.insert(p);
        }
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[MPoly] {
        &self.rows
    }

    /// Pivot monomial of each row, in row order.
    pub fn pivot_of(&self, k: usize) -> Exp {
        *self.rows[k].leading().expect("rows are nonzero").0
    }

    /// Rows sorted by pivot, largest first (a canonical order).
    pub fn sorted_rows(&self) -> Vec<&MPoly> {
        self.pivots.iter().rev().map(|(_, &k)| &self.rows[k]).collect()
    }

    /// Remainder of `v` modulo the span.
    pub fn reduce(&self, v: &MPoly) -> MPoly {
        let mut r = v.clone();
        for (e, c) in v.terms() {
            if let Some(&k) = self.pivots.get(e) {
                r = r.sub(&self.rows[k].scale(c));
            }
        }
        r
    }

    pub fn contains(&self, v: &MPoly) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` (assumed in the span) with respect to the rows.
    pub fn coords(&self, v: &MPoly) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.rows.len()];
        for (e, &k) in &self.pivots {
            out[k] = v.coeff(e);
        }
        out
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &MPoly) -> bool {
        let r = self.reduce(v);
        self.insert_reduced(r)
    }

    fn insert_reduced(&mut self, r: MPoly) -> bool {
        let Some((&p, c)) = r.leading() else {
            return false;
        };
        let r = if c.is_one() { r } else { r.scale(&c.recip()) };
        for row in self.rows.iter_mut() {
            let c = row.coeff(&p);
            if !c.is_zero() {
                *row = row.sub(&r.scale(&c));
            }
        }
        self.pivots.insert(p, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn is_subspace_of(&self, other: &Echelon) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Sum of two spans.
    pub fn sum(&self, other: &Echelon) -> Echelon {
        let mut e = self.clone();
        for r in &other.rows {
            e.insert(r);
        }
        e
    }

    /// Intersection of two spans.
    pub fn intersect(&self, other: &Echelon) -> Echelon {
        let (small, big) = if self.dim() <= other.dim() { (self, other) } else { (other, self) };
        let residues: Vec<MPoly> = small.rows.iter().map(|r| big.reduce(r)).collect();
        let mut out = Echelon::new(self.n);
        for combo in kernel_of_images(&residues) {
            out.insert(&combine(&small.rows, &combo));
        }
        out
    }

    /// Elements of `self` orthogonal to every row of `sub` under the pairing.
    pub fn perp_within(&self, sub: &Echelon, pair: impl Fn(&MPoly, &MPoly) -> BigRational) -> Echelon {
        if sub.is_empty() {
            return self.clone();
        }
        let gram: Vec<Vec<BigRational>> =
            sub.rows.iter().map(|s| self.rows.iter().map(|a| pair(a, s)).collect()).collect();
        let mut out = Echelon::new(self.n);
        for combo in dense_nullspace(&gram, self.rows.len()) {
            out.insert(&combine(&self.rows, &combo));
        }
        out
    }

    /// Kernel of a linear map given on the rows.
    pub fn kernel(&self, map: impl Fn(&MPoly) -> MPoly) -> Echelon {
        let images: Vec<MPoly> = self.rows.iter().map(&map).collect();
        let mut out = Echelon::new(self.n);
        for combo in kernel_of_images(&images) {
            out.insert(&combine(&self.rows, &combo));
        }
        out
    }
}

/// `Σ c_i v_i`.
pub fn combine(vs: &[MPoly], cs: &[BigRational]) -> MPoly {
    let n = vs.first().map_or(0, |v| v.n());
    let mut acc = MPoly::zero(n);
    for (v, c) in vs.iter().zip(cs) {
        if !c.is_zero() {
            acc = acc.add(&v.scale(c));
        }
    }
    acc
}

/// Basis of `{c : Σ c_i w_i = 0}`.
pub fn kernel_of_images(ws: &[MPoly]) -> Vec<Vec<BigRational>> {
    let k = ws.len();
    // rows carry their combination tags
    let mut rows: Vec<(MPoly, Vec<BigRational>)> = Vec::new();
    let mut pivots: BTreeMap<Exp, usize> = BTreeMap::new();
    let mut out = Vec::new();
    for (i, w) in ws.iter().enumerate() {
        let mut v = w.clone();
        let mut tag = vec![BigRational::zero(); k];
        tag[i] = BigRational::one();
        loop {
            let hit = v.terms().rev().find_map(|(e, c)| pivots.get(e).map(|&r| (r, c.clone())));
            let Some((r, c)) = hit else { break };
            v = v.sub(&rows[r].0.scale(&c));
            for (t, s) in tag.iter_mut().zip(&rows[r].1) {
                if !s.is_zero() {
                    *t -= &c * s;
                }
            }
        }
        match v.leading() {
            None => out.push(tag),
            Some((&p, c)) => {
                let inv = c.recip();
                let v = v.scale(&inv);
                let tag = tag.into_iter().map(|t| t * &inv).collect();
                pivots.insert(p, rows.len());
                rows.push((v, tag));
            }
        }
    }
    out
}

/// Nullspace of a dense `m × k` matrix over Q.
pub fn dense_nullspace(a: &[Vec<BigRational>], k: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = a.to_vec();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let prow = m[row].clone();
                for (v, pv) in m[r].iter_mut().zip(prow.iter()) {
                    *v -= &f * pv;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); k];
            v[f] = BigRational::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Rank of a dense matrix over Q.
pub fn dense_rank(a: &[Vec<BigRational>]) -> usize {
    let k = a.first().map_or(0, |r| r.len());
    k - dense_nullspace(a, k).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::Var;

    fn x(i: usize) -> MPoly {
        MPoly::var(2, Var::X(i)).unwrap()
    }

    fn y(i: usize) -> MPoly {
        MPoly::var(2, Var::Y(i)).unwrap()
    }

    #[test]
    fn echelon_basics() {
        let mut e = Echelon::new(2);
        assert!(e.insert(&x(0).add(&x(1))));
        assert!(e.insert(&x(0)));
        assert!(!e.insert(&x(1)));
        assert_eq!(e.dim(), 2);
        assert!(e.contains(&x(1).scale(&BigRational::from_integer(3.into()))));
        assert!(!e.contains(&y(0)));
    }

    #[test]
    fn intersect_and_perp() {
        let a = Echelon::from_polys(2, [&x(0), &y(0)]);
        let b = Echelon::from_polys(2, [&x(0).add(&y(0)), &x(1)]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&x(0).add(&y(0))));
        let p = a.perp_within(&a, |u, v| u.apolar(v).unwrap());
        assert!(p.is_empty());
        let p = a.perp_within(&Echelon::from_polys(2, [&x(0)]), |u, v| u.apolar(v).unwrap());
        assert_eq!(p.dim(), 1);
        assert!(p.contains(&y(0)));
    }

    #[test]
    fn kernels() {
        let e = Echelon::from_polys(2, [&x(0), &x(1), &y(0)]);
        let k = e.kernel(|p| p.polarize(1, 0).unwrap());
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&x(0).sub(&x(1))));
        assert!(k.contains(&y(0)));
        let r = |v: i64| BigRational::from_integer(v.into());
        assert_eq!(dense_rank(&[vec![r(1), r(2)], vec![r(2), r(4)]]), 1);
    }
}
