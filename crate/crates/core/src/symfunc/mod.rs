//! Symmetric functions of a fixed degree with coefficients in Q(q,t).

mod htilde;
mod tables;

pub use htilde::{
    degree_cap, g_table, htilde, htilde_table, kostka_qt, nabla, nabla_inverse, product_in_htilde, set_cache_dir, set_degree_cap, to_htilde,
    HtildeTable,
};
pub use tables::{invert_rational, kostka_number, mn_character, tables, Tables};

use crate::diagrams::Partition;
use crate::error::{domain, Error, Result};
use crate::qtfield::{QTScalar, Subst};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    M,
    E,
    H,
    P,
    S,
    Htilde,
}

impl Basis {
    pub fn tag(&self) -> &'static str {
        match self {
            Basis::M => "m",
            Basis::E => "e",
            Basis::H => "h",
            Basis::P => "p",
            Basis::S => "s",
            Basis::Htilde => "H",
        }
    }

    pub fn from_tag(s: &str) -> Result<Basis> {
        Ok(match s {
            "m" => Basis::M,
            "e" => Basis::E,
            "h" => Basis::H,
            "p" => Basis::P,
            "s" => Basis::S,
            "H" | "Htilde" => Basis::Htilde,
            _ => return Err(Error::Parse(format!("unknown basis {s:?}"))),
        })
    }
}

/// Homogeneous symmetric function of degree `n` in a tagged basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymFun {
    n: usize,
    basis: Basis,
    coeffs: BTreeMap<Partition, QTScalar>,
}

impl SymFun {
    pub fn zero(n: usize, basis: Basis) -> Self {
        SymFun { n, basis, coeffs: BTreeMap::new() }
    }

    /// A single basis element.
    pub fn basis_elem(basis: Basis, lam: &Partition) -> Self {
        Self::from_coeffs(lam.size(), basis, [(lam.clone(), QTScalar::one())]).expect("sizes agree")
    }

    pub fn s(lam: &Partition) -> Self {
        Self::basis_elem(Basis::S, lam)
    }

    pub fn from_coeffs(
        n: usize,
        basis: Basis,
        it: impl IntoIterator<Item = (Partition, QTScalar)>,
    ) -> Result<Self> {
        let mut f = SymFun::zero(n, basis);
        for (p, c) in it {
            if p.size() != n {
                return domain(format!("{p} does not have size {n}"));
            }
            f.add_coeff(p, &c);
        }
        Ok(f)
    }

    pub fn add_coeff(&mut self, p: Partition, c: &QTScalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.coeffs.remove(&p) {
            Some(old) => old.add_ref(c),
            None => c.clone(),
        };
        if !v.is_zero() {
            self.coeffs.insert(p, v);
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, QTScalar> {
        &self.coeffs
    }

    pub fn coeff(&self, p: &Partition) -> QTScalar {
        self.coeffs.get(p).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn map_coeffs(&self, f: impl Fn(&QTScalar) -> QTScalar) -> SymFun {
        let mut r = SymFun::zero(self.n, self.basis);
        for (p, c) in &self.coeffs {
            r.add_coeff(p.clone(), &f(c));
        }
        r
    }

    pub fn scale(&self, c: &QTScalar) -> SymFun {
        self.map_coeffs(|v| v.mul_ref(c))
    }

    pub fn neg(&self) -> SymFun {
        self.map_coeffs(|v| v.neg_ref())
    }

    fn aligned(&self, o: &SymFun) -> Result<(SymFun, SymFun)> {
        if self.n != o.n {
            return domain(format!("degree mismatch {} vs {}", self.n, o.n));
        }
        if self.basis == o.basis {
            return Ok((self.clone(), o.clone()));
        }
        Ok((self.to_basis(Basis::S)?, o.to_basis(Basis::S)?))
    }

    pub fn add(&self, o: &SymFun) -> Result<SymFun> {
        let (mut a, b) = self.aligned(o)?;
        for (p, c) in b.coeffs {
            a.add_coeff(p, &c);
        }
        Ok(a)
    }

    pub fn sub(&self, o: &SymFun) -> Result<SymFun> {
        self.add(&o.neg())
    }

    /// Structural equality after conversion to the Schur basis.
    pub fn equals(&self, o: &SymFun) -> Result<bool> {
        Ok(self.sub(o)?.is_zero())
    }

    /// Change of basis.
    pub fn to_basis(&self, target: Basis) -> Result<SymFun> {
        if self.basis == target {
            return Ok(self.clone());
        }
        let s = self.to_s()?;
        if target == Basis::S {
            return Ok(s);
        }
        s.from_s(target)
    }

    fn to_s(&self) -> Result<SymFun> {
        let t = tables(self.n);
        let mut out = SymFun::zero(self.n, Basis::S);
        match self.basis {
            Basis::S => return Ok(self.clone()),
            Basis::Htilde => {
                let ht = htilde_table(self.n)?;
                for (mu, c) in &self.coeffs {
                    let row = &ht.matrix[t.idx(mu)];
                    for (l, v) in row.iter().enumerate() {
                        if !v.is_zero() {
                            out.add_coeff(t.parts[l].clone(), &c.mul_ref(v));
                        }
                    }
                }
            }
            b => {
                for (mu, c) in &self.coeffs {
                    let i = t.idx(mu);
                    for l in 0..t.len() {
                        let a: BigRational = match b {
                            Basis::H => int(t.kostka[l][i]),
                            Basis::E => int(t.kostka[t.conj[l]][i]),
                            Basis::P => int(t.chi[l][i]),
                            Basis::M => int(t.kostka_inv[i][l]),
                            _ => unreachable!(),
                        };
                        if !num_traits::Zero::is_zero(&a) {
                            out.add_coeff(t.parts[l].clone(), &c.mul_ref(&QTScalar::from_rational(&a)));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn from_s(&self, target: Basis) -> Result<SymFun> {
        debug_assert_eq!(self.basis, Basis::S);
        let t = tables(self.n);
        if target == Basis::Htilde {
            let c = to_htilde(self)?;
            return SymFun::from_coeffs(self.n, Basis::Htilde, c);
        }
        let mut out = SymFun::zero(self.n, target);
        for (lam, c) in &self.coeffs {
            let l = t.idx(lam);
            for i in 0..t.len() {
                // s_λ = Σ_μ B[λ][μ] basis_μ
                let a: BigRational = match target {
                    Basis::S => unreachable!(),
                    Basis::M => int(t.kostka[l][i]),
                    Basis::P => BigRational::new(BigInt::from(t.chi[l][i]), t.z[i].clone()),
                    Basis::H => int(t.kostka_inv[i][l]),
                    Basis::E => int(t.kostka_inv[i][t.conj[l]]),
                    Basis::Htilde => unreachable!(),
                };
                if !num_traits::Zero::is_zero(&a) {
                    out.add_coeff(t.parts[i].clone(), &c.mul_ref(&QTScalar::from_rational(&a)));
                }
            }
        }
        Ok(out)
    }

    /// Product, returned in the Schur basis.
    pub fn mul(&self, o: &SymFun) -> Result<SymFun> {
        let a = self.to_basis(Basis::P)?;
        let b = o.to_basis(Basis::P)?;
        let mut out = SymFun::zero(self.n + o.n, Basis::P);
        for (p, c) in &a.coeffs {
            for (r, d) in &b.coeffs {
                let mut parts = p.parts().to_vec();
                parts.extend_from_slice(r.parts());
                out.add_coeff(Partition::from_unsorted(parts), &c.mul_ref(d));
            }
        }
        out.to_basis(Basis::S)
    }

    /// Hall inner product.
    pub fn hall(&self, o: &SymFun) -> Result<QTScalar> {
        let (a, b) = (self.to_basis(Basis::S)?, o.to_basis(Basis::S)?);
        if a.n != b.n {
            return Ok(QTScalar::zero());
        }
        Ok(a.coeffs.iter().filter_map(|(p, c)| b.coeffs.get(p).map(|d| c.mul_ref(d))).sum())
    }

    /// `ω`: `s_λ -> s_λ'`.
    pub fn omega(&self) -> Result<SymFun> {
        let s = self.to_basis(Basis::S)?;
        SymFun::from_coeffs(self.n, Basis::S, s.coeffs.iter().map(|(p, c)| (p.conjugate(), c.clone())))
    }

    /// Applies a coefficient substitution.
    pub fn substitute(&self, rule: Subst) -> Result<SymFun> {
        Ok(self.to_basis(Basis::S)?.map_coeffs(|c| c.substitute(rule)))
    }

    /// `↓f = ω f(1/q, 1/t)`.
    pub fn down(&self) -> Result<SymFun> {
        self.omega()?.substitute(Subst::Invert)
    }

    /// `∂_{p_1}` by the branching rule on Schur functions.
    pub fn dp1(&self) -> Result<SymFun> {
        if self.n == 0 {
            return domain("dp1 of a degree-0 function");
        }
        let s = self.to_basis(Basis::S)?;
        let mut out = SymFun::zero(self.n - 1, Basis::S);
        for (lam, c) in &s.coeffs {
            for corner in lam.corners() {
                out.add_coeff(lam.remove_corner(corner)?, c);
            }
        }
        Ok(out)
    }

    /// `∂_{p_1}` as formal differentiation in the power-sum basis.
    pub fn dp1_power_sum(&self) -> Result<SymFun> {
        if self.n == 0 {
            return domain("dp1 of a degree-0 function");
        }
        let p = self.to_basis(Basis::P)?;
        let mut out = SymFun::zero(self.n - 1, Basis::P);
        for (rho, c) in &p.coeffs {
            let ones = rho.parts().iter().filter(|&&x| x == 1).count();
            if ones > 0 {
                let mut parts = rho.parts().to_vec();
                parts.pop();
                out.add_coeff(Partition::from_unsorted(parts), &c.mul_ref(&QTScalar::from_int(ones as i64)));
            }
        }
        out.to_basis(Basis::S)
    }

    /// Plethystic scaling `p_k -> φ(k) p_k`.
    pub fn plethystic_scale(&self, phi: impl Fn(usize) -> Result<QTScalar>) -> Result<SymFun> {
        let p = self.to_basis(Basis::P)?;
        let mut cache: BTreeMap<usize, QTScalar> = BTreeMap::new();
        let mut out = SymFun::zero(self.n, Basis::P);
        for (rho, c) in &p.coeffs {
            let mut f = c.clone();
            for &k in rho.parts() {
                if !cache.contains_key(&k) {
                    cache.insert(k, phi(k)?);
                }
                f = f.mul_ref(&cache[&k]);
            }
            out.add_coeff(rho.clone(), &f);
        }
        out.to_basis(Basis::S)
    }

    /// Coefficients at a rational point, in the Schur basis.
    pub fn eval_at(&self, q0: &BigRational, t0: &BigRational) -> Result<BTreeMap<Partition, BigRational>> {
        let s = self.to_basis(Basis::S)?;
        let mut out = BTreeMap::new();
        for (p, c) in &s.coeffs {
            let v = c.eval_at(q0, t0)?;
            if !num_traits::Zero::is_zero(&v) {
                out.insert(p.clone(), v);
            }
        }
        Ok(out)
    }

    /// Serializes as a header line and one `s[2,1]: q+t` line per term.
    pub fn to_text(&self) -> String {
        let mut s = format!("degree {} basis {}\n", self.n, self.basis.tag());
        for (p, c) in &self.coeffs {
            s.push_str(&format!("{}{}: {}\n", self.basis.tag(), p, c));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<SymFun> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 4 || h[0] != "degree" || h[2] != "basis" {
            return Err(Error::Parse(format!("bad header {header:?}")));
        }
        let n: usize = h[1].parse().map_err(|_| Error::Parse(format!("bad degree in {header:?}")))?;
        let basis = Basis::from_tag(h[3])?;
        let mut f = SymFun::zero(n, basis);
        for line in lines {
            let (lhs, rhs) = line.split_once(':').ok_or_else(|| Error::Parse(format!("bad line {line:?}")))?;
            let lhs = lhs.trim();
            let part = lhs
                .strip_prefix(basis.tag())
                .ok_or_else(|| Error::Parse(format!("basis tag mismatch in {line:?}")))?;
            let p: Partition = part.parse()?;
            if p.size() != n {
                return Err(Error::Parse(format!("{p} has wrong size")));
            }
            f.add_coeff(p, &rhs.trim().parse()?);
        }
        Ok(f)
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

impl fmt::Display for SymFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(p, c)| {
                if c.is_one() {
                    format!("{}{}", self.basis.tag(), p)
                } else {
                    format!("({}){}{}", c, self.basis.tag(), p)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SymFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `e_k` of a finite alphabet.
pub fn e_alphabet(k: usize, monos: &[QTScalar]) -> Result<QTScalar> {
    if k > monos.len() {
        return domain(format!("e_{k} of an alphabet of size {}", monos.len()));
    }
    // e_j of the prefix, updated one letter at a time
    let mut e = vec![QTScalar::zero(); k + 1];
    e[0] = QTScalar::one();
    for x in monos {
        for j in (1..=k).rev() {
            let add = e[j - 1].mul_ref(x);
            e[j] = e[j].add_ref(&add);
        }
    }
    Ok(e[k].clone())
}

/// `φ(k) = 1 - z^k` for the scaling `X -> X(1-z)`.
pub fn one_minus(z: QTScalar) -> impl Fn(usize) -> Result<QTScalar> {
    move |k| Ok(QTScalar::one().sub_ref(&z.pow(k as i64)?))
}

/// `φ(k) = 1/(1 - z^k)` for the scaling `X -> X/(1-z)`.
pub fn over_one_minus(z: QTScalar) -> impl Fn(usize) -> Result<QTScalar> {
    move |k| QTScalar::one().sub_ref(&z.pow(k as i64)?).inv()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::partitions;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn q(s: &str) -> QTScalar {
        s.parse().unwrap()
    }

    #[test]
    fn conversions() {
        let s1 = SymFun::s(&p("[1]"));
        assert_eq!(s1.to_basis(Basis::P).unwrap(), SymFun::basis_elem(Basis::P, &p("[1]")));
        let p2 = SymFun::basis_elem(Basis::P, &p("[2]")).to_basis(Basis::S).unwrap();
        let want = SymFun::from_coeffs(2, Basis::S, [(p("[2]"), q("1")), (p("[1,1]"), q("-1"))]).unwrap();
        assert_eq!(p2, want);
        assert_eq!(SymFun::basis_elem(Basis::H, &p("[2]")).to_basis(Basis::S).unwrap(), SymFun::s(&p("[2]")));
        for n in 1..=6 {
            for b in [Basis::M, Basis::E, Basis::H, Basis::P] {
                for lam in partitions(n) {
                    let f = SymFun::s(&lam);
                    assert_eq!(f.to_basis(b).unwrap().to_basis(Basis::S).unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn hall_products() {
        let a = SymFun::basis_elem(Basis::P, &p("[2,1,1]"));
        assert_eq!(a.hall(&a).unwrap(), QTScalar::from_int(4));
        let h = SymFun::basis_elem(Basis::H, &p("[2,1]"));
        let m = SymFun::basis_elem(Basis::M, &p("[2,1]"));
        assert_eq!(h.hall(&m).unwrap(), QTScalar::one());
        let s1 = SymFun::s(&p("[1]"));
        let prod = s1.mul(&SymFun::s(&p("[2]"))).unwrap();
        let want = SymFun::from_coeffs(3, Basis::S, [(p("[3]"), q("1")), (p("[2,1]"), q("1"))]).unwrap();
        assert_eq!(prod, want);
    }

    #[test]
    fn dp1_and_omega() {
        let f = SymFun::s(&p("[2,1]"));
        let want = SymFun::from_coeffs(2, Basis::S, [(p("[2]"), q("1")), (p("[1,1]"), q("1"))]).unwrap();
        assert_eq!(f.dp1().unwrap(), want);
        assert_eq!(f.dp1_power_sum().unwrap(), want);
        assert_eq!(SymFun::s(&p("[1]")).dp1().unwrap(), SymFun::s(&p("[]")));
        assert_eq!(SymFun::s(&p("[2]")).omega().unwrap(), SymFun::s(&p("[1,1]")));
        assert!(SymFun::s(&p("[]")).dp1().is_err());
    }

    #[test]
    fn plethysm_examples() {
        let h2 = SymFun::basis_elem(Basis::H, &p("[2]"));
        let f = h2
            .plethystic_scale(over_one_minus(QTScalar::t()))
            .unwrap()
            .scale(&q("(1-t)*(1-t^2)"));
        let want = SymFun::from_coeffs(2, Basis::S, [(p("[2]"), q("1")), (p("[1,1]"), q("t"))]).unwrap();
        assert_eq!(f, want);
        let g = h2
            .plethystic_scale(over_one_minus(QTScalar::q()))
            .unwrap()
            .scale(&q("(1-q)*(1-q^2)"));
        assert_eq!(g, want.substitute(Subst::Swap).unwrap());
        let p1 = SymFun::basis_elem(Basis::P, &p("[1]"));
        assert_eq!(
            p1.plethystic_scale(one_minus(QTScalar::q())).unwrap(),
            p1.to_basis(Basis::S).unwrap().scale(&q("1-q"))
        );
    }

    #[test]
    fn alphabets() {
        let xs = [q("t^2/q"), q("t"), q("q"), q("q^2/t")];
        assert_eq!(e_alphabet(0, &xs).unwrap(), QTScalar::one());
        assert_eq!(e_alphabet(1, &xs).unwrap(), q("t^2/q+t+q+q^2/t"));
        assert_eq!(e_alphabet(2, &[q("q"), q("t")]).unwrap(), q("q*t"));
        assert!(e_alphabet(5, &xs).is_err());
    }

    #[test]
    fn text_round_trip() {
        let f = SymFun::from_coeffs(3, Basis::S, [(p("[2,1]"), q("q+t")), (p("[1,1,1]"), q("1/(1-q)"))]).unwrap();
        assert_eq!(SymFun::from_text(&f.to_text()).unwrap(), f);
    }
}
