//! Pieri coefficients of `∂_{p_1} H̃_μ` in product and corner-weight form.

use super::{hsum, m_factor};
use crate::diagrams::{corner_data, Cell, Partition, ShadowFrame};
use crate::error::{domain, Error, Result};
use crate::qtfield::{Mono, QTScalar};
use crate::symfunc::SymFun;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PieriForm {
    /// Ratios over the cells in the row and column of the removed corner.
    Product,
    /// `(1/M)(1/x_i)∏(x_i-u_j)/∏(x_i-x_j)` in corner weights.
    Compact,
}

/// The corner of μ whose removal gives ν.
pub fn removed_cell(mu: &Partition, nu: &Partition) -> Result<Cell> {
    mu.corners()
        .into_iter()
        .find(|&c| mu.remove_corner(c).ok().as_ref() == Some(nu))
        .ok_or_else(|| Error::Domain(format!("{nu} is not a predecessor of {mu}")))
}

pub fn c_coeff(mu: &Partition, nu: &Partition, form: PieriForm) -> Result<QTScalar> {
    let cell = removed_cell(mu, nu)?;
    match form {
        PieriForm::Product => product_form(mu, cell, |m| m.to_scalar()),
        PieriForm::Compact => {
            let f = corner_data(mu)?;
            let s = f.corners.iter().position(|&c| c == cell).expect("removed cell is a corner");
            compact_coeff(&f, s)
        }
    }
}

/// Product form with every monomial passed through `spec` before the
/// factors are formed.
pub(crate) fn product_form(mu: &Partition, cell: Cell, spec: impl Fn(Mono) -> QTScalar) -> Result<QTScalar> {
    let mut c = QTScalar::one();
    for col in 0..cell.col {
        let (a, l, _, _) = mu.arm_leg(Cell::new(cell.row, col))?;
        let (tl, qa) = (spec(Mono::t_pow(l as i64)), spec(Mono::q_pow(a as i64)));
        let qa1 = spec(Mono::q_pow(a as i64 + 1));
        c = c.mul_ref(&tl.sub_ref(&qa1).div_ref(&tl.sub_ref(&qa))?);
    }
    for row in 0..cell.row {
        let (a, l, _, _) = mu.arm_leg(Cell::new(row, cell.col))?;
        let (tl, qa) = (spec(Mono::t_pow(l as i64)), spec(Mono::q_pow(a as i64)));
        let tl1 = spec(Mono::t_pow(l as i64 + 1));
        c = c.mul_ref(&qa.sub_ref(&tl1).div_ref(&qa.sub_ref(&tl))?);
    }
    Ok(c)
}

/// `(1/M)(1/x_s)∏_{r=0..m}(x_s-u_r)/∏_{r≠s}(x_s-x_r)` for the 0-based corner `s`.
pub fn compact_coeff(f: &ShadowFrame, s: usize) -> Result<QTScalar> {
    let xs = f.x[s].to_scalar();
    let mut num = QTScalar::one();
    for u in &f.u {
        num = num.mul_ref(&xs.sub_ref(&u.to_scalar()));
    }
    let mut den = m_factor().mul_ref(&xs);
    for (r, x) in f.x.iter().enumerate() {
        if r != s {
            den = den.mul_ref(&xs.sub_ref(&x.to_scalar()));
        }
    }
    num.div_ref(&den)
}

/// `∂_{p_1} H̃_μ = Σ c_{μν} H̃_ν`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieriExpansion {
    pub base: Partition,
    pub terms: Vec<(Partition, QTScalar)>,
}

impl PieriExpansion {
    pub fn to_symfun(&self) -> Result<SymFun> {
        hsum(self.base.size().saturating_sub(1), self.terms.iter().cloned())
    }
}

impl fmt::Display for PieriExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dp1 H{}", self.base)?;
        for (nu, c) in &self.terms {
            writeln!(f, "H{nu}: {c}")?;
        }
        Ok(())
    }
}

pub fn dp1_expand(mu: &Partition) -> Result<PieriExpansion> {
    if mu.is_empty() {
        return domain("dp1 of the empty partition");
    }
    let cap = crate::symfunc::degree_cap();
    if mu.size() > cap + 1 {
        return Err(Error::Resource(format!("expansion of {mu} exceeds degree cap {cap}")));
    }
    let terms = mu
        .corners()
        .into_iter()
        .map(|c| Ok((mu.remove_corner(c)?, product_form(mu, c, |m| m.to_scalar())?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PieriExpansion { base: mu.clone(), terms })
}

/// Hook-ratio form of `c_{τρ}` at `t = 1/q`:
/// `(1/(1-q))∏_τ(1-q^h)/∏_ρ(1-q^h)·q^{-|C|}`, with `C` the cells of ρ in the
/// column of the removed corner.
pub fn hook_ratio_at_inverse(tau: &Partition, rho: &Partition) -> Result<QTScalar> {
    let cell = removed_cell(tau, rho)?;
    let q = QTScalar::q();
    let one = QTScalar::one();
    let mut c = one.sub_ref(&q).inv()?;
    for s in tau.cells() {
        c = c.mul_ref(&one.sub_ref(&q.pow(tau.hook(s)? as i64)?));
    }
    for s in rho.cells() {
        c = c.div_ref(&one.sub_ref(&q.pow(rho.hook(s)? as i64)?))?;
    }
    Ok(c.mul_mono(Mono::q_pow(-(cell.row as i64))))
}

/// Product form at `t = 1/q`, specialized factor by factor.
pub fn c_coeff_at_inverse(tau: &Partition, rho: &Partition) -> Result<QTScalar> {
    let cell = removed_cell(tau, rho)?;
    product_form(tau, cell, |m| Mono::q_pow(m.q - m.t).to_scalar())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{partitions, predecessors};
    use crate::qtfield::parse_scalar;
    use crate::symfunc::htilde;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn sc(s: &str) -> QTScalar {
        parse_scalar(s).unwrap()
    }

    #[test]
    fn small_coefficients() {
        for form in [PieriForm::Product, PieriForm::Compact] {
            assert_eq!(c_coeff(&p("[2]"), &p("[1]"), form).unwrap(), sc("1+q"));
            assert_eq!(c_coeff(&p("[1,1]"), &p("[1]"), form).unwrap(), sc("1+t"));
            assert_eq!(c_coeff(&p("[2,1]"), &p("[2]"), form).unwrap(), sc("(q-t^2)/(q-t)"));
            assert_eq!(c_coeff(&p("[2,1]"), &p("[1,1]"), form).unwrap(), sc("(t-q^2)/(t-q)"));
        }
        assert!(c_coeff(&p("[2,1]"), &p("[3]"), PieriForm::Product).is_err());
    }

    #[test]
    fn forms_agree() {
        for n in 1..=6 {
            for mu in partitions(n) {
                for nu in predecessors(&mu).unwrap() {
                    let a = c_coeff(&mu, &nu, PieriForm::Product).unwrap();
                    assert_eq!(a, c_coeff(&mu, &nu, PieriForm::Compact).unwrap(), "{mu} -> {nu}");
                }
            }
        }
    }

    #[test]
    fn expansions_match_dp1() {
        let e = dp1_expand(&p("[2]")).unwrap();
        assert_eq!(e.terms, vec![(p("[1]"), sc("1+q"))]);
        let e = dp1_expand(&p("[1]")).unwrap();
        assert_eq!(e.terms, vec![(Partition::empty(), QTScalar::one())]);
        for n in 2..=5 {
            for mu in partitions(n) {
                let lhs = htilde(&mu).unwrap().dp1().unwrap();
                assert!(dp1_expand(&mu).unwrap().to_symfun().unwrap().equals(&lhs).unwrap(), "{mu}");
            }
        }
    }

    #[test]
    fn inverse_specialization() {
        for n in 2..=5 {
            for tau in partitions(n) {
                for rho in predecessors(&tau).unwrap() {
                    let a = c_coeff_at_inverse(&tau, &rho).unwrap();
                    assert_eq!(a, hook_ratio_at_inverse(&tau, &rho).unwrap(), "{tau} -> {rho}");
                }
            }
        }
    }
}
