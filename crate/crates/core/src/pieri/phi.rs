//! The characteristics `φ_S^{(k)}` on a set of predecessors and the
//! identities recovering `H̃_α` from them.

use super::hsum;
use crate::diagrams::{predecessors, Partition};
use crate::error::{domain, Error, Result};
use crate::harmonics::{frobenius, m_s_t};
use crate::qtfield::QTScalar;
use crate::symfunc::{e_alphabet, nabla, Basis, SymFun};

fn check_set(s: &[Partition]) -> Result<usize> {
    let Some(first) = s.first() else {
        return domain("empty predecessor set");
    };
    let n = first.size();
    if s.iter().any(|a| a.size() != n) {
        return domain("predecessors of different sizes");
    }
    for (i, a) in s.iter().enumerate() {
        if s[..i].contains(a) {
            return domain(format!("{a} repeated"));
        }
    }
    Ok(n)
}

/// `φ_S^{(k)} = Σ_α (-T_α)^{m-k} ∏_{β≠α} 1/(1-T_α/T_β) H̃_α`.
pub fn phi(s: &[Partition], k: usize) -> Result<SymFun> {
    let n = check_set(s)?;
    let m = s.len();
    if k == 0 || k > m {
        return domain(format!("phi index {k} outside 1..{m}"));
    }
    let mut terms = Vec::with_capacity(m);
    for a in s {
        let ta = a.t_weight();
        let mut c = QTScalar::one();
        for b in s.iter().filter(|b| *b != a) {
            let r = QTScalar::one().sub_ref(&(ta / b.t_weight()).to_scalar());
            if r.is_zero() {
                return Err(Error::Internal(format!("equal weights for {a} and {b}")));
            }
            c = c.div_ref(&r)?;
        }
        let sign = if (m - k) % 2 == 1 { -1 } else { 1 };
        c = c.mul_ref(&ta.pow((m - k) as i64).to_scalar()).mul_ref(&QTScalar::from_int(sign));
        terms.push((a.clone(), c));
    }
    hsum(n, terms)
}

/// `(1 - z∇) f`.
pub(crate) fn one_minus_nabla(f: &SymFun, z: &QTScalar) -> Result<SymFun> {
    f.sub(&nabla(f)?.scale(z))
}

/// `∏_{β∈S, β≠α}(1-∇/T_β) φ^{(m)}`.
pub fn recover_by_product(s: &[Partition], alpha: &Partition) -> Result<SymFun> {
    let mut f = phi(s, s.len())?;
    for b in s.iter().filter(|b| *b != alpha) {
        f = one_minus_nabla(&f, &b.t_weight().inv().to_scalar())?;
    }
    Ok(f)
}

/// `Σ_k φ^{(k)} e_{m-k}[Σ_{β≠α} 1/T_β]`.
pub fn recover_by_ek(s: &[Partition], alpha: &Partition) -> Result<SymFun> {
    let n = check_set(s)?;
    let m = s.len();
    let alphabet: Vec<QTScalar> = s.iter().filter(|b| *b != alpha).map(|b| b.t_weight().inv().to_scalar()).collect();
    let mut acc = SymFun::zero(n, Basis::Htilde);
    for k in 1..=m {
        acc = acc.add(&phi(s, k)?.scale(&e_alphabet(m - k, &alphabet)?))?;
    }
    Ok(acc)
}

/// `↓φ^{(k)} - φ^{(m+1-k)}/∏T_β`.
pub fn duality_residual(s: &[Partition], k: usize) -> Result<SymFun> {
    let m = s.len();
    let prod = s.iter().fold(crate::qtfield::Mono::ONE, |a, b| a * b.t_weight());
    let lhs = phi(s, k)?.down()?;
    lhs.sub(&phi(s, m + 1 - k)?.scale(&prod.inv().to_scalar()))
}

/// One comparison of the module `M_S^T` with `φ_S^{(|T|)}/∏_{β∈S-T}T_β`.
#[derive(Clone, Debug)]
pub struct MstCheck {
    pub s: Vec<Partition>,
    pub t: Vec<Partition>,
    pub dim: usize,
    pub holds: bool,
}

/// Runs the comparison for every nonempty `S ⊆ Pred(μ)` and nonempty `T ⊆ S`.
pub fn sf_mst_check(mu: &Partition) -> Result<Vec<MstCheck>> {
    let pred = predecessors(mu)?;
    let d = pred.len();
    let mut out = Vec::new();
    for smask in 1u32..1 << d {
        let s: Vec<Partition> = (0..d).filter(|i| smask >> i & 1 == 1).map(|i| pred[i].clone()).collect();
        let m = s.len();
        for tmask in 1u32..1 << m {
            let t: Vec<Partition> = (0..m).filter(|i| tmask >> i & 1 == 1).map(|i| s[i].clone()).collect();
            let module = m_s_t(&s, &t)?;
            let fch = frobenius(&module)?.to_symfun();
            let rest = s.iter().filter(|b| !t.contains(b)).fold(crate::qtfield::Mono::ONE, |a, b| a * b.t_weight());
            let expect = phi(&s, t.len())?.scale(&rest.inv().to_scalar());
            out.push(MstCheck { holds: fch.equals(&expect)?, dim: module.dim(), s: s.clone(), t });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qtfield::parse_scalar;
    use crate::symfunc::htilde;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_phi() {
        let s = vec![p("[2]")];
        assert!(phi(&s, 1).unwrap().equals(&htilde(&p("[2]")).unwrap()).unwrap());
        let s = vec![p("[2]"), p("[1,1]")];
        let expect = hsum(
            2,
            [(p("[2]"), parse_scalar("1/(1-q/t)").unwrap()), (p("[1,1]"), parse_scalar("1/(1-t/q)").unwrap())],
        )
        .unwrap();
        assert_eq!(phi(&s, 2).unwrap(), expect);
        assert!(phi(&s, 0).is_err() && phi(&s, 3).is_err());
        // φ^{(1)} = -∇φ^{(2)}
        assert!(phi(&s, 1).unwrap().equals(&nabla(&phi(&s, 2).unwrap()).unwrap().neg()).unwrap());
    }

    #[test]
    fn recovery_and_duality() {
        for mu in [p("[2,1]"), p("[3,2,1]"), p("[4,2,1]")] {
            let s = predecessors(&mu).unwrap();
            for a in &s {
                let h = htilde(a).unwrap();
                assert!(recover_by_product(&s, a).unwrap().equals(&h).unwrap(), "{mu} {a}");
                assert!(recover_by_ek(&s, a).unwrap().equals(&h).unwrap(), "{mu} {a}");
            }
            for k in 1..=s.len() {
                assert!(duality_residual(&s, k).unwrap().is_zero(), "{mu} k={k}");
            }
        }
    }

    #[test]
    fn module_level() {
        for c in sf_mst_check(&p("[2,1]")).unwrap() {
            assert!(c.holds, "S={:?} T={:?}", c.s, c.t);
        }
    }
}
