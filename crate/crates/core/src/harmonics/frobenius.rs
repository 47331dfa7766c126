//! Characters of bigraded modules and their Frobenius images.

use super::{BigradedBasis, Echelon};
use crate::diagrams::Partition;
use crate::error::{Error, Result};
use crate::qtfield::{QTPoly, QTScalar};
use crate::symfunc::{tables, SymFun};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

/// Schur multiplicities per bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobSeries {
    n: usize,
    comps: BTreeMap<(u32, u32), BTreeMap<Partition, i64>>,
}

impl FrobSeries {
    pub fn zero(n: usize) -> Self {
        FrobSeries { n, comps: BTreeMap::new() }
    }

    pub fn from_components(n: usize, comps: BTreeMap<(u32, u32), BTreeMap<Partition, i64>>) -> Self {
        let mut f = FrobSeries { n, comps };
        f.prune();
        f
    }

    fn prune(&mut self) {
        for m in self.comps.values_mut() {
            m.retain(|_, v| *v != 0);
        }
        self.comps.retain(|_, m| !m.is_empty());
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &BTreeMap<(u32, u32), BTreeMap<Partition, i64>> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.comps.values().flat_map(|m| m.values()).all(|&v| v >= 0)
    }

    pub fn sub(&self, o: &FrobSeries) -> FrobSeries {
        let mut comps = self.comps.clone();
        for (bd, m) in &o.comps {
            let e = comps.entry(*bd).or_default();
            for (lam, v) in m {
                *e.entry(lam.clone()).or_insert(0) -= v;
            }
        }
        FrobSeries::from_components(self.n, comps)
    }

    pub fn add(&self, o: &FrobSeries) -> FrobSeries {
        self.sub(&o.neg())
    }

    pub fn neg(&self) -> FrobSeries {
        let comps = self.comps.iter().map(|(&bd, m)| (bd, m.iter().map(|(l, v)| (l.clone(), -v)).collect())).collect();
        FrobSeries { n: self.n, comps }
    }

    /// `Σ_{r,s} t^r q^s Σ_λ mult s_λ`.
    pub fn to_symfun(&self) -> SymFun {
        let mut out = SymFun::zero(self.n, crate::symfunc::Basis::S);
        for (&(r, s), m) in &self.comps {
            for (lam, &v) in m {
                out.add_coeff(lam.clone(), &QTScalar::from_poly(QTPoly::monomial(s, r, BigInt::from(v))));
            }
        }
        out
    }

    /// Hilbert series recovered via `Σ_λ mult·f_λ`.
    pub fn hilbert(&self) -> QTPoly {
        QTPoly::from_terms(self.comps.iter().map(|(&(r, s), m)| {
            let d: i128 = m.iter().map(|(l, &v)| v as i128 * l.f_lambda() as i128).sum();
            ((s, r), BigInt::from(d))
        }))
    }

    /// Multiplicities summed over bidegrees (the `q = t = 1` image).
    pub fn at_one(&self) -> BTreeMap<Partition, i64> {
        let mut out = BTreeMap::new();
        for m in self.comps.values() {
            for (lam, v) in m {
                *out.entry(lam.clone()).or_insert(0) += v;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Whether the `q = t = 1` image is `k` copies of the regular
    /// representation; returns `k`.
    pub fn regular_multiple(&self) -> Option<i64> {
        let one = self.at_one();
        let id = Partition::new(vec![self.n]).ok()?;
        let k = one.get(&id).copied().unwrap_or(0);
        let ok = tables(self.n).parts.iter().all(|lam| one.get(lam).copied().unwrap_or(0) == k * lam.f_lambda() as i64);
        ok.then_some(k)
    }
}

impl fmt::Display for FrobSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_symfun())
    }
}

/// A permutation of `0..n` with cycle type `rho`, cycles on consecutive blocks.
pub fn cycle_representative(rho: &Partition) -> Vec<usize> {
    let mut sigma = Vec::with_capacity(rho.size());
    let mut start = 0;
    for &k in rho.parts() {
        for i in 0..k {
            sigma.push(start + (i + 1) % k);
        }
        start += k;
    }
    sigma
}

fn inverse(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    inv
}

/// Trace of `σ` on an invariant echelonized space.
fn trace(e: &Echelon, sigma_inv: &[usize]) -> BigRational {
    let mut tr = BigRational::zero();
    for (k, row) in e.rows().iter().enumerate() {
        let p = e.pivot_of(k);
        // (σ·b)[p] = b[σ⁻¹·p]
        tr += row.coeff(&p.permuted(sigma_inv));
    }
    tr
}

/// Fails with `NotInvariant` unless every component is closed under a
/// generating set of `S_n`.
pub fn check_invariant(b: &BigradedBasis) -> Result<()> {
    let n = b.n();
    if n < 2 {
        return Ok(());
    }
    let swap: Vec<usize> = (0..n).map(|i| if i < 2 { 1 - i } else { i }).collect();
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let ok = b.components().par_iter().all(|(_, e)| {
        e.rows().iter().all(|row| e.contains(&row.act_unchecked(&swap)) && e.contains(&row.act_unchecked(&cycle)))
    });
    if ok {
        Ok(())
    } else {
        Err(Error::NotInvariant)
    }
}

/// Bigraded Frobenius characteristic of an `S_n`-invariant space.
pub fn frobenius(b: &BigradedBasis) -> Result<FrobSeries> {
    check_invariant(b)?;
    let n = b.n();
    let tab = tables(n);
    let reps: Vec<Vec<usize>> = tab.parts.iter().map(|rho| inverse(&cycle_representative(rho))).collect();
    let comps: Vec<((u32, u32), BTreeMap<Partition, i64>)> = b
        .components()
        .par_iter()
        .map(|(&bd, e)| {
            let chars: Vec<BigRational> = reps.iter().map(|s| trace(e, s)).collect();
            let mut mult = BTreeMap::new();
            for (a, lam) in tab.parts.iter().enumerate() {
                let mut m = BigRational::zero();
                for (r, ch) in chars.iter().enumerate() {
                    if !ch.is_zero() {
                        m += ch * BigRational::from_integer(BigInt::from(tab.chi[a][r])) / BigRational::from_integer(tab.z[r].clone());
                    }
                }
                if !m.is_integer() {
                    return Err(Error::Internal(format!("non-integral multiplicity {m} of {lam} at {bd:?}")));
                }
                let v = m.to_integer().to_i64().ok_or_else(|| Error::Internal("multiplicity overflow".into()))?;
                if v != 0 {
                    mult.insert(lam.clone(), v);
                }
            }
            Ok((bd, mult))
        })
        .collect::<Result<_>>()?;
    Ok(FrobSeries::from_components(n, comps.into_iter().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonics::{derivative_span, partition_module};
    use crate::exactpoly::parse_mpoly;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn representatives() {
        assert_eq!(cycle_representative(&p("[3,1]")), vec![1, 2, 0, 3]);
        assert_eq!(cycle_representative(&p("[1,1]")), vec![0, 1]);
    }

    #[test]
    fn small_characteristics() {
        let f = frobenius(&partition_module(&p("[2,1]")).unwrap()).unwrap();
        let expect = SymFun::from_text("degree 3 basis s\ns[3]: 1\ns[2,1]: q+t\ns[1,1,1]: q*t").unwrap();
        assert!(f.to_symfun().equals(&expect).unwrap());
        assert_eq!(f.regular_multiple(), Some(1));
        assert_eq!(f.hilbert(), partition_module(&p("[2,1]")).unwrap().hilbert());
        let f = frobenius(&partition_module(&p("[1,1]")).unwrap()).unwrap();
        let expect = SymFun::from_text("degree 2 basis s\ns[2]: 1\ns[1,1]: t").unwrap();
        assert!(f.to_symfun().equals(&expect).unwrap());
        let f = frobenius(&partition_module(&p("[1]")).unwrap()).unwrap();
        assert!(f.to_symfun().equals(&SymFun::s(&p("[1]"))).unwrap());
    }

    #[test]
    fn non_invariant_rejected() {
        let b = derivative_span(&parse_mpoly("x1^2", 2).unwrap()).unwrap();
        assert!(matches!(frobenius(&b), Err(Error::NotInvariant)));
    }
}
