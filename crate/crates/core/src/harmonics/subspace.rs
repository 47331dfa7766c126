//! Sums, intersections, apolar complements, and flip maps of bigraded spaces.

use super::{partition_module, BigradedBasis, Echelon};
use crate::diagrams::Partition;
use crate::error::{domain, Error, Result};
use crate::exactpoly::MPoly;
use std::collections::BTreeMap;

fn check_n(a: &BigradedBasis, b: &BigradedBasis) -> Result<()> {
    if a.n() != b.n() {
        return domain(format!("spaces in {} and {} variable pairs", a.n(), b.n()));
    }
    Ok(())
}

pub fn sum(a: &BigradedBasis, b: &BigradedBasis) -> Result<BigradedBasis> {
    check_n(a, b)?;
    let mut comps = a.components().clone();
    for (bd, e) in b.components() {
        let merged = match comps.get(bd) {
            Some(x) => x.sum(e),
            None => e.clone(),
        };
        comps.insert(*bd, merged);
    }
    Ok(BigradedBasis::from_components(a.n(), comps))
}

pub fn intersect(a: &BigradedBasis, b: &BigradedBasis) -> Result<BigradedBasis> {
    check_n(a, b)?;
    let comps = a
        .components()
        .iter()
        .filter_map(|(bd, e)| b.component(bd.0, bd.1).map(|o| (*bd, e.intersect(o))))
        .collect();
    Ok(BigradedBasis::from_components(a.n(), comps))
}

/// Elements of `ambient` apolar-orthogonal to all of `sub`.
pub fn perp_within(ambient: &BigradedBasis, sub: &BigradedBasis) -> Result<BigradedBasis> {
    check_n(ambient, sub)?;
    let pair = |u: &MPoly, v: &MPoly| u.apolar(v).expect("same variable count");
    let comps = ambient
        .components()
        .iter()
        .map(|(bd, e)| {
            let p = match sub.component(bd.0, bd.1) {
                Some(s) => e.perp_within(s, pair),
                None => e.clone(),
            };
            (*bd, p)
        })
        .collect();
    Ok(BigradedBasis::from_components(ambient.n(), comps))
}

/// `{P(∂)Δ : P ∈ sub}`.
pub fn flip_image(delta: &MPoly, sub: &BigradedBasis) -> Result<BigradedBasis> {
    if delta.n() != sub.n() {
        return domain("flip: variable count mismatch");
    }
    let m = super::derivative_span(delta)?;
    if !sub.is_subspace_of(&m) {
        return domain("flip: subspace is not inside the derivative span");
    }
    let mut out = BigradedBasis::new(sub.n());
    for p in sub.basis() {
        out.insert(&p.apply_operator(delta)?);
    }
    Ok(out)
}

/// The unique `P₁` in `m_delta` with `P₁(∂)Δ = p`.
pub fn flip_preimage(delta: &MPoly, m_delta: &BigradedBasis, p: &MPoly) -> Result<MPoly> {
    let (r0, s0) = delta.bidegree().ok_or_else(|| Error::Domain("flip of zero".into()))?;
    let mut out = MPoly::zero(delta.n());
    for ((r, s), part) in p.components() {
        if r > r0 || s > s0 {
            return domain("flip preimage: bidegree above the apex");
        }
        let Some(src) = m_delta.component(r0 - r, s0 - s) else {
            return domain("flip preimage: not in the derivative span");
        };
        let mut images: Vec<MPoly> = src.rows().iter().map(|b| b.apply_operator(delta)).collect::<Result<_>>()?;
        images.push(part.neg());
        let combo = super::linalg::kernel_of_images(&images)
            .into_iter()
            .find(|c| c.last().is_some_and(|v| !num_traits::Zero::is_zero(v)))
            .ok_or_else(|| Error::Domain("flip preimage: not in the derivative span".into()))?;
        let last = combo.last().unwrap().clone();
        let coeffs: Vec<_> = combo[..src.dim()].iter().map(|c| c / &last).collect();
        out = out.add(&super::linalg::combine(src.rows(), &coeffs));
    }
    Ok(out)
}

/// Preimage of a whole subspace under the flip.
pub fn flip_preimage_space(delta: &MPoly, m_delta: &BigradedBasis, sub: &BigradedBasis) -> Result<BigradedBasis> {
    let mut out = BigradedBasis::new(sub.n());
    for p in sub.basis() {
        out.insert(&flip_preimage(delta, m_delta, p)?);
    }
    Ok(out)
}

/// `M_S^T = (∩_{α∈T} M_α) ∩ ((Σ_{β∈S−T} M_β) ∩ ∩_{α∈T} M_α)^⊥`.
pub fn m_s_t(s: &[Partition], t: &[Partition]) -> Result<BigradedBasis> {
    if t.is_empty() {
        return domain("M_S^T needs a nonempty T");
    }
    if let Some(a) = t.iter().find(|a| !s.contains(a)) {
        return domain(format!("{a} is in T but not in S"));
    }
    let mut inter = (*partition_module(&t[0])?).clone();
    for a in &t[1..] {
        inter = intersect(&inter, &*partition_module(a)?)?;
    }
    let rest: Vec<&Partition> = s.iter().filter(|b| !t.contains(b)).collect();
    if rest.is_empty() {
        return Ok(inter);
    }
    let mut sm = BigradedBasis::from_components(inter.n(), BTreeMap::<(u32, u32), Echelon>::new());
    for b in rest {
        sm = sum(&sm, &*partition_module(b)?)?;
    }
    let inner = intersect(&sm, &inter)?;
    perp_within(&inter, &inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonics::{frobenius, lattice_determinant};
    use crate::diagrams::LatticeDiagram;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn lattice_operations() {
        let a = partition_module(&p("[2]")).unwrap();
        let b = partition_module(&p("[1,1]")).unwrap();
        let i = intersect(&a, &b).unwrap();
        assert_eq!(i.dim(), 1);
        assert_eq!(sum(&a, &b).unwrap().dim(), 3);
        assert!(perp_within(&a, &a).unwrap().is_empty());
        assert_eq!(perp_within(&a, &i).unwrap().dim(), 1);
    }

    #[test]
    fn flips() {
        let d = lattice_determinant(&LatticeDiagram::of_partition(&p("[2,1]"))).unwrap();
        let consts = BigradedBasis::from_polys(3, [&MPoly::one(3)]);
        let img = flip_image(&d, &consts).unwrap();
        assert!(img.same_space(&BigradedBasis::from_polys(3, [&d])));
        let m = partition_module(&p("[2,1]")).unwrap();
        let whole = flip_image(&d, &m).unwrap();
        assert!(whole.same_space(&m));
        for b in m.basis() {
            let pre = flip_preimage(&d, &m, b).unwrap();
            assert_eq!(&pre.apply_operator(&d).unwrap(), b);
        }
        // flipped characteristic = t^{r0} q^{s0} ↓Φ
        let f = frobenius(&m).unwrap().to_symfun();
        let flipped = f.down().unwrap().scale(&crate::qtfield::QTScalar::mono(1, 1));
        assert!(f.equals(&flipped).unwrap());
    }

    #[test]
    fn m_s_t_basics() {
        let s = vec![p("[2,1]"), p("[1,1,1]")];
        assert!(m_s_t(&s, &[]).is_err());
        let single = m_s_t(&s[..1], &s[..1]).unwrap();
        assert!(single.same_space(&partition_module(&s[0]).unwrap()));
        let both = m_s_t(&s, &s).unwrap();
        let direct = intersect(&partition_module(&s[0]).unwrap(), &partition_module(&s[1]).unwrap()).unwrap();
        assert!(both.same_space(&direct));
        let one = m_s_t(&s, &s[..1]).unwrap();
        assert_eq!(one.dim() + both.dim(), 6);
    }
}
