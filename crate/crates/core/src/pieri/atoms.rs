//! Atom characteristics `A^x`, `A^y`, `Ξ` built from the conjectured `C`,
//! their closed forms, and the crucial and flip identities.

use super::conj::{c_or_zero, hole_weight, shadow_set, Route};
use super::hsum;
use super::phi::{one_minus_nabla, phi};
use crate::diagrams::{corner_data, shadow, Cell, Partition};
use crate::error::{domain, Result};
use crate::harmonics::{kernel_and_atom, Axis};
use crate::qtfield::{Mono, QTScalar};
use crate::symfunc::SymFun;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomsQt {
    pub ax: SymFun,
    pub ay: SymFun,
    pub xi: SymFun,
}

pub fn atoms_qt(mu: &Partition, c: Cell) -> Result<AtomsQt> {
    atoms_qt_with(mu, c, Route::ShadowPieri)
}

/// `A^x = C_{ij} - tC_{i+1,j} - C_{i,j+1} + tC_{i+1,j+1}`, `A^y` with q on
/// the other axis, and `Ξ = A^x/q^a`.
pub fn atoms_qt_with(mu: &Partition, c: Cell, route: Route) -> Result<AtomsQt> {
    let (a, _, _, _) = mu.arm_leg(c)?;
    let at = |dr: usize, dc: usize| c_or_zero(mu, Cell::new(c.row + dr, c.col + dc), route);
    let (c00, c10, c01, c11) = (at(0, 0)?, at(1, 0)?, at(0, 1)?, at(1, 1)?);
    let (q, t) = (QTScalar::q(), QTScalar::t());
    let ax = c00.sub(&c10.scale(&t))?.sub(&c01)?.add(&c11.scale(&t))?;
    let ay = c00.sub(&c01.scale(&q))?.sub(&c10)?.add(&c11.scale(&q))?;
    let xi = ax.scale(&Mono::q_pow(-(a as i64)).to_scalar());
    Ok(AtomsQt { ax, ay, xi })
}

/// `t^l A^x - q^a A^y`.
pub fn crucial_residual(mu: &Partition, c: Cell, at: &AtomsQt) -> Result<SymFun> {
    let (a, l, _, _) = mu.arm_leg(c)?;
    at.ax.scale(&Mono::t_pow(l as i64).to_scalar()).sub(&at.ay.scale(&Mono::q_pow(a as i64).to_scalar()))
}

/// `A^x - T_{μ/ij} ↓A^y`.
pub fn flip_residual(mu: &Partition, c: Cell, at: &AtomsQt) -> Result<SymFun> {
    at.ax.sub(&at.ay.down()?.scale(&hole_weight(mu, c).to_scalar()))
}

/// `∏_{s=1..m-1}(1-∇u_s/T_{μ/ij}) φ^{(m)}`.
pub fn xi_product(mu: &Partition, c: Cell) -> Result<SymFun> {
    let f = shadow(mu, c)?;
    let big_t = hole_weight(mu, c).to_scalar();
    let mut g = phi(&shadow_set(&f), f.m)?;
    for u in &f.u[1..f.m] {
        g = one_minus_nabla(&g, &u.to_scalar().div_ref(&big_t)?)?;
    }
    Ok(g)
}

/// `Σ_s ∏_{r=1..m-1}(x_s-u_r)/∏_{r≠s}(x_s-x_r) H̃_{α(s)}`.
pub fn xi_sum(mu: &Partition, c: Cell) -> Result<SymFun> {
    let f = shadow(mu, c)?;
    xi_from_weights(&f.x, &f.u[1..f.m], &shadow_set(&f))
}

/// The sum form of `Ξ` for explicitly given corner weights `x_1..x_m`,
/// inner weights `u_1..u_{m-1}` and partitions `α(1..m)`.
pub fn xi_from_weights(x: &[Mono], u: &[Mono], alphas: &[Partition]) -> Result<SymFun> {
    let m = x.len();
    if m == 0 || alphas.len() != m || u.len() + 1 != m {
        return domain("need m corner weights, m-1 inner weights and m partitions");
    }
    let n = alphas[0].size();
    let mut terms = Vec::with_capacity(m);
    for s in 0..m {
        let xs = x[s].to_scalar();
        let mut c = QTScalar::one();
        for ur in u {
            c = c.mul_ref(&xs.sub_ref(&ur.to_scalar()));
        }
        for (r, xr) in x.iter().enumerate() {
            if r != s {
                c = c.div_ref(&xs.sub_ref(&xr.to_scalar()))?;
            }
        }
        terms.push((alphas[s].clone(), c));
    }
    hsum(n, terms)
}

/// Cells of μ grouped by the corners `i..=j` (1-based, northwest first)
/// lying in their shadow.
pub fn rectangles(mu: &Partition) -> Result<BTreeMap<(usize, usize), Vec<Cell>>> {
    let f = corner_data(mu)?;
    let m = f.m;
    let cols: Vec<i64> = std::iter::once(-1).chain(f.corners.iter().map(|c| c.col as i64)).collect();
    let rows: Vec<i64> = f.corners.iter().map(|c| c.row as i64).chain(std::iter::once(-1)).collect();
    let mut out = BTreeMap::new();
    for i in 1..=m {
        for j in i..=m {
            let cells: Vec<Cell> = mu
                .cells()
                .into_iter()
                .filter(|c| {
                    let (r, k) = (c.row as i64, c.col as i64);
                    cols[i - 1] < k && k <= cols[i] && rows[j] < r && r <= rows[j - 1]
                })
                .collect();
            out.insert((i, j), cells);
        }
    }
    Ok(out)
}

/// For each rectangle, whether `Ξ` is the same at all of its cells.
pub fn rectangle_constancy(mu: &Partition) -> Result<Vec<((usize, usize), bool)>> {
    let mut out = Vec::new();
    for (key, cells) in rectangles(mu)? {
        let mut first: Option<SymFun> = None;
        let mut same = true;
        for c in cells {
            let xi = atoms_qt(mu, c)?.xi;
            match &first {
                None => first = Some(xi),
                Some(f) => same &= *f == xi,
            }
        }
        out.push((key, same));
    }
    Ok(out)
}

/// Brute-force atom characteristics of `M_{μ/ij}` against `A^x`, `A^y`.
pub fn brute_atoms_match(mu: &Partition, c: Cell) -> Result<(bool, bool)> {
    let at = atoms_qt(mu, c)?;
    let (_, fx) = kernel_and_atom(mu, c, Axis::X)?;
    let (_, fy) = kernel_and_atom(mu, c, Axis::Y)?;
    Ok((fx.to_symfun().equals(&at.ax)?, fy.to_symfun().equals(&at.ay)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::partitions;
    use crate::qtfield::parse_scalar;
    use crate::symfunc::Basis;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn two(a: &str, ca: &str, b: &str, cb: &str) -> SymFun {
        let n = p(a).size();
        hsum(n, [(p(a), parse_scalar(ca).unwrap()), (p(b), parse_scalar(cb).unwrap())]).unwrap()
    }

    #[test]
    fn worked_examples() {
        let xi = atoms_qt(&p("[3,2,1]"), Cell::new(1, 0)).unwrap().xi;
        assert_eq!(xi, two("[3,2]", "(1-t)/(q-t)", "[3,1,1]", "(q-1)/(q-t)"));
        let xi = atoms_qt(&p("[2,2,1]"), Cell::new(0, 0)).unwrap().xi;
        assert_eq!(xi, two("[2,2]", "(1-t)/(q-t)", "[2,1,1]", "(q-1)/(q-t)"));
        let xi = atoms_qt(&p("[3,2]"), Cell::new(1, 1)).unwrap().xi;
        assert_eq!(xi, SymFun::basis_elem(Basis::Htilde, &p("[3,1]")));
    }

    #[test]
    fn identities_and_closed_forms() {
        for n in 1..=6 {
            for mu in partitions(n) {
                for c in mu.cells() {
                    let at = atoms_qt(&mu, c).unwrap();
                    assert!(crucial_residual(&mu, c, &at).unwrap().is_zero(), "{mu} {c}");
                    assert!(flip_residual(&mu, c, &at).unwrap().is_zero(), "{mu} {c}");
                    assert_eq!(at.xi, xi_sum(&mu, c).unwrap(), "{mu} {c}");
                    assert!(at.xi.equals(&xi_product(&mu, c).unwrap()).unwrap(), "{mu} {c}");
                    if n > 1 {
                        assert!(super::super::conj::specializes_to_regular(&at.ax, 1).unwrap(), "{mu} {c}");
                    }
                }
                assert!(rectangle_constancy(&mu).unwrap().iter().all(|(_, ok)| *ok), "{mu}");
            }
        }
    }

    #[test]
    fn rectangles_tile() {
        let mu = p("[4,2,1]");
        let r = rectangles(&mu).unwrap();
        let mut all: Vec<Cell> = r.values().flatten().copied().collect();
        all.sort();
        assert_eq!(all, mu.cells());
        assert_eq!(r[&(1, 3)], vec![Cell::new(0, 0)]);
        assert_eq!(r[&(3, 3)].len(), 2);
    }

    #[test]
    fn brute_force_small() {
        for mu in [p("[2,1]"), p("[2,2]"), p("[3,1]")] {
            for c in mu.cells() {
                assert_eq!(brute_atoms_match(&mu, c).unwrap(), (true, true), "{mu} {c}");
            }
        }
    }
}
