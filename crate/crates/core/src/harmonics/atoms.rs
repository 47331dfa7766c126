//! Kernels of `D_x`, `D_y` on hole modules, the atoms between nested
//! kernels, alternants, and the decomposition checks built on flips.

use super::subspace::{flip_image, flip_preimage_space, intersect, perp_within, sum};
use super::{frobenius, hole_determinant, hole_module, partition_module, BigradedBasis, Echelon, FrobSeries};
use crate::diagrams::{next_permutation, Cell, Partition};
use crate::error::{domain, Error, Result};
use crate::exactpoly::{perm_sign, MPoly};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    /// `D_x` or `D_y`.
    pub fn apply(self, p: &MPoly) -> MPoly {
        match self {
            Axis::X => p.polarize(1, 0),
            Axis::Y => p.polarize(0, 1),
        }
        .expect("h+k = 1")
    }

    /// The cell whose kernel is nested inside this one: `(i, j+1)` for x,
    /// `(i+1, j)` for y.
    pub fn nested(self, c: Cell) -> Cell {
        match self {
            Axis::X => Cell::new(c.row, c.col + 1),
            Axis::Y => Cell::new(c.row + 1, c.col),
        }
    }

    /// The cell `D` maps the hole to: `(i+1, j)` for x, `(i, j+1)` for y.
    pub fn target(self, c: Cell) -> Cell {
        match self {
            Axis::X => Cell::new(c.row + 1, c.col),
            Axis::Y => Cell::new(c.row, c.col + 1),
        }
    }
}

impl std::str::FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            _ => Err(Error::Parse(format!("axis must be x or y, got {s:?}"))),
        }
    }
}

/// Kernel of `D_x` or `D_y` on `M_{μ/ij}`.
pub fn kernel(mu: &Partition, c: Cell, axis: Axis) -> Result<BigradedBasis> {
    let m = hole_module(mu, c)?;
    let comps: BTreeMap<(u32, u32), Echelon> =
        m.components().iter().map(|(bd, e)| (*bd, e.kernel(|p| axis.apply(p)))).collect();
    Ok(BigradedBasis::from_components(m.n(), comps))
}

/// The kernel `K_{ij}` and the characteristic of the atom
/// `A = K_{ij} / K_{nested}`, where the nested kernel is empty outside μ.
pub fn kernel_and_atom(mu: &Partition, c: Cell, axis: Axis) -> Result<(BigradedBasis, FrobSeries)> {
    let k = kernel(mu, c, axis)?;
    let fk = frobenius(&k)?;
    let nc = axis.nested(c);
    if !mu.contains(nc) {
        return Ok((k, fk));
    }
    let inner = kernel(mu, nc, axis)?;
    if !inner.is_subspace_of(&k) {
        return Err(Error::Internal(format!("nested kernel at {nc} escapes the kernel at {c}")));
    }
    let a = fk.sub(&frobenius(&inner)?);
    if !a.is_nonnegative() {
        return Err(Error::Internal(format!("atom of {mu}/{c} has negative multiplicities")));
    }
    Ok((k, a))
}

/// An explicit complement of the nested kernel inside the kernel, taken
/// apolar-orthogonal.
pub fn atom_complement(mu: &Partition, c: Cell, axis: Axis) -> Result<BigradedBasis> {
    let k = kernel(mu, c, axis)?;
    let nc = axis.nested(c);
    if !mu.contains(nc) {
        return Ok(k);
    }
    perp_within(&k, &kernel(mu, nc, axis)?)
}

/// Basis of the sign-isotypic part of an invariant space.
pub fn alternant_basis(b: &BigradedBasis) -> Result<Vec<MPoly>> {
    let n = b.n();
    if n > 6 {
        return Err(Error::Resource(format!("antisymmetrizing over S_{n}")));
    }
    let mut perms = Vec::new();
    let mut sigma: Vec<usize> = (0..n).collect();
    loop {
        perms.push((sigma.clone(), perm_sign(&sigma)));
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    let mut out = BigradedBasis::new(n);
    for row in b.basis() {
        let mut acc = MPoly::zero(n);
        for (s, sign) in &perms {
            let moved = row.act_unchecked(s);
            acc = if *sign > 0 { acc.add(&moved) } else { acc.sub(&moved) };
        }
        out.insert(&acc);
    }
    Ok(out.basis().cloned().collect())
}

/// Whether killing the last variable pair in a basis of `M_μ` gives a basis
/// of `M_{μ/00}`.
pub fn restriction_check(mu: &Partition) -> Result<bool> {
    if mu.is_empty() {
        return domain("restriction of the empty partition");
    }
    let full = partition_module(mu)?;
    let hole = hole_module(mu, Cell::new(0, 0))?;
    let n = hole.n();
    let mut span = BigradedBasis::new(n);
    let mut count = 0;
    for b in full.basis() {
        let r = b.kill_pair(n).with_pairs(n)?;
        if !hole.contains(&r) {
            return Ok(false);
        }
        count += 1;
        span.insert(&r);
    }
    Ok(count == hole.dim() && span.dim() == hole.dim())
}

/// Per-bidegree report of the two kernel decompositions of `M_{μ/ij}`
/// under `D = D_x` or `D_y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipDecomposition {
    /// `M_Δ = M_Δ̃ ⊕⊥ flip⁻¹K` holds.
    pub orthogonal: bool,
    /// `M_Δ ∩ M_Δ̃^⊥ = flip⁻¹K` holds.
    pub complement_is_preimage: bool,
    /// `M_Δ = flip(M_Δ̃) ⊕ K` holds.
    pub flipped: bool,
}

impl FlipDecomposition {
    pub fn holds(&self) -> bool {
        self.orthogonal && self.complement_is_preimage && self.flipped
    }
}

pub fn flip_decomposition(mu: &Partition, c: Cell, axis: Axis) -> Result<FlipDecomposition> {
    let delta = hole_determinant(mu, c)?;
    let m = hole_module(mu, c)?;
    let tilde = axis.apply(&delta);
    let mt = if tilde.is_zero() { BigradedBasis::new(m.n()) } else { super::derivative_span(&tilde)? };
    let k = kernel(mu, c, axis)?;
    let pre_k = flip_preimage_space(&delta, &m, &k)?;
    let dims_add = |a: &BigradedBasis, b: &BigradedBasis| {
        let mut d = a.dims();
        for (bd, v) in b.dims() {
            *d.entry(bd).or_insert(0) += v;
        }
        d
    };
    let orth = intersect(&mt, &pre_k)?.is_empty()
        && mt.basis().all(|u| pre_k.basis().all(|v| num_traits::Zero::is_zero(&u.apolar(v).unwrap())))
        && sum(&mt, &pre_k)?.same_space(&m)
        && dims_add(&mt, &pre_k) == m.dims();
    let comp = perp_within(&m, &mt)?.same_space(&pre_k);
    let fm = if mt.is_empty() { mt.clone() } else { flip_image(&delta, &mt)? };
    let flipped = intersect(&fm, &k)?.is_empty() && sum(&fm, &k)?.same_space(&m) && dims_add(&fm, &k) == m.dims();
    Ok(FlipDecomposition { orthogonal: orth, complement_is_preimage: comp, flipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::SymFun;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn alternants() {
        let m = partition_module(&p("[2,1]")).unwrap();
        let alt = alternant_basis(&m).unwrap();
        assert_eq!(alt.len(), 1);
        let mu = p("[2,2]");
        let alt = alternant_basis(&hole_module(&mu, Cell::new(0, 0)).unwrap()).unwrap();
        assert_eq!(alt.len(), 4);
        let span = BigradedBasis::from_polys(3, alt.iter());
        for c in mu.cells() {
            if c != Cell::new(0, 0) {
                assert!(span.contains(&hole_determinant(&mu, c).unwrap()));
            }
        }
    }

    #[test]
    fn kernels_and_atoms() {
        // one-column shape: x-atom is the module of the one-column shape below it
        let mu = p("[1,1,1]");
        let (_, a) = kernel_and_atom(&mu, Cell::new(1, 0), Axis::X).unwrap();
        let m = frobenius(&partition_module(&p("[1,1]")).unwrap()).unwrap();
        assert_eq!(a, m);
        let mu = p("[2,2]");
        let (_, ax) = kernel_and_atom(&mu, Cell::new(0, 0), Axis::X).unwrap();
        let (_, ay) = kernel_and_atom(&mu, Cell::new(0, 0), Axis::Y).unwrap();
        let t = crate::qtfield::QTScalar::t();
        let q = crate::qtfield::QTScalar::q();
        let lhs: SymFun = ax.to_symfun().scale(&t);
        assert!(lhs.equals(&ay.to_symfun().scale(&q)).unwrap());
        assert!(atom_complement(&mu, Cell::new(0, 0), Axis::X).unwrap().dim() > 0);
    }

    #[test]
    fn restriction_and_flips() {
        for mu in [p("[2,1]"), p("[2,2]"), p("[3,1]")] {
            assert!(restriction_check(&mu).unwrap(), "{mu}");
        }
        for c in p("[2,2]").cells() {
            for axis in [Axis::X, Axis::Y] {
                assert!(flip_decomposition(&p("[2,2]"), c, axis).unwrap().holds(), "{c} {axis:?}");
            }
        }
    }
}
