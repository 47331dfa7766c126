//! Lattice determinants, their derivative spans, and the bigraded modules
//! built from them.

pub mod atoms;
pub mod frobenius;
pub mod linalg;
pub mod subspace;

pub use atoms::{alternant_basis, kernel, kernel_and_atom, restriction_check, Axis};
pub use frobenius::{check_invariant, cycle_representative, frobenius, FrobSeries};
pub use linalg::Echelon;
pub use subspace::{flip_image, flip_preimage, intersect, m_s_t, perp_within, sum};

use crate::diagrams::{next_permutation, Cell, LatticeDiagram, Partition};
use crate::error::{domain, Error, Result};
use crate::exactpoly::{parse_mpoly, perm_sign, Exp, MPoly, Var, MAX_PAIRS};
use crate::qtfield::QTPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// `Δ_L = det ‖x_i^{p_j} y_i^{q_j} / (p_j! q_j!)‖`, cells in lex order.
pub fn lattice_determinant(l: &LatticeDiagram) -> Result<MPoly> {
    let cells = l.cells();
    let n = cells.len();
    if n > MAX_PAIRS {
        return Err(Error::Resource(format!("{n} cells exceeds {MAX_PAIRS} variable pairs")));
    }
    let mut norm = BigInt::one();
    for c in cells {
        norm *= factorial(c.row) * factorial(c.col);
    }
    let coef = BigRational::new(BigInt::one(), norm);
    let neg = -coef.clone();
    let mut out = MPoly::zero(n);
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut xs = vec![0u32; n];
    let mut ys = vec![0u32; n];
    loop {
        for (c, &v) in cells.iter().zip(&sigma) {
            xs[v] = c.row as u32;
            ys[v] = c.col as u32;
        }
        let c = if perm_sign(&sigma) > 0 { coef.clone() } else { neg.clone() };
        out.add_term(Exp::from_slices(&xs, &ys), c);
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    Ok(out)
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, b| a * b)
}

/// Echelonized bases of a bigraded subspace, one per bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedBasis {
    n: usize,
    comps: BTreeMap<(u32, u32), Echelon>,
}

impl BigradedBasis {
    pub fn new(n: usize) -> Self {
        BigradedBasis { n, comps: BTreeMap::new() }
    }

    /// Span of the bihomogeneous parts of the given polynomials.
    pub fn from_polys<'a>(n: usize, it: impl IntoIterator<Item = &'a MPoly>) -> Self {
        let mut b = BigradedBasis::new(n);
        for p in it {
            b.insert(p);
        }
        b
    }

    pub(crate) fn from_components(n: usize, comps: BTreeMap<(u32, u32), Echelon>) -> Self {
        BigradedBasis { n, comps: comps.into_iter().filter(|(_, e)| !e.is_empty()).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &BTreeMap<(u32, u32), Echelon> {
        &self.comps
    }

    pub fn component(&self, r: u32, s: u32) -> Option<&Echelon> {
        self.comps.get(&(r, s))
    }

    pub fn dim(&self) -> usize {
        self.comps.values().map(Echelon::dim).sum()
    }

    pub fn dims(&self) -> BTreeMap<(u32, u32), usize> {
        self.comps.iter().map(|(&k, e)| (k, e.dim())).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    /// All basis elements, bidegree by bidegree.
    pub fn basis(&self) -> impl Iterator<Item = &MPoly> {
        self.comps.values().flat_map(|e| e.rows().iter())
    }

    /// Adds every bihomogeneous component of `p`; returns whether the span grew.
    pub fn insert(&mut self, p: &MPoly) -> bool {
        let mut grew = false;
        for (bd, part) in p.components() {
            grew |= self.comps.entry(bd).or_insert_with(|| Echelon::new(self.n)).insert(&part);
        }
        grew
    }

    pub fn contains(&self, p: &MPoly) -> bool {
        p.components().iter().all(|(bd, part)| self.comps.get(bd).is_some_and(|e| e.contains(part)))
    }

    pub fn is_subspace_of(&self, other: &BigradedBasis) -> bool {
        self.comps.iter().all(|(bd, e)| other.comps.get(bd).is_some_and(|o| e.is_subspace_of(o)))
    }

    /// Same subspace (echelon forms are canonical up to row order).
    pub fn same_space(&self, other: &BigradedBasis) -> bool {
        self.dims() == other.dims() && self.is_subspace_of(other)
    }

    /// `Σ t^r q^s dim H_{r,s}`.
    pub fn hilbert(&self) -> QTPoly {
        QTPoly::from_terms(self.comps.iter().map(|(&(r, s), e)| ((s, r), BigInt::from(e.dim()))))
    }

    /// Whether every first partial of every basis element stays in the span.
    pub fn is_derivative_closed(&self) -> bool {
        self.basis().all(|b| {
            (0..self.n).all(|i| {
                [Var::X(i), Var::Y(i)].into_iter().all(|v| b.diff(v, 1).map(|d| self.contains(&d)).unwrap_or(false))
            })
        })
    }

    /// Line format: `basis n <n>`, then `bidegree r s` headers each followed
    /// by one polynomial per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("basis n {}\n", self.n);
        for (&(r, d), e) in &self.comps {
            s.push_str(&format!("bidegree {r} {d}\n"));
            for row in e.sorted_rows() {
                s.push_str(&format!("{row}\n"));
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<BigradedBasis> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let head = lines.next().ok_or_else(|| Error::Parse("empty basis text".into()))?;
        let n: usize = head
            .strip_prefix("basis n ")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad basis header {head:?}")))?;
        let mut out = BigradedBasis::new(n);
        let mut current: Option<(u32, u32)> = None;
        for line in lines {
            if let Some(rest) = line.strip_prefix("bidegree ") {
                let v: Vec<u32> = rest.split_whitespace().map(|x| x.parse()).collect::<std::result::Result<_, _>>().map_err(|e| Error::Parse(format!("{line:?}: {e}")))?;
                if v.len() != 2 {
                    return Err(Error::Parse(format!("bad bidegree line {line:?}")));
                }
                current = Some((v[0], v[1]));
                continue;
            }
            let bd = current.ok_or_else(|| Error::Parse("polynomial before bidegree header".into()))?;
            let p = parse_mpoly(line, n)?;
            if p.is_zero() || p.components().keys().any(|&k| k != bd) {
                return Err(Error::Parse(format!("polynomial not of bidegree {bd:?}: {line}")));
            }
            out.insert(&p);
        }
        Ok(out)
    }
}

/// All partial derivatives of `p`, bidegree by bidegree.
pub fn derivative_span(p: &MPoly) -> Result<BigradedBasis> {
    if p.is_zero() {
        return domain("derivative span of the zero polynomial");
    }
    let n = p.n();
    let mut comps: BTreeMap<(u32, u32), Echelon> = BTreeMap::new();
    for (bd, part) in p.components() {
        comps.entry(bd).or_insert_with(|| Echelon::new(n)).insert(&part);
    }
    let top = comps.keys().map(|&(r, s)| r + s).max().unwrap_or(0);
    // single-step partials, one total degree at a time
    for d in (1..=top).rev() {
        let level: Vec<(u32, u32)> = comps.keys().copied().filter(|&(r, s)| r + s == d).collect();
        for (r, s) in level {
            let rows = comps[&(r, s)].rows().to_vec();
            for row in &rows {
                for i in 0..n {
                    if r > 0 {
                        let dp = row.diff(Var::X(i), 1)?;
                        if !dp.is_zero() {
                            comps.entry((r - 1, s)).or_insert_with(|| Echelon::new(n)).insert(&dp);
                        }
                    }
                    if s > 0 {
                        let dp = row.diff(Var::Y(i), 1)?;
                        if !dp.is_zero() {
                            comps.entry((r, s - 1)).or_insert_with(|| Echelon::new(n)).insert(&dp);
                        }
                    }
                }
            }
        }
    }
    Ok(BigradedBasis::from_components(n, comps))
}

/// `M_L`, memoized per diagram.
pub fn module_of(l: &LatticeDiagram) -> Result<Arc<BigradedBasis>> {
    static CACHE: OnceLock<Mutex<HashMap<LatticeDiagram, Arc<BigradedBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().unwrap().get(l) {
        return Ok(b.clone());
    }
    let b = Arc::new(derivative_span(&lattice_determinant(l)?)?);
    Ok(cache.lock().unwrap().entry(l.clone()).or_insert(b).clone())
}

/// `M_μ`.
pub fn partition_module(mu: &Partition) -> Result<Arc<BigradedBasis>> {
    module_of(&LatticeDiagram::of_partition(mu))
}

/// `M_{μ/ij}`.
pub fn hole_module(mu: &Partition, c: Cell) -> Result<Arc<BigradedBasis>> {
    module_of(&LatticeDiagram::hole(mu, c)?)
}

/// `Δ_{μ/ij}`.
pub fn hole_determinant(mu: &Partition, c: Cell) -> Result<MPoly> {
    lattice_determinant(&LatticeDiagram::hole(mu, c)?)
}

/// `Σ t^r q^s dim H_{r,s}[B]`.
pub fn hilbert(b: &BigradedBasis) -> QTPoly {
    b.hilbert()
}

/// `D_{hk}Δ_L − Σ_i ε(L↓^i_{hk}) Δ_{L↓^i_{hk}}`; zero when the moved-cell
/// expansion holds.
pub fn moved_cell_residual(l: &LatticeDiagram, h: u32, k: u32) -> Result<MPoly> {
    let lhs = lattice_determinant(l)?.polarize(h, k)?;
    let cells = l.cells();
    let mut rhs = MPoly::zero(cells.len());
    for i in 0..cells.len() {
        let Some(moved) = moved_cell_term(cells, i, h as usize, k as usize)? else { continue };
        rhs = rhs.add(&moved);
    }
    Ok(lhs.sub(&rhs))
}

fn moved_cell_term(cells: &[Cell], i: usize, h: usize, k: usize) -> Result<Option<MPoly>> {
    let c = cells[i];
    if c.row < h || c.col < k {
        return Ok(None);
    }
    let mut list = cells.to_vec();
    list[i] = Cell::new(c.row - h, c.col - k);
    let mut order: Vec<usize> = (0..list.len()).collect();
    order.sort_by_key(|&a| list[a]);
    if order.windows(2).any(|w| list[w[0]] == list[w[1]]) {
        return Ok(None);
    }
    let sign = perm_sign(&order);
    let d = lattice_determinant(&LatticeDiagram::new(list)?)?;
    Ok(Some(if sign > 0 { d } else { d.neg() }))
}

/// Sign `ε` with `D_{hk}Δ_{μ/ij} = ε Δ_{μ/i+h,j+k}`, or `None` when the
/// target cell lies outside μ (then the derivative vanishes).
pub fn hole_shift_sign(mu: &Partition, c: Cell, h: usize, k: usize) -> Result<Option<i32>> {
    let lhs = hole_determinant(mu, c)?.polarize(h as u32, k as u32)?;
    let target = Cell::new(c.row + h, c.col + k);
    if !mu.contains(target) {
        if !lhs.is_zero() {
            return Err(Error::Internal(format!("D_{h}{k} of {mu}/{c} should vanish")));
        }
        return Ok(None);
    }
    let d = hole_determinant(mu, target)?;
    if lhs == d {
        Ok(Some(1))
    } else if lhs == d.neg() {
        Ok(Some(-1))
    } else {
        Err(Error::Internal(format!("D_{h}{k} of {mu}/{c} is not ±Δ_{mu}/{target}")))
    }
}

/// Sign predicted from the cells of μ strictly between the hole and its
/// target in lex order: `(−1)^count`.
pub fn hole_shift_parity(mu: &Partition, c: Cell, h: usize, k: usize) -> i32 {
    let target = Cell::new(c.row + h, c.col + k);
    let between = mu.cells().into_iter().filter(|&d| c < d && d < target).count();
    if between % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Whether `D_x^h D_y^k` and `D_{hk}` both map `M_{μ/ij}` onto `M_{μ/i+h,j+k}`.
pub fn shift_is_onto(mu: &Partition, c: Cell, h: u32, k: u32) -> Result<bool> {
    let target = Cell::new(c.row + h as usize, c.col + k as usize);
    if !mu.contains(target) {
        return domain(format!("{target} not in {mu}"));
    }
    let src = hole_module(mu, c)?;
    let dst = hole_module(mu, target)?;
    let n = src.n();
    let mut via_powers = BigradedBasis::new(n);
    let mut via_hk = BigradedBasis::new(n);
    for b in src.basis() {
        let mut p = b.clone();
        for _ in 0..h {
            p = p.polarize(1, 0)?;
        }
        for _ in 0..k {
            p = p.polarize(0, 1)?;
        }
        via_powers.insert(&p);
        if h + k > 0 {
            via_hk.insert(&b.polarize(h, k)?);
        }
    }
    if h + k == 0 {
        via_hk = via_powers.clone();
    }
    Ok(via_powers.same_space(&dst) && via_hk.same_space(&dst))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mpoly(s: &str, n: usize) -> MPoly {
        parse_mpoly(s, n).unwrap()
    }

    fn diag(cells: &[(usize, usize)]) -> LatticeDiagram {
        LatticeDiagram::new(cells.iter().map(|&(r, c)| Cell::new(r, c)).collect()).unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(lattice_determinant(&diag(&[(0, 0), (1, 0)])).unwrap(), mpoly("x2 - x1", 2));
        assert_eq!(lattice_determinant(&diag(&[(0, 0), (0, 1)])).unwrap(), mpoly("y2 - y1", 2));
        assert_eq!(lattice_determinant(&diag(&[])).unwrap(), MPoly::one(0));
        // Vandermonde with 1/(0!1!2!) normalization
        let v = lattice_determinant(&LatticeDiagram::of_partition(&p("[1,1,1]"))).unwrap();
        let expect = mpoly("x2*x3^2 - x2^2*x3 - x1*x3^2 + x1^2*x3 + x1*x2^2 - x1^2*x2", 3)
            .scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(v, expect);
    }

    #[test]
    fn determinant_alternates() {
        let d = lattice_determinant(&LatticeDiagram::of_partition(&p("[2,1]"))).unwrap();
        assert_eq!(d.bidegree(), Some((1, 1)));
        assert_eq!(d.diagonal_act(&[1, 0, 2]).unwrap(), d.neg());
        assert_eq!(d.diagonal_act(&[1, 2, 0]).unwrap(), d);
    }

    #[test]
    fn spans_and_hilbert() {
        let b = derivative_span(&mpoly("x2 - x1", 2)).unwrap();
        assert_eq!(b.dims(), BTreeMap::from([((0, 0), 1), ((1, 0), 1)]));
        assert_eq!(b.hilbert(), QTPoly::from_terms([((0, 0), 1.into()), ((0, 1), 1.into())]));
        let one = derivative_span(&MPoly::one(2)).unwrap();
        assert_eq!(one.dims(), BTreeMap::from([((0, 0), 1)]));
        assert!(derivative_span(&MPoly::zero(2)).is_err());
        let m21 = partition_module(&p("[2,1]")).unwrap();
        assert_eq!(m21.dim(), 6);
        assert!(m21.is_derivative_closed());
        let h = m21.hilbert();
        assert_eq!(h.fmt_poly(), QTPoly::from_terms([((0, 0), 1.into()), ((1, 0), 2.into()), ((0, 1), 2.into()), ((1, 1), 1.into())]).fmt_poly());
        assert_eq!(partition_module(&p("[1,1]")).unwrap().hilbert(), QTPoly::from_terms([((0, 0), 1.into()), ((0, 1), 1.into())]));
        assert_eq!(partition_module(&p("[2]")).unwrap().hilbert(), QTPoly::from_terms([((0, 0), 1.into()), ((1, 0), 1.into())]));
    }

    #[test]
    fn n_factorial_small() {
        for n in 1..=4 {
            for mu in crate::diagrams::partitions(n) {
                let m = partition_module(&mu).unwrap();
                assert_eq!(m.dim() as u128, (1..=n as u128).product::<u128>(), "{mu}");
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let m = partition_module(&p("[2,1]")).unwrap();
        let back = BigradedBasis::from_text(&m.to_text()).unwrap();
        assert!(back.same_space(&m));
        assert!(BigradedBasis::from_text("basis n 2\nx1").is_err());
        assert!(BigradedBasis::from_text("basis n 2\nbidegree 0 1\nx1").is_err());
    }

    #[test]
    fn moved_cells() {
        let l = diag(&[(0, 0), (0, 2), (1, 1)]);
        for (h, k) in [(1, 0), (0, 1), (1, 1), (0, 2), (2, 0)] {
            assert!(moved_cell_residual(&l, h, k).unwrap().is_zero());
        }
        let mu = p("[2]");
        assert_eq!(hole_shift_sign(&mu, Cell::new(0, 0), 0, 1).unwrap(), Some(1));
        assert_eq!(hole_shift_parity(&mu, Cell::new(0, 0), 0, 1), 1);
        assert_eq!(hole_shift_sign(&mu, Cell::new(0, 0), 1, 0).unwrap(), None);
        assert!(shift_is_onto(&p("[2,2]"), Cell::new(0, 0), 1, 1).unwrap());
    }
}
