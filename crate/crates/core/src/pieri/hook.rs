//! Identities for hook shapes `μ = (n+1-k, 1^k)`: atom characteristics,
//! Pieri expansions, Hilbert recursion, products of one-row and one-column
//! polynomials, and the module decompositions behind them.

use super::atoms::atoms_qt;
use super::conj::{conjectured_c, Route};
use crate::diagrams::{corner_data, Cell, LatticeDiagram, Partition};
use crate::error::{domain, Error, Result};
use crate::exactpoly::MPoly;
use crate::harmonics::{
    derivative_span, frobenius, hole_determinant, hole_module, kernel_and_atom, lattice_determinant, partition_module,
    Axis, BigradedBasis,
};
use crate::qtfield::{Mono, QTScalar};
use crate::symfunc::{htilde, over_one_minus, Basis, SymFun};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;

pub fn hook(n: usize, k: usize) -> Result<Partition> {
    if k > n {
        return domain(format!("no hook (n+1-k,1^k) with n={n}, k={k}"));
    }
    let mut parts = vec![n + 1 - k];
    parts.extend(std::iter::repeat(1).take(k));
    Partition::new(parts)
}

/// `(z;z)_k h_k[X/(1-z)]`, the one-row (`z = q`) or one-column (`z = t`) polynomial.
pub fn one_line(k: usize, z: &QTScalar) -> Result<SymFun> {
    let hk = SymFun::basis_elem(Basis::H, &Partition::new(vec![k])?);
    let mut c = QTScalar::one();
    for i in 1..=k {
        c = c.mul_ref(&QTScalar::one().sub_ref(&z.pow(i as i64)?));
    }
    Ok(hk.plethystic_scale(over_one_minus(z.clone()))?.scale(&c))
}

/// `H̃_{1^k} H̃_{n-k}` from the closed forms, in the Schur basis.
pub fn column_row_product(n: usize, k: usize) -> Result<SymFun> {
    match (k, n - k) {
        (0, r) => one_line(r, &QTScalar::q()),
        (c, 0) => one_line(c, &QTScalar::t()),
        (c, r) => one_line(c, &QTScalar::t())?.mul(&one_line(r, &QTScalar::q())?),
    }
}

fn bracket(z: &QTScalar, k: usize) -> Result<QTScalar> {
    let mut s = QTScalar::zero();
    for i in 0..k {
        s = s.add_ref(&z.pow(i as i64)?);
    }
    Ok(s)
}

fn bracket_factorial(z: &QTScalar, k: usize) -> Result<QTScalar> {
    let mut s = QTScalar::one();
    for i in 1..=k {
        s = s.mul_ref(&bracket(z, i)?);
    }
    Ok(s)
}

/// `F_λ = Σ_ν K̃_{νλ} f_ν`, the Hilbert series of `H̃_λ`.
pub fn hilbert_of(lam: &Partition) -> Result<QTScalar> {
    let mut acc = QTScalar::zero();
    for (nu, c) in htilde(lam)?.coeffs() {
        acc = acc.add_ref(&c.mul_ref(&QTScalar::from_bigint(BigInt::from(nu.f_lambda()))));
    }
    Ok(acc)
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |a, i| a * (n - i) as i64 / (i + 1) as i64)
}

/// Hooks `(n-k, 1^k)` of size `n` for `k = 0..n-1`, computed from the
/// one-row polynomial by solving the product identity for the next hook.
pub fn hook_recursion(n: usize) -> Result<Vec<(Partition, SymFun)>> {
    if n == 0 {
        return domain("hooks of size 0");
    }
    let mut out = vec![(Partition::new(vec![n])?, one_line(n, &QTScalar::q())?)];
    for k in 1..n {
        let tk = QTScalar::t().pow(k as i64)?;
        let qq = QTScalar::q().pow((n - k) as i64)?;
        let d = tk.sub_ref(&qq);
        let prev = &out[k - 1].1;
        let rhs = column_row_product(n, k)?.scale(&d).sub(&prev.scale(&tk.sub_ref(&QTScalar::one())))?;
        let next = rhs.scale(&QTScalar::one().sub_ref(&qq).inv()?);
        out.push((hook(n - 1, k)?, next));
    }
    Ok(out)
}

/// Outcome of the hook checks for one `(n, k)`.
#[derive(Clone, Debug, Default)]
pub struct HookReport {
    pub n: usize,
    pub k: usize,
    /// `A^x_{00} = q^{n-k} H̃_{1^k} H̃_{n-k}`.
    pub x_atom: bool,
    /// `A^y_{00} = t^k H̃_{1^k} H̃_{n-k}`.
    pub y_atom: bool,
    /// `C_{μ/00} = ∂_{p_1} H̃_μ`, and the module characteristic when brute force ran.
    pub c_is_h: bool,
    pub pieri_a: bool,
    pub pieri_b: bool,
    pub hilbert: bool,
    pub product: bool,
    pub product_from_c: bool,
    pub recursion: bool,
    pub closed_pieri: bool,
    pub corner_weights: bool,
    /// Dimension and directness checks of the module decompositions.
    pub decompositions: Option<bool>,
}

impl HookReport {
    pub fn holds(&self) -> bool {
        self.x_atom
            && self.y_atom
            && self.c_is_h
            && self.pieri_a
            && self.pieri_b
            && self.hilbert
            && self.product
            && self.product_from_c
            && self.recursion
            && self.closed_pieri
            && self.corner_weights
            && self.decompositions != Some(false)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let items = [
            ("x_atom", self.x_atom),
            ("y_atom", self.y_atom),
            ("c_is_h", self.c_is_h),
            ("pieri_a", self.pieri_a),
            ("pieri_b", self.pieri_b),
            ("hilbert", self.hilbert),
            ("product", self.product),
            ("product_from_c", self.product_from_c),
            ("recursion", self.recursion),
            ("closed_pieri", self.closed_pieri),
            ("corner_weights", self.corner_weights),
            ("decompositions", self.decompositions != Some(false)),
        ];
        items.iter().filter(|(_, ok)| !ok).map(|(k, _)| *k).collect()
    }
}

/// Runs every hook identity for `μ = (n+1-k, 1^k)`. Module-level checks run
/// when `n+1 <= brute_cap`.
pub fn hook_suite(n: usize, k: usize, brute_cap: usize) -> Result<HookReport> {
    let mu = hook(n, k)?;
    let (q, t) = (QTScalar::q(), QTScalar::t());
    let qq = q.pow((n - k) as i64)?;
    let tk = t.pow(k as i64)?;
    let alpha = if k >= 1 { Some(hook(n - 1, k - 1)?) } else { None };
    let beta = if n > k { Some(Partition::new(std::iter::once(n - k).chain(std::iter::repeat(1).take(k)).collect())?) } else { None };
    let h = |p: &Option<Partition>| -> Result<SymFun> {
        match p {
            Some(p) => htilde(p),
            None => Ok(SymFun::zero(n, Basis::S)),
        }
    };
    let (ha, hb) = (h(&alpha)?, h(&beta)?);
    let hh = column_row_product(n, k)?;
    let brute = n < brute_cap;
    let mut r = HookReport { n, k, ..Default::default() };

    let at = atoms_qt(&mu, Cell::new(0, 0))?;
    r.x_atom = at.ax.equals(&hh.scale(&qq))?;
    r.y_atom = at.ay.equals(&hh.scale(&tk))?;

    let dp = htilde(&mu)?.dp1()?;
    r.c_is_h = conjectured_c(&mu, Cell::new(0, 0), Route::ShadowPieri)?.equals(&dp)?;
    if brute {
        let fm = frobenius(&*partition_module(&mu)?)?.to_symfun();
        let (_, fx) = kernel_and_atom(&mu, Cell::new(0, 0), Axis::X)?;
        r.c_is_h &= fm.equals(&htilde(&mu)?)?;
        r.x_atom &= fx.to_symfun().equals(&hh.scale(&qq))?;
    }

    // dp1 expansions read off the two decompositions
    let a_side = ha.scale(&t.mul_ref(&bracket(&t, k)?));
    let pa = a_side.add(&hh.scale(&qq))?.add(&hb.scale(&bracket(&q, n - k)?))?;
    r.pieri_a = pa.equals(&dp)?;
    let b_side = hb.scale(&q.mul_ref(&bracket(&q, n - k)?));
    let pb = ha.scale(&bracket(&t, k)?).add(&hh.scale(&tk))?.add(&b_side)?;
    r.pieri_b = pb.equals(&dp)?;

    // Hilbert recursion
    let f = |p: &Option<Partition>| p.as_ref().map_or(Ok(QTScalar::zero()), hilbert_of);
    let mid = qq
        .mul_ref(&QTScalar::from_int(binomial(n, k)))
        .mul_ref(&bracket_factorial(&t, k)?)
        .mul_ref(&bracket_factorial(&q, n - k)?);
    let rec = t.mul_ref(&bracket(&t, k)?).mul_ref(&f(&alpha)?).add_ref(&mid).add_ref(&bracket(&q, n - k)?.mul_ref(&f(&beta)?));
    let fmu = hilbert_of(&mu)?;
    let total: BigInt = (1..=n as u64 + 1).map(BigInt::from).product();
    let one = BigRational::one();
    r.hilbert = rec == fmu && fmu.eval_at(&one, &one)? == BigRational::from_integer(total);
    let hh_hilbert = {
        let mut acc = QTScalar::zero();
        for (nu, c) in hh.to_basis(Basis::S)?.coeffs() {
            acc = acc.add_ref(&c.mul_ref(&QTScalar::from_bigint(BigInt::from(nu.f_lambda()))));
        }
        acc
    };
    r.hilbert &= hh_hilbert.mul_ref(&qq) == mid;

    // product of a column and a row
    if let (Some(_), Some(_)) = (&alpha, &beta) {
        let d = tk.sub_ref(&qq);
        let ca = tk.sub_ref(&QTScalar::one()).div_ref(&d)?;
        let cb = QTScalar::one().sub_ref(&qq).div_ref(&d)?;
        r.product = hh.equals(&ha.scale(&ca).add(&hb.scale(&cb))?)?;
        let c_of = |p: &Partition| -> Result<SymFun> {
            if brute && p.size() <= 5 {
                Ok(frobenius(&*partition_module(p)?)?.to_symfun())
            } else {
                htilde(p)
            }
        };
        let (cal, cbe) = (c_of(alpha.as_ref().unwrap())?, c_of(beta.as_ref().unwrap())?);
        r.product_from_c = hh.equals(&cal.scale(&ca).add(&cbe.scale(&cb))?)?;
    } else {
        // one side is empty: the product is a single polynomial
        let only = if alpha.is_none() { &hb } else { &ha };
        r.product = hh.equals(only)?;
        r.product_from_c = r.product;
    }

    // the recursion for hooks of size n, solved hook by hook
    r.recursion = true;
    for (lam, c) in hook_recursion(n)? {
        r.recursion &= c.equals(&htilde(&lam)?)?;
    }

    // closed Pieri expansion of a hook
    let mut closed = SymFun::zero(n, Basis::S);
    if let Some(a) = &alpha {
        let c = qq.sub_ref(&t.pow(k as i64 + 1)?).div_ref(&qq.sub_ref(&tk))?.mul_ref(&bracket(&t, k)?);
        closed = closed.add(&htilde(a)?.scale(&c))?;
    }
    if let Some(b) = &beta {
        let c = tk.sub_ref(&q.pow((n + 1 - k) as i64)?).div_ref(&tk.sub_ref(&qq))?.mul_ref(&bracket(&q, n - k)?);
        closed = closed.add(&htilde(b)?.scale(&c))?;
    }
    r.closed_pieri = closed.equals(&dp)?;

    // corner weights of a two-corner hook
    let cd = corner_data(&mu)?;
    r.corner_weights = if cd.m == 2 {
        cd.x == vec![Mono::t_pow(k as i64), Mono::q_pow((n - k) as i64)] && cd.u[1] == Mono::ONE
    } else {
        cd.m == 1
    };

    if brute {
        r.decompositions = Some(decompositions_hold(n, k)?);
    }
    Ok(r)
}

/// `{p(∂)Δ : p ∈ m}`.
fn images(m: &BigradedBasis, delta: &MPoly) -> Result<BigradedBasis> {
    let mut out = BigradedBasis::new(m.n());
    for p in m.basis() {
        out.insert(&p.apply_operator(delta)?);
    }
    Ok(out)
}

/// Vandermonde span in the x (or y) variables of `set`, inside `n` pairs.
fn vandermonde_span(n: usize, set: &[usize], y_side: bool) -> Result<BigradedBasis> {
    if set.is_empty() {
        return Ok(BigradedBasis::from_polys(n, [&MPoly::one(n)]));
    }
    let k = set.len();
    let cells: Vec<Cell> = (0..k).map(|i| if y_side { Cell::new(0, i) } else { Cell::new(i, 0) }).collect();
    let v = lattice_determinant(&LatticeDiagram::new(cells)?)?.with_pairs(n)?;
    let mut sigma: Vec<usize> = set.to_vec();
    sigma.extend((0..n).filter(|i| !set.contains(i)));
    derivative_span(&v.diagonal_act(&sigma)?)
}

/// `⊕_{S,T} (∏ prefactor) M_{1^k}[X(S)] M_{n-k}[Y(T)]`; the prefactor is
/// `∏_{j∈T} y_j` for `x_side`, else `∏_{i∈S} x_i`.
pub fn product_module(n: usize, k: usize, x_side: bool) -> Result<BigradedBasis> {
    let mut out = BigradedBasis::new(n);
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize != k {
            continue;
        }
        let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let t: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        let (mut xs, mut ys) = (vec![0u32; n], vec![0u32; n]);
        if x_side {
            t.iter().for_each(|&j| ys[j] = 1);
        } else {
            s.iter().for_each(|&i| xs[i] = 1);
        }
        let pre = MPoly::monomial(n, &xs, &ys, BigRational::one());
        let vx = vandermonde_span(n, &s, false)?;
        let vy = vandermonde_span(n, &t, true)?;
        for a in vx.basis() {
            let pa = pre.mul(a);
            for b in vy.basis() {
                out.insert(&pa.mul(b));
            }
        }
    }
    Ok(out)
}

/// Whether the bigraded dimensions of `inner` and `outer` add up to those
/// of `whole`, with the `inner` summands independent subspaces of it. The
/// product summands `outer` are compared by dimension only; they need not
/// lie in `whole` (for μ = (3), `y_1y_2` belongs to the product module).
fn direct_sum_is(whole: &BigradedBasis, inner: &[BigradedBasis], outer: Option<&BigradedBasis>) -> Result<bool> {
    let mut span = BigradedBasis::new(whole.n());
    let mut dims: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    let mut total = 0;
    for p in inner {
        if !p.is_subspace_of(whole) {
            return Ok(false);
        }
        total += p.dim();
        for b in p.basis() {
            span.insert(b);
        }
    }
    for p in inner.iter().chain(outer) {
        for (k, d) in p.dims() {
            *dims.entry(k).or_default() += d;
        }
    }
    dims.retain(|_, d| *d > 0);
    let mut want = whole.dims();
    want.retain(|_, d| *d > 0);
    Ok(span.dim() == total && dims == want)
}

/// The direct sum decompositions of `M_{μ/00}`, `M_{μ/i0}` and `M_{μ/0j}`,
/// and the characteristics of the two product modules.
pub fn decompositions_hold(n: usize, k: usize) -> Result<bool> {
    let mu = hook(n, k)?;
    let alpha = if k >= 1 { Some(partition_module(&hook(n - 1, k - 1)?)?) } else { None };
    let beta = if n > k {
        Some(partition_module(&Partition::new(std::iter::once(n - k).chain(std::iter::repeat(1).take(k)).collect())?)?)
    } else {
        None
    };
    let along = |m: &Option<std::sync::Arc<BigradedBasis>>, cells: Vec<Cell>| -> Result<Vec<BigradedBasis>> {
        let Some(m) = m else {
            return if cells.is_empty() { Ok(vec![]) } else { Err(Error::Internal("missing predecessor".into())) };
        };
        cells.into_iter().map(|c| images(m, &hole_determinant(&mu, c)?)).collect()
    };
    let whole = hole_module(&mu, Cell::new(0, 0))?;
    let xm = product_module(n, k, true)?;
    let ym = product_module(n, k, false)?;
    let hh = column_row_product(n, k)?;
    let mut ok = frobenius(&xm)?.to_symfun().equals(&hh.scale(&QTScalar::q().pow((n - k) as i64)?))?
        && frobenius(&ym)?.to_symfun().equals(&hh.scale(&QTScalar::t().pow(k as i64)?))?;

    let mut a = along(&alpha, (0..k).map(|i| Cell::new(i, 0)).collect())?;
    a.extend(along(&beta, (1..=n - k).map(|j| Cell::new(0, j)).collect())?);
    ok &= direct_sum_is(&whole, &a, Some(&xm))?;

    let mut b = along(&alpha, (1..=k).map(|i| Cell::new(i, 0)).collect())?;
    b.extend(along(&beta, (0..n - k).map(|j| Cell::new(0, j)).collect())?);
    ok &= direct_sum_is(&whole, &b, Some(&ym))?;

    if alpha.is_some() {
        for i in 1..=k {
            let parts = along(&alpha, (i..=k).map(|r| Cell::new(r, 0)).collect())?;
            ok &= direct_sum_is(&*hole_module(&mu, Cell::new(i, 0))?, &parts, None)?;
        }
    }
    if beta.is_some() {
        for j in 1..=n - k {
            let parts = along(&beta, (j..=n - k).map(|s| Cell::new(0, s)).collect())?;
            ok &= direct_sum_is(&*hole_module(&mu, Cell::new(0, j))?, &parts, None)?;
        }
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qtfield::parse_scalar;
    use crate::pieri::hsum;

    #[test]
    fn column_times_row() {
        // H̃_1 H̃_1 = (t-1)/(t-q) H̃_2 + (1-q)/(t-q) H̃_11
        let lhs = column_row_product(2, 1).unwrap();
        let p = |s: &str| -> Partition { s.parse().unwrap() };
        let rhs = hsum(
            2,
            [(p("[2]"), parse_scalar("(t-1)/(t-q)").unwrap()), (p("[1,1]"), parse_scalar("(1-q)/(t-q)").unwrap())],
        )
        .unwrap();
        assert!(lhs.equals(&rhs).unwrap());
        assert!(one_line(3, &QTScalar::q()).unwrap().equals(&htilde(&p("[3]")).unwrap()).unwrap());
        assert!(one_line(3, &QTScalar::t()).unwrap().equals(&htilde(&p("[1,1,1]")).unwrap()).unwrap());
    }

    #[test]
    fn small_hooks() {
        for n in 1..=4 {
            for k in 0..=n {
                let r = hook_suite(n, k, 4).unwrap();
                assert!(r.holds(), "n={n} k={k}: {:?}", r.failures());
            }
        }
        assert!(hook(2, 3).is_err());
    }
}
