//! Modified Macdonald polynomials `H̃_μ` and the `H̃` basis.
//!
//! Each `H̃_μ` is the unique symmetric function whose Schur coefficients `c_λ`
//! satisfy: `H̃_μ[X(1-q)]` is supported on `λ ≥ μ`, `H̃_μ[X(1-t)]` on
//! `λ ≥ μ'`, and `c_(n) = 1`. The system is solved exactly at integer points,
//! interpolated (q-degree ≤ n(μ'), t-degree ≤ n(μ)), and the interpolant is
//! then checked symbolically against all three conditions.

use super::tables::{tables, Tables};
use super::{Basis, SymFun};
use crate::diagrams::Partition;
use crate::error::{Error, Result};
use crate::qtfield::{QTPoly, QTScalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

static DEGREE_CAP: AtomicUsize = AtomicUsize::new(8);

/// Largest degree for which `H̃` tables are built.
pub fn degree_cap() -> usize {
    DEGREE_CAP.load(Ordering::Relaxed)
}

pub fn set_degree_cap(n: usize) {
    DEGREE_CAP.store(n, Ordering::Relaxed);
}

fn cache_dir_slot() -> &'static Mutex<Option<PathBuf>> {
    static DIR: OnceLock<Mutex<Option<PathBuf>>> = OnceLock::new();
    DIR.get_or_init(|| Mutex::new(std::env::var_os("QTATOMS_CACHE").map(PathBuf::from)))
}

/// Directory for persisted tables; `None` disables disk caching.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *cache_dir_slot().lock().unwrap() = dir;
}

pub fn cache_dir() -> Option<PathBuf> {
    cache_dir_slot().lock().unwrap().clone()
}

/// All `H̃_μ` for one degree.
pub struct HtildeTable {
    pub n: usize,
    /// `matrix[μ][λ] = K̃_{λμ}(q,t)`, indexed like [`Tables::parts`].
    pub matrix: Vec<Vec<QTScalar>>,
    /// `g[μ][λ]`: Schur coefficients of `H̃_μ[X(1-q)]`.
    pub g: Vec<Vec<QTScalar>>,
}

impl HtildeTable {
    pub fn htilde(&self, mu: &Partition) -> SymFun {
        let t = tables(self.n);
        let row = &self.matrix[t.idx(mu)];
        SymFun::from_coeffs(self.n, Basis::S, t.parts.iter().cloned().zip(row.iter().cloned())).expect("sizes agree")
    }

    /// Canonical text form: a version line, then one block per μ.
    pub fn to_text(&self) -> String {
        let t = tables(self.n);
        let mut s = format!("{} {}\n", TABLE_STAMP, self.n);
        for (i, mu) in t.parts.iter().enumerate() {
            s.push_str(&format!("mu {mu}\n"));
            for (j, lam) in t.parts.iter().enumerate() {
                if !self.matrix[i][j].is_zero() {
                    s.push_str(&format!("s{}: {}\n", lam, self.matrix[i][j]));
                }
            }
        }
        s
    }

    /// Parses [`HtildeTable::to_text`] output and re-verifies every entry.
    pub fn from_text(text: &str) -> Result<HtildeTable> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty table".into()))?;
        let n: usize = header
            .strip_prefix(TABLE_STAMP)
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad table header {header:?}")))?;
        let t = tables(n);
        let k = t.len();
        let mut matrix = vec![vec![QTScalar::zero(); k]; k];
        let mut cur: Option<usize> = None;
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(mu) = line.strip_prefix("mu ") {
                let p: Partition = mu.parse()?;
                cur = Some(*t.index.get(&p).ok_or_else(|| Error::Parse(format!("{p} not of size {n}")))?);
                continue;
            }
            let i = cur.ok_or_else(|| Error::Parse("entry before mu header".into()))?;
            let (lhs, rhs) = line.split_once(':').ok_or_else(|| Error::Parse(format!("bad line {line:?}")))?;
            let lam: Partition = lhs.trim().trim_start_matches('s').parse()?;
            let j = *t.index.get(&lam).ok_or_else(|| Error::Parse(format!("{lam} not of size {n}")))?;
            matrix[i][j] = rhs.trim().parse()?;
        }
        let polys: Vec<Vec<QTPoly>> = matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| {
                        if c.is_polynomial() {
                            Ok(c.num().clone())
                        } else {
                            Err(Error::Parse("non-polynomial coefficient".into()))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let pq = pleth_matrix_q(&t);
        for (i, row) in polys.iter().enumerate() {
            verify(&t, i, row, &pq)?;
        }
        Ok(assemble(n, &t, polys, &pq))
    }
}

const TABLE_STAMP: &str = "qtatoms-htilde-v1";

fn table_cache() -> &'static Mutex<HashMap<usize, Arc<HtildeTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<HtildeTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The shared table for degree `n`, built (or loaded) once.
pub fn htilde_table(n: usize) -> Result<Arc<HtildeTable>> {
    if n > degree_cap() {
        return Err(Error::Resource(format!("H̃ degree {n} exceeds cap {}", degree_cap())));
    }
    let mut cache = table_cache().lock().unwrap();
    if let Some(t) = cache.get(&n) {
        return Ok(t.clone());
    }
    let table = match cache_dir() {
        Some(dir) => crate::harness::cache::load_or_build_htilde(&dir, n, || build_table(n))?,
        None => build_table(n)?,
    };
    let table = Arc::new(table);
    cache.insert(n, table.clone());
    Ok(table)
}

/// `H̃_μ` in the Schur basis.
pub fn htilde(mu: &Partition) -> Result<SymFun> {
    Ok(htilde_table(mu.size())?.htilde(mu))
}

/// `K̃_{λμ}(q,t)`.
pub fn kostka_qt(lam: &Partition, mu: &Partition) -> Result<QTScalar> {
    if lam.size() != mu.size() {
        return Ok(QTScalar::zero());
    }
    let t = tables(mu.size());
    Ok(htilde_table(mu.size())?.matrix[t.idx(mu)][t.idx(lam)].clone())
}

/// Schur coefficients of `H̃_μ[X(1-q)]`.
pub fn g_table(n: usize) -> Result<Vec<Vec<QTScalar>>> {
    Ok(htilde_table(n)?.g.clone())
}

/// Coefficients of `f` in the `H̃` basis.
pub fn to_htilde(f: &SymFun) -> Result<BTreeMap<Partition, QTScalar>> {
    let n = f.degree();
    if f.basis() == Basis::Htilde {
        return Ok(f.coeffs().clone());
    }
    let s = f.to_basis(Basis::S)?;
    if s.is_zero() {
        return Ok(BTreeMap::new());
    }
    let t = tables(n);
    let ht = htilde_table(n)?;
    // f[X(1-q)] = Σ c_μ G_μ with G triangular in lex order
    let pq = pleth_matrix_q(&t);
    let k = t.len();
    let mut fq = vec![QTScalar::zero(); k];
    for (lam, c) in s.coeffs() {
        let l = t.idx(lam);
        for (kap, v) in fq.iter_mut().enumerate() {
            if !pq[l][kap].is_zero() {
                *v = v.add_ref(&c.mul_ref(&QTScalar::from_poly(pq[l][kap].clone())));
            }
        }
    }
    let mut c = vec![QTScalar::zero(); k];
    for kap in (0..k).rev() {
        let mut acc = fq[kap].clone();
        for mu in kap + 1..k {
            if !c[mu].is_zero() && !ht.g[mu][kap].is_zero() {
                acc = acc.sub_ref(&c[mu].mul_ref(&ht.g[mu][kap]));
            }
        }
        c[kap] = acc.div_ref(&ht.g[kap][kap])?;
    }
    Ok(t.parts.iter().cloned().zip(c).filter(|(_, v)| !v.is_zero()).collect())
}

/// `∇`, returned in the `H̃` basis.
pub fn nabla(f: &SymFun) -> Result<SymFun> {
    let c = to_htilde(f)?;
    SymFun::from_coeffs(f.degree(), Basis::Htilde, c.into_iter().map(|(mu, v)| {
        let w = mu.t_weight().to_scalar();
        (mu, v.mul_ref(&w))
    }))
}

/// `∇^{-1}`, returned in the `H̃` basis.
pub fn nabla_inverse(f: &SymFun) -> Result<SymFun> {
    let c = to_htilde(f)?;
    SymFun::from_coeffs(f.degree(), Basis::Htilde, c.into_iter().map(|(mu, v)| {
        let w = mu.t_weight().inv().to_scalar();
        (mu, v.mul_ref(&w))
    }))
}

/// `H̃_a H̃_b` expanded in the `H̃` basis.
pub fn product_in_htilde(a: &Partition, b: &Partition) -> Result<BTreeMap<Partition, QTScalar>> {
    to_htilde(&htilde(a)?.mul(&htilde(b)?)?)
}

// ---- construction ----

/// `pq[λ][κ]`: coefficient of `s_κ` in `s_λ[X(1-q)]`.
fn pleth_matrix_q(t: &Tables) -> Arc<Vec<Vec<QTPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Vec<QTPoly>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(m) = cache.lock().unwrap().get(&t.n) {
        return m.clone();
    }
    let k = t.len();
    let nfact: BigInt = (1..=t.n).fold(BigInt::one(), |a, b| a * BigInt::from(b));
    // w_ρ = (n!/z_ρ) ∏ (1 - q^{ρ_i})
    let w: Vec<QTPoly> = t
        .parts
        .iter()
        .enumerate()
        .map(|(r, rho)| {
            let mut p = QTPoly::constant(&nfact / &t.z[r]);
            for &part in rho.parts() {
                let f = QTPoly::one().sub(&QTPoly::monomial(part as u32, 0, BigInt::one()));
                p = p.mul(&f);
            }
            p
        })
        .collect();
    let mut m = vec![vec![QTPoly::zero(); k]; k];
    for l in 0..k {
        for kap in 0..k {
            let mut acc = QTPoly::zero();
            for r in 0..k {
                let c = t.chi[l][r] * t.chi[kap][r];
                if c != 0 {
                    acc = acc.add(&w[r].scale(&BigInt::from(c)));
                }
            }
            m[l][kap] = acc.div_int(&nfact);
        }
    }
    let m = Arc::new(m);
    cache.lock().unwrap().insert(t.n, m.clone());
    m
}

fn build_table(n: usize) -> Result<HtildeTable> {
    let t = tables(n);
    let k = t.len();
    let max_dq = t.parts.iter().map(|p| p.conjugate().n_stat()).max().unwrap_or(0);
    let max_dt = t.parts.iter().map(|p| p.n_stat()).max().unwrap_or(0);
    let (qvals, tvals) = sample_points(max_dq + 1, max_dt + 1);
    let qmats: Vec<Vec<Vec<BigInt>>> = qvals.iter().map(|z| pleth_matrix_at(&t, z)).collect();
    let tmats: Vec<Vec<Vec<BigInt>>> = tvals.iter().map(|z| pleth_matrix_at(&t, z)).collect();
    let pq = pleth_matrix_q(&t);
    let polys: Vec<Vec<QTPoly>> = (0..k)
        .map(|i| {
            let mu = &t.parts[i];
            let (dq, dt) = (mu.conjugate().n_stat(), mu.n_stat());
            // values[b][a] = solution at (qvals[a], tvals[b])
            let mut values: Vec<Vec<Vec<BigRational>>> = Vec::with_capacity(dt + 1);
            for tm in tmats.iter().take(dt + 1) {
                let mut row = Vec::with_capacity(dq + 1);
                for qm in qmats.iter().take(dq + 1) {
                    row.push(solve_point(&t, i, qm, tm)?);
                }
                values.push(row);
            }
            let coeffs = (0..k)
                .map(|lam| {
                    let grid: Vec<Vec<BigRational>> =
                        values.iter().map(|row| row.iter().map(|sol| sol[lam].clone()).collect()).collect();
                    interpolate_2d(&qvals[..=dq], &tvals[..=dt], &grid)
                })
                .collect::<Result<Vec<_>>>()?;
            verify(&t, i, &coeffs, &pq)?;
            Ok(coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(n, &t, polys, &pq))
}

fn assemble(n: usize, t: &Tables, polys: Vec<Vec<QTPoly>>, pq: &[Vec<QTPoly>]) -> HtildeTable {
    let k = t.len();
    let mut g = vec![vec![QTScalar::zero(); k]; k];
    for mu in 0..k {
        for kap in 0..k {
            let mut acc = QTPoly::zero();
            for lam in 0..k {
                if !polys[mu][lam].is_zero() && !pq[lam][kap].is_zero() {
                    acc = acc.add(&polys[mu][lam].mul(&pq[lam][kap]));
                }
            }
            g[mu][kap] = QTScalar::from_poly(acc);
        }
    }
    let matrix = polys.into_iter().map(|row| row.into_iter().map(QTScalar::from_poly).collect()).collect();
    HtildeTable { n, matrix, g }
}

/// Symbolic check of the three defining conditions.
fn verify(t: &Tables, i: usize, coeffs: &[QTPoly], pq: &[Vec<QTPoly>]) -> Result<()> {
    let mu = &t.parts[i];
    let muc = mu.conjugate();
    if !coeffs[0].is_one() {
        return Err(Error::Internal(format!("H̃_{mu}: coefficient of s_(n) is {}", coeffs[0])));
    }
    for (kap, lam) in t.parts.iter().enumerate() {
        let checks = [(lam.dominates(mu), false), (lam.dominates(&muc), true)];
        for (dominated, swap) in checks {
            if dominated {
                continue;
            }
            let mut acc = QTPoly::zero();
            for (l, c) in coeffs.iter().enumerate() {
                let p = if swap { pq[l][kap].swap() } else { pq[l][kap].clone() };
                if !c.is_zero() && !p.is_zero() {
                    acc = acc.add(&c.mul(&p));
                }
            }
            if !acc.is_zero() {
                return Err(Error::Internal(format!("H̃_{mu} fails triangularity at s_{lam}")));
            }
        }
    }
    Ok(())
}

/// Two disjoint lists of primes, so no `q0^a = t0^b` coincidences occur.
fn sample_points(nq: usize, nt: usize) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut primes = Vec::new();
    let mut c = 2u64;
    while primes.len() < 2 * nq.max(nt) {
        if (2..c).take_while(|d| d * d <= c).all(|d| c % d != 0) {
            primes.push(c);
        }
        c += 1;
    }
    let qv = primes.iter().step_by(2).take(nq).map(|&p| BigRational::from_integer(p.into())).collect();
    let tv = primes.iter().skip(1).step_by(2).take(nt).map(|&p| BigRational::from_integer(p.into())).collect();
    (qv, tv)
}

/// `n! · pq` at a numerical point (integer entries).
fn pleth_matrix_at(t: &Tables, z: &BigRational) -> Vec<Vec<BigInt>> {
    let k = t.len();
    let zi = z.to_integer();
    let nfact: BigInt = (1..=t.n).fold(BigInt::one(), |a, b| a * BigInt::from(b));
    let w: Vec<BigInt> = t
        .parts
        .iter()
        .enumerate()
        .map(|(r, rho)| {
            let mut v = &nfact / &t.z[r];
            for &part in rho.parts() {
                v *= BigInt::one() - num_traits::pow(zi.clone(), part);
            }
            v
        })
        .collect();
    (0..k)
        .map(|l| {
            (0..k)
                .map(|kap| {
                    let mut acc = BigInt::zero();
                    for r in 0..k {
                        let c = t.chi[l][r] * t.chi[kap][r];
                        if c != 0 {
                            acc += &w[r] * c;
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Solves the defining system for `H̃_{parts[i]}` at one point.
fn solve_point(t: &Tables, i: usize, qm: &[Vec<BigInt>], tm: &[Vec<BigInt>]) -> Result<Vec<BigRational>> {
    let k = t.len();
    let mu = &t.parts[i];
    let muc = mu.conjugate();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (kap, lam) in t.parts.iter().enumerate() {
        if !lam.dominates(mu) {
            let mut r: Vec<BigInt> = (0..k).map(|l| qm[l][kap].clone()).collect();
            r.push(BigInt::zero());
            rows.push(r);
        }
        if !lam.dominates(&muc) {
            let mut r: Vec<BigInt> = (0..k).map(|l| tm[l][kap].clone()).collect();
            r.push(BigInt::zero());
            rows.push(r);
        }
    }
    let mut norm = vec![BigInt::zero(); k + 1];
    norm[0] = BigInt::one();
    norm[k] = BigInt::one();
    rows.push(norm);
    solve_bareiss(rows, k).ok_or_else(|| Error::Internal(format!("H̃_{mu}: singular system at sample point")))
}

/// Fraction-free elimination of an overdetermined consistent system with a
/// unique solution; the last column is the right-hand side.
fn solve_bareiss(mut m: Vec<Vec<BigInt>>, k: usize) -> Option<Vec<BigRational>> {
    let rows = m.len();
    let mut prev = BigInt::one();
    for col in 0..k {
        let piv = (col..rows).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        for r in col + 1..rows {
            for j in col + 1..=k {
                let v = &m[r][j] * &m[col][col] - &m[r][col] * &m[col][j];
                m[r][j] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[col][col].clone();
    }
    if (k..rows).any(|r| !m[r][k].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for col in (0..k).rev() {
        let mut acc = BigRational::from_integer(m[col][k].clone());
        for j in col + 1..k {
            acc -= BigRational::from_integer(m[col][j].clone()) * &x[j];
        }
        x[col] = acc / BigRational::from_integer(m[col][col].clone());
    }
    Some(x)
}

/// Monomial coefficients of the interpolating polynomial.
fn interpolate_1d(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    // Horner expansion of the Newton form
    let mut coeffs = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // coeffs = coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); n];
        for d in 0..n {
            if coeffs[d].is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] += &coeffs[d];
            }
            next[d] -= &coeffs[d] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

/// `grid[b][a]` is the value at `(qs[a], ts[b])`.
fn interpolate_2d(qs: &[BigRational], ts: &[BigRational], grid: &[Vec<BigRational>]) -> Result<QTPoly> {
    let per_t: Vec<Vec<BigRational>> = grid.iter().map(|row| interpolate_1d(qs, row)).collect();
    let mut p = QTPoly::zero();
    for a in 0..qs.len() {
        let col: Vec<BigRational> = per_t.iter().map(|c| c[a].clone()).collect();
        let tc = interpolate_1d(ts, &col);
        for (b, c) in tc.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.is_integer() {
                return Err(Error::Internal("non-integral interpolated coefficient".into()));
            }
            p.add_term(a as u32, b as u32, c.to_integer());
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::partitions;
    use crate::qtfield::Subst;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn q(s: &str) -> QTScalar {
        s.parse().unwrap()
    }

    #[test]
    fn small_htilde() {
        assert_eq!(htilde(&p("[1]")).unwrap(), SymFun::s(&p("[1]")));
        let h2 = SymFun::from_coeffs(2, Basis::S, [(p("[2]"), q("1")), (p("[1,1]"), q("q"))]).unwrap();
        assert_eq!(htilde(&p("[2]")).unwrap(), h2);
        let h11 = SymFun::from_coeffs(2, Basis::S, [(p("[2]"), q("1")), (p("[1,1]"), q("t"))]).unwrap();
        assert_eq!(htilde(&p("[1,1]")).unwrap(), h11);
        let h21 = SymFun::from_coeffs(
            3,
            Basis::S,
            [(p("[3]"), q("1")), (p("[2,1]"), q("q+t")), (p("[1,1,1]"), q("q*t"))],
        )
        .unwrap();
        assert_eq!(htilde(&p("[2,1]")).unwrap(), h21);
    }

    #[test]
    fn htilde_properties() {
        let one = BigRational::one();
        for n in 1..=6 {
            for mu in partitions(n) {
                let h = htilde(&mu).unwrap();
                // q=t=1 gives h_1^n = Σ f_λ s_λ
                let v = h.eval_at(&one, &one).unwrap();
                for (lam, c) in v {
                    assert_eq!(c, BigRational::from_integer(lam.f_lambda().into()));
                }
                let swapped = htilde(&mu.conjugate()).unwrap().substitute(Subst::Swap).unwrap();
                assert_eq!(swapped, h);
                let down = h.down().unwrap().scale(&mu.t_weight().to_scalar());
                assert_eq!(down, h);
                let hb = SymFun::basis_elem(Basis::Htilde, &mu);
                assert_eq!(hb.to_basis(Basis::S).unwrap(), h);
                assert_eq!(h.to_basis(Basis::Htilde).unwrap(), hb);
            }
        }
    }

    #[test]
    fn nabla_examples() {
        let h21 = htilde(&p("[2,1]")).unwrap();
        let n = nabla(&h21).unwrap();
        assert_eq!(n, SymFun::basis_elem(Basis::Htilde, &p("[2,1]")).scale(&q("q*t")));
        let s1 = SymFun::s(&p("[1]"));
        assert!(nabla(&s1).unwrap().equals(&s1).unwrap());
        let h2 = htilde(&p("[2]")).unwrap();
        assert!(nabla(&h2).unwrap().equals(&h2.scale(&q("q"))).unwrap());
        let h = htilde(&p("[3,1]")).unwrap();
        let twice = nabla(&nabla(&h).unwrap()).unwrap();
        assert!(twice.equals(&h.scale(&q("q^6*t^2"))).unwrap());
        assert!(nabla_inverse(&nabla(&h).unwrap()).unwrap().equals(&h).unwrap());
    }

    #[test]
    fn table_text_round_trip() {
        let t = htilde_table(4).unwrap();
        let back = HtildeTable::from_text(&t.to_text()).unwrap();
        assert_eq!(back.matrix, t.matrix);
        assert!(HtildeTable::from_text("garbage").is_err());
    }
}
