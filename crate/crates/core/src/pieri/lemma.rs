//! The interpolation identity behind the `e_k` form of `C_{μ/ij}`.

use crate::diagrams::{shadow, Cell, Partition};
use crate::error::{domain, Result};
use crate::qtfield::{Mono, QTScalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check(xs: &[QTScalar], us: &[QTScalar]) -> Result<()> {
    if xs.len() < 2 || xs.len() != us.len() {
        return domain("need x_0..x_m and u_0..u_m with m >= 1");
    }
    let px = xs.iter().fold(QTScalar::one(), |a, x| a.mul_ref(x));
    let pu = us.iter().fold(QTScalar::one(), |a, u| a.mul_ref(u));
    if px != pu {
        return domain("x_0···x_m differs from u_0···u_m");
    }
    for (i, a) in xs.iter().enumerate().skip(1) {
        if a.is_zero() {
            return domain(format!("x_{i} is zero"));
        }
        if xs[i + 1..].contains(a) {
            return domain(format!("x_{i} is repeated"));
        }
    }
    Ok(())
}

/// `(∏_s(1-zu_s) - ∏_s(1-zx_s))/z`.
pub fn lemma12_rhs(xs: &[QTScalar], us: &[QTScalar], z: &QTScalar) -> Result<QTScalar> {
    let prod = |v: &[QTScalar]| v.iter().fold(QTScalar::one(), |a, w| a.mul_ref(&QTScalar::one().sub_ref(&z.mul_ref(w))));
    prod(us).sub_ref(&prod(xs)).div_ref(z)
}

/// `Σ_{s=1..m} x_s^{-1} ∏_{r=0..m}(x_s-u_r)/∏_{r≠s}(x_s-x_r) · ∏_{r≠s}(1-zx_r)`,
/// with `r` in the last two products running over `1..m`.
pub fn lemma12_lhs(xs: &[QTScalar], us: &[QTScalar], z: &QTScalar) -> Result<QTScalar> {
    let m = xs.len() - 1;
    let one = QTScalar::one();
    let mut acc = QTScalar::zero();
    for s in 1..=m {
        let mut term = one.div_ref(&xs[s])?;
        for u in us {
            term = term.mul_ref(&xs[s].sub_ref(u));
        }
        for r in (1..=m).filter(|&r| r != s) {
            term = term.div_ref(&xs[s].sub_ref(&xs[r]))?;
            term = term.mul_ref(&one.sub_ref(&z.mul_ref(&xs[r])));
        }
        acc = acc.add_ref(&term);
    }
    Ok(acc)
}

/// Left minus right side; fails unless the products agree and
/// `x_1..x_m` are distinct and nonzero.
pub fn lemma12_residual(xs: &[QTScalar], us: &[QTScalar], z: &QTScalar) -> Result<QTScalar> {
    check(xs, us)?;
    Ok(lemma12_lhs(xs, us, z)?.sub_ref(&lemma12_rhs(xs, us, z)?))
}

/// Degree in `q` of the right side when `z = q` and the `x`, `u` are free
/// of `q`; `None` if it is not a polynomial in `q`.
pub fn rhs_degree_in_z(xs: &[QTScalar], us: &[QTScalar]) -> Result<Option<u32>> {
    check(xs, us)?;
    if xs.iter().chain(us).any(|v| v.num().deg_q() > 0 || v.den().deg_q() > 0) {
        return domain("weights must not involve q");
    }
    let r = lemma12_rhs(xs, us, &QTScalar::q())?;
    Ok((r.den().deg_q() == 0).then(|| r.num().deg_q()))
}

/// One seeded instance: weights `c·t^k` with `x_0` fixed by the product
/// constraint and `x_1..x_m` distinct.
pub fn random_instance(rng: &mut impl Rng, m: usize) -> (Vec<QTScalar>, Vec<QTScalar>) {
    let draw = |rng: &mut dyn rand::RngCore| {
        let mut c: i64 = rng.gen_range(-4..=4);
        if c == 0 {
            c = 5;
        }
        QTScalar::from_int(c).mul_mono(Mono::t_pow(rng.gen_range(0..=2)))
    };
    let us: Vec<QTScalar> = (0..=m).map(|_| draw(rng)).collect();
    let mut xs = vec![QTScalar::zero()];
    while xs.len() <= m {
        let x = draw(rng);
        if !xs[1..].contains(&x) {
            xs.push(x);
        }
    }
    let pu = us.iter().fold(QTScalar::one(), |a, u| a.mul_ref(u));
    let px = xs[1..].iter().fold(QTScalar::one(), |a, x| a.mul_ref(x));
    xs[0] = pu.div_ref(&px).expect("nonzero weights");
    (xs, us)
}

/// Outcome of one seeded instance.
#[derive(Clone, Debug)]
pub struct LemmaInstance {
    pub m: usize,
    pub zero: bool,
    pub degree_ok: bool,
}

/// Instance `index` of the stream seeded by `seed`; `m = 1 + index mod 4`.
pub fn lemma12_instance(seed: u64, index: usize) -> Result<LemmaInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let m = 1 + index % 4;
    let (xs, us) = random_instance(&mut rng, m);
    let z = QTScalar::from_int(rng.gen_range(1..=9)).div_ref(&QTScalar::from_int(rng.gen_range(1..=9)))?;
    let zero = lemma12_residual(&xs, &us, &z)?.is_zero() && lemma12_residual(&xs, &us, &QTScalar::q())?.is_zero();
    let degree_ok = matches!(rhs_degree_in_z(&xs, &us)?, Some(d) if (d as usize) < m);
    Ok(LemmaInstance { m, zero, degree_ok })
}

pub fn lemma12_campaign(seed: u64, count: usize) -> Result<Vec<LemmaInstance>> {
    (0..count).map(|i| lemma12_instance(seed, i)).collect()
}

/// The identity at the corner weights of `μ/c`, with `z` given.
pub fn lemma12_at_cell(mu: &Partition, c: Cell, z: &QTScalar) -> Result<QTScalar> {
    let f = shadow(mu, c)?;
    let mut xs = vec![f.x0.to_scalar()];
    xs.extend(f.x.iter().map(|x| x.to_scalar()));
    let us: Vec<QTScalar> = f.u.iter().map(|u| u.to_scalar()).collect();
    lemma12_residual(&xs, &us, z)
}
