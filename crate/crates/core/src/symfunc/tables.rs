//! Per-degree combinatorial tables: characters, Kostka numbers, transitions.

use crate::diagrams::{partitions, Partition};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Tables for one degree `n`, indexed by `parts` (decreasing lex order).
pub struct Tables {
    pub n: usize,
    pub parts: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    /// `chi[λ][ρ]`: irreducible character λ on cycle type ρ.
    pub chi: Vec<Vec<i64>>,
    pub z: Vec<BigInt>,
    /// `kostka[λ][μ]`: semistandard tableaux of shape λ and content μ.
    pub kostka: Vec<Vec<i64>>,
    /// Inverse of `kostka` (integer, unitriangular).
    pub kostka_inv: Vec<Vec<i64>>,
    /// Index of the conjugate partition.
    pub conj: Vec<usize>,
}

impl Tables {
    fn build(n: usize) -> Tables {
        let parts = partitions(n);
        let index: HashMap<Partition, usize> = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let k = parts.len();
        let mut chi = vec![vec![0i64; k]; k];
        for (a, lam) in parts.iter().enumerate() {
            for (b, rho) in parts.iter().enumerate() {
                chi[a][b] = mn_character(lam, rho);
            }
        }
        let z = parts.iter().map(|p| BigInt::from(p.z_lambda())).collect();
        let mut memo = HashMap::new();
        let mut kostka = vec![vec![0i64; k]; k];
        for (a, lam) in parts.iter().enumerate() {
            for (b, mu) in parts.iter().enumerate() {
                kostka[a][b] = kostka_number(lam, mu.parts(), &mut memo);
            }
        }
        let kostka_inv = invert_integer(&kostka);
        let conj = parts.iter().map(|p| index[&p.conjugate()]).collect();
        Tables { n, parts, index, chi, z, kostka, kostka_inv, conj }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn idx(&self, p: &Partition) -> usize {
        self.index[p]
    }
}

/// Shared tables for degree `n`, built once.
pub fn tables(n: usize) -> Arc<Tables> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Tables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(Tables::build(n));
    cache.lock().unwrap().entry(n).or_insert(t).clone()
}

/// Murnaghan–Nakayama rule via beta-numbers.
pub fn mn_character(lam: &Partition, rho: &Partition) -> i64 {
    fn go(beta: &mut Vec<i64>, rho: &[usize]) -> i64 {
        let Some((&k, rest)) = rho.split_first() else {
            return 1;
        };
        let k = k as i64;
        let mut total = 0;
        for i in 0..beta.len() {
            let b = beta[i];
            let nb = b - k;
            if nb < 0 || beta.contains(&nb) {
                continue;
            }
            let between = beta.iter().filter(|&&x| x > nb && x < b).count();
            beta[i] = nb;
            let v = go(beta, rest);
            beta[i] = b;
            total += if between % 2 == 0 { v } else { -v };
        }
        total
    }
    if lam.size() != rho.size() {
        return 0;
    }
    let l = lam.len();
    let mut beta: Vec<i64> = (0..l).map(|i| (lam.row(i) + l - 1 - i) as i64).collect();
    go(&mut beta, rho.parts())
}

/// Number of semistandard tableaux of shape `lam` with content `mu`.
pub fn kostka_number(lam: &Partition, mu: &[usize], memo: &mut HashMap<(Partition, Vec<usize>), i64>) -> i64 {
    if lam.size() != mu.iter().sum::<usize>() {
        return 0;
    }
    let Some((&last, rest)) = mu.split_last() else {
        return if lam.is_empty() { 1 } else { 0 };
    };
    let key = (lam.clone(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    // strip a horizontal strip of size `last`
    let mut total = 0;
    let l = lam.len();
    let mut nu = vec![0usize; l];
    fn strips(
        lam: &Partition,
        i: usize,
        left: usize,
        nu: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if i == lam.len() {
            if left == 0 {
                out.push(Partition::from_unsorted(nu.clone()));
            }
            return;
        }
        let lo = lam.row(i + 1);
        let hi = lam.row(i);
        for v in lo..=hi {
            let take = hi - v;
            if take > left {
                continue;
            }
            nu[i] = v;
            strips(lam, i + 1, left - take, nu, out);
        }
    }
    let mut cands = Vec::new();
    strips(lam, 0, last, &mut nu, &mut cands);
    for nu in cands {
        total += kostka_number(&nu, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Inverse of an integer matrix with integer inverse (unitriangular input).
fn invert_integer(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = invert_rational(&a.iter().map(|row| row.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect::<Vec<_>>())
        .expect("Kostka matrix is invertible");
    r.iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    assert!(v.is_integer());
                    i64::try_from(v.to_integer()).expect("small integer")
                })
                .collect()
        })
        .collect()
}

/// Gauss–Jordan inverse over Q.
pub fn invert_rational(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let k = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..k {
        let piv = (col..k).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..k {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (v, p) in m[r].iter_mut().zip(pivot_row.iter()) {
                    *v -= &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[k..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn characters() {
        assert_eq!(mn_character(&p("[2]"), &p("[2]")), 1);
        assert_eq!(mn_character(&p("[1,1]"), &p("[2]")), -1);
        assert_eq!(mn_character(&p("[2,1]"), &p("[1,1,1]")), 2);
        assert_eq!(mn_character(&p("[2,1]"), &p("[3]")), -1);
        assert_eq!(mn_character(&p("[2,1]"), &p("[2,1]")), 0);
        for n in 1..=7 {
            let t = tables(n);
            // column orthogonality: Σ_λ χ^λ(ρ)^2 = z_ρ
            for b in 0..t.len() {
                let s: i64 = (0..t.len()).map(|a| t.chi[a][b] * t.chi[a][b]).sum();
                assert_eq!(BigInt::from(s), t.z[b]);
            }
            // χ^λ(1^n) = f_λ
            let id = t.idx(&Partition::new(vec![1; n]).unwrap());
            for a in 0..t.len() {
                assert_eq!(t.chi[a][id] as u128, t.parts[a].f_lambda());
            }
        }
    }

    #[test]
    fn kostka_small() {
        let t = tables(3);
        let (a, b, c) = (t.idx(&p("[3]")), t.idx(&p("[2,1]")), t.idx(&p("[1,1,1]")));
        assert_eq!(t.kostka[b][c], 2);
        assert_eq!(t.kostka[a][c], 1);
        assert_eq!(t.kostka[c][a], 0);
        assert_eq!(t.kostka[b][b], 1);
        let t4 = tables(4);
        assert_eq!(t4.kostka[t4.idx(&p("[2,2]"))][t4.idx(&p("[2,1,1]"))], 1);
        assert_eq!(t4.kostka[t4.idx(&p("[3,1]"))][t4.idx(&p("[2,1,1]"))], 2);
    }
}
