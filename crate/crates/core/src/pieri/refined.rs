//! Characteristics of the ε-refined atoms and the refined crucial and flip
//! identities they satisfy.

use super::atoms::atoms_qt;
use super::conj::{hole_weight, shadow_set};
use super::phi::phi;
use crate::diagrams::{shadow, Cell, EpsilonWord, Partition, ShadowFrame};
use crate::error::{domain, Result};
use crate::qtfield::Mono;
use crate::symfunc::SymFun;

fn check_word(f: &ShadowFrame, w: &EpsilonWord) -> Result<usize> {
    if w.len() != f.m {
        return domain(format!("word {w} has length {}, shadow has {} corners", w.len(), f.m));
    }
    let k = w.weight();
    if k == 0 {
        return domain("word with no set bits");
    }
    Ok(k)
}

/// `T_μ/(t^{i-1}q^j) · φ^{(m+1-k)} / ∏_s (T_{α(s)} t^{v_s})^{ε_s}`.
pub fn refined_x(mu: &Partition, c: Cell, eps: &EpsilonWord) -> Result<SymFun> {
    let f = shadow(mu, c)?;
    let k = check_word(&f, eps)?;
    let mut w = mu.t_weight() / Mono::new(c.col as i64, c.row as i64 - 1);
    for s in 0..f.m {
        if eps.bits[s] == 1 {
            w = w / (f.alpha(s).t_weight() * Mono::t_pow(f.drops[s] as i64));
        }
    }
    Ok(phi(&shadow_set(&f), f.m + 1 - k)?.scale(&w.to_scalar()))
}

/// `T_μ/(t^i q^{j-1}) · φ^{(m+1-k)} / ∏_s (T_{α(s)} q^{w_s})^{η_s}`.
pub fn refined_y(mu: &Partition, c: Cell, eta: &EpsilonWord) -> Result<SymFun> {
    let f = shadow(mu, c)?;
    let k = check_word(&f, eta)?;
    let mut w = mu.t_weight() / Mono::new(c.col as i64 - 1, c.row as i64);
    for s in 0..f.m {
        if eta.bits[s] == 1 {
            w = w / (f.alpha(s).t_weight() * Mono::q_pow(f.widths[s] as i64));
        }
    }
    Ok(phi(&shadow_set(&f), f.m + 1 - k)?.scale(&w.to_scalar()))
}

/// `(1, ε_1..ε_{m-1})`.
pub fn shifted(eps: &EpsilonWord) -> EpsilonWord {
    let mut bits = vec![1];
    bits.extend_from_slice(&eps.bits[..eps.len() - 1]);
    EpsilonWord { bits }
}

/// `(1, 1-ε_1..1-ε_{m-1})`.
pub fn shifted_complement(eps: &EpsilonWord) -> EpsilonWord {
    let mut bits = vec![1];
    bits.extend(eps.bits[..eps.len() - 1].iter().map(|b| 1 - b));
    EpsilonWord { bits }
}

fn check_last(eps: &EpsilonWord) -> Result<()> {
    if eps.bits.last() != Some(&1) {
        return domain(format!("word {eps} must end in 1"));
    }
    Ok(())
}

/// `t^l Ã^x(ε) - q^a Ã^y(1,ε_1..ε_{m-1})`.
pub fn refined_crucial_residual(mu: &Partition, c: Cell, eps: &EpsilonWord) -> Result<SymFun> {
    check_last(eps)?;
    let (a, l, _, _) = mu.arm_leg(c)?;
    let lhs = refined_x(mu, c, eps)?.scale(&Mono::t_pow(l as i64).to_scalar());
    lhs.sub(&refined_y(mu, c, &shifted(eps))?.scale(&Mono::q_pow(a as i64).to_scalar()))
}

/// `Ã^x(ε) - T_{μ/ij} ↓Ã^y(1,1-ε_1..1-ε_{m-1})`.
pub fn refined_flip_residual(mu: &Partition, c: Cell, eps: &EpsilonWord) -> Result<SymFun> {
    check_last(eps)?;
    let rhs = refined_y(mu, c, &shifted_complement(eps))?.down()?.scale(&hole_weight(mu, c).to_scalar());
    refined_x(mu, c, eps)?.sub(&rhs)
}

/// `Σ_{ε_m=1} Ã^x(ε) - A^x`.
pub fn refined_sum_residual(mu: &Partition, c: Cell) -> Result<SymFun> {
    let f = shadow(mu, c)?;
    let mut acc = atoms_qt(mu, c)?.ax.neg();
    for eps in EpsilonWord::all(f.m).into_iter().filter(|e| e.bits[f.m - 1] == 1) {
        acc = acc.add(&refined_x(mu, c, &eps)?)?;
    }
    Ok(acc)
}

/// Outcome of every refined check at one cell.
#[derive(Clone, Debug)]
pub struct RefinedReport {
    pub cell: Cell,
    /// `(ε, crucial holds, flip holds)` for each word ending in 1.
    pub words: Vec<(EpsilonWord, bool, bool)>,
    pub sum_holds: bool,
}

impl RefinedReport {
    pub fn holds(&self) -> bool {
        self.sum_holds && self.words.iter().all(|(_, a, b)| *a && *b)
    }
}

pub fn refined_check(mu: &Partition, c: Cell) -> Result<RefinedReport> {
    let f = shadow(mu, c)?;
    let mut words = Vec::new();
    for eps in EpsilonWord::all(f.m).into_iter().filter(|e| e.bits[f.m - 1] == 1) {
        let a = refined_crucial_residual(mu, c, &eps)?.is_zero();
        let b = refined_flip_residual(mu, c, &eps)?.is_zero();
        words.push((eps, a, b));
    }
    Ok(RefinedReport { cell: c, words, sum_holds: refined_sum_residual(mu, c)?.is_zero() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn words() {
        let e: EpsilonWord = "101".parse().unwrap();
        assert_eq!(shifted(&e).to_string(), "110");
        assert_eq!(shifted_complement(&e).to_string(), "101");
        let mu = p("[3,2,1]");
        assert!(refined_crucial_residual(&mu, Cell::new(0, 0), &"110".parse().unwrap()).is_err());
        assert!(refined_x(&mu, Cell::new(0, 0), &"11".parse().unwrap()).is_err());
    }

    #[test]
    fn single_corner_reduces() {
        let mu = p("[2,2]");
        let c = Cell::new(0, 0);
        let one: EpsilonWord = "1".parse().unwrap();
        let at = atoms_qt(&mu, c).unwrap();
        assert!(refined_x(&mu, c, &one).unwrap().equals(&at.ax).unwrap());
        assert!(refined_y(&mu, c, &one).unwrap().equals(&at.ay).unwrap());
    }

    #[test]
    fn staircase() {
        let mu = p("[3,2,1]");
        let r = refined_check(&mu, Cell::new(0, 0)).unwrap();
        assert_eq!(r.words.len(), 4);
        assert!(r.holds(), "{r:?}");
        assert!(refined_crucial_residual(&mu, Cell::new(0, 0), &"101".parse().unwrap()).unwrap().is_zero());
    }
}
