//! Verification tasks and their execution.

use crate::diagrams::{bh_assignment, partitions, predecessors, shadow, BhMode, Cell, Partition};
use crate::error::{Error, Result};
use crate::harmonics::{alternant_basis, frobenius, hole_module, partition_module};
use crate::pieri::atoms::{brute_atoms_match, rectangle_constancy, xi_product, xi_sum};
use crate::pieri::conj::c_or_zero;
use crate::pieri::gd::{class_consistency, dp1_by_xi_residual, worked_identities, Weighting};
use crate::pieri::hook::{hook, hook_suite};
use crate::pieri::lemma::lemma12_instance;
use crate::pieri::phi::sf_mst_check;
use crate::pieri::refined::refined_check;
use crate::pieri::{
    atoms_qt, c_coeff, conjectured_c, crucial_residual, dp1_expand, flip_residual, four_term_residual, PieriForm,
    Route,
};
use crate::symfunc::{htilde, SymFun};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Nfact,
    CEqualsH,
    Pieri,
    ConjI3,
    FourTerm,
    Crucial,
    Flip,
    Refined,
    SfMst,
    BhEquiv,
    Hook,
    Gd,
    Dimbound,
    Lemma12,
}

impl Kind {
    pub const ALL: [Kind; 14] = [
        Kind::Nfact,
        Kind::CEqualsH,
        Kind::Pieri,
        Kind::ConjI3,
        Kind::FourTerm,
        Kind::Crucial,
        Kind::Flip,
        Kind::Refined,
        Kind::SfMst,
        Kind::BhEquiv,
        Kind::Hook,
        Kind::Gd,
        Kind::Dimbound,
        Kind::Lemma12,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Nfact => "nfact",
            Kind::CEqualsH => "c_equals_h",
            Kind::Pieri => "pieri",
            Kind::ConjI3 => "conj_i3",
            Kind::FourTerm => "four_term",
            Kind::Crucial => "crucial",
            Kind::Flip => "flip",
            Kind::Refined => "refined",
            Kind::SfMst => "sf_mst",
            Kind::BhEquiv => "bh_equiv",
            Kind::Hook => "hook",
            Kind::Gd => "gd",
            Kind::Dimbound => "dimbound",
            Kind::Lemma12 => "lemma12",
        }
    }

    /// Whether tasks of this kind read `H̃` tables.
    pub fn uses_htilde(self) -> bool {
        !matches!(self, Kind::Nfact | Kind::BhEquiv | Kind::Dimbound | Kind::Lemma12)
    }

    /// Whether every task of this kind needs brute-force module computations.
    pub fn is_brute(self) -> bool {
        matches!(self, Kind::Nfact | Kind::CEqualsH | Kind::ConjI3 | Kind::SfMst | Kind::Dimbound)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<_> = Kind::ALL.iter().map(|k| k.name()).collect();
            Error::Parse(format!("unknown task kind {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Params {
    Mu { mu: String },
    Cell { mu: String, cell: String },
    Hook { n: usize, k: usize },
    Lemma { seed: u64, index: usize },
    Worked,
    Classes { nmax: usize },
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Params::Mu { mu } => write!(f, "{mu}"),
            Params::Cell { mu, cell } => write!(f, "{mu}/{cell}"),
            Params::Hook { n, k } => write!(f, "hook({n},{k})"),
            Params::Lemma { seed, index } => write!(f, "seed={seed},i={index}"),
            Params::Worked => write!(f, "worked"),
            Params::Classes { nmax } => write!(f, "classes<={nmax}"),
        }
    }
}

impl FromStr for Params {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad task parameters {s:?}"));
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        if s == "worked" {
            return Ok(Params::Worked);
        }
        if let Some(n) = s.strip_prefix("classes<=") {
            return Ok(Params::Classes { nmax: num(n)? });
        }
        if let Some(rest) = s.strip_prefix("hook(").and_then(|r| r.strip_suffix(')')) {
            let (n, k) = rest.split_once(',').ok_or_else(bad)?;
            return Ok(Params::Hook { n: num(n)?, k: num(k)? });
        }
        if let Some(rest) = s.strip_prefix("seed=") {
            let (seed, i) = rest.split_once(",i=").ok_or_else(bad)?;
            return Ok(Params::Lemma { seed: seed.parse().map_err(|_| bad())?, index: num(i)? });
        }
        if let Some((mu, cell)) = s.split_once('/') {
            let (mu, cell): (Partition, Cell) = (mu.parse()?, cell.parse()?);
            return Ok(Params::Cell { mu: mu.to_string(), cell: cell.to_string() });
        }
        let mu: Partition = s.parse()?;
        Ok(Params::Mu { mu: mu.to_string() })
    }
}

/// One unit of verification work; deterministic given its fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Task {
    pub kind: Kind,
    pub params: Params,
}

impl Task {
    pub fn id(&self) -> String {
        format!("{}:{}", self.kind, self.params)
    }
}

impl FromStr for Task {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (k, p) = s.split_once(':').ok_or_else(|| Error::Parse(format!("bad task id {s:?}")))?;
        Ok(Task { kind: k.parse()?, params: p.parse()? })
    }
}

/// Size limits for a campaign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest `|μ|` for brute-force module computations.
    pub brute: usize,
    /// Largest `|μ|` for symbolic checks.
    pub symbolic: usize,
    pub seed: u64,
    pub lemma_instances: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { brute: 5, symbolic: 8, seed: 1, lemma_instances: 200 }
    }
}

/// Result of running one task.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub pass: bool,
    pub residual: String,
}

impl Outcome {
    fn ok() -> Self {
        Outcome { pass: true, residual: "0".into() }
    }

    fn check(pass: bool, what: impl Into<String>) -> Self {
        if pass {
            Outcome::ok()
        } else {
            Outcome { pass: false, residual: what.into() }
        }
    }

    fn zero(f: &SymFun) -> Self {
        Outcome::check(f.is_zero(), f.to_text())
    }

    fn and(self, o: Outcome) -> Outcome {
        if self.pass {
            o
        } else {
            self
        }
    }
}

fn mu_of(s: &str) -> Result<Partition> {
    s.parse()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub(crate) fn size_of(p: &Params) -> Result<usize> {
    Ok(match p {
        Params::Mu { mu } | Params::Cell { mu, .. } => mu_of(mu)?.size(),
        Params::Hook { n, .. } => n + 1,
        Params::Classes { nmax } => *nmax,
        Params::Lemma { .. } | Params::Worked => 0,
    })
}

/// Runs one task. `Err(Error::Resource)` means the task exceeds `caps`.
pub fn run_task(task: &Task, caps: &Caps) -> Result<Outcome> {
    let n = size_of(&task.params)?;
    let cap = if task.kind.is_brute() { caps.brute } else { caps.symbolic };
    if n > cap {
        return Err(Error::Resource(format!("|μ| = {n} exceeds the cap {cap} for {}", task.kind)));
    }
    let brute_ok = n <= caps.brute;
    match (&task.kind, &task.params) {
        (Kind::Nfact, Params::Mu { mu }) => {
            let mu = mu_of(mu)?;
            let d = partition_module(&mu)?.dim();
            Ok(Outcome::check(d == factorial(n), format!("dim {d}, expected {}", factorial(n))))
        }
        (Kind::CEqualsH, Params::Mu { mu }) => {
            let mu = mu_of(mu)?;
            let f = frobenius(&*partition_module(&mu)?)?.to_symfun();
            Ok(Outcome::zero(&f.sub(&htilde(&mu)?)?))
        }
        (Kind::Pieri, Params::Mu { mu }) => {
            let mu = mu_of(mu)?;
            let mut out = Outcome::ok();
            for nu in predecessors(&mu)? {
                let a = c_coeff(&mu, &nu, PieriForm::Product)?;
                let b = c_coeff(&mu, &nu, PieriForm::Compact)?;
                out = out.and(Outcome::check(a == b, format!("c at {nu}: {} vs {}", a.fmt_scalar(), b.fmt_scalar())));
            }
            let dp = htilde(&mu)?.dp1()?;
            out = out.and(Outcome::zero(&dp1_expand(&mu)?.to_symfun()?.sub(&dp)?));
            if n <= 7 {
                out = out.and(Outcome::zero(&conjectured_c(&mu, Cell::new(0, 0), Route::NablaProduct)?.sub(&dp)?));
            }
            Ok(out)
        }
        (Kind::ConjI3, Params::Cell { mu, cell }) => {
            let (mu, c) = (mu_of(mu)?, cell.parse()?);
            let f = frobenius(&*hole_module(&mu, c)?)?.to_symfun();
            Ok(Outcome::zero(&f.sub(&c_or_zero(&mu, c, Route::ShadowPieri)?)?))
        }
        (Kind::FourTerm, Params::Cell { mu, cell }) => {
            let (mu, c) = (mu_of(mu)?, cell.parse()?);
            let mut out = Outcome::ok();
            for r in Route::ALL {
                match four_term_residual(&mu, c, r)? {
                    Some(res) => out = out.and(Outcome::zero(&res)),
                    None => return Err(Error::Domain(format!("{c} is a corner of {mu}"))),
                }
            }
            Ok(out)
        }
        (Kind::Crucial, Params::Mu { mu }) => {
            let mu = mu_of(mu)?;
            let bad: Vec<String> =
                rectangle_constancy(&mu)?.into_iter().filter(|(_, ok)| !ok).map(|((i, j), _)| format!("R{i}{j}")).collect();
            Ok(Outcome::check(bad.is_empty(), format!("Ξ not constant on {}", bad.join(","))))
        }
        (Kind::Crucial, Params::Cell { mu, cell }) => {
            let (mu, c) = (mu_of(mu)?, cell.parse()?);
            let at = atoms_qt(&mu, c)?;
            let mut out = Outcome::zero(&crucial_residual(&mu, c, &at)?);
            out = out.and(Outcome::zero(&at.xi.sub(&xi_sum(&mu, c)?)?));
            out = out.and(Outcome::zero(&at.xi.sub(&xi_product(&mu, c)?)?));
            if brute_ok && mu.size() > 1 {
                let (x, y) = brute_atoms_match(&mu, c)?;
                out = out.and(Outcome::check(x && y, format!("brute-force atoms: x {x}, y {y}")));
            }
            Ok(out)
        }
        (Kind::Flip, Params::Cell { mu, cell }) => {
            let (mu, c) = (mu_of(mu)?, cell.parse()?);
            Ok(Outcome::zero(&flip_residual(&mu, c, &atoms_qt(&mu, c)?)?))
        }
        (Kind::Refined, Params::Cell { mu, cell }) => {
            let (mu, c) = (mu_of(mu)?, cell.parse()?);
            let r = refined_check(&mu, c)?;
            let bad: Vec<String> = r
                .words
                .iter()
                .filter(|(_, a, b)| !(*a && *b))
                .map(|(e, a, b)| format!("{e}: crucial {a}, flip {b}"))
                .collect();
            Ok(Outcome::check(r.holds(), format!("sum {}; {}", r.sum_holds, bad.join("; "))))
        }
        (Kind::SfMst, Params::Mu { mu }) => {
            let mu = mu_of(mu)?;
            let bad: Vec<String> = sf_mst_check(&mu)?
                .into_iter()
                .filter(|c| !c.holds)
                .map(|c| format!("S={:?} T={:?}", names(&c.s), names(&c.t)))
                .collect();
            Ok(Outcome::check(bad.is_empty(), bad.join("; ")))
        }
        (Kind::BhEquiv, Params::Mu { mu }) => {
            let mu = mu_of(mu)?;
            let a = bh_assignment(&mu, BhMode::Recursive)?;
            let b = bh_assignment(&mu, BhMode::Direct)?;
            let bad: Vec<String> = a.iter().filter(|(c, w)| b.get(c) != Some(w)).map(|(c, _)| c.to_string()).collect();
            Ok(Outcome::check(a == b, format!("assignments differ at {}", bad.join(","))))
        }
        (Kind::Hook, Params::Hook { n, k }) => {
            let r = hook_suite(*n, *k, caps.brute)?;
            Ok(Outcome::check(r.holds(), r.failures().join(",")))
        }
        (Kind::Gd, Params::Mu { mu }) => {
            let mu = mu_of(mu)?;
            let a = Outcome::zero(&dp1_by_xi_residual(&mu, Weighting::ColegArm)?);
            Ok(a.and(Outcome::zero(&dp1_by_xi_residual(&mu, Weighting::LegCoarm)?)))
        }
        (Kind::Gd, Params::Worked) => {
            let bad: Vec<&str> = worked_identities()?.into_iter().filter(|(_, ok)| !ok).map(|(l, _)| l).collect();
            Ok(Outcome::check(bad.is_empty(), bad.join(",")))
        }
        (Kind::Gd, Params::Classes { nmax }) => {
            let o = class_consistency(*nmax)?;
            Ok(Outcome::check(
                o.split.is_empty() && o.conjugate_mismatch == 0,
                format!("{} split classes, {} conjugate mismatches", o.split.len(), o.conjugate_mismatch),
            ))
        }
        (Kind::Dimbound, Params::Cell { mu, cell }) => {
            let (mu, c) = (mu_of(mu)?, cell.parse()?);
            let m = hole_module(&mu, c)?;
            let sh = shadow(&mu, c)?.size();
            let want = sh * factorial(n - 1);
            let alt = alternant_basis(&m)?.len();
            Ok(Outcome::check(m.dim() == want && alt == sh, format!("dim {} (want {want}), alternants {alt} (want {sh})", m.dim())))
        }
        (Kind::Lemma12, Params::Lemma { seed, index }) => {
            let r = lemma12_instance(*seed, *index)?;
            Ok(Outcome::check(r.zero && r.degree_ok, format!("m={} zero {} degree bound {}", r.m, r.zero, r.degree_ok)))
        }
        (k, p) => Err(Error::Domain(format!("task kind {k} does not take parameters {p}"))),
    }
}

fn names(v: &[Partition]) -> Vec<String> {
    v.iter().map(|p| p.to_string()).collect()
}

/// All tasks of `kind` for `nmin <= |μ| <= nmax`, in a fixed order.
pub fn enumerate(kind: Kind, nmin: usize, nmax: usize, caps: &Caps) -> Result<Vec<Task>> {
    let mut out = Vec::new();
    let task = |params| Task { kind, params };
    let mus = |lo: usize| (lo.max(nmin)..=nmax).flat_map(partitions);
    let by_mu = |mu: &Partition| Params::Mu { mu: mu.to_string() };
    let by_cell = |mu: &Partition, c: Cell| Params::Cell { mu: mu.to_string(), cell: c.to_string() };
    match kind {
        Kind::Nfact | Kind::CEqualsH | Kind::BhEquiv => out.extend(mus(1).map(|m| task(by_mu(&m)))),
        Kind::Pieri | Kind::SfMst => out.extend(mus(2).map(|m| task(by_mu(&m)))),
        Kind::Gd => {
            out.extend(mus(1).map(|m| task(by_mu(&m))));
            out.push(task(Params::Worked));
            out.push(task(Params::Classes { nmax: nmax.min(caps.symbolic).min(6) }));
        }
        Kind::ConjI3 | Kind::Flip | Kind::Refined | Kind::Dimbound => {
            for mu in mus(2) {
                out.extend(mu.cells().into_iter().map(|c| task(by_cell(&mu, c))));
            }
        }
        Kind::FourTerm => {
            for mu in mus(2) {
                let corners = mu.corners();
                out.extend(mu.cells().into_iter().filter(|c| !corners.contains(c)).map(|c| task(by_cell(&mu, c))));
            }
        }
        Kind::Crucial => {
            for mu in mus(2) {
                out.extend(mu.cells().into_iter().map(|c| task(by_cell(&mu, c))));
                out.push(task(by_mu(&mu)));
            }
        }
        Kind::Hook => {
            for size in nmin.max(2)..=nmax {
                let n = size - 1;
                for k in 0..=n {
                    hook(n, k)?;
                    out.push(task(Params::Hook { n, k }));
                }
            }
        }
        Kind::Lemma12 => {
            out.extend((0..caps.lemma_instances).map(|index| task(Params::Lemma { seed: caps.seed, index })))
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        let caps = Caps::default();
        for kind in Kind::ALL {
            for t in enumerate(kind, 1, 4, &caps).unwrap().into_iter().take(30) {
                assert_eq!(t.id().parse::<Task>().unwrap(), t, "{}", t.id());
            }
        }
        assert!("crucial:[3,2,1]".parse::<Task>().is_ok());
        assert!("nope:[1]".parse::<Task>().is_err());
    }

    #[test]
    fn single_tasks() {
        let caps = Caps::default();
        for id in ["crucial:[3,2,1]/(1,0)", "nfact:[2,1]", "hook:hook(3,1)", "gd:worked", "lemma12:seed=1,i=3"] {
            assert!(run_task(&id.parse().unwrap(), &caps).unwrap().pass, "{id}");
        }
        let big = Caps { brute: 2, ..caps };
        assert!(matches!(run_task(&"nfact:[2,1]".parse().unwrap(), &big), Err(Error::Resource(_))));
        assert!(run_task(&"four_term:[2,1]/(1,0)".parse().unwrap(), &caps).is_err());
    }
}
