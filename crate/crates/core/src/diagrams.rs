//! Partitions, cells, lattice diagrams and the combinatorics built on them.
//!
//! French convention throughout: cell `(row, col)` with row 0 at the bottom.

use crate::error::{domain, Error, Result};
use crate::qtfield::Mono;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

/// Weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return domain(format!("zero part in {parts:?}"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("parts not weakly decreasing: {parts:?}"));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `i` (0 past the top).
    pub fn row(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.row(0);
        let parts = (0..w).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect();
        Partition { parts }
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.row < self.len() && c.col < self.parts[c.row]
    }

    /// Cells in increasing lexicographic order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 0..p {
                out.push(Cell::new(i, j));
            }
        }
        out
    }

    /// `n(μ) = Σ (i-1) μ_i`, the t-degree of `T_μ`.
    pub fn n_stat(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// Product of cell weights `t^row q^col`.
    pub fn t_weight(&self) -> Mono {
        Mono::new(self.conjugate().n_stat() as i64, self.n_stat() as i64)
    }

    /// Dominance order `self ≥ other` (same size assumed).
    pub fn dominates(&self, other: &Partition) -> bool {
        let (mut a, mut b) = (0usize, 0usize);
        for k in 0..self.len().max(other.len()) {
            a += self.row(k);
            b += other.row(k);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Arm, leg, coarm, coleg of a cell.
    pub fn arm_leg(&self, c: Cell) -> Result<(usize, usize, usize, usize)> {
        if !self.contains(c) {
            return domain(format!("cell {c} not in {self}"));
        }
        let a = self.parts[c.row] - c.col - 1;
        let l = self.parts.iter().filter(|&&p| p > c.col).count() - c.row - 1;
        Ok((a, l, c.col, c.row))
    }

    pub fn hook(&self, c: Cell) -> Result<usize> {
        let (a, l, _, _) = self.arm_leg(c)?;
        Ok(a + l + 1)
    }

    /// Corner cells ordered northwest to southeast (top row first).
    pub fn corners(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for i in (0..self.len()).rev() {
            if self.row(i) > self.row(i + 1) {
                out.push(Cell::new(i, self.row(i) - 1));
            }
        }
        out
    }

    /// Partition with the given corner removed.
    pub fn remove_corner(&self, c: Cell) -> Result<Partition> {
        if !self.contains(c) || self.row(c.row + 1) > c.col || c.col + 1 != self.row(c.row) {
            return domain(format!("{c} is not a corner of {self}"));
        }
        let mut parts = self.parts.clone();
        parts[c.row] -= 1;
        if parts[c.row] == 0 {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// Partitions obtained by adding one cell, in order of the added row.
    pub fn successors(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..=self.len() {
            if i == 0 || self.row(i) < self.row(i - 1) {
                let mut parts = self.parts.clone();
                if i == parts.len() {
                    parts.push(1);
                } else {
                    parts[i] += 1;
                }
                out.push(Partition { parts });
            }
        }
        out
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn f_lambda(&self) -> u128 {
        let n = self.size() as u128;
        let fact: u128 = (1..=n).product();
        let hooks: u128 = self.cells().iter().map(|&c| self.hook(c).unwrap() as u128).product();
        fact / hooks
    }

    /// Number of standard tableaux, by corner removal.
    pub fn f_lambda_recursive(&self) -> u128 {
        fn go(p: &Partition, memo: &mut BTreeMap<Partition, u128>) -> u128 {
            if p.size() <= 1 {
                return 1;
            }
            if let Some(v) = memo.get(p) {
                return *v;
            }
            let v = p.corners().into_iter().map(|c| go(&p.remove_corner(c).unwrap(), memo)).sum();
            memo.insert(p.clone(), v);
            v
        }
        go(self, &mut BTreeMap::new())
    }

    /// `z_λ = ∏ i^{m_i} m_i!`.
    pub fn z_lambda(&self) -> u128 {
        let mut z: u128 = 1;
        let mut counts: BTreeMap<usize, u128> = BTreeMap::new();
        for &p in &self.parts {
            *counts.entry(p).or_default() += 1;
            z *= p as u128;
        }
        for (_, m) in counts {
            z *= (1..=m).product::<u128>();
        }
        z
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{x:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// All partitions of `n`, in decreasing lexicographic order (`[n]` first).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// Weight `t^row q^col`.
    pub fn weight(&self) -> Mono {
        Mono::new(self.col as i64, self.row as i64)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl FromStr for Cell {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let v: Vec<&str> = t.split(',').collect();
        if v.len() != 2 {
            return Err(Error::Parse(format!("bad cell {s:?}")));
        }
        let p = |x: &str| x.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{x:?}: {e}")));
        Ok(Cell::new(p(v[0])?, p(v[1])?))
    }
}

/// Finite set of distinct cells, stored in increasing lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeDiagram {
    cells: Vec<Cell>,
}

impl LatticeDiagram {
    pub fn new(mut cells: Vec<Cell>) -> Result<Self> {
        cells.sort();
        if cells.windows(2).any(|w| w[0] == w[1]) {
            return domain("duplicate cells in lattice diagram");
        }
        Ok(LatticeDiagram { cells })
    }

    pub fn of_partition(mu: &Partition) -> Self {
        LatticeDiagram { cells: mu.cells() }
    }

    /// `μ/ij`: the diagram of μ with one cell removed.
    pub fn hole(mu: &Partition, c: Cell) -> Result<Self> {
        if !mu.contains(c) {
            return domain(format!("cell {c} not in {mu}"));
        }
        Ok(LatticeDiagram { cells: mu.cells().into_iter().filter(|&d| d != c).collect() })
    }

    /// Builds a diagram from rows listed top to bottom, each row an
    /// alternating on/off run-length list starting with an "on" run.
    pub fn from_skew_rows(rows: &[Vec<usize>]) -> Self {
        let h = rows.len();
        let mut cells = Vec::new();
        for (k, runs) in rows.iter().enumerate() {
            let row = h - 1 - k;
            let mut col = 0;
            for (r, &len) in runs.iter().enumerate() {
                if r % 2 == 0 {
                    cells.extend((col..col + len).map(|j| Cell::new(row, j)));
                }
                col += len;
            }
        }
        LatticeDiagram::new(cells).expect("runs produce distinct cells")
    }

    /// Parses the run-length form `"1|0,1,1|3"` (rows top to bottom).
    pub fn parse_skew(s: &str) -> Result<Self> {
        let rows = s
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .split('|')
            .map(|r| {
                r.split(',')
                    .map(|x| x.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{x:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_skew_rows(&rows))
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.binary_search(&c).is_ok()
    }

    /// `T_L`: product of the cell weights.
    pub fn t_weight(&self) -> Mono {
        self.cells.iter().fold(Mono::ONE, |m, c| m * c.weight())
    }

    /// Total x-degree and y-degree of the lattice determinant.
    pub fn bidegree(&self) -> (usize, usize) {
        (self.cells.iter().map(|c| c.row).sum(), self.cells.iter().map(|c| c.col).sum())
    }

    /// 0/1 occupancy matrix, rows indexed bottom-up.
    pub fn occupancy(&self) -> Vec<Vec<bool>> {
        let h = self.cells.iter().map(|c| c.row + 1).max().unwrap_or(0);
        let w = self.cells.iter().map(|c| c.col + 1).max().unwrap_or(0);
        let mut m = vec![vec![false; w]; h];
        for c in &self.cells {
            m[c.row][c.col] = true;
        }
        m
    }

    /// Canonical representative under row and column rearrangements.
    pub fn gistol_canonical(&self, cap: usize) -> Result<Vec<Vec<bool>>> {
        gistol_canonical(&self.occupancy(), cap)
    }
}

impl fmt::Display for LatticeDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.cells.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// Default brute-force cap for [`gistol_canonical`].
pub const GISTOL_CAP: usize = 8;

/// Lexicographically minimal matrix over all row and column permutations,
/// after removing empty rows and columns.
pub fn gistol_canonical(m: &[Vec<bool>], cap: usize) -> Result<Vec<Vec<bool>>> {
    let w = m.iter().map(|r| r.len()).max().unwrap_or(0);
    let rows: Vec<Vec<bool>> = m
        .iter()
        .filter(|r| r.iter().any(|&b| b))
        .map(|r| {
            let mut r = r.clone();
            r.resize(w, false);
            r
        })
        .collect();
    let keep: Vec<usize> = (0..w).filter(|&j| rows.iter().any(|r| r[j])).collect();
    let mut mat: Vec<Vec<bool>> = rows.iter().map(|r| keep.iter().map(|&j| r[j]).collect()).collect();
    let (h, w) = (mat.len(), keep.len());
    // permute the smaller side, sort the other
    let transposed = w > h;
    if transposed {
        mat = transpose(&mat, w);
    }
    let k = mat.first().map_or(0, |r| r.len());
    if k > cap {
        return Err(Error::Resource(format!("gistol canonicalization needs {k} > {cap} permuted lines")));
    }
    let mut best: Option<Vec<Vec<bool>>> = None;
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let mut cand: Vec<Vec<bool>> = mat.iter().map(|r| perm.iter().map(|&j| r[j]).collect()).collect();
        cand.sort();
        if best.as_ref().map_or(true, |b| cand < *b) {
            best = Some(cand);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let mut out = best.unwrap_or_default();
    if transposed {
        out = transpose(&out, k);
    }
    Ok(out)
}

fn transpose(m: &[Vec<bool>], w: usize) -> Vec<Vec<bool>> {
    (0..w).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// 0/1 word indexing a subset of corners; `bits[s]` refers to corner `s+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsilonWord {
    pub bits: Vec<u8>,
}

impl EpsilonWord {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return domain("epsilon word must be 0/1");
        }
        Ok(EpsilonWord { bits })
    }

    pub fn from_mask(mask: u32, m: usize) -> Self {
        EpsilonWord { bits: (0..m).map(|s| ((mask >> s) & 1) as u8).collect() }
    }

    pub fn mask(&self) -> u32 {
        self.bits.iter().enumerate().fold(0, |acc, (s, &b)| acc | ((b as u32) << s))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// All words of length `m`.
    pub fn all(m: usize) -> Vec<EpsilonWord> {
        (0..1u32 << m).map(|k| Self::from_mask(k, m)).collect()
    }
}

impl fmt::Display for EpsilonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for EpsilonWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(format!("bad epsilon word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EpsilonWord { bits })
    }
}

/// Corner data of the shadow of a cell.
///
/// Corner monomials are relative to the origin of the shadow; multiply by
/// [`ShadowFrame::offset`] to place them in μ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowFrame {
    pub mu: Partition,
    pub origin: Cell,
    pub tau: Partition,
    pub m: usize,
    /// Corners of τ, northwest to southeast, in τ-coordinates.
    pub corners: Vec<Cell>,
    /// `x_1..x_m`.
    pub x: Vec<Mono>,
    /// `u_0..u_m`.
    pub u: Vec<Mono>,
    pub x0: Mono,
    pub widths: Vec<usize>,
    pub drops: Vec<usize>,
}

impl ShadowFrame {
    fn build(mu: &Partition, origin: Cell) -> Result<Self> {
        if !mu.contains(origin) {
            return domain(format!("cell {origin} not in {mu}"));
        }
        let tau = Partition::from_unsorted(
            (origin.row..mu.len()).map(|i| mu.row(i).saturating_sub(origin.col)).collect(),
        );
        let corners = tau.corners();
        let m = corners.len();
        let x: Vec<Mono> = corners.iter().map(|c| c.weight()).collect();
        let mut u = Vec::with_capacity(m + 1);
        u.push(Mono::new(-1, corners[0].row as i64));
        for s in 0..m - 1 {
            u.push(Mono::new(corners[s].col as i64, corners[s + 1].row as i64));
        }
        u.push(Mono::new(corners[m - 1].col as i64, -1));
        let widths = (0..m)
            .map(|s| if s == 0 { corners[0].col + 1 } else { corners[s].col - corners[s - 1].col })
            .collect();
        let drops = (0..m)
            .map(|s| {
                let below = if s + 1 < m { corners[s + 1].row as i64 } else { -1 };
                (corners[s].row as i64 - below) as usize
            })
            .collect();
        let frame = ShadowFrame {
            mu: mu.clone(),
            origin,
            tau,
            m,
            corners,
            x,
            u,
            x0: Mono::new(-1, -1),
            widths,
            drops,
        };
        let lhs = frame.x.iter().fold(frame.x0, |a, &b| a * b);
        let rhs = frame.u.iter().fold(Mono::ONE, |a, &b| a * b);
        if lhs != rhs {
            return Err(Error::Internal(format!("corner weight products differ for {mu} at {origin}")));
        }
        Ok(frame)
    }

    /// `t^i q^j` for the origin `(i,j)`.
    pub fn offset(&self) -> Mono {
        self.origin.weight()
    }

    /// Corner `s` (0-based) in μ-coordinates.
    pub fn corner_in_mu(&self, s: usize) -> Cell {
        let c = self.corners[s];
        Cell::new(c.row + self.origin.row, c.col + self.origin.col)
    }

    /// μ with corner `s` (0-based) removed.
    pub fn alpha(&self, s: usize) -> Partition {
        self.mu.remove_corner(self.corner_in_mu(s)).expect("shadow corners are corners of μ")
    }

    /// Cells of the shadow in μ-coordinates.
    pub fn cells(&self) -> Vec<Cell> {
        self.tau.cells().into_iter().map(|c| Cell::new(c.row + self.origin.row, c.col + self.origin.col)).collect()
    }

    pub fn size(&self) -> usize {
        self.tau.size()
    }

    /// Arm and leg of the origin.
    pub fn arm(&self) -> usize {
        self.tau.row(0) - 1
    }

    pub fn leg(&self) -> usize {
        self.tau.len() - 1
    }
}

/// Shadow of `c` in `mu`: the cells weakly north and east of `c`.
pub fn shadow(mu: &Partition, c: Cell) -> Result<ShadowFrame> {
    ShadowFrame::build(mu, c)
}

/// Corner data of μ itself.
pub fn corner_data(mu: &Partition) -> Result<ShadowFrame> {
    if mu.is_empty() {
        return domain("empty partition has no corners");
    }
    ShadowFrame::build(mu, Cell::new(0, 0))
}

/// Partitions obtained by removing one corner, northwest corner first.
pub fn predecessors(mu: &Partition) -> Result<Vec<Partition>> {
    if mu.is_empty() {
        return domain("empty partition has no predecessors");
    }
    Ok(mu.corners().into_iter().map(|c| mu.remove_corner(c).unwrap()).collect())
}

/// Predecessors whose removed corner lies in the shadow of `c`.
pub fn predecessors_in_shadow(mu: &Partition, c: Cell) -> Result<Vec<Partition>> {
    let f = shadow(mu, c)?;
    Ok((0..f.m).map(|s| f.alpha(s)).collect())
}

/// Left-compacted union of the kept rectangles of the shadow of `c`.
///
/// With `dual = false` the rectangles are the vertical strips of widths
/// `w_s`; with `dual = true` the horizontal strips of heights `v_s`, slid down.
pub fn d_ij_diagram(mu: &Partition, c: Cell, eps: &EpsilonWord, dual: bool) -> Result<LatticeDiagram> {
    let f = shadow(mu, c)?;
    if eps.len() != f.m {
        return domain(format!("epsilon word has length {}, shadow has {} corners", eps.len(), f.m));
    }
    let mut cells = Vec::new();
    if !dual {
        let mut col = 0;
        for s in 0..f.m {
            if eps.bits[s] == 1 {
                let height = f.corners[s].row + 1;
                for dj in 0..f.widths[s] {
                    for i in 0..height {
                        cells.push(Cell::new(c.row + i, c.col + col + dj));
                    }
                }
                col += f.widths[s];
            }
        }
    } else {
        let mut row = 0;
        for s in (0..f.m).rev() {
            if eps.bits[s] == 1 {
                let length = f.corners[s].col + 1;
                for di in 0..f.drops[s] {
                    for j in 0..length {
                        cells.push(Cell::new(c.row + row + di, c.col + j));
                    }
                }
                row += f.drops[s];
            }
        }
    }
    LatticeDiagram::new(cells)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BhMode {
    Recursive,
    Direct,
}

/// Assignment of ε-word sets to the cells of μ; words run over all corners of μ.
pub fn bh_assignment(mu: &Partition, mode: BhMode) -> Result<BTreeMap<Cell, BTreeSet<EpsilonWord>>> {
    let f = corner_data(mu)?;
    let m = f.m;
    let to_words = |set: &BTreeSet<u32>| set.iter().map(|&k| EpsilonWord::from_mask(k, m)).collect();
    // number of corners in rows >= i
    let corners_above = |i: usize| mu.corners().iter().filter(|c| c.row >= i).count();
    let mut out = BTreeMap::new();
    match mode {
        BhMode::Direct => {
            for c in mu.cells() {
                let r = corners_above(c.row);
                let set: BTreeSet<u32> = (0..1u32 << m)
                    .filter(|&k| {
                        let total: usize = (0..r).filter(|&s| (k >> s) & 1 == 1).map(|s| f.widths[s]).sum();
                        c.col < total
                    })
                    .collect();
                out.insert(c, to_words(&set));
            }
        }
        BhMode::Recursive => {
            let all: BTreeSet<u32> = (0..1u32 << m).collect();
            let mut above: Vec<BTreeSet<u32>> = Vec::new();
            let lookup = |row: &Vec<BTreeSet<u32>>, j: i64| -> BTreeSet<u32> {
                if j < 0 {
                    all.clone()
                } else {
                    row.get(j as usize).cloned().unwrap_or_default()
                }
            };
            for i in (0..mu.len()).rev() {
                let w = mu.row(i) - mu.row(i + 1);
                let r = corners_above(i);
                let mut row = Vec::with_capacity(mu.row(i));
                for j in 0..mu.row(i) as i64 {
                    let mut set = lookup(&above, j);
                    if w > 0 {
                        let bit = 1u32 << (r - 1);
                        set.extend(lookup(&above, j - w as i64).into_iter().filter(|k| k & bit != 0));
                    }
                    row.push(set);
                }
                for (j, s) in row.iter().enumerate() {
                    out.insert(Cell::new(i, j), to_words(s));
                }
                above = row;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn partition_basics() {
        assert_eq!(p("[3,2,1]").conjugate(), p("[3,2,1]"));
        assert_eq!(p("[4,1]").conjugate(), p("[2,1,1,1]"));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(8).len(), 22);
        assert_eq!(p("[2,1]").n_stat(), 1);
        assert_eq!(p("[2,1]").t_weight(), Mono::new(1, 1));
        assert_eq!(p("[5]").n_stat(), 0);
        assert_eq!(p("[]").size(), 0);
    }

    #[test]
    fn predecessors_examples() {
        assert_eq!(predecessors(&p("[3,2,1]")).unwrap(), vec![p("[3,2]"), p("[3,1,1]"), p("[2,2,1]")]);
        assert_eq!(predecessors(&p("[4]")).unwrap(), vec![p("[3]")]);
        assert_eq!(predecessors(&p("[2,2]")).unwrap(), vec![p("[2,1]")]);
        assert!(predecessors(&p("[]")).is_err());
    }

    #[test]
    fn shadow_examples() {
        let f = shadow(&p("[3,2,1]"), Cell::new(1, 0)).unwrap();
        assert_eq!(f.tau, p("[2,1]"));
        assert_eq!(f.m, 2);
        let cells: BTreeSet<Cell> = f.cells().into_iter().collect();
        assert_eq!(cells, [Cell::new(1, 0), Cell::new(1, 1), Cell::new(2, 0)].into_iter().collect());
        let f = shadow(&p("[3,2,1]"), Cell::new(0, 2)).unwrap();
        assert_eq!((f.tau.clone(), f.m), (p("[1]"), 1));
        assert_eq!(shadow(&p("[4]"), Cell::new(0, 0)).unwrap().tau, p("[4]"));
        assert!(shadow(&p("[2]"), Cell::new(1, 0)).is_err());
    }

    #[test]
    fn corner_data_examples() {
        let f = corner_data(&p("[2,1]")).unwrap();
        assert_eq!(f.x, vec![Mono::new(0, 1), Mono::new(1, 0)]);
        assert_eq!(f.u, vec![Mono::new(-1, 1), Mono::ONE, Mono::new(1, -1)]);
        assert_eq!(f.x0, Mono::new(-1, -1));
        let f = corner_data(&p("[3,2,1]")).unwrap();
        assert_eq!(f.x, vec![Mono::new(0, 2), Mono::new(1, 1), Mono::new(2, 0)]);
        assert_eq!(f.u, vec![Mono::new(-1, 2), Mono::new(0, 1), Mono::new(1, 0), Mono::new(2, -1)]);
        let f = corner_data(&p("[1]")).unwrap();
        assert_eq!(f.x, vec![Mono::ONE]);
        assert_eq!(f.u, vec![Mono::new(-1, 0), Mono::new(0, -1)]);
    }

    #[test]
    fn frame_invariants_small() {
        for n in 1..=8 {
            for mu in partitions(n) {
                for c in mu.cells() {
                    let f = shadow(&mu, c).unwrap();
                    let (a, l, _, _) = mu.arm_leg(c).unwrap();
                    assert_eq!(f.widths.iter().sum::<usize>(), a + 1);
                    assert_eq!(f.drops.iter().sum::<usize>(), l + 1);
                    for s in 0..f.m {
                        assert_eq!(f.u[s + 1], f.x[s] / Mono::t_pow(f.drops[s] as i64));
                        assert_eq!(f.u[s], f.x[s] / Mono::q_pow(f.widths[s] as i64));
                    }
                }
            }
        }
    }

    #[test]
    fn arm_leg_examples() {
        assert_eq!(p("[3,2,1]").arm_leg(Cell::new(0, 0)).unwrap(), (2, 2, 0, 0));
        assert_eq!(p("[3,2,1]").arm_leg(Cell::new(0, 2)).unwrap(), (0, 0, 2, 0));
        assert_eq!(p("[1]").arm_leg(Cell::new(0, 0)).unwrap(), (0, 0, 0, 0));
    }

    #[test]
    fn f_lambda_examples() {
        assert_eq!(p("[5]").f_lambda(), 1);
        assert_eq!(p("[2,1]").f_lambda(), 2);
        assert_eq!(p("[2,2]").f_lambda(), 2);
        for n in 1..=10 {
            let total: u128 = partitions(n).iter().map(|l| l.f_lambda() * l.f_lambda()).sum();
            assert_eq!(total, (1..=n as u128).product());
            for l in partitions(n) {
                assert_eq!(l.f_lambda(), l.f_lambda_recursive());
            }
        }
    }

    #[test]
    fn d_ij_examples() {
        let mu = p("[3,2,1]");
        let d = d_ij_diagram(&mu, Cell::new(0, 0), &"101".parse().unwrap(), false).unwrap();
        let want = LatticeDiagram::new(vec![Cell::new(0, 0), Cell::new(1, 0), Cell::new(2, 0), Cell::new(0, 1)]).unwrap();
        assert_eq!(d, want);
        let full = d_ij_diagram(&mu, Cell::new(0, 0), &"111".parse().unwrap(), false).unwrap();
        assert_eq!(full, LatticeDiagram::of_partition(&mu));
        let dual = d_ij_diagram(&mu, Cell::new(0, 0), &"111".parse().unwrap(), true).unwrap();
        assert_eq!(dual, LatticeDiagram::of_partition(&mu));
        let big = p("[15,15,11,11,6,6,6,6,3,3,2,2]");
        let d = d_ij_diagram(&big, Cell::new(0, 0), &"01101".parse().unwrap(), false).unwrap();
        let cols: Vec<usize> = (0..8).map(|j| d.cells().iter().filter(|c| c.col == j).count()).collect();
        assert_eq!(cols, vec![10, 8, 8, 8, 2, 2, 2, 2]);
        assert_eq!(d.len(), 42);
        assert!(d_ij_diagram(&mu, Cell::new(0, 0), &"10".parse().unwrap(), false).is_err());
    }

    #[test]
    fn gistol_chain() {
        let chain = ["1|0,1,1|3", "0,1,1|3|1", "0,2,1|3|1", "1|3|0,2,1"];
        let forms: Vec<_> = chain
            .iter()
            .map(|s| LatticeDiagram::parse_skew(s).unwrap().gistol_canonical(GISTOL_CAP).unwrap())
            .collect();
        assert!(forms.windows(2).all(|w| w[0] == w[1]));
        let one = LatticeDiagram::parse_skew("1").unwrap().gistol_canonical(8).unwrap();
        let two = LatticeDiagram::parse_skew("2").unwrap().gistol_canonical(8).unwrap();
        assert_ne!(one, two);
        let wide = LatticeDiagram::parse_skew("9|9|9|9|9|9|9|9|9").unwrap();
        assert!(matches!(wide.gistol_canonical(8), Err(Error::Resource(_))));
    }

    #[test]
    fn bh_examples() {
        let mu = p("[3,2,1]");
        for mode in [BhMode::Direct, BhMode::Recursive] {
            let b = bh_assignment(&mu, mode).unwrap();
            assert_eq!(b[&Cell::new(0, 0)].len(), 7);
            assert_eq!(b[&Cell::new(0, 2)], ["111".parse().unwrap()].into_iter().collect());
            assert!(b[&Cell::new(2, 0)].iter().all(|e| e.bits[0] == 1));
            assert_eq!(b[&Cell::new(2, 0)].len(), 4);
        }
    }

    #[test]
    fn skew_parse() {
        let d = LatticeDiagram::parse_skew("1|0,1,1|3").unwrap();
        let want = vec![Cell::new(0, 0), Cell::new(0, 1), Cell::new(0, 2), Cell::new(1, 1), Cell::new(2, 0)];
        assert_eq!(d.cells(), &want[..]);
    }
}
