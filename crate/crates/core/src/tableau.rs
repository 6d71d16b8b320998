//! Young diagrams and standard Young tableaux.
//!
//! Cells are 1-based `(row, col)` pairs with `(1, 1)` at the top left and the
//! row index increasing downwards. A diagram is stored as its dense vector of
//! row lengths; column lengths are computed when needed.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, BigUint, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest diagram `enumerate_syt` accepts by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// `(i, j) <= (k, l)` in the product order.
    pub fn le(&self, other: &Cell) -> bool {
        self.row <= other.row && self.col <= other.col
    }

    pub fn linf_distance(&self, other: &Cell) -> usize {
        self.row.abs_diff(other.row).max(self.col.abs_diff(other.col))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "DiagramRepr", into = "DiagramRepr")]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    rows: Vec<usize>,
}

impl TryFrom<DiagramRepr> for YoungDiagram {
    type Error = Error;
    fn try_from(r: DiagramRepr) -> Result<Self> {
        YoungDiagram::new(r.rows)
    }
}

impl From<YoungDiagram> for DiagramRepr {
    fn from(d: YoungDiagram) -> Self {
        DiagramRepr { rows: d.rows }
    }
}

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.iter().any(|&r| r == 0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(rows));
        }
        Ok(YoungDiagram { rows })
    }

    /// Builds a diagram from row lengths, dropping trailing zero rows.
    pub fn from_lengths(mut rows: Vec<usize>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Self::new(rows)
    }

    pub fn empty() -> Self {
        YoungDiagram { rows: Vec::new() }
    }

    /// The staircase `(n-1, n-2, ..., 1)`.
    pub fn staircase(n: usize) -> Self {
        YoungDiagram {
            rows: (1..n).rev().collect(),
        }
    }

    /// Returns `Some(n)` when the diagram is `staircase(n)`. The empty diagram
    /// is reported as staircase(1).
    pub fn staircase_size(&self) -> Option<usize> {
        let n = self.rows.len() + 1;
        self.rows
            .iter()
            .enumerate()
            .all(|(i, &r)| r == n - 1 - i)
            .then_some(n)
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Length of row `i` (1-based); zero past the last row.
    pub fn row_len(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.rows.get(i - 1).copied().unwrap_or(0)
    }

    /// Length of column `j` (1-based).
    pub fn col_len(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.rows.iter().take_while(|&&r| r >= j).count()
    }

    /// Column lengths, i.e. the rows of the transpose.
    pub fn column_lengths(&self) -> Vec<usize> {
        let width = self.rows.first().copied().unwrap_or(0);
        let mut cols = vec![0; width];
        for &r in &self.rows {
            for c in cols.iter_mut().take(r) {
                *c += 1;
            }
        }
        cols
    }

    pub fn transpose(&self) -> YoungDiagram {
        YoungDiagram {
            rows: self.column_lengths(),
        }
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.row >= 1 && c.col >= 1 && c.col <= self.row_len(c.row)
    }

    /// Whether every box of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &YoungDiagram) -> bool {
        self.rows.len() <= other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a <= b)
    }

    /// Boxes in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (1..=r).map(move |j| Cell::new(i + 1, j)))
    }

    fn check(&self, c: Cell) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(Error::CellOutside(c))
        }
    }

    pub fn hook_length(&self, c: Cell) -> Result<usize> {
        self.check(c)?;
        Ok(self.row_len(c.row) - c.col + self.col_len(c.col) - c.row + 1)
    }

    /// Hook lengths of every box, row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let cols = self.column_lengths();
        self.rows
            .iter()
            .enumerate()
            .map(|(i, &r)| (0..r).map(|j| r - j + cols[j] - i - 1).collect())
            .collect()
    }

    /// Corners in increasing row order.
    pub fn corners(&self) -> Vec<Cell> {
        (0..self.rows.len())
            .filter(|&i| self.rows.get(i + 1).is_none_or(|&next| next < self.rows[i]))
            .map(|i| Cell::new(i + 1, self.rows[i]))
            .collect()
    }

    pub fn is_corner(&self, c: Cell) -> bool {
        self.contains(c) && c.col == self.row_len(c.row) && self.row_len(c.row + 1) < c.col
    }

    /// Co-leg (above, top to bottom) followed by co-arm (left, left to right).
    pub fn cohook(&self, c: Cell) -> Result<Vec<Cell>> {
        self.check(c)?;
        let leg = (1..c.row).map(|k| Cell::new(k, c.col));
        let arm = (1..c.col).map(|k| Cell::new(c.row, k));
        Ok(leg.chain(arm).collect())
    }

    pub fn remove_corner(&self, c: Cell) -> Result<YoungDiagram> {
        if !self.is_corner(c) {
            return Err(Error::NotACorner(c));
        }
        let mut rows = self.rows.clone();
        rows[c.row - 1] -= 1;
        if rows[c.row - 1] == 0 {
            rows.pop();
        }
        Ok(YoungDiagram { rows })
    }

    /// The boxes `>= corner`, translated so `corner` becomes `(1,1)`.
    pub fn subdiagram(&self, corner: Cell) -> Result<YoungDiagram> {
        self.check(corner)?;
        let rows = self.rows[corner.row - 1..]
            .iter()
            .map(|&r| r.saturating_sub(corner.col - 1))
            .take_while(|&r| r > 0)
            .collect();
        Ok(YoungDiagram { rows })
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn dimension(&self) -> BigUint {
        let n = self.size();
        let mut num = BigUint::one();
        for k in 2..=n {
            num *= BigUint::from(k);
        }
        let mut den = BigUint::one();
        for row in self.hook_lengths() {
            for h in row {
                den *= BigUint::from(h);
            }
        }
        debug_assert!((&num % &den).is_zero());
        num / den
    }

    /// Probability that the largest entry of a uniform tableau of this shape
    /// sits at each corner, in corner order.
    pub fn corner_removal_distribution(&self) -> Result<Vec<(Cell, f64)>> {
        if self.is_empty() {
            return Err(Error::EmptyDiagram);
        }
        let cols = self.column_lengths();
        let size = self.size() as f64;
        Ok(self
            .corners()
            .into_iter()
            .map(|c| (c, cohook_weight(&self.rows, &cols, c) / size))
            .collect())
    }

    /// Exact rational version of [`corner_removal_distribution`](Self::corner_removal_distribution).
    pub fn corner_removal_distribution_exact(&self) -> Result<Vec<(Cell, BigRational)>> {
        if self.is_empty() {
            return Err(Error::EmptyDiagram);
        }
        let hooks = self.hook_lengths();
        let size = BigRational::from_integer(self.size().into());
        Ok(self
            .corners()
            .into_iter()
            .map(|c| {
                let mut p = BigRational::one() / &size;
                for z in self.cohook(c).expect("corner is in diagram") {
                    let h = hooks[z.row - 1][z.col - 1];
                    p *= BigRational::new(h.into(), (h - 1).into());
                }
                (c, p)
            })
            .collect())
    }

    /// `P(x) / P(y)` for two corners.
    pub fn corner_probability_ratio(&self, x: Cell, y: Cell) -> Result<f64> {
        for c in [x, y] {
            if !self.is_corner(c) {
                return Err(Error::NotACorner(c));
            }
        }
        let cols = self.column_lengths();
        Ok(cohook_weight(&self.rows, &cols, x) / cohook_weight(&self.rows, &cols, y))
    }
}

/// `prod_{z in C(x)} h(z) / (h(z) - 1)` for a corner `x`.
pub(crate) fn cohook_weight(rows: &[usize], cols: &[usize], x: Cell) -> f64 {
    let hook = |i: usize, j: usize| (rows[i - 1] + cols[j - 1] + 1 - i - j) as f64;
    let mut w = 1.0;
    for k in 1..x.row {
        let h = hook(k, x.col);
        w *= h / (h - 1.0);
    }
    for k in 1..x.col {
        let h = hook(x.row, k);
        w *= h / (h - 1.0);
    }
    w
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

/// Partial filling: a finite set of cells with integer entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Filling {
    entries: BTreeMap<Cell, u32>,
}

impl Filling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, c: Cell, v: u32) {
        self.entries.insert(c, v);
    }

    pub fn get(&self, c: Cell) -> Option<u32> {
        self.entries.get(&c).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Cell, u32)> + '_ {
        self.entries.iter().map(|(&c, &v)| (c, v))
    }

    pub fn min_entry(&self) -> Option<u32> {
        self.entries.values().copied().min()
    }
}

impl FromIterator<(Cell, u32)> for Filling {
    fn from_iter<I: IntoIterator<Item = (Cell, u32)>>(iter: I) -> Self {
        Filling {
            entries: iter.into_iter().collect(),
        }
    }
}

/// Whether two fillings have translated supports and induce the same strict
/// order on their entries. Mismatched supports give `false`.
pub fn identically_ordered(s: &Filling, t: &Filling) -> bool {
    if s.len() != t.len() {
        return false;
    }
    let (Some((s0, _)), Some((t0, _))) = (s.iter().next(), t.iter().next()) else {
        return true;
    };
    let dr = t0.row as isize - s0.row as isize;
    let dc = t0.col as isize - s0.col as isize;
    // BTreeMap order is preserved by translation, so pair up in order.
    let mut sv = Vec::with_capacity(s.len());
    let mut tv = Vec::with_capacity(t.len());
    for ((sc, a), (tc, b)) in s.iter().zip(t.iter()) {
        if tc.row as isize - sc.row as isize != dr || tc.col as isize - sc.col as isize != dc {
            return false;
        }
        sv.push(a);
        tv.push(b);
    }
    for x in 0..sv.len() {
        for y in 0..sv.len() {
            if (sv[x] < sv[y]) != (tv[x] < tv[y]) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: YoungDiagram,
    rows: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct TableauRepr {
    shape: Vec<usize>,
    entries: Vec<Vec<u32>>,
}

impl Serialize for StandardTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableauRepr {
            shape: self.shape.rows.clone(),
            entries: self.rows.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StandardTableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = TableauRepr::deserialize(d)?;
        let shape = YoungDiagram::new(r.shape).map_err(serde::de::Error::custom)?;
        StandardTableau::new(shape, r.entries).map_err(serde::de::Error::custom)
    }
}

impl StandardTableau {
    /// Validates shape agreement, the entry set `{1..|shape|}`, and strict
    /// increase along rows and columns.
    pub fn new(shape: YoungDiagram, rows: Vec<Vec<u32>>) -> Result<Self> {
        if rows.len() != shape.num_rows()
            || rows.iter().zip(shape.rows()).any(|(r, &len)| r.len() != len)
        {
            return Err(Error::InvalidTableau(format!(
                "entries do not match shape {shape}"
            )));
        }
        let size = shape.size();
        let mut seen = vec![false; size + 1];
        for &v in rows.iter().flatten() {
            let v = v as usize;
            if v == 0 || v > size || seen[v] {
                return Err(Error::InvalidTableau(format!(
                    "entries must be a permutation of 1..={size}"
                )));
            }
            seen[v] = true;
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if j > 0 && row[j - 1] >= v {
                    return Err(Error::InvalidTableau(format!(
                        "row {} not increasing at column {}",
                        i + 1,
                        j + 1
                    )));
                }
                if i > 0 && rows[i - 1][j] >= v {
                    return Err(Error::InvalidTableau(format!(
                        "column {} not increasing at row {}",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(StandardTableau { shape, rows })
    }

    pub(crate) fn from_parts_unchecked(shape: YoungDiagram, rows: Vec<Vec<u32>>) -> Self {
        debug_assert!(StandardTableau::new(shape.clone(), rows.clone()).is_ok());
        StandardTableau { shape, rows }
    }

    /// Builds a tableau from the order in which boxes were removed: the first
    /// cell receives the largest entry.
    pub fn from_removal_order(shape: YoungDiagram, removed: &[Cell]) -> Result<Self> {
        let size = shape.size();
        if removed.len() != size {
            return Err(Error::InvalidTableau(format!(
                "expected {size} removals, got {}",
                removed.len()
            )));
        }
        let mut rows: Vec<Vec<u32>> = shape.rows().iter().map(|&r| vec![0; r]).collect();
        for (k, c) in removed.iter().enumerate() {
            if !shape.contains(*c) {
                return Err(Error::CellOutside(*c));
            }
            rows[c.row - 1][c.col - 1] = (size - k) as u32;
        }
        StandardTableau::new(shape, rows)
    }

    pub fn shape(&self) -> &YoungDiagram {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn entry(&self, c: Cell) -> Option<u32> {
        self.rows.get(c.row.checked_sub(1)?)?.get(c.col.checked_sub(1)?).copied()
    }

    /// Cell holding `v`, i.e. `T^{-1}(v)`.
    pub fn position(&self, v: u32) -> Option<Cell> {
        self.shape.cells().find(|&c| self.entry(c) == Some(v))
    }

    /// Cells indexed by entry: element `v - 1` is the cell of `v`.
    pub fn positions(&self) -> Vec<Cell> {
        let mut out = vec![Cell::new(0, 0); self.shape.size()];
        for c in self.shape.cells() {
            out[self.entry(c).unwrap() as usize - 1] = c;
        }
        out
    }

    pub fn to_filling(&self) -> Filling {
        self.shape.cells().map(|c| (c, self.entry(c).unwrap())).collect()
    }

    /// Restriction to the cells `>= corner`, keeping original coordinates
    /// and entries.
    pub fn subtableau(&self, corner: Cell) -> Result<Filling> {
        self.shape.check(corner)?;
        Ok(self
            .shape
            .cells()
            .filter(|c| corner.le(c))
            .map(|c| (c, self.entry(c).unwrap()))
            .collect())
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// A filling of a shape whose empty cells (entry 0) form a top-left justified
/// Young diagram, as produced by the sliding steps of the Edelman-Greene map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewFilling {
    pub shape: YoungDiagram,
    pub rows: Vec<Vec<u32>>,
}

impl SkewFilling {
    pub fn value(&self, c: Cell) -> u32 {
        if c.row == 0 || c.col == 0 {
            return 0;
        }
        self.rows
            .get(c.row - 1)
            .and_then(|r| r.get(c.col - 1))
            .copied()
            .unwrap_or(0)
    }

    pub fn nonzero_count(&self) -> usize {
        self.rows.iter().flatten().filter(|&&v| v != 0).count()
    }

    /// Row lengths of the empty region.
    pub fn empty_region(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().take_while(|&&v| v == 0).count())
            .collect()
    }

    /// Checks that zeros form a nested Young diagram and that nonzero entries
    /// strictly increase along rows and columns.
    pub fn check_invariants(&self) -> Result<()> {
        let empty = self.empty_region();
        for (i, row) in self.rows.iter().enumerate() {
            if row[empty[i]..].iter().any(|&v| v == 0) {
                return Err(Error::Inconsistent(format!("hole inside row {}", i + 1)));
            }
        }
        if YoungDiagram::from_lengths(empty).is_err() {
            return Err(Error::Inconsistent("empty region is not a diagram".into()));
        }
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                let left = if j > 0 { row[j - 1] } else { 0 };
                let up = if i > 0 { self.rows[i - 1][j] } else { 0 };
                if (left != 0 && left >= v) || (up != 0 && up >= v) {
                    return Err(Error::Inconsistent(format!(
                        "entries not increasing at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Every standard tableau of shape `shape`, subject to the default cap.
pub fn enumerate_syt(shape: &YoungDiagram) -> Result<std::vec::IntoIter<StandardTableau>> {
    enumerate_syt_with_cap(shape, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_syt_with_cap(
    shape: &YoungDiagram,
    cap: usize,
) -> Result<std::vec::IntoIter<StandardTableau>> {
    let size = shape.size();
    if size > cap {
        return Err(Error::EnumerationCap { size, cap });
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = shape.rows().iter().map(|&r| vec![0; r]).collect();
    let mut lens = shape.rows().to_vec();
    fill_from_top(&mut lens, &mut rows, size as u32, shape, &mut out);
    Ok(out.into_iter())
}

// Places `next` at each corner of the remaining shape, then recurses.
fn fill_from_top(
    lens: &mut Vec<usize>,
    rows: &mut Vec<Vec<u32>>,
    next: u32,
    shape: &YoungDiagram,
    out: &mut Vec<StandardTableau>,
) {
    if next == 0 {
        out.push(StandardTableau::from_parts_unchecked(shape.clone(), rows.clone()));
        return;
    }
    for i in 0..lens.len() {
        let len = lens[i];
        if len == 0 || lens.get(i + 1).is_some_and(|&l| l >= len) {
            continue;
        }
        rows[i][len - 1] = next;
        lens[i] -= 1;
        fill_from_top(lens, rows, next - 1, shape, out);
        lens[i] += 1;
        rows[i][len - 1] = 0;
    }
}

/// All Young diagrams with `size` boxes, largest first row first.
pub fn partitions(size: usize) -> Vec<YoungDiagram> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        if rest == 0 {
            out.push(YoungDiagram { rows: cur.clone() });
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(size, size, &mut Vec::new(), &mut out);
    out
}
