//! Exact linear algebra: polynomial matrices with determinants, and
//! Gaussian elimination over the base field at rational points.

use crate::poly::{Coefficient, PolyError, PolyRing, Polynomial};

/// Dense `rows × cols` polynomial matrix; `rows` may be zero with `cols > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: PolyRing,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

/// Below this size determinants use cofactor expansion, Bareiss above.
const COFACTOR_LIMIT: usize = 4;

impl PolyMatrix {
    pub fn new(ring: PolyRing, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        PolyMatrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(ring: PolyRing, cols: usize, rows: Vec<Vec<Polynomial>>) -> Self {
        let r = rows.len();
        let entries: Vec<Polynomial> = rows.into_iter().flatten().collect();
        Self::new(ring, r, cols, entries)
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn submatrix(
        &self,
        rows: &[usize],
        cols: &[usize],
    ) -> Result<Vec<Vec<Polynomial>>, PolyError> {
        if let Some(&i) = rows.iter().find(|&&i| i >= self.rows) {
            return Err(PolyError::VariableOutOfRange {
                index: i,
                nvars: self.rows,
            });
        }
        if let Some(&j) = cols.iter().find(|&&j| j >= self.cols) {
            return Err(PolyError::VariableOutOfRange {
                index: j,
                nvars: self.cols,
            });
        }
        Ok(rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect())
    }

    /// Entrywise evaluation at a point.
    pub fn evaluate(&self, point: &[Coefficient]) -> Result<Vec<Vec<Coefficient>>, PolyError> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.evaluate(point)).collect())
            .collect()
    }
}

/// Determinant of a square polynomial matrix; the empty matrix has
/// determinant 1.
pub fn determinant(ring: PolyRing, m: &[Vec<Polynomial>]) -> Polynomial {
    if m.len() <= COFACTOR_LIMIT {
        det_cofactor(ring, m)
    } else {
        det_bareiss(ring, m)
    }
}

pub fn det_cofactor(ring: PolyRing, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    match n {
        0 => ring.one(),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = ring.zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &det_cofactor(ring, &minor);
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// Fraction-free Gaussian elimination; every division is exact in `k[x]`.
pub fn det_bareiss(ring: PolyRing, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    let mut a: Vec<Vec<Polynomial>> = m.to_vec();
    let mut prev = ring.one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return ring.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Result of row-reducing a matrix over the base field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotSelection {
    pub rank: usize,
    /// Lexicographically first set of independent rows.
    pub rows: Vec<usize>,
    /// Pivot columns of the selected rows, ascending.
    pub cols: Vec<usize>,
}

pub fn rank(m: &[Vec<Coefficient>]) -> usize {
    echelon(m.to_vec()).len()
}

/// Picks independent rows greedily in order, then the pivot columns of
/// their reduced echelon form; the selected square submatrix is invertible.
pub fn select_pivots(m: &[Vec<Coefficient>]) -> PivotSelection {
    let mut kept: Vec<Vec<Coefficient>> = Vec::new();
    let mut rows = Vec::new();
    for (i, row) in m.iter().enumerate() {
        let mut trial = kept.clone();
        trial.push(row.clone());
        if echelon(trial.clone()).len() > kept.len() {
            kept = trial;
            rows.push(i);
        }
    }
    let pivots = echelon(kept);
    let cols = pivots.iter().map(|(c, _)| *c).collect();
    PivotSelection {
        rank: rows.len(),
        rows,
        cols,
    }
}

/// Reduced row echelon form; returns `(pivot column, row)` pairs.
fn echelon(mut m: Vec<Vec<Coefficient>>) -> Vec<(usize, Vec<Coefficient>)> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut out: Vec<(usize, Vec<Coefficient>)> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        r += 1;
    }
    for (i, row) in m.into_iter().take(r).enumerate() {
        let c = row.iter().position(|x| !x.is_zero()).expect("pivot row");
        debug_assert!(i <= c);
        out.push((c, row));
    }
    out
}
