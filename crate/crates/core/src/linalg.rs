//! Exact linear algebra over the rationals on sparse rows.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Nonzero entries sorted by column.
pub type SparseRow = Vec<(usize, Rational)>;

pub fn sparse_from_dense(v: &[Rational]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn dense_from_sparse(v: &SparseRow, ncols: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); ncols];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

fn entry(v: &SparseRow, col: usize) -> Option<&Rational> {
    v.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &v[i].1)
}

/// `a - c * b`.
fn axpy(a: &SparseRow, c: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0);
        let cb = b.get(j).map(|e| e.0);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = &a[i].1 - c * &b[j].1;
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(a[i].clone());
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(c * &b[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Reduced row-echelon form: rows are normalized to a leading one, pivots
/// strictly increase, and each pivot column is zero outside its own row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowEchelon {
    ncols: usize,
    rows: Vec<SparseRow>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn empty(ncols: usize) -> Self {
        RowEchelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows(rows: impl IntoIterator<Item = SparseRow>, ncols: usize) -> Self {
        let mut e = RowEchelon::empty(ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn from_dense(rows: &[Vec<Rational>], ncols: usize) -> Self {
        Self::from_rows(rows.iter().map(|r| sparse_from_dense(r)), ncols)
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn dense_rows(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| dense_from_sparse(r, self.ncols))
            .collect()
    }

    /// Residue of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &SparseRow) -> SparseRow {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = entry(&r, p).cloned() {
                r = axpy(&r, &c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseRow) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseRow) -> bool {
        let mut r = self.reduce(&v);
        let Some((p, lead)) = r.first().cloned() else {
            return false;
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for (_, c) in &mut r {
                *c = &*c * &inv;
            }
        }
        for row in &mut self.rows {
            if let Some(c) = entry(row, p).cloned() {
                *row = axpy(row, &c, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Basis of `{x : A x = 0}` where `A` has the stored rows, indexed by the
    /// free columns in increasing order.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if let Some(c) = entry(row, f) {
                        v[p] = -c.clone();
                    }
                }
                v
            })
            .collect()
    }
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    RowEchelon::from_dense(rows, ncols).rank()
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rref_is_canonical() {
        let a = RowEchelon::from_dense(&[row(&[2, 4, 0]), row(&[1, 2, 1])], 3);
        let b = RowEchelon::from_dense(&[row(&[0, 0, 5]), row(&[3, 6, 3]), row(&[1, 2, 0])], 3);
        assert_eq!(a, b);
        assert_eq!(a.pivots(), &[0, 2]);
        assert_eq!(a.dense_rows(), vec![row(&[1, 2, 0]), row(&[0, 0, 1])]);
    }

    #[test]
    fn nullspace_annihilates() {
        let rows = [row(&[1, 2, 3, 4]), row(&[2, 4, 7, 9])];
        let e = RowEchelon::from_dense(&rows, 4);
        let ns = e.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            for r in &rows {
                let dot: Rational = r.iter().zip(&v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&[row(&[0, 2]), row(&[3, 1])]), int(-6));
        assert_eq!(determinant(&[row(&[1, 2]), row(&[2, 4])]), int(0));
    }
}
