use std::fmt;

use super::poly::Polynomial;
use super::ratfun::RationalFunction;
use crate::error::{Error, Result};

/// Dense matrix of rational functions.
#[derive(Clone, PartialEq, Eq)]
pub struct RFMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RationalFunction>,
}

impl RFMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RFMatrix { rows, cols, entries: vec![RationalFunction::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { RationalFunction::one() } else { RationalFunction::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> RationalFunction) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RFMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<RationalFunction>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        Ok(RFMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RationalFunction] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        RFMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&RationalFunction) -> Result<RationalFunction>) -> Result<Self> {
        Ok(RFMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn mul(&self, o: &RFMatrix) -> Result<RFMatrix> {
        if self.cols != o.rows {
            return Err(Error::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = RFMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = RationalFunction::zero();
                for l in 0..self.cols {
                    let a = self.get(i, l);
                    let b = o.get(l, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                out.set(i, j, acc.light_reduce());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, o: &RFMatrix) -> Result<RFMatrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::SizeMismatch("matrix difference".into()));
        }
        Ok(RFMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RationalFunction::is_zero)
    }

    /// Submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RFMatrix {
        RFMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Positions `(i, j)` where the two matrices differ.
    pub fn differences(&self, o: &RFMatrix) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for i in 0..self.rows.min(o.rows) {
            for j in 0..self.cols.min(o.cols) {
                if self.get(i, j) != o.get(i, j) {
                    v.push((i, j));
                }
            }
        }
        v
    }
}

impl fmt::Debug for RFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Multiplies every entry of a row by the product of its distinct
/// denominators, returning polynomial rows.
fn clear_row(row: &[&RationalFunction]) -> Vec<Polynomial> {
    let mut dens: Vec<&Polynomial> = Vec::new();
    for e in row {
        if !e.den().is_one() && !dens.contains(&e.den()) {
            dens.push(e.den());
        }
    }
    let l = dens.iter().fold(Polynomial::one(), |acc, d| acc.mul(d));
    row.iter()
        .map(|e| {
            if e.den().is_one() {
                e.num().mul(&l)
            } else {
                let cof = l.div_exact(e.den()).expect("denominator divides the product");
                e.num().mul(&cof)
            }
        })
        .collect()
}

/// Solves `M·X = B` over the field of rational functions.
///
/// Rows are cleared of denominators, then fraction-free (Bareiss)
/// elimination runs with the pivot of fewest terms in the current column.
/// The result is checked by substituting back.
pub fn rf_solve(m: &RFMatrix, b: &RFMatrix) -> Result<RFMatrix> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::SizeMismatch(format!("coefficient matrix is {}x{}", n, m.cols())));
    }
    if b.rows() != n {
        return Err(Error::SizeMismatch(format!("right-hand side has {} rows, expected {n}", b.rows())));
    }
    let nb = b.cols();
    let w = n + nb;
    let mut a: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| {
            let row: Vec<&RationalFunction> = m.row(i).iter().chain(b.row(i).iter()).collect();
            clear_row(&row)
        })
        .collect();

    let mut prev = Polynomial::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].len());
        let Some(p) = pivot else {
            return Err(Error::SingularMatrix { rank: k, dim: n });
        };
        a.swap(k, p);
        let (top, bottom) = a.split_at_mut(k + 1);
        let pr = &top[k];
        for row in bottom.iter_mut() {
            let aik = row[k].clone();
            for j in (k + 1)..w {
                let t = pr[k].mul(&row[j]).sub(&aik.mul(&pr[j]));
                row[j] = t.div_exact(&prev).expect("Bareiss step divides exactly");
            }
            row[k] = Polynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let det = prev;

    // Fraction-free back substitution: Y = det·X.
    let mut x = RFMatrix::zeros(n, nb);
    for c in 0..nb {
        let mut y: Vec<Polynomial> = vec![Polynomial::zero(); n];
        for i in (0..n).rev() {
            let mut acc = det.mul(&a[i][n + c]);
            for j in (i + 1)..n {
                if !a[i][j].is_zero() {
                    acc = acc.sub(&a[i][j].mul(&y[j]));
                }
            }
            y[i] = acc.div_exact(&a[i][i]).expect("back substitution divides exactly");
        }
        for (i, yi) in y.into_iter().enumerate() {
            x.set(i, c, RationalFunction::new_unchecked(yi, det.clone()).light_reduce());
        }
    }

    let check = m.mul(&x)?.sub(b)?;
    if !check.is_zero() {
        return Err(Error::Domain("back substitution check failed".into()));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_rf;

    fn rf(s: &str) -> RationalFunction {
        parse_rf(s).unwrap()
    }

    #[test]
    fn identity_system() {
        let b = RFMatrix::from_rows(vec![vec![rf("z1"), rf("h/z2")], vec![rf("1"), rf("z1 - z2")]]).unwrap();
        assert_eq!(rf_solve(&RFMatrix::identity(2), &b).unwrap(), b);
    }

    #[test]
    fn diagonal_system() {
        let m = RFMatrix::from_rows(vec![vec![rf("z1"), rf("0")], vec![rf("0"), rf("z2")]]).unwrap();
        let x = rf_solve(&m, &RFMatrix::identity(2)).unwrap();
        assert_eq!(x.get(0, 0), &rf("1/z1"));
        assert_eq!(x.get(1, 1), &rf("1/z2"));
        assert!(x.get(0, 1).is_zero());
    }

    #[test]
    fn singular_detected() {
        let m = RFMatrix::from_rows(vec![vec![rf("z1"), rf("z2")], vec![rf("2z1"), rf("2z2")]]).unwrap();
        assert_eq!(
            rf_solve(&m, &RFMatrix::identity(2)).unwrap_err(),
            Error::SingularMatrix { rank: 1, dim: 2 }
        );
    }

    #[test]
    fn rational_entries() {
        let m = RFMatrix::from_rows(vec![
            vec![rf("1/(z1 - z2)"), rf("h")],
            vec![rf("z3"), rf("(z1 + h)/(z2 - h)")],
        ])
        .unwrap();
        let b = RFMatrix::from_rows(vec![vec![rf("1")], vec![rf("z1")]]).unwrap();
        let x = rf_solve(&m, &b).unwrap();
        assert!(m.mul(&x).unwrap().sub(&b).unwrap().is_zero());
    }
}
