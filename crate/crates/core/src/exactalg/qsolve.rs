use std::collections::BTreeMap;

use super::rational::Rational;

/// Sparse linear row `Σ c_j x_j = rhs`.
#[derive(Clone, Debug, Default)]
pub struct SparseRow {
    pub coeffs: BTreeMap<usize, Rational>,
    pub rhs: Rational,
}

/// Incremental Gauss–Jordan elimination over ℚ.
///
/// Rows are reduced against the pivots found so far as they arrive; pivot
/// columns are chosen as the smallest column index, and free variables are
/// set to zero in the returned solution.
#[derive(Debug, Default)]
pub struct QSolver {
    pivots: BTreeMap<usize, SparseRow>,
    inconsistent: bool,
}

impl QSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn add_row(&mut self, mut row: SparseRow) {
        row.coeffs.retain(|_, c| !c.is_zero());
        let cols: Vec<usize> = row.coeffs.keys().copied().filter(|c| self.pivots.contains_key(c)).collect();
        for c in cols {
            let Some(f) = row.coeffs.get(&c).cloned() else { continue };
            let p = &self.pivots[&c];
            for (j, a) in &p.coeffs {
                let v = row.coeffs.entry(*j).or_default();
                *v -= &(&f * a);
            }
            row.rhs -= &(&f * &p.rhs);
            row.coeffs.retain(|_, c| !c.is_zero());
        }
        let Some((&pc, lead)) = row.coeffs.iter().next() else {
            if !row.rhs.is_zero() {
                self.inconsistent = true;
            }
            return;
        };
        let inv = lead.recip();
        for v in row.coeffs.values_mut() {
            *v *= &inv;
        }
        row.rhs *= &inv;
        for p in self.pivots.values_mut() {
            if let Some(f) = p.coeffs.get(&pc).cloned() {
                for (j, a) in &row.coeffs {
                    let v = p.coeffs.entry(*j).or_default();
                    *v -= &(&f * a);
                }
                p.rhs -= &(&f * &row.rhs);
                p.coeffs.retain(|_, c| !c.is_zero());
            }
        }
        self.pivots.insert(pc, row);
    }

    /// The solution with free variables set to zero, or `None` when the
    /// system is inconsistent.
    pub fn solution(&self, nvars: usize) -> Option<Vec<Rational>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![Rational::zero(); nvars];
        for (c, row) in &self.pivots {
            // Fully reduced rows only mention their pivot and free columns.
            x[*c] = row.rhs.clone();
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(c: &[(usize, i64)], rhs: i64) -> SparseRow {
        SparseRow {
            coeffs: c.iter().map(|&(j, v)| (j, Rational::from_int(v))).collect(),
            rhs: Rational::from_int(rhs),
        }
    }

    #[test]
    fn solves_and_zeroes_free_variables() {
        let mut s = QSolver::new();
        s.add_row(row(&[(0, 1), (1, 1), (2, 1)], 3));
        s.add_row(row(&[(1, 1), (2, -1)], 1));
        let x = s.solution(3).unwrap();
        assert_eq!(x, vec![Rational::from_int(2), Rational::from_int(1), Rational::zero()]);
    }

    #[test]
    fn detects_inconsistency() {
        let mut s = QSolver::new();
        s.add_row(row(&[(0, 1), (1, 1)], 1));
        s.add_row(row(&[(0, 2), (1, 2)], 3));
        assert!(s.solution(2).is_none());
    }
}
