//! 4×4 R-matrices, their embeddings into `(C^2)^{⊗n}`, geometric R-matrices
//! from Stab matrices, and the Yangian comparison.

use std::fmt;

use crate::combinat::{graded_subsets, Permutation, Subset, TensorBasisIndex};
use crate::error::{Error, Result};
use crate::exactalg::{rf_solve, LinearForm, Polynomial, RFMatrix, RationalFunction, VarId};
use crate::fixedpoints::VersionTag;
use crate::weightfn::{weight_function, WeightFunctionSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    GeometricR,
    GeometricRcheck,
    YangianR,
    YangianRcheck,
}

impl Flavor {
    pub fn is_yangian(self) -> bool {
        matches!(self, Flavor::YangianR | Flavor::YangianRcheck)
    }

    pub fn is_check(self) -> bool {
        matches!(self, Flavor::GeometricRcheck | Flavor::YangianRcheck)
    }

    /// The spectral variable: `zeta` for geometric matrices, `u` for Yangian.
    pub fn spectral(self) -> VarId {
        if self.is_yangian() {
            VarId::U
        } else {
            VarId::Zeta
        }
    }

    fn toggled(self) -> Flavor {
        match self {
            Flavor::GeometricR => Flavor::GeometricRcheck,
            Flavor::GeometricRcheck => Flavor::GeometricR,
            Flavor::YangianR => Flavor::YangianRcheck,
            Flavor::YangianRcheck => Flavor::YangianR,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::GeometricR => "geometric-R",
            Flavor::GeometricRcheck => "geometric-Rcheck",
            Flavor::YangianR => "yangian-R",
            Flavor::YangianRcheck => "yangian-Rcheck",
        }
    }
}

/// A 4×4 matrix on `C^2 ⊗ C^2` in the basis `v1⊗v1, v1⊗v2, v2⊗v1, v2⊗v2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    pub entries: RFMatrix,
    pub flavor: Flavor,
    pub version: VersionTag,
}

/// Parities of `(v1, v2)`.
pub fn parities(r: VersionTag) -> [u8; 2] {
    match r {
        VersionTag::R00 => [0, 0],
        VersionTag::R10 => [0, 1],
        VersionTag::R01 => [1, 0],
        VersionTag::R11 => [1, 1],
    }
}

fn rf(s: &str) -> RationalFunction {
    crate::exactalg::parse_rf(s).expect("built-in expression")
}

/// The swap operator, with a `-1` when two odd vectors are exchanged if
/// `graded` is set.
fn swap_matrix(r: VersionTag, graded: bool) -> RFMatrix {
    let p = parities(r);
    RFMatrix::from_fn(4, 4, |row, col| {
        let (i, j) = (col / 2, col % 2);
        if row != 2 * j + i {
            return RationalFunction::zero();
        }
        if graded && p[i] * p[j] == 1 {
            RationalFunction::int(-1)
        } else {
            RationalFunction::one()
        }
    })
}

impl RMatrix {
    pub fn new(entries: RFMatrix, flavor: Flavor, version: VersionTag) -> Result<Self> {
        if entries.rows() != 4 || entries.cols() != 4 {
            return Err(Error::SizeMismatch(format!("R-matrix must be 4×4, got {}×{}", entries.rows(), entries.cols())));
        }
        Ok(RMatrix { entries, flavor, version })
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        self.entries.get(i, j)
    }

    /// True when all entries off the 1+2+1 block diagonal vanish.
    pub fn is_block_diagonal(&self) -> bool {
        let block = |i: usize| match i {
            0 => 0,
            3 => 2,
            _ => 1,
        };
        (0..4).all(|i| (0..4).all(|j| block(i) == block(j) || self.get(i, j).is_zero()))
    }

    /// `entries` with the spectral variable replaced by `arg`.
    pub fn at(&self, arg: &RationalFunction) -> Result<RFMatrix> {
        let v = self.flavor.spectral();
        self.entries.try_map(|e| e.substitute_rf(&[(v, arg.clone())]))
    }

    pub fn to_latex(&self) -> String {
        matrix_latex(&self.entries)
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = ["v1⊗v1", "v1⊗v2", "v2⊗v1", "v2⊗v2"].map(String::from).to_vec();
        write!(f, "{}", render_grid(&self.entries, &labels))
    }
}

/// `R^(r)(ζ)`.
pub fn closed_form_r(r: VersionTag) -> RMatrix {
    let ratio = rf("(h + zeta)/(h - zeta)");
    let top = if r.second_odd() { ratio.clone() } else { RationalFunction::one() };
    let bottom = if r.first_odd() { ratio } else { RationalFunction::one() };
    let m = rf("zeta/(h - zeta)");
    let o = rf("h/(h - zeta)");
    let z = RationalFunction::zero;
    let entries = RFMatrix::from_rows(vec![
        vec![top, z(), z(), z()],
        vec![z(), m.clone(), o.clone(), z()],
        vec![z(), o, m, z()],
        vec![z(), z(), z(), bottom],
    ])
    .expect("4×4");
    RMatrix { entries, flavor: Flavor::GeometricR, version: r }
}

/// `(R_r(u), Ř_r(u))` with `R = 1 + u P` and the super sign rule.
pub fn yangian_r(r: VersionTag) -> (RMatrix, RMatrix) {
    let p = swap_matrix(r, true);
    let u = RationalFunction::var(VarId::U);
    let entries = RFMatrix::from_fn(4, 4, |i, j| {
        let id = if i == j { RationalFunction::one() } else { RationalFunction::zero() };
        id.add(&u.mul(p.get(i, j)))
    });
    let rm = RMatrix { entries, flavor: Flavor::YangianR, version: r };
    let rc = check_matrix(&rm);
    (rm, rc)
}

/// `P ∘ R`; the swap carries super signs for the Yangian flavors.
pub fn check_matrix(m: &RMatrix) -> RMatrix {
    let p = swap_matrix(m.version, m.flavor.is_yangian());
    let entries = p.mul(&m.entries).expect("4×4 product");
    RMatrix { entries, flavor: m.flavor.toggled(), version: m.version }
}

/// An operator on `(C^2)^{⊗n}` with rows and columns indexed by subsets in
/// `(|I|, lex)` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigOperator {
    n: usize,
    basis: Vec<Subset>,
    matrix: RFMatrix,
}

impl BigOperator {
    pub fn new(n: usize, matrix: RFMatrix) -> Result<Self> {
        let basis = graded_subsets(n);
        if matrix.rows() != basis.len() || matrix.cols() != basis.len() {
            return Err(Error::SizeMismatch(format!("operator on (C^2)^{n} must be {0}×{0}", basis.len())));
        }
        Ok(BigOperator { n, basis, matrix })
    }

    pub fn identity(n: usize) -> Self {
        let d = 1usize << n;
        BigOperator { n, basis: graded_subsets(n), matrix: RFMatrix::identity(d) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Subset] {
        &self.basis
    }

    pub fn matrix(&self) -> &RFMatrix {
        &self.matrix
    }

    pub fn get(&self, row: &Subset, col: &Subset) -> Option<&RationalFunction> {
        let i = self.basis.iter().position(|s| s == row)?;
        let j = self.basis.iter().position(|s| s == col)?;
        Some(self.matrix.get(i, j))
    }

    pub fn mul(&self, o: &BigOperator) -> Result<BigOperator> {
        if self.n != o.n {
            return Err(Error::SizeMismatch("operators on different tensor powers".into()));
        }
        Ok(BigOperator { n: self.n, basis: self.basis.clone(), matrix: self.matrix.mul(&o.matrix)? })
    }

    /// Entries connecting different `|I|` are zero.
    pub fn preserves_sectors(&self) -> bool {
        let d = self.basis.len();
        (0..d).all(|i| (0..d).all(|j| self.basis[i].k() == self.basis[j].k() || self.matrix.get(i, j).is_zero()))
    }

    /// Entries with common `z_i - z_j + εh` and `h` factors cancelled.
    pub fn simplified(&self) -> BigOperator {
        let cands = candidate_forms(self.n);
        BigOperator { n: self.n, basis: self.basis.clone(), matrix: self.matrix.map(|e| e.cancel_candidates(&cands)) }
    }

    pub fn labels(&self) -> Vec<String> {
        self.basis.iter().map(|s| TensorBasisIndex::new(s.clone()).to_string()).collect()
    }

    pub fn to_latex(&self) -> String {
        matrix_latex(&self.matrix)
    }
}

impl fmt::Display for BigOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_grid(&self.matrix, &self.labels()))
    }
}

fn candidate_forms(n: usize) -> Vec<LinearForm> {
    let mut out = vec![LinearForm::var(VarId::H)];
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                for eps in [-1, 0, 1] {
                    out.push(LinearForm::diff(VarId::z(i), VarId::z(j), eps));
                }
            }
        }
    }
    out
}

/// `R_{u,v}(arg)` acting on factors `u` and `v` of `(C^2)^{⊗n}`. With
/// `graded` set, Koszul signs for the parities of `m.version` are applied.
pub fn embed(m: &RMatrix, n: usize, u: usize, v: usize, arg: &RationalFunction, graded: bool) -> Result<BigOperator> {
    if u == v || u == 0 || v == 0 || u > n || v > n {
        return Err(Error::Domain(format!("factors {u}, {v} must be distinct in 1..{n}")));
    }
    let local = m.at(arg)?;
    let p = parities(m.version);
    let basis = graded_subsets(n);
    let loc = |s: &Subset| 2 * s.contains(u) as usize + s.contains(v) as usize;
    let (lo, hi) = (u.min(v), u.max(v));
    let matrix = RFMatrix::from_fn(basis.len(), basis.len(), |i, j| {
        let (row, col) = (&basis[i], &basis[j]);
        let same_outside = (1..=n).filter(|&w| w != u && w != v).all(|w| row.contains(w) == col.contains(w));
        if !same_outside {
            return RationalFunction::zero();
        }
        let e = local.get(loc(row), loc(col));
        if !graded || e.is_zero() {
            return e.clone();
        }
        let between: u8 = (lo + 1..hi).map(|w| p[row.contains(w) as usize]).sum();
        let moved = p[row.contains(hi) as usize] + p[col.contains(hi) as usize];
        if (moved * between) % 2 == 1 {
            e.neg()
        } else {
            e.clone()
        }
    });
    Ok(BigOperator { n, basis, matrix })
}

/// Checks `R12 R13 R23 = R23 R13 R12` on `(C^2)^{⊗3}`. Geometric matrices
/// take `ζ = z_i - z_j`; Yangian ones take `u = -h/(z_i - z_j)` with the
/// graded embedding.
pub fn yang_baxter_check(m: &RMatrix) -> Result<bool> {
    let yang = m.flavor.is_yangian();
    let arg = |i: usize, j: usize| {
        let d = Polynomial::var(VarId::z(i)).sub(&Polynomial::var(VarId::z(j)));
        if yang {
            RationalFunction::new_unchecked(Polynomial::var(VarId::H).neg(), d)
        } else {
            RationalFunction::from_poly(d)
        }
    };
    let r12 = embed(m, 3, 1, 2, &arg(1, 2), yang)?;
    let r13 = embed(m, 3, 1, 3, &arg(1, 3), yang)?;
    let r23 = embed(m, 3, 2, 3, &arg(2, 3), yang)?;
    let lhs = r12.mul(&r13)?.mul(&r23)?;
    let rhs = r23.mul(&r13)?.mul(&r12)?;
    Ok(lhs.matrix.differences(&rhs.matrix).is_empty())
}

/// `Stab^(r)_σ` as a `2^n × 2^n` matrix: column `I` holds the restrictions
/// of `W^(r)_{σ,I}`.
pub fn stab_matrix(r: VersionTag, n: usize, sigma: &Permutation) -> Result<BigOperator> {
    if n > 3 {
        return Err(Error::GuardViolation { guard: "n <= 3", detail: format!("n = {n}") });
    }
    if sigma.n() != n {
        return Err(Error::SizeMismatch(format!("permutation {sigma} does not act on 1..{n}")));
    }
    let basis = graded_subsets(n);
    let d = basis.len();
    let mut matrix = RFMatrix::zeros(d, d);
    for (col, i) in basis.iter().enumerate() {
        let w = weight_function(&WeightFunctionSpec::new(r, sigma.clone(), i.clone())?);
        for (row, j) in basis.iter().enumerate() {
            if j.k() == i.k() {
                matrix.set(row, col, RationalFunction::from_poly(w.restrict(j)?));
            }
        }
    }
    Ok(BigOperator { n, basis, matrix })
}

/// `Stab(σ s_a)^{-1} Stab(σ)`, solved block by block.
pub fn geometric_r(r: VersionTag, n: usize, sigma: &Permutation, a: usize) -> Result<BigOperator> {
    if a == 0 || a >= n {
        return Err(Error::Domain(format!("a = {a} must lie in 1..{}", n.saturating_sub(1))));
    }
    let target = stab_matrix(r, n, &sigma.times_simple(a)?)?;
    let source = stab_matrix(r, n, sigma)?;
    let d = target.basis.len();
    let mut out = RFMatrix::zeros(d, d);
    for k in 0..=n {
        let idx: Vec<usize> = (0..d).filter(|&i| target.basis[i].k() == k).collect();
        let x = rf_solve(&target.matrix.select(&idx, &idx), &source.matrix.select(&idx, &idx))?;
        for (a_, &i) in idx.iter().enumerate() {
            for (b_, &j) in idx.iter().enumerate() {
                out.set(i, j, x.get(a_, b_).clone());
            }
        }
    }
    Ok(BigOperator { n, basis: target.basis, matrix: out }.simplified())
}

/// `R^(r)` placed on factors `σ(a), σ(a+1)` with `ζ = z_{σ(a+1)} - z_{σ(a)}`.
pub fn predicted_geometric_r(r: VersionTag, n: usize, sigma: &Permutation, a: usize) -> Result<BigOperator> {
    let (u, v) = (sigma.apply(a), sigma.apply(a + 1));
    let zeta = RationalFunction::from_poly(Polynomial::var(VarId::z(v)).sub(&Polynomial::var(VarId::z(u))));
    embed(&closed_form_r(r), n, u, v, &zeta, false)
}

/// Whether the geometric R-matrix equals the embedded closed form.
pub fn ltc_check(r: VersionTag, n: usize, sigma: &Permutation, a: usize) -> Result<bool> {
    let got = geometric_r(r, n, sigma, a)?;
    let want = predicted_geometric_r(r, n, sigma, a)?;
    Ok(got.matrix.differences(&want.matrix).is_empty())
}

/// `R^(r)(ζ) R^(r)(-ζ) = 1`.
pub fn unitarity_check(r: VersionTag) -> Result<bool> {
    let m = closed_form_r(r);
    let a = m.at(&RationalFunction::var(VarId::Zeta))?;
    let b = m.at(&RationalFunction::var(VarId::Zeta).neg())?;
    Ok(a.mul(&b)?.differences(&RFMatrix::identity(4)).is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentificationReport {
    pub version: VersionTag,
    /// `Ř_r(u)/(1+u)` at `u = -h/ζ`.
    pub yangian: RFMatrix,
    /// `P ∘ R^(r)(ζ)`.
    pub geometric: RFMatrix,
    pub mismatches: Vec<(usize, usize)>,
    /// Agreement after conjugating by `diag(1, 1, -1, 1)`.
    pub conjugate_agrees: bool,
}

impl IdentificationReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the normalized Yangian `Ř_r` with the geometric `Ř^(r)`.
pub fn yangian_identification(r: VersionTag) -> Result<IdentificationReport> {
    let (_, rc) = yangian_r(r);
    let one_plus_u = rf("1 + u");
    let sub = rf("-h/zeta");
    let yangian = rc.entries.try_map(|e| e.div(&one_plus_u)?.substitute_rf(&[(VarId::U, sub.clone())]))?;
    let geometric = check_matrix(&closed_form_r(r)).entries;
    let mismatches = yangian.differences(&geometric);
    let dsign = |i: usize| if i == 2 { -1 } else { 1 };
    let conj = RFMatrix::from_fn(4, 4, |i, j| {
        let e = yangian.get(i, j);
        if dsign(i) * dsign(j) < 0 {
            e.neg()
        } else {
            e.clone()
        }
    });
    let conjugate_agrees = conj.differences(&geometric).is_empty();
    Ok(IdentificationReport { version: r, yangian, geometric, mismatches, conjugate_agrees })
}

pub(crate) fn render_grid(m: &RFMatrix, labels: &[String]) -> String {
    let cells: Vec<Vec<String>> =
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect();
    let mut widths = vec![0; m.cols()];
    for row in &cells {
        for (j, c) in row.iter().enumerate() {
            widths[j] = widths[j].max(c.chars().count());
        }
    }
    let lw = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (i, row) in cells.iter().enumerate() {
        let label = labels.get(i).map(String::as_str).unwrap_or("");
        out.push_str(&format!("{label:<lw$} | "));
        for (j, c) in row.iter().enumerate() {
            out.push_str(&format!("{c:<w$}", w = widths[j]));
            if j + 1 < row.len() {
                out.push_str("  ");
            }
        }
        out.push('\n');
    }
    out
}

pub(crate) fn matrix_latex(m: &RFMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_latex()).collect::<Vec<_>>().join(" & "))
        .collect();
    format!("\\begin{{bmatrix}}\n{}\n\\end{{bmatrix}}", rows.join(" \\\\\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_corners() {
        let m = closed_form_r(VersionTag::R10);
        assert!(m.get(0, 0).to_poly().unwrap().is_one());
        assert_eq!(m.get(3, 3), &rf("(h + zeta)/(h - zeta)"));
        assert!(m.is_block_diagonal());
    }

    #[test]
    fn check_is_an_involution() {
        for r in VersionTag::ALL {
            let m = closed_form_r(r);
            let c = check_matrix(&m);
            assert_eq!(c.get(1, 1), &rf("h/(h - zeta)"));
            assert_eq!(check_matrix(&c).entries, m.entries);
            let (y, yc) = yangian_r(r);
            assert_eq!(check_matrix(&yc).entries, y.entries);
        }
    }

    #[test]
    fn yangian_displays() {
        let (r11, c11) = yangian_r(VersionTag::R11);
        assert_eq!(r11.get(0, 0), &rf("1 - u"));
        assert_eq!(r11.get(1, 2), &rf("-u"));
        assert_eq!(c11.get(1, 1), &rf("u"));
        assert_eq!(c11.get(1, 2), &rf("-1"));
        let (_, c10) = yangian_r(VersionTag::R10);
        assert_eq!(c10.get(3, 3), &rf("u - 1"));
    }

    #[test]
    fn embedding_basics() {
        let m = closed_form_r(VersionTag::R00);
        let e = embed(&m, 2, 1, 2, &RationalFunction::var(VarId::Zeta), false).unwrap();
        // Graded order swaps the two middle basis vectors; the block is symmetric.
        assert_eq!(e.matrix.get(1, 2), m.get(2, 1));
        let id = RMatrix::new(RFMatrix::identity(4), Flavor::GeometricR, VersionTag::R00).unwrap();
        let e = embed(&id, 3, 1, 3, &RationalFunction::var(VarId::Zeta), false).unwrap();
        assert_eq!(e, BigOperator::identity(3));
    }
}
