//! Classes in the GKM model, the stable-envelope axioms, and polynomial
//! representatives.

use std::collections::BTreeMap;
use std::fmt;

use crate::combinat::{enumerate_subsets, gkm_pairs, Subset};
use crate::error::{Error, Result};
use crate::exactalg::{
    divides_linear, linear_multiplicity, LinearForm, Monomial, Polynomial, QSolver, Rational, SparseRow, VarId,
};
use crate::fixedpoints::{dimension_d, repelling_euler, repelling_vertical};
use crate::weightfn::{weight_function, WeightFunctionSpec};

/// A tuple of polynomials in `z, h`, one per fixed point `p_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GKMClass {
    n: usize,
    k: usize,
    components: BTreeMap<Subset, Polynomial>,
}

impl GKMClass {
    /// Requires a component for every `k`-subset of `{1..n}`.
    pub fn new(n: usize, k: usize, components: BTreeMap<Subset, Polynomial>) -> Result<Self> {
        let subs = enumerate_subsets(n, k)?;
        if components.len() != subs.len() || subs.iter().any(|s| !components.contains_key(s)) {
            return Err(Error::SizeMismatch(format!(
                "a class on Gr({k},{n}) needs exactly {} components, got {}",
                subs.len(),
                components.len()
            )));
        }
        if let Some((s, _)) = components.iter().find(|(_, p)| p.has_t()) {
            return Err(Error::Domain(format!("component at {s} depends on t")));
        }
        Ok(GKMClass { n, k, components })
    }

    /// Components listed in lexicographic order of the subsets.
    pub fn from_list(n: usize, k: usize, list: Vec<Polynomial>) -> Result<Self> {
        let subs = enumerate_subsets(n, k)?;
        if subs.len() != list.len() {
            return Err(Error::SizeMismatch(format!("expected {} components, got {}", subs.len(), list.len())));
        }
        Self::new(n, k, subs.into_iter().zip(list).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn components(&self) -> &BTreeMap<Subset, Polynomial> {
        &self.components
    }

    pub fn get(&self, j: &Subset) -> Option<&Polynomial> {
        self.components.get(j)
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(|p| p.is_zero())
    }
}

impl fmt::Display for GKMClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.components.values().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// A failing GKM edge: `z_i - z_j` does not divide `f_I - f_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmViolation {
    pub left: Subset,
    pub right: Subset,
    pub i: usize,
    pub j: usize,
}

/// All violated GKM conditions; empty means the tuple is in the image of
/// localization.
pub fn gkm_check(c: &GKMClass) -> Vec<GkmViolation> {
    let mut out = Vec::new();
    for (a, b, i, j) in gkm_pairs(c.n, c.k).expect("class sizes were validated") {
        let diff = c.components[&a].sub(&c.components[&b]);
        if !divides_linear(&diff, &LinearForm::diff(VarId::z(i), VarId::z(j), 0)) {
            out.push(GkmViolation { left: a, right: b, i, j });
        }
    }
    out
}

/// `κ^(r)_{σ,I}` through the restrictions of `W^(r)_{σ,I}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabClass {
    pub spec: WeightFunctionSpec,
    pub gkm: GKMClass,
}

pub fn stab(spec: &WeightFunctionSpec) -> Result<StabClass> {
    let w = weight_function(spec);
    let mut components = BTreeMap::new();
    for j in enumerate_subsets(spec.n(), spec.k())? {
        let p = w.restrict(&j)?;
        components.insert(j, p);
    }
    Ok(StabClass { spec: spec.clone(), gkm: GKMClass::new(spec.n(), spec.k(), components)? })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub pass: bool,
    pub witness: String,
}

impl AxiomCheck {
    fn new(pass: bool, witness: String) -> Self {
        AxiomCheck { pass, witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub a0: AxiomCheck,
    pub a1: AxiomCheck,
    pub a2: AxiomCheck,
    pub a3: AxiomCheck,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.a0.pass && self.a1.pass && self.a2.pass && self.a3.pass
    }

    pub fn checks(&self) -> [(&'static str, &AxiomCheck); 4] {
        [("A0", &self.a0), ("A1", &self.a1), ("A2", &self.a2), ("A3", &self.a3)]
    }
}

/// Checks the degree, normalization, `h`-divisibility and vertical
/// divisibility axioms against the data `(r, σ, I)` of `c.spec`.
pub fn verify_axioms(c: &StabClass) -> AxiomReport {
    let spec = &c.spec;
    let (r, n, sigma, i) = (spec.r, spec.n(), &spec.sigma, &spec.subset);
    let d = dimension_d(r, n, spec.k());

    let bad_deg: Vec<String> = c
        .gkm
        .components
        .iter()
        .filter(|(_, p)| !p.is_zero() && p.homogeneous_degree() != Some(d as u32))
        .map(|(j, p)| match p.homogeneous_degree() {
            Some(e) => format!("{j}: degree {e}"),
            None => format!("{j}: not homogeneous"),
        })
        .collect();
    let a0 = if bad_deg.is_empty() {
        AxiomCheck::new(true, format!("every nonzero component has degree {d}"))
    } else {
        AxiomCheck::new(false, format!("expected degree {d}; {}", bad_deg.join("; ")))
    };

    let (ev, eh) = repelling_euler(r, n, sigma, i);
    let expected = ev.mul(&eh);
    let got = c.gkm.get(i).cloned().unwrap_or_else(Polynomial::zero);
    let a1 = AxiomCheck::new(got == expected, format!("restriction at {i} is {got}; repelling Euler product is {expected}"));

    let h = LinearForm::var(VarId::H);
    let bad_h: Vec<String> = c
        .gkm
        .components
        .iter()
        .filter(|(j, p)| *j != i && !divides_linear(p, &h))
        .map(|(j, _)| j.to_string())
        .collect();
    let a2 = if bad_h.is_empty() {
        AxiomCheck::new(true, "h divides every off-diagonal component".into())
    } else {
        AxiomCheck::new(false, format!("not divisible by h at {}", bad_h.join(", ")))
    };

    let mut bad_v = Vec::new();
    for (j, p) in &c.gkm.components {
        if p.is_zero() {
            continue;
        }
        let mut need: Vec<(LinearForm, u32)> = Vec::new();
        for w in repelling_vertical(r, n, sigma, j) {
            let f = w.to_form();
            match need.iter_mut().find(|(g, _)| *g == f) {
                Some((_, m)) => *m += 1,
                None => need.push((f, 1)),
            }
        }
        for (f, m) in need {
            let have = linear_multiplicity(p, &f);
            if have < m {
                bad_v.push(format!("{j}: ({f})^{m} needed, multiplicity {have}"));
            }
        }
    }
    let a3 = if bad_v.is_empty() {
        AxiomCheck::new(true, "each component is divisible by its repelling vertical Euler product".into())
    } else {
        AxiomCheck::new(false, bad_v.join("; "))
    };

    AxiomReport { a0, a1, a2, a3 }
}

/// All monomials in `vars` of total degree `d`.
fn monomials_of_degree(vars: &[VarId], d: u32) -> Vec<Monomial> {
    fn rec(vars: &[VarId], d: u32, cur: Monomial, out: &mut Vec<Monomial>) {
        match vars.split_first() {
            None => {
                if d == 0 {
                    out.push(cur);
                }
            }
            Some((v, rest)) => {
                for e in 0..=d {
                    let m = cur.mul(&Monomial::var_pow(*v, e as u8));
                    rec(rest, d - e, m, out);
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, d, Monomial::ONE, &mut out);
    out
}

/// Partitions of `d` with at most `parts` parts, largest first.
fn partitions(d: u32, parts: usize, max: u32) -> Vec<Vec<u32>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    if parts == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in (1..=d.min(max)).rev() {
        for mut rest in partitions(d - first, parts - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `m_λ(t_1..t_k)`.
fn monomial_symmetric(lambda: &[u32], k: usize) -> Polynomial {
    let mut exps: Vec<u32> = lambda.to_vec();
    exps.resize(k, 0);
    exps.sort_unstable();
    let mut terms = Vec::new();
    loop {
        let m = exps
            .iter()
            .enumerate()
            .fold(Monomial::ONE, |acc, (a, e)| acc.mul(&Monomial::var_pow(VarId::t(a + 1), *e as u8)));
        terms.push((m, Rational::one()));
        if !next_permutation(&mut exps) {
            break;
        }
    }
    Polynomial::from_terms(terms)
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A homogeneous symmetric polynomial in `t` whose restrictions `t = z_J`
/// are the components of `c`. Free parameters of the solution are set to 0.
pub fn find_representative(c: &GKMClass, degree_bound: usize) -> Result<Polynomial> {
    if c.is_zero() {
        return Ok(Polynomial::zero());
    }
    let mut degree = None;
    for p in c.components.values().filter(|p| !p.is_zero()) {
        match (p.homogeneous_degree(), degree) {
            (None, _) => return Err(Error::NoSolution { degree_bound }),
            (Some(e), None) => degree = Some(e),
            (Some(e), Some(d)) if e != d => return Err(Error::NoSolution { degree_bound }),
            _ => {}
        }
    }
    let d = degree.expect("class is nonzero");
    if (d as usize) > degree_bound {
        return Err(Error::NoSolution { degree_bound });
    }
    let (n, k) = (c.n, c.k);
    let mut zh: Vec<VarId> = (1..=n).map(VarId::z).collect();
    zh.push(VarId::H);

    let mut basis = Vec::new();
    for td in 0..=d {
        for lambda in partitions(td, k, td) {
            let m = monomial_symmetric(&lambda, k);
            for zm in monomials_of_degree(&zh, d - td) {
                basis.push(m.mul_monomial(&zm, &Rational::one()));
            }
        }
    }

    let mut solver = QSolver::new();
    for (j, target) in &c.components {
        let binds: Vec<(VarId, Polynomial)> =
            j.elems().iter().enumerate().map(|(a, &b)| (VarId::t(a + 1), Polynomial::var(VarId::z(b)))).collect();
        let mut rows: BTreeMap<Monomial, SparseRow> = BTreeMap::new();
        for (col, b) in basis.iter().enumerate() {
            for (m, coef) in b.substitute(&binds).terms() {
                rows.entry(*m).or_default().coeffs.insert(col, coef.clone());
            }
        }
        for (m, coef) in target.terms() {
            rows.entry(*m).or_default().rhs = coef.clone();
        }
        for row in rows.into_values() {
            solver.add_row(row);
        }
        if !solver.is_consistent() {
            return Err(Error::NoSolution { degree_bound });
        }
    }
    let x = solver.solution(basis.len()).ok_or(Error::NoSolution { degree_bound })?;
    let mut out = Polynomial::zero();
    for (b, xi) in basis.iter().zip(&x) {
        if !xi.is_zero() {
            out = out.add(&b.scale(xi));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::Permutation;
    use crate::exactalg::parse_poly;
    use crate::fixedpoints::VersionTag;

    fn p(s: &str) -> Polynomial {
        parse_poly(s).unwrap()
    }

    #[test]
    fn gkm_membership() {
        let good = GKMClass::from_list(2, 1, vec![p("z2 - z1"), p("0")]).unwrap();
        assert!(gkm_check(&good).is_empty());
        let bad = GKMClass::from_list(2, 1, vec![p("1"), p("0")]).unwrap();
        assert_eq!(gkm_check(&bad).len(), 1);
    }

    #[test]
    fn axioms_for_constant_class_fail() {
        let spec = WeightFunctionSpec::new(VersionTag::R00, Permutation::identity(2), Subset::parse(2, "1").unwrap())
            .unwrap();
        let c = StabClass { spec, gkm: GKMClass::from_list(2, 1, vec![p("1"), p("1")]).unwrap() };
        let rep = verify_axioms(&c);
        assert!(!rep.a0.pass);
        assert!(!rep.a1.pass);
    }

    #[test]
    fn partitions_and_symmetric_monomials() {
        assert_eq!(partitions(3, 2, 3), vec![vec![3], vec![2, 1]]);
        assert_eq!(monomial_symmetric(&[1], 2), p("t1 + t2"));
        assert_eq!(monomial_symmetric(&[2, 1], 2), p("t1^2*t2 + t1*t2^2"));
        assert_eq!(monomials_of_degree(&[VarId::z(1), VarId::H], 2).len(), 3);
    }
}
