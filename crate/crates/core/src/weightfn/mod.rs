//! Super weight functions `W^(r)_{σ,I}` kept as lists of factored terms.

mod recursion;

pub use recursion::{general_r_identity, verify_general_r, RecursionCase, RecursionIdentity, RecursionReport};

use std::fmt;

use crate::combinat::{Permutation, Subset};
use crate::error::{domain, Error, Result};
use crate::exactalg::{
    linear_multiplicity, LinearFactorProduct, LinearForm, Polynomial, Rational, RationalFunction, SubstOutcome,
    VarId,
};
use crate::exactalg::var::MAX_INDEX;
use crate::fixedpoints::VersionTag;

/// Parameters of `W^(r)_{σ,I}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightFunctionSpec {
    pub r: VersionTag,
    pub sigma: Permutation,
    pub subset: Subset,
}

impl WeightFunctionSpec {
    pub fn new(r: VersionTag, sigma: Permutation, subset: Subset) -> Result<Self> {
        if sigma.n() != subset.n() {
            return Err(Error::SizeMismatch(format!(
                "permutation acts on {} points but the subset lives in 1..{}",
                sigma.n(),
                subset.n()
            )));
        }
        if subset.n() > MAX_INDEX {
            return Err(Error::GuardViolation { guard: "n <= 8", detail: format!("n = {}", subset.n()) });
        }
        Ok(WeightFunctionSpec { r, sigma, subset })
    }

    pub fn n(&self) -> usize {
        self.subset.n()
    }

    pub fn k(&self) -> usize {
        self.subset.k()
    }
}

impl fmt::Display for WeightFunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W^({})_{{{},{}}}", self.r, self.sigma, self.subset)
    }
}

fn t(a: usize) -> VarId {
    VarId::t(a)
}

fn z(b: usize) -> VarId {
    VarId::z(b)
}

fn form(pos: &[VarId], neg: &[VarId], h: i64) -> LinearForm {
    let mut c: Vec<(VarId, i64)> = pos.iter().map(|v| (*v, 1)).collect();
    c.extend(neg.iter().map(|v| (*v, -1)));
    if h != 0 {
        c.push((VarId::H, h));
    }
    LinearForm::from_ints(&c, 0)
}

/// The unsymmetrized factored term `U^(r)_I`.
pub fn build_u(r: VersionTag, n: usize, subset: &Subset) -> LinearFactorProduct {
    let k = subset.k();
    let odd = r.first_odd() as i32 + r.second_odd() as i32;
    let mut u = LinearFactorProduct::one();
    for (a0, &ia) in subset.elems().iter().enumerate() {
        let a = a0 + 1;
        for b in 1..ia {
            let f = if r.second_odd() { form(&[z(b)], &[t(a)], 1) } else { form(&[t(a)], &[z(b)], 1) };
            u.push(&f, 1);
        }
        for b in ia + 1..=n {
            u.push(&form(&[z(b)], &[t(a)], 0), 1);
        }
    }
    for a in 1..=k {
        for b in a + 1..=k {
            u.push(&form(&[t(b)], &[t(a)], 1), odd - 1);
            u.push(&form(&[t(b)], &[t(a)], 0), -1);
        }
    }
    if r.second_odd() {
        u.push(&form(&[], &[], 1), k as i32);
        for a in 1..=n {
            for b in a + 1..=n {
                u.push(&form(&[z(b)], &[z(a)], 1), 1);
            }
        }
        for a in 1..=k {
            for b in 1..=n {
                u.push(&form(&[z(b)], &[t(a)], 1), -1);
            }
        }
    }
    u
}

/// A sum of factored terms in `t_1..t_k`, one per permutation of the `t`s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizedRF {
    terms: Vec<LinearFactorProduct>,
    k: usize,
    context: Option<WeightFunctionSpec>,
}

/// Renames `t_a -> t_{τ(a)}`.
fn permute_t_vars(tau: &Permutation) -> impl Fn(VarId) -> VarId + '_ {
    move |v| match v {
        VarId::T(a) => VarId::t(tau.apply(a as usize)),
        other => other,
    }
}

/// `Sym_k`: the sum over all `τ ∈ S_k` of `u` with `t` permuted by `τ`.
pub fn symmetrize(u: &LinearFactorProduct, k: usize) -> SymmetrizedRF {
    let terms = Permutation::all(k).iter().map(|tau| u.rename(&permute_t_vars(tau))).collect();
    SymmetrizedRF { terms, k, context: None }
}

/// Applies `z_b -> z_{σ(b)}` to every term.
pub fn twist(w: &SymmetrizedRF, sigma: &Permutation) -> SymmetrizedRF {
    let ren = |v: VarId| match v {
        VarId::Z(b) if (b as usize) <= sigma.n() => VarId::z(sigma.apply(b as usize)),
        other => other,
    };
    let context = w.context.as_ref().map(|c| WeightFunctionSpec {
        r: c.r,
        sigma: sigma.compose(&c.sigma).unwrap_or_else(|_| sigma.clone()),
        subset: sigma.apply_subset(&c.subset),
    });
    SymmetrizedRF { terms: w.terms.iter().map(|x| x.rename(&ren)).collect(), k: w.k, context }
}

/// `W^(r)_{σ,I}`: symmetrize `U^(r)_{σ^{-1}(I)}` and twist by `σ`.
pub fn weight_function(spec: &WeightFunctionSpec) -> SymmetrizedRF {
    let n = spec.n();
    let base = spec.sigma.inverse().apply_subset(&spec.subset);
    let mut w = symmetrize(&build_u(spec.r, n, &base), spec.k());
    w.context = Some(WeightFunctionSpec { r: spec.r, sigma: Permutation::identity(n), subset: base });
    let mut w = twist(&w, &spec.sigma);
    w.context = Some(spec.clone());
    w
}

/// Result of a termwise restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub value: Polynomial,
    /// Indices of terms that did not vanish after substitution.
    pub survivors: Vec<usize>,
}

impl SymmetrizedRF {
    pub fn from_terms(terms: Vec<LinearFactorProduct>, k: usize) -> Self {
        SymmetrizedRF { terms, k, context: None }
    }

    pub fn terms(&self) -> &[LinearFactorProduct] {
        &self.terms
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn context(&self) -> Option<&WeightFunctionSpec> {
        self.context.as_ref()
    }

    pub fn permute_t(&self, tau: &Permutation) -> SymmetrizedRF {
        SymmetrizedRF {
            terms: self.terms.iter().map(|x| x.rename(&permute_t_vars(tau))).collect(),
            k: self.k,
            context: self.context.clone(),
        }
    }

    /// Multiplies every term by `c`.
    pub fn scaled_by(&self, c: &LinearFactorProduct) -> SymmetrizedRF {
        SymmetrizedRF { terms: self.terms.iter().map(|x| x.mul(c)).collect(), k: self.k, context: None }
    }

    pub fn eval_with(&self, value: &impl Fn(VarId) -> Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for term in &self.terms {
            acc += &term.eval_with(value)?;
        }
        Ok(acc)
    }

    /// Least common multiple of the term denominators, as a product with
    /// positive exponents.
    pub fn common_denominator(&self) -> LinearFactorProduct {
        lcm_of_denominators(&self.terms, |_| true)
    }

    /// Expands to a single rational function over the common denominator,
    /// cancelling the denominator factors that divide the numerator.
    pub fn to_ratfun(&self) -> RationalFunction {
        let d = self.common_denominator();
        let mut num = Polynomial::zero();
        for term in &self.terms {
            let p = term.mul(&d).expand_poly().expect("common denominator clears every term");
            num = num.add(&p);
        }
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let mut den = LinearFactorProduct::one();
        for (f, e) in d.factors() {
            let fp = f.to_poly();
            let mut left = *e;
            while left > 0 {
                match num.div_exact(&fp) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            den.push(f, left);
        }
        RationalFunction::new_unchecked(num, den.numerator_poly())
    }

    fn check_subset(&self, j: &Subset) -> Result<()> {
        if j.k() != self.k {
            return Err(Error::SizeMismatch(format!("restriction point {j} has size {} but k = {}", j.k(), self.k)));
        }
        Ok(())
    }

    /// `t_s = z_{j_s}` substituted termwise; vanishing terms are dropped and
    /// the survivors are summed over their common `z`-denominator.
    pub fn restrict_detailed(&self, j: &Subset) -> Result<Restriction> {
        self.check_subset(j)?;
        let sub = restriction_map(j);
        let mut survivors = Vec::new();
        let mut values = Vec::new();
        for (idx, term) in self.terms.iter().enumerate() {
            match term.substitute(&sub) {
                SubstOutcome::Zero => {}
                SubstOutcome::DenominatorVanishes => return Err(Error::DenominatorVanishes),
                SubstOutcome::Value(v) => {
                    values.push(v);
                    survivors.push(idx);
                }
            }
        }
        let d = lcm_of_denominators(&values, |_| true);
        let mut value = Polynomial::zero();
        for v in &values {
            value = value.add(&v.mul(&d).numerator_poly());
        }
        for (f, e) in d.factors() {
            for _ in 0..*e {
                value = value.div_exact(&f.to_poly()).ok_or_else(|| Error::NonCancellingDenominator {
                    factor: f.to_string(),
                    term: survivors[0],
                })?;
            }
        }
        Ok(Restriction { value, survivors })
    }

    pub fn restrict(&self, j: &Subset) -> Result<Polynomial> {
        Ok(self.restrict_detailed(j)?.value)
    }

    /// Clears all denominators, substitutes into the expanded numerator and
    /// divides by the substituted denominator.
    pub fn restrict_via_expansion(&self, j: &Subset) -> Result<Polynomial> {
        self.check_subset(j)?;
        if self.k > 4 {
            return Err(Error::GuardViolation { guard: "k <= 4", detail: format!("k = {}", self.k) });
        }
        let sub = restriction_map(j);
        let d = self.common_denominator();
        let mut num = Polynomial::zero();
        for term in &self.terms {
            let cleared = term.mul(&d);
            match cleared.substitute(&sub) {
                SubstOutcome::Zero => {}
                SubstOutcome::Value(v) => {
                    let p = v.expand_poly().ok_or(Error::DenominatorVanishes)?;
                    num = num.add(&p);
                }
                SubstOutcome::DenominatorVanishes => return Err(Error::DenominatorVanishes),
            }
        }
        let mut dz = Vec::new();
        for (f, e) in d.factors() {
            let g = f.substitute(&sub);
            for _ in 0..*e {
                dz.push(g.clone());
            }
        }
        divide_by_forms(num, &dz)
    }

    /// Expands the whole sum as one rational function and then substitutes.
    /// Only for `k <= 2`.
    pub fn restrict_literal(&self, j: &Subset) -> Result<Polynomial> {
        self.check_subset(j)?;
        if self.k > 2 {
            return Err(Error::GuardViolation { guard: "k <= 2", detail: format!("k = {}", self.k) });
        }
        let rf = self.to_ratfun();
        let binds: Vec<(VarId, Polynomial)> =
            j.elems().iter().enumerate().map(|(a, &b)| (VarId::t(a + 1), Polynomial::var(VarId::z(b)))).collect();
        let num = rf.num().substitute(&binds);
        let den = rf.den().substitute(&binds);
        if den.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        num.div_exact(&den).ok_or_else(|| Error::Domain(format!("restriction to {j} is not a polynomial")))
    }
}

impl fmt::Display for SymmetrizedRF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, term) in self.terms.iter().enumerate() {
            let text = term.to_string();
            match (i, text.strip_prefix('-')) {
                (0, _) => f.write_str(&text)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {text}")?,
            }
        }
        Ok(())
    }
}

fn restriction_map(j: &Subset) -> impl Fn(VarId) -> Option<LinearForm> + '_ {
    move |v| match v {
        VarId::T(a) => j.elems().get(a as usize - 1).map(|&b| LinearForm::var(VarId::z(b))),
        _ => None,
    }
}

pub(crate) fn lcm_of_denominators(
    terms: &[LinearFactorProduct],
    keep: impl Fn(&LinearForm) -> bool,
) -> LinearFactorProduct {
    let mut best: Vec<(LinearForm, i32)> = Vec::new();
    for term in terms {
        for (f, e) in term.factors() {
            if *e >= 0 || !keep(f) {
                continue;
            }
            match best.iter_mut().find(|(g, _)| g == f) {
                Some((_, m)) => *m = (*m).max(-e),
                None => best.push((f.clone(), -e)),
            }
        }
    }
    best.iter().fold(LinearFactorProduct::one(), |acc, (f, e)| acc.with(f, *e))
}

fn divide_by_forms(mut num: Polynomial, forms: &[LinearForm]) -> Result<Polynomial> {
    let mut scalar = Rational::one();
    for g in forms {
        if g.is_constant() {
            if g.constant().is_zero() {
                return Err(Error::DenominatorVanishes);
            }
            scalar *= g.constant();
            continue;
        }
        num = num
            .div_exact(&g.to_poly())
            .ok_or_else(|| Error::NonCancellingDenominator { factor: g.to_string(), term: 0 })?;
    }
    Ok(num.scale(&scalar.recip()))
}

/// Factors of the ♠-product bounding the support of `W^(r)_{σ,·}` at `p_I`.
pub fn spade_factors(r: VersionTag, sigma: &Permutation, subset: &Subset) -> Vec<LinearForm> {
    let n = sigma.n();
    let mut out = Vec::new();
    for a in 1..=n {
        for b in 1..a {
            let (sa, sb) = (sigma.apply(a), sigma.apply(b));
            let (ain, bin) = (subset.contains(sa), subset.contains(sb));
            let take = match r {
                VersionTag::R00 => ain && !bin,
                VersionTag::R10 => ain,
                VersionTag::R01 => !bin,
                VersionTag::R11 => ain || (!ain && !bin),
            };
            if take {
                out.push(form(&[z(sa)], &[z(sb)], 1));
            }
        }
    }
    out
}

/// Whether `p` is divisible by the ♠-product, counting multiplicities.
pub fn spade_divides(p: &Polynomial, r: VersionTag, sigma: &Permutation, subset: &Subset) -> bool {
    if p.is_zero() {
        return true;
    }
    let factors = spade_factors(r, sigma, subset);
    let mut distinct: Vec<(&LinearForm, u32)> = Vec::new();
    for f in &factors {
        match distinct.iter_mut().find(|(g, _)| *g == f) {
            Some((_, m)) => *m += 1,
            None => distinct.push((f, 1)),
        }
    }
    distinct.iter().all(|(f, m)| linear_multiplicity(p, f) >= *m)
}

/// `J ≤_σ I`: sorted `σ^{-1}(J)` is componentwise at most sorted `σ^{-1}(I)`.
pub fn sigma_leq(sigma: &Permutation, j: &Subset, i: &Subset) -> bool {
    let inv = sigma.inverse();
    let a = inv.apply_subset(j);
    let b = inv.apply_subset(i);
    a.k() == b.k() && a.elems().iter().zip(b.elems()).all(|(x, y)| x <= y)
}

/// Checks that `w` vanishes at every `J` outside the `σ`-order ideal below
/// `I`. Returns the offending subsets.
pub fn support_violations(spec: &WeightFunctionSpec, w: &SymmetrizedRF) -> Result<Vec<Subset>> {
    let mut bad = Vec::new();
    for j in crate::combinat::enumerate_subsets(spec.n(), spec.k())? {
        if !sigma_leq(&spec.sigma, &j, &spec.subset) && !w.restrict(&j)?.is_zero() {
            bad.push(j);
        }
    }
    Ok(bad)
}

/// Parses `I` and `σ` from CLI-style strings.
pub fn parse_spec(r: &str, n: usize, sigma: &str, subset: &str) -> Result<WeightFunctionSpec> {
    let r: VersionTag = r.parse()?;
    let sigma = if sigma.is_empty() || sigma == "id" { Permutation::identity(n) } else { Permutation::parse(sigma)? };
    let subset = Subset::parse(n, subset)?;
    if sigma.n() != n {
        return domain(format!("permutation {sigma} does not act on 1..{n}"));
    }
    WeightFunctionSpec::new(r, sigma, subset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, parse_rf};

    fn spec(r: &str, n: usize, sigma: &str, i: &str) -> WeightFunctionSpec {
        parse_spec(r, n, sigma, i).unwrap()
    }

    fn w(r: &str, n: usize, sigma: &str, i: &str) -> SymmetrizedRF {
        weight_function(&spec(r, n, sigma, i))
    }

    #[test]
    fn u_shapes() {
        let u = build_u(VersionTag::R01, 2, &Subset::parse(2, "2").unwrap());
        assert_eq!(u.to_ratfun(), parse_rf("h*(z2 - z1 + h)/(z2 - t1 + h)").unwrap());
        let u = build_u(VersionTag::R11, 2, &Subset::empty(2));
        assert_eq!(u.expand_poly().unwrap(), parse_poly("z2 - z1 + h").unwrap());
        let u = build_u(VersionTag::R00, 2, &Subset::parse(2, "1,2").unwrap());
        assert_eq!(u.to_ratfun(), parse_rf("(t2 - z1 + h)*(z2 - t1)/((t2 - t1 + h)*(t2 - t1))").unwrap());
    }

    #[test]
    fn small_tables() {
        assert_eq!(w("00", 2, "2,1", "1").to_ratfun(), parse_rf("t1 - z2 + h").unwrap());
        assert_eq!(w("10", 2, "id", "1,2").to_ratfun(), parse_rf("z2 - z1 + h").unwrap());
        assert_eq!(
            w("11", 2, "2,1", "2").to_ratfun(),
            parse_rf("h*(z1 - t1)*(z1 - z2 + h)/((z1 - t1 + h)*(z2 - t1 + h))").unwrap()
        );
        let sym = w("00", 2, "id", "1,2");
        assert_eq!(sym.terms().len(), 2);
        let tt = LinearFactorProduct::one().with(&LinearForm::from_ints(&[(VarId::t(2), 1), (VarId::t(1), -1)], 0), 1);
        let tt = tt.factors()[0].0.clone();
        assert!(sym.common_denominator().factors().iter().any(|(f, _)| *f == tt));
        assert!(!crate::exactalg::divides_linear(sym.to_ratfun().den(), &tt));
    }

    #[test]
    fn restrictions_agree() {
        let x = w("00", 2, "id", "1");
        assert_eq!(x.restrict(&Subset::parse(2, "1").unwrap()).unwrap(), parse_poly("z2 - z1").unwrap());
        assert!(x.restrict(&Subset::parse(2, "2").unwrap()).unwrap().is_zero());
        for r in ["00", "10", "01", "11"] {
            for sigma in ["1,2,3", "2,3,1", "3,2,1"] {
                for i in ["1", "2,3", "1,3", "none", "1,2,3"] {
                    let x = w(r, 3, sigma, i);
                    for j in crate::combinat::enumerate_subsets(3, x.k()).unwrap() {
                        let a = x.restrict(&j).unwrap_or_else(|e| panic!("{r} {sigma} {i} {j} {e:?} {x}"));
                        assert_eq!(a, x.restrict_via_expansion(&j).unwrap(), "{r} {sigma} {i} {j}");
                        if x.k() <= 2 {
                            assert_eq!(a, x.restrict_literal(&j).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn spade_and_order() {
        let sigma = Permutation::identity(2);
        let i = Subset::parse(2, "1").unwrap();
        assert!(spade_factors(VersionTag::R00, &sigma, &i).is_empty());
        let f = spade_factors(VersionTag::R00, &sigma, &Subset::parse(2, "2").unwrap());
        assert_eq!(f, vec![LinearForm::from_ints(&[(VarId::z(2), 1), (VarId::z(1), -1), (VarId::H, 1)], 0)]);
        assert!(sigma_leq(&sigma, &i, &Subset::parse(2, "2").unwrap()));
        assert!(!sigma_leq(&sigma, &Subset::parse(2, "2").unwrap(), &i));
    }
}
