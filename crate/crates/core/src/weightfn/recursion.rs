//! The three-case recursion relating `W_{σ s_a, I}` to `W_{σ, ·}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use super::{lcm_of_denominators, weight_function, SymmetrizedRF, WeightFunctionSpec};
use crate::combinat::{apply_transposition, Permutation, Subset};
use crate::error::{Error, Result};
use crate::exactalg::{LinearFactorProduct, LinearForm, Monomial, Polynomial, Rational, VarId};
use crate::fixedpoints::VersionTag;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecursionCase {
    /// Exactly one of `σ(a), σ(a+1)` lies in `I`.
    Mixed,
    BothIn,
    NeitherIn,
}

/// `Σ coeff_i · W_i = 0` with `t`-free coefficients.
#[derive(Clone, Debug)]
pub struct RecursionIdentity {
    pub case: RecursionCase,
    pub terms: Vec<(LinearFactorProduct, SymmetrizedRF)>,
    k: usize,
    n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionReport {
    pub case: RecursionCase,
    pub random_ok: bool,
    pub exact_ok: bool,
}

impl RecursionReport {
    pub fn holds(&self) -> bool {
        self.random_ok && self.exact_ok
    }
}

/// Builds the relation for `(r, σ, a, I)` with denominators cleared.
pub fn general_r_identity(r: VersionTag, sigma: &Permutation, a: usize, subset: &Subset) -> Result<RecursionIdentity> {
    let n = sigma.n();
    if a == 0 || a >= n {
        return Err(Error::Domain(format!("a = {a} must lie in 1..{}", n.saturating_sub(1))));
    }
    let (c, d) = (sigma.apply(a), sigma.apply(a + 1));
    let zc = VarId::z(c);
    let zd = VarId::z(d);
    let lf = |pc: i64, pd: i64, h: i64| {
        LinearFactorProduct::one().with(&LinearForm::from_ints(&[(zc, pc), (zd, pd), (VarId::H, h)], 0), 1)
    };
    let sigma_s = sigma.times_simple(a)?;
    let w = |s: &Permutation, i: &Subset| -> Result<SymmetrizedRF> {
        Ok(weight_function(&WeightFunctionSpec::new(r, s.clone(), i.clone())?))
    };
    let neg = |mut p: LinearFactorProduct| {
        p.scale(&Rational::from_int(-1));
        p
    };
    let (cin, din) = (subset.contains(c), subset.contains(d));
    let (case, terms) = if cin != din {
        let swapped = apply_transposition(subset, c, d);
        (
            RecursionCase::Mixed,
            vec![
                (lf(-1, 1, 1), w(&sigma_s, subset)?),
                (neg(lf(1, -1, 0)), w(sigma, subset)?),
                (neg(lf(0, 0, 1)), w(sigma, &swapped)?),
            ],
        )
    } else {
        let case = if cin { RecursionCase::BothIn } else { RecursionCase::NeitherIn };
        let ratio = if cin { r.first_odd() } else { r.second_odd() };
        let terms = if ratio {
            vec![(lf(-1, 1, 1), w(&sigma_s, subset)?), (neg(lf(1, -1, 1)), w(sigma, subset)?)]
        } else {
            vec![(LinearFactorProduct::one(), w(&sigma_s, subset)?), (neg(LinearFactorProduct::one()), w(sigma, subset)?)]
        };
        (case, terms)
    };
    Ok(RecursionIdentity { case, terms, k: subset.k(), n })
}

impl RecursionIdentity {
    pub fn eval_with(&self, value: &impl Fn(VarId) -> Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (c, w) in &self.terms {
            acc += &(&c.eval_with(value)? * &w.eval_with(value)?);
        }
        Ok(acc)
    }

    /// Evaluates at `points` random rational points, skipping points where a
    /// denominator vanishes.
    pub fn random_check(&self, points: usize, seed: u64) -> Result<bool> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut done = 0;
        let mut attempts = 0;
        while done < points {
            attempts += 1;
            if attempts > 50 * points.max(1) {
                return Err(Error::Domain("could not find evaluation points avoiding poles".into()));
            }
            let mut vals = Vec::with_capacity(self.k + self.n + 1);
            for _ in 0..(self.k + self.n + 1) {
                vals.push(Rational::new(rng.gen_range(-60i64..=60), rng.gen_range(1i64..=7)));
            }
            let (k, n) = (self.k, self.n);
            let value = |v: VarId| match v {
                VarId::T(a) if (a as usize) <= k => vals[a as usize - 1].clone(),
                VarId::Z(b) if (b as usize) <= n => vals[k + b as usize - 1].clone(),
                VarId::H => vals[k + n].clone(),
                _ => Rational::zero(),
            };
            match self.eval_with(&value) {
                Ok(x) if x.is_zero() => done += 1,
                Ok(_) => return Ok(false),
                Err(Error::DenominatorVanishes) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(true)
    }

    /// Exact check: the symmetrization of the cleared base terms vanishes.
    pub fn exact_check(&self) -> Result<bool> {
        let parts: Vec<LinearFactorProduct> = self
            .terms
            .iter()
            .filter_map(|(c, w)| w.terms().first().map(|b| b.mul(c)))
            .filter(|p| !p.is_zero())
            .collect();
        if parts.is_empty() {
            return Ok(true);
        }
        let perms = Permutation::all(self.k);
        let dt = orbit_close(&lcm_of_denominators(&parts, |f| f.has_t()), &perms, Closure::Max);
        let chi = character(&dt, self.k)?;
        let dz = lcm_of_denominators(&parts, |f| !f.has_t());
        let clear = dt.mul(&dz);
        let cleared: Vec<LinearFactorProduct> = parts.iter().map(|p| p.mul(&clear)).collect();
        if cleared.iter().any(|p| p.has_negative()) {
            return Err(Error::Domain("denominator clearing left a negative exponent".into()));
        }
        let common = orbit_close(&common_factor(&cleared), &perms, Closure::Min);
        let chi2 = character(&common, self.k)?;
        let inv = common.inverse();
        let mut q = Polynomial::zero();
        for p in &cleared {
            let r = p.mul(&inv);
            q = q.add(&r.expand_poly().ok_or_else(|| Error::Domain("common factor did not divide".into()))?);
        }
        Ok(project_is_zero(&q, self.k, chi * chi2 < 0))
    }
}

/// Checks the recursion for `(r, σ, a, I)` at random points and exactly.
pub fn verify_general_r(r: VersionTag, sigma: &Permutation, a: usize, subset: &Subset, seed: u64) -> Result<RecursionReport> {
    let id = general_r_identity(r, sigma, a, subset)?;
    let random_ok = id.random_check(20, seed)?;
    let exact_ok = id.exact_check()?;
    Ok(RecursionReport { case: id.case, random_ok, exact_ok })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Closure {
    Max,
    Min,
}

fn permute(tau: &Permutation) -> impl Fn(VarId) -> VarId + '_ {
    move |v| match v {
        VarId::T(a) => VarId::t(tau.apply(a as usize)),
        other => other,
    }
}

fn image(f: &LinearForm, tau: &Permutation) -> LinearForm {
    let p = LinearFactorProduct::one().with(&f.rename(&permute(tau)), 1);
    p.factors()[0].0.clone()
}

/// Makes the `t`-dependent part of `p` invariant (up to sign) under `S_k`
/// by raising (`Max`) or lowering (`Min`) multiplicities along orbits.
fn orbit_close(p: &LinearFactorProduct, perms: &[Permutation], mode: Closure) -> LinearFactorProduct {
    let mut mult: FxHashMap<LinearForm, i32> = p.factors().iter().cloned().collect();
    let forms: Vec<LinearForm> = mult.keys().filter(|f| f.has_t()).cloned().collect();
    for f in forms {
        let orbit: Vec<LinearForm> = perms.iter().map(|tau| image(&f, tau)).collect();
        let m = orbit.iter().map(|g| mult.get(g).copied().unwrap_or(0));
        let m = match mode {
            Closure::Max => m.max().unwrap_or(0),
            Closure::Min => m.min().unwrap_or(0),
        };
        for g in orbit {
            mult.insert(g, m);
        }
    }
    mult.iter().fold(LinearFactorProduct::one(), |acc, (f, e)| acc.with(f, *e))
}

/// Factors shared by every product, with the minimum exponent.
fn common_factor(ps: &[LinearFactorProduct]) -> LinearFactorProduct {
    let mut acc: Vec<(LinearForm, i32)> = ps[0].factors().to_vec();
    for p in &ps[1..] {
        acc.retain_mut(|(f, e)| match p.factors().iter().find(|(g, _)| g == f) {
            Some((_, x)) => {
                *e = (*e).min(*x);
                *e > 0
            }
            None => false,
        });
    }
    acc.iter().fold(LinearFactorProduct::one(), |a, (f, e)| a.with(f, *e))
}

/// `+1` or `-1` according to how `t_1 <-> t_2` acts on `p`.
fn character(p: &LinearFactorProduct, k: usize) -> Result<i32> {
    if k < 2 {
        return Ok(1);
    }
    let tau = Permutation::transposition(k, 1, 2)?;
    let q = p.rename(&permute(&tau));
    if q.factors() != p.factors() {
        return Err(Error::Domain("factor set is not permutation invariant".into()));
    }
    let ratio = q.scalar() / p.scalar();
    if ratio.is_one() {
        Ok(1)
    } else if ratio == Rational::from_int(-1) {
        Ok(-1)
    } else {
        Err(Error::Domain("unexpected scalar under permutation".into()))
    }
}

/// Whether the (anti)symmetrization of `q` over `t_1..t_k` vanishes.
fn project_is_zero(q: &Polynomial, k: usize, alternating: bool) -> bool {
    let mut classes: FxHashMap<Monomial, Rational> = FxHashMap::default();
    for (m, c) in q.terms() {
        let mut key = *m;
        let ts = key.t_exps_mut();
        let ts = &mut ts[..k];
        let mut sign = 1;
        if alternating {
            let mut inversions = 0;
            for a in 0..k {
                for b in a + 1..k {
                    if ts[a] == ts[b] {
                        sign = 0;
                    }
                    if ts[a] < ts[b] {
                        inversions += 1;
                    }
                }
            }
            if sign == 0 {
                continue;
            }
            if inversions % 2 == 1 {
                sign = -1;
            }
        }
        ts.sort_unstable_by(|x, y| y.cmp(x));
        let e = classes.entry(key).or_default();
        if sign < 0 {
            *e -= c;
        } else {
            *e += c;
        }
    }
    classes.values().all(|c| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_all_cases() {
        let id = Permutation::identity(2);
        for r in VersionTag::ALL {
            for i in ["none", "1", "2", "1,2"] {
                let s = Subset::parse(2, i).unwrap();
                let rep = verify_general_r(r, &id, 1, &s, 7).unwrap();
                assert!(rep.holds(), "{r} {i} {rep:?}");
            }
        }
    }

    #[test]
    fn detects_a_wrong_identity() {
        let id = Permutation::identity(2);
        let s = Subset::parse(2, "1").unwrap();
        let mut rel = general_r_identity(VersionTag::R00, &id, 1, &s).unwrap();
        rel.terms.pop();
        assert!(!rel.random_check(5, 1).unwrap());
        assert!(!rel.exact_check().unwrap());
    }
}
