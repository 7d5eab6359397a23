use std::fmt;

use super::poly::Polynomial;
use super::ratfun::RationalFunction;
use super::rational::Rational;
use super::var::{Monomial, VarId};
use crate::error::{Error, Result};

/// Affine-linear form `Σ c_v·v + c`.
///
/// Forms stored inside a [`LinearFactorProduct`] are monic: the coefficient
/// of the first occurring variable (in `t, z, h, zeta, u` order) is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<(VarId, Rational)>,
    constant: Rational,
}

/// Result of normalizing an affine form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    /// `scale · form` with `form` monic.
    Form(Rational, LinearForm),
    /// The form has no variable part.
    Constant(Rational),
}

impl LinearForm {
    /// Builds an affine form, merging repeated variables and dropping zeros.
    pub fn new(coeffs: impl IntoIterator<Item = (VarId, Rational)>, constant: Rational) -> Self {
        let mut v: Vec<(VarId, Rational)> = coeffs.into_iter().collect();
        v.sort_by_key(|a| a.0);
        let mut out: Vec<(VarId, Rational)> = Vec::with_capacity(v.len());
        for (x, c) in v {
            match out.last_mut() {
                Some((y, d)) if *y == x => *d += &c,
                _ => out.push((x, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        LinearForm { coeffs: out, constant }
    }

    /// `Σ c_i v_i + c` from small integer coefficients.
    pub fn from_ints(coeffs: &[(VarId, i64)], constant: i64) -> Self {
        Self::new(coeffs.iter().map(|&(v, c)| (v, Rational::from_int(c))), Rational::from_int(constant))
    }

    pub fn var(v: VarId) -> Self {
        LinearForm { coeffs: vec![(v, Rational::one())], constant: Rational::zero() }
    }

    /// `a - b + eps·h`.
    pub fn diff(a: VarId, b: VarId, eps: i64) -> Self {
        Self::from_ints(&[(a, 1), (b, -1), (VarId::H, eps)], 0)
    }

    pub fn coeffs(&self) -> &[(VarId, Rational)] {
        &self.coeffs
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn coeff(&self, v: VarId) -> Rational {
        self.coeffs
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn has_t(&self) -> bool {
        self.coeffs.iter().any(|(v, _)| v.is_t())
    }

    pub fn leading_var(&self) -> Option<VarId> {
        self.coeffs.first().map(|(v, _)| *v)
    }

    pub fn normalized(&self) -> Normalized {
        match self.coeffs.first() {
            None => Normalized::Constant(self.constant.clone()),
            Some((_, lead)) if lead.is_one() => Normalized::Form(Rational::one(), self.clone()),
            Some((_, lead)) => {
                let inv = lead.recip();
                Normalized::Form(
                    lead.clone(),
                    LinearForm {
                        coeffs: self.coeffs.iter().map(|(v, c)| (*v, c * &inv)).collect(),
                        constant: &self.constant * &inv,
                    },
                )
            }
        }
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|(v, c)| (*v, -c)).collect(),
            constant: -&self.constant,
        }
    }

    pub fn to_poly(&self) -> Polynomial {
        Polynomial::from_terms(
            self.coeffs
                .iter()
                .map(|(v, c)| (Monomial::var(*v), c.clone()))
                .chain(std::iter::once((Monomial::ONE, self.constant.clone()))),
        )
    }

    /// Reads an affine form off a polynomial of total degree at most one.
    pub fn from_poly(p: &Polynomial) -> Option<LinearForm> {
        let mut coeffs = Vec::new();
        let mut constant = Rational::zero();
        for (m, c) in p.terms() {
            match m.degree() {
                0 => constant = c.clone(),
                1 => coeffs.push((m.vars().next()?.0, c.clone())),
                _ => return None,
            }
        }
        Some(LinearForm::new(coeffs, constant))
    }

    /// Substitutes affine forms for variables (unbound variables are kept).
    pub fn substitute(&self, f: &impl Fn(VarId) -> Option<LinearForm>) -> LinearForm {
        let mut coeffs: Vec<(VarId, Rational)> = Vec::with_capacity(self.coeffs.len() + 2);
        let mut constant = self.constant.clone();
        for (v, c) in &self.coeffs {
            match f(*v) {
                None => coeffs.push((*v, c.clone())),
                Some(l) => {
                    for (w, d) in &l.coeffs {
                        coeffs.push((*w, c * d));
                    }
                    constant += &(c * &l.constant);
                }
            }
        }
        LinearForm::new(coeffs, constant)
    }

    pub fn rename(&self, f: &impl Fn(VarId) -> VarId) -> LinearForm {
        LinearForm::new(self.coeffs.iter().map(|(v, c)| (f(*v), c.clone())), self.constant.clone())
    }

    pub fn eval_with(&self, value: &impl Fn(VarId) -> Rational) -> Rational {
        let mut acc = self.constant.clone();
        for (v, c) in &self.coeffs {
            acc += &(c * &value(*v));
        }
        acc
    }

    /// Sign choice used for display: more positive coefficients wins, ties go
    /// to a positive leading term in display order.
    fn display_sign(&self) -> bool {
        let mut all: Vec<(usize, &Rational)> =
            self.coeffs.iter().map(|(v, c)| (VarId::display_rank(v.slot()), c)).collect();
        if !self.constant.is_zero() {
            all.push((0, &self.constant));
        }
        let pos = all.iter().filter(|(_, c)| !c.is_negative()).count();
        let neg = all.len() - pos;
        if pos != neg {
            return pos > neg;
        }
        all.sort_by_key(|(r, _)| std::cmp::Reverse(*r));
        !all[0].1.is_negative()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// True iff `l` divides `f`: solve `l = 0` for its leading variable and test
/// whether `f` vanishes there.
pub fn divides_linear(f: &Polynomial, l: &LinearForm) -> bool {
    let Some(x) = l.leading_var() else {
        return !l.constant().is_zero() || f.is_zero();
    };
    if f.is_zero() {
        return true;
    }
    let a = l.coeff(x);
    let inv = -a.recip();
    let solved = LinearForm::new(
        l.coeffs().iter().filter(|(v, _)| *v != x).map(|(v, c)| (*v, c * &inv)),
        l.constant() * &inv,
    );
    f.substitute(&[(x, solved.to_poly())]).is_zero()
}

/// Multiplicity of `l` as a factor of `f` (0 when `f` is zero).
pub fn linear_multiplicity(f: &Polynomial, l: &LinearForm) -> u32 {
    if f.is_zero() || l.is_constant() {
        return 0;
    }
    let lp = l.to_poly();
    let mut g = f.clone();
    let mut m = 0;
    while let Some(q) = g.div_exact(&lp) {
        g = q;
        m += 1;
    }
    m
}

/// A scalar times a product of integer powers of monic linear forms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearFactorProduct {
    scalar: Rational,
    factors: Vec<(LinearForm, i32)>,
}

/// Outcome of substituting into a [`LinearFactorProduct`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubstOutcome {
    /// A numerator factor became zero.
    Zero,
    Value(LinearFactorProduct),
    /// A denominator factor became zero and no numerator factor did.
    DenominatorVanishes,
}

impl LinearFactorProduct {
    pub fn scalar_only(c: Rational) -> Self {
        LinearFactorProduct { scalar: c, factors: Vec::new() }
    }

    pub fn one() -> Self {
        Self::scalar_only(Rational::one())
    }

    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }

    pub fn factors(&self) -> &[(LinearForm, i32)] {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    /// Multiplies by `form^exp`; `form` need not be normalized.
    ///
    /// Panics on a zero constant raised to a negative power.
    pub fn push(&mut self, form: &LinearForm, exp: i32) {
        if exp == 0 || self.scalar.is_zero() {
            return;
        }
        match form.normalized() {
            Normalized::Constant(c) => {
                if c.is_zero() {
                    assert!(exp > 0, "zero constant in denominator");
                    self.scalar = Rational::zero();
                    self.factors.clear();
                } else {
                    self.scalar *= &c.powi(exp);
                }
            }
            Normalized::Form(s, f) => {
                if !s.is_one() {
                    self.scalar *= &s.powi(exp);
                }
                self.insert(f, exp);
            }
        }
    }

    fn insert(&mut self, f: LinearForm, exp: i32) {
        match self.factors.binary_search_by(|(g, _)| g.cmp(&f)) {
            Ok(i) => {
                self.factors[i].1 += exp;
                if self.factors[i].1 == 0 {
                    self.factors.remove(i);
                }
            }
            Err(i) => self.factors.insert(i, (f, exp)),
        }
    }

    pub fn with(mut self, form: &LinearForm, exp: i32) -> Self {
        self.push(form, exp);
        self
    }

    pub fn scale(&mut self, c: &Rational) {
        self.scalar *= c;
        if self.scalar.is_zero() {
            self.factors.clear();
        }
    }

    pub fn mul(&self, o: &LinearFactorProduct) -> LinearFactorProduct {
        let mut r = self.clone();
        r.scale(&o.scalar);
        if r.is_zero() {
            return r;
        }
        for (f, e) in &o.factors {
            r.insert(f.clone(), *e);
        }
        r
    }

    pub fn inverse(&self) -> LinearFactorProduct {
        assert!(!self.is_zero(), "inverse of zero product");
        LinearFactorProduct {
            scalar: self.scalar.recip(),
            factors: self.factors.iter().map(|(f, e)| (f.clone(), -e)).collect(),
        }
    }

    pub fn has_negative(&self) -> bool {
        self.factors.iter().any(|(_, e)| *e < 0)
    }

    /// Sum of exponents (the degree of the rational function).
    pub fn degree(&self) -> i32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    fn rebuild(&self, map: impl Fn(&LinearForm) -> LinearForm) -> SubstOutcome {
        let mut out = LinearFactorProduct::scalar_only(self.scalar.clone());
        let mut den_zero = false;
        for (f, e) in &self.factors {
            let g = map(f);
            match g.normalized() {
                Normalized::Constant(c) if c.is_zero() => {
                    if *e > 0 {
                        return SubstOutcome::Zero;
                    }
                    den_zero = true;
                }
                Normalized::Constant(c) => out.scalar *= &c.powi(*e),
                Normalized::Form(s, g) => {
                    if !s.is_one() {
                        out.scalar *= &s.powi(*e);
                    }
                    out.factors.push((g, *e));
                }
            }
        }
        if den_zero {
            return SubstOutcome::DenominatorVanishes;
        }
        out.factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(LinearForm, i32)> = Vec::with_capacity(out.factors.len());
        for (f, e) in out.factors.drain(..) {
            match merged.last_mut() {
                Some((g, x)) if *g == f => *x += e,
                _ => merged.push((f, e)),
            }
        }
        merged.retain(|(_, e)| *e != 0);
        out.factors = merged;
        SubstOutcome::Value(out)
    }

    /// Substitutes affine forms for variables factor by factor.
    pub fn substitute(&self, f: &impl Fn(VarId) -> Option<LinearForm>) -> SubstOutcome {
        if self.is_zero() {
            return SubstOutcome::Zero;
        }
        self.rebuild(|l| l.substitute(f))
    }

    /// Renames variables (a bijective renaming never produces zero factors).
    pub fn rename(&self, f: &impl Fn(VarId) -> VarId) -> LinearFactorProduct {
        match self.rebuild(|l| l.rename(f)) {
            SubstOutcome::Value(v) => v,
            SubstOutcome::Zero => LinearFactorProduct::scalar_only(Rational::zero()),
            SubstOutcome::DenominatorVanishes => panic!("renaming produced a vanishing denominator"),
        }
    }

    /// Product of the factors with positive exponent, times the scalar.
    pub fn numerator_poly(&self) -> Polynomial {
        let mut p = Polynomial::constant(self.scalar.clone());
        for (f, e) in &self.factors {
            if *e > 0 {
                p = p.mul(&f.to_poly().pow(*e as u32));
            }
        }
        p
    }

    pub fn denominator_poly(&self) -> Polynomial {
        let mut p = Polynomial::one();
        for (f, e) in &self.factors {
            if *e < 0 {
                p = p.mul(&f.to_poly().pow((-e) as u32));
            }
        }
        p
    }

    /// Expands to a polynomial; `None` when a negative exponent remains.
    pub fn expand_poly(&self) -> Option<Polynomial> {
        (!self.has_negative()).then(|| self.numerator_poly())
    }

    /// Expands to numerator over denominator.
    pub fn expand(&self) -> Expanded {
        match self.expand_poly() {
            Some(p) => Expanded::Poly(p),
            None => Expanded::Rational(RationalFunction::new_unchecked(
                self.numerator_poly(),
                self.denominator_poly(),
            )),
        }
    }

    pub fn to_ratfun(&self) -> RationalFunction {
        RationalFunction::new_unchecked(self.numerator_poly(), self.denominator_poly())
    }

    /// Exact evaluation; errors when a denominator factor vanishes.
    pub fn eval_with(&self, value: &impl Fn(VarId) -> Rational) -> Result<Rational> {
        let mut acc = self.scalar.clone();
        if acc.is_zero() {
            return Ok(acc);
        }
        for (f, e) in &self.factors {
            let x = f.eval_with(value);
            if x.is_zero() {
                if *e > 0 {
                    return Ok(Rational::zero());
                }
                return Err(Error::DenominatorVanishes);
            }
            acc *= &x.powi(*e);
        }
        Ok(acc)
    }

    /// Display-friendly factors: each with a chosen sign, the overall sign
    /// folded into the returned scalar.
    fn display_parts(&self) -> (Rational, Vec<(Polynomial, i32)>) {
        let mut scalar = self.scalar.clone();
        let mut parts = Vec::with_capacity(self.factors.len());
        for (f, e) in &self.factors {
            if f.display_sign() {
                parts.push((f.to_poly(), *e));
            } else {
                if e % 2 != 0 {
                    scalar = -scalar;
                }
                parts.push((f.neg().to_poly(), *e));
            }
        }
        (scalar, parts)
    }

    fn render(&self, latex: bool) -> String {
        let (scalar, parts) = self.display_parts();
        if scalar.is_zero() {
            return "0".into();
        }
        let bare = parts.len() == 1 && parts[0].1 == 1 && scalar.abs().is_one();
        let wrap = |p: &Polynomial, e: i32| -> String {
            let body = if latex { p.to_latex() } else { p.to_string() };
            let body = if p.len() > 1 && !bare { format!("({body})") } else { body };
            match (e, latex) {
                (1, _) => body,
                (e, false) => format!("{body}^{e}"),
                (e, true) => format!("{body}^{{{e}}}"),
            }
        };
        let num: Vec<String> = parts.iter().filter(|(_, e)| *e > 0).map(|(p, e)| wrap(p, *e)).collect();
        let den: Vec<String> = parts.iter().filter(|(_, e)| *e < 0).map(|(p, e)| wrap(p, -e)).collect();
        let sep = if latex { "" } else { "*" };
        let abs = scalar.abs();
        let mut num_s = num.join(sep);
        let mut den_s = den.join(sep);
        let coef_num = Rational::from_bigs(abs.numer(), 1.into()).unwrap();
        let coef_den = Rational::from_bigs(abs.denom(), 1.into()).unwrap();
        if !coef_num.is_one() || num_s.is_empty() {
            num_s = if num_s.is_empty() { coef_num.to_string() } else { format!("{coef_num}{sep}{num_s}") };
        }
        if !coef_den.is_one() {
            den_s = if den_s.is_empty() { coef_den.to_string() } else { format!("{coef_den}{sep}{den_s}") };
        }
        let sign = if scalar.is_negative() { "-" } else { "" };
        if den_s.is_empty() {
            format!("{sign}{num_s}")
        } else if latex {
            format!("{sign}\\frac{{{num_s}}}{{{den_s}}}")
        } else if den.len() + usize::from(!coef_den.is_one()) > 1 {
            format!("{sign}{num_s}/({den_s})")
        } else {
            format!("{sign}{num_s}/{den_s}")
        }
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }
}

impl fmt::Display for LinearFactorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for LinearFactorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// Result of [`LinearFactorProduct::expand`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expanded {
    Poly(Polynomial),
    Rational(RationalFunction),
}
