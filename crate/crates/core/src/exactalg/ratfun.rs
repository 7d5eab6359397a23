use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::linear::LinearForm;
use super::poly::Polynomial;
use super::rational::Rational;
use super::var::VarId;
use crate::error::{Error, Result};

/// Quotient of two polynomials. Not reduced by a GCD; equality is decided by
/// cross-multiplication.
#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(Self::new_unchecked(num, den).light_reduce())
    }

    /// Caller guarantees `den` is nonzero.
    pub fn new_unchecked(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        RationalFunction { num, den }
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn int(c: i64) -> Self {
        Self::from_poly(Polynomial::int(c))
    }

    pub fn var(v: VarId) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn into_parts(self) -> (Polynomial, Polynomial) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value when the denominator divides the numerator.
    pub fn to_poly(&self) -> Option<Polynomial> {
        self.num.div_exact(&self.den)
    }

    /// Cheap simplifications: zero, constant denominators, exact division.
    pub fn light_reduce(self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.den.as_constant() {
            if c.is_one() {
                return self;
            }
            return Self::from_poly(self.num.scale(&c.recip()));
        }
        if self.num == self.den {
            return Self::one();
        }
        if self.num.len() >= self.den.len() {
            if let Some(q) = self.num.div_exact(&self.den) {
                return Self::from_poly(q);
            }
        }
        self
    }

    /// Cancels every candidate linear factor common to numerator and
    /// denominator, then fixes the sign of the denominator for display.
    pub fn cancel_candidates(&self, candidates: &[LinearForm]) -> Self {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        if num.is_zero() {
            return Self::zero();
        }
        for l in candidates {
            let lp = l.to_poly();
            while let (Some(a), Some(b)) = (num.div_exact(&lp), den.div_exact(&lp)) {
                num = a;
                den = b;
            }
        }
        let mut r = RationalFunction { num, den }.light_reduce();
        if let Some((_, c)) = r.den.display_terms().first() {
            let c = c.clone();
            r.num = r.num.scale(&c.recip());
            r.den = r.den.scale(&c.recip());
        }
        if r.den.len() > 1 {
            let pos = r.den.terms().iter().filter(|(_, c)| !c.is_negative()).count();
            if 2 * pos < r.den.len() {
                r.num = r.num.neg();
                r.den = r.den.neg();
            }
        }
        r
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::new_unchecked(self.num.add(&o.num), self.den.clone()).zero_fix();
        }
        if self.den.is_one() {
            return Self::new_unchecked(self.num.mul(&o.den).add(&o.num), o.den.clone()).zero_fix();
        }
        if o.den.is_one() {
            return Self::new_unchecked(self.num.add(&o.num.mul(&self.den)), self.den.clone()).zero_fix();
        }
        Self::new_unchecked(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .zero_fix()
    }

    fn zero_fix(self) -> Self {
        if self.num.is_zero() {
            Self::zero()
        } else {
            self
        }
    }

    pub fn neg(&self) -> Self {
        Self::new_unchecked(self.num.neg(), self.den.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.num == o.den {
            return Self::new_unchecked(o.num.clone(), self.den.clone()).light_reduce();
        }
        if o.num == self.den {
            return Self::new_unchecked(self.num.clone(), o.den.clone()).light_reduce();
        }
        Self::new_unchecked(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new_unchecked(self.num.scale(c), self.den.clone()).zero_fix()
    }

    /// Substitutes polynomials for variables.
    pub fn substitute(&self, bindings: &[(VarId, Polynomial)]) -> Result<Self> {
        let den = self.den.substitute(bindings);
        if den.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(Self::new_unchecked(self.num.substitute(bindings), den).light_reduce())
    }

    /// Substitutes rational functions for variables by clearing the
    /// denominators of the bound values.
    pub fn substitute_rf(&self, bindings: &[(VarId, RationalFunction)]) -> Result<Self> {
        let num = subst_poly_rf(&self.num, bindings);
        let den = subst_poly_rf(&self.den, bindings);
        if den.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        num.div(&den)
    }

    pub fn eval_with(&self, value: impl Fn(VarId) -> Rational + Copy) -> Result<Rational> {
        let d = self.den.eval_with(value);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(&self.num.eval_with(value) / &d)
    }

    pub fn to_latex(&self) -> String {
        if self.den.is_one() {
            return self.num.to_latex();
        }
        format!("\\frac{{{}}}{{{}}}", self.num.to_latex(), self.den.to_latex())
    }
}

fn subst_poly_rf(p: &Polynomial, bindings: &[(VarId, RationalFunction)]) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    for (m, c) in p.terms() {
        let mut term = RationalFunction::from_poly(Polynomial::constant(c.clone()));
        let mut rest = *m;
        for (v, val) in bindings {
            let e = rest.exp(*v);
            if e == 0 {
                continue;
            }
            rest.0[v.slot()] = 0;
            for _ in 0..e {
                term = term.mul(val);
            }
        }
        term = term.mul(&RationalFunction::from_poly(Polynomial::monomial(rest, Rational::one())));
        acc = acc.add(&term);
    }
    acc
}

impl PartialEq for RationalFunction {
    fn eq(&self, o: &Self) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl Eq for RationalFunction {}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Polynomial| if p.needs_parens() { format!("({p})") } else { p.to_string() };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! rf_op {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a RationalFunction> for &'a RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                RationalFunction::$m(self, rhs)
            }
        }
    };
}
rf_op!(Add, add);
rf_op!(Sub, sub);
rf_op!(Mul, mul);

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::div`] to handle it.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::div(self, rhs).expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_rf;

    #[test]
    fn cross_multiplied_equality() {
        let a = parse_rf("(z1 - z2)/(z2 - z1 + h)").unwrap();
        let b = parse_rf("(2*z1 - 2*z2)/(2*z2 - 2*z1 + 2*h)").unwrap();
        assert_eq!(a, b);
        assert_ne!(a, parse_rf("(z2 - z1)/(z2 - z1 + h)").unwrap());
    }

    #[test]
    fn substitution_detects_vanishing_denominator() {
        let f = parse_rf("1/(z1 - t1)").unwrap();
        let r = f.substitute(&[(VarId::t(1), Polynomial::var(VarId::z(1)))]);
        assert_eq!(r.unwrap_err(), Error::DenominatorVanishes);
    }

    #[test]
    fn arithmetic_reduces() {
        let a = parse_rf("h/(z2 - z1 + h)").unwrap();
        let b = parse_rf("(z2 - z1)/(z2 - z1 + h)").unwrap();
        assert_eq!((&a + &b).to_poly(), Some(Polynomial::one()));
    }

    #[test]
    fn rf_substitution() {
        let f = parse_rf("(1 + u)").unwrap();
        let g = f
            .substitute_rf(&[(VarId::U, parse_rf("-h/zeta").unwrap())])
            .unwrap();
        assert_eq!(g, parse_rf("(zeta - h)/zeta").unwrap());
    }
}
