use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::rational::Rational;
use super::var::{Monomial, VarId, NSLOTS};

/// Sparse multivariate polynomial over ℚ.
///
/// Terms are kept sorted by [`Monomial`] storage order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(Monomial::ONE, c)] }
        }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_int(c))
    }

    pub fn var(v: VarId) -> Self {
        Polynomial { terms: vec![(Monomial::var(v), Rational::one())] }
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut v: Vec<(Monomial, Rational)> = terms.into_iter().collect();
        v.sort_by_key(|a| a.0);
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    fn from_map(map: FxHashMap<Monomial, Rational>) -> Self {
        let mut v: Vec<(Monomial, Rational)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_unstable_by_key(|a| a.0);
        Polynomial { terms: v }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        match self.terms.binary_search_by(|(x, _)| x.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Leading term in storage order.
    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.last()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// `Some(d)` when every term has degree `d`; `None` for the zero
    /// polynomial or a non-homogeneous one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    pub fn has_t(&self) -> bool {
        self.terms.iter().any(|(m, _)| m.has_t())
    }

    /// Union of variables that occur.
    pub fn variables(&self) -> Vec<VarId> {
        let mut used = [false; NSLOTS];
        for (m, _) in &self.terms {
            for (s, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    used[s] = true;
                }
            }
        }
        (0..NSLOTS).filter(|&s| used[s]).map(VarId::from_slot).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        // Multiplying by a monomial preserves the (monomial) storage order.
        Polynomial { terms: self.terms.iter().map(|(x, a)| (x.mul(m), a * c)).collect() }
    }

    fn merge(&self, o: &Polynomial, sign: bool) -> Polynomial {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, if sign { -&b[j].1 } else { b[j].1.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            out.push((t.0, if sign { -&t.1 } else { t.1.clone() }));
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        self.merge(o, true)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        if o.terms.len() == 1 {
            return self.mul_monomial(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        let mut map: FxHashMap<Monomial, Rational> =
            FxHashMap::with_capacity_and_hasher(self.terms.len() * o.terms.len(), Default::default());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let p = ca * cb;
                map.entry(ma.mul(mb))
                    .and_modify(|x| *x += &p)
                    .or_insert(p);
            }
        }
        Self::from_map(map)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (ld_m, ld_c) = d.leading().expect("nonzero divisor");
        let ld_inv = ld_c.recip();
        let mut rem: BTreeMap<Monomial, Rational> = self.terms.iter().cloned().collect();
        let mut q: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((lm, lc)) = rem.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            let qm = lm.div(ld_m)?;
            let qc = &lc * &ld_inv;
            for (dm, dc) in &d.terms {
                let m = dm.mul(&qm);
                let delta = dc * &qc;
                let remove = match rem.get_mut(&m) {
                    Some(x) => {
                        *x -= &delta;
                        x.is_zero()
                    }
                    None => {
                        rem.insert(m, -delta);
                        false
                    }
                };
                if remove {
                    rem.remove(&m);
                }
            }
            q.push((qm, qc));
        }
        Some(Polynomial::from_terms(q))
    }

    /// Evaluates with `value(slot)` giving the value of each occurring variable.
    pub fn eval_with(&self, value: impl Fn(VarId) -> Rational) -> Rational {
        let mut vals: [Option<Vec<Rational>>; NSLOTS] = std::array::from_fn(|_| None);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = vals[s].get_or_insert_with(|| vec![Rational::one(), value(VarId::from_slot(s))]);
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &powers[1];
                    powers.push(next);
                }
                t *= &powers[e as usize];
            }
            acc += &t;
        }
        acc
    }

    /// Evaluates at a point given as variable/value pairs; missing variables
    /// evaluate to zero.
    pub fn eval(&self, point: &[(VarId, Rational)]) -> Rational {
        self.eval_with(|v| {
            point
                .iter()
                .find(|(w, _)| *w == v)
                .map(|(_, x)| x.clone())
                .unwrap_or_else(Rational::zero)
        })
    }

    /// Simultaneous substitution of polynomials for variables.
    pub fn substitute(&self, bindings: &[(VarId, Polynomial)]) -> Polynomial {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut bound: [Option<&Polynomial>; NSLOTS] = [None; NSLOTS];
        for (v, p) in bindings {
            bound[v.slot()] = Some(p);
        }
        let mut cache: FxHashMap<(usize, u8), Polynomial> = FxHashMap::default();
        let mut map: FxHashMap<Monomial, Rational> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut factor = Polynomial::constant(c.clone());
            for (s, b) in bound.iter().enumerate() {
                let e = rest.0[s];
                if e == 0 {
                    continue;
                }
                if let Some(p) = b {
                    rest.0[s] = 0;
                    let pw = cache.entry((s, e)).or_insert_with(|| p.pow(e as u32));
                    factor = factor.mul(pw);
                }
            }
            for (fm, fc) in factor.terms {
                let mm = fm.mul(&rest);
                map.entry(mm).and_modify(|x| *x += &fc).or_insert(fc);
            }
        }
        Self::from_map(map)
    }

    /// Renames variables through a slot map; the map must be injective on
    /// occurring variables.
    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> Polynomial {
        let map: [usize; NSLOTS] = std::array::from_fn(|s| f(VarId::from_slot(s)).slot());
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            let mut e = [0u8; NSLOTS];
            for (s, &x) in m.exps().iter().enumerate() {
                if x > 0 {
                    e[map[s]] += x;
                }
            }
            (Monomial::from_exps(e), c.clone())
        }))
    }

    /// Terms in display order: graded, then `z_n > ... > z_1 > t_k > ... > t_1 > h`.
    pub fn display_terms(&self) -> Vec<&(Monomial, Rational)> {
        let mut v: Vec<&(Monomial, Rational)> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.display_cmp(&a.0));
        v
    }

    fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut order = self.display_terms();
        // Start with a positive term of top degree when one exists.
        if order[0].1.is_negative() {
            let d = order[0].0.degree();
            if let Some(pos) = order.iter().position(|t| t.0.degree() == d && !t.1.is_negative()) {
                let t = order.remove(pos);
                order.insert(0, t);
            }
        }
        let mut s = String::new();
        for (idx, (m, c)) in order.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_monomial(m, latex);
            if mono.is_empty() {
                s.push_str(&render_coeff(&a, latex));
            } else if a.is_one() {
                s.push_str(&mono);
            } else if latex {
                s.push_str(&format!("{} {}", render_coeff(&a, true), mono));
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    /// True when the display form has more than one term, used to decide on
    /// parentheses.
    pub(crate) fn needs_parens(&self) -> bool {
        self.terms.len() > 1 || self.terms.first().is_some_and(|(m, c)| c.is_negative() && !m.is_one())
    }
}

fn render_coeff(c: &Rational, latex: bool) -> String {
    if latex && !c.is_integer() {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    } else {
        c.to_string()
    }
}

fn render_monomial(m: &Monomial, latex: bool) -> String {
    let mut vars: Vec<(VarId, u8)> = m.vars().collect();
    vars.sort_by_key(|(v, _)| std::cmp::Reverse(VarId::display_rank(v.slot())));
    let parts: Vec<String> = vars
        .into_iter()
        .map(|(v, e)| match (latex, e) {
            (false, 1) => v.to_string(),
            (false, e) => format!("{v}^{e}"),
            (true, 1) => v.latex(),
            (true, e) => format!("{}^{{{e}}}", v.latex()),
        })
        .collect();
    parts.join(if latex { " " } else { "*" })
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl From<VarId> for Polynomial {
    fn from(v: VarId) -> Self {
        Polynomial::var(v)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::int(c)
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

macro_rules! poly_op {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                Polynomial::$m(self, rhs)
            }
        }
    };
}
poly_op!(Add, add);
poly_op!(Sub, sub);
poly_op!(Mul, mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize) -> Polynomial {
        Polynomial::var(VarId::t(i))
    }
    fn z(i: usize) -> Polynomial {
        Polynomial::var(VarId::z(i))
    }
    fn h() -> Polynomial {
        Polynomial::var(VarId::H)
    }

    #[test]
    fn cancellation_and_identity() {
        let a = &z(2) - &t(1);
        let b = &(&t(1) - &z(1)) + &h();
        assert_eq!(&a + &b, &(&z(2) - &z(1)) + &h());
        assert_eq!(&a * &Polynomial::one(), a);
        assert_eq!(a.to_string(), "z2 - t1");
        assert_eq!((&(&t(1) - &z(2)) + &h()).to_string(), "t1 - z2 + h");
    }

    #[test]
    fn hand_expansion() {
        let d = &t(2) - &t(1);
        let p = &(&d + &h()) * &d;
        let expect = t(2)
            .pow(2)
            .sub(&t(1).mul(&t(2)).scale(&Rational::from_int(2)))
            .add(&t(1).pow(2))
            .add(&h().mul(&t(2)))
            .sub(&h().mul(&t(1)));
        assert_eq!(p, expect);
    }

    #[test]
    fn exact_division() {
        let a = &(&z(1) - &z(2)) * &(&z(3) + &h());
        assert_eq!(a.div_exact(&(&z(1) - &z(2))), Some(&z(3) + &h()));
        assert_eq!((&a + &Polynomial::one()).div_exact(&(&z(1) - &z(2))), None);
    }

    #[test]
    fn substitution() {
        let p = &z(2) - &t(1);
        assert_eq!(p.substitute(&[(VarId::t(1), z(1))]), &z(2) - &z(1));
        let q = t(1).pow(3);
        assert_eq!(q.substitute(&[(VarId::t(1), &z(1) + &h())]), (&z(1) + &h()).pow(3));
    }

    #[test]
    fn homogeneity() {
        let p = &(&z(2) - &z(1)) * &h();
        assert_eq!(p.homogeneous_degree(), Some(2));
        assert_eq!((&p + &z(1)).homogeneous_degree(), None);
    }
}
