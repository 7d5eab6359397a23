//! Tangent weights at the torus fixed points `p_I` and their splitting with
//! respect to a permutation.

use std::fmt;
use std::str::FromStr;

use crate::combinat::{binomial, Permutation, Subset};
use crate::error::{domain, Error, Result};
use crate::exactalg::{LinearForm, Polynomial, Rational, VarId};

/// Which of the four bundle spaces (and weight-function family) is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VersionTag {
    R00,
    R10,
    R01,
    R11,
}

impl VersionTag {
    pub const ALL: [VersionTag; 4] = [VersionTag::R00, VersionTag::R10, VersionTag::R01, VersionTag::R11];

    /// First index is 1 (`10` and `11`).
    pub fn first_odd(self) -> bool {
        matches!(self, VersionTag::R10 | VersionTag::R11)
    }

    /// Second index is 1 (`01` and `11`).
    pub fn second_odd(self) -> bool {
        matches!(self, VersionTag::R01 | VersionTag::R11)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VersionTag::R00 => "00",
            VersionTag::R10 => "10",
            VersionTag::R01 => "01",
            VersionTag::R11 => "11",
        }
    }
}

impl fmt::Display for VersionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VersionTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "00" => Ok(VersionTag::R00),
            "10" => Ok(VersionTag::R10),
            "01" => Ok(VersionTag::R01),
            "11" => Ok(VersionTag::R11),
            _ => Err(Error::Parse(format!("version must be one of 00, 10, 01, 11 (got `{s}`)"))),
        }
    }
}

/// The weight `z_plus - z_minus + hbar·h`. When `plus == minus` it is the
/// neutral weight `hbar·h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TangentWeight {
    pub plus: usize,
    pub minus: usize,
    pub hbar: i64,
}

impl TangentWeight {
    pub fn new(plus: usize, minus: usize, hbar: i64) -> Self {
        TangentWeight { plus, minus, hbar }
    }

    pub fn is_neutral(&self) -> bool {
        self.plus == self.minus
    }

    pub fn to_form(&self) -> LinearForm {
        if self.is_neutral() {
            return LinearForm::from_ints(&[(VarId::H, self.hbar)], 0);
        }
        LinearForm::from_ints(&[(VarId::z(self.plus), 1), (VarId::z(self.minus), -1), (VarId::H, self.hbar)], 0)
    }

    pub fn to_poly(&self) -> Polynomial {
        self.to_form().to_poly()
    }

    /// Reads a weight `z_i - z_j + εh` (or `εh` with `ε ≠ 0`, read as
    /// neutral) off a linear polynomial.
    pub fn from_poly(p: &Polynomial) -> Result<Self> {
        let bad = || domain(format!("`{p}` is not of the form z_i - z_j + e*h"));
        let Some(l) = LinearForm::from_poly(p) else { return bad() };
        if !l.constant().is_zero() {
            return bad();
        }
        let (mut plus, mut minus, mut hbar) = (None, None, 0i64);
        let one = Rational::one();
        let minus_one = Rational::from_int(-1);
        for (v, c) in l.coeffs() {
            match v {
                VarId::Z(i) if *c == one && plus.is_none() => plus = Some(*i as usize),
                VarId::Z(i) if *c == minus_one && minus.is_none() => minus = Some(*i as usize),
                VarId::H if c.is_integer() => hbar = c.numer().try_into().map_err(|_| Error::Domain("coefficient".into()))?,
                _ => return bad(),
            }
        }
        match (plus, minus) {
            (Some(i), Some(j)) => Ok(TangentWeight::new(i, j, hbar)),
            (None, None) if hbar != 0 => Ok(TangentWeight::new(1, 1, hbar)),
            _ => bad(),
        }
    }
}

impl fmt::Display for TangentWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// A multiset of tangent weights.
pub type WeightList = Vec<TangentWeight>;

/// Horizontal and vertical tangent weights at `p_I`.
pub fn tangent_weights(r: VersionTag, n: usize, i: &Subset) -> (WeightList, WeightList) {
    let ii = i.elems();
    let ic = i.complement();
    let ic = ic.elems();
    let hor: WeightList = ii
        .iter()
        .flat_map(|&a| ic.iter().map(move |&b| TangentWeight::new(b, a, 0)))
        .collect();
    let mut ver: WeightList = Vec::new();
    let pairs = |xs: &[usize], ys: &[usize], out: &mut WeightList| {
        for &a in xs {
            for &b in ys {
                out.push(TangentWeight::new(a, b, 1));
            }
        }
    };
    debug_assert!(ii.len() + ic.len() == n);
    if r.first_odd() {
        pairs(ii, ii, &mut ver);
    }
    if r.second_odd() {
        pairs(ic, ic, &mut ver);
    }
    pairs(ii, ic, &mut ver);
    ver.sort_by_key(|w| (w.plus, w.minus));
    (hor, ver)
}

/// Splits weights into σ-attracting, σ-repelling and neutral parts.
pub fn split_by_sigma(weights: &[TangentWeight], sigma: &Permutation) -> Result<(WeightList, WeightList, WeightList)> {
    let inv = sigma.inverse();
    let n = sigma.n();
    let (mut att, mut rep, mut neu) = (Vec::new(), Vec::new(), Vec::new());
    for w in weights {
        if w.plus == 0 || w.minus == 0 || w.plus > n || w.minus > n {
            return domain(format!("weight {w} uses an index outside 1..{n}"));
        }
        if w.is_neutral() {
            neu.push(*w);
        } else if inv.apply(w.plus) > inv.apply(w.minus) {
            rep.push(*w);
        } else {
            att.push(*w);
        }
    }
    Ok((att, rep, neu))
}

/// Product of the weights as linear forms; the empty product is 1.
pub fn euler_product(weights: &[TangentWeight]) -> Polynomial {
    weights.iter().fold(Polynomial::one(), |acc, w| acc.mul(&w.to_poly()))
}

/// `d^(r)`, the number of σ-repelling weights at any fixed point.
pub fn dimension_d(r: VersionTag, n: usize, k: usize) -> usize {
    let base = k * (n - k);
    match r {
        VersionTag::R00 => base,
        VersionTag::R10 => base + binomial(k, 2),
        VersionTag::R01 => base + binomial(n - k, 2),
        VersionTag::R11 => binomial(n, 2),
    }
}

/// `e^{ver,σ-}_I` and `e^{hor,σ-}_I`.
pub fn repelling_euler(r: VersionTag, n: usize, sigma: &Permutation, i: &Subset) -> (Polynomial, Polynomial) {
    let (hor, ver) = tangent_weights(r, n, i);
    let (_, rep_v, _) = split_by_sigma(&ver, sigma).expect("weights built in range");
    let (_, rep_h, _) = split_by_sigma(&hor, sigma).expect("weights built in range");
    (euler_product(&rep_v), euler_product(&rep_h))
}

/// σ-repelling vertical weights at `p_I`.
pub fn repelling_vertical(r: VersionTag, n: usize, sigma: &Permutation, i: &Subset) -> WeightList {
    let (_, ver) = tangent_weights(r, n, i);
    split_by_sigma(&ver, sigma).expect("weights built in range").1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    fn s(n: usize, e: &[usize]) -> Subset {
        Subset::new(n, e.to_vec()).unwrap()
    }

    fn polys(w: &[TangentWeight]) -> Vec<Polynomial> {
        w.iter().map(|x| x.to_poly()).collect()
    }

    #[test]
    fn weight_tables() {
        let (h, v) = tangent_weights(VersionTag::R00, 2, &s(2, &[1]));
        assert_eq!(polys(&h), vec![parse_poly("z2 - z1").unwrap()]);
        assert_eq!(polys(&v), vec![parse_poly("z1 - z2 + h").unwrap()]);
        let (_, v) = tangent_weights(VersionTag::R10, 2, &s(2, &[1]));
        assert_eq!(polys(&v), vec![parse_poly("h").unwrap(), parse_poly("z1 - z2 + h").unwrap()]);
        let (_, v) = tangent_weights(VersionTag::R11, 2, &s(2, &[1]));
        let mut got = polys(&v);
        got.sort_by_key(|p| p.to_string());
        let mut want: Vec<Polynomial> =
            ["h", "h", "z1 - z2 + h"].iter().map(|x| parse_poly(x).unwrap()).collect();
        want.sort_by_key(|p| p.to_string());
        assert_eq!(got, want);
    }

    #[test]
    fn splitting() {
        let w = [TangentWeight::new(2, 1, 0)];
        let id = Permutation::identity(2);
        let sw = Permutation::parse("2,1").unwrap();
        assert_eq!(split_by_sigma(&w, &id).unwrap().1, w.to_vec());
        assert_eq!(split_by_sigma(&w, &sw).unwrap().0, w.to_vec());
        let hb = [TangentWeight::new(1, 1, 1)];
        assert_eq!(split_by_sigma(&hb, &sw).unwrap().2, hb.to_vec());
        assert!(TangentWeight::from_poly(&parse_poly("z1 + z2").unwrap()).is_err());
        assert_eq!(
            TangentWeight::from_poly(&parse_poly("z3 - z1 + h").unwrap()).unwrap(),
            TangentWeight::new(3, 1, 1)
        );
    }

    #[test]
    fn euler_products() {
        let id = Permutation::identity(2);
        let (_, eh) = repelling_euler(VersionTag::R00, 2, &id, &s(2, &[1]));
        assert_eq!(eh, parse_poly("z2 - z1").unwrap());
        assert_eq!(euler_product(&[]), Polynomial::one());
        let sw = Permutation::parse("2,1").unwrap();
        let (ev, _) = repelling_euler(VersionTag::R10, 2, &sw, &s(2, &[1]));
        assert_eq!(ev, parse_poly("z1 - z2 + h").unwrap());
    }

    #[test]
    fn dimensions() {
        assert_eq!(dimension_d(VersionTag::R00, 4, 2), 4);
        assert_eq!(dimension_d(VersionTag::R11, 4, 2), 6);
        assert_eq!(dimension_d(VersionTag::R10, 2, 1), 1);
    }
}
