use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported index for `t` and `z` variables.
pub const MAX_INDEX: usize = 8;
pub(crate) const SLOT_T0: usize = 0;
pub(crate) const SLOT_Z0: usize = MAX_INDEX;
pub(crate) const SLOT_H: usize = 2 * MAX_INDEX;
pub(crate) const SLOT_ZETA: usize = SLOT_H + 1;
pub(crate) const SLOT_U: usize = SLOT_H + 2;
pub const NSLOTS: usize = SLOT_H + 3;

/// A polynomial variable: Chern roots `t_a`, equivariant parameters `z_b`,
/// the loop parameter `h`, and the spectral parameters `zeta` and `u` used by
/// R-matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarId {
    T(u8),
    Z(u8),
    H,
    Zeta,
    U,
}

impl VarId {
    pub fn t(i: usize) -> Self {
        assert!((1..=MAX_INDEX).contains(&i), "t index {i} out of range");
        VarId::T(i as u8)
    }

    pub fn z(i: usize) -> Self {
        assert!((1..=MAX_INDEX).contains(&i), "z index {i} out of range");
        VarId::Z(i as u8)
    }

    #[inline]
    pub fn slot(self) -> usize {
        match self {
            VarId::T(i) => SLOT_T0 + i as usize - 1,
            VarId::Z(i) => SLOT_Z0 + i as usize - 1,
            VarId::H => SLOT_H,
            VarId::Zeta => SLOT_ZETA,
            VarId::U => SLOT_U,
        }
    }

    #[inline]
    pub fn from_slot(s: usize) -> Self {
        match s {
            s if s < SLOT_Z0 => VarId::T((s - SLOT_T0 + 1) as u8),
            s if s < SLOT_H => VarId::Z((s - SLOT_Z0 + 1) as u8),
            SLOT_H => VarId::H,
            SLOT_ZETA => VarId::Zeta,
            SLOT_U => VarId::U,
            _ => panic!("slot {s} out of range"),
        }
    }

    pub fn is_t(self) -> bool {
        matches!(self, VarId::T(_))
    }

    pub fn latex(self) -> String {
        match self {
            VarId::T(i) => format!("t_{{{i}}}"),
            VarId::Z(i) => format!("z_{{{i}}}"),
            VarId::H => "\\hbar".into(),
            VarId::Zeta => "\\zeta".into(),
            VarId::U => "u".into(),
        }
    }

    /// Rank used for display ordering: higher ranks print first within a
    /// degree. `z_n > ... > z_1 > t_k > ... > t_1 > h > zeta > u`.
    pub(crate) fn display_rank(slot: usize) -> usize {
        match slot {
            s if s < SLOT_Z0 => 100 + s,
            s if s < SLOT_H => 200 + s,
            SLOT_H => 30,
            SLOT_ZETA => 20,
            _ => 10,
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::T(i) => write!(f, "t{i}"),
            VarId::Z(i) => write!(f, "z{i}"),
            VarId::H => write!(f, "h"),
            VarId::Zeta => write!(f, "zeta"),
            VarId::U => write!(f, "u"),
        }
    }
}

impl FromStr for VarId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown variable `{s}`"));
        match s {
            "h" | "hbar" => return Ok(VarId::H),
            "zeta" => return Ok(VarId::Zeta),
            "u" => return Ok(VarId::U),
            _ => {}
        }
        let (kind, idx) = s.split_at(1);
        let i: usize = idx.parse().map_err(|_| bad())?;
        if !(1..=MAX_INDEX).contains(&i) {
            return Err(bad());
        }
        match kind {
            "t" => Ok(VarId::T(i as u8)),
            "z" => Ok(VarId::Z(i as u8)),
            _ => Err(bad()),
        }
    }
}

/// Dense exponent vector over all variable slots.
///
/// The derived ordering is lexicographic with `t1` most significant; it is a
/// monomial order and is used for canonical storage.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub(crate) [u8; NSLOTS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NSLOTS]);

    pub fn var(v: VarId) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: VarId, e: u8) -> Self {
        let mut m = Self::ONE;
        m.0[v.slot()] = e;
        m
    }

    #[inline]
    pub fn exp(&self, v: VarId) -> u8 {
        self.0[v.slot()]
    }

    #[inline]
    pub fn exps(&self) -> &[u8; NSLOTS] {
        &self.0
    }

    pub fn from_exps(e: [u8; NSLOTS]) -> Self {
        Monomial(e)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut r = [0u8; NSLOTS];
        for (i, x) in r.iter_mut().enumerate() {
            *x = self.0[i].checked_add(o.0[i]).expect("monomial exponent overflow");
        }
        Monomial(r)
    }

    /// `self / o` when `o` divides `self`.
    #[inline]
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut r = [0u8; NSLOTS];
        for (i, x) in r.iter_mut().enumerate() {
            *x = self.0[i].checked_sub(o.0[i])?;
        }
        Some(Monomial(r))
    }

    pub fn vars(&self) -> impl Iterator<Item = (VarId, u8)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(s, &e)| (VarId::from_slot(s), e))
    }

    /// Exponents of `t1..t_k` as a slice.
    pub fn t_exps(&self) -> &[u8] {
        &self.0[SLOT_T0..SLOT_Z0]
    }

    pub fn t_exps_mut(&mut self) -> &mut [u8] {
        &mut self.0[SLOT_T0..SLOT_Z0]
    }

    pub fn has_t(&self) -> bool {
        self.t_exps().iter().any(|&e| e > 0)
    }

    /// Display ordering: graded, then lexicographic by display rank.
    /// `Greater` means printed earlier.
    pub fn display_cmp(&self, o: &Monomial) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            let mut slots: [usize; NSLOTS] = std::array::from_fn(|i| i);
            slots.sort_by_key(|&s| std::cmp::Reverse(VarId::display_rank(s)));
            for s in slots {
                match self.0[s].cmp(&o.0[s]) {
                    Ordering::Equal => continue,
                    c => return c,
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .vars()
            .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slots_round_trip() {
        for s in 0..NSLOTS {
            assert_eq!(VarId::from_slot(s).slot(), s);
        }
        for name in ["t1", "z8", "h", "zeta", "u"] {
            assert_eq!(name.parse::<VarId>().unwrap().to_string(), name);
        }
        assert!("t9".parse::<VarId>().is_err());
        assert!("x1".parse::<VarId>().is_err());
    }

    #[test]
    fn display_order_prefers_z() {
        let z2 = Monomial::var(VarId::z(2));
        let z1 = Monomial::var(VarId::z(1));
        let t1 = Monomial::var(VarId::t(1));
        let h = Monomial::var(VarId::H);
        assert_eq!(z2.display_cmp(&z1), Ordering::Greater);
        assert_eq!(z1.display_cmp(&t1), Ordering::Greater);
        assert_eq!(t1.display_cmp(&h), Ordering::Greater);
        assert_eq!(h.display_cmp(&Monomial::ONE), Ordering::Greater);
    }
}
