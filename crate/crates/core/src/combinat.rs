//! Subsets of `{1..n}`, permutations, and the subset/tensor-basis dictionary.
//! Every interface is 1-based.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};

/// A subset `{i_1 < ... < i_k}` of `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    n: usize,
    elems: Vec<usize>,
}

impl Subset {
    pub fn new(n: usize, mut elems: Vec<usize>) -> Result<Self> {
        elems.sort_unstable();
        if elems.windows(2).any(|w| w[0] == w[1]) {
            return domain(format!("repeated element in subset {elems:?}"));
        }
        if elems.iter().any(|&e| e == 0 || e > n) {
            return domain(format!("subset {elems:?} not contained in 1..{n}"));
        }
        Ok(Subset { n, elems })
    }

    pub fn empty(n: usize) -> Self {
        Subset { n, elems: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elems.binary_search(&i).is_ok()
    }

    pub fn complement(&self) -> Subset {
        Subset { n: self.n, elems: (1..=self.n).filter(|i| !self.contains(*i)).collect() }
    }

    /// Parses `"1,3"`; `"none"` or the empty string is the empty set.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "none" || s == "{}" {
            return Ok(Self::empty(n));
        }
        let s = s.trim_start_matches('{').trim_end_matches('}');
        let elems = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad subset element `{x}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, elems)
    }

    /// Bitmask with bit `i-1` set for each element.
    pub fn mask(&self) -> u32 {
        self.elems.iter().fold(0, |m, &i| m | (1 << (i - 1)))
    }

    pub fn from_mask(n: usize, mask: u32) -> Self {
        Subset { n, elems: (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect() }
    }

    /// Comparison key `(|I|, elements)`, the order used for tensor bases.
    pub fn graded_key(&self) -> (usize, &[usize]) {
        (self.k(), &self.elems)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All `k`-subsets of `{1..n}` in lexicographic order.
pub fn enumerate_subsets(n: usize, k: usize) -> Result<Vec<Subset>> {
    if k > n {
        return domain(format!("k = {k} exceeds n = {n}"));
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(Subset { n, elems: cur.clone() });
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < n - (k - 1 - i) {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All subsets of `{1..n}` sorted by `(|I|, lex)`.
pub fn graded_subsets(n: usize) -> Vec<Subset> {
    (0..=n).flat_map(|k| enumerate_subsets(n, k).expect("k <= n")).collect()
}

/// `s_{u,v}(I)`: swap `u` and `v` in `I`.
pub fn apply_transposition(i: &Subset, u: usize, v: usize) -> Subset {
    let (cu, cv) = (i.contains(u), i.contains(v));
    if cu == cv {
        return i.clone();
    }
    let mut e: Vec<usize> = i.elems.iter().map(|&x| if x == u { v } else if x == v { u } else { x }).collect();
    e.sort_unstable();
    Subset { n: i.n, elems: e }
}

/// Unordered pairs `(I, J, i, j)` of `k`-subsets with `I = K ∪ {i}`,
/// `J = K ∪ {j}`.
pub fn gkm_pairs(n: usize, k: usize) -> Result<Vec<(Subset, Subset, usize, usize)>> {
    let subs = enumerate_subsets(n, k)?;
    let mut out = Vec::new();
    for (a, x) in subs.iter().enumerate() {
        for y in &subs[a + 1..] {
            let only_x: Vec<usize> = x.elems.iter().copied().filter(|e| !y.contains(*e)).collect();
            let only_y: Vec<usize> = y.elems.iter().copied().filter(|e| !x.contains(*e)).collect();
            if only_x.len() == 1 {
                out.push((x.clone(), y.clone(), only_x[0], only_y[0]));
            }
        }
    }
    Ok(out)
}

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return domain(format!("{images:?} is not a permutation of 1..{n}"));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// The transposition `s_{u,v}`.
    pub fn transposition(n: usize, u: usize, v: usize) -> Result<Self> {
        if u == v || u == 0 || v == 0 || u > n || v > n {
            return domain(format!("invalid transposition ({u} {v}) in S_{n}"));
        }
        let mut p = Self::identity(n);
        p.images.swap(u - 1, v - 1);
        Ok(p)
    }

    /// Parses one-line notation `"2,3,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let images = s
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad permutation entry `{x}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `(self ∘ o)(i) = self(o(i))`.
    pub fn compose(&self, o: &Permutation) -> Result<Permutation> {
        if self.n() != o.n() {
            return Err(Error::SizeMismatch(format!("S_{} and S_{}", self.n(), o.n())));
        }
        Ok(Permutation { images: o.images.iter().map(|&i| self.apply(i)).collect() })
    }

    /// `σ·s_{a,a+1}`: swaps the values at positions `a` and `a+1`.
    pub fn times_simple(&self, a: usize) -> Result<Permutation> {
        self.compose(&Permutation::transposition(self.n(), a, a + 1)?)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    pub fn sign(&self) -> i32 {
        let mut s = 1;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.images[i] > self.images[j] {
                    s = -s;
                }
            }
        }
        s
    }

    /// `σ(I)`.
    pub fn apply_subset(&self, i: &Subset) -> Subset {
        let mut e: Vec<usize> = i.elems.iter().map(|&x| self.apply(x)).collect();
        e.sort_unstable();
        Subset { n: i.n, elems: e }
    }

    /// All permutations of `{1..n}` in lexicographic order of one-line
    /// notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // Next lexicographic permutation.
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// A basis vector `v_{j_1} ⊗ ... ⊗ v_{j_n}` of `(C^2)^{⊗n}`, with `j_s = 2`
/// exactly when `s` lies in the subset.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TensorBasisIndex {
    pub subset: Subset,
}

impl TensorBasisIndex {
    pub fn new(subset: Subset) -> Self {
        TensorBasisIndex { subset }
    }

    /// Factor labels `j_1..j_n` with values 1 or 2.
    pub fn labels(&self) -> Vec<u8> {
        (1..=self.subset.n()).map(|s| if self.subset.contains(s) { 2 } else { 1 }).collect()
    }

    pub fn from_labels(labels: &[u8]) -> Result<Self> {
        let n = labels.len();
        let mut elems = Vec::new();
        for (s, &l) in labels.iter().enumerate() {
            match l {
                1 => {}
                2 => elems.push(s + 1),
                _ => return domain(format!("tensor label {l} is not 1 or 2")),
            }
        }
        Ok(TensorBasisIndex { subset: Subset::new(n, elems)? })
    }
}

impl fmt::Display for TensorBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels().iter().map(|l| format!("v{l}")).collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

/// `n choose k`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, e: &[usize]) -> Subset {
        Subset::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn subsets_in_lex_order() {
        assert_eq!(enumerate_subsets(2, 1).unwrap(), vec![s(2, &[1]), s(2, &[2])]);
        let v = enumerate_subsets(4, 2).unwrap();
        assert_eq!(v.len(), 6);
        assert_eq!(&v[..2], &[s(4, &[1, 2]), s(4, &[1, 3])]);
        assert_eq!(enumerate_subsets(3, 0).unwrap(), vec![Subset::empty(3)]);
        assert!(enumerate_subsets(2, 3).is_err());
    }

    #[test]
    fn transpositions_on_subsets() {
        assert_eq!(apply_transposition(&s(2, &[1]), 1, 2), s(2, &[2]));
        assert_eq!(apply_transposition(&s(2, &[1, 2]), 1, 2), s(2, &[1, 2]));
        assert_eq!(apply_transposition(&s(4, &[2, 4]), 3, 4), s(4, &[2, 3]));
    }

    #[test]
    fn composition_rule() {
        let w = Permutation::parse("2,1,3").unwrap();
        assert_eq!(Permutation::identity(3).compose(&w).unwrap(), w);
        let sw = Permutation::parse("2,1").unwrap();
        assert!(sw.compose(&sw).unwrap().is_identity());
        let sigma = Permutation::parse("2,3,1").unwrap();
        assert_eq!(sigma.compose(&w).unwrap(), Permutation::parse("3,2,1").unwrap());
        assert_eq!(sigma.times_simple(1).unwrap(), Permutation::parse("3,2,1").unwrap());
        assert!(sigma.compose(&Permutation::identity(2)).is_err());
    }

    #[test]
    fn gkm_pair_counts() {
        assert_eq!(gkm_pairs(2, 1).unwrap(), vec![(s(2, &[1]), s(2, &[2]), 1, 2)]);
        assert_eq!(gkm_pairs(3, 2).unwrap().len(), 3);
        assert_eq!(gkm_pairs(4, 2).unwrap().len(), 12);
    }

    #[test]
    fn parsing() {
        assert_eq!(Subset::parse(3, "none").unwrap(), Subset::empty(3));
        assert_eq!(Subset::parse(3, "3,1").unwrap(), s(3, &[1, 3]));
        assert!(Subset::parse(3, "4").is_err());
        assert!(Permutation::parse("1,1").is_err());
        assert_eq!(Permutation::all(3).len(), 6);
        assert_eq!(Permutation::all(3)[1], Permutation::parse("1,3,2").unwrap());
    }

    #[test]
    fn tensor_labels() {
        let t = TensorBasisIndex::new(s(3, &[2]));
        assert_eq!(t.labels(), vec![1, 2, 1]);
        assert_eq!(TensorBasisIndex::from_labels(&[1, 2, 1]).unwrap(), t);
        assert_eq!(t.to_string(), "v1⊗v2⊗v1");
    }
}
