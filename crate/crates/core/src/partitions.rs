//! Integer partitions, Frobenius coordinates and GL(n) Weyl dimensions.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of non-negative integers, stored without
/// trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition, stripping trailing zeros.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// The column (1^k).
    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of boxes.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to `len`. Panics if the partition is longer.
    pub fn padded(&self, len: usize) -> Vec<u32> {
        assert!(self.len() <= len, "partition {self} longer than {len}");
        let mut v = self.0.clone();
        v.resize(len, 0);
        v
    }

    /// Same as [`Partition::padded`] but as signed entries.
    pub fn padded_i64(&self, len: usize) -> Vec<i64> {
        self.padded(len).into_iter().map(i64::from).collect()
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Sum of the first `s` parts.
    pub fn leading_sum(&self, s: usize) -> u64 {
        self.0.iter().take(s).map(|&x| u64::from(x)).sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0) as usize;
        let cols = (0..width)
            .map(|c| self.0.iter().take_while(|&&a| a as usize > c).count() as u32)
            .collect();
        Partition(cols)
    }

    /// Length of the main diagonal of the Young diagram.
    pub fn rank(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .take_while(|(i, &a)| a as usize > *i)
            .count()
    }

    pub fn frobenius(&self) -> FrobeniusForm {
        let r = self.rank();
        let conj = self.conjugate();
        let arms = (0..r).map(|i| self.0[i] - 1 - i as u32).collect();
        let legs = (0..r).map(|i| conj.0[i] - 1 - i as u32).collect();
        FrobeniusForm { arms, legs }
    }

    pub fn from_frobenius(f: &FrobeniusForm) -> Partition {
        let r = f.rank();
        if r == 0 {
            return Partition::empty();
        }
        // Rows 1..r: arm + diagonal position. Rows below the diagonal block
        // count the legs reaching them.
        let mut parts: Vec<u32> = (0..r).map(|i| f.arms[i] + 1 + i as u32).collect();
        let depth = f.legs[0] as usize + 1;
        for row in r..depth {
            let cols = f
                .legs
                .iter()
                .enumerate()
                .filter(|(i, &leg)| leg as usize + i >= row)
                .count();
            parts.push(cols as u32);
        }
        Partition(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"[3,1]"`; `"[]"` is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse { token: s.to_string(), expected: "[a,b,...]" })?;
        let parts = parse_list::<u32>(body)?;
        Partition::new(parts)
    }
}

/// Parses a comma-separated list of integers (possibly empty).
pub(crate) fn parse_list<T: FromStr>(body: &str) -> Result<Vec<T>> {
    let body = body.trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<T>()
                .map_err(|_| Error::Parse { token: tok.to_string(), expected: "integer" })
        })
        .collect()
}

/// Frobenius coordinates `(arms | legs)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrobeniusForm {
    pub arms: Vec<u32>,
    pub legs: Vec<u32>,
}

impl FrobeniusForm {
    pub fn new(arms: Vec<u32>, legs: Vec<u32>) -> Result<Self> {
        let strict = |v: &[u32]| v.windows(2).all(|w| w[0] > w[1]);
        if arms.len() != legs.len() || !strict(&arms) || !strict(&legs) {
            return Err(Error::InvalidPartition(format!(
                "({arms:?}|{legs:?}) is not a Frobenius form"
            )));
        }
        Ok(FrobeniusForm { arms, legs })
    }

    pub fn rank(&self) -> usize {
        self.arms.len()
    }
}

impl fmt::Display for FrobeniusForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({}|{})", join(&self.arms), join(&self.legs))
    }
}

/// A weakly decreasing integer vector of fixed length; a highest weight of GL(n).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct DominantWeight(Vec<i64>);

impl DominantWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(entries));
        }
        Ok(DominantWeight(entries))
    }

    pub fn from_partition(p: &Partition, n: usize) -> Self {
        DominantWeight(p.padded_i64(n))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<i64>> for DominantWeight {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        DominantWeight::new(v)
    }
}

impl From<DominantWeight> for Vec<i64> {
    fn from(w: DominantWeight) -> Self {
        w.0
    }
}

/// Dimension of the irreducible GL(n) representation with highest weight `w`.
pub fn weyl_dimension(w: &DominantWeight, n: usize) -> Result<BigUint> {
    if w.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: w.len() });
    }
    let e = w.entries();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= e[i] - e[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    let q = num / den;
    Ok(q.to_biguint().expect("Weyl dimension of a dominant weight is positive"))
}

/// Dimension of `S^λ C^n`; zero when λ has more than `n` parts.
pub fn schur_dimension(p: &Partition, n: usize) -> BigUint {
    if p.len() > n {
        return BigUint::default();
    }
    weyl_dimension(&DominantWeight::from_partition(p, n), n).expect("length matches")
}

/// All partitions of `total` with at most `max_len` parts, each part at most
/// `max_part`, in reverse lexicographic order.
pub fn partitions_bounded(total: u32, max_len: usize, max_part: u32) -> Vec<Partition> {
    fn rec(rem: u32, max_len: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for x in (1..=cap.min(rem)).rev() {
            cur.push(x);
            rec(rem - x, max_len, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, max_len, max_part, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `total`.
pub fn partitions_of(total: u32) -> Vec<Partition> {
    partitions_bounded(total, total as usize, total)
}

/// All partitions contained in `outer`.
pub fn subpartitions(outer: &Partition) -> Vec<Partition> {
    fn rec(outer: &[u32], i: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition(cur.clone()));
        if i == outer.len() {
            return;
        }
        for x in 1..=cap.min(outer[i]) {
            cur.push(x);
            rec(outer, i + 1, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&outer.0, 0, outer.part(0), &mut Vec::new(), &mut out);
    out
}
