//! Bott-Borel-Weil on partial flag varieties of GL(n), and the inversion
//! bounds built on top of it.
//!
//! A homogeneous bundle `S^{α_1}Q_1 ⊗ ... ⊗ S^{α_{k+1}}Q_{k+1}` is described by
//! a [`BlockedWeight`]: one weakly decreasing integer vector per tautological
//! quotient. Its cohomology is read off the shifted sequence `α - (1, 2, ..., n)`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::configs::Configs;
use crate::error::{Error, Result};
use crate::partitions::{parse_list, weyl_dimension, DominantWeight, Partition};

/// Highest weights on each tautological quotient block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct BlockedWeight {
    blocks: Vec<Vec<i64>>,
}

impl BlockedWeight {
    pub fn new(blocks: Vec<Vec<i64>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidWeight("no blocks".into()));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidWeight(format!("block {} is empty", i + 1)));
            }
            if b.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidWeight(format!(
                    "block {} {:?} is not weakly decreasing",
                    i + 1,
                    b
                )));
            }
        }
        Ok(BlockedWeight { blocks })
    }

    /// Each block `i` constant equal to `values[i]`.
    pub fn constant(ranks: &[usize], values: &[i64]) -> Result<Self> {
        if ranks.len() != values.len() {
            return Err(Error::LengthMismatch { expected: ranks.len(), found: values.len() });
        }
        BlockedWeight::new(ranks.iter().zip(values).map(|(&r, &v)| vec![v; r]).collect())
    }

    /// Blocks built from partitions padded to the given ranks.
    pub fn from_partitions(parts: &[Partition], ranks: &[usize]) -> Result<Self> {
        if parts.len() != ranks.len() {
            return Err(Error::LengthMismatch { expected: ranks.len(), found: parts.len() });
        }
        let mut blocks = Vec::with_capacity(parts.len());
        for (p, &r) in parts.iter().zip(ranks) {
            if p.len() > r {
                return Err(Error::InvalidWeight(format!("{p} does not fit a rank-{r} block")));
            }
            blocks.push(p.padded_i64(r));
        }
        BlockedWeight::new(blocks)
    }

    pub fn blocks(&self) -> &[Vec<i64>] {
        &self.blocks
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Ambient dimension `n`.
    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn concatenated(&self) -> Vec<i64> {
        self.blocks.concat()
    }

    /// Adds `values[i]` to every entry of block `i` (tensoring with a line bundle).
    pub fn twisted(&self, values: &[i64]) -> Result<Self> {
        if values.len() != self.blocks.len() {
            return Err(Error::LengthMismatch { expected: self.blocks.len(), found: values.len() });
        }
        Ok(BlockedWeight {
            blocks: self
                .blocks
                .iter()
                .zip(values)
                .map(|(b, &v)| b.iter().map(|x| x + v).collect())
                .collect(),
        })
    }

    /// The weight of the dual bundle: each block reversed and negated.
    pub fn dual(&self) -> Self {
        BlockedWeight {
            blocks: self.blocks.iter().map(|b| b.iter().rev().map(|x| -x).collect()).collect(),
        }
    }

    /// Entrywise sum of two weights on the same shape.
    pub fn plus(&self, other: &BlockedWeight) -> Result<Self> {
        if self.ranks() != other.ranks() {
            return Err(Error::InvalidWeight(format!(
                "rank mismatch {:?} vs {:?}",
                self.ranks(),
                other.ranks()
            )));
        }
        Ok(BlockedWeight {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        })
    }
}

impl TryFrom<Vec<Vec<i64>>> for BlockedWeight {
    type Error = Error;
    fn try_from(v: Vec<Vec<i64>>) -> Result<Self> {
        BlockedWeight::new(v)
    }
}

impl From<BlockedWeight> for Vec<Vec<i64>> {
    fn from(w: BlockedWeight) -> Self {
        w.blocks
    }
}

impl std::str::FromStr for BlockedWeight {
    type Err = Error;

    /// Parses bracketed blocks such as `[2,1],[0],[-3]`.
    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('[')
                .ok_or_else(|| Error::Parse { token: rest.to_string(), expected: "`[` opening a block" })?;
            let end = body
                .find(']')
                .ok_or_else(|| Error::Parse { token: rest.to_string(), expected: "`]` closing a block" })?;
            blocks.push(parse_list::<i64>(&body[..end])?);
            rest = body[end + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
                if rest.is_empty() {
                    return Err(Error::Parse { token: s.to_string(), expected: "a block after `,`" });
                }
            }
        }
        BlockedWeight::new(blocks)
    }
}

/// Dimension of the flag variety with quotient ranks `ranks`.
pub fn flag_dimension(ranks: &[usize]) -> usize {
    let mut dim = 0;
    for i in 0..ranks.len() {
        for j in i + 1..ranks.len() {
            dim += ranks[i] * ranks[j];
        }
    }
    dim
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CohomologyResult {
    /// Every cohomology group is zero.
    Vanishes,
    /// Cohomology is `S^weight V` in exactly one degree.
    NonZero {
        degree: usize,
        weight: DominantWeight,
        #[serde(with = "crate::bigdec")]
        dimension: BigUint,
    },
}

impl CohomologyResult {
    pub fn degree(&self) -> Option<usize> {
        match self {
            CohomologyResult::Vanishes => None,
            CohomologyResult::NonZero { degree, .. } => Some(*degree),
        }
    }

    pub fn dimension(&self) -> BigUint {
        match self {
            CohomologyResult::Vanishes => BigUint::default(),
            CohomologyResult::NonZero { dimension, .. } => dimension.clone(),
        }
    }

    /// True when the cohomology in degree `q` is zero.
    pub fn vanishes_in(&self, q: usize) -> bool {
        self.degree() != Some(q)
    }
}

/// `w - (1, 2, ..., n)` on the concatenated blocks.
pub fn rho_shift(w: &BlockedWeight) -> Vec<i64> {
    w.concatenated().into_iter().enumerate().map(|(i, x)| x - (i as i64 + 1)).collect()
}

/// Number of pairs `i < j` with `s_i < s_j`.
pub fn inversion_count(s: &[i64]) -> u64 {
    let mut count = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] < s[j] {
                count += 1;
            }
        }
    }
    count
}

fn has_repeat(s: &[i64]) -> bool {
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).any(|w| w[0] == w[1])
}

pub fn bbw_cohomology(w: &BlockedWeight) -> CohomologyResult {
    let shifted = rho_shift(w);
    if has_repeat(&shifted) {
        return CohomologyResult::Vanishes;
    }
    let degree = inversion_count(&shifted) as usize;
    let mut sorted = shifted;
    sorted.sort_by(|a, b| b.cmp(a));
    let n = sorted.len();
    let entries: Vec<i64> = sorted.into_iter().enumerate().map(|(i, x)| x + i as i64 + 1).collect();
    let weight = DominantWeight::new(entries).expect("sorted shift is dominant");
    let dimension = weyl_dimension(&weight, n).expect("length matches");
    CohomologyResult::NonZero { degree, weight, dimension }
}

/// Exact inversion count next to the block-configuration bound for
/// `S^{α_1}Q_1 ⊗ ... ⊗ S^{α_{k+1}}Q_{k+1} ⊗ L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionBoundReport {
    /// `None` when the shifted sequence repeats and all cohomology vanishes.
    pub exact_inversions: Option<u64>,
    /// Maximum of the bound expression over all configurations.
    pub bound: i64,
    /// A configuration `(s_2, ..., s_{k+1})` attaining `bound`.
    pub witness_config: Vec<usize>,
}

/// Value of `Σ_p Σ_{i ≤ s_p} b_{pi} - l Σ s_p - Σ s_p²` at one configuration.
pub fn configuration_value(parts: &[Partition], config: &[usize], l: i64) -> i64 {
    let mut v = 0i64;
    for (p, &s) in parts.iter().zip(config) {
        let s = s as i64;
        v += p.leading_sum(s as usize) as i64 - l * s - s * s;
    }
    v
}

fn max_configuration(parts: &[Partition], ranks: &[usize], l: i64) -> (i64, Vec<usize>) {
    let mut best = (i64::MIN, Vec::new());
    for config in Configs::new(ranks) {
        let v = configuration_value(parts, &config, l);
        if v > best.0 {
            best = (v, config);
        }
    }
    best
}

/// `alpha` holds partitions on every block, `coeffs` the line bundle
/// `(a_1, ..., a_k)` with gaps `a_i - a_{i+1} >= l` and `a_k >= l > 0`.
pub fn inversion_bound(alpha: &BlockedWeight, coeffs: &[i64], l: u32) -> Result<InversionBoundReport> {
    let k = alpha.blocks().len() - 1;
    if coeffs.len() != k {
        return Err(Error::LengthMismatch { expected: k, found: coeffs.len() });
    }
    if l == 0 {
        return Err(Error::Precondition("l must be positive".into()));
    }
    let l = i64::from(l);
    for i in 0..k {
        let next = if i + 1 < k { coeffs[i + 1] } else { 0 };
        if coeffs[i] - next < l {
            return Err(Error::Precondition(format!(
                "gap a_{} - a_{} = {} is below l = {}",
                i + 1,
                i + 2,
                coeffs[i] - next,
                l
            )));
        }
    }
    let mut parts = Vec::with_capacity(k + 1);
    for b in alpha.blocks() {
        if b.iter().any(|&x| x < 0) {
            return Err(Error::InvalidWeight(format!("block {b:?} is not a partition")));
        }
        parts.push(Partition::new(b.iter().map(|&x| x as u32).collect())?);
    }
    let mut shift = coeffs.to_vec();
    shift.push(0);
    let twisted = alpha.twisted(&shift)?;
    let shifted = rho_shift(&twisted);
    let exact_inversions = if has_repeat(&shifted) { None } else { Some(inversion_count(&shifted)) };
    let ranks = alpha.ranks();
    let (bound, witness_config) = max_configuration(&parts[1..], &ranks[1..], l);
    Ok(InversionBoundReport { exact_inversions, bound, witness_config })
}

/// The largest degree that can carry cohomology of
/// `S^ρF ⊗ S^{β_1}Q_1 ⊗ ... ⊗ S^{β_{k+1}}Q_{k+1} ⊗ L` for any nef Schur power
/// `S^ρF`, where `L` is `l` times ample plus nef. `beta` and `ranks` cover
/// blocks `2..=k+1`. Cohomology vanishes in every degree above the result.
pub fn twisted_vanishing_threshold(beta: &[Partition], ranks: &[usize], l: u32) -> Result<u64> {
    if beta.len() != ranks.len() {
        return Err(Error::LengthMismatch { expected: ranks.len(), found: beta.len() });
    }
    if l == 0 {
        return Err(Error::Precondition("l must be positive".into()));
    }
    if let Some((b, r)) = beta.iter().zip(ranks).find(|(b, r)| b.len() > **r) {
        return Err(Error::InvalidWeight(format!("{b} does not fit a rank-{r} block")));
    }
    let (best, _) = max_configuration(beta, ranks, i64::from(l));
    Ok(best.max(0) as u64)
}
