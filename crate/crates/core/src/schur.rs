//! Littlewood-Richardson coefficients, tensor products of Schur functors and
//! Schur characters.
//!
//! LR coefficients are counted by enumerating LR skew tableaux. The Schur
//! character (a sum over semistandard tableaux) is kept as an independent
//! oracle: the two never share code beyond the [`Partition`] type.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// One irreducible summand `S^shape` with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SchurSummand {
    pub shape: Partition,
    #[serde(with = "crate::bigdec")]
    pub multiplicity: BigUint,
}

/// A summand `S^{ρ_1} ⊗ ... ⊗ S^{ρ_m}` of a bundle graded along blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TupleSummand {
    pub shapes: Vec<Partition>,
    #[serde(with = "crate::bigdec")]
    pub multiplicity: BigUint,
}

type LrKey = (Partition, Partition, Partition);

fn lr_cache() -> &'static RwLock<HashMap<LrKey, u64>> {
    static CACHE: OnceLock<RwLock<HashMap<LrKey, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Multiplicity of `S^λ` in `S^μ ⊗ S^ν`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.weight() != mu.weight() + nu.weight() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    if mu.is_empty() || nu.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), mu.clone(), nu.clone());
    if let Some(&c) = lr_cache().read().expect("lr cache poisoned").get(&key) {
        return c;
    }
    let c = count_lr_tableaux(lambda, mu, nu);
    lr_cache().write().expect("lr cache poisoned").insert(key, c);
    c
}

/// Counts LR tableaux of shape λ/μ and content ν: semistandard fillings
/// whose reverse reading word (rows top to bottom, each right to left) is a
/// lattice word.
fn count_lr_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    let rows = lambda.len();
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|r| (mu.part(r) as usize..lambda.part(r) as usize).rev().map(move |c| (r, c)))
        .collect();
    let mut filling: Vec<Vec<u8>> = (0..rows).map(|r| vec![0u8; lambda.part(r) as usize]).collect();
    let content: Vec<u32> = nu.parts().to_vec();
    let mut used = vec![0u32; content.len() + 1];

    struct Ctx<'a> {
        cells: &'a [(usize, usize)],
        lambda: &'a Partition,
        mu: &'a Partition,
        content: &'a [u32],
    }

    fn rec(ctx: &Ctx<'_>, idx: usize, filling: &mut [Vec<u8>], used: &mut [u32]) -> u64 {
        if idx == ctx.cells.len() {
            return 1;
        }
        let (r, c) = ctx.cells[idx];
        let mut hi = ctx.content.len();
        if c + 1 < ctx.lambda.part(r) as usize {
            hi = hi.min(filling[r][c + 1] as usize);
        }
        let mut lo = 1usize;
        if r > 0 && c >= ctx.mu.part(r - 1) as usize {
            lo = filling[r - 1][c] as usize + 1;
        }
        let mut total = 0;
        for v in lo..=hi {
            if used[v] >= ctx.content[v - 1] {
                continue;
            }
            if v > 1 && used[v] >= used[v - 1] {
                continue;
            }
            used[v] += 1;
            filling[r][c] = v as u8;
            total += rec(ctx, idx + 1, filling, used);
            used[v] -= 1;
        }
        filling[r][c] = 0;
        total
    }

    let ctx = Ctx { cells: &cells, lambda, mu, content: &content };
    rec(&ctx, 0, &mut filling, &mut used)
}

/// Decomposes `S^μ ⊗ S^ν`, keeping summands with at most `max_length` parts.
/// Sorted by shape, largest first.
pub fn tensor_decompose(mu: &Partition, nu: &Partition, max_length: usize) -> Vec<SchurSummand> {
    if mu.is_empty() || nu.is_empty() {
        let shape = if mu.is_empty() { nu.clone() } else { mu.clone() };
        return if shape.len() <= max_length {
            vec![SchurSummand { shape, multiplicity: BigUint::one() }]
        } else {
            Vec::new()
        };
    }
    let total = mu.weight() + nu.weight();
    let max_len = max_length.min(mu.len() + nu.len());
    let mut out = Vec::new();
    for lambda in candidate_shapes(mu, nu, total, max_len) {
        let c = lr_coefficient(&lambda, mu, nu);
        if c > 0 {
            out.push(SchurSummand { shape: lambda, multiplicity: BigUint::from(c) });
        }
    }
    out.sort_by(|a, b| b.shape.cmp(&a.shape));
    out
}

/// Partitions λ ⊇ μ ∪ ν of the given weight with λ_i ≤ μ_i + ν_1.
fn candidate_shapes(mu: &Partition, nu: &Partition, total: u32, max_len: usize) -> Vec<Partition> {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        mu: &Partition,
        nu: &Partition,
        i: usize,
        rem: u32,
        max_len: usize,
        cap: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        let lo = mu.part(i).max(nu.part(i));
        if rem == 0 {
            if lo == 0 {
                out.push(Partition::new(cur.clone()).expect("decreasing by construction"));
            }
            return;
        }
        if i == max_len {
            return;
        }
        let hi = cap.min(mu.part(i) + nu.part(0)).min(rem);
        for x in (lo.max(1)..=hi).rev() {
            cur.push(x);
            rec(mu, nu, i + 1, rem - x, max_len, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(mu, nu, 0, total, max_len, total, &mut Vec::new(), &mut out);
    out
}

/// A polynomial in `vars` variables with natural coefficients, keyed by
/// exponent vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharacterPolynomial {
    pub vars: usize,
    pub terms: BTreeMap<Vec<u32>, BigUint>,
}

impl CharacterPolynomial {
    pub fn zero(vars: usize) -> Self {
        CharacterPolynomial { vars, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigUint {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Sum of all coefficients, i.e. the value at (1,...,1).
    pub fn total(&self) -> BigUint {
        self.terms.values().sum()
    }

    pub fn mul(&self, other: &CharacterPolynomial) -> CharacterPolynomial {
        assert_eq!(self.vars, other.vars);
        let mut out = CharacterPolynomial::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *out.terms.entry(e).or_default() += ca * cb;
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &CharacterPolynomial, scale: &BigUint) {
        assert_eq!(self.vars, other.vars);
        if scale.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            *self.terms.entry(e.clone()).or_default() += c * scale;
        }
    }

    /// Invariance under swapping adjacent variables (which generate S_m).
    pub fn is_symmetric(&self) -> bool {
        (0..self.vars.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(e, c)| {
                let mut f = e.clone();
                f.swap(i, i + 1);
                self.terms.get(&f) == Some(c)
            })
        })
    }
}

/// The Schur polynomial `s_λ(x_1, ..., x_m)` as a sum over semistandard
/// tableaux with entries in `1..=m`.
pub fn schur_character(lambda: &Partition, m: usize) -> CharacterPolynomial {
    let mut poly = CharacterPolynomial::zero(m);
    if m == 0 || lambda.len() > m {
        return poly;
    }
    let shape: Vec<usize> = lambda.parts().iter().map(|&x| x as usize).collect();
    let mut tab: Vec<Vec<usize>> = shape.iter().map(|&w| vec![0; w]).collect();
    let mut exps = vec![0u32; m];

    fn rec(
        shape: &[usize],
        r: usize,
        c: usize,
        m: usize,
        tab: &mut [Vec<usize>],
        exps: &mut [u32],
        poly: &mut CharacterPolynomial,
    ) {
        if r == shape.len() {
            *poly.terms.entry(exps.to_vec()).or_default() += 1u32;
            return;
        }
        let (nr, nc) = if c + 1 == shape[r] { (r + 1, 0) } else { (r, c + 1) };
        let left = if c > 0 { tab[r][c - 1] } else { 1 };
        let above = if r > 0 { tab[r - 1][c] + 1 } else { 1 };
        for v in left.max(above)..=m {
            tab[r][c] = v;
            exps[v - 1] += 1;
            rec(shape, nr, nc, m, tab, exps, poly);
            exps[v - 1] -= 1;
        }
    }

    if shape.is_empty() {
        poly.terms.insert(vec![0; m], BigUint::one());
        return poly;
    }
    rec(&shape, 0, 0, m, &mut tab, &mut exps, &mut poly);
    poly
}

/// Graded pieces of `S^α E` for a bundle `E` filtered with successive
/// quotients of the given ranks: every tuple `(ρ_1, ..., ρ_m)` with
/// `ℓ(ρ_i) ≤ ranks[i]` and the multiplicity of `S^α` in `⊗ S^{ρ_i}`.
///
/// The product is expanded left to right, keeping only intermediate shapes
/// contained in α.
pub fn filtration_quotients(alpha: &Partition, ranks: &[usize]) -> Result<Vec<TupleSummand>> {
    let total_rank: usize = ranks.iter().sum();
    if alpha.len() > total_rank {
        return Err(Error::Precondition(format!(
            "partition {alpha} has more than {total_rank} parts"
        )));
    }
    let mut out = Vec::new();
    let mut start = BTreeMap::new();
    start.insert(Partition::empty(), BigUint::one());
    expand_quotients(alpha, ranks, 0, alpha.weight(), &start, &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

fn expand_quotients(
    alpha: &Partition,
    ranks: &[usize],
    block: usize,
    remaining: u32,
    partial: &BTreeMap<Partition, BigUint>,
    chosen: &mut Vec<Partition>,
    out: &mut Vec<TupleSummand>,
) {
    let last = block + 1 == ranks.len();
    for size in 0..=remaining {
        if last && size != remaining {
            continue;
        }
        for rho in crate::partitions::partitions_bounded(size, ranks[block], alpha.part(0)) {
            if !alpha.contains(&rho) {
                continue;
            }
            let mut next: BTreeMap<Partition, BigUint> = BTreeMap::new();
            for (gamma, mult) in partial {
                for s in tensor_decompose(gamma, &rho, alpha.len()) {
                    if alpha.contains(&s.shape) {
                        *next.entry(s.shape).or_default() += mult * &s.multiplicity;
                    }
                }
            }
            if next.is_empty() {
                continue;
            }
            chosen.push(rho);
            if last {
                if let Some(m) = next.get(alpha) {
                    out.push(TupleSummand { shapes: chosen.clone(), multiplicity: m.clone() });
                }
            } else {
                expand_quotients(alpha, ranks, block + 1, remaining - size, &next, chosen, out);
            }
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_of;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn summands(v: &[(&[u32], u32)]) -> Vec<SchurSummand> {
        let mut out: Vec<_> = v
            .iter()
            .map(|(s, m)| SchurSummand { shape: p(s), multiplicity: BigUint::from(*m) })
            .collect();
        out.sort_by(|a, b| b.shape.cmp(&a.shape));
        out
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2]), &p(&[1])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[1]), &p(&[1])), 0);
        assert_eq!(lr_coefficient(&p(&[2, 2]), &p(&[2]), &p(&[1])), 0);
        // the classical multiplicity-two coefficient
        assert_eq!(lr_coefficient(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor_decompose(&p(&[1]), &p(&[1]), 4), summands(&[(&[2], 1), (&[1, 1], 1)]));
        let lam = p(&[3, 1, 1]);
        assert_eq!(tensor_decompose(&Partition::empty(), &lam, 4), summands(&[(&[3, 1, 1], 1)]));
        assert_eq!(
            tensor_decompose(&p(&[2, 1]), &p(&[1]), 4),
            summands(&[(&[3, 1], 1), (&[2, 2], 1), (&[2, 1, 1], 1)])
        );
        assert_eq!(tensor_decompose(&p(&[2, 1]), &p(&[1]), 2), summands(&[(&[3, 1], 1), (&[2, 2], 1)]));
    }

    #[test]
    fn character_examples() {
        let c = schur_character(&p(&[1]), 2);
        assert_eq!(c.terms.len(), 2);
        assert_eq!(c.coefficient(&[1, 0]), BigUint::one());
        assert_eq!(c.coefficient(&[0, 1]), BigUint::one());
        let c = schur_character(&p(&[1, 1]), 2);
        assert_eq!(c.terms.len(), 1);
        assert_eq!(c.coefficient(&[1, 1]), BigUint::one());
        let c = schur_character(&p(&[2, 1]), 2);
        assert_eq!(c.terms.len(), 2);
        assert_eq!(c.coefficient(&[2, 1]), BigUint::one());
        assert_eq!(c.coefficient(&[1, 2]), BigUint::one());
        assert!(schur_character(&p(&[1, 1, 1]), 2).is_zero());
    }

    #[test]
    fn characters_are_symmetric() {
        for m in 1..=4 {
            for lam in partitions_of(5) {
                assert!(schur_character(&lam, m).is_symmetric());
            }
        }
    }

    #[test]
    fn filtration_examples() {
        let tuple = |v: &[&[u32]], m: u32| TupleSummand {
            shapes: v.iter().map(|s| p(s)).collect(),
            multiplicity: BigUint::from(m),
        };
        let mut want = vec![tuple(&[&[1], &[]], 1), tuple(&[&[], &[1]], 1)];
        want.sort();
        assert_eq!(filtration_quotients(&p(&[1]), &[1, 1]).unwrap(), want);

        assert_eq!(filtration_quotients(&p(&[1, 1]), &[1, 1]).unwrap(), vec![tuple(&[&[1], &[1]], 1)]);

        let mut want = vec![tuple(&[&[2], &[]], 1), tuple(&[&[1], &[1]], 1), tuple(&[&[], &[2]], 1)];
        want.sort();
        assert_eq!(filtration_quotients(&p(&[2]), &[1, 1]).unwrap(), want);
    }

    #[test]
    fn filtration_rejects_long_partition() {
        assert!(filtration_quotients(&p(&[1, 1, 1]), &[1, 1]).is_err());
    }
}
