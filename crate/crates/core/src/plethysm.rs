//! Schur decompositions of `∧^j(∧²V)` and `∧^j(S²V)`, and the bounds on
//! leading partial sums of their summands.

use serde::{Deserialize, Serialize};

use crate::partitions::{FrobeniusForm, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlethysmKind {
    /// `∧^j(∧²V)`
    Wedge2,
    /// `∧^j(S²V)`
    Sym2,
}

/// Summands of `∧^j(∧²V)` for `dim V` unbounded: the shapes `(μ | μ+1)` of
/// weight `2j`. Each arm `μ_i` contributes `μ_i + 1` to `j`, so these are the
/// partitions of `j` into distinct parts.
pub fn wedge_of_wedge2_all(j: u32) -> Vec<Partition> {
    fn rec(rem: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for x in (1..=cap.min(rem)).rev() {
            cur.push(x);
            rec(rem - x, x - 1, cur, out);
            cur.pop();
        }
    }
    let mut distinct = Vec::new();
    rec(j, j, &mut Vec::new(), &mut distinct);
    let mut out: Vec<Partition> = distinct
        .into_iter()
        .map(|parts| {
            let arms: Vec<u32> = parts.iter().map(|x| x - 1).collect();
            let legs: Vec<u32> = parts.clone();
            Partition::from_frobenius(&FrobeniusForm::new(arms, legs).expect("strict by construction"))
        })
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Summands of `∧^j(∧²V)` with `dim V = n`.
pub fn wedge_of_wedge2(j: u32, n: usize) -> Vec<Partition> {
    wedge_of_wedge2_all(j).into_iter().filter(|a| a.len() <= n).collect()
}

/// Summands of `∧^j(S²V)` for `dim V` unbounded: conjugates of the `∧²` shapes.
pub fn wedge_of_sym2_all(j: u32) -> Vec<Partition> {
    let mut out: Vec<Partition> = wedge_of_wedge2_all(j).iter().map(Partition::conjugate).collect();
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Summands of `∧^j(S²V)` with `dim V = n`.
pub fn wedge_of_sym2(j: u32, n: usize) -> Vec<Partition> {
    wedge_of_sym2_all(j).into_iter().filter(|a| a.len() <= n).collect()
}

pub fn plethysm(kind: PlethysmKind, j: u32, n: usize) -> Vec<Partition> {
    match kind {
        PlethysmKind::Wedge2 => wedge_of_wedge2(j, n),
        PlethysmKind::Sym2 => wedge_of_sym2(j, n),
    }
}

/// Upper bound on `a_1 + ... + a_s` for a summand `S^α` of the plethysm:
/// `j + s(s-1)/2` for `∧²`, `j + s(s+1)/2` for `S²`.
pub fn leading_sum_bound(kind: PlethysmKind, j: u32, s: u32) -> i64 {
    let (j, s) = (i64::from(j), i64::from(s));
    match kind {
        PlethysmKind::Wedge2 => j + s * (s - 1) / 2,
        PlethysmKind::Sym2 => j + s * (s + 1) / 2,
    }
}

/// The same bound, valid for the sum of any `s` entries drawn from a tuple
/// `(ρ_2, ..., ρ_{k+1})` grading a summand of `∧^j W` along a filtration.
pub fn graded_entry_bound(kind: PlethysmKind, j: u32, s: u32) -> i64 {
    leading_sum_bound(kind, j, s)
}
