//! Flag shapes, line bundles, and the catalog of type B/C/D/G2 varieties
//! realized as zero loci inside type A flag varieties.
//!
//! Conventions: `Fl(n_1, ..., n_k; n)` parametrizes flags `V_k ⊂ ... ⊂ V_1 ⊂ C^n`
//! with `dim V_i = n_i`. The quotients `Q_i = Σ_{i-1}/Σ_i` have ranks
//! `r_1 = n - n_1, r_i = n_{i-1} - n_i, r_{k+1} = n_k`, and line bundles are
//! written in the basis `L_i = det Q_i`, `1 <= i <= k`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bott::{bbw_cohomology, flag_dimension, BlockedWeight, CohomologyResult};
use crate::error::{Error, Result};
use crate::par::{self, Strategy};
use crate::partitions::{parse_list, Partition};
use crate::plethysm::{plethysm, PlethysmKind};
use crate::schur::tensor_decompose;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlagShape {
    n: usize,
    dims: Vec<usize>,
}

impl FlagShape {
    pub fn new(dims: Vec<usize>, n: usize) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidShape("at least one subspace dimension is required".into()));
        }
        if dims[0] >= n {
            return Err(Error::InvalidShape(format!("n_1 = {} must be below n = {n}", dims[0])));
        }
        if dims.windows(2).any(|w| w[0] <= w[1]) || dims.last() == Some(&0) {
            return Err(Error::InvalidShape(format!("dimensions {dims:?} must be strictly decreasing and positive")));
        }
        Ok(FlagShape { n, dims })
    }

    /// The Grassmannian `Gr(m; n)` of `m`-dimensional subspaces.
    pub fn grassmannian(m: usize, n: usize) -> Result<Self> {
        FlagShape::new(vec![m], n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of subspaces in the flag; the Picard rank.
    pub fn k(&self) -> usize {
        self.dims.len()
    }

    pub fn quotient_ranks(&self) -> Vec<usize> {
        let mut ranks = Vec::with_capacity(self.k() + 1);
        let mut prev = self.n;
        for &d in &self.dims {
            ranks.push(prev - d);
            prev = d;
        }
        ranks.push(prev);
        ranks
    }

    pub fn dimension(&self) -> usize {
        flag_dimension(&self.quotient_ranks())
    }

    /// The canonical bundle as a constant-block weight: block `i` carries
    /// `Σ_{t<i} r_t - Σ_{t>i} r_t`.
    pub fn canonical_weight(&self) -> BlockedWeight {
        let ranks = self.quotient_ranks();
        let values: Vec<i64> = (0..ranks.len())
            .map(|i| {
                let before: usize = ranks[..i].iter().sum();
                let after: usize = ranks[i + 1..].iter().sum();
                before as i64 - after as i64
            })
            .collect();
        BlockedWeight::constant(&ranks, &values).expect("ranks are positive")
    }

    fn body(&self) -> String {
        let dims: Vec<String> = self.dims.iter().map(usize::to_string).collect();
        format!("({};{})", dims.join(","), self.n)
    }

    fn parse_body(body: &str) -> Result<Self> {
        let inner = body
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse { token: body.to_string(), expected: "(n1,...,nk; n)" })?;
        let (dims, n) = inner
            .split_once(';')
            .ok_or_else(|| Error::Parse { token: inner.to_string(), expected: "`;` before n" })?;
        let dims = parse_list::<usize>(dims)?;
        let n = n
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse { token: n.trim().to_string(), expected: "ambient dimension" })?;
        FlagShape::new(dims, n)
    }
}

/// `canonical_weight` as a free function.
pub fn canonical_weight(shape: &FlagShape) -> BlockedWeight {
    shape.canonical_weight()
}

pub fn quotient_ranks(shape: &FlagShape) -> Vec<usize> {
    shape.quotient_ranks()
}

impl fmt::Display for FlagShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fl{}", self.body())
    }
}

impl FromStr for FlagShape {
    type Err = Error;

    /// Parses `fl(n1,...,nk; n)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let body = t
            .strip_prefix("fl")
            .ok_or_else(|| Error::Parse { token: t.to_string(), expected: "fl(n1,...,nk; n)" })?;
        FlagShape::parse_body(body)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Positivity {
    Ample,
    NefNotAmple,
    NotNef,
}

/// `L = L_1^{a_1} ⊗ ... ⊗ L_k^{a_k}` in the `det Q_i` basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LineBundleCoeffs(pub Vec<i64>);

impl LineBundleCoeffs {
    pub fn new(a: Vec<i64>) -> Self {
        LineBundleCoeffs(a)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// Coefficients followed by `a_{k+1} = 0`.
    fn extended(&self) -> Vec<i64> {
        let mut v = self.0.clone();
        v.push(0);
        v
    }

    pub fn positivity(&self) -> Positivity {
        let ext = self.extended();
        if ext.windows(2).all(|w| w[0] > w[1]) {
            Positivity::Ample
        } else if ext.windows(2).all(|w| w[0] >= w[1]) {
            Positivity::NefNotAmple
        } else {
            Positivity::NotNef
        }
    }

    pub fn is_nef(&self) -> bool {
        self.positivity() != Positivity::NotNef
    }

    /// The largest `l` with `L = H^l ⊗ M`, `H` ample and `M` nef: the minimum
    /// of the consecutive gaps and `a_k`.
    pub fn decompose_ample(&self) -> Result<i64> {
        if self.positivity() != Positivity::Ample {
            return Err(Error::NotAmple(self.0.clone()));
        }
        Ok(self.extended().windows(2).map(|w| w[0] - w[1]).min().expect("k >= 1"))
    }

    /// Weight of `L` on a flag variety: block `i` constant `a_i`, last block 0.
    pub fn weight(&self, shape: &FlagShape) -> Result<BlockedWeight> {
        self.check_shape(shape)?;
        BlockedWeight::constant(&shape.quotient_ranks(), &self.extended())
    }

    fn check_shape(&self, shape: &FlagShape) -> Result<()> {
        if self.k() != shape.k() {
            return Err(Error::LengthMismatch { expected: shape.k(), found: self.k() });
        }
        Ok(())
    }
}

impl fmt::Display for LineBundleCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub fn positivity(l: &LineBundleCoeffs) -> Positivity {
    l.positivity()
}

pub fn decompose_ample(l: &LineBundleCoeffs) -> Result<i64> {
    l.decompose_ample()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    TypeA,
    /// Symplectic flags `SFl`.
    TypeC,
    /// Orthogonal flags in odd dimension.
    TypeB,
    /// Orthogonal flags in even dimension with `n_1 <= n/2 - 2`.
    TypeDSub,
    /// Even orthogonal flags through a maximal isotropic subspace.
    TypeDSpinor,
    /// Even orthogonal flags with `n_1 = n/2 - 1`.
    TypeDMixed,
    /// The five-dimensional quadric in `P^6`.
    G2Q,
    /// The G2 Grassmannian inside `Gr(2, 7)`.
    G2X,
    /// `P_X(Σ)` inside `Fl(2, 1; 7)`.
    G2PXSigma,
}

/// The bundle `W` whose dual has the variety as a zero locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WKind {
    None,
    /// `∧²Σ_1`
    Wedge2Sub,
    /// `S²Σ_1`
    Sym2Sub,
    /// `Q_1 ⊗ L_1^{-1}`
    G2Twist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PicardIndex {
    One,
    Two,
    CorankOneQuotient,
}

/// How the Picard lattice of the ambient flag variety restricts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardRestriction {
    pub injective: bool,
    pub index: PicardIndex,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarietySpec {
    family: Family,
    shape: FlagShape,
    w_kind: WKind,
}

impl VarietySpec {
    pub fn new(family: Family, shape: FlagShape) -> Result<Self> {
        let n = shape.n();
        let n1 = shape.dims()[0];
        let bad = |why: String| Err(Error::InvalidVariety(format!("{family:?} on {shape}: {why}")));
        let w_kind = match family {
            Family::TypeA => WKind::None,
            Family::TypeC => {
                if !n.is_multiple_of(2) || n < 6 {
                    return bad("symplectic space must have even dimension >= 6".into());
                }
                if n1 > n / 2 {
                    return bad(format!("isotropic subspaces have dimension <= {}", n / 2));
                }
                WKind::Wedge2Sub
            }
            Family::TypeB => {
                if n.is_multiple_of(2) || n < 5 {
                    return bad("odd orthogonal space must have odd dimension >= 5".into());
                }
                if n1 > n / 2 {
                    return bad(format!("isotropic subspaces have dimension <= {}", n / 2));
                }
                WKind::Sym2Sub
            }
            Family::TypeDSub | Family::TypeDSpinor | Family::TypeDMixed => {
                if !n.is_multiple_of(2) || n < 8 {
                    return bad("even orthogonal space must have even dimension >= 8".into());
                }
                let m = n / 2;
                let ok = match family {
                    Family::TypeDSub => n1 + 2 <= m,
                    Family::TypeDSpinor => n1 == m,
                    _ => n1 + 1 == m,
                };
                if !ok {
                    return bad(format!("n_1 = {n1} does not match this family for n = {n}"));
                }
                WKind::Sym2Sub
            }
            Family::G2Q | Family::G2X | Family::G2PXSigma => {
                let want: &[usize] = match family {
                    Family::G2Q => &[1],
                    Family::G2X => &[2],
                    _ => &[2, 1],
                };
                if n != 7 || shape.dims() != want {
                    return bad(format!("expected fl({want:?}; 7)"));
                }
                if family == Family::G2Q {
                    WKind::Sym2Sub
                } else {
                    WKind::G2Twist
                }
            }
        };
        Ok(VarietySpec { family, shape, w_kind })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn shape(&self) -> &FlagShape {
        &self.shape
    }

    pub fn w_kind(&self) -> WKind {
        self.w_kind
    }

    /// `n_1`, the rank of `Σ_1`.
    pub fn n1(&self) -> usize {
        self.shape.dims()[0]
    }

    pub fn rank_w(&self) -> Result<usize> {
        let n1 = self.n1();
        match self.w_kind {
            WKind::None => Err(Error::InvalidVariety(format!("{self} has no embedding bundle"))),
            WKind::Wedge2Sub => Ok(n1 * (n1 - 1) / 2),
            WKind::Sym2Sub => Ok(n1 * (n1 + 1) / 2),
            WKind::G2Twist => Ok(5),
        }
    }

    pub fn picard_restriction(&self) -> PicardRestriction {
        let index = match self.family {
            Family::TypeB if 2 * self.n1() + 1 == self.shape.n() => PicardIndex::Two,
            Family::TypeDSpinor => PicardIndex::Two,
            Family::TypeDMixed => PicardIndex::CorankOneQuotient,
            _ => PicardIndex::One,
        };
        PicardRestriction { injective: true, index }
    }

    /// Parses line-bundle coefficients given in the ambient `det Q_i` basis.
    /// Fractional coefficients name classes outside the image of restriction.
    pub fn parse_line_bundle(&self, s: &str) -> Result<LineBundleCoeffs> {
        let vals = parse_list::<String>(s)?;
        let mut coeffs = Vec::with_capacity(vals.len());
        for tok in vals {
            let q: Ratio<i64> = tok
                .trim()
                .parse()
                .map_err(|_| Error::Parse { token: tok.clone(), expected: "integer coefficient" })?;
            if !q.is_integer() {
                if self.picard_restriction().index == PicardIndex::One {
                    return Err(Error::Parse { token: tok, expected: "integer coefficient" });
                }
                return Err(Error::NotPullback(tok));
            }
            coeffs.push(q.to_integer());
        }
        if coeffs.len() != self.shape.k() {
            return Err(Error::LengthMismatch { expected: self.shape.k(), found: coeffs.len() });
        }
        Ok(LineBundleCoeffs(coeffs))
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::TypeA => write!(f, "fl{}", self.shape.body()),
            Family::TypeC => write!(f, "sfl{}", self.shape.body()),
            Family::TypeB | Family::TypeDSub | Family::TypeDSpinor | Family::TypeDMixed => {
                write!(f, "ofl{}", self.shape.body())
            }
            Family::G2Q => write!(f, "g2q"),
            Family::G2X => write!(f, "g2x"),
            Family::G2PXSigma => write!(f, "g2p"),
        }
    }
}

impl FromStr for VarietySpec {
    type Err = Error;

    /// `fl(...)`, `sfl(...)`, `ofl(...)`, `g2q`, `g2x` or `g2p`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let g2 = |family, dims: Vec<usize>| VarietySpec::new(family, FlagShape::new(dims, 7)?);
        match t {
            "g2q" => return g2(Family::G2Q, vec![1]),
            "g2x" => return g2(Family::G2X, vec![2]),
            "g2p" => return g2(Family::G2PXSigma, vec![2, 1]),
            _ => {}
        }
        if let Some(body) = t.strip_prefix("sfl") {
            return VarietySpec::new(Family::TypeC, FlagShape::parse_body(body)?);
        }
        if let Some(body) = t.strip_prefix("ofl") {
            let shape = FlagShape::parse_body(body)?;
            let (n, n1) = (shape.n(), shape.dims()[0]);
            let family = if n % 2 == 1 {
                Family::TypeB
            } else if n1 == n / 2 {
                Family::TypeDSpinor
            } else if n1 + 1 == n / 2 {
                Family::TypeDMixed
            } else {
                Family::TypeDSub
            };
            return VarietySpec::new(family, shape);
        }
        if let Some(body) = t.strip_prefix("fl") {
            return VarietySpec::new(Family::TypeA, FlagShape::parse_body(body)?);
        }
        Err(Error::Parse { token: t.to_string(), expected: "fl(..), sfl(..), ofl(..), g2x, g2q or g2p" })
    }
}

/// Every B, C, D and G2 catalog entry with ambient dimension at most `max_n`.
pub fn catalog(max_n: usize) -> Vec<VarietySpec> {
    let mut out = Vec::new();
    for n in 5..=max_n {
        for mask in 1u32..(1 << (n / 2)) {
            let dims: Vec<usize> = (1..=n / 2).rev().filter(|d| mask & (1 << (d - 1)) != 0).collect();
            let Ok(shape) = FlagShape::new(dims, n) else { continue };
            for family in [
                Family::TypeC,
                Family::TypeB,
                Family::TypeDSub,
                Family::TypeDSpinor,
                Family::TypeDMixed,
            ] {
                if let Ok(spec) = VarietySpec::new(family, shape.clone()) {
                    out.push(spec);
                }
            }
        }
    }
    if max_n >= 7 {
        for name in ["g2q", "g2x", "g2p"] {
            out.push(name.parse().expect("fixed G2 specs parse"));
        }
    }
    out
}

/// Which tautological bundle a Koszul term is a Schur power of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KoszulBundle {
    /// `S^shape Σ_1`
    Sub,
    /// `S^shape Q_1`
    FirstQuotient,
}

/// One irreducible piece of `∧^j W`: `S^shape(bundle) ⊗ L_1^{plucker_twist}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KoszulTerm {
    pub shape: Partition,
    pub bundle: KoszulBundle,
    pub plucker_twist: i64,
    #[serde(with = "crate::bigdec")]
    pub multiplicity: BigUint,
}

/// Irreducible pieces of `∧^j W` for the embedding bundle `W` of `spec`.
pub fn koszul_terms(spec: &VarietySpec, j: usize) -> Result<Vec<KoszulTerm>> {
    let rank = spec.rank_w()?;
    if j > rank {
        return Err(Error::OutOfRange { index: j, max: rank });
    }
    let n1 = spec.n1();
    let sub = |shapes: Vec<Partition>| {
        shapes
            .into_iter()
            .map(|shape| KoszulTerm {
                shape,
                bundle: KoszulBundle::Sub,
                plucker_twist: 0,
                multiplicity: BigUint::one(),
            })
            .collect()
    };
    Ok(match spec.w_kind() {
        WKind::None => unreachable!("rank_w rejects varieties without W"),
        WKind::Wedge2Sub => sub(plethysm(PlethysmKind::Wedge2, j as u32, n1)),
        WKind::Sym2Sub => sub(plethysm(PlethysmKind::Sym2, j as u32, n1)),
        WKind::G2Twist => vec![KoszulTerm {
            shape: Partition::column(j),
            bundle: KoszulBundle::FirstQuotient,
            plucker_twist: -(j as i64),
            multiplicity: BigUint::one(),
        }],
    })
}

/// Weight on the ambient flag variety of `∧^j(Q_1 ⊗ L_1^{-1}) ⊗ L`.
pub fn g2_twist_weight(spec: &VarietySpec, j: usize, line: &LineBundleCoeffs) -> Result<BlockedWeight> {
    if spec.w_kind() != WKind::G2Twist {
        return Err(Error::InvalidVariety(format!("{spec} has no G2 twist bundle")));
    }
    if j > 5 {
        return Err(Error::OutOfRange { index: j, max: 5 });
    }
    let base = line.weight(spec.shape())?;
    let mut blocks = base.blocks().to_vec();
    for (t, x) in blocks[0].iter_mut().enumerate() {
        *x += if t < j { 1 } else { 0 } - j as i64;
    }
    BlockedWeight::new(blocks)
}

/// `q_*(L_2^{a_2} ⊗ ... ⊗ L_k^{a_k})` for `q: Fl(n_1, ..., n_k; n) -> Gr(n_1; n)`,
/// as a Schur power of `Σ_G`: the partition `(a_2 I_2, ..., a_k I_k, 0 I_{k+1})`.
pub fn grassmannian_pushforward(shape: &FlagShape, line: &LineBundleCoeffs) -> Result<Partition> {
    line.check_shape(shape)?;
    let ranks = shape.quotient_ranks();
    let a = line.coeffs();
    if a[1..].iter().any(|&x| x < 0) || a[1..].windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Precondition(format!(
            "coefficients {:?} after a_1 must be weakly decreasing and non-negative",
            &a[1..]
        )));
    }
    let mut parts = Vec::new();
    for (i, &coef) in a.iter().enumerate().skip(1) {
        parts.extend(std::iter::repeat_n(coef as u32, ranks[i]));
    }
    Partition::new(parts)
}

/// One required vanishing `H^i(∧^i W ⊗ L) = 0`, checked summand by summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionCheck {
    /// Koszul degree `i`; also the cohomological degree that must vanish.
    pub koszul_degree: usize,
    /// Summand of `∧^i W`.
    pub summand: Partition,
    /// Summand after tensoring with the pushforward of `L` (equal to
    /// `summand` on G2 varieties).
    pub pushed: Partition,
    pub weight: BlockedWeight,
    pub result: CohomologyResult,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionReport {
    pub spec: String,
    pub line_bundle: LineBundleCoeffs,
    pub holds: bool,
    /// Degrees in which some checked summand has cohomology.
    pub nonvanishing_degrees: Vec<usize>,
    pub checks: Vec<RestrictionCheck>,
}

/// Verifies `H^i(F, L ⊗ ∧^i W) = 0` for `1 <= i <= rank W`, which makes
/// `H^0(F, L) -> H^0(X, L)` surjective.
pub fn restriction_surjectivity_check(spec: &VarietySpec, line: &LineBundleCoeffs) -> Result<RestrictionReport> {
    restriction_surjectivity_check_with(spec, line, Strategy::default())
}

pub fn restriction_surjectivity_check_with(
    spec: &VarietySpec,
    line: &LineBundleCoeffs,
    strategy: Strategy,
) -> Result<RestrictionReport> {
    line.check_shape(spec.shape())?;
    line.decompose_ample()?;
    let rank = spec.rank_w()?;

    let checks = if spec.w_kind() == WKind::G2Twist {
        let mut out = Vec::new();
        for i in 1..=rank {
            let weight = g2_twist_weight(spec, i, line)?;
            let result = bbw_cohomology(&weight);
            out.push(RestrictionCheck {
                koszul_degree: i,
                summand: Partition::column(i),
                pushed: Partition::column(i),
                ok: result.vanishes_in(i),
                weight,
                result,
            });
        }
        out
    } else {
        let shape = spec.shape();
        let n1 = spec.n1();
        let r1 = shape.quotient_ranks()[0];
        let a1 = line.coeffs()[0];
        let pushed_line = grassmannian_pushforward(shape, line)?;
        let mut jobs = Vec::new();
        for i in 1..=rank {
            for term in koszul_terms(spec, i)? {
                jobs.push((i, term.shape));
            }
        }
        par::flat_map(&jobs, strategy, |(i, beta)| {
            tensor_decompose(beta, &pushed_line, n1)
                .into_iter()
                .map(|s| {
                    let weight = BlockedWeight::new(vec![vec![a1; r1], s.shape.padded_i64(n1)])
                        .expect("partition blocks are decreasing");
                    let result = bbw_cohomology(&weight);
                    RestrictionCheck {
                        koszul_degree: *i,
                        summand: beta.clone(),
                        pushed: s.shape,
                        ok: result.vanishes_in(*i),
                        weight,
                        result,
                    }
                })
                .collect()
        })
    };

    let mut degrees: Vec<usize> = checks.iter().filter_map(|c| c.result.degree()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    Ok(RestrictionReport {
        spec: spec.to_string(),
        line_bundle: line.clone(),
        holds: checks.iter().all(|c| c.ok),
        nonvanishing_degrees: degrees,
        checks,
    })
}
