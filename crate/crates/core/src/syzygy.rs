//! Kernel-bundle filtrations, Schur complex terms, and `(N_p)` certificates.
//!
//! For types B, C and D the certifier evaluates the exact rational threshold
//!
//! ```text
//! max over 0 <= s_i <= r_i, s = Σ s_i >= 1 of  (p+1)/s + (s ∓ 1)/2 - Σ s_i² / s
//! ```
//!
//! over the ranks `(r_2, ..., r_{k+1})` of the quotients of `Σ_1`, with `-` for
//! symplectic and `+` for orthogonal varieties. A line bundle with ample gap
//! `l` at least the threshold is certified. For G2 varieties every required
//! Bott-Borel-Weil vanishing is enumerated instead.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bott::{bbw_cohomology, BlockedWeight, CohomologyResult};
use crate::configs::Configs;
use crate::error::{Error, Result};
use crate::geometry::{Family, FlagShape, LineBundleCoeffs, VarietySpec};
use crate::par::{self, Strategy};
use crate::partitions::{partitions_bounded, subpartitions, Partition};
use crate::schur::lr_coefficient;

pub const SCHEMA_VERSION: u32 = 1;

/// Exact rational as serialized in certificates: `{"num": .., "den": ..}`
/// in lowest terms with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl Fraction {
    pub fn to_ratio(self) -> Ratio<i64> {
        Ratio::new(self.num, self.den)
    }
}

impl From<Ratio<i64>> for Fraction {
    fn from(r: Ratio<i64>) -> Self {
        Fraction { num: *r.numer(), den: *r.denom() }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// One step `N_i` of the filtration of the kernel bundle `M_L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationLevel {
    pub level: usize,
    /// `α_{≥i}`: `a_t - a_{i+1}` on blocks `t <= i`, then `r_{i+1}` zeros.
    pub truncated: Partition,
    /// Rank of `Σ_0/Σ_{i+1}`, the length `α_{≥i}` is padded to.
    pub rank: usize,
    /// `L̃_i = (L_1 ⊗ ... ⊗ L_i)^{a_i} ⊗ L_{i+1}^{a_{i+1}} ⊗ ... ⊗ L_k^{a_k}`.
    pub twist: LineBundleCoeffs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelFiltration {
    pub shape: FlagShape,
    pub line_bundle: LineBundleCoeffs,
    pub levels: Vec<FiltrationLevel>,
}

impl KernelFiltration {
    /// `L̃_i` for `1 <= i <= k + 1`; `L̃_{k+1}` is trivial.
    pub fn twist(&self, i: usize) -> Result<LineBundleCoeffs> {
        let k = self.shape.k();
        if i == 0 || i > k + 1 {
            return Err(Error::OutOfRange { index: i, max: k + 1 });
        }
        if i == k + 1 {
            return Ok(LineBundleCoeffs::new(vec![0; k]));
        }
        Ok(self.levels[i - 1].twist.clone())
    }
}

fn extended(line: &LineBundleCoeffs) -> Vec<i64> {
    let mut a = line.coeffs().to_vec();
    a.push(0);
    a
}

fn level_twist(a: &[i64], i: usize, k: usize) -> LineBundleCoeffs {
    LineBundleCoeffs::new((1..=k).map(|t| if t <= i { a[i - 1] } else { a[t - 1] }).collect())
}

pub fn kernel_filtration(shape: &FlagShape, line: &LineBundleCoeffs) -> Result<KernelFiltration> {
    if line.k() != shape.k() {
        return Err(Error::LengthMismatch { expected: shape.k(), found: line.k() });
    }
    if !line.is_nef() {
        return Err(Error::NotNef(line.coeffs().to_vec()));
    }
    let ranks = shape.quotient_ranks();
    let a = extended(line);
    let k = shape.k();
    let mut levels = Vec::with_capacity(k);
    for i in 1..=k {
        let mut parts = Vec::new();
        for t in 0..i {
            parts.extend(std::iter::repeat_n((a[t] - a[i]) as u32, ranks[t]));
        }
        levels.push(FiltrationLevel {
            level: i,
            truncated: Partition::new(parts)?,
            rank: ranks[..=i].iter().sum(),
            twist: level_twist(&a, i, k),
        });
    }
    Ok(KernelFiltration { shape: shape.clone(), line_bundle: line.clone(), levels })
}

/// `(S^ρ Q_{i+1} ⊗ S^ν(Σ_0/Σ_{i+1}))^{⊕ multiplicity} ⊗ L̃_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexTerm {
    pub rho: Partition,
    pub nu: Partition,
    pub multiplicity: u64,
    pub twist: LineBundleCoeffs,
}

/// The `j`-th term of the Schur complex resolving `N_i`.
pub fn schur_complex_term(shape: &FlagShape, line: &LineBundleCoeffs, i: usize, j: u32) -> Result<Vec<ComplexTerm>> {
    let k = shape.k();
    if i == 0 || i > k {
        return Err(Error::OutOfRange { index: i, max: k });
    }
    if j == 0 {
        return Err(Error::Precondition("homological degree must be at least 1".into()));
    }
    let filt = kernel_filtration(shape, line)?;
    let level = &filt.levels[i - 1];
    let alpha = &level.truncated;
    if j > alpha.weight() {
        return Ok(Vec::new());
    }
    let twist = filt.twist(i + 1)?;
    let r_next = shape.quotient_ranks()[i];
    let nus: Vec<Partition> = subpartitions(alpha).into_iter().filter(|nu| nu.weight() == alpha.weight() - j).collect();
    let mut out = Vec::new();
    for rho in partitions_bounded(j, r_next, j) {
        let rho_star = rho.conjugate();
        for nu in &nus {
            let m = lr_coefficient(alpha, &rho_star, nu);
            if m > 0 {
                out.push(ComplexTerm { rho: rho.clone(), nu: nu.clone(), multiplicity: m, twist: twist.clone() });
            }
        }
    }
    out.sort_by(|x, y| (&y.rho, &y.nu).cmp(&(&x.rho, &x.nu)));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdFamily {
    /// Type C: `(s - 1)/2`.
    Symplectic,
    /// Types B and D: `(s + 1)/2`.
    Orthogonal,
}

impl ThresholdFamily {
    fn sign(self) -> i64 {
        match self {
            ThresholdFamily::Symplectic => -1,
            ThresholdFamily::Orthogonal => 1,
        }
    }

    /// The value forced by `s = 1`: `p` or `p + 1`.
    pub fn floor(self, p: u32) -> i64 {
        match self {
            ThresholdFamily::Symplectic => i64::from(p),
            ThresholdFamily::Orthogonal => i64::from(p) + 1,
        }
    }

    pub fn for_family(family: Family) -> Option<Self> {
        match family {
            Family::TypeC => Some(ThresholdFamily::Symplectic),
            Family::TypeB | Family::TypeDSub | Family::TypeDSpinor | Family::TypeDMixed | Family::G2Q => {
                Some(ThresholdFamily::Orthogonal)
            }
            _ => None,
        }
    }
}

impl FromStr for ThresholdFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "c" | "symplectic" => Ok(ThresholdFamily::Symplectic),
            "bd" | "b" | "d" | "orthogonal" => Ok(ThresholdFamily::Orthogonal),
            _ => Err(Error::Parse { token: s.to_string(), expected: "C or BD" }),
        }
    }
}

impl fmt::Display for ThresholdFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThresholdFamily::Symplectic => "C",
            ThresholdFamily::Orthogonal => "BD",
        })
    }
}

/// `(p+1)/s + (s ∓ 1)/2 - Σ s_i² / s`, or `None` for the empty configuration.
pub fn config_value(family: ThresholdFamily, config: &[usize], p: u32) -> Option<Ratio<i64>> {
    let s: i64 = config.iter().map(|&x| x as i64).sum();
    if s == 0 {
        return None;
    }
    let sq: i64 = config.iter().map(|&x| (x * x) as i64).sum();
    let num = 2 * (i64::from(p) + 1) + s * (s + family.sign()) - 2 * sq;
    Some(Ratio::new(num, 2 * s))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Threshold {
    pub value: Fraction,
    /// A maximizing configuration `(s_2, ..., s_{k+1})`.
    pub witness: Vec<usize>,
}

impl Threshold {
    pub fn ratio(&self) -> Ratio<i64> {
        self.value.to_ratio()
    }
}

fn check_threshold_input(ranks: &[usize], p: u32) -> Result<()> {
    if p == 0 {
        return Err(Error::Precondition("p must be at least 1".into()));
    }
    if ranks.is_empty() || ranks.contains(&0) {
        return Err(Error::Precondition(format!("ranks {ranks:?} must be non-empty and positive")));
    }
    Ok(())
}

/// Maximizes over configurations. For a fixed total `s` the value is largest
/// when `Σ s_i²` is smallest, which filling the emptiest block first achieves;
/// filling is incremental in `s`, so one pass covers every total. The witness
/// is the optimum with the smallest `s`.
pub fn np_threshold(family: ThresholdFamily, ranks: &[usize], p: u32) -> Result<Threshold> {
    check_threshold_input(ranks, p)?;
    let mut config = vec![0usize; ranks.len()];
    let mut best: Option<(Ratio<i64>, Vec<usize>)> = None;
    let total: usize = ranks.iter().sum();
    for _ in 0..total {
        let idx = (0..ranks.len())
            .filter(|&i| config[i] < ranks[i])
            .min_by_key(|&i| (config[i], i))
            .expect("capacity remains below the total");
        config[idx] += 1;
        let v = config_value(family, &config, p).expect("s >= 1");
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, config.clone()));
        }
    }
    let (value, witness) = best.expect("ranks are positive");
    Ok(Threshold { value: value.into(), witness })
}

/// The same maximum by visiting every configuration. Exponential; for audits.
pub fn np_threshold_exhaustive(family: ThresholdFamily, ranks: &[usize], p: u32) -> Result<Threshold> {
    check_threshold_input(ranks, p)?;
    let mut best: Option<(Ratio<i64>, Vec<usize>)> = None;
    for c in Configs::new(ranks) {
        if let Some(v) = config_value(family, &c, p) {
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, c));
            }
        }
    }
    let (value, witness) = best.expect("ranks are positive");
    Ok(Threshold { value: value.into(), witness })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    /// The criteria do not apply. This does not assert that `(N_p)` fails.
    NotCertified,
}

/// Which criterion a certificate rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// Type A flag varieties: `l >= p`.
    FlagVariety,
    /// Picard rank at most two: `l >= p` (C) or `l >= p + 1` (B/D).
    LowPicardRank,
    /// `l >= p >= n_1/2 - 1` (C) or `l >= p + 1 >= n_1/2 - 1` (B/D).
    LargeP,
    /// `l >= max{p, (p+1)/n_1 + (n_1-3)/2}` (C) or the B/D analog.
    GeneralBound,
    /// `l` at least the configuration maximum.
    RefinedThreshold,
    /// Every required vanishing on a G2 variety checked directly.
    ExhaustiveG2,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceEntry {
    Inequality {
        config: Vec<usize>,
        s: usize,
        sum_of_squares: usize,
        value: Fraction,
        holds: bool,
    },
    Vanishing {
        /// Exterior power of the embedding bundle's dual twist.
        wedge_degree: usize,
        /// Number of kernel-bundle factors.
        kernel_power: usize,
        /// The enumerated parameters: `(a_1, a_2)` on `G2_X`, `(s, t)` on `P_X(Σ)`.
        parameters: Vec<i64>,
        weight: BlockedWeight,
        /// Cohomology must vanish in degrees `forbidden_min ..= forbidden_max`
        /// (unbounded above when `forbidden_max` is absent).
        forbidden_min: i64,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        forbidden_max: Option<i64>,
        result: CohomologyResult,
        ok: bool,
    },
    Note {
        text: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NpQuery {
    pub spec: String,
    pub line_bundle: LineBundleCoeffs,
    pub l: i64,
    pub p: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NpCertificate {
    pub schema_version: u32,
    pub query: NpQuery,
    pub verdict: Verdict,
    pub clause: Clause,
    /// Closed-form criteria whose literal hypotheses hold for this query.
    pub literal_hypotheses_met: Vec<Clause>,
    /// Absent for exhaustive G2 certificates.
    pub threshold: Option<Fraction>,
    pub witness_config: Vec<usize>,
    pub trace: Vec<TraceEntry>,
}

impl NpCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

const TRACE_CONFIG_LIMIT: u128 = 1 << 17;

fn threshold_trace(family: ThresholdFamily, ranks: &[usize], p: u32, l: i64, max: Ratio<i64>) -> Vec<TraceEntry> {
    let lr = Ratio::from_integer(l);
    let entry = |c: Vec<usize>, v: Ratio<i64>| TraceEntry::Inequality {
        s: c.iter().sum(),
        sum_of_squares: c.iter().map(|x| x * x).sum(),
        config: c,
        value: v.into(),
        holds: lr >= v,
    };
    let mut trace = Vec::new();
    if Configs::count(ranks) <= TRACE_CONFIG_LIMIT {
        let floor = max - Ratio::from_integer(1);
        for c in Configs::new(ranks) {
            if let Some(v) = config_value(family, &c, p) {
                if v >= floor {
                    trace.push(entry(c, v));
                }
            }
        }
    } else {
        trace.push(TraceEntry::Note {
            text: "configuration space too large to list; showing the optimum for each total s".into(),
        });
        let mut config = vec![0usize; ranks.len()];
        for _ in 0..ranks.iter().sum::<usize>() {
            let idx = (0..ranks.len())
                .filter(|&i| config[i] < ranks[i])
                .min_by_key(|&i| (config[i], i))
                .expect("capacity remains");
            config[idx] += 1;
            let v = config_value(family, &config, p).expect("s >= 1");
            trace.push(entry(config.clone(), v));
        }
    }
    trace
}

/// The closed-form criteria whose literal hypotheses hold.
pub fn literal_hypotheses(family: ThresholdFamily, k: usize, n1: usize, l: i64, p: u32) -> Vec<Clause> {
    let floor = family.floor(p);
    let (l, n1r) = (Ratio::from_integer(l), Ratio::from_integer(n1 as i64));
    let floor_r = Ratio::from_integer(floor);
    let mut out = Vec::new();
    if k <= 2 && l >= floor_r {
        out.push(Clause::LowPicardRank);
    }
    let half_minus_one = n1r / 2 - 1;
    if l >= floor_r && floor_r >= half_minus_one {
        out.push(Clause::LargeP);
    }
    let offset = match family {
        ThresholdFamily::Symplectic => -3,
        ThresholdFamily::Orthogonal => -1,
    };
    let general = Ratio::from_integer(i64::from(p) + 1) / n1r + Ratio::new(n1 as i64 + offset, 2);
    if l >= floor_r && l >= general {
        out.push(Clause::GeneralBound);
    }
    out
}

fn check_query(spec: &VarietySpec, line: &LineBundleCoeffs, p: u32) -> Result<i64> {
    if p == 0 {
        return Err(Error::Precondition("p must be at least 1".into()));
    }
    if line.k() != spec.shape().k() {
        return Err(Error::LengthMismatch { expected: spec.shape().k(), found: line.k() });
    }
    line.decompose_ample()
}

/// Certifies `(N_p)` for the restriction of the ample line bundle `line`.
pub fn np_certify(spec: &VarietySpec, line: &LineBundleCoeffs, p: u32) -> Result<NpCertificate> {
    np_certify_with(spec, line, p, Strategy::default())
}

pub fn np_certify_with(spec: &VarietySpec, line: &LineBundleCoeffs, p: u32, strategy: Strategy) -> Result<NpCertificate> {
    if matches!(spec.family(), Family::G2X | Family::G2PXSigma) {
        return g2_np_certify_with(spec, line, p, strategy);
    }
    let l = check_query(spec, line, p)?;
    let query = NpQuery { spec: spec.to_string(), line_bundle: line.clone(), l, p };
    let Some(family) = ThresholdFamily::for_family(spec.family()) else {
        let certified = l >= i64::from(p);
        return Ok(NpCertificate {
            schema_version: SCHEMA_VERSION,
            query,
            verdict: if certified { Verdict::Certified } else { Verdict::NotCertified },
            clause: if certified { Clause::FlagVariety } else { Clause::None },
            literal_hypotheses_met: if certified { vec![Clause::FlagVariety] } else { Vec::new() },
            threshold: Some(Ratio::from_integer(i64::from(p)).into()),
            witness_config: Vec::new(),
            trace: Vec::new(),
        });
    };

    let ranks = spec.shape().quotient_ranks()[1..].to_vec();
    let k = spec.shape().k();
    let threshold = np_threshold(family, &ranks, p)?;
    let max = threshold.ratio();
    let certified = Ratio::from_integer(l) >= max;
    let literal = literal_hypotheses(family, k, spec.n1(), l, p);

    let mut trace = vec![TraceEntry::Note {
        text: "the inequality is required for every configuration 0 <= s_i <= r_i with s >= 1".into(),
    }];
    trace.extend(threshold_trace(family, &ranks, p, l, max));
    if !certified && !literal.is_empty() {
        trace.push(TraceEntry::Note {
            text: format!("literal hypotheses {literal:?} hold but l = {l} is below the threshold {}", threshold.value),
        });
    }

    let clause = match (certified, k <= 2) {
        (false, _) => Clause::None,
        (true, true) => Clause::LowPicardRank,
        (true, false) => Clause::RefinedThreshold,
    };
    Ok(NpCertificate {
        schema_version: SCHEMA_VERSION,
        query,
        verdict: if certified { Verdict::Certified } else { Verdict::NotCertified },
        clause,
        literal_hypotheses_met: literal,
        threshold: Some(threshold.value),
        witness_config: threshold.witness,
        trace,
    })
}

struct G2Job {
    wedge_degree: usize,
    kernel_power: usize,
}

fn g2x_checks(job: &G2Job, l: i64, dim: i64) -> Vec<TraceEntry> {
    let (j, i) = (job.wedge_degree as i64, job.kernel_power as i64);
    let mut out = Vec::new();
    for t in i..=i + dim + 5 {
        for a2 in 0..=t / 2 {
            let a1 = t - a2;
            let q: Vec<i64> = (0..5).map(|x| if x < j { 1 } else { 0 } + l - j).collect();
            let weight = BlockedWeight::new(vec![q, vec![a1, a2]]).expect("decreasing blocks");
            let result = bbw_cohomology(&weight);
            let forbidden = 1 + j - i + t;
            let ok = result.degree().is_none_or(|d| d as i64 != forbidden);
            out.push(TraceEntry::Vanishing {
                wedge_degree: job.wedge_degree,
                kernel_power: job.kernel_power,
                parameters: vec![a1, a2],
                weight,
                forbidden_min: forbidden,
                forbidden_max: Some(forbidden),
                result,
                ok,
            });
        }
    }
    out
}

fn g2p_checks(job: &G2Job, a: i64, b: i64, dim: i64) -> Vec<TraceEntry> {
    let (j, i) = (job.wedge_degree as i64, job.kernel_power as i64);
    let mut out = Vec::new();
    for total in i..=i + dim + 5 {
        for s in 0..=total {
            let t = total - s;
            let q: Vec<i64> = (0..5).map(|x| if x < j { 1 } else { 0 } + a - j).collect();
            let weight = BlockedWeight::new(vec![q, vec![b + t], vec![s]]).expect("decreasing blocks");
            let result = bbw_cohomology(&weight);
            let allowed_max = j - i + s + t;
            let ok = result.degree().is_none_or(|d| d as i64 <= allowed_max);
            out.push(TraceEntry::Vanishing {
                wedge_degree: job.wedge_degree,
                kernel_power: job.kernel_power,
                parameters: vec![s, t],
                weight,
                forbidden_min: allowed_max + 1,
                forbidden_max: None,
                result,
                ok,
            });
        }
    }
    out
}

/// Exhaustive certifier for `G2_X ⊂ Gr(2,7)` and `P_X(Σ) ⊂ Fl(2,1;7)`.
pub fn g2_np_certify(spec: &VarietySpec, line: &LineBundleCoeffs, p: u32) -> Result<NpCertificate> {
    g2_np_certify_with(spec, line, p, Strategy::default())
}

pub fn g2_np_certify_with(spec: &VarietySpec, line: &LineBundleCoeffs, p: u32, strategy: Strategy) -> Result<NpCertificate> {
    if !matches!(spec.family(), Family::G2X | Family::G2PXSigma) {
        return Err(Error::InvalidVariety(format!("{spec} is not an exhaustively certified G2 variety")));
    }
    let l = check_query(spec, line, p)?;
    let dim = spec.shape().dimension() as i64;
    let jobs: Vec<G2Job> = (0..=5)
        .flat_map(|j| (1..=p as usize + 1).map(move |i| G2Job { wedge_degree: j, kernel_power: i }))
        .collect();
    let mut trace = match spec.family() {
        Family::G2X => {
            let a = line.coeffs()[0];
            par::flat_map(&jobs, strategy, |job| g2x_checks(job, a, dim))
        }
        _ => {
            let (a, b) = (line.coeffs()[0], line.coeffs()[1]);
            par::flat_map(&jobs, strategy, |job| g2p_checks(job, a, b, dim))
        }
    };
    let certified = trace.iter().all(|e| !matches!(e, TraceEntry::Vanishing { ok: false, .. }));
    let failures = trace.iter().filter(|e| matches!(e, TraceEntry::Vanishing { ok: false, .. })).count();
    trace.insert(
        0,
        TraceEntry::Note {
            text: format!(
                "candidate summands: all totals from the kernel power i up to i + {}; {failures} required vanishings fail",
                dim + 5
            ),
        },
    );
    Ok(NpCertificate {
        schema_version: SCHEMA_VERSION,
        query: NpQuery { spec: spec.to_string(), line_bundle: line.clone(), l, p },
        verdict: if certified { Verdict::Certified } else { Verdict::NotCertified },
        clause: if certified { Clause::ExhaustiveG2 } else { Clause::None },
        literal_hypotheses_met: Vec::new(),
        threshold: None,
        witness_config: Vec::new(),
        trace,
    })
}

/// Certifies each query independently; results follow input order.
pub fn certify_batch(queries: &[(VarietySpec, LineBundleCoeffs, u32)], strategy: Strategy) -> Vec<Result<NpCertificate>> {
    par::map(queries, strategy, |(spec, line, p)| np_certify_with(spec, line, *p, Strategy::Sequential))
}
