//! Executable checks of the discrepancy bound and its Poisson machinery.
//!
//! [`verify_theorem`] runs one full inequality trial: count the lattice
//! points, evaluate the certified bound, compare. [`sweep_theorem`] repeats
//! that over seeded random bases, radii, and centers; the inequality is a
//! theorem, so any recorded violation is an implementation bug.
//!
//! [`poisson_check`] exercises the summation identity the bound's proof
//! rests on: for a band-limited F whose transform is supported inside the
//! δ-ball,
//!
//! ```text
//! det S · Σ_m F(S(m + x)) = Σ_{|S⁻¹n| < δ} F̂(S⁻¹n) e(xᵀn),
//! ```
//!
//! and when additionally δ ≤ |A|⁻¹ the right side collapses to the single
//! term F̂(0). The extremal majorant/minorant pair the proof applies this to
//! is not constructible here, so the harness substitutes the Fejér product
//! family `F_c(y) = ∏ sinc²(πc y_j)`, which satisfies every hypothesis used
//! (integrable, continuous transform, transform supported in the box
//! [−c, c]^N ⊆ δ-ball whenever c√N ≤ δ).

use crate::enumerate::{self, BallQuery};
use crate::extremal::{u_nu, BoundParams};
use crate::lattice::{LatticeBasis, MatrixReal};
use crate::math;
use crate::rng::SplitMix64;
use crate::{Error, Result};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Slack applied when comparing the two sides of the inequality; float
/// rounding in the count and the bound must not flip a true statement.
fn inequality_slack(rhs: f64) -> f64 {
    1e-9 * (1.0 + rhs)
}

/// Condensed description of the basis a trial ran on.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSummary {
    pub rows: usize,
    pub cols: usize,
    pub op_norm: f64,
    pub sqrt_det: f64,
}

/// One inequality trial: both sides, the margin, and the verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationRecord {
    pub basis_summary: BasisSummary,
    pub delta: f64,
    pub radius: f64,
    pub center: Vec<f64>,
    /// |sqrt_det · weighted count − V_N R^N|.
    pub lhs: f64,
    /// ω_{N−1} · u_ν(R, δ).
    pub rhs: f64,
    /// rhs − lhs.
    pub margin: f64,
    pub boundary_hits: u64,
    pub passed: bool,
}

/// Runs one trial of the inequality. The hypothesis δ·|A| ≤ 1 is enforced
/// up to 1e-12 relative slack; a violation is an error (a misuse distinct
/// from a failed inequality, which would be a bug), never a record.
pub fn verify_theorem(
    basis: &LatticeBasis,
    delta: f64,
    query: &BallQuery,
) -> Result<VerificationRecord> {
    if !(delta > 0.0) {
        return Err(Error::Domain("delta must be positive"));
    }
    let delta_times_norm = delta * basis.op_norm();
    if delta_times_norm > 1.0 + 1e-12 {
        return Err(Error::HypothesisViolation { delta_times_norm });
    }

    let count = enumerate::count_ball(basis, query)?;
    let params = BoundParams::new(basis.dim() as u32, delta, query.radius)?;
    let value = u_nu(&params)?;

    let lhs = count.discrepancy;
    let rhs = value.bound;
    Ok(VerificationRecord {
        basis_summary: BasisSummary {
            rows: basis.ambient_dim(),
            cols: basis.dim(),
            op_norm: basis.op_norm(),
            sqrt_det: basis.sqrt_det(),
        },
        delta,
        radius: query.radius,
        center: query.center.clone(),
        lhs,
        rhs,
        margin: rhs - lhs,
        boundary_hits: count.boundary,
        passed: lhs <= rhs + inequality_slack(rhs),
    })
}

/// How each trial picks its type parameter δ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaPolicy {
    /// δ = |A|⁻¹, the largest admissible value and the tightest bound.
    MaxAdmissible,
    /// δ = f·|A|⁻¹ for a fraction f ∈ (0, 1].
    Fraction(f64),
}

/// Configuration of a randomized sweep. Deterministic given the seed: each
/// trial draws from its own derived stream, so records do not depend on
/// execution order.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub trials: u64,
    pub seed: u64,
    pub n_min: u32,
    pub n_max: u32,
    /// M is drawn uniformly from N..=N+m_extra_max.
    pub m_extra_max: u32,
    /// Basis entries are drawn uniformly from this interval.
    pub entry_range: (f64, f64),
    /// Radii are drawn uniformly from this grid.
    pub r_grid: Vec<f64>,
    pub delta_policy: DeltaPolicy,
}

impl SweepConfig {
    /// Defaults: N ∈ 1..=4, M ∈ N..=N+3, entries uniform in [−2, 2],
    /// R on the grid 0.1, 0.2, …, 6.0, δ = |A|⁻¹.
    pub fn new(trials: u64, seed: u64) -> Self {
        Self {
            trials,
            seed,
            n_min: 1,
            n_max: 4,
            m_extra_max: 3,
            entry_range: (-2.0, 2.0),
            r_grid: (1..=60).map(|k| k as f64 * 0.1).collect(),
            delta_policy: DeltaPolicy::MaxAdmissible,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_min < 1 || self.n_min > self.n_max {
            return Err(Error::Domain("sweep requires 1 <= n_min <= n_max"));
        }
        if !(self.entry_range.0 < self.entry_range.1) {
            return Err(Error::Domain("entry range must be nonempty"));
        }
        if self.r_grid.is_empty() || self.r_grid.iter().any(|&r| !(r > 0.0)) {
            return Err(Error::Domain("radius grid must be nonempty and positive"));
        }
        if let DeltaPolicy::Fraction(f) = self.delta_policy {
            if !(f > 0.0 && f <= 1.0) {
                return Err(Error::Domain("delta fraction must lie in (0, 1]"));
            }
        }
        Ok(())
    }
}

/// Result of one sweep trial; per-trial errors (for instance a rank-deficient
/// draw) are recorded and do not abort the sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum TrialOutcome {
    Completed(VerificationRecord),
    Failed { message: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialReport {
    pub trial: u64,
    pub outcome: TrialOutcome,
}

/// Outcome of a full sweep, in trial order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub seed: u64,
    pub reports: Vec<TrialReport>,
}

impl SweepOutcome {
    /// Completed trials whose inequality failed. The bound is proven, so
    /// this should always be zero; anything else is an implementation bug.
    pub fn inequality_failures(&self) -> usize {
        self.reports
            .iter()
            .filter(|r| matches!(&r.outcome, TrialOutcome::Completed(rec) if !rec.passed))
            .count()
    }

    /// Trials that errored before producing a record.
    pub fn errors(&self) -> usize {
        self.reports
            .iter()
            .filter(|r| matches!(&r.outcome, TrialOutcome::Failed { .. }))
            .count()
    }

    /// Smallest rhs − lhs margin over completed trials.
    pub fn min_margin(&self) -> Option<f64> {
        self.reports
            .iter()
            .filter_map(|r| match &r.outcome {
                TrialOutcome::Completed(rec) => Some(rec.margin),
                TrialOutcome::Failed { .. } => None,
            })
            .min_by(f64::total_cmp)
    }
}

/// Runs `config.trials` randomized inequality trials, bit-reproducible from
/// the seed (SplitMix64, one derived stream per trial).
pub fn sweep_theorem(config: &SweepConfig) -> Result<SweepOutcome> {
    config.validate()?;
    let mut reports = Vec::with_capacity(config.trials as usize);
    for trial in 0..config.trials {
        let mut rng = SplitMix64::stream(config.seed, trial);
        let outcome = run_trial(config, &mut rng);
        reports.push(TrialReport { trial, outcome });
    }
    Ok(SweepOutcome { seed: config.seed, reports })
}

fn run_trial(config: &SweepConfig, rng: &mut SplitMix64) -> TrialOutcome {
    let n = rng.uniform_usize(config.n_min as usize, config.n_max as usize);
    let m = n + rng.uniform_usize(0, config.m_extra_max as usize);
    let (lo, hi) = config.entry_range;
    let entries: Vec<f64> = (0..m * n).map(|_| rng.uniform(lo, hi)).collect();

    let matrix = match MatrixReal::new(m, n, entries) {
        Ok(a) => a,
        Err(e) => return TrialOutcome::Failed { message: e.to_string() },
    };
    let basis = match LatticeBasis::from_matrix(matrix, LatticeBasis::DEFAULT_RANK_TOL) {
        Ok(b) => b,
        Err(e) => return TrialOutcome::Failed { message: e.to_string() },
    };

    let delta = match config.delta_policy {
        DeltaPolicy::MaxAdmissible => basis.max_admissible_delta(),
        DeltaPolicy::Fraction(f) => f * basis.max_admissible_delta(),
    };
    let radius = config.r_grid[rng.uniform_usize(0, config.r_grid.len() - 1)];
    let center: Vec<f64> = (0..n).map(|_| rng.next_f64()).collect();

    match verify_theorem(&basis, delta, &BallQuery::new(radius, center)) {
        Ok(record) => TrialOutcome::Completed(record),
        Err(e) => TrialOutcome::Failed { message: e.to_string() },
    }
}

/// The Fejér product F_c(y) = ∏_j (sin(πc y_j)/(πc y_j))², with the
/// removable singularity at y_j = 0 evaluated as 1. Band-limited: its
/// transform is ∏_j (1/c)·max(0, 1 − |t_j|/c), supported in [−c, c]^N.
pub fn fejer_product(bandwidth: f64, point: &[f64]) -> f64 {
    debug_assert!(bandwidth > 0.0);
    let mut acc = 1.0;
    for &y in point {
        let arg = PI * bandwidth * y;
        if arg != 0.0 {
            let s = math::sin(arg) / arg;
            acc *= s * s;
        }
    }
    acc
}

/// The transform of [`fejer_product`]: ∏_j (1/c)·max(0, 1 − |t_j|/c).
pub fn fejer_transform(bandwidth: f64, point: &[f64]) -> f64 {
    debug_assert!(bandwidth > 0.0);
    let mut acc = 1.0;
    for &t in point {
        let tri = 1.0 - math::abs(t) / bandwidth;
        if tri <= 0.0 {
            return 0.0;
        }
        acc *= tri / bandwidth;
    }
    acc
}

/// One Poisson-summation trial on the Fejér family.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonCheckResult {
    /// Bandwidth c of the test function.
    pub bandwidth: f64,
    pub delta: f64,
    /// det S · Σ over the truncated box of F_c(S(m + x)).
    pub lhs: f64,
    /// Σ over |S⁻¹n| < δ of F̂_c(S⁻¹n)·cos(2π xᵀn).
    pub rhs: f64,
    /// Certified bound on the neglected space-side tail.
    pub truncation_bound: f64,
    /// |lhs − rhs|.
    pub abs_error: f64,
    /// Number of frequency-side terms found; exactly one when δ ≤ |A|⁻¹.
    pub freq_terms: u64,
}

/// Compares the two sides of the Poisson identity for the Fejér family,
/// truncating the space-side sum to the box |m|∞ ≤ trunc_radius and
/// enumerating the frequency side exactly.
///
/// The truncation bound is a packing argument: the points S(m + x) are
/// pairwise ≥ λ₁(S) apart, F_c is dominated by the coordinate-monotone
/// majorant ∏ min(1, (πc y_j)⁻²), and disjoint balls of radius
/// r₀ = min(λ₁, 1/(πc))/2 around the neglected points push the sum below an
/// explicit box-complement integral of the majorant. Conservative but fully
/// rigorous; it degenerates to +∞ if the box is too small for the basis.
pub fn poisson_check(
    basis: &LatticeBasis,
    delta: f64,
    center: &[f64],
    bandwidth: f64,
    trunc_radius: i64,
) -> Result<PoissonCheckResult> {
    let n = basis.dim();
    if center.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: center.len() });
    }
    if !(delta > 0.0) {
        return Err(Error::Domain("delta must be positive"));
    }
    if !(bandwidth > 0.0) {
        return Err(Error::Domain("bandwidth must be positive"));
    }
    if trunc_radius < 0 {
        return Err(Error::Domain("truncation radius must be nonnegative"));
    }
    let bandwidth_sqrt_n = bandwidth * math::sqrt(n as f64);
    if bandwidth_sqrt_n > delta * (1.0 + 1e-12) {
        return Err(Error::SupportViolation { bandwidth_sqrt_n, delta });
    }

    let x: Vec<f64> = center.iter().map(|&c| c - math::floor(c)).collect();

    // space side: det S · Σ_{|m|∞ <= T} F_c(S(m + x))
    let mut lhs_sum = 0.0;
    let mut m = vec![-trunc_radius; n];
    let mut v = vec![0.0; n];
    'scan: loop {
        for ((slot, &mi), &xi) in v.iter_mut().zip(&m).zip(&x) {
            *slot = mi as f64 + xi;
        }
        lhs_sum += fejer_product(bandwidth, &basis.apply_s(&v));
        for digit in m.iter_mut() {
            if *digit < trunc_radius {
                *digit += 1;
                continue 'scan;
            }
            *digit = -trunc_radius;
        }
        break;
    }
    let lhs = basis.sqrt_det() * lhs_sum;

    // frequency side: exact enumeration of |S^-1 n| < delta
    let gram_inv = square_of(n, basis.s_inv());
    let upper = enumerate::cholesky_upper_of(n, &gram_inv)?;
    let zeros = vec![0.0; n];
    let mut rhs = 0.0;
    let mut freq_terms = 0u64;
    enumerate::walk_lattice(n, &upper, &zeros, enumerate::padded_radius_sq(delta), &mut |
        point: &[i64],
        _partial,
    | {
        let pf: Vec<f64> = point.iter().map(|&c| c as f64).collect();
        let mut norm_sq = 0.0;
        for i in 0..n {
            let mut dot = 0.0;
            for j in 0..n {
                dot += gram_inv[i * n + j] * pf[j];
            }
            norm_sq += pf[i] * dot;
        }
        if math::sqrt(norm_sq) < delta {
            freq_terms += 1;
            let phase: f64 = x.iter().zip(&pf).map(|(a, b)| a * b).sum();
            rhs += fejer_transform(bandwidth, &basis.apply_s_inv(&pf))
                * math::cos(2.0 * PI * phase);
        }
        true
    });

    let truncation_bound = space_tail_bound(basis, bandwidth, trunc_radius)?;
    Ok(PoissonCheckResult {
        bandwidth,
        delta,
        lhs,
        rhs,
        truncation_bound,
        abs_error: math::abs(lhs - rhs),
        freq_terms,
    })
}

/// Rigorous bound on det S · Σ_{|m|∞ > T} F_c(S(m + x)) for x ∈ [0, 1)^N.
fn space_tail_bound(basis: &LatticeBasis, c: f64, trunc_radius: i64) -> Result<f64> {
    let n = basis.dim();
    let nf = n as f64;
    let sigma_min = math::sqrt(basis.eigvals()[0]);

    // shortest lattice distance of S·Z^N; |S e_1| <= |S| guarantees a hit
    let s_matrix = MatrixReal::new(n, n, basis.s().to_vec())?;
    let (_, lambda1) = enumerate::shortest_vector(&s_matrix, basis.op_norm() * (1.0 + 1e-9))?;

    let pi_c = PI * c;
    let r0 = 0.5 * if lambda1 < 1.0 / pi_c { lambda1 } else { 1.0 / pi_c };

    // neglected points satisfy |S(m+x)| >= sigma_min * T
    let a = sigma_min * trunc_radius as f64;
    let box_half = (a - r0) / math::sqrt(nf);
    if box_half <= 1.0 / pi_c {
        return Ok(f64::INFINITY);
    }

    // ∫ majorant outside the box: Q^N − (Q − 2/((πc)² b))^N, Q = 4/(πc)
    let q = 4.0 / pi_c;
    let deficit = 2.0 / (pi_c * pi_c * box_half);
    let integral = math::powi(q, n as i32) - math::powi(q - deficit, n as i32);

    let growth = math::powi(1.0 + pi_c * r0, 2 * n as i32);
    let ball_volume = crate::extremal::volume_const(n as u32)? * math::powi(r0, n as i32);
    Ok(basis.sqrt_det() * growth / ball_volume * integral)
}

/// s_inv · s_inv, the Gram matrix of the dual-side enumeration.
fn square_of(n: usize, m: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += m[i * n + k] * m[k * n + j];
            }
            out[i * n + j] = acc;
        }
    }
    out
}
