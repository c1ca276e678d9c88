//! Exact lattice-point enumeration in balls.
//!
//! Counts the points S(m + x), m ∈ Z^N, inside the closed ball of radius R,
//! with points on the sphere itself weighted 1/2. Enumeration is a
//! depth-first sphere-decoder recursion over the upper-triangular Cholesky
//! factor of the Gram matrix (Fincke–Pohst coordinate bounds, last
//! coordinate outermost, O(1) memory). A brute-force box scan provides an
//! independent oracle, and the same recursion with a shrinking radius finds
//! shortest vectors.
//!
//! Exact sphere membership |y| = R is undecidable in floating point, so
//! membership is resolved through a caller-supplied `boundary_tol`: points
//! with ||y| − R| ≤ boundary_tol count as boundary (weight 1/2) and are
//! reported separately so the 1/2-weight contribution can be audited.
//! Both the decoder and the oracle classify every candidate through the
//! same Gram quadratic form, so their counts agree exactly, not just up to
//! rounding.

use crate::extremal;
use crate::lattice::{LatticeBasis, MatrixReal};
use crate::math;
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// Ceiling on enumerated points used by [`count_ball`].
pub const DEFAULT_COUNT_CEILING: u64 = 100_000_000;

/// A ball query: radius R, the center coordinate x (the geometric center is
/// Ax, or equivalently Sx), and the sphere-membership tolerance.
#[derive(Debug, Clone)]
pub struct BallQuery {
    pub radius: f64,
    pub center: Vec<f64>,
    pub boundary_tol: f64,
}

impl BallQuery {
    /// Query with the default boundary tolerance 1e-9·R.
    pub fn new(radius: f64, center: Vec<f64>) -> Self {
        Self { radius, center, boundary_tol: 1e-9 * radius }
    }

    pub fn with_boundary_tol(radius: f64, center: Vec<f64>, boundary_tol: f64) -> Self {
        Self { radius, center, boundary_tol }
    }
}

/// The outcome of a counting query.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedCount {
    /// Points with |S(m+x)| < R − boundary_tol.
    pub interior: u64,
    /// Points with ||S(m+x)| − R| ≤ boundary_tol, each weighted 1/2.
    pub boundary: u64,
    /// interior + boundary/2; a nonnegative half-integer.
    pub weighted_total: f64,
    /// sqrt(det AᵀA) · weighted_total.
    pub scaled_total: f64,
    /// V_N R^N, the ball volume.
    pub main_term: f64,
    /// |scaled_total − main_term|, the quantity the certified bound controls.
    pub discrepancy: f64,
}

#[derive(Clone, Copy, PartialEq)]
enum Class {
    Interior,
    Boundary,
    Outside,
}

fn classify(norm_sq: f64, radius: f64, tol: f64) -> Class {
    let norm = math::sqrt(norm_sq);
    if math::abs(norm - radius) <= tol {
        Class::Boundary
    } else if norm < radius {
        Class::Interior
    } else {
        Class::Outside
    }
}

/// Exact weighted count of lattice points in the ball, by sphere decoding.
pub fn count_ball(basis: &LatticeBasis, query: &BallQuery) -> Result<WeightedCount> {
    count_ball_with_ceiling(basis, query, DEFAULT_COUNT_CEILING)
}

/// [`count_ball`] with an explicit enumeration ceiling; errors out before
/// (predicted from the ball volume) or during (hard counter) a runaway
/// enumeration.
pub fn count_ball_with_ceiling(
    basis: &LatticeBasis,
    query: &BallQuery,
    ceiling: u64,
) -> Result<WeightedCount> {
    let n = basis.dim();
    validate_query(n, query)?;
    let x = reduce_center(&query.center);
    let r_search = query.radius + query.boundary_tol;

    let predicted =
        extremal::volume_const(n as u32)? * math::powi(r_search, n as i32) / basis.sqrt_det();
    if predicted > ceiling as f64 {
        return Err(Error::CountCeiling { estimate: predicted, ceiling });
    }

    let upper = cholesky_upper(n, basis.gram())?;
    let padded_sq = padded_radius_sq(r_search);

    let mut interior = 0u64;
    let mut boundary = 0u64;
    let mut visited = 0u64;
    let mut over_ceiling = false;
    enumerate_lattice(n, &upper, &x, padded_sq, &mut |m, _partial| {
        visited += 1;
        if visited > ceiling {
            over_ceiling = true;
            return Visit::Abort;
        }
        let v: Vec<f64> = m.iter().zip(&x).map(|(&mi, &xi)| mi as f64 + xi).collect();
        match classify(basis.gram_norm_sq(&v), query.radius, query.boundary_tol) {
            Class::Interior => interior += 1,
            Class::Boundary => boundary += 1,
            Class::Outside => {}
        }
        Visit::Continue
    });
    if over_ceiling {
        return Err(Error::CountCeiling { estimate: visited as f64, ceiling });
    }

    Ok(assemble(basis, query, n, interior, boundary))
}

/// Exhaustive-scan oracle for [`count_ball`]: classifies every integer point
/// of the box [−b, b]^N with the same quadratic form and tolerance. Errors
/// out (naming the minimal sufficient radius) if the box provably cannot
/// cover the ball, via |m| ≤ |S⁻¹|·(R + tol) + |x|.
pub fn count_ball_bruteforce(
    basis: &LatticeBasis,
    query: &BallQuery,
    box_radius: i64,
) -> Result<WeightedCount> {
    let n = basis.dim();
    validate_query(n, query)?;
    if box_radius < 0 {
        return Err(Error::Domain("box radius must be nonnegative"));
    }
    let x = reduce_center(&query.center);
    let r_search = query.radius + query.boundary_tol;

    let op_norm_s_inv = 1.0 / math::sqrt(basis.eigvals()[0]);
    let required = math::ceil(op_norm_s_inv * r_search + math::sqrt(n as f64)) as i64;
    if box_radius < required {
        return Err(Error::BoxTooSmall { required });
    }

    let mut interior = 0u64;
    let mut boundary = 0u64;
    let mut m = vec![-box_radius; n];
    let mut v = vec![0.0; n];
    'scan: loop {
        for ((slot, &mi), &xi) in v.iter_mut().zip(&m).zip(&x) {
            *slot = mi as f64 + xi;
        }
        match classify(basis.gram_norm_sq(&v), query.radius, query.boundary_tol) {
            Class::Interior => interior += 1,
            Class::Boundary => boundary += 1,
            Class::Outside => {}
        }
        // odometer increment
        for digit in m.iter_mut() {
            if *digit < box_radius {
                *digit += 1;
                continue 'scan;
            }
            *digit = -box_radius;
        }
        break;
    }

    Ok(assemble(basis, query, n, interior, boundary))
}

/// Shortest nonzero vector of the lattice M·Z^N for a positive definite
/// symmetric M (used with S⁻¹), by sphere decoding with a shrinking radius.
/// Returns the minimizing integer vector and its length |Mn|.
pub fn shortest_vector(matrix: &MatrixReal, ceiling: f64) -> Result<(Vec<i64>, f64)> {
    if matrix.rows() != matrix.cols() {
        return Err(Error::Domain("shortest_vector requires a square matrix"));
    }
    if !(ceiling > 0.0) {
        return Err(Error::Domain("search ceiling must be positive"));
    }
    let n = matrix.rows();

    // Gram of the column lattice
    let mut gram = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += matrix.at(k, i) * matrix.at(k, j);
            }
            gram[i * n + j] = acc;
            gram[j * n + i] = acc;
        }
    }
    let upper = cholesky_upper(n, &gram)?;
    let quad = |m: &[i64]| -> f64 {
        let mut acc = 0.0;
        for i in 0..n {
            let mut dot = 0.0;
            for j in 0..n {
                dot += gram[i * n + j] * m[j] as f64;
            }
            acc += m[i] as f64 * dot;
        }
        acc
    };

    let zero_x = vec![0.0; n];
    let mut best: Option<(Vec<i64>, f64)> = None;
    enumerate_lattice(n, &upper, &zero_x, padded_radius_sq(ceiling), &mut |m, _partial| {
        if m.iter().all(|&c| c == 0) {
            return Visit::Continue;
        }
        let norm_sq = quad(m);
        match &best {
            Some((_, b)) if norm_sq >= *b => Visit::Continue,
            _ => {
                best = Some((m.to_vec(), norm_sq));
                Visit::Shrink(norm_sq * (1.0 + 1e-12))
            }
        }
    });

    match best {
        Some((m, norm_sq)) => {
            let norm = math::sqrt(norm_sq);
            if norm <= ceiling * (1.0 + 1e-12) {
                Ok((m, norm))
            } else {
                Err(Error::ShortestVectorNotFound { ceiling })
            }
        }
        None => Err(Error::ShortestVectorNotFound { ceiling }),
    }
}

fn validate_query(n: usize, query: &BallQuery) -> Result<()> {
    if query.center.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: query.center.len() });
    }
    if !(query.radius > 0.0) {
        return Err(Error::Domain("ball radius must be positive"));
    }
    if !(query.boundary_tol >= 0.0) {
        return Err(Error::Domain("boundary tolerance must be nonnegative"));
    }
    Ok(())
}

/// The reduction x → x − ⌊x⌋ per coordinate; counts are invariant on cosets
/// of Z^N, and reduced centers keep the coordinate bounds tight.
fn reduce_center(center: &[f64]) -> Vec<f64> {
    center.iter().map(|&c| c - math::floor(c)).collect()
}

fn assemble(
    basis: &LatticeBasis,
    query: &BallQuery,
    n: usize,
    interior: u64,
    boundary: u64,
) -> WeightedCount {
    let weighted_total = interior as f64 + boundary as f64 * 0.5;
    let scaled_total = basis.sqrt_det() * weighted_total;
    let main_term = extremal::volume_const(n as u32).expect("dim >= 1")
        * math::powi(query.radius, n as i32);
    WeightedCount {
        interior,
        boundary,
        weighted_total,
        scaled_total,
        main_term,
        discrepancy: math::abs(scaled_total - main_term),
    }
}

/// Search radius slack: candidates are gathered slightly beyond the target
/// radius and the precise quadratic form settles membership, so float noise
/// in the decoder's partial sums can never drop a boundary point.
pub(crate) fn padded_radius_sq(r: f64) -> f64 {
    let padded = r * (1.0 + 1e-9) + 1e-300;
    padded * padded
}

/// Crate-internal access to the Cholesky factorization for other modules
/// that enumerate against their own Gram matrices.
pub(crate) fn cholesky_upper_of(n: usize, gram: &[f64]) -> Result<Vec<f64>> {
    cholesky_upper(n, gram)
}

/// Crate-internal enumeration with a keep-going visitor.
pub(crate) fn walk_lattice(
    n: usize,
    upper: &[f64],
    x: &[f64],
    radius_sq: f64,
    visit: &mut dyn FnMut(&[i64], f64) -> bool,
) {
    enumerate_lattice(n, upper, x, radius_sq, &mut |m, partial| {
        if visit(m, partial) {
            Visit::Continue
        } else {
            Visit::Abort
        }
    });
}

enum Visit {
    Continue,
    /// Tighten the squared search radius (shortest-vector search).
    Shrink(f64),
    Abort,
}

/// Upper-triangular U with G = UᵀU for symmetric positive definite G.
fn cholesky_upper(n: usize, gram: &[f64]) -> Result<Vec<f64>> {
    let mut u = vec![0.0; n * n];
    for j in 0..n {
        let mut diag = gram[j * n + j];
        for k in 0..j {
            diag -= u[k * n + j] * u[k * n + j];
        }
        if !(diag > 0.0) {
            return Err(Error::Domain("matrix is not positive definite"));
        }
        let ujj = math::sqrt(diag);
        u[j * n + j] = ujj;
        for i in j + 1..n {
            let mut acc = gram[j * n + i];
            for k in 0..j {
                acc -= u[k * n + j] * u[k * n + i];
            }
            u[j * n + i] = acc / ujj;
        }
    }
    Ok(u)
}

/// Depth-first enumeration of all m ∈ Z^N with |U(m + x)|² ≤ radius_sq,
/// outermost recursion on the last coordinate. The visitor may shrink the
/// search radius or abort.
fn enumerate_lattice(
    n: usize,
    upper: &[f64],
    x: &[f64],
    radius_sq: f64,
    visit: &mut dyn FnMut(&[i64], f64) -> Visit,
) {
    let mut state = Walker {
        n,
        upper,
        x,
        radius_sq,
        point: vec![0; n],
        aborted: false,
    };
    state.descend(n - 1, 0.0, visit);
}

struct Walker<'a> {
    n: usize,
    upper: &'a [f64],
    x: &'a [f64],
    radius_sq: f64,
    point: Vec<i64>,
    aborted: bool,
}

impl Walker<'_> {
    fn descend(&mut self, level: usize, partial: f64, visit: &mut dyn FnMut(&[i64], f64) -> Visit) {
        let n = self.n;
        let mut inner = 0.0;
        for j in level + 1..n {
            inner += self.upper[level * n + j] * (self.point[j] as f64 + self.x[j]);
        }
        let u_ll = self.upper[level * n + level];
        let center = self.x[level] + inner / u_ll;
        let rem = self.radius_sq - partial;
        if rem < 0.0 {
            return;
        }
        let half_width = math::sqrt(rem) / u_ll;
        let fuzz = 1e-9 * (1.0 + half_width + math::abs(center));
        let lo = math::ceil(-center - half_width - fuzz) as i64;
        let hi = math::floor(-center + half_width + fuzz) as i64;
        for candidate in lo..=hi {
            let w = u_ll * (candidate as f64 + center);
            let grown = partial + w * w;
            if grown > self.radius_sq * (1.0 + 1e-9) {
                continue;
            }
            self.point[level] = candidate;
            if level == 0 {
                match visit(&self.point, grown) {
                    Visit::Continue => {}
                    Visit::Shrink(r2) => self.radius_sq = r2,
                    Visit::Abort => {
                        self.aborted = true;
                        return;
                    }
                }
            } else {
                self.descend(level - 1, grown, visit);
                if self.aborted {
                    return;
                }
            }
        }
    }
}
