//! Floating-point verification layer: surface-potential identities on the
//! 2-sphere and 3-sphere, the sphere integral equation for the momentum
//! states, kernel-expansion identities, and the spectral resolvent sum with
//! its pole structure.
//!
//! Singular kernels are always evaluated where the integrand is smooth —
//! either at interior points, or on the surface after subtracting the
//! diagonal so that the pole-aligned product rule sees polynomial ring
//! averages.  The distributional part of the resolvent is reported
//! symbolically (as a unit coefficient), never expanded numerically.

use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::hydrogen::{axial_solid_harmonic, momentum_state_gegenbauer, solid_harmonic_4d};
use crate::math;
use crate::quadrature::{pairwise_sum, s2_quadrature, s3_quadrature};
use crate::radial::RadialForm;
use crate::scalar::{ExactScalar, Rat};
use crate::{Error, Result};

// ----------------------------------------------------------- float bridges

/// Nearest double to an exact rational.
pub fn rat_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Nearest double pair `(re, im)` to an exact scalar.
pub fn scalar_f64(c: &ExactScalar) -> (f64, f64) {
    (rat_f64(&c.re), rat_f64(&c.im))
}

fn fpowi(x: f64, n: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..n {
        acc *= x;
    }
    acc
}

/// Evaluate a radial form at a float point of matching dimension, returning
/// `(re, im)`.  Handles the stray radius factor, radius and Cauchy
/// denominators, and the exponential weight.
pub fn eval_form(form: &RadialForm, point: &[f64]) -> (f64, f64) {
    let r2: f64 = point.iter().map(|x| x * x).sum();
    let r = math::sqrt(r2);
    let mut re = 0.0;
    let mut im = 0.0;
    for (t, c) in form.terms() {
        let mut mono = 1.0;
        for (x, p) in point.iter().zip(&t.powers) {
            mono *= fpowi(*x, u32::from(*p));
        }
        if t.r_parity {
            mono *= r;
        }
        let (cr, ci) = scalar_f64(c);
        re += cr * mono;
        im += ci * mono;
    }
    let mut scale = math::exp(-rat_f64(form.exp_rate()) * r);
    scale /= fpowi(r, form.r_power());
    scale /= fpowi(1.0 + r2, form.cauchy_power());
    (re * scale, im * scale)
}

// -------------------------------------------------------------- reporting

/// One verified identity: a computed value, its reference, and the relative
/// error `|lhs-rhs| / max(1, |rhs|)`.
#[derive(Clone, Debug)]
pub struct CheckLine {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_error: f64,
}

impl CheckLine {
    pub fn new(name: &'static str, lhs: f64, rhs: f64) -> Self {
        let scale = if math::abs(rhs) > 1.0 { math::abs(rhs) } else { 1.0 };
        CheckLine { name, lhs, rhs, rel_error: math::abs(lhs - rhs) / scale }
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.rel_error < tolerance
    }
}

// ------------------------------------------------- kernel expansion values

/// `C_k¹(t)` by the exact three-term recurrence `C_k = 2t·C_{k-1} - C_{k-2}`.
pub fn gegenbauer_value(k: u32, t: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 2.0 * t;
    for _ in 2..=k {
        let next = 2.0 * t * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn norm4(v: &[f64; 4]) -> f64 {
    math::sqrt(v.iter().map(|c| c * c).sum())
}

fn dot4(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dist_sq4(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

// ------------------------------------------- surface-potential identities

/// Single-layer potential of a degree-`l` axial surface harmonic on the unit
/// 2-sphere, evaluated at an interior point and compared with the closed
/// interior form `(4π/(2l+1))·Y_l(x)`.  Returns
/// `(integral, closed_form, rel_error)`.
pub fn newton_check_3d(l: u32, point: [f64; 3], level: u32) -> Result<(f64, f64, f64)> {
    let r: f64 = math::sqrt(point.iter().map(|c| c * c).sum());
    if r >= 1.0 - 1e-9 {
        return Err(Error::InvalidParameter("evaluation point must lie inside the unit sphere"));
    }
    let harmonic = axial_solid_harmonic(l);
    let rule = s2_quadrature(level)?;
    let integral = rule.integrate(|node| {
        let value = eval_form(&harmonic, node).0;
        let d2: f64 = node.iter().zip(&point).map(|(a, b)| (a - b) * (a - b)).sum();
        value / math::sqrt(d2)
    });
    let closed = 4.0 * math::PI / (2.0 * f64::from(l) + 1.0) * eval_form(&harmonic, &point).0;
    let line = CheckLine::new("surface-potential-3d", integral, closed);
    Ok((integral, closed, line.rel_error))
}

/// Inverse-square single-layer potential of a degree-`(n-1)` solid harmonic
/// on the unit 3-sphere at an interior point, against the eigenvalue form
/// `(2π²/n)·𝓜(y)`.  Returns `(integral, closed_form, rel_error)`.
pub fn fock_check_4d(n: u32, l: u32, point: [f64; 4], level: u32) -> Result<(f64, f64, f64)> {
    if norm4(&point) >= 1.0 - 1e-9 {
        return Err(Error::InvalidParameter("evaluation point must lie inside the unit sphere"));
    }
    let harmonic = solid_harmonic_4d(n, l)?;
    let rule = s3_quadrature(level)?;
    let integral = rule.integrate(|node| eval_form(&harmonic, node).0 / dist_sq4(node, &point));
    let closed = 2.0 * math::PI * math::PI / f64::from(n) * eval_form(&harmonic, &point).0;
    let line = CheckLine::new("surface-potential-4d", integral, closed);
    Ok((integral, closed, line.rel_error))
}

/// Evaluate the degree-`(n-1)` momentum sphere function at a point of the
/// unit 3-sphere by pulling the point back through the stereographic map and
/// evaluating the momentum-space form.
fn sphere_function_via_momentum(state: &RadialForm, node: &[f64; 4]) -> Result<f64> {
    let den = 1.0 - node[3];
    if math::abs(den) < 1e-300 {
        return Err(Error::DivisionByZero);
    }
    let p = [node[0] / den, node[1] / den, node[2] / den];
    Ok(eval_form(state, &p).0)
}

/// Sphere integral equation for a momentum state pushed through the
/// stereographic map: at a surface point `ξ`,
/// `ψ(ξ) = (n/2π²)∫ ψ(ξ′)/|ξ-ξ′|² dS′`, verified with the diagonal
/// subtracted (the self-kernel integrates to exactly `2π²`) and the rule
/// pole-aligned at `ξ` so each ring integrand is polynomial.  Returns
/// `(lhs, rhs, rel_error)` with `lhs = ψ(ξ)`.
pub fn fock_surface_check(n: u32, l: u32, point: [f64; 4], level: u32) -> Result<(f64, f64, f64)> {
    if math::abs(norm4(&point) - 1.0) > 1e-9 {
        return Err(Error::InvalidParameter("evaluation point must lie on the unit sphere"));
    }
    let state = momentum_state_gegenbauer(n, l)?;
    let at_point = sphere_function_via_momentum(&state, &point)?;
    let rule = s3_quadrature(level)?.align_pole(point);
    let contributions: Result<Vec<f64>> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(node, w)| {
            let value = sphere_function_via_momentum(&state, node)?;
            Ok(w * (value - at_point) / dist_sq4(node, &point))
        })
        .collect();
    let subtracted = pairwise_sum(&contributions?);
    let volume = 2.0 * math::PI * math::PI;
    let rhs = f64::from(n) / volume * (subtracted + volume * at_point);
    let line = CheckLine::new("sphere-integral-equation", at_point, rhs);
    Ok((at_point, rhs, line.rel_error))
}

// --------------------------------------------------- kernel identity suite

/// Kernel-expansion identities for the degree-`k` term: the interior
/// eigen-identity, orthogonality on the surface (diagonal and one
/// off-diagonal partner), and the generating-function resummation at radius
/// `|interior|`.
///
/// `axis` and `surface` must be unit 4-vectors, `interior` strictly inside
/// the sphere.
pub fn gegenbauer_kernel_checks(
    k: u32,
    axis: [f64; 4],
    interior: [f64; 4],
    surface: [f64; 4],
    level: u32,
    terms: u32,
) -> Result<Vec<CheckLine>> {
    if math::abs(norm4(&axis) - 1.0) > 1e-9 || math::abs(norm4(&surface) - 1.0) > 1e-9 {
        return Err(Error::InvalidParameter("axis and surface points must be unit vectors"));
    }
    let rho = norm4(&interior);
    if rho >= 1.0 - 1e-9 {
        return Err(Error::InvalidParameter("interior point must lie inside the unit sphere"));
    }
    let rule = s3_quadrature(level)?;
    let volume = 2.0 * math::PI * math::PI;
    let mut lines = Vec::new();

    // (a) interior eigen-identity against the solid zonal extension
    let eigen_lhs =
        rule.integrate(|node| gegenbauer_value(k, dot4(&axis, node)) / dist_sq4(node, &interior));
    let eigen_rhs = if rho < 1e-15 {
        if k == 0 {
            volume
        } else {
            0.0
        }
    } else {
        let cos_gamma = dot4(&axis, &interior) / rho;
        volume / (f64::from(k) + 1.0) * fpowi(rho, k) * gegenbauer_value(k, cos_gamma)
    };
    lines.push(CheckLine::new("kernel-eigenvalue", eigen_lhs, eigen_rhs));

    // (b) surface orthogonality: diagonal pairing and one mismatched degree
    let diag_lhs = rule.integrate(|node| {
        gegenbauer_value(k, dot4(&axis, node)) * gegenbauer_value(k, dot4(node, &surface))
    });
    let diag_rhs =
        volume / (f64::from(k) + 1.0) * gegenbauer_value(k, dot4(&axis, &surface));
    lines.push(CheckLine::new("kernel-orthogonality-diagonal", diag_lhs, diag_rhs));
    let off_lhs = rule.integrate(|node| {
        gegenbauer_value(k, dot4(&axis, node)) * gegenbauer_value(k + 1, dot4(node, &surface))
    });
    lines.push(CheckLine::new("kernel-orthogonality-mismatch", off_lhs, 0.0));

    // (c) generating function at radius ρ along the axis angle
    let cos_phi = if rho < 1e-15 { 1.0 } else { dot4(&axis, &interior) / rho };
    let partial: Vec<f64> =
        (0..=terms).map(|j| fpowi(rho, j) * gegenbauer_value(j, cos_phi)).collect();
    let series = pairwise_sum(&partial);
    let closed = 1.0 / (1.0 - 2.0 * rho * cos_phi + rho * rho);
    lines.push(CheckLine::new("kernel-generating-function", series, closed));

    Ok(lines)
}

// ----------------------------------------------------------- resolvent sum

/// Query for the spectral sum: kernel angle, spectral parameter, truncation.
#[derive(Clone, Copy, Debug)]
pub struct ResolventQuery {
    pub cos_angle: f64,
    pub lambda: f64,
    pub terms: u32,
}

/// Truncated resolvent: the convergent (smoothed) series, the assembled
/// value with the explicit kernel term restored, an oscillation-based bound
/// on the truncation tail, and the coefficient of the symbolic point mass
/// (which is never expanded numerically).
#[derive(Clone, Copy, Debug)]
pub struct ResolventEvaluation {
    pub smooth_sum: f64,
    pub assembled_value: f64,
    pub tail_bound: f64,
    pub delta_coefficient: f64,
}

fn resolvent_guards(q: &ResolventQuery) -> Result<()> {
    if !(q.cos_angle >= -1.0 && q.cos_angle <= 1.0) {
        return Err(Error::InvalidParameter("cosine of the kernel angle must lie in [-1, 1]"));
    }
    if q.terms == 0 {
        return Err(Error::InvalidParameter("the truncation order must be at least 1"));
    }
    let nearest = libm::round(q.lambda);
    if nearest >= 1.0 && math::abs(q.lambda - nearest) < 1e-9 {
        return Err(Error::InvalidParameter("spectral parameter sits on a pole"));
    }
    Ok(())
}

/// Smoothed spectral sum `(λ²/2π²) Σ_{k≤K} C_k¹(cosφ)/(k+1-λ)` plus the
/// assembled value with the kernel term `λ/(2π²|x-y|²)` restored
/// (`|x-y|² = 2-2cosφ` on the unit sphere).
pub fn resolvent(q: &ResolventQuery) -> Result<ResolventEvaluation> {
    resolvent_guards(q)?;
    let volume = 2.0 * math::PI * math::PI;
    if q.lambda == 0.0 {
        return Ok(ResolventEvaluation {
            smooth_sum: 0.0,
            assembled_value: 0.0,
            tail_bound: 0.0,
            delta_coefficient: 1.0,
        });
    }
    if q.cos_angle == 1.0 {
        return Err(Error::InvalidParameter("kernel term diverges at coincident points"));
    }
    let contributions: Vec<f64> = (0..=q.terms)
        .map(|k| gegenbauer_value(k, q.cos_angle) / (f64::from(k) + 1.0 - q.lambda))
        .collect();
    let smooth_sum = q.lambda * q.lambda / volume * pairwise_sum(&contributions);
    let assembled_value = smooth_sum + q.lambda / (volume * (2.0 - 2.0 * q.cos_angle));

    // Tail of the oscillatory series by partial summation: the sine partial
    // sums are bounded by 1/sin(φ/2) and the weights decrease once k+1 > λ.
    let phi = math::acos(q.cos_angle);
    let sin_phi = math::sin(phi);
    let tail_bound = if sin_phi < 1e-15 || f64::from(q.terms) + 2.0 - q.lambda <= 0.0 {
        f64::INFINITY
    } else {
        let bound = 1.0 / (sin_phi * math::sin(phi / 2.0));
        q.lambda * q.lambda / volume * 2.0 * bound
            / (f64::from(q.terms) + 2.0 - q.lambda)
    };
    Ok(ResolventEvaluation { smooth_sum, assembled_value, tail_bound, delta_coefficient: 1.0 })
}

/// The same truncated smooth sum assembled the long way round: the raw
/// spectral series `(1/2π²) Σ C_k (k+1)²/(k+1-λ)` minus the point-mass
/// series `(1/2π²) Σ (k+1)C_k` minus `λ` times the kernel series
/// `(1/2π²) Σ C_k`, each summed separately before combining.  Agrees with
/// [`resolvent`]'s `smooth_sum` up to floating-point rearrangement.
pub fn resolvent_series_route(q: &ResolventQuery) -> Result<f64> {
    resolvent_guards(q)?;
    if q.lambda == 0.0 {
        return Ok(0.0);
    }
    let values: Vec<f64> = (0..=q.terms).map(|k| gegenbauer_value(k, q.cos_angle)).collect();
    let raw: Vec<f64> = values
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let kp = k as f64 + 1.0;
            c * kp * kp / (kp - q.lambda)
        })
        .collect();
    let point_mass: Vec<f64> =
        values.iter().enumerate().map(|(k, c)| c * (k as f64 + 1.0)).collect();
    let volume = 2.0 * math::PI * math::PI;
    Ok((pairwise_sum(&raw) - pairwise_sum(&point_mass) - q.lambda * pairwise_sum(&values))
        / volume)
}
