//! Deterministic product quadrature on the unit 2-sphere and 3-sphere.
//!
//! Hyperspherical angles are integrated by one Gauss rule per angle: the
//! 3-sphere polar angle carries the weight `sin²χ`, for which the second-kind
//! Chebyshev rule has closed-form nodes and weights; the remaining polar
//! angle uses Gauss–Legendre nodes found by Newton iteration on the standard
//! three-term recurrence; the azimuth uses a uniform grid.  The product rule
//! at `level` L integrates every polynomial of total degree ≤ 2L−1 exactly,
//! and all sums use a fixed pairwise tree so results are bit-reproducible
//! regardless of how node evaluations are scheduled.

use alloc::vec::Vec;

use crate::math;
use crate::{Error, Result};

/// Product rule on the unit 3-sphere: `nodes` are unit 4-vectors ordered
/// `[x₁, x₂, x₃, τ]` with the pole at `τ = +1`, and `Σ weights = 2π²`.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub nodes: Vec<[f64; 4]>,
    pub weights: Vec<f64>,
    pub level: u32,
}

/// Product rule on the unit 2-sphere: `nodes` are unit 3-vectors with the
/// pole along the third axis, and `Σ weights = 4π`.
#[derive(Clone, Debug)]
pub struct SurfaceRule3 {
    pub nodes: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
    pub level: u32,
}

/// Fixed-shape pairwise (binary-tree) summation; the tree depends only on
/// the slice length, never on evaluation order or thread count.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 8 {
        let mut acc = 0.0;
        for v in values {
            acc += v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Second-kind Chebyshev rule for `∫_{-1}^{1} f(t)√(1-t²) dt`: nodes
/// `cos(jπ/(L+1))`, weights `π/(L+1)·sin²(jπ/(L+1))`; exact through degree
/// `2L-1`.
fn chebyshev_second(level: u32) -> (Vec<f64>, Vec<f64>) {
    let l = level as usize;
    let step = math::PI / (l as f64 + 1.0);
    let mut nodes = Vec::with_capacity(l);
    let mut weights = Vec::with_capacity(l);
    for j in 1..=l {
        let angle = step * j as f64;
        let s = math::sin(angle);
        nodes.push(math::cos(angle));
        weights.push(step * s * s);
    }
    (nodes, weights)
}

/// Value and derivative of the degree-`l` Legendre polynomial by the stable
/// three-term recurrence.
fn legendre_value(l: u32, x: f64) -> (f64, f64) {
    if l == 0 {
        return (1.0, 0.0);
    }
    let mut prev = 1.0;
    let mut cur = x;
    for m in 2..=l {
        let mf = m as f64;
        let next = ((2.0 * mf - 1.0) * x * cur - (mf - 1.0) * prev) / mf;
        prev = cur;
        cur = next;
    }
    let derivative = f64::from(l) * (x * cur - prev) / (x * x - 1.0);
    (cur, derivative)
}

/// Gauss–Legendre rule on `[-1, 1]`: Newton iteration from the Chebyshev
/// initial guesses; deterministic node order (descending).
fn gauss_legendre(level: u32) -> (Vec<f64>, Vec<f64>) {
    let l = level as usize;
    let mut nodes = Vec::with_capacity(l);
    let mut weights = Vec::with_capacity(l);
    for i in 1..=l {
        let mut x = math::cos(math::PI * (i as f64 - 0.25) / (level as f64 + 0.5));
        let mut dp = 1.0;
        for _ in 0..64 {
            let (p, d) = legendre_value(level, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if math::abs(dx) < 1e-15 {
                let (_, d2) = legendre_value(level, x);
                dp = d2;
                break;
            }
        }
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

/// Uniform azimuth grid: `2·level` points, exact for trigonometric degree
/// `2·level - 1`.
fn azimuth(level: u32) -> (Vec<f64>, f64) {
    let m = 2 * level as usize;
    let step = 2.0 * math::PI / m as f64;
    ((0..m).map(|j| step * j as f64).collect(), step)
}

/// Product rule on the unit 3-sphere with polynomial exactness through total
/// degree `2·level - 1`.
pub fn s3_quadrature(level: u32) -> Result<QuadratureRule> {
    if level == 0 {
        return Err(Error::InvalidParameter("quadrature level must be at least 1"));
    }
    let (polar, polar_w) = chebyshev_second(level);
    let (inner, inner_w) = gauss_legendre(level);
    let (phi, phi_w) = azimuth(level);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (tau, wt) in polar.iter().zip(&polar_w) {
        let ring = math::sqrt(1.0 - tau * tau);
        for (cos_theta, wu) in inner.iter().zip(&inner_w) {
            let sin_theta = math::sqrt(1.0 - cos_theta * cos_theta);
            for p in &phi {
                nodes.push([
                    ring * sin_theta * math::cos(*p),
                    ring * sin_theta * math::sin(*p),
                    ring * cos_theta,
                    *tau,
                ]);
                weights.push(wt * wu * phi_w);
            }
        }
    }
    Ok(QuadratureRule { nodes, weights, level })
}

/// Product rule on the unit 2-sphere with polynomial exactness through total
/// degree `2·level - 1`.
pub fn s2_quadrature(level: u32) -> Result<SurfaceRule3> {
    if level == 0 {
        return Err(Error::InvalidParameter("quadrature level must be at least 1"));
    }
    let (polar, polar_w) = gauss_legendre(level);
    let (phi, phi_w) = azimuth(level);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (cos_theta, wu) in polar.iter().zip(&polar_w) {
        let sin_theta = math::sqrt(1.0 - cos_theta * cos_theta);
        for p in &phi {
            nodes.push([sin_theta * math::cos(*p), sin_theta * math::sin(*p), *cos_theta]);
            weights.push(wu * phi_w);
        }
    }
    Ok(SurfaceRule3 { nodes, weights, level })
}

impl QuadratureRule {
    /// Integrate `f` over the 3-sphere: weighted evaluations reduced by the
    /// fixed pairwise tree.
    pub fn integrate(&self, mut f: impl FnMut(&[f64; 4]) -> f64) -> f64 {
        let contributions: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(node, w)| w * f(node))
            .collect();
        pairwise_sum(&contributions)
    }

    /// Rotate the rule so its pole `[0,0,0,1]` lands on `target` (a unit
    /// vector), via the Householder reflection exchanging the two; weights
    /// are unchanged.  Aligning the pole with a surface evaluation point
    /// turns kernel singularities into smooth per-ring integrands.
    pub fn align_pole(&self, target: [f64; 4]) -> Self {
        let pole = [0.0, 0.0, 0.0, 1.0];
        let v: Vec<f64> = pole.iter().zip(&target).map(|(a, b)| a - b).collect();
        let vv: f64 = v.iter().map(|c| c * c).sum();
        if vv < 1e-28 {
            return self.clone();
        }
        let nodes = self
            .nodes
            .iter()
            .map(|node| {
                let vn: f64 = v.iter().zip(node).map(|(a, b)| a * b).sum();
                let scale = 2.0 * vn / vv;
                [
                    node[0] - scale * v[0],
                    node[1] - scale * v[1],
                    node[2] - scale * v[2],
                    node[3] - scale * v[3],
                ]
            })
            .collect();
        QuadratureRule { nodes, weights: self.weights.clone(), level: self.level }
    }
}

impl SurfaceRule3 {
    /// Integrate `f` over the 2-sphere with the fixed pairwise reduction.
    pub fn integrate(&self, mut f: impl FnMut(&[f64; 3]) -> f64) -> f64 {
        let contributions: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(node, w)| w * f(node))
            .collect();
        pairwise_sum(&contributions)
    }
}
