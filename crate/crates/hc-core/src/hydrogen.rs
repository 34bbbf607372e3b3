//! Bound states of the attractive `1/r` problem in three exact pictures:
//! coordinate-space wave functions with their eigenvalue equation, momentum-
//! space functions with the stereographic sphere map, and four-dimensional
//! harmonic polynomials, together with the derivative bridge that collapses
//! the four-dimensional picture back onto the coordinate wave functions.
//!
//! Two radius conventions appear throughout and are always explicit:
//! `UnitOrbit` measures the radius in units of the orbit size (states carry
//! `e^{-r}` and radial argument `2r`), `Physical` keeps the bare radius
//! (states carry `e^{-r/n}` and argument `2r/n`).

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::harmonic::harmonic_tensor;
use crate::radial::RadialForm;
use crate::scalar::{factorial, rat, rat_int, ExactScalar, Rat};
use crate::special::{
    collapse_with_power, confluent_poly, gauss_2f1_poly, gegenbauer_poly, legendre_poly,
    pochhammer, Poly1,
};
use crate::tensor::SymTensor;
use crate::{Error, Result};

/// Radius convention carried by every state construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RadiusConvention {
    /// Radius in units of the orbit size: `e^{-r}`, radial argument `2r`,
    /// eigenvalue equation `(-Δ + 1)Ψ = (2n/r)Ψ`.
    UnitOrbit,
    /// Bare radius: `e^{-r/n}`, argument `2r/n`, eigenvalue `-1/(2n²)`.
    Physical,
}

/// Validate `(n, l)` and return the radial index `k = n - l - 1`.
fn radial_index(n: u32, l: u32) -> Result<u32> {
    if n == 0 {
        return Err(Error::InvalidParameter("principal number must be at least 1"));
    }
    if l >= n {
        return Err(Error::InvalidParameter("orbital number must be below the principal number"));
    }
    Ok(n - l - 1)
}

/// Energy of the `n`-th level: `-1/(2n²)` in the physical convention; in the
/// unit-orbit convention every level sits at `-1/2` (the rescaling moves `n`
/// into the coupling `2n/r`).
pub fn energy(n: u32, convention: RadiusConvention) -> Result<Rat> {
    if n == 0 {
        return Err(Error::InvalidParameter("principal number must be at least 1"));
    }
    Ok(match convention {
        RadiusConvention::Physical => -Rat::new(BigInt::one(), BigInt::from(2 * u64::from(n) * u64::from(n))),
        RadiusConvention::UnitOrbit => rat(-1, 2),
    })
}

/// `Σ_j a_j x_axis^j s^{(l-j)/2}` for the Legendre coefficients `a_j` of
/// `P_l`: the degree-`l` solid harmonic about `axis`, with `s` the squared
/// radius of the relevant subspace. Only `j ≡ l (mod 2)` occurs, so the
/// result is a genuine polynomial.
fn legendre_solid(dim: usize, axis: usize, s: &RadialForm, l: u32) -> Result<RadialForm> {
    let p = legendre_poly(l);
    let mut acc = RadialForm::zero(dim);
    for (j, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let j = j as u32;
        debug_assert_eq!((l - j) % 2, 0, "Legendre parity");
        let mut powers = alloc::vec![0u16; dim];
        powers[axis] = j as u16;
        let mono = RadialForm::monomial(dim, &powers, c.clone())?;
        acc = acc.try_add(&mono.try_mul(&s.try_pow((l - j) / 2)?)?)?;
    }
    Ok(acc)
}

/// The axial degree-`l` solid harmonic `r^l P_l(z/r)` in three dimensions
/// (`z` = axis 2): a harmonic polynomial used as the scalar angular factor.
pub fn axial_solid_harmonic(l: u32) -> RadialForm {
    legendre_solid(3, 2, &RadialForm::radius_squared(3), l).expect("static construction")
}

/// Convert a univariate polynomial in `r` into a radial form (odd powers of
/// `r` become parity-carrying terms).
fn poly_r_to_form(dim: usize, p: &Poly1) -> Result<RadialForm> {
    let mut acc = RadialForm::zero(dim);
    for (m, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = acc.try_add(&RadialForm::radius_pow(dim, m as u32).scalar_mul(c))?;
    }
    Ok(acc)
}

/// The scalar radial factor `F(-k, 2l+2; scale·r)·e^{-rate·r}` of the
/// `(n, l)` bound state in the given convention.
pub fn radial_factor(n: u32, l: u32, convention: RadiusConvention) -> Result<RadialForm> {
    let k = radial_index(n, l)?;
    let (scale, rate) = match convention {
        RadiusConvention::UnitOrbit => (rat_int(2), Rat::one()),
        RadiusConvention::Physical => (rat(2, i64::from(n)), Rat::new(BigInt::one(), BigInt::from(n))),
    };
    let beta = rat_int(2 * i64::from(l) + 2);
    let poly = confluent_poly(k, &beta, &scale)?;
    poly_r_to_form(3, &poly)?.mul_exp_weight(&rate)
}

/// Coordinate-space bound state as a rank-`l` tensor: every component is a
/// harmonic-tensor component times the shared radial factor. Normalization
/// is deliberately left free.
pub fn psi_coordinate(n: u32, l: u32, convention: RadiusConvention) -> Result<SymTensor> {
    let radial = radial_factor(n, l, convention)?;
    harmonic_tensor(3, l as usize)?.try_form_mul(&radial)
}

/// Scalar representative of the bound state: axial solid harmonic times the
/// radial factor.
pub fn psi_coordinate_axial(n: u32, l: u32, convention: RadiusConvention) -> Result<RadialForm> {
    let radial = radial_factor(n, l, convention)?;
    axial_solid_harmonic(l).try_mul(&radial)
}

/// Residual of the eigenvalue equation on a scalar component:
/// `(-Δ + 1 - 2n/r)ψ` (unit-orbit) or `(-Δ/2 - 1/r + 1/(2n²))ψ` (physical).
/// Zero exactly on true bound-state components.
pub fn schrodinger_residual(
    psi: &RadialForm,
    n: u32,
    convention: RadiusConvention,
) -> Result<RadialForm> {
    if n == 0 {
        return Err(Error::InvalidParameter("principal number must be at least 1"));
    }
    match convention {
        RadiusConvention::UnitOrbit => {
            let coulomb = psi.div_r_pow(1).rat_mul(&rat_int(2 * i64::from(n)));
            psi.laplacian()?.neg().try_add(psi)?.try_sub(&coulomb)
        }
        RadiusConvention::Physical => {
            let kinetic = psi.laplacian()?.rat_mul(&rat(-1, 2));
            let coulomb = psi.div_r_pow(1);
            let shift = psi.rat_mul(&Rat::new(BigInt::one(), BigInt::from(2 * u64::from(n) * u64::from(n))));
            kinetic.try_sub(&coulomb)?.try_add(&shift)
        }
    }
}

/// Apply [`schrodinger_residual`] to every component of the `(n, l)` state.
pub fn verify_schrodinger(n: u32, l: u32, convention: RadiusConvention) -> Result<SymTensor> {
    psi_coordinate(n, l, convention)?
        .try_map_forms(|f| schrodinger_residual(f, n, convention))
}

/// Residuals of the squared radial equation chain in the unit-orbit
/// convention; all three vanish exactly on bound states.
pub struct SquaredEquationResiduals {
    /// `r(-Δ+1)r(-Δ+1)Ψ - 4n²Ψ`.
    pub doubled_operator: RadialForm,
    /// `[r²(Δ-1)² + 2(l̂+1)(Δ-1)]Ψ - 4n²Ψ` with `l̂ = x·∇`.
    pub expanded_operator: RadialForm,
    /// `[(Δ-1)²r² + 2(Δ-1)(l̂+3)]Φ - 4(n²-1)Φ` for `Φ = (Δ-1)²Ψ`
    /// (the coordinate shadow of the momentum-sphere eigenvalue problem).
    pub spectral_shift: RadialForm,
}

/// Verify the squared eigenvalue equation and its rearrangements on the
/// axial component of the `(n, l)` state.
pub fn squared_equation_check(n: u32, l: u32) -> Result<SquaredEquationResiduals> {
    let psi = psi_coordinate_axial(n, l, RadiusConvention::UnitOrbit)?;
    let shifted = |f: &RadialForm| -> Result<RadialForm> { f.laplacian()?.neg().try_add(f) };
    let radius = RadialForm::radius(3);
    let four_n2 = rat_int(4 * i64::from(n) * i64::from(n));

    let inner = radius.try_mul(&shifted(&psi)?)?;
    let doubled = radius.try_mul(&shifted(&inner)?)?.try_sub(&psi.rat_mul(&four_n2))?;

    // (Δ-1) = -(−Δ+1)
    let minus_shift = |f: &RadialForm| -> Result<RadialForm> { Ok(shifted(f)?.neg()) };
    let h = minus_shift(&psi)?;
    let h2 = minus_shift(&h)?;
    let term1 = h2.try_mul(&RadialForm::radius_squared(3))?;
    let term2 = h.euler_degree()?.try_add(&h)?.rat_mul(&rat_int(2));
    let expanded = term1.try_add(&term2)?.try_sub(&psi.rat_mul(&four_n2))?;

    let phi = minus_shift(&minus_shift(&psi)?)?;
    let t1 = {
        let scaled = phi.try_mul(&RadialForm::radius_squared(3))?;
        minus_shift(&minus_shift(&scaled)?)?
    };
    let t2 = {
        let counted = phi.euler_degree()?.try_add(&phi.rat_mul(&rat_int(3)))?;
        minus_shift(&counted)?.rat_mul(&rat_int(2))
    };
    let four_shifted = rat_int(4 * (i64::from(n) * i64::from(n) - 1));
    let spectral = t1.try_add(&t2)?.try_sub(&phi.rat_mul(&four_shifted))?;

    Ok(SquaredEquationResiduals {
        doubled_operator: doubled,
        expanded_operator: expanded,
        spectral_shift: spectral,
    })
}

// ---------------------------------------------------------------------------
// Stereographic momentum sphere
// ---------------------------------------------------------------------------

fn norm_sq(p: &[Rat]) -> Rat {
    p.iter().map(|x| x * x).sum()
}

/// Stereographic image of a momentum point: `ξ = 2p/(1+p²)` (3-vector) and
/// `ξ₀ = (p²-1)/(p²+1)`; lands exactly on the unit 3-sphere.
pub fn fock_map(p: &[Rat]) -> Result<(Vec<Rat>, Rat)> {
    if p.len() != 3 {
        return Err(Error::DimensionMismatch { left: p.len(), right: 3 });
    }
    let p2 = norm_sq(p);
    let den = Rat::one() + p2.clone();
    let xi = p.iter().map(|x| Rat::from_integer(2.into()) * x / den.clone()).collect();
    let xi0 = (p2 - Rat::one()) / den;
    Ok((xi, xi0))
}

/// Inverse of [`fock_map`]: `p = ξ/(1-ξ₀)`. Fails at the pole `ξ₀ = 1`.
pub fn fock_unmap(xi: &[Rat], xi0: &Rat) -> Result<Vec<Rat>> {
    if xi.len() != 3 {
        return Err(Error::DimensionMismatch { left: xi.len(), right: 3 });
    }
    let den = Rat::one() - xi0.clone();
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(xi.iter().map(|x| x / den.clone()).collect())
}

/// Conformal contraction factor `(1+p²)/2` of the stereographic map.
pub fn conformal_factor(p: &[Rat]) -> Result<Rat> {
    if p.len() != 3 {
        return Err(Error::DimensionMismatch { left: p.len(), right: 3 });
    }
    Ok((Rat::one() + norm_sq(p)) / Rat::from_integer(2.into()))
}

/// Volume factor in `d³p = ((1+p²)³/8)·dS`: the cube of the conformal
/// factor.
pub fn fock_volume_factor(p: &[Rat]) -> Result<Rat> {
    let c = conformal_factor(p)?;
    Ok(c.clone() * c.clone() * c)
}

/// Both sides of the kernel identity
/// `1/|p-p'|² = (2/(p²+1)) · 1/|ξ-ξ'|² · (2/(p'²+1))`
/// where `|ξ-ξ'|²` is the chordal distance on the sphere (4 components).
/// Returned as exact rationals; the two entries are equal.
pub fn fock_kernel_identity(p: &[Rat], q: &[Rat]) -> Result<(Rat, Rat)> {
    let diff: Rat = p
        .iter()
        .zip(q)
        .map(|(a, b)| {
            let d = a - b;
            d.clone() * d
        })
        .sum();
    if diff.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let lhs = diff.recip();
    let (xi, xi0) = fock_map(p)?;
    let (eta, eta0) = fock_map(q)?;
    let mut chord: Rat = xi
        .iter()
        .zip(&eta)
        .map(|(a, b)| {
            let d = a - b;
            d.clone() * d
        })
        .sum();
    let d0 = xi0 - eta0;
    chord += d0.clone() * d0;
    let two = Rat::from_integer(2.into());
    let rhs = (two.clone() / (Rat::one() + norm_sq(p))) * chord.recip()
        * (two / (Rat::one() + norm_sq(q)));
    Ok((lhs, rhs))
}

// ---------------------------------------------------------------------------
// Momentum-space states
// ---------------------------------------------------------------------------

/// `(1+p²)` as a polynomial form.
fn one_plus_p2() -> RadialForm {
    RadialForm::one(3)
        .try_add(&RadialForm::radius_squared(3))
        .expect("static construction")
}

/// `(p²-1)` as a polynomial form.
fn p2_minus_one() -> RadialForm {
    RadialForm::radius_squared(3)
        .try_sub(&RadialForm::one(3))
        .expect("static construction")
}

/// Momentum-sphere function `b_{nl}`: axial solid harmonic times
/// `(1+p²)^{-l}` times the terminating Gauss series
/// `₂F(-k, 2l+k+2; l+3/2; u)` in `u = 1/(1+p²)`, assembled exactly over the
/// denominator `(1+p²)^{k+l}`.
pub fn momentum_state(n: u32, l: u32) -> Result<RadialForm> {
    let k = radial_index(n, l)?;
    let b_param = rat_int(2 * i64::from(l) + i64::from(k) + 2);
    let c_param = rat(2 * i64::from(l) + 3, 2);
    let series = gauss_2f1_poly(k, &b_param, &c_param)?;
    let plus = one_plus_p2();
    let mut numerator = RadialForm::zero(3);
    for (j, c) in series.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let piece = plus.try_pow(k - j as u32)?.scalar_mul(c);
        numerator = numerator.try_add(&piece)?;
    }
    let angular = legendre_solid(3, 2, &RadialForm::radius_squared(3), l)?;
    Ok(angular.try_mul(&numerator)?.div_cauchy_pow(k + l))
}

/// The same sphere function built from the Gegenbauer polynomial instead of
/// the Gauss series: `Y_l(ξ)·C_k^{l+1}(ξ₀)` written out over `(1+p²)^{k+l}`.
/// Proportional to [`momentum_state`] with constant `2^l (2l+2)_k / k!`.
pub fn momentum_state_gegenbauer(n: u32, l: u32) -> Result<RadialForm> {
    let k = radial_index(n, l)?;
    let geg = gegenbauer_poly(k, l + 1);
    let plus = one_plus_p2();
    let minus = p2_minus_one();
    let mut numerator = RadialForm::zero(3);
    for (e, c) in geg.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = e as u32;
        let piece = minus.try_pow(e)?.try_mul(&plus.try_pow(k - e)?)?.scalar_mul(c);
        numerator = numerator.try_add(&piece)?;
    }
    let angular = legendre_solid(3, 2, &RadialForm::radius_squared(3), l)?;
    let two_l = ExactScalar::from_bigint(BigInt::one() << l);
    Ok(angular
        .try_mul(&numerator)?
        .scalar_mul(&two_l)
        .div_cauchy_pow(k + l))
}

/// Tensor-valued momentum-sphere function: harmonic-tensor components times
/// the shared radial factor of [`momentum_state`].
pub fn momentum_state_tensor(n: u32, l: u32) -> Result<SymTensor> {
    let k = radial_index(n, l)?;
    let b_param = rat_int(2 * i64::from(l) + i64::from(k) + 2);
    let c_param = rat(2 * i64::from(l) + 3, 2);
    let series = gauss_2f1_poly(k, &b_param, &c_param)?;
    let plus = one_plus_p2();
    let mut numerator = RadialForm::zero(3);
    for (j, c) in series.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        numerator = numerator.try_add(&plus.try_pow(k - j as u32)?.scalar_mul(c))?;
    }
    let radial = numerator.div_cauchy_pow(k + l);
    harmonic_tensor(3, l as usize)?.try_form_mul(&radial)
}

/// Momentum wave function `a_{nl} = b_{nl}/(1+p²)²` (the sphere function
/// with the conformal weight restored).
pub fn momentum_wavefunction(n: u32, l: u32) -> Result<RadialForm> {
    Ok(momentum_state(n, l)?.div_cauchy_pow(2))
}

/// Residual of the momentum-space eigenvalue equation
/// `[-((p²+1)∇)² + 4(p²+1)(p·∇)]b = 4(n²-1)b`, with the first operator
/// applied literally as `(p²+1)∇·[(p²+1)∇·]`. Exactly zero on `b_{nl}`.
pub fn momentum_ode_residual(b: &RadialForm, n: u32) -> Result<RadialForm> {
    if n == 0 {
        return Err(Error::InvalidParameter("principal number must be at least 1"));
    }
    let plus = one_plus_p2();
    let mut second = RadialForm::zero(3);
    for axis in 0..3 {
        let v = b.derivative(axis)?.try_mul(&plus)?;
        second = second.try_add(&v.derivative(axis)?.try_mul(&plus)?)?;
    }
    let counting = b.euler_degree()?.try_mul(&plus)?.rat_mul(&rat_int(4));
    let rhs = b.rat_mul(&rat_int(4 * (i64::from(n) * i64::from(n) - 1)));
    second.neg().try_add(&counting)?.try_sub(&rhs)
}

/// Residual of the quarter-scaled printed form
/// `[-((p²+1)/2)²Δ + ((p²+1)/2)(p·∇)]b = (n²-1)b`; equivalent to
/// [`momentum_ode_residual`] up to the factor 4.
pub fn momentum_ode_residual_quarter(b: &RadialForm, n: u32) -> Result<RadialForm> {
    if n == 0 {
        return Err(Error::InvalidParameter("principal number must be at least 1"));
    }
    let plus = one_plus_p2();
    let half_plus_sq = plus.try_mul(&plus)?.rat_mul(&rat(1, 4));
    let kinetic = b.laplacian()?.try_mul(&half_plus_sq)?;
    let counting = b.euler_degree()?.try_mul(&plus)?.rat_mul(&rat(1, 2));
    let rhs = b.rat_mul(&rat_int(i64::from(n) * i64::from(n) - 1));
    kinetic.neg().try_add(&counting)?.try_sub(&rhs)
}

/// Value of the transformed momentum wave function
/// `Y_l(p)·p^{2k}/(1+p²)^{n+1}·₂F(-k, -n+1/2; l+3/2; -1/p²)` at an exact
/// rational point. This alternative argument form leaves the polynomial
/// denominator class, so it is checked pointwise against
/// [`momentum_wavefunction`] rather than as a form identity.
pub fn momentum_alternative_value(n: u32, l: u32, p: &[Rat]) -> Result<ExactScalar> {
    let k = radial_index(n, l)?;
    if p.len() != 3 {
        return Err(Error::DimensionMismatch { left: p.len(), right: 3 });
    }
    let p2 = norm_sq(p);
    if p2.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let x = -p2.clone().recip();
    let minus_k = rat_int(-(i64::from(k)));
    let b_param = rat(-2 * i64::from(n) + 1, 2);
    let c_param = rat(2 * i64::from(l) + 3, 2);
    let mut series = Rat::zero();
    let mut x_pow = Rat::one();
    for j in 0..=k {
        let num = pochhammer(&minus_k, j) * pochhammer(&b_param, j);
        let den = pochhammer(&c_param, j) * Rat::from_integer(factorial(u64::from(j)));
        series += num / den * x_pow.clone();
        x_pow *= x.clone();
    }
    let angular = axial_solid_harmonic(l).eval_even_exact(p)?;
    let mut p2k = Rat::one();
    for _ in 0..k {
        p2k *= p2.clone();
    }
    let mut den = Rat::one();
    let plus = Rat::one() + p2;
    for _ in 0..=n {
        den *= plus.clone();
    }
    Ok(angular.scale(&(series * p2k / den)))
}

// ---------------------------------------------------------------------------
// Four-dimensional harmonic polynomials and the collapse bridge
// ---------------------------------------------------------------------------

/// Spatial squared radius `x₁²+x₂²+x₃²` inside a four-dimensional form,
/// written as `ρ² - τ²` (with `τ` the fourth coordinate).
fn spatial_radius_squared_4d() -> RadialForm {
    let tau_sq = RadialForm::monomial(4, &[0, 0, 0, 2], ExactScalar::one()).expect("static");
    RadialForm::radius_squared(4)
        .try_sub(&tau_sq)
        .expect("static construction")
}

/// Degree-`(n-1)` four-dimensional solid harmonic
/// `Y_l(x)·C_k^{l+1}(τ/ρ)·ρ^k` as a genuine polynomial in the four
/// coordinates: the homogenized Gegenbauer factor has `ρ² = τ² + |x|²` and
/// the spatial factor is the axial three-dimensional solid harmonic.
pub fn solid_harmonic_4d(n: u32, l: u32) -> Result<RadialForm> {
    let k = radial_index(n, l)?;
    let spatial = legendre_solid(4, 2, &spatial_radius_squared_4d(), l)?;
    let geg = gegenbauer_poly(k, l + 1);
    let tau = RadialForm::coordinate(4, 3)?;
    let mut homog = RadialForm::zero(4);
    for (e, c) in geg.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = e as u32;
        debug_assert_eq!((k - e) % 2, 0, "Gegenbauer parity");
        let piece = tau
            .try_pow(e)?
            .try_mul(&RadialForm::radius_pow(4, k - e))?
            .scalar_mul(c);
        homog = homog.try_add(&piece)?;
    }
    spatial.try_mul(&homog)
}

/// Exact proportionality constant produced by the collapse bridge:
/// `(-1)^{n-1}·(-i)^k·(l+k)!(2l+k+1)!/(l!k!(2l+1)!)`.
pub fn collapse_constant(n: u32, l: u32) -> Result<ExactScalar> {
    let k = radial_index(n, l)?;
    let num = factorial(u64::from(l + k)) * factorial(u64::from(2 * l + k + 1));
    let den = factorial(u64::from(l)) * factorial(u64::from(k)) * factorial(u64::from(2 * l + 1));
    let magnitude = ExactScalar::from_rat(Rat::new(num, den));
    let sign = if (n - 1) % 2 == 0 { ExactScalar::one() } else { -ExactScalar::one() };
    Ok(sign * ExactScalar::i_pow(-(i64::from(k))) * magnitude)
}

/// Coordinate bound state recovered from the four-dimensional harmonic
/// polynomial: `∂^{n-1}/∂t^{n-1}[e^{-t}·C_k^{l+1}(it/R)R^k]|_{t=r}` times
/// the harmonic tensor (no `1/r` factor — the derivative already lands on
/// the wave function itself). Returns the tensor and the exact constant
/// relating it to [`psi_coordinate`] in the unit-orbit convention.
pub fn coulomb_from_harmonic(n: u32, l: u32) -> Result<(SymTensor, ExactScalar)> {
    let k = radial_index(n, l)?;
    // ∂_t^{n-1}[e^{-t}G] = (-1)^{n-1} e^{-t} (1-∂_t)^{n-1} G
    let collapsed = collapse_with_power(k, l, n - 1);
    let mut radial = poly_r_to_form(3, &collapsed)?.mul_exp_weight(&Rat::one())?;
    if (n - 1) % 2 == 1 {
        radial = radial.neg();
    }
    let tensor = harmonic_tensor(3, l as usize)?.try_form_mul(&radial)?;
    let psi = psi_coordinate(n, l, RadiusConvention::UnitOrbit)?;
    let ratio = tensor
        .proportionality_ratio(&psi)
        .ok_or(Error::InvalidParameter("collapse output is not proportional to the bound state"))?;
    Ok((tensor, ratio))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn pts() -> Vec<Vec<Rat>> {
        alloc::vec![
            alloc::vec![rat(1, 2), rat(-1, 3), rat(1, 4)],
            alloc::vec![rat(2, 1), rat(0, 1), rat(1, 1)],
            alloc::vec![rat(-3, 5), rat(1, 7), rat(2, 3)],
        ]
    }

    #[test]
    fn coordinate_states_match_printed_low_cases() {
        // n=1: e^{-r}
        let psi = psi_coordinate_axial(1, 0, RadiusConvention::UnitOrbit).unwrap();
        assert_eq!(psi, RadialForm::exp_weight(3, Rat::one()).unwrap());
        // n=2: (1-r)e^{-r}
        let psi = psi_coordinate_axial(2, 0, RadiusConvention::UnitOrbit).unwrap();
        let expect = RadialForm::one(3)
            .try_sub(&RadialForm::radius(3))
            .unwrap()
            .mul_exp_weight(&Rat::one())
            .unwrap();
        assert_eq!(psi, expect);
        // n=3, l=2 quadrupole component: (3x_i x_k - r²δ_ik)e^{-r} at F = 1
        let psi = psi_coordinate(3, 2, RadiusConvention::UnitOrbit).unwrap();
        let offdiag = psi.component(&[0, 1]).unwrap();
        let expect = RadialForm::monomial(3, &[1, 1, 0], ExactScalar::from_int(3))
            .unwrap()
            .mul_exp_weight(&Rat::one())
            .unwrap();
        assert_eq!(offdiag, &expect);
    }

    #[test]
    fn eigenvalue_equation_exact_small_levels() {
        for n in 1..=4u32 {
            for l in 0..n {
                for conv in [RadiusConvention::UnitOrbit, RadiusConvention::Physical] {
                    let residual = verify_schrodinger(n, l, conv).unwrap();
                    assert!(residual.is_zero(), "n={n} l={l} {conv:?}");
                }
            }
        }
    }

    #[test]
    fn eigenvalue_negative_control() {
        // n=2 state against the n=3 operator leaves a nonzero residual
        let psi = psi_coordinate_axial(2, 0, RadiusConvention::UnitOrbit).unwrap();
        let residual = schrodinger_residual(&psi, 3, RadiusConvention::UnitOrbit).unwrap();
        assert!(!residual.is_zero());
    }

    #[test]
    fn convention_bridge_is_coordinate_scaling() {
        // physical(x) = n^l · unit(x/n)
        let n = 3u32;
        for l in 0..n {
            let unit = psi_coordinate_axial(n, l, RadiusConvention::UnitOrbit).unwrap();
            let physical = psi_coordinate_axial(n, l, RadiusConvention::Physical).unwrap();
            let mut scaled = unit.scale_coordinates(&rat(1, i64::from(n))).unwrap();
            for _ in 0..l {
                scaled = scaled.rat_mul(&rat_int(i64::from(n)));
            }
            assert_eq!(physical, scaled, "l={l}");
        }
    }

    #[test]
    fn squared_equation_chain() {
        for n in 1..=3u32 {
            for l in 0..n {
                let res = squared_equation_check(n, l).unwrap();
                assert!(res.doubled_operator.is_zero(), "doubled n={n} l={l}");
                assert!(res.expanded_operator.is_zero(), "expanded n={n} l={l}");
                assert!(res.spectral_shift.is_zero(), "spectral n={n} l={l}");
            }
        }
    }

    #[test]
    fn energies() {
        assert_eq!(energy(1, RadiusConvention::Physical).unwrap(), rat(-1, 2));
        assert_eq!(energy(2, RadiusConvention::Physical).unwrap(), rat(-1, 8));
        assert_eq!(energy(3, RadiusConvention::Physical).unwrap(), rat(-1, 18));
        assert_eq!(energy(5, RadiusConvention::UnitOrbit).unwrap(), rat(-1, 2));
    }

    #[test]
    fn sphere_map_exact() {
        for p in pts() {
            let (xi, xi0) = fock_map(&p).unwrap();
            let total: Rat = xi.iter().map(|x| x * x).sum::<Rat>() + xi0.clone() * xi0.clone();
            assert_eq!(total, Rat::one());
            assert_eq!(fock_unmap(&xi, &xi0).unwrap(), p);
        }
        // unit momentum lands on the equator
        let (xi, xi0) = fock_map(&[rat_int(1), rat_int(0), rat_int(0)]).unwrap();
        assert_eq!(xi, alloc::vec![rat_int(1), rat_int(0), rat_int(0)]);
        assert_eq!(xi0, rat_int(0));
        // origin maps to the south pole
        let (_, xi0) = fock_map(&[rat_int(0), rat_int(0), rat_int(0)]).unwrap();
        assert_eq!(xi0, rat_int(-1));
        // pole is not invertible
        assert!(fock_unmap(&[rat_int(0), rat_int(0), rat_int(0)], &rat_int(1)).is_err());
    }

    #[test]
    fn kernel_identity_exact() {
        // opposite unit points: both sides 1/4
        let p = alloc::vec![rat_int(1), rat_int(0), rat_int(0)];
        let q = alloc::vec![rat_int(-1), rat_int(0), rat_int(0)];
        let (lhs, rhs) = fock_kernel_identity(&p, &q).unwrap();
        assert_eq!(lhs, rat(1, 4));
        assert_eq!(rhs, rat(1, 4));
        for (i, p) in pts().iter().enumerate() {
            for q in pts().iter().skip(i + 1) {
                let (lhs, rhs) = fock_kernel_identity(p, q).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let same = pts()[0].clone();
        assert!(fock_kernel_identity(&same, &same).is_err());
    }

    #[test]
    fn momentum_states_low_cases() {
        // n=1: b = 1, a = 1/(1+p²)²
        let b = momentum_state(1, 0).unwrap();
        assert_eq!(b, RadialForm::one(3));
        let a = momentum_wavefunction(1, 0).unwrap();
        assert_eq!(a, RadialForm::cauchy_kernel_pow(3, 2));
        // n=2, l=0: the Gauss series gives 1 - 2u, i.e. b = (p²-1)/(p²+1)
        let b = momentum_state(2, 0).unwrap();
        let expect = p2_minus_one().div_cauchy_pow(1);
        assert_eq!(b, expect);
        // n=l+1: a = Y_l/(1+p²)^{l+2}
        let a = momentum_wavefunction(3, 2).unwrap();
        let expect = axial_solid_harmonic(2).div_cauchy_pow(4);
        assert_eq!(a, expect);
    }

    #[test]
    fn doubled_momentum_reference_shape() {
        // In bare units (argument np with n=2) the isotropic excited state is
        // const·(1/(1+4p²)²)(1 - 2/(1+4p²)): check pointwise at rational p.
        let a = momentum_wavefunction(2, 0).unwrap();
        for q in [rat(1, 2), rat(2, 3), rat(-3, 4)] {
            let doubled = alloc::vec![q.clone() * rat_int(2), Rat::zero(), Rat::zero()];
            let got = a.eval_even_exact(&doubled).unwrap();
            let q2 = q.clone() * q.clone();
            let kernel = (Rat::one() + rat_int(4) * q2.clone()).recip();
            let expect = kernel.clone() * kernel.clone()
                * (Rat::one() - rat_int(2) * kernel);
            assert_eq!(got, ExactScalar::from_rat(expect), "q={q}");
        }
    }

    #[test]
    fn gegenbauer_and_gauss_forms_agree() {
        use crate::scalar::{factorial as fact, rat_int as ri};
        for n in 1..=5u32 {
            for l in 0..n {
                let k = n - l - 1;
                let gauss = momentum_state(n, l).unwrap();
                let geg = momentum_state_gegenbauer(n, l).unwrap();
                // constant 2^l (2l+2)_k / k!
                let expect = pochhammer(&ri(2 * i64::from(l) + 2), k)
                    / Rat::from_integer(fact(u64::from(k)));
                let mut expect = ExactScalar::from_rat(expect);
                for _ in 0..l {
                    expect = expect * ExactScalar::from_int(2);
                }
                let ratio = geg.proportionality_ratio(&gauss).unwrap();
                assert_eq!(ratio, expect, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn momentum_ode_exact() {
        for n in 1..=5u32 {
            for l in 0..n {
                let b = momentum_state(n, l).unwrap();
                assert!(momentum_ode_residual(&b, n).unwrap().is_zero(), "n={n} l={l}");
                assert!(
                    momentum_ode_residual_quarter(&b, n).unwrap().is_zero(),
                    "quarter n={n} l={l}"
                );
            }
        }
        // tensor components satisfy the same equation
        let t = momentum_state_tensor(3, 1).unwrap();
        for (_, comp) in t.components() {
            assert!(momentum_ode_residual(comp, 3).unwrap().is_zero());
        }
        // negative control: wrong level
        let b = momentum_state(2, 0).unwrap();
        assert!(!momentum_ode_residual(&b, 3).unwrap().is_zero());
    }

    #[test]
    fn alternative_argument_form_pointwise() {
        for n in 1..=4u32 {
            for l in 0..n {
                let a = momentum_wavefunction(n, l).unwrap();
                for p in pts() {
                    let direct = a.eval_even_exact(&p).unwrap();
                    let alt = momentum_alternative_value(n, l, &p).unwrap();
                    assert_eq!(direct, alt, "n={n} l={l}");
                }
            }
        }
    }

    #[test]
    fn four_dimensional_harmonics() {
        for n in 1..=6u32 {
            for l in 0..n {
                let s = solid_harmonic_4d(n, l).unwrap();
                assert!(s.laplacian().unwrap().is_zero(), "harmonic n={n} l={l}");
                assert_eq!(
                    s.homogeneous_degree(),
                    Some(i64::from(n) - 1),
                    "degree n={n} l={l}"
                );
            }
        }
        // hand values: n=1 → 1; n=2,l=0 → 2τ; n=2,l=1 → x₃ (axial choice)
        assert_eq!(solid_harmonic_4d(1, 0).unwrap(), RadialForm::one(4));
        let tau2 = RadialForm::coordinate(4, 3).unwrap().rat_mul(&rat_int(2));
        assert_eq!(solid_harmonic_4d(2, 0).unwrap(), tau2);
        assert_eq!(
            solid_harmonic_4d(2, 1).unwrap(),
            RadialForm::coordinate(4, 2).unwrap()
        );
    }

    #[test]
    fn sphere_functions_are_4d_harmonics_at_stereographic_points() {
        // b_{nl}(p) (Gegenbauer normalization) equals the 4D solid harmonic
        // evaluated at the stereographic image, exactly.
        for n in 1..=4u32 {
            for l in 0..n {
                let b = momentum_state_gegenbauer(n, l).unwrap();
                let s = solid_harmonic_4d(n, l).unwrap();
                for p in pts() {
                    let (xi, xi0) = fock_map(&p).unwrap();
                    let mut point4 = xi.clone();
                    point4.push(xi0);
                    let on_sphere = s.eval_even_exact(&point4).unwrap();
                    let direct = b.eval_even_exact(&p).unwrap();
                    assert_eq!(direct, on_sphere, "n={n} l={l}");
                }
            }
        }
    }

    #[test]
    fn sphere_norm_matches_weight_integral() {
        use crate::special::gegenbauer_weighted_norm_doubled_over_pi;
        // average of |S|² over the unit 3-sphere = weight integral / (2l+1)
        for n in 1..=5u32 {
            for l in 0..n {
                let k = n - l - 1;
                let s = solid_harmonic_4d(n, l).unwrap();
                let avg = s.try_mul(&s).unwrap().sphere_average_unit().unwrap();
                let expect = gegenbauer_weighted_norm_doubled_over_pi(k, l)
                    / rat_int(2 * i64::from(l) + 1);
                assert_eq!(avg, ExactScalar::from_rat(expect), "n={n} l={l}");
            }
        }
    }

    #[test]
    fn collapse_reproduces_coordinate_states() {
        for n in 1..=6u32 {
            for l in 0..n {
                let (_, ratio) = coulomb_from_harmonic(n, l).unwrap();
                assert_eq!(ratio, collapse_constant(n, l).unwrap(), "n={n} l={l}");
                assert!(!ratio.is_zero());
            }
        }
        // n=1 constant is exactly 1 (pure e^{-r})
        let (tensor, ratio) = coulomb_from_harmonic(1, 0).unwrap();
        assert_eq!(ratio, ExactScalar::one());
        assert_eq!(
            tensor.component(&[]).unwrap(),
            &RadialForm::exp_weight(3, Rat::one()).unwrap()
        );
    }

    #[test]
    fn near_circular_radial_polynomial_pattern() {
        // l = n-3 states carry F(-2, 2n-4, 2r): 1 - 2r/(n-2) + 2r²/((n-2)(2n-3))
        for n in [4u32, 5, 7] {
            let f = radial_factor(n, n - 3, RadiusConvention::UnitOrbit).unwrap();
            let m = i64::from(n);
            let expect = RadialForm::one(3)
                .try_add(&RadialForm::radius(3).rat_mul(&rat(-2, m - 2)))
                .unwrap()
                .try_add(
                    &RadialForm::radius_squared(3).rat_mul(&rat(2, (m - 2) * (2 * m - 3))),
                )
                .unwrap()
                .mul_exp_weight(&Rat::one())
                .unwrap();
            assert_eq!(f, expect, "n={n}");
        }
    }
}
