//! Harmonic (traceless, Laplacian-free) symmetric tensors in 3 and 4
//! dimensions, built from symmetrized Kronecker-delta products, together with
//! their trace laws, tensor-power decompositions, sphere averages, multipole
//! gradients, and axial projections onto Legendre derivatives.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::radial::RadialForm;
use crate::scalar::{double_factorial, factorial, ExactScalar, Rat};
use crate::special::legendre_poly;
use crate::tensor::{gradient_tensor, SymTensor};
use crate::{Error, Result};

fn check_dim(dim: usize) -> Result<()> {
    if dim == 3 || dim == 4 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

/// Leading double-factorial normalization of the rank-`l` harmonic tensor:
/// `(2l-1)!!` in 3D, `(2l)!!` in 4D.
pub fn leading_double_factorial(dim: usize, l: usize) -> Result<BigInt> {
    check_dim(dim)?;
    Ok(double_factorial(2 * l as i64 + dim as i64 - 4))
}

/// The rank-`l` harmonic tensor: the alternating sum
/// `Σ_k (-1)^k d(l,k) r^{2k} ≪δ^{⊗k} x^{⊗(l-2k)}≫` with
/// `d(l,k) = (2l-2k-1)!!` in 3D and `(2l-2k)!!` in 4D. Every component is a
/// homogeneous polynomial of degree `l`; the tensor is traceless and each
/// component is annihilated by the Laplacian.
pub fn harmonic_tensor(dim: usize, l: usize) -> Result<SymTensor> {
    check_dim(dim)?;
    let mut acc = SymTensor::zero(dim, l);
    for k in 0..=l / 2 {
        let df = double_factorial(2 * (l - 2 * k) as i64 + 2 * k as i64 + dim as i64 - 4);
        let mut coeff = ExactScalar::from_bigint(df);
        if k % 2 == 1 {
            coeff = -coeff;
        }
        let core = SymTensor::coordinate_power(dim, l - 2 * k)?;
        let sym = SymTensor::symmetrized_with_deltas(k, &core)?;
        let term = sym
            .try_form_mul(&RadialForm::radius_pow(dim, 2 * k as u32))?
            .scalar_mul(&coeff);
        acc = acc.try_add(&term)?;
    }
    Ok(acc)
}

/// `≪δ^{⊗k}≫`: the symmetrized product of `k` Kronecker deltas.
pub fn symmetrized_delta_power(dim: usize, k: usize) -> Result<SymTensor> {
    SymTensor::symmetrized_with_deltas(k, &SymTensor::scalar(RadialForm::one(dim)))
}

/// Constant in the single-trace law
/// `Tr ≪δ^{⊗k} H^{(l)}≫ = c · ≪δ^{⊗(k-1)} H^{(l)}≫` for a traceless
/// harmonic core of rank `l`: `c = 2l + 2k + dim - 2`.
pub fn trace_constant(dim: usize, l: usize, k: usize) -> i64 {
    2 * l as i64 + 2 * k as i64 + dim as i64 - 2
}

/// Both sides of the single-trace law, for exact comparison.
pub fn trace_law_sides(dim: usize, l: usize, k: usize) -> Result<(SymTensor, SymTensor)> {
    let core = harmonic_tensor(dim, l)?;
    let lhs = SymTensor::symmetrized_with_deltas(k, &core)?.trace_pair()?;
    let rhs = SymTensor::symmetrized_with_deltas(k - 1, &core)?
        .rat_mul(&Rat::from_integer(trace_constant(dim, l, k).into()));
    Ok((lhs, rhs))
}

/// Coefficients `c_k` of the decomposition of a tensor power into harmonic
/// tensors: `d(l)·x^{⊗l} = Σ_k c_k r^{2k} ≪δ^{⊗k} H^{(l-2k)}≫` with
/// `d(l)` the leading double factorial. Derived by the trace recursion
/// `c_{j+1}^{(l)} = d(l)/d(l-2) · c_j^{(l-2)} / (2l - 2j + dim - 4)`,
/// not hard-coded.
pub fn decompose_power(dim: usize, l: usize) -> Result<Vec<Rat>> {
    check_dim(dim)?;
    if l < 2 {
        return Ok(vec![Rat::one()]);
    }
    let prev = decompose_power(dim, l - 2)?;
    let lt = Rat::from_integer(
        BigInt::from(2 * l as i64 + dim as i64 - 4) * BigInt::from(2 * l as i64 + dim as i64 - 6),
    );
    let mut out = Vec::with_capacity(prev.len() + 1);
    out.push(Rat::one());
    for (j, cj) in prev.iter().enumerate() {
        let den = Rat::from_integer((2 * l as i64 - 2 * j as i64 + dim as i64 - 4).into());
        out.push(lt.clone() * cj / den);
    }
    Ok(out)
}

/// Both sides of the tensor-power decomposition, for exact comparison.
pub fn decomposition_sides(dim: usize, l: usize) -> Result<(SymTensor, SymTensor)> {
    let lead = Rat::from_integer(leading_double_factorial(dim, l)?);
    let lhs = SymTensor::coordinate_power(dim, l)?.rat_mul(&lead);
    let coeffs = decompose_power(dim, l)?;
    let mut rhs = SymTensor::zero(dim, l);
    for (k, ck) in coeffs.iter().enumerate() {
        let core = harmonic_tensor(dim, l - 2 * k)?;
        let term = SymTensor::symmetrized_with_deltas(k, &core)?
            .try_form_mul(&RadialForm::radius_pow(dim, 2 * k as u32))?
            .rat_mul(ck);
        rhs = rhs.try_add(&term)?;
    }
    Ok((lhs, rhs))
}

/// Constant in `avg_{|x|=1}(x^{⊗l}) = c · ≪δ^{⊗(l/2)}≫` for even `l`:
/// `1/(l+1)!!` in 3D, `2/(l+2)!!` in 4D.
pub fn sphere_average_constant(dim: usize, l: usize) -> Result<Rat> {
    check_dim(dim)?;
    if l % 2 != 0 {
        return Err(Error::InvalidParameter("sphere average of an odd tensor power is zero"));
    }
    Ok(match dim {
        3 => Rat::new(BigInt::one(), double_factorial(l as i64 + 1)),
        _ => Rat::new(BigInt::from(2), double_factorial(l as i64 + 2)),
    })
}

/// Full contraction `(H^{(l)}, H^{(l)})` of the 3D harmonic tensor with
/// itself equals `(2l)!/2^l · r^{2l}`.
pub fn full_contraction_norm_3d(l: usize) -> Rat {
    Rat::new(factorial(2 * l as u64), BigInt::one() << l)
}

/// Both sides of the coordinate-contraction law
/// `x·H^{(l)} = c_x · r² H^{(l-1)}` with `c_x = l` in 3D and `l+1` in 4D.
pub fn coordinate_contraction_sides(dim: usize, l: usize) -> Result<(SymTensor, SymTensor)> {
    let t = harmonic_tensor(dim, l)?;
    let x = SymTensor::coordinate(dim)?;
    let lhs = t.contract_all_of(&x)?;
    let c = if dim == 3 { l as i64 } else { l as i64 + 1 };
    let rhs = harmonic_tensor(dim, l - 1)?
        .try_form_mul(&RadialForm::radius_squared(dim))?
        .rat_mul(&Rat::from_integer(c.into()));
    Ok((lhs, rhs))
}

/// Both sides of the divergence law
/// `∇·H^{(l)} = c_∇ · H^{(l-1)}` with `c_∇ = l(2l+1)` in 3D and `2(l+1)²`
/// in 4D.
pub fn divergence_sides(dim: usize, l: usize) -> Result<(SymTensor, SymTensor)> {
    let lhs = harmonic_tensor(dim, l)?.divergence()?;
    let c = if dim == 3 {
        l as i64 * (2 * l as i64 + 1)
    } else {
        2 * (l as i64 + 1) * (l as i64 + 1)
    };
    let rhs = harmonic_tensor(dim, l - 1)?.rat_mul(&Rat::from_integer(c.into()));
    Ok((lhs, rhs))
}

/// Both sides of the multipole gradient recursion
/// `∇_i [H^{(l)} / r^{2l + dim - 2}] = -H^{(l+1)} / r^{2l + dim}`:
/// returns (gradient of the multipole, minus the next multipole).
pub fn multipole_gradient_sides(dim: usize, l: usize) -> Result<(SymTensor, SymTensor)> {
    let denom = RadialForm::inverse_radius_pow(dim, 2 * l as u32 + dim as u32 - 2);
    let pot = harmonic_tensor(dim, l)?.try_form_mul(&denom)?;
    // Gradient adds one slot: component (i, J) = ∂_i pot_J.
    let mut lhs = SymTensor::zero(dim, l + 1);
    for idx in crate::tensor::sorted_indices(dim, l + 1) {
        let axis = idx[0];
        let val = pot.component(&idx[1..])?.derivative(usize::from(axis))?;
        lhs.set_component(&idx, val)?;
    }
    let next_denom = RadialForm::inverse_radius_pow(dim, 2 * l as u32 + dim as u32);
    let rhs = harmonic_tensor(dim, l + 1)?.try_form_mul(&next_denom)?.neg();
    Ok((lhs, rhs))
}

/// Both sides of the fundamental-solution gradient identity
/// `∇^{⊗l} (1/r^{dim-2}) = (-1)^l H^{(l)} / r^{2l + dim - 2}`.
pub fn fundamental_gradient_sides(dim: usize, l: usize) -> Result<(SymTensor, SymTensor)> {
    check_dim(dim)?;
    let fundamental = RadialForm::inverse_radius_pow(dim, dim as u32 - 2);
    let lhs = gradient_tensor(&fundamental, l)?;
    let mut rhs = harmonic_tensor(dim, l)?
        .try_form_mul(&RadialForm::inverse_radius_pow(dim, 2 * l as u32 + dim as u32 - 2))?;
    if l % 2 == 1 {
        rhs = rhs.neg();
    }
    Ok((lhs, rhs))
}

/// Both sides of the `k`-fold Laplacian symmetrization identity
/// `Δ^k x^{⊗l} / (k! 2^k) = ≪δ^{⊗k} x^{⊗(l-2k)}≫`.
pub fn laplacian_symmetrization_sides(
    dim: usize,
    l: usize,
    k: usize,
) -> Result<(SymTensor, SymTensor)> {
    let mut lhs = SymTensor::coordinate_power(dim, l)?;
    for _ in 0..k {
        lhs = lhs.try_map_forms(|f| f.laplacian())?;
    }
    let norm = Rat::new(BigInt::one(), factorial(k as u64) * (BigInt::one() << k));
    let lhs = lhs.rat_mul(&norm);
    let core = SymTensor::coordinate_power(dim, l - 2 * k)?;
    let rhs = SymTensor::symmetrized_with_deltas(k, &core)?;
    Ok((lhs, rhs))
}

/// Both sides of the power-moment equivalence at a fixed rational point `p`:
/// `d(l)·(p^{⊗l}, H^{(l)}(x)) = (H^{(l)}(p), H^{(l)}(x))` — contracting the
/// bare tensor power at `p` against the harmonic tensor reproduces the
/// two-point harmonic contraction because all δ-terms die on tracelessness.
pub fn moment_equivalence_sides(
    dim: usize,
    l: usize,
    point: &[Rat],
) -> Result<(RadialForm, RadialForm)> {
    let h = harmonic_tensor(dim, l)?;
    let power_at_p = SymTensor::coordinate_power(dim, l)?.eval_to_constant(point)?;
    let lead = Rat::from_integer(leading_double_factorial(dim, l)?);
    let lhs = h.contract_full(&power_at_p)?.rat_mul(&lead);
    let h_at_p = h.eval_to_constant(point)?;
    let rhs = h.contract_full(&h_at_p)?;
    Ok((lhs, rhs))
}

// ---------------------------------------------------------------------------
// Rational functions of the squared radius (for the operator/radial rule)
// ---------------------------------------------------------------------------

/// `f(s) = P(s) / (1+s)^c` with rational polynomial `P`, supporting exact
/// differentiation in `s` and materialization at `s = r²`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SquareRadiusFn {
    coeffs: Vec<Rat>,
    cauchy: u32,
}

impl SquareRadiusFn {
    pub fn new(coeffs: Vec<Rat>, cauchy: u32) -> Self {
        let mut f = SquareRadiusFn { coeffs, cauchy };
        while f.coeffs.last().is_some_and(Rat::is_zero) {
            f.coeffs.pop();
        }
        f
    }

    pub fn polynomial(coeffs: Vec<Rat>) -> Self {
        Self::new(coeffs, 0)
    }

    /// `d/ds [P/(1+s)^c] = [P'(1+s) - cP] / (1+s)^{c+1}`.
    pub fn derivative(&self) -> Self {
        if self.cauchy == 0 {
            let mut plain = vec![Rat::zero(); self.coeffs.len().saturating_sub(1).max(1)];
            for (j, c) in self.coeffs.iter().enumerate().skip(1) {
                plain[j - 1] = Rat::from_integer((j as i64).into()) * c;
            }
            return Self::new(plain, 0);
        }
        let mut dp = vec![Rat::zero(); self.coeffs.len() + 1];
        // P'(s)(1+s)
        for (j, c) in self.coeffs.iter().enumerate().skip(1) {
            let jc = Rat::from_integer((j as i64).into()) * c;
            dp[j - 1] += jc.clone();
            dp[j] += jc;
        }
        // - cP
        let c = Rat::from_integer((self.cauchy as i64).into());
        for (slot, p) in dp.iter_mut().zip(&self.coeffs) {
            *slot -= c.clone() * p;
        }
        Self::new(dp, self.cauchy + 1)
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..n {
            f = f.derivative();
        }
        f
    }

    /// Materialize at `s = r²` as an exact radial form.
    pub fn to_form(&self, dim: usize) -> Result<RadialForm> {
        let mut acc = RadialForm::zero(dim);
        for (j, c) in self.coeffs.iter().enumerate() {
            let term = RadialForm::radius_pow(dim, 2 * j as u32).rat_mul(c);
            acc = acc.try_add(&term)?;
        }
        if self.cauchy > 0 {
            acc = acc.try_mul(&RadialForm::cauchy_kernel_pow(dim, self.cauchy))?;
        }
        Ok(acc)
    }
}

/// Both sides of the operator/radial rule: the rank-`l` harmonic tensor with
/// gradients substituted for coordinates, applied to `f(r²)`, equals
/// `H^{(l)} · 2^l f^{(l)}(r²)`.
pub fn operator_on_radial_sides(
    dim: usize,
    l: usize,
    f: &SquareRadiusFn,
) -> Result<(SymTensor, SymTensor)> {
    let h = harmonic_tensor(dim, l)?;
    let lhs = h.apply_gradient_to(&f.to_form(dim)?)?;
    let scale = Rat::from_integer(BigInt::one() << l);
    let rhs = h.try_form_mul(&f.nth_derivative(l).to_form(dim)?.rat_mul(&scale))?;
    Ok((lhs, rhs))
}

/// The rank-`l` harmonic tensor with gradients substituted for coordinates,
/// applied to `1/r` (3D), together with the two candidate proportionality
/// constants: the correct `(2l-1)!!` and the alternative `(2l+1)!!`.
/// Returns `(lhs, rhs_with_constant)` where
/// `rhs = (-1)^l · constant · H^{(l)}/r^{2l+1}`.
pub fn operator_on_inverse_radius_sides(
    l: usize,
    constant: &BigInt,
) -> Result<(SymTensor, SymTensor)> {
    let h = harmonic_tensor(3, l)?;
    let lhs = h.apply_gradient_to(&RadialForm::inverse_radius_pow(3, 1))?;
    let mut c = Rat::from_integer(constant.clone());
    if l % 2 == 1 {
        c = -c;
    }
    let rhs = h
        .try_form_mul(&RadialForm::inverse_radius_pow(3, 2 * l as u32 + 1))?
        .rat_mul(&c);
    Ok((lhs, rhs))
}

/// Both sides of the axial projection: contracting the 3D rank-`l` harmonic
/// tensor with `l-m` copies of the axis vector `ẑ` and `m` copies of the
/// complex null vector `(1, ±i, 0)` gives
/// `(l-m)! (x ± iy)^m r^{l-m} P_l^{(m)}(z/r)`
/// where `P_l^{(m)}` is the `m`-th derivative of the Legendre polynomial.
pub fn axial_projection_sides(l: usize, m: usize, plus: bool) -> Result<(RadialForm, RadialForm)> {
    if m > l {
        return Err(Error::InvalidParameter("projection order exceeds tensor rank"));
    }
    let h = harmonic_tensor(3, l)?;
    let mut z_axis = SymTensor::zero(3, 1);
    z_axis.set_component(&[2], RadialForm::one(3))?;
    let mut null_vec = SymTensor::zero(3, 1);
    null_vec.set_component(&[0], RadialForm::one(3))?;
    let i_coeff = if plus { ExactScalar::i() } else { -ExactScalar::i() };
    null_vec.set_component(&[1], RadialForm::constant(3, i_coeff.clone()))?;

    let mut contracted = h;
    for _ in 0..(l - m) {
        contracted = contracted.contract_all_of(&z_axis)?;
    }
    for _ in 0..m {
        contracted = contracted.contract_all_of(&null_vec)?;
    }
    let lhs = contracted.into_scalar()?;

    // (x ± iy)^m
    let xy = RadialForm::coordinate(3, 0)?
        .try_add(&RadialForm::coordinate(3, 1)?.scalar_mul(&i_coeff))?;
    let xy_pow = xy.try_pow(m as u32)?;
    // r^{l-m} P_l^{(m)}(z/r) expanded into monomials z^j r^{l-m-j}
    let mut dp = legendre_poly(l as u32);
    for _ in 0..m {
        dp = dp.derivative();
    }
    let mut angular = RadialForm::zero(3);
    for (j, c) in dp.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = RadialForm::monomial(3, &[0, 0, j as u16], c.clone())?
            .try_mul(&RadialForm::radius_pow(3, (l - m - j) as u32))?;
        angular = angular.try_add(&term)?;
    }
    let fact = Rat::from_integer(factorial((l - m) as u64));
    let rhs = xy_pow.try_mul(&angular)?.rat_mul(&fact);
    Ok((lhs, rhs))
}
