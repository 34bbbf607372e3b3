//! Quadratic response of the topmost circular bound states to a uniform
//! axial field, solved exactly: the first-order correction is found inside a
//! two-parameter ansatz by exact linear algebra on radial forms, the
//! second-order energy and the induced dipole moment follow from exact
//! integrals, and both are cross-checked against the closed formulas.

use alloc::vec::Vec;

use num_traits::One;

use crate::radial::RadialForm;
use crate::scalar::{rat, rat_int, ExactScalar, Rat};
use crate::{Error, Result};

/// The circular state `e^{-r/n}(x+iy)^{n-1}` (principal number `n`, maximal
/// orbital and magnetic numbers), bare-radius convention.
pub fn circular_state(n: u32) -> Result<RadialForm> {
    if n == 0 {
        return Err(Error::InvalidParameter("principal number must be at least 1"));
    }
    let x = RadialForm::coordinate(3, 0)?;
    let y = RadialForm::coordinate(3, 1)?.scalar_mul(&ExactScalar::i());
    let ring = x.try_add(&y)?.try_pow(n - 1)?;
    let rate = Rat::new(num_bigint::BigInt::one(), num_bigint::BigInt::from(n));
    ring.mul_exp_weight(&rate)
}

/// `(Δ/2 + E₀ + 1/r)f` with `E₀ = -1/(2n²)`: the homogeneous part of the
/// first-order equation.
fn correction_operator(f: &RadialForm, n: u32) -> Result<RadialForm> {
    let kinetic = f.laplacian()?.rat_mul(&rat(1, 2));
    let energy = f.rat_mul(&Rat::new(
        num_bigint::BigInt::from(-1),
        num_bigint::BigInt::from(2 * u64::from(n) * u64::from(n)),
    ));
    let coulomb = f.div_r_pow(1);
    kinetic.try_add(&energy)?.try_add(&coulomb)
}

/// Solve `c₁·a + c₂·b = target` for exact scalars by clearing the radius
/// denominators, picking two independent probe monomials, and confirming the
/// candidate on the full forms. `None` when no exact solution exists.
fn solve_pair(a: &RadialForm, b: &RadialForm, target: &RadialForm) -> Option<(ExactScalar, ExactScalar)> {
    let m = a.r_power().max(b.r_power()).max(target.r_power());
    let am = a.mul_r_pow(m);
    let bm = b.mul_r_pow(m);
    let tm = target.mul_r_pow(m);
    // union of probe monomials over the cleared numerators
    let mut keys: Vec<_> = am.terms().map(|(t, _)| t.clone()).collect();
    keys.extend(bm.terms().map(|(t, _)| t.clone()));
    keys.extend(tm.terms().map(|(t, _)| t.clone()));
    keys.sort();
    keys.dedup();
    let rows: Vec<(ExactScalar, ExactScalar, ExactScalar)> = keys
        .iter()
        .map(|t| (am.coefficient(t), bm.coefficient(t), tm.coefficient(t)))
        .collect();
    for (i, ri) in rows.iter().enumerate() {
        for rj in rows.iter().skip(i + 1) {
            let det = ri.0.clone() * rj.1.clone() - rj.0.clone() * ri.1.clone();
            if det.is_zero() {
                continue;
            }
            let c1 = (ri.2.clone() * rj.1.clone() - rj.2.clone() * ri.1.clone())
                .div_exact(&det)
                .ok()?;
            let c2 = (ri.0.clone() * rj.2.clone() - rj.0.clone() * ri.2.clone())
                .div_exact(&det)
                .ok()?;
            let recon = a
                .scalar_mul(&c1)
                .try_add(&b.scalar_mul(&c2))
                .ok()?;
            if recon == *target {
                return Some((c1, c2));
            }
            return None;
        }
    }
    None
}

/// First-order correction for the circular state: solves the ansatz
/// `Ψ₁ = -(c₁ + c₂r)·𝓔z·Ψ₀` in `(Δ/2 + E₀ + 1/r)Ψ₁ = 𝓔zΨ₀` exactly and
/// returns `(c₁, c₂, Ψ₁/𝓔)`. The residual of the equation is zero by
/// construction (the solver verifies the full form identity).
pub fn first_correction(n: u32) -> Result<(Rat, Rat, RadialForm)> {
    let psi0 = circular_state(n)?;
    let z_psi0 = psi0.try_mul(&RadialForm::coordinate(3, 2)?)?;
    let rz_psi0 = z_psi0.try_mul(&RadialForm::radius(3))?;
    let a = correction_operator(&z_psi0, n)?.neg();
    let b = correction_operator(&rz_psi0, n)?.neg();
    let (c1, c2) = solve_pair(&a, &b, &z_psi0)
        .ok_or(Error::InvalidParameter("no solution in the ansatz class"))?;
    if !c1.is_real() || !c2.is_real() {
        return Err(Error::InvalidParameter("ansatz coefficients are not real"));
    }
    let correction = z_psi0
        .scalar_mul(&c1)
        .try_add(&rz_psi0.scalar_mul(&c2))?
        .neg();
    Ok((c1.re, c2.re, correction))
}

/// Does the first-order energy shift `(Ψ₀, zΨ₀)` vanish exactly (it must,
/// by parity)?
pub fn first_order_shift_vanishes(n: u32) -> Result<bool> {
    let psi0 = circular_state(n)?;
    let z_psi0 = psi0.try_mul(&RadialForm::coordinate(3, 2)?)?;
    Ok(psi0.inner_product_r3_in_units_of_pi(&z_psi0)?.is_zero())
}

/// Second-order energy coefficient: `E₂ = (Ψ₁, zΨ₀)/(Ψ₀, Ψ₀)` per unit
/// squared field. (The perturbative bookkeeping carries no extra 1/2; the
/// ground-state value −9/4, equivalently polarizability 9/2, fixes this.)
pub fn second_order_energy(n: u32) -> Result<Rat> {
    if !first_order_shift_vanishes(n)? {
        return Err(Error::InvalidParameter("first-order shift does not vanish"));
    }
    let psi0 = circular_state(n)?;
    let z_psi0 = psi0.try_mul(&RadialForm::coordinate(3, 2)?)?;
    let (_, _, psi1) = first_correction(n)?;
    let numerator = psi1.inner_product_r3_in_units_of_pi(&z_psi0)?;
    let denominator = psi0.inner_product_r3_in_units_of_pi(&psi0)?;
    let ratio = numerator.div_exact(&denominator)?;
    if !ratio.is_real() {
        return Err(Error::InvalidParameter("second-order energy is not real"));
    }
    Ok(ratio.re)
}

/// Induced dipole moment per unit field, from the symbolic pipeline:
/// `d_z = -2·E₂`. Equals `n⁴(n+1)(4n+5)/4`.
pub fn dipole_moment(n: u32) -> Result<Rat> {
    Ok(second_order_energy(n)? * rat_int(-2))
}

/// Closed dipole formula `n⁴(n+1)(4n+5)/4` (the target of the symbolic
/// route).
pub fn dipole_closed_form(n: u32) -> Rat {
    let m = i64::from(n);
    rat(m * m * m * m * (m + 1) * (4 * m + 5), 4)
}

/// Reference dipole table `(n⁴/8)(17n² - 9m² + 19)` for states with maximal
/// parabolic symmetry; quoted at `|m| ≤ n-1`.
pub fn stark_reference(n: u32, m: i64) -> Result<Rat> {
    if n == 0 {
        return Err(Error::InvalidParameter("principal number must be at least 1"));
    }
    if m.unsigned_abs() > u64::from(n - 1) {
        return Err(Error::InvalidParameter("magnetic number exceeds n-1"));
    }
    let nn = i64::from(n);
    Ok(rat(nn * nn * nn * nn, 8) * rat_int(17 * nn * nn - 9 * m * m + 19))
}

/// Bundle of the exact quadratic-response quantities for one level.
pub struct StarkResult {
    pub n: u32,
    /// Ansatz coefficients of `Ψ₁ = -(c₁ + c₂r)𝓔zΨ₀`.
    pub c1: Rat,
    pub c2: Rat,
    /// `E₂` per unit squared field.
    pub e2_coefficient: Rat,
    /// `d_z` per unit field; always `-2·e2_coefficient`.
    pub dipole_coefficient: Rat,
    /// Closed-formula value `n⁴(n+1)(4n+5)/4`.
    pub dipole_closed_form: Rat,
    /// Reference table value at `m = n-1`.
    pub reference_dipole: Rat,
}

/// Run the full quadratic-response pipeline for level `n`.
pub fn stark_result(n: u32) -> Result<StarkResult> {
    let (c1, c2, _) = first_correction(n)?;
    let e2 = second_order_energy(n)?;
    let dipole = e2.clone() * rat_int(-2);
    Ok(StarkResult {
        n,
        c1,
        c2,
        e2_coefficient: e2,
        dipole_coefficient: dipole,
        dipole_closed_form: dipole_closed_form(n),
        reference_dipole: stark_reference(n, i64::from(n) - 1)?,
    })
}

/// Two auxiliary bound states of the unit-orbit convention whose
/// combination reproduces the first-order correction after rescaling.
pub struct TwoStateReport {
    /// `(-Δ + 1 - 2n/r)|upper⟩ - (4/r)|upper⟩` (zero exactly).
    pub upper_residual: RadialForm,
    /// `(-Δ + 1 - 2n/r)|lower⟩ - (2/r)|lower⟩` (zero exactly).
    pub lower_residual: RadialForm,
    /// Ratio of the rescaled combination to `Ψ₁/𝓔`; equals `n^{-n}`.
    pub combination_ratio: ExactScalar,
}

/// Verify the two displayed operator relations and the combination identity:
/// with `|upper⟩ = z(x+iy)^{n-1}(1 - r/(n+1))e^{-r}` and
/// `|lower⟩ = z(x+iy)^{n-1}e^{-r}`, the mix
/// `(n²(n+1)/2)(|upper⟩ - 2|lower⟩)`, rescaled from unit orbit back to the
/// bare radius, is exactly proportional to the first-order correction.
pub fn two_state_identity_check(n: u32) -> Result<TwoStateReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("principal number must be at least 1"));
    }
    let x = RadialForm::coordinate(3, 0)?;
    let y = RadialForm::coordinate(3, 1)?.scalar_mul(&ExactScalar::i());
    let ring = x.try_add(&y)?.try_pow(n - 1)?;
    let angular = ring.try_mul(&RadialForm::coordinate(3, 2)?)?;
    let lower = angular.mul_exp_weight(&Rat::one())?;
    let upper_radial = RadialForm::one(3)
        .try_sub(&RadialForm::radius(3).rat_mul(&rat(1, i64::from(n) + 1)))?;
    let upper = angular.try_mul(&upper_radial)?.mul_exp_weight(&Rat::one())?;

    let wrong_level = |f: &RadialForm| -> Result<RadialForm> {
        let coulomb = f.div_r_pow(1).rat_mul(&rat_int(2 * i64::from(n)));
        f.laplacian()?.neg().try_add(f)?.try_sub(&coulomb)
    };
    let upper_residual = wrong_level(&upper)?.try_sub(&upper.div_r_pow(1).rat_mul(&rat_int(4)))?;
    let lower_residual = wrong_level(&lower)?.try_sub(&lower.div_r_pow(1).rat_mul(&rat_int(2)))?;

    let m = i64::from(n);
    let combination = upper
        .try_sub(&lower.rat_mul(&rat_int(2)))?
        .rat_mul(&rat(m * m * (m + 1), 2));
    let rescaled = combination.scale_coordinates(&rat(1, m))?;
    let (_, _, psi1) = first_correction(n)?;
    let combination_ratio = rescaled
        .proportionality_ratio(&psi1)
        .ok_or(Error::InvalidParameter("combination is not proportional to the correction"))?;
    Ok(TwoStateReport { upper_residual, lower_residual, combination_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_correction_matches_classic_result() {
        // Ψ₁ = -(1 + r/2)𝓔z e^{-r}
        let (c1, c2, psi1) = first_correction(1).unwrap();
        assert_eq!(c1, rat_int(1));
        assert_eq!(c2, rat(1, 2));
        let z = RadialForm::coordinate(3, 2).unwrap();
        let expect = RadialForm::one(3)
            .try_add(&RadialForm::radius(3).rat_mul(&rat(1, 2)))
            .unwrap()
            .try_mul(&z)
            .unwrap()
            .mul_exp_weight(&Rat::one())
            .unwrap()
            .neg();
        assert_eq!(psi1, expect);
    }

    #[test]
    fn ansatz_coefficients_closed_form() {
        // (c₁, c₂) = (n²(n+1)/2, n/2)
        for n in 1..=6u32 {
            let (c1, c2, _) = first_correction(n).unwrap();
            let m = i64::from(n);
            assert_eq!(c1, rat(m * m * (m + 1), 2), "n={n}");
            assert_eq!(c2, rat(m, 2), "n={n}");
        }
    }

    #[test]
    fn first_order_shift_vanishes_by_parity() {
        for n in 1..=5u32 {
            assert!(first_order_shift_vanishes(n).unwrap());
        }
    }

    #[test]
    fn second_order_energies() {
        // ground state: E₂ = -9/4, polarizability 9/2
        assert_eq!(second_order_energy(1).unwrap(), rat(-9, 4));
        // first excited circular state: E₂ = -78, dipole 156
        assert_eq!(second_order_energy(2).unwrap(), rat_int(-78));
        assert_eq!(dipole_moment(2).unwrap(), rat_int(156));
    }

    #[test]
    fn dipole_routes_agree() {
        for n in 1..=6u32 {
            let d = dipole_moment(n).unwrap();
            assert_eq!(d, dipole_closed_form(n), "closed form n={n}");
            assert_eq!(d, stark_reference(n, i64::from(n) - 1).unwrap(), "reference n={n}");
        }
        // reference table spot values
        assert_eq!(stark_reference(1, 0).unwrap(), rat(9, 2));
        assert_eq!(stark_reference(2, 1).unwrap(), rat_int(156));
        assert_eq!(stark_reference(3, 2).unwrap(), rat_int(1377));
        assert!(stark_reference(2, 2).is_err());
    }

    #[test]
    fn bundle_invariant() {
        for n in 1..=4u32 {
            let res = stark_result(n).unwrap();
            assert_eq!(res.dipole_coefficient, res.e2_coefficient.clone() * rat_int(-2));
            assert_eq!(res.dipole_coefficient, res.dipole_closed_form);
            assert_eq!(res.dipole_coefficient, res.reference_dipole);
        }
    }

    #[test]
    fn auxiliary_states_and_combination() {
        for n in 1..=4u32 {
            let report = two_state_identity_check(n).unwrap();
            assert!(report.upper_residual.is_zero(), "upper n={n}");
            assert!(report.lower_residual.is_zero(), "lower n={n}");
            // the rescaled combination is n^{-n}·Ψ₁
            let m = i64::from(n);
            let mut expect = Rat::one();
            for _ in 0..n {
                expect /= Rat::from_integer(m.into());
            }
            assert_eq!(report.combination_ratio, ExactScalar::from_rat(expect), "ratio n={n}");
        }
    }
}
