//! JSON wire formats for the exact symbolic types.
//!
//! Rationals travel as `"p/q"` strings (never floats) so parse → emit → parse
//! is lossless; every emitter here has a matching deserializer and
//! conversions both ways are exact.

use anyhow::{anyhow, bail, Context, Result};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use hc_core::special::{Poly1, Var};
use hc_core::{ExactScalar, RadialForm, Rat, SymTensor};

fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

fn rat_from_string(s: &str) -> Result<Rat> {
    s.parse::<BigRational>().map_err(|e| anyhow!("bad rational {s:?}: {e}"))
}

/// Complex scalar with exact rational parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WireScalar {
    pub re: String,
    pub im: String,
}

impl WireScalar {
    pub fn from_exact(c: &ExactScalar) -> Self {
        WireScalar { re: rat_to_string(&c.re), im: rat_to_string(&c.im) }
    }

    pub fn to_exact(&self) -> Result<ExactScalar> {
        Ok(ExactScalar::new(rat_from_string(&self.re)?, rat_from_string(&self.im)?))
    }
}

/// One numerator monomial of a radial form. `r_parity` is `0` or `1`: an
/// optional single extra factor of `r` beyond the even powers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WireTerm {
    pub coeff: WireScalar,
    pub powers: Vec<u16>,
    pub r_parity: u8,
}

/// Radial form: numerator terms over `r^{r_power} (1+r²)^{cauchy_power}`
/// times `e^{-exp_rate·r}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WireForm {
    pub dim: usize,
    pub exp_rate: String,
    pub r_power: u32,
    pub cauchy_power: u32,
    pub terms: Vec<WireTerm>,
}

impl WireForm {
    pub fn from_form(f: &RadialForm) -> Self {
        WireForm {
            dim: f.dim(),
            exp_rate: rat_to_string(f.exp_rate()),
            r_power: f.r_power(),
            cauchy_power: f.cauchy_power(),
            terms: f
                .terms()
                .map(|(t, c)| WireTerm {
                    coeff: WireScalar::from_exact(c),
                    powers: t.powers.clone(),
                    r_parity: u8::from(t.r_parity),
                })
                .collect(),
        }
    }

    pub fn to_form(&self) -> Result<RadialForm> {
        let mut acc = RadialForm::zero(self.dim);
        for term in &self.terms {
            if term.r_parity > 1 {
                bail!("r_parity must be 0 or 1");
            }
            let mut piece = RadialForm::monomial(self.dim, &term.powers, term.coeff.to_exact()?)
                .map_err(|e| anyhow!("bad monomial: {e}"))?;
            if term.r_parity == 1 {
                piece = piece
                    .try_mul(&RadialForm::radius(self.dim))
                    .map_err(|e| anyhow!("bad radius factor: {e}"))?;
            }
            acc = acc.try_add(&piece).map_err(|e| anyhow!("bad term sum: {e}"))?;
        }
        acc = acc.div_r_pow(self.r_power).div_cauchy_pow(self.cauchy_power);
        let rate = rat_from_string(&self.exp_rate)?;
        acc.mul_exp_weight(&rate).map_err(|e| anyhow!("bad exponential rate: {e}"))
    }
}

/// One component of a symmetric tensor, keyed by its sorted index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WireComponent {
    pub index: Vec<u8>,
    pub form: WireForm,
}

/// Symmetric tensor of radial forms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WireTensor {
    pub dim: usize,
    pub rank: usize,
    pub components: Vec<WireComponent>,
}

impl WireTensor {
    pub fn from_tensor(t: &SymTensor) -> Self {
        WireTensor {
            dim: t.dim(),
            rank: t.rank(),
            components: t
                .components()
                .map(|(idx, f)| WireComponent { index: idx.clone(), form: WireForm::from_form(f) })
                .collect(),
        }
    }

    pub fn to_tensor(&self) -> Result<SymTensor> {
        let mut out = SymTensor::zero(self.dim, self.rank);
        for comp in &self.components {
            out.set_component(&comp.index, comp.form.to_form()?)
                .map_err(|e| anyhow!("bad tensor component: {e}"))?;
        }
        Ok(out)
    }
}

/// Dense univariate polynomial with a variable tag.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WirePoly {
    pub var: String,
    pub coeffs: Vec<WireScalar>,
}

impl WirePoly {
    pub fn from_poly(p: &Poly1) -> Self {
        WirePoly {
            var: p.var.as_str().to_owned(),
            coeffs: p.coeffs().iter().map(WireScalar::from_exact).collect(),
        }
    }

    pub fn to_poly(&self) -> Result<Poly1> {
        let var = Var::from_str(&self.var).map_err(|e| anyhow!("bad variable tag: {e}"))?;
        let coeffs: Result<Vec<ExactScalar>> =
            self.coeffs.iter().map(WireScalar::to_exact).collect();
        Ok(Poly1::from_coeffs(var, coeffs?))
    }
}

/// A bound state: quantum numbers, radius convention, tensor wavefunction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WireState {
    pub n: u32,
    pub l: u32,
    pub convention: String,
    pub tensor: WireTensor,
}

/// Quadratic-response summary: ansatz coefficients, energy and dipole
/// coefficients, and the closed-form references they must match.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WireStark {
    pub n: u32,
    pub c1: String,
    pub c2: String,
    pub e2_coefficient: String,
    pub dipole_coefficient: String,
    pub dipole_closed_form: String,
    pub reference_dipole: String,
}

impl WireStark {
    pub fn from_result(r: &hc_core::stark::StarkResult) -> Self {
        WireStark {
            n: r.n,
            c1: rat_to_string(&r.c1),
            c2: rat_to_string(&r.c2),
            e2_coefficient: rat_to_string(&r.e2_coefficient),
            dipole_coefficient: rat_to_string(&r.dipole_coefficient),
            dipole_closed_form: rat_to_string(&r.dipole_closed_form),
            reference_dipole: rat_to_string(&r.reference_dipole),
        }
    }

    pub fn check_consistent(&self) -> Result<()> {
        let e2 = rat_from_string(&self.e2_coefficient)?;
        let dip = rat_from_string(&self.dipole_coefficient)?;
        if dip != e2 * Rat::from_integer((-2).into()) {
            bail!("dipole coefficient is not -2 × energy coefficient");
        }
        Ok(())
    }
}

/// One line of a ladder-identity report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WireLadderLine {
    pub name: String,
    pub cases: usize,
    pub pass: bool,
}

/// Resolvent evaluation and its cross-check by separate summation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WireResolvent {
    pub lambda: f64,
    pub cos_angle: f64,
    pub terms: u32,
    pub smooth_sum: f64,
    pub assembled_value: f64,
    pub tail_bound: f64,
    /// Coefficient of the symbolic point mass δ(x−y); kept symbolic.
    pub delta_coefficient: f64,
    /// The same truncation summed the long way (three separate series).
    pub series_route: f64,
}

/// Parse any emitted JSON document back into its wire type and confirm the
/// value survives the round trip.
pub fn round_trip_form(json: &str) -> Result<RadialForm> {
    let wire: WireForm = serde_json::from_str(json).context("radial form JSON")?;
    let form = wire.to_form()?;
    if WireForm::from_form(&form) != wire {
        bail!("radial form did not survive the JSON round trip");
    }
    Ok(form)
}

pub fn round_trip_state(json: &str) -> Result<(WireState, SymTensor)> {
    let wire: WireState = serde_json::from_str(json).context("state JSON")?;
    let tensor = wire.tensor.to_tensor()?;
    if WireTensor::from_tensor(&tensor) != wire.tensor {
        bail!("state tensor did not survive the JSON round trip");
    }
    Ok((wire.clone(), tensor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hc_core::hydrogen::{momentum_state, psi_coordinate, RadiusConvention};
    use hc_core::special::laguerre_poly;

    #[test]
    fn form_round_trip_is_exact() {
        for form in [
            momentum_state(3, 1).unwrap(),
            momentum_state(4, 2).unwrap(),
            RadialForm::coordinate(3, 0)
                .unwrap()
                .mul_exp_weight(&Rat::new(1.into(), 3.into()))
                .unwrap()
                .div_r_pow(1),
        ] {
            let json = serde_json::to_string(&WireForm::from_form(&form)).unwrap();
            let back = round_trip_form(&json).unwrap();
            assert_eq!(back, form);
        }
    }

    #[test]
    fn tensor_round_trip_is_exact() {
        let tensor = psi_coordinate(3, 2, RadiusConvention::UnitOrbit).unwrap();
        let json = serde_json::to_string(&WireTensor::from_tensor(&tensor)).unwrap();
        let wire: WireTensor = serde_json::from_str(&json).unwrap();
        assert_eq!(wire.to_tensor().unwrap(), tensor);
    }

    #[test]
    fn poly_round_trip_is_exact() {
        let poly = laguerre_poly(4, 3);
        let json = serde_json::to_string(&WirePoly::from_poly(&poly)).unwrap();
        let wire: WirePoly = serde_json::from_str(&json).unwrap();
        assert_eq!(wire.to_poly().unwrap(), poly);
    }

    #[test]
    fn rational_strings_not_floats() {
        let wire = WireScalar::from_exact(&ExactScalar::new(
            Rat::new(1.into(), 3.into()),
            Rat::new((-7).into(), 2.into()),
        ));
        assert_eq!(wire.re, "1/3");
        assert_eq!(wire.im, "-7/2");
        assert_eq!(wire.to_exact().unwrap().re, Rat::new(1.into(), 3.into()));
    }
}
