//! The symbolic function class closed under the operators used throughout the
//! crate: differentiation, Laplacian, Euler degree counting, and the algebra
//! operations.
//!
//! A [`RadialForm`] over dimension `d ∈ {3, 4}` represents
//!
//! ```text
//!        Σ  coeff · x₁^a₁ ⋯ x_d^a_d · r^p
//!       ───────────────────────────────────  ·  e^{-α r}
//!             r^m · (1 + r²)^c
//! ```
//!
//! where `r² = Σ xᵢ²`, each numerator term carries a radius parity `p ∈ {0,1}`
//! (even powers of `r` are folded into the coordinates immediately), `m` and
//! `c` are kept minimal, and `α ≥ 0` is an exact rational. Differentiating any
//! member stays in the class because `∂r/∂xᵢ = xᵢ/r` and
//! `∂e^{-αr}/∂xᵢ = -α (xᵢ/r) e^{-αr}`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::math;
use crate::scalar::{double_factorial, factorial, rat_to_f64, ExactScalar, Rat};
use crate::{Error, Result};

/// One numerator monomial: coordinate powers plus a radius-parity bit.
///
/// The ordering (coordinate powers lexicographically, then parity) is a
/// monomial order with respect to multiplication by parity-even monomials,
/// which is all the exact-division routine needs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Term {
    /// Exponent of each coordinate.
    pub powers: Vec<u16>,
    /// Whether a single factor of `r` multiplies the monomial.
    pub r_parity: bool,
}

impl Term {
    fn unit(dim: usize) -> Self {
        Term { powers: vec![0; dim], r_parity: false }
    }

    /// Total degree including the parity factor.
    pub fn degree(&self) -> i64 {
        self.powers.iter().map(|&p| i64::from(p)).sum::<i64>() + i64::from(self.r_parity)
    }
}

type TermMap = BTreeMap<Term, ExactScalar>;

fn map_insert(map: &mut TermMap, term: Term, coeff: ExactScalar) {
    if coeff.is_zero() {
        return;
    }
    match map.entry(term) {
        alloc::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
        alloc::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get().clone() + coeff;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// Multiply a term map by `coeff · x^powers · r^parity`, folding `r² → Σxᵢ²`.
fn map_mul_term(map: &TermMap, powers: &[u16], parity: bool, coeff: &ExactScalar) -> TermMap {
    let dim = powers.len();
    let mut out = TermMap::new();
    for (t, c) in map {
        let mut p = t.powers.clone();
        for (pi, &qi) in p.iter_mut().zip(powers) {
            *pi += qi;
        }
        let prod = c.clone() * coeff.clone();
        if t.r_parity && parity {
            // r·r = r² = Σ xᵢ²
            for i in 0..dim {
                let mut p2 = p.clone();
                p2[i] += 2;
                map_insert(&mut out, Term { powers: p2, r_parity: false }, prod.clone());
            }
        } else {
            map_insert(&mut out, Term { powers: p, r_parity: t.r_parity || parity }, prod);
        }
    }
    out
}

fn map_mul(a: &TermMap, b: &TermMap, dim: usize) -> TermMap {
    let mut out = TermMap::new();
    for (t, c) in b {
        debug_assert_eq!(t.powers.len(), dim);
        let part = map_mul_term(a, &t.powers, t.r_parity, c);
        for (term, coeff) in part {
            map_insert(&mut out, term, coeff);
        }
    }
    out
}

fn map_add_assign(a: &mut TermMap, b: &TermMap) {
    for (t, c) in b {
        map_insert(a, t.clone(), c.clone());
    }
}

fn map_scale(map: &TermMap, s: &ExactScalar) -> TermMap {
    let mut out = TermMap::new();
    for (t, c) in map {
        map_insert(&mut out, t.clone(), c.clone() * s.clone());
    }
    out
}

/// `Σ xᵢ²` as a term map.
fn sum_squares_map(dim: usize) -> TermMap {
    let mut out = TermMap::new();
    for i in 0..dim {
        let mut powers = vec![0u16; dim];
        powers[i] = 2;
        map_insert(&mut out, Term { powers, r_parity: false }, ExactScalar::one());
    }
    out
}

/// `1 + Σ xᵢ²` as a term map.
fn one_plus_sum_squares_map(dim: usize) -> TermMap {
    let mut out = sum_squares_map(dim);
    map_insert(&mut out, Term::unit(dim), ExactScalar::one());
    out
}

/// Multiply by `r^k` (folding even powers into coordinates).
fn map_mul_r_pow(map: &TermMap, k: u32, dim: usize) -> TermMap {
    let mut out = map.clone();
    let s = sum_squares_map(dim);
    for _ in 0..(k / 2) {
        out = map_mul(&out, &s, dim);
    }
    if k % 2 == 1 {
        out = map_mul_term(&out, &vec![0u16; dim], true, &ExactScalar::one());
    }
    out
}

/// Exact division of `num` by a parity-even divisor; `None` when not divisible.
fn map_try_div(num: &TermMap, div: &TermMap) -> Option<TermMap> {
    let (dlt, dlc) = div.last_key_value()?;
    debug_assert!(!dlt.r_parity, "divisor must be parity-even");
    let mut rem = num.clone();
    let mut quo = TermMap::new();
    while let Some((lt, lc)) = rem.last_key_value() {
        let divisible = lt.powers.iter().zip(&dlt.powers).all(|(a, b)| a >= b);
        if !divisible {
            return None;
        }
        let qpow: Vec<u16> = lt.powers.iter().zip(&dlt.powers).map(|(a, b)| a - b).collect();
        let qterm = Term { powers: qpow, r_parity: lt.r_parity };
        let qcoeff = lc.clone() * dlc.inverse().expect("divisor leading coefficient is zero");
        let sub = map_mul_term(div, &qterm.powers, qterm.r_parity, &qcoeff);
        for (t, c) in sub {
            map_insert(&mut rem, t, -c);
        }
        map_insert(&mut quo, qterm, qcoeff);
    }
    Some(quo)
}

/// Average of the monomial `Π ωᵢ^{aᵢ}` over the unit sphere `S^{d-1}`.
///
/// Zero when any exponent is odd; otherwise
/// `Π (aᵢ-1)!!  /  Π_{j=1..h} (d + 2(j-1))` with `h = (Σaᵢ)/2`.
pub fn sphere_average_monomial(dim: usize, powers: &[u16]) -> Rat {
    assert_eq!(powers.len(), dim);
    if powers.iter().any(|&p| p % 2 == 1) {
        return Rat::zero();
    }
    let mut num = num_bigint::BigInt::one();
    for &p in powers {
        num *= double_factorial(i64::from(p) - 1);
    }
    let total: u32 = powers.iter().map(|&p| u32::from(p)).sum();
    let mut den = num_bigint::BigInt::one();
    for j in 0..(total / 2) {
        den *= num_bigint::BigInt::from(dim as u32 + 2 * j);
    }
    Rat::new(num, den)
}

/// Exact radial integral `∫₀^∞ r^k e^{-βr} dr = k! / β^{k+1}` for `β > 0`.
pub fn radial_integral(k: u32, beta: &Rat) -> Result<Rat> {
    if !beta.is_positive() {
        return Err(Error::DivergentIntegral);
    }
    let mut beta_pow = Rat::one();
    for _ in 0..=k {
        beta_pow *= beta.clone();
    }
    Ok(Rat::from_integer(factorial(u64::from(k))) / beta_pow)
}

/// Symbolic member of the radial function class (see module docs).
#[derive(Clone)]
pub struct RadialForm {
    dim: usize,
    exp_rate: Rat,
    r_power: u32,
    cauchy_power: u32,
    terms: TermMap,
}

impl RadialForm {
    // ---------------------------------------------------------------- basics

    fn check_dim(dim: usize) -> Result<()> {
        if dim == 3 || dim == 4 {
            Ok(())
        } else {
            Err(Error::UnsupportedDimension(dim))
        }
    }

    /// The zero function in dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        Self::check_dim(dim).expect("dimension must be 3 or 4");
        RadialForm {
            dim,
            exp_rate: Rat::zero(),
            r_power: 0,
            cauchy_power: 0,
            terms: TermMap::new(),
        }
    }

    /// A constant function.
    pub fn constant(dim: usize, value: ExactScalar) -> Self {
        let mut f = Self::zero(dim);
        map_insert(&mut f.terms, Term::unit(dim), value);
        f
    }

    /// The constant one.
    pub fn one(dim: usize) -> Self {
        Self::constant(dim, ExactScalar::one())
    }

    /// The coordinate function `xᵢ` (`axis` is zero-based).
    pub fn coordinate(dim: usize, axis: usize) -> Result<Self> {
        Self::check_dim(dim)?;
        if axis >= dim {
            return Err(Error::IndexOutOfRange { index: axis, bound: dim });
        }
        let mut powers = vec![0u16; dim];
        powers[axis] = 1;
        Self::monomial(dim, &powers, ExactScalar::one())
    }

    /// The monomial `coeff · Π xᵢ^{aᵢ}`.
    pub fn monomial(dim: usize, powers: &[u16], coeff: ExactScalar) -> Result<Self> {
        Self::check_dim(dim)?;
        if powers.len() != dim {
            return Err(Error::DimensionMismatch { left: powers.len(), right: dim });
        }
        let mut f = Self::zero(dim);
        map_insert(&mut f.terms, Term { powers: powers.to_vec(), r_parity: false }, coeff);
        Ok(f)
    }

    /// The radius function `r`.
    pub fn radius(dim: usize) -> Self {
        let mut f = Self::zero(dim);
        map_insert(&mut f.terms, Term { powers: vec![0; dim], r_parity: true }, ExactScalar::one());
        f
    }

    /// `r²` expanded as `Σ xᵢ²`.
    pub fn radius_squared(dim: usize) -> Self {
        let mut f = Self::zero(dim);
        f.terms = sum_squares_map(dim);
        f
    }

    /// `r^k` for any `k ≥ 0` (even powers expand into coordinates).
    pub fn radius_pow(dim: usize, k: u32) -> Self {
        let mut f = Self::one(dim);
        f.terms = map_mul_r_pow(&f.terms, k, dim);
        f
    }

    /// `1 / r^k`.
    pub fn inverse_radius_pow(dim: usize, k: u32) -> Self {
        let mut f = Self::one(dim);
        f.r_power = k;
        f
    }

    /// `1 / (1 + r²)^k`.
    pub fn cauchy_kernel_pow(dim: usize, k: u32) -> Self {
        let mut f = Self::one(dim);
        f.cauchy_power = k;
        f
    }

    /// `e^{-α r}` with `α ≥ 0`.
    pub fn exp_weight(dim: usize, alpha: Rat) -> Result<Self> {
        if alpha.is_negative() {
            return Err(Error::InvalidParameter("exponential rate must be non-negative"));
        }
        let mut f = Self::one(dim);
        f.exp_rate = alpha;
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn exp_rate(&self) -> &Rat {
        &self.exp_rate
    }

    pub fn r_power(&self) -> u32 {
        self.r_power
    }

    pub fn cauchy_power(&self) -> u32 {
        self.cauchy_power
    }

    /// Numerator terms in canonical (sorted) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Term, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a given numerator term (zero when absent).
    pub fn coefficient(&self, term: &Term) -> ExactScalar {
        self.terms.get(term).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for a pure polynomial in the coordinates: no denominators, no
    /// exponential weight, and no odd radius factor.
    pub fn is_polynomial(&self) -> bool {
        self.r_power == 0
            && self.cauchy_power == 0
            && self.exp_rate.is_zero()
            && self.terms.keys().all(|t| !t.r_parity)
    }

    /// True when every numerator term is parity-even.
    pub fn is_parity_even(&self) -> bool {
        self.terms.keys().all(|t| !t.r_parity)
    }

    /// Degree of a homogeneous form (numerator degree minus `m`), or `None`
    /// if the form is not homogeneous (mixed degrees, Cauchy denominator, or
    /// exponential weight).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        if self.is_zero() || self.cauchy_power != 0 || !self.exp_rate.is_zero() {
            return None;
        }
        let mut degs = self.terms.keys().map(Term::degree);
        let first = degs.next()?;
        if degs.all(|d| d == first) {
            Some(first - i64::from(self.r_power))
        } else {
            None
        }
    }

    /// Largest numerator degree (including parity), if non-zero.
    pub fn max_term_degree(&self) -> Option<i64> {
        self.terms.keys().map(Term::degree).max()
    }

    // ------------------------------------------------------- canonical form

    /// Reduce `(m, c)` to their minimal values and normalise the zero form.
    fn normalize(&mut self) {
        if self.terms.is_empty() {
            self.r_power = 0;
            self.cauchy_power = 0;
            self.exp_rate = Rat::zero();
            return;
        }
        let s = sum_squares_map(self.dim);
        // Peel single powers of r: (A + Br)/r = B + (A/Σx²)·r when Σx² | A.
        while self.r_power >= 1 {
            let mut even = TermMap::new();
            let mut odd = TermMap::new();
            for (t, c) in &self.terms {
                if t.r_parity {
                    odd.insert(Term { r_parity: false, ..t.clone() }, c.clone());
                } else {
                    even.insert(t.clone(), c.clone());
                }
            }
            let Some(q) = map_try_div(&even, &s) else { break };
            let mut next = TermMap::new();
            for (t, c) in odd {
                map_insert(&mut next, t, c);
            }
            for (t, c) in q {
                map_insert(&mut next, Term { r_parity: true, ..t }, c);
            }
            self.terms = next;
            self.r_power -= 1;
        }
        let one_plus = one_plus_sum_squares_map(self.dim);
        while self.cauchy_power >= 1 {
            let Some(q) = map_try_div(&self.terms, &one_plus) else { break };
            self.terms = q;
            self.cauchy_power -= 1;
        }
        if self.terms.is_empty() {
            self.r_power = 0;
            self.cauchy_power = 0;
            self.exp_rate = Rat::zero();
        }
    }

    /// Return the canonical representative (used by tests; all constructors
    /// and operations already normalise).
    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    /// Structural comparison of the canonical representation (all fields).
    /// Mathematical equality is `==`, which cross-multiplies denominators.
    pub fn same_representation(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.exp_rate == other.exp_rate
            && self.r_power == other.r_power
            && self.cauchy_power == other.cauchy_power
            && self.terms == other.terms
    }

    // ------------------------------------------------------------ arithmetic

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.dim, right: other.dim })
        }
    }

    /// Lift the numerator so it sits over `r^m (1+r²)^c`.
    fn lifted_terms(&self, m: u32, c: u32) -> TermMap {
        debug_assert!(m >= self.r_power && c >= self.cauchy_power);
        let mut out = map_mul_r_pow(&self.terms, m - self.r_power, self.dim);
        let one_plus = one_plus_sum_squares_map(self.dim);
        for _ in 0..(c - self.cauchy_power) {
            out = map_mul(&out, &one_plus, self.dim);
        }
        out
    }

    /// Checked addition. Adding forms with different exponential rates is an
    /// error (the class holds a single weight); the zero form is neutral.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.exp_rate != other.exp_rate {
            return Err(Error::ExpRateMismatch);
        }
        let m = self.r_power.max(other.r_power);
        let c = self.cauchy_power.max(other.cauchy_power);
        let mut terms = self.lifted_terms(m, c);
        map_add_assign(&mut terms, &other.lifted_terms(m, c));
        let mut out = RadialForm {
            dim: self.dim,
            exp_rate: self.exp_rate.clone(),
            r_power: m,
            cauchy_power: c,
            terms,
        };
        out.normalize();
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.clone().neg())
    }

    pub fn neg(self) -> Self {
        let minus_one = -ExactScalar::one();
        RadialForm { terms: map_scale(&self.terms, &minus_one), ..self }
    }

    /// Checked multiplication (exponential rates add).
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut out = RadialForm {
            dim: self.dim,
            exp_rate: &self.exp_rate + &other.exp_rate,
            r_power: self.r_power + other.r_power,
            cauchy_power: self.cauchy_power + other.cauchy_power,
            terms: map_mul(&self.terms, &other.terms, self.dim),
        };
        if out.terms.is_empty() {
            return Ok(Self::zero(self.dim));
        }
        out.normalize();
        Ok(out)
    }

    /// Multiply by an exact scalar.
    pub fn scalar_mul(&self, s: &ExactScalar) -> Self {
        let mut out = RadialForm { terms: map_scale(&self.terms, s), ..self.clone() };
        if out.terms.is_empty() {
            out = Self::zero(self.dim);
        }
        out
    }

    /// Multiply by a rational scalar.
    pub fn rat_mul(&self, s: &Rat) -> Self {
        self.scalar_mul(&ExactScalar::from_rat(s.clone()))
    }

    /// Integer power.
    pub fn try_pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(self.dim);
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Divide by `r^k`.
    pub fn div_r_pow(&self, k: u32) -> Self {
        let mut out = self.clone();
        out.r_power += k;
        out.normalize();
        out
    }

    /// Multiply by `r^k`.
    pub fn mul_r_pow(&self, k: u32) -> Self {
        let mut out = self.clone();
        out.terms = map_mul_r_pow(&out.terms, k, self.dim);
        out.normalize();
        out
    }

    /// Divide by `(1 + r²)^k`.
    pub fn div_cauchy_pow(&self, k: u32) -> Self {
        let mut out = self.clone();
        out.cauchy_power += k;
        out.normalize();
        out
    }

    /// Attach an additional exponential weight `e^{-α r}` (`α ≥ 0`).
    pub fn mul_exp_weight(&self, alpha: &Rat) -> Result<Self> {
        if alpha.is_negative() {
            return Err(Error::InvalidParameter("exponential rate must be non-negative"));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mut out = self.clone();
        out.exp_rate += alpha;
        Ok(out)
    }

    /// Complex-conjugate the coefficients (coordinates and `r` are real).
    pub fn conjugate(&self) -> Self {
        let mut out = self.clone();
        out.terms = self.terms.iter().map(|(t, c)| (t.clone(), c.conj())).collect();
        out
    }

    /// `self = q·other` exactly for a scalar `q`? Returns the ratio when the
    /// two forms are proportional, `None` otherwise. A scalar multiple never
    /// changes the canonical denominators or the term set, so the candidate
    /// ratio can be read off any shared term and then confirmed by equality.
    pub fn proportionality_ratio(&self, other: &Self) -> Option<ExactScalar> {
        if other.is_zero() {
            return self.is_zero().then(ExactScalar::zero);
        }
        if self.is_zero() {
            return Some(ExactScalar::zero());
        }
        let (t0, c0) = other.terms.iter().next()?;
        let num = self.terms.get(t0)?;
        let q = num.clone().div_exact(c0).ok()?;
        (*self == other.scalar_mul(&q)).then_some(q)
    }

    // --------------------------------------------------------- differential

    /// Exact partial derivative `∂/∂xᵢ`.
    ///
    /// Uses `∂r/∂xᵢ = xᵢ/r` and `∂e^{-αr}/∂xᵢ = -α (xᵢ/r) e^{-αr}`; the
    /// result is assembled over the common denominator `r^{m+2}(1+r²)^{c+1}`
    /// and then reduced to canonical form.
    pub fn derivative(&self, axis: usize) -> Result<Self> {
        if axis >= self.dim {
            return Err(Error::IndexOutOfRange { index: axis, bound: self.dim });
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let dim = self.dim;
        let s = sum_squares_map(dim);
        let one_plus = one_plus_sum_squares_map(dim);

        // (∂ᵢ N) · r², computed term by term (always polynomial).
        let mut dn_r2 = TermMap::new();
        for (t, c) in &self.terms {
            let a_i = t.powers[axis];
            if a_i > 0 {
                let mut powers = t.powers.clone();
                powers[axis] -= 1;
                let dropped = Term { powers, r_parity: t.r_parity };
                let scaled = c.scale(&Rat::from_integer(a_i.into()));
                // multiply by r² = Σ xⱼ²
                let single: TermMap = [(dropped, scaled)].into_iter().collect();
                let with_s = map_mul(&single, &s, dim);
                map_add_assign(&mut dn_r2, &with_s);
            }
            if t.r_parity {
                // ∂ᵢ r = xᵢ/r contributes x^{a+eᵢ} r^{-1}; times r² gives x^{a+eᵢ}·r.
                let mut powers = t.powers.clone();
                powers[axis] += 1;
                map_insert(&mut dn_r2, Term { powers, r_parity: true }, c.clone());
            }
        }

        let mut xi = vec![0u16; dim];
        xi[axis] = 1;
        let n_xi = map_mul_term(&self.terms, &xi, false, &ExactScalar::one());
        let n_xi_r = map_mul_term(&self.terms, &xi, true, &ExactScalar::one());

        let mut num = map_mul(&dn_r2, &one_plus, dim);
        if self.r_power > 0 {
            let mc = ExactScalar::from_int(-(i64::from(self.r_power)));
            let piece = map_mul(&map_scale(&n_xi, &mc), &one_plus, dim);
            map_add_assign(&mut num, &piece);
        }
        if self.cauchy_power > 0 {
            let cc = ExactScalar::from_int(-2 * i64::from(self.cauchy_power));
            let piece = map_mul(&map_scale(&n_xi, &cc), &s, dim);
            map_add_assign(&mut num, &piece);
        }
        if !self.exp_rate.is_zero() {
            let ac = ExactScalar::from_rat(-self.exp_rate.clone());
            let piece = map_mul(&map_scale(&n_xi_r, &ac), &one_plus, dim);
            map_add_assign(&mut num, &piece);
        }

        let mut out = RadialForm {
            dim,
            exp_rate: self.exp_rate.clone(),
            r_power: self.r_power + 2,
            cauchy_power: self.cauchy_power + 1,
            terms: num,
        };
        out.normalize();
        Ok(out)
    }

    /// Gradient as one form per axis.
    pub fn gradient(&self) -> Result<Vec<Self>> {
        (0..self.dim).map(|i| self.derivative(i)).collect()
    }

    /// Laplacian `Σ ∂²/∂xᵢ²`.
    pub fn laplacian(&self) -> Result<Self> {
        let mut acc = Self::zero(self.dim);
        for i in 0..self.dim {
            acc = acc.try_add(&self.derivative(i)?.derivative(i)?)?;
        }
        Ok(acc)
    }

    /// Euler degree operator `x·∇` (eigenvalue = degree on homogeneous input).
    pub fn euler_degree(&self) -> Result<Self> {
        let mut acc = Self::zero(self.dim);
        for i in 0..self.dim {
            let xi = Self::coordinate(self.dim, i)?;
            acc = acc.try_add(&xi.try_mul(&self.derivative(i)?)?)?;
        }
        Ok(acc)
    }

    /// Directional product `x·∇f` in momentum-style checks is the same
    /// operator; alias kept for readability at call sites.
    pub fn radial_scaling_operator(&self) -> Result<Self> {
        self.euler_degree()
    }

    // ------------------------------------------------------------ evaluation

    /// Evaluate numerically; returns `(re, im)`.
    pub fn eval_complex_f64(&self, point: &[f64]) -> (f64, f64) {
        assert_eq!(point.len(), self.dim, "evaluation point has wrong dimension");
        let r2: f64 = point.iter().map(|x| x * x).sum();
        let r = math::sqrt(r2);
        let mut re = 0.0;
        let mut im = 0.0;
        for (t, c) in &self.terms {
            let mut mono = 1.0;
            for (x, &p) in point.iter().zip(&t.powers) {
                for _ in 0..p {
                    mono *= x;
                }
            }
            if t.r_parity {
                mono *= r;
            }
            let (cr, ci) = c.to_f64_pair();
            re += cr * mono;
            im += ci * mono;
        }
        let mut den = 1.0;
        for _ in 0..self.r_power {
            den *= r;
        }
        for _ in 0..self.cauchy_power {
            den *= 1.0 + r2;
        }
        let weight = math::exp(-rat_to_f64(&self.exp_rate) * r);
        (re / den * weight, im / den * weight)
    }

    /// Evaluate numerically, returning the real part (intended for forms with
    /// real coefficients).
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.eval_complex_f64(point).0
    }

    /// Exact evaluation at a rational point for forms with no odd radius
    /// factor, an even `r_power`, and no exponential weight.
    pub fn eval_even_exact(&self, point: &[Rat]) -> Result<ExactScalar> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch { left: point.len(), right: self.dim });
        }
        if !self.exp_rate.is_zero() {
            return Err(Error::InvalidParameter("exact evaluation requires zero exponential rate"));
        }
        if self.r_power % 2 == 1 || !self.is_parity_even() {
            return Err(Error::OddRadiusPower);
        }
        let r2: Rat = point.iter().map(|x| x * x).sum();
        let mut acc = ExactScalar::zero();
        for (t, c) in &self.terms {
            let mut mono = Rat::one();
            for (x, &p) in point.iter().zip(&t.powers) {
                for _ in 0..p {
                    mono *= x.clone();
                }
            }
            acc += c.scale(&mono);
        }
        if self.r_power > 0 {
            if r2.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let mut den = Rat::one();
            for _ in 0..(self.r_power / 2) {
                den *= r2.clone();
            }
            acc = acc.scale(&den.recip());
        }
        if self.cauchy_power > 0 {
            let mut den = Rat::one();
            let one_plus = Rat::one() + r2;
            for _ in 0..self.cauchy_power {
                den *= one_plus.clone();
            }
            acc = acc.scale(&den.recip());
        }
        Ok(acc)
    }

    /// Average over the unit sphere `r = 1` (where `1/r^m = 1` and
    /// `1/(1+r²)^c = 2^{-c}`); requires zero exponential rate. Odd-parity
    /// pieces average to zero by symmetry, so parity is unrestricted.
    pub fn sphere_average_unit(&self) -> Result<ExactScalar> {
        if !self.exp_rate.is_zero() {
            return Err(Error::InvalidParameter("sphere average requires zero exponential rate"));
        }
        let mut acc = ExactScalar::zero();
        for (t, c) in &self.terms {
            // On the sphere the stray factor of r is 1, so the monomial part
            // alone decides the average (odd monomials vanish by symmetry).
            let avg = sphere_average_monomial(self.dim, &t.powers);
            acc += c.scale(&avg);
        }
        if self.cauchy_power > 0 {
            let mut scale = Rat::one();
            for _ in 0..self.cauchy_power {
                scale /= Rat::from_integer(2.into());
            }
            acc = acc.scale(&scale);
        }
        Ok(acc)
    }

    /// Substitute `x → s·x` for a positive rational `s` (forms with a Cauchy
    /// denominator are not closed under this map and are rejected).
    pub fn scale_coordinates(&self, s: &Rat) -> Result<Self> {
        if !s.is_positive() {
            return Err(Error::InvalidParameter("coordinate scale must be positive"));
        }
        if self.cauchy_power != 0 {
            return Err(Error::InvalidParameter(
                "coordinate scaling not supported with a Cauchy denominator",
            ));
        }
        let mut terms = TermMap::new();
        for (t, c) in &self.terms {
            let mut factor = Rat::one();
            for _ in 0..t.degree() {
                factor *= s.clone();
            }
            map_insert(&mut terms, t.clone(), c.scale(&factor));
        }
        let mut inv_m = Rat::one();
        for _ in 0..self.r_power {
            inv_m /= s.clone();
        }
        let mut out = RadialForm {
            dim: self.dim,
            exp_rate: &self.exp_rate * s,
            r_power: self.r_power,
            cauchy_power: 0,
            terms: map_scale(&terms, &ExactScalar::from_rat(inv_m)),
        };
        out.normalize();
        Ok(out)
    }

    // ------------------------------------------------------------- integrals

    /// Exact full-space integral over ℝ³ in units of π: the true integral is
    /// `π ·` (returned value). Requires dimension 3, no Cauchy denominator,
    /// and a strictly positive exponential rate.
    pub fn integral_r3_in_units_of_pi(&self) -> Result<ExactScalar> {
        if self.dim != 3 {
            return Err(Error::UnsupportedDimension(self.dim));
        }
        if self.cauchy_power != 0 {
            return Err(Error::InvalidParameter(
                "full-space integral requires no Cauchy denominator",
            ));
        }
        if self.is_zero() {
            return Ok(ExactScalar::zero());
        }
        if !self.exp_rate.is_positive() {
            return Err(Error::DivergentIntegral);
        }
        let mut acc = ExactScalar::zero();
        for (t, c) in &self.terms {
            let avg = sphere_average_monomial(self.dim, &t.powers);
            if avg.is_zero() {
                continue;
            }
            let mu: i64 = t.powers.iter().map(|&p| i64::from(p)).sum();
            let k = mu + i64::from(t.r_parity) - i64::from(self.r_power) + 2;
            if k < 0 {
                return Err(Error::DivergentIntegral);
            }
            let radial = radial_integral(k as u32, &self.exp_rate)?;
            acc += c.scale(&(avg * radial * Rat::from_integer(4.into())));
        }
        Ok(acc)
    }

    /// Hermitian inner product `∫ f̄ g d³x` in units of π (see
    /// [`integral_r3_in_units_of_pi`](Self::integral_r3_in_units_of_pi)).
    pub fn inner_product_r3_in_units_of_pi(&self, other: &Self) -> Result<ExactScalar> {
        self.conjugate().try_mul(other)?.integral_r3_in_units_of_pi()
    }
}

impl PartialEq for RadialForm {
    /// Mathematical equality: identical exponential rate and
    /// cross-multiplied canonical numerators agree.
    fn eq(&self, other: &Self) -> bool {
        if self.dim != other.dim {
            return false;
        }
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.exp_rate != other.exp_rate {
            return false;
        }
        let lhs = self.lifted_terms(
            self.r_power.max(other.r_power),
            self.cauchy_power.max(other.cauchy_power),
        );
        let rhs = other.lifted_terms(
            self.r_power.max(other.r_power),
            self.cauchy_power.max(other.cauchy_power),
        );
        lhs == rhs
    }
}

impl Eq for RadialForm {}

impl fmt::Display for RadialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        const NAMES: [&str; 4] = ["x", "y", "z", "w"];
        let mut first = true;
        for (t, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &p) in t.powers.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "·{}", NAMES[i])?,
                    _ => write!(f, "·{}^{}", NAMES[i], p)?,
                }
            }
            if t.r_parity {
                write!(f, "·r")?;
            }
        }
        if self.r_power > 0 {
            write!(f, " / r^{}", self.r_power)?;
        }
        if self.cauchy_power > 0 {
            write!(f, " / (1+r²)^{}", self.cauchy_power)?;
        }
        if !self.exp_rate.is_zero() {
            write!(f, " · e^(-{} r)", self.exp_rate)?;
        }
        Ok(())
    }
}

impl fmt::Debug for RadialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Render a form compactly for error messages and reports.
pub fn short_display(f: &RadialForm) -> String {
    use alloc::string::ToString;
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn x(dim: usize, i: usize) -> RadialForm {
        RadialForm::coordinate(dim, i).unwrap()
    }

    #[test]
    fn derivative_of_radius_is_x_over_r() {
        let r = RadialForm::radius(3);
        let dx = r.derivative(0).unwrap();
        let expected = x(3, 0).div_r_pow(1);
        assert_eq!(dx, expected);
    }

    #[test]
    fn derivative_of_exp_weight() {
        // ∂/∂x e^{-αr} = -α (x/r) e^{-αr}
        let alpha = rat(3, 2);
        let w = RadialForm::exp_weight(3, alpha.clone()).unwrap();
        let dx = w.derivative(0).unwrap();
        let expected = x(3, 0)
            .rat_mul(&-alpha.clone())
            .div_r_pow(1)
            .mul_exp_weight(&alpha)
            .unwrap();
        assert_eq!(dx, expected);
    }

    #[test]
    fn laplacian_of_inverse_radius_vanishes_in_3d() {
        let f = RadialForm::inverse_radius_pow(3, 1);
        assert!(f.laplacian().unwrap().is_zero());
    }

    #[test]
    fn laplacian_of_inverse_radius_squared_vanishes_in_4d() {
        let f = RadialForm::inverse_radius_pow(4, 2);
        assert!(f.laplacian().unwrap().is_zero());
    }

    #[test]
    fn laplacian_of_exp_weight() {
        // Δ e^{-αr} = (α² - 2α/r) e^{-αr}
        let alpha = rat(2, 1);
        let w = RadialForm::exp_weight(3, alpha.clone()).unwrap();
        let lap = w.laplacian().unwrap();
        let alpha_sq = RadialForm::constant(3, ExactScalar::from_rat(&alpha * &alpha));
        let two_alpha_over_r = RadialForm::constant(3, ExactScalar::from_rat(&alpha + &alpha))
            .div_r_pow(1);
        let expected = alpha_sq
            .try_sub(&two_alpha_over_r)
            .unwrap()
            .mul_exp_weight(&alpha)
            .unwrap();
        assert_eq!(lap, expected);
    }

    #[test]
    fn odd_radius_cube_reduces_to_polynomial_times_r() {
        // r³ = (x²+y²+z²)·r canonically
        let r = RadialForm::radius(3);
        let r3 = r.try_pow(3).unwrap();
        let expected = RadialForm::radius_squared(3).try_mul(&RadialForm::radius(3)).unwrap();
        assert!(r3.same_representation(&expected));
        assert_eq!(r3.r_power(), 0);
        assert!(!r3.is_parity_even());
    }

    #[test]
    fn x_times_r_over_r_is_canonically_x() {
        let xr = x(3, 0).try_mul(&RadialForm::radius(3)).unwrap();
        let back = xr.div_r_pow(1);
        assert!(back.same_representation(&x(3, 0)));
        assert_eq!(back, x(3, 0));
    }

    #[test]
    fn sum_squares_over_r_reduces_to_r() {
        let s = RadialForm::radius_squared(3);
        let reduced = s.div_r_pow(1);
        assert!(reduced.same_representation(&RadialForm::radius(3)));
    }

    #[test]
    fn cauchy_reduction_is_minimal() {
        // (1+r²)² / (1+r²)³ = 1/(1+r²)
        let one_plus = RadialForm::one(3).try_add(&RadialForm::radius_squared(3)).unwrap();
        let num = one_plus.try_pow(2).unwrap();
        let f = num.div_cauchy_pow(3);
        assert_eq!(f.cauchy_power(), 1);
        assert!(f.same_representation(&RadialForm::cauchy_kernel_pow(3, 1)));
    }

    #[test]
    fn add_with_mismatched_exp_rates_is_an_error() {
        let a = RadialForm::exp_weight(3, rat_int(1)).unwrap();
        let b = RadialForm::exp_weight(3, rat_int(2)).unwrap();
        assert_eq!(a.try_add(&b), Err(Error::ExpRateMismatch));
        // Adding zero is always fine.
        assert_eq!(a.try_add(&RadialForm::zero(3)).unwrap(), a);
    }

    #[test]
    fn add_with_mismatched_dims_is_an_error() {
        let a = RadialForm::one(3);
        let b = RadialForm::one(4);
        assert!(matches!(a.try_add(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn euler_degree_counts_homogeneous_degree() {
        // x·∇ (x²y) = 3 x²y ; and on x/r the degree is 0.
        let f = RadialForm::monomial(3, &[2, 1, 0], ExactScalar::one()).unwrap();
        assert_eq!(f.euler_degree().unwrap(), f.rat_mul(&rat_int(3)));
        let g = x(3, 0).div_r_pow(1);
        assert!(g.euler_degree().unwrap().is_zero());
        assert_eq!(g.homogeneous_degree(), Some(0));
    }

    #[test]
    fn product_rule_holds() {
        let f = x(3, 0).try_mul(&RadialForm::radius(3)).unwrap();
        let g = RadialForm::cauchy_kernel_pow(3, 1);
        let fg = f.try_mul(&g).unwrap();
        let lhs = fg.derivative(2).unwrap();
        let rhs = f
            .derivative(2)
            .unwrap()
            .try_mul(&g)
            .unwrap()
            .try_add(&f.try_mul(&g.derivative(2).unwrap()).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_even_evaluation_matches_f64() {
        let f = RadialForm::radius_squared(3)
            .rat_mul(&rat(2, 3))
            .div_cauchy_pow(2);
        let p = [rat(1, 2), rat(-1, 3), rat_int(2)];
        let exact = f.eval_even_exact(&p).unwrap();
        let pf: alloc::vec::Vec<f64> = p.iter().map(rat_to_f64).collect();
        let approx = f.eval_f64(&pf);
        assert!((exact.to_f64_real().unwrap() - approx).abs() < 1e-12);
    }

    #[test]
    fn exact_even_evaluation_rejects_odd_forms() {
        let f = RadialForm::radius(3);
        assert_eq!(
            f.eval_even_exact(&[rat_int(1), rat_int(0), rat_int(0)]),
            Err(Error::OddRadiusPower)
        );
    }

    #[test]
    fn scale_coordinates_rescales_rate_and_terms() {
        // f = x e^{-r}; f(2x) = 2x e^{-2r}
        let f = x(3, 0).mul_exp_weight(&rat_int(1)).unwrap();
        let g = f.scale_coordinates(&rat_int(2)).unwrap();
        let expected = x(3, 0).rat_mul(&rat_int(2)).mul_exp_weight(&rat_int(2)).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn sphere_averages_match_hand_values() {
        // ⟨x²⟩ = 1/3 in 3D and 1/4 in 4D; ⟨x⁴⟩ = 1/5 (3D); ⟨x²y²⟩ = 1/15 (3D).
        assert_eq!(sphere_average_monomial(3, &[2, 0, 0]), rat(1, 3));
        assert_eq!(sphere_average_monomial(4, &[2, 0, 0, 0]), rat(1, 4));
        assert_eq!(sphere_average_monomial(3, &[4, 0, 0]), rat(1, 5));
        assert_eq!(sphere_average_monomial(3, &[2, 2, 0]), rat(1, 15));
        assert_eq!(sphere_average_monomial(3, &[1, 2, 0]), Rat::zero());
        // 4D: ⟨x²y²⟩ = 1/24, ⟨x⁴⟩ = 3/24 = 1/8.
        assert_eq!(sphere_average_monomial(4, &[2, 2, 0, 0]), rat(1, 24));
        assert_eq!(sphere_average_monomial(4, &[4, 0, 0, 0]), rat(1, 8));
    }

    #[test]
    fn radial_integral_closed_form() {
        // ∫ r^k e^{-r} dr = k!
        assert_eq!(radial_integral(0, &rat_int(1)).unwrap(), rat_int(1));
        assert_eq!(radial_integral(4, &rat_int(1)).unwrap(), rat_int(24));
        assert_eq!(radial_integral(3, &rat_int(2)).unwrap(), rat(6, 16));
        assert!(radial_integral(1, &rat_int(0)).is_err());
    }

    #[test]
    fn full_space_integral_of_gaussian_weighted_monomials() {
        // ∫ e^{-2r} d³x = π  (returned in units of π: 1)
        let f = RadialForm::exp_weight(3, rat_int(2)).unwrap();
        assert_eq!(f.integral_r3_in_units_of_pi().unwrap(), ExactScalar::one());
        // ∫ z² e^{-2r} d³x = (4/3)·4!/2⁵ = 1 → π·1
        let z2 = RadialForm::monomial(3, &[0, 0, 2], ExactScalar::one()).unwrap();
        let g = z2.mul_exp_weight(&rat_int(2)).unwrap();
        assert_eq!(g.integral_r3_in_units_of_pi().unwrap(), ExactScalar::one());
        // Divergent without a weight.
        assert_eq!(z2.integral_r3_in_units_of_pi(), Err(Error::DivergentIntegral));
    }

    #[test]
    fn equality_cross_multiplies() {
        // x/r equals x·r/r² even before any manual normalisation.
        let a = x(3, 0).div_r_pow(1);
        let b = x(3, 0)
            .try_mul(&RadialForm::radius(3))
            .unwrap()
            .div_r_pow(2);
        assert_eq!(a, b);
        assert!(a.same_representation(&b));
    }

    #[test]
    fn homogeneous_degree_accounts_for_denominators() {
        let f = RadialForm::monomial(3, &[2, 0, 0], ExactScalar::one())
            .unwrap()
            .div_r_pow(3);
        assert_eq!(f.homogeneous_degree(), Some(-1));
        let g = RadialForm::cauchy_kernel_pow(3, 1);
        assert_eq!(g.homogeneous_degree(), None);
    }
}
