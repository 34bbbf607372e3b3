//! Dense symmetric tensors whose components are [`RadialForm`]s.
//!
//! A rank-`k` symmetric tensor in dimension `d` is stored by its independent
//! components, keyed by sorted multi-indices (non-decreasing axis lists).
//! All operations — symmetrized δ-products, traces, contractions, applying a
//! polynomial tensor as a differential operator — are exact.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::radial::RadialForm;
use crate::scalar::{factorial, ExactScalar, Rat};
use crate::{Error, Result};

/// All sorted multi-indices of length `rank` over axes `0..dim`.
pub fn sorted_indices(dim: usize, rank: usize) -> Vec<Vec<u8>> {
    fn rec(dim: u8, rank: usize, start: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == rank {
            out.push(cur.clone());
            return;
        }
        for axis in start..dim {
            cur.push(axis);
            rec(dim, rank, axis, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim as u8, rank, 0, &mut Vec::new(), &mut out);
    out
}

/// Number of distinct permutations of a sorted multi-index:
/// `rank! / Π (multiplicity of each axis)!`.
pub fn index_multiplicity(idx: &[u8]) -> BigInt {
    let mut m = factorial(idx.len() as u64);
    let mut run = 1u64;
    for w in 1..=idx.len() {
        if w < idx.len() && idx[w] == idx[w - 1] {
            run += 1;
        } else {
            m /= factorial(run);
            run = 1;
        }
    }
    m
}

/// Symmetric tensor with exact radial-form components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymTensor {
    dim: usize,
    rank: usize,
    comps: BTreeMap<Vec<u8>, RadialForm>,
}

impl SymTensor {
    pub fn zero(dim: usize, rank: usize) -> Self {
        let mut comps = BTreeMap::new();
        for idx in sorted_indices(dim, rank) {
            comps.insert(idx, RadialForm::zero(dim));
        }
        SymTensor { dim, rank, comps }
    }

    /// Rank-0 tensor wrapping a single form.
    pub fn scalar(f: RadialForm) -> Self {
        let dim = f.dim();
        let mut comps = BTreeMap::new();
        comps.insert(Vec::new(), f);
        SymTensor { dim, rank: 0, comps }
    }

    /// The coordinate vector `x` as a rank-1 tensor.
    pub fn coordinate(dim: usize) -> Result<Self> {
        let mut t = Self::zero(dim, 1);
        for axis in 0..dim {
            t.set_component(&[axis as u8], RadialForm::coordinate(dim, axis)?)?;
        }
        Ok(t)
    }

    /// The symmetric power `x^{⊗l}`: component `x_{i₁}⋯x_{i_l}`.
    pub fn coordinate_power(dim: usize, l: usize) -> Result<Self> {
        let mut t = Self::zero(dim, l);
        for idx in sorted_indices(dim, l) {
            let mut powers = vec![0u16; dim];
            for &axis in &idx {
                powers[axis as usize] += 1;
            }
            t.set_component(&idx, RadialForm::monomial(dim, &powers, ExactScalar::one())?)?;
        }
        Ok(t)
    }

    /// The Kronecker delta as a rank-2 tensor.
    pub fn delta(dim: usize) -> Self {
        let mut t = Self::zero(dim, 2);
        for axis in 0..dim {
            let idx = [axis as u8, axis as u8];
            t.comps.insert(idx.to_vec(), RadialForm::one(dim));
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Component at an index given in any order.
    pub fn component(&self, idx: &[u8]) -> Result<&RadialForm> {
        let mut key = idx.to_vec();
        key.sort_unstable();
        self.check_index(&key)?;
        self.comps.get(&key).ok_or(Error::RankMismatch { expected: self.rank, found: idx.len() })
    }

    pub fn set_component(&mut self, idx: &[u8], f: RadialForm) -> Result<()> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch { left: f.dim(), right: self.dim });
        }
        let mut key = idx.to_vec();
        key.sort_unstable();
        self.check_index(&key)?;
        self.comps.insert(key, f);
        Ok(())
    }

    fn check_index(&self, sorted: &[u8]) -> Result<()> {
        if sorted.len() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: sorted.len() });
        }
        if let Some(&axis) = sorted.last() {
            if usize::from(axis) >= self.dim {
                return Err(Error::IndexOutOfRange { index: usize::from(axis), bound: self.dim });
            }
        }
        Ok(())
    }

    /// Iterate over `(sorted index, component)` pairs.
    pub fn components(&self) -> impl Iterator<Item = (&Vec<u8>, &RadialForm)> {
        self.comps.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(RadialForm::is_zero)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (idx, f) in &other.comps {
            let cur = out.comps.get(idx).expect("dense storage");
            let sum = cur.try_add(f)?;
            out.comps.insert(idx.clone(), sum);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    /// `self = q·other` componentwise for a single scalar `q`? Returns the
    /// ratio when the tensors are proportional, `None` otherwise.
    pub fn proportionality_ratio(&self, other: &Self) -> Option<ExactScalar> {
        if self.dim != other.dim || self.rank != other.rank {
            return None;
        }
        let mut candidate: Option<ExactScalar> = None;
        for (idx, g) in &other.comps {
            if g.is_zero() {
                continue;
            }
            let f = self.comps.get(idx)?;
            candidate = Some(f.proportionality_ratio(g)?);
            break;
        }
        let q = match candidate {
            Some(q) => q,
            None => return self.is_zero().then(ExactScalar::zero),
        };
        (*self == other.scalar_mul(&q)).then_some(q)
    }

    pub fn neg(&self) -> Self {
        self.map_forms(|f| f.clone().neg())
    }

    pub fn scalar_mul(&self, s: &ExactScalar) -> Self {
        self.map_forms(|f| f.scalar_mul(s))
    }

    pub fn rat_mul(&self, s: &Rat) -> Self {
        self.map_forms(|f| f.rat_mul(s))
    }

    /// Multiply every component by a scalar radial form.
    pub fn try_form_mul(&self, g: &RadialForm) -> Result<Self> {
        self.try_map_forms(|f| f.try_mul(g))
    }

    pub fn map_forms(&self, op: impl Fn(&RadialForm) -> RadialForm) -> Self {
        let comps = self.comps.iter().map(|(i, f)| (i.clone(), op(f))).collect();
        SymTensor { dim: self.dim, rank: self.rank, comps }
    }

    pub fn try_map_forms(&self, op: impl Fn(&RadialForm) -> Result<RadialForm>) -> Result<Self> {
        let mut comps = BTreeMap::new();
        for (i, f) in &self.comps {
            comps.insert(i.clone(), op(f)?);
        }
        Ok(SymTensor { dim: self.dim, rank: self.rank, comps })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        Ok(())
    }

    /// Contract two slots with each other: `T'_{J} = Σ_i T_{J i i}`.
    pub fn trace_pair(&self) -> Result<Self> {
        if self.rank < 2 {
            return Err(Error::RankMismatch { expected: 2, found: self.rank });
        }
        let mut out = Self::zero(self.dim, self.rank - 2);
        for idx in sorted_indices(self.dim, self.rank - 2) {
            let mut acc = RadialForm::zero(self.dim);
            for axis in 0..self.dim as u8 {
                let mut full = idx.clone();
                full.push(axis);
                full.push(axis);
                acc = acc.try_add(self.component(&full)?)?;
            }
            out.comps.insert(idx, acc);
        }
        Ok(out)
    }

    /// Contract all slots of `other` (rank `k ≤` self rank) against `k` slots
    /// of `self`: `T'_{J} = Σ_{i₁…i_k} T_{J i₁…i_k} U_{i₁…i_k}`.
    pub fn contract_all_of(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        if other.rank > self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        let out_rank = self.rank - other.rank;
        let mut out = Self::zero(self.dim, out_rank);
        let inner = sorted_indices(self.dim, other.rank);
        for idx in sorted_indices(self.dim, out_rank) {
            let mut acc = RadialForm::zero(self.dim);
            for i in &inner {
                let u = other.comps.get(i).expect("dense storage");
                if u.is_zero() {
                    continue;
                }
                let mut full = idx.clone();
                full.extend_from_slice(i);
                full.sort_unstable();
                let t = self.comps.get(&full).expect("dense storage");
                if t.is_zero() {
                    continue;
                }
                let mult = Rat::from_integer(index_multiplicity(i));
                acc = acc.try_add(&t.try_mul(u)?.rat_mul(&mult))?;
            }
            out.comps.insert(idx, acc);
        }
        Ok(out)
    }

    /// Full contraction of two equal-rank tensors, as a scalar form.
    pub fn contract_full(&self, other: &Self) -> Result<RadialForm> {
        self.check_same_shape(other)?;
        self.contract_all_of(other)?.into_scalar()
    }

    /// Extract the single component of a rank-0 tensor.
    pub fn into_scalar(self) -> Result<RadialForm> {
        if self.rank != 0 {
            return Err(Error::RankMismatch { expected: 0, found: self.rank });
        }
        Ok(self.comps.into_values().next().expect("dense storage"))
    }

    /// Symmetrized product of `delta_count` Kronecker deltas with a symmetric
    /// `core` tensor: the sum over all **distinct** assignments of index
    /// positions to the deltas (no normalization). The result has rank
    /// `2·delta_count + core.rank`.
    pub fn symmetrized_with_deltas(delta_count: usize, core: &SymTensor) -> Result<Self> {
        let dim = core.dim;
        let rank = 2 * delta_count + core.rank;
        let mut out = Self::zero(dim, rank);
        let positions: Vec<usize> = (0..rank).collect();
        let mut matchings = Vec::new();
        enumerate_pairings(&positions, delta_count, &mut Vec::new(), &mut matchings);
        for idx in sorted_indices(dim, rank) {
            let mut acc = RadialForm::zero(dim);
            for (pairs, rest) in &matchings {
                if pairs.iter().any(|&(a, b)| idx[a] != idx[b]) {
                    continue;
                }
                let rest_idx: Vec<u8> = rest.iter().map(|&p| idx[p]).collect();
                acc = acc.try_add(core.component(&rest_idx)?)?;
            }
            out.comps.insert(idx, acc);
        }
        Ok(out)
    }

    /// Interpret each (polynomial) component `p(x)` as the constant-coefficient
    /// differential operator `p(∂)` and apply it to `f`.
    pub fn apply_gradient_to(&self, f: &RadialForm) -> Result<Self> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch { left: f.dim(), right: self.dim });
        }
        self.try_map_forms(|p| apply_polynomial_derivative(p, f))
    }

    /// Evaluate every component exactly at a rational point, producing a
    /// tensor of constants (useful for randomized two-point identity checks).
    pub fn eval_to_constant(&self, point: &[Rat]) -> Result<Self> {
        self.try_map_forms(|p| {
            Ok(RadialForm::constant(self.dim, p.eval_even_exact(point)?))
        })
    }

    /// Divergence on the first slot: `T'_{J} = Σ_i ∂_i T_{i J}`.
    pub fn divergence(&self) -> Result<Self> {
        if self.rank < 1 {
            return Err(Error::RankMismatch { expected: 1, found: self.rank });
        }
        let mut out = Self::zero(self.dim, self.rank - 1);
        for idx in sorted_indices(self.dim, self.rank - 1) {
            let mut acc = RadialForm::zero(self.dim);
            for axis in 0..self.dim {
                let mut full = idx.clone();
                full.push(axis as u8);
                acc = acc.try_add(&self.component(&full)?.derivative(axis)?)?;
            }
            out.comps.insert(idx, acc);
        }
        Ok(out)
    }

    /// Are all components annihilated by the Laplacian?
    pub fn is_harmonic(&self) -> Result<bool> {
        for f in self.comps.values() {
            if !f.laplacian()?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Average every component over the unit sphere, producing constants.
    pub fn sphere_average_unit(&self) -> Result<Self> {
        self.try_map_forms(|p| Ok(RadialForm::constant(self.dim, p.sphere_average_unit()?)))
    }
}

/// The `rank`-fold gradient `∇^{⊗rank} f` as a symmetric tensor (partial
/// derivatives commute, so symmetry is automatic).
pub fn gradient_tensor(f: &RadialForm, rank: usize) -> Result<SymTensor> {
    let dim = f.dim();
    let mut cur = SymTensor::scalar(f.clone());
    for _ in 0..rank {
        let mut next = SymTensor::zero(dim, cur.rank + 1);
        for idx in sorted_indices(dim, cur.rank + 1) {
            let axis = idx[0];
            let rest = &idx[1..];
            let val = cur.component(rest)?.derivative(usize::from(axis))?;
            next.comps.insert(idx.clone(), val);
        }
        cur = next;
    }
    Ok(cur)
}

/// Apply a polynomial form `p = Σ c_a x^a` as the differential operator
/// `Σ c_a ∂^a` to `f`. Terms carrying a stray factor of `r` or any
/// denominator are rejected.
pub fn apply_polynomial_derivative(p: &RadialForm, f: &RadialForm) -> Result<RadialForm> {
    if !p.is_polynomial() || !p.is_parity_even() {
        return Err(Error::NotPolynomial);
    }
    // Cache f's repeated derivatives lazily per term to keep this simple and
    // exact; ranks in practice are small.
    let mut acc = RadialForm::zero(f.dim());
    for (term, coeff) in p.terms() {
        let mut g = f.clone();
        for (axis, &power) in term.powers.iter().enumerate() {
            for _ in 0..power {
                g = g.derivative(axis)?;
            }
        }
        acc = acc.try_add(&g.scalar_mul(coeff))?;
    }
    Ok(acc)
}

/// Enumerate all distinct ways to choose `k` disjoint unordered pairs from
/// `positions`; yields `(pairs, unpaired_rest)` with each selection once.
fn enumerate_pairings(
    positions: &[usize],
    k: usize,
    rest: &mut Vec<usize>,
    out: &mut Vec<(Vec<(usize, usize)>, Vec<usize>)>,
) {
    if k == 0 {
        let mut tail = rest.clone();
        tail.extend_from_slice(positions);
        out.push((Vec::new(), tail));
        return;
    }
    if positions.len() < 2 * k {
        return;
    }
    let first = positions[0];
    // Either `first` is unpaired…
    rest.push(first);
    enumerate_pairings(&positions[1..], k, rest, out);
    rest.pop();
    // …or it pairs with one of the later positions.
    for j in 1..positions.len() {
        let partner = positions[j];
        let remaining: Vec<usize> = positions[1..]
            .iter()
            .copied()
            .filter(|&p| p != partner)
            .collect();
        let before = out.len();
        enumerate_pairings(&remaining, k - 1, rest, out);
        for item in &mut out[before..] {
            item.0.push((first, partner));
        }
    }
}

impl fmt::Display for SymTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank-{} tensor (dim {}):", self.rank, self.dim)?;
        for (idx, form) in &self.comps {
            if form.is_zero() {
                continue;
            }
            write!(f, "  [")?;
            for (i, &axis) in idx.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{axis}")?;
            }
            writeln!(f, "] = {form}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    #[test]
    fn index_enumeration_counts() {
        // C(dim + rank - 1, rank)
        assert_eq!(sorted_indices(3, 2).len(), 6);
        assert_eq!(sorted_indices(3, 4).len(), 15);
        assert_eq!(sorted_indices(4, 3).len(), 20);
        assert_eq!(index_multiplicity(&[0, 1, 2]), BigInt::from(6));
        assert_eq!(index_multiplicity(&[0, 0, 1]), BigInt::from(3));
        assert_eq!(index_multiplicity(&[2, 2, 2]), BigInt::from(1));
        assert_eq!(index_multiplicity(&[]), BigInt::from(1));
    }

    #[test]
    fn pairing_enumeration_counts() {
        // l positions, k pairs: l! / (2^k k! (l-2k)!)
        for (l, k, expect) in [(2usize, 1usize, 1usize), (4, 1, 6), (4, 2, 3), (6, 2, 45), (6, 3, 15)] {
            let mut out = Vec::new();
            let positions: Vec<usize> = (0..l).collect();
            enumerate_pairings(&positions, k, &mut Vec::new(), &mut out);
            assert_eq!(out.len(), expect, "l={l} k={k}");
        }
    }

    #[test]
    fn delta_trace_is_dimension() {
        for dim in [3usize, 4] {
            let d = SymTensor::delta(dim);
            let tr = d.trace_pair().unwrap().into_scalar().unwrap();
            assert_eq!(tr, RadialForm::constant(dim, ExactScalar::from_int(dim as i64)));
        }
    }

    #[test]
    fn coordinate_power_contracts_to_radius_power() {
        // x^{⊗2} fully contracted with itself: (x·x)² = r⁴
        let t = SymTensor::coordinate_power(3, 2).unwrap();
        let c = t.contract_full(&t).unwrap();
        assert_eq!(c, RadialForm::radius_pow(3, 4));
        // trace of x^{⊗2} is r²
        let tr = t.trace_pair().unwrap().into_scalar().unwrap();
        assert_eq!(tr, RadialForm::radius_squared(3));
    }

    #[test]
    fn symmetrized_delta_square_trace() {
        // ≪δ²≫ in 3D: T_{ijkl} = δδ+δδ+δδ (3 distinct terms).
        // Full trace over both pairs: Σ_{i,k} T_{iikk} = d² + 2d = 15 in 3D.
        let core = SymTensor::scalar(RadialForm::one(3));
        let t = SymTensor::symmetrized_with_deltas(2, &core).unwrap();
        let tr = t
            .trace_pair()
            .unwrap()
            .trace_pair()
            .unwrap()
            .into_scalar()
            .unwrap();
        assert_eq!(tr, RadialForm::constant(3, ExactScalar::from_int(15)));
    }

    #[test]
    fn symmetrized_delta_with_coordinates() {
        // ≪δ x²≫ rank 4: component [0,0,1,1] = δ₀₀x₁x₁ + δ₁₁x₀x₀ + 4 zero
        // assignments = x² + y².
        let core = SymTensor::coordinate_power(3, 2).unwrap();
        let t = SymTensor::symmetrized_with_deltas(1, &core).unwrap();
        let got = t.component(&[0, 0, 1, 1]).unwrap();
        let expect = RadialForm::monomial(3, &[2, 0, 0], ExactScalar::one())
            .unwrap()
            .try_add(&RadialForm::monomial(3, &[0, 2, 0], ExactScalar::one()).unwrap())
            .unwrap();
        assert_eq!(got, &expect);
        // component [0,0,0,1]: δ₀₀x₀x₁ + 2·(δ₀₀ pairing variants)…
        // distinct pairings: (01)(01)… enumerate by hand: pairs on positions
        // with equal values: {0,1},{0,2},{1,2} pair up three zeros → each
        // leaves x₀x₁; pairs {i,3} need value 0==1 → drop. Total 3·x₀x₁.
        let got = t.component(&[0, 0, 0, 1]).unwrap();
        let expect = RadialForm::monomial(3, &[1, 1, 0], ExactScalar::from_int(3)).unwrap();
        assert_eq!(got, &expect);
    }

    #[test]
    fn contract_with_vector_lowers_rank() {
        // (x^{⊗3} · x) = r²·x^{⊗2}
        let t3 = SymTensor::coordinate_power(3, 3).unwrap();
        let x = SymTensor::coordinate(3).unwrap();
        let got = t3.contract_all_of(&x).unwrap();
        let expect = SymTensor::coordinate_power(3, 2)
            .unwrap()
            .try_form_mul(&RadialForm::radius_squared(3))
            .unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn gradient_application_matches_hand_value() {
        // p = x² (component of x^{⊗2} at [0,0]) applied to f = r⁴:
        // ∂²/∂x² r⁴ = ∂(4x r²) = 4r² + 8x².
        let p = RadialForm::monomial(3, &[2, 0, 0], ExactScalar::one()).unwrap();
        let f = RadialForm::radius_pow(3, 4);
        let got = apply_polynomial_derivative(&p, &f).unwrap();
        let expect = RadialForm::radius_squared(3)
            .rat_mul(&rat_int(4))
            .try_add(&RadialForm::monomial(3, &[2, 0, 0], ExactScalar::from_int(8)).unwrap())
            .unwrap();
        assert_eq!(got, expect);
        // non-polynomial operator is rejected
        let bad = RadialForm::radius(3);
        assert!(apply_polynomial_derivative(&bad, &f).is_err());
    }

    #[test]
    fn rational_point_evaluation() {
        let t = SymTensor::coordinate_power(3, 2).unwrap();
        let point = [rat_int(1), rat_int(2), rat_int(-1)];
        let c = t.eval_to_constant(&point).unwrap();
        let got = c.component(&[0, 1]).unwrap();
        assert_eq!(got, &RadialForm::constant(3, ExactScalar::from_int(2)));
        let got = c.component(&[1, 1]).unwrap();
        assert_eq!(got, &RadialForm::constant(3, ExactScalar::from_int(4)));
    }

    #[test]
    fn shape_mismatches_error() {
        let a = SymTensor::coordinate_power(3, 2).unwrap();
        let b = SymTensor::coordinate_power(3, 3).unwrap();
        assert!(a.try_add(&b).is_err());
        assert!(b.contract_all_of(&a).is_ok());
        assert!(a.contract_all_of(&b).is_err());
        let c = SymTensor::coordinate_power(4, 2).unwrap();
        assert!(a.try_add(&c).is_err());
        // component index out of range
        assert!(a.component(&[0, 3]).is_err());
        assert!(a.component(&[0]).is_err());
    }
}
