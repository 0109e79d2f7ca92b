//! The free abelian monoid `N_0^s` on `s` primes, represented by exponent
//! vectors over checked machine integers.
//!
//! Divisibility is componentwise `<=`; `length` is the coordinate sum (the
//! length of the element as a product of primes). Enumerations are in
//! lexicographic coordinate order and guarded by explicit caps.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Element of `N_0^s`. `Ord` is lexicographic on coordinates, the canonical
/// order used by every deterministic enumeration in the crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(coords: Vec<u32>) -> Self {
        ExponentVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        ExponentVector(vec![0; dim])
    }

    /// `e_i` scaled: the vector with `value` at `axis` and zeros elsewhere.
    pub fn axis(dim: usize, axis: usize, value: u32) -> Self {
        let mut v = vec![0; dim];
        v[axis] = value;
        ExponentVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Coordinate sum, i.e. the number of prime factors with multiplicity.
    pub fn length(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn max_coord(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    fn check_dim(&self, other: &ExponentVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }

    /// Componentwise `<=` (divisibility in the free monoid).
    pub fn divides(&self, other: &ExponentVector) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b))
    }

    pub fn add(&self, other: &ExponentVector) -> Result<ExponentVector> {
        self.check_dim(other)?;
        let coords = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExponentVector(coords))
    }

    /// `self - other` when `other` divides `self`, else `None`.
    pub fn checked_subtract(&self, other: &ExponentVector) -> Result<Option<ExponentVector>> {
        self.check_dim(other)?;
        let mut coords = Vec::with_capacity(self.dim());
        for (&a, &b) in self.0.iter().zip(&other.0) {
            match a.checked_sub(b) {
                Some(c) => coords.push(c),
                None => return Ok(None),
            }
        }
        Ok(Some(ExponentVector(coords)))
    }

    /// Componentwise min (gcd in the free monoid).
    pub fn meet(&self, other: &ExponentVector) -> Result<ExponentVector> {
        self.check_dim(other)?;
        Ok(ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        ))
    }

    /// Componentwise truncated subtraction `max(self_i - other_i, 0)`.
    pub fn saturating_subtract(&self, other: &ExponentVector) -> Result<ExponentVector> {
        self.check_dim(other)?;
        Ok(ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        ))
    }

    /// Componentwise min with a scalar cap.
    pub fn capped(&self, cap: u32) -> ExponentVector {
        ExponentVector(self.0.iter().map(|&a| a.min(cap)).collect())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Minimal elements of a finite set under componentwise `<=` (the antichain
/// of a Dickson basis). Output is sorted and deduplicated.
pub fn dickson_min(set: &[ExponentVector]) -> Result<Vec<ExponentVector>> {
    if let Some(first) = set.first() {
        for v in set {
            first.check_dim(v)?;
        }
    }
    let mut out: Vec<ExponentVector> = Vec::new();
    for v in set {
        if out.iter().any(|m| m.divides(v).unwrap()) {
            continue;
        }
        out.retain(|m| !v.divides(m).unwrap());
        out.push(v.clone());
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Axis-aligned box `{v : 0 <= v_i <= upper_i}` used as a finite scan window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    upper: ExponentVector,
}

impl Window {
    pub fn new(upper: ExponentVector) -> Self {
        Window { upper }
    }

    pub fn cube(dim: usize, side: u32) -> Self {
        Window {
            upper: ExponentVector(vec![side; dim]),
        }
    }

    pub fn upper(&self) -> &ExponentVector {
        &self.upper
    }

    pub fn dim(&self) -> usize {
        self.upper.dim()
    }

    /// Number of lattice points, saturating (a saturated count still exceeds
    /// every enumeration cap, so overside windows are rejected, not wrapped).
    pub fn cardinality(&self) -> u128 {
        self.upper
            .coords()
            .iter()
            .fold(1u128, |acc, &u| acc.saturating_mul(u128::from(u) + 1))
    }

    pub fn contains(&self, v: &ExponentVector) -> Result<bool> {
        v.divides(&self.upper)
    }

    /// All members in lexicographic order; errors past `cap`.
    pub fn enumerate(&self, cap: u64) -> Result<Vec<ExponentVector>> {
        let size = self.cardinality();
        if size > cap as u128 {
            return Err(Error::CapExceeded {
                what: "window enumeration",
                size,
                cap: cap as u128,
            });
        }
        let mut out = Vec::with_capacity(size as usize);
        let mut cur = ExponentVector::zeros(self.dim());
        loop {
            out.push(cur.clone());
            let mut i = self.dim();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur.0[i] += 1;
                if cur.0[i] <= self.upper.0[i] {
                    break;
                }
                cur.0[i] = 0;
            }
        }
    }
}

/// All divisors of `a` in lexicographic order; exactly `prod(a_i + 1)` of
/// them, guarded by `cap`.
pub fn divisor_enumeration(a: &ExponentVector, cap: u64) -> Result<Vec<ExponentVector>> {
    Window::new(a.clone()).enumerate(cap)
}
