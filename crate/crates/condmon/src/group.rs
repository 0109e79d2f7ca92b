//! Finite abelian groups presented as direct sums of cyclic groups.
//!
//! `G = Z/n_1 + ... + Z/n_r` with elements stored as canonical residue
//! tuples, `0 <= a_i < n_i`. All operations are exact over machine integers.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Direct-sum presentation. Invariant: every cyclic order is >= 1 and the
/// list is nonempty (the trivial group is `C1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    cyclic_orders: Vec<u64>,
}

/// Element of a [`FiniteAbelianGroup`]; residues are canonical.
///
/// Elements do not carry their parent group; operations live on the group and
/// validate dimensions/residues, raising `GroupMismatch` on violation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    residues: Vec<u64>,
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Saturating lcm: values beyond `u64::MAX` clamp, which only matters for
/// group presentations far beyond any enumeration budget (every downstream
/// use compares against caps that reject such groups anyway).
fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        let wide = u128::from(a / gcd(a, b)) * u128::from(b);
        u64::try_from(wide).unwrap_or(u64::MAX)
    }
}

impl FiniteAbelianGroup {
    pub fn new(cyclic_orders: Vec<u64>) -> Result<Self> {
        if cyclic_orders.is_empty() {
            return Err(Error::InvalidSpec(
                "group needs at least one cyclic summand (the trivial group is C1)".into(),
            ));
        }
        if cyclic_orders.contains(&0) {
            return Err(Error::InvalidSpec("cyclic orders must be >= 1".into()));
        }
        Ok(FiniteAbelianGroup { cyclic_orders })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn rank(&self) -> usize {
        self.cyclic_orders.len()
    }

    /// `|G|` as u128, saturating (products of summand orders can exceed even
    /// u128; saturated values still exceed every enumeration cap).
    pub fn cardinality(&self) -> u128 {
        self.cyclic_orders
            .iter()
            .fold(1u128, |acc, &n| acc.saturating_mul(u128::from(n)))
    }

    /// lcm of the cyclic orders.
    pub fn exponent(&self) -> u64 {
        self.cyclic_orders.iter().copied().fold(1, lcm)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.rank()],
        }
    }

    /// Builds an element from signed residues, canonicalizing mod `n_i`.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: residues.len(),
            });
        }
        let canon = residues
            .iter()
            .zip(&self.cyclic_orders)
            .map(|(&a, &n)| {
                let n = n as i128;
                (((a as i128 % n) + n) % n) as u64
            })
            .collect();
        Ok(GroupElement { residues: canon })
    }

    /// Validates that `a` is a canonical element of this group.
    pub fn check(&self, a: &GroupElement) -> Result<()> {
        if a.residues.len() != self.rank() {
            return Err(Error::GroupMismatch(format!(
                "element has {} residues, group has rank {}",
                a.residues.len(),
                self.rank()
            )));
        }
        for (i, (&r, &n)) in a.residues.iter().zip(&self.cyclic_orders).enumerate() {
            if r >= n {
                return Err(Error::GroupMismatch(format!(
                    "residue {r} at coordinate {i} is not canonical mod {n}"
                )));
            }
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.cyclic_orders)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect();
        Ok(GroupElement { residues })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let residues = a
            .residues
            .iter()
            .zip(&self.cyclic_orders)
            .map(|(&x, &n)| if x == 0 { 0 } else { n - x })
            .collect();
        Ok(GroupElement { residues })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    pub fn scalar_mul(&self, k: i64, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let residues = a
            .residues
            .iter()
            .zip(&self.cyclic_orders)
            .map(|(&x, &n)| {
                let n = n as i128;
                ((((k as i128) * (x as i128)) % n + n) % n) as u64
            })
            .collect();
        Ok(GroupElement { residues })
    }

    /// Order of `a`: lcm over coordinates of `n_i / gcd(a_i, n_i)`.
    pub fn order_of(&self, a: &GroupElement) -> Result<u64> {
        self.check(a)?;
        Ok(a.residues
            .iter()
            .zip(&self.cyclic_orders)
            .map(|(&x, &n)| n / gcd(x, n))
            .fold(1, lcm))
    }

    /// All elements in lexicographic residue order. Errors when `|G|` exceeds
    /// `cap` (an error, not a truncation).
    pub fn enumerate_elements(&self, cap: u64) -> Result<Vec<GroupElement>> {
        let size = self.cardinality();
        if size > cap as u128 {
            return Err(Error::CapExceeded {
                what: "group enumeration",
                size,
                cap: cap as u128,
            });
        }
        let mut out = Vec::with_capacity(size as usize);
        let mut cur = vec![0u64; self.rank()];
        loop {
            out.push(GroupElement {
                residues: cur.clone(),
            });
            // lexicographic increment with the last coordinate fastest
            let mut i = self.rank();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.cyclic_orders[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// `count` independent elements, each of exact order `order`, supported on
    /// distinct cyclic summands whose order is divisible by `order`.
    ///
    /// Independence: the only coefficient tuple `(c_1..c_count)` with
    /// `0 <= c_i < order` and `sum c_i e_i = 0` is the zero tuple.
    pub fn independent_elements(&self, count: usize, order: u64) -> Result<Vec<GroupElement>> {
        if order < 2 {
            return Err(Error::BadParameters(
                "independent elements require order >= 2".into(),
            ));
        }
        let usable: Vec<usize> = (0..self.rank())
            .filter(|&i| self.cyclic_orders[i].is_multiple_of(order))
            .collect();
        if usable.len() < count {
            return Err(Error::InsufficientRank {
                need: count,
                order,
                have: usable.len(),
            });
        }
        let mut out = Vec::with_capacity(count);
        for &i in usable.iter().take(count) {
            let mut residues = vec![0u64; self.rank()];
            residues[i] = self.cyclic_orders[i] / order;
            out.push(GroupElement { residues });
        }
        Ok(out)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.cyclic_orders.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "C{n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2c4() -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(vec![2, 4]).unwrap()
    }

    /// Independent oracle: order by repeated addition.
    fn order_by_repeated_addition(g: &FiniteAbelianGroup, a: &GroupElement) -> u64 {
        let mut acc = a.clone();
        let mut k = 1u64;
        while acc != g.zero() {
            acc = g.add(&acc, a).unwrap();
            k += 1;
            assert!(k <= 1_000_000, "runaway order computation");
        }
        k
    }

    #[test]
    fn order_of_matches_repeated_addition_oracle() {
        let g = c2c4();
        let a = g.element(&[1, 1]).unwrap();
        assert_eq!(order_by_repeated_addition(&g, &a), 4);
        assert_eq!(g.order_of(&a).unwrap(), 4);
        for e in g.enumerate_elements(1000).unwrap() {
            if e == g.zero() {
                assert_eq!(g.order_of(&e).unwrap(), 1);
            } else {
                assert_eq!(g.order_of(&e).unwrap(), order_by_repeated_addition(&g, &e));
            }
        }
    }

    #[test]
    fn canonicalization_reduces_signed_residues() {
        let g = c2c4();
        let a = g.element(&[-1, -3]).unwrap();
        assert_eq!(a.residues(), &[1, 1]);
        let b = g.element(&[3, 9]).unwrap();
        assert_eq!(b.residues(), &[1, 1]);
    }

    #[test]
    fn addition_and_negation_are_inverse() {
        let g = c2c4();
        for a in g.enumerate_elements(1000).unwrap() {
            let n = g.neg(&a).unwrap();
            assert_eq!(g.add(&a, &n).unwrap(), g.zero());
        }
    }

    #[test]
    fn exponent_is_lcm() {
        assert_eq!(c2c4().exponent(), 4);
        let g = FiniteAbelianGroup::new(vec![6, 15]).unwrap();
        assert_eq!(g.exponent(), 30);
        assert_eq!(g.cardinality(), 90);
    }

    #[test]
    fn enumeration_cap_is_an_error_not_truncation() {
        let g = FiniteAbelianGroup::new(vec![100, 100]).unwrap();
        match g.enumerate_elements(9_999) {
            Err(Error::CapExceeded { size, .. }) => assert_eq!(size, 10_000),
            other => panic!("expected CapExceeded, got {other:?}"),
        }
    }

    #[test]
    fn independent_elements_in_c4c4_have_order_two_and_are_independent() {
        let g = FiniteAbelianGroup::new(vec![4, 4]).unwrap();
        let es = g.independent_elements(2, 2).unwrap();
        assert_eq!(es.len(), 2);
        for e in &es {
            assert_eq!(g.order_of(e).unwrap(), 2);
        }
        // Exhaustive coefficient check: only (0,0) combines to zero.
        for c0 in 0..2i64 {
            for c1 in 0..2i64 {
                let s = g
                    .add(
                        &g.scalar_mul(c0, &es[0]).unwrap(),
                        &g.scalar_mul(c1, &es[1]).unwrap(),
                    )
                    .unwrap();
                assert_eq!(s == g.zero(), (c0, c1) == (0, 0));
            }
        }
    }

    #[test]
    fn independent_elements_rejects_insufficient_rank() {
        let g = FiniteAbelianGroup::cyclic(3).unwrap();
        match g.independent_elements(2, 3) {
            Err(Error::InsufficientRank {
                need: 2, have: 1, ..
            }) => {}
            other => panic!("expected InsufficientRank, got {other:?}"),
        }
    }

    #[test]
    fn mismatched_elements_are_rejected() {
        let g = c2c4();
        let h = FiniteAbelianGroup::cyclic(5).unwrap();
        let a = h.element(&[3]).unwrap();
        assert!(matches!(g.check(&a), Err(Error::GroupMismatch(_))));
        // non-canonical residues are likewise rejected
        let bogus = GroupElement {
            residues: vec![1, 7],
        };
        assert!(matches!(g.check(&bogus), Err(Error::GroupMismatch(_))));
    }

    #[test]
    fn display_round_trip_shape() {
        let g = c2c4();
        assert_eq!(g.to_string(), "C2xC4");
        assert_eq!(g.element(&[1, 3]).unwrap().to_string(), "(1,3)");
    }
}
