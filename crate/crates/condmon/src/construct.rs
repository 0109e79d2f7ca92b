//! Named constructions: ideal-extension families with prescribed shapes and
//! zero-sum instances engineered to exhibit particular length sets and
//! catenary behaviour, together with engine-backed verifiers for each recipe.

use crate::budget::Budget;
use crate::conductor::IdealExtensionMonoid;
use crate::error::{Error, Result};
use crate::factor::{enumerate_factorizations, invariants_from_set, ElementInvariants};
use crate::freemon::ExponentVector;
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::zerosum::{FIotaOracle, GSequence, ZeroSumContext};
use std::collections::BTreeMap;

/// The submonoid of `N_0^s` whose nonzero members all sit deep in the
/// positive orthant: `{0} + the ideal of the all-alpha vector`, i.e. members
/// are `0` and every vector with all coordinates `>= alpha`.
pub fn deep_hole_monoid(s: usize, alpha: u32) -> Result<IdealExtensionMonoid> {
    if s == 0 || alpha == 0 {
        return Err(Error::BadParameters(
            "deep hole construction needs s >= 1 and alpha >= 1".into(),
        ));
    }
    IdealExtensionMonoid::new(s, vec![ExponentVector::new(vec![alpha; s])])
}

/// The submonoid generated over the units by a single vector ideal
/// `alphas + N_0^s`, optionally decorated with a finite abelian unit group.
pub fn power_primary_monoid(
    alphas: &[u32],
    unit_group: Option<FiniteAbelianGroup>,
) -> Result<IdealExtensionMonoid> {
    let v = ExponentVector::new(alphas.to_vec());
    match unit_group {
        Some(g) => IdealExtensionMonoid::with_unit_group(alphas.len(), vec![v], g),
        None => IdealExtensionMonoid::new(alphas.len(), vec![v]),
    }
}

/// The edge monoid of the cycle on `2m` vertices: `s = 2m` and one generator
/// `e_i + e_{i+1 mod 2m}` per edge.
///
/// The all-ones vector has exactly two factorizations of length `m` (the two
/// perfect matchings of an even cycle), and they are at distance `m`.
pub fn cycle_monoid(m: usize) -> Result<IdealExtensionMonoid> {
    if m < 3 {
        return Err(Error::BadParameters(
            "cycle construction needs m >= 3".into(),
        ));
    }
    let s = 2 * m;
    let mut generators = Vec::with_capacity(s);
    for i in 0..s {
        let mut coords = vec![0u32; s];
        coords[i] = 1;
        coords[(i + 1) % s] = 1;
        generators.push(ExponentVector::new(coords));
    }
    IdealExtensionMonoid::new(s, generators)
}

/// Which recipe produced an [`IntervalInstance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalRecipe {
    /// `k = 2`: `S = U * (-U)` for a minimal zero-sum `U` of length `ell`.
    MinimalPair,
    /// `ell = k + 1`: `S = 0^k * g * (-g)` for any nonzero `g`.
    NeighborLengths,
    /// Some element has order `> 2n`: `S = 0^k g^n (-n g) (-g)^n (n g)`.
    LargeOrderBlock,
    /// Elementary 2-group and `(k, ell) = (3, 5)`:
    /// `S = 0^2 e1^2 e2^2 (e1+e2)^2`.
    SmallElementaryTwo,
    /// `S = 0^k A (-A)` with `A = e0 e1 .. en`, `e0 = -(e1 + .. + en)`.
    IndependentBlock,
    /// Degenerate `e0 = en` case (`n = 1`, exponent 2, `k >= 4`):
    /// `S = 0^k e1^4`.
    FourthPower,
}

/// A sequence over a finite abelian group whose factorization length set in
/// the not-zero-sum-free monoid is the integer interval `[k, ell]`.
#[derive(Debug, Clone)]
pub struct IntervalInstance {
    pub group: FiniteAbelianGroup,
    pub sequence: GSequence,
    pub k: u64,
    pub ell: u64,
    pub recipe: IntervalRecipe,
}

/// An element of maximal order in the group: the all-ones residue vector,
/// whose order is the lcm of the cyclic orders, i.e. the group exponent.
fn max_order_element(group: &FiniteAbelianGroup) -> Result<GroupElement> {
    group.element(&vec![1i64; group.rank()])
}

/// Build a sequence whose length set in the not-zero-sum-free monoid is
/// exactly `[k, ell]`, for `2 <= k < ell`.
///
/// Dispatches on the shape of `(k, ell)` and the orders available in `group`;
/// returns `GroupTooSmall` when the group lacks the elements a recipe needs.
pub fn interval_length_sequence(
    group: &FiniteAbelianGroup,
    k: u64,
    ell: u64,
) -> Result<IntervalInstance> {
    if k < 2 || ell <= k {
        return Err(Error::BadParameters(format!(
            "interval recipes need 2 <= k < ell, got k={k}, ell={ell}"
        )));
    }
    let ctx = ZeroSumContext::new(group.clone());
    let zero = group.zero();

    let finish = |sequence: GSequence, recipe: IntervalRecipe| IntervalInstance {
        group: group.clone(),
        sequence,
        k,
        ell,
        recipe,
    };

    if k == 2 {
        // S = U * (-U) with U a minimal zero-sum of length ell: take
        // U = g^(ell-1) * (-(ell-1) g) for g of order >= ell.
        if u128::from(group.exponent()) >= u128::from(ell) {
            let g = max_order_element(group)?;
            let closing = group.scalar_mul(-(i64::try_from(ell - 1).unwrap()), &g)?;
            let u = GSequence::from_pairs(vec![(g, (ell - 1) as u32), (closing, 1)]);
            let s = u.mul(&ctx.negate_sequence(&u)?)?;
            return Ok(finish(s, IntervalRecipe::MinimalPair));
        }
        // The neighbor-lengths recipe below still covers (2, 3); anything
        // wider has no recipe over a group this small.
        if ell != k + 1 {
            return Err(Error::GroupTooSmall(format!(
                "no element of order >= {ell} for the minimal-pair recipe"
            )));
        }
    }

    if ell == k + 1 {
        // S = 0^k * g * (-g) for any nonzero g.
        if group.cardinality() < 2 {
            return Err(Error::GroupTooSmall(
                "neighbor-lengths recipe needs a nonzero element".into(),
            ));
        }
        let g = max_order_element(group)?;
        let neg = group.neg(&g)?;
        let mut s = GSequence::from_pairs(vec![(zero, k as u32)]);
        s = s.mul(&GSequence::from_elements(&[g, neg]))?;
        return Ok(finish(s, IntervalRecipe::NeighborLengths));
    }

    // k >= 3 and ell >= k + 2 from here on.
    let n = ell - k - 1;

    if u128::from(group.exponent()) > 2 * u128::from(n) {
        // S = 0^k g^n (-n g) (-g)^n (n g) for g of order > 2n.
        let g = max_order_element(group)?;
        let neg = group.neg(&g)?;
        let ng = group.scalar_mul(i64::try_from(n).unwrap(), &g)?;
        let neg_ng = group.neg(&ng)?;
        let mut s = GSequence::from_pairs(vec![(zero, k as u32), (g, n as u32)]);
        s = s.mul(&GSequence::from_pairs(vec![
            (neg_ng, 1),
            (neg, n as u32),
            (ng, 1),
        ]))?;
        return Ok(finish(s, IntervalRecipe::LargeOrderBlock));
    }

    // Every order is <= 2n.
    if group.exponent() == 2 && n == 1 && k == 3 {
        // S = 0^2 e1^2 e2^2 (e1+e2)^2 over an elementary 2-group of rank >= 2.
        let basis = group.independent_elements(2, 2)?;
        let e12 = group.add(&basis[0], &basis[1])?;
        let s = GSequence::from_pairs(vec![
            (zero, 2),
            (basis[0].clone(), 2),
            (basis[1].clone(), 2),
            (e12, 2),
        ]);
        return Ok(finish(s, IntervalRecipe::SmallElementaryTwo));
    }

    // S = 0^k A (-A) with A = e0 e1 .. en for independent e1 .. en of maximal
    // order, e0 = -(e1 + .. + en).
    let exp = group.exponent();
    let basis = group.independent_elements(usize::try_from(n).unwrap(), exp)?;
    let mut sum = group.zero();
    for e in &basis {
        sum = group.add(&sum, e)?;
    }
    let e0 = group.neg(&sum)?;
    if e0 == basis[basis.len() - 1] {
        // Only happens for n = 1 and exponent 2; then A*(-A) = e1^2 e1^2 is
        // not the right multiset and the recipe degenerates to 0^k e1^4,
        // which needs k >= 4 to reach minimal length k.
        if k < 4 {
            return Err(Error::GroupTooSmall(format!(
                "degenerate fourth-power recipe needs k >= 4, got k={k}"
            )));
        }
        let s = GSequence::from_pairs(vec![(zero, k as u32), (basis[0].clone(), 4)]);
        return Ok(finish(s, IntervalRecipe::FourthPower));
    }
    let mut a = GSequence::from_elements(&[e0]);
    for e in &basis {
        a = a.mul(&GSequence::from_elements(std::slice::from_ref(e)))?;
    }
    let s = GSequence::from_pairs(vec![(zero, k as u32)])
        .mul(&a)?
        .mul(&ctx.negate_sequence(&a)?)?;
    Ok(finish(s, IntervalRecipe::IndependentBlock))
}

/// Outcome of checking an [`IntervalInstance`] with the factorization engine.
#[derive(Debug, Clone)]
pub struct IntervalCheck {
    /// The length set the engine actually found, sorted ascending.
    pub lengths: Vec<u64>,
    /// Whether it equals `[k, ell]` exactly.
    pub ok: bool,
}

/// Enumerate all factorizations of the instance's sequence in the
/// not-zero-sum-free monoid and compare the length set against `[k, ell]`.
pub fn verify_interval(instance: &IntervalInstance, budget: &Budget) -> Result<IntervalCheck> {
    let ctx = ZeroSumContext::new(instance.group.clone());
    let oracle = FIotaOracle::new(&ctx, budget);
    let set = enumerate_factorizations(&oracle, &instance.sequence, budget)?;
    let lengths = set.length_set();
    let want: Vec<u64> = (instance.k..=instance.ell).collect();
    Ok(IntervalCheck {
        ok: lengths == want,
        lengths,
    })
}

/// Which equal-catenary construction to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualCatenaryMode {
    /// Cyclic group of order `n * (2n^2)^n + 1`; the sequence lives on powers
    /// of a prime `p` in `[n^2, 2n^2]` times a generator.
    LargeOrder,
    /// Elementary `p`-group of rank `n^2` on an `n x n` grid of independent
    /// elements plus its row sums, column sums, and total sum.
    BoundedExponent { p: u64 },
}

/// A sequence with exactly two factorizations of length `n + 1`, at distance
/// `n + 1` from each other, forcing the equal catenary degree to be `>= n+1`.
#[derive(Debug, Clone)]
pub struct EqualCatenaryInstance {
    pub group: FiniteAbelianGroup,
    pub sequence: GSequence,
    pub n: u64,
    pub mode: EqualCatenaryMode,
    /// The two expected length-`n+1` factorizations, as multisets of parts.
    pub expected: [Vec<GSequence>; 2],
}

fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Build the equal-catenary witness for a given `n >= 2`.
pub fn equal_catenary_instance(n: u64, mode: EqualCatenaryMode) -> Result<EqualCatenaryInstance> {
    if n < 2 {
        return Err(Error::BadParameters(
            "equal-catenary constructions need n >= 2".into(),
        ));
    }
    match mode {
        EqualCatenaryMode::LargeOrder => large_order_instance(n),
        EqualCatenaryMode::BoundedExponent { p } => bounded_exponent_instance(n, p),
    }
}

/// Cyclic case. With `g` a generator of `C_N`, `N = n*(2n^2)^n + 1`, and `p`
/// the smallest prime in `[n^2, 2n^2]`:
///
/// ```text
/// A   = (-sum p^i g) * prod p^i g          (i in 0..n)
/// A0  = (sum n p^i g) * prod (-n p^i g)
/// B_n = (sum n p^i g) * (-sum p^i g)^n
/// B_i = (-n p^i g) * (p^i g)^n             (i in 0..n)
/// a   = A0 * A^n,  with factorizations  {A0, A, .., A}  and  {B_0, .., B_n}.
/// ```
fn large_order_instance(n: u64) -> Result<EqualCatenaryInstance> {
    let base = 2 * n * n;
    let mut order: u64 = 1;
    for _ in 0..n {
        order = order.checked_mul(base).ok_or(Error::Overflow)?;
    }
    let order = order.checked_mul(n).ok_or(Error::Overflow)? + 1;
    let group = FiniteAbelianGroup::cyclic(order)?;
    let p = (n * n..=2 * n * n)
        .find(|&m| is_prime(m))
        .ok_or_else(|| Error::BadParameters(format!("no prime in [{}, {}]", n * n, 2 * n * n)))?;

    let g = group.element(&[1])?;
    let nn = usize::try_from(n).unwrap();
    // powers[i] = p^i * g for i in 0..n
    let mut powers = Vec::with_capacity(nn);
    let mut pw: u64 = 1;
    for _ in 0..nn {
        let pw_i = i64::try_from(pw).map_err(|_| Error::Overflow)?;
        powers.push(group.scalar_mul(pw_i, &g)?);
        pw = pw.checked_mul(p).ok_or(Error::Overflow)?;
    }
    let mut sum = group.zero();
    for x in &powers {
        sum = group.add(&sum, x)?;
    }
    let neg_sum = group.neg(&sum)?;
    let n_i64 = i64::try_from(n).unwrap();
    let n_sum = group.scalar_mul(n_i64, &sum)?;

    let mut a_seq = GSequence::from_elements(std::slice::from_ref(&neg_sum));
    for x in &powers {
        a_seq = a_seq.mul(&GSequence::from_elements(std::slice::from_ref(x)))?;
    }
    let mut a0_seq = GSequence::from_elements(std::slice::from_ref(&n_sum));
    for x in &powers {
        let neg_nx = group.neg(&group.scalar_mul(n_i64, x)?)?;
        a0_seq = a0_seq.mul(&GSequence::from_elements(&[neg_nx]))?;
    }
    let b_last = GSequence::from_pairs(vec![(n_sum, 1), (neg_sum, n as u32)]);
    let mut bs = Vec::with_capacity(nn + 1);
    for x in &powers {
        let neg_nx = group.neg(&group.scalar_mul(n_i64, x)?)?;
        bs.push(GSequence::from_pairs(vec![
            (neg_nx, 1),
            (x.clone(), n as u32),
        ]));
    }
    bs.push(b_last);

    let mut element = a0_seq.clone();
    for _ in 0..nn {
        element = element.mul(&a_seq)?;
    }
    let mut z = vec![a0_seq];
    z.extend(std::iter::repeat_n(a_seq, nn));
    Ok(EqualCatenaryInstance {
        group,
        sequence: element,
        n,
        mode: EqualCatenaryMode::LargeOrder,
        expected: [z, bs],
    })
}

/// Elementary `p`-group case on independent `e_{i,j}` (`i, j` in `1..=n`) with
///
/// ```text
/// e_0 = sum e_{i,j},   f_i = -(row i sum),   g_j = -(column j sum)
/// U_0 = e_0 f_1 .. f_n          V_0 = e_0 g_1 .. g_n
/// U_i = f_i e_{i,1} .. e_{i,n}  V_j = g_j e_{1,j} .. e_{n,j}
/// a   = e_0 * prod f_i * prod g_j * prod e_{i,j}
/// ```
///
/// with factorizations `{U_0, V_1, .., V_n}` and `{V_0, U_1, .., U_n}`.
fn bounded_exponent_instance(n: u64, p: u64) -> Result<EqualCatenaryInstance> {
    if !is_prime(p) {
        return Err(Error::BadParameters(format!(
            "bounded-exponent construction needs a prime, got {p}"
        )));
    }
    let nn = usize::try_from(n).unwrap();
    let rank = nn * nn;
    let group = FiniteAbelianGroup::new(vec![p; rank])?;
    let basis = group.independent_elements(rank, p)?;
    let at = |i: usize, j: usize| &basis[i * nn + j];

    let mut e0 = group.zero();
    for e in &basis {
        e0 = group.add(&e0, e)?;
    }
    let mut f = Vec::with_capacity(nn);
    let mut g = Vec::with_capacity(nn);
    for i in 0..nn {
        let mut row = group.zero();
        for j in 0..nn {
            row = group.add(&row, at(i, j))?;
        }
        f.push(group.neg(&row)?);
    }
    for j in 0..nn {
        let mut col = group.zero();
        for i in 0..nn {
            col = group.add(&col, at(i, j))?;
        }
        g.push(group.neg(&col)?);
    }

    let mut u0 = GSequence::from_elements(&[e0.clone()]);
    for x in &f {
        u0 = u0.mul(&GSequence::from_elements(std::slice::from_ref(x)))?;
    }
    let mut v0 = GSequence::from_elements(&[e0.clone()]);
    for x in &g {
        v0 = v0.mul(&GSequence::from_elements(std::slice::from_ref(x)))?;
    }
    let mut us = vec![u0];
    for (i, fi) in f.iter().enumerate() {
        let mut u = GSequence::from_elements(std::slice::from_ref(fi));
        for j in 0..nn {
            u = u.mul(&GSequence::from_elements(&[at(i, j).clone()]))?;
        }
        us.push(u);
    }
    let mut vs = vec![v0];
    for (j, gj) in g.iter().enumerate() {
        let mut v = GSequence::from_elements(std::slice::from_ref(gj));
        for i in 0..nn {
            v = v.mul(&GSequence::from_elements(&[at(i, j).clone()]))?;
        }
        vs.push(v);
    }

    // The element carrying both factorizations: one copy of everything.
    let mut element = GSequence::from_elements(&[e0]);
    for x in f.iter().chain(g.iter()).chain(basis.iter()) {
        element = element.mul(&GSequence::from_elements(std::slice::from_ref(x)))?;
    }
    // z uses the row cover through U_0, z' the column cover through V_0.
    let z: Vec<GSequence> = std::iter::once(us[0].clone())
        .chain(vs[1..].iter().cloned())
        .collect();
    let zp: Vec<GSequence> = std::iter::once(vs[0].clone())
        .chain(us[1..].iter().cloned())
        .collect();
    Ok(EqualCatenaryInstance {
        group,
        sequence: element,
        n,
        mode: EqualCatenaryMode::BoundedExponent { p },
        expected: [z, zp],
    })
}

/// Outcome of checking an [`EqualCatenaryInstance`] against the engine.
#[derive(Debug, Clone)]
pub struct EqualCatenaryReport {
    /// Number of factorizations of length exactly `n + 1`.
    pub layer_count: usize,
    /// Distance between the two layer factorizations (0 unless exactly two).
    pub layer_distance: u64,
    /// Whether the layer equals the two expected factorizations.
    pub matches_expected: bool,
    /// Full invariants of the element (includes the equal catenary degree).
    pub invariants: ElementInvariants,
}

fn parts_multiset(atoms: &[GSequence], counts: &[(usize, u32)]) -> BTreeMap<GSequence, u32> {
    let mut out = BTreeMap::new();
    for &(idx, mult) in counts {
        *out.entry(atoms[idx].clone()).or_insert(0) += mult;
    }
    out
}

fn expected_multiset(parts: &[GSequence]) -> BTreeMap<GSequence, u32> {
    let mut out = BTreeMap::new();
    for p in parts {
        *out.entry(p.clone()).or_insert(0) += 1;
    }
    out
}

/// Enumerate all factorizations of the instance in the not-zero-sum-free
/// monoid, isolate the length-`n+1` layer, and measure it.
pub fn verify_equal_catenary(
    instance: &EqualCatenaryInstance,
    budget: &Budget,
) -> Result<EqualCatenaryReport> {
    let ctx = ZeroSumContext::new(instance.group.clone());
    let oracle = FIotaOracle::new(&ctx, budget);
    let set = enumerate_factorizations(&oracle, &instance.sequence, budget)?;
    let target = instance.n + 1;
    let layer: Vec<usize> = (0..set.factorizations.len())
        .filter(|&i| set.factorizations[i].length() == target)
        .collect();
    let layer_count = layer.len();
    let layer_distance = if layer_count == 2 {
        set.factorizations[layer[0]].distance(&set.factorizations[layer[1]])
    } else {
        0
    };
    let matches_expected = if layer_count == 2 {
        let found: Vec<BTreeMap<GSequence, u32>> = layer
            .iter()
            .map(|&i| parts_multiset(&set.atoms, &set.factorizations[i].counts))
            .collect();
        let want0 = expected_multiset(&instance.expected[0]);
        let want1 = expected_multiset(&instance.expected[1]);
        (found[0] == want0 && found[1] == want1) || (found[0] == want1 && found[1] == want0)
    } else {
        false
    };
    let invariants = invariants_from_set(&set, budget)?;
    Ok(EqualCatenaryReport {
        layer_count,
        layer_distance,
        matches_expected,
        invariants,
    })
}
