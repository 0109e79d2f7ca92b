//! Conductor submonoids of `F = E x N_0^s` presented by ideal extensions.
//!
//! For a finite antichain `U` of nonzero exponent vectors let `a` be the
//! up-closure of `U` (an s-ideal of `N_0^s`). The monoid
//!
//! `H = { (e, v) : e in E, v in a } ∪ {identity}`
//!
//! is a conductor submonoid of `F`: its non-units form an s-ideal, so every
//! non-unit times anything in `F` stays in `H`. `E` is an optional finite
//! abelian unit group; when absent the monoid is reduced. Reduced models with
//! nontrivial `E` arise as `H/H^x` for finitely primary power monoids.
//!
//! The module also carries the gap machinery (`G(H) = F \ H`), the
//! gap-absorption test that characterizes conductor submonoids, minimal
//! elements, the C-monoid certificate (`alpha` bound plus the capped class
//! semigroup), and a membership-override monoid used to exercise the negative
//! direction of the gap-absorption characterization.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::factor::AtomicOracle;
use crate::freemon::{dickson_min, divisor_enumeration, ExponentVector, Window};
use crate::group::{FiniteAbelianGroup, GroupElement};
use std::collections::BTreeMap;

/// Anything that decides membership of exponent vectors in a submonoid of
/// `N_0^s` containing the identity. `member` must hold for the zero vector.
pub trait VectorMonoid {
    fn dim(&self) -> usize;
    fn member(&self, v: &ExponentVector) -> bool;

    /// True iff `v` is a nonzero member with no split into two nonzero
    /// members. The default is an exhaustive divisor scan.
    fn is_atom_vec(&self, v: &ExponentVector) -> bool {
        if v.is_zero() || !self.member(v) {
            return false;
        }
        !self.splits_into_members(v)
    }

    /// True iff `v = d + (v - d)` for some divisor with both parts nonzero
    /// members.
    fn splits_into_members(&self, v: &ExponentVector) -> bool {
        let mut d = ExponentVector::zeros(v.dim());
        loop {
            // advance the divisor odometer
            let mut i = v.dim();
            let mut done = true;
            while i > 0 {
                i -= 1;
                let mut coords = d.coords().to_vec();
                if coords[i] < v.get(i) {
                    coords[i] += 1;
                    for c in coords.iter_mut().skip(i + 1) {
                        *c = 0;
                    }
                    d = ExponentVector::new(coords);
                    done = false;
                    break;
                }
            }
            if done {
                return false;
            }
            if d == *v {
                return false;
            }
            if self.member(&d) {
                let rest = v.checked_subtract(&d).unwrap().unwrap();
                if !rest.is_zero() && self.member(&rest) {
                    return true;
                }
            }
        }
    }
}

/// Element of an ideal-extension monoid: a unit part and a vector part.
/// `Ord` is lexicographic on (unit residues, vector coordinates), the
/// canonical order for atoms and report rows.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonoidElement {
    pub unit: GroupElement,
    pub vec: ExponentVector,
}

/// Conductor submonoid `H = (E x a) ∪ {1}` of `E x N_0^s`.
#[derive(Debug, Clone)]
pub struct IdealExtensionMonoid {
    s: usize,
    generators: Vec<ExponentVector>,
    unit_group: FiniteAbelianGroup,
    units: Vec<GroupElement>,
}

/// Result of a windowed gap-set scan.
#[derive(Debug, Clone)]
pub struct GapSet {
    pub gaps: Vec<ExponentVector>,
    /// True iff the window provably contains every gap.
    pub complete: bool,
}

/// Counterexample found by the gap-absorption scan.
#[derive(Debug, Clone)]
pub struct AbsorptionCounterexample {
    pub gap: ExponentVector,
    pub atom: ExponentVector,
    pub sum: ExponentVector,
    pub reason: String,
}

/// Result of the gap-absorption scan: `G(H) * A(H)` must land in
/// `A(H) ∪ A(H)A(H)` for every in-window pair.
#[derive(Debug, Clone)]
pub struct GapAbsorption {
    pub holds: bool,
    pub counterexample: Option<AbsorptionCounterexample>,
    pub pairs_checked: u64,
}

/// The class semigroup of `H` in `F`, computed exactly on the capped cube
/// `{v : v_i <= cap}`. Two vectors are equivalent iff they have the same
/// residual `{x : x + y in H}`; capping at `alpha` is exact because the
/// residual depends only on `min(y_i, alpha)` in every coordinate.
#[derive(Debug, Clone)]
pub struct ClassSemigroup {
    pub alpha: u32,
    pub cap: u32,
    pub class_count: usize,
    /// Lexicographically minimal representative per class, sorted.
    pub representatives: Vec<ExponentVector>,
    /// Class index of every cell of the capped cube.
    pub cell_classes: BTreeMap<ExponentVector, usize>,
    /// Addition table on class indices.
    pub table: Vec<Vec<usize>>,
}

/// Canonical form of a residual `{x : x + y in H}`: an up-set given by its
/// minimal antichain, optionally with the isolated identity adjoined (which
/// happens exactly for `y = 0`, where the residual is `H` itself).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum ResidualSig {
    UpSet(Vec<ExponentVector>),
    UpSetPlusZero(Vec<ExponentVector>),
}

impl IdealExtensionMonoid {
    /// Reduced monoid (trivial unit group).
    pub fn new(s: usize, generators: Vec<ExponentVector>) -> Result<Self> {
        Self::with_unit_group(s, generators, FiniteAbelianGroup::cyclic(1)?)
    }

    pub fn with_unit_group(
        s: usize,
        generators: Vec<ExponentVector>,
        unit_group: FiniteAbelianGroup,
    ) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidSpec("need at least one prime axis".into()));
        }
        if generators.is_empty() {
            return Err(Error::InvalidSpec("generator antichain is empty".into()));
        }
        for g in &generators {
            if g.dim() != s {
                return Err(Error::DimensionMismatch {
                    expected: s,
                    got: g.dim(),
                });
            }
            if g.is_zero() {
                return Err(Error::InvalidSpec("generators must be nonzero".into()));
            }
        }
        let mut sorted = generators.clone();
        sorted.sort();
        sorted.dedup();
        let minimal = dickson_min(&sorted)?;
        if minimal != sorted {
            // Name one dominated generator and its dominator.
            for g in &sorted {
                if minimal.contains(g) {
                    continue;
                }
                for u in &minimal {
                    if u.divides(g)? {
                        return Err(Error::InvalidSpec(format!(
                            "generators are not an antichain: {g} is dominated by {u}"
                        )));
                    }
                }
            }
            unreachable!("a non-minimal generator always has a dominator");
        }
        let units = unit_group.enumerate_elements(1_000_000)?;
        Ok(IdealExtensionMonoid {
            s,
            generators: sorted,
            unit_group,
            units,
        })
    }

    pub fn dim_s(&self) -> usize {
        self.s
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn unit_group(&self) -> &FiniteAbelianGroup {
        &self.unit_group
    }

    pub fn is_reduced(&self) -> bool {
        self.units.len() == 1
    }

    pub fn identity(&self) -> MonoidElement {
        MonoidElement {
            unit: self.unit_group.zero(),
            vec: ExponentVector::zeros(self.s),
        }
    }

    /// Element constructor with validation and canonicalization of the unit.
    pub fn element(&self, unit_residues: &[i64], coords: Vec<u32>) -> Result<MonoidElement> {
        let unit = self.unit_group.element(unit_residues)?;
        if coords.len() != self.s {
            return Err(Error::DimensionMismatch {
                expected: self.s,
                got: coords.len(),
            });
        }
        Ok(MonoidElement {
            unit,
            vec: ExponentVector::new(coords),
        })
    }

    /// Vector-part-only constructor (identity unit).
    pub fn vector_element(&self, coords: Vec<u32>) -> Result<MonoidElement> {
        let zeros = vec![0i64; self.unit_group.rank()];
        self.element(&zeros, coords)
    }

    fn in_ideal(&self, v: &ExponentVector) -> bool {
        self.generators
            .iter()
            .any(|g| g.divides(v).unwrap_or(false))
    }

    /// Monoid membership: the identity, or any element whose vector part lies
    /// in the ideal (the unit part is unconstrained there). Unit-part
    /// validity errors; a valid non-member returns `false`.
    pub fn contains(&self, x: &MonoidElement) -> Result<bool> {
        self.unit_group.check(&x.unit)?;
        if x.vec.dim() != self.s {
            return Err(Error::DimensionMismatch {
                expected: self.s,
                got: x.vec.dim(),
            });
        }
        Ok(self.in_ideal(&x.vec) || *x == self.identity())
    }

    /// True iff `x` is an atom. The unit part never matters: `(e, v)` splits
    /// iff `v = v1 + v2` with both parts in the ideal, since the unit group
    /// lets any unit budget be distributed. For ideal extensions that holds
    /// iff some generator `u <= v` leaves `v - u` in the ideal (any split part
    /// dominates a generator), so no divisor scan or length cap is needed.
    pub fn is_atom(&self, x: &MonoidElement) -> Result<bool> {
        if !self.contains(x)? {
            return Err(Error::NotAMember(self.format_element(x)));
        }
        if *x == self.identity() {
            return Ok(false);
        }
        Ok(self.is_atom_vec(&x.vec))
    }

    /// All atoms of `H` whose vector part divides `vec(a)` in `F`, in
    /// canonical order; every admissible vector appears once per unit of `E`.
    pub fn atoms_dividing(&self, a: &MonoidElement, budget: &Budget) -> Result<Vec<MonoidElement>> {
        self.unit_group.check(&a.unit)?;
        let divisors = divisor_enumeration(&a.vec, budget.enumeration_cap)?;
        let mut out = Vec::new();
        for unit in &self.units {
            for v in &divisors {
                if self.is_atom_vec(v) {
                    out.push(MonoidElement {
                        unit: unit.clone(),
                        vec: v.clone(),
                    });
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Minimal elements `M(H)`: non-units all of whose divisors in `H \ H^x`
    /// are associates. On vector parts these are exactly the generators.
    pub fn minimal_elements(&self) -> &[ExponentVector] {
        &self.generators
    }

    /// Axis bound per coordinate: the least `a_i` with `a_i * e_i` in the
    /// ideal, when every axis has one (otherwise `None`).
    pub fn axis_bounds(&self) -> Option<Vec<u32>> {
        let mut bounds = vec![None; self.s];
        for g in &self.generators {
            let support: Vec<usize> = (0..self.s).filter(|&i| g.get(i) > 0).collect();
            if let [i] = support[..] {
                let b = bounds[i].get_or_insert(g.get(i));
                *b = (*b).min(g.get(i));
            }
        }
        bounds.into_iter().collect()
    }

    /// The gap set `G(H) = F \ H` is finite iff every axis has a generator
    /// supported on that axis alone.
    pub fn gap_set_is_finite(&self) -> bool {
        self.axis_bounds().is_some()
    }

    /// Gaps inside the window. `complete` is true iff the gap set is finite
    /// and the window provably covers it (every gap has `v_i < axis bound i`).
    pub fn gap_set(&self, window: &Window, budget: &Budget) -> Result<GapSet> {
        if window.dim() != self.s {
            return Err(Error::DimensionMismatch {
                expected: self.s,
                got: window.dim(),
            });
        }
        let gaps: Vec<ExponentVector> = window
            .enumerate(budget.enumeration_cap)?
            .into_iter()
            .filter(|v| !v.is_zero() && !self.in_ideal(v))
            .collect();
        let complete = match self.axis_bounds() {
            Some(bounds) => bounds
                .iter()
                .enumerate()
                .all(|(i, &b)| window.upper().get(i) + 1 >= b),
            None => false,
        };
        Ok(GapSet { gaps, complete })
    }

    /// `alpha`: the maximum generator coordinate. For every axis `j` and every
    /// `a` divisible by `p_j^alpha`, membership of `a` and `p_j^alpha * a`
    /// agree, which is the defining criterion of the C-monoid certificate.
    pub fn cmonoid_alpha(&self) -> u32 {
        self.generators
            .iter()
            .map(|g| g.max_coord())
            .max()
            .unwrap_or(0)
    }

    /// Exhaustively asserts the C-monoid criterion on the `(2*alpha)^s` cube.
    /// Returns the number of checked instances.
    pub fn assert_cmonoid_criterion(&self, budget: &Budget) -> Result<u64> {
        let alpha = self.cmonoid_alpha();
        let window = Window::cube(self.s, 2 * alpha);
        let mut checked = 0u64;
        for a in window.enumerate(budget.enumeration_cap)? {
            for j in 0..self.s {
                if a.get(j) < alpha {
                    continue;
                }
                let shifted = a.add(&ExponentVector::axis(self.s, j, alpha))?;
                // both sides are nonzero, so H-membership is ideal membership
                if self.in_ideal(&a) != self.in_ideal(&shifted) {
                    return Err(Error::BadParameters(format!(
                        "C-monoid criterion fails at axis {j}, a = {a}"
                    )));
                }
                checked += 1;
            }
        }
        Ok(checked)
    }

    fn residual_sig(&self, y: &ExponentVector) -> Result<ResidualSig> {
        if y.is_zero() {
            // residual is H itself = up(generators) ∪ {0}; that equals the
            // full free monoid exactly when the generators are the unit basis
            let basis: Vec<ExponentVector> = (0..self.s)
                .map(|i| ExponentVector::axis(self.s, i, 1))
                .collect();
            if self.generators == basis {
                return Ok(ResidualSig::UpSet(vec![ExponentVector::zeros(self.s)]));
            }
            return Ok(ResidualSig::UpSetPlusZero(self.generators.clone()));
        }
        let reduced: Vec<ExponentVector> = self
            .generators
            .iter()
            .map(|u| u.saturating_subtract(y))
            .collect::<Result<_>>()?;
        Ok(ResidualSig::UpSet(dickson_min(&reduced)?))
    }

    /// Class semigroup on the canonical cap `alpha`.
    pub fn class_semigroup(&self, budget: &Budget) -> Result<ClassSemigroup> {
        self.class_semigroup_with_cap(self.cmonoid_alpha(), budget)
    }

    /// Class semigroup computed on the cube `{v : v_i <= cap}`. Requires the
    /// reduced case and `cap >= alpha` (smaller caps would merge distinct
    /// residuals).
    pub fn class_semigroup_with_cap(&self, cap: u32, budget: &Budget) -> Result<ClassSemigroup> {
        if !self.is_reduced() {
            return Err(Error::BadParameters(
                "class semigroup is implemented for the reduced case only".into(),
            ));
        }
        let alpha = self.cmonoid_alpha();
        if cap < alpha {
            return Err(Error::BadParameters(format!(
                "cap {cap} is below alpha {alpha}"
            )));
        }
        let cube = Window::cube(self.s, cap);
        let cells = cube.enumerate(budget.enumeration_cap)?;
        let mut classes: BTreeMap<ResidualSig, usize> = BTreeMap::new();
        let mut representatives: Vec<ExponentVector> = Vec::new();
        let mut cell_classes = BTreeMap::new();
        for y in &cells {
            let sig = self.residual_sig(y)?;
            let next = classes.len();
            let idx = *classes.entry(sig).or_insert_with(|| {
                representatives.push(y.clone());
                next
            });
            cell_classes.insert(y.clone(), idx);
        }
        let class_count = representatives.len();
        let mut table = vec![vec![0usize; class_count]; class_count];
        for (i, ri) in representatives.iter().enumerate() {
            for (j, rj) in representatives.iter().enumerate() {
                let sum = ri.add(rj)?.capped(cap);
                table[i][j] = cell_classes[&sum];
            }
        }
        Ok(ClassSemigroup {
            alpha,
            cap,
            class_count,
            representatives,
            cell_classes,
            table,
        })
    }

    /// All monoid members inside the vector window (unit-decorated), plus the
    /// identity, in canonical order. Survey row domain.
    pub fn members_in_window(
        &self,
        window: &Window,
        budget: &Budget,
    ) -> Result<Vec<MonoidElement>> {
        if window.dim() != self.s {
            return Err(Error::DimensionMismatch {
                expected: self.s,
                got: window.dim(),
            });
        }
        let mut out = vec![self.identity()];
        for v in window.enumerate(budget.enumeration_cap)? {
            if self.in_ideal(&v) {
                for unit in &self.units {
                    out.push(MonoidElement {
                        unit: unit.clone(),
                        vec: v.clone(),
                    });
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Renders an element: bare vector in the reduced case, else
    /// `(unit);(vector)`.
    pub fn format_element(&self, x: &MonoidElement) -> String {
        if self.is_reduced() {
            x.vec.to_string()
        } else {
            format!("{};{}", x.unit, x.vec)
        }
    }
}

impl VectorMonoid for IdealExtensionMonoid {
    fn dim(&self) -> usize {
        self.s
    }

    fn member(&self, v: &ExponentVector) -> bool {
        v.is_zero() || self.in_ideal(v)
    }

    fn is_atom_vec(&self, v: &ExponentVector) -> bool {
        if v.is_zero() || !self.in_ideal(v) {
            return false;
        }
        // v splits iff v = x + y with both parts in the ideal; any such x
        // dominates a generator u, and then (v - u) >= y is in the ideal.
        !self.generators.iter().any(|u| {
            u.divides(v).unwrap()
                && match v.checked_subtract(u).unwrap() {
                    Some(rest) => !rest.is_zero() && self.in_ideal(&rest),
                    None => false,
                }
        })
    }
}

/// Monoid of vectors defined by an arbitrary membership predicate. Used to
/// run the gap-absorption scan against non-conductor submonoids; the
/// predicate must accept the zero vector and be closed under addition.
pub struct OverrideMonoid {
    s: usize,
    pred: Box<dyn Fn(&ExponentVector) -> bool + Send + Sync>,
}

impl OverrideMonoid {
    pub fn from_fn(
        s: usize,
        pred: impl Fn(&ExponentVector) -> bool + Send + Sync + 'static,
    ) -> Self {
        OverrideMonoid {
            s,
            pred: Box::new(pred),
        }
    }

    /// The diagonal submonoid generated by `(1,...,1)` as a monoid: all
    /// constant vectors. Not a conductor submonoid for `s >= 2`.
    pub fn diagonal(s: usize) -> Self {
        Self::from_fn(s, |v| {
            let c = v.coords();
            c.iter().all(|&x| x == c[0])
        })
    }
}

impl VectorMonoid for OverrideMonoid {
    fn dim(&self) -> usize {
        self.s
    }

    fn member(&self, v: &ExponentVector) -> bool {
        (self.pred)(v)
    }
}

/// Scans all in-window pairs (gap, atom) and checks that their sum is an atom
/// or a product of two atoms. For conductor submonoids this always holds; a
/// failing pair is returned as a counterexample.
pub fn is_gap_absorbing<M: VectorMonoid + ?Sized>(
    monoid: &M,
    window: &Window,
    budget: &Budget,
) -> Result<GapAbsorption> {
    if window.dim() != monoid.dim() {
        return Err(Error::DimensionMismatch {
            expected: monoid.dim(),
            got: window.dim(),
        });
    }
    let cells = window.enumerate(budget.enumeration_cap)?;
    let mut atom_cache: BTreeMap<ExponentVector, bool> = BTreeMap::new();
    let mut is_atom = |m: &M, v: &ExponentVector| -> bool {
        if let Some(&b) = atom_cache.get(v) {
            return b;
        }
        let b = m.is_atom_vec(v);
        atom_cache.insert(v.clone(), b);
        b
    };
    let atoms: Vec<ExponentVector> = cells
        .iter()
        .filter(|v| is_atom(monoid, v))
        .cloned()
        .collect();
    let gaps: Vec<ExponentVector> = cells
        .iter()
        .filter(|v| !v.is_zero() && !monoid.member(v))
        .cloned()
        .collect();
    let mut pairs_checked = 0u64;
    for g in &gaps {
        for u in &atoms {
            let sum = g.add(u)?;
            if !window.contains(&sum)? {
                continue;
            }
            pairs_checked += 1;
            if pairs_checked > budget.node_cap {
                return Err(Error::BudgetExceeded {
                    stage: "gap absorption scan",
                    progress: pairs_checked,
                    cap: budget.node_cap,
                });
            }
            if !monoid.member(&sum) {
                return Ok(GapAbsorption {
                    holds: false,
                    counterexample: Some(AbsorptionCounterexample {
                        gap: g.clone(),
                        atom: u.clone(),
                        sum: sum.clone(),
                        reason: "gap * atom leaves the monoid".into(),
                    }),
                    pairs_checked,
                });
            }
            if is_atom(monoid, &sum) {
                continue;
            }
            let mut two_atom_split = false;
            for d in divisor_enumeration(&sum, budget.enumeration_cap)? {
                if d.is_zero() || d == sum {
                    continue;
                }
                if is_atom(monoid, &d) {
                    let rest = sum.checked_subtract(&d)?.unwrap();
                    if is_atom(monoid, &rest) {
                        two_atom_split = true;
                        break;
                    }
                }
            }
            if !two_atom_split {
                return Ok(GapAbsorption {
                    holds: false,
                    counterexample: Some(AbsorptionCounterexample {
                        gap: g.clone(),
                        atom: u.clone(),
                        sum: sum.clone(),
                        reason: "gap * atom is neither an atom nor a product of two atoms".into(),
                    }),
                    pairs_checked,
                });
            }
        }
    }
    Ok(GapAbsorption {
        holds: true,
        counterexample: None,
        pairs_checked,
    })
}

/// Factorization-engine oracle over an ideal-extension monoid.
pub struct IdealOracle<'a> {
    pub monoid: &'a IdealExtensionMonoid,
    pub budget: Budget,
}

impl<'a> IdealOracle<'a> {
    pub fn new(monoid: &'a IdealExtensionMonoid, budget: &Budget) -> Self {
        IdealOracle {
            monoid,
            budget: budget.clone(),
        }
    }
}

impl AtomicOracle for IdealOracle<'_> {
    type Elem = MonoidElement;

    fn identity(&self) -> MonoidElement {
        self.monoid.identity()
    }

    fn contains(&self, x: &MonoidElement) -> Result<bool> {
        self.monoid.contains(x)
    }

    fn combine(&self, a: &MonoidElement, b: &MonoidElement) -> Result<MonoidElement> {
        Ok(MonoidElement {
            unit: self.monoid.unit_group().add(&a.unit, &b.unit)?,
            vec: a.vec.add(&b.vec)?,
        })
    }

    fn checked_divide(
        &self,
        a: &MonoidElement,
        b: &MonoidElement,
    ) -> Result<Option<MonoidElement>> {
        match a.vec.checked_subtract(&b.vec)? {
            Some(vec) => Ok(Some(MonoidElement {
                unit: self.monoid.unit_group().sub(&a.unit, &b.unit)?,
                vec,
            })),
            None => Ok(None),
        }
    }

    fn atoms_dividing(&self, a: &MonoidElement) -> Result<Vec<MonoidElement>> {
        self.monoid.atoms_dividing(a, &self.budget)
    }

    fn format(&self, x: &MonoidElement) -> String {
        self.monoid.format_element(x)
    }
}
