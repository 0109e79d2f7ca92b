//! Exact factorization engine over an abstract atomic-monoid oracle.
//!
//! The oracle exposes identity, membership, composition, exact division in
//! the ambient factorial monoid, and the finite list of atoms dividing an
//! element. On top of it the engine enumerates all factorizations (multisets
//! of atoms with the given product), computes length sets, the distance
//! between factorizations, and the catenary degrees:
//!
//! * `c(a)` — the bottleneck threshold connecting all factorizations,
//!   computed twice (Prim-style minimum bottleneck spanning tree and a
//!   threshold search over a union-find); the two results must agree.
//! * `c_eq(a)` — chains restricted to a single factorization length.
//! * `c_adj(a)` — minimum crossing distance between adjacent length layers.
//! * `c_mon(a) = max(c_eq, c_adj)` — monotone chains.
//!
//! Every run checks the distance lower bound `d(z, z') >= 2 + ||z| - |z'||`
//! and the gap bound `c(a) >= 2 + max gap of L(a)`; violations are reported
//! as errors rather than silently accepted. Two independent audits re-derive
//! the canonical enumeration: a duplicate-generating ordered walk
//! (`naive_factorization_check`, which reports a skip when its node budget
//! runs out) and a memoized bottom-up remainder sweep
//! (`exhaustive_factorization_audit`, which treats budget exhaustion as an
//! error and stays feasible on windows that defeat the ordered walk).

use crate::budget::Budget;
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// Oracle describing an atomic monoid embedded in a factorial monoid.
/// `atoms_dividing` must return a strictly sorted list of all atoms of the
/// monoid dividing the argument in the ambient monoid.
pub trait AtomicOracle {
    type Elem: Clone + Ord + std::fmt::Debug;

    fn identity(&self) -> Self::Elem;
    fn contains(&self, x: &Self::Elem) -> Result<bool>;
    fn combine(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    /// Exact division in the ambient monoid: `Some(c)` with `a = b * c`, or
    /// `None` when `b` does not divide `a`.
    fn checked_divide(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Option<Self::Elem>>;
    fn atoms_dividing(&self, a: &Self::Elem) -> Result<Vec<Self::Elem>>;
    fn format(&self, x: &Self::Elem) -> String;
}

/// A factorization: multiplicities over the atom list of its
/// `FactorizationSet`, sorted by atom index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factorization {
    pub counts: Vec<(usize, u32)>,
}

impl Factorization {
    fn from_sorted_indices(indices: &[usize]) -> Factorization {
        let mut counts: Vec<(usize, u32)> = Vec::new();
        for &i in indices {
            match counts.last_mut() {
                Some((j, c)) if *j == i => *c += 1,
                _ => counts.push((i, 1)),
            }
        }
        Factorization { counts }
    }

    pub fn length(&self) -> u64 {
        self.counts.iter().map(|&(_, c)| u64::from(c)).sum()
    }

    /// `d(z, z') = max(|z / gcd|, |z' / gcd|)` with the multiset gcd removed.
    pub fn distance(&self, other: &Factorization) -> u64 {
        let mut common = 0u64;
        let (mut i, mut j) = (0, 0);
        while i < self.counts.len() && j < other.counts.len() {
            let (ai, ac) = self.counts[i];
            let (bi, bc) = other.counts[j];
            if ai == bi {
                common += u64::from(ac.min(bc));
                i += 1;
                j += 1;
            } else if ai < bi {
                i += 1;
            } else {
                j += 1;
            }
        }
        (self.length() - common).max(other.length() - common)
    }
}

/// Search statistics, surfaced so callers can audit how much work ran.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub nodes: u64,
    pub pruned: u64,
}

/// All factorizations of one element over its dividing atoms.
#[derive(Debug, Clone)]
pub struct FactorizationSet<E> {
    pub element: E,
    pub atoms: Vec<E>,
    pub factorizations: Vec<Factorization>,
    pub stats: EngineStats,
}

impl<E> FactorizationSet<E> {
    /// Sorted distinct factorization lengths (the length set `L(a)`).
    pub fn length_set(&self) -> Vec<u64> {
        let mut ls: Vec<u64> = self.factorizations.iter().map(|z| z.length()).collect();
        ls.sort_unstable();
        ls.dedup();
        ls
    }
}

/// Depth-first enumeration with a non-decreasing atom index, which emits
/// every multiset exactly once. Remainders that fall outside the monoid are
/// pruned: any completable remainder is a product of atoms, hence a member.
pub fn enumerate_factorizations<O: AtomicOracle>(
    oracle: &O,
    a: &O::Elem,
    budget: &Budget,
) -> Result<FactorizationSet<O::Elem>> {
    if !oracle.contains(a)? {
        return Err(Error::NotAMember(oracle.format(a)));
    }
    let identity = oracle.identity();
    if *a == identity {
        return Ok(FactorizationSet {
            element: a.clone(),
            atoms: Vec::new(),
            factorizations: vec![Factorization { counts: Vec::new() }],
            stats: EngineStats::default(),
        });
    }
    let atoms = oracle.atoms_dividing(a)?;
    debug_assert!(
        atoms.windows(2).all(|w| w[0] < w[1]),
        "atom list must be strictly sorted"
    );
    let mut stats = EngineStats::default();
    let mut out: Vec<Factorization> = Vec::new();
    let mut prefix: Vec<usize> = Vec::new();
    search(
        oracle,
        &identity,
        &atoms,
        a,
        0,
        budget,
        &mut stats,
        &mut prefix,
        &mut out,
    )?;
    Ok(FactorizationSet {
        element: a.clone(),
        atoms,
        factorizations: out,
        stats,
    })
}

#[allow(clippy::too_many_arguments)]
fn search<O: AtomicOracle>(
    oracle: &O,
    identity: &O::Elem,
    atoms: &[O::Elem],
    remainder: &O::Elem,
    start: usize,
    budget: &Budget,
    stats: &mut EngineStats,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Factorization>,
) -> Result<()> {
    if *remainder == *identity {
        out.push(Factorization::from_sorted_indices(prefix));
        if out.len() as u64 > budget.factorization_cap {
            return Err(Error::BudgetExceeded {
                stage: "factorization count",
                progress: out.len() as u64,
                cap: budget.factorization_cap,
            });
        }
        return Ok(());
    }
    if prefix.len() as u64 >= u64::from(budget.length_cap) {
        return Err(Error::BudgetExceeded {
            stage: "factorization length",
            progress: prefix.len() as u64,
            cap: u64::from(budget.length_cap),
        });
    }
    for i in start..atoms.len() {
        stats.nodes += 1;
        if stats.nodes > budget.node_cap {
            return Err(Error::BudgetExceeded {
                stage: "factorization search",
                progress: stats.nodes,
                cap: budget.node_cap,
            });
        }
        let Some(rest) = oracle.checked_divide(remainder, &atoms[i])? else {
            continue;
        };
        if rest != *identity && !oracle.contains(&rest)? {
            stats.pruned += 1;
            continue;
        }
        prefix.push(i);
        search(
            oracle, identity, atoms, &rest, i, budget, stats, prefix, out,
        )?;
        prefix.pop();
    }
    Ok(())
}

/// Independent audit: enumerate factorizations without the canonical-order
/// constraint (every ordering of every multiset is walked) and compare the
/// deduplicated set with the canonical enumeration. Returns `None` when the
/// node budget runs out, `Some(true/false)` otherwise.
pub fn naive_factorization_check<O: AtomicOracle>(
    oracle: &O,
    set: &FactorizationSet<O::Elem>,
    node_cap: u64,
) -> Result<Option<bool>> {
    let identity = oracle.identity();
    let mut seen: BTreeSet<Vec<(usize, u32)>> = BTreeSet::new();
    let mut nodes = 0u64;
    let mut current: BTreeMap<usize, u32> = BTreeMap::new();
    let complete = naive_walk(
        oracle,
        &identity,
        &set.atoms,
        &set.element,
        &mut current,
        &mut seen,
        &mut nodes,
        node_cap,
    )?;
    if !complete {
        return Ok(None);
    }
    let canonical: BTreeSet<Vec<(usize, u32)>> = set
        .factorizations
        .iter()
        .map(|z| z.counts.clone())
        .collect();
    Ok(Some(
        canonical == seen && canonical.len() == set.factorizations.len(),
    ))
}

#[allow(clippy::too_many_arguments)]
fn naive_walk<O: AtomicOracle>(
    oracle: &O,
    identity: &O::Elem,
    atoms: &[O::Elem],
    remainder: &O::Elem,
    current: &mut BTreeMap<usize, u32>,
    seen: &mut BTreeSet<Vec<(usize, u32)>>,
    nodes: &mut u64,
    node_cap: u64,
) -> Result<bool> {
    if *remainder == *identity {
        seen.insert(current.iter().map(|(&i, &c)| (i, c)).collect());
        return Ok(true);
    }
    for (i, atom) in atoms.iter().enumerate() {
        *nodes += 1;
        if *nodes > node_cap {
            return Ok(false);
        }
        let Some(rest) = oracle.checked_divide(remainder, atom)? else {
            continue;
        };
        *current.entry(i).or_insert(0) += 1;
        let ok = naive_walk(
            oracle, identity, atoms, &rest, current, seen, nodes, node_cap,
        )?;
        match current.get_mut(&i) {
            Some(c) if *c > 1 => *c -= 1,
            _ => {
                current.remove(&i);
            }
        }
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Factorization multisets of one remainder, as sorted (atom index,
/// multiplicity) patterns, keyed by the remainder they complete.
type CompletionMemo<E> = BTreeMap<E, BTreeSet<Vec<(usize, u32)>>>;

/// Independent re-enumeration by a bottom-up sweep over remainders: the set
/// of factorization multisets of each remainder is rebuilt from every atom
/// that divides it, so each multiset is rediscovered once per distinct atom
/// it contains and deduplicated, without the canonical-order constraint.
/// Memoizing on the remainder keeps the walk proportional to the number of
/// distinct remainders times the factorization counts, so windows that defeat
/// the ordered duplicate walk stay feasible. Budget exhaustion is an error,
/// never a silent pass.
pub fn exhaustive_factorization_audit<O: AtomicOracle>(
    oracle: &O,
    set: &FactorizationSet<O::Elem>,
    budget: &Budget,
) -> Result<bool> {
    let identity = oracle.identity();
    let mut memo: CompletionMemo<O::Elem> = BTreeMap::new();
    let mut work = 0u64;
    audit_completions(
        oracle,
        &set.atoms,
        &identity,
        &set.element,
        &mut memo,
        &mut work,
        budget.node_cap,
    )?;
    let found = memo
        .get(&set.element)
        .expect("the audit sweep visits its root element");
    let canonical: BTreeSet<Vec<(usize, u32)>> = set
        .factorizations
        .iter()
        .map(|z| z.counts.clone())
        .collect();
    Ok(*found == canonical && canonical.len() == set.factorizations.len())
}

fn audit_completions<O: AtomicOracle>(
    oracle: &O,
    atoms: &[O::Elem],
    identity: &O::Elem,
    remainder: &O::Elem,
    memo: &mut CompletionMemo<O::Elem>,
    work: &mut u64,
    node_cap: u64,
) -> Result<()> {
    if memo.contains_key(remainder) {
        return Ok(());
    }
    if *remainder == *identity {
        let mut base = BTreeSet::new();
        base.insert(Vec::new());
        memo.insert(remainder.clone(), base);
        return Ok(());
    }
    let mut out: BTreeSet<Vec<(usize, u32)>> = BTreeSet::new();
    for (i, atom) in atoms.iter().enumerate() {
        *work += 1;
        if *work > node_cap {
            return Err(Error::BudgetExceeded {
                stage: "exhaustive factorization audit",
                progress: *work,
                cap: node_cap,
            });
        }
        let Some(rest) = oracle.checked_divide(remainder, atom)? else {
            continue;
        };
        audit_completions(oracle, atoms, identity, &rest, memo, work, node_cap)?;
        for counts in memo.get(&rest).expect("child remainder just computed") {
            *work += 1;
            if *work > node_cap {
                return Err(Error::BudgetExceeded {
                    stage: "exhaustive factorization audit",
                    progress: *work,
                    cap: node_cap,
                });
            }
            let mut extended = counts.clone();
            match extended.binary_search_by_key(&i, |&(idx, _)| idx) {
                Ok(pos) => extended[pos].1 += 1,
                Err(pos) => extended.insert(pos, (i, 1)),
            }
            out.insert(extended);
        }
    }
    memo.insert(remainder.clone(), out);
    Ok(())
}

/// Full pairwise distance matrix, guarded by the pair budget.
pub fn pairwise_distances<E>(set: &FactorizationSet<E>, budget: &Budget) -> Result<Vec<Vec<u64>>> {
    let n = set.factorizations.len();
    let pairs = (n as u64).saturating_mul(n.saturating_sub(1) as u64) / 2;
    if pairs > budget.pair_cap {
        return Err(Error::BudgetExceeded {
            stage: "pairwise distances",
            progress: pairs,
            cap: budget.pair_cap,
        });
    }
    let mut dist = vec![vec![0u64; n]; n];
    for (i, zi) in set.factorizations.iter().enumerate() {
        for (j, zj) in set.factorizations.iter().enumerate().skip(i + 1) {
            let d = zi.distance(zj);
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }
    Ok(dist)
}

/// Disjoint-set forest with union by rank and path halving.
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        self.components -= 1;
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

/// Maximum edge of a minimum bottleneck spanning tree on the complete graph
/// over `members`, built Prim-style. Zero for at most one vertex.
pub(crate) fn bottleneck_prim(dist: &[Vec<u64>], members: &[usize]) -> u64 {
    if members.len() <= 1 {
        return 0;
    }
    let n = members.len();
    let mut in_tree = vec![false; n];
    let mut best = vec![u64::MAX; n];
    in_tree[0] = true;
    for i in 1..n {
        best[i] = dist[members[0]][members[i]];
    }
    let mut max_edge = 0;
    for _ in 1..n {
        let mut pick = usize::MAX;
        for i in 0..n {
            if !in_tree[i] && (pick == usize::MAX || best[i] < best[pick]) {
                pick = i;
            }
        }
        max_edge = max_edge.max(best[pick]);
        in_tree[pick] = true;
        for i in 0..n {
            if !in_tree[i] {
                best[i] = best[i].min(dist[members[pick]][members[i]]);
            }
        }
    }
    max_edge
}

/// Least threshold `t` such that the graph with edges of weight `<= t`
/// connects all of `members`: binary search over the distinct weights, with
/// union-find connectivity at each probe.
fn bottleneck_threshold(dist: &[Vec<u64>], members: &[usize]) -> u64 {
    if members.len() <= 1 {
        return 0;
    }
    let mut weights: Vec<u64> = Vec::new();
    for (i, &a) in members.iter().enumerate() {
        for &b in members.iter().skip(i + 1) {
            weights.push(dist[a][b]);
        }
    }
    weights.sort_unstable();
    weights.dedup();
    let connected = |t: u64| -> bool {
        let mut uf = UnionFind::new(members.len());
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                if dist[members[i]][members[j]] <= t {
                    uf.union(i, j);
                }
            }
        }
        uf.components() == 1
    };
    let (mut lo, mut hi) = (0usize, weights.len() - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if connected(weights[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    weights[lo]
}

/// Invariants of one element: factorization count, length set, gaps, and the
/// catenary degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementInvariants {
    pub z_count: u64,
    pub lengths: Vec<u64>,
    pub delta: Vec<u64>,
    pub catenary: u64,
    pub catenary_equal: u64,
    pub catenary_adjacent: u64,
    pub catenary_monotone: u64,
}

/// Successive differences of a sorted length set.
pub fn successive_gaps(lengths: &[u64]) -> Vec<u64> {
    lengths.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Union of the length sets that contain `k`.
pub fn union_of_lengths(length_sets: &[Vec<u64>], k: u64) -> Vec<u64> {
    let mut out: Vec<u64> = length_sets
        .iter()
        .filter(|ls| ls.contains(&k))
        .flatten()
        .copied()
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Computes all invariants from an enumerated factorization set, running the
/// internal consistency checks (two catenary algorithms, distance lower
/// bound, length-gap lower bound).
pub fn invariants_from_set<E: Clone>(
    set: &FactorizationSet<E>,
    budget: &Budget,
) -> Result<ElementInvariants> {
    let dist = pairwise_distances(set, budget)?;
    let n = set.factorizations.len();
    let lengths = set.length_set();
    let delta = successive_gaps(&lengths);

    for (i, zi) in set.factorizations.iter().enumerate() {
        for (j, zj) in set.factorizations.iter().enumerate().skip(i + 1) {
            let li = zi.length();
            let lj = zj.length();
            if dist[i][j] < 2 + li.abs_diff(lj) {
                return Err(Error::BadParameters(format!(
                    "distance lower bound violated: d = {}, lengths {} and {}",
                    dist[i][j], li, lj
                )));
            }
        }
    }

    let all: Vec<usize> = (0..n).collect();
    let catenary = bottleneck_prim(&dist, &all);
    let by_threshold = bottleneck_threshold(&dist, &all);
    if catenary != by_threshold {
        return Err(Error::BadParameters(format!(
            "catenary algorithms disagree: tree bottleneck {catenary}, threshold {by_threshold}"
        )));
    }

    let mut layers: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, z) in set.factorizations.iter().enumerate() {
        layers.entry(z.length()).or_default().push(i);
    }
    let catenary_equal = layers
        .values()
        .map(|members| bottleneck_prim(&dist, members))
        .max()
        .unwrap_or(0);
    let layer_list: Vec<&Vec<usize>> = layers.values().collect();
    let mut catenary_adjacent = 0u64;
    for w in layer_list.windows(2) {
        let mut crossing = u64::MAX;
        for &i in w[0] {
            for &j in w[1] {
                crossing = crossing.min(dist[i][j]);
            }
        }
        if crossing != u64::MAX {
            catenary_adjacent = catenary_adjacent.max(crossing);
        }
    }
    let catenary_monotone = catenary_equal.max(catenary_adjacent);

    if catenary > catenary_monotone {
        return Err(Error::BadParameters(format!(
            "catenary degree {catenary} exceeds monotone catenary degree {catenary_monotone}"
        )));
    }
    if let Some(&gap) = delta.iter().max() {
        if n > 0 && catenary < 2 + gap {
            return Err(Error::BadParameters(format!(
                "catenary degree {catenary} below length-gap bound {}",
                2 + gap
            )));
        }
    }

    Ok(ElementInvariants {
        z_count: n as u64,
        lengths,
        delta,
        catenary,
        catenary_equal,
        catenary_adjacent,
        catenary_monotone,
    })
}

/// Enumerates and computes invariants in one call.
pub fn element_invariants<O: AtomicOracle>(
    oracle: &O,
    a: &O::Elem,
    budget: &Budget,
) -> Result<(ElementInvariants, EngineStats)> {
    let set = enumerate_factorizations(oracle, a, budget)?;
    let inv = invariants_from_set(&set, budget)?;
    Ok((inv, set.stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conductor::{IdealExtensionMonoid, IdealOracle};
    use crate::freemon::ExponentVector;
    use crate::group::FiniteAbelianGroup;

    fn ev(coords: &[u32]) -> ExponentVector {
        ExponentVector::new(coords.to_vec())
    }

    fn monoid(gens: &[&[u32]]) -> IdealExtensionMonoid {
        let s = gens[0].len();
        IdealExtensionMonoid::new(s, gens.iter().map(|g| ev(g)).collect()).unwrap()
    }

    #[test]
    fn identity_has_the_empty_factorization() {
        let h = monoid(&[&[1, 1]]);
        let budget = Budget::default();
        let oracle = IdealOracle::new(&h, &budget);
        let set = enumerate_factorizations(&oracle, &h.identity(), &budget).unwrap();
        assert_eq!(set.factorizations.len(), 1);
        assert_eq!(set.factorizations[0].length(), 0);
        assert_eq!(set.length_set(), vec![0]);
    }

    #[test]
    fn non_member_is_rejected() {
        let h = monoid(&[&[2, 2]]);
        let budget = Budget::default();
        let oracle = IdealOracle::new(&h, &budget);
        let x = h.vector_element(vec![1, 0]).unwrap();
        assert!(matches!(
            enumerate_factorizations(&oracle, &x, &budget),
            Err(Error::NotAMember(_))
        ));
    }

    #[test]
    fn four_four_over_two_two_has_one_factorization() {
        let h = monoid(&[&[2, 2]]);
        let budget = Budget::default();
        let oracle = IdealOracle::new(&h, &budget);
        let a = h.vector_element(vec![4, 4]).unwrap();
        let set = enumerate_factorizations(&oracle, &a, &budget).unwrap();
        assert_eq!(set.factorizations.len(), 1);
        assert_eq!(set.length_set(), vec![2]);
        let inv = invariants_from_set(&set, &budget).unwrap();
        assert_eq!(inv.catenary, 0);
    }

    #[test]
    fn five_five_over_two_two_has_two_distant_factorizations() {
        let h = monoid(&[&[2, 2]]);
        let budget = Budget::default();
        let oracle = IdealOracle::new(&h, &budget);
        let a = h.vector_element(vec![5, 5]).unwrap();
        let (inv, _) = element_invariants(&oracle, &a, &budget).unwrap();
        // the two factorizations are (2,2)+(3,3) and (2,3)+(3,2)
        assert_eq!(inv.z_count, 2);
        assert_eq!(inv.lengths, vec![2]);
        assert_eq!(inv.catenary, 2);
        assert_eq!(inv.catenary_equal, 2);
        assert_eq!(inv.catenary_adjacent, 0);
        assert_eq!(inv.catenary_monotone, 2);
    }

    #[test]
    fn four_four_over_one_one_frozen_invariants() {
        // hand enumeration: {(1,3),(3,1)}, {(1,1),(1,2),(2,1)}, {(1,1)^4}
        let h = monoid(&[&[1, 1]]);
        let budget = Budget::default();
        let oracle = IdealOracle::new(&h, &budget);
        let a = h.vector_element(vec![4, 4]).unwrap();
        let set = enumerate_factorizations(&oracle, &a, &budget).unwrap();
        assert_eq!(set.factorizations.len(), 3);
        let inv = invariants_from_set(&set, &budget).unwrap();
        assert_eq!(inv.lengths, vec![2, 3, 4]);
        assert_eq!(inv.delta, vec![1, 1]);
        assert_eq!(inv.catenary, 3);
        assert_eq!(inv.catenary_equal, 0);
        assert_eq!(inv.catenary_adjacent, 3);
        assert_eq!(inv.catenary_monotone, 3);
    }

    #[test]
    fn unit_group_splits_factorizations_by_unit_budget() {
        let h = IdealExtensionMonoid::with_unit_group(
            1,
            vec![ev(&[1])],
            FiniteAbelianGroup::cyclic(2).unwrap(),
        )
        .unwrap();
        let budget = Budget::default();
        let oracle = IdealOracle::new(&h, &budget);
        // (0);(2) factors as ((0);(1))^2 and ((1);(1))^2
        let a = h.element(&[0], vec![2]).unwrap();
        let (inv, _) = element_invariants(&oracle, &a, &budget).unwrap();
        assert_eq!(inv.z_count, 2);
        assert_eq!(inv.lengths, vec![2]);
        assert_eq!(inv.catenary, 2);
        // (1);(2) factors only as (0);(1) * (1);(1)
        let b = h.element(&[1], vec![2]).unwrap();
        let (inv, _) = element_invariants(&oracle, &b, &budget).unwrap();
        assert_eq!(inv.z_count, 1);
        assert_eq!(inv.catenary, 0);
    }

    #[test]
    fn naive_audit_agrees_on_small_instances() {
        let budget = Budget::default();
        for (gens, coords) in [
            (vec![ev(&[1, 1])], vec![4, 4]),
            (vec![ev(&[2, 2])], vec![5, 5]),
            (vec![ev(&[1, 2]), ev(&[2, 1])], vec![5, 4]),
            (vec![ev(&[3]), ev(&[3])], vec![7]),
        ] {
            let h = IdealExtensionMonoid::new(coords.len(), gens).unwrap();
            let oracle = IdealOracle::new(&h, &budget);
            let a = h.vector_element(coords).unwrap();
            if !h.contains(&a).unwrap() {
                continue;
            }
            let set = enumerate_factorizations(&oracle, &a, &budget).unwrap();
            assert_eq!(
                naive_factorization_check(&oracle, &set, 10_000_000).unwrap(),
                Some(true)
            );
        }
    }

    #[test]
    fn naive_audit_reports_budget_exhaustion_as_skip() {
        let h = monoid(&[&[1, 1]]);
        let budget = Budget::default();
        let oracle = IdealOracle::new(&h, &budget);
        let a = h.vector_element(vec![6, 6]).unwrap();
        let set = enumerate_factorizations(&oracle, &a, &budget).unwrap();
        assert_eq!(naive_factorization_check(&oracle, &set, 3).unwrap(), None);
    }

    #[test]
    fn distance_is_a_metric_on_small_sets() {
        let h = monoid(&[&[1, 1]]);
        let budget = Budget::default();
        let oracle = IdealOracle::new(&h, &budget);
        let a = h.vector_element(vec![5, 5]).unwrap();
        let set = enumerate_factorizations(&oracle, &a, &budget).unwrap();
        let n = set.factorizations.len();
        assert!(n >= 3);
        let d = pairwise_distances(&set, &budget).unwrap();
        for i in 0..n {
            assert_eq!(d[i][i], 0);
            for j in 0..n {
                assert_eq!(d[i][j], d[j][i]);
                for k in 0..n {
                    assert!(d[i][k] <= d[i][j] + d[j][k], "triangle violated");
                }
            }
        }
    }

    #[test]
    fn factorization_length_budget_is_enforced() {
        let h = monoid(&[&[1]]);
        let budget = Budget {
            length_cap: 3,
            ..Budget::default()
        };
        let oracle = IdealOracle::new(&h, &budget);
        let a = h.vector_element(vec![5]).unwrap();
        assert!(matches!(
            enumerate_factorizations(&oracle, &a, &budget),
            Err(Error::BudgetExceeded {
                stage: "factorization length",
                ..
            })
        ));
    }

    #[test]
    fn union_of_lengths_filters_by_membership() {
        let sets = vec![vec![2, 4], vec![2, 3], vec![5], vec![3, 7]];
        assert_eq!(union_of_lengths(&sets, 2), vec![2, 3, 4]);
        assert_eq!(union_of_lengths(&sets, 3), vec![2, 3, 7]);
        assert_eq!(union_of_lengths(&sets, 9), Vec::<u64>::new());
    }

    #[test]
    fn union_find_tracks_components() {
        let mut uf = UnionFind::new(5);
        assert_eq!(uf.components(), 5);
        uf.union(0, 1);
        uf.union(3, 4);
        assert_eq!(uf.components(), 3);
        uf.union(1, 0);
        assert_eq!(uf.components(), 3);
        assert_eq!(uf.find(0), uf.find(1));
        assert_ne!(uf.find(0), uf.find(3));
    }

    #[test]
    fn exhaustive_audit_agrees_with_the_canonical_enumeration() {
        let budget = Budget::default();
        for gens in [
            vec![vec![1u32, 1]],
            vec![vec![2, 0], vec![0, 2], vec![1, 1]],
            vec![vec![2, 1], vec![1, 3]],
        ] {
            let h = monoid(&gens.iter().map(|g| g.as_slice()).collect::<Vec<_>>());
            let oracle = IdealOracle::new(&h, &budget);
            let window = crate::freemon::Window::cube(h.dim_s(), 6);
            for a in h.members_in_window(&window, &budget).unwrap() {
                let set = enumerate_factorizations(&oracle, &a, &budget).unwrap();
                assert!(exhaustive_factorization_audit(&oracle, &set, &budget).unwrap());
            }
        }
    }

    #[test]
    fn exhaustive_audit_handles_the_free_monoid_on_a_large_window() {
        // The ordered duplicate walk needs billions of nodes here; the
        // memoized sweep touches each of the 729 remainders once.
        let h = monoid(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let budget = Budget {
            length_cap: 24,
            ..Budget::default()
        };
        let oracle = IdealOracle::new(&h, &budget);
        let a = h.vector_element(vec![8, 8, 8]).unwrap();
        let set = enumerate_factorizations(&oracle, &a, &budget).unwrap();
        assert_eq!(set.factorizations.len(), 1);
        assert!(exhaustive_factorization_audit(&oracle, &set, &budget).unwrap());
    }

    #[test]
    fn exhaustive_audit_rejects_dropped_and_duplicated_factorizations() {
        let h = monoid(&[&[1, 1]]);
        let budget = Budget::default();
        let oracle = IdealOracle::new(&h, &budget);
        let a = h.vector_element(vec![3, 3]).unwrap();
        let set = enumerate_factorizations(&oracle, &a, &budget).unwrap();
        assert!(set.factorizations.len() >= 2);

        let mut dropped = set.clone();
        dropped.factorizations.pop();
        assert!(!exhaustive_factorization_audit(&oracle, &dropped, &budget).unwrap());

        let mut duplicated = set.clone();
        duplicated
            .factorizations
            .push(duplicated.factorizations[0].clone());
        assert!(!exhaustive_factorization_audit(&oracle, &duplicated, &budget).unwrap());
    }

    #[test]
    fn exhaustive_audit_enforces_its_node_budget() {
        let h = monoid(&[&[1, 1]]);
        let mut budget = Budget::default();
        let oracle = IdealOracle::new(&h, &budget);
        let a = h.vector_element(vec![4, 4]).unwrap();
        let set = enumerate_factorizations(&oracle, &a, &budget).unwrap();
        budget.node_cap = 3;
        assert!(matches!(
            exhaustive_factorization_audit(&oracle, &set, &budget),
            Err(Error::BudgetExceeded {
                stage: "exhaustive factorization audit",
                ..
            })
        ));
    }
}
