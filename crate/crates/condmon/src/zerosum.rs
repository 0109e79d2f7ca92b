//! Zero-sum combinatorics over finite abelian groups.
//!
//! Sequences are finite multisets of group elements. The module provides:
//!
//! * the zero-sum-free test via an exact dynamic program over achievable
//!   subsequence sums;
//! * enumeration of minimal zero-sum sequences (the atoms of the block
//!   monoid `B(G_0)`) and the Davenport constant `D(G_0)`;
//! * the conductor submonoid `F_iota` of all sequences containing a nonempty
//!   zero-sum subsequence (plus the empty sequence), with exact atom tests,
//!   complete atom enumeration up to a provable length bound, and
//!   non-primality witnesses;
//! * named primes labeled by group elements, the pulled-back monoid `F_phi`
//!   of prime sequences with non-zero-sum-free image, and the mechanical
//!   checks that the image map transfers factorizations (class cover,
//!   factorization lifting, fiber catenary degree).

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::factor::{enumerate_factorizations, pairwise_distances, AtomicOracle, FactorizationSet};
use crate::group::{FiniteAbelianGroup, GroupElement};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Multiset of group elements, ordered by its sorted count representation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GSequence {
    counts: BTreeMap<GroupElement, u32>,
}

impl GSequence {
    pub fn empty() -> GSequence {
        GSequence::default()
    }

    pub fn from_elements(elements: &[GroupElement]) -> GSequence {
        let mut counts = BTreeMap::new();
        for g in elements {
            *counts.entry(g.clone()).or_insert(0) += 1;
        }
        GSequence { counts }
    }

    pub fn from_pairs(pairs: Vec<(GroupElement, u32)>) -> GSequence {
        let mut counts = BTreeMap::new();
        for (g, c) in pairs {
            if c > 0 {
                *counts.entry(g).or_insert(0) += c;
            }
        }
        GSequence { counts }
    }

    pub fn counts(&self) -> &BTreeMap<GroupElement, u32> {
        &self.counts
    }

    pub fn push(&mut self, g: GroupElement) {
        *self.counts.entry(g).or_insert(0) += 1;
    }

    pub fn len(&self) -> u64 {
        self.counts.values().map(|&c| u64::from(c)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn multiplicity(&self, g: &GroupElement) -> u32 {
        self.counts.get(g).copied().unwrap_or(0)
    }

    pub fn support(&self) -> Vec<GroupElement> {
        self.counts.keys().cloned().collect()
    }

    /// Multiset union (sequence concatenation).
    pub fn mul(&self, other: &GSequence) -> Result<GSequence> {
        let mut counts = self.counts.clone();
        for (g, &c) in &other.counts {
            let slot = counts.entry(g.clone()).or_insert(0);
            *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
        }
        Ok(GSequence { counts })
    }

    /// Multiset difference when `other` is a sub-multiset.
    pub fn checked_div(&self, other: &GSequence) -> Option<GSequence> {
        let mut counts = self.counts.clone();
        for (g, &c) in &other.counts {
            match counts.get_mut(g) {
                Some(have) if *have > c => *have -= c,
                Some(have) if *have == c => {
                    counts.remove(g);
                }
                _ => return None,
            }
        }
        Some(GSequence { counts })
    }

    pub fn is_sub_multiset_of(&self, other: &GSequence) -> bool {
        self.counts.iter().all(|(g, &c)| other.multiplicity(g) >= c)
    }
}

impl fmt::Display for GSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return write!(f, "[]");
        }
        let terms: Vec<String> = self
            .counts
            .iter()
            .map(|(g, &c)| {
                if c == 1 {
                    g.to_string()
                } else {
                    format!("{g}^{c}")
                }
            })
            .collect();
        write!(f, "{}", terms.join(" "))
    }
}

/// All sub-multisets of a count map, capped by their total number.
fn sub_multisets_map<K: Ord + Clone>(
    counts: &BTreeMap<K, u32>,
    cap: u64,
) -> Result<Vec<BTreeMap<K, u32>>> {
    let mut total: u128 = 1;
    for &c in counts.values() {
        total = total.saturating_mul(u128::from(c) + 1);
        if total > u128::from(cap) {
            return Err(Error::CapExceeded {
                what: "sub-multiset enumeration",
                size: total,
                cap: u128::from(cap),
            });
        }
    }
    let keys: Vec<&K> = counts.keys().collect();
    let mut out = vec![BTreeMap::new()];
    for k in keys {
        let max = counts[k];
        let mut next = Vec::with_capacity(out.len() * (max as usize + 1));
        for m in &out {
            for c in 0..=max {
                let mut m2 = m.clone();
                if c > 0 {
                    m2.insert(k.clone(), c);
                }
                next.push(m2);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Zero-sum computations tied to one group.
pub struct ZeroSumContext {
    group: FiniteAbelianGroup,
}

impl ZeroSumContext {
    pub fn new(group: FiniteAbelianGroup) -> ZeroSumContext {
        ZeroSumContext { group }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Sorted, deduplicated, canonical support set.
    pub fn validate_support(&self, support: &[GroupElement]) -> Result<Vec<GroupElement>> {
        if support.is_empty() {
            return Err(Error::InvalidSpec("support set is empty".into()));
        }
        let mut out = Vec::with_capacity(support.len());
        for g in support {
            self.group.check(g)?;
            out.push(g.clone());
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn check_sequence(&self, s: &GSequence) -> Result<()> {
        for g in s.counts.keys() {
            self.group.check(g)?;
        }
        Ok(())
    }

    pub fn sigma(&self, s: &GSequence) -> Result<GroupElement> {
        let mut acc = self.group.zero();
        for (g, &c) in &s.counts {
            let term = self.group.scalar_mul(i64::from(c), g)?;
            acc = self.group.add(&acc, &term)?;
        }
        Ok(acc)
    }

    pub fn is_zero_sum(&self, s: &GSequence) -> Result<bool> {
        Ok(self.sigma(s)? == self.group.zero())
    }

    /// The elementwise negation `-S`.
    pub fn negate_sequence(&self, s: &GSequence) -> Result<GSequence> {
        let mut pairs = Vec::new();
        for (g, &c) in s.counts() {
            pairs.push((self.group.neg(g)?, c));
        }
        Ok(GSequence::from_pairs(pairs))
    }

    /// Sums of all nonempty subsequences, by one pass per element copy.
    pub fn achievable_sums(&self, s: &GSequence) -> Result<BTreeSet<GroupElement>> {
        let mut sums: BTreeSet<GroupElement> = BTreeSet::new();
        for (g, &c) in &s.counts {
            self.group.check(g)?;
            for _ in 0..c {
                let mut next = sums.clone();
                next.insert(g.clone());
                for t in &sums {
                    next.insert(self.group.add(t, g)?);
                }
                sums = next;
            }
        }
        Ok(sums)
    }

    /// Zero-sum free: no nonempty subsequence sums to zero. The empty
    /// sequence is zero-sum free.
    pub fn is_zero_sum_free(&self, s: &GSequence) -> Result<bool> {
        Ok(!self.achievable_sums(s)?.contains(&self.group.zero()))
    }

    /// A zero-sum sequence is minimal iff removing any single element leaves
    /// a zero-sum-free rest; one removal suffices, because of any proper
    /// nonempty zero-sum subsequence either it or its (also zero-sum)
    /// complement avoids the removed copy.
    pub fn is_minimal_zero_sum(&self, s: &GSequence) -> Result<bool> {
        if s.is_empty() || !self.is_zero_sum(s)? {
            return Ok(false);
        }
        let first = s.counts.keys().next().unwrap().clone();
        let rest = s
            .checked_div(&GSequence::from_elements(std::slice::from_ref(&first)))
            .unwrap();
        self.is_zero_sum_free(&rest)
    }

    /// Depth-first enumeration of minimal zero-sum sequences drawn from
    /// `alphabet` (with optional per-element multiplicity caps), in
    /// non-decreasing element order. Prefixes stay zero-sum free, which
    /// bounds the depth by `|G| - 1`; a prefix closing to sum zero is
    /// recorded and never extended.
    fn minimal_zero_sum_dfs(
        &self,
        alphabet: &[(GroupElement, Option<u32>)],
        max_len: u64,
        budget: &Budget,
    ) -> Result<Vec<GSequence>> {
        struct State<'a> {
            ctx: &'a ZeroSumContext,
            alphabet: &'a [(GroupElement, Option<u32>)],
            max_len: u64,
            node_cap: u64,
            nodes: u64,
            prefix: Vec<usize>,
            out: Vec<GSequence>,
        }
        fn used(prefix: &[usize], i: usize) -> u32 {
            prefix.iter().filter(|&&j| j == i).count() as u32
        }
        fn go(
            st: &mut State,
            start: usize,
            sigma: GroupElement,
            sums: &BTreeSet<GroupElement>,
        ) -> Result<()> {
            if st.prefix.len() as u64 >= st.max_len {
                return Ok(());
            }
            for i in start..st.alphabet.len() {
                let (g, cap) = &st.alphabet[i];
                if let Some(cap) = cap {
                    if used(&st.prefix, i) >= *cap {
                        continue;
                    }
                }
                st.nodes += 1;
                if st.nodes > st.node_cap {
                    return Err(Error::BudgetExceeded {
                        stage: "minimal zero-sum search",
                        progress: st.nodes,
                        cap: st.node_cap,
                    });
                }
                let sigma2 = st.ctx.group.add(&sigma, g)?;
                if sigma2 == st.ctx.group.zero() {
                    let mut atom: Vec<GroupElement> = st
                        .prefix
                        .iter()
                        .map(|&j| st.alphabet[j].0.clone())
                        .collect();
                    atom.push(g.clone());
                    st.out.push(GSequence::from_elements(&atom));
                    continue;
                }
                let mut sums2 = sums.clone();
                sums2.insert(g.clone());
                for t in sums {
                    sums2.insert(st.ctx.group.add(t, g)?);
                }
                if sums2.contains(&st.ctx.group.zero()) {
                    continue;
                }
                st.prefix.push(i);
                go(st, i, sigma2, &sums2)?;
                st.prefix.pop();
            }
            Ok(())
        }
        let mut st = State {
            ctx: self,
            alphabet,
            max_len,
            node_cap: budget.node_cap,
            nodes: 0,
            prefix: Vec::new(),
            out: Vec::new(),
        };
        go(&mut st, 0, self.group.zero(), &BTreeSet::new())?;
        st.out.sort();
        st.out.dedup();
        Ok(st.out)
    }

    /// All minimal zero-sum sequences over the support set. Complete: their
    /// length never exceeds the group order.
    pub fn minimal_zero_sum_sequences(
        &self,
        support: &[GroupElement],
        budget: &Budget,
    ) -> Result<Vec<GSequence>> {
        let support = self.validate_support(support)?;
        let order = u64::try_from(self.group.cardinality()).map_err(|_| Error::Overflow)?;
        let alphabet: Vec<(GroupElement, Option<u32>)> =
            support.into_iter().map(|g| (g, None)).collect();
        self.minimal_zero_sum_dfs(&alphabet, order, budget)
    }

    /// Minimal zero-sum sub-multisets of one sequence.
    pub fn minimal_zero_sum_divisors(
        &self,
        s: &GSequence,
        budget: &Budget,
    ) -> Result<Vec<GSequence>> {
        self.check_sequence(s)?;
        let alphabet: Vec<(GroupElement, Option<u32>)> = s
            .counts
            .iter()
            .map(|(g, &c)| (g.clone(), Some(c)))
            .collect();
        self.minimal_zero_sum_dfs(&alphabet, s.len(), budget)
    }

    /// All zero-sum-free sequences over the support with length at most
    /// `max_len` (the empty sequence included).
    pub fn zero_sum_free_sequences(
        &self,
        support: &[GroupElement],
        max_len: u64,
        budget: &Budget,
    ) -> Result<Vec<GSequence>> {
        let support = self.validate_support(support)?;
        let mut out = vec![GSequence::empty()];
        let mut frontier: Vec<(usize, GSequence, BTreeSet<GroupElement>)> = vec![];
        frontier.push((0, GSequence::empty(), BTreeSet::new()));
        let mut nodes = 0u64;
        while let Some((start, seq, sums)) = frontier.pop() {
            if seq.len() >= max_len {
                continue;
            }
            for (i, g) in support.iter().enumerate().skip(start) {
                nodes += 1;
                if nodes > budget.node_cap {
                    return Err(Error::BudgetExceeded {
                        stage: "zero-sum-free search",
                        progress: nodes,
                        cap: budget.node_cap,
                    });
                }
                let mut sums2 = sums.clone();
                sums2.insert(g.clone());
                for t in &sums {
                    sums2.insert(self.group.add(t, g)?);
                }
                if sums2.contains(&self.group.zero()) {
                    continue;
                }
                let mut seq2 = seq.clone();
                seq2.push(g.clone());
                out.push(seq2.clone());
                frontier.push((i, seq2, sums2));
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Longest zero-sum-free sequence over the support.
    pub fn max_zero_sum_free_length(
        &self,
        support: &[GroupElement],
        budget: &Budget,
    ) -> Result<u64> {
        let order = u64::try_from(self.group.cardinality()).map_err(|_| Error::Overflow)?;
        Ok(self
            .zero_sum_free_sequences(support, order, budget)?
            .iter()
            .map(|s| s.len())
            .max()
            .unwrap_or(0))
    }

    /// Davenport constant `D(G_0)`: the maximal length of a minimal zero-sum
    /// sequence over the support. Zero when no zero-sum sequence exists.
    pub fn davenport(&self, support: &[GroupElement], budget: &Budget) -> Result<u64> {
        Ok(self
            .minimal_zero_sum_sequences(support, budget)?
            .iter()
            .map(|s| s.len())
            .max()
            .unwrap_or(0))
    }

    /// Membership in `F_iota`: the empty sequence, or any sequence that is
    /// not zero-sum free. This is a conductor submonoid of the free abelian
    /// monoid over the group elements.
    pub fn in_f_iota(&self, s: &GSequence) -> Result<bool> {
        if s.is_empty() {
            return Ok(true);
        }
        Ok(!self.is_zero_sum_free(s)?)
    }

    /// Exact atom test in `F_iota`: a non-unit member with no split into two
    /// non-zero-sum-free parts, by exhaustive sub-multiset scan.
    pub fn is_f_iota_atom(&self, s: &GSequence, budget: &Budget) -> Result<bool> {
        if s.is_empty() || !self.in_f_iota(s)? {
            return Ok(false);
        }
        for part in sub_multisets_map(&s.counts, budget.enumeration_cap)? {
            let part = GSequence { counts: part };
            if part.is_empty() || part == *s {
                continue;
            }
            let rest = s.checked_div(&part).unwrap();
            if !self.is_zero_sum_free(&part)? && !self.is_zero_sum_free(&rest)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Atoms of `F_iota` dividing `s` (in the ambient free monoid), sorted.
    pub fn f_iota_atoms_dividing(&self, s: &GSequence, budget: &Budget) -> Result<Vec<GSequence>> {
        self.check_sequence(s)?;
        let mut out = Vec::new();
        for part in sub_multisets_map(&s.counts, budget.enumeration_cap)? {
            let part = GSequence { counts: part };
            if self.is_f_iota_atom(&part, budget)? {
                out.push(part);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// All atoms of `F_iota` over the support with length at most `max_len`.
    ///
    /// Complete: every non-zero-sum-free sequence contains a minimal
    /// zero-sum subsequence `U`, and if it is an atom the rest `R` must be
    /// zero-sum free (otherwise `U * R` is a split into two non-units). So
    /// candidates `U * R` with `U` minimal zero-sum and `R` zero-sum free
    /// cover every atom, and atom lengths are bounded by
    /// `D(G_0) + max zero-sum-free length`.
    pub fn f_iota_atoms_up_to(
        &self,
        support: &[GroupElement],
        max_len: u64,
        budget: &Budget,
    ) -> Result<Vec<GSequence>> {
        let support = self.validate_support(support)?;
        let minimal = self.minimal_zero_sum_sequences(&support, budget)?;
        let davenport = minimal.iter().map(|s| s.len()).max().unwrap_or(0);
        let max_free = self.max_zero_sum_free_length(&support, budget)?;
        let free = self.zero_sum_free_sequences(&support, max_len, budget)?;
        let mut candidates: BTreeSet<GSequence> = BTreeSet::new();
        for u in &minimal {
            if u.len() > max_len {
                continue;
            }
            for r in &free {
                if u.len() + r.len() <= max_len {
                    candidates.insert(u.mul(r)?);
                }
            }
        }
        let mut out = Vec::new();
        for c in candidates {
            if self.is_f_iota_atom(&c, budget)? {
                if c.len() > davenport + max_free {
                    return Err(Error::BoundAttained(format!(
                        "atom {c} exceeds the provable length bound {}",
                        davenport + max_free
                    )));
                }
                out.push(c);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Divisibility inside `F_iota`: `u` divides `a` iff `a = u * rest` with
    /// `rest` a member.
    pub fn divides_in_f_iota(&self, u: &GSequence, a: &GSequence) -> Result<bool> {
        match a.checked_div(u) {
            Some(rest) => self.in_f_iota(&rest),
            None => Ok(false),
        }
    }

    /// Searches the pool for members `a, b` with `u | a*b` but `u` dividing
    /// neither, witnessing that the atom `u` is not prime.
    pub fn non_primality_witness(
        &self,
        u: &GSequence,
        pool: &[GSequence],
        budget: &Budget,
    ) -> Result<Option<(GSequence, GSequence)>> {
        let mut pairs = 0u64;
        for (i, a) in pool.iter().enumerate() {
            if self.divides_in_f_iota(u, a)? {
                continue;
            }
            for b in pool.iter().skip(i) {
                pairs += 1;
                if pairs > budget.pair_cap {
                    return Err(Error::BudgetExceeded {
                        stage: "non-primality witness search",
                        progress: pairs,
                        cap: budget.pair_cap,
                    });
                }
                if self.divides_in_f_iota(u, b)? {
                    continue;
                }
                let ab = a.mul(b)?;
                if self.divides_in_f_iota(u, &ab)? {
                    return Ok(Some((a.clone(), b.clone())));
                }
            }
        }
        Ok(None)
    }

    /// All sequences over the support with length at most `max_len`.
    pub fn sequences_up_to(
        &self,
        support: &[GroupElement],
        max_len: u64,
        budget: &Budget,
    ) -> Result<Vec<GSequence>> {
        let support = self.validate_support(support)?;
        let mut out: Vec<GSequence> = vec![GSequence::empty()];
        let mut layer = vec![(0usize, GSequence::empty())];
        let mut nodes = 0u64;
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (start, seq) in &layer {
                for (i, g) in support.iter().enumerate().skip(*start) {
                    nodes += 1;
                    if nodes > budget.enumeration_cap {
                        return Err(Error::BudgetExceeded {
                            stage: "sequence enumeration",
                            progress: nodes,
                            cap: budget.enumeration_cap,
                        });
                    }
                    let mut seq2 = seq.clone();
                    seq2.push(g.clone());
                    out.push(seq2.clone());
                    next.push((i, seq2));
                }
            }
            layer = next;
        }
        Ok(out)
    }
}

/// Factorization oracle for the block monoid `B(G_0)` of zero-sum sequences.
pub struct BlockOracle<'a> {
    pub ctx: &'a ZeroSumContext,
    pub support: Vec<GroupElement>,
    pub budget: Budget,
}

impl<'a> BlockOracle<'a> {
    pub fn new(
        ctx: &'a ZeroSumContext,
        support: &[GroupElement],
        budget: &Budget,
    ) -> Result<BlockOracle<'a>> {
        Ok(BlockOracle {
            ctx,
            support: ctx.validate_support(support)?,
            budget: budget.clone(),
        })
    }
}

impl AtomicOracle for BlockOracle<'_> {
    type Elem = GSequence;

    fn identity(&self) -> GSequence {
        GSequence::empty()
    }

    fn contains(&self, x: &GSequence) -> Result<bool> {
        for g in x.counts().keys() {
            if !self.support.contains(g) {
                return Ok(false);
            }
        }
        self.ctx.is_zero_sum(x)
    }

    fn combine(&self, a: &GSequence, b: &GSequence) -> Result<GSequence> {
        a.mul(b)
    }

    fn checked_divide(&self, a: &GSequence, b: &GSequence) -> Result<Option<GSequence>> {
        Ok(a.checked_div(b))
    }

    fn atoms_dividing(&self, a: &GSequence) -> Result<Vec<GSequence>> {
        self.ctx.minimal_zero_sum_divisors(a, &self.budget)
    }

    fn format(&self, x: &GSequence) -> String {
        x.to_string()
    }
}

/// Factorization oracle for `F_iota`.
pub struct FIotaOracle<'a> {
    pub ctx: &'a ZeroSumContext,
    pub budget: Budget,
}

impl<'a> FIotaOracle<'a> {
    pub fn new(ctx: &'a ZeroSumContext, budget: &Budget) -> FIotaOracle<'a> {
        FIotaOracle {
            ctx,
            budget: budget.clone(),
        }
    }
}

impl AtomicOracle for FIotaOracle<'_> {
    type Elem = GSequence;

    fn identity(&self) -> GSequence {
        GSequence::empty()
    }

    fn contains(&self, x: &GSequence) -> Result<bool> {
        self.ctx.check_sequence(x)?;
        self.ctx.in_f_iota(x)
    }

    fn combine(&self, a: &GSequence, b: &GSequence) -> Result<GSequence> {
        a.mul(b)
    }

    fn checked_divide(&self, a: &GSequence, b: &GSequence) -> Result<Option<GSequence>> {
        Ok(a.checked_div(b))
    }

    fn atoms_dividing(&self, a: &GSequence) -> Result<Vec<GSequence>> {
        self.ctx.f_iota_atoms_dividing(a, &self.budget)
    }

    fn format(&self, x: &GSequence) -> String {
        x.to_string()
    }
}

/// Multiset of named primes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PrimeSequence {
    counts: BTreeMap<String, u32>,
}

impl PrimeSequence {
    pub fn empty() -> PrimeSequence {
        PrimeSequence::default()
    }

    pub fn from_pairs(pairs: Vec<(String, u32)>) -> PrimeSequence {
        let mut counts = BTreeMap::new();
        for (p, c) in pairs {
            if c > 0 {
                *counts.entry(p).or_insert(0) += c;
            }
        }
        PrimeSequence { counts }
    }

    pub fn counts(&self) -> &BTreeMap<String, u32> {
        &self.counts
    }

    pub fn len(&self) -> u64 {
        self.counts.values().map(|&c| u64::from(c)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn mul(&self, other: &PrimeSequence) -> Result<PrimeSequence> {
        let mut counts = self.counts.clone();
        for (p, &c) in &other.counts {
            let slot = counts.entry(p.clone()).or_insert(0);
            *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
        }
        Ok(PrimeSequence { counts })
    }

    pub fn checked_div(&self, other: &PrimeSequence) -> Option<PrimeSequence> {
        let mut counts = self.counts.clone();
        for (p, &c) in &other.counts {
            match counts.get_mut(p) {
                Some(have) if *have > c => *have -= c,
                Some(have) if *have == c => {
                    counts.remove(p);
                }
                _ => return None,
            }
        }
        Some(PrimeSequence { counts })
    }
}

impl fmt::Display for PrimeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return write!(f, "[]");
        }
        let terms: Vec<String> = self
            .counts
            .iter()
            .map(|(p, &c)| {
                if c == 1 {
                    p.clone()
                } else {
                    format!("{p}^{c}")
                }
            })
            .collect();
        write!(f, "{}", terms.join(" "))
    }
}

/// Named primes labeled by group elements, modeling a factorial monoid
/// together with the class map onto the group.
pub struct LabeledPrimes {
    group: FiniteAbelianGroup,
    labels: BTreeMap<String, GroupElement>,
}

impl LabeledPrimes {
    pub fn new(
        group: FiniteAbelianGroup,
        labels: BTreeMap<String, GroupElement>,
    ) -> Result<LabeledPrimes> {
        if labels.is_empty() {
            return Err(Error::InvalidSpec("no primes declared".into()));
        }
        for (name, g) in &labels {
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::InvalidSpec(format!(
                    "prime name {name:?} must be nonempty and alphanumeric"
                )));
            }
            group.check(g)?;
        }
        Ok(LabeledPrimes { group, labels })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn labels(&self) -> &BTreeMap<String, GroupElement> {
        &self.labels
    }

    pub fn label(&self, name: &str) -> Result<&GroupElement> {
        self.labels
            .get(name)
            .ok_or_else(|| Error::UnknownPrime(name.to_string()))
    }

    /// Sorted distinct image of the labeling.
    pub fn support_image(&self) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = self.labels.values().cloned().collect();
        out.sort();
        out.dedup();
        out
    }

    /// The image sequence under the class map.
    pub fn image(&self, p: &PrimeSequence) -> Result<GSequence> {
        let mut pairs = Vec::new();
        for (name, &c) in p.counts() {
            pairs.push((self.label(name)?.clone(), c));
        }
        Ok(GSequence::from_pairs(pairs))
    }

    /// Membership in `F_phi`: empty, or the image is not zero-sum free.
    pub fn in_f_phi(&self, ctx: &ZeroSumContext, p: &PrimeSequence) -> Result<bool> {
        if p.is_empty() {
            return Ok(true);
        }
        Ok(!ctx.is_zero_sum_free(&self.image(p)?)?)
    }

    /// Exact atom test in `F_phi` by sub-multiset scan.
    pub fn is_f_phi_atom(
        &self,
        ctx: &ZeroSumContext,
        p: &PrimeSequence,
        budget: &Budget,
    ) -> Result<bool> {
        if p.is_empty() || !self.in_f_phi(ctx, p)? {
            return Ok(false);
        }
        for part in sub_multisets_map(p.counts(), budget.enumeration_cap)? {
            let part = PrimeSequence { counts: part };
            if part.is_empty() || part == *p {
                continue;
            }
            let rest = p.checked_div(&part).unwrap();
            if !part.is_empty()
                && !rest.is_empty()
                && self.in_f_phi(ctx, &part)?
                && self.in_f_phi(ctx, &rest)?
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn f_phi_atoms_dividing(
        &self,
        ctx: &ZeroSumContext,
        p: &PrimeSequence,
        budget: &Budget,
    ) -> Result<Vec<PrimeSequence>> {
        let mut out = Vec::new();
        for part in sub_multisets_map(p.counts(), budget.enumeration_cap)? {
            let part = PrimeSequence { counts: part };
            if self.is_f_phi_atom(ctx, &part, budget)? {
                out.push(part);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// Factorization oracle for `F_phi`.
pub struct FPhiOracle<'a> {
    pub labeled: &'a LabeledPrimes,
    pub ctx: &'a ZeroSumContext,
    pub budget: Budget,
}

impl<'a> FPhiOracle<'a> {
    pub fn new(
        labeled: &'a LabeledPrimes,
        ctx: &'a ZeroSumContext,
        budget: &Budget,
    ) -> FPhiOracle<'a> {
        FPhiOracle {
            labeled,
            ctx,
            budget: budget.clone(),
        }
    }
}

impl AtomicOracle for FPhiOracle<'_> {
    type Elem = PrimeSequence;

    fn identity(&self) -> PrimeSequence {
        PrimeSequence::empty()
    }

    fn contains(&self, x: &PrimeSequence) -> Result<bool> {
        self.labeled.in_f_phi(self.ctx, x)
    }

    fn combine(&self, a: &PrimeSequence, b: &PrimeSequence) -> Result<PrimeSequence> {
        a.mul(b)
    }

    fn checked_divide(
        &self,
        a: &PrimeSequence,
        b: &PrimeSequence,
    ) -> Result<Option<PrimeSequence>> {
        Ok(a.checked_div(b))
    }

    fn atoms_dividing(&self, a: &PrimeSequence) -> Result<Vec<PrimeSequence>> {
        self.labeled.f_phi_atoms_dividing(self.ctx, a, &self.budget)
    }

    fn format(&self, x: &PrimeSequence) -> String {
        x.to_string()
    }
}

/// Result of the class-cover check: every declared support class needs at
/// least one prime, otherwise the image map cannot reach all of `F_iota`.
#[derive(Debug, Clone)]
pub struct ClassCover {
    pub covered: bool,
    pub uncovered: Vec<GroupElement>,
    /// A member of `F_iota` over the declared support with no preimage.
    pub witness: Option<GSequence>,
}

pub fn class_cover_check(
    labeled: &LabeledPrimes,
    ctx: &ZeroSumContext,
    declared_support: &[GroupElement],
) -> Result<ClassCover> {
    let declared = ctx.validate_support(declared_support)?;
    let image = labeled.support_image();
    let uncovered: Vec<GroupElement> = declared
        .iter()
        .filter(|g| !image.contains(g))
        .cloned()
        .collect();
    if uncovered.is_empty() {
        return Ok(ClassCover {
            covered: true,
            uncovered,
            witness: None,
        });
    }
    // g^ord(g) is zero-sum, hence in F_iota, and uses the uncovered class
    let g = uncovered[0].clone();
    let ord = labeled.group().order_of(&g)?;
    let witness =
        GSequence::from_pairs(vec![(g, u32::try_from(ord).map_err(|_| Error::Overflow)?)]);
    let witness_in_monoid = ctx.in_f_iota(&witness)?;
    debug_assert!(witness_in_monoid);
    Ok(ClassCover {
        covered: false,
        uncovered,
        witness: Some(witness),
    })
}

/// One factorization projected to image level: a multiset of image atoms.
type ImageFactorization = BTreeMap<GSequence, u32>;

fn project_factorizations(
    labeled: &LabeledPrimes,
    set: &FactorizationSet<PrimeSequence>,
) -> Result<BTreeSet<ImageFactorization>> {
    let mut out = BTreeSet::new();
    for z in &set.factorizations {
        let mut image: ImageFactorization = BTreeMap::new();
        for &(atom_idx, mult) in &z.counts {
            let img = labeled.image(&set.atoms[atom_idx])?;
            *image.entry(img).or_insert(0) += mult;
        }
        out.insert(image);
    }
    Ok(out)
}

fn image_level_factorizations(set: &FactorizationSet<GSequence>) -> BTreeSet<ImageFactorization> {
    let mut out = BTreeSet::new();
    for z in &set.factorizations {
        let mut image: ImageFactorization = BTreeMap::new();
        for &(atom_idx, mult) in &z.counts {
            *image.entry(set.atoms[atom_idx].clone()).or_insert(0) += mult;
        }
        out.insert(image);
    }
    out
}

/// Result of the factorization-lifting check on one element.
#[derive(Debug, Clone)]
pub struct LiftReport {
    pub element_factorizations: u64,
    pub image_factorizations: u64,
    pub ok: bool,
    pub lengths_match: bool,
}

/// Verifies that the factorizations of `a` in `F_phi` project exactly onto
/// the factorizations of its image in `F_iota` — the mechanical content of
/// the transfer property, which in particular equates the length sets.
pub fn lifting_check(
    labeled: &LabeledPrimes,
    ctx: &ZeroSumContext,
    a: &PrimeSequence,
    budget: &Budget,
) -> Result<LiftReport> {
    let phi_oracle = FPhiOracle::new(labeled, ctx, budget);
    let iota_oracle = FIotaOracle::new(ctx, budget);
    let phi_set = enumerate_factorizations(&phi_oracle, a, budget)?;
    let image = labeled.image(a)?;
    let iota_set = enumerate_factorizations(&iota_oracle, &image, budget)?;
    let projected = project_factorizations(labeled, &phi_set)?;
    let target = image_level_factorizations(&iota_set);
    let ok = projected == target;
    let lengths_match = phi_set.length_set() == iota_set.length_set();
    Ok(LiftReport {
        element_factorizations: phi_set.factorizations.len() as u64,
        image_factorizations: iota_set.factorizations.len() as u64,
        ok,
        lengths_match,
    })
}

/// Catenary degree in the fibers of the image map at `a`: factorizations of
/// `a` are grouped by their projected factorization, and within each fiber
/// the bottleneck connection threshold is taken; the maximum over fibers is
/// returned. For these monoids it never exceeds 2.
pub fn fiber_catenary(
    labeled: &LabeledPrimes,
    ctx: &ZeroSumContext,
    a: &PrimeSequence,
    budget: &Budget,
) -> Result<u64> {
    let phi_oracle = FPhiOracle::new(labeled, ctx, budget);
    let set = enumerate_factorizations(&phi_oracle, a, budget)?;
    let dist = pairwise_distances(&set, budget)?;
    let mut fibers: BTreeMap<ImageFactorization, Vec<usize>> = BTreeMap::new();
    for (i, z) in set.factorizations.iter().enumerate() {
        let mut image: ImageFactorization = BTreeMap::new();
        for &(atom_idx, mult) in &z.counts {
            let img = labeled.image(&set.atoms[atom_idx])?;
            *image.entry(img).or_insert(0) += mult;
        }
        fibers.entry(image).or_default().push(i);
    }
    let mut worst = 0u64;
    for members in fibers.values() {
        worst = worst.max(crate::factor::bottleneck_prim(&dist, members));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: u64) -> (ZeroSumContext, Vec<GroupElement>) {
        let g = FiniteAbelianGroup::cyclic(n).unwrap();
        let elems = g.enumerate_elements(1000).unwrap();
        (ZeroSumContext::new(g), elems)
    }

    fn seq(ctx: &ZeroSumContext, residues: &[i64]) -> GSequence {
        let elems: Vec<GroupElement> = residues
            .iter()
            .map(|&r| ctx.group().element(&[r]).unwrap())
            .collect();
        GSequence::from_elements(&elems)
    }

    #[test]
    fn zero_sum_free_matches_brute_force_subsets() {
        let (ctx, _) = cyclic(6);
        // oracle: expand the multiset and scan all subsets
        let brute = |s: &GSequence| -> bool {
            let mut flat: Vec<&GroupElement> = Vec::new();
            for (g, &c) in s.counts() {
                for _ in 0..c {
                    flat.push(g);
                }
            }
            for mask in 1u32..(1 << flat.len()) {
                let mut acc = ctx.group().zero();
                for (i, g) in flat.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        acc = ctx.group().add(&acc, g).unwrap();
                    }
                }
                if acc == ctx.group().zero() {
                    return false;
                }
            }
            true
        };
        for residues in [
            vec![],
            vec![1],
            vec![1, 1],
            vec![1, 5],
            vec![2, 2, 2],
            vec![1, 2, 3],
            vec![5, 5, 5, 5],
            vec![1, 1, 1, 1, 1],
            vec![1, 1, 1, 1, 1, 1],
            vec![4, 4, 2],
            vec![3, 3],
            vec![2, 3, 4, 5],
        ] {
            let s = seq(&ctx, &residues);
            assert_eq!(
                ctx.is_zero_sum_free(&s).unwrap(),
                brute(&s),
                "mismatch on {s}"
            );
        }
    }

    #[test]
    fn minimal_zero_sum_sequences_over_c3() {
        let (ctx, elems) = cyclic(3);
        let support = vec![elems[1].clone(), elems[2].clone()];
        let atoms = ctx
            .minimal_zero_sum_sequences(&support, &Budget::default())
            .unwrap();
        let want = vec![
            seq(&ctx, &[1, 2]),
            seq(&ctx, &[1, 1, 1]),
            seq(&ctx, &[2, 2, 2]),
        ];
        let mut want = want;
        want.sort();
        assert_eq!(atoms, want);
    }

    #[test]
    fn minimality_shortcut_matches_submultiset_scan() {
        let (ctx, _) = cyclic(6);
        let brute_minimal = |s: &GSequence| -> bool {
            if s.is_empty() || !ctx.is_zero_sum(s).unwrap() {
                return false;
            }
            for part in sub_multisets_map(s.counts(), 1_000_000).unwrap() {
                let part = GSequence { counts: part };
                if part.is_empty() || part == *s {
                    continue;
                }
                if ctx.is_zero_sum(&part).unwrap() {
                    return false;
                }
            }
            true
        };
        for residues in [
            vec![1, 5],
            vec![2, 4],
            vec![3, 3],
            vec![2, 2, 2],
            vec![1, 1, 4],
            vec![1, 2, 3],
            vec![1, 1, 2, 2],
            vec![5, 5, 2],
            vec![1, 1, 1, 1, 1, 1],
            vec![2, 3],
            vec![0],
            vec![0, 3, 3],
        ] {
            let s = seq(&ctx, &residues);
            assert_eq!(
                ctx.is_minimal_zero_sum(&s).unwrap(),
                brute_minimal(&s),
                "mismatch on {s}"
            );
        }
    }

    #[test]
    fn davenport_of_cyclic_groups() {
        for n in 1..=8u64 {
            let g = FiniteAbelianGroup::cyclic(n).unwrap();
            let elems = g.enumerate_elements(1000).unwrap();
            let ctx = ZeroSumContext::new(g);
            let d = ctx.davenport(&elems, &Budget::default()).unwrap();
            assert_eq!(d, n, "Davenport constant of a cyclic group of order {n}");
            // independent route: longest zero-sum-free sequence plus one
            let max_free = ctx
                .max_zero_sum_free_length(&elems, &Budget::default())
                .unwrap();
            assert_eq!(d, max_free + 1);
        }
    }

    #[test]
    fn davenport_of_klein_four_group() {
        let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let elems = g.enumerate_elements(1000).unwrap();
        let ctx = ZeroSumContext::new(g);
        assert_eq!(ctx.davenport(&elems, &Budget::default()).unwrap(), 3);
        let max_free = ctx
            .max_zero_sum_free_length(&elems, &Budget::default())
            .unwrap();
        assert_eq!(max_free, 2);
    }

    #[test]
    fn max_zero_sum_free_over_single_generator() {
        let (ctx, elems) = cyclic(5);
        let support = vec![elems[1].clone()];
        assert_eq!(
            ctx.max_zero_sum_free_length(&support, &Budget::default())
                .unwrap(),
            4
        );
    }

    #[test]
    fn f_iota_membership_basics() {
        let (ctx, _) = cyclic(2);
        assert!(ctx.in_f_iota(&GSequence::empty()).unwrap());
        assert!(ctx.in_f_iota(&seq(&ctx, &[1, 1])).unwrap());
        assert!(!ctx.in_f_iota(&seq(&ctx, &[1])).unwrap());
        assert!(ctx.in_f_iota(&seq(&ctx, &[0])).unwrap());
    }

    #[test]
    fn f_iota_atoms_over_c2_without_zero() {
        let (ctx, elems) = cyclic(2);
        let support = vec![elems[1].clone()];
        let atoms = ctx
            .f_iota_atoms_up_to(&support, 10, &Budget::default())
            .unwrap();
        // 1^2 (minimal zero-sum) and 1^3 (zero-sum plus a free tail)
        assert_eq!(atoms, vec![seq(&ctx, &[1, 1]), seq(&ctx, &[1, 1, 1])]);
    }

    #[test]
    fn f_iota_atoms_over_c2_with_zero() {
        let (ctx, elems) = cyclic(2);
        let atoms = ctx
            .f_iota_atoms_up_to(&elems, 3, &Budget::default())
            .unwrap();
        let want = {
            let mut w = vec![
                seq(&ctx, &[0]),
                seq(&ctx, &[0, 1]),
                seq(&ctx, &[1, 1]),
                seq(&ctx, &[1, 1, 1]),
            ];
            w.sort();
            w
        };
        assert_eq!(atoms, want);
        // atoms never contain the zero element twice
        for a in &atoms {
            assert!(a.multiplicity(&ctx.group().zero()) <= 1);
        }
    }

    #[test]
    fn block_atoms_are_f_iota_atoms() {
        let (ctx, elems) = cyclic(5);
        let atoms = ctx
            .minimal_zero_sum_sequences(&elems, &Budget::default())
            .unwrap();
        for a in atoms {
            assert!(
                ctx.is_f_iota_atom(&a, &Budget::default()).unwrap(),
                "minimal zero-sum {a} must stay an atom in the extension"
            );
        }
    }

    #[test]
    fn f_iota_atom_lengths_meet_the_bound_with_completeness() {
        // over a cyclic group of order 3 with one generator, the atoms are
        // exactly g^3, g^4, g^5: bound D + max_free = 3 + 2 = 5 is attained
        let (ctx, elems) = cyclic(3);
        let support = vec![elems[1].clone()];
        let atoms = ctx
            .f_iota_atoms_up_to(&support, 20, &Budget::default())
            .unwrap();
        assert_eq!(
            atoms,
            vec![
                seq(&ctx, &[1, 1, 1]),
                seq(&ctx, &[1, 1, 1, 1]),
                seq(&ctx, &[1, 1, 1, 1, 1]),
            ]
        );
    }

    #[test]
    fn f_iota_atom_length_bound_can_be_attained_on_two_classes() {
        // over a cyclic group of order 6 with support {2, 3}: the sequence
        // 2^5 3 of length 6 = D + max_free is an atom
        let (ctx, _) = cyclic(6);
        let support = vec![
            ctx.group().element(&[2]).unwrap(),
            ctx.group().element(&[3]).unwrap(),
        ];
        let s = seq(&ctx, &[2, 2, 2, 2, 2, 3]);
        assert!(ctx.is_f_iota_atom(&s, &Budget::default()).unwrap());
        let atoms = ctx
            .f_iota_atoms_up_to(&support, 10, &Budget::default())
            .unwrap();
        assert!(atoms.contains(&s));
        assert_eq!(atoms.iter().map(|a| a.len()).max(), Some(6));
    }

    #[test]
    fn block_oracle_factorizations_over_c2() {
        let (ctx, elems) = cyclic(2);
        let budget = Budget::default();
        let oracle = BlockOracle::new(&ctx, &elems, &budget).unwrap();
        let a = seq(&ctx, &[1, 1, 1, 1, 0]);
        let set = enumerate_factorizations(&oracle, &a, &budget).unwrap();
        // 0 * 1^2 * 1^2 is the only factorization
        assert_eq!(set.factorizations.len(), 1);
        assert_eq!(set.length_set(), vec![3]);
    }

    #[test]
    fn f_iota_length_sets_can_split() {
        let (ctx, _) = cyclic(2);
        let budget = Budget::default();
        let oracle = FIotaOracle::new(&ctx, &budget);
        let a = seq(&ctx, &[1, 1, 1, 1, 1, 1]);
        let set = enumerate_factorizations(&oracle, &a, &budget).unwrap();
        // 1^2 * 1^2 * 1^2 and 1^3 * 1^3
        assert_eq!(set.length_set(), vec![2, 3]);
    }

    #[test]
    fn non_primality_witness_found_for_every_small_atom() {
        let (ctx, elems) = cyclic(2);
        let budget = Budget::default();
        let support = vec![elems[1].clone()];
        let atoms = ctx.f_iota_atoms_up_to(&support, 5, &budget).unwrap();
        let mut pool = atoms.clone();
        for a in &atoms {
            for b in &atoms {
                pool.push(a.mul(b).unwrap());
            }
        }
        pool.sort();
        pool.dedup();
        for u in &atoms {
            let w = ctx.non_primality_witness(u, &pool, &budget).unwrap();
            assert!(w.is_some(), "no witness for atom {u}");
            let (a, b) = w.unwrap();
            assert!(ctx.divides_in_f_iota(u, &a.mul(&b).unwrap()).unwrap());
            assert!(!ctx.divides_in_f_iota(u, &a).unwrap());
            assert!(!ctx.divides_in_f_iota(u, &b).unwrap());
        }
    }

    fn labeled_c2() -> (ZeroSumContext, LabeledPrimes) {
        let g = FiniteAbelianGroup::cyclic(2).unwrap();
        let one = g.element(&[1]).unwrap();
        let zero = g.zero();
        let labels = BTreeMap::from([
            ("p".to_string(), one.clone()),
            ("q".to_string(), one),
            ("r".to_string(), zero),
        ]);
        let labeled = LabeledPrimes::new(g.clone(), labels).unwrap();
        (ZeroSumContext::new(g), labeled)
    }

    #[test]
    fn class_cover_holds_when_every_class_has_a_prime() {
        let (ctx, labeled) = labeled_c2();
        let declared = ctx.group().enumerate_elements(10).unwrap();
        let cover = class_cover_check(&labeled, &ctx, &declared).unwrap();
        assert!(cover.covered);
        assert!(cover.uncovered.is_empty());
    }

    #[test]
    fn class_cover_fails_with_witness_when_a_class_is_missing() {
        let g = FiniteAbelianGroup::cyclic(2).unwrap();
        let labels = BTreeMap::from([("p".to_string(), g.element(&[1]).unwrap())]);
        let labeled = LabeledPrimes::new(g.clone(), labels).unwrap();
        let ctx = ZeroSumContext::new(g.clone());
        let declared = g.enumerate_elements(10).unwrap();
        let cover = class_cover_check(&labeled, &ctx, &declared).unwrap();
        assert!(!cover.covered);
        assert_eq!(cover.uncovered, vec![g.zero()]);
        let witness = cover.witness.unwrap();
        assert!(ctx.in_f_iota(&witness).unwrap());
        assert!(witness.multiplicity(&g.zero()) > 0);
    }

    #[test]
    fn lifting_projects_factorizations_exactly() {
        let (ctx, labeled) = labeled_c2();
        let budget = Budget::default();
        for pairs in [
            vec![("p", 2u32)],
            vec![("p", 1), ("q", 1)],
            vec![("p", 2), ("q", 2)],
            vec![("p", 3), ("q", 1), ("r", 1)],
            vec![("p", 2), ("r", 2)],
        ] {
            let a =
                PrimeSequence::from_pairs(pairs.iter().map(|&(p, c)| (p.to_string(), c)).collect());
            let report = lifting_check(&labeled, &ctx, &a, &budget).unwrap();
            assert!(report.ok, "lifting failed for {a}");
            assert!(report.lengths_match);
        }
    }

    #[test]
    fn fiber_catenary_is_at_most_two_and_attained() {
        let (ctx, labeled) = labeled_c2();
        let budget = Budget::default();
        // p^2 q^2 factors as (p^2)(q^2) and (pq)(pq), both projecting to
        // (1^2)(1^2): one fiber with two factorizations at distance 2
        let a = PrimeSequence::from_pairs(vec![("p".to_string(), 2), ("q".to_string(), 2)]);
        assert_eq!(fiber_catenary(&labeled, &ctx, &a, &budget).unwrap(), 2);
        // a single-prime power has singleton fibers
        let b = PrimeSequence::from_pairs(vec![("p".to_string(), 2)]);
        assert_eq!(fiber_catenary(&labeled, &ctx, &b, &budget).unwrap(), 0);
    }

    #[test]
    fn sub_multiset_enumeration_counts_and_caps() {
        let (ctx, _) = cyclic(4);
        let s = seq(&ctx, &[1, 1, 2]);
        let subs = sub_multisets_map(s.counts(), 100).unwrap();
        assert_eq!(subs.len(), 6); // (2+1)*(1+1)
        assert!(matches!(
            sub_multisets_map(s.counts(), 3),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn sequence_display_and_parse_shapes() {
        let (ctx, _) = cyclic(3);
        assert_eq!(GSequence::empty().to_string(), "[]");
        assert_eq!(seq(&ctx, &[1, 1, 2]).to_string(), "(1)^2 (2)");
        let p = PrimeSequence::from_pairs(vec![("p".to_string(), 2), ("q".to_string(), 1)]);
        assert_eq!(p.to_string(), "p^2 q");
    }

    #[test]
    fn sequences_up_to_enumerates_all_multisets() {
        let (ctx, elems) = cyclic(2);
        let seqs = ctx.sequences_up_to(&elems, 3, &Budget::default()).unwrap();
        // multisets over 2 symbols with length <= 3: C(2,0)+C(3,2)... = 1+2+3+4
        assert_eq!(seqs.len(), 10);
    }
}
