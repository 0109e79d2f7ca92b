//! Text parsers for the formats the CLI and spec files use. Every parser is
//! total (never panics) and round-trips the corresponding `Display` output.
//!
//! - groups: `"C2xC4"` (case-insensitive, `x`-separated cyclic orders)
//! - group elements: `"(1,0,3)"` (comma-separated residues); a bare integer
//!   is accepted for rank-1 groups, and a bare `0` for any group
//! - exponent vectors: `"(1,2)"`
//! - monoid elements: `"(2,3)"` or `"(1);(2,3)"` (unit residues; vector)
//! - group sequences: `"(1)^2 (0)"` or `"0^2 * (1) * (2)^3"`; `"[]"` is empty
//! - labeled-prime multisets: `"p^2 q"`; `"[]"` is empty

use crate::conductor::{IdealExtensionMonoid, MonoidElement};
use crate::error::{Error, Result};
use crate::freemon::ExponentVector;
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::zerosum::{GSequence, PrimeSequence};
use std::collections::BTreeMap;

/// Parse a group literal like `"C2xC2xC4"` (case-insensitive).
pub fn parse_group(text: &str) -> Result<FiniteAbelianGroup> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse("empty group literal".into()));
    }
    let mut orders = Vec::new();
    for part in trimmed.split(['x', 'X']) {
        let part = part.trim();
        let digits = part
            .strip_prefix(['c', 'C'])
            .ok_or_else(|| Error::Parse(format!("expected 'C<order>', got '{part}'")))?;
        let n: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad cyclic order '{digits}'")))?;
        orders.push(n);
    }
    FiniteAbelianGroup::new(orders)
}

/// Split `"(a,b,c)"` into its comma-separated entries, without the parens.
fn tuple_entries(text: &str) -> Result<Vec<&str>> {
    let inner = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected a parenthesized tuple, got '{text}'")))?;
    Ok(inner.split(',').collect())
}

/// Parse a group element literal against a concrete group.
pub fn parse_group_element(group: &FiniteAbelianGroup, text: &str) -> Result<GroupElement> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse("empty group element literal".into()));
    }
    if !trimmed.starts_with('(') {
        // Bare integer: the zero element for any rank, or a residue when the
        // group is cyclic.
        let r: i64 = trimmed
            .parse()
            .map_err(|_| Error::Parse(format!("bad group element '{trimmed}'")))?;
        if r == 0 {
            return Ok(group.zero());
        }
        if group.rank() == 1 {
            return group.element(&[r]);
        }
        return Err(Error::Parse(format!(
            "bare residue '{trimmed}' needs a rank-1 group; use a tuple"
        )));
    }
    let mut residues = Vec::new();
    for entry in tuple_entries(trimmed)? {
        let r: i64 = entry
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad residue '{}'", entry.trim())))?;
        residues.push(r);
    }
    group.element(&residues)
}

/// Parse an exponent vector literal like `"(1,2)"`.
pub fn parse_vector(text: &str) -> Result<ExponentVector> {
    let mut coords = Vec::new();
    for entry in tuple_entries(text.trim())? {
        let c: u32 = entry
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent '{}'", entry.trim())))?;
        coords.push(c);
    }
    Ok(ExponentVector::new(coords))
}

/// Parse a monoid element: `"(vec)"`, or `"(unit);(vec)"` for monoids with a
/// nontrivial unit group.
pub fn parse_monoid_element(monoid: &IdealExtensionMonoid, text: &str) -> Result<MonoidElement> {
    let parts: Vec<&str> = text.trim().split(';').collect();
    match parts.as_slice() {
        [vec_part] => {
            let v = parse_vector(vec_part)?;
            monoid.element(&vec![0; monoid.unit_group().rank()], v.coords().to_vec())
        }
        [unit_part, vec_part] => {
            let unit = parse_group_element(monoid.unit_group(), unit_part.trim())?;
            let v = parse_vector(vec_part)?;
            monoid.element(
                &unit
                    .residues()
                    .iter()
                    .map(|&r| i64::try_from(r).map_err(|_| Error::Overflow))
                    .collect::<Result<Vec<i64>>>()?,
                v.coords().to_vec(),
            )
        }
        _ => Err(Error::Parse(format!(
            "expected '(vec)' or '(unit);(vec)', got '{text}'"
        ))),
    }
}

/// Split a multiset literal into `element^multiplicity` terms. Terms are
/// separated by whitespace and/or `*`.
fn multiset_terms(text: &str) -> Vec<&str> {
    text.split(|c: char| c.is_whitespace() || c == '*')
        .filter(|t| !t.is_empty())
        .collect()
}

/// Split one term into its base and multiplicity (`"x^3"` or just `"x"`).
fn term_parts(term: &str) -> Result<(&str, u32)> {
    match term.rsplit_once('^') {
        None => Ok((term, 1)),
        Some((base, mult)) => {
            let m: u32 = mult
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity '{mult}'")))?;
            if m == 0 {
                return Err(Error::Parse("multiplicity must be positive".into()));
            }
            Ok((base, m))
        }
    }
}

/// Parse a sequence over a group: `"(1)^2 (0)"`, `"0^2 * (1) * (2)^3"`, or
/// `"[]"` for the empty sequence.
pub fn parse_sequence(group: &FiniteAbelianGroup, text: &str) -> Result<GSequence> {
    let trimmed = text.trim();
    if trimmed == "[]" {
        return Ok(GSequence::empty());
    }
    let terms = multiset_terms(trimmed);
    if terms.is_empty() {
        return Err(Error::Parse(
            "empty sequence literal; use '[]' for the empty sequence".into(),
        ));
    }
    let mut counts: BTreeMap<GroupElement, u64> = BTreeMap::new();
    for term in terms {
        let (base, mult) = term_parts(term)?;
        let g = parse_group_element(group, base)?;
        *counts.entry(g).or_insert(0) += u64::from(mult);
    }
    let mut pairs = Vec::with_capacity(counts.len());
    for (g, c) in counts {
        pairs.push((g, u32::try_from(c).map_err(|_| Error::Overflow)?));
    }
    Ok(GSequence::from_pairs(pairs))
}

/// Parse a labeled-prime multiset: `"p^2 q"`, or `"[]"` for the empty one.
/// Labels are ASCII identifiers (`[A-Za-z_][A-Za-z0-9_]*`).
pub fn parse_prime_multiset(text: &str) -> Result<PrimeSequence> {
    let trimmed = text.trim();
    if trimmed == "[]" {
        return Ok(PrimeSequence::from_pairs(vec![]));
    }
    let terms = multiset_terms(trimmed);
    if terms.is_empty() {
        return Err(Error::Parse(
            "empty prime multiset literal; use '[]' for the empty one".into(),
        ));
    }
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for term in terms {
        let (base, mult) = term_parts(term)?;
        let valid = !base.is_empty()
            && !base.starts_with(|c: char| c.is_ascii_digit())
            && base.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(Error::Parse(format!("bad prime label '{base}'")));
        }
        *counts.entry(base.to_string()).or_insert(0) += u64::from(mult);
    }
    let mut pairs = Vec::with_capacity(counts.len());
    for (p, c) in counts {
        pairs.push((p, u32::try_from(c).map_err(|_| Error::Overflow)?));
    }
    Ok(PrimeSequence::from_pairs(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_roundtrip_display() {
        for literal in ["C2", "C2xC4", "C3xC3xC9", "C129"] {
            let g = parse_group(literal).unwrap();
            assert_eq!(g.to_string(), literal);
            let again = parse_group(&g.to_string()).unwrap();
            assert_eq!(again.cyclic_orders(), g.cyclic_orders());
        }
        // Case-insensitive and whitespace-tolerant.
        let g = parse_group(" c2 X C4 ").unwrap();
        assert_eq!(g.cyclic_orders(), &[2, 4]);
    }

    #[test]
    fn group_parse_rejects_malformed_input() {
        for bad in ["", "D4", "C", "Cx", "C2x", "C2xxC4", "C0", "C-3", "2"] {
            assert!(parse_group(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn group_elements_roundtrip_display() {
        let g = parse_group("C2xC4").unwrap();
        for residues in [[0i64, 0], [1, 3], [0, 2]] {
            let x = g.element(&residues).unwrap();
            let parsed = parse_group_element(&g, &x.to_string()).unwrap();
            assert_eq!(parsed, x);
        }
        // Negative residues normalize.
        assert_eq!(
            parse_group_element(&g, "(-1,-1)").unwrap(),
            g.element(&[1, 3]).unwrap()
        );
        // Bare zero works for any rank; bare residues only for rank 1.
        assert_eq!(parse_group_element(&g, "0").unwrap(), g.zero());
        assert!(parse_group_element(&g, "1").is_err());
        let c5 = parse_group("C5").unwrap();
        assert_eq!(
            parse_group_element(&c5, "3").unwrap(),
            c5.element(&[3]).unwrap()
        );
    }

    #[test]
    fn vectors_roundtrip_display() {
        for coords in [vec![0u32], vec![1, 2], vec![4, 0, 7]] {
            let v = ExponentVector::new(coords);
            assert_eq!(parse_vector(&v.to_string()).unwrap(), v);
        }
        for bad in ["", "1,2", "(1,2", "(1,-2)", "(a)", "()"] {
            assert!(parse_vector(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn monoid_elements_roundtrip_both_shapes() {
        let reduced = IdealExtensionMonoid::new(2, vec![ExponentVector::new(vec![1, 1])]).unwrap();
        let x = reduced.vector_element(vec![2, 3]).unwrap();
        let text = reduced.format_element(&x);
        assert_eq!(text, "(2,3)");
        assert_eq!(parse_monoid_element(&reduced, &text).unwrap(), x);

        let decorated = IdealExtensionMonoid::with_unit_group(
            1,
            vec![ExponentVector::new(vec![2])],
            FiniteAbelianGroup::cyclic(2).unwrap(),
        )
        .unwrap();
        let y = decorated.element(&[1], vec![3]).unwrap();
        let text = decorated.format_element(&y);
        assert_eq!(text, "(1);(3)");
        assert_eq!(parse_monoid_element(&decorated, &text).unwrap(), y);
        // Vector-only form defaults the unit to the identity.
        let z = parse_monoid_element(&decorated, "(4)").unwrap();
        assert_eq!(z, decorated.element(&[0], vec![4]).unwrap());
        assert!(parse_monoid_element(&decorated, "(1);(2);(3)").is_err());
    }

    #[test]
    fn sequences_roundtrip_display() {
        let g = parse_group("C3").unwrap();
        let cases = ["[]", "(0)", "(1)^2 (2)", "(0)^3 (1) (2)^4"];
        for text in cases {
            let s = parse_sequence(&g, text).unwrap();
            assert_eq!(
                parse_sequence(&g, &s.to_string()).unwrap(),
                s,
                "roundtrip failed for {text:?}"
            );
        }
        // Star-separated spec style with bare zero.
        let s = parse_sequence(&g, "0^2 * (1)^1 * (2)^3").unwrap();
        assert_eq!(s.to_string(), "(0)^2 (1) (2)^3");
        // Repeated mentions of one element accumulate.
        let s = parse_sequence(&g, "(1) (1)^2").unwrap();
        assert_eq!(s.multiplicity(&g.element(&[1]).unwrap()), 3);
        for bad in ["", "(1)^0", "(1)^x", "(5,5)", "g"] {
            assert!(parse_sequence(&g, bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn prime_multisets_roundtrip_display() {
        for text in ["[]", "p", "p^2 q", "a_1^3 b2"] {
            let s = parse_prime_multiset(text).unwrap();
            assert_eq!(parse_prime_multiset(&s.to_string()).unwrap(), s);
        }
        let s = parse_prime_multiset("q * p^2 * q").unwrap();
        assert_eq!(s.to_string(), "p^2 q^2");
        for bad in ["", "2p", "p^", "p^0", "p q^-1", "é"] {
            assert!(parse_prime_multiset(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn sequence_multiplicity_overflow_is_an_error() {
        let g = parse_group("C2").unwrap();
        let text = "(1)^4294967295 (1)^4294967295";
        assert!(matches!(parse_sequence(&g, text), Err(Error::Overflow)));
    }
}
