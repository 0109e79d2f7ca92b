//! JSON spec files: the single input format shared by the CLI subcommands.
//!
//! A spec describes exactly one object, recognized by its discriminating key:
//!
//! - `generators` — an ideal-extension monoid:
//!   `{"s":2,"generators":["(1,1)"],"unit_group":"C2"}`
//! - `primes` — labeled primes over a group:
//!   `{"group":"C3","primes":{"p":"(1)","q":"(2)"}}`
//! - `family` — a construction recipe:
//!   `{"family":"cycle","params":{"m":3}}`
//! - `group` alone — a zero-sum context, optionally with a declared support:
//!   `{"group":"C5","support":["(1)"]}`
//!
//! plus optional `budgets` (caps and a window) and a default `element`.
//! Unknown keys are rejected.

use crate::budget::Budget;
use crate::conductor::IdealExtensionMonoid;
use crate::construct::{
    cycle_monoid, deep_hole_monoid, equal_catenary_instance, interval_length_sequence,
    power_primary_monoid, EqualCatenaryInstance, EqualCatenaryMode, IntervalInstance,
};
use crate::error::{Error, Result};
use crate::freemon::Window;
use crate::group::GroupElement;
use crate::parse::{parse_group, parse_group_element, parse_sequence, parse_vector};
use crate::zerosum::{GSequence, LabeledPrimes, ZeroSumContext};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Budget overrides and the enumeration window, all optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factorization_cap: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node_cap: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_cap: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length_cap: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumeration_cap: Option<u64>,
    /// Upper corner of the survey window, e.g. `[8, 8]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<Vec<u32>>,
}

/// Parameters for the `family` construction recipes; which fields are
/// required depends on the family.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    /// `"large_order"` or `"bounded_exponent"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

/// A parsed spec file. Exactly one of the discriminating keys must be
/// present; everything else is validated by [`SpecFile::kind`] and the
/// builders.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<FamilyParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budgets: Option<BudgetSpec>,
    /// Default element for `invariants`-style commands, in the literal syntax
    /// of the spec's monoid.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
}

/// Which kind of object a spec describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecKind {
    IdealExtension,
    ZeroSum,
    LabeledPrimes,
    Construction,
}

/// What a construction recipe builds.
#[derive(Debug, Clone)]
pub enum ConstructionOutput {
    Monoid(IdealExtensionMonoid),
    Interval(IntervalInstance),
    EqualCatenary(EqualCatenaryInstance),
}

impl SpecFile {
    /// Parse and structurally validate a JSON spec.
    pub fn parse(json: &str) -> Result<SpecFile> {
        let spec: SpecFile =
            serde_json::from_str(json).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        spec.kind()?;
        Ok(spec)
    }

    /// Determine the spec kind from the discriminating keys.
    pub fn kind(&self) -> Result<SpecKind> {
        let mut kinds = Vec::new();
        if self.generators.is_some() {
            kinds.push(SpecKind::IdealExtension);
        }
        if self.primes.is_some() {
            kinds.push(SpecKind::LabeledPrimes);
        }
        if self.family.is_some() {
            kinds.push(SpecKind::Construction);
        }
        if kinds.is_empty() && self.group.is_some() {
            kinds.push(SpecKind::ZeroSum);
        }
        match kinds.as_slice() {
            [k] => Ok(*k),
            [] => Err(Error::InvalidSpec(
                "spec needs one of: generators, primes, family, group".into(),
            )),
            _ => Err(Error::InvalidSpec(
                "spec mixes discriminating keys (generators / primes / family)".into(),
            )),
        }
    }

    /// The effective budget: defaults overridden by the `budgets` section.
    pub fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(spec) = &self.budgets {
            if let Some(v) = spec.factorization_cap {
                b.factorization_cap = v;
            }
            if let Some(v) = spec.node_cap {
                b.node_cap = v;
            }
            if let Some(v) = spec.pair_cap {
                b.pair_cap = v;
            }
            if let Some(v) = spec.length_cap {
                b.length_cap = v;
            }
            if let Some(v) = spec.enumeration_cap {
                b.enumeration_cap = v;
            }
        }
        b
    }

    /// The survey window, when one is declared.
    pub fn window(&self) -> Option<Window> {
        self.budgets
            .as_ref()
            .and_then(|b| b.window.as_ref())
            .map(|coords| Window::new(crate::freemon::ExponentVector::new(coords.clone())))
    }

    /// Build the ideal-extension monoid a `generators` spec describes.
    pub fn build_monoid(&self) -> Result<IdealExtensionMonoid> {
        if self.kind()? != SpecKind::IdealExtension {
            return Err(Error::InvalidSpec(
                "spec does not describe an ideal-extension monoid".into(),
            ));
        }
        let literals = self.generators.as_ref().expect("kind checked");
        let mut generators = Vec::with_capacity(literals.len());
        for text in literals {
            generators.push(parse_vector(text)?);
        }
        let s = match self.s {
            Some(s) => s,
            None => generators
                .first()
                .map(|v| v.dim())
                .ok_or_else(|| Error::InvalidSpec("generator antichain is empty".into()))?,
        };
        match &self.unit_group {
            Some(literal) => {
                IdealExtensionMonoid::with_unit_group(s, generators, parse_group(literal)?)
            }
            None => IdealExtensionMonoid::new(s, generators),
        }
    }

    /// Build the zero-sum context (and optional declared support) of a
    /// `group` spec.
    pub fn build_zero_sum(&self) -> Result<(ZeroSumContext, Option<Vec<GroupElement>>)> {
        if self.kind()? != SpecKind::ZeroSum {
            return Err(Error::InvalidSpec(
                "spec does not describe a zero-sum context".into(),
            ));
        }
        let group = parse_group(self.group.as_ref().expect("kind checked"))?;
        let ctx = ZeroSumContext::new(group);
        let support = match &self.support {
            None => None,
            Some(literals) => {
                let mut elems = Vec::with_capacity(literals.len());
                for text in literals {
                    elems.push(parse_group_element(ctx.group(), text)?);
                }
                elems.sort();
                elems.dedup();
                Some(elems)
            }
        };
        Ok((ctx, support))
    }

    /// Build the labeled-primes structure of a `primes` spec.
    pub fn build_labeled_primes(&self) -> Result<LabeledPrimes> {
        if self.kind()? != SpecKind::LabeledPrimes {
            return Err(Error::InvalidSpec(
                "spec does not describe labeled primes".into(),
            ));
        }
        let group_literal = self
            .group
            .as_ref()
            .ok_or_else(|| Error::InvalidSpec("labeled primes need a group".into()))?;
        let group = parse_group(group_literal)?;
        let mut labels = BTreeMap::new();
        for (name, literal) in self.primes.as_ref().expect("kind checked") {
            labels.insert(name.clone(), parse_group_element(&group, literal)?);
        }
        LabeledPrimes::new(group, labels)
    }

    /// Run the construction recipe of a `family` spec.
    pub fn build_construction(&self) -> Result<ConstructionOutput> {
        if self.kind()? != SpecKind::Construction {
            return Err(Error::InvalidSpec(
                "spec does not describe a construction".into(),
            ));
        }
        let family = self.family.as_ref().expect("kind checked");
        let params = self.params.clone().unwrap_or_default();
        let need = |opt: Option<&str>, what: &str| -> Result<()> {
            match opt {
                Some(_) => Ok(()),
                None => Err(Error::InvalidSpec(format!(
                    "family '{family}' needs params.{what}"
                ))),
            }
        };
        match family.as_str() {
            "deep_hole" => {
                let s = params.s.ok_or_else(|| {
                    Error::InvalidSpec("family 'deep_hole' needs params.s".into())
                })?;
                let alpha = params.alpha.ok_or_else(|| {
                    Error::InvalidSpec("family 'deep_hole' needs params.alpha".into())
                })?;
                Ok(ConstructionOutput::Monoid(deep_hole_monoid(s, alpha)?))
            }
            "power_primary" => {
                let alphas = params.alphas.ok_or_else(|| {
                    Error::InvalidSpec("family 'power_primary' needs params.alphas".into())
                })?;
                let unit_group = match &params.unit_group {
                    Some(literal) => Some(parse_group(literal)?),
                    None => None,
                };
                Ok(ConstructionOutput::Monoid(power_primary_monoid(
                    &alphas, unit_group,
                )?))
            }
            "cycle" => {
                let m = params
                    .m
                    .ok_or_else(|| Error::InvalidSpec("family 'cycle' needs params.m".into()))?;
                Ok(ConstructionOutput::Monoid(cycle_monoid(m)?))
            }
            "interval" => {
                need(params.group.as_deref(), "group")?;
                let group = parse_group(params.group.as_ref().unwrap())?;
                let k = params
                    .k
                    .ok_or_else(|| Error::InvalidSpec("family 'interval' needs params.k".into()))?;
                let ell = params.ell.ok_or_else(|| {
                    Error::InvalidSpec("family 'interval' needs params.ell".into())
                })?;
                Ok(ConstructionOutput::Interval(interval_length_sequence(
                    &group, k, ell,
                )?))
            }
            "equal_catenary" => {
                let n = params.n.ok_or_else(|| {
                    Error::InvalidSpec("family 'equal_catenary' needs params.n".into())
                })?;
                let mode = match params.mode.as_deref() {
                    Some("large_order") => EqualCatenaryMode::LargeOrder,
                    Some("bounded_exponent") => {
                        let p = params.p.ok_or_else(|| {
                            Error::InvalidSpec("mode 'bounded_exponent' needs params.p".into())
                        })?;
                        EqualCatenaryMode::BoundedExponent { p }
                    }
                    Some(other) => {
                        return Err(Error::InvalidSpec(format!(
                            "unknown equal_catenary mode '{other}'"
                        )))
                    }
                    None => {
                        return Err(Error::InvalidSpec(
                            "family 'equal_catenary' needs params.mode".into(),
                        ))
                    }
                };
                Ok(ConstructionOutput::EqualCatenary(equal_catenary_instance(
                    n, mode,
                )?))
            }
            other => Err(Error::InvalidSpec(format!(
                "unknown construction family '{other}'"
            ))),
        }
    }

    /// Spec describing an existing monoid (the `construct` subcommand's
    /// output format).
    pub fn from_monoid(monoid: &IdealExtensionMonoid) -> SpecFile {
        SpecFile {
            s: Some(monoid.dim_s()),
            generators: Some(monoid.generators().iter().map(|v| v.to_string()).collect()),
            unit_group: if monoid.is_reduced() {
                None
            } else {
                Some(monoid.unit_group().to_string())
            },
            ..SpecFile::default()
        }
    }

    /// Spec describing a sequence over a group, with the sequence as the
    /// default element.
    pub fn from_sequence(ctx: &ZeroSumContext, sequence: &GSequence) -> SpecFile {
        SpecFile {
            group: Some(ctx.group().to_string()),
            element: Some(sequence.to_string()),
            ..SpecFile::default()
        }
    }

    /// Canonical byte representation (pretty JSON + newline), the format the
    /// `construct` subcommand emits.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("spec serialization is total");
        out.push('\n');
        out
    }

    /// Parse the spec's default element as a sequence (zero-sum kinds only).
    pub fn default_sequence(&self, ctx: &ZeroSumContext) -> Result<Option<GSequence>> {
        match &self.element {
            None => Ok(None),
            Some(text) => Ok(Some(parse_sequence(ctx.group(), text)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_extension_spec_roundtrip() {
        let json = r#"{"s":2,"generators":["(1,1)"],"budgets":{"window":[5,5]}}"#;
        let spec = SpecFile::parse(json).unwrap();
        assert_eq!(spec.kind().unwrap(), SpecKind::IdealExtension);
        let m = spec.build_monoid().unwrap();
        assert_eq!(m.dim_s(), 2);
        assert!(m.is_reduced());
        assert!(spec.window().is_some());
        let again = SpecFile::parse(&SpecFile::from_monoid(&m).to_json()).unwrap();
        assert_eq!(again.build_monoid().unwrap().generators(), m.generators());
    }

    #[test]
    fn unit_group_spec_builds_decorated_monoid() {
        let json = r#"{"generators":["(2)"],"unit_group":"C2"}"#;
        let m = SpecFile::parse(json).unwrap().build_monoid().unwrap();
        assert!(!m.is_reduced());
        assert_eq!(m.unit_group().cardinality(), 2);
    }

    #[test]
    fn zero_sum_spec_with_support_and_element() {
        let json = r#"{"group":"C5","support":["(1)","(1)"],"element":"(1)^5"}"#;
        let spec = SpecFile::parse(json).unwrap();
        assert_eq!(spec.kind().unwrap(), SpecKind::ZeroSum);
        let (ctx, support) = spec.build_zero_sum().unwrap();
        assert_eq!(support.unwrap().len(), 1); // deduplicated
        let seq = spec.default_sequence(&ctx).unwrap().unwrap();
        assert_eq!(seq.len(), 5);
    }

    #[test]
    fn labeled_primes_spec() {
        let json = r#"{"group":"C3","primes":{"p":"(1)","q":"(2)"}}"#;
        let spec = SpecFile::parse(json).unwrap();
        assert_eq!(spec.kind().unwrap(), SpecKind::LabeledPrimes);
        let lp = spec.build_labeled_primes().unwrap();
        assert_eq!(lp.label("p").unwrap(), &lp.group().element(&[1]).unwrap());
    }

    #[test]
    fn construction_specs_build() {
        let cases = [
            (r#"{"family":"deep_hole","params":{"s":2,"alpha":1}}"#, 1),
            (r#"{"family":"power_primary","params":{"alphas":[2,2]}}"#, 1),
            (r#"{"family":"cycle","params":{"m":3}}"#, 6),
        ];
        for (json, gens) in cases {
            let out = SpecFile::parse(json).unwrap().build_construction().unwrap();
            match out {
                ConstructionOutput::Monoid(m) => assert_eq!(m.generators().len(), gens),
                _ => panic!("expected a monoid from {json}"),
            }
        }
        let interval =
            SpecFile::parse(r#"{"family":"interval","params":{"group":"C5","k":2,"ell":5}}"#)
                .unwrap()
                .build_construction()
                .unwrap();
        assert!(matches!(interval, ConstructionOutput::Interval(_)));
        let eq = SpecFile::parse(
            r#"{"family":"equal_catenary","params":{"n":2,"mode":"bounded_exponent","p":2}}"#,
        )
        .unwrap()
        .build_construction()
        .unwrap();
        assert!(matches!(eq, ConstructionOutput::EqualCatenary(_)));
    }

    #[test]
    fn unknown_keys_and_mixed_kinds_are_rejected() {
        assert!(SpecFile::parse(r#"{"generators":["(1)"],"typo":1}"#).is_err());
        assert!(SpecFile::parse(r#"{"generators":["(1)"],"primes":{}}"#).is_err());
        assert!(SpecFile::parse(r#"{}"#).is_err());
        assert!(SpecFile::parse(r#"{"family":"interval","params":{"bogus":3}}"#).is_err());
        assert!(SpecFile::parse("not json").is_err());
    }

    #[test]
    fn budget_overrides_apply() {
        let json = r#"{"group":"C2","budgets":{"factorization_cap":7,"length_cap":4}}"#;
        let spec = SpecFile::parse(json).unwrap();
        let b = spec.budget();
        assert_eq!(b.factorization_cap, 7);
        assert_eq!(b.length_cap, 4);
        assert_eq!(b.node_cap, Budget::default().node_cap);
    }

    #[test]
    fn dominated_generator_is_named_in_the_error() {
        let json = r#"{"generators":["(1,1)","(2,2)"]}"#;
        let err = SpecFile::parse(json)
            .unwrap()
            .build_monoid()
            .unwrap_err()
            .to_string();
        assert!(
            err.contains("(2,2)"),
            "error does not name the dominated generator: {err}"
        );
        assert!(
            err.contains("(1,1)"),
            "error does not name the dominator: {err}"
        );
    }
}
