//! Monoid-element literals against a fuzz-chosen ideal-extension monoid.
//! Input is two lines: whitespace-separated generator vectors, then an
//! element literal ("(2,3)" or "(1);(2,3)"). Parsing never panics, and the
//! monoid's canonical formatting of an accepted element re-parses to an
//! equal element.

#![no_main]

use condmon::conductor::IdealExtensionMonoid;
use condmon::parse::{parse_monoid_element, parse_vector};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Some((generators_text, element_text)) = text.split_once('\n') else {
        return;
    };
    let mut generators = Vec::new();
    for part in generators_text.split_whitespace() {
        let Ok(v) = parse_vector(part) else {
            return;
        };
        generators.push(v);
    }
    let Some(first) = generators.first() else {
        return;
    };
    // Keep the antichain check cheap; parsing cost does not depend on this.
    if first.dim() > 8 || generators.len() > 16 {
        return;
    }
    let Ok(monoid) = IdealExtensionMonoid::new(first.dim(), generators) else {
        return;
    };
    if let Ok(element) = parse_monoid_element(&monoid, element_text) {
        let display = monoid.format_element(&element);
        let again =
            parse_monoid_element(&monoid, &display).expect("canonical display must re-parse");
        assert_eq!(again, element);
    }
});
