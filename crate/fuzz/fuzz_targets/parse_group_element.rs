//! Group-element literals against a fuzz-chosen group. Input is two lines:
//! a group literal, then an element literal. Parsing never panics, and the
//! display of an accepted element re-parses to an equal element.

#![no_main]

use condmon::parse::{parse_group, parse_group_element};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Some((group_text, element_text)) = text.split_once('\n') else {
        return;
    };
    let Ok(group) = parse_group(group_text) else {
        return;
    };
    if let Ok(element) = parse_group_element(&group, element_text) {
        let again = parse_group_element(&group, &element.to_string())
            .expect("canonical display must re-parse");
        assert_eq!(again, element);
    }
});
