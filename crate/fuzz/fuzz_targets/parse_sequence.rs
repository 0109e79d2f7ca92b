//! Sequence literals against a fuzz-chosen group. Input is two lines: a group
//! literal, then a sequence literal ("(1)^2 (0)", "0^2 * (1)", or "[]").
//! Parsing never panics, and the display of an accepted sequence re-parses to
//! an equal sequence.

#![no_main]

use condmon::parse::{parse_group, parse_sequence};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Some((group_text, sequence_text)) = text.split_once('\n') else {
        return;
    };
    let Ok(group) = parse_group(group_text) else {
        return;
    };
    if let Ok(sequence) = parse_sequence(&group, sequence_text) {
        let again =
            parse_sequence(&group, &sequence.to_string()).expect("canonical display must re-parse");
        assert_eq!(again, sequence);
    }
});
