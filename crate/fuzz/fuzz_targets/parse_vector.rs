//! Exponent-vector literals ("(1,2)"): parsing never panics, and the display
//! of an accepted vector re-parses to an equal vector.

#![no_main]

use condmon::parse::parse_vector;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(vector) = parse_vector(text) {
        let again = parse_vector(&vector.to_string()).expect("canonical display must re-parse");
        assert_eq!(again, vector);
    }
});
