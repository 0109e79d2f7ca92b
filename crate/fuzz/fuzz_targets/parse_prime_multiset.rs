//! Labeled-prime multiset literals ("p^2 q"): parsing never panics, and the
//! display of an accepted multiset re-parses to an equal multiset.

#![no_main]

use condmon::parse::parse_prime_multiset;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(multiset) = parse_prime_multiset(text) {
        let again =
            parse_prime_multiset(&multiset.to_string()).expect("canonical display must re-parse");
        assert_eq!(again, multiset);
    }
});
