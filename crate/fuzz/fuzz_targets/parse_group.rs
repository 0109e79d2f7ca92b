//! Group literals ("C2xC4"): parsing never panics, and the canonical display
//! of an accepted group re-parses to the same cyclic orders.

#![no_main]

use condmon::parse::parse_group;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(group) = parse_group(text) {
        let display = group.to_string();
        let again = parse_group(&display).expect("canonical display must re-parse");
        assert_eq!(again.cyclic_orders(), group.cyclic_orders());
    }
});
