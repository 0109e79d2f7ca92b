//! JSON spec files: parsing plus structural validation never panics, and the
//! canonical JSON of an accepted spec re-parses to an equal spec.

#![no_main]

use condmon::spec::SpecFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = SpecFile::parse(text) {
        let json = spec.to_json();
        let again = SpecFile::parse(&json).expect("canonical JSON must re-parse");
        assert_eq!(again, spec);
    }
});
