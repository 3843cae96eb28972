#![no_main]

use libfuzzer_sys::fuzz_target;
use matroid_lift::enumeration::{catalog_line, parse_catalog_line};

fuzz_target!(|data: &[u8]| {
    let Ok(line) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_catalog_line(line) {
        assert_eq!(parse_catalog_line(&catalog_line(&m)).expect("canonical line parses"), m);
    }
});
