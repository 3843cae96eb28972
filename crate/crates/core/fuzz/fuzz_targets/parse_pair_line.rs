#![no_main]

use libfuzzer_sys::fuzz_target;
use matroid_lift::enumeration::parse_pair_line;

fuzz_target!(|data: &[u8]| {
    let Ok(line) = std::str::from_utf8(data) else { return };
    if let Ok(record) = parse_pair_line(line) {
        assert_eq!(parse_pair_line(&record.line()).expect("canonical line parses"), record);
    }
});
