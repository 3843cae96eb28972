#![no_main]

use libfuzzer_sys::fuzz_target;
use matroid_lift::text::{parse_documents, serialize_matroid_text};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(docs) = parse_documents(text) else { return };
    for doc in docs {
        if let Ok(m) = doc.to_matroid() {
            let again = matroid_lift::parse_matroid_text(&serialize_matroid_text(&m)).expect("canonical text parses");
            assert_eq!(again, m);
        }
    }
});
