//! Replays the fuzz corpus seeds and throws arbitrary text at every parser.

use std::path::Path;

use proptest::prelude::*;

use matroid_lift::enumeration::{catalog_line, parse_catalog_line, parse_pair_line};
use matroid_lift::parse_matroid_text;
use matroid_lift::text::{parse_documents, serialize_matroid_text};

fn documents_round_trip(text: &str) {
    let Ok(docs) = parse_documents(text) else { return };
    for doc in docs {
        if let Ok(m) = doc.to_matroid() {
            assert_eq!(parse_matroid_text(&serialize_matroid_text(&m)).unwrap(), m);
        }
    }
}

fn catalog_round_trip(line: &str) {
    if let Ok(m) = parse_catalog_line(line) {
        assert_eq!(parse_catalog_line(&catalog_line(&m)).unwrap(), m);
    }
}

fn pair_round_trip(line: &str) {
    if let Ok(r) = parse_pair_line(line) {
        assert_eq!(parse_pair_line(&r.line()).unwrap(), r);
    }
}

fn seeds(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<String> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| std::fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn corpus_seeds() {
    for s in seeds("parse_matroid") {
        documents_round_trip(&s);
    }
    let valid = seeds("parse_catalog_line").iter().filter(|s| parse_catalog_line(s).is_ok()).count();
    assert_eq!(valid, 3);
    for s in seeds("parse_catalog_line") {
        catalog_round_trip(&s);
    }
    let valid = seeds("parse_pair_line").iter().filter(|s| parse_pair_line(s).is_ok()).count();
    assert_eq!(valid, 2);
    for s in seeds("parse_pair_line") {
        pair_round_trip(&s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn arbitrary_text(s in "\\PC{0,200}") {
        documents_round_trip(&s);
        catalog_round_trip(&s);
        pair_round_trip(&s);
    }

    #[test]
    fn document_shaped_text(lines in proptest::collection::vec(
        prop_oneof![
            Just("matroid".to_string()),
            "matroid [a-z]{1,3}",
            "ground( [a-e]){0,6}",
            "circuit( [a-f]){0,4}",
            Just("end".to_string()),
            Just("# note".to_string()),
            Just(String::new()),
        ],
        0..12,
    )) {
        documents_round_trip(&lines.join("\n"));
    }

    #[test]
    fn line_shaped_text(n in 0usize..20, r in 0usize..20, body in "[0-9a-g|\\-]{0,20}", q in "[0-2]", s in "-?[0-9]{1,3}") {
        catalog_round_trip(&format!("n={n};rank={r};circuits={body}"));
        pair_round_trip(&format!("{n};{r};quotient={q};s={s};witness=ok"));
    }
}
