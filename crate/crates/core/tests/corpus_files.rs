use std::path::Path;

use muchkit::corpus::{bundled, corpus_verify_all, CHECKSUMS};
use muchkit::format::MatrixDocument;
use sha2::{Digest, Sha256};

fn corpus_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus"))
}

#[test]
fn checksums_match_files() {
    let mut seen = 0;
    for line in CHECKSUMS.lines().filter(|l| !l.trim().is_empty()) {
        let (digest, name) = line.split_once("  ").expect("sha256sum format");
        let bytes = std::fs::read(corpus_dir().join(name)).expect("corpus file exists");
        let actual: String = Sha256::digest(&bytes)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        assert_eq!(actual, digest, "{name}");
        seen += 1;
    }
    assert_eq!(seen, bundled().len());
}

#[test]
fn bundled_text_matches_files() {
    for entry in bundled() {
        let on_disk =
            std::fs::read_to_string(corpus_dir().join(format!("{}.txt", entry.id))).unwrap();
        assert_eq!(entry.text, on_disk, "{}", entry.id);
        let doc = MatrixDocument::parse(&on_disk).unwrap();
        // header + rows survive a round trip, comments aside
        assert_eq!(MatrixDocument::parse(&doc.to_string()).unwrap(), doc);
    }
}

#[test]
fn every_claim_holds() {
    let report = corpus_verify_all(&bundled());
    assert!(report.all_passed(), "{report}");
    assert!(report.results.len() >= 25);
}
