//! The shipped corpus directory matches the generators and every entry
//! passes the check pipeline, reproducing pinned verdicts exactly.

use std::fs;
use std::path::Path;

use adequate::adequacy::ReportOptions;
use adequate::harness::{construct, corpus, exit, run_check, GroupSpecFile};

fn corpus_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn shipped_files_match_generators() {
    let entries = corpus().unwrap();
    let mut files: Vec<_> = fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    assert_eq!(files.len(), entries.len());
    for (path, e) in files.iter().zip(&entries) {
        let spec = GroupSpecFile::parse(&fs::read_to_string(path).unwrap()).unwrap();
        assert_eq!(spec, e.spec, "{}", path.display());
    }
}

#[test]
fn every_entry_checks_clean() {
    let opts = ReportOptions::default();
    let mut pinned = 0;
    for e in corpus().unwrap() {
        let out = run_check(&e.spec, &opts);
        assert_eq!(
            out.exit_code,
            exit::CONSISTENT,
            "{}: {:?}",
            e.label,
            out.message
        );
        pinned += usize::from(e.spec.expected.is_some());
        assert!(!e.provenance.is_empty());
    }
    assert!(pinned >= 6);
}

#[test]
fn constructors_are_deterministic() {
    for e in corpus().unwrap() {
        let a = construct(&e.constructor, &e.parameters).unwrap();
        let b = construct(&e.constructor, &e.parameters).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.generators, e.spec.generators);
    }
}
