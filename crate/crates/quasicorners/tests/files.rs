use std::path::PathBuf;

use quasicorners::formats::{
    load_group, load_subm_for, parse_gtbl, parse_subg, parse_subm, write_file, write_gtbl, write_subg, write_subm,
};
use quasicorners::CliError;
use quasicorners_core::group::{build_group, BuildOptions};
use quasicorners_core::{GroupSpec, SubsetG, SubsetGG};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn build(spec: &str) -> quasicorners_core::GroupTable {
    build_group(&GroupSpec::parse(spec).unwrap(), &BuildOptions::default()).unwrap()
}

#[test]
fn store_then_load_cyclic_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c6.gtbl");
    let g = build("cyclic(6)");
    write_file(&path, &write_gtbl(&g)).unwrap();
    let h = load_group(&path).unwrap();
    assert_eq!(h.table(), g.table());
    assert_eq!(h.labels(), g.labels());
    assert_eq!(h.identity(), 0);
}

#[test]
fn canonical_files_round_trip_bytes() {
    for spec in [
        "cyclic(1)",
        "dihedral(5)",
        "symmetric(4)",
        "direct_product(cyclic(2), alternating(4))",
    ] {
        let text = write_gtbl(&build(spec));
        assert_eq!(write_gtbl(&parse_gtbl(&text).unwrap()), text, "{spec}");
    }
    for seed in 0..10 {
        let n = 1 + seed as usize;
        let e = SubsetGG::random(n, 0.3, seed);
        let text = write_subm(&e);
        assert_eq!(write_subm(&parse_subm(&text).unwrap()), text);
        let s = SubsetG::from_predicate(n, |i| (i * 7 + seed as usize).is_multiple_of(3));
        let text = write_subg(&s);
        assert_eq!(write_subg(&parse_subg(&text).unwrap()), text);
    }
}

#[test]
fn subm_with_wrong_order_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.subm");
    write_file(&path, &write_subm(&SubsetGG::full(5))).unwrap();
    assert!(load_subm_for(&path, 5).is_ok());
    match load_subm_for(&path, 6) {
        Err(CliError::Parse { source, .. }) => assert_eq!((source.line, source.column), (1, 8)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn shipped_psl2_7_fixture() {
    let g = load_group(&fixture("psl2_7.gtbl")).unwrap();
    assert_eq!(g.order(), 168);
    let built = build("psl2(7)");
    assert_eq!(g.table(), built.table());
    assert_eq!(g.labels(), built.labels());
}

#[test]
fn malformed_table_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.gtbl");
    // Rows 0 and 1 swapped, so 0 is no longer an identity.
    let text = "GTBL 1 3\n0\n1 0 2\n0 1 2\n2 1 0\na\nb\nc\n";
    write_file(&path, text).unwrap();
    assert!(
        matches!(load_group(&path), Err(CliError::InvalidGroup(_))),
        "{:?}",
        load_group(&path)
    );
}
