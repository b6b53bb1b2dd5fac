use quasicorners_core::corners::{census, CornerKind};
use quasicorners_core::group::{build_group, BuildOptions, GroupSpec};
use quasicorners_core::{GroupTable, SubsetGG};

fn group(s: &str) -> GroupTable {
    build_group(&GroupSpec::parse(s).unwrap(), &BuildOptions::default()).unwrap()
}

/// Triple loop straight from the pattern definitions.
fn oracle(g: &GroupTable, e: &SubsetGG, kind: CornerKind) -> Vec<u64> {
    let n = g.order();
    (0..n)
        .map(|h| {
            let mut c = 0;
            for x in 0..n {
                for y in 0..n {
                    let third = match kind {
                        CornerKind::Naive => (x, g.mul(h, y)),
                        CornerKind::Bmz => (g.mul(h, x), g.mul(h, y)),
                    };
                    if e.contains(x, y) && e.contains(g.mul(h, x), y) && e.contains(third.0, third.1) {
                        c += 1;
                    }
                }
            }
            c
        })
        .collect()
}

#[test]
fn bitset_census_matches_triple_loop() {
    let groups = [
        "cyclic(7)",
        "dihedral(6)",
        "symmetric(4)",
        "alternating(4)",
        "sl2(3)",
        "direct_product(cyclic(2),symmetric(3))",
    ];
    let mut runs = 0;
    for (i, spec) in groups.iter().enumerate() {
        let g = group(spec);
        for s in 0..4u64 {
            let density = [0.2, 0.5, 0.8, 0.35][s as usize];
            let e = SubsetGG::random(g.order(), density, 100 * i as u64 + s);
            for kind in [CornerKind::Naive, CornerKind::Bmz] {
                let c = census(&g, &e, kind).unwrap();
                assert_eq!(c.counts, oracle(&g, &e, kind), "{spec} seed {s} {kind:?}");
                assert_eq!(c.counts[g.identity()], e.cardinality() as u64);
            }
            runs += 1;
        }
    }
    assert!(runs >= 20);
}

#[test]
fn full_set_counts_everything() {
    for spec in ["cyclic(5)", "dihedral(4)", "psl2(5)"] {
        let g = group(spec);
        let n = g.order();
        for kind in [CornerKind::Naive, CornerKind::Bmz] {
            let c = census(&g, &SubsetGG::full(n), kind).unwrap();
            assert!(c.counts.iter().all(|&v| v == (n * n) as u64));
        }
    }
}
