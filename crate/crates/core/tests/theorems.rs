//! Exhaustive small-scale checks of the classification results.

use conlat_core::algebra::FiniteAlgebra;
use conlat_core::catalog::{CatalogId, Family};
use conlat_core::freese::classify::{classify_d2, classify_n5, generate_d1_square, ClassifyOptions};
use conlat_core::freese::search::{search_d1_all, search_d2_all, search_n5_all, SearchOptions};
use conlat_core::lattice::{are_isomorphic, find_embedding};
use std::collections::BTreeMap;

fn par() -> SearchOptions {
    SearchOptions {
        threads: Some(4),
        ..SearchOptions::default()
    }
}

#[test]
fn every_pentagon_on_five_points_matches_its_chain() {
    let alg = FiniteAlgebra::set(5).unwrap();
    let found = search_n5_all(&alg, &par()).unwrap();
    assert!(!found.is_empty());
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    for l in &found {
        let c = classify_n5(&alg, l, &ClassifyOptions::default()).unwrap();
        assert!(c.agrees());
        assert_eq!(c.observed, Some(c.catalog));
        *tally.entry(c.name()).or_default() += 1;
    }
    eprintln!("{} pentagons: {tally:?}", found.len());
}

#[test]
fn every_d2_on_five_points_is_s1() {
    let alg = FiniteAlgebra::set(5).unwrap();
    let found = search_d2_all(&alg, &par()).unwrap();
    assert!(!found.is_empty());
    for l in &found {
        let c = classify_d2(&alg, l, &ClassifyOptions::default()).unwrap();
        assert_eq!(c.catalog, CatalogId::Member(Family::S, 1));
        assert_eq!(c.observed, Some(c.catalog));
    }
    eprintln!("{} labelled D2", found.len());
}

#[test]
fn every_d1_up_to_five_points_generates_one_17_element_lattice() {
    let d13 = CatalogId::D13.build().unwrap().lattice;
    let d1 = CatalogId::D1.build().unwrap().lattice;
    let mut reference = None;
    let mut total = 0;
    for n in 3..=5 {
        let alg = FiniteAlgebra::set(n).unwrap();
        for l in search_d1_all(&alg, &par()).unwrap() {
            let c = generate_d1_square(&alg, &l, &ClassifyOptions::default()).unwrap();
            assert!(!c.agrees());
            let g = c.generated.lattice;
            assert_eq!(g.len(), 17);
            let reference = reference.get_or_insert_with(|| g.clone());
            assert!(are_isomorphic(reference, &g).is_some());
            total += 1;
        }
    }
    assert_eq!(total, 120);
    let g = reference.unwrap();
    assert!(find_embedding(&d13, &g).is_none());
    assert!(find_embedding(&d1, &g).is_some());
}
