use std::sync::Arc;

use forge_core::abelian::AbelianGroup;
use forge_core::ahss::{abutment, emit_page, run, D5Case, Page, Resolution, SSState, SpectrumSpec};
use forge_core::emspaces::SpaceSpec;

fn row(s: &SSState, page: Page, j: u32, upto: u32) -> Vec<String> {
    (0..=upto).map(|i| s.entry(page, (i, j)).unwrap().to_string()).collect()
}

fn arrows(s: &SSState, max_target_i: u32) -> Vec<((u32, u32), (u32, u32))> {
    let mut v: Vec<_> = s.nonzero_d2().into_iter().filter(|(_, t)| t.0 <= max_target_i).collect();
    v.sort();
    v
}

fn k2() -> Arc<SpaceSpec> {
    Arc::new(SpaceSpec::k_z2(2, "M"))
}

fn graded(s: &SSState, n: u32) -> Vec<String> {
    abutment(s, n).unwrap().graded().iter().map(|e| e.to_string()).collect()
}

#[test]
fn fermionic_e2_page() {
    let s = run(&k2(), &SpectrumSpec::sh().twisted(Some("M")), 6, None).unwrap();
    assert_eq!(row(&s, Page::E2, 0, 6), ["C^×", "0", "Z_2", "0", "Z_4", "Z_2", "Z_2"]);
    assert_eq!(row(&s, Page::E2, 1, 5), ["Z_2", "0", "Z_2", "Z_2", "Z_2", "Z_2^2"]);
    assert_eq!(row(&s, Page::E2, 2, 4), ["Z_2", "0", "Z_2", "Z_2", "Z_2"]);
    assert_eq!(
        arrows(&s, 6),
        [((0, 1), (2, 0)), ((0, 2), (2, 1)), ((3, 2), (5, 1)), ((4, 1), (6, 0)), ((4, 2), (6, 1))]
    );
    let page = emit_page(&s, Page::E2).unwrap();
    assert!(page.contains("d2: (4,1) -> (6,0)"), "{page}");
}

#[test]
fn fermionic_abutments() {
    let s = run(&k2(), &SpectrumSpec::sh().twisted(Some("M")), 6, None).unwrap();
    let a4 = abutment(&s, 4).unwrap();
    assert_eq!(a4.order(), Some(16));
    let mut g = graded(&s, 4);
    g.sort();
    assert_eq!(g, ["Z_2", "Z_2", "Z_4"]);
    assert!(matches!(a4.resolution, Resolution::Anchored(ref g, _) if *g == AbelianGroup::cyclic(16)));
    assert_eq!(abutment(&s, 5).unwrap().group(), Some(&AbelianGroup::cyclic(2)));
}

#[test]
fn magnetic_base() {
    let t = Arc::new(SpaceSpec::cp_infinity("t"));
    let s = run(&t, &SpectrumSpec::sh().twisted(Some("t")), 6, None).unwrap();
    assert_eq!(row(&s, Page::E2, 0, 6), ["C^×", "0", "C^×", "0", "C^×", "0", "C^×"]);
    assert_eq!(row(&s, Page::E2, 1, 5), ["Z_2", "0", "Z_2", "0", "Z_2", "0"]);
    assert_eq!(row(&s, Page::E2, 2, 4), ["Z_2", "0", "Z_2", "0", "Z_2"]);
    assert_eq!(arrows(&s, 6), [((0, 1), (2, 0)), ((0, 2), (2, 1)), ((4, 1), (6, 0)), ((4, 2), (6, 1))]);
    assert!(abutment(&s, 5).unwrap().group().unwrap().is_trivial());
}

#[test]
fn untwisted_rp_infinity() {
    let x = Arc::new(SpaceSpec::k_z2(1, "x"));
    let s = run(&x, &SpectrumSpec::sh(), 6, None).unwrap();
    assert_eq!(row(&s, Page::E2, 0, 6), ["C^×", "Z_2", "0", "Z_2", "0", "Z_2", "0"]);
    assert_eq!(row(&s, Page::E2, 1, 5), vec!["Z_2"; 6]);
    assert_eq!(row(&s, Page::E2, 2, 4), vec!["Z_2"; 5]);
    assert_eq!(arrows(&s, 6), [((2, 2), (4, 1)), ((3, 1), (5, 0)), ((3, 2), (5, 1))]);
    assert!(abutment(&s, 4).unwrap().group().unwrap().is_trivial());
}

#[test]
fn two_row_bosonic() {
    let s = run(&k2(), &SpectrumSpec::w2row().twisted(Some("M")), 6, None).unwrap();
    assert_eq!(abutment(&s, 4).unwrap().group(), Some(&AbelianGroup::cyclic(2)));
    assert!(abutment(&s, 5).unwrap().group().unwrap().is_trivial());
}

#[test]
fn super_witt_cases() {
    let sw = SpectrumSpec::sw().twisted(Some("M"));
    let v = run(&k2(), &sw, 5, Some(D5Case::Vanishes)).unwrap();
    assert_eq!(abutment(&v, 5).unwrap().group(), Some(&AbelianGroup::cyclic(2)));
    let n = run(&k2(), &sw, 5, Some(D5Case::Nonzero)).unwrap();
    assert!(abutment(&n, 5).unwrap().group().unwrap().is_trivial());
    let a4 = abutment(&n, 4).unwrap();
    assert!(matches!(a4.resolution, Resolution::Unresolved { .. }));
    assert!(graded(&n, 4).iter().any(|g| g.contains("SW")), "{:?}", graded(&n, 4));
}

#[test]
fn point_base_is_the_coefficients() {
    let p = Arc::new(SpaceSpec::point());
    let s = run(&p, &SpectrumSpec::sh(), 4, None).unwrap();
    let got: Vec<String> = (0..=4).map(|n| abutment(&s, n).unwrap().to_string()).collect();
    assert!(got[0].contains("C^×") && got[1].contains("Z_2") && got[2].contains("Z_2"), "{got:?}");
}
