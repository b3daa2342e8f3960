use std::sync::Arc;

use forge_core::abelian::AbelianGroup;
use forge_core::emspaces::{z2_dim, SpaceSpec};
use forge_core::groupcoh::{cochain_slice, cohomology, Coefficients, FiniteAbelianGroup, DEFAULT_CAP};

fn g(orders: &[u64]) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(orders)
}

#[test]
fn cyclic_two_with_cx_coefficients() {
    let z2 = g(&[2]);
    assert!(cohomology(&z2, Coefficients::Cx, 4).unwrap().is_trivial());
    assert_eq!(cohomology(&z2, Coefficients::Cx, 3).unwrap(), AbelianGroup::cyclic(2));
}

#[test]
fn mod_two_betti_numbers_match_rp_infinity() {
    let x = Arc::new(SpaceSpec::k_z2(1, "x"));
    for n in 0..=8 {
        let h = cohomology(&g(&[2]), Coefficients::Zm(2), n).unwrap();
        assert_eq!(h.two_rank(), z2_dim(&x, n as u32).unwrap(), "degree {n}");
    }
}

#[test]
fn mod_two_betti_numbers_match_klein_four_kunneth() {
    let xy = Arc::new(SpaceSpec::parse("K(Z2,1;x)xK(Z2,1;y)").unwrap());
    for n in 0..=4 {
        let h = cohomology(&g(&[2, 2]), Coefficients::Zm(2), n).unwrap();
        assert_eq!(h.two_rank(), z2_dim(&xy, n as u32).unwrap(), "degree {n}");
    }
}

#[test]
fn dimension_shift() {
    for orders in [&[2][..], &[3], &[4], &[2, 2]] {
        let grp = g(orders);
        let top = if grp.order() > 3 { 4 } else { 5 };
        for n in 1..=top {
            let z = cohomology(&grp, Coefficients::Z, n + 1).unwrap();
            let cx = cohomology(&grp, Coefficients::Cx, n).unwrap();
            assert_eq!(z, cx, "{grp} degree {n}");
        }
    }
}

#[test]
fn cyclic_periodicity() {
    for m in [2u64, 4] {
        for n in 1..=6 {
            let h = cohomology(&g(&[m]), Coefficients::Z, n).unwrap();
            let want = if n % 2 == 0 { AbelianGroup::cyclic(m) } else { AbelianGroup::trivial() };
            assert_eq!(h, want, "H^{n}(Z_{m}; Z)");
            if n < 6 {
                assert_eq!(cohomology(&g(&[m]), Coefficients::Zm(m), n).unwrap(), AbelianGroup::cyclic(m));
            }
        }
    }
}

#[test]
fn coboundaries_compose_to_zero() {
    for orders in [&[2][..], &[3], &[4], &[2, 2], &[6]] {
        for n in 1..=3 {
            assert!(cochain_slice(&g(orders), n, DEFAULT_CAP).unwrap().is_complex(), "{orders:?} {n}");
        }
    }
}

#[test]
fn klein_four_schur_multiplier() {
    assert_eq!(cohomology(&g(&[2, 2]), Coefficients::Cx, 2).unwrap(), AbelianGroup::cyclic(2));
    assert!(cohomology(&g(&[4]), Coefficients::Cx, 2).unwrap().is_trivial());
}
