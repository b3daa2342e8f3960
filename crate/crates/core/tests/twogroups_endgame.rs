use std::sync::Arc;

use forge_core::ahss::D5Case;
use forge_core::emspaces::{parse_class, CohomologyClass, SpaceSpec};
use forge_core::groupcoh::{abelian_groups_up_to, FiniteAbelianGroup};
use forge_core::twogroups::*;

fn all_classes() -> Vec<CohomologyClass> {
    let s = split_space();
    let gens = extension_generators();
    (0u32..8)
        .map(|mask| {
            gens.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(CohomologyClass::zero(&s, 5), |a, (_, g)| a.add(g).unwrap())
        })
        .collect()
}

#[test]
fn pullback_is_an_involution() {
    for x in all_classes() {
        assert_eq!(pullback_class(&pullback_class(&x).unwrap()).unwrap(), normal_form(&x).unwrap(), "{x}");
    }
}

#[test]
fn extension_candidates() {
    let s = split_space();
    let names = |p| -> Vec<String> { enumerate_extensions(p, true).iter().map(|g| g.alpha.to_string()).collect() };
    let b = names(Particle::Boson);
    assert_eq!(b.len(), 2);
    assert!(b.contains(&parse_class(&s, "EM").unwrap().to_string()));
    let f = names(Particle::Fermion);
    assert!(f.contains(&parse_class(&s, "Sq2E + EM").unwrap().to_string()));
    for p in [Particle::Boson, Particle::Fermion] {
        for g in enumerate_extensions(p, false) {
            assert_eq!(g.particle().unwrap(), p);
        }
    }
}

#[test]
fn fermionic_classes_are_fixed() {
    for g in enumerate_extensions(Particle::Fermion, true) {
        assert_eq!(pullback_class(&g.alpha).unwrap(), normal_form(&g.alpha).unwrap());
    }
}

#[test]
fn discrimination_is_reparameterization_invariant() {
    let mut seen = Vec::new();
    for g in enumerate_extensions(Particle::Fermion, true) {
        let st = discriminate_ST(&g).unwrap();
        let moved = BraidedTwoGroup::from_alpha(pullback_class(&g.alpha).unwrap(), g.splitting);
        assert_eq!(discriminate_ST(&moved).unwrap(), st);
        seen.push(st);
    }
    assert!(seen.contains(&StClass::S) && seen.contains(&StClass::T));
}

#[test]
fn magnetic_strings_are_bosons() {
    let v = magnetic_selfbraiding(5).unwrap();
    assert!(v.trivial);
    assert!(v.witness.contains("(4,1)"));
    assert!(matches!(magnetic_selfbraiding(4), Err(TwoGroupError::Window { .. })));
    let p = Arc::new(SpaceSpec::point());
    assert!(matches!(magnetic_selfbraiding_on(&p, 6), Err(TwoGroupError::SsMismatch(_))));
}

#[test]
fn galois_labels_ignore_enumeration_order() {
    let base = galois_options(true).unwrap();
    let mut order = StringImage::ALL;
    // all 24 orders via Heap's algorithm
    let mut c = [0usize; 4];
    let mut i = 0;
    let mut runs = 1;
    while i < 4 {
        if c[i] < i {
            if i % 2 == 0 { order.swap(0, i) } else { order.swap(c[i], i) }
            let r = galois_options_in(&order, true).unwrap();
            assert_eq!(r.orbits, base.orbits);
            assert_eq!(r.raw.len(), 6);
            runs += 1;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    assert_eq!(runs, 24);
    assert!(base.raw.iter().all(|o| o.image != StringImage::Cheshire));
}

#[test]
fn witt_endgame() {
    for c in [D5Case::Vanishes, D5Case::Nonzero] {
        let w = witt_les(c).unwrap();
        assert_eq!(w.want.to_string(), "Z_2");
    }
}

#[test]
fn group_list_is_complete() {
    let gs = abelian_groups_up_to(16);
    assert_eq!(gs.len(), 1 + 1 + 1 + 2 + 1 + 1 + 1 + 3 + 2 + 1 + 1 + 2 + 1 + 1 + 1 + 5);
    assert!(gs.iter().all(|g| g.order() <= 16));
}

#[test]
fn detectability_over_small_string_groups() {
    let models = magnetic_models(16);
    let mut flagged = 0;
    for model in &models {
        let report = detectability_scan(model).unwrap();
        assert!(!report.electron_undetectable);
        let exists = has_neutral_boson(model);
        assert_eq!(!report.undetectable.is_empty(), exists, "{model:?}");
        flagged += usize::from(exists);
    }
    assert!(models.len() > 400 && flagged > 0 && flagged < models.len(), "{} {flagged}", models.len());
}

#[test]
fn detectability_examples() {
    let z2 = FiniteAbelianGroup::new(&[2]);
    let m = InvertibleStringModel::with_closed_pairing(z2, vec![1], vec![0], None);
    assert!(detectability_scan(&m).unwrap().passes());
    let v = FiniteAbelianGroup::new(&[2, 2]);
    let mx = InvertibleStringModel::with_closed_pairing(v, vec![1, 0], vec![0, 0], None);
    assert_eq!(detectability_scan(&mx).unwrap().undetectable, [vec![0, 1]]);
    let one = InvertibleStringModel::with_closed_pairing(FiniteAbelianGroup::trivial(), vec![], vec![], None);
    let r = detectability_scan(&one).unwrap();
    assert!(r.electron_undetectable && r.undetectable.is_empty());
    let bad = InvertibleStringModel::with_closed_pairing(FiniteAbelianGroup::new(&[2]), vec![1], vec![1], None);
    assert!(matches!(detectability_scan(&bad), Err(TwoGroupError::Invariant(_))));
}

#[test]
fn symmetry_groups() {
    let r = noether_les(&NoetherInput::r(), Some(aut_r_pi0().unwrap())).unwrap();
    assert_eq!(r.pi0.unwrap().to_string(), "Z_2");
    assert!(r.pi3.is_trivial());
    let s = noether_les(&NoetherInput::s(), Some(aut_s_pi0().unwrap())).unwrap();
    assert_eq!(s.pi0.unwrap().to_string(), "Z_16");
    let mut broken = NoetherInput::r();
    broken.w[0] = forge_core::abelian::AbelianGroup::cyclic(2);
    assert!(matches!(noether_les(&broken, None), Err(TwoGroupError::Exactness(_))));
}
