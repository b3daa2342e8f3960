use std::sync::Arc;

use forge_core::emspaces::{cup, sq_act, z2_basis, z2_dim, CohomologyClass, SpaceSpec};
use forge_core::steenrod::{adem_reduce, adem_reduce_with, compose, SqMonomial, SteenrodElement, Strategy};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn word(rng: &mut ChaCha8Rng) -> Vec<u32> {
    let len = rng.gen_range(1..=4);
    (0..len).map(|_| rng.gen_range(0..=8)).collect()
}

fn sum(terms: &[&[u32]]) -> SteenrodElement {
    terms.iter().fold(SteenrodElement::zero(), |acc, t| {
        acc.add(&SteenrodElement::from_admissible(SqMonomial::new(t))).unwrap()
    })
}

#[test]
fn hand_checked_relations() {
    assert!(adem_reduce(&[1, 1]).is_zero());
    assert_eq!(adem_reduce(&[1, 2]), sum(&[&[3]]));
    assert_eq!(adem_reduce(&[2, 2]), sum(&[&[3, 1]]));
    assert_eq!(adem_reduce(&[2, 3]), sum(&[&[5], &[4, 1]]));
    assert_eq!(adem_reduce(&[3, 3]), sum(&[&[5, 1]]));
}

#[test]
fn confluence_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let w = word(&mut rng);
        let l = adem_reduce_with(&w, Strategy::Leftmost);
        assert_eq!(l, adem_reduce_with(&w, Strategy::Rightmost), "{w:?}");
        assert!(l.terms().all(|m| m.is_admissible()));
        if let Some(d) = l.degree() {
            assert_eq!(d, w.iter().sum::<u32>());
        }
    }
}

#[test]
fn associativity_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let (a, b, c) = (word(&mut rng), word(&mut rng), word(&mut rng));
        if a.len() + b.len() + c.len() > 6 {
            continue;
        }
        let (a, b, c) = (adem_reduce(&a), adem_reduce(&b), adem_reduce(&c));
        assert_eq!(compose(&compose(&a, &b), &c), compose(&a, &compose(&b, &c)));
    }
}

#[test]
fn reduction_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..10_000 {
        let r = adem_reduce(&word(&mut rng));
        for m in r.terms() {
            assert_eq!(adem_reduce(m.indices()), SteenrodElement::from_admissible(m.clone()));
        }
    }
}

proptest! {
    #[test]
    fn concatenation_matches_composition(a in prop::collection::vec(0u32..=8, 1..3), b in prop::collection::vec(0u32..=8, 1..3)) {
        let whole: Vec<u32> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(adem_reduce(&whole), compose(&adem_reduce(&a), &adem_reduce(&b)));
    }
}

fn spaces() -> Vec<Arc<SpaceSpec>> {
    ["K(Z2,1;x)", "K(Z2,2;M)", "K(Z2,3;E)xK(Z2,2;M)", "K(Z2,1;x)xK(Z,2;t)"]
        .iter()
        .map(|s| Arc::new(SpaceSpec::parse(s).unwrap()))
        .collect()
}

fn classes(s: &Arc<SpaceSpec>, upto: u32) -> Vec<CohomologyClass> {
    (1..=upto).flat_map(|d| z2_basis(s, d).unwrap()).collect()
}

#[test]
fn bockstein_squares_to_zero() {
    for s in spaces() {
        for x in classes(&s, 7) {
            assert!(sq_act(1, &sq_act(1, &x)).is_zero(), "{x}");
        }
    }
}

#[test]
fn instability() {
    for s in spaces() {
        for x in classes(&s, 6) {
            let n = x.degree();
            assert!(sq_act(n + 1, &x).is_zero());
            assert_eq!(sq_act(n, &x), cup(&x, &x).unwrap());
            assert_eq!(sq_act(0, &x), x);
        }
    }
}

#[test]
fn cartan_formula() {
    for s in spaces() {
        let cs = classes(&s, 3);
        for x in &cs {
            for y in &cs {
                for k in 0..=4 {
                    let lhs = sq_act(k, &cup(x, y).unwrap());
                    let mut rhs = CohomologyClass::zero(&s, x.degree() + y.degree() + k);
                    for i in 0..=k {
                        rhs = rhs.add(&cup(&sq_act(i, x), &sq_act(k - i, y)).unwrap()).unwrap();
                    }
                    assert_eq!(lhs, rhs, "Sq{k}({x}·{y})");
                }
            }
        }
    }
}

#[test]
fn kunneth_dimensions() {
    let a = Arc::new(SpaceSpec::k_z2(3, "E"));
    let b = Arc::new(SpaceSpec::k_z2(2, "M"));
    let ab = Arc::new(SpaceSpec::parse("K(Z2,3;E)xK(Z2,2;M)").unwrap());
    for n in 0..=9 {
        let conv: usize = (0..=n).map(|i| z2_dim(&a, i).unwrap() * z2_dim(&b, n - i).unwrap()).sum();
        assert_eq!(z2_dim(&ab, n).unwrap(), conv, "degree {n}");
    }
}

#[test]
fn rp_infinity_has_one_class_per_degree() {
    let x = Arc::new(SpaceSpec::k_z2(1, "x"));
    for n in 0..=12 {
        assert_eq!(z2_dim(&x, n).unwrap(), 1);
    }
}
