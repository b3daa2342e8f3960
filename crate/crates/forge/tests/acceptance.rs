use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use forge::checks;
use forge::manifest::Manifest;
use forge_core::abelian::AbelianGroup;
use forge_core::ahss::{self, D5Case, Page, Resolution, SpectrumSpec};
use forge_core::emspaces::{parse_class, z2_dim, SpaceSpec};
use forge_core::fusionalg::{
    algebra_objects, cheshire_square, is_invertible, m_square_constraint, MSquare, PointedBraidedCategory, Sector,
};
use forge_core::groupcoh::{cohomology, Coefficients, FiniteAbelianGroup};
use forge_core::steenrod::{adem_reduce, adem_reduce_with, compose, SqMonomial, SteenrodElement, Strategy};
use forge_core::twogroups::{self as tg, Particle, ReparamAction, StClass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Box<dyn Fn() -> Result<(), String>>;

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok { Ok(()) } else { Err(what.into()) }
}

fn manifest_agrees(id: &str) -> Result<(), String> {
    let m = Manifest::builtin();
    let e = m.entries.iter().find(|e| e.id == id).ok_or(format!("{id} missing from manifest"))?;
    let got = checks::observe(id).map_err(|e| e.to_string())?;
    ensure(got == e.expected, format!("{id}: {got}"))
}

fn el(ms: &[&[u32]]) -> SteenrodElement {
    ms.iter().fold(SteenrodElement::zero(), |a, m| a.add(&SteenrodElement::from_admissible(SqMonomial::new(m))).unwrap())
}

fn c1() -> Result<(), String> {
    ensure(adem_reduce(&[1, 1]).is_zero(), "Sq1Sq1")?;
    ensure(adem_reduce(&[1, 2]) == el(&[&[3]]), "Sq1Sq2")?;
    ensure(adem_reduce(&[2, 2]) == el(&[&[3, 1]]), "Sq2Sq2")?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let word = |rng: &mut ChaCha8Rng| -> Vec<u32> { (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..=8)).collect() };
    for _ in 0..10_000 {
        let w = word(&mut rng);
        ensure(adem_reduce_with(&w, Strategy::Leftmost) == adem_reduce_with(&w, Strategy::Rightmost), format!("{w:?}"))?;
        let (a, b, c) = (adem_reduce(&word(&mut rng)), adem_reduce(&word(&mut rng)), adem_reduce(&w));
        ensure(compose(&compose(&a, &b), &c) == compose(&a, &compose(&b, &c)), "associativity")?;
    }
    manifest_agrees("steenrod-relations")
}

fn c2() -> Result<(), String> {
    let h = tg::extension_group().map_err(|e| e.to_string())?;
    ensure(h.group == AbelianGroup::from_orders(&[2, 2, 2]), h.group.to_string())?;
    let s = tg::split_space();
    let mut named: Vec<String> = h.summands.iter().map(|m| tg::normal_form(&m.bottom).unwrap().to_string()).collect();
    named.sort();
    let mut want: Vec<String> = ["Sq2E", "EM", "Sq2Sq1M"].iter().map(|t| parse_class(&s, t).unwrap().to_string()).collect();
    want.sort();
    ensure(named == want, format!("{named:?}"))?;
    manifest_agrees("h5-split-space")
}

fn c3() -> Result<(), String> {
    let s = tg::split_space();
    let em = parse_class(&s, "EM").unwrap();
    ensure(tg::pullback_class(&em).unwrap() == parse_class(&s, "EM + Sq2Sq1M").unwrap(), "pullback of EM")?;
    let classes = |p| tg::enumerate_extensions(p, true).into_iter().map(|g| g.alpha).collect::<Vec<_>>();
    ensure(tg::orbits(&classes(Particle::Boson), ReparamAction::STANDARD).unwrap().len() == 1, "boson orbits")?;
    for c in classes(Particle::Fermion) {
        ensure(tg::pullback_class(&c).unwrap() == tg::normal_form(&c).unwrap(), "fermionic class moved")?;
    }
    ensure(tg::orbits(&classes(Particle::Fermion), ReparamAction::STANDARD).unwrap().len() == 2, "fermion orbits")?;
    manifest_agrees("autoboson-orbits")
}

fn k2() -> Arc<SpaceSpec> {
    Arc::new(SpaceSpec::k_z2(2, "M"))
}

fn c4() -> Result<(), String> {
    let s = ahss::run(&k2(), &SpectrumSpec::w2row().twisted(Some("M")), 6, None).map_err(|e| e.to_string())?;
    ensure(ahss::abutment(&s, 4).unwrap().group() == Some(&AbelianGroup::cyclic(2)), "degree 4")?;
    ensure(ahss::abutment(&s, 5).unwrap().group().is_some_and(|g| g.is_trivial()), "degree 5")?;
    manifest_agrees("bosonic-two-row")
}

fn c5() -> Result<(), String> {
    let s = ahss::run(&k2(), &SpectrumSpec::sh().twisted(Some("M")), 6, None).map_err(|e| e.to_string())?;
    let a4 = ahss::abutment(&s, 4).unwrap();
    ensure(a4.order() == Some(16), "order 16")?;
    let g: Vec<String> = a4.graded().iter().map(|e| e.to_string()).collect();
    ensure(g == ["Z_4", "Z_2", "Z_2"], format!("{g:?}"))?;
    ensure(matches!(a4.resolution, Resolution::Anchored(ref z, _) if *z == AbelianGroup::cyclic(16)), "Z_16")?;
    ensure(ahss::abutment(&s, 5).unwrap().group() == Some(&AbelianGroup::cyclic(2)), "degree 5")?;
    let page = ahss::emit_page(&s, Page::E2).unwrap();
    for line in ["  2 | Z_2  0    Z_2  Z_2  Z_2", "  0 | C^×  0    Z_2  0    Z_4  Z_2    Z_2"] {
        ensure(page.contains(line), format!("E2 page lacks {line:?}:\n{page}"))?;
    }
    manifest_agrees("fermionic-sequence")
}

fn c6() -> Result<(), String> {
    let v = tg::magnetic_selfbraiding(6).map_err(|e| e.to_string())?;
    ensure(v.trivial && v.witness.contains("(4,1)"), v.witness)?;
    manifest_agrees("magnetic-bosons")
}

fn c7() -> Result<(), String> {
    let x = Arc::new(SpaceSpec::k_z2(1, "x"));
    let s = ahss::run(&x, &SpectrumSpec::sh(), 6, None).map_err(|e| e.to_string())?;
    ensure(ahss::abutment(&s, 4).unwrap().group().is_some_and(|g| g.is_trivial()), "degree 4")?;
    let row = |j: u32, upto: u32| -> Vec<String> { (0..=upto).map(|i| s.entry(Page::E2, (i, j)).unwrap().to_string()).collect() };
    ensure(row(0, 6) == ["C^×", "Z_2", "0", "Z_2", "0", "Z_2", "0"], "row 0")?;
    ensure(row(1, 5) == vec!["Z_2"; 6] && row(2, 4) == vec!["Z_2"; 5], "rows 1 and 2")?;
    let mut d2 = s.nonzero_d2();
    d2.retain(|(_, t)| t.0 <= 6);
    d2.sort();
    ensure(d2 == [((2, 2), (4, 1)), ((3, 1), (5, 0)), ((3, 2), (5, 1))], format!("{d2:?}"))?;
    manifest_agrees("rp-infinity-sh4")
}

fn c8() -> Result<(), String> {
    let z2 = FiniteAbelianGroup::new(&[2]);
    ensure(cohomology(&z2, Coefficients::Cx, 4).unwrap().is_trivial(), "H^4")?;
    ensure(cohomology(&z2, Coefficients::Cx, 3).unwrap() == AbelianGroup::cyclic(2), "H^3")?;
    let x = Arc::new(SpaceSpec::k_z2(1, "x"));
    for n in 0..=8 {
        let b = cohomology(&z2, Coefficients::Zm(2), n).unwrap().two_rank();
        ensure(b == z2_dim(&x, n as u32).unwrap(), format!("Betti {n}"))?;
    }
    manifest_agrees("groupcoh-oracle")
}

fn c9() -> Result<(), String> {
    let cat = PointedBraidedCategory::svec_squared();
    let objs = algebra_objects(&cat).map_err(|e| e.to_string())?;
    let inv = objs.iter().filter(|o| is_invertible(o, &cat).unwrap()).count();
    ensure(objs.len() == 6 && inv == 4, format!("{} objects, {inv} invertible", objs.len()))?;
    ensure(cheshire_square(Sector::Bosonic).terms == ["c", "c"], "bosonic c ⊗ c")?;
    ensure(cheshire_square(Sector::Fermionic).terms == ["1"], "fermionic c ⊗ c")?;
    ensure(m_square_constraint(false, true).allowed == [MSquare::One], "m²")?;
    manifest_agrees("fusion-algebras")
}

fn c10() -> Result<(), String> {
    let g = tg::galois_options(true).map_err(|e| e.to_string())?;
    let labels: Vec<&str> = g.orbits.iter().map(|o| o.label.as_str()).collect();
    ensure(g.raw.len() == 6 && labels == ["R", "S", "T"], format!("{labels:?}"))?;
    for c in [D5Case::Vanishes, D5Case::Nonzero] {
        ensure(tg::witt_les(c).unwrap().want == AbelianGroup::cyclic(2), c.label())?;
    }
    let s = tg::split_space();
    let st = |t: &str| {
        tg::discriminate_ST(&tg::BraidedTwoGroup::from_alpha(parse_class(&s, t).unwrap(), tg::Splitting::MagneticBosons))
            .unwrap()
    };
    ensure(st("Sq2E + EM") == StClass::S && st("Sq2E + EM + Sq2Sq1M") == StClass::T, "S/T")?;
    for m in tg::magnetic_models(16) {
        let r = tg::detectability_scan(&m).unwrap();
        ensure(r.undetectable.is_empty() != tg::has_neutral_boson(&m), format!("{m:?}"))?;
    }
    manifest_agrees("twogroups-endgame")
}

fn c11() -> Result<(), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_forge")).arg("reproduce").output().map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success(), format!("exit {:?}\n{text}", out.status.code()))?;
    let passes = text.lines().filter(|l| l.starts_with("PASS ")).count();
    ensure(passes == Manifest::builtin().entries.len() && passes >= 9, format!("{passes} PASS lines"))?;
    ensure(took < Duration::from_secs(60), format!("took {took:?}"))
}

fn main() {
    let criteria: Vec<(&str, Check)> = vec![
        ("Steenrod relations, confluence and associativity", Box::new(c1)),
        ("H^5 of the split space is Z_2^3 on the named generators", Box::new(c2)),
        ("shift pullback and orbit counts", Box::new(c3)),
        ("two-row sequence: degree 4 Z_2, degree 5 0", Box::new(c4)),
        ("fermionic sequence: page, Z_16 and Z_2", Box::new(c5)),
        ("magnetic strings are bosons", Box::new(c6)),
        ("untwisted sequence over K(Z2,1): degree 4 vanishes", Box::new(c7)),
        ("group cohomology oracle", Box::new(c8)),
        ("algebra objects and fusion rules", Box::new(c9)),
        ("Galois options, Witt sequence, S/T and detectability", Box::new(c10)),
        ("forge reproduce passes within 60 s", Box::new(c11)),
    ];
    let mut failed = Vec::new();
    for (n, (what, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS criterion {}: {what}", n + 1),
            Err(why) => {
                println!("FAIL criterion {}: {what}: {why}", n + 1);
                failed.push(n + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria {failed:?}");
        std::process::exit(1);
    }
}
