//! Deterministic observations, one per manifest id. Each returns a line
//! that the manifest compares verbatim against its `expected` field.
//! Windows are fixed here, so `FORGE_WINDOW` does not change the results.

use std::sync::Arc;

use forge_core::ahss::{self, D5Case, Page, SSState, SpectrumSpec};
use forge_core::emspaces::{parse_class, z2_dim, SpaceSpec};
use forge_core::fusionalg::{
    algebra_objects, cheshire_square, is_invertible, m_square_constraint, PointedBraidedCategory, Sector,
};
use forge_core::groupcoh::{cohomology, Coefficients, FiniteAbelianGroup};
use forge_core::steenrod::{adem_reduce, adem_reduce_with, compose, Strategy};
use forge_core::twogroups::{self as tg, Particle, ReparamAction};

use crate::{ForgeError, DEFAULT_WINDOW};

pub const IDS: [&str; 10] = [
    "steenrod-relations",
    "h5-split-space",
    "autoboson-orbits",
    "bosonic-two-row",
    "fermionic-sequence",
    "magnetic-bosons",
    "rp-infinity-sh4",
    "groupcoh-oracle",
    "fusion-algebras",
    "twogroups-endgame",
];

pub fn observe(id: &str) -> Result<String, ForgeError> {
    match id {
        "steenrod-relations" => steenrod_relations(),
        "h5-split-space" => h5_split_space(),
        "autoboson-orbits" => autoboson_orbits(),
        "bosonic-two-row" => bosonic_two_row(),
        "fermionic-sequence" => fermionic_sequence(),
        "magnetic-bosons" => magnetic_bosons(),
        "rp-infinity-sh4" => rp_infinity(),
        "groupcoh-oracle" => groupcoh_oracle(),
        "fusion-algebras" => fusion_algebras(),
        "twogroups-endgame" => twogroups_endgame(),
        _ => Err(ForgeError::UnknownId(id.into())),
    }
}

fn words(len: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|w| (0..=max).map(move |i| [w.as_slice(), &[i]].concat())).collect();
    }
    out
}

fn steenrod_relations() -> Result<String, ForgeError> {
    let show = |w: &[u32]| {
        let r = adem_reduce(w);
        if r.is_zero() { "0".to_string() } else { r.to_string() }
    };
    let mut all: Vec<Vec<u32>> = (1..=4).flat_map(|l| words(l, 8)).collect();
    all.extend(words(5, 5));
    let confluent = all
        .iter()
        .filter(|w| adem_reduce_with(w, Strategy::Leftmost) == adem_reduce_with(w, Strategy::Rightmost))
        .count();
    let short: Vec<Vec<u32>> = (1..=2).flat_map(|l| words(l, 5)).collect();
    let mut triples = 0;
    let mut associative = 0;
    for a in &short {
        let a = adem_reduce(a);
        for b in 0..=8 {
            let b = adem_reduce(&[b]);
            let ab = compose(&a, &b);
            for c in &short {
                let c = adem_reduce(c);
                triples += 1;
                if compose(&ab, &c) == compose(&a, &compose(&b, &c)) {
                    associative += 1;
                }
            }
        }
    }
    Ok(format!(
        "Sq1Sq1 = {}; Sq1Sq2 = {}; Sq2Sq2 = {}; confluent on {confluent}/{} words; associative on {associative}/{triples} triples",
        show(&[1, 1]),
        show(&[1, 2]),
        show(&[2, 2]),
        all.len()
    ))
}

fn h5_split_space() -> Result<String, ForgeError> {
    let h = tg::extension_group()?;
    let mut names: Vec<String> =
        h.summands.iter().map(|s| tg::normal_form(&s.bottom).map(|c| c.to_string())).collect::<Result<_, _>>()?;
    names.sort();
    Ok(format!("{} generated by {}", h.group, names.join(", ")))
}

fn autoboson_orbits() -> Result<String, ForgeError> {
    let s = tg::split_space();
    let em = parse_class(&s, "EM")?;
    let pulled = tg::pullback_class(&em)?;
    let classes = |p| tg::enumerate_extensions(p, true).into_iter().map(|g| g.alpha).collect::<Vec<_>>();
    let bos = tg::orbits(&classes(Particle::Boson), ReparamAction::STANDARD)?;
    let fer_classes = classes(Particle::Fermion);
    let mut fixed = 0;
    for c in &fer_classes {
        if tg::pullback_class(c)? == tg::normal_form(c)? {
            fixed += 1;
        }
    }
    let fer = tg::orbits(&fer_classes, ReparamAction::STANDARD)?;
    Ok(format!(
        "EM -> {pulled}; boson orbits {}; fermion fixed {fixed}/{}; fermion orbits {}",
        bos.len(),
        fer_classes.len(),
        fer.len()
    ))
}

fn group_text(state: &SSState, n: u32) -> Result<String, ForgeError> {
    let a = ahss::abutment(state, n)?;
    Ok(a.group().map(|g| g.to_string()).unwrap_or_else(|| "?".into()))
}

fn rows(state: &SSState, page: Page) -> Result<String, ForgeError> {
    let w = state.window;
    let mut parts = Vec::new();
    for j in (0..state.rows()).rev() {
        let cells: Vec<String> =
            (0..=w.saturating_sub(j)).map(|i| state.entry(page, (i, j)).map(|e| e.to_string())).collect::<Result<_, _>>()?;
        parts.push(format!("row {j}: {}", cells.join(" ")));
    }
    let arrows: Vec<String> = state
        .nonzero_d2()
        .into_iter()
        .filter(|((a, b), (c, _))| *c <= w && a + b <= w)
        .map(|((a, b), (c, d))| format!("({a},{b})->({c},{d})"))
        .collect();
    parts.push(format!("d2: {}", arrows.join(" ")));
    Ok(parts.join(" | "))
}

fn k2(name: &str) -> Arc<SpaceSpec> {
    Arc::new(SpaceSpec::k_z2(2, name))
}

fn bosonic_two_row() -> Result<String, ForgeError> {
    let state = ahss::run(&k2("F"), &SpectrumSpec::w2row().twisted(Some("F")), DEFAULT_WINDOW, None)?;
    Ok(format!("degree 4: {}; degree 5: {}", group_text(&state, 4)?, group_text(&state, 5)?))
}

fn fermionic_sequence() -> Result<String, ForgeError> {
    let state = ahss::run(&k2("M"), &SpectrumSpec::sh().twisted(Some("M")), DEFAULT_WINDOW, None)?;
    let a4 = ahss::abutment(&state, 4)?;
    let graded: Vec<String> = a4.graded().iter().map(|e| e.to_string()).collect();
    let order = a4.order().map(|o| o.to_string()).unwrap_or_else(|| "?".into());
    let resolved = match &a4.resolution {
        ahss::Resolution::Anchored(g, _) => format!("anchored {g}"),
        ahss::Resolution::Resolved(g) => format!("resolved {g}"),
        ahss::Resolution::Unresolved { .. } => "unresolved".into(),
    };
    Ok(format!(
        "{} | degree 4: order {order}, graded {}, {resolved} | degree 5: {}",
        rows(&state, Page::E2)?,
        graded.join(" "),
        group_text(&state, 5)?
    ))
}

fn magnetic_bosons() -> Result<String, ForgeError> {
    let window = DEFAULT_WINDOW;
    let v = tg::magnetic_selfbraiding(window)?;
    let t = Arc::new(SpaceSpec::cp_infinity("t"));
    let state = ahss::run(&t, &SpectrumSpec::sh().twisted(Some("t")), window, None)?;
    Ok(format!(
        "{}; degree 5: {}; magnetic self-braiding {}",
        v.witness.split(';').next().unwrap_or_default(),
        group_text(&state, 5)?,
        if v.trivial { "trivial" } else { "nontrivial" }
    ))
}

fn rp_infinity() -> Result<String, ForgeError> {
    let x = Arc::new(SpaceSpec::k_z2(1, "x"));
    let state = ahss::run(&x, &SpectrumSpec::sh(), DEFAULT_WINDOW, None)?;
    Ok(format!("{} | degree 4: {}", rows(&state, Page::E2)?, group_text(&state, 4)?))
}

fn groupcoh_oracle() -> Result<String, ForgeError> {
    let z2 = FiniteAbelianGroup::new(&[2]);
    let h4 = cohomology(&z2, Coefficients::Cx, 4)?;
    let h3 = cohomology(&z2, Coefficients::Cx, 3)?;
    let x = Arc::new(SpaceSpec::k_z2(1, "x"));
    let mut agree = true;
    let mut betti = Vec::new();
    for n in 0..=8usize {
        let b = cohomology(&z2, Coefficients::Zm(2), n)?.two_rank();
        agree &= b == z2_dim(&x, n as u32)?;
        betti.push(b.to_string());
    }
    Ok(format!(
        "H^4(Z_2; C^×) = {h4}; H^3(Z_2; C^×) = {h3}; mod 2 Betti numbers {} {} K(Z2,1) through degree 8",
        betti.join(","),
        if agree { "agree with" } else { "differ from" }
    ))
}

fn fusion_algebras() -> Result<String, ForgeError> {
    let cat = PointedBraidedCategory::svec_squared();
    let objs = algebra_objects(&cat)?;
    let mut not_inv = Vec::new();
    let mut inv = 0;
    for o in &objs {
        if is_invertible(o, &cat)? {
            inv += 1;
        } else {
            not_inv.push(format!("({})", o.label(&cat)));
        }
    }
    let m2 = m_square_constraint(false, true);
    let m2: Vec<String> = m2.allowed.iter().map(|m| m.to_string()).collect();
    Ok(format!(
        "{} objects, {inv} invertible, not invertible {}; bosonic {}; fermionic {}; {}",
        objs.len(),
        not_inv.join(" "),
        cheshire_square(Sector::Bosonic),
        cheshire_square(Sector::Fermionic),
        m2.join(" or ")
    ))
}

fn twogroups_endgame() -> Result<String, ForgeError> {
    let g = tg::galois_options(true)?;
    let labels: Vec<&str> = g.orbits.iter().map(|o| o.label.as_str()).collect();
    let witt: Vec<String> = [D5Case::Vanishes, D5Case::Nonzero]
        .iter()
        .map(|c| tg::witt_les(*c).map(|w| format!("{} {}", c.label(), w.want)))
        .collect::<Result<_, _>>()?;
    let mut st = Vec::new();
    let mut invariant = true;
    for g in tg::enumerate_extensions(Particle::Fermion, true) {
        let c = tg::discriminate_ST(&g)?;
        let moved = tg::BraidedTwoGroup::from_alpha(tg::pullback_class(&g.alpha)?, g.splitting);
        invariant &= tg::discriminate_ST(&moved)? == c;
        st.push(format!("{} => {c}", tg::normal_form(&g.alpha)?));
    }
    let models = tg::magnetic_models(16);
    let mut agree = 0;
    for m in &models {
        let r = tg::detectability_scan(m)?;
        if r.undetectable.is_empty() != tg::has_neutral_boson(m) {
            agree += 1;
        }
    }
    Ok(format!(
        "galois {} raw, orbits {}; witt {}; {}, {}; detectability agrees on {agree}/{} models",
        g.raw.len(),
        labels.join(" "),
        witt.join(", "),
        st.join(", "),
        if invariant { "reparameterization invariant" } else { "not invariant" },
        models.len()
    ))
}
