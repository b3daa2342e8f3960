//! Braided 2-groups with `π2 = {1, e}` and their extension classes.
//!
//! A split presentation lives on `K(Z_2,3;E) × K(Z_2,2;M)` and is fixed by
//! `α ∈ H^5(-; C^×) = Z_2^3`, spanned by `Sq2E`, `EM`, `Sq2Sq1M`. Classes
//! are kept as sums of summand bottoms, so equality is equality in `C^×`
//! cohomology.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::abelian::{is_exact, AbelianGroup, FiniteHom};
use crate::ahss::{self, AhssError, D5Case, Page, SpectrumSpec};
use crate::emspaces::{cx_group, parse_class, sq_act, substitute, CohomologyClass, CxGroupEntry, EmError, SpaceSpec};
use crate::groupcoh::{abelian_groups_up_to, cohomology, Coefficients, FiniteAbelianGroup, GroupCohError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwoGroupError {
    #[error(transparent)]
    Em(#[from] EmError),
    #[error(transparent)]
    Ahss(#[from] AhssError),
    #[error(transparent)]
    Group(#[from] GroupCohError),
    #[error("S/T discrimination needs a fermionic 2-group")]
    BosonicInput,
    #[error("window {window} is too small, need total degree {need}")]
    Window { window: u32, need: u32 },
    #[error("spectral sequence disagrees: {0}")]
    SsMismatch(String),
    #[error("invalid string model: {0}")]
    Invariant(String),
    #[error("inconsistent exactness: {0}")]
    Exactness(String),
    #[error("class {0} restricted to E = 0 is neither 0 nor Sq2Sq1M")]
    Unrecognized(String),
}

/// `K(Z_2,3;E) × K(Z_2,2;M)`.
pub fn split_space() -> Arc<SpaceSpec> {
    Arc::new(SpaceSpec::k_z2(3, "E").product(&SpaceSpec::k_z2(2, "M")).expect("distinct names"))
}

/// `H^5(K(Z_2,3) × K(Z_2,2); C^×)`.
pub fn extension_group() -> Result<CxGroupEntry, TwoGroupError> {
    Ok(cx_group(&split_space(), 5)?)
}

/// The generators `Sq2E`, `EM`, `Sq2Sq1M`.
pub fn extension_generators() -> [CohomologyClass; 3] {
    let s = split_space();
    ["Sq2E", "EM", "Sq2Sq1M"].map(|t| parse_class(&s, t).expect("fixed expression"))
}

/// Rewrites `x` as the sum of `Sq2E`, `EM`, `Sq2Sq1M` with the same image
/// in `C^×` cohomology; classes on other spaces or degrees get the summand
/// bottoms instead.
pub fn normal_form(x: &CohomologyClass) -> Result<CohomologyClass, TwoGroupError> {
    let h = cx_group(x.space(), x.degree())?;
    if x.degree() != 5 || **x.space() != *split_space() {
        return Ok(h.canonical(x)?);
    }
    let gens = extension_generators();
    let target = h.reduce(x)?;
    for mask in 0u32..8 {
        let mut y = CohomologyClass::zero(x.space(), 5);
        for (i, g) in gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                y = y.add(g)?;
            }
        }
        if h.reduce(&y)? == target {
            return Ok(y);
        }
    }
    Err(TwoGroupError::SsMismatch("generators do not span H^5".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Particle {
    Boson,
    Fermion,
}

impl Particle {
    pub fn parse(s: &str) -> Option<Particle> {
        match s {
            "boson" | "bosonic" => Some(Particle::Boson),
            "fermion" | "fermionic" => Some(Particle::Fermion),
            _ => None,
        }
    }
}

impl fmt::Display for Particle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Particle::Boson => "boson",
            Particle::Fermion => "fermion",
        })
    }
}

/// Why `{1,e}[3].{1,m}[2]` may be treated as a product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Splitting {
    /// Magnetic strings are bosons, see [`magnetic_selfbraiding`].
    MagneticBosons,
    /// `β_{m,m}` trivial, taken as given for the bosonic case.
    BosonicClaim,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedTwoGroup {
    pub pi1: Vec<&'static str>,
    pub pi2: Vec<&'static str>,
    pub splitting: Splitting,
    pub alpha: CohomologyClass,
}

impl BraidedTwoGroup {
    /// Reads the statistics of `e` off the `Sq2E` coefficient.
    pub fn particle(&self) -> Result<Particle, TwoGroupError> {
        let h = extension_group()?;
        let [sq2e, _, _] = extension_generators();
        let c = h.canonical(&self.alpha)?;
        let e_part = substitute(&c, &split_space(), &[("M", CohomologyClass::zero(&split_space(), 2))])?;
        Ok(if h.canonical(&e_part)? == sq2e { Particle::Fermion } else { Particle::Boson })
    }

    pub fn from_alpha(alpha: CohomologyClass, splitting: Splitting) -> BraidedTwoGroup {
        BraidedTwoGroup { pi1: vec!["1", "m"], pi2: vec!["1", "e"], splitting, alpha }
    }
}

/// Candidates for `α`: the `Sq2E` coefficient is fixed by `particle`, the
/// `EM` coefficient is forced to 1 when `detectable`, and `Sq2Sq1M` is free.
pub fn enumerate_extensions(particle: Particle, detectable: bool) -> Vec<BraidedTwoGroup> {
    let s = split_space();
    let [sq2e, em, sq2sq1m] = extension_generators();
    let splitting = match particle {
        Particle::Boson => Splitting::BosonicClaim,
        Particle::Fermion => Splitting::MagneticBosons,
    };
    let ems: &[bool] = if detectable { &[true] } else { &[false, true] };
    let mut out = Vec::new();
    for &with_em in ems {
        for with_k in [false, true] {
            let mut a = CohomologyClass::zero(&s, 5);
            for (on, g) in [(particle == Particle::Fermion, &sq2e), (with_em, &em), (with_k, &sq2sq1m)] {
                if on {
                    a = a.add(g).expect("degree 5");
                }
            }
            out.push(BraidedTwoGroup::from_alpha(a, splitting));
        }
    }
    out
}

/// `α ↦ α(E + Sq1M, M)`, reduced to its canonical representative.
pub fn pullback_class(alpha: &CohomologyClass) -> Result<CohomologyClass, TwoGroupError> {
    let s = alpha.space().clone();
    let e = CohomologyClass::fundamental(&s, "E")?;
    let m = CohomologyClass::fundamental(&s, "M")?;
    let image = e.add(&sq_act(1, &m))?;
    normal_form(&substitute(alpha, &s, &[("E", image)])?)
}

/// Generators of the reparameterization group acting on `α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReparamAction {
    /// `(E, M) ↦ (E + Sq1M, M)`.
    pub shift: bool,
    /// `m ↔ m'`, anchored; it fixes every class in the split presentation.
    pub magnetic_exchange: bool,
}

impl ReparamAction {
    pub const STANDARD: ReparamAction = ReparamAction { shift: true, magnetic_exchange: true };

    fn images(&self, x: &CohomologyClass) -> Result<Vec<CohomologyClass>, TwoGroupError> {
        let mut out = Vec::new();
        if self.shift {
            out.push(pullback_class(x)?);
        }
        if self.magnetic_exchange {
            out.push(x.clone());
        }
        Ok(out)
    }
}

/// Partitions `classes` into orbits of the group generated by `action`.
/// Orbits keep the input order of their first members.
pub fn orbits(classes: &[CohomologyClass], action: ReparamAction) -> Result<Vec<Vec<CohomologyClass>>, TwoGroupError> {
    if classes.is_empty() {
        return Ok(Vec::new());
    }
    let canon: Vec<CohomologyClass> = classes.iter().map(normal_form).collect::<Result<_, _>>()?;
    // union-find over canonical forms, closing under the generators
    let mut nodes: Vec<CohomologyClass> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut parent: Vec<usize> = Vec::new();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut queue: Vec<CohomologyClass> = canon.clone();
    let mut add = |c: &CohomologyClass, nodes: &mut Vec<CohomologyClass>, parent: &mut Vec<usize>| -> (usize, bool) {
        let key = c.to_string();
        if let Some(&i) = index.get(&key) {
            return (i, false);
        }
        index.insert(key, nodes.len());
        nodes.push(c.clone());
        parent.push(parent.len());
        (nodes.len() - 1, true)
    };
    for c in &canon {
        add(c, &mut nodes, &mut parent);
    }
    while let Some(c) = queue.pop() {
        let (i, _) = add(&c, &mut nodes, &mut parent);
        for img in action.images(&c)? {
            let (j, fresh) = add(&img, &mut nodes, &mut parent);
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
            }
            if fresh {
                queue.push(img);
            }
        }
    }
    let mut groups: Vec<(usize, Vec<CohomologyClass>)> = Vec::new();
    for (c, orig) in canon.iter().zip(classes) {
        let i = nodes.iter().position(|n| n == c).expect("inserted");
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, v)) => v.push(orig.clone()),
            None => groups.push((r, vec![orig.clone()])),
        }
    }
    Ok(groups.into_iter().map(|(_, v)| v).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StClass {
    S,
    T,
}

impl fmt::Display for StClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StClass::S => "S",
            StClass::T => "T",
        })
    }
}

/// Restricts `α` to `E = 0`: trivial gives `S`, `Sq2Sq1M` gives `T`.
#[allow(non_snake_case)]
pub fn discriminate_ST(g: &BraidedTwoGroup) -> Result<StClass, TwoGroupError> {
    if g.particle()? != Particle::Fermion {
        return Err(TwoGroupError::BosonicInput);
    }
    let s = g.alpha.space().clone();
    let h = cx_group(&s, 5)?;
    let restricted = substitute(&g.alpha, &s, &[("E", CohomologyClass::zero(&s, 3))])?;
    let r = h.canonical(&restricted)?;
    if r.is_zero() {
        return Ok(StClass::S);
    }
    if r == h.canonical(&parse_class(&s, "Sq2Sq1M")?)? {
        return Ok(StClass::T);
    }
    Err(TwoGroupError::Unrecognized(g.alpha.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagneticVerdict {
    pub trivial: bool,
    pub witness: String,
}

/// Magnetic strings are bosons: over `K(Z,2;t)` with twist `t`, the
/// `(4,1)` entry must support a nonzero `d2` and `SH^5` must vanish.
pub fn magnetic_selfbraiding(window: u32) -> Result<MagneticVerdict, TwoGroupError> {
    magnetic_selfbraiding_on(&Arc::new(SpaceSpec::cp_infinity("t")), window)
}

/// Same check over any base; the twist is its first factor, if any.
pub fn magnetic_selfbraiding_on(base: &Arc<SpaceSpec>, window: u32) -> Result<MagneticVerdict, TwoGroupError> {
    if window < 5 {
        return Err(TwoGroupError::Window { window, need: 5 });
    }
    let twist = base.factors().first().map(|f| f.name.clone());
    let spec = SpectrumSpec::sh().twisted(twist.as_deref());
    let state = ahss::run(base, &spec, window, None)?;
    let e2 = state.page(Page::E2)?;
    if e2.get(&(4, 1)).is_none_or(|e| e.is_zero()) {
        return Err(TwoGroupError::SsMismatch("no (4,1) entry on E2".into()));
    }
    if !state.nonzero_d2().iter().any(|(src, _)| *src == (4, 1)) {
        return Err(TwoGroupError::SsMismatch("d2 vanishes on (4,1)".into()));
    }
    let deg5 = ahss::abutment(&state, 5)?;
    if deg5.group().is_none_or(|g| !g.is_trivial()) {
        return Err(TwoGroupError::SsMismatch(format!("SH^5 is {deg5}")));
    }
    Ok(MagneticVerdict { trivial: true, witness: "d2 nonzero on (4,1); SH^5 = 0".into() })
}

/// Strings `A` with linking against `e`, self-braiding `s: A -> {1, e}`
/// (as bits) and an optional Cheshire string `c`.
///
/// `link` and `self_braiding` are given on generators of `group`;
/// `pairing[i][j]` is the full braiding of generators `i` and `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvertibleStringModel {
    pub group: FiniteAbelianGroup,
    pub link: Vec<u8>,
    pub self_braiding: Vec<u8>,
    pub pairing: Vec<Vec<u8>>,
    pub cheshire: Option<Vec<u64>>,
}

impl InvertibleStringModel {
    /// Fills in the pairing from `b(x, y) = s(x) link(y)` for neutral `x`;
    /// pairs of magnetic generators braid trivially.
    pub fn with_closed_pairing(
        group: FiniteAbelianGroup,
        link: Vec<u8>,
        self_braiding: Vec<u8>,
        cheshire: Option<Vec<u64>>,
    ) -> InvertibleStringModel {
        let k = group.rank();
        let mut pairing = vec![vec![0u8; k]; k];
        for i in 0..k {
            for j in 0..k {
                let (li, lj) = (link.get(i).copied().unwrap_or(0), link.get(j).copied().unwrap_or(0));
                let (si, sj) = (self_braiding.get(i).copied().unwrap_or(0), self_braiding.get(j).copied().unwrap_or(0));
                pairing[i][j] = if li == 0 {
                    si & lj
                } else if lj == 0 {
                    sj & li
                } else {
                    0
                };
            }
        }
        InvertibleStringModel { group, link, self_braiding, pairing, cheshire }
    }

    pub fn link(&self, x: &[u64]) -> u8 {
        (x.iter().zip(&self.link).map(|(a, l)| a * u64::from(*l)).sum::<u64>() % 2) as u8
    }

    /// `s(x) = Σ x_i s_i + Σ_{i<j} x_i x_j b_ij + Σ C(x_i, 2) b_ii`.
    pub fn self_braiding(&self, x: &[u64]) -> u8 {
        let k = x.len();
        let mut acc = 0u64;
        for i in 0..k {
            acc += x[i] * u64::from(self.self_braiding[i]);
            acc += x[i] * x[i].saturating_sub(1) / 2 * u64::from(self.pairing[i][i]);
            for j in i + 1..k {
                acc += x[i] * x[j] * u64::from(self.pairing[i][j]);
            }
        }
        (acc % 2) as u8
    }

    pub fn full_braiding(&self, x: &[u64], y: &[u64]) -> u8 {
        self.self_braiding(&self.group.add(x, y)) ^ self.self_braiding(x) ^ self.self_braiding(y)
    }

    pub fn validate(&self) -> Result<(), TwoGroupError> {
        let bad = |s: String| Err(TwoGroupError::Invariant(s));
        let k = self.group.rank();
        if self.group.order() > 16 {
            return bad(format!("|A| = {} exceeds the scan bound 16", self.group.order()));
        }
        if self.link.len() != k || self.self_braiding.len() != k || self.pairing.len() != k {
            return bad(format!("expected {k} generator values"));
        }
        if self.pairing.iter().any(|r| r.len() != k) {
            return bad("pairing must be square".into());
        }
        if self.link.iter().chain(&self.self_braiding).chain(self.pairing.iter().flatten()).any(|&v| v > 1) {
            return bad("values are bits".into());
        }
        for i in 0..k {
            for j in 0..k {
                if self.pairing[i][j] != self.pairing[j][i] {
                    return bad("pairing is not symmetric".into());
                }
            }
        }
        let els = self.group.elements();
        for (i, &d) in self.group.factors().iter().enumerate() {
            if d % 2 == 1 && (self.link[i] != 0 || self.self_braiding[i] != 0 || self.pairing[i].iter().any(|&b| b != 0)) {
                return bad(format!("generator {i} has odd order {d}"));
            }
            let mut dg = vec![0u64; k];
            dg[i] = d;
            if self.self_braiding(&dg) != 0 {
                return bad(format!("self-braiding is not well defined on generator {i}"));
            }
        }
        for x in &els {
            for y in &els {
                if self.link(x) == 0 && self.full_braiding(x, y) != self.self_braiding(x) & self.link(y) {
                    return bad(format!("neutral string {x:?} braids with {y:?} against b(x,y) = s(x) link(y)"));
                }
            }
            if self.link(x) == 1 && self.self_braiding(x) != 0 {
                return bad(format!("magnetic string {x:?} is not a boson"));
            }
        }
        if let Some(c) = &self.cheshire {
            if c.len() != k {
                return bad("cheshire has the wrong length".into());
            }
            let c = self.group.add(c, &self.group.zero());
            if c == self.group.zero() {
                return bad("cheshire must be nontrivial".into());
            }
            if self.link(&c) != 0 {
                return bad("cheshire must be magnetically neutral".into());
            }
            if self.self_braiding(&c) != 1 {
                return bad("cheshire must self-braid to e".into());
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetectabilityReport {
    /// Strings outside `{1, c}` that braid trivially with `e` and with every string.
    pub undetectable: Vec<Vec<u64>>,
    /// No magnetic string, so `e` links trivially with everything.
    pub electron_undetectable: bool,
}

impl DetectabilityReport {
    pub fn passes(&self) -> bool {
        self.undetectable.is_empty() && !self.electron_undetectable
    }
}

pub fn detectability_scan(model: &InvertibleStringModel) -> Result<DetectabilityReport, TwoGroupError> {
    model.validate()?;
    let g = &model.group;
    let zero = g.zero();
    let c = model.cheshire.as_ref().map(|c| g.add(c, &zero));
    let els = g.elements();
    let undetectable = els
        .iter()
        .filter(|x| **x != zero && Some(*x) != c.as_ref())
        .filter(|x| model.link(x) == 0)
        .filter(|x| els.iter().all(|y| model.full_braiding(x, y) == 0))
        .cloned()
        .collect();
    let electron_undetectable = els.iter().all(|x| model.link(x) == 0);
    Ok(DetectabilityReport { undetectable, electron_undetectable })
}

/// Whether some string outside `{1, c}` is magnetically neutral and bosonic.
pub fn has_neutral_boson(model: &InvertibleStringModel) -> bool {
    let g = &model.group;
    let zero = g.zero();
    let c = model.cheshire.as_ref().map(|c| g.add(c, &zero));
    g.elements()
        .iter()
        .any(|x| *x != zero && Some(x) != c.as_ref() && model.link(x) == 0 && model.self_braiding(x) == 0)
}

/// Every valid model with at least one magnetic string on an abelian group
/// of order at most `max_order`, with the closed pairing.
pub fn magnetic_models(max_order: u64) -> Vec<InvertibleStringModel> {
    let mut out = Vec::new();
    for g in abelian_groups_up_to(max_order) {
        let d = g.factors().to_vec();
        let k = d.len();
        let even: Vec<usize> = (0..k).filter(|&i| d[i] % 2 == 0).collect();
        let mut cheshires: Vec<Option<Vec<u64>>> = vec![None];
        cheshires.extend(g.elements().into_iter().skip(1).map(Some));
        for link_mask in 1u32..(1 << even.len()) {
            let mut link = vec![0u8; k];
            for (b, &i) in even.iter().enumerate() {
                link[i] = (link_mask >> b & 1) as u8;
            }
            let neutral: Vec<usize> = even.iter().copied().filter(|&i| link[i] == 0).collect();
            for self_mask in 0u32..(1 << neutral.len()) {
                let mut sb = vec![0u8; k];
                for (b, &i) in neutral.iter().enumerate() {
                    sb[i] = (self_mask >> b & 1) as u8;
                }
                for c in &cheshires {
                    let m = InvertibleStringModel::with_closed_pairing(g.clone(), link.clone(), sb.clone(), c.clone());
                    if m.validate().is_ok() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Homotopy groups of `B^×` fed to the Noether sequence, with
/// `π0 W^1, π0 W^2, π0 W^3` of a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoetherInput {
    pub pi0: AbelianGroup,
    pub pi1: AbelianGroup,
    pub pi2: AbelianGroup,
    pub w: [AbelianGroup; 3],
}

impl NoetherInput {
    pub fn r() -> NoetherInput {
        NoetherInput {
            pi0: AbelianGroup::cyclic(2),
            pi1: AbelianGroup::cyclic(2),
            pi2: AbelianGroup::units(1),
            w: [AbelianGroup::trivial(), AbelianGroup::trivial(), AbelianGroup::trivial()],
        }
    }

    pub fn s() -> NoetherInput {
        NoetherInput { pi0: AbelianGroup::from_orders(&[2, 2]), ..NoetherInput::r() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroups {
    /// Only known from an anchor.
    pub pi0: Option<AbelianGroup>,
    pub pi1: AbelianGroup,
    pub pi2: AbelianGroup,
    pub pi3: AbelianGroup,
    pub notes: Vec<String>,
}

/// With `π0 W^p(pt) = 0` for `p = 1, 2, 3`, exactness gives
/// `π_{k+1} Aut ≅ π_k B^×` for `k = 0, 1` and `π3 Aut = π2 B^× / C^× = 0`.
pub fn noether_les(input: &NoetherInput, pi0_anchor: Option<AbelianGroup>) -> Result<SymmetryGroups, TwoGroupError> {
    for (p, w) in input.w.iter().enumerate() {
        if !w.is_trivial() {
            return Err(TwoGroupError::Exactness(format!("π0 W^{}(pt) = {w} must vanish", p + 1)));
        }
    }
    if input.pi2 != AbelianGroup::units(1) {
        return Err(TwoGroupError::Exactness(format!("π2 B^× = {} is not C^×", input.pi2)));
    }
    if !input.pi0.is_finite() || !input.pi1.is_finite() {
        return Err(TwoGroupError::Exactness("π0 and π1 of B^× must be finite".into()));
    }
    let mut notes = vec![
        "1 -> C^× -> π2 B^× -> π3 Aut -> 0".to_string(),
        "0 -> π1 B^× -> π2 Aut -> π0 W^1 = 0".to_string(),
        "0 -> π0 B^× -> π1 Aut -> π0 W^2 = 0".to_string(),
    ];
    notes.push(match &pi0_anchor {
        Some(g) => format!("π0 Aut anchored at {g}"),
        None => "π0 Aut: only the left-exact bound into π0 W^3".to_string(),
    });
    Ok(SymmetryGroups {
        pi0: pi0_anchor,
        pi1: input.pi0.clone(),
        pi2: input.pi1.clone(),
        pi3: AbelianGroup::trivial(),
        notes,
    })
}

/// `π0 Aut(R) = H^3(Z_2; C^×)`, from group cohomology.
pub fn aut_r_pi0() -> Result<AbelianGroup, TwoGroupError> {
    Ok(cohomology(&FiniteAbelianGroup::new(&[2]), Coefficients::Cx, 3)?)
}

/// `π0 Aut(S) = Z_16`, the anchored degree 4 value of the fermionic sequence.
pub fn aut_s_pi0() -> Result<AbelianGroup, TwoGroupError> {
    let m = Arc::new(SpaceSpec::k_z2(2, "M"));
    let state = ahss::run(&m, &SpectrumSpec::sh().twisted(Some("M")), 5, None)?;
    ahss::abutment(&state, 4)?
        .group()
        .cloned()
        .ok_or_else(|| TwoGroupError::SsMismatch("degree 4 is not anchored".into()))
}

/// Where the generator of `Z_2^F` goes in `{1, c, m, m'}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StringImage {
    One,
    Cheshire,
    M,
    MPrime,
}

impl StringImage {
    pub const ALL: [StringImage; 4] = [StringImage::One, StringImage::Cheshire, StringImage::M, StringImage::MPrime];

    /// `β_{x,x}`: `e` for `c`, trivial otherwise.
    pub fn self_braiding_is_e(self) -> bool {
        self == StringImage::Cheshire
    }

    fn exchanged(self) -> StringImage {
        match self {
            StringImage::M => StringImage::MPrime,
            StringImage::MPrime => StringImage::M,
            x => x,
        }
    }
}

impl fmt::Display for StringImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StringImage::One => "1",
            StringImage::Cheshire => "c",
            StringImage::M => "m",
            StringImage::MPrime => "m'",
        })
    }
}

/// A map `Z_2^F -> {1,c,m,m'}` with a trivialization of `β_{x,x}`,
/// i.e. a class `t ∈ H^3(K(Z_2,2;F); Z_2) = {0, Sq1F}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaloisOption {
    pub image: StringImage,
    pub trivialization: bool,
}

impl fmt::Display for GaloisOption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.image, if self.trivialization { "Sq1F" } else { "0" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisOrbit {
    pub label: String,
    pub members: Vec<GaloisOption>,
    /// Canonical `C^×` class of the anomaly, as text.
    pub anomaly: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisReport {
    pub raw: Vec<GaloisOption>,
    pub orbits: Vec<GaloisOrbit>,
}

fn f_space() -> Arc<SpaceSpec> {
    Arc::new(SpaceSpec::k_z2(2, "F"))
}

/// The anomaly `(-1)^{Sq2 t}` of an option whose string is `1`, in
/// `H^5(K(Z_2,2;F); C^×)`. A nontrivial string absorbs `t` and is anomaly free.
pub fn galois_anomaly(opt: &GaloisOption) -> Result<CohomologyClass, TwoGroupError> {
    let s = f_space();
    let h5 = cx_group(&s, 5)?;
    if opt.image != StringImage::One || !opt.trivialization {
        return Ok(CohomologyClass::zero(&s, 5));
    }
    let a = parse_class(&s, "Sq2Sq1F")?;
    if h5.in_kernel(&a)? {
        return Err(TwoGroupError::SsMismatch("Sq2Sq1F is trivial in C^× cohomology".into()));
    }
    Ok(a)
}

/// Enumerates descent data in `order` (any permutation of the string
/// images) and groups them into orbits. Within one string, the two
/// trivializations of a nontrivial string are swapped by an automorphism;
/// `exchange` adds `m ↔ m'`.
pub fn galois_options_in(order: &[StringImage], exchange: bool) -> Result<GaloisReport, TwoGroupError> {
    let h3 = crate::emspaces::z2_dim(&f_space(), 3)?;
    if h3 != 1 {
        return Err(TwoGroupError::SsMismatch(format!("H^3(K(Z_2,2); Z_2) has dimension {h3}")));
    }
    let mut raw = Vec::new();
    for &x in order {
        if x.self_braiding_is_e() {
            continue;
        }
        for t in [false, true] {
            raw.push(GaloisOption { image: x, trivialization: t });
        }
    }
    let key = |o: &GaloisOption| -> GaloisOption {
        let image = if exchange { o.image.min(o.image.exchanged()) } else { o.image };
        let trivialization = if o.image == StringImage::One { o.trivialization } else { false };
        GaloisOption { image, trivialization }
    };
    let mut buckets: BTreeMap<GaloisOption, Vec<GaloisOption>> = BTreeMap::new();
    for o in &raw {
        buckets.entry(key(o)).or_default().push(*o);
    }
    let mut orbits = Vec::new();
    for (k, mut members) in buckets {
        members.sort();
        let anomaly = galois_anomaly(&k)?;
        let label = match (k.image, k.trivialization) {
            (StringImage::One, false) => "S".to_string(),
            (StringImage::One, true) => "T".to_string(),
            (_, _) if exchange => "R".to_string(),
            (x, _) => format!("R[{x}]"),
        };
        orbits.push(GaloisOrbit { label, members, anomaly: anomaly.to_string() });
    }
    orbits.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(GaloisReport { raw, orbits })
}

pub fn galois_options(exchange: bool) -> Result<GaloisReport, TwoGroupError> {
    galois_options_in(&StringImage::ALL, exchange)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittLes {
    pub case: D5Case,
    pub coker: AbelianGroup,
    pub w5: AbelianGroup,
    pub want: AbelianGroup,
    pub lines: Vec<String>,
}

/// `W^4 -> SW^4 -> want -> W^5 -> SW^5 = 0`: `want` is an extension of
/// `W^5` by `coker(W^4 -> SW^4)`, of order 2 in either case.
pub fn witt_les(case: D5Case) -> Result<WittLes, TwoGroupError> {
    let (coker, w5) = match case {
        D5Case::Vanishes => (AbelianGroup::trivial(), AbelianGroup::cyclic(2)),
        D5Case::Nonzero => (AbelianGroup::cyclic(2), AbelianGroup::trivial()),
    };
    let order = coker.order().unwrap_or(0) * w5.order().unwrap_or(0);
    if order != 2 {
        return Err(TwoGroupError::Exactness(format!("want has order {order}")));
    }
    let want = AbelianGroup::cyclic(2);
    // 0 -> coker -> want -> W^5 -> 0 is exact
    let inc = FiniteHom::new(coker.clone(), want.clone(), vec![vec![i64::from(!coker.is_trivial())]])
        .map_err(|e| TwoGroupError::Exactness(e.to_string()))?;
    let proj = FiniteHom::new(want.clone(), w5.clone(), vec![vec![i64::from(!w5.is_trivial())]])
        .map_err(|e| TwoGroupError::Exactness(e.to_string()))?;
    if !(is_exact(&[inc.clone(), proj.clone()]) && inc.kernel_order() == 1 && proj.cokernel().is_trivial()) {
        return Err(TwoGroupError::Exactness("0 -> coker -> want -> W^5 -> 0".into()));
    }
    let lines = vec![
        "W^4(pt) -> SW^4(pt): kernel of order 16".to_string(),
        format!("coker(W^4 -> SW^4) = {coker}"),
        format!("W^5(pt) = {w5}, SW^5(pt) = 0"),
        format!("want = {want}"),
    ];
    Ok(WittLes { case, coker, w5, want, lines })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h5_is_z2_cubed() {
        let h = extension_group().unwrap();
        assert_eq!(h.group.to_string(), "Z_2^3");
        let gens = extension_generators();
        for g in &gens {
            assert_eq!(&normal_form(g).unwrap(), g);
        }
        let s = split_space();
        assert_eq!(normal_form(&parse_class(&s, "MSq1M").unwrap()).unwrap(), gens[2]);
    }

    #[test]
    fn pullback_examples() {
        let s = split_space();
        let em = parse_class(&s, "EM").unwrap();
        assert_eq!(pullback_class(&em).unwrap(), parse_class(&s, "EM + Sq2Sq1M").unwrap());
        let f = parse_class(&s, "Sq2E + EM").unwrap();
        assert_eq!(pullback_class(&f).unwrap(), f);
        assert!(pullback_class(&CohomologyClass::zero(&s, 5)).unwrap().is_zero());
    }

    #[test]
    fn orbit_counts() {
        let b: Vec<_> = enumerate_extensions(Particle::Boson, true).into_iter().map(|g| g.alpha).collect();
        let f: Vec<_> = enumerate_extensions(Particle::Fermion, true).into_iter().map(|g| g.alpha).collect();
        assert_eq!(orbits(&b, ReparamAction::STANDARD).unwrap().len(), 1);
        assert_eq!(orbits(&f, ReparamAction::STANDARD).unwrap().len(), 2);
        assert!(orbits(&[], ReparamAction::STANDARD).unwrap().is_empty());
        assert_eq!(enumerate_extensions(Particle::Boson, false).len(), 4);
    }

    #[test]
    fn s_and_t() {
        let s = split_space();
        let g = |t: &str| BraidedTwoGroup::from_alpha(parse_class(&s, t).unwrap(), Splitting::MagneticBosons);
        assert_eq!(discriminate_ST(&g("Sq2E + EM")).unwrap(), StClass::S);
        assert_eq!(discriminate_ST(&g("Sq2E + EM + Sq2Sq1M")).unwrap(), StClass::T);
        assert_eq!(discriminate_ST(&g("Sq2E + EM + MSq1M")).unwrap(), StClass::T);
        assert_eq!(discriminate_ST(&g("EM")), Err(TwoGroupError::BosonicInput));
    }

    #[test]
    fn galois() {
        let r = galois_options(true).unwrap();
        assert_eq!(r.raw.len(), 6);
        let labels: Vec<_> = r.orbits.iter().map(|o| o.label.as_str()).collect();
        assert_eq!(labels, ["R", "S", "T"]);
        assert_eq!(galois_options(false).unwrap().orbits.len(), 4);
        let t = r.orbits.iter().find(|o| o.label == "T").unwrap();
        assert_ne!(t.anomaly, "0");
    }

    #[test]
    fn witt() {
        for c in [D5Case::Vanishes, D5Case::Nonzero] {
            assert_eq!(witt_les(c).unwrap().want, AbelianGroup::cyclic(2));
        }
    }

    #[test]
    fn noether() {
        let r = noether_les(&NoetherInput::r(), None).unwrap();
        assert_eq!((r.pi1.to_string(), r.pi2.to_string()), ("Z_2".into(), "Z_2".into()));
        let s = noether_les(&NoetherInput::s(), None).unwrap();
        assert_eq!(s.pi1.to_string(), "Z_2^2");
        let d = NoetherInput { pi1: AbelianGroup::trivial(), ..NoetherInput::r() };
        assert!(noether_les(&d, None).unwrap().pi2.is_trivial());
        assert_eq!(aut_r_pi0().unwrap(), AbelianGroup::cyclic(2));
    }
}
