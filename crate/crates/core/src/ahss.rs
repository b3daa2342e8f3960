//! Twisted Atiyah–Hirzebruch spectral sequences
//! `E_2^{i,j} = H^i(B; E^j(pt)) => E^{i+j}(B)` for coconnective spectra with
//! a few rows over Eilenberg–MacLane bases.
//!
//! Rows are `C^×`, `Z_2`, zero, or a named abstract group. `d2` between
//! adjacent rows is a stable operation plus, when a twist class `T` of
//! degree 2 is given, the cup product `T·X`; into the `C^×` row it is
//! composed with `(-1)^x`. Higher differentials are never derived: each
//! one that could be nonzero needs an annotation with a citation, otherwise
//! both ends become undetermined.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use thiserror::Error;

use crate::abelian::{AbelianGroup, CyclicSum, GroupError};
use crate::emspaces::{
    cup, sq_word, z2_basis_window, z2_dim, Coeff, CohomologyClass, CxGroupEntry, CxModel, EmError, SpaceSpec,
    CX_WINDOW, Z2_WINDOW,
};
use crate::f2::{rank, F2Vec};
use crate::qz::Qz;
use crate::steenrod::SteenrodElement;

/// Bidegree `(i, j)`: base degree, row.
pub type Bideg = (u32, u32);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AhssError {
    #[error(transparent)]
    Em(#[from] EmError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("twist class {0:?} is not a degree 2 generator of the base")]
    Twist(String),
    #[error("window {window} too large, at most {max} for this spectrum")]
    WindowTooLarge { window: u32, max: u32 },
    #[error("total degree {degree} is beyond the window {window}")]
    BeyondWindow { degree: u32, window: u32 },
    #[error("k-invariant out of row {0} must have degree 2")]
    KInvariantDegree(u32),
    #[error("annotation for d{page} from {at:?} needs a citation")]
    MissingCitation { page: u32, at: Bideg },
    #[error("annotation for d{0} is not a higher differential")]
    AnnotationPage(u32),
    #[error("d2 does not square to zero at {0:?}")]
    D2Squared(Bideg),
    #[error("pages not computed yet: {0}")]
    Stage(&'static str),
    #[error("unknown spectrum {0:?}")]
    UnknownSpectrum(String),
    #[error("unknown case {0:?}, expected d5-vanishes or d5-nonzero")]
    UnknownCase(String),
}

/// Coefficient group of one row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowGroup {
    Cx,
    Z2,
    Zero,
    /// An abstract group carried by name only.
    Symbolic(String),
}

/// `d2` out of row `source_row` is `op` (plus the twist term).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KInvariant {
    pub source_row: u32,
    pub op: SteenrodElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumSpec {
    pub name: String,
    /// `rows[j]` is `E^j(pt)`.
    pub rows: Vec<RowGroup>,
    pub kinvariants: Vec<KInvariant>,
    /// Name of a degree 2 generator of the base.
    pub twist: Option<String>,
}

impl SpectrumSpec {
    /// Supercohomology: `C^×, Z_2, Z_2` with `(-1)^{Sq^2}` and `Sq^2`.
    pub fn sh() -> SpectrumSpec {
        SpectrumSpec {
            name: "SH".into(),
            rows: vec![RowGroup::Cx, RowGroup::Z2, RowGroup::Z2],
            kinvariants: vec![
                KInvariant { source_row: 1, op: SteenrodElement::sq(2) },
                KInvariant { source_row: 2, op: SteenrodElement::sq(2) },
            ],
            twist: None,
        }
    }

    /// `H(-; C^× × Z_2[-1])`: two rows, zero k-invariant.
    pub fn w2row() -> SpectrumSpec {
        SpectrumSpec {
            name: "W2ROW".into(),
            rows: vec![RowGroup::Cx, RowGroup::Z2],
            kinvariants: vec![KInvariant { source_row: 1, op: SteenrodElement::zero() }],
            twist: None,
        }
    }

    /// Bottom of the bosonic Witt spectrum: `C^×, 0, 0, 0, W`.
    pub fn w_truncation() -> SpectrumSpec {
        SpectrumSpec {
            name: "W".into(),
            rows: vec![RowGroup::Cx, RowGroup::Zero, RowGroup::Zero, RowGroup::Zero, RowGroup::Symbolic("W".into())],
            kinvariants: Vec::new(),
            twist: None,
        }
    }

    /// Bottom of the super Witt spectrum: `C^×, Z_2, Z_2, 0, SW`.
    pub fn sw() -> SpectrumSpec {
        let mut s = SpectrumSpec::sh();
        s.name = "SW".into();
        s.rows.push(RowGroup::Zero);
        s.rows.push(RowGroup::Symbolic("SW".into()));
        s
    }

    pub fn by_name(name: &str) -> Result<SpectrumSpec, AhssError> {
        match name {
            "SH" | "sh" => Ok(SpectrumSpec::sh()),
            "W2ROW" | "w2row" => Ok(SpectrumSpec::w2row()),
            "W" | "w" => Ok(SpectrumSpec::w_truncation()),
            "SW" | "sw" => Ok(SpectrumSpec::sw()),
            _ => Err(AhssError::UnknownSpectrum(name.into())),
        }
    }

    pub fn twisted(mut self, twist: Option<&str>) -> SpectrumSpec {
        self.twist = twist.map(|t| t.to_string());
        self
    }

    fn row(&self, j: u32) -> &RowGroup {
        self.rows.get(j as usize).unwrap_or(&RowGroup::Zero)
    }

    fn top_row(&self) -> u32 {
        self.rows.len() as u32 - 1
    }
}

/// A spectral-sequence entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Known(AbelianGroup),
    Symbolic(String),
    Undetermined,
}

impl Entry {
    pub fn is_zero(&self) -> bool {
        matches!(self, Entry::Known(g) if g.is_trivial())
    }

    pub fn group(&self) -> Option<&AbelianGroup> {
        match self {
            Entry::Known(g) => Some(g),
            _ => None,
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Known(g) => write!(f, "{g}"),
            Entry::Symbolic(s) => write!(f, "{s}"),
            Entry::Undetermined => write!(f, "?"),
        }
    }
}

/// Which branch of the open `d5` out of `(0,4)` to follow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum D5Case {
    Vanishes,
    Nonzero,
}

impl D5Case {
    pub fn parse(s: &str) -> Result<D5Case, AhssError> {
        match s {
            "d5-vanishes" => Ok(D5Case::Vanishes),
            "d5-nonzero" => Ok(D5Case::Nonzero),
            _ => Err(AhssError::UnknownCase(s.into())),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            D5Case::Vanishes => "d5-vanishes",
            D5Case::Nonzero => "d5-nonzero",
        }
    }
}

/// Externally supplied information about a higher differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Annotation {
    Vanishes { page: u32, source: Bideg, citation: String },
    /// `d_page` out of `source` is onto its target; the source is replaced
    /// by the named kernel.
    KillsTarget { page: u32, source: Bideg, kernel: String, citation: String },
}

impl Annotation {
    pub fn page(&self) -> u32 {
        match self {
            Annotation::Vanishes { page, .. } | Annotation::KillsTarget { page, .. } => *page,
        }
    }

    pub fn source(&self) -> Bideg {
        match self {
            Annotation::Vanishes { source, .. } | Annotation::KillsTarget { source, .. } => *source,
        }
    }

    pub fn citation(&self) -> &str {
        match self {
            Annotation::Vanishes { citation, .. } | Annotation::KillsTarget { citation, .. } => citation,
        }
    }
}

/// A group structure on an abutment supplied from outside the sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anchor {
    pub degree: u32,
    pub group: AbelianGroup,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resolution {
    Resolved(AbelianGroup),
    Anchored(AbelianGroup, String),
    /// Extension problem left open; the order when it is known.
    Unresolved { order: Option<u64> },
}

/// One line of the extension ledger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abutment {
    pub degree: u32,
    /// `E_∞` pieces from the bottom row up.
    pub pieces: Vec<(Bideg, Entry)>,
    pub resolution: Resolution,
}

impl Abutment {
    pub fn group(&self) -> Option<&AbelianGroup> {
        match &self.resolution {
            Resolution::Resolved(g) | Resolution::Anchored(g, _) => Some(g),
            Resolution::Unresolved { .. } => None,
        }
    }

    pub fn order(&self) -> Option<u64> {
        match &self.resolution {
            Resolution::Resolved(g) | Resolution::Anchored(g, _) => g.order(),
            Resolution::Unresolved { order } => *order,
        }
    }

    /// Nontrivial graded pieces, bottom row first.
    pub fn graded(&self) -> Vec<&Entry> {
        self.pieces.iter().map(|(_, e)| e).filter(|e| !e.is_zero()).collect()
    }
}

impl fmt::Display for Abutment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let graded: Vec<String> = self.graded().iter().map(|e| e.to_string()).collect();
        let graded = if graded.is_empty() { "0".to_string() } else { graded.join(", ") };
        match &self.resolution {
            Resolution::Resolved(g) => write!(f, "degree {}: {g} (graded: {graded})", self.degree),
            Resolution::Anchored(g, c) => write!(f, "degree {}: {g} (graded: {graded}; anchored: {c})", self.degree),
            Resolution::Unresolved { order: Some(o) } => {
                write!(f, "degree {}: order {o}, unresolved (graded: {graded})", self.degree)
            }
            Resolution::Unresolved { order: None } => write!(f, "degree {}: unresolved (graded: {graded})", self.degree),
        }
    }
}

#[derive(Clone, Debug)]
enum Coords {
    Z2(Vec<CohomologyClass>),
    Cx(CxGroupEntry),
    Opaque,
}

#[derive(Clone, Debug)]
struct Cell {
    entry: Entry,
    coords: Coords,
}

impl Cell {
    fn sum(&self) -> Option<CyclicSum> {
        match &self.coords {
            Coords::Z2(b) => Some(CyclicSum { summands: vec![Some(2); b.len()] }),
            Coords::Cx(c) => Some(c.cyclic_sum().clone()),
            Coords::Opaque => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Stage {
    E2,
    E3,
    Final,
}

/// Which page to print.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Page {
    E2,
    E3,
    Infinity,
}

impl Page {
    pub fn parse(s: &str) -> Option<Page> {
        match s {
            "2" => Some(Page::E2),
            "3" => Some(Page::E3),
            "inf" | "infinity" | "∞" => Some(Page::Infinity),
            _ => None,
        }
    }
}

/// A spectral sequence in a total-degree window.
#[derive(Clone, Debug)]
pub struct SSState {
    pub base: Arc<SpaceSpec>,
    pub spectrum: SpectrumSpec,
    pub window: u32,
    e2: BTreeMap<Bideg, Cell>,
    /// Source -> image of each source basis element, in target coordinates.
    d2: BTreeMap<Bideg, Vec<Vec<Qz>>>,
    /// Page `r` -> entries, for `r >= 3`; the last one is `E_∞`.
    pages: BTreeMap<u32, BTreeMap<Bideg, Entry>>,
    annotations: Vec<Annotation>,
    anchors: Vec<Anchor>,
    stage: Stage,
}

fn apply_op(op: &SteenrodElement, x: &CohomologyClass) -> CohomologyClass {
    let mut out = CohomologyClass::zero(x.space(), x.degree() + op.degree().unwrap_or(0));
    for m in op.terms() {
        out = out.add(&sq_word(m, x)).expect("homogeneous");
    }
    out
}

/// `E_2` in total degrees up to `window + 1`.
pub fn build_e2(base: &Arc<SpaceSpec>, spectrum: &SpectrumSpec, window: u32) -> Result<SSState, AhssError> {
    let has_cx = spectrum.rows.contains(&RowGroup::Cx);
    let max = if has_cx { CX_WINDOW - 1 } else { Z2_WINDOW - 1 };
    if window > max {
        return Err(AhssError::WindowTooLarge { window, max });
    }
    if let Some(t) = &spectrum.twist {
        let ok = base.factor_index(t).map(|k| base.factors()[k].n == 2).unwrap_or(false);
        if !ok {
            return Err(AhssError::Twist(t.clone()));
        }
    }
    let cx = if has_cx { Some(CxModel::new(base)?) } else { None };
    let mut e2 = BTreeMap::new();
    for j in 0..=spectrum.top_row().min(window + 1) {
        for i in 0..=window + 1 - j {
            let cell = match spectrum.row(j) {
                RowGroup::Cx => {
                    let g = cx.as_ref().expect("built above").group_at(i)?;
                    Cell { entry: Entry::Known(g.group.clone()), coords: Coords::Cx(g) }
                }
                RowGroup::Z2 => {
                    let b = z2_basis_window(base, i, Z2_WINDOW)?;
                    Cell { entry: Entry::Known(AbelianGroup::from_orders(&vec![2; b.len()])), coords: Coords::Z2(b) }
                }
                RowGroup::Zero => Cell { entry: Entry::Known(AbelianGroup::trivial()), coords: Coords::Opaque },
                RowGroup::Symbolic(name) => {
                    let entry = if i == 0 {
                        Entry::Symbolic(name.clone())
                    } else if base.is_point() || (i == 1 && z2_dim(base, 1)? == 0) {
                        Entry::Known(AbelianGroup::trivial())
                    } else {
                        Entry::Symbolic(format!("H^{i}(B;{name})"))
                    };
                    Cell { entry, coords: Coords::Opaque }
                }
            };
            e2.insert((i, j), cell);
        }
    }
    Ok(SSState {
        base: base.clone(),
        spectrum: spectrum.clone(),
        window,
        e2,
        d2: BTreeMap::new(),
        pages: BTreeMap::new(),
        annotations: Vec::new(),
        anchors: Vec::new(),
        stage: Stage::E2,
    })
}

/// Computes every `d2` whose target lies in the stored range and `E_3`.
pub fn apply_d2(mut state: SSState) -> Result<SSState, AhssError> {
    if state.stage != Stage::E2 {
        return Err(AhssError::Stage("d2 already applied"));
    }
    let twist = match &state.spectrum.twist {
        Some(t) => Some(CohomologyClass::fundamental(&state.base, t)?),
        None => None,
    };
    let mut d2 = BTreeMap::new();
    for (&(i, j), cell) in &state.e2 {
        if j == 0 {
            continue;
        }
        let Coords::Z2(basis) = &cell.coords else { continue };
        let Some(target) = state.e2.get(&(i + 2, j - 1)) else { continue };
        let op = state
            .spectrum
            .kinvariants
            .iter()
            .find(|k| k.source_row == j)
            .map(|k| k.op.clone())
            .unwrap_or_else(SteenrodElement::zero);
        if op.degree().is_some_and(|d| d != 2) {
            return Err(AhssError::KInvariantDegree(j));
        }
        let mut images = Vec::with_capacity(basis.len());
        for x in basis {
            let mut v = apply_op(&op, x);
            if op.is_zero() {
                v = CohomologyClass::zero(&state.base, x.degree() + 2);
            }
            if let Some(t) = &twist {
                v = v.add(&cup(t, x)?)?;
            }
            let img = match &target.coords {
                Coords::Z2(tb) => tb
                    .iter()
                    .map(|b| if v.contains(b.terms().next().expect("monomial")) { Qz::HALF } else { Qz::ZERO })
                    .collect(),
                Coords::Cx(g) => g.reduce(&v)?,
                Coords::Opaque => Vec::new(),
            };
            images.push(img);
        }
        d2.insert((i, j), images);
    }
    state.d2 = d2;
    if let Some(bad) = state.d2_squared_failure() {
        return Err(AhssError::D2Squared(bad));
    }
    // E3
    let mut e3 = BTreeMap::new();
    for (&(i, j), cell) in &state.e2 {
        let incoming = if i >= 2 { state.d2.get(&(i - 2, j + 1)) } else { None };
        let incoming_nonzero = incoming.is_some_and(|m| m.iter().any(|v| v.iter().any(|q| !q.is_zero())));
        let entry = match (&cell.coords, &cell.entry) {
            (Coords::Z2(basis), _) => {
                let out_rank = state.d2.get(&(i, j)).map(|m| bits_rank(m, state.e2.get(&(i + 2, j - 1)))).unwrap_or(0);
                let in_rank = incoming.map(|m| bits_rank(m, Some(cell))).unwrap_or(0);
                // a Symbolic or unknown neighbour makes this entry unknown
                let opaque_out = j > 0
                    && state
                        .e2
                        .get(&(i + 2, j - 1))
                        .is_some_and(|t| matches!(t.coords, Coords::Opaque) && !t.entry.is_zero());
                if opaque_out {
                    Entry::Undetermined
                } else {
                    Entry::Known(AbelianGroup::from_orders(&vec![2; basis.len() - out_rank - in_rank]))
                }
            }
            (Coords::Cx(g), _) => {
                let gens: Vec<Vec<Qz>> = incoming.map(|m| m.to_vec()).unwrap_or_default();
                Entry::Known(g.cyclic_sum().quotient(&gens)?)
            }
            (Coords::Opaque, e) => {
                if e.is_zero() || !incoming_nonzero {
                    e.clone()
                } else {
                    Entry::Undetermined
                }
            }
        };
        e3.insert((i, j), entry);
    }
    state.pages.insert(3, e3);
    state.stage = Stage::E3;
    Ok(state)
}

fn bits_rank(images: &[Vec<Qz>], target: Option<&Cell>) -> usize {
    let Some(sum) = target.and_then(|t| t.sum()) else { return 0 };
    let rows: Vec<F2Vec> = images
        .iter()
        .map(|v| F2Vec::from_bits(&sum.two_torsion_bits(v).expect("images of order two")))
        .collect();
    rank(&rows)
}

impl SSState {
    /// `d2 ∘ d2 = 0` on every stored pair; returns a failing source.
    fn d2_squared_failure(&self) -> Option<Bideg> {
        for (&(i, j), first) in &self.d2 {
            let Some(second) = self.d2.get(&(i + 2, j - 1)) else { continue };
            let mid = &self.e2[&(i + 2, j - 1)];
            let Some(mid_sum) = mid.sum() else { continue };
            let width = self.e2[&(i + 4, j - 2)].sum().map(|s| s.summands.len()).unwrap_or(0);
            for v in first {
                let bits = mid_sum.two_torsion_bits(v)?;
                let mut acc = vec![Qz::ZERO; width];
                for (k, b) in bits.iter().enumerate() {
                    if *b {
                        for (a, q) in acc.iter_mut().zip(&second[k]) {
                            *a = *a + *q;
                        }
                    }
                }
                if acc.iter().any(|q| !q.is_zero()) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn annotate(&mut self, a: Annotation) -> Result<(), AhssError> {
        if a.citation().trim().is_empty() {
            return Err(AhssError::MissingCitation { page: a.page(), at: a.source() });
        }
        if a.page() < 3 {
            return Err(AhssError::AnnotationPage(a.page()));
        }
        self.annotations.push(a);
        Ok(())
    }

    pub fn anchor(&mut self, a: Anchor) -> Result<(), AhssError> {
        if a.citation.trim().is_empty() {
            return Err(AhssError::MissingCitation { page: 0, at: (0, a.degree) });
        }
        self.anchors.push(a);
        Ok(())
    }

    pub fn annotations(&self) -> &[Annotation] {
        &self.annotations
    }

    pub fn rows(&self) -> u32 {
        self.spectrum.rows.len() as u32
    }

    /// Nonzero `d2` arrows, source to target.
    pub fn nonzero_d2(&self) -> Vec<(Bideg, Bideg)> {
        self.d2
            .iter()
            .filter(|(_, m)| m.iter().any(|v| v.iter().any(|q| !q.is_zero())))
            .map(|(&(i, j), _)| ((i, j), (i + 2, j - 1)))
            .collect()
    }

    /// The `d2` matrix out of `source`, one row per basis element.
    pub fn d2_matrix(&self, source: Bideg) -> Option<&[Vec<Qz>]> {
        self.d2.get(&source).map(|m| m.as_slice())
    }

    /// Entries of a page inside the window.
    pub fn page(&self, page: Page) -> Result<BTreeMap<Bideg, Entry>, AhssError> {
        let all: BTreeMap<Bideg, Entry> = match page {
            Page::E2 => self.e2.iter().map(|(k, c)| (*k, c.entry.clone())).collect(),
            Page::E3 => self.pages.get(&3).cloned().ok_or(AhssError::Stage("E3 needs d2"))?,
            Page::Infinity => {
                if self.stage != Stage::Final {
                    return Err(AhssError::Stage("E_∞ needs turn_pages"));
                }
                self.pages.last_key_value().map(|(_, p)| p.clone()).expect("pages exist")
            }
        };
        Ok(all.into_iter().filter(|((i, j), _)| i + j <= self.window).collect())
    }

    pub fn entry(&self, page: Page, pos: Bideg) -> Result<Entry, AhssError> {
        Ok(self.page(page)?.get(&pos).cloned().unwrap_or(Entry::Known(AbelianGroup::trivial())))
    }
}

/// Runs pages `r >= 3` using the annotations.
pub fn turn_pages(mut state: SSState) -> Result<SSState, AhssError> {
    if state.stage != Stage::E3 {
        return Err(AhssError::Stage("turn_pages needs E3"));
    }
    let top = state.spectrum.top_row();
    let mut cur = state.pages[&3].clone();
    let mut r = 3;
    while r <= top + 1 {
        let mut next = cur.clone();
        for (&(i, j), src) in &cur {
            if i + j > state.window || j + 1 < r {
                continue;
            }
            let tgt_pos = (i + r, j + 1 - r);
            let Some(tgt) = cur.get(&tgt_pos) else { continue };
            if src.is_zero() || tgt.is_zero() {
                continue;
            }
            let note = state.annotations.iter().find(|a| a.page() == r && a.source() == (i, j));
            match note {
                Some(Annotation::Vanishes { .. }) => {}
                Some(Annotation::KillsTarget { kernel, .. }) => {
                    let same = matches!((src, tgt), (Entry::Known(a), Entry::Known(b)) if a == b);
                    if next[&(i, j)] != Entry::Undetermined {
                        next.insert(
                            (i, j),
                            if same { Entry::Known(AbelianGroup::trivial()) } else { Entry::Symbolic(kernel.clone()) },
                        );
                    }
                    if next[&tgt_pos] != Entry::Undetermined {
                        next.insert(tgt_pos, Entry::Known(AbelianGroup::trivial()));
                    }
                }
                None => {
                    next.insert((i, j), Entry::Undetermined);
                    next.insert(tgt_pos, Entry::Undetermined);
                }
            }
        }
        state.pages.insert(r + 1, next.clone());
        cur = next;
        r += 1;
    }
    state.stage = Stage::Final;
    Ok(state)
}

/// The abutment in one total degree, with its ledger entry.
pub fn abutment(state: &SSState, degree: u32) -> Result<Abutment, AhssError> {
    if degree > state.window {
        return Err(AhssError::BeyondWindow { degree, window: state.window });
    }
    let page = state.page(Page::Infinity)?;
    let pieces: Vec<(Bideg, Entry)> = (0..state.rows())
        .filter(|&j| j <= degree)
        .map(|j| {
            let pos = (degree - j, j);
            (pos, page.get(&pos).cloned().unwrap_or(Entry::Known(AbelianGroup::trivial())))
        })
        .collect();
    let nontrivial: Vec<&Entry> = pieces.iter().map(|(_, e)| e).filter(|e| !e.is_zero()).collect();
    let known: Option<Vec<&AbelianGroup>> = nontrivial.iter().map(|e| e.group()).collect();
    let resolution = match known {
        None => Resolution::Unresolved { order: None },
        Some(gs) if gs.is_empty() => Resolution::Resolved(AbelianGroup::trivial()),
        Some(gs) if gs.len() == 1 => Resolution::Resolved(gs[0].clone()),
        Some(gs) => {
            let order = gs.iter().try_fold(1u64, |acc, g| g.order().and_then(|o| acc.checked_mul(o)));
            let anchor = state.anchors.iter().find(|a| a.degree == degree && a.group.order() == order && order.is_some());
            match anchor {
                Some(a) => Resolution::Anchored(a.group.clone(), a.citation.clone()),
                None => Resolution::Unresolved { order },
            }
        }
    };
    Ok(Abutment { degree, pieces, resolution })
}

/// Citation labels attached by [`default_annotations`].
pub const CITE_NOD3: &str = "kernel of W -> SW has order 16, so every total degree 4 entry survives";
pub const CITE_D5: &str = "d5 out of (0,4) is the open case split on W^5(pt)";
pub const CITE_Z16: &str = "kernel of W -> SW is cyclic of order 16";
pub const CITE_BASEPOINT: &str = "untwisted: a basepoint splits E(pt) off E(B)";

fn twisted_k_z2_2(state: &SSState) -> bool {
    let f = state.base.factors();
    match &state.spectrum.twist {
        Some(t) => f.len() == 1 && f[0].group == Coeff::Z2 && f[0].n == 2 && &f[0].name == t,
        None => false,
    }
}

/// Annotations and anchors for the built-in sequences: column 0 is inert
/// when untwisted, and over a twisted `K(Z_2, 2)` the total degree 4
/// entries survive. For `SW` the `d5` out of `(0,4)` follows `case`; with no
/// case it stays undetermined.
pub fn default_annotations(state: &SSState, case: Option<D5Case>) -> (Vec<Annotation>, Vec<Anchor>) {
    let mut notes = Vec::new();
    let mut anchors = Vec::new();
    if state.spectrum.twist.is_none() {
        for r in 3..=state.spectrum.top_row() + 1 {
            for j in r - 1..=state.spectrum.top_row() {
                notes.push(Annotation::Vanishes { page: r, source: (0, j), citation: CITE_BASEPOINT.into() });
            }
        }
    }
    if !twisted_k_z2_2(state) {
        return (notes, anchors);
    }
    let name = state.spectrum.name.as_str();
    if name == "SH" || name == "SW" {
        notes.push(Annotation::Vanishes { page: 3, source: (2, 2), citation: CITE_NOD3.into() });
    }
    if name == "SH" {
        anchors.push(Anchor { degree: 4, group: AbelianGroup::cyclic(16), citation: CITE_Z16.into() });
    }
    if name == "SW" {
        match case {
            Some(D5Case::Vanishes) => {
                notes.push(Annotation::Vanishes { page: 5, source: (0, 4), citation: CITE_D5.into() })
            }
            Some(D5Case::Nonzero) => notes.push(Annotation::KillsTarget {
                page: 5,
                source: (0, 4),
                kernel: "ker(SW -> Z_2)".into(),
                citation: CITE_D5.into(),
            }),
            None => {}
        }
    }
    (notes, anchors)
}

/// `E_2`, `d2`, default annotations, then the higher pages.
pub fn run(
    base: &Arc<SpaceSpec>,
    spectrum: &SpectrumSpec,
    window: u32,
    case: Option<D5Case>,
) -> Result<SSState, AhssError> {
    let mut state = apply_d2(build_e2(base, spectrum, window)?)?;
    let (notes, anchors) = default_annotations(&state, case);
    for n in notes {
        state.annotate(n)?;
    }
    for a in anchors {
        state.anchor(a)?;
    }
    turn_pages(state)
}

/// Fixed-width table of a page, top row first, followed by the nonzero
/// `d2` arrows (page 2) or the annotations used (page ∞).
pub fn emit_page(state: &SSState, page: Page) -> Result<String, AhssError> {
    let entries = state.page(page)?;
    let w = state.window;
    let label = match page {
        Page::E2 => "E2",
        Page::E3 => "E3",
        Page::Infinity => "E_inf",
    };
    let twist = state.spectrum.twist.as_deref().unwrap_or("none");
    let mut out = String::new();
    let _ = writeln!(out, "{label} page: {} over {}, twist {twist}, window {w}", state.spectrum.name, state.base);
    let cells: Vec<Vec<String>> = (0..state.rows())
        .map(|j| {
            (0..=w)
                .map(|i| if i + j <= w { entries.get(&(i, j)).map(|e| e.to_string()).unwrap_or_default() } else { String::new() })
                .collect()
        })
        .collect();
    let widths: Vec<usize> = (0..=w as usize)
        .map(|i| cells.iter().map(|r| r[i].chars().count()).chain([i.to_string().len(), 3]).max().unwrap_or(3) + 2)
        .collect();
    for j in (0..state.rows()).rev() {
        let _ = write!(out, "{j:>3} |");
        for (s, wd) in cells[j as usize].iter().zip(&widths) {
            let _ = write!(out, " {s:<width$}", width = wd - 1);
        }
        out.push('\n');
        trim_line(&mut out);
    }
    let _ = writeln!(out, "    +{}", "-".repeat(widths.iter().sum()));
    let _ = write!(out, "     ");
    for (i, wd) in widths.iter().enumerate() {
        let _ = write!(out, "{:<width$}", i, width = wd);
    }
    let _ = writeln!(out, "i");
    match page {
        Page::E2 => {
            for ((a, b), (c, d)) in state.nonzero_d2() {
                if c <= w && a + b <= w {
                    let _ = writeln!(out, "d2: ({a},{b}) -> ({c},{d})");
                }
            }
        }
        Page::E3 => {}
        Page::Infinity => {
            for n in &state.annotations {
                let (i, j) = n.source();
                let what = match n {
                    Annotation::Vanishes { .. } => "vanishes".to_string(),
                    Annotation::KillsTarget { kernel, .. } => format!("onto, kernel {kernel}"),
                };
                let _ = writeln!(out, "d{}: ({i},{j}) {what} [{}]", n.page(), n.citation());
            }
        }
    }
    Ok(out)
}

fn trim_line(out: &mut String) {
    // drop trailing spaces of the line just written
    if out.ends_with('\n') {
        out.pop();
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn row(state: &SSState, page: Page, j: u32, upto: u32) -> Vec<String> {
        (0..=upto).map(|i| state.entry(page, (i, j)).unwrap().to_string()).collect()
    }

    #[test]
    fn point_base_reproduces_rows() {
        let pt = Arc::new(SpaceSpec::point());
        let s = run(&pt, &SpectrumSpec::sh(), 4, None).unwrap();
        let got: Vec<String> = (0..=4).map(|n| abutment(&s, n).unwrap().group().unwrap().to_string()).collect();
        assert_eq!(got, ["C^×", "Z_2", "Z_2", "0", "0"]);
    }

    #[test]
    fn fermionic_sequence() {
        let b = Arc::new(SpaceSpec::k_z2(2, "M"));
        let s = run(&b, &SpectrumSpec::sh().twisted(Some("M")), 6, None).unwrap();
        assert_eq!(row(&s, Page::E2, 1, 5), ["Z_2", "0", "Z_2", "Z_2", "Z_2", "Z_2^2"]);
        let a4 = abutment(&s, 4).unwrap();
        assert_eq!(a4.order(), Some(16));
        assert_eq!(a4.graded().iter().map(|e| e.to_string()).collect::<Vec<_>>(), ["Z_4", "Z_2", "Z_2"]);
        assert!(matches!(a4.resolution, Resolution::Anchored(ref g, _) if g.to_string() == "Z_16"));
        assert_eq!(abutment(&s, 5).unwrap().group().unwrap().to_string(), "Z_2");
    }

    #[test]
    fn annotations_need_citations() {
        let b = Arc::new(SpaceSpec::k_z2(2, "M"));
        let mut s = apply_d2(build_e2(&b, &SpectrumSpec::sh(), 4).unwrap()).unwrap();
        let bad = Annotation::Vanishes { page: 3, source: (2, 2), citation: " ".into() };
        assert!(s.annotate(bad).is_err());
    }
}
