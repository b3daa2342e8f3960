//! `C^×` coefficients.
//!
//! For each factor the mod 2 cohomology is split into elementary pieces:
//! free classes (reductions of integral classes of infinite order) and
//! pairs `(x, y)` at Bockstein level `r`, meaning an integral `Z/2^r` whose
//! generator reduces to `y` and whose mod-`2^r` lift reduces to `x`. Level 1
//! pairs are `(x, Sq^1 x)` for a complement of `ker Sq^1`; what is left is
//! `Sq^1`-homology, which a small table assigns to free classes or higher
//! pairs. Each table entry is checked against the `Sq^1`-homology it must
//! account for.
//!
//! Pieces multiply under Künneth: a free class times anything keeps that
//! thing's level, and two pairs of levels `a <= b` give two pairs of level
//! `a` (the tensor and the Tor term).
//!
//! Then `H^n(X; C^×)` has a `Z/2^r` for each pair with bottom in degree `n`
//! and a `C^×` for each free class in degree `n`. The map `(-1)^x` sends a
//! bottom to the element of order 2 of its summand and kills tops.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::ring::{monomials_of_degree, sq_act};
use super::{CohomologyClass, Coeff, EMGenerator, EmError, Monomial, SpaceSpec};
use crate::abelian::{AbelianGroup, CyclicSum};
use crate::f2::{kernel, Echelon, F2Vec};
use crate::qz::Qz;

/// Top degree for which `C^×` groups are produced.
pub const CX_WINDOW: u32 = 7;
/// Integral data is tracked one degree further.
const INTEGRAL_WINDOW: u32 = CX_WINDOW + 1;

#[derive(Clone, Debug)]
enum Piece {
    Free { deg: u32, x: CohomologyClass },
    Pair { level: u32, bdeg: u32, bottom: Option<CohomologyClass>, top: Option<CohomologyClass> },
}

impl Piece {
    fn bottom_degree(&self) -> u32 {
        match self {
            Piece::Free { deg, .. } => *deg,
            Piece::Pair { bdeg, .. } => *bdeg,
        }
    }
}

fn mul_opt(a: &Option<CohomologyClass>, b: &Option<CohomologyClass>) -> Option<CohomologyClass> {
    match (a, b) {
        (Some(x), Some(y)) => Some(super::ring::cup(x, y).expect("same space")),
        _ => None,
    }
}

fn add_opt(a: Option<CohomologyClass>, b: Option<CohomologyClass>) -> Option<CohomologyClass> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.add(&y).expect("same degree")),
        _ => None,
    }
}

fn tensor(p: &Piece, q: &Piece) -> Vec<Piece> {
    use Piece::*;
    match (p, q) {
        (Free { deg: d1, x }, Free { deg: d2, x: y }) => {
            alloc::vec![Free { deg: d1 + d2, x: super::ring::cup(x, y).expect("same space") }]
        }
        (Free { deg, x }, Pair { level, bdeg, bottom, top }) | (Pair { level, bdeg, bottom, top }, Free { deg, x }) => {
            let x = Some(x.clone());
            alloc::vec![Pair { level: *level, bdeg: bdeg + deg, bottom: mul_opt(&x, bottom), top: mul_opt(&x, top) }]
        }
        (
            Pair { level: a, bdeg: d1, bottom: b1, top: t1 },
            Pair { level: c, bdeg: d2, bottom: b2, top: t2 },
        ) => {
            let deg = d1 + d2;
            let bb = mul_opt(b1, b2);
            let tb = mul_opt(t1, b2);
            let bt = mul_opt(b1, t2);
            let tt = mul_opt(t1, t2);
            if a < c {
                alloc::vec![
                    Pair { level: *a, bdeg: deg, bottom: bb, top: tb },
                    Pair { level: *a, bdeg: deg + 1, bottom: bt, top: tt },
                ]
            } else if a > c {
                alloc::vec![
                    Pair { level: *c, bdeg: deg, bottom: bb, top: bt },
                    Pair { level: *c, bdeg: deg + 1, bottom: tb, top: tt },
                ]
            } else {
                alloc::vec![
                    Pair { level: *a, bdeg: deg, bottom: bb, top: add_opt(tb, bt.clone()) },
                    Pair { level: *a, bdeg: deg + 1, bottom: bt, top: tt },
                ]
            }
        }
    }
}

fn coords(basis: &[Monomial], x: &CohomologyClass) -> F2Vec {
    let mut v = F2Vec::zeros(basis.len());
    for m in x.terms() {
        let i = basis.binary_search(m).expect("class lies in the basis degree");
        v.set(i, true);
    }
    v
}

fn from_coords(space: &Arc<SpaceSpec>, basis: &[Monomial], v: &F2Vec, degree: u32) -> CohomologyClass {
    let mut c = CohomologyClass::zero(space, degree);
    for i in v.ones() {
        c.toggle(basis[i].clone());
    }
    c
}

/// Moves a class on a one-factor space into factor `idx` of `target`.
fn embed(x: &CohomologyClass, target: &Arc<SpaceSpec>, idx: usize) -> CohomologyClass {
    let mut c = CohomologyClass::zero(target, x.degree());
    for m in x.terms() {
        let moved = Monomial(m.factors().iter().map(|(g, e)| (EMGenerator { factor: idx, word: g.word.clone() }, *e)).collect());
        c.toggle(moved);
    }
    c
}

/// Pieces of one factor, on its own one-factor space.
fn factor_pieces(single: &Arc<SpaceSpec>) -> Result<Vec<Piece>, EmError> {
    let f = &single.factors()[0];
    let ok = matches!((f.group, f.n), (Coeff::Z, 2) | (Coeff::Z2, 1) | (Coeff::Z2, 2) | (Coeff::Z2, 3));
    if !ok {
        return Err(EmError::Unvalidated(format!("no Bockstein table for {f}")));
    }
    let w = INTEGRAL_WINDOW;
    let bases: Vec<Vec<Monomial>> = (0..=w + 1).map(|d| monomials_of_degree(single, d)).collect();
    let class = |d: u32, v: &F2Vec| from_coords(single, &bases[d as usize], v, d);
    let mut pieces = Vec::new();
    // level 1 pairs
    for d in 0..=w {
        let basis = &bases[d as usize];
        let images: Vec<F2Vec> = basis
            .iter()
            .map(|m| coords(&bases[d as usize + 1], &sq_act(1, &CohomologyClass::monomial(single, m.clone()))))
            .collect();
        let ker = kernel(&images);
        let mut e = Echelon::new(basis.len(), ker.len() + basis.len());
        for k in &ker {
            e.insert(k);
        }
        for i in 0..basis.len() {
            let u = F2Vec::unit(basis.len(), i);
            if e.insert(&u) {
                let x = class(d, &u);
                let y = sq_act(1, &x);
                pieces.push(Piece::Pair { level: 1, bdeg: d, bottom: Some(x), top: Some(y) });
            }
        }
    }
    // Sq^1-homology: free classes and the higher-torsion table
    let parse = |s: &str| super::expr::parse_class(single, s);
    match f.group {
        Coeff::Z => {
            let t = CohomologyClass::fundamental(single, &f.name)?;
            let mut x = CohomologyClass::one(single);
            let mut d = 0;
            while d <= w {
                pieces.push(Piece::Free { deg: d, x: x.clone() });
                x = super::ring::cup(&x, &t)?;
                d += 2;
            }
        }
        Coeff::Z2 => {
            pieces.push(Piece::Free { deg: 0, x: CohomologyClass::one(single) });
            if f.n == 2 {
                let m = &f.name;
                // Z_4 in integral degree 5, Z_8 in integral degree 9
                pieces.push(Piece::Pair {
                    level: 2,
                    bdeg: 4,
                    bottom: Some(parse(&format!("{m}^2"))?),
                    top: Some(parse(&format!("{m}Sq1{m} + Sq2Sq1{m}"))?),
                });
                pieces.push(Piece::Pair { level: 3, bdeg: 8, bottom: Some(parse(&format!("{m}^4"))?), top: None });
            }
        }
    }
    // every table class must be a Sq^1-cycle, and all pieces must form a basis
    for p in &pieces {
        if let Piece::Pair { level, bottom, top, .. } = p {
            if *level > 1 {
                for c in [bottom, top].into_iter().flatten() {
                    if !sq_act(1, c).is_zero() {
                        return Err(EmError::Unvalidated(format!("table class {c} is not a Sq1-cycle")));
                    }
                }
            }
        }
    }
    for d in 0..=w {
        let basis = &bases[d as usize];
        let mut e = Echelon::new(basis.len(), basis.len() + pieces.len() * 2);
        let mut count = 0;
        let mut independent = true;
        for p in &pieces {
            let cs: Vec<&CohomologyClass> = match p {
                Piece::Free { x, .. } => alloc::vec![x],
                Piece::Pair { bottom, top, .. } => [bottom, top].into_iter().flatten().collect(),
            };
            for c in cs {
                if c.degree() == d {
                    count += 1;
                    independent &= e.insert(&coords(basis, c));
                }
            }
        }
        if count != basis.len() || !independent {
            return Err(EmError::Unvalidated(format!(
                "Bockstein table for {f} does not account for degree {d} ({count} pieces, dimension {})",
                basis.len()
            )));
        }
    }
    Ok(pieces)
}

/// Integral/`C^×` model of a product space through the validated window.
#[derive(Clone, Debug)]
pub struct CxModel {
    space: Arc<SpaceSpec>,
    pieces: Vec<Piece>,
}

impl CxModel {
    pub fn new(space: &Arc<SpaceSpec>) -> Result<CxModel, EmError> {
        let w = INTEGRAL_WINDOW;
        let mut acc = alloc::vec![Piece::Free { deg: 0, x: CohomologyClass::one(space) }];
        for (idx, f) in space.factors().iter().enumerate() {
            let single = Arc::new(SpaceSpec::new(alloc::vec![f.clone()])?);
            let fp: Vec<Piece> = factor_pieces(&single)?
                .into_iter()
                .map(|p| match p {
                    Piece::Free { deg, x } => Piece::Free { deg, x: embed(&x, space, idx) },
                    Piece::Pair { level, bdeg, bottom, top } => Piece::Pair {
                        level,
                        bdeg,
                        bottom: bottom.map(|c| embed(&c, space, idx)),
                        top: top.map(|c| embed(&c, space, idx)),
                    },
                })
                .collect();
            let mut next = Vec::new();
            for p in &acc {
                for q in &fp {
                    if p.bottom_degree() + q.bottom_degree() > w {
                        continue;
                    }
                    for r in tensor(p, q) {
                        if r.bottom_degree() <= w {
                            next.push(r);
                        }
                    }
                }
            }
            acc = next;
        }
        Ok(CxModel { space: space.clone(), pieces: acc })
    }

    pub fn space(&self) -> &Arc<SpaceSpec> {
        &self.space
    }

    /// `H^degree(X; C^×)` with its reduction map.
    pub fn group_at(&self, degree: u32) -> Result<CxGroupEntry, EmError> {
        if degree > CX_WINDOW {
            return Err(EmError::Unvalidated(format!("C^× coefficients are validated only up to degree {CX_WINDOW}")));
        }
        let basis = monomials_of_degree(&self.space, degree);
        let mut summands = Vec::new();
        let mut tops = Vec::new();
        for p in &self.pieces {
            match p {
                Piece::Free { deg, x } if *deg == degree => {
                    summands.push(CxSummand { order: None, level: 0, bottom: x.clone() })
                }
                Piece::Pair { level, bdeg, bottom, .. } if *bdeg == degree => summands.push(CxSummand {
                    order: Some(1u64 << level),
                    level: *level,
                    bottom: bottom.clone().ok_or_else(|| EmError::Unvalidated("missing bottom class".into()))?,
                }),
                Piece::Pair { bdeg, top, .. } if bdeg + 1 == degree => {
                    tops.push(top.clone().ok_or_else(|| EmError::Unvalidated("missing top class".into()))?)
                }
                _ => {}
            }
        }
        let mut solver = Echelon::new(basis.len(), summands.len() + tops.len());
        for c in summands.iter().map(|s| &s.bottom).chain(tops.iter()) {
            if !solver.insert(&coords(&basis, c)) {
                return Err(EmError::Unvalidated(format!("pieces in degree {degree} are dependent")));
            }
        }
        if solver.rank() != basis.len() {
            return Err(EmError::Unvalidated(format!("pieces in degree {degree} do not span")));
        }
        let sum = CyclicSum { summands: summands.iter().map(|s| s.order).collect() };
        Ok(CxGroupEntry {
            space: self.space.clone(),
            degree,
            group: sum.group(),
            sum,
            summands,
            reduction_kernel: tops,
            basis,
            solver,
        })
    }
}

/// One cyclic summand of `H^n(X; C^×)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CxSummand {
    /// `Some(2^level)`, or `None` for a `C^×` summand.
    pub order: Option<u64>,
    pub level: u32,
    /// Mod 2 class whose image `(-1)^x` is the element of order 2 here.
    pub bottom: CohomologyClass,
}

impl CxSummand {
    /// Human label of the summand generator.
    pub fn label(&self) -> alloc::string::String {
        match self.order {
            Some(2) | None => format!("(-1)^{{{}}}", self.bottom),
            Some(o) => format!("g with {}g = (-1)^{{{}}}", o / 2, self.bottom),
        }
    }
}

/// `H^n(X; C^×)` together with the reduction map `(-1)^x` from `H^n(X; Z_2)`.
#[derive(Clone, Debug)]
pub struct CxGroupEntry {
    pub space: Arc<SpaceSpec>,
    pub degree: u32,
    pub group: AbelianGroup,
    pub summands: Vec<CxSummand>,
    /// Basis of the kernel of `(-1)^x`.
    pub reduction_kernel: Vec<CohomologyClass>,
    sum: CyclicSum,
    basis: Vec<Monomial>,
    solver: Echelon,
}

impl CxGroupEntry {
    pub fn cyclic_sum(&self) -> &CyclicSum {
        &self.sum
    }

    fn solve(&self, x: &CohomologyClass) -> Result<F2Vec, EmError> {
        if x.degree() != self.degree && !x.is_zero() {
            return Err(EmError::Inhomogeneous(x.degree(), self.degree));
        }
        if !(Arc::ptr_eq(x.space(), &self.space) || **x.space() == *self.space) {
            return Err(EmError::SpaceMismatch);
        }
        Ok(self.solver.express(&coords(&self.basis, x)).expect("pieces span the degree"))
    }

    /// `(-1)^x` as coordinates in the summands.
    pub fn reduce(&self, x: &CohomologyClass) -> Result<Vec<Qz>, EmError> {
        let c = self.solve(x)?;
        Ok((0..self.summands.len()).map(|i| if c.get(i) { Qz::HALF } else { Qz::ZERO }).collect())
    }

    /// Sum of summand bottoms representing the same `C^×` class as `x`.
    pub fn canonical(&self, x: &CohomologyClass) -> Result<CohomologyClass, EmError> {
        let c = self.solve(x)?;
        let mut out = CohomologyClass::zero(&self.space, self.degree);
        for (i, s) in self.summands.iter().enumerate() {
            if c.get(i) {
                out.add_assign(&s.bottom);
            }
        }
        Ok(out)
    }

    pub fn in_kernel(&self, x: &CohomologyClass) -> Result<bool, EmError> {
        Ok(self.reduce(x)?.iter().all(|q| q.is_zero()))
    }
}

/// `H^degree(space; C^×)`.
pub fn cx_group(space: &Arc<SpaceSpec>, degree: u32) -> Result<CxGroupEntry, EmError> {
    CxModel::new(space)?.group_at(degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emspaces::parse_class;
    use alloc::string::ToString;

    #[test]
    fn k_z2_2_groups() {
        let s = Arc::new(SpaceSpec::k_z2(2, "M"));
        let model = CxModel::new(&s).unwrap();
        let got: Vec<_> = (0..=7).map(|n| model.group_at(n).unwrap().group.to_string()).collect();
        assert_eq!(got, ["C^×", "0", "Z_2", "0", "Z_4", "Z_2", "Z_2", "Z_2"]);
        let g5 = model.group_at(5).unwrap();
        assert_eq!(g5.reduction_kernel, alloc::vec![parse_class(&s, "Sq2Sq1M + MSq1M").unwrap()]);
        let g4 = model.group_at(4).unwrap();
        assert_eq!(g4.reduce(&parse_class(&s, "M^2").unwrap()).unwrap(), alloc::vec![Qz::HALF]);
    }

    #[test]
    fn unvalidated_inputs() {
        let s = Arc::new(SpaceSpec::k_z2(4, "X"));
        assert!(matches!(cx_group(&s, 5), Err(EmError::Unvalidated(_))));
        let m = Arc::new(SpaceSpec::k_z2(2, "M"));
        assert!(matches!(cx_group(&m, 8), Err(EmError::Unvalidated(_))));
    }
}
