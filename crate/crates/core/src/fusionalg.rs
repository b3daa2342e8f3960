//! Simple algebra objects in pointed braided fusion categories.
//!
//! A pointed braided category over a finite abelian group `A` is given by
//! a quadratic form `q: A -> Q/Z` (the self-braiding). Computations use a
//! bilinear lift `β` with `β(x, x) = q(x)`: the Koszul form
//! `β(x, y) = p(x) p(y) / 2` when `q = p/2` is a character (super vector
//! spaces and their products), otherwise the upper-triangular lift on the
//! generators.
//!
//! A twisted group algebra is graded by a group `L` mapped to `A` by `φ`,
//! with a bilinear 2-cocycle `ω` on `L`. It is invertible exactly when
//! `χ(x, y) = ω(x, y) - ω(y, x) - β(φx, φy)` is nondegenerate on `L`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::groupcoh::{subgroups, two_cocycle_classes, FiniteAbelianGroup, GroupCohError, Subgroup, TwoCocycle};
use crate::qz::Qz;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FusionError {
    #[error(transparent)]
    Group(#[from] GroupCohError),
    #[error("q has {got} values, group has {want} elements")]
    Arity { got: usize, want: usize },
    #[error("q(0) must be 0")]
    Unit,
    #[error("q is not a quadratic form: its polarization is not bilinear")]
    NotQuadratic,
    #[error("q(g) = {value} on a generator of order {order} has no bilinear lift")]
    NotLiftable { value: Qz, order: u64 },
    #[error("bad self-braiding spec {0:?}: {1}")]
    Syntax(String, String),
    #[error("value {given} for {name} contradicts the form, which gives {derived}")]
    Inconsistent { name: String, given: Qz, derived: Qz },
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("group of order {0} is too large (limit 16)")]
    TooLarge(u64),
}

/// Pointed braided fusion category with simples labelled by `group`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedBraidedCategory {
    pub group: FiniteAbelianGroup,
    /// `q` by element index.
    q: Vec<Qz>,
    /// `β` on pairs of generators.
    beta: Vec<Vec<Qz>>,
    /// Generator labels, used to name elements.
    labels: Vec<String>,
}

impl PointedBraidedCategory {
    pub fn from_quadratic_form(group: &FiniteAbelianGroup, q: Vec<Qz>) -> Result<PointedBraidedCategory, FusionError> {
        let n = group.order() as usize;
        if q.len() != n {
            return Err(FusionError::Arity { got: q.len(), want: n });
        }
        if !q[0].is_zero() {
            return Err(FusionError::Unit);
        }
        let els = group.elements();
        let idx = |x: &[u64]| group.index(x) as usize;
        let b = |x: &[u64], y: &[u64]| q[idx(&group.add(x, y))] - q[idx(x)] - q[idx(y)];
        for x in &els {
            for y in &els {
                for z in &els {
                    if b(&group.add(x, y), z) != b(x, z) + b(y, z) {
                        return Err(FusionError::NotQuadratic);
                    }
                }
            }
        }
        let k = group.rank();
        let gens: Vec<Vec<u64>> = (0..k).map(|i| unit(k, i)).collect();
        let is_sign_character = q.iter().all(|v| v.is_zero() || *v == Qz::HALF)
            && els.iter().all(|x| els.iter().all(|y| q[idx(&group.add(x, y))] == q[idx(x)] + q[idx(y)]));
        let mut beta = vec![vec![Qz::ZERO; k]; k];
        for i in 0..k {
            for j in 0..k {
                beta[i][j] = if is_sign_character {
                    if q[idx(&gens[i])] == Qz::HALF && q[idx(&gens[j])] == Qz::HALF {
                        Qz::HALF
                    } else {
                        Qz::ZERO
                    }
                } else if i < j {
                    b(&gens[i], &gens[j])
                } else if i == j {
                    let v = q[idx(&gens[i])];
                    let d = group.factors()[i];
                    if v.mul_int(d as i64) != Qz::ZERO {
                        return Err(FusionError::NotLiftable { value: v, order: d });
                    }
                    v
                } else {
                    Qz::ZERO
                };
            }
        }
        let labels = default_labels(k);
        let cat = PointedBraidedCategory { group: group.clone(), q, beta, labels };
        debug_assert!(els.iter().all(|x| cat.beta(x, x) == cat.q(x)));
        Ok(cat)
    }

    /// Super vector spaces: `A = Z_2 = {1, f}` with `f` a fermion.
    pub fn svec() -> PointedBraidedCategory {
        let g = FiniteAbelianGroup::new(&[2]);
        PointedBraidedCategory::from_quadratic_form(&g, vec![Qz::ZERO, Qz::HALF]).expect("valid").with_labels(&["f"])
    }

    /// `Rep(Z_2)`: `A = Z_2 = {1, e}` with `e` a boson.
    pub fn rep_z2() -> PointedBraidedCategory {
        let g = FiniteAbelianGroup::new(&[2]);
        PointedBraidedCategory::from_quadratic_form(&g, vec![Qz::ZERO, Qz::ZERO]).expect("valid").with_labels(&["e"])
    }

    /// `SVec ⊠ SVec`: simples `1, f, e, fe` with `f, e` fermions.
    pub fn svec_squared() -> PointedBraidedCategory {
        let g = FiniteAbelianGroup::new(&[2, 2]);
        parse_self_braiding(&g, "f:-1,e:-1,fe:+1").expect("valid")
    }

    pub fn with_labels(mut self, labels: &[&str]) -> PointedBraidedCategory {
        self.labels = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn q(&self, x: &[u64]) -> Qz {
        self.q[self.group.index(x) as usize]
    }

    pub fn beta(&self, x: &[u64], y: &[u64]) -> Qz {
        let mut acc = Qz::ZERO;
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc = acc + self.beta[i][j].mul_int((*xi * *yj) as i64);
            }
        }
        acc
    }

    /// Full braiding `b(x, y) = q(x + y) - q(x) - q(y)`.
    pub fn full_braiding(&self, x: &[u64], y: &[u64]) -> Qz {
        self.q(&self.group.add(x, y)) - self.q(x) - self.q(y)
    }

    pub fn name(&self, x: &[u64]) -> String {
        let mut s = String::new();
        for (i, &c) in x.iter().enumerate() {
            match c {
                0 => {}
                1 => s.push_str(&self.labels[i]),
                _ => s.push_str(&format!("{}^{c}", self.labels[i])),
            }
        }
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }
}

fn unit(k: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; k];
    v[i] = 1;
    v
}

fn default_labels(k: usize) -> Vec<String> {
    (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

fn parse_value(s: &str) -> Option<Qz> {
    match s {
        "+1" | "1" => Some(Qz::ZERO),
        "-1" => Some(Qz::HALF),
        "i" | "+i" => Some(Qz::new(1, 4)),
        "-i" => Some(Qz::new(3, 4)),
        _ => {
            let (a, b) = s.split_once('/')?;
            Some(Qz::new(a.trim().parse().ok()?, b.trim().parse().ok().filter(|&d: &u64| d > 0)?))
        }
    }
}

/// Reads `name:value` pairs, e.g. `f:-1,e:-1,fe:+1`. The first `rank`
/// names label the generators in order; later names are products of
/// generator labels and are checked against the form. Values are `±1`,
/// `±i`, or a fraction `k/n` meaning `exp(2πi k/n)`. Pairs of generators
/// whose product is not listed braid trivially.
pub fn parse_self_braiding(group: &FiniteAbelianGroup, spec: &str) -> Result<PointedBraidedCategory, FusionError> {
    let err = |why: &str| FusionError::Syntax(spec.to_string(), why.to_string());
    let k = group.rank();
    let mut pairs = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part.split_once(':').ok_or_else(|| err("expected name:value"))?;
        let v = parse_value(value.trim()).ok_or_else(|| err("bad value"))?;
        pairs.push((name.trim().to_string(), v));
    }
    if pairs.len() < k {
        return Err(err("every generator needs a value"));
    }
    let labels: Vec<String> = pairs[..k].iter().map(|p| p.0.clone()).collect();
    let parse_name = |name: &str| -> Option<Vec<u64>> {
        let mut x = vec![0u64; k];
        let mut rest = name;
        let mut sorted: Vec<(usize, &String)> = labels.iter().enumerate().collect();
        sorted.sort_by_key(|(_, l)| core::cmp::Reverse(l.len()));
        while !rest.is_empty() {
            let (i, l) = sorted.iter().find(|(_, l)| rest.starts_with(l.as_str()))?;
            x[*i] += 1;
            rest = &rest[l.len()..];
        }
        Some(group.add(&x, &vec![0; k]))
    };
    let qg: Vec<Qz> = pairs[..k].iter().map(|p| p.1).collect();
    let mut bg = vec![vec![Qz::ZERO; k]; k];
    for (name, v) in &pairs[k..] {
        let x = parse_name(name).ok_or_else(|| err("unknown element name"))?;
        let ones: Vec<usize> = (0..k).filter(|&i| x[i] != 0).collect();
        if ones.len() == 2 && ones.iter().all(|&i| x[i] == 1) {
            let (i, j) = (ones[0], ones[1]);
            bg[i][j] = *v - qg[i] - qg[j];
            bg[j][i] = bg[i][j];
        }
    }
    // q(Σ a_i g_i) = Σ a_i² q(g_i) + Σ_{i<j} a_i a_j b_ij
    let q: Vec<Qz> = group
        .elements()
        .iter()
        .map(|x| {
            let mut acc = Qz::ZERO;
            for i in 0..k {
                acc = acc + qg[i].mul_int((x[i] * x[i]) as i64);
                for j in i + 1..k {
                    acc = acc + bg[i][j].mul_int((x[i] * x[j]) as i64);
                }
            }
            acc
        })
        .collect();
    let cat = PointedBraidedCategory::from_quadratic_form(group, q)?;
    let cat = PointedBraidedCategory { labels: labels.clone(), ..cat };
    for (name, v) in &pairs {
        let x = parse_name(name).ok_or_else(|| err("unknown element name"))?;
        if cat.q(&x) != *v {
            return Err(FusionError::Inconsistent { name: name.clone(), given: *v, derived: cat.q(&x) });
        }
    }
    Ok(cat)
}

/// Twisted group algebra `C^ω[L]` with grading `φ: L -> A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedAlgebra {
    /// Cyclic orders of `L`, not necessarily normalized.
    pub orders: Vec<u64>,
    /// `φ` of each generator of `L`.
    pub images: Vec<Vec<u64>>,
    /// Bilinear `ω` on pairs of generators.
    pub form: Vec<Vec<Qz>>,
}

impl TwistedAlgebra {
    pub fn unit() -> TwistedAlgebra {
        TwistedAlgebra { orders: Vec::new(), images: Vec::new(), form: Vec::new() }
    }

    fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.orders {
            out = out.into_iter().flat_map(|v| (0..d).map(move |c| [v.as_slice(), &[c]].concat())).collect();
        }
        out
    }

    fn omega(&self, x: &[u64], y: &[u64]) -> Qz {
        let mut acc = Qz::ZERO;
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc = acc + self.form[i][j].mul_int((*xi * *yj) as i64);
            }
        }
        acc
    }

    fn phi(&self, a: &FiniteAbelianGroup, x: &[u64]) -> Vec<u64> {
        let mut acc = a.zero();
        for (c, g) in x.iter().zip(&self.images) {
            acc = a.add(&acc, &a.scale(*c, g));
        }
        acc
    }

    /// `χ(x, y) = ω(x, y) - ω(y, x) - β(φx, φy)`.
    pub fn chi(&self, cat: &PointedBraidedCategory, x: &[u64], y: &[u64]) -> Qz {
        let a = &cat.group;
        self.omega(x, y) - self.omega(y, x) - cat.beta(&self.phi(a, x), &self.phi(a, y))
    }

    pub fn check(&self, cat: &PointedBraidedCategory) -> Result<(), FusionError> {
        let k = self.orders.len();
        if self.images.len() != k || self.form.len() != k || self.form.iter().any(|r| r.len() != k) {
            return Err(FusionError::Malformed("shapes disagree".into()));
        }
        for (i, &d) in self.orders.iter().enumerate() {
            if cat.group.scale(d, &self.images[i]) != cat.group.zero() {
                return Err(FusionError::Malformed(format!("image of generator {i} has order not dividing {d}")));
            }
            for (j, &e) in self.orders.iter().enumerate() {
                let g = d.gcd(&e);
                if self.form[i][j].mul_int(g as i64) != Qz::ZERO {
                    return Err(FusionError::Malformed(format!("ω({i},{j}) is not well defined")));
                }
            }
        }
        Ok(())
    }

    pub fn is_invertible(&self, cat: &PointedBraidedCategory) -> bool {
        let els = self.elements();
        let k = self.orders.len();
        let gens: Vec<Vec<u64>> = (0..k).map(|i| unit(k, i)).collect();
        els.iter().filter(|x| x.iter().any(|&c| c != 0)).all(|x| gens.iter().any(|g| !self.chi(cat, x, g).is_zero()))
    }

    /// `C^{ω1}[L1] ⊗ C^{ω2}[L2]`, graded by `L1 × L2` with
    /// `ω((k1,k2),(k1',k2')) = ω1(k1,k1') + ω2(k2,k2') + β(φk2, φk1')`.
    pub fn tensor(&self, o: &TwistedAlgebra, cat: &PointedBraidedCategory) -> TwistedAlgebra {
        let (k1, k2) = (self.orders.len(), o.orders.len());
        let mut form = vec![vec![Qz::ZERO; k1 + k2]; k1 + k2];
        for i in 0..k1 {
            for j in 0..k1 {
                form[i][j] = self.form[i][j];
            }
        }
        for i in 0..k2 {
            for j in 0..k2 {
                form[k1 + i][k1 + j] = o.form[i][j];
            }
            for j in 0..k1 {
                form[k1 + i][j] = cat.beta(&o.images[i], &self.images[j]);
            }
        }
        let mut images = self.images.clone();
        images.extend(o.images.iter().cloned());
        TwistedAlgebra { orders: [self.orders.as_slice(), &o.orders].concat(), images, form }
    }

    /// Number of simple summands: elements `h` of `ker φ` central for the
    /// commutator, each giving one minimal central idempotent.
    pub fn summand_count(&self, cat: &PointedBraidedCategory) -> usize {
        let a = &cat.group;
        let els = self.elements();
        let k = self.orders.len();
        let gens: Vec<Vec<u64>> = (0..k).map(|i| unit(k, i)).collect();
        els.iter()
            .filter(|h| self.phi(a, h) == a.zero())
            .filter(|h| gens.iter().all(|g| (self.omega(h, g) - self.omega(g, h)).is_zero()))
            .count()
    }
}

/// `(K, α)`: the twisted group algebra `C^α[K]` on a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraObject {
    pub subgroup: Subgroup,
    pub alpha: TwoCocycle,
}

impl AlgebraObject {
    pub fn algebra(&self) -> TwistedAlgebra {
        let d = self.alpha.group.factors();
        let k = d.len();
        let mut form = vec![vec![Qz::ZERO; k]; k];
        for &(i, j, a) in &self.alpha.coefficients {
            form[i][j] = Qz::new(a as i64, d[i]);
        }
        TwistedAlgebra { orders: d.to_vec(), images: self.subgroup.generators.clone(), form }
    }

    pub fn label(&self, cat: &PointedBraidedCategory) -> String {
        let names: Vec<String> = self.subgroup.members.iter().map(|&i| cat.name(&cat.group.element(i))).collect();
        let alpha = if self.alpha.is_trivial() { "trivial" } else { "nontrivial" };
        format!("{{{}}}, {alpha} α", names.join(","))
    }
}

/// All `(K, α)` with `K <= A` and `α ∈ H^2(K; C^×)`.
pub fn algebra_objects(cat: &PointedBraidedCategory) -> Result<Vec<AlgebraObject>, FusionError> {
    if cat.group.order() > 16 {
        return Err(FusionError::TooLarge(cat.group.order()));
    }
    let mut out = Vec::new();
    for k in subgroups(&cat.group)? {
        for alpha in two_cocycle_classes(&k.group)? {
            out.push(AlgebraObject { subgroup: k.clone(), alpha });
        }
    }
    Ok(out)
}

pub fn is_invertible(obj: &AlgebraObject, cat: &PointedBraidedCategory) -> Result<bool, FusionError> {
    if !obj.alpha.is_cocycle() {
        return Err(FusionError::Malformed("α is not a cocycle".into()));
    }
    let alg = obj.algebra();
    alg.check(cat)?;
    Ok(alg.is_invertible(cat))
}

/// Super Morita class: even (matrix superalgebras) or odd (`Cliff(1)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SuperAlgebraClass {
    pub odd: bool,
}

impl SuperAlgebraClass {
    pub const EVEN: SuperAlgebraClass = SuperAlgebraClass { odd: false };
    pub const CLIFF1: SuperAlgebraClass = SuperAlgebraClass { odd: true };

    /// Class of `Cliff(n)`.
    pub fn cliff(n: u32) -> SuperAlgebraClass {
        SuperAlgebraClass { odd: n % 2 == 1 }
    }

    pub fn tensor(self, o: SuperAlgebraClass) -> SuperAlgebraClass {
        SuperAlgebraClass { odd: self.odd ^ o.odd }
    }
}

impl fmt::Display for SuperAlgebraClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.odd { "Cliff(1)" } else { "Mat(1|1) ~ C" })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    Bosonic,
    Fermionic,
}

/// A fusion rule `lhs ≅ t1 ⊕ t2 ⊕ ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRule {
    pub lhs: String,
    pub terms: Vec<String>,
}

impl fmt::Display for FusionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≅ {}", self.lhs, self.terms.join(" ⊕ "))
    }
}

/// `c ⊗ c` for the Cheshire string `c`.
///
/// Bosonic: `c = 1 ⊕ e` in `Rep(Z_2)`; the square splits along the central
/// idempotents of the kernel of the grading, each summand graded onto
/// `{1, e}` again. Fermionic: `c = Cliff(1)` in `SVec`; the square is simple
/// and its Morita class is the sum of the classes.
pub fn cheshire_square(sector: Sector) -> FusionRule {
    match sector {
        Sector::Bosonic => {
            let cat = PointedBraidedCategory::rep_z2();
            let c = TwistedAlgebra { orders: vec![2], images: vec![vec![1]], form: vec![vec![Qz::ZERO]] };
            let n = c.tensor(&c, &cat).summand_count(&cat);
            FusionRule { lhs: "c ⊗ c".into(), terms: vec!["c".into(); n] }
        }
        Sector::Fermionic => {
            let cat = PointedBraidedCategory::svec();
            let c = TwistedAlgebra { orders: vec![2], images: vec![vec![1]], form: vec![vec![Qz::ZERO]] };
            let sq = c.tensor(&c, &cat);
            let class = SuperAlgebraClass::CLIFF1.tensor(SuperAlgebraClass::CLIFF1);
            let n = sq.summand_count(&cat);
            let term = if class.odd { "c" } else { "1" };
            FusionRule { lhs: "c ⊗ c".into(), terms: vec![term.into(); n] }
        }
    }
}

/// Candidate values of `m ⊗ m` in the fermionic sector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MSquare {
    One,
    Cheshire,
}

impl fmt::Display for MSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MSquare::One => "m² ≅ 1",
            MSquare::Cheshire => "m² ≅ c",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSquareResult {
    pub allowed: Vec<MSquare>,
    pub witness: String,
}

/// `m²` is `1` or `c`. With `m` self-braiding `x ∈ {1, e}`, the
/// self-braiding of `m²` is `x^4 = 1`, so `m² ≅ c` needs `β_{c,c}` trivial.
/// `cc_is_fermion` says whether `β_{c,c} = e`; passing `false` is the
/// control case where nothing is ruled out.
pub fn m_square_constraint(m_self_braiding_is_e: bool, cc_is_fermion: bool) -> MSquareResult {
    let x = u64::from(m_self_braiding_is_e);
    let square_braiding = (4 * x) % 2;
    let mut allowed = vec![MSquare::One];
    let witness = if square_braiding == u64::from(cc_is_fermion) {
        allowed.push(MSquare::Cheshire);
        "β_{c,c} trivial: both options stay open".to_string()
    } else {
        "m² ≅ c would force β_{c,c} = x^4 = 1, but β_{c,c} = e".to_string()
    };
    MSquareResult { allowed, witness }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MmeType {
    Abelian,
    Ising,
}

/// One minimal modular extension `Spin(k)_1` of `SVec`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MMETableEntry {
    pub k: u32,
    pub kind: MmeType,
    /// Twice the central charge, mod 16.
    pub twice_central_charge: u32,
}

impl MMETableEntry {
    pub fn central_charge(&self) -> String {
        let c = self.twice_central_charge;
        if c.is_multiple_of(2) {
            format!("{}", c / 2)
        } else {
            format!("{c}/2")
        }
    }
}

/// `k = 0..15`, odd `k` of Ising type, `c = k/2 mod 8`.
pub fn mme_table() -> Vec<MMETableEntry> {
    (0..16)
        .map(|k| MMETableEntry {
            k,
            kind: if k % 2 == 1 { MmeType::Ising } else { MmeType::Abelian },
            twice_central_charge: k % 16,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_objects_with_four_invertible() {
        let cat = PointedBraidedCategory::svec_squared();
        let objs = algebra_objects(&cat).unwrap();
        assert_eq!(objs.len(), 6);
        let verdicts: Vec<(String, bool)> =
            objs.iter().map(|o| (o.label(&cat), is_invertible(o, &cat).unwrap())).collect();
        let inv = verdicts.iter().filter(|v| v.1).count();
        assert_eq!(inv, 4, "{verdicts:?}");
        let find = |l: &str| verdicts.iter().find(|v| v.0 == l).unwrap().1;
        assert!(find("{1}, trivial α"));
        assert!(find("{1,f}, trivial α"));
        assert!(find("{1,e}, trivial α"));
        assert!(!find("{1,fe}, trivial α"));
        assert!(!find("{1,f,e,fe}, trivial α"));
        assert!(find("{1,f,e,fe}, nontrivial α"));
    }

    #[test]
    fn cheshire_rules() {
        assert_eq!(cheshire_square(Sector::Bosonic).to_string(), "c ⊗ c ≅ c ⊕ c");
        assert_eq!(cheshire_square(Sector::Fermionic).to_string(), "c ⊗ c ≅ 1");
        assert_eq!(SuperAlgebraClass::cliff(2), SuperAlgebraClass::EVEN);
    }

    #[test]
    fn m_square() {
        assert_eq!(m_square_constraint(false, true).allowed, [MSquare::One]);
        assert_eq!(m_square_constraint(true, true).allowed, [MSquare::One]);
        assert_eq!(m_square_constraint(false, false).allowed.len(), 2);
    }

    #[test]
    fn mme() {
        let t = mme_table();
        assert_eq!(t.len(), 16);
        assert_eq!(t.iter().filter(|e| e.kind == MmeType::Ising).count(), 8);
        assert_eq!(t[0].kind, MmeType::Abelian);
        assert_eq!(t[1].central_charge(), "1/2");
    }

    #[test]
    fn semion_has_no_lift() {
        let g = FiniteAbelianGroup::new(&[2]);
        assert!(matches!(
            PointedBraidedCategory::from_quadratic_form(&g, vec![Qz::ZERO, Qz::new(1, 4)]),
            Err(FusionError::NotLiftable { .. }) | Err(FusionError::NotQuadratic)
        ));
    }
}
