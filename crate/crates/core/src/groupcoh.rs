//! Cohomology of finite abelian groups with trivial coefficients, computed
//! from the normalized bar complex.
//!
//! Only integral cohomology is computed directly. Since the bar cochains
//! are free of finite rank, other coefficients follow by universal
//! coefficients:
//! `H^n(G; M) = H^n(G; Z) ⊗ M ⊕ Tor(H^{n+1}(G; Z), M)`.
//! For `M = C^×` (torsion `Q/Z`) that reads
//! `H^n(G; C^×) = (C^×)^{rank H^n(G;Z)} ⊕ H^{n+1}(G; Z)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

use crate::abelian::AbelianGroup;
use crate::qz::Qz;
use crate::zmat::{factor_u64, invariant_factors, SparseMatrix};

/// Default bound on `rows * cols` of a single coboundary matrix.
pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupCohError {
    #[error("coboundary in degree {degree} has {entries} entries, cap is {cap}")]
    CapExceeded { degree: usize, entries: u128, cap: u64 },
    #[error("cannot parse group `{0}`")]
    Syntax(String),
    #[error("group of order {0} is too large (limit {1})")]
    TooLarge(u64, u64),
    #[error("invariant factor does not fit in 64 bits")]
    Overflow,
    #[error("cocycle count {found} disagrees with |H^2| = {expected}")]
    CountMismatch { found: usize, expected: u64 },
}

/// Finite abelian group `Z/d1 × ... × Z/dk` with `d1 | d2 | ... | dk`.
/// Elements are coordinate tuples reduced mod the factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> FiniteAbelianGroup {
        FiniteAbelianGroup { factors: Vec::new() }
    }

    /// Normalizes any list of cyclic orders to invariant factors.
    pub fn new(orders: &[u64]) -> FiniteAbelianGroup {
        let g = AbelianGroup::from_orders(&orders.iter().copied().filter(|&o| o != 0).collect::<Vec<_>>());
        FiniteAbelianGroup { factors: g.torsion().to_vec() }
    }

    /// `Z2`, `Z2xZ4`, `Z_2 x Z_2`, `Z2^3`, or `1` for the trivial group.
    pub fn parse(s: &str) -> Result<FiniteAbelianGroup, GroupCohError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() || t == "1" || t == "0" || t == "trivial" {
            return Ok(FiniteAbelianGroup::trivial());
        }
        let bad = || GroupCohError::Syntax(s.to_string());
        let mut orders = Vec::new();
        for part in t.split(['x', '×', '*']) {
            let p = part.strip_prefix('Z').ok_or_else(bad)?;
            let p = p.strip_prefix('_').unwrap_or(p);
            let (base, exp) = match p.split_once('^') {
                Some((b, e)) => (b, e.parse::<usize>().map_err(|_| bad())?),
                None => (p, 1),
            };
            let d: u64 = base.parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            orders.extend(core::iter::repeat_n(d, exp));
        }
        Ok(FiniteAbelianGroup::new(&orders))
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn as_abelian(&self) -> AbelianGroup {
        AbelianGroup::from_orders(&self.factors)
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.factors.len()]
    }

    /// Elements in mixed-radix order; index 0 is the identity.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn element(&self, mut i: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.factors.len());
        for &d in &self.factors {
            out.push(i % d);
            i /= d;
        }
        out
    }

    pub fn index(&self, x: &[u64]) -> u64 {
        let mut i = 0;
        for (k, &d) in self.factors.iter().enumerate().rev() {
            i = i * d + x[k] % d;
        }
        i
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        self.factors.iter().enumerate().map(|(k, &d)| (x[k] + y[k]) % d).collect()
    }

    pub fn neg(&self, x: &[u64]) -> Vec<u64> {
        self.factors.iter().enumerate().map(|(k, &d)| (d - x[k] % d) % d).collect()
    }

    pub fn scale(&self, k: u64, x: &[u64]) -> Vec<u64> {
        self.factors.iter().enumerate().map(|(i, &d)| (k % d) * x[i] % d).collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        self.factors.iter().zip(x).fold(1, |acc, (&d, &c)| acc.lcm(&(d / d.gcd(&c))))
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_abelian())
    }
}

/// Trivial coefficient module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Z,
    Zm(u64),
    /// `C^×`, through its torsion subgroup `Q/Z`.
    Cx,
}

impl Coefficients {
    pub fn parse(s: &str) -> Option<Coefficients> {
        let t = s.trim();
        match t {
            "Z" | "z" => Some(Coefficients::Z),
            "cx" | "Cx" | "C^x" | "C^×" | "QmodZ" | "Q/Z" => Some(Coefficients::Cx),
            _ => {
                let n = t.strip_prefix('Z').or_else(|| t.strip_prefix('z'))?;
                let n = n.strip_prefix('_').unwrap_or(n);
                n.parse::<u64>().ok().filter(|&m| m >= 1).map(Coefficients::Zm)
            }
        }
    }
}

/// The coboundaries `C^{n-1} -> C^n -> C^{n+1}` of the normalized bar complex.
#[derive(Clone, Debug)]
pub struct CochainComplexSlice {
    pub degree: usize,
    pub before: SparseMatrix,
    pub after: SparseMatrix,
}

impl CochainComplexSlice {
    /// `after * before == 0`.
    pub fn is_complex(&self) -> bool {
        self.after.mul(&self.before).is_zero()
    }
}

/// Number of normalized `n`-cochain coordinates.
fn cochain_rank(g: &FiniteAbelianGroup, n: usize) -> u128 {
    (g.order() as u128 - 1).pow(n as u32)
}

/// `δ: C^n -> C^{n+1}` as a sparse matrix with rows indexed by
/// `(n+1)`-tuples of nonzero elements.
pub fn coboundary(g: &FiniteAbelianGroup, n: usize, cap: u64) -> Result<SparseMatrix, GroupCohError> {
    let rows = cochain_rank(g, n + 1);
    let cols = cochain_rank(g, n);
    if rows * cols > cap as u128 {
        return Err(GroupCohError::CapExceeded { degree: n, entries: rows * cols, cap });
    }
    let (rows, cols) = (rows as usize, cols as usize);
    let mut d = SparseMatrix::new(rows, cols);
    let q = g.order() - 1;
    if q == 0 {
        return Ok(d);
    }
    let elems = g.elements();
    // sum table on element indices
    let ord = g.order() as usize;
    let mut table = vec![0usize; ord * ord];
    for a in 0..ord {
        for b in 0..ord {
            table[a * ord + b] = g.index(&g.add(&elems[a], &elems[b])) as usize;
        }
    }
    let mut tuple = vec![0usize; n + 1];
    for r in 0..rows {
        // decode row index into nonzero element indices 1..=q
        let mut x = r;
        for t in tuple.iter_mut() {
            *t = x % q as usize + 1;
            x /= q as usize;
        }
        let encode = |t: &[usize]| -> Option<usize> {
            let mut c = 0;
            for &e in t.iter().rev() {
                if e == 0 {
                    return None;
                }
                c = c * q as usize + (e - 1);
            }
            Some(c)
        };
        if let Some(c) = encode(&tuple[1..]) {
            d.add(r, c, 1);
        }
        for i in 0..n {
            let mut t: Vec<usize> = Vec::with_capacity(n);
            t.extend_from_slice(&tuple[..i]);
            t.push(table[tuple[i] * ord + tuple[i + 1]]);
            t.extend_from_slice(&tuple[i + 2..]);
            if let Some(c) = encode(&t) {
                d.add(r, c, if (i + 1) % 2 == 0 { 1 } else { -1 });
            }
        }
        if let Some(c) = encode(&tuple[..n]) {
            d.add(r, c, if (n + 1).is_multiple_of(2) { 1 } else { -1 });
        }
    }
    Ok(d)
}

pub fn cochain_slice(g: &FiniteAbelianGroup, n: usize, cap: u64) -> Result<CochainComplexSlice, GroupCohError> {
    if n == 0 {
        return Ok(CochainComplexSlice { degree: 0, before: SparseMatrix::new(1, 0), after: coboundary(g, 0, cap)? });
    }
    Ok(CochainComplexSlice { degree: n, before: coboundary(g, n - 1, cap)?, after: coboundary(g, n, cap)? })
}

/// Nonunit invariant factors and rank of a coboundary.
fn factors_and_rank(d: &SparseMatrix) -> Result<(Vec<u64>, usize), GroupCohError> {
    let f = invariant_factors(d);
    let rank = f.len();
    let torsion = f
        .iter()
        .filter(|x| !x.is_one())
        .map(|x| factor_u64(x).ok_or(GroupCohError::Overflow))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((torsion, rank))
}

/// `H^n(G; Z)`: free rank and torsion.
fn integral(g: &FiniteAbelianGroup, n: usize, cap: u64) -> Result<AbelianGroup, GroupCohError> {
    let cn = cochain_rank(g, n) as usize;
    let (_, r_after) = factors_and_rank(&coboundary(g, n, cap)?)?;
    let (torsion, r_before) = if n == 0 { (Vec::new(), 0) } else { factors_and_rank(&coboundary(g, n - 1, cap)?)? };
    let mut orders = torsion;
    orders.extend(core::iter::repeat_n(0, cn - r_after - r_before));
    Ok(AbelianGroup::from_orders(&orders))
}

/// Every abelian group of order at most `n`, by invariant factors.
pub fn abelian_groups_up_to(n: u64) -> Vec<FiniteAbelianGroup> {
    fn go(rest: u64, prev: u64, acc: &mut Vec<u64>, out: &mut Vec<FiniteAbelianGroup>) {
        if rest == 1 {
            out.push(FiniteAbelianGroup::new(acc));
            return;
        }
        for d in 2..=rest {
            if rest.is_multiple_of(d) && (prev == 0 || prev.is_multiple_of(d)) {
                acc.push(d);
                go(rest / d, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    for order in 1..=n {
        go(order, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// `H^n(G; M)` with the default size cap.
pub fn cohomology(g: &FiniteAbelianGroup, m: Coefficients, n: usize) -> Result<AbelianGroup, GroupCohError> {
    cohomology_with_cap(g, m, n, DEFAULT_CAP)
}

pub fn cohomology_with_cap(g: &FiniteAbelianGroup, m: Coefficients, n: usize, cap: u64) -> Result<AbelianGroup, GroupCohError> {
    let h = integral(g, n, cap)?;
    match m {
        Coefficients::Z => Ok(h),
        Coefficients::Zm(k) => {
            let next = integral(g, n + 1, cap)?;
            let mut orders = vec![k; h.free_rank()];
            orders.extend(h.torsion().iter().map(|&t| t.gcd(&k)));
            orders.extend(next.torsion().iter().map(|&t| t.gcd(&k)));
            Ok(AbelianGroup::from_orders(&orders))
        }
        Coefficients::Cx => {
            let next = integral(g, n + 1, cap)?;
            Ok(AbelianGroup::from_orders(next.torsion()).with_units(h.free_rank()))
        }
    }
}

/// A normalized bilinear 2-cocycle `ω(x, y) = Σ_{i<j} a_ij x_i y_j / d_i`
/// with values in `Q/Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCocycle {
    pub group: FiniteAbelianGroup,
    /// `(i, j, a_ij)` with `i < j`, `0 < a_ij < d_i`.
    pub coefficients: Vec<(usize, usize, u64)>,
}

impl TwoCocycle {
    pub fn trivial(group: &FiniteAbelianGroup) -> TwoCocycle {
        TwoCocycle { group: group.clone(), coefficients: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn eval(&self, x: &[u64], y: &[u64]) -> Qz {
        let f = self.group.factors();
        let mut acc = Qz::ZERO;
        for &(i, j, a) in &self.coefficients {
            let num = (a as i128 * x[i] as i128 * y[j] as i128).rem_euclid(f[i] as i128);
            acc = acc + Qz::new(num as i64, f[i]);
        }
        acc
    }

    /// `ω(x, y) - ω(y, x)`, an invariant of the class.
    pub fn commutator(&self, x: &[u64], y: &[u64]) -> Qz {
        self.eval(x, y) - self.eval(y, x)
    }

    /// Checks `ω(y,z) - ω(x+y,z) + ω(x,y+z) - ω(x,y) = 0` everywhere.
    pub fn is_cocycle(&self) -> bool {
        let g = &self.group;
        let els = g.elements();
        els.iter().all(|x| {
            els.iter().all(|y| {
                els.iter().all(|z| {
                    let v = self.eval(y, z) - self.eval(&g.add(x, y), z) + self.eval(x, &g.add(y, z)) - self.eval(x, y);
                    v.is_zero()
                })
            })
        })
    }
}

impl fmt::Display for TwoCocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let d = self.group.factors();
        let parts: Vec<String> =
            self.coefficients.iter().map(|(i, j, a)| format!("{a}/{} x{i} y{j}", d[*i])).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One representative per class of `H^2(K; C^×)`, for `|K| <= 16`.
pub fn two_cocycle_classes(k: &FiniteAbelianGroup) -> Result<Vec<TwoCocycle>, GroupCohError> {
    if k.order() > 16 {
        return Err(GroupCohError::TooLarge(k.order(), 16));
    }
    let d = k.factors();
    let pairs: Vec<(usize, usize, u64)> =
        (0..d.len()).flat_map(|i| (i + 1..d.len()).map(move |j| (i, j, d[i].gcd(&d[j])))).collect();
    let mut out = vec![TwoCocycle::trivial(k)];
    for &(i, j, m) in &pairs {
        let mut next = Vec::new();
        for c in &out {
            for a in 0..m {
                let mut c = c.clone();
                if a != 0 {
                    // gcd(d_i, d_j) = d_i, so a/d_i generates the Z/d_i
                    c.coefficients.push((i, j, a * (d[i] / m)));
                }
                next.push(c);
            }
        }
        out = next;
    }
    let expected = cohomology(k, Coefficients::Cx, 2)?.order().unwrap_or(0);
    if out.len() as u64 != expected {
        return Err(GroupCohError::CountMismatch { found: out.len(), expected });
    }
    Ok(out)
}

/// A subgroup of `A`, presented as an abstract group with an embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    /// Element indices of `A` in the subgroup, sorted.
    pub members: Vec<u64>,
    pub group: FiniteAbelianGroup,
    /// Image in `A` of the generator of each factor of `group`.
    pub generators: Vec<Vec<u64>>,
}

impl Subgroup {
    pub fn order(&self) -> u64 {
        self.members.len() as u64
    }

    /// Image in `A` of an element of `group`.
    pub fn embed(&self, a: &FiniteAbelianGroup, k: &[u64]) -> Vec<u64> {
        let mut acc = a.zero();
        for (c, gen) in k.iter().zip(&self.generators) {
            acc = a.add(&acc, &a.scale(*c, gen));
        }
        acc
    }
}

fn closure(a: &FiniteAbelianGroup, start: u64, x: &[u64]) -> u64 {
    let mut mask = start;
    loop {
        let mut next = mask;
        for i in 0..a.order() {
            if mask >> i & 1 == 1 {
                next |= 1 << a.index(&a.add(&a.element(i), x));
            }
        }
        if next == mask {
            return mask;
        }
        mask = next;
    }
}

/// Bitmasks of all subgroups of `a` (`|a| <= 64`).
fn subgroup_masks(a: &FiniteAbelianGroup) -> Vec<u64> {
    let mut seen: BTreeMap<u64, ()> = BTreeMap::new();
    let mut stack = vec![1u64];
    while let Some(m) = stack.pop() {
        if seen.insert(m, ()).is_some() {
            continue;
        }
        for i in 0..a.order() {
            if m >> i & 1 == 0 {
                stack.push(closure(a, m, &a.element(i)));
            }
        }
    }
    seen.into_keys().collect()
}

/// Cyclic decomposition of the subgroup `mask`: repeatedly split off a
/// cyclic summand of maximal order, which is always a direct summand.
fn decompose(a: &FiniteAbelianGroup, mask: u64, all: &[u64]) -> Vec<(u64, Vec<u64>)> {
    if mask == 1 {
        return Vec::new();
    }
    let members: Vec<u64> = (0..a.order()).filter(|i| mask >> i & 1 == 1).collect();
    let g = members.iter().map(|&i| a.element(i)).max_by_key(|x| (a.element_order(x), core::cmp::Reverse(a.index(x)))).unwrap();
    let ord = a.element_order(&g);
    let cyc = closure(a, 1, &g);
    let want = members.len() as u64 / ord;
    let comp = all
        .iter()
        .copied()
        .find(|&h| h & !mask == 0 && h & cyc == 1 && h.count_ones() as u64 == want)
        .expect("a cyclic summand of maximal order has a complement");
    let mut out = decompose(a, comp, all);
    out.push((ord, g));
    out
}

/// All subgroups of `a`, ordered by size and then by members.
pub fn subgroups(a: &FiniteAbelianGroup) -> Result<Vec<Subgroup>, GroupCohError> {
    if a.order() > 64 {
        return Err(GroupCohError::TooLarge(a.order(), 64));
    }
    let all = subgroup_masks(a);
    let mut out: Vec<Subgroup> = all
        .iter()
        .map(|&m| {
            let parts = decompose(a, m, &all);
            let orders: Vec<u64> = parts.iter().map(|p| p.0).collect();
            Subgroup {
                members: (0..a.order()).filter(|i| m >> i & 1 == 1).collect(),
                group: FiniteAbelianGroup { factors: orders },
                generators: parts.into_iter().map(|p| p.1).collect(),
            }
        })
        .collect();
    out.sort_by(|x, y| (x.members.len(), &x.members).cmp(&(y.members.len(), &y.members)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn cyclic_groups_and_units() {
        let z2 = FiniteAbelianGroup::parse("Z2").unwrap();
        assert!(cohomology(&z2, Coefficients::Cx, 4).unwrap().is_trivial());
        assert_eq!(cohomology(&z2, Coefficients::Cx, 3).unwrap().to_string(), "Z_2");
        assert_eq!(cohomology(&z2, Coefficients::Cx, 0).unwrap().to_string(), "C^×");
        assert_eq!(cohomology(&z2, Coefficients::Z, 0).unwrap().to_string(), "Z");
        let v = FiniteAbelianGroup::parse("Z2xZ2").unwrap();
        assert_eq!(cohomology(&v, Coefficients::Cx, 2).unwrap().to_string(), "Z_2");
    }

    #[test]
    fn parse_groups() {
        assert_eq!(FiniteAbelianGroup::parse("Z_4 x Z_2").unwrap().factors(), &[2, 4]);
        assert_eq!(FiniteAbelianGroup::parse("Z2^3").unwrap().order(), 8);
        assert_eq!(FiniteAbelianGroup::parse("Z2xZ3").unwrap().factors(), &[6]);
        assert!(FiniteAbelianGroup::parse("Q").is_err());
    }

    #[test]
    fn subgroups_of_klein_four() {
        let v = FiniteAbelianGroup::parse("Z2^2").unwrap();
        let s = subgroups(&v).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s[4].group, v);
        let z4z2 = FiniteAbelianGroup::parse("Z4xZ2").unwrap();
        assert_eq!(subgroups(&z4z2).unwrap().len(), 8);
    }

    #[test]
    fn cap_is_enforced() {
        let g = FiniteAbelianGroup::parse("Z4xZ4").unwrap();
        assert!(matches!(cohomology_with_cap(&g, Coefficients::Z, 3, 1000), Err(GroupCohError::CapExceeded { .. })));
    }
}
