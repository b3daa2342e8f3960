//! Finitely generated abelian groups in invariant-factor form, plus formal
//! `C^×` summands.
//!
//! `C^×` only ever enters through its torsion subgroup `Q/Z`, so elements of
//! a group are vectors of [`Qz`] coordinates: a cyclic summand `Z/d` holds
//! multiples of `1/d`, a `C^×` summand holds anything.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::qz::Qz;
use crate::zmat::{smith, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invariant factor {0} does not fit in 64 bits")]
    Overflow(String),
    #[error("coordinate {index} = {value} is not in the summand of order {order}")]
    NotInSummand { index: usize, value: Qz, order: u64 },
    #[error("element has {got} coordinates, group has {want} summands")]
    Arity { got: usize, want: usize },
    #[error("operation needs a finite group")]
    Infinite,
}

/// `Z^free ⊕ (C^×)^units ⊕ Z/t1 ⊕ ... ⊕ Z/tk` with `t1 | t2 | ... | tk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    torsion: Vec<u64>,
    free: usize,
    units: usize,
}

impl AbelianGroup {
    pub fn trivial() -> AbelianGroup {
        AbelianGroup::default()
    }

    pub fn cyclic(n: u64) -> AbelianGroup {
        AbelianGroup::from_orders(&[n])
    }

    pub fn units(count: usize) -> AbelianGroup {
        AbelianGroup { units: count, ..Default::default() }
    }

    pub fn integers(rank: usize) -> AbelianGroup {
        AbelianGroup { free: rank, ..Default::default() }
    }

    /// Any list of cyclic orders; normalized to invariant factors.
    /// Orders `0` contribute `Z`, orders `1` are dropped.
    pub fn from_orders(orders: &[u64]) -> AbelianGroup {
        let mut free = 0;
        let mut diag = Vec::new();
        for &o in orders {
            match o {
                0 => free += 1,
                1 => {}
                _ => diag.push(o),
            }
        }
        let mut g = AbelianGroup { torsion: normalize(&diag), free, units: 0 };
        g.torsion.retain(|&t| t != 1);
        g
    }

    pub fn with_units(mut self, count: usize) -> AbelianGroup {
        self.units += count;
        self
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free
    }

    pub fn unit_count(&self) -> usize {
        self.units
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free == 0 && self.units == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free == 0 && self.units == 0
    }

    pub fn order(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.torsion.iter().try_fold(1u64, |a, &t| a.checked_mul(t))
    }

    /// Direct sum.
    pub fn sum(&self, o: &AbelianGroup) -> AbelianGroup {
        let mut orders = self.torsion.clone();
        orders.extend_from_slice(&o.torsion);
        AbelianGroup { torsion: normalize(&orders), free: self.free + o.free, units: self.units + o.units }
    }

    /// Number of elements of order dividing 2 is `2^two_rank`.
    pub fn two_rank(&self) -> usize {
        self.torsion.iter().filter(|t| *t % 2 == 0).count() + self.units
    }

    /// Elementary divisors (prime-power cyclic orders), sorted.
    pub fn elementary_divisors(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for &t in &self.torsion {
            let mut n = t;
            let mut p = 2;
            while n > 1 {
                if n % p == 0 {
                    let mut q = 1;
                    while n % p == 0 {
                        n /= p;
                        q *= p;
                    }
                    out.push(q);
                }
                p += 1;
            }
        }
        out.sort_unstable();
        out
    }
}

/// Invariant factors of `⊕ Z/o_i` (all `o_i >= 1`), ascending, ones dropped.
fn normalize(orders: &[u64]) -> Vec<u64> {
    if orders.is_empty() {
        return Vec::new();
    }
    let n = orders.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, o) in orders.iter().enumerate() {
        m.set(i, i, BigInt::from(*o));
    }
    let s = smith(&m);
    let mut out: Vec<u64> = s.diag.iter().filter(|d| !d.is_one()).map(|d| d.to_u64().expect("order fits")).collect();
    out.sort_unstable();
    out
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut push = |name: String, k: usize| {
            if k == 1 {
                parts.push(name);
            } else if k > 1 {
                parts.push(alloc::format!("{name}^{k}"));
            }
        };
        push(String::from("C^×"), self.units);
        push(String::from("Z"), self.free);
        let mut i = 0;
        while i < self.torsion.len() {
            let t = self.torsion[i];
            let k = self.torsion[i..].iter().take_while(|&&x| x == t).count();
            push(alloc::format!("Z_{t}"), k);
            i += k;
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// A finite group presented as a list of cyclic summands (not necessarily
/// invariant-factor ordered), with `C^×` summands allowed. Elements are
/// coordinate vectors; this is the working model for spectral-sequence rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSum {
    /// `Some(d)` for `Z/d`, `None` for a `C^×` summand.
    pub summands: Vec<Option<u64>>,
}

impl CyclicSum {
    pub fn group(&self) -> AbelianGroup {
        let orders: Vec<u64> = self.summands.iter().filter_map(|s| *s).collect();
        let units = self.summands.iter().filter(|s| s.is_none()).count();
        AbelianGroup::from_orders(&orders).with_units(units)
    }

    pub fn check(&self, x: &[Qz]) -> Result<(), GroupError> {
        if x.len() != self.summands.len() {
            return Err(GroupError::Arity { got: x.len(), want: self.summands.len() });
        }
        for (i, (c, s)) in x.iter().zip(&self.summands).enumerate() {
            if let Some(d) = s {
                if d % c.den() != 0 {
                    return Err(GroupError::NotInSummand { index: i, value: *c, order: *d });
                }
            }
        }
        Ok(())
    }

    /// Quotient by the subgroup generated by finitely many torsion elements.
    ///
    /// The divisible part survives untouched (a divisible group modulo a
    /// finite subgroup is again isomorphic to itself), so only the
    /// projection onto the cyclic summands matters.
    pub fn quotient(&self, gens: &[Vec<Qz>]) -> Result<AbelianGroup, GroupError> {
        for g in gens {
            self.check(g)?;
        }
        let fin: Vec<(usize, u64)> =
            self.summands.iter().enumerate().filter_map(|(i, s)| s.map(|d| (i, d))).collect();
        let units = self.summands.len() - fin.len();
        let n = fin.len();
        let mut m = IntMatrix::zeros(n, n + gens.len());
        for (r, (_, d)) in fin.iter().enumerate() {
            m.set(r, r, BigInt::from(*d));
        }
        for (c, g) in gens.iter().enumerate() {
            for (r, (i, d)) in fin.iter().enumerate() {
                let k = g[*i].num() * (d / g[*i].den());
                m.set(r, n + c, BigInt::from(k));
            }
        }
        let s = smith(&m);
        let mut orders = Vec::new();
        for (k, dk) in s.diag.iter().enumerate() {
            if k >= n {
                break;
            }
            if dk.is_zero() {
                orders.push(0);
            } else {
                orders.push(dk.to_u64().ok_or_else(|| GroupError::Overflow(alloc::format!("{dk}")))?);
            }
        }
        Ok(AbelianGroup::from_orders(&orders).with_units(units))
    }

    /// Elements of order at most two in the image, encoded as F2 bits:
    /// one bit per even cyclic summand or `C^×` summand.
    pub fn two_torsion_bits(&self, x: &[Qz]) -> Option<Vec<bool>> {
        let mut out = Vec::new();
        for (c, s) in x.iter().zip(&self.summands) {
            let even = s.is_none_or(|d| d % 2 == 0);
            if c.is_zero() {
                if even {
                    out.push(false);
                }
            } else if *c == Qz::HALF && even {
                out.push(true);
            } else {
                return None;
            }
        }
        Some(out)
    }
}

/// A homomorphism between finite groups given in invariant-factor form by
/// an integer matrix on generators.
#[derive(Clone, Debug)]
pub struct FiniteHom {
    pub src: AbelianGroup,
    pub dst: AbelianGroup,
    /// `matrix[r][c]`: coordinate `r` of the image of source generator `c`.
    pub matrix: Vec<Vec<i64>>,
}

impl FiniteHom {
    pub fn new(src: AbelianGroup, dst: AbelianGroup, matrix: Vec<Vec<i64>>) -> Result<FiniteHom, GroupError> {
        if !src.is_finite() || !dst.is_finite() {
            return Err(GroupError::Infinite);
        }
        let h = FiniteHom { src, dst, matrix };
        // well-defined: t_c * image(c) = 0 in dst
        for (c, &t) in h.src.torsion().iter().enumerate() {
            for (r, &d) in h.dst.torsion().iter().enumerate() {
                let v = h.entry(r, c) as i128 * t as i128;
                if v.rem_euclid(d as i128) != 0 {
                    return Err(GroupError::NotInSummand { index: r, value: Qz::new(h.entry(r, c), d), order: t });
                }
            }
        }
        Ok(h)
    }

    fn entry(&self, r: usize, c: usize) -> i64 {
        self.matrix.get(r).and_then(|row| row.get(c)).copied().unwrap_or(0)
    }

    /// Image subgroup: `dst` relations plus image columns.
    pub fn image_order(&self) -> u64 {
        let dst_order = self.dst.order().unwrap_or(1);
        dst_order / self.cokernel().order().unwrap_or(1)
    }

    pub fn cokernel(&self) -> AbelianGroup {
        let n = self.dst.torsion().len();
        let k = self.src.torsion().len();
        let mut m = IntMatrix::zeros(n, n + k);
        for (r, d) in self.dst.torsion().iter().enumerate() {
            m.set(r, r, BigInt::from(*d));
            for c in 0..k {
                m.set(r, n + c, BigInt::from(self.entry(r, c)));
            }
        }
        let s = smith(&m);
        let orders: Vec<u64> = s.diag.iter().map(|d| if d.is_zero() { 0 } else { d.to_u64().unwrap_or(0) }).collect();
        AbelianGroup::from_orders(&orders)
    }

    pub fn kernel_order(&self) -> u64 {
        self.src.order().unwrap_or(1) / self.image_order()
    }
}

/// Checks exactness of `A0 -f1-> A1 -f2-> A2 ...` at every interior spot
/// by comparing orders: `|ker f_{k+1}| = |im f_k|`, plus `f_{k+1} f_k = 0`.
pub fn is_exact(maps: &[FiniteHom]) -> bool {
    for w in maps.windows(2) {
        let (f, g) = (&w[0], &w[1]);
        if f.dst != g.src {
            return false;
        }
        // composite vanishes on generators
        for c in 0..f.src.torsion().len() {
            for (r, &d) in g.dst.torsion().iter().enumerate() {
                let mut acc: i128 = 0;
                for m in 0..f.dst.torsion().len() {
                    acc += g.entry(r, m) as i128 * f.entry(m, c) as i128;
                }
                if acc.rem_euclid(d as i128) != 0 {
                    return false;
                }
            }
        }
        if g.kernel_order() != f.image_order() {
            return false;
        }
    }
    true
}
