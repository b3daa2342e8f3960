//! Cohomology of finite products of Eilenberg–MacLane spaces `K(Z_2, n)`
//! and `K(Z, 2)`.
//!
//! Mod 2, each `K(Z_2, n)` is polynomial on the Serre generators
//! `Sq^I ι_n` with `I` admissible of excess `< n`, and `K(Z, 2)` is
//! polynomial on one class `t` of degree 2. Products follow by Künneth.
//! The `C^×` groups are assembled from Bockstein data, see [`cx`].

mod cx;
mod expr;
mod ring;

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

pub use cx::{cx_group, CxGroupEntry, CxModel, CxSummand, CX_WINDOW};
pub use expr::parse_class;
pub use ring::{cup, sq_act, sq_word, substitute, z2_basis, z2_basis_window, z2_dim};

use crate::steenrod::SqMonomial;

/// Default top degree for mod 2 bases.
pub const Z2_WINDOW: u32 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmError {
    #[error("degree {degree} is beyond the window {window}")]
    BeyondWindow { degree: u32, window: u32 },
    #[error("unvalidated: {0}")]
    Unvalidated(String),
    #[error("classes live on different spaces")]
    SpaceMismatch,
    #[error("cannot add classes of degrees {0} and {1}")]
    Inhomogeneous(u32, u32),
    #[error("bad space expression {0:?}: {1}")]
    SpaceSyntax(String, String),
    #[error("bad class expression {0:?}: {1}")]
    ClassSyntax(String, String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("no factor named {0:?}")]
    UnknownName(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coeff {
    Z2,
    Z,
}

/// One factor `K(G, n)` with the name of its fundamental class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub group: Coeff,
    pub n: u32,
    pub name: String,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.group {
            Coeff::Z2 => "Z2",
            Coeff::Z => "Z",
        };
        write!(f, "K({g},{};{})", self.n, self.name)
    }
}

/// An ordered product of Eilenberg–MacLane factors; the empty product is a point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceSpec {
    factors: Vec<Factor>,
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && !s.starts_with("Sq")
        && !s.chars().all(|c| c.is_ascii_digit())
        && !s.chars().any(|c| c.is_whitespace() || "+*^(),;·".contains(c))
}

impl SpaceSpec {
    pub fn point() -> SpaceSpec {
        SpaceSpec { factors: Vec::new() }
    }

    pub fn new(factors: Vec<Factor>) -> Result<SpaceSpec, EmError> {
        for (i, f) in factors.iter().enumerate() {
            if !valid_name(&f.name) {
                return Err(EmError::InvalidSpace(alloc::format!("bad generator name {:?}", f.name)));
            }
            if factors[..i].iter().any(|g| g.name == f.name) {
                return Err(EmError::InvalidSpace(alloc::format!("duplicate name {:?}", f.name)));
            }
            if f.n == 0 {
                return Err(EmError::InvalidSpace("degree must be at least 1".into()));
            }
            if f.group == Coeff::Z && f.n != 2 {
                return Err(EmError::InvalidSpace("K(Z,n) is only modelled for n = 2".into()));
            }
        }
        Ok(SpaceSpec { factors })
    }

    /// Convenience: `K(Z_2, n)` named `name`.
    pub fn k_z2(n: u32, name: &str) -> SpaceSpec {
        SpaceSpec::new(alloc::vec![Factor { group: Coeff::Z2, n, name: name.into() }]).expect("valid factor")
    }

    /// Convenience: `K(Z, 2)` named `name`.
    pub fn cp_infinity(name: &str) -> SpaceSpec {
        SpaceSpec::new(alloc::vec![Factor { group: Coeff::Z, n: 2, name: name.into() }]).expect("valid factor")
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_point(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor_index(&self, name: &str) -> Option<usize> {
        self.factors.iter().position(|f| f.name == name)
    }

    /// `A x B`.
    pub fn product(&self, o: &SpaceSpec) -> Result<SpaceSpec, EmError> {
        let mut f = self.factors.clone();
        f.extend(o.factors.iter().cloned());
        SpaceSpec::new(f)
    }

    /// Parses `K(Z2,3;E)xK(Z2,2;M)`, `K(Z,2;t)` or `pt`.
    pub fn parse(s: &str) -> Result<SpaceSpec, EmError> {
        let bad = |why: &str| EmError::SpaceSyntax(s.to_string(), why.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() || t == "pt" || t == "*" {
            return Ok(SpaceSpec::point());
        }
        let mut factors = Vec::new();
        let mut rest = t.as_str();
        loop {
            let body = rest.strip_prefix("K(").ok_or_else(|| bad("expected K("))?;
            let close = body.find(')').ok_or_else(|| bad("missing )"))?;
            let inner = &body[..close];
            rest = &body[close + 1..];
            let (gn, name) = match inner.split_once(';') {
                Some((a, b)) => (a, String::from(b)),
                None => (inner, alloc::format!("x{}", factors.len() + 1)),
            };
            let (g, n) = gn.split_once(',').ok_or_else(|| bad("expected K(G,n;NAME)"))?;
            let group = match g {
                "Z2" | "Z_2" | "Z/2" => Coeff::Z2,
                "Z" => Coeff::Z,
                _ => return Err(bad("group must be Z2 or Z")),
            };
            let n: u32 = n.parse().map_err(|_| bad("degree must be a positive integer"))?;
            factors.push(Factor { group, n, name });
            if rest.is_empty() {
                break;
            }
            rest = rest.strip_prefix('x').or_else(|| rest.strip_prefix('×')).ok_or_else(|| bad("factors are joined by x"))?;
        }
        SpaceSpec::new(factors)
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "pt");
        }
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Serre generator `Sq^I ι` of one factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EMGenerator {
    pub factor: usize,
    pub word: SqMonomial,
}

impl EMGenerator {
    pub fn degree(&self, space: &SpaceSpec) -> u32 {
        space.factors[self.factor].n + self.word.degree()
    }

    pub fn fundamental(factor: usize) -> EMGenerator {
        EMGenerator { factor, word: SqMonomial::identity() }
    }

    fn write(&self, space: &SpaceSpec, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.word.is_empty() {
            write!(f, "{}", self.word)?;
        }
        write!(f, "{}", space.factors[self.factor].name)
    }
}

/// Product of generator powers, sorted by generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(EMGenerator, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn generator(g: EMGenerator) -> Monomial {
        Monomial(alloc::vec![(g, 1)])
    }

    pub fn factors(&self) -> &[(EMGenerator, u32)] {
        &self.0
    }

    pub fn degree(&self, space: &SpaceSpec) -> u32 {
        self.0.iter().map(|(g, e)| g.degree(space) * e).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out: Vec<(EMGenerator, u32)> = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < o.0.len() {
            let take_left = j >= o.0.len() || (i < self.0.len() && self.0[i].0 <= o.0[j].0);
            let (g, e) = if take_left {
                i += 1;
                self.0[i - 1].clone()
            } else {
                j += 1;
                o.0[j - 1].clone()
            };
            match out.last_mut() {
                Some((lg, le)) if *lg == g => *le += e,
                _ => out.push((g, e)),
            }
        }
        Monomial(out)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|(g, e)| (g.clone(), e * k)).collect())
    }

    fn write(&self, space: &SpaceSpec, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (g, e) in &self.0 {
            g.write(space, f)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Homogeneous F2-polynomial in Serre generators.
#[derive(Clone, Debug)]
pub struct CohomologyClass {
    space: Arc<SpaceSpec>,
    degree: u32,
    terms: alloc::collections::BTreeSet<Monomial>,
}

impl PartialEq for CohomologyClass {
    fn eq(&self, o: &Self) -> bool {
        self.degree == o.degree && self.terms == o.terms && (Arc::ptr_eq(&self.space, &o.space) || self.space == o.space)
    }
}

impl Eq for CohomologyClass {}

impl CohomologyClass {
    pub fn zero(space: &Arc<SpaceSpec>, degree: u32) -> CohomologyClass {
        CohomologyClass { space: space.clone(), degree, terms: Default::default() }
    }

    pub fn one(space: &Arc<SpaceSpec>) -> CohomologyClass {
        CohomologyClass::monomial(space, Monomial::one())
    }

    pub fn monomial(space: &Arc<SpaceSpec>, m: Monomial) -> CohomologyClass {
        let degree = m.degree(space);
        let mut terms = alloc::collections::BTreeSet::new();
        terms.insert(m);
        CohomologyClass { space: space.clone(), degree, terms }
    }

    /// The fundamental class of the named factor.
    pub fn fundamental(space: &Arc<SpaceSpec>, name: &str) -> Result<CohomologyClass, EmError> {
        let i = space.factor_index(name).ok_or_else(|| EmError::UnknownName(name.into()))?;
        Ok(CohomologyClass::monomial(space, Monomial::generator(EMGenerator::fundamental(i))))
    }

    pub fn space(&self) -> &Arc<SpaceSpec> {
        &self.space
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    pub(crate) fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add(&self, o: &CohomologyClass) -> Result<CohomologyClass, EmError> {
        if !(Arc::ptr_eq(&self.space, &o.space) || self.space == o.space) {
            return Err(EmError::SpaceMismatch);
        }
        if self.degree != o.degree && !self.is_zero() && !o.is_zero() {
            return Err(EmError::Inhomogeneous(self.degree, o.degree));
        }
        let degree = if self.is_zero() { o.degree } else { self.degree };
        Ok(CohomologyClass { space: self.space.clone(), degree, terms: self.terms.symmetric_difference(&o.terms).cloned().collect() })
    }

    pub(crate) fn add_assign(&mut self, o: &CohomologyClass) {
        if self.is_zero() {
            self.degree = o.degree;
        }
        for m in &o.terms {
            self.toggle(m.clone());
        }
    }

    /// Frobenius: squaring is additive mod 2.
    pub fn square(&self) -> CohomologyClass {
        CohomologyClass {
            space: self.space.clone(),
            degree: 2 * self.degree,
            terms: self.terms.iter().map(|m| m.pow(2)).collect(),
        }
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, m) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            m.write(&self.space, f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parse_and_print_spaces() {
        let s = SpaceSpec::parse("K(Z2,3;E)xK(Z2,2;M)").unwrap();
        assert_eq!(s.factors().len(), 2);
        assert_eq!(s.to_string(), "K(Z2,3;E)xK(Z2,2;M)");
        assert!(SpaceSpec::parse("pt").unwrap().is_point());
        assert!(SpaceSpec::parse("K(Z,3;t)").is_err());
        assert!(SpaceSpec::parse("K(Z2,2;M)xK(Z2,3;M)").is_err());
        assert!(SpaceSpec::parse("K(Q,2;M)").is_err());
    }
}
