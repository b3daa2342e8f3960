//! The mod 2 Steenrod algebra in the admissible basis.
//!
//! A word `Sq^{i1} ... Sq^{ik}` is reduced by repeatedly rewriting an
//! inadmissible adjacent pair `Sq^a Sq^b` (`a < 2b`) with the Adem relation
//!
//! ```text
//! Sq^a Sq^b = sum_{c=0}^{a/2} C(b-c-1, a-2c) Sq^{a+b-c} Sq^c
//! ```
//!
//! Termination: a rewrite at position `p` keeps the prefix and replaces the
//! entry `a` there by `a+b-c > a`, so every word produced is strictly larger
//! in lexicographic order than the word it came from while the degree stays
//! fixed. There are finitely many words of a given degree, so rewriting
//! stops.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Operations are validated up to this total degree.
pub const DEGREE_CAP: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SteenrodError {
    #[error("Sq^{0:?} is not admissible")]
    NotAdmissible(Vec<u32>),
    #[error("cannot add elements of degrees {0} and {1}")]
    Inhomogeneous(u32, u32),
    #[error("bad word {0:?}: expected comma-separated positive integers")]
    Parse(alloc::string::String),
}

/// `Sq^{i1} ... Sq^{ik}`; the empty word is `Sq^0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SqMonomial(Vec<u32>);

impl SqMonomial {
    /// Builds a monomial; zero indices (`Sq^0`) are dropped.
    pub fn new(indices: &[u32]) -> SqMonomial {
        SqMonomial(indices.iter().copied().filter(|&i| i > 0).collect())
    }

    pub fn identity() -> SqMonomial {
        SqMonomial(Vec::new())
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= 2 * w[1])
    }

    /// `i1 - (i2 + ... + ik)`, rejecting inadmissible input.
    pub fn excess(&self) -> Result<u32, SteenrodError> {
        if !self.is_admissible() {
            return Err(SteenrodError::NotAdmissible(self.0.clone()));
        }
        Ok(match self.0.split_first() {
            None => 0,
            Some((first, rest)) => first - rest.iter().sum::<u32>(),
        })
    }

    /// Drops the leading operation.
    pub fn tail(&self) -> SqMonomial {
        SqMonomial(self.0.get(1..).unwrap_or(&[]).to_vec())
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }
}

impl fmt::Display for SqMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "Sq0");
        }
        for i in &self.0 {
            write!(f, "Sq{i}")?;
        }
        Ok(())
    }
}

/// Binomial coefficient mod 2 by Lucas: `C(n, k)` is odd iff `k & !n == 0`.
pub fn binom2(n: i64, k: i64) -> bool {
    if n < 0 || k < 0 || k > n {
        return false;
    }
    (k & !n) == 0
}

/// Formal F2-sum of admissible monomials of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SteenrodElement {
    terms: BTreeSet<SqMonomial>,
}

impl SteenrodElement {
    pub fn zero() -> SteenrodElement {
        SteenrodElement::default()
    }

    pub fn one() -> SteenrodElement {
        SteenrodElement::from_admissible(SqMonomial::identity())
    }

    /// Wraps an admissible monomial without reducing.
    pub fn from_admissible(m: SqMonomial) -> SteenrodElement {
        debug_assert!(m.is_admissible());
        let mut terms = BTreeSet::new();
        terms.insert(m);
        SteenrodElement { terms }
    }

    /// `Sq^i` for a single index.
    pub fn sq(i: u32) -> SteenrodElement {
        SteenrodElement::from_admissible(SqMonomial::new(&[i]))
    }

    pub fn terms(&self) -> impl Iterator<Item = &SqMonomial> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero element.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().next().map(|m| m.degree())
    }

    pub fn add(&self, o: &SteenrodElement) -> Result<SteenrodElement, SteenrodError> {
        if let (Some(a), Some(b)) = (self.degree(), o.degree()) {
            if a != b {
                return Err(SteenrodError::Inhomogeneous(a, b));
            }
        }
        Ok(SteenrodElement { terms: self.terms.symmetric_difference(&o.terms).cloned().collect() })
    }

    fn toggle(&mut self, m: SqMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, m) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Which inadmissible pair to rewrite first. The canonical form does not
/// depend on the choice; both are exposed so that can be tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// One Adem rewrite of the pair `(a, b)`, `a < 2b`: the list of `(a+b-c, c)`.
fn adem_pair(a: u32, b: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for c in 0..=a / 2 {
        if binom2(b as i64 - c as i64 - 1, a as i64 - 2 * c as i64) {
            out.push((a + b - c, c));
        }
    }
    out
}

/// Canonical admissible form of the composite `Sq^{w1} ... Sq^{wk}`.
pub fn adem_reduce(word: &[u32]) -> SteenrodElement {
    adem_reduce_with(word, Strategy::Leftmost)
}

pub fn adem_reduce_with(word: &[u32], strategy: Strategy) -> SteenrodElement {
    // pending words with F2 multiplicity
    let mut pending: BTreeMap<Vec<u32>, bool> = BTreeMap::new();
    let start: Vec<u32> = word.iter().copied().filter(|&i| i > 0).collect();
    pending.insert(start, true);
    let mut done = SteenrodElement::zero();
    while let Some((w, odd)) = pending.pop_first() {
        if !odd {
            continue;
        }
        let pos = match strategy {
            Strategy::Leftmost => (0..w.len().saturating_sub(1)).find(|&p| w[p] < 2 * w[p + 1]),
            Strategy::Rightmost => (0..w.len().saturating_sub(1)).rev().find(|&p| w[p] < 2 * w[p + 1]),
        };
        match pos {
            None => done.toggle(SqMonomial(w)),
            Some(p) => {
                for (x, y) in adem_pair(w[p], w[p + 1]) {
                    let mut nw = Vec::with_capacity(w.len());
                    nw.extend_from_slice(&w[..p]);
                    nw.push(x);
                    if y > 0 {
                        nw.push(y);
                    }
                    nw.extend_from_slice(&w[p + 2..]);
                    let e = pending.entry(nw).or_insert(false);
                    *e = !*e;
                }
            }
        }
    }
    done
}

/// Bilinear extension of concatenation followed by reduction.
pub fn compose(a: &SteenrodElement, b: &SteenrodElement) -> SteenrodElement {
    let mut out = SteenrodElement::zero();
    for x in &a.terms {
        for y in &b.terms {
            let mut w = x.0.clone();
            w.extend_from_slice(&y.0);
            for m in adem_reduce(&w).terms {
                out.toggle(m);
            }
        }
    }
    out
}

/// Parses `"2,1"` or `"Sq2Sq1"` style words.
pub fn parse_word(s: &str) -> Result<Vec<u32>, SteenrodError> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    let err = || SteenrodError::Parse(alloc::string::String::from(s));
    if t.starts_with("Sq") {
        return t
            .split("Sq")
            .skip(1)
            .map(|p| p.trim().trim_start_matches('^').parse::<u32>().map_err(|_| err()))
            .collect();
    }
    t.split(',').map(|p| p.trim().parse::<u32>().map_err(|_| err())).collect()
}

/// Every admissible monomial of the given degree, in increasing order.
pub fn admissible_of_degree(degree: u32) -> Vec<SqMonomial> {
    fn go(remaining: u32, max_next: u32, prefix: &mut Vec<u32>, out: &mut Vec<SqMonomial>) {
        if remaining == 0 {
            out.push(SqMonomial(prefix.clone()));
            return;
        }
        for i in 1..=remaining.min(max_next) {
            prefix.push(i);
            go(remaining - i, i / 2, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(degree, degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn el(ms: &[&[u32]]) -> SteenrodElement {
        let mut e = SteenrodElement::zero();
        for m in ms {
            e.toggle(SqMonomial::new(m));
        }
        e
    }

    #[test]
    fn adem_examples() {
        assert_eq!(adem_reduce(&[1, 2]), el(&[&[3]]));
        assert_eq!(adem_reduce(&[1, 1]), SteenrodElement::zero());
        assert_eq!(adem_reduce(&[2, 1]), el(&[&[2, 1]]));
        assert_eq!(adem_reduce(&[2, 2]), el(&[&[3, 1]]));
        assert_eq!(adem_reduce(&[]), SteenrodElement::one());
        // Sq^2 Sq^3 = Sq^5 + Sq^4 Sq^1
        assert_eq!(adem_reduce(&[2, 3]), el(&[&[5], &[4, 1]]));
        // Sq^3 Sq^2 = 0
        assert_eq!(adem_reduce(&[3, 2]), SteenrodElement::zero());
    }

    #[test]
    fn excess_examples() {
        assert_eq!(SqMonomial::new(&[2, 1]).excess(), Ok(1));
        assert_eq!(SqMonomial::identity().excess(), Ok(0));
        assert_eq!(SqMonomial::new(&[3]).excess(), Ok(3));
        assert!(SqMonomial::new(&[1, 2]).excess().is_err());
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(&SteenrodElement::sq(1), &SteenrodElement::sq(2)), el(&[&[3]]));
        assert_eq!(compose(&SteenrodElement::sq(2), &SteenrodElement::sq(2)), el(&[&[3, 1]]));
        let x = el(&[&[4, 2]]);
        assert_eq!(compose(&SteenrodElement::one(), &x), x);
    }

    #[test]
    fn admissible_counts() {
        // dimensions of the Steenrod algebra in degrees 0..=8
        let dims: Vec<usize> = (0..=8).map(|d| admissible_of_degree(d).len()).collect();
        assert_eq!(dims, vec![1, 1, 1, 2, 2, 2, 3, 4, 4]);
    }

    #[test]
    fn parse_words() {
        assert_eq!(parse_word("2,1").unwrap(), vec![2, 1]);
        assert_eq!(parse_word("Sq2Sq1").unwrap(), vec![2, 1]);
        assert_eq!(parse_word("").unwrap(), Vec::<u32>::new());
        assert!(parse_word("a,b").is_err());
    }
}
