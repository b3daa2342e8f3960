//! Class expressions such as `Sq2E + EM + Sq2Sq1M` or `M^2 + Sq1M*M`.
//!
//! A term is a product of factors; a factor is a run of `Sq<k>` (or
//! `Sq^k`) applied to a fundamental-class name, optionally raised to a power.
//! Names are matched longest-first, so `EM` reads as `E·M`.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::ring::{cup, sq_word};
use super::{CohomologyClass, EmError, SpaceSpec};
use crate::steenrod::SqMonomial;

pub fn parse_class(space: &Arc<SpaceSpec>, s: &str) -> Result<CohomologyClass, EmError> {
    let err = |why: &str| EmError::ClassSyntax(s.to_string(), why.to_string());
    let mut names: Vec<&str> = space.factors().iter().map(|f| f.name.as_str()).collect();
    names.sort_by_key(|n| core::cmp::Reverse(n.len()));
    let mut total: Option<CohomologyClass> = None;
    for raw in s.split('+') {
        let term: String = raw.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '·').collect();
        if term.is_empty() {
            return Err(err("empty term"));
        }
        let value = if term == "0" {
            None
        } else if term == "1" {
            Some(CohomologyClass::one(space))
        } else {
            let mut acc = CohomologyClass::one(space);
            let mut rest = term.as_str();
            while !rest.is_empty() {
                let mut word = Vec::new();
                while let Some(r) = rest.strip_prefix("Sq") {
                    let r = r.strip_prefix('^').unwrap_or(r);
                    let digits = r.chars().take_while(|c| c.is_ascii_digit()).count();
                    if digits == 0 {
                        return Err(err("Sq needs an index"));
                    }
                    word.push(r[..digits].parse::<u32>().map_err(|_| err("bad index"))?);
                    rest = &r[digits..];
                }
                let name = names.iter().find(|n| rest.starts_with(**n)).ok_or_else(|| err("unknown generator"))?;
                rest = &rest[name.len()..];
                let mut x = sq_word(&SqMonomial::new(&word), &CohomologyClass::fundamental(space, name)?);
                if let Some(r) = rest.strip_prefix('^') {
                    let digits = r.chars().take_while(|c| c.is_ascii_digit()).count();
                    let e: u32 = r[..digits].parse().map_err(|_| err("bad exponent"))?;
                    rest = &r[digits..];
                    let base = x.clone();
                    x = CohomologyClass::one(space);
                    for _ in 0..e {
                        x = cup(&x, &base)?;
                    }
                }
                acc = cup(&acc, &x)?;
            }
            Some(acc)
        };
        if let Some(v) = value {
            total = Some(match total {
                None => v,
                Some(t) => t.add(&v).map_err(|_| err("terms of different degrees"))?,
            });
        }
    }
    Ok(total.unwrap_or_else(|| CohomologyClass::zero(space, 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parses_products_and_squares() {
        let s = Arc::new(SpaceSpec::parse("K(Z2,3;E)xK(Z2,2;M)").unwrap());
        let x = parse_class(&s, "Sq2E + EM + Sq2Sq1M").unwrap();
        assert_eq!(x.degree(), 5);
        assert_eq!(x.terms().count(), 3);
        assert_eq!(parse_class(&s, "Sq2M").unwrap(), parse_class(&s, "M^2").unwrap());
        assert_eq!(parse_class(&s, "M*Sq1M").unwrap().to_string(), "MSq1M");
        assert!(parse_class(&s, "E + M").is_err());
        assert!(parse_class(&s, "Q").is_err());
        assert!(parse_class(&s, "0").unwrap().is_zero());
    }
}
