//! Mod 2 ring structure: bases, Steenrod action, cup products.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{CohomologyClass, Coeff, EMGenerator, EmError, Monomial, SpaceSpec, Z2_WINDOW};
use crate::steenrod::{adem_reduce, admissible_of_degree, SqMonomial};

/// Serre generators of one factor up to `max_deg`.
pub(crate) fn generators(space: &SpaceSpec, factor: usize, max_deg: u32) -> Vec<EMGenerator> {
    let f = &space.factors()[factor];
    let mut out = Vec::new();
    if f.n > max_deg {
        return out;
    }
    match f.group {
        Coeff::Z => out.push(EMGenerator::fundamental(factor)),
        Coeff::Z2 => {
            for d in 0..=max_deg - f.n {
                for word in admissible_of_degree(d) {
                    if word.excess().map(|e| e < f.n).unwrap_or(false) {
                        out.push(EMGenerator { factor, word });
                    }
                }
            }
        }
    }
    out
}

/// Monomial basis of `H^degree(X; Z_2)` with the default window.
pub fn z2_basis(space: &Arc<SpaceSpec>, degree: u32) -> Result<Vec<CohomologyClass>, EmError> {
    z2_basis_window(space, degree, Z2_WINDOW)
}

pub fn z2_dim(space: &Arc<SpaceSpec>, degree: u32) -> Result<usize, EmError> {
    Ok(z2_basis(space, degree)?.len())
}

pub fn z2_basis_window(space: &Arc<SpaceSpec>, degree: u32, window: u32) -> Result<Vec<CohomologyClass>, EmError> {
    if degree > window {
        return Err(EmError::BeyondWindow { degree, window });
    }
    Ok(monomials_of_degree(space, degree).into_iter().map(|m| CohomologyClass::monomial(space, m)).collect())
}

pub(crate) fn monomials_of_degree(space: &SpaceSpec, degree: u32) -> Vec<Monomial> {
    let mut gens: Vec<(EMGenerator, u32)> = Vec::new();
    for f in 0..space.factors().len() {
        for g in generators(space, f, degree) {
            let d = g.degree(space);
            gens.push((g, d));
        }
    }
    gens.sort();
    fn go(gens: &[(EMGenerator, u32)], idx: usize, remaining: u32, cur: &mut Vec<(EMGenerator, u32)>, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            out.push(Monomial(cur.clone()));
            return;
        }
        for k in idx..gens.len() {
            let (g, d) = &gens[k];
            let mut e = 1;
            while e * d <= remaining {
                cur.push((g.clone(), e));
                go(gens, k + 1, remaining - e * d, cur, out);
                cur.pop();
                e += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&gens, 0, degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `Sq^J ι` for admissible `J`, rewritten in the Serre basis: excess below
/// `n` is a generator, excess `n` is the square of `Sq^{J'} ι`, larger excess
/// vanishes by instability.
fn eval_admissible(space: &Arc<SpaceSpec>, factor: usize, word: &SqMonomial) -> CohomologyClass {
    let n = space.factors()[factor].n;
    let e = word.excess().expect("reduced words are admissible");
    if e < n {
        CohomologyClass::monomial(space, Monomial::generator(EMGenerator { factor, word: word.clone() }))
    } else if e == n {
        eval_admissible(space, factor, &word.tail()).square()
    } else {
        CohomologyClass::zero(space, n + word.degree())
    }
}

fn sq_generator(space: &Arc<SpaceSpec>, k: u32, g: &EMGenerator) -> CohomologyClass {
    let deg = g.degree(space);
    if k == 0 {
        return CohomologyClass::monomial(space, Monomial::generator(g.clone()));
    }
    if k > deg {
        return CohomologyClass::zero(space, deg + k);
    }
    let f = &space.factors()[g.factor];
    match f.group {
        // CP^∞: Sq^2 t = t^2, everything else in positive degree vanishes
        Coeff::Z => {
            if k == 2 {
                CohomologyClass::monomial(space, Monomial::generator(g.clone()).pow(2))
            } else {
                CohomologyClass::zero(space, deg + k)
            }
        }
        Coeff::Z2 => {
            let mut word = vec![k];
            word.extend_from_slice(g.word.indices());
            let mut out = CohomologyClass::zero(space, deg + k);
            for j in adem_reduce(&word).terms() {
                out.add_assign(&eval_admissible(space, g.factor, j));
            }
            out.degree = deg + k;
            out
        }
    }
}

/// `Sq^k` of a single monomial by the Cartan formula. Powers are split
/// into 2-power pieces, where `Sq^i(y^{2^b}) = (Sq^{i/2^b} y)^{2^b}`.
fn sq_monomial(space: &Arc<SpaceSpec>, k: u32, m: &Monomial) -> CohomologyClass {
    let deg = m.degree(space);
    let ku = k as usize;
    let mut cur: Vec<CohomologyClass> = (0..=ku).map(|j| CohomologyClass::zero(space, j as u32)).collect();
    cur[0] = CohomologyClass::one(space);
    for (g, e) in m.factors() {
        let dg = g.degree(space);
        let mut b = 0;
        while (e >> b) != 0 {
            if (e >> b) & 1 == 1 {
                let p = 1u32 << b;
                // total square of g^{2^b}, truncated at k
                let mut pieces: Vec<(usize, CohomologyClass)> = Vec::new();
                let mut j = 0;
                while j * p <= k && j <= dg {
                    let mut c = sq_generator(space, j, g);
                    for _ in 0..b {
                        c = c.square();
                    }
                    if !c.is_zero() {
                        pieces.push(((j * p) as usize, c));
                    }
                    j += 1;
                }
                let mut next: Vec<CohomologyClass> = (0..=ku).map(|j| CohomologyClass::zero(space, j as u32)).collect();
                for (a, x) in cur.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (i, y) in &pieces {
                        if a + i <= ku {
                            let prod = cup_unchecked(x, y);
                            next[a + i].add_assign(&prod);
                        }
                    }
                }
                cur = next;
            }
            b += 1;
        }
    }
    let mut out = core::mem::replace(&mut cur[ku], CohomologyClass::zero(space, 0));
    out.degree = deg + k;
    out
}

/// `Sq^k x`.
pub fn sq_act(k: u32, x: &CohomologyClass) -> CohomologyClass {
    let space = x.space().clone();
    let mut out = CohomologyClass::zero(&space, x.degree() + k);
    if k > x.degree() {
        return out;
    }
    for m in x.terms() {
        out.add_assign(&sq_monomial(&space, k, m));
    }
    out.degree = x.degree() + k;
    out
}

fn cup_unchecked(x: &CohomologyClass, y: &CohomologyClass) -> CohomologyClass {
    let mut out = CohomologyClass::zero(x.space(), x.degree() + y.degree());
    for a in x.terms() {
        for b in y.terms() {
            out.toggle(a.mul(b));
        }
    }
    out.degree = x.degree() + y.degree();
    out
}

/// Cup product.
pub fn cup(x: &CohomologyClass, y: &CohomologyClass) -> Result<CohomologyClass, EmError> {
    if !(Arc::ptr_eq(x.space(), y.space()) || x.space() == y.space()) {
        return Err(EmError::SpaceMismatch);
    }
    Ok(cup_unchecked(x, y))
}

/// Applies `Sq^{i1} ... Sq^{ik}` (rightmost first).
pub fn sq_word(word: &SqMonomial, x: &CohomologyClass) -> CohomologyClass {
    let mut c = x.clone();
    for &i in word.indices().iter().rev() {
        c = sq_act(i, &c);
    }
    c
}

/// Pulls `x` back along the map into `target` that sends the named
/// fundamental classes to the given classes. Unlisted factors go to the
/// factor of the same name in `target`.
pub fn substitute(
    x: &CohomologyClass,
    target: &Arc<SpaceSpec>,
    images: &[(&str, CohomologyClass)],
) -> Result<CohomologyClass, EmError> {
    let src = x.space().clone();
    let mut fund: Vec<CohomologyClass> = Vec::new();
    for f in src.factors() {
        let img = match images.iter().find(|(n, _)| *n == f.name) {
            Some((_, c)) => {
                if !(Arc::ptr_eq(c.space(), target) || **c.space() == **target) {
                    return Err(EmError::SpaceMismatch);
                }
                if c.degree() != f.n && !c.is_zero() {
                    return Err(EmError::Inhomogeneous(c.degree(), f.n));
                }
                let mut c = c.clone();
                c.degree = f.n;
                c
            }
            None => CohomologyClass::fundamental(target, &f.name)?,
        };
        fund.push(img);
    }
    for (n, _) in images {
        if src.factor_index(n).is_none() {
            return Err(EmError::UnknownName((*n).into()));
        }
    }
    let mut out = CohomologyClass::zero(target, x.degree());
    for m in x.terms() {
        let mut acc = CohomologyClass::one(target);
        for (g, e) in m.factors() {
            let img = sq_word(&g.word, &fund[g.factor]);
            for _ in 0..*e {
                acc = cup_unchecked(&acc, &img);
            }
        }
        out.add_assign(&acc);
    }
    out.degree = x.degree();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emspaces::parse_class;

    fn km() -> Arc<SpaceSpec> {
        Arc::new(SpaceSpec::k_z2(2, "M"))
    }

    #[test]
    fn dimensions_of_k_z2_2() {
        let s = km();
        let dims: Vec<usize> = (0..=8).map(|d| z2_dim(&s, d).unwrap()).collect();
        assert_eq!(dims, vec![1, 0, 1, 1, 1, 2, 2, 2, 3]);
        assert!(z2_basis(&s, 13).is_err());
    }

    #[test]
    fn squares_on_m() {
        let s = km();
        let m = CohomologyClass::fundamental(&s, "M").unwrap();
        assert_eq!(sq_act(2, &m), m.square());
        assert!(sq_act(1, &m.square()).is_zero());
        assert_eq!(sq_act(0, &m), m);
        let v = parse_class(&s, "Sq2Sq1M").unwrap();
        assert_eq!(sq_act(1, &v), parse_class(&s, "Sq1M^2").unwrap());
    }

    #[test]
    fn cp_infinity_squares() {
        let s = Arc::new(SpaceSpec::cp_infinity("t"));
        let t = CohomologyClass::fundamental(&s, "t").unwrap();
        let t2 = t.square();
        assert!(sq_act(2, &t2).is_zero());
        assert_eq!(sq_act(2, &cup(&t2, &t).unwrap()), cup(&t2, &t2).unwrap());
        assert!(sq_act(1, &t).is_zero());
    }
}
