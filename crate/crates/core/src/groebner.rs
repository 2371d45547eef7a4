//! Buchberger's algorithm, normal forms, and standard monomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::field::PrimeField;
use crate::order::MonomialOrder;
use crate::poly::{Monomial, PolyError, Polynomial};

pub const DEFAULT_DEGREE_CAP: u64 = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("no generators given")]
    Empty,
    #[error("all generators are zero")]
    AllZero,
    #[error(transparent)]
    Incompatible(#[from] PolyError),
    #[error("S-pair of degree {degree} exceeds the degree cap {cap}; the input is probably not what was intended")]
    DegreeCapExceeded { cap: u64, degree: u64 },
}

/// Leading monomial and coefficient of a nonzero polynomial.
pub fn leading_term(f: &Polynomial, order: MonomialOrder) -> Option<(&Monomial, u64)> {
    f.raw_terms().iter().max_by(|(a, _), (b, _)| order.compare(a, b)).map(|(m, &c)| (m, c))
}

pub fn leading_monomial(f: &Polynomial, order: MonomialOrder) -> Option<&Monomial> {
    leading_term(f, order).map(|(m, _)| m)
}

fn make_monic(f: &Polynomial, order: MonomialOrder) -> Polynomial {
    let (_, c) = leading_term(f, order).expect("nonzero");
    let inv = f.field().inv(c).expect("nonzero leading coefficient");
    f.scale(inv)
}

/// A reduced Gröbner basis: monic generators, none of whose monomials is
/// divisible by another generator's leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    generators: Vec<Polynomial>,
    leading: Vec<Monomial>,
    order: MonomialOrder,
    original: Vec<Polynomial>,
    field: PrimeField,
    num_vars: usize,
}

impl GroebnerBasis {
    /// The basis of the zero ideal in `num_vars` variables.
    pub fn zero_ideal(field: PrimeField, num_vars: usize, order: MonomialOrder) -> Self {
        Self { generators: Vec::new(), leading: Vec::new(), order, original: Vec::new(), field, num_vars }
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn original(&self) -> &[Polynomial] {
        &self.original
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leading.iter().any(|l| l.divides(m))
    }

    fn check(&self, f: &Polynomial) -> Result<(), PolyError> {
        if f.field() != self.field {
            return Err(PolyError::ModulusMismatch(f.field().characteristic(), self.field.characteristic()));
        }
        if f.num_vars() != self.num_vars {
            return Err(PolyError::VarCountMismatch(f.num_vars(), self.num_vars));
        }
        Ok(())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(f)?;
        Ok(reduce(f, &self.generators, &self.leading, self.order))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, PolyError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Degree-`m` monomials outside the leading-term ideal, largest first.
    pub fn standard_monomials(&self, m: u32) -> Vec<Monomial> {
        let mut out: Vec<Monomial> =
            Monomial::all_of_degree(self.num_vars, m).into_iter().filter(|mono| self.is_standard(mono)).collect();
        out.sort_by(|a, b| self.order.compare(b, a));
        out
    }
}

/// Full reduction of `f` by monic `gens` with leading monomials `leading`.
fn reduce(f: &Polynomial, gens: &[Polynomial], leading: &[Monomial], order: MonomialOrder) -> Polynomial {
    let field = f.field();
    let mut work: BTreeMap<Vec<i64>, (Monomial, u64)> =
        f.raw_terms().iter().map(|(m, &c)| (order.sort_key(m), (m.clone(), c))).collect();
    let mut rem = Polynomial::zero(field, f.num_vars());
    while let Some((_, (m, c))) = work.pop_last() {
        let Some(gi) = leading.iter().position(|l| l.divides(&m)) else {
            rem.add_term(m, c);
            continue;
        };
        let u = leading[gi].quotient_into(&m).expect("divides");
        let lead = &leading[gi];
        for (t, &tc) in gens[gi].raw_terms() {
            if t == lead {
                continue;
            }
            let tm = t.mul(&u);
            let delta = field.neg(field.mul(c, tc));
            let key = order.sort_key(&tm);
            match work.get_mut(&key) {
                Some(entry) => {
                    entry.1 = field.add(entry.1, delta);
                    if entry.1 == 0 {
                        work.remove(&key);
                    }
                }
                None => {
                    work.insert(key, (tm, delta));
                }
            }
        }
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lf: &Monomial, lg: &Monomial) -> Polynomial {
    let l = lf.lcm(lg);
    let uf = lf.quotient_into(&l).expect("lcm");
    let ug = lg.quotient_into(&l).expect("lcm");
    &f.mul_monomial(&uf) - &g.mul_monomial(&ug)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are processed smallest lcm first (ties by index); pairs with coprime
/// leading monomials are skipped.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with_cap(gens, order, DEFAULT_DEGREE_CAP)
}

pub fn buchberger_with_cap(
    gens: &[Polynomial],
    order: MonomialOrder,
    degree_cap: u64,
) -> Result<GroebnerBasis, GroebnerError> {
    let first = gens.first().ok_or(GroebnerError::Empty)?;
    let (field, num_vars) = (first.field(), first.num_vars());
    for g in gens {
        if g.field() != field {
            return Err(PolyError::ModulusMismatch(field.characteristic(), g.field().characteristic()).into());
        }
        if g.num_vars() != num_vars {
            return Err(PolyError::VarCountMismatch(num_vars, g.num_vars()).into());
        }
    }
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut leading: Vec<Monomial> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let r = reduce(g, &basis, &leading, order);
        if !r.is_zero() {
            let r = make_monic(&r, order);
            leading.push(leading_monomial(&r, order).unwrap().clone());
            basis.push(r);
        }
    }
    if basis.is_empty() {
        return Err(GroebnerError::AllZero);
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 1..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    loop {
        pairs.retain(|&(i, j)| !leading[i].is_coprime(&leading[j]));
        let Some(best) = (0..pairs.len()).min_by(|&a, &b| {
            let (ia, ja) = pairs[a];
            let (ib, jb) = pairs[b];
            let la = leading[ia].lcm(&leading[ja]);
            let lb = leading[ib].lcm(&leading[jb]);
            match order.compare(&la, &lb) {
                Ordering::Equal => (ia, ja).cmp(&(ib, jb)),
                other => other,
            }
        }) else {
            break;
        };
        let (i, j) = pairs.remove(best);
        let lcm_deg = leading[i].lcm(&leading[j]).degree();
        if lcm_deg > degree_cap {
            return Err(GroebnerError::DegreeCapExceeded { cap: degree_cap, degree: lcm_deg });
        }
        let s = s_polynomial(&basis[i], &basis[j], &leading[i], &leading[j]);
        let r = reduce(&s, &basis, &leading, order);
        if r.is_zero() {
            continue;
        }
        let r = make_monic(&r, order);
        let k = basis.len();
        leading.push(leading_monomial(&r, order).unwrap().clone());
        basis.push(r);
        for i in 0..k {
            pairs.push((i, k));
        }
    }

    // minimal basis: drop generators whose leading monomial is a multiple of another's
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant =
            (0..basis.len()).any(|j| j != i && leading[j].divides(&leading[i]) && (leading[j] != leading[i] || j < i));
        if !redundant {
            keep.push(i);
        }
    }
    keep.sort_by(|&a, &b| order.compare(&leading[a], &leading[b]));
    let min_lead: Vec<Monomial> = keep.iter().map(|&i| leading[i].clone()).collect();
    let min_basis: Vec<Polynomial> = keep.iter().map(|&i| basis[i].clone()).collect();

    // interreduce tails
    let mut generators = Vec::with_capacity(min_basis.len());
    for (k, g) in min_basis.iter().enumerate() {
        let others: Vec<Polynomial> =
            min_basis.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, h)| h.clone()).collect();
        let other_lead: Vec<Monomial> =
            min_lead.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, l)| l.clone()).collect();
        let lead = Polynomial::monomial(field, min_lead[k].clone());
        let tail = g - &lead;
        let tail = reduce(&tail, &others, &other_lead, order);
        generators.push(&lead + &tail);
    }

    Ok(GroebnerBasis { generators, leading: min_lead, order, original: gens.to_vec(), field, num_vars })
}
