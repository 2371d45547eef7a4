//! Standard-graded complete intersections `R = K[x_1..x_N]/(H_1..H_r)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::assumptions::{Assumption, AssumptionSet};
use crate::field::PrimeField;
use crate::groebner::{buchberger_with_cap, GroebnerBasis, GroebnerError, DEFAULT_DEGREE_CAP};
use crate::order::MonomialOrder;
use crate::poly::{Monomial, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("relation {index} is not homogeneous of positive degree")]
    BadRelation { index: usize },
    #[error("{relations} relations in {vars} variables cannot form a complete intersection")]
    TooManyRelations { relations: usize, vars: usize },
    #[error("{needed_for} needs the `{flag}` assumption flag, which is not set")]
    MissingAssumption { flag: Assumption, needed_for: &'static str },
    #[error(
        "degree {degree}: Hilbert function gives {hilbert} but there are {standard} standard monomials \
         (Gröbner bug or the relations are not a complete intersection)"
    )]
    HilbertMismatch { degree: u32, hilbert: u64, standard: u64 },
}

/// Standard monomials of `R_m` with their column positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    pub index: HashMap<Monomial, usize>,
}

impl GradedBasis {
    pub fn new(degree: u32, monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self { degree, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

#[derive(Debug)]
pub struct RingPresentation {
    field: PrimeField,
    var_names: Vec<String>,
    relations: Vec<Polynomial>,
    relation_degrees: Vec<u32>,
    flags: AssumptionSet,
    order: MonomialOrder,
    gb: OnceLock<Result<Arc<GroebnerBasis>, GroebnerError>>,
}

impl Clone for RingPresentation {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(v) = self.gb.get() {
            let _ = gb.set(v.clone());
        }
        Self {
            field: self.field,
            var_names: self.var_names.clone(),
            relations: self.relations.clone(),
            relation_degrees: self.relation_degrees.clone(),
            flags: self.flags.clone(),
            order: self.order,
            gb,
        }
    }
}

impl PartialEq for RingPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.var_names == other.var_names
            && self.relations == other.relations
            && self.flags == other.flags
            && self.order == other.order
    }
}

impl RingPresentation {
    pub fn new(
        field: PrimeField,
        var_names: Vec<String>,
        relations: Vec<Polynomial>,
        flags: AssumptionSet,
        order: MonomialOrder,
    ) -> Result<Self, RingError> {
        let n = var_names.len();
        if relations.len() > n {
            return Err(RingError::TooManyRelations { relations: relations.len(), vars: n });
        }
        let mut relation_degrees = Vec::with_capacity(relations.len());
        for (index, h) in relations.iter().enumerate() {
            if h.field() != field {
                return Err(PolyError::ModulusMismatch(field.characteristic(), h.field().characteristic()).into());
            }
            if h.num_vars() != n {
                return Err(PolyError::VarCountMismatch(n, h.num_vars()).into());
            }
            match h.homogeneous_degree() {
                Some(d) if d >= 1 => relation_degrees.push(d as u32),
                _ => return Err(RingError::BadRelation { index }),
            }
        }
        Ok(Self { field, var_names, relations, relation_degrees, flags, order, gb: OnceLock::new() })
    }

    /// The polynomial ring `F_p[vars]` with no relations.
    pub fn polynomial_ring(field: PrimeField, var_names: Vec<String>, flags: AssumptionSet) -> Self {
        Self::new(field, var_names, Vec::new(), flags, MonomialOrder::Grevlex).expect("no relations")
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn relation_degrees(&self) -> &[u32] {
        &self.relation_degrees
    }

    pub fn flags(&self) -> &AssumptionSet {
        &self.flags
    }

    pub fn has(&self, flag: Assumption) -> bool {
        self.flags.contains(&flag)
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Krull dimension `N - r`.
    pub fn dim(&self) -> usize {
        self.num_vars() - self.relations.len()
    }

    pub fn parse_poly(&self, text: &str) -> Result<Polynomial, PolyError> {
        Polynomial::parse(text, &self.var_names, self.characteristic())
    }

    pub fn format_poly(&self, f: &Polynomial) -> String {
        f.format_with(&self.var_names)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        m.format_with(&self.var_names)
    }

    /// Gröbner basis of the relations, computed once.
    pub fn groebner(&self) -> Result<Arc<GroebnerBasis>, RingError> {
        self.gb
            .get_or_init(|| {
                if self.relations.is_empty() {
                    Ok(Arc::new(GroebnerBasis::zero_ideal(self.field, self.num_vars(), self.order)))
                } else {
                    buchberger_with_cap(&self.relations, self.order, DEFAULT_DEGREE_CAP).map(Arc::new)
                }
            })
            .clone()
            .map_err(RingError::from)
    }

    /// Normal form modulo the relations.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial, RingError> {
        Ok(self.groebner()?.normal_form(f)?)
    }

    /// `dim_K R_m`: coefficient of `t^m` in `prod_j (1 - t^{d_j}) / (1 - t)^N`.
    pub fn hilbert_dim(&self, m: u32) -> u64 {
        hilbert_function(self.num_vars(), &self.relation_degrees, m)
    }

    pub fn graded_basis(&self, m: u32) -> Result<GradedBasis, RingError> {
        let monomials = self.groebner()?.standard_monomials(m);
        let hilbert = self.hilbert_dim(m);
        if monomials.len() as u64 != hilbert {
            return Err(RingError::HilbertMismatch { degree: m, hilbert, standard: monomials.len() as u64 });
        }
        Ok(GradedBasis::new(m, monomials))
    }

    /// Bézout degree `prod_j d_j`.
    pub fn degree(&self) -> u64 {
        self.relation_degrees.iter().map(|&d| d as u64).product()
    }

    /// `sum_j d_j - N`, which also equals `deg(omega_Y)/deg(Y)`.
    pub fn a_invariant(&self) -> i64 {
        self.relation_degrees.iter().map(|&d| d as i64).sum::<i64>() - self.num_vars() as i64
    }

    /// `reg(R) = a + dim R`; only meaningful for Cohen-Macaulay rings.
    pub fn regularity(&self) -> Result<i64, RingError> {
        if !self.has(Assumption::CohenMacaulay) {
            return Err(RingError::MissingAssumption {
                flag: Assumption::CohenMacaulay,
                needed_for: "reg(R) = a + dim R",
            });
        }
        Ok(self.a_invariant() + self.dim() as i64)
    }
}

/// Truncated power series `prod_j (1 - t^{d_j}) / (1 - t)^n`, coefficient of `t^m`.
pub fn hilbert_function(num_vars: usize, degrees: &[u32], m: u32) -> u64 {
    let len = m as usize + 1;
    let mut series = vec![0i128; len];
    series[0] = 1;
    for &d in degrees {
        let d = d as usize;
        for k in (d..len).rev() {
            series[k] -= series[k - d];
        }
    }
    for _ in 0..num_vars {
        for k in 1..len {
            series[k] += series[k - 1];
        }
    }
    let v = series[m as usize];
    assert!(v >= 0, "negative Hilbert function value");
    v as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn ring(p: u64, vars: &[&str], rels: &[&str], flags: &[Assumption]) -> RingPresentation {
        let n = names(vars);
        let field = PrimeField::new(p).unwrap();
        let rels = rels.iter().map(|r| Polynomial::parse(r, &n, p).unwrap()).collect();
        RingPresentation::new(field, n, rels, flags.iter().copied().collect(), MonomialOrder::Grevlex).unwrap()
    }

    fn cubic() -> RingPresentation {
        ring(7, &["x", "y", "z"], &["x^3+y^3+z^3"], &[Assumption::CohenMacaulay])
    }

    fn quartic() -> RingPresentation {
        ring(3, &["x", "y", "z", "w"], &["x^4+y^4+z^4+w^4"], &[Assumption::CohenMacaulay])
    }

    #[test]
    fn hilbert_examples() {
        let r = cubic();
        assert_eq!(r.hilbert_dim(0), 1);
        assert_eq!(r.hilbert_dim(2), 6);
        for m in 1..40 {
            assert_eq!(r.hilbert_dim(m), 3 * m as u64);
        }
        let plane = ring(2, &["x", "y"], &[], &[]);
        assert_eq!(plane.hilbert_dim(5), 6);
        assert_eq!(plane.hilbert_dim(0), 1);
    }

    #[test]
    fn graded_basis_examples() {
        let r = cubic();
        let b1 = r.graded_basis(1).unwrap();
        assert_eq!(b1.len(), 3);
        let b3 = r.graded_basis(3).unwrap();
        assert_eq!(b3.len(), 9);
        assert!(!b3.index.contains_key(&Monomial::from_exponents(&[3, 0, 0])));
        assert_eq!(r.graded_basis(0).unwrap().monomials, vec![Monomial::one(3)]);
    }

    #[test]
    fn numeric_invariants() {
        let r = cubic();
        assert_eq!(r.degree(), 3);
        assert_eq!(r.a_invariant(), 0);
        assert_eq!(r.regularity(), Ok(2));
        let q = quartic();
        assert_eq!(q.degree(), 4);
        assert_eq!(q.a_invariant(), 0);
        assert_eq!(q.regularity(), Ok(3));
        let plane = ring(5, &["x", "y"], &[], &[Assumption::CohenMacaulay]);
        assert_eq!(plane.degree(), 1);
        assert_eq!(plane.a_invariant(), -2);
        assert_eq!(plane.regularity(), Ok(0));
        for r in [cubic(), quartic(), plane] {
            let sum: i64 = r.relation_degrees().iter().map(|&d| d as i64).sum();
            assert_eq!(r.a_invariant() + r.num_vars() as i64, sum);
        }
    }

    #[test]
    fn regularity_needs_cohen_macaulay() {
        let r = ring(7, &["x", "y", "z"], &["x^3+y^3+z^3"], &[]);
        assert!(matches!(r.regularity(), Err(RingError::MissingAssumption { flag: Assumption::CohenMacaulay, .. })));
    }

    #[test]
    fn rejects_bad_relations() {
        let n = names(&["x", "y"]);
        let f = PrimeField::new(5).unwrap();
        let bad = Polynomial::parse("x^2 + y", &n, 5).unwrap();
        assert_eq!(
            RingPresentation::new(f, n.clone(), vec![bad], Default::default(), MonomialOrder::Grevlex),
            Err(RingError::BadRelation { index: 0 })
        );
        let rels = vec![Polynomial::parse("x", &n, 5).unwrap(); 3];
        assert!(matches!(
            RingPresentation::new(f, n, rels, Default::default(), MonomialOrder::Grevlex),
            Err(RingError::TooManyRelations { .. })
        ));
    }

    #[test]
    fn non_complete_intersection_is_caught() {
        // x^2, xy in two variables: a monomial ideal of height 1, not a CI
        let r = ring(5, &["x", "y"], &["x^2", "x*y"], &[]);
        assert!(matches!(r.graded_basis(3), Err(RingError::HilbertMismatch { .. })));
    }

    fn test_rings() -> Vec<RingPresentation> {
        vec![
            cubic(),
            quartic(),
            ring(2, &["x", "y"], &[], &[]),
            ring(5, &["x", "y", "z", "w"], &["x*y - z*w", "x^2 + y^2 + z^2 + w^2"], &[]),
            ring(3, &["x", "y", "z"], &["x^2*y + y^2*z + z^2*x"], &[]),
        ]
    }

    #[test]
    fn hilbert_matches_standard_monomials() {
        for r in test_rings() {
            let gb = r.groebner().unwrap();
            for m in 0..=30 {
                assert_eq!(gb.standard_monomials(m).len() as u64, r.hilbert_dim(m), "m = {m}");
            }
        }
    }

    #[test]
    fn hilbert_eventually_polynomial() {
        // (N - r)-th finite difference vanishes for large m
        for r in test_rings() {
            let k = r.dim();
            let vals: Vec<i128> = (20..=30).map(|m| r.hilbert_dim(m) as i128).collect();
            let mut diff = vals;
            for _ in 0..k {
                diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
            }
            assert!(diff.iter().all(|&d| d == 0), "{diff:?}");
            // and the (k-1)-th difference is a nonzero constant: degree exactly k - 1
            let mut lower: Vec<i128> = (20..=30).map(|m| r.hilbert_dim(m) as i128).collect();
            for _ in 0..k - 1 {
                lower = lower.windows(2).map(|w| w[1] - w[0]).collect();
            }
            assert!(lower.iter().all(|&d| d == lower[0] && d > 0));
        }
    }
}
