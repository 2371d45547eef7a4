//! Sparse multivariate polynomials over a prime field.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so iteration order is
//! canonical and equality is structural. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::field::{FieldElement, FieldError, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("variable count mismatch: {0} vs {1}")]
    VarCountMismatch(usize, usize),
}

/// Exponent vector of a monomial `x_1^{e_1} ... x_N^{e_N}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars].into_boxed_slice())
    }

    pub fn var(index: usize, num_vars: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[index] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(exps.into())
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self | other`
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// All monomials of total degree `degree` in `num_vars` variables,
    /// in descending lexicographic order of exponent vectors.
    pub fn all_of_degree(num_vars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Monomial>) {
            if slots == 1 {
                prefix.push(left);
                out.push(Monomial::from_exponents(prefix));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(prefix, left - e, slots - 1, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if num_vars == 0 {
            if degree == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(&mut Vec::with_capacity(num_vars), degree, num_vars, &mut out);
        out
    }

    pub fn format_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Default variable names `x1..xN`.
pub fn default_var_names(num_vars: usize) -> Vec<String> {
    (1..=num_vars).map(|i| format!("x{i}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: PrimeField,
    num_vars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl Polynomial {
    pub fn zero(field: PrimeField, num_vars: usize) -> Self {
        Self { field, num_vars, terms: BTreeMap::new() }
    }

    pub fn one(field: PrimeField, num_vars: usize) -> Self {
        Self::term(field, field.one().value(), Monomial::one(num_vars))
    }

    pub fn term(field: PrimeField, coeff: u64, monomial: Monomial) -> Self {
        let num_vars = monomial.num_vars();
        let mut terms = BTreeMap::new();
        let c = coeff % field.characteristic();
        if c != 0 {
            terms.insert(monomial, c);
        }
        Self { field, num_vars, terms }
    }

    pub fn monomial(field: PrimeField, monomial: Monomial) -> Self {
        Self::term(field, 1, monomial)
    }

    /// Collects terms, summing duplicates and dropping zeros.
    pub fn from_terms<I>(field: PrimeField, num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u64)>,
    {
        let mut out = Self::zero(field, num_vars);
        for (m, c) in terms {
            debug_assert_eq!(m.num_vars(), num_vars);
            out.add_term(m, c % field.characteristic());
        }
        out
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FieldElement)> + '_ {
        self.terms.iter().map(move |(m, &c)| (m, self.field.element(c)))
    }

    /// Raw `(monomial, residue)` pairs.
    pub fn raw_terms(&self) -> &BTreeMap<Monomial, u64> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.field.element(self.terms.get(m).copied().unwrap_or(0))
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.field.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Highest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some() || self.is_zero()
    }

    /// Common degree of all terms, if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::ModulusMismatch(self.field.characteristic(), other.field.characteristic()));
        }
        if self.num_vars != other.num_vars {
            return Err(PolyError::VarCountMismatch(self.num_vars, other.num_vars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.field, self.num_vars);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.field.neg(1 % self.field.characteristic()))
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let c = c % self.field.characteristic();
        if c == 0 {
            return Self::zero(self.field, self.num_vars);
        }
        Self {
            field: self.field,
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, &a)| (m.clone(), self.field.mul(a, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Self {
            field: self.field,
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(t, &c)| (t.mul(m), c)).collect(),
        }
    }

    /// `self^k` by binary exponentiation through [`Polynomial::checked_mul`].
    pub fn pow(&self, mut k: u64) -> Polynomial {
        let mut acc = Self::one(self.field, self.num_vars);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base).expect("same ring");
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// `f^q` for `q = p^e`, computed termwise: `c*m -> c*m^q`.
    pub fn frobenius_power(&self, q: u64) -> Result<Polynomial, PolyError> {
        self.field.frobenius_exponent(q)?;
        let k =
            u32::try_from(q).map_err(|_| FieldError::NotPowerOfCharacteristic { q, p: self.field.characteristic() })?;
        Ok(Self {
            field: self.field,
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, &c)| (m.pow(k), c)).collect(),
        })
    }

    /// Renders with the given variable names; terms by descending degree,
    /// then descending exponent vector.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Monomial, u64)> = self.terms.iter().map(|(m, &c)| (m, c)).collect();
        terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let signed = self.field.element(c).centered();
            let (neg, abs) = (signed < 0, signed.unsigned_abs());
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.format_with(names);
            match (abs, m.is_one()) {
                (1, true) => out.push('1'),
                (1, false) => out.push_str(&mono),
                (_, true) => out.push_str(&abs.to_string()),
                (_, false) => out.push_str(&format!("{abs}*{mono}")),
            }
        }
        out
    }

    /// Parses `text` in the variables `names` over `F_p`.
    pub fn parse(text: &str, names: &[String], p: u64) -> Result<Polynomial, PolyError> {
        let field = PrimeField::new(p)?;
        Parser { src: text.as_bytes(), pos: 0, names, field }.polynomial()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_var_names(self.num_vars)))
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("incompatible polynomials")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("incompatible polynomials")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("incompatible polynomials")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
    field: PrimeField,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax { offset: self.pos, message: message.into() })
    }

    fn polynomial(&mut self) -> Result<Polynomial, PolyError> {
        let mut out = Polynomial::zero(self.field, self.names.len());
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            None => return self.err("empty polynomial"),
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, if negate { self.field.neg(c) } else { c });
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(other) => return self.err(format!("unexpected `{}`", other as char)),
            }
            self.pos += 1;
        }
    }

    /// Integer coefficient reduced mod p digit by digit.
    fn integer(&mut self) -> Option<u64> {
        self.skip_ws();
        let start = self.pos;
        let mut acc = 0u64;
        while let Some(&b) = self.src.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            acc = self.field.add(self.field.mul(acc, 10), (b - b'0') as u64 % self.field.characteristic());
            self.pos += 1;
        }
        (self.pos > start).then_some(acc)
    }

    fn exponent(&mut self) -> Result<u32, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected exponent");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match digits.parse::<u32>() {
            Ok(0) => Err(PolyError::Syntax { offset: start, message: "exponent must be positive".into() }),
            Ok(e) => Ok(e),
            Err(_) => Err(PolyError::Syntax { offset: start, message: "exponent too large".into() }),
        }
    }

    fn identifier(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(b) if b.is_ascii_alphabetic() || *b == b'_' => {}
            _ => return None,
        }
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') {
            self.pos += 1;
        }
        let src: &'a [u8] = self.src;
        Some((start, std::str::from_utf8(&src[start..self.pos]).expect("ascii")))
    }

    fn term(&mut self) -> Result<(Monomial, u64), PolyError> {
        let n = self.names.len();
        let mut exps = vec![0u32; n];
        let coeff = self.integer();
        let mut saw_star = false;
        if coeff.is_some() && self.peek() == Some(b'*') {
            self.pos += 1;
            saw_star = true;
        }
        let mut factors = 0;
        while let Some((start, name)) = self.identifier() {
            let Some(idx) = self.names.iter().position(|v| v == name) else {
                return Err(PolyError::UnknownVariable { name: name.to_string(), offset: start });
            };
            let mut e = 1;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                e = self.exponent()?;
            }
            exps[idx] = exps[idx]
                .checked_add(e)
                .ok_or(PolyError::Syntax { offset: start, message: "exponent too large".into() })?;
            factors += 1;
            saw_star = false;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                saw_star = true;
            }
        }
        if saw_star {
            return self.err("expected a variable after `*`");
        }
        if coeff.is_none() && factors == 0 {
            return self.err("expected a term");
        }
        Ok((Monomial::from_exponents(&exps), coeff.unwrap_or(1)))
    }
}
