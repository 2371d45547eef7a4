//! Frobenius powers of ideals and exact degree-wise membership tests.
//!
//! Membership of a homogeneous `h` of degree `m` in `I^[q]` is the question
//! whether `h` lies in the image of
//! `R_{m-q d_1} + ... + R_{m-q d_n} -> R_m, (v_i) -> sum v_i f_i^q`.
//! Rows of the matrix are standard monomials of `R_m`, columns are pairs
//! (generator, standard monomial of the source piece), entries come from
//! normal forms of `s * f_i^q`. The matrix splits into blocks by the fine
//! grading of [`crate::grading`]; with the fine grading switched off there is
//! one block per degree.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::assumptions::caveats;
use crate::bounds::{frobenius_closure_exponent, inclusion_threshold};
use crate::field::FieldError;
use crate::graded_ring::{RingError, RingPresentation};
use crate::grading::{FineGrading, GradeClass};
use crate::linalg::DenseMatrix;
use crate::poly::{Monomial, PolyError, Polynomial};

/// Largest matrix (rows times columns) run without an explicit opt-in.
pub const DEFAULT_MAX_MATRIX_ENTRIES: u128 = 4_000_000;

/// Extra degrees searched past the predicted threshold.
pub const CAP_SLACK: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("the ideal needs at least one generator")]
    NoGenerators,
    #[error("generator {index} not homogeneous of positive degree")]
    GeneratorNotHomogeneous { index: usize },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("the multiplier c must be nonzero")]
    ZeroMultiplier,
    #[error("{p}^{e} does not fit in 64 bits")]
    ExponentOverflow { p: u64, e: u32 },
    #[error(
        "no containment degree up to the cap {cap} for q = {q} \
         (the ideal may not be R_+-primary, or the cap is too small)"
    )]
    NotFoundWithinCap { q: u64, cap: u32 },
    #[error(
        "degree {degree} at q = {q} needs a {entries}-entry matrix block, above the limit {limit}; \
         pass --allow-large to run it"
    )]
    MatrixTooLarge { q: u64, degree: u32, entries: u128, limit: u128 },
    #[error("membership certificate failed re-verification")]
    CertificateInvalid,
}

/// Homogeneous generators `f_1..f_n` of an ideal of `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSpec {
    generators: Vec<Polynomial>,
    degrees: Vec<u32>,
    sorted_degrees: Vec<u32>,
    primary: bool,
}

impl IdealSpec {
    pub fn new(ring: &RingPresentation, generators: Vec<Polynomial>, primary: bool) -> Result<Self, EngineError> {
        if generators.is_empty() {
            return Err(EngineError::NoGenerators);
        }
        let mut degrees = Vec::with_capacity(generators.len());
        for (index, g) in generators.iter().enumerate() {
            check_compatible(ring, g)?;
            match g.homogeneous_degree() {
                Some(d) if d > 0 => {
                    degrees.push(u32::try_from(d).map_err(|_| EngineError::GeneratorNotHomogeneous { index })?)
                }
                _ => return Err(EngineError::GeneratorNotHomogeneous { index }),
            }
        }
        let mut sorted_degrees = degrees.clone();
        sorted_degrees.sort_unstable();
        Ok(Self { generators, degrees, sorted_degrees, primary })
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn sorted_degrees(&self) -> &[u32] {
        &self.sorted_degrees
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Whether the user asserted that the ideal is `R_+`-primary.
    pub fn primary_asserted(&self) -> bool {
        self.primary
    }
}

fn check_compatible(ring: &RingPresentation, f: &Polynomial) -> Result<(), EngineError> {
    if f.field() != ring.field() {
        return Err(PolyError::ModulusMismatch(f.field().characteristic(), ring.characteristic()).into());
    }
    if f.num_vars() != ring.num_vars() {
        return Err(PolyError::VarCountMismatch(f.num_vars(), ring.num_vars()).into());
    }
    Ok(())
}

/// Outcome of one membership test. `coefficients` is present iff `member`,
/// and then `element = sum h_i f_i^q` holds in `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub member: bool,
    pub element: Polynomial,
    pub q: u64,
    pub coefficients: Option<Vec<Polynomial>>,
}

impl MembershipCertificate {
    /// Checks `NF(sum h_i f_i^q - element) = 0` and the degrees of the `h_i`.
    pub fn verify(&self, engine: &FrobeniusEngine) -> Result<bool, EngineError> {
        let Some(coeffs) = &self.coefficients else {
            return Ok(!self.member);
        };
        if !self.member || coeffs.len() != engine.ideal.len() {
            return Ok(false);
        }
        let deg = self.element.homogeneous_degree();
        let mut total = self.element.neg();
        for ((h, f), &d) in coeffs.iter().zip(engine.ideal.generators()).zip(engine.ideal.degrees()) {
            if h.is_zero() {
                continue;
            }
            if deg.is_none() || h.homogeneous_degree().map(|e| e + self.q * d as u64) != deg {
                return Ok(false);
            }
            total = total.checked_add(&h.checked_mul(&f.frobenius_power(self.q)?)?)?;
        }
        Ok(engine.ring.reduce(&total)?.is_zero())
    }
}

/// Engine configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    /// Split matrices by the fine grading.
    pub fine_grading: bool,
    /// Refuse matrices with more entries than this.
    pub max_matrix_entries: Option<u128>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self { fine_grading: true, max_matrix_entries: None }
    }
}

/// One diagonal block of the membership matrix in a fixed degree.
#[derive(Debug, Clone)]
pub struct Block {
    pub class: GradeClass,
    pub rows: Vec<Monomial>,
    pub columns: Vec<(usize, Monomial)>,
    pub matrix: DenseMatrix,
}

struct Layout {
    rows: BTreeMap<GradeClass, Vec<Monomial>>,
    columns: BTreeMap<GradeClass, Vec<(usize, Monomial)>>,
}

/// Frobenius powers, membership and containment degrees for one ring and
/// ideal. Normal forms of `f_i^q` are memoized per `q`.
#[derive(Debug)]
pub struct FrobeniusEngine {
    ring: RingPresentation,
    ideal: IdealSpec,
    options: EngineOptions,
    grading: FineGrading,
    powers: RwLock<HashMap<u64, Arc<Vec<Polynomial>>>>,
}

impl FrobeniusEngine {
    pub fn new(ring: RingPresentation, ideal: IdealSpec) -> Self {
        Self::with_options(ring, ideal, EngineOptions::default())
    }

    pub fn with_options(ring: RingPresentation, ideal: IdealSpec, options: EngineOptions) -> Self {
        let n = ring.num_vars();
        let grading = if options.fine_grading {
            FineGrading::from_polynomials(n, ring.relations().iter().chain(ideal.generators()))
        } else {
            FineGrading::coarse(n)
        };
        Self { ring, ideal, options, grading, powers: RwLock::new(HashMap::new()) }
    }

    pub fn ring(&self) -> &RingPresentation {
        &self.ring
    }

    pub fn ideal(&self) -> &IdealSpec {
        &self.ideal
    }

    pub fn options(&self) -> EngineOptions {
        self.options
    }

    /// `p^e`, checked.
    pub fn q_for(&self, e: u32) -> Result<u64, EngineError> {
        let p = self.ring.characteristic();
        p.checked_pow(e).ok_or(EngineError::ExponentOverflow { p, e })
    }

    /// Normal forms of `f_1^q, ..., f_n^q`.
    pub fn frobenius_generators(&self, q: u64) -> Result<Arc<Vec<Polynomial>>, EngineError> {
        if let Some(hit) = self.powers.read().expect("memo lock").get(&q) {
            return Ok(hit.clone());
        }
        let computed = self
            .ideal
            .generators()
            .iter()
            .map(|f| Ok(self.ring.reduce(&f.frobenius_power(q)?)?))
            .collect::<Result<Vec<_>, EngineError>>()?;
        let mut memo = self.powers.write().expect("memo lock");
        Ok(memo.entry(q).or_insert_with(|| Arc::new(computed)).clone())
    }

    /// Rows times columns of the unsplit matrix in degree `m`.
    pub fn matrix_entries(&self, q: u64, m: u32) -> u128 {
        let cols: u128 = self
            .ideal
            .degrees()
            .iter()
            .filter_map(|&d| (m as u64).checked_sub(q * d as u64))
            .map(|s| self.ring.hilbert_dim(s as u32) as u128)
            .sum();
        self.ring.hilbert_dim(m) as u128 * cols
    }

    /// Refuses a block whose dense matrix would exceed the entry limit.
    fn check_block(&self, q: u64, m: u32, rows: usize, cols: usize) -> Result<(), EngineError> {
        if let Some(limit) = self.options.max_matrix_entries {
            let entries = rows as u128 * cols as u128;
            if entries > limit {
                return Err(EngineError::MatrixTooLarge { q, degree: m, entries, limit });
            }
        }
        Ok(())
    }

    fn layout(&self, q: u64, m: u32) -> Result<Layout, EngineError> {
        let mut rows: BTreeMap<GradeClass, Vec<Monomial>> = BTreeMap::new();
        for mono in self.ring.graded_basis(m)?.monomials {
            rows.entry(self.grading.class_of(&mono)).or_default().push(mono);
        }
        let mut columns: BTreeMap<GradeClass, Vec<(usize, Monomial)>> = BTreeMap::new();
        let mut sources = HashMap::new();
        for (i, (f, &d)) in self.ideal.generators().iter().zip(self.ideal.degrees()).enumerate() {
            let Some(src_deg) = (m as u64).checked_sub(q * d as u64) else { continue };
            let src_deg = src_deg as u32;
            if let Entry::Vacant(slot) = sources.entry(src_deg) {
                slot.insert(self.ring.graded_basis(src_deg)?.monomials);
            }
            let anchor = f.monomials().next().expect("generators are nonzero");
            for s in &sources[&src_deg] {
                columns.entry(self.grading.class_of_product(s, anchor, q)).or_default().push((i, s.clone()));
            }
        }
        Ok(Layout { rows, columns })
    }

    fn build_block(
        &self,
        class: GradeClass,
        rows: Vec<Monomial>,
        columns: Vec<(usize, Monomial)>,
        powers: &[Polynomial],
    ) -> Result<Block, EngineError> {
        let index: HashMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut matrix = DenseMatrix::zeros(self.ring.field(), rows.len(), columns.len());
        for (j, (i, s)) in columns.iter().enumerate() {
            let image = self.ring.reduce(&powers[*i].mul_monomial(s))?;
            for (mono, &c) in image.raw_terms() {
                let r = *index.get(mono).expect("image of a column left its grading class");
                matrix.set(r, j, c);
            }
        }
        Ok(Block { class, rows, columns, matrix })
    }

    /// All blocks of the membership matrix in degree `m`.
    pub fn blocks(&self, q: u64, m: u32) -> Result<Vec<Block>, EngineError> {
        self.ring.field().frobenius_exponent(q)?;
        let powers = self.frobenius_generators(q)?;
        let Layout { rows, mut columns } = self.layout(q, m)?;
        rows.into_iter()
            .map(|(class, r)| {
                let cols = columns.remove(&class).unwrap_or_default();
                self.check_block(q, m, r.len(), cols.len())?;
                self.build_block(class, r, cols, &powers)
            })
            .collect()
    }

    /// Whether `R_k` lies in `I^[q]`: every block has full row rank.
    pub fn degree_containment(&self, q: u64, k: u32) -> Result<bool, EngineError> {
        self.ring.field().frobenius_exponent(q)?;
        if self.ring.hilbert_dim(k) == 0 {
            return Ok(true);
        }
        let powers = self.frobenius_generators(q)?;
        let Layout { rows, mut columns } = self.layout(q, k)?;
        let jobs: Vec<_> = rows
            .into_iter()
            .map(|(class, r)| {
                let cols = columns.remove(&class).unwrap_or_default();
                (class, r, cols)
            })
            .collect();
        // a block with fewer columns than rows cannot be onto
        if jobs.iter().any(|(_, r, c)| c.len() < r.len()) {
            return Ok(false);
        }
        for (_, r, c) in &jobs {
            self.check_block(q, k, r.len(), c.len())?;
        }
        let results: Vec<Result<bool, EngineError>> = jobs
            .into_par_iter()
            .map(|(class, r, c)| {
                let block = self.build_block(class, r, c, &powers)?;
                Ok(block.matrix.rank() == block.rows.len())
            })
            .collect();
        for r in results {
            if !r? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Decides `h in I^[q]` and returns a verified certificate.
    pub fn membership(&self, q: u64, h: &Polynomial) -> Result<MembershipCertificate, EngineError> {
        self.ring.field().frobenius_exponent(q)?;
        check_compatible(&self.ring, h)?;
        let zero_certificate = || MembershipCertificate {
            member: true,
            element: h.clone(),
            q,
            coefficients: Some(vec![Polynomial::zero(self.ring.field(), self.ring.num_vars()); self.ideal.len()]),
        };
        if h.is_zero() {
            return Ok(zero_certificate());
        }
        let m = h.homogeneous_degree().ok_or(EngineError::NotHomogeneous)?;
        let m = u32::try_from(m).map_err(|_| EngineError::NotHomogeneous)?;
        let reduced = self.ring.reduce(h)?;
        if reduced.is_zero() {
            return Ok(zero_certificate());
        }
        let powers = self.frobenius_generators(q)?;
        let Layout { mut rows, mut columns } = self.layout(q, m)?;
        let mut by_class: BTreeMap<GradeClass, Vec<(&Monomial, u64)>> = BTreeMap::new();
        for (mono, &c) in reduced.raw_terms() {
            by_class.entry(self.grading.class_of(mono)).or_default().push((mono, c));
        }
        let mut coefficients = vec![Polynomial::zero(self.ring.field(), self.ring.num_vars()); self.ideal.len()];
        for (class, terms) in by_class {
            let r = rows.remove(&class).unwrap_or_default();
            let c = columns.remove(&class).unwrap_or_default();
            self.check_block(q, m, r.len(), c.len())?;
            let block = self.build_block(class, r, c, &powers)?;
            let index: HashMap<&Monomial, usize> = block.rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut rhs = vec![0; block.rows.len()];
            for (mono, c) in terms {
                rhs[*index.get(mono).expect("normal form is standard")] = c;
            }
            let Some(x) = block.matrix.solve(&rhs) else {
                return Ok(MembershipCertificate { member: false, element: h.clone(), q, coefficients: None });
            };
            for ((i, s), v) in block.columns.into_iter().zip(x) {
                if v != 0 {
                    coefficients[i].add_term(s, v);
                }
            }
        }
        let cert = MembershipCertificate { member: true, element: h.clone(), q, coefficients: Some(coefficients) };
        if !cert.verify(self)? {
            return Err(EngineError::CertificateInvalid);
        }
        Ok(cert)
    }

    /// Default search cap: `floor(q nu + a) + 1 + 8` with a `nu` hint, else
    /// `q * sum d_i + N`.
    pub fn default_cap(&self, q: u64, nu: Option<&BigRational>) -> u32 {
        let cap = match nu {
            Some(nu) => inclusion_threshold(nu, self.ring.a_invariant(), q) + BigInt::from(CAP_SLACK),
            None => {
                let sum: u64 = self.ideal.degrees().iter().map(|&d| d as u64).sum();
                BigInt::from(q) * BigInt::from(sum) + BigInt::from(self.ring.num_vars())
            }
        };
        cap.to_i64().map_or(u32::MAX, |c| c.clamp(0, u32::MAX as i64) as u32)
    }

    /// `k(q)`: smallest `k <= cap` with `R_k` inside `I^[q]`. Scans upward from
    /// `start` with doubling steps, then bisects back to the first success.
    pub fn min_containment_degree(&self, q: u64, cap: u32, start: Option<u32>) -> Result<u32, EngineError> {
        let min_d = *self.ideal.sorted_degrees().first().expect("nonempty ideal") as u64;
        let floor = (q.saturating_mul(min_d)).min(cap as u64) as u32;
        let mut k = start.unwrap_or(floor).min(cap);
        let mut known_false: Option<u32> = None;
        let mut step = 1u32;
        loop {
            if self.degree_containment(q, k)? {
                break;
            }
            known_false = Some(k);
            if k == cap {
                return Err(EngineError::NotFoundWithinCap { q, cap });
            }
            k = k.saturating_add(step).min(cap);
            step = step.saturating_mul(2);
        }
        let mut lo = known_false.map_or(-1, i64::from);
        let mut hi = k;
        while hi as i64 - lo > 1 {
            let mid = ((lo + hi as i64) / 2) as u32;
            if self.degree_containment(q, mid)? {
                hi = mid;
            } else {
                lo = mid as i64;
            }
        }
        Ok(hi)
    }

    /// Empirical `k(q)` against `floor(q nu + a) + 1` for `q = p^e`,
    /// `e` in `e_min..=e_max`.
    pub fn containment_table(
        &self,
        e_min: u32,
        e_max: u32,
        nu: Option<&BigRational>,
        cap: Option<u32>,
    ) -> Result<ContainmentTable, EngineError> {
        let a = self.ring.a_invariant();
        let mut rows = Vec::new();
        for e in e_min..=e_max {
            let q = self.q_for(e)?;
            let threshold = nu.map(|nu| inclusion_threshold(nu, a, q).to_i64().expect("threshold fits in i64"));
            let cap = cap.unwrap_or_else(|| self.default_cap(q, nu));
            let start = threshold.map(|t| t.clamp(0, cap as i64) as u32);
            let k_empirical = match self.min_containment_degree(q, cap, start) {
                Ok(k) => Some(k),
                Err(EngineError::NotFoundWithinCap { .. }) => None,
                Err(err) => return Err(err),
            };
            let exceeds_threshold = match (k_empirical, threshold) {
                (Some(k), Some(t)) => i64::from(k) > t,
                (None, Some(t)) => i64::from(cap) >= t,
                _ => false,
            };
            let tight = matches!((k_empirical, threshold), (Some(k), Some(t)) if i64::from(k) == t);
            rows.push(ContainmentRow { e, q, k_empirical, cap, k_theoretical: threshold, tight, exceeds_threshold });
        }
        Ok(ContainmentTable { rows, nu: nu.cloned(), a_invariant: a })
    }

    /// Tests `c f^q in I^[q]` for each `e`; finite evidence for `f in I*`.
    pub fn tight_closure_witness_test(
        &self,
        f: &Polynomial,
        c: &Polynomial,
        exponents: &[u32],
        nu: Option<&BigRational>,
    ) -> Result<TightClosureReport, EngineError> {
        check_compatible(&self.ring, f)?;
        check_compatible(&self.ring, c)?;
        if c.is_zero() {
            return Err(EngineError::ZeroMultiplier);
        }
        let deg_c = c.homogeneous_degree().ok_or(EngineError::NotHomogeneous)?;
        let deg_f = if f.is_zero() { None } else { Some(f.homogeneous_degree().ok_or(EngineError::NotHomogeneous)?) };
        let mut rows = Vec::new();
        for &e in exponents {
            let q = self.q_for(e)?;
            let element = c.checked_mul(&f.frobenius_power(q)?)?;
            let cert = self.membership(q, &element)?;
            rows.push(WitnessRow { e, q, degree: element.homogeneous_degree(), certificate: cert });
        }
        let a = self.ring.a_invariant();
        let guaranteed = match (nu, deg_f) {
            (Some(nu), Some(d)) => Some(BigRational::from_integer(BigInt::from(d)) >= *nu && deg_c as i64 > a),
            _ => None,
        };
        let all_passed = rows.iter().all(|r| r.certificate.member);
        let mut caveats = vec![caveats::FINITE_EVIDENCE];
        if !all_passed {
            caveats.push(caveats::LARGE_CHARACTERISTIC);
        }
        Ok(TightClosureReport { rows, all_passed, guaranteed, caveats })
    }

    /// Scans `e = 0..=e_max` for the first `f^q in I^[q]`.
    pub fn frobenius_closure_test(
        &self,
        f: &Polynomial,
        e_max: u32,
        nu: Option<&BigRational>,
    ) -> Result<FrobeniusClosureReport, EngineError> {
        check_compatible(&self.ring, f)?;
        if !f.is_homogeneous() {
            return Err(EngineError::NotHomogeneous);
        }
        let predicted_e = match (nu, f.homogeneous_degree()) {
            (Some(nu), Some(d)) => {
                frobenius_closure_exponent(nu, self.ring.a_invariant(), self.ring.characteristic(), d)
            }
            _ => None,
        };
        let mut rows = Vec::new();
        let mut found_e = None;
        for e in 0..=e_max {
            let q = self.q_for(e)?;
            let cert = self.membership(q, &f.frobenius_power(q)?)?;
            let member = cert.member;
            rows.push(WitnessRow { e, q, degree: cert.element.homogeneous_degree(), certificate: cert });
            if member {
                found_e = Some(e);
                break;
            }
        }
        Ok(FrobeniusClosureReport { rows, found_e, predicted_e, e_max })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentRow {
    pub e: u32,
    pub q: u64,
    /// `None` when no degree up to `cap` works.
    pub k_empirical: Option<u32>,
    pub cap: u32,
    pub k_theoretical: Option<i64>,
    pub tight: bool,
    /// Empirical `k(q)` above the threshold: a counterexample to the bound
    /// under the asserted hypotheses.
    pub exceeds_threshold: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentTable {
    pub rows: Vec<ContainmentRow>,
    pub nu: Option<BigRational>,
    pub a_invariant: i64,
}

impl ContainmentTable {
    /// `k(q') >= k(q)` whenever `q | q'` and both values are known.
    pub fn is_monotone(&self) -> bool {
        let known: Vec<(u64, u32)> = self.rows.iter().filter_map(|r| r.k_empirical.map(|k| (r.q, k))).collect();
        known.iter().all(|&(q, k)| known.iter().all(|&(q2, k2)| q2 % q != 0 || k2 >= k))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRow {
    pub e: u32,
    pub q: u64,
    pub degree: Option<u64>,
    pub certificate: MembershipCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightClosureReport {
    pub rows: Vec<WitnessRow>,
    pub all_passed: bool,
    /// `deg f >= nu` and `deg c > a`, when `nu` is known.
    pub guaranteed: Option<bool>,
    pub caveats: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusClosureReport {
    pub rows: Vec<WitnessRow>,
    pub found_e: Option<u32>,
    /// Smallest `e` with `p^e (deg f - nu) > a`, when `deg f > nu`.
    pub predicted_e: Option<u32>,
    pub e_max: u32,
}
