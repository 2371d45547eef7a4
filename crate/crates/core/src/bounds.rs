//! Closed-form degree bounds derived from Koszul syzygy slopes.
//!
//! All slopes are normalized by `deg(Y)`, so they are plain rationals in the
//! generator degrees. Rationals are exact (`BigRational`); thresholds depend
//! on strict inequalities at rational boundaries.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::assumptions::{caveats, first_missing, Assumption, AssumptionSet, INCLUSION_HYPOTHESES};
use crate::graded_ring::{RingError, RingPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("syzygy index {j} out of range 1..={max}")]
    IndexOutOfRange { j: usize, max: usize },
    #[error("{n} generators cannot generate an R_+-primary ideal in a ring of dimension {dim}")]
    TooFewGenerators { n: usize, dim: usize },
    #[error("ring dimension {0} is below 2")]
    DimensionTooSmall(usize),
    #[error("{needed_for} needs the `{flag}` assumption flag, which is not set")]
    MissingAssumption { flag: Assumption, needed_for: &'static str },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Rank, degree and slope of `Syz_j`, the `j`-th kernel in the Koszul complex
/// on `O_Y`, with degrees divided by `deg(Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulInvariants {
    pub j: usize,
    /// Twists `alpha_{k,j+1}`: sums of `j+1` distinct generator degrees.
    pub shift_degrees: Vec<u64>,
    pub rank: BigInt,
    pub degree_coeff: BigInt,
    pub slope_over_deg_y: BigRational,
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn subset_sums(degrees: &[u32], size: usize) -> Vec<u64> {
    fn rec(d: &[u32], start: usize, left: usize, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..=d.len() - left {
            rec(d, i + 1, left - 1, acc + d[i] as u64, out);
        }
    }
    let mut out = Vec::new();
    if size <= degrees.len() {
        rec(degrees, 0, size, 0, &mut out);
    }
    out
}

/// Alternating sums of rank and degree over the Koszul terms
/// `G_i = sum_{|S|=i} O(-sum_{s in S} d_s)`, `i > j`, which resolve `Syz_j`.
///
/// Accepts `j = 0`, where `Syz_0` is the ideal sheaf itself (rank 1, degree 0).
pub fn koszul_alternating_sums(degrees: &[u32], j: usize) -> (BigInt, BigInt) {
    let n = degrees.len();
    let mut rank = BigInt::zero();
    let mut degree = BigInt::zero();
    for i in (j + 1)..=n {
        let sums = subset_sums(degrees, i);
        let term_rank = BigInt::from(sums.len());
        let term_degree = -sums.iter().map(|&s| BigInt::from(s)).sum::<BigInt>();
        if (i - j - 1).is_multiple_of(2) {
            rank += term_rank;
            degree += term_degree;
        } else {
            rank -= term_rank;
            degree -= term_degree;
        }
    }
    (rank, degree)
}

pub fn koszul_invariants(degrees: &[u32], j: usize) -> Result<KoszulInvariants, BoundsError> {
    let n = degrees.len();
    if j == 0 || j + 1 > n {
        return Err(BoundsError::IndexOutOfRange { j, max: n.saturating_sub(1) });
    }
    let (rank, degree_coeff) = koszul_alternating_sums(degrees, j);
    let slope_over_deg_y = BigRational::new(degree_coeff.clone(), rank.clone());
    Ok(KoszulInvariants { j, shift_degrees: subset_sums(degrees, j + 1), rank, degree_coeff, slope_over_deg_y })
}

fn check_shape(n: usize, dim_r: usize) -> Result<(), BoundsError> {
    if dim_r < 2 {
        return Err(BoundsError::DimensionTooSmall(dim_r));
    }
    if n < dim_r {
        return Err(BoundsError::TooFewGenerators { n, dim: dim_r });
    }
    Ok(())
}

/// `nu = t * (sum d_i) / (n - 1)` with `t = dim R - 1`, valid when the top
/// Koszul syzygy bundle is strongly semistable.
pub fn nu_strongly_semistable(degrees: &[u32], dim_r: usize) -> Result<BigRational, BoundsError> {
    let n = degrees.len();
    check_shape(n, dim_r)?;
    let t = dim_r - 1;
    let sum: u64 = degrees.iter().map(|&d| d as u64).sum();
    let nu = BigRational::new(BigInt::from(t as u64 * sum), BigInt::from(n as u64 - 1));
    let top = koszul_invariants(degrees, t)?;
    assert_eq!(-top.slope_over_deg_y, nu, "closed form disagrees with the Koszul alternating sums");
    Ok(nu)
}

pub fn parameter_bound(degrees: &[u32]) -> u64 {
    degrees.iter().map(|&d| d as u64).sum()
}

/// Largest sum of `dim R` generator degrees.
pub fn smith_bound(degrees: &[u32], dim_r: usize) -> Result<u64, BoundsError> {
    check_shape(degrees.len(), dim_r)?;
    Ok(largest_sum(degrees, dim_r))
}

fn largest_sum(degrees: &[u32], k: usize) -> u64 {
    let mut sorted: Vec<u64> = degrees.iter().map(|&d| d as u64).collect();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted.iter().take(k).sum()
}

/// Smallest integer `m` with `m > q * nu + a`.
pub fn inclusion_threshold(nu: &BigRational, a: i64, q: u64) -> BigInt {
    let bound = nu * BigRational::from_integer(BigInt::from(q)) + BigRational::from_integer(BigInt::from(a));
    bound.floor().to_integer() + BigInt::one()
}

/// Smallest `e` with `p^e * (deg f - nu) > a`, the exponent after which
/// `f^q` lies in `I^[q]` for degree reasons. `None` unless `deg f > nu`.
pub fn frobenius_closure_exponent(nu: &BigRational, a: i64, p: u64, deg_f: u64) -> Option<u32> {
    let eps = BigRational::from_integer(BigInt::from(deg_f)) - nu;
    if !eps.is_positive() {
        return None;
    }
    let a = BigRational::from_integer(BigInt::from(a));
    let mut q = BigInt::one();
    for e in 0..64 {
        if BigRational::from_integer(q.clone()) * &eps > a {
            return Some(e);
        }
        q *= p;
    }
    None
}

/// Chardin's coefficient: the largest twist in the Koszul complex up to
/// homological degree `dim R`, i.e. the sum of the `dim R` largest degrees.
pub fn chardin_constant(degrees: &[u32], dim_r: usize) -> u64 {
    largest_sum(degrees, dim_r.min(degrees.len()))
}

/// `(C1, C0)` for `reg(I^[q]) <= C1 q + C0`.
///
/// The slope of `Syz_j` is taken as `mu(Syz_j)`, which equals the minimal
/// Frobenius-stable slope only under strong semistability, or when `Syz_j` is
/// a line bundle.
pub fn regularity_bound_constants(
    degrees: &[u32],
    ring: &RingPresentation,
    assumptions: &AssumptionSet,
) -> Result<(BigRational, i64), BoundsError> {
    let dim_r = ring.dim();
    check_shape(degrees.len(), dim_r)?;
    let t = dim_r - 1;
    let mut c1 = BigRational::from_integer(BigInt::from(degrees.iter().copied().max().unwrap_or(0)));
    for j in 1..=t {
        let inv = koszul_invariants(degrees, j)?;
        if !inv.rank.is_one() && !assumptions.contains(&Assumption::StronglySemistable) {
            return Err(BoundsError::MissingAssumption {
                flag: Assumption::StronglySemistable,
                needed_for: "the slope term of the regularity constant C1",
            });
        }
        let candidate = -inv.slope_over_deg_y;
        if candidate > c1 {
            c1 = candidate;
        }
    }
    if !assumptions.contains(&Assumption::CohenMacaulay) {
        return Err(BoundsError::MissingAssumption {
            flag: Assumption::CohenMacaulay,
            needed_for: "reg(R) = a + dim R",
        });
    }
    let a = ring.a_invariant();
    Ok((c1, (a + dim_r as i64).max(a)))
}

/// One value of a report, with the formula that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cited<T> {
    pub value: T,
    pub citation: &'static str,
}

impl<T> Cited<T> {
    fn new(value: T, citation: &'static str) -> Self {
        Self { value, citation }
    }
}

pub mod citations {
    pub const NU_SEMISTABLE: &str =
        "nu = -mu(Syz_t)/deg(Y) = t*(d_1+...+d_n)/(n-1); Koszul top syzygy, strongly semistable";
    pub const NU_PARAMETER: &str =
        "nu = d_1+...+d_n; parameter ideal, top Koszul syzygy is the line bundle O_Y(-d_1-...-d_n)";
    pub const SMITH: &str = "R_{>=d} in I*, d = max sum of dim(R) generator degrees";
    pub const PARAMETER: &str = "R_{>=d_1+...+d_n} in (f_1,...,f_n)*";
    pub const INCLUSION: &str = "R_{>q*nu+a} in I^[q]; threshold floor(q*nu+a)+1, a = deg(omega_Y)/deg(Y)";
    pub const TIGHT: &str = "R_{>=nu} in I*";
    pub const FROBENIUS_CLOSURE: &str = "R_{>nu} in I^F (strict)";
    pub const C1: &str = "C1 = max{d_i, -mu(Syz_j)/deg(Y), j=1..t}; slopes derived from Koszul alternating sums";
    pub const C0: &str = "C0 = max{reg(R), deg(omega_Y)/deg(Y)}, reg(R) = a + dim(R)";
    pub const C1_PRIME: &str = "C1' = max{alpha_{k,j}: j=1..t+1}, Koszul twists (Chardin)";
    pub const A_INVARIANT: &str = "a = deg(omega_Y)/deg(Y) = sum_j deg(H_j) - N for a complete intersection";
}

/// Every closed-form threshold for one ring and ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub nu: Cited<BigRational>,
    pub assumptions: AssumptionSet,
    pub a_invariant: Cited<i64>,
    pub smith_bound: Cited<u64>,
    pub parameter_bound: Cited<u64>,
    pub tight_closure_threshold: Cited<BigRational>,
    pub inclusion_threshold: Vec<(u64, Cited<BigInt>)>,
    pub frobenius_closure_threshold: Cited<BigRational>,
    pub c1: Cited<BigRational>,
    pub c0: Cited<i64>,
    pub chardin_c1prime: Cited<u64>,
    pub caveats: Vec<&'static str>,
}

/// `nu` and its citation, or a refusal naming the missing flag.
pub fn nu_for(degrees: &[u32], dim_r: usize, assumptions: &AssumptionSet) -> Result<Cited<BigRational>, BoundsError> {
    check_shape(degrees.len(), dim_r)?;
    if degrees.len() == dim_r {
        let nu = BigRational::from_integer(BigInt::from(parameter_bound(degrees)));
        return Ok(Cited::new(nu, citations::NU_PARAMETER));
    }
    if !assumptions.contains(&Assumption::StronglySemistable) {
        return Err(BoundsError::MissingAssumption {
            flag: Assumption::StronglySemistable,
            needed_for: "nu (the minimal slope of the top syzygy bundle)",
        });
    }
    Ok(Cited::new(nu_strongly_semistable(degrees, dim_r)?, citations::NU_SEMISTABLE))
}

impl BoundReport {
    /// `assumptions` is the union of ring and problem flags. `qs` selects the
    /// rows of the inclusion-threshold table.
    pub fn compute(
        ring: &RingPresentation,
        degrees: &[u32],
        assumptions: &AssumptionSet,
        qs: &[u64],
    ) -> Result<Self, BoundsError> {
        if let Some(flag) = first_missing(assumptions, &INCLUSION_HYPOTHESES) {
            return Err(BoundsError::MissingAssumption { flag, needed_for: "the Frobenius-power inclusion bound" });
        }
        let dim_r = ring.dim();
        let nu = nu_for(degrees, dim_r, assumptions)?;
        let a = ring.a_invariant();
        let (c1, c0) = regularity_bound_constants(degrees, ring, assumptions)?;
        let inclusion_threshold =
            qs.iter().map(|&q| (q, Cited::new(inclusion_threshold(&nu.value, a, q), citations::INCLUSION))).collect();
        Ok(Self {
            tight_closure_threshold: Cited::new(nu.value.clone(), citations::TIGHT),
            frobenius_closure_threshold: Cited::new(nu.value.clone(), citations::FROBENIUS_CLOSURE),
            nu,
            assumptions: assumptions.clone(),
            a_invariant: Cited::new(a, citations::A_INVARIANT),
            smith_bound: Cited::new(smith_bound(degrees, dim_r)?, citations::SMITH),
            parameter_bound: Cited::new(parameter_bound(degrees), citations::PARAMETER),
            inclusion_threshold,
            c1: Cited::new(c1, citations::C1),
            c0: Cited::new(c0, citations::C0),
            chardin_c1prime: Cited::new(chardin_constant(degrees, dim_r), citations::C1_PRIME),
            caveats: vec![caveats::ASSUMED_NOT_VERIFIED, caveats::KOSZUL_NOT_MINIMAL],
        })
    }
}

/// `"8/3"` or `"3"`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::order::MonomialOrder;
    use crate::poly::Polynomial;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ring(p: u64, vars: &[&str], rels: &[&str], flags: &[Assumption]) -> RingPresentation {
        let n: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let field = PrimeField::new(p).unwrap();
        let rels = rels.iter().map(|r| Polynomial::parse(r, &n, p).unwrap()).collect();
        RingPresentation::new(field, n, rels, flags.iter().copied().collect(), MonomialOrder::Grevlex).unwrap()
    }

    fn all_flags() -> AssumptionSet {
        [
            Assumption::NormalDomain,
            Assumption::CohenMacaulay,
            Assumption::OmegaInvertible,
            Assumption::StronglySemistable,
        ]
        .into_iter()
        .collect()
    }

    #[test]
    fn koszul_examples() {
        for a in 1..6u32 {
            let inv = koszul_invariants(&[a; 4], 2).unwrap();
            assert_eq!(inv.rank, BigInt::from(3));
            assert_eq!(inv.degree_coeff, BigInt::from(-8 * a as i64));
            assert_eq!(inv.slope_over_deg_y, rat(-8 * a as i64, 3));
            assert_eq!(inv.shift_degrees, vec![3 * a as u64; 4]);
        }
        let inv = koszul_invariants(&[2, 2, 2], 1).unwrap();
        assert_eq!((inv.rank, inv.degree_coeff), (BigInt::from(2), BigInt::from(-6)));
        assert_eq!(inv.slope_over_deg_y, rat(-3, 1));
        // with deg(Y) = 3 this is the normalized minimal slope -9
        assert_eq!(inv.slope_over_deg_y * rat(3, 1), rat(-9, 1));
        let inv = koszul_invariants(&[2, 5], 1).unwrap();
        assert_eq!((inv.rank, inv.degree_coeff), (BigInt::from(1), BigInt::from(-7)));
        assert!(koszul_invariants(&[1, 1], 2).is_err());
        assert!(koszul_invariants(&[1, 1], 0).is_err());
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu_strongly_semistable(&[2, 2, 2], 2).unwrap(), rat(3, 1));
        for a in 1..5u32 {
            assert_eq!(nu_strongly_semistable(&[a; 4], 3).unwrap(), rat(8 * a as i64, 3));
        }
        assert_eq!(nu_strongly_semistable(&[3, 4], 2).unwrap(), rat(7, 1));
        assert_eq!(parameter_bound(&[3, 4]), 7);
        assert!(matches!(nu_strongly_semistable(&[1, 1], 3), Err(BoundsError::TooFewGenerators { .. })));
    }

    #[test]
    fn smith_parameter_chardin_examples() {
        assert_eq!(parameter_bound(&[1, 1]), 2);
        assert_eq!(parameter_bound(&[5]), 5);
        assert_eq!(parameter_bound(&[3, 3, 3, 3]), 12);
        assert_eq!(smith_bound(&[2, 2, 2], 2).unwrap(), 4);
        assert_eq!(smith_bound(&[3, 3, 3, 3], 3).unwrap(), 9);
        assert_eq!(smith_bound(&[1, 2, 5], 2).unwrap(), 7);
        assert!(smith_bound(&[1], 2).is_err());
        assert_eq!(chardin_constant(&[2, 2, 2], 2), 4);
        assert_eq!(chardin_constant(&[3, 3, 3, 3], 3), 9);
        assert_eq!(chardin_constant(&[1, 1], 2), 2);
    }

    #[test]
    fn inclusion_threshold_examples() {
        assert_eq!(inclusion_threshold(&rat(3, 1), 0, 7), BigInt::from(22));
        assert_eq!(inclusion_threshold(&rat(3, 1), 0, 49), BigInt::from(148));
        assert_eq!(inclusion_threshold(&rat(2, 1), 0, 1), BigInt::from(3));
        assert_eq!(inclusion_threshold(&rat(8, 3), 0, 3), BigInt::from(9));
        assert_eq!(inclusion_threshold(&rat(8, 3), 0, 1), BigInt::from(3));
        assert_eq!(inclusion_threshold(&rat(2, 1), -2, 8), BigInt::from(15));
    }

    #[test]
    fn inclusion_threshold_rational_oracle() {
        // smallest m with m*den > q*num + a*den, by direct scan
        for num in 0..30i64 {
            for den in 1..7i64 {
                for a in -4..4i64 {
                    for q in [1u64, 2, 3, 4, 5, 7, 8, 9, 25] {
                        let rhs = q as i64 * num + a * den;
                        let mut m = -100i64;
                        while m * den <= rhs {
                            m += 1;
                        }
                        assert_eq!(inclusion_threshold(&rat(num, den), a, q), BigInt::from(m));
                    }
                }
            }
        }
    }

    #[test]
    fn regularity_constants_examples() {
        let cubic = ring(7, &["x", "y", "z"], &["x^3+y^3+z^3"], &[Assumption::CohenMacaulay]);
        let (c1, c0) = regularity_bound_constants(&[2, 2, 2], &cubic, &all_flags()).unwrap();
        assert_eq!((c1, c0), (rat(3, 1), 2));
        let quartic = ring(3, &["x", "y", "z", "w"], &["x^4+y^4+z^4+w^4"], &[Assumption::CohenMacaulay]);
        let (c1, c0) = regularity_bound_constants(&[3, 3, 3, 3], &quartic, &all_flags()).unwrap();
        assert_eq!((c1, c0), (rat(8, 1), 3));
        // parameters in a plane curve: no semistability flag needed, Syz_1 is a line bundle
        let (c1, _) =
            regularity_bound_constants(&[2, 5], &cubic, &[Assumption::CohenMacaulay].into_iter().collect()).unwrap();
        assert_eq!(c1, rat(7, 1));
        assert!(matches!(
            regularity_bound_constants(&[2, 2, 2], &cubic, &AssumptionSet::new()),
            Err(BoundsError::MissingAssumption { flag: Assumption::StronglySemistable, .. })
        ));
        let mut no_cm = all_flags();
        no_cm.remove(&Assumption::CohenMacaulay);
        assert!(matches!(
            regularity_bound_constants(&[2, 2, 2], &cubic, &no_cm),
            Err(BoundsError::MissingAssumption { flag: Assumption::CohenMacaulay, .. })
        ));
    }

    #[test]
    fn fermat_cubic_report() {
        let cubic = ring(7, &["x", "y", "z"], &["x^3+y^3+z^3"], &[]);
        let r = BoundReport::compute(&cubic, &[2, 2, 2], &all_flags(), &[1, 7, 49]).unwrap();
        assert_eq!(r.nu.value, rat(3, 1));
        assert_eq!(r.c1.value, rat(3, 1));
        assert_eq!(r.c0.value, 2);
        assert_eq!(r.chardin_c1prime.value, 4);
        assert_eq!(r.smith_bound.value, 4);
        let t: Vec<i64> = r.inclusion_threshold.iter().map(|(_, c)| c.value.to_i64().unwrap()).collect();
        assert_eq!(t, vec![4, 22, 148]);
    }

    #[test]
    fn report_refuses_without_flags() {
        let cubic = ring(7, &["x", "y", "z"], &["x^3+y^3+z^3"], &[]);
        for drop in [
            Assumption::NormalDomain,
            Assumption::CohenMacaulay,
            Assumption::OmegaInvertible,
            Assumption::StronglySemistable,
        ] {
            let mut flags = all_flags();
            flags.remove(&drop);
            match BoundReport::compute(&cubic, &[2, 2, 2], &flags, &[7]) {
                Err(BoundsError::MissingAssumption { flag, .. }) => assert_eq!(flag, drop),
                other => panic!("{drop}: {other:?}"),
            }
        }
    }

    #[test]
    fn frobenius_closure_exponent_examples() {
        // deg f = 4 > nu = 3, a = 0: q = 1 already suffices
        assert_eq!(frobenius_closure_exponent(&rat(3, 1), 0, 7, 4), Some(0));
        assert_eq!(frobenius_closure_exponent(&rat(3, 1), 0, 7, 3), None);
        // eps = 1/3, a = 1: need q/3 > 1, q = 9 for p = 3
        assert_eq!(frobenius_closure_exponent(&rat(8, 3), 1, 3, 3), Some(2));
    }

    #[test]
    fn rational_text() {
        assert_eq!(format_rational(&rat(8, 3)), "8/3");
        assert_eq!(format_rational(&rat(6, 2)), "3");
        assert_eq!(parse_rational("8/3"), Some(rat(8, 3)));
        assert_eq!(parse_rational(" 4 "), Some(rat(4, 1)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn euler_characteristic_of_full_complex() {
        for degrees in [vec![1u32, 1], vec![2, 2, 2], vec![1, 2, 3, 4], vec![5, 1, 4, 2, 2, 7]] {
            assert_eq!(koszul_alternating_sums(&degrees, 0), (BigInt::one(), BigInt::zero()));
        }
    }

    proptest! {
        #[test]
        fn closed_forms_for_all_j(degrees in prop::collection::vec(1u32..10, 2..=8)) {
            let n = degrees.len() as u64;
            let sum: i64 = degrees.iter().map(|&d| d as i64).sum();
            for j in 1..degrees.len() {
                let inv = koszul_invariants(&degrees, j).unwrap();
                prop_assert_eq!(&inv.rank, &binomial(n - 1, j as u64));
                prop_assert_eq!(&inv.degree_coeff, &(binomial(n - 2, j as u64 - 1) * BigInt::from(-sum)));
                prop_assert_eq!(&inv.slope_over_deg_y, &rat(-(j as i64) * sum, n as i64 - 1));
                prop_assert_eq!(inv.shift_degrees.len() as u64, binomial(n, j as u64 + 1).to_u64().unwrap());
            }
        }

        #[test]
        fn nu_is_top_slope(degrees in prop::collection::vec(1u32..10, 2..=8), dim in 2usize..=8) {
            prop_assume!(dim <= degrees.len());
            let nu = nu_strongly_semistable(&degrees, dim).unwrap();
            prop_assert_eq!(nu, -koszul_invariants(&degrees, dim - 1).unwrap().slope_over_deg_y);
        }

        #[test]
        fn slope_bound_beats_chardin_for_equal_degrees(d in 1u32..10, n in 2usize..=8, dim in 2usize..=8) {
            prop_assume!(dim <= n);
            let degrees = vec![d; n];
            let t = dim - 1;
            let mut c1 = BigRational::from_integer(BigInt::from(d));
            for j in 1..=t {
                c1 = c1.max(-koszul_invariants(&degrees, j).unwrap().slope_over_deg_y);
            }
            prop_assert!(c1 <= BigRational::from_integer(BigInt::from(chardin_constant(&degrees, dim))));
        }

        #[test]
        fn parameter_case_collapses(degrees in prop::collection::vec(1u32..10, 2..=6)) {
            let dim = degrees.len();
            let sum = parameter_bound(&degrees);
            prop_assert_eq!(smith_bound(&degrees, dim).unwrap(), sum);
            prop_assert_eq!(nu_strongly_semistable(&degrees, dim).unwrap(), BigRational::from_integer(BigInt::from(sum)));
        }
    }
}
