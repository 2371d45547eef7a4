//! Independent oracles. Nothing here calls into the library's arithmetic:
//! polynomials over F_2 are sets of exponent vectors, and membership is
//! decided by enumerating every subset of a spanning set.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use rand::Rng;

/// A polynomial over F_2 as the set of monomials with coefficient 1.
pub type F2Poly = BTreeSet<Vec<u32>>;

pub fn f2_add(a: &F2Poly, b: &F2Poly) -> F2Poly {
    a.symmetric_difference(b).cloned().collect()
}

pub fn f2_mul(a: &F2Poly, b: &F2Poly) -> F2Poly {
    let mut out = F2Poly::new();
    for u in a {
        for v in b {
            let w: Vec<u32> = u.iter().zip(v).map(|(x, y)| x + y).collect();
            if !out.remove(&w) {
                out.insert(w);
            }
        }
    }
    out
}

/// `f^q` by repeated squaring, `q` a power of two.
pub fn f2_power(f: &F2Poly, q: u64) -> F2Poly {
    assert!(q.is_power_of_two());
    let mut acc = f.clone();
    let mut k = 1;
    while k < q {
        acc = f2_mul(&acc, &acc);
        k *= 2;
    }
    acc
}

/// All exponent vectors in `n` variables of total degree `d`.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn degree_of(f: &F2Poly) -> Option<u32> {
    let mut degs = f.iter().map(|m| m.iter().sum::<u32>());
    let d = degs.next()?;
    degs.all(|e| e == d).then_some(d)
}

pub fn random_homogeneous<R: Rng>(rng: &mut R, n: usize, d: u32) -> F2Poly {
    loop {
        let f: F2Poly = monomials(n, d).into_iter().filter(|_| rng.gen_bool(0.4)).collect();
        if !f.is_empty() {
            return f;
        }
    }
}

/// Degree-`m` vectors spanning `(f_1^q, ..., f_n^q) + (relations)` in the
/// polynomial ring: monomial multiples of every lifted generator.
pub fn lifted_span(num_vars: usize, relations: &[F2Poly], gens: &[F2Poly], q: u64, m: u32) -> Vec<F2Poly> {
    let mut lifted: Vec<F2Poly> = gens.iter().map(|g| f2_power(g, q)).collect();
    lifted.extend(relations.iter().cloned());
    let mut span = Vec::new();
    for g in &lifted {
        let d = degree_of(g).expect("homogeneous");
        if d > m {
            continue;
        }
        for s in monomials(num_vars, m - d) {
            let shifted: F2Poly = g.iter().map(|u| u.iter().zip(&s).map(|(a, b)| a + b).collect()).collect();
            span.push(shifted);
        }
    }
    span
}

/// Whether `h` is a sum of some subset of `span`; tries all `2^len` subsets.
pub fn in_span_exhaustive(span: &[F2Poly], h: &F2Poly) -> bool {
    assert!(span.len() <= 20, "exhaustive enumeration is for small spans");
    (0u32..1 << span.len()).any(|mask| {
        let mut acc = F2Poly::new();
        for (i, v) in span.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = f2_add(&acc, v);
            }
        }
        acc == *h
    })
}

/// Rank over F_p of integer row vectors, by plain Gaussian elimination.
pub fn rank_mod_p(mut rows: Vec<Vec<i64>>, p: i64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    for r in rows.iter_mut() {
        for x in r.iter_mut() {
            *x = x.rem_euclid(p);
        }
    }
    let inv = |a: i64| (1..p).find(|b| a * b % p == 1).expect("nonzero mod p");
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, pivot);
        let scale = inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = *x * scale % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let t = rows[r][c];
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot_row) {
                    *x = (*x - t * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn render_f2(f: &F2Poly, names: &[&str]) -> String {
    if f.is_empty() {
        return "0".into();
    }
    f.iter()
        .map(|m| {
            let factors: Vec<String> = m
                .iter()
                .zip(names)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            if factors.is_empty() {
                "1".into()
            } else {
                factors.join("*")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn problems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

pub fn problem(name: &str) -> PathBuf {
    problems_dir().join(name)
}

pub fn fpb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpb")).args(args).output().expect("fpb binary runs")
}

pub fn fpb_json(args: &[&str]) -> serde_json::Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json", "--compare"]);
    let out = fpb(&full);
    assert!(out.status.success(), "fpb {:?} failed: {}", args, String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}
