//! Fine gradings by `Z^N / L`, where `L` is spanned by exponent differences
//! inside each relation and each ideal generator.
//!
//! Every relation is homogeneous for the induced grading, and so is every
//! `f_i^q` (its exponent differences are `q` times those of `f_i`). The
//! membership matrix in a fixed total degree is therefore block diagonal by
//! class, and each block can be eliminated on its own.

use crate::poly::{Monomial, Polynomial};

/// Canonical representative of a coset of `L` in `Z^N`.
pub type GradeClass = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FineGrading {
    num_vars: usize,
    /// Integer echelon form of `L`: `(pivot column, row)`, pivots positive.
    rows: Vec<(usize, Vec<i64>)>,
}

impl FineGrading {
    /// `L = 0`: every monomial is its own class.
    pub fn trivial(num_vars: usize) -> Self {
        Self { num_vars, rows: Vec::new() }
    }

    /// `L` = degree-zero vectors, so classes are total degrees.
    pub fn coarse(num_vars: usize) -> Self {
        let gens = (1..num_vars).map(|i| {
            let mut v = vec![0i64; num_vars];
            v[0] = 1;
            v[i] = -1;
            v
        });
        Self::from_vectors(num_vars, gens)
    }

    /// The lattice spanned by all differences of exponent vectors within each
    /// polynomial.
    pub fn from_polynomials<'a, I>(num_vars: usize, polys: I) -> Self
    where
        I: IntoIterator<Item = &'a Polynomial>,
    {
        let mut gens = Vec::new();
        for f in polys {
            let mut it = f.monomials();
            let Some(first) = it.next() else { continue };
            for m in it {
                gens.push(m.exponents().iter().zip(first.exponents()).map(|(&a, &b)| a as i64 - b as i64).collect());
            }
        }
        Self::from_vectors(num_vars, gens)
    }

    pub fn from_vectors<I: IntoIterator<Item = Vec<i64>>>(num_vars: usize, gens: I) -> Self {
        let mut pending: Vec<Vec<i128>> = gens
            .into_iter()
            .map(|v| {
                assert_eq!(v.len(), num_vars);
                v.into_iter().map(i128::from).collect()
            })
            .filter(|v: &Vec<i128>| v.iter().any(|&x| x != 0))
            .collect();
        let mut rows = Vec::new();
        for col in 0..num_vars {
            // Euclid on column `col` until one row carries its gcd
            while let Some(best) =
                (0..pending.len()).filter(|&i| pending[i][col] != 0).min_by_key(|&i| pending[i][col].abs())
            {
                let pivot = pending[best].clone();
                let mut done = true;
                for (i, v) in pending.iter_mut().enumerate() {
                    if i != best && v[col] != 0 {
                        let k = v[col].div_euclid(pivot[col]);
                        for (x, &y) in v.iter_mut().zip(&pivot) {
                            *x -= k * y;
                        }
                        done &= v[col] == 0;
                    }
                }
                if done {
                    let mut row = pending.swap_remove(best);
                    if row[col] < 0 {
                        row.iter_mut().for_each(|x| *x = -*x);
                    }
                    let row = row.into_iter().map(|x| i64::try_from(x).expect("lattice entry overflow")).collect();
                    rows.push((col, row));
                    break;
                }
            }
            pending.retain(|v| v.iter().any(|&x| x != 0));
        }
        Self { num_vars, rows }
    }

    /// Rank of `L`.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn class_of_exponents(&self, exps: impl IntoIterator<Item = i64>) -> GradeClass {
        let mut v: Vec<i64> = exps.into_iter().collect();
        assert_eq!(v.len(), self.num_vars);
        for (col, row) in &self.rows {
            let k = v[*col].div_euclid(row[*col]);
            if k != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x -= k * y;
                }
            }
        }
        v
    }

    pub fn class_of(&self, m: &Monomial) -> GradeClass {
        self.class_of_exponents(m.exponents().iter().map(|&e| e as i64))
    }

    /// Class of `s * m^q`.
    pub fn class_of_product(&self, s: &Monomial, m: &Monomial, q: u64) -> GradeClass {
        self.class_of_exponents(s.exponents().iter().zip(m.exponents()).map(|(&a, &b)| a as i64 + q as i64 * b as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn fermat_cubic_lattice() {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let f = Polynomial::parse("x^3+y^3+z^3", &names, 7).unwrap();
        let g = FineGrading::from_polynomials(3, [&f]);
        assert_eq!(g.rank(), 2);
        assert_eq!(g.class_of(&mono(&[3, 0, 0])), g.class_of(&mono(&[0, 0, 3])));
        assert_ne!(g.class_of(&mono(&[1, 0, 0])), g.class_of(&mono(&[0, 1, 0])));
        // Z^3 / L has 9 classes of each total degree
        let classes: std::collections::BTreeSet<_> =
            Monomial::all_of_degree(3, 12).iter().map(|m| g.class_of(m)).collect();
        assert_eq!(classes.len(), 9);
    }

    #[test]
    fn coarse_is_total_degree() {
        let g = FineGrading::coarse(4);
        for d in 0..5 {
            let classes: std::collections::BTreeSet<_> =
                Monomial::all_of_degree(4, d).iter().map(|m| g.class_of(m)).collect();
            assert_eq!(classes.len(), 1);
        }
        assert_ne!(g.class_of(&mono(&[1, 0, 0, 0])), g.class_of(&mono(&[1, 1, 0, 0])));
        assert_eq!(FineGrading::coarse(1).rank(), 0);
    }

    #[test]
    fn trivial_lattice() {
        let g = FineGrading::trivial(2);
        assert_ne!(g.class_of(&mono(&[1, 0])), g.class_of(&mono(&[0, 1])));
        let field = PrimeField::new(5).unwrap();
        let zero = Polynomial::zero(field, 2);
        assert_eq!(FineGrading::from_polynomials(2, [&zero]).rank(), 0);
    }

    proptest! {
        // two vectors are in the same class iff their difference lies in the
        // rational span and is integral there; checked against brute force
        // over small coefficient combinations of the generators
        #[test]
        fn classes_match_lattice_membership(
            gens in prop::collection::vec(prop::collection::vec(-3i64..4, 3), 1..3),
            u in prop::collection::vec(-6i64..7, 3),
            w in prop::collection::vec(-6i64..7, 3),
        ) {
            let g = FineGrading::from_vectors(3, gens.clone());
            let diff: Vec<i64> = u.iter().zip(&w).map(|(a, b)| a - b).collect();
            let mut in_lattice = false;
            let range = -12i64..=12;
            if gens.len() == 1 {
                for a in range.clone() {
                    in_lattice |= (0..3).all(|i| a * gens[0][i] == diff[i]);
                }
            } else {
                for a in range.clone() {
                    for b in range.clone() {
                        in_lattice |= (0..3).all(|i| a * gens[0][i] + b * gens[1][i] == diff[i]);
                    }
                }
            }
            let same = g.class_of_exponents(u.iter().copied()) == g.class_of_exponents(w.iter().copied());
            // brute force range is finite: it can miss far lattice points but never invent one
            if in_lattice {
                prop_assert!(same);
            }
            if same {
                let c = g.class_of_exponents(diff.iter().copied());
                prop_assert_eq!(c, vec![0; 3]);
            }
        }

        #[test]
        fn lattice_translates_share_a_class(
            gens in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 0..4),
            coeffs in prop::collection::vec(-3i64..4, 4),
            u in prop::collection::vec(0i64..9, 4),
            v in prop::collection::vec(0i64..9, 4),
        ) {
            let g = FineGrading::from_vectors(4, gens.clone());
            let mut w = u.clone();
            for (gen, c) in gens.iter().zip(&coeffs) {
                for (x, y) in w.iter_mut().zip(gen) {
                    *x += c * y;
                }
            }
            prop_assert_eq!(g.class_of_exponents(u.iter().copied()), g.class_of_exponents(w.iter().copied()));
            let uv = u.iter().zip(&v).map(|(a, b)| a + b);
            let wv = w.iter().zip(&v).map(|(a, b)| a + b);
            prop_assert_eq!(g.class_of_exponents(uv), g.class_of_exponents(wv));
        }
    }
}
