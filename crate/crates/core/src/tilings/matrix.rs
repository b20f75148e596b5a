use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::enumerate_tilings;
use crate::error::{check_capacity, Error, Result};
use crate::paths::{enumerate_dyck, is_above, order_succ, DyckPath};
use crate::qpoly::PQPoly;

/// Default largest half-length for the matrix routines.
pub const DEFAULT_MATRIX_LIMIT: usize = 5;

/// Dense square matrix of polynomials. Serializes as rows of rendered strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix(pub Vec<Vec<PQPoly>>);

impl PolyMatrix {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &PQPoly {
        &self.0[i][j]
    }

    pub fn identity(dim: usize) -> Self {
        PolyMatrix(
            (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| if i == j { PQPoly::one() } else { PQPoly::zero() })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        let n = self.dim();
        PolyMatrix(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            (0..n)
                                .map(|k| &self.0[i][k] * &other.0[k][j])
                                .sum::<PQPoly>()
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// Every entry evaluated at `p = q = 1`.
    pub fn eval_at_one(&self) -> Vec<Vec<BigInt>> {
        self.0
            .iter()
            .map(|row| row.iter().map(PQPoly::eval_at_one).collect())
            .collect()
    }
}

impl Serialize for PolyMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .0
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

fn area_between(lower: &DyckPath, upper: &DyckPath) -> u32 {
    upper
        .column_heights()
        .iter()
        .zip(lower.column_heights())
        .map(|(u, l)| (u - l) as u32)
        .sum()
}

/// `M(p,q)[λ][μ] = p^|λ/μ| q^d(λ,μ)` when `λ ≻ μ`, rows and columns in
/// enumeration order. Lexicographic order is a linear extension of `≻`, so
/// the result is lower unitriangular.
pub fn build_matrix_m(n: usize) -> Result<(Vec<DyckPath>, PolyMatrix)> {
    check_capacity("matrix half-length", n, DEFAULT_MATRIX_LIMIT)?;
    let paths = enumerate_dyck(n)?;
    let mut rows = Vec::with_capacity(paths.len());
    for l in &paths {
        let mut row = Vec::with_capacity(paths.len());
        for m in &paths {
            row.push(match order_succ(l, m)? {
                Some(d) => PQPoly::monomial(1, area_between(l, m), d as u32),
                None => PQPoly::zero(),
            });
        }
        rows.push(row);
    }
    Ok((paths, PolyMatrix(rows)))
}

/// Forward substitution for a lower unitriangular matrix.
pub fn invert_unitriangular(m: &PolyMatrix) -> Result<PolyMatrix> {
    let n = m.dim();
    for i in 0..n {
        if m.0[i].len() != n {
            return Err(Error::Invariant("matrix is not square".into()));
        }
        if m.0[i][i] != PQPoly::one() {
            return Err(Error::Invariant(format!("diagonal entry {i} is not 1")));
        }
        if (i + 1..n).any(|j| !m.0[i][j].is_zero()) {
            return Err(Error::Invariant(format!(
                "row {i} has entries above the diagonal"
            )));
        }
    }
    let mut x = PolyMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            let mut acc = PQPoly::zero();
            for k in j..i {
                if !m.0[i][k].is_zero() && !x.0[k][j].is_zero() {
                    acc += &(&m.0[i][k] * &x.0[k][j]);
                }
            }
            x.0[i][j] = -&acc;
        }
    }
    Ok(x)
}

/// Matrix whose `[λ][μ]` entry is `Σ_T (-p)^|λ/μ| q^|T|` over tilings of `λ/μ`.
pub fn formula_inverse(n: usize) -> Result<(Vec<DyckPath>, PolyMatrix)> {
    check_capacity("matrix half-length", n, DEFAULT_MATRIX_LIMIT)?;
    let paths = enumerate_dyck(n)?;
    let mut rows = Vec::new();
    for l in &paths {
        let mut row = Vec::new();
        for m in &paths {
            let mut entry = PQPoly::zero();
            if is_above(m, l)? {
                let area = area_between(l, m);
                let sign = if area.is_multiple_of(2) { 1 } else { -1 };
                for t in enumerate_tilings(l, m)? {
                    entry += &PQPoly::monomial(sign, area, t.size() as u32);
                }
            }
            row.push(entry);
        }
        rows.push(row);
    }
    Ok((paths, PolyMatrix(rows)))
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixCheck {
    pub paths: Vec<DyckPath>,
    pub inverse: PolyMatrix,
    pub formula: PolyMatrix,
    pub equal: bool,
    /// At `p = q = 1` every entry is `(-1)^|λ/μ|` times the tiling count.
    pub specialization_ok: bool,
}

pub fn invert_and_check(n: usize) -> Result<MatrixCheck> {
    let (paths, m) = build_matrix_m(n)?;
    let inverse = invert_unitriangular(&m)?;
    let (_, formula) = formula_inverse(n)?;
    let equal = inverse == formula;
    let ones = inverse.eval_at_one();
    let mut specialization_ok = true;
    for (i, l) in paths.iter().enumerate() {
        for (j, mu) in paths.iter().enumerate() {
            let expected = if is_above(mu, l)? {
                let count = BigInt::from(enumerate_tilings(l, mu)?.len());
                if area_between(l, mu).is_multiple_of(2) {
                    count
                } else {
                    -count
                }
            } else {
                BigInt::zero()
            };
            specialization_ok &= ones[i][j] == expected;
        }
    }
    Ok(MatrixCheck {
        paths,
        inverse,
        formula,
        equal,
        specialization_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq() -> PQPoly {
        PQPoly::monomial(1, 1, 1)
    }

    #[test]
    fn small_matrices() {
        let (_, m1) = build_matrix_m(1).unwrap();
        assert_eq!(m1, PolyMatrix::identity(1));
        let (paths, m2) = build_matrix_m(2).unwrap();
        assert_eq!(paths[0].to_string(), "UUDD");
        assert_eq!(
            m2,
            PolyMatrix(vec![
                vec![PQPoly::one(), PQPoly::zero()],
                vec![pq(), PQPoly::one()]
            ])
        );
        let ones: Vec<Vec<i64>> = vec![vec![1, 0], vec![1, 1]];
        let got: Vec<Vec<i64>> = m2
            .eval_at_one()
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect();
        assert_eq!(got, ones);
    }

    #[test]
    fn inverse_two_by_two() {
        let c = invert_and_check(2).unwrap();
        assert_eq!(
            c.inverse,
            PolyMatrix(vec![
                vec![PQPoly::one(), PQPoly::zero()],
                vec![-&pq(), PQPoly::one()]
            ])
        );
        assert!(c.equal && c.specialization_ok);
        assert!(invert_and_check(1).unwrap().equal);
    }

    #[test]
    fn inverse_matches_tilings_up_to_four() {
        for n in 0..=4 {
            let c = invert_and_check(n).unwrap();
            assert!(c.equal, "n={n}");
            assert!(c.specialization_ok, "n={n}");
            let (_, m) = build_matrix_m(n).unwrap();
            assert_eq!(m.mul(&c.formula), PolyMatrix::identity(m.dim()));
        }
    }

    #[test]
    fn rejects_upper_entries() {
        let bad = PolyMatrix(vec![
            vec![PQPoly::one(), PQPoly::one()],
            vec![PQPoly::zero(), PQPoly::one()],
        ]);
        assert!(matches!(invert_unitriangular(&bad), Err(Error::Invariant(_))));
        assert!(matches!(build_matrix_m(6), Err(Error::Capacity { .. })));
    }
}
