use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::IntMatrix;

/// Fraction-free (Bareiss) elimination over the rows of `m`.
///
/// Returns the original indices of `cols` independent rows together with the
/// absolute determinant of the square submatrix they form, or `None` when the
/// rows do not have full column rank.
fn independent_rows(m: &IntMatrix) -> Option<(Vec<usize>, BigInt)> {
    let (rows, cols) = (m.rows(), m.cols());
    if rows < cols {
        return None;
    }
    let mut a = m.row_vecs();
    let mut order: Vec<usize> = (0..rows).collect();
    let mut prev = BigInt::one();
    for c in 0..cols {
        let p = (c..rows).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        order.swap(c, p);
        for i in c + 1..rows {
            for j in c + 1..cols {
                let v = (&a[c][c] * &a[i][j] - &a[i][c] * &a[c][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[c][c].clone();
    }
    order.truncate(cols);
    Some((order, prev.abs()))
}

/// Exact determinant by Bareiss elimination. Panics if `b` is not square.
pub fn determinant(b: &IntMatrix) -> BigInt {
    assert!(b.is_square(), "determinant of a non-square matrix");
    let n = b.rows();
    let mut a = b.row_vecs();
    let mut prev = BigInt::one();
    let mut negate = false;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(c, p);
            negate = !negate;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let v = (&a[c][c] * &a[i][j] - &a[i][c] * &a[c][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[c][c].clone();
    }
    if negate {
        -prev
    } else {
        prev
    }
}

/// Hermite normal form of the lattice spanned by the rows of `generators`.
///
/// Output is the unique square upper-triangular basis with positive diagonal
/// and `0 <= B[i][j] < B[j][j]` for `i < j`. Rows must span a full-rank
/// lattice; fewer independent rows than columns is an error.
pub fn hnf(generators: &IntMatrix) -> Result<IntMatrix> {
    let (_, det) = independent_rows(generators).ok_or(Error::RankDeficient)?;
    Ok(hnf_with_modulus(generators, &det))
}

/// HNF computed modulo `d`, valid whenever `d * Z^n` is contained in the
/// lattice spanned by the rows (for instance `d = |det|` of any full-rank
/// subset of the generators, or `d = q` for a Construction-A lattice).
/// Every intermediate entry stays below `d` in absolute value.
pub fn hnf_with_modulus(generators: &IntMatrix, d: &BigInt) -> IntMatrix {
    let n = generators.cols();
    assert!(d.is_positive(), "modulus must be positive");
    let reduce = |row: &mut [BigInt], from: usize| {
        for x in row[from..].iter_mut() {
            *x = x.mod_floor(d);
        }
    };

    let mut active: Vec<Vec<BigInt>> = generators
        .row_vecs()
        .into_iter()
        .map(|mut r| {
            reduce(&mut r, 0);
            r
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots: Vec<Vec<BigInt>> = Vec::with_capacity(n);

    for j in 0..n {
        let mut d_ej = vec![BigInt::zero(); n];
        d_ej[j] = d.clone();
        active.push(d_ej);

        let (mut live, rest): (Vec<_>, Vec<_>) = active.into_iter().partition(|r| !r[j].is_zero());
        active = rest;
        let mut pivot = live.pop().expect("d*e_j is always live");
        for mut other in live {
            let a = pivot[j].clone();
            let b = other[j].clone();
            let ext = a.extended_gcd(&b);
            let (g, s, t) = (ext.gcd, ext.x, ext.y);
            let (ag, bg) = (&a / &g, &b / &g);
            let new_pivot: Vec<BigInt> = pivot
                .iter()
                .zip(&other)
                .map(|(p, o)| &s * p + &t * o)
                .collect();
            for (o, p) in other.iter_mut().zip(&pivot) {
                *o = &ag * &*o - &bg * p;
            }
            pivot = new_pivot;
            debug_assert!(other[j].is_zero());
            reduce(&mut pivot, j + 1);
            reduce(&mut other, j + 1);
            if other.iter().any(|x| !x.is_zero()) {
                active.push(other);
            }
        }
        if pivot[j].is_negative() {
            for x in pivot.iter_mut() {
                *x = -&*x;
            }
            reduce(&mut pivot, j + 1);
        }
        pivots.push(pivot);
    }

    for j in 0..n {
        let (upper, lower) = pivots.split_at_mut(j);
        let pj = &lower[0];
        for row in upper.iter_mut() {
            let k = row[j].div_floor(&pj[j]);
            if !k.is_zero() {
                for (x, y) in row[j..].iter_mut().zip(&pj[j..]) {
                    *x -= &k * y;
                }
            }
        }
    }

    IntMatrix::try_from_rows(pivots).expect("n x n pivots")
}

/// Coordinates of vectors with respect to a nonsingular square basis.
///
/// Stores `B⁻¹ = adj / denom` with `denom` the least common denominator of
/// the inverse, which is also the smallest `e > 0` with `e * Z^n ⊆ L(B)`.
#[derive(Clone, Debug)]
pub struct LatticeCoordinates {
    n: usize,
    scaled_inverse: Vec<Vec<BigInt>>,
    denom: BigInt,
    small: Option<(Vec<i64>, i64)>,
}

impl LatticeCoordinates {
    pub fn new(basis: &IntMatrix) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::DimensionMismatch {
                expected: basis.cols(),
                got: basis.rows(),
            });
        }
        let n = basis.rows();
        // Gauss-Jordan on [B | I] over the rationals.
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = basis
                    .row(i)
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[r][c].is_zero())
                .ok_or(Error::SingularBasis)?;
            a.swap(c, p);
            let inv = a[c][c].recip();
            for x in a[c].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = a[c].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == c || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let inverse: Vec<Vec<BigRational>> = a.into_iter().map(|row| row[n..].to_vec()).collect();
        let denom = inverse
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scaled_inverse: Vec<Vec<BigInt>> = inverse
            .iter()
            .map(|row| row.iter().map(|x| (x * &denom).to_integer()).collect())
            .collect();
        let small = denom.to_i64().and_then(|d| {
            let flat: Option<Vec<i64>> = scaled_inverse
                .iter()
                .flatten()
                .map(ToPrimitive::to_i64)
                .collect();
            flat.map(|f| (f, d))
        });
        Ok(LatticeCoordinates {
            n,
            scaled_inverse,
            denom,
            small,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Smallest positive `e` with `e * Z^n` inside the lattice.
    pub fn exponent(&self) -> &BigInt {
        &self.denom
    }

    fn scaled(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.n)
            .map(|j| {
                v.iter()
                    .zip(&self.scaled_inverse)
                    .fold(BigInt::zero(), |acc, (vi, row)| acc + vi * &row[j])
            })
            .collect()
    }

    /// Integral `x` with `x * B = v`, if one exists.
    pub fn coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.n);
        self.scaled(v)
            .into_iter()
            .map(|s| {
                let (quo, rem) = s.div_rem(&self.denom);
                rem.is_zero().then_some(quo)
            })
            .collect()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coords(v).is_some()
    }

    /// Membership test for small integer vectors without allocation.
    pub fn contains_i64(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.n);
        match &self.small {
            Some((inv, d)) => (0..self.n).all(|j| {
                let s: i128 = v
                    .iter()
                    .enumerate()
                    .map(|(i, &vi)| vi as i128 * inv[i * self.n + j] as i128)
                    .sum();
                s % (*d as i128) == 0
            }),
            None => {
                let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
                self.contains(&big)
            }
        }
    }

    /// Rational coordinates `t * B⁻¹`.
    pub fn rational_coords(&self, t: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(t.len(), self.n);
        (0..self.n)
            .map(|j| {
                let s = t
                    .iter()
                    .zip(&self.scaled_inverse)
                    .fold(BigRational::zero(), |acc, (ti, row)| {
                        acc + ti * BigRational::from_integer(row[j].clone())
                    });
                s / BigRational::from_integer(self.denom.clone())
            })
            .collect()
    }
}

/// Integral `x` with `x * B = v`, or `None` when `v` is not in `L(B)`.
pub fn solve_integral(b: &IntMatrix, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if v.len() != b.cols() {
        return Err(Error::DimensionMismatch {
            expected: b.cols(),
            got: v.len(),
        });
    }
    Ok(LatticeCoordinates::new(b)?.coords(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn m_matrix() -> IntMatrix {
        IntMatrix::from_i64(&[[1, 1, 1, 0], [1, -1, 0, 1], [1, 0, -1, -1], [0, 1, -1, 1]])
    }

    #[test]
    fn hnf_of_even_weight_generators() {
        let g = IntMatrix::from_i64(&[[1, 1], [2, 0], [0, 2]]);
        assert_eq!(hnf(&g).unwrap(), IntMatrix::from_i64(&[[1, 1], [0, 2]]));
    }

    #[test]
    fn hnf_of_identity() {
        assert_eq!(
            hnf(&IntMatrix::identity(3)).unwrap(),
            IntMatrix::identity(3)
        );
    }

    #[test]
    fn hnf_of_m_has_index_nine() {
        let h = hnf(&m_matrix()).unwrap();
        assert!(h.is_upper_triangular());
        let diag: BigInt = (0..4).map(|i| h.get(i, i).clone()).product();
        assert_eq!(diag, BigInt::from(9));
    }

    #[test]
    fn hnf_rank_deficient() {
        let g = IntMatrix::from_i64(&[[1, 2], [2, 4], [3, 6]]);
        assert_eq!(hnf(&g), Err(Error::RankDeficient));
        assert_eq!(
            hnf(&IntMatrix::from_i64(&[[1, 0, 0]])),
            Err(Error::RankDeficient)
        );
    }

    #[test]
    fn hnf_negative_pivots_are_normalised() {
        let g = IntMatrix::from_i64(&[[-3, 5], [0, -7]]);
        let h = hnf(&g).unwrap();
        assert_eq!(h, IntMatrix::from_i64(&[[3, 2], [0, 7]]));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&IntMatrix::identity(4)), BigInt::one());
        assert_eq!(determinant(&m_matrix()).abs(), BigInt::from(9));
        assert_eq!(
            determinant(&IntMatrix::from_i64(&[[1, 1], [0, 2]])),
            BigInt::from(2)
        );
        assert_eq!(
            determinant(&IntMatrix::from_i64(&[[0, 1], [1, 0]])),
            BigInt::from(-1)
        );
        assert!(determinant(&IntMatrix::from_i64(&[[1, 2], [2, 4]])).is_zero());
    }

    #[test]
    fn determinant_of_m_matches_cofactor_expansion() {
        // Laplace expansion along the first row, computed independently.
        fn cofactor(m: &[Vec<i64>]) -> i64 {
            if m.len() == 1 {
                return m[0][0];
            }
            (0..m.len())
                .map(|j| {
                    let minor: Vec<Vec<i64>> = m[1..]
                        .iter()
                        .map(|r| {
                            r.iter()
                                .enumerate()
                                .filter(|&(c, _)| c != j)
                                .map(|(_, &x)| x)
                                .collect()
                        })
                        .collect();
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * m[0][j] * cofactor(&minor)
                })
                .sum()
        }
        let m = m_matrix();
        let expect = cofactor(&m.to_i64_rows().unwrap());
        assert_eq!(determinant(&m), BigInt::from(expect));
    }

    #[test]
    fn solve_examples() {
        let i2 = IntMatrix::identity(2);
        assert_eq!(
            solve_integral(&i2, &big(&[3, -5])).unwrap(),
            Some(big(&[3, -5]))
        );
        let b = IntMatrix::from_i64(&[[1, 1], [0, 2]]);
        assert_eq!(
            solve_integral(&b, &big(&[2, 0])).unwrap(),
            Some(big(&[2, -1]))
        );
        assert_eq!(solve_integral(&b, &big(&[1, 0])).unwrap(), None);
        let singular = IntMatrix::from_i64(&[[1, 2], [2, 4]]);
        assert_eq!(
            solve_integral(&singular, &big(&[1, 0])),
            Err(Error::SingularBasis)
        );
    }

    #[test]
    fn exponent_and_small_membership() {
        let lc = LatticeCoordinates::new(&m_matrix()).unwrap();
        assert_eq!(lc.exponent(), &BigInt::from(3));
        assert!(lc.contains_i64(&[3, 0, 0, 0]));
        assert!(lc.contains_i64(&[1, 1, 1, 0]));
        assert!(!lc.contains_i64(&[1, 0, 0, 0]));
    }
}
