//! Closest vectors: rounding against an orthogonal basis, and an exhaustive
//! search used to check it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{norm_sq, IntMatrix, LatticeCoordinates};
use crate::orthogonality::OrthogonalBasis;

pub const CVP_EXHAUSTIVE_LIMIT: usize = 6;

/// Squared Euclidean distance between an integer and a rational vector.
pub fn dist_sq(v: &[BigInt], t: &[BigRational]) -> BigRational {
    v.iter()
        .zip(t)
        .map(|(x, y)| {
            let d = BigRational::from_integer(x.clone()) - y;
            &d * &d
        })
        .fold(BigRational::zero(), |a, b| a + b)
}

/// `Σ round(⟨t,b⟩/‖b‖²)·b` over the rows of an orthogonal basis. Halves
/// round away from zero.
pub fn cvp_round(orth: &OrthogonalBasis, t: &[BigRational]) -> Vec<BigInt> {
    let b = orth.basis();
    assert_eq!(t.len(), b.cols(), "target length must match the basis");
    let mut out = vec![BigInt::zero(); b.cols()];
    for i in 0..b.rows() {
        let row = b.row(i);
        let proj = row.iter().zip(t).fold(BigRational::zero(), |acc, (x, y)| {
            acc + y * BigRational::from_integer(x.clone())
        });
        let coef = (proj / BigRational::from_integer(norm_sq(row)))
            .round()
            .to_integer();
        if coef.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o += &coef * x;
        }
    }
    out
}

struct BallSearch<'a> {
    coords: &'a LatticeCoordinates,
    /// Target scaled to integers: `t = scaled / denom`.
    scaled: Vec<BigInt>,
    denom: BigInt,
    best: Option<(BigInt, Vec<BigInt>)>,
    budget: BigInt,
}

impl BallSearch<'_> {
    /// Enumerates integer points in lexicographic order; `used` is the
    /// scaled squared distance of the prefix.
    fn rec(&mut self, v: &mut Vec<BigInt>, used: &BigInt) {
        let i = v.len();
        if i == self.scaled.len() {
            if self.coords.contains(v) && self.best.as_ref().is_none_or(|(d, _)| used < d) {
                self.budget = used.clone();
                self.best = Some((used.clone(), v.clone()));
            }
            return;
        }
        let rem = &self.budget - used;
        if rem.is_negative() {
            return;
        }
        let s = rem.sqrt();
        let t = self.scaled[i].clone();
        let t = &t;
        let lo = (t - &s).div_ceil(&self.denom);
        let hi = (t + &s).div_floor(&self.denom);
        let mut x = lo;
        while x <= hi {
            let diff = &self.denom * &x - t;
            let next = used + &diff * &diff;
            if next <= self.budget {
                v.push(x.clone());
                self.rec(v, &next);
                v.pop();
            }
            x += 1;
        }
    }
}

/// Closest vector of `L(b)` to `t` by exhaustive enumeration of integer points
/// in a ball around `t`, for integral `b` with `n ≤ 6`. Ties go to the
/// lexicographically smallest vector.
///
/// The ball radius is the distance from `t` to the better of two lattice
/// points known in advance: `e·round(t/e)` (with `e·Zⁿ ⊆ L`) and the
/// coefficient-rounding point `round(t·B⁻¹)·B`. Every closest vector lies
/// inside it.
pub fn cvp_exhaustive(b: &IntMatrix, t: &[BigRational]) -> Result<Vec<BigInt>> {
    let n = b.rows();
    if n > CVP_EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: CVP_EXHAUSTIVE_LIMIT,
        });
    }
    if t.len() != b.cols() {
        return Err(Error::DimensionMismatch {
            expected: b.cols(),
            got: t.len(),
        });
    }
    let coords = LatticeCoordinates::new(b)?;

    let e = BigRational::from_integer(coords.exponent().clone());
    let via_exponent: Vec<BigInt> = t
        .iter()
        .map(|x| ((x / &e).round() * &e).to_integer())
        .collect();
    let coeffs: Vec<BigInt> = coords
        .rational_coords(t)
        .iter()
        .map(|x| x.round().to_integer())
        .collect();
    let via_coeffs: Vec<BigInt> = (0..n)
        .map(|j| {
            coeffs
                .iter()
                .enumerate()
                .fold(BigInt::zero(), |acc, (i, c)| acc + c * b.get(i, j))
        })
        .collect();
    let bound = std::cmp::min(dist_sq(&via_exponent, t), dist_sq(&via_coeffs, t));

    let denom = t.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = t
        .iter()
        .map(|x| (x * BigRational::from_integer(denom.clone())).to_integer())
        .collect();
    let budget = (bound * BigRational::from_integer(&denom * &denom)).to_integer();

    let mut search = BallSearch {
        coords: &coords,
        scaled,
        denom,
        best: None,
        budget,
    };
    search.rec(&mut Vec::with_capacity(n), &BigInt::zero());
    let (_, v) = search
        .best
        .expect("the ball contains at least one known lattice point");
    Ok(v)
}
