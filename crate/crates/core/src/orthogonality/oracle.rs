//! Exhaustive orthogonal-basis search, independent of the code-side
//! decomposition.
//!
//! If `L ⊇ qZⁿ` has an orthogonal basis `b_1..b_n`, writing `q·e_j` in that
//! basis gives integer coefficients `q·b_ij / ‖b_i‖²`, so `‖b_i‖ ≤ q`. The
//! search therefore only needs lattice vectors of squared norm at most `q²`.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::code_lattice::{abs_det, validate};
use crate::error::{Error, Result};
use crate::exact_linalg::{FieldOrder, IntMatrix, LatticeCoordinates};
use crate::orthogonality::OrthogonalBasis;

pub const ORACLE_LIMIT: usize = 8;

/// Nonzero lattice vectors with squared norm `≤ bound`, first nonzero entry
/// positive, ordered by squared norm then lexicographically.
fn short_vectors(coords: &LatticeCoordinates, n: usize, bound: i64) -> Vec<(Vec<i64>, i64)> {
    fn rec(
        coords: &LatticeCoordinates,
        v: &mut Vec<i64>,
        n: usize,
        budget: i64,
        bound: i64,
        out: &mut Vec<(Vec<i64>, i64)>,
    ) {
        if v.len() == n {
            let leading_positive = v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0);
            if leading_positive && coords.contains_i64(v) {
                out.push((v.clone(), bound - budget));
            }
            return;
        }
        let r = (budget as f64).sqrt() as i64 + 1;
        for x in -r..=r {
            if x * x <= budget {
                v.push(x);
                rec(coords, v, n, budget - x * x, bound, out);
                v.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(
        coords,
        &mut Vec::with_capacity(n),
        n,
        bound,
        bound,
        &mut out,
    );
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Search<'a> {
    vectors: &'a [(Vec<i64>, i64)],
    n: usize,
    target: &'a BigInt,
    chosen: Vec<usize>,
}

impl Search<'_> {
    /// `candidates` are the indices still orthogonal to everything chosen.
    fn run(&mut self, candidates: &[usize], product: &BigInt) -> bool {
        if self.chosen.len() == self.n {
            return product == self.target;
        }
        if candidates.len() < self.n - self.chosen.len() {
            return false;
        }
        for (pos, &i) in candidates.iter().enumerate() {
            let (v, nsq) = &self.vectors[i];
            let next = product * BigInt::from(*nsq);
            // Remaining vectors have squared norm at least 1.
            if &next > self.target {
                continue;
            }
            let rest: Vec<usize> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|&c| dot(&self.vectors[c].0, v) == 0)
                .collect();
            self.chosen.push(i);
            if self.run(&rest, &next) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

/// Finds an orthogonal basis of `L(b)` by exhaustive search, for `n ≤ 8`.
pub fn brute_force_orthogonal(b: &IntMatrix, q: FieldOrder) -> Result<Option<OrthogonalBasis>> {
    let n = b.rows();
    if n > ORACLE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: ORACLE_LIMIT,
        });
    }
    validate(b, q)?;
    let coords = LatticeCoordinates::new(b)?;
    let q2 = (q.q() as i64).pow(2);
    let vectors = short_vectors(&coords, n, q2);
    // n orthogonal lattice vectors form a basis iff ∏‖b_i‖ = |det L|.
    let det = abs_det(b);
    let target = &det * &det;
    let mut search = Search {
        vectors: &vectors,
        n,
        target: &target,
        chosen: Vec::with_capacity(n),
    };
    let all: Vec<usize> = (0..vectors.len()).collect();
    if !search.run(&all, &BigInt::from(1)) {
        return Ok(None);
    }
    let rows: Vec<Vec<i64>> = search
        .chosen
        .iter()
        .map(|&i| vectors[i].0.clone())
        .collect();
    let basis = IntMatrix::from_i64(&rows);
    debug_assert!(crate::exact_linalg::determinant(&basis).abs() == det);
    Ok(OrthogonalBasis::new(basis))
}
