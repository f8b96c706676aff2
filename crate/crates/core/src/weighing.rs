//! Weighing matrices `W(n, k)`: `n×n` over `{0, ±1}` with `k` nonzeros in
//! every row and column and `W·Wᵀ = k·Iₙ`.
//!
//! Weight 2 is always a signed, permuted direct sum of `[[1,1],[1,-1]]` and
//! weight 3 of `M`; this module builds those canonical forms, tests
//! equivalence under row/column permutations and negations, and enumerates
//! tiny cases exhaustively so both facts can be checked directly.

use num_traits::{One, ToPrimitive, Zero};

use crate::decompose_ternary::M;
use crate::error::{Error, Result};
use crate::exact_linalg::IntMatrix;

pub const EQUIVALENCE_LIMIT: usize = 8;
pub const ENUMERATION_LIMIT: usize = 4;

pub const HADAMARD2: [[i8; 2]; 2] = [[1, 1], [1, -1]];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeighingMatrix {
    k: usize,
    rows: Vec<Vec<i8>>,
}

impl WeighingMatrix {
    pub fn new(w: &IntMatrix, k: usize) -> Option<Self> {
        if !is_weighing(w, k) {
            return None;
        }
        let rows = (0..w.rows())
            .map(|i| {
                w.row(i)
                    .iter()
                    .map(|x| x.to_i8().expect("entry in {-1,0,1}"))
                    .collect()
            })
            .collect();
        Some(WeighingMatrix { k, rows })
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn weight(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect();
        IntMatrix::from_i64(&rows)
    }
}

pub fn is_weighing(w: &IntMatrix, k: usize) -> bool {
    if !w.is_square() {
        return false;
    }
    let n = w.rows();
    let unit = |x: &num_bigint::BigInt| x.is_zero() || x.is_one() || (-x).is_one();
    if !(0..n).all(|i| w.row(i).iter().all(unit)) {
        return false;
    }
    let row_ok = (0..n).all(|i| w.row(i).iter().filter(|x| !x.is_zero()).count() == k);
    let col_ok = (0..n).all(|j| (0..n).filter(|&i| !w.get(i, j).is_zero()).count() == k);
    row_ok && col_ok && w.gram() == IntMatrix::scalar(n, k as i64)
}

/// Block-diagonal sum of `[[1,1],[1,-1]]` (k = 2) or `M` (k = 3).
pub fn standard_weighing(n: usize, k: usize) -> Result<WeighingMatrix> {
    let block: Vec<Vec<i8>> = match k {
        2 => HADAMARD2.iter().map(|r| r.to_vec()).collect(),
        3 => M.iter().map(|r| r.to_vec()).collect(),
        _ => {
            return Err(Error::BadDimension(format!(
                "no canonical weighing matrix of weight {k}"
            )))
        }
    };
    let b = block.len();
    if n == 0 || !n.is_multiple_of(b) {
        return Err(Error::BadDimension(format!(
            "weight-{k} weighing matrices need order divisible by {b}, got {n}"
        )));
    }
    let mut rows = vec![vec![0i8; n]; n];
    for blk in 0..n / b {
        for i in 0..b {
            for j in 0..b {
                rows[blk * b + i][blk * b + j] = block[i][j];
            }
        }
    }
    Ok(WeighingMatrix { k, rows })
}

/// Rows negated so the first nonzero is positive, then sorted.
fn canonical_rows(rows: &[Vec<i8>]) -> Vec<Vec<i8>> {
    let mut out: Vec<Vec<i8>> = rows
        .iter()
        .map(|r| match r.iter().find(|&&x| x != 0) {
            Some(&s) if s < 0 => r.iter().map(|&x| -x).collect(),
            _ => r.clone(),
        })
        .collect();
    out.sort();
    out
}

struct EquivSearch<'a> {
    source: &'a [Vec<i8>],
    target_prefixes: Vec<Vec<Vec<i8>>>,
    source_col_weight: Vec<usize>,
    target_col_weight: Vec<usize>,
    chosen: Vec<(usize, i8)>,
    used: Vec<bool>,
}

impl EquivSearch<'_> {
    /// Row prefixes of the transformed source, canonicalised up to row sign.
    fn source_prefixes(&self) -> Vec<Vec<i8>> {
        let rows: Vec<Vec<i8>> = self
            .source
            .iter()
            .map(|r| self.chosen.iter().map(|&(c, s)| s * r[c]).collect())
            .collect();
        canonical_rows(&rows)
    }

    fn search(&mut self) -> bool {
        let depth = self.chosen.len();
        if depth > 0 && self.source_prefixes() != self.target_prefixes[depth - 1] {
            return false;
        }
        let n = self.source.len();
        if depth == n {
            return true;
        }
        for c in 0..n {
            if self.used[c] || self.source_col_weight[c] != self.target_col_weight[depth] {
                continue;
            }
            self.used[c] = true;
            for s in [1i8, -1] {
                self.chosen.push((c, s));
                if self.search() {
                    return true;
                }
                self.chosen.pop();
            }
            self.used[c] = false;
        }
        false
    }
}

/// Whether `w2` is obtained from `w1` by permuting and negating rows and
/// columns. Backtracks over column assignments, pruning whenever the
/// row-sign-normalised prefix multisets diverge.
pub fn weighing_equivalent(w1: &WeighingMatrix, w2: &WeighingMatrix) -> Result<bool> {
    let n = w1.order();
    if n > EQUIVALENCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: EQUIVALENCE_LIMIT,
        });
    }
    if w2.order() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: w2.order(),
        });
    }
    if w1.k != w2.k {
        return Ok(false);
    }
    let col_weight = |rows: &[Vec<i8>]| -> Vec<usize> {
        (0..n)
            .map(|j| rows.iter().filter(|r| r[j] != 0).count())
            .collect()
    };
    let target_prefixes = (1..=n)
        .map(|m| {
            let pre: Vec<Vec<i8>> = w2.rows.iter().map(|r| r[..m].to_vec()).collect();
            canonical_rows(&pre)
        })
        .collect();
    let mut search = EquivSearch {
        source: &w1.rows,
        target_prefixes,
        source_col_weight: col_weight(&w1.rows),
        target_col_weight: col_weight(&w2.rows),
        chosen: Vec::with_capacity(n),
        used: vec![false; n],
    };
    Ok(search.search())
}

/// Every weighing matrix of order `n ≤ 4` and weight `k` whose rows have a
/// positive first nonzero entry, listed once per row set (rows in
/// increasing candidate order).
pub fn enumerate_weighing(n: usize, k: usize) -> Result<Vec<WeighingMatrix>> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    if n == 0 {
        return Err(Error::BadDimension("order must be at least 1".into()));
    }
    let candidates: Vec<Vec<i8>> = all_sign_vectors(n)
        .into_iter()
        .filter(|v| v.iter().filter(|&&x| x != 0).count() == k)
        .filter(|v| v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
        .collect();

    fn extend(
        candidates: &[Vec<i8>],
        start: usize,
        n: usize,
        k: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<WeighingMatrix>,
    ) {
        if chosen.len() == n {
            let rows: Vec<Vec<i8>> = chosen.iter().map(|&i| candidates[i].clone()).collect();
            if (0..n).all(|j| rows.iter().filter(|r| r[j] != 0).count() == k) {
                out.push(WeighingMatrix { k, rows });
            }
            return;
        }
        for i in start..candidates.len() {
            let v = &candidates[i];
            let orthogonal = chosen.iter().all(|&c| {
                candidates[c]
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| (a * b) as i32)
                    .sum::<i32>()
                    == 0
            });
            if orthogonal {
                chosen.push(i);
                extend(candidates, i + 1, n, k, chosen, out);
                chosen.pop();
            }
        }
    }

    let mut out = Vec::new();
    extend(&candidates, 0, n, k, &mut Vec::with_capacity(n), &mut out);
    Ok(out)
}

fn all_sign_vectors(n: usize) -> Vec<Vec<i8>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                [-1i8, 0, 1].map(|x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m() -> WeighingMatrix {
        standard_weighing(4, 3).unwrap()
    }

    #[test]
    fn predicate_examples() {
        assert!(is_weighing(&IntMatrix::from_i64(&[[1, 1], [1, -1]]), 2));
        assert!(is_weighing(&m().to_matrix(), 3));
        assert!(!is_weighing(&IntMatrix::identity(2), 2));
        assert!(!is_weighing(&IntMatrix::from_i64(&[[1, 1], [1, 1]]), 2));
        assert!(!is_weighing(&IntMatrix::from_i64(&[[2, 0], [0, 2]]), 1));
    }

    #[test]
    fn standard_examples() {
        assert_eq!(
            standard_weighing(2, 2).unwrap().to_matrix(),
            IntMatrix::from_i64(&[[1, 1], [1, -1]])
        );
        assert_eq!(
            standard_weighing(4, 3).unwrap().to_matrix(),
            IntMatrix::from_i64(&[[1, 1, 1, 0], [1, -1, 0, 1], [1, 0, -1, -1], [0, 1, -1, 1]])
        );
        assert!(matches!(
            standard_weighing(3, 2),
            Err(Error::BadDimension(_))
        ));
        assert!(matches!(
            standard_weighing(6, 3),
            Err(Error::BadDimension(_))
        ));
        assert!(matches!(
            standard_weighing(4, 4),
            Err(Error::BadDimension(_))
        ));
    }

    #[test]
    fn standard_matrices_are_weighing() {
        for n in (2..=12).step_by(2) {
            assert!(is_weighing(
                &standard_weighing(n, 2).unwrap().to_matrix(),
                2
            ));
        }
        for n in (4..=12).step_by(4) {
            assert!(is_weighing(
                &standard_weighing(n, 3).unwrap().to_matrix(),
                3
            ));
        }
    }

    #[test]
    fn equivalence_examples() {
        let mut negated = m().to_matrix();
        for i in 0..4 {
            for j in [0, 2] {
                let v = -negated.get(i, j).clone();
                negated.set(i, j, v);
            }
        }
        let negated = WeighingMatrix::new(&negated, 3).unwrap();
        assert!(weighing_equivalent(&m(), &negated).unwrap());
        assert!(!weighing_equivalent(&standard_weighing(4, 2).unwrap(), &m()).unwrap());
        let big = standard_weighing(12, 3).unwrap();
        assert!(matches!(
            weighing_equivalent(&big, &big),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn inequivalent_same_weight() {
        // Weight 2, order 4: block sum vs. a matrix with the blocks interleaved
        // is equivalent; a non-weighing pattern is rejected at construction.
        let interleaved =
            IntMatrix::from_i64(&[[1, 0, 1, 0], [0, 1, 0, 1], [1, 0, -1, 0], [0, 1, 0, -1]]);
        let w = WeighingMatrix::new(&interleaved, 2).unwrap();
        assert!(weighing_equivalent(&standard_weighing(4, 2).unwrap(), &w).unwrap());
    }

    #[test]
    fn enumeration_examples() {
        let w22 = enumerate_weighing(2, 2).unwrap();
        assert_eq!(w22.len(), 1);
        assert_eq!(w22[0].to_matrix(), IntMatrix::from_i64(&[[1, -1], [1, 1]]));
        assert!(enumerate_weighing(3, 3).unwrap().is_empty());
        let w43 = enumerate_weighing(4, 3).unwrap();
        assert!(!w43.is_empty());
        for w in &w43 {
            assert!(is_weighing(&w.to_matrix(), 3));
            assert!(weighing_equivalent(w, &m()).unwrap());
        }
        assert!(matches!(
            enumerate_weighing(5, 2),
            Err(Error::TooLarge { .. })
        ));
    }
}
