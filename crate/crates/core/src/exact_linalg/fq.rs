use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Order of the prime field a code is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub enum FieldOrder {
    Binary,
    Ternary,
}

impl FieldOrder {
    #[inline]
    pub fn q(self) -> u8 {
        match self {
            FieldOrder::Binary => 2,
            FieldOrder::Ternary => 3,
        }
    }

    pub fn from_q(q: u64) -> Result<Self> {
        match q {
            2 => Ok(FieldOrder::Binary),
            3 => Ok(FieldOrder::Ternary),
            other => Err(Error::UnsupportedFieldOrder(other)),
        }
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        (a + b) % self.q()
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        (a + self.q() - b) % self.q()
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        (a * b) % self.q()
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        (self.q() - a) % self.q()
    }

    /// Multiplicative inverse of a nonzero element. In F₂ and F₃ every
    /// nonzero element is its own inverse.
    #[inline]
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(a != 0 && a < self.q());
        a
    }
}

impl TryFrom<u64> for FieldOrder {
    type Error = Error;
    fn try_from(q: u64) -> Result<Self> {
        FieldOrder::from_q(q)
    }
}

impl From<FieldOrder> for u64 {
    fn from(q: FieldOrder) -> u64 {
        q.q() as u64
    }
}

impl fmt::Display for FieldOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q())
    }
}

/// Dense matrix over F₂ or F₃. May have zero rows (an empty generator or an
/// empty parity check).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    q: FieldOrder,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl FqMatrix {
    pub fn empty(q: FieldOrder, cols: usize) -> Self {
        FqMatrix {
            q,
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub(crate) fn from_flat(q: FieldOrder, rows: usize, cols: usize, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&x| x < q.q()));
        FqMatrix {
            q,
            rows,
            cols,
            data,
        }
    }

    /// Rows are reduced mod q on the way in. All rows must share one length.
    pub fn from_rows<R: AsRef<[u8]>>(q: FieldOrder, cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| x % q.q()));
        }
        Ok(FqMatrix {
            q,
            rows: rows.len(),
            cols,
            data,
        })
    }

    #[inline]
    pub fn q(&self) -> FieldOrder {
        self.q
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u8]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    /// Restriction of every row to `coords`, in the given order.
    pub fn select_columns(&self, coords: &[usize]) -> FqMatrix {
        let mut data = Vec::with_capacity(self.rows * coords.len());
        for r in self.iter_rows() {
            data.extend(coords.iter().map(|&j| r[j]));
        }
        FqMatrix {
            q: self.q,
            rows: self.rows,
            cols: coords.len(),
            data,
        }
    }
}

impl fmt::Display for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.iter_rows() {
            let line: Vec<String> = r.iter().map(u8::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// RREF together with the pivot column of each nonzero row.
pub(crate) fn rref_with_pivots(g: &FqMatrix) -> (FqMatrix, Vec<usize>) {
    let q = g.q;
    let cols = g.cols;
    let mut rows: Vec<Vec<u8>> = g.iter_rows().map(<[u8]>::to_vec).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = q.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = q.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = q.sub(*x, q.mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    let data = rows.into_iter().flatten().collect();
    (
        FqMatrix {
            q,
            rows: r,
            cols,
            data,
        },
        pivots,
    )
}

/// Reduced row-echelon form over F_q with zero rows dropped, and the rank.
pub fn rref_fq(g: &FqMatrix) -> (FqMatrix, usize) {
    let (r, pivots) = rref_with_pivots(g);
    (r, pivots.len())
}

/// Parity-check matrix `H` of the code spanned by the rows of `g`:
/// `c ∈ C ⇔ H·cᵀ = 0`. Has `n - k` rows.
pub fn parity_check(g: &FqMatrix) -> FqMatrix {
    let q = g.q;
    let n = g.cols;
    let (r, pivots) = rref_with_pivots(g);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut data = vec![0u8; free.len() * n];
    for (h, &f) in free.iter().enumerate() {
        let row = &mut data[h * n..(h + 1) * n];
        row[f] = 1;
        for (i, &p) in pivots.iter().enumerate() {
            row[p] = q.neg(r.get(i, f));
        }
    }
    FqMatrix {
        q,
        rows: free.len(),
        cols: n,
        data,
    }
}

/// `H·cᵀ == 0` over F_q.
pub fn in_code(h: &FqMatrix, c: &[u8]) -> bool {
    assert_eq!(h.cols, c.len(), "codeword length must match parity check");
    let q = h.q.q() as u32;
    h.iter_rows().all(|row| {
        row.iter()
            .zip(c)
            .map(|(&a, &b)| a as u32 * b as u32)
            .sum::<u32>()
            % q
            == 0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: FieldOrder = FieldOrder::Ternary;
    const B: FieldOrder = FieldOrder::Binary;

    fn m_mod3() -> FqMatrix {
        FqMatrix::from_rows(
            T,
            4,
            &[[1, 1, 1, 0], [1, 2, 0, 1], [1, 0, 2, 2], [0, 1, 2, 1]],
        )
        .unwrap()
    }

    #[test]
    fn rref_of_m_mod_3_has_rank_two() {
        let (r, rank) = rref_fq(&m_mod3());
        assert_eq!(rank, 2);
        assert_eq!(r.rows(), 2);
        // First pivot row starts with 1 and every row of M mod 3 is in the span.
        let h = parity_check(&r);
        for row in m_mod3().iter_rows() {
            assert!(in_code(&h, row));
        }
    }

    #[test]
    fn rref_identity_and_zero() {
        let i2 = FqMatrix::from_rows(B, 2, &[[1, 0], [0, 1]]).unwrap();
        assert_eq!(rref_fq(&i2), (i2.clone(), 2));
        let z = FqMatrix::from_rows(B, 3, &[[0, 0, 0]]).unwrap();
        let (r, rank) = rref_fq(&z);
        assert_eq!(rank, 0);
        assert_eq!(r.rows(), 0);
    }

    #[test]
    fn parity_of_repetition_code() {
        let g = FqMatrix::from_rows(B, 2, &[[1, 1]]).unwrap();
        let h = parity_check(&g);
        assert_eq!(h, FqMatrix::from_rows(B, 2, &[[1, 1]]).unwrap());
        assert!(in_code(&h, &[1, 1]));
        assert!(!in_code(&h, &[1, 0]));
    }

    #[test]
    fn parity_of_full_code_is_empty() {
        let g = FqMatrix::from_rows(T, 3, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let h = parity_check(&g);
        assert_eq!(h.rows(), 0);
        assert!(in_code(&h, &[2, 1, 2]));
    }

    #[test]
    fn tetracode_parity() {
        let g = FqMatrix::from_rows(T, 4, &[[1, 1, 1, 0], [1, 2, 0, 1]]).unwrap();
        let h = parity_check(&g);
        assert_eq!(h.rows(), 2);
        assert_eq!(rref_fq(&h).1, 2);
        for row in g.iter_rows() {
            assert!(in_code(&h, row));
        }
        assert!(in_code(&h, &[0, 1, 2, 1]));
        assert!(!in_code(&h, &[1, 0, 0, 0]));
    }
}
