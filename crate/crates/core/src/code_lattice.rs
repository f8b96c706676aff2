//! Construction-A plumbing: moving between linear codes over F_q and the
//! lattices `C + qZⁿ` they define.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{
    hnf, hnf_with_modulus, in_code, parity_check, rref_fq, FieldOrder, FqMatrix, IntMatrix,
    LatticeCoordinates,
};

/// A linear code over F₂ or F₃, stored with its generator in RREF so that two
/// codes are equal exactly when their generators are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearCode {
    generator: FqMatrix,
    parity: FqMatrix,
}

impl LinearCode {
    /// Code spanned by the rows of `g` (which need not be independent).
    pub fn new(g: &FqMatrix) -> Result<Self> {
        if g.cols() == 0 {
            return Err(Error::BadDimension("code length must be at least 1".into()));
        }
        let (generator, _) = rref_fq(g);
        let parity = parity_check(&generator);
        Ok(LinearCode { generator, parity })
    }

    pub fn from_rows<R: AsRef<[u8]>>(q: FieldOrder, n: usize, rows: &[R]) -> Result<Self> {
        Self::new(&FqMatrix::from_rows(q, n, rows)?)
    }

    /// The code `{0}ⁿ`.
    pub fn zero(q: FieldOrder, n: usize) -> Result<Self> {
        Self::new(&FqMatrix::empty(q, n))
    }

    /// The code `F_qⁿ`.
    pub fn full(q: FieldOrder, n: usize) -> Result<Self> {
        let rows: Vec<Vec<u8>> = (0..n)
            .map(|i| (0..n).map(|j| u8::from(i == j)).collect())
            .collect();
        Self::from_rows(q, n, &rows)
    }

    #[inline]
    pub fn q(&self) -> FieldOrder {
        self.generator.q()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.generator.cols()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Dimension `k` of the code.
    #[inline]
    pub fn dim(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &FqMatrix {
        &self.generator
    }

    pub fn parity(&self) -> &FqMatrix {
        &self.parity
    }

    pub fn contains(&self, c: &[u8]) -> bool {
        in_code(&self.parity, c)
    }

    /// Applies a coordinate permutation: coordinate `j` of the result is
    /// coordinate `perm[j]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> LinearCode {
        LinearCode::new(&self.generator.select_columns(perm)).expect("nonempty permutation")
    }

    /// Every codeword, in lexicographic order of the generator coefficients.
    /// Only sensible for tiny codes.
    pub fn codewords(&self) -> Vec<Vec<u8>> {
        let q = self.q();
        let n = self.len();
        let k = self.dim();
        let mut out = Vec::with_capacity((q.q() as usize).pow(k as u32));
        let mut coeffs = vec![0u8; k];
        loop {
            let mut word = vec![0u8; n];
            for (c, row) in coeffs.iter().zip(self.generator.iter_rows()) {
                for (w, &g) in word.iter_mut().zip(row) {
                    *w = q.add(*w, q.mul(*c, g));
                }
            }
            out.push(word);
            // Odometer increment.
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                coeffs[i] += 1;
                if coeffs[i] < q.q() {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }
}

/// A full-rank integral basis of a lattice containing `qZⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    q: FieldOrder,
    basis: IntMatrix,
}

impl LatticeBasis {
    #[inline]
    pub fn q(&self) -> FieldOrder {
        self.q
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn into_basis(self) -> IntMatrix {
        self.basis
    }
}

fn embed(g: &FqMatrix) -> Vec<Vec<BigInt>> {
    g.iter_rows()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// HNF basis of `C + qZⁿ`.
pub fn code_to_basis(code: &LinearCode) -> LatticeBasis {
    let q = code.q();
    let n = code.len();
    let mut rows = embed(code.generator());
    rows.extend(IntMatrix::scalar(n, q.q() as i64).row_vecs());
    let stacked = IntMatrix::try_from_rows(rows).expect("stacked generator is nonempty");
    // q·Zⁿ is part of the generating set, so the HNF can be taken mod q.
    let basis = hnf_with_modulus(&stacked, &BigInt::from(q.q()));
    LatticeBasis { q, basis }
}

/// The code `L mod q` of a Construction-A lattice.
pub fn basis_to_code(b: &LatticeBasis) -> LinearCode {
    LinearCode::new(&b.basis.mod_q(b.q)).expect("basis has at least one column")
}

/// Checks that `b` is a nonsingular basis of a lattice containing `qZⁿ`.
///
/// Together with `L ⊆ Zⁿ` this forces `L = (L mod q) + qZⁿ`.
pub fn validate(b: &IntMatrix, q: FieldOrder) -> Result<LatticeBasis> {
    if !b.is_square() {
        return Err(Error::DimensionMismatch {
            expected: b.cols(),
            got: b.rows(),
        });
    }
    let coords = LatticeCoordinates::new(b)?;
    let n = b.rows();
    for j in 0..n {
        let mut qe = vec![BigInt::zero(); n];
        qe[j] = BigInt::from(q.q());
        if !coords.contains(&qe) {
            return Err(Error::NotConstructionA {
                q: q.q(),
                coord: j + 1,
            });
        }
    }
    Ok(LatticeBasis {
        q,
        basis: b.clone(),
    })
}

/// Whether two square nonsingular bases generate the same lattice.
pub fn same_lattice(b1: &IntMatrix, b2: &IntMatrix) -> Result<bool> {
    for b in [b1, b2] {
        if !b.is_square() {
            return Err(Error::DimensionMismatch {
                expected: b.cols(),
                got: b.rows(),
            });
        }
    }
    if b1.cols() != b2.cols() {
        return Err(Error::DimensionMismatch {
            expected: b1.cols(),
            got: b2.cols(),
        });
    }
    let h1 = hnf(b1).map_err(|_| Error::SingularBasis)?;
    let h2 = hnf(b2).map_err(|_| Error::SingularBasis)?;
    Ok(h1 == h2)
}

/// Projection of `code` onto `coords` (0-based, in the given order).
pub fn project_code(code: &LinearCode, coords: &[usize]) -> Result<LinearCode> {
    if coords.is_empty() {
        return Err(Error::BadDimension(
            "projection onto an empty coordinate set".into(),
        ));
    }
    if let Some(&bad) = coords.iter().find(|&&j| j >= code.len()) {
        return Err(Error::BadIndex {
            index: bad,
            len: code.len(),
        });
    }
    if coords.iter().collect::<BTreeSet<_>>().len() != coords.len() {
        return Err(Error::BadDimension(
            "projection coordinates must be distinct".into(),
        ));
    }
    LinearCode::new(&code.generator().select_columns(coords))
}

/// `|det|` of a basis, as required by the index identity `|det| = q^(n-k)`.
pub(crate) fn abs_det(b: &IntMatrix) -> BigInt {
    crate::exact_linalg::determinant(b).abs()
}
