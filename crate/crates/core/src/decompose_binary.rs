//! Product decomposition of binary codes into `{0}`, `{0,1}` and `{00,11}`
//! factors.
//!
//! `C + 2Zⁿ` is orthogonal exactly when `C` is, up to a coordinate
//! permutation, a direct product of those three codes. Each level of the
//! search tries to split off one factor and recurses on the punctured code.

use serde::Serialize;

use crate::code_lattice::LinearCode;
use crate::exact_linalg::FieldOrder;
use crate::exec::Exec;
use crate::greedy::{extend, greedy_decompose, Split};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BinaryKind {
    /// The code `{0,1}`; lattice component `Z`.
    Full1,
    /// The code `{0}`; lattice component `2Z`.
    Zero1,
    /// The code `{00,11}`; lattice component spanned by `[[1,1],[1,-1]]`.
    Rep2,
}

/// One factor of a binary product decomposition. `coords` are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinarySplit {
    pub kind: BinaryKind,
    pub coords: Vec<usize>,
}

impl BinarySplit {
    fn one(kind: BinaryKind, j: usize) -> Self {
        BinarySplit {
            kind,
            coords: vec![j],
        }
    }
}

impl Split for BinarySplit {
    fn coords_mut(&mut self) -> &mut Vec<usize> {
        &mut self.coords
    }
}

fn assert_binary(code: &LinearCode) {
    assert_eq!(
        code.q(),
        FieldOrder::Binary,
        "binary decomposition needs a code over F2"
    );
}

/// First coordinate on which every generator vanishes.
pub(crate) fn zero_column(code: &LinearCode) -> Option<usize> {
    let g = code.generator();
    (0..code.len()).find(|&j| g.iter_rows().all(|r| r[j] == 0))
}

/// Whether `C = F_q × C'` on coordinate `j`: every generator, with its
/// `j`-th entry replaced by each field element, stays in `C`.
pub(crate) fn splits_full_at(code: &LinearCode, j: usize) -> bool {
    let q = code.q().q();
    code.generator()
        .iter_rows()
        .all(|g| (0..q).all(|a| code.contains(&extend(g, &[j], &[a]))))
}

/// Detects `C ≅ {0} × C'` or `C ≅ {0,1} × C'`, zero columns first.
pub fn decompose_length1_binary(code: &LinearCode) -> Option<BinarySplit> {
    decompose_length1_binary_with(code, Exec::default())
}

pub fn decompose_length1_binary_with(code: &LinearCode, exec: Exec) -> Option<BinarySplit> {
    assert_binary(code);
    if let Some(j) = zero_column(code) {
        return Some(BinarySplit::one(BinaryKind::Zero1, j));
    }
    exec.find_first(code.len(), |j| {
        splits_full_at(code, j).then(|| BinarySplit::one(BinaryKind::Full1, j))
    })
}

fn splits_rep2_at(code: &LinearCode, j1: usize, j2: usize) -> bool {
    let g = code.generator();
    // Projection onto {j1, j2} must be exactly {00, 11}.
    if !g.iter_rows().all(|r| r[j1] == r[j2]) || !g.iter_rows().any(|r| r[j1] == 1) {
        return false;
    }
    let coords = [j1, j2];
    g.iter_rows().all(|r| {
        code.contains(&extend(r, &coords, &[0, 0])) && code.contains(&extend(r, &coords, &[1, 1]))
    })
}

/// Detects `C ≅ {00,11} × C'`, returning the lexicographically first pair.
pub fn decompose_length2_binary(code: &LinearCode) -> Option<BinarySplit> {
    decompose_length2_binary_with(code, Exec::default())
}

pub fn decompose_length2_binary_with(code: &LinearCode, exec: Exec) -> Option<BinarySplit> {
    assert_binary(code);
    let n = code.len();
    exec.find_first(n, |j1| {
        (j1 + 1..n)
            .find(|&j2| splits_rep2_at(code, j1, j2))
            .map(|j2| BinarySplit {
                kind: BinaryKind::Rep2,
                coords: vec![j1, j2],
            })
    })
}

/// Full greedy decomposition; `None` means `C + 2Zⁿ` has no orthogonal basis.
pub fn decompose_binary(code: &LinearCode) -> Option<Vec<BinarySplit>> {
    decompose_binary_with(code, Exec::default())
}

pub fn decompose_binary_with(code: &LinearCode, exec: Exec) -> Option<Vec<BinarySplit>> {
    assert_binary(code);
    greedy_decompose(code, |c| {
        decompose_length1_binary_with(c, exec).or_else(|| {
            if c.len() >= 2 {
                decompose_length2_binary_with(c, exec)
            } else {
                None
            }
        })
    })
}
