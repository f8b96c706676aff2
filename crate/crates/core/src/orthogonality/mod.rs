//! Orthogonality decision for Construction-A lattices over F₂ and F₃.
//!
//! [`decide`] reduces the basis to its code, decomposes the code into
//! product factors, rebuilds an orthogonal basis from the factors and checks
//! it against the input before reporting. The brute-force searches in
//! [`oracle`] and the exhaustive CVP in [`cvp`] exist to cross-check it.

pub mod cvp;
pub mod generate;
pub mod oracle;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::code_lattice::{basis_to_code, same_lattice, validate, LinearCode};
use crate::decompose_binary::{decompose_binary_with, BinaryKind};
use crate::decompose_ternary::{block_to_matrix, decompose_ternary_with, TernaryKind};
use crate::error::{Error, Result};
use crate::exact_linalg::{norm_sq, FieldOrder, IntMatrix};
use crate::exec::Exec;

pub use cvp::{cvp_exhaustive, cvp_round, CVP_EXHAUSTIVE_LIMIT};
pub use generate::{gen_instance, InstanceSpec};
pub use oracle::{brute_force_orthogonal, ORACLE_LIMIT};

/// Lattice shape of one product factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ComponentKind {
    /// `Z` on one coordinate.
    Z,
    /// `qZ` on one coordinate.
    QZ,
    /// `[[1,1],[1,-1]]` on two coordinates (q = 2 only).
    Rep2,
    /// A signed column permutation of `M` on four coordinates (q = 3 only).
    Tetra4,
}

impl ComponentKind {
    pub fn label(self, q: FieldOrder) -> String {
        match self {
            ComponentKind::Z => "Z".into(),
            ComponentKind::QZ => format!("{}Z", q.q()),
            ComponentKind::Rep2 => "Rep2".into(),
            ComponentKind::Tetra4 => "Tetra4".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    /// 0-based coordinates; column `i` of `block` lives on `coords[i]`.
    pub coords: Vec<usize>,
    pub block: IntMatrix,
}

/// Product decomposition of a Construction-A lattice, components in the
/// order they were discovered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub q: FieldOrder,
    pub n: usize,
    pub components: Vec<Component>,
}

impl Decomposition {
    /// Components sorted by coordinate set, for order-insensitive comparison.
    pub fn canonical(&self) -> Vec<Component> {
        let mut c = self.components.clone();
        c.sort_by(|a, b| a.coords.iter().min().cmp(&b.coords.iter().min()));
        c
    }

    /// Checks that the coordinate sets partition `0..n` and that every block
    /// has a diagonal Gram matrix with entries in `{1, q, q²}`.
    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.n];
        for c in &self.components {
            for &j in &c.coords {
                if j >= self.n || std::mem::replace(&mut seen[j], true) {
                    return false;
                }
            }
            if c.block.rows() != c.coords.len() || c.block.cols() != c.coords.len() {
                return false;
            }
            let g = c.block.gram();
            let q = self.q.q() as i64;
            let allowed = [1, q, q * q].map(BigInt::from);
            if !g.is_diagonal() || !(0..g.rows()).all(|i| allowed.contains(g.get(i, i))) {
                return false;
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// A basis with pairwise-orthogonal rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalBasis {
    basis: IntMatrix,
}

impl OrthogonalBasis {
    /// Wraps `basis` if its Gram matrix is diagonal with positive diagonal.
    pub fn new(basis: IntMatrix) -> Option<Self> {
        let g = basis.gram();
        let ok = basis.is_square()
            && g.is_diagonal()
            && (0..g.rows()).all(|i| g.get(i, i).is_positive());
        ok.then_some(OrthogonalBasis { basis })
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn row_norms_sq(&self) -> Vec<BigInt> {
        (0..self.dim())
            .map(|i| norm_sq(self.basis.row(i)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Orthogonal {
        basis: OrthogonalBasis,
        decomposition: Decomposition,
    },
    NotOrthogonal,
}

impl Verdict {
    pub fn is_orthogonal(&self) -> bool {
        matches!(self, Verdict::Orthogonal { .. })
    }

    pub fn basis(&self) -> Option<&OrthogonalBasis> {
        match self {
            Verdict::Orthogonal { basis, .. } => Some(basis),
            Verdict::NotOrthogonal => None,
        }
    }

    pub fn decomposition(&self) -> Option<&Decomposition> {
        match self {
            Verdict::Orthogonal { decomposition, .. } => Some(decomposition),
            Verdict::NotOrthogonal => None,
        }
    }
}

pub(crate) fn component(kind: ComponentKind, coords: Vec<usize>, q: FieldOrder) -> Component {
    let block = match kind {
        ComponentKind::Z => IntMatrix::identity(1),
        ComponentKind::QZ => IntMatrix::scalar(1, q.q() as i64),
        ComponentKind::Rep2 => IntMatrix::from_i64(&[[1, 1], [1, -1]]),
        ComponentKind::Tetra4 => unreachable!("Tetra4 blocks carry their own matrix"),
    };
    Component {
        kind,
        coords,
        block,
    }
}

/// Product decomposition of `C + qZⁿ`, or `None` when it has no orthogonal
/// basis.
pub fn decompose_code(code: &LinearCode, exec: Exec) -> Option<Decomposition> {
    let q = code.q();
    let components = match q {
        FieldOrder::Binary => decompose_binary_with(code, exec)?
            .into_iter()
            .map(|s| {
                let kind = match s.kind {
                    BinaryKind::Full1 => ComponentKind::Z,
                    BinaryKind::Zero1 => ComponentKind::QZ,
                    BinaryKind::Rep2 => ComponentKind::Rep2,
                };
                component(kind, s.coords, q)
            })
            .collect(),
        FieldOrder::Ternary => decompose_ternary_with(code, exec)?
            .into_iter()
            .map(|s| match s.kind {
                TernaryKind::Full1 => component(ComponentKind::Z, s.coords, q),
                TernaryKind::Zero1 => component(ComponentKind::QZ, s.coords, q),
                TernaryKind::Tetra4 => Component {
                    kind: ComponentKind::Tetra4,
                    coords: s.coords,
                    block: block_to_matrix(&s.tm.expect("Tetra4 split carries its block")),
                },
            })
            .collect(),
    };
    Some(Decomposition {
        q,
        n: code.len(),
        components,
    })
}

/// Scatters each component's block rows into its coordinates.
pub fn assemble_basis(d: &Decomposition) -> OrthogonalBasis {
    let mut b = IntMatrix::zeros(d.n, d.n);
    let mut row = 0;
    for c in &d.components {
        for i in 0..c.block.rows() {
            for (k, &j) in c.coords.iter().enumerate() {
                b.set(row, j, c.block.get(i, k).clone());
            }
            row += 1;
        }
    }
    assert_eq!(row, d.n, "components must cover every coordinate");
    OrthogonalBasis::new(b).expect("blocks on disjoint coordinates are orthogonal")
}

/// Per-row divisibility shape of an orthogonal basis of `L ⊇ qZⁿ`:
/// `q·|b_j| ∈ {0, ‖b‖², q·‖b‖²}` for every entry.
pub fn row_shape_holds(orth: &OrthogonalBasis, q: FieldOrder) -> bool {
    let q = BigInt::from(q.q());
    (0..orth.dim()).all(|i| {
        let row = orth.basis().row(i);
        let nsq = norm_sq(row);
        let allowed = [BigInt::zero(), nsq.clone(), &q * &nsq];
        row.iter().all(|x| allowed.contains(&(&q * x.abs())))
    })
}

/// Checks a claimed orthogonal basis against the input basis: diagonal Gram,
/// equal HNF, and the per-row shape.
pub fn verify_orthogonal_basis(b_in: &IntMatrix, orth: &OrthogonalBasis, q: FieldOrder) -> bool {
    if b_in.rows() != orth.dim() || b_in.cols() != orth.basis().cols() {
        return false;
    }
    let gram = orth.basis().gram();
    let diagonal_ok = gram.is_diagonal() && (0..gram.rows()).all(|i| gram.get(i, i).is_positive());
    diagonal_ok && same_lattice(b_in, orth.basis()).unwrap_or(false) && row_shape_holds(orth, q)
}

/// Decides whether the lattice spanned by `b` has an orthogonal basis.
pub fn decide(b: &IntMatrix, q: FieldOrder) -> Result<Verdict> {
    decide_with(b, q, Exec::default())
}

pub fn decide_with(b: &IntMatrix, q: FieldOrder, exec: Exec) -> Result<Verdict> {
    let lattice = validate(b, q)?;
    let code = basis_to_code(&lattice);
    let Some(decomposition) = decompose_code(&code, exec) else {
        return Ok(Verdict::NotOrthogonal);
    };
    if !decomposition.is_valid() {
        return Err(Error::InternalVerificationFailure(
            "malformed decomposition".into(),
        ));
    }
    let basis = assemble_basis(&decomposition);
    if !verify_orthogonal_basis(b, &basis, q) {
        return Err(Error::InternalVerificationFailure(
            "assembled basis does not generate the input lattice".into(),
        ));
    }
    Ok(Verdict::Orthogonal {
        basis,
        decomposition,
    })
}

/// Decides many independent instances; results are in input order.
pub fn decide_batch(bases: &[IntMatrix], q: FieldOrder, exec: Exec) -> Vec<Result<Verdict>> {
    // Parallelism goes across instances, so each decision runs sequentially.
    exec.map(bases, |b| decide_with(b, q, Exec::Sequential))
}
