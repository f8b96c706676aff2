//! Seeded test-instance generator.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code_lattice::{code_to_basis, LinearCode};
use crate::decompose_ternary::{block_to_matrix, tm_candidates};
use crate::error::{Error, Result};
use crate::exact_linalg::{rref_fq, FieldOrder, FqMatrix, IntMatrix};
use crate::orthogonality::{assemble_basis, component, Component, ComponentKind, Decomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceSpec {
    /// A scrambled basis of a random orthogonal Construction-A lattice.
    Orthogonal,
    /// The HNF basis of `C + qZⁿ` for a random code of dimension `k`.
    RandomCode(usize),
}

/// Left-multiplies by `3n` random elementary matrices `I + c·E_ij` with
/// `c ∈ {±1, ±2}`.
pub fn scramble<R: Rng>(b: &mut IntMatrix, rng: &mut R) {
    let n = b.rows();
    if n < 2 {
        return;
    }
    for _ in 0..3 * n {
        let dst = rng.random_range(0..n);
        let mut src = rng.random_range(0..n - 1);
        if src >= dst {
            src += 1;
        }
        let c = [-2i64, -1, 1, 2][rng.random_range(0..4)];
        b.add_row_multiple(dst, src, &BigInt::from(c));
    }
}

/// A random product decomposition of `n` coordinates: component kinds are
/// drawn uniformly among those that still fit, `Tetra4` blocks uniformly
/// from the catalog, and coordinates are assigned through a random
/// permutation.
pub fn random_decomposition<R: Rng>(q: FieldOrder, n: usize, rng: &mut R) -> Decomposition {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut components: Vec<Component> = Vec::new();
    let mut next = 0;
    while next < n {
        let left = n - next;
        let mut kinds = vec![ComponentKind::Z, ComponentKind::QZ];
        match q {
            FieldOrder::Binary if left >= 2 => kinds.push(ComponentKind::Rep2),
            FieldOrder::Ternary if left >= 4 => kinds.push(ComponentKind::Tetra4),
            _ => {}
        }
        let kind = kinds[rng.random_range(0..kinds.len())];
        let c = match kind {
            ComponentKind::Tetra4 => {
                let entries = tm_candidates().entries();
                let e = &entries[rng.random_range(0..entries.len())];
                Component {
                    kind,
                    coords: perm[next..next + 4].to_vec(),
                    block: block_to_matrix(&e.matrix),
                }
            }
            ComponentKind::Rep2 => component(kind, perm[next..next + 2].to_vec(), q),
            _ => component(kind, vec![perm[next]], q),
        };
        next += c.coords.len();
        components.push(c);
    }
    Decomposition { q, n, components }
}

/// Deterministic instance for a given `(q, n, seed, spec)`.
pub fn gen_instance(q: FieldOrder, n: usize, seed: u64, spec: InstanceSpec) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::BadDimension("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match spec {
        InstanceSpec::Orthogonal => {
            let d = random_decomposition(q, n, &mut rng);
            let mut b = assemble_basis(&d).basis().clone();
            scramble(&mut b, &mut rng);
            Ok(b)
        }
        InstanceSpec::RandomCode(k) => {
            if k > n {
                return Err(Error::BadDimension(format!(
                    "code dimension {k} exceeds length {n}"
                )));
            }
            let g = loop {
                let rows: Vec<Vec<u8>> = (0..k)
                    .map(|_| (0..n).map(|_| rng.random_range(0..q.q())).collect())
                    .collect();
                let g = FqMatrix::from_rows(q, n, &rows)?;
                if rref_fq(&g).1 == k {
                    break g;
                }
            };
            Ok(code_to_basis(&LinearCode::new(&g)?).into_basis())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthogonality::decide;

    #[test]
    fn deterministic_for_fixed_seed() {
        for spec in [InstanceSpec::Orthogonal, InstanceSpec::RandomCode(3)] {
            let a = gen_instance(FieldOrder::Ternary, 8, 42, spec).unwrap();
            let b = gen_instance(FieldOrder::Ternary, 8, 42, spec).unwrap();
            assert_eq!(a, b);
        }
        assert_ne!(
            gen_instance(FieldOrder::Binary, 8, 1, InstanceSpec::Orthogonal).unwrap(),
            gen_instance(FieldOrder::Binary, 8, 2, InstanceSpec::Orthogonal).unwrap()
        );
    }

    #[test]
    fn orthogonal_instances_decide_orthogonal() {
        let b = gen_instance(FieldOrder::Binary, 4, 1, InstanceSpec::Orthogonal).unwrap();
        assert!(decide(&b, FieldOrder::Binary).unwrap().is_orthogonal());
        let b = gen_instance(FieldOrder::Ternary, 8, 7, InstanceSpec::Orthogonal).unwrap();
        assert!(decide(&b, FieldOrder::Ternary).unwrap().is_orthogonal());
    }

    #[test]
    fn scrambling_is_unimodular() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut u = IntMatrix::identity(6);
        scramble(&mut u, &mut rng);
        assert!(u.is_unimodular());
        assert_ne!(u, IntMatrix::identity(6));
    }

    #[test]
    fn bad_dimensions() {
        assert!(gen_instance(FieldOrder::Binary, 0, 1, InstanceSpec::Orthogonal).is_err());
        assert!(gen_instance(FieldOrder::Binary, 3, 1, InstanceSpec::RandomCode(4)).is_err());
    }
}
