mod common;

use common::{all_subspaces, gaussian_binomial};
use ortho_lattice::orthogonality::{brute_force_orthogonal, decide, verify_orthogonal_basis};
use ortho_lattice::{code_to_basis, FieldOrder};

fn sweep(q: FieldOrder, n: usize) -> (usize, usize) {
    let (mut total, mut orthogonal) = (0, 0);
    for (k, codes) in all_subspaces(q, n).iter().enumerate() {
        assert_eq!(
            codes.len() as u64,
            gaussian_binomial(n as u32, k as u32, q.q() as u64),
            "q={q} n={n} k={k}"
        );
        for code in codes {
            let b = code_to_basis(code).into_basis();
            let verdict = decide(&b, q).unwrap();
            let oracle = brute_force_orthogonal(&b, q).unwrap();
            assert_eq!(
                verdict.is_orthogonal(),
                oracle.is_some(),
                "q={q} code:\n{}",
                code.generator()
            );
            if let (Some(mine), Some(theirs)) = (verdict.basis(), &oracle) {
                assert!(verify_orthogonal_basis(&b, mine, q));
                assert!(verify_orthogonal_basis(&b, theirs, q));
                let mut a = mine.row_norms_sq();
                let mut c = theirs.row_norms_sq();
                a.sort();
                c.sort();
                assert_eq!(a, c, "orthogonal bases of one lattice share their norms");
                orthogonal += 1;
            }
            total += 1;
        }
    }
    (total, orthogonal)
}

#[test]
fn gaussian_binomial_values() {
    assert_eq!((0..=4).map(|k| gaussian_binomial(4, k, 2)).sum::<u64>(), 67);
    assert_eq!(
        (0..=4)
            .map(|k| gaussian_binomial(4, k, 3))
            .collect::<Vec<_>>(),
        [1, 40, 130, 40, 1]
    );
}

#[test]
fn subspaces_are_distinct() {
    for q in [FieldOrder::Binary, FieldOrder::Ternary] {
        let all: Vec<String> = all_subspaces(q, 4)
            .into_iter()
            .flatten()
            .map(|c| c.generator().to_string())
            .collect();
        let set: std::collections::HashSet<&String> = all.iter().collect();
        assert_eq!(set.len(), all.len());
    }
}

#[test]
fn binary_up_to_length_5() {
    for n in 1..=5 {
        sweep(FieldOrder::Binary, n);
    }
}

#[test]
fn ternary_up_to_length_4() {
    for n in 1..=4 {
        sweep(FieldOrder::Ternary, n);
    }
}

#[test]
fn ternary_length_5() {
    let (total, orthogonal) = sweep(FieldOrder::Ternary, 5);
    assert_eq!(total, 2664);
    assert!(orthogonal > 0);
}
