#![allow(dead_code)]

use ortho_lattice::{FieldOrder, LinearCode};

/// `[n choose k]_q`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// Every `k`-dimensional subspace of `F_qⁿ`, once each, as its RREF generator.
pub fn subspaces_of_dim(q: FieldOrder, n: usize, k: usize) -> Vec<LinearCode> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    pivot_sets(n, k, 0, &mut pivots, &mut |p| {
        // Free positions: (row i, col j) with j > p[i] and j not a pivot.
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                ((p[i] + 1)..n)
                    .filter(|j| !p.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        let qq = q.q();
        let mut vals = vec![0u8; free.len()];
        loop {
            let mut rows = vec![vec![0u8; n]; k];
            for (i, &c) in p.iter().enumerate() {
                rows[i][c] = 1;
            }
            for (&(i, j), &v) in free.iter().zip(&vals) {
                rows[i][j] = v;
            }
            out.push(LinearCode::from_rows(q, n, &rows).unwrap());
            // Odometer over the free entries.
            let mut pos = 0;
            while pos < vals.len() {
                vals[pos] += 1;
                if vals[pos] < qq {
                    break;
                }
                vals[pos] = 0;
                pos += 1;
            }
            if pos == vals.len() {
                break;
            }
        }
    });
    out
}

fn pivot_sets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for c in start..n {
        cur.push(c);
        pivot_sets(n, k, c + 1, cur, f);
        cur.pop();
    }
}

/// All subspaces of `F_qⁿ`, grouped by dimension.
pub fn all_subspaces(q: FieldOrder, n: usize) -> Vec<Vec<LinearCode>> {
    (0..=n).map(|k| subspaces_of_dim(q, n, k)).collect()
}
