//! Product decomposition of ternary codes into `{0}`, `{0,1,2}` and the
//! length-4 codes generated by column-signed, column-permuted copies of
//!
//! ```text
//! M = [ 1  1  1  0 ]
//!     [ 1 -1  0  1 ]
//!     [ 1  0 -1 -1 ]
//!     [ 0  1 -1  1 ]
//! ```
//!
//! reduced mod 3. `M·Mᵀ = 3·I₄`, so each such block spans a 4-dimensional
//! component of `C + 3Zⁿ`.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::code_lattice::LinearCode;
use crate::decompose_binary::{splits_full_at, zero_column};
use crate::exact_linalg::{FieldOrder, IntMatrix};
use crate::exec::Exec;
use crate::greedy::{extend, greedy_decompose, Split};

/// A 4×4 block with entries in `{0, ±1}`.
pub type Block4 = [[i8; 4]; 4];

pub const M: Block4 = [[1, 1, 1, 0], [1, -1, 0, 1], [1, 0, -1, -1], [0, 1, -1, 1]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TernaryKind {
    /// The code `{0,1,2}`; lattice component `Z`.
    Full1,
    /// The code `{0}`; lattice component `3Z`.
    Zero1,
    /// A length-4 code from the catalog; lattice component spanned by `tm`.
    Tetra4,
}

/// One factor of a ternary product decomposition. `coords` are 0-based and,
/// for `Tetra4`, column `i` of `tm` sits on `coords[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernarySplit {
    pub kind: TernaryKind,
    pub coords: Vec<usize>,
    pub tm: Option<Block4>,
}

impl Split for TernarySplit {
    fn coords_mut(&mut self) -> &mut Vec<usize> {
        &mut self.coords
    }
}

pub fn block_to_matrix(b: &Block4) -> IntMatrix {
    IntMatrix::from_i64(&b.map(|r| r.map(i64::from)))
}

/// Index of a vector of F₃⁴ in `0..81`, first coordinate most significant.
#[inline]
fn word_index(w: [u8; 4]) -> u8 {
    w[0] * 27 + w[1] * 9 + w[2] * 3 + w[3]
}

fn index_word(i: u8) -> [u8; 4] {
    [i / 27, (i / 9) % 3, (i / 3) % 3, i % 3]
}

struct F3Tables {
    add: [[u8; 81]; 81],
    neg: [u8; 81],
}

fn tables() -> &'static F3Tables {
    static TABLES: OnceLock<F3Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut add = [[0u8; 81]; 81];
        let mut neg = [0u8; 81];
        for a in 0..81u8 {
            let wa = index_word(a);
            neg[a as usize] = word_index(wa.map(|x| (3 - x) % 3));
            for b in 0..81u8 {
                let wb = index_word(b);
                let s = [0, 1, 2, 3].map(|i| (wa[i] + wb[i]) % 3);
                add[a as usize][b as usize] = word_index(s);
            }
        }
        F3Tables { add, neg }
    })
}

/// Span of a set of F₃⁴ vectors as a bitmask over `0..81`, or `None` once it
/// exceeds 9 elements (dimension > 2).
fn span_mask(vectors: impl IntoIterator<Item = u8>) -> Option<u128> {
    let t = tables();
    let mut elems = [0u8; 9];
    let mut len = 1;
    let mut mask: u128 = 1;
    for v in vectors {
        if mask >> v & 1 == 1 {
            continue;
        }
        if len * 3 > 9 {
            return None;
        }
        let nv = t.neg[v as usize];
        for i in 0..len {
            let e = elems[i] as usize;
            elems[len + 2 * i] = t.add[e][v as usize];
            elems[len + 2 * i + 1] = t.add[e][nv as usize];
        }
        for &w in &elems[len..len * 3] {
            mask |= 1u128 << w;
        }
        len *= 3;
    }
    Some(mask)
}

/// One candidate block and the code its rows generate mod 3.
#[derive(Clone, Debug)]
pub struct TmEntry {
    pub matrix: Block4,
    mask: u128,
}

impl TmEntry {
    /// Rows of the block reduced mod 3.
    pub fn rows_mod3(&self) -> [[u8; 4]; 4] {
        self.matrix.map(|r| r.map(|x| x.rem_euclid(3) as u8))
    }

    /// The codeword set, sorted.
    pub fn codewords(&self) -> Vec<[u8; 4]> {
        (0..81u8)
            .filter(|&i| self.mask >> i & 1 == 1)
            .map(index_word)
            .collect()
    }

    pub fn contains(&self, w: [u8; 4]) -> bool {
        self.mask >> word_index(w) & 1 == 1
    }
}

/// All column-signed, column-permuted variants of `M`, one per distinct code.
#[derive(Debug)]
pub struct TmCatalog {
    entries: Vec<TmEntry>,
    by_code: HashMap<u128, usize>,
    candidates_scanned: usize,
}

impl TmCatalog {
    fn build() -> Self {
        let mut perms = Vec::with_capacity(24);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        let mut seen = [false; 4];
                        if p.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                            perms.push(p);
                        }
                    }
                }
            }
        }
        let mut entries = Vec::new();
        let mut by_code = HashMap::new();
        let mut scanned = 0;
        for signs in 0u8..16 {
            for p in &perms {
                let mut t: Block4 = [[0; 4]; 4];
                for (i, row) in t.iter_mut().enumerate() {
                    for (j, x) in row.iter_mut().enumerate() {
                        let s = if signs >> j & 1 == 1 { -1 } else { 1 };
                        *x = s * M[i][p[j]];
                    }
                }
                scanned += 1;
                let rows = t.map(|r| word_index(r.map(|x| x.rem_euclid(3) as u8)));
                let mask = span_mask(rows).expect("rows of M span a 2-dimensional code");
                by_code.entry(mask).or_insert_with(|| {
                    entries.push(TmEntry { matrix: t, mask });
                    entries.len() - 1
                });
            }
        }
        TmCatalog {
            entries,
            by_code,
            candidates_scanned: scanned,
        }
    }

    pub fn entries(&self) -> &[TmEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of sign/permutation candidates enumerated before deduplication.
    pub fn candidates_scanned(&self) -> usize {
        self.candidates_scanned
    }

    fn lookup(&self, mask: u128) -> Option<&TmEntry> {
        self.by_code.get(&mask).map(|&i| &self.entries[i])
    }

    /// The catalog entry whose code is spanned by `words`, if any.
    pub fn find_code(&self, words: &[[u8; 4]]) -> Option<&TmEntry> {
        self.lookup(span_mask(words.iter().map(|&w| word_index(w)))?)
    }

    /// Whether `b` is one of the enumerated sign/permutation variants of `M`.
    pub fn contains_block(&self, b: &Block4) -> bool {
        let mut used = [false; 4];
        (0..4).all(|j| {
            let col = [0, 1, 2, 3].map(|i| b[i][j]);
            let src = (0..4).find(|&s| {
                let m = [0, 1, 2, 3].map(|i| M[i][s]);
                col == m || col == m.map(|x| -x)
            });
            src.is_some_and(|s| !std::mem::replace(&mut used[s], true))
        })
    }
}

pub fn tm_candidates() -> &'static TmCatalog {
    static CATALOG: OnceLock<TmCatalog> = OnceLock::new();
    CATALOG.get_or_init(TmCatalog::build)
}

fn assert_ternary(code: &LinearCode) {
    assert_eq!(
        code.q(),
        FieldOrder::Ternary,
        "ternary decomposition needs a code over F3"
    );
}

/// Detects `C ≅ {0} × C'` or `C ≅ {0,1,2} × C'`, zero columns first.
pub fn decompose_length1_ternary(code: &LinearCode) -> Option<TernarySplit> {
    decompose_length1_ternary_with(code, Exec::default())
}

pub fn decompose_length1_ternary_with(code: &LinearCode, exec: Exec) -> Option<TernarySplit> {
    assert_ternary(code);
    let one = |kind, j| TernarySplit {
        kind,
        coords: vec![j],
        tm: None,
    };
    if let Some(j) = zero_column(code) {
        return Some(one(TernaryKind::Zero1, j));
    }
    exec.find_first(code.len(), |j| {
        splits_full_at(code, j).then(|| one(TernaryKind::Full1, j))
    })
}

fn tetra_split_at(code: &LinearCode, coords: [usize; 4]) -> Option<TernarySplit> {
    let g = code.generator();
    let projected = g.iter_rows().map(|r| word_index(coords.map(|j| r[j])));
    // Equal spans means the projected generators lie in the catalog code and
    // the block rows lie in the projection.
    let entry = tm_candidates().lookup(span_mask(projected)?)?;
    let rows = entry.rows_mod3();
    let ok = g
        .iter_rows()
        .all(|r| rows.iter().all(|p| code.contains(&extend(r, &coords, p))));
    ok.then(|| TernarySplit {
        kind: TernaryKind::Tetra4,
        coords: coords.to_vec(),
        tm: Some(entry.matrix),
    })
}

/// Detects `C ≅ C_T × C'` for a catalog block `T`, scanning 4-subsets in
/// lexicographic order.
pub fn decompose_length4_ternary(code: &LinearCode) -> Option<TernarySplit> {
    decompose_length4_ternary_with(code, Exec::default())
}

pub fn decompose_length4_ternary_with(code: &LinearCode, exec: Exec) -> Option<TernarySplit> {
    assert_ternary(code);
    let n = code.len();
    if n < 4 {
        return None;
    }
    exec.find_first(n, |j1| {
        for j2 in j1 + 1..n {
            for j3 in j2 + 1..n {
                for j4 in j3 + 1..n {
                    if let Some(s) = tetra_split_at(code, [j1, j2, j3, j4]) {
                        return Some(s);
                    }
                }
            }
        }
        None
    })
}

/// Full greedy decomposition; `None` means `C + 3Zⁿ` has no orthogonal basis.
pub fn decompose_ternary(code: &LinearCode) -> Option<Vec<TernarySplit>> {
    decompose_ternary_with(code, Exec::default())
}

pub fn decompose_ternary_with(code: &LinearCode, exec: Exec) -> Option<Vec<TernarySplit>> {
    assert_ternary(code);
    greedy_decompose(code, |c| {
        decompose_length1_ternary_with(c, exec).or_else(|| decompose_length4_ternary_with(c, exec))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: FieldOrder = FieldOrder::Ternary;

    fn tetracode() -> LinearCode {
        let rows = M.map(|r| r.map(|x| x.rem_euclid(3) as u8));
        LinearCode::from_rows(T, 4, &rows).unwrap()
    }

    fn brute_span(words: &[[u8; 4]]) -> Vec<[u8; 4]> {
        let mut set = vec![[0u8; 4]];
        loop {
            let mut grew = false;
            for a in set.clone() {
                for w in words {
                    for s in [1u8, 2] {
                        let v = [0, 1, 2, 3].map(|i| (a[i] + s * w[i]) % 3);
                        if !set.contains(&v) {
                            set.push(v);
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                set.sort();
                return set;
            }
        }
    }

    #[test]
    fn span_mask_matches_closure() {
        let cases: Vec<Vec<[u8; 4]>> = vec![
            vec![],
            vec![[1, 1, 1, 0]],
            vec![[1, 1, 1, 0], [1, 2, 0, 1]],
            vec![[1, 1, 1, 0], [2, 2, 2, 0]],
            vec![[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]],
            vec![[0, 0, 0, 0], [0, 2, 1, 1]],
        ];
        for words in cases {
            let expect = brute_span(&words);
            let got = span_mask(words.iter().map(|&w| word_index(w)));
            if expect.len() > 9 {
                assert_eq!(got, None);
            } else {
                let got: Vec<[u8; 4]> = (0..81u8)
                    .filter(|&i| got.unwrap() >> i & 1 == 1)
                    .map(index_word)
                    .collect();
                assert_eq!(got, expect);
            }
        }
    }

    #[test]
    fn catalog_starts_with_m() {
        let cat = tm_candidates();
        assert_eq!(cat.candidates_scanned(), 384);
        assert_eq!(cat.entries()[0].matrix, M);
        assert_eq!(cat.entries()[0].codewords().len(), 9);
        let expect: Vec<[u8; 4]> = {
            let mut w: Vec<[u8; 4]> = tetracode()
                .codewords()
                .into_iter()
                .map(|v| [v[0], v[1], v[2], v[3]])
                .collect();
            w.sort();
            w
        };
        assert_eq!(cat.entries()[0].codewords(), expect);
    }

    #[test]
    fn catalog_blocks_are_weighing_matrices() {
        for e in tm_candidates().entries() {
            let m = block_to_matrix(&e.matrix);
            assert_eq!(m.gram(), IntMatrix::scalar(4, 3));
            assert!(tm_candidates().contains_block(&e.matrix));
        }
    }

    #[test]
    fn catalog_covers_every_weight3_code() {
        // Two-dimensional codes in F₃⁴ whose nonzero words all have weight 3.
        let mut codes = std::collections::BTreeSet::new();
        for a in 1..81u8 {
            for b in a + 1..81 {
                if let Some(mask) = span_mask([a, b]) {
                    let words: Vec<u8> = (1..81u8).filter(|&i| mask >> i & 1 == 1).collect();
                    let weight3 = words
                        .iter()
                        .all(|&i| index_word(i).iter().filter(|&&x| x != 0).count() == 3);
                    if words.len() == 8 && weight3 {
                        codes.insert(mask);
                    }
                }
            }
        }
        let cat = tm_candidates();
        assert_eq!(cat.len(), 8);
        assert_eq!(codes.len(), cat.len());
        assert!(cat.entries().iter().all(|e| codes.contains(&e.mask)));
    }

    #[test]
    fn length1_examples() {
        let full = LinearCode::full(T, 2).unwrap();
        let s = decompose_length1_ternary(&full).unwrap();
        assert_eq!((s.kind, s.coords), (TernaryKind::Full1, vec![0]));
        let rep = LinearCode::from_rows(T, 2, &[[1, 1]]).unwrap();
        assert_eq!(decompose_length1_ternary(&rep), None);
        let zt = LinearCode::from_rows(T, 5, &[[0, 1, 1, 1, 0], [0, 1, 2, 0, 1]]).unwrap();
        let s = decompose_length1_ternary(&zt).unwrap();
        assert_eq!((s.kind, s.coords), (TernaryKind::Zero1, vec![0]));
    }

    #[test]
    fn length4_on_tetracode_returns_m() {
        let s = decompose_length4_ternary(&tetracode()).unwrap();
        assert_eq!(s.kind, TernaryKind::Tetra4);
        assert_eq!(s.coords, vec![0, 1, 2, 3]);
        assert_eq!(s.tm, Some(M));
    }

    #[test]
    fn length4_rejects_padded_repetition() {
        let c = LinearCode::from_rows(T, 4, &[[1, 1, 0, 0]]).unwrap();
        assert_eq!(decompose_length4_ternary(&c), None);
    }

    #[test]
    fn length4_finds_permuted_block() {
        // tetracode ⊗ F3 on 5 coordinates, shuffled.
        let base =
            LinearCode::from_rows(T, 5, &[[1, 1, 1, 0, 0], [1, 2, 0, 1, 0], [0, 0, 0, 0, 1]])
                .unwrap();
        let perm = [4, 2, 0, 3, 1];
        let c = base.permute(&perm);
        // New coordinate j carries old coordinate perm[j]; the block lives on
        // the new positions of old 0..4.
        let mut expect: Vec<usize> = (0..5).filter(|&j| perm[j] < 4).collect();
        expect.sort();
        let s = decompose_length4_ternary(&c).unwrap();
        assert_eq!(s.coords, expect);
        let rows = s.tm.unwrap().map(|r| r.map(|x| x.rem_euclid(3) as u8));
        for g in c.generator().iter_rows() {
            for p in &rows {
                assert!(c.contains(&extend(g, &s.coords, p)));
            }
        }
    }

    #[test]
    fn full_decomposition_examples() {
        let d = decompose_ternary(&LinearCode::full(T, 2).unwrap()).unwrap();
        assert_eq!(
            d.iter().map(|s| s.kind).collect::<Vec<_>>(),
            vec![TernaryKind::Full1; 2]
        );

        let padded = LinearCode::from_rows(T, 5, &[[1, 1, 1, 0, 0], [1, 2, 0, 1, 0]]).unwrap();
        let d = decompose_ternary(&padded).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(
            (d[0].kind, d[0].coords.clone()),
            (TernaryKind::Zero1, vec![4])
        );
        assert_eq!(
            (d[1].kind, d[1].coords.clone(), d[1].tm),
            (TernaryKind::Tetra4, vec![0, 1, 2, 3], Some(M))
        );

        let rep = LinearCode::from_rows(T, 2, &[[1, 1]]).unwrap();
        assert_eq!(decompose_ternary(&rep), None);
    }
}
