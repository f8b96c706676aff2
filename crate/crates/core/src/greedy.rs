use std::collections::BTreeSet;

use crate::code_lattice::{project_code, LinearCode};

/// A split found at one recursion level; coordinates are local to that level.
pub(crate) trait Split {
    fn coords_mut(&mut self) -> &mut Vec<usize>;
}

/// Copy of `g` with `values` written into `coords`.
pub(crate) fn extend(g: &[u8], coords: &[usize], values: &[u8]) -> Vec<u8> {
    let mut v = g.to_vec();
    for (&j, &x) in coords.iter().zip(values) {
        v[j] = x;
    }
    v
}

/// Repeatedly peel off a component with `step`, puncture the code on the
/// coordinates it used, and recurse on the rest. Coordinates in the returned
/// splits refer to the original code. `None` as soon as a level has no split.
pub(crate) fn greedy_decompose<S, F>(code: &LinearCode, mut step: F) -> Option<Vec<S>>
where
    S: Split,
    F: FnMut(&LinearCode) -> Option<S>,
{
    let mut remaining: Vec<usize> = (0..code.len()).collect();
    let mut current = code.clone();
    let mut out = Vec::new();
    loop {
        let mut split = step(&current)?;
        let used: BTreeSet<usize> = split.coords_mut().iter().copied().collect();
        for c in split.coords_mut().iter_mut() {
            *c = remaining[*c];
        }
        out.push(split);
        let keep: Vec<usize> = (0..remaining.len()).filter(|i| !used.contains(i)).collect();
        if keep.is_empty() {
            return Some(out);
        }
        current = project_code(&current, &keep).expect("kept coordinates are valid");
        remaining = keep.iter().map(|&i| remaining[i]).collect();
    }
}
