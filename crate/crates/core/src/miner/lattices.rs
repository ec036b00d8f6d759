//! Enumeration of bounded lattices up to isomorphism.
//!
//! Interior elements are labelled `0..k`. Every finite poset has a linear
//! extension, so every isomorphism class has a *naturally labelled* copy in
//! which `i < j` in the order implies `i < j` as indices. The canonical
//! form is the smallest strict-order bit encoding over all naturally
//! labelled relabellings; the set of such relabellings is a class
//! invariant, so two lattices are isomorphic iff their keys agree.

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;

use super::MinerError;
use crate::lattice::{Elem, Lattice, LatticeError};

/// Largest carrier the enumerator accepts.
pub const MAX_ENUMERATED_SIZE: usize = 7;

const INTERIOR_NAMES: [&str; MAX_ENUMERATED_SIZE - 2] = ["a", "b", "c", "d", "e"];

/// Isomorphism-invariant key of a bounded lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub size: usize,
    pub code: u64,
}

fn pair_bit(i: usize, j: usize, k: usize) -> u32 {
    debug_assert!(i < j && j < k);
    // position of (i,j) in lexicographic order of pairs i<j over 0..k
    (i * (2 * k - i - 1) / 2 + (j - i - 1)) as u32
}

fn encode(k: usize, lt: impl Fn(usize, usize) -> bool) -> u64 {
    let mut code = 0u64;
    for i in 0..k {
        for j in i + 1..k {
            if lt(i, j) {
                code |= 1 << pair_bit(i, j, k);
            }
        }
    }
    code
}

/// Smallest encoding over naturally labelled relabellings of a strict order
/// on `0..k`.
fn canonical_code(k: usize, lt: &dyn Fn(usize, usize) -> bool) -> u64 {
    let mut best = u64::MAX;
    // perm[new] = old
    for perm in (0..k).permutations(k) {
        let natural = (0..k).all(|p| (0..k).all(|q| !lt(perm[q], perm[p]) || q < p));
        if natural {
            best = best.min(encode(k, |p, q| lt(perm[p], perm[q])));
        }
    }
    if k == 0 {
        0
    } else {
        best
    }
}

pub fn canonical_key(lattice: &Lattice) -> Result<CanonicalKey, MinerError> {
    let n = lattice.len();
    if n > MAX_ENUMERATED_SIZE {
        return Err(MinerError::BudgetExceeded(format!(
            "canonical form of a {n}-element lattice (limit {MAX_ENUMERATED_SIZE})"
        )));
    }
    let interior: Vec<Elem> = lattice.elements().filter(|&x| lattice.is_interior(x)).collect();
    let k = interior.len();
    let lt = |i: usize, j: usize| lattice.lt(interior[i], interior[j]);
    Ok(CanonicalKey {
        size: n,
        code: canonical_code(k, &lt),
    })
}

fn decode(code: u64, k: usize) -> impl Fn(usize, usize) -> bool {
    move |i, j| i < j && code >> pair_bit(i, j, k) & 1 == 1
}

fn is_transitive(k: usize, lt: &dyn Fn(usize, usize) -> bool) -> bool {
    (0..k).all(|i| (i + 1..k).all(|j| !lt(i, j) || (j + 1..k).all(|l| !lt(j, l) || lt(i, l))))
}

fn build_bounded(n: usize, k: usize, lt: &dyn Fn(usize, usize) -> bool, name: &str) -> Result<Lattice, LatticeError> {
    let mut names = vec!["0".to_string()];
    names.extend(INTERIOR_NAMES[..k].iter().map(|s| s.to_string()));
    if n > 1 {
        names.push("1".to_string());
    }
    let mut covers: Vec<(String, String)> = Vec::new();
    // Hasse covers of 0 ⊕ P ⊕ 1
    let below = |i: usize| (0..k).any(|j| lt(j, i));
    let above = |i: usize| (0..k).any(|j| lt(i, j));
    for i in 0..k {
        if !below(i) {
            covers.push(("0".into(), names[i + 1].clone()));
        }
    }
    for i in 0..k {
        for j in 0..k {
            if lt(i, j) && !(0..k).any(|m| lt(i, m) && lt(m, j)) {
                covers.push((names[i + 1].clone(), names[j + 1].clone()));
            }
        }
    }
    for i in 0..k {
        if !above(i) {
            covers.push((names[i + 1].clone(), "1".into()));
        }
    }
    if k == 0 && n == 2 {
        covers.push(("0".into(), "1".into()));
    }
    let top = if n > 1 { "1" } else { "0" };
    Lattice::build(name, &names, &covers, "0", top)
}

/// All bounded lattices with `n` elements, one per isomorphism class,
/// sorted by canonical key. Interior elements are named `a`, `b`, ... and
/// declared in a linear-extension order.
pub fn enumerate_lattices(n: usize) -> Result<Vec<Arc<Lattice>>, MinerError> {
    if n == 0 || n > MAX_ENUMERATED_SIZE {
        return Err(MinerError::BudgetExceeded(format!(
            "lattice enumeration for n={n} (supported 1..={MAX_ENUMERATED_SIZE})"
        )));
    }
    if n == 1 {
        return Ok(vec![Arc::new(build_bounded(1, 0, &|_, _| false, "n1_0")?)]);
    }
    let k = n - 2;
    let bits = k * k.saturating_sub(1) / 2;
    let mut keys = BTreeSet::new();
    for mask in 0u64..(1 << bits) {
        let lt = decode(mask, k);
        if !is_transitive(k, &lt) {
            continue;
        }
        if build_bounded(n, k, &lt, "probe").is_err() {
            continue;
        }
        keys.insert(canonical_code(k, &lt));
    }
    keys.into_iter()
        .enumerate()
        .map(|(idx, code)| {
            let lt = decode(code, k);
            Ok(Arc::new(build_bounded(n, k, &lt, &format!("n{n}_{idx}"))?))
        })
        .collect()
}

/// All lattices with `min..=max` elements, in size then key order.
pub fn enumerate_lattices_up_to(min: usize, max: usize) -> Result<Vec<Arc<Lattice>>, MinerError> {
    let mut out = Vec::new();
    for n in min.max(1)..=max {
        out.extend(enumerate_lattices(n)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Naive oracle: all labelled partial orders on `n` elements with the
    /// lattice property and fixed bounds, deduplicated by brute-force
    /// isomorphism over all permutations.
    fn brute_force_count(n: usize) -> usize {
        let k = n - 2;
        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let mut reps: Vec<Vec<Vec<bool>>> = Vec::new();
        for mask in 0u64..(1 << pairs.len()) {
            let mut lt = vec![vec![false; k]; k];
            for (b, &(i, j)) in pairs.iter().enumerate() {
                lt[i][j] = mask >> b & 1 == 1;
            }
            let ok = (0..k).all(|i| {
                (0..k).all(|j| !(lt[i][j] && lt[j][i]) && (0..k).all(|l| !(lt[i][j] && lt[j][l]) || lt[i][l]))
            });
            if !ok {
                continue;
            }
            // lattice check on 0 ⊕ P ⊕ 1 via upper/lower bound scan
            let le = |x: usize, y: usize| -> bool {
                // 0 = bottom, 1..=k interior, k+1 = top
                x == y || x == 0 || y == k + 1 || (x >= 1 && x <= k && y >= 1 && y <= k && lt[x - 1][y - 1])
            };
            let all = n;
            let has_meets = (0..all).all(|x| {
                (0..all).all(|y| {
                    let lbs: Vec<usize> = (0..all).filter(|&z| le(z, x) && le(z, y)).collect();
                    let ubs: Vec<usize> = (0..all).filter(|&z| le(x, z) && le(y, z)).collect();
                    lbs.iter().any(|&g| lbs.iter().all(|&z| le(z, g)))
                        && ubs.iter().any(|&g| ubs.iter().all(|&z| le(g, z)))
                })
            });
            if !has_meets {
                continue;
            }
            let iso = reps.iter().any(|r| {
                (0..k)
                    .permutations(k)
                    .any(|p| (0..k).all(|i| (0..k).all(|j| r[p[i]][p[j]] == lt[i][j])))
            });
            if !iso {
                reps.push(lt);
            }
        }
        reps.len()
    }

    #[test]
    fn counts_match_brute_force() {
        for n in 2..=6 {
            let got = enumerate_lattices(n).unwrap().len();
            assert_eq!(got, brute_force_count(n), "n={n}");
        }
    }

    #[test]
    fn known_small_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| enumerate_lattices(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn four_element_classes_are_chain_and_diamond() {
        let ls = enumerate_lattices(4).unwrap();
        let chain_like = ls
            .iter()
            .filter(|l| l.elements().all(|x| l.incomparables(x).is_empty()))
            .count();
        assert_eq!(chain_like, 1);
        let diamond = Lattice::build(
            "L2",
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
            "0",
            "1",
        )
        .unwrap();
        let key = canonical_key(&diamond).unwrap();
        assert!(ls.iter().any(|l| canonical_key(l).unwrap() == key));
    }

    #[test]
    fn keys_are_relabelling_invariant() {
        let a = Lattice::build(
            "x",
            &["0", "b", "a", "c", "1"],
            &[("0", "b"), ("b", "a"), ("b", "c"), ("a", "1"), ("c", "1")],
            "0",
            "1",
        )
        .unwrap();
        let b = Lattice::build(
            "y",
            &["1", "c", "a", "b", "0"],
            &[("0", "b"), ("b", "a"), ("b", "c"), ("a", "1"), ("c", "1")],
            "0",
            "1",
        )
        .unwrap();
        assert_eq!(canonical_key(&a).unwrap(), canonical_key(&b).unwrap());
        let keys: Vec<_> = enumerate_lattices(5)
            .unwrap()
            .iter()
            .map(|l| canonical_key(l).unwrap())
            .collect();
        assert!(keys.contains(&canonical_key(&a).unwrap()));
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_out_of_budget() {
        assert!(enumerate_lattices(8).is_err());
        assert!(enumerate_lattices(0).is_err());
    }
}
