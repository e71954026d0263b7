//! Backtracking search for monoid isomorphisms.

use crate::monoid::FiniteMonoid;

const UNSET: usize = usize::MAX;

/// Finds the lexicographically least isomorphism `a → b` (as a value array)
/// whose value at each element lies in `allowed(element)`. Candidates are
/// tried in the order `allowed` returns them.
pub fn find_isomorphism<F>(a: &FiniteMonoid, b: &FiniteMonoid, allowed: F) -> Option<Vec<usize>>
where
    F: Fn(usize) -> Vec<usize>,
{
    let n = a.order();
    if n != b.order() {
        return None;
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            if i == a.identity() {
                allowed(i).into_iter().filter(|&v| v == b.identity()).collect()
            } else {
                allowed(i).into_iter().filter(|&v| v != b.identity()).collect()
            }
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    // most constrained elements first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));
    let mut map = vec![UNSET; n];
    let mut used = vec![false; n];
    if search(a, b, &candidates, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Unconstrained isomorphism search.
pub fn isomorphism(a: &FiniteMonoid, b: &FiniteMonoid) -> Option<Vec<usize>> {
    let n = b.order();
    find_isomorphism(a, b, |_| (0..n).collect())
}

pub fn are_isomorphic(a: &FiniteMonoid, b: &FiniteMonoid) -> bool {
    isomorphism(a, b).is_some()
}

fn search(
    a: &FiniteMonoid,
    b: &FiniteMonoid,
    candidates: &[Vec<usize>],
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let i = order[depth];
    for &v in &candidates[i] {
        if used[v] {
            continue;
        }
        map[i] = v;
        used[v] = true;
        if consistent(a, b, map, i) && search(a, b, candidates, order, depth + 1, map, used) {
            return true;
        }
        used[v] = false;
    }
    map[i] = UNSET;
    false
}

fn consistent(a: &FiniteMonoid, b: &FiniteMonoid, map: &[usize], last: usize) -> bool {
    for other in 0..a.order() {
        if map[other] == UNSET {
            continue;
        }
        for (x, y) in [(last, other), (other, last)] {
            let image = map[a.op(x, y)];
            if image != UNSET && image != b.op(map[x], map[y]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn cyclic_groups_are_isomorphic_to_relabelings() {
        let z4 = catalog::cyclic(4);
        let twisted = z4.permuted(&[0, 3, 1, 2]).unwrap();
        let f = isomorphism(&z4, &twisted).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(f[z4.op(i, j)], twisted.op(f[i], f[j]));
            }
        }
    }

    #[test]
    fn klein_is_not_cyclic() {
        let z2 = catalog::cyclic(2);
        let klein = FiniteMonoid::product(&z2, &z2);
        assert!(!are_isomorphic(&klein, &catalog::cyclic(4)));
    }

    #[test]
    fn constraints_are_respected() {
        let z3 = catalog::cyclic(3);
        // forcing 1 ↦ 1 leaves only the identity
        let f = find_isomorphism(&z3, &z3, |i| if i == 1 { vec![1] } else { vec![0, 1, 2] }).unwrap();
        assert_eq!(f, vec![0, 1, 2]);
        let f = find_isomorphism(&z3, &z3, |i| if i == 1 { vec![2] } else { vec![0, 1, 2] }).unwrap();
        assert_eq!(f, vec![0, 2, 1]);
    }
}
