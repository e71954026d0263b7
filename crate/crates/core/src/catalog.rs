//! Small named monoids and exhaustive generation of monoids up to isomorphism.

use std::collections::BTreeSet;

use crate::monoid::{FiniteMonoid, Notation};

pub fn trivial() -> FiniteMonoid {
    FiniteMonoid::with_numeric_labels("1", 0, &[vec![0]]).expect("trivial monoid")
}

/// The cyclic group `Z_n` written additively.
pub fn cyclic(n: usize) -> FiniteMonoid {
    assert!(n > 0);
    let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    FiniteMonoid::with_numeric_labels(format!("Z{n}"), 0, &rows).expect("cyclic group")
}

/// `{0, s}` with `s + s = s`.
pub fn semilattice2() -> FiniteMonoid {
    FiniteMonoid::new("X", vec!["0".into(), "s".into()], 0, &[vec![0, 1], vec![1, 1]]).expect("semilattice")
}

/// `{1, t}` with `t·t = t`, written multiplicatively.
pub fn idempotent2() -> FiniteMonoid {
    FiniteMonoid::new("B", vec!["1".into(), "t".into()], 0, &[vec![0, 1], vec![1, 1]])
        .expect("idempotent monoid")
        .with_notation(Notation::Multiplicative)
}

/// The chain `0 < 1 < ... < n-1` under `max`.
pub fn chain(n: usize) -> FiniteMonoid {
    let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| i.max(j)).collect()).collect();
    FiniteMonoid::with_numeric_labels(format!("C{n}"), 0, &rows).expect("chain semilattice")
}

/// The symmetric group on three letters, elements listed as images of
/// `(0, 1, 2)` in lexicographic order, composed as functions.
pub fn symmetric3() -> FiniteMonoid {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    let rows: Vec<Vec<usize>> = perms
        .iter()
        .map(|s| perms.iter().map(|t| index([s[t[0]], s[t[1]], s[t[2]]])).collect())
        .collect();
    let labels = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
    FiniteMonoid::new("S3", labels, 0, &rows).expect("symmetric group").with_notation(Notation::Multiplicative)
}

/// All monoids of the given order with identity at index 0, one
/// representative per isomorphism class (the lexicographically least table
/// among relabelings fixing 0), sorted by table.
pub fn monoids_of_order(n: usize) -> Vec<FiniteMonoid> {
    assert!(n > 0);
    let mut tables = Vec::new();
    let mut table = vec![usize::MAX; n * n];
    for i in 0..n {
        table[i] = i;
        table[i * n] = i;
    }
    let cells: Vec<usize> = (1..n).flat_map(|i| (1..n).map(move |j| i * n + j)).collect();
    fill_cells(n, &cells, 0, &mut table, &mut tables);

    let perms = permutations_fixing_zero(n);
    let canonical: BTreeSet<Vec<usize>> = tables
        .into_iter()
        .map(|t| perms.iter().map(|p| relabel(&t, p)).min().expect("at least one permutation"))
        .collect();
    canonical
        .into_iter()
        .enumerate()
        .map(|(idx, t)| {
            let labels = (0..n).map(|i| i.to_string()).collect();
            FiniteMonoid::from_flat(format!("M{n}.{idx}"), labels, 0, t).expect("associative by construction")
        })
        .collect()
}

/// Monoids of order `1..=max_order`, each up to isomorphism.
pub fn monoids_up_to(max_order: usize) -> Vec<FiniteMonoid> {
    (1..=max_order).flat_map(monoids_of_order).collect()
}

fn fill_cells(n: usize, cells: &[usize], pos: usize, table: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if pos == cells.len() {
        out.push(table.clone());
        return;
    }
    let cell = cells[pos];
    for v in 0..n {
        table[cell] = v;
        if partial_associative(n, table) {
            fill_cells(n, cells, pos + 1, table, out);
        }
    }
    table[cell] = usize::MAX;
}

fn partial_associative(n: usize, t: &[usize]) -> bool {
    for i in 0..n {
        for j in 0..n {
            let ij = t[i * n + j];
            if ij == usize::MAX {
                continue;
            }
            for k in 0..n {
                let jk = t[j * n + k];
                if jk == usize::MAX {
                    continue;
                }
                let (l, r) = (t[ij * n + k], t[i * n + jk]);
                if l != usize::MAX && r != usize::MAX && l != r {
                    return false;
                }
            }
        }
    }
    true
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    permute(&mut current, 1, &mut out);
    out
}

fn permute(v: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if start >= v.len() {
        out.push(v.clone());
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permute(v, start + 1, out);
        v.swap(start, i);
    }
}

fn relabel(t: &[usize], p: &[usize]) -> Vec<usize> {
    let n = p.len();
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[p[i] * n + p[j]] = p[t[i * n + j]];
        }
    }
    out
}

/// Looks up a built-in monoid by name: `trivial`, `Z<n>`, `C<n>`, `S3`,
/// `semilattice2`, `idempotent2`, or `M<order>.<index>` from
/// [`monoids_of_order`].
pub fn builtin(name: &str) -> Option<FiniteMonoid> {
    match name {
        "trivial" | "1" => return Some(trivial()),
        "S3" => return Some(symmetric3()),
        "semilattice2" => return Some(semilattice2().with_name("semilattice2")),
        "idempotent2" => return Some(idempotent2().with_name("idempotent2")),
        _ => {}
    }
    if let Some(n) = name.strip_prefix('Z').and_then(|s| s.parse::<usize>().ok()) {
        return (1..=64).contains(&n).then(|| cyclic(n));
    }
    if let Some(n) = name.strip_prefix('C').and_then(|s| s.parse::<usize>().ok()) {
        return (1..=64).contains(&n).then(|| chain(n));
    }
    if let Some((order, idx)) = name.strip_prefix('M').and_then(|s| s.split_once('.')) {
        let (order, idx) = (order.parse::<usize>().ok()?, idx.parse::<usize>().ok()?);
        if (1..=4).contains(&order) {
            return monoids_of_order(order).into_iter().nth(idx);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;

    #[test]
    fn counts_of_small_monoids() {
        assert_eq!(monoids_of_order(1).len(), 1);
        assert_eq!(monoids_of_order(2).len(), 2);
        // seven monoids of order three up to isomorphism
        assert_eq!(monoids_of_order(3).len(), 7);
    }

    #[test]
    fn representatives_are_pairwise_non_isomorphic() {
        let ms = monoids_up_to(3);
        for (i, a) in ms.iter().enumerate() {
            for b in &ms[i + 1..] {
                assert!(!are_isomorphic(a, b), "{} ~ {}", a.name(), b.name());
            }
        }
    }

    #[test]
    fn s3_is_a_nonabelian_group() {
        let s3 = symmetric3();
        assert!(s3.is_group());
        assert!(!s3.is_commutative());
    }

    #[test]
    fn builtin_lookup() {
        assert_eq!(builtin("Z5").unwrap().order(), 5);
        assert_eq!(builtin("M3.0").unwrap().order(), 3);
        assert!(builtin("M3.7").is_none());
        assert!(builtin("nope").is_none());
    }
}
