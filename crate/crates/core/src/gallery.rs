//! Worked examples: the three-element relation `R` over `X = {0, s}` and
//! `B = {1, t}`, its sign-like rival structure, and `S3` as an extension of
//! `Z2` by `Z3`.

use std::sync::Arc;

use crate::catalog;
use crate::maps::PointedMap;
use crate::monoid::FiniteMonoid;
use crate::semibiproduct::{SemiBiproduct, SemiBiproductError};

/// Elements of `R`, ordered by `(b, x)`.
pub const E1_LABELS: [&str; 3] = ["0R1", "sR1", "0Rt"];

/// The chain semilattice `0R1 < sR1 < 0Rt` under `max`.
pub fn e1_chain() -> FiniteMonoid {
    FiniteMonoid::new(
        "R",
        E1_LABELS.iter().map(|s| s.to_string()).collect(),
        0,
        &[vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]],
    )
    .expect("chain semilattice")
}

/// `R` identified with `{1, -1, 0}` under multiplication.
pub fn e1_sign() -> FiniteMonoid {
    FiniteMonoid::new(
        "R",
        E1_LABELS.iter().map(|s| s.to_string()).collect(),
        0,
        &[vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]],
    )
    .expect("sign monoid")
}

fn e1_over(r: FiniteMonoid) -> Result<SemiBiproduct, SemiBiproductError> {
    let x = Arc::new(catalog::semilattice2());
    let b = Arc::new(catalog::idempotent2());
    let a = Arc::new(r);
    let map = |d: &Arc<FiniteMonoid>, c: &Arc<FiniteMonoid>, v: Vec<usize>| {
        PointedMap::new(d.clone(), c.clone(), v).expect("zero-preserving by construction")
    };
    let p = map(&a, &b, vec![0, 0, 1]);
    let k = map(&x, &a, vec![0, 1]);
    let q = map(&a, &x, vec![0, 1, 0]);
    let s = map(&b, &a, vec![0, 2]);
    SemiBiproduct::verify(x, a, b, p, k, q, s)
}

/// `R = {0R1, sR1, 0Rt}` with the chain-semilattice structure.
pub fn paper_e1() -> Result<SemiBiproduct, SemiBiproductError> {
    e1_over(e1_chain())
}

/// The same data over the `{1, -1, 0}` multiplication; `k` fails to be a
/// homomorphism.
pub fn paper_e1_sign() -> Result<SemiBiproduct, SemiBiproductError> {
    e1_over(e1_sign())
}

/// `S3` from its Cayley table, with `k` the rotations, `p` the sign and
/// `s(t) = (1 2)`.
pub fn z3_semidirect_z2() -> SemiBiproduct {
    let a = Arc::new(catalog::symmetric3());
    let x = Arc::new(catalog::cyclic(3));
    let b = Arc::new(catalog::cyclic(2).with_name("Z2"));
    let idx = |l: &str| a.index_of(l).expect("permutation label");
    let k = vec![idx("012"), idx("120"), idx("201")];
    let s = vec![idx("012"), idx("021")];
    let p: Vec<usize> = (0..a.order())
        .map(|i| {
            let l: Vec<usize> = a.label(i).bytes().map(|c| (c - b'0') as usize).collect();
            let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| l[i] > l[j]);
            inversions.count() % 2
        })
        .collect();
    let q: Vec<usize> = (0..a.order())
        .map(|i| (0..3).find(|&xi| a.op(k[xi], s[p[i]]) == i).expect("coset decomposition"))
        .collect();
    let p = PointedMap::new(a.clone(), b.clone(), p).expect("pointed");
    let k = PointedMap::new(x.clone(), a.clone(), k).expect("pointed");
    let q = PointedMap::new(a.clone(), x.clone(), q).expect("pointed");
    let s = PointedMap::new(b.clone(), a.clone(), s).expect("pointed");
    SemiBiproduct::verify(x, a, b, p, k, q, s).expect("S3 is a split extension of Z2 by Z3")
}

/// Transports `sb` along a relabeling `perm` of its middle object, fixing
/// the identity. Returns the copy and the isomorphism `f1 = perm`.
pub fn twisted_copy(sb: &SemiBiproduct, perm: &[usize]) -> Result<SemiBiproduct, SemiBiproductError> {
    let a2 = Arc::new(sb.a().permuted(perm).expect("bijection"));
    let n = perm.len();
    let mut inv = vec![0; n];
    for (i, &j) in perm.iter().enumerate() {
        inv[j] = i;
    }
    let p = (0..n).map(|j| sb.p().apply(inv[j])).collect();
    let q = (0..n).map(|j| sb.q().apply(inv[j])).collect();
    let k = sb.k().values().iter().map(|&a| perm[a]).collect();
    let s = sb.s().values().iter().map(|&a| perm[a]).collect();
    let (x, b) = (sb.x().clone(), sb.b().clone());
    let mk = |d: &Arc<FiniteMonoid>, c: &Arc<FiniteMonoid>, v: Vec<usize>| {
        PointedMap::new(d.clone(), c.clone(), v).expect("transported maps stay pointed")
    };
    SemiBiproduct::verify(
        x.clone(),
        a2.clone(),
        b.clone(),
        mk(&a2, &b, p),
        mk(&x, &a2, k),
        mk(&a2, &x, q),
        mk(&b, &a2, s),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semibiproduct::{decomposition_check, extract_pseudo_action, is_schreier};

    #[test]
    fn s3_extension_has_inversion_action() {
        let sb = z3_semidirect_z2();
        assert!(is_schreier(&sb));
        assert_eq!(decomposition_check(&sb).unwrap().pairs_checked, 36);
        let pa = extract_pseudo_action(&sb).unwrap();
        assert_eq!(pa.tables().phi, vec![vec![0, 1, 2], vec![0, 2, 1]]);
        assert!(pa.tables().gamma.iter().flatten().all(|&g| g == 0));
    }

    #[test]
    fn twisting_preserves_validity() {
        let sb = z3_semidirect_z2();
        let twisted = twisted_copy(&sb, &[0, 5, 3, 1, 2, 4]).unwrap();
        assert_eq!(extract_pseudo_action(&twisted).unwrap(), extract_pseudo_action(&sb).unwrap());
    }

    #[test]
    fn e1_composites() {
        let sb = paper_e1().unwrap();
        let qs = sb.q().after(sb.s()).unwrap();
        assert!(qs.is_zero());
        let kq = sb.k().as_map().after(sb.q()).unwrap();
        let sp = sb.s().after(sb.p().as_map()).unwrap();
        assert_eq!(kq.pointwise_add(&sp).unwrap().values(), &[0, 1, 2]);
        assert_eq!(sb.q().homomorphism_violation(), Some((1, 2)));
    }
}
