//! Bounded checks for the order relation `R = {(x, b) ∈ ℕ² : x ≥ b}`.
//!
//! `ℕ` is truncated to `{0, ..., N}`; an identity instance is evaluated only
//! when every intermediate sum stays within the bound, and the report
//! records how many instances were covered.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub name: &'static str,
    pub checked: u64,
    pub skipped: u64,
    pub failures: u64,
}

impl Coverage {
    fn new(name: &'static str) -> Self {
        Coverage { name, checked: 0, skipped: 0, failures: 0 }
    }

    fn record(&mut self, outcome: Option<bool>) {
        match outcome {
            None => self.skipped += 1,
            Some(true) => self.checked += 1,
            Some(false) => {
                self.checked += 1;
                self.failures += 1;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NatReport {
    pub bound: u64,
    /// `|R|` within the bound.
    pub relation_size: u64,
    pub checks: Vec<Coverage>,
    pub semibiproduct: bool,
    pub schreier: bool,
    pub q_homomorphism: bool,
    pub s_homomorphism: bool,
    /// `β(x ≥ b) = (x − b, b)` is a bijection onto `{(y, b) : y + b ≤ N}`.
    pub beta_bijective: bool,
}

/// Partial addition on the truncation.
fn add(a: u64, b: u64, bound: u64) -> Option<u64> {
    let s = a + b;
    (s <= bound).then_some(s)
}

type Pair = (u64, u64);

/// Componentwise addition on `R`; `None` when leaving the bound.
fn add_r(r: Pair, r2: Pair, bound: u64) -> Option<Pair> {
    Some((add(r.0, r2.0, bound)?, add(r.1, r2.1, bound)?))
}

fn q(r: Pair) -> u64 {
    r.0 - r.1
}

fn u(b: u64) -> u64 {
    b
}

fn k(x: u64) -> Pair {
    (x, 0)
}

fn s(b: u64) -> Pair {
    (u(b), b)
}

fn p(r: Pair) -> u64 {
    r.1
}

/// Runs the construction-scheme checks and the semi-biproduct equations on
/// the truncation at `bound`.
pub fn check_nat_order(bound: u64) -> NatReport {
    let n = bound;
    let r: Vec<Pair> = (0..=n).flat_map(|b| (b..=n).map(move |x| (x, b))).collect();
    let nat: Vec<u64> = (0..=n).collect();

    // derived operations of the scheme
    let oplus = |x: u64, y: u64| add_r(k(x), k(y), n).map(q);
    let times = |b: u64, c: u64| add_r(s(b), s(c), n).map(q);
    let dot = |b: u64, x: u64| add_r(s(b), k(x), n).map(q);
    let hat = |x: u64, b: u64| add_r(k(x), s(b), n).map(q);

    let mut scheme_oplus = Coverage::new("x⊕x'=x+x'");
    let mut scheme_factor = Coverage::new("b×b'=0");
    let mut scheme_act = Coverage::new("b·x=x");
    let mut schreier = Coverage::new("x^b=x");
    for &a in &nat {
        for &c in &nat {
            scheme_oplus.record(oplus(a, c).map(|v| Some(v) == add(a, c, n)));
            scheme_factor.record(times(a, c).map(|v| v == 0));
            scheme_act.record(dot(a, c).map(|v| v == c));
            schreier.record(hat(a, c).map(|v| v == a));
        }
    }
    let mut fixed = Coverage::new("q(xRb)^b=q(xRb)");
    let mut decomposition = Coverage::new("xRb=q(xRb)R1+u(b)Rb");
    let mut ps = Coverage::new("ps=1");
    let mut qk = Coverage::new("qk=1");
    let mut kqsp = Coverage::new("kq+sp=1");
    let mut pk = Coverage::new("pk=0");
    let mut qs = Coverage::new("qs=0");
    for &rr in &r {
        fixed.record(hat(q(rr), p(rr)).map(|v| v == q(rr)));
        let back = add_r(k(q(rr)), s(p(rr)), n);
        decomposition.record(back.map(|v| v == rr));
        kqsp.record(back.map(|v| v == rr));
    }
    for &v in &nat {
        ps.record(Some(p(s(v)) == v));
        qk.record(Some(q(k(v)) == v));
        pk.record(Some(p(k(v)) == 0));
        qs.record(Some(q(s(v)) == 0));
    }
    let mut p_hom = Coverage::new("p homomorphism");
    let mut k_hom = Coverage::new("k homomorphism");
    let mut q_hom = Coverage::new("q homomorphism");
    let mut s_hom = Coverage::new("s homomorphism");
    for &a in &r {
        for &c in &r {
            let sum = add_r(a, c, n);
            p_hom.record(sum.map(|v| Some(p(v)) == add(p(a), p(c), n)));
            q_hom.record(sum.map(|v| Some(q(v)) == add(q(a), q(c), n)));
        }
    }
    for &a in &nat {
        for &c in &nat {
            k_hom.record(add(a, c, n).map(|v| add_r(k(a), k(c), n) == Some(k(v))));
            s_hom.record(add(a, c, n).map(|v| add_r(s(a), s(c), n) == Some(s(v))));
        }
    }
    let mut images: Vec<Pair> = r.iter().map(|&rr| (q(rr), p(rr))).collect();
    images.sort_unstable();
    images.dedup();
    let target = (0..=n).map(|b| n - b + 1).sum::<u64>();
    let beta_bijective = images.len() as u64 == r.len() as u64
        && images.len() as u64 == target
        && images.iter().all(|&(y, b)| y + b <= n);

    let structural = [&ps, &qk, &kqsp, &pk, &qs, &p_hom, &k_hom].iter().all(|c| c.failures == 0);
    let scheme_ok = [&scheme_oplus, &fixed, &decomposition].iter().all(|c| c.failures == 0);
    NatReport {
        bound,
        relation_size: r.len() as u64,
        semibiproduct: structural && scheme_ok,
        schreier: schreier.failures == 0,
        q_homomorphism: q_hom.failures == 0,
        s_homomorphism: s_hom.failures == 0,
        beta_bijective,
        checks: vec![
            scheme_oplus,
            scheme_factor,
            scheme_act,
            schreier,
            fixed,
            decomposition,
            ps,
            qk,
            kqsp,
            pk,
            qs,
            p_hom,
            k_hom,
            q_hom,
            s_hom,
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_ten_is_a_schreier_semibiproduct() {
        let report = check_nat_order(10);
        assert!(report.semibiproduct);
        assert!(report.schreier && report.q_homomorphism && report.s_homomorphism);
        assert!(report.beta_bijective);
        assert_eq!(report.relation_size, 66);
        assert!(report.checks.iter().all(|c| c.failures == 0 && c.checked > 0));
        // x⊕x' is defined exactly when x + x' ≤ 10
        assert_eq!(report.checks[0].checked, 66);
        assert_eq!(report.checks[0].skipped, 121 - 66);
    }

    #[test]
    fn bound_zero_is_degenerate() {
        let report = check_nat_order(0);
        assert_eq!(report.relation_size, 1);
        assert!(report.semibiproduct && report.schreier);
    }
}
