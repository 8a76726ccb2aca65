use serde::Serialize;

use super::{range_err, Hypothesis, MapClass, ObstructError, Verdict, Witness};
use crate::gf2poly::BitVec;
use crate::parity2::{binom_parity, MAX_ARG};

/// `Z_2[x]/(x^(n+1))` with `w_j = c_j x^j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OneGenRing {
    pub n: usize,
    /// `coeff[j] = c_j` for `0 <= j <= n`; `c_0 = 1`.
    coeff: Vec<bool>,
    pub orientable: bool,
}

impl OneGenRing {
    /// `c[j-1] = c_j` for `1 <= j <= n`.
    pub fn new(c: &[bool], orientable: bool) -> Self {
        let mut coeff = vec![true];
        coeff.extend_from_slice(c);
        OneGenRing { n: c.len(), coeff, orientable }
    }

    /// Cohomology of `RP^n` with `w_j = C(n+1, j) x^j`.
    pub fn projective(n: usize) -> Result<Self, ObstructError> {
        if n == 0 || n as u64 >= MAX_ARG {
            return Err(range_err("1 <= n < 2^20", n));
        }
        let c: Vec<bool> = (1..=n).map(|j| binom_parity(n as u64 + 1, j as i64) == 1).collect();
        Ok(Self::new(&c, n % 2 == 1))
    }

    /// Whether `w_j != 0`; `w_0 = 1`.
    pub fn class_nonzero(&self, j: usize) -> bool {
        j <= self.n && self.coeff[j]
    }

    pub fn product_nonzero(&self, parts: &[u32]) -> bool {
        let deg: usize = parts.iter().map(|&p| p as usize).sum();
        deg <= self.n && parts.iter().all(|&p| self.class_nonzero(p as usize))
    }
}

/// First pair of equal-degree, equal-length products with all parts
/// `>= threshold` and total `<= n` whose values differ, scanning by length
/// and then by degree. `threshold = 0` admits the factor `w_0 = 1`.
///
/// Returns `(nonzero side, zero side)`.
pub fn relation_violation(ring: &OneGenRing, threshold: usize) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = ring.n;
    if threshold > n {
        return None;
    }
    let max_len = n.checked_div(threshold).unwrap_or(n + 2);
    // good[l]: degrees reachable by l nonzero classes; any[l]: by l arbitrary ones
    let mut good = vec![BitVec::zeros(n + 1)];
    let mut any = vec![BitVec::zeros(n + 1)];
    good[0].set(0, true);
    any[0].set(0, true);
    let parts: Vec<usize> = (threshold..=n).collect();
    for l in 1..=max_len {
        let mut g = BitVec::zeros(n + 1);
        let mut a = BitVec::zeros(n + 1);
        for &j in &parts {
            a.or_shifted(&any[l - 1], j);
            if ring.class_nonzero(j) {
                g.or_shifted(&good[l - 1], j);
            }
        }
        let mut bad = BitVec::zeros(n + 1);
        for &j in &parts {
            if !ring.class_nonzero(j) {
                bad.or_shifted(&any[l - 1], j);
            }
        }
        good.push(g);
        any.push(a);
        let hit = (0..=n).find(|&d| good[l].get(d) && bad.get(d));
        if let Some(d) = hit {
            let lhs = rebuild(&good, &parts, l, d, |j| ring.class_nonzero(j), None);
            let j0 = *parts
                .iter()
                .find(|&&j| !ring.class_nonzero(j) && j <= d && any[l - 1].get(d - j))
                .expect("bad part exists");
            let rhs = rebuild(&any, &parts, l - 1, d - j0, |_| true, Some(j0));
            return Some((lhs, rhs));
        }
    }
    // lengths beyond max_len only repeat degrees already covered
    None
}

fn rebuild(
    table: &[BitVec],
    parts: &[usize],
    mut l: usize,
    mut d: usize,
    allowed: impl Fn(usize) -> bool,
    extra: Option<usize>,
) -> Vec<u32> {
    let mut out: Vec<u32> = extra.map(|j| vec![j as u32]).unwrap_or_default();
    while l > 0 {
        let j = *parts
            .iter()
            .find(|&&j| allowed(j) && j <= d && table[l - 1].get(d - j))
            .expect("table is consistent");
        out.push(j as u32);
        l -= 1;
        d -= j;
    }
    out.sort_unstable();
    out
}

/// Smallest threshold `l` such that no violating pair with parts `>= l` exists.
pub fn min_threshold(ring: &OneGenRing) -> usize {
    // violations are monotone in the threshold
    let (mut lo, mut hi) = (0, ring.n + 1);
    if relation_violation(ring, 0).is_none() {
        return 0;
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if relation_violation(ring, mid).is_some() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Relation test for a map of class `mc` from a manifold with cohomology
/// `ring` into a target of codimension `-k` whose classes vanish above `big_k`.
pub fn relation_check(ring: &OneGenRing, k: usize, big_k: usize, mc: MapClass) -> Verdict {
    let k_odd = k % 2 == 1;
    match mc {
        MapClass::Fold | MapClass::Cusp | MapClass::Morin => {
            let mut hyps = Vec::new();
            if mc != MapClass::Fold {
                hyps.push(Hypothesis::new("k odd", k_odd));
            }
            if mc == MapClass::Morin {
                hyps.push(Hypothesis::new("source orientable", ring.orientable));
            }
            let threshold = k + 2 + mc.delta() + big_k;
            let mut v = Verdict::new(mc, "sw-relations", hyps);
            v = v.note(format!("parts >= {threshold}"));
            if v.hypotheses_hold() {
                if let Some((lhs, rhs)) = relation_violation(ring, threshold) {
                    v.obstruct(Witness::Relation { lhs, rhs });
                }
            }
            v
        }
        MapClass::TameCorank1 => {
            let hyps = vec![Hypothesis::new("target stably parallelizable", big_k == 0)];
            let mut v = Verdict::new(mc, "sw-vanishing", hyps);
            if v.hypotheses_hold() {
                if let Some(j) = (k + 2..=ring.n).find(|&j| ring.class_nonzero(j)) {
                    v.obstruct(Witness::NonzeroClass { degree: j as u32 });
                }
            }
            v
        }
        MapClass::Corank1 => {
            let hyps = vec![Hypothesis::new("Stiefel-Whitney relations known for class", false)];
            Verdict::new(mc, "sw-relations", hyps)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruct::Outcome;

    #[test]
    fn rp13_witness() {
        let r = OneGenRing::projective(13).unwrap();
        let (lhs, rhs) = relation_violation(&r, 4).unwrap();
        assert_eq!(lhs, vec![4, 6]);
        assert_eq!(rhs, vec![5, 5]);
        assert_eq!(min_threshold(&r), 6);
    }

    #[test]
    fn zero_ring_never_obstructed() {
        let r = OneGenRing::new(&[false; 12], true);
        for mc in MapClass::ALL {
            assert_ne!(relation_check(&r, 1, 0, mc).outcome, Outcome::Obstructed);
        }
    }

    #[test]
    fn failed_hypothesis_is_inconclusive() {
        let r = OneGenRing::projective(13).unwrap();
        assert_eq!(relation_check(&r, 2, 0, MapClass::Morin).outcome, Outcome::Inconclusive);
        assert_eq!(relation_check(&r, 1, 0, MapClass::Morin).outcome, Outcome::Obstructed);
    }
}
