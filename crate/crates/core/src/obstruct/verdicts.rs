use serde::{Deserialize, Serialize};

use super::{min_threshold, range_err, relation_check, Hypothesis, MapClass, ObstructError, OneGenRing, Outcome};
use super::{Verdict, Witness};
use crate::parity2::{kappa, MAX_KAPPA_N};

/// All verdicts for one source/target pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictSet {
    pub source: String,
    pub target: String,
    pub k: i64,
    /// Smallest part threshold with no violated relation (projective sources only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_threshold: Option<usize>,
    pub verdicts: Vec<Verdict>,
}

impl VerdictSet {
    pub fn obstructed(&self, mc: MapClass) -> bool {
        self.verdicts.iter().any(|v| v.map_class == mc && v.is_obstructed())
    }

    pub fn any_obstructed(&self) -> bool {
        self.verdicts.iter().any(Verdict::is_obstructed)
    }
}

/// `n = 2^d + c` with `c` odd and `0 <= c < 2^d - 2`.
fn closed_form_shape(n: usize) -> Option<(u32, u64)> {
    if n < 2 {
        return None;
    }
    let d = usize::BITS - 1 - n.leading_zeros();
    let c = (n - (1 << d)) as u64;
    (c % 2 == 1 && c + 2 < (1u64 << d)).then_some((d, c))
}

/// `d` with `n = 2^d - 1`, if any.
fn mersenne(n: usize) -> Option<u32> {
    (n + 1).is_power_of_two().then(|| (n + 1).trailing_zeros())
}

/// Verdicts for maps `RP^n -> R^target`, `k = n - target >= 0`.
pub fn rp_verdict(n: usize, target: usize) -> Result<VerdictSet, ObstructError> {
    if target == 0 || target > n {
        return Err(range_err("1 <= target <= n", format!("n = {n}, target = {target}")));
    }
    let ring = OneGenRing::projective(n)?;
    let k = n - target;
    let mut out = Vec::new();

    for mc in [MapClass::Fold, MapClass::Cusp, MapClass::Morin, MapClass::TameCorank1] {
        out.push(relation_check(&ring, k, 0, mc));
    }
    // for even k every fold map is tame
    if k.is_multiple_of(2) {
        let mut v = relation_check(&ring, k, 0, MapClass::TameCorank1);
        v.map_class = MapClass::Fold;
        out.push(v.note("even k: fold maps are tame"));
    }

    if let Some(d) = mersenne(n) {
        let applies = (4..=MAX_KAPPA_N).contains(&d);
        let mut classes = vec![MapClass::TameCorank1];
        if k.is_multiple_of(2) {
            classes.push(MapClass::Fold);
        }
        for mc in classes {
            let mut hyps = vec![Hypothesis::new("n = 2^d - 1 with d >= 4", applies)];
            if mc == MapClass::Fold {
                hyps.push(Hypothesis::new("k even", true));
            }
            let mut v = Verdict::new(mc, "gamma-dimension", hyps);
            if applies {
                let kap = kappa(d).expect("d in range");
                if k as u64 + 2 <= kap {
                    v.obstruct(Witness::Gamma { kappa: kap, k: k as u64 });
                }
            }
            out.push(v);
        }
    }

    if let Some((d, c)) = closed_form_shape(n) {
        let hyps = vec![Hypothesis::new("n = 2^d + c, c odd, c < 2^d - 2", true)];
        let mut fold = Verdict::new(MapClass::Fold, "rp-closed-form", hyps.clone());
        if (k as u64) + 1 < c {
            fold.obstruct(Witness::ClosedForm { d, c });
        }
        out.push(fold);
        let mut hm = hyps;
        hm.push(Hypothesis::new("k odd", k % 2 == 1));
        let mut morin = Verdict::new(MapClass::Morin, "rp-closed-form", hm);
        if (k as u64) + 2 < c {
            morin.obstruct(Witness::ClosedForm { d, c });
        }
        out.push(morin);
    }

    out.push(transversality(n, k));

    Ok(VerdictSet {
        source: format!("RP{n}"),
        target: format!("R{target}"),
        k: k as i64,
        min_threshold: Some(min_threshold(&ring)),
        verdicts: out,
    })
}

/// Corank-1 maps exist when `dim M < 2(k+2)`.
fn transversality(dim: usize, k: usize) -> Verdict {
    let v = Verdict::new(MapClass::Corank1, "transversality", vec![Hypothesis::new("dim M < 2(k+2)", true)]);
    if dim < 2 * (k + 2) {
        v.with_outcome(Outcome::Exists)
    } else {
        v.with_outcome(Outcome::Inconclusive).note("dimension too large for the transversality bound")
    }
}

/// Corank-1 verdict for `CP^n -> Q^target` with `Q` stably parallelizable,
/// `k = 2n - target`.
pub fn cp_verdict(n: usize, target: usize) -> Result<VerdictSet, ObstructError> {
    if n < 1 || target > 2 * n || target == 0 {
        return Err(range_err("n >= 1 and 1 <= target <= 2n", format!("n = {n}, target = {target}")));
    }
    let k = 2 * n - target;
    let i = n / 2;
    let hyps = vec![Hypothesis::new("target stably parallelizable", true), Hypothesis::new("n >= 2", n >= 2)];
    let mut pont = Verdict::new(MapClass::Corank1, "pontryagin-vanishing", hyps);
    // p_i = C(n+1, i) y with C(n+1, i) > 0; it must vanish once 2i > k+1
    if n >= 2 && 2 * i >= k + 2 {
        pont.obstruct(Witness::Pontryagin { i: i as u64, coefficient: format!("C({}, {})", n + 1, i) });
    }
    let out = vec![pont, transversality(2 * n, k)];
    Ok(VerdictSet {
        source: format!("CP{n}"),
        target: format!("Q{target}"),
        k: k as i64,
        min_threshold: None,
        verdicts: out,
    })
}
