use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::external::top_number_note;
use super::{range_err, Hypothesis, MapClass, ObstructError, Verdict, Witness};
use crate::dold::DoldContext;
use crate::gf2poly::{partitions, BitVec, Gf2Matrix, WMonomial};

/// Literal Dold elements are expanded symbolically; beyond this degree that
/// is too slow to be useful.
pub const NUMBERS_MAX_N: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberEntry {
    pub partition: Vec<u32>,
    pub value: u8,
}

/// A total functional `w_I -> w_I[M]` on the degree-`n` monomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharNumbers {
    pub n: u32,
    pub numbers: Vec<NumberEntry>,
}

impl CharNumbers {
    /// The functional that is 1 exactly on `ones`.
    pub fn indicator(n: u32, ones: &[WMonomial]) -> Self {
        let numbers = partitions(n, 1, None)
            .map(|p| NumberEntry { value: ones.contains(&p) as u8, partition: p.parts().to_vec() })
            .collect();
        CharNumbers { n, numbers }
    }

    fn table(&self) -> Result<BTreeMap<WMonomial, bool>, ObstructError> {
        let mut out = BTreeMap::new();
        for e in &self.numbers {
            let m = WMonomial::new(e.partition.clone())
                .map_err(|_| range_err("positive parts", format!("{:?}", e.partition)))?;
            if m.degree() != self.n {
                return Err(ObstructError::WrongDegree {
                    partition: m.to_string(),
                    expected: self.n,
                    got: m.degree(),
                });
            }
            if e.value > 1 {
                return Err(range_err("value 0 or 1", e.value));
            }
            if out.insert(m.clone(), e.value == 1).is_some() {
                return Err(ObstructError::DuplicateNumber(m.to_string()));
            }
        }
        for p in partitions(self.n, 1, None) {
            if !out.contains_key(&p) {
                return Err(ObstructError::MissingNumber(p.to_string()));
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub monomial: String,
    pub value: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumbersVerdict {
    pub n: u32,
    pub k: usize,
    pub verdict: Verdict,
    /// Number of degree-`n` monomials.
    pub basis_size: usize,
    pub relations_rank: usize,
    /// Values on monomials spanning a complement of the relations; empty when obstructed.
    pub residual: Vec<ResidualEntry>,
}

struct Relation {
    terms: Vec<WMonomial>,
    source: &'static str,
}

fn relations(n: u32, k: usize, mc: MapClass, hyp: usize, include_unit: bool, basis: &[WMonomial]) -> Vec<Relation> {
    let mut out = Vec::new();
    let single = |m: &WMonomial, source| Relation { terms: vec![m.clone()], source };

    if hyp >= 1 {
        for m in basis.iter().filter(|m| m.min_part().is_some_and(|p| p as usize <= hyp)) {
            out.push(single(m, "vanishing-hypothesis"));
        }
        // the lowest nonzero class sits in a power-of-two degree
        let j = hyp as u32 + 1;
        if !j.is_power_of_two() {
            for m in basis.iter().filter(|m| m.contains(j)) {
                out.push(single(m, "first-nonzero-class"));
            }
        }
    }

    match mc {
        MapClass::Fold | MapClass::Cusp | MapClass::Morin => {
            let lo = (k + 1 + mc.delta()) as u32;
            let mut by_len: HashMap<usize, Vec<&WMonomial>> = HashMap::new();
            for m in basis.iter().filter(|m| m.min_part().is_some_and(|p| p >= lo)) {
                by_len.entry(m.len()).or_default().push(m);
            }
            let mut lens: Vec<_> = by_len.keys().copied().collect();
            lens.sort_unstable();
            for l in lens {
                for w in by_len[&l].windows(2) {
                    out.push(Relation { terms: vec![w[0].clone(), w[1].clone()], source: "equal-length" });
                }
            }
        }
        MapClass::TameCorank1 => {
            for m in basis.iter().filter(|m| m.parts().last().is_some_and(|&p| p as usize >= k + 2)) {
                out.push(single(m, "sw-vanishing"));
            }
        }
        MapClass::Corank1 => {}
    }

    let ctx = DoldContext::new(n);
    for d in (!include_unit as u32)..n {
        for p in partitions(d, 1, None) {
            let e = ctx.element(&p).expect("degree below n");
            if !e.is_zero() {
                out.push(Relation { terms: e.terms().cloned().collect(), source: "dold" });
            }
        }
    }
    out
}

/// Evaluate a functional on the relations forced by a map of class `mc` into a
/// stably parallelizable target of codimension `-k`, with `w_1 .. w_hyp`
/// assumed zero.
pub fn numbers_check(cn: &CharNumbers, k: usize, mc: MapClass, hyp: usize) -> Result<NumbersVerdict, ObstructError> {
    numbers_check_opts(cn, k, mc, hyp, true)
}

/// As [`numbers_check`]; `include_unit = false` drops the relation of `p = 1`,
/// the vanishing of the top dual class.
pub fn numbers_check_opts(
    cn: &CharNumbers,
    k: usize,
    mc: MapClass,
    hyp: usize,
    include_unit: bool,
) -> Result<NumbersVerdict, ObstructError> {
    let n = cn.n;
    if !(2..=NUMBERS_MAX_N).contains(&n) {
        return Err(range_err("2 <= n <= 24", n));
    }
    if k < 1 || k >= n as usize {
        return Err(range_err("1 <= k < n", k));
    }
    let table = cn.table()?;

    // long monomials first so that short ones end up as complement representatives
    let mut basis: Vec<WMonomial> = table.keys().cloned().collect();
    basis.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.parts().cmp(b.parts())));
    let index: HashMap<&WMonomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut hyps = vec![Hypothesis::new("target stably parallelizable", true)];
    if mc == MapClass::Morin {
        hyps.push(Hypothesis::new("k odd", k % 2 == 1));
    }
    let mut verdict = Verdict::new(mc, "dold-relations", hyps);
    if mc == MapClass::Corank1 {
        verdict = verdict.note("no class-specific relations; only universal ones are tested");
    }
    let rels = if verdict.hypotheses_hold() {
        relations(n, k, mc, hyp, include_unit, &basis)
    } else {
        Vec::new()
    };

    let value = |r: &Relation| r.terms.iter().fold(false, |acc, m| acc ^ table[m]);
    if let Some(r) = rels.iter().find(|r| value(r)) {
        let s: Vec<String> = r.terms.iter().map(|m| m.to_string()).collect();
        verdict.obstruct(Witness::Functional { relation: s.join(" + "), source: r.source.to_string() });
        return Ok(NumbersVerdict {
            n,
            k,
            verdict,
            basis_size: basis.len(),
            relations_rank: 0,
            residual: Vec::new(),
        });
    }

    let mut span = Gf2Matrix::new(basis.len());
    for r in &rels {
        let row = BitVec::from_ones(basis.len(), &r.terms.iter().map(|m| index[m]).collect::<Vec<_>>());
        span.insert(&row).expect("basis length");
        if span.is_full() {
            break;
        }
    }
    let residual: Vec<ResidualEntry> = span
        .free_cols()
        .into_iter()
        .map(|c| ResidualEntry { monomial: basis[c].to_string(), value: table[&basis[c]] as u8 })
        .collect();
    let top = WMonomial::w(n).to_string();
    if residual.len() == 1 && residual[0].monomial == top {
        if let Some(note) = top_number_note(n as usize, k) {
            verdict = verdict.note(note);
        }
    }
    Ok(NumbersVerdict { n, k, verdict, basis_size: basis.len(), relations_rank: span.rank(), residual })
}
