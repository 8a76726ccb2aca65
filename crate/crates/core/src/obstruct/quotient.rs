use serde::{Deserialize, Serialize};

use super::{range_err, ObstructError};
use crate::dold::{dold_image, xt_basis};
use crate::gf2poly::{format_xt, BitVec, Gf2Matrix};
use crate::parity2::binom_parity_int;

/// Quotient of `im rho_k` in degree `n` by the image of the relations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub n: usize,
    pub k: usize,
    pub dim_im_rho: usize,
    pub dim_relations: usize,
    pub quotient_dim: usize,
    /// `(x exponent, t exponent)` of basis monomials spanning a complement.
    pub complement: Vec<(usize, usize)>,
    /// Quotient dimension when `p = 1` is left out of the relations.
    pub quotient_dim_without_r0: usize,
}

impl QuotientReport {
    pub fn complement_strings(&self) -> Vec<String> {
        self.complement.iter().map(|&(i, j)| format_xt(i, j)).collect()
    }
}

pub fn quotient_dim(n: usize, k: usize) -> Result<QuotientReport, ObstructError> {
    quotient_dim_opts(n, k, true)
}

/// With `include_r0 = false` the complement and `dim_relations` describe the
/// span without `R_0`.
pub fn quotient_dim_opts(n: usize, k: usize, include_r0: bool) -> Result<QuotientReport, ObstructError> {
    if n < 2 || k < 1 || k >= n {
        return Err(range_err("n >= 2 and 1 <= k < n", format!("n = {n}, k = {k}")));
    }
    let img = dold_image(n, k)?;
    let basis = xt_basis(n, k);
    let dim = img.dim_im_rho();
    let without = dim - img.rank_excluding_r0();
    let span = if include_r0 { &img.span } else { &img.span_without_r0 };
    let dim_relations = span.rank();
    let complement = span.free_cols().into_iter().map(|c| basis[c]).collect();
    Ok(QuotientReport {
        n,
        k,
        dim_im_rho: dim,
        dim_relations,
        quotient_dim: dim - dim_relations,
        complement,
        quotient_dim_without_r0: without,
    })
}

/// Outcome of the codimension `-1` fold classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Codim1Class {
    NullCobordant,
    /// `n = 2^a`, `a >= 2`.
    A1,
    /// `n = 2^(b+1) + 2^b - 1`, `b >= 1`.
    B1,
    /// `n = 2^a + 2^b - 1`, `a >= b + 2`, `b >= 1`.
    C2,
}

impl Codim1Class {
    pub fn expected_dim(self) -> usize {
        match self {
            Codim1Class::NullCobordant => 0,
            Codim1Class::A1 | Codim1Class::B1 => 1,
            Codim1Class::C2 => 2,
        }
    }

    /// Class predicted from the shape of `n` alone.
    pub fn from_shape(n: usize) -> Self {
        if n >= 4 && n.is_power_of_two() {
            return Codim1Class::A1;
        }
        // n + 1 = 2^a + 2^b with a > b >= 1
        let m = n + 1;
        if m.count_ones() == 2 && m.is_multiple_of(2) {
            let b = m.trailing_zeros();
            let a = usize::BITS - 1 - m.leading_zeros();
            return if a == b + 1 { Codim1Class::B1 } else { Codim1Class::C2 };
        }
        Codim1Class::NullCobordant
    }
}

/// Classification read off the computed quotient, cross-checked against the
/// shape of `n`.
pub fn classify_codim1(n: usize) -> Result<(Codim1Class, QuotientReport), ObstructError> {
    let rep = quotient_dim(n, 1)?;
    let class = Codim1Class::from_shape(n);
    if class.expected_dim() != rep.quotient_dim {
        return Err(range_err(
            "quotient dimension matching the shape of n",
            format!("n = {n}: computed {}, shape {:?}", rep.quotient_dim, class),
        ));
    }
    Ok((class, rep))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRecord {
    #[serde(flatten)]
    pub report: QuotientReport,
    pub satisfied: bool,
}

/// `k = 2^a - 1` with `a >= 2`: the quotient must vanish, except for a line
/// at `n = 2^s` or `2^s + 1` with `s >= a + 1`.
pub fn conjecture_holds(n: usize, k: usize, quotient_dim: usize) -> bool {
    let a = (k + 1).trailing_zeros();
    let special = |s: usize| s.is_power_of_two() && s.trailing_zeros() > a;
    match quotient_dim {
        0 => true,
        1 => special(n) || special(n - 1),
        _ => false,
    }
}

pub fn is_conjecture_k(k: usize) -> bool {
    k >= 3 && (k + 1).is_power_of_two()
}

pub fn conjecture_check(n: usize, k: usize) -> Result<ConjectureRecord, ObstructError> {
    if !is_conjecture_k(k) {
        return Err(range_err("k = 2^a - 1 with a >= 2", k));
    }
    let report = quotient_dim(n, k)?;
    let satisfied = conjecture_holds(n, k, report.quotient_dim);
    Ok(ConjectureRecord { report, satisfied })
}

/// Sequential sweep over `n <= n_max` and the given `k`, ordered by `(n, k)`.
pub fn conjecture_sweep(
    n_max: usize,
    ks: &[usize],
) -> impl Iterator<Item = Result<ConjectureRecord, ObstructError>> + '_ {
    (2..=n_max).flat_map(move |n| ks.iter().filter(move |&&k| k < n).map(move |&k| conjecture_check(n, k)))
}

/// Relations among numbers of a manifold whose stable tangent bundle comes
/// from a 2-plane bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank2Report {
    pub n: usize,
    /// Basis `w1^(n-2j) w2^j`, listed by descending `j`.
    pub basis: Vec<String>,
    pub rank: usize,
    pub quotient_dim: usize,
    /// Basis monomials spanning a complement.
    pub complement: Vec<String>,
    /// Every `R(n-2m)` has coefficient 1 at `w1^(n-2m) w2^m`.
    pub leading_ones: bool,
}

fn w12(n: usize, j: usize) -> String {
    let a = n - 2 * j;
    let mut s = Vec::new();
    match a {
        0 => {}
        1 => s.push("w1".to_string()),
        _ => s.push(format!("w1^{a}")),
    }
    match j {
        0 => {}
        1 => s.push("w2".to_string()),
        _ => s.push(format!("w2^{j}")),
    }
    s.join(" ")
}

/// `R(n-2m) = sum_j C(n-2m-1-j, 2m-2j) w1^(n-2j) w2^j` for `0 < m <= n/2`,
/// with analytic binomials.
pub fn rank2_rows(n: usize) -> Vec<BitVec> {
    let h = n / 2;
    (1..=h)
        .map(|m| {
            let mut row = BitVec::zeros(h + 1);
            for j in 0..=m {
                let u = n as i64 - 2 * m as i64 - 1 - j as i64;
                if binom_parity_int(u, (2 * m - 2 * j) as u64) == 1 {
                    // column c holds w2^(h - c)
                    row.set(h - j, true);
                }
            }
            row
        })
        .collect()
}

pub fn rank2_reduction(n: usize) -> Result<Rank2Report, ObstructError> {
    if n < 2 {
        return Err(range_err("n >= 2", n));
    }
    let h = n / 2;
    let rows = rank2_rows(n);
    let leading_ones = rows.iter().enumerate().all(|(i, r)| r.get(h - (i + 1)));
    let mut m = Gf2Matrix::new(h + 1);
    for r in &rows {
        m.insert(r).expect("basis length");
    }
    let label = |c: usize| w12(n, h - c);
    Ok(Rank2Report {
        n,
        basis: (0..=h).map(label).collect(),
        rank: m.rank(),
        quotient_dim: h + 1 - m.rank(),
        complement: m.free_cols().into_iter().map(label).collect(),
        leading_ones,
    })
}
