//! Total Steenrod squares of Stiefel-Whitney classes, Dold relations and
//! their images under the collapse maps `rho_k`.
//!
//! `rho_k` kills `w_1, ..., w_k` and sends `w_s` to `x t^(s-k-1)` with
//! `deg x = k + 1`, `deg t = 1`. For a degree `n` the image of the relation
//! space is a subspace of the span of `x^i t^(n-(k+1)i)`, `1 <= i <= n/(k+1)`,
//! listed in ascending `x` order.

use thiserror::Error;

use crate::gf2poly::{BitVec, Gf2Matrix, Insert, PolyError, WMonomial, WPoly, XtPoly};
use crate::parity2::{binom_parity, binom_parity_int};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DoldError {
    #[error("need n > k >= 1, got n = {n}, k = {k}")]
    BadParams { n: usize, k: usize },
    #[error("(s, m) = ({s}, {m}) violates s + 2m + 2 <= n - 1 for n = {n}")]
    NotInVR { n: usize, s: usize, m: usize },
    #[error("monomial of degree {deg} has no relation in degree {n}")]
    DegreeTooHigh { deg: u32, n: u32 },
    #[error("n = {0} too small")]
    TooSmall(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Parity of the Wu coefficient `C(u - d + j - 1, j)`.
///
/// The upper index is `-1` only for `d = u, j = 0`, the `Sq^u w_u = w_u^2`
/// term, where the coefficient must be 1; the analytic binomial gives that and
/// agrees with the truncating convention everywhere else.
#[inline]
pub fn wu_coeff(u: u32, d: u32, j: u32) -> u8 {
    binom_parity_int(u as i64 - d as i64 + j as i64 - 1, j as u64)
}

/// `Sq(w_u) = sum_{d<=u} sum_{j<=d} C(u-d+j-1, j) w_{u+j} w_{d-j}`, truncated at `cap`.
pub fn sq_w(u: u32, cap: u32) -> WPoly {
    assert!(u >= 1);
    let mut out = WPoly::zero(cap);
    for d in 0..=u {
        for j in 0..=d {
            if wu_coeff(u, d, j) == 0 {
                continue;
            }
            let mut parts = vec![u + j];
            if d > j {
                parts.push(d - j);
            }
            out.toggle(WMonomial::new(parts).expect("positive parts"));
        }
    }
    out
}

/// Total square of a monomial by the Cartan formula.
pub fn sq_monomial(p: &WMonomial, cap: u32) -> WPoly {
    let mut acc = WPoly::one(cap);
    for &u in p.parts() {
        acc = acc.mul(&sq_w(u, cap)).expect("same cap");
    }
    acc
}

/// Precomputed `w^{-1}` for Dold elements in a fixed degree.
pub struct DoldContext {
    n: u32,
    winv: WPoly,
    by_degree: Vec<Vec<WMonomial>>,
}

impl DoldContext {
    pub fn new(n: u32) -> Self {
        let winv = WPoly::total_class(n).series_inv().expect("unit constant term");
        let mut by_degree = vec![Vec::new(); n as usize + 1];
        for m in winv.terms() {
            by_degree[m.degree() as usize].push(m.clone());
        }
        DoldContext { n, winv, by_degree }
    }

    pub fn w_inverse(&self) -> &WPoly {
        &self.winv
    }

    /// Degree-`n` part of `w^{-1} Sq p`.
    pub fn element(&self, p: &WMonomial) -> Result<WPoly, DoldError> {
        if p.degree() >= self.n {
            return Err(DoldError::DegreeTooHigh { deg: p.degree(), n: self.n });
        }
        let sq = sq_monomial(p, self.n);
        let mut out = WPoly::zero(self.n);
        for a in sq.terms() {
            for b in &self.by_degree[(self.n - a.degree()) as usize] {
                out.toggle(a.mul(b));
            }
        }
        Ok(out)
    }
}

/// Degree-`n` part of `w^{-1} Sq p`.
pub fn dold_element(p: &WMonomial, n: u32) -> Result<WPoly, DoldError> {
    DoldContext::new(n).element(p)
}

/// The collapse homomorphism `rho_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RhoK {
    pub k: usize,
}

impl RhoK {
    pub fn new(k: usize) -> Self {
        assert!(k >= 1);
        RhoK { k }
    }

    #[inline]
    pub fn xweight(&self) -> usize {
        self.k + 1
    }

    /// Image exponents `(i, j)` of a monomial, or `None` if it is killed.
    pub fn image_monomial(&self, m: &WMonomial) -> Option<(usize, usize)> {
        if m.min_part().is_some_and(|p| p as usize <= self.k) {
            return None;
        }
        let len = m.len();
        Some((len, m.degree() as usize - self.xweight() * len))
    }

    pub fn apply(&self, wp: &WPoly, cap: usize) -> XtPoly {
        let mut out = XtPoly::zero(self.xweight(), cap);
        for m in wp.terms() {
            if let Some((i, j)) = self.image_monomial(m) {
                out.flip(i, j);
            }
        }
        out
    }
}

/// Column labels `(i, n - (k+1) i)` of the degree-`n` image, ascending in `i`.
pub fn xt_basis(n: usize, k: usize) -> Vec<(usize, usize)> {
    let w = k + 1;
    (1..=n / w).map(|i| (i, n - w * i)).collect()
}

/// Index set `{(s, m) : s + 2m + 2 <= n - 1}`, ordered by `m` then `s`.
pub fn v_r(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    let mut m = 0;
    while 2 * m + 2 < n {
        for s in 0..=(n - 3 - 2 * m) {
            out.push((s, m));
        }
        m += 1;
    }
    out
}

/// Degree-`n` slice of `(t+1)^(s+1) t^s (x+t+1)^m x^(m+1)` with `deg x = 2`.
pub fn r_sm(n: usize, s: usize, m: usize) -> Result<BitVec, DoldError> {
    if n < 3 || s + 2 * m + 2 > n - 1 {
        return Err(DoldError::NotInVR { n, s, m });
    }
    Ok(r_sm_unchecked(n, s, m))
}

fn r_sm_unchecked(n: usize, s: usize, m: usize) -> BitVec {
    let dim = n / 2;
    let mut v = BitVec::zeros(dim);
    for i in 0..=m {
        let xe = m + 1 + i;
        if 2 * xe > n {
            break;
        }
        if binom_parity(m as u64, i as i64) == 0 {
            continue;
        }
        let lower = n as i64 - 2 * m as i64 - 2 * i as i64 - 2 - s as i64;
        if binom_parity((s + 1 + m - i) as u64, lower) == 1 {
            v.set(xe - 1, true);
        }
    }
    v
}

/// `R_0`: coefficient of `x^j t^(n-2j)` is `C(n-j-1, n-2j)`.
pub fn r_zero(n: usize) -> Result<BitVec, DoldError> {
    if n < 2 {
        return Err(DoldError::TooSmall(n));
    }
    let dim = n / 2;
    let mut v = BitVec::zeros(dim);
    for j in 1..=dim {
        if binom_parity((n - j - 1) as u64, (n - 2 * j) as i64) == 1 {
            v.set(j - 1, true);
        }
    }
    Ok(v)
}

/// `rho_k(w^{-1}) = (t+1)/(x+t+1)`, truncated at `cap`.
pub fn rho_w_inverse(k: usize, cap: usize) -> XtPoly {
    let w = k + 1;
    let num = XtPoly::from_terms(w, cap, &[(0, 0), (0, 1)]);
    let den = XtPoly::from_terms(w, cap, &[(0, 0), (0, 1), (1, 0)]);
    num.mul_unchecked(&den.series_inv().expect("unit constant term"))
}

/// `rho_k(Sq w_u)` computed from the Wu formula.
pub fn rho_sq_w(k: usize, u: u32, cap: usize) -> XtPoly {
    RhoK::new(k).apply(&sq_w(u, cap as u32), cap)
}

/// Closed form of `rho_k(Sq w_u)` for `u >= k+1`:
/// `x T^(u-k-1) ((1+t)^k + x)` with `T = t(1+t)`.
pub fn rho_sq_w_closed(k: usize, u: usize, cap: usize) -> XtPoly {
    assert!(u > k);
    let w = k + 1;
    let tt = XtPoly::from_terms(w, cap, &[(0, 1), (0, 2)]);
    let mut p = XtPoly::from_terms(w, cap, &[(0, 0), (0, 1)]).pow(k as u64);
    p.flip(1, 0);
    let x = XtPoly::monomial(w, cap, 1, 0);
    x.mul_unchecked(&tt.pow((u - w) as u64)).mul_unchecked(&p)
}

/// `t`-polynomial `H_u` with `rho_k(Sq w_u) = x H_u(t)` for `u <= k`.
pub fn small_part_factor(k: usize, u: usize, len: usize) -> BitVec {
    assert!(u >= 1 && u <= k);
    let mut h = BitVec::zeros(len);
    let lo = (k + 1).saturating_sub(u);
    for d in lo..=u {
        if binom_parity((u - 1) as u64, d as i64) == 1 {
            let e = u + d - k - 1;
            if e < len {
                h.flip(e);
            }
        }
    }
    h
}

/// Image of the Dold relation space in degree `n` under `rho_k`.
#[derive(Debug, Clone)]
pub struct DoldImage {
    pub n: usize,
    pub k: usize,
    /// Span including `R_0`, over [`xt_basis`].
    pub span: Gf2Matrix,
    /// Span of the relations with `p != 1`.
    pub span_without_r0: Gf2Matrix,
}

impl DoldImage {
    pub fn dim_im_rho(&self) -> usize {
        self.span.ncols()
    }

    pub fn rank_excluding_r0(&self) -> usize {
        self.span_without_r0.rank()
    }
}

fn check_params(n: usize, k: usize) -> Result<(), DoldError> {
    if k < 1 || n <= k {
        return Err(DoldError::BadParams { n, k });
    }
    Ok(())
}

/// Row space of `rho_k([w^{-1} Sq p]_n)` over all monomials `p` of degree `< n`.
///
/// `k = 1` uses the closed-form family `R(s, m)` plus `R_0`. Other `k` run a
/// budget recursion over products of `rho_k(Sq w_u)`. Insertion stops early
/// once the span is everything.
pub fn dold_image(n: usize, k: usize) -> Result<DoldImage, DoldError> {
    check_params(n, k)?;
    if k == 1 {
        Ok(image_closed_form(n))
    } else {
        Ok(image_factored(n, k))
    }
}

fn finish(n: usize, k: usize, span: Gf2Matrix, r0: BitVec) -> DoldImage {
    let mut with = span.clone();
    if !with.is_full() {
        with.insert(&r0).expect("basis length");
    }
    DoldImage { n, k, span: with, span_without_r0: span }
}

/// `k = 1`: span of `R(s, m)` over `V_R` and `R_0`.
pub fn image_closed_form(n: usize) -> DoldImage {
    let dim = n / 2;
    let mut span = Gf2Matrix::new(dim);
    // large s first: those rows are nearly monomial and saturate quickly
    let mut m = 0;
    'outer: while 2 * m + 2 < n {
        for s in (0..=(n - 3 - 2 * m)).rev() {
            let row = r_sm_unchecked(n, s, m);
            if span.insert(&row).expect("basis length") == Insert::Independent && span.is_full() {
                break 'outer;
            }
        }
        m += 1;
    }
    let r0 = r_zero(n).expect("n >= 2");
    finish(n, 1, span, r0)
}

/// Echelon set of bit vectors tagged by the budget stage at which they entered.
/// Stages are inserted in nondecreasing order.
struct Staged {
    len: usize,
    entries: Vec<(BitVec, usize)>,
    pivot: Vec<Option<usize>>,
}

impl Staged {
    fn new(len: usize) -> Self {
        Staged { len, entries: Vec::new(), pivot: vec![None; len] }
    }

    fn insert(&mut self, mut v: BitVec, stage: usize) {
        debug_assert_eq!(v.len(), self.len);
        debug_assert!(self.entries.last().is_none_or(|e| e.1 <= stage));
        while let Some(p) = v.first_one() {
            match self.pivot[p] {
                Some(e) => v.xor_assign(&self.entries[e].0),
                None => {
                    self.pivot[p] = Some(self.entries.len());
                    self.entries.push((v, stage));
                    return;
                }
            }
        }
    }

    fn at_stage(&self, stage: usize) -> impl Iterator<Item = &BitVec> {
        let lo = self.entries.partition_point(|e| e.1 < stage);
        let hi = self.entries.partition_point(|e| e.1 <= stage);
        self.entries[lo..hi].iter().map(|e| &e.0)
    }
}

/// Truncated product of two `t`-polynomials.
fn tmul(a: &BitVec, b: &BitVec, len: usize) -> BitVec {
    let mut out = BitVec::zeros(len);
    let b = b.resized(len);
    for c in a.ones() {
        if c >= len {
            break;
        }
        out.xor_shifted(&b, c);
    }
    out
}

/// General `k`.
///
/// With `T = t(1+t)` and `P = (1+t)^k + x`, `rho_k(Sq w_u) = x T^(u-k-1) P`
/// for `u > k` and `x H_u(t)` for `u <= k`. A monomial with `A` parts above `k`
/// and `j` parts at most `k` therefore maps to `x^(A+j) T^E P^A h` with `h` a
/// product of `j` factors `H_u`. The `t`-polynomial spaces
/// `S_j(b) = span{h : budget <= b}` and `D_j(b) = S_j(b) + T D_j(b-1)` carry the
/// budget; the slices are taken against `Q (xP)^A x^j`, `Q = rho_k(w^{-1})`.
pub fn image_factored(n: usize, k: usize) -> DoldImage {
    let w = k + 1;
    let dim = n / w;
    let mut span = Gf2Matrix::new(dim);
    let budget = n - 1;

    let small: Vec<(usize, BitVec)> = (1..=k.min(budget))
        .map(|u| (u, small_part_factor(k, u, n + 1)))
        .filter(|(_, h)| !h.is_zero())
        .collect();

    // S_j, truncated at t-degree n - w*j
    let mut s_layers: Vec<Staged> = Vec::with_capacity(dim + 1);
    let mut s0 = Staged::new(n + 1);
    s0.insert(BitVec::from_ones(n + 1, &[0]), 0);
    s_layers.push(s0);
    for j in 1..=dim {
        let len = n - w * j + 1;
        let prev = &s_layers[j - 1];
        let mut cur = Staged::new(len);
        if !small.is_empty() {
            for sigma in 0..=budget {
                for (u, h) in &small {
                    if *u > sigma {
                        continue;
                    }
                    let cands: Vec<BitVec> = prev.at_stage(sigma - u).map(|v| tmul(h, v, len)).collect();
                    for c in cands {
                        cur.insert(c, sigma);
                    }
                }
            }
        }
        let empty = cur.entries.is_empty();
        s_layers.push(cur);
        if empty {
            break;
        }
    }

    let q = rho_w_inverse(k, n);
    let mut xp = XtPoly::from_terms(w, n, &[(0, 0), (0, 1)]).pow(k as u64);
    xp.flip(1, 0);
    xp = XtPoly::monomial(w, n, 1, 0).mul_unchecked(&xp);

    // slice_n(F x^j v): column i-1 gets sum_c F[i-j][c] v[n - w i - c]
    let contribute = |f: &XtPoly, j: usize, v: &BitVec, span: &mut Gf2Matrix| -> bool {
        let vr = v.resized(n + 1).reversed();
        let mut row = BitVec::zeros(dim);
        let mut any = false;
        for i in (j + 1)..=dim {
            let r = i - j;
            if r > f.xcap() {
                break;
            }
            if f.row(r).dot_offset(&vr, w * i) {
                row.set(i - 1, true);
                any = true;
            }
        }
        any && span.insert(&row).expect("basis length") == Insert::Independent && span.is_full()
    };

    // D_j at the largest budget; smaller budgets and truncations are filters
    let tt = BitVec::from_ones(n + 1, &[1, 2]);
    let mut d_layers: Vec<Staged> = Vec::new();
    if w <= budget {
        let bmax = budget - w;
        for (j, s_j) in s_layers.iter().enumerate() {
            if j + 1 > dim {
                break;
            }
            let dlen = n - w * (j + 1) + 1;
            let mut d = Staged::new(dlen);
            for b in 0..=bmax {
                let mut cands: Vec<BitVec> = s_j.at_stage(b).map(|v| v.resized(dlen)).collect();
                if b > 0 {
                    cands.extend(d.at_stage(b - 1).map(|v| tmul(&tt, v, dlen)));
                }
                for c in cands {
                    d.insert(c, b);
                }
            }
            d_layers.push(d);
        }
    }

    let mut f = q.clone();
    'outer: for a in 1..=dim {
        if a * w > budget {
            break;
        }
        f = f.mul_unchecked(&xp);
        let b_a = budget - a * w;
        for (j, d) in d_layers.iter().enumerate() {
            if a + j > dim {
                break;
            }
            let trunc = n - w * (a + j);
            for (v, stage) in &d.entries {
                if *stage > b_a {
                    break;
                }
                if v.first_one().is_some_and(|p| p > trunc) {
                    continue;
                }
                if contribute(&f, j, v, &mut span) {
                    break 'outer;
                }
            }
        }
    }
    if !span.is_full() {
        'small: for (j, s_j) in s_layers.iter().enumerate().skip(1) {
            for (v, _) in &s_j.entries {
                if contribute(&q, j, v, &mut span) {
                    break 'small;
                }
            }
        }
    }
    let one = BitVec::from_ones(1, &[0]);
    let mut r0 = BitVec::zeros(dim);
    {
        let mut tmp = Gf2Matrix::new(dim);
        contribute(&q, 0, &one, &mut tmp);
        if let Some(row) = tmp.rows().first() {
            r0 = row.clone();
        }
    }
    finish(n, k, span, r0)
}

/// Literal budget recursion `W_0 = <1>`, `W_d = sum_u G_u W_{d-u}` with
/// `G_u = rho_k(Sq w_u)` taken from the Wu formula. Slow; used to cross-check.
pub fn image_reference(n: usize, k: usize) -> Result<DoldImage, DoldError> {
    check_params(n, k)?;
    let w = k + 1;
    let dim = n / w;
    let g: Vec<XtPoly> = (0..n).map(|u| if u == 0 { XtPoly::zero(w, n) } else { rho_sq_w(k, u as u32, n) }).collect();
    let flat = |p: &XtPoly| -> BitVec {
        let mut bits = Vec::new();
        for i in 0..=p.xcap() {
            let r = p.row(i);
            bits.extend((0..r.len()).map(|c| r.get(c)));
        }
        BitVec::from_bits(bits)
    };
    let q = rho_w_inverse(k, n);
    let mut layers: Vec<Vec<XtPoly>> = vec![vec![XtPoly::one(w, n)]];
    let mut span = Gf2Matrix::new(dim);
    for d in 1..n {
        let mut basis: Vec<XtPoly> = Vec::new();
        let mut echelon: Option<Gf2Matrix> = None;
        for u in 1..=d {
            if g[u].is_zero() {
                continue;
            }
            for y in &layers[d - u] {
                let prod = g[u].mul_unchecked(y);
                if prod.is_zero() {
                    continue;
                }
                let fv = flat(&prod);
                let e = echelon.get_or_insert_with(|| Gf2Matrix::new(fv.len()));
                if e.insert(&fv).expect("fixed layout") == Insert::Independent {
                    basis.push(prod);
                }
            }
        }
        for y in &basis {
            let row = q.mul_unchecked(y).slice(n).expect("within cap");
            span.insert(&row).expect("basis length");
        }
        layers.push(basis);
    }
    let r0 = q.slice(n).expect("within cap");
    Ok(finish(n, k, span, r0))
}
