use super::bits::BitVec;
use super::PolyError;

/// Truncated mod-2 polynomial in `x` (weight `xweight`) and `t` (weight 1).
///
/// Row `i` holds the `t`-coefficients of `x^i`, for `t`-exponents
/// `0..=cap - xweight * i`. Every stored monomial has weighted degree at most `cap`.
#[derive(Clone, PartialEq, Eq)]
pub struct XtPoly {
    xweight: usize,
    cap: usize,
    rows: Vec<BitVec>,
}

impl XtPoly {
    pub fn zero(xweight: usize, cap: usize) -> Self {
        assert!(xweight >= 1, "x must have positive weight");
        let xcap = cap / xweight;
        let rows = (0..=xcap).map(|i| BitVec::zeros(cap - xweight * i + 1)).collect();
        XtPoly { xweight, cap, rows }
    }

    pub fn one(xweight: usize, cap: usize) -> Self {
        Self::monomial(xweight, cap, 0, 0)
    }

    /// `x^i t^j`, or zero if it exceeds the cap.
    pub fn monomial(xweight: usize, cap: usize, i: usize, j: usize) -> Self {
        let mut p = Self::zero(xweight, cap);
        p.flip(i, j);
        p
    }

    pub fn from_terms(xweight: usize, cap: usize, terms: &[(usize, usize)]) -> Self {
        let mut p = Self::zero(xweight, cap);
        for &(i, j) in terms {
            p.flip(i, j);
        }
        p
    }

    /// Polynomial in `t` alone from its coefficient bits.
    pub fn from_t_poly(xweight: usize, cap: usize, coeffs: &BitVec) -> Self {
        let mut p = Self::zero(xweight, cap);
        let len = p.rows[0].len();
        p.rows[0] = coeffs.resized(len);
        p
    }

    #[inline]
    pub fn xweight(&self) -> usize {
        self.xweight
    }

    #[inline]
    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Largest storable `x`-exponent.
    #[inline]
    pub fn xcap(&self) -> usize {
        self.rows.len() - 1
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        i < self.rows.len() && j < self.rows[i].len() && self.rows[i].get(j)
    }

    /// Toggle `x^i t^j`; monomials beyond the cap are dropped.
    pub fn flip(&mut self, i: usize, j: usize) {
        if i < self.rows.len() && j < self.rows[i].len() {
            self.rows[i].flip(j);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    /// Monomials `(i, j)` in ascending `(i, j)` order.
    pub fn terms(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            out.extend(r.ones().map(|j| (i, j)));
        }
        out
    }

    fn check_compatible(&self, other: &XtPoly) -> Result<(), PolyError> {
        if self.xweight != other.xweight || self.cap != other.cap {
            return Err(PolyError::Mismatch {
                left: (self.xweight, self.cap),
                right: (other.xweight, other.cap),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &XtPoly) -> Result<XtPoly, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub(crate) fn add_assign(&mut self, other: &XtPoly) {
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            a.xor_assign(b);
        }
    }

    pub fn mul(&self, other: &XtPoly) -> Result<XtPoly, PolyError> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &XtPoly) -> XtPoly {
        let mut out = XtPoly::zero(self.xweight, self.cap);
        let xcap = self.xcap();
        for (i1, r1) in self.rows.iter().enumerate() {
            if r1.is_zero() {
                continue;
            }
            for (i2, r2) in other.rows.iter().enumerate() {
                if i1 + i2 > xcap {
                    break;
                }
                if r2.is_zero() {
                    continue;
                }
                let dst = &mut out.rows[i1 + i2];
                let src = r2.resized(dst.len());
                for c in r1.ones() {
                    if c >= dst.len() {
                        break;
                    }
                    dst.xor_shifted(&src, c);
                }
            }
        }
        out
    }

    /// Square via Frobenius: `x^i t^j -> x^2i t^2j`.
    pub fn square(&self) -> XtPoly {
        let mut out = XtPoly::zero(self.xweight, self.cap);
        for (i, j) in self.terms() {
            out.flip(2 * i, 2 * j);
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> XtPoly {
        let mut base = self.clone();
        let mut acc = XtPoly::one(self.xweight, self.cap);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Multiplicative inverse up to the cap; requires constant term 1.
    pub fn series_inv(&self) -> Result<XtPoly, PolyError> {
        if !self.get(0, 0) {
            return Err(PolyError::NotInvertible);
        }
        // 1/(1+e) = prod_j (1 + e^(2^j)) over GF(2), and e has degree >= 1
        let mut e = self.clone();
        e.flip(0, 0);
        let mut acc = XtPoly::one(self.xweight, self.cap);
        while !e.is_zero() {
            let mut f = e.clone();
            f.flip(0, 0);
            acc = acc.mul_unchecked(&f);
            e = e.square();
        }
        Ok(acc)
    }

    /// Coefficients of `x^i t^(n - xweight*i)` for `i = 1..=n/xweight`.
    pub fn slice(&self, n: usize) -> Result<BitVec, PolyError> {
        if n > self.cap {
            return Err(PolyError::BeyondCap { n, cap: self.cap });
        }
        let w = self.xweight;
        let dim = n / w;
        let mut v = BitVec::zeros(dim);
        for i in 1..=dim {
            if self.get(i, n - w * i) {
                v.set(i - 1, true);
            }
        }
        Ok(v)
    }

    /// Weighted-homogeneous component of degree `n`, as a polynomial.
    pub fn component(&self, n: usize) -> XtPoly {
        let mut out = XtPoly::zero(self.xweight, self.cap);
        let w = self.xweight;
        for i in 0..=(n.min(self.cap) / w) {
            if self.get(i, n - w * i) {
                out.flip(i, n - w * i);
            }
        }
        out
    }

    /// Lowest weighted degree carrying a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms().into_iter().map(|(i, j)| self.xweight * i + j).min()
    }
}

impl std::fmt::Debug for XtPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        let s: Vec<String> = terms.iter().map(|&(i, j)| format_xt(i, j)).collect();
        f.write_str(&s.join(" + "))
    }
}

/// Human form of `x^i t^j`, e.g. `x^2t^5`, `xt`, `1`.
pub fn format_xt(i: usize, j: usize) -> String {
    let mut s = String::new();
    match i {
        0 => {}
        1 => s.push('x'),
        _ => s.push_str(&format!("x^{i}")),
    }
    match j {
        0 => {}
        1 => s.push('t'),
        _ => s.push_str(&format!("t^{j}")),
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}
