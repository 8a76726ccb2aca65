use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::PolyError;

/// Monomial `w_{p1} w_{p2} ...` in the Stiefel-Whitney generators.
///
/// Parts are kept sorted ascending; the empty monomial is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WMonomial {
    parts: Vec<u32>,
    degree: u32,
}

impl WMonomial {
    pub fn unit() -> Self {
        WMonomial { parts: Vec::new(), degree: 0 }
    }

    /// Build from parts in any order; parts must be positive.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, PolyError> {
        if parts.contains(&0) {
            return Err(PolyError::ZeroPart);
        }
        parts.sort_unstable();
        let degree = parts.iter().sum();
        Ok(WMonomial { parts, degree })
    }

    pub fn w(i: u32) -> Self {
        assert!(i > 0, "w_0 is the unit");
        WMonomial { parts: vec![i], degree: i }
    }

    #[inline]
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn is_unit(&self) -> bool {
        self.parts.is_empty()
    }

    /// Smallest index, if any.
    pub fn min_part(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.parts.binary_search(&i).is_ok()
    }

    pub fn mul(&self, other: &WMonomial) -> WMonomial {
        let mut parts = Vec::with_capacity(self.parts.len() + other.parts.len());
        let (mut a, mut b) = (0, 0);
        while a < self.parts.len() && b < other.parts.len() {
            if self.parts[a] <= other.parts[b] {
                parts.push(self.parts[a]);
                a += 1;
            } else {
                parts.push(other.parts[b]);
                b += 1;
            }
        }
        parts.extend_from_slice(&self.parts[a..]);
        parts.extend_from_slice(&other.parts[b..]);
        WMonomial { parts, degree: self.degree + other.degree }
    }

    /// Remove one copy of `w_i`, if present.
    pub fn without(&self, i: u32) -> Option<WMonomial> {
        let pos = self.parts.binary_search(&i).ok()?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(WMonomial { parts, degree: self.degree - i })
    }
}

impl PartialOrd for WMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded order: degree first, then parts lexicographically.
impl Ord for WMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.parts.cmp(&other.parts))
    }
}

impl fmt::Display for WMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut k = 0;
        while k < self.parts.len() {
            let p = self.parts[k];
            let mut e = 1;
            while k + e < self.parts.len() && self.parts[k + e] == p {
                e += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "w{p}")?;
            } else {
                write!(f, "w{p}^{e}")?;
            }
            k += e;
        }
        Ok(())
    }
}

impl fmt::Debug for WMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Mod-2 sum of monomials of degree at most `cap`.
#[derive(Clone, PartialEq, Eq)]
pub struct WPoly {
    cap: u32,
    terms: BTreeSet<WMonomial>,
}

impl WPoly {
    pub fn zero(cap: u32) -> Self {
        WPoly { cap, terms: BTreeSet::new() }
    }

    pub fn one(cap: u32) -> Self {
        Self::from_monomial(cap, WMonomial::unit())
    }

    pub fn from_monomial(cap: u32, m: WMonomial) -> Self {
        let mut p = Self::zero(cap);
        p.toggle(m);
        p
    }

    /// Total class `1 + w_1 + ... + w_cap`.
    pub fn total_class(cap: u32) -> Self {
        let mut p = Self::one(cap);
        for i in 1..=cap {
            p.toggle(WMonomial::w(i));
        }
        p
    }

    #[inline]
    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Add one copy of `m` mod 2; ignored beyond the cap.
    pub fn toggle(&mut self, m: WMonomial) {
        if m.degree() > self.cap {
            return;
        }
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn contains(&self, m: &WMonomial) -> bool {
        self.terms.contains(m)
    }

    pub fn terms(&self) -> impl Iterator<Item = &WMonomial> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &WPoly) -> Result<(), PolyError> {
        if self.cap != other.cap {
            return Err(PolyError::Mismatch {
                left: (0, self.cap as usize),
                right: (0, other.cap as usize),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &WPoly) -> Result<WPoly, PolyError> {
        self.check(other)?;
        let terms = self.terms.symmetric_difference(&other.terms).cloned().collect();
        Ok(WPoly { cap: self.cap, terms })
    }

    pub fn mul(&self, other: &WPoly) -> Result<WPoly, PolyError> {
        self.check(other)?;
        let mut out = WPoly::zero(self.cap);
        for a in &self.terms {
            for b in &other.terms {
                if a.degree() + b.degree() <= self.cap {
                    out.toggle(a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &WMonomial) -> WPoly {
        let mut out = WPoly::zero(self.cap);
        for a in &self.terms {
            out.toggle(a.mul(m));
        }
        out
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> WPoly {
        let terms = self.terms.iter().filter(|m| m.degree() == d).cloned().collect();
        WPoly { cap: self.cap, terms }
    }

    /// Multiplicative inverse up to the cap; requires constant term 1.
    pub fn series_inv(&self) -> Result<WPoly, PolyError> {
        if !self.contains(&WMonomial::unit()) {
            return Err(PolyError::NotInvertible);
        }
        let cap = self.cap;
        let comps: Vec<Vec<&WMonomial>> = (0..=cap)
            .map(|d| self.terms.iter().filter(|m| m.degree() == d).collect())
            .collect();
        // q_d = sum_{e >= 1} p_e q_{d-e}
        let mut q: Vec<BTreeSet<WMonomial>> = vec![BTreeSet::new(); cap as usize + 1];
        q[0].insert(WMonomial::unit());
        for d in 1..=cap as usize {
            let mut acc = BTreeSet::new();
            for e in 1..=d {
                for a in &comps[e] {
                    for b in &q[d - e] {
                        let m = a.mul(b);
                        if !acc.remove(&m) {
                            acc.insert(m);
                        }
                    }
                }
            }
            q[d] = acc;
        }
        Ok(WPoly { cap, terms: q.into_iter().flatten().collect() })
    }
}

impl fmt::Display for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let s: Vec<String> = self.terms.iter().map(|m| m.to_string()).collect();
        f.write_str(&s.join(" + "))
    }
}

impl fmt::Debug for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
