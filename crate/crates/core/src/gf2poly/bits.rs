use std::fmt;

/// Fixed-length bit vector packed into 64-bit words, low bit first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn nwords(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; nwords(len)] }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = BitVec::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_ones(len: usize, ones: &[usize]) -> Self {
        let mut v = BitVec::zeros(len);
        for &i in ones {
            v.flip(i);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let m = 1u64 << (i & 63);
        if b {
            self.words[i >> 6] |= m;
        } else {
            self.words[i >> 6] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }

    /// `self ^= other`; lengths must agree.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &BitVec) -> bool {
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() & 1 == 1
    }

    /// `self ^= (src << shift)` truncated to `self.len()`.
    pub fn xor_shifted(&mut self, src: &BitVec, shift: usize) {
        self.combine_shifted(src, shift, |a, b| *a ^= b);
    }

    /// `self |= src << shift`, truncated to `self.len()`.
    pub fn or_shifted(&mut self, src: &BitVec, shift: usize) {
        self.combine_shifted(src, shift, |a, b| *a |= b);
    }

    #[inline]
    fn combine_shifted(&mut self, src: &BitVec, shift: usize, op: impl Fn(&mut u64, u64)) {
        if shift >= self.len {
            return;
        }
        let ws = shift >> 6;
        let bs = shift & 63;
        let n = self.words.len();
        for (k, &w) in src.words.iter().enumerate() {
            let lo = k + ws;
            if lo >= n {
                break;
            }
            if bs == 0 {
                op(&mut self.words[lo], w);
            } else {
                op(&mut self.words[lo], w << bs);
                if lo + 1 < n {
                    op(&mut self.words[lo + 1], w >> (64 - bs));
                }
            }
        }
        self.mask_tail();
    }

    pub fn dot_offset(&self, other: &BitVec, offset: usize) -> bool {
        if offset >= other.len {
            return false;
        }
        let ws = offset >> 6;
        let bs = offset & 63;
        let ow = &other.words;
        let mut acc = 0u64;
        for (k, &a) in self.words.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let lo = k + ws;
            if lo >= ow.len() {
                break;
            }
            let mut seg = ow[lo] >> bs;
            if bs != 0 && lo + 1 < ow.len() {
                seg |= ow[lo + 1] << (64 - bs);
            }
            acc ^= a & seg;
        }
        acc.count_ones() & 1 == 1
    }

    /// Copy truncated or zero-extended to `len` bits.
    pub fn resized(&self, len: usize) -> BitVec {
        let mut v = BitVec::zeros(len);
        let n = v.words.len().min(self.words.len());
        v.words[..n].copy_from_slice(&self.words[..n]);
        v.mask_tail();
        v
    }

    /// Bit-reversed copy: `out[i] = self[len - 1 - i]`.
    pub fn reversed(&self) -> BitVec {
        let mut v = BitVec::zeros(self.len);
        for i in self.ones() {
            v.set(self.len - 1 - i, true);
        }
        v
    }

    fn mask_tail(&mut self) {
        let r = self.len & 63;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}
