use super::wpoly::WMonomial;

/// Partitions of `n` with all parts `>= min_part`, as ascending part lists in
/// lexicographic order. `partitions(0, _, _)` yields the unit monomial once.
pub fn partitions(n: u32, min_part: u32, fixed_length: Option<usize>) -> Partitions {
    Partitions::new(n, min_part.max(1), fixed_length)
}

pub struct Partitions {
    fixed_length: Option<usize>,
    cur: Option<Vec<u32>>,
    started: bool,
}

/// Lexicographically smallest ascending completion of `r` with parts `>= c`.
fn smallest_completion(out: &mut Vec<u32>, r: u32, c: u32) -> bool {
    if r == 0 {
        return true;
    }
    if r < c {
        return false;
    }
    let q = r / c;
    for _ in 0..q - 1 {
        out.push(c);
    }
    out.push(r - (q - 1) * c);
    true
}

impl Partitions {
    fn new(n: u32, min_part: u32, fixed_length: Option<usize>) -> Self {
        let mut first = Vec::new();
        let cur = if smallest_completion(&mut first, n, min_part) { Some(first) } else { None };
        Partitions { fixed_length, cur, started: false }
    }

    fn advance(&mut self) {
        let Some(a) = self.cur.as_mut() else { return };
        let len = a.len();
        if len < 2 {
            self.cur = None;
            return;
        }
        // merge the last two parts and bump the smaller one minimally
        let i = len - 2;
        let total = a[i] + a[i + 1];
        let bumped = a[i] + 1;
        a.truncate(i);
        if 2 * bumped <= total {
            a.push(bumped);
            smallest_completion(a, total - bumped, bumped);
        } else {
            a.push(total);
        }
    }
}

impl Iterator for Partitions {
    type Item = WMonomial;

    fn next(&mut self) -> Option<WMonomial> {
        loop {
            if self.started {
                self.advance();
            }
            self.started = true;
            let a = self.cur.as_ref()?;
            if let Some(l) = self.fixed_length {
                if a.len() != l {
                    continue;
                }
            }
            return Some(WMonomial::new(a.clone()).expect("parts are positive"));
        }
    }
}
