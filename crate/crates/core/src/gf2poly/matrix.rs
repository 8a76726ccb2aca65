use super::bits::BitVec;
use super::PolyError;

/// Outcome of inserting a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insert {
    /// The row enlarged the span; rank went up by one.
    Independent,
    /// The row was already in the span (including the zero row).
    Dependent,
}

/// Row space over GF(2) kept in reduced row-echelon form.
///
/// The pivot of a row is its lowest set column. Columns are labelled by the
/// caller's basis order.
#[derive(Clone, Debug)]
pub struct Gf2Matrix {
    ncols: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl Gf2Matrix {
    pub fn new(ncols: usize) -> Self {
        Gf2Matrix { ncols, rows: Vec::new(), pivots: Vec::new(), pivot_row: vec![None; ncols] }
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    /// Rows sorted by pivot column.
    pub fn sorted_rows(&self) -> Vec<BitVec> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&r| self.pivots[r]);
        idx.into_iter().map(|r| self.rows[r].clone()).collect()
    }

    fn check_len(&self, row: &BitVec) -> Result<(), PolyError> {
        if row.len() != self.ncols {
            return Err(PolyError::RowLength { expected: self.ncols, got: row.len() });
        }
        Ok(())
    }

    /// Reduce `row` against the current pivots.
    pub fn reduce(&self, row: &BitVec) -> Result<BitVec, PolyError> {
        self.check_len(row)?;
        Ok(self.reduce_unchecked(row.clone()))
    }

    fn reduce_unchecked(&self, mut row: BitVec) -> BitVec {
        let pivs: Vec<(usize, usize)> = row
            .ones()
            .filter_map(|c| self.pivot_row[c].map(|r| (c, r)))
            .collect();
        // rows are fully reduced, so clearing one pivot never sets another
        for (_, r) in pivs {
            row.xor_assign(&self.rows[r]);
        }
        row
    }

    pub fn contains(&self, row: &BitVec) -> Result<bool, PolyError> {
        Ok(self.reduce(row)?.is_zero())
    }

    pub fn insert(&mut self, row: &BitVec) -> Result<Insert, PolyError> {
        self.check_len(row)?;
        let red = self.reduce_unchecked(row.clone());
        let Some(p) = red.first_one() else {
            return Ok(Insert::Dependent);
        };
        for r in self.rows.iter_mut() {
            if r.get(p) {
                r.xor_assign(&red);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.pivots.push(p);
        self.rows.push(red);
        Ok(Insert::Independent)
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    /// Columns without a pivot; their basis labels span a complement.
    pub fn free_cols(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_none()).collect()
    }

    /// Row-space equality.
    pub fn same_span(&self, other: &Gf2Matrix) -> bool {
        self.ncols == other.ncols
            && self.rank() == other.rank()
            && other.rows.iter().all(|r| self.reduce_unchecked(r.clone()).is_zero())
    }
}
