//! Dense bit-matrix relations between finite index sets.

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rel {
    rows: usize,
    cols: usize,
    wpr: usize,
    bits: Vec<u64>,
}

impl Rel {
    pub fn empty(rows: usize, cols: usize) -> Self {
        let wpr = cols.div_ceil(64);
        Rel {
            rows,
            cols,
            wpr,
            bits: vec![0; rows * wpr],
        }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        let mut r = Self::empty(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                r.set(i, j, true);
            }
        }
        r
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    r.set(i, j, true);
                }
            }
        }
        r
    }

    pub fn from_table(table: &[Vec<bool>], cols: usize) -> Option<Self> {
        if table.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Self::from_fn(table.len(), cols, |i, j| table[i][j]))
    }

    pub fn to_table(&self) -> Vec<Vec<bool>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.wpr + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.wpr + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.wpr..(i + 1) * self.wpr]
    }

    pub fn set_row(&mut self, i: usize, words: &[u64]) {
        self.bits[i * self.wpr..(i + 1) * self.wpr].copy_from_slice(words);
    }

    pub fn row_iter(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| self.row_iter(i).map(move |j| (i, j)))
            .collect()
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Relational composite `self ; other`.
    pub fn compose(&self, other: &Rel) -> Rel {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Rel::empty(self.rows, other.cols);
        let wpr = out.wpr;
        for i in 0..self.rows {
            let base = i * wpr;
            for b in self.row_iter(i) {
                let src = other.row(b);
                for (k, w) in src.iter().enumerate() {
                    out.bits[base + k] |= w;
                }
            }
        }
        out
    }

    /// Kronecker product: `((a, c), (b, d))` is related iff `(a, b)` and `(c, d)` are.
    pub fn kron(&self, other: &Rel) -> Rel {
        let mut out = Rel::empty(self.rows * other.rows, self.cols * other.cols);
        for a in 0..self.rows {
            let bs: Vec<usize> = self.row_iter(a).collect();
            if bs.is_empty() {
                continue;
            }
            for c in 0..other.rows {
                let row = a * other.rows + c;
                for &b in &bs {
                    for d in other.row_iter(c) {
                        out.set(row, b * other.cols + d, true);
                    }
                }
            }
        }
        out
    }

    /// First entry, in row-major order, where the two relations differ.
    pub fn first_difference(&self, other: &Rel) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            if self.row(i) != other.row(i) {
                for j in 0..self.cols {
                    if self.get(i, j) != other.get(i, j) {
                        return Some((i, j));
                    }
                }
            }
        }
        None
    }
}
