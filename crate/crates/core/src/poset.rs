use serde::{Deserialize, Serialize};

use crate::{Error, Result, Violation};

/// A finite partial order on `0..size`, stored as a row-major table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PosetJson", into = "PosetJson")]
pub struct FinPoset {
    size: usize,
    leq: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    size: usize,
    leq: Vec<Vec<bool>>,
}

impl TryFrom<PosetJson> for FinPoset {
    type Error = Error;

    fn try_from(j: PosetJson) -> Result<Self> {
        FinPoset::new(j.size, j.leq)
    }
}

impl From<FinPoset> for PosetJson {
    fn from(p: FinPoset) -> Self {
        PosetJson {
            size: p.size,
            leq: p.rows(),
        }
    }
}

impl FinPoset {
    /// Builds a table without checking the order axioms; see [`validate_poset`].
    pub fn new(size: usize, leq: Vec<Vec<bool>>) -> Result<Self> {
        if leq.len() != size || leq.iter().any(|r| r.len() != size) {
            return Err(Error::Dimension(format!(
                "leq table must be {size}x{size}"
            )));
        }
        Ok(FinPoset {
            size,
            leq: leq.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut leq = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                leq.push(f(i, j));
            }
        }
        FinPoset { size, leq }
    }

    pub fn singleton() -> Self {
        Self::chain(1)
    }

    /// `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_fn(n, |i, j| i <= j)
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_fn(n, |i, j| i == j)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, x: usize, y: usize) -> Result<bool> {
        for &i in &[x, y] {
            if i >= self.size {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    size: self.size,
                });
            }
        }
        Ok(self.le(x, y))
    }

    /// Unchecked lookup.
    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size + y]
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.size.max(1)).take(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn related_pairs(&self) -> usize {
        self.leq.iter().filter(|&&b| b).count()
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.size).find(|&t| (0..self.size).all(|x| self.le(x, t)))
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.size).find(|&b| (0..self.size).all(|x| self.le(b, x)))
    }
}

pub fn validate_poset(p: &FinPoset) -> Vec<Violation> {
    let n = p.size;
    let mut out = Vec::new();
    for i in 0..n {
        if !p.le(i, i) {
            out.push(Violation::new("reflexive", &[i]));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if p.le(i, j) && p.le(j, i) {
                out.push(Violation::new("antisymmetric", &[i, j]));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !p.le(i, j) {
                continue;
            }
            for k in 0..n {
                if p.le(j, k) && !p.le(i, k) {
                    out.push(Violation::new("transitive", &[i, j, k]));
                }
            }
        }
    }
    out
}

/// Componentwise order on `p × q`; `(i, j)` is encoded as `i * q.size() + j`.
pub fn product(p: &FinPoset, q: &FinPoset) -> FinPoset {
    let m = q.size;
    FinPoset::from_fn(p.size * m, |x, y| {
        p.le(x / m, y / m) && q.le(x % m, y % m)
    })
}

/// Every partial order on `n` labelled points, in lexicographic table order.
pub fn all_posets(n: usize) -> Vec<FinPoset> {
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << cells.len()) {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (b, &(i, j)) in cells.iter().enumerate() {
            if mask >> b & 1 == 1 {
                leq[i * n + j] = true;
            }
        }
        let p = FinPoset { size: n, leq };
        if validate_poset(&p).is_empty() {
            out.push(p);
        }
    }
    out
}
