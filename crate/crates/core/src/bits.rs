//! Word-packed binary vectors and matrices over GF(2).

#[inline]
pub fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[inline]
pub fn get(row: &[u64], i: usize) -> bool {
    (row[i >> 6] >> (i & 63)) & 1 == 1
}

#[inline]
pub fn set(row: &mut [u64], i: usize, value: bool) {
    let mask = 1u64 << (i & 63);
    if value {
        row[i >> 6] |= mask;
    } else {
        row[i >> 6] &= !mask;
    }
}

#[inline]
pub fn flip(row: &mut [u64], i: usize) {
    row[i >> 6] ^= 1u64 << (i & 63);
}

#[inline]
pub fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

#[inline]
pub fn is_zero(row: &[u64]) -> bool {
    row.iter().all(|&w| w == 0)
}

/// Iterate over the indices of set bits in ascending order.
pub fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * 64 + b)
        })
    })
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = words_for(cols).max(1);
        Self { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        get(self.row(r), c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = self.words;
        set(&mut self.data[r * w..(r + 1) * w], c, value)
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let w = self.words;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * w);
            (&mut lo[dst * w..(dst + 1) * w], &hi[..w])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * w);
            (&mut hi[..w], &lo[src * w..(src + 1) * w])
        };
        xor_into(a, b);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words {
            self.data.swap(a * self.words + k, b * self.words + k);
        }
    }

    /// Reduce to row echelon form in place; returns the pivot column of each
    /// leading row.
    pub fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(p, next);
            for r in 0..self.rows {
                if r != next && self.get(r, c) {
                    self.xor_rows(r, next);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity_and_dependent_rows() {
        let mut m = BitMatrix::zeros(3, 70);
        m.set(0, 0, true);
        m.set(1, 69, true);
        m.set(2, 0, true);
        m.set(2, 69, true);
        assert_eq!(m.rank(), 2);
        m.set(2, 5, true);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn ones_lists_set_bits() {
        let mut row = vec![0u64; 2];
        for i in [0, 3, 63, 64, 100] {
            set(&mut row, i, true);
        }
        assert_eq!(ones(&row).collect::<Vec<_>>(), vec![0, 3, 63, 64, 100]);
    }
}
