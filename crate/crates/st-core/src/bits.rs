//! Dense square bit matrix used for order relations on enumerated posets.
//! Row `i` holds the up-set of element `i` when the matrix stores `<=`.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] & (1u64 << (j % 64)) != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if value {
            *w |= 1u64 << (j % 64);
        } else {
            *w &= !(1u64 << (j % 64));
        }
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.words..(i + 1) * self.words]
    }

    /// `row(dst) |= row(src)`.
    pub fn or_row_into(&mut self, src: usize, dst: usize) {
        let (s, d) = (src * self.words, dst * self.words);
        for k in 0..self.words {
            let v = self.data[s + k];
            self.data[d + k] |= v;
        }
    }

    pub fn row_popcount(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in self.iter_row(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Indices of set bits in row `i`, ascending.
    pub fn iter_row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(i);
        let n = self.n;
        row.iter().enumerate().flat_map(move |(wi, &w)| {
            BitIter {
                word: w,
                base: wi * 64,
            }
            .filter(move |&j| j < n)
        })
    }

    /// Mutable chunks of whole rows, for parallel row-wise fills.
    pub fn par_rows_mut(&mut self) -> Vec<(usize, &mut [u64])> {
        self.data.chunks_mut(self.words).enumerate().collect()
    }
}

pub struct BitIter {
    word: u64,
    base: usize,
}

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let tz = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(self.base + tz)
    }
}

/// Iterate set bits of a borrowed word slice.
pub fn iter_bits<'a>(words: &'a [u64]) -> impl Iterator<Item = usize> + 'a {
    words.iter().enumerate().flat_map(|(wi, &w)| BitIter {
        word: w,
        base: wi * 64,
    })
}

pub fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// `a & b` into a fresh buffer.
pub fn and_into(a: &[u64], b: &[u64], out: &mut Vec<u64>) {
    out.clear();
    out.extend(a.iter().zip(b).map(|(x, y)| x & y));
}

/// True when `a` is a subset of `b` viewed as bit sets.
pub fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// True when `a & b` is empty.
pub fn is_disjoint(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut m = BitMatrix::new(130);
        m.set(0, 0, true);
        m.set(0, 129, true);
        m.set(1, 64, true);
        assert!(m.get(0, 129));
        assert!(!m.get(0, 128));
        assert_eq!(m.iter_row(0).collect::<Vec<_>>(), vec![0, 129]);
        assert_eq!(m.row_popcount(0), 2);
        m.or_row_into(1, 0);
        assert_eq!(m.iter_row(0).collect::<Vec<_>>(), vec![0, 64, 129]);
        let t = m.transpose();
        assert!(t.get(64, 1));
        assert!(t.get(129, 0));
        assert!(!t.get(1, 64));
    }

    #[test]
    fn slice_helpers() {
        let a = vec![0b1010u64, 1];
        let b = vec![0b0010u64, 1];
        assert!(is_subset(&b, &a));
        assert!(!is_subset(&a, &b));
        assert!(!is_disjoint(&a, &b));
        let mut out = Vec::new();
        and_into(&a, &b, &mut out);
        assert_eq!(out, vec![0b0010, 1]);
        assert_eq!(iter_bits(&a).collect::<Vec<_>>(), vec![1, 3, 64]);
    }
}
