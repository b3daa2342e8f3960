//! Dense linear algebra over F2.

use alloc::vec;
use alloc::vec::Vec;

/// Bit vector of fixed length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vec {
    words: Vec<u64>,
    len: usize,
}

impl F2Vec {
    pub fn zeros(len: usize) -> F2Vec {
        F2Vec { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn unit(len: usize, i: usize) -> F2Vec {
        let mut v = F2Vec::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> F2Vec {
        let mut v = F2Vec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        let m = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn add_assign(&mut self, o: &F2Vec) {
        debug_assert_eq!(self.len, o.len);
        for (a, b) in self.words.iter_mut().zip(&o.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        for (k, w) in self.words.iter().enumerate() {
            if *w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn dot(&self, o: &F2Vec) -> bool {
        self.words
            .iter()
            .zip(&o.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }
}

/// Incrementally built row-echelon basis that remembers how each stored
/// row combines the vectors originally inserted.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, F2Vec, F2Vec)>,
    inserted: usize,
    capacity: usize,
}

impl Echelon {
    /// `capacity` bounds the number of vectors that will be inserted.
    pub fn new(dim: usize, capacity: usize) -> Echelon {
        Echelon { dim, rows: Vec::new(), inserted: 0, capacity }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce_tracked(&self, v: &F2Vec) -> (F2Vec, F2Vec) {
        let mut r = v.clone();
        let mut combo = F2Vec::zeros(self.capacity);
        for (p, row, c) in &self.rows {
            if r.get(*p) {
                r.add_assign(row);
                combo.add_assign(c);
            }
        }
        (r, combo)
    }

    /// Remainder of `v` after clearing the pivots.
    pub fn reduce(&self, v: &F2Vec) -> F2Vec {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &F2Vec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns `true` when it was independent of the rows so far.
    pub fn insert(&mut self, v: &F2Vec) -> bool {
        assert!(self.inserted < self.capacity, "echelon capacity exceeded");
        let (r, mut combo) = self.reduce_tracked(v);
        combo.flip(self.inserted);
        self.inserted += 1;
        match r.first_one() {
            None => false,
            Some(p) => {
                // keep the rows fully reduced against the new pivot
                for (_, row, c) in self.rows.iter_mut() {
                    if row.get(p) {
                        row.add_assign(&r);
                        c.add_assign(&combo);
                    }
                }
                self.rows.push((p, r, combo));
                true
            }
        }
    }

    /// Coefficients of `v` in terms of the inserted vectors, if `v` lies in
    /// their span. Dependent insertions get coefficient zero.
    pub fn express(&self, v: &F2Vec) -> Option<F2Vec> {
        let (r, combo) = self.reduce_tracked(v);
        if r.is_zero() {
            Some(combo)
        } else {
            None
        }
    }
}

/// Rank of a list of vectors.
pub fn rank(vs: &[F2Vec]) -> usize {
    let dim = vs.first().map_or(0, |v| v.len());
    let mut e = Echelon::new(dim, vs.len());
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

/// Kernel of the linear map sending the `i`-th source basis vector to
/// `images[i]`, as vectors in source coordinates.
pub fn kernel(images: &[F2Vec]) -> Vec<F2Vec> {
    let n = images.len();
    let dim = images.first().map_or(0, |v| v.len());
    let mut e = Echelon::new(dim, n);
    let mut out = Vec::new();
    for (i, v) in images.iter().enumerate() {
        let (r, mut combo) = e.reduce_tracked(v);
        if r.is_zero() {
            combo.flip(i);
            out.push(combo);
            // record the insertion so later combos index correctly
            e.inserted += 1;
        } else {
            e.insert(v);
        }
    }
    out
}
