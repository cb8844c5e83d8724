//! Bit-packed exact linear algebra over GF(2).
//!
//! Matrices store rows as 64-bit words; elimination works word-at-a-time
//! with XOR. This is the computational kernel of the resolution engine,
//! where internal degrees of free modules over 𝒜₂ produce matrices with
//! hundreds to thousands of columns.
//!
//! All operations are deterministic: row-reduction scans pivots in
//! increasing column order and produces the reduced row-echelon form.

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A packed vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_indices(len: usize, ones: &[usize]) -> Self {
        let mut v = BitVec::zeros(len);
        for &i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// A packed row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols).max(1);
        BitMatrix {
            rows,
            cols,
            stride,
            bits: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[BitVec]) -> Self {
        let cols = rows.first().map_or(0, BitVec::len);
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), cols, "ragged rows");
            m.row_mut(r).copy_from_slice(&v.words);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.bits[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let mask = 1u64 << (c % WORD_BITS);
        let w = &mut self.bits[r * self.stride + c / WORD_BITS];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.stride..(r + 1) * self.stride]
    }

    fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.bits[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row_vec(&self, r: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.row(r).to_vec(),
        }
    }

    pub fn set_row(&mut self, r: usize, v: &BitVec) {
        assert_eq!(v.len(), self.cols);
        self.row_mut(r).copy_from_slice(&v.words);
    }

    fn xor_rows(&mut self, target: usize, source: usize) {
        let (t, s) = (target * self.stride, source * self.stride);
        for k in 0..self.stride {
            let w = self.bits[s + k];
            self.bits[t + k] ^= w;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.bits.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    /// Matrix-vector product over GF(2); `v` has length `cols`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols);
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row(r)
                .iter()
                .zip(&v.words)
                .fold(0u64, |acc, (a, b)| acc ^ (a & b));
            if parity.count_ones() % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    /// In-place reduction to reduced row-echelon form.
    ///
    /// Returns the pivot columns in strictly increasing order. Zero rows end
    /// up at the bottom.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot_row) = (rank..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(rank, pivot_row);
            for r in 0..self.rows {
                if r != rank && self.get(r, col) {
                    self.xor_rows(r, rank);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right null space: all `v` with `self · v = 0`.
    pub fn kernel_basis(&self) -> Subspace {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for (free, _) in is_pivot.iter().enumerate().filter(|(_, &p)| !p) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (i, &p) in pivots.iter().enumerate() {
                if m.get(i, free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        let mut space = Subspace::new(self.cols);
        for v in basis {
            space.insert(v);
        }
        space
    }

    /// Some solution of `self · x = target`, or `None` when inconsistent.
    ///
    /// Free variables are set to zero, so the returned solution is
    /// deterministic.
    pub fn solve(&self, target: &BitVec) -> Option<BitVec> {
        assert_eq!(target.len(), self.rows, "target length must equal rows");
        let mut aug = BitMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for (k, &w) in self.row(r).iter().enumerate() {
                aug.bits[r * aug.stride + k] = w;
            }
            if target.get(r) {
                aug.set(r, self.cols, true);
            }
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if aug.get(i, self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "{:?}", self.row_vec(r))?;
        }
        Ok(())
    }
}

/// A subspace of GF(2)^n kept as a reduced row-echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    /// Reduce `v` modulo the subspace; the result is zero iff `v` lies in it.
    pub fn reduce(&self, v: &mut BitVec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Insert a vector, keeping the basis in reduced row-echelon form.
    ///
    /// Returns `true` when the vector enlarged the subspace.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let mut v = v;
        self.reduce(&mut v);
        let Some(pivot) = v.first_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(pivot) {
                row.xor_assign(&v);
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        true
    }

    pub fn as_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(&self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Unpacked boolean elimination, used as an independent oracle.
    mod naive {
        pub fn rref(m: &mut [Vec<bool>]) -> Vec<usize> {
            if m.is_empty() {
                return Vec::new();
            }
            let (rows, cols) = (m.len(), m[0].len());
            let mut pivots = Vec::new();
            let mut rank = 0;
            for col in 0..cols {
                let Some(pr) = (rank..rows).find(|&r| m[r][col]) else {
                    continue;
                };
                m.swap(rank, pr);
                for r in 0..rows {
                    if r != rank && m[r][col] {
                        let src = m[rank].clone();
                        for (a, b) in m[r].iter_mut().zip(&src) {
                            *a ^= b;
                        }
                    }
                }
                pivots.push(col);
                rank += 1;
                if rank == rows {
                    break;
                }
            }
            pivots
        }
    }

    struct XorShift(u64);

    impl XorShift {
        fn next(&mut self) -> u64 {
            let mut x = self.0;
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            self.0 = x;
            x
        }
    }

    fn random_matrix(rng: &mut XorShift, rows: usize, cols: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if rng.next() & 1 == 1 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    #[test]
    fn identity_rank() {
        assert_eq!(BitMatrix::identity(5).rank(), 5);
    }

    #[test]
    fn zero_rank() {
        assert_eq!(BitMatrix::zeros(3, 7).rank(), 0);
    }

    #[test]
    fn identity_kernel_is_zero() {
        assert_eq!(BitMatrix::identity(6).kernel_basis().dim(), 0);
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        assert_eq!(BitMatrix::zeros(2, 4).kernel_basis().dim(), 4);
    }

    #[test]
    fn solve_identity_returns_target() {
        let m = BitMatrix::identity(8);
        let v = BitVec::from_indices(8, &[1, 3, 7]);
        assert_eq!(m.solve(&v), Some(v));
    }

    #[test]
    fn solve_zero_matrix_nonzero_target_is_none() {
        let m = BitMatrix::zeros(3, 5);
        let v = BitVec::from_indices(3, &[1]);
        assert_eq!(m.solve(&v), None);
    }

    #[test]
    fn rank_agrees_with_naive_oracle() {
        let mut rng = XorShift(0x9e3779b97f4a7c15);
        for _ in 0..200 {
            let rows = 1 + (rng.next() % 20) as usize;
            let cols = 1 + (rng.next() % 20) as usize;
            let m = random_matrix(&mut rng, rows, cols);
            let mut unpacked: Vec<Vec<bool>> = (0..rows)
                .map(|r| (0..cols).map(|c| m.get(r, c)).collect())
                .collect();
            let naive_pivots = naive::rref(&mut unpacked);
            let mut packed = m.clone();
            let pivots = packed.rref();
            assert_eq!(pivots, naive_pivots);
            for (r, row) in unpacked.iter().enumerate() {
                for (c, &value) in row.iter().enumerate() {
                    assert_eq!(packed.get(r, c), value);
                }
            }
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let mut rng = XorShift(12345);
        for _ in 0..100 {
            let m = random_matrix(&mut rng, 16, 24);
            let kernel = m.kernel_basis();
            assert_eq!(kernel.dim(), 24 - m.rank());
            for v in kernel.basis() {
                assert!(m.mul_vec(v).is_zero());
            }
        }
    }

    #[test]
    fn rank_nullity() {
        let mut rng = XorShift(777);
        for _ in 0..300 {
            let rows = 1 + (rng.next() % 64) as usize;
            let cols = 1 + (rng.next() % 64) as usize;
            let m = random_matrix(&mut rng, rows, cols);
            assert_eq!(m.rank() + m.kernel_basis().dim(), cols);
        }
    }

    #[test]
    fn echelon_is_idempotent() {
        let mut rng = XorShift(3141);
        for _ in 0..100 {
            let mut m = random_matrix(&mut rng, 12, 18);
            m.rref();
            let once = m.clone();
            m.rref();
            assert_eq!(m, once);
        }
    }

    #[test]
    fn consistent_solve_verified_by_substitution() {
        let mut rng = XorShift(271828);
        for _ in 0..200 {
            let m = random_matrix(&mut rng, 10, 14);
            // build a consistent target from a random x
            let mut x = BitVec::zeros(14);
            for i in 0..14 {
                if rng.next() & 1 == 1 {
                    x.set(i, true);
                }
            }
            let target = m.mul_vec(&x);
            let solved = m.solve(&target).expect("consistent system");
            assert_eq!(m.mul_vec(&solved), target);
        }
    }

    #[test]
    fn subspace_insert_keeps_rref() {
        let mut rng = XorShift(99);
        let mut space = Subspace::new(20);
        for _ in 0..40 {
            let mut v = BitVec::zeros(20);
            for i in 0..20 {
                if rng.next() & 1 == 1 {
                    v.set(i, true);
                }
            }
            space.insert(v);
        }
        let mut m = space.as_matrix();
        let before = m.clone();
        m.rref();
        assert_eq!(m, before, "subspace basis must already be in RREF");
    }
}
