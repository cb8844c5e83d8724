//! A small dense GF(3) fragment.
//!
//! The only mod-3 computation in the pipeline is the cocycle check behind
//! the 3-primary verdict (whether the coboundary hitting b₀h₁,₀U is onto),
//! which is a solvability question for a tiny linear system. Entries are
//! plain bytes; no packing.

/// Dense matrix over GF(3); entries are 0, 1, 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf3Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

fn inv3(a: u8) -> u8 {
    // 1⁻¹ = 1, 2⁻¹ = 2 mod 3
    debug_assert!(a == 1 || a == 2);
    a
}

impl Gf3Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf3Matrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Gf3Matrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (c, &x) in row.iter().enumerate() {
                m.set(r, c, x.rem_euclid(3) as u8);
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!(v < 3);
        self.entries[r * self.cols + c] = v;
    }

    fn scale_row(&mut self, r: usize, k: u8) {
        for c in 0..self.cols {
            let v = self.get(r, c);
            self.set(r, c, (v * k) % 3);
        }
    }

    fn sub_scaled_row(&mut self, target: usize, source: usize, k: u8) {
        for c in 0..self.cols {
            let v = (self.get(target, c) + 3 - (self.get(source, c) * k) % 3) % 3;
            self.set(target, c, v);
        }
    }

    /// Reduced row-echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pr) = (rank..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            for c in 0..self.cols {
                let tmp = self.get(rank, c);
                self.set(rank, c, self.get(pr, c));
                self.set(pr, c, tmp);
            }
            let inv = inv3(self.get(rank, col));
            self.scale_row(rank, inv);
            for r in 0..self.rows {
                let k = self.get(r, col);
                if r != rank && k != 0 {
                    self.sub_scaled_row(r, rank, k);
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

    /// Some solution of `self · x = target` mod 3, or `None`.
    pub fn solve(&self, target: &[u8]) -> Option<Vec<u8>> {
        assert_eq!(target.len(), self.rows);
        let mut aug = Gf3Matrix::zeros(self.rows, self.cols + 1);
        for (r, &t) in target.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, t % 3);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u8; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(i, self.cols);
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_scalar() {
        assert_eq!(Gf3Matrix::from_rows(&[vec![2]]).rank(), 1);
        assert_eq!(Gf3Matrix::from_rows(&[vec![0]]).rank(), 0);
        assert_eq!(Gf3Matrix::from_rows(&[vec![3]]).rank(), 0);
    }

    #[test]
    fn solve_two_by_two() {
        // x + 2y = 1, 2x + y = 2  =>  x = 1, y = 0 works
        let m = Gf3Matrix::from_rows(&[vec![1, 2], vec![2, 1]]);
        let x = m.solve(&[1, 2]).unwrap();
        let check0 = (x[0] + 2 * x[1]) % 3;
        let check1 = (2 * x[0] + x[1]) % 3;
        assert_eq!((check0, check1), (1, 2));
    }

    #[test]
    fn inconsistent_system() {
        let m = Gf3Matrix::from_rows(&[vec![1, 1], vec![2, 2]]);
        assert_eq!(m.solve(&[1, 1]), None);
    }

    #[test]
    fn coboundary_onto_iff_unit() {
        // the verdict check in miniature: [c] · x = 1 solvable iff c ≢ 0 mod 3
        for c in 0..3i64 {
            let m = Gf3Matrix::from_rows(&[vec![c]]);
            assert_eq!(m.solve(&[1]).is_some(), c % 3 != 0);
        }
    }
}
