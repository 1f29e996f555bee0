//! Smith normal form over arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }
}

/// Nonzero invariant factors `d₁ | d₂ | … | d_r`, all positive.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| (0..m.cols).map(|c| BigInt::from(m.get(r, c))).collect())
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero magnitude in the trailing block
        let Some((pr, pc)) = min_entry(&a, t, rows, cols) else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, p) in rest[0].iter_mut().zip(&top[t]).skip(t) {
                        *x -= &q * p;
                    }
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let p = row[t].clone();
                        row[j] -= &q * p;
                    }
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder smaller than the pivot appeared; move it in
                let (pr, pc) = min_in_cross(&a, t, rows, cols);
                a.swap(t, pr);
                for row in a.iter_mut() {
                    row.swap(t, pc);
                }
                continue;
            }
            // enforce divisibility of the trailing block by the pivot
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t]))
            });
            match bad {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, p) in top[t].iter_mut().zip(&rest[0]).skip(t) {
                        *x += p;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

fn min_entry(a: &[Vec<BigInt>], t: usize, rows: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().take(rows).skip(t) {
        for (j, v) in row.iter().enumerate().take(cols).skip(t) {
            if v.is_zero() {
                continue;
            }
            if v.abs().is_one() {
                return Some((i, j));
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_in_cross(a: &[Vec<BigInt>], t: usize, rows: usize, cols: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut mag = a[t][t].abs();
    for (i, row) in a.iter().enumerate().take(rows).skip(t + 1) {
        if !row[t].is_zero() && row[t].abs() < mag {
            mag = row[t].abs();
            best = (i, t);
        }
    }
    for j in t + 1..cols {
        if !a[t][j].is_zero() && a[t][j].abs() < mag {
            mag = a[t][j].abs();
            best = (t, j);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: usize, data: &[i64]) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: data.to_vec(),
        }
    }

    fn factors(m: &IntMatrix) -> Vec<i64> {
        invariant_factors(m)
            .into_iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect()
    }

    #[test]
    fn diagonal_needing_divisibility_fix() {
        // diag(2, 3) ~ diag(1, 6)
        assert_eq!(factors(&mat(2, 2, &[2, 0, 0, 3])), vec![1, 6]);
        assert_eq!(factors(&mat(2, 2, &[4, 0, 0, 6])), vec![2, 12]);
    }

    #[test]
    fn rank_deficient_and_empty() {
        assert_eq!(factors(&mat(2, 2, &[1, 2, 2, 4])), vec![1]);
        assert!(factors(&mat(0, 3, &[])).is_empty());
        assert!(factors(&mat(2, 2, &[0, 0, 0, 0])).is_empty());
    }

    #[test]
    fn torsion_of_projective_plane_style_matrix() {
        // [[2, 4, 4], [-6, 6, 12], [10, -4, -16]] has invariant factors 2, 6, 12
        assert_eq!(
            factors(&mat(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16])),
            vec![2, 6, 12]
        );
    }
}
