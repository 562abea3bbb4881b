//! Dense exact matrices over arbitrary-precision rationals, with Smith
//! normal form over the local PID Z_(p).
//!
//! Over Z_(p) the SNF is particularly simple: an entry is a unit exactly when
//! its p-adic valuation is zero, so pivoting on a minimal-valuation entry and
//! clearing by exact division produces a diagonal of p-powers ordered by
//! divisibility. Entries may be arbitrary rationals with nonnegative
//! valuation (denominators coprime to p are units and harmless).

use crate::arith::{vp, PLocalRational, Valuation};

/// A dense rows×cols matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<PLocalRational>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![PLocalRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = PLocalRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<PLocalRational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Mat {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> PLocalRational) -> Self {
        let mut m = Mat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(PLocalRational::is_zero)
    }

    pub fn row(&self, i: usize) -> &[PLocalRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<PLocalRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Mat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let term = a * &rhs[(k, j)];
                    out[(i, j)] += &term;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[PLocalRational]) -> Vec<PLocalRational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = PLocalRational::zero();
                for j in 0..self.cols {
                    if !v[j].is_zero() {
                        acc += &(&self[(i, j)] * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: &PLocalRational) -> Mat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    /// self - c·I.
    pub fn sub_scalar_diag(&self, c: &PLocalRational) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            out[(i, i)] -= c;
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut result = Mat::identity(self.rows);
        let mut square = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&square);
            }
            e >>= 1;
            if e > 0 {
                square = square.mul(&square);
            }
        }
        result
    }

    pub fn trace(&self) -> PLocalRational {
        assert_eq!(self.rows, self.cols);
        let mut t = PLocalRational::zero();
        for i in 0..self.rows {
            t += &self[(i, i)];
        }
        t
    }

    /// Horizontal concatenation [self | rhs].
    pub fn hstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.rows, rhs.rows);
        Mat::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        })
    }

    /// Vertical concatenation [self; rhs].
    pub fn vstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.cols);
        Mat::from_fn(self.rows + rhs.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                rhs[(i - self.rows, j)].clone()
            }
        })
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        Mat::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows.start + i, cols.start + j)].clone()
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += c·row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, c: &PLocalRational) {
        for j in 0..self.cols {
            let term = &self[(source, j)] * c;
            self[(target, j)] += &term;
        }
    }

    /// col[target] += c·col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, c: &PLocalRational) {
        for i in 0..self.rows {
            let term = &self[(i, source)] * c;
            self[(i, target)] += &term;
        }
    }

    fn scale_row(&mut self, i: usize, c: &PLocalRational) {
        for j in 0..self.cols {
            self[(i, j)] *= c;
        }
    }

    fn scale_col(&mut self, j: usize, c: &PLocalRational) {
        for i in 0..self.rows {
            self[(i, j)] *= c;
        }
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = PLocalRational;
    fn index(&self, (i, j): (usize, usize)) -> &PLocalRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut PLocalRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form over Z_(p): `d = u · a · v` with `u`, `v` invertible
/// over Z_(p) and `d` diagonal with entries p^(e_1) | p^(e_2) | ...
#[derive(Debug, Clone)]
pub struct Snf {
    pub d: Mat,
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
    /// Valuations of the nonzero diagonal entries, in order.
    pub diag: Vec<u32>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

/// Computes the Smith normal form of `a` over Z_(p).
///
/// Every entry of `a` must have nonnegative p-adic valuation.
pub fn smith_normal_form(a: &Mat, p: u64) -> Snf {
    let mut d = a.clone();
    let mut u = Mat::identity(a.nrows());
    let mut u_inv = Mat::identity(a.nrows());
    let mut v = Mat::identity(a.ncols());
    let n = a.nrows().min(a.ncols());
    let mut diag = Vec::new();

    for step in 0..n {
        // Find the minimal-valuation entry in the remaining block.
        let mut best: Option<(usize, usize, i64)> = None;
        for i in step..d.nrows() {
            for j in step..d.ncols() {
                if let Valuation::Finite(val) = vp(&d[(i, j)], p) {
                    debug_assert!(val >= 0, "SNF input entry with negative valuation");
                    if best.map_or(true, |(_, _, b)| val < b) {
                        best = Some((i, j, val));
                    }
                }
            }
        }
        let Some((pi, pj, pval)) = best else {
            break; // remaining block is zero
        };

        d.swap_rows(step, pi);
        u.swap_rows(step, pi);
        u_inv.swap_cols(step, pi);
        d.swap_cols(step, pj);
        v.swap_cols(step, pj);

        // Normalize the pivot to exactly p^pval; the unit part moves into u.
        let p_power = PLocalRational::from_integer(p).pow(pval);
        let unit = &d[(step, step)] / &p_power;
        let unit_inv = unit.recip();
        d.scale_row(step, &unit_inv);
        u.scale_row(step, &unit_inv);
        u_inv.scale_col(step, &unit);

        // Clear the rest of the pivot row and column by exact division.
        for i in step + 1..d.nrows() {
            if !d[(i, step)].is_zero() {
                let factor = -(&d[(i, step)] / &p_power);
                d.add_row_multiple(i, step, &factor);
                u.add_row_multiple(i, step, &factor);
                u_inv.add_col_multiple(step, i, &(-&factor));
            }
        }
        for j in step + 1..d.ncols() {
            if !d[(step, j)].is_zero() {
                let factor = -(&d[(step, j)] / &p_power);
                d.add_col_multiple(j, step, &factor);
                v.add_col_multiple(j, step, &factor);
            }
        }
        diag.push(pval as u32);
    }

    debug_assert_eq!(u.mul(a).mul(&v), d);
    debug_assert!(u.mul(&u_inv) == Mat::identity(a.nrows()));

    Snf { d, u, u_inv, v, diag }
}

/// Solves `a · x = b` for `x` with entries in Z_(p), if a solution exists.
///
/// Free coordinates are set to zero.
pub fn solve(snf: &Snf, b: &[PLocalRational], p: u64) -> Option<Vec<PLocalRational>> {
    let rhs = snf.u.mul_vec(b);
    let rank = snf.rank();
    let mut z = vec![PLocalRational::zero(); snf.v.nrows()];
    for (i, item) in rhs.iter().enumerate() {
        if i < rank {
            let d = &snf.d[(i, i)];
            let candidate = item / d;
            if !vp(&candidate, p).at_least(0) {
                return None; // divisibility failure
            }
            z[i] = candidate;
        } else if !item.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&z))
}

/// Is `b` in the Z_(p)-column span of the matrix behind `snf`?
pub fn in_span(snf: &Snf, b: &[PLocalRational], p: u64) -> bool {
    solve(snf, b, p).is_some()
}

/// A Z_(p)-basis of the kernel {x : a·x = 0}, as columns.
///
/// The kernel of a matrix over the domain Z_(p) is the span of the columns of
/// `v` past the rank, and is automatically saturated.
pub fn kernel_basis(snf: &Snf) -> Vec<Vec<PLocalRational>> {
    let rank = snf.rank();
    (rank..snf.v.ncols()).map(|j| snf.v.column(j)).collect()
}

/// Characteristic polynomial of a square matrix by the Faddeev–LeVerrier
/// recurrence, exact over Q. Coefficients ascending: c_0 + c_1·X + ... + X^n.
pub fn char_poly(a: &Mat) -> Vec<PLocalRational> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let mut coeffs = vec![PLocalRational::zero(); n + 1];
    coeffs[n] = PLocalRational::one();
    let mut m = Mat::identity(n);
    for k in 1..=n {
        m = a.mul(&m);
        let c = -(&m.trace() / &PLocalRational::from_integer(k as i64));
        for i in 0..n {
            m[(i, i)] += &c;
        }
        coeffs[n - k] = c;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> PLocalRational {
        PLocalRational::from_integer(n)
    }

    #[test]
    fn snf_diagonalizes() {
        let p = 3;
        let a = Mat::from_rows(vec![
            vec![r(3), r(1), r(2)],
            vec![r(9), r(6), r(3)],
        ]);
        let s = smith_normal_form(&a, p);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        // All 2×2 minors have valuation 2, the 1×1 gcd has valuation 0.
        assert_eq!(s.diag, vec![0, 2]);
        for i in 0..s.d.nrows() {
            for j in 0..s.d.ncols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_p_power_chain() {
        let p = 3;
        let a = Mat::from_rows(vec![
            vec![r(9), r(3)],
            vec![r(3), r(3)],
        ]);
        let s = smith_normal_form(&a, p);
        assert_eq!(s.diag, vec![1, 1]);
        // Diagonal entries are exact p-powers.
        assert_eq!(s.d[(0, 0)], r(3));
        assert_eq!(s.d[(1, 1)], r(3));
    }

    #[test]
    fn snf_handles_rational_units() {
        // 1/2 is a unit in Z_(3).
        let a = Mat::from_rows(vec![vec![PLocalRational::ratio(1, 2), r(3)]]);
        let s = smith_normal_form(&a, 3);
        assert_eq!(s.diag, vec![0]);
    }

    #[test]
    fn solve_and_membership() {
        let p = 3;
        let a = Mat::from_rows(vec![
            vec![r(1), r(0)],
            vec![r(0), r(3)],
        ]);
        let s = smith_normal_form(&a, p);
        // (1, 3) is in the span; (1, 1) is not (would need 1/3).
        let x = solve(&s, &[r(1), r(3)], p).unwrap();
        assert_eq!(a.mul_vec(&x), vec![r(1), r(3)]);
        assert!(!in_span(&s, &[r(1), r(1)], p));
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let p = 3;
        let a = Mat::from_rows(vec![vec![r(1), r(2), r(1)]]);
        let s = smith_normal_form(&a, p);
        let basis = kernel_basis(&s);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(a.mul_vec(v).iter().all(PLocalRational::is_zero));
        }
    }

    #[test]
    fn char_poly_small() {
        // [[2, 1], [0, 5]] has char poly (X-2)(X-5) = X² - 7X + 10.
        let a = Mat::from_rows(vec![
            vec![r(2), r(1)],
            vec![r(0), r(5)],
        ]);
        assert_eq!(char_poly(&a), vec![r(10), r(-7), r(1)]);
    }

    #[test]
    fn matrix_power() {
        let a = Mat::from_rows(vec![
            vec![r(1), r(1)],
            vec![r(0), r(1)],
        ]);
        let a5 = a.pow(5);
        assert_eq!(a5[(0, 1)], r(5));
        assert_eq!(a.pow(0), Mat::identity(2));
    }
}
