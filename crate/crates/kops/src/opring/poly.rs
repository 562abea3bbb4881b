//! Finite polynomials in Ψ^q over exact rationals, dense representation.

use crate::arith::PLocalRational;
use crate::linalg::Mat;

/// A polynomial in the generator Ψ^q, stored as ascending coefficients with
/// trailing zeros trimmed. The zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperationPoly {
    coeffs: Vec<PLocalRational>,
}

impl OperationPoly {
    pub fn new(mut coeffs: Vec<PLocalRational>) -> Self {
        while coeffs.last().is_some_and(PLocalRational::is_zero) {
            coeffs.pop();
        }
        OperationPoly { coeffs }
    }

    pub fn zero() -> Self {
        OperationPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        OperationPoly::constant(PLocalRational::one())
    }

    pub fn constant(c: PLocalRational) -> Self {
        OperationPoly::new(vec![c])
    }

    /// The generator X = Ψ^q.
    pub fn x() -> Self {
        OperationPoly::new(vec![PLocalRational::zero(), PLocalRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[PLocalRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> PLocalRational {
        self.coeffs.get(i).cloned().unwrap_or_else(PLocalRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(PLocalRational::is_one)
    }

    pub fn add(&self, rhs: &OperationPoly) -> OperationPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        OperationPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &OperationPoly) -> OperationPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        OperationPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn neg(&self) -> OperationPoly {
        OperationPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &PLocalRational) -> OperationPoly {
        OperationPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, rhs: &OperationPoly) -> OperationPoly {
        if self.is_zero() || rhs.is_zero() {
            return OperationPoly::zero();
        }
        let mut out = vec![PLocalRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        OperationPoly::new(out)
    }

    /// Multiplication by the linear factor (X - c).
    pub fn mul_linear(&self, c: &PLocalRational) -> OperationPoly {
        if self.is_zero() {
            return OperationPoly::zero();
        }
        let mut out = vec![PLocalRational::zero(); self.coeffs.len() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i + 1] += a;
            out[i] -= &(a * c);
        }
        OperationPoly::new(out)
    }

    /// Synthetic division by (X - c): returns (quotient, remainder), with
    /// self = (X - c)·quotient + remainder.
    pub fn divide_linear(&self, c: &PLocalRational) -> (OperationPoly, PLocalRational) {
        if self.is_zero() {
            return (OperationPoly::zero(), PLocalRational::zero());
        }
        let n = self.coeffs.len();
        let mut quotient = vec![PLocalRational::zero(); n - 1];
        let mut carry = PLocalRational::zero();
        for i in (0..n).rev() {
            let value = &self.coeffs[i] + &(&carry * c);
            if i == 0 {
                return (OperationPoly::new(quotient), value);
            }
            quotient[i - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    pub fn eval(&self, x: &PLocalRational) -> PLocalRational {
        let mut acc = PLocalRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Evaluation at a square matrix, by Horner's rule.
    pub fn eval_matrix(&self, t: &Mat) -> Mat {
        let n = t.nrows();
        let mut acc = Mat::zero(n, n);
        for c in self.coeffs.iter().rev() {
            acc = t.mul(&acc);
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }
}

impl std::fmt::Display for OperationPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "X")?,
                1 => write!(f, "({c})·X")?,
                _ if c.is_one() => write!(f, "X^{i}")?,
                _ => write!(f, "({c})·X^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> PLocalRational {
        PLocalRational::from_integer(n)
    }

    #[test]
    fn division_round_trip() {
        // (X-1)(X-2) + 3
        let f = OperationPoly::new(vec![r(5), r(-3), r(1)]);
        let (q, rem) = f.divide_linear(&r(1));
        assert_eq!(rem, r(3));
        assert_eq!(q.mul_linear(&r(1)).add(&OperationPoly::constant(rem)), f);
    }

    #[test]
    fn eval_matches_horner() {
        let f = OperationPoly::new(vec![r(1), r(-2), r(0), r(4)]);
        // f(3) = 1 - 6 + 4·27 = 103
        assert_eq!(f.eval(&r(3)), r(103));
    }

    #[test]
    fn matrix_eval_diagonal() {
        let f = OperationPoly::new(vec![r(-2), r(1)]); // X - 2
        let t = Mat::from_rows(vec![vec![r(2), r(0)], vec![r(0), r(5)]]);
        let result = f.eval_matrix(&t);
        assert!(result[(0, 0)].is_zero());
        assert_eq!(result[(1, 1)], r(3));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let f = OperationPoly::new(vec![r(1), r(0), r(0)]);
        assert_eq!(f.degree(), Some(0));
        assert!(OperationPoly::new(vec![r(0)]).is_zero());
    }
}
