//! The operation ring `A`: Φ basis vectors, structure constants, Adams
//! expansions, unit and quotient computations, and congruence checkers.
//!
//! A [`Ring`] bundles a validated [`RingConfig`] with a structure-constant
//! cache. Elements of the truncated ring `A/A_N` are [`PhiVector`]s; finite
//! polynomials in Ψ^q are [`OperationPoly`]s. The two presentations are
//! exchanged by [`Ring::poly_to_phi`] and [`Ring::phi_to_poly`], which are
//! exact basis changes (the Θ polynomials are monic and triangular with
//! respect to degree).

mod poly;
mod verify;

pub use poly::OperationPoly;
pub use verify::{
    AbcongsSolution, CcongReport, PhiQuotientInstance, PhiQuotientReport, SymmetryReport,
    ThetaPowerReport,
};

use std::collections::HashMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::arith::{is_p_local, vp, PLocalRational, RingConfig};
use crate::{Error, Result};

/// A truncated element of the operation ring: the coset
/// `a_0·Φ_0 + ... + a_(N-1)·Φ_(N-1) + A_N`.
///
/// Two vectors compare equal exactly when their truncations match and all
/// coefficients agree. Mixed-truncation arithmetic is an error; use
/// [`PhiVector::project`] or [`PhiVector::pad`] to move between levels
/// explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiVector {
    truncation: usize,
    coeffs: Vec<PLocalRational>,
}

impl PhiVector {
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coeffs(&self) -> &[PLocalRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> PLocalRational {
        self.coeffs.get(k).cloned().unwrap_or_else(PLocalRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(PLocalRational::is_zero)
    }

    /// The augmentation ε(Σ a_k Φ_k) = a_0.
    pub fn augmentation(&self) -> PLocalRational {
        self.coeff(0)
    }

    /// Least k with a_k ≠ 0, or the truncation N for the zero coset. This is
    /// the membership test for the filtration ideals: order ≥ m iff the
    /// coset lies in A_m/A_N.
    pub fn filtration_order(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.truncation)
    }

    /// Projection A/A_N → A/A_M for M ≤ N (drop high coefficients); a
    /// well-defined coset map.
    pub fn project(&self, truncation: usize) -> Result<PhiVector> {
        if truncation == 0 || truncation > self.truncation {
            return Err(Error::TruncationMismatch {
                left: self.truncation,
                right: truncation,
            });
        }
        Ok(PhiVector {
            truncation,
            coeffs: self.coeffs[..truncation].to_vec(),
        })
    }

    /// Canonical-representative lift to a larger truncation (pad with
    /// zeros). This chooses a representative: unlike `project`, it is not a
    /// coset map.
    pub fn pad(&self, truncation: usize) -> Result<PhiVector> {
        if truncation < self.truncation {
            return Err(Error::TruncationMismatch {
                left: self.truncation,
                right: truncation,
            });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(truncation, PLocalRational::zero());
        Ok(PhiVector { truncation, coeffs })
    }

    pub fn add(&self, rhs: &PhiVector) -> Result<PhiVector> {
        self.check_truncation(rhs)?;
        Ok(PhiVector {
            truncation: self.truncation,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &PhiVector) -> Result<PhiVector> {
        self.check_truncation(rhs)?;
        Ok(PhiVector {
            truncation: self.truncation,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &PLocalRational) -> PhiVector {
        PhiVector {
            truncation: self.truncation,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    fn check_truncation(&self, rhs: &PhiVector) -> Result<()> {
        if self.truncation != rhs.truncation {
            return Err(Error::TruncationMismatch {
                left: self.truncation,
                right: rhs.truncation,
            });
        }
        Ok(())
    }
}

/// The augmentation ε(Σ a_k Φ_k) = a_0.
pub fn augmentation(a: &PhiVector) -> PLocalRational {
    a.augmentation()
}

/// Least k with a_k ≠ 0, or the truncation for the zero coset.
pub fn filtration_order(a: &PhiVector) -> usize {
    a.filtration_order()
}

/// The operation ring for a fixed configuration, with a memoized
/// structure-constant table.
///
/// All values handed out are immutable; the cache takes its lock only for
/// the structure-constant recursion, so a `Ring` can be shared freely across
/// threads.
#[derive(Debug)]
pub struct Ring {
    cfg: RingConfig,
    base: PLocalRational,
    constants: Mutex<HashMap<(usize, usize, usize), PLocalRational>>,
}

impl Ring {
    pub fn new(cfg: RingConfig) -> Self {
        let base = cfg.base();
        Ring {
            cfg,
            base,
            constants: Mutex::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &RingConfig {
        &self.cfg
    }

    pub fn p(&self) -> u64 {
        self.cfg.p
    }

    /// The working base: q, or q̂ = q^(p-1) in the split variant.
    pub fn base(&self) -> &PLocalRational {
        &self.base
    }

    /// The residue period 2p-2 of the node sequence modulo p.
    pub fn period(&self) -> usize {
        2 * (self.cfg.p as usize) - 2
    }

    pub fn truncation(&self) -> usize {
        self.cfg.truncation
    }

    /// Exponent e_i = (-1)^i·⌊i/2⌋ of the i-th node (i ≥ 1), so the node
    /// sequence runs base^0, base^1, base^-1, base^2, base^-2, ...
    pub fn node_exponent(&self, i: usize) -> i64 {
        let half = (i / 2) as i64;
        if i % 2 == 0 {
            half
        } else {
            -half
        }
    }

    /// The i-th node q_i = base^(e_i), i ≥ 1.
    pub fn node(&self, i: usize) -> PLocalRational {
        self.base.pow(self.node_exponent(i))
    }

    /// Power of the *original* q represented by the i-th node: q_i =
    /// q^(weight). In the split variant base^e = q^((p-1)e), and an Adams
    /// operation Ψ^j acts on the corresponding eigenspace by j^(weight).
    pub fn node_weight(&self, i: usize) -> i64 {
        self.node_exponent(i) * self.cfg.weight_multiplier()
    }

    /// Θ_n(X) = ∏_(i=1..n) (X - q_i), monic of degree n.
    pub fn theta(&self, n: usize) -> OperationPoly {
        let mut f = OperationPoly::one();
        for i in 1..=n {
            f = f.mul_linear(&self.node(i));
        }
        f
    }

    /// Punctured polynomial Θ_n^(j)(X) = ∏_(i≠j) (X - q_i), 1 ≤ j ≤ n;
    /// satisfies Θ_n^(j)·(X - q_j) = Θ_n.
    pub fn theta_punctured(&self, n: usize, j: usize) -> Result<OperationPoly> {
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange(format!(
                "punctured index j = {j} out of range 1..={n}"
            )));
        }
        let mut f = OperationPoly::one();
        for i in (1..=n).filter(|&i| i != j) {
            f = f.mul_linear(&self.node(i));
        }
        Ok(f)
    }

    /// Exact Φ-basis expansion of a finite polynomial, by repeated synthetic
    /// division by (X - q_(k+1)). No truncation loss: the result has length
    /// deg(f) + 1 (length 1 for constants and zero).
    pub fn poly_to_phi(&self, f: &OperationPoly) -> PhiVector {
        let len = f.degree().map_or(1, |d| d + 1);
        let mut coeffs = Vec::with_capacity(len);
        let mut rest = f.clone();
        for k in 0..len {
            let (quotient, remainder) = rest.divide_linear(&self.node(k + 1));
            coeffs.push(remainder);
            rest = quotient;
        }
        debug_assert!(rest.is_zero());
        PhiVector {
            truncation: len,
            coeffs,
        }
    }

    /// Canonical polynomial representative Σ a_k Θ_k of degree < N.
    pub fn phi_to_poly(&self, a: &PhiVector) -> OperationPoly {
        let mut acc = OperationPoly::zero();
        let mut theta = OperationPoly::one();
        for (k, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&theta.scale(c));
            }
            if k + 1 < a.truncation {
                theta = theta.mul_linear(&self.node(k + 1));
            }
        }
        acc
    }

    /// Builds a Φ-coset from coefficients, checking p-locality. The
    /// truncation is the coefficient count.
    pub fn phi_vector(&self, coeffs: Vec<PLocalRational>) -> Result<PhiVector> {
        if coeffs.is_empty() {
            return Err(Error::ZeroTruncation);
        }
        for (k, c) in coeffs.iter().enumerate() {
            if !is_p_local(c, self.cfg.p) {
                return Err(Error::NotPLocal {
                    value: format!("coefficient a_{k} = {c}"),
                    p: self.cfg.p,
                    valuation: vp(c, self.cfg.p).finite().unwrap_or(0),
                });
            }
        }
        Ok(PhiVector {
            truncation: coeffs.len(),
            coeffs,
        })
    }

    /// The coset of Φ_k in A/A_N.
    pub fn phi_basis(&self, k: usize, truncation: usize) -> PhiVector {
        let mut coeffs = vec![PLocalRational::zero(); truncation];
        if k < truncation {
            coeffs[k] = PLocalRational::one();
        }
        PhiVector {
            truncation,
            coeffs,
        }
    }

    /// The unit 1 = Φ_0 in A/A_N.
    pub fn phi_one(&self, truncation: usize) -> PhiVector {
        self.phi_basis(0, truncation)
    }

    /// Structure constant c_(j,n)^k: the coefficient of Φ_k in Φ_j·Φ_n.
    ///
    /// Zero outside j,n ≤ k ≤ j+n; equal to 1 at k = j+n; computed by the
    /// recursion c_(j,n)^k = (q_(k+1) - q_n)·c_(j,n-1)^k + c_(j,n-1)^(k-1)
    /// and memoized per ring.
    pub fn structure_constant(&self, j: usize, n: usize, k: usize) -> PLocalRational {
        if k > j + n || k < j.max(n) {
            return PLocalRational::zero();
        }
        if n == 0 {
            // support forces k = j here
            return PLocalRational::one();
        }
        if k == j + n {
            return PLocalRational::one();
        }
        if let Some(hit) = self.constants.lock().unwrap().get(&(j, n, k)) {
            return hit.clone();
        }
        let factor = self.node(k + 1) - self.node(n);
        let value = factor * self.structure_constant(j, n - 1, k)
            + self.structure_constant(j, n - 1, k - 1);
        self.constants
            .lock()
            .unwrap()
            .insert((j, n, k), value.clone());
        value
    }

    /// Coset product in A/A_N, extended bilinearly from Φ_j·Φ_n =
    /// Σ c_(j,n)^k·Φ_k. Well-defined on cosets because the structure
    /// constants vanish below max(j, n). Truncations must match.
    pub fn multiply(&self, a: &PhiVector, b: &PhiVector) -> Result<PhiVector> {
        a.check_truncation(b)?;
        let n_trunc = a.truncation;
        let mut coeffs = vec![PLocalRational::zero(); n_trunc];
        for (j, aj) in a.coeffs.iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            for (n, bn) in b.coeffs.iter().enumerate() {
                if bn.is_zero() {
                    continue;
                }
                let product = aj * bn;
                for (k, coeff) in coeffs.iter_mut().enumerate().take(n_trunc).skip(j.max(n)) {
                    if k > j + n {
                        break;
                    }
                    *coeff += &(&product * &self.structure_constant(j, n, k));
                }
            }
        }
        Ok(PhiVector {
            truncation: n_trunc,
            coeffs,
        })
    }

    /// Coefficients g_i(j), i < truncation, of the Adams operation
    /// Ψ^j = Σ g_i(j)·Φ_i, for a p-local unit j.
    ///
    /// Solved from the triangular interpolation conditions
    /// Σ_(i<m) g_i(j)·Θ_i(q_m) = j^(w_m) for m = 1..truncation, where w_m is
    /// the node weight. Every coefficient is checked p-local before
    /// returning; a failure would contradict the integrality of the Adams
    /// expansion and is reported as an internal-consistency error.
    pub fn adams_expansion(&self, j: &PLocalRational, truncation: usize) -> Result<PhiVector> {
        if truncation == 0 {
            return Err(Error::ZeroTruncation);
        }
        if vp(j, self.cfg.p) != crate::arith::Valuation::Finite(0) {
            return Err(Error::NonUnitAdams(j.to_string()));
        }
        let mut coeffs: Vec<PLocalRational> = Vec::with_capacity(truncation);
        for m in 1..=truncation {
            let node_m = self.node(m);
            let target = j.pow(self.node_weight(m));
            // Σ_{i<m-1} g_i·Θ_i(q_m), with Θ_i(q_m) built incrementally.
            let mut sum = PLocalRational::zero();
            let mut theta_at = PLocalRational::one();
            for (i, g) in coeffs.iter().enumerate() {
                if !g.is_zero() {
                    sum += &(g * &theta_at);
                }
                theta_at *= &(&node_m - &self.node(i + 1));
            }
            // theta_at is now Θ_(m-1)(q_m), nonzero since nodes are distinct.
            coeffs.push((target - sum) / theta_at);
        }
        for (i, g) in coeffs.iter().enumerate() {
            if !is_p_local(g, self.cfg.p) {
                return Err(Error::InternalConsistency(format!(
                    "Adams coefficient g_{i}({j}) = {g} is not p-local"
                )));
            }
        }
        Ok(PhiVector {
            truncation,
            coeffs,
        })
    }

    /// The exact polynomial quotient Θ_n/Θ_m for n > m ≥ 0, monic of degree
    /// n - m. The remainder at each division step is provably zero; a
    /// nonzero remainder is an internal error.
    pub fn divide_phi(&self, n: usize, m: usize) -> Result<OperationPoly> {
        if n <= m {
            return Err(Error::IndexOutOfRange(format!(
                "Φ_{n}/Φ_{m} requires n > m"
            )));
        }
        let mut quotient = self.theta(n);
        for i in 1..=m {
            let (q, rem) = quotient.divide_linear(&self.node(i));
            if !rem.is_zero() {
                return Err(Error::InternalConsistency(format!(
                    "Θ_{n}/Θ_{m}: nonzero remainder {rem} at node {i}"
                )));
            }
            quotient = q;
        }
        Ok(quotient)
    }

    /// Unit test for φ(Ψ^q): a polynomial value is invertible exactly when
    /// φ(q_i) is a p-local unit for all i ≥ 1. Since vp(φ(q_i)) depends
    /// only on q_i mod p and the node residues repeat with period 2p-2, one
    /// full period suffices.
    pub fn is_unit(&self, f: &OperationPoly) -> bool {
        self.is_unit_with_window(f, self.period())
    }

    /// Same unit criterion evaluated over an explicit window of nodes;
    /// exposed so the period-reduction argument can itself be tested.
    pub fn is_unit_with_window(&self, f: &OperationPoly, window: usize) -> bool {
        (1..=window).all(|i| vp(&f.eval(&self.node(i)), self.cfg.p) == crate::arith::Valuation::Finite(0))
    }

    /// Adams expansions evaluated back as polynomials: P_j(X) =
    /// Σ g_i(j)Θ_i(X).
    pub fn adams_polynomial(&self, j: &PLocalRational, truncation: usize) -> Result<OperationPoly> {
        Ok(self.phi_to_poly(&self.adams_expansion(j, truncation)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{make_config, Variant};
    use proptest::prelude::*;

    fn r(n: i64) -> PLocalRational {
        PLocalRational::from_integer(n)
    }

    fn ring(p: u64, variant: Variant) -> Ring {
        Ring::new(make_config(p, 2, variant, 12).unwrap())
    }

    #[test]
    fn node_sequence_shape() {
        let a = ring(3, Variant::NonSplit);
        // q_1 = 1, then q, q^-1, q², q^-2, ...
        assert_eq!(a.node(1), r(1));
        assert_eq!(a.node(2), r(2));
        assert_eq!(a.node(3), PLocalRational::ratio(1, 2));
        assert_eq!(a.node(4), r(4));
        assert_eq!(a.node(5), PLocalRational::ratio(1, 4));
        // Pairwise distinct over a long window.
        let nodes: Vec<_> = (1..=30).map(|i| a.node(i)).collect();
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                assert_ne!(nodes[i], nodes[j]);
            }
        }
    }

    #[test]
    fn node_periodicity_mod_p() {
        use crate::arith::reduce_mod;
        for variant in [Variant::NonSplit, Variant::Split] {
            let a = ring(3, variant);
            let period = a.period();
            for i in 1..=12 {
                assert_eq!(
                    reduce_mod(&a.node(i), 3, 1).unwrap(),
                    reduce_mod(&a.node(i + period), 3, 1).unwrap(),
                    "node {i} vs {} ({variant:?})",
                    i + period
                );
            }
        }
    }

    #[test]
    fn theta_examples() {
        let a = ring(3, Variant::NonSplit);
        assert_eq!(a.theta(0), OperationPoly::one());
        // Θ_4 = (X-1)(X-q)(X-q^-1)(X-q²) expanded.
        let theta4 = a.theta(4);
        let expected = OperationPoly::one()
            .mul_linear(&r(1))
            .mul_linear(&r(2))
            .mul_linear(&PLocalRational::ratio(1, 2))
            .mul_linear(&r(4));
        assert_eq!(theta4, expected);
        assert!(theta4.is_monic());
        assert_eq!(theta4.degree(), Some(4));
        // Θ_1^(1) = empty product.
        assert_eq!(a.theta_punctured(1, 1).unwrap(), OperationPoly::one());
        assert!(a.theta_punctured(2, 3).is_err());
        assert!(a.theta_punctured(2, 0).is_err());
    }

    #[test]
    fn punctured_times_linear_recovers_theta() {
        let a = ring(5, Variant::NonSplit);
        for n in 1..=8 {
            for j in 1..=n {
                let punctured = a.theta_punctured(n, j).unwrap();
                assert_eq!(punctured.mul_linear(&a.node(j)), a.theta(n));
            }
        }
    }

    #[test]
    fn phi_expansion_examples() {
        let a = ring(3, Variant::NonSplit);
        // 1 → (1)
        assert_eq!(a.poly_to_phi(&OperationPoly::one()).coeffs(), &[r(1)]);
        // X = Φ_0 + Φ_1
        assert_eq!(a.poly_to_phi(&OperationPoly::x()).coeffs(), &[r(1), r(1)]);
        // (X-1)² = 0·Φ_0 + (q-1)Φ_1 + Φ_2 at q = 2
        let f = OperationPoly::one().mul_linear(&r(1)).mul_linear(&r(1));
        assert_eq!(a.poly_to_phi(&f).coeffs(), &[r(0), r(1), r(1)]);
    }

    #[test]
    fn structure_constant_examples() {
        let a = ring(3, Variant::NonSplit);
        // Top coefficient is always 1.
        for j in 0..6 {
            for n in 0..6 {
                assert_eq!(a.structure_constant(j, n, j + n), r(1));
            }
        }
        // c^1_(1,1) = q - 1 = 1 at q = 2.
        assert_eq!(a.structure_constant(1, 1, 1), r(1));
        // Out of support.
        assert!(a.structure_constant(2, 3, 2).is_zero());
        assert!(a.structure_constant(1, 1, 3).is_zero());
    }

    #[test]
    fn structure_constants_match_polynomial_expansion() {
        for variant in [Variant::NonSplit, Variant::Split] {
            let a = ring(3, variant);
            for j in 0..=6 {
                for n in 0..=6 {
                    let product = a.theta(j).mul(&a.theta(n));
                    let expansion = a.poly_to_phi(&product);
                    for k in 0..=j + n {
                        assert_eq!(
                            a.structure_constant(j, n, k),
                            expansion.coeff(k),
                            "c^{k}_({j},{n}) for {variant:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let a = ring(3, Variant::NonSplit);
        let one = a.phi_one(4);
        let phi1 = a.phi_basis(1, 4);
        // Unit law.
        let x = a.phi_vector(vec![r(3), r(1), r(0), r(7)]).unwrap();
        assert_eq!(a.multiply(&x, &one).unwrap(), x);
        // Φ_1·Φ_1 = Φ_1 + Φ_2 at q = 2, truncation 4.
        let sq = a.multiply(&phi1, &phi1).unwrap();
        assert_eq!(sq.coeffs(), &[r(0), r(1), r(1), r(0)]);
        // Φ_2·Φ_3 vanishes mod A_3.
        let b = Ring::new(make_config(3, 2, Variant::NonSplit, 3).unwrap());
        let prod = b
            .multiply(&b.phi_basis(2, 3), &b.phi_basis(3, 3))
            .unwrap();
        assert!(prod.is_zero());
        // Mismatched truncations are rejected.
        assert!(a.multiply(&a.phi_one(4), &a.phi_one(5)).is_err());
    }

    #[test]
    fn psi_q_shifts_phi() {
        // Ψ^q·Φ_k = Φ_(k+1) + q_(k+1)·Φ_k (coefficient identity
        // X·Θ_k = Θ_(k+1) + q_(k+1)·Θ_k).
        for variant in [Variant::NonSplit, Variant::Split] {
            let a = ring(3, variant);
            let n = 8;
            let psi = a.poly_to_phi(&OperationPoly::x()).pad(n).unwrap();
            for k in 0..n - 1 {
                let lhs = a.multiply(&psi, &a.phi_basis(k, n)).unwrap();
                let rhs = a
                    .phi_basis(k + 1, n)
                    .add(&a.phi_basis(k, n).scale(&a.node(k + 1)))
                    .unwrap();
                assert_eq!(lhs, rhs, "k = {k} ({variant:?})");
            }
        }
    }

    #[test]
    fn adams_expansion_examples() {
        let a = ring(3, Variant::NonSplit);
        // Ψ^1 = identity.
        let id = a.adams_expansion(&r(1), 6).unwrap();
        assert_eq!(id, a.phi_one(6));
        // Ψ^q = Φ_0 + Φ_1.
        let psi_q = a.adams_expansion(&r(2), 6).unwrap();
        assert_eq!(psi_q.coeffs()[..2], [r(1), r(1)]);
        assert!(psi_q.coeffs()[2..].iter().all(PLocalRational::is_zero));
        // g_1(j) = (j-1)/(q-1).
        let j = PLocalRational::ratio(5, 2);
        let exp = a.adams_expansion(&j, 6).unwrap();
        assert_eq!(
            exp.coeff(1),
            (&j - &r(1)) / (&r(2) - &r(1)),
        );
        // Non-units rejected.
        assert!(matches!(
            a.adams_expansion(&r(3), 6),
            Err(Error::NonUnitAdams(_))
        ));
        assert!(matches!(
            a.adams_expansion(&PLocalRational::ratio(1, 3), 6),
            Err(Error::NonUnitAdams(_))
        ));
    }

    #[test]
    fn adams_polynomial_interpolates_powers() {
        for variant in [Variant::NonSplit, Variant::Split] {
            let a = ring(3, variant);
            let n = 12;
            for j in [r(2), PLocalRational::ratio(1, 2), r(5), r(4)] {
                let poly = a.adams_polynomial(&j, n).unwrap();
                for m in 1..=n {
                    assert_eq!(
                        poly.eval(&a.node(m)),
                        j.pow(a.node_weight(m)),
                        "P_j(q_{m}) for j = {j} ({variant:?})"
                    );
                }
            }
        }
    }

    #[test]
    fn divide_phi_examples() {
        let a = ring(3, Variant::NonSplit);
        // Θ_2/Θ_1 = X - q.
        let q21 = a.divide_phi(2, 1).unwrap();
        assert_eq!(q21, OperationPoly::new(vec![r(-2), r(1)]));
        // Θ_n/Θ_(n-1) = X - q_n.
        for n in 1..=9 {
            let quotient = a.divide_phi(n, n - 1).unwrap();
            assert_eq!(
                quotient,
                OperationPoly::new(vec![-a.node(n), r(1)])
            );
        }
        assert!(a.divide_phi(2, 2).is_err());
        // Exactness: quotient · Θ_m = Θ_n.
        let q52 = a.divide_phi(5, 2).unwrap();
        assert_eq!(q52.mul(&a.theta(2)), a.theta(5));
        assert!(q52.is_monic());
        assert_eq!(q52.degree(), Some(3));
    }

    #[test]
    fn unit_criterion_examples() {
        let a = ring(3, Variant::NonSplit);
        assert!(a.is_unit(&OperationPoly::one()));
        // Φ_1 = X - 1 vanishes at q_1 = 1.
        assert!(!a.is_unit(&OperationPoly::new(vec![r(-1), r(1)])));
        // X - p: all values q_i - 3 are units at p = 3, q = 2.
        assert!(a.is_unit(&OperationPoly::new(vec![r(-3), r(1)])));
        // X - q fails at node 2.
        assert!(!a.is_unit(&OperationPoly::new(vec![r(-2), r(1)])));
    }

    #[test]
    fn unit_window_reduction() {
        // One period agrees with the larger window 6(p-1) on a spread of
        // small polynomials.
        for p in [3u64, 5] {
            let a = Ring::new(make_config(p, 2, Variant::NonSplit, 8).unwrap());
            let wide = 6 * (p as usize - 1);
            for c0 in -6i64..=6 {
                for c1 in -3i64..=3 {
                    let f = OperationPoly::new(vec![r(c0), r(c1), r(1)]);
                    assert_eq!(
                        a.is_unit(&f),
                        a.is_unit_with_window(&f, wide),
                        "p = {p}, f = {f}"
                    );
                }
            }
        }
    }

    #[test]
    fn augmentation_and_order() {
        let a = ring(3, Variant::NonSplit);
        let phi0 = a.phi_one(8);
        assert_eq!(augmentation(&phi0), r(1));
        assert_eq!(filtration_order(&phi0), 0);
        let phi3 = a.phi_basis(3, 8);
        assert_eq!(augmentation(&phi3), r(0));
        assert_eq!(filtration_order(&phi3), 3);
        let zero = a.phi_vector(vec![r(0); 8]).unwrap();
        assert_eq!(filtration_order(&zero), 8);
    }

    #[test]
    fn phi_vector_rejects_non_p_local() {
        let a = ring(3, Variant::NonSplit);
        assert!(a.phi_vector(vec![PLocalRational::ratio(1, 3)]).is_err());
    }

    fn arb_p_local_coeffs(n: usize) -> impl Strategy<Value = Vec<PLocalRational>> {
        proptest::collection::vec((-40i64..40, prop_oneof![Just(1i64), Just(2), Just(4), Just(8)]), n)
            .prop_map(|v| v.into_iter().map(|(a, b)| PLocalRational::ratio(a, b)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn multiply_commutative_associative(a in arb_p_local_coeffs(6), b in arb_p_local_coeffs(6), c in arb_p_local_coeffs(6)) {
            let ring = ring(3, Variant::NonSplit);
            let a = ring.phi_vector(a).unwrap();
            let b = ring.phi_vector(b).unwrap();
            let c = ring.phi_vector(c).unwrap();
            let ab = ring.multiply(&a, &b).unwrap();
            prop_assert_eq!(&ab, &ring.multiply(&b, &a).unwrap());
            let bc = ring.multiply(&b, &c).unwrap();
            prop_assert_eq!(
                ring.multiply(&ab, &c).unwrap(),
                ring.multiply(&a, &bc).unwrap()
            );
        }

        #[test]
        fn phi_poly_round_trips(coeffs in arb_p_local_coeffs(7)) {
            let ring = ring(3, Variant::NonSplit);
            let a = ring.phi_vector(coeffs).unwrap();
            // phi → poly → phi is the identity after padding back.
            let round = ring.poly_to_phi(&ring.phi_to_poly(&a)).pad(7).unwrap();
            prop_assert_eq!(round, a.clone());
            // poly → phi → poly is the identity on degree < N.
            let f = ring.phi_to_poly(&a);
            prop_assert_eq!(ring.phi_to_poly(&ring.poly_to_phi(&f).pad(7).unwrap()), f);
        }

        #[test]
        fn adams_multiplicative(an in 1i64..30, bn in 1i64..30) {
            // Ψ^a·Ψ^b = Ψ^(ab) for p-local units.
            let ring = ring(3, Variant::NonSplit);
            prop_assume!(an % 3 != 0 && bn % 3 != 0);
            let a = r(an);
            let b = r(bn);
            let n = 8;
            let lhs = ring
                .multiply(&ring.adams_expansion(&a, n).unwrap(), &ring.adams_expansion(&b, n).unwrap())
                .unwrap();
            let rhs = ring.adams_expansion(&(&a * &b), n).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
