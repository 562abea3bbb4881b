//! Congruence and identity checkers for the operation ring, with
//! machine-readable reports.

use num_traits::ToPrimitive;
use serde::Serialize;

use super::Ring;
use crate::arith::{reduce_mod, vp, PLocalRational, Valuation};
use crate::{Error, Result};

fn vp_of_usize(n: usize, p: u64) -> i64 {
    let mut n = n as u64;
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Outcome of the structure-constant congruence sweep: c_(j,n)^k ≡ 0 mod p
/// on the window (2p-2)s ≤ j ≤ k < (2p-2)s + n.
#[derive(Debug, Clone, Serialize)]
pub struct CcongReport {
    pub p: u64,
    pub s_max: usize,
    pub n_max: usize,
    pub instances: usize,
    pub failures: Vec<(usize, usize, usize, usize)>, // (s, j, n, k)
    pub passed: bool,
}

/// One quotient-congruence instance: every Φ-coefficient of
/// (Θ_n/Θ_m expanded) - Φ_(n-m) has valuation ≥ 1 + ν_p(n-m).
#[derive(Debug, Clone, Serialize)]
pub struct PhiQuotientInstance {
    pub n: usize,
    pub m: usize,
    pub required_valuation: i64,
    /// Smallest coefficient valuation observed (None encodes ∞: the
    /// difference was exactly Φ_(n-m)).
    pub min_valuation: Option<i64>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiQuotientReport {
    pub p: u64,
    pub instances: Vec<PhiQuotientInstance>,
    pub passed: bool,
}

/// Θ_N(X) ≡ X^N - 1 mod p at the variant-appropriate exponent
/// N = ord_p(base)·p^k.
#[derive(Debug, Clone, Serialize)]
pub struct ThetaPowerReport {
    pub p: u64,
    pub k: u32,
    pub exponent: usize,
    pub mismatched_degrees: Vec<usize>,
    pub passed: bool,
}

/// c_(j,n)^k = c_(n,j)^k over a box of indices.
#[derive(Debug, Clone, Serialize)]
pub struct SymmetryReport {
    pub max_index: usize,
    pub instances: usize,
    pub failures: Vec<(usize, usize, usize)>,
    pub passed: bool,
}

/// The mod-p solution of the congruence system
/// Σ_(j=k-n)^(k) c_(j,n)^k·b_j ≡ a_k (mod p), k = n..n+window-1.
///
/// Only the unknowns b_0..b_(D-1) with D = (2p-2)·⌊window/(2p-2)⌋ are
/// determined by the triangular block structure; the solver restricts to the
/// first D equations, whose mod-p matrix is then square, and reports its
/// rank.
#[derive(Debug, Clone, Serialize)]
pub struct AbcongsSolution {
    pub p: u64,
    pub n: usize,
    /// Residues mod p of the determined unknowns b_0, b_1, ...
    pub determined: Vec<u64>,
    /// Number of leading congruences (k = n..n+equations-1) covered by the
    /// determined unknowns; re-substitution is exact on these.
    pub equations: usize,
    /// Rank of the reduced square system over F_p; uniqueness holds exactly
    /// when this equals `determined.len()`.
    pub rank: usize,
}

impl AbcongsSolution {
    pub fn is_unique(&self) -> bool {
        self.rank == self.determined.len()
    }
}

impl Ring {
    /// Sweeps the congruence window of the structure-constant theorem.
    pub fn verify_ccong(&self, s_max: usize, n_max: usize) -> CcongReport {
        let p = self.p();
        let period = self.period();
        let mut instances = 0;
        let mut failures = Vec::new();
        for s in 1..=s_max {
            for n in 1..=n_max {
                for j in period * s..period * s + n {
                    for k in j..period * s + n {
                        instances += 1;
                        let c = self.structure_constant(j, n, k);
                        let residue = reduce_mod(&c, p, 1).expect("structure constants are p-local");
                        if residue != 0u8.into() {
                            failures.push((s, j, n, k));
                        }
                    }
                }
            }
        }
        CcongReport {
            p,
            s_max,
            n_max,
            instances,
            passed: failures.is_empty(),
            failures,
        }
    }

    /// Checks one quotient congruence Θ_n/Θ_m ≡ Φ_(n-m) mod p^(1+ν_p(n-m)).
    ///
    /// Requires n > m with n - m divisible by the period 2p-2. The quotient
    /// is expanded exactly in the Φ basis; no modular shortcuts.
    pub fn verify_phi_quotient(&self, n: usize, m: usize) -> Result<PhiQuotientInstance> {
        if n <= m || (n - m) % self.period() != 0 {
            return Err(Error::IndexOutOfRange(format!(
                "quotient congruence needs n > m with {} | (n - m); got ({n}, {m})",
                self.period()
            )));
        }
        let required = 1 + vp_of_usize(n - m, self.p());
        let quotient = self.divide_phi(n, m)?;
        let expansion = self.poly_to_phi(&quotient);
        let mut min_valuation: Valuation = Valuation::Infinity;
        for k in 0..=n - m {
            let mut diff = expansion.coeff(k);
            if k == n - m {
                diff = diff - PLocalRational::one();
            }
            min_valuation = min_valuation.min(vp(&diff, self.p()));
        }
        Ok(PhiQuotientInstance {
            n,
            m,
            required_valuation: required,
            min_valuation: min_valuation.finite(),
            passed: min_valuation.at_least(required),
        })
    }

    /// All pairs m < n ≤ n_max with the period dividing n - m.
    pub fn verify_phi_quotient_sweep(&self, n_max: usize) -> Result<PhiQuotientReport> {
        let mut instances = Vec::new();
        for n in 1..=n_max {
            for m in 0..n {
                if (n - m) % self.period() == 0 {
                    instances.push(self.verify_phi_quotient(n, m)?);
                }
            }
        }
        Ok(PhiQuotientReport {
            p: self.p(),
            passed: instances.iter().all(|i| i.passed),
            instances,
        })
    }

    /// The exponent at which Θ reduces to X^N - 1 mod p: N = d·p^k where d
    /// is the multiplicative order of the working base mod p (p-1 for the
    /// non-split ring, 1 for the split one).
    pub fn theta_power_exponent(&self, k: u32) -> usize {
        let d = self.config().base_order_mod_p() as usize;
        d * (self.p() as usize).pow(k)
    }

    /// Checks Θ_N(X) ≡ X^N - 1 mod p coefficientwise at N =
    /// [`Ring::theta_power_exponent`].
    pub fn verify_theta_power(&self, k: u32) -> ThetaPowerReport {
        let p = self.p();
        let exponent = self.theta_power_exponent(k);
        let theta = self.theta(exponent);
        let mut mismatched = Vec::new();
        for degree in 0..=exponent {
            let coeff = theta.coeff(degree);
            let residue = reduce_mod(&coeff, p, 1).expect("theta coefficients are p-local");
            let expected: u64 = match degree {
                0 => p - 1, // -1 mod p
                d if d == exponent => 1,
                _ => 0,
            };
            if residue != expected.into() {
                mismatched.push(degree);
            }
        }
        ThetaPowerReport {
            p,
            k,
            exponent,
            passed: mismatched.is_empty(),
            mismatched_degrees: mismatched,
        }
    }

    /// Commutativity of the structure constants.
    pub fn verify_symmetry(&self, max_index: usize) -> SymmetryReport {
        let mut instances = 0;
        let mut failures = Vec::new();
        for j in 0..=max_index {
            for n in 0..=max_index {
                for k in j.max(n)..=j + n {
                    instances += 1;
                    if self.structure_constant(j, n, k) != self.structure_constant(n, j, k) {
                        failures.push((j, n, k));
                    }
                }
            }
        }
        SymmetryReport {
            max_index,
            instances,
            passed: failures.is_empty(),
            failures,
        }
    }

    /// Solves the finite window of congruences
    /// Σ_(j=k-n)^(k) c_(j,n)^k·b_j ≡ a_k (mod p) for k = n..n+a.len()-1.
    ///
    /// `a[i]` is the coefficient a_(n+i); all must be p-local. Unknowns that
    /// the triangular structure cannot determine within the window are left
    /// out of the solution. Fails when the truncated system leaks outside
    /// the triangular pattern, is inconsistent, or is underdetermined — any
    /// of which would falsify the congruence theorem.
    pub fn solve_abcongs(&self, a: &[PLocalRational], n: usize) -> Result<AbcongsSolution> {
        let p = self.p();
        let period = self.period();
        let window = a.len();
        let blocks = window / period;
        let determined = period * blocks;
        if determined == 0 {
            return Err(Error::IndexOutOfRange(format!(
                "window of {window} congruences cannot complete a block of {period}"
            )));
        }

        // Residues of the right-hand side for the equations we keep.
        let mut rhs = Vec::with_capacity(determined);
        for item in a.iter().take(determined) {
            let r = reduce_mod(item, p, 1)?;
            rhs.push(r.to_u64().expect("residue fits"));
        }

        // Mod-p coefficient rows; unknown b_j appears in equation k for
        // k-n ≤ j ≤ k. Entries at j ≥ `determined` must vanish mod p or the
        // triangular pattern is violated.
        let mut rows = vec![vec![0u64; determined]; determined];
        for r in 0..determined {
            let k = n + r;
            for j in k.saturating_sub(n)..=k {
                let c = self.structure_constant(j, n, k);
                let residue = reduce_mod(&c, p, 1)?
                    .to_u64()
                    .expect("residue fits");
                if j < determined {
                    rows[r][j] = residue;
                } else if residue != 0 {
                    return Err(Error::InternalConsistency(format!(
                        "congruence window leaks at equation k = {k}, unknown b_{j}: \
                         c_({j},{n})^{k} ≡ {residue} mod {p}"
                    )));
                }
            }
        }

        let (solution, rank) = solve_mod_p(rows, rhs, p)?;
        Ok(AbcongsSolution {
            p,
            n,
            determined: solution,
            equations: determined,
            rank,
        })
    }

    /// Re-substitutes a solution into the congruences it claims to satisfy.
    pub fn check_abcongs(&self, a: &[PLocalRational], n: usize, sol: &AbcongsSolution) -> bool {
        let p = self.p();
        for r in 0..sol.equations {
            let k = n + r;
            let mut acc = 0u64;
            for j in k.saturating_sub(n)..=k {
                let c = reduce_mod(&self.structure_constant(j, n, k), p, 1)
                    .expect("p-local")
                    .to_u64()
                    .unwrap();
                let b = if j < sol.determined.len() {
                    sol.determined[j]
                } else {
                    0 // coefficient is ≡ 0 mod p here, checked by the solver
                };
                acc = (acc + c * b) % p;
            }
            let target = reduce_mod(&a[r], p, 1).expect("p-local").to_u64().unwrap();
            if acc != target {
                return false;
            }
        }
        true
    }
}

/// Gaussian elimination over F_p on a square system; returns the solution
/// and the rank. Errors on inconsistency or rank deficiency.
fn solve_mod_p(
    mut rows: Vec<Vec<u64>>,
    mut rhs: Vec<u64>,
    p: u64,
) -> Result<(Vec<u64>, usize)> {
    let n = rows.len();
    let inv = |a: u64| -> u64 {
        // Fermat inverse; p is prime and a ≢ 0.
        let mut result = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        result
    };

    let mut rank = 0;
    let mut pivot_cols = Vec::with_capacity(n);
    for col in 0..n {
        let Some(pivot_row) = (rank..n).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        rhs.swap(rank, pivot_row);
        let scale = inv(rows[rank][col]);
        for c in 0..n {
            rows[rank][c] = rows[rank][c] * scale % p;
        }
        rhs[rank] = rhs[rank] * scale % p;
        for r in 0..n {
            if r != rank && rows[r][col] % p != 0 {
                let factor = rows[r][col] % p;
                for c in 0..n {
                    rows[r][c] = (rows[r][c] + (p - factor) * rows[rank][c]) % p;
                }
                rhs[r] = (rhs[r] + (p - factor) * rhs[rank]) % p;
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }

    for r in rank..n {
        if rhs[r] % p != 0 {
            return Err(Error::InternalConsistency(
                "congruence system inconsistent mod p".into(),
            ));
        }
    }
    if rank < n {
        return Err(Error::InternalConsistency(format!(
            "congruence system underdetermined: rank {rank} of {n}"
        )));
    }

    let mut solution = vec![0u64; n];
    for (r, &col) in pivot_cols.iter().enumerate() {
        solution[col] = rhs[r] % p;
    }
    Ok((solution, rank))
}
