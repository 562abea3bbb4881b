//! Exact p-local rational arithmetic.
//!
//! [`PLocalRational`] is an arbitrary-precision rational; the p-local
//! condition (denominator coprime to p) is a property checked per prime, not
//! baked into the representation, because rationalized modules legitimately
//! hold arbitrary rationals. Valuations, modular reduction, Gaussian
//! binomials, and the validated ring configuration all live here.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A p-adic valuation, with a dedicated sentinel for `vp(0) = ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    /// True when the valuation is at least `bound` (infinity passes).
    pub fn at_least(self, bound: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinity => true,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
            (Valuation::Infinity, _) => Ordering::Greater,
            (_, Valuation::Infinity) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "∞"),
        }
    }
}

/// An exact rational number, stored fully reduced with positive denominator.
///
/// Serializes as `"num/den"`, with the `/den` part omitted when the
/// denominator is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PLocalRational(BigRational);

impl PLocalRational {
    pub fn new(numerator: BigInt, denominator: BigInt) -> Self {
        PLocalRational(BigRational::new(numerator, denominator))
    }

    pub fn from_integer<T: Into<BigInt>>(n: T) -> Self {
        PLocalRational(BigRational::from_integer(n.into()))
    }

    pub fn ratio<T: Into<BigInt>, U: Into<BigInt>>(num: T, den: U) -> Self {
        Self::new(num.into(), den.into())
    }

    pub fn zero() -> Self {
        PLocalRational(BigRational::zero())
    }

    pub fn one() -> Self {
        PLocalRational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    /// Integer power, with negative exponents inverting (panics on 0^neg).
    pub fn pow(&self, exp: i64) -> Self {
        let exp: i32 = exp.try_into().expect("exponent fits in i32");
        PLocalRational(self.0.pow(exp))
    }

    pub fn recip(&self) -> Self {
        PLocalRational(self.0.clone().recip())
    }

    pub fn abs(&self) -> Self {
        PLocalRational(self.0.abs())
    }

    /// Exact integer value, if the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.0.denom().is_one() {
            Some(self.0.numer().clone())
        } else {
            None
        }
    }
}

impl fmt::Display for PLocalRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for PLocalRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("invalid rational: {s:?}")))
        };
        match s.split_once('/') {
            None => Ok(PLocalRational(BigRational::from_integer(parse_int(s)?))),
            Some((num, den)) => {
                let den = parse_int(den)?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(PLocalRational::new(parse_int(num)?, den))
            }
        }
    }
}

impl Serialize for PLocalRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PLocalRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for PLocalRational {
            type Output = PLocalRational;
            fn $method(self, rhs: PLocalRational) -> PLocalRational {
                PLocalRational(self.0.$method(rhs.0))
            }
        }

        impl<'a> $trait<&'a PLocalRational> for &'a PLocalRational {
            type Output = PLocalRational;
            fn $method(self, rhs: &'a PLocalRational) -> PLocalRational {
                PLocalRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for PLocalRational {
    type Output = PLocalRational;
    fn neg(self) -> PLocalRational {
        PLocalRational(-self.0)
    }
}

impl Neg for &PLocalRational {
    type Output = PLocalRational;
    fn neg(self) -> PLocalRational {
        PLocalRational(-&self.0)
    }
}

impl AddAssign<&PLocalRational> for PLocalRational {
    fn add_assign(&mut self, rhs: &PLocalRational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&PLocalRational> for PLocalRational {
    fn sub_assign(&mut self, rhs: &PLocalRational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&PLocalRational> for PLocalRational {
    fn mul_assign(&mut self, rhs: &PLocalRational) {
        self.0 *= &rhs.0;
    }
}

/// p-adic valuation of an integer; `Infinity` for zero.
fn vp_int(n: &BigInt, p: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinity;
    }
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut rest = n.clone();
    loop {
        let (quot, rem) = rest.div_rem(&p);
        if rem.is_zero() {
            v += 1;
            rest = quot;
        } else {
            return Valuation::Finite(v);
        }
    }
}

/// p-adic valuation ν_p(x); the infinity sentinel for x = 0.
pub fn vp(x: &PLocalRational, p: u64) -> Valuation {
    match (vp_int(x.numerator(), p), vp_int(x.denominator(), p)) {
        (Valuation::Infinity, _) => Valuation::Infinity,
        (Valuation::Finite(n), Valuation::Finite(d)) => Valuation::Finite(n - d),
        (_, Valuation::Infinity) => unreachable!("zero denominator"),
    }
}

/// True when ν_p(x) ≥ 0, i.e. x lies in Z_(p).
pub fn is_p_local(x: &PLocalRational, p: u64) -> bool {
    vp(x, p).at_least(0)
}

/// The residue of a p-local rational in Z/p^m, inverting the denominator.
///
/// Rejects inputs with negative valuation. The result is the canonical
/// representative in `[0, p^m)`.
pub fn reduce_mod(x: &PLocalRational, p: u64, m: u32) -> Result<BigInt> {
    let v = vp(x, p);
    if !v.at_least(0) {
        return Err(Error::NotPLocal {
            value: x.to_string(),
            p,
            valuation: v.finite().unwrap_or(0),
        });
    }
    let modulus = BigInt::from(p).pow(m);
    let num = x.numerator().mod_floor(&modulus);
    let den = x.denominator().mod_floor(&modulus);
    let inv = mod_inverse(&den, &modulus).ok_or_else(|| {
        Error::InternalConsistency(format!("denominator of {x} not invertible mod {p}^{m}"))
    })?;
    Ok((num * inv).mod_floor(&modulus))
}

/// Inverse of `a` modulo `m` by extended Euclid, if gcd(a, m) = 1.
fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Which presentation of p-local K-theory the ring models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// The full p-local K-theory ring, working base q.
    NonSplit,
    /// The Adams-summand ring, working base q̂ = q^(p-1).
    Split,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::NonSplit => write!(f, "nonsplit"),
            Variant::Split => write!(f, "split"),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nonsplit" | "non-split" => Ok(Variant::NonSplit),
            "split" => Ok(Variant::Split),
            other => Err(Error::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

/// Validated ring parameters: an odd prime, a base primitive mod p², the
/// split/non-split variant, and the default filtration truncation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingConfig {
    pub p: u64,
    pub q: u64,
    pub variant: Variant,
    pub truncation: usize,
}

impl RingConfig {
    /// The working base: q in the non-split variant, q̂ = q^(p-1) in the
    /// split one.
    pub fn base(&self) -> PLocalRational {
        match self.variant {
            Variant::NonSplit => PLocalRational::from_integer(self.q),
            Variant::Split => PLocalRational::from_integer(self.q).pow(self.p as i64 - 1),
        }
    }

    /// Multiplicative order of the working base modulo p: p-1 for the
    /// non-split variant, 1 for the split one (q̂ ≡ 1 mod p by Fermat).
    pub fn base_order_mod_p(&self) -> u64 {
        match self.variant {
            Variant::NonSplit => self.p - 1,
            Variant::Split => 1,
        }
    }

    /// Exponent rescaling between powers of the working base and powers of
    /// the original q: base^e = q^(weight·e).
    pub fn weight_multiplier(&self) -> i64 {
        match self.variant {
            Variant::NonSplit => 1,
            Variant::Split => self.p as i64 - 1,
        }
    }
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Multiplicative order of a modulo m (a assumed coprime to m).
fn multiplicative_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut ord = 1;
    while x != 1 {
        x = x * a % m;
        ord += 1;
    }
    ord
}

/// Builds a validated configuration.
///
/// Requires p an odd prime and q of multiplicative order p(p-1) modulo p²,
/// i.e. primitive mod p². Each failure mode gets its own error.
pub fn make_config(p: u64, q: u64, variant: Variant, truncation: usize) -> Result<RingConfig> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if truncation == 0 {
        return Err(Error::ZeroTruncation);
    }
    let p_squared = p * p;
    let expected = p * (p - 1);
    if q == 0 || q % p == 0 {
        return Err(Error::NotPrimitive {
            q,
            p_squared,
            found: 0,
            expected,
        });
    }
    let found = multiplicative_order(q % p_squared, p_squared);
    if found != expected {
        return Err(Error::NotPrimitive {
            q,
            p_squared,
            found,
            expected,
        });
    }
    Ok(RingConfig {
        p,
        q,
        variant,
        truncation,
    })
}

/// Smallest positive integer primitive modulo p², the reproducible default
/// base for a given prime.
pub fn default_q(p: u64) -> Option<u64> {
    if !is_odd_prime(p) {
        return None;
    }
    let p_squared = p * p;
    let expected = p * (p - 1);
    (2..p_squared)
        .filter(|q| q % p != 0)
        .find(|&q| multiplicative_order(q, p_squared) == expected)
}

/// Gaussian binomial coefficient [n choose k]_q by the Pascal recurrence
/// gp(n,k) = gp(n-1,k-1) + q^k·gp(n-1,k), in the ring's working base.
pub fn gaussian_binomial(n: usize, k: usize, cfg: &RingConfig) -> Result<PLocalRational> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!(
            "gaussian binomial requires k ≤ n, got ({n}, {k})"
        )));
    }
    let base = cfg.base();
    // Row-by-row Pascal table; row r holds [r choose 0..=min(r,k)]_q.
    let mut row = vec![PLocalRational::one()];
    for _ in 1..=n {
        let mut next = Vec::with_capacity((row.len() + 1).min(k + 1));
        next.push(PLocalRational::one());
        let mut base_pow = PLocalRational::one();
        for j in 1..=k.min(row.len()) {
            base_pow *= &base;
            let mut entry = row[j - 1].clone();
            if j < row.len() {
                entry += &(&base_pow * &row[j]);
            }
            next.push(entry);
        }
        row = next;
    }
    Ok(row[k].clone())
}
