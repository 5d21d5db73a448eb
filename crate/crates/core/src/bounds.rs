//! Cap-set counts and per-dimension growth rates.
//!
//! An admissible family in {0,1,2}^m with f weight-w vectors yields a cap
//! set in F₃^{36m} of size f·(72·112⁵)^{m−w}·(112⁶)^w. The count is kept as
//! an exact big integer; the per-dimension base count^(1/(36m)) is computed
//! as a scaled integer root with a certified enclosure, never through
//! floating point.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("f must be at least 1")]
    BadF,
    #[error("weight must satisfy 0 < w <= m")]
    BadWeight { m: u32, w: u32 },
    #[error("precision must be at least 64 bits")]
    PrecisionTooLow,
}

/// Existence thresholds from the finiteness argument, kept symbolic: no
/// numeric value is assigned to either anywhere in this crate.
pub const RAMSEY_C1: &str = "R^(4)(5,5,5,5,5,5,6,6)";
pub const RAMSEY_C2: &str = "R^(3)(4,4,4,4,4,4,6,6)";

/// The exact cap-set size f·(72·112⁵)^(m−w)·(112⁶)^w in F₃^{36m}.
pub fn capset_count(f: u64, m: u32, w: u32) -> Result<BigUint, BoundsError> {
    if f == 0 {
        return Err(BoundsError::BadF);
    }
    if w == 0 || w > m {
        return Err(BoundsError::BadWeight { m, w });
    }
    let block_mixed = BigUint::from(72u32) * BigUint::from(112u32).pow(5);
    let block_full = BigUint::from(112u32).pow(6);
    Ok(BigUint::from(f) * block_mixed.pow(m - w) * block_full.pow(w))
}

/// A certified enclosure of count^(1/n): the true base lies in
/// [mantissa·2^(−shift), (mantissa+1)·2^(−shift)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseBound {
    pub mantissa: BigUint,
    pub shift: u32,
    pub root_degree: u32,
}

impl BaseBound {
    /// Nearest f64 to the lower enclosure endpoint.
    pub fn to_f64(&self) -> f64 {
        let bits = self.mantissa.bits();
        if bits <= 53 {
            return self.mantissa.to_f64().unwrap_or(f64::NAN)
                * (-(self.shift as f64)).exp2();
        }
        let top = (&self.mantissa >> (bits - 53)).to_f64().unwrap_or(f64::NAN);
        top * ((bits - 53) as f64 - self.shift as f64).exp2()
    }

    /// Decimal rendering of the lower endpoint, truncated to `digits`
    /// fractional digits.
    pub fn decimal(&self, digits: u32) -> String {
        let scaled = (&self.mantissa * BigUint::from(10u32).pow(digits)) >> self.shift;
        let s = scaled.to_str_radix(10);
        if digits == 0 {
            return s;
        }
        let d = digits as usize;
        if s.len() <= d {
            format!("0.{}{}", "0".repeat(d - s.len()), s)
        } else {
            format!("{}.{}", &s[..s.len() - d], &s[s.len() - d..])
        }
    }
}

impl fmt::Display for BaseBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.decimal(6))
    }
}

/// count^(1/(36m)) with a certified error at most 2^(−precision_bits), well
/// inside the promised 2^(−precision_bits+8).
///
/// Computed as ⌊(count·2^(n·k))^(1/n)⌋ with n = 36m and k = precision_bits,
/// so the enclosure is exact by construction; the test suite checks the
/// defining inequalities mantissa^n ≤ count·2^(n·k) < (mantissa+1)^n.
pub fn capset_base(f: u64, m: u32, w: u32, precision_bits: u32) -> Result<BaseBound, BoundsError> {
    if precision_bits < 64 {
        return Err(BoundsError::PrecisionTooLow);
    }
    let count = capset_count(f, m, w)?;
    let n = 36 * m;
    let shifted = count << (n as u64 * precision_bits as u64);
    Ok(BaseBound {
        mantissa: shifted.nth_root(n),
        shift: precision_bits,
        root_degree: n,
    })
}

/// Everything a bound report carries; the text renderings live in
/// [`BoundReport::render_text`] and [`BoundReport::render_kv`].
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub f: u64,
    pub m: u32,
    pub w: u32,
    pub dimension: u32,
    pub count: BigUint,
    pub base: BaseBound,
}

impl BoundReport {
    pub fn new(f: u64, m: u32, w: u32, precision_bits: u32) -> Result<Self, BoundsError> {
        Ok(Self {
            f,
            m,
            w,
            dimension: 36 * m,
            count: capset_count(f, m, w)?,
            base: capset_base(f, m, w, precision_bits)?,
        })
    }

    pub fn render_text(&self) -> String {
        format!(
            "cap set in F_3^{} of size {} from {} weight-{} vectors in {{0,1,2}}^{}\n\
             per-dimension base {} (error <= 2^-{})\n\
             existence thresholds stay symbolic: C1 = {RAMSEY_C1}, C2 = {RAMSEY_C2}",
            self.dimension,
            self.count,
            self.f,
            self.w,
            self.m,
            self.base.decimal(6),
            self.base.shift,
        )
    }

    pub fn render_kv(&self) -> String {
        format!(
            "f={}\nm={}\nw={}\ndimension={}\ncount={}\nbase={}\nbase_error=2^-{}\n",
            self.f,
            self.m,
            self.w,
            self.dimension,
            self.count,
            self.base.decimal(6),
            self.base.shift,
        )
    }
}

/// True iff the enclosure inequalities hold; exposed so callers and tests
/// can certify a bound independently of how it was computed.
pub fn certify_base(count: &BigUint, base: &BaseBound) -> bool {
    let n = base.root_degree;
    let scaled = count << (n as u64 * base.shift as u64);
    let low = base.mantissa.pow(n);
    let high = (&base.mantissa + BigUint::one()).pow(n);
    low <= scaled && scaled < high
}
