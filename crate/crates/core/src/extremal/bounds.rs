//! Exact bound formulas for the maximum order of an r-uniform tau-critical
//! hypergraph with transversal number t, and the gap report comparing them
//! against search evidence.
//!
//! General r: `C(t+r-2, r-1) + (t+r-2) <= v_max(r,t) <= t^(r-1) + t*C(t+r-2, r-2)`.
//! For r = 3 the sharper ladder is `8t^2+3t`, then `2t^2+t`, then the rational
//! `(3/4)t^2 + t + 1`, against the conjectured exact value `C(t+2, 2)`.
//! Everything is integer or exact rational arithmetic; overflow is an error,
//! never a wrap.

use std::fmt;

use thiserror::Error;

use crate::hypergraph::checked_binomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("bound value overflows exact 128-bit arithmetic at r={r}, t={t}")]
    Overflow { r: u32, t: u64 },
    #[error("bounds need r >= 2 and t >= 1, got r={r}, t={t}")]
    OutOfDomain { r: u32, t: u64 },
}

/// An exact nonnegative rational, kept reduced. The quarter-integer upper
/// bound for r=3 is stored this way and never floored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rational {
    num: u128,
    den: u128,
}

impl Rational {
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den != 0);
        let g = gcd(num, den);
        Rational {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    pub fn denominator(&self) -> u128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// Compares against an integer without rounding.
    pub fn cmp_integer(&self, value: u128) -> std::cmp::Ordering {
        // num/den vs value  <=>  num vs value*den; den <= 4 here so no overflow
        // for in-domain inputs, but use checked math anyway.
        match value.checked_mul(self.den) {
            Some(rhs) => self.num.cmp(&rhs),
            None => std::cmp::Ordering::Less,
        }
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// The r = 3 bound ladder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct R3Bounds {
    /// 8t^2 + 3t
    pub sp_upper: u128,
    /// 2t^2 + t
    pub gylt_upper: u128,
    /// (3/4)t^2 + t + 1, exact rational
    pub tuza_upper: Rational,
    /// C(t+2, 2), the conjectured exact value
    pub conjecture: u128,
}

/// All bound formulas instantiated at one (r, t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsTable {
    pub r: u32,
    pub t: u64,
    /// C(t+r-2, r-1) + (t+r-2)
    pub lower_gylt: u128,
    /// t^(r-1) + t * C(t+r-2, r-2)
    pub upper_gylt: u128,
    pub r3: Option<R3Bounds>,
}

fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

pub fn bounds(r: u32, t: u64) -> Result<BoundsTable, BoundsError> {
    if r < 2 || t < 1 {
        return Err(BoundsError::OutOfDomain { r, t });
    }
    let overflow = || BoundsError::Overflow { r, t };
    let base = (t + r as u64).checked_sub(2).ok_or_else(overflow)?;
    let lower_gylt = checked_binomial(base, r as u64 - 1)
        .and_then(|b| b.checked_add(base as u128))
        .ok_or_else(overflow)?;
    let upper_gylt = checked_pow(t as u128, r - 1)
        .and_then(|p| {
            checked_binomial(base, r as u64 - 2)
                .and_then(|b| b.checked_mul(t as u128))
                .and_then(|m| p.checked_add(m))
        })
        .ok_or_else(overflow)?;
    let r3 = if r == 3 {
        let t = t as u128;
        let t2 = t.checked_mul(t).ok_or_else(overflow)?;
        let sp_upper = t2
            .checked_mul(8)
            .and_then(|v| v.checked_add(3 * t))
            .ok_or_else(overflow)?;
        let gylt_upper = t2
            .checked_mul(2)
            .and_then(|v| v.checked_add(t))
            .ok_or_else(overflow)?;
        let tuza_num = t2
            .checked_mul(3)
            .and_then(|v| v.checked_add(4 * t))
            .and_then(|v| v.checked_add(4))
            .ok_or_else(overflow)?;
        let conjecture = checked_binomial(t as u64 + 2, 2).ok_or_else(overflow)?;
        Some(R3Bounds {
            sp_upper,
            gylt_upper,
            tuza_upper: Rational::new(tuza_num, 4),
            conjecture,
        })
    } else {
        None
    };
    Ok(BoundsTable {
        r,
        t,
        lower_gylt,
        upper_gylt,
        r3,
    })
}

/// Standing of the conjectured equality `v_max(r,t) = lower bound` at one
/// (r, t) cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapStatus {
    /// An exhaustive run pinned v_max exactly at the lower bound.
    Confirmed,
    /// An exhaustive run found v_max strictly above the lower bound.
    Refuted,
    /// No exhaustive run; evidence only.
    Open,
    /// An exhaustive run returned a value below the proven lower bound,
    /// which indicates a defect in the search, not in the mathematics.
    AnomalousBelowLower,
}

impl GapStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            GapStatus::Confirmed => "confirmed",
            GapStatus::Refuted => "refuted",
            GapStatus::Open => "open",
            GapStatus::AnomalousBelowLower => "anomalous-below-lower",
        }
    }
}

/// Lower bound, best certificate known, upper bounds, and the equality status.
#[derive(Clone, Debug)]
pub struct GapReport {
    pub bounds: BoundsTable,
    /// Largest order among verified certificates at this (r, t).
    pub best_certificate_order: Option<u32>,
    /// Exact maximum from an exhaustive run, when one exists.
    pub exhaustive_max: Option<u32>,
    pub status: GapStatus,
    /// The equality question is posed for t >= r; below that range the
    /// maximum routinely exceeds the lower-bound formula (already at
    /// (r, 2) = 3(r-1) for r >= 3), so a `Refuted` there says nothing
    /// about the open question.
    pub in_question_range: bool,
}

pub fn gap_report(
    bounds: BoundsTable,
    best_certificate_order: Option<u32>,
    exhaustive_max: Option<u32>,
) -> GapReport {
    let status = match exhaustive_max {
        Some(v) if (v as u128) == bounds.lower_gylt => GapStatus::Confirmed,
        Some(v) if (v as u128) > bounds.lower_gylt => GapStatus::Refuted,
        Some(_) => GapStatus::AnomalousBelowLower,
        None => GapStatus::Open,
    };
    let in_question_range = bounds.t >= bounds.r as u64;
    GapReport {
        bounds,
        best_certificate_order,
        exhaustive_max,
        status,
        in_question_range,
    }
}
