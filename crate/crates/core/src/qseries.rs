//! Truncated formal q-series with rational exponents.
//!
//! All exponents in scope lie on the (1/8)Z grid (conformal weights m^2/4,
//! (q-1)^2/8 and half-integer shifts), so exponents are stored as scaled
//! integers (8x the rational value). Inputs off the grid are rejected.
//!
//! Every series carries a truncation bound `trunc`: coefficients of q^e are
//! exactly represented for all e <= trunc and unknown beyond it. Sums take
//! the minimum bound; products take `min(b1 + min2, b2 + min1)`, which is
//! the largest exponent the two factors still determine.

use crate::error::{Error, Result};
use crate::rational::Rat;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use std::collections::BTreeMap;
use std::fmt;

/// Converts a rational exponent to the scaled (x8) grid.
pub fn exp8(r: &Rat) -> Result<i64> {
    let scaled = r * Rat::from_integer(BigInt::from(8));
    if !scaled.is_integer() {
        return Err(Error::ExponentDenominator(r.to_string()));
    }
    scaled
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::ExponentDenominator(r.to_string()))
}

fn exp_rat(e8: i64) -> Rat {
    Rat::new(BigInt::from(e8), BigInt::from(8))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    /// scaled exponent -> integer coefficient, no zeros stored
    terms: BTreeMap<i64, i128>,
    /// largest scaled exponent that is exactly represented
    trunc: i64,
}

impl QSeries {
    pub fn zero(order: &Rat) -> Result<Self> {
        Ok(QSeries {
            terms: BTreeMap::new(),
            trunc: exp8(order)?,
        })
    }

    pub fn one(order: &Rat) -> Result<Self> {
        QSeries::monomial(&Rat::from_integer(BigInt::from(0)), 1, order)
    }

    /// `coeff * q^exp` exact up to `order`.
    pub fn monomial(exp: &Rat, coeff: i128, order: &Rat) -> Result<Self> {
        let e = exp8(exp)?;
        let trunc = exp8(order)?;
        let mut terms = BTreeMap::new();
        if coeff != 0 && e <= trunc {
            terms.insert(e, coeff);
        }
        Ok(QSeries { terms, trunc })
    }

    pub fn trunc8(&self) -> i64 {
        self.trunc
    }

    fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Coefficient of q^exp, or `None` when the exponent lies beyond the
    /// truncation bound (or off the grid).
    pub fn coeff(&self, exp: &Rat) -> Option<i128> {
        let e = exp8(exp).ok()?;
        if e > self.trunc {
            return None;
        }
        Some(self.terms.get(&e).copied().unwrap_or(0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Rat, i128)> + '_ {
        self.terms.iter().map(|(&e, &c)| (exp_rat(e), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, e8: i64, c: i128) {
        if c == 0 || e8 > self.trunc {
            return;
        }
        let slot = self.terms.entry(e8).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e8);
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let trunc = self.trunc.min(other.trunc);
        let mut out = QSeries {
            terms: BTreeMap::new(),
            trunc,
        };
        for (&e, &c) in self.terms.iter().chain(other.terms.iter()) {
            out.insert(e, c);
        }
        out
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, s: i128) -> QSeries {
        let mut out = QSeries {
            terms: BTreeMap::new(),
            trunc: self.trunc,
        };
        if s != 0 {
            for (&e, &c) in &self.terms {
                out.terms.insert(e, c * s);
            }
        }
        out
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let trunc = match (self.min_exp(), other.min_exp()) {
            (Some(m1), Some(m2)) => (self.trunc.saturating_add(m2)).min(other.trunc.saturating_add(m1)),
            // multiplying by zero is exact everywhere
            _ => i64::MAX,
        };
        let mut out = QSeries {
            terms: BTreeMap::new(),
            trunc,
        };
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                if e1 + e2 > trunc {
                    break;
                }
                out.insert(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Multiplies by q^exp (shifts every exponent and the bound).
    pub fn shift(&self, exp: &Rat) -> Result<QSeries> {
        let d = exp8(exp)?;
        Ok(QSeries {
            terms: self.terms.iter().map(|(&e, &c)| (e + d, c)).collect(),
            trunc: self.trunc.saturating_add(d),
        })
    }

    /// Coefficient-wise equality for all exponents <= bound.
    pub fn agree_up_to(&self, other: &QSeries, bound: &Rat) -> Result<bool> {
        let b = exp8(bound)?;
        assert!(
            b <= self.trunc && b <= other.trunc,
            "comparison bound exceeds a truncation bound"
        );
        let lhs: Vec<_> = self.terms.range(..=b).collect();
        let rhs: Vec<_> = other.terms.range(..=b).collect();
        Ok(lhs == rhs)
    }

    /// Sorted `[["exp","coeff"], ...]` pairs.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(&e, &c)| {
                    serde_json::json!([exp_rat(e).to_string(), c.to_string()])
                })
                .collect(),
        )
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (&e, &c) in &self.terms {
                if first {
                    first = false;
                    if c < 0 {
                        write!(f, "-")?;
                    }
                } else if c < 0 {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                let a = c.unsigned_abs();
                let exp = exp_rat(e);
                if e == 0 {
                    write!(f, "{a}")?;
                } else if a == 1 {
                    write!(f, "q^{exp}")?;
                } else {
                    write!(f, "{a}*q^{exp}")?;
                }
            }
        }
        write!(f, " + O(q>{})", exp_rat(self.trunc))
    }
}

fn check_order(order: &Rat) -> Result<i64> {
    if order.is_negative() {
        return Err(Error::NegativeOrder(order.to_string()));
    }
    exp8(order)
}

/// 1 / prod_{n>=1} (1 - q^n), truncated: the coefficient of q^k is the
/// number of partitions of k.
pub fn euler_inverse(order: &Rat) -> Result<QSeries> {
    let trunc = check_order(order)?;
    let nmax = (trunc / 8) as usize;
    let mut p = vec![0i128; nmax + 1];
    p[0] = 1;
    for part in 1..=nmax {
        for e in part..=nmax {
            p[e] += p[e - part];
        }
    }
    let mut terms = BTreeMap::new();
    for (k, &c) in p.iter().enumerate() {
        terms.insert(8 * k as i64, c);
    }
    Ok(QSeries { terms, trunc })
}

/// prod_{n>=1} (1 + q^{n-1/2}) / (1 - q^n), truncated: the NS Verma
/// denominator, with exponents on the half-integer grid.
pub fn ns_denominator(order: &Rat) -> Result<QSeries> {
    let trunc = check_order(order)?;
    // distinct parts from {1/2, 3/2, 5/2, ...}, scaled x8 -> {4, 12, 20, ...}
    let mut dp = vec![0i128; trunc.max(0) as usize + 1];
    dp[0] = 1;
    let mut part: i64 = 4;
    while part <= trunc {
        for e in (part..=trunc).rev() {
            dp[e as usize] += dp[(e - part) as usize];
        }
        part += 8;
    }
    let mut terms = BTreeMap::new();
    for (e, &c) in dp.iter().enumerate() {
        if c != 0 {
            terms.insert(e as i64, c);
        }
    }
    let odd_half = QSeries { terms, trunc };
    Ok(odd_half.mul(&euler_inverse(order)?))
}
