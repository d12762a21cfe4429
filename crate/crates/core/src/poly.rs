//! Univariate and bivariate polynomial rings over the exact rationals.
//!
//! `Poly1` is the ring `Q[x]` (dense coefficient vector); `Poly2` is
//! `Q[x,y]` (sparse map keyed by exponent pairs). Fusion polynomials live
//! in `Poly1` after the Zhu image in `Poly2` is specialized at a
//! top-level weight.

use crate::error::{Error, Result};
use crate::rational::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in one variable x; `coeffs[i]` is the coefficient of x^i.
/// Invariant: the last stored coefficient is nonzero (empty = zero poly).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly1 {
    coeffs: Vec<Rat>,
}

impl Poly1 {
    pub fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly1::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Poly1 { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn x() -> Self {
        Poly1 {
            coeffs: vec![Rat::zero(), Rat::one()],
        }
    }

    /// `x - r`, the monic linear factor with root `r`.
    pub fn linear_root(r: &Rat) -> Self {
        Poly1 {
            coeffs: vec![-r.clone(), Rat::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly1 { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Poly1::zero();
        }
        Poly1 {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Divides by `x - r`; returns the quotient when the remainder is zero.
    pub fn divide_linear(&self, r: &Rat) -> Option<Poly1> {
        if self.is_zero() {
            return Some(Poly1::zero());
        }
        let n = self.coeffs.len();
        let mut quot = vec![Rat::zero(); n - 1];
        let mut carry = Rat::zero();
        for i in (0..n).rev() {
            let v = &self.coeffs[i] + &carry;
            if i == 0 {
                if !v.is_zero() {
                    return None;
                }
            } else {
                carry = &v * r;
                quot[i - 1] = v;
            }
        }
        Some(Poly1::from_coeffs(quot))
    }

    /// True when `self = c * other` for some nonzero rational `c`;
    /// returns that `c`.
    pub fn proportionality(&self, other: &Poly1) -> Option<Rat> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        if self.degree() != other.degree() {
            return None;
        }
        let c = self.leading().unwrap() / other.leading().unwrap();
        if *self == other.scale(&c) {
            Some(c)
        } else {
            None
        }
    }
}

impl Add for &Poly1 {
    type Output = Poly1;
    fn add(self, rhs: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly1::from_coeffs(coeffs)
    }
}

impl Sub for &Poly1 {
    type Output = Poly1;
    fn sub(self, rhs: &Poly1) -> Poly1 {
        self + &(-rhs)
    }
}

impl Neg for &Poly1 {
    type Output = Poly1;
    fn neg(self) -> Poly1 {
        Poly1 {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly1 {
    type Output = Poly1;
    fn mul(self, rhs: &Poly1) -> Poly1 {
        if self.is_zero() || rhs.is_zero() {
            return Poly1::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly1::from_coeffs(coeffs)
    }
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn divisors_u128(n: u128) -> Vec<u128> {
    let mut small = Vec::new();
    let mut big = Vec::new();
    let mut d: u128 = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                big.push(n / d);
            }
        }
        d += 1;
    }
    big.reverse();
    small.extend(big);
    small
}

/// Every rational root of `p` with its exact multiplicity.
///
/// Candidates come from the rational root theorem applied to the primitive
/// integer form of `p` (after splitting off the power of x); multiplicities
/// by repeated exact synthetic division. Non-rational roots are ignored.
pub fn rational_roots(p: &Poly1) -> Result<BTreeMap<Rat, u32>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomialRoots);
    }
    if p.degree() == Some(0) {
        return Err(Error::ConstantPolynomialRoots);
    }
    let mut roots: BTreeMap<Rat, u32> = BTreeMap::new();

    // split off x^k
    let k = p.coeffs.iter().position(|c| !c.is_zero()).unwrap();
    if k > 0 {
        roots.insert(Rat::zero(), k as u32);
    }
    let mut q = Poly1::from_coeffs(p.coeffs[k..].to_vec());
    if q.degree() == Some(0) {
        return Ok(roots);
    }

    // clear denominators and make primitive
    let mut den = BigInt::one();
    for c in q.coeffs() {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = q.coeffs().iter().map(|c| (c * &den).to_integer()).collect();
    let mut content = BigInt::zero();
    for v in &ints {
        content = content.gcd(v);
    }
    let ints: Vec<BigInt> = ints.iter().map(|v| v / &content).collect();

    let a0 = ints.first().unwrap().abs();
    let an = ints.last().unwrap().abs();
    let a0: u128 = a0.to_u128().ok_or(Error::RootSearchOverflow)?;
    let an: u128 = an.to_u128().ok_or(Error::RootSearchOverflow)?;

    for num in divisors_u128(a0) {
        for den in divisors_u128(an) {
            for sign in [1i64, -1] {
                let cand = Rat::new(BigInt::from(num) * sign, BigInt::from(den));
                let mut mult = 0u32;
                while let Some(next) = q.divide_linear(&cand) {
                    mult += 1;
                    q = next;
                    if q.degree() == Some(0) {
                        break;
                    }
                }
                if mult > 0 {
                    *roots.entry(cand).or_insert(0) += mult;
                }
            }
        }
    }
    Ok(roots)
}

/// Polynomial in two variables x, y; keys are `(x_degree, y_degree)`.
/// Invariant: no explicitly stored zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Poly2::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Poly2::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn x() -> Self {
        let mut p = Poly2::zero();
        p.add_term(1, 0, Rat::one());
        p
    }

    pub fn y() -> Self {
        let mut p = Poly2::zero();
        p.add_term(0, 1, Rat::one());
        p
    }

    /// The affine form `a*y - x + w` that every Zhu reduction step produces.
    pub fn zhu_factor(a: &Rat, w: &Rat) -> Self {
        let mut p = Poly2::zero();
        p.add_term(0, 1, a.clone());
        p.add_term(1, 0, -Rat::one());
        p.add_term(0, 0, w.clone());
        p
    }

    pub fn add_term(&mut self, dx: u32, dy: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((dx, dy)).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(dx, dy));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(k, v)| (*k, v * s)).collect(),
        }
    }

    /// Substitutes y = v exactly, collapsing to a polynomial in x.
    pub fn specialize_y(&self, v: &Rat) -> Poly1 {
        let mut out: Vec<Rat> = Vec::new();
        for (&(dx, dy), c) in &self.terms {
            let val = c * power(v, dy);
            if out.len() <= dx as usize {
                out.resize(dx as usize + 1, Rat::zero());
            }
            out[dx as usize] += val;
        }
        Poly1::from_coeffs(out)
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(dx, dy), c) in &self.terms {
            acc += c * power(x, dx) * power(y, dy);
        }
        acc
    }

    pub fn proportionality(&self, other: &Poly2) -> Option<Rat> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let (k, lead) = self.terms.iter().next_back()?;
        let other_lead = other.terms.get(k)?;
        let c = lead / other_lead;
        if *self == other.scale(&c) {
            Some(c)
        } else {
            None
        }
    }
}

fn power(base: &Rat, exp: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(dx, dy), c) in &rhs.terms {
            out.add_term(dx, dy, c.clone());
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(dx, dy), c) in &rhs.terms {
            out.add_term(dx, dy, -c.clone());
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.scale(&-Rat::one())
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(ax, ay), a) in &self.terms {
            for (&(bx, by), b) in &rhs.terms {
                out.add_term(ax + bx, ay + by, a * b);
            }
        }
        out
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(dx, dy), c) in self.terms.iter().rev() {
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            let mut wrote = false;
            if !a.is_one() || (dx == 0 && dy == 0) {
                write!(f, "{a}")?;
                wrote = true;
            }
            for (sym, d) in [("x", dx), ("y", dy)] {
                if d == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                if d == 1 {
                    write!(f, "{sym}")?;
                } else {
                    write!(f, "{sym}^{d}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}
