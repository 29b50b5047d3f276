//! Exact arithmetic over real quadratic surds `a + b√d`.
//!
//! Every closed-form radius in this crate lives in a single quadratic field
//! `Q(√d)`, so one radicand per value is enough. Mixing radicands is reported
//! as an error instead of being approximated.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurdError {
    #[error("radicands {0} and {1} cannot be combined in a single quadratic field")]
    MixedRadicand(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is identically zero")]
    IdenticallyZero,
    #[error("coefficient {0} is not rational")]
    NotRational(String),
    #[error("square root of negative value {0}")]
    NegativeRadicand(String),
    #[error("radicand does not fit in 64 bits")]
    RadicandTooLarge,
    #[error("cannot parse decimal `{0}`")]
    Parse(String),
}

/// Integer rational shorthand.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), k as usize)
}

/// Splits `d` into `(f, s)` with `d = f²·s` and `s` squarefree.
fn squarefree_split(mut d: u64) -> (u64, u64) {
    if d == 0 {
        return (0, 0);
    }
    let mut factor = 1u64;
    let mut i = 2u64;
    while (i as u128) * (i as u128) <= d as u128 {
        let sq = i * i;
        while d % sq == 0 {
            d /= sq;
            factor *= i;
        }
        i += if i == 2 { 1 } else { 2 };
    }
    (factor, d)
}

fn is_perfect_square(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

fn rational_square_root(x: &Rational) -> Option<Rational> {
    let n = is_perfect_square(x.numer())?;
    let d = is_perfect_square(x.denom())?;
    Some(Rational::new(n, d))
}

/// An exact real number `a + b·√d` with rational `a`, `b` and squarefree `d`.
///
/// The representation is canonical: rational values have `b = 0, d = 0`, and
/// irrational values have `b ≠ 0, d ≥ 2` squarefree. Structural equality is
/// therefore value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    a: Rational,
    b: Rational,
    d: u64,
}

/// Canonical form of `a + b√d`; square factors of `d` are absorbed into `b`.
pub fn surd_normalize(a: Rational, b: Rational, d: u64) -> QuadSurd {
    QuadSurd::new(a, b, d)
}

impl QuadSurd {
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        let (f, s) = squarefree_split(d);
        if b.is_zero() || s == 0 {
            return Self::from_rational(a);
        }
        let b = b * Rational::from_integer(BigInt::from(f));
        if s == 1 {
            return Self::from_rational(a + b);
        }
        Self { a, b, d: s }
    }

    pub fn from_rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
            d: 0,
        }
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `√d` for a nonnegative integer `d`.
    pub fn sqrt_of(d: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    fn common_radicand(&self, other: &Self) -> Result<u64, SurdError> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (d1, d2) if d1 == d2 => Ok(d1),
            (d1, d2) => Err(SurdError::MixedRadicand(d1, d2)),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// `a - b√d`.
    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Field norm `a² - b²d`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(self.d))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.a * k, &self.b * k, self.d)
    }

    pub fn add_rational(&self, k: &Rational) -> Self {
        Self::new(&self.a + k, self.b.clone(), self.d)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SurdError> {
        let d = self.common_radicand(other)?;
        Ok(Self::new(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SurdError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, SurdError> {
        let d = self.common_radicand(other)?;
        let dd = Rational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::new(a, b, d))
    }

    pub fn recip(&self) -> Result<Self, SurdError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(SurdError::DivisionByZero);
        }
        let inv = n.recip();
        Ok(self.conjugate().scale(&inv))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, SurdError> {
        self.common_radicand(other)?;
        self.checked_mul(&other.recip()?)
    }

    pub fn square(&self) -> Self {
        self.checked_mul(self).expect("same radicand")
    }

    /// Exact sign of the value.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: the larger magnitude wins; a² = b²d is impossible
        // for squarefree d ≥ 2.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from_integer(BigInt::from(self.d));
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Square root inside the same quadratic field, if one exists.
    ///
    /// Rational inputs always succeed (the result may pick up a new radicand).
    /// Irrational inputs `a + b√d` succeed when `a² - b²d` is a rational
    /// square and the resulting `u² = (a ± c)/2` is too.
    pub fn sqrt_in_field(&self) -> Option<Self> {
        match self.signum() {
            Ordering::Less => return None,
            Ordering::Equal => return Some(Self::zero()),
            Ordering::Greater => {}
        }
        if self.is_rational() {
            return sqrt_rational(&self.a).ok();
        }
        let c = rational_square_root(&self.norm())?;
        let two = Rational::from_integer(BigInt::from(2));
        for u2 in [(&self.a + &c) / &two, (&self.a - &c) / &two] {
            if !u2.is_positive() {
                continue;
            }
            let Some(u) = rational_square_root(&u2) else {
                continue;
            };
            let v = &self.b / (&two * &u);
            let mut root = Self::new(u, v, self.d);
            if root.signum() == Ordering::Less {
                root = root.neg();
            }
            if root.square() == *self {
                return Some(root);
            }
        }
        None
    }

    /// Writes the value as `(A + B√d)/C` with integers and `C > 0`.
    fn integer_form(&self) -> (BigInt, BigInt, BigInt) {
        let c = self.a.denom().lcm(self.b.denom());
        let a = self.a.numer() * (&c / self.a.denom());
        let b = self.b.numer() * (&c / self.b.denom());
        (a, b, c)
    }

    /// `floor(value · 10^k)` computed exactly; `k` may be negative.
    pub fn floor_scaled(&self, k: i64) -> BigInt {
        let (a, b, c) = self.integer_form();
        let (num_scale, den_scale) = if k >= 0 {
            (pow10(k as u32), BigInt::one())
        } else {
            (BigInt::one(), pow10((-k) as u32))
        };
        floor_of(&(a * &num_scale), &(b * &num_scale), self.d, &(c * den_scale))
    }

    /// Nearest integer to `value · 10^k`, ties rounded up.
    pub fn round_scaled(&self, k: i64) -> BigInt {
        // floor(v·10^k + 1/2) = floor((2A·s + C + 2B·s·√d) / 2C)
        let (a, b, c) = self.integer_form();
        let (num_scale, den_scale) = if k >= 0 {
            (pow10(k as u32), BigInt::one())
        } else {
            (BigInt::one(), pow10((-k) as u32))
        };
        let cc = &c * &den_scale;
        let two = BigInt::from(2);
        floor_of(
            &(&two * a * &num_scale + &cc),
            &(&two * b * &num_scale),
            self.d,
            &(&two * &cc),
        )
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// Decimal approximation rounded to `digits` places after the point.
    pub fn eval(&self, digits: u32) -> Decimal {
        Decimal {
            mantissa: self.round_scaled(digits as i64),
            scale: digits,
        }
    }

    /// Scientific notation with `sig` significant digits, exactly rounded,
    /// in the same layout as Rust's `{:e}` formatting.
    pub fn to_scientific(&self, sig: u32) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return format!("{:.*e}", (sig - 1) as usize, 0.0f64);
        }
        let approx = self.to_f64().abs();
        let mut e = if approx.is_finite() && approx > 0.0 {
            approx.log10().floor() as i64
        } else {
            0
        };
        let lo = pow10(sig - 1);
        let hi = pow10(sig);
        let mut m;
        loop {
            m = self.round_scaled(sig as i64 - 1 - e);
            let mag = m.abs();
            if mag >= hi {
                e += 1;
            } else if mag < lo {
                e -= 1;
            } else {
                break;
            }
        }
        let neg = m.is_negative();
        let digits = m.abs().to_string();
        let (head, tail) = digits.split_at(1);
        let sign = if neg { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{e}")
        } else {
            format!("{sign}{head}.{tail}e{e}")
        }
    }

    /// Ordering by value. Exact when the radicands agree; otherwise the
    /// values differ and exact decimal floors are refined until they split.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match self.checked_sub(other) {
            Ok(diff) => diff.signum(),
            Err(_) => {
                let mut k = 16;
                loop {
                    let x = self.floor_scaled(k);
                    let y = other.floor_scaled(k);
                    if x != y {
                        return x.cmp(&y);
                    }
                    k *= 2;
                }
            }
        }
    }
}

/// `floor((A + B√d) / C)` for integers and `C > 0`.
fn floor_of(a: &BigInt, b: &BigInt, d: u64, c: &BigInt) -> BigInt {
    let s = if b.is_zero() || d == 0 {
        BigInt::zero()
    } else {
        let v = b * b * BigInt::from(d);
        let r: BigInt = v.sqrt();
        if b.sign() == Sign::Minus {
            let exact = &r * &r == v;
            -(r + BigInt::from(if exact { 0 } else { 1 }))
        } else {
            r
        }
    };
    (a + s).div_floor(c)
}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

fn fmt_int_term(b: &BigInt, d: u64) -> String {
    let mag = b.abs();
    if mag.is_one() {
        format!("√{d}")
    } else {
        format!("{mag}√{d}")
    }
}

impl fmt::Display for QuadSurd {
    /// Renders `(A±B√d)/C`, e.g. `(11-√65)/28`, `√2/2`, `1/4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let (a, b, c) = self.integer_form();
        let g = a.gcd(&b).gcd(&c);
        let (a, b, c) = (a / &g, b / &g, c / &g);
        let num = if a.is_zero() {
            let sign = if b.is_negative() { "-" } else { "" };
            format!("{sign}{}", fmt_int_term(&b, self.d))
        } else {
            let op = if b.is_negative() { '-' } else { '+' };
            format!("{a}{op}{}", fmt_int_term(&b, self.d))
        };
        if c.is_one() {
            write!(f, "{num}")
        } else if a.is_zero() {
            write!(f, "{num}/{c}")
        } else {
            write!(f, "({num})/{c}")
        }
    }
}

/// `√r` for rational `r ≥ 0`, as a canonical surd.
pub fn sqrt_rational(r: &Rational) -> Result<QuadSurd, SurdError> {
    if r.is_negative() {
        return Err(SurdError::NegativeRadicand(r.to_string()));
    }
    if let Some(root) = rational_square_root(r) {
        return Ok(QuadSurd::from_rational(root));
    }
    // √(n/m) = √(n·m)/m
    let prod = r.numer() * r.denom();
    let d = prod.to_u64().ok_or(SurdError::RadicandTooLarge)?;
    Ok(QuadSurd::new(
        Rational::zero(),
        Rational::new(BigInt::one(), r.denom().clone()),
        d,
    ))
}

/// Roots of a polynomial of degree at most two with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadRoots {
    /// Distinct real roots, ascending.
    pub roots: Vec<QuadSurd>,
    /// `c1² - 4·c2·c0`; absent for the degenerate linear case.
    pub discriminant: Option<Rational>,
}

/// Exact real roots of `c2·x² + c1·x + c0 = 0`.
pub fn quad_solve(c2: &QuadSurd, c1: &QuadSurd, c0: &QuadSurd) -> Result<QuadRoots, SurdError> {
    let coeff = |c: &QuadSurd| {
        c.as_rational()
            .cloned()
            .ok_or_else(|| SurdError::NotRational(c.to_string()))
    };
    let (c2, c1, c0) = (coeff(c2)?, coeff(c1)?, coeff(c0)?);
    if c2.is_zero() && c1.is_zero() && c0.is_zero() {
        return Err(SurdError::IdenticallyZero);
    }
    if c2.is_zero() {
        let roots = if c1.is_zero() {
            Vec::new()
        } else {
            vec![QuadSurd::from_rational(-c0 / c1)]
        };
        return Ok(QuadRoots {
            roots,
            discriminant: None,
        });
    }
    let four = Rational::from_integer(BigInt::from(4));
    let disc = &c1 * &c1 - four * &c2 * &c0;
    let two_c2 = &c2 * Rational::from_integer(BigInt::from(2));
    let roots = match disc.cmp(&Rational::zero()) {
        Ordering::Less => Vec::new(),
        Ordering::Equal => vec![QuadSurd::from_rational(-&c1 / &two_c2)],
        Ordering::Greater => {
            let s = sqrt_rational(&disc)?;
            let inv = two_c2.recip();
            let minus_c1 = QuadSurd::from_rational(-c1.clone());
            let mut r = vec![
                minus_c1.checked_sub(&s)?.scale(&inv),
                minus_c1.checked_add(&s)?.scale(&inv),
            ];
            r.sort();
            r
        }
    };
    Ok(QuadRoots {
        roots,
        discriminant: Some(disc),
    })
}

/// Fixed-point decimal `mantissa · 10^-scale` backed by a big integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decimal {
    mantissa: BigInt,
    scale: u32,
}

impl Decimal {
    pub fn new(mantissa: BigInt, scale: u32) -> Self {
        Self { mantissa, scale }
    }

    pub fn from_integer(v: i64, scale: u32) -> Self {
        Self::new(BigInt::from(v) * pow10(scale), scale)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Changes the scale, rounding half away from zero when digits are dropped.
    pub fn rescale(&self, scale: u32) -> Self {
        match scale.cmp(&self.scale) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => Self::new(&self.mantissa * pow10(scale - self.scale), scale),
            Ordering::Less => {
                let div = pow10(self.scale - scale);
                let half = &div / 2;
                let m = if self.mantissa.is_negative() {
                    let m: BigInt = (-&self.mantissa + half) / div;
                    -m
                } else {
                    (&self.mantissa + half) / div
                };
                Self::new(m, scale)
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let s = self.scale.max(other.scale);
        Self::new(self.rescale(s).mantissa + other.rescale(s).mantissa, s)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.mantissa.clone(), self.scale)
    }

    pub fn abs(&self) -> Self {
        Self::new(self.mantissa.abs(), self.scale)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let s = self.scale.max(other.scale);
        Self::new(&self.mantissa * &other.mantissa, self.scale + other.scale).rescale(s)
    }

    pub fn div(&self, other: &Self) -> Result<Self, SurdError> {
        if other.mantissa.is_zero() {
            return Err(SurdError::DivisionByZero);
        }
        let s = self.scale.max(other.scale);
        // (m1/10^s1) / (m2/10^s2) at scale s, one guard digit for rounding.
        let num = &self.mantissa * pow10(s + 1 + other.scale);
        let den = &other.mantissa * pow10(self.scale);
        Ok(Self::new(num / den, s + 1).rescale(s))
    }

    /// Square root truncated to the current scale.
    pub fn sqrt(&self) -> Result<Self, SurdError> {
        if self.mantissa.is_negative() {
            return Err(SurdError::NegativeRadicand(self.to_string()));
        }
        let m = &self.mantissa * pow10(self.scale);
        Ok(Self::new(m.sqrt(), self.scale))
    }

    pub fn from_surd(x: &QuadSurd, scale: u32) -> Self {
        x.eval(scale)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    /// `|self| < 10^-digits`.
    pub fn below_exp10(&self, digits: u32) -> bool {
        if digits >= self.scale {
            return self.mantissa.is_zero();
        }
        self.mantissa.abs() < pow10(self.scale - digits)
    }

    pub fn to_scientific(&self, sig: u32) -> String {
        let r = Rational::new(self.mantissa.clone(), pow10(self.scale));
        QuadSurd::from_rational(r).to_scientific(sig)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = self.mantissa.is_negative();
        let digits = self.mantissa.abs().to_string();
        let scale = self.scale as usize;
        let padded = if digits.len() <= scale {
            format!("{}{digits}", "0".repeat(scale + 1 - digits.len()))
        } else {
            digits
        };
        let (int, frac) = padded.split_at(padded.len() - scale);
        let sign = if neg { "-" } else { "" };
        if scale == 0 {
            write!(f, "{sign}{int}")
        } else {
            write!(f, "{sign}{int}.{frac}")
        }
    }
}

impl FromStr for Decimal {
    type Err = SurdError;

    /// Parses plain decimal literals such as `-0.9239` or `12`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SurdError::Parse(s.to_string());
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(err());
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{int}{frac}");
        let m: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| err())?
        };
        Ok(Self::new(if neg { -m } else { m }, frac.len() as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surd(a: Rational, b: Rational, d: u64) -> QuadSurd {
        QuadSurd::new(a, b, d)
    }

    /// Bisection on `x² = v` over exact rationals, independent of the
    /// integer-sqrt path used by `eval`.
    fn bisect_sqrt(v: u64, digits: u32) -> Rational {
        let target = Rational::from_integer(BigInt::from(v));
        let mut lo = Rational::zero();
        let mut hi = Rational::from_integer(BigInt::from(v.max(1)));
        let eps = Rational::new(BigInt::one(), pow10(digits + 4));
        while &hi - &lo > eps {
            let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
            if &mid * &mid > target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo
    }

    fn oracle_eval(a: Rational, b: Rational, d: u64, digits: u32) -> String {
        let v = a + b * bisect_sqrt(d, digits);
        let scaled = v * Rational::from_integer(pow10(digits));
        let rounded = (scaled + rat(1, 2)).floor().to_integer();
        Decimal::new(rounded, digits).to_string()
    }

    #[test]
    fn normalize_absorbs_square_factors() {
        let x = surd_normalize(rat(0, 1), rat(3, 1), 9);
        assert_eq!(x.a(), &rat(9, 1));
        assert!(x.b().is_zero());
        assert_eq!(x.radicand(), 0);

        let y = surd_normalize(rat(61, 2), rat(3, 2), 65);
        assert_eq!((y.a(), y.b(), y.radicand()), (&rat(61, 2), &rat(3, 2), 65));

        let z = surd_normalize(rat(1, 1), rat(1, 1), 8);
        assert_eq!((z.a(), z.b(), z.radicand()), (&rat(1, 1), &rat(2, 1), 2));

        let w = surd_normalize(rat(2, 1), rat(-3, 1), 1);
        assert_eq!(w, QuadSurd::from_integer(-1));
    }

    #[test]
    fn eval_matches_bisection_oracle() {
        let x = surd(rat(11, 28), rat(-1, 28), 65);
        assert_eq!(x.eval(6).to_string(), "0.104919");
        assert_eq!(x.eval(6).to_string(), oracle_eval(rat(11, 28), rat(-1, 28), 65, 6));
        let y = surd(rat(1, 2), rat(-1, 12), 6);
        assert_eq!(y.eval(6).to_string(), "0.295876");
        assert_eq!(y.eval(30).to_string(), oracle_eval(rat(1, 2), rat(-1, 12), 6, 30));
        assert_eq!(QuadSurd::zero().eval(6).to_string(), "0.000000");
    }

    #[test]
    fn eval_of_negative_values() {
        let x = surd(rat(0, 1), rat(-1, 1), 2);
        assert_eq!(x.eval(5).to_string(), "-1.41421");
        assert_eq!(x.floor_scaled(0), BigInt::from(-2));
        assert_eq!(x.to_scientific(3), "-1.41e0");
    }

    #[test]
    fn scientific_formatting() {
        let x = surd(rat(11, 28), rat(-1, 28), 65);
        assert_eq!(x.to_scientific(12), "1.04919366132e-1");
        assert_eq!(QuadSurd::from_integer(1).to_scientific(3), "1.00e0");
        assert_eq!(QuadSurd::from_integer(0).to_scientific(3), "0.00e0");
        assert_eq!(QuadSurd::from_rational(rat(999_999, 1)).to_scientific(3), "1.00e6");
        assert_eq!(format!("{:.2e}", 999_999.0f64), "1.00e6");
    }

    #[test]
    fn display_forms() {
        assert_eq!(surd(rat(11, 28), rat(-1, 28), 65).to_string(), "(11-√65)/28");
        assert_eq!(surd(rat(0, 1), rat(1, 2), 2).to_string(), "√2/2");
        assert_eq!(surd(rat(15, 22), rat(3, 22), 3).to_string(), "(15+3√3)/22");
        assert_eq!(QuadSurd::from_rational(rat(1, 4)).to_string(), "1/4");
        assert_eq!(surd(rat(-7, 1), rat(-2, 1), 6).to_string(), "-7-2√6");
    }

    #[test]
    fn quad_solve_examples() {
        let q = |v: i64| QuadSurd::from_integer(v);
        let r = quad_solve(&q(1), &q(-69), &q(1176)).unwrap();
        assert_eq!(r.discriminant, Some(rat(57, 1)));
        assert_eq!(
            r.roots,
            vec![surd(rat(69, 2), rat(-1, 2), 57), surd(rat(69, 2), rat(1, 2), 57)]
        );

        let r = quad_solve(&q(8), &q(-6), &q(1)).unwrap();
        assert_eq!(
            r.roots,
            vec![QuadSurd::from_rational(rat(1, 4)), QuadSurd::from_rational(rat(1, 2))]
        );

        let r = quad_solve(&q(0), &q(2), &q(-1)).unwrap();
        assert_eq!(r.roots, vec![QuadSurd::from_rational(rat(1, 2))]);
        assert_eq!(r.discriminant, None);

        assert_eq!(quad_solve(&q(0), &q(0), &q(0)), Err(SurdError::IdenticallyZero));
        assert!(quad_solve(&q(1), &q(0), &q(1)).unwrap().roots.is_empty());
        assert_eq!(quad_solve(&q(1), &q(-2), &q(1)).unwrap().roots, vec![q(1)]);
        assert!(matches!(
            quad_solve(&QuadSurd::sqrt_of(2), &q(0), &q(1)),
            Err(SurdError::NotRational(_))
        ));
    }

    #[test]
    fn quad_solve_negative_leading_coefficient_sorts_ascending() {
        let q = |v: i64| QuadSurd::from_integer(v);
        let r = quad_solve(&q(-1), &q(0), &q(2)).unwrap();
        assert_eq!(r.roots, vec![QuadSurd::sqrt_of(2).neg(), QuadSurd::sqrt_of(2)]);
    }

    #[test]
    fn mixed_radicands_are_rejected() {
        let e = QuadSurd::sqrt_of(6).checked_add(&QuadSurd::sqrt_of(10));
        assert_eq!(e, Err(SurdError::MixedRadicand(6, 10)));
        assert_eq!(QuadSurd::sqrt_of(6).cmp(&QuadSurd::sqrt_of(10)), Ordering::Less);
        assert_eq!(
            QuadSurd::sqrt_of(3).add_rational(&rat(1, 1)).cmp(&QuadSurd::sqrt_of(7)),
            Ordering::Greater
        );
    }

    #[test]
    fn field_square_roots() {
        // (37 - 3√65)/2 = ((√65 - 3)/2)²
        let x = surd(rat(37, 2), rat(-3, 2), 65);
        assert_eq!(x.sqrt_in_field(), Some(surd(rat(-3, 2), rat(1, 2), 65)));
        assert_eq!(surd(rat(1, 1), rat(1, 1), 2).sqrt_in_field(), None);
        assert_eq!(QuadSurd::from_integer(-1).sqrt_in_field(), None);
        assert_eq!(
            QuadSurd::from_rational(rat(8, 9)).sqrt_in_field(),
            Some(surd(rat(0, 1), rat(2, 3), 2))
        );
    }

    #[test]
    fn recip_and_division() {
        let x = surd(rat(61, 2), rat(3, 2), 65);
        let one = x.checked_mul(&x.recip().unwrap()).unwrap();
        assert_eq!(one, QuadSurd::one());
        let b = surd(rat(11, 2), rat(1, 2), 65).checked_div(&x).unwrap();
        assert_eq!(b, surd(rat(17, 112), rat(1, 112), 65));
        assert_eq!(QuadSurd::zero().recip(), Err(SurdError::DivisionByZero));
    }

    #[test]
    fn decimal_arithmetic() {
        let a: Decimal = "0.9239".parse().unwrap();
        assert_eq!(a.mul(&a).to_string(), "0.8536");
        assert_eq!(a.rescale(8).mul(&a.rescale(8)).to_string(), "0.85359121");
        let two = Decimal::from_integer(2, 20);
        assert_eq!(two.sqrt().unwrap().to_string(), "1.41421356237309504880");
        assert_eq!(
            Decimal::from_integer(1, 10).div(&Decimal::from_integer(3, 10)).unwrap().to_string(),
            "0.3333333333"
        );
        assert!("1.2.3".parse::<Decimal>().is_err());
        assert_eq!("-0.5".parse::<Decimal>().unwrap().to_string(), "-0.5");
        assert!(Decimal::new(BigInt::from(5), 50).below_exp10(45));
        assert!(!Decimal::new(BigInt::from(5), 44).below_exp10(45));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rat() -> impl Strategy<Value = Rational> {
            (-60i64..60, 1i64..30).prop_map(|(n, d)| rat(n, d))
        }

        proptest! {
            #[test]
            fn normalize_preserves_value(a in small_rat(), b in small_rat(), d in 0u64..400) {
                let x = surd_normalize(a.clone(), b.clone(), d);
                let raw = oracle_eval(a, b, d, 25);
                prop_assert_eq!(x.eval(25).to_string(), raw);
            }

            #[test]
            fn quad_solve_roots_satisfy_vieta(c2 in small_rat(), c1 in small_rat(), c0 in small_rat()) {
                prop_assume!(!c2.is_zero());
                let (q2, q1, q0) = (
                    QuadSurd::from_rational(c2.clone()),
                    QuadSurd::from_rational(c1.clone()),
                    QuadSurd::from_rational(c0.clone()),
                );
                let roots = quad_solve(&q2, &q1, &q0).unwrap().roots;
                if roots.len() == 2 {
                    let sum = roots[0].checked_add(&roots[1]).unwrap();
                    let prod = roots[0].checked_mul(&roots[1]).unwrap();
                    prop_assert_eq!(sum, QuadSurd::from_rational(-c1 / &c2));
                    prop_assert_eq!(prod, QuadSurd::from_rational(c0 / &c2));
                    prop_assert!(roots[0].eval(50).mantissa() < roots[1].eval(50).mantissa());
                }
                for r in &roots {
                    let v = q2.checked_mul(&r.square()).unwrap()
                        .checked_add(&q1.checked_mul(r).unwrap()).unwrap()
                        .checked_add(&q0).unwrap();
                    prop_assert!(v.is_zero());
                }
            }

            #[test]
            fn ordering_agrees_with_decimals(a in small_rat(), b in small_rat(), c in small_rat(), d in 2u64..50) {
                let x = QuadSurd::new(a.clone(), b.clone(), d);
                let y = QuadSurd::new(c.clone(), b, d + 1);
                let (ex, ey) = (x.eval(50), y.eval(50));
                if ex != ey {
                    prop_assert_eq!(x.cmp(&y), ex.mantissa().cmp(ey.mantissa()));
                }
            }
        }
    }
}
