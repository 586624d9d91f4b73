//! Truncated univariate power series over exact rationals.
//!
//! A [`Series`] of order `n` stores the coefficients of `x^0..=x^n`. Binary
//! operations combine at the smaller of the two orders, so precision is never
//! inflated silently.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{factorial, format_rat, int, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<Rat>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rat::one(), order)
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `x` (zero when `order == 0`).
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rat::one();
        }
        s
    }

    /// Builds a series from coefficients; `order = coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Series { coeffs }
    }

    /// Builds a series of the given order, padding or truncating `coeffs`.
    pub fn with_order(mut coeffs: Vec<Rat>, order: usize) -> Self {
        coeffs.resize(order + 1, Rat::zero());
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Series::with_order(self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `f(x) ↦ f(-x)`.
    pub fn reflect(&self) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| if k % 2 == 1 { -a } else { a.clone() })
                .collect(),
        }
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// Divides by `x`, dropping one order. Requires a zero constant term.
    pub fn shift_down(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("shift_down needs a zero constant term".into()));
        }
        if self.coeffs.len() == 1 {
            return Ok(Series::zero(0));
        }
        Ok(Series {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    pub fn add(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        let mut out = vec![Rat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Series> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order();
        let inv0 = c0.recip();
        let mut out: Vec<Rat> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = Rat::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out.push(-acc * &inv0);
        }
        Ok(Series { coeffs: out })
    }

    pub fn div(&self, other: &Series) -> Result<Series> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::ComposeConstantNonZero);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        // Horner from the top coefficient down.
        let mut acc = Series::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Formal derivative; the order drops by one (stays 0 for constants).
    pub fn derivative(&self) -> Series {
        if self.order() == 0 {
            return Series::zero(0);
        }
        Series {
            coeffs: (1..=self.order())
                .map(|k| &self.coeffs[k] * int(k as i64))
                .collect(),
        }
    }

    /// `exp(self)`; requires zero constant term.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpConstantNonZero);
        }
        // e' = a' e, solved coefficientwise: k e_k = Σ_{j=1..k} j a_j e_{k-j}
        let n = self.order();
        let mut e: Vec<Rat> = vec![Rat::one()];
        for k in 1..=n {
            let mut acc = Rat::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * int(j as i64) * &e[k - j];
                }
            }
            e.push(acc / int(k as i64));
        }
        Ok(Series { coeffs: e })
    }

    /// `log(self)`; requires constant term 1.
    pub fn log(&self) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::LogConstantNotOne);
        }
        let n = self.order();
        if n == 0 {
            return Ok(Series::zero(0));
        }
        // log(a)' = a'/a, then integrate.
        let q = self.derivative().div(&self.truncate(n - 1))?;
        let mut coeffs = vec![Rat::zero()];
        coeffs.extend(
            q.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / int(k as i64 + 1)),
        );
        Ok(Series { coeffs })
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rat(c))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", format_rat(c))?,
                1 => write!(f, "({})x", format_rat(c))?,
                _ => write!(f, "({})x^{k}", format_rat(c))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        Series::add(self, rhs)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        Series::sub(self, rhs)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(&-Rat::one())
    }
}

/// `e^{sx}` truncated to `order`.
pub fn exp_linear(s: &Rat, order: usize) -> Series {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut pow = Rat::one();
    for k in 0..=order {
        coeffs.push(&pow / Rat::from_integer(factorial(k)));
        pow *= s;
    }
    Series { coeffs }
}

/// `(1 - e^{-x})/x`, the reciprocal of the Todd series.
fn td_inverse(order: usize) -> Series {
    let coeffs = (0..=order)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            Rat::new(BigInt::from(sign), factorial(k + 1))
        })
        .collect();
    Series { coeffs }
}

/// Todd series `x/(1 - e^{-x})`.
pub fn ps_td(order: usize) -> Series {
    td_inverse(order)
        .inverse()
        .expect("(1 - e^{-x})/x has constant term 1")
}

/// Dual Todd series `x/(e^x - 1) = Td(-x)`.
pub fn ps_td_dual(order: usize) -> Series {
    ps_td(order).reflect()
}

/// `f(x) = (Td(x)^{-1} - 1)/x`.
pub fn ps_f(order: usize) -> Series {
    let mut t = td_inverse(order + 1);
    t.coeffs[0] = Rat::zero();
    t.shift_down().expect("constant term removed")
}

/// `f₋(x) = (f(x) - f(-x))/(2x)`, an even series with constant term 1/6.
pub fn ps_f_minus(order: usize) -> Series {
    let f = ps_f(order + 1);
    let odd = f.sub(&f.reflect()).scale(&Rat::new(1.into(), 2.into()));
    odd.shift_down().expect("odd part has zero constant term")
}

/// Bismut's E series `(x - sinh x)/(2x(1 - cosh x))`, even with `E(0) = 1/6`.
pub fn ps_e(order: usize) -> Series {
    // Both numerator and denominator start at x^3; cancel x^3 before dividing.
    let n = order + 3;
    let mut num = vec![Rat::zero(); n + 1];
    let mut den = vec![Rat::zero(); n + 1];
    num[1] = Rat::one();
    for k in (1..=n).step_by(2) {
        num[k] -= Rat::new(BigInt::one(), factorial(k));
    }
    // 2x(1 - cosh x) = -2 Σ_{j≥1} x^{2j+1}/(2j)!
    for j in 1..=(n / 2) {
        let k = 2 * j + 1;
        if k <= n {
            den[k] = Rat::new(BigInt::from(-2), factorial(2 * j));
        }
    }
    let num = Series { coeffs: num[3..].to_vec() };
    let den = Series { coeffs: den[3..].to_vec() };
    num.div(&den).expect("leading coefficient of the denominator is -1")
}

/// `a_k = (1/k) Σ_{j=1}^{k-1} 1/j` for `k ≥ 2`, `a_1 = 0`.
pub fn a_k(k: usize) -> Rat {
    assert!(k >= 1, "a_k is defined for k >= 1");
    let h: Rat = (1..k).map(|j| Rat::new(BigInt::one(), BigInt::from(j))).sum();
    h / int(k as i64)
}

/// Default truncation order for a problem whose largest dimension is `dim`.
pub fn default_order(dim: usize) -> usize {
    2 * dim + 2
}
