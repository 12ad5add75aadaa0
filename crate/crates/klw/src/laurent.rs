//! Sparse Laurent polynomials in the variable `v` with exact integer
//! coefficients.
//!
//! The Hecke layer works over `Z[v, v^-1]` where `v^2 = q`; polynomials in
//! `q` are the sub-ring supported on even non-negative exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Sparse Laurent polynomial in `v`. No zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, BigInt::one())
    }

    /// The monomial `c * v^exp`; collapses to zero when `c = 0`.
    pub fn monomial(exp: i32, coeff: impl Into<BigInt>) -> Self {
        let c = coeff.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i32) -> Self {
        LaurentPoly::monomial(exp, BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        LaurentPoly::monomial(0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Adds `scale * v^shift * other` in place.
    pub fn add_scaled(&mut self, other: &LaurentPoly, scale: &BigInt, shift: i32) {
        if scale.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            let entry = self.terms.entry(e + shift).or_insert_with(BigInt::zero);
            *entry += c * scale;
            if entry.is_zero() {
                self.terms.remove(&(e + shift));
            }
        }
    }

    pub fn add_assign(&mut self, other: &LaurentPoly) {
        self.add_scaled(other, &BigInt::one(), 0);
    }

    pub fn sub_assign(&mut self, other: &LaurentPoly) {
        self.add_scaled(other, &BigInt::from(-1), 0);
    }

    /// Multiplication by `v^shift`.
    pub fn shifted(&self, shift: i32) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    pub fn scaled(&self, scale: &BigInt) -> LaurentPoly {
        if scale.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * scale)).collect(),
        }
    }

    /// The substitution `v -> v^-1`.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Evaluation at `v = 1` (equivalently `q = 1`).
    pub fn eval_at_one(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.terms.values() {
            acc += c;
        }
        acc
    }

    /// Dense coefficient list in `q = v^2`, lowest degree first, when the
    /// support consists of even non-negative exponents. No trailing zeros.
    pub fn to_q_coeffs(&self) -> Option<Vec<BigInt>> {
        let mut out: Vec<BigInt> = Vec::new();
        for (e, c) in &self.terms {
            if *e < 0 || e % 2 != 0 {
                return None;
            }
            let k = (*e / 2) as usize;
            if out.len() <= k {
                out.resize(k + 1, BigInt::zero());
            }
            out[k] = c.clone();
        }
        Some(out)
    }

    /// Inverse of [`to_q_coeffs`](Self::to_q_coeffs).
    pub fn from_q_coeffs(coeffs: &[BigInt]) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(2 * k as i32, c.clone());
            }
        }
        LaurentPoly { terms }
    }

    /// Rendering as a polynomial in `q`, e.g. "1+q", "0", "1+2q+q^2".
    /// `None` when the support is not even and non-negative.
    pub fn q_string(&self) -> Option<String> {
        self.to_q_coeffs().map(|c| render_q(&c))
    }
}

/// Renders a dense `q`-coefficient list, lowest degree first.
pub fn render_q(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push(if c.is_negative() { '-' } else { '+' });
        } else if c.is_negative() {
            out.push('-');
        }
        let a = c.abs();
        if k == 0 {
            out.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                out.push_str(&a.to_string());
            }
            out.push('q');
            if k > 1 {
                out.push_str(&format!("^{k}"));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            out.add_scaled(rhs, c, *e);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scaled(&BigInt::from(-1))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            let a = c.abs();
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{a}v")?,
                (_, true) => write!(f, "v^{e}")?,
                (_, false) => write!(f, "{a}v^{e}")?,
            }
        }
        Ok(())
    }
}
