use std::fmt;

use num_traits::{One, Zero};
use serde_json::Value;

use super::{int, render_rational, write_signed_term, AlgebraElement, Rational};

/// Dense univariate polynomial in `t` with rational coefficients, ascending
/// powers. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation.
    pub fn eval_at(&self, r: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * r + c)
    }

    /// `g(t) ↦ g(t + c)`.
    pub fn translate(&self, c: &Rational) -> Polynomial {
        // Horner in polynomial arithmetic: (((a_d)(t+c) + a_{d-1})(t+c) + ...)
        let step = Polynomial::from_coeffs(vec![c.clone(), Rational::one()]);
        self.coeffs.iter().rev().fold(Polynomial::zero(), |acc, a| {
            acc.mul(&step).add(&Polynomial::constant(a.clone()))
        })
    }

    /// `C(t, k) = t(t-1)…(t-k+1)/k!`.
    pub fn binomial_basis(k: usize) -> Polynomial {
        let mut p = Polynomial::one();
        for i in 0..k {
            let factor = Polynomial::from_coeffs(vec![-int(i as i64), Rational::one()]);
            p = p.mul(&factor).scale(&Rational::new(1.into(), ((i + 1) as i64).into()));
        }
        p
    }

    /// Coefficients `c_k` with `self = Σ c_k C(t, k)`.
    ///
    /// `c_k` is the k-th forward difference of the values at `0, 1, …, d`.
    pub fn to_newton(&self) -> Vec<Rational> {
        let Some(d) = self.degree() else {
            return Vec::new();
        };
        let mut diffs: Vec<Rational> = (0..=d).map(|x| self.eval_at(&int(x as i64))).collect();
        let mut out = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            out.push(diffs[0].clone());
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }

    /// Inverse of [`Polynomial::to_newton`].
    pub fn from_newton(coeffs: &[Rational]) -> Polynomial {
        let mut acc = Polynomial::zero();
        let mut basis = Polynomial::one();
        for (k, c) in coeffs.iter().enumerate() {
            acc = acc.add(&basis.scale(c));
            let factor = Polynomial::from_coeffs(vec![-int(k as i64), Rational::one()]);
            basis = basis
                .mul(&factor)
                .scale(&Rational::new(1.into(), ((k + 1) as i64).into()));
        }
        acc
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            write_signed_term(f, first, c, &mono)?;
            first = false;
        }
        Ok(())
    }
}

impl AlgebraElement for Polynomial {
    const COMMUTATIVE: bool = true;

    fn zero_like(&self) -> Self {
        Polynomial::zero()
    }
    fn one_like(&self) -> Self {
        Polynomial::one()
    }
    fn is_zero_value(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn scale(&self, c: &Rational) -> Self {
        Polynomial::scale(self, c)
    }
    fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|c| Value::String(render_rational(c)))
                .collect(),
        )
    }
}
