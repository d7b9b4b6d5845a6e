use num_traits::Zero;
use serde_json::Value;

use super::{int, AlgebraElement, Rational};
use crate::error::{Error, Result};

/// Power series in `q` with coefficients in `A`, exact modulo `q^{N+1}`.
#[derive(Clone, PartialEq, Debug)]
pub struct Series<A> {
    coeffs: Vec<A>,
}

impl<A: AlgebraElement> Series<A> {
    /// The zero series of order `n`, using `prototype` for the coefficient
    /// algebra's truncation bounds.
    pub fn zero(prototype: &A, n: usize) -> Self {
        Series {
            coeffs: vec![prototype.zero_like(); n + 1],
        }
    }

    pub fn one(prototype: &A, n: usize) -> Self {
        let mut s = Self::zero(prototype, n);
        s.coeffs[0] = prototype.one_like();
        s
    }

    /// Coefficients `c_0, c_1, …`; missing ones up to `n` are zero and extra
    /// ones are dropped. `coeffs` must not be empty.
    pub fn from_coeffs(mut coeffs: Vec<A>, n: usize) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        let zero = coeffs[0].zero_like();
        coeffs.resize(n + 1, zero);
        Series { coeffs }
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &A {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[A] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<A> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(A::is_zero_value)
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), n)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Series {
            coeffs: (0..=n).map(|k| self.coeffs[k].plus(&rhs.coeffs[k])).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Series {
            coeffs: (0..=n).map(|k| self.coeffs[k].minus(&rhs.coeffs[k])).collect(),
        }
    }

    /// Cauchy product; the left factor's coefficients stay on the left.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(self.coeffs[0].zero_like(), |acc, i| {
                    acc.plus(&self.coeffs[i].times(&rhs.coeffs[k - i]))
                })
            })
            .collect();
        Series { coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Applies `f` to every coefficient.
    pub fn map(&self, f: impl Fn(&A) -> A) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Multiplication by `q`, dropping the top coefficient.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(self.coeffs[0].zero_like());
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        Series { coeffs }
    }

    fn require_zero_constant(&self, what: &str) -> Result<()> {
        if self.coeffs[0].is_zero_value() {
            Ok(())
        } else {
            Err(Error::domain(format!("{what} needs a series with zero constant term")))
        }
    }

    /// `exp(U)` for `U` with zero constant term over a commutative algebra.
    ///
    /// Uses `n E_n = Σ_{k=1}^{n} k U_k E_{n-k}`, which follows from
    /// `E' = U' E`.
    pub fn exp(&self) -> Result<Self> {
        if !A::COMMUTATIVE {
            return Err(Error::domain("series exponential needs a commutative algebra"));
        }
        self.require_zero_constant("exp")?;
        let n = self.order();
        let mut e: Vec<A> = Vec::with_capacity(n + 1);
        e.push(self.coeffs[0].one_like());
        for m in 1..=n {
            let mut acc = self.coeffs[0].zero_like();
            for k in 1..=m {
                if self.coeffs[k].is_zero_value() {
                    continue;
                }
                acc = acc.plus(&self.coeffs[k].times(&e[m - k]).scale(&int(k as i64)));
            }
            e.push(acc.scale(&Rational::new(1.into(), (m as i64).into())));
        }
        Ok(Series { coeffs: e })
    }

    /// `Σ_{k≥0} U^k = 1/(1 − U)` for `U` with zero constant term. Valid over
    /// noncommutative algebras.
    pub fn geometric_inverse(&self) -> Result<Self> {
        self.require_zero_constant("geometric inverse")?;
        let n = self.order();
        let mut g: Vec<A> = Vec::with_capacity(n + 1);
        g.push(self.coeffs[0].one_like());
        for m in 1..=n {
            // G = 1 + U·G
            let mut acc = self.coeffs[0].zero_like();
            for k in 1..=m {
                acc = acc.plus(&self.coeffs[k].times(&g[m - k]));
            }
            g.push(acc);
        }
        Ok(Series { coeffs: g })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(A::to_json).collect())
    }
}

impl Series<Rational> {
    pub fn from_rationals(coeffs: Vec<Rational>, n: usize) -> Self {
        let mut coeffs = coeffs;
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        Self::from_coeffs(coeffs, n)
    }
}
