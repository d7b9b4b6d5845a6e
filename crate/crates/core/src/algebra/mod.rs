//! Exact-arithmetic algebras that invariants take values in.
//!
//! Every algebra implements [`AlgebraElement`], the minimal ring interface the
//! invariant engine and the generating-function layer need: a unit, a zero,
//! addition, multiplication and scaling by rationals.

mod finite;
mod poly;
mod qsym;
mod series;
mod words;

pub use finite::FiniteVarPoly;
pub use poly::Polynomial;
pub use qsym::{qsym_to_finite, quasi_shuffle, Composition, QSymElement};
pub use series::Series;
pub use words::{FreeWord, TensorElement, Word};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

/// Exact rational scalar.
pub type Rational = BigRational;

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `"p/q"` text, with `q > 0` and the fraction reduced.
pub fn render_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Ring interface shared by every value algebra.
pub trait AlgebraElement: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    /// Whether multiplication commutes. Series exponentials require it.
    const COMMUTATIVE: bool;

    /// Additive identity carrying the same truncation bounds as `self`.
    fn zero_like(&self) -> Self;
    /// Multiplicative identity carrying the same truncation bounds as `self`.
    fn one_like(&self) -> Self;
    fn is_zero_value(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn to_json(&self) -> Value;

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.scale(&-Rational::one()))
    }

    /// Deterministic text used for exact comparisons and grouping.
    fn canonical_text(&self) -> String {
        self.to_json().to_string()
    }
}

impl AlgebraElement for Rational {
    const COMMUTATIVE: bool = true;

    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_value(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn to_json(&self) -> Value {
        Value::String(render_rational(self))
    }
}

/// Binomial coefficient `C(n, k)` as an exact rational (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

pub(crate) fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &Rational,
    monomial: &str,
) -> fmt::Result {
    let neg = coeff.is_negative();
    let abs = coeff.abs();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        (true, false) => {}
    }
    if monomial.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        f.write_str(monomial)
    } else {
        write!(f, "{abs}*{monomial}")
    }
}
