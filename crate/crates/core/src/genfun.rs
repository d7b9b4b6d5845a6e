//! Generating functions `U(q) = Σ_n U_n q^n` with
//! `U_n = Σ_{T ∈ 𝕋_n} Ψ(T)/α(T)`.
//!
//! `U(q)` satisfies `Ξ e^{U(q)} = q⁻¹ U(q)`, with `Ξ` applied coefficientwise
//! in `q`. Comparing coefficients gives the recurrence
//! `U_n = Ξ S_{n−1}(U_1, …, U_{n−1})`, where `S_n` is the `q^n` coefficient
//! of `exp(Σ_k x_k q^k)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::{render_rational, AlgebraElement, Rational, Series};
use crate::error::{Error, Result};
use crate::forest::{automorphism_order, enumerate_trees};
use crate::invariant::{order_spec, Invariant};

/// Largest `n` for which [`u_by_enumeration`] will list `𝕋_n`
/// (`|𝕋_14| = 32973`).
pub const ENUMERATION_LIMIT: usize = 14;

/// `[U_1, …, U_N]` for one invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct USequence<A> {
    pub name: String,
    pub terms: Vec<A>,
}

impl<A: AlgebraElement> USequence<A> {
    /// `U_n`, 1-based.
    pub fn term(&self, n: usize) -> &A {
        &self.terms[n - 1]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `U(q)` truncated at `q^N`, with zero constant term.
    pub fn to_series(&self, zero: &A) -> Series<A> {
        let mut coeffs = vec![zero.zero_like()];
        coeffs.extend(self.terms.iter().cloned());
        Series::from_coeffs(coeffs, self.terms.len())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(A::to_json).collect())
    }
}

/// `S_n(v_1, …, v_k)`: the `q^n` coefficient of `exp(Σ_k v_k q^k)`.
///
/// Only `v_1..v_n` can contribute, so `values` may be longer than `n`.
/// `unit` supplies the algebra's bounds when `values` is empty.
pub fn elementary_schur<A: AlgebraElement>(values: &[A], n: usize, unit: &A) -> Result<A> {
    if !A::COMMUTATIVE {
        return Err(Error::domain("elementary Schur polynomials need a commutative algebra"));
    }
    if values.len() < n {
        return Err(Error::domain(format!(
            "S_{n} needs at least {n} values, got {}",
            values.len()
        )));
    }
    let mut coeffs = vec![unit.zero_like()];
    coeffs.extend(values[..n].iter().cloned());
    let series = Series::from_coeffs(coeffs, n);
    Ok(series.exp()?.coeff(n).clone())
}

/// `U_1 = Ξ(1)` and `U_n = Ξ(S_{n−1}(U_1, …, U_{n−1}))`.
pub fn u_by_recurrence<A: AlgebraElement>(invariant: &Invariant<A>, n_max: usize) -> Result<USequence<A>> {
    let spec = invariant.spec();
    let mut terms: Vec<A> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let inner = if n == 1 {
            spec.unit().clone()
        } else {
            elementary_schur(&terms, n - 1, spec.unit())?
        };
        terms.push(spec.apply(&inner));
    }
    Ok(USequence {
        name: spec.name().to_string(),
        terms,
    })
}

fn inverse_of(alpha: num_bigint::BigUint) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(alpha))
}

/// `U_n = Σ_{T ∈ 𝕋_n} Ψ(T)/α(T)` by listing every tree.
pub fn u_by_enumeration<A: AlgebraElement>(invariant: &Invariant<A>, n_max: usize) -> Result<USequence<A>> {
    if n_max > ENUMERATION_LIMIT {
        return Err(Error::resource(format!(
            "enumerating trees up to {n_max} vertices exceeds the limit of {ENUMERATION_LIMIT}"
        )));
    }
    let unit = invariant.spec().unit();
    let mut terms = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let sum = enumerate_trees(n)?
            .iter()
            .fold(unit.zero_like(), |acc, t| {
                acc.plus(&invariant.evaluate(t).scale(&inverse_of(automorphism_order(t))))
            });
        terms.push(sum);
    }
    Ok(USequence {
        name: invariant.name().to_string(),
        terms,
    })
}

/// Residual `q·Ξ(e^{U(q)}) − U(q)` modulo `q^{N+1}`, with `U` obtained by
/// enumeration. Identically zero when the functional equation holds.
pub fn verify_functional_equation<A: AlgebraElement>(invariant: &Invariant<A>, n_max: usize) -> Result<Series<A>> {
    let spec = invariant.spec();
    let u = u_by_enumeration(invariant, n_max)?.to_series(spec.unit());
    let lhs = u.exp()?.map(|a| spec.apply(a)).shift_up();
    Ok(lhs.sub(&u))
}

/// One row of the Cayley-type identity `Σ_{T∈𝕋_n} 1/α(T) = n^{n−1}/n!`.
#[derive(Clone, Debug, PartialEq)]
pub struct CayleyRow {
    pub n: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl CayleyRow {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CayleyReport {
    pub rows: Vec<CayleyRow>,
    /// `u(q) = U(1, q)` from the order-polynomial recurrence matches the
    /// enumerated sums and satisfies `e^{u(q)} = q⁻¹ u(q)`.
    pub series_identity: bool,
}

impl CayleyReport {
    pub fn holds(&self) -> bool {
        self.series_identity && self.rows.iter().all(CayleyRow::holds)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows.iter().map(|r| json!({
                "n": r.n,
                "lhs": render_rational(&r.lhs),
                "rhs": render_rational(&r.rhs),
                "equal": r.holds(),
            })).collect::<Vec<_>>(),
            "series_identity": self.series_identity,
        })
    }
}

fn cayley_rhs(n: usize) -> Rational {
    let num = BigInt::from(n).pow(n as u32 - 1);
    let den: BigInt = (1..=n).map(BigInt::from).product();
    Rational::new(num, den)
}

/// Checks `Σ 1/α(T) = n^{n−1}/n!` for `1 ≤ n ≤ n_max`, and the series
/// identity for `u(q)`.
pub fn cayley_check(n_max: usize) -> Result<CayleyReport> {
    if n_max > ENUMERATION_LIMIT {
        return Err(Error::resource(format!(
            "enumerating trees up to {n_max} vertices exceeds the limit of {ENUMERATION_LIMIT}"
        )));
    }
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let lhs = enumerate_trees(n)?
            .iter()
            .fold(Rational::zero(), |acc, t| acc + inverse_of(automorphism_order(t)));
        rows.push(CayleyRow {
            n,
            lhs,
            rhs: cayley_rhs(n),
        });
    }

    let weak = Invariant::new(order_spec());
    let one = Rational::one();
    let u_terms: Vec<Rational> = u_by_recurrence(&weak, n_max)?
        .terms
        .iter()
        .map(|p| p.eval_at(&one))
        .collect();
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend(u_terms.iter().cloned());
    let u = Series::from_rationals(coeffs, n_max);
    let matches_sums = u_terms.iter().zip(&rows).all(|(a, r)| *a == r.lhs);
    let series_identity = matches_sums && u.exp()?.shift_up().sub(&u).is_zero();
    Ok(CayleyReport { rows, series_identity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Polynomial, QSymElement};
    use crate::invariant::{qsym_strict_spec, strict_order_spec};

    #[test]
    fn schur_examples() {
        let x: Vec<Rational> = vec![int(3), int(5), int(7)];
        assert_eq!(elementary_schur(&x, 0, &int(1)).unwrap(), int(1));
        assert_eq!(elementary_schur(&x, 1, &int(1)).unwrap(), int(3));
        // x2 + x1^2/2
        assert_eq!(elementary_schur(&x, 2, &int(1)).unwrap(), rat(5 + 9, 1) - rat(9, 2));
        assert!(elementary_schur(&x[..1], 2, &int(1)).is_err());
    }

    #[test]
    fn recurrence_examples() {
        let strict = Invariant::new(strict_order_spec());
        let u = u_by_recurrence(&strict, 2).unwrap();
        assert_eq!(u.term(1), &Polynomial::t());
        assert_eq!(u.term(2), &Polynomial::from_coeffs(vec![int(0), rat(-1, 2), rat(1, 2)]));
        let kbar = Invariant::new(qsym_strict_spec(4));
        let q = u_by_recurrence(&kbar, 2).unwrap();
        assert_eq!(q.term(2), &QSymElement::m(&[1, 1], 4));
    }

    #[test]
    fn enumeration_examples() {
        let strict = Invariant::new(strict_order_spec());
        let u = u_by_enumeration(&strict, 3).unwrap();
        assert_eq!(u.term(1), &strict.spec().seed());
        assert_eq!(u.term(2), &Polynomial::from_coeffs(vec![int(0), rat(-1, 2), rat(1, 2)]));
        let chain = strict.evaluate(&crate::forest::parse_tree("((()))").unwrap());
        let cherry = strict.evaluate(&crate::forest::parse_tree("(()())").unwrap());
        assert_eq!(u.term(3), &chain.add(&cherry.scale(&rat(1, 2))));
        assert!(matches!(
            u_by_enumeration(&strict, ENUMERATION_LIMIT + 1),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn functional_equation_small() {
        let strict = Invariant::new(strict_order_spec());
        assert!(verify_functional_equation(&strict, 6).unwrap().is_zero());
    }

    #[test]
    fn cayley_small() {
        let report = cayley_check(5).unwrap();
        assert!(report.holds());
        assert_eq!(report.rows[0].lhs, int(1));
        assert_eq!(report.rows[2].lhs, rat(3, 2));
        assert_eq!(report.rows[2].rhs, rat(9, 6));
        assert_eq!(report.rows[4].rhs, rat(625, 120));
    }
}
