//! Linear operators that drive the recursive invariant.
//!
//! The difference operators and their right inverses act on [`Polynomial`];
//! the quasi-symmetric operators `Λ̄ = Σ_k x_k S^k` and `Λ = Σ_k x_k S^{k-1}`
//! act on [`QSymElement`] by closed-form rules on the monomial basis:
//!
//! - `Λ̄ M_(a_1,…,a_r) = M_(1,a_1,…,a_r)`
//! - `Λ M_(a_1,…,a_r) = M_(1,a_1,…,a_r) + M_(1+a_1,a_2,…,a_r)`
//!
//! The [`finite_model`] submodule evaluates the defining sums directly over
//! finitely many variables and is used only as an independent check.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::algebra::{int, AlgebraElement, Polynomial, QSymElement, Rational};
use crate::error::{Error, Result};

pub const POLYNOMIAL_TAG: &str = "polynomial";
pub const QSYM_TAG: &str = "qsym";

type ApplyFn<A> = dyn Fn(&A) -> A + Send + Sync;

/// A named linear endomorphism of one algebra.
pub struct LinearOperator<A> {
    name: String,
    tag: String,
    apply: Arc<ApplyFn<A>>,
}

impl<A> Clone for LinearOperator<A> {
    fn clone(&self) -> Self {
        LinearOperator {
            name: self.name.clone(),
            tag: self.tag.clone(),
            apply: Arc::clone(&self.apply),
        }
    }
}

impl<A> fmt::Debug for LinearOperator<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearOperator")
            .field("name", &self.name)
            .field("tag", &self.tag)
            .finish()
    }
}

impl<A: AlgebraElement> LinearOperator<A> {
    /// Wraps a user-supplied map. Linearity is the caller's contract.
    pub fn new(
        name: impl Into<String>,
        tag: impl Into<String>,
        apply: impl Fn(&A) -> A + Send + Sync + 'static,
    ) -> Self {
        LinearOperator {
            name: name.into(),
            tag: tag.into(),
            apply: Arc::new(apply),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Tag of the algebra the operator acts on.
    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn apply(&self, a: &A) -> A {
        (self.apply)(a)
    }

    pub fn identity(tag: impl Into<String>) -> Self {
        Self::new("id", tag, A::clone)
    }

    /// `c · self`.
    pub fn scale(&self, c: Rational) -> Self {
        let inner = Arc::clone(&self.apply);
        Self::new(format!("{}*({})", c, self.name), self.tag.clone(), move |a| {
            inner(a).scale(&c)
        })
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        check_tags(&self.tag, &other.tag)?;
        let (f, g) = (Arc::clone(&self.apply), Arc::clone(&other.apply));
        Ok(Self::new(
            format!("({})+({})", self.name, other.name),
            self.tag.clone(),
            move |a| f(a).plus(&g(a)),
        ))
    }
}

fn check_tags(a: &str, b: &str) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::domain(format!("operator algebra mismatch: {a} vs {b}")))
    }
}

/// `ops[0] ∘ ops[1] ∘ … ∘ ops[k-1]`: the last operator is applied first.
pub fn compose<A: AlgebraElement>(ops: &[LinearOperator<A>]) -> Result<LinearOperator<A>> {
    let (first, rest) = ops
        .split_first()
        .ok_or_else(|| Error::domain("cannot compose an empty list of operators"))?;
    for op in rest {
        check_tags(&first.tag, &op.tag)?;
    }
    let fns: Vec<Arc<ApplyFn<A>>> = ops.iter().map(|o| Arc::clone(&o.apply)).collect();
    let name = ops.iter().map(|o| o.name.as_str()).collect::<Vec<_>>().join("∘");
    Ok(LinearOperator::new(name, first.tag.clone(), move |a: &A| {
        fns.iter().rev().fold(a.clone(), |acc, f| f(&acc))
    }))
}

/// `Δf(t) = f(t+1) − f(t)`.
pub fn delta(p: &Polynomial) -> Polynomial {
    p.translate(&Rational::one()).sub(p)
}

/// `∇f(t) = f(t) − f(t−1)`.
pub fn nabla(p: &Polynomial) -> Polynomial {
    p.sub(&p.translate(&-Rational::one()))
}

/// The unique `f` with `Δf = g` and `f(0) = 0`.
///
/// Writes `g = Σ c_k C(t,k)` and returns `Σ c_k C(t,k+1)`.
pub fn delta_inv(g: &Polynomial) -> Polynomial {
    let mut shifted = vec![int(0)];
    shifted.extend(g.to_newton());
    Polynomial::from_newton(&shifted)
}

/// The unique `f` with `∇f = g` and `f(0) = 0`, via `∇f(t) = g(t) ⇔
/// Δf(t) = g(t+1)`.
pub fn nabla_inv(g: &Polynomial) -> Polynomial {
    delta_inv(&g.translate(&Rational::one()))
}

/// `Λ̄`: prepend a part 1 to every composition.
pub fn lambda_bar(a: &QSymElement) -> QSymElement {
    a.map_basis(a.max_degree(), |alpha| vec![alpha.prepend(1)])
}

/// `Λ`: prepend a part 1, plus add 1 to the first part.
pub fn lambda(a: &QSymElement) -> QSymElement {
    a.map_basis(a.max_degree(), |alpha| {
        let mut out = vec![alpha.prepend(1)];
        out.extend(alpha.add_to_first(1));
        out
    })
}

pub fn delta_op() -> LinearOperator<Polynomial> {
    LinearOperator::new("delta", POLYNOMIAL_TAG, delta)
}

pub fn nabla_op() -> LinearOperator<Polynomial> {
    LinearOperator::new("nabla", POLYNOMIAL_TAG, nabla)
}

pub fn delta_inv_op() -> LinearOperator<Polynomial> {
    LinearOperator::new("delta-inv", POLYNOMIAL_TAG, delta_inv)
}

pub fn nabla_inv_op() -> LinearOperator<Polynomial> {
    LinearOperator::new("nabla-inv", POLYNOMIAL_TAG, nabla_inv)
}

pub fn lambda_bar_op() -> LinearOperator<QSymElement> {
    LinearOperator::new("lambda-bar", QSYM_TAG, lambda_bar)
}

pub fn lambda_op() -> LinearOperator<QSymElement> {
    LinearOperator::new("lambda", QSYM_TAG, lambda)
}

/// Direct evaluation of the defining sums over `x_1..x_m`.
pub mod finite_model {
    use crate::algebra::FiniteVarPoly;

    /// `S: x_i ↦ x_{i+1}`, with `x_m ↦ 0`.
    pub fn shift_s(p: &FiniteVarPoly) -> FiniteVarPoly {
        p.shift()
    }

    /// `Σ_{k=1}^{m} x_k S^k(p)`.
    pub fn lambda_bar(p: &FiniteVarPoly) -> FiniteVarPoly {
        (1..=p.num_vars()).fold(FiniteVarPoly::zero(p.num_vars(), p.degree_bound()), |acc, k| {
            acc.add(&p.shift_pow(k).mul_var(k))
        })
    }

    /// `Σ_{k=1}^{m} x_k S^{k-1}(p)`.
    pub fn lambda(p: &FiniteVarPoly) -> FiniteVarPoly {
        (1..=p.num_vars()).fold(FiniteVarPoly::zero(p.num_vars(), p.degree_bound()), |acc, k| {
            acc.add(&p.shift_pow(k - 1).mul_var(k))
        })
    }
}
