//! The recursive invariant `Ψ` and its built-in instances.
//!
//! Given a unit `1 ∈ A` and a linear operator `Ξ` on `A`, every vertex `v`
//! carries `N_v = Ξ(Π N_c)` over its children `c` (so a leaf carries
//! `Ξ(1)`), `Ψ(T)` is the value at the root and `Ψ` of a forest is the
//! product over its trees.

use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigUint;
use num_traits::One;
use serde_json::{json, Value};

use crate::algebra::{AlgebraElement, FiniteVarPoly, Polynomial, QSymElement};
use crate::error::{Error, Result};
use crate::forest::{automorphism_order, enumerate_trees, CanonicalKey, RootedForest, RootedTree};
use crate::operators::{self, LinearOperator};

/// Upper bound on the number of maps an exhaustive oracle may visit.
pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

/// The pair `(A, Ξ)` that fixes one invariant, together with the unit of `A`.
#[derive(Clone, Debug)]
pub struct InvariantSpec<A> {
    name: String,
    tag: String,
    unit: A,
    operator: LinearOperator<A>,
}

impl<A: AlgebraElement> InvariantSpec<A> {
    /// Fails when the operator acts on a different algebra than `tag`.
    pub fn new(
        name: impl Into<String>,
        tag: impl Into<String>,
        unit: A,
        operator: LinearOperator<A>,
    ) -> Result<Self> {
        let tag = tag.into();
        if operator.tag() != tag {
            return Err(Error::domain(format!(
                "operator {} acts on {}, not {}",
                operator.name(),
                operator.tag(),
                tag
            )));
        }
        Ok(InvariantSpec {
            name: name.into(),
            tag,
            unit,
            operator,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn unit(&self) -> &A {
        &self.unit
    }

    pub fn operator(&self) -> &LinearOperator<A> {
        &self.operator
    }

    /// `Ξ(a)`.
    pub fn apply(&self, a: &A) -> A {
        self.operator.apply(a)
    }

    /// `a = Ξ(1)`, the value of the single vertex.
    pub fn seed(&self) -> A {
        self.operator.apply(&self.unit)
    }
}

/// Evaluator for one [`InvariantSpec`] with a memo keyed by canonical key.
///
/// The memo sits behind a lock; entries are inserted only once complete, so
/// concurrent readers never observe partial values.
#[derive(Debug)]
pub struct Invariant<A> {
    spec: InvariantSpec<A>,
    memo: RwLock<HashMap<CanonicalKey, A>>,
}

impl<A: AlgebraElement> Invariant<A> {
    pub fn new(spec: InvariantSpec<A>) -> Self {
        Invariant {
            spec,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn spec(&self) -> &InvariantSpec<A> {
        &self.spec
    }

    pub fn name(&self) -> &str {
        self.spec.name()
    }

    /// `Ψ(T)`.
    pub fn evaluate(&self, tree: &RootedTree) -> A {
        if let Some(v) = self.memo.read().expect("memo poisoned").get(tree.key()) {
            return v.clone();
        }
        let product = tree
            .children()
            .iter()
            .fold(self.spec.unit.clone(), |acc, c| acc.times(&self.evaluate(c)));
        let value = self.spec.apply(&product);
        self.memo
            .write()
            .expect("memo poisoned")
            .insert(tree.key().clone(), value.clone());
        value
    }

    /// `Ψ(F) = Π Ψ(T_i)`; the empty forest gives the unit.
    pub fn evaluate_forest(&self, forest: &RootedForest) -> A {
        forest
            .trees()
            .iter()
            .fold(self.spec.unit.clone(), |acc, t| acc.times(&self.evaluate(t)))
    }

    pub fn table<'a>(&self, trees: impl IntoIterator<Item = &'a RootedTree>) -> InvariantTable<A> {
        let entries = trees
            .into_iter()
            .map(|t| {
                (
                    t.key().clone(),
                    TableEntry {
                        value: self.evaluate(t),
                        alpha: automorphism_order(t),
                        vertex_count: t.vertex_count(),
                    },
                )
            })
            .collect();
        InvariantTable { entries }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableEntry<A> {
    pub value: A,
    pub alpha: BigUint,
    pub vertex_count: usize,
}

/// Invariant values with automorphism orders, keyed by canonical key.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantTable<A> {
    pub entries: BTreeMap<CanonicalKey, TableEntry<A>>,
}

impl<A: AlgebraElement> InvariantTable<A> {
    /// Array of `{tree, alpha, vertex_count, value}` in key order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|(k, e)| {
                    json!({
                        "tree": k.as_str(),
                        "alpha": e.alpha.to_string(),
                        "vertex_count": e.vertex_count,
                        "value": e.value.to_json(),
                    })
                })
                .collect(),
        )
    }
}

/// The four operators with built-in invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinOperator {
    /// `Δ⁻¹`: strict order polynomial.
    DeltaInv,
    /// `∇⁻¹`: order polynomial.
    NablaInv,
    /// `Λ̄`: strict quasi-symmetric generating function.
    LambdaBar,
    /// `Λ`: weak quasi-symmetric generating function.
    Lambda,
}

impl BuiltinOperator {
    pub const ALL: [BuiltinOperator; 4] = [
        BuiltinOperator::DeltaInv,
        BuiltinOperator::NablaInv,
        BuiltinOperator::LambdaBar,
        BuiltinOperator::Lambda,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinOperator::DeltaInv => "delta-inv",
            BuiltinOperator::NablaInv => "nabla-inv",
            BuiltinOperator::LambdaBar => "lambda-bar",
            BuiltinOperator::Lambda => "lambda",
        }
    }

    pub fn is_quasi_symmetric(self) -> bool {
        matches!(self, BuiltinOperator::LambdaBar | BuiltinOperator::Lambda)
    }
}

impl FromStr for BuiltinOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BuiltinOperator::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| {
                Error::domain(format!(
                    "unknown operator {s:?}; expected one of delta-inv, nabla-inv, lambda-bar, lambda"
                ))
            })
    }
}

pub fn strict_order_spec() -> InvariantSpec<Polynomial> {
    InvariantSpec::new("strict-order", operators::POLYNOMIAL_TAG, Polynomial::one(), operators::delta_inv_op())
        .expect("built-in tags agree")
}

pub fn order_spec() -> InvariantSpec<Polynomial> {
    InvariantSpec::new("order", operators::POLYNOMIAL_TAG, Polynomial::one(), operators::nabla_inv_op())
        .expect("built-in tags agree")
}

pub fn qsym_strict_spec(max_degree: usize) -> InvariantSpec<QSymElement> {
    InvariantSpec::new(
        "qsym-strict",
        operators::QSYM_TAG,
        QSymElement::one(max_degree),
        operators::lambda_bar_op(),
    )
    .expect("built-in tags agree")
}

pub fn qsym_weak_spec(max_degree: usize) -> InvariantSpec<QSymElement> {
    InvariantSpec::new(
        "qsym-weak",
        operators::QSYM_TAG,
        QSymElement::one(max_degree),
        operators::lambda_op(),
    )
    .expect("built-in tags agree")
}

/// `Ω̄(T)`: counts strict order-preserving maps into `[n]` at `t = n`.
pub fn strict_order_poly(tree: &RootedTree) -> Polynomial {
    Invariant::new(strict_order_spec()).evaluate(tree)
}

/// `Ω(T)`: counts weak order-preserving maps into `[n]` at `t = n`.
pub fn order_poly(tree: &RootedTree) -> Polynomial {
    Invariant::new(order_spec()).evaluate(tree)
}

fn check_degree(tree: &RootedTree, max_degree: usize) -> Result<()> {
    if max_degree < tree.vertex_count() {
        Err(Error::domain(format!(
            "max degree {max_degree} is below the tree's {} vertices",
            tree.vertex_count()
        )))
    } else {
        Ok(())
    }
}

/// `K̄(T)` in the monomial basis.
pub fn qsym_strict(tree: &RootedTree, max_degree: usize) -> Result<QSymElement> {
    check_degree(tree, max_degree)?;
    Ok(Invariant::new(qsym_strict_spec(max_degree)).evaluate(tree))
}

/// `K(T)` in the monomial basis.
pub fn qsym_weak(tree: &RootedTree, max_degree: usize) -> Result<QSymElement> {
    check_degree(tree, max_degree)?;
    Ok(Invariant::new(qsym_weak_spec(max_degree)).evaluate(tree))
}

fn guard(base: usize, vertices: usize) -> Result<()> {
    let total = (base as u64).checked_pow(vertices as u32);
    match total {
        Some(t) if t <= BRUTE_FORCE_LIMIT => Ok(()),
        _ => Err(Error::resource(format!(
            "{base}^{vertices} maps exceed the enumeration limit of {BRUTE_FORCE_LIMIT}"
        ))),
    }
}

/// Walks every map `φ: V(T) → {1..n}` that increases (strictly, or weakly)
/// from each parent to its children, calling `visit` with the values in
/// preorder.
fn for_each_order_map(
    parents: &[Option<usize>],
    n: u32,
    strict: bool,
    visit: &mut impl FnMut(&[u32]),
) {
    fn go(
        parents: &[Option<usize>],
        n: u32,
        strict: bool,
        values: &mut Vec<u32>,
        visit: &mut impl FnMut(&[u32]),
    ) {
        let v = values.len();
        if v == parents.len() {
            visit(values);
            return;
        }
        let low = match parents[v] {
            None => 1,
            Some(p) if strict => values[p] + 1,
            Some(p) => values[p],
        };
        for x in low..=n {
            values.push(x);
            go(parents, n, strict, values, visit);
            values.pop();
        }
    }
    go(parents, n, strict, &mut Vec::with_capacity(parents.len()), visit);
}

/// Number of maps `φ: T → [n]` with `φ(parent) < φ(child)` (strict) or
/// `φ(parent) ≤ φ(child)` (weak), by exhaustive search.
pub fn brute_force_order_count(tree: &RootedTree, n: usize, strict: bool) -> Result<u64> {
    guard(n, tree.vertex_count())?;
    let mut count = 0u64;
    for_each_order_map(&tree.parent_array(), n as u32, strict, &mut |_| count += 1);
    Ok(count)
}

/// `Σ_σ x^σ` over (strict) order-preserving `σ: T → {1..m}`, by exhaustive
/// search. The result has degree bound `v(T)`.
pub fn brute_force_qsym(tree: &RootedTree, m: usize, strict: bool) -> Result<FiniteVarPoly> {
    guard(m, tree.vertex_count())?;
    let mut out = FiniteVarPoly::zero(m, tree.vertex_count());
    for_each_order_map(&tree.parent_array(), m as u32, strict, &mut |values| {
        let mut exps = vec![0u32; m];
        for &x in values {
            exps[x as usize - 1] += 1;
        }
        out.add_term(exps, One::one());
    });
    Ok(out)
}

/// Two non-isomorphic trees with the same invariant value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collision {
    pub n: usize,
    pub invariant: String,
    pub trees: [CanonicalKey; 2],
    /// Whether the automorphism orders agree as well.
    pub alpha_collision: bool,
}

impl Collision {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "invariant": self.invariant,
            "colliding_trees": [self.trees[0].as_str(), self.trees[1].as_str()],
            "alpha_collision": self.alpha_collision,
        })
    }
}

/// Every pair of non-isomorphic trees with at most `n_max` vertices that
/// the invariant fails to separate. Values are compared through their
/// canonical text, so equality is exact.
pub fn collision_report<A: AlgebraElement>(invariant: &Invariant<A>, n_max: usize) -> Vec<Collision> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let trees = enumerate_trees(n).expect("n >= 1");
        let mut groups: BTreeMap<String, Vec<&RootedTree>> = BTreeMap::new();
        for t in &trees {
            groups
                .entry(invariant.evaluate(t).canonical_text())
                .or_default()
                .push(t);
        }
        for group in groups.values().filter(|g| g.len() > 1) {
            for (i, a) in group.iter().enumerate() {
                for b in &group[i + 1..] {
                    out.push(Collision {
                        n,
                        invariant: invariant.name().to_string(),
                        trees: [a.key().clone(), b.key().clone()],
                        alpha_collision: automorphism_order(a) == automorphism_order(b),
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::forest::{b_plus, parse_tree};

    fn t(s: &str) -> RootedTree {
        parse_tree(s).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let strict = Invariant::new(strict_order_spec());
        assert_eq!(strict.evaluate(&t("()")), Polynomial::t());
        assert_eq!(
            strict.evaluate(&t("(())")),
            Polynomial::from_coeffs(vec![int(0), rat(-1, 2), rat(1, 2)])
        );
        let kbar = Invariant::new(qsym_strict_spec(6));
        assert_eq!(kbar.evaluate(&t("(())")), QSymElement::m(&[1, 1], 6));
    }

    #[test]
    fn forest_examples() {
        let strict = Invariant::new(strict_order_spec());
        assert_eq!(strict.evaluate_forest(&RootedForest::empty()), Polynomial::one());
        let two = RootedForest::new(vec![t("()"), t("()")]);
        assert_eq!(strict.evaluate_forest(&two), Polynomial::from_ints(&[0, 0, 1]));
        let k = Invariant::new(qsym_weak_spec(4));
        assert_eq!(
            k.evaluate_forest(&RootedForest::new(vec![t("()")])),
            QSymElement::m(&[1], 4)
        );
    }

    #[test]
    fn order_polynomial_examples() {
        assert_eq!(strict_order_poly(&t("()")), Polynomial::t());
        assert_eq!(
            order_poly(&t("(())")),
            Polynomial::from_coeffs(vec![int(0), rat(1, 2), rat(1, 2)])
        );
        // t(t-1)(2t-1)/6 = (2t^3 - 3t^2 + t)/6
        assert_eq!(
            strict_order_poly(&t("(()())")),
            Polynomial::from_coeffs(vec![int(0), rat(1, 6), rat(-1, 2), rat(1, 3)])
        );
        for n in 1..=4 {
            let count = brute_force_order_count(&t("(()())"), n, true).unwrap();
            assert_eq!(strict_order_poly(&t("(()())")).eval_at(&int(n as i64)), int(count as i64));
        }
    }

    #[test]
    fn quasi_symmetric_examples() {
        assert_eq!(qsym_strict(&t("()"), 4).unwrap(), QSymElement::m(&[1], 4));
        assert_eq!(
            qsym_weak(&t("(())"), 4).unwrap(),
            QSymElement::m(&[1, 1], 4).add(&QSymElement::m(&[2], 4))
        );
        assert_eq!(
            qsym_strict(&t("(()())"), 4).unwrap(),
            QSymElement::m(&[1, 1, 1], 4)
                .scale(&int(2))
                .add(&QSymElement::m(&[1, 2], 4))
        );
        assert!(matches!(qsym_strict(&t("(()())"), 2), Err(Error::Domain(_))));
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_order_count(&t("()"), 5, true).unwrap(), 5);
        assert_eq!(brute_force_order_count(&t("(())"), 3, true).unwrap(), 3);
        assert_eq!(brute_force_order_count(&t("(())"), 3, false).unwrap(), 6);
        let big = b_plus(RootedForest::new(vec![t("()"); 9]));
        assert!(matches!(
            brute_force_order_count(&big, 6, true),
            Err(Error::Resource(_))
        ));

        let x1 = FiniteVarPoly::var(2, 2, 1);
        let x2 = FiniteVarPoly::var(2, 2, 2);
        assert_eq!(
            brute_force_qsym(&t("()"), 2, true).unwrap(),
            FiniteVarPoly::var(2, 1, 1).add(&FiniteVarPoly::var(2, 1, 2))
        );
        assert_eq!(brute_force_qsym(&t("(())"), 2, true).unwrap(), x1.mul(&x2));
        assert_eq!(
            brute_force_qsym(&t("(())"), 2, false).unwrap(),
            x1.mul(&x1).add(&x1.mul(&x2)).add(&x2.mul(&x2))
        );
    }

    #[test]
    fn collision_examples() {
        let kbar = Invariant::new(qsym_strict_spec(5));
        assert!(collision_report(&kbar, 5).is_empty());
        let strict = Invariant::new(strict_order_spec());
        assert!(collision_report(&strict, 3).is_empty());
        let trivial = Invariant::new(
            InvariantSpec::new(
                "constant",
                "polynomial",
                Polynomial::one(),
                LinearOperator::new("zero", "polynomial", |_: &Polynomial| Polynomial::zero()),
            )
            .unwrap(),
        );
        assert!(collision_report(&trivial, 1).is_empty());
        // a constant invariant collides on both 3-vertex trees, which have α = 1 and 2
        let found = collision_report(&trivial, 3);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].n, 3);
        assert!(!found[0].alpha_collision);
    }

    #[test]
    fn spec_rejects_mismatched_tag() {
        assert!(InvariantSpec::new("x", "qsym", Polynomial::one(), operators::delta_inv_op()).is_err());
    }

    #[test]
    fn builtin_names_round_trip() {
        for op in BuiltinOperator::ALL {
            assert_eq!(op.name().parse::<BuiltinOperator>().unwrap(), op);
        }
        assert!("nabla".parse::<BuiltinOperator>().is_err());
    }
}
