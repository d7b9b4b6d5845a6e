//! Labeled planar rooted trees and the invariant over noncommutative algebras.
//!
//! Every vertex carries a label from a finite set `D`, children are ordered,
//! and each label `α` has its own operator `Ξ_α`. A vertex labeled `α` with
//! ordered children `v_1, …, v_k` carries `Ξ_α(N_{v_1} ⋯ N_{v_k})`; forests
//! multiply their trees left to right.
//!
//! Text format: `tree ::= "(" label ":" tree* ")"`, e.g. `(a:(b:)(a:))`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use crate::algebra::{AlgebraElement, FreeWord, Series, TensorElement};
use crate::error::{Error, Result};
use crate::forest::{b_plus, RootedForest, RootedTree};
use crate::operators::LinearOperator;

pub const FREE_WORD_TAG: &str = "free-word";
pub const TENSOR_TAG: &str = "tensor";

/// Upper bound on `|D|^n · Catalan(n−1)` for planar enumeration.
pub const PLANAR_ENUMERATION_LIMIT: u64 = 2_000_000;

/// The finite label set `D`, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelSet {
    labels: Vec<String>,
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl LabelSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::domain("the label set is empty"));
        }
        for (i, l) in labels.iter().enumerate() {
            if !is_identifier(l) {
                return Err(Error::domain(format!("label {l:?} is not an identifier")));
            }
            if labels[..i].contains(l) {
                return Err(Error::domain(format!("label {l:?} appears twice")));
            }
        }
        Ok(LabelSet { labels })
    }

    /// Comma-separated labels, e.g. `"a,b"`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(text.split(',').map(str::trim))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index_of(label).is_some()
    }
}

/// A labeled planar rooted tree. Equality is structural; children are never
/// re-sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PlanarTree {
    label: String,
    children: Vec<PlanarTree>,
}

impl PlanarTree {
    pub fn leaf(label: impl Into<String>) -> Self {
        PlanarTree {
            label: label.into(),
            children: Vec::new(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn children(&self) -> &[PlanarTree] {
        &self.children
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(PlanarTree::vertex_count).sum::<usize>()
    }

    /// The unlabeled rooted tree obtained by forgetting labels and order.
    pub fn underlying(&self) -> RootedTree {
        b_plus(self.children.iter().map(PlanarTree::underlying).collect())
    }

    fn check_labels(&self, labels: &LabelSet) -> Result<()> {
        if !labels.contains(&self.label) {
            return Err(Error::domain(format!("label {:?} is not in the label set", self.label)));
        }
        self.children.iter().try_for_each(|c| c.check_labels(labels))
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:", self.label)?;
        for c in &self.children {
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// An ordered list of planar trees.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PlanarForest {
    trees: Vec<PlanarTree>,
}

impl PlanarForest {
    pub fn new(trees: Vec<PlanarTree>) -> Self {
        PlanarForest { trees }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn trees(&self) -> &[PlanarTree] {
        &self.trees
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.trees.iter().map(PlanarTree::vertex_count).sum()
    }

    /// Ordered concatenation `self · other`.
    pub fn concat(&self, other: &PlanarForest) -> PlanarForest {
        let mut trees = self.trees.clone();
        trees.extend(other.trees.iter().cloned());
        PlanarForest { trees }
    }

    /// `(self[..k], self[k..])`.
    pub fn split_at(&self, k: usize) -> (PlanarForest, PlanarForest) {
        let (a, b) = self.trees.split_at(k);
        (PlanarForest::new(a.to_vec()), PlanarForest::new(b.to_vec()))
    }

    pub fn underlying(&self) -> RootedForest {
        self.trees.iter().map(PlanarTree::underlying).collect()
    }
}

impl fmt::Display for PlanarForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.trees.iter().try_for_each(|t| write!(f, "{t}"))
    }
}

/// Attaches the trees of `forest`, in order, below a new `label` vertex.
pub fn b_plus_alpha(label: &str, forest: PlanarForest, labels: &LabelSet) -> Result<PlanarTree> {
    if !labels.contains(label) {
        return Err(Error::domain(format!("label {label:?} is not in the label set")));
    }
    Ok(PlanarTree {
        label: label.to_string(),
        children: forest.trees,
    })
}

struct PlanarParser<'a> {
    text: &'a str,
    pos: usize,
}

impl PlanarParser<'_> {
    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected {:?}", c as char)))
        }
    }

    fn tree(&mut self) -> Result<PlanarTree> {
        self.expect(b'(')?;
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(self.pos, "expected a label"));
        }
        let label = self.text[start..self.pos].to_string();
        self.expect(b':')?;
        let mut children = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b')') => {
                    self.pos += 1;
                    return Ok(PlanarTree { label, children });
                }
                Some(b'(') => children.push(self.tree()?),
                Some(c) => {
                    return Err(Error::parse(self.pos, format!("unexpected character {:?}", c as char)))
                }
                None => return Err(Error::parse(self.pos, "unbalanced input: missing ')'")),
            }
        }
    }
}

/// Parses a juxtaposition of planar trees, e.g. `(a:)(b:(a:))`.
pub fn parse_planar_forest(text: &str) -> Result<PlanarForest> {
    let mut p = PlanarParser { text, pos: 0 };
    let mut trees = Vec::new();
    loop {
        p.skip_ws();
        if p.peek().is_none() {
            return Ok(PlanarForest::new(trees));
        }
        trees.push(p.tree()?);
    }
}

/// Parses exactly one planar tree.
pub fn parse_planar_tree(text: &str) -> Result<PlanarTree> {
    let mut p = PlanarParser { text, pos: 0 };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(Error::parse(0, "empty input"));
    }
    let tree = p.tree()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(Error::parse(p.pos, "trailing input after the root tree"));
    }
    Ok(tree)
}

/// `{Ξ_α | α ∈ D}` on one algebra, with that algebra's unit.
#[derive(Clone, Debug)]
pub struct OperatorFamily<A> {
    unit: A,
    entries: Vec<(String, LinearOperator<A>)>,
}

impl<A: AlgebraElement> OperatorFamily<A> {
    /// Fails on an empty family, duplicate labels, or mixed algebra tags.
    pub fn new(unit: A, entries: Vec<(String, LinearOperator<A>)>) -> Result<Self> {
        let Some((_, first)) = entries.first() else {
            return Err(Error::domain("an operator family needs at least one label"));
        };
        let tag = first.tag().to_string();
        for (i, (label, op)) in entries.iter().enumerate() {
            if op.tag() != tag {
                return Err(Error::domain(format!(
                    "operator for label {label:?} acts on {}, not {tag}",
                    op.tag()
                )));
            }
            if entries[..i].iter().any(|(l, _)| l == label) {
                return Err(Error::domain(format!("label {label:?} appears twice")));
            }
        }
        Ok(OperatorFamily { unit, entries })
    }

    pub fn unit(&self) -> &A {
        &self.unit
    }

    pub fn labels(&self) -> Vec<&str> {
        self.entries.iter().map(|(l, _)| l.as_str()).collect()
    }

    pub fn label_set(&self) -> LabelSet {
        LabelSet {
            labels: self.entries.iter().map(|(l, _)| l.clone()).collect(),
        }
    }

    pub fn get(&self, label: &str) -> Result<&LinearOperator<A>> {
        self.entries
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, op)| op)
            .ok_or_else(|| Error::domain(format!("no operator for label {label:?}")))
    }

    /// `Ξ = Σ_α Ξ_α`.
    pub fn total(&self) -> LinearOperator<A> {
        let mut it = self.entries.iter().map(|(_, op)| op.clone());
        let first = it.next().expect("family is non-empty");
        it.fold(first, |acc, op| acc.add(&op).expect("family shares one tag"))
    }
}

/// `Ψ(T)` by the ordered recursion.
pub fn evaluate_planar<A: AlgebraElement>(tree: &PlanarTree, ops: &OperatorFamily<A>) -> Result<A> {
    let op = ops.get(&tree.label)?;
    let mut product = ops.unit.clone();
    for c in &tree.children {
        product = product.times(&evaluate_planar(c, ops)?);
    }
    Ok(op.apply(&product))
}

/// `Ψ(T_1 ⋯ T_m) = Ψ(T_1) ⋯ Ψ(T_m)` in forest order.
pub fn evaluate_planar_forest<A: AlgebraElement>(forest: &PlanarForest, ops: &OperatorFamily<A>) -> Result<A> {
    let mut product = ops.unit.clone();
    for t in &forest.trees {
        product = product.times(&evaluate_planar(t, ops)?);
    }
    Ok(product)
}

pub fn catalan(n: usize) -> BigUint {
    // C_n = binom(2n, n) / (n + 1)
    let mut c = BigUint::one();
    for i in 0..n {
        c = c * BigUint::from(2 * (2 * i + 1)) / BigUint::from(i + 2);
    }
    c
}

fn planar_guard(n: usize, labels: &LabelSet) -> Result<()> {
    let count = BigUint::from(labels.len()).pow(n as u32) * catalan(n.saturating_sub(1));
    if count.to_u64().is_some_and(|c| c <= PLANAR_ENUMERATION_LIMIT) {
        Ok(())
    } else {
        Err(Error::resource(format!(
            "{count} labeled planar trees exceed the enumeration limit of {PLANAR_ENUMERATION_LIMIT}"
        )))
    }
}

struct PlanarTables {
    /// `trees[k]`: all trees with `k` vertices.
    trees: Vec<Vec<PlanarTree>>,
    /// `forests[k]`: all ordered forests with `k` vertices.
    forests: Vec<Vec<Vec<PlanarTree>>>,
}

fn planar_tables(n: usize, labels: &LabelSet) -> PlanarTables {
    let mut trees: Vec<Vec<PlanarTree>> = vec![Vec::new()];
    let mut forests: Vec<Vec<Vec<PlanarTree>>> = vec![vec![Vec::new()]];
    for k in 1..=n {
        let mut level = Vec::new();
        for label in labels.labels() {
            for children in &forests[k - 1] {
                level.push(PlanarTree {
                    label: label.clone(),
                    children: children.clone(),
                });
            }
        }
        trees.push(level);
        // forests of size k: first tree of size s, then a forest of size k - s
        let mut fk = Vec::new();
        for s in 1..=k {
            for first in &trees[s] {
                for rest in &forests[k - s] {
                    let mut f = Vec::with_capacity(rest.len() + 1);
                    f.push(first.clone());
                    f.extend(rest.iter().cloned());
                    fk.push(f);
                }
            }
        }
        forests.push(fk);
    }
    PlanarTables { trees, forests }
}

/// Every labeled planar tree with `n` vertices, each exactly once.
pub fn enumerate_planar(n: usize, labels: &LabelSet) -> Result<Vec<PlanarTree>> {
    if n == 0 {
        return Err(Error::domain("a planar tree has at least one vertex"));
    }
    planar_guard(n, labels)?;
    Ok(planar_tables(n, labels).trees.swap_remove(n))
}

/// Every ordered forest of labeled planar trees with `n` vertices in total.
pub fn enumerate_planar_forests(n: usize, labels: &LabelSet) -> Result<Vec<PlanarForest>> {
    planar_guard(n + 1, labels)?;
    Ok(planar_tables(n, labels)
        .forests
        .swap_remove(n)
        .into_iter()
        .map(PlanarForest::new)
        .collect())
}

/// `U_{α,n}` for each label, in family order.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarUSequence<A> {
    pub labels: Vec<String>,
    /// `per_label[i][n-1] = U_{labels[i], n}`.
    pub per_label: Vec<Vec<A>>,
}

impl<A: AlgebraElement> PlanarUSequence<A> {
    /// `U_n = Σ_α U_{α,n}`.
    pub fn total(&self, n: usize, zero: &A) -> A {
        self.per_label
            .iter()
            .fold(zero.zero_like(), |acc, seq| acc.plus(&seq[n - 1]))
    }

    /// `U(q)` truncated at `q^N`.
    pub fn total_series(&self, zero: &A) -> Series<A> {
        let n_max = self.per_label.first().map_or(0, Vec::len);
        let mut coeffs = vec![zero.zero_like()];
        coeffs.extend((1..=n_max).map(|n| self.total(n, zero)));
        Series::from_coeffs(coeffs, n_max)
    }

    pub fn to_json(&self) -> Value {
        Value::Object(
            self.labels
                .iter()
                .zip(&self.per_label)
                .map(|(l, seq)| (l.clone(), Value::Array(seq.iter().map(A::to_json).collect())))
                .collect(),
        )
    }
}

/// `U_{α,1} = Ξ_α(1)`, `U_{α,n} = Ξ_α([q^{n−1}] 1/(1 − U(q)))`.
pub fn u_planar_by_recurrence<A: AlgebraElement>(ops: &OperatorFamily<A>, n_max: usize) -> Result<PlanarUSequence<A>> {
    let zero = ops.unit.zero_like();
    let mut per_label: Vec<Vec<A>> = vec![Vec::with_capacity(n_max); ops.entries.len()];
    for n in 1..=n_max {
        let mut coeffs = vec![zero.clone()];
        for k in 1..n {
            coeffs.push(per_label.iter().fold(zero.clone(), |acc, seq| acc.plus(&seq[k - 1])));
        }
        let u = Series::from_coeffs(coeffs, n - 1);
        let inner = u.geometric_inverse()?.coeff(n - 1).clone();
        for (seq, (_, op)) in per_label.iter_mut().zip(&ops.entries) {
            seq.push(op.apply(&inner));
        }
    }
    Ok(PlanarUSequence {
        labels: ops.entries.iter().map(|(l, _)| l.clone()).collect(),
        per_label,
    })
}

/// `U_{α,n} = Σ Ψ(T)` over planar trees with `n` vertices and root label `α`.
pub fn u_planar_by_enumeration<A: AlgebraElement>(ops: &OperatorFamily<A>, n_max: usize) -> Result<PlanarUSequence<A>> {
    let labels = ops.label_set();
    if n_max > 0 {
        planar_guard(n_max, &labels)?;
    }
    let tables = planar_tables(n_max, &labels);
    let zero = ops.unit.zero_like();
    let mut per_label = vec![Vec::with_capacity(n_max); labels.len()];
    for n in 1..=n_max {
        let mut sums = vec![zero.clone(); labels.len()];
        for t in &tables.trees[n] {
            let i = labels.index_of(&t.label).expect("enumerated with these labels");
            sums[i] = sums[i].plus(&evaluate_planar(t, ops)?);
        }
        for (seq, s) in per_label.iter_mut().zip(sums) {
            seq.push(s);
        }
    }
    Ok(PlanarUSequence {
        labels: labels.labels,
        per_label,
    })
}

/// Residual `q·Ξ(1/(1 − U(q))) − U(q)` modulo `q^{N+1}` with `U` obtained
/// by enumeration and `Ξ = Σ_α Ξ_α`.
pub fn planar_functional_residual<A: AlgebraElement>(ops: &OperatorFamily<A>, n_max: usize) -> Result<Series<A>> {
    let u = u_planar_by_enumeration(ops, n_max)?.total_series(&ops.unit);
    let total = ops.total();
    let lhs = u.geometric_inverse()?.map(|a| total.apply(a)).shift_up();
    Ok(lhs.sub(&u))
}

/// `Ξ_α(w) = g_α · w` on free words, where `g_α` is the generator whose
/// index is `α`'s position in `labels`.
pub fn free_word_family(labels: &LabelSet, max_len: usize) -> OperatorFamily<FreeWord> {
    let entries = labels
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let g = i as u32;
            let op = LinearOperator::new(format!("prefix-{l}"), FREE_WORD_TAG, move |w: &FreeWord| {
                w.left_mul_generator(g)
            });
            (l.clone(), op)
        })
        .collect();
    OperatorFamily::new(FreeWord::one(max_len), entries).expect("labels are distinct")
}

/// `L_α` on `T(A)`:
///
/// - `L_α(c) = c · Ξ_α(1_A)` for a scalar `c`;
/// - `L_α(v_1 ⊗ ⋯ ⊗ v_n) = Σ_{j=0}^{n} v_1 ⊗ ⋯ ⊗ v_j ⊗ Ξ_α(v_{j+1} ⋯ v_n)`,
///   the `j = n` term being `v_1 ⊗ ⋯ ⊗ v_n ⊗ Ξ_α(1_A)`.
///
/// Fails instead of truncating when the result would exceed the tensor
/// length bound.
pub fn tensor_cocycle_apply(
    label: &str,
    w: &TensorElement,
    base_ops: &OperatorFamily<FreeWord>,
) -> Result<TensorElement> {
    let op = base_ops.get(label)?;
    if w.overflowed() {
        return Err(Error::domain("tensor input already overflowed its length bound"));
    }
    if w.tensor_degree() + 1 > w.max_len() {
        return Err(Error::domain(format!(
            "L_{label} on a length-{} tensor exceeds the bound {}",
            w.tensor_degree(),
            w.max_len()
        )));
    }
    let unit = base_ops.unit();
    let mut out = TensorElement::zero(w.max_len());
    for (factors, c) in w.terms() {
        for j in 0..=factors.len() {
            let tail = factors[j..]
                .iter()
                .fold(unit.clone(), |acc, v| acc.times(&FreeWord::word(v.clone(), unit.max_len())));
            for (word, d) in op.apply(&tail).terms() {
                let mut t = factors[..j].to_vec();
                t.push(word.clone());
                out.add_term(t, c * d);
            }
        }
    }
    Ok(out)
}

/// `{L_α}` as an operator family on `T(A)`. An application that would
/// overflow the length bound yields an element flagged as overflowed.
pub fn tensor_family(base_ops: &OperatorFamily<FreeWord>, max_len: usize) -> OperatorFamily<TensorElement> {
    let entries = base_ops
        .labels()
        .into_iter()
        .map(|l| {
            let label = l.to_string();
            let base = base_ops.clone();
            let op = LinearOperator::new(format!("L-{l}"), TENSOR_TAG, move |w: &TensorElement| {
                tensor_cocycle_apply(&label, w, &base).unwrap_or_else(|_| {
                    let mut bad = w.zero_like();
                    bad.mark_overflow();
                    bad
                })
            });
            (l.to_string(), op)
        })
        .collect();
    OperatorFamily::new(TensorElement::one(max_len), entries).expect("labels are distinct")
}

/// Outcome of the tensor-algebra consistency check.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CocycleReport {
    pub forests_checked: usize,
    pub product_checks: usize,
    pub graft_checks: usize,
    pub failures: Vec<String>,
}

impl CocycleReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "forests_checked": self.forests_checked,
            "product_checks": self.product_checks,
            "graft_checks": self.graft_checks,
            "failures": self.failures,
        })
    }
}

/// Evaluates the `T(A)`-valued invariant (the ordered recursion with the
/// operators `L_α`) on each sample and checks
///
/// - multiplicativity: `φ(F_1 · F_2) = φ(F_1) ⊗ φ(F_2)` for every split;
/// - grafting: `φ(B₊^α(F)) = L_α(φ(F))` for every label `α`.
pub fn check_cocycle_consistency(
    samples: &[PlanarForest],
    base_ops: &OperatorFamily<FreeWord>,
    max_len: usize,
) -> Result<CocycleReport> {
    let family = tensor_family(base_ops, max_len);
    let labels = base_ops.label_set();
    let mut report = CocycleReport::default();
    for forest in samples {
        report.forests_checked += 1;
        let value = evaluate_planar_forest(forest, &family)?;
        if value.overflowed() {
            return Err(Error::domain(format!("evaluating {forest} overflowed the tensor bound")));
        }
        for k in 0..=forest.trees().len() {
            let (left, right) = forest.split_at(k);
            let product = evaluate_planar_forest(&left, &family)?
                .times(&evaluate_planar_forest(&right, &family)?);
            report.product_checks += 1;
            if product != value {
                report.failures.push(format!("product split of {forest} at {k}"));
            }
        }
        for label in labels.labels() {
            let grafted = b_plus_alpha(label, forest.clone(), &labels)?;
            let direct = evaluate_planar(&grafted, &family)?;
            let via_cocycle = tensor_cocycle_apply(label, &value, base_ops)?;
            report.graft_checks += 1;
            if direct != via_cocycle {
                report.failures.push(format!("grafting {forest} under {label}"));
            }
        }
    }
    Ok(report)
}

impl PlanarTree {
    /// Fails when a label is outside `labels`.
    pub fn validate(&self, labels: &LabelSet) -> Result<()> {
        self.check_labels(labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Polynomial};
    use crate::invariant::{strict_order_spec, Invariant};
    use crate::operators::delta_inv_op;

    fn ab() -> LabelSet {
        LabelSet::new(["a", "b"]).unwrap()
    }

    fn abc() -> LabelSet {
        LabelSet::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn grafting() {
        let d = abc();
        let single = b_plus_alpha("a", PlanarForest::empty(), &d).unwrap();
        assert_eq!(single, PlanarTree::leaf("a"));
        let bc = PlanarForest::new(vec![PlanarTree::leaf("b"), PlanarTree::leaf("c")]);
        let cb = PlanarForest::new(vec![PlanarTree::leaf("c"), PlanarTree::leaf("b")]);
        assert_ne!(b_plus_alpha("a", bc, &d).unwrap(), b_plus_alpha("a", cb, &d).unwrap());
        let chain = b_plus_alpha("a", PlanarForest::new(vec![PlanarTree::leaf("a")]), &d).unwrap();
        assert_eq!(chain.to_string(), "(a:(a:))");
        assert!(matches!(b_plus_alpha("z", PlanarForest::empty(), &d), Err(Error::Domain(_))));
    }

    #[test]
    fn parsing() {
        let t = parse_planar_tree(" (a: (b:) (c:(a:)) )").unwrap();
        assert_eq!(t.to_string(), "(a:(b:)(c:(a:)))");
        assert_eq!(t.vertex_count(), 4);
        assert!(t.validate(&abc()).is_ok());
        assert!(t.validate(&ab()).is_err());
        assert!(matches!(parse_planar_tree("(a:"), Err(Error::Parse { .. })));
        assert!(matches!(parse_planar_tree("(:)"), Err(Error::Parse { offset: 1, .. })));
        assert!(parse_planar_tree("(a:)(b:)").is_err());
        assert_eq!(parse_planar_forest("(a:)(b:)").unwrap().trees().len(), 2);
        assert!(parse_planar_forest("").unwrap().is_empty());
    }

    #[test]
    fn evaluation_examples() {
        let ops = free_word_family(&ab(), 6);
        let a = evaluate_planar(&PlanarTree::leaf("a"), &ops).unwrap();
        assert_eq!(a, FreeWord::generator(0, 6));
        let chain = parse_planar_tree("(a:(b:))").unwrap();
        assert_eq!(evaluate_planar(&chain, &ops).unwrap(), FreeWord::word(vec![0, 1], 6));
        let f = parse_planar_forest("(a:)(b:)").unwrap();
        assert_eq!(evaluate_planar_forest(&f, &ops).unwrap(), FreeWord::word(vec![0, 1], 6));
    }

    #[test]
    fn planar_counts() {
        let one = LabelSet::new(["a"]).unwrap();
        assert_eq!(enumerate_planar(1, &one).unwrap().len(), 1);
        assert_eq!(enumerate_planar(3, &one).unwrap().len(), 2);
        assert_eq!(enumerate_planar(4, &one).unwrap().len(), 5);
        assert_eq!(enumerate_planar(3, &ab()).unwrap().len(), 8 * 2);
        assert!(matches!(enumerate_planar(20, &abc()), Err(Error::Resource(_))));
        assert_eq!(catalan(5), BigUint::from(42u32));
    }

    #[test]
    fn recurrence_examples() {
        let one = LabelSet::new(["a"]).unwrap();
        let ops = free_word_family(&one, 8);
        let u = u_planar_by_recurrence(&ops, 3).unwrap();
        let g = |w: &[u32]| FreeWord::word(w.to_vec(), 8);
        assert_eq!(u.per_label[0][0], g(&[0]));
        assert_eq!(u.per_label[0][1], g(&[0, 0]));
        // Ξ(Ξ(Ξ(1)) + Ξ(1)²) = g·g·g + g·g·g
        assert_eq!(u.per_label[0][2], g(&[0, 0, 0]).scale(&int(2)));

        let two = free_word_family(&ab(), 8);
        let e = u_planar_by_enumeration(&two, 2).unwrap();
        assert_eq!(e.per_label[0][1], g(&[0, 0]).plus(&g(&[0, 1])));
    }

    #[test]
    fn cocycle_examples() {
        let base = free_word_family(&ab(), 6);
        let g = |w: &[u32]| vec![w.to_vec()];
        // L_a(1) = Ξ_a(1)
        let one = TensorElement::one(4);
        assert_eq!(
            tensor_cocycle_apply("a", &one, &base).unwrap(),
            TensorElement::basis(g(&[0]), 4)
        );
        // L_a(v) = Ξ_a(v) + v ⊗ Ξ_a(1)
        let v = TensorElement::basis(vec![vec![1]], 4);
        let expect = TensorElement::basis(vec![vec![0, 1]], 4)
            .plus(&TensorElement::basis(vec![vec![1], vec![0]], 4));
        assert_eq!(tensor_cocycle_apply("a", &v, &base).unwrap(), expect);
        // L_a(v1 ⊗ v2)
        let v12 = TensorElement::basis(vec![vec![1], vec![1, 1]], 4);
        let expect = TensorElement::basis(vec![vec![0, 1, 1, 1]], 4)
            .plus(&TensorElement::basis(vec![vec![1], vec![0, 1, 1]], 4))
            .plus(&TensorElement::basis(vec![vec![1], vec![1, 1], vec![0]], 4));
        assert_eq!(tensor_cocycle_apply("a", &v12, &base).unwrap(), expect);
        // length bound
        let full = TensorElement::basis(vec![vec![1]; 4], 4);
        assert!(matches!(tensor_cocycle_apply("a", &full, &base), Err(Error::Domain(_))));
    }

    #[test]
    fn two_chain_expansion() {
        let base = free_word_family(&ab(), 6);
        let family = tensor_family(&base, 4);
        let chain = parse_planar_tree("(b:(a:))").unwrap();
        let value = evaluate_planar(&chain, &family).unwrap();
        let expect = TensorElement::basis(vec![vec![1, 0]], 4)
            .plus(&TensorElement::basis(vec![vec![0], vec![1]], 4));
        assert_eq!(value, expect);
        let report = check_cocycle_consistency(
            &[PlanarForest::empty(), parse_planar_forest("(a:)").unwrap()],
            &base,
            4,
        )
        .unwrap();
        assert!(report.holds());
        assert_eq!(report.graft_checks, 4);
    }

    #[test]
    fn single_label_commutative_matches_unlabeled() {
        let one = LabelSet::new(["a"]).unwrap();
        let ops = OperatorFamily::new(Polynomial::one(), vec![("a".to_string(), delta_inv_op())]).unwrap();
        let strict = Invariant::new(strict_order_spec());
        for t in enumerate_planar(5, &one).unwrap() {
            assert_eq!(evaluate_planar(&t, &ops).unwrap(), strict.evaluate(&t.underlying()));
        }
    }

    #[test]
    fn family_validation() {
        let a = delta_inv_op();
        let dup = OperatorFamily::new(
            Polynomial::one(),
            vec![("a".to_string(), a.clone()), ("a".to_string(), a)],
        );
        assert!(dup.is_err());
        assert!(OperatorFamily::<Polynomial>::new(Polynomial::one(), vec![]).is_err());
        assert!(LabelSet::parse("a,,b").is_err());
        assert!(LabelSet::parse("a,a").is_err());
    }
}
