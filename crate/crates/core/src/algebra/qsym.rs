use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{binomial, int, render_rational, write_signed_term, AlgebraElement, FiniteVarPoly, Rational};
use crate::error::{Error, Result};

/// Ordered tuple of positive parts, indexing the monomial basis element
/// `M_α = Σ_{i_1 < … < i_r} x_{i_1}^{α_1} ⋯ x_{i_r}^{α_r}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Composition(Vec<u32>);

impl Composition {
    /// Panics on a zero part.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "composition parts must be positive");
        Composition(parts)
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    /// `(a, α_1, …, α_r)`.
    pub fn prepend(&self, a: u32) -> Composition {
        let mut parts = Vec::with_capacity(self.0.len() + 1);
        parts.push(a);
        parts.extend_from_slice(&self.0);
        Composition(parts)
    }

    /// `(a + α_1, α_2, …)`; `None` for the empty composition.
    pub fn add_to_first(&self, a: u32) -> Option<Composition> {
        let (&first, rest) = self.0.split_first()?;
        Some(Composition(std::iter::once(first + a).chain(rest.iter().copied()).collect()))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&[u32]> for Composition {
    fn from(parts: &[u32]) -> Self {
        Composition::new(parts.to_vec())
    }
}

/// Quasi-shuffle (overlapping shuffle) of two compositions, with
/// multiplicities: `M_α · M_β = Σ mult · M_γ`.
pub fn quasi_shuffle(a: &[u32], b: &[u32]) -> BTreeMap<Composition, u64> {
    let mut out = BTreeMap::new();
    let mut prefix = Vec::with_capacity(a.len() + b.len());
    qsh(a, b, &mut prefix, &mut out);
    out
}

fn qsh(a: &[u32], b: &[u32], prefix: &mut Vec<u32>, out: &mut BTreeMap<Composition, u64>) {
    if a.is_empty() || b.is_empty() {
        let mut word = prefix.clone();
        word.extend_from_slice(a);
        word.extend_from_slice(b);
        *out.entry(Composition(word)).or_insert(0) += 1;
        return;
    }
    prefix.push(a[0]);
    qsh(&a[1..], b, prefix, out);
    prefix.pop();

    prefix.push(b[0]);
    qsh(a, &b[1..], prefix, out);
    prefix.pop();

    prefix.push(a[0] + b[0]);
    qsh(&a[1..], &b[1..], prefix, out);
    prefix.pop();
}

/// Quasi-symmetric element in the monomial basis, truncated at total degree
/// `max_degree`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSymElement {
    terms: BTreeMap<Composition, Rational>,
    max_degree: usize,
}

impl QSymElement {
    pub fn zero(max_degree: usize) -> Self {
        QSymElement {
            terms: BTreeMap::new(),
            max_degree,
        }
    }

    pub fn one(max_degree: usize) -> Self {
        Self::monomial(Composition::empty(), Rational::one(), max_degree)
    }

    /// `c · M_α`, dropped if `|α|` exceeds the bound.
    pub fn monomial(alpha: Composition, c: Rational, max_degree: usize) -> Self {
        let mut out = Self::zero(max_degree);
        out.add_term(alpha, c);
        out
    }

    /// `M_α` with unit coefficient.
    pub fn m(parts: &[u32], max_degree: usize) -> Self {
        Self::monomial(Composition::from(parts), Rational::one(), max_degree)
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = (Composition, Rational)>,
        max_degree: usize,
    ) -> Self {
        let mut out = Self::zero(max_degree);
        for (alpha, c) in terms {
            out.add_term(alpha, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, alpha: Composition, c: Rational) {
        if c.is_zero() || alpha.weight() > self.max_degree {
            return;
        }
        let entry = self.terms.entry(alpha);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, parts: &[u32]) -> Rational {
        self.terms
            .get(&Composition(parts.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest weight among the nonzero terms.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Composition::weight).max()
    }

    /// Applies a linear map given on basis elements.
    pub fn map_basis(&self, max_degree: usize, f: impl Fn(&Composition) -> Vec<Composition>) -> Self {
        let mut out = Self::zero(max_degree);
        for (alpha, c) in &self.terms {
            for image in f(alpha) {
                out.add_term(image, c.clone());
            }
        }
        out
    }

    pub fn add(&self, rhs: &QSymElement) -> QSymElement {
        let mut out = self.clone();
        out.max_degree = self.max_degree.min(rhs.max_degree);
        out.terms.retain(|alpha, _| alpha.weight() <= out.max_degree);
        for (alpha, c) in &rhs.terms {
            out.add_term(alpha.clone(), c.clone());
        }
        out
    }

    /// Bilinear extension of the quasi-shuffle product.
    pub fn mul(&self, rhs: &QSymElement) -> QSymElement {
        let bound = self.max_degree.min(rhs.max_degree);
        let mut out = Self::zero(bound);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                if a.weight() + b.weight() > bound {
                    continue;
                }
                let c = ca * cb;
                for (gamma, mult) in quasi_shuffle(&a.0, &b.0) {
                    out.add_term(gamma, &c * int(mult as i64));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> QSymElement {
        let mut out = Self::zero(self.max_degree);
        for (alpha, a) in &self.terms {
            out.add_term(alpha.clone(), a * c);
        }
        out
    }

    /// Value at `x_1 = … = x_m = 1`, `x_i = 0` beyond: `M_α ↦ C(m, ℓ(α))`.
    pub fn principal_specialization(&self, m: u64) -> Rational {
        self.terms
            .iter()
            .map(|(alpha, c)| c * binomial(m, alpha.len() as u64))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Expansion over the variables `x_1..x_m`, truncated at degree `d`.
    pub fn to_finite(&self, m: usize, d: usize) -> Result<FiniteVarPoly> {
        if let Some(deg) = self.degree() {
            if deg > d {
                return Err(Error::domain(format!(
                    "finite-variable degree bound {d} is below the element degree {deg}"
                )));
            }
        }
        let mut out = FiniteVarPoly::zero(m, d);
        for (alpha, c) in &self.terms {
            let r = alpha.len();
            if r > m {
                continue;
            }
            for_each_increasing(m, r, &mut |idx| {
                let mut exps = vec![0u32; m];
                for (slot, &i) in idx.iter().enumerate() {
                    exps[i] = alpha.0[slot];
                }
                out.add_term(exps, c.clone());
            });
        }
        Ok(out)
    }
}

/// Calls `f` on every strictly increasing `r`-tuple drawn from `0..m`.
fn for_each_increasing(m: usize, r: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, m: usize, r: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == r {
            f(cur);
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, r, cur, f);
            cur.pop();
        }
    }
    go(0, m, r, &mut Vec::with_capacity(r), f);
}

/// Embeds `a` over `x_1..x_m` with degree bound `d`.
pub fn qsym_to_finite(a: &QSymElement, m: usize, d: usize) -> Result<FiniteVarPoly> {
    a.to_finite(m, d)
}

impl fmt::Debug for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSymElement[≤{}]({self})", self.max_degree)
    }
}

impl fmt::Display for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (alpha, c)) in self.terms.iter().enumerate() {
            let mono = if alpha.is_empty() {
                String::new()
            } else {
                let parts: Vec<String> = alpha.0.iter().map(u32::to_string).collect();
                format!("M({})", parts.join(","))
            };
            write_signed_term(f, i == 0, c, &mono)?;
        }
        Ok(())
    }
}

impl AlgebraElement for QSymElement {
    const COMMUTATIVE: bool = true;

    fn zero_like(&self) -> Self {
        QSymElement::zero(self.max_degree)
    }
    fn one_like(&self) -> Self {
        QSymElement::one(self.max_degree)
    }
    fn is_zero_value(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn scale(&self, c: &Rational) -> Self {
        QSymElement::scale(self, c)
    }
    fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(alpha, c)| json!({ "composition": alpha.0, "coefficient": render_rational(c) }))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: usize = 8;

    fn m(parts: &[u32]) -> QSymElement {
        QSymElement::m(parts, D)
    }

    #[test]
    fn product_examples() {
        let expect = m(&[1, 1]).scale(&int(2)).add(&m(&[2]));
        assert_eq!(m(&[1]).mul(&m(&[1])), expect);
        assert_eq!(QSymElement::one(D).mul(&m(&[2, 1])), m(&[2, 1]));
        assert_eq!(m(&[1]).mul(&m(&[2])), m(&[1, 2]).add(&m(&[2, 1])).add(&m(&[3])));
    }

    #[test]
    fn product_truncates() {
        let a = QSymElement::m(&[2], 3);
        assert!(a.mul(&a).is_empty());
        // mixed bounds take the smaller
        let b = QSymElement::m(&[1], 5);
        assert_eq!(a.mul(&b).max_degree(), 3);
    }

    #[test]
    fn specialization_examples() {
        assert_eq!(m(&[1]).principal_specialization(3), int(3));
        assert_eq!(m(&[1, 1]).principal_specialization(3), int(3));
        assert_eq!(m(&[2]).principal_specialization(1), int(1));
        assert_eq!(m(&[1, 1, 1]).principal_specialization(2), int(0));
    }

    #[test]
    fn finite_embedding_examples() {
        let x1 = FiniteVarPoly::var(2, 2, 1);
        let x2 = FiniteVarPoly::var(2, 2, 2);
        assert_eq!(m(&[1]).to_finite(2, 2).unwrap(), x1.add(&x2));
        assert_eq!(m(&[1, 1]).to_finite(2, 2).unwrap(), x1.mul(&x2));
        assert_eq!(m(&[2]).to_finite(2, 2).unwrap(), x1.mul(&x1).add(&x2.mul(&x2)));
        assert!(m(&[3]).to_finite(2, 2).is_err());
    }

    #[test]
    fn quasi_shuffle_counts() {
        // number of terms with multiplicity of M_(1)^3 is 13 (ordered set partitions of 3)
        let total: u64 = {
            let p = m(&[1]).mul(&m(&[1])).mul(&m(&[1]));
            p.terms().map(|(_, c)| c.to_integer().try_into().unwrap_or(0u64)).sum()
        };
        assert_eq!(total, 13);
    }
}
