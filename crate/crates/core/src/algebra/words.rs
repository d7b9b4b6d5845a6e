use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{render_rational, AlgebraElement, Rational};

/// A word over generator indices. The empty word is the unit.
pub type Word = Vec<u32>;

fn accumulate<K: Ord>(terms: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
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

/// Element of the free associative algebra on generators `g_0, g_1, …`,
/// truncated at word length `max_len`. Products concatenate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeWord {
    terms: BTreeMap<Word, Rational>,
    max_len: usize,
}

impl FreeWord {
    pub fn zero(max_len: usize) -> Self {
        FreeWord {
            terms: BTreeMap::new(),
            max_len,
        }
    }

    pub fn one(max_len: usize) -> Self {
        Self::word(Vec::new(), max_len)
    }

    pub fn generator(g: u32, max_len: usize) -> Self {
        Self::word(vec![g], max_len)
    }

    pub fn word(w: Word, max_len: usize) -> Self {
        let mut out = Self::zero(max_len);
        out.add_term(w, Rational::one());
        out
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if w.len() <= self.max_len {
            accumulate(&mut self.terms, w, c);
        }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u32]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// `g · self`: every word gets `g` prepended.
    pub fn left_mul_generator(&self, g: u32) -> Self {
        let mut out = Self::zero(self.max_len);
        for (w, c) in &self.terms {
            let mut nw = Vec::with_capacity(w.len() + 1);
            nw.push(g);
            nw.extend_from_slice(w);
            out.add_term(nw, c.clone());
        }
        out
    }

    /// Renders words as space-separated generator names.
    pub fn to_json_named(&self, names: &[String]) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| {
                    let word: Vec<String> = w
                        .iter()
                        .map(|&g| names.get(g as usize).cloned().unwrap_or_else(|| format!("g{g}")))
                        .collect();
                    json!({ "word": word.join(" "), "coefficient": render_rational(c) })
                })
                .collect(),
        )
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{}·{:?}", c, w))
            .collect();
        write!(f, "FreeWord[≤{}]({})", self.max_len, parts.join(" + "))
    }
}

impl AlgebraElement for FreeWord {
    const COMMUTATIVE: bool = false;

    fn zero_like(&self) -> Self {
        Self::zero(self.max_len)
    }
    fn one_like(&self) -> Self {
        Self::one(self.max_len)
    }
    fn is_zero_value(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.max_len = self.max_len.min(rhs.max_len);
        let bound = out.max_len;
        out.terms.retain(|w, _| w.len() <= bound);
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
    fn times(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.max_len.min(rhs.max_len));
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                if a.len() + b.len() > out.max_len {
                    continue;
                }
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, ca * cb);
            }
        }
        out
    }
    fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.max_len);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a * c);
        }
        out
    }
    fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| json!({ "word": w, "coefficient": render_rational(c) }))
                .collect(),
        )
    }
}

/// Element of the tensor algebra `T(A)` over `A` = free words.
///
/// A basis tensor `v_1 ⊗ … ⊗ v_n` is a list of basis words of `A`; the
/// empty list is the unit. Products concatenate tensor factors. A product
/// longer than `max_len` does not silently vanish: it sets the `overflow`
/// flag, which then propagates through every later operation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorElement {
    terms: BTreeMap<Vec<Word>, Rational>,
    max_len: usize,
    overflow: bool,
}

impl TensorElement {
    pub fn zero(max_len: usize) -> Self {
        TensorElement {
            terms: BTreeMap::new(),
            max_len,
            overflow: false,
        }
    }

    pub fn one(max_len: usize) -> Self {
        Self::basis(Vec::new(), max_len)
    }

    /// `c · 1` for a ground-field scalar.
    pub fn scalar(c: Rational, max_len: usize) -> Self {
        Self::one(max_len).scale(&c)
    }

    pub fn basis(factors: Vec<Word>, max_len: usize) -> Self {
        let mut out = Self::zero(max_len);
        out.add_term(factors, Rational::one());
        out
    }

    /// An element of `A` as a length-one tensor.
    pub fn from_base(a: &FreeWord, max_len: usize) -> Self {
        let mut out = Self::zero(max_len);
        for (w, c) in a.terms() {
            out.add_term(vec![w.clone()], c.clone());
        }
        out
    }

    pub fn add_term(&mut self, factors: Vec<Word>, c: Rational) {
        if c.is_zero() {
            return;
        }
        if factors.len() > self.max_len {
            self.overflow = true;
            return;
        }
        accumulate(&mut self.terms, factors, c);
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn overflowed(&self) -> bool {
        self.overflow
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, factors: &[Word]) -> Rational {
        self.terms.get(factors).cloned().unwrap_or_else(Rational::zero)
    }

    /// Longest tensor length among the nonzero terms.
    pub fn tensor_degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub(crate) fn mark_overflow(&mut self) {
        self.overflow = true;
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| {
                let factors: Vec<String> = t.iter().map(|w| format!("{w:?}")).collect();
                format!("{}·{}", c, factors.join("⊗"))
            })
            .collect();
        write!(
            f,
            "TensorElement[≤{}{}]({})",
            self.max_len,
            if self.overflow { ", overflow" } else { "" },
            parts.join(" + ")
        )
    }
}

impl AlgebraElement for TensorElement {
    const COMMUTATIVE: bool = false;

    fn zero_like(&self) -> Self {
        Self::zero(self.max_len)
    }
    fn one_like(&self) -> Self {
        Self::one(self.max_len)
    }
    fn is_zero_value(&self) -> bool {
        self.terms.is_empty() && !self.overflow
    }
    fn plus(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.max_len.min(rhs.max_len));
        out.overflow = self.overflow || rhs.overflow;
        for (t, c) in self.terms.iter().chain(rhs.terms.iter()) {
            out.add_term(t.clone(), c.clone());
        }
        out
    }
    fn times(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.max_len.min(rhs.max_len));
        out.overflow = self.overflow || rhs.overflow;
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let mut t = a.clone();
                t.extend(b.iter().cloned());
                out.add_term(t, ca * cb);
            }
        }
        out
    }
    fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.max_len);
        out.overflow = self.overflow;
        for (t, a) in &self.terms {
            out.add_term(t.clone(), a * c);
        }
        out
    }
    fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(t, c)| json!({ "tensor": t, "coefficient": render_rational(c) }))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use proptest::prelude::*;

    #[test]
    fn words_do_not_commute() {
        let a = FreeWord::generator(0, 4);
        let b = FreeWord::generator(1, 4);
        assert_ne!(a.times(&b), b.times(&a));
        assert_eq!(a.times(&b).coeff(&[0, 1]), int(1));
        assert_eq!(FreeWord::one(4).times(&a), a);
    }

    #[test]
    fn word_truncation() {
        let a = FreeWord::generator(0, 1);
        assert!(a.times(&a).is_zero_value());
    }

    #[test]
    fn tensor_overflow_is_sticky() {
        let x = TensorElement::basis(vec![vec![0]], 1);
        let y = x.times(&x);
        assert!(y.overflowed());
        assert!(!y.is_zero_value());
        assert!(y.plus(&x).overflowed());
    }

    fn free_word(max_len: usize) -> impl Strategy<Value = FreeWord> {
        prop::collection::vec((prop::collection::vec(0u32..2, 0..3), -3i64..4), 0..4).prop_map(
            move |ts| {
                let mut out = FreeWord::zero(max_len);
                for (w, c) in ts {
                    out.add_term(w, int(c));
                }
                out
            },
        )
    }

    proptest! {
        #[test]
        fn free_word_ring_axioms(a in free_word(9), b in free_word(9), c in free_word(9)) {
            prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
            prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
            prop_assert_eq!(a.plus(&b).times(&c), a.times(&c).plus(&b.times(&c)));
            prop_assert_eq!(a.times(&a.one_like()), a);
        }
    }
}
