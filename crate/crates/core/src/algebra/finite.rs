use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{render_rational, write_signed_term, AlgebraElement, Rational};

/// Polynomial in `x_1..x_m` with every monomial of degree at most `d`.
///
/// Monomials are exponent vectors of length `m`. Products drop anything of
/// degree above `d`, and the shift `x_i ↦ x_{i+1}` sends `x_m` to zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteVarPoly {
    terms: BTreeMap<Vec<u32>, Rational>,
    m: usize,
    d: usize,
}

impl FiniteVarPoly {
    pub fn zero(m: usize, d: usize) -> Self {
        FiniteVarPoly {
            terms: BTreeMap::new(),
            m,
            d,
        }
    }

    pub fn one(m: usize, d: usize) -> Self {
        let mut out = Self::zero(m, d);
        out.add_term(vec![0; m], Rational::one());
        out
    }

    /// The variable `x_i`, `1 ≤ i`. Zero when `i > m` or `d = 0`.
    pub fn var(m: usize, d: usize, i: usize) -> Self {
        let mut out = Self::zero(m, d);
        if (1..=m).contains(&i) {
            let mut e = vec![0; m];
            e[i - 1] = 1;
            out.add_term(e, Rational::one());
        }
        out
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn degree_bound(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        assert_eq!(exps.len(), self.m, "exponent vector has wrong length");
        let deg: u32 = exps.iter().sum();
        if c.is_zero() || deg as usize > self.d {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    /// Drops monomials outside `m` variables and degree `d`.
    pub fn restrict(&self, m: usize, d: usize) -> Self {
        let mut out = Self::zero(m, d);
        for (e, c) in &self.terms {
            if e[m.min(e.len())..].iter().any(|&x| x > 0) {
                continue;
            }
            let mut exps = e[..m.min(e.len())].to_vec();
            exps.resize(m, 0);
            out.add_term(exps, c.clone());
        }
        out
    }

    fn aligned(&self, rhs: &Self) -> (Self, Self) {
        let m = self.m.min(rhs.m);
        let d = self.d.min(rhs.d);
        (self.restrict(m, d), rhs.restrict(m, d))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (mut a, b) = self.aligned(rhs);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = self.aligned(rhs);
        let mut out = Self::zero(a.m, a.d);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.m, self.d);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    /// Multiplication by `x_i`.
    pub fn mul_var(&self, i: usize) -> Self {
        self.mul(&Self::var(self.m, self.d, i))
    }

    /// The algebra map `S: x_i ↦ x_{i+1}`, with `x_m ↦ 0`.
    pub fn shift(&self) -> Self {
        let mut out = Self::zero(self.m, self.d);
        for (e, c) in &self.terms {
            if self.m > 0 && e[self.m - 1] > 0 {
                continue;
            }
            let mut shifted = vec![0; self.m];
            shifted[1..].copy_from_slice(&e[..self.m.saturating_sub(1)]);
            out.add_term(shifted, c.clone());
        }
        out
    }

    /// `S^k`.
    pub fn shift_pow(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.shift())
    }

    /// Largest index `i` with `x_i` present in some monomial, or 0.
    pub fn max_index(&self) -> usize {
        self.terms
            .keys()
            .filter_map(|e| e.iter().rposition(|&x| x > 0))
            .map(|p| p + 1)
            .max()
            .unwrap_or(0)
    }

    /// Keeps only monomials whose variables all have index `≤ bound`.
    pub fn support_within(&self, bound: usize) -> Self {
        let mut out = Self::zero(self.m, self.d);
        for (e, c) in &self.terms {
            if e.iter().skip(bound).all(|&x| x == 0) {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Debug for FiniteVarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteVarPoly[m={},d={}]({self})", self.m, self.d)
    }
}

impl fmt::Display for FiniteVarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{x}", i + 1)
                    }
                })
                .collect();
            write_signed_term(f, n == 0, c, &mono.join("*"))?;
        }
        Ok(())
    }
}

impl AlgebraElement for FiniteVarPoly {
    const COMMUTATIVE: bool = true;

    fn zero_like(&self) -> Self {
        Self::zero(self.m, self.d)
    }
    fn one_like(&self) -> Self {
        Self::one(self.m, self.d)
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
        FiniteVarPoly::scale(self, c)
    }
    fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!({ "exponents": e, "coefficient": render_rational(c) }))
                .collect(),
        )
    }
}
