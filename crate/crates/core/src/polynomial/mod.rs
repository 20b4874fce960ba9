//! Sparse homogeneous polynomials (forms) with exact rational coefficients.
//!
//! A [`Form`] keeps its terms in a `BTreeMap` keyed by [`Monomial`], whose
//! ordering is descending graded-lex, so iteration and serialization are
//! deterministic. Zero coefficients are never stored.

mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SdsError};
use crate::substitution::SubMatrix;

pub use parse::{parse_form, validate_vars};

/// Exponent vector of a monomial.
///
/// Ordered by descending total degree, then descending lexicographic
/// exponents, so `x^2 < x*y < y^2` in iteration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Which test declares a form "trivially negative".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum NegativityMode {
    /// `F(1, ..., 1) < 0`.
    #[default]
    Value,
    /// Non-zero with every coefficient negative.
    Coeffs,
}

/// A point of `Q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point(Vec<BigRational>);

impl Point {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Point(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigRational> {
        self.0
    }

    /// `(1/n, ..., 1/n)`.
    pub fn barycenter(n: usize) -> Self {
        let c = BigRational::new(BigInt::one(), BigInt::from(n));
        Point(vec![c; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut coords = vec![BigRational::zero(); n];
        coords[i] = BigRational::one();
        Point(coords)
    }

    pub fn ones(n: usize) -> Self {
        Point(vec![BigRational::one(); n])
    }

    /// Non-negative coordinates summing to exactly one.
    pub fn in_simplex(&self) -> bool {
        !self.0.is_empty()
            && self.0.iter().all(|c| !c.is_negative())
            && self.0.iter().sum::<BigRational>().is_one()
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        Point(self.0.iter().map(|c| c * factor).collect())
    }
}

impl From<Vec<BigRational>> for Point {
    fn from(coords: Vec<BigRational>) -> Self {
        Point(coords)
    }
}

/// Homogeneous polynomial in `nvars` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Form {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Form {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        Form {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a form from `(exponents, coefficient)` pairs, summing repeated
    /// monomials and dropping zero coefficients.
    ///
    /// Every exponent vector must have length `nvars` and total degree `degree`.
    pub fn from_terms<I>(nvars: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        if nvars == 0 {
            return Err(SdsError::NoVariables);
        }
        let mut acc: HashMap<Vec<u32>, BigRational> = HashMap::new();
        for (exps, coeff) in terms {
            if exps.len() != nvars {
                return Err(SdsError::DimensionMismatch {
                    expected: nvars,
                    actual: exps.len(),
                });
            }
            let d: u32 = exps.iter().sum();
            if d != degree {
                return Err(SdsError::NotHomogeneous {
                    first: degree,
                    second: d,
                });
            }
            *acc.entry(exps).or_insert_with(BigRational::zero) += coeff;
        }
        Ok(Self::from_accumulator(nvars, degree, acc))
    }

    fn from_accumulator(nvars: usize, degree: u32, acc: HashMap<Vec<u32>, BigRational>) -> Self {
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (Monomial(e), c))
            .collect();
        Form { nvars, degree, terms }
    }

    /// `sum_j coeffs[j] * x_j`.
    pub fn linear(coeffs: &[BigRational]) -> Self {
        let n = coeffs.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let mut e = vec![0; n];
                e[j] = 1;
                (Monomial(e), c.clone())
            })
            .collect();
        Form {
            nvars: n,
            degree: 1,
            terms,
        }
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); nvars];
        coeffs[index] = BigRational::one();
        Self::linear(&coeffs)
    }

    pub fn constant(nvars: usize, value: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial(vec![0; nvars]), value);
        }
        Form {
            nvars,
            degree: 0,
            terms,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (non-zero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn evaluate(&self, p: &Point) -> Result<BigRational> {
        if p.dim() != self.nvars {
            return Err(SdsError::DimensionMismatch {
                expected: self.nvars,
                actual: p.dim(),
            });
        }
        let d = self.degree as usize;
        let powers: Vec<Vec<BigRational>> = p
            .coords()
            .iter()
            .map(|c| {
                let mut row = Vec::with_capacity(d + 1);
                row.push(BigRational::one());
                for k in 1..=d {
                    let next = &row[k - 1] * c;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut total = BigRational::zero();
        for (mono, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (i, &e) in mono.0.iter().enumerate() {
                if e > 0 {
                    term *= &powers[i][e as usize];
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Sum of all coefficients, i.e. the value at `(1, ..., 1)`.
    pub fn coefficient_sum(&self) -> BigRational {
        self.terms.values().sum()
    }

    /// Every coefficient is non-negative. The zero form qualifies.
    pub fn is_trivially_positive(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn is_trivially_negative(&self, mode: NegativityMode) -> bool {
        match mode {
            NegativityMode::Value => self.coefficient_sum().is_negative(),
            NegativityMode::Coeffs => !self.terms.is_empty() && self.terms.values().all(|c| c.is_negative()),
        }
    }

    /// All `C(d+n-1, n-1)` monomials of degree `d` are present with positive
    /// coefficients.
    pub fn is_nonlacunary_positive(&self) -> bool {
        let expected = monomial_count(self.nvars, self.degree);
        self.terms.values().all(|c| c.is_positive())
            && u128::try_from(self.terms.len()).is_ok_and(|len| len == expected)
    }

    /// `g(T) = f(m * T)`, fully expanded.
    ///
    /// Each variable is replaced by its linear image (row `i` of `m`); powers
    /// of the images are computed once per exponent actually used, and the
    /// terms are folded variable by variable so shared prefixes are expanded
    /// once.
    pub fn substitute_linear(&self, m: &SubMatrix) -> Result<Form> {
        let n = self.nvars;
        if m.dim() != n {
            return Err(SdsError::DimensionMismatch {
                expected: n,
                actual: m.dim(),
            });
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mut needed = vec![0u32; n];
        for mono in self.terms.keys() {
            for (i, &e) in mono.0.iter().enumerate() {
                needed[i] = needed[i].max(e);
            }
        }
        let powers: Vec<Vec<Form>> = (0..n)
            .map(|i| {
                let image = Form::linear(m.row(i));
                let mut row = vec![Form::constant(n, BigRational::one())];
                for k in 1..=needed[i] as usize {
                    let next = row[k - 1].mul(&image);
                    row.push(next);
                }
                row
            })
            .collect();
        let terms: Vec<(&[u32], &BigRational)> = self
            .terms
            .iter()
            .map(|(mono, c)| (mono.0.as_slice(), c))
            .collect();
        let mut result = fold_substitution(&terms, 0, &powers, n);
        result.degree = self.degree;
        Ok(result)
    }

    /// Renames variables: variable `i` of `self` becomes variable
    /// `target[i]` of the result (0-based).
    pub fn relabel_variables(&self, target: &[usize]) -> Form {
        assert_eq!(target.len(), self.nvars, "relabel map has wrong length");
        let terms = self
            .terms
            .iter()
            .map(|(mono, c)| {
                let mut e = vec![0; self.nvars];
                for (i, &exp) in mono.0.iter().enumerate() {
                    e[target[i]] = exp;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Form {
            nvars: self.nvars,
            degree: self.degree,
            terms,
        }
    }

    /// Substitutes `x_target -> x_target + x_source` and expands.
    pub fn shift_variable(&self, target: usize, source: usize, binomials: &[Vec<BigInt>]) -> Form {
        assert_ne!(target, source);
        let mut acc: HashMap<Vec<u32>, BigRational> = HashMap::with_capacity(self.terms.len() * 2);
        for (mono, coeff) in &self.terms {
            let a = mono.0[target];
            if a == 0 {
                *acc.entry(mono.0.clone()).or_insert_with(BigRational::zero) += coeff;
                continue;
            }
            let row = &binomials[a as usize];
            for k in 0..=a {
                let mut e = mono.0.clone();
                e[target] = k;
                e[source] += a - k;
                let c = coeff * &row[k as usize];
                *acc.entry(e).or_insert_with(BigRational::zero) += c;
            }
        }
        Self::from_accumulator(self.nvars, self.degree, acc)
    }

    /// Substitutes `x_i -> factors[i] * x_i`.
    pub fn scale_variables(&self, factors: &[BigRational]) -> Form {
        assert_eq!(factors.len(), self.nvars);
        let d = self.degree as usize;
        let powers: Vec<Vec<BigRational>> = factors
            .iter()
            .map(|f| {
                let mut row = vec![BigRational::one()];
                for k in 1..=d {
                    let next = &row[k - 1] * f;
                    row.push(next);
                }
                row
            })
            .collect();
        let terms = self
            .terms
            .iter()
            .filter_map(|(mono, c)| {
                let mut v = c.clone();
                for (i, &e) in mono.0.iter().enumerate() {
                    v *= &powers[i][e as usize];
                }
                (!v.is_zero()).then(|| (mono.clone(), v))
            })
            .collect();
        Form {
            nvars: self.nvars,
            degree: self.degree,
            terms,
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Form {
        if factor.is_zero() {
            return Form::zero(self.nvars, self.degree);
        }
        Form {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    pub fn neg(&self) -> Form {
        self.scale(&-BigRational::one())
    }

    /// Sum of two forms of equal degree (a zero operand adopts the other's degree).
    ///
    /// Panics on a variable-count or degree mismatch.
    pub fn add(&self, other: &Form) -> Form {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    *v += c;
                    if v.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Form {
            nvars: self.nvars,
            degree: self.degree,
            terms,
        }
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Form) -> Form {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let degree = self.degree + other.degree;
        let mut acc: HashMap<Vec<u32>, BigRational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        Self::from_accumulator(self.nvars, degree, acc)
    }

    pub fn pow(&self, exp: u32) -> Form {
        let mut result = Form::constant(self.nvars, BigRational::one());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        if self.is_zero() && exp > 0 {
            result.degree = self.degree * exp;
        }
        result
    }

    /// Renders the form with the given variable names, one
    /// `coef*x1^e1*...*xn^en` term at a time in graded-lex order.
    pub fn to_string_with(&self, vars: &[impl AsRef<str>]) -> String {
        assert_eq!(vars.len(), self.nvars, "variable name count mismatch");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (mono, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative();
            let magnitude = coeff.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            let constant = mono.degree() == 0;
            if !magnitude.is_one() || constant {
                factors.push(magnitude.to_string());
            }
            for (i, &e) in mono.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].as_ref().to_string()),
                    _ => factors.push(format!("{}^{}", vars[i].as_ref(), e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Default variable names `x1, ..., xn`.
pub fn default_var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_var_names(self.nvars)))
    }
}

/// Number of monomials of degree `d` in `n` variables, `C(d+n-1, n-1)`.
pub fn monomial_count(n: usize, d: u32) -> u128 {
    if n == 0 {
        return 0;
    }
    let k = (n - 1) as u128;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (d as u128 + i) / i;
    }
    acc
}

/// Exponent vectors of all degree-`d` monomials in `n` variables, in
/// descending lexicographic order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn fill(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            fill(prefix, left - e, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        fill(&mut Vec::with_capacity(n), d, n, &mut out);
    }
    out
}

fn fold_substitution(terms: &[(&[u32], &BigRational)], var: usize, powers: &[Vec<Form>], n: usize) -> Form {
    if var == n {
        let c: BigRational = terms.iter().map(|(_, c)| (*c).clone()).sum();
        return Form::constant(n, c);
    }
    // Terms are sorted by descending exponent of `var` within any fixed prefix.
    let mut result: Option<Form> = None;
    let mut start = 0;
    while start < terms.len() {
        let e = terms[start].0[var];
        let mut end = start + 1;
        while end < terms.len() && terms[end].0[var] == e {
            end += 1;
        }
        let inner = fold_substitution(&terms[start..end], var + 1, powers, n);
        let part = if e == 0 {
            inner
        } else {
            inner.mul(&powers[var][e as usize])
        };
        result = Some(match result {
            None => part,
            Some(acc) => acc.add(&part),
        });
        start = end;
    }
    result.unwrap_or_else(|| Form::zero(n, 0))
}
