//! Weighted difference substitution matrices and their chains.
//!
//! `W_n` is upper triangular with entry `(i, j) = 1/j` for `i <= j`. For a
//! permutation `k = [k_1 .. k_n]` the permutation matrix has a one at
//! `(i, k_i)`, and the substitution matrix is `B_k = P_k * W_n`. The `n!`
//! matrices, taken in lexicographic permutation order, make up `PW_n`; a
//! [`Chain`] names a product `B_{c_1} * ... * B_{c_m}` by 1-based indices
//! into that order.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SdsError};
use crate::polynomial::{Form, Point};
use crate::rational::{common_denominator, format_rational};

/// Largest `n!` that [`enumerate_pwn`] will materialize (`8! = 40320`).
pub const DEFAULT_PERMUTATION_LIMIT: u128 = 40_320;

/// Dense square matrix of exact rationals, stored row-major.
///
/// Column `j` is the image of the `j`-th new basis vector, so a substitution
/// `X = M * T` maps the simplex vertex `e_j` to column `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl SubMatrix {
    pub fn zeros(n: usize) -> Self {
        SubMatrix {
            n,
            entries: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn diagonal(values: &[BigRational]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n);
        for (i, v) in values.iter().enumerate() {
            m.entries[i * n + i] = v.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(SdsError::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(SubMatrix { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.entries[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &SubMatrix) -> SubMatrix {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, p: &Point) -> Result<Point> {
        if p.dim() != self.n {
            return Err(SdsError::DimensionMismatch {
                expected: self.n,
                actual: p.dim(),
            });
        }
        let coords = (0..self.n)
            .map(|i| self.row(i).iter().zip(p.coords()).map(|(a, b)| a * b).sum())
            .collect();
        Ok(Point::new(coords))
    }

    pub fn scaled(&self, factor: &BigRational) -> SubMatrix {
        SubMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    /// Every column sums to exactly one.
    pub fn is_normalized(&self) -> bool {
        (0..self.n).all(|j| (0..self.n).map(|i| self.get(i, j)).sum::<BigRational>().is_one())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    #[allow(clippy::needless_range_loop)] // row operations index two rows at once
    pub fn determinant(&self) -> BigRational {
        let n = self.n;
        let mut a = self.rows();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &p;
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
        det
    }

    /// Solves `self * t = rhs` exactly; `None` when singular.
    #[allow(clippy::needless_range_loop)] // row operations index two rows at once
    pub fn solve(&self, rhs: &Point) -> Result<Option<Point>> {
        let n = self.n;
        if rhs.dim() != n {
            return Err(SdsError::DimensionMismatch {
                expected: n,
                actual: rhs.dim(),
            });
        }
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(rhs.coords()[i].clone());
                row
            })
            .collect();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(None);
            };
            a.swap(pivot, col);
            let p = a[col][col].clone();
            for c in col..=n {
                a[col][c] /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
        Ok(Some(Point::new(
            a.into_iter().map(|row| row[n].clone()).collect(),
        )))
    }

    /// Row-major rational strings, the JSON serialization.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect()
    }
}

impl fmt::Display for SubMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.to_strings().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A branch of the successive substitution tree: 1-based indices into the
/// lexicographic enumeration of `PW_n`. The empty chain is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Chain(Vec<usize>);

impl Chain {
    pub fn new(steps: Vec<usize>) -> Self {
        Chain(steps)
    }

    pub fn empty() -> Self {
        Chain(Vec::new())
    }

    pub fn steps(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn extended(&self, index: usize) -> Chain {
        let mut steps = Vec::with_capacity(self.0.len() + 1);
        steps.extend_from_slice(&self.0);
        steps.push(index);
        Chain(steps)
    }

    pub fn concat(&self, other: &Chain) -> Chain {
        Chain(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn starts_with(&self, prefix: &Chain) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let max = factorial(n).unwrap_or(u128::MAX);
        for &index in &self.0 {
            if index == 0 || index as u128 > max {
                return Err(SdsError::ChainIndexOutOfRange {
                    index,
                    max: max.min(usize::MAX as u128) as usize,
                });
            }
        }
        Ok(())
    }
}

impl From<Vec<usize>> for Chain {
    fn from(steps: Vec<usize>) -> Self {
        Chain(steps)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

/// All permutations of `1..=n` in lexicographic order.
pub fn lex_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (1..=n).collect();
    let mut out = vec![current.clone()];
    loop {
        // next_permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n)
            .rev()
            .find(|&j| current[j] > current[i - 1])
            .expect("successor exists");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

fn check_permutation(perm: &[usize]) -> Result<()> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &k in perm {
        if k == 0 || k > n || seen[k - 1] {
            return Err(SdsError::InvalidPermutation(perm.to_vec()));
        }
        seen[k - 1] = true;
    }
    if n == 0 {
        return Err(SdsError::InvalidPermutation(Vec::new()));
    }
    Ok(())
}

/// `W_n`: entry `(i, j) = 1/j` for `i <= j` (1-based), zero below the diagonal.
pub fn weighted_matrix(n: usize) -> Result<SubMatrix> {
    if n == 0 {
        return Err(SdsError::NoVariables);
    }
    let mut m = SubMatrix::zeros(n);
    for j in 0..n {
        let w = BigRational::new(BigInt::one(), BigInt::from(j + 1));
        for i in 0..=j {
            m.set(i, j, w.clone());
        }
    }
    Ok(m)
}

/// The classical (unweighted) difference substitution matrix: ones on and
/// above the diagonal. Kept as a documented variant; it is not normalized
/// and the decision engine never uses it.
pub fn unweighted_matrix(n: usize) -> Result<SubMatrix> {
    if n == 0 {
        return Err(SdsError::NoVariables);
    }
    let mut m = SubMatrix::zeros(n);
    for j in 0..n {
        for i in 0..=j {
            m.set(i, j, BigRational::one());
        }
    }
    Ok(m)
}

/// 0/1 matrix with a one at `(i, perm[i])` (1-based permutation entries).
pub fn permutation_matrix(perm: &[usize]) -> Result<SubMatrix> {
    check_permutation(perm)?;
    let n = perm.len();
    let mut m = SubMatrix::zeros(n);
    for (i, &k) in perm.iter().enumerate() {
        m.set(i, k - 1, BigRational::one());
    }
    Ok(m)
}

/// `B = P * W_n`.
pub fn sds_matrix(perm: &[usize]) -> Result<SubMatrix> {
    let p = permutation_matrix(perm)?;
    Ok(p.mul(&weighted_matrix(perm.len())?))
}

pub fn enumerate_pwn(n: usize) -> Result<Vec<SubMatrix>> {
    enumerate_pwn_with_limit(n, DEFAULT_PERMUTATION_LIMIT)
}

pub fn enumerate_pwn_with_limit(n: usize, limit: u128) -> Result<Vec<SubMatrix>> {
    Ok(PwnTable::with_limit(n, limit)?.matrices)
}

/// Precomputed permutations and matrices of `PW_n`, shared read-only.
#[derive(Debug, Clone)]
pub struct PwnTable {
    n: usize,
    perms: Vec<Vec<usize>>,
    matrices: Vec<SubMatrix>,
}

impl PwnTable {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_limit(n, DEFAULT_PERMUTATION_LIMIT)
    }

    pub fn with_limit(n: usize, limit: u128) -> Result<Self> {
        if n == 0 {
            return Err(SdsError::NoVariables);
        }
        let count = factorial(n).unwrap_or(u128::MAX);
        if count > limit {
            return Err(SdsError::LimitExceeded {
                what: "n! substitution matrices",
                requested: count,
                limit,
            });
        }
        let perms = lex_permutations(n);
        let matrices = perms.iter().map(|p| sds_matrix(p)).collect::<Result<Vec<_>>>()?;
        Ok(PwnTable { n, perms, matrices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// Permutation for 1-based `index`.
    pub fn permutation(&self, index: usize) -> &[usize] {
        &self.perms[index - 1]
    }

    /// Matrix for 1-based `index`.
    pub fn matrix(&self, index: usize) -> &SubMatrix {
        &self.matrices[index - 1]
    }

    pub fn matrices(&self) -> &[SubMatrix] {
        &self.matrices
    }

    pub fn compose(&self, chain: &Chain) -> Result<SubMatrix> {
        chain.validate(self.n)?;
        Ok(chain
            .steps()
            .iter()
            .fold(SubMatrix::identity(self.n), |acc, &k| acc.mul(self.matrix(k))))
    }
}

/// `B_{c_1} * ... * B_{c_m}`; the empty chain gives the identity.
pub fn compose_chain(chain: &Chain, n: usize) -> Result<SubMatrix> {
    chain.validate(n)?;
    if chain.is_empty() {
        return Ok(SubMatrix::identity(n));
    }
    PwnTable::new(n)?.compose(chain)
}

pub fn is_normalized(m: &SubMatrix) -> bool {
    m.is_normalized()
}

/// Image of the barycenter under the chain's composed matrix.
pub fn barycenter_image(chain: &Chain, n: usize) -> Result<Point> {
    compose_chain(chain, n)?.apply(&Point::barycenter(n))
}

/// Applies the single substitution `B_perm` to a form: `g(T) = f(P * W_n * T)`.
///
/// Rather than expanding linear powers, this factors `W_n = U * D` with `U`
/// the all-ones upper triangle and `D = diag(1, 1/2, ..., 1/n)`, relabels
/// variables for `P`, writes `U` as the product of elementary shifts
/// `x_i -> x_i + x_{i+1}` (i = 1..n-1, applied in that order) and finally
/// rescales. The work is done on integer numerators over one common
/// denominator. `binomials` must cover the form's degree.
pub fn apply_sds(f: &Form, perm: &[usize], binomials: &[Vec<BigInt>]) -> Form {
    let n = f.nvars();
    let d = f.degree();
    assert_eq!(perm.len(), n, "permutation length must match variable count");
    if f.is_zero() {
        return f.clone();
    }
    let denom = common_denominator(f.terms().map(|(_, c)| c));
    let mut terms: HashMap<Vec<u32>, BigInt> = f
        .terms()
        .map(|(mono, c)| {
            let mut e = vec![0; n];
            for (i, &exp) in mono.exponents().iter().enumerate() {
                e[perm[i] - 1] = exp;
            }
            (e, (c * BigRational::from_integer(denom.clone())).to_integer())
        })
        .collect();
    for i in 0..n.saturating_sub(1) {
        terms = shift_integer(terms, i, i + 1, binomials);
    }
    // t_j -> t_j / j  ==  ((M / j) * t_j) / M  with M = lcm(1..n).
    let lcm = (1..=n).fold(BigInt::one(), |acc, j| acc.lcm(&BigInt::from(j)));
    let weights: Vec<Vec<BigInt>> = (1..=n)
        .map(|j| {
            let w = &lcm / BigInt::from(j);
            let mut row = vec![BigInt::one()];
            for k in 1..=d as usize {
                let next = &row[k - 1] * &w;
                row.push(next);
            }
            row
        })
        .collect();
    let total_denom = denom * lcm.pow(d);
    let out = terms.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, mut c)| {
        for (j, &exp) in e.iter().enumerate() {
            if exp > 0 {
                c *= &weights[j][exp as usize];
            }
        }
        (e, BigRational::new(c, total_denom.clone()))
    });
    Form::from_terms(n, d, out).expect("substitution preserves homogeneity")
}

fn shift_integer(
    terms: HashMap<Vec<u32>, BigInt>,
    target: usize,
    source: usize,
    binomials: &[Vec<BigInt>],
) -> HashMap<Vec<u32>, BigInt> {
    let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::with_capacity(terms.len() * 2);
    for (e, c) in terms {
        let a = e[target];
        if a == 0 {
            *acc.entry(e).or_insert_with(BigInt::zero) += c;
            continue;
        }
        let row = &binomials[a as usize];
        for k in 0..=a {
            let mut shifted = e.clone();
            shifted[target] = k;
            shifted[source] += a - k;
            let coeff = &c * &row[k as usize];
            *acc.entry(shifted).or_insert_with(BigInt::zero) += coeff;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse_form;
    use crate::rational::{binomial_table, int, rat};

    fn m(rows: &[&[(i64, i64)]]) -> SubMatrix {
        SubMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(a, b)| rat(a, b)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn weighted_matrix_n3() {
        let w = weighted_matrix(3).unwrap();
        let expected = m(&[
            &[(1, 1), (1, 2), (1, 3)],
            &[(0, 1), (1, 2), (1, 3)],
            &[(0, 1), (0, 1), (1, 3)],
        ]);
        assert_eq!(w, expected);
        assert_eq!(weighted_matrix(1).unwrap(), SubMatrix::identity(1));
        assert!(weighted_matrix(0).is_err());
        for n in 1..=8 {
            assert!(weighted_matrix(n).unwrap().is_normalized());
        }
    }

    #[test]
    fn permutation_matrices() {
        assert_eq!(permutation_matrix(&[1, 2, 3]).unwrap(), SubMatrix::identity(3));
        assert_eq!(
            permutation_matrix(&[2, 1]).unwrap(),
            m(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]])
        );
        let p = [3, 1, 2];
        let mut inv = [0; 3];
        for (i, &k) in p.iter().enumerate() {
            inv[k - 1] = i + 1;
        }
        let prod = permutation_matrix(&p)
            .unwrap()
            .mul(&permutation_matrix(&inv).unwrap());
        assert_eq!(prod, SubMatrix::identity(3));
        assert!(permutation_matrix(&[1, 1]).is_err());
        assert!(permutation_matrix(&[0, 1]).is_err());
        assert!(permutation_matrix(&[1, 3]).is_err());
        assert!(permutation_matrix(&[]).is_err());
    }

    #[test]
    fn lexicographic_order() {
        assert_eq!(
            lex_permutations(3),
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![3, 1, 2],
                vec![3, 2, 1]
            ]
        );
        assert_eq!(lex_permutations(1), vec![vec![1]]);
        assert_eq!(lex_permutations(5).len(), 120);
    }

    #[test]
    fn pw3_matches_displayed_matrices() {
        // The six matrices shown for the first barycentric subdivision of T_3,
        // compared as a set.
        let displayed = [
            m(&[
                &[(1, 1), (1, 2), (1, 3)],
                &[(0, 1), (1, 2), (1, 3)],
                &[(0, 1), (0, 1), (1, 3)],
            ]),
            m(&[
                &[(0, 1), (1, 2), (1, 3)],
                &[(1, 1), (1, 2), (1, 3)],
                &[(0, 1), (0, 1), (1, 3)],
            ]),
            m(&[
                &[(0, 1), (0, 1), (1, 3)],
                &[(1, 1), (1, 2), (1, 3)],
                &[(0, 1), (1, 2), (1, 3)],
            ]),
            m(&[
                &[(0, 1), (0, 1), (1, 3)],
                &[(0, 1), (1, 2), (1, 3)],
                &[(1, 1), (1, 2), (1, 3)],
            ]),
            m(&[
                &[(0, 1), (1, 2), (1, 3)],
                &[(0, 1), (0, 1), (1, 3)],
                &[(1, 1), (1, 2), (1, 3)],
            ]),
            m(&[
                &[(1, 1), (1, 2), (1, 3)],
                &[(0, 1), (0, 1), (1, 3)],
                &[(0, 1), (1, 2), (1, 3)],
            ]),
        ];
        let ours = enumerate_pwn(3).unwrap();
        assert_eq!(ours.len(), 6);
        for d in &displayed {
            assert!(ours.contains(d), "missing {d}");
        }
        for o in &ours {
            assert!(o.is_normalized());
            assert!(o.is_nonnegative());
        }
    }

    #[test]
    fn identity_permutation_gives_w() {
        for n in 1..=5 {
            let id: Vec<usize> = (1..=n).collect();
            assert_eq!(sds_matrix(&id).unwrap(), weighted_matrix(n).unwrap());
        }
    }

    #[test]
    fn determinants() {
        // det P = sign, det W_n = 1/n!
        for n in 1..=4 {
            let expected = rat(1, factorial(n).unwrap() as i64);
            for b in enumerate_pwn(n).unwrap() {
                assert_eq!(b.determinant().abs(), expected);
            }
        }
        assert_eq!(sds_matrix(&[2, 1]).unwrap().determinant(), rat(-1, 2));
    }

    #[test]
    fn pwn_members_distinct() {
        for n in 1..=5 {
            let all = enumerate_pwn(n).unwrap();
            assert_eq!(all.len() as u128, factorial(n).unwrap());
            for i in 0..all.len() {
                for j in i + 1..all.len() {
                    assert_ne!(all[i], all[j]);
                }
            }
        }
    }

    #[test]
    fn enumeration_limit() {
        assert!(matches!(
            enumerate_pwn_with_limit(5, 100),
            Err(SdsError::LimitExceeded { .. })
        ));
        assert!(enumerate_pwn(9).is_err());
    }

    #[test]
    fn chains() {
        assert_eq!(compose_chain(&Chain::empty(), 3).unwrap(), SubMatrix::identity(3));
        let all = enumerate_pwn(3).unwrap();
        for k in 1..=6 {
            assert_eq!(compose_chain(&Chain::new(vec![k]), 3).unwrap(), all[k - 1]);
        }
        assert!(matches!(
            compose_chain(&Chain::new(vec![7]), 3),
            Err(SdsError::ChainIndexOutOfRange { index: 7, max: 6 })
        ));
        assert!(compose_chain(&Chain::new(vec![0]), 3).is_err());
    }

    #[test]
    fn all_length3_chains_normalized() {
        let table = PwnTable::new(3).unwrap();
        for a in 1..=6 {
            for b in 1..=6 {
                for c in 1..=6 {
                    let u = table.compose(&Chain::new(vec![a, b, c])).unwrap();
                    assert!(u.is_normalized());
                    assert!(u.is_nonnegative());
                }
            }
        }
    }

    #[test]
    fn normalization_checks() {
        assert!(weighted_matrix(4).unwrap().is_normalized());
        assert!(SubMatrix::identity(3).is_normalized());
        assert!(!SubMatrix::identity(3).scaled(&int(2)).is_normalized());
        assert!(!unweighted_matrix(3).unwrap().is_normalized());
    }

    #[test]
    fn barycenter_images() {
        assert_eq!(
            barycenter_image(&Chain::empty(), 3).unwrap(),
            Point::barycenter(3)
        );
        let p = barycenter_image(&Chain::new(vec![4, 2, 6]), 3).unwrap();
        assert!(p.in_simplex());
    }

    #[test]
    fn solve_round_trip() {
        let b = compose_chain(&Chain::new(vec![2, 5]), 3).unwrap();
        let t = Point::new(vec![rat(1, 7), rat(2, 7), rat(4, 7)]);
        let p = b.apply(&t).unwrap();
        assert_eq!(b.solve(&p).unwrap().unwrap(), t);
        assert_eq!(SubMatrix::zeros(2).solve(&Point::ones(2)).unwrap(), None);
    }

    #[test]
    fn fast_substitution_agrees_with_expansion() {
        let f = parse_form("x*(x-y)^5 - y*(-z-y)^5 - z*(x-z)^5", &["x", "y", "z"]).unwrap();
        let binom = binomial_table(6);
        for perm in lex_permutations(3) {
            let fast = apply_sds(&f, &perm, &binom);
            let slow = f.substitute_linear(&sds_matrix(&perm).unwrap()).unwrap();
            assert_eq!(fast, slow, "perm {perm:?}");
        }
        let g = parse_form("a*b*c*d - 2*a^4 + 3*a^2*c*d", &["a", "b", "c", "d"]).unwrap();
        let binom = binomial_table(4);
        for perm in lex_permutations(4) {
            assert_eq!(
                apply_sds(&g, &perm, &binom),
                g.substitute_linear(&sds_matrix(&perm).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn chain_serializes_as_array() {
        let c = Chain::new(vec![1, 4, 2]);
        assert_eq!(serde_json::to_string(&c).unwrap(), "[1,4,2]");
        let back: Chain = serde_json::from_str("[1,4,2]").unwrap();
        assert_eq!(back, c);
    }
}
