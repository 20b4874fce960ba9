//! Brute-force sampling of a form over the simplex, independent of the
//! substitution machinery.
//!
//! All arithmetic is exact. Forms are first scaled to integer coefficients,
//! then evaluated at integer compositions `a` of a denominator `N`; the true
//! value at `a / N` is the integer result divided by `L * N^d`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SdsError};
use crate::polynomial::{Form, Point};
use crate::rational::common_denominator;

/// Default cap on the number of grid points evaluated.
pub const DEFAULT_GRID_BUDGET: u128 = 5_000_000;

/// Largest denominator drawn by [`random_negative_search`].
pub const MAX_RANDOM_DENOMINATOR: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub denominator: u64,
    pub nvars: usize,
}

impl GridSpec {
    /// Number of grid points, `C(N+n-1, n-1)`.
    pub fn size(&self) -> u128 {
        let k = self.nvars.saturating_sub(1) as u128;
        let mut acc: u128 = 1;
        for i in 1..=k {
            acc = acc.saturating_mul(self.denominator as u128 + i) / i;
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridMin {
    pub min: BigRational,
    pub argmin: Point,
}

/// Integer-coefficient multiple `scale * f` with `scale > 0`.
struct IntegerForm {
    terms: Vec<(Vec<u32>, BigInt)>,
    scale: BigInt,
    degree: u32,
    nvars: usize,
}

impl IntegerForm {
    fn new(f: &Form) -> Self {
        let scale = common_denominator(f.terms().map(|(_, c)| c));
        let terms = f
            .terms()
            .map(|(m, c)| {
                let v = c * BigRational::from_integer(scale.clone());
                (m.exponents().to_vec(), v.to_integer())
            })
            .collect();
        IntegerForm {
            terms,
            scale,
            degree: f.degree(),
            nvars: f.nvars(),
        }
    }

    fn eval(&self, a: &[u64]) -> BigInt {
        let d = self.degree as usize;
        let powers: Vec<Vec<BigInt>> = a
            .iter()
            .map(|&x| {
                let x = BigInt::from(x);
                let mut row = vec![BigInt::one()];
                for k in 1..=d {
                    let next = &row[k - 1] * &x;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut total = BigInt::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term *= &powers[i][e as usize];
                }
            }
            total += term;
        }
        total
    }

    /// Exact value at `a / denom`.
    fn value(&self, raw: &BigInt, denom: u64) -> BigRational {
        let scale = &self.scale * BigInt::from(denom).pow(self.degree);
        BigRational::new(raw.clone(), scale)
    }
}

fn to_point(a: &[u64], denom: u64) -> Point {
    Point::new(
        a.iter()
            .map(|&x| BigRational::new(BigInt::from(x), BigInt::from(denom)))
            .collect(),
    )
}

/// Visits the compositions of `total` into `parts` non-negative parts in
/// descending lexicographic order, with `prefix` fixed in front.
fn for_each_composition(prefix: &mut Vec<u64>, total: u64, parts: usize, visit: &mut dyn FnMut(&[u64])) {
    if parts == 1 {
        prefix.push(total);
        visit(prefix);
        prefix.pop();
        return;
    }
    for first in (0..=total).rev() {
        prefix.push(first);
        for_each_composition(prefix, total - first, parts - 1, visit);
        prefix.pop();
    }
}

/// Exact minimum of `f` over `{a / N : a_i >= 0, sum a_i = N}`.
///
/// Ties resolve to the point visited first in descending lexicographic
/// order of `a`, so `(1, 0)` precedes `(0, 1)`.
pub fn grid_min(f: &Form, grid: &GridSpec, budget: u128) -> Result<GridMin> {
    if grid.nvars != f.nvars() {
        return Err(SdsError::DimensionMismatch {
            expected: f.nvars(),
            actual: grid.nvars,
        });
    }
    if grid.denominator == 0 {
        return Err(SdsError::InvalidConfig(
            "grid denominator must be positive".into(),
        ));
    }
    let size = grid.size();
    if size > budget {
        return Err(SdsError::LimitExceeded {
            what: "grid points",
            requested: size,
            limit: budget,
        });
    }
    let int_form = IntegerForm::new(f);
    let n = grid.denominator;
    let parts = f.nvars();
    // One partition per leading coordinate; each keeps its first minimum.
    let partial: Vec<(BigInt, Vec<u64>)> = (0..=n)
        .rev()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|first| {
            let mut best: Option<(BigInt, Vec<u64>)> = None;
            let mut prefix = vec![first];
            let mut visit = |a: &[u64]| {
                let v = int_form.eval(a);
                if best.as_ref().is_none_or(|(b, _)| v < *b) {
                    best = Some((v, a.to_vec()));
                }
            };
            if parts == 1 {
                if first == n {
                    visit(&prefix);
                }
            } else {
                for_each_composition(&mut prefix, n - first, parts - 1, &mut visit);
            }
            best
        })
        .flatten()
        .collect();
    let (raw, a) = partial
        .into_iter()
        .reduce(|acc, next| if next.0 < acc.0 { next } else { acc })
        .expect("grid is non-empty");
    Ok(GridMin {
        min: int_form.value(&raw, n),
        argmin: to_point(&a, n),
    })
}

/// Draws one random rational point of the simplex.
///
/// The denominator `D` is uniform in `1..=10^4`; `n - 1` cut points are drawn
/// uniformly from `0..=D` and sorted, and the gaps between `0`, the cuts and
/// `D` are the numerators.
pub fn sample_composition(rng: &mut ChaCha8Rng, nvars: usize) -> (Vec<u64>, u64) {
    let denom = rng.random_range(1..=MAX_RANDOM_DENOMINATOR);
    let mut cuts: Vec<u64> = (0..nvars.saturating_sub(1))
        .map(|_| rng.random_range(0..=denom))
        .collect();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(nvars);
    let mut prev = 0;
    for c in cuts {
        parts.push(c - prev);
        prev = c;
    }
    parts.push(denom - prev);
    (parts, denom)
}

/// Samples `trials` points from a `ChaCha8Rng` seeded with `seed` and returns
/// the first with `f < 0`, together with the exact value there.
pub fn random_negative_search(f: &Form, trials: u64, seed: u64) -> Option<(Point, BigRational)> {
    let int_form = IntegerForm::new(f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let (a, denom) = sample_composition(&mut rng, int_form.nvars);
        let raw = int_form.eval(&a);
        if raw.is_negative() {
            return Some((to_point(&a, denom), int_form.value(&raw, denom)));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse_form;
    use crate::rational::{int, rat};

    #[test]
    fn grid_sizes() {
        assert_eq!(
            GridSpec {
                denominator: 12,
                nvars: 3
            }
            .size(),
            91
        );
        assert_eq!(
            GridSpec {
                denominator: 4,
                nvars: 2
            }
            .size(),
            5
        );
    }

    #[test]
    fn boundary_zero() {
        let f = parse_form("x*y", &["x", "y"]).unwrap();
        let g = grid_min(
            &f,
            &GridSpec {
                denominator: 4,
                nvars: 2,
            },
            DEFAULT_GRID_BUDGET,
        )
        .unwrap();
        assert_eq!(g.min, int(0));
        assert_eq!(g.argmin, Point::new(vec![int(1), int(0)]));
    }

    #[test]
    fn constant_on_simplex() {
        let f = parse_form("(x+y)^2", &["x", "y"]).unwrap();
        for n in [1, 3, 7] {
            let g = grid_min(
                &f,
                &GridSpec {
                    denominator: n,
                    nvars: 2,
                },
                DEFAULT_GRID_BUDGET,
            )
            .unwrap();
            assert_eq!(g.min, int(1));
        }
    }

    #[test]
    fn example2_negative_on_coarse_grid() {
        let f = parse_form(
            "7*x^3 - 12*x^2*y - 12*x^2*z + 6*x*y^2 + 12*x*y*z + 6*x*z^2 - 9/10*y^3 - 3*y^2*z - 3*y*z^2 - 4/5*z^3",
            &["x", "y", "z"],
        )
        .unwrap();
        let g = grid_min(
            &f,
            &GridSpec {
                denominator: 3,
                nvars: 3,
            },
            DEFAULT_GRID_BUDGET,
        )
        .unwrap();
        assert!(g.min <= rat(-7, 270));
        assert_eq!(f.evaluate(&g.argmin).unwrap(), g.min);
    }

    #[test]
    fn grid_errors() {
        let f = parse_form("x*y", &["x", "y"]).unwrap();
        assert!(grid_min(
            &f,
            &GridSpec {
                denominator: 4,
                nvars: 3
            },
            100
        )
        .is_err());
        assert!(grid_min(
            &f,
            &GridSpec {
                denominator: 0,
                nvars: 2
            },
            100
        )
        .is_err());
        assert!(matches!(
            grid_min(
                &f,
                &GridSpec {
                    denominator: 1000,
                    nvars: 2
                },
                100
            ),
            Err(SdsError::LimitExceeded { .. })
        ));
    }

    #[test]
    fn random_search_positive_form() {
        let f = parse_form("x^2 + 3*x*y + z^2", &["x", "y", "z"]).unwrap();
        for seed in 0..5 {
            assert_eq!(random_negative_search(&f, 200, seed), None);
        }
    }

    #[test]
    fn random_search_is_reproducible() {
        let f = parse_form("x^2 - 3*x*y + y^2", &["x", "y"]).unwrap();
        let a = random_negative_search(&f, 1000, 7);
        let b = random_negative_search(&f, 1000, 7);
        assert_eq!(a, b);
        let (p, v) = a.expect("the form is negative near x = y");
        assert!(p.in_simplex());
        assert!(v.is_negative());
        assert_eq!(f.evaluate(&p).unwrap(), v);
    }

    #[test]
    fn samples_lie_in_simplex() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let (a, d) = sample_composition(&mut rng, 4);
            assert_eq!(a.iter().sum::<u64>(), d);
            assert!(to_point(&a, d).in_simplex());
        }
    }
}
