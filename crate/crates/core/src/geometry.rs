//! Chains as cells of iterated barycentric subdivisions of the simplex.
//!
//! The columns of a chain's composed matrix are the vertices of its cell;
//! the `(n!)^m` depth-`m` chains enumerate the cells of the `m`-th
//! barycentric subdivision.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Result, SdsError};
use crate::polynomial::Point;
use crate::substitution::{factorial, Chain, PwnTable, SubMatrix};

/// Default limit on the number of cells visited by an enumeration.
pub const DEFAULT_CELL_BUDGET: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub chain: Chain,
    pub vertices: Vec<Point>,
}

impl Cell {
    fn from_matrix(chain: Chain, m: &SubMatrix) -> Self {
        let vertices = (0..m.dim()).map(|j| Point::new(m.column(j))).collect();
        Cell { chain, vertices }
    }
}

pub fn cell_of_chain(chain: &Chain, n: usize) -> Result<Cell> {
    let m = PwnTable::new(n)?.compose(chain)?;
    Ok(Cell::from_matrix(chain.clone(), &m))
}

pub fn squared_distance(a: &Point, b: &Point) -> BigRational {
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| {
            let d = x - y;
            &d * &d
        })
        .sum()
}

/// Largest squared Euclidean distance between two vertices.
pub fn squared_diameter(cell: &Cell) -> BigRational {
    let mut best = BigRational::zero();
    for (i, a) in cell.vertices.iter().enumerate() {
        for b in &cell.vertices[i + 1..] {
            let d = squared_distance(a, b);
            if d > best {
                best = d;
            }
        }
    }
    best
}

fn check_budget(n: usize, depth: u32, budget: u128) -> Result<u128> {
    let count = factorial(n)
        .and_then(|f| f.checked_pow(depth))
        .unwrap_or(u128::MAX);
    if count > budget {
        return Err(SdsError::LimitExceeded {
            what: "number of subdivision cells",
            requested: count,
            limit: budget,
        });
    }
    Ok(count)
}

fn visit(
    table: &PwnTable,
    prefix: &mut Vec<usize>,
    matrix: &SubMatrix,
    remaining: u32,
    out: &mut dyn FnMut(&[usize], &SubMatrix),
) {
    if remaining == 0 {
        out(prefix, matrix);
        return;
    }
    for k in 1..=table.len() {
        let next = matrix.mul(table.matrix(k));
        prefix.push(k);
        visit(table, prefix, &next, remaining - 1, out);
        prefix.pop();
    }
}

/// All depth-`depth` cells in lexicographic chain order.
pub fn enumerate_cells(n: usize, depth: u32, budget: u128) -> Result<Vec<Cell>> {
    check_budget(n, depth, budget)?;
    let table = PwnTable::new(n)?;
    if depth == 0 {
        return Ok(vec![Cell::from_matrix(Chain::empty(), &SubMatrix::identity(n))]);
    }
    let per_root: Vec<Vec<Cell>> = (1..=table.len())
        .into_par_iter()
        .map(|k| {
            let mut cells = Vec::new();
            let mut prefix = vec![k];
            visit(&table, &mut prefix, table.matrix(k), depth - 1, &mut |c, m| {
                cells.push(Cell::from_matrix(Chain::new(c.to_vec()), m));
            });
            cells
        })
        .collect();
    Ok(per_root.into_iter().flatten().collect())
}

/// Maximum squared diameter over every cell of the depth-`depth` subdivision.
pub fn max_diameter_at_depth(n: usize, depth: u32, budget: u128) -> Result<BigRational> {
    check_budget(n, depth, budget)?;
    let table = PwnTable::new(n)?;
    let column_diameter = |m: &SubMatrix| {
        let cell = Cell::from_matrix(Chain::empty(), m);
        squared_diameter(&cell)
    };
    if depth == 0 {
        return Ok(column_diameter(&SubMatrix::identity(n)));
    }
    let best = (1..=table.len())
        .into_par_iter()
        .map(|k| {
            let mut best = BigRational::zero();
            let mut prefix = vec![k];
            visit(&table, &mut prefix, table.matrix(k), depth - 1, &mut |_, m| {
                let d = column_diameter(m);
                if d > best {
                    best = d;
                }
            });
            best
        })
        .reduce(BigRational::zero, |a, b| if a >= b { a } else { b });
    Ok(best)
}

/// Lexicographically smallest depth-`depth` chain whose cell contains `p`.
pub fn locate_point(p: &Point, depth: u32) -> Result<Chain> {
    if !p.in_simplex() {
        return Err(SdsError::NotInSimplex);
    }
    let table = PwnTable::new(p.dim())?;
    let mut steps = Vec::with_capacity(depth as usize);
    if descend(&table, p, depth, &mut steps)? {
        Ok(Chain::new(steps))
    } else {
        // Cells at every depth cover the simplex.
        unreachable!("point in simplex not covered by any cell")
    }
}

fn descend(table: &PwnTable, local: &Point, remaining: u32, steps: &mut Vec<usize>) -> Result<bool> {
    if remaining == 0 {
        return Ok(true);
    }
    for k in 1..=table.len() {
        let Some(t) = table.matrix(k).solve(local)? else {
            continue;
        };
        if t.coords().iter().any(|c| c.is_negative()) {
            continue;
        }
        steps.push(k);
        if descend(table, &t, remaining - 1, steps)? {
            return Ok(true);
        }
        steps.pop();
    }
    Ok(false)
}
