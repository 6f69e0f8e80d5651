//! Exact linear algebra over the intersection lattice: Smith normal form,
//! the discriminant group, rational solves and the canonical cycle.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{int, lcm_of_denominators, Rational};
use crate::graph_model::{intersection_matrix, PlumbingGraph, VertexLabel};
use crate::matrix::IntMatrix;

/// Diagonal of the Smith normal form, as absolute values.
///
/// Returns `min(rows, cols)` entries `d_1 | d_2 | ...`; unit and zero entries
/// are kept. Pivots are always the smallest nonzero entry left.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let size = rows.min(cols);
    let mut diagonal = Vec::with_capacity(size);

    for k in 0..size {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&a, k) else {
                diagonal.resize(size, BigInt::zero());
                return diagonal;
            };
            a.swap_rows(k, pi);
            a.swap_cols(k, pj);

            let mut clean = true;
            for i in k + 1..rows {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let quotient = &a[(i, k)] / &a[(k, k)];
                for j in k..cols {
                    let delta = &quotient * &a[(k, j)];
                    a[(i, j)] -= delta;
                }
                clean &= a[(i, k)].is_zero();
            }
            for j in k + 1..cols {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let quotient = &a[(k, j)] / &a[(k, k)];
                for i in k..rows {
                    let delta = &quotient * &a[(i, k)];
                    a[(i, j)] -= delta;
                }
                clean &= a[(k, j)].is_zero();
            }
            if !clean {
                continue;
            }

            // Pivot must divide the whole remaining block.
            let offender = (k + 1..rows).find(|&i| {
                (k + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(k, k)]))
            });
            match offender {
                Some(i) => {
                    for j in k..cols {
                        let v = a[(i, j)].clone();
                        a[(k, j)] += v;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[(k, k)].abs());
    }
    diagonal
}

fn smallest_nonzero(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let v = a[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some(((i, j), v));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// The discriminant group `E*/E = coker M`, as invariant factors `> 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantGroup {
    invariant_factors: Vec<BigInt>,
    order: BigInt,
}

impl DiscriminantGroup {
    /// From an SNF diagonal; drops the unit factors. Zeros are rejected.
    pub fn from_diagonal(diagonal: &[BigInt]) -> Result<Self> {
        if diagonal.iter().any(Zero::is_zero) {
            return Err(Error::SingularMatrix);
        }
        let invariant_factors: Vec<BigInt> =
            diagonal.iter().filter(|d| !d.is_one()).cloned().collect();
        let order = invariant_factors.iter().product();
        Ok(DiscriminantGroup {
            invariant_factors,
            order,
        })
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

impl fmt::Display for DiscriminantGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("trivial");
        }
        for (i, d) in self.invariant_factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "Z/{d}")?;
        }
        Ok(())
    }
}

pub fn discriminant_group(pg: &PlumbingGraph) -> Result<DiscriminantGroup> {
    let m = intersection_matrix(pg).matrix;
    if !m.is_negative_definite() {
        return Err(Error::MatrixNotNegativeDefinite);
    }
    let group = DiscriminantGroup::from_diagonal(&smith_normal_form(&m))?;
    let det = m.determinant().abs();
    if group.order != det {
        return Err(Error::consistency(format!(
            "discriminant group order {} differs from |det| = {det}",
            group.order
        )));
    }
    Ok(group)
}

/// Solves `m x = b` exactly for nonsingular square `m`.
///
/// Clears denominators of `b`, runs fraction-free Gauss–Jordan elimination,
/// and checks the answer by substituting back.
pub fn solve_exact(m: &IntMatrix, b: &[Rational]) -> Result<Vec<Rational>> {
    if !m.is_square() || m.rows() != b.len() {
        return Err(Error::validation(format!(
            "solve_exact: {}x{} matrix with right-hand side of length {}",
            m.rows(),
            m.cols(),
            b.len()
        )));
    }
    let n = m.rows();
    let scale = lcm_of_denominators(b);
    let mut a = IntMatrix::zeros(n, n + 1);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = m[(i, j)].clone();
        }
        a[(i, n)] = (&b[i] * Rational::from_integer(scale.clone())).to_integer();
    }

    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot_row = (k..n)
            .find(|&i| !a[(i, k)].is_zero())
            .ok_or(Error::SingularMatrix)?;
        a.swap_rows(k, pivot_row);
        for i in (0..n).filter(|&i| i != k) {
            for j in (0..=n).filter(|&j| j != k) {
                let v = (&a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }

    let x: Vec<Rational> = (0..n)
        .map(|i| Rational::new(a[(i, n)].clone(), &a[(i, i)] * &scale))
        .collect();
    for i in 0..n {
        let lhs = (0..n).fold(Rational::zero(), |acc, j| {
            acc + Rational::from_integer(m[(i, j)].clone()) * &x[j]
        });
        if lhs != b[i] {
            return Err(Error::consistency(format!(
                "solve_exact: back-substitution failed in row {i}"
            )));
        }
    }
    Ok(x)
}

/// Rational coefficients `k_v` of the canonical class `K = sum k_v E_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalCycle {
    pub coefficients: BTreeMap<VertexLabel, Rational>,
}

impl CanonicalCycle {
    pub fn coefficient(&self, label: VertexLabel) -> Option<&Rational> {
        self.coefficients.get(&label)
    }

    pub fn central(&self) -> &Rational {
        &self.coefficients[&VertexLabel::Central]
    }

    /// Coefficients of `Z = -(K + E)`: `z_v = -k_v - 1`.
    pub fn z_coefficients(&self) -> BTreeMap<VertexLabel, Rational> {
        self.coefficients
            .iter()
            .map(|(&l, k)| (l, -k - int(1)))
            .collect()
    }

    /// Order of `K` in the discriminant group: lcm of coefficient denominators.
    pub fn order(&self) -> BigInt {
        lcm_of_denominators(self.coefficients.values())
    }

    /// `K . E_i - (2 g_i - 2 + d_i)` for every vertex; all zero when `K` is right.
    pub fn adjunction_residual(&self, pg: &PlumbingGraph) -> Result<Vec<Rational>> {
        let m = intersection_matrix(pg);
        let k: Vec<&Rational> = m
            .labels
            .iter()
            .map(|l| {
                self.coefficients
                    .get(l)
                    .ok_or_else(|| Error::validation(format!("no coefficient for curve {l}")))
            })
            .collect::<Result<_>>()?;
        Ok(pg
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let dot = (0..m.size()).fold(Rational::zero(), |acc, j| {
                    acc + Rational::from_integer(m.matrix[(i, j)].clone()) * k[j]
                });
                dot - adjunction_rhs(v.genus, v.self_intersection)
            })
            .collect())
    }
}

fn adjunction_rhs(genus: u32, self_intersection: i64) -> Rational {
    int(2 * i64::from(genus) - 2 - self_intersection)
}

/// Solves the adjunction system `K . E_i = 2 g_i - 2 + d_i` on the whole graph.
pub fn canonical_cycle_oracle(pg: &PlumbingGraph) -> Result<CanonicalCycle> {
    let m = intersection_matrix(pg);
    if !m.matrix.is_negative_definite() {
        return Err(Error::MatrixNotNegativeDefinite);
    }
    let rhs: Vec<Rational> = pg
        .vertices
        .iter()
        .map(|v| adjunction_rhs(v.genus, v.self_intersection))
        .collect();
    let k = solve_exact(&m.matrix, &rhs)?;
    Ok(CanonicalCycle {
        coefficients: m.labels.into_iter().zip(k).collect(),
    })
}
