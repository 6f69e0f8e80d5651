//! Neumann's invariants `e` and `chi`, the graded discrepancy, the canonical
//! cycle in closed form, the numerical order of `K`, and the discrepancy
//! calculus for graded hypersurface sections and cones.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{int, lcm_of_denominators, mod_inverse, rat, Rational};
use crate::graph_model::{expand, StarGraph, VertexLabel};
use crate::lattice::{canonical_cycle_oracle, solve_exact, CanonicalCycle};
use crate::matrix::IntMatrix;

/// `e`, `chi`, `beta = chi/e` and `alpha = -1 - beta` of a graph with `e > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertInvariants {
    pub e: Rational,
    pub chi: Rational,
    pub beta: Rational,
    pub alpha: Rational,
}

/// `e = d - sum q_i/n_i`. Positivity is checked by `validate_star`, not here.
pub fn euler_e(sg: &StarGraph) -> Result<Rational> {
    sg.euler_number()
}

/// `chi = 2g - 2 + sum (1 - 1/n_i)`.
pub fn chi(sg: &StarGraph) -> Result<Rational> {
    sg.orbifold_euler_characteristic()
}

/// All four numbers at once. Requires `e > 0` but does not refuse the
/// cyclic-quotient range; use [`graded_discrepancy`] for the gated value.
pub fn seifert_invariants(sg: &StarGraph) -> Result<SeifertInvariants> {
    let e = sg.require_valid()?;
    let chi = chi(sg)?;
    let beta = &chi / &e;
    let alpha = int(-1) - &beta;
    Ok(SeifertInvariants { e, chi, beta, alpha })
}

/// The graded discrepancy, with a caveat when the central curve has positive
/// genus: then the value presumes `K_X` is Q-Cartier, which the graph alone
/// does not decide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDiscrepancy {
    pub alpha: Rational,
    pub caveat: Option<&'static str>,
}

pub const POSITIVE_GENUS_CAVEAT: &str =
    "assumes K_X is Q-Cartier; for g > 0 this depends on the divisor class of D";

/// `alpha(X) = -1 - chi/e`; refuses the cyclic-quotient range.
pub fn graded_discrepancy(sg: &StarGraph) -> Result<GradedDiscrepancy> {
    sg.require_star_formulas()?;
    let inv = seifert_invariants(sg)?;
    Ok(GradedDiscrepancy {
        alpha: inv.alpha,
        caveat: (sg.genus > 0).then_some(POSITIVE_GENUS_CAVEAT),
    })
}

/// Intersection matrix of a single Hirzebruch–Jung string.
fn string_matrix(entries: &[i64]) -> IntMatrix {
    let s = entries.len();
    let mut m = IntMatrix::zeros(s, s);
    for (i, &b) in entries.iter().enumerate() {
        m[(i, i)] = BigInt::from(-b);
        if i + 1 < s {
            m[(i, i + 1)] = BigInt::one();
            m[(i + 1, i)] = BigInt::one();
        }
    }
    m
}

/// The cycle `e_i` on a string with `e_i . E_j = -delta_ij`.
fn string_dual(m: &IntMatrix, i: usize) -> Result<Vec<Rational>> {
    let rhs: Vec<Rational> = (0..m.rows())
        .map(|j| if i == j { int(-1) } else { Rational::zero() })
        .collect();
    solve_exact(m, &rhs)
}

/// `K` on the minimal good resolution, assembled string by string.
///
/// With `beta = chi/e`, the cycle `Z = -(K + E)` is `sum Y_k + beta C` where
/// each `Y = beta e_1 - e_s` on its string. The string duals come from exact
/// `s x s` solves; their endpoint values are checked against
/// `(beta q - 1)/n` at `E_1` and `(beta - q')/n` at `E_s`.
pub fn k_cycle_closed_form(sg: &StarGraph) -> Result<CanonicalCycle> {
    let inv = seifert_invariants(sg)?;
    sg.require_star_formulas()?;
    let beta = &inv.beta;

    let mut coefficients = BTreeMap::new();
    coefficients.insert(VertexLabel::Central, int(-1) - beta);

    for (arm_index, arm) in sg.arms.iter().enumerate() {
        let cf = arm.expansion()?;
        let m = string_matrix(cf.entries());
        let last = cf.len() - 1;
        let first_dual = string_dual(&m, 0)?;
        let last_dual = string_dual(&m, last)?;
        let y: Vec<Rational> = first_dual
            .iter()
            .zip(&last_dual)
            .map(|(a, b)| beta * a - b)
            .collect();

        let q_prime = mod_inverse(arm.q, arm.n)?;
        let near = (beta * int(arm.q) - int(1)) / int(arm.n);
        let far = (beta - int(q_prime)) / int(arm.n);
        if y[0] != near || y[last] != far {
            return Err(Error::consistency(format!(
                "string {arm}: endpoint coefficients ({}, {}) differ from ({near}, {far})",
                y[0], y[last]
            )));
        }

        for (position, z) in y.into_iter().enumerate() {
            coefficients.insert(
                VertexLabel::String {
                    arm: arm_index,
                    position,
                },
                -z - int(1),
            );
        }
    }
    Ok(CanonicalCycle { coefficients })
}

/// The terms `(chi/e - q'_k)/n_k`, one per arm: minus the `Z`-coefficient at
/// each string end.
pub fn end_terms(sg: &StarGraph) -> Result<Vec<Rational>> {
    let inv = seifert_invariants(sg)?;
    sg.arms
        .iter()
        .map(|a| Ok((&inv.beta - int(mod_inverse(a.q, a.n)?)) / int(a.n)))
        .collect()
}

/// The least common denominator of the end terms with arm `k` left out, for
/// each `k`. With a single arm the one term is used on its own, since then the
/// lone end dual generates the discriminant group.
pub fn order_by_subsets(sg: &StarGraph) -> Result<Vec<BigInt>> {
    let terms = end_terms(sg)?;
    if terms.len() == 1 {
        return Ok(vec![lcm_of_denominators(&terms)]);
    }
    Ok((0..terms.len())
        .map(|omit| {
            lcm_of_denominators(
                terms
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != omit)
                    .map(|(_, t)| t),
            )
        })
        .collect())
}

/// Order of the class of `K` in the discriminant group.
///
/// For `t >= 1` this is the common value of [`order_by_subsets`]; every
/// choice must agree, and must agree with the denominators of the
/// lattice-solved canonical cycle. For `t = 0` the lattice value is returned.
pub fn k_order_numerical(sg: &StarGraph) -> Result<BigInt> {
    sg.require_star_formulas()?;
    let oracle = canonical_cycle_oracle(&expand(sg)?)?.order();
    if sg.arms.is_empty() {
        return Ok(oracle);
    }
    let orders = order_by_subsets(sg)?;
    let first = orders[0].clone();
    if let Some(other) = orders.iter().find(|o| **o != first) {
        return Err(Error::consistency(format!(
            "order of K depends on the choice of arms: {first} vs {other}"
        )));
    }
    if first != oracle {
        return Err(Error::consistency(format!(
            "order of K from end terms is {first}, lattice gives {oracle}"
        )));
    }
    Ok(first)
}

/// `alpha(X) = alpha(X') + d` for a section of weight `d >= 1`.
pub fn discrepancy_shift(alpha_sub: &Rational, d: i64) -> Result<Rational> {
    if d <= 0 {
        return Err(Error::validation(format!(
            "section weight d = {d} must be >= 1"
        )));
    }
    Ok(alpha_sub + int(d))
}

/// `alpha = -1 - m/n` for a cone with `K_Y^n = L^m`.
pub fn cone_discrepancy(m: i64, n: i64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::validation("cone_discrepancy: n must be nonzero"));
    }
    Ok(int(-1) - rat(m, n))
}

/// Which graded hypersurface section `f` is being cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionCase {
    /// `f` is the generator with the given zero-based index.
    Coordinate(usize),
    /// `f` lies in the square of the maximal ideal.
    InMaxIdealSquared,
}

/// The weight conditions under which a section keeps its exceptional divisor
/// off the singular locus of the weighted blow-up.
///
/// Weights must have overall gcd 1. Cutting a coordinate requires the other
/// weights to have gcd 1; a section in `m^2` always qualifies.
pub fn prop11_check(weights: &[u64], case: SectionCase) -> Result<bool> {
    if weights.contains(&0) {
        return Err(Error::validation("weights must be positive"));
    }
    let overall = weights.iter().fold(0u64, |g, &w| g.gcd(&w));
    if overall != 1 {
        return Err(Error::validation(format!(
            "weights {weights:?} have gcd {overall}, expected 1"
        )));
    }
    match case {
        SectionCase::InMaxIdealSquared => Ok(true),
        SectionCase::Coordinate(j) => {
            if j >= weights.len() {
                return Err(Error::validation(format!(
                    "generator index {j} out of range for {} weights",
                    weights.len()
                )));
            }
            let rest = weights
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .fold(0u64, |g, (_, &w)| g.gcd(&w));
            Ok(rest == 1)
        }
    }
}
