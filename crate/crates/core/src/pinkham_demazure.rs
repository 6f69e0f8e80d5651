//! Graded pieces of the coordinate ring and of its dualizing module, for a
//! rational central curve, from the Q-divisors
//!
//! * `E = D - sum (q_i/n_i) P_i`, of degree `e`;
//! * `Xi = K + sum (1 - 1/n_i) P_i`, of degree `chi`.
//!
//! On the projective line a divisor is determined up to linear equivalence by
//! its degree, so `A_k = H^0(floor(kE))` has dimension `max(0, deg + 1)` and
//! neither the points `P_i` nor the class of `D` matter.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{ceil_div, floor_div, int, rat, Rational};
use crate::graph_model::{Arm, StarGraph};

const DIMENSIONS_NEED_CLASS: &str = "dimensions need divisor class (out of scope)";

/// `E = D - sum (q_i/n_i) P_i` with `deg D = d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemazureData {
    pub genus: u32,
    pub d: i64,
    pub arms: Vec<Arm>,
}

/// `Xi = K + sum (1 - 1/n_i) P_i` with `deg K = 2g - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiData {
    pub genus: u32,
    pub arms: Vec<Arm>,
}

impl DemazureData {
    /// Requires valid arms and `e > 0`.
    pub fn from_star(sg: &StarGraph) -> Result<Self> {
        sg.require_valid()?;
        Ok(DemazureData {
            genus: sg.genus,
            d: sg.central_weight,
            arms: sg.arms.clone(),
        })
    }

    pub fn degree(&self) -> Rational {
        self.arms
            .iter()
            .fold(int(self.d), |acc, a| acc - rat(a.q, a.n))
    }

    pub fn xi(&self) -> XiData {
        XiData {
            genus: self.genus,
            arms: self.arms.clone(),
        }
    }

    fn require_genus_zero(&self) -> Result<()> {
        if self.genus > 0 {
            return Err(Error::PositiveGenus {
                genus: self.genus,
                what: DIMENSIONS_NEED_CLASS,
            });
        }
        Ok(())
    }
}

impl XiData {
    pub fn from_star(sg: &StarGraph) -> Result<Self> {
        sg.check_arms()?;
        Ok(XiData {
            genus: sg.genus,
            arms: sg.arms.clone(),
        })
    }

    pub fn degree(&self) -> Rational {
        self.arms
            .iter()
            .fold(int(2 * i64::from(self.genus) - 2), |acc, a| {
                acc + rat(a.n - 1, a.n)
            })
    }
}

/// `deg floor(kE) = k d - sum ceil(k q_i / n_i)`, any integer `k`.
pub fn deg_floor_k_e(dd: &DemazureData, k: i64) -> i64 {
    dd.arms
        .iter()
        .fold(k * dd.d, |acc, a| acc - ceil_div(k * a.q, a.n))
}

/// `deg floor(Xi + kE) = -2 + k d + sum floor((n_i - 1 - k q_i) / n_i)` at genus 0.
pub fn deg_floor_xi_k_e(dd: &DemazureData, k: i64) -> i64 {
    dd.arms.iter().fold(-2 + k * dd.d, |acc, a| {
        acc + floor_div(a.n - 1 - k * a.q, a.n)
    })
}

fn h0_on_line(degree: i64) -> u64 {
    u64::try_from(degree + 1).unwrap_or(0)
}

/// `dim A_k`.
pub fn graded_dim(dd: &DemazureData, k: u64) -> Result<u64> {
    dd.require_genus_zero()?;
    Ok(h0_on_line(deg_floor_k_e(dd, to_i64(k)?)))
}

/// `[dim A_0, ..., dim A_{k_max}]`.
pub fn poincare_series(dd: &DemazureData, k_max: u64) -> Result<Vec<u64>> {
    dd.require_genus_zero()?;
    (0..=k_max).map(|k| graded_dim(dd, k)).collect()
}

/// `dim (omega_A)_k` for `k_min <= k <= k_max`.
pub fn dualizing_dims(dd: &DemazureData, k_min: i64, k_max: i64) -> Result<Vec<u64>> {
    dd.require_genus_zero()?;
    Ok((k_min..=k_max)
        .map(|k| h0_on_line(deg_floor_xi_k_e(dd, k)))
        .collect())
}

fn to_i64(k: u64) -> Result<i64> {
    i64::try_from(k).map_err(|_| Error::validation(format!("degree {k} is too large")))
}

fn chi_over_e(dd: &DemazureData, xi: &XiData) -> Result<Rational> {
    let e = dd.degree();
    if e <= Rational::zero() {
        return Err(Error::NotNegativeDefinite { e: e.to_string() });
    }
    Ok(xi.degree() / e)
}

/// The integer `t` with `Xi = tE` (as Q-divisor classes), if there is one.
///
/// Such a `t` must equal `chi/e`; it then needs `t q_i = 1 (mod n_i)` for
/// every arm and `deg floor(tE) = -2`.
pub fn gorenstein_test(dd: &DemazureData, xi: &XiData) -> Result<Option<i64>> {
    dd.require_genus_zero()?;
    if dd.arms != xi.arms || dd.genus != xi.genus {
        return Err(Error::validation(
            "Demazure and Xi data come from different graphs",
        ));
    }
    let ratio = chi_over_e(dd, xi)?;
    if !ratio.is_integer() {
        return Ok(None);
    }
    let t: i64 = ratio
        .to_integer()
        .try_into()
        .map_err(|_| Error::validation("chi/e does not fit in 64 bits"))?;
    let congruences = dd
        .arms
        .iter()
        .all(|a| (t * a.q - 1).rem_euclid(a.n) == 0);
    Ok((congruences && deg_floor_k_e(dd, t) == -2).then_some(t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionStatus {
    /// Genus 0: a degree-zero divisor on the line is principal.
    Automatic,
    /// Positive genus: whether `Xi - (chi/e) E` is torsion depends on the
    /// class of `D` in the Jacobian, which the graph does not determine.
    Undecided,
}

/// Smallest `s >= 1` with an integer `t = s chi/e` and `t q_i = s (mod n_i)`
/// for every arm, meaning `sXi` and `tE` have the same fractional parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QGorensteinOrder {
    pub s: BigInt,
    pub t: BigInt,
    pub torsion: TorsionStatus,
}

impl QGorensteinOrder {
    /// The order of `K_X` in the class group, when it is decided.
    pub fn order(&self) -> Option<&BigInt> {
        match self.torsion {
            TorsionStatus::Automatic => Some(&self.s),
            TorsionStatus::Undecided => None,
        }
    }
}

/// Searches `s` upward through multiples of the denominator of `chi/e`,
/// which is exactly where `s chi/e` is integral. The search stops by
/// `s = den(chi/e) * lcm(n_i)`, which always satisfies the congruences.
pub fn q_gorenstein_order(dd: &DemazureData) -> Result<QGorensteinOrder> {
    let ratio = chi_over_e(dd, &dd.xi())?;
    let (num, den) = (ratio.numer().clone(), ratio.denom().clone());
    let lcm_n = dd
        .arms
        .iter()
        .fold(BigInt::one(), |acc, a| acc.lcm(&BigInt::from(a.n)));
    let bound = &den * &lcm_n;

    let mut j = BigInt::one();
    loop {
        let s = &den * &j;
        let t = &num * &j;
        let matches = dd.arms.iter().all(|a| {
            let n = BigInt::from(a.n);
            (&t * a.q - &s).mod_floor(&n).is_zero()
        });
        if matches {
            let torsion = if dd.genus == 0 {
                TorsionStatus::Automatic
            } else {
                TorsionStatus::Undecided
            };
            return Ok(QGorensteinOrder { s, t, torsion });
        }
        if s >= bound {
            return Err(Error::consistency(format!(
                "no s <= {bound} satisfies the Q-Gorenstein congruences"
            )));
        }
        j += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e8() -> DemazureData {
        DemazureData::from_star(&StarGraph::from_pairs(0, 2, &[(2, 1), (3, 2), (5, 4)])).unwrap()
    }

    fn triple_four() -> DemazureData {
        DemazureData::from_star(&StarGraph::from_pairs(0, 3, &[(4, 1), (4, 1), (4, 1)])).unwrap()
    }

    fn plane() -> DemazureData {
        DemazureData::from_star(&StarGraph::from_pairs(0, 1, &[])).unwrap()
    }

    /// `x^a y^b z^c`, `a <= 1`, weights 15, 10, 6: a basis of the ring
    /// `C[x, y, z]/(x^2 + y^3 + z^5)` graded by weight.
    fn brieskorn_count(k: i64) -> u64 {
        let mut count = 0;
        for a in 0..=1 {
            let rest = k - 15 * a;
            for b in 0..=rest.max(0) / 10 {
                if rest >= 0 && (rest - 10 * b) % 6 == 0 {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn floor_degrees() {
        assert_eq!(deg_floor_k_e(&e8(), 0), 0);
        assert_eq!(deg_floor_k_e(&e8(), 6), 0);
        assert_eq!(deg_floor_k_e(&e8(), 1), -1);
        assert_eq!(deg_floor_k_e(&e8(), -1), -2);
    }

    #[test]
    fn graded_dims_match_brieskorn_count() {
        for k in 0..=120u64 {
            assert_eq!(graded_dim(&e8(), k).unwrap(), brieskorn_count(k as i64), "k = {k}");
        }
        assert_eq!(
            poincare_series(&e8(), 12).unwrap(),
            vec![1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1]
        );
        assert_eq!(graded_dim(&e8(), 30).unwrap(), 2);
        assert_eq!(graded_dim(&triple_four(), 1).unwrap(), 1);
        assert_eq!(poincare_series(&plane(), 3).unwrap(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn positive_genus_refused() {
        let dd = DemazureData::from_star(&StarGraph::from_pairs(1, 3, &[])).unwrap();
        let err = poincare_series(&dd, 3).unwrap_err();
        assert!(err.to_string().contains("genus > 0: dimensions need divisor class (out of scope)"));
        assert!(dualizing_dims(&dd, 0, 3).is_err());
        assert!(gorenstein_test(&dd, &dd.xi()).is_err());
    }

    #[test]
    fn dualizing_examples() {
        assert_eq!(dualizing_dims(&e8(), 7, 7).unwrap(), vec![1]);
        assert!(dualizing_dims(&e8(), -10, 0).unwrap().iter().all(|&d| d == 0));
    }

    #[test]
    fn degrees_are_e_and_chi() {
        assert_eq!(e8().degree(), rat(1, 30));
        assert_eq!(e8().xi().degree(), rat(-1, 30));
        assert_eq!(triple_four().xi().degree(), rat(1, 4));
    }

    #[test]
    fn gorenstein_examples() {
        assert_eq!(gorenstein_test(&e8(), &e8().xi()).unwrap(), Some(-1));
        assert_eq!(gorenstein_test(&triple_four(), &triple_four().xi()).unwrap(), None);
        assert_eq!(gorenstein_test(&plane(), &plane().xi()).unwrap(), Some(-2));
        assert!(gorenstein_test(&e8(), &triple_four().xi()).is_err());
    }

    #[test]
    fn q_gorenstein_examples() {
        let o = q_gorenstein_order(&e8()).unwrap();
        assert_eq!(o.order(), Some(&BigInt::from(1)));
        assert_eq!(o.t, BigInt::from(-1));

        let o = q_gorenstein_order(&triple_four()).unwrap();
        assert_eq!((o.s.clone(), o.t.clone()), (BigInt::from(9), BigInt::from(1)));

        let dd = DemazureData::from_star(&StarGraph::from_pairs(1, 3, &[])).unwrap();
        let o = q_gorenstein_order(&dd).unwrap();
        assert_eq!((o.s, o.t, o.torsion), (BigInt::from(1), BigInt::from(0), TorsionStatus::Undecided));

        assert!(DemazureData::from_star(&StarGraph::from_pairs(0, 1, &[(3, 1), (3, 1), (3, 1)])).is_err());
    }
}
