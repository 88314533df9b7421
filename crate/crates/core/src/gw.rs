//! Genus-zero Gromov-Witten invariants of the degree 5 del Pezzo surface.
//!
//! Two readings are provided. [`Mode::Literal`] reproduces the one-point case
//! table used to derive the divisor product formula, including point
//! insertions for classes whose virtual dimension does not match.
//! [`Mode::Strict`] applies the dimension axiom and takes the enumerative
//! counts `N_beta` from a fixed table.

use std::fmt;

use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{anticanonical_degree, intersect, is_effective, SurfaceClass, GENERATORS};

pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Insertion {
    Fundamental,
    Divisor(SurfaceClass),
    Point,
}

impl Insertion {
    pub fn codimension(&self) -> i64 {
        match self {
            Insertion::Fundamental => 0,
            Insertion::Divisor(_) => 1,
            Insertion::Point => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Literal,
    Strict,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Literal => "literal",
            Mode::Strict => "strict",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(Mode::Literal),
            "strict" => Ok(Mode::Strict),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn require_effective(beta: &SurfaceClass) -> Result<()> {
    if is_effective(beta) {
        Ok(())
    } else {
        Err(Error::NotEffective(*beta))
    }
}

/// `beta = a H - sum eps_i E_i` with every `eps_i` in `{0, 1}`.
fn is_multiplicity_free(beta: &SurfaceClass, a: i64) -> bool {
    beta.d == a && beta.b.iter().all(|b| *b == 0 || *b == 1)
}

fn is_minus_one_curve(beta: &SurfaceClass) -> bool {
    GENERATORS.contains(beta)
}

/// The one-point case table for a basis divisor `H` or `E_i`.
fn literal_divisor_on_basis(beta: &SurfaceClass, basis_slot: usize) -> i64 {
    if beta.d == 0 {
        // beta = E_i, D = E_i
        if basis_slot > 0 && *beta == SurfaceClass::exceptional(basis_slot) {
            return -1;
        }
        return 0;
    }
    if beta.d == 1 && is_minus_one_curve(beta) {
        // beta = H - E_i - E_j and D in {H, E_i, E_j}
        if basis_slot == 0 || beta.b[basis_slot - 1] == 1 {
            return 1;
        }
    }
    0
}

/// One-point invariant `I_beta(t)` read off the case table literally.
///
/// Divisor insertions are expanded over the basis `H, E1..E4` and the table is
/// applied to each basis element, so the value is linear in the divisor.
pub fn one_point_literal(beta: &SurfaceClass, t: &Insertion) -> Result<Rational> {
    require_effective(beta)?;
    let value = match t {
        Insertion::Fundamental => 0,
        Insertion::Divisor(d) => literal_divisor(beta, d),
        Insertion::Point => literal_point(beta),
    };
    Ok(int(value))
}

fn literal_divisor(beta: &SurfaceClass, d: &SurfaceClass) -> i64 {
    d.basis_coords()
        .iter()
        .enumerate()
        .map(|(slot, c)| c * literal_divisor_on_basis(beta, slot))
        .sum()
}

fn literal_point(beta: &SurfaceClass) -> i64 {
    if is_multiplicity_free(beta, 1) || is_multiplicity_free(beta, 2) {
        1
    } else {
        0
    }
}

/// Enumerative count of rational curves in an effective class through the
/// dimension-matched number of general points, restricted to
/// anticanonical degree at most 4.
fn count_table(beta: &SurfaceClass) -> i64 {
    let mut sorted_b = beta.b;
    sorted_b.sort_unstable();
    match (anticanonical_degree(beta), beta.d, sorted_b) {
        (1, _, _) if is_minus_one_curve(beta) => 1,
        // pencils of conics through one point, and the conic through all four
        (2, 1, [0, 0, 0, 1]) | (2, 2, [1, 1, 1, 1]) => 1,
        (3, 1, [0, 0, 0, 0]) | (3, 2, [0, 1, 1, 1]) => 1,
        (4, 2, [0, 0, 1, 1]) => 1,
        // nodal cubics singular at one blown-up point
        (4, 3, [1, 1, 1, 2]) => 1,
        _ => 0,
    }
}

/// `N_beta`: number of rational curves in class `beta` through `points`
/// general points, where `points` must equal `-K.beta - 1`.
pub fn base_count(beta: &SurfaceClass, points: u32) -> Result<Rational> {
    require_effective(beta)?;
    let expected = anticanonical_degree(beta) - 1;
    if i64::from(points) != expected {
        return Err(Error::DimensionMismatch {
            class: *beta,
            points: points.into(),
            expected,
        });
    }
    Ok(int(count_table(beta)))
}

/// Three-point invariant `I_beta(a, b, c)` for nonzero effective `beta`.
///
/// Divisor insertions are stripped with the divisor axiom. In literal mode at
/// most one point insertion may remain.
pub fn three_point(
    mode: Mode,
    beta: &SurfaceClass,
    a: &Insertion,
    b: &Insertion,
    c: &Insertion,
) -> Result<Rational> {
    require_effective(beta)?;
    three_point_effective(mode, beta, [a, b, c])
}

/// [`three_point`] for a class already known to be effective.
pub(crate) fn three_point_effective(
    mode: Mode,
    beta: &SurfaceClass,
    insertions: [&Insertion; 3],
) -> Result<Rational> {
    if beta.is_zero() {
        return Err(Error::ZeroClass);
    }
    let points = insertions
        .iter()
        .filter(|t| matches!(t, Insertion::Point))
        .count();
    if mode == Mode::Literal && points >= 2 {
        return Err(Error::Unsupported(format!(
            "literal invariant of {beta} with {points} point insertions"
        )));
    }
    if insertions.iter().any(|t| matches!(t, Insertion::Fundamental)) {
        return Ok(Rational::zero());
    }
    let divisors: Vec<&SurfaceClass> = insertions
        .iter()
        .filter_map(|t| match t {
            Insertion::Divisor(d) => Some(d),
            _ => None,
        })
        .collect();

    let value = match mode {
        Mode::Strict => {
            if points as i64 != anticanonical_degree(beta) - 1 {
                return Ok(Rational::zero());
            }
            let factor: i64 = divisors.iter().map(|d| intersect(d, beta)).product();
            factor * count_table(beta)
        }
        Mode::Literal if points == 1 => {
            let factor: i64 = divisors.iter().map(|d| intersect(d, beta)).product();
            factor * literal_point(beta)
        }
        Mode::Literal => {
            let (last, stripped) = divisors.split_last().expect("three divisor insertions");
            let factor: i64 = stripped.iter().map(|d| intersect(d, beta)).product();
            factor * literal_divisor(beta, last)
        }
    };
    Ok(int(value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;
    use crate::lattice::classes_of_anticanonical_degree;

    fn e(i: usize) -> SurfaceClass {
        SurfaceClass::exceptional(i)
    }
    const H: SurfaceClass = SurfaceClass::H;

    #[test]
    fn literal_one_point_examples() {
        assert_eq!(one_point_literal(&e(1), &Insertion::Divisor(e(1))).unwrap(), int(-1));
        let c12 = SurfaceClass::line_through(1, 2);
        assert_eq!(one_point_literal(&c12, &Insertion::Divisor(H)).unwrap(), int(1));
        assert_eq!(one_point_literal(&c12, &Insertion::Divisor(e(2))).unwrap(), int(1));
        assert_eq!(one_point_literal(&c12, &Insertion::Divisor(e(3))).unwrap(), int(0));
        assert_eq!(one_point_literal(&H, &Insertion::Point).unwrap(), int(1));
        assert_eq!(one_point_literal(&H, &Insertion::Fundamental).unwrap(), int(0));
        assert!(matches!(
            one_point_literal(&(-e(1)), &Insertion::Point),
            Err(Error::NotEffective(_))
        ));
    }

    #[test]
    fn literal_divisor_agrees_with_divisor_axiom() {
        // on basis divisors the table is (D.beta) on -1 curves and zero elsewhere
        for beta in (1..=3).flat_map(classes_of_anticanonical_degree) {
            for d in [H, e(1), e(2), e(3), e(4), SurfaceClass::line_through(1, 4)] {
                let expected = if is_minus_one_curve(&beta) { intersect(&d, &beta) } else { 0 };
                assert_eq!(
                    one_point_literal(&beta, &Insertion::Divisor(d)).unwrap(),
                    int(expected),
                    "{beta} {d}"
                );
            }
        }
    }

    #[test]
    fn base_count_examples() {
        assert_eq!(base_count(&e(1), 0).unwrap(), int(1));
        assert_eq!(base_count(&(H - e(1)), 1).unwrap(), int(1));
        assert_eq!(base_count(&(e(1) + e(2)), 1).unwrap(), int(0));
        assert_eq!(base_count(&H, 2).unwrap(), int(1));
        assert_eq!(base_count(&(e(1).scale(2)), 1).unwrap(), int(0));
        assert_eq!(base_count(&SurfaceClass::new(3, [2, 1, 1, 1]), 3).unwrap(), int(1));
        // mixed-sign classes count nothing
        assert_eq!(base_count(&(SurfaceClass::line_through(1, 2) + e(3)), 1).unwrap(), int(0));
    }

    #[test]
    fn base_count_rejects_dimension_mismatch() {
        assert!(matches!(base_count(&H, 1), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(base_count(&SurfaceClass::ZERO, 0), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(base_count(&(-H), 0), Err(Error::NotEffective(_))));
    }

    #[test]
    fn base_count_table_is_zero_or_one() {
        for k in 1..=4 {
            for beta in classes_of_anticanonical_degree(k) {
                let n = base_count(&beta, (k - 1) as u32).unwrap();
                assert!(n.is_zero() || n.is_one(), "{beta}: {n}");
            }
        }
    }

    #[test]
    fn three_point_examples() {
        let c12 = SurfaceClass::line_through(1, 2);
        let div = Insertion::Divisor;
        assert_eq!(
            three_point(Mode::Strict, &c12, &div(e(1)), &div(e(2)), &div(H)).unwrap(),
            int(1)
        );
        let conic = SurfaceClass::new(2, [1, 1, 1, 1]);
        assert_eq!(
            three_point(Mode::Strict, &conic, &Insertion::Point, &div(e(1)), &div(e(2))).unwrap(),
            int(1)
        );
        for mode in [Mode::Literal, Mode::Strict] {
            for beta in [e(1), c12, H, conic] {
                assert_eq!(
                    three_point(mode, &beta, &Insertion::Fundamental, &div(H), &div(e(1))).unwrap(),
                    int(0)
                );
            }
        }
    }

    #[test]
    fn three_point_errors() {
        let pt = Insertion::Point;
        assert!(matches!(
            three_point(Mode::Literal, &H, &pt, &pt, &Insertion::Divisor(H)),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            three_point(Mode::Strict, &SurfaceClass::ZERO, &pt, &pt, &pt),
            Err(Error::ZeroClass)
        ));
        // strict mode tolerates the same query
        assert_eq!(
            three_point(Mode::Strict, &H, &pt, &pt, &Insertion::Divisor(H)).unwrap(),
            int(1)
        );
    }

    #[test]
    fn literal_point_table_ignores_dimension() {
        // beta = H has -K.beta = 3 but the literal table still returns 1
        let div = Insertion::Divisor;
        assert_eq!(
            three_point(Mode::Literal, &H, &Insertion::Point, &div(H), &div(H)).unwrap(),
            int(1)
        );
        assert_eq!(
            three_point(Mode::Strict, &H, &Insertion::Point, &div(H), &div(H)).unwrap(),
            int(0)
        );
    }
}
