//! Triple intersections on the blow-up of 3-space at five points and along
//! the cords joining them, at the level needed to show that every cord has
//! anticanonical degree zero.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub const POINTS: u8 = 5;

/// Exceptional and pullback symbols of the threefold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// `p*H`
    Pullback,
    /// `E_i` over a blown-up point
    Point(u8),
    /// `E_ij` over the cord through points `i < j`
    Line(u8, u8),
}

/// `h p*H + sum p_i E_i + sum l_ij E_ij`, finitely supported.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ThreefoldDivisor {
    terms: BTreeMap<Symbol, i64>,
}

impl ThreefoldDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pullback(h: i64) -> Self {
        Self::zero().plus(Symbol::Pullback, h)
    }

    pub fn point(i: u8) -> Self {
        Self::zero().plus(Symbol::Point(i), 1)
    }

    pub fn line(i: u8, j: u8) -> Self {
        Self::zero().plus(Symbol::Line(i.min(j), i.max(j)), 1)
    }

    pub fn plus(mut self, s: Symbol, c: i64) -> Self {
        let entry = self.terms.entry(s).or_insert(0);
        *entry = entry.checked_add(c).expect("threefold coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&s);
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        other
            .terms
            .iter()
            .fold(self.clone(), |acc, (s, c)| acc.plus(*s, *c))
    }

    pub fn scale(&self, k: i64) -> Self {
        self.terms
            .iter()
            .fold(Self::zero(), |acc, (s, c)| acc.plus(*s, c * k))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Symbol, i64)> + '_ {
        self.terms.iter().map(|(s, c)| (*s, *c))
    }
}

/// Value of a monomial in three symbols.
pub fn symbol_product(symbols: [Symbol; 3]) -> Result<i64> {
    let mut exceptional: Vec<Symbol> = symbols
        .iter()
        .copied()
        .filter(|s| *s != Symbol::Pullback)
        .collect();
    exceptional.sort();
    exceptional.dedup();
    if exceptional.len() >= 2 {
        return Ok(0);
    }
    let pullbacks = symbols.iter().filter(|s| **s == Symbol::Pullback).count();
    match exceptional.first() {
        None => Ok(1),
        Some(Symbol::Point(_)) => Ok(if pullbacks == 0 { 1 } else { 0 }),
        Some(Symbol::Line(i, j)) => {
            if pullbacks == 2 {
                Ok(0)
            } else {
                Err(Error::Unsupported(format!(
                    "self-intersection of the cord exceptional E_{{{i}{j}}}"
                )))
            }
        }
        Some(Symbol::Pullback) => unreachable!(),
    }
}

/// Trilinear extension of [`symbol_product`]. Only monomials with nonzero
/// coefficient are evaluated.
pub fn triple_product(
    t1: &ThreefoldDivisor,
    t2: &ThreefoldDivisor,
    t3: &ThreefoldDivisor,
) -> Result<i64> {
    let mut total = 0i64;
    for (s1, c1) in t1.terms() {
        for (s2, c2) in t2.terms() {
            for (s3, c3) in t3.terms() {
                let v = symbol_product([s1, s2, s3])?;
                total += c1 * c2 * c3 * v;
            }
        }
    }
    Ok(total)
}

/// The ten cords `l_ab`, `a < b`.
pub fn cords() -> Vec<(u8, u8)> {
    (1..=POINTS)
        .flat_map(|a| ((a + 1)..=POINTS).map(move |b| (a, b)))
        .collect()
}

/// `-K = 4 p*H - 2 sum E_i - 2 sum E_ij`, with the coefficient 2 on the cord
/// exceptionals kept as printed (the classical formula has 1; the cord
/// computation is insensitive to it).
pub fn anticanonical() -> ThreefoldDivisor {
    let mut k = ThreefoldDivisor::pullback(4);
    for i in 1..=POINTS {
        k = k.plus(Symbol::Point(i), -2);
    }
    for (a, b) in cords() {
        k = k.plus(Symbol::Line(a, b), -2);
    }
    k
}

/// `-K . C` for the strict transform `C` of the cord through `a` and `b`,
/// with `C = (p*pi - E_a - E_b)(p*rho - E_a - E_b)` for two planes `pi`,
/// `rho` cutting out the cord.
pub fn cord_anticanonical_degree(a: u8, b: u8) -> Result<i64> {
    for label in [a, b] {
        if !(1..=POINTS).contains(&label) {
            return Err(Error::Domain(format!("point label {label} outside 1..={POINTS}")));
        }
    }
    if a == b {
        return Err(Error::Domain(format!("cord needs two distinct points, got {a} twice")));
    }
    let plane_through_both = ThreefoldDivisor::pullback(1)
        .sub(&ThreefoldDivisor::point(a))
        .sub(&ThreefoldDivisor::point(b));
    triple_product(&anticanonical(), &plane_through_both, &plane_through_both)
}

/// `I_{dF}(d phi)` for a fibre `F` of a cord exceptional divisor.
pub fn exceptional_fiber_invariant(d: u32) -> Result<i64> {
    match d {
        0 => Err(Error::Domain("fibre multiplicity must be positive".into())),
        1 => Ok(-1),
        _ => Ok(0),
    }
}
