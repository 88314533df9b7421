//! q-polynomials over the semigroup of effective curve classes, and elements
//! of the quantum cohomology module over them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gw::Rational;
use crate::lattice::{anticanonical_degree, is_effective, q_label, SurfaceClass};

/// Finitely supported map from effective classes (the q-exponents) to
/// rational coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    terms: BTreeMap<SurfaceClass, Rational>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial_unchecked(SurfaceClass::ZERO, c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::from_integer(1.into()))
    }

    /// `c q^beta`; fails if `beta` is not effective.
    pub fn monomial(beta: SurfaceClass, c: Rational) -> Result<Self> {
        if !is_effective(&beta) {
            return Err(Error::NotEffective(beta));
        }
        Ok(Self::monomial_unchecked(beta, c))
    }

    pub(crate) fn monomial_unchecked(beta: SurfaceClass, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(beta, c);
        p
    }

    pub(crate) fn add_term(&mut self, beta: SurfaceClass, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(beta) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&SurfaceClass, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, beta: &SurfaceClass) -> Rational {
        self.terms.get(beta).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (beta, x) in &self.terms {
            out.add_term(*beta, x * c);
        }
        out
    }

    /// Specialization at `q = 0`: the coefficient of `q^0`.
    pub fn at_q_zero(&self) -> Rational {
        self.coefficient(&SurfaceClass::ZERO)
    }

    /// Largest anticanonical degree among the exponents.
    pub fn max_q_degree(&self) -> Option<i64> {
        self.terms.keys().map(anticanonical_degree).max()
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        for (beta, c) in &rhs.terms {
            out.add_term(*beta, c.clone());
        }
        out
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        self.scale(&-Rational::from_integer(1.into()))
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

/// Exponents add in the lattice: `q^a q^b = q^(a+b)`.
impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(*a + *b, x * y);
            }
        }
        out
    }
}

/// The ordered cohomology basis `1, H, E1, E2, E3, E4, pt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "1")]
    One,
    H,
    E1,
    E2,
    E3,
    E4,
    #[serde(rename = "pt")]
    Pt,
}

impl Basis {
    pub const ALL: [Basis; 7] = [
        Basis::One,
        Basis::H,
        Basis::E1,
        Basis::E2,
        Basis::E3,
        Basis::E4,
        Basis::Pt,
    ];
    pub const DIVISORS: [Basis; 5] = [Basis::H, Basis::E1, Basis::E2, Basis::E3, Basis::E4];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Basis {
        Self::ALL[i]
    }

    /// Cohomological degree in complex units: 0, 1 or 2.
    pub fn degree(self) -> i64 {
        match self {
            Basis::One => 0,
            Basis::Pt => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Basis::One => "1",
            Basis::H => "H",
            Basis::E1 => "E1",
            Basis::E2 => "E2",
            Basis::E3 => "E3",
            Basis::E4 => "E4",
            Basis::Pt => "pt",
        }
    }

    /// The divisor class of a degree-one basis element.
    pub fn divisor_class(self) -> Option<SurfaceClass> {
        match self {
            Basis::H => Some(SurfaceClass::H),
            Basis::E1 => Some(SurfaceClass::exceptional(1)),
            Basis::E2 => Some(SurfaceClass::exceptional(2)),
            Basis::E3 => Some(SurfaceClass::exceptional(3)),
            Basis::E4 => Some(SurfaceClass::exceptional(4)),
            _ => None,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Basis::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown basis element {s:?}")))
    }
}

/// Element of `H*(X) (x) R`: one q-polynomial per basis element.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct QClass {
    coeffs: [QPolynomial; 7],
}

impl QClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: Basis) -> Self {
        let mut x = Self::zero();
        x.coeffs[b.index()] = QPolynomial::one();
        x
    }

    /// Embeds a divisor class `d H - sum b_i E_i`.
    pub fn divisor(class: &SurfaceClass) -> Self {
        let mut x = Self::zero();
        for (slot, c) in class.basis_coords().into_iter().enumerate() {
            x.coeffs[slot + 1] = QPolynomial::constant(Rational::from_integer(c.into()));
        }
        x
    }

    pub fn component(&self, b: Basis) -> &QPolynomial {
        &self.coeffs[b.index()]
    }

    pub fn add_term(&mut self, b: Basis, beta: SurfaceClass, c: Rational) {
        self.coeffs[b.index()].add_term(beta, c);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QPolynomial::is_zero)
    }

    /// Terms in canonical order: basis first, then exponent.
    pub fn terms(&self) -> impl Iterator<Item = (Basis, &SurfaceClass, &Rational)> {
        Basis::ALL
            .into_iter()
            .flat_map(move |b| self.coeffs[b.index()].terms().map(move |(e, c)| (b, e, c)))
    }

    pub fn scale(&self, c: &QPolynomial) -> Self {
        QClass {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] * c),
        }
    }

    /// Specialization at `q = 0`.
    pub fn at_q_zero(&self) -> QClass {
        let mut out = QClass::zero();
        for (i, p) in self.coeffs.iter().enumerate() {
            out.coeffs[i] = QPolynomial::constant(p.at_q_zero());
        }
        out
    }
}

impl Add for &QClass {
    type Output = QClass;
    fn add(self, rhs: &QClass) -> QClass {
        QClass {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] + &rhs.coeffs[i]),
        }
    }
}

impl Sub for &QClass {
    type Output = QClass;
    fn sub(self, rhs: &QClass) -> QClass {
        QClass {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] - &rhs.coeffs[i]),
        }
    }
}

impl Neg for &QClass {
    type Output = QClass;
    fn neg(self) -> QClass {
        QClass {
            coeffs: std::array::from_fn(|i| -&self.coeffs[i]),
        }
    }
}

/// One signed term, e.g. `- 2 E1 q^{1,(1,1,0,0)}` or `+ q^{2,(0,0,0,0)}`.
pub fn render_term(b: Basis, beta: &SurfaceClass, c: &Rational) -> String {
    let mut parts = vec![if c.is_negative() { "-" } else { "+" }.to_string()];
    let magnitude = c.abs();
    let unit = magnitude == Rational::from_integer(1.into());
    let bare = b == Basis::One && beta.is_zero();
    if !unit || bare {
        parts.push(magnitude.to_string());
    }
    if b != Basis::One {
        parts.push(b.name().to_string());
    }
    if !beta.is_zero() {
        parts.push(q_label(beta));
    }
    parts.join(" ")
}

/// Parses a line produced by [`render_term`].
pub fn parse_term(line: &str) -> Result<(Basis, SurfaceClass, Rational)> {
    let err = || Error::Parse(format!("malformed term {line:?}"));
    let mut tokens = line.split_whitespace().peekable();
    let negative = match tokens.next() {
        Some("+") => false,
        Some("-") => true,
        _ => return Err(err()),
    };
    let mut coeff = Rational::from_integer(1.into());
    let mut basis = Basis::One;
    let mut beta = SurfaceClass::ZERO;
    let mut saw_any = false;
    if let Some(tok) = tokens.peek() {
        if tok.starts_with(|c: char| c.is_ascii_digit()) {
            coeff = tok.parse::<Rational>().map_err(|_| err())?;
            tokens.next();
            saw_any = true;
        }
    }
    if let Some(tok) = tokens.peek() {
        if let Ok(b) = tok.parse::<Basis>() {
            if b == Basis::One {
                return Err(err());
            }
            basis = b;
            tokens.next();
            saw_any = true;
        }
    }
    if let Some(tok) = tokens.next() {
        beta = parse_q_label(tok).ok_or_else(err)?;
        saw_any = true;
    }
    if !saw_any || tokens.next().is_some() {
        return Err(err());
    }
    if negative {
        coeff = -coeff;
    }
    Ok((basis, beta, coeff))
}

/// Parses `q^{a,(b1,b2,b3,b4)}`.
pub fn parse_q_label(s: &str) -> Option<SurfaceClass> {
    let inner = s.strip_prefix("q^{")?.strip_suffix(")}")?;
    let (a, rest) = inner.split_once(",(")?;
    let b: Vec<i64> = rest
        .split(',')
        .map(|x| x.parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .ok()?;
    Some(SurfaceClass::from_q_key(a.parse().ok()?, b.try_into().ok()?))
}

/// One term per line in canonical order; `0` for the zero class.
impl fmt::Display for QClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return writeln!(f, "0");
        }
        for (b, beta, c) in self.terms() {
            writeln!(f, "{}", render_term(b, beta, c))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn monomials_multiply_by_adding_exponents() {
        let e1 = SurfaceClass::exceptional(1);
        let c12 = SurfaceClass::line_through(1, 2);
        let p = QPolynomial::monomial(e1, r(2)).unwrap();
        let q = QPolynomial::monomial(c12, r(3)).unwrap();
        let pq = &p * &q;
        assert_eq!(pq.len(), 1);
        assert_eq!(pq.coefficient(&(e1 + c12)), r(6));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let e1 = SurfaceClass::exceptional(1);
        let p = QPolynomial::monomial(e1, r(2)).unwrap();
        assert!((&p - &p).is_zero());
        assert!(QPolynomial::monomial(e1, r(0)).unwrap().is_zero());
    }

    #[test]
    fn monomial_rejects_non_effective_exponent() {
        assert!(QPolynomial::monomial(-SurfaceClass::H, r(1)).is_err());
    }

    #[test]
    fn term_rendering() {
        let c12 = SurfaceClass::line_through(1, 2);
        assert_eq!(render_term(Basis::H, &c12, &r(1)), "+ H q^{1,(1,1,0,0)}");
        assert_eq!(render_term(Basis::One, &c12, &r(-4)), "- 4 q^{1,(1,1,0,0)}");
        assert_eq!(render_term(Basis::Pt, &SurfaceClass::ZERO, &r(1)), "+ pt");
        assert_eq!(render_term(Basis::One, &SurfaceClass::ZERO, &r(-1)), "- 1");
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(render_term(Basis::E3, &c12, &half), "+ 1/2 E3 q^{1,(1,1,0,0)}");
    }

    #[test]
    fn term_parsing_inverts_rendering() {
        let c12 = SurfaceClass::line_through(1, 2);
        let cases = [
            (Basis::H, c12, r(1)),
            (Basis::One, c12, r(-4)),
            (Basis::Pt, SurfaceClass::ZERO, r(3)),
            (Basis::One, SurfaceClass::ZERO, r(-1)),
            (Basis::E2, SurfaceClass::new(2, [1, 1, 1, 1]), Rational::new((-3).into(), 7.into())),
        ];
        for (b, beta, c) in cases {
            let line = render_term(b, &beta, &c);
            assert_eq!(parse_term(&line).unwrap(), (b, beta, c), "{line}");
        }
        for bad in ["", "+", "* q^{1,(0,0,0,0)}", "+ 1 q^{1,(0,0,0)}", "+ H H", "+ 1 q^{1,(0,0,0,0)} x"] {
            assert!(parse_term(bad).is_err(), "{bad:?}");
        }
    }
}
