//! The small quantum product on `H*(X)`, for `X` the plane blown up at four
//! general points.
//!
//! [`qmul_literal`] evaluates the closed divisor-product formula term by term,
//! signs included. [`qmul_strict`] builds the product from its definition:
//! cup product plus three-point invariants weighted by `q^beta`, with the
//! dual basis taken with respect to the intersection pairing
//! (`1 <-> pt`, `H <-> H`, `E_i <-> -E_i`).

use std::sync::OnceLock;

use num::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gw::{three_point_effective, Insertion, Mode, Rational};
use crate::lattice::{effective_classes_up_to_degree_4, intersect, SurfaceClass};
use crate::qpoly::{Basis, QClass, QPolynomial};

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Adds `c * class * q^beta` with `class` a divisor.
fn add_divisor_term(out: &mut QClass, class: &SurfaceClass, beta: SurfaceClass, c: i64) {
    if c == 0 {
        return;
    }
    for (slot, k) in class.basis_coords().into_iter().enumerate() {
        out.add_term(Basis::DIVISORS[slot], beta, int(c * k));
    }
}

/// The closed formula for the product of two divisors, evaluated verbatim.
pub fn qmul_literal(d1: &SurfaceClass, d2: &SurfaceClass) -> QClass {
    let mut out = QClass::zero();
    out.add_term(Basis::Pt, SurfaceClass::ZERO, int(intersect(d1, d2)));

    let weight = |beta: &SurfaceClass| intersect(d1, beta) * intersect(d2, beta);

    for i in 1..=4 {
        let ei = SurfaceClass::exceptional(i);
        add_divisor_term(&mut out, &ei, ei, -weight(&ei));
    }
    for i in 1..=4 {
        for j in (i + 1)..=4 {
            let line = SurfaceClass::line_through(i, j);
            let class = SurfaceClass::H + SurfaceClass::exceptional(i) + SurfaceClass::exceptional(j);
            add_divisor_term(&mut out, &class, line, weight(&line));
        }
    }
    for a in 1..=2 {
        for mask in 0u8..16 {
            let eps = std::array::from_fn(|i| i64::from((mask >> (3 - i)) & 1));
            let beta = SurfaceClass::new(a, eps);
            out.add_term(Basis::One, beta, int(weight(&beta)));
        }
    }
    out
}

fn insertion(b: Basis) -> Insertion {
    match b {
        Basis::One => Insertion::Fundamental,
        Basis::Pt => Insertion::Point,
        d => Insertion::Divisor(d.divisor_class().expect("divisor basis element")),
    }
}

/// Poincare dual of a basis element, as a class.
fn dual(b: Basis) -> QClass {
    match b {
        Basis::One => QClass::basis(Basis::Pt),
        Basis::Pt => QClass::basis(Basis::One),
        Basis::H => QClass::basis(Basis::H),
        e => {
            let mut x = QClass::zero();
            x.add_term(e, SurfaceClass::ZERO, int(-1));
            x
        }
    }
}

fn cup(a: Basis, b: Basis) -> QClass {
    match (a, b) {
        (Basis::One, x) | (x, Basis::One) => QClass::basis(x),
        (Basis::Pt, _) | (_, Basis::Pt) => QClass::zero(),
        (x, y) => {
            let pairing = intersect(
                &x.divisor_class().expect("divisor"),
                &y.divisor_class().expect("divisor"),
            );
            let mut out = QClass::zero();
            out.add_term(Basis::Pt, SurfaceClass::ZERO, int(pairing));
            out
        }
    }
}

fn strict_basis_product(a: Basis, b: Basis) -> QClass {
    let mut out = cup(a, b);
    let (ia, ib) = (insertion(a), insertion(b));
    for beta in effective_classes_up_to_degree_4() {
        for k in Basis::ALL {
            let value = three_point_effective(Mode::Strict, beta, [&ia, &ib, &insertion(k)])
                .expect("strict invariants are defined on nonzero effective classes");
            if value.is_zero() {
                continue;
            }
            let weight = QPolynomial::monomial_unchecked(*beta, value);
            out = &out + &dual(k).scale(&weight);
        }
    }
    out
}

/// Strict structure constants `T_a * T_b`, computed once.
pub fn strict_table() -> &'static [[QClass; 7]; 7] {
    static TABLE: OnceLock<[[QClass; 7]; 7]> = OnceLock::new();
    TABLE.get_or_init(|| {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| strict_basis_product(Basis::from_index(i), Basis::from_index(j)))
        })
    })
}

/// Quantum product from the dimension-filtered invariant table, extended
/// bilinearly over q-polynomial coefficients.
pub fn qmul_strict(x: &QClass, y: &QClass) -> QClass {
    let table = strict_table();
    let mut out = QClass::zero();
    for a in Basis::ALL {
        let xa = x.component(a);
        if xa.is_zero() {
            continue;
        }
        for b in Basis::ALL {
            let yb = y.component(b);
            if yb.is_zero() {
                continue;
            }
            out = &out + &table[a.index()][b.index()].scale(&(xa * yb));
        }
    }
    out
}

/// Reads a class back as an integral divisor with constant coefficients.
pub fn as_divisor(x: &QClass) -> Option<SurfaceClass> {
    if !x.component(Basis::One).is_zero() || !x.component(Basis::Pt).is_zero() {
        return None;
    }
    let mut coords = [0i64; 5];
    for (slot, b) in Basis::DIVISORS.iter().enumerate() {
        let p = x.component(*b);
        if p.terms().any(|(beta, _)| !beta.is_zero()) {
            return None;
        }
        let c = p.at_q_zero();
        if !c.is_integer() {
            return None;
        }
        coords[slot] = c.to_integer().try_into().ok()?;
    }
    Some(SurfaceClass::from_basis_coords(coords))
}

/// Product in either mode. Literal mode accepts only divisor classes.
pub fn qmul(mode: Mode, x: &QClass, y: &QClass) -> Result<QClass> {
    match mode {
        Mode::Strict => Ok(qmul_strict(x, y)),
        Mode::Literal => match (as_divisor(x), as_divisor(y)) {
            (Some(a), Some(b)) => Ok(qmul_literal(&a, &b)),
            _ => Err(Error::Unsupported(
                "the literal product is only defined for two divisor classes".into(),
            )),
        },
    }
}

pub fn qmul_divisors(mode: Mode, d1: &SurfaceClass, d2: &SurfaceClass) -> QClass {
    match mode {
        Mode::Literal => qmul_literal(d1, d2),
        Mode::Strict => qmul_strict(&QClass::divisor(d1), &QClass::divisor(d2)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityFailure {
    pub triple: [Basis; 3],
    /// `(a*b)*c - a*(b*c)`
    pub difference: QClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityReport {
    pub checked: usize,
    pub failures: Vec<AssociativityFailure>,
}

impl AssociativityReport {
    pub fn passed(&self) -> usize {
        self.checked - self.failures.len()
    }

    pub fn is_associative(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn associator(a: &QClass, b: &QClass, c: &QClass) -> QClass {
    let left = qmul_strict(&qmul_strict(a, b), c);
    let right = qmul_strict(a, &qmul_strict(b, c));
    &left - &right
}

/// Associators of all 343 ordered basis triples in the strict product.
pub fn check_associativity_strict() -> AssociativityReport {
    strict_table();
    let triples: Vec<[Basis; 3]> = Basis::ALL
        .iter()
        .flat_map(|a| {
            Basis::ALL
                .iter()
                .flat_map(move |b| Basis::ALL.iter().map(move |c| [*a, *b, *c]))
        })
        .collect();
    // par_iter preserves the triple order on collect
    let failures = triples
        .par_iter()
        .filter_map(|t| {
            let difference = associator(
                &QClass::basis(t[0]),
                &QClass::basis(t[1]),
                &QClass::basis(t[2]),
            );
            (!difference.is_zero()).then_some(AssociativityFailure {
                triple: *t,
                difference,
            })
        })
        .collect();
    AssociativityReport {
        checked: triples.len(),
        failures,
    }
}
