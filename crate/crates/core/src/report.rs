//! Consistency reports comparing the two products: grading and the
//! term-by-term discrepancy on the five relation pairs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::gw::{Mode, Rational};
use crate::lattice::{anticanonical_degree, q_label, SurfaceClass};
use crate::moduli::{dictionary_image, keel_vanishing_pairs_5};
use crate::qpoly::{Basis, QClass};
use crate::quantum::{qmul_divisors, qmul_strict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingViolation {
    pub left: String,
    pub right: String,
    pub basis: Basis,
    pub exponent: SurfaceClass,
    pub degree: i64,
    pub expected: i64,
}

impl fmt::Display for GradingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} * {}: {} {} has degree {}, expected {}",
            self.left,
            self.right,
            self.basis,
            q_label(&self.exponent),
            self.degree,
            self.expected
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingReport {
    pub mode: Mode,
    pub pairs_checked: usize,
    pub violations: Vec<GradingViolation>,
}

/// Terms of `product` whose degree (`deg T + -K.beta`) differs from `expected`.
pub fn grading_violations(
    left: &str,
    right: &str,
    product: &QClass,
    expected: i64,
) -> Vec<GradingViolation> {
    product
        .terms()
        .filter_map(|(b, beta, _)| {
            let degree = b.degree() + anticanonical_degree(beta);
            (degree != expected).then(|| GradingViolation {
                left: left.to_string(),
                right: right.to_string(),
                basis: b,
                exponent: *beta,
                degree,
                expected,
            })
        })
        .collect()
}

/// Checks homogeneity under `deg q^beta = -K.beta` on every basis pair the
/// mode supports (all 49 in strict mode, the 25 divisor pairs in literal
/// mode) and on the five relation pairs.
pub fn check_grading(mode: Mode) -> GradingReport {
    let basis: &[Basis] = match mode {
        Mode::Strict => &Basis::ALL,
        Mode::Literal => &Basis::DIVISORS,
    };
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    for a in basis {
        for b in basis {
            let product = match mode {
                Mode::Strict => qmul_strict(&QClass::basis(*a), &QClass::basis(*b)),
                Mode::Literal => qmul_divisors(
                    mode,
                    &a.divisor_class().expect("divisor"),
                    &b.divisor_class().expect("divisor"),
                ),
            };
            violations.extend(grading_violations(
                a.name(),
                b.name(),
                &product,
                a.degree() + b.degree(),
            ));
            pairs_checked += 1;
        }
    }
    for (l, r) in keel_vanishing_pairs_5() {
        let product = qmul_divisors(
            mode,
            &dictionary_image(&l).expect("Keel pairs lie in B_5"),
            &dictionary_image(&r).expect("Keel pairs lie in B_5"),
        );
        violations.extend(grading_violations(&l.to_string(), &r.to_string(), &product, 2));
        pairs_checked += 1;
    }
    GradingReport {
        mode,
        pairs_checked,
        violations,
    }
}

/// A divisor-valued coefficient, in the basis `H, E1..E4`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorPart(pub [Rational; 5]);

impl fmt::Display for DivisorPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (c, b) in self.0.iter().zip(Basis::DIVISORS) {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if !c.abs().is_one() {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(b.name());
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// The graded pieces of a product at one exponent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    Unit(Rational),
    Divisor(DivisorPart),
    Point(Rational),
}

/// `part * q^exponent`, e.g. `(H+E1+E2) q^{1,(1,1,0,0)}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductTerm {
    pub exponent: SurfaceClass,
    pub part: Part,
}

impl fmt::Display for ProductTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = q_label(&self.exponent);
        match &self.part {
            Part::Unit(c) => write!(f, "{c} {q}"),
            Part::Divisor(d) => write!(f, "({d}) {q}"),
            Part::Point(c) => write!(f, "{c} pt {q}"),
        }
    }
}

/// Groups a product by exponent into unit, divisor and point pieces.
pub fn product_terms(x: &QClass) -> BTreeSet<ProductTerm> {
    let mut by_exponent: BTreeMap<SurfaceClass, (Rational, [Rational; 5], Rational)> =
        BTreeMap::new();
    for (b, beta, c) in x.terms() {
        let entry = by_exponent.entry(*beta).or_insert_with(|| {
            (
                Rational::zero(),
                std::array::from_fn(|_| Rational::zero()),
                Rational::zero(),
            )
        });
        match b {
            Basis::One => entry.0 = c.clone(),
            Basis::Pt => entry.2 = c.clone(),
            d => entry.1[d.index() - 1] = c.clone(),
        }
    }
    let mut out = BTreeSet::new();
    for (exponent, (unit, divisor, point)) in by_exponent {
        if !unit.is_zero() {
            out.insert(ProductTerm {
                exponent,
                part: Part::Unit(unit),
            });
        }
        if divisor.iter().any(|c| !c.is_zero()) {
            out.insert(ProductTerm {
                exponent,
                part: Part::Divisor(DivisorPart(divisor)),
            });
        }
        if !point.is_zero() {
            out.insert(ProductTerm {
                exponent,
                part: Part::Point(point),
            });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMismatch {
    pub exponent: SurfaceClass,
    pub literal: DivisorPart,
    pub strict: DivisorPart,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDiscrepancy {
    pub relation: String,
    pub left: String,
    pub right: String,
    pub literal_only: Vec<ProductTerm>,
    pub strict_only: Vec<ProductTerm>,
    pub shared_exponents: Vec<SurfaceClass>,
    pub class_mismatches: Vec<ClassMismatch>,
    /// The `q^0` point coefficients agree.
    pub classical_agrees: bool,
}

fn divisor_at(terms: &BTreeSet<ProductTerm>, exponent: &SurfaceClass) -> Option<DivisorPart> {
    terms.iter().find_map(|t| match &t.part {
        Part::Divisor(d) if t.exponent == *exponent => Some(d.clone()),
        _ => None,
    })
}

pub fn compare_products(relation: &str, left: &str, right: &str, literal: &QClass, strict: &QClass) -> PairDiscrepancy {
    let lit = product_terms(literal);
    let st = product_terms(strict);
    let literal_only: Vec<_> = lit.difference(&st).cloned().collect();
    let strict_only: Vec<_> = st.difference(&lit).cloned().collect();
    let lit_exp: BTreeSet<_> = lit.iter().map(|t| t.exponent).collect();
    let st_exp: BTreeSet<_> = st.iter().map(|t| t.exponent).collect();
    let shared_exponents: Vec<_> = lit_exp.intersection(&st_exp).copied().collect();
    let class_mismatches = shared_exponents
        .iter()
        .filter_map(|e| match (divisor_at(&lit, e), divisor_at(&st, e)) {
            (Some(a), Some(b)) if a != b => Some(ClassMismatch {
                exponent: *e,
                literal: a,
                strict: b,
            }),
            _ => None,
        })
        .collect();
    let classical = |x: &QClass| x.component(Basis::Pt).at_q_zero();
    PairDiscrepancy {
        relation: relation.to_string(),
        left: left.to_string(),
        right: right.to_string(),
        literal_only,
        strict_only,
        shared_exponents,
        class_mismatches,
        classical_agrees: classical(literal) == classical(strict),
    }
}

/// Literal against strict products on the five relation pairs, in relation order.
pub fn discrepancy_report() -> Vec<PairDiscrepancy> {
    keel_vanishing_pairs_5()
        .into_iter()
        .enumerate()
        .map(|(i, (l, r))| {
            let a = dictionary_image(&l).expect("Keel pairs lie in B_5");
            let b = dictionary_image(&r).expect("Keel pairs lie in B_5");
            compare_products(
                &format!("f{}*", i + 1),
                &format!("{l}={a}"),
                &format!("{r}={b}"),
                &qmul_divisors(Mode::Literal, &a, &b),
                &qmul_divisors(Mode::Strict, &a, &b),
            )
        })
        .collect()
}

impl PairDiscrepancy {
    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {} * {}\n", self.relation, self.left, self.right);
        out.push_str(&format!("  literal-only ({}):\n", self.literal_only.len()));
        for t in &self.literal_only {
            out.push_str(&format!("    {t}\n"));
        }
        out.push_str(&format!("  strict-only ({}):\n", self.strict_only.len()));
        for t in &self.strict_only {
            out.push_str(&format!("    {t}\n"));
        }
        let shared: Vec<String> = self.shared_exponents.iter().map(q_label).collect();
        out.push_str(&format!("  shared exponents: [{}]\n", shared.join(", ")));
        for m in &self.class_mismatches {
            out.push_str(&format!(
                "  class mismatch at {}: literal {} vs strict {}\n",
                q_label(&m.exponent),
                m.literal,
                m.strict
            ));
        }
        out.push_str(&format!("  classical part agrees: {}\n", self.classical_agrees));
        out
    }

    pub fn to_json(&self) -> Value {
        let terms = |ts: &[ProductTerm]| ts.iter().map(ToString::to_string).collect::<Vec<_>>();
        json!({
            "relation": self.relation,
            "left": self.left,
            "right": self.right,
            "literal_only": terms(&self.literal_only),
            "strict_only": terms(&self.strict_only),
            "shared_exponents": self.shared_exponents.iter().map(q_label).collect::<Vec<_>>(),
            "class_mismatches": self.class_mismatches.iter().map(|m| json!({
                "q": q_label(&m.exponent),
                "literal": m.literal.to_string(),
                "strict": m.strict.to_string(),
            })).collect::<Vec<_>>(),
            "classical_agrees": self.classical_agrees,
        })
    }
}
