use std::collections::BTreeSet;

use proptest::prelude::*;

use qcoh::gw::{one_point_literal, three_point, Insertion, Mode};
use qcoh::lattice::{
    anticanonical_degree, classes_of_anticanonical_degree, effective_decompositions, intersect,
    is_effective, SurfaceClass,
};
use qcoh::moduli::{boundary_classes, pic_basis};
use qcoh::quantum::{qmul_literal, qmul_strict, strict_table};
use qcoh::threefold::{symbol_product, triple_product, Symbol, ThreefoldDivisor};
use qcoh::{Basis, QClass, QPolynomial, Rational};

fn small_class() -> impl Strategy<Value = SurfaceClass> {
    (-4i64..=4, prop::array::uniform4(-3i64..=3)).prop_map(|(d, b)| SurfaceClass::new(d, b))
}

fn effective_class() -> impl Strategy<Value = SurfaceClass> {
    let pool: Vec<SurfaceClass> = (1..=4).flat_map(classes_of_anticanonical_degree).collect();
    prop::sample::select(pool)
}

fn insertion() -> impl Strategy<Value = Insertion> {
    prop_oneof![
        1 => Just(Insertion::Fundamental),
        4 => small_class().prop_map(Insertion::Divisor),
        2 => Just(Insertion::Point),
    ]
}

fn basis_elem() -> impl Strategy<Value = Basis> {
    prop::sample::select(Basis::ALL.to_vec())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn qpoly() -> impl Strategy<Value = QPolynomial> {
    prop::collection::vec((effective_class(), rational()), 0..3).prop_map(|terms| {
        terms.into_iter().fold(QPolynomial::zero(), |acc, (beta, c)| {
            &acc + &QPolynomial::monomial(beta, c).unwrap()
        })
    })
}

fn qclass() -> impl Strategy<Value = QClass> {
    prop::collection::vec((basis_elem(), qpoly()), 0..3).prop_map(|parts| {
        parts.into_iter().fold(QClass::zero(), |acc, (b, p)| {
            &acc + &QClass::basis(b).scale(&p)
        })
    })
}

proptest! {
    #[test]
    fn intersect_is_symmetric_and_bilinear(a in small_class(), b in small_class(), c in small_class(), k in -3i64..=3) {
        prop_assert_eq!(intersect(&a, &b), intersect(&b, &a));
        prop_assert_eq!(intersect(&(a + b), &c), intersect(&a, &c) + intersect(&b, &c));
        prop_assert_eq!(intersect(&a.scale(k), &c), k * intersect(&a, &c));
    }

    #[test]
    fn decomposable_classes_have_nonnegative_degree(beta in small_class()) {
        if !effective_decompositions(&beta).is_empty() {
            prop_assert!(anticanonical_degree(&beta) >= 0);
            prop_assert!(is_effective(&beta));
        }
    }

    #[test]
    fn three_point_is_order_independent(beta in effective_class(), a in insertion(), b in insertion(), c in insertion()) {
        let strict = three_point(Mode::Strict, &beta, &a, &b, &c).unwrap();
        for [x, y, z] in [[&a, &c, &b], [&b, &a, &c], [&b, &c, &a], [&c, &a, &b], [&c, &b, &a]] {
            prop_assert_eq!(&three_point(Mode::Strict, &beta, x, y, z).unwrap(), &strict);
        }
        if let Ok(literal) = three_point(Mode::Literal, &beta, &a, &b, &c) {
            for [x, y, z] in [[&a, &c, &b], [&b, &a, &c], [&c, &b, &a]] {
                prop_assert_eq!(&three_point(Mode::Literal, &beta, x, y, z).unwrap(), &literal);
            }
        }
    }

    #[test]
    fn strict_invariants_respect_dimension(beta in effective_class(), a in insertion(), b in insertion(), c in insertion()) {
        let v = three_point(Mode::Strict, &beta, &a, &b, &c).unwrap();
        if v != Rational::from_integer(0.into()) {
            let codim = a.codimension() + b.codimension() + c.codimension();
            prop_assert_eq!(codim, anticanonical_degree(&beta) + 2);
        }
    }

    #[test]
    fn literal_product_is_symmetric_and_bilinear(a in small_class(), b in small_class(), c in small_class()) {
        prop_assert_eq!(qmul_literal(&a, &b), qmul_literal(&b, &a));
        prop_assert_eq!(qmul_literal(&(a + b), &c), &qmul_literal(&a, &c) + &qmul_literal(&b, &c));
    }

    #[test]
    fn strict_product_is_bilinear(x in qclass(), y in qclass(), z in qclass(), p in qpoly()) {
        let lhs = qmul_strict(&(&x.scale(&p) + &y), &z);
        let rhs = &qmul_strict(&x, &z).scale(&p) + &qmul_strict(&y, &z);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(qmul_strict(&x, &y), qmul_strict(&y, &x));
    }

    #[test]
    fn products_specialize_to_cup_product(a in small_class(), b in small_class()) {
        let mut cup = QClass::zero();
        cup.add_term(Basis::Pt, SurfaceClass::ZERO, Rational::from_integer(intersect(&a, &b).into()));
        prop_assert_eq!(qmul_literal(&a, &b).at_q_zero(), cup.clone());
        prop_assert_eq!(qmul_strict(&QClass::divisor(&a), &QClass::divisor(&b)).at_q_zero(), cup);
    }

    #[test]
    fn threefold_product_is_symmetric_and_trilinear(
        h in prop::array::uniform3(-2i64..=2),
        p in prop::array::uniform3(prop::array::uniform2(-2i64..=2)),
        line in -2i64..=2,
    ) {
        let build = |i: usize| {
            ThreefoldDivisor::pullback(h[i])
                .plus(Symbol::Point(1), p[i][0])
                .plus(Symbol::Point(2), p[i][1])
        };
        let (x, y, z) = (build(0), build(1), build(2));
        // one line-type symbol in a single slot stays within the rule set
        let x_line = x.clone().plus(Symbol::Line(1, 2), line);
        let v = triple_product(&x_line, &y, &z).unwrap();
        prop_assert_eq!(triple_product(&y, &x_line, &z).unwrap(), v);
        prop_assert_eq!(triple_product(&z, &y, &x_line).unwrap(), v);
        prop_assert_eq!(v, triple_product(&x, &y, &z).unwrap() + line * triple_product(&ThreefoldDivisor::line(1, 2), &y, &z).unwrap());

        // confluence: expanding into monomials first gives the same integer
        let mut expanded = 0i64;
        for (s1, c1) in x_line.terms() {
            for (s2, c2) in y.terms() {
                for (s3, c3) in z.terms() {
                    expanded += c1 * c2 * c3 * symbol_product([s1, s2, s3]).unwrap();
                }
            }
        }
        prop_assert_eq!(expanded, v);
    }
}

#[test]
fn literal_support_is_finite_and_exact() {
    let mut support = BTreeSet::new();
    for k in 0..=6 {
        for beta in classes_of_anticanonical_degree(k) {
            let ts = [
                Insertion::Fundamental,
                Insertion::Point,
                Insertion::Divisor(SurfaceClass::H),
                Insertion::Divisor(SurfaceClass::exceptional(1)),
                Insertion::Divisor(SurfaceClass::exceptional(2)),
                Insertion::Divisor(SurfaceClass::exceptional(3)),
                Insertion::Divisor(SurfaceClass::exceptional(4)),
            ];
            if ts
                .iter()
                .any(|t| one_point_literal(&beta, t).unwrap() != Rational::from_integer(0.into()))
            {
                support.insert(beta);
            }
        }
    }
    let mut expected: BTreeSet<SurfaceClass> = (1..=4).map(SurfaceClass::exceptional).collect();
    for a in 1..=2 {
        for mask in 0..16 {
            let eps = std::array::from_fn(|i| (mask >> i) & 1);
            let beta = SurfaceClass::new(a, eps);
            if is_effective(&beta) {
                expected.insert(beta);
            }
        }
    }
    assert_eq!(support, expected);
}

#[test]
fn strict_table_is_commutative_graded_and_effective() {
    let table = strict_table();
    for a in Basis::ALL {
        for b in Basis::ALL {
            let ab = &table[a.index()][b.index()];
            assert_eq!(ab, &table[b.index()][a.index()]);
            for (basis, beta, _) in ab.terms() {
                assert!(is_effective(beta), "{beta}");
                assert!(anticanonical_degree(beta) <= 4);
                assert_eq!(basis.degree() + anticanonical_degree(beta), a.degree() + b.degree());
            }
        }
    }
}

#[test]
fn literal_table_is_commutative_on_divisors() {
    for a in Basis::DIVISORS {
        for b in Basis::DIVISORS {
            let (x, y) = (a.divisor_class().unwrap(), b.divisor_class().unwrap());
            assert_eq!(qmul_literal(&x, &y), qmul_literal(&y, &x));
        }
    }
}

#[test]
fn pic_basis_counts_and_history() {
    for n in 4u8..=10 {
        let basis = pic_basis(n).unwrap();
        let rank = (1usize << (n - 1)) - 1 - (n as usize * (n as usize - 1)) / 2;
        assert_eq!(basis.elements.len(), rank, "n = {n}");
        let distinct: BTreeSet<_> = basis.elements.iter().collect();
        assert_eq!(distinct.len(), rank, "duplicates at n = {n}");
        for e in &basis.elements {
            let size = e.labels().len();
            assert!(size >= 2 && size + 2 <= n as usize);
            assert!(!e.labels().contains(&n));
        }
        if n > 4 {
            let previous = pic_basis(n - 1).unwrap();
            assert_eq!(&basis.raw[..previous.raw.len()], &previous.raw[..]);
        }
        assert_eq!(boundary_classes(n).unwrap().len(), (1usize << (n - 1)) - n as usize - 1);
    }
}
