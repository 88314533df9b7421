//! The rank-5 Picard lattice of the plane blown up at four general points.
//!
//! A class is stored as `(d; b1, b2, b3, b4)` meaning `d H - sum b_i E_i`, the
//! same convention as the `q^{a,(b1,b2,b3,b4)}` exponent labels. The lattice
//! serves both as divisor classes and curve classes (the surface is a surface,
//! so `H^2` and `H_2` coincide under Poincare duality).

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `d H - sum b_i E_i`.
///
/// Ordered by the exponent label (see [`SurfaceClass::q_key`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceClass {
    pub d: i64,
    pub b: [i64; 4],
}

impl SurfaceClass {
    pub const ZERO: SurfaceClass = SurfaceClass { d: 0, b: [0; 4] };
    pub const H: SurfaceClass = SurfaceClass { d: 1, b: [0; 4] };

    pub const fn new(d: i64, b: [i64; 4]) -> Self {
        SurfaceClass { d, b }
    }

    /// The exceptional class `E_i` for `i` in `1..=4`.
    pub fn exceptional(i: usize) -> Self {
        assert!((1..=4).contains(&i), "exceptional index {i} out of range");
        let mut b = [0; 4];
        b[i - 1] = -1;
        SurfaceClass { d: 0, b }
    }

    /// The line class `H - E_i - E_j`.
    pub fn line_through(i: usize, j: usize) -> Self {
        assert!(i != j);
        Self::H - Self::exceptional(i) - Self::exceptional(j)
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    /// The pair `(a, (b1..b4))` shown in `q^{a,(b1,b2,b3,b4)}`. Classes with
    /// `d = 0` are written by their exceptional multiplicities, so `E_i` is
    /// `q^{0,e_i}`; otherwise the stored `b` is shown as is.
    pub fn q_key(&self) -> (i64, [i64; 4]) {
        if self.d == 0 {
            (0, self.b.map(|x| -x))
        } else {
            (self.d, self.b)
        }
    }

    /// Inverse of [`SurfaceClass::q_key`].
    pub fn from_q_key(a: i64, b: [i64; 4]) -> Self {
        if a == 0 {
            SurfaceClass::new(0, b.map(|x| -x))
        } else {
            SurfaceClass::new(a, b)
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        SurfaceClass {
            d: checked_mul(self.d, k),
            b: self.b.map(|x| checked_mul(x, k)),
        }
    }

    /// Coordinates in the divisor basis `(H, E1, E2, E3, E4)`.
    pub fn basis_coords(&self) -> [i64; 5] {
        [self.d, -self.b[0], -self.b[1], -self.b[2], -self.b[3]]
    }

    pub fn from_basis_coords(c: [i64; 5]) -> Self {
        SurfaceClass {
            d: c[0],
            b: [-c[1], -c[2], -c[3], -c[4]],
        }
    }
}

impl Ord for SurfaceClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.q_key().cmp(&other.q_key())
    }
}

impl PartialOrd for SurfaceClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("lattice arithmetic overflow")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("lattice arithmetic overflow")
}

impl Add for SurfaceClass {
    type Output = SurfaceClass;
    fn add(self, rhs: Self) -> Self {
        SurfaceClass {
            d: checked_add(self.d, rhs.d),
            b: std::array::from_fn(|i| checked_add(self.b[i], rhs.b[i])),
        }
    }
}

impl Neg for SurfaceClass {
    type Output = SurfaceClass;
    fn neg(self) -> Self {
        self.scale(-1)
    }
}

impl Sub for SurfaceClass {
    type Output = SurfaceClass;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl std::iter::Sum for SurfaceClass {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(SurfaceClass::ZERO, |acc, x| acc + x)
    }
}

/// Prints in the divisor notation, e.g. `H-E1-E4`, `2H-E1-E2-E3-E4`, `E3`, `0`.
impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords = self.basis_coords();
        let names = ["H", "E1", "E2", "E3", "E4"];
        let mut out = String::new();
        for (c, name) in coords.iter().zip(names) {
            if *c == 0 {
                continue;
            }
            if *c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// Parses the divisor notation `[-]?(\d*H)?([+-]\d*E[1-4])*`, plus the literal `0`.
impl std::str::FromStr for SurfaceClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("malformed class literal {s:?}"));
        let s = s.trim();
        if s == "0" {
            return Ok(SurfaceClass::ZERO);
        }
        let bytes = s.as_bytes();
        if bytes.is_empty() {
            return Err(err());
        }
        let mut pos = 0;
        let mut coords = [0i64; 5];
        let mut seen = [false; 5];
        let mut first = true;
        while pos < bytes.len() {
            let sign = match bytes[pos] {
                b'-' => {
                    pos += 1;
                    -1
                }
                b'+' if !first => {
                    pos += 1;
                    1
                }
                _ if first => 1,
                _ => return Err(err()),
            };
            let digits_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let magnitude = if pos == digits_start {
                1
            } else {
                s[digits_start..pos].parse::<i64>().map_err(|_| err())?
            };
            let slot = match bytes.get(pos) {
                Some(b'H') if first => {
                    pos += 1;
                    0
                }
                Some(b'E') => {
                    pos += 1;
                    match bytes.get(pos) {
                        Some(c @ b'1'..=b'4') => {
                            pos += 1;
                            (c - b'0') as usize
                        }
                        _ => return Err(err()),
                    }
                }
                _ => return Err(err()),
            };
            if seen[slot] {
                return Err(err());
            }
            seen[slot] = true;
            coords[slot] = sign * magnitude;
            first = false;
        }
        Ok(SurfaceClass::from_basis_coords(coords))
    }
}

/// Intersection pairing `d_a d_b - sum b_i(a) b_i(b)`.
pub fn intersect(a: &SurfaceClass, b: &SurfaceClass) -> i64 {
    let mut acc = checked_mul(a.d, b.d);
    for i in 0..4 {
        acc = checked_add(acc, -checked_mul(a.b[i], b.b[i]));
    }
    acc
}

/// `-K = 3H - E1 - E2 - E3 - E4`.
pub const ANTICANONICAL: SurfaceClass = SurfaceClass::new(3, [1, 1, 1, 1]);

pub fn anticanonical_degree(beta: &SurfaceClass) -> i64 {
    intersect(&ANTICANONICAL, beta)
}

/// Generators of the effective cone, in the fixed order `D1..D10`.
pub const GENERATORS: [SurfaceClass; 10] = [
    SurfaceClass::new(1, [1, 1, 0, 0]),
    SurfaceClass::new(1, [1, 0, 1, 0]),
    SurfaceClass::new(1, [1, 0, 0, 1]),
    SurfaceClass::new(1, [0, 1, 1, 0]),
    SurfaceClass::new(1, [0, 1, 0, 1]),
    SurfaceClass::new(1, [0, 0, 1, 1]),
    SurfaceClass::new(0, [-1, 0, 0, 0]),
    SurfaceClass::new(0, [0, -1, 0, 0]),
    SurfaceClass::new(0, [0, 0, -1, 0]),
    SurfaceClass::new(0, [0, 0, 0, -1]),
];

/// Calls `visit` with every `c` in N^10 with `sum c_i D_i = beta`, in
/// ascending lexicographic order.
///
/// The H-coefficient of `sum c_i D_i` is `c_1 + ... + c_6`, and once the line
/// coefficients are fixed the exceptional ones are forced:
/// `c_{6+j} = (number of chosen lines through j) - b_j`. So the search runs
/// over compositions of `d` into six parts, which is exhaustive over all `c`
/// with `sum c = -K.beta`. Stops early when `visit` returns `false`.
fn for_each_decomposition(beta: &SurfaceClass, mut visit: impl FnMut(&[u32; 10]) -> bool) {
    if beta.d < 0 || anticanonical_degree(beta) < 0 {
        return;
    }
    fn rec(
        beta: &SurfaceClass,
        c: &mut [u32; 10],
        idx: usize,
        remaining: i64,
        visit: &mut dyn FnMut(&[u32; 10]) -> bool,
    ) -> bool {
        if idx == 6 {
            if remaining != 0 {
                return true;
            }
            for j in 0..4 {
                let through_j: i64 = (0..6)
                    .filter(|i| GENERATORS[*i].b[j] == 1)
                    .map(|i| i64::from(c[i]))
                    .sum();
                let forced = through_j - beta.b[j];
                if forced < 0 {
                    return true;
                }
                c[6 + j] = forced as u32;
            }
            let keep_going = visit(c);
            c[6..].fill(0);
            return keep_going;
        }
        for k in 0..=remaining {
            c[idx] = k as u32;
            if !rec(beta, c, idx + 1, remaining - k, visit) {
                c[idx] = 0;
                return false;
            }
        }
        c[idx] = 0;
        true
    }
    let mut c = [0u32; 10];
    rec(beta, &mut c, 0, beta.d, &mut visit);
}

/// All `c` in N^10 with `sum c_i D_i = beta`, sorted ascending. Empty means
/// `beta` lies outside the effective cone.
pub fn effective_decompositions(beta: &SurfaceClass) -> Vec<[u32; 10]> {
    let mut found = Vec::new();
    for_each_decomposition(beta, |c| {
        found.push(*c);
        true
    });
    found.sort();
    found
}

pub fn is_effective(beta: &SurfaceClass) -> bool {
    let mut hit = false;
    for_each_decomposition(beta, |_| {
        hit = true;
        false
    });
    hit
}

/// Effective classes of anticanonical degree `k`; empty for negative `k`.
pub fn classes_of_anticanonical_degree(k: i64) -> BTreeSet<SurfaceClass> {
    let mut out = BTreeSet::new();
    if k < 0 {
        return out;
    }
    // Sums over multisets of generators; order inside the multiset is irrelevant.
    fn rec(start: usize, left: i64, acc: SurfaceClass, out: &mut BTreeSet<SurfaceClass>) {
        if left == 0 {
            out.insert(acc);
            return;
        }
        for i in start..GENERATORS.len() {
            rec(i, left - 1, acc + GENERATORS[i], out);
        }
    }
    rec(0, k, SurfaceClass::ZERO, &mut out);
    out
}

/// Nonzero effective classes up to anticanonical degree 4, cached. Every
/// three-point invariant on the surface is supported in this range.
pub(crate) fn effective_classes_up_to_degree_4() -> &'static [SurfaceClass] {
    static CACHE: OnceLock<Vec<SurfaceClass>> = OnceLock::new();
    CACHE.get_or_init(|| (1..=4).flat_map(classes_of_anticanonical_degree).collect())
}

/// Effective classes with self-intersection -1 and anticanonical degree 1.
pub fn minus_one_curves() -> BTreeSet<SurfaceClass> {
    classes_of_anticanonical_degree(1)
        .into_iter()
        .filter(|c| intersect(c, c) == -1)
        .collect()
}

/// `q^{a,(b1,b2,b3,b4)}` for an effective class.
pub fn q_name(beta: &SurfaceClass) -> Result<String> {
    if !is_effective(beta) {
        return Err(Error::NotEffective(*beta));
    }
    Ok(q_label(beta))
}

/// Unchecked form of [`q_name`] for exponents already known to be effective.
pub(crate) fn q_label(beta: &SurfaceClass) -> String {
    let (a, [b1, b2, b3, b4]) = beta.q_key();
    format!("q^{{{a},({b1},{b2},{b3},{b4})}}")
}
