//! Boundary divisors of the moduli space of stable `n`-pointed rational curves.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{intersect, SurfaceClass};

/// A boundary divisor `delta_S` of `M_{0,n}`. `S` and its complement name the
/// same divisor; the stored representative is the side not containing `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryIndex {
    n: u8,
    labels: Vec<u8>,
}

const MAX_LABELS: u8 = 31;

impl BoundaryIndex {
    pub fn new(n: u8, labels: &[u8]) -> Result<Self> {
        if !(3..=MAX_LABELS).contains(&n) {
            return Err(Error::Domain(format!("n = {n} out of range")));
        }
        let set: BTreeSet<u8> = labels.iter().copied().collect();
        if set.len() != labels.len() {
            return Err(Error::Domain(format!("repeated label in {labels:?}")));
        }
        if let Some(bad) = set.iter().find(|l| !(1..=n).contains(*l)) {
            return Err(Error::Domain(format!("label {bad} outside 1..={n}")));
        }
        let size = set.len();
        if size < 2 || size + 2 > n as usize {
            return Err(Error::Domain(format!(
                "|S| = {size} violates 2 <= |S| <= {}",
                n as i64 - 2
            )));
        }
        let labels = if set.contains(&n) {
            complement(n, &set)
        } else {
            set.into_iter().collect()
        };
        Ok(BoundaryIndex { n, labels })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// The canonical representative (the side avoiding `n`), sorted.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn complement_labels(&self) -> Vec<u8> {
        complement(self.n, &self.labels.iter().copied().collect())
    }

    /// The side used for display: the smaller one, ties broken toward the
    /// canonical representative. For `n = 5` this is always the pair.
    pub fn display_labels(&self) -> Vec<u8> {
        let other = self.complement_labels();
        if other.len() < self.labels.len() {
            other
        } else {
            self.labels.clone()
        }
    }

    /// Parses `d{i,j,...}` against a given `n`.
    pub fn parse(n: u8, s: &str) -> Result<Self> {
        let inner = s
            .strip_prefix("d{")
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("malformed boundary index {s:?}")))?;
        let labels = inner
            .split(',')
            .map(|x| x.trim().parse::<u8>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("malformed boundary index {s:?}")))?;
        BoundaryIndex::new(n, &labels)
    }
}

fn complement(n: u8, set: &BTreeSet<u8>) -> Vec<u8> {
    (1..=n).filter(|l| !set.contains(l)).collect()
}

impl fmt::Display for BoundaryIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.display_labels().iter().map(u8::to_string).collect();
        write!(f, "d{{{}}}", labels.join(","))
    }
}

/// All boundary divisors of `M_{0,n}`; there are `2^(n-1) - n - 1`.
pub fn boundary_classes(n: u8) -> Result<BTreeSet<BoundaryIndex>> {
    if !(3..=MAX_LABELS).contains(&n) {
        return Err(Error::Domain(format!("boundary classes need 3 <= n <= {MAX_LABELS}, got {n}")));
    }
    // subsets of 1..n-1 are exactly the representatives avoiding n
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << (n - 1)) {
        let size = mask.count_ones() as usize;
        if size < 2 || size + 2 > n as usize {
            continue;
        }
        let labels: Vec<u8> = (1..n).filter(|l| mask & (1 << (l - 1)) != 0).collect();
        out.insert(BoundaryIndex::new(n, &labels)?);
    }
    Ok(out)
}

/// The inductive basis `B_n` of `Pic(M_{0,n})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicBasis {
    pub n: u8,
    /// Label sets in construction order, before canonicalization.
    pub raw: Vec<Vec<u8>>,
    pub elements: Vec<BoundaryIndex>,
}

pub const PIC_BASIS_MAX_N: u8 = 12;

/// Label sets of `B_n` in construction order, grouped by recursion step
/// (`steps[0]` is `B_4`, `steps[k]` the sets added at `i = k + 4`).
fn pic_basis_steps(n: u8) -> Vec<Vec<Vec<u8>>> {
    let mut steps: Vec<Vec<Vec<u8>>> = vec![vec![vec![2, 3]]];
    for i in 5..=n {
        let mut added = Vec::new();
        // B subset of {1..i-1}, containing i-2 and i-1, 2 <= |B| <= i-2
        let free = i - 3;
        let mut clause_two: Vec<Vec<u8>> = (0u32..(1 << free))
            .filter(|mask| (mask.count_ones() as usize) + 2 <= (i - 2) as usize)
            .map(|mask| {
                let mut b: Vec<u8> = (1..=free).filter(|l| mask & (1 << (l - 1)) != 0).collect();
                b.extend([i - 2, i - 1]);
                b
            })
            .collect();
        clause_two.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        added.extend(clause_two);
        // complements in {1..i} of the sets new at step i-1, with i removed
        let previous = steps.last().expect("B_4 seeds the recursion");
        for b in previous {
            let c: Vec<u8> = (1..i).filter(|l| !b.contains(l)).collect();
            added.push(c);
        }
        steps.push(added);
    }
    steps
}

pub fn pic_basis(n: u8) -> Result<PicBasis> {
    if !(4..=PIC_BASIS_MAX_N).contains(&n) {
        return Err(Error::Domain(format!(
            "pic basis needs 4 <= n <= {PIC_BASIS_MAX_N}, got {n}"
        )));
    }
    let raw: Vec<Vec<u8>> = pic_basis_steps(n).into_iter().flatten().collect();
    let elements = raw
        .iter()
        .map(|labels| BoundaryIndex::new(n, labels))
        .collect::<Result<Vec<_>>>()?;
    Ok(PicBasis { n, raw, elements })
}

fn delta5(i: u8, j: u8) -> BoundaryIndex {
    BoundaryIndex::new(5, &[i, j]).expect("valid n = 5 boundary index")
}

/// Identification of `B_5` with classes on the blow-up of the plane at the
/// points 1..4, with 5 as the special point.
pub fn kapranov_dictionary_5() -> BTreeMap<BoundaryIndex, SurfaceClass> {
    let e = SurfaceClass::exceptional;
    BTreeMap::from([
        (delta5(2, 3), SurfaceClass::line_through(1, 4)),
        (delta5(3, 4), SurfaceClass::line_through(1, 2)),
        (delta5(1, 5), e(1)),
        (delta5(2, 5), e(2)),
        (delta5(1, 4), SurfaceClass::line_through(2, 3)),
    ])
}

pub fn dictionary_image(delta: &BoundaryIndex) -> Result<SurfaceClass> {
    kapranov_dictionary_5()
        .get(delta)
        .copied()
        .ok_or_else(|| Error::Lookup(delta.to_string()))
}

/// The five classical vanishing products, in the order of `f1..f5`.
pub fn keel_vanishing_pairs_5() -> Vec<(BoundaryIndex, BoundaryIndex)> {
    vec![
        (delta5(2, 3), delta5(3, 4)),
        (delta5(2, 3), delta5(2, 5)),
        (delta5(3, 4), delta5(1, 4)),
        (delta5(1, 5), delta5(2, 5)),
        (delta5(1, 5), delta5(1, 4)),
    ]
}

pub fn verify_keel_5() -> bool {
    keel_vanishing_pairs_5().iter().all(|(a, b)| {
        match (dictionary_image(a), dictionary_image(b)) {
            (Ok(x), Ok(y)) => intersect(&x, &y) == 0,
            _ => false,
        }
    })
}
