//! The 8-colouring induced by I(m,m−2) families.
//!
//! An I(m,m−2) family has exactly one member v(i,j) vanishing at each
//! coordinate pair {i,j}. Reading the three cross entries of a coordinate
//! triple i<j<k gives a colour in {1,2}³, and a constant colouring determines
//! the whole family, so monochromatic families can be reconstructed and
//! scanned for clashes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::clash::is_admissible;
use crate::family::VectorFamily;
use crate::vector::{Support, TernaryVector, MAX_LEN};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColouringError {
    #[error("family is not an I({m},{w}) set, as required for pair-vector lookups")]
    NotPairFamily { m: usize, w: usize },
    #[error("pair coordinates must be distinct and within the family length")]
    BadPair,
    #[error("colouring requires m >= 3, got {0}")]
    TooShort(usize),
    #[error("invalid colour {0:?}: colours are 3-character strings over {{1,2}}")]
    BadColour(String),
}

/// An element of {1,2}³, rendered as e.g. "121".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripleColour(pub [u8; 3]);

impl TripleColour {
    pub const ALL: [TripleColour; 8] = [
        TripleColour([1, 1, 1]),
        TripleColour([1, 1, 2]),
        TripleColour([1, 2, 1]),
        TripleColour([1, 2, 2]),
        TripleColour([2, 1, 1]),
        TripleColour([2, 1, 2]),
        TripleColour([2, 2, 1]),
        TripleColour([2, 2, 2]),
    ];

    pub fn star(&self) -> TripleColour {
        TripleColour([3 - self.0[0], 3 - self.0[1], 3 - self.0[2]])
    }
}

impl FromStr for TripleColour {
    type Err = ColouringError;

    fn from_str(s: &str) -> Result<Self, ColouringError> {
        let bytes: Vec<u8> = s
            .chars()
            .map(|c| match c {
                '1' => Ok(1u8),
                '2' => Ok(2u8),
                _ => Err(ColouringError::BadColour(s.to_string())),
            })
            .collect::<Result<_, _>>()?;
        match bytes.as_slice() {
            &[a, b, c] => Ok(TripleColour([a, b, c])),
            _ => Err(ColouringError::BadColour(s.to_string())),
        }
    }
}

impl fmt::Display for TripleColour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.0[0], self.0[1], self.0[2])
    }
}

/// A colour for every 3-subset {i<j<k} of the coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleColouring {
    m: usize,
    colours: BTreeMap<(usize, usize, usize), TripleColour>,
}

impl TripleColouring {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Option<TripleColour> {
        self.colours.get(&(i, j, k)).copied()
    }

    /// The single colour used, if the colouring is constant.
    pub fn constant(&self) -> Option<TripleColour> {
        let mut iter = self.colours.values();
        let first = *iter.next()?;
        iter.all(|&c| c == first).then_some(first)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize, usize), &TripleColour)> {
        self.colours.iter()
    }
}

/// The unique member of an I(m,m−2) family vanishing exactly at {i,j}.
pub fn pair_vector(
    family: &VectorFamily,
    i: usize,
    j: usize,
) -> Result<TernaryVector, ColouringError> {
    let m = family.len_m();
    if m < 2 || !family.is_i_set(m, m - 2) {
        return Err(ColouringError::NotPairFamily { m, w: m.saturating_sub(2) });
    }
    if i == j || i >= m || j >= m {
        return Err(ColouringError::BadPair);
    }
    let support = Support::new(m, [i, j]).expect("members within universe").complement();
    family
        .find_by_support(&support)
        .copied()
        .ok_or(ColouringError::NotPairFamily { m, w: m - 2 })
}

/// The colouring (i,j,k) ↦ (v(i,j)_k, v(i,k)_j, v(j,k)_i) for i<j<k.
pub fn induced_colouring(family: &VectorFamily) -> Result<TripleColouring, ColouringError> {
    let m = family.len_m();
    if m < 3 {
        return Err(ColouringError::TooShort(m));
    }
    if !family.is_i_set(m, m - 2) {
        return Err(ColouringError::NotPairFamily { m, w: m - 2 });
    }
    let mut colours = BTreeMap::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let c = TripleColour([
                    pair_vector(family, i, j)?.get(k),
                    pair_vector(family, i, k)?.get(j),
                    pair_vector(family, j, k)?.get(i),
                ]);
                colours.insert((i, j, k), c);
            }
        }
    }
    Ok(TripleColouring { m, colours })
}

/// The unique I(m,m−2) candidate whose induced colouring is constantly
/// `colour`: for the pair {a<b} and a coordinate x outside it, sorting
/// {a,b,x} as i<j<k places {a,b} as {i,j}, {i,k} or {j,k}, selecting colour
/// component 1, 2 or 3 respectively. Admissibility is *not* guaranteed.
///
/// Panics if m < 3 or m exceeds the representation limit.
pub fn reconstruct_monochromatic(m: usize, colour: TripleColour) -> VectorFamily {
    assert!((3..=MAX_LEN).contains(&m), "reconstruction needs 3 <= m <= {MAX_LEN}");
    let mut family = VectorFamily::new(m).expect("length validated");
    for a in 0..m {
        for b in a + 1..m {
            let mut entries = vec![0u8; m];
            for (x, slot) in entries.iter_mut().enumerate() {
                if x == a || x == b {
                    continue;
                }
                *slot = if x > b {
                    colour.0[0] // {a,b} = {i,j}
                } else if x > a {
                    colour.0[1] // {a,b} = {i,k}
                } else {
                    colour.0[2] // {a,b} = {j,k}
                };
            }
            let v = TernaryVector::from_entries(&entries).expect("entries in range");
            family.push(v).expect("pair supports are distinct");
        }
    }
    family
}

/// The largest m ≤ m_max for which the monochromatic reconstruction is
/// admissible. A clash survives the extension from m to m+1 (the new
/// coordinate is non-zero in all three vectors), so the scan can stop at the
/// first inadmissible length.
pub fn monochromatic_frontier(colour: TripleColour, m_max: usize) -> usize {
    assert!(m_max >= 3, "frontier scan starts at m = 3");
    let mut best = 0;
    for m in 3..=m_max.min(MAX_LEN) {
        if is_admissible(&reconstruct_monochromatic(m, colour)) {
            best = m;
        } else {
            break;
        }
    }
    best
}
