//! Finite families of equal-length ternary vectors.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::supports::binomial;
use crate::vector::{Support, TernaryVector, MAX_LEN};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family length {0} exceeds the supported maximum of {MAX_LEN}")]
    TooLong(usize),
    #[error("vector length {got} does not match family length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("duplicate vector {0}")]
    Duplicate(TernaryVector),
    #[error("coordinate {coord} out of range for length {len}")]
    CoordOutOfRange { coord: usize, len: usize },
}

/// Which vectors a projection keeps: those with entry 0 at the projected
/// coordinate, or those with a non-zero entry there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Zero,
    NonZero,
}

/// A duplicate-free set of vectors sharing a common length, kept in insertion
/// order so clash witnesses are deterministic.
#[derive(Clone)]
pub struct VectorFamily {
    len: usize,
    vectors: Vec<TernaryVector>,
    seen: HashSet<TernaryVector>,
}

impl VectorFamily {
    pub fn new(len: usize) -> Result<Self, FamilyError> {
        if len > MAX_LEN {
            return Err(FamilyError::TooLong(len));
        }
        Ok(Self { len, vectors: Vec::new(), seen: HashSet::new() })
    }

    pub fn from_vectors(
        len: usize,
        vectors: impl IntoIterator<Item = TernaryVector>,
    ) -> Result<Self, FamilyError> {
        let mut family = Self::new(len)?;
        for v in vectors {
            family.push(v)?;
        }
        Ok(family)
    }

    /// Adds a vector; duplicates are rejected since a duplicate is a
    /// degenerate pair clash (equal supports).
    pub fn push(&mut self, v: TernaryVector) -> Result<(), FamilyError> {
        if v.len() != self.len {
            return Err(FamilyError::LengthMismatch { expected: self.len, got: v.len() });
        }
        if !self.seen.insert(v) {
            return Err(FamilyError::Duplicate(v));
        }
        self.vectors.push(v);
        Ok(())
    }

    /// Common vector length m.
    pub fn len_m(&self) -> usize {
        self.len
    }

    /// Number of vectors.
    pub fn size(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[TernaryVector] {
        &self.vectors
    }

    pub fn contains(&self, v: &TernaryVector) -> bool {
        self.seen.contains(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &TernaryVector> {
        self.vectors.iter()
    }

    /// The unique member with the given support, if any.
    pub fn find_by_support(&self, s: &Support) -> Option<&TernaryVector> {
        self.vectors.iter().find(|v| v.support() == *s)
    }

    /// Entrywise star of the whole family.
    pub fn star(&self) -> VectorFamily {
        let mut out = VectorFamily::new(self.len).expect("length already validated");
        for v in &self.vectors {
            out.push(v.star()).expect("star preserves distinctness");
        }
        out
    }

    /// True iff the family is an I(m,w) set: one vector for each of the
    /// C(m,w) size-w supports. Equivalently: the right cardinality, every
    /// vector of weight w, and all supports distinct. For w > m this holds
    /// vacuously for the empty family, matching the projection identities.
    pub fn is_i_set(&self, m: usize, w: usize) -> bool {
        if self.len != m {
            return false;
        }
        if self.vectors.len() as u128 != binomial(m, w) {
            return false;
        }
        let mut supports = HashSet::with_capacity(self.vectors.len());
        self.vectors
            .iter()
            .all(|v| v.weight() == w && supports.insert(v.support()))
    }

    /// Deletes `coord` from every vector whose entry there matches `branch`,
    /// discarding the rest.
    ///
    /// Projections of distinct vectors can coincide (on the `NonZero` branch
    /// only); the result keeps one copy, preserving set semantics.
    pub fn project(&self, coord: usize, branch: Branch) -> Result<VectorFamily, FamilyError> {
        if coord >= self.len {
            return Err(FamilyError::CoordOutOfRange { coord, len: self.len });
        }
        let mut out = VectorFamily::new(self.len - 1)?;
        for v in &self.vectors {
            let keep = match branch {
                Branch::Zero => v.get(coord) == 0,
                Branch::NonZero => v.get(coord) != 0,
            };
            if keep {
                let projected = v.delete_coord(coord);
                if !out.contains(&projected) {
                    out.push(projected)?;
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for VectorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorFamily(m={}, {:?})", self.len, self.vectors)
    }
}

impl PartialEq for VectorFamily {
    /// Families compare as sets: same length and same members, order aside.
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.seen == other.seen
    }
}

impl Eq for VectorFamily {}

impl<'a> IntoIterator for &'a VectorFamily {
    type Item = &'a TernaryVector;
    type IntoIter = std::slice::Iter<'a, TernaryVector>;

    fn into_iter(self) -> Self::IntoIter {
        self.vectors.iter()
    }
}
