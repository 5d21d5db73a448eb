//! Ternary vectors over {0,1,2} and their supports.
//!
//! A vector is stored as two parallel bit masks: `nonzero` marks the
//! coordinates with a non-zero entry (the support), `twos` marks the
//! coordinates holding a 2. This keeps the clash predicates word-parallel;
//! the digit-string form is only materialised at the I/O boundary.

use std::fmt;

use thiserror::Error;

/// Hard cap on vector length imposed by the 128-bit mask representation.
pub const MAX_LEN: usize = 128;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VectorError {
    #[error("vector length {0} exceeds the supported maximum of {MAX_LEN}")]
    TooLong(usize),
    #[error("invalid symbol {found:?} at position {pos}: entries must be 0, 1 or 2")]
    InvalidSymbol { pos: usize, found: char },
    #[error("invalid entry value {value} at position {pos}: entries must be 0, 1 or 2")]
    InvalidEntry { pos: usize, value: u8 },
}

/// An element of {0,1,2}^m.
///
/// Vectors of different lengths are distinct values; all family-level
/// operations require a common length.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TernaryVector {
    len: u32,
    nonzero: u128,
    twos: u128,
}

impl TernaryVector {
    /// Builds a vector from explicit entries in {0,1,2}.
    pub fn from_entries(entries: &[u8]) -> Result<Self, VectorError> {
        if entries.len() > MAX_LEN {
            return Err(VectorError::TooLong(entries.len()));
        }
        let mut nonzero = 0u128;
        let mut twos = 0u128;
        for (pos, &value) in entries.iter().enumerate() {
            match value {
                0 => {}
                1 => nonzero |= 1 << pos,
                2 => {
                    nonzero |= 1 << pos;
                    twos |= 1 << pos;
                }
                _ => return Err(VectorError::InvalidEntry { pos, value }),
            }
        }
        Ok(Self { len: entries.len() as u32, nonzero, twos })
    }

    /// Parses a digit string such as `"1210"`.
    pub fn parse(s: &str) -> Result<Self, VectorError> {
        if s.len() > MAX_LEN {
            return Err(VectorError::TooLong(s.len()));
        }
        let mut nonzero = 0u128;
        let mut twos = 0u128;
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => nonzero |= 1 << pos,
                '2' => {
                    nonzero |= 1 << pos;
                    twos |= 1 << pos;
                }
                found => return Err(VectorError::InvalidSymbol { pos, found }),
            }
        }
        Ok(Self { len: s.len() as u32, nonzero, twos })
    }

    pub(crate) fn from_masks(len: usize, nonzero: u128, twos: u128) -> Self {
        debug_assert!(len <= MAX_LEN);
        debug_assert_eq!(twos & !nonzero, 0);
        debug_assert!(len == MAX_LEN || nonzero >> len == 0);
        Self { len: len as u32, nonzero, twos }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The entry at coordinate `i` (0, 1 or 2).
    pub fn get(&self, i: usize) -> u8 {
        assert!(i < self.len(), "coordinate {i} out of range for length {}", self.len);
        if self.nonzero >> i & 1 == 0 {
            0
        } else if self.twos >> i & 1 == 0 {
            1
        } else {
            2
        }
    }

    /// Number of non-zero entries.
    pub fn weight(&self) -> usize {
        self.nonzero.count_ones() as usize
    }

    /// The set of coordinates with a non-zero entry.
    pub fn support(&self) -> Support {
        Support { universe: self.len, bits: self.nonzero }
    }

    pub(crate) fn nonzero_mask(&self) -> u128 {
        self.nonzero
    }

    pub(crate) fn twos_mask(&self) -> u128 {
        self.twos
    }

    /// The value swap 1↔2 applied entrywise. An involution that fixes the
    /// support.
    pub fn star(&self) -> Self {
        Self { len: self.len, nonzero: self.nonzero, twos: self.nonzero & !self.twos }
    }

    /// The non-zero entries in coordinate order (each 1 or 2).
    pub fn nonzero_entries(&self) -> impl Iterator<Item = u8> + '_ {
        let (nonzero, twos) = (self.nonzero, self.twos);
        (0..self.len())
            .filter(move |i| nonzero >> i & 1 == 1)
            .map(move |i| if twos >> i & 1 == 1 { 2 } else { 1 })
    }

    pub fn entries(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// Removes coordinate `coord`, shifting higher coordinates down by one.
    pub(crate) fn delete_coord(&self, coord: usize) -> Self {
        debug_assert!(coord < self.len());
        let low = (1u128 << coord) - 1;
        let squeeze = |mask: u128| (mask & low) | (mask >> 1 & !low);
        Self {
            len: self.len - 1,
            nonzero: squeeze(self.nonzero),
            twos: squeeze(self.twos),
        }
    }
}

impl fmt::Display for TernaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", self.get(i))?;
        }
        Ok(())
    }
}

// Digit strings read better in test output than mask dumps.
impl fmt::Debug for TernaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A subset of the coordinate set {0, …, m−1}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support {
    universe: u32,
    bits: u128,
}

impl Support {
    /// Builds a support over universe `m` from an iterator of coordinates.
    pub fn new(m: usize, members: impl IntoIterator<Item = usize>) -> Result<Self, VectorError> {
        if m > MAX_LEN {
            return Err(VectorError::TooLong(m));
        }
        let mut bits = 0u128;
        for i in members {
            if i >= m {
                return Err(VectorError::InvalidEntry { pos: i, value: u8::MAX });
            }
            bits |= 1 << i;
        }
        Ok(Self { universe: m as u32, bits })
    }

    pub(crate) fn from_bits(m: usize, bits: u128) -> Self {
        debug_assert!(m <= MAX_LEN);
        debug_assert!(m == MAX_LEN || bits >> m == 0);
        Self { universe: m as u32, bits }
    }

    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    pub fn size(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe() && self.bits >> i & 1 == 1
    }

    pub fn is_subset_of(&self, other: &Support) -> bool {
        self.bits & !other.bits == 0
    }

    /// Rank of coordinate `i` among the members in ascending order, if present.
    pub fn position_of(&self, i: usize) -> Option<usize> {
        if !self.contains(i) {
            return None;
        }
        Some((self.bits & ((1u128 << i) - 1)).count_ones() as usize)
    }

    /// The complementary set of coordinates within the same universe.
    pub fn complement(&self) -> Support {
        let full = if self.universe() == MAX_LEN {
            u128::MAX
        } else {
            (1u128 << self.universe) - 1
        };
        Support { universe: self.universe, bits: full & !self.bits }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..self.universe()).filter(move |i| bits >> i & 1 == 1)
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub(crate) fn bits(&self) -> u128 {
        self.bits
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}
