//! Closed-form admissible I(m,w) families.
//!
//! The known constructions: weight-1 vectors of type 1, weight-2 of type 12,
//! weight-3 of type 121, the pairwise comparison family for w = m−1, and a
//! single vector for w = m. The general 4 ≤ w ≤ m−2 range has no closed form
//! and belongs to the search module.

use thiserror::Error;

use crate::family::VectorFamily;
use crate::supports::{enumerate_supports, SeedOrder};
use crate::typed::TypeSeq;
use crate::vector::{TernaryVector, MAX_LEN};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("length {0} exceeds the supported maximum of {MAX_LEN}")]
    TooLong(usize),
    #[error("type of length {type_len} does not fit in {m} coordinates")]
    TypeTooLong { type_len: usize, m: usize },
    #[error("no closed-form I({m},{w}) construction: supported w are 1, 2, 3, m-1 and m")]
    UnsupportedWeight { m: usize, w: usize },
}

/// For every size-|t| support, the unique vector whose sorted support
/// positions carry the entries of t. Always an I(m,|t|) set; admissibility
/// depends on t.
pub fn typed_family(m: usize, t: &TypeSeq) -> Result<VectorFamily, ConstructError> {
    if m > MAX_LEN {
        return Err(ConstructError::TooLong(m));
    }
    if t.len() > m {
        return Err(ConstructError::TypeTooLong { type_len: t.len(), m });
    }
    let mut family = VectorFamily::new(m).expect("length validated");
    for support in enumerate_supports(m, t.len(), SeedOrder::Colex) {
        let mut entries = vec![0u8; m];
        for (p, coord) in support.iter().enumerate() {
            entries[coord] = t.get(p).expect("support size equals type length");
        }
        let v = TernaryVector::from_entries(&entries).expect("entries in range");
        family.push(v).expect("distinct supports give distinct vectors");
    }
    Ok(family)
}

/// The closed-form I(m,w) admissible set for w ∈ {1, 2, 3, m−1, m}.
///
/// Dispatch order matters where the cases overlap (small m): w = m wins,
/// then w = m−1, then the typed families.
pub fn construct_i(m: usize, w: usize) -> Result<VectorFamily, ConstructError> {
    if m > MAX_LEN {
        return Err(ConstructError::TooLong(m));
    }
    if w == 0 || w > m {
        return Err(ConstructError::UnsupportedWeight { m, w });
    }
    if w == m {
        // the all-1 vector, chosen among the 2^m admissible singletons for
        // determinism
        let v = TernaryVector::from_entries(&vec![1u8; m]).expect("entries in range");
        return Ok(VectorFamily::from_vectors(m, [v]).expect("single vector"));
    }
    if w == m - 1 {
        // v(i) has a hole at i, 1s after it and 2s before it
        let mut family = VectorFamily::new(m).expect("length validated");
        for i in 0..m {
            let mut entries = vec![0u8; m];
            for (j, slot) in entries.iter_mut().enumerate() {
                *slot = match j.cmp(&i) {
                    std::cmp::Ordering::Greater => 1,
                    std::cmp::Ordering::Less => 2,
                    std::cmp::Ordering::Equal => 0,
                };
            }
            let v = TernaryVector::from_entries(&entries).expect("entries in range");
            family.push(v).expect("distinct holes give distinct vectors");
        }
        return Ok(family);
    }
    let t = match w {
        1 => TypeSeq::new([1]),
        2 => TypeSeq::new([1, 2]),
        3 => TypeSeq::new([1, 2, 1]),
        _ => return Err(ConstructError::UnsupportedWeight { m, w }),
    }
    .expect("literal type entries");
    typed_family(m, &t)
}
