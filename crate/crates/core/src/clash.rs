//! The two clash predicates and the family-level clash scan.
//!
//! Two vectors clash when their supports are nested (non-strictly, so equal
//! supports clash). Three vectors clash when no coordinate witnesses against
//! them: a witness coordinate is one where exactly one vector is non-zero, or
//! where exactly two are non-zero with different values.

use thiserror::Error;

use crate::family::VectorFamily;
use crate::vector::TernaryVector;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClashError {
    #[error("vector lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

/// True iff one support contains the other (non-strictly).
pub fn is_pair_clash(u: &TernaryVector, v: &TernaryVector) -> Result<bool, ClashError> {
    if u.len() != v.len() {
        return Err(ClashError::LengthMismatch(u.len(), v.len()));
    }
    Ok(pair_clash_masks(u, v))
}

#[inline]
pub(crate) fn pair_clash_masks(u: &TernaryVector, v: &TernaryVector) -> bool {
    let a = u.nonzero_mask();
    let b = v.nonzero_mask();
    a & !b == 0 || b & !a == 0
}

/// True iff no coordinate witnesses against the triple.
///
/// This is the word-parallel implementation; [`is_triple_clash_scalar`] is an
/// independent per-coordinate reference kept for differential testing.
pub fn is_triple_clash(
    a: &TernaryVector,
    b: &TernaryVector,
    c: &TernaryVector,
) -> Result<bool, ClashError> {
    if a.len() != b.len() {
        return Err(ClashError::LengthMismatch(a.len(), b.len()));
    }
    if a.len() != c.len() {
        return Err(ClashError::LengthMismatch(a.len(), c.len()));
    }
    Ok(triple_clash_masks(a, b, c))
}

#[inline]
pub(crate) fn triple_clash_masks(a: &TernaryVector, b: &TernaryVector, c: &TernaryVector) -> bool {
    let (x, y, z) = (a.nonzero_mask(), b.nonzero_mask(), c.nonzero_mask());
    let triple = x & y & z;
    // coordinates where exactly one vector is non-zero
    let exactly_one = (x ^ y ^ z) & !triple;
    // coordinates where exactly two are non-zero and those two values differ
    let (ta, tb, tc) = (a.twos_mask(), b.twos_mask(), c.twos_mask());
    let two_unequal = (x & y & !z & (ta ^ tb))
        | (x & !y & z & (ta ^ tc))
        | (!x & y & z & (tb ^ tc));
    (exactly_one | two_unequal) == 0
}

/// Per-coordinate reference implementation of the triple clash.
///
/// Uses the alternative witness clause "all three values pairwise distinct"
/// in place of "exactly two non-zero and unequal"; over {0,1,2} the two
/// formulations agree, which the test suite checks exhaustively.
pub fn is_triple_clash_scalar(
    a: &TernaryVector,
    b: &TernaryVector,
    c: &TernaryVector,
) -> Result<bool, ClashError> {
    if a.len() != b.len() {
        return Err(ClashError::LengthMismatch(a.len(), b.len()));
    }
    if a.len() != c.len() {
        return Err(ClashError::LengthMismatch(a.len(), c.len()));
    }
    for i in 0..a.len() {
        let (va, vb, vc) = (a.get(i), b.get(i), c.get(i));
        let nonzeros = (va != 0) as u8 + (vb != 0) as u8 + (vc != 0) as u8;
        if nonzeros == 1 {
            return Ok(false);
        }
        if va != vb && va != vc && vb != vc {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A pair or triple of family members on which the corresponding clash
/// predicate holds. Indices refer to the family's vector order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClashWitness {
    Pair {
        indices: (usize, usize),
        vectors: (TernaryVector, TernaryVector),
    },
    Triple {
        indices: (usize, usize, usize),
        vectors: (TernaryVector, TernaryVector, TernaryVector),
    },
}

impl ClashWitness {
    pub fn vectors(&self) -> Vec<TernaryVector> {
        match self {
            ClashWitness::Pair { vectors: (a, b), .. } => vec![*a, *b],
            ClashWitness::Triple { vectors: (a, b, c), .. } => vec![*a, *b, *c],
        }
    }
}

/// Scans a family for a clash: all pairs first, then all triples, both in
/// lexicographic index order, so the witness is deterministic for a fixed
/// family ordering.
pub fn find_clash(family: &VectorFamily) -> Option<ClashWitness> {
    let vs = family.vectors();
    let n = vs.len();
    for i in 0..n {
        for j in i + 1..n {
            if pair_clash_masks(&vs[i], &vs[j]) {
                return Some(ClashWitness::Pair { indices: (i, j), vectors: (vs[i], vs[j]) });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if triple_clash_masks(&vs[i], &vs[j], &vs[k]) {
                    return Some(ClashWitness::Triple {
                        indices: (i, j, k),
                        vectors: (vs[i], vs[j], vs[k]),
                    });
                }
            }
        }
    }
    None
}

/// A family is admissible iff it contains no pair or triple clash.
pub fn is_admissible(family: &VectorFamily) -> bool {
    find_clash(family).is_none()
}
