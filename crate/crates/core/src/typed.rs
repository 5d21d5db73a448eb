//! Types of vectors and typed clashes.
//!
//! The type of a vector is the sequence of its non-zero entries in
//! coordinate order; a vector "is of type t" when t is a prefix of that
//! sequence. A support triple forms a type-t clash when *every* choice of
//! type-t vectors on those supports is a triple clash, which admits a
//! per-coordinate decision procedure checked here against brute-force
//! enumeration.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::clash::triple_clash_masks;
use crate::family::VectorFamily;
use crate::search::{solve_assignment, SearchConfig, SearchStatus, SymmetryFlags};
use crate::supports::{enumerate_supports, SeedOrder};
use crate::vector::{Support, TernaryVector};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TypedError {
    #[error("invalid type symbol {0:?}: types are strings over {{1,2}}")]
    InvalidSymbol(char),
    #[error("type of length {type_len} does not fit in a support of size {support_size}")]
    TypeTooLong { type_len: usize, support_size: usize },
    #[error("supports live in different universes")]
    UniverseMismatch,
    #[error("vector of weight {weight} has no length-4 type prefix")]
    WeightTooSmall { weight: usize },
    #[error("type of length {type_len} exceeds the requested weight {weight}")]
    TypeExceedsWeight { type_len: usize, weight: usize },
    #[error("enumeration budget exceeded ({budget})")]
    BudgetExceeded { budget: u64 },
}

/// A finite sequence over {1,2}, possibly empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TypeSeq(Vec<u8>);

impl TypeSeq {
    pub fn new(entries: impl IntoIterator<Item = u8>) -> Result<Self, TypedError> {
        let entries: Vec<u8> = entries.into_iter().collect();
        for &e in &entries {
            if e != 1 && e != 2 {
                return Err(TypedError::InvalidSymbol((b'0' + e) as char));
            }
        }
        Ok(Self(entries))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<u8> {
        self.0.get(i).copied()
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    /// Entrywise 1↔2; an involution.
    pub fn star(&self) -> TypeSeq {
        TypeSeq(self.0.iter().map(|&e| 3 - e).collect())
    }
}

impl FromStr for TypeSeq {
    type Err = TypedError;

    fn from_str(s: &str) -> Result<Self, TypedError> {
        s.chars()
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                other => Err(TypedError::InvalidSymbol(other)),
            })
            .collect::<Result<Vec<u8>, _>>()
            .map(TypeSeq)
    }
}

impl fmt::Display for TypeSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.0 {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TypeSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{self}")
    }
}

/// The eight prefix classes that partition all {1,2}-sequences of length ≥ 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeClass4 {
    T11,
    T122,
    T1211,
    T1212,
    T211,
    T22,
    T2122,
    T2121,
}

impl TypeClass4 {
    pub const ALL: [TypeClass4; 8] = [
        TypeClass4::T11,
        TypeClass4::T122,
        TypeClass4::T1211,
        TypeClass4::T1212,
        TypeClass4::T211,
        TypeClass4::T22,
        TypeClass4::T2122,
        TypeClass4::T2121,
    ];

    pub fn tag(&self) -> TypeSeq {
        let entries: &[u8] = match self {
            TypeClass4::T11 => &[1, 1],
            TypeClass4::T122 => &[1, 2, 2],
            TypeClass4::T1211 => &[1, 2, 1, 1],
            TypeClass4::T1212 => &[1, 2, 1, 2],
            TypeClass4::T211 => &[2, 1, 1],
            TypeClass4::T22 => &[2, 2],
            TypeClass4::T2122 => &[2, 1, 2, 2],
            TypeClass4::T2121 => &[2, 1, 2, 1],
        };
        TypeSeq(entries.to_vec())
    }
}

impl fmt::Display for TypeClass4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// The full type of a vector: its non-zero entries in coordinate order.
pub fn full_type(v: &TernaryVector) -> TypeSeq {
    TypeSeq(v.nonzero_entries().collect())
}

/// True iff v has at least |t| non-zero entries and its first |t| non-zero
/// entries equal t (prefix semantics).
pub fn has_type(v: &TernaryVector, t: &TypeSeq) -> bool {
    if v.weight() < t.len() {
        return false;
    }
    v.nonzero_entries().zip(t.entries()).all(|(e, &te)| e == te)
}

/// The unique prefix class of a vector of weight ≥ 4.
pub fn classify4(v: &TernaryVector) -> Result<TypeClass4, TypedError> {
    if v.weight() < 4 {
        return Err(TypedError::WeightTooSmall { weight: v.weight() });
    }
    let mut prefix = [0u8; 4];
    for (slot, e) in prefix.iter_mut().zip(v.nonzero_entries()) {
        *slot = e;
    }
    Ok(match prefix {
        [1, 1, _, _] => TypeClass4::T11,
        [1, 2, 2, _] => TypeClass4::T122,
        [1, 2, 1, 1] => TypeClass4::T1211,
        [1, 2, 1, 2] => TypeClass4::T1212,
        [2, 1, 1, _] => TypeClass4::T211,
        [2, 2, _, _] => TypeClass4::T22,
        [2, 1, 2, 2] => TypeClass4::T2122,
        [2, 1, 2, 1] => TypeClass4::T2121,
        other => unreachable!("non-{{1,2}} type prefix {other:?}"),
    })
}

/// Entrywise 1↔2 on a type.
pub fn star_type(t: &TypeSeq) -> TypeSeq {
    t.star()
}

/// All vectors with support exactly S and type t: the first |t| support
/// positions carry t, the remaining |S|−|t| positions range over {1,2}.
/// Returns 2^(|S|−|t|) vectors, ordered by completion code.
pub fn enumerate_typed(support: &Support, t: &TypeSeq) -> Result<Vec<TernaryVector>, TypedError> {
    let positions = support.members();
    if t.len() > positions.len() {
        return Err(TypedError::TypeTooLong {
            type_len: t.len(),
            support_size: positions.len(),
        });
    }
    let free = positions.len() - t.len();
    let mut base_twos = 0u128;
    for (p, &coord) in positions.iter().enumerate().take(t.len()) {
        if t.get(p) == Some(2) {
            base_twos |= 1 << coord;
        }
    }
    let m = support.universe();
    Ok((0..1u64 << free)
        .map(|code| {
            let mut twos = base_twos;
            for (bit, &coord) in positions.iter().skip(t.len()).enumerate() {
                if code >> bit & 1 == 1 {
                    twos |= 1 << coord;
                }
            }
            TernaryVector::from_masks(m, support.bits(), twos)
        })
        .collect())
}

/// Decides whether every choice of type-t vectors on the three supports
/// forms a triple clash, without enumerating completions.
///
/// Per coordinate: covered by exactly one support → some completion has a
/// lone non-zero there, so no typed clash. Covered by exactly two → fine
/// only when both entries are forced by t (the coordinate sits among the
/// first |t| support positions of each) and the forced values agree.
/// Covered by zero or all three → never a witness. Correctness is
/// discharged by exhaustive agreement with [`is_typed_clash_bruteforce`].
pub fn is_typed_clash(
    s1: &Support,
    s2: &Support,
    s3: &Support,
    t: &TypeSeq,
) -> Result<bool, TypedError> {
    let m = s1.universe();
    if s2.universe() != m || s3.universe() != m {
        return Err(TypedError::UniverseMismatch);
    }
    for s in [s1, s2, s3] {
        if t.len() > s.size() {
            return Err(TypedError::TypeTooLong { type_len: t.len(), support_size: s.size() });
        }
    }
    let forced = |s: &Support, i: usize| -> Option<u8> {
        s.position_of(i).and_then(|p| t.get(p))
    };
    for i in 0..m {
        let covering: Vec<&Support> =
            [s1, s2, s3].into_iter().filter(|s| s.contains(i)).collect();
        match covering.len() {
            0 | 3 => {}
            1 => return Ok(false),
            2 => {
                let (a, b) = (forced(covering[0], i), forced(covering[1], i));
                match (a, b) {
                    (Some(x), Some(y)) if x == y => {}
                    _ => return Ok(false),
                }
            }
            _ => unreachable!(),
        }
    }
    Ok(true)
}

/// Brute-force oracle for [`is_typed_clash`]: enumerates all completions and
/// tests the triple clash on each. Errors when the completion count exceeds
/// `budget`.
pub fn is_typed_clash_bruteforce(
    s1: &Support,
    s2: &Support,
    s3: &Support,
    t: &TypeSeq,
    budget: u64,
) -> Result<bool, TypedError> {
    let m = s1.universe();
    if s2.universe() != m || s3.universe() != m {
        return Err(TypedError::UniverseMismatch);
    }
    let free: u32 = [s1, s2, s3]
        .iter()
        .map(|s| {
            if t.len() > s.size() {
                Err(TypedError::TypeTooLong { type_len: t.len(), support_size: s.size() })
            } else {
                Ok((s.size() - t.len()) as u32)
            }
        })
        .sum::<Result<u32, _>>()?;
    if free >= 63 || 1u64 << free > budget {
        return Err(TypedError::BudgetExceeded { budget });
    }
    let v1 = enumerate_typed(s1, t)?;
    let v2 = enumerate_typed(s2, t)?;
    let v3 = enumerate_typed(s3, t)?;
    for a in &v1 {
        for b in &v2 {
            for c in &v3 {
                if !triple_clash_masks(a, b, c) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Outcome of the monotype existence search.
pub type MonotypeResult = Result<Option<VectorFamily>, TypedError>;

/// Does an admissible I(m,w) family exist in which every vector has type t?
/// Backtracks over supports in colex order with incremental clash pruning;
/// `Ok(Some(family))` carries a verified witness, `Ok(None)` means the search
/// space was exhausted, and exceeding `node_budget` is an error distinct from
/// nonexistence.
pub fn monotype_i_exists(m: usize, w: usize, t: &TypeSeq, node_budget: u64) -> MonotypeResult {
    assert!(w >= 1 && w <= m, "monotype_i_exists requires 0 < w <= m");
    if t.len() > w {
        return Err(TypedError::TypeExceedsWeight { type_len: t.len(), weight: w });
    }
    let supports = enumerate_supports(m, w, SeedOrder::Colex);
    let choices: Vec<Vec<TernaryVector>> = supports
        .iter()
        .map(|s| enumerate_typed(s, t).expect("|t| <= w = |s|"))
        .collect();
    // star and permutation breaking are unsound here: both can change types
    let cfg = SearchConfig {
        node_limit: Some(node_budget),
        symmetry: SymmetryFlags::none(),
        ..Default::default()
    };
    let outcome = solve_assignment(m, w, &supports, &choices, &cfg, false);
    match outcome.status {
        SearchStatus::Found => {
            let witness = outcome.witness.expect("Found carries a witness");
            debug_assert!(witness.iter().all(|v| has_type(v, t)));
            Ok(Some(witness))
        }
        SearchStatus::Exhausted => Ok(None),
        SearchStatus::LimitReached => Err(TypedError::BudgetExceeded { budget: node_budget }),
    }
}
