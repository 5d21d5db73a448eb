//! DIMACS CNF export of the I(m,w) existence problem, and model decoding.
//!
//! Encoding (binary, one variable per support position):
//!
//!   var(s, p) = s·w + p + 1
//!
//! where s indexes the size-w supports in colex order and p indexes the
//! sorted positions of the support. A true variable places a 2 at that
//! position, false places a 1, so every assignment of the C(m,w)·w variables
//! decodes to exactly one vector per support. One clause group per dangerous
//! support triple forbids each joint assignment that would make the triple
//! clash: the triple clashes iff every coordinate covered by exactly two of
//! its supports carries equal values, so each of the 2^d equal-value
//! patterns over the d doubly-covered coordinates is forbidden by one
//! clause. Satisfying assignments are exactly the admissible I(m,w) sets.
//!
//! The emitted `c` header documents the encoding and the variable map;
//! [`read_varmap`] parses it back so models can be decoded without any other
//! state.

use std::io::{BufRead, Write};

use thiserror::Error;

use crate::clash::is_admissible;
use crate::family::VectorFamily;
use crate::supports::{enumerate_supports, SeedOrder};
use crate::vector::{Support, TernaryVector};

#[derive(Debug, Error)]
pub enum CnfError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("instance too large: {0} variables")]
    TooLarge(u128),
    #[error("missing or malformed varmap header line: {0:?}")]
    BadHeader(String),
    #[error("unrecognised model token {0:?}")]
    BadModelToken(String),
    #[error("model does not assign variable {var}")]
    TruncatedModel { var: usize },
    #[error("model literal {lit} is out of range for {vars} variables")]
    LiteralOutOfRange { lit: i64, vars: usize },
    #[error("model assigns variable {var} both polarities")]
    ContradictoryModel { var: usize },
    #[error("decoded family fails verification ({0}); encoder or model is wrong")]
    Verification(&'static str),
}

/// Maps CNF variables back to (support, position) pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarMap {
    m: usize,
    w: usize,
    supports: Vec<Support>,
}

impl VarMap {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn supports(&self) -> &[Support] {
        &self.supports
    }

    pub fn var_count(&self) -> usize {
        self.supports.len() * self.w
    }

    /// 1-based DIMACS variable for position p of support s.
    pub fn var(&self, support_idx: usize, pos: usize) -> usize {
        debug_assert!(support_idx < self.supports.len() && pos < self.w);
        support_idx * self.w + pos + 1
    }
}

/// Writes the DIMACS CNF for "an I(m,w) admissible set exists" and returns
/// the variable map needed to decode models.
pub fn export_cnf<W: Write>(m: usize, w: usize, mut sink: W) -> Result<VarMap, CnfError> {
    assert!(w >= 1 && w <= m, "export_cnf requires 0 < w <= m");
    let supports = enumerate_supports(m, w, SeedOrder::Colex);
    let var_count = supports.len() as u128 * w as u128;
    if var_count > i32::MAX as u128 / 2 {
        return Err(CnfError::TooLarge(var_count));
    }
    let varmap = VarMap { m, w, supports };
    let supports = &varmap.supports;

    let mut clauses: Vec<Vec<i64>> = Vec::new();
    for k in 0..supports.len() {
        let sk = supports[k].bits();
        for j in 0..k {
            let sj = supports[j].bits();
            for i in 0..j {
                let si = supports[i].bits();
                let exactly_one = (si ^ sj ^ sk) & !(si & sj & sk);
                if exactly_one != 0 {
                    continue; // some coordinate always witnesses: never a clash
                }
                // doubly covered coordinates, as (var in first support, var
                // in second support) pairs
                let mut pairs: Vec<(usize, usize)> = Vec::new();
                for coord in 0..m {
                    let covering: Vec<usize> = [i, j, k]
                        .into_iter()
                        .filter(|&s| supports[s].contains(coord))
                        .collect();
                    if covering.len() == 2 {
                        let va = varmap.var(
                            covering[0],
                            supports[covering[0]].position_of(coord).expect("covered"),
                        );
                        let vb = varmap.var(
                            covering[1],
                            supports[covering[1]].position_of(coord).expect("covered"),
                        );
                        pairs.push((va, vb));
                    }
                }
                if pairs.len() >= 32 {
                    return Err(CnfError::TooLarge(var_count));
                }
                // forbid every equal-values pattern over the d pairs
                for pattern in 0..1u64 << pairs.len() {
                    let mut clause = Vec::with_capacity(2 * pairs.len());
                    for (d, &(va, vb)) in pairs.iter().enumerate() {
                        // negate "both entries equal the pattern value"
                        let sign = if pattern >> d & 1 == 1 { -1 } else { 1 };
                        clause.push(sign * va as i64);
                        clause.push(sign * vb as i64);
                    }
                    clauses.push(clause);
                }
            }
        }
    }

    writeln!(sink, "c I({m},{w}) admissible set existence")?;
    writeln!(sink, "c m = {m}")?;
    writeln!(sink, "c w = {w}")?;
    writeln!(
        sink,
        "c encoding = binary: var(s,p) = s*w + p + 1; true places a 2, false a 1, \
         at sorted position p of support s"
    )?;
    writeln!(sink, "c supports in colex order, 0-indexed coordinates:")?;
    for (s, support) in supports.iter().enumerate() {
        writeln!(
            sink,
            "c support {s} : {support} vars {}..{}",
            varmap.var(s, 0),
            varmap.var(s, w - 1)
        )?;
    }
    writeln!(sink, "p cnf {} {}", varmap.var_count(), clauses.len())?;
    for clause in &clauses {
        for lit in clause {
            write!(sink, "{lit} ")?;
        }
        writeln!(sink, "0")?;
    }
    Ok(varmap)
}

/// Recovers the variable map from the `c` header of an exported CNF.
pub fn read_varmap<R: BufRead>(reader: R) -> Result<VarMap, CnfError> {
    let mut m = None;
    let mut w = None;
    for line in reader.lines() {
        let line = line?;
        if let Some(rest) = line.strip_prefix("c m = ") {
            m = rest.trim().parse::<usize>().ok();
        } else if let Some(rest) = line.strip_prefix("c w = ") {
            w = rest.trim().parse::<usize>().ok();
        } else if line.starts_with("p cnf") {
            break;
        }
    }
    match (m, w) {
        (Some(m), Some(w)) if w >= 1 && w <= m => Ok(VarMap {
            m,
            w,
            supports: enumerate_supports(m, w, SeedOrder::Colex),
        }),
        _ => Err(CnfError::BadHeader("c m = ... / c w = ...".into())),
    }
}

/// Parses a solver model: all integer tokens from lines that are not
/// comments or status markers, sign giving polarity, ignoring a terminating
/// 0. Accepts both bare literal lists and minisat/DIMACS `v`-line output.
pub fn parse_model<R: BufRead>(reader: R, var_count: usize) -> Result<Vec<Option<bool>>, CnfError> {
    let mut assignment: Vec<Option<bool>> = vec![None; var_count + 1];
    for line in reader.lines() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('s') {
            continue;
        }
        let body = trimmed.strip_prefix('v').unwrap_or(trimmed);
        for token in body.split_whitespace() {
            if token.eq_ignore_ascii_case("sat") || token.eq_ignore_ascii_case("satisfiable") {
                continue;
            }
            let lit: i64 = token
                .parse()
                .map_err(|_| CnfError::BadModelToken(token.to_string()))?;
            if lit == 0 {
                continue;
            }
            let var = lit.unsigned_abs() as usize;
            if var > var_count {
                return Err(CnfError::LiteralOutOfRange { lit, vars: var_count });
            }
            let value = lit > 0;
            match assignment[var] {
                Some(prev) if prev != value => {
                    return Err(CnfError::ContradictoryModel { var })
                }
                _ => assignment[var] = Some(value),
            }
        }
    }
    Ok(assignment)
}

/// Mechanically decodes a model into the family it denotes. Every mapped
/// variable must be assigned; no admissibility judgement is made here.
pub fn decode_model(varmap: &VarMap, model: &[Option<bool>]) -> Result<VectorFamily, CnfError> {
    let mut family = VectorFamily::new(varmap.m).expect("valid length");
    for (s, support) in varmap.supports.iter().enumerate() {
        let mut twos = 0u128;
        for (p, coord) in support.iter().enumerate() {
            let var = varmap.var(s, p);
            let value = model
                .get(var)
                .copied()
                .flatten()
                .ok_or(CnfError::TruncatedModel { var })?;
            if value {
                twos |= 1 << coord;
            }
        }
        let v = TernaryVector::from_masks(varmap.m, support.bits(), twos);
        family.push(v).expect("distinct supports");
    }
    Ok(family)
}

/// Decodes and verifies: the result passes both is_i_set and is_admissible,
/// otherwise the model (or the encoder) is wrong.
pub fn decode_verified(varmap: &VarMap, model: &[Option<bool>]) -> Result<VectorFamily, CnfError> {
    let family = decode_model(varmap, model)?;
    if !family.is_i_set(varmap.m, varmap.w) {
        return Err(CnfError::Verification("not an I(m,w) set"));
    }
    if !is_admissible(&family) {
        return Err(CnfError::Verification("family contains a clash"));
    }
    Ok(family)
}
