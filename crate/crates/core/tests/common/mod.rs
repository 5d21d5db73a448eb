//! Minimal DPLL solver used as an independent check of the CNF export.
//! Deliberately separate from the library: it knows nothing about supports
//! or clashes, only literals.

pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

/// Parses DIMACS text: `c` comments, a `p cnf V C` line, then clauses
/// terminated by 0 (possibly spanning lines).
pub fn parse_dimacs(text: &str) -> Cnf {
    let mut vars = 0;
    let mut clauses = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf") {
            let mut parts = rest.split_whitespace();
            vars = parts.next().unwrap().parse().unwrap();
            continue;
        }
        for token in line.split_whitespace() {
            let lit: i64 = token.parse().unwrap();
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    assert!(current.is_empty(), "unterminated clause");
    Cnf { vars, clauses }
}

/// Plain DPLL with unit propagation. Returns a total assignment indexed by
/// variable (slot 0 unused) or None when unsatisfiable.
pub fn solve(cnf: &Cnf) -> Option<Vec<Option<bool>>> {
    let mut assignment: Vec<Option<bool>> = vec![None; cnf.vars + 1];
    if dpll(cnf, &mut assignment) {
        // force totality so decoders need no defaulting
        for slot in assignment.iter_mut().skip(1) {
            slot.get_or_insert(false);
        }
        Some(assignment)
    } else {
        None
    }
}

fn dpll(cnf: &Cnf, assignment: &mut Vec<Option<bool>>) -> bool {
    // unit propagation to fixpoint
    let mut trail: Vec<usize> = Vec::new();
    loop {
        let mut changed = false;
        for clause in &cnf.clauses {
            let mut unassigned = None;
            let mut satisfied = false;
            let mut unassigned_count = 0;
            for &lit in clause {
                let var = lit.unsigned_abs() as usize;
                match assignment[var] {
                    Some(value) if value == (lit > 0) => {
                        satisfied = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        unassigned_count += 1;
                        unassigned = Some(lit);
                    }
                }
            }
            if satisfied {
                continue;
            }
            match (unassigned_count, unassigned) {
                (0, _) => {
                    for var in trail {
                        assignment[var] = None;
                    }
                    return false; // conflict
                }
                (1, Some(lit)) => {
                    let var = lit.unsigned_abs() as usize;
                    assignment[var] = Some(lit > 0);
                    trail.push(var);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let Some(var) = (1..=cnf.vars).find(|&v| assignment[v].is_none()) else {
        return true; // total and conflict-free
    };
    for value in [true, false] {
        assignment[var] = Some(value);
        if dpll(cnf, assignment) {
            return true;
        }
        assignment[var] = None;
    }
    for var in trail {
        assignment[var] = None;
    }
    false
}
