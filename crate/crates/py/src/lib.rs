//! Python bindings: vectors travel as digit strings, families as lists of
//! digit strings, supports as lists of coordinates, types and colours as
//! {1,2}-strings. Long-running searches take the same limits as the Rust
//! API and raise RuntimeError when a budget is exhausted.

use std::collections::BTreeMap;
use std::time::Duration;

use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use admissible::bounds;
use admissible::clash;
use admissible::cnf;
use admissible::colouring;
use admissible::construct;
use admissible::family::{Branch, VectorFamily};
use admissible::io;
use admissible::search::{self, SearchConfig, SearchStatus, SymmetryFlags};
use admissible::supports::SeedOrder;
use admissible::typed::{self, TypeSeq, TypedError};
use admissible::vector::{Support, TernaryVector};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn check_search_scale(m: usize, w: usize) -> PyResult<()> {
    if w == 0 || w > m || m > admissible::MAX_LEN {
        return Err(PyValueError::new_err("need 0 < w <= m <= 128"));
    }
    if w > 24 || admissible::supports::binomial(m, w) > 10_000_000 {
        return Err(PyValueError::new_err(format!(
            "cannot enumerate C({m},{w}) supports with 2^{w} candidates each"
        )));
    }
    Ok(())
}

fn parse_vector(s: &str) -> PyResult<TernaryVector> {
    TernaryVector::parse(s).map_err(value_err)
}

fn parse_type(s: &str) -> PyResult<TypeSeq> {
    s.parse().map_err(value_err)
}

fn parse_support(members: Vec<usize>, m: usize) -> PyResult<Support> {
    Support::new(m, members).map_err(value_err)
}

/// Builds a family from digit strings; `m` may be omitted when the list is
/// non-empty.
fn build_family(vectors: &[String], m: Option<usize>) -> PyResult<VectorFamily> {
    let m = match (m, vectors.first()) {
        (Some(m), _) => m,
        (None, Some(first)) => first.chars().count(),
        (None, None) => {
            return Err(PyValueError::new_err(
                "an empty family needs an explicit m",
            ))
        }
    };
    let parsed: Vec<TernaryVector> = vectors
        .iter()
        .map(|s| parse_vector(s))
        .collect::<PyResult<_>>()?;
    VectorFamily::from_vectors(m, parsed).map_err(value_err)
}

fn family_strings(family: &VectorFamily) -> Vec<String> {
    family.iter().map(|v| v.to_string()).collect()
}

#[pyfunction]
fn support(v: &str) -> PyResult<Vec<usize>> {
    Ok(parse_vector(v)?.support().members())
}

#[pyfunction]
fn weight(v: &str) -> PyResult<usize> {
    Ok(parse_vector(v)?.weight())
}

#[pyfunction]
fn star(v: &str) -> PyResult<String> {
    Ok(parse_vector(v)?.star().to_string())
}

#[pyfunction]
fn is_pair_clash(u: &str, v: &str) -> PyResult<bool> {
    clash::is_pair_clash(&parse_vector(u)?, &parse_vector(v)?).map_err(value_err)
}

#[pyfunction]
fn is_triple_clash(a: &str, b: &str, c: &str) -> PyResult<bool> {
    clash::is_triple_clash(&parse_vector(a)?, &parse_vector(b)?, &parse_vector(c)?)
        .map_err(value_err)
}

/// Returns the first clash witness (two or three vectors) or None.
#[pyfunction]
#[pyo3(signature = (vectors, m=None))]
fn find_clash(vectors: Vec<String>, m: Option<usize>) -> PyResult<Option<Vec<String>>> {
    let family = build_family(&vectors, m)?;
    Ok(clash::find_clash(&family)
        .map(|w| w.vectors().iter().map(|v| v.to_string()).collect()))
}

#[pyfunction]
#[pyo3(signature = (vectors, m=None))]
fn is_admissible(vectors: Vec<String>, m: Option<usize>) -> PyResult<bool> {
    Ok(clash::is_admissible(&build_family(&vectors, m)?))
}

#[pyfunction]
fn is_i_set(vectors: Vec<String>, m: usize, w: usize) -> PyResult<bool> {
    Ok(build_family(&vectors, Some(m))?.is_i_set(m, w))
}

/// branch is "zero" or "nonzero".
#[pyfunction]
#[pyo3(signature = (vectors, coord, branch, m=None))]
fn project(
    vectors: Vec<String>,
    coord: usize,
    branch: &str,
    m: Option<usize>,
) -> PyResult<Vec<String>> {
    let branch = match branch {
        "zero" => Branch::Zero,
        "nonzero" => Branch::NonZero,
        other => return Err(PyValueError::new_err(format!("unknown branch {other:?}"))),
    };
    let family = build_family(&vectors, m)?;
    Ok(family_strings(&family.project(coord, branch).map_err(value_err)?))
}

#[pyfunction]
fn full_type(v: &str) -> PyResult<String> {
    Ok(typed::full_type(&parse_vector(v)?).to_string())
}

#[pyfunction]
fn has_type(v: &str, t: &str) -> PyResult<bool> {
    Ok(typed::has_type(&parse_vector(v)?, &parse_type(t)?))
}

#[pyfunction]
fn classify4(v: &str) -> PyResult<String> {
    typed::classify4(&parse_vector(v)?)
        .map(|c| c.to_string())
        .map_err(value_err)
}

#[pyfunction]
fn star_type(t: &str) -> PyResult<String> {
    Ok(typed::star_type(&parse_type(t)?).to_string())
}

#[pyfunction]
fn enumerate_typed(support: Vec<usize>, t: &str, m: usize) -> PyResult<Vec<String>> {
    let vs = typed::enumerate_typed(&parse_support(support, m)?, &parse_type(t)?)
        .map_err(value_err)?;
    Ok(vs.iter().map(|v| v.to_string()).collect())
}

#[pyfunction]
fn is_typed_clash(
    s1: Vec<usize>,
    s2: Vec<usize>,
    s3: Vec<usize>,
    t: &str,
    m: usize,
) -> PyResult<bool> {
    typed::is_typed_clash(
        &parse_support(s1, m)?,
        &parse_support(s2, m)?,
        &parse_support(s3, m)?,
        &parse_type(t)?,
    )
    .map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (s1, s2, s3, t, m, budget=1 << 22))]
fn is_typed_clash_bruteforce(
    s1: Vec<usize>,
    s2: Vec<usize>,
    s3: Vec<usize>,
    t: &str,
    m: usize,
    budget: u64,
) -> PyResult<bool> {
    typed::is_typed_clash_bruteforce(
        &parse_support(s1, m)?,
        &parse_support(s2, m)?,
        &parse_support(s3, m)?,
        &parse_type(t)?,
        budget,
    )
    .map_err(|e| match e {
        TypedError::BudgetExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        other => value_err(other),
    })
}

/// Returns a witness family or None; raises RuntimeError when the node
/// budget runs out before the space is exhausted.
#[pyfunction]
#[pyo3(signature = (m, w, t, budget=1 << 24))]
fn monotype_i_exists(m: usize, w: usize, t: &str, budget: u64) -> PyResult<Option<Vec<String>>> {
    match typed::monotype_i_exists(m, w, &parse_type(t)?, budget) {
        Ok(found) => Ok(found.map(|f| family_strings(&f))),
        Err(e @ TypedError::BudgetExceeded { .. }) => Err(PyRuntimeError::new_err(e.to_string())),
        Err(other) => Err(value_err(other)),
    }
}

#[pyfunction]
fn typed_family(m: usize, t: &str) -> PyResult<Vec<String>> {
    Ok(family_strings(
        &construct::typed_family(m, &parse_type(t)?).map_err(value_err)?,
    ))
}

#[pyfunction]
fn construct_i(m: usize, w: usize) -> PyResult<Vec<String>> {
    Ok(family_strings(&construct::construct_i(m, w).map_err(value_err)?))
}

#[pyfunction]
#[pyo3(signature = (vectors, i, j, m=None))]
fn pair_vector(vectors: Vec<String>, i: usize, j: usize, m: Option<usize>) -> PyResult<String> {
    let family = build_family(&vectors, m)?;
    Ok(colouring::pair_vector(&family, i, j)
        .map_err(value_err)?
        .to_string())
}

#[pyfunction]
#[pyo3(signature = (vectors, m=None))]
fn induced_colouring(
    vectors: Vec<String>,
    m: Option<usize>,
) -> PyResult<BTreeMap<(usize, usize, usize), String>> {
    let family = build_family(&vectors, m)?;
    let colouring = colouring::induced_colouring(&family).map_err(value_err)?;
    Ok(colouring
        .iter()
        .map(|(&triple, colour)| (triple, colour.to_string()))
        .collect())
}

#[pyfunction]
fn reconstruct_monochromatic(m: usize, colour: &str) -> PyResult<Vec<String>> {
    if !(3..=admissible::MAX_LEN).contains(&m) {
        return Err(PyValueError::new_err("reconstruction needs 3 <= m <= 128"));
    }
    let colour = colour.parse().map_err(value_err)?;
    Ok(family_strings(&colouring::reconstruct_monochromatic(m, colour)))
}

#[pyfunction]
fn monochromatic_frontier(colour: &str, m_max: usize) -> PyResult<usize> {
    if m_max < 3 {
        return Err(PyValueError::new_err("m_max must be at least 3"));
    }
    let colour = colour.parse().map_err(value_err)?;
    Ok(colouring::monochromatic_frontier(colour, m_max))
}

/// Outcome of `exists_i`: status is "found", "exhausted" or "limit".
#[pyclass]
struct SearchResult {
    #[pyo3(get)]
    status: String,
    #[pyo3(get)]
    witness: Option<Vec<String>>,
    #[pyo3(get)]
    nodes: u64,
    #[pyo3(get)]
    elapsed_seconds: f64,
}

#[pyclass]
struct FmaxResult {
    #[pyo3(get)]
    value: usize,
    #[pyo3(get)]
    witness: Vec<String>,
    #[pyo3(get)]
    exact: bool,
    #[pyo3(get)]
    nodes: u64,
    #[pyo3(get)]
    elapsed_seconds: f64,
}

fn search_config(
    node_limit: Option<u64>,
    time_limit: Option<f64>,
    threads: usize,
    symmetry: bool,
    order: &str,
) -> PyResult<SearchConfig> {
    let seed_order = match order {
        "colex" => SeedOrder::Colex,
        "lex" => SeedOrder::Lex,
        other => return Err(PyValueError::new_err(format!("unknown order {other:?}"))),
    };
    if threads == 0 {
        return Err(PyValueError::new_err("threads must be at least 1"));
    }
    Ok(SearchConfig {
        node_limit,
        time_limit: time_limit.map(Duration::from_secs_f64),
        threads,
        symmetry: if symmetry { SymmetryFlags::all() } else { SymmetryFlags::none() },
        seed_order,
    })
}

#[pyfunction]
#[pyo3(signature = (m, w, node_limit=None, time_limit=None, threads=1, symmetry=true, order="colex"))]
#[allow(clippy::too_many_arguments)]
fn exists_i(
    m: usize,
    w: usize,
    node_limit: Option<u64>,
    time_limit: Option<f64>,
    threads: usize,
    symmetry: bool,
    order: &str,
) -> PyResult<SearchResult> {
    check_search_scale(m, w)?;
    let cfg = search_config(node_limit, time_limit, threads, symmetry, order)?;
    let outcome = search::exists_i(m, w, &cfg);
    Ok(SearchResult {
        status: match outcome.status {
            SearchStatus::Found => "found",
            SearchStatus::Exhausted => "exhausted",
            SearchStatus::LimitReached => "limit",
        }
        .to_string(),
        witness: outcome.witness.map(|f| family_strings(&f)),
        nodes: outcome.nodes,
        elapsed_seconds: outcome.elapsed.as_secs_f64(),
    })
}

#[pyfunction]
#[pyo3(signature = (m, w, node_limit=None, time_limit=None, threads=1, symmetry=true, order="colex"))]
#[allow(clippy::too_many_arguments)]
fn f_max(
    m: usize,
    w: usize,
    node_limit: Option<u64>,
    time_limit: Option<f64>,
    threads: usize,
    symmetry: bool,
    order: &str,
) -> PyResult<FmaxResult> {
    check_search_scale(m, w)?;
    let cfg = search_config(node_limit, time_limit, threads, symmetry, order)?;
    let outcome = search::f_max(m, w, &cfg);
    Ok(FmaxResult {
        value: outcome.value,
        witness: family_strings(&outcome.witness),
        exact: outcome.exact,
        nodes: outcome.nodes,
        elapsed_seconds: outcome.elapsed.as_secs_f64(),
    })
}

/// The DIMACS CNF whose models are exactly the admissible I(m,w) sets.
#[pyfunction]
fn export_cnf(m: usize, w: usize) -> PyResult<String> {
    check_search_scale(m, w)?;
    let mut sink = Vec::new();
    cnf::export_cnf(m, w, &mut sink).map_err(value_err)?;
    String::from_utf8(sink).map_err(value_err)
}

/// Decodes solver literals against an exported CNF text and verifies the
/// family before returning it.
#[pyfunction]
fn decode_model(cnf_text: &str, literals: Vec<i64>) -> PyResult<Vec<String>> {
    let varmap = cnf::read_varmap(cnf_text.as_bytes()).map_err(value_err)?;
    let mut model: Vec<Option<bool>> = vec![None; varmap.var_count() + 1];
    for lit in literals {
        if lit == 0 {
            continue;
        }
        let var = lit.unsigned_abs() as usize;
        if var > varmap.var_count() {
            return Err(PyValueError::new_err(format!("literal {lit} out of range")));
        }
        model[var] = Some(lit > 0);
    }
    let family = cnf::decode_verified(&varmap, &model).map_err(value_err)?;
    Ok(family_strings(&family))
}

/// Exact cap-set size in F_3^(36m) as a Python int.
#[pyfunction]
fn capset_count(f: u64, m: u32, w: u32) -> PyResult<BigUint> {
    bounds::capset_count(f, m, w).map_err(value_err)
}

/// Returns (decimal_string, float_value, error_exponent): the base is
/// accurate to 2^error_exponent.
#[pyfunction]
#[pyo3(signature = (f, m, w, precision_bits=64))]
fn capset_base(f: u64, m: u32, w: u32, precision_bits: u32) -> PyResult<(String, f64, i64)> {
    let base = bounds::capset_base(f, m, w, precision_bits).map_err(value_err)?;
    Ok((base.decimal(6), base.to_f64(), -(base.shift as i64)))
}

/// (m, vectors, optional (m,w) claim) as parsed from the text format.
type ParsedFamilyTuple = (usize, Vec<String>, Option<(usize, usize)>);

/// Parses the admissible-set text format; returns (m, vectors, claim).
#[pyfunction]
fn parse_family(text: &str) -> PyResult<ParsedFamilyTuple> {
    let parsed = io::read_family(text.as_bytes()).map_err(value_err)?;
    Ok((
        parsed.family.len_m(),
        family_strings(&parsed.family),
        parsed.claim,
    ))
}

/// Renders a family in the admissible-set text format.
#[pyfunction]
#[pyo3(signature = (vectors, m=None, claim=None))]
fn format_family(
    vectors: Vec<String>,
    m: Option<usize>,
    claim: Option<(usize, usize)>,
) -> PyResult<String> {
    let family = build_family(&vectors, m)?;
    let mut out = Vec::new();
    io::write_family(&mut out, &family, &[], claim).map_err(value_err)?;
    String::from_utf8(out).map_err(value_err)
}

#[pymodule]
fn admissible_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<SearchResult>()?;
    m.add_class::<FmaxResult>()?;
    m.add_function(wrap_pyfunction!(support, m)?)?;
    m.add_function(wrap_pyfunction!(weight, m)?)?;
    m.add_function(wrap_pyfunction!(star, m)?)?;
    m.add_function(wrap_pyfunction!(is_pair_clash, m)?)?;
    m.add_function(wrap_pyfunction!(is_triple_clash, m)?)?;
    m.add_function(wrap_pyfunction!(find_clash, m)?)?;
    m.add_function(wrap_pyfunction!(is_admissible, m)?)?;
    m.add_function(wrap_pyfunction!(is_i_set, m)?)?;
    m.add_function(wrap_pyfunction!(project, m)?)?;
    m.add_function(wrap_pyfunction!(full_type, m)?)?;
    m.add_function(wrap_pyfunction!(has_type, m)?)?;
    m.add_function(wrap_pyfunction!(classify4, m)?)?;
    m.add_function(wrap_pyfunction!(star_type, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_typed, m)?)?;
    m.add_function(wrap_pyfunction!(is_typed_clash, m)?)?;
    m.add_function(wrap_pyfunction!(is_typed_clash_bruteforce, m)?)?;
    m.add_function(wrap_pyfunction!(monotype_i_exists, m)?)?;
    m.add_function(wrap_pyfunction!(typed_family, m)?)?;
    m.add_function(wrap_pyfunction!(construct_i, m)?)?;
    m.add_function(wrap_pyfunction!(pair_vector, m)?)?;
    m.add_function(wrap_pyfunction!(induced_colouring, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct_monochromatic, m)?)?;
    m.add_function(wrap_pyfunction!(monochromatic_frontier, m)?)?;
    m.add_function(wrap_pyfunction!(exists_i, m)?)?;
    m.add_function(wrap_pyfunction!(f_max, m)?)?;
    m.add_function(wrap_pyfunction!(export_cnf, m)?)?;
    m.add_function(wrap_pyfunction!(decode_model, m)?)?;
    m.add_function(wrap_pyfunction!(capset_count, m)?)?;
    m.add_function(wrap_pyfunction!(capset_base, m)?)?;
    m.add_function(wrap_pyfunction!(parse_family, m)?)?;
    m.add_function(wrap_pyfunction!(format_family, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
