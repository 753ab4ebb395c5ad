//! Python bindings for the capsets library.
//!
//! The boundary stays string-based: a vector over GF(3) (or a pattern
//! over {0,1,2}) is a digit string like `"0121"`, a set is a list of
//! such strings, and exact sizes cross into Python as decimal strings
//! so no precision is lost. Verifiers return `None` on success and a
//! human-readable witness string on failure; malformed input raises
//! `ValueError`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use capsets::construction::{self, ProductOutcome};
use capsets::meta::{self, MetaExtendOutcome, MetaSearchOutcome, MetaTriple};
use capsets::patterns::{self, PatternSet};
use capsets::plan::BuildPlan;
use capsets::satgen::{self, ConstraintProfile};
use capsets::{caps, Budget, CapVerdict, Error, VectorSet};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } | Error::EncoderBug(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Parses a nonempty list of digit strings into a set, inferring the
/// dimension from the first entry.
fn to_set(vectors: Vec<String>) -> PyResult<VectorSet> {
    let first = vectors
        .first()
        .ok_or_else(|| PyValueError::new_err("empty input: dimension cannot be inferred"))?;
    let dim = first.len();
    let strs: Vec<&str> = vectors.iter().map(String::as_str).collect();
    VectorSet::from_strs(dim, &strs).map_err(py_err)
}

fn to_patterns(vectors: Vec<String>) -> PyResult<PatternSet> {
    Ok(PatternSet::new(to_set(vectors)?))
}

fn from_set(set: &VectorSet) -> Vec<String> {
    set.iter().map(|v| v.to_string()).collect()
}

/// Checks the cap-set property. Returns None when no three distinct
/// elements sum to zero, else the lexicographically first witness
/// triple (x, y, z).
#[pyfunction]
fn is_cap_set(vectors: Vec<String>) -> PyResult<Option<(String, String, String)>> {
    match caps::is_cap_set(&to_set(vectors)?) {
        CapVerdict::Pass => Ok(None),
        CapVerdict::Counterexample { x, y, z } => {
            Ok(Some((x.to_string(), y.to_string(), z.to_string())))
        }
    }
}

/// Checks admissibility. Returns None on pass, else a witness string.
#[pyfunction]
fn is_admissible(patterns: Vec<String>) -> PyResult<Option<String>> {
    let v = patterns::is_admissible(&to_patterns(patterns)?);
    Ok((!v.is_pass()).then(|| v.describe()))
}

/// Checks recursive admissibility. Returns None on pass.
#[pyfunction]
fn is_recursively_admissible(patterns: Vec<String>) -> PyResult<Option<String>> {
    let v = patterns::is_recursively_admissible(&to_patterns(patterns)?);
    Ok((!v.is_pass()).then(|| v.describe()))
}

/// Checks that `patterns` is a complete constant-weight admissible set
/// I(m, w). Returns None on pass.
#[pyfunction]
fn is_constant_weight(patterns: Vec<String>, m: usize, w: usize) -> PyResult<Option<String>> {
    let v = patterns::is_constant_weight(&to_patterns(patterns)?, m, w);
    Ok((!v.is_pass()).then(|| v.describe()))
}

/// Checks that (a0, a1, a2) is an extendable collection of cap sets.
/// Returns None on pass.
#[pyfunction]
fn is_extendable(a0: Vec<String>, a1: Vec<String>, a2: Vec<String>) -> PyResult<Option<String>> {
    let verdict = caps::is_extendable(&to_set(a0)?, &to_set(a1)?, &to_set(a2)?).map_err(py_err)?;
    Ok(match verdict {
        caps::ExtendVerdict::Pass => None,
        caps::ExtendVerdict::NotCap { which, verdict } => {
            let name = ["A0", "A1", "A2"][which];
            match verdict {
                CapVerdict::Counterexample { x, y, z } => {
                    Some(format!("{name} is not a cap set: {x}+{y}+{z}=0"))
                }
                CapVerdict::Pass => unreachable!("NotCap carries a counterexample"),
            }
        }
        caps::ExtendVerdict::Condition1 { x, y, z } => {
            Some(format!("condition 1 fails: {x}+{y}+{z}=0"))
        }
        caps::ExtendVerdict::Condition2 { x, y, z } => {
            Some(format!("condition 2 fails: {x}+{y}+{z}=0"))
        }
    })
}

/// Checks that (s0, s1, s2) is a meta-extendable collection of
/// admissible sets. Returns None on pass.
#[pyfunction]
fn is_meta_extendable(
    s0: Vec<String>,
    s1: Vec<String>,
    s2: Vec<String>,
) -> PyResult<Option<String>> {
    let v = meta::is_meta_extendable(&to_patterns(s0)?, &to_patterns(s1)?, &to_patterns(s2)?)
        .map_err(py_err)?;
    Ok((!v.is_pass()).then(|| v.describe()))
}

/// The recursively admissible chain of length m (weight m-1).
#[pyfunction]
fn build_chain(m: usize) -> PyResult<Vec<String>> {
    Ok(from_set(patterns::build_chain(m).map_err(py_err)?.set()))
}

/// A complete constant-weight admissible set I(m, w) for w in {2, 3},
/// found by exhaustive search.
#[pyfunction]
fn build_low_weight(m: usize, w: usize) -> PyResult<Vec<String>> {
    Ok(from_set(
        patterns::build_low_weight(m, w).map_err(py_err)?.set(),
    ))
}

/// The certified extendable collection in GF(3)^6: (A0, A1, A2) with
/// sizes 12/112/112.
#[pyfunction]
fn build_edel6() -> (Vec<String>, Vec<String>, Vec<String>) {
    let t = construction::build_edel6();
    (from_set(t.a0()), from_set(t.a1()), from_set(t.a2()))
}

fn certify(
    a0: Vec<String>,
    a1: Vec<String>,
    a2: Vec<String>,
) -> PyResult<construction::ExtendableTriple> {
    construction::ExtendableTriple::certify(to_set(a0)?, to_set(a1)?, to_set(a2)?).map_err(py_err)
}

/// Materialises the extended product S(A0, A1, A2). The collection is
/// re-certified first. Raises RuntimeError when the result exceeds the
/// element budget (override with the CAPSETS_BUDGET environment
/// variable); use `extended_product_count` for exact sizes at any
/// scale.
#[pyfunction]
fn extended_product(
    patterns: Vec<String>,
    a0: Vec<String>,
    a1: Vec<String>,
    a2: Vec<String>,
) -> PyResult<Vec<String>> {
    let s = to_patterns(patterns)?;
    let triple = certify(a0, a1, a2)?;
    match construction::extended_product(&s, &triple, Budget::from_env()).map_err(py_err)? {
        ProductOutcome::Materialized(set) => Ok(from_set(&set)),
        ProductOutcome::CountOnly { size, .. } => Err(PyRuntimeError::new_err(format!(
            "result has {size} elements, beyond the materialisation budget"
        ))),
    }
}

/// Exact size of the extended product, as a decimal string.
#[pyfunction]
fn extended_product_count(
    patterns: Vec<String>,
    a0: Vec<String>,
    a1: Vec<String>,
    a2: Vec<String>,
) -> PyResult<String> {
    let s = to_patterns(patterns)?;
    let triple = certify(a0, a1, a2)?;
    Ok(construction::extended_product_count(&s, &triple).to_string())
}

/// Materialises the meta extension T(S0, S1, S2) of admissible sets.
/// The meta collection is certified first.
#[pyfunction]
fn meta_extend(
    t: Vec<String>,
    s0: Vec<String>,
    s1: Vec<String>,
    s2: Vec<String>,
) -> PyResult<Vec<String>> {
    let t = to_patterns(t)?;
    let triple = MetaTriple::certify(to_patterns(s0)?, to_patterns(s1)?, to_patterns(s2)?)
        .map_err(py_err)?;
    match meta::meta_extend(&t, &triple, Budget::from_env()).map_err(py_err)? {
        MetaExtendOutcome::Materialized(s) => Ok(from_set(s.set())),
        MetaExtendOutcome::CountOnly { size, .. } => Err(PyRuntimeError::new_err(format!(
            "result has {size} elements, beyond the materialisation budget"
        ))),
    }
}

/// Backtracking search for an S0 of at least `target_size` weight-`w0`
/// patterns such that S0 is admissible and (S0, s1, s2) is
/// meta-extendable. Returns the set, or None when exhaustive search
/// rules one out.
#[pyfunction]
fn search_meta_s0(
    s1: Vec<String>,
    s2: Vec<String>,
    w0: usize,
    target_size: usize,
) -> PyResult<Option<Vec<String>>> {
    match meta::search_meta_s0(&to_patterns(s1)?, &to_patterns(s2)?, w0, target_size)
        .map_err(py_err)?
    {
        MetaSearchOutcome::Found(s) => Ok(Some(from_set(s.set()))),
        MetaSearchOutcome::NotFound => Ok(None),
    }
}

/// Exact (dimension, size) of the cap set a build plan denotes; the
/// size is a decimal string. Plan text uses the same format as the CLI:
/// `base n a0 a1`, then `rstep m` lines, then an optional final line.
#[pyfunction]
fn plan_count(plan_text: &str) -> PyResult<(usize, String)> {
    let plan = BuildPlan::parse(plan_text).map_err(py_err)?;
    plan.validate().map_err(py_err)?;
    let (dim, size) = capsets::plan::plan_count(&plan).map_err(py_err)?;
    Ok((dim, size.to_string()))
}

/// Evaluates the lower bound size^(1/dimension) certified by a build
/// plan. Returns a dict with keys dimension, size, bound, provenance;
/// the bound string is truncated, never rounded up.
#[pyfunction]
#[pyo3(signature = (plan_text, digits = 10))]
fn bound_for_plan<'py>(
    py: Python<'py>,
    plan_text: &str,
    digits: usize,
) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    let plan = BuildPlan::parse(plan_text).map_err(py_err)?;
    plan.validate().map_err(py_err)?;
    let report = capsets::bounds::bound_for_plan(&plan, digits).map_err(py_err)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("dimension", report.dimension)?;
    dict.set_item("size", report.size.to_string())?;
    dict.set_item("bound", report.bound)?;
    dict.set_item("provenance", report.provenance)?;
    Ok(dict)
}

/// size^(1/n) truncated to `digits` significant digits, for an exact
/// decimal size.
#[pyfunction]
#[pyo3(signature = (size, n, digits = 10))]
fn nth_root_bound(size: &str, n: usize, digits: usize) -> PyResult<String> {
    let size = size
        .parse::<num_bigint::BigUint>()
        .map_err(|_| PyValueError::new_err("size must be a decimal integer string"))?;
    capsets::bounds::nth_root_bound(&size, n, digits).map_err(py_err)
}

/// Asymptotic ceiling of the construction over one collection:
/// (alpha as "p/q", limit string) for base dimension n and sizes a0, a1.
#[pyfunction]
#[pyo3(signature = (n, a0, a1, digits = 10))]
fn asymptotic_limit(n: usize, a0: u64, a1: u64, digits: usize) -> PyResult<(String, String)> {
    let report = capsets::bounds::asymptotic_limit(n, a0, a1, digits).map_err(py_err)?;
    Ok((
        format!("{}/{}", report.alpha.0, report.alpha.1),
        report.limit,
    ))
}

/// Binary entropy h(x) for 0 < x < 1.
#[pyfunction]
fn entropy(x: f64) -> PyResult<f64> {
    capsets::bounds::entropy(x).map_err(py_err)
}

/// The DIMACS CNF text of the instance "I(m, w) exists", with an
/// optional symmetry-breaking profile in {"none", "i11_7", "i11_6",
/// "i10_6"}.
#[pyfunction]
#[pyo3(signature = (m, w, profile = "none"))]
fn encode_dimacs(m: usize, w: usize, profile: &str) -> PyResult<String> {
    let profile: ConstraintProfile = profile.parse().map_err(py_err)?;
    let (f, map) = satgen::encode(m, w, profile).map_err(py_err)?;
    Ok(satgen::emit_dimacs(&f, &map))
}

/// Decodes solver model literals for the (m, w) instance into the
/// pattern set they denote, verified as I(m, w) before being returned.
#[pyfunction]
fn decode_model(model: Vec<i32>, m: usize, w: usize) -> PyResult<Vec<String>> {
    let (_, map) = satgen::encode(m, w, ConstraintProfile::None).map_err(py_err)?;
    let s = satgen::decode_model(&model, &map).map_err(py_err)?;
    Ok(from_set(s.set()))
}

/// Solver-free existence check for I(m, w) by exhaustive backtracking.
/// Returns the set if one exists, None if the full search space was
/// exhausted without one; raises RuntimeError if the node budget ran
/// out first (instance too large for the oracle).
#[pyfunction]
fn brute_force_admissible(m: usize, w: usize) -> PyResult<Option<Vec<String>>> {
    match satgen::brute_force_admissible(m, w).map_err(py_err)? {
        satgen::OracleOutcome::Found(s) => Ok(Some(from_set(s.set()))),
        satgen::OracleOutcome::Nonexistent => Ok(None),
        satgen::OracleOutcome::Inconclusive => Err(PyRuntimeError::new_err(
            "oracle node budget exhausted before the search space",
        )),
    }
}

#[pymodule]
fn capsets_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(is_cap_set, m)?)?;
    m.add_function(wrap_pyfunction!(is_admissible, m)?)?;
    m.add_function(wrap_pyfunction!(is_recursively_admissible, m)?)?;
    m.add_function(wrap_pyfunction!(is_constant_weight, m)?)?;
    m.add_function(wrap_pyfunction!(is_extendable, m)?)?;
    m.add_function(wrap_pyfunction!(is_meta_extendable, m)?)?;
    m.add_function(wrap_pyfunction!(build_chain, m)?)?;
    m.add_function(wrap_pyfunction!(build_low_weight, m)?)?;
    m.add_function(wrap_pyfunction!(build_edel6, m)?)?;
    m.add_function(wrap_pyfunction!(extended_product, m)?)?;
    m.add_function(wrap_pyfunction!(extended_product_count, m)?)?;
    m.add_function(wrap_pyfunction!(meta_extend, m)?)?;
    m.add_function(wrap_pyfunction!(search_meta_s0, m)?)?;
    m.add_function(wrap_pyfunction!(plan_count, m)?)?;
    m.add_function(wrap_pyfunction!(bound_for_plan, m)?)?;
    m.add_function(wrap_pyfunction!(nth_root_bound, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_limit, m)?)?;
    m.add_function(wrap_pyfunction!(entropy, m)?)?;
    m.add_function(wrap_pyfunction!(encode_dimacs, m)?)?;
    m.add_function(wrap_pyfunction!(decode_model, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_admissible, m)?)?;
    Ok(())
}
