//! Python bindings: the `cohowork` extension module.

use cohowork_core::chern16::{self, MergedClassFunction};
use cohowork_core::cochain::{self, Coefficients};
use cohowork_core::constants::CONSTANTS;
use cohowork_core::datasets;
use cohowork_core::foxone;
use cohowork_core::groupkit::named_group;
use cohowork_core::repfun::{fixed_points, quotient_module};
use cohowork_core::specseq::{self, IntegralCohomology};
use cohowork_core::tdual::TDualityDatum;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: cohowork_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Relator checks for the bundled Co1 generators, one bool per relator.
#[pyfunction]
fn verify_co1() -> PyResult<Vec<bool>> {
    datasets::co1_rep().and_then(|r| r.check_relators()).map_err(err)
}

/// `H^1(Co1, M)` for `M` in `natural`, `alt2`, `alt2-quotient`.
#[pyfunction]
fn co1_h1(module: &str) -> PyResult<String> {
    let pres = datasets::co1_presentation().map_err(err)?;
    let rep = datasets::co1_rep().map_err(err)?;
    let m = match module {
        "natural" => rep,
        "alt2" => rep.alt2().map_err(err)?,
        "alt2-quotient" => {
            let alt = rep.alt2().map_err(err)?;
            let fix = fixed_points(&alt).map_err(err)?;
            quotient_module(&alt, &fix.to_rows()).map_err(err)?
        }
        _ => return Err(PyValueError::new_err(format!("unknown module `{module}`"))),
    };
    Ok(foxone::h1(&pres, &m).map_err(err)?.to_string())
}

/// `dim H^1(G, F_p)` for the bundled Co1 presentation.
#[pyfunction]
fn co1_abelianization_rank(prime: u32) -> PyResult<usize> {
    let pres = datasets::co1_presentation().map_err(err)?;
    foxone::abelianization_rank(&pres, prime).map_err(err)
}

/// `H^k(G, U(1))` of a named group such as `Z4`, `Z2^2`, `Q16`.
#[pyfunction]
fn cohomology_u1(group: &str, k: usize) -> PyResult<String> {
    let g = named_group(group).map_err(err)?;
    Ok(cochain::cohomology_u1(&g, k).map_err(err)?.to_string())
}

/// `H^k(G, Z/m)` with trivial action.
#[pyfunction]
fn cohomology_trivial(group: &str, modulus: u64, k: usize) -> PyResult<String> {
    let g = named_group(group).map_err(err)?;
    let n = Coefficients::trivial(g.order(), modulus, 1);
    Ok(cochain::cohomology_module(&g, &n, k).map_err(err)?.to_string())
}

/// `H^4(A x B, Z)` from the cohomology of the factors.
#[pyfunction]
fn kunneth(left: &str, right: &str) -> PyResult<String> {
    let a = IntegralCohomology::from_table(&named_group(left).map_err(err)?).map_err(err)?;
    let b = IntegralCohomology::from_table(&named_group(right).map_err(err)?).map_err(err)?;
    Ok(specseq::kunneth_degree4_z(&a, &b).to_string())
}

/// Rows `(p, method, value)` of the large-primes table.
#[pyfunction]
fn large_primes() -> PyResult<Vec<(u64, String, String)>> {
    Ok(specseq::large_primes_table()
        .map_err(err)?
        .into_iter()
        .map(|r| (r.p, r.method, r.value.to_string()))
        .collect())
}

/// Multiplicities of `V0..V6` for traces on `1A, 2B, 4D, 8F`.
#[pyfunction]
fn chern_decompose(traces: [i64; 4]) -> PyResult<[i64; 7]> {
    chern16::decompose_merged(&MergedClassFunction::new(traces)).map_err(err)
}

/// `c2` in `Z/16`, in units of `c2(V6)`.
#[pyfunction]
fn chern_c2(traces: [i64; 4]) -> PyResult<u8> {
    chern16::c2_restricted(&MergedClassFunction::new(traces)).map_err(err)
}

/// Whether the multiplicities satisfy the three divisibility conditions.
#[pyfunction]
fn chern_divisibility(traces: [i64; 4]) -> PyResult<bool> {
    Ok(chern16::verify_monster_divisibility(&MergedClassFunction::new(traces))
        .map_err(err)?
        .passes())
}

/// `(c2(V4), c2(V5), c2(V2 + V3))`.
#[pyfunction]
fn chern_constants() -> PyResult<(u8, u8, u8)> {
    let k = chern16::chern_constants().map_err(err)?;
    Ok((k.c2_v4, k.c2_v5, k.c2_v2_plus_v3))
}

/// `None` if the datum text is valid, otherwise the violation.
#[pyfunction]
fn tdual_validate(text: &str) -> PyResult<Option<String>> {
    let d = TDualityDatum::from_text(text).map_err(err)?;
    Ok(d.validate().map_err(err)?.map(|v| v.to_string()))
}

#[pyfunction]
fn tdual_dualize(text: &str) -> PyResult<String> {
    let d = TDualityDatum::from_text(text).map_err(err)?;
    Ok(d.dualize().map_err(err)?.to_text())
}

/// Quoted inputs as `(name, value, source)`.
#[pyfunction]
fn constants() -> Vec<(&'static str, String, &'static str)> {
    CONSTANTS.iter().map(|c| (c.name, c.value_text(), c.source)).collect()
}

#[pymodule]
fn cohowork(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(verify_co1, m)?)?;
    m.add_function(wrap_pyfunction!(co1_h1, m)?)?;
    m.add_function(wrap_pyfunction!(co1_abelianization_rank, m)?)?;
    m.add_function(wrap_pyfunction!(cohomology_u1, m)?)?;
    m.add_function(wrap_pyfunction!(cohomology_trivial, m)?)?;
    m.add_function(wrap_pyfunction!(kunneth, m)?)?;
    m.add_function(wrap_pyfunction!(large_primes, m)?)?;
    m.add_function(wrap_pyfunction!(chern_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(chern_c2, m)?)?;
    m.add_function(wrap_pyfunction!(chern_divisibility, m)?)?;
    m.add_function(wrap_pyfunction!(chern_constants, m)?)?;
    m.add_function(wrap_pyfunction!(tdual_validate, m)?)?;
    m.add_function(wrap_pyfunction!(tdual_dualize, m)?)?;
    m.add_function(wrap_pyfunction!(constants, m)?)?;
    Ok(())
}
