//! Python bindings: family catalog, single-instance checkers, identities
//! and whole campaigns. Families are passed by name (`"T_MAIN1"`), and
//! polynomials as coefficient lists starting at the constant term.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qcong::algebra::{LaurentPoly, RatFunc};
use qcong::catalog::{self, sample_params, FamilyId, FamilyParams, Truncation};
use qcong::cli::{self, CampaignConfig, Mode};
use qcong::cyclotomic::{self, CycloCache, Valuation};
use qcong::verify::{self, BackendPolicy, CheckOptions, CongruenceReport, Lemma, Verdict};

fn err(e: qcong::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn family(name: &str) -> PyResult<FamilyId> {
    name.parse().map_err(err)
}

/// The family's own `d`, `r` unless overridden.
fn params(f: FamilyId, d: Option<i64>, r: Option<i64>) -> FamilyParams {
    let s = sample_params(f);
    FamilyParams::new(d.unwrap_or(s.d), r.or(s.r), 0)
}

fn options(backend: &str) -> PyResult<CheckOptions> {
    let backend: BackendPolicy = backend.parse().map_err(err)?;
    Ok(CheckOptions { backend, cross_check: false })
}

fn truncation(s: &str) -> PyResult<Truncation> {
    match cli::parse_truncations(s).map_err(err)?.as_slice() {
        [t] => Ok(*t),
        _ => Err(PyValueError::new_err("expected a single truncation")),
    }
}

fn cache() -> &'static CycloCache {
    CycloCache::global()
}

/// One checked claim instance.
#[pyclass(frozen, name = "Report", module = "pyqcong")]
pub struct PyReport {
    inner: CongruenceReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn family(&self) -> &'static str {
        self.inner.family.as_str()
    }

    #[getter]
    fn d(&self) -> i64 {
        self.inner.params.d
    }

    #[getter]
    fn r(&self) -> Option<i64> {
        self.inner.params.r
    }

    #[getter]
    fn n(&self) -> i64 {
        self.inner.params.n
    }

    #[getter]
    fn truncation(&self) -> &'static str {
        self.inner.truncation.as_str()
    }

    #[getter]
    fn modulus(&self) -> String {
        self.inner.modulus.to_string()
    }

    #[getter]
    fn required(&self) -> u32 {
        self.inner.required
    }

    #[getter]
    fn observed(&self) -> String {
        self.inner.observed.to_string()
    }

    #[getter]
    fn verdict(&self) -> String {
        self.inner.verdict.to_string()
    }

    #[getter]
    fn note(&self) -> Option<String> {
        match &self.inner.verdict {
            Verdict::Pass => None,
            Verdict::Fail(s) | Verdict::Skipped(s) => Some(s.clone()),
        }
    }

    #[getter]
    fn backend(&self) -> String {
        self.inner.backend.to_string()
    }

    #[getter]
    fn passed(&self) -> bool {
        self.inner.verdict.is_pass()
    }

    fn __str__(&self) -> String {
        self.inner.to_line(false)
    }

    fn __repr__(&self) -> String {
        format!("Report({})", self.inner.to_line(false))
    }
}

fn wrap(r: qcong::Result<CongruenceReport>) -> PyResult<PyReport> {
    r.map(|inner| PyReport { inner }).map_err(err)
}

/// Every family name.
#[pyfunction]
fn families() -> Vec<&'static str> {
    FamilyId::ALL.iter().map(|f| f.as_str()).collect()
}

/// Claims of a family as `(modulus, condition, truncation, status)` tuples.
#[pyfunction]
#[pyo3(signature = (family_name, d=None, r=None))]
fn claims(family_name: &str, d: Option<i64>, r: Option<i64>) -> PyResult<Vec<(String, String, String, String)>> {
    let f = family(family_name)?;
    let list = catalog::claims_for(f, &params(f, d, r)).map_err(err)?;
    Ok(list
        .into_iter()
        .map(|c| {
            (c.modulus_kind.to_string(), c.describe_condition(), c.truncation.to_string(), c.status.to_string())
        })
        .collect())
}

/// The truncated sum `Σ_{k<=upto}` at `a = 1`, as `(num, den)` coefficient
/// lists with the lowest exponent of each given separately.
#[pyfunction]
#[pyo3(signature = (family_name, upto, d=None, r=None))]
fn partial_sum(
    family_name: &str,
    upto: u64,
    d: Option<i64>,
    r: Option<i64>,
) -> PyResult<((i64, Vec<String>), (i64, Vec<String>))> {
    let f = family(family_name)?;
    let p = params(f, d, r).at_a_equal_one();
    let x = catalog::partial_sum_univariate(f, &p, upto).map_err(err)?;
    Ok((coeffs(x.num()), coeffs(x.den())))
}

fn coeffs(p: &LaurentPoly) -> (i64, Vec<String>) {
    let lo = p.min_exp().unwrap_or(0);
    let hi = p.max_exp().unwrap_or(-1);
    (lo, (lo..=hi).map(|e| p.coeff(e).to_string()).collect())
}

/// `Φ_n`-adic valuation of `num/den`; `None` when `num` is zero.
#[pyfunction]
fn val_phi(num: Vec<i64>, den: Vec<i64>, n: u64) -> PyResult<Option<i64>> {
    let x = RatFunc::new(LaurentPoly::from_coeffs(0, &num), LaurentPoly::from_coeffs(0, &den)).map_err(err)?;
    Ok(match cyclotomic::val_phi(&x, n, cache()).map_err(err)? {
        Valuation::Finite(v) => Some(v),
        Valuation::Infinite => None,
    })
}

/// Coefficients of `Φ_n`, constant term first.
#[pyfunction]
fn cyclotomic_poly(n: u64) -> PyResult<Vec<String>> {
    let p = cache().phi(n).map_err(err)?;
    Ok(coeffs(&p).1)
}

#[pyfunction]
#[pyo3(signature = (family_name, n, e, d=None, r=None, backend="auto"))]
fn check_phi_power(
    family_name: &str,
    n: i64,
    e: u32,
    d: Option<i64>,
    r: Option<i64>,
    backend: &str,
) -> PyResult<PyReport> {
    let f = family(family_name)?;
    wrap(verify::check_phi_power(f, &params(f, d, r), n, e, &options(backend)?, cache()))
}

#[pyfunction]
#[pyo3(signature = (n, truncation="n-1", backend="auto"))]
fn check_qint_square(n: i64, truncation: &str, backend: &str) -> PyResult<PyReport> {
    wrap(verify::check_qint_square(n, self::truncation(truncation)?, &options(backend)?, cache()))
}

#[pyfunction]
#[pyo3(signature = (family_name, n, d=None, r=None))]
fn check_bivar_vanish(family_name: &str, n: i64, d: Option<i64>, r: Option<i64>) -> PyResult<PyReport> {
    let f = family(family_name)?;
    wrap(verify::check_bivar_vanish(f, &params(f, d, r), n, cache()))
}

#[pyfunction]
#[pyo3(signature = (family_name, n, d=None))]
fn check_bivar_phi(family_name: &str, n: i64, d: Option<i64>) -> PyResult<PyReport> {
    let f = family(family_name)?;
    wrap(verify::check_bivar_phi(f, &params(f, d, None), n, cache()))
}

#[pyfunction]
#[pyo3(signature = (family_name, n, d=None, r=None, backend="auto"))]
fn measure_conjecture(
    family_name: &str,
    n: i64,
    d: Option<i64>,
    r: Option<i64>,
    backend: &str,
) -> PyResult<PyReport> {
    let f = family(family_name)?;
    wrap(verify::measure_conjecture(f, &params(f, d, r), n, &options(backend)?, cache()))
}

#[pyfunction]
fn check_lemma(lemma: &str, d: i64, n: i64, k: i64) -> PyResult<bool> {
    let l: Lemma = lemma.parse().map_err(err)?;
    verify::check_lemma(l, d, n, k, cache()).map_err(err)
}

#[pyfunction]
fn check_qbino(n: i64, j: i64) -> PyResult<bool> {
    verify::check_qbino(n, j).map_err(err)
}

#[pyfunction]
fn check_prime_case(family_name: &str, d: i64, p: i64) -> PyResult<bool> {
    verify::check_prime_case(family(family_name)?, d, p).map_err(err)
}

#[pyfunction]
fn check_closed_form(family_name: &str, n: i64) -> PyResult<bool> {
    verify::check_closed_form(family(family_name)?, n).map_err(err)
}

/// The bracket `2[2N-o] + q^(2N-2)` singled out by the partial sums.
#[pyfunction]
#[pyo3(signature = (max_n=10))]
fn resolve_cf_ind_bracket(max_n: i64) -> PyResult<String> {
    Ok(verify::resolve_cf_ind_bracket(max_n).map_err(err)?.describe())
}

/// Runs a campaign over theorem claims (`mode="verify"`) or conjecture
/// instances (`mode="explore"`); reports come back sorted.
#[pyfunction]
#[pyo3(signature = (families, d=None, r=None, n_max=20, mode="verify", backend="auto", jobs=1))]
#[allow(clippy::too_many_arguments)]
fn campaign(
    py: Python<'_>,
    families: Vec<String>,
    d: Option<Vec<i64>>,
    r: Option<Vec<i64>>,
    n_max: i64,
    mode: &str,
    backend: &str,
    jobs: usize,
) -> PyResult<Vec<PyReport>> {
    let mode = match mode {
        "verify" => Mode::Verify,
        "explore" => Mode::Explore,
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    let cfg = CampaignConfig {
        families: families.iter().map(|f| family(f)).collect::<PyResult<_>>()?,
        d_range: d,
        r_range: r,
        n_max,
        backend: options(backend)?.backend,
        jobs,
        ..CampaignConfig::default()
    };
    cfg.validate().map_err(err)?;
    let outcome = py.detach(|| {
        let plan = cli::plan(&cfg, mode);
        cli::campaign::run(&cfg, &plan, cache())
    });
    let outcome = outcome.map_err(err)?;
    if let Some((task, e)) = outcome.errors.first() {
        return Err(PyValueError::new_err(cli::campaign::task_error_line(task, e)));
    }
    Ok(outcome.reports.into_iter().map(|inner| PyReport { inner }).collect())
}

#[pyfunction]
fn dump_catalog() -> PyResult<String> {
    catalog::dump_catalog().map_err(err)
}

#[pymodule]
fn pyqcong(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(families, m)?)?;
    m.add_function(wrap_pyfunction!(claims, m)?)?;
    m.add_function(wrap_pyfunction!(partial_sum, m)?)?;
    m.add_function(wrap_pyfunction!(val_phi, m)?)?;
    m.add_function(wrap_pyfunction!(cyclotomic_poly, m)?)?;
    m.add_function(wrap_pyfunction!(check_phi_power, m)?)?;
    m.add_function(wrap_pyfunction!(check_qint_square, m)?)?;
    m.add_function(wrap_pyfunction!(check_bivar_vanish, m)?)?;
    m.add_function(wrap_pyfunction!(check_bivar_phi, m)?)?;
    m.add_function(wrap_pyfunction!(measure_conjecture, m)?)?;
    m.add_function(wrap_pyfunction!(check_lemma, m)?)?;
    m.add_function(wrap_pyfunction!(check_qbino, m)?)?;
    m.add_function(wrap_pyfunction!(check_prime_case, m)?)?;
    m.add_function(wrap_pyfunction!(check_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(resolve_cf_ind_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(campaign, m)?)?;
    m.add_function(wrap_pyfunction!(dump_catalog, m)?)?;
    Ok(())
}
