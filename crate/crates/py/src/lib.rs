//! Python bindings. Players are 0-indexed on this side; profiles are either
//! 0/1 strings (`"0110"`) or sequences of 0/1 integers.

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

use bnpg::format::{self, Provenance};
use bnpg::gen::{self, GraphKind, GraphSpec, UtilityFamilyParams};
use bnpg::heuristic::HeuristicParams;
use bnpg::{
    oracle, ActionProfile, BnpgInstance, ExternalityTable, Graph, Homogeneity, SolveOptions,
    SolverChoice, Status,
};

fn to_py(e: bnpg::Error) -> PyErr {
    match e {
        bnpg::Error::Io(io) => PyOSError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

#[derive(FromPyObject)]
pub enum ProfileArg {
    Text(String),
    Bits(Vec<i64>),
}

impl ProfileArg {
    pub fn into_profile(self) -> bnpg::Result<ActionProfile> {
        match self {
            ProfileArg::Text(s) => s.parse(),
            ProfileArg::Bits(bits) => bits
                .into_iter()
                .map(|b| match b {
                    0 => Ok(false),
                    1 => Ok(true),
                    other => Err(bnpg::Error::ProfileParse(format!("entry {other} is not 0 or 1"))),
                })
                .collect::<bnpg::Result<Vec<bool>>>()
                .map(ActionProfile::new),
        }
    }
}

/// A binary networked public goods game.
#[pyclass(name = "Game", module = "pybnpg", frozen)]
pub struct PyGame {
    inner: BnpgInstance,
    provenance: Option<Provenance>,
}

impl PyGame {
    pub fn instance(&self) -> &BnpgInstance {
        &self.inner
    }

    fn profile(&self, x: ProfileArg) -> PyResult<ActionProfile> {
        let x = x.into_profile().map_err(to_py)?;
        self.inner.check_profile(&x).map_err(to_py)?;
        Ok(x)
    }
}

#[pymethods]
impl PyGame {
    /// `edges` are 0-indexed pairs; `g[i]` must have length `deg(i) + 2`.
    #[new]
    #[pyo3(signature = (n, edges, costs, g, homogeneity = "heterogeneous"))]
    fn new(
        n: usize,
        edges: Vec<(usize, usize)>,
        costs: Vec<f64>,
        g: Vec<Vec<f64>>,
        homogeneity: &str,
    ) -> PyResult<Self> {
        let homogeneity: Homogeneity = homogeneity.parse().map_err(to_py)?;
        let graph = Graph::from_edges(n, edges).map_err(to_py)?;
        let tables = g.into_iter().map(ExternalityTable::new).collect();
        let inner = BnpgInstance::new(graph, costs, tables, homogeneity).map_err(to_py)?;
        Ok(PyGame {
            inner,
            provenance: None,
        })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let file = format::load_game(path).map_err(to_py)?;
        Ok(PyGame {
            inner: file.instance,
            provenance: file.provenance,
        })
    }

    #[staticmethod]
    fn from_toml(text: &str) -> PyResult<Self> {
        let file = format::parse_game(text).map_err(to_py)?;
        Ok(PyGame {
            inner: file.instance,
            provenance: file.provenance,
        })
    }

    fn to_toml(&self) -> String {
        format::write_game(&self.inner, self.provenance.as_ref())
    }

    fn save(&self, path: &str) -> PyResult<()> {
        format::save_game(path, &self.inner, self.provenance.as_ref()).map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.graph().edges().collect()
    }

    #[getter]
    fn costs(&self) -> Vec<f64> {
        self.inner.costs().to_vec()
    }

    #[getter]
    fn tables(&self) -> Vec<Vec<f64>> {
        self.inner.tables().iter().map(|t| t.values().to_vec()).collect()
    }

    #[getter]
    fn homogeneity(&self) -> &'static str {
        self.inner.homogeneity().as_str()
    }

    fn utility(&self, profile: ProfileArg, i: usize) -> PyResult<f64> {
        let x = self.profile(profile)?;
        self.inner.utility(&x, i).map_err(to_py)
    }

    fn is_best_response(&self, profile: ProfileArg, i: usize) -> PyResult<bool> {
        let x = self.profile(profile)?;
        self.inner.is_best_response(&x, i).map_err(to_py)
    }

    fn is_psne(&self, profile: ProfileArg) -> PyResult<bool> {
        let x = self.profile(profile)?;
        self.inner.is_psne(&x).map_err(to_py)
    }

    fn deviation_gain(&self, profile: ProfileArg, i: usize) -> PyResult<f64> {
        let x = self.profile(profile)?;
        self.inner.deviation_gain(&x, i).map_err(to_py)
    }

    #[pyo3(signature = (profile, normalized = true))]
    fn max_epsilon(&self, profile: ProfileArg, normalized: bool) -> PyResult<f64> {
        let x = self.profile(profile)?;
        self.inner.max_epsilon(&x, normalized).map_err(to_py)
    }

    fn social_welfare(&self, profile: ProfileArg) -> PyResult<f64> {
        let x = self.profile(profile)?;
        self.inner.social_welfare(&x).map_err(to_py)
    }

    /// Every equilibrium as a 0/1 string, in lexicographic order.
    #[pyo3(signature = (limit = oracle::DEFAULT_LIMIT))]
    fn enumerate_psne(&self, py: Python<'_>, limit: usize) -> PyResult<Vec<String>> {
        let found = py
            .detach(|| oracle::enumerate_psne(&self.inner, limit))
            .map_err(to_py)?;
        Ok(found.iter().map(ToString::to_string).collect())
    }

    #[pyo3(signature = (
        method = "auto",
        seed = 0,
        trials = 10,
        max_iterations = 100,
        delta = 1.0,
        p = 1.0,
        normalized = true,
    ))]
    #[allow(clippy::too_many_arguments)]
    fn solve(
        &self,
        py: Python<'_>,
        method: &str,
        seed: u64,
        trials: usize,
        max_iterations: usize,
        delta: f64,
        p: f64,
        normalized: bool,
    ) -> PyResult<PyReport> {
        let choice: SolverChoice = method.parse().map_err(to_py)?;
        let options = SolveOptions {
            choice,
            heuristic: HeuristicParams {
                trials,
                max_iterations,
                delta,
                p,
                seed,
                normalized,
            },
            ..SolveOptions::default()
        };
        let report = py
            .detach(|| bnpg::solve(&self.inner, &options))
            .map_err(to_py)?;
        let welfare = match report.profile() {
            Some(x) => Some(self.inner.social_welfare(x).map_err(to_py)?),
            None => None,
        };
        Ok(PyReport {
            method: report.method.to_string(),
            status: report.status.label().to_string(),
            profile: report.profile().map(ToString::to_string),
            epsilon: match report.status {
                Status::Psne(_) => Some(0.0),
                Status::ApproxPsne { epsilon, .. } => Some(epsilon),
                Status::NoPsne => None,
            },
            welfare,
            exit_code: report.exit_code(),
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Game(n={}, edges={}, homogeneity={:?})",
            self.inner.n(),
            self.inner.graph().edge_count(),
            self.inner.homogeneity().as_str()
        )
    }
}

/// Outcome of [`PyGame::solve`].
#[pyclass(name = "Report", module = "pybnpg", frozen, get_all)]
pub struct PyReport {
    method: String,
    status: String,
    profile: Option<String>,
    epsilon: Option<f64>,
    welfare: Option<f64>,
    exit_code: i32,
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        format!(
            "Report(method={:?}, status={:?}, profile={:?}, epsilon={:?})",
            self.method, self.status, self.profile, self.epsilon
        )
    }
}

pub fn graph_kind(kind: &str, m: usize, k: usize, p: Option<f64>, exponent: Option<f64>) -> PyResult<GraphKind> {
    let need_p = || p.ok_or_else(|| PyValueError::new_err(format!("kind {kind:?} needs p")));
    Ok(match kind {
        "complete" => GraphKind::Complete,
        "path" => GraphKind::Path,
        "star" => GraphKind::Star,
        "tree" | "random_tree" => GraphKind::RandomTree,
        "cycle" => GraphKind::Cycle,
        "erdos_renyi" => GraphKind::ErdosRenyi { p: need_p()? },
        "barabasi_albert" => GraphKind::BarabasiAlbert { m, exponent },
        "watts_strogatz" => GraphKind::WattsStrogatz { k, p: need_p()? },
        other => return Err(PyValueError::new_err(format!("unknown graph kind {other:?}"))),
    })
}

/// Random game on a generated graph.
#[pyfunction]
#[pyo3(signature = (kind, n, gamma = 0.5, seed = 0, m = 3, k = 4, p = None, exponent = None))]
#[allow(clippy::too_many_arguments)]
fn generate(
    kind: &str,
    n: usize,
    gamma: f64,
    seed: u64,
    m: usize,
    k: usize,
    p: Option<f64>,
    exponent: Option<f64>,
) -> PyResult<PyGame> {
    let spec = GraphSpec {
        n,
        seed,
        kind: graph_kind(kind, m, k, p, exponent)?,
    };
    let utilities = UtilityFamilyParams::new(gamma);
    let graph = gen::gen_graph(&spec).map_err(to_py)?;
    let inner = gen::gen_utilities(graph, &utilities, bnpg::experiment::derive_seed(seed, 2))
        .map_err(to_py)?;
    Ok(PyGame {
        inner,
        provenance: Some(Provenance {
            seed: Some(seed),
            source: None,
            graph: Some(spec),
            utilities: Some(utilities),
        }),
    })
}

#[pymodule]
fn pybnpg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGame>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    Ok(())
}
