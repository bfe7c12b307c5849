//! Python bindings: instances and drawings travel as the text formats, plus
//! thin wrappers around validation, kernels, lifting, solving and rendering.

use brac_core::graph::{nd_partition, vertex_cover, CoverMode};
use brac_core::kernel::fen::{extract_kernel, SplitRule};
use brac_core::kernel::vc::{nd_to_vertex_cover, vc_kernelize, NdCover, ThresholdRule};
use brac_core::kernel::{lift, Recipe};
use brac_core::solver::{solve as core_solve, SearchMode, SolveOptions, SolveVerdict};
use brac_core::{
    generate_instance, parse_drawing, parse_instance, parse_kernel, render_svg, serialize_drawing,
    serialize_instance, serialize_kernel, validate as core_validate, GenKind, SvgStyle, DEFAULT_TOL,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: brac_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Instance", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyInstance(brac_core::Instance);

#[pymethods]
impl PyInstance {
    /// Parse the `brac 1` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_instance(text).map(Self).map_err(err)
    }

    /// Uniform per-edge cap `beta` and total budget `b`.
    #[staticmethod]
    #[pyo3(signature = (n, edges, b=0, beta=None))]
    fn from_edges(n: usize, edges: Vec<(usize, usize)>, b: usize, beta: Option<u8>) -> PyResult<Self> {
        let g = brac_core::Graph::from_edges(n, edges).map_err(err)?;
        let beta = beta.unwrap_or(b.min(3) as u8);
        brac_core::Instance::uniform(g, beta, b).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.graph.vertex_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.graph.edges().to_vec()
    }

    #[getter]
    fn budget(&self) -> usize {
        self.0.budget.total
    }

    #[getter]
    fn caps(&self) -> Vec<u8> {
        self.0.budget.per_edge.clone()
    }

    fn to_text(&self) -> String {
        serialize_instance(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Instance(n={}, m={}, b={})", self.n(), self.0.graph.edge_count(), self.0.budget.total)
    }
}

#[pyclass(name = "Drawing", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDrawing {
    graph: brac_core::Graph,
    inner: brac_core::Drawing,
}

#[pymethods]
impl PyDrawing {
    /// Parse the `bracdraw 1` text format against `instance`'s graph.
    #[staticmethod]
    fn parse(text: &str, instance: &PyInstance) -> PyResult<Self> {
        let g = instance.0.graph.clone();
        let inner = parse_drawing(text, &g).map_err(err)?;
        Ok(Self { graph: g, inner })
    }

    #[getter]
    fn vertices(&self) -> Vec<(f64, f64)> {
        self.inner.vertices.iter().map(|p| (p.x, p.y)).collect()
    }

    /// Bend points per edge, ordered from the lower endpoint.
    #[getter]
    fn bends(&self) -> Vec<Vec<(f64, f64)>> {
        self.inner.bends.iter().map(|b| b.iter().map(|p| (p.x, p.y)).collect()).collect()
    }

    fn to_text(&self) -> String {
        serialize_drawing(&self.graph, &self.inner)
    }
}

#[pyclass(name = "Report", frozen, get_all)]
struct PyReport {
    valid: bool,
    total_bends: usize,
    crossings: usize,
    violations: Vec<String>,
}

#[pymethods]
impl PyReport {
    fn __bool__(&self) -> bool {
        self.valid
    }

    fn __repr__(&self) -> String {
        format!("Report(valid={}, violations={})", self.valid, self.violations.len())
    }
}

/// A kernel together with what is needed to lift its drawings.
#[pyclass(name = "Kernel", frozen)]
struct PyKernel {
    kernel: brac_core::Instance,
    recipe: Recipe,
    #[pyo3(get)]
    rejected: Option<String>,
}

#[pymethods]
impl PyKernel {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let kf = parse_kernel(text).map_err(err)?;
        Ok(Self { kernel: kf.kernel, recipe: kf.recipe, rejected: None })
    }

    #[getter]
    fn instance(&self) -> PyInstance {
        PyInstance(self.kernel.clone())
    }

    #[pyo3(signature = (drawing, tol=DEFAULT_TOL))]
    fn lift(&self, drawing: &PyDrawing, tol: f64) -> PyResult<PyDrawing> {
        let d = lift(&self.kernel, &self.recipe, &drawing.inner, tol).map_err(err)?;
        Ok(PyDrawing { graph: self.recipe.original.graph.clone(), inner: d })
    }

    fn to_text(&self) -> String {
        serialize_kernel(&self.kernel, &self.recipe)
    }
}

#[pyfunction]
#[pyo3(signature = (instance, drawing, tol=DEFAULT_TOL))]
fn validate(instance: &PyInstance, drawing: &PyDrawing, tol: f64) -> PyResult<PyReport> {
    let r = core_validate(&instance.0.graph, &drawing.inner, &instance.0.budget, tol).map_err(err)?;
    Ok(PyReport {
        valid: r.is_valid(),
        total_bends: r.total_bends,
        crossings: r.crossing_count,
        violations: r.violations.iter().map(ToString::to_string).collect(),
    })
}

#[pyfunction]
fn fen_kernel(instance: &PyInstance) -> PyResult<PyKernel> {
    let r = extract_kernel(&instance.0, SplitRule::Proof).map_err(err)?;
    Ok(PyKernel { kernel: r.kernel, recipe: r.recipe, rejected: None })
}

#[pyfunction]
#[pyo3(signature = (instance, exact=true, theorem=false))]
fn vc_kernel(instance: &PyInstance, exact: bool, theorem: bool) -> PyResult<PyKernel> {
    let mode = if exact { CoverMode::Exact } else { CoverMode::Approx2 };
    let rule = if theorem { ThresholdRule::Theorem } else { ThresholdRule::Lemma };
    let c = vertex_cover(&instance.0.graph, mode);
    let r = vc_kernelize(&instance.0, &c, rule).map_err(err)?;
    let rejected = match &r.verdict {
        brac_core::kernel::vc::VcVerdict::Reject(why) => Some(why.to_string()),
        _ => None,
    };
    Ok(PyKernel { kernel: r.kernel, recipe: r.recipe, rejected })
}

/// `(nd, cover)`; `cover` is `None` when the instance is rejected outright.
#[pyfunction]
fn nd_cover(instance: &PyInstance) -> (usize, Option<Vec<usize>>) {
    let g = &instance.0.graph;
    let ndp = nd_partition(g);
    match nd_to_vertex_cover(g, &ndp, &instance.0.budget) {
        NdCover::Cover(c) => (ndp.size(), Some(c.vertices)),
        NdCover::Reject { .. } => (ndp.size(), None),
    }
}

/// `("yes", drawing)`, `("no", None)` or `("unknown", None)`.
#[pyfunction]
#[pyo3(signature = (instance, mode="numeric", seed=0, restarts=64, iters=2000))]
fn solve(
    py: Python<'_>,
    instance: &PyInstance,
    mode: &str,
    seed: u64,
    restarts: usize,
    iters: usize,
) -> PyResult<(&'static str, Option<PyDrawing>)> {
    let mode = match mode {
        "planar" => SearchMode::Planar,
        "numeric" => SearchMode::Numeric,
        "grid" => SearchMode::Grid,
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    let mut opts = SolveOptions::with_mode(mode);
    opts.search.seed = seed;
    opts.search.restarts = restarts;
    opts.search.iters = iters;
    let inst = &instance.0;
    let out = py.detach(|| core_solve(inst, &opts));
    Ok(match out.verdict {
        SolveVerdict::Yes(d) => ("yes", Some(PyDrawing { graph: inst.graph.clone(), inner: d })),
        SolveVerdict::No => ("no", None),
        SolveVerdict::Unknown => ("unknown", None),
    })
}

/// SVG text; violations are highlighted.
#[pyfunction]
fn render(instance: &PyInstance, drawing: &PyDrawing) -> PyResult<String> {
    let r = core_validate(&instance.0.graph, &drawing.inner, &instance.0.budget, DEFAULT_TOL).map_err(err)?;
    Ok(render_svg(&instance.0, &drawing.inner, &SvgStyle::default(), Some(&r)))
}

/// `kind` is `"fen"` or `"vc"`; `param` is the parameter value.
#[pyfunction]
#[pyo3(signature = (kind, param, n, b=0, seed=0))]
fn generate(kind: &str, param: usize, n: usize, b: usize, seed: u64) -> PyResult<PyInstance> {
    let kind = match kind {
        "fen" => GenKind::BoundedFen,
        "vc" => GenKind::BoundedVc,
        other => return Err(PyValueError::new_err(format!("unknown kind {other:?}"))),
    };
    generate_instance(kind, param, n, b, seed).map(PyInstance).map_err(err)
}

#[pymodule]
fn brac(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_class::<PyDrawing>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PyKernel>()?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(fen_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(vc_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(nd_cover, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(render, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    Ok(())
}
