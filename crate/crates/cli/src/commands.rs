use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;

use graph_frames::io::{
    format_f64, frame_from_csv, frame_to_csv, matrix_from_csv, matrix_to_csv, parse_edge_list,
    write_edge_list, FORMAT_HEADER,
};
use graph_frames::report::REPORT_FORMAT;
use graph_frames::{
    dual_from_shifts, dual_is_in_family, is_g_frame, is_lg_frame, report_to_json, survey_with,
    unitary_equivalence_map, DualSpec, Error, ErrorClass, Execution, Frame, Graph, Report,
    TolerancePolicy, RANDOM_GRAPH_ALGORITHM,
};
use serde_json::json;

use crate::Kind;

pub struct Outcome {
    pub stdout: String,
    /// Exit 0 when true, 1 otherwise.
    pub passed: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            passed: true,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Lib(Error),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.class() == ErrorClass::Internal => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) | CliError::Usage(m) => f.write_str(m),
            CliError::Lib(e) => e.fmt(f),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult = Result<Outcome, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: graph_frames::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| match e {
        Error::Parse { .. } => CliError::Io(format!("{}: {e}", path.display())),
        other => CliError::Lib(other),
    })
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    with_path(path, parse_edge_list(&read(path)?))
}

fn load_frame(path: &Path) -> Result<Frame, CliError> {
    with_path(path, frame_from_csv(&read(path)?))
}

pub fn gen_graph(
    kind: Kind,
    n: usize,
    p: Option<f64>,
    seed: u64,
    union: Option<&Path>,
) -> CliResult {
    let mut note = None;
    let g = match kind {
        Kind::Complete => Graph::complete(n),
        Kind::Cycle => Graph::cycle(n),
        Kind::Path => Graph::path(n),
        Kind::Star => Graph::star(n),
        Kind::Random => {
            let p = p.ok_or_else(|| CliError::Usage("--p is required for random graphs".into()))?;
            note = Some(format!(
                "# random {RANDOM_GRAPH_ALGORITHM} n={n} p={} seed={seed}\n",
                format_f64(p)
            ));
            Graph::random(n, p, seed)
        }
    }?;
    let g = match union {
        Some(path) => g.disjoint_union(&load_graph(path)?),
        None => g,
    };
    let text = write_edge_list(&g);
    Ok(Outcome::ok(match note {
        Some(note) => text.replacen('\n', &format!("\n{note}"), 1),
        None => text,
    }))
}

pub fn frame(input: &Path, out: Option<&Path>, json: bool) -> CliResult {
    let tol = TolerancePolicy::default();
    let g = load_graph(input)?;
    let report = Report::build(&g, &tol)?;
    let csv = frame_to_csv(&Frame::new(report.frame.vectors.clone())?);
    if let Some(path) = out {
        write(path, &csv)?;
    }
    let stdout = if json {
        report_to_json(&report) + "\n"
    } else if out.is_some() {
        let mut s = String::new();
        writeln!(s, "vectors: {} in dimension {}", g.n(), report.frame.dim).unwrap();
        writeln!(
            s,
            "laplacian spectrum: {}",
            join(&report.spectrum.laplacian)
        )
        .unwrap();
        writeln!(
            s,
            "bounds: {} {}",
            format_f64(report.frame.bounds.lower),
            format_f64(report.frame.bounds.upper)
        )
        .unwrap();
        writeln!(
            s,
            "gramian residual: {:e}",
            report.residuals.construction.gramian
        )
        .unwrap();
        s
    } else {
        csv
    };
    Ok(Outcome::ok(stdout))
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(|&x| format_f64(x))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn analyze(input: &Path, json: bool) -> CliResult {
    let tol = TolerancePolicy::default();
    let g = load_graph(input)?;
    let report = Report::build(&g, &tol)?;
    let passed = report.eigenvalue_bounds.all_hold();
    if json {
        return Ok(Outcome {
            stdout: report_to_json(&report) + "\n",
            passed,
        });
    }
    let t = &report.tightness;
    let b = &report.eigenvalue_bounds;
    let opt = |x: Option<f64>| x.map_or("-".to_string(), format_f64);
    let mut s = String::new();
    writeln!(
        s,
        "n: {}  edges: {}  components: {}",
        g.n(),
        g.edge_count(),
        report.graph.components
    )
    .unwrap();
    writeln!(
        s,
        "tight: {}  alpha: {}  predicted alpha: {}",
        t.is_tight,
        opt(t.alpha),
        opt(t.predicted_alpha)
    )
    .unwrap();
    writeln!(
        s,
        "frame bounds: {} {}",
        format_f64(t.bounds.lower),
        format_f64(t.bounds.upper)
    )
    .unwrap();
    writeln!(
        s,
        "regular: {}  null vertex: {}  complete: {}  connected: {}",
        t.regular_degree.map_or("no".into(), |r| format!("r = {r}")),
        t.has_null_vertex,
        t.is_complete,
        t.is_connected
    )
    .unwrap();
    let clusters: Vec<String> = t
        .adjacency_distinct
        .iter()
        .map(|(v, m)| format!("{}^{m}", format_f64(*v)))
        .collect();
    writeln!(s, "adjacency eigenvalues: {}", clusters.join(" ")).unwrap();
    writeln!(
        s,
        "uniform: {}  norm: {}",
        t.is_uniform,
        opt(t.uniform_norm)
    )
    .unwrap();
    writeln!(
        s,
        "mu_1 = {} >= Delta + 1 = {}: {}",
        format_f64(b.largest_eigenvalue),
        format_f64(b.max_degree_plus_one),
        b.holds
    )
    .unwrap();
    if let Some(c) = &b.connectivity {
        writeln!(
            s,
            "mu_(n-1) = {} <= n delta/(n-1) = {}: {}",
            format_f64(c.algebraic_connectivity),
            format_f64(c.bound),
            c.holds
        )
        .unwrap();
    }
    Ok(Outcome { stdout: s, passed })
}

pub fn dual(input: &Path, frame: &Path, shifts: Option<&Path>, out: Option<&Path>) -> CliResult {
    let tol = TolerancePolicy::default();
    let g = load_graph(input)?;
    let f = load_frame(frame)?;
    let spec = match shifts {
        Some(path) => DualSpec {
            shifts: with_path(path, matrix_from_csv(&read(path)?))?.to_rows(),
        },
        None => DualSpec::zero(g.connected_components().count, f.dim()),
    };
    let d = dual_from_shifts(&f, &g, &spec, &tol)?;
    let csv = frame_to_csv(&d);
    match out {
        Some(path) => {
            write(path, &csv)?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(csv)),
    }
}

pub fn verify(input: &Path, frame: &Path, dual: Option<&Path>) -> CliResult {
    let tol = TolerancePolicy::default();
    let g = load_graph(input)?;
    let f = load_frame(frame)?;
    let g_check = is_g_frame(&f, &g, &tol)?;
    let lg = is_lg_frame(&f, &g, &tol)?;
    let mut passed = g_check.holds;

    let dual_json = match dual {
        Some(path) => {
            let d = load_frame(path)?;
            let check = f.verify_dual(&d, &tol)?;
            let family = dual_is_in_family(&f, &g, &d, &tol)?;
            passed &= check.holds && family.in_family;
            json!({
                "verify_dual": check.holds,
                "dual_residual": check.residual,
                "dual_is_in_family": family.in_family,
                "constancy_residual": family.constancy_residual,
                "shifts": family.recovered.shifts,
            })
        }
        None => serde_json::Value::Null,
    };
    let out = json!({
        "format": REPORT_FORMAT,
        "tolerances": tol,
        "is_g_frame": g_check.holds,
        "gramian_residual": g_check.residual,
        "is_lg_frame": lg,
        "dual": dual_json,
        "passed": passed,
    });
    Ok(Outcome {
        stdout: report_to_json(&out) + "\n",
        passed,
    })
}

pub fn equiv(input: &Path, a: &Path, b: &Path, out: Option<&Path>) -> CliResult {
    let tol = TolerancePolicy::default();
    let g = load_graph(input)?;
    let fa = load_frame(a)?;
    let fb = load_frame(b)?;
    let map = unitary_equivalence_map(&fa, &fb, &g, &tol)?;
    let csv = matrix_to_csv(&map.u);
    let residuals = format!(
        "# max_orth_residual={}\n# max_map_residual={}\n",
        format_f64(map.max_orth_residual),
        format_f64(map.max_map_residual)
    );
    let stdout = match out {
        Some(path) => {
            write(path, &csv)?;
            residuals
        }
        None => csv.replacen(
            &format!("{FORMAT_HEADER}\n"),
            &format!("{FORMAT_HEADER}\n{residuals}"),
            1,
        ),
    };
    Ok(Outcome {
        stdout,
        passed: map.holds(&tol),
    })
}

pub fn survey(max_n: usize, json: bool, sequential: bool) -> CliResult {
    let tol = TolerancePolicy::default();
    let exec = if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let report = survey_with(max_n, &tol, exec)?;
    let passed = report.violations == 0;
    let stdout = if json {
        let out = json!({
            "format": REPORT_FORMAT,
            "tolerances": tol,
            "max_n": report.max_n,
            "graphs": report.row(max_n).map_or(0, |r| r.graphs),
            "total_graphs": report.total_graphs,
            "violations": report.violations,
            "rows": report.rows,
        });
        report_to_json(&out) + "\n"
    } else {
        let mut s = String::from("n  graphs  tight  connected  connected_tight  violations\n");
        for r in &report.rows {
            writeln!(
                s,
                "{}  {}  {}  {}  {}  {}",
                r.n,
                r.graphs,
                r.tight,
                r.connected,
                r.connected_tight,
                r.violations.total()
            )
            .unwrap();
        }
        writeln!(s, "violations: {}", report.violations).unwrap();
        s
    };
    Ok(Outcome { stdout, passed })
}
