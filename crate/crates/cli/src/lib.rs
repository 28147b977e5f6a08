//! Pipeline orchestration for the command line: parse the input, build the
//! triangulation, maximize volume, develop and verify the cusp, then emit
//! the JSON report and optionally an SVG of the tessellation.

pub mod json;
pub mod svg;

use json::Json;
use monotri_core::angles::{initial_structure, AngleStructure};
use monotri_core::error::Error;
use monotri_core::farey::{
    matrix_to_word, parse_bridge_word, parse_bundle_word, parse_matrix, MonodromyWord,
};
use monotri_core::geometry::{
    develop_cusp, fan_diagnostics, geodesic_complex_lengths, holonomy_residuals, rnlm_crosscheck,
    solve_rnlm, Similarity,
};
use monotri_core::triangulation::{
    build_bridge_triangulation, build_bundle_triangulation, LayeredTriangulation, TriKind,
};
use monotri_core::volume::{maximize_volume, VolumeReport};
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Bundle,
    Sphere,
    Bridge,
}

impl Mode {
    fn kind(self) -> TriKind {
        match self {
            Mode::Bundle => TriKind::TorusBundle,
            Mode::Sphere => TriKind::SphereBundle,
            Mode::Bridge => TriKind::TwoBridge,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Input {
    Word(String),
    Matrix(String),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: Mode,
    pub input: Input,
    pub tol: f64,
    pub max_iter: usize,
    pub json_path: Option<PathBuf>,
    pub svg_path: Option<PathBuf>,
    pub svg_periods: u32,
    pub rnlm: Option<(u32, u32)>,
}

impl RunConfig {
    pub fn new(mode: Mode, input: Input) -> Self {
        RunConfig {
            mode,
            input,
            tol: 1e-12,
            max_iter: 200,
            json_path: None,
            svg_path: None,
            svg_periods: 1,
            rnlm: None,
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub error: Error,
    pub exit_code: i32,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ({})", self.error, self.error.code())
    }
}

fn fail(error: Error) -> Failure {
    let exit_code = match &error {
        Error::WordNotMixed | Error::NotAnosov | Error::TooFewSyllables => 3,
        Error::NotConverged { .. } => 4,
        Error::WordEmpty
        | Error::Syntax(_)
        | Error::NotUnimodular
        | Error::DimensionMismatch { .. } => 2,
        _ => 1,
    };
    Failure { error, exit_code }
}

fn io_fail(err: std::io::Error) -> Failure {
    Failure { error: Error::Syntax(format!("io error: {err}")), exit_code: 1 }
}

/// Everything the run produced; the JSON report is the serialized form.
pub struct RunOutcome {
    pub word: String,
    pub volume: f64,
    pub converged: bool,
    pub iterations: usize,
    pub gradient_norm: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub max_residual: f64,
    pub report: Json,
}

fn word_for_bundle(cfg: &RunConfig) -> Result<(MonodromyWord, bool), Failure> {
    match &cfg.input {
        Input::Word(text) => Ok((parse_bundle_word(text).map_err(fail)?, false)),
        Input::Matrix(text) => {
            let m = parse_matrix(text).map_err(fail)?;
            let negated = m.trace() < -2;
            let w = matrix_to_word(&m).map_err(fail)?;
            Ok((w, negated))
        }
    }
}

fn similarity_json(sim: &Similarity<f64>) -> Json {
    Json::Obj(vec![
        ("re".into(), Json::num(sim.translation.re)),
        ("im".into(), Json::num(sim.translation.im)),
        ("rotation_residual".into(), Json::num(sim.rotation_residual())),
    ])
}

pub fn run(cfg: &RunConfig) -> Result<RunOutcome, Failure> {
    let (tri, negated): (LayeredTriangulation, bool) = match cfg.mode {
        Mode::Bundle | Mode::Sphere => {
            let (word, negated) = word_for_bundle(cfg)?;
            (build_bundle_triangulation(&word, cfg.mode.kind()), negated)
        }
        Mode::Bridge => {
            let text = match &cfg.input {
                Input::Word(text) => text,
                Input::Matrix(_) => {
                    return Err(fail(Error::Syntax(
                        "two-bridge input must be a word, not a matrix".into(),
                    )))
                }
            };
            let word = parse_bridge_word(text).map_err(fail)?;
            (build_bridge_triangulation(&word).map_err(fail)?, false)
        }
    };

    let start: AngleStructure<f64> = initial_structure(&tri).map_err(fail)?;
    let (structure, report): (AngleStructure<f64>, VolumeReport<f64>) =
        maximize_volume(&tri, &start.w, cfg.tol, cfg.max_iter).map_err(fail)?;

    let dev = develop_cusp(&tri, &structure).map_err(fail)?;
    let residuals = holonomy_residuals(&dev).map_err(fail)?;
    let fans = fan_diagnostics(&dev).map_err(fail)?;
    let geodesics = geodesic_complex_lengths(&dev).map_err(fail)?;
    let max_residual = residuals
        .iter()
        .map(|&(_, r)| r)
        .fold(0.0f64, f64::max)
        .max(dev.horizontal.rotation_residual())
        .max(dev.vertical.rotation_residual());

    let rnlm_json = match cfg.rnlm {
        None => None,
        Some((n, m)) => {
            let expected: Vec<(monotri_core::farey::Letter, u32)> = vec![
                (monotri_core::farey::Letter::R, n),
                (monotri_core::farey::Letter::L, m),
            ];
            let is_rnlm = tri.is_bundle()
                && parse_bundle_word(tri.word_display())
                    .map(|w| w.canonical().syllables() == expected.as_slice())
                    .unwrap_or(false);
            if !is_rnlm {
                return Err(fail(Error::Syntax(format!(
                    "--rnlm {n},{m} requires the word R{n}L{m}"
                ))));
            }
            let sol = solve_rnlm::<f64>(n, m, 1e-13).map_err(fail)?;
            let check = rnlm_crosscheck(&sol, &dev).map_err(fail)?;
            Some(Json::Obj(vec![
                ("a".into(), complex_json(sol.a)),
                ("a_prime".into(), complex_json(sol.a_prime)),
                ("b".into(), complex_json(sol.b)),
                ("b_prime".into(), complex_json(sol.b_prime)),
                ("iterations".into(), Json::Int(sol.iterations as i64)),
                ("residual".into(), Json::num(sol.residual)),
                (
                    "crosscheck".into(),
                    Json::Obj(vec![
                        ("max_vertex_mismatch".into(), Json::num(check.max_vertex_mismatch)),
                        ("max_ratio_mismatch".into(), Json::num(check.max_ratio_mismatch)),
                        (
                            "parallelogram_residual".into(),
                            Json::num(check.parallelogram_residual),
                        ),
                        ("congruence_residual".into(), Json::num(check.congruence_residual)),
                    ]),
                ),
            ]))
        }
    };

    let mut fields: Vec<(String, Json)> = vec![
        (
            "input".into(),
            Json::str(match &cfg.input {
                Input::Word(t) => t.clone(),
                Input::Matrix(t) => t.clone(),
            }),
        ),
        ("word".into(), Json::str(tri.word_display())),
        ("kind".into(), Json::str(tri.kind.name())),
        ("m_or_c".into(), Json::Int(tri.num_letters() as i64)),
        ("negated_monodromy".into(), Json::Bool(negated)),
        (
            "hinges".into(),
            Json::Arr(tri.hinges().iter().map(|&h| Json::Int(h as i64)).collect()),
        ),
        ("w".into(), Json::Arr(structure.w.iter().map(|&v| Json::num(v)).collect())),
        (
            "angles".into(),
            Json::Arr(
                structure
                    .angles()
                    .iter()
                    .map(|&(x, y, z)| {
                        Json::Obj(vec![
                            ("x".into(), Json::num(x)),
                            ("y".into(), Json::num(y)),
                            ("z".into(), Json::num(z)),
                        ])
                    })
                    .collect(),
            ),
        ),
        ("volume".into(), Json::num(report.total_volume)),
        (
            "bounds".into(),
            Json::Obj(vec![
                ("lower".into(), Json::num(report.lower_bound)),
                ("upper".into(), Json::num(report.upper_bound)),
                ("certificate".into(), Json::num(report.certificate_volume)),
            ]),
        ),
        ("gradient_norm".into(), Json::num(report.gradient_inf_norm)),
        ("iterations".into(), Json::Int(report.iterations as i64)),
        ("converged".into(), Json::Bool(report.converged)),
        (
            "holonomy_residuals".into(),
            Json::Arr(
                residuals
                    .iter()
                    .map(|(g, r)| {
                        Json::Obj(vec![
                            ("generator".into(), Json::str(g.to_string())),
                            ("residual".into(), Json::num(*r)),
                        ])
                    })
                    .collect(),
            ),
        ),
        (
            "fan_margins".into(),
            Json::Arr(
                fans.iter()
                    .map(|f| {
                        Json::Obj(vec![
                            ("fan".into(), Json::Int(f.fan as i64)),
                            ("q".into(), Json::num(f.q)),
                            ("p".into(), Json::num(f.p)),
                            ("t".into(), Json::num(f.t)),
                            ("margin".into(), Json::num(f.margin)),
                            ("scale".into(), Json::num(f.scale)),
                        ])
                    })
                    .collect(),
            ),
        ),
        (
            "geodesic_lengths".into(),
            Json::Arr(geodesics.iter().map(|g| complex_json(g.length)).collect()),
        ),
        (
            "periods".into(),
            Json::Obj(vec![
                ("horizontal".into(), similarity_json(&dev.horizontal)),
                ("vertical".into(), similarity_json(&dev.vertical)),
            ]),
        ),
    ];
    if let Some(r) = rnlm_json {
        fields.push(("rnlm".into(), r));
    }
    let report_json = Json::Obj(fields);

    if let Some(path) = &cfg.json_path {
        std::fs::write(path, json::to_bytes(&report_json)).map_err(io_fail)?;
    }
    if let Some(path) = &cfg.svg_path {
        std::fs::write(path, svg::emit_svg(&dev, cfg.svg_periods)).map_err(io_fail)?;
    }

    Ok(RunOutcome {
        word: tri.word_display().to_string(),
        volume: report.total_volume,
        converged: report.converged,
        iterations: report.iterations,
        gradient_norm: report.gradient_inf_norm,
        lower_bound: report.lower_bound,
        upper_bound: report.upper_bound,
        max_residual,
        report: report_json,
    })
}

fn complex_json(z: num_complex::Complex<f64>) -> Json {
    Json::Obj(vec![("re".into(), Json::num(z.re)), ("im".into(), Json::num(z.im))])
}
