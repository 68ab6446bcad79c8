//! Command implementations. Each returns a serializable report together with
//! its exit code; printing is left to the binary.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use flatband_core::flatband::{
    flat_bands, generic_flat_band_decision, vertical_segment_face_witness, FlatBandReport, GenericVerdict,
};
use flatband_core::floquet::{build_floquet, dispersion};
use flatband_core::graph::PeriodicGraph;
use flatband_core::labeling::Labeling;
use flatband_core::numeric::{numeric_flat_flags, refine_real_roots, sample_bands, track_level};
use flatband_core::polytope::{
    facial_independence_witness, generic_support, is_vertical_segment, symbolic_generic_support, NewtonPolytopeData,
    Point,
};
use flatband_core::sampling::{random_corpus, random_labeling, trial_rng, GraphBounds};
use flatband_core::{FlatBandError, NumericError, PolytopeError};

use crate::input::{describe_class, format_rational, to_spec_file, GraphSpecFile, InputError, LabelMode, ParsedGraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREEMENT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_FLAT_BAND: i32 = 10;
pub const EXIT_INCONSISTENT: i32 = 11;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    FlatBand(#[from] FlatBandError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("cannot write {path}: {message}")]
    Output { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

/// A finished command: the report document and the process exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: serde_json::Value,
    pub exit_code: i32,
}

fn outcome<T: Serialize>(report: &T, exit_code: i32) -> Outcome {
    let mut value = serde_json::to_value(report).expect("reports serialize");
    if let serde_json::Value::Object(map) = &mut value {
        map.insert("exit_code".to_string(), exit_code.into());
    }
    Outcome { report: value, exit_code }
}

#[derive(Debug, Serialize)]
pub struct InputEcho {
    pub command: &'static str,
    pub file: Option<String>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<LabelMode>,
    pub dimension: usize,
    pub orbits: Vec<String>,
    pub edge_classes: Vec<String>,
}

impl InputEcho {
    fn new(command: &'static str, file: &Path, parsed: &ParsedGraph, seed: u64, labels: Option<LabelMode>) -> Self {
        InputEcho {
            command,
            file: Some(file.display().to_string()),
            seed,
            labels,
            dimension: parsed.graph.dimension(),
            orbits: parsed.orbit_ids.clone(),
            edge_classes: parsed.graph.edges().iter().map(|c| describe_class(c, &parsed.orbit_ids)).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LabelSection {
    pub potentials: Vec<String>,
    pub weights: Vec<String>,
}

impl LabelSection {
    fn new(parsed: &ParsedGraph, lab: &Labeling) -> Self {
        LabelSection {
            potentials: (0..parsed.graph.num_orbits())
                .map(|u| format!("{} = {}", parsed.orbit_ids[u], format_rational(lab.potential(u))))
                .collect(),
            weights: parsed
                .graph
                .edges()
                .iter()
                .map(|c| {
                    let w = lab.weight(c).expect("labels cover every class");
                    format!("{} = {}", describe_class(c, &parsed.orbit_ids), format_rational(w))
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RootEntry {
    pub value: String,
    pub multiplicity: u32,
    pub divides_exactly: bool,
}

#[derive(Debug, Serialize)]
pub struct FactorEntry {
    pub polynomial: String,
    /// Ascending coefficients.
    pub coefficients: Vec<String>,
    pub multiplicity: u32,
}

#[derive(Debug, Serialize)]
pub struct FlatBandSection {
    pub flatband_polynomial: String,
    pub count: usize,
    pub rational_roots: Vec<RootEntry>,
    pub irreducible_factors: Vec<FactorEntry>,
}

impl From<&FlatBandReport> for FlatBandSection {
    fn from(r: &FlatBandReport) -> Self {
        FlatBandSection {
            flatband_polynomial: r.flatband_poly.to_string(),
            count: r.count(),
            rational_roots: r
                .rational_roots
                .iter()
                .zip(&r.verified)
                .map(|((v, m), &ok)| RootEntry { value: format_rational(v), multiplicity: *m, divides_exactly: ok })
                .collect(),
            irreducible_factors: r
                .irreducible_factors
                .iter()
                .map(|(f, m)| FactorEntry {
                    polynomial: f.to_string(),
                    coefficients: f.coeffs().iter().map(format_rational).collect(),
                    multiplicity: *m,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Support0Section {
    /// Orbit ids of the first component that can be shifted to support 0.
    pub component: Option<Vec<String>>,
    pub shifts: Option<Vec<String>>,
    pub fundamental_domain_has_support0: bool,
}

impl Support0Section {
    fn new(parsed: &ParsedGraph) -> Self {
        let found = parsed.graph.find_support0_component();
        Support0Section {
            component: found.as_ref().map(|(c, _)| c.iter().map(|&u| parsed.orbit_ids[u].clone()).collect()),
            shifts: found.as_ref().map(|(_, s)| {
                s.iter().map(|(&u, a)| format!("{} -> {}", parsed.orbit_ids[u], format_point(a))).collect()
            }),
            fundamental_domain_has_support0: parsed.graph.has_support0_fundamental_domain(),
        }
    }
}

fn format_point(p: &[i64]) -> String {
    let parts: Vec<String> = p.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

#[derive(Debug, Serialize)]
pub struct FaceWitnessSection {
    pub normal: String,
    pub min_value: i64,
    pub facial_polynomial: String,
    pub z_exponent: String,
    pub lambda_factor: String,
    pub flat_bands_divide: bool,
}

#[derive(Debug, Serialize)]
pub struct FloquetEntry {
    pub row: String,
    pub col: String,
    pub entry: String,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub input: InputEcho,
    pub labeling: LabelSection,
    pub floquet_matrix: Vec<FloquetEntry>,
    pub dispersion: String,
    pub flat_bands: FlatBandSection,
    pub support0: Support0Section,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertical_face_witness: Option<FaceWitnessSection>,
}

pub fn analyze(file: &Path, seed: u64, labels: LabelMode) -> Result<Outcome, CliError> {
    let parsed = ParsedGraph::from_path(file)?;
    let lab = parsed.labeling(labels, seed)?;
    let floquet = build_floquet(&parsed.graph, &lab).map_err(FlatBandError::from)?;
    let n = parsed.graph.num_orbits();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let e = floquet.matrix().get(i, j);
            if !e.is_zero() {
                entries.push(FloquetEntry {
                    row: parsed.orbit_ids[i].clone(),
                    col: parsed.orbit_ids[j].clone(),
                    entry: e.to_string(),
                });
            }
        }
    }
    let report = flat_bands(floquet.dispersion())?;
    let witness = if report.has_flat_band() && !parsed.graph.has_support0_fundamental_domain() {
        let generic = symbolic_or_sampled_support(&parsed.graph, 5, seed)?;
        vertical_segment_face_witness(&parsed.graph, &lab, &generic)?.map(|w| FaceWitnessSection {
            normal: w.face.normal.to_string(),
            min_value: w.face.min_value,
            facial_polynomial: w.facial.to_string(),
            z_exponent: format_point(&w.z_exponent),
            lambda_factor: w.p.to_string(),
            flat_bands_divide: w.divides,
        })
    } else {
        None
    };
    let exit = if report.has_flat_band() { EXIT_FLAT_BAND } else { EXIT_OK };
    let out = AnalyzeReport {
        input: InputEcho::new("analyze", file, &parsed, seed, Some(labels)),
        labeling: LabelSection::new(&parsed, &lab),
        floquet_matrix: entries,
        dispersion: floquet.dispersion().to_string(),
        flat_bands: FlatBandSection::from(&report),
        support0: Support0Section::new(&parsed),
        vertical_face_witness: witness,
    };
    Ok(outcome(&out, exit))
}

/// Orbit counts up to this use the exact symbolic support.
const SYMBOLIC_MAX_ORBITS: usize = 4;

fn symbolic_or_sampled_support(graph: &PeriodicGraph, trials: usize, seed: u64) -> Result<BTreeSet<Point>, CliError> {
    if graph.num_orbits() <= SYMBOLIC_MAX_ORBITS && graph.edges().len() <= 8 {
        Ok(symbolic_generic_support(graph))
    } else {
        Ok(generic_support(graph, trials, seed)?.points)
    }
}

#[derive(Debug, Serialize)]
pub struct TrialEntry {
    pub trial: usize,
    pub flat_bands: usize,
    pub flatband_polynomial: String,
}

#[derive(Debug, Serialize)]
pub struct GenericReport {
    pub input: InputEcho,
    pub trials: usize,
    pub verdict: &'static str,
    pub per_trial: Vec<TrialEntry>,
    pub support0: Support0Section,
}

pub fn verdict_name(v: GenericVerdict) -> &'static str {
    match v {
        GenericVerdict::FlatBand => "flat band",
        GenericVerdict::NoFlatBand => "no flat band",
        GenericVerdict::Inconsistent => "inconsistent",
    }
}

pub fn generic(file: &Path, trials: usize, seed: u64) -> Result<Outcome, CliError> {
    let parsed = ParsedGraph::from_path(file)?;
    let decision = generic_flat_band_decision(&parsed.graph, trials, seed)?;
    let exit = match decision.verdict {
        GenericVerdict::FlatBand => EXIT_FLAT_BAND,
        GenericVerdict::NoFlatBand => EXIT_OK,
        GenericVerdict::Inconsistent => EXIT_INCONSISTENT,
    };
    let out = GenericReport {
        input: InputEcho::new("generic", file, &parsed, seed, None),
        trials,
        verdict: verdict_name(decision.verdict),
        per_trial: decision
            .reports
            .iter()
            .enumerate()
            .map(|(trial, r)| TrialEntry { trial, flat_bands: r.count(), flatband_polynomial: r.flatband_poly.to_string() })
            .collect(),
        support0: Support0Section::new(&parsed),
    };
    Ok(outcome(&out, exit))
}

#[derive(Debug, Serialize)]
pub struct FaceEntry {
    pub normal: String,
    pub min_value: i64,
    pub members: Vec<String>,
    /// Facial polynomial of the trial-0 labeling.
    pub facial_polynomial: String,
    /// Orbit whose potential the facial polynomial does not depend on.
    pub independence_witness: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct PolytopeReport {
    pub input: InputEcho,
    pub support_source: String,
    pub support: Vec<String>,
    pub hull_vertices: Vec<String>,
    pub vertical_segment: bool,
    pub faces: Option<Vec<FaceEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
}

/// `exact` replaces the sampled support with the symbolic one.
pub fn polytope(file: &Path, trials: usize, seed: u64, exact: bool) -> Result<Outcome, CliError> {
    let parsed = ParsedGraph::from_path(file)?;
    let graph = &parsed.graph;
    let (support, source) = if exact {
        (symbolic_generic_support(graph), "symbolic".to_string())
    } else {
        (generic_support(graph, trials, seed)?.points, format!("union over {trials} random labelings"))
    };
    let data = NewtonPolytopeData::new(support.clone())?;
    let vertical = is_vertical_segment(&support);
    let d = dispersion(graph, &random_labeling(graph, &mut trial_rng(seed, 0))).map_err(FlatBandError::from)?;
    let mut notice = None;
    let faces = match &data.faces {
        Some(faces) => Some(
            faces
                .iter()
                .map(|f| -> Result<FaceEntry, CliError> {
                    let witness = facial_independence_witness(graph, &support, &f.normal, seed)?;
                    Ok(FaceEntry {
                        normal: f.normal.to_string(),
                        min_value: f.min_value,
                        members: f.members.iter().map(|p| format_point(p)).collect(),
                        facial_polynomial: d.terms_at_weight(&f.normal, f.min_value).map_err(PolytopeError::from)?.to_string(),
                        independence_witness: witness.map(|i| parsed.orbit_ids[i].clone()),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None if vertical => {
            notice = Some("support is a vertical segment; no proper vertical faces".to_string());
            None
        }
        None => {
            notice = Some(format!("face enumeration skipped for d = {}", graph.dimension()));
            None
        }
    };
    let out = PolytopeReport {
        input: InputEcho::new("polytope", file, &parsed, seed, None),
        support_source: source,
        support: support.iter().map(|p| format_point(p)).collect(),
        hull_vertices: data.hull_vertices.iter().map(|p| format_point(p)).collect(),
        vertical_segment: vertical,
        faces,
        notice,
    };
    Ok(outcome(&out, EXIT_OK))
}

/// Options for the dual-oracle sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    pub bounds: GraphBounds,
    pub count: usize,
    pub seed: u64,
    pub trials: usize,
}

/// Both oracles on one graph.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub index: usize,
    pub support0_component: bool,
    pub algebraic: &'static str,
    pub support0_fundamental_domain: bool,
    pub vertical_segment: bool,
    /// A vertical-segment support equals `{(0,..,0,b) : 0 <= b <= n}`.
    pub segment_exact: bool,
}

impl SweepRecord {
    pub fn theorem_agrees(&self) -> bool {
        let expected = if self.support0_component { "flat band" } else { "no flat band" };
        self.algebraic == expected
    }

    pub fn segment_agrees(&self) -> bool {
        self.vertical_segment == self.support0_fundamental_domain && (!self.vertical_segment || self.segment_exact)
    }
}

#[derive(Debug, Serialize)]
pub struct Disagreement {
    pub record: SweepRecord,
    pub graph: GraphSpecFile,
}

#[derive(Debug, Serialize)]
pub struct AgreementMatrix {
    pub support0_and_flat_band: usize,
    pub support0_and_no_flat_band: usize,
    pub support0_and_inconsistent: usize,
    pub no_support0_and_flat_band: usize,
    pub no_support0_and_no_flat_band: usize,
    pub no_support0_and_inconsistent: usize,
}

#[derive(Debug, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub count: usize,
    pub max_dimension: usize,
    pub max_orbits: usize,
    pub max_edge_classes: usize,
    pub trials_per_graph: usize,
    pub theorem_agreement: String,
    pub vertical_segment_agreement: String,
    pub agreement_matrix: AgreementMatrix,
    pub disagreements: Vec<Disagreement>,
}

/// Labels for graph `k` of the sweep are drawn from this seed.
pub fn sweep_label_seed(seed: u64, k: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k as u64 + 1)
}

pub fn sweep_record(graph: &PeriodicGraph, index: usize, label_seed: u64, trials: usize) -> Result<SweepRecord, CliError> {
    let decision = generic_flat_band_decision(graph, trials, label_seed)?;
    let support = generic_support(graph, trials, label_seed)?.points;
    let vertical = is_vertical_segment(&support);
    let n = graph.num_orbits() as i64;
    let d = graph.dimension();
    let segment: BTreeSet<Point> = (0..=n)
        .map(|b| {
            let mut p = vec![0; d];
            p.push(b);
            p
        })
        .collect();
    Ok(SweepRecord {
        index,
        support0_component: graph.find_support0_component().is_some(),
        algebraic: verdict_name(decision.verdict),
        support0_fundamental_domain: graph.has_support0_fundamental_domain(),
        vertical_segment: vertical,
        segment_exact: support == segment,
    })
}

pub fn sweep(opts: SweepOptions) -> Result<(Vec<PeriodicGraph>, Vec<SweepRecord>), CliError> {
    let graphs = random_corpus(opts.seed, opts.count, opts.bounds);
    let records = graphs
        .par_iter()
        .enumerate()
        .map(|(k, g)| sweep_record(g, k, sweep_label_seed(opts.seed, k), opts.trials))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((graphs, records))
}

pub fn verify_theorem(opts: SweepOptions) -> Result<Outcome, CliError> {
    if opts.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".to_string()));
    }
    let (graphs, records) = sweep(opts)?;
    let count = |comb: bool, alg: &str| records.iter().filter(|r| r.support0_component == comb && r.algebraic == alg).count();
    let matrix = AgreementMatrix {
        support0_and_flat_band: count(true, "flat band"),
        support0_and_no_flat_band: count(true, "no flat band"),
        support0_and_inconsistent: count(true, "inconsistent"),
        no_support0_and_flat_band: count(false, "flat band"),
        no_support0_and_no_flat_band: count(false, "no flat band"),
        no_support0_and_inconsistent: count(false, "inconsistent"),
    };
    let theorem = records.iter().filter(|r| r.theorem_agrees()).count();
    let segment = records.iter().filter(|r| r.segment_agrees()).count();
    let disagreements: Vec<Disagreement> = records
        .iter()
        .filter(|r| !(r.theorem_agrees() && r.segment_agrees()))
        .map(|r| Disagreement { record: r.clone(), graph: to_spec_file(&graphs[r.index], None) })
        .collect();
    let exit = if disagreements.is_empty() { EXIT_OK } else { EXIT_DISAGREEMENT };
    let out = SweepReport {
        seed: opts.seed,
        count: opts.count,
        max_dimension: opts.bounds.max_dimension,
        max_orbits: opts.bounds.max_orbits,
        max_edge_classes: opts.bounds.max_classes,
        trials_per_graph: opts.trials,
        theorem_agreement: format!("{theorem}/{}", opts.count),
        vertical_segment_agreement: format!("{segment}/{}", opts.count),
        agreement_matrix: matrix,
        disagreements,
    };
    Ok(outcome(&out, exit))
}

#[derive(Debug, Serialize)]
pub struct BandEntry {
    pub band: usize,
    pub min: f64,
    pub max: f64,
    pub flatness: f64,
}

#[derive(Debug, Serialize)]
pub struct LevelEntry {
    pub exact: String,
    pub level: f64,
    pub deviation: f64,
    pub tracked_flatness: f64,
    pub consistent: bool,
}

#[derive(Debug, Serialize)]
pub struct BandsReport {
    pub input: InputEcho,
    pub labeling: LabelSection,
    pub resolution: usize,
    pub grid_points: usize,
    pub tolerance: f64,
    pub hermiticity_defect: f64,
    pub bands: Vec<BandEntry>,
    /// 1-based indices of bands with flatness below the tolerance.
    pub flagged_bands: Vec<usize>,
    pub exact_flat_bands: Vec<LevelEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<String>,
}

pub struct BandsOptions {
    pub resolution: usize,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub labels: LabelMode,
    pub seed: u64,
}

pub fn bands(file: &Path, opts: &BandsOptions) -> Result<Outcome, CliError> {
    let parsed = ParsedGraph::from_path(file)?;
    let lab = parsed.labeling(opts.labels, opts.seed)?;
    let sample = sample_bands(&parsed.graph, &lab, opts.resolution)?;
    let flags = numeric_flat_flags(&sample, opts.tol)?;
    let n = parsed.graph.num_orbits();
    let table = (0..n)
        .map(|j| {
            let (lo, hi) = sample
                .bands
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), b| (lo.min(b[j]), hi.max(b[j])));
            BandEntry { band: j + 1, min: lo, max: hi, flatness: sample.flatness[j] }
        })
        .collect();
    let exact = flat_bands(&dispersion(&parsed.graph, &lab).map_err(FlatBandError::from)?)?;
    let mut levels: Vec<(String, f64)> = exact
        .rational_roots
        .iter()
        .map(|(r, _)| (format_rational(r), r.to_f64().unwrap_or(f64::NAN)))
        .collect();
    for (f, _) in &exact.irreducible_factors {
        for x in refine_real_roots(f, &sample.bands[0]) {
            levels.push((format!("root of {f}"), x));
        }
    }
    let exact_flat_bands = levels
        .into_iter()
        .map(|(name, level)| {
            let t = track_level(&sample, level);
            LevelEntry {
                exact: name,
                level,
                deviation: t.deviation,
                tracked_flatness: t.flatness,
                consistent: t.deviation < opts.tol && t.flatness < opts.tol,
            }
        })
        .collect();
    if let Some(path) = &opts.out {
        write_band_csv(path, &sample.thetas, &sample.bands)?;
    }
    let out = BandsReport {
        input: InputEcho::new("bands", file, &parsed, opts.seed, Some(opts.labels)),
        labeling: LabelSection::new(&parsed, &lab),
        resolution: opts.resolution,
        grid_points: sample.thetas.len(),
        tolerance: opts.tol,
        hermiticity_defect: sample.hermiticity_defect,
        bands: table,
        flagged_bands: flags.into_iter().map(|j| j + 1).collect(),
        exact_flat_bands,
        csv: opts.out.as_ref().map(|p| p.display().to_string()),
    };
    Ok(outcome(&out, EXIT_OK))
}

/// Columns `theta1..thetad, lambda1..lambdan`, one row per grid point.
pub fn write_band_csv(path: &Path, thetas: &[Vec<f64>], bands: &[Vec<f64>]) -> Result<(), CliError> {
    let err = |e: csv::Error| CliError::Output { path: path.display().to_string(), message: e.to_string() };
    let mut w = csv::Writer::from_path(path).map_err(err)?;
    let d = thetas.first().map_or(0, Vec::len);
    let n = bands.first().map_or(0, Vec::len);
    let header: Vec<String> =
        (1..=d).map(|k| format!("theta{k}")).chain((1..=n).map(|k| format!("lambda{k}"))).collect();
    w.write_record(&header).map_err(err)?;
    for (t, b) in thetas.iter().zip(bands) {
        w.write_record(t.iter().chain(b).map(|x| format!("{x:.12e}"))).map_err(err)?;
    }
    w.flush().map_err(|e| CliError::Output { path: path.display().to_string(), message: e.to_string() })
}
