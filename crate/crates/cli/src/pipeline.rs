use std::path::Path;

use serde::{Deserialize, Serialize};
use shadowrank::analysis::svg::{heatmap, line_plot, PlotLabels, Series};
use shadowrank::analysis::{
    edge_concentration, localization_map_with, mode_dft, predict_band, study_from_rows, Group, LocalizationOptions,
    ScalingRow, ScalingStudy, SpectralBand,
};
use shadowrank::geometry::{build_scene, GeometrySpec, ScenePair, ShapeKind};
use shadowrank::kernel::{assemble_dense, InteractionBlock};
use shadowrank::shadow::{
    knee_estimate, shadow_area_los, shadow_area_sweep, shadow_discs_closed_form, shadow_lines_closed_form,
    ShadowEstimate, ShadowKind, SweepSpec,
};
use shadowrank::spectrum::{
    detect_knee, rank_at, svd_dense, svd_randomized_with, RandomizedOptions, SpectrumResult, SvdMethod,
};
use shadowrank::Error;

use crate::config::{Experiment, ExperimentConfig, MethodChoice, AUTO_DENSE_ENTRIES};
use crate::output::{case_id, map_csv, spectrum_csv, write_atomic};
use crate::CliError;

/// Remainder group size for line pairs when the config gives none.
pub const LINE_REMAINDER_COUNT: usize = 25;
/// Cache budget for matrix-free blocks.
pub const OPERATOR_BUDGET: usize = 3 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Shadow,
    Spectrum,
    Analyze,
    Run,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankEntry {
    pub tau: f64,
    /// `None` when `tau` lies below the solver's floor.
    pub rank: Option<usize>,
    pub remainder_width: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    pub method: SvdMethod,
    pub seed: Option<u64>,
    pub tol_floor: f64,
    pub computed: usize,
    pub knee_detected: Option<usize>,
    /// `|knee_detected − knee_pred| / knee_pred`.
    pub knee_error: Option<f64>,
    pub ranks: Vec<RankEntry>,
    pub csv: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseSummary {
    pub id: String,
    pub geometry: GeometrySpec,
    pub ka: f64,
    pub source_points: usize,
    pub observer_points: usize,
    pub predictor: ShadowEstimate<f64>,
    /// Independent evaluations of the shadow quantities.
    pub shadows: Vec<ShadowEstimate<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModesSummary {
    pub case: String,
    pub knee_pred: f64,
    pub aperture_columns: [usize; 2],
    pub remainder_columns: [usize; 2],
    pub band_width: f64,
    pub edge_concentration_aperture: f64,
    pub edge_concentration_remainder: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band: Option<SpectralBand>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band_fraction_aperture: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band_fraction_remainder: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub experiment: String,
    pub stage: Stage,
    pub seed: u64,
    pub full: bool,
    pub taus: Vec<f64>,
    pub cases: Vec<CaseSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scaling: Option<ScalingStudy>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modes: Vec<ModesSummary>,
}

fn wants_scaling(e: Experiment) -> bool {
    matches!(e, Experiment::DiscsScaling | Experiment::SlantedSquares | Experiment::ParallelLines)
}

fn wants_sweep(e: Experiment, stage: Stage) -> bool {
    stage == Stage::Shadow || e == Experiment::DiscsMethods
}

fn alternative_shadows(
    spec: &GeometrySpec,
    scene: &ScenePair<f64>,
    predictor: &ShadowEstimate<f64>,
    sweep: bool,
) -> Vec<ShadowEstimate<f64>> {
    let mut out = Vec::new();
    let mut keep = |r: Result<ShadowEstimate<f64>, Error>, what: &str| match r {
        Ok(e) => out.push(e),
        Err(e) => log::warn!("{what} skipped for {}: {e}", case_id(spec)),
    };
    match spec.shape {
        ShapeKind::ParallelDiscs => keep(shadow_discs_closed_form(spec.a, spec.d, spec.lambda), "closed form"),
        ShapeKind::ParallelLines => keep(shadow_lines_closed_form(spec.a, spec.d, spec.h, spec.lambda), "closed form"),
        _ => {}
    }
    if scene.dim() == 3 {
        if predictor.kind == ShadowKind::Length {
            keep(shadow_area_los(scene), "line-of-sight area");
        }
        let convex =
            matches!(spec.shape, ShapeKind::ParallelDiscs | ShapeKind::ParallelPlates | ShapeKind::SlantedPlates);
        if sweep && convex {
            keep(shadow_area_sweep(scene, &SweepSpec::default()), "sweep");
        }
    }
    out
}

fn solve(scene: &ScenePair<f64>, cfg: &ExperimentConfig, vectors: bool) -> Result<SpectrumResult, CliError> {
    let entries = scene.observer().len() * scene.source().len();
    let dense = match cfg.method {
        MethodChoice::Dense => true,
        MethodChoice::Randomized => false,
        MethodChoice::Auto => entries <= AUTO_DENSE_ENTRIES,
    };
    let s = if dense {
        svd_dense(&assemble_dense(scene)?, vectors)?
    } else {
        let op = InteractionBlock::operator_with_budget(scene, OPERATOR_BUDGET)?;
        let opts = RandomizedOptions { vectors, ..Default::default() };
        svd_randomized_with(&op, cfg.min_tau(), cfg.seed, &opts)?
    };
    Ok(s)
}

fn rank_entries(s: &SpectrumResult, pred: f64, taus: &[f64]) -> Result<Vec<RankEntry>, CliError> {
    taus.iter()
        .map(|&tau| match rank_at(s, tau) {
            Ok(r) => {
                Ok(RankEntry { tau, rank: Some(r), remainder_width: Some(r.saturating_sub(pred.round() as usize)) })
            }
            Err(Error::Floor { .. }) => Ok(RankEntry { tau, rank: None, remainder_width: None }),
            Err(e) => Err(e.into()),
        })
        .collect()
}

fn labels(title: String, x: &str, y: &str) -> PlotLabels {
    PlotLabels { title, x: x.into(), y: y.into() }
}

fn spectrum_svg(id: &str, s: &SpectrumResult) -> String {
    let pts: Vec<(f64, f64)> = s.normalized().iter().enumerate().map(|(i, &v)| ((i + 1) as f64, v)).collect();
    line_plot(&[Series { label: id, points: &pts }], &labels(id.into(), "n", "sigma_n / sigma_1"), true)
}

fn band_width_for(spec: &GeometrySpec, cfg: &ExperimentConfig) -> f64 {
    match cfg.band_width {
        Some(w) => w * spec.lambda,
        None if spec.shape == ShapeKind::ParallelLines => spec.lambda,
        None => spec.lambda.max(0.05 * spec.a),
    }
}

fn modes(
    id: &str,
    spec: &GeometrySpec,
    scene: &ScenePair<f64>,
    s: &SpectrumResult,
    pred: f64,
    cfg: &ExperimentConfig,
    dir: &Path,
) -> Result<ModesSummary, CliError> {
    let lines = spec.shape == ShapeKind::ParallelLines;
    let opts = LocalizationOptions {
        remainder_count: cfg.remainder_count.or(if lines { Some(LINE_REMAINDER_COUNT) } else { None }),
        smoothing: cfg.smoothing,
    };
    let tau = cfg.min_tau();
    let ap = localization_map_with(s, scene, Group::Aperture, pred, tau, &opts)?;
    let rem = localization_map_with(s, scene, Group::Remainder, pred, tau, &opts)?;
    let band_width = band_width_for(spec, cfg);
    let mut summary = ModesSummary {
        case: id.to_string(),
        knee_pred: pred,
        aperture_columns: [ap.columns.start, ap.columns.end],
        remainder_columns: [rem.columns.start, rem.columns.end],
        band_width,
        edge_concentration_aperture: edge_concentration(&ap, scene, band_width)?,
        edge_concentration_remainder: edge_concentration(&rem, scene, band_width)?,
        band: None,
        band_fraction_aperture: None,
        band_fraction_remainder: None,
    };
    for m in [&ap, &rem] {
        let tag = if m.group == Group::Aperture { "aperture" } else { "remainder" };
        write_atomic(&dir.join(format!("{id}.map-{tag}.csv")), map_csv(scene.observer(), &m.values).as_bytes())?;
        if cfg.plot {
            let pts: Vec<(f64, f64)> = scene.observer().points().iter().map(|p| (p.x, p.y)).collect();
            let svg = heatmap(&pts, &m.values, scene.observer().spacing(), &labels(format!("{id} {tag}"), "x", "y"));
            write_atomic(&dir.join(format!("{id}.map-{tag}.svg")), svg.as_bytes())?;
        }
    }
    if lines {
        let dft = mode_dft(s, scene)?;
        let band = predict_band(scene)?;
        summary.band_fraction_aperture = Some(dft.band_fraction(ap.columns.clone(), &band));
        summary.band_fraction_remainder = Some(dft.band_fraction(rem.columns.clone(), &band));
        summary.band = Some(band);
        let pa = dft.group_power(ap.columns.clone());
        let pr = dft.group_power(rem.columns.clone());
        let mut csv = String::from("k_x,group,mean_square\n");
        for (name, p) in [("aperture", &pa), ("remainder", &pr)] {
            for (k, v) in dft.k_x.iter().zip(p.iter()) {
                csv.push_str(&format!("{k},{name},{v:e}\n"));
            }
        }
        write_atomic(&dir.join(format!("{id}.dft.csv")), csv.as_bytes())?;
        if cfg.plot {
            let a: Vec<(f64, f64)> = dft.k_x.iter().cloned().zip(pa).collect();
            let r: Vec<(f64, f64)> = dft.k_x.iter().cloned().zip(pr).collect();
            let svg = line_plot(
                &[Series { label: "aperture", points: &a }, Series { label: "remainder", points: &r }],
                &labels(format!("{id} mode spectra"), "k_x", "mean |X|^2"),
                false,
            );
            write_atomic(&dir.join(format!("{id}.dft.svg")), svg.as_bytes())?;
        }
    }
    Ok(summary)
}

/// Runs `stage` of the configured experiment and writes its artifacts under
/// `cfg.out_dir()`.
pub fn run(cfg: &ExperimentConfig, stage: Stage) -> Result<Summary, CliError> {
    cfg.validate()?;
    let experiment = cfg.experiment()?;
    let dir = cfg.out_dir();
    let mut summary = Summary {
        experiment: cfg.experiment.clone(),
        stage,
        seed: cfg.seed,
        full: cfg.full,
        taus: cfg.taus.clone(),
        cases: Vec::new(),
        scaling: None,
        modes: Vec::new(),
    };
    let want_modes = stage == Stage::Analyze || (stage == Stage::Run && experiment == Experiment::LineModes);
    let mut rows = Vec::new();

    for spec in cfg.resolved_cases()? {
        let id = case_id(&spec);
        log::info!("case {id}");
        let scene = build_scene::<f64>(&spec, spec.lambda)?;
        let predictor = knee_estimate(&scene)?;
        let shadows = alternative_shadows(&spec, &scene, &predictor, wants_sweep(experiment, stage));
        let mut case = CaseSummary {
            id: id.clone(),
            geometry: spec.clone(),
            ka: 2.0 * std::f64::consts::PI * spec.a / spec.lambda,
            source_points: scene.source().len(),
            observer_points: scene.observer().len(),
            predictor,
            shadows,
            spectrum: None,
        };
        if stage != Stage::Shadow {
            let pred = predictor.dof;
            let s = solve(&scene, cfg, want_modes)?;
            let knee = match detect_knee(&s) {
                Ok(k) => Some(k),
                Err(Error::Degenerate(m)) => {
                    log::warn!("{id}: no knee ({m})");
                    None
                }
                Err(e) => return Err(e.into()),
            };
            let csv = format!("{id}.spectrum.csv");
            write_atomic(&dir.join(&csv), spectrum_csv(&s).as_bytes())?;
            if cfg.plot {
                write_atomic(&dir.join(format!("{id}.spectrum.svg")), spectrum_svg(&id, &s).as_bytes())?;
            }
            let ranks = rank_entries(&s, pred, &cfg.taus)?;
            if wants_scaling(experiment) {
                let last = ranks.iter().find(|r| r.tau == cfg.min_tau()).and_then(|r| r.rank.zip(r.remainder_width));
                if let Some((rank, remainder_width)) = last {
                    rows.push(ScalingRow { ka: case.ka, knee_pred: pred, knee_detected: knee, rank, remainder_width });
                }
            }
            if want_modes {
                summary.modes.push(modes(&id, &spec, &scene, &s, pred, cfg, &dir)?);
            }
            case.spectrum = Some(SpectrumSummary {
                method: s.method(),
                seed: s.seed(),
                tol_floor: s.tol_floor(),
                computed: s.len(),
                knee_detected: knee,
                knee_error: knee.map(|k| (k as f64 - pred).abs() / pred),
                ranks,
                csv,
            });
        }
        summary.cases.push(case);
    }

    if rows.len() >= 2 {
        let study = study_from_rows(cfg.min_tau(), rows)?;
        let mut csv = String::from("ka,knee_pred,knee_detected,rank,remainder_width\n");
        for r in &study.rows {
            let knee = r.knee_detected.map(|k| k.to_string()).unwrap_or_default();
            csv.push_str(&format!("{},{},{knee},{},{}\n", r.ka, r.knee_pred, r.rank, r.remainder_width));
        }
        write_atomic(&dir.join("scaling.csv"), csv.as_bytes())?;
        if cfg.plot {
            let pts: Vec<(f64, f64)> = study.rows.iter().map(|r| (r.ka, r.remainder_width as f64)).collect();
            let svg = line_plot(
                &[Series { label: "remainder width", points: &pts }],
                &labels(format!("{} slope {:.3}", cfg.experiment, study.slope), "ka", "remainder width"),
                true,
            );
            write_atomic(&dir.join("scaling.svg"), svg.as_bytes())?;
        }
        summary.scaling = Some(study);
    }

    let mut json = serde_json::to_string_pretty(&summary).map_err(shadowrank::Error::from)?;
    json.push('\n');
    write_atomic(&dir.join(format!("{}.summary.json", stage_name(stage))), json.as_bytes())?;
    Ok(summary)
}

fn stage_name(stage: Stage) -> &'static str {
    match stage {
        Stage::Shadow => "shadow",
        Stage::Spectrum => "spectrum",
        Stage::Analyze => "analyze",
        Stage::Run => "run",
    }
}
