use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use serde::Serialize;
use trivar::synth::{add_gaussian_noise, GroundTruth};
use trivar::{
    analytic_transform, analyze as run_analysis, make_fig2_signal, multitaper_joint_spectrum,
    rot_z, slepian_tapers, AnalysisConfig, AnalysisF64, FrameRotation, JointSpectrumF64,
    RealSignal3F64, SynthSpec,
};

use crate::dataset::{read_csv, Columns, Dataset};
use crate::error::{CliError, Result};
use crate::output::{ensure_dir, flag, num, write_json, Table};
use crate::{ConfigArgs, InputArgs, SynthArgs};

/// Records shorter than this get no multitaper estimate in `analyze`.
const MIN_SPECTRUM_LEN: usize = 64;

/// Analysis table columns, in output order.
pub const ANALYSIS_COLUMNS: [&str; 23] = [
    "t",
    "kappa",
    "lambda",
    "theta",
    "phi",
    "alpha",
    "beta",
    "nx",
    "ny",
    "nz",
    "omega_x",
    "sigma2_x",
    "upsilon2_x",
    "term_amplitude",
    "term_deformation",
    "term_precession",
    "term_normal",
    "edge",
    "degenerate",
    "circular",
    "low_power",
    "rates_unreliable",
    "flagged",
];

fn validate(config: &ConfigArgs) -> Result<()> {
    let bad = |msg: String| Err(CliError::Config(msg));
    if !(0.0..0.5).contains(&config.trim) {
        return bad(format!("--trim must lie in [0, 0.5), got {}", config.trim));
    }
    for (name, v) in [
        ("--eps-lin", config.eps_lin),
        ("--eps-pow", config.eps_pow),
        ("--taper-p", config.taper_p),
    ] {
        if !(v > 0.0) || !v.is_finite() {
            return bad(format!("{name} must be positive, got {v}"));
        }
    }
    if config.pad == 0 {
        return bad("--pad must be at least 1".into());
    }
    let max = (2.0 * config.taper_p - 1.0 + 1e-9).floor();
    if config.tapers == 0 || config.tapers as f64 > max {
        return bad(format!(
            "--tapers must lie in 1..={} for --taper-p {}",
            max.max(0.0),
            config.taper_p
        ));
    }
    Ok(())
}

fn load(input: &InputArgs, columns: &Columns) -> Result<(Dataset, RealSignal3F64)> {
    if !input.bearing.is_finite() {
        return Err(CliError::Config("--bearing must be finite".into()));
    }
    let data = read_csv(&input.input, columns, input.dt)?;
    let x = RealSignal3F64::new(data.channels.clone(), data.dt)
        .map_err(|e| CliError::input(&input.input, e.to_string()))?;
    let x = x.rotate_frame(&rot_z(-input.bearing.to_radians()))?;
    Ok((data, x))
}

fn spectrum_of(x: &RealSignal3F64, config: &ConfigArgs) -> Result<JointSpectrumF64> {
    let tapers = slepian_tapers(x.len(), config.taper_p, config.tapers)?;
    let s = multitaper_joint_spectrum(x, &tapers, config.pad)?;
    let norm = s.normalization();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(CliError::Numerical(format!(
            "spectrum normalization is {norm}, expected 1"
        )));
    }
    Ok(s)
}

#[derive(Debug, Serialize)]
struct SpectrumSummary {
    n_samples: usize,
    dt: f64,
    time_bandwidth: f64,
    tapers: usize,
    pad: usize,
    mean_freq: f64,
    mean_freq_cycles: f64,
    second_central: f64,
    normalization: f64,
    concentrations: Vec<f64>,
}

fn spectrum_summary(
    s: &JointSpectrumF64,
    n: usize,
    dt: f64,
    config: &ConfigArgs,
) -> Result<SpectrumSummary> {
    let tapers = slepian_tapers::<f64>(n, config.taper_p, config.tapers)?;
    Ok(SpectrumSummary {
        n_samples: n,
        dt,
        time_bandwidth: config.taper_p,
        tapers: config.tapers,
        pad: config.pad,
        mean_freq: s.moments.mean_freq,
        mean_freq_cycles: s.moments.mean_freq / TAU,
        second_central: s.moments.second_central,
        normalization: s.normalization(),
        concentrations: tapers.concentrations,
    })
}

#[derive(Debug, Serialize)]
struct AnalyzeSummary {
    n_samples: usize,
    dt: f64,
    bearing_deg: f64,
    scheme: String,
    energy: f64,
    mean_freq_time: f64,
    mean_freq_spectral: f64,
    second_central_time: f64,
    second_central_spectral: f64,
    mean_freq_rel_diff: f64,
    second_central_rel_diff: f64,
    mean_freq_time_cycles: f64,
    mean_freq_spectral_cycles: f64,
    flags_excluded: usize,
    edge_samples: usize,
    degenerate_samples: usize,
    low_power_samples: usize,
    multitaper: Option<SpectrumSummary>,
}

fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    Some(v[v.len() / 2])
}

pub fn analyze(input: &InputArgs, columns: &Columns, config: &ConfigArgs) -> Result<()> {
    validate(config)?;
    let (data, x) = load(input, columns)?;
    let cfg = AnalysisConfig {
        scheme: config.scheme,
        edge_fraction: config.trim,
        eps_lin: config.eps_lin,
        eps_pow: config.eps_pow,
        taper_p: config.taper_p,
        tapers: config.tapers,
        pad_factor: config.pad,
        ..Default::default()
    };
    let xp = analytic_transform(&x);
    let a = run_analysis(&xp, &cfg)?;
    let spectrum = if x.len() >= MIN_SPECTRUM_LEN {
        Some(spectrum_of(&x, config)?)
    } else {
        None
    };

    let dir = ensure_dir(&input.out)?;
    analysis_table(&a, &data.time).write(&dir.join("analysis.csv"))?;
    let (tx, tn) = sphere_tracks(&a, &x, &data.time);
    tx.write(&dir.join("track_x.csv"))?;
    tn.write(&dir.join("track_n.csv"))?;

    let count = |v: &[bool]| v.iter().filter(|&&b| b).count();
    let summary = AnalyzeSummary {
        n_samples: a.len(),
        dt: data.dt,
        bearing_deg: input.bearing,
        scheme: config.scheme.to_string(),
        energy: a.global_spectral.energy,
        mean_freq_time: a.global_time.mean_freq,
        mean_freq_spectral: a.global_spectral.mean_freq,
        second_central_time: a.global_time.second_central,
        second_central_spectral: a.global_spectral.second_central,
        mean_freq_rel_diff: rel_diff(a.global_time.mean_freq, a.global_spectral.mean_freq),
        second_central_rel_diff: rel_diff(
            a.global_time.second_central,
            a.global_spectral.second_central,
        ),
        mean_freq_time_cycles: a.global_time.mean_freq / TAU,
        mean_freq_spectral_cycles: a.global_spectral.mean_freq / TAU,
        flags_excluded: a.flags_excluded(),
        edge_samples: count(&a.moments.edge),
        degenerate_samples: count(&a.rates.degenerate),
        low_power_samples: count(&a.moments.unreliable),
        multitaper: match &spectrum {
            Some(s) => Some(spectrum_summary(s, x.len(), data.dt, config)?),
            None => None,
        },
    };
    write_json(&dir.join("summary.json"), &summary)?;

    let kept: Vec<usize> = (0..a.len()).filter(|&i| !a.flagged[i]).collect();
    let states = &a.decomposition.ellipse.states;
    let med = |f: &dyn Fn(usize) -> f64| median(kept.iter().map(|&i| f(i)).collect());
    println!(
        "samples            {} ({} flagged)",
        a.len(),
        a.flags_excluded()
    );
    println!(
        "mean frequency     {} rad / {} cycles per unit time (time), {} rad (Fourier)",
        num(summary.mean_freq_time),
        num(summary.mean_freq_time_cycles),
        num(summary.mean_freq_spectral)
    );
    println!(
        "second moment      {} (time), {} (Fourier)",
        num(summary.second_central_time),
        num(summary.second_central_spectral)
    );
    if let (Some(l), Some(al), Some(be)) = (
        med(&|i| states[i].lambda),
        med(&|i| states[i].alpha.to_degrees()),
        med(&|i| states[i].beta.to_degrees()),
    ) {
        println!("median linearity   {}", num(l));
        println!("median normal      azimuth {al:.2} deg, zenith {be:.2} deg");
    }
    println!("wrote {}", dir.display());
    Ok(())
}

fn analysis_table(a: &AnalysisF64, time: &[f64]) -> Table {
    let mut t = Table::new(&ANALYSIS_COLUMNS);
    let e = &a.decomposition.ellipse;
    let nh = &a.decomposition.normals.n_hat;
    let m = &a.moments;
    let b = &a.bandwidth;
    for i in 0..a.len() {
        let s = &e.states[i];
        t.row(&[
            num(time[i]),
            num(s.kappa),
            num(s.lambda),
            num(s.theta),
            num(s.phi),
            num(s.alpha),
            num(s.beta),
            num(nh[i][0]),
            num(nh[i][1]),
            num(nh[i][2]),
            num(m.omega_x[i]),
            num(m.sigma2_x[i]),
            num(m.upsilon2_x[i]),
            num(b.term_amplitude[i]),
            num(b.term_deformation[i]),
            num(b.term_precession[i]),
            num(b.term_normal[i]),
            flag(m.edge[i]).into(),
            flag(e.degenerate[i]).into(),
            flag(e.indeterminate[i]).into(),
            flag(m.unreliable[i]).into(),
            flag(a.rates.degenerate[i]).into(),
            flag(a.flagged[i]).into(),
        ]);
    }
    t
}

fn sphere_tracks(a: &AnalysisF64, x: &RealSignal3F64, time: &[f64]) -> (Table, Table) {
    let mut tx = Table::new(&["t", "ux", "uy", "uz", "flagged"]);
    let mut tn = Table::new(&["t", "nx", "ny", "nz", "flagged"]);
    for (i, v) in x.samples().iter().enumerate() {
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let u = if r > 0.0 {
            [v[0] / r, v[1] / r, v[2] / r]
        } else {
            [0.0; 3]
        };
        let f = flag(a.flagged[i]).to_string();
        tx.row(&[num(time[i]), num(u[0]), num(u[1]), num(u[2]), f.clone()]);
        let n = a.decomposition.normals.n_hat[i];
        tn.row(&[num(time[i]), num(n[0]), num(n[1]), num(n[2]), f]);
    }
    (tx, tn)
}

pub fn spectrum(input: &InputArgs, columns: &Columns, config: &ConfigArgs) -> Result<()> {
    validate(config)?;
    let (data, x) = load(input, columns)?;
    let s = spectrum_of(&x, config)?;
    let dir = ensure_dir(&input.out)?;
    let mut t = Table::new(&["freq", "s_x", "freq_cycles"]);
    for (f, v) in s.freqs.iter().zip(&s.values) {
        t.row(&[num(*f), num(*v), num(f / TAU)]);
    }
    t.write(&dir.join("spectrum.csv"))?;
    let summary = spectrum_summary(&s, x.len(), data.dt, config)?;
    write_json(&dir.join("spectrum.json"), &summary)?;
    println!(
        "mean frequency {} rad ({} cycles) per unit time, second moment {}, normalization {}",
        num(summary.mean_freq),
        num(summary.mean_freq_cycles),
        num(summary.second_central),
        num(summary.normalization)
    );
    Ok(())
}

fn truth_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("synth");
    out.with_file_name(format!("{stem}.truth.csv"))
}

fn truth_table(truth: &GroundTruth<f64>, dt: f64) -> Table {
    let mut t = Table::new(&[
        "t",
        "a",
        "b",
        "kappa",
        "lambda",
        "theta",
        "phi",
        "alpha",
        "beta",
        "dkappa_rel",
        "dlambda",
        "omega_phi",
        "omega_theta",
        "omega_alpha",
        "omega_beta",
    ]);
    for (i, (s, r)) in truth.states.iter().zip(&truth.rates).enumerate() {
        t.row(&[
            num(i as f64 * dt),
            num(s.a),
            num(s.b),
            num(s.kappa),
            num(s.lambda),
            num(s.theta),
            num(s.phi),
            num(s.alpha),
            num(s.beta),
            num(r.dkappa_rel),
            num(r.dlambda),
            num(r.omega_phi),
            num(r.omega_theta),
            num(r.omega_alpha),
            num(r.omega_beta),
        ]);
    }
    t
}

pub fn synth(args: &SynthArgs) -> Result<()> {
    let spec = SynthSpec {
        n_samples: args.n,
        omega_bar: args.omega_bar,
        upsilon: args.upsilon,
        dt: args.dt,
        ..SynthSpec::fig2(args.mode)
    };
    let (xp, truth) = make_fig2_signal(&spec)?;
    let mut samples = xp.real_part();
    if let Some(snr) = args.snr_db {
        add_gaussian_noise(&mut samples, snr, args.seed)?;
    }
    if let Some(parent) = args.out.parent().filter(|p| !p.as_os_str().is_empty()) {
        ensure_dir(parent)?;
    }
    let mut t = Table::new(&["t", "x", "y", "z"]);
    for (i, v) in samples.iter().enumerate() {
        t.row(&[num(i as f64 * args.dt), num(v[0]), num(v[1]), num(v[2])]);
    }
    t.write(&args.out)?;
    let truth_file = truth_path(&args.out);
    truth_table(&truth, args.dt).write(&truth_file)?;
    println!("wrote {} and {}", args.out.display(), truth_file.display());
    Ok(())
}
