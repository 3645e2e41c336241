use anyhow::{Context, Result};
use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use zpframe::oracle::{
    assemble_frame_operator, default_pivot_tolerance, hermitian_extremal_eigenvalues,
    span_rank_report, system_vectors,
};
use zpframe::sampling::{flat_spectrum_window, random_signal};
use zpframe::{
    canonical_dual_and_reconstruct, coefficients_direct, coefficients_fourier,
    enumerate_index_set, frame_report, frame_spectrum, Complex64, Error, IndexSpec, Signal,
    WaveletSystem,
};

use crate::config::{OutputFormat, RunConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT_ERROR: u8 = 1;
pub const EXIT_NOT_A_FRAME: u8 = 2;

/// What a command produced: the primary output and the process exit code.
pub struct Outcome {
    pub output: String,
    pub diagnostics: Vec<String>,
    pub exit: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self {
            output,
            diagnostics: Vec::new(),
            exit: EXIT_OK,
        }
    }
}

fn to_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("output serializes");
    s.push('\n');
    s
}

fn system<'a>(cfg: &'a RunConfig, window: Signal) -> Result<WaveletSystem<'a>> {
    let set = enumerate_index_set(&cfg.ctx, IndexSpec::Subgroup(&cfg.subgroup))?;
    Ok(WaveletSystem::new(&cfg.ctx, window, set)?)
}

fn oracle_checks(cfg: &RunConfig, window: &Signal) -> Result<Value> {
    let sys = system(cfg, window.clone())?;
    let vectors = system_vectors(&sys)?;
    let pivot = default_pivot_tolerance(&vectors);
    let rank = span_rank_report(&vectors, pivot);
    let (lo, hi) = hermitian_extremal_eigenvalues(&assemble_frame_operator(&sys)?);
    Ok(json!({
        "rank": rank.rank,
        "spans": rank.rank == cfg.ctx.len(),
        "rank_indeterminate": rank.is_indeterminate(pivot),
        "eigen_min": lo,
        "eigen_max": hi,
    }))
}

pub fn cmd_report(cfg: &RunConfig) -> Result<Outcome> {
    cfg.require_json("report")?;
    let window = cfg.load_window()?;
    let report = frame_report(&window, &cfg.subgroup, &cfg.ctx, cfg.tolerance)?;
    let exit = if report.is_frame { EXIT_OK } else { EXIT_NOT_A_FRAME };
    let output = if cfg.verify {
        let mut v = serde_json::to_value(&report)?;
        v["verify"] = oracle_checks(cfg, &window)?;
        to_line(&v)
    } else {
        to_line(&report)
    };
    Ok(Outcome {
        output,
        diagnostics: Vec::new(),
        exit,
    })
}

pub fn cmd_coeffs(cfg: &RunConfig) -> Result<Outcome> {
    let window = cfg.load_window()?;
    let x = cfg
        .load_input_signal()?
        .context("--signal FILE is required for coeffs")?;
    let sys = system(cfg, window)?;
    let grid = coefficients_fourier(&x, &sys)?;
    let deviation = if cfg.verify {
        Some(coefficients_direct(&x, &sys)?.max_abs_diff(&grid)?)
    } else {
        None
    };

    let output = match cfg.output_format {
        OutputFormat::Json => {
            let mut v = json!({
                "p": cfg.p(),
                "M": cfg.subgroup.order(),
                "index_set": grid.elements(),
                "re": grid.values().iter().map(|z| z.re).collect::<Vec<_>>(),
                "im": grid.values().iter().map(|z| z.im).collect::<Vec<_>>(),
            });
            if let Some(d) = deviation {
                v["max_deviation"] = json!(d);
            }
            to_line(&v)
        }
        OutputFormat::Csv => {
            let mut s = String::from("m,k,re,im\n");
            for (g, z) in grid.iter() {
                s.push_str(&format!("{},{},{:?},{:?}\n", g.m, g.k, z.re, z.im));
            }
            s
        }
    };
    let diagnostics = deviation
        .map(|d| vec![format!("max |fourier - direct| = {d:e}")])
        .unwrap_or_default();
    Ok(Outcome {
        output,
        diagnostics,
        exit: EXIT_OK,
    })
}

#[derive(Serialize)]
struct GroupSummary {
    p: u64,
    #[serde(rename = "M")]
    order: u64,
    a: u64,
    #[serde(rename = "order")]
    group_order: u64,
    epsilon: u64,
    subgroup: Vec<u64>,
    cosets: Vec<Vec<u64>>,
}

pub fn cmd_group(cfg: &RunConfig) -> Result<Outcome> {
    cfg.require_json("group")?;
    let sub = &cfg.subgroup;
    let summary = GroupSummary {
        p: cfg.p(),
        order: sub.order(),
        a: sub.index(),
        group_order: cfg.ctx.wavelet_group_order(),
        epsilon: cfg.ctx.primitive_root(),
        subgroup: sub.sorted_elements(),
        cosets: sub.cosets().to_vec(),
    };
    Ok(Outcome::ok(to_line(&summary)))
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Outcome> {
    cfg.require_json("spectrum")?;
    let window = cfg.load_window()?;
    let spectrum = frame_spectrum(&window, &cfg.subgroup, &cfg.ctx)?;
    let mut v = json!({
        "p": cfg.p(),
        "M": cfg.subgroup.order(),
        "a": cfg.subgroup.index(),
        "spectrum": spectrum,
        "A": spectrum.min(),
        "B": spectrum.max(),
    });
    if cfg.verify {
        let sys = system(cfg, window)?;
        let (lo, hi) = hermitian_extremal_eigenvalues(&assemble_frame_operator(&sys)?);
        let scale = hi.abs().max(f64::MIN_POSITIVE);
        let deviation = ((lo - spectrum.min()).abs()).max((hi - spectrum.max()).abs()) / scale;
        v["verify"] = json!({
            "eigen_min": lo,
            "eigen_max": hi,
            "max_relative_deviation": deviation,
        });
    }
    Ok(Outcome::ok(to_line(&v)))
}

pub fn cmd_dual(cfg: &RunConfig) -> Result<Outcome> {
    cfg.require_json("dual")?;
    let window = cfg.load_window()?;
    let x = match cfg.load_input_signal()? {
        Some(x) => x,
        None => random_signal(&mut ChaCha8Rng::seed_from_u64(cfg.seed), cfg.p()),
    };
    let sys = system(cfg, window)?;
    match canonical_dual_and_reconstruct(&x, &sys, cfg.tolerance) {
        Ok(rec) => Ok(Outcome::ok(to_line(&json!({
            "p": cfg.p(),
            "M": cfg.subgroup.order(),
            "relative_error": rec.relative_error,
            "ok": true,
        })))),
        Err(e @ Error::NotAFrame { .. }) => Ok(Outcome {
            output: to_line(&json!({
                "p": cfg.p(),
                "M": cfg.subgroup.order(),
                "ok": false,
            })),
            diagnostics: vec![e.to_string()],
            exit: EXIT_NOT_A_FRAME,
        }),
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignalKind {
    /// Unit impulse at index 0.
    Delta,
    /// All-ones signal.
    Ones,
    /// Gaussian entries.
    Random,
    /// Unit-modulus spectrum with random phases.
    Flat,
}

pub fn cmd_gen(cfg: &RunConfig, kind: SignalKind) -> Result<Outcome> {
    let p = cfg.p();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let signal = match kind {
        SignalKind::Delta => Signal::delta(p, 0),
        SignalKind::Ones => Signal::constant(p, Complex64::new(1.0, 0.0)),
        SignalKind::Random => random_signal(&mut rng, p),
        SignalKind::Flat => flat_spectrum_window(&mut rng, &cfg.ctx, 1.0)?,
    };
    let output = match cfg.output_format {
        OutputFormat::Json => {
            let mut s = zpframe::io::signal_to_json(&signal);
            s.push('\n');
            s
        }
        OutputFormat::Csv => zpframe::io::signal_to_csv(&signal),
    };
    Ok(Outcome::ok(output))
}
