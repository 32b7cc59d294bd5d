//! The `sweep` subcommand: tabulates the cloning coefficient, entanglement
//! threshold, witness expectation, concurrence, PPT verdict, and success
//! probability over a one-parameter grid.

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, ValueEnum};
use qss_core::cloning::{coefficient_set, reduced_state, CloningParams, OutputPair};
use qss_core::entanglement::{
    concurrence_mixed, critical_concurrence, ppt_entangled, witness_value, WitnessKind,
    WitnessOperator,
};
use qss_core::protocol::success_probability;
use qss_core::states::SchmidtSpectrum;

use crate::format::sig12;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParameter {
    /// Cloning amplitude c, valid on (0, 1].
    C,
    /// Larger Schmidt weight, valid on [0, 1].
    Lambda1,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Parameter to sweep.
    #[arg(long, value_enum, default_value_t = SweepParameter::C)]
    pub parameter: SweepParameter,
    /// First grid value.
    #[arg(long)]
    pub start: f64,
    /// Last grid value, inclusive.
    #[arg(long)]
    pub stop: f64,
    /// Number of grid points, at least 2.
    #[arg(long)]
    pub steps: usize,
    /// Fixed cloning amplitude when sweeping lambda1; defaults to the
    /// universal cloner's sqrt(2/3).
    #[arg(long)]
    pub c: Option<f64>,
    /// Fixed larger Schmidt weight when sweeping c.
    #[arg(long, default_value_t = 0.5)]
    pub lambda1: f64,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// One grid point of the sweep table; `record` preserves this field order.
struct ReportRow {
    c: f64,
    d: f64,
    q_coeff: f64,
    critical_concurrence: f64,
    witness_value: f64,
    concurrence_mixed: f64,
    ppt_flag: bool,
    p_success: f64,
}

impl ReportRow {
    const HEADER: [&'static str; 8] = [
        "c",
        "d",
        "q_coeff",
        "critical_concurrence",
        "witness_value",
        "concurrence_mixed",
        "ppt_flag",
        "p_success",
    ];

    fn record(&self) -> [String; 8] {
        [
            sig12(self.c),
            sig12(self.d),
            sig12(self.q_coeff),
            sig12(self.critical_concurrence),
            sig12(self.witness_value),
            sig12(self.concurrence_mixed),
            (self.ppt_flag as u8).to_string(),
            sig12(self.p_success),
        ]
    }
}

/// Evenly spaced grid with the endpoints hit exactly, so a sweep to c = 1
/// lands on the Wootters-Zurek point rather than next to it.
fn grid(start: f64, stop: f64, steps: usize) -> Vec<f64> {
    let spacing = (stop - start) / (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i == steps - 1 {
                stop
            } else {
                start + i as f64 * spacing
            }
        })
        .collect()
}

fn report_row(c: f64, lambda1: f64) -> Result<ReportRow, String> {
    let params = CloningParams::from_c(c, 2).map_err(|e| e.to_string())?;
    let spectrum = SchmidtSpectrum::two_mode(lambda1).map_err(|e| e.to_string())?;
    let rho = reduced_state(&spectrum, &params, OutputPair::NonLocal14)
        .map_err(|e| e.to_string())?;
    let witness = WitnessOperator::new(WitnessKind::W1);
    Ok(ReportRow {
        c,
        d: params.d(),
        q_coeff: coefficient_set(&params).q,
        critical_concurrence: critical_concurrence(c)
            .map_err(|e| e.to_string())?
            .critical_concurrence,
        witness_value: witness_value(&witness, &rho).map_err(|e| e.to_string())?,
        concurrence_mixed: concurrence_mixed(&rho).map_err(|e| e.to_string())?,
        ppt_flag: ppt_entangled(&rho).map_err(|e| e.to_string())?,
        p_success: success_probability(&params).map_err(|e| e.to_string())?,
    })
}

fn validate(args: &SweepArgs) -> Result<(), String> {
    if args.steps < 2 {
        return Err(format!("need at least 2 steps, got {}", args.steps));
    }
    if args.start.is_nan() || args.stop.is_nan() || args.start >= args.stop {
        return Err(format!(
            "start must be below stop, got [{}, {}]",
            args.start, args.stop
        ));
    }
    let (lo, hi, domain) = match args.parameter {
        SweepParameter::C => (f64::MIN_POSITIVE, 1.0, "(0, 1]"),
        SweepParameter::Lambda1 => (0.0, 1.0, "[0, 1]"),
    };
    if args.start < lo || args.stop > hi {
        return Err(format!(
            "swept range [{}, {}] leaves the parameter's domain {domain}",
            args.start, args.stop
        ));
    }
    Ok(())
}

fn write_rows<W: io::Write>(args: &SweepArgs, sink: W) -> Result<usize, String> {
    let mut writer = csv::Writer::from_writer(sink);
    writer
        .write_record(ReportRow::HEADER)
        .map_err(|e| e.to_string())?;
    let values = grid(args.start, args.stop, args.steps);
    for value in &values {
        let (c, lambda1) = match args.parameter {
            SweepParameter::C => (*value, args.lambda1),
            SweepParameter::Lambda1 => (
                args.c.unwrap_or_else(|| (2.0f64 / 3.0).sqrt()),
                *value,
            ),
        };
        let row = report_row(c, lambda1)?;
        writer.write_record(row.record()).map_err(|e| e.to_string())?;
    }
    writer.flush().map_err(|e| e.to_string())?;
    Ok(values.len())
}

pub fn execute(args: &SweepArgs) -> Result<ExitCode, String> {
    validate(args)?;
    match &args.out {
        Some(path) => {
            let file = std::fs::File::create(path)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            let rows = write_rows(args, file)?;
            println!("wrote {rows} rows to {}", path.display());
        }
        None => {
            write_rows(args, io::stdout().lock())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
