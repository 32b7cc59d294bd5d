//! The `run` subcommand: seeded Monte Carlo protocol rounds with a rate
//! report, operator diagnostics, and an optional per-round CSV export.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Args;
use qss_core::cloning::CloningParams;
use qss_core::protocol::{
    discrimination_operators, run_trials, success_probability, BobVerdict, TrialStats,
};

use crate::format::sig12;

#[derive(Args)]
pub struct RunArgs {
    /// Cloning amplitude c in (0, 1].
    #[arg(long)]
    pub c: f64,
    /// Number of protocol rounds.
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// Seed for the trial generator; identical seeds give identical output.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Write one CSV row per round.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report diagnostics for the hermitized operator variant instead of the
    /// literal one.
    #[arg(long)]
    pub hermitized_povm: bool,
}

fn verdict_label(verdict: BobVerdict) -> &'static str {
    match verdict {
        BobVerdict::Plus => "plus",
        BobVerdict::Minus => "minus",
        BobVerdict::Inconclusive => "inconclusive",
    }
}

fn write_outcomes(path: &PathBuf, stats: &TrialStats) -> Result<(), String> {
    let mut writer = csv::Writer::from_path(path)
        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    writer
        .write_record(["trial", "encoded_bit", "alice_bit", "verdict", "success"])
        .map_err(|e| e.to_string())?;
    for (trial, outcome) in stats.outcomes.iter().enumerate() {
        writer
            .write_record([
                trial.to_string(),
                outcome.encoded_bit.as_u8().to_string(),
                outcome.alice_bit.to_string(),
                verdict_label(outcome.verdict).to_string(),
                (outcome.success as u8).to_string(),
            ])
            .map_err(|e| e.to_string())?;
    }
    writer.flush().map_err(|e| e.to_string())
}

pub fn execute(args: &RunArgs) -> Result<ExitCode, String> {
    let params = CloningParams::from_c(args.c, 2).map_err(|e| e.to_string())?;
    let stats = run_trials(&params, args.trials, args.seed).map_err(|e| e.to_string())?;
    let analytic = success_probability(&params).map_err(|e| e.to_string())?;
    let empirical = stats.success_rate();
    let sigma = (analytic * (1.0 - analytic) / stats.trials as f64).sqrt();

    println!("trials            {}", stats.trials);
    println!("seed              {}", args.seed);
    println!("c                 {}", sig12(args.c));
    println!("d                 {}", sig12(params.d()));
    println!("analytic rate     {}", sig12(analytic));
    println!("empirical rate    {}", sig12(empirical));
    println!("standard error    {}", sig12(sigma));
    println!(
        "verdicts          plus {}  minus {}  inconclusive {}",
        stats.plus_verdicts, stats.minus_verdicts, stats.inconclusive
    );
    println!("wrong conclusive  {}", stats.wrong_conclusive);

    let q = analytic;
    let ops = discrimination_operators(q, args.hermitized_povm).map_err(|e| e.to_string())?;
    let variant = if args.hermitized_povm {
        "hermitized"
    } else {
        "literal"
    };
    println!("operator diagnostics ({variant})");
    for diagnostic in ops.positivity_diagnostics() {
        println!(
            "  {:20} hermitian {}  positive {}  hermitian-part eigenvalues [{}, {}]",
            diagnostic.name,
            diagnostic.hermitian,
            diagnostic.positive,
            sig12(diagnostic.hermitian_part_eigenvalues[0]),
            sig12(diagnostic.hermitian_part_eigenvalues[1]),
        );
    }

    if let Some(path) = &args.out {
        write_outcomes(path, &stats)?;
        println!("wrote {} rows to {}", stats.trials, path.display());
    }
    Ok(ExitCode::SUCCESS)
}
