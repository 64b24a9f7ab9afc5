mod args;
mod io;

use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use thiserror::Error;

use spectra_core::audio_steg::{
    detect_hidden_tone, normalize_rms, prepare_carrier, synthetic_carrier, SYNTHETIC_SAMPLE_RATE,
};
use spectra_core::experiments::{
    emit_results, monte_carlo, run_case, Carrier, CaseInput, ExperimentCase,
};
use spectra_core::signal_model::embed_sinusoid;
use spectra_core::{default_order, estimate, CaseId, FrequencyGrid, Method};

use args::{CarrierArg, CaseArgs, Cli, Command, DetectArgs, EmbedArgs, EstimateArgs, SynthArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl From<spectra_core::Error> for CliError {
    fn from(e: spectra_core::Error) -> Self {
        let hint = match e {
            spectra_core::Error::NotPositiveDefinite { .. }
            | spectra_core::Error::SingularRecursion { .. } => {
                "; try a lower order or a noisier input"
            }
            _ => "",
        };
        CliError::Data(format!("{e}{hint}"))
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn check_distinct(input: Option<&Path>, output: Option<&Path>) -> Result<(), CliError> {
    if let (Some(i), Some(o)) = (input, output) {
        if i == o {
            return Err(usage(
                "--out must differ from --in; inputs are never overwritten",
            ));
        }
    }
    Ok(())
}

fn check_order(order: Option<usize>) -> Result<(), CliError> {
    if order == Some(0) {
        return Err(usage("--order must be at least 1"));
    }
    Ok(())
}

fn check_prominence(p: f64) -> Result<(), CliError> {
    if !(p.is_finite() && p >= 0.0) {
        return Err(usage("--prominence must be a finite non-negative number"));
    }
    Ok(())
}

fn synth(args: SynthArgs) -> Result<(), CliError> {
    let out = args.output.out.as_deref();
    if let Some(carrier) = args.carrier {
        if carrier != CarrierArg::Synthetic {
            return Err(usage("synth only generates `--carrier synthetic`"));
        }
        if args.length == 0 {
            return Err(usage("--length must be at least 1"));
        }
        let x = synthetic_carrier(args.length, args.seed)?;
        return io::write_signal(out, &x, SYNTHETIC_SAMPLE_RATE);
    }
    let id: CaseId = args.case.expect("clap enforces --case or --carrier").into();
    let case = ExperimentCase::preset(id);
    if !matches!(case.input, CaseInput::Awgn { .. }) {
        return Err(usage(format!(
            "case {id} has no synthesized signal; use `reproduce` for b- and c-cases"
        )));
    }
    let x = case.signal(args.seed)?;
    io::write_signal(out, &x, SYNTHETIC_SAMPLE_RATE)
}

fn estimate_cmd(args: EstimateArgs) -> Result<(), CliError> {
    check_order(args.order)?;
    check_distinct(Some(&args.input), args.output.out.as_deref())?;
    let method: Method = args.method.into();
    let grid = FrequencyGrid::uniform(args.grid.grid as usize)?;
    let x = io::read_signal(&args.input)?;
    let order = args.order.unwrap_or_else(|| default_order(method));
    let spectrum = estimate(&x, method, order, &grid)?;
    io::write_output(
        args.output.out.as_deref(),
        &emit_results(&spectrum, args.format.into()),
    )
}

fn embed(args: EmbedArgs) -> Result<(), CliError> {
    if !(0.0..0.5).contains(&args.freq) {
        return Err(usage("--freq must lie in [0, 0.5) cycles/sample"));
    }
    if !args.amp.is_finite() {
        return Err(usage("--amp must be finite"));
    }
    if args.length == 0 {
        return Err(usage("--length must be at least 1"));
    }
    check_distinct(args.input.as_deref(), args.output.out.as_deref())?;
    let (carrier, rate) = match args.carrier {
        CarrierArg::File => {
            let path = args
                .input
                .as_deref()
                .ok_or_else(|| usage("--carrier file needs --in <carrier.wav>"))?;
            let audio = io::read_audio(path)?;
            (prepare_carrier(&audio, args.length)?, audio.sample_rate)
        }
        CarrierArg::Synthetic => {
            if args.input.is_some() {
                return Err(usage("--in is only used with --carrier file"));
            }
            (
                synthetic_carrier(args.length, args.seed)?,
                SYNTHETIC_SAMPLE_RATE,
            )
        }
    };
    let stego = embed_sinusoid(&normalize_rms(&carrier), args.freq, args.amp)?;
    io::write_signal(args.output.out.as_deref(), &stego, rate)
}

fn detect(args: DetectArgs) -> Result<(), CliError> {
    check_order(args.order)?;
    check_prominence(args.prominence)?;
    check_distinct(Some(&args.input), args.output.out.as_deref())?;
    let method: Method = args.method.into();
    let grid = FrequencyGrid::uniform(args.grid.grid as usize)?;
    let x = io::read_signal(&args.input)?;
    let order = args.order.unwrap_or_else(|| default_order(method));
    let report = detect_hidden_tone(&x, method, order, &grid, args.prominence)?;
    io::write_output(
        args.output.out.as_deref(),
        &emit_results(&report, args.format.into()),
    )
}

fn build_case(args: &CaseArgs) -> Result<ExperimentCase, CliError> {
    check_order(args.order)?;
    check_prominence(args.prominence)?;
    check_distinct(args.input.as_deref(), args.output.out.as_deref())?;
    let mut case = ExperimentCase::preset(args.case.into());
    case.seed_base = args.seed;
    case.grid_size = args.grid.grid as usize;
    case.prominence = args.prominence;
    if let Some(order) = args.order {
        case.order = order;
    }
    let is_carrier_case = matches!(case.input, CaseInput::Carrier { .. });
    if let Some(amp) = args.amp {
        if !is_carrier_case {
            return Err(usage("--amp applies to c-cases only"));
        }
        if !amp.is_finite() {
            return Err(usage("--amp must be finite"));
        }
        case.amp_a = amp;
    }
    match (args.carrier, &args.input) {
        (CarrierArg::File, None) => return Err(usage("--carrier file needs --in <carrier.wav>")),
        (CarrierArg::Synthetic, Some(_)) => {
            return Err(usage("--in is only used with --carrier file"))
        }
        (CarrierArg::File, Some(_)) if !is_carrier_case => {
            return Err(usage("--carrier applies to c-cases only"))
        }
        (CarrierArg::File, Some(path)) => {
            let audio = io::read_audio(path)?;
            let signal = spectra_core::Signal::new(audio.samples)?;
            if let CaseInput::Carrier { length, .. } = case.input {
                case.input = CaseInput::Carrier {
                    carrier: Carrier::Recorded(signal),
                    length,
                };
            }
        }
        (CarrierArg::Synthetic, None) => {}
    }
    Ok(case)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Synth(a) => synth(a),
        Command::Estimate(a) => estimate_cmd(a),
        Command::Embed(a) => embed(a),
        Command::Detect(a) => detect(a),
        Command::Reproduce(a) => {
            let case = build_case(&a.case)?;
            let result = run_case(&case)?;
            io::write_output(
                a.case.output.out.as_deref(),
                &emit_results(&result, a.case.format.into()),
            )
        }
        Command::Montecarlo(a) => {
            let case = build_case(&a.case)?;
            let table = monte_carlo(&case, a.trials as usize)?;
            io::write_output(
                a.case.output.out.as_deref(),
                &emit_results(&table, a.case.format.into()),
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
