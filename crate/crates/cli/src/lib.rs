//! Command-line front end. [`run`] does all the work and returns the exit
//! code together with what belongs on stdout and stderr, so tests can drive
//! it without spawning a process.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ghzlab::bounds;
use ghzlab::commcomp::{self, Allocation, Parity};
use ghzlab::games::{self, BuiltinStrategy, ClassicalStrategy, GameId};
use ghzlab::report::{self, VerificationReport};
use ghzlab::{Bits, Error};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "ghzlab",
    version,
    about = "Verify GHZ-game strategies, classical bounds and communication protocols"
)]
pub struct Cli {
    /// JSON layout of the report on stdout.
    #[arg(long, global = true, value_enum, default_value_t = JsonStyle::Pretty)]
    pub json: JsonStyle,
    /// Threads used by exhaustive searches. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    pub workers: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum JsonStyle {
    Pretty,
    Compact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Sample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    Theorem1,
    #[value(name = "theorem2-e")]
    Theorem2E,
    #[value(name = "theorem2-o")]
    Theorem2O,
    Theorem3,
    #[value(name = "theorem4-c1")]
    Theorem4C1,
    #[value(name = "theorem4-c2")]
    Theorem4C2,
    #[value(name = "prop1-e")]
    Prop1E,
    #[value(name = "prop1-o")]
    Prop1O,
    Prop3,
}

impl CheckName {
    pub const ALL: [CheckName; 9] = [
        CheckName::Theorem1,
        CheckName::Theorem2E,
        CheckName::Theorem2O,
        CheckName::Theorem3,
        CheckName::Theorem4C1,
        CheckName::Theorem4C2,
        CheckName::Prop1E,
        CheckName::Prop1O,
        CheckName::Prop3,
    ];
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Play a named strategy on a game, exactly or by sampling.
    VerifyGame {
        #[arg(long, value_parser = parse_game)]
        game: GameId,
        #[arg(long)]
        strategy: String,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, default_value_t = 1000)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive classical optimum of a game.
    Bounds {
        #[arg(long, value_parser = parse_game)]
        game: GameId,
    },
    /// The eight-row RGHZ walk-through of a = x̄, b = y, c = z.
    Table2,
    /// Communication protocols and impossibility checks.
    Commcomp {
        #[arg(long, value_enum)]
        check: CheckName,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Every check in sequence, aggregated into one report.
    All {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_game(s: &str) -> Result<GameId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a finished invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: String) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::usage(text)
            };
        }
    };
    let workers = cli.workers as usize;
    let mut stderr = String::new();
    let report = match cli.command {
        Command::VerifyGame {
            game,
            strategy,
            mode,
            shots,
            seed,
        } => match verify_game(game, &strategy, mode, shots, seed) {
            Ok(r) => r,
            Err(e) => return Outcome::usage(format!("error: {e}\n")),
        },
        Command::Bounds { game } => bounds::bound_report(game, workers),
        Command::Table2 => {
            stderr.push_str(&bounds::render_table2(&bounds::table2_rows()));
            bounds::table2_report()
        }
        Command::Commcomp { check, seed } => commcomp_check(check, seed, workers),
        Command::All { seed } => all(seed, workers),
    };
    let report = report.param("tool", "ghzlab");
    Outcome {
        code: if report.passed {
            EXIT_PASS
        } else {
            EXIT_COUNTEREXAMPLE
        },
        stdout: report.to_json(cli.json == JsonStyle::Pretty) + "\n",
        stderr,
    }
}

/// Classical strategies the CLI knows by name.
pub fn named_classical(game: GameId, name: &str) -> Option<ClassicalStrategy> {
    match (name, game) {
        ("flip", GameId::GhzE | GameId::GhzO) => ClassicalStrategy::from_fns(
            game,
            &[&|v: Bits| !v.bit(0), &|v: Bits| v.bit(0), &|v: Bits| {
                v.bit(0)
            }],
        )
        .ok(),
        ("flip", GameId::Rghz) => Some(bounds::rghz_flip_strategy()),
        ("switched", GameId::R2ghz) => Some(bounds::r2ghz_switched_strategy()),
        _ => None,
    }
}

/// Expected success of a builtin quantum strategy on its own game.
fn quantum_reference(strategy: BuiltinStrategy) -> f64 {
    match strategy {
        BuiltinStrategy::ChshCalibration => 0.5 * (1.0 + std::f64::consts::FRAC_1_SQRT_2),
        _ => 1.0,
    }
}

pub fn verify_game(
    game: GameId,
    strategy_name: &str,
    mode: Mode,
    shots: u64,
    seed: u64,
) -> Result<VerificationReport, Error> {
    let mut report = VerificationReport::new("verify-game")
        .param("game", game)
        .param("strategy", strategy_name)
        .param(
            "mode",
            match mode {
                Mode::Exact => "exact",
                Mode::Sample => "sample",
            },
        );
    if mode == Mode::Sample {
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        report = report.param("shots", shots);
        report.seed = Some(seed);
    }

    if let Some(strategy) = named_classical(game, strategy_name) {
        let exact = games::play_classical(game, &strategy)?;
        report.witness(&strategy);
        match mode {
            Mode::Exact => {
                report.value = Some(exact.ratio().into());
                report.examined = Some(exact.total);
                report.check(
                    "success-is-3/4",
                    exact.ratio() == ghzlab::Rational::new(3, 4),
                    exact.to_string(),
                );
            }
            Mode::Sample => {
                let play = games::sample_classical(game, &strategy, shots, seed)?;
                sampled_checks(&mut report, &play, exact.wins as f64 / exact.total as f64);
                report.details =
                    json!({ "shots": play.shots, "wins": play.wins, "per_input": play.per_input });
            }
        }
        return Ok(report.finish());
    }

    let builtin: BuiltinStrategy = strategy_name.parse()?;
    let strategy: ghzlab::QuantumStrategy = games::builtin_quantum_strategy(builtin);
    let exact = games::play_quantum(game, &strategy)?;
    let reference = (builtin.game() == game).then(|| quantum_reference(builtin));
    match mode {
        Mode::Exact => {
            report.real_value = Some(exact.overall);
            report.examined = Some(exact.per_input.len() as u64);
            match reference {
                Some(1.0) => {
                    for (input, p) in &exact.per_input {
                        if !report.check(
                            &format!("perfect-on {input}"),
                            (p - 1.0).abs() < 1e-12,
                            format!("{p:.15}"),
                        ) {
                            report.counterexample(json!({ "input": input, "win_probability": p }));
                        }
                    }
                }
                Some(value) => {
                    report.check(
                        "reference-value",
                        (exact.overall - value).abs() < 1e-9,
                        format!("{:.12} vs {:.12}", exact.overall, value),
                    );
                }
                None => report.note(format!(
                    "{builtin} is built for {}; no reference value for {game}",
                    builtin.game()
                )),
            }
            report.details = json!({
                "overall": exact.overall,
                "per_input": exact
                    .per_input
                    .iter()
                    .map(|(i, p)| json!({ "input": i, "win_probability": p }))
                    .collect::<Vec<_>>(),
            });
        }
        Mode::Sample => {
            let play = games::sample_quantum(game, &strategy, shots, seed)?;
            sampled_checks(&mut report, &play, exact.overall);
            report.details =
                json!({ "shots": play.shots, "wins": play.wins, "per_input": play.per_input });
        }
    }
    Ok(report.finish())
}

/// Wins must equal shots for a certain win, and otherwise sit within four
/// binomial standard deviations of the exact success.
fn sampled_checks(report: &mut VerificationReport, play: &games::SampledPlay, exact: f64) {
    let n = play.shots as f64;
    let freq = play.wins as f64 / n;
    report.real_value = Some(freq);
    report.examined = Some(play.shots);
    if (exact - 1.0).abs() < 1e-12 {
        report.check(
            "every-shot-won",
            play.wins == play.shots,
            format!("{}/{}", play.wins, play.shots),
        );
    } else {
        let sigma = (exact * (1.0 - exact) / n).sqrt();
        report.check(
            "frequency-within-4-sigma",
            (freq - exact).abs() <= 4.0 * sigma,
            format!("{}/{} vs {exact:.6}", play.wins, play.shots),
        );
    }
}

pub fn commcomp_check(check: CheckName, seed: u64, workers: usize) -> VerificationReport {
    let report = match check {
        CheckName::Theorem1 => commcomp::verify_theorem1(seed),
        CheckName::Theorem2E => commcomp::verify_theorem2(Parity::Even, workers),
        CheckName::Theorem2O => commcomp::verify_theorem2(Parity::Odd, workers),
        CheckName::Theorem3 => commcomp::verify_theorem3(seed),
        CheckName::Theorem4C1 => commcomp::verify_theorem4(Allocation::C1, workers),
        CheckName::Theorem4C2 => commcomp::verify_theorem4(Allocation::C2, workers),
        CheckName::Prop1E => commcomp::verify_proposition1(Parity::Even),
        CheckName::Prop1O => commcomp::verify_proposition1(Parity::Odd),
        CheckName::Prop3 => commcomp::verify_proposition3(),
    };
    let name = check
        .to_possible_value()
        .map(|v| v.get_name().to_owned())
        .unwrap_or_default();
    report.param("check", name)
}

pub fn all(seed: u64, workers: usize) -> VerificationReport {
    let mut reports: Vec<VerificationReport> = GameId::ALL
        .iter()
        .map(|&g| bounds::bound_report(g, workers))
        .collect();
    reports.push(bounds::verify_proposition2(workers));
    reports.push(bounds::table2_report());
    reports.push(bounds::chsh_calibration());
    for builtin in BuiltinStrategy::ALL {
        reports.push(
            verify_game(builtin.game(), builtin.name(), Mode::Exact, 1, seed)
                .expect("builtin strategies cover their own games"),
        );
    }
    for check in CheckName::ALL {
        reports.push(commcomp_check(check, seed, workers));
    }
    let mut all = report::aggregate("all", reports);
    all.seed = Some(seed);
    all
}
