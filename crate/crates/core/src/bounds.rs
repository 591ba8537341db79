//! Exhaustive classical optima and the CHSH calibration.
//!
//! Each party's strategy ranges over all truth tables on its *reachable*
//! views; outputs on views that never occur under the promise cannot change
//! the success, so they are pinned to 0.

use num_rational::Ratio;
use serde::Serialize;
use serde_json::json;

use crate::boolfn::{Bits, TruthTable};
use crate::games::{
    self, BuiltinStrategy, ClassicalStrategy, ExactSuccess, GameId, QuantumStrategy,
};
use crate::parallel::scan_ranges;
use crate::qsim::{self, EquatorialObservable};
use crate::report::VerificationReport;

/// Most optimal strategies kept as witnesses.
pub const WITNESS_CAP: usize = 16;

/// Points per Bob angle in the CHSH grid scan.
pub const CHSH_GRID_POINTS: usize = 360;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub game: GameId,
    pub optimum: ExactSuccess,
    pub strategies_examined: u64,
    pub optimal_count: u64,
    pub witnesses: Vec<ClassicalStrategy>,
}

/// The deterministic strategies of a game, indexed in ascending
/// (Alice, Bob, Charlie) compact-mask order.
#[derive(Clone, Debug)]
pub struct StrategySpace {
    game: GameId,
    views: Vec<Vec<Bits>>,
}

impl StrategySpace {
    pub fn new(game: GameId) -> Self {
        let views = game
            .parties()
            .iter()
            .map(|&p| games::reachable_views(game, p))
            .collect();
        StrategySpace { game, views }
    }

    /// Number of tables available to party `i`.
    pub fn table_count(&self, i: usize) -> u64 {
        1 << self.views[i].len()
    }

    pub fn len(&self) -> u64 {
        (0..self.views.len()).map(|i| self.table_count(i)).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Spreads bit `j` of `compact` onto the `j`-th reachable view.
    pub fn table(&self, party: usize, compact: u64) -> TruthTable {
        let mask = self.views[party]
            .iter()
            .enumerate()
            .filter(|(j, _)| (compact >> j) & 1 == 1)
            .fold(0u64, |m, (_, view)| m | 1 << view.index());
        let arity = self.game.view_len(self.game.parties()[party]);
        TruthTable::new(arity, mask).expect("view arity is small")
    }

    pub fn strategy(&self, index: u64) -> ClassicalStrategy {
        let mut rest = index;
        let mut compact = vec![0; self.views.len()];
        for i in (0..self.views.len()).rev() {
            compact[i] = rest % self.table_count(i);
            rest /= self.table_count(i);
        }
        let tables = compact
            .iter()
            .enumerate()
            .map(|(i, &c)| self.table(i, c))
            .collect();
        ClassicalStrategy::new(self.game, tables).expect("tables match the game")
    }
}

#[derive(Debug)]
struct Partial {
    best: Option<ExactSuccess>,
    examined: u64,
    optimal_count: u64,
    witnesses: Vec<ClassicalStrategy>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.examined += other.examined;
        match (self.best, other.best) {
            (_, None) => {}
            (Some(a), Some(b)) if a > b => {}
            (Some(a), Some(b)) if a == b => {
                self.optimal_count += other.optimal_count;
                let room = WITNESS_CAP - self.witnesses.len();
                self.witnesses
                    .extend(other.witnesses.into_iter().take(room));
            }
            _ => {
                self.best = other.best;
                self.optimal_count = other.optimal_count;
                self.witnesses = other.witnesses;
            }
        }
        self
    }
}

/// Exhaustive classical optimum on one thread.
pub fn optimal_classical(game: GameId) -> BoundCertificate {
    optimal_classical_with(game, 1)
}

/// Exhaustive classical optimum, with Alice's tables split across `workers`.
/// The certificate is independent of `workers`.
pub fn optimal_classical_with(game: GameId, workers: usize) -> BoundCertificate {
    let space = StrategySpace::new(game);
    let per_alice = space.len() / space.table_count(0);
    let partials = scan_ranges(space.table_count(0), workers, |alice| {
        let mut part = Partial {
            best: None,
            examined: 0,
            optimal_count: 0,
            witnesses: Vec::new(),
        };
        for index in alice.start * per_alice..alice.end * per_alice {
            let strategy = space.strategy(index);
            let success =
                games::play_classical(game, &strategy).expect("enumerated strategy is valid");
            part = part.merge(Partial {
                best: Some(success),
                examined: 1,
                optimal_count: 1,
                witnesses: vec![strategy],
            });
        }
        part
    });
    let total = partials
        .into_iter()
        .reduce(Partial::merge)
        .expect("at least one range");
    BoundCertificate {
        game,
        optimum: total.best.expect("strategy space is nonempty"),
        strategies_examined: total.examined,
        optimal_count: total.optimal_count,
        witnesses: total.witnesses,
    }
}

/// `a = x̄, b = y, c = z` on the single-parity-bit game.
pub fn rghz_flip_strategy() -> ClassicalStrategy {
    ClassicalStrategy::from_fns(
        GameId::Rghz,
        &[&|v: Bits| !v.bit(0), &|v: Bits| v.bit(0), &|v: Bits| {
            v.bit(0)
        }],
    )
    .expect("arities match")
}

/// `a = x̄, b = y` when r2 = 0 and `a = x, b = ȳ` when r2 = 1; `c = z`.
pub fn r2ghz_switched_strategy() -> ClassicalStrategy {
    ClassicalStrategy::from_fns(
        GameId::R2ghz,
        &[
            &|v: Bits| v.bit(0) ^ !v.bit(1),
            &|v: Bits| v.bit(0) ^ v.bit(1),
            &|v: Bits| v.bit(0),
        ],
    )
    .expect("arities match")
}

fn certificate_json(cert: &BoundCertificate) -> serde_json::Value {
    json!({
        "game": cert.game,
        "optimum": { "num": cert.optimum.wins, "den": cert.optimum.total },
        "examined": cert.strategies_examined,
        "optimal_count": cert.optimal_count,
    })
}

/// Wraps [`optimal_classical_with`] as a report that checks the 3/4 bound.
pub fn bound_report(game: GameId, workers: usize) -> VerificationReport {
    let cert = optimal_classical_with(game, workers);
    let mut report = VerificationReport::new("bounds").param("game", game);
    report.value = Some(cert.optimum.ratio().into());
    report.examined = Some(cert.strategies_examined);
    report.check(
        "optimum-is-3/4",
        cert.optimum.ratio() == Ratio::new(3, 4),
        format!("optimum {}", cert.optimum),
    );
    for w in &cert.witnesses {
        report.witness(w);
    }
    report.details = certificate_json(&cert);
    report.finish()
}

/// Both randomized games have classical optimum exactly 3/4, attained by the
/// flip strategy and its r2-switched variant.
pub fn verify_proposition2(workers: usize) -> VerificationReport {
    let mut report = VerificationReport::new("proposition2");
    let mut certs = Vec::new();
    for game in [GameId::Rghz, GameId::R2ghz] {
        let cert = optimal_classical_with(game, workers);
        report.check(
            &format!("{game}-optimum-is-3/4"),
            cert.optimum.ratio() == Ratio::new(3, 4),
            format!(
                "optimum {} over {} strategies",
                cert.optimum, cert.strategies_examined
            ),
        );
        certs.push(cert);
    }
    let named = [
        (GameId::Rghz, "rghz-flip-strategy", rghz_flip_strategy()),
        (
            GameId::R2ghz,
            "r2ghz-switched-strategy",
            r2ghz_switched_strategy(),
        ),
    ];
    for (game, name, strategy) in named {
        let success = games::play_classical(game, &strategy).expect("valid strategy");
        if !report.check(
            &format!("{name}-attains-3/4"),
            success.ratio() == Ratio::new(3, 4),
            format!("success {success}"),
        ) {
            report.counterexample(json!({ "strategy": strategy, "success": success.to_string() }));
        }
        report
            .witness(json!({ "game": game, "strategy": strategy, "success": success.to_string() }));
    }
    report.value = Some(Ratio::new(3, 4).into());
    report.examined = Some(certs.iter().map(|c| c.strategies_examined).sum());
    report.details = serde_json::Value::Array(certs.iter().map(certificate_json).collect());
    report.finish()
}

/// One row of the RGHZ walk-through of the flip strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Table2Row {
    pub r1: bool,
    pub xyz: Bits,
    pub omega: bool,
    pub abc: Bits,
    pub parity: bool,
    pub win: bool,
}

/// The eight RGHZ rows for `a = x̄, b = y, c = z`, ordered by `(r1, xyz)`.
pub fn table2_rows() -> Vec<Table2Row> {
    let strategy = rghz_flip_strategy();
    games::promise_inputs(GameId::Rghz)
        .into_iter()
        .map(|input| {
            let abc = games::classical_outputs(GameId::Rghz, &strategy, &input).expect("valid");
            let omega = games::target(GameId::Rghz, &input).expect("promise input");
            Table2Row {
                r1: input.r1.expect("rghz input"),
                xyz: Bits::from_slice(&[input.x, input.y, input.z.expect("rghz input")]),
                omega,
                abc,
                parity: abc.parity(),
                win: abc.parity() == omega,
            }
        })
        .collect()
}

/// Plain-text rendering of [`table2_rows`].
pub fn render_table2(rows: &[Table2Row]) -> String {
    let mut out = String::from("r1  x y z  Ω  a b c  a⊕b⊕c  ✓/✗\n");
    for row in rows {
        let spaced = |b: Bits| {
            b.iter()
                .map(|v| if v { "1" } else { "0" })
                .collect::<Vec<_>>()
                .join(" ")
        };
        out.push_str(&format!(
            "{}   {}  {}  {}  {}      {}\n",
            row.r1 as u8,
            spaced(row.xyz),
            row.omega as u8,
            spaced(row.abc),
            row.parity as u8,
            if row.win { "✓" } else { "✗" },
        ));
    }
    out
}

/// Checks the eight rows, the two losing rows, and the 6/8 success.
pub fn table2_report() -> VerificationReport {
    let rows = table2_rows();
    let mut report = VerificationReport::new("table2");
    let failing: Vec<(u8, String)> = rows
        .iter()
        .filter(|r| !r.win)
        .map(|r| (r.r1 as u8, r.xyz.to_string()))
        .collect();
    let expected_failing = vec![(0, "000".to_owned()), (1, "111".to_owned())];
    if !report.check(
        "failing-rows",
        failing == expected_failing,
        format!("{failing:?}"),
    ) {
        for r in rows.iter().filter(|r| !r.win) {
            report.counterexample(r);
        }
    }
    let wins = rows.iter().filter(|r| r.win).count() as u64;
    let success = ExactSuccess {
        wins,
        total: rows.len() as u64,
    };
    report.check(
        "success-6/8",
        (wins, success.total) == (6, 8),
        success.to_string(),
    );
    report.value = Some(success.ratio().into());
    report.examined = Some(rows.len() as u64);
    report.details = json!({ "rows": rows, "wins": wins, "total": success.total });
    report.finish()
}

/// CHSH success of Alice angles `alice` and Bob angles `bob` on the Bell state.
pub fn chsh_success(alice: [f64; 2], bob: [f64; 2]) -> f64 {
    let state = qsim::bell_state::<f64>();
    let mut sum = 0.0;
    for input in games::promise_inputs(GameId::Chsh) {
        let obs = [
            EquatorialObservable::new(alice[input.x as usize]),
            EquatorialObservable::new(bob[input.y as usize]),
        ];
        let dist = qsim::outcome_distribution(&state, &obs).expect("two observables");
        sum += dist.parity_mass(input.x & input.y);
    }
    sum / 4.0
}

/// Classical CHSH optimum by enumeration, the calibration strategy's value,
/// and a grid scan over Bob's angles with Alice's fixed.
pub fn chsh_calibration() -> VerificationReport {
    let quantum_optimum = 0.5 * (1.0 + std::f64::consts::FRAC_1_SQRT_2);
    let mut report = VerificationReport::new("chsh-calibration");

    let cert = optimal_classical(GameId::Chsh);
    report.value = Some(cert.optimum.ratio().into());
    report.examined = Some(cert.strategies_examined);
    report.check(
        "classical-optimum-is-3/4",
        cert.optimum.ratio() == Ratio::new(3, 4),
        format!("optimum {} over {}", cert.optimum, cert.strategies_examined),
    );

    let strategy: QuantumStrategy<f64> =
        games::builtin_quantum_strategy(BuiltinStrategy::ChshCalibration);
    let play = games::play_quantum(GameId::Chsh, &strategy).expect("complete assignment");
    report.real_value = Some(play.overall);
    report.check(
        "calibration-value",
        (play.overall - quantum_optimum).abs() < 1e-9,
        format!("{:.12} vs {:.12}", play.overall, quantum_optimum),
    );

    let alice = [
        strategy.assignment[0][&Bits::from_slice(&[false])].theta(),
        strategy.assignment[0][&Bits::from_slice(&[true])].theta(),
    ];
    let step = std::f64::consts::TAU / CHSH_GRID_POINTS as f64;
    let mut best = (f64::MIN, 0.0, 0.0);
    for i in 0..CHSH_GRID_POINTS {
        for j in 0..CHSH_GRID_POINTS {
            let (b0, b1) = (i as f64 * step, j as f64 * step);
            let value = chsh_success(alice, [b0, b1]);
            if value > best.0 {
                best = (value, b0, b1);
            }
        }
    }
    if !report.check(
        "grid-maximum-within-bound",
        best.0 <= quantum_optimum + 1e-6,
        format!("grid maximum {:.12}", best.0),
    ) {
        report.counterexample(json!({ "bob": [best.1, best.2], "value": best.0 }));
    }
    report.details = json!({
        "grid_points_per_angle": CHSH_GRID_POINTS,
        "grid_maximum": best.0,
        "grid_argmax": [best.1, best.2],
        "quantum_optimum": quantum_optimum,
    });
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_sizes() {
        let sizes: Vec<_> = GameId::ALL
            .iter()
            .map(|&g| StrategySpace::new(g).len())
            .collect();
        assert_eq!(sizes, [64, 64, 256, 16_384, 16]);
    }

    #[test]
    fn unreachable_views_are_zero() {
        let space = StrategySpace::new(GameId::R2ghz);
        // Alice never sees (x, r2 = 1, 1): indices 3 and 7.
        let t = space.table(0, 0b11_1111);
        assert_eq!(t.mask(), 0b0111_0111);
        // Bob never sees (y, 0, 1): indices 1 and 5.
        let t = space.table(1, 0b11_1111);
        assert_eq!(t.mask(), 0b1101_1101);
    }

    #[test]
    fn strategy_indexing_is_ascending() {
        let space = StrategySpace::new(GameId::GhzE);
        let masks: Vec<Vec<u64>> = (0..space.len())
            .map(|i| {
                space
                    .strategy(i)
                    .tables()
                    .iter()
                    .map(|t| t.mask())
                    .collect()
            })
            .collect();
        assert!(masks.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(masks[1], [0, 0, 1]);
    }

    #[test]
    fn ghz_and_chsh_optima() {
        let e = optimal_classical(GameId::GhzE);
        assert_eq!(e.optimum.ratio(), Ratio::new(3, 4));
        assert_eq!(e.strategies_examined, 64);
        let c = optimal_classical(GameId::Chsh);
        assert_eq!(c.optimum.ratio(), Ratio::new(3, 4));
        assert_eq!(c.strategies_examined, 16);
        for w in &c.witnesses {
            assert_eq!(games::play_classical(GameId::Chsh, w).unwrap(), c.optimum);
        }
    }

    #[test]
    fn witnesses_are_capped() {
        let c = optimal_classical(GameId::R2ghz);
        assert!(c.optimal_count > WITNESS_CAP as u64);
        assert_eq!(c.witnesses.len(), WITNESS_CAP);
    }

    #[test]
    fn table2_matches_the_published_rows() {
        // (r1, xyz, Ω, abc, parity, win)
        let expected = [
            (0, "000", 0, "100", 1, false),
            (0, "011", 1, "111", 1, true),
            (0, "101", 1, "001", 1, true),
            (0, "110", 1, "010", 1, true),
            (1, "001", 0, "101", 0, true),
            (1, "010", 0, "110", 0, true),
            (1, "100", 0, "000", 0, true),
            (1, "111", 1, "011", 0, false),
        ];
        let rows = table2_rows();
        assert_eq!(rows.len(), 8);
        for (row, e) in rows.iter().zip(expected) {
            let got = (
                row.r1 as u8,
                row.xyz.to_string(),
                row.omega as u8,
                row.abc.to_string(),
                row.parity as u8,
                row.win,
            );
            assert_eq!(got, (e.0, e.1.to_owned(), e.2, e.3.to_owned(), e.4, e.5));
        }
        assert!(table2_report().passed);
        assert_eq!(render_table2(&rows).lines().count(), 9);
    }

    #[test]
    fn named_strategies() {
        let s = games::play_classical(GameId::Rghz, &rghz_flip_strategy()).unwrap();
        assert_eq!((s.wins, s.total), (6, 8));
        let s = games::play_classical(GameId::R2ghz, &r2ghz_switched_strategy()).unwrap();
        assert_eq!((s.wins, s.total), (12, 16));
    }
}
