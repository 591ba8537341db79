//! The GHZ-family games and the CHSH calibration game.
//!
//! Inputs are drawn uniformly from the promise set of each game. A classical
//! strategy is one truth table per party over that party's view; a quantum
//! strategy is a shared state plus one equatorial observable per reachable
//! view.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::boolfn::{Bits, TruthTable};
use crate::error::{Error, Result};
use crate::qsim::{self, EquatorialObservable, PureState};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GameId {
    GhzE,
    GhzO,
    Rghz,
    R2ghz,
    Chsh,
}

impl GameId {
    pub const ALL: [GameId; 5] = [
        GameId::GhzE,
        GameId::GhzO,
        GameId::Rghz,
        GameId::R2ghz,
        GameId::Chsh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GameId::GhzE => "ghz-e",
            GameId::GhzO => "ghz-o",
            GameId::Rghz => "rghz",
            GameId::R2ghz => "r2ghz",
            GameId::Chsh => "chsh",
        }
    }

    pub fn parties(self) -> &'static [Party] {
        match self {
            GameId::Chsh => &[Party::Alice, Party::Bob],
            _ => &[Party::Alice, Party::Bob, Party::Charlie],
        }
    }

    pub fn party_count(self) -> usize {
        self.parties().len()
    }

    /// Length of the view `party` receives.
    pub fn view_len(self, party: Party) -> usize {
        match (self, party) {
            (GameId::R2ghz, Party::Alice | Party::Bob) => 3,
            (GameId::Rghz, Party::Alice) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for GameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GameId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GameId::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "game",
                name: s.to_owned(),
            })
    }
}

impl Serialize for GameId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Party {
    Alice,
    Bob,
    Charlie,
}

impl Party {
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One round of referee input. `z` is absent for CHSH; `r1` and `r2` only
/// exist in the randomized games.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GameInput {
    pub x: bool,
    pub y: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r1: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r2: Option<bool>,
}

impl GameInput {
    pub fn xyz(x: bool, y: bool, z: bool) -> Self {
        GameInput {
            x,
            y,
            z: Some(z),
            r1: None,
            r2: None,
        }
    }

    pub fn xy(x: bool, y: bool) -> Self {
        GameInput {
            x,
            y,
            z: None,
            r1: None,
            r2: None,
        }
    }

    pub fn with_r1(mut self, r1: bool) -> Self {
        self.r1 = Some(r1);
        self
    }

    pub fn with_r2(mut self, r2: bool) -> Self {
        self.r2 = Some(r2);
        self
    }

    fn z_or_false(&self) -> bool {
        self.z.unwrap_or(false)
    }
}

impl fmt::Display for GameInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = |v: bool| if v { '1' } else { '0' };
        if let Some(r2) = self.r2 {
            write!(f, "r2={} ", b(r2))?;
        }
        if let Some(r1) = self.r1 {
            write!(f, "r1={} ", b(r1))?;
        }
        match self.z {
            Some(z) => write!(f, "xyz={}{}{}", b(self.x), b(self.y), b(z)),
            None => write!(f, "xy={}{}", b(self.x), b(self.y)),
        }
    }
}

/// `[(x ∨ y ∨ z) ∧ ¬r1] ∨ [(x ∧ y ∧ z) ∧ r1]`: the required output parity.
pub fn winning_bit(x: bool, y: bool, z: bool, r1: bool) -> bool {
    ((x | y | z) & !r1) | ((x & y & z) & r1)
}

/// Every promise-satisfying input, ordered lexicographically on `(r2, r1, x, y, z)`.
pub fn promise_inputs(game: GameId) -> Vec<GameInput> {
    match game {
        GameId::Chsh => Bits::all(2)
            .map(|b| GameInput::xy(b.bit(0), b.bit(1)))
            .collect(),
        GameId::GhzE | GameId::GhzO => {
            let parity = game == GameId::GhzO;
            Bits::all(3)
                .filter(|b| b.parity() == parity)
                .map(|b| GameInput::xyz(b.bit(0), b.bit(1), b.bit(2)))
                .collect()
        }
        GameId::Rghz => Bits::all(4)
            .filter(|b| b.bit(0) == (b.bit(1) ^ b.bit(2) ^ b.bit(3)))
            .map(|b| GameInput::xyz(b.bit(1), b.bit(2), b.bit(3)).with_r1(b.bit(0)))
            .collect(),
        GameId::R2ghz => Bits::all(5)
            .filter(|b| b.bit(1) == (b.bit(2) ^ b.bit(3) ^ b.bit(4)))
            .map(|b| {
                GameInput::xyz(b.bit(2), b.bit(3), b.bit(4))
                    .with_r1(b.bit(1))
                    .with_r2(b.bit(0))
            })
            .collect(),
    }
}

fn check_input(game: GameId, input: &GameInput) -> Result<()> {
    let has_z = input.z.is_some();
    let shape_ok = match game {
        GameId::Chsh => !has_z && input.r1.is_none() && input.r2.is_none(),
        GameId::GhzE | GameId::GhzO => has_z && input.r1.is_none() && input.r2.is_none(),
        GameId::Rghz => has_z && input.r1.is_some() && input.r2.is_none(),
        GameId::R2ghz => has_z && input.r1.is_some() && input.r2.is_some(),
    };
    if !shape_ok {
        return Err(Error::MalformedInput(input.to_string(), game.to_string()));
    }
    let parity = input.x ^ input.y ^ input.z_or_false();
    let promise_ok = match game {
        GameId::Chsh => true,
        GameId::GhzE => !parity,
        GameId::GhzO => parity,
        GameId::Rghz | GameId::R2ghz => Some(parity) == input.r1,
    };
    if !promise_ok {
        return Err(Error::PromiseViolation(input.to_string(), game.to_string()));
    }
    Ok(())
}

/// Required value of the XOR of all outputs on `input`.
pub fn target(game: GameId, input: &GameInput) -> Result<bool> {
    check_input(game, input)?;
    let z = input.z_or_false();
    Ok(match game {
        GameId::Chsh => input.x & input.y,
        GameId::GhzE => winning_bit(input.x, input.y, z, false),
        GameId::GhzO => winning_bit(input.x, input.y, z, true),
        GameId::Rghz | GameId::R2ghz => winning_bit(input.x, input.y, z, input.r1.unwrap_or(false)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartyView {
    pub party: Party,
    pub bits: Bits,
}

/// What each party sees of `input`, in party order.
pub fn party_views(game: GameId, input: &GameInput) -> Result<Vec<PartyView>> {
    check_input(game, input)?;
    let view = |party, bits: &[bool]| PartyView {
        party,
        bits: Bits::from_slice(bits),
    };
    let z = input.z_or_false();
    Ok(match game {
        GameId::Chsh => vec![view(Party::Alice, &[input.x]), view(Party::Bob, &[input.y])],
        GameId::GhzE | GameId::GhzO => vec![
            view(Party::Alice, &[input.x]),
            view(Party::Bob, &[input.y]),
            view(Party::Charlie, &[z]),
        ],
        GameId::Rghz => vec![
            view(Party::Alice, &[input.x, input.r1.unwrap_or(false)]),
            view(Party::Bob, &[input.y]),
            view(Party::Charlie, &[z]),
        ],
        GameId::R2ghz => {
            let r1 = input.r1.unwrap_or(false);
            let r2 = input.r2.unwrap_or(false);
            vec![
                view(Party::Alice, &[input.x, r2, r1 & !r2]),
                view(Party::Bob, &[input.y, r2, r1 & r2]),
                view(Party::Charlie, &[z]),
            ]
        }
    })
}

/// Views of `party` that occur under the promise, ascending.
pub fn reachable_views(game: GameId, party: Party) -> Vec<Bits> {
    let mut views: Vec<Bits> = promise_inputs(game)
        .iter()
        .map(|input| {
            party_views(game, input).expect("promise inputs are valid")[party.index()].bits
        })
        .collect();
    views.sort();
    views.dedup();
    views
}

/// Exact success `wins / total` of a deterministic strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExactSuccess {
    pub wins: u64,
    pub total: u64,
}

impl ExactSuccess {
    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.wins, self.total)
    }
}

impl PartialOrd for ExactSuccess {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactSuccess {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.wins as u128 * other.total as u128)
            .cmp(&(other.wins as u128 * self.total as u128))
            .then(self.total.cmp(&other.total))
    }
}

impl Serialize for ExactSuccess {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("ExactSuccess", 2)?;
        s.serialize_field("num", &self.wins)?;
        s.serialize_field("den", &self.total)?;
        s.end()
    }
}

impl fmt::Display for ExactSuccess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.wins, self.total)
    }
}

/// One output table per party, indexed by the party's view.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassicalStrategy {
    tables: Vec<TruthTable>,
}

impl ClassicalStrategy {
    pub fn new(game: GameId, tables: Vec<TruthTable>) -> Result<Self> {
        if tables.len() != game.party_count() {
            return Err(Error::PartyCount {
                expected: game.party_count(),
                got: tables.len(),
            });
        }
        for (&party, table) in game.parties().iter().zip(&tables) {
            let expected = game.view_len(party);
            if table.arity() != expected {
                return Err(Error::ArityMismatch {
                    party: party.to_string(),
                    expected,
                    got: table.arity(),
                });
            }
        }
        Ok(ClassicalStrategy { tables })
    }

    /// Tabulates one closure per party.
    pub fn from_fns(game: GameId, fns: &[&dyn Fn(Bits) -> bool]) -> Result<Self> {
        let tables = game
            .parties()
            .iter()
            .zip(fns)
            .map(|(&party, f)| TruthTable::from_fn(game.view_len(party), f))
            .collect::<Result<Vec<_>>>()?;
        Self::new(game, tables)
    }

    pub fn tables(&self) -> &[TruthTable] {
        &self.tables
    }
}

fn check_strategy(game: GameId, strategy: &ClassicalStrategy) -> Result<()> {
    ClassicalStrategy::new(game, strategy.tables.clone()).map(|_| ())
}

/// Output bits `(a, b[, c])` of a deterministic strategy on one input.
pub fn classical_outputs(
    game: GameId,
    strategy: &ClassicalStrategy,
    input: &GameInput,
) -> Result<Bits> {
    check_strategy(game, strategy)?;
    party_views(game, input)?
        .iter()
        .zip(&strategy.tables)
        .map(|(view, table)| table.eval_bits(view.bits))
        .collect()
}

/// Exact fraction of promise inputs won by `strategy`.
pub fn play_classical(game: GameId, strategy: &ClassicalStrategy) -> Result<ExactSuccess> {
    check_strategy(game, strategy)?;
    let inputs = promise_inputs(game);
    let mut wins = 0;
    for input in &inputs {
        let outputs = classical_outputs(game, strategy, input)?;
        if outputs.parity() == target(game, input)? {
            wins += 1;
        }
    }
    Ok(ExactSuccess {
        wins,
        total: inputs.len() as u64,
    })
}

/// Success of a shared-randomness mixture of deterministic strategies,
/// computed input by input. Weights must sum to 1.
pub fn play_mixture(
    game: GameId,
    mixture: &[(Ratio<u64>, ClassicalStrategy)],
) -> Result<Ratio<u64>> {
    let inputs = promise_inputs(game);
    let mut total = Ratio::from_integer(0);
    for input in &inputs {
        let goal = target(game, input)?;
        for (weight, strategy) in mixture {
            if classical_outputs(game, strategy, input)?.parity() == goal {
                total += *weight;
            }
        }
    }
    Ok(total / inputs.len() as u64)
}

/// Shared state plus, per party, an observable for each view.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumStrategy<T: Scalar> {
    pub state: PureState<T>,
    pub assignment: Vec<BTreeMap<Bits, EquatorialObservable<T>>>,
}

impl<T: Scalar> QuantumStrategy<T> {
    pub fn observable(&self, view: &PartyView) -> Result<EquatorialObservable<T>> {
        self.assignment
            .get(view.party.index())
            .and_then(|m| m.get(&view.bits))
            .copied()
            .ok_or_else(|| Error::MissingView {
                party: view.party.to_string(),
                view: view.bits.to_string(),
            })
    }

    /// Observables measured on `input`, in party order.
    pub fn observables(
        &self,
        game: GameId,
        input: &GameInput,
    ) -> Result<Vec<EquatorialObservable<T>>> {
        party_views(game, input)?
            .iter()
            .map(|view| self.observable(view))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantumPlay<T: Scalar> {
    pub overall: T,
    pub per_input: Vec<(GameInput, T)>,
}

/// Win probability on each promise input and their uniform average.
pub fn play_quantum<T: Scalar>(
    game: GameId,
    strategy: &QuantumStrategy<T>,
) -> Result<QuantumPlay<T>> {
    if strategy.state.qubit_count() != game.party_count() {
        return Err(Error::PartyCount {
            expected: game.party_count(),
            got: strategy.state.qubit_count(),
        });
    }
    let inputs = promise_inputs(game);
    let mut per_input = Vec::with_capacity(inputs.len());
    let mut sum = T::zero();
    for input in inputs {
        let observables = strategy.observables(game, &input)?;
        let dist = qsim::outcome_distribution(&strategy.state, &observables)?;
        let p = dist.parity_mass(target(game, &input)?);
        sum = sum + p;
        per_input.push((input, p));
    }
    let n = T::from_f64(per_input.len() as f64);
    Ok(QuantumPlay {
        overall: sum / n,
        per_input,
    })
}

/// Monte-Carlo play: inputs drawn uniformly from the promise set, outcomes
/// from the Born distribution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampledPlay {
    pub shots: u64,
    pub wins: u64,
    /// `(input, times drawn, times won)` in promise order.
    pub per_input: Vec<(GameInput, u64, u64)>,
}

pub fn sample_quantum<T: Scalar>(
    game: GameId,
    strategy: &QuantumStrategy<T>,
    shots: u64,
    seed: u64,
) -> Result<SampledPlay> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let inputs = promise_inputs(game);
    let mut dists = Vec::with_capacity(inputs.len());
    for input in &inputs {
        let observables = strategy.observables(game, input)?;
        let dist = qsim::outcome_distribution(&strategy.state, &observables)?;
        dists.push((dist, target(game, input)?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = vec![(0u64, 0u64); inputs.len()];
    for _ in 0..shots {
        let k = rng.gen_range(0..inputs.len());
        let (dist, goal) = &dists[k];
        let won = qsim::sample_one(dist, &mut rng).parity() == *goal;
        tally[k].0 += 1;
        tally[k].1 += won as u64;
    }
    Ok(SampledPlay {
        shots,
        wins: tally.iter().map(|t| t.1).sum(),
        per_input: inputs
            .into_iter()
            .zip(tally)
            .map(|(i, (n, w))| (i, n, w))
            .collect(),
    })
}

/// Monte-Carlo play of a deterministic strategy; only the inputs are random.
pub fn sample_classical(
    game: GameId,
    strategy: &ClassicalStrategy,
    shots: u64,
    seed: u64,
) -> Result<SampledPlay> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let inputs = promise_inputs(game);
    let wins_on = inputs
        .iter()
        .map(|i| Ok(classical_outputs(game, strategy, i)?.parity() == target(game, i)?))
        .collect::<Result<Vec<bool>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = vec![(0u64, 0u64); inputs.len()];
    for _ in 0..shots {
        let k = rng.gen_range(0..inputs.len());
        tally[k].0 += 1;
        tally[k].1 += wins_on[k] as u64;
    }
    Ok(SampledPlay {
        shots,
        wins: tally.iter().map(|t| t.1).sum(),
        per_input: inputs
            .into_iter()
            .zip(tally)
            .map(|(i, (n, w))| (i, n, w))
            .collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinStrategy {
    Table1E,
    Table1O,
    Lemma1,
    ChshCalibration,
}

impl BuiltinStrategy {
    pub const ALL: [BuiltinStrategy; 4] = [
        BuiltinStrategy::Table1E,
        BuiltinStrategy::Table1O,
        BuiltinStrategy::Lemma1,
        BuiltinStrategy::ChshCalibration,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinStrategy::Table1E => "table1-e",
            BuiltinStrategy::Table1O => "table1-o",
            BuiltinStrategy::Lemma1 => "lemma1",
            BuiltinStrategy::ChshCalibration => "chsh-calibration",
        }
    }

    /// The game the strategy is built for.
    pub fn game(self) -> GameId {
        match self {
            BuiltinStrategy::Table1E => GameId::GhzE,
            BuiltinStrategy::Table1O => GameId::GhzO,
            BuiltinStrategy::Lemma1 => GameId::R2ghz,
            BuiltinStrategy::ChshCalibration => GameId::Chsh,
        }
    }
}

impl FromStr for BuiltinStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BuiltinStrategy::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "strategy",
                name: s.to_owned(),
            })
    }
}

impl fmt::Display for BuiltinStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

// Input 0 -> X, input 1 -> Y.
fn even_map<T: Scalar>(bit: bool) -> EquatorialObservable<T> {
    if bit {
        EquatorialObservable::y()
    } else {
        EquatorialObservable::x()
    }
}

// Input 0 -> reversed Y, input 1 -> X.
fn odd_map<T: Scalar>(bit: bool) -> EquatorialObservable<T> {
    if bit {
        EquatorialObservable::x()
    } else {
        EquatorialObservable::neg_y()
    }
}

fn single_bit_map<T: Scalar>(
    f: fn(bool) -> EquatorialObservable<T>,
) -> BTreeMap<Bits, EquatorialObservable<T>> {
    [false, true]
        .into_iter()
        .map(|b| (Bits::from_slice(&[b]), f(b)))
        .collect()
}

/// The named perfect (or calibration) quantum strategies.
pub fn builtin_quantum_strategy<T: Scalar>(name: BuiltinStrategy) -> QuantumStrategy<T> {
    match name {
        BuiltinStrategy::Table1E => QuantumStrategy {
            state: qsim::ghz_state(),
            assignment: vec![
                single_bit_map(even_map),
                single_bit_map(even_map),
                single_bit_map(even_map),
            ],
        },
        BuiltinStrategy::Table1O => QuantumStrategy {
            state: qsim::ghz_state(),
            assignment: vec![
                single_bit_map(odd_map),
                single_bit_map(even_map),
                single_bit_map(even_map),
            ],
        },
        BuiltinStrategy::Lemma1 => {
            // Whoever holds r1 (Alice when r2 = 0, Bob when r2 = 1) switches
            // between the even and odd Alice columns; the other sender keeps
            // the even column.
            let sender_map = |holds_r1_when_r2: bool| {
                reachable_views(
                    GameId::R2ghz,
                    if holds_r1_when_r2 {
                        Party::Bob
                    } else {
                        Party::Alice
                    },
                )
                .into_iter()
                .map(|view| {
                    let (input, r2, r1) = (view.bit(0), view.bit(1), view.bit(2));
                    let obs = if r2 == holds_r1_when_r2 && r1 {
                        odd_map(input)
                    } else {
                        even_map(input)
                    };
                    (view, obs)
                })
                .collect()
            };
            QuantumStrategy {
                state: qsim::ghz_state(),
                assignment: vec![
                    sender_map(false),
                    sender_map(true),
                    single_bit_map(even_map),
                ],
            }
        }
        BuiltinStrategy::ChshCalibration => {
            let angle = |t: f64| EquatorialObservable::new(T::from_f64(t));
            let pi = std::f64::consts::PI;
            let alice = [(false, angle(0.0)), (true, angle(pi / 2.0))];
            let bob = [(false, angle(7.0 * pi / 4.0)), (true, angle(pi / 4.0))];
            let to_map = |pairs: [(bool, EquatorialObservable<T>); 2]| {
                pairs
                    .into_iter()
                    .map(|(b, o)| (Bits::from_slice(&[b]), o))
                    .collect()
            };
            QuantumStrategy {
                state: qsim::bell_state(),
                assignment: vec![to_map(alice), to_map(bob)],
            }
        }
    }
}
