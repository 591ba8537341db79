//! Three-party communication tasks built on the GHZ games.
//!
//! Alice and Bob each hold a two-bit string (plus, in the randomized task,
//! bits of `r1`/`r2`); Charlie holds `z` and must output the task function
//! after receiving a few classical bits. With a shared GHZ state one bit per
//! sender suffices. The verifiers here decide classical decodability by
//! exhaustive search over encoders combined with a fiber-constancy test.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use serde_json::json;

use crate::boolfn::{enumerate_tables, Bits, TruthTable};
use crate::error::{Error, Result};
use crate::games::{self, BuiltinStrategy, GameId, GameInput, QuantumStrategy};
use crate::parallel::scan_ranges;
use crate::qsim;
use crate::report::VerificationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TaskId {
    Cc2E,
    Cc2O,
    R2Cc2,
}

impl TaskId {
    pub const ALL: [TaskId; 3] = [TaskId::Cc2E, TaskId::Cc2O, TaskId::R2Cc2];

    pub fn name(self) -> &'static str {
        match self {
            TaskId::Cc2E => "cc2-e",
            TaskId::Cc2O => "cc2-o",
            TaskId::R2Cc2 => "r2cc2",
        }
    }

    /// The game whose strategy the entangled protocol runs on the first bits.
    pub fn game(self) -> GameId {
        match self {
            TaskId::Cc2E => GameId::GhzE,
            TaskId::Cc2O => GameId::GhzO,
            TaskId::R2Cc2 => GameId::R2ghz,
        }
    }

    fn strategy(self) -> BuiltinStrategy {
        match self {
            TaskId::Cc2E => BuiltinStrategy::Table1E,
            TaskId::Cc2O => BuiltinStrategy::Table1O,
            TaskId::R2Cc2 => BuiltinStrategy::Lemma1,
        }
    }
}

impl fmt::Display for TaskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TaskId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TaskId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "task",
                name: s.to_owned(),
            })
    }
}

impl Serialize for TaskId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Inputs of one task instance. Strings are `[s0, s1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TaskInput {
    pub x: [bool; 2],
    pub y: [bool; 2],
    pub z: [bool; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r1: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r2: Option<bool>,
}

impl TaskInput {
    /// The game input formed by the first bit of every string.
    pub fn game_input(&self) -> GameInput {
        GameInput {
            x: self.x[0],
            y: self.y[0],
            z: Some(self.z[0]),
            r1: self.r1,
            r2: self.r2,
        }
    }

    /// Alice's full data: `x0 x1` then, in the randomized task, `r2, r1·¬r2`.
    pub fn alice_view(&self) -> Bits {
        let mut v = Bits::from_slice(&self.x);
        if let (Some(r1), Some(r2)) = (self.r1, self.r2) {
            v.push(r2);
            v.push(r1 & !r2);
        }
        v
    }

    /// Bob's full data: `y0 y1` then, in the randomized task, `r2, r1·r2`.
    pub fn bob_view(&self) -> Bits {
        let mut v = Bits::from_slice(&self.y);
        if let (Some(r1), Some(r2)) = (self.r1, self.r2) {
            v.push(r2);
            v.push(r1 & r2);
        }
        v
    }

    pub fn charlie_view(&self) -> Bits {
        Bits::from_slice(&self.z)
    }
}

impl fmt::Display for TaskInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |b: [bool; 2]| Bits::from_slice(&b);
        write!(f, "x={} y={} z={}", s(self.x), s(self.y), s(self.z))?;
        if let Some(r1) = self.r1 {
            write!(f, " r1={}", r1 as u8)?;
        }
        if let Some(r2) = self.r2 {
            write!(f, " r2={}", r2 as u8)?;
        }
        Ok(())
    }
}

/// All promise-satisfying inputs: 32 for the CC2 tasks, 128 for the
/// randomized task.
pub fn task_inputs(task: TaskId) -> Vec<TaskInput> {
    let randomized = task == TaskId::R2Cc2;
    let free = if randomized { 7 } else { 5 };
    Bits::all(free)
        .map(|b| {
            let mut it = b.iter();
            let mut next = || it.next().expect("enough bits");
            let (r2, r1) = if randomized {
                (Some(next()), Some(next()))
            } else {
                (None, None)
            };
            let x = [next(), next()];
            let y = [next(), next()];
            let z1 = next();
            let parity = match task {
                TaskId::Cc2E => false,
                TaskId::Cc2O => true,
                TaskId::R2Cc2 => r1.expect("randomized"),
            };
            TaskInput {
                x,
                y,
                z: [x[0] ^ y[0] ^ parity, z1],
                r1,
                r2,
            }
        })
        .collect()
}

fn check_task_input(task: TaskId, input: &TaskInput) -> Result<()> {
    let randomized = task == TaskId::R2Cc2;
    if input.r1.is_some() != randomized || input.r2.is_some() != randomized {
        return Err(Error::MalformedInput(input.to_string(), task.to_string()));
    }
    let parity = input.x[0] ^ input.y[0] ^ input.z[0];
    let ok = match task {
        TaskId::Cc2E => !parity,
        TaskId::Cc2O => parity,
        TaskId::R2Cc2 => Some(parity) == input.r1,
    };
    if !ok {
        return Err(Error::PromiseViolation(input.to_string(), task.to_string()));
    }
    Ok(())
}

/// `x1 ⊕ y1 ⊕ z1 ⊕ Ω(x0, y0, z0, r1)` with `r1` fixed to 0 / 1 for the CC2 tasks.
pub fn eval_task_function(task: TaskId, input: &TaskInput) -> Result<bool> {
    check_task_input(task, input)?;
    let r1 = match task {
        TaskId::Cc2E => false,
        TaskId::Cc2O => true,
        TaskId::R2Cc2 => input.r1.unwrap_or(false),
    };
    let omega = games::winning_bit(input.x[0], input.y[0], input.z[0], r1);
    Ok(input.x[1] ^ input.y[1] ^ input.z[1] ^ omega)
}

/// What Charlie must compute in the `x1 = z1 = 0` sub-task once `x0, z0`
/// are known to him; `(0, 1)` and `(1, 0)` share one function.
pub fn ftilde(x0z0: (bool, bool), y0: bool, y1: bool, r1: bool) -> bool {
    match x0z0 {
        (false, false) => y1 ^ (y0 & !r1),
        (true, true) => y1 ^ !r1 ^ (y0 & r1),
        _ => y1 ^ !r1,
    }
}

/// Bits per sender-to-Charlie channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ChannelConfig {
    pub alice_bits: usize,
    pub bob_bits: usize,
}

impl ChannelConfig {
    pub const ONE_ONE: ChannelConfig = ChannelConfig {
        alice_bits: 1,
        bob_bits: 1,
    };
    /// Two bits from Alice, one from Bob.
    pub const C1: ChannelConfig = ChannelConfig {
        alice_bits: 2,
        bob_bits: 1,
    };
    /// One bit from Alice, two from Bob.
    pub const C2: ChannelConfig = ChannelConfig {
        alice_bits: 1,
        bob_bits: 2,
    };
    pub const TWO_TWO: ChannelConfig = ChannelConfig {
        alice_bits: 2,
        bob_bits: 2,
    };

    pub fn new(alice_bits: usize, bob_bits: usize) -> Result<Self> {
        if (1..=2).contains(&alice_bits) && (1..=2).contains(&bob_bits) {
            Ok(ChannelConfig {
                alice_bits,
                bob_bits,
            })
        } else {
            Err(Error::UnsupportedConfig(
                alice_bits,
                bob_bits,
                "any task".into(),
            ))
        }
    }

    pub fn admits(&self, transcript: &Transcript) -> bool {
        transcript.message_from_alice.len() <= self.alice_bits
            && transcript.message_from_bob.len() <= self.bob_bits
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub input: TaskInput,
    pub message_from_alice: Bits,
    pub message_from_bob: Bits,
    pub charlie_output: bool,
    pub target: bool,
}

impl Transcript {
    pub fn is_correct(&self) -> bool {
        self.charlie_output == self.target
    }
}

/// Entangled protocol with one bit per sender: play the matching perfect
/// game strategy on the first bits, send `a ⊕ x1` and `b ⊕ y1`, and let
/// Charlie output `c_A ⊕ c_B ⊕ c ⊕ z1`. Outcomes are sampled from `rng`.
pub fn run_quantum_protocol<R: Rng + ?Sized>(
    task: TaskId,
    input: &TaskInput,
    rng: &mut R,
) -> Result<Transcript> {
    let target = eval_task_function(task, input)?;
    let game = task.game();
    let strategy: QuantumStrategy<f64> = games::builtin_quantum_strategy(task.strategy());
    let observables = strategy.observables(game, &input.game_input())?;
    let dist = qsim::outcome_distribution(&strategy.state, &observables)?;
    let outcome = qsim::sample_one(&dist, rng);
    let (a, b, c) = (outcome.bit(0), outcome.bit(1), outcome.bit(2));
    let c_a = a ^ input.x[1];
    let c_b = b ^ input.y[1];
    Ok(Transcript {
        input: *input,
        message_from_alice: Bits::from_slice(&[c_a]),
        message_from_bob: Bits::from_slice(&[c_b]),
        charlie_output: c_a ^ c_b ^ c ^ input.z[1],
        target,
    })
}

/// Runs the entangled protocol on every promise input with one generator
/// seeded by `seed`.
pub fn run_quantum_protocol_all(task: TaskId, seed: u64) -> Result<Vec<Transcript>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    task_inputs(task)
        .iter()
        .map(|input| run_quantum_protocol(task, input, &mut rng))
        .collect()
}

/// Classical protocols: `(2, 1)` for the CC2 tasks (Alice sends `x`, Bob
/// sends `y1`, Charlie recovers `y0` from the promise) and `(2, 2)` for the
/// randomized task (both send their strings, Charlie recovers `r1`).
pub fn run_classical_protocol(
    task: TaskId,
    input: &TaskInput,
    config: ChannelConfig,
) -> Result<Transcript> {
    let supported = match task {
        TaskId::Cc2E | TaskId::Cc2O => config == ChannelConfig::C1,
        TaskId::R2Cc2 => config == ChannelConfig::TWO_TWO,
    };
    if !supported {
        return Err(Error::UnsupportedConfig(
            config.alice_bits,
            config.bob_bits,
            task.to_string(),
        ));
    }
    let target = eval_task_function(task, input)?;
    let from_alice = Bits::from_slice(&input.x);
    let z = input.z;
    let (from_bob, output) = match task {
        TaskId::Cc2E | TaskId::Cc2O => {
            let (x0, x1) = (from_alice.bit(0), from_alice.bit(1));
            let y1 = input.y[1];
            let y0 = x0 ^ z[0] ^ (task == TaskId::Cc2O);
            let omega = games::winning_bit(x0, y0, z[0], task == TaskId::Cc2O);
            (Bits::from_slice(&[y1]), x1 ^ y1 ^ z[1] ^ omega)
        }
        TaskId::R2Cc2 => {
            let from_bob = Bits::from_slice(&input.y);
            let (x0, x1) = (from_alice.bit(0), from_alice.bit(1));
            let (y0, y1) = (from_bob.bit(0), from_bob.bit(1));
            let r1 = x0 ^ y0 ^ z[0];
            let omega = games::winning_bit(x0, y0, z[0], r1);
            (from_bob, x1 ^ y1 ^ z[1] ^ omega)
        }
    };
    Ok(Transcript {
        input: *input,
        message_from_alice: from_alice,
        message_from_bob: from_bob,
        charlie_output: output,
        target,
    })
}

/// A sender: how its data is read off a case, and one encoder table per
/// message bit.
pub struct Sender<'a, I> {
    pub view: &'a dyn Fn(&I) -> Bits,
    pub encoders: &'a [TruthTable],
}

/// Most decoder input bits [`decoding_exists`] handles.
pub const MAX_DECODER_BITS: usize = 16;

/// A decoder over `(messages ++ decoder view)`, unreached inputs mapped to 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decoder {
    arity: usize,
    #[serde(serialize_with = "serialize_outputs")]
    outputs: Vec<bool>,
}

fn serialize_outputs<S: Serializer>(
    outputs: &[bool],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(
        &outputs
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect::<String>(),
    )
}

impl Decoder {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn evaluate(&self, input: Bits) -> bool {
        assert_eq!(input.len(), self.arity);
        self.outputs[input.index() as usize]
    }

    /// The same decoder as a truth table, when it is narrow enough.
    pub fn as_truth_table(&self) -> Option<TruthTable> {
        TruthTable::from_fn(self.arity, |b| self.outputs[b.index() as usize]).ok()
    }
}

/// Messages the senders emit on `case`, in sender order.
pub fn encode<I>(case: &I, senders: &[Sender<'_, I>]) -> Result<Bits> {
    let mut out = Bits::EMPTY;
    for sender in senders {
        let view = (sender.view)(case);
        for enc in sender.encoders {
            out.push(enc.eval_bits(view)?);
        }
    }
    Ok(out)
}

/// Whether Charlie can output `target` exactly from the messages and his own
/// view: true iff the target is constant on every fiber of
/// `(messages, decoder view)`. Returns such a decoder if one exists.
pub fn decoding_exists<I>(
    cases: &[(I, bool)],
    senders: &[Sender<'_, I>],
    decoder_view: &dyn Fn(&I) -> Bits,
) -> Result<Option<Decoder>> {
    let message_bits: usize = senders.iter().map(|s| s.encoders.len()).sum();
    let mut fibers: HashMap<Bits, bool> = HashMap::new();
    let mut arity = message_bits;
    for (case, goal) in cases {
        let key = encode(case, senders)?.concat(decoder_view(case));
        arity = key.len();
        if arity > MAX_DECODER_BITS {
            return Err(Error::DecoderTooWide(arity));
        }
        match fibers.insert(key, *goal) {
            Some(previous) if previous != *goal => return Ok(None),
            _ => {}
        }
    }
    let mut outputs = vec![false; 1 << arity];
    for (key, value) in fibers {
        outputs[key.index() as usize] = value;
    }
    Ok(Some(Decoder { arity, outputs }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn task(self) -> TaskId {
        match self {
            Parity::Even => TaskId::Cc2E,
            Parity::Odd => TaskId::Cc2O,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "e",
            Parity::Odd => "o",
        })
    }
}

fn alice_view(i: &TaskInput) -> Bits {
    i.alice_view()
}

fn bob_view(i: &TaskInput) -> Bits {
    i.bob_view()
}

fn charlie_view(i: &TaskInput) -> Bits {
    i.charlie_view()
}

/// Indices (into the 16 × 16 grid of one-bit encoder pairs over the senders'
/// strings) that admit a decoder for `cases`. Order is ascending.
pub fn decodable_encoder_pairs(
    cases: &[(TaskInput, bool)],
    workers: usize,
) -> Vec<(TruthTable, TruthTable)> {
    let tables: Vec<TruthTable> = enumerate_tables(2).expect("arity 2").collect();
    let n = tables.len() as u64;
    scan_ranges(n * n, workers, |range| {
        range
            .filter_map(|k| {
                let (ea, eb) = (tables[(k / n) as usize], tables[(k % n) as usize]);
                let senders = [
                    Sender {
                        view: &alice_view,
                        encoders: &[ea],
                    },
                    Sender {
                        view: &bob_view,
                        encoders: &[eb],
                    },
                ];
                decoding_exists(cases, &senders, &charlie_view)
                    .expect("encoder arity matches the two-bit strings")
                    .map(|_| (ea, eb))
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// No pair of one-bit encoders of the senders' strings lets Charlie compute
/// `f_E` / `f_O` exactly, whatever he does with `z`.
pub fn verify_theorem2(variant: Parity, workers: usize) -> VerificationReport {
    let task = variant.task();
    let mut report = VerificationReport::new(format!("theorem2-{variant}"));

    let anf: std::collections::BTreeSet<_> = Bits::all(4)
        .map(|c| TruthTable::from_anf_2bit(c.bit(0), c.bit(1), c.bit(2), c.bit(3)))
        .collect();
    let all: std::collections::BTreeSet<_> = enumerate_tables(2).expect("arity 2").collect();
    report.check(
        "encoder-family-equals-affine-ansatz",
        anf == all,
        format!(
            "{} ansatz encoders, {} boolean functions",
            anf.len(),
            all.len()
        ),
    );

    let cases: Vec<_> = task_inputs(task)
        .into_iter()
        .map(|i| {
            let t = eval_task_function(task, &i).expect("promise input");
            (i, t)
        })
        .collect();
    let decodable = decodable_encoder_pairs(&cases, workers);
    report.examined = Some(256);
    if !report.check(
        "no-decodable-encoder-pair",
        decodable.is_empty(),
        format!("256 encoder pairs examined, {} decodable", decodable.len()),
    ) {
        for (ea, eb) in &decodable {
            report.counterexample(json!({ "alice_encoder": ea, "bob_encoder": eb }));
        }
    }

    // Without the OR/AND term the target is linear and must be decodable.
    let linear: Vec<_> = cases
        .iter()
        .map(|(i, _)| (*i, i.x[1] ^ i.y[1] ^ i.z[1]))
        .collect();
    let x1 = TruthTable::projection(2, 1).expect("arity 2");
    let senders = [
        Sender {
            view: &alice_view,
            encoders: &[x1],
        },
        Sender {
            view: &bob_view,
            encoders: &[x1],
        },
    ];
    let sanity = decoding_exists(&linear, &senders, &charlie_view).expect("valid arities");
    let linear_pairs = decodable_encoder_pairs(&linear, workers).len();
    report.check(
        "sanity-linear-target-decodable",
        sanity.is_some() && linear_pairs > 0,
        format!("c_A = x1, c_B = y1 decodes x1⊕y1⊕z1; {linear_pairs} decodable pairs in total"),
    );
    report.note(
        "shared randomness: a mixture of deterministic protocols is exact only if every \
         protocol in its support is, so deterministic exhaustion covers it",
    );
    report.details =
        json!({ "task": task, "inputs": cases.len(), "decodable_pairs": decodable.len() });
    report.finish()
}

/// Channel allocation for the three-bit impossibility check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Allocation {
    C1,
    C2,
}

impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Allocation::C1 => "c1",
            Allocation::C2 => "c2",
        })
    }
}

/// The collocated sub-task of the randomized task for `allocation`:
/// for C1, `r2 = 1` and `x1 = z1 = 0`, Alice sits with Charlie and Bob is
/// the one-bit sender; C2 mirrors it.
pub struct SubTask {
    pub allocation: Allocation,
    pub cases: Vec<(TaskInput, bool)>,
}

impl SubTask {
    pub fn new(allocation: Allocation) -> Self {
        let cases = task_inputs(TaskId::R2Cc2)
            .into_iter()
            .filter(|i| match allocation {
                Allocation::C1 => i.r2 == Some(true) && !i.x[1] && !i.z[1],
                Allocation::C2 => i.r2 == Some(false) && !i.y[1] && !i.z[1],
            })
            .map(|i| {
                let t = eval_task_function(TaskId::R2Cc2, &i).expect("promise input");
                (i, t)
            })
            .collect();
        SubTask { allocation, cases }
    }

    /// The remote sender's data: its string and its `r1` bit.
    pub fn sender_view(&self) -> fn(&TaskInput) -> Bits {
        fn bob(i: &TaskInput) -> Bits {
            let v = i.bob_view();
            Bits::from_slice(&[v.bit(0), v.bit(1), v.bit(3)])
        }
        fn alice(i: &TaskInput) -> Bits {
            let v = i.alice_view();
            Bits::from_slice(&[v.bit(0), v.bit(1), v.bit(3)])
        }
        match self.allocation {
            Allocation::C1 => bob,
            Allocation::C2 => alice,
        }
    }

    /// Charlie's string followed by the collocated sender's full data.
    pub fn decoder_view(&self) -> fn(&TaskInput) -> Bits {
        fn with_alice(i: &TaskInput) -> Bits {
            i.charlie_view().concat(i.alice_view())
        }
        fn with_bob(i: &TaskInput) -> Bits {
            i.charlie_view().concat(i.bob_view())
        }
        match self.allocation {
            Allocation::C1 => with_alice,
            Allocation::C2 => with_bob,
        }
    }

    /// One-bit encoders of the remote sender that admit a decoder, ascending.
    pub fn decodable_encoders(&self, workers: usize) -> Vec<TruthTable> {
        let tables: Vec<TruthTable> = enumerate_tables(3).expect("arity 3").collect();
        let view = self.sender_view();
        let dview = self.decoder_view();
        scan_ranges(tables.len() as u64, workers, |range| {
            range
                .filter_map(|k| {
                    let enc = [tables[k as usize]];
                    let senders = [Sender {
                        view: &view,
                        encoders: &enc,
                    }];
                    decoding_exists(&self.cases, &senders, &dview)
                        .expect("arity 3 encoders on three-bit views")
                        .map(|_| enc[0])
                })
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect()
    }
}

/// The collocated reduction: no one-bit encoder of the remote sender's data
/// lets Charlie (holding the other sender's data) compute `f_R` on the
/// sub-task.
pub fn verify_theorem4(allocation: Allocation, workers: usize) -> VerificationReport {
    let sub = SubTask::new(allocation);
    let mut report = VerificationReport::new(format!("theorem4-{allocation}"));

    let identity = sub.cases.iter().all(|(i, t)| {
        let (remote, r1) = match allocation {
            Allocation::C1 => (i.y, i.r1.unwrap_or(false)),
            Allocation::C2 => (i.x, i.r1.unwrap_or(false)),
        };
        let near = match allocation {
            Allocation::C1 => i.x[0],
            Allocation::C2 => i.y[0],
        };
        ftilde((near, i.z[0]), remote[0], remote[1], r1) == *t
    });
    report.check(
        "sub-task-target-matches-ftilde",
        identity,
        format!("{} sub-task inputs", sub.cases.len()),
    );

    let decodable = sub.decodable_encoders(workers);
    report.examined = Some(256);
    if !report.check(
        "no-decodable-one-bit-encoder",
        decodable.is_empty(),
        format!("256 encoders examined, {} decodable", decodable.len()),
    ) {
        let view = sub.sender_view();
        let dview = sub.decoder_view();
        for enc in &decodable {
            let encs = [*enc];
            let senders = [Sender {
                view: &view,
                encoders: &encs,
            }];
            let decoder = decoding_exists(&sub.cases, &senders, &dview)
                .expect("valid arities")
                .expect("listed as decodable");
            report.counterexample(json!({ "encoder": enc, "decoder": decoder }));
        }
    }

    // A second bit (the remote string's second bit and r1) must suffice.
    let two_bits = [
        TruthTable::projection(3, 1).expect("arity 3"),
        TruthTable::projection(3, 2).expect("arity 3"),
    ];
    let view = sub.sender_view();
    let senders = [Sender {
        view: &view,
        encoders: &two_bits,
    }];
    let relaxed =
        decoding_exists(&sub.cases, &senders, &sub.decoder_view()).expect("valid arities");
    report.check(
        "sanity-two-bit-sender-decodable",
        relaxed.is_some(),
        "remote sender transmits (s1, r1)",
    );
    report.details = json!({
        "allocation": allocation.to_string(),
        "sub_task_inputs": sub.cases.len(),
        "decodable_encoders": decodable.len(),
    });
    report.finish()
}

fn protocol_report(
    name: &str,
    transcripts: Vec<Transcript>,
    config: ChannelConfig,
    seed: Option<u64>,
) -> VerificationReport {
    let mut report = VerificationReport::new(name);
    report.seed = seed;
    report.examined = Some(transcripts.len() as u64);
    let wrong: Vec<_> = transcripts.iter().filter(|t| !t.is_correct()).collect();
    let over_budget: Vec<_> = transcripts.iter().filter(|t| !config.admits(t)).collect();
    report.check(
        "exact-on-every-input",
        wrong.is_empty(),
        format!("{} inputs, {} wrong", transcripts.len(), wrong.len()),
    );
    report.check(
        "message-budget",
        over_budget.is_empty(),
        format!("budget ({}, {})", config.alice_bits, config.bob_bits),
    );
    for t in wrong.into_iter().chain(over_budget) {
        report.counterexample(t);
    }
    report.finish()
}

/// Entangled one-bit protocols for the CC2 tasks (both parities).
pub fn verify_theorem1(seed: u64) -> VerificationReport {
    let mut transcripts = Vec::new();
    for task in [TaskId::Cc2E, TaskId::Cc2O] {
        transcripts.extend(run_quantum_protocol_all(task, seed).expect("promise inputs"));
    }
    protocol_report("theorem1", transcripts, ChannelConfig::ONE_ONE, Some(seed))
}

/// Entangled one-bit protocol for the randomized task.
pub fn verify_theorem3(seed: u64) -> VerificationReport {
    let transcripts = run_quantum_protocol_all(TaskId::R2Cc2, seed).expect("promise inputs");
    protocol_report("theorem3", transcripts, ChannelConfig::ONE_ONE, Some(seed))
}

/// Classical (2, 1) protocol for one CC2 task.
pub fn verify_proposition1(variant: Parity) -> VerificationReport {
    let task = variant.task();
    let transcripts = task_inputs(task)
        .iter()
        .map(|i| run_classical_protocol(task, i, ChannelConfig::C1).expect("supported"))
        .collect();
    protocol_report(
        &format!("prop1-{variant}"),
        transcripts,
        ChannelConfig::C1,
        None,
    )
}

/// Classical (2, 2) protocol for the randomized task.
pub fn verify_proposition3() -> VerificationReport {
    let task = TaskId::R2Cc2;
    let transcripts = task_inputs(task)
        .iter()
        .map(|i| run_classical_protocol(task, i, ChannelConfig::TWO_TWO).expect("supported"))
        .collect();
    protocol_report("prop3", transcripts, ChannelConfig::TWO_TWO, None)
}
