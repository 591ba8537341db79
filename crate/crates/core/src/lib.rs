//! Exact verification of GHZ-type nonlocal games and of the communication
//! tasks they speed up.
//!
//! * [`boolfn`]: truth tables, the unit of every classical search.
//! * [`qsim`]: dense 1-3 qubit pure states and equatorial measurements.
//! * [`games`]: GHZ_E, GHZ_O, RGHZ, R2GHZ and CHSH, classical and quantum play.
//! * [`bounds`]: exhaustive classical optima and the CHSH calibration.
//! * [`commcomp`]: the CC2 / R2CC2 tasks, their protocols and impossibility checks.
//! * [`report`]: JSON verification reports.
//!
//! The simulator is generic over the real scalar (`f32` or `f64`); classical
//! values are exact rationals. The aliases below fix the usual choices.

pub mod boolfn;
pub mod bounds;
pub mod commcomp;
pub mod error;
pub mod games;
pub mod parallel;
pub mod qsim;
pub mod report;
pub mod scalar;

pub use boolfn::{Bits, TruthTable};
pub use error::{Error, Result};
pub use games::{ClassicalStrategy, ExactSuccess, GameId, GameInput, Party};
pub use report::VerificationReport;
pub use scalar::Scalar;

/// Exact rational used for classical success values.
pub type Rational = num_rational::Ratio<u64>;

pub type PureState = qsim::PureState<f64>;
pub type PureStateF32 = qsim::PureState<f32>;
pub type Observable = qsim::EquatorialObservable<f64>;
pub type ObservableF32 = qsim::EquatorialObservable<f32>;
pub type OutcomeDistribution = qsim::OutcomeDistribution<f64>;
pub type QuantumStrategy = games::QuantumStrategy<f64>;
pub type QuantumStrategyF32 = games::QuantumStrategy<f32>;
pub type QuantumPlay = games::QuantumPlay<f64>;
