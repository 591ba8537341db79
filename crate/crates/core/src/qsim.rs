//! Dense pure-state simulation of 1-3 qubits measured along Bloch-equator
//! directions.
//!
//! Qubit 0 is the most significant bit of a basis index, matching the bit
//! convention of [`crate::boolfn`]. A measured eigenvalue `+1` is declared as
//! bit 0 and `-1` as bit 1.

use std::collections::BTreeMap;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolfn::Bits;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const MAX_QUBITS: usize = 3;

/// A normalized state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState<T: Scalar> {
    qubits: usize,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Scalar> PureState<T> {
    pub fn new(qubits: usize, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&qubits) {
            return Err(Error::QubitCount(qubits));
        }
        if amplitudes.len() != 1 << qubits {
            return Err(Error::InputLength {
                expected: 1 << qubits,
                got: amplitudes.len(),
            });
        }
        let norm = amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .fold(T::zero(), |s, p| s + p);
        if (norm - T::one()).abs() > T::tolerance() {
            return Err(Error::NotNormalized(norm.as_f64()));
        }
        Ok(PureState { qubits, amplitudes })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(qubits: usize, index: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&qubits) {
            return Err(Error::QubitCount(qubits));
        }
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); 1 << qubits];
        amplitudes[index] = Complex::new(T::one(), T::zero());
        Self::new(qubits, amplitudes)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .fold(T::zero(), |s, p| s + p)
    }
}

fn cat_state<T: Scalar>(qubits: usize) -> PureState<T> {
    let dim = 1usize << qubits;
    let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); dim];
    amplitudes[0] = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    amplitudes[dim - 1] = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    PureState::new(qubits, amplitudes).expect("cat state is normalized")
}

/// `(|000⟩ + |111⟩)/√2`.
pub fn ghz_state<T: Scalar>() -> PureState<T> {
    cat_state(3)
}

/// `(|00⟩ + |11⟩)/√2`.
pub fn bell_state<T: Scalar>() -> PureState<T> {
    cat_state(2)
}

/// The ±1 observable `cos θ·σ_x + sin θ·σ_y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquatorialObservable<T: Scalar> {
    theta: T,
}

impl<T: Scalar> EquatorialObservable<T> {
    /// Angle is reduced into `[0, 2π)`.
    pub fn new(theta: T) -> Self {
        let two_pi = T::TAU();
        let mut theta = theta % two_pi;
        if theta < T::zero() {
            theta = theta + two_pi;
        }
        if theta >= two_pi {
            theta = T::zero();
        }
        EquatorialObservable { theta }
    }

    /// Pauli X.
    pub fn x() -> Self {
        Self::new(T::zero())
    }

    /// Pauli Y.
    pub fn y() -> Self {
        Self::new(T::FRAC_PI_2())
    }

    /// Pauli Y with reversed direction.
    pub fn neg_y() -> Self {
        Self::new(T::PI() + T::FRAC_PI_2())
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    /// Same axis, opposite direction.
    pub fn reversed(&self) -> Self {
        Self::new(self.theta + T::PI())
    }

    /// Conjugated components of the eigenvector declared as `outcome`
    /// (`false` for eigenvalue +1): `⟨e| = (⟨0| ± e^{-iθ}⟨1|)/√2`.
    fn bra(&self, outcome: bool) -> [Complex<T>; 2] {
        let h = T::FRAC_1_SQRT_2();
        let phase = Complex::new(self.theta.cos(), -self.theta.sin()) * h;
        [
            Complex::new(h, T::zero()),
            if outcome { -phase } else { phase },
        ]
    }
}

/// Joint distribution of the declared outcome bits.
#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeDistribution<T: Scalar> {
    qubits: usize,
    probabilities: Vec<T>,
}

impl<T: Scalar> OutcomeDistribution<T> {
    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn probability(&self, outcome: Bits) -> T {
        assert_eq!(outcome.len(), self.qubits);
        self.probabilities[outcome.index() as usize]
    }

    /// `(outcome, probability)` pairs in ascending outcome order.
    pub fn iter(&self) -> impl Iterator<Item = (Bits, T)> + '_ {
        let qubits = self.qubits;
        self.probabilities
            .iter()
            .enumerate()
            .map(move |(i, &p)| (Bits::from_index(qubits, i as u32), p))
    }

    pub fn total(&self) -> T {
        self.probabilities.iter().fold(T::zero(), |s, &p| s + p)
    }

    /// Mass on outcomes whose bits XOR to `parity`.
    pub fn parity_mass(&self, parity: bool) -> T {
        self.iter()
            .filter(|(bits, _)| bits.parity() == parity)
            .fold(T::zero(), |s, (_, p)| s + p)
    }
}

fn check_observables<T: Scalar>(
    state: &PureState<T>,
    observables: &[EquatorialObservable<T>],
) -> Result<()> {
    if observables.len() != state.qubits {
        return Err(Error::ObservableCount {
            expected: state.qubits,
            got: observables.len(),
        });
    }
    Ok(())
}

/// Born-rule distribution of a product measurement, one observable per qubit.
pub fn outcome_distribution<T: Scalar>(
    state: &PureState<T>,
    observables: &[EquatorialObservable<T>],
) -> Result<OutcomeDistribution<T>> {
    check_observables(state, observables)?;
    let n = state.qubits;
    let dim = 1usize << n;
    let floor = -T::clamp_floor();
    let mut probabilities = Vec::with_capacity(dim);
    for outcome in 0..dim {
        let bras: Vec<_> = observables
            .iter()
            .enumerate()
            .map(|(q, obs)| obs.bra((outcome >> (n - 1 - q)) & 1 == 1))
            .collect();
        let mut amp = Complex::new(T::zero(), T::zero());
        for (basis, &psi) in state.amplitudes.iter().enumerate() {
            let coeff = bras
                .iter()
                .enumerate()
                .fold(Complex::new(T::one(), T::zero()), |acc, (q, bra)| {
                    acc * bra[(basis >> (n - 1 - q)) & 1]
                });
            amp = amp + coeff * psi;
        }
        let p = amp.norm_sqr();
        debug_assert!(p >= floor);
        probabilities.push(if p < T::zero() { T::zero() } else { p });
    }
    Ok(OutcomeDistribution {
        qubits: n,
        probabilities,
    })
}

/// `P(even outcome parity) − P(odd outcome parity)`, the expectation of the
/// tensor product of the observables.
pub fn parity_bias<T: Scalar>(
    state: &PureState<T>,
    observables: &[EquatorialObservable<T>],
) -> Result<T> {
    let dist = outcome_distribution(state, observables)?;
    Ok(dist.parity_mass(false) - dist.parity_mass(true))
}

/// Draws one outcome from `dist`.
pub fn sample_one<T: Scalar, R: Rng + ?Sized>(dist: &OutcomeDistribution<T>, rng: &mut R) -> Bits {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    let mut last_supported = 0;
    for (i, &p) in dist.probabilities.iter().enumerate() {
        let p = p.as_f64();
        if p > 0.0 {
            last_supported = i;
        }
        acc += p;
        if u < acc {
            return Bits::from_index(dist.qubits, i as u32);
        }
    }
    // Rounding left `acc` a hair below 1.
    Bits::from_index(dist.qubits, last_supported as u32)
}

/// Outcome counts from `shots` i.i.d. draws; deterministic for a given seed.
pub fn sample_outcomes<T: Scalar>(
    state: &PureState<T>,
    observables: &[EquatorialObservable<T>],
    shots: u64,
    seed: u64,
) -> Result<BTreeMap<Bits, u64>> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let dist = outcome_distribution(state, observables)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        *counts.entry(sample_one(&dist, &mut rng)).or_insert(0) += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    use super::*;

    type Obs = EquatorialObservable<f64>;

    fn bits(s: &str) -> Bits {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn ghz_amplitudes() {
        let g = ghz_state::<f64>();
        assert!((g.amplitude(0).re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert_eq!(g.amplitude(0b010).norm(), 0.0);
        assert!((g.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bell_amplitudes() {
        let b = bell_state::<f64>();
        assert!((b.amplitude(0).re - FRAC_1_SQRT_2).abs() < 1e-12);
        assert_eq!(b.amplitude(0b01).norm(), 0.0);
        assert!((b.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_states() {
        assert_eq!(
            PureState::<f64>::new(4, vec![Complex::new(1.0, 0.0); 16]),
            Err(Error::QubitCount(4))
        );
        assert!(matches!(
            PureState::<f64>::new(1, vec![Complex::new(1.0, 0.0); 2]),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn zero_state_on_equator_is_unbiased() {
        let s = PureState::<f64>::basis(1, 0).unwrap();
        let d = outcome_distribution(&s, &[Obs::x()]).unwrap();
        assert!((d.probability(bits("0")) - 0.5).abs() < 1e-12);
        assert!((d.probability(bits("1")) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn plus_eigenvector_is_declared_zero() {
        // (|0⟩ + e^{iθ}|1⟩)/√2 must give outcome 0 with certainty.
        let theta = 0.3;
        let h = FRAC_1_SQRT_2;
        let s = PureState::new(
            1,
            vec![
                Complex::new(h, 0.0),
                Complex::new(h * f64::cos(theta), h * f64::sin(theta)),
            ],
        )
        .unwrap();
        let d = outcome_distribution(&s, &[Obs::new(theta)]).unwrap();
        assert!((d.probability(bits("0")) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ghz_xxx_and_yyx() {
        let g = ghz_state::<f64>();
        let d = outcome_distribution(&g, &[Obs::x(), Obs::x(), Obs::x()]).unwrap();
        for (outcome, p) in d.iter() {
            let expected = if outcome.parity() { 0.0 } else { 0.25 };
            assert!((p - expected).abs() < 1e-12, "{outcome}: {p}");
        }
        let d = outcome_distribution(&g, &[Obs::y(), Obs::y(), Obs::x()]).unwrap();
        for (outcome, p) in d.iter() {
            let expected = if outcome.parity() { 0.25 } else { 0.0 };
            assert!((p - expected).abs() < 1e-12, "{outcome}: {p}");
        }
    }

    #[test]
    fn ghz_parity_biases() {
        let g = ghz_state::<f64>();
        let xxx = parity_bias(&g, &[Obs::x(), Obs::x(), Obs::x()]).unwrap();
        assert!((xxx - 1.0).abs() < 1e-12);
        let xyy = parity_bias(&g, &[Obs::x(), Obs::y(), Obs::y()]).unwrap();
        assert!((xyy + 1.0).abs() < 1e-12);
    }

    #[test]
    fn observable_count_checked() {
        let g = ghz_state::<f64>();
        assert_eq!(
            parity_bias(&g, &[Obs::x()]),
            Err(Error::ObservableCount {
                expected: 3,
                got: 1
            })
        );
    }

    #[test]
    fn angles_are_reduced() {
        assert!((Obs::new(-FRAC_PI_2).theta() - 3.0 * FRAC_PI_2).abs() < 1e-12);
        assert!((Obs::neg_y().theta() - 3.0 * FRAC_PI_2).abs() < 1e-12);
        assert!((Obs::y().reversed().theta() - Obs::neg_y().theta()).abs() < 1e-12);
        assert!(Obs::new(2.0 * PI).theta().abs() < 1e-12);
    }

    #[test]
    fn single_precision_ghz() {
        let g = ghz_state::<f32>();
        let obs = [EquatorialObservable::<f32>::y(); 3];
        let bias = parity_bias(&g, &obs).unwrap();
        // cos(3π/2) = 0
        assert!(bias.abs() < f32::tolerance());
    }

    #[test]
    fn sampling_respects_support_and_seed() {
        let g = ghz_state::<f64>();
        let obs = [Obs::x(), Obs::x(), Obs::x()];
        let counts = sample_outcomes(&g, &obs, 4096, 11).unwrap();
        assert_eq!(counts.values().sum::<u64>(), 4096);
        assert!(counts.keys().all(|k| !k.parity()));
        assert_eq!(counts, sample_outcomes(&g, &obs, 4096, 11).unwrap());
        assert_eq!(sample_outcomes(&g, &obs, 0, 1), Err(Error::ZeroShots));
    }

    #[test]
    fn sampling_is_roughly_fair() {
        let s = PureState::<f64>::basis(1, 0).unwrap();
        let counts = sample_outcomes(&s, &[Obs::x()], 10_000, 2024).unwrap();
        let zeros = *counts.get(&bits("0")).unwrap_or(&0) as f64;
        assert!((zeros / 10_000.0 - 0.5).abs() < 0.02);
    }
}
