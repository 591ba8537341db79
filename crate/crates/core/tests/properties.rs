use std::f64::consts::TAU;
use std::sync::OnceLock;

use proptest::prelude::*;

mod common;

use ghzlab::boolfn::{Bits, TruthTable};
use ghzlab::bounds::{self, StrategySpace};
use ghzlab::commcomp::{decoding_exists, Sender};
use ghzlab::games::{self, GameId};
use ghzlab::qsim::{self, EquatorialObservable};
use ghzlab::Rational;

fn obs(theta: f64) -> EquatorialObservable<f64> {
    EquatorialObservable::new(theta)
}

fn optimum(game_idx: usize) -> Rational {
    static OPTIMA: OnceLock<Vec<Rational>> = OnceLock::new();
    OPTIMA.get_or_init(|| {
        GameId::ALL
            .iter()
            .map(|&g| bounds::optimal_classical(g).optimum.ratio())
            .collect()
    })[game_idx]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ghz_parity_bias_is_cos_of_angle_sum(a in 0.0..TAU, b in 0.0..TAU, c in 0.0..TAU) {
        let g = qsim::ghz_state::<f64>();
        let bias = qsim::parity_bias(&g, &[obs(a), obs(b), obs(c)]).unwrap();
        prop_assert!((bias - (a + b + c).cos()).abs() < 1e-12);
    }

    #[test]
    fn bell_parity_bias_is_cos_of_angle_sum(a in 0.0..TAU, b in 0.0..TAU) {
        let s = qsim::bell_state::<f64>();
        let bias = qsim::parity_bias(&s, &[obs(a), obs(b)]).unwrap();
        prop_assert!((bias - (a + b).cos()).abs() < 1e-12);
    }

    #[test]
    fn reversing_one_observable_negates_bias(a in 0.0..TAU, b in 0.0..TAU, c in 0.0..TAU, which in 0usize..3) {
        let g = qsim::ghz_state::<f64>();
        let mut o = [obs(a), obs(b), obs(c)];
        let before = qsim::parity_bias(&g, &o).unwrap();
        o[which] = o[which].reversed();
        let after = qsim::parity_bias(&g, &o).unwrap();
        prop_assert!((before + after).abs() < 1e-12);
    }

    #[test]
    fn distributions_are_normalized(
        re in prop::collection::vec(-1.0f64..1.0, 8),
        im in prop::collection::vec(-1.0f64..1.0, 8),
        angles in prop::collection::vec(0.0..TAU, 3),
    ) {
        let norm: f64 = re.iter().zip(&im).map(|(r, i)| r * r + i * i).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        let amps = re.iter().zip(&im).map(|(r, i)| num_complex::Complex::new(r / norm, i / norm)).collect();
        let state = qsim::PureState::new(3, amps).unwrap();
        let d = qsim::outcome_distribution(&state, &angles.iter().map(|&t| obs(t)).collect::<Vec<_>>()).unwrap();
        prop_assert!((d.total() - 1.0).abs() < 1e-12);
        prop_assert!(d.iter().all(|(_, p)| p >= 0.0));
    }

    #[test]
    fn single_precision_follows_the_same_law(a in 0.0f32..std::f32::consts::TAU, b in 0.0f32..std::f32::consts::TAU, c in 0.0f32..std::f32::consts::TAU) {
        let g = qsim::ghz_state::<f32>();
        let o = [EquatorialObservable::new(a), EquatorialObservable::new(b), EquatorialObservable::new(c)];
        let bias = qsim::parity_bias(&g, &o).unwrap();
        prop_assert!((bias - (a + b + c).cos()).abs() < 1e-5);
    }

    #[test]
    fn mixtures_never_beat_the_deterministic_optimum(
        game_idx in 0usize..5,
        picks in prop::collection::vec((any::<u64>(), 1u64..10), 1..5),
    ) {
        let game = GameId::ALL[game_idx];
        let space = StrategySpace::new(game);
        let total: u64 = picks.iter().map(|p| p.1).sum();
        let mixture: Vec<_> = picks
            .iter()
            .map(|&(s, w)| (Rational::new(w, total), space.strategy(s % space.len())))
            .collect();
        let mixed = games::play_mixture(game, &mixture).unwrap();
        let linear: Rational = mixture
            .iter()
            .map(|(w, s)| *w * games::play_classical(game, s).unwrap().ratio())
            .sum();
        prop_assert_eq!(mixed, linear);
        prop_assert!(mixed <= optimum(game_idx));
    }

    #[test]
    fn classical_success_has_promise_denominator(game_idx in 0usize..5, s in any::<u64>()) {
        let game = GameId::ALL[game_idx];
        let space = StrategySpace::new(game);
        let success = games::play_classical(game, &space.strategy(s % space.len())).unwrap();
        prop_assert_eq!(success.total as usize, games::promise_inputs(game).len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn fiber_test_agrees_with_exhaustive_decoder_search(
        world_bits in 2usize..=5,
        view_a in 0u32..32,
        view_b in 0u32..32,
        view_c in 0u32..32,
        enc_a in any::<u64>(),
        enc_b in any::<u64>(),
        cases in prop::collection::vec((0u32..32, any::<bool>()), 0..20),
    ) {
        let full = (1u32 << world_bits) - 1;
        // A view selects a subset of the world bits.
        let pick = move |mask: u32, w: u32| common::pick(world_bits, mask, w);
        let (va, vb, mut vc) = (view_a & full, view_b & full, view_c & full);
        // Keep the decoder domain within 4 bits so the oracle stays small.
        while vc.count_ones() > 2 {
            vc &= vc - 1;
        }
        let ta = TruthTable::new(va.count_ones() as usize, enc_a).unwrap();
        let tb = TruthTable::new(vb.count_ones() as usize, enc_b).unwrap();
        let cases: Vec<(u32, bool)> = cases.into_iter().map(|(w, t)| (w & full, t)).collect();

        let view_a_fn = move |w: &u32| pick(va, *w);
        let view_b_fn = move |w: &u32| pick(vb, *w);
        let view_c_fn = move |w: &u32| pick(vc, *w);
        let senders = [
            Sender { view: &view_a_fn, encoders: &[ta] },
            Sender { view: &view_b_fn, encoders: &[tb] },
        ];
        let fiber = decoding_exists(&cases, &senders, &view_c_fn).unwrap();

        let arity = 2 + vc.count_ones() as usize;
        let keys: Vec<(u32, bool)> = cases
            .iter()
            .map(|&(w, t)| {
                let ma = ta.eval_index(pick(va, w).index()) as u32;
                let mb = tb.eval_index(pick(vb, w).index()) as u32;
                let key = (ma << (arity - 1)) | (mb << (arity - 2)) | pick(vc, w).index();
                (key, t)
            })
            .collect();
        prop_assert_eq!(fiber.is_some(), common::brute_force_decoder(&keys, arity));
        if let Some(decoder) = fiber {
            for &(k, goal) in &keys {
                prop_assert_eq!(decoder.evaluate(Bits::from_index(arity, k)), goal);
            }
        }
    }
}

#[test]
fn certificates_do_not_depend_on_worker_count() {
    for game in GameId::ALL {
        let one = bounds::optimal_classical_with(game, 1);
        for workers in [2, 3, 4, 8] {
            assert_eq!(
                one,
                bounds::optimal_classical_with(game, workers),
                "{game} x{workers}"
            );
        }
    }
}
