use brushgame_core::families::complete;
use brushgame_core::game::Player;
use brushgame_core::ode::{ode_constants, ode_f, ode_fprime, ode_rhs};
use brushgame_core::solver::{game_value, SymmetryMode};
use brushgame_core::strategy::{run_match_with_rate, Balanced, Greedy};
use brushgame_core::triangle::{
    count_in_brushes, kn_full_cross_check, kn_game_length, simulate_fractional_kn, simulate_triangle,
    ColumnStrategy, TriangleState,
};
use brushgame_core::FractionParam;
use proptest::prelude::*;

#[test]
fn column_game_matches_exact_values() {
    for n in 2..=6 {
        let k = complete(n).unwrap();
        let r = game_value(&k, &vec![0; n], Player::Min, SymmetryMode::Sorted, 50_000_000).unwrap();
        assert_eq!(kn_game_length(n), r.value.unwrap() as u64, "K_{n}");
    }
    assert_eq!(kn_game_length(2), 1);
    assert_eq!(kn_game_length(3), 3);
    assert_eq!(kn_game_length(4), 5);
}

#[test]
fn column_game_matches_full_engine() {
    for n in (1..=60).chain([100, 200]) {
        assert_eq!(kn_full_cross_check(n), kn_game_length(n), "K_{n}");
    }
}

#[test]
fn fractional_column_game_matches_full_engine() {
    for (a, b) in [(1, 2), (1, 3), (2, 3), (1, 4), (3, 5)] {
        let p = FractionParam::new(a, b).unwrap();
        for n in 1..=40 {
            let g = complete(n).unwrap();
            let full = run_match_with_rate(&g, p, &vec![0; n], &mut Greedy, &mut Balanced, Player::Min, 0).unwrap();
            assert_eq!(simulate_fractional_kn(n, p), full.length as u64, "K_{n} at {p}");
        }
    }
}

#[test]
fn length_tracks_n_squared_over_e() {
    let n = 5000;
    let ratio = kn_game_length(n) as f64 / (n as f64 * n as f64 / std::f64::consts::E);
    assert!((ratio - 1.0).abs() <= 0.02, "{ratio}");
}

#[test]
fn an_opening_brush_can_shorten_play() {
    use ColumnStrategy::*;
    // Max's opening brush lands in column 1, which Min then tops up
    assert_eq!(simulate_triangle(3, 2, 0, Greedy, Balanced), 3);
    assert_eq!(simulate_triangle(3, 2, 1, Greedy, Balanced), 2);
    assert_eq!(simulate_triangle(28, 3, 28, Greedy, Balanced), 31);
    assert_eq!(simulate_triangle(28, 3, 29, Greedy, Balanced), 30);
}

#[test]
fn ode_closed_form() {
    let (t0, f0) = ode_constants();
    assert_eq!(ode_f(0.0), Ok(0.0));
    assert!((f0 - (-1.0f64).exp()).abs() < 1e-12);
    assert!((ode_f(t0).unwrap() - f0).abs() < 1e-12);
    assert!(ode_fprime(t0).unwrap().abs() < 1e-9);
    assert!((ode_f(0.5).unwrap() - std::f64::consts::LN_2 / 2.0).abs() < 1e-12);
    for i in 0..=900 {
        let t = i as f64 * 1e-3;
        let f = ode_f(t).unwrap();
        assert!((ode_fprime(t).unwrap() - ode_rhs(t, f)).abs() < 1e-9, "t = {t}");
    }
    assert!(ode_f(1.0).is_err());
}

proptest! {
    #[test]
    fn in_brushes_are_necessary(n in 1usize..400) {
        prop_assert!(count_in_brushes(n as u64) <= kn_game_length(n));
    }

    #[test]
    fn an_extra_opening_turn_moves_length_by_at_most_one(w in 1usize..40, h in 0usize..40, t in 0u64..50) {
        use ColumnStrategy::*;
        let a = simulate_triangle(w, h, t, Greedy, Balanced);
        let b = simulate_triangle(w, h, t + 1, Greedy, Balanced);
        prop_assert!(a.abs_diff(b) <= 1, "{} then {}", a, b);
    }

    #[test]
    fn board_invariants_hold(w in 1usize..30, h in 0usize..30, t in 0u64..10, den in 1u64..5) {
        let p = FractionParam::new(1, den).unwrap();
        let mut s = TriangleState::new(w, h, t, p, Player::Min);
        prop_assert!(s.check_invariants());
        while !s.is_over() {
            let strategy = if s.mover() == Player::Min { ColumnStrategy::Greedy } else { ColumnStrategy::Balanced };
            s.place(s.choose(strategy).unwrap()).unwrap();
            prop_assert!(s.check_invariants());
        }
    }
}
