mod common;

use brushgame_core::brush_number::brush_number;
use brushgame_core::families::{comb_union_seeded, complete, cycle, path, star};
use brushgame_core::game::{GameState, Player};
use brushgame_core::solver::{game_value, optimal_move, SolveError, Solver, SymmetryMode};
use brushgame_core::Graph;
use common::*;
use proptest::prelude::*;

const BUDGET: u64 = 50_000_000;

fn value(g: &Graph, init: &[u64], mover: Player) -> u32 {
    game_value(g, init, mover, SymmetryMode::None, BUDGET).unwrap().value.unwrap()
}

fn empty(g: &Graph) -> Vec<u64> {
    vec![0; g.vertex_count()]
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_filter("connected", |g| g.is_connected())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn agrees_with_plain_minimax(g in arb_graph(5)) {
        let init = empty(&g);
        prop_assert_eq!(value(&g, &init, Player::Min), plain_game_value(&g, &init, true));
        prop_assert_eq!(value(&g, &init, Player::Max), plain_game_value(&g, &init, false));
    }

    #[test]
    fn seeded_positions_agree_with_plain_minimax((g, init) in arb_graph_config(5, 3)) {
        prop_assert_eq!(value(&g, &init, Player::Min), plain_game_value(&g, &init, true));
    }

    #[test]
    fn relabeling_keeps_the_value(g in arb_graph(7), perm in Just((0..7).collect::<Vec<usize>>()).prop_shuffle()) {
        let n = g.vertex_count();
        let perm: Vec<usize> = perm.into_iter().filter(|&v| v < n).collect();
        let h = g.relabel(&perm);
        for mover in [Player::Min, Player::Max] {
            prop_assert_eq!(value(&g, &empty(&g), mover), value(&h, &empty(&h), mover));
        }
    }

    #[test]
    fn first_mover_changes_at_most_one_turn(g in connected_graph(7)) {
        let min = value(&g, &empty(&g), Player::Min);
        let max = value(&g, &empty(&g), Player::Max);
        prop_assert!(min.abs_diff(max) <= 1);
        let b = brush_number(&g, u64::MAX).unwrap().value as u32;
        prop_assert!(b <= min && min <= (2 * b).saturating_sub(1).max(b));
        prop_assert!(b <= max && max <= 2 * b);
    }

    #[test]
    fn extra_brushes_shorten_by_bounded_amounts(
        (g, low) in arb_graph_config(6, 2),
        extra in proptest::collection::vec(0u64..2, 6),
    ) {
        let high: Vec<u64> = low.iter().zip(&extra).map(|(a, b)| a + b).collect();
        let added: u64 = high.iter().zip(&low).map(|(h, l)| h - l).sum();
        for mover in [Player::Min, Player::Max] {
            let vh = value(&g, &high, mover);
            let vl = value(&g, &low, mover);
            prop_assert!(vh <= vl);
            prop_assert!(vl as u64 <= vh as u64 + 2 * added);
        }
    }

    #[test]
    fn optimal_play_realizes_the_value(g in arb_graph(7)) {
        let v = value(&g, &empty(&g), Player::Min);
        let mut solver = Solver::new(&g, SymmetryMode::None, BUDGET).unwrap();
        let mut game = GameState::new(&g, &empty(&g), Player::Min);
        while !game.is_over() {
            let (m, _) = solver.best_move(game.brush(), game.mover()).unwrap();
            game.play(m).unwrap();
        }
        prop_assert_eq!(game.turns_elapsed() as u32, v);
    }
}

#[test]
fn small_families() {
    let p3 = path(3).unwrap();
    assert_eq!(value(&p3, &empty(&p3), Player::Min), 1);
    assert_eq!(value(&p3, &empty(&p3), Player::Max), 2);
    for n in 3..=6 {
        let c = cycle(n).unwrap();
        assert_eq!(value(&c, &empty(&c), Player::Min), 3);
        assert_eq!(value(&c, &empty(&c), Player::Max), 2);
    }
    for k in 1..=3 {
        let s = star(3 * k - 1).unwrap();
        assert_eq!(value(&s, &empty(&s), Player::Min), 2 * k as u32 - 1);
        assert_eq!(value(&s, &empty(&s), Player::Max), 2 * k as u32);
    }
    assert_eq!(value(&Graph::empty(1), &[0], Player::Min), 0);
}

#[test]
fn k4_against_plain_minimax() {
    let k4 = complete(4).unwrap();
    assert_eq!(plain_game_value(&k4, &[0; 4], true), 5);
    assert_eq!(value(&k4, &[0; 4], Player::Min), 5);
}

#[test]
fn seeded_combs() {
    for sizes in [&[2][..], &[3], &[2, 2], &[2, 3], &[3, 3]] {
        let inst = comb_union_seeded(sizes).unwrap();
        let expect = sizes.iter().sum::<usize>() - sizes.len();
        for mover in [Player::Min, Player::Max] {
            assert_eq!(value(&inst.graph, &inst.init, mover), expect as u32, "{}", inst.label);
        }
    }
}

#[test]
fn principal_moves() {
    let p3 = path(3).unwrap();
    assert_eq!(optimal_move(&p3, &[0; 3], Player::Max, BUDGET), Ok(1));
    let k2 = complete(2).unwrap();
    assert_eq!(optimal_move(&k2, &[0; 2], Player::Min, BUDGET), Ok(0));
    assert_eq!(optimal_move(&p3, &[1, 0, 0], Player::Min, BUDGET), Err(SolveError::GameOver));
}

#[test]
fn sorted_mode_on_complete_graphs() {
    for n in 3..=6 {
        let k = complete(n).unwrap();
        let plain = game_value(&k, &vec![0; n], Player::Min, SymmetryMode::None, BUDGET).unwrap();
        let sorted = game_value(&k, &vec![0; n], Player::Min, SymmetryMode::Sorted, BUDGET).unwrap();
        assert_eq!(plain.value, sorted.value);
        if n >= 5 {
            assert!(sorted.positions_explored < plain.positions_explored);
        }
    }
    assert_eq!(
        game_value(&path(4).unwrap(), &[0; 4], Player::Min, SymmetryMode::Sorted, BUDGET),
        Err(SolveError::NoSymmetry)
    );
}

#[test]
fn budget_is_reported() {
    let k6 = complete(6).unwrap();
    let r = game_value(&k6, &[0; 6], Player::Min, SymmetryMode::None, 10).unwrap();
    assert!(r.budget_hit);
    assert_eq!(r.value, None);
}
