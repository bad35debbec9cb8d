use std::collections::BTreeSet;

use queencover_core::constructions::knight_square;
use queencover_core::coverage::{attack_field, cover_count, is_nonattacking};
use queencover_core::search::{
    border_certificate, exhaustive_optimal, loss_minimal_patterns, windowed_optimal, SearchParams, DEFAULT_BUDGET,
};
use queencover_core::{Board, Configuration, Error, Parity, Pattern, Square, Transform};

fn sq(x: i32, y: i32) -> Square {
    Square::new(x, y)
}

/// Plain subset enumeration with cover recomputed from scratch.
fn brute_force(q: usize, n: u32, nonattacking: bool) -> (u32, BTreeSet<Configuration>) {
    let b = Board::new(n).unwrap();
    let squares: Vec<Square> = b.squares().collect();
    let mut best = 0;
    let mut all = BTreeSet::new();
    let mut idx: Vec<usize> = (0..q).collect();
    loop {
        let c = Configuration::new(idx.iter().map(|&i| squares[i])).unwrap();
        if !nonattacking || is_nonattacking(&c) {
            let v = cover_count(&c, b);
            if v > best {
                best = v;
                all.clear();
            }
            if v == best {
                all.insert(c);
            }
        }
        // next combination
        let mut i = q;
        loop {
            if i == 0 {
                return (best, all);
            }
            i -= 1;
            if idx[i] < squares.len() - q + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..q {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[test]
fn exhaustive_matches_brute_force() {
    for n in 2..=7 {
        for q in 1..=3usize {
            if q > (n * n) as usize {
                continue;
            }
            let (best, all) = brute_force(q, n, false);
            let set = exhaustive_optimal(&SearchParams::exhaustive(q as u32, n), DEFAULT_BUDGET).unwrap();
            assert_eq!(set.max_cover, best, "q={q} n={n}");
            assert_eq!(set.configurations.iter().cloned().collect::<BTreeSet<_>>(), all, "q={q} n={n}");
        }
    }
}

#[test]
fn nonattacking_exhaustive_matches_brute_force() {
    for n in 3..=7 {
        for q in 1..=3usize {
            let (best, all) = brute_force(q, n, true);
            if all.is_empty() {
                continue;
            }
            let mut p = SearchParams::exhaustive(q as u32, n);
            p.require_nonattacking = true;
            let set = exhaustive_optimal(&p, DEFAULT_BUDGET).unwrap();
            assert_eq!(set.max_cover, best, "q={q} n={n}");
            assert_eq!(set.configurations.iter().cloned().collect::<BTreeSet<_>>(), all);
        }
    }
}

#[test]
fn full_window_agrees_with_exhaustive() {
    for q in 1..=3 {
        for n in (q + 2).max(4)..=12 {
            let mut ex = SearchParams::exhaustive(q, n);
            ex.require_nonattacking = true;
            let ex_set = exhaustive_optimal(&ex, DEFAULT_BUDGET).unwrap();
            let win = windowed_optimal(&SearchParams::windowed(q, n, Some(n))).unwrap();
            assert_eq!(win.max_cover, ex_set.max_cover, "q={q} n={n}");
            assert_eq!(win.configurations, ex_set.configurations, "q={q} n={n}");
            assert_eq!(win.classes, ex_set.classes);

            let free = exhaustive_optimal(&SearchParams::exhaustive(q, n), DEFAULT_BUDGET).unwrap();
            if free.all_nonattacking() {
                assert_eq!(free.configurations, win.configurations, "q={q} n={n}");
            } else {
                assert!(free.max_cover >= win.max_cover);
            }
        }
    }
}

#[test]
fn loss_minimal_patterns_equal_windowed_optima() {
    for q in 2..=6u32 {
        for n in [3 * q + 4, 3 * q + 5] {
            let win = windowed_optimal(&SearchParams::windowed(q, n, None)).unwrap();
            let report = win.window.unwrap();
            assert!(!report.touches_boundary, "q={q} n={n}");
            let b = Board::new(n).unwrap();
            let radius = if b.is_even() { (report.used - 2) / 2 } else { (report.used - 1) / 2 };
            let parity = if b.is_even() { Parity::Even } else { Parity::Odd };
            let lm = loss_minimal_patterns(q, radius, parity, DEFAULT_BUDGET).unwrap();
            assert_eq!(lm.configurations, win.configurations, "q={q} n={n}");
            let linear = (4 * n as u64 - 3) * q as u64;
            assert_eq!(linear - lm.min_loss, win.max_cover as u64, "q={q} n={n}");
        }
    }
}

#[test]
fn optimal_sets_are_closed_under_d4() {
    let cases = [(2, 10, false), (3, 13, false), (4, 16, false), (5, 17, true), (6, 22, true)];
    for (q, n, windowed) in cases {
        let p = if windowed { SearchParams::windowed(q, n, None) } else { SearchParams::exhaustive(q, n) };
        let set = if windowed { windowed_optimal(&p) } else { exhaustive_optimal(&p, DEFAULT_BUDGET) }.unwrap();
        let b = Board::new(n).unwrap();
        let members: BTreeSet<&Configuration> = set.configurations.iter().collect();
        for c in &set.configurations {
            assert_eq!(cover_count(c, b), set.max_cover);
            for t in Transform::ALL {
                assert!(members.contains(&c.transformed(t, b)), "q={q} n={n} {c} {t:?}");
            }
        }
        let total: u32 = set.classes.iter().map(|k| k.orbit_size).sum();
        assert_eq!(total as usize, set.configurations.len());
        assert!(set.classes.iter().all(|k| k.orbit_size * k.stabilizer_order == 8));
        set.verify().unwrap();
    }
}

#[test]
fn six_queen_optima_need_a_six_by_seven_box() {
    for n in [21, 22] {
        let set = windowed_optimal(&SearchParams::windowed(6, n, None)).unwrap();
        for c in &set.configurations {
            let p = Pattern::from_configuration(c);
            assert!(!p.fits(6, 6), "{c}");
            assert!(p.fits(6, 7) || p.fits(7, 6), "{c}");
        }
    }
}

#[test]
fn single_queen_on_odd_board() {
    let set = exhaustive_optimal(&SearchParams::exhaustive(1, 9), DEFAULT_BUDGET).unwrap();
    assert_eq!(set.max_cover, 33);
    assert_eq!(set.classes.len(), 1);
    assert_eq!(set.classes[0].representative.queens(), &[sq(0, 0)]);
    assert_eq!(set.classes[0].orbit_size, 1);
}

#[test]
fn budget_refusal_carries_estimate() {
    match exhaustive_optimal(&SearchParams::exhaustive(6, 30), 1_000) {
        Err(Error::BudgetExceeded { estimate, budget }) => {
            assert_eq!(budget, 1_000);
            assert!(estimate > 1_000_000_000);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn window_larger_than_board_is_rejected() {
    assert!(matches!(windowed_optimal(&SearchParams::windowed(3, 8, Some(9))), Err(Error::WindowTooLarge { .. })));
}

#[test]
fn border_certificates() {
    let b11 = Board::new(11).unwrap();
    let knight = Configuration::new([sq(-1, 0), sq(0, 2), sq(1, -1), sq(2, 1)]).unwrap();
    assert_eq!(Pattern::from_configuration(&knight), knight_square());
    assert!(border_certificate(&knight, b11).unwrap());

    // a row and a diagonal meeting on the ring just outside B_5
    let b5 = Board::new(5).unwrap();
    let pair = Configuration::new([sq(2, 0), sq(0, 1)]).unwrap();
    assert!(is_nonattacking(&pair));
    assert_eq!(attack_field(&pair, Board::new(7).unwrap()).get(sq(3, 1)), Some(2));
    assert!(!border_certificate(&pair, b5).unwrap());

    for s in b11.squares() {
        assert!(border_certificate(&Configuration::new([s]).unwrap(), b11).unwrap());
    }

    let attacking = Configuration::new([sq(0, 0), sq(1, 1)]).unwrap();
    assert!(border_certificate(&attacking, b11).is_err());
}
