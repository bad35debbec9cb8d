use proptest::prelude::*;
use queencover_core::coverage::{attack_field, attacks, cover_count, is_nonattacking, single_cover};
use queencover_core::loss::{
    cenloss, crossing_multiplicities, crossings_on_board, eta, gamma, inloss, inloss_stable, noncongruent_pairs,
    predicted_cover, quarter_squares, stable_board_side,
};
use queencover_core::{Board, Configuration, Square, Transform};

fn sq(x: i32, y: i32) -> Square {
    Square::new(x, y)
}

/// Every `k`-subset of `pool`, in lexicographic index order.
fn subsets(pool: &[Square], k: usize, mut f: impl FnMut(&[Square])) {
    fn rec(pool: &[Square], k: usize, start: usize, cur: &mut Vec<Square>, f: &mut dyn FnMut(&[Square])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            rec(pool, k, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(pool, k, 0, &mut Vec::new(), &mut f);
}

fn window(r: i32) -> Vec<Square> {
    (-r..=r).flat_map(|x| (-r..=r).map(move |y| sq(x, y))).collect()
}

fn nonattacking_in(r: i32, max_q: usize) -> impl Strategy<Value = Configuration> {
    prop::collection::vec((-r..=r, -r..=r), 1..=max_q).prop_filter_map("attacking or duplicate", |v| {
        let c = Configuration::new(v.into_iter().map(Square::from)).ok()?;
        is_nonattacking(&c).then_some(c)
    })
}

fn any_config(r: i32, max_q: usize) -> impl Strategy<Value = Configuration> {
    prop::collection::vec((-r..=r, -r..=r), 0..=max_q)
        .prop_filter_map("duplicate", |v| Configuration::new(v.into_iter().map(Square::from)).ok())
}

fn stable_side(c: &Configuration) -> Board {
    // centered coordinates: grow an odd board until every crossing is on it
    let mut n = 2 * c.radius(Board::new(1).unwrap()) + 1;
    loop {
        let b = Board::new(n).unwrap();
        if crossings_on_board(c, b) {
            return b;
        }
        n += 2;
    }
}

#[test]
fn gamma_eta_identity_exhaustive_small() {
    let pool = window(2);
    let mut checked = 0;
    for q in 1..=3 {
        subsets(&pool, q, |s| {
            let c = Configuration::new(s.iter().copied()).unwrap();
            if !is_nonattacking(&c) {
                return;
            }
            let b = stable_side(&c);
            let (e, o) = c.parity_counts();
            assert_eq!(inloss(&c, b) + eta(&c, b), gamma(e, o), "{c}");
            checked += 1;
        });
    }
    assert!(checked > 100);
}

#[test]
fn pair_law_within_radius_8() {
    let p = sq(0, 0);
    for s in window(8) {
        if s == p || attacks(p, s) {
            continue;
        }
        let c = Configuration::new([p, s]).unwrap();
        let expect = if (s.x - s.y).rem_euclid(2) == 0 { 12 } else { 10 };
        assert_eq!(inloss_stable(&c), Ok(expect), "{c}");
        let crossings = crossing_multiplicities(&c);
        assert_eq!(crossings.len() as u64, expect);
    }
}

#[test]
fn quarter_squares_maximum_on_5x5() {
    let pool = window(2);
    for q in 1..=6u32 {
        let mut best = None;
        subsets(&pool, q as usize, |s| {
            let c = Configuration::new(s.iter().copied()).unwrap();
            if is_nonattacking(&c) {
                let v = noncongruent_pairs(&c);
                assert!(v <= quarter_squares(q));
                best = best.max(Some(v));
            }
        });
        if q <= 5 {
            assert_eq!(best, Some(quarter_squares(q)), "q={q}");
        } else {
            assert_eq!(best, None);
        }
        let argmin: Vec<u32> =
            (0..=q).filter(|&e| gamma(e, q - e) == (0..=q).map(|e| gamma(e, q - e)).min().unwrap()).collect();
        assert!(argmin.iter().all(|&e| e.abs_diff(q - e) <= 1), "q={q}");
    }
}

#[test]
fn single_cover_is_4n_minus_3_minus_cenloss() {
    for n in 1..=30 {
        let b = Board::new(n).unwrap();
        for s in b.squares() {
            let c = Configuration::new([s]).unwrap();
            assert_eq!(single_cover(b, s) as u64, (4 * n as u64 - 3) - cenloss(&c, b).unwrap());
        }
    }
}

#[test]
fn stable_side_is_stable() {
    for r in 1..=3 {
        subsets(&window(r), 2, |s| {
            let c = Configuration::new(s.iter().copied()).unwrap();
            if is_nonattacking(&c) {
                let n = stable_board_side(&c);
                let b = Board::new(n).unwrap();
                let (lo, hi) = c.bounding_box().unwrap();
                let centered = c.translated(-(lo.x + hi.x).div_euclid(2), -(lo.y + hi.y).div_euclid(2));
                assert!(crossings_on_board(&centered, b), "{c} n={n}");
            }
        });
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn gamma_eta_identity_random(c in nonattacking_in(6, 8)) {
        let b = stable_side(&c);
        let (e, o) = c.parity_counts();
        prop_assert_eq!(inloss(&c, b) + eta(&c, b), gamma(e, o));
        prop_assert_eq!(inloss_stable(&c).unwrap(), inloss(&c, b));
    }

    #[test]
    fn cover_equals_linear_term_minus_loss(c in nonattacking_in(5, 7), extra in 0u32..12) {
        let base = stable_side(&c).side();
        let n = base + extra;
        let b = Board::new(n).unwrap();
        prop_assume!(c.is_feasible(b) && crossings_on_board(&c, b));
        let cover = cover_count(&c, b) as u64;
        let loss = inloss(&c, b) + cenloss(&c, b).unwrap();
        prop_assert_eq!(cover, (4 * n as u64 - 3) * c.len() as u64 - loss);
        prop_assert_eq!(predicted_cover(&c, b).unwrap(), cover);
    }

    #[test]
    fn cover_is_d4_invariant(c in any_config(7, 9), n in 1u32..16) {
        let b = Board::new(n).unwrap();
        let c = Configuration::new(c.queens().iter().copied().filter(|&s| b.contains(s))).unwrap();
        let cover = cover_count(&c, b);
        let hist = attack_field(&c, b).histogram();
        for t in Transform::ALL {
            let img = c.transformed(t, b);
            prop_assert_eq!(cover_count(&img, b), cover);
            prop_assert_eq!(attack_field(&img, b).histogram(), hist.clone());
        }
    }

    #[test]
    fn attacking_number_at_most_four(c in nonattacking_in(8, 10), n in 5u32..30) {
        let b = Board::new(n).unwrap();
        prop_assert!(attack_field(&c, b).max() <= 4);
    }

    #[test]
    fn crossings_match_attack_field(c in nonattacking_in(5, 6)) {
        let b = stable_side(&c);
        let field = attack_field(&c, b);
        let crossings = crossing_multiplicities(&c);
        for (s, a) in field.iter() {
            let expect = if a >= 2 { a as u32 } else { 0 };
            prop_assert_eq!(crossings.get(&s).copied().unwrap_or(0), expect, "{}", s);
        }
        prop_assert!(crossings.keys().all(|&s| b.contains(s)));
    }

    #[test]
    fn cover_matches_definition(c in any_config(6, 6), n in 1u32..12) {
        let b = Board::new(n).unwrap();
        let brute = b
            .squares()
            .filter(|&s| c.contains(s) || c.queens().iter().any(|&q| attacks(q, s)))
            .count() as u32;
        prop_assert_eq!(cover_count(&c, b), brute);
    }
}
