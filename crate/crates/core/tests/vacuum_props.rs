use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use paraferm::superalgebra::{build_osp, LieSuperalgebra};
use paraferm::vacuum::{init_space, Mode, PbwMonomial, State, VacuumSpace};
use paraferm::Q;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Word = Vec<(usize, i32)>;

const CUTOFF: u32 = 6;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn spaces() -> &'static [VacuumSpace; 2] {
    static S: OnceLock<[VacuumSpace; 2]> = OnceLock::new();
    S.get_or_init(|| {
        [init_space(build_osp(1).unwrap(), 1, CUTOFF).unwrap(), init_space(build_osp(2).unwrap(), 2, CUTOFF).unwrap()]
    })
}

fn ordered(alg: &LieSuperalgebra, (a, m): (usize, i32), (b, n): (usize, i32)) -> bool {
    m < 0 && n < 0 && (m < n || (m == n && (a < b || (a == b && !alg.parity(a).is_odd()))))
}

/// Rewrites words into normal order by random adjacent moves until nothing
/// is left to rewrite.
fn rewrite_oracle(alg: &LieSuperalgebra, level: i64, word: &Word, rng: &mut ChaCha8Rng) -> HashMap<Word, Q> {
    let mut done: HashMap<Word, Q> = HashMap::new();
    let mut todo: Vec<(Word, Q)> = vec![(word.clone(), q(1))];
    while let Some((w, c)) = todo.pop() {
        if c.is_zero() {
            continue;
        }
        if w.last().is_some_and(|&(_, n)| n >= 0) {
            continue;
        }
        let spots: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&i| !ordered(alg, w[i], w[i + 1])).collect();
        let Some(&i) = spots.choose(rng) else {
            *done.entry(w).or_insert_with(Q::zero) += c;
            continue;
        };
        let ((a, m), (b, n)) = (w[i], w[i + 1]);
        let with = |mid: &[(usize, i32)]| -> Word { w[..i].iter().chain(mid).chain(&w[i + 2..]).copied().collect() };
        if a == b && m == n && m < 0 {
            // odd square: a(m)a(m) = ½[a,a](2m)
            for (x, y) in alg.bracket_basis(a, a) {
                todo.push((with(&[(*x, 2 * m)]), &c * y / q(2)));
            }
            continue;
        }
        let sign = alg.parity(a).koszul(alg.parity(b));
        todo.push((with(&[(b, n), (a, m)]), &c * q(sign as i64)));
        for (x, y) in alg.bracket_basis(a, b) {
            todo.push((with(&[(*x, m + n)]), &c * y));
        }
        if m + n == 0 {
            let f = alg.form_basis(a, b);
            todo.push((with(&[]), &c * f * q(m as i64 * level)));
        }
    }
    done.retain(|_, c| !c.is_zero());
    done
}

fn to_state(alg: &LieSuperalgebra, terms: HashMap<Word, Q>) -> State {
    let mut s = State::zero();
    for (w, c) in terms {
        let modes = w.iter().map(|&(b, n)| Mode::new(b, (-n) as u32)).collect();
        let mono = PbwMonomial::from_modes(alg, modes).expect("normal-ordered word is a PBW monomial");
        s.add_term(mono, c);
    }
    s
}

/// Every suffix (the part applied first) stays within the cutoff.
fn fits(word: &Word, cutoff: u32) -> bool {
    let mut w = 0i64;
    word.iter().rev().all(|&(_, n)| {
        w -= n as i64;
        w <= cutoff as i64
    })
}

fn word(dim: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..dim, -3i32..=2), 1..=max_len)
}

fn negative_word(dim: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..dim, -2i32..=-1), 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn straightening_matches_random_rewriting(which in 0usize..2, w in word(14, 5), seed: u64) {
        let s = &spaces()[which];
        let alg = s.algebra();
        let w: Word = w.into_iter().map(|(b, n)| (b % alg.dim(), n)).collect();
        prop_assume!(fits(&w, CUTOFF));
        let got = s.straighten(&w);
        prop_assert!(!got.is_truncated());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let expect = to_state(alg, rewrite_oracle(alg, s.level(), &w, &mut rng));
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn commutator_consistency(which in 0usize..2, w in word(14, 4), pos in 0usize..3) {
        let s = &spaces()[which];
        let alg = s.algebra();
        let w: Word = w.into_iter().map(|(b, n)| (b % alg.dim(), n)).collect();
        prop_assume!(w.len() >= 2);
        let i = pos % (w.len() - 1);
        let ((a, m), (b, n)) = (w[i], w[i + 1]);
        let with = |mid: &[(usize, i32)]| -> Word { w[..i].iter().chain(mid).chain(&w[i + 2..]).copied().collect() };
        let swapped = with(&[(b, n), (a, m)]);
        prop_assume!(fits(&w, CUTOFF) && fits(&swapped, CUTOFF));
        let sign = q(alg.parity(a).koszul(alg.parity(b)) as i64);
        let mut rhs = s.straighten(&swapped).scaled(&sign);
        for (x, y) in alg.bracket_basis(a, b) {
            rhs.add_scaled(&s.straighten(&with(&[(*x, m + n)])), y);
        }
        if m + n == 0 {
            rhs.add_scaled(&s.straighten(&with(&[])), &(alg.form_basis(a, b) * q(m as i64 * s.level())));
        }
        prop_assert_eq!(s.straighten(&w), rhs);
    }

    #[test]
    fn translation_covariance(u in negative_word(5, 2), v in negative_word(5, 2), m in -2i32..=3) {
        let s = &spaces()[0];
        let (u, v) = (s.straighten(&u), s.straighten(&v));
        prop_assume!(!u.is_zero() && !v.is_zero());
        let du = s.virasoro_mode(-1, &u).unwrap();
        let lhs = s.composite_mode(&du, m, &v);
        let rhs = s.composite_mode(&u, m - 1, &v).scaled(&q(-(m as i64)));
        prop_assume!(!lhs.is_truncated() && !rhs.is_truncated());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncation_is_sound(w in word(5, 5)) {
        let small = init_space(build_osp(1).unwrap(), 1, 3).unwrap();
        let big = &spaces()[0];
        prop_assume!(fits(&w, CUTOFF));
        let a = small.straighten(&w);
        let b = big.straighten(&w);
        if a.is_truncated() {
            prop_assert!(!fits(&w, 3));
        } else {
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn l0_is_the_weight() {
    for (n, k, top) in [(1, 1, 4), (1, 2, 3), (2, 1, 3)] {
        let s = init_space(build_osp(n).unwrap(), k, top).unwrap();
        for w in 0..=top {
            for c in s.blocks_at(w).unwrap().keys() {
                for m in s.enumerate_basis(w, c).unwrap() {
                    let v = State::monomial(m);
                    assert_eq!(s.virasoro_mode(0, &v).unwrap(), v.scaled(&q(w as i64)), "osp(1|{}) k={k}", 2 * n);
                }
            }
        }
    }
}

#[test]
fn vacuum_axioms() {
    let s = &spaces()[1];
    let one = State::vacuum();
    let v = s.straighten(&[(3, -2), (7, -1)]);
    // 𝟙_{−1} = id, v_{−1}𝟙 = v, and v_m𝟙 = 0 for m ≥ 0
    assert_eq!(s.composite_mode(&one, -1, &v), v);
    assert_eq!(s.composite_mode(&v, -1, &one), v);
    for m in 0..4 {
        assert!(s.composite_mode(&v, m, &one).is_zero());
        assert!(s.composite_mode(&one, m, &v).is_zero());
    }
}
