mod common;

use common::{compositions, lim};
use proptest::prelude::*;
use tutteframe::arith::{binom, falling, Int};
use tutteframe::bitseq::{
    dominates, enumerate_filter, norm, norm_closed, shift_vector, BitSequence, Composition,
    SliceConstraint,
};

fn composition_strategy(max_n: usize) -> impl Strategy<Value = Composition> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, r)| {
            let all = Composition::all(n, r);
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
}

#[test]
fn bits_and_compositions_are_inverse() {
    for n in 0..=12 {
        for r in 0..=n {
            for b in BitSequence::all(n, r) {
                let a = Composition::from_bits(&b);
                assert_eq!(a.to_bits(), b);
                assert_eq!((a.n(), a.r()), (n, r));
                assert_eq!(a.to_string().parse::<Composition>().unwrap(), a);
            }
        }
    }
}

#[test]
fn filter_matches_dominance_scan() {
    for a in compositions(10) {
        let base = a.to_bits();
        let filter = enumerate_filter(&a, &lim()).unwrap();
        let scan: Vec<BitSequence> = BitSequence::all(a.n(), a.r())
            .into_iter()
            .filter(|b| dominates(b, &base).unwrap())
            .collect();
        assert_eq!(filter.len(), scan.len(), "{a}");
        for (b, s) in &filter {
            assert!(scan.contains(b));
            assert_eq!(shift_vector(b, &a).unwrap().as_ref(), Some(s));
        }
        let shifts: Vec<_> = filter.iter().map(|(_, s)| s.0.clone()).collect();
        let mut sorted = shifts.clone();
        sorted.sort();
        assert_eq!(shifts, sorted, "{a}");
    }
}

#[test]
fn closed_norm_matches_enumeration() {
    for a in compositions(10) {
        assert_eq!(norm_closed(&a), norm(&a, &SliceConstraint::none(), &lim()).unwrap(), "{a}");
    }
}

#[test]
fn slice_norm_examples() {
    let a: Composition = "0,1,1,4,2,4".parse().unwrap();
    let n = |c: &str| norm(&a, &c.parse().unwrap(), &lim()).unwrap();
    assert_eq!(norm_closed(&a), Int::from(420));
    assert_eq!(n("s5=1"), Int::from(40));
    assert_eq!(n("s5<=2"), Int::from(140));
    assert_eq!(n("s4=0"), Int::from(5));
}

fn normrecurse_rhs(a: &Composition) -> Int {
    let p = a.parts();
    (0..p[1])
        .map(|i| {
            let mut rest = vec![0, p[2] + i];
            rest.extend_from_slice(&p[3..]);
            binom((p[2] + i) as i64 - 1, i as i64) * norm_closed(&Composition::new(rest).unwrap())
        })
        .sum()
}

#[test]
fn norm_recursion() {
    for a in compositions(10).into_iter().filter(|a| a.a(0) == 0 && a.r() >= 2) {
        assert_eq!(norm_closed(&a), normrecurse_rhs(&a), "{a}");
    }
}

#[test]
fn slice_factorization_and_binomial_shift() {
    for a in compositions(10).into_iter().filter(|a| a.a(0) == 0 && a.r() >= 2) {
        let p = a.parts();
        let r = a.r();
        for k in 1..r {
            let xi_k: usize = p[1..=k].iter().sum();
            let prefix = Composition::new(p[..=k + 1].to_vec()).unwrap();
            for j in 0..=xi_k - k {
                let whole = norm(&a, &SliceConstraint::eq(k + 1, j), &lim()).unwrap();
                let head = norm(&prefix, &SliceConstraint::eq(k + 1, j), &lim()).unwrap();
                let mut tail = vec![0, p[k + 1] + j];
                tail.extend_from_slice(&p[k + 2..]);
                let tail = norm_closed(&Composition::new(tail).unwrap());
                assert_eq!(whole, &head * &tail, "{a} k={k} j={j}");

                let mut rest = vec![0];
                rest.extend_from_slice(&p[k + 1..]);
                let rest = norm_closed(&Composition::new(rest).unwrap());
                let top = a.range_sum(k + 1, r) as i64;
                let lhs = binom(p[k + 1] as i64 + j as i64 - 1, j as i64) * tail;
                let rhs = binom(top + j as i64 - 1, j as i64) * rest;
                assert_eq!(lhs, rhs, "{a} k={k} j={j}");
            }
        }
    }
}

#[test]
fn binomial_identities() {
    for a in 0..=30i64 {
        for j in 0..=30i64 {
            let lhs: Int = (0..=j).map(|i| binom(a + i - 1, i)).sum();
            assert_eq!(lhs, binom(a + j, j));
            let alt: Int = (0..=j).map(|i| if i % 2 == 0 { binom(a, i) } else { -binom(a, i) }).sum();
            let sign = if j % 2 == 0 { Int::from(1) } else { Int::from(-1) };
            if a >= 1 {
                assert_eq!(alt, sign * binom(a - 1, j));
            }
        }
    }
    for a in 1..=30i64 {
        for big_a in 0..=30i64 {
            for j in 0..=30i64 {
                let lhs = binom(a + j - 1, j) * binom(big_a + a + j - 1, a + j - 1);
                let rhs = binom(big_a + a - 1, a - 1) * binom(big_a + a + j - 1, j);
                assert_eq!(lhs, rhs);
            }
            let mut acc = Int::from(0);
            for beta in 0..=30i64 {
                acc += binom(a + beta - 1, beta) * binom(big_a + a + beta - 1, a + beta - 1);
                assert_eq!(acc, binom(big_a + a - 1, a - 1) * binom(big_a + a + beta, beta));
            }
        }
    }
}

#[test]
fn falling_factorial_gamma_agrees() {
    use tutteframe::ginvariant::gamma_symbols;
    for a in compositions(8) {
        let combo = gamma_symbols(&a, &lim()).unwrap();
        let base = a.to_bits();
        let p = a.parts();
        for bseq in BitSequence::all(a.n(), a.r()) {
            let expected = if dominates(&bseq, &base).unwrap() {
                let b = Composition::from_bits(&bseq);
                let q = b.parts();
                let mut c = falling(p[0] as i64, q[0]);
                let mut deficit = 0i64;
                for j in 1..=a.r() {
                    deficit += p[j - 1] as i64 - q[j - 1] as i64;
                    c *= Int::from(p[j]) * falling(p[j] as i64 - 1 + deficit, q[j] - 1);
                }
                c
            } else {
                Int::from(0)
            };
            assert_eq!(combo.get(&bseq), expected, "{a} at {bseq}");
        }
    }
}

proptest! {
    #[test]
    fn leading_ones_do_not_change_norm(a in composition_strategy(9), ones in 0usize..4) {
        prop_assume!(a.a(0) == 0);
        let mut parts = vec![0];
        parts.extend(std::iter::repeat_n(1, ones));
        parts.extend_from_slice(&a.parts()[1..]);
        let padded = Composition::new(parts).unwrap();
        prop_assert_eq!(norm_closed(&padded), norm_closed(&a));
    }

    #[test]
    fn loops_scale_norm(a in composition_strategy(10)) {
        let stripped = a.strip_loops();
        prop_assert_eq!(
            norm_closed(&a),
            binom(a.n() as i64, a.a(0) as i64) * norm_closed(&stripped)
        );
    }

    #[test]
    fn dominance_is_a_partial_order(n in 1usize..9, seed in any::<u64>()) {
        let r = (seed % (n as u64 + 1)) as usize;
        let all = BitSequence::all(n, r);
        let pick = |k: u64| all[(k % all.len() as u64) as usize];
        let (t, u, v) = (pick(seed >> 8), pick(seed >> 24), pick(seed >> 40));
        prop_assert!(dominates(&t, &t).unwrap());
        if dominates(&t, &u).unwrap() && dominates(&u, &t).unwrap() {
            prop_assert_eq!(t, u);
        }
        if dominates(&t, &u).unwrap() && dominates(&u, &v).unwrap() {
            prop_assert!(dominates(&t, &v).unwrap());
        }
        prop_assert!(dominates(&all[0], &t).unwrap());
        prop_assert!(dominates(&t, all.last().unwrap()).unwrap());
    }
}
