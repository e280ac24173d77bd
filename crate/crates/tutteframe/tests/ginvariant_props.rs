mod common;

use common::{comp, compositions, from_rows, lim, zoo};
use num_traits::{One, Signed, Zero};
use tutteframe::arith::{binom_u, factorial, rat, rat_int, Int, Rat};
use tutteframe::bitseq::norm_closed;
use tutteframe::frame::nu;
use tutteframe::ginvariant::{
    catenary_data, g_invariant_catenary, g_invariant_perm, gamma_symbols, specialize, specialize_symbol,
    tutte_via_sp,
};
use tutteframe::matroid::tutte::{mobius_invariant, tutte_direct};
use tutteframe::polynomial::{tutte_uniform, Poly};
use tutteframe::{BitSequence, Composition, Matroid, SymbolCombination};

fn bits(s: &str) -> BitSequence {
    s.parse().unwrap()
}

#[test]
fn specialize_examples() {
    let xm = Poly::x_minus_one_pow(1);
    let ym = Poly::y_minus_one_pow(1);
    let expect = (xm.pow(3) + xm.pow(2).scale_int(&5.into()) + xm.scale_int(&10.into()) + Poly::constant(rat(10, 1))
        + ym.scale_int(&5.into())
        + ym.pow(2))
    .scale(&rat(1, 120));
    assert_eq!(specialize_symbol(&bits("11100")), expect);

    for (r, n) in [(1, 2), (2, 4), (3, 7), (4, 9)] {
        let b = BitSequence::with_ones(n, &(0..r).collect::<Vec<_>>());
        let t = tutte_uniform(r, n).unwrap().scale(&Rat::new(Int::one(), factorial(n)));
        assert_eq!(specialize_symbol(&b), t);
    }

    let diff = specialize_symbol(&bits("11010")) - specialize_symbol(&bits("11100"));
    assert_eq!(diff, Poly::syzygy().scale(&rat(1, 12)));
}

#[test]
fn gamma_examples() {
    let g = gamma_symbols(&comp("0,1,1,3,5"), &lim()).unwrap();
    let mut expect = SymbolCombination::new(10, 4);
    for (b, c) in [("1111000000", 15), ("1110100000", 5), ("1110010000", 1)] {
        expect.add(bits(b), Int::from(720 * c)).unwrap();
    }
    assert_eq!(g, expect);

    let one = gamma_symbols(&comp("0,1,1,1"), &lim()).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(one.get(&bits("111")), Int::one());
}

#[test]
fn symbol_count_identity() {
    for a in compositions(10) {
        let g = gamma_symbols(&a, &lim()).unwrap();
        assert_eq!(g.mass(), a.factorial_product() * norm_closed(&a), "{a}");
    }
}

#[test]
fn small_permutation_examples() {
    let u12 = Matroid::construct("uniform:1,2").unwrap();
    let g = g_invariant_perm(&u12, &lim()).unwrap();
    assert_eq!(g.len(), 1);
    assert_eq!(g.get(&bits("10")), Int::from(2));
    assert_eq!(g_invariant_catenary(&u12, &lim()).unwrap(), g);

    let loop_coloop = Matroid::construct("multipoint:1;1").unwrap();
    let g = g_invariant_perm(&loop_coloop, &lim()).unwrap();
    assert_eq!(g.get(&bits("10")), Int::one());
    assert_eq!(g.get(&bits("01")), Int::one());
    assert_eq!(g_invariant_catenary(&loop_coloop, &lim()).unwrap(), g);
}

#[test]
fn permutation_route_matches_catenary_route() {
    for (name, m) in zoo().into_iter().filter(|(_, m)| m.n() <= 7) {
        let perm = g_invariant_perm(&m, &lim()).unwrap();
        let cat = g_invariant_catenary(&m, &lim()).unwrap();
        assert_eq!(perm, cat, "{name}");
        assert_eq!(perm.mass(), factorial(m.n()));
        assert_eq!(specialize(&perm), tutte_direct(&m, &lim()).unwrap(), "{name}");
    }
    assert!(g_invariant_perm(&Matroid::construct("uniform:2,9").unwrap(), &lim())
        .unwrap_err()
        .is_infeasible());
}

#[test]
fn sp_route_matches_direct() {
    for (name, m) in zoo() {
        assert_eq!(tutte_via_sp(&m, &lim()).unwrap(), tutte_direct(&m, &lim()).unwrap(), "{name}");
    }
    let u24 = tutte_via_sp(&Matroid::construct("uniform:2,4").unwrap(), &lim()).unwrap();
    assert_eq!(u24, from_rows(&[&[0, 2, 1], &[2], &[1]]));
    let f1 = tutte_via_sp(&Matroid::construct("echelon:1000110000").unwrap(), &lim()).unwrap();
    assert_eq!(f1, from_rows(&[&[0, 10, 10, 10, 10, 6, 3, 1], &[10, 4, 4, 4], &[4, 1, 1, 1], &[1]]));
}

#[test]
fn catenary_examples() {
    let h33 = catenary_data(&Matroid::construct("sum(multipoint:0;3|line:3,1,1)").unwrap(), &lim()).unwrap();
    let expect = [("0,3,3,2", 2), ("0,3,2,3", 1), ("0,3,1,4", 2), ("0,1,3,4", 2), ("0,1,4,3", 2)];
    assert_eq!(h33.nu.len(), expect.len());
    for (a, v) in expect {
        assert_eq!(h33.get(&comp(a)), Int::from(v), "{a}");
    }

    let u23 = catenary_data(&Matroid::construct("uniform:2,3").unwrap(), &lim()).unwrap();
    assert_eq!(u23.nu.len(), 1);
    assert_eq!(u23.get(&comp("0,1,2")), Int::from(3));

    let pg = catenary_data(&Matroid::construct("pg:3,3").unwrap(), &lim()).unwrap();
    assert_eq!(pg.nu.len(), 1);
    assert_eq!(pg.get(&comp("0,1,3,9,27")), Int::from(2080));
    assert_eq!(pg.total_flags(), Int::from(40 * 13 * 4));

    let loops = catenary_data(&Matroid::construct("multipoint:2;2,3").unwrap(), &lim()).unwrap();
    assert!(loops.iter().all(|(a, _)| a.a(0) == 2));
}

#[test]
fn specialized_symbol_at_one_zero() {
    for n in 1..=10 {
        for r in 1..=n {
            for a in Composition::all(n, r).into_iter().filter(|a| a.a(0) == 0) {
                let v = specialize_symbol(&a.to_bits()).eval(&Rat::one(), &Rat::zero());
                let expect = Rat::new(binom_u(n - 1, a.a(r) - 1), factorial(n));
                assert_eq!(v.abs(), expect, "{a}");
                let sign = if (n - r + 1 - a.a(r)) % 2 == 0 { 1 } else { -1 };
                assert_eq!(v, expect * rat(sign, 1), "{a}");
            }
        }
    }
}

#[test]
fn flag_count_sums() {
    for (name, m) in zoo().into_iter().filter(|(_, m)| m.loops() == 0) {
        let cat = catenary_data(&m, &lim()).unwrap();
        let mut leaf = Rat::zero();
        let mut other = Rat::zero();
        for (a, v) in cat.iter() {
            leaf += rat_int(v.clone()) / nu(a);
            other += rat_int(v.clone()) / nu(&a.reversed());
        }
        assert_eq!(leaf, Rat::one(), "{name}");
        assert_eq!(other, rat_int(mobius_invariant(&m, &lim()).unwrap()), "{name}");
    }
}
