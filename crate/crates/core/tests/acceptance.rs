//! Acceptance suite: one PASS/FAIL line per criterion, with exactness and
//! the time limit both required. Runs without the test harness so the lines
//! always print.

mod common;

use std::time::Instant;

use codeloop::codes::{build_code, BuildOptions, Codeword, SimplexCode};
use codeloop::loops::{p_from_loop, CodeLoop};
use codeloop::polarization::{comb_degree_formula, longest_regular_chain, lucas_binomial};
use codeloop::poly_map::random_gf2_poly;
use codeloop::{CombDegree, FieldCtx, MultiExp, ReducedPoly, ValueTable};
use common::{Additive, Binomials, MapTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gf(p: u32, e: u32) -> FieldCtx {
    FieldCtx::new(p, e).unwrap()
}

fn degree_of(field: &FieldCtx, n: usize, src: &str) -> CombDegree {
    comb_degree_formula(&ReducedPoly::parse(field, Some(n), src).unwrap())
}

fn criterion_1() -> bool {
    let t = Instant::now();
    let f9 = gf(3, 2);
    let ok = degree_of(&f9, 3, "x1^3*x2^7") == CombDegree::Finite(4)
        && degree_of(&f9, 3, "x1*x2*x3^5") == CombDegree::Finite(5)
        && degree_of(&f9, 3, "x1^3*x2^7 + x1*x2*x3^5") == CombDegree::Finite(5);
    common::report(1, "degree example over GF(9): 4, 5, max = 5", ok, t.elapsed(), 1.0)
}

/// `P(x)` from the term list; bit `i` of `x` is `x_{i+1}`.
fn eval_gf2(poly: &ReducedPoly, x: usize) -> u64 {
    poly.terms()
        .map(|(exps, _)| {
            exps.exps()
                .iter()
                .enumerate()
                .all(|(i, &a)| a == 0 || x >> i & 1 == 1) as u64
        })
        .sum::<u64>()
        % 2
}

fn criterion_2() -> bool {
    let t = Instant::now();
    let p = ReducedPoly::parse(&FieldCtx::gf2(), Some(3), "x2 + x1*x3 + x1*x2*x3").unwrap();
    let opts = BuildOptions {
        simplex: Some(SimplexCode::worked_example()),
        order: Some("1,2;2,3;1,2,3".parse().unwrap()),
        block_dim: None,
    };
    let build = build_code(&p, &opts).unwrap();
    let family_ok = build.family().to_string() == "{{1,2},{2,3},{1,2,3}}";
    let rows: Vec<String> = build.code().rows().iter().map(|r| r.to_blocks(7)).collect();
    let rows_ok = rows
        == [
            "1000111,0000000,1000111",
            "0101011,1000111,0101011",
            "0000000,0101011,0011101",
        ];
    let bits: Vec<_> = rows.iter().map(|r| common::parse_bits(r)).collect();
    let c3 = &bits[2];
    let sum = common::xor(&common::xor(&bits[0], &bits[1]), &bits[2]);
    let weights_ok = common::weight(c3) == 8
        && common::weight(&sum) == 12
        && sum == common::parse_bits("1101100,1101100,1110001");
    let congruence_ok = (common::weight(c3) / 4) % 2 == eval_gf2(&p, 0b100)
        && (common::weight(&sum) / 4) % 2 == eval_gf2(&p, 0b111);
    let ok = family_ok && rows_ok && weights_ok && congruence_ok;
    common::report(2, "worked code example reproduced bit for bit", ok, t.elapsed(), 1.0)
}

fn formula_matches_oracle(field: &FieldCtx, map: &MapTable) -> bool {
    let table = ValueTable::new(field.clone(), map.n, map.values.clone()).unwrap();
    let formula = comb_degree_formula(&ReducedPoly::interpolate(&table).unwrap());
    let oracle = match map.comb_degree() {
        Some(d) => CombDegree::Finite(d),
        None => CombDegree::Infinite,
    };
    formula == oracle
}

fn criterion_3() -> bool {
    let t = Instant::now();
    let mut ok = true;
    let f2 = FieldCtx::gf2();
    let add2 = Additive { p: 2, e: 1 };
    for bits in 0u32..128 {
        let mut values = vec![0u32];
        values.extend((0..7).map(|i| bits >> i & 1));
        ok &= formula_matches_oracle(&f2, &MapTable { field: add2, n: 3, values });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f3 = gf(3, 1);
    for _ in 0..100 {
        ok &= formula_matches_oracle(&f3, &MapTable::random(&mut rng, Additive { p: 3, e: 1 }, 2));
    }
    let f4 = gf(2, 2);
    for _ in 0..50 {
        ok &= formula_matches_oracle(&f4, &MapTable::random(&mut rng, Additive { p: 2, e: 2 }, 2));
    }
    common::report(3, "p-weight formula = exhaustive polarization (278 maps)", ok, t.elapsed(), 60.0)
}

fn criterion_4() -> bool {
    let t = Instant::now();
    let binoms = Binomials::new(100);
    let mut ok = true;
    for p in [2u64, 3, 5, 7] {
        for m in 0..=100u64 {
            for k in 0..=100u64 {
                let expected = binoms.mod_p(m as usize, k as usize, p as u128) as u64;
                ok &= lucas_binomial(m, k, p).unwrap() == expected;
            }
        }
    }
    common::report(4, "Lucas binomials mod p, m,k <= 100, p in {2,3,5,7}", ok, t.elapsed(), 1.0)
}

fn chain_matches(a: &[usize], p: u64) -> bool {
    let expected: u64 = a.iter().map(|&x| common::digit_sum(x as u64, p)).sum();
    let oracle = common::longest_chain_len(a, p as u128) as u64;
    let exps = MultiExp::new(a.iter().map(|&x| x as u32).collect());
    let lib = longest_regular_chain(&exps, p).unwrap().len() as u64;
    oracle == expected && lib == expected
}

fn criterion_5() -> bool {
    let t = Instant::now();
    let mut ok = true;
    for a in 1..81 {
        ok &= chain_matches(&[a], 3);
    }
    for a in 0..9 {
        for b in 0..9 {
            if a + b > 0 {
                ok &= chain_matches(&[a, b], 3);
            }
        }
    }
    common::report(5, "longest regular chain = sum of 3-weights", ok, t.elapsed(), 30.0)
}

fn criterion_6() -> bool {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut ok = true;
    for i in 0..50 {
        let degree = 2 + i % 3;
        let p = random_gf2_poly(&mut rng, 4, degree).unwrap();
        let build = build_code(&p, &BuildOptions::default()).unwrap();
        let r = degree as u32 - 1;
        let len = build.code().length();
        let rows: Vec<_> = build
            .code()
            .rows()
            .iter()
            .map(|c| common::parse_bits(&c.to_string()))
            .collect();
        let words = common::span(&rows, len);
        let mut min_tz = u32::MAX;
        for (x, w) in words.iter().enumerate() {
            let wt = common::weight(w);
            ok &= wt.is_multiple_of(1 << r) && (wt >> r) % 2 == eval_gf2(&p, x);
            if wt > 0 {
                min_tz = min_tz.min(wt.trailing_zeros());
            }
        }
        // the family really is a complemented normal form of P
        for x in 0..16usize {
            let v: u64 = build
                .family()
                .sets()
                .iter()
                .map(|set| set.iter().any(|&j| x >> (j - 1) & 1 == 1) as u64)
                .sum();
            ok &= v % 2 == eval_gf2(&p, x);
        }
        ok &= min_tz == r
            && common::rank(&rows) == 4
            && len == build.family().len() * ((1 << (r + 1)) - 1);
    }
    common::report(6, "code of level r from 50 random P over GF(2)^4", ok, t.elapsed(), 30.0)
}

fn criterion_7() -> bool {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut ok = true;
    for _ in 0..25 {
        let n = rng.random_range(3..=4);
        let p = random_gf2_poly(&mut rng, n, 3).unwrap();
        let build = build_code(&p, &BuildOptions::default()).unwrap();
        let l = CodeLoop::from_code(build.code()).unwrap();
        let export = l.export();
        let rows: Vec<_> = build
            .code()
            .rows()
            .iter()
            .map(|c| common::parse_bits(&c.to_string()))
            .collect();
        let words = common::span(&rows, build.code().length());
        ok &= common::griess_failures(&words, &export.eta) == 0;
        ok &= common::is_latin(&export.cayley) && common::is_moufang(&export.cayley);
        let report = l.verify_identities().unwrap();
        ok &= report.ok() && report.latin_square && report.moufang && report.squares.len() <= 2;
        ok &= p_from_loop(&l).unwrap() == p.to_table().unwrap();
    }
    common::report(7, "code loops from 25 random cubic P", ok, t.elapsed(), 60.0)
}

fn criterion_8() -> bool {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut ok = true;
    for _ in 0..1000 {
        let len = rng.random_range(0..=64);
        let (a, b) = (common::random_bits(&mut rng, len), common::random_bits(&mut rng, len));
        let (u, v) = (Codeword::from_bits(&a), Codeword::from_bits(&b));
        let lhs = u.sum(&v).unwrap().weight() as i64;
        let rhs = u.weight() as i64 + v.weight() as i64
            - 2 * u.intersection(&v).unwrap().weight() as i64;
        ok &= lhs == rhs && lhs as u64 == common::weight(&common::xor(&a, &b));
    }
    common::report(8, "w(u+v) = w(u) + w(v) - 2w(u∩v) on 1000 pairs", ok, t.elapsed(), 1.0)
}

fn main() {
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
