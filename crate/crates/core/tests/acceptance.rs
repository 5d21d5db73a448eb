//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its elapsed time (visible under `--nocapture`). Tolerances and runtime
//! ceilings are pinned in the asserts.

mod common;

use std::time::{Duration, Instant};

use admissible::bounds::{capset_base, capset_count, certify_base};
use admissible::clash::{is_admissible, is_triple_clash, is_triple_clash_scalar};
use admissible::cnf::{decode_verified, export_cnf};
use admissible::colouring::{monochromatic_frontier, reconstruct_monochromatic, TripleColour};
use admissible::construct::construct_i;
use admissible::family::{Branch, VectorFamily};
use admissible::search::{exists_i, SearchConfig, SearchStatus};
use admissible::supports::{enumerate_supports, SeedOrder};
use admissible::typed::{
    classify4, enumerate_typed, is_typed_clash, is_typed_clash_bruteforce, monotype_i_exists,
    star_type, TypeClass4, TypeSeq,
};
use admissible::vector::{Support, TernaryVector};

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn sup(m: usize, members: &[usize]) -> Support {
    Support::new(m, members.iter().copied()).unwrap()
}

fn ty(s: &str) -> TypeSeq {
    s.parse().unwrap()
}

fn vec3(s: &str) -> TernaryVector {
    TernaryVector::parse(s).unwrap()
}

/// The four typed-clash instances with their universes.
fn known_typed_clashes() -> Vec<(Support, Support, Support, TypeSeq)> {
    vec![
        (sup(5, &[0, 1, 3, 4]), sup(5, &[0, 2, 3, 4]), sup(5, &[1, 2, 3, 4]), ty("11")),
        (sup(5, &[0, 1, 2, 4]), sup(5, &[0, 1, 3, 4]), sup(5, &[0, 2, 3, 4]), ty("211")),
        (sup(5, &[0, 1, 2, 3]), sup(5, &[0, 1, 2, 4]), sup(5, &[0, 1, 3, 4]), ty("1211")),
        (sup(6, &[0, 1, 2, 3]), sup(6, &[0, 1, 4, 5]), sup(6, &[2, 3, 4, 5]), ty("1212")),
    ]
}

fn report(criterion: u32, what: &str, start: Instant, ceiling: Duration) {
    let elapsed = start.elapsed();
    println!("criterion {criterion}: PASS — {what} ({elapsed:.2?})");
    assert!(
        elapsed < ceiling,
        "criterion {criterion} exceeded its runtime ceiling: {elapsed:.2?} >= {ceiling:?}"
    );
}

#[test]
fn criterion_1_typed_clashes_exist() {
    let start = Instant::now();
    for (s1, s2, s3, t) in known_typed_clashes() {
        for t in [t.clone(), star_type(&t)] {
            assert!(
                is_typed_clash(&s1, &s2, &s3, &t).unwrap(),
                "procedure: type {t} on {s1}/{s2}/{s3}"
            );
            assert!(
                is_typed_clash_bruteforce(&s1, &s2, &s3, &t, 1 << 20).unwrap(),
                "oracle: type {t} on {s1}/{s2}/{s3}"
            );
        }
    }
    report(1, "four typed clashes and their stars, procedure and oracle", start, Duration::from_secs(1));
}

#[test]
fn criterion_2_monotype_nonexistence() {
    let start = Instant::now();

    // search side
    for t in ["11", "1211", "122", "211", "2122", "22"] {
        let outcome = monotype_i_exists(5, 4, &ty(t), 1 << 24).unwrap();
        assert!(outcome.is_none(), "no monotype I(5,4) family of type {t}");
    }
    for t in ["1212", "2121"] {
        let outcome = monotype_i_exists(6, 4, &ty(t), 1 << 24).unwrap();
        assert!(outcome.is_none(), "no monotype I(6,4) family of type {t}");
    }

    // the pure 16^5 enumeration oracle for (5,4): one pass over every
    // assignment of one arbitrary vector per support, recording which prefix
    // classes admit an all-one-class admissible family
    let supports = enumerate_supports(5, 4, SeedOrder::Colex);
    let choices: Vec<Vec<TernaryVector>> = supports
        .iter()
        .map(|s| enumerate_typed(s, &TypeSeq::empty()).unwrap())
        .collect();
    let classes: Vec<Vec<TypeClass4>> = choices
        .iter()
        .map(|cs| cs.iter().map(|v| classify4(v).unwrap()).collect())
        .collect();
    let mut achievable = std::collections::HashMap::new();
    let mut digits = [0usize; 5];
    'outer: loop {
        let class = classes[0][digits[0]];
        if (1..5).all(|i| classes[i][digits[i]] == class)
            && !achievable.contains_key(&class)
        {
            let family = VectorFamily::from_vectors(
                5,
                digits.iter().zip(&choices).map(|(&d, cs)| cs[d]),
            )
            .unwrap();
            if is_admissible(&family) {
                achievable.insert(class, family);
            }
        }
        for digit in digits.iter_mut() {
            *digit += 1;
            if *digit < 16 {
                continue 'outer;
            }
            *digit = 0;
        }
        break;
    }
    for class in [
        TypeClass4::T11,
        TypeClass4::T1211,
        TypeClass4::T122,
        TypeClass4::T211,
        TypeClass4::T2122,
        TypeClass4::T22,
    ] {
        assert!(!achievable.contains_key(&class), "oracle found all-{class} I(5,4) family");
    }
    // and the oracle agrees with the search on the remaining two classes
    for class in [TypeClass4::T1212, TypeClass4::T2121] {
        let searched = monotype_i_exists(5, 4, &class.tag(), 1 << 24).unwrap();
        assert_eq!(searched.is_some(), achievable.contains_key(&class), "class {class}");
    }

    report(2, "monotype nonexistence for (5,4)x6 and (6,4)x2, oracle-matched", start, Duration::from_secs(60));
}

#[test]
fn criterion_3_prefix_code_totality() {
    let start = Instant::now();
    for pattern in 0..16u32 {
        let entries: Vec<u8> = (0..4).map(|i| 1 + (pattern >> i & 1) as u8).collect();
        let v = TernaryVector::from_entries(&entries).unwrap();
        let matching: Vec<TypeClass4> = TypeClass4::ALL
            .into_iter()
            .filter(|class| {
                let tag = class.tag();
                entries.starts_with(tag.entries())
            })
            .collect();
        assert_eq!(matching.len(), 1, "prefix {entries:?} matched {matching:?}");
        assert_eq!(classify4(&v).unwrap(), matching[0]);
    }
    report(3, "each of the 16 length-4 prefixes matches exactly one of the 8 tags", start, Duration::from_secs(1));
}

#[test]
fn criterion_4_monochromatic_frontiers() {
    let start = Instant::now();
    for colour in ["111", "112", "122", "211", "221", "222"] {
        let c: TripleColour = colour.parse().unwrap();
        assert_eq!(monochromatic_frontier(c, 8), 3, "colour {colour}");
    }
    for colour in ["121", "212"] {
        let c: TripleColour = colour.parse().unwrap();
        assert_eq!(monochromatic_frontier(c, 8), 5, "colour {colour}");
    }

    let fam4 = reconstruct_monochromatic(4, "111".parse().unwrap());
    for v in ["0110", "1010", "1100"] {
        assert!(fam4.contains(&vec3(v)), "m=4 colour-111 reconstruction misses {v}");
    }
    assert!(is_triple_clash(&vec3("0110"), &vec3("1010"), &vec3("1100")).unwrap());

    let fam6 = reconstruct_monochromatic(6, "121".parse().unwrap());
    for v in ["001111", "110011", "111100"] {
        assert!(fam6.contains(&vec3(v)), "m=6 colour-121 reconstruction misses {v}");
    }
    assert!(is_triple_clash(&vec3("001111"), &vec3("110011"), &vec3("111100")).unwrap());

    report(4, "frontiers 3/5 per colour and the two stated clash triples", start, Duration::from_secs(5));
}

#[test]
fn criterion_5_constructions_and_projections() {
    let start = Instant::now();
    for m in 1..=10usize {
        let mut ws = vec![1, 2, 3, m.saturating_sub(1), m];
        ws.retain(|&w| w >= 1 && w <= m);
        ws.sort_unstable();
        ws.dedup();
        for w in ws {
            let family = construct_i(m, w).unwrap();
            assert!(family.is_i_set(m, w), "I({m},{w}) shape");
            assert!(is_admissible(&family), "I({m},{w}) admissibility");

            let zero = family.project(m - 1, Branch::Zero).unwrap();
            assert!(zero.is_i_set(m - 1, w), "projection to I({},{w})", m - 1);
            assert!(is_admissible(&zero));
            let nonzero = family.project(m - 1, Branch::NonZero).unwrap();
            assert!(nonzero.is_i_set(m - 1, w - 1), "projection to I({},{})", m - 1, w - 1);
            assert!(is_admissible(&nonzero));
        }
    }
    report(5, "construct_i verified for m <= 10 with both projections", start, Duration::from_secs(30));
}

#[test]
fn criterion_6_search_reproduces_known_existence() {
    let start = Instant::now();
    for (m, w) in [(6usize, 4usize), (7, 4), (7, 5)] {
        let t0 = Instant::now();
        let out = exists_i(m, w, &SearchConfig::default());
        assert_eq!(out.status, SearchStatus::Found, "I({m},{w})");
        let witness = out.witness.unwrap();
        assert!(witness.is_i_set(m, w) && is_admissible(&witness));
        assert!(t0.elapsed() < Duration::from_secs(600), "I({m},{w}) exceeded 10 minutes");
    }

    // stretch target: allowed to stop at the node limit, must verify if found
    let cfg = SearchConfig {
        node_limit: Some(64_000_000),
        threads: 4,
        ..Default::default()
    };
    let out = exists_i(12, 4, &cfg);
    match out.status {
        SearchStatus::Found => {
            let witness = out.witness.unwrap();
            assert!(witness.is_i_set(12, 4) && is_admissible(&witness));
            println!("criterion 6: I(12,4) found in {} nodes", out.nodes);
        }
        SearchStatus::LimitReached => {
            println!("criterion 6: I(12,4) stopped at the node limit (allowed)");
        }
        SearchStatus::Exhausted => panic!("I(12,4) cannot be Exhausted: witnesses are known"),
    }

    report(6, "witnesses for (6,4), (7,4), (7,5); (12,4) stretch handled", start, Duration::from_secs(1800));
}

#[test]
fn criterion_7_bound_reproduction() {
    let start = Instant::now();
    let base = capset_base(330, 11, 7, 64).unwrap();
    assert!(
        (base.to_f64() - 2.218).abs() <= 0.001,
        "capset_base(330,11,7) = {}, want 2.218 +/- 0.001",
        base.to_f64()
    );
    let count = capset_count(330, 11, 7).unwrap();
    assert!(certify_base(&count, &base));

    // exactness and evaluation-order independence
    let refactored = BigUint::from(330u32)
        * BigUint::from(72u32).pow(4)
        * BigUint::from(112u32).pow(5 * 11 + 7);
    assert_eq!(count, refactored);

    report(7, "capset_base(330,11,7) = 2.218 +/- 0.001 with exact count", start, Duration::from_secs(1));
}

#[test]
fn criterion_8a_clash_formulation_equivalence() {
    let start = Instant::now();
    // exhaustive for m <= 4
    for m in 1..=4usize {
        let vectors: Vec<TernaryVector> = all_vectors(m);
        for a in &vectors {
            for b in &vectors {
                for c in &vectors {
                    assert_eq!(
                        is_triple_clash(a, b, c).unwrap(),
                        is_triple_clash_scalar(a, b, c).unwrap(),
                        "({a}, {b}, {c})"
                    );
                }
            }
        }
    }
    // randomized beyond that
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..100_000 {
        let m = rng.random_range(1..=12);
        let (a, b, c) = (rand_vec(&mut rng, m), rand_vec(&mut rng, m), rand_vec(&mut rng, m));
        assert_eq!(
            is_triple_clash(&a, &b, &c).unwrap(),
            is_triple_clash_scalar(&a, &b, &c).unwrap(),
            "({a}, {b}, {c})"
        );
    }
    report(8, "clash formulations agree: exhaustive m <= 4 plus 1e5 random triples", start, Duration::from_secs(60));
}

#[test]
fn criterion_8b_star_invariance() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..20_000 {
        let m = rng.random_range(1..=10);
        let (a, b, c) = (rand_vec(&mut rng, m), rand_vec(&mut rng, m), rand_vec(&mut rng, m));
        assert_eq!(
            admissible::clash::is_pair_clash(&a, &b).unwrap(),
            admissible::clash::is_pair_clash(&a.star(), &b.star()).unwrap()
        );
        assert_eq!(
            is_triple_clash(&a, &b, &c).unwrap(),
            is_triple_clash(&a.star(), &b.star(), &c.star()).unwrap()
        );
    }
    // typed clashes transfer to the starred type across the full small grid
    let supports = enumerate_supports(6, 4, SeedOrder::Colex);
    for (i, s1) in supports.iter().enumerate() {
        for (j, s2) in supports.iter().enumerate().skip(i + 1) {
            for s3 in supports.iter().skip(j + 1) {
                for t in all_types_up_to(4) {
                    assert_eq!(
                        is_typed_clash(s1, s2, s3, &t).unwrap(),
                        is_typed_clash(s1, s2, s3, &star_type(&t)).unwrap(),
                        "star transfer on {s1}/{s2}/{s3} type {t}"
                    );
                }
            }
        }
    }
    report(8, "star invariance of pair, triple and typed clashes", start, Duration::from_secs(60));
}

#[test]
fn criterion_8c_typed_clash_oracle_agreement() {
    let start = Instant::now();
    let supports = enumerate_supports(6, 4, SeedOrder::Colex);
    let mut checked = 0u64;
    for (i, s1) in supports.iter().enumerate() {
        for (j, s2) in supports.iter().enumerate().skip(i + 1) {
            for s3 in supports.iter().skip(j + 1) {
                for t in all_types_up_to(4) {
                    let fast = is_typed_clash(s1, s2, s3, &t).unwrap();
                    let slow = is_typed_clash_bruteforce(s1, s2, s3, &t, 1 << 22).unwrap();
                    assert_eq!(fast, slow, "{s1}/{s2}/{s3} type {t}");
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 455 * 31);
    report(8, "typed-clash procedure agrees with enumeration on all C([6],4) triples", start, Duration::from_secs(120));
}

#[test]
fn criterion_8d_cnf_round_trip() {
    let start = Instant::now();

    let mut cnf_text = Vec::new();
    let varmap = export_cnf(5, 4, &mut cnf_text).unwrap();
    let text = String::from_utf8(cnf_text).unwrap();

    // solve with the independent DPLL and verify the decoded family
    let parsed = common::parse_dimacs(&text);
    assert_eq!(parsed.vars, varmap.var_count());
    let model = common::solve(&parsed).expect("I(5,4) instances are satisfiable");
    let family = decode_verified(&varmap, &model).unwrap();
    assert!(family.is_i_set(5, 4) && is_admissible(&family));

    // pin the type-11 clash triple to its all-ones completion: UNSAT
    let mut pinned = parsed;
    for members in [[0usize, 1, 3, 4], [0, 2, 3, 4], [1, 2, 3, 4]] {
        let s = sup(5, &members);
        let idx = varmap.supports().iter().position(|x| *x == s).unwrap();
        for p in 0..4 {
            pinned.clauses.push(vec![-(varmap.var(idx, p) as i64)]);
        }
    }
    assert!(common::solve(&pinned).is_none(), "pinned-clash variant must be UNSAT");

    report(8, "CNF round-trip on (5,4): model decodes and verifies; pinned clash is UNSAT", start, Duration::from_secs(60));
}

fn all_vectors(m: usize) -> Vec<TernaryVector> {
    let mut out = Vec::with_capacity(3usize.pow(m as u32));
    let mut entries = vec![0u8; m];
    loop {
        out.push(TernaryVector::from_entries(&entries).unwrap());
        let mut pos = 0;
        loop {
            if pos == m {
                return out;
            }
            entries[pos] += 1;
            if entries[pos] < 3 {
                break;
            }
            entries[pos] = 0;
            pos += 1;
        }
    }
}

fn rand_vec(rng: &mut StdRng, m: usize) -> TernaryVector {
    let entries: Vec<u8> = (0..m).map(|_| rng.random_range(0..3u8)).collect();
    TernaryVector::from_entries(&entries).unwrap()
}

fn all_types_up_to(max_len: usize) -> Vec<TypeSeq> {
    let mut out = vec![TypeSeq::empty()];
    for len in 1..=max_len {
        for bits in 0..1u32 << len {
            let entries: Vec<u8> = (0..len).map(|i| 1 + (bits >> i & 1) as u8).collect();
            out.push(TypeSeq::new(entries).unwrap());
        }
    }
    out
}
