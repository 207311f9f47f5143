//! Acceptance criteria, run sequentially so that wall-clock budgets are
//! measured without competing tests. Prints one PASS/FAIL line each.

use std::process::Command;
use std::time::{Duration, Instant};

use fsz_core::construction::{
    binomial_entry_closed, build_b, build_shift, build_y, has_corner_block_form, shift_power_closed,
};
use fsz_core::fszcheck::{check_fsz, check_fsz_n, spj_witness, FszOptions, Verdict};
use fsz_core::gncount::{gn_count_bruteforce, gn_count_structured};
use fsz_core::group::FiniteGroup;
use fsz_core::spgroup::DEFAULT_ENUMERATION_LIMIT as LIMIT;
use fsz_core::{GroupParams, SpGroup, TableError, TableGroup};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GRID: [(u64, u32); 5] = [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn c1_automorphism_order() -> Outcome {
    for (p, j) in GRID {
        let params = GroupParams::new(p, j).unwrap();
        let b = build_b(params);
        let pj = params.p_pow_j();
        let mut power = b.clone();
        for k in 1..pj {
            ensure(!power.is_identity(), format!("({p},{j}): B^{k} = I"))?;
            if k == pj - 1 {
                ensure(
                    power.get(0, 0) == pj + 1,
                    format!("({p},{j}): corner of B^{k} is {}", power.get(0, 0)),
                )?;
            }
            power = power.mul(&b).unwrap();
        }
        ensure(power.is_identity(), format!("({p},{j}): B^{pj} != I"))?;
    }
    Ok("B has order p^j and B^{p^j-1} has corner p^j+1 on the grid".into())
}

fn c2_y_block_forms() -> Outcome {
    for (p, j) in GRID {
        let params = GroupParams::new(p, j).unwrap();
        let pj = params.p_pow_j();
        ensure(
            has_corner_block_form(&build_y(params, 0).unwrap(), 2 * pj),
            format!("({p},{j}): Y(1) != diag(2p^j, 0)"),
        )?;
        for t in 1..j {
            let scaled = build_y(params, t).unwrap().scale(p.pow(t) as i128);
            ensure(
                has_corner_block_form(&scaled, pj),
                format!("({p},{j}): p^{t} Y(p^{t}) != diag(p^j, 0)"),
            )?;
        }
    }
    Ok("Y(1) = diag(2p^j, 0) and p^t Y(p^t) = diag(p^j, 0)".into())
}

fn c3_closed_forms() -> Outcome {
    for (p, j) in GRID {
        let params = GroupParams::new(p, j).unwrap();
        let s = build_shift(params);
        let b = build_b(params);
        let (mut s_pow, mut b_pow) = (s.clone(), b.clone());
        for k in 1..=params.p_pow_j() {
            ensure(
                shift_power_closed(params, k).unwrap() == s_pow,
                format!("({p},{j}): S^{k} closed form"),
            )?;
            if k + 2 <= params.p_pow_j() {
                ensure(
                    binomial_entry_closed(params, k).unwrap() == b_pow,
                    format!("({p},{j}): B^{k} Pascal form"),
                )?;
            }
            s_pow = s_pow.mul(&s).unwrap();
            b_pow = b_pow.mul(&b).unwrap();
        }
    }
    Ok("shift and Pascal closed forms equal the matrix powers".into())
}

fn c4_power_formula() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut total = 0;
    for (p, j) in GRID {
        let g = SpGroup::from_pj(p, j).unwrap();
        let params = g.params();
        let mut elements: Vec<_> = (0..params.b_order())
            .map(|k| g.random_with_b_exponent(&mut rng, k))
            .collect();
        elements.extend((0..1000).map(|_| g.random_element(&mut rng)));
        for x in &elements {
            ensure(
                g.power_pj(x) == g.power_generic(x, params.p_pow_j()),
                format!("({p},{j}): power formula fails at {}", g.format_element(x)),
            )?;
        }
        total += elements.len();
    }
    Ok(format!("{total} elements, every b-order included"))
}

fn designated(
    p: u64,
    j: u32,
) -> (
    SpGroup,
    fsz_core::SElement,
    fsz_core::SElement,
    fsz_core::SElement,
) {
    let g = SpGroup::from_pj(p, j).unwrap();
    let pj = g.params().p_pow_j() as i128;
    let u = g.parse_element("b a1").unwrap();
    let (x, y) = (g.a1_pow(pj), g.a1_pow(2 * pj));
    (g, u, x, y)
}

fn c5_witness_five_one() -> Outcome {
    let (g, u, x, y) = designated(5, 1);
    let b1 = gn_count_bruteforce(&g, 5, &u, &x, LIMIT).unwrap().count;
    let b2 = gn_count_bruteforce(&g, 5, &u, &y, LIMIT).unwrap().count;
    let s1 = gn_count_structured(&g, &u, &x).unwrap().count;
    let s2 = gn_count_structured(&g, &u, &y).unwrap().count;
    ensure(b1 == 0 && b2 == 625, format!("brute force gave {b1}, {b2}"))?;
    ensure(s1 == b1 && s2 == b2, format!("structured gave {s1}, {s2}"))?;
    Ok("|G_5(ba1, a1^5)| = 0, |G_5(ba1, a1^10)| = 625 by both counters".into())
}

fn c6_witness_seven_one() -> Outcome {
    let (g, u, x, y) = designated(7, 1);
    let b1 = gn_count_bruteforce(&g, 7, &u, &x, LIMIT).unwrap().count;
    let b2 = gn_count_bruteforce(&g, 7, &u, &y, LIMIT).unwrap().count;
    let s1 = gn_count_structured(&g, &u, &x).unwrap().count;
    let s2 = gn_count_structured(&g, &u, &y).unwrap().count;
    ensure(b1 == 0 && b2 > 0, format!("brute force gave {b1}, {b2}"))?;
    ensure(s1 == b1 && s2 == b2, format!("structured gave {s1}, {s2}"))?;
    Ok(format!("5764801 elements scanned: counts 0 and {b2}"))
}

fn c7_witness_j_two() -> Outcome {
    for (p, j) in [(5, 2), (7, 2)] {
        let (g, u, x, y) = designated(p, j);
        let s1 = gn_count_structured(&g, &u, &x).unwrap().count;
        let s2 = gn_count_structured(&g, &u, &y).unwrap().count;
        ensure(
            s1.is_zero() && !s2.is_zero(),
            format!("({p},{j}): counts {s1}, {s2}"),
        )?;
    }
    Ok("structured counts 0 and > 0 at (5,2) and (7,2)".into())
}

fn c8_three_boundary() -> Outcome {
    let (g, u, x, y) = designated(3, 1);
    for target in [&x, &y] {
        let b = gn_count_bruteforce(&g, 3, &u, target, LIMIT).unwrap().count;
        let s = gn_count_structured(&g, &u, target).unwrap().count;
        ensure(
            b == 9 && s == 9,
            format!("counts {b} (brute) {s} (structured)"),
        )?;
    }
    let v = spj_witness(&g).unwrap();
    ensure(v.witness.is_none(), "unexpected witness at p = 3")?;
    Ok("both designated counts are 9; no witness".into())
}

fn c9_fsz_three_one() -> Outcome {
    let g = SpGroup::from_pj(3, 1).unwrap();
    let start = Instant::now();
    let reduced = check_fsz(
        &g,
        FszOptions {
            reduction: true,
            limit: LIMIT,
        },
    )
    .unwrap();
    let t_reduced = start.elapsed();
    let start = Instant::now();
    let full = check_fsz(
        &g,
        FszOptions {
            reduction: false,
            limit: LIMIT,
        },
    )
    .unwrap();
    let t_full = start.elapsed();
    ensure(
        t_reduced < Duration::from_secs(5),
        format!("reduced scan took {t_reduced:?}"),
    )?;
    ensure(
        t_full < Duration::from_secs(30),
        format!("full scan took {t_full:?}"),
    )?;
    let ns: Vec<u64> = reduced.verdicts.iter().map(|v| v.n).collect();
    ensure(ns == [1, 3, 9], format!("checked n = {ns:?}"))?;
    ensure(reduced.fsz && full.fsz, "S(3,1) not FSZ")?;
    let a: Vec<Verdict> = reduced.verdicts.iter().map(|v| v.verdict).collect();
    let b: Vec<Verdict> = full.verdicts.iter().map(|v| v.verdict).collect();
    ensure(a == b, "reduced and full scans disagree")?;
    Ok(format!(
        "FSZ_1, FSZ_3, FSZ_9 (reduced {t_reduced:?}, full {t_full:?})"
    ))
}

fn c10_non_fsz_verdict() -> Outcome {
    let g = SpGroup::from_pj(5, 1).unwrap();
    let v = check_fsz_n(&g, 5, FszOptions::default()).unwrap();
    let w = v.witness.ok_or("no witness")?;
    ensure(v.verdict == Verdict::NonFsz, "verdict is not non-FSZ")?;
    ensure(
        gcd(w.m, 15625) == 1,
        format!("m = {} not coprime to |G|", w.m),
    )?;
    ensure(w.count_g != w.count_gm, "witness counts are equal")?;
    let u = g.element_at(w.u_index.unwrap());
    let x = g.element_at(w.g_index.unwrap());
    ensure(g.commutes(&u, &x), "witness pair does not commute")?;
    let xm = g.power_generic(&x, w.m);
    let c1 = gn_count_bruteforce(&g, 5, &u, &x, LIMIT).unwrap().count;
    let c2 = gn_count_bruteforce(&g, 5, &u, &xm, LIMIT).unwrap().count;
    ensure(
        w.count_g == c1 && w.count_gm == c2,
        format!("brute force gives {c1}, {c2}"),
    )?;
    Ok(format!(
        "u = {}, g = {}, m = {}, counts {} vs {}",
        w.u, w.g, w.m, w.count_g, w.count_gm
    ))
}

fn random_table_group(rng: &mut ChaCha8Rng) -> TableGroup {
    loop {
        let count = rng.gen_range(1..=2);
        let gens: Vec<Vec<usize>> = (0..count)
            .map(|_| {
                let mut p: Vec<usize> = (0..5).collect();
                p.shuffle(rng);
                p
            })
            .collect();
        if let Ok(g) = TableGroup::from_permutations(None, &gens, 64) {
            if g.order() >= 4 {
                let mut perm: Vec<u32> = (0..g.order() as u32).collect();
                perm.shuffle(rng);
                return g.relabel(&perm);
            }
        }
    }
}

fn bijection_triples<G: FiniteGroup>(
    group: &G,
    rng: &mut ChaCha8Rng,
    trials: usize,
) -> Result<(), String> {
    let size = group.size().unwrap();
    for _ in 0..trials {
        let u = group.element_at(rng.gen_range(0..size));
        let n = rng.gen_range(1..=9);
        let g = group.pow(&group.element_at(rng.gen_range(0..size)), n);
        let count =
            |u: &G::Elem, g: &G::Elem| gn_count_bruteforce(group, n, u, g, LIMIT).unwrap().count;
        let base = count(&u, &g);
        ensure(
            base == count(&u, &group.invert(&g)),
            format!("{}: inverse bijection", group.describe()),
        )?;
        let x = group.element_at(rng.gen_range(0..size));
        let xi = group.invert(&x);
        let conj = |y: &G::Elem| group.multiply(&group.multiply(&x, y), &xi);
        ensure(
            base == count(&conj(&u), &conj(&g)),
            format!("{}: conjugation invariance", group.describe()),
        )?;
    }
    Ok(())
}

fn c11_property_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    bijection_triples(&SpGroup::from_pj(3, 1).unwrap(), &mut rng, 100)?;
    let mut orders = Vec::new();
    for _ in 0..3 {
        let t = random_table_group(&mut rng);
        orders.push(t.order());
        bijection_triples(&t, &mut rng, 100)?;

        let mut latin = t.grid();
        latin[1][0] = latin[1][1];
        ensure(
            matches!(
                TableGroup::from_grid(None, &latin),
                Err(TableError::LatinRow { .. })
            ),
            "corrupted row accepted",
        )?;
        // Swapping two labels inside the product table only (not in the
        // index set) keeps the Latin property but breaks associativity.
        let n = t.order();
        let (a, b) = (
            t.identity_index() as i64,
            ((t.identity_index() as usize + 1) % n) as i64,
        );
        let swapped: Vec<Vec<i64>> = t
            .grid()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| {
                        if x == a {
                            b
                        } else if x == b {
                            a
                        } else {
                            x
                        }
                    })
                    .collect()
            })
            .collect();
        ensure(
            matches!(
                TableGroup::from_grid(None, &swapped),
                Err(TableError::Associativity { .. } | TableError::NoIdentity)
            ),
            "corrupted table accepted",
        )?;
    }
    let quasigroup: Vec<Vec<i64>> = (0..5)
        .map(|x: i64| (0..5).map(|y: i64| (2 * x + 3 * y).rem_euclid(5)).collect())
        .collect();
    ensure(
        matches!(
            TableGroup::from_grid(None, &quasigroup),
            Err(TableError::Associativity { .. })
        ),
        "non-associative quasigroup accepted",
    )?;
    Ok(format!(
        "S(3,1) and table groups of orders {orders:?}; corrupted tables rejected"
    ))
}

fn c12_determinism() -> Outcome {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_fsz-forge"))
            .args([
                "witness",
                "--p",
                "5",
                "--j",
                "1",
                "--format",
                "json",
                "--threads",
                threads,
            ])
            .output()
            .expect("run fsz-forge");
        ensure(out.status.success(), format!("exit status {}", out.status))?;
        Ok::<_, String>(out.stdout)
    };
    let a = run("1")?;
    let b = run("1")?;
    let c = run("8")?;
    ensure(a == b, "repeated runs differ")?;
    ensure(a == c, "--threads 1 and --threads 8 differ")?;
    let v: serde_json::Value = serde_json::from_slice(&a).map_err(|e| e.to_string())?;
    ensure(
        v["witness"]["count_g"] == 0 && v["witness"]["count_gm"] == 625,
        "unexpected counts",
    )?;
    Ok(format!("{} identical bytes", a.len()))
}

#[test]
fn acceptance_criteria() {
    type Criterion = (&'static str, fn() -> Outcome, Duration);
    let criteria: [Criterion; 12] = [
        (
            "1 automorphism order",
            c1_automorphism_order,
            Duration::from_secs(1),
        ),
        ("2 Y block forms", c2_y_block_forms, Duration::from_secs(1)),
        (
            "3 closed-form oracles",
            c3_closed_forms,
            Duration::from_secs(5),
        ),
        ("4 power formula", c4_power_formula, Duration::from_secs(5)),
        (
            "5 witness at (5,1)",
            c5_witness_five_one,
            Duration::from_secs(1),
        ),
        (
            "6 witness at (7,1)",
            c6_witness_seven_one,
            Duration::from_secs(60),
        ),
        (
            "7 witness at (5,2), (7,2)",
            c7_witness_j_two,
            Duration::from_secs(1),
        ),
        (
            "8 p = 3 boundary",
            c8_three_boundary,
            Duration::from_secs(1),
        ),
        ("9 FSZ of S(3,1)", c9_fsz_three_one, Duration::from_secs(35)),
        (
            "10 non-FSZ verdict",
            c10_non_fsz_verdict,
            Duration::from_secs(120),
        ),
        (
            "11 property suite",
            c11_property_suite,
            Duration::from_secs(10),
        ),
        // Budget covers three process launches.
        ("12 determinism", c12_determinism, Duration::from_secs(30)),
    ];
    let mut failures = Vec::new();
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed <= budget {
                Ok(msg)
            } else {
                Err(format!("took {elapsed:?}, budget {budget:?}"))
            }
        });
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{elapsed:.2?}]"),
            Err(msg) => {
                println!("FAIL criterion {name}: {msg} [{elapsed:.2?}]");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
