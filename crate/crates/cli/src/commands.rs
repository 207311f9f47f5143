use std::path::Path;

use fsz_core::construction::verify_construction;
use fsz_core::fszcheck::{
    check_fsz, check_fsz_n, check_fsz_n_spj, spj_witness, FszOptions, FszSummary, FszVerdict,
    PairCounts,
};
use fsz_core::gncount::{gn_count_bruteforce, gn_count_structured, StructuredCount};
use fsz_core::spgroup::{structure_report, StructureReport};
use fsz_core::{Error, GroupParams, SpGroup, TableGroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::report::{Report, Row};

/// Why a command could not produce a report.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or input files (exit 1).
    Usage(String),
    /// A computation contradicted a known identity (exit 2).
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(msg) => Failure::Verification(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

pub type CmdResult = Result<Report, Failure>;

pub struct Settings {
    pub seed: u64,
    pub limit: u64,
}

fn tag(params: GroupParams) -> String {
    format!("p={};j={}", params.p(), params.j())
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

pub fn group(p: u64, j: u32) -> Result<SpGroup, Failure> {
    Ok(SpGroup::new(GroupParams::new(p, j)?))
}

#[derive(Serialize)]
struct PowerSample {
    samples: u64,
    mismatches: u64,
    passed: bool,
}

/// `power_pj` against square-and-multiply on `samples` random elements,
/// plus one element for every `b`-exponent.
fn power_sample(group: &SpGroup, samples: u64, rng: &mut ChaCha8Rng) -> PowerSample {
    let pj = group.params().p_pow_j();
    let mut elements: Vec<_> = (0..group.params().b_order())
        .map(|k| group.random_with_b_exponent(rng, k))
        .collect();
    elements.extend((0..samples).map(|_| group.random_element(rng)));
    let mut total = 0;
    let mut mismatches = 0;
    for x in &elements {
        total += 1;
        if group.power_pj(x) != group.power_generic(x, pj) {
            mismatches += 1;
        }
    }
    PowerSample {
        samples: total,
        mismatches,
        passed: mismatches == 0,
    }
}

#[derive(Serialize)]
struct VerifyBody {
    params: GroupParams,
    construction: fsz_core::construction::VerificationReport,
    power_sample: PowerSample,
    structure: StructureReport,
}

pub fn verify(p: u64, j: u32, samples: u64, s: &Settings) -> CmdResult {
    let group = group(p, j)?;
    let params = group.params();
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let construction = verify_construction(params);
    let sample = power_sample(&group, samples, &mut rng);
    let structure = structure_report(&group, s.limit, samples, &mut rng);

    let t = tag(params);
    let mut rows: Vec<Row> = construction
        .checks
        .iter()
        .map(|c| Row::new(&c.name, &t, pass(c.passed)))
        .collect();
    rows.push(Row::new(
        "power_formula_sample",
        &t,
        format!("{} ({} elements)", pass(sample.passed), sample.samples),
    ));
    rows.push(Row::new("group_order", &t, &structure.group_order));
    rows.push(Row::new("a1_order", &t, structure.a1_order));
    rows.push(Row::new(
        "center",
        &t,
        format!(
            "{} (<{}> of order {}, {})",
            pass(structure.center_ok),
            structure.center_generator,
            structure.expected_center_order,
            match structure.center_order {
                Some(c) => format!("enumerated order {c}"),
                None => format!("{} samples", structure.samples),
            }
        ),
    ));
    let ok = construction.all_passed() && sample.passed && structure.center_ok;
    let body = VerifyBody {
        params,
        construction,
        power_sample: sample,
        structure,
    };
    Ok(Report::new(format!("verify {params}"), &body, rows, ok))
}

fn verdict_rows(v: &FszVerdict) -> Vec<Row> {
    let params = format!("n={}", v.n);
    let mut rows = vec![Row::new("verdict", &params, &v.label)];
    let pair_rows = |rows: &mut Vec<Row>, prefix: &str, w: &PairCounts| {
        rows.push(Row::new(format!("{prefix}u"), &params, &w.u));
        rows.push(Row::new(format!("{prefix}g"), &params, &w.g));
        rows.push(Row::new(format!("{prefix}m"), &params, w.m));
        rows.push(Row::new(format!("{prefix}count_g"), &params, &w.count_g));
        rows.push(Row::new(format!("{prefix}count_gm"), &params, &w.count_gm));
    };
    if let Some(w) = &v.witness {
        pair_rows(&mut rows, "witness_", w);
    } else if let Some(d) = &v.designated {
        pair_rows(&mut rows, "designated_", d);
    }
    rows.push(Row::new("pairs_examined", &params, v.pairs_examined));
    rows
}

pub fn witness(p: u64, j: u32) -> CmdResult {
    let group = group(p, j)?;
    let v = spj_witness(&group)?;
    let mut rows = verdict_rows(&v);
    for r in &mut rows {
        r.params = format!("{};{}", tag(group.params()), r.params);
    }
    Ok(Report::new(
        format!("witness {}", group.params()),
        &v,
        rows,
        true,
    ))
}

#[derive(Serialize)]
struct BruteBody {
    count: u64,
    witnesses: Vec<String>,
}

#[derive(Serialize)]
struct CountBody {
    group: String,
    n: u64,
    u: String,
    g: String,
    structured: Option<StructuredCount>,
    brute_force: Option<BruteBody>,
    agree: Option<bool>,
}

pub fn count(
    p: u64,
    j: u32,
    n: u64,
    u: &str,
    g: &str,
    force_brute: bool,
    s: &Settings,
) -> CmdResult {
    if n == 0 {
        return Err(Failure::Usage("n must be positive".into()));
    }
    let group = group(p, j)?;
    let params = group.params();
    let u = group.parse_element(u)?;
    let g = group.parse_element(g)?;

    let structured = if n == params.p_pow_j() {
        Some(gn_count_structured(&group, &u, &g)?)
    } else {
        None
    };
    let brute = match group.enumerable_size(s.limit) {
        Ok(_) => Some(gn_count_bruteforce(&group, n, &u, &g, s.limit)?),
        Err(e) if force_brute || structured.is_none() => return Err(e.into()),
        Err(_) => None,
    };
    let agree = match (&structured, &brute) {
        (Some(a), Some(b)) => Some(a.count == b.count),
        _ => None,
    };

    let t = format!("{};n={n}", tag(params));
    let mut rows = vec![
        Row::new("u", &t, group.format_element(&u)),
        Row::new("g", &t, group.format_element(&g)),
    ];
    if let Some(c) = &structured {
        rows.push(Row::new("count_structured", &t, &c.count));
    }
    if let Some(b) = &brute {
        rows.push(Row::new("count_brute_force", &t, b.count));
    }
    if let Some(a) = agree {
        rows.push(Row::new("counters_agree", &t, a));
    }
    let body = CountBody {
        group: params.to_string(),
        n,
        u: group.format_element(&u),
        g: group.format_element(&g),
        structured,
        brute_force: brute.map(|b| BruteBody {
            count: b.count,
            witnesses: b
                .witnesses
                .iter()
                .map(|w| group.format_element(w))
                .collect(),
        }),
        agree,
    };
    Ok(Report::new(
        format!("count G_{n}(u, g) in {params}"),
        &body,
        rows,
        agree != Some(false),
    ))
}

pub enum FszTarget<'a> {
    Spj(u64, u32),
    Table(&'a Path),
}

fn summary_rows(summary: &FszSummary) -> Vec<Row> {
    let mut rows = vec![
        Row::new("exponent", "", summary.exponent),
        Row::new("fsz", "", summary.fsz),
    ];
    for v in &summary.verdicts {
        rows.extend(verdict_rows(v));
    }
    rows
}

pub fn fsz(target: FszTarget<'_>, n: Option<u64>, reduction: bool, s: &Settings) -> CmdResult {
    let opts = FszOptions {
        reduction,
        limit: s.limit,
    };
    if n == Some(0) {
        return Err(Failure::Usage("n must be positive".into()));
    }
    match target {
        FszTarget::Spj(p, j) => {
            let group = group(p, j)?;
            let enumerable = group.enumerable_size(s.limit).is_ok();
            match n {
                Some(n) => {
                    let v = check_fsz_n_spj(&group, n, opts)?;
                    Ok(Report::new(
                        format!("fsz {}", group.params()),
                        &v,
                        verdict_rows(&v),
                        true,
                    ))
                }
                None if enumerable => {
                    let summary = check_fsz(&group, opts)?;
                    Ok(Report::new(
                        format!("fsz {}", group.params()),
                        &summary,
                        summary_rows(&summary),
                        true,
                    ))
                }
                None => {
                    let v = check_fsz_n_spj(&group, group.params().p_pow_j(), opts)?;
                    Ok(Report::new(
                        format!("fsz {}", group.params()),
                        &v,
                        verdict_rows(&v),
                        true,
                    ))
                }
            }
        }
        FszTarget::Table(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let table = TableGroup::from_json(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let title = format!("fsz {}", fsz_core::FiniteGroup::describe(&table));
            match n {
                Some(n) => {
                    let v = check_fsz_n(&table, n, opts)?;
                    Ok(Report::new(title, &v, verdict_rows(&v), true))
                }
                None => {
                    let summary = check_fsz(&table, opts)?;
                    Ok(Report::new(title, &summary, summary_rows(&summary), true))
                }
            }
        }
    }
}

pub const SELFTEST_GRID: [(u64, u32); 5] = [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)];

#[derive(Serialize)]
struct SelftestCheck {
    name: String,
    params: String,
    passed: bool,
    detail: String,
}

pub fn selftest(s: &Settings) -> CmdResult {
    let mut checks = Vec::new();
    let mut add = |name: &str, params: &str, passed: bool, detail: String| {
        checks.push(SelftestCheck {
            name: name.to_string(),
            params: params.to_string(),
            passed,
            detail,
        })
    };
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    for (p, j) in SELFTEST_GRID {
        let group = group(p, j)?;
        let params = group.params();
        let t = tag(params);
        for c in verify_construction(params).checks {
            add(&c.name, &t, c.passed, c.detail);
        }
        let sample = power_sample(&group, 1000, &mut rng);
        add(
            "power_formula_sample",
            &t,
            sample.passed,
            format!(
                "{} elements, {} mismatches",
                sample.samples, sample.mismatches
            ),
        );
        match spj_witness(&group) {
            Ok(v) => {
                let d = v
                    .designated
                    .as_ref()
                    .expect("designated counts are always reported");
                let expected = if p > 3 {
                    d.count_g.is_zero() && !d.count_gm.is_zero()
                } else {
                    d.count_g == d.count_gm
                };
                add(
                    "designated_pair",
                    &t,
                    expected,
                    format!("counts {} and {}", d.count_g, d.count_gm),
                );
                if group.enumerable_size(s.limit).is_ok() {
                    let u = group.parse_element(&d.u)?;
                    let agree = [(&d.g, &d.count_g), (&d.gm, &d.count_gm)]
                        .iter()
                        .all(|(g, c)| {
                            let g = group.parse_element(g).expect("formatted elements parse");
                            gn_count_bruteforce(&group, params.p_pow_j(), &u, &g, s.limit)
                                .map(|b| **c == b.count)
                                .unwrap_or(false)
                        });
                    add(
                        "designated_pair_brute_force",
                        &t,
                        agree,
                        "structured == brute force".into(),
                    );
                }
            }
            Err(e) => add("designated_pair", &t, false, e.to_string()),
        }
    }
    let s31 = group(3, 1)?;
    let reduced = check_fsz(
        &s31,
        FszOptions {
            reduction: true,
            limit: s.limit,
        },
    )?;
    let full = check_fsz(
        &s31,
        FszOptions {
            reduction: false,
            limit: s.limit,
        },
    )?;
    add(
        "fsz_s31",
        "p=3;j=1",
        reduced.fsz && full.fsz,
        format!(
            "exponent {}, reduced and full scans agree",
            reduced.exponent
        ),
    );

    let rows = checks
        .iter()
        .map(|c| Row::new(&c.name, &c.params, pass(c.passed)))
        .collect();
    let ok = checks.iter().all(|c| c.passed);
    Ok(Report::new("selftest", &checks, rows, ok))
}
