//! Deciding `FSZ_n`: a finite group is `FSZ_n` exactly when
//! `|G_n(u, g)| = |G_n(u, g^m)|` for all commuting `u, g` and all `m`
//! coprime to `|G|`.
//!
//! Two reductions keep the scan finite and small:
//! * `g^m` only depends on `m` modulo `|g|`, so one `m` per unit class
//!   modulo `|g|` suffices, lifted to be coprime to `|G|`.
//! * `|G_n(u, g)| = |G_n(x u x^{-1}, x g x^{-1})|`, so `u` may be restricted
//!   to conjugacy class representatives while `g` runs over `C_G(u)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gncount::{exponent, gn_count_structured, gn_profile, Count, PowerMap};
use crate::group::{checked_size, FiniteGroup};
use crate::spgroup::{SElement, SpGroup};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One exponent `m` per distinct `g^m` with `m` a unit modulo `|g|`,
/// excluding `m = 1`, each lifted to a residue coprime to `|G|`.
pub fn residue_witness_classes(group_order: u64, element_order: u64) -> Vec<u64> {
    (2..element_order)
        .filter(|&m| gcd(m, element_order) == 1)
        .map(|m| {
            (0..)
                .map(|k| m + k * element_order)
                .find(|&lift| gcd(lift, group_order) == 1)
                .expect("a unit modulo |g| lifts to a unit modulo |G|")
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Fsz,
    NonFsz,
    /// Only the designated pair was examined and it showed no violation.
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanKind {
    /// `u` over conjugacy class representatives, `g` over `C_G(u)`.
    Reduced,
    /// Every commuting pair.
    Full,
    /// Only `u = b a_1`, `g = a_1^{p^j}`, `m = 2` in `S(p,j)`.
    DesignatedPair,
}

/// Counts at a pair `(u, g)` and the power `g^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCounts {
    pub u: String,
    pub g: String,
    pub m: u64,
    pub gm: String,
    pub count_g: Count,
    pub count_gm: Count,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u_index: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_index: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FszVerdict {
    pub group: String,
    pub group_order: String,
    pub n: u64,
    pub verdict: Verdict,
    pub label: String,
    pub scan: ScanKind,
    /// Present iff `verdict` is `NonFsz`.
    pub witness: Option<PairCounts>,
    /// Counts at the designated pair, for [`spj_witness`].
    #[serde(skip_serializing_if = "Option::is_none")]
    pub designated: Option<PairCounts>,
    /// Number of `u` values the scan ranges over.
    pub u_candidates: u64,
    /// Commuting pairs `(u, g)` examined up to and including the witness.
    pub pairs_examined: u64,
}

impl FszVerdict {
    pub fn is_fsz(&self) -> bool {
        self.verdict == Verdict::Fsz
    }
}

fn label(verdict: Verdict, n: u64, scan: ScanKind) -> String {
    let base = match verdict {
        Verdict::Fsz => format!("FSZ_{n}"),
        Verdict::NonFsz => format!("non-FSZ_{n}"),
        Verdict::Undetermined => format!("undetermined FSZ_{n}"),
    };
    if scan == ScanKind::DesignatedPair {
        format!("{base} (partial scan)")
    } else {
        base
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FszOptions {
    /// Restrict `u` to conjugacy class representatives.
    pub reduction: bool,
    pub limit: u64,
}

impl Default for FszOptions {
    fn default() -> Self {
        FszOptions {
            reduction: true,
            limit: crate::spgroup::DEFAULT_ENUMERATION_LIMIT,
        }
    }
}

/// Index of the least element of each conjugacy class, ascending.
pub fn conjugacy_class_representatives<G: FiniteGroup>(group: &G, limit: u64) -> Result<Vec<u64>> {
    let size = checked_size(group, limit)?;
    let gens: Vec<(G::Elem, G::Elem)> = group
        .generators()
        .into_iter()
        .map(|h| {
            let hi = group.invert(&h);
            (h, hi)
        })
        .collect();
    let mut seen = vec![false; size as usize];
    let mut reps = Vec::new();
    for i in 0..size {
        if seen[i as usize] {
            continue;
        }
        reps.push(i);
        seen[i as usize] = true;
        let mut frontier = vec![group.element_at(i)];
        while let Some(x) = frontier.pop() {
            for (h, hi) in &gens {
                let y = group.multiply(&group.multiply(h, &x), hi);
                let iy = group.index_of(&y) as usize;
                if !seen[iy] {
                    seen[iy] = true;
                    frontier.push(y);
                }
            }
        }
    }
    Ok(reps)
}

/// For every element: its order, and the least index among the generators
/// of the cyclic subgroup it generates.
fn cyclic_classes<G: FiniteGroup>(group: &G, size: u64) -> (Vec<u64>, Vec<u32>) {
    const UNSET: u32 = u32::MAX;
    let mut orders = vec![0u64; size as usize];
    let mut rep = vec![UNSET; size as usize];
    let e = group.identity();
    for i in 0..size {
        if rep[i as usize] != UNSET {
            continue;
        }
        let g = group.element_at(i);
        let mut powers = vec![group.index_of(&g)];
        let mut y = g.clone();
        while y != e {
            y = group.multiply(&y, &g);
            powers.push(group.index_of(&y));
        }
        let o = powers.len() as u64;
        for (idx, &p) in powers.iter().enumerate() {
            let exp = idx as u64 + 1;
            let d = gcd(exp, o);
            orders[p as usize] = o / d;
            if d == 1 {
                rep[p as usize] = i as u32;
            }
        }
    }
    (orders, rep)
}

struct Violation<E> {
    u: E,
    g: E,
    m: u64,
    gm: E,
    count_g: u32,
    count_gm: u32,
}

/// Decides `FSZ_n` for an enumerable group. The first violation in the
/// order (u, g, m) is reported, so the result does not depend on the
/// number of worker threads.
pub fn check_fsz_n<G: FiniteGroup>(group: &G, n: u64, opts: FszOptions) -> Result<FszVerdict> {
    let size = checked_size(group, opts.limit.min(u32::MAX as u64 - 1))?;
    let map = PowerMap::new(group, n, opts.limit)?;
    let (orders, rep) = cyclic_classes(group, size);
    let u_list: Vec<u64> = if opts.reduction {
        conjugacy_class_representatives(group, opts.limit)?
    } else {
        (0..size).collect()
    };

    let scan_u = |ui: u64| -> (u64, Option<Violation<G::Elem>>) {
        let u = group.element_at(ui);
        let counts = gn_profile(group, &map, &u);
        let mut pairs = 0u64;
        let mut bad: Option<u32> = None;
        for gi in 0..size {
            let g = group.element_at(gi);
            if group.multiply(&u, &g) != group.multiply(&g, &u) {
                continue;
            }
            pairs += 1;
            let r = rep[gi as usize];
            if counts[gi as usize] != counts[r as usize] && bad.is_none_or(|b| r < b) {
                bad = Some(r);
            }
        }
        let violation = bad.map(|r| {
            let g = group.element_at(r as u64);
            let count_g = counts[r as usize];
            residue_witness_classes(size, orders[r as usize])
                .into_iter()
                .find_map(|m| {
                    let gm = group.pow(&g, m);
                    let count_gm = counts[group.index_of(&gm) as usize];
                    (count_gm != count_g).then(|| Violation {
                        u: u.clone(),
                        g: g.clone(),
                        m,
                        gm,
                        count_g,
                        count_gm,
                    })
                })
                .expect("a differing class member is some g^m")
        });
        (pairs, violation)
    };

    let block = (rayon::current_num_threads() * 2).max(1);
    let mut pairs_examined = 0u64;
    let mut found = None;
    for chunk in u_list.chunks(block) {
        let results: Vec<_> = chunk.par_iter().map(|&ui| scan_u(ui)).collect();
        for (pairs, violation) in results {
            pairs_examined += pairs;
            if violation.is_some() {
                found = violation;
                break;
            }
        }
        if found.is_some() {
            break;
        }
    }

    let scan = if opts.reduction {
        ScanKind::Reduced
    } else {
        ScanKind::Full
    };
    let verdict = if found.is_some() {
        Verdict::NonFsz
    } else {
        Verdict::Fsz
    };
    let witness = found.map(|v| PairCounts {
        u: group.label(&v.u),
        g: group.label(&v.g),
        m: v.m,
        gm: group.label(&v.gm),
        count_g: Count::from(v.count_g as u64),
        count_gm: Count::from(v.count_gm as u64),
        u_index: Some(group.index_of(&v.u)),
        g_index: Some(group.index_of(&v.g)),
    });
    Ok(FszVerdict {
        group: group.describe(),
        group_order: size.to_string(),
        n,
        verdict,
        label: label(verdict, n, scan),
        scan,
        witness,
        designated: None,
        u_candidates: u_list.len() as u64,
        pairs_examined,
    })
}

/// Verdicts for every `n` dividing the exponent of the group.
#[derive(Clone, Debug, Serialize)]
pub struct FszSummary {
    pub group: String,
    pub exponent: u64,
    pub fsz: bool,
    pub verdicts: Vec<FszVerdict>,
    pub notes: Vec<String>,
}

fn divisors(x: u64) -> Vec<u64> {
    (1..=x).filter(|d| x.is_multiple_of(*d)).collect()
}

/// `FSZ` means `FSZ_n` for every `n`; since `a^n` only depends on `n`
/// modulo `|a|`, checking the divisors of the exponent is enough.
pub fn check_fsz<G: FiniteGroup>(group: &G, opts: FszOptions) -> Result<FszSummary> {
    let exp = exponent(group, opts.limit)?;
    let verdicts = divisors(exp)
        .into_iter()
        .map(|n| check_fsz_n(group, n, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut notes = vec![format!(
        "FSZ_n depends only on gcd(n, exp(G)); checked n | {exp}"
    )];
    notes.push(if opts.reduction {
        "u over conjugacy class representatives, g over C_G(u)".to_string()
    } else {
        "all commuting pairs (u, g)".to_string()
    });
    notes.push("one m per unit class modulo |g|, lifted coprime to |G|".to_string());
    Ok(FszSummary {
        group: group.describe(),
        exponent: exp,
        fsz: verdicts.iter().all(FszVerdict::is_fsz),
        verdicts,
        notes,
    })
}

/// Counts `|G_{p^j}(b a_1, a_1^{p^j})|` and `|G_{p^j}(b a_1, a_1^{2p^j})|`
/// with the structured counter.
///
/// For `p > 3` the first must be empty and the second not, giving a
/// non-`FSZ_{p^j}` witness with `m = 2`; anything else is a verification
/// error. For `p = 3`, `a_1^{2p^j}` is the inverse of `a_1^{p^j}` and the
/// counts are reported without a verdict.
pub fn spj_witness(group: &SpGroup) -> Result<FszVerdict> {
    let params = group.params();
    let pj = params.p_pow_j();
    let u = group.multiply(&group.b(), &group.a(1));
    let g = group.a1_pow(pj as i128);
    let gm = group.a1_pow(2 * pj as i128);
    let count_g = gn_count_structured(group, &u, &g)?.count;
    let count_gm = gn_count_structured(group, &u, &gm)?.count;
    let index = |x: &SElement| group.size().map(|_| group.index_of(x));
    let pair = PairCounts {
        u: group.format_element(&u),
        g: group.format_element(&g),
        m: 2,
        gm: group.format_element(&gm),
        count_g,
        count_gm,
        u_index: index(&u),
        g_index: index(&g),
    };

    let verdict = if params.p() > 3 {
        if !pair.count_g.is_zero() || pair.count_gm.is_zero() {
            return Err(Error::Verification(format!(
                "{}: expected |G(u, a1^{pj})| = 0 < |G(u, a1^{})|, got {} and {}",
                params,
                2 * pj,
                pair.count_g,
                pair.count_gm
            )));
        }
        Verdict::NonFsz
    } else if pair.count_g != pair.count_gm {
        Verdict::NonFsz
    } else {
        Verdict::Undetermined
    };
    let scan = ScanKind::DesignatedPair;
    Ok(FszVerdict {
        group: params.to_string(),
        group_order: params.group_order().to_string(),
        n: pj,
        verdict,
        label: label(verdict, pj, scan),
        scan,
        witness: (verdict == Verdict::NonFsz).then(|| pair.clone()),
        designated: Some(pair),
        u_candidates: 1,
        pairs_examined: 1,
    })
}

/// `FSZ_n` for `S(p,j)`: a full scan when the group is enumerable, the
/// designated pair when it is not and `n = p^j`, otherwise a guard error.
pub fn check_fsz_n_spj(group: &SpGroup, n: u64, opts: FszOptions) -> Result<FszVerdict> {
    match group.enumerable_size(opts.limit) {
        Ok(_) => check_fsz_n(group, n, opts),
        Err(e) if n != group.params().p_pow_j() => Err(e),
        Err(_) => spj_witness(group),
    }
}
