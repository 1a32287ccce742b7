//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use pencil::bifurcation::{
    classify, family_from_template, is_semicontinuous, verify_against_paper, BifurcationDiagram,
    CASE_IDS,
};
use pencil::deformation::{
    check_miniversal, check_transversal, miniversal_template, tangent_space, Variant,
};
use pencil::kronecker::{kronecker_form, kronecker_type, KroneckerType};
use pencil::pencil::{jiggle, random_equivalence};
use pencil::rng::substream;
use pencil::strata::{all_types, enumerate_types};
use pencil::{Pencil, Q};
use rand::Rng;

const ROUNDTRIP_BUDGET: Duration = Duration::from_secs(120);
const CASES_BUDGET: Duration = Duration::from_secs(60);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(failures: &[String], summary: String) -> Outcome {
    Outcome {
        ok: failures.is_empty(),
        detail: if failures.is_empty() {
            summary
        } else {
            let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
            format!("{} failures, e.g. {}", failures.len(), shown.join("; "))
        },
    }
}

fn types_up_to(k: usize) -> Vec<KroneckerType> {
    let mut out = Vec::new();
    for m in 0..=k {
        for n in 0..=k {
            out.extend(all_types(m, n));
        }
    }
    out
}

fn roundtrip() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let types = types_up_to(6);
    for t in &types {
        let canon = t.representative().canonical_pencil();
        for seed in 0..3u64 {
            let w = random_equivalence(canon.m(), canon.n(), 1000 + seed);
            let p = canon.apply_equivalence(&w).unwrap();
            match kronecker_form(&p) {
                Ok((form, w2)) => {
                    if form.kronecker_type() != *t {
                        failures.push(format!("{t} read back as {}", form.kronecker_type()));
                    } else if p.apply_equivalence(&w2).unwrap() != form.canonical_pencil() {
                        failures.push(format!("{t}: witness does not reproduce the form"));
                    }
                }
                Err(e) => failures.push(format!("{t}: {e}")),
            }
        }
    }
    let took = start.elapsed();
    if took > ROUNDTRIP_BUDGET {
        failures.push(format!("took {took:?}"));
    }
    outcome(
        &failures,
        format!("{} types x 3 equivalences in {took:.1?}", types.len()),
    )
}

fn codim_consistency() -> Outcome {
    let mut failures = Vec::new();
    let types = types_up_to(4);
    for t in &types {
        let tm = miniversal_template(&t.representative()).unwrap();
        let (m, n) = (tm.m(), tm.n());
        let rank = tangent_space(&tm.base).rank();
        if tm.slots.len() != 2 * m * n - rank {
            failures.push(format!(
                "{t}: {} slots, codim {}",
                tm.slots.len(),
                2 * m * n - rank
            ));
        }
    }
    outcome(&failures, format!("{} forms", types.len()))
}

fn miniversality() -> Outcome {
    let mut failures = Vec::new();
    let mut deletions = 0;
    let types = types_up_to(4);
    for t in &types {
        let tm = miniversal_template(&t.representative()).unwrap();
        for v in [Variant::M, Variant::Mdoubleprime] {
            if !check_miniversal(&tm, v).unwrap() {
                failures.push(format!("{t} {v:?} not miniversal"));
            }
        }
        for k in 0..tm.slots.len() {
            let cut = tm.without_slot(k);
            deletions += 1;
            if check_miniversal(&cut, Variant::M).unwrap() {
                failures.push(format!("{t}: still miniversal without slot {k}"));
            }
            if !tm.slots[k].removed_in_mprime
                && check_miniversal(&cut, Variant::Mdoubleprime).unwrap()
            {
                failures.push(format!("{t}: M″ still miniversal without slot {k}"));
            }
        }
    }
    outcome(
        &failures,
        format!("{} forms, {deletions} single-slot deletions", types.len()),
    )
}

fn transversality() -> Outcome {
    let mut failures = Vec::new();
    let types = types_up_to(4);
    for t in &types {
        let tm = miniversal_template(&t.representative()).unwrap();
        let rep = check_transversal(&tm.directions(Variant::Mprime), &tm.base).unwrap();
        if !(rep.transversal && rep.direct) {
            failures.push(format!("{t}: {rep:?}"));
        }
    }
    outcome(&failures, format!("{} forms", types.len()))
}

/// The generic type of an `m × n` pencil, written out directly.
fn generic_shape_ok(t: &KroneckerType, m: usize, n: usize) -> bool {
    let spread = |v: &[usize]| v.iter().max().unwrap_or(&0) - v.iter().min().unwrap_or(&0) <= 1;
    if m == n {
        t.deltas().is_empty()
            && t.nablas().is_empty()
            && t.eigen_segre().len() == n
            && t.eigen_segre().iter().all(|s| s == &[1])
    } else if m < n {
        t.deltas().is_empty() && t.eigen_segre().is_empty() && spread(t.nablas())
    } else {
        t.nablas().is_empty() && t.eigen_segre().is_empty() && spread(t.deltas())
    }
}

fn jiggling() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for (m, n) in [(3, 3), (2, 4), (4, 2), (3, 5)] {
        let types = all_types(m, n);
        for i in 0..50u64 {
            let mut rng = substream(0x5eed, (m * 10 + n) as u64 * 1000 + i);
            let t = &types[rng.random_range(0..types.len())];
            let canon = t.representative().canonical_pencil();
            let p: Pencil = canon
                .apply_equivalence(&random_equivalence(m, n, i))
                .unwrap();
            let q = jiggle(&p, Q::ratio(1, 100).re(), i).unwrap();
            let got = kronecker_type(&q);
            count += 1;
            if !generic_shape_ok(&got, m, n) {
                failures.push(format!("{m}x{n} from {t}: {got}"));
            }
        }
    }
    outcome(&failures, format!("{count} jiggled pencils"))
}

fn ty(d: &[usize], q: &[usize], e: &[&[usize]]) -> KroneckerType {
    KroneckerType::new(
        d.to_vec(),
        q.to_vec(),
        e.iter().map(|s| s.to_vec()).collect(),
    )
    .unwrap()
}

/// The origin types written down in the classification, listed for every
/// `r`, `t` up to a bound and kept when they fit `m × n`.
fn listed(codim: usize, m: usize, n: usize) -> BTreeSet<KroneckerType> {
    let mut v = Vec::new();
    let simple = |k: usize| vec![&[1usize][..]; k];
    for r in 1..=6 {
        match codim {
            1 => {
                v.push(ty(&[r, r + 2], &[], &[]));
                v.push(ty(&[r], &[], &[&[1]]));
            }
            2 => {
                v.push(ty(&[r, r + 3], &[], &[]));
                v.push(ty(&[r, r, r + 2], &[], &[]));
                v.push(ty(&[r, r + 2, r + 2], &[], &[]));
                v.push(ty(&[r, r], &[], &[&[1]]));
                v.push(ty(&[r, r + 1], &[], &[&[1]]));
                v.push(ty(&[r], &[], &[&[1], &[1]]));
            }
            _ => {}
        }
    }
    for t in 0..=6 {
        match codim {
            1 if t >= 1 => {
                let mut e = vec![&[2usize][..]];
                e.extend(simple(t - 1));
                v.push(ty(&[], &[], &e));
            }
            2 if t >= 1 => {
                let mut e = vec![&[3usize][..]];
                e.extend(simple(t - 1));
                v.push(ty(&[], &[], &e));
                if t >= 2 {
                    let mut e = vec![&[2usize][..], &[2]];
                    e.extend(simple(t - 2));
                    v.push(ty(&[], &[], &e));
                }
            }
            _ => {}
        }
    }
    if codim == 2 {
        v.push(ty(&[1], &[1], &[]));
    }
    let flips: Vec<KroneckerType> = v.iter().map(KroneckerType::flipped).collect();
    v.extend(flips);
    v.into_iter()
        .filter(|t| t.rows() == m && t.cols() == n)
        .collect()
}

fn generic_lists() -> Outcome {
    let mut failures = Vec::new();
    let mut seen = [0usize; 3];
    for m in 0..=5 {
        for n in 0..=5 {
            let list = enumerate_types(m, n, 2);
            for k in 0..=2 {
                let got: BTreeSet<KroneckerType> = list
                    .iter()
                    .filter(|d| d.stratum_codim == k)
                    .map(|d| d.ktype.clone())
                    .collect();
                seen[k] += got.len();
                let ok = if k == 0 {
                    got.len() == 1 && got.iter().all(|t| generic_shape_ok(t, m, n))
                } else {
                    got == listed(k, m, n)
                };
                if !ok {
                    let want = listed(k, m, n);
                    failures.push(format!(
                        "{m}x{n} codim {k}: extra {:?}, missing {:?}",
                        got.difference(&want)
                            .map(|t| t.to_string())
                            .collect::<Vec<_>>(),
                        want.difference(&got)
                            .map(|t| t.to_string())
                            .collect::<Vec<_>>()
                    ));
                }
            }
        }
    }
    outcome(
        &failures,
        format!(
            "{} codim-0, {} codim-1, {} codim-2 origins",
            seen[0], seen[1], seen[2]
        ),
    )
}

fn proof_cases(diagrams: &mut Vec<BifurcationDiagram>) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for id in CASE_IDS {
        let uses_r = !matches!(id, "t21.5" | "t22.1" | "t22.8" | "t22.9");
        let uses_t = matches!(id, "t21.5" | "t22.8" | "t22.9");
        let rs: Vec<usize> = if uses_r { (1..=3).collect() } else { vec![1] };
        let ts: Vec<usize> = if uses_t { (1..=3).collect() } else { vec![0] };
        for &r in &rs {
            for &t in &ts {
                if id == "t22.9" && t < 2 {
                    continue;
                }
                match verify_against_paper(id, r, t, 7) {
                    Ok(reports) => {
                        for c in reports {
                            checked += 1;
                            if !c.passed {
                                failures
                                    .push(format!("{id} r={r} t={t} {}: {:?}", c.variant, c.notes));
                            }
                            let curves: Vec<String> = c
                                .diagram
                                .curves()
                                .iter()
                                .map(|(p, _)| p.to_string())
                                .collect();
                            let want: &[&str] = match id {
                                "t22.6" => &["b"],
                                "t22.7" | "t22.9" => &["b", "g"],
                                "t22.8" => &["4*b^3 - 27*g^2"],
                                _ => &[],
                            };
                            if curves != want {
                                failures.push(format!(
                                    "{id} r={r} t={t} {}: curves {curves:?}",
                                    c.variant
                                ));
                            }
                            diagrams.push(c.diagram);
                        }
                    }
                    Err(e) => failures.push(format!("{id} r={r} t={t}: {e}")),
                }
            }
        }
    }
    let took = start.elapsed();
    if took > CASES_BUDGET {
        failures.push(format!("took {took:?}"));
    }
    outcome(&failures, format!("{checked} case variants in {took:.1?}"))
}

fn semicontinuity(diagrams: &mut Vec<BifurcationDiagram>) -> Outcome {
    for t in types_up_to(4) {
        let tm = miniversal_template(&t.representative()).unwrap();
        if tm.live_slots(Variant::Mprime).len() <= 2 {
            let f = family_from_template(&tm, Variant::Mprime).unwrap();
            diagrams.push(classify(&f, 3).unwrap());
        }
    }
    let failures: Vec<String> = diagrams
        .iter()
        .filter(|d| !is_semicontinuous(d))
        .map(|d| d.to_string())
        .collect();
    outcome(&failures, format!("{} diagrams", diagrams.len()))
}

fn main() {
    let mut diagrams = Vec::new();
    let results = [
        ("1 kronecker round trip", roundtrip()),
        ("2 codimension consistency", codim_consistency()),
        ("3 miniversality criterion", miniversality()),
        ("4 transversality and directness", transversality()),
        ("5 jiggling reaches the generic type", jiggling()),
        ("6 generic lists", generic_lists()),
        ("7 proof-case diagrams", proof_cases(&mut diagrams)),
        ("8 semicontinuity", semicontinuity(&mut diagrams)),
    ];
    let mut all = true;
    for (name, o) in &results {
        println!(
            "criterion {name}: {} ({})",
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
        all &= o.ok;
    }
    if !all {
        std::process::exit(1);
    }
}
