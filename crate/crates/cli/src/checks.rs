use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use levelzero_core::alcove::{Alcove, Universe};
use levelzero_core::classes::*;
use levelzero_core::classical::{parity_f, sign_pattern};
use levelzero_core::labels::{alpha_index, h_map};
use levelzero_core::lattice::QmodZVector;
use levelzero_core::root_datum::Family;
use levelzero_core::weyl::WeylGroup;
use levelzero_core::Error;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::commands::{base_vertex, envelope, Report};
use crate::config::Job;
use crate::error::CliError;

struct Outcome {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn outcome(name: &'static str, failures: Vec<String>, total: usize) -> Outcome {
    let detail = match failures.first() {
        None => format!("{total} cases"),
        Some(f) => format!("{} of {total} failed, first: {f}", failures.len()),
    };
    Outcome { name, passed: failures.is_empty(), detail }
}

fn canonical_labels(ctx: &ClassContext, labels: &[ClassLabel]) -> Outcome {
    let g = ctx.group();
    let mut bad = vec![];
    for l in labels {
        if !ctx.satisfies(&l.s, l.w) || ctx.canonicalize(&l.s, l.w).as_ref() != Ok(l) {
            bad.push(format!("{} not canonical", l.s));
            continue;
        }
        for v in 0..g.order() {
            if ctx.canonicalize(&g.act(v, &l.s), g.twisted_conj(v, l.w)).as_ref() != Ok(l) {
                bad.push(format!("{} moves under {v}", l.s));
                break;
            }
        }
    }
    outcome("labels canonical and invariant", bad, labels.len())
}

fn theta_round_trip(g: &WeylGroup, q: u64, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let mut bad = vec![];
    for _ in 0..200 {
        let w = rng.gen_range(0..g.order());
        let grp = torus_character_group(g, w, q)?;
        let theta: Vec<BigInt> = grp.invariant_factors().iter().map(|d| BigInt::from(rng.gen::<u32>()) % d).collect();
        let pair = TorusPair { w, theta };
        let s = theta_to_s(g, q, &pair)?;
        if s_to_theta(g, q, w, &s)? != pair {
            bad.push(format!("w = {w}"));
        }
    }
    Ok(outcome("theta/s round trip", bad, 200))
}

fn parity_lemmas(g: &WeylGroup) -> Outcome {
    let n = g.rank();
    let mut bad = vec![];
    let mut total = 0;
    for code in 0..2usize.pow(n as u32) {
        let fr: Vec<(i64, i64)> = (0..n).map(|i| ((code >> i & 1) as i64, 2)).collect();
        let s = QmodZVector::from_fractions(&fr);
        let pat = sign_pattern(&s);
        let k = g.connected_stabilizer(&s);
        for &w in g.stabilizer(&s).elements() {
            let f = parity_f(&pat, &g.signed_permutation(w).unwrap());
            total += 1;
            if k.elements().iter().any(|&x| parity_f(&pat, &g.signed_permutation(g.mul(x, w)).unwrap()) != f) {
                bad.push(format!("s = {s}, w = {w}: left W°_s"));
            }
            if (0..g.order()).any(|u| {
                let c = g.mul(g.mul(u, w), g.inverse(u));
                parity_f(&sign_pattern(&g.act(u, &s)), &g.signed_permutation(c).unwrap()) != f
            }) {
                bad.push(format!("s = {s}, w = {w}: conjugation"));
            }
        }
    }
    outcome("parity invariances", bad, total)
}

fn system_checks(job: &Job, g: &WeylGroup, rng: &mut ChaCha8Rng, out: &mut Vec<Outcome>) -> Result<(), CliError> {
    let alcove = Alcove::new(g)?;
    let base = base_vertex(job, &alcove, g)?;
    let u = Universe::new(&alcove, g, job.q, job.bound)?;
    let systems = u.minimal_systems();
    let ctx = ClassContext::global(g, job.q);

    let mut seen = vec![0usize; u.size()];
    for m in &systems {
        for &a in &m.nodes {
            seen[a] += 1;
        }
    }
    let bad: Vec<String> = seen.iter().enumerate().filter(|(_, &c)| c != 1).map(|(a, c)| format!("node {a} covered {c} times")).collect();
    out.push(outcome("minimal systems partition the universe", bad, u.size()));

    let mut bad = vec![];
    for m in &systems {
        let nodes: BTreeSet<usize> = m.nodes.iter().copied().collect();
        if u.closure_nodes(&BTreeSet::from([m.nodes[0]])) != nodes {
            bad.push(format!("system at node {} is not a closure", m.nodes[0]));
        }
        let r = u.coherence_check(&u.to_system(&nodes));
        if !r.coherent {
            bad.push(r.violations.join("; "));
        }
    }
    out.push(outcome("minimal systems are coherent closures", bad, systems.len()));

    let mut bad = vec![];
    let rounds = 200;
    for _ in 0..rounds {
        let pick = |rng: &mut ChaCha8Rng, k: usize| -> BTreeSet<usize> { (0..k).map(|_| rng.gen_range(0..u.size())).collect() };
        let (ka, kb) = (rng.gen_range(1..4), rng.gen_range(0..4));
        let a = pick(rng, ka);
        let extra = pick(rng, kb);
        let b: BTreeSet<usize> = a.union(&extra).copied().collect();
        let ca = u.closure_nodes(&a);
        if !ca.is_superset(&a) || u.closure_nodes(&ca) != ca || !u.closure_nodes(&b).is_superset(&ca) {
            bad.push(format!("seed {a:?}"));
        }
    }
    out.push(outcome("closure extensive, idempotent, monotone", bad, rounds));

    let mut per: BTreeMap<ClassLabel, BTreeSet<Vec<BigInt>>> = BTreeMap::new();
    let mut counts: BTreeMap<ClassLabel, usize> = BTreeMap::new();
    let mut bad = vec![];
    for m in &systems {
        let h = h_map(&ctx, &m.global);
        let alphas: BTreeSet<Vec<BigInt>> = m.nodes.iter().filter_map(|&a| alpha_index(&u, a, base, &h).ok()).collect();
        if alphas.len() != 1 {
            bad.push(format!("system at node {} has {} alpha values", m.nodes[0], alphas.len()));
        }
        per.entry(m.global.clone()).or_default().extend(alphas);
        *counts.entry(m.global.clone()).or_default() += 1;
    }
    for (l, c) in &counts {
        let h = h_map(&ctx, l);
        if h.kernel_size != *c || per[l].len() != *c {
            bad.push(format!("s = {}: {} systems, |ker h| = {}, {} alpha values", l.s, c, h.kernel_size, per[l].len()));
        }
    }
    out.push(outcome("systems per label = |ker h|, alpha bijective", bad, counts.len()));
    Ok(())
}

pub fn check(job: &Job) -> Result<Report, CliError> {
    let g = WeylGroup::new(&job.datum)?;
    let ctx = ClassContext::global(&g, job.q);
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e7e1);
    let labels = ctx.classes(job.bound)?;
    let mut out = vec![canonical_labels(&ctx, &labels)];
    out.push(theta_round_trip(&g, job.q, &mut rng)?);
    if matches!(job.family, Family::Sp | Family::SOevenSplit | Family::SOevenQuasisplit) {
        out.push(parity_lemmas(&g));
    }
    if job.datum.is_split() {
        system_checks(job, &g, &mut rng, &mut out)?;
    }
    let failed = out.iter().filter(|o| !o.passed).count();
    let mut text = String::new();
    for o in &out {
        let _ = writeln!(text, "{} {}: {}", if o.passed { "ok  " } else { "FAIL" }, o.name, o.detail);
    }
    let rows: Vec<Value> = out.iter().map(|o| json!({ "name": o.name, "passed": o.passed, "detail": o.detail })).collect();
    let body = json!({ "checks": rows, "failed": failed });
    Ok(Report { json: envelope("check", job, body), text, failed })
}
