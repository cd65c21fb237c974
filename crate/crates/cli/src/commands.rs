use std::collections::BTreeMap;
use std::fmt::Write as _;

use levelzero_core::alcove::{Alcove, Universe};
use levelzero_core::classes::{by_geometric, label_json, ClassContext, ClassLabel};
use levelzero_core::classical::rational_tag;
use levelzero_core::labels::{alpha_index, h_map, kottwitz_group, HMap};
use levelzero_core::lattice::FiniteAbelianGroup;
use levelzero_core::root_datum::Family;
use levelzero_core::weyl::WeylGroup;
use levelzero_core::Error;
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::config::Job;
use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "levelzero.report/1";

pub struct Report {
    pub json: Value,
    pub text: String,
    /// Failed checks; nonzero only for `check`.
    pub failed: usize,
}

pub(crate) fn envelope(command: &str, job: &Job, body: Value) -> Value {
    let mut out = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": job.echo(),
    });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    out
}

pub(crate) fn group_name(g: &FiniteAbelianGroup) -> String {
    if g.is_trivial() {
        return "trivial".into();
    }
    g.invariant_factors().iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
}

fn elem(e: &[BigInt]) -> String {
    format!("[{}]", e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn factors(g: &FiniteAbelianGroup) -> Vec<String> {
    g.invariant_factors().iter().map(|d| d.to_string()).collect()
}

fn tag(job: &Job, ctx: &ClassContext, l: &ClassLabel) -> Option<u8> {
    match job.family {
        Family::Sp | Family::SOevenSplit | Family::SOevenQuasisplit => rational_tag(ctx, job.family, l).ok(),
        _ => None,
    }
}

pub fn datum(job: &Job) -> Result<Report, CliError> {
    let d = &job.datum;
    let body = json!({ "datum": d.to_json(), "theta_order": d.theta_order(), "split": d.is_split() });
    Ok(Report { json: envelope("datum", job, body), text: d.to_string(), failed: 0 })
}

pub fn classes(job: &Job) -> Result<Report, CliError> {
    let g = WeylGroup::new(&job.datum)?;
    let ctx = ClassContext::global(&g, job.q);
    let labels = ctx.classes(job.bound)?;
    let mut text = format!("{}: {} rational classes with N s = 0, N = {}\n", job.datum.name(), labels.len(), job.bound);
    let mut geo = vec![];
    for (s, ls) in by_geometric(&g, &labels) {
        let _ = writeln!(text, "geometric {s}: {} rational", ls.len());
        let rational: Vec<Value> = ls
            .iter()
            .map(|l| {
                let t = tag(job, &ctx, l);
                let ell = ctx.is_elliptic(l);
                let _ = writeln!(
                    text,
                    "  s = {}  w = {:?}{}{}",
                    l.s,
                    g.word(l.w).iter().map(|k| k + 1).collect::<Vec<_>>(),
                    if ell { "  elliptic" } else { "" },
                    t.map(|t| format!("  tag [{t}]")).unwrap_or_default()
                );
                json!({ "label": label_json(&ctx, l, job.regime), "elliptic": ell, "tag": t })
            })
            .collect();
        geo.push(json!({ "geometric": s.to_strings(), "rational": rational }));
    }
    let body = json!({ "weyl_order": g.order(), "class_count": labels.len(), "geometric_classes": geo });
    Ok(Report { json: envelope("classes", job, body), text, failed: 0 })
}

fn hmap_json(ctx: &ClassContext, job: &Job, l: &ClassLabel, h: &HMap) -> Value {
    let fibers: BTreeMap<String, usize> = h.fibers.iter().map(|(k, v)| (elem(k), *v)).collect();
    json!({
        "label": label_json(ctx, l, job.regime),
        "pi0_order": h.pi0_order,
        "pi0_fixed_order": h.pi0_fixed_order,
        "domain_invariant_factors": factors(&h.domain),
        "target_invariant_factors": factors(&h.target),
        "kernel_size": h.kernel_size,
        "fibers": fibers,
    })
}

pub fn hmap(job: &Job) -> Result<Report, CliError> {
    let g = WeylGroup::new(&job.datum)?;
    let ctx = ClassContext::global(&g, job.q);
    let labels = ctx.classes(job.bound)?;
    let mut text = String::new();
    let rows: Vec<Value> = labels
        .iter()
        .map(|l| {
            let h = h_map(&ctx, l);
            let _ = writeln!(
                text,
                "s = {}  w = {:?}  pi0 {}  domain {}  |ker h| = {}",
                l.s,
                g.word(l.w).iter().map(|k| k + 1).collect::<Vec<_>>(),
                h.pi0_order,
                group_name(&h.domain),
                h.kernel_size
            );
            hmap_json(&ctx, job, l, &h)
        })
        .collect();
    // Every built datum is quasi-split, so the fiber counts at nontrivial ω are theorems only there.
    let body = json!({
        "kottwitz_group": factors(&kottwitz_group(&job.datum)),
        "ambient_quasi_split": true,
        "labels": rows,
    });
    Ok(Report { json: envelope("hmap", job, body), text, failed: 0 })
}

pub fn kottwitz(job: &Job) -> Result<Report, CliError> {
    let k = kottwitz_group(&job.datum);
    let name = group_name(&k);
    let body = json!({ "invariant_factors": factors(&k), "order": k.order().to_string(), "group": name });
    Ok(Report { json: envelope("kottwitz", job, body), text: format!("{name}\n"), failed: 0 })
}

pub(crate) fn base_vertex(job: &Job, alcove: &Alcove, g: &WeylGroup) -> Result<usize, CliError> {
    let hs = alcove.hyperspecial_vertices(g);
    let Some(choice) = &job.base_vertex else {
        return Ok(hs[0]);
    };
    let v = match alcove.facet_by_name(choice) {
        Some(v) => v,
        None => {
            let k: usize = choice.trim_start_matches('v').parse().map_err(|_| CliError::Invalid(format!("unknown vertex {choice}")))?;
            alcove.facet_by_name(&format!("v{k}")).ok_or(Error::BadVertex(k))?
        }
    };
    if !hs.contains(&v) {
        return Err(Error::BadVertex(v).into());
    }
    Ok(v)
}

pub fn decompose(job: &Job) -> Result<Report, CliError> {
    let g = WeylGroup::new(&job.datum)?;
    let alcove = Alcove::new(&g)?;
    let base = base_vertex(job, &alcove, &g)?;
    let u = Universe::new(&alcove, &g, job.q, job.bound)?;
    let ctx = ClassContext::global(&g, job.q);
    let hyper = alcove.hyperspecial_vertices(&g);
    let facets: Vec<Value> = alcove
        .facets
        .iter()
        .map(|f| {
            json!({
                "name": f.name,
                "dim": f.dim,
                "barycenter": f.barycenter.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "local_weyl_order": g.reflection_subgroup(&alcove.local_roots[f.id]).order(),
                "hyperspecial": hyper.contains(&f.id),
                "local_classes": u.labels[f.id].len(),
            })
        })
        .collect();
    let systems = u.minimal_systems();
    let mut hmaps: BTreeMap<ClassLabel, HMap> = BTreeMap::new();
    let mut per_label: BTreeMap<ClassLabel, usize> = BTreeMap::new();
    let mut text = format!(
        "{}: q = {}, N = {}, {} facets, |Omega| = {}, {} local classes, {} minimal systems\nbase vertex {}\n",
        job.datum.name(),
        job.q,
        job.bound,
        alcove.facets.len(),
        alcove.omega.len(),
        u.size(),
        systems.len(),
        alcove.facets[base].name
    );
    let mut out_systems = vec![];
    for (id, m) in systems.iter().enumerate() {
        let h = hmaps.entry(m.global.clone()).or_insert_with(|| h_map(&ctx, &m.global));
        *per_label.entry(m.global.clone()).or_default() += 1;
        let alpha = alpha_index(&u, m.nodes[0], base, h).ok();
        let members: Vec<Value> = m
            .nodes
            .iter()
            .map(|&a| {
                let (f, l) = u.pair(a);
                let fctx = alcove.context(&g, f, job.q);
                json!({
                    "facet": alcove.facets[f].name,
                    "label": label_json(&fctx, l, job.regime),
                    "elliptic": fctx.is_elliptic(l),
                })
            })
            .collect();
        let _ = writeln!(
            text,
            "system {id}: phi,sigma = (s {}, w {:?})  alpha {}  {} pairs at {}",
            m.global.s,
            g.word(m.global.w).iter().map(|k| k + 1).collect::<Vec<_>>(),
            alpha.as_deref().map(elem).unwrap_or_else(|| "?".into()),
            m.nodes.len(),
            {
                let mut names: Vec<&str> = m.nodes.iter().map(|&a| alcove.facets[u.pair(a).0].name.as_str()).collect();
                names.dedup();
                names.join(" ")
            }
        );
        out_systems.push(json!({
            "id": id,
            "global_label": label_json(&ctx, &m.global, job.regime),
            "tag": tag(job, &ctx, &m.global),
            "alpha": alpha.as_deref().map(elem),
            "size": m.nodes.len(),
            "members": members,
        }));
    }
    let counts: Vec<Value> = per_label
        .iter()
        .map(|(l, c)| {
            json!({
                "label": label_json(&ctx, l, job.regime),
                "systems": c,
                "kernel_size": hmaps[l].kernel_size,
            })
        })
        .collect();
    let body = json!({
        "facets": facets,
        "omega_order": alcove.omega.len(),
        "universe_size": u.size(),
        "system_count": systems.len(),
        "counts": counts,
        "base_vertex": alcove.facets[base].name,
        "systems": out_systems,
    });
    Ok(Report { json: envelope("decompose", job, body), text, failed: 0 })
}
