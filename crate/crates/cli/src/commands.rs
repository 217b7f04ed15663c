use rayon::prelude::*;
use serde_json::{json, Value};

use wphom::bockstein::{bockstein_pages, ptop2_check, recover_integral, relevant_primes, BocksteinTable, InducedMap};
use wphom::complex::{FilteredComplex, Simplex, WeightedComplex};
use wphom::error::Result;
use wphom::homology::{homology, persistent_homology, Coefficients};
use wphom::io::WeightFormat;
use wphom::mayer_vietoris::{build_mv, verify_exactness};
use wphom::ring::EuclideanRing;

/// What a command prints, what it writes to the optional report file, and
/// whether it counts as success.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, ok: true }
    }
}

pub fn validate<W: WeightFormat>(k: &WeightedComplex<W>) -> Report {
    let report = k.validate();
    let mut lines = k.describe(&report);
    let status = if report.is_valid() { "valid" } else { "invalid" };
    lines.push(format!("{status}: {} simplices, f-vector {:?}", k.len(), k.f_vector()));
    Report {
        text: lines.join("\n"),
        json: json!({
            "valid": report.is_valid(),
            "simplices": k.len(),
            "f_vector": k.f_vector(),
            "messages": k.describe(&report),
        }),
        ok: report.is_valid(),
    }
}

pub fn homology_report<R: EuclideanRing + WeightFormat>(k: &WeightedComplex<R>, coeff: &Coefficients<R>) -> Result<Report> {
    let h = homology(k, coeff)?;
    let groups: Vec<String> = h.degrees.iter().map(|d| d.group.to_string()).collect();
    let text = if h.degrees.is_empty() {
        "empty complex: all homology vanishes".to_string()
    } else {
        h.to_string()
    };
    Ok(Report::ok(text, json!({"coefficients": coeff.label(), "groups": groups})))
}

pub fn persist<R: EuclideanRing + WeightFormat>(
    f: &FilteredComplex<R>,
    coeff: &Coefficients<R>,
    triple: Option<(usize, usize, usize)>,
) -> Result<Report> {
    let triples: Vec<(usize, usize, usize)> = match triple {
        Some(t) => vec![t],
        None => {
            let top = f.complex().dim().unwrap_or(0);
            let steps = f.steps();
            (0..=top)
                .flat_map(|k| (0..steps).flat_map(move |i| (0..steps - i).map(move |q| (k, i, q))))
                .collect()
        }
    };
    let rows: Vec<(usize, usize, usize, String)> = triples
        .par_iter()
        .map(|&(k, i, q)| persistent_homology(f, k, i, q, coeff).map(|g| (k, i, q, g.to_string())))
        .collect::<Result<_>>()?;
    let mut text = vec![format!("coefficients {}", coeff.label()), "k i q group".to_string()];
    text.extend(rows.iter().map(|(k, i, q, g)| format!("{k} {i} {q} {g}")));
    let json_rows: Vec<Value> = rows.iter().map(|(k, i, q, g)| json!({"k": k, "i": i, "q": q, "group": g})).collect();
    Ok(Report::ok(text.join("\n"), json!({"coefficients": coeff.label(), "rows": json_rows})))
}

fn table_json<R: EuclideanRing>(t: &BocksteinTable<R>) -> Value {
    json!({
        "prime": t.prime.to_string(),
        "dims": t.dims,
        "ranks": t.ranks,
        "stable_page": t.stable_page,
        "infinity": t.infinity,
    })
}

pub fn bockstein<R: EuclideanRing + WeightFormat>(
    k: &WeightedComplex<R>,
    primes: Vec<R>,
    max_page: usize,
    recover: bool,
) -> Result<Report> {
    let primes = if primes.is_empty() {
        let mut p = relevant_primes(k)?;
        if p.is_empty() {
            p.push(R::smallest_prime());
        }
        p
    } else {
        primes
    };
    let tables: Vec<BocksteinTable<R>> = primes
        .par_iter()
        .map(|p| bockstein_pages(k, p, max_page))
        .collect::<Result<_>>()?;
    let mut text: Vec<String> = tables.iter().map(|t| t.to_string()).collect();
    let mut out = json!({"tables": tables.iter().map(table_json).collect::<Vec<_>>()});
    let mut ok = true;
    if recover {
        let recovered = recover_integral(&tables)?;
        let integral = homology(k, &Coefficients::Integral)?.modules();
        let matches = recovered == integral;
        ok = matches;
        let rec: Vec<String> = recovered.iter().map(|m| m.to_string()).collect();
        text.push(
            rec.iter()
                .enumerate()
                .map(|(n, m)| format!("H{n} = {m}"))
                .collect::<Vec<_>>()
                .join("; "),
        );
        text.push(format!("recovered homology {} the direct computation", if matches { "matches" } else { "DIFFERS FROM" }));
        out["recovered"] = json!(rec);
        out["matches_integral"] = json!(matches);
    }
    Ok(Report { text: text.join("\n"), json: out, ok })
}

pub fn mayer_vietoris<R: EuclideanRing + WeightFormat>(
    k: &WeightedComplex<R>,
    k0: &[Simplex],
    k1: &[Simplex],
    coeff: &Coefficients<R>,
) -> Result<Report> {
    let seq = build_mv(k, k0, k1, coeff)?;
    let report = verify_exactness(&seq)?;
    let mut text = vec![format!("coefficients {}", coeff.label())];
    let mut degrees = Vec::new();
    for d in seq.degrees.iter().rev() {
        let p = d.degree;
        text.push(format!("H{p}(A) = {}; H{p}(K0)+H{p}(K1) = {}; H{p}(K) = {}", d.a, d.middle, d.k));
        degrees.push(json!({
            "degree": p,
            "A": d.a.to_string(),
            "K0+K1": d.middle.to_string(),
            "K": d.k.to_string(),
            "phi_rank": d.phi.rank(),
            "psi_rank": d.psi.rank(),
            "connecting_rank": d.connecting.rank(),
        }));
    }
    text.push(report.to_string());
    let positions: Vec<Value> = report
        .positions
        .iter()
        .map(|p| json!({"at": p.label, "exact": p.exact, "composite_zero": p.composite_zero, "ranks_add_up": p.ranks_add_up}))
        .collect();
    Ok(Report {
        text: text.join("\n"),
        json: json!({"coefficients": coeff.label(), "degrees": degrees, "positions": positions, "exact": report.all_exact()}),
        ok: report.all_exact(),
    })
}

fn map_json<R: EuclideanRing>(m: &InducedMap<R>) -> Value {
    let matrix: Vec<Vec<String>> = (0..m.map.matrix().rows())
        .map(|i| m.map.matrix().row(i).iter().map(|x| x.to_string()).collect())
        .collect();
    json!({
        "source": m.source.to_string(),
        "target": m.target.to_string(),
        "matrix": matrix,
        "injective": m.injective,
        "surjective": m.surjective,
    })
}

pub fn ptop2<R: EuclideanRing + WeightFormat>(
    f: &FilteredComplex<R>,
    p: &R,
    (k, i, q): (usize, usize, usize),
    r: u32,
) -> Result<Report> {
    let rep = ptop2_check(f, k, i, q, p, r)?;
    let json = json!({
        "k": k, "i": i, "q": q, "prime": rep.prime.to_string(), "r": r,
        "theta_k": map_json(&rep.theta_k),
        "theta_k_minus_1": rep.theta_k_minus_1.as_ref().map(map_json),
        "epsilon": map_json(&rep.epsilon),
        "first_hypothesis": rep.first_hypothesis,
        "second_hypothesis": rep.second_hypothesis,
        "conclusion": rep.conclusion,
        "verdict": rep.verdict(),
        "consistent": rep.consistent(),
    });
    Ok(Report::ok(rep.to_string(), json))
}
