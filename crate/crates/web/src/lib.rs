//! Browser bindings: DMDP analysis, regret curves on preset instances, and
//! polytope decomposition. Every export returns a JSON string.

use marcopolo::adversary::{AdversarySpec, Ref};
use marcopolo::experiment::{benchmark, checkpoints, learner_rewards, Experiment};
use marcopolo::fixtures::{self, A, B};
use marcopolo::graph::analyze;
use marcopolo::io::{parse_dmdp, AlgorithmSpec, DmdpSection, ExperimentConfig, NamedDmdp};
use marcopolo::polytope::{FlowPoint, FlowPolytope, DEFAULT_CYCLE_CAP};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use wasm_bindgen::prelude::*;

pub const MAX_HORIZON: usize = 200_000;

pub const PRESETS: &[&str] = &["d2-indicator", "ring4-switching", "ring4-phase-wave"];

fn to_js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn presets() -> String {
    json!(PRESETS).to_string()
}

/// Structure report for a DMDP given in the TOML file format.
#[wasm_bindgen(js_name = analyzeDmdp)]
pub fn analyze_dmdp_js(text: &str) -> Result<String, JsValue> {
    to_js(analyze_dmdp(text))
}

#[wasm_bindgen(js_name = regretCurve)]
pub fn regret_curve_js(preset: &str, horizon: usize, seed: u64) -> Result<String, JsValue> {
    to_js(regret_curve(preset, horizon, seed))
}

#[wasm_bindgen(js_name = decomposeDemo)]
pub fn decompose_demo_js(k: usize, anchor: usize, seed: u64) -> Result<String, JsValue> {
    to_js(decompose_demo(k, anchor, seed))
}

pub fn analyze_dmdp(text: &str) -> Result<String, String> {
    let NamedDmdp { dmdp: m, labels } = parse_dmdp(text).map_err(|e| e.to_string())?;
    let r = analyze(&m);
    let names = |idx: &[usize]| idx.iter().map(|&i| labels.states[i].clone()).collect::<Vec<_>>();
    let edges: Vec<_> = m
        .pairs()
        .map(|(s, a)| json!([labels.states[s], labels.actions[a], labels.states[m.next(s, a)]]))
        .collect();
    Ok(json!({
        "states": labels.states,
        "closed_set": names(&r.closed_set),
        "transient_states": names(&r.transient_states),
        "weakly_communicating": r.weakly_communicating,
        "unichain": r.unichain,
        "uniform_d": r.uniform_d,
        "edges": edges,
    })
    .to_string())
}

fn preset(name: &str, horizon: usize) -> Result<Experiment, String> {
    let pair = |s: usize, a: usize| (Ref::Index(s), Ref::Index(a));
    let (m, l, adversary) = match name {
        "d2-indicator" => (fixtures::d2(), 2, AdversarySpec::Indicator { pairs: vec![pair(0, B)] }),
        "ring4-switching" => (
            fixtures::ring4(),
            3,
            AdversarySpec::Switching { block: 2000, first: vec![pair(0, B)], second: vec![pair(2, B)] },
        ),
        "ring4-phase-wave" => (fixtures::ring4(), 3, AdversarySpec::PhaseWave { period: 3.0, target: pair(1, A) }),
        other => return Err(format!("unknown preset {other:?}; try one of {PRESETS:?}")),
    };
    let cfg = ExperimentConfig {
        horizon,
        max_cycle_len: l,
        tau: None,
        start_state: Ref::Index(0),
        seeds: vec![0],
        output: None,
        max_enum: None,
        dmdp: DmdpSection::default(),
        adversary,
        algorithm: AlgorithmSpec::MarcoPolo,
    };
    Experiment::with_dmdp(cfg, NamedDmdp::numbered(m)).map_err(|e| e.to_string())
}

/// One seeded run of the episodic learner on a preset, sampled at the
/// checkpoint rounds.
pub fn regret_curve(name: &str, horizon: usize, seed: u64) -> Result<String, String> {
    if !(1..=MAX_HORIZON).contains(&horizon) {
        return Err(format!("horizon must be in 1..={MAX_HORIZON}"));
    }
    let exp = preset(name, horizon)?;
    let bench = benchmark(&exp).map_err(|e| e.to_string())?;
    let (learner, arms) = learner_rewards(&exp, seed).map_err(|e| e.to_string())?;
    let marks = checkpoints(horizon);
    let (mut cum, mut bcum, mut next) = (0.0, 0.0, 0);
    let (mut rounds, mut reward, mut bench_cum) = (Vec::new(), Vec::new(), Vec::new());
    for t in 1..=horizon {
        cum += learner[t - 1];
        bcum += bench.per_round[t - 1];
        if marks.get(next) == Some(&t) {
            next += 1;
            rounds.push(t);
            reward.push(cum);
            bench_cum.push(bcum);
        }
    }
    Ok(json!({
        "preset": name,
        "horizon": horizon,
        "seed": seed,
        "tau": exp.tau,
        "rounds": rounds,
        "cum_reward": reward,
        "benchmark_cum": bench_cum,
        "benchmark": bench.description,
        "arm_choices": arms,
    })
    .to_string())
}

/// Random convex combination of cycle embeddings on the 4-state ring,
/// decomposed back into cycles.
pub fn decompose_demo(k: usize, anchor: usize, seed: u64) -> Result<String, String> {
    if !(1..=6).contains(&k) {
        return Err("k must be in 1..=6".into());
    }
    let m = fixtures::ring4();
    let poly = FlowPolytope::new(&m, k, anchor).map_err(|e| e.to_string())?;
    let cycles = poly.enumerate_cycles(DEFAULT_CYCLE_CAP).map_err(|e| e.to_string())?.cycles;
    if cycles.is_empty() {
        return Err(format!("no cycle of length {k} passes through state {anchor}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = rng.random_range(1..=cycles.len().min(5));
    let mut mix = Vec::with_capacity(picks);
    for _ in 0..picks {
        mix.push((rng.random_range(0..cycles.len()), rng.random::<f64>() + 0.05));
    }
    let total: f64 = mix.iter().map(|m| m.1).sum();
    let mut x = FlowPoint::zeros(poly.dim());
    for (c, w) in &mut mix {
        *w /= total;
        x.add_scaled(*w, &poly.embed(&cycles[*c]).map_err(|e| e.to_string())?);
    }
    let dist = poly.decompose(&x).map_err(|e| e.to_string())?;
    let error = poly.mean_point(&dist).map_err(|e| e.to_string())?.sup_distance(&x);
    let label = |c: &[usize]| c.iter().map(|&a| if a == A { 'a' } else { 'b' }).collect::<String>();
    Ok(json!({
        "k": k,
        "anchor": anchor,
        "dimension": poly.dim(),
        "num_cycles": cycles.len(),
        "mixed": mix.iter().map(|&(c, w)| json!({ "cycle": label(&cycles[c]), "weight": w })).collect::<Vec<_>>(),
        "decomposed": dist.support().iter().map(|(c, w)| json!({ "cycle": label(c), "weight": w })).collect::<Vec<_>>(),
        "reconstruction_error": error,
    })
    .to_string())
}
