//! The four subcommands. Each returns a [`Report`] with a text and a JSON
//! rendering and an overall verdict.

use std::fmt::Write as _;

use dcomplete::dcomplete::{check_dcomplete, verify_coloring, BuilderSpec, Structure};
use dcomplete::excitation::{enumerate_excited, enumerate_k_excited};
use dcomplete::genfun::{
    colored_hook_check, lhs_series, naruse_count, q_specialize, rhs_rational, verify_main_theorem,
};
use dcomplete::weyl::{
    beta_roots, billey_by_peaks, billey_localization, normal_form, word_for_subset,
};
use dcomplete::{ColoredPoset, ElemSet, Filter, Poset};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::render;
use crate::CliError;

pub struct Report {
    pub text: String,
    pub json: Value,
    pub pass: bool,
}

fn ids(s: ElemSet) -> Value {
    Value::from(s.to_vec())
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn check(spec: &BuilderSpec, heap_mode: bool) -> Result<Report, CliError> {
    if let BuilderSpec::General(g) = spec {
        let p = Poset::from_json(&g.poset).map_err(|e| CliError::Input(e.to_string()))?;
        let v = check_dcomplete(&p);
        if !v.is_ok() {
            let mut text = format!("poset: {} elements\nd-complete: no\n", p.len());
            for violation in &v.violations {
                writeln!(
                    text,
                    "  violation: {}",
                    serde_json::to_string(violation).unwrap()
                )
                .unwrap();
            }
            let json = json!({"elements": p.len(), "dcomplete": false, "violations": v.violations});
            return Ok(Report {
                text,
                json,
                pass: false,
            });
        }
    }
    let cp = crate::build(spec, heap_mode)?;
    let p = cp.poset();
    let v = check_dcomplete(p);
    let coloring = verify_coloring(&cp);
    let dynkin = cp.graph().dynkin_type();
    let forest = if p.maximal_elements().len() == 1 {
        "tree"
    } else {
        "forest"
    };
    let structure = match cp.structure() {
        Structure::DComplete => "d-complete",
        Structure::Heap => "heap",
    };

    let mut text = String::new();
    writeln!(text, "poset: {cp}").unwrap();
    writeln!(text, "structure: {structure}").unwrap();
    writeln!(
        text,
        "top {forest}: type {dynkin}, {} elements",
        cp.top_forest().len()
    )
    .unwrap();
    writeln!(text, "d_k-intervals: {}", cp.dk_intervals().len()).unwrap();
    if v.is_ok() {
        writeln!(text, "d-complete: yes").unwrap();
    } else {
        writeln!(text, "d-complete: no").unwrap();
        for violation in &v.violations {
            writeln!(
                text,
                "  violation: {}",
                serde_json::to_string(violation).unwrap()
            )
            .unwrap();
        }
    }
    match &coloring {
        Ok(()) => writeln!(text, "coloring: ok").unwrap(),
        Err(e) => writeln!(text, "coloring: FAIL ({e})").unwrap(),
    }
    writeln!(text, "colors:").unwrap();
    match render::grid_with(&cp, |x| cp.color_name(x).to_string()) {
        Some(g) => text.push_str(&g),
        None => {
            for (name, color) in cp.coloring_report() {
                writeln!(text, "  {name}: {color}").unwrap();
            }
        }
    }

    let coloring_map: Map<String, Value> = cp
        .coloring_report()
        .into_iter()
        .map(|(k, c)| (k, Value::from(c)))
        .collect();
    let json = json!({
        "elements": cp.len(),
        "structure": structure,
        "dynkin": dynkin,
        "top_forest": ids(cp.top_forest()),
        "dk_intervals": cp.dk_intervals().len(),
        "dcomplete": v.is_ok(),
        "violations": v.violations,
        "coloring_ok": coloring.is_ok(),
        "colors": cp.graph().names(),
        "coloring": coloring_map,
    });
    let pass = coloring.is_ok() && (v.is_ok() || cp.structure() == Structure::Heap);
    Ok(Report { text, json, pass })
}

pub fn hooks(cp: &ColoredPoset) -> Result<Report, CliError> {
    let t = cp.hooks()?;
    let p = cp.poset();
    let names: Vec<String> = (0..cp.len()).map(|x| p.element_name(x)).collect();
    let w = names.iter().map(|s| s.len()).max().unwrap_or(0);
    let mut text = String::new();
    for (x, name) in names.iter().enumerate() {
        writeln!(
            text,
            "{:<w$}  {:>3}  {}",
            name,
            t.length(x),
            t.monomial(cp, x)
        )
        .unwrap();
    }
    if let Some(g) = render::grid_with(cp, |x| t.length(x).to_string()) {
        writeln!(text, "hook lengths:").unwrap();
        text.push_str(&g);
    }
    let lengths: Map<String, Value> = (0..cp.len())
        .map(|x| (names[x].clone(), Value::from(t.length(x))))
        .collect();
    let json = json!({"hooks": t.to_json(cp), "lengths": lengths});
    Ok(Report {
        text,
        json,
        pass: true,
    })
}

pub fn excited(
    cp: &ColoredPoset,
    f: Filter,
    k_theoretic: bool,
    debug: bool,
) -> Result<Report, CliError> {
    let mut text = String::new();
    let mut items = Vec::new();
    let ext = cp.poset().linear_extension();
    let nf = |d: ElemSet| normal_form(cp.graph(), &word_for_subset(cp, d, &ext));
    let json = if k_theoretic {
        let all = enumerate_k_excited(cp, f)?;
        let ordinary = all.iter().filter(|e| e.is_ordinary()).count();
        writeln!(
            text,
            "{} K-theoretical excited diagrams ({ordinary} ordinary)",
            all.len()
        )
        .unwrap();
        for (n, e) in all.iter().enumerate() {
            writeln!(
                text,
                "\n#{} {} extra {}",
                n + 1,
                cp.set_names(e.diagram),
                cp.set_names(e.extra)
            )
            .unwrap();
            if let Some(g) = render::diagram(cp, e.diagram, e.extra, ElemSet::EMPTY) {
                text.push_str(&g);
            }
            items.push(json!({"diagram": ids(e.diagram), "excited": ids(e.excited), "extra": ids(e.extra)}));
        }
        json!({"count": all.len(), "ordinary": ordinary, "diagrams": items})
    } else {
        let all = enumerate_excited(cp, f)?;
        writeln!(text, "{} excited diagrams", all.len()).unwrap();
        for (n, s) in all.iter().enumerate() {
            writeln!(
                text,
                "\n#{} {} peaks {}",
                n + 1,
                cp.set_names(s.diagram),
                cp.set_names(s.peaks)
            )
            .unwrap();
            if let Some(g) = render::diagram(cp, s.diagram, ElemSet::EMPTY, s.peaks) {
                text.push_str(&g);
            }
            if debug {
                writeln!(text, "normal form of w_D: {}", letters(cp, &nf(s.diagram))).unwrap();
            }
            items.push(json!({"diagram": ids(s.diagram), "peaks": ids(s.peaks)}));
        }
        json!({"count": all.len(), "diagrams": items})
    };
    Ok(Report {
        text,
        json,
        pass: true,
    })
}

pub struct VerifyOptions {
    pub degree: u32,
    pub seed: u64,
    pub trials: usize,
}

pub fn verify(cp: &ColoredPoset, f: Filter, opts: &VerifyOptions) -> Result<Report, CliError> {
    let names = cp.graph().names();
    let main = verify_main_theorem(cp, f, opts.degree)?;
    let rhs = rhs_rational(cp, f)?.reduced();
    let q_rhs = q_specialize(&rhs)?.reduced();
    let q_lhs = q_specialize(&lhs_series(cp, f, opts.degree))?;
    let q_ok = q_lhs == q_rhs.expand(opts.degree)?;
    let billey_ok = billey_localization(cp, f)? == billey_by_peaks(cp, f)?;

    let rest = cp.poset().elements().difference(f.members());
    let direct = cp
        .poset()
        .induced_subposet(rest)
        .0
        .linear_extensions_count();
    let by_hooks = naruse_count(cp, f);
    let naruse_ok = by_hooks.as_ref().is_ok_and(|n| *n == direct);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut trials = Vec::new();
    let mut colored_ok = true;
    for _ in 0..opts.trials {
        let a: Vec<u32> = (0..cp.graph().rank())
            .map(|_| rng.gen_range(1..=9))
            .collect();
        let weights: Vec<BigRational> = a
            .iter()
            .map(|&k| BigRational::from_integer(BigInt::from(k)))
            .collect();
        let v = colored_hook_check(cp, f, &weights)?;
        colored_ok &= v.is_ok();
        trials.push(json!({"weights": a, "lhs": v.lhs.to_string(), "rhs": v.rhs.to_string()}));
    }

    let pass = main.is_ok() && q_ok && billey_ok && naruse_ok && colored_ok;
    let mut text = String::new();
    writeln!(text, "poset: {cp}").unwrap();
    writeln!(text, "filter: {}", cp.set_names(f.members())).unwrap();
    writeln!(text, "seed: {}", opts.seed).unwrap();
    writeln!(text, "generating function: {}", rhs.to_text(names)).unwrap();
    writeln!(text, "q-form: {}", q_rhs.to_q_text()).unwrap();
    write!(
        text,
        "series identity (N={}, {} terms): {}",
        main.cap,
        main.terms,
        verdict(main.is_ok())
    )
    .unwrap();
    match &main.mismatch {
        Some(m) => writeln!(text, " at {:?}: lhs {} rhs {}", m.exp, m.lhs, m.rhs).unwrap(),
        None => writeln!(text).unwrap(),
    }
    writeln!(text, "q-series (N={}): {}", opts.degree, verdict(q_ok)).unwrap();
    writeln!(text, "localization identity: {}", verdict(billey_ok)).unwrap();
    match &by_hooks {
        Ok(n) => writeln!(
            text,
            "linear extensions: {n} by hooks, {direct} direct: {}",
            verdict(naruse_ok)
        )
        .unwrap(),
        Err(e) => writeln!(
            text,
            "linear extensions: {direct} direct, hook side failed ({e}): FAIL"
        )
        .unwrap(),
    }
    writeln!(
        text,
        "colored hook formula ({} weight vectors): {}",
        opts.trials,
        verdict(colored_ok)
    )
    .unwrap();
    writeln!(text, "result: {}", verdict(pass)).unwrap();

    let json = json!({
        "seed": opts.seed,
        "filter": ids(f.members()),
        "generating_function": rhs.to_text(names),
        "q_form": q_rhs.to_q_text(),
        "main_theorem": {
            "degree": main.cap,
            "terms": main.terms,
            "pass": main.is_ok(),
            "mismatch": main.mismatch.as_ref().map(|m| json!({
                "exp": m.exp, "lhs": m.lhs.to_string(), "rhs": m.rhs.to_string()
            })),
        },
        "q_series": q_ok,
        "localization_identity": billey_ok,
        "linear_extensions": {
            "direct": direct.to_string(),
            "by_hooks": by_hooks.as_ref().ok().map(|n| n.to_string()),
            "pass": naruse_ok,
        },
        "colored_hooks": {"pass": colored_ok, "trials": trials},
        "pass": pass,
    });
    Ok(Report { text, json, pass })
}

fn letters(cp: &ColoredPoset, w: &[usize]) -> String {
    let names: Vec<&str> = w.iter().map(|&c| cp.graph().name(c)).collect();
    format!("[{}]", names.join(" "))
}

/// Beta roots along the default linear extension and the normal form of
/// `w_F`.
pub fn debug_dump(cp: &ColoredPoset, f: Option<Filter>) -> Result<(String, Value), CliError> {
    let ext = cp.poset().linear_extension();
    let roots = beta_roots(cp, &ext).map_err(|e| CliError::Input(e.to_string()))?;
    let mut text = String::from("beta roots (simple-root coordinates):\n");
    let mut json_roots = Map::new();
    for &x in &ext {
        let name = cp.poset().element_name(x);
        writeln!(text, "  {name} [{}] {}", cp.color_name(x), roots[x]).unwrap();
        json_roots.insert(name, Value::from(roots[x].coords().to_vec()));
    }
    let mut json = json!({"beta_roots": json_roots, "colors": cp.graph().names()});
    if let Some(f) = f {
        let w = normal_form(cp.graph(), &word_for_subset(cp, f.members(), &ext));
        writeln!(text, "normal form of w_F: {}", letters(cp, &w)).unwrap();
        json["w_f"] = Value::from(w.iter().map(|&c| cp.graph().name(c)).collect::<Vec<_>>());
    }
    Ok((text, json))
}
