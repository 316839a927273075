use std::io::Read;
use std::time::Instant;

use num_bigint::BigInt;
use progcover::arith::rational::{format_rational, int, parse_rational, ratio, to_decimal};
use progcover::arith::{FieldElement, Rational};
use progcover::bounds::{
    a_bound_audit, g_lower_bound_audit, squarefree_density, squarefree_exponent_scan,
    squarefree_filter, AuditKind, BoundReport,
};
use progcover::cover::{
    brute_force_min_cover, min_ap_cover, min_gp_cover, Mode, Witness, BRUTE_FORCE_LIMIT,
};
use progcover::progression::{
    assert_dj_bound, intersect_prefix, lemma1_analyze, theorem2_cover, ArithmeticProgression,
    GeometricProgression, IntersectionPoint, Lemma1Status, DJ_BOUND,
};
use progcover::schema::{ApJson, DescriptorJson, ElementJson, GpJson, InstanceFile, ProgressionFile, SolutionJson};
use progcover::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::Report;
use crate::{Cli, Command, Common, DEFAULT_SEED};

/// Longest GP prefix any subcommand will walk.
pub const MAX_PREFIX: usize = 5000;
/// Most random trials per invocation.
pub const MAX_TRIALS: usize = 100_000;

pub fn run(cli: &Cli) -> Result<Report> {
    let c = &cli.common;
    match &cli.command {
        Command::CoverAp { brute } => cover(c, Mode::Ap, *brute),
        Command::CoverGp { brute } => cover(c, Mode::Gp, *brute),
        Command::Intersect { n } => intersect(c, *n),
        Command::Lemma1 { n } => lemma1(c, *n),
        Command::Thm2Cover { n } => thm2_cover(c, *n),
        Command::DjCheck { n, random } => dj_check(c, *n, *random),
        Command::AuditG { n_max } => {
            let ap = progressions(c)?.ap()?;
            let rep = g_lower_bound_audit(&ap, *n_max)?;
            Ok(audit(c, rep, json!({"ap": ApJson::of(&ap)})))
        }
        Command::AuditA { n_max } => {
            let gp = progressions(c)?.gp()?;
            let rep = a_bound_audit(&gp, *n_max)?;
            Ok(audit(c, rep, json!({"gp": GpJson::of(&gp)})))
        }
        Command::Density { a, b, x } => density(*a, *b, *x),
        Command::Filter { n } => filter(c, *n),
        Command::ScanSquarefree { s, r, b, j_max, random } => scan(c, s, r, b, *j_max, *random),
    }
}

fn read_input(c: &Common) -> Result<String> {
    let mut text = String::new();
    match c.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::Usage(format!("cannot read standard input: {e}")))?;
        }
    }
    Ok(text)
}

fn progressions(c: &Common) -> Result<ProgressionFile> {
    ProgressionFile::from_json(&read_input(c)?)
}

fn prefix_guard(n: usize) -> Result<()> {
    if n > MAX_PREFIX {
        return Err(Error::CostGuard(format!("N = {n} exceeds {MAX_PREFIX}")));
    }
    Ok(())
}

fn rng(c: &Common) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(c.seed.unwrap_or(DEFAULT_SEED))
}

fn el(e: &FieldElement) -> Value {
    serde_json::to_value(ElementJson::of(e)).expect("element serializes")
}

fn ap_text(a: &ArithmeticProgression) -> String {
    format!("A({}, {})", a.start(), a.difference())
}

fn gp_text(g: &GeometricProgression) -> String {
    format!("G({}, {})", g.start(), g.ratio())
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".into(), T::to_string)
}

fn cover(c: &Common, mode: Mode, brute: bool) -> Result<Report> {
    let file = InstanceFile::from_json(&read_input(c)?)?;
    let name = |m: Mode| match m {
        Mode::Ap => "ap",
        Mode::Gp => "gp",
    };
    if let Some(declared) = file.mode {
        if declared != mode {
            return Err(Error::Usage(format!(
                "instance declares mode {}; use cover-{}",
                name(declared),
                name(declared)
            )));
        }
    }
    let instance = file.instance()?;
    let solution = match mode {
        Mode::Ap => min_ap_cover(&instance)?,
        Mode::Gp => min_gp_cover(&instance)?,
    };
    let mut json = serde_json::to_value(SolutionJson::of(&instance, mode, &solution)).expect("solution serializes");
    let mut summary = vec![
        ("descriptor", instance.descriptor().to_string()),
        ("mode", name(mode).to_string()),
        ("size", instance.len().to_string()),
        ("count", solution.count.to_string()),
    ];
    let mut violation = None;
    if brute {
        if instance.len() > BRUTE_FORCE_LIMIT {
            return Err(Error::CostGuard(format!(
                "--brute needs at most {BRUTE_FORCE_LIMIT} elements, got {}",
                instance.len()
            )));
        }
        let oracle = brute_force_min_cover(&instance, mode)?;
        json["brute_force_count"] = json!(oracle);
        summary.push(("brute_force_count", oracle.to_string()));
        if oracle != solution.count {
            violation = Some(format!("solver count {} != exhaustive count {oracle}", solution.count));
        }
    }
    let rows = solution
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let members: Vec<String> = b.members.iter().map(|m| m.to_string()).collect();
            let values: Vec<String> = b.members.iter().map(|&m| instance.elements()[m].to_string()).collect();
            let witness = match &b.witness {
                Witness::Ap(a) => ap_text(a),
                Witness::Gp(g) => gp_text(g),
            };
            vec![i.to_string(), members.join(" "), values.join("; "), witness]
        })
        .collect();
    Ok(Report {
        summary,
        header: vec!["block", "members", "elements", "witness"],
        rows,
        json,
        violation,
    })
}

fn point_rows(points: &[IntersectionPoint]) -> Vec<Vec<String>> {
    points
        .iter()
        .map(|p| vec![p.k.to_string(), p.h.to_string(), p.value.to_string()])
        .collect()
}

fn point_json(points: &[IntersectionPoint]) -> Value {
    points
        .iter()
        .map(|p| json!({"k": p.k, "h": p.h, "value": el(&p.value)}))
        .collect()
}

fn header(f: &ProgressionFile) -> Result<Value> {
    let field = f.field()?;
    Ok(json!(DescriptorJson::of(&field)))
}

fn intersect(c: &Common, n: usize) -> Result<Report> {
    prefix_guard(n)?;
    let f = progressions(c)?;
    let descriptor = header(&f)?;
    let (ap, gp) = (f.ap()?, f.gp()?);
    let points = intersect_prefix(&ap, &gp, n)?;
    Ok(Report {
        summary: vec![
            ("ap", ap_text(&ap)),
            ("gp", gp_text(&gp)),
            ("N", n.to_string()),
            ("count", points.len().to_string()),
        ],
        header: vec!["k", "h", "value"],
        rows: point_rows(&points),
        json: json!({
            "descriptor": descriptor,
            "ap": ApJson::of(&ap),
            "gp": GpJson::of(&gp),
            "N": n,
            "count": points.len(),
            "points": point_json(&points),
        }),
        violation: None,
    })
}

fn lemma1(c: &Common, n: usize) -> Result<Report> {
    prefix_guard(n)?;
    let f = progressions(c)?;
    let descriptor = header(&f)?;
    let (ap, gp) = (f.ap()?, f.gp()?);
    let rep = lemma1_analyze(&ap, &gp, n)?;
    let status = match rep.status {
        Lemma1Status::Applicable => "applicable",
        Lemma1Status::Inconclusive => "inconclusive",
    };
    let violation = (rep.status == Lemma1Status::Applicable && !rep.residues_ok).then(|| {
        format!(
            "{} intersection points do not share the residue {} mod {}",
            rep.points.len(),
            opt(&rep.ell),
            rep.modulus
        )
    });
    Ok(Report {
        summary: vec![
            ("ap", ap_text(&ap)),
            ("gp", gp_text(&gp)),
            ("N", n.to_string()),
            ("status", status.into()),
            ("modulus", rep.modulus.to_string()),
            ("t", opt(&rep.t.as_ref().map(format_rational))),
            ("s", opt(&rep.s.as_ref().map(format_rational))),
            ("ell", opt(&rep.ell)),
            ("residues_ok", rep.residues_ok.to_string()),
            ("count", rep.points.len().to_string()),
        ],
        header: vec!["k", "h", "value"],
        rows: point_rows(&rep.points),
        json: json!({
            "descriptor": descriptor,
            "ap": ApJson::of(&ap),
            "gp": GpJson::of(&gp),
            "N": n,
            "status": status,
            "modulus": rep.modulus,
            "t": rep.t.as_ref().map(format_rational),
            "s": rep.s.as_ref().map(format_rational),
            "ell": rep.ell,
            "residues_ok": rep.residues_ok,
            "points": point_json(&rep.points),
        }),
        violation,
    })
}

fn thm2_cover(c: &Common, n: usize) -> Result<Report> {
    prefix_guard(n)?;
    let f = progressions(c)?;
    let descriptor = header(&f)?;
    let gp = f.gp()?;
    let cover = theorem2_cover(&gp, n)?;
    let progs: Vec<String> = cover.progressions.iter().map(ap_text).collect();
    Ok(Report {
        summary: vec![
            ("gp", gp_text(&gp)),
            ("n", n.to_string()),
            ("modulus", cover.modulus.to_string()),
            ("progressions", progs.join(", ")),
            ("verified", "true".into()),
        ],
        header: vec!["k", "class", "index"],
        rows: cover
            .terms
            .iter()
            .map(|t| vec![t.k.to_string(), t.class.to_string(), t.index.to_string()])
            .collect(),
        json: json!({
            "descriptor": descriptor,
            "gp": GpJson::of(&gp),
            "n": n,
            "modulus": cover.modulus,
            "progressions": cover.progressions.iter().map(ApJson::of).collect::<Vec<_>>(),
            "terms": cover.terms.iter().map(|t| json!({
                "k": t.k, "class": t.class, "index": t.index.to_string()
            })).collect::<Vec<_>>(),
            "verified": true,
        }),
        violation: None,
    })
}

fn random_ap<R: Rng>(rng: &mut R) -> ArithmeticProgression {
    let v = ratio(rng.gen_range(0..=50), rng.gen_range(1..=50));
    let d = ratio(rng.gen_range(1..=50), rng.gen_range(1..=50));
    ArithmeticProgression::new(FieldElement::rational(v), FieldElement::rational(d))
        .expect("v >= 0 and d > 0")
}

fn dj_check(c: &Common, n: usize, random: Option<usize>) -> Result<Report> {
    prefix_guard(n)?;
    let f = progressions(c)?;
    let descriptor = header(&f)?;
    let gp = f.gp()?;
    let aps = match random {
        Some(k) => {
            if k > MAX_TRIALS {
                return Err(Error::CostGuard(format!("--random {k} exceeds {MAX_TRIALS}")));
            }
            let mut rng = rng(c);
            (0..k).map(|_| random_ap(&mut rng)).collect()
        }
        None => vec![f.ap()?],
    };
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut max = 0;
    let mut failures = 0;
    for (i, ap) in aps.iter().enumerate() {
        let check = assert_dj_bound(ap, &gp, n)?;
        max = max.max(check.count);
        failures += usize::from(!check.ok);
        rows.push(vec![i.to_string(), ap_text(ap), check.count.to_string(), check.ok.to_string()]);
        checks.push(json!({"ap": ApJson::of(ap), "count": check.count, "ok": check.ok}));
    }
    let mut json = json!({
        "descriptor": descriptor,
        "gp": GpJson::of(&gp),
        "N": n,
        "bound": DJ_BOUND,
        "max_count": max,
        "checks": checks,
    });
    if random.is_some() {
        json["seed"] = json!(c.seed.unwrap_or(DEFAULT_SEED));
    }
    Ok(Report {
        summary: vec![
            ("gp", gp_text(&gp)),
            ("N", n.to_string()),
            ("bound", DJ_BOUND.to_string()),
            ("trials", aps.len().to_string()),
            ("max_count", max.to_string()),
        ],
        header: vec!["trial", "ap", "count", "ok"],
        rows,
        json,
        violation: (failures > 0).then(|| format!("{failures} progression(s) meet G^(N) in more than {DJ_BOUND} points")),
    })
}

fn audit(c: &Common, rep: BoundReport, subject: Value) -> Report {
    let kind = match rep.kind {
        AuditKind::GLowerBound => "g >= n/pi^2".to_string(),
        AuditKind::ARootRatio { m } => format!("a <= {m}, = {m} for n >= {}", 2 * m),
        AuditKind::AIrrationalRatio => "a >= n/6".to_string(),
    };
    let mut header = vec!["n", "size", "measured", "bound", "holds", "within_pair_bound"];
    if c.timings {
        header.push("runtime_ms");
    }
    let rows = rep
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![
                r.n.to_string(),
                r.size.to_string(),
                r.measured.to_string(),
                r.bound_text.clone(),
                r.holds.to_string(),
                r.within_pair_bound.to_string(),
            ];
            if c.timings {
                row.push(r.runtime_ms.to_string());
            }
            row
        })
        .collect();
    let threshold = rep.empirical_threshold();
    let min_ratio = rep.min_ratio().map(|x| format_rational(&x));
    let json_rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| {
            let mut v = json!({
                "n": r.n,
                "size": r.size,
                "measured": r.measured,
                "bound": r.bound.as_ref().map(format_rational),
                "bound_decimal": r.bound_text,
                "holds": r.holds,
                "within_pair_bound": r.within_pair_bound,
            });
            if c.timings {
                v["runtime_ms"] = json!(r.runtime_ms as u64);
            }
            v
        })
        .collect();
    let mut json = subject;
    json["kind"] = json!(kind);
    json["all_hold"] = json!(rep.all_hold());
    json["empirical_threshold"] = json!(threshold);
    json["min_ratio"] = json!(min_ratio);
    json["notes"] = json!(rep.notes);
    json["rows"] = json!(json_rows);
    let failing: Vec<String> = rep
        .rows
        .iter()
        .filter(|r| !(r.holds && r.within_pair_bound))
        .map(|r| r.n.to_string())
        .collect();
    let mut summary = vec![
        ("bound", kind),
        ("all_hold", rep.all_hold().to_string()),
        ("empirical_threshold", opt(&threshold)),
        ("min_ratio", opt(&min_ratio)),
    ];
    for note in &rep.notes {
        summary.push(("note", note.clone()));
    }
    Report {
        summary,
        header,
        rows,
        json,
        violation: (!failing.is_empty()).then(|| format!("bound fails at n = {}", failing.join(", "))),
    }
}

fn density(a: u64, b: u64, x: u64) -> Result<Report> {
    let rep = squarefree_density(a, b, x)?;
    let row = vec![
        a.to_string(),
        b.to_string(),
        x.to_string(),
        rep.count.to_string(),
        to_decimal(&rep.ratio, 12),
        to_decimal(&rep.predicted, 12),
        to_decimal(&rep.abs_error, 12),
    ];
    Ok(Report {
        summary: Vec::new(),
        header: vec!["a", "b", "x", "count", "ratio", "predicted", "abs_error"],
        rows: vec![row],
        json: json!({
            "a": a,
            "b": b,
            "x": x,
            "count": rep.count,
            "ratio": format_rational(&rep.ratio),
            "ratio_decimal": to_decimal(&rep.ratio, 20),
            "predicted_decimal": to_decimal(&rep.predicted, 20),
            "abs_error_decimal": to_decimal(&rep.abs_error, 20),
        }),
        violation: None,
    })
}

fn filter(c: &Common, n: usize) -> Result<Report> {
    prefix_guard(n)?;
    let f = progressions(c)?;
    let descriptor = header(&f)?;
    let ap = f.ap()?;
    let rep = squarefree_filter(&ap, n)?;
    Ok(Report {
        summary: vec![
            ("ap", ap_text(&ap)),
            ("a", rep.a.to_string()),
            ("b", rep.b.to_string()),
            ("n", n.to_string()),
            ("kept", rep.kept.len().to_string()),
            ("fraction", format_rational(&rep.fraction())),
        ],
        header: vec!["h", "value"],
        rows: rep.kept.iter().map(|(h, v)| vec![h.to_string(), v.to_string()]).collect(),
        json: json!({
            "descriptor": descriptor,
            "ap": ApJson::of(&ap),
            "a": rep.a.to_string(),
            "b": rep.b.to_string(),
            "n": n,
            "fraction": format_rational(&rep.fraction()),
            "kept": rep.kept.iter().map(|(h, v)| json!({"h": h, "value": el(v)})).collect::<Vec<_>>(),
        }),
        violation: None,
    })
}

fn random_triple<R: Rng>(rng: &mut R) -> (Rational, Rational, BigInt) {
    let s = ratio(rng.gen_range(1..=50), rng.gen_range(1..=50));
    let r = loop {
        let r = ratio(rng.gen_range(1..=50), rng.gen_range(1..=50));
        if r > int(1) {
            break r;
        }
    };
    (s, r, BigInt::from(rng.gen_range(1..=50)))
}

fn scan(
    c: &Common,
    s: &Option<String>,
    r: &Option<String>,
    b: &Option<String>,
    j_max: u32,
    random: Option<usize>,
) -> Result<Report> {
    let triples = match random {
        Some(k) => {
            if s.is_some() || r.is_some() || b.is_some() {
                return Err(Error::Usage("--random excludes --s, --r and --b".into()));
            }
            if k > MAX_TRIALS {
                return Err(Error::CostGuard(format!("--random {k} exceeds {MAX_TRIALS}")));
            }
            let mut rng = rng(c);
            (0..k).map(|_| random_triple(&mut rng)).collect()
        }
        None => {
            let need = |x: &Option<String>, flag: &str| {
                x.as_deref()
                    .ok_or_else(|| Error::Usage(format!("missing {flag} (or use --random)")))
                    .and_then(parse_rational)
            };
            let bv = need(b, "--b")?;
            if !bv.is_integer() {
                return Err(Error::Domain(format!("b must be an integer, got {}", format_rational(&bv))));
            }
            vec![(need(s, "--s")?, need(r, "--r")?, bv.to_integer())]
        }
    };
    let started = Instant::now();
    let mut rows = Vec::new();
    let mut items = Vec::new();
    let mut max = 0;
    for (s, r, b) in &triples {
        let hits = squarefree_exponent_scan(s, r, b, j_max)?;
        max = max.max(hits.len());
        let list: Vec<String> = hits.iter().map(u32::to_string).collect();
        rows.push(vec![format_rational(s), format_rational(r), b.to_string(), list.join(" ")]);
        items.push(json!({"s": format_rational(s), "r": format_rational(r), "b": b.to_string(), "hits": hits}));
    }
    let mut json = json!({"j_max": j_max, "max_hits": max, "scans": items});
    let mut summary = vec![
        ("j_max", j_max.to_string()),
        ("scans", triples.len().to_string()),
        ("max_hits", max.to_string()),
    ];
    if random.is_some() {
        let seed = c.seed.unwrap_or(DEFAULT_SEED);
        json["seed"] = json!(seed);
        summary.push(("seed", seed.to_string()));
    }
    if c.timings {
        summary.push(("runtime_ms", started.elapsed().as_millis().to_string()));
    }
    Ok(Report {
        summary,
        header: vec!["s", "r", "b", "hits"],
        rows,
        json,
        violation: None,
    })
}
