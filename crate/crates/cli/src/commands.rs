use crate::{Common, ExportKind, Failure, Witness};
use pebblefan::complex::{build_complex_capped, build_poset_capped, check_pseudomanifold, flip_graph_capped};
use pebblefan::counting::{check_identities, cross_validate, m_table, p_table, series_text, table_tsv, P_MAX_COLORS};
use pebblefan::export::{faces_jsonl, flip_graph_dot, hrep_text, poset_dot, trees_jsonl, vrep_text};
use pebblefan::fan::{fan_certificate, FanCertificate, FanOptions, WitnessForm};
use pebblefan::linalg::Rational;
use pebblefan::maps::parse_signature;
use pebblefan::polytope::{
    assocoipahedron_face, build_hrep, default_heights, euler_expected, polytope_certificate, vertex,
    PolytopeCertificate,
};
use pebblefan::{enumerate_capped, Error, Params, PebbleTree};
use serde_json::{json, Value};
use std::fmt::Write as _;

/// What a command produced: a text rendering, a JSON rendering and whether
/// every check it ran passed.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub passed: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, passed: true }
    }
}

fn params(common: &Common) -> Result<Params, Failure> {
    let leaves = common
        .leaves
        .ok_or_else(|| Failure::Usage("missing -l/--leaves".into()))?;
    Params::new(leaves, common.balanced, common.unbalanced)
        .map_err(|e| Failure::Usage(format!("-l/--leaves, -b/--balanced, -u/--unbalanced: {e}")))
}

fn params_json(p: &Params) -> Value {
    json!({"leaves": p.leaves, "balanced": p.balanced, "unbalanced": p.unbalanced})
}

fn tree_json(t: &PebbleTree) -> Value {
    serde_json::to_value(t).expect("trees always serialize")
}

fn words<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn rationals_json(x: &[Rational]) -> Value {
    Value::from(x.iter().map(Rational::to_string).collect::<Vec<_>>())
}

pub fn enumerate(common: &Common, maximal: bool, count: bool) -> Result<Report, Failure> {
    let p = params(common)?;
    let trees = enumerate_capped(&p, maximal, common.max_size)?;
    if count {
        let json = json!({"params": params_json(&p), "maximal": maximal, "count": trees.len()});
        return Ok(Report::ok(format!("{}\n", trees.len()), json));
    }
    let json = json!({
        "params": params_json(&p),
        "maximal": maximal,
        "trees": trees.iter().map(tree_json).collect::<Vec<_>>(),
    });
    Ok(Report::ok(trees_jsonl(&trees), json))
}

pub fn poset(common: &Common, dot: bool) -> Result<Report, Failure> {
    let p = params(common)?;
    let poset = build_poset_capped(&p, common.max_size)?;
    let covers: usize = (0..poset.len()).map(|i| poset.upper_covers(i).len()).sum();
    let json = json!({
        "params": params_json(&p),
        "elements": poset.len(),
        "cover_relations": covers,
        "rank_sizes": poset.rank_sizes(),
        "minima": poset.minima().len(),
        "maxima": poset.maxima().len(),
    });
    if dot {
        return Ok(Report::ok(poset_dot(&poset), json));
    }
    let text = format!(
        "elements {}\ncover relations {covers}\nrank sizes {}\nminima {}\nmaxima {}\n",
        poset.len(),
        words(&poset.rank_sizes()),
        poset.minima().len(),
        poset.maxima().len()
    );
    Ok(Report::ok(text, json))
}

pub fn complex(common: &Common, faces: bool) -> Result<Report, Failure> {
    let p = params(common)?;
    let complex = build_complex_capped(&p, common.max_size)?;
    let report = check_pseudomanifold(&complex);
    let kinds: Vec<Value> = report
        .kinds
        .iter()
        .map(|(kind, n)| json!({"kind": format!("{kind:?}"), "ridges": n}))
        .collect();
    let json = json!({
        "params": params_json(&p),
        "faces": complex.faces().len(),
        "facets": complex.facets().len(),
        "vertices": complex.ground_set().len(),
        "injective": complex.is_injective(),
        "ridges": report.ridges,
        "ridge_kinds": kinds,
        "pseudomanifold": report.passed(),
        "violations": report.violations,
    });
    let passed = report.passed() && complex.is_injective();
    if faces {
        return Ok(Report { text: faces_jsonl(&complex), json, passed });
    }
    let mut text = format!(
        "faces {}\nfacets {}\nvertices {}\nridges {}\n",
        complex.faces().len(),
        complex.facets().len(),
        complex.ground_set().len(),
        report.ridges
    );
    for (kind, n) in &report.kinds {
        let _ = writeln!(text, "ridges of kind {kind:?} {n}");
    }
    let _ = writeln!(text, "pseudomanifold {}", yes_no(report.passed()));
    for v in &report.violations {
        let _ = writeln!(text, "violation {v}");
    }
    Ok(Report { text, json, passed })
}

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

pub fn flipgraph(common: &Common, dot: bool) -> Result<Report, Failure> {
    let p = params(common)?;
    let graph = flip_graph_capped(&p, common.max_size)?;
    let mut degrees = graph.degrees();
    degrees.sort_unstable();
    degrees.dedup();
    let json = json!({
        "params": params_json(&p),
        "vertices": graph.vertices().len(),
        "edges": graph.edges().len(),
        "degrees": degrees,
        "connected": graph.is_connected(),
        "case_counts": graph.case_counts(),
    });
    if dot {
        return Ok(Report::ok(flip_graph_dot(&graph), json));
    }
    let text = format!(
        "vertices {}\nedges {}\ndegrees {}\nconnected {}\nflips by case {}\n",
        graph.vertices().len(),
        graph.edges().len(),
        words(&degrees),
        yes_no(graph.is_connected()),
        words(&graph.case_counts())
    );
    Ok(Report::ok(text, json))
}

fn fan_options(common: &Common, seed: u64, witness: Witness) -> FanOptions {
    FanOptions {
        cap: common.max_size,
        seed,
        witness: match witness {
            Witness::Literal => WitnessForm::Literal,
            Witness::Shifted => WitnessForm::Shifted,
        },
        ..FanOptions::default()
    }
}

fn fan_text(cert: &FanCertificate) -> String {
    let simplicial = cert.cones.iter().filter(|c| c.simplicial).count();
    let mut text = format!(
        "cones {} ({simplicial} simplicial)\nwalls {}\nwitness {}\ncones containing the witness {}\n\
         smooth {}\nsampled points {} with seed {}, uncovered {}\ncertified {}\n",
        cert.cones.len(),
        cert.walls.len(),
        words(&cert.witness),
        cert.witness_cones.len(),
        yes_no(cert.is_smooth()),
        cert.samples,
        cert.seed,
        cert.uncovered,
        yes_no(cert.passed())
    );
    for f in &cert.failures {
        let _ = writeln!(text, "failure {f}");
    }
    text
}

pub fn fan(common: &Common, seed: u64, witness: Witness) -> Result<Report, Failure> {
    let p = params(common)?;
    let cert = fan_certificate(&p, &fan_options(common, seed, witness))?;
    Ok(Report {
        text: fan_text(&cert),
        json: cert.to_json(),
        passed: cert.passed(),
    })
}

/// Which parts of the polytope to print.
pub struct PolytopeView {
    pub fvector: bool,
    pub hrep: bool,
    pub vrep: bool,
    pub alpha: Option<String>,
}

fn polytope_json(cert: &PolytopeCertificate) -> Value {
    let mut f = cert.f_vector();
    f.push(1);
    let lowest_wall = cert.wall_values.iter().map(|(_, v)| v).min();
    json!({
        "params": params_json(&cert.params),
        "heights": "default",
        "f_vector": f,
        "euler": cert.euler,
        "euler_expected": euler_expected(&cert.params),
        "lowest_wall_value": lowest_wall.map(Rational::to_string),
        "vertices": cert.vertices.iter().map(|(t, x)| json!({
            "tree": tree_json(t),
            "point": rationals_json(x),
        })).collect::<Vec<_>>(),
        "passed": cert.passed(),
        "failures": cert.failures,
    })
}

fn polytope_text(cert: &PolytopeCertificate) -> String {
    let mut f = cert.f_vector();
    f.push(1);
    let mut text = format!(
        "vertices {}\nf-vector {}\neuler {} (expected {})\n",
        cert.vertices.len(),
        words(&f),
        cert.euler,
        euler_expected(&cert.params)
    );
    if let Some(lowest) = cert.wall_values.iter().map(|(_, v)| v).min() {
        let _ = writeln!(text, "lowest wall value {lowest}");
    }
    let _ = writeln!(text, "certified {}", yes_no(cert.passed()));
    for failure in &cert.failures {
        let _ = writeln!(text, "failure {failure}");
    }
    text
}

fn vertices(p: &Params, cap: usize) -> Result<Vec<(PebbleTree, Vec<Rational>)>, Failure> {
    let hrep = build_hrep(p, &default_heights(p))?;
    let mut out = Vec::new();
    for t in enumerate_capped(p, true, cap)? {
        let x = vertex(&t, &hrep)?;
        out.push((t, x));
    }
    Ok(out)
}

fn alpha_face(common: &Common, text: &str) -> Result<Report, Failure> {
    let sig = parse_signature(text).map_err(|e| Failure::Usage(format!("--alpha: {e}")))?;
    let p = Params::new(sig.len().saturating_sub(1), 1, 0)
        .map_err(|e| Failure::Usage(format!("--alpha: {e}")))?;
    if let Some(leaves) = common.leaves {
        if (leaves, common.balanced, common.unbalanced) != (p.leaves, 1, 0) {
            return Err(Failure::Usage(format!(
                "--alpha {text} lives in {p}; drop -l/-b/-u or match them"
            )));
        }
    }
    if p.size() > common.max_size {
        return Err(Error::CapExceeded { size: p.size(), cap: common.max_size }.into());
    }
    let face = assocoipahedron_face(&sig, &default_heights(&p))?;
    let json = json!({
        "signature": face.signature,
        "params": params_json(&face.params),
        "dimension": face.dimension,
        "f_vector": face.f_vector,
        "vertices": face.vertices.iter().map(tree_json).collect::<Vec<_>>(),
    });
    let mut out = format!(
        "signature {}\nparams {}\ndimension {}\nf-vector {}\n",
        face.signature,
        face.params,
        face.dimension,
        words(&face.f_vector)
    );
    for t in &face.vertices {
        let _ = writeln!(out, "vertex {t}");
    }
    Ok(Report::ok(out, json))
}

pub fn polytope(common: &Common, view: &PolytopeView) -> Result<Report, Failure> {
    if let Some(sig) = &view.alpha {
        return alpha_face(common, sig);
    }
    let p = params(common)?;
    if !(view.fvector || view.hrep || view.vrep) {
        let cert = polytope_certificate(&p, &default_heights(&p), common.max_size)?;
        return Ok(Report {
            text: polytope_text(&cert),
            json: polytope_json(&cert),
            passed: cert.passed(),
        });
    }
    let mut text = String::new();
    let mut json = json!({"params": params_json(&p)});
    if view.fvector {
        let cert = polytope_certificate(&p, &default_heights(&p), common.max_size)?;
        if let Some(first) = cert.failures.first() {
            return Err(Error::CertificationFailed(first.clone()).into());
        }
        let mut f = cert.f_vector();
        f.push(1);
        let _ = writeln!(text, "{}", words(&f));
        json["f_vector"] = json!(f);
    }
    if view.hrep {
        let hrep = build_hrep(&p, &default_heights(&p))?;
        text.push_str(&hrep_text(&hrep));
        json["inequalities"] = hrep
            .rows()
            .iter()
            .map(|r| json!({"label": r.label, "normal": r.normal, "rhs": r.rhs.to_string()}))
            .collect();
        json["equalities"] = json!(hrep.equalities());
    }
    if view.vrep {
        let points = vertices(&p, common.max_size)?;
        text.push_str(&vrep_text(&points));
        json["vertices"] = points
            .iter()
            .map(|(t, x)| json!({"tree": tree_json(t), "point": rationals_json(x)}))
            .collect();
    }
    Ok(Report::ok(text, json))
}

pub fn count(common: &Common, table: bool, series: bool) -> Result<Report, Failure> {
    let p = params(common)?;
    let colors = p.colors();
    if table || series {
        let counts = p_table(colors, p.leaves)?;
        let mut text = String::new();
        if table {
            text.push_str(&table_tsv(&counts));
        }
        if series {
            text.push_str(&series_text(&counts));
            text.push('\n');
        }
        let json = json!({"colors": colors, "order": p.leaves, "text": text});
        return Ok(Report::ok(text, json));
    }
    let maximal = m_table(colors, p.leaves)?.m(p.leaves, p.balanced).to_string();
    let mut text = format!("maximal {maximal}\n");
    let mut json = json!({"params": params_json(&p), "maximal": maximal});
    match p_table(colors, p.leaves) {
        Ok(counts) => {
            let histogram: Vec<String> = counts
                .histogram(p.leaves, p.balanced)
                .iter()
                .map(ToString::to_string)
                .collect();
            let total = counts.total(p.leaves, p.balanced).to_string();
            let alternating = counts.alternating(p.leaves, p.balanced).to_string();
            let _ = write!(
                text,
                "total {total}\nby number of nodes {}\nalternating sum {alternating}\n",
                histogram.join(" ")
            );
            json["total"] = json!(total);
            json["by_nodes"] = json!(histogram);
            json["alternating"] = json!(alternating);
        }
        Err(e @ Error::CapExceeded { .. }) => {
            let _ = writeln!(text, "total refused: {e}");
            json["total"] = Value::Null;
            json["refused"] = json!(e.to_string());
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Report::ok(text, json))
}

/// Which checks `verify` runs.
pub struct Checks {
    pub counts: bool,
    pub pseudomanifold: bool,
    pub fan: bool,
    pub polytope: bool,
}

enum Status {
    Pass,
    Fail,
    Skip,
}

struct CheckLine {
    name: &'static str,
    status: Status,
    detail: String,
}

fn check_counts(p: &Params, cap: usize) -> Result<CheckLine, Failure> {
    if p.colors() > P_MAX_COLORS {
        return Ok(CheckLine {
            name: "counts",
            status: Status::Skip,
            detail: format!("node-count recurrences stop at {P_MAX_COLORS} colors"),
        });
    }
    let cross = cross_validate(p, cap)?;
    let identities = check_identities(p.colors(), p.leaves)?;
    let mut problems = cross.mismatches.clone();
    problems.extend(identities.checks.iter().filter(|(_, ok)| !ok).map(|(name, _)| name.clone()));
    Ok(CheckLine {
        name: "counts",
        status: if problems.is_empty() { Status::Pass } else { Status::Fail },
        detail: if problems.is_empty() {
            format!(
                "{} trees, {} maximal; {} identities",
                cross.enumerated_total(),
                cross.enumerated_maximal,
                identities.checks.len()
            )
        } else {
            problems.join("; ")
        },
    })
}

fn check_complex(p: &Params, cap: usize) -> Result<CheckLine, Failure> {
    let complex = build_complex_capped(p, cap)?;
    let report = check_pseudomanifold(&complex);
    let ok = report.passed() && complex.is_injective();
    Ok(CheckLine {
        name: "pseudomanifold",
        status: if ok { Status::Pass } else { Status::Fail },
        detail: if ok {
            format!("{} facets, {} ridges each in two facets", complex.facets().len(), report.ridges)
        } else if report.violations.is_empty() {
            "two trees share a face".into()
        } else {
            report.violations.join("; ")
        },
    })
}

fn check_fan(p: &Params, opts: &FanOptions) -> Result<CheckLine, Failure> {
    let cert = fan_certificate(p, opts)?;
    let ok = cert.passed() && cert.is_smooth();
    Ok(CheckLine {
        name: "fan",
        status: if ok { Status::Pass } else { Status::Fail },
        detail: if ok {
            format!("{} smooth simplicial cones, {} walls, witness in one cone", cert.cones.len(), cert.walls.len())
        } else if cert.failures.is_empty() {
            "a cone is not a basis of the ray lattice".into()
        } else {
            cert.failures.join("; ")
        },
    })
}

fn check_polytope(p: &Params, cap: usize) -> Result<CheckLine, Failure> {
    let cert = polytope_certificate(p, &default_heights(p), cap)?;
    let mut f = cert.f_vector();
    f.push(1);
    Ok(CheckLine {
        name: "polytope",
        status: if cert.passed() { Status::Pass } else { Status::Fail },
        detail: if cert.passed() {
            format!("f-vector {}, euler {}", words(&f), cert.euler)
        } else {
            cert.failures.join("; ")
        },
    })
}

pub fn verify(common: &Common, checks: &Checks, seed: u64) -> Result<Report, Failure> {
    if !(checks.counts || checks.pseudomanifold || checks.fan || checks.polytope) {
        return Err(Failure::Usage(
            "verify needs --all or at least one of --counts, --pseudomanifold, --fan, --polytope".into(),
        ));
    }
    let p = params(common)?;
    if p.size() > common.max_size {
        return Err(Error::CapExceeded { size: p.size(), cap: common.max_size }.into());
    }
    let mut lines = Vec::new();
    if checks.counts {
        lines.push(check_counts(&p, common.max_size)?);
    }
    if checks.pseudomanifold {
        lines.push(check_complex(&p, common.max_size)?);
    }
    if checks.fan {
        lines.push(check_fan(&p, &fan_options(common, seed, Witness::Shifted))?);
    }
    if checks.polytope {
        lines.push(check_polytope(&p, common.max_size)?);
    }
    let passed = lines.iter().all(|l| !matches!(l.status, Status::Fail));
    let mut text = String::new();
    let mut entries = Vec::new();
    for line in &lines {
        let status = match line.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        let _ = writeln!(text, "{status} {}: {}", line.name, line.detail);
        entries.push(json!({"check": line.name, "status": status, "detail": line.detail}));
    }
    let _ = writeln!(text, "{} {p}", if passed { "verified" } else { "not verified" });
    let json = json!({"params": params_json(&p), "seed": seed, "checks": entries, "passed": passed});
    Ok(Report { text, json, passed })
}

fn artifact(common: &Common, kind: ExportKind, seed: u64) -> Result<(String, bool), Failure> {
    let p = params(common)?;
    let cap = common.max_size;
    Ok(match kind {
        ExportKind::Trees => (trees_jsonl(&enumerate_capped(&p, false, cap)?), true),
        ExportKind::Poset => (poset_dot(&build_poset_capped(&p, cap)?), true),
        ExportKind::Faces => (faces_jsonl(&build_complex_capped(&p, cap)?), true),
        ExportKind::Flipgraph => (flip_graph_dot(&flip_graph_capped(&p, cap)?), true),
        ExportKind::Hrep => (hrep_text(&build_hrep(&p, &default_heights(&p))?), true),
        ExportKind::Vrep => (vrep_text(&vertices(&p, cap)?), true),
        ExportKind::Certificate => {
            let fan = fan_certificate(&p, &fan_options(common, seed, Witness::Shifted))?;
            let polytope = polytope_certificate(&p, &default_heights(&p), cap)?;
            let passed = fan.passed() && polytope.passed();
            let doc = json!({"fan": fan.to_json(), "polytope": polytope_json(&polytope), "passed": passed});
            let mut text = serde_json::to_string_pretty(&doc).expect("serializable certificate");
            text.push('\n');
            (text, passed)
        }
    })
}

/// Writes the artifact to the `-o` path and reports what was written.
pub fn export(common: &Common, kind: ExportKind, seed: u64) -> Result<Report, Failure> {
    let path = common
        .output
        .as_ref()
        .ok_or_else(|| Failure::Usage("export needs a destination file via -o/--output".into()))?;
    let (content, passed) = artifact(common, kind, seed)?;
    std::fs::write(path, &content).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let kind_name = format!("{kind:?}").to_lowercase();
    let text = format!("wrote {kind_name} to {} ({} lines)\n", path.display(), content.lines().count());
    let json = json!({"kind": kind_name, "path": path.display().to_string(), "lines": content.lines().count(), "passed": passed});
    Ok(Report { text, json, passed })
}
