//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

use pebblefan::complex::{check_pseudomanifold, contract, contractible_nodes};
use pebblefan::counting::{catalan, check_identities, cross_validate, m_table, p_table};
use pebblefan::fan::{certify_fan, FanOptions};
use pebblefan::maps::{
    alpha_generator, balance, from_oriented, insert, mirror, parse_signature, reroot, to_oriented,
    uproot,
};
use pebblefan::polytope::{assocoipahedron_face, certify_polytope, default_heights, euler_expected};
use pebblefan::{build_complex, build_poset, enumerate, Params, PebbleTree, DEFAULT_CAP};
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn params(l: usize, b: usize, u: usize) -> Params {
    Params::new(l, b, u).expect("valid parameters")
}

const LIST: [(usize, usize, usize); 8] = [
    (4, 0, 0),
    (5, 0, 0),
    (3, 1, 0),
    (3, 0, 1),
    (2, 1, 1),
    (2, 2, 0),
    (2, 0, 2),
    (1, 3, 0),
];

fn golden_maximal() -> Outcome {
    let cat: Vec<String> = catalan(9).iter().map(|c| c.to_string()).collect();
    let cases: [(usize, usize, Vec<String>); 6] = [
        (0, 0, cat),
        (1, 0, words("1 3 16 105 768 6006 49152")),
        (0, 1, words("1 2 10 64 462 3584 29172")),
        (1, 1, words("1 10 200 5000 140000 4200000")),
        (2, 0, words("2 24 496 12560")),
        (0, 2, words("1 6 112 2728")),
    ];
    for (b, u, expected) in cases {
        let table = m_table(b + u, expected.len()).map_err(|e| e.to_string())?;
        let found: Vec<String> = (1..=expected.len()).map(|l| table.m(l, b).to_string()).collect();
        ensure(found == expected, || format!("m for (b,u)=({b},{u}): {found:?}"))?;
    }
    Ok("maximal-tree counts for six color signatures".into())
}

fn words(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_string).collect()
}

fn golden_totals() -> Outcome {
    let cases: [(usize, usize, Vec<String>); 6] = [
        (0, 0, words("1 1 3 11 45 197 903 4279")),
        (1, 0, words("1 7 81 1151")),
        (0, 1, words("1 3 33 459")),
        (1, 1, words("1 33 2061")),
        (2, 0, words("3 115 7431")),
        (0, 2, words("1 13 765")),
    ];
    for (b, u, expected) in cases {
        let table = p_table(b + u, expected.len()).map_err(|e| e.to_string())?;
        let found: Vec<String> = (1..=expected.len()).map(|l| table.total(l, b).to_string()).collect();
        ensure(found == expected, || format!("p(x,1) for (b,u)=({b},{u}): {found:?}"))?;
    }
    let mut cells = 0;
    for colors in 0..=2usize {
        for leaves in (1..=12usize).filter(|l| l * (colors + 1) <= 12) {
            for b in 0..=colors {
                let p = params(leaves, b, colors - b);
                let report = cross_validate(&p, DEFAULT_CAP).map_err(|e| e.to_string())?;
                ensure(report.passed(), || format!("{p}: {:?}", report.mismatches))?;
                cells += 1;
            }
        }
    }
    Ok(format!("total counts; enumeration agrees with recurrences on {cells} cells"))
}

fn poset_and_complex() -> Outcome {
    for p in [params(3, 0, 1), params(2, 1, 1)] {
        let sizes = build_poset(&p).map_err(|e| e.to_string())?.rank_sizes();
        ensure(sizes == [1, 7, 15, 10], || format!("{p} rank sizes {sizes:?}"))?;
    }
    for (l, b, u) in LIST {
        let p = params(l, b, u);
        let report = check_pseudomanifold(&build_complex(&p).map_err(|e| e.to_string())?);
        ensure(report.passed(), || format!("{p}: {:?}", report.violations))?;
    }
    Ok("rank histograms and pseudomanifold checks".into())
}

fn fan_certification() -> Outcome {
    for (l, b, u) in LIST {
        let p = params(l, b, u);
        let cert = certify_fan(&p, &FanOptions::default()).map_err(|e| format!("{p}: {e}"))?;
        ensure(cert.cones.iter().all(|c| c.simplicial), || format!("{p}: non-simplicial cone"))?;
        ensure(cert.witness_cones.len() == 1, || format!("{p}: witness in {} cones", cert.witness_cones.len()))?;
        ensure(
            cert.walls.iter().all(|w| w.exchanged_unit() && w.matches_template()),
            || format!("{p}: wall outside the templates"),
        )?;
        ensure(cert.is_smooth(), || format!("{p}: a cone is not a lattice basis"))?;
    }
    Ok("simplicial cones, unique witness cone, template walls, smooth cones".into())
}

fn polytope_certification() -> Outcome {
    let expected: [((usize, usize, usize), &[usize]); 5] = [
        ((4, 0, 0), &[5, 5]),
        ((1, 3, 0), &[6, 6]),
        ((3, 0, 1), &[10, 15, 7]),
        ((2, 1, 1), &[10, 15, 7]),
        ((5, 0, 0), &[14, 21, 9]),
    ];
    for ((l, b, u), f) in expected {
        let p = params(l, b, u);
        let cert = certify_polytope(&p, &default_heights(&p)).map_err(|e| format!("{p}: {e}"))?;
        ensure(cert.f_vector() == f, || format!("{p}: f-vector {:?}", cert.f_vector()))?;
        ensure(cert.euler == euler_expected(&p), || format!("{p}: Euler sum {}", cert.euler))?;
    }
    Ok("walls positive, vertices distinct and tight on their faces, f-vectors and Euler sums".into())
}

fn identity_suite() -> Outcome {
    for (colors, order) in [(0, 6), (1, 20), (2, 6)] {
        let report = check_identities(colors, order).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("{:?}", report.checks))?;
    }
    Ok("Catalan product, cubic residues through x^20, alternating closed forms".into())
}

fn contraction_images(t: &PebbleTree) -> BTreeSet<PebbleTree> {
    contractible_nodes(t)
        .iter()
        .map(|c| contract(t, c).expect("contractible node"))
        .collect()
}

fn commutes(p: &Params, name: &str, map: impl Fn(&PebbleTree) -> Option<PebbleTree>) -> Result<(), String> {
    for t in enumerate(p, false).map_err(|e| e.to_string())? {
        let image = map(&t).ok_or_else(|| format!("{name} rejected {t}"))?;
        let below = contraction_images(&image);
        for c in contractible_nodes(&t) {
            let smaller = contract(&t, &c).expect("contractible node");
            let mapped = map(&smaller).ok_or_else(|| format!("{name} rejected {smaller}"))?;
            ensure(below.contains(&mapped), || format!("{name} at {p} fails on {t}"))?;
        }
    }
    Ok(())
}

fn map_suite() -> Outcome {
    for p in [params(3, 0, 1), params(2, 1, 1)] {
        for t in enumerate(&p, false).map_err(|e| e.to_string())? {
            ensure(mirror(&mirror(&t)) == t, || format!("mirror is not an involution on {t}"))?;
        }
        let color = p.balanced as u32 + 1;
        commutes(&p, "mirror", |t| Some(mirror(t)))?;
        commutes(&p, "balance", |t| balance(t, &p, color).ok().map(|x| x.0))?;
        commutes(&p, "insert", |t| insert(t, &p, 1).ok().map(|x| x.0))?;
        let sample = enumerate(&p, true).map_err(|e| e.to_string())?;
        let (_, balanced) = balance(&sample[0], &p, color).map_err(|e| e.to_string())?;
        for leaf in 1..=p.leaves {
            commutes(&balanced, "reroot", |t| reroot(t, &balanced, leaf).ok())?;
        }
    }
    let unbalanced = params(3, 0, 1);
    commutes(&unbalanced, "uproot", |t| uproot(t, &unbalanced).ok().map(|x| x.0))?;

    let one_color = params(3, 1, 0);
    for t in enumerate(&one_color, false).map_err(|e| e.to_string())? {
        let o = to_oriented(&t, &one_color).map_err(|e| e.to_string())?;
        ensure(from_oriented(&o).ok().as_ref() == Some(&t), || format!("round trip fails on {t}"))?;
    }

    for text in ["OOOI", "OIIOI", "OOOO", "OOOOO"] {
        let sig = parse_signature(text).map_err(|e| e.to_string())?;
        let p = params(sig.len() - 1, 1, 0);
        let face = assocoipahedron_face(&sig, &default_heights(&p)).map_err(|e| e.to_string())?;
        let poset = build_poset(&p).map_err(|e| e.to_string())?;
        let g = poset
            .index_of(&alpha_generator(&sig).map_err(|e| e.to_string())?)
            .ok_or("generator outside the poset")?;
        let maximal = poset
            .upper_set(g)
            .into_iter()
            .filter(|&i| poset.upper_covers(i).is_empty())
            .count();
        ensure(face.vertices.len() == maximal, || format!("{text}: {} vertices, {maximal} maximal trees", face.vertices.len()))?;
    }
    Ok("involution, commutation with contraction, oriented round trip, alpha faces".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("golden maximal counts", golden_maximal),
        ("golden total counts", golden_totals),
        ("poset and complex", poset_and_complex),
        ("fan certification", fan_certification),
        ("polytope certification", polytope_certification),
        ("identity suite", identity_suite),
        ("maps and bijections", map_suite),
    ];
    let mut failed = 0;
    for (number, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}; {elapsed:.2}s)", number + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({reason}; {elapsed:.2}s)", number + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
