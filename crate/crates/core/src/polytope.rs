//! Height functions, the inequality description of the pebble tree
//! polytope, exact vertices, and the certification that its normal fan is
//! the pebble tree fan.

use crate::complex::{build_poset_capped, label_sets, FlipCase, FlipGraph, Complex, LabelSet, Poset};
use crate::enumerate::DEFAULT_CAP;
use crate::error::{Error, Result};
use crate::fan::{flip_dependence, ray, Ambient};
use crate::linalg::{affine_dimension, rat, solve, Rational};
use crate::maps::{alpha_generator, mirror, signature_string, Arrow};
use crate::tree::{ColorMask, Params, PebbleTree};
use num_traits::{Signed, Zero};
use std::collections::{HashMap, HashSet};

/// A real function on the subsets of `{1, …, n}`, stored by bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunction {
    n: usize,
    values: Vec<Rational>,
}

impl SetFunction {
    pub fn from_fn(n: usize, f: impl Fn(u32) -> Rational) -> Self {
        SetFunction {
            n,
            values: (0..1u32 << n).map(f).collect(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn value(&self, subset: u32) -> &Rational {
        &self.values[subset as usize]
    }

    /// Value on the interval `[s, t]` (from 1) of the ground set.
    pub fn interval(&self, s: usize, t: usize) -> &Rational {
        let mask = ((1u32 << t) - 1) & !((1u32 << (s - 1)) - 1);
        self.value(mask)
    }

    pub fn max(&self) -> Rational {
        self.values.iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        SetFunction {
            n: self.n,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    fn slack(&self, a: u32, b: u32) -> Rational {
        self.value(a) + self.value(b) - self.value(a | b) - self.value(a & b)
    }

    pub fn is_submodular(&self) -> bool {
        let all = 1u32 << self.n;
        (0..all).all(|a| (0..all).all(|b| !self.slack(a, b).is_negative()))
    }

    /// Smallest submodularity slack over incomparable pairs, or `None`
    /// (standing for +∞) when there is no such pair.
    pub fn delta(&self) -> Option<Rational> {
        let all = 1u32 << self.n;
        let mut best: Option<Rational> = None;
        for a in 0..all {
            for b in 0..all {
                if a & b == a || a & b == b {
                    continue;
                }
                let s = self.slack(a, b);
                if best.as_ref().is_none_or(|x| s < *x) {
                    best = Some(s);
                }
            }
        }
        best
    }
}

/// The set function `X ↦ n|X| - |X|(|X|-1)/2` on `{1, …, n}`.
pub fn base_submodular(n: usize) -> SetFunction {
    let n64 = n as i64;
    SetFunction::from_fn(n, |x| {
        let k = x.count_ones() as i64;
        rat(n64 * k - k * (k - 1) / 2)
    })
}

/// Heights `f` and `g` on leaf sets and `h` on color sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightTriple {
    pub f: SetFunction,
    pub g: SetFunction,
    pub h: SetFunction,
}

impl HeightTriple {
    /// Checks that the functions are submodular with the slack bounds
    /// `Δf > 4(ℓb+ℓu-u)(max g + max h)` and `Δg > (ℓb+ℓu-u+1) max h`.
    pub fn check(&self, p: &Params) -> Result<()> {
        if self.f.ground_size() != p.leaves || self.g.ground_size() != p.leaves {
            return Err(Error::HypothesisViolated("f and g must live on the leaves".into()));
        }
        if self.h.ground_size() != p.colors() {
            return Err(Error::HypothesisViolated("h must live on the colors".into()));
        }
        for (name, fun) in [("f", &self.f), ("g", &self.g), ("h", &self.h)] {
            if !fun.value(0).is_zero() {
                return Err(Error::HypothesisViolated(format!("{name} is nonzero on the empty set")));
            }
            if !fun.is_submodular() {
                return Err(Error::HypothesisViolated(format!("{name} is not submodular")));
            }
        }
        let w = (p.leaves * p.colors()) as i64 - p.unbalanced as i64;
        if let Some(df) = self.f.delta() {
            let bound = rat(4 * w) * (self.g.max() + self.h.max());
            if df <= bound {
                return Err(Error::HypothesisViolated(format!("Δf = {df} is not above {bound}")));
            }
        }
        if let Some(dg) = self.g.delta() {
            let bound = rat(w + 1) * self.h.max();
            if dg <= bound {
                return Err(Error::HypothesisViolated(format!("Δg = {dg} is not above {bound}")));
            }
        }
        if let Some(dh) = self.h.delta() {
            if !dh.is_positive() {
                return Err(Error::HypothesisViolated("h is not strictly submodular".into()));
            }
        }
        Ok(())
    }
}

/// Heights built from [`base_submodular`], rescaled so that the slack bounds
/// of [`HeightTriple::check`] hold.
pub fn default_heights(p: &Params) -> HeightTriple {
    let w = (p.leaves * p.colors()) as i64 - p.unbalanced as i64;
    let h = base_submodular(p.colors());
    let scale_g = rat(w + 1) * h.max() + rat(1);
    let g = base_submodular(p.leaves).scaled(&scale_g);
    let scale_f = rat(4 * w) * (g.max() + h.max()) + rat(1);
    let f = base_submodular(p.leaves).scaled(&scale_f);
    HeightTriple { f, g, h }
}

/// One inequality `⟨normal, x⟩ ≤ rhs`, indexed by a leaf interval and a set
/// of colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRow {
    pub first: usize,
    pub last: usize,
    pub colors: ColorMask,
    pub label: LabelSet,
    pub normal: Vec<i64>,
    pub rhs: Rational,
}

impl HRow {
    pub fn is_trivial(&self) -> bool {
        self.normal.iter().all(|&x| x == 0)
    }
}

/// Inequalities and block-sum equalities describing the polytope.
#[derive(Debug, Clone)]
pub struct HRep {
    params: Params,
    rows: Vec<HRow>,
    equalities: Vec<Vec<i64>>,
    by_label: HashMap<LabelSet, usize>,
}

impl HRep {
    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn rows(&self) -> &[HRow] {
        &self.rows
    }

    pub fn equalities(&self) -> &[Vec<i64>] {
        &self.equalities
    }

    /// The row with a given nonzero normal label.
    pub fn row_for(&self, label: &LabelSet) -> Option<&HRow> {
        self.by_label.get(label).map(|&i| &self.rows[i])
    }
}

pub fn build_hrep(p: &Params, heights: &HeightTriple) -> Result<HRep> {
    heights.check(p)?;
    let a = Ambient::new(p);
    let mut rows = Vec::new();
    for s in 1..=p.leaves {
        for t in s..=p.leaves {
            for colors in 0..1u32 << p.colors() {
                let label = LabelSet::encode(p, s, t, colors);
                let normal = ray(&label, &a)?;
                let size = rat(colors.count_ones() as i64);
                let rhs = heights.f.interval(s, t) + heights.g.interval(s, t) * size + heights.h.value(colors);
                rows.push(HRow {
                    first: s,
                    last: t,
                    colors,
                    label,
                    normal,
                    rhs,
                });
            }
        }
    }
    let mut by_label = HashMap::new();
    for (i, r) in rows.iter().enumerate() {
        if !r.is_trivial() {
            by_label.entry(r.label.clone()).or_insert(i);
        }
    }
    let equalities = a
        .blocks()
        .iter()
        .map(|&(s, e)| {
            (1..=a.len() as u32)
                .map(|i| i64::from(s <= i && i <= e))
                .collect()
        })
        .collect();
    Ok(HRep {
        params: *p,
        rows,
        equalities,
        by_label,
    })
}

/// The point where the rows of the face of `t` are tight.
pub fn vertex(t: &PebbleTree, hrep: &HRep) -> Result<Vec<Rational>> {
    if !t.is_maximal() {
        return Err(Error::NotMaximal);
    }
    let mut matrix: Vec<Vec<Rational>> = Vec::new();
    let mut rhs = Vec::new();
    for eq in &hrep.equalities {
        if eq.iter().any(|&x| x != 0) {
            matrix.push(eq.iter().map(|&x| rat(x)).collect());
            rhs.push(Rational::zero());
        }
    }
    for label in label_sets(t, &hrep.params) {
        let row = hrep.row_for(&label).ok_or(Error::SingularSystem)?;
        matrix.push(row.normal.iter().map(|&x| rat(x)).collect());
        rhs.push(row.rhs.clone());
    }
    solve(&matrix, &rhs).ok_or(Error::SingularSystem)
}

fn row_value(row: &HRow, x: &[Rational]) -> Rational {
    row.normal
        .iter()
        .zip(x)
        .filter(|(&c, _)| c != 0)
        .map(|(&c, v)| rat(c) * v)
        .sum()
}

/// Outcome of the polytope checks.
#[derive(Debug, Clone)]
pub struct PolytopeCertificate {
    pub params: Params,
    pub vertices: Vec<(PebbleTree, Vec<Rational>)>,
    /// Wall-crossing value of every flip, with its case.
    pub wall_values: Vec<(FlipCase, Rational)>,
    /// Number of faces of each dimension `0..=D`, measured geometrically.
    pub faces_by_dimension: Vec<usize>,
    /// Number of trees by node count, from the poset.
    pub rank_sizes: Vec<usize>,
    /// Alternating sum `Σ (-1)^n` over trees with `n` nodes.
    pub euler: i64,
    pub failures: Vec<String>,
}

impl PolytopeCertificate {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Numbers of proper faces of dimension `0..D`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = self.faces_by_dimension.clone();
        f.pop();
        f
    }
}

/// Sign of `x` in `x / ((-1)^b + (-1)^u x)` at order `ℓ`.
pub fn euler_expected(p: &Params) -> i64 {
    if (p.size() - p.unbalanced - 1).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Runs all polytope checks with the given heights and records failures.
pub fn polytope_certificate(p: &Params, heights: &HeightTriple, cap: usize) -> Result<PolytopeCertificate> {
    let hrep = build_hrep(p, heights)?;
    let poset = build_poset_capped(p, cap)?;
    let complex = Complex::from_trees(p, poset.trees().to_vec());
    let graph = FlipGraph::from_complex(&complex)?;
    let a = Ambient::new(p);
    let mut failures = Vec::new();

    let mut vertices = Vec::new();
    for t in graph.vertices() {
        vertices.push((t.clone(), vertex(t, &hrep)?));
    }

    for (t, x) in &vertices {
        if !a.contains(x) {
            failures.push(format!("vertex of {t} leaves the subspace"));
        }
        let face: HashSet<LabelSet> = label_sets(t, p).into_iter().collect();
        for row in &hrep.rows {
            if row.is_trivial() {
                continue;
            }
            let value = row_value(row, x);
            if value > row.rhs {
                failures.push(format!("vertex of {t} violates row {}", row.label));
            }
            let tight = value == row.rhs;
            if tight != face.contains(&row.label) {
                failures.push(format!(
                    "vertex of {t} has row {} {}",
                    row.label,
                    if tight { "tight outside its face" } else { "slack inside its face" }
                ));
            }
        }
    }
    for row in &hrep.rows {
        if row.is_trivial() && row.rhs.is_negative() {
            failures.push(format!("row {} has zero normal and negative bound", row.label));
        }
    }
    let distinct: HashSet<&Vec<Rational>> = vertices.iter().map(|(_, x)| x).collect();
    if distinct.len() != vertices.len() {
        failures.push("two trees share a vertex".into());
    }

    let mut wall_values = Vec::new();
    for e in graph.edges() {
        let w = flip_dependence(&e.flip, &a)?;
        let mut value = Rational::zero();
        for (label, coef) in &w.coefficients {
            let row = hrep
                .row_for(label)
                .ok_or_else(|| Error::CertificationFailed(format!("no row for ray {label}")))?;
            value += coef * &row.rhs;
        }
        if !value.is_positive() {
            failures.push(format!("wall at {} has crossing value {value}", e.flip.ridge));
        }
        wall_values.push((e.flip.case, value));
    }

    let (faces_by_dimension, face_failures) = face_structure(p, &poset, &complex, &hrep, &vertices);
    failures.extend(face_failures);

    let rank_sizes = poset.rank_sizes();
    let mut euler = 0i64;
    for i in 0..poset.len() {
        euler += if poset.rank(i) % 2 == 0 { 1 } else { -1 };
    }
    if euler != euler_expected(p) {
        failures.push(format!("alternating face count is {euler}"));
    }
    let mut by_rank = rank_sizes.clone();
    by_rank.reverse();
    if by_rank != faces_by_dimension {
        failures.push(format!(
            "faces by dimension {faces_by_dimension:?} differ from reversed rank sizes {by_rank:?}"
        ));
    }

    Ok(PolytopeCertificate {
        params: *p,
        vertices,
        wall_values,
        faces_by_dimension,
        rank_sizes,
        euler,
        failures,
    })
}

/// For every tree, collects the vertices tight on the rows of its face,
/// compares them with its maximal refinements and measures the dimension.
fn face_structure(
    p: &Params,
    poset: &Poset,
    complex: &Complex,
    hrep: &HRep,
    vertices: &[(PebbleTree, Vec<Rational>)],
) -> (Vec<usize>, Vec<String>) {
    let top = p.dimension().max(0) as usize;
    let mut counts = vec![0usize; top + 1];
    let mut failures = Vec::new();
    let vertex_index: HashMap<&PebbleTree, usize> =
        vertices.iter().enumerate().map(|(i, (t, _))| (t, i)).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for (i, t) in poset.trees().iter().enumerate() {
        let rows: Vec<&HRow> = complex.faces()[i]
            .iter()
            .filter_map(|l| hrep.row_for(l))
            .collect();
        let tight: Vec<usize> = vertices
            .iter()
            .enumerate()
            .filter(|(_, (_, x))| rows.iter().all(|r| row_value(r, x) == r.rhs))
            .map(|(k, _)| k)
            .collect();
        let mut refinements: Vec<usize> = poset
            .upper_set(i)
            .into_iter()
            .filter(|&j| poset.upper_covers(j).is_empty())
            .filter_map(|j| vertex_index.get(&poset.trees()[j]).copied())
            .collect();
        refinements.sort_unstable();
        if tight != refinements {
            failures.push(format!("tight vertices of {t} are not its maximal refinements"));
        }
        let points: Vec<Vec<Rational>> = tight.iter().map(|&k| vertices[k].1.clone()).collect();
        let dim = affine_dimension(&points);
        let expected = top as isize + 1 - t.node_count() as isize;
        if dim != expected {
            failures.push(format!("face of {t} has dimension {dim}, expected {expected}"));
        }
        if (0..=top as isize).contains(&dim) {
            counts[dim as usize] += 1;
        }
        if !seen.insert(tight) {
            failures.push(format!("face of {t} coincides with another face"));
        }
    }
    (counts, failures)
}

/// Certifies the polytope, failing with the first violated check.
pub fn certify_polytope(p: &Params, heights: &HeightTriple) -> Result<PolytopeCertificate> {
    let cert = polytope_certificate(p, heights, DEFAULT_CAP)?;
    match cert.failures.first() {
        Some(f) => Err(Error::CertificationFailed(f.clone())),
        None => Ok(cert),
    }
}

/// Numbers of proper faces of each dimension `0..D`, measured geometrically.
pub fn f_vector(p: &Params, heights: &HeightTriple) -> Result<Vec<usize>> {
    Ok(certify_polytope(p, heights)?.f_vector())
}

/// Coordinate permutation induced by mirroring: returns, for each index
/// `1..=N`, its image.
pub fn mirror_permutation(p: &Params) -> Vec<u32> {
    let l = p.leaves as u32;
    (1..=p.index_len() as u32)
        .map(|k| {
            if k < l {
                l - k
            } else {
                let j = k / l;
                let i = k - l * j + 1;
                l * (j + 1) - i
            }
        })
        .collect()
}

pub fn permute(x: &[Rational], perm: &[u32]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); x.len()];
    for (k, &img) in perm.iter().enumerate() {
        out[img as usize - 1] = x[k].clone();
    }
    out
}

/// Whether the mirroring permutation sends the vertex of each maximal tree
/// to the vertex of its mirror image.
pub fn check_mirror_isometry(p: &Params, heights: &HeightTriple) -> Result<bool> {
    let hrep = build_hrep(p, heights)?;
    let perm = mirror_permutation(p);
    for t in crate::enumerate::enumerate(p, true)? {
        if permute(&vertex(&t, &hrep)?, &perm) != vertex(&mirror(&t), &hrep)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A face of the one-color polytope cut out by a signature.
#[derive(Debug, Clone)]
pub struct AlphaFace {
    pub signature: String,
    pub params: Params,
    /// Maximal trees whose vertices lie on the face.
    pub vertices: Vec<PebbleTree>,
    pub dimension: isize,
    /// Number of faces of each dimension `0..=dimension` inside the face.
    pub f_vector: Vec<usize>,
}

/// The face of the `(ℓ, 1, 0)` polytope on which the rows labelled by the
/// single-leaf intervals `{i} ⊠ {1}` are tight for every `i` whose arrow
/// `i+1` is `I`.
pub fn assocoipahedron_face(sig: &[Arrow], heights: &HeightTriple) -> Result<AlphaFace> {
    alpha_generator(sig)?;
    let p = Params::new(sig.len() - 1, 1, 0)?;
    let hrep = build_hrep(&p, heights)?;
    let labels: Vec<LabelSet> = sig[1..]
        .iter()
        .enumerate()
        .filter(|(_, &a)| a == Arrow::In)
        .map(|(i, _)| LabelSet::encode(&p, i + 1, i + 1, 1))
        .collect();
    let rows: Vec<&HRow> = labels
        .iter()
        .map(|l| hrep.row_for(l).ok_or(Error::SingularSystem))
        .collect::<Result<_>>()?;
    let mut vertices = Vec::new();
    let mut points = Vec::new();
    for t in crate::enumerate::enumerate(&p, true)? {
        let x = vertex(&t, &hrep)?;
        if rows.iter().all(|r| row_value(r, &x) == r.rhs) {
            vertices.push(t);
            points.push(x);
        }
    }
    let dimension = affine_dimension(&points);
    let top = p.dimension().max(0);
    let mut f_vector = vec![0usize; dimension.max(0) as usize + 1];
    for t in crate::enumerate::enumerate(&p, false)? {
        let face = label_sets(&t, &p);
        if labels.iter().all(|l| face.contains(l)) {
            let d = top + 1 - t.node_count() as isize;
            if (0..=dimension).contains(&d) {
                f_vector[d as usize] += 1;
            }
        }
    }
    Ok(AlphaFace {
        signature: signature_string(sig),
        params: p,
        vertices,
        dimension,
        f_vector,
    })
}
