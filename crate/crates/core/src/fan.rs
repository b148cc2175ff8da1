//! Ray vectors, cones and the certification of the pebble tree fan.
//!
//! Label indices `1..=N` (with `N = ℓ(b+u+1) - 1`) are split into blocks:
//! block 0 holds `[1, ℓ(b+1)-1]` and block `i ≥ 1` holds the `ℓ` indices of
//! the `i`-th unbalanced color. The fan lives in the subspace where every
//! block sums to zero. A label set `J` gives the ray that, in each block,
//! weights the indices inside `J` by the number of block indices outside it
//! and subtracts the converse. All arithmetic is exact.

use crate::complex::{build_complex_capped, label_sets, lambda, FlipCase, FlipGraph, LabelSet, LocalFlip};
use crate::enumerate::DEFAULT_CAP;
use crate::error::{Error, Result};
use crate::linalg::{determinant, nullspace, rank, rat, solve, Rational};
use crate::tree::{color_bit, mask_colors, Color, ColorMask, NodePath, Params, PebbleTree};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// The coordinate blocks of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambient {
    params: Params,
    /// Inclusive index ranges, block 0 first. A block may be empty.
    blocks: Vec<(u32, u32)>,
}

impl Ambient {
    pub fn new(p: &Params) -> Self {
        let l = p.leaves as u32;
        let b = p.balanced as u32;
        let mut blocks = vec![(1, l * (b + 1) - 1)];
        for i in 1..=p.unbalanced as u32 {
            blocks.push((l * (b + i), l * (b + i + 1) - 1));
        }
        Ambient { params: *p, blocks }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Number of coordinates `N`.
    pub fn len(&self) -> usize {
        self.params.index_len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn blocks(&self) -> &[(u32, u32)] {
        &self.blocks
    }

    /// Dimension of the subspace where every block sums to zero.
    pub fn dimension(&self) -> usize {
        self.len() - self.blocks.iter().filter(|(s, e)| s <= e).count()
    }

    /// Whether every block of `x` sums to zero.
    pub fn contains(&self, x: &[Rational]) -> bool {
        self.blocks.iter().all(|&(s, e)| {
            (s..=e)
                .map(|i| &x[i as usize - 1])
                .sum::<Rational>()
                .is_zero()
        })
    }

    /// Drops the last coordinate of every non-empty block. On the subspace
    /// this is a lattice isomorphism onto `Z^dimension`.
    pub fn reduce<T: Clone>(&self, x: &[T]) -> Vec<T> {
        let lasts: Vec<u32> = self
            .blocks
            .iter()
            .filter(|(s, e)| s <= e)
            .map(|&(_, e)| e)
            .collect();
        (1..=self.len() as u32)
            .filter(|i| !lasts.contains(i))
            .map(|i| x[i as usize - 1].clone())
            .collect()
    }
}

/// The ray of a label set.
pub fn ray(j: &LabelSet, a: &Ambient) -> Result<Vec<i64>> {
    let n = a.len();
    if let Some(&bad) = j.as_slice().iter().find(|&&i| i == 0 || i as usize > n) {
        return Err(Error::IndexOutOfRange { index: bad, len: n });
    }
    let mut v = vec![0i64; n];
    for &(s, e) in &a.blocks {
        if s > e {
            continue;
        }
        let inside = (s..=e).filter(|&i| j.contains(i)).count() as i64;
        let outside = (e - s + 1) as i64 - inside;
        for i in s..=e {
            v[i as usize - 1] = if j.contains(i) { outside } else { -inside };
        }
    }
    Ok(v)
}

fn is_zero_ray(j: &LabelSet, a: &Ambient) -> bool {
    ray(j, a).is_ok_and(|v| v.iter().all(|&x| x == 0))
}

/// Rays of the cone of a maximal tree, with the label of each ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub labels: Vec<LabelSet>,
    pub rays: Vec<Vec<i64>>,
}

pub fn cone(t: &PebbleTree, a: &Ambient) -> Result<Cone> {
    if !t.is_maximal() {
        return Err(Error::NotMaximal);
    }
    let labels = label_sets(t, &a.params);
    let rays = labels.iter().map(|l| ray(l, a)).collect::<Result<_>>()?;
    Ok(Cone { labels, rays })
}

impl Cone {
    /// Reduced ray matrix with one column per ray.
    fn reduced_columns(&self, a: &Ambient) -> Vec<Vec<Rational>> {
        let reduced: Vec<Vec<i64>> = self.rays.iter().map(|r| a.reduce(r)).collect();
        let d = a.dimension();
        (0..d)
            .map(|row| reduced.iter().map(|r| rat(r[row])).collect())
            .collect()
    }

    /// Whether the rays are linearly independent and span the subspace.
    pub fn is_simplicial(&self, a: &Ambient) -> bool {
        self.rays.len() == a.dimension() && rank(&self.reduced_columns(a)) == self.rays.len()
    }

    /// Coordinates of a point of the subspace in the basis of rays.
    pub fn coordinates(&self, point: &[Rational], a: &Ambient) -> Option<Vec<Rational>> {
        if self.rays.len() != a.dimension() {
            return None;
        }
        solve(&self.reduced_columns(a), &a.reduce(point))
    }

    /// Determinant of the reduced ray matrix.
    pub fn determinant(&self, a: &Ambient) -> Rational {
        determinant(&self.reduced_columns(a))
    }

    /// Whether each of `rays` is an integer combination of this cone's rays.
    /// Applied to all rays of the fan, this says the cone's rays form a basis
    /// of the lattice the fan's rays generate.
    pub fn spans_integrally(&self, rays: &[Vec<i64>], a: &Ambient) -> bool {
        rays.iter().all(|r| {
            let point: Vec<Rational> = r.iter().map(|&x| rat(x)).collect();
            self.coordinates(&point, a)
                .is_some_and(|c| c.iter().all(|x| x.is_integer()))
        })
    }
}

/// The distinct nonzero rays of a set of cones.
fn all_rays<'a>(cones: impl IntoIterator<Item = &'a Cone>) -> Vec<Vec<i64>> {
    let mut rays: Vec<Vec<i64>> = cones
        .into_iter()
        .flat_map(|c| c.rays.iter().cloned())
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    rays.sort();
    rays.dedup();
    rays
}

/// Nodes at or below `path` that carry a pebble of `color`, stopping at the
/// first such node on every branch.
fn closest_pebbled(t: &PebbleTree, path: &NodePath, color: Color, include_self: bool) -> Vec<NodePath> {
    let node = t.subtree(path).expect("path inside the tree");
    if include_self && node.pebbles().contains(&color) {
        return vec![path.clone()];
    }
    let mut out = Vec::new();
    for i in 0..node.arity() {
        let mut q = path.clone();
        q.push(i);
        out.extend(closest_pebbled(t, &q, color, true));
    }
    out
}

fn child(path: &NodePath) -> NodePath {
    let mut q = path.clone();
    q.push(0);
    q
}

fn add(map: &mut BTreeMap<LabelSet, i64>, t: &PebbleTree, path: &NodePath, p: &Params, coef: i64) {
    let label = lambda(t, path, p).expect("path inside the tree");
    *map.entry(label).or_default() += coef;
}

/// Expresses the colored copies `L ⊗ C` of the leaf interval of the subtree
/// at `path` as `Σ (g_U - g_V)` over the closest pebbled nodes `U` of each
/// color of `C`, where `V` is the child of `U`. Returns the coefficients of
/// that combination, keyed by label.
pub fn pebble_combination(t: &PebbleTree, path: &NodePath, colors: ColorMask, p: &Params) -> BTreeMap<LabelSet, i64> {
    let mut out = BTreeMap::new();
    for c in mask_colors(colors) {
        for u in closest_pebbled(t, path, c, true) {
            add(&mut out, t, &u, p, 1);
            add(&mut out, t, &child(&u), p, -1);
        }
    }
    out
}

fn extend(into: &mut BTreeMap<LabelSet, i64>, from: BTreeMap<LabelSet, i64>, sign: i64) {
    for (k, v) in from {
        *into.entry(k).or_default() += sign * v;
    }
}

fn at(path: &NodePath, tail: &[usize]) -> NodePath {
    let mut q = path.clone();
    q.extend_from_slice(tail);
    q
}

fn balanced_at(t: &PebbleTree, path: &NodePath, p: &Params) -> ColorMask {
    t.subtree(path)
        .expect("path inside the tree")
        .balanced_colors(p.colors())
}

/// The dependence predicted by the local template of a flip, written as
/// coefficients `c_J` with `Σ c_J g_J = 0` and coefficient 1 on both
/// exchanged rays. Zero rays are left out.
pub fn template_dependence(flip: &LocalFlip, p: &Params) -> BTreeMap<LabelSet, i64> {
    let [a, b] = &flip.trees;
    let r = &flip.pivot;
    let mut c = BTreeMap::new();
    add(&mut c, a, &flip.exchanged[0], p, 1);
    add(&mut c, b, &flip.exchanged[1], p, 1);
    match flip.case {
        FlipCase::Ternary => {
            let s = at(r, &[0]);
            let y = at(r, &[0, 1]);
            let s2 = at(r, &[1]);
            let root_colors = balanced_at(a, r, p);
            add(&mut c, a, r, p, -1);
            add(&mut c, a, &y, p, -1);
            let own = balanced_at(a, &s, p) & !root_colors;
            extend(&mut c, pebble_combination(a, &s, own, p), -1);
            let own2 = balanced_at(b, &s2, p) & !root_colors;
            extend(&mut c, pebble_combination(b, &s2, own2, p), -1);
            let shared = balanced_at(a, &y, p) & !root_colors;
            extend(&mut c, pebble_combination(a, &y, shared, p), 1);
        }
        FlipCase::PebbleLeft => {
            let color = color_bit(flip.color.expect("pebble case"));
            add(&mut c, a, r, p, -1);
            add(&mut c, a, &at(r, &[0, 0]), p, -1);
            extend(&mut c, pebble_combination(a, &at(r, &[1]), color, p), 1);
        }
        FlipCase::PebbleRight => {
            let color = color_bit(flip.color.expect("pebble case"));
            add(&mut c, a, r, p, -1);
            add(&mut c, a, &at(r, &[1, 0]), p, -1);
            extend(&mut c, pebble_combination(a, &at(r, &[0]), color, p), 1);
        }
        FlipCase::PebbleAcross => {
            let color = flip.color.expect("pebble case");
            add(&mut c, a, &at(r, &[0, 0]), p, -1);
            add(&mut c, a, &at(r, &[1]), p, -1);
            let ancestor = (0..r.len())
                .rev()
                .map(|k| r[..k].to_vec())
                .find(|q| a.subtree(q).expect("ancestor").pebbles().contains(&color));
            let top = match &ancestor {
                Some(u0) => {
                    add(&mut c, a, u0, p, -1);
                    add(&mut c, a, &child(u0), p, 1);
                    u0.clone()
                }
                None => Vec::new(),
            };
            for u in closest_pebbled(a, &top, color, false) {
                if u.starts_with(r) {
                    continue;
                }
                add(&mut c, a, &u, p, 1);
                add(&mut c, a, &child(&u), p, -1);
            }
        }
        FlipCase::PebbleSwap => {
            add(&mut c, a, r, p, -1);
            add(&mut c, a, &at(r, &[0, 0]), p, -1);
        }
    }
    let amb = Ambient::new(p);
    c.into_iter()
        .filter(|(k, v)| *v != 0 && !is_zero_ray(k, &amb))
        .collect()
}

/// The linear dependence among the rays of two adjacent cones.
#[derive(Debug, Clone)]
pub struct WallDependence {
    pub flip: LocalFlip,
    /// Labels of the two exchanged rays, first in `flip.trees[0]`.
    pub exchanged: [LabelSet; 2],
    /// Kernel vector of the ray matrix scaled so the exchanged coefficients
    /// sum to 2.
    pub coefficients: BTreeMap<LabelSet, Rational>,
    /// The dependence predicted by the local template.
    pub template: BTreeMap<LabelSet, i64>,
}

impl WallDependence {
    pub fn case(&self) -> FlipCase {
        self.flip.case
    }

    /// Whether both exchanged rays have coefficient exactly 1.
    pub fn exchanged_unit(&self) -> bool {
        self.exchanged
            .iter()
            .all(|l| self.coefficients.get(l).is_some_and(|c| c.is_one()))
    }

    pub fn exchanged_positive(&self) -> bool {
        self.exchanged
            .iter()
            .all(|l| self.coefficients.get(l).is_some_and(|c| c.is_positive()))
    }

    pub fn matches_template(&self) -> bool {
        let nonzero: BTreeMap<&LabelSet, &Rational> =
            self.coefficients.iter().filter(|(_, v)| !v.is_zero()).collect();
        nonzero.len() == self.template.len()
            && self
                .template
                .iter()
                .all(|(k, &v)| nonzero.get(k).is_some_and(|c| **c == rat(v)))
    }
}

/// Computes the dependence across the wall shared by the cones of a flip.
pub fn flip_dependence(flip: &LocalFlip, a: &Ambient) -> Result<WallDependence> {
    let p = a.params;
    let [t0, t1] = &flip.trees;
    let mut labels = label_sets(t0, &p);
    labels.extend(label_sets(t1, &p));
    labels.sort();
    labels.dedup();
    let rays: Vec<Vec<i64>> = labels.iter().map(|l| ray(l, a)).collect::<Result<_>>()?;
    let matrix: Vec<Vec<Rational>> = (0..a.len())
        .map(|row| rays.iter().map(|r| rat(r[row])).collect())
        .collect();
    let kernel = nullspace(&matrix);
    let exchanged = [
        lambda(t0, &flip.exchanged[0], &p)?,
        lambda(t1, &flip.exchanged[1], &p)?,
    ];
    if kernel.len() != 1 {
        return Err(Error::CertificationFailed(format!(
            "the rays around the wall of {} have a {}-dimensional dependence space",
            flip.ridge,
            kernel.len()
        )));
    }
    let pos = |l: &LabelSet| labels.binary_search(l).expect("exchanged label in union");
    let sum = &kernel[0][pos(&exchanged[0])] + &kernel[0][pos(&exchanged[1])];
    if sum.is_zero() {
        return Err(Error::CertificationFailed(format!(
            "exchanged rays around {} cancel",
            flip.ridge
        )));
    }
    let scale = rat(2) / sum;
    let coefficients = labels
        .iter()
        .zip(&kernel[0])
        .map(|(l, v)| (l.clone(), v * &scale))
        .collect();
    Ok(WallDependence {
        flip: flip.clone(),
        exchanged,
        coefficients,
        template: template_dependence(flip, &p),
    })
}

/// The dependence between the cones of two maximal trees related by a flip.
pub fn wall_dependence(t: &PebbleTree, other: &PebbleTree, a: &Ambient) -> Result<WallDependence> {
    let flip = crate::complex::find_flip(t, other, &a.params)?;
    flip_dependence(&flip, a)
}

/// How the third sum of the witness vector places its intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessForm {
    /// Intervals `[ℓi+1, ℓ(i+1)-1]` for `i ∈ [u]`, read literally.
    Literal,
    /// Intervals `[ℓ(b+i)+1, ℓ(b+i+1)-1]`, inside the block of the `i`-th
    /// unbalanced color.
    Shifted,
}

/// The witness point used to certify that the cones do not overlap.
pub fn witness_vector(a: &Ambient) -> Vec<i64> {
    witness_vector_in_form(a, WitnessForm::Shifted)
}

pub fn witness_vector_in_form(a: &Ambient, form: WitnessForm) -> Vec<i64> {
    let p = a.params;
    let l = p.leaves as i64;
    let mut v = vec![0i64; a.len()];
    let mut push = |s: i64, e: i64, weight: i64| {
        let j = LabelSet::interval(s.max(1) as u32, e.max(0) as u32);
        let r = ray(&j, a).expect("interval inside the index range");
        for (x, y) in v.iter_mut().zip(r) {
            *x += weight * y;
        }
    };
    for i in 1..=l - 2 {
        push(1, i, 1);
    }
    for i in 1..=p.balanced as i64 {
        push(l * i, l * (i + 1) - 1, 1 << (l + i));
    }
    for i in 1..=p.unbalanced as i64 {
        let shift = match form {
            WitnessForm::Literal => 0,
            WitnessForm::Shifted => p.balanced as i64,
        };
        push(l * (i + shift) + 1, l * (i + shift + 1) - 1, 1 << (l + p.balanced as i64 + i));
    }
    v
}

/// Options for fan certification.
#[derive(Debug, Clone)]
pub struct FanOptions {
    pub cap: usize,
    pub seed: u64,
    pub samples: usize,
    pub witness: WitnessForm,
}

impl Default for FanOptions {
    fn default() -> Self {
        FanOptions {
            cap: DEFAULT_CAP,
            seed: 0,
            samples: 100,
            witness: WitnessForm::Shifted,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConeRecord {
    pub tree: PebbleTree,
    pub cone: Cone,
    pub simplicial: bool,
    /// Determinant in the coordinates obtained by dropping the last entry of
    /// every block.
    pub determinant: Rational,
    /// Whether the rays form a basis of the lattice generated by all rays.
    pub integral_basis: bool,
}

#[derive(Debug, Clone)]
pub struct FanCertificate {
    pub params: Params,
    pub cones: Vec<ConeRecord>,
    pub walls: Vec<WallDependence>,
    /// `(vertex, vertex)` indices into `cones` for every wall.
    pub wall_ends: Vec<[usize; 2]>,
    pub witness: Vec<i64>,
    /// Cones whose interior contains the witness.
    pub witness_cones: Vec<usize>,
    pub seed: u64,
    pub samples: usize,
    /// Sampled points not found in any closed cone.
    pub uncovered: usize,
    pub failures: Vec<String>,
}

impl FanCertificate {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(|c| c.integral_basis)
    }

    pub fn to_json(&self) -> Value {
        let p = self.params;
        json!({
            "params": {"leaves": p.leaves, "balanced": p.balanced, "unbalanced": p.unbalanced},
            "cones": self.cones.iter().map(|c| json!({
                "tree": serde_json::to_value(&c.tree).expect("tree"),
                "labels": c.cone.labels,
                "rays": c.cone.rays,
                "simplicial": c.simplicial,
                "determinant": c.determinant.to_string(),
                "integral_basis": c.integral_basis,
            })).collect::<Vec<_>>(),
            "walls": self.walls.iter().map(|w| json!({
                "trees": [w.flip.trees[0].to_json(), w.flip.trees[1].to_json()],
                "case": w.case().number(),
                "dependence": w.coefficients.iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(k, v)| json!({"label": k, "coefficient": v.to_string()}))
                    .collect::<Vec<_>>(),
                "matches_template": w.matches_template(),
            })).collect::<Vec<_>>(),
            "witness": {
                "vector": self.witness,
                "unique_cone": (self.witness_cones.len() == 1)
                    .then(|| self.cones[self.witness_cones[0]].tree.to_json()),
                "cones_containing": self.witness_cones.len(),
            },
            "sampling": {"seed": self.seed, "points": self.samples, "uncovered": self.uncovered},
            "smooth": self.is_smooth(),
            "passed": self.passed(),
            "failures": self.failures,
        })
    }
}

/// Random integer point of the subspace: free coordinates drawn uniformly,
/// the last coordinate of each block fixed by the zero-sum condition.
fn sample_point(a: &Ambient, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let mut v = vec![0i64; a.len()];
    for &(s, e) in &a.blocks {
        if s > e {
            continue;
        }
        let mut sum = 0;
        for i in s..e {
            let x = rng.gen_range(-20..=20);
            v[i as usize - 1] = x;
            sum += x;
        }
        v[e as usize - 1] = -sum;
    }
    v.into_iter().map(rat).collect()
}

/// Runs every fan check and records the outcome of each.
pub fn fan_certificate(p: &Params, opts: &FanOptions) -> Result<FanCertificate> {
    let a = Ambient::new(p);
    let complex = build_complex_capped(p, opts.cap)?;
    let graph = FlipGraph::from_complex(&complex)?;
    let mut failures = Vec::new();

    let mut cones = Vec::new();
    for t in graph.vertices() {
        let cone = cone(t, &a)?;
        let simplicial = cone.is_simplicial(&a);
        if !simplicial {
            failures.push(format!("cone of {t} is not simplicial"));
        }
        let determinant = if simplicial { cone.determinant(&a) } else { Rational::zero() };
        cones.push(ConeRecord {
            tree: t.clone(),
            cone,
            simplicial,
            determinant,
            integral_basis: false,
        });
    }
    let lattice = all_rays(cones.iter().map(|c| &c.cone));
    for c in &mut cones {
        c.integral_basis = c.simplicial && c.cone.spans_integrally(&lattice, &a);
    }

    let mut walls = Vec::new();
    let mut wall_ends = Vec::new();
    for e in graph.edges() {
        match flip_dependence(&e.flip, &a) {
            Ok(w) => {
                if !w.exchanged_positive() {
                    failures.push(format!("wall at {} has a non-positive exchanged coefficient", e.flip.ridge));
                } else if !w.exchanged_unit() {
                    failures.push(format!("wall at {} is not normalized to unit coefficients", e.flip.ridge));
                }
                if !w.matches_template() {
                    failures.push(format!("wall at {} does not match its case {} template", e.flip.ridge, w.case().number()));
                }
                walls.push(w);
                wall_ends.push(e.ends);
            }
            Err(err) => failures.push(err.to_string()),
        }
    }

    let witness = witness_vector_in_form(&a, opts.witness);
    let point: Vec<Rational> = witness.iter().map(|&x| rat(x)).collect();
    if !a.contains(&point) {
        failures.push("witness vector lies outside the subspace".into());
    }
    let witness_cones: Vec<usize> = cones
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            c.simplicial
                && c.cone
                    .coordinates(&point, &a)
                    .is_some_and(|x| x.iter().all(Signed::is_positive))
        })
        .map(|(i, _)| i)
        .collect();
    if witness_cones.len() != 1 && !cones.is_empty() {
        failures.push(format!(
            "witness vector lies in {} open cones",
            witness_cones.len()
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut uncovered = 0;
    for _ in 0..opts.samples {
        let x = sample_point(&a, &mut rng);
        let covered = cones.iter().any(|c| {
            c.simplicial
                && c.cone
                    .coordinates(&x, &a)
                    .is_some_and(|y| y.iter().all(|v| !v.is_negative()))
        });
        if !covered {
            uncovered += 1;
        }
    }
    if uncovered > 0 && !cones.is_empty() {
        failures.push(format!("{uncovered} sampled points lie in no cone"));
    }

    Ok(FanCertificate {
        params: *p,
        cones,
        walls,
        wall_ends,
        witness,
        witness_cones,
        seed: opts.seed,
        samples: opts.samples,
        uncovered,
        failures,
    })
}

/// Certifies that the cones of the maximal trees form a complete simplicial
/// fan, failing with the first violated check.
pub fn certify_fan(p: &Params, opts: &FanOptions) -> Result<FanCertificate> {
    let cert = fan_certificate(p, opts)?;
    match cert.failures.first() {
        Some(f) => Err(Error::CertificationFailed(f.clone())),
        None => Ok(cert),
    }
}

/// Whether the rays of every maximal cone form a basis of the lattice
/// generated by all rays of the fan.
pub fn check_smooth(p: &Params) -> Result<bool> {
    let a = Ambient::new(p);
    let cones = crate::enumerate::enumerate(p, true)?
        .iter()
        .map(|t| cone(t, &a))
        .collect::<Result<Vec<_>>>()?;
    let lattice = all_rays(&cones);
    Ok(cones
        .iter()
        .all(|c| c.is_simplicial(&a) && c.spans_integrally(&lattice, &a)))
}

/// Hyperplanes `x_i = x_j` that cut through the interior of some maximal
/// cone, as `(tree, i, j)` triples.
pub fn braid_crossings(p: &Params) -> Result<Vec<(PebbleTree, u32, u32)>> {
    let a = Ambient::new(p);
    let n = a.len() as u32;
    let mut out = Vec::new();
    for t in crate::enumerate::enumerate(p, true)? {
        let c = cone(&t, &a)?;
        for i in 1..=n {
            for j in i + 1..=n {
                let values = c.rays.iter().map(|r| r[i as usize - 1] - r[j as usize - 1]);
                let (pos, neg) = values.fold((false, false), |(pp, nn), v| (pp || v > 0, nn || v < 0));
                if pos && neg {
                    out.push((t.clone(), i, j));
                }
            }
        }
    }
    Ok(out)
}
