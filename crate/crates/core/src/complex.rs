//! Contraction, the label-set encoding of subtrees, the contraction poset,
//! the simplicial complex it induces, and the flip graph on maximal trees.

use crate::enumerate::{enumerate_capped, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::tree::{color_bit, mask_colors, Color, ColorMask, NodePath, Params, PebbleTree, SubtreeInfo};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

/// A sorted set of label indices in `1..=ℓ(b+u+1)-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct LabelSet(Vec<u32>);

impl LabelSet {
    pub fn new(mut items: Vec<u32>) -> Self {
        items.sort_unstable();
        items.dedup();
        LabelSet(items)
    }

    /// The set `[s, e]` of consecutive indices (empty when `e < s`).
    pub fn interval(s: u32, e: u32) -> Self {
        LabelSet((s..=e).collect())
    }

    /// Copies of the leaf interval `[s, t]` shifted into the block of each
    /// color of `colors`: the union of `[ℓc+s-1, ℓc+t-1]`.
    pub fn colored(p: &Params, s: usize, t: usize, colors: ColorMask) -> Self {
        let l = p.leaves as u32;
        let mut out = Vec::new();
        for c in mask_colors(colors) {
            out.extend((l * c + s as u32 - 1)..=(l * c + t as u32 - 1));
        }
        LabelSet::new(out)
    }

    /// The encoding of a subtree with leaves `[s, t]` and balanced colors
    /// `colors`: `[s, t-1]` together with [`LabelSet::colored`].
    pub fn encode(p: &Params, s: usize, t: usize, colors: ColorMask) -> Self {
        let mut out = LabelSet::colored(p, s, t, colors).0;
        out.extend(s as u32..t as u32);
        LabelSet::new(out)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn union(&self, other: &LabelSet) -> LabelSet {
        LabelSet::new(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &LabelSet) -> LabelSet {
        LabelSet(self.0.iter().copied().filter(|&i| other.contains(i)).collect())
    }

    pub fn is_subset(&self, other: &LabelSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Removes the internal non-root node at `path`, splicing its children into
/// its parent and moving its pebbles to the parent.
pub fn contract(t: &PebbleTree, path: &[usize]) -> Result<PebbleTree> {
    let bad = || Error::BadPath(path.to_vec());
    let (&last, parent_path) = path.split_last().ok_or_else(bad)?;
    let target = t.subtree(path).ok_or_else(bad)?;
    if target.is_leaf() {
        return Err(bad());
    }
    let mut out = t.clone();
    let parent = out.subtree_mut(parent_path).expect("parent of a valid path");
    let (pebbles, children) = parent.children_mut().remove(last).into_parts();
    let tail = parent.children_mut().split_off(last);
    parent.children_mut().extend(children);
    parent.children_mut().extend(tail);
    parent.pebbles_mut().extend(pebbles);
    parent.pebbles_mut().sort_unstable();
    Ok(out)
}

/// Paths of the internal nodes other than the root, in preorder.
pub fn contractible_nodes(t: &PebbleTree) -> Vec<NodePath> {
    t.subtrees(0)
        .into_iter()
        .filter(|s| !s.is_root() && !s.is_leaf())
        .map(|s| s.path)
        .collect()
}

fn info_label(p: &Params, info: &SubtreeInfo) -> LabelSet {
    LabelSet::encode(p, info.first_leaf, info.last_leaf(), info.balanced)
}

/// Label set of the subtree at `path`.
pub fn lambda(t: &PebbleTree, path: &[usize], p: &Params) -> Result<LabelSet> {
    t.subtrees(p.colors())
        .iter()
        .find(|s| s.path == path)
        .map(|s| info_label(p, s))
        .ok_or_else(|| Error::BadPath(path.to_vec()))
}

/// Labels of all internal non-root subtrees, sorted: the face of `t`.
pub fn label_sets(t: &PebbleTree, p: &Params) -> Vec<LabelSet> {
    let mut out: Vec<LabelSet> = t
        .subtrees(p.colors())
        .iter()
        .filter(|s| !s.is_root() && !s.is_leaf())
        .map(|s| info_label(p, s))
        .collect();
    out.sort();
    out
}

/// Labels of internal non-root subtrees keyed to their paths.
pub fn labelled_paths(t: &PebbleTree, p: &Params) -> Vec<(NodePath, LabelSet)> {
    t.subtrees(p.colors())
        .iter()
        .filter(|s| !s.is_root() && !s.is_leaf())
        .map(|s| (s.path.clone(), info_label(p, s)))
        .collect()
}

/// The contraction poset: all trees of a family, ordered so that a tree is
/// covered by the trees it is a single contraction of.
#[derive(Debug, Clone)]
pub struct Poset {
    params: Params,
    trees: Vec<PebbleTree>,
    index: HashMap<PebbleTree, usize>,
    /// `lower[i]`: trees obtained from tree `i` by one contraction.
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
}

impl Poset {
    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn trees(&self) -> &[PebbleTree] {
        &self.trees
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn index_of(&self, t: &PebbleTree) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.trees[i].node_count()
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    /// Number of elements of each rank, from the smallest rank present.
    pub fn rank_sizes(&self) -> Vec<usize> {
        let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..self.len() {
            *hist.entry(self.rank(i)).or_default() += 1;
        }
        let (Some(&lo), Some(&hi)) = (hist.keys().next(), hist.keys().next_back()) else {
            return Vec::new();
        };
        (lo..=hi).map(|r| hist.get(&r).copied().unwrap_or(0)).collect()
    }

    pub fn minima(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.lower[i].is_empty()).collect()
    }

    pub fn maxima(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper[i].is_empty()).collect()
    }

    fn closure(&self, start: usize, step: &[Vec<usize>]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(i) = queue.pop_front() {
            out.push(i);
            for &j in &step[i] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Elements above or equal to `i`.
    pub fn upper_set(&self, i: usize) -> Vec<usize> {
        self.closure(i, &self.upper)
    }

    /// Elements below or equal to `i`.
    pub fn lower_set(&self, i: usize) -> Vec<usize> {
        self.closure(i, &self.lower)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.upper_set(i).binary_search(&j).is_ok()
    }

    /// Number of elements `k` with `i ≤ k ≤ j`.
    pub fn interval_size(&self, i: usize, j: usize) -> usize {
        let below: HashSet<usize> = self.lower_set(j).into_iter().collect();
        self.upper_set(i).iter().filter(|k| below.contains(k)).count()
    }
}

/// Builds the contraction poset with the default cap.
pub fn build_poset(p: &Params) -> Result<Poset> {
    build_poset_capped(p, DEFAULT_CAP)
}

pub fn build_poset_capped(p: &Params, cap: usize) -> Result<Poset> {
    let trees = enumerate_capped(p, false, cap)?;
    let index: HashMap<PebbleTree, usize> =
        trees.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let mut lower = vec![Vec::new(); trees.len()];
    let mut upper = vec![Vec::new(); trees.len()];
    for (i, t) in trees.iter().enumerate() {
        for path in contractible_nodes(t) {
            let c = contract(t, &path)?;
            let j = *index.get(&c).ok_or_else(|| {
                Error::CertificationFailed(format!("contraction {c} of {t} is not in the family"))
            })?;
            lower[i].push(j);
            upper[j].push(i);
        }
    }
    for v in lower.iter_mut().chain(upper.iter_mut()) {
        v.sort_unstable();
        v.dedup();
    }
    Ok(Poset {
        params: *p,
        trees,
        index,
        lower,
        upper,
    })
}

/// The complex whose faces are the label sets of all trees of a family.
#[derive(Debug, Clone)]
pub struct Complex {
    params: Params,
    trees: Vec<PebbleTree>,
    faces: Vec<Vec<LabelSet>>,
    by_face: HashMap<Vec<LabelSet>, usize>,
    facets: Vec<usize>,
}

impl Complex {
    pub fn from_trees(p: &Params, trees: Vec<PebbleTree>) -> Self {
        let faces: Vec<Vec<LabelSet>> = trees.iter().map(|t| label_sets(t, p)).collect();
        let by_face = faces.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        let top = p.dimension().max(0) as usize;
        let facets = (0..trees.len())
            .filter(|&i| faces[i].len() == top && trees[i].is_maximal())
            .collect();
        Complex {
            params: *p,
            trees,
            faces,
            by_face,
            facets,
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn trees(&self) -> &[PebbleTree] {
        &self.trees
    }

    /// Face of every tree, aligned with [`Complex::trees`].
    pub fn faces(&self) -> &[Vec<LabelSet>] {
        &self.faces
    }

    /// Indices of the maximal trees.
    pub fn facets(&self) -> &[usize] {
        &self.facets
    }

    pub fn tree_of_face(&self, face: &[LabelSet]) -> Option<usize> {
        self.by_face.get(face).copied()
    }

    /// All labels occurring in some face.
    pub fn ground_set(&self) -> Vec<LabelSet> {
        let mut all: Vec<LabelSet> = self.faces.iter().flatten().cloned().collect();
        all.sort();
        all.dedup();
        all
    }

    /// Whether distinct trees always have distinct faces.
    pub fn is_injective(&self) -> bool {
        self.by_face.len() == self.faces.len()
    }
}

pub fn build_complex(p: &Params) -> Result<Complex> {
    build_complex_capped(p, DEFAULT_CAP)
}

pub fn build_complex_capped(p: &Params, cap: usize) -> Result<Complex> {
    Ok(Complex::from_trees(p, enumerate_capped(p, false, cap)?))
}

/// The node type distinguishing a codimension-one tree from a maximal one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RidgeKind {
    TernaryNode,
    BinaryWithPebble,
    UnaryWithTwoPebbles,
}

#[derive(Debug, Clone, Default)]
pub struct PseudomanifoldReport {
    pub ridges: usize,
    pub kinds: BTreeMap<RidgeKind, usize>,
    pub violations: Vec<String>,
}

impl PseudomanifoldReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every codimension-one face lies in exactly two facets and is
/// the face of a tree with exactly one non-maximal node of one of the three
/// possible kinds.
pub fn check_pseudomanifold(c: &Complex) -> PseudomanifoldReport {
    let mut report = PseudomanifoldReport::default();
    let mut incidence: HashMap<Vec<LabelSet>, Vec<usize>> = HashMap::new();
    for &f in &c.facets {
        let face = &c.faces[f];
        for skip in 0..face.len() {
            let mut ridge = face.clone();
            ridge.remove(skip);
            incidence.entry(ridge).or_default().push(f);
        }
    }
    let mut keys: Vec<&Vec<LabelSet>> = incidence.keys().collect();
    keys.sort();
    report.ridges = keys.len();
    for ridge in keys {
        let facets = &incidence[ridge];
        let shown: Vec<String> = ridge.iter().map(LabelSet::to_string).collect();
        if facets.len() != 2 {
            report.violations.push(format!(
                "ridge {} lies in {} facets",
                shown.join(" "),
                facets.len()
            ));
        }
        match c.tree_of_face(ridge) {
            None => report
                .violations
                .push(format!("ridge {} is not the face of any tree", shown.join(" "))),
            Some(t) => match ridge_kind(&c.trees[t]) {
                Some(kind) => *report.kinds.entry(kind).or_default() += 1,
                None => report.violations.push(format!(
                    "ridge tree {} has no single non-maximal node",
                    c.trees[t]
                )),
            },
        }
    }
    let ridge_trees = c
        .faces
        .iter()
        .filter(|f| f.len() + 1 == c.params.dimension().max(0) as usize)
        .count();
    if ridge_trees != report.ridges {
        report.violations.push(format!(
            "{} trees have a ridge-sized face but {} ridges were found",
            ridge_trees, report.ridges
        ));
    }
    report
}

fn special_nodes(t: &PebbleTree) -> Vec<SubtreeInfo> {
    t.subtrees(0)
        .into_iter()
        .filter(|s| !s.is_leaf() && !matches!((s.arity, s.pebbles.len()), (1, 1) | (2, 0)))
        .collect()
}

fn ridge_kind(t: &PebbleTree) -> Option<RidgeKind> {
    let special = special_nodes(t);
    if special.len() != 1 {
        return None;
    }
    let s = &special[0];
    match (s.arity, s.pebbles.len()) {
        (3, 0) => Some(RidgeKind::TernaryNode),
        (2, 1) => Some(RidgeKind::BinaryWithPebble),
        (1, 2) if s.pebbles[0] != s.pebbles[1] => Some(RidgeKind::UnaryWithTwoPebbles),
        _ => None,
    }
}

/// The five local pictures of a flip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FlipCase {
    /// `[[X,Y],Z]` and `[X,[Y,Z]]` around a ternary node.
    Ternary,
    /// `[•X, Y]` and `•[X, Y]` with `X` unbalanced and `Y` balanced for `•`.
    PebbleLeft,
    /// `[X, •Y]` and `•[X, Y]` with `X` balanced and `Y` unbalanced for `•`.
    PebbleRight,
    /// `[•X, Y]` and `[X, •Y]` with both children unbalanced for `•`.
    PebbleAcross,
    /// `∘(•X)` and `•(∘X)` around a unary node with two pebbles.
    PebbleSwap,
}

impl FlipCase {
    /// Number of the case, from 1 to 5.
    pub fn number(self) -> u8 {
        match self {
            FlipCase::Ternary => 1,
            FlipCase::PebbleLeft => 2,
            FlipCase::PebbleRight => 3,
            FlipCase::PebbleAcross => 4,
            FlipCase::PebbleSwap => 5,
        }
    }
}

/// A flip reconstructed from the tree of its common face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFlip {
    pub case: FlipCase,
    /// Tree whose face is the common ridge.
    pub ridge: PebbleTree,
    /// Path of the non-maximal node of the ridge tree; in both maximal trees
    /// this is the parent of the exchanged subtree.
    pub pivot: NodePath,
    /// For cases 2 to 4, the color of the pebble moving across; for case 5,
    /// the color carried by the pivot in the first tree.
    pub color: Option<Color>,
    /// The two maximal trees.
    pub trees: [PebbleTree; 2],
    /// Path of the exchanged subtree in each maximal tree.
    pub exchanged: [NodePath; 2],
}

fn replace_at(t: &PebbleTree, path: &[usize], new: PebbleTree) -> PebbleTree {
    let mut out = t.clone();
    *out.subtree_mut(path).expect("path inside the tree") = new;
    out
}

fn unary(color: Color, child: PebbleTree) -> PebbleTree {
    PebbleTree::node(vec![color], vec![child])
}

fn binary(a: PebbleTree, b: PebbleTree) -> PebbleTree {
    PebbleTree::node(Vec::new(), vec![a, b])
}

/// Rebuilds both maximal trees containing the face of `ridge`.
pub fn open_ridge(ridge: &PebbleTree, p: &Params) -> Result<LocalFlip> {
    let mismatch = || Error::TemplateMismatch {
        ridge: ridge.to_json(),
    };
    let special = special_nodes(ridge);
    if special.len() != 1 {
        return Err(mismatch());
    }
    let pivot = special[0].path.clone();
    let node = ridge.subtree(&pivot).expect("path from walk");
    let ch = node.children();
    let at = |v: usize| {
        let mut q = pivot.clone();
        q.push(v);
        q
    };
    let balanced_for = |t: &PebbleTree, c: Color| t.balanced_colors(p.colors()) & color_bit(c) != 0;
    let (case, color, a, b, exchanged) = match (ch.len(), node.pebbles()) {
        (3, []) => (
            FlipCase::Ternary,
            None,
            binary(binary(ch[0].clone(), ch[1].clone()), ch[2].clone()),
            binary(ch[0].clone(), binary(ch[1].clone(), ch[2].clone())),
            [at(0), at(1)],
        ),
        (2, &[c]) => {
            let (x, y) = (ch[0].clone(), ch[1].clone());
            match (balanced_for(&x, c), balanced_for(&y, c)) {
                (false, true) => (
                    FlipCase::PebbleLeft,
                    Some(c),
                    binary(unary(c, x.clone()), y.clone()),
                    unary(c, binary(x, y)),
                    [at(0), at(0)],
                ),
                (true, false) => (
                    FlipCase::PebbleRight,
                    Some(c),
                    binary(x.clone(), unary(c, y.clone())),
                    unary(c, binary(x, y)),
                    [at(1), at(0)],
                ),
                (false, false) => (
                    FlipCase::PebbleAcross,
                    Some(c),
                    binary(unary(c, x.clone()), y.clone()),
                    binary(x, unary(c, y)),
                    [at(0), at(1)],
                ),
                (true, true) => return Err(mismatch()),
            }
        }
        (1, &[c, d]) if c != d => (
            FlipCase::PebbleSwap,
            Some(c),
            unary(c, unary(d, ch[0].clone())),
            unary(d, unary(c, ch[0].clone())),
            [at(0), at(0)],
        ),
        _ => return Err(mismatch()),
    };
    Ok(LocalFlip {
        case,
        ridge: ridge.clone(),
        pivot: pivot.clone(),
        color,
        trees: [replace_at(ridge, &pivot, a), replace_at(ridge, &pivot, b)],
        exchanged,
    })
}

/// Finds the flip between two maximal trees. The result keeps the
/// orientation of its local template, so `t` may be either side.
pub fn find_flip(t: &PebbleTree, other: &PebbleTree, p: &Params) -> Result<LocalFlip> {
    let mine = labelled_paths(t, p);
    let theirs: HashSet<LabelSet> = label_sets(other, p).into_iter().collect();
    let missing: Vec<&(NodePath, LabelSet)> =
        mine.iter().filter(|(_, l)| !theirs.contains(l)).collect();
    if missing.len() != 1 || theirs.len() != mine.len() {
        return Err(Error::NotAdjacent);
    }
    let ridge = contract(t, &missing[0].0)?;
    let flip = open_ridge(&ridge, p)?;
    let [a, b] = &flip.trees;
    if (a == t && b == other) || (a == other && b == t) {
        Ok(flip)
    } else {
        Err(Error::TemplateMismatch {
            ridge: ridge.to_json(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct FlipEdge {
    /// Indices into [`FlipGraph::vertices`], in the order of `flip.trees`.
    pub ends: [usize; 2],
    pub flip: LocalFlip,
}

/// Maximal trees joined by flips.
#[derive(Debug, Clone)]
pub struct FlipGraph {
    params: Params,
    vertices: Vec<PebbleTree>,
    edges: Vec<FlipEdge>,
}

impl FlipGraph {
    /// Builds the graph from the ridges of a complex, reconstructing each
    /// edge from its local template and checking it against the facets.
    pub fn from_complex(c: &Complex) -> Result<Self> {
        let p = c.params;
        let mut vertices: Vec<PebbleTree> =
            c.facets.iter().map(|&i| c.trees[i].clone()).collect();
        vertices.sort_by_cached_key(PebbleTree::to_json);
        let position: HashMap<&PebbleTree, usize> =
            vertices.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut incidence: HashMap<Vec<LabelSet>, Vec<usize>> = HashMap::new();
        for &f in &c.facets {
            let face = &c.faces[f];
            for skip in 0..face.len() {
                let mut ridge = face.clone();
                ridge.remove(skip);
                incidence.entry(ridge).or_default().push(f);
            }
        }
        let mut ridges: Vec<(Vec<LabelSet>, Vec<usize>)> = incidence.into_iter().collect();
        ridges.sort();
        let mut edges = Vec::new();
        for (ridge, facets) in ridges {
            if facets.len() != 2 {
                return Err(Error::CertificationFailed(format!(
                    "a ridge lies in {} facets",
                    facets.len()
                )));
            }
            let ridge_tree = c.tree_of_face(&ridge).ok_or_else(|| {
                Error::CertificationFailed("a ridge is not the face of any tree".into())
            })?;
            let flip = open_ridge(&c.trees[ridge_tree], &p)?;
            let found = [&c.trees[facets[0]], &c.trees[facets[1]]];
            let same = (found[0] == &flip.trees[0] && found[1] == &flip.trees[1])
                || (found[0] == &flip.trees[1] && found[1] == &flip.trees[0]);
            if !same {
                return Err(Error::TemplateMismatch {
                    ridge: c.trees[ridge_tree].to_json(),
                });
            }
            edges.push(FlipEdge {
                ends: [position[&flip.trees[0]], position[&flip.trees[1]]],
                flip,
            });
        }
        Ok(FlipGraph {
            params: p,
            vertices,
            edges,
        })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn vertices(&self) -> &[PebbleTree] {
        &self.vertices
    }

    pub fn edges(&self) -> &[FlipEdge] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.ends[0]] += 1;
            deg[e.ends[1]] += 1;
        }
        deg
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.ends[0]].push(e.ends[1]);
            adj[e.ends[1]].push(e.ends[0]);
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Number of edges of each flip case, indexed by case number minus one.
    pub fn case_counts(&self) -> [usize; 5] {
        let mut out = [0; 5];
        for e in &self.edges {
            out[e.flip.case.number() as usize - 1] += 1;
        }
        out
    }
}

pub fn flip_graph(p: &Params) -> Result<FlipGraph> {
    flip_graph_capped(p, DEFAULT_CAP)
}

pub fn flip_graph_capped(p: &Params, cap: usize) -> Result<FlipGraph> {
    FlipGraph::from_complex(&build_complex_capped(p, cap)?)
}

/// Searches for a set of labels that pairwise lie in common faces but do
/// not together form a face. Returns a smallest such set, if any.
pub fn non_flag_witness(c: &Complex) -> Option<Vec<LabelSet>> {
    let ground = c.ground_set();
    let faces: HashSet<&Vec<LabelSet>> = c.faces.iter().collect();
    let n = ground.len();
    let mut compatible = vec![vec![false; n]; n];
    for face in &c.faces {
        let idx: Vec<usize> = face
            .iter()
            .map(|l| ground.binary_search(l).expect("label from a face"))
            .collect();
        for &a in &idx {
            for &b in &idx {
                compatible[a][b] = true;
            }
        }
    }
    let max_size = c.params.dimension().max(0) as usize + 1;
    for size in 3..=max_size {
        let mut stack = Vec::new();
        if let Some(found) = search_clique(&ground, &compatible, &faces, size, 0, &mut stack) {
            return Some(found);
        }
    }
    None
}

fn search_clique(
    ground: &[LabelSet],
    compatible: &[Vec<bool>],
    faces: &HashSet<&Vec<LabelSet>>,
    size: usize,
    from: usize,
    stack: &mut Vec<usize>,
) -> Option<Vec<LabelSet>> {
    if stack.len() == size {
        let set: Vec<LabelSet> = stack.iter().map(|&i| ground[i].clone()).collect();
        return (!faces.contains(&set)).then_some(set);
    }
    for i in from..ground.len() {
        if stack.iter().all(|&j| compatible[i][j]) {
            stack.push(i);
            if let Some(found) = search_clique(ground, compatible, faces, size, i + 1, stack) {
                return Some(found);
            }
            stack.pop();
        }
    }
    None
}
