//! The pebble tree data model.
//!
//! A [`PebbleTree`] is an ordered rooted tree whose internal nodes carry a
//! multiset of colored pebbles. Leaves are implicitly numbered `1..=ℓ` from
//! left to right, so every subtree covers an interval of leaves. Colors are
//! numbered from 1: the first `b` colors must be balanced over the whole tree
//! and the next `u` colors unbalanced, as recorded in [`Params`].

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A pebble color, numbered from 1.
pub type Color = u32;

/// A set of colors stored as a bitmask: color `c` is bit `c - 1`.
pub type ColorMask = u32;

/// Largest number of colors supported by [`ColorMask`] bookkeeping.
pub const MAX_COLORS: usize = 16;

/// Returns the bit of color `c` in a [`ColorMask`].
pub fn color_bit(c: Color) -> ColorMask {
    1 << (c - 1)
}

/// Iterates over the colors contained in `mask`, in increasing order.
pub fn mask_colors(mask: ColorMask) -> impl Iterator<Item = Color> {
    (1..=32u32).filter(move |&c| (mask >> (c - 1)) & 1 == 1)
}

/// Size parameters `(ℓ, b, u)` of a family of pebble trees: `ℓ` leaves, colors
/// `1..=b` balanced and colors `b+1..=b+u` unbalanced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    pub leaves: usize,
    pub balanced: usize,
    pub unbalanced: usize,
}

impl Params {
    pub fn new(leaves: usize, balanced: usize, unbalanced: usize) -> Result<Self> {
        if leaves == 0 {
            return Err(Error::InvalidParams("a tree needs at least one leaf".into()));
        }
        if balanced + unbalanced > MAX_COLORS {
            return Err(Error::InvalidParams(format!(
                "at most {MAX_COLORS} colors are supported"
            )));
        }
        Ok(Params {
            leaves,
            balanced,
            unbalanced,
        })
    }

    /// Total number of colors `b + u`.
    pub fn colors(&self) -> usize {
        self.balanced + self.unbalanced
    }

    /// Mask of the colors that must be balanced over the whole tree.
    pub fn balanced_mask(&self) -> ColorMask {
        (1u32 << self.balanced) - 1
    }

    pub fn is_balanced_color(&self, c: Color) -> bool {
        c >= 1 && (c as usize) <= self.balanced
    }

    pub fn is_unbalanced_color(&self, c: Color) -> bool {
        (c as usize) > self.balanced && (c as usize) <= self.colors()
    }

    /// The enumeration measure `ℓ(b+u+1)`, compared against size caps.
    pub fn size(&self) -> usize {
        self.leaves * (self.colors() + 1)
    }

    /// Number of label indices `N = ℓ(b+u+1) - 1`.
    pub fn index_len(&self) -> usize {
        self.size() - 1
    }

    /// Node count of a maximal tree: `ℓ(1+b+u) - u - 1`.
    pub fn max_rank(&self) -> usize {
        self.size() - self.unbalanced - 1
    }

    /// Number of rays in a maximal cone, which is also the dimension of the
    /// fan's ambient subspace: `ℓ(1+b+u) - u - 2`.
    pub fn dimension(&self) -> isize {
        self.max_rank() as isize - 1
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.leaves, self.balanced, self.unbalanced)
    }
}

/// An ordered tree with colored pebbles. A leaf is a node with no children
/// and no pebbles. Pebble lists are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PebbleTree {
    pebbles: Vec<Color>,
    children: Vec<PebbleTree>,
}

/// Position of a node: the child indices (from 0) followed from the root.
pub type NodePath = Vec<usize>;

/// Facts about one subtree, as produced by [`PebbleTree::subtrees`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeInfo {
    pub path: NodePath,
    /// Index (from 1) of the leftmost leaf of the subtree.
    pub first_leaf: usize,
    pub leaf_count: usize,
    /// Colors whose pebble default is 0 on this subtree.
    pub balanced: ColorMask,
    pub arity: usize,
    pub pebbles: Vec<Color>,
}

impl SubtreeInfo {
    /// Index (from 1) of the rightmost leaf.
    pub fn last_leaf(&self) -> usize {
        self.first_leaf + self.leaf_count - 1
    }

    pub fn is_leaf(&self) -> bool {
        self.arity == 0
    }

    pub fn is_root(&self) -> bool {
        self.path.is_empty()
    }
}

impl PebbleTree {
    pub fn leaf() -> Self {
        PebbleTree {
            pebbles: Vec::new(),
            children: Vec::new(),
        }
    }

    /// Builds an internal node. Pebbles are sorted; validity is not checked.
    pub fn node(mut pebbles: Vec<Color>, children: Vec<PebbleTree>) -> Self {
        pebbles.sort_unstable();
        PebbleTree { pebbles, children }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn pebbles(&self) -> &[Color] {
        &self.pebbles
    }

    pub fn children(&self) -> &[PebbleTree] {
        &self.children
    }

    pub fn arity(&self) -> usize {
        self.children.len()
    }

    pub(crate) fn pebbles_mut(&mut self) -> &mut Vec<Color> {
        &mut self.pebbles
    }

    pub(crate) fn children_mut(&mut self) -> &mut Vec<PebbleTree> {
        &mut self.children
    }

    pub(crate) fn into_parts(self) -> (Vec<Color>, Vec<PebbleTree>) {
        (self.pebbles, self.children)
    }

    pub fn leaf_count(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(PebbleTree::leaf_count).sum()
        }
    }

    /// Number of internal nodes, which is the rank of the tree in the
    /// contraction poset.
    pub fn node_count(&self) -> usize {
        if self.is_leaf() {
            0
        } else {
            1 + self.children.iter().map(PebbleTree::node_count).sum::<usize>()
        }
    }

    /// Number of pebbles of color `c` in the whole subtree.
    pub fn pebble_count(&self, c: Color) -> usize {
        self.pebbles.iter().filter(|&&p| p == c).count()
            + self.children.iter().map(|t| t.pebble_count(c)).sum::<usize>()
    }

    /// Number of leaves minus number of pebbles of color `c`.
    pub fn pebble_default(&self, c: Color) -> i64 {
        self.leaf_count() as i64 - self.pebble_count(c) as i64
    }

    /// Colors among `1..=colors` with pebble default 0.
    pub fn balanced_colors(&self, colors: usize) -> ColorMask {
        (1..=colors as Color)
            .filter(|&c| self.pebble_default(c) == 0)
            .fold(0, |m, c| m | color_bit(c))
    }

    pub fn subtree(&self, path: &[usize]) -> Option<&PebbleTree> {
        let mut cur = self;
        for &i in path {
            cur = cur.children.get(i)?;
        }
        Some(cur)
    }

    pub(crate) fn subtree_mut(&mut self, path: &[usize]) -> Option<&mut PebbleTree> {
        let mut cur = self;
        for &i in path {
            cur = cur.children.get_mut(i)?;
        }
        Some(cur)
    }

    /// Whether every unary node has one pebble, every binary node none, and
    /// no node has three or more children.
    pub fn is_maximal(&self) -> bool {
        match self.children.len() {
            0 => true,
            1 => self.pebbles.len() == 1 && self.children[0].is_maximal(),
            2 => self.pebbles.is_empty() && self.children.iter().all(PebbleTree::is_maximal),
            _ => false,
        }
    }

    /// All subtrees in preorder with their leaf interval and balanced colors.
    pub fn subtrees(&self, colors: usize) -> Vec<SubtreeInfo> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        let mut next_leaf = 1;
        self.collect_subtrees(colors, &mut path, &mut next_leaf, &mut out);
        out
    }

    /// Returns per-color pebble counts of this subtree.
    fn collect_subtrees(
        &self,
        colors: usize,
        path: &mut NodePath,
        next_leaf: &mut usize,
        out: &mut Vec<SubtreeInfo>,
    ) -> (usize, Vec<usize>) {
        let slot = out.len();
        out.push(SubtreeInfo {
            path: path.clone(),
            first_leaf: *next_leaf,
            leaf_count: 0,
            balanced: 0,
            arity: self.children.len(),
            pebbles: self.pebbles.clone(),
        });
        let mut counts = vec![0usize; colors];
        for &c in &self.pebbles {
            if (1..=colors).contains(&(c as usize)) {
                counts[c as usize - 1] += 1;
            }
        }
        let leaves = if self.is_leaf() {
            *next_leaf += 1;
            1
        } else {
            let mut total = 0;
            for (i, child) in self.children.iter().enumerate() {
                path.push(i);
                let (l, sub) = child.collect_subtrees(colors, path, next_leaf, out);
                path.pop();
                total += l;
                for (a, b) in counts.iter_mut().zip(sub) {
                    *a += b;
                }
            }
            total
        };
        let balanced = counts
            .iter()
            .enumerate()
            .filter(|(_, &n)| n == leaves)
            .fold(0, |m, (i, _)| m | (1 << i));
        out[slot].leaf_count = leaves;
        out[slot].balanced = balanced;
        (leaves, counts)
    }

    /// Canonical JSON text of the tree.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trees always serialize")
    }
}

impl fmt::Display for PebbleTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// A clause of the validity definition violated at some node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    LeafWithPebbles { path: NodePath },
    UnaryWithoutPebble { path: NodePath },
    ColorOutOfRange { path: NodePath, color: Color },
    DefaultOutOfRange { path: NodePath, color: Color, default: i64 },
    GlobalDefaultMismatch { color: Color, expected: i64, found: i64 },
    LeafCountMismatch { expected: usize, found: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LeafWithPebbles { path } => write!(f, "leaf at {path:?} carries pebbles"),
            Violation::UnaryWithoutPebble { path } => {
                write!(f, "unary node without pebble at {path:?}")
            }
            Violation::ColorOutOfRange { path, color } => {
                write!(f, "color {color} out of range at {path:?}")
            }
            Violation::DefaultOutOfRange {
                path,
                color,
                default,
            } => write!(f, "pebble default {default} for color {color} at {path:?}"),
            Violation::GlobalDefaultMismatch {
                color,
                expected,
                found,
            } => write!(
                f,
                "color {color} has default {found} on the whole tree, expected {expected}"
            ),
            Violation::LeafCountMismatch { expected, found } => {
                write!(f, "tree has {found} leaves, expected {expected}")
            }
        }
    }
}

/// Checks every validity clause and returns all violations found.
pub fn validate(t: &PebbleTree, p: &Params) -> Vec<Violation> {
    let mut out = Vec::new();
    let colors = p.colors();
    for info in t.subtrees(colors) {
        let node = t.subtree(&info.path).expect("path from walk");
        if info.is_leaf() {
            if !node.pebbles.is_empty() {
                out.push(Violation::LeafWithPebbles { path: info.path });
            }
            continue;
        }
        if info.arity == 1 && node.pebbles.is_empty() {
            out.push(Violation::UnaryWithoutPebble {
                path: info.path.clone(),
            });
        }
        for &c in &node.pebbles {
            if c == 0 || c as usize > colors {
                out.push(Violation::ColorOutOfRange {
                    path: info.path.clone(),
                    color: c,
                });
            }
        }
        for c in 1..=colors as Color {
            let d = node.pebble_default(c);
            if d != 0 && d != 1 {
                out.push(Violation::DefaultOutOfRange {
                    path: info.path.clone(),
                    color: c,
                    default: d,
                });
            }
        }
    }
    for c in 1..=colors as Color {
        let expected = if p.is_balanced_color(c) { 0 } else { 1 };
        let found = t.pebble_default(c);
        if found != expected && (found == 0 || found == 1) {
            out.push(Violation::GlobalDefaultMismatch {
                color: c,
                expected,
                found,
            });
        }
    }
    let found = t.leaf_count();
    if found != p.leaves {
        out.push(Violation::LeafCountMismatch {
            expected: p.leaves,
            found,
        });
    }
    out
}

/// Number of leaves minus number of pebbles of color `c` in `t`.
pub fn pebble_default(t: &PebbleTree, c: Color) -> i64 {
    t.pebble_default(c)
}

/// Summary counts of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeStats {
    pub node_count: usize,
    pub leaf_count: usize,
    /// Pebble default of each color `1..=b+u`, in order.
    pub defaults: Vec<i64>,
}

pub fn stats(t: &PebbleTree, p: &Params) -> TreeStats {
    TreeStats {
        node_count: t.node_count(),
        leaf_count: t.leaf_count(),
        defaults: (1..=p.colors() as Color).map(|c| t.pebble_default(c)).collect(),
    }
}

/// Canonical JSON text of a tree.
pub fn serialize(t: &PebbleTree) -> String {
    t.to_json()
}

/// Parses a tree from JSON and validates it against `p`.
pub fn deserialize(text: &str, p: &Params) -> Result<PebbleTree> {
    let mut t: PebbleTree = serde_json::from_str(text).map_err(|e| Error::Parse {
        offset: byte_offset(text, e.line(), e.column()),
        message: e.to_string(),
    })?;
    normalize(&mut t);
    let violations = validate(&t, p);
    if violations.is_empty() {
        Ok(t)
    } else {
        Err(Error::Validation(violations))
    }
}

fn normalize(t: &mut PebbleTree) {
    t.pebbles.sort_unstable();
    t.children.iter_mut().for_each(normalize);
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let preceding: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    preceding + column
}
