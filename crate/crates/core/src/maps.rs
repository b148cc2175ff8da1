//! Structural maps between pebble tree families, and the correspondence
//! between one-color pebble trees and oriented plane trees.
//!
//! Maps that change the color sets return the new [`Params`] together with
//! the image tree. Colors are renumbered so that balanced colors stay in
//! `1..=b'` and unbalanced colors in `b'+1..=b'+u'`, preserving relative
//! order otherwise.

use crate::error::{Error, Result};
use crate::tree::{validate, Color, Params, PebbleTree};
use serde_json::Value;
use std::fmt;

/// Reverses the order of children at every node.
pub fn mirror(t: &PebbleTree) -> PebbleTree {
    PebbleTree::node(
        t.pebbles().to_vec(),
        t.children().iter().rev().map(mirror).collect(),
    )
}

fn relabel(t: &PebbleTree, f: &impl Fn(Color) -> Color) -> PebbleTree {
    PebbleTree::node(
        t.pebbles().iter().map(|&c| f(c)).collect(),
        t.children().iter().map(|c| relabel(c, f)).collect(),
    )
}

/// Adds a unary root carrying one pebble of the unbalanced color `color`.
///
/// In the result `color` becomes the last balanced color `b+1`; unbalanced
/// colors that preceded it move up by one.
pub fn balance(t: &PebbleTree, p: &Params, color: Color) -> Result<(PebbleTree, Params)> {
    if !p.is_unbalanced_color(color) {
        return Err(Error::NotUnbalanced { color });
    }
    if t.pebble_default(color) != 1 {
        return Err(Error::NotUnbalanced { color });
    }
    let b = p.balanced as Color;
    let renumber = |c: Color| {
        if c <= b || c > color {
            c
        } else if c == color {
            b + 1
        } else {
            c + 1
        }
    };
    let image = relabel(&PebbleTree::node(vec![color], vec![t.clone()]), &renumber);
    Ok((image, Params::new(p.leaves, p.balanced + 1, p.unbalanced - 1)?))
}

/// Replaces every leaf by a unary node carrying one pebble of a new balanced
/// color, which receives label `color` (in `1..=b+1`); existing colors with
/// label at least `color` move up by one.
pub fn insert(t: &PebbleTree, p: &Params, color: Color) -> Result<(PebbleTree, Params)> {
    if color == 0 || color as usize > p.balanced + 1 {
        return Err(Error::ColorInUse { color });
    }
    fn go(t: &PebbleTree, color: Color) -> PebbleTree {
        if t.is_leaf() {
            return PebbleTree::node(vec![color], vec![PebbleTree::leaf()]);
        }
        PebbleTree::node(
            t.pebbles()
                .iter()
                .map(|&c| if c >= color { c + 1 } else { c })
                .collect(),
            t.children().iter().map(|c| go(c, color)).collect(),
        )
    }
    Ok((go(t, color), Params::new(p.leaves, p.balanced + 1, p.unbalanced)?))
}

/// Hangs a tree from its leaf number `leaf` (from 1). The former root side
/// becomes the new leaf `r`; each node along the path keeps its pebbles and
/// lists its remaining children cyclically, starting after the path.
fn hang(t: &PebbleTree, leaf: usize) -> Result<PebbleTree> {
    if leaf == 0 || leaf > t.leaf_count() {
        return Err(Error::LeafOutOfRange { index: leaf });
    }
    let mut spine: Vec<(&PebbleTree, usize)> = Vec::new();
    let mut cur = t;
    let mut skipped = 0;
    while !cur.is_leaf() {
        let mut idx = 0;
        for (i, c) in cur.children().iter().enumerate() {
            let n = c.leaf_count();
            if skipped + n >= leaf {
                idx = i;
                break;
            }
            skipped += n;
        }
        spine.push((cur, idx));
        cur = &cur.children()[idx];
    }
    let mut hung = PebbleTree::leaf();
    for (node, idx) in spine {
        let ch = node.children();
        let mut children: Vec<PebbleTree> = ch[idx + 1..].to_vec();
        children.push(hung);
        children.extend_from_slice(&ch[..idx]);
        hung = PebbleTree::node(node.pebbles().to_vec(), children);
    }
    Ok(hung)
}

/// Rerooting at leaf `leaf` (from 1) of a tree without unbalanced colors.
pub fn reroot(t: &PebbleTree, p: &Params, leaf: usize) -> Result<PebbleTree> {
    if p.unbalanced > 0 {
        return Err(Error::UnbalancedInput);
    }
    hang(t, leaf)
}

/// Uprooting of a tree without balanced colors, using a fresh color.
///
/// The tree is hung from its rightmost leaf, the resulting leftmost leaf is
/// removed and its parent receives a pebble of the fresh color, and every
/// remaining leaf but the first is replaced by a unary node carrying the
/// fresh color. The image lives in `(ℓ-1, u+1, 0)`: the former unbalanced
/// colors keep their labels and the fresh color is `u+1`.
pub fn uproot(t: &PebbleTree, p: &Params) -> Result<(PebbleTree, Params)> {
    if p.leaves < 2 {
        return Err(Error::PreconditionFailed("uprooting needs at least two leaves".into()));
    }
    if p.balanced > 0 {
        return Err(Error::PreconditionFailed(
            "uprooting needs a tree without balanced colors".into(),
        ));
    }
    let fresh = p.unbalanced as Color + 1;
    let mut hung = hang(t, p.leaves)?;
    let mut path = Vec::new();
    let mut cur = &hung;
    while !cur.is_leaf() {
        path.push(0);
        cur = &cur.children()[0];
    }
    path.pop();
    let parent = hung.subtree_mut(&path).expect("leftmost path exists");
    parent.children_mut().remove(0);
    parent.pebbles_mut().push(fresh);
    parent.pebbles_mut().sort_unstable();

    fn starify(t: &PebbleTree, fresh: Color, first: &mut bool) -> PebbleTree {
        if t.is_leaf() {
            if std::mem::take(first) {
                return PebbleTree::leaf();
            }
            return PebbleTree::node(vec![fresh], vec![PebbleTree::leaf()]);
        }
        PebbleTree::node(
            t.pebbles().to_vec(),
            t.children().iter().map(|c| starify(c, fresh, first)).collect(),
        )
    }
    let image = starify(&hung, fresh, &mut true);
    Ok((image, Params::new(p.leaves - 1, p.unbalanced + 1, 0)?))
}

/// Direction of an external arrow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arrow {
    In,
    Out,
}

/// Parses a signature written over the letters `I` and `O`.
pub fn parse_signature(text: &str) -> Result<Vec<Arrow>> {
    text.chars()
        .map(|c| match c {
            'I' => Ok(Arrow::In),
            'O' => Ok(Arrow::Out),
            other => Err(Error::BadSignature(format!("unexpected letter {other:?}"))),
        })
        .collect()
}

pub fn signature_string(sig: &[Arrow]) -> String {
    sig.iter()
        .map(|a| match a {
            Arrow::In => 'I',
            Arrow::Out => 'O',
        })
        .collect()
}

/// A plane tree whose arcs are oriented. `up[k]` describes the arc above the
/// `k`-th non-root node in preorder (leaves included): `true` when it points
/// from the child to the parent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientedTree {
    shape: PebbleTree,
    up: Vec<bool>,
}

impl OrientedTree {
    pub fn new(shape: &PebbleTree, up: Vec<bool>) -> Result<Self> {
        let bare = strip(shape);
        if up.len() + 1 != bare.subtrees(0).len() {
            return Err(Error::BadSignature("one orientation bit per arc is needed".into()));
        }
        Ok(OrientedTree { shape: bare, up })
    }

    pub fn shape(&self) -> &PebbleTree {
        &self.shape
    }

    pub fn orientation(&self) -> &[bool] {
        &self.up
    }

    /// External arrows read from the root and then the leaves left to
    /// right. The root arrow always points away from the root.
    pub fn signature(&self) -> Vec<Arrow> {
        let mut sig = vec![Arrow::Out];
        for (info, &up) in self.shape.subtrees(0).iter().skip(1).zip(&self.up) {
            if info.is_leaf() {
                sig.push(if up { Arrow::In } else { Arrow::Out });
            }
        }
        sig
    }

    /// JSON of the underlying shape with an extra `"orient"` list of bits.
    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(&self.shape).expect("trees always serialize");
        if let Value::Object(map) = &mut v {
            map.insert(
                "orient".into(),
                Value::Array(self.up.iter().map(|&b| Value::from(u8::from(b))).collect()),
            );
        }
        v.to_string()
    }
}

impl fmt::Display for OrientedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

fn strip(t: &PebbleTree) -> PebbleTree {
    PebbleTree::node(Vec::new(), t.children().iter().map(strip).collect())
}

fn one_color(p: &Params) -> Result<()> {
    if p.balanced == 1 && p.unbalanced == 0 {
        Ok(())
    } else {
        Err(Error::WrongParams {
            expected: "(ℓ, 1, 0)".into(),
            found: p.to_string(),
        })
    }
}

/// Orients each arc upwards exactly when the child subtree is balanced, and
/// forgets the pebbles.
pub fn to_oriented(t: &PebbleTree, p: &Params) -> Result<OrientedTree> {
    one_color(p)?;
    let up = t
        .subtrees(1)
        .iter()
        .skip(1)
        .map(|info| info.balanced & 1 == 1)
        .collect();
    OrientedTree::new(t, up)
}

/// Places one pebble fewer than its number of outgoing arrows on each node.
pub fn from_oriented(o: &OrientedTree) -> Result<PebbleTree> {
    fn go(t: &PebbleTree, bits: &mut std::slice::Iter<'_, bool>, outgoing_above: bool) -> Result<PebbleTree> {
        if t.is_leaf() {
            return if outgoing_above {
                Err(Error::BadSignature("a leaf arrow points inwards".into()))
            } else {
                Ok(PebbleTree::leaf())
            };
        }
        let mut out = usize::from(outgoing_above);
        let mut children = Vec::new();
        for c in t.children() {
            let up = *bits.next().expect("bit count checked on construction");
            if !up {
                out += 1;
            }
            children.push(go(c, bits, up)?);
        }
        if out == 0 {
            return Err(Error::BadSignature("a node has no outgoing arrow".into()));
        }
        if out == 1 && children.len() == 1 {
            return Err(Error::BadSignature(
                "a node has exactly one incoming and one outgoing arrow".into(),
            ));
        }
        Ok(PebbleTree::node(vec![1; out - 1], children))
    }
    go(&o.shape, &mut o.up.iter(), true)
}

/// The one-color tree whose root carries `ℓ - #I` pebbles and whose `i`-th
/// child is a leaf when the `(i+1)`-th arrow is `O` and a pebbled unary node
/// over a leaf when it is `I`.
pub fn alpha_generator(sig: &[Arrow]) -> Result<PebbleTree> {
    if sig.len() < 2 || sig[0] != Arrow::Out {
        return Err(Error::BadSignature(
            "a signature has at least two letters and starts with O".into(),
        ));
    }
    let leaves = sig.len() - 1;
    let inward = sig[1..].iter().filter(|&&a| a == Arrow::In).count();
    let children = sig[1..]
        .iter()
        .map(|a| match a {
            Arrow::Out => PebbleTree::leaf(),
            Arrow::In => PebbleTree::node(vec![1], vec![PebbleTree::leaf()]),
        })
        .collect();
    let t = PebbleTree::node(vec![1; leaves - inward], children);
    if validate(&t, &Params::new(leaves, 1, 0)?).is_empty() {
        Ok(t)
    } else {
        Err(Error::BadSignature(format!(
            "{} does not yield a valid tree",
            signature_string(sig)
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf() -> PebbleTree {
        PebbleTree::leaf()
    }

    fn n(pebbles: &[Color], children: Vec<PebbleTree>) -> PebbleTree {
        PebbleTree::node(pebbles.to_vec(), children)
    }

    #[test]
    fn mirror_small() {
        assert_eq!(mirror(&leaf()), leaf());
        let t = n(&[], vec![leaf(), n(&[1], vec![leaf()])]);
        assert_eq!(mirror(&t), n(&[], vec![n(&[1], vec![leaf()]), leaf()]));
    }

    #[test]
    fn insert_into_leaf() {
        let p = Params::new(1, 0, 0).unwrap();
        let (t, q) = insert(&leaf(), &p, 1).unwrap();
        assert_eq!(t, n(&[1], vec![leaf()]));
        assert_eq!(q, Params::new(1, 1, 0).unwrap());
    }

    #[test]
    fn balance_rejects_balanced_color() {
        let p = Params::new(2, 1, 1).unwrap();
        let t = n(&[1, 2], vec![leaf(), n(&[1], vec![leaf()])]);
        assert!(matches!(balance(&t, &p, 1), Err(Error::NotUnbalanced { .. })));
    }

    #[test]
    fn uproot_needs_two_leaves() {
        let p = Params::new(1, 0, 1).unwrap();
        assert!(matches!(uproot(&leaf(), &p), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn reroot_single_leaf() {
        let p = Params::new(1, 0, 0).unwrap();
        assert_eq!(reroot(&leaf(), &p, 1).unwrap(), leaf());
    }

    #[test]
    fn oriented_single_leaf() {
        let p = Params::new(1, 1, 0).unwrap();
        let t = n(&[1], vec![leaf()]);
        let o = to_oriented(&t, &p).unwrap();
        assert_eq!(o.orientation(), &[false]);
        assert_eq!(o.signature(), vec![Arrow::Out, Arrow::Out]);
        assert_eq!(from_oriented(&o).unwrap(), t);
    }

    #[test]
    fn generator_ooi() {
        let sig = parse_signature("OOI").unwrap();
        assert_eq!(
            alpha_generator(&sig).unwrap(),
            n(&[1], vec![leaf(), n(&[1], vec![leaf()])])
        );
        assert!(alpha_generator(&parse_signature("IO").unwrap()).is_err());
    }
}
