//! Exhaustive generation of pebble trees.
//!
//! Trees are built bottom-up from the leaf count and the set of balanced
//! colors of each subtree. A node is either a leaf, a unary node whose
//! pebbles are exactly the colors that become balanced at it, or a node with
//! at least two children whose pebble counts are forced by the children's
//! defaults. Intermediate subtrees are shared through reference counting so
//! large families can be streamed without materializing every tree.

use crate::error::{Error, Result};
use crate::tree::{color_bit, Color, ColorMask, Params, PebbleTree};
use std::rc::Rc;

/// Default bound on `ℓ(b+u+1)` for exhaustive enumeration.
pub const DEFAULT_CAP: usize = 24;

#[derive(Debug)]
struct Shape {
    pebbles: Vec<Color>,
    children: Vec<Rc<Shape>>,
    nodes: usize,
}

impl Shape {
    fn to_tree(&self) -> PebbleTree {
        PebbleTree::node(
            self.pebbles.clone(),
            self.children.iter().map(|c| c.to_tree()).collect(),
        )
    }
}

struct Generator {
    colors: usize,
    maximal: bool,
    leaf: Rc<Shape>,
    /// `table[len][mask]`: all subtrees with `len` leaves and balanced set `mask`.
    table: Vec<Vec<Option<Vec<Rc<Shape>>>>>,
}

impl Generator {
    fn new(colors: usize, maximal: bool, max_len: usize) -> Self {
        Generator {
            colors,
            maximal,
            leaf: Rc::new(Shape {
                pebbles: Vec::new(),
                children: Vec::new(),
                nodes: 0,
            }),
            table: vec![vec![None; 1 << colors]; max_len + 1],
        }
    }

    fn masks(&self) -> ColorMask {
        1 << self.colors
    }

    fn ensure(&mut self, len: usize, mask: ColorMask) {
        if self.table[len][mask as usize].is_some() {
            return;
        }
        for shorter in 1..len {
            for m in 0..self.masks() {
                self.ensure(shorter, m);
            }
        }
        for sub in proper_submasks(mask) {
            self.ensure(len, sub);
        }
        let mut out = Vec::new();
        self.each_at(len, mask, &mut |s| out.push(s));
        self.table[len][mask as usize] = Some(out);
    }

    fn get(&self, len: usize, mask: ColorMask) -> &[Rc<Shape>] {
        self.table[len][mask as usize]
            .as_deref()
            .expect("dependencies are generated first")
    }

    /// Streams every subtree of shape `(len, mask)`, assuming all its
    /// dependencies are already in the table.
    fn each_at(&self, len: usize, mask: ColorMask, f: &mut dyn FnMut(Rc<Shape>)) {
        if len == 1 && mask == 0 {
            f(self.leaf.clone());
        }
        for sub in proper_submasks(mask) {
            let moved = mask & !sub;
            if self.maximal && moved.count_ones() != 1 {
                continue;
            }
            let pebbles: Vec<Color> = (1..=self.colors as Color)
                .filter(|&c| moved & color_bit(c) != 0)
                .collect();
            for child in self.get(len, sub) {
                f(Rc::new(Shape {
                    pebbles: pebbles.clone(),
                    children: vec![child.clone()],
                    nodes: child.nodes + 1,
                }));
            }
        }
        if len >= 2 {
            let mut chosen = Vec::new();
            self.each_sequence(len, len, mask, &mut chosen, f);
        }
    }

    fn each_sequence(
        &self,
        total: usize,
        remaining: usize,
        mask: ColorMask,
        chosen: &mut Vec<(Rc<Shape>, ColorMask)>,
        f: &mut dyn FnMut(Rc<Shape>),
    ) {
        if remaining == 0 {
            if chosen.len() >= 2 {
                if let Some(node) = self.assemble(mask, chosen) {
                    f(Rc::new(node));
                }
            }
            return;
        }
        if self.maximal && chosen.len() == 2 {
            return;
        }
        let longest = if chosen.is_empty() { total - 1 } else { remaining };
        for len in 1..=longest {
            for m in 0..self.masks() {
                for child in self.get(len, m) {
                    chosen.push((child.clone(), m));
                    self.each_sequence(total, remaining - len, mask, chosen, f);
                    chosen.pop();
                }
            }
        }
    }

    fn assemble(&self, mask: ColorMask, chosen: &[(Rc<Shape>, ColorMask)]) -> Option<Shape> {
        let mut pebbles = Vec::new();
        for c in 1..=self.colors as Color {
            let bit = color_bit(c);
            let unbalanced = chosen.iter().filter(|(_, m)| m & bit == 0).count();
            let own = usize::from(mask & bit == 0);
            if unbalanced < own {
                return None;
            }
            let count = unbalanced - own;
            if self.maximal && count > 0 {
                return None;
            }
            pebbles.extend(std::iter::repeat_n(c, count));
        }
        Some(Shape {
            pebbles,
            children: chosen.iter().map(|(s, _)| s.clone()).collect(),
            nodes: 1 + chosen.iter().map(|(s, _)| s.nodes).sum::<usize>(),
        })
    }

    /// Streams the trees of the whole family without storing them.
    fn each_top(&mut self, p: &Params, f: &mut dyn FnMut(&Shape)) {
        let target = p.balanced_mask();
        for len in 1..p.leaves {
            for m in 0..self.masks() {
                self.ensure(len, m);
            }
        }
        for sub in proper_submasks(target) {
            self.ensure(p.leaves, sub);
        }
        self.each_at(p.leaves, target, &mut |s| f(&s));
    }
}

/// All masks strictly contained in `mask`, including 0 when `mask != 0`.
fn proper_submasks(mask: ColorMask) -> Vec<ColorMask> {
    let mut out = Vec::new();
    let mut sub = mask;
    while sub != 0 {
        sub = (sub - 1) & mask;
        out.push(sub);
    }
    out
}

fn check_cap(p: &Params, cap: usize) -> Result<()> {
    if p.size() > cap {
        Err(Error::CapExceeded {
            size: p.size(),
            cap,
        })
    } else {
        Ok(())
    }
}

/// Calls `f` once for every tree of the family, in generation order.
pub fn for_each_tree(
    p: &Params,
    maximal: bool,
    cap: usize,
    mut f: impl FnMut(PebbleTree),
) -> Result<()> {
    check_cap(p, cap)?;
    let mut generator = Generator::new(p.colors(), maximal, p.leaves);
    generator.each_top(p, &mut |s| f(s.to_tree()));
    Ok(())
}

/// Number of trees of the family by node count (index = node count), found
/// by generating every tree one at a time.
pub fn count_by_nodes(p: &Params, maximal: bool, cap: usize) -> Result<Vec<u64>> {
    check_cap(p, cap)?;
    let mut counts = vec![0u64; p.max_rank() + 1];
    let mut generator = Generator::new(p.colors(), maximal, p.leaves);
    generator.each_top(p, &mut |s| counts[s.nodes] += 1);
    Ok(counts)
}

/// All trees of the family (or only the maximal ones), sorted by canonical
/// serialization, with the default cap.
pub fn enumerate(p: &Params, maximal: bool) -> Result<Vec<PebbleTree>> {
    enumerate_capped(p, maximal, DEFAULT_CAP)
}

pub fn enumerate_capped(p: &Params, maximal: bool, cap: usize) -> Result<Vec<PebbleTree>> {
    let mut out = Vec::new();
    for_each_tree(p, maximal, cap, |t| out.push(t))?;
    let mut keyed: Vec<(String, PebbleTree)> = out.into_iter().map(|t| (t.to_json(), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    Ok(keyed.into_iter().map(|(_, t)| t).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let p = Params::new(3, 0, 1).unwrap();
        assert_eq!(enumerate(&p, true).unwrap().len(), 10);
        assert_eq!(enumerate(&p, false).unwrap().len(), 33);
        assert_eq!(enumerate(&Params::new(1, 2, 0).unwrap(), true).unwrap().len(), 2);
        assert_eq!(enumerate(&Params::new(2, 1, 1).unwrap(), true).unwrap().len(), 10);
    }

    #[test]
    fn cap_is_enforced() {
        let p = Params::new(9, 2, 1).unwrap();
        assert!(matches!(
            enumerate(&p, false),
            Err(Error::CapExceeded { size: 36, cap: 24 })
        ));
    }

    #[test]
    fn submasks() {
        assert_eq!(proper_submasks(0b101), vec![0b100, 0b001, 0]);
        assert!(proper_submasks(0).is_empty());
    }
}
