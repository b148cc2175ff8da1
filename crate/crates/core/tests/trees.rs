use pebblefan::tree::{stats, Violation};
use pebblefan::{
    deserialize, enumerate, enumerate_capped, pebble_default, serialize, validate, Error, Params,
    PebbleTree,
};
use std::collections::BTreeSet;

fn leaf() -> PebbleTree {
    PebbleTree::leaf()
}

fn node(pebbles: Vec<u32>, children: Vec<PebbleTree>) -> PebbleTree {
    PebbleTree::node(pebbles, children)
}

/// All compositions of `n` into `parts` positive parts.
fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    (1..n)
        .flat_map(|first| {
            compositions(n - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Every pebble multiset with at most `limit` pebbles of each of `colors`
/// colors.
fn pebble_multisets(colors: usize, limit: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for c in 1..=colors as u32 {
        out = out
            .into_iter()
            .flat_map(|base| {
                (0..=limit).map(move |k| {
                    let mut v = base.clone();
                    v.extend(std::iter::repeat_n(c, k));
                    v
                })
            })
            .collect();
    }
    out
}

fn locally_valid(t: &PebbleTree, colors: usize) -> bool {
    (t.children().len() != 1 || !t.pebbles().is_empty())
        && (1..=colors as u32).all(|c| (0..=1).contains(&t.pebble_default(c)))
}

/// Independent generator: every subtree with `n` leaves whose defaults stay
/// in {0, 1}, built by brute force over children and pebble multisets.
fn naive_subtrees(n: usize, colors: usize, memo: &mut Vec<Option<Vec<PebbleTree>>>) -> Vec<PebbleTree> {
    if let Some(done) = &memo[n] {
        return done.clone();
    }
    let mut found: BTreeSet<PebbleTree> = BTreeSet::new();
    if n == 1 {
        found.insert(leaf());
    }
    for parts in 2..=n {
        for comp in compositions(n, parts) {
            let mut combos: Vec<Vec<PebbleTree>> = vec![Vec::new()];
            for &size in &comp {
                let options = naive_subtrees(size, colors, memo);
                combos = combos
                    .into_iter()
                    .flat_map(|prefix| {
                        options.iter().map(move |o| {
                            let mut v = prefix.clone();
                            v.push(o.clone());
                            v
                        })
                    })
                    .collect();
            }
            for children in combos {
                for pebbles in pebble_multisets(colors, parts) {
                    let t = node(pebbles, children.clone());
                    if locally_valid(&t, colors) {
                        found.insert(t);
                    }
                }
            }
        }
    }
    // Unary chains: keep wrapping until nothing new appears.
    let mut frontier: Vec<PebbleTree> = found.iter().cloned().collect();
    while let Some(t) = frontier.pop() {
        for pebbles in pebble_multisets(colors, 1) {
            let wrapped = node(pebbles, vec![t.clone()]);
            if locally_valid(&wrapped, colors) && found.insert(wrapped.clone()) {
                frontier.push(wrapped);
            }
        }
    }
    let out: Vec<PebbleTree> = found.into_iter().collect();
    memo[n] = Some(out.clone());
    out
}

fn naive_family(p: &Params) -> BTreeSet<PebbleTree> {
    let mut memo = vec![None; p.leaves + 1];
    naive_subtrees(p.leaves, p.colors(), &mut memo)
        .into_iter()
        .filter(|t| validate(t, p).is_empty())
        .collect()
}

#[test]
fn enumeration_matches_brute_force() {
    for (l, b, u) in [(1, 0, 0), (2, 0, 0), (3, 0, 0), (4, 0, 0), (2, 0, 1), (2, 1, 0), (1, 2, 0), (1, 1, 1), (3, 0, 1), (3, 1, 0), (2, 1, 1), (2, 2, 0), (2, 0, 2)] {
        let p = Params::new(l, b, u).unwrap();
        let fast: BTreeSet<PebbleTree> = enumerate(&p, false).unwrap().into_iter().collect();
        assert_eq!(fast, naive_family(&p), "family {p}");
    }
}

#[test]
fn every_enumerated_tree_is_valid_and_unique() {
    for (l, b, u) in [(4, 1, 0), (3, 1, 1), (5, 0, 1), (2, 2, 1)] {
        let p = Params::new(l, b, u).unwrap();
        let trees = enumerate(&p, false).unwrap();
        let distinct: BTreeSet<&PebbleTree> = trees.iter().collect();
        assert_eq!(distinct.len(), trees.len());
        for t in &trees {
            assert!(validate(t, &p).is_empty(), "{t}");
        }
    }
}

#[test]
fn maximal_trees_are_the_top_rank() {
    for (l, b, u) in [(3, 0, 1), (2, 1, 1), (3, 1, 0), (4, 0, 0), (1, 3, 0)] {
        let p = Params::new(l, b, u).unwrap();
        let all = enumerate(&p, false).unwrap();
        let maximal: BTreeSet<PebbleTree> = enumerate(&p, true).unwrap().into_iter().collect();
        let top: BTreeSet<PebbleTree> = all
            .iter()
            .filter(|t| t.node_count() == p.max_rank())
            .cloned()
            .collect();
        assert_eq!(maximal, top);
        assert!(maximal.iter().all(PebbleTree::is_maximal));
        assert!(all.iter().all(|t| t.node_count() <= p.max_rank()));
    }
}

#[test]
fn family_sizes_of_small_cases() {
    let cases = [((3, 0, 1), 10, 33), ((2, 1, 1), 10, 33), ((3, 1, 0), 16, 81), ((4, 0, 0), 5, 11), ((1, 3, 0), 6, 13)];
    for ((l, b, u), maximal, total) in cases {
        let p = Params::new(l, b, u).unwrap();
        assert_eq!(enumerate(&p, true).unwrap().len(), maximal, "{p}");
        assert_eq!(enumerate(&p, false).unwrap().len(), total, "{p}");
    }
}

#[test]
fn unary_chains_and_counts_in_maximal_trees() {
    let p = Params::new(3, 1, 1).unwrap();
    for t in enumerate(&p, true).unwrap() {
        let infos = t.subtrees(p.colors());
        let unary = infos.iter().filter(|i| i.arity == 1).count();
        assert_eq!(unary, p.leaves * p.colors() - p.unbalanced, "{t}");
        assert_eq!(infos.iter().filter(|i| i.arity == 2).count(), p.leaves - 1);
        fn chain_from(t: &PebbleTree) -> usize {
            if t.arity() == 1 {
                1 + chain_from(&t.children()[0])
            } else {
                0
            }
        }
        fn longest_chain(t: &PebbleTree) -> usize {
            let below = t.children().iter().map(longest_chain).max().unwrap_or(0);
            below.max(chain_from(t))
        }
        assert!(longest_chain(&t) <= p.colors());
    }
}

#[test]
fn serialization_round_trip() {
    let p = Params::new(3, 0, 1).unwrap();
    let trees = enumerate(&p, false).unwrap();
    assert_eq!(trees.len(), 33);
    for t in &trees {
        let text = serialize(t);
        assert_eq!(&deserialize(&text, &p).unwrap(), t);
    }
    let first: Vec<String> = trees.iter().map(serialize).collect();
    let mut sorted = first.clone();
    sorted.sort();
    assert_eq!(first, sorted, "enumeration order is the canonical text order");
}

#[test]
fn deserialization_sorts_pebbles_and_reports_violations() {
    let p = Params::new(2, 2, 0).unwrap();
    let text = r#"{"pebbles":[2,1],"children":[{"pebbles":[],"children":[]},{"pebbles":[1,2],"children":[{"pebbles":[],"children":[]}]}]}"#;
    let t = deserialize(text, &p).unwrap();
    assert_eq!(t.pebbles(), &[1, 2]);

    let unary = r#"{"pebbles":[],"children":[{"pebbles":[],"children":[]}]}"#;
    match deserialize(unary, &Params::new(1, 0, 0).unwrap()) {
        Err(Error::Validation(v)) => assert!(matches!(v[0], Violation::UnaryWithoutPebble { .. })),
        other => panic!("unexpected {other:?}"),
    }
    let leafy = r#"{"pebbles":[1],"children":[]}"#;
    match deserialize(leafy, &Params::new(1, 1, 0).unwrap()) {
        Err(Error::Validation(v)) => assert!(v.iter().any(|x| matches!(x, Violation::LeafWithPebbles { .. }))),
        other => panic!("unexpected {other:?}"),
    }
    match deserialize(r#"{"pebbles":[],"children":[}"#, &p) {
        Err(Error::Parse { offset, .. }) => assert!(offset > 0 && offset <= 27),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(
        deserialize(r#"{"pebbles":[],"children":[],"extra":1}"#, &p),
        Err(Error::Parse { .. })
    ));
}

#[test]
fn validation_clauses() {
    let p = Params::new(2, 0, 1).unwrap();
    let too_many = node(vec![1, 1], vec![leaf(), leaf()]);
    let v = validate(&too_many, &p);
    assert!(v.iter().any(|x| matches!(x, Violation::DefaultOutOfRange { default: 0, .. }) || matches!(x, Violation::GlobalDefaultMismatch { .. })));
    let wrong_color = node(vec![3], vec![leaf(), leaf()]);
    assert!(validate(&wrong_color, &p).iter().any(|x| matches!(x, Violation::ColorOutOfRange { color: 3, .. })));
    let wrong_size = node(vec![], vec![leaf(), leaf(), leaf()]);
    assert!(validate(&wrong_size, &p).iter().any(|x| matches!(x, Violation::LeafCountMismatch { expected: 2, found: 3 })));
    let double = node(vec![1, 1], vec![node(vec![], vec![leaf(), leaf()]), leaf()]);
    assert!(validate(&double, &Params::new(3, 0, 1).unwrap())
        .iter()
        .any(|x| matches!(x, Violation::DefaultOutOfRange { default: 2, .. })));
}

#[test]
fn pebble_defaults_and_stats() {
    let p = Params::new(3, 1, 1).unwrap();
    let t = node(
        vec![1],
        vec![node(vec![1, 2], vec![leaf(), leaf()]), node(vec![1, 2], vec![leaf()])],
    );
    assert!(validate(&t, &p).is_empty(), "{:?}", validate(&t, &p));
    assert_eq!(pebble_default(&t, 1), 0);
    assert_eq!(pebble_default(&t, 2), 1);
    let s = stats(&t, &p);
    assert_eq!((s.node_count, s.leaf_count), (3, 3));
    assert_eq!(s.defaults, vec![0, 1]);
}

#[test]
fn cap_rejects_large_families() {
    let p = Params::new(7, 2, 2).unwrap();
    assert!(matches!(enumerate(&p, false), Err(Error::CapExceeded { size: 35, cap: 24 })));
    assert_eq!(enumerate_capped(&Params::new(2, 0, 1).unwrap(), true, 6).unwrap().len(), 2);
}

#[test]
fn params_reject_nonsense() {
    assert!(matches!(Params::new(0, 0, 0), Err(Error::InvalidParams(_))));
    assert_eq!(Params::new(3, 1, 1).unwrap().dimension(), 6);
    assert_eq!(Params::new(3, 1, 1).unwrap().max_rank(), 7);
}
