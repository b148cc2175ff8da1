use pebblefan::complex::{
    check_pseudomanifold, contract, contractible_nodes, find_flip, label_sets, lambda, non_flag_witness, FlipCase,
    LabelSet, RidgeKind,
};
use pebblefan::tree::color_bit;
use pebblefan::{build_complex, build_poset, enumerate, flip_graph, validate, Error, Params, PebbleTree};
use std::collections::{BTreeSet, HashSet};

const WHITE: u32 = 1;
const BLACK: u32 = 2;

fn leaf() -> PebbleTree {
    PebbleTree::leaf()
}

fn node(pebbles: Vec<u32>, children: Vec<PebbleTree>) -> PebbleTree {
    PebbleTree::node(pebbles, children)
}

fn unary(pebbles: Vec<u32>, child: PebbleTree) -> PebbleTree {
    node(pebbles, vec![child])
}

fn p(l: usize, b: usize, u: usize) -> Params {
    Params::new(l, b, u).unwrap()
}

fn labels(sets: &[&[u32]]) -> Vec<LabelSet> {
    let mut out: Vec<LabelSet> = sets.iter().map(|s| LabelSet::new(s.to_vec())).collect();
    out.sort();
    out
}

#[test]
fn contracting_a_unary_node() {
    let t = node(vec![], vec![leaf(), unary(vec![1], leaf())]);
    assert_eq!(contract(&t, &[1]).unwrap(), node(vec![1], vec![leaf(), leaf()]));
    assert!(matches!(contract(&t, &[]), Err(Error::BadPath(_))));
    assert!(matches!(contract(&t, &[0]), Err(Error::BadPath(_))));
    assert!(matches!(contract(&t, &[5]), Err(Error::BadPath(_))));
}

#[test]
fn contraction_between_two_large_trees() {
    let params = p(9, 1, 1);
    let first_child = node(
        vec![BLACK],
        vec![node(vec![WHITE, BLACK], vec![leaf(), leaf()]), unary(vec![WHITE], leaf())],
    );
    let middle = node(vec![WHITE, WHITE, BLACK, BLACK], vec![leaf(), leaf(), leaf()]);
    let before = node(
        vec![WHITE, WHITE, WHITE, BLACK],
        vec![
            first_child.clone(),
            middle.clone(),
            node(
                vec![WHITE, BLACK],
                vec![node(vec![WHITE, BLACK], vec![leaf(), unary(vec![BLACK], leaf())]), leaf()],
            ),
        ],
    );
    let after = node(
        vec![WHITE, WHITE, WHITE, BLACK],
        vec![
            first_child,
            middle,
            node(vec![WHITE, WHITE, BLACK, BLACK], vec![leaf(), unary(vec![BLACK], leaf()), leaf()]),
        ],
    );
    assert!(validate(&before, &params).is_empty());
    assert!(validate(&after, &params).is_empty());
    assert_eq!(contract(&before, &[2, 0]).unwrap(), after);
}

#[test]
fn contraction_removes_exactly_one_label() {
    for params in [p(2, 1, 1), p(3, 0, 1), p(3, 1, 0)] {
        for t in enumerate(&params, false).unwrap() {
            let face: BTreeSet<LabelSet> = label_sets(&t, &params).into_iter().collect();
            assert_eq!(face.len(), contractible_nodes(&t).len(), "labels are distinct in {t}");
            for c in contractible_nodes(&t) {
                let removed = lambda(&t, &c, &params).unwrap();
                let below = contract(&t, &c).unwrap();
                assert!(validate(&below, &params).is_empty());
                let mut expected = face.clone();
                expected.remove(&removed);
                let got: BTreeSet<LabelSet> = label_sets(&below, &params).into_iter().collect();
                assert_eq!(got, expected);
            }
        }
    }
}

#[test]
fn contraction_is_confluent() {
    let params = p(2, 1, 1);
    let minima: HashSet<PebbleTree> = enumerate(&params, false)
        .unwrap()
        .into_iter()
        .filter(|t| contractible_nodes(t).is_empty())
        .collect();
    assert_eq!(minima.len(), 1);
    let corolla = minima.into_iter().next().unwrap();
    assert_eq!(corolla.node_count(), 1);
    // Every order of contracting all nodes of every maximal tree ends at the
    // corolla: by induction it suffices that every non-corolla has a
    // contraction and every contraction stays in the family.
    fn drain(t: &PebbleTree, corolla: &PebbleTree) {
        let nodes = contractible_nodes(t);
        if nodes.is_empty() {
            assert_eq!(t, corolla);
        }
        for c in nodes {
            drain(&contract(t, &c).unwrap(), corolla);
        }
    }
    for t in enumerate(&params, true).unwrap() {
        assert_eq!(contractible_nodes(&t).len(), params.dimension() as usize);
        drain(&t, &corolla);
    }
}

#[test]
fn label_set_encoding() {
    let params = p(3, 1, 1);
    let both = color_bit(1) | color_bit(2);
    assert_eq!(LabelSet::encode(&params, 1, 2, color_bit(1)), LabelSet::new(vec![1, 3, 4]));
    assert_eq!(LabelSet::encode(&params, 3, 3, both), LabelSet::new(vec![5, 8]));
    assert!(LabelSet::encode(&params, 2, 2, 0).is_empty());
    assert_eq!(LabelSet::encode(&params, 1, 3, color_bit(1)), LabelSet::interval(1, 5));

    let t = node(
        vec![],
        vec![node(vec![WHITE, WHITE, BLACK], vec![leaf(), leaf()]), unary(vec![WHITE, BLACK], leaf())],
    );
    assert!(validate(&t, &params).is_empty());
    assert_eq!(lambda(&t, &[0], &params).unwrap(), LabelSet::new(vec![1, 3, 4]));
    assert_eq!(lambda(&t, &[1], &params).unwrap(), LabelSet::new(vec![5, 8]));
    assert!(lambda(&t, &[1, 0], &params).unwrap().is_empty());
    assert_eq!(lambda(&t, &[], &params).unwrap(), LabelSet::interval(1, 5));
    assert!(matches!(lambda(&t, &[3], &params), Err(Error::BadPath(_))));
}

#[test]
fn rank_histograms() {
    for params in [p(3, 0, 1), p(2, 1, 1)] {
        let poset = build_poset(&params).unwrap();
        assert_eq!(poset.rank_sizes(), vec![1, 7, 15, 10], "{params}");
        assert_eq!(poset.minima().len(), 1);
        assert_eq!(poset.rank(poset.minima()[0]), 1);
        let maxima: BTreeSet<PebbleTree> = poset.maxima().iter().map(|&i| poset.trees()[i].clone()).collect();
        let maximal: BTreeSet<PebbleTree> = enumerate(&params, true).unwrap().into_iter().collect();
        assert_eq!(maxima, maximal);
    }
    let poset = build_poset(&p(1, 2, 0)).unwrap();
    assert_eq!(poset.rank_sizes(), vec![1, 2]);
    assert_eq!(poset.len(), 3);
}

#[test]
fn intervals_are_boolean() {
    let poset = build_poset(&p(2, 1, 1)).unwrap();
    for i in 0..poset.len() {
        for j in poset.upper_set(i) {
            let height = poset.rank(j) - poset.rank(i);
            assert_eq!(poset.interval_size(i, j), 1 << height);
        }
    }
}

#[test]
fn small_complexes() {
    let c = build_complex(&p(3, 0, 0)).unwrap();
    let faces: BTreeSet<Vec<LabelSet>> = c.faces().iter().cloned().collect();
    let expected: BTreeSet<Vec<LabelSet>> = [labels(&[]), labels(&[&[1]]), labels(&[&[2]])].into_iter().collect();
    assert_eq!(faces, expected);

    let c = build_complex(&p(4, 0, 0)).unwrap();
    for face in c.faces() {
        for a in face {
            for b in face {
                let nested = a.is_subset(b) || b.is_subset(a);
                let apart = a.intersection(b).is_empty()
                    && a.as_slice().last().unwrap() + 1 != b.as_slice()[0]
                    && b.as_slice().last().unwrap() + 1 != a.as_slice()[0];
                assert!(nested || apart, "{a} and {b}");
            }
        }
    }

    // One leaf and two balanced colors: faces are the proper nonempty parts
    // of the color set, one at a time.
    let c = build_complex(&p(1, 2, 0)).unwrap();
    let faces: BTreeSet<Vec<LabelSet>> = c.faces().iter().cloned().collect();
    let expected: BTreeSet<Vec<LabelSet>> = [labels(&[]), labels(&[&[1]]), labels(&[&[2]])].into_iter().collect();
    assert_eq!(faces, expected);
    let c = build_complex(&p(1, 3, 0)).unwrap();
    for face in c.faces() {
        for pair in face.windows(2) {
            let (small, large) = if pair[0].len() < pair[1].len() { (&pair[0], &pair[1]) } else { (&pair[1], &pair[0]) };
            assert!(small.is_subset(large) && small != large);
        }
    }

    let c = build_complex(&p(3, 0, 1)).unwrap();
    assert_eq!(c.facets().len(), 10);
    assert!(c.facets().iter().all(|&f| c.faces()[f].len() == 3));
    assert!(c.is_injective());
    assert_eq!(c.faces().len(), 33);
}

#[test]
fn pseudomanifolds() {
    for params in [p(4, 0, 0), p(5, 0, 0), p(3, 1, 0), p(3, 0, 1), p(2, 1, 1), p(2, 2, 0), p(2, 0, 2), p(1, 3, 0)] {
        let report = check_pseudomanifold(&build_complex(&params).unwrap());
        assert!(report.passed(), "{params}: {:?}", report.violations);
        assert_eq!(report.kinds.values().sum::<usize>(), report.ridges);
    }
    for params in [p(3, 0, 1), p(2, 1, 1)] {
        assert_eq!(check_pseudomanifold(&build_complex(&params).unwrap()).ridges, 15);
    }
    let permutahedron = check_pseudomanifold(&build_complex(&p(1, 3, 0)).unwrap());
    assert_eq!(permutahedron.kinds.keys().copied().collect::<Vec<_>>(), vec![RidgeKind::UnaryWithTwoPebbles]);
    let associahedron = check_pseudomanifold(&build_complex(&p(5, 0, 0)).unwrap());
    assert_eq!(associahedron.kinds.keys().copied().collect::<Vec<_>>(), vec![RidgeKind::TernaryNode]);
}

#[test]
fn flip_graphs_are_regular_and_connected() {
    for params in [p(4, 0, 0), p(3, 1, 0), p(3, 0, 1), p(2, 1, 1), p(2, 2, 0), p(2, 0, 2), p(1, 3, 0), p(3, 1, 1)] {
        let g = flip_graph(&params).unwrap();
        let degree = params.dimension() as usize;
        assert!(g.degrees().iter().all(|&d| d == degree), "{params}");
        assert!(g.is_connected());
        assert_eq!(g.edges().len() * 2, g.vertices().len() * degree);
    }
    let g = flip_graph(&p(3, 0, 1)).unwrap();
    assert_eq!((g.vertices().len(), g.edges().len()), (10, 15));
    let g = flip_graph(&p(1, 3, 0)).unwrap();
    assert_eq!((g.vertices().len(), g.edges().len()), (6, 6));
    assert_eq!(g.case_counts(), [0, 0, 0, 0, 6]);
    let g = flip_graph(&p(5, 0, 0)).unwrap();
    assert_eq!(g.case_counts(), [21, 0, 0, 0, 0]);
}

fn adjacency(g: &pebblefan::complex::FlipGraph) -> Vec<Vec<bool>> {
    let n = g.vertices().len();
    let mut adj = vec![vec![false; n]; n];
    for e in g.edges() {
        adj[e.ends[0]][e.ends[1]] = true;
        adj[e.ends[1]][e.ends[0]] = true;
    }
    adj
}

fn isomorphic(a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    fn extend(a: &[Vec<bool>], b: &[Vec<bool>], map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == a.len() {
            return true;
        }
        for j in 0..b.len() {
            if !used[j] && (0..i).all(|k| a[i][k] == b[j][map[k]]) {
                map.push(j);
                used[j] = true;
                if extend(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    a.len() == b.len() && extend(a, b, &mut Vec::new(), &mut vec![false; b.len()])
}

#[test]
fn two_small_flip_graphs_are_isomorphic() {
    let a = adjacency(&flip_graph(&p(3, 0, 1)).unwrap());
    let b = adjacency(&flip_graph(&p(2, 1, 1)).unwrap());
    assert!(isomorphic(&a, &b));
    let c = adjacency(&flip_graph(&p(3, 1, 0)).unwrap());
    assert!(!isomorphic(&a, &c));
}

#[test]
fn flip_edges_are_facets_sharing_a_ridge() {
    for params in [p(3, 1, 0), p(2, 1, 1), p(2, 2, 0), p(3, 1, 1)] {
        let g = flip_graph(&params).unwrap();
        let faces: Vec<BTreeSet<LabelSet>> = g
            .vertices()
            .iter()
            .map(|t| label_sets(t, &params).into_iter().collect())
            .collect();
        let d = params.dimension() as usize;
        let mut brute = BTreeSet::new();
        for i in 0..faces.len() {
            for j in i + 1..faces.len() {
                if faces[i].intersection(&faces[j]).count() + 1 == d {
                    brute.insert((i, j));
                }
            }
        }
        let edges: BTreeSet<(usize, usize)> = g
            .edges()
            .iter()
            .map(|e| (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1])))
            .collect();
        assert_eq!(edges, brute, "{params}");
        for e in g.edges() {
            let [a, b] = &e.flip.trees;
            assert_eq!(find_flip(a, b, &params).unwrap().case, e.flip.case);
            assert_eq!(find_flip(b, a, &params).unwrap().case, e.flip.case);
        }
    }
}

#[test]
fn flip_between_two_small_trees() {
    let params = p(3, 1, 1);
    let inner = node(vec![], vec![unary(vec![WHITE], leaf()), unary(vec![BLACK], leaf())]);
    let right = unary(vec![WHITE], unary(vec![BLACK], leaf()));
    let first = node(vec![], vec![unary(vec![WHITE], inner.clone()), right.clone()]);
    let second = unary(vec![WHITE], node(vec![], vec![inner, right]));
    for t in [&first, &second] {
        assert!(validate(t, &params).is_empty());
        assert!(t.is_maximal());
    }
    let flip = find_flip(&first, &second, &params).unwrap();
    assert_eq!(flip.case, FlipCase::PebbleLeft);
    assert_eq!(flip.color, Some(WHITE));
    assert_eq!(flip.ridge, node(vec![WHITE], vec![inner_of(&first), right_of(&first)]));
    assert!(matches!(find_flip(&first, &first, &params), Err(Error::NotAdjacent)));
}

fn inner_of(t: &PebbleTree) -> PebbleTree {
    t.children()[0].children()[0].clone()
}

fn right_of(t: &PebbleTree) -> PebbleTree {
    t.children()[1].clone()
}

#[test]
fn flag_diagnostic() {
    for params in [p(2, 1, 0), p(3, 0, 1)] {
        let c = build_complex(&params).unwrap();
        let witness = non_flag_witness(&c).expect("complex is not flag");
        let faces: HashSet<Vec<LabelSet>> = c.faces().iter().cloned().collect();
        assert!(!faces.contains(&witness));
        for i in 0..witness.len() {
            for j in i + 1..witness.len() {
                let mut pair = vec![witness[i].clone(), witness[j].clone()];
                pair.sort();
                assert!(faces.contains(&pair));
            }
        }
    }
    for params in [p(4, 0, 0), p(5, 0, 0), p(1, 3, 0)] {
        assert_eq!(non_flag_witness(&build_complex(&params).unwrap()), None, "{params}");
    }
}
