use mist_core::graph::bridges;
use mist_core::{generate, parse_graph, validate_spanning_tree, Graph, GraphError, GraphFormat, GraphKind, TreeError};
use proptest::prelude::*;

fn path(n: usize) -> Graph {
    generate(GraphKind::Path, n, 0, None).unwrap()
}

fn arbitrary_graph() -> impl Strategy<Value = Graph> {
    (2usize..=14, any::<u64>(), 2usize..=5, any::<bool>()).prop_map(|(n, seed, d, subcubic)| {
        let kind = if subcubic { GraphKind::RandomSubcubic } else { GraphKind::RandomDegreeBounded };
        generate(kind, n, seed, Some(d)).unwrap()
    })
}

#[test]
fn parse_examples() {
    let tri = parse_graph("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n", GraphFormat::Dimacs).unwrap();
    assert_eq!((tri.n(), tri.m()), (3, 3));

    let p3 = parse_graph("0 1\n1 2\n", GraphFormat::EdgeList).unwrap();
    assert_eq!(p3, path(3));

    let err = parse_graph("p edge 1 1\ne 1 1\n", GraphFormat::Dimacs).unwrap_err();
    assert!(matches!(err, GraphError::SelfLoop { .. }), "{err:?}");

    let dup = parse_graph("0 1\n1 0\n", GraphFormat::EdgeList).unwrap_err();
    assert!(matches!(dup, GraphError::DuplicateEdge { .. }), "{dup:?}");
}

#[test]
fn comments_and_detection() {
    let text = "c a triangle\np edge 3 3\ne 1 2\nc middle\ne 2 3\ne 1 3\n";
    assert_eq!(GraphFormat::detect(text), GraphFormat::Dimacs);
    assert_eq!(GraphFormat::detect("0 1\n"), GraphFormat::EdgeList);
    assert_eq!(parse_graph(text, GraphFormat::Dimacs).unwrap().m(), 3);
}

#[test]
fn bridge_examples() {
    assert_eq!(path(3).bridges(), vec![(0, 1), (1, 2)]);
    assert!(generate(GraphKind::Cycle, 5, 0, None).unwrap().bridges().is_empty());
    let two_triangles = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
    assert_eq!(two_triangles.bridges(), vec![(2, 3)]);
}

#[test]
fn connectivity_examples() {
    assert!(generate(GraphKind::Cycle, 5, 0, None).unwrap().is_connected());
    assert!(!Graph::new(4, [(0, 1), (2, 3)]).unwrap().is_connected());
    assert!(Graph::new(1, []).unwrap().is_connected());
}

#[test]
fn generator_examples() {
    let c6 = generate(GraphKind::Cycle, 6, 0, None).unwrap();
    assert_eq!((c6.n(), c6.m()), (6, 6));

    let petersen = generate(GraphKind::Petersen, 0, 0, None).unwrap();
    assert_eq!((petersen.n(), petersen.m()), (10, 15));
    assert!((0..10).all(|v| petersen.degree(v) == 3));

    let a = generate(GraphKind::RandomSubcubic, 12, 7, None).unwrap();
    let b = generate(GraphKind::RandomSubcubic, 12, 7, None).unwrap();
    assert_eq!(a, b);
    assert!(a.is_connected() && a.max_degree() <= 3);
}

#[test]
fn internal_count_examples() {
    let p4 = path(4);
    let t = validate_spanning_tree(&p4, p4.edges().to_vec()).unwrap();
    assert_eq!(t.internal_count(), 2);
    assert!(t.check_prop1());

    let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
    let t = validate_spanning_tree(&star, star.edges().to_vec()).unwrap();
    assert_eq!(t.internal_count(), 1);
    assert_eq!(t.degree_profile()[1], 3);
    assert!(t.check_prop1());

    let spider = Graph::new(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
    let t = validate_spanning_tree(&spider, spider.edges().to_vec()).unwrap();
    assert_eq!(t.internal_count(), 4);
}

#[test]
fn validation_examples() {
    let c4 = generate(GraphKind::Cycle, 4, 0, None).unwrap();
    let three: Vec<_> = c4.edges()[..3].to_vec();
    assert_eq!(validate_spanning_tree(&c4, three).unwrap().internal_count(), 2);
    assert!(matches!(validate_spanning_tree(&c4, c4.edges().to_vec()), Err(TreeError::WrongCardinality { .. })));
    let p4 = path(4);
    assert!(matches!(
        validate_spanning_tree(&p4, [(0, 1), (2, 3)]),
        Err(TreeError::WrongCardinality { .. } | TreeError::NotSpanning)
    ));
    assert_eq!(validate_spanning_tree(&p4, [(0, 2), (1, 2), (2, 3)]), Err(TreeError::NotSubgraph(0, 2)));
}

proptest! {
    #[test]
    fn graph_invariants(g in arbitrary_graph()) {
        prop_assert!(g.is_connected());
        let mut incidences = 0;
        for v in 0..g.n() {
            prop_assert!(!g.neighbors(v).contains(&v));
            prop_assert_eq!(g.degree(v), g.neighbors(v).len());
            incidences += g.degree(v);
        }
        prop_assert_eq!(incidences, 2 * g.m());
        for &(u, v) in g.edges() {
            prop_assert!(g.neighbors(u).contains(&v) && g.neighbors(v).contains(&u));
        }
    }

    #[test]
    fn bridges_match_deletion(g in arbitrary_graph()) {
        let found = g.bridges();
        prop_assert_eq!(&found, &bridges(&g));
        for &(u, v) in g.edges() {
            let is_bridge = !g.without_edge(u, v).is_connected();
            prop_assert_eq!(found.contains(&(u, v)), is_bridge, "edge {:?}", (u, v));
        }
    }

    #[test]
    fn serialization_round_trips(g in arbitrary_graph()) {
        for format in [GraphFormat::Dimacs, GraphFormat::EdgeList] {
            let text = g.serialize(format);
            prop_assert_eq!(GraphFormat::detect(&text), format);
            let back = parse_graph(&text, format).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(back.serialize(format), text);
        }
    }

    #[test]
    fn prop1_on_random_spanning_trees(g in arbitrary_graph(), order in any::<u64>()) {
        // Kruskal over a seeded edge order.
        let mut edges = g.edges().to_vec();
        edges.sort_by_key(|&(u, v)| (u as u64 * 31 + v as u64).wrapping_mul(order | 1).rotate_left(17));
        let mut comp: Vec<usize> = (0..g.n()).collect();
        let mut chosen = Vec::new();
        for (u, v) in edges {
            let (a, b) = (comp[u], comp[v]);
            if a != b {
                comp.iter_mut().filter(|c| **c == b).for_each(|c| *c = a);
                chosen.push((u, v));
            }
        }
        let t = validate_spanning_tree(&g, chosen).unwrap();
        let profile = t.degree_profile();
        prop_assert_eq!(profile.iter().sum::<usize>(), g.n());
        prop_assert_eq!(profile.iter().enumerate().map(|(i, c)| i * c).sum::<usize>(), 2 * (g.n() - 1));
        prop_assert!(t.check_prop1());
    }
}
