use hypercover::comb::binomial;
use hypercover::cover::{book_number, book_size, t_max, triangle_count, triangle_degrees};
use hypercover::{RGraph, Vertex, VertexSet};
use proptest::prelude::*;

fn graph2(max_n: u32) -> impl Strategy<Value = RGraph> {
    (3..=max_n).prop_flat_map(|n| {
        let pairs: Vec<[Vertex; 2]> = (0..n).flat_map(|a| (a + 1..n).map(move |b| [a, b])).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len)
            .prop_map(move |keep| RGraph::from_edges(2, n as usize, pairs.iter().zip(&keep).filter(|p| *p.1).map(|p| *p.0)).unwrap())
    })
}

fn graph3(max_n: u32) -> impl Strategy<Value = RGraph> {
    (4..=max_n).prop_flat_map(|n| {
        let mut triples = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    triples.push([a, b, c]);
                }
            }
        }
        let len = triples.len();
        proptest::collection::vec(any::<bool>(), len)
            .prop_map(move |keep| RGraph::from_edges(3, n as usize, triples.iter().zip(&keep).filter(|p| *p.1).map(|p| *p.0)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(g in graph3(9)) {
        let back = RGraph::from_text(&g.to_text()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn handshake(g in graph3(9)) {
        let total: usize = g.vertex_degrees().iter().sum();
        prop_assert_eq!(total, 3 * g.edge_count());
        let pair_total: usize = (0..g.vertex_count() as Vertex)
            .flat_map(|a| (a + 1..g.vertex_count() as Vertex).map(move |b| [a, b]))
            .map(|p| g.degree(&VertexSet::new(p).unwrap()).unwrap())
            .sum();
        prop_assert_eq!(pair_total, 3 * g.edge_count());
    }

    #[test]
    fn link_size_is_degree(g in graph3(8), v in 0u32..4) {
        let s = VertexSet::single(v);
        let link = g.link(&s).unwrap();
        prop_assert_eq!(link.graph.edge_count(), g.degree(&s).unwrap());
        prop_assert_eq!(link.graph.uniformity(), 2);
    }

    #[test]
    fn min_degree_is_attained(g in graph3(8), i in 1usize..=2) {
        let m = g.min_i_degree(i).unwrap();
        prop_assert_eq!(g.degree(&m.witness).unwrap(), m.value);
        let p = g.degree_profile();
        if i == 1 {
            prop_assert_eq!(m.value, p.min_degree);
        }
    }

    #[test]
    fn triangle_counts_agree(g in graph2(10)) {
        let per_vertex = triangle_degrees(&g).unwrap();
        let total = triangle_count(&g).unwrap();
        prop_assert_eq!(per_vertex.iter().sum::<usize>(), 3 * total);
        let (t, v) = t_max(&g).unwrap();
        prop_assert_eq!(per_vertex[v as usize], t);
        let book_total: usize = g.edges().map(|e| book_size(&g, e[0], e[1]).unwrap()).sum();
        prop_assert_eq!(book_total, 3 * total);
        let (bk, edge) = book_number(&g).unwrap();
        if let Some([x, y]) = edge {
            prop_assert_eq!(book_size(&g, x, y).unwrap(), bk);
        } else {
            prop_assert_eq!(g.edge_count(), 0);
        }
    }
}

#[test]
fn complete_graph_counts() {
    let g = RGraph::complete(3, 7).unwrap();
    assert_eq!(g.edge_count() as u128, binomial(7, 3));
    let m = g.min_i_degree(1).unwrap();
    assert_eq!(m.value, 15);
    assert!(g.degree_profile().is_regular());
}

#[test]
fn parse_errors_carry_line_numbers() {
    let err = RGraph::from_text("3 5\n0 1 2\n0 1\n").unwrap_err().to_string();
    assert!(err.contains("line 3"), "{err}");
    assert!(RGraph::from_text("3 4\n0 1 1\n").is_err());
    assert!(RGraph::from_text("").is_err());
}

#[test]
fn file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let g = RGraph::from_edges(3, 5, [[0, 1, 2], [1, 3, 4]]).unwrap();
    g.write_file(&path).unwrap();
    assert_eq!(RGraph::read_file(&path).unwrap(), g);
}
