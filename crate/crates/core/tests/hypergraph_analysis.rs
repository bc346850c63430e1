use contextlab_core::coloring::{chromatic_number, DEFAULT_VERTEX_CAP};
use contextlab_core::ContextHypergraph;

#[test]
fn ceg_chromatic_number() {
    let h = ContextHypergraph::preset("ceg18").unwrap();
    let c = chromatic_number(&h.adjacency_graph(), DEFAULT_VERTEX_CAP).unwrap();
    assert_eq!(c.clique_number, 4);
    // frozen from a separate plain backtracking search over k = 1..6
    assert_eq!(c.chromatic_number, 5);
    assert!(h.adjacency_graph().is_proper_coloring(&c.colors));
}

#[test]
fn single_context_needs_d_colors() {
    for (name, d) in [("std2", 2), ("std3", 3), ("std4", 4)] {
        let h = ContextHypergraph::preset(name).unwrap();
        assert_eq!(chromatic_number(&h.adjacency_graph(), DEFAULT_VERTEX_CAP).unwrap().chromatic_number, d);
    }
}

#[test]
fn disjoint_contexts() {
    let h = ContextHypergraph::parse("dim 3\nobs a\nobs b\nobs c\nobs d\nobs e\nobs f\nctx X a b c\nctx Y d e f\n")
        .unwrap();
    assert_eq!(chromatic_number(&h.adjacency_graph(), DEFAULT_VERTEX_CAP).unwrap().chromatic_number, 3);
}

#[test]
fn chromatic_number_at_least_context_size() {
    for name in ContextHypergraph::preset_names() {
        let h = ContextHypergraph::preset(name).unwrap();
        let c = chromatic_number(&h.adjacency_graph(), DEFAULT_VERTEX_CAP).unwrap();
        assert!(c.chromatic_number >= h.dim(), "{name}");
    }
}

#[test]
fn ceg_structure_after_edits() {
    let h = ContextHypergraph::preset("ceg18").unwrap();
    assert!(h.parity_obstruction());
    for j in 0..9 {
        let smaller = h.without_context(j).unwrap();
        assert_eq!(smaller.contexts().len(), 8);
        assert!(!smaller.is_even_connected());
        assert!(!smaller.parity_obstruction());
    }
}
