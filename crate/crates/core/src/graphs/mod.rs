//! Finite directed graphs, automorphism actions, edge labelings, skew products and
//! graph correspondences.

mod corr;
mod graph;
mod io;
mod random;

pub use corr::{
    graph_action_lift, graph_correspondence, graph_katsura_ideal, graph_product, graph_regularity_report,
    ideal_compatibility_check, katsura_agreement, labeling_grading, vertex_algebra, verify_graph_product_isomorphism,
    GraphKatsura, GraphProduct, GraphRegularity,
};
pub use graph::{product_edge, product_vertex, skew_product, DirectedGraph, Edge, EdgeLabeling, GraphAction};
pub use io::{dot_labeling, edge_triples, from_dot, to_dot, DotGraph, EdgeJson, GraphJson};
pub use random::{random_instance, random_instances, GraphInstance, RandomBounds};

#[cfg(test)]
mod tests;
