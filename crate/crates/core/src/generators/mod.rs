//! Instance generators: the 3-Coloring reduction, a 3-coloring oracle and
//! seeded random families.

mod coloring;
mod random;
mod reduction;

pub use coloring::{
    brute_3color, find_3coloring, is_proper_on, proper_colorings, ColoringInstance, DEFAULT_COLORING_LIMIT,
};
pub use random::{
    gen_path_of_gadgets, gen_powerset, gen_random_bipartite_instance, gen_random_graph, gen_random_hypergraph,
    GADGET_SIZE,
};
pub use reduction::{reduce_3coloring, LayerTag, ReductionOutput, DEFAULT_REDUCTION_LIMIT};
