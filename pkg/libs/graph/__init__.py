from libs.graph.core import (
    Arc,
    Edge,
    Graph,
    Orientation,
    canonical_edge,
    connected_components,
    count_triangles,
    disjoint_union,
    identify_vertices,
    parse_graph,
    parse_orientation,
    triangles,
    write_graph,
    write_orientation,
)
