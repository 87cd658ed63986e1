from .chordal import EliminationOrdering, chordal_peo, clique_tree, is_chordal, is_peo, max_clique_size
from .cliquewidth import (
    CliquewidthExpression,
    ExpressionBuilder,
    Introduce,
    Join,
    LabeledGraph,
    Relabel,
    Union,
    cw_from_path_decomposition,
    eval_cw_expression,
    parse_cw_expression,
    random_cw_expression,
    serialize_cw_expression,
)
from .treedecomp import (
    NiceNode,
    NiceTreeDecomposition,
    TreeDecomposition,
    elimination_td,
    greedy_layout,
    greedy_path_decomposition,
    make_nice,
    min_fill_order,
    min_fill_td,
    parse_td,
    path_decomposition_from_order,
    serialize_td,
    single_bag_td,
    validate_td,
)
