from .basic import (
    BlockParts,
    ClauseParts,
    GadgetHandle,
    InstanceBuilder,
    add_block_gadget,
    add_clause_gadget,
    block_gadget,
    block_parts,
    clause_gadget,
    format_roles,
    or_gadget,
)
from .cw_hardness import (
    CwHardnessLayout,
    MulticoloredISInstance,
    cw_hardness_expression,
    cw_hardness_instance,
    cw_hardness_witness,
    parse_mcis,
    serialize_mcis,
    witness_orientation,
)
from .reductions import Reduction, reduce_dominating_set, reduce_ds_chordal, reduce_is_chordal
from .seth import SethLayout, SethParams, group_size, option_tuples, parse_cnf, serialize_cnf, seth_instance, seth_witness
