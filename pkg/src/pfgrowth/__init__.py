"""Growth of tensor powers in based algebras via Perron-Frobenius theory.

The main entry points are :func:`new_based_algebra`, :func:`action_matrix`,
:func:`pf_data`, :func:`asymptotic_formula` and :func:`growth_sequence`;
:mod:`pfgrowth.catalog` holds ready-made examples.
"""

from .action_graph import action_matrix, graph_period, is_irreducible, pre_action_matrix
from .asymptotics import (
    AsymptoticFormula,
    asymptotic_formula,
    character_asymptotics,
    convergence_ratio_estimate,
    eval_formula,
    growth_sequence,
    pf_dimension,
    ratio_table,
)
from .based_algebra import (
    CharacterTable,
    Element,
    StructureTensor,
    from_character_table,
    multiply,
    new_based_algebra,
    power_expand,
    total_coefficient_sum,
)
from .errors import GrowthError, PFPropertyViolation
from .spectral import PFData, pf_data

__version__ = "0.1.0"
