"""Degree-restricted decompositions of planar graphs.

A (d,h)-decomposition splits the edges of a graph into a d-degenerate part D
(given as an acyclic orientation) and a part H of maximum degree h.  This
package builds them for planar graphs at (4,1), (3,2) and (2,6), checks them,
and decides small instances exactly.
"""
from .decomp26 import FanStructure, build_fan, check_26, decompose26, swap_root
from .decomp32 import check_32, choose_z, decompose32
from .decomp41 import ChargeTable, Decomposition41, ReducibleConfig, decompose41, discharge_audit, find_reducible
from .errors import (AcyclicityError, BudgetExceeded, ContractError, DischargingContradiction,
                     GraphFormatError, ProofStepError, StructureError)
from .io import emit_decomposition, emit_graph, parse_decomposition, parse_graph
from .oracle import MinH, OracleResult, Prunes, exact_decide, min_h
from .plane import BoundaryContext, NearTriangulation, PlaneGraph, triangulate
from .verify import (ConditionReport, DecompPair, DegeneracyOrdering, check_dh, degeneracy_ordering,
                     infeasibility_bound_23, ordering_to_orientation, orientation_to_ordering, restrict)

__version__ = "0.1.0"
