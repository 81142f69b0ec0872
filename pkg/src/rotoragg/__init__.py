"""Rotor-router aggregation on the layered square lattice.

The layered square lattice is the square grid with axis edges toward the
origin reflected outward.  Released one at a time from the origin, chips
performing rotor-router walks grow a cluster that is exactly the diamond
{|x| + |y| <= n} whenever 2n(n+1)+1 chips have settled, and the number of
times each site fires admits a closed form.  This package simulates the
growth, evaluates the closed forms, and mechanically checks the exact
statements, backed by a chip-firing engine for arbitrary finite directed
multigraphs with an enumeration oracle for the strong abelian property.
"""

from .aggregation import (AggregationError, AggregationState, FlowLedger,
                          OdometerReport, aggregate, aggregate_checkpoints,
                          flow_audit, is_diamond, measured_vs_formula,
                          r_of_m, verification_rows, working_radius)
from .engine import (CyclePoppingCapExceeded, DirectedMultigraph,
                     NonTermination, SapCertificate, SearchSpaceTooLarge,
                     WalkCapExceeded, apply_firing_vector, edge_flows,
                     enumerate_firing_vectors, fire, is_acyclic, pop_cycles,
                     random_multigraph, replay_firing_vector, rotor_walk,
                     sap_bruteforce_oracle, stabilize_legal, unfire,
                     uniform_rotors, zero_chips, zero_firing_vector)
from .lattice import (DiamondGraph, LatticeWindow, base_odometer,
                      build_diamond_graph, build_window, edge_targets, ell,
                      exceptional_set_mask, in_exceptional_set,
                      initial_rotors, odometer_formula, odometer_values,
                      predicted_final_rotors, quadrant_decompose, rotate_cw)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
