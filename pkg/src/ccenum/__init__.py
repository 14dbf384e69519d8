"""Exact enumeration of the optimal solution space of correlation clustering
on signed graphs: signed-graph model, imbalance, edit distances, pruned
complete neighborhood search, recurrent closure, exact solver with jumps,
brute-force oracle, instance generators, and a benchmarking CLI."""

from .editdist import Alignment, align, confusion, edit_distance, moving_set
from .enumcc import EnumLimits, RunStats, enum_cc
from .errors import (EnumTimeout, GenerationError, InputError, OracleCapError,
                     ParseError, SolveTimeout)
from .generators import (GeneratorConfig, IngestResult, PlantedInstance,
                         gen_dataset1, gen_dataset2, ingest_real,
                         planted_membership, read_graph, read_membership,
                         write_graph, write_membership)
from .graph import (SignedGraph, induced_subgraph, is_connected, omega,
                    positive_graph)
from .neighborhood import (ConsStats, EditOperation, InteractionGraph,
                           MvmoTerms, PruningConfig, cons, ext_atomic,
                           ext_mvmo, int_atomic, int_mvmo, interaction_graph,
                           is_min_edit, mvmo_terms)
from .oracle import (OracleLimit, bell_number, cons_bruteforce,
                     enumerate_partitions, oracle_optima)
from .partition import (FrustrationReport, Membership, SolutionSet,
                        canonicalize, frustration_report, imbalance,
                        move_delta)
from .rns import RnsResult, RnsStats, rns
from .solver import (RelationVector, SolveBudget, check_triangle,
                     check_two_chorded_cycle, check_two_partition,
                     eval_objective, jump, solve_first)

__version__ = "0.1.0"
