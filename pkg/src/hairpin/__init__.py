"""Exact hairpin completion and deletion distances, and the LCS reduction built on them."""

from hairpin.fibtools import (
    PatternViolation,
    PreconditionViolated,
    SyncCostSpec,
    build_fib_test_instance,
    fib,
    fib_inverse,
    greedy_completion_trace,
    is_fibonacci_regular,
    sync_deletion_cost,
)
from hairpin.hairpin_ops import (
    DeletionPath,
    DeletionStep,
    InvalidStep,
    Semantics,
    Side,
    SubstringState,
    apply_completion,
    apply_deletion,
    max_arm,
    replay_path,
    valid_deletion_lengths,
)
from hairpin.lcs import LcsWitness, lcs
from hairpin.lift4 import LiftResult, MidNotFound, MidNotUnique, find_mid, lift
from hairpin.reduction import (
    CONSTANTS,
    GadgetConstants,
    NonIntegralResult,
    ReductionInstance,
    ReplayFailed,
    WitnessInvalid,
    build_reduction,
    build_well_behaved_witness,
    check_well_behaved,
    gadget,
    lcs_from_hdd,
    predicted_hdd,
)
from hairpin.solver import (
    BudgetExceeded,
    PruneWindow,
    SearchResult,
    brute_force_hdd,
    hcd,
    hdd,
    state_distance,
)
from hairpin.strand import (
    BINARY,
    QUAD,
    InvolutionAlphabet,
    Strand,
    complement,
    count_symbol,
    find_occurrences,
    reverse_complement,
)

__version__ = "0.1.0"
