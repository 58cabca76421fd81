from .version import __version__
from .errors import (
    AlgebraError,
    CapExceeded,
    EvenOrder,
    InvariantViolation,
    MalformedInput,
    NoIdentity,
    NoUniqueMidpoint,
    NotAGroup,
    NotAutomorphism,
    NotClosed,
    NotInvolutive,
    NotLatin,
    NotNormal,
    NotSymetron,
    NotTwoDivisible,
    NotTwoDivisibleGroup,
    NotTwoDivisibleSet,
    OrderTooLarge,
    PowerAmbiguous,
    PreconditionError,
    StepBudgetExceeded,
)
from .tables import (
    CayleyTable,
    SubsetMask,
    canonicalize,
    enumerate_closed_sets,
    find_identity,
    parse_table,
    parse_tables,
    read_table,
    relabel,
    serialize_table,
    write_table,
)
from .loops import (
    IdentityReport,
    ItemVerdict,
    LoopFlags,
    LoopStructure,
    aip_witness,
    associativity_witness,
    automorphisms,
    bol_witness,
    check_involutive_fpf_is_neg,
    check_kloop_identities,
    element_order,
    element_orders,
    half,
    involutive_fpf_automorphisms,
    is_aip,
    is_associative,
    is_bol,
    is_commutative,
    is_kloop,
    is_uniquely_2_divisible,
    make_loop,
    power,
    power_associativity_check,
    power_table,
)
from .permutations import (
    GeneratedGroup,
    Permutation,
    closure,
    inner_generators,
    inner_group,
    is_fixed_point_free,
    left_translation,
    mlt,
    mlt_left,
    precession,
    precession_determinacy_check,
    precession_group,
    precession_table,
    right_translation,
    stabilizer_check,
)
from .subloops import (
    LoopMorphism,
    QuotientResult,
    center_of_centralizer,
    centralizer,
    check_centralizer_lemma,
    check_commutation_criterion,
    check_homomorphism,
    check_second_isomorphism,
    enumerate_subloops,
    find_isomorphism,
    image,
    induced_isomorphism,
    is_automorphic,
    is_normal,
    is_normal_by_cosets,
    is_subloop,
    join_subloops,
    kernel,
    quotient,
    setwise_sum,
    subloop_closure,
    subloop_structure,
)
from .symetron import (
    SymetronStructure,
    check_automorphism_preserves_convexity,
    check_complement_injection,
    check_symmetrizer,
    convex_closure,
    convexity_equivalence_holds,
    cover_by_translates,
    decompose_indecomposable,
    elliptic_generate,
    enumerate_convex,
    is_convex,
    is_automorphism,
    is_indecomposable,
    is_midpoint_closed,
    make_symetron,
    reflect,
    sym_between,
    symmetrizer,
    symmetrizer_of_family,
    symetron_witness,
    translate,
)
from .interp import (
    basepoint_table,
    check_convex_subloop_bridge,
    check_midpoint_isomorphism,
    check_su_isomorphism,
    kloop_midpoint,
    kloop_to_symetron,
    roundtrip_check,
    subloop_from_convex,
    symetron_to_kloop,
    symmetric_quasigroup,
)
from .constructions import (
    GroupTable,
    canonical_form,
    cyclic_group,
    cyclic_kloop,
    direct_product,
    enumerate_kloops,
    group_product,
    heisenberg27,
    kloop_from_group,
    kloop_from_involution,
    make_group,
    metacyclic_group,
    standard_fixtures,
    symetron_from_group,
)
from .report import CAP_EXCEEDED, InvariantReport, loop_kind, loop_report, symetron_report
