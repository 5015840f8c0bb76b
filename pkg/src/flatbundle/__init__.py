"""flatbundle: Euler numbers of flat circle bundles over surfaces.

Three independent routes to the Euler number -- holonomy rotation numbers,
exact singular-vertex weights of a quasisection, and boundary-winding
clutching data -- plus a mechanical desk-scale verification of the
Milnor-Wood inequality ``|E| <= 2g - 2``.
"""

from .cover import (
    CoverPresentation,
    DoublingReport,
    double_cover_presentation,
    doubling_audit,
    pullback_euler,
)
from .lifts import (
    ChainLift,
    Lift,
    MoebiusLift,
    PLLift,
    RigidLift,
    WindingResult,
    boundary_action,
    commutator,
    compose,
    evaluate,
    identity_lift,
    invert,
    is_monotone_on_grid,
    normalize,
    reverse,
    shift,
    winding_number,
)
from .local_formula import (
    EscherReport,
    EscherVerdict,
    SheetCircle,
    SingularVertex,
    VertexSum,
    census_bound,
    covering_disk_census,
    escher_check,
    escher_exhaust,
    euler_from_vertices,
    vertex_weight,
)
from .representations import (
    FUCHSIAN_EULER_SIGN,
    EulerResult,
    MWAuditReport,
    Representation,
    abelian_representation,
    commutator_product,
    conjugate,
    euler_number,
    fuchsian_representation,
    milnor_wood_audit,
    pinch_representation,
    random_pl_lift,
    reverse_orientation,
)
from .rotation import Enclosure, rotation_number
from .sections import (
    BoundaryLoop,
    CornerData,
    clutching_euler,
    concatenate_loops,
    reverse_loop,
    sample_loop,
    sullivan_degree,
)
from .words import (
    Word,
    evaluate_word,
    format_word,
    free_reduce,
    is_trivial,
    parse_word,
    relator,
)

__version__ = "0.1.0"
