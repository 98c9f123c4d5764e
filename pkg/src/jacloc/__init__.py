"""Local structure of compactified Jacobians of nodal curves.

Exact combinatorics for a nodal curve's dual graph and a rank-1
torsion-free sheaf datum: stability tests, the torus-invariant monomial
monoid, Hilbert-Samuel multiplicities, and explicit ring presentations.
"""

from .curve import (
    CurveGraph,
    LineBundleDatum,
    Polarization,
    SheafDatum,
    arithmetic_genus,
    aut_torus_rank,
    cut_edges,
    degree_complement_identity_check,
    dollar_sign_curve,
    omega_degree,
    one_node_curve,
    restricted_degree,
    subcurves,
    two_component_curve,
)
from .errors import (
    DegreeMismatch,
    JaclocError,
    MDegreeMismatch,
    NegativeVariableCount,
    NonRationalPhi,
    NonStabilized,
    ScaleLimitExceeded,
)
from .graph import (
    BACKWARD,
    FORWARD,
    Circulation,
    MultiGraph,
    Orientation,
    OrientedCircuit,
    b1,
    boundary,
    circuit_to_circulation,
    contract_edges,
    oriented_circuits,
    separating_edges,
    totally_cyclic_orientations,
)
from .local import (
    LocalReport,
    RingPresentation,
    deformation_ring_local_pieces,
    gamma_of,
    local_report,
    presentation,
)
from .stability import (
    HilbertPolynomial,
    PhiParameter,
    Status,
    StabilityVerdict,
    count_stable_line_multidegrees,
    hilbert_polynomial,
    phi_polystable,
    phi_semistable,
    phi_to_polarization,
    slope_polystable,
    slope_semistable,
    slope_to_phi,
    twist,
)
from .toric import (
    MonomialAB,
    circuit_generators,
    hilbert_samuel,
    invariant_monomials_upto,
    local_component_count,
    monoid_product,
    multiplicity,
    weight_of,
)

__version__ = "0.1.0"
