"""Monic representations, condition (G) and the Gorenstein-projectivity deciders."""

from monic.conditions import (
    ArrowCheck, MonicReport, TheoremViolation, Thm23Report, VertexCheck, check_m1, check_m2,
    check_monic, incoming_image_sum, is_monic, verify_thm23,
)
from monic.gorenstein import (
    GDecision, GPDecision, check_image_gp, condition_g, image_gp_report, incoming_quotient, is_gp,
)
from monic.triangular import (
    InductiveReport, TriangularSplit, coker_phi, inductive_verify, quotient_identity_report,
    recursive_verdict, triangular_split,
)
