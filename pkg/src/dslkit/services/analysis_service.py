"""
Analysis service for dslkit.

This service handles the matrix-level commands: lifted angles and branch
membership reports.
"""

from pathlib import Path
from typing import Any, Dict, Optional, Union
import ast
import logging
import math
import operator

import numpy as np
from pydantic import ValidationError

from ..angles.lifted import lifted_angle, spacetime_angle, spacetime_angle_schur, spacetime_angle_spectral
from ..core.exceptions import (
    BranchCutViolation,
    HypothesisViolation,
    InputError,
    NonConvergence,
    SingularClassInput,
    SingularSystem,
)
from ..core.schema import RuntimeConfig
from ..linalg.codec import Matrix, load_matrix
from ..linalg.matrices import SpaceTimeMatrix, SymMatrix
from ..subequations.branches import DslBranch, SlBranch
from ..subequations.predicates import (
    eigenvalue_consequences,
    in_dual_F,
    in_F,
    in_Fcal,
    in_P,
    in_T,
    is_two_convex,
    schur_decomposition_terms,
    time_slot_sign,
)
from ..subequations.star import in_star_product

logger = logging.getLogger(__name__)

__all__ = ["AnalysisService", "parse_phase"]

HALF_PI = 0.5 * math.pi

_BINARY = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}
_UNARY = {ast.USub: operator.neg, ast.UAdd: operator.pos}


def parse_phase(text: Union[str, float]) -> float:
    """Evaluate a phase such as ``1.2``, ``3pi/2`` or ``pi + 0.1``.

    Only numbers, ``pi``, the four arithmetic operators and parentheses are
    accepted; an implicit product like ``3pi`` is read as ``3*pi``.
    """
    if isinstance(text, (int, float)):
        return float(text)
    source = str(text).strip().replace("π", "pi")
    for digit in "0123456789)":
        source = source.replace(f"{digit}pi", f"{digit}*pi")
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as e:
        raise InputError(f"cannot parse phase '{text}'", context={"value": str(text)}, cause=e)

    def ev(node: ast.AST) -> float:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _BINARY:
            return _BINARY[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
            return _UNARY[type(node.op)](ev(node.operand))
        raise InputError(f"unsupported token in phase '{text}'", context={"value": str(text)})

    try:
        value = ev(tree)
    except ZeroDivisionError as e:
        raise InputError(f"division by zero in phase '{text}'", context={"value": str(text)}, cause=e)
    if not math.isfinite(value):
        raise InputError(f"phase '{text}' is not finite", context={"value": str(text)})
    return value


class AnalysisService:
    """Service for angle and membership queries on a single matrix."""

    def __init__(self, config: Optional[RuntimeConfig] = None):
        self.config = config or RuntimeConfig()

    @property
    def _tol(self):
        return self.config.system.tolerances

    @property
    def _eigen(self):
        return self.config.system.eigen

    def load(self, path: Union[str, Path]) -> Matrix:
        return load_matrix(path)

    def angle_report(self, a: Matrix) -> Dict[str, Any]:
        """theta_tilde for a symmetric matrix, Theta_tilde with both routes for a space-time one."""
        if isinstance(a, SymMatrix):
            value = lifted_angle(a, self._eigen)
            return {"kind": "sym", "n": a.n, "theta_tilde": value.to_dict()}

        combined = spacetime_angle(a, self._tol, self._eigen)
        routes: Dict[str, Any] = {}
        try:
            routes["spectral"] = spacetime_angle_spectral(a, self._tol, self._eigen).radians
        except (BranchCutViolation, NonConvergence) as e:
            routes["spectral"] = None
            logger.debug("spectral route unavailable: %s", e)
        try:
            routes["schur"] = spacetime_angle_schur(a, self._tol, self._eigen).radians
        except (SingularClassInput, SingularSystem) as e:
            routes["schur"] = None
            logger.debug("schur route unavailable: %s", e)
        return {"kind": "spacetime", "n": a.n, "Theta_tilde": combined.to_dict(), "routes": routes}

    def membership_report(
        self, a: Matrix, phase: float, seed: int = 0, tol: Optional[float] = None
    ) -> Dict[str, Any]:
        """Membership of ``a`` in the branch of phase ``phase``.

        ``consistent`` is false when two independent routes to the same
        membership disagree, or a proven consequence of membership fails.
        """
        tol = self._tol.angle if tol is None else tol
        try:
            if isinstance(a, SymMatrix):
                return self._sym_membership(a, phase, tol)
            return self._spacetime_membership(a, phase, seed, tol)
        except ValidationError as e:
            raise InputError(
                f"phase {phase} is outside the admissible range for n={a.n}",
                context={"value_name": "c", "value": repr(phase)},
                cause=e,
            )

    def _sym_membership(self, a: SymMatrix, phase: float, tol: float) -> Dict[str, Any]:
        branch = SlBranch(n=a.n, c=phase)
        lemma = eigenvalue_consequences(a, tol, self._eigen)
        consistent = lemma.top_branch_psd_ok and lemma.second_branch_dominance_ok
        return {
            "kind": "sym",
            "n": a.n,
            "c": phase,
            "F_c": in_F(a, branch, tol, self._eigen),
            "Fcal_c": None,
            "star_product": None,
            "dual": in_dual_F(a, branch, tol, self._eigen),
            "predicates": {
                "P": in_P(a, tol),
                "T": in_T(a, tol),
                "two_convex": is_two_convex(a, tol),
                "eigenvalue_lemma": lemma.to_dict(),
            },
            "consistent": bool(consistent),
        }

    def _spacetime_membership(self, a: SpaceTimeMatrix, phase: float, seed: int, tol: float) -> Dict[str, Any]:
        branch = DslBranch(n=a.n, c=phase)
        member = in_Fcal(a, branch, tol, self._tol, self._eigen)
        consistent = True

        slice_phase = branch.slice_phase
        space_block: Optional[bool] = None
        if abs(slice_phase) < a.n * HALF_PI:
            space_block = in_F(a.a_plus, SlBranch(n=a.n, c=slice_phase), tol, self._eigen)

        star: Optional[Dict[str, Any]] = None
        sign: Optional[Dict[str, Any]] = None
        if branch.in_top_two:
            result = in_star_product(a, branch, np.random.default_rng(seed), self.config.system.star_search, tol)
            star = result.to_dict()
            angle = spacetime_angle(a, self._tol, self._eigen).radians
            # membership on the boundary is tolerance-sensitive
            if abs(angle - phase) >= self._tol.boundary_band and result.member != member:
                consistent = False
            if member:
                try:
                    sign = time_slot_sign(a, branch, tol, tolerances=self._tol, config=self._eigen).to_dict()
                    consistent = consistent and sign["a00_nonneg"] and sign["average_bound_ok"]
                except HypothesisViolation as e:
                    logger.debug("time-slot sign skipped: %s", e)

        terms = schur_decomposition_terms(a, self._eigen)
        return {
            "kind": "spacetime",
            "n": a.n,
            "c": phase,
            "tier": branch.tier.value,
            "F_c": space_block,
            "Fcal_c": member,
            "star_product": star,
            "dual": None,
            "predicates": {
                "P": in_P(a, tol),
                "T": in_T(a, tol),
                "two_convex": is_two_convex(a, tol),
                "time_slot_sign": sign,
                "schur_terms": {
                    "real": terms.real,
                    "imag": terms.imag,
                    "weighted_mean": terms.weighted_mean,
                },
            },
            "consistent": bool(consistent),
        }
