"""Pick matrices, interpolation feasibility, minimal norm by bisection.

The Pick matrix of an interpolation problem at norm level t has entries
(t^2 - w_i conj(w_j)) K(z_i, z_j). Its positive semidefiniteness is always
necessary for a multiplier of norm at most t through the data; for
Nevanlinna-Pick kernels it is also sufficient. Verdicts here are about the
matrix condition only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import InputError, PreconditionError
from .kernels import KernelSpec, PointSet
from .linalg import DEFAULT_TOL, HermitianMatrix, PsdVerdict, min_eigenvalue, psd_check

Nodes = Union[PointSet, Sequence[str]]


@dataclass(frozen=True)
class PickProblem:
    """Interpolation data: nodes z_i in the kernel's domain, targets w_i.

    Nodes are a PointSet for analytic kernels or a label sequence for a
    sampled kernel. Scalar targets only.
    """

    kernel: KernelSpec
    nodes: Nodes
    targets: np.ndarray = field(repr=False)

    def __post_init__(self):
        w = np.atleast_1d(np.asarray(self.targets, dtype=np.complex128))
        if w.ndim != 1:
            raise InputError("targets must be a flat list of scalars")
        if not np.all(np.isfinite(w)):
            raise InputError("targets contain non-finite values")
        n = len(self.nodes)
        if n < 1 or w.shape[0] != n:
            raise InputError(f"{n} nodes but {w.shape[0]} targets")
        if not isinstance(self.nodes, PointSet):
            labels = tuple(self.nodes)
            if len(set(labels)) != len(labels):
                raise InputError("nodes must be pairwise distinct")
            object.__setattr__(self, "nodes", labels)
        w = w.copy()
        w.setflags(write=False)
        object.__setattr__(self, "targets", w)

    def gram(self) -> HermitianMatrix:
        return self.kernel.gram(self.nodes)


def _pick_from_gram(g: HermitianMatrix, targets: np.ndarray, t: float) -> HermitianMatrix:
    w = targets
    return HermitianMatrix((t * t - np.outer(w, w.conj())) * g.entries)


def pick_matrix(problem: PickProblem, t: float) -> HermitianMatrix:
    """Pick matrix ((t^2 - w_i conj(w_j)) K(z_i, z_j)); t = 1 is the classical one."""
    if not t > 0:
        raise InputError("norm level t must be positive")
    return _pick_from_gram(problem.gram(), problem.targets, t)


def pick_feasible(problem: PickProblem, t: float, tol: float = DEFAULT_TOL) -> PsdVerdict:
    """PSD verdict for the Pick matrix at norm level t.

    For Nevanlinna-Pick kernels this decides existence of an interpolant of
    multiplier norm at most t; for other kernels it is necessary only.
    """
    return psd_check(pick_matrix(problem, t), tol)


def minimal_interpolation_norm(problem: PickProblem, tol: float = DEFAULT_TOL) -> float:
    """Smallest t (to absolute accuracy tol) with a PSD Pick matrix.

    Feasibility is upward-closed in t because raising t adds the PSD matrix
    (t'^2 - t^2) G, so bisection applies. The upper bracket starts at
    max |w_i| and doubles until feasible; a positive definite Gram matrix
    guarantees this terminates.
    """
    if tol <= 0:
        raise InputError("tol must be positive")
    g = problem.gram()
    gram_min = min_eigenvalue(g)
    if not gram_min > tol:
        raise PreconditionError(
            f"Gram matrix is not positive definite (min eigenvalue {gram_min:.3e}); "
            "bisection bracket is not guaranteed"
        )
    w = problem.targets
    wmax = float(np.max(np.abs(w)))
    if wmax == 0.0:
        return 0.0

    def feasible(t: float) -> bool:
        return psd_check(_pick_from_gram(g, w, t), tol).is_psd

    hi = wmax
    for _ in range(200):
        if feasible(hi):
            break
        hi *= 2.0
    else:
        raise PreconditionError("no feasible norm level found while doubling the bracket")
    lo = 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
