"""Kernel specifications, Gram assembly, normalization, irreducibility.

Three ways to present a kernel: a power-series kernel on the unit disk given
by its coefficient list, the unit-ball kernel 1/(1 - <z, w>) in d complex
variables, and a kernel known only through a sampled Gram matrix. All three
expose evaluate() and gram().
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Sequence, Union

import numpy as np

from .errors import DomainError, InputError, IrreducibilityError
from .linalg import DEFAULT_TOL, HermitianMatrix, psd_check


def _as_point(p, dim: int) -> np.ndarray:
    v = np.atleast_1d(np.asarray(p, dtype=np.complex128))
    if v.ndim != 1 or v.shape[0] != dim:
        raise InputError(f"expected a point with {dim} coordinates, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InputError("point contains non-finite coordinates")
    return v


class PointSet:
    """Finite set of points in the open unit ball of C^dim.

    Points are pairwise distinct (exact comparison; inputs are user data,
    not computed) and each has Euclidean norm strictly below 1.
    """

    __slots__ = ("_dim", "_points")

    def __init__(self, dim: int, points):
        if dim < 1:
            raise InputError("dim must be at least 1")
        pts = np.asarray(points, dtype=np.complex128)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[1] != dim:
            raise InputError(f"points must form an (n, {dim}) array, got shape {pts.shape}")
        if pts.shape[0] == 0:
            raise InputError("point set must be non-empty")
        if not np.all(np.isfinite(pts)):
            raise InputError("points contain non-finite coordinates")
        norms = np.linalg.norm(pts, axis=1)
        if np.any(norms >= 1.0):
            worst = int(np.argmax(norms))
            raise DomainError(
                f"point {worst} has norm {norms[worst]:.6f}, outside the open unit ball"
            )
        n = pts.shape[0]
        for i in range(n):
            for j in range(i + 1, n):
                if np.array_equal(pts[i], pts[j]):
                    raise InputError(f"points {i} and {j} coincide")
        pts = pts.copy()
        pts.setflags(write=False)
        self._dim = dim
        self._points = pts

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def points(self) -> np.ndarray:
        return self._points

    def __len__(self) -> int:
        return self._points.shape[0]

    def __getitem__(self, i) -> np.ndarray:
        return self._points[i]

    def __repr__(self) -> str:
        return f"PointSet(dim={self._dim}, n={len(self)})"


def _hermitian_gram(points: np.ndarray, pairwise) -> HermitianMatrix:
    n = points.shape[0]
    g = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(i, n):
            val = pairwise(points[i], points[j])
            g[i, j] = val
            g[j, i] = np.conjugate(val)
    return HermitianMatrix(g)


class PowerSeriesKernel:
    """K(z, w) = sum_n a_n (z conj(w))^n on the unit disk.

    The coefficient list is finite; the caller chooses the truncation
    length. Coefficients must be positive with a_0 = 1.
    """

    dim = 1

    def __init__(self, coeffs: Sequence):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise InputError("coefficient list must be non-empty")
        for i, c in enumerate(coeffs):
            if not isinstance(c, (Real, Fraction)) or isinstance(c, bool):
                raise InputError(f"coefficient {i} is not a real number")
            if not c > 0:
                raise InputError(f"coefficient {i} must be positive, got {c}")
        if coeffs[0] != 1:
            raise InputError("a_0 must equal 1")
        self.coeffs = coeffs

    def evaluate(self, z, w) -> complex:
        zv = _as_point(z, 1)
        wv = _as_point(w, 1)
        x = complex(zv[0] * np.conjugate(wv[0]))
        if abs(x) >= 1.0:
            raise DomainError(f"|z conj(w)| = {abs(x):.6f} is not below 1")
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def gram(self, pts: PointSet) -> HermitianMatrix:
        if pts.dim != 1:
            raise InputError("power-series kernels live on the unit disk (dim 1)")
        return _hermitian_gram(pts.points, lambda a, b: self.evaluate(a, b))

    def __repr__(self) -> str:
        return f"PowerSeriesKernel(terms={len(self.coeffs)})"


class DruryArvesonKernel:
    """K(z, w) = 1 / (1 - <z, w>) on the open unit ball of C^dim."""

    def __init__(self, dim: int):
        if not isinstance(dim, int) or dim < 1:
            raise InputError("dim must be a positive integer")
        self.dim = dim

    def evaluate(self, z, w) -> complex:
        zv = _as_point(z, self.dim)
        wv = _as_point(w, self.dim)
        ip = complex(np.dot(zv, np.conjugate(wv)))
        if abs(ip) >= 1.0:
            raise DomainError(f"|<z, w>| = {abs(ip):.6f} is not below 1")
        return 1.0 / (1.0 - ip)

    def gram(self, pts: PointSet) -> HermitianMatrix:
        if pts.dim != self.dim:
            raise InputError(f"points have dim {pts.dim}, kernel has dim {self.dim}")
        return _hermitian_gram(pts.points, lambda a, b: self.evaluate(a, b))

    def __repr__(self) -> str:
        return f"DruryArvesonKernel(dim={self.dim})"


class SampledGramKernel:
    """Kernel known only through its Gram matrix on labelled points."""

    def __init__(self, labels: Sequence[str], gram, tol: float = DEFAULT_TOL):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise InputError("labels must be distinct")
        g = gram if isinstance(gram, HermitianMatrix) else HermitianMatrix(gram)
        if g.n != len(labels):
            raise InputError(f"{len(labels)} labels for a {g.n}x{g.n} Gram matrix")
        verdict = psd_check(g, tol)
        if not verdict.is_psd:
            raise InputError(
                f"sampled Gram matrix is not PSD (min eigenvalue {verdict.min_eig:.6e})"
            )
        self.labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._gram = g

    def _resolve(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown label {label!r}") from None

    def evaluate(self, z, w) -> complex:
        return complex(self._gram[self._resolve(z), self._resolve(w)])

    def gram(self, labels=None) -> HermitianMatrix:
        if labels is None:
            return self._gram
        idx = [self._resolve(lab) for lab in labels]
        if len(set(idx)) != len(idx):
            raise InputError("requested labels must be distinct")
        return HermitianMatrix(self._gram.entries[np.ix_(idx, idx)])

    def __repr__(self) -> str:
        return f"SampledGramKernel(n={len(self.labels)})"


KernelSpec = Union[PowerSeriesKernel, DruryArvesonKernel, SampledGramKernel]


@dataclass(frozen=True)
class NormalizedGram:
    """Gram matrix rescaled so the base row is identically one.

    gram_tilde[i][j] * delta[i] * conj(delta[j]) reproduces the original
    matrix entrywise.
    """

    gram_tilde: HermitianMatrix
    delta: np.ndarray
    base_index: int


def normalize(g: HermitianMatrix, base: int) -> NormalizedGram:
    """Rescale a Gram matrix by delta(i) = G[i][base] / sqrt(G[base][base]).

    Requires a strictly positive base diagonal entry and a nowhere-zero base
    column (the sample-level irreducibility needed for the rescaling).
    """
    n = g.n
    if not 0 <= base < n:
        raise InputError(f"base index {base} out of range for n={n}")
    gbb = g[base, base].real
    if not gbb > 0:
        raise InputError(f"G[base][base] must be positive, got {gbb}")
    col = g.entries[:, base]
    zero = np.flatnonzero(col == 0)
    if zero.size:
        raise IrreducibilityError(
            f"kernel entry K(point {zero[0]}, base) is zero; cannot normalize"
        )
    delta = col / np.sqrt(gbb)
    gt = g.entries / np.outer(delta, delta.conj())
    # Base row and column are exactly one by construction; pin them to kill
    # rounding dust so the downstream 1 - 1/K matrix gets an exact zero row.
    gt[base, :] = 1.0
    gt[:, base] = 1.0
    delta = delta.copy()
    delta.setflags(write=False)
    return NormalizedGram(gram_tilde=HermitianMatrix(gt), delta=delta, base_index=base)


def irreducible_partition(g: HermitianMatrix, tol: float = DEFAULT_TOL) -> list[list[int]]:
    """Partition indices into connected components of |G[i][j]| > tol.

    Nonvanishing of individual entries is not transitive; the orthogonal-sum
    decomposition of the space follows the transitive closure, so connected
    components are the right classes. Across distinct classes every entry is
    at most tol.
    """
    n = g.n
    adj = np.abs(g.entries) > tol
    seen = [False] * n
    classes: list[list[int]] = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        component = []
        while stack:
            i = stack.pop()
            component.append(i)
            for j in np.flatnonzero(adj[i]):
                if not seen[j]:
                    seen[j] = True
                    stack.append(int(j))
        classes.append(sorted(component))
    classes.sort(key=lambda c: c[0])
    return classes


def check_irreducible_sample(g: HermitianMatrix, tol: float = DEFAULT_TOL) -> bool:
    """Sample-level irreducibility: no zero entries, no proportional rows.

    Proportionality of rows i and j means every 2x2 minor built from them
    vanishes; the test declares rows proportional when all such minors have
    modulus at most tol. A verdict of True certifies nothing about points
    outside the sample.
    """
    a = g.entries
    if np.min(np.abs(a)) <= tol:
        return False
    n = g.n
    for i in range(n):
        for j in range(i + 1, n):
            minors = np.outer(a[i], a[j]) - np.outer(a[j], a[i])
            if np.max(np.abs(minors)) <= tol:
                return False
    return True
