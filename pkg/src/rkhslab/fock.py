"""Exact computations in the truncated Drury-Arveson space (symmetric Fock).

The ambient space is the d-variable reproducing kernel Hilbert space on the
unit ball with kernel 1/(1 - <z, w>), cut off at a chosen total degree.
Monomials z^alpha are orthogonal with norm squared alpha!/|alpha|!, kept
here as exact rationals.

Two coefficient paths. Inputs whose numbers are ints or Fractions stay exact
end to end: coefficients are Gaussian rationals and inner products come out
as Fractions. Any float or complex input switches the affected polynomial to
ordinary complex arithmetic. A polynomial never mixes the two.

Degree windows. Operations that consume a truncation of an infinite series
take an explicit window so nothing is dropped silently: the adjoint of
multiplication returns only coefficients the window can vouch for, and
raises instead of truncating when the input itself does not fit.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, NamedTuple, Union

import numpy as np

from .errors import DomainError, InputError, WindowOverflowError
from .kernels import PointSet
from .linalg import HermitianMatrix, min_eigenvalue

_ORTHONORMAL_TOL = 1e-12


class QQi:
    """Gaussian rational: complex number with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def _coerce(self, other):
        if isinstance(other, QQi):
            return other
        if isinstance(other, Rational):
            return QQi(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) + other
        return QQi(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other if isinstance(other, QQi) else -Fraction(other) if isinstance(other, Rational) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) * other
        return QQi(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) / other
        den = o.abs_sq()
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QQi(
            (self.re * o.re + self.im * o.im) / den,
            (self.im * o.re - self.re * o.im) / den,
        )

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        if isinstance(other, QQi):
            return self.re == other.re and self.im == other.im
        if isinstance(other, Rational):
            return self.im == 0 and self.re == other
        if isinstance(other, (float, complex)):
            return complex(self) == complex(other)
        return NotImplemented

    def __hash__(self):
        return hash(complex(self)) if self.im else hash(self.re)

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        return f"QQi({self.re!r}, {self.im!r})"


Coefficient = Union[QQi, complex]


def _coerce_coeff(x) -> Coefficient:
    """Exact types (int, Fraction, QQi) stay exact; everything else is complex."""
    if isinstance(x, QQi):
        return x
    if isinstance(x, bool):
        return QQi(int(x))
    if isinstance(x, Rational):
        return QQi(x)
    if isinstance(x, (np.integer,)):
        return QQi(int(x))
    c = complex(x)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise InputError("coefficients must be finite")
    return c


def _cadd(a: Coefficient, b: Coefficient) -> Coefficient:
    if isinstance(a, QQi) and isinstance(b, QQi):
        return QQi(a.re + b.re, a.im + b.im)
    return complex(a) + complex(b)


def _cmul(a: Coefficient, b: Coefficient) -> Coefficient:
    if isinstance(a, QQi) and isinstance(b, QQi):
        return a * b
    return complex(a) * complex(b)


def _cconj(a: Coefficient) -> Coefficient:
    if isinstance(a, QQi):
        return a.conjugate()
    return complex(a).conjugate()


def _cscale(a: Coefficient, f: Fraction) -> Coefficient:
    if isinstance(a, QQi):
        return QQi(a.re * f, a.im * f)
    return complex(a) * float(f)


def _ciszero(a: Coefficient) -> bool:
    if isinstance(a, QQi):
        return a.is_zero
    return a == 0


@lru_cache(maxsize=None)
def monomial_norm_sq(alpha: tuple) -> Fraction:
    """Exact ||z^alpha||^2 = alpha! / |alpha|!.

    Follows from expanding 1/(1 - <z, w>) as a geometric series: the
    degree-n part <z, w>^n spreads the multinomial weight n!/alpha! over
    the monomials, and the reproducing property inverts that weight.
    """
    total = 0
    num = 1
    for e in alpha:
        if e < 0:
            raise InputError("multi-index entries must be non-negative")
        num *= math.factorial(e)
        total += e
    return Fraction(num, math.factorial(total))


class Polynomial:
    """Multivariate polynomial over multi-indexed monomials.

    Coefficients are Gaussian rationals (exact path) or complex floats
    (numeric path), never mixed within one polynomial. Zero coefficients
    are not stored.
    """

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs: Union[Mapping, Iterable[tuple]] = ()):
        if not isinstance(dim, int) or dim < 1:
            raise InputError("dim must be a positive integer")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean: dict = {}
        exact = True
        for alpha, c in items:
            key = tuple(int(e) for e in alpha)
            if len(key) != dim or any(e < 0 for e in key):
                raise InputError(f"bad multi-index {alpha} for dim {dim}")
            cc = _coerce_coeff(c)
            if not isinstance(cc, QQi):
                exact = False
            if key in clean:
                cc = _cadd(clean[key], cc)
            clean[key] = cc
        if not exact:
            clean = {k: complex(v) for k, v in clean.items()}
        object.__setattr__(self, "dim", dim)
        object.__setattr__(
            self, "coeffs", {k: v for k, v in clean.items() if not _ciszero(v)}
        )

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls, dim: int) -> "Polynomial":
        return cls(dim)

    @classmethod
    def constant(cls, dim: int, value=1) -> "Polynomial":
        return cls(dim, {(0,) * dim: value})

    @classmethod
    def monomial(cls, dim: int, alpha, value=1) -> "Polynomial":
        return cls(dim, {tuple(alpha): value})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, QQi) for c in self.coeffs.values())

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(sum(a) for a in self.coeffs)

    def _wrap_scalar(self, other) -> "Polynomial":
        return Polynomial.constant(self.dim, other)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self._wrap_scalar(other)
        if other.dim != self.dim:
            raise InputError("dimension mismatch")
        merged = dict(self.coeffs)
        for a, c in other.coeffs.items():
            merged[a] = _cadd(merged[a], c) if a in merged else c
        return Polynomial(self.dim, merged)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.dim, {a: _cmul(c, QQi(-1)) for a, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self._wrap_scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            other = self._wrap_scalar(other)
        if other.dim != self.dim:
            raise InputError("dimension mismatch")
        out: dict = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                key = tuple(x + y for x, y in zip(a, b))
                term = _cmul(ca, cb)
                out[key] = _cadd(out[key], term) if key in out else term
        return Polynomial(self.dim, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise InputError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.dim, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.dim != other.dim or set(self.coeffs) != set(other.coeffs):
            return False
        return all(
            self.coeffs[a] == other.coeffs[a]
            if isinstance(self.coeffs[a], QQi) or isinstance(other.coeffs[a], QQi)
            else complex(self.coeffs[a]) == complex(other.coeffs[a])
            for a in self.coeffs
        )

    def __hash__(self):
        return hash((self.dim, frozenset(self.coeffs)))

    def evaluate(self, point) -> complex:
        z = np.atleast_1d(np.asarray(point, dtype=np.complex128))
        if z.shape != (self.dim,):
            raise InputError(f"point must have {self.dim} coordinates")
        total = 0j
        for alpha, c in self.coeffs.items():
            term = complex(c)
            for zi, e in zip(z, alpha):
                if e:
                    term *= zi**e
            total += term
        return total

    def __repr__(self):
        return f"Polynomial(dim={self.dim}, terms={len(self.coeffs)})"


def inner_product(p: Polynomial, q: Polynomial) -> Coefficient:
    """Weighted pairing sum_alpha p_alpha conj(q_alpha) ||z^alpha||^2.

    Linear in the first argument, conjugate-linear in the second. Exact when
    both polynomials are on the exact path.
    """
    if p.dim != q.dim:
        raise InputError("dimension mismatch")
    small, big, conj_small = (p, q, False) if len(p.coeffs) <= len(q.coeffs) else (q, p, True)
    exact = p.is_exact and q.is_exact
    total: Coefficient = QQi() if exact else 0j
    for alpha, c in small.coeffs.items():
        d = big.coeffs.get(alpha)
        if d is None:
            continue
        pc, qc = (d, c) if conj_small else (c, d)
        total = _cadd(total, _cscale(_cmul(pc, _cconj(qc)), monomial_norm_sq(alpha)))
    return total


def norm_sq(p: Polynomial) -> Union[Fraction, float]:
    """||p||^2; a Fraction on the exact path, a float otherwise."""
    ip = inner_product(p, p)
    if isinstance(ip, QQi):
        return ip.re
    return ip.real


def _coerce_vector(w) -> list:
    if isinstance(w, PointSet):
        raise InputError("expected a single point, not a point set")
    if isinstance(w, np.ndarray):
        arr = list(np.atleast_1d(w))
    elif isinstance(w, (list, tuple)):
        arr = list(w)
    else:
        arr = [w]
    if not arr:
        raise InputError("point must have at least one coordinate")
    return [_coerce_coeff(x) for x in arr]


def _vector_norm_sq(entries: list) -> Union[Fraction, float]:
    if all(isinstance(e, QQi) for e in entries):
        return sum((e.abs_sq() for e in entries), Fraction(0))
    return float(sum(abs(complex(e)) ** 2 for e in entries))


def pairing(w) -> Polynomial:
    """Degree-one polynomial z -> <z, w>, i.e. sum_i conj(w_i) z_i.

    These are the coordinate-function analogues among multipliers of the
    ball kernel; w is any finite vector, not necessarily inside the ball.
    """
    entries = _coerce_vector(w)
    d = len(entries)
    coeffs = {}
    for i, wi in enumerate(entries):
        alpha = tuple(1 if k == i else 0 for k in range(d))
        coeffs[alpha] = _cconj(wi)
    return Polynomial(d, coeffs)


class TruncatedKernel(NamedTuple):
    poly: Polynomial
    tail_norm_sq: float  # ||z||^(2(N+1)) / (1 - ||z||^2), the dropped mass


def truncated_kernel_fn(z, degree: int) -> TruncatedKernel:
    """Partial sum sum_{n <= degree} <., z>^n of the kernel function at z.

    Requires ||z|| < 1 and attaches the exact geometric bound on the squared
    norm of the dropped tail.
    """
    if degree < 0:
        raise InputError("degree must be non-negative")
    entries = _coerce_vector(z)
    nz = _vector_norm_sq(entries)
    if not float(nz) < 1.0:
        raise DomainError(f"||z||^2 = {float(nz):.6f} is not below 1")
    d = len(entries)
    result = Polynomial.constant(d, 1)
    step = pairing(entries)
    term = Polynomial.constant(d, 1)
    for _ in range(degree):
        term = term * step
        result = result + term
    t = float(nz)
    tail = t ** (degree + 1) / (1.0 - t)
    return TruncatedKernel(poly=result, tail_norm_sq=tail)


def mult_adjoint_apply(phi: Polynomial, f: Polynomial, degree: int) -> Polynomial:
    """Adjoint of multiplication by phi applied to f, on a degree window.

    Returns the polynomial g supported in degrees <= degree - deg(phi) with
    <g, h> = <f, phi h> for every h of degree <= degree - deg(phi). When f
    is an honest polynomial (not the truncation of a series) and phi is
    homogeneous, g is the complete adjoint image. f must fit the window;
    the engine raises rather than truncate.
    """
    if phi.dim != f.dim:
        raise InputError("dimension mismatch")
    if degree < 0:
        raise InputError("degree must be non-negative")
    if f.degree > degree:
        raise WindowOverflowError(
            f"input of degree {f.degree} does not fit the degree-{degree} window"
        )
    if phi.is_zero or f.is_zero:
        return Polynomial.zero(f.dim)
    out_cap = degree - phi.degree
    acc: dict = {}
    for gamma, pc in phi.coeffs.items():
        pcc = _cconj(pc)
        for mu, fc in f.coeffs.items():
            beta = tuple(m - g for m, g in zip(mu, gamma))
            if any(b < 0 for b in beta) or sum(beta) > out_cap:
                continue
            ratio = monomial_norm_sq(mu) / monomial_norm_sq(beta)
            term = _cscale(_cmul(pcc, fc), ratio)
            acc[beta] = _cadd(acc[beta], term) if beta in acc else term
    return Polynomial(f.dim, acc)


def _graded_basis(dim: int, degree: int) -> tuple:
    out = []
    for total in range(degree + 1):
        stars = []
        for cuts in itertools.combinations(range(total + dim - 1), dim - 1):
            prev = -1
            alpha = []
            for c in cuts:
                alpha.append(c - prev - 1)
                prev = c
            alpha.append(total + dim - 1 - prev - 1)
            stars.append(tuple(alpha))
        out.extend(sorted(stars))
    return tuple(out)


class TruncatedSpace:
    """Ordered monomial basis of the degree-bounded polynomial space.

    Basis order is graded lexicographic (total degree first, then tuple
    order), fixed at construction, so every matrix built over it is
    reproducible. Coordinates are isometric: the coefficient of z^alpha is
    scaled by ||z^alpha||, making the standard inner product of coordinate
    vectors equal to the space's weighted inner product.
    """

    __slots__ = ("dim", "degree", "basis", "norms_sq", "_pos", "_sqrt_norms")

    def __init__(self, dim: int, degree: int):
        if not isinstance(dim, int) or dim < 1:
            raise InputError("dim must be a positive integer")
        if not isinstance(degree, int) or degree < 0:
            raise InputError("degree must be a non-negative integer")
        self.dim = dim
        self.degree = degree
        self.basis = _graded_basis(dim, degree)
        self.norms_sq = tuple(monomial_norm_sq(a) for a in self.basis)
        self._pos = {a: i for i, a in enumerate(self.basis)}
        self._sqrt_norms = np.sqrt(np.array([float(w) for w in self.norms_sq]))

    def __len__(self) -> int:
        return len(self.basis)

    def index(self, alpha) -> int:
        try:
            return self._pos[tuple(alpha)]
        except KeyError:
            raise InputError(f"multi-index {alpha} is not in the basis") from None

    def iso_vector(self, p: Polynomial) -> np.ndarray:
        """Isometric coordinates of a polynomial of fitting degree."""
        if p.dim != self.dim:
            raise InputError("dimension mismatch")
        if p.degree > self.degree:
            raise WindowOverflowError(
                f"polynomial of degree {p.degree} does not fit degree {self.degree}"
            )
        u = np.zeros(len(self.basis), dtype=np.complex128)
        for alpha, c in p.coeffs.items():
            i = self._pos[alpha]
            u[i] = complex(c) * self._sqrt_norms[i]
        return u

    def polynomial(self, u: np.ndarray) -> Polynomial:
        """Polynomial (numeric path) with the given isometric coordinates."""
        u = np.asarray(u, dtype=np.complex128)
        if u.shape != (len(self.basis),):
            raise InputError(f"coordinate vector must have length {len(self.basis)}")
        return Polynomial(
            self.dim,
            {a: u[i] / self._sqrt_norms[i] for i, a in enumerate(self.basis) if u[i] != 0},
        )

    def kernel_vector(self, z) -> np.ndarray:
        """Isometric coordinates of the truncated kernel function at z.

        Entry alpha is conj(z)^alpha / ||z^alpha||; the squared norm of the
        vector is sum_{n <= degree} ||z||^(2n).
        """
        zv = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        if zv.shape != (self.dim,):
            raise InputError(f"point must have {self.dim} coordinates")
        if float(np.linalg.norm(zv)) >= 1.0:
            raise DomainError("point must lie inside the open unit ball")
        zc = np.conjugate(zv)
        u = np.empty(len(self.basis), dtype=np.complex128)
        for i, alpha in enumerate(self.basis):
            val = 1.0 + 0j
            for x, e in zip(zc, alpha):
                if e:
                    val *= x**e
            u[i] = val / self._sqrt_norms[i]
        return u

    def __repr__(self):
        return f"TruncatedSpace(dim={self.dim}, degree={self.degree}, size={len(self)})"


@dataclass(frozen=True)
class FockSubspace:
    """Subspace of a TruncatedSpace with an orthonormal basis.

    Columns of basis are isometric coordinate vectors, so standard
    orthonormality here means orthonormality of the underlying polynomials
    in the weighted inner product.
    """

    space: TruncatedSpace
    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=np.complex128)
        if b.ndim != 2 or b.shape[0] != len(self.space):
            raise InputError("basis shape does not match the space")
        if b.shape[1]:
            defect = np.max(np.abs(b.conj().T @ b - np.eye(b.shape[1])))
            if defect > _ORTHONORMAL_TOL:
                raise InputError(f"basis columns not orthonormal (defect {defect:.3e})")
        b = b.copy()
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def project(self, u: np.ndarray) -> np.ndarray:
        return self.basis @ (self.basis.conj().T @ np.asarray(u, dtype=np.complex128))

    def polynomials(self) -> list:
        return [self.space.polynomial(self.basis[:, k]) for k in range(self.dim)]


def span_of_polynomials(space: TruncatedSpace, polys: Iterable[Polynomial]) -> FockSubspace:
    """Orthonormalized span (SVD-based, rank-revealing) of given polynomials."""
    cols = [space.iso_vector(p) for p in polys]
    if not cols:
        return FockSubspace(space, np.zeros((len(space), 0)))
    v = np.column_stack(cols)
    u, s, _ = np.linalg.svd(v, full_matrices=False)
    if s.size:
        rank = int(np.sum(s > s[0] * max(v.shape) * np.finfo(float).eps))
    else:
        rank = 0
    return FockSubspace(space, u[:, :rank])


class VanishingSubspaces(NamedTuple):
    ideal: FockSubspace  # polynomials of bounded degree vanishing on Y
    complement: FockSubspace  # its orthogonal complement, spanned by kernel functions


def vanishing_subspace(points: PointSet, degree: int) -> VanishingSubspaces:
    """Split the truncated space into functions vanishing on Y and the rest.

    The complement is computed from the kernel-function span: evaluation at
    y is the pairing with the truncated kernel vector at y, so the
    evaluation nullspace and the kernel span are exact orthocomplements.
    Both come from one singular value decomposition.
    """
    space = TruncatedSpace(points.dim, degree)
    m = len(space)
    if len(points) > m:
        raise InputError(
            f"{len(points)} points exceed the {m} basis monomials of the window"
        )
    v = np.column_stack([space.kernel_vector(z) for z in points.points])
    u, s, _ = np.linalg.svd(v, full_matrices=True)
    rank = int(np.sum(s > s[0] * max(v.shape) * np.finfo(float).eps)) if s.size else 0
    return VanishingSubspaces(
        ideal=FockSubspace(space, u[:, rank:]),
        complement=FockSubspace(space, u[:, :rank]),
    )


class ClosureMembership(NamedTuple):
    member: bool
    residual: float


def in_closure(z, points: PointSet, degree: int, tol: float = 1e-8) -> ClosureMembership:
    """Does the kernel function at z lie in the span of those of Y?

    Membership characterizes the points to which every function vanishing
    on Y keeps vanishing. residual is the relative distance of the
    truncated kernel vector at z from the span; member means
    residual <= tol.
    """
    if tol <= 0:
        raise InputError("tol must be positive")
    spaces = vanishing_subspace(points, degree)
    u = spaces.complement.space.kernel_vector(z)
    residual = float(np.linalg.norm(u - spaces.complement.project(u)) / np.linalg.norm(u))
    return ClosureMembership(member=residual <= tol, residual=residual)


def compression_defect(phi: Polynomial, subspace: FockSubspace) -> float:
    """Smallest eigenvalue of the self-commutator of P_F M_phi |_F.

    The compressed matrix is assembled from exact pairings <phi f_l, f_k>;
    components of the products beyond the window are orthogonal to the
    window and drop out of the compression exactly, so no degree headroom
    is needed. A defect below zero outside noise is a refutation witness
    for hyponormality of the compression; a non-negative defect certifies
    hyponormality of this finite model only.
    """
    if phi.dim != subspace.space.dim:
        raise InputError("dimension mismatch")
    k = subspace.dim
    if k == 0:
        return 0.0
    cols = subspace.polynomials()
    products = [phi * c for c in cols]
    t = np.empty((k, k), dtype=np.complex128)
    for l in range(k):
        for i in range(k):
            t[i, l] = complex(inner_product(products[l], cols[i]))
    s = t.conj().T @ t - t @ t.conj().T
    return min_eigenvalue(HermitianMatrix(s))


class ArvesonWitness(NamedTuple):
    forward_norm_sq: Fraction  # ||M_{z1 z2} (z1 z2)||^2
    adjoint_norm_sq: Fraction  # ||M_{z1 z2}* (z1 z2)||^2


def arveson_example() -> ArvesonWitness:
    """Arveson's non-hyponormal multiplier witness on the 2-ball, exactly.

    Multiplication by z1 z2 sends z1 z2 to (z1 z2)^2 of squared norm 1/6,
    while its adjoint sends z1 z2 to a constant of squared norm 1/4. Both
    numbers are computed from first principles on the exact path, and the
    strict inequality 1/6 < 1/4 is asserted.
    """
    z1z2 = Polynomial.monomial(2, (1, 1))
    fwd = norm_sq(z1z2 * z1z2)
    adj = norm_sq(mult_adjoint_apply(z1z2, z1z2, degree=2))
    if not (isinstance(fwd, Fraction) and isinstance(adj, Fraction)):
        raise AssertionError("witness must be exact")
    if not fwd < adj:
        raise AssertionError(f"expected forward {fwd} < adjoint {adj}")
    return ArvesonWitness(forward_norm_sq=fwd, adjoint_norm_sq=adj)


class TailBalance(NamedTuple):
    adjoint_norm_sq: float  # ||M_{<., z>}* f||^2 for f = K_N(., z) - 1
    forward_norm_sq: float  # ||M_{<., z>} f||^2
    tail_bound: float  # 3 ||z||^(2N+2) / (1 - ||z||^2)


def tail_balance(z, degree: int) -> TailBalance:
    """Norm balance of multiplication by <., z> on the kernel tail.

    For f the truncated kernel function at z minus the constant term, the
    adjoint image is ||z||^2 times the one-step-shorter truncation, and the
    forward image re-sums the same geometric series; the two squared norms
    agree up to the attached tail bound (on the truncated model they agree
    exactly). Both are computed through the engine, not from the closed
    form. z = 0 is rejected as degenerate (f vanishes).
    """
    entries = _coerce_vector(z)
    nz = float(_vector_norm_sq(entries))
    if nz == 0.0:
        raise InputError("z must be nonzero; the tail vanishes at z = 0")
    if degree < 1:
        raise InputError("degree must be at least 1")
    kernel = truncated_kernel_fn(entries, degree)
    f = kernel.poly - 1
    step = pairing(entries)
    adj = float(norm_sq(mult_adjoint_apply(step, f, degree)))
    fwd = float(norm_sq(step * f))
    bound = 3.0 * nz ** (degree + 1) / (1.0 - nz)
    return TailBalance(adjoint_norm_sq=adj, forward_norm_sq=fwd, tail_bound=bound)


class PairingPowerNorms(NamedTuple):
    adjoint_norm: float  # ||M_{<., z>}* <., z>^(n-1)||
    forward_norm: float  # ||M_{<., z>} <., z>^(n-1)||


def pairing_power_norms(z, n: int, degree: int) -> PairingPowerNorms:
    """Both norms around the (n-1)-st power of <., z>; each equals ||z||^n.

    Exact finite computations with no truncation error: the power fits the
    window whenever n <= degree.
    """
    if not isinstance(n, int) or n < 2:
        raise InputError("n must be an integer >= 2")
    entries = _coerce_vector(z)
    nz = float(_vector_norm_sq(entries))
    if not 0.0 < nz < 1.0:
        raise DomainError("need 0 < ||z|| < 1")
    if n > degree:
        raise WindowOverflowError(f"power {n} does not fit the degree-{degree} window")
    step = pairing(entries)
    prev = step ** (n - 1)
    adj = math.sqrt(float(norm_sq(mult_adjoint_apply(step, prev, degree))))
    fwd = math.sqrt(float(norm_sq(step * prev)))
    return PairingPowerNorms(adjoint_norm=adj, forward_norm=fwd)
