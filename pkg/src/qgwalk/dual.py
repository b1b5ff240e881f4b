"""Random walks on the dual of KP_n.

The dual algebra carries the basis dual to the canonical one; its
irreducible characters are the n^2 coordinate functionals e^(i,j)
(one-dimensional) together with one n-dimensional representation Xhat.
The inverse Fourier transform identifies e^(i,j) with e_(-i,-j) and
E^(i,j) with E_(i,j)/n inside C(KP_n); under this identification the
dual convolution becomes the pointwise product, the dual Haar state is
evaluation against e_(0,0), and the distance to it has an exact
expression through the Fourier profile of the walk element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    AlgebraElement,
    AlgebraShape,
)
from .sekine import (
    StateReport,
    fourier_profile,
    genuine_x_range,
)

XHAT = "Xhat"

DualKey = tuple[int, int] | str


@dataclass(frozen=True)
class DualCentralElement:
    """Character coefficients of an element of the dual algebra.

    Keys are (i, j) pairs for the coordinate characters and "Xhat" for
    the n-dimensional one; absent keys carry coefficient zero.
    """

    n: int
    coeffs: dict[DualKey, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for key in self.coeffs:
            if key == XHAT:
                continue
            i, j = key
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"key {key} outside Z_{self.n} x Z_{self.n}")

    def coefficient(self, key: DualKey) -> complex:
        return complex(self.coeffs.get(key, 0.0))

    def dimension(self, key: DualKey) -> int:
        return self.n if key == XHAT else 1


def dual_validate_state(a: DualCentralElement, tol: float = DEFAULT_TOL) -> StateReport:
    """States are exactly the real nonnegative coefficient maps with
    unit coefficient at (0, 0)."""
    failures: list[tuple[str, object]] = []
    norm = a.coefficient((0, 0))
    if abs(norm - 1.0) > tol:
        failures.append(("normalization", norm))
    for key, c in sorted(a.coeffs.items(), key=str):
        c = complex(c)
        if abs(c.imag) > tol:
            failures.append(("coefficient not real", (key, c)))
        elif c.real < -tol:
            failures.append(("negative coefficient", (key, c.real)))
    return StateReport(not failures, failures)


def dual_fourier_values(a: DualCentralElement) -> dict[DualKey, complex]:
    """Fourier values of the dual functional.

    The value at e^(i,j) is the coefficient at (-i, -j); the Xhat block
    is the scalar a_Xhat / n times the identity, recorded by its scalar.
    """
    n = a.n
    values: dict[DualKey, complex] = {}
    for i in range(n):
        for j in range(n):
            c = a.coefficient(((-i) % n, (-j) % n))
            if c != 0.0:
                values[(i, j)] = c
    values[XHAT] = a.coefficient(XHAT) / n
    return values


def dual_power(a: DualCentralElement, k: int) -> DualCentralElement:
    """Coefficients of the k-th convolution power: a_alpha^k / d_alpha^(k-1)."""
    if k < 1:
        raise ValueError("k must be positive")
    coeffs: dict[DualKey, complex] = {}
    for key, c in a.coeffs.items():
        d = a.dimension(key)
        val = complex(c) ** k / d ** (k - 1)
        if val != 0.0:
            coeffs[key] = val
    return DualCentralElement(a.n, coeffs)


def dual_to_primal(a: DualCentralElement) -> AlgebraElement:
    """Identification into C(KP_n): e^(i,j) -> e_(-i,-j), E^(ij) -> E_ij / n.

    The index reflection is applied here and nowhere else.
    """
    n = a.n
    ab = np.zeros((n, n), dtype=np.complex128)
    for key, c in a.coeffs.items():
        if key == XHAT:
            continue
        i, j = key
        ab[(-i) % n, (-j) % n] += complex(c)
    mat = (a.coefficient(XHAT) / n) * np.eye(n, dtype=np.complex128)
    return AlgebraElement(AlgebraShape.sekine(n), ab.reshape(-1), mat)


def _require_dual_state(a: DualCentralElement, tol: float = DEFAULT_TOL) -> None:
    report = dual_validate_state(a, tol)
    if not report.is_state:
        raise ValueError(f"not a state on the dual: {report.failures}")


def dual_qtv_to_haar(a: DualCentralElement, k: int, tol: float = DEFAULT_TOL) -> float:
    """Exact distance of the k-th dual convolution power to the dual Haar state.

    The density of the walk state with respect to the dual Haar state
    has blocks 2n^2 * Fhat(w)(alpha) over the primal irreducibles, where
    w is the walk element in C(KP_n); the dual Haar state itself has the
    unit density.  The distance is half the weighted trace norm of the
    difference.
    """
    _require_dual_state(a, tol)
    n = a.n
    w = dual_to_primal(dual_power(a, k))
    prof = fourier_profile(w)
    scale = 2.0 * n * n
    total = 0.0
    for label, val in prof.scalars.items():
        total += abs(scale * val - 1.0)
    eye = np.eye(2)
    for v in genuine_x_range(n):
        for u in range(n):
            diff = scale * prof.blocks[(u, v)] - eye
            total += 2.0 * np.linalg.svd(diff, compute_uv=False).sum()
    return 0.5 * total / scale


def dual_bounds(a: DualCentralElement, k: int, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Lower and upper mixing bounds for the dual walk at step k."""
    _require_dual_state(a, tol)
    lower = 0.0
    upper_sq = 0.0
    for key, c in a.coeffs.items():
        if key == (0, 0):
            continue
        d = a.dimension(key)
        ratio = abs(c) / d
        if ratio > 0.0:
            lower = max(lower, 0.5 * math.exp(k * math.log(ratio)) if ratio < 1 else 0.5 * ratio**k)
        m = abs(c)
        if m > 0.0:
            upper_sq += m ** (2 * k) / d ** (2 * (k - 1))
    return lower, 0.5 * math.sqrt(upper_sq)


@dataclass(frozen=True)
class EpsilonVector:
    """0/1 limit data: one flag per coordinate character plus one for Xhat."""

    n: int
    abelian: frozenset[tuple[int, int]]
    xhat: int

    def describe(self) -> dict:
        return {"abelian": sorted(self.abelian), "xhat": self.xhat}


def epsilon_to_element(eps: EpsilonVector) -> AlgebraElement:
    """Limit of the dual walk as an element of C(KP_n).

    Pointwise powers converge coordinatewise, so the limit is the 0/1
    element supported on the reflected flags, with matrix part 0 or the
    identity.  It is a central idempotent of the pointwise algebra.
    """
    n = eps.n
    ab = np.zeros((n, n), dtype=np.complex128)
    for i, j in eps.abelian:
        ab[(-i) % n, (-j) % n] = 1.0
    mat = float(eps.xhat) * np.eye(n, dtype=np.complex128)
    return AlgebraElement(AlgebraShape.sekine(n), ab.reshape(-1), mat)


def is_pointwise_central_idempotent(x: AlgebraElement, tol: float = DEFAULT_TOL) -> bool:
    """Idempotent for the pointwise product and central in that algebra."""
    sq = x * x
    if not sq.allclose(x, tol):
        return False
    m = x.matrix
    scalar = m[0, 0] if x.shape.matrix_dim else 0.0
    return bool(np.abs(m - scalar * np.eye(x.shape.matrix_dim)).max() <= tol)


@dataclass(frozen=True)
class DualClassification:
    kind: str  # "haar" | "idempotent" | "diverges"
    epsilon: EpsilonVector | None = None


def dual_classify(a: DualCentralElement, tol: float = DEFAULT_TOL) -> DualClassification:
    """Limit of the dual walk from the coefficient-to-dimension gaps."""
    _require_dual_state(a, tol)
    n = a.n
    above = False
    hits: set[DualKey] = set()
    for key, c in a.coeffs.items():
        if key == (0, 0):
            continue
        d = a.dimension(key)
        val = complex(c).real
        if val > d + tol:
            above = True
        elif abs(val - d) <= tol:
            hits.add(key)
    if above:
        return DualClassification("diverges")
    if not hits:
        return DualClassification("haar")
    abelian = {key for key in hits if key != XHAT}
    abelian.add((0, 0))
    eps = EpsilonVector(n, frozenset(abelian), 1 if XHAT in hits else 0)
    return DualClassification("idempotent", eps)
