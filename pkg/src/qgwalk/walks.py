"""Convolution powers of central states on KP_n and their asymptotics.

The k-th convolution power of a = sum a_alpha chi_alpha has coefficients
a_alpha^k / d_alpha^(k-1), so the whole walk is driven by the ratios
a_alpha / d_alpha.  A walk converges when every nontrivial ratio lies in
the open unit disc or equals 1; the limit is then read off from the
coefficients that sit exactly at 1, and reconstructed as one of the
central idempotent states.  Ratios on the unit circle away from 1 force
divergence, cyclic when the angles are commensurable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    l1_norm,
    qtv_distance,
    unit,
)
from .idempotents import (
    HaarSpec,
    HGammaLSpec,
    HGammaLTauSpec,
    HGammaSpec,
    IdempotentSpec,
    build_idempotent,
    has_reflection_symmetry,
    is_subgroup,
)
from .sekine import (
    CentralElement,
    IrrepLabel,
    central_to_element,
    rho_plus,
    trivial_label,
    validate_state,
)

MAX_POWER = 10**6


class NotAStateError(ValueError):
    """The driving coefficients do not define a state."""


class AmbiguousBoundaryError(RuntimeError):
    """A ratio sits too close to the unit circle to classify reliably."""


def _require_state(a: CentralElement, tol: float = DEFAULT_TOL) -> None:
    report = validate_state(a, tol)
    if not report.is_state:
        raise NotAStateError(f"not a state: {report.failures}")


def _power_coefficient(c: complex, d: int, k: int, n: int) -> complex:
    """c^k / d^(k-1), stable for large k.

    Coefficients that are exactly d times an n-th root of unity are
    powered by index arithmetic so boundary cases stay exact.
    """
    c = complex(c)
    if c == 0.0:
        return 0.0
    r = abs(c) / d
    theta = math.atan2(c.imag, c.real)
    p = round(theta * n / (2.0 * math.pi))
    root = d * complex(math.cos(2.0 * math.pi * p / n), math.sin(2.0 * math.pi * p / n))
    if abs(c - root) <= 1e-12 * d:
        ang = 2.0 * math.pi * ((p * k) % n) / n
        return d * complex(math.cos(ang), math.sin(ang))
    mag = d * math.exp(k * math.log(r)) if r > 0 else 0.0
    ang = math.fmod(k * theta, 2.0 * math.pi)
    return mag * complex(math.cos(ang), math.sin(ang))


def convolution_power(a: CentralElement, k: int) -> CentralElement:
    """Coefficients of the k-th convolution power."""
    if k < 1 or k > MAX_POWER:
        raise ValueError(f"k must lie in 1..{MAX_POWER}")
    if k == 1:
        return a
    coeffs = {
        label: _power_coefficient(c, label.dim, k, a.n)
        for label, c in a.coeffs.items()
    }
    return CentralElement(a.n, {l: c for l, c in coeffs.items() if c != 0.0})


def qtv_to_haar(a: CentralElement, k: int, tol: float = DEFAULT_TOL) -> float:
    """Exact total variation distance of the k-th power to the Haar state."""
    _require_state(a, tol)
    x = central_to_element(convolution_power(a, k))
    return qtv_distance(x, unit(x.shape))


def _nontrivial_ratios(a: CentralElement) -> dict[IrrepLabel, complex]:
    out = {}
    for label, c in a.coeffs.items():
        if label != trivial_label():
            out[label] = complex(c) / label.dim
    return out


def _ds_upper(a: CentralElement, k: int) -> float:
    total = 0.0
    for label, c in a.coeffs.items():
        if label == trivial_label():
            continue
        m = abs(c)
        if m == 0.0:
            continue
        if label.dim == 1:
            total += 0.25 * m ** (2 * k)
        else:
            total += math.exp(2.0 * k * math.log(m / 2.0))
    return math.sqrt(total)


def _ds_lower(a: CentralElement, k: int) -> float:
    ratios = _nontrivial_ratios(a)
    m = max((abs(r) for r in ratios.values()), default=0.0)
    if m == 0.0:
        return 0.0
    return 0.5 * math.exp(k * math.log(m)) if m < 1.0 else 0.5 * m**k


def ds_upper_bound(a: CentralElement, k: int, tol: float = DEFAULT_TOL) -> float:
    """Upper mixing bound: sqrt of the weighted power sums of |a_alpha|."""
    _require_state(a, tol)
    return _ds_upper(a, k)


def ds_lower_bound(a: CentralElement, k: int, tol: float = DEFAULT_TOL) -> float:
    """Lower mixing bound: half the k-th power of the largest ratio."""
    _require_state(a, tol)
    return _ds_lower(a, k)


@dataclass(frozen=True)
class LabelEvidence:
    """Position of one coefficient ratio relative to the unit circle."""

    label: IrrepLabel
    ratio_modulus: float
    equals_one: bool
    on_circle: bool


@dataclass(frozen=True)
class LimitClassification:
    """Asymptotic behaviour of the walk driven by a central state."""

    kind: str  # "haar" | "idempotent" | "diverges"
    spec: IdempotentSpec | None = None
    period: int | None = None
    branch: str = ""
    evidence: list[LabelEvidence] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def _evidence(a: CentralElement, tol: float) -> list[LabelEvidence]:
    out = []
    for label in sorted(a.coeffs):
        if label == trivial_label():
            continue
        r = a.coefficient(label) / label.dim
        on_circle = abs(abs(r) - 1.0) <= tol
        out.append(LabelEvidence(label, abs(r), on_circle and abs(r - 1.0) <= tol, on_circle))
    return out


def _limit_element(a: CentralElement, tol: float) -> CentralElement:
    """Coefficient map of lim a^(*k): d_alpha where the ratio is 1, else 0."""
    coeffs = {}
    for label, c in a.coeffs.items():
        if abs(c / label.dim - 1.0) <= tol:
            coeffs[label] = complex(label.dim)
    return CentralElement(a.n, coeffs)


def _recognize_idempotent(limit: CentralElement, tol: float = 1e-8) -> IdempotentSpec:
    """Match a limit element against the idempotent-state normal forms."""
    n = limit.n
    x = central_to_element(limit)
    ab = x.abelian.reshape(n, n).real
    mat = x.matrix
    peak = ab.max()
    support = {(i, j) for i in range(n) for j in range(n) if ab[i, j] > 0.5 * peak}
    if np.abs(mat).max() <= tol:
        if not is_subgroup(n, support):
            raise AmbiguousBoundaryError("limit support is not a subgroup")
        if not has_reflection_symmetry(n, support):
            raise AmbiguousBoundaryError("limit support lacks reflection symmetry")
        spec: IdempotentSpec = HGammaSpec(frozenset(support))
    else:
        i_support = sorted({i for i, _ in support})
        j_support = sorted({j for _, j in support})
        q = n // len(j_support)
        diag_rows = [m for m in range(1, n + 1) if abs(mat[m - 1, m - 1]) > tol]
        residues = {m % q for m in diag_rows}
        if len(residues) != 1:
            raise AmbiguousBoundaryError("diagonal support has no single residue")
        l = residues.pop()
        if i_support == list(range(n)):
            spec = HGammaLSpec(q, l)
        else:
            p = n // len(i_support)
            base = diag_rows[0] - 1  # 0-based row; tau read off its band values
            tau = tuple(
                int(round((mat[base, (base + t * q) % n] / q).real)) for t in range(n // q)
            )
            spec = HGammaLTauSpec(p, q, l, tau)
    rebuilt = build_idempotent(spec, n)
    if l1_norm(rebuilt - x) > 1e-6:
        raise AmbiguousBoundaryError(f"reconstructed {spec} does not match the limit")
    return spec


def _branch_name(a: CentralElement, spec: IdempotentSpec, tol: float) -> str:
    even = a.n % 2 == 0
    if isinstance(spec, HGammaSpec):
        return "even:rho-paired" if even else "odd:rho-paired"
    if isinstance(spec, HGammaLSpec):
        return "even:sigma-split-q2"
    if isinstance(spec, HGammaLTauSpec):
        if spec.q == 1:
            return "even:plus-only" if even else "odd:plus-only"
        return "even:sigma-pair-q2"
    return "haar"


def detect_cycle(
    a: CentralElement,
    max_period: int = 16,
    tol: float = 1e-8,
) -> int | None:
    """Smallest asymptotic period of the coefficient powers.

    Burn-in starts at max_period steps and is extended until the
    checked bound on the transient part falls below the tolerance.
    """
    _require_state(a)
    ratios = _nontrivial_ratios(a)
    transient = [abs(r) for r in ratios.values() if abs(r) < 1.0 - 1e-12]
    burn = max_period
    m = max(transient, default=0.0)
    if m > 0.0:
        needed = math.ceil(math.log(tol / 10.0) / math.log(m))
        burn = max(burn, needed)
    if burn > MAX_POWER:
        return None
    base = convolution_power(a, burn)
    x0 = central_to_element(base)
    for p in range(1, max_period + 1):
        xp = central_to_element(convolution_power(a, burn + p))
        if l1_norm(xp - x0) <= tol:
            return p
    return None


def classify_limit(
    a: CentralElement, tol: float = DEFAULT_TOL, max_period: int | None = None
) -> LimitClassification:
    """Decide convergence and identify the limit state if one exists."""
    _require_state(a, tol)
    evidence = _evidence(a, tol)
    notes: list[str] = []
    if a.n == 2 and any(e.label.kind.startswith("sigma") for e in evidence):
        notes.append("n=2: sigma indices are taken mod 2, so sigma_2 denotes sigma_0")
    for e in evidence:
        if not e.on_circle and abs(e.ratio_modulus - 1.0) <= 10.0 * tol:
            raise AmbiguousBoundaryError(
                f"{e.label}: ratio modulus {e.ratio_modulus!r} is too close to the circle"
            )
    divergent = [e for e in evidence if e.on_circle and not e.equals_one]
    if divergent:
        period = detect_cycle(a, max_period=max_period or max(2 * a.n, 16))
        return LimitClassification(
            "diverges", period=period, branch="boundary-divergence", evidence=evidence, notes=notes
        )
    boundary = [e for e in evidence if e.equals_one]
    if not boundary:
        return LimitClassification("haar", spec=HaarSpec(), branch="haar", evidence=evidence, notes=notes)
    limit = _limit_element(a, tol)
    spec = _recognize_idempotent(limit)
    return LimitClassification(
        "idempotent",
        spec=spec,
        branch=_branch_name(a, spec, tol),
        evidence=evidence,
        notes=notes,
    )


def cutoff_state(n: int) -> CentralElement:
    """The cosine-coefficient state a_{rho_l^+} = cos(2 pi l / n), odd n.

    For even n the coefficient at l = n/2 would be -1 and the walk
    would not converge to the Haar state, so even n is rejected.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("the cosine walk requires odd n >= 3")
    coeffs = {rho_plus(l): complex(math.cos(2.0 * math.pi * l / n)) for l in range(n)}
    return CentralElement(n, coeffs)


def cutoff_bounds(n: int, k: int) -> tuple[float, float, float]:
    """(lower, sharp upper, threshold upper) for the cosine walk.

    The lower bound and the sharp upper bound hold at every step; the
    simple exponential upper bound is certified for k >= n^2.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("the cosine walk requires odd n >= 3")
    if k < 1:
        raise ValueError("k must be positive")
    pi2 = math.pi**2
    lower = 0.5 * math.exp(-k * (pi2 / (2.0 * n * n) + math.pi**4 / (4.0 * n**4)))
    ratio = math.exp(-k * pi2 / (n * n))
    upper_sharp = math.sqrt(ratio / (2.0 * (1.0 - math.exp(-3.0 * k * pi2 / (n * n)))))
    upper_theorem = math.exp(-k * pi2 / (2.0 * n * n))
    return lower, upper_sharp, upper_theorem


@dataclass(frozen=True)
class WalkStep:
    k: int
    qtv: float
    lower: float
    upper: float


@dataclass(frozen=True)
class WalkReport:
    """Per-step distances plus the final classification of a walk."""

    n: int
    steps: list[WalkStep]
    classification: LimitClassification
    cycle: int | None = None


CLAMP = 1e-15


class _PowerEngine:
    """Vectorized convolution powers and distances for one driving state.

    Coefficients are held as dense per-kind arrays; ratios on the unit
    circle at stored root-of-unity angles are powered by index
    arithmetic, everything else in polar form.
    """

    def __init__(self, a: CentralElement):
        from .sekine import _coeff_arrays, _element_arrays

        self.n = a.n
        self._build = _element_arrays
        arrays = _coeff_arrays(a)
        self.parts = []
        for c, d in zip(arrays, (1.0, 1.0, 1.0, 1.0, 2.0)):
            ratio = np.asarray(c, dtype=np.complex128) / d
            absr = np.abs(ratio)
            theta = np.angle(ratio)
            with np.errstate(divide="ignore"):
                logr = np.where(absr > 0, np.log(np.where(absr > 0, absr, 1.0)), -np.inf)
            p = np.round(theta * self.n / (2.0 * np.pi)).astype(int) % self.n
            root = np.exp(2j * np.pi * p / self.n)
            exact = np.abs(ratio - root) <= 1e-12
            self.parts.append((d, absr, theta, logr, p, exact))
        # moduli of the nontrivial coefficients, for the mixing bounds
        one_dim = []
        for c in arrays[:4]:
            one_dim.append(np.abs(np.asarray(c)))
        one_dim[0] = one_dim[0].copy()
        one_dim[0][0] = 0.0  # drop the trivial representation
        self.one_dim_mods = np.concatenate([m[m > 0] for m in one_dim])
        x_mods = np.abs(arrays[4])
        self.two_dim_mods = x_mods[x_mods > 0]
        ratios = np.concatenate([self.one_dim_mods, self.two_dim_mods / 2.0])
        self.max_ratio = float(ratios.max()) if ratios.size else 0.0

    def _powered(self, k: int):
        out = []
        for d, absr, theta, logr, p, exact in self.parts:
            with np.errstate(over="ignore"):
                mag = np.where(np.isneginf(logr), 0.0, np.exp(k * logr))
            generic = mag * np.exp(1j * (k * theta))
            exact_val = np.exp(2j * np.pi * ((p * k) % self.n) / self.n)
            out.append(d * np.where(exact, exact_val, generic))
        return out

    def element(self, k: int):
        return self._build(self.n, *self._powered(k))

    def qtv(self, k: int) -> float:
        ab, mat = self.element(k)
        n = self.n
        total = np.abs(ab - 1.0).sum() / (2.0 * n * n)
        total += np.linalg.svd(mat - np.eye(n), compute_uv=False).sum() / (2.0 * n)
        return 0.5 * float(total)

    def lower(self, k: int) -> float:
        m = self.max_ratio
        if m == 0.0:
            return 0.0
        return 0.5 * math.exp(k * math.log(m)) if m < 1.0 else 0.5 * m**k

    def upper(self, k: int) -> float:
        total = 0.0
        if self.one_dim_mods.size:
            total += 0.25 * (self.one_dim_mods ** (2 * k)).sum()
        if self.two_dim_mods.size:
            total += ((self.two_dim_mods / 2.0) ** (2 * k)).sum()
        return math.sqrt(float(total))


def walk_trace(
    a: CentralElement,
    k_max: int,
    tol: float = DEFAULT_TOL,
    max_period: int | None = None,
) -> WalkReport:
    """Record exact distance and both bounds for k = 1..k_max."""
    _require_state(a, tol)
    engine = _PowerEngine(a)
    steps = []
    for k in range(1, k_max + 1):
        q = engine.qtv(k)
        lo = engine.lower(k)
        up = engine.upper(k)
        steps.append(
            WalkStep(
                k,
                q if q > CLAMP else 0.0,
                lo if lo > CLAMP else 0.0,
                up if up > CLAMP else 0.0,
            )
        )
    classification = classify_limit(a, tol, max_period=max_period)
    cycle = None
    if classification.kind == "diverges":
        cycle = classification.period
    return WalkReport(a.n, steps, classification, cycle)
