"""Idempotent states on KP_n and their Fourier characterizations.

Four families: the Haar state; h_Gamma attached to a subgroup Gamma of
Z_n x Z_n (zero matrix part); h_(q,l) attached to a divisor q > 1 of n
and a residue l, supported on Z_n x qZ_n with a diagonal matrix part;
and h_(p,q,l,tau) with pq = n, p > 1, supported on pZ_n x qZ_n with a
sign-twisted matrix part.  The sign vector tau lives on qZ_n and must
have a nonnegative discrete Fourier transform, which is exactly the
condition for the matrix part to be positive semi-definite; the only
solutions are the constant vector and, for even length, the alternating
one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    AlgebraElement,
    AlgebraShape,
    haar_integral,
    is_positive,
    unit,
)
from .sekine import (
    FourierProfile,
    block_v_range,
    fourier_profile,
    genuine_x_range,
)


class InvalidSpecError(ValueError):
    """Parameters do not describe an idempotent state."""


@dataclass(frozen=True)
class HaarSpec:
    def describe(self) -> dict:
        return {"type": "haar"}

    def __str__(self) -> str:
        return "haar"


@dataclass(frozen=True)
class HGammaSpec:
    """h_Gamma for a subgroup Gamma of Z_n x Z_n, stored by its members."""

    members: frozenset[tuple[int, int]]

    def describe(self) -> dict:
        return {"type": "h_gamma", "gamma": sorted(self.members)}

    def __str__(self) -> str:
        return f"h_gamma[{len(self.members)}]"


@dataclass(frozen=True)
class HGammaLSpec:
    q: int
    l: int

    def describe(self) -> dict:
        return {"type": "h_gamma_l", "q": self.q, "l": self.l}

    def __str__(self) -> str:
        return f"h_gamma_l(q={self.q},l={self.l})"


@dataclass(frozen=True)
class HGammaLTauSpec:
    """h_(p,q,l,tau); tau[t] is the sign at index q*t of qZ_n."""

    p: int
    q: int
    l: int
    tau: tuple[int, ...]

    def describe(self) -> dict:
        return {"type": "h_gamma_l_tau", "p": self.p, "q": self.q, "l": self.l, "tau": list(self.tau)}

    def __str__(self) -> str:
        return f"h_gamma_l_tau(p={self.p},q={self.q},l={self.l},tau={''.join('+' if t > 0 else '-' for t in self.tau)})"


IdempotentSpec = HaarSpec | HGammaSpec | HGammaLSpec | HGammaLTauSpec


def subgroup_from_generators(n: int, generators) -> frozenset[tuple[int, int]]:
    """Closure of a generator list inside Z_n x Z_n."""
    gens = [(int(a) % n, int(b) % n) for a, b in generators]
    members = {(0, 0)}
    changed = True
    while changed:
        changed = False
        for g in gens:
            for a, b in list(members):
                s = ((a + g[0]) % n, (b + g[1]) % n)
                if s not in members:
                    members.add(s)
                    changed = True
    return frozenset(members)


def is_subgroup(n: int, members) -> bool:
    mset = set(members)
    if (0, 0) not in mset:
        return False
    return all(((a + c) % n, (b + d) % n) in mset for a, b in mset for c, d in mset)


def subgroups_znxzn(n: int) -> list[frozenset[tuple[int, int]]]:
    """All subgroups of Z_n x Z_n.

    Subgroups correspond to integer lattices between nZ^2 and Z^2; row
    Hermite forms (a, c), (0, b) with a | n, b | n, 0 <= c < b and
    b | (n/a) c enumerate each exactly once.
    """
    out = []
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    for a in divisors:
        for b in divisors:
            for c in range(b):
                if ((n // a) * c) % b != 0:
                    continue
                members = set()
                for s in range(n // a):
                    for t in range(n // b):
                        members.add(((s * a) % n, (s * c + t * b) % n))
                out.append(frozenset(members))
    return out


def has_reflection_symmetry(n: int, members) -> bool:
    """Closure of Gamma under (k, l) -> (k, -l)."""
    mset = set(members)
    return all((a, (-b) % n) in mset for a, b in mset)


def sign_vector_dft(tau, p: int) -> np.ndarray:
    """DFT of a sign vector on a cyclic group of order p."""
    t = np.asarray(tau, dtype=np.complex128)
    if t.shape != (p,):
        raise InvalidSpecError(f"tau must have length {p}")
    omega = np.exp(2j * np.pi * np.outer(np.arange(p), np.arange(p)) / p)
    return omega @ t


def check_sign_vector(tau, p: int, tol: float = DEFAULT_TOL) -> None:
    """Every DFT value must be real and nonnegative.

    Nonnegativity (rather than strict positivity) is exactly positive
    semi-definiteness of the associated circulant matrix part; the
    constant vector attains zero values and is the basic valid choice.
    """
    if any(t not in (1, -1) for t in tau):
        raise InvalidSpecError("tau entries must be +1 or -1")
    d = sign_vector_dft(tau, p)
    if np.abs(d.imag).max() > tol:
        raise InvalidSpecError("tau has a non-real Fourier value")
    if d.real.min() < -tol:
        raise InvalidSpecError("tau has a negative Fourier value")


def valid_sign_vectors(p: int) -> list[tuple[int, ...]]:
    """All sign vectors of length p with nonnegative DFT.

    By Parseval these are exactly the constant vector and, when p is
    even, the alternating vector; both are validated before returning.
    """
    candidates = [tuple([1] * p)]
    if p % 2 == 0:
        candidates.append(tuple(1 if t % 2 == 0 else -1 for t in range(p)))
    for tau in candidates:
        check_sign_vector(tau, p)
    return candidates


def validate_spec(spec: IdempotentSpec, n: int) -> None:
    if isinstance(spec, HaarSpec):
        return
    if isinstance(spec, HGammaSpec):
        for a, b in spec.members:
            if not (0 <= a < n and 0 <= b < n):
                raise InvalidSpecError(f"member {(a, b)} outside Z_{n} x Z_{n}")
        if not is_subgroup(n, spec.members):
            raise InvalidSpecError("gamma is not a subgroup")
        return
    if isinstance(spec, HGammaLSpec):
        if spec.q <= 1 or n % spec.q != 0:
            raise InvalidSpecError(f"q={spec.q} must be a divisor of n={n} greater than 1")
        if not 0 <= spec.l < spec.q:
            raise InvalidSpecError(f"l={spec.l} outside Z_{spec.q}")
        return
    if isinstance(spec, HGammaLTauSpec):
        if spec.p <= 1 or spec.p * spec.q != n:
            raise InvalidSpecError(f"need p > 1 and p*q = n, got p={spec.p}, q={spec.q}, n={n}")
        if not 0 <= spec.l < spec.q:
            raise InvalidSpecError(f"l={spec.l} outside Z_{spec.q}")
        check_sign_vector(spec.tau, spec.p)
        return
    raise InvalidSpecError(f"unknown spec {spec!r}")


def build_idempotent(spec: IdempotentSpec, n: int) -> AlgebraElement:
    """The element of C(KP_n) whose Fourier transform is the idempotent state."""
    validate_spec(spec, n)
    shape = AlgebraShape.sekine(n)
    if isinstance(spec, HaarSpec):
        return unit(shape)
    ab = np.zeros((n, n), dtype=np.complex128)
    mat = np.zeros((n, n), dtype=np.complex128)
    if isinstance(spec, HGammaSpec):
        scale = 2.0 * n * n / len(spec.members)
        for a, b in spec.members:
            ab[a, b] = scale
        return AlgebraElement(shape, ab.reshape(-1), mat)
    if isinstance(spec, HGammaLSpec):
        q = spec.q
        ab[:, ::q] = float(q)  # support Z_n x qZ_n, weight n^2 / #Gamma = q
        for m in range(1, n + 1):  # diagonal entries q at rows m = l mod q
            if m % q == spec.l % q:
                mat[m - 1, m - 1] = float(q)
        return AlgebraElement(shape, ab.reshape(-1), mat)
    p, q, l = spec.p, spec.q, spec.l
    ab[::p, ::q] = float(n)  # support pZ_n x qZ_n, weight n^2 / #Gamma = n
    rows = [m for m in range(1, n + 1) if m % q == l % q]
    for i in rows:
        for j in rows:
            t = ((j - i) % n) // q
            mat[i - 1, j - 1] = q * spec.tau[t]
    return AlgebraElement(shape, ab.reshape(-1), mat)


def idempotent_profile(spec: IdempotentSpec, n: int) -> FourierProfile:
    """Closed-form Fourier profile for the diagonal-supported families.

    h_(q,l): block (u, v) equals [[1, eta^(lv)], [eta^(-lv), 1]] / 2 when
    u = 0 and (n/q) | v, zero otherwise.  h_(p,q,l,tau) carries the same
    form with an extra sign tau_(-u) when q | u and p | v.
    """
    validate_spec(spec, n)
    if not isinstance(spec, (HGammaLSpec, HGammaLTauSpec)):
        raise InvalidSpecError("closed-form profile exists for the diagonal families only")
    eta = np.exp(2j * np.pi / n)
    zero2 = np.zeros((2, 2), dtype=np.complex128)
    blocks: dict[tuple[int, int], np.ndarray] = {}
    if isinstance(spec, HGammaLSpec):
        q, l = spec.q, spec.l
        p = n // q
        for u in range(n):
            for v in block_v_range(n):
                if u == 0 and v % p == 0:
                    w = eta ** ((l * v) % n)
                    blocks[(u, v)] = 0.5 * np.array([[1.0, w], [np.conj(w), 1.0]])
                else:
                    blocks[(u, v)] = zero2.copy()
    else:
        p, q, l = spec.p, spec.q, spec.l
        for u in range(n):
            for v in block_v_range(n):
                if u % q == 0 and v % p == 0:
                    s = spec.tau[((-u) % n) // q]
                    w = eta ** ((l * v) % n)
                    blocks[(u, v)] = 0.5 * np.array([[1.0, s * w], [s * np.conj(w), 1.0]])
                else:
                    blocks[(u, v)] = zero2.copy()
    reference = fourier_profile(build_idempotent(spec, n))
    return FourierProfile(n, blocks, dict(reference.scalars))


def _profile_pieces(x: AlgebraElement, group: str):
    """Matrices of the Fourier profile of x over genuine irreducibles.

    The 8-dimensional algebra underlies two distinct quantum groups, so
    the group must be named: "kpn" reads the shape as C(KP_n) with
    n = matrix_dim, "kp" as the Kac-Paljutkin group.
    """
    if group == "kp":
        from .kp8 import KP_SHAPE, kp_fourier_profile

        if x.shape != KP_SHAPE:
            raise ValueError("element does not live in C(KP)")
        prof = kp_fourier_profile(x)
        mats = [np.array([[prof.values[k]]]) for k in sorted(prof.values)]
        mats.append(prof.xblock)
        return mats
    if group == "kpn":
        m = x.shape.matrix_dim
        if x.shape != AlgebraShape.sekine(m):
            raise ValueError("element does not live in C(KP_n)")
        prof = fourier_profile(x)
        mats = [np.array([[prof.scalars[label]]]) for label in sorted(prof.scalars)]
        mats += [prof.blocks[(u, v)] for u in range(m) for v in genuine_x_range(m)]
        return mats
    raise ValueError(f"unknown group {group!r}")


def is_idempotent_state(x: AlgebraElement, tol: float = DEFAULT_TOL, group: str = "kpn") -> bool:
    """Blockwise projector profile, unit normalization, positivity."""
    if abs(haar_integral(x) - 1.0) > tol:
        return False
    if not is_positive(x, tol):
        return False
    return all(np.abs(m @ m - m).max() <= tol for m in _profile_pieces(x, group))


def _random_element(shape: AlgebraShape, rng: np.random.Generator) -> AlgebraElement:
    d, m = shape.abelian_dim, shape.matrix_dim
    ab = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    mat = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return AlgebraElement(shape, ab, mat)


def is_central_functional(
    x: AlgebraElement,
    trials: int = 50,
    tol: float = DEFAULT_TOL,
    rng: np.random.Generator | None = None,
    group: str = "kpn",
) -> bool:
    """Probe blockwise commutation of F(x) against random functionals."""
    if rng is None:
        rng = np.random.default_rng(0)
    mats_x = _profile_pieces(x, group)
    for _ in range(trials):
        y = _random_element(x.shape, rng)
        for mx, my in zip(mats_x, _profile_pieces(y, group)):
            scale = 1.0 + np.abs(mx).max() * np.abs(my).max()
            if np.abs(mx @ my - my @ mx).max() > tol * scale:
                return False
    return True


def enumerate_central_idempotents(
    n: int,
    cap: int = 24,
    tol: float = DEFAULT_TOL,
    trials: int = 20,
) -> list[IdempotentSpec]:
    """All idempotent-state parameters whose functional is central.

    Enumerates every candidate of the four families, filters by the
    numeric centrality probe, and deduplicates by the canonical element.
    """
    if n > cap:
        raise ValueError(f"n={n} exceeds enumeration cap {cap}")
    rng = np.random.default_rng(12345)
    candidates: list[IdempotentSpec] = [HaarSpec()]
    candidates += [HGammaSpec(members) for members in subgroups_znxzn(n)]
    for q in range(2, n + 1):
        if n % q == 0:
            candidates += [HGammaLSpec(q, l) for l in range(q)]
    for q in range(1, n):
        if n % q == 0 and n // q > 1:
            p = n // q
            for tau in valid_sign_vectors(p):
                candidates += [HGammaLTauSpec(p, q, l, tau) for l in range(q)]

    out: list[IdempotentSpec] = []
    seen: set[bytes] = set()
    for spec in candidates:
        x = build_idempotent(spec, n)
        if not is_idempotent_state(x, tol=max(tol, 1e-10)):
            continue
        if not is_central_functional(x, trials=trials, tol=max(tol, 1e-9), rng=rng):
            continue
        key = np.round(np.concatenate([x.abelian, x.matrix.reshape(-1)]), 8).tobytes()
        if key in seen:
            continue
        seen.add(key)
        out.append(spec)
    return out
