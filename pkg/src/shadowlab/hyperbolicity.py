"""Periodic points, hyperbolicity classification, and expansion certificates.

Periodic points of a toral automorphism are lattice points of (A^n - I) and
are enumerated exactly over the rationals — no floating-point root search can
miss one.  Classification is an eigenvalue-modulus test with an explicit
tolerance band around 1; anything inside the band counts as nonhyperbolic,
which is the conservative call in the regime where neutral directions matter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import TorusPoint, reduce_to_unit, torus_dist, wrap_to_half
from .systems import LinearAutomorphism, SystemMap

__all__ = [
    "PeriodicPointRecord",
    "AnosovCertificate",
    "ConeReport",
    "periodic_points_linear",
    "classify_periodic",
    "refine_periodic",
    "anosov_certificate_linear",
    "cone_criterion",
]

HYPERBOLICITY_TOL = 1e-9


@dataclass(frozen=True)
class PeriodicPointRecord:
    point: TorusPoint
    period: int
    eigenvalues: tuple[complex, complex]
    classification: str  # "hyperbolic" | "nonhyperbolic"

    def to_record(self) -> dict:
        return {
            "point": [float(v) for v in self.point.coords],
            "period": self.period,
            "eigenvalues": [[ev.real, ev.imag] for ev in self.eigenvalues],
            "classification": self.classification,
        }


@dataclass(frozen=True)
class AnosovCertificate:
    """Uniform splitting data for a linear map: rate, constant, eigendirections."""

    rate: float          # the lambda of the decay inequalities, in (0, 1)
    C: float             # eigenbasis condition number in the Euclidean norm
    stable: tuple[float, float]
    unstable: tuple[float, float]

    def to_record(self) -> dict:
        return {
            "lambda": self.rate,
            "C": self.C,
            "stable": list(self.stable),
            "unstable": list(self.unstable),
        }


def _mat2_int(A) -> list[list[int]]:
    aut = A if isinstance(A, LinearAutomorphism) else LinearAutomorphism(A)
    return [[int(aut.matrix[0, 0]), int(aut.matrix[0, 1])],
            [int(aut.matrix[1, 0]), int(aut.matrix[1, 1])]]


def _mat2_mul(P, Q):
    return [[P[0][0] * Q[0][0] + P[0][1] * Q[1][0], P[0][0] * Q[0][1] + P[0][1] * Q[1][1]],
            [P[1][0] * Q[0][0] + P[1][1] * Q[1][0], P[1][0] * Q[0][1] + P[1][1] * Q[1][1]]]


def _mat2_pow(P, n: int):
    R = [[1, 0], [0, 1]]
    for _ in range(n):
        R = _mat2_mul(R, P)
    return R


def _classify_moduli(eigs, tol: float) -> str:
    if all(abs(abs(ev) - 1.0) > tol for ev in eigs):
        return "hyperbolic"
    return "nonhyperbolic"


def periodic_points_linear(A, n: int) -> list[PeriodicPointRecord]:
    """All points of period dividing n for the automorphism A, enumerated exactly.

    Solutions of (A^n - I)x = 0 mod Z^2 form a lattice of exactly
    |det(A^n - I)| points; they are produced as exact rationals p/|D| via the
    integer adjugate, so the count is structural, not numerical.  Each record
    carries the minimal period (computed by exact iteration on numerators) and
    the eigenvalue classification of A^period.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    Aint = _mat2_int(A)
    An = _mat2_pow(Aint, n)
    M = [[An[0][0] - 1, An[0][1]], [An[1][0], An[1][1] - 1]]
    D = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if D == 0:
        raise ValueError("non-isolated periodic set: det(A^n - I) = 0")
    aD = abs(D)
    sgn = 1 if D > 0 else -1
    adj = [[M[1][1], -M[0][1]], [-M[1][0], M[0][0]]]

    # x = M^{-1} m = adj(M) m / D; enumerating m over a residue system mod aD
    # yields every numerator pair exactly once.
    found: set[tuple[int, int]] = set()
    for m0 in range(aD):
        for m1 in range(aD):
            p = (sgn * (adj[0][0] * m0 + adj[0][1] * m1)) % aD
            q = (sgn * (adj[1][0] * m0 + adj[1][1] * m1)) % aD
            found.add((p, q))
    if len(found) != aD:
        raise AssertionError(f"enumeration produced {len(found)} points, expected {aD}")

    records = []
    for p, q in sorted(found):
        period = _minimal_period_numerators(Aint, (p, q), aD, n)
        Ap = _mat2_pow(Aint, period)
        eigs = np.linalg.eigvals(np.array(Ap, dtype=float))
        records.append(
            PeriodicPointRecord(
                point=TorusPoint((p / aD, q / aD)),
                period=period,
                eigenvalues=(complex(eigs[0]), complex(eigs[1])),
                classification=_classify_moduli(eigs, HYPERBOLICITY_TOL),
            )
        )
    return records


def _minimal_period_numerators(Aint, num: tuple[int, int], den: int, n: int) -> int:
    p, q = num
    cp, cq = p, q
    for k in range(1, n + 1):
        cp, cq = (Aint[0][0] * cp + Aint[0][1] * cq) % den, (Aint[1][0] * cp + Aint[1][1] * cq) % den
        if (cp, cq) == (p, q):
            if n % k != 0:
                raise AssertionError(f"first return {k} does not divide {n}")
            return k
    raise AssertionError("point failed to return within n steps")


def classify_periodic(f: SystemMap, p, n: int, tol: float = HYPERBOLICITY_TOL) -> PeriodicPointRecord:
    """Eigenvalue classification of Df over one minimal period at a verified periodic point."""
    if n < 1:
        raise ValueError("n must be at least 1")
    pt = p if isinstance(p, TorusPoint) else TorusPoint.from_array(np.asarray(p, dtype=float))
    orbit = [pt.as_array()]
    for _ in range(n):
        orbit.append(f.forward(orbit[-1]))
    if torus_dist(TorusPoint.from_array(orbit[n]), pt) > 1e-9:
        raise ValueError(f"point {pt} is not {n}-periodic under {f.label}")

    period = n
    for k in range(1, n):
        if torus_dist(TorusPoint.from_array(orbit[k]), pt) <= 1e-9:
            period = k
            break

    J = np.eye(f.dim)
    for k in range(period):
        J = np.asarray(f.differential(orbit[k]), dtype=float) @ J
    eigs = np.linalg.eigvals(J)
    if f.dim == 1:
        eig_pair = (complex(eigs[0]), complex(eigs[0]))
    else:
        eig_pair = (complex(eigs[0]), complex(eigs[1]))
    return PeriodicPointRecord(
        point=pt,
        period=period,
        eigenvalues=eig_pair,
        classification=_classify_moduli(eigs, tol),
    )


def refine_periodic(f: SystemMap, seed, n: int, tol: float = 1e-12, max_iter: int = 50) -> TorusPoint:
    """Newton-polish an approximate n-periodic point (used around linear-model seeds)."""
    z = seed.as_array() if isinstance(seed, TorusPoint) else np.asarray(seed, dtype=float).copy()
    for _ in range(max_iter):
        w = z
        J = np.eye(f.dim)
        for _ in range(n):
            J = np.asarray(f.differential(w), dtype=float) @ J
            w = f.forward(w)
        r = wrap_to_half(w - z)
        if float(np.linalg.norm(r)) <= tol:
            return TorusPoint.from_array(z)
        try:
            step = np.linalg.solve(J - np.eye(f.dim), -r)
        except np.linalg.LinAlgError as exc:
            raise ValueError("degenerate linearization: cannot refine a neutral periodic point") from exc
        z = reduce_to_unit(z + step)
    raise ValueError(f"no convergence within {max_iter} Newton steps")


def anosov_certificate_linear(A) -> AnosovCertificate | None:
    """Expansion/contraction certificate for a linear automorphism, or None.

    None is the defined negative outcome (some eigenvalue modulus within
    1e-12 of 1), not an error.  For a granted certificate the decay
    inequalities ||A^n v_s|| <= C lambda^n and ||A^{-n} v_u|| <= C lambda^n
    are re-verified for n = 1..20 before it is returned.
    """
    aut = A if isinstance(A, LinearAutomorphism) else LinearAutomorphism(A)
    Af = aut.matrix.astype(float)
    w, V = np.linalg.eig(Af)
    if np.iscomplexobj(w) and np.abs(w.imag).max() > 1e-12:
        return None  # complex pair on the unit circle (|det| = 1)
    w = w.real
    V = V.real
    if np.any(np.abs(np.abs(w) - 1.0) <= 1e-12):
        return None

    order = np.argsort(-np.abs(w))
    w = w[order]
    V = V[:, order]
    for j in range(2):
        col = V[:, j] / np.linalg.norm(V[:, j])
        lead = col[np.nonzero(np.abs(col) > 1e-14)[0][0]]
        V[:, j] = col if lead > 0 else -col
    lam_u, lam_s = float(w[0]), float(w[1])
    rate = max(abs(lam_s), 1.0 / abs(lam_u))
    C = float(np.linalg.cond(V))

    # Re-verify before granting.  The eigenpair residuals certify that the
    # spaces really are invariant lines; on a verified line the restriction of
    # A^n has norm exactly |lambda|^n, so the long-horizon inequalities are
    # checked on eigenvalue powers.  (Iterating the stable vector through the
    # matrix instead would drown in unstable float contamination ~|lam_u|^n
    # * 1e-16, which overtakes |lam_s|^n itself near n = 20 -- the very
    # divergence this package measures.)
    v_u, v_s = V[:, 0], V[:, 1]
    Ainv = aut.inverse_matrix().astype(float)
    if np.linalg.norm(Af @ v_s - lam_s * v_s) > 1e-12:
        raise AssertionError("stable direction is not invariant")
    if np.linalg.norm(Ainv @ v_u - v_u / lam_u) > 1e-12:
        raise AssertionError("unstable direction is not invariant")
    Mn, Mi = np.eye(2), np.eye(2)
    for k in range(1, 21):
        if abs(lam_s) ** k > C * rate ** k + 1e-9:
            raise AssertionError(f"stable decay inequality violated at n={k}")
        if abs(lam_u) ** -k > C * rate ** k + 1e-9:
            raise AssertionError(f"unstable decay inequality violated at n={k}")
        if k <= 8:  # matrix powers stay trustworthy while |lam_u|^k * 1e-16 << 1e-9
            Mn = Mn @ Af
            Mi = Mi @ Ainv
            if np.linalg.norm(Mn @ v_s) > C * rate ** k + 1e-9:
                raise AssertionError(f"stable decay inequality violated at n={k}")
            if np.linalg.norm(Mi @ v_u) > C * rate ** k + 1e-9:
                raise AssertionError(f"unstable decay inequality violated at n={k}")

    return AnosovCertificate(
        rate=rate,
        C=C,
        stable=(float(v_s[0]), float(v_s[1])),
        unstable=(float(v_u[0]), float(v_u[1])),
    )


@dataclass(frozen=True)
class ConeReport:
    """Outcome of the invariant-cone check; truthy iff both cone conditions hold."""

    ok: bool
    expansion: float    # worst growth factor of unstable-cone vectors under Df
    contraction: float  # worst growth factor of stable-cone vectors under Df^{-1}
    margin: float       # opening minus the widest image slope (positive = strictly inside)

    def __bool__(self) -> bool:
        return self.ok


def cone_criterion(f: SystemMap, opening: float = 0.2, grid: int = 64, iterations: int = 1) -> ConeReport:
    """Check that Df maps the unstable cone strictly into itself with expansion > 1
    (and Df^{-1} the stable cone), over a grid of base points.

    Cones are slope bands around the eigendirections of the map's reference
    linear model.  False is a verdict, not an error: neutral maps simply have
    no expanding cone.
    """
    if f.dim != 2:
        raise ValueError("cone fields are defined on the 2-torus only")
    if not 0.0 < opening < 1.0:
        raise ValueError("opening must lie in (0, 1)")
    if grid < 1 or iterations < 1:
        raise ValueError("grid and iterations must be at least 1")

    ref = f.reference_matrix if f.reference_matrix is not None else np.eye(2, dtype=np.int64)
    w, V = np.linalg.eig(np.asarray(ref, dtype=float))
    if np.iscomplexobj(w) and np.abs(w.imag).max() > 1e-12:
        E = np.eye(2)  # no real eigendirections; the check will simply fail
    else:
        order = np.argsort(-np.abs(w.real))
        E = V.real[:, order]
        E = E / np.linalg.norm(E, axis=0, keepdims=True)
    if abs(np.linalg.det(E)) < 1e-12:
        E = np.eye(2)  # defective (single eigendirection): fall back to a basis
    Einv = np.linalg.inv(E)

    ax = (np.arange(grid) + 0.5) / grid
    g0, g1 = np.meshgrid(ax, ax, indexing="ij")
    pts = np.stack([g0.ravel(), g1.ravel()], axis=1)

    # Accumulated forward and backward Jacobians over `iterations` steps.
    Jf = np.broadcast_to(np.eye(2), (len(pts), 2, 2)).copy()
    z = pts
    for _ in range(iterations):
        Jf = np.asarray(f.differential(z), dtype=float) @ Jf
        z = f.forward(z)
    Jb = np.broadcast_to(np.eye(2), (len(pts), 2, 2)).copy()
    z = pts
    for _ in range(iterations):
        z = f.backward(z)
        Jb = np.linalg.inv(np.asarray(f.differential(z), dtype=float)) @ Jb

    slopes = np.linspace(-opening, opening, 17)

    def worst(J, around_unstable: bool):
        Jt = Einv[None] @ J @ E[None]
        if around_unstable:
            vin = np.stack([np.ones_like(slopes), slopes], axis=0)  # (2, S)
        else:
            vin = np.stack([slopes, np.ones_like(slopes)], axis=0)
        vout = Jt @ vin[None]  # (B, 2, S)
        main, off = (0, 1) if around_unstable else (1, 0)
        new_slope = np.abs(vout[:, off, :]) / np.maximum(np.abs(vout[:, main, :]), 1e-300)
        growth = np.sqrt((vout ** 2).sum(axis=1) / (vin ** 2).sum(axis=0)[None])
        return float(new_slope.max()), float(growth.min())

    u_slope, u_growth = worst(Jf, around_unstable=True)
    s_slope, s_growth = worst(Jb, around_unstable=False)
    margin = opening - max(u_slope, s_slope)
    ok = bool(margin > 0.0 and u_growth > 1.0 and s_growth > 1.0)
    return ConeReport(ok=ok, expansion=u_growth, contraction=s_growth, margin=margin)
