"""Zero-point-force strain equilibrium of the elastically restrained box.

The combined energy of the ground-state particle and the spring, as a
function of the wall displacement y (in units of the unstrained size d), is

    E(y) = 1 / (1 + y)^2 + (K/2) y^2        [units eps0]

The confinement term always gains from expansion, so for every finite
spring stiffness K the minimum sits at a strained size ell = 1 + y* > 1,
where the zero-point force 2/ell^3 balances the spring pull K (ell - 1).
Equivalently ell is the unique root > 1 of

    K ell^4 - K ell^3 - 2 = 0.

The drop of E from y = 0 to y* is the binding energy of the particle and
the strained box as a single unit; the curvature at the minimum defines
the stiffened force constant K' = K + 6/ell^4 that governs small box-size
oscillations.
"""

import math
from dataclasses import dataclass

import numpy as np
from mpmath import mp, mpf

from .errors import DomainError, NumericalError, ValidationError

_GRID_POINTS = 10_000
_GOLDEN_TOL = 1e-12


def _check_stiffness(K: float) -> float:
    K = float(K)
    if not math.isfinite(K) or K <= 0.0:
        raise ValidationError(f"stiffness K must be positive and finite, got {K!r}")
    return K


@dataclass(frozen=True)
class StrainSolution:
    """Equilibrium of the particle + spring system at stiffness K.

    ``strain`` is held separately from ``ell`` (= 1 + strain) because at
    large K the strain is far below the floating-point resolution of ell.
    """

    K: float
    ell: float  # equilibrium relative box size d'/d, > 1
    strain: float  # ell - 1
    residual: float  # |K*strain - 2/ell^3| at the returned root
    binding_exact: float  # E(y*) - E(0), always < 0
    binding_first_order: float  # -strain/ell^3, the small-strain estimate
    strain_energy: float  # (K/2) strain^2
    effective_stiffness: float  # K' = K + 6/ell^4, curvature at the minimum


def total_energy(y: float, K: float, n: int = 1) -> float:
    """Combined particle + spring energy at wall displacement y.

    The particle contributes n^2/(1+y)^2 (it is pinned to level n, by
    default the ground state); the spring contributes (K/2) y^2.
    """
    K = _check_stiffness(K)
    y = float(y)
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise ValidationError(f"level n must be an integer >= 1, got {n!r}")
    size = 1.0 + y
    if not size > 0.0:
        raise DomainError(f"box collapse: 1 + y = {size} must stay positive")
    return (n * n) / (size * size) + 0.5 * K * y * y


def _solve_strain(K: float) -> float:
    """Root of K*s = 2/(1+s)^3 for s > 0, solved in the strain variable.

    Working in s rather than ell keeps the balance well conditioned when
    K is large and s is many orders below 1.  The residual g(s) =
    K s - 2/(1+s)^3 is concave and strictly increasing with g(0) = -2,
    and g(2/sqrt(K)) > 0 for every K, so the bracket is guaranteed.
    """

    def g(s: float) -> float:
        return K * s - 2.0 / (1.0 + s) ** 3

    def dg(s: float) -> float:
        return K + 6.0 / (1.0 + s) ** 4

    lo, hi = 0.0, 2.0 / math.sqrt(K)
    guard = 0
    while g(hi) < 0.0:  # cannot trigger analytically; defensive
        hi *= 2.0
        guard += 1
        if guard > 200:
            raise NumericalError(f"failed to bracket the strain root for K={K}")

    # a few bisections to enter the Newton basin
    for _ in range(8):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            hi = mid
        else:
            lo = mid

    # Newton polish; g is concave increasing, so iterates converge
    # monotonically once below the root.  Keep the best residual seen.
    s = 0.5 * (lo + hi)
    best_s, best_f = s, abs(g(s))
    for _ in range(100):
        f = g(s)
        if abs(f) < best_f:
            best_s, best_f = s, abs(f)
        if f == 0.0:
            break
        step = f / dg(s)
        s_next = s - step
        if not 0.0 < s_next:
            s_next = 0.5 * s
        if s_next == s:
            break
        s = s_next
    return best_s


def binding_energy(sol: StrainSolution) -> tuple[float, float]:
    """Energy gained by relaxing from the rigid size to the strained one.

    Returns ``(exact, first_order)``: the exact drop E(y*) - E(0) and the
    leading small-strain estimate -strain/ell^3.  Both are negative; their
    gap grows linearly with strain, which is what makes the first-order
    form usable only in the stiff-spring regime.
    """
    return _binding(sol.K, sol.strain)


def _binding(K: float, s: float) -> tuple[float, float]:
    ell = 1.0 + s
    # 1/ell^2 - 1 written as -s(s+2)/ell^2 to avoid cancellation at tiny s
    exact = 0.5 * K * s * s - s * (s + 2.0) / (ell * ell)
    first = -s / ell**3
    return exact, first


def effective_stiffness(sol: StrainSolution) -> float:
    """Curvature K' = K + 6/ell^4 of the total energy at the strained minimum.

    The confinement term steepens the well, so K' > K always: the strained
    box oscillates faster than the bare spring would.  (A first-order-in-
    strain reading would give a 6/ell^2 shift; the exact second derivative
    is 6/ell^4, and the finite-difference checks pin the latter.)
    """
    return sol.K + 6.0 / sol.ell**4


def solve_equilibrium(K: float) -> StrainSolution:
    """Solve the strain equilibrium for stiffness K.

    Finds the unique relative size ell > 1 where the zero-point force
    balances the spring, by bracketed bisection plus Newton polish on the
    force balance in the strain variable.  All derived energies and the
    stiffened force constant are populated on the result.
    """
    K = _check_stiffness(K)
    s = _solve_strain(K)
    ell = 1.0 + s
    exact, first = _binding(K, s)
    return StrainSolution(
        K=K,
        ell=ell,
        strain=s,
        residual=abs(K * s - 2.0 / ell**3),
        binding_exact=exact,
        binding_first_order=first,
        strain_energy=0.5 * K * s * s,
        effective_stiffness=K + 6.0 / ell**4,
    )


def perturbed_energy(sol: StrainSolution, eta: float, sign: int = 1) -> float:
    """Total energy with the wall displaced by sign*eta from equilibrium.

    Valid only inside the strain window |eta| < strain, where the
    expansion E = E_min + (K'/2) eta^2 + O(eta^3) holds; the linear term
    cancels exactly at equilibrium, which is what lets the particle and
    the spring trade energy at equal and opposite linear rates.
    """
    eta = float(eta)
    if sign not in (1, -1):
        raise ValidationError(f"sign must be +1 or -1, got {sign!r}")
    if not abs(eta) < sol.strain:
        raise DomainError(
            f"|eta| = {abs(eta)!r} must stay below the strain {sol.strain!r}"
        )
    y = sol.strain + sign * eta
    size = sol.ell + sign * eta
    if not size > 0.0:
        raise DomainError(f"box collapse: ell + eta = {size} must stay positive")
    return 1.0 / (size * size) + 0.5 * sol.K * y * y


def minimize_oracle(K: float) -> float:
    """Locate the energy minimum by direct search; returns the displacement y*.

    Independent check on :func:`solve_equilibrium`: a coarse scan of
    total_energy over 10^4 points on (-0.5, y_max], followed by
    golden-section refinement of the bracketing interval down to 1e-12.
    The refinement evaluates the energy in 40-digit arithmetic because in
    double precision the well is numerically flat within ~1e-8 of the
    minimum, which would cap the attainable localization.
    """
    K = _check_stiffness(K)
    # (K/2) y_max^2 > 2 = E(0) + 1 guarantees the minimum is interior
    y_max = 2.1 / math.sqrt(K)
    ys = np.linspace(-0.5, y_max, _GRID_POINTS + 1)[1:]
    sizes = 1.0 + ys
    energies = 1.0 / (sizes * sizes) + 0.5 * K * ys * ys
    i = int(np.argmin(energies))
    lo = ys[max(i - 1, 0)]
    hi = ys[min(i + 1, len(ys) - 1)]
    return _golden_section(K, lo, hi)


def _golden_section(K: float, lo: float, hi: float) -> float:
    """Golden-section minimization of the total energy in mpmath arithmetic."""
    with mp.workdps(40):
        Km = mpf(K)

        def f(y):
            return 1 / (1 + y) ** 2 + Km / 2 * y**2

        inv_phi = (mp.sqrt(5) - 1) / 2
        a, b = mpf(lo), mpf(hi)
        c = b - inv_phi * (b - a)
        d = a + inv_phi * (b - a)
        fc, fd = f(c), f(d)
        while b - a > _GOLDEN_TOL:
            if fc < fd:
                b, d, fd = d, c, fc
                c = b - inv_phi * (b - a)
                fc = f(c)
            else:
                a, c, fc = c, d, fd
                d = a + inv_phi * (b - a)
                fd = f(d)
        return float((a + b) / 2)
