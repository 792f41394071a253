"""Mayer coefficients on finite discrete volumes and the classical bounds.

The n-th coefficient of the log of the grand-canonical sum, per site, is

    C_n = (1 / (n! |volume|)) * sum over n-tuples of sites of Phi(V)

with Phi from :mod:`clusterexp.ursell`.  Tuples are grouped by multiset, so
the cost scales with binom(|volume| + n - 1, n) instead of |volume|^n.  When
the site interactions are all 0 or +inf the coefficients are exact rationals.

Alongside the coefficients: the three closed-form bounds (double-stability,
tree-graph, and the (n-1)-normalised variant), the coefficient recursion
K(n, l) with its closed-form solution, and the Lagrange-inversion toolbox for
the virial radius (the w e^(-w) solver, the rooted-tree series check, and the
maximisation of w(2 e^(-w) - 1) over (0, ln 2)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .potentials import PairPotentialSpec, is_nonnegative, potential_eval
from .ursell import INF, InteractionMatrix, ursell_graph_sum

N_MAX_CAP = 6
VOLUME_CAP = 64
KS_CAP = 40

VIRIAL_NUMERATOR = 0.14477  # published constant; the true supremum is 0.144766998...


@dataclass(frozen=True)
class DiscreteVolume:
    """Finite list of distinct sites embedded in R^d."""

    sites: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if len(set(self.sites)) != len(self.sites):
            raise ValueError("sites must be distinct")

    @classmethod
    def path(cls, k: int, spacing: float = 1.0) -> "DiscreteVolume":
        return cls(tuple((i * spacing,) for i in range(k)))

    @classmethod
    def grid(cls, w: int, h: int, spacing: float = 1.0) -> "DiscreteVolume":
        return cls(tuple((i * spacing, j * spacing) for i in range(w) for j in range(h)))

    @property
    def size(self) -> int:
        return len(self.sites)

    def distance(self, i: int, j: int) -> float:
        return math.dist(self.sites[i], self.sites[j])


@dataclass
class MayerCoefficientRecord:
    n: int
    value: float | Fraction
    bound_pr: float | None
    bound_py: float | None
    bound_basuev: float | None
    inputs: dict

    def within_bounds(self) -> bool:
        v = abs(float(self.value))
        for b in (self.bound_pr, self.bound_py, self.bound_basuev):
            if b is not None and v > b * (1 + 1e-12) + 1e-15:
                return False
        return True


def _site_matrix(volume: DiscreteVolume, spec: PairPotentialSpec, beta: float) -> list[list[float]]:
    m = volume.size
    vals = [[0.0] * m for _ in range(m)]
    for i in range(m):
        vals[i][i] = INF  # on-site hard core, checked by the caller
        for j in range(i + 1, m):
            v = potential_eval(spec, volume.distance(i, j))
            v = v if v == INF else beta * v
            vals[i][j] = vals[j][i] = v
    return vals


def lattice_integrals(volume: DiscreteVolume, spec: PairPotentialSpec, beta: float) -> tuple[float, float]:
    """Discrete analogues of the two f-function integrals on this volume:
    max over sites x of sum over sites y (including y = x) of
    |e^(-beta V(x-y)) - 1| and of 1 - e^(-beta |V(x-y)|)."""
    vals = _site_matrix(volume, spec, beta)
    m = volume.size
    c = ct = 0.0
    for i in range(m):
        si = sum(1.0 if vals[i][j] == INF else abs(math.expm1(-vals[i][j])) for j in range(m))
        ti = sum(1.0 if vals[i][j] == INF else -math.expm1(-abs(vals[i][j])) for j in range(m))
        c, ct = max(c, si), max(ct, ti)
    return c, ct


def mayer_coefficients(
    volume: DiscreteVolume,
    spec: PairPotentialSpec,
    beta: float,
    n_max: int,
    B: float | None = None,
    Bbar: float | None = None,
) -> list[MayerCoefficientRecord]:
    """Exact coefficients C_1..C_n_max on a discrete volume.

    Requires an on-site hard core (V(0) = +inf) so multiple occupation of a
    site is forbidden.  Matrices with all values in {0, +inf} are evaluated in
    exact rational arithmetic.
    """
    if n_max > N_MAX_CAP:
        raise ValueError(f"n_max capped at {N_MAX_CAP}")
    if volume.size > VOLUME_CAP:
        raise ValueError(f"volume capped at {VOLUME_CAP} sites")
    if potential_eval(spec, 0.0) != INF:
        raise ValueError("spec must carry an on-site hard core: V(0) = +inf")
    if B is None and is_nonnegative(spec):
        B = 0.0
    vals = _site_matrix(volume, spec, beta)
    m = volume.size
    hard = all(v == 0.0 or v == INF for row in vals for v in row)
    c_lat, ct_lat = lattice_integrals(volume, spec, beta)

    records = [
        MayerCoefficientRecord(
            1, Fraction(1) if hard else 1.0, None, None, None,
            {"beta": beta, "B": B, "Bbar": Bbar, "C": c_lat, "Ctilde": ct_lat},
        )
    ]
    for n in range(2, n_max + 1):
        total = Fraction(0) if hard else 0.0
        cache: dict[tuple, object] = {}
        for combo in combinations_with_replacement(range(m), n):
            pair_vals = tuple(
                vals[combo[a]][combo[b]] for a in range(n) for b in range(a + 1, n)
            )
            phi = cache.get(pair_vals)
            if phi is None:
                phi = ursell_graph_sum(InteractionMatrix(n, pair_vals))
                cache[pair_vals] = phi
            if not phi:
                continue
            denom = _multiplicity_factorial(combo)
            if hard:
                total += Fraction(phi, denom)
            else:
                total += phi / denom
        value = total / m
        pr, py, bas = mayer_bounds(n, beta, B, Bbar, c_lat, ct_lat)
        records.append(
            MayerCoefficientRecord(
                n, value, pr, py, bas,
                {"beta": beta, "B": B, "Bbar": Bbar, "C": c_lat, "Ctilde": ct_lat},
            )
        )
    return records


def _multiplicity_factorial(combo: Sequence[int]) -> int:
    denom = 1
    run = 1
    for a in range(1, len(combo)):
        if combo[a] == combo[a - 1]:
            run += 1
            denom *= run
        else:
            run = 1
    return denom


def mayer_bounds(
    n: int,
    beta: float,
    B: float | None,
    Bbar: float | None,
    C: float,
    Ctilde: float,
) -> tuple[float | None, float | None, float | None]:
    """The three closed-form coefficient bounds.

    bound_pr      = e^(2 beta B (n-2)) n^(n-2) C^(n-1) / n!
    bound_py      = e^(beta B n)       n^(n-2) Ctilde^(n-1) / n!
    bound_basuev  = e^(beta Bbar (n-1)) n^(n-2) Ctilde^(n-1) / n!
    """
    if n < 2 or beta < 0:
        raise ValueError("need n >= 2 and beta >= 0")

    def safe(log_value: float) -> float:
        return math.exp(log_value) if log_value < 700 else INF

    log_tail_c = (n - 2) * math.log(n) - math.lgamma(n + 1) + (n - 1) * (math.log(C) if C > 0 else -INF)
    log_tail_ct = (n - 2) * math.log(n) - math.lgamma(n + 1) + (n - 1) * (math.log(Ctilde) if Ctilde > 0 else -INF)
    pr = safe(2 * beta * B * (n - 2) + log_tail_c) if B is not None else None
    py = safe(beta * B * n + log_tail_ct) if B is not None else None
    bas = safe(beta * Bbar * (n - 1) + log_tail_ct) if Bbar is not None else None
    return pr, py, bas


@dataclass
class RadiusBounds:
    r_pr: float       # 1 / (e^(2 beta B + 1) C)
    r_star: float     # 1 / (e^(beta B + 1) Ctilde)
    ratio: float      # r_star / r_pr = e^(beta B) C / Ctilde, >= 1
    log_ratio: float


def radius_bounds(beta: float, B: float, Bbar: float | None, C: float, Ctilde: float) -> RadiusBounds:
    """Classical and tree-graph convergence radii with their improvement ratio."""
    if C <= 0 or Ctilde <= 0:
        raise ValueError("need C, Ctilde > 0")
    log_ratio = beta * B + math.log(C) - math.log(Ctilde)
    r_pr = math.exp(-(2 * beta * B + 1)) / C
    r_star = math.exp(-(beta * B + 1)) / Ctilde
    ratio = math.exp(log_ratio) if log_ratio < 700 else INF
    return RadiusBounds(r_pr=r_pr, r_star=r_star, ratio=ratio, log_ratio=log_ratio)


def ks_closed_form(n: int, l: int, beta: float, B: float, C: float) -> float:
    """e^(2 beta B (n + l - 1)) n (n + l)^(l - 1) C^l / l!"""
    return math.exp(2 * beta * B * (n + l - 1)) * n * (n + l) ** (l - 1) * C**l / math.factorial(l)


def ks_recursion(M_max: int, beta: float, B: float, C: float) -> dict[tuple[int, int], float]:
    """Coefficient table K(n, l) for n >= 1, n + l <= M_max, filled by the
    recursion K(n, M-n) = e^(2 beta B) sum_s C^s / s! K(n-1+s, M-n-s) from
    K(1, 0) = 1, with the boundary convention K(0, l) = [l == 0]."""
    if M_max > KS_CAP:
        raise ValueError(f"M_max capped at {KS_CAP}")
    K: dict[tuple[int, int], float] = {(1, 0): 1.0}

    def get(n: int, l: int) -> float:
        if n == 0:
            return 1.0 if l == 0 else 0.0
        return K[(n, l)]

    pref = math.exp(2 * beta * B)
    for M in range(2, M_max + 1):
        for n in range(1, M + 1):
            l = M - n
            acc = 0.0
            cs = 1.0
            for s in range(l + 1):
                acc += cs * get(n - 1 + s, l - s)
                cs = cs * C / (s + 1)
            K[(n, l)] = pref * acc
    return K


# ---------------------------------------------------------------------------
# Virial toolbox


def solve_w(x: float, tol: float = 1e-12, max_iter: int = 50) -> float:
    """First solution in [0, 1] of w e^(-w) = x, for 0 <= x <= 1/e.

    Newton from w = x (below the root on this branch) with bisection fallback.
    """
    if x < 0 or x > 1.0 / math.e + 1e-15:
        raise ValueError("out of branch: need 0 <= x <= 1/e")
    if x == 0:
        return 0.0
    w = x
    for _ in range(max_iter):
        f = w * math.exp(-w) - x
        df = math.exp(-w) * (1.0 - w)
        if df <= 0:
            break
        w_new = w - f / df
        if not 0.0 <= w_new <= 1.0:
            break
        if abs(w_new - w) < tol:
            return w_new
        w = w_new
    # bisection fallback on [0, 1]
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid * math.exp(-mid) < x:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


def euler_partial_sums(x: float, n_terms: int) -> list[float]:
    """Partial sums of the rooted-tree series sum n^(n-1)/n! x^n, which
    converges to the solution w of w e^(-w) = x for x <= 1/e."""
    out = []
    s = 0.0
    for n in range(1, n_terms + 1):
        s += math.exp((n - 1) * math.log(n) - math.lgamma(n + 1) + n * math.log(x))
        out.append(s)
    return out


def virial_objective(w: float) -> float:
    return w * (2.0 * math.exp(-w) - 1.0)


def virial_max_golden(tol: float = 1e-12) -> tuple[float, float]:
    """Maximise w(2 e^(-w) - 1) on (0, ln 2): dense grid then golden section."""
    lo, hi = 1e-12, math.log(2.0) - 1e-12
    grid = np.linspace(lo, hi, 20001)
    vals = grid * (2.0 * np.exp(-grid) - 1.0)
    k = int(vals.argmax())
    a = grid[max(k - 1, 0)]
    b = grid[min(k + 1, len(grid) - 1)]
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = virial_objective(c), virial_objective(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = virial_objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = virial_objective(d)
    w = 0.5 * (a + b)
    return w, virial_objective(w)


def virial_max_newton(tol: float = 1e-14) -> tuple[float, float]:
    """Same maximum through the stationarity condition 2 e^(-w) (1 - w) = 1."""
    w = brentq(lambda w: 2.0 * math.exp(-w) * (1.0 - w) - 1.0, 1e-9, math.log(2.0), xtol=tol)
    return w, virial_objective(w)


@dataclass
class VirialTools:
    """Virial-radius machinery for given beta, Bbar and Ctilde."""

    beta: float
    Bbar: float
    Ctilde: float

    def w_from_activity(self, lam: float) -> float:
        """Invert w e^(-w) = Ctilde e^(beta Bbar) |lam| on the [0, 1] branch."""
        return solve_w(self.Ctilde * math.exp(self.beta * self.Bbar) * abs(lam))

    @property
    def virial_radius(self) -> float:
        """The published lower bound 0.14477 / (Ctilde e^(beta Bbar))."""
        return VIRIAL_NUMERATOR / (self.Ctilde * math.exp(self.beta * self.Bbar))

    def euler_check(self, x: float, n_terms: int = 80) -> tuple[float, list[float]]:
        """(w, partial sums) demonstrating the tree series converges to w."""
        return solve_w(x), euler_partial_sums(x, n_terms)

    def max_point(self) -> tuple[float, float]:
        return virial_max_golden()


def virial_tools(beta: float, Bbar: float, Ctilde: float) -> VirialTools:
    return VirialTools(beta=beta, Bbar=Bbar, Ctilde=Ctilde)
