"""Abstract polymer gas: exact partition functions and convergence criteria.

Polymers interact only through a symmetric incompatibility relation (a pure
hard core), so the grand-canonical sum over a finite volume is the
independence polynomial of the incompatibility graph.  On top of the exact
machinery sit the truncated cluster series, the pinned absolute series, the
monotone fixed-point iteration, and the three classical sufficient conditions
for convergence -- exponential (Kotecky-Preiss), product (Dobrushin) and
neighborhood-partition-function (Fernandez-Procacci) -- each with its
optimised constant on regular models.

The incompatibility relation is reflexive by default: a polymer excludes a
second copy of itself.  Every worked model here is of that kind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .ursell import INF, InteractionMatrix, ursell_graph_sum

VOLUME_CAP = 30
CLUSTER_ORDER_CAP = 6
PINNED_ORDER_CAP = 5
FP_NEIGHBOR_CAP = 25
SUBSET_VERTEX_CAP = 12

Polymer = Hashable


class PolymerSystem:
    """Finite polymer set with incompatibility relation and activities."""

    def __init__(self, activities: Mapping[Polymer, complex],
                 incompatible_pairs: Iterable[tuple[Polymer, Polymer]],
                 reflexive: bool = True):
        self.polymers = tuple(activities.keys())
        self.activity = dict(activities)
        self.reflexive = reflexive
        index = {g: k for k, g in enumerate(self.polymers)}
        nbrs: dict[Polymer, set] = {g: set() for g in self.polymers}
        for a, b in incompatible_pairs:
            if a not in index or b not in index:
                raise ValueError(f"incompatible pair ({a!r}, {b!r}) uses unknown polymers")
            nbrs[a].add(b)
            nbrs[b].add(a)
        if reflexive:
            for g in self.polymers:
                nbrs[g].add(g)
        self._nbrs = {g: frozenset(s) for g, s in nbrs.items()}

    def incompatible(self, a: Polymer, b: Polymer) -> bool:
        return b in self._nbrs[a]

    def neighborhood(self, g: Polymer) -> frozenset:
        """All polymers incompatible with g (g itself included when reflexive)."""
        return self._nbrs[g]

    def with_activities(self, activities: Mapping[Polymer, complex]) -> "PolymerSystem":
        pairs = [(a, b) for a in self.polymers for b in self._nbrs[a] if not self.reflexive or a != b]
        sys2 = PolymerSystem(dict(activities), [], reflexive=self.reflexive)
        sys2._nbrs = self._nbrs
        sys2.polymers = self.polymers
        return sys2

    def __len__(self):
        return len(self.polymers)


def system_from_adjacency_text(text: str, reflexive: bool = True) -> PolymerSystem:
    """Parse lines of the form "id ; neighbor neighbor ... ; activity"."""
    activities: dict[str, complex] = {}
    pairs: list[tuple[str, str]] = []
    entries = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        ident, nbrs, act = (part.strip() for part in line.split(";"))
        entries.append((ident, nbrs.split(), float(act)))
    for ident, _, act in entries:
        activities[ident] = act
    for ident, nbrs, _ in entries:
        for other in nbrs:
            if other not in activities:
                raise ValueError(f"neighbor {other!r} of {ident!r} was never declared")
            pairs.append((ident, other))
    return PolymerSystem(activities, pairs, reflexive=reflexive)


def partition_function(sys: PolymerSystem, region: Iterable[Polymer] | None = None,
                       activities: Mapping[Polymer, complex] | None = None) -> complex:
    """Exact grand-canonical sum over the region: the weighted independence
    polynomial of the incompatibility graph, via the deletion recursion
    Xi(R) = Xi(R - g) + z_g Xi(R - N[g])."""
    region = frozenset(sys.polymers if region is None else region)
    if len(region) > VOLUME_CAP:
        raise ValueError(f"region capped at {VOLUME_CAP} polymers")
    if not sys.reflexive:
        raise ValueError("exact partition functions need the reflexive hard core")
    z = sys.activity if activities is None else activities
    order = {g: k for k, g in enumerate(sys.polymers)}
    memo: dict[frozenset, complex] = {}

    def xi(r: frozenset) -> complex:
        if not r:
            return 1.0
        got = memo.get(r)
        if got is not None:
            return got
        g = min(r, key=order.get)
        val = xi(r - {g}) + z[g] * xi(r - sys.neighborhood(g))
        memo[r] = val
        return val

    return xi(region)


# ---------------------------------------------------------------------------
# Polynomials in the activities


class ActivityPolynomial:
    """Sparse polynomial with monomials prod z_g^k, keyed by ((g, k), ...)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = dict(terms or {})

    @classmethod
    def constant(cls, c) -> "ActivityPolynomial":
        return cls({(): c} if c else {})

    @classmethod
    def monomial(cls, polymers: Sequence[Polymer], coeff) -> "ActivityPolynomial":
        key: dict = {}
        for g in polymers:
            key[g] = key.get(g, 0) + 1
        mono = tuple(sorted(key.items(), key=lambda kv: repr(kv[0])))
        return cls({mono: coeff})

    def add_monomial(self, polymers: Sequence[Polymer], coeff) -> None:
        key: dict = {}
        for g in polymers:
            key[g] = key.get(g, 0) + 1
        mono = tuple(sorted(key.items(), key=lambda kv: repr(kv[0])))
        self.terms[mono] = self.terms.get(mono, 0) + coeff
        if not self.terms[mono]:
            del self.terms[mono]

    def __add__(self, other: "ActivityPolynomial") -> "ActivityPolynomial":
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
            if not out[mono]:
                del out[mono]
        return ActivityPolynomial(out)

    def __mul__(self, other: "ActivityPolynomial") -> "ActivityPolynomial":
        out: dict = {}
        for m1, c1 in self.terms.items():
            d1 = dict(m1)
            for m2, c2 in other.terms.items():
                d = dict(d1)
                for g, k in m2:
                    d[g] = d.get(g, 0) + k
                mono = tuple(sorted(d.items(), key=lambda kv: repr(kv[0])))
                out[mono] = out.get(mono, 0) + c1 * c2
                if not out[mono]:
                    del out[mono]
        return ActivityPolynomial(out)

    def scaled(self, c) -> "ActivityPolynomial":
        return ActivityPolynomial({m: c * v for m, v in self.terms.items()})

    def truncated(self, max_degree: int) -> "ActivityPolynomial":
        return ActivityPolynomial(
            {m: c for m, c in self.terms.items() if sum(k for _, k in m) <= max_degree}
        )

    def degree(self) -> int:
        return max((sum(k for _, k in m) for m in self.terms), default=0)

    def evaluate(self, activities: Mapping[Polymer, complex]) -> complex:
        total = 0.0
        for mono, c in self.terms.items():
            val = c
            for g, k in mono:
                val = val * activities[g] ** k
            total += val
        return total

    def coefficient(self, polymers: Sequence[Polymer]):
        key: dict = {}
        for g in polymers:
            key[g] = key.get(g, 0) + 1
        mono = tuple(sorted(key.items(), key=lambda kv: repr(kv[0])))
        return self.terms.get(mono, 0)

    def __eq__(self, other):
        return isinstance(other, ActivityPolynomial) and self.terms == other.terms

    def __repr__(self):
        return f"ActivityPolynomial({len(self.terms)} terms, degree {self.degree()})"


def xi_polynomial(sys: PolymerSystem, region: Iterable[Polymer] | None = None) -> ActivityPolynomial:
    """The exact partition function as a multilinear polynomial: one monomial
    per pairwise-compatible family."""
    region = sorted(frozenset(sys.polymers if region is None else region), key=repr)
    if len(region) > 20:
        raise ValueError("polynomial form capped at 20 polymers")
    poly = ActivityPolynomial.constant(1)
    families: list[list[Polymer]] = [[]]

    def rec(start: int, chosen: list[Polymer]):
        for k in range(start, len(region)):
            g = region[k]
            if any(sys.incompatible(g, h) for h in chosen):
                continue
            chosen.append(g)
            poly.add_monomial(chosen, 1)
            rec(k + 1, chosen)
            chosen.pop()

    rec(0, [])
    return poly


def _phi_hardcore(sys: PolymerSystem, gammas: Sequence[Polymer],
                  cache: dict[tuple, int]) -> int:
    """Exact integer Ursell coefficient of a tuple of polymers."""
    n = len(gammas)
    if n == 1:
        return 1
    key = tuple(
        sys.incompatible(gammas[a], gammas[b])
        for a in range(n) for b in range(a + 1, n)
    )
    got = cache.get(key)
    if got is None:
        vals = [INF if inc else 0.0 for inc in key]
        got = ursell_graph_sum(InteractionMatrix(n, vals))
        cache[key] = got
    return got


def cluster_log_truncated(sys: PolymerSystem, region: Iterable[Polymer] | None = None,
                          order: int = 4) -> ActivityPolynomial:
    """Truncation of log Xi as a polynomial in the activities.

    Sums (1/n!) phi(g_1..g_n) z_{g_1}...z_{g_n} over ordered tuples from the
    region up to length ``order``, grouped by multiset.  The exponential of
    the result matches the exact Xi polynomial through total degree ``order``.
    """
    if order > CLUSTER_ORDER_CAP:
        raise ValueError(f"order capped at {CLUSTER_ORDER_CAP}")
    region = sorted(frozenset(sys.polymers if region is None else region), key=repr)
    if len(region) > 12:
        raise ValueError("cluster truncation capped at 12 polymers")
    cache: dict[tuple, int] = {}
    poly = ActivityPolynomial()
    for n in range(1, order + 1):
        for combo in combinations_with_replacement(region, n):
            phi = _phi_hardcore(sys, combo, cache)
            if not phi:
                continue
            denom = 1
            run = 1
            for a in range(1, n):
                if combo[a] == combo[a - 1]:
                    run += 1
                    denom *= run
                else:
                    run = 1
            poly.add_monomial(combo, Fraction(phi, denom))
    return poly


@dataclass
class PinnedSeries:
    polymer: Polymer
    partials: list[float]  # cumulative sums through order 0, 1, ..., N

    @property
    def value(self) -> float:
        return self.partials[-1]


def pinned_series(sys: PolymerSystem, gamma0: Polymer, order: int,
                  rho: Mapping[Polymer, float] | float) -> PinnedSeries:
    """Truncated pinned absolute series sum (1/n!) |phi(g0, g_1..g_n)| rho...

    Partial sums are nondecreasing in the order; for activities inside a
    certified region, rho_g0 times the limit stays below the trial weight.
    """
    if order > PINNED_ORDER_CAP:
        raise ValueError(f"order capped at {PINNED_ORDER_CAP}")
    rho_map = rho if isinstance(rho, Mapping) else {g: rho for g in sys.polymers}
    cache: dict[tuple, int] = {}
    partials = [1.0]
    for n in range(1, order + 1):
        term = 0.0
        for combo in combinations_with_replacement(sorted(sys.polymers, key=repr), n):
            phi = _phi_hardcore(sys, (gamma0,) + combo, cache)
            if not phi:
                continue
            denom = 1
            run = 1
            for a in range(1, n):
                if combo[a] == combo[a - 1]:
                    run += 1
                    denom *= run
                else:
                    run = 1
            weight = 1.0
            for g in combo:
                weight *= rho_map[g]
            term += abs(phi) / denom * weight
        partials.append(partials[-1] + term)
    return PinnedSeries(gamma0, partials)


@dataclass
class FixedPointResult:
    values: dict
    iterations: int
    converged: bool
    diverged: bool
    exceeded_mu: bool


def fixed_point_iterate(sys: PolymerSystem, rho: Mapping[Polymer, float] | float,
                        k: int, mu: Mapping[Polymer, float] | None = None,
                        tol: float = 1e-12, blowup: float = 1e12) -> FixedPointResult:
    """Iterate u <- rho * Xi_neighborhood(u) from u = rho, k times.

    Coordinates are monotone nondecreasing.  When the activities sit below a
    certified radius the iteration converges to the pinned-series fixed
    point; otherwise coordinates grow past any bound (and past mu, when
    given), which is reported as a criterion violation.
    """
    rho_map = dict(rho) if isinstance(rho, Mapping) else {g: rho for g in sys.polymers}
    u = dict(rho_map)
    if k == 0:
        return FixedPointResult(u, 0, False, False, False)
    exceeded = False
    diverged = False
    converged = False
    for it in range(1, k + 1):
        new = {}
        for g in sys.polymers:
            nbh = sys.neighborhood(g)
            new[g] = rho_map[g] * abs(partition_function(sys, nbh, activities=u))
        delta = max(abs(new[g] - u[g]) for g in sys.polymers)
        u = new
        if mu is not None and any(u[g] > mu[g] + 1e-15 for g in sys.polymers):
            exceeded = True
            break
        if max(u.values()) > blowup:
            diverged = True
            break
        if delta < tol:
            converged = True
            break
    return FixedPointResult(u, it, converged, diverged, exceeded)


# ---------------------------------------------------------------------------
# Convergence criteria


@dataclass
class CriterionInput:
    """Trial weights mu > 0 plus the neighborhood structure they are tried on."""

    system: PolymerSystem
    mu: Mapping[Polymer, float]

    def __post_init__(self):
        for g in self.system.polymers:
            if self.mu[g] <= 0:
                raise ValueError("trial weights must be positive")


@dataclass
class CriterionRadii:
    r_kp: float
    r_dob: float
    r_fp: float
    fp_exact: bool


def criteria(inp: CriterionInput) -> dict[Polymer, CriterionRadii]:
    """Per-polymer activity radii mu / phi(mu) for the three conditions.

    phi is exp(sum mu) over the neighborhood (exponential form), the product
    of (1 + mu) (product form), or the neighborhood partition function
    (the strongest).  Pointwise r_fp >= r_dob >= r_kp.
    """
    sys = inp.system
    mu = inp.mu
    out = {}
    for g in sys.polymers:
        nbh = sys.neighborhood(g)
        s = sum(mu[h] for h in nbh)
        prod = 1.0
        for h in nbh:
            prod *= 1.0 + mu[h]
        fp_exact = len(nbh) <= FP_NEIGHBOR_CAP
        if fp_exact:
            xi = abs(partition_function(sys, nbh, activities=mu))
        else:
            xi = _fp_fallback_bound(sys, g, nbh, mu)
        out[g] = CriterionRadii(
            r_kp=mu[g] / math.exp(s),
            r_dob=mu[g] / prod,
            r_fp=mu[g] / xi,
            fp_exact=fp_exact,
        )
    return out


def _fp_fallback_bound(sys: PolymerSystem, g: Polymer, nbh: frozenset, mu) -> float:
    """Upper bound on the neighborhood partition function for oversized
    neighborhoods: the binomial bound when polymers are vertex subsets,
    the product bound otherwise."""
    if isinstance(g, frozenset):
        per_vertex = 0.0
        for x in g:
            per_vertex = max(per_vertex, sum(mu[h] for h in nbh if isinstance(h, frozenset) and x in h))
        return (1.0 + per_vertex) ** len(g)
    prod = 1.0
    for h in nbh:
        prod *= 1.0 + mu[h]
    return prod


def constant_mu_radius(sys: PolymerSystem, polymer: Polymer, which: str, mu: float) -> float:
    inp = CriterionInput(sys, {g: mu for g in sys.polymers})
    r = criteria(inp)[polymer]
    return {"kp": r.r_kp, "dob": r.r_dob, "fp": r.r_fp}[which]


def optimize_constant_mu(sys: PolymerSystem, polymer: Polymer, which: str,
                         lo: float = 1e-6, hi: float = 30.0, tol: float = 1e-12) -> tuple[float, float]:
    """Golden-section maximisation of the chosen radius over a constant mu."""
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    f = lambda m: constant_mu_radius(sys, polymer, which, m)
    # bracket the maximum on a log grid first
    import numpy as np

    grid = np.geomspace(lo, hi, 220)
    vals = [f(m) for m in grid]
    k = int(max(range(len(vals)), key=vals.__getitem__))
    a = grid[max(k - 1, 0)]
    b = grid[min(k + 1, len(grid) - 1)]
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol * max(1.0, a):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = f(d)
    m = 0.5 * (a + b)
    return m, f(m)


def regular_graph_thresholds(Delta: int) -> tuple[float, float, float]:
    """Optimised constants on a degree-Delta graph whose neighbor sites are
    pairwise compatible (tree-like worst case):

    kp  = 1 / ((Delta + 1) e)
    dob = Delta^Delta / (Delta + 1)^(Delta + 1)
    fp  = 1 / (1 + Delta^Delta / (Delta - 1)^(Delta - 1))
    """
    if Delta < 2:
        raise ValueError("need Delta >= 2")
    kp = 1.0 / ((Delta + 1) * math.e)
    dob = Delta**Delta / float((Delta + 1) ** (Delta + 1))
    fp = 1.0 / (1.0 + Delta**Delta / float((Delta - 1) ** (Delta - 1)))
    return kp, dob, fp


# ---------------------------------------------------------------------------
# Built-in models


def domino_system(width: int = 5, height: int = 5, rho: float = 1.0) -> PolymerSystem:
    """Nearest-neighbour bonds of a grid window; bonds sharing a vertex are
    incompatible.  In the bulk each bond excludes itself and six others."""
    bonds = []
    for r in range(height):
        for c in range(width):
            if c + 1 < width:
                bonds.append(((r, c), (r, c + 1)))
            if r + 1 < height:
                bonds.append(((r, c), (r + 1, c)))
    pairs = [
        (b1, b2)
        for i, b1 in enumerate(bonds)
        for b2 in bonds[i + 1:]
        if set(b1) & set(b2)
    ]
    return PolymerSystem({b: rho for b in bonds}, pairs)


def domino_center(sys: PolymerSystem) -> Polymer:
    """A bond with the full bulk neighborhood (7 incompatible polymers)."""
    for b in sys.polymers:
        if len(sys.neighborhood(b)) == 7:
            return b
    raise ValueError("window too small: no bulk bond present")


def delta_regular_system(Delta: int, rho: float = 1.0) -> PolymerSystem:
    """Star neighborhood of the tree-like worst case: a center polymer with
    Delta pairwise-compatible incompatible neighbors."""
    polymers: dict = {"c": rho}
    pairs = []
    for k in range(Delta):
        polymers[f"n{k}"] = rho
        pairs.append(("c", f"n{k}"))
    return PolymerSystem(polymers, pairs)


def triangular_window(radius: int = 2, rho: float = 1.0) -> PolymerSystem:
    """Sites of the triangular lattice (square lattice plus one diagonal);
    a site excludes itself and its six neighbors."""
    sites = [(x, y) for x in range(-radius, radius + 1) for y in range(-radius, radius + 1)]
    offsets = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)]
    site_set = set(sites)
    pairs = []
    for x, y in sites:
        for dx, dy in offsets:
            other = (x + dx, y + dy)
            if other in site_set and (x, y) < other:
                pairs.append(((x, y), other))
    return PolymerSystem({s: rho for s in sites}, pairs)


def subset_gas_system(vertices: Sequence[Hashable],
                      activities: Mapping[frozenset, float]) -> PolymerSystem:
    """Polymers are finite vertex subsets; overlap means incompatibility."""
    polys = list(activities.keys())
    vset = set(vertices)
    for g in polys:
        if not isinstance(g, frozenset) or not g or not g <= vset:
            raise ValueError(f"polymer {g!r} is not a nonempty subset of the vertex set")
    pairs = [
        (g1, g2)
        for i, g1 in enumerate(polys)
        for g2 in polys[i + 1:]
        if g1 & g2
    ]
    return PolymerSystem(dict(activities), pairs)


def random_subset_gas(vertices: Sequence[Hashable], n_polymers: int, max_size: int,
                      rng, a: float = math.log(2.0), margin: float = 0.9) -> PolymerSystem:
    """Random subset system scaled so sup_x sum_{g: x in g} rho(g) e^(a|g|)
    equals ``margin`` times e^a - 1."""
    vertices = list(vertices)
    polymers: dict[frozenset, float] = {}
    while len(polymers) < n_polymers:
        size = rng.randint(1, max_size)
        g = frozenset(rng.sample(vertices, size))
        if g not in polymers:
            polymers[g] = rng.uniform(0.2, 1.0)
    sup = max(
        sum(w * math.exp(a * len(g)) for g, w in polymers.items() if x in g)
        for x in vertices
    )
    scale = margin * (math.exp(a) - 1.0) / sup
    return subset_gas_system(vertices, {g: w * scale for g, w in polymers.items()})


# ---------------------------------------------------------------------------
# Subset-gas condition with exhaustive inductive verification


@dataclass
class BoundReport:
    """Named threshold: the formula, its inputs, the value, and the verdict."""

    name: str
    formula: str
    inputs: dict
    threshold: float
    value: float | None = None
    satisfied: bool | None = None
    margin: float | None = None

    def __bool__(self):
        return bool(self.satisfied)


@dataclass
class SubsetGasReport:
    condition: BoundReport
    verified: bool
    checked_volumes: int
    max_pinned_sum: float
    zero_crossing: frozenset | None

    def __bool__(self):
        return bool(self.condition.satisfied) and self.verified


def subset_gas_check(sys: PolymerSystem, a: float = math.log(2.0),
                     tol: float = 1e-9) -> SubsetGasReport:
    """Check sup_x sum_{g: x in g} rho(g) e^(a|g|) <= e^a - 1 and, when it
    holds, verify on every sub-volume L and pinned vertex x that
    -log Xi_L(-rho) + log Xi_(L-x)(-rho) <= a with Xi_L(-rho) > 0 throughout.
    """
    polymers = list(sys.polymers)
    vertices = sorted({x for g in polymers for x in g}, key=repr)
    if len(vertices) > SUBSET_VERTEX_CAP:
        raise ValueError(f"vertex set capped at {SUBSET_VERTEX_CAP}")
    rho = {g: float(sys.activity[g]) for g in polymers}
    if any(r < 0 for r in rho.values()):
        raise ValueError("the inductive verification needs nonnegative activities")
    vidx = {x: k for k, x in enumerate(vertices)}
    gmask = {g: sum(1 << vidx[x] for x in g) for g in polymers}
    sup = max(
        sum(rho[g] * math.exp(a * len(g)) for g in polymers if x in g)
        for x in vertices
    ) if vertices else 0.0
    threshold = math.exp(a) - 1.0
    condition = BoundReport(
        name="subset_gas",
        formula="sup_x sum_{g: x in g} rho(g) e^(a|g|) <= e^a - 1",
        inputs={"a": a, "vertices": len(vertices), "polymers": len(polymers)},
        threshold=threshold,
        value=sup,
        satisfied=sup <= threshold + 1e-15,
        margin=threshold - sup,
    )
    if not condition.satisfied:
        return SubsetGasReport(condition, False, 0, math.nan, None)

    by_vertex: list[list] = [[] for _ in vertices]
    for g in polymers:
        by_vertex[min(vidx[x] for x in g)].append(g)
    memo: dict[int, float] = {0: 1.0}

    def xi_neg(mask: int) -> float:
        got = memo.get(mask)
        if got is not None:
            return got
        v = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        val = xi_neg(rest)
        for g in by_vertex[v]:
            gm = gmask[g]
            if gm & mask == gm:
                val -= rho[g] * xi_neg(mask & ~gm)
        memo[mask] = val
        return val

    full = (1 << len(vertices)) - 1
    worst = 0.0
    for mask in range(1, full + 1):
        val = xi_neg(mask)
        if val <= 0.0:
            return SubsetGasReport(
                condition, False, mask,
                math.nan,
                frozenset(vertices[k] for k in range(len(vertices)) if mask >> k & 1),
            )
        m = mask
        while m:
            low = m & -m
            pinned = math.log(xi_neg(mask & ~low)) - math.log(val)
            worst = max(worst, pinned)
            if pinned > a + tol:
                return SubsetGasReport(condition, False, mask, worst, None)
            m ^= low
    return SubsetGasReport(condition, True, full, worst, None)


# ---------------------------------------------------------------------------
# Closed-form bound catalog


def _report(name, formula, inputs, threshold, value=None, satisfied=None):
    margin = None if value is None else threshold - value
    if satisfied is None and value is not None:
        satisfied = value < threshold
    return BoundReport(name, formula, inputs, threshold, value, satisfied, margin)


def _catalog_lattice_gas_direct(beta: float, J: float, lam: float | None = None) -> BoundReport:
    thr = math.exp(-(beta * J / 2.0 + 1.0)) / (1.0 + beta * J)
    return _report(
        "lattice_gas_direct",
        "|lam| e^(beta J/2 + 1) (1 + beta J) < 1",
        {"beta": beta, "J": J, "lam": lam},
        thr,
        value=abs(lam) if lam is not None else None,
    )


def _catalog_lattice_gas_polymer(beta: float, J: float, lam_tilde: float | None = None) -> BoundReport:
    rhs = (1.0 / (beta * J)) / (1.0 + math.sqrt(1.0 + 4.0 / (math.e * beta * J)))
    thr = rhs * math.exp(-(beta * J / 2.0 + 1.0))
    return _report(
        "lattice_gas_polymer",
        "|lam/(1+lam)| e^(beta J/2 + 1) <= (1/(beta J)) / (1 + sqrt(1 + 4/(e beta J)))",
        {"beta": beta, "J": J, "lam_tilde": lam_tilde},
        thr,
        value=abs(lam_tilde) if lam_tilde is not None else None,
    )


def _catalog_beg_disordered(d: int, X: float, Y: float) -> BoundReport:
    D = X - d * (1.0 + abs(Y))
    if D <= 0:
        raise ValueError("need X > d (1 + |Y|): the zero configuration must be the ground state")
    beta_star = math.log(d * 2.0 ** (3 * d + 4)) / D
    return _report(
        "beg_disordered",
        "beta >= ln(d 2^(3d+4)) / (X - d(1+|Y|))",
        {"d": d, "X": X, "Y": Y, "D": D},
        beta_star,
    )


def _catalog_bounded_spin(c: float, J: float, beta: float | None = None) -> BoundReport:
    thr = 0.058 / (c * c * J)
    return _report(
        "bounded_spin",
        "beta <= 0.058 / (c^2 J)",
        {"c": c, "J": J, "beta": beta},
        thr,
        value=beta,
        satisfied=None if beta is None else beta <= thr,
    )


def _catalog_unbounded_spin(x: float | None = None) -> BoundReport:
    closed = (math.e - 1.0) / (4.0 * math.e**2)
    # largest x with -ln(1 - 4 e x) <= 1, root-solved
    from scipy.optimize import brentq

    root = brentq(lambda t: -math.log1p(-4.0 * math.e * t) - 1.0, 1e-12, 1.0 / (4.0 * math.e) - 1e-12)
    assert abs(root - closed) < 1e-12
    return _report(
        "unbounded_spin",
        "beta J C^2(beta J) <= (e - 1) / (4 e^2)",
        {"x": x, "root_solved": root},
        closed,
        value=x,
        satisfied=None if x is None else x <= closed,
    )


def _catalog_many_body_hierarchy(K: float, sigma_bar: float) -> BoundReport:
    if not 0 < sigma_bar < 1:
        raise ValueError("need 0 < sigma_bar < 1")
    thr = abs(math.log(sigma_bar)) / 4.0
    return _report(
        "many_body_hierarchy",
        "K < |log sigma_bar| / 4",
        {"K": K, "sigma_bar": sigma_bar},
        thr,
        value=K,
    )


def _catalog_many_body_refined(K: float, sigma_bar: float, a: float) -> BoundReport:
    sigma = sigma_bar * math.exp(a)
    if not 0 < sigma < 1:
        raise ValueError("need sigma_bar e^a < 1")
    if abs(math.log(sigma)) <= K:
        raise ValueError("need K < |log sigma|")
    value = K * (sigma + K / (abs(math.log(sigma)) - K))
    return _report(
        "many_body_refined",
        "K (sigma + K / (|log sigma| - K)) < e^a - 1, sigma = sigma_bar e^a",
        {"K": K, "sigma_bar": sigma_bar, "a": a},
        math.exp(a) - 1.0,
        value=value,
    )


def _catalog_israel(I_a: float, I_bar: float, a: float) -> BoundReport:
    thr = math.exp(-I_bar) * a / 4.0
    return _report(
        "israel",
        "I(a) < e^(-I_bar) a / 4",
        {"I_a": I_a, "I_bar": I_bar, "a": a},
        thr,
        value=I_a,
    )


def _catalog_nbody_lattice_gas(z: float, beta: float, J: float) -> BoundReport:
    value = z * math.expm1(4.0 * beta * J * math.exp(beta * J))
    return _report(
        "nbody_lattice_gas",
        "z (exp(4 beta J e^(beta J)) - 1) < 1",
        {"z": z, "beta": beta, "J": J},
        1.0,
        value=value,
    )


def _catalog_ising_high_t_crude(beta: float, J: float, d: int) -> BoundReport:
    x = beta * J
    if not 0 < x < 1:
        raise ValueError("need 0 < beta J < 1")
    value = x ** (1.0 / 3.0) / abs(math.log(x))
    return _report(
        "ising_high_t_crude",
        "(beta J)^(1/3) / |log(beta J)| < 1 / (48 d)",
        {"beta": beta, "J": J, "d": d},
        1.0 / (48.0 * d),
        value=value,
    )


_CATALOG: dict[str, Callable[..., BoundReport]] = {
    "lattice_gas_direct": _catalog_lattice_gas_direct,
    "lattice_gas_polymer": _catalog_lattice_gas_polymer,
    "beg_disordered": _catalog_beg_disordered,
    "bounded_spin": _catalog_bounded_spin,
    "unbounded_spin": _catalog_unbounded_spin,
    "many_body_hierarchy": _catalog_many_body_hierarchy,
    "many_body_refined": _catalog_many_body_refined,
    "israel": _catalog_israel,
    "nbody_lattice_gas": _catalog_nbody_lattice_gas,
    "ising_high_t_crude": _catalog_ising_high_t_crude,
}


def bounds_catalog(which: str, **params) -> BoundReport:
    """Evaluate one of the named closed-form thresholds; see _CATALOG keys."""
    try:
        fn = _CATALOG[which]
    except KeyError:
        raise ValueError(f"unknown bound {which!r}; known: {', '.join(sorted(_CATALOG))}") from None
    return fn(**params)


def catalog_names() -> tuple[str, ...]:
    return tuple(sorted(_CATALOG))
