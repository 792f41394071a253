"""2D Ising model at zero field: exact sums and both polymer expansions.

Everything is desk scale and cross-checked three ways.  The partition
function on an L x L box is summed over all 2^(L^2) spin configurations
(chunked bit arithmetic), reproduced at high temperature from the even
subgraphs of the box (spanned by the plaquette cycle basis, 2^((L-1)^2)
elements) and at low temperature from the contour representation under +
boundary (every configuration maps to a family of dual-lattice contours and
back).  The duality map phi(beta) = -ln(tanh beta)/2 exchanges the two
activities on the same animal family; its fixed point is the critical
coupling ln(1 + sqrt 2)/2.

J = 1 by convention throughout: beta carries the scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

BRUTE_CAP = 5
BRUTE_CAP_HARD = 6
HIGH_T_CAP = 6
_CHUNK = 1 << 20


def _site(r: int, c: int, L: int) -> int:
    return r * L + c


def internal_bonds(L: int) -> list[tuple[int, int]]:
    """Nearest-neighbour site pairs inside the L x L box; 2L(L-1) of them."""
    bonds = []
    for r in range(L):
        for c in range(L):
            if c + 1 < L:
                bonds.append((_site(r, c, L), _site(r, c + 1, L)))
            if r + 1 < L:
                bonds.append((_site(r, c, L), _site(r + 1, c, L)))
    return bonds


def boundary_multiplicity(L: int) -> list[int]:
    """Number of outside neighbours per site (0 in the bulk, up to 2 at corners)."""
    mult = [0] * (L * L)
    for r in range(L):
        for c in range(L):
            k = (r == 0) + (r == L - 1) + (c == 0) + (c == L - 1)
            mult[_site(r, c, L)] = k
    return mult


def boundary_pair_count(L: int) -> int:
    """Bonds with at least one endpoint outside: 4L; with both inside: 2L(L-1)."""
    return 4 * L


def _config_chunks(L: int):
    total = 1 << (L * L)
    for lo in range(0, total, _CHUNK):
        yield np.arange(lo, min(lo + _CHUNK, total), dtype=np.uint64)


def _opposite_bond_counts(configs: np.ndarray, L: int, boundary: str) -> np.ndarray:
    """Per configuration: the number of opposite-spin nearest-neighbour pairs,
    counting the 4L boundary pairs against fixed outside spins for +/-."""
    opp = np.zeros(configs.shape, dtype=np.int64)
    for i, j in internal_bonds(L):
        opp += ((configs >> np.uint64(i)) ^ (configs >> np.uint64(j))).astype(np.int64) & 1
    if boundary in ("plus", "minus"):
        outside_bit = 0 if boundary == "plus" else 1
        for x, k in enumerate(boundary_multiplicity(L)):
            if k:
                bit = (configs >> np.uint64(x)).astype(np.int64) & 1
                opp += k * (bit ^ outside_bit)
    elif boundary != "free":
        raise ValueError("boundary must be free, plus or minus")
    return opp


def _energies(configs: np.ndarray, L: int, beta: float, J: float, boundary: str) -> np.ndarray:
    """-beta H per configuration: aligned minus opposite pairs, times beta J."""
    opp = _opposite_bond_counts(configs, L, boundary)
    n_pairs = 2 * L * (L - 1) + (boundary_pair_count(L) if boundary != "free" else 0)
    return beta * J * (n_pairs - 2 * opp)


def brute_force_Z(L: int, beta: float, J: float = 1.0, boundary: str = "free",
                  cap: int = BRUTE_CAP) -> float:
    """Exact partition function by summation over all 2^(L^2) configurations."""
    if L > min(cap, BRUTE_CAP_HARD):
        raise ValueError(f"brute force capped at L={min(cap, BRUTE_CAP_HARD)}")
    # exactly-rounded accumulation: the result is independent of the
    # enumeration order, so symmetric boundaries match bit for bit
    parts = []
    for configs in _config_chunks(L):
        parts.append(np.exp(_energies(configs, L, beta, J, boundary)))
    return math.fsum(x for part in parts for x in part.tolist())


# ---------------------------------------------------------------------------
# High-temperature expansion: even subgraphs from the plaquette cycle basis


def _edge_index(L: int) -> dict[tuple[int, int], int]:
    return {b: k for k, b in enumerate(internal_bonds(L))}


@lru_cache(maxsize=None)
def even_subgraph_size_counts(L: int, cap: int = HIGH_T_CAP) -> tuple[int, ...]:
    """count[m] = number of even-degree edge subsets of the L x L box with m
    edges, generated as the span of the (L-1)^2 plaquette cycles."""
    if L > cap:
        raise ValueError(f"even-subgraph enumeration capped at L={cap}")
    eidx = _edge_index(L)
    plaquettes = []
    for r in range(L - 1):
        for c in range(L - 1):
            mask = 0
            mask |= 1 << eidx[(_site(r, c, L), _site(r, c + 1, L))]
            mask |= 1 << eidx[(_site(r + 1, c, L), _site(r + 1, c + 1, L))]
            mask |= 1 << eidx[(_site(r, c, L), _site(r + 1, c, L))]
            mask |= 1 << eidx[(_site(r, c + 1, L), _site(r + 1, c + 1, L))]
            plaquettes.append(mask)
    k = len(plaquettes)
    counts = [0] * (2 * L * (L - 1) + 1)
    current = 0
    counts[0] += 1
    # Gray-code walk over the cycle space: one XOR per subset
    for t in range(1, 1 << k):
        current ^= plaquettes[(t & -t).bit_length() - 1]
        counts[current.bit_count()] += 1
    return tuple(counts)


def high_T_polymer_Z(L: int, beta: float, J: float = 1.0) -> tuple[float, float]:
    """(Xi, Z) from the even-subgraph expansion with free boundary:
    Xi = sum over even subsets of tanh(beta J)^(edges) and
    Z = cosh(beta J)^(2L(L-1)) 2^(L^2) Xi."""
    counts = even_subgraph_size_counts(L)
    t = math.tanh(beta * J)
    xi = math.fsum(c * t**m for m, c in enumerate(counts) if c)
    z = math.cosh(beta * J) ** (2 * L * (L - 1)) * 2.0 ** (L * L) * xi
    return xi, z


# ---------------------------------------------------------------------------
# Low-temperature expansion: contours on the dual lattice, + boundary


def _dual_edge_of_bond(r1: int, c1: int, r2: int, c2: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Dual segment crossing the primal bond; dual points carry doubled
    half-integer coordinates, so the dual vertex (r+1/2, c+1/2) is (2r+1, 2c+1)."""
    if r1 == r2:  # horizontal bond -> vertical dual segment
        c = max(c1, c2)
        return ((2 * r1 - 1, 2 * c - 1), (2 * r1 + 1, 2 * c - 1))
    c = c1
    r = max(r1, r2)
    return ((2 * r - 1, 2 * c - 1), (2 * r - 1, 2 * c + 1))


def spins_to_contours(spins: np.ndarray, L: int) -> list[frozenset]:
    """Contour decomposition of a +/-1 spin array under + boundary.

    A dual edge is drawn across every opposite-spin pair (boundary pairs read
    the outside as +1); connected components share dual vertices.
    """
    spins = np.asarray(spins).reshape(L, L)

    def spin_at(r: int, c: int) -> int:
        if 0 <= r < L and 0 <= c < L:
            return int(spins[r, c])
        return 1

    edges = []
    for r in range(L + 1):
        for c in range(L):
            if spin_at(r - 1, c) != spin_at(r, c):  # vertical primal bond (r-1,c)-(r,c)
                edges.append(_dual_edge_of_bond(r - 1, c, r, c))
    for r in range(L):
        for c in range(L + 1):
            if spin_at(r, c - 1) != spin_at(r, c):
                edges.append(_dual_edge_of_bond(r, c - 1, r, c))
    # union-find over shared dual vertices
    parent = list(range(len(edges)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_vertex: dict[tuple[int, int], int] = {}
    for k, (a, b) in enumerate(edges):
        for v in (a, b):
            if v in by_vertex:
                ra, rb = find(by_vertex[v]), find(k)
                if ra != rb:
                    parent[ra] = rb
            else:
                by_vertex[v] = k
    groups: dict[int, list] = {}
    for k, e in enumerate(edges):
        groups.setdefault(find(k), []).append(e)
    return [frozenset(g) for g in groups.values()]


def contours_to_spins(contours, L: int) -> np.ndarray:
    """Invert the contour map under + boundary: the spin at a site is +1 if a
    path from outside crosses an even number of contour edges."""
    crossing = set()
    for g in contours:
        crossing.update(g)
    spins = np.ones((L, L), dtype=np.int64)
    for r in range(L):
        sign = 1
        for c in range(L):
            if _dual_edge_of_bond(r, c - 1, r, c) in crossing:
                sign = -sign
            spins[r, c] = sign
    return spins


@dataclass
class ContourReport:
    xi_contour: float
    z_reconstructed: float
    boundary_pairs: int  # 2L(L+1), pairs meeting the box
    energy_identity_ok: bool
    min_contour_size: int | None


def low_T_contour_Z(L: int, beta: float, J: float = 1.0, cap: int = BRUTE_CAP) -> ContourReport:
    """Contour partition function under + boundary.

    Extracts the opposite-pair count B- of every configuration, verifies the
    energy identity H = -J Btilde + 2 J B- with Btilde = 2L(L+1) per
    configuration, and sums e^(-2 beta J B-); the reconstruction
    e^(beta J Btilde) Xi equals the brute-force + boundary sum.
    """
    if L > min(cap, BRUTE_CAP_HARD):
        raise ValueError(f"contour extraction capped at L={min(cap, BRUTE_CAP_HARD)}")
    btilde = 2 * L * (L + 1)
    xi = 0.0
    for configs in _config_chunks(L):
        opp = _opposite_bond_counts(configs, L, "plus")
        xi += float(np.exp(-2.0 * beta * J * opp.astype(float)).sum())
    z = math.exp(beta * J * btilde) * xi
    # tie the geometric contour extraction to the Hamiltonian: per spin
    # configuration, the direct pair-sum energy must equal
    # -J Btilde + 2 J (total contour perimeter); exhaustive for L <= 3,
    # sampled beyond
    identity_ok = True
    min_size = None
    sizes = []
    if L <= 3:
        sample = range(1 << (L * L))
    else:
        rng = np.random.default_rng(0)
        sample = rng.integers(0, 1 << (L * L), size=512).tolist()
    bonds = internal_bonds(L)
    mult = boundary_multiplicity(L)
    for cfg in sample:
        spins = np.array([1 - 2 * (int(cfg) >> k & 1) for k in range(L * L)])
        h_spin = -J * (
            sum(spins[i] * spins[j] for i, j in bonds)
            + sum(k * spins[x] for x, k in enumerate(mult))
        )
        contours = spins_to_contours(spins, L)
        perimeter = sum(len(g) for g in contours)
        if h_spin != -J * btilde + 2 * J * perimeter:
            identity_ok = False
        sizes.extend(len(g) for g in contours)
    if sizes:
        min_size = min(sizes)
    return ContourReport(xi, z, btilde, identity_ok, min_size)


# ---------------------------------------------------------------------------
# Duality


def dual_coupling(beta: float) -> float:
    """phi(beta) = -ln(tanh beta) / 2; e^(-2 phi) = tanh(beta) identically."""
    t = math.tanh(beta)
    if not 0.0 < t < 1.0:
        raise ValueError("need tanh(beta) in (0, 1)")
    return -0.5 * math.log(t)


def critical_coupling() -> float:
    """Fixed point of the duality map: ln(1 + sqrt 2) / 2."""
    return 0.5 * math.log(1.0 + math.sqrt(2.0))


@dataclass
class DualityReport:
    beta: float
    phi_beta: float
    xi_high: float
    xi_low_at_dual: float
    identity_residual: float    # max |e^(-2 phi) - tanh beta| over probes
    involution_residual: float  # max |phi(phi(b)) - b| over probes
    beta_c: float
    fixed_point_residual: float


def duality_check(L: int, beta: float, J: float = 1.0,
                  probes: tuple[float, ...] = (0.2, 0.5, 1.0)) -> DualityReport:
    """Exchange of the two expansions on the closed even subgraphs of the box.

    The same animal family is summed twice: with high-temperature activity
    tanh(beta J)^|g| and with low-temperature activity e^(-2 phi(beta J) |g|).
    Since e^(-2 phi) = tanh identically the two sums coincide term by term.
    """
    bj = beta * J
    counts = even_subgraph_size_counts(L)
    t = math.tanh(bj)
    u = math.exp(-2.0 * dual_coupling(bj))
    xi_high = math.fsum(c * t**m for m, c in enumerate(counts) if c)
    xi_low = math.fsum(c * u**m for m, c in enumerate(counts) if c)
    ident = max(abs(math.exp(-2.0 * dual_coupling(b)) - math.tanh(b)) for b in probes)
    invol = max(abs(dual_coupling(dual_coupling(b)) - b) for b in probes)
    beta_c = brentq(lambda b: dual_coupling(b) - b, 0.2, 1.0, xtol=1e-15)
    return DualityReport(
        beta=bj,
        phi_beta=dual_coupling(bj),
        xi_high=xi_high,
        xi_low_at_dual=xi_low,
        identity_residual=ident,
        involution_residual=invol,
        beta_c=beta_c,
        fixed_point_residual=abs(dual_coupling(beta_c) - beta_c),
    )


# ---------------------------------------------------------------------------
# Magnetization


def peierls_g(beta: float, J: float = 1.0) -> float:
    """Contour-probability bound g = x^4 (4 - 3x) / (1 - x)^2, x = 3 e^(-2 beta J).

    Valid on x < 1; the + boundary site magnetization obeys <s> >= 1 - 2g."""
    x = 3.0 * math.exp(-2.0 * beta * J)
    if x >= 1.0:
        raise ValueError("bound needs 3 e^(-2 beta J) < 1")
    return x**4 * (4.0 - 3.0 * x) / (1.0 - x) ** 2


@dataclass
class MagnetizationReport:
    L: int
    beta: float
    boundary: str
    per_site: np.ndarray
    mean: float
    low_t_bound: float | None       # 1 - 2 g(beta) when x < 0.4795
    low_t_bound_ok: bool | None
    high_t_site_bounds_ok: bool | None  # interior decay bound when 3 tanh(beta J) < 1


def _site_boundary_distance(r: int, c: int, L: int) -> int:
    return 1 + min(r, c, L - 1 - r, L - 1 - c)


def magnetization(L: int, beta: float, J: float = 1.0, boundary: str = "free",
                  cap: int = BRUTE_CAP) -> MagnetizationReport:
    """Exact per-site expectations by enumeration, with the two rigorous
    bound checks attached.

    For L <= 4 the sums are accumulated with exact rounding (fsum), so the
    symmetries hold exactly: free boundary gives 0.0 and the minus boundary
    gives the exact negation of the plus boundary.
    """
    if L > min(cap, BRUTE_CAP_HARD):
        raise ValueError(f"magnetization capped at L={min(cap, BRUTE_CAP_HARD)}")
    n = L * L
    exact = L <= 4
    if exact:
        weights = []
        spins_bits = []
        for configs in _config_chunks(L):
            weights.append(np.exp(_energies(configs, L, beta, J, boundary)))
            spins_bits.append(configs)
        w = np.concatenate(weights)
        cfgs = np.concatenate(spins_bits)
        z = math.fsum(w.tolist())
        per_site = np.empty(n)
        for x in range(n):
            sigma = 1.0 - 2.0 * ((cfgs >> np.uint64(x)).astype(np.int64) & 1)
            per_site[x] = math.fsum((sigma * w).tolist()) / z
    else:
        z = 0.0
        sums = np.zeros(n)
        for configs in _config_chunks(L):
            w = np.exp(_energies(configs, L, beta, J, boundary))
            z += float(w.sum())
            for x in range(n):
                sigma = 1.0 - 2.0 * ((configs >> np.uint64(x)).astype(np.int64) & 1)
                sums[x] += float((sigma * w).sum())
        per_site = sums / z
    mean = math.fsum(per_site.tolist()) / n

    low_bound = low_ok = None
    x_beta = 3.0 * math.exp(-2.0 * beta * J)
    if boundary == "plus" and x_beta < 0.4795:
        g = peierls_g(beta, J)
        low_bound = 1.0 - 2.0 * g
        low_ok = bool(mean >= low_bound - 1e-12)

    high_ok = None
    t3 = 3.0 * math.tanh(beta * J)
    if boundary == "plus" and t3 < 1.0:
        high_ok = True
        for r in range(L):
            for c in range(L):
                d = _site_boundary_distance(r, c, L)
                bound = (100.0 / 3.0) * t3**d / (1.0 - t3) ** 3
                if per_site[_site(r, c, L)] > bound + 1e-12:
                    high_ok = False
    return MagnetizationReport(L, beta, boundary, per_site, mean, low_bound, low_ok, high_ok)


# ---------------------------------------------------------------------------
# Animal counts and coupling thresholds


def closed_animals_through_origin(max_edges: int = 8) -> dict[int, int]:
    """Exact counts of connected even-degree edge sets through the origin.

    Enumerates closed non-edge-repeating walks from the origin (every such
    edge set carries an Eulerian circuit based at any of its vertices) and
    deduplicates by edge set.  Counts are per size in {4, 6, ..., max_edges}.
    """
    steps = ((1, 0), (-1, 0), (0, 1), (0, -1))
    found: set[frozenset] = set()
    origin = (0, 0)

    def rec(v, used: frozenset, depth: int):
        if v == origin and used:
            found.add(used)
        if depth == max_edges:
            return
        for dx, dy in steps:
            w = (v[0] + dx, v[1] + dy)
            e = frozenset((v, w))
            if e in used:
                continue
            rec(w, used | {e}, depth + 1)

    rec(origin, frozenset(), 0)
    counts: dict[int, int] = {}
    for g in found:
        counts[len(g)] = counts.get(len(g), 0) + 1
    return counts


def _animal_quartic_root(a: float = 0.21) -> float:
    """Root of e^(4a) y^4 + (e^(2a) - e^a) y - (e^a - 1) = 0 on (0, 1):
    the largest admissible value of 3*(activity) in the high- and
    low-temperature counting conditions."""
    f = lambda y: math.exp(4 * a) * y**4 + (math.exp(2 * a) - math.exp(a)) * y - (math.exp(a) - 1.0)
    return brentq(f, 1e-9, 1.0, xtol=1e-12)


@dataclass
class ThresholdReport:
    a: float
    activity_root: float   # root y of the quartic, ~0.4576
    beta0: float           # high-T free energy: atanh(root/3)
    beta1: float           # low-T free energy: ln(3/root)/2
    beta0_prime: float     # high-T magnetization decay: atanh(1/3)
    beta1_prime: float     # low-T magnetization: g(beta) = 1/2
    g_root_x: float        # x with x^4 (4-3x)/(1-x)^2 = 1/2, ~0.4795
    counts: dict[int, int]


def animal_counts_and_thresholds(a: float = 0.21) -> ThresholdReport:
    """Exact small-animal counts plus the four coupling thresholds, all by
    root-solving the scalar counting inequalities with C_n <= 3^n."""
    counts = closed_animals_through_origin(8)
    for m, c in counts.items():
        if c > 3**m:
            raise AssertionError(f"count {c} at size {m} violates the 3^m walk bound")
    y = _animal_quartic_root(a)
    beta0 = math.atanh(y / 3.0)
    beta1 = 0.5 * math.log(3.0 / y)
    beta0p = math.atanh(1.0 / 3.0)
    g_root = brentq(lambda x: x**4 * (4.0 - 3.0 * x) / (1.0 - x) ** 2 - 0.5, 1e-6, 0.9, xtol=1e-12)
    beta1p = 0.5 * math.log(3.0 / g_root)
    return ThresholdReport(a, y, beta0, beta1, beta0p, beta1p, g_root, counts)
