"""Radial pair-potential families and their stability analysis.

Families cover the standard shapes: a pure hard core, a square barrier with a
shallow well, the barrier-11 / well-(-1) step potential whose close-packed
clusters break stability, a power-law core-plus-tail class, the classical
12-6 potential, and user-supplied step tables or callables.

Stability is probed, never proved: ``stability_estimate`` reports a certified
lower bound on B_n together with the witness configuration that achieves it.
The classification routines certify the opposite direction through the
computable envelope bound mu_hat(a) = C_d / a^d (cube packing) and, for thin
negative shells in d = 3, the 12-point kissing bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.spatial import cKDTree

INF = math.inf

FAMILIES = ("hard_core", "square_well", "ruelle", "lj_type", "lennard_jones", "step_table", "custom")


class DivergentTailError(ValueError):
    """The potential tail is not absolutely integrable in this dimension."""


@dataclass(frozen=True)
class PairPotentialSpec:
    """A radial pair potential: family tag, parameters, space dimension."""

    family: str
    params: tuple[tuple[str, object], ...]
    dimension: int = 3

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    @property
    def p(self) -> dict:
        return dict(self.params)

    def __call__(self, r: float) -> float:
        return potential_eval(self, r)

    def to_text(self) -> str:
        if self.family == "custom":
            raise ValueError("callable potentials have no text form")
        lines = [f"family = {self.family}", f"dimension = {self.dimension}"]
        for k, v in self.params:
            if self.family == "step_table":
                lines.append(f"{k} = {','.join(repr(float(x)) for x in v)}")
            else:
                lines.append(f"{k} = {v!r}")
        return "\n".join(lines)


def spec_from_text(text: str) -> PairPotentialSpec:
    fields: dict[str, str] = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        k, _, v = line.partition("=")
        fields[k.strip()] = v.strip()
    family = fields.pop("family")
    dimension = int(fields.pop("dimension", "3"))
    if family == "step_table":
        radii = tuple(float(x) for x in fields["radii"].split(","))
        values = tuple(float(x) for x in fields["values"].split(","))
        return step_table(radii, values, dimension=dimension)
    params = tuple((k, float(v)) for k, v in sorted(fields.items()))
    return PairPotentialSpec(family, params, dimension)


def hard_core(a: float, dimension: int = 3) -> PairPotentialSpec:
    """V = +inf for r <= a, 0 beyond."""
    if a <= 0:
        raise ValueError("hard-core radius must be positive")
    return PairPotentialSpec("hard_core", (("a", a),), dimension)


def square_well(A: float, R: float, delta: float, dimension: int = 3) -> PairPotentialSpec:
    """V = A on [0, R], -1 on (R, R+delta], 0 beyond."""
    return PairPotentialSpec("square_well", (("A", A), ("R", R), ("delta", delta)), dimension)


def ruelle(R: float = 1.0, delta: float = 0.5, dimension: int = 3) -> PairPotentialSpec:
    """V = 11 on [0, R-delta), -1 on [R-delta, R+delta], 0 beyond.

    Finite range and bounded, yet unstable: close-packed clusters with
    nearest-neighbour spacing R have more than 11n/2 bonds once n is large.
    """
    if not 0 < delta < R:
        raise ValueError("need 0 < delta < R")
    return PairPotentialSpec("ruelle", (("R", R), ("delta", delta)), dimension)


def lj_type(c1: float = 1.0, c2: float = 1.0, eps: float = 1.0, a: float = 1.0,
            dimension: int = 3) -> PairPotentialSpec:
    """Power-law core and tail: V = c1 r^-(d+eps) for r <= a, -c2 r^-(d+eps) beyond.

    The hardest member of the core/tail class: the core grows like
    xi(r) = c1 r^-(d+eps) with xi(r) r^d -> inf, the tail is integrable.
    """
    if eps <= 0:
        raise ValueError("need eps > 0 for an integrable tail")
    return PairPotentialSpec("lj_type", (("a", a), ("c1", c1), ("c2", c2), ("eps", eps)), dimension)


def lennard_jones(epsilon: float = 1.0, sigma: float = 1.0, dimension: int = 3) -> PairPotentialSpec:
    """Classical 12-6 potential eps*((sigma/r)^12 - 2 (sigma/r)^6), minimum -eps at sigma."""
    return PairPotentialSpec("lennard_jones", (("epsilon", epsilon), ("sigma", sigma)), dimension)


def step_table(radii: Sequence[float], values: Sequence[float], dimension: int = 3) -> PairPotentialSpec:
    """Piecewise-constant radial table: V = values[k] on the first bin with
    r <= radii[k]; 0 beyond the last radius.  Radii must be increasing."""
    radii = tuple(float(r) for r in radii)
    values = tuple(float(v) for v in values)
    if len(radii) != len(values) or not radii:
        raise ValueError("radii and values must be equal-length and nonempty")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing")
    return PairPotentialSpec("step_table", (("radii", radii), ("values", values)), dimension)


def custom(fn: Callable[[float], float], dimension: int = 3,
           support: float | None = None, nonnegative: bool = False) -> PairPotentialSpec:
    """Arbitrary radial callable; ``support`` marks a compact support radius."""
    return PairPotentialSpec(
        "custom", (("fn", fn), ("support", support), ("nonnegative", nonnegative)), dimension
    )


def attractive_well(b: float, delta: float, dimension: int = 3) -> PairPotentialSpec:
    """V = -b for r <= delta, 0 beyond: bounded, tempered, unstable for b > 0."""
    return step_table((delta,), (-b,), dimension)


def potential_eval(spec: PairPotentialSpec, r: float) -> float:
    """Radial value at separation r >= 0; +inf inside a hard core."""
    if r < 0:
        raise ValueError("separation must be nonnegative")
    p = spec.p
    f = spec.family
    if f == "hard_core":
        return INF if r <= p["a"] else 0.0
    if f == "square_well":
        if r <= p["R"]:
            return p["A"]
        if r <= p["R"] + p["delta"]:
            return -1.0
        return 0.0
    if f == "ruelle":
        if r < p["R"] - p["delta"]:
            return 11.0
        if r <= p["R"] + p["delta"]:
            return -1.0
        return 0.0
    if f == "lj_type":
        if r == 0.0:
            return INF
        power = spec.dimension + p["eps"]
        if r <= p["a"]:
            return p["c1"] / r**power
        return -p["c2"] / r**power
    if f == "lennard_jones":
        if r == 0.0:
            return INF
        x = (p["sigma"] / r) ** 6
        return p["epsilon"] * (x * x - 2.0 * x)
    if f == "step_table":
        for rk, vk in zip(p["radii"], p["values"]):
            if r <= rk:
                return vk
        return 0.0
    if f == "custom":
        return p["fn"](r)
    raise AssertionError(f)


def is_nonnegative(spec: PairPotentialSpec) -> bool:
    p = spec.p
    f = spec.family
    if f == "hard_core":
        return True
    if f == "square_well" or f == "ruelle":
        return False
    if f == "lj_type":
        return p["c2"] == 0
    if f == "lennard_jones":
        return p["epsilon"] == 0
    if f == "step_table":
        return all(v >= 0 for v in p["values"])
    if f == "custom":
        return bool(p["nonnegative"])
    raise AssertionError(f)


def length_scale(spec: PairPotentialSpec) -> float:
    p = spec.p
    f = spec.family
    if f == "hard_core":
        return p["a"]
    if f == "square_well":
        return p["R"] + p["delta"]
    if f == "ruelle":
        return p["R"] + p["delta"]
    if f == "lj_type":
        return p["a"]
    if f == "lennard_jones":
        return p["sigma"]
    if f == "step_table":
        return p["radii"][-1]
    if f == "custom":
        return p["support"] or 1.0
    raise AssertionError(f)


def _breakpoints(spec: PairPotentialSpec) -> list[float]:
    p = spec.p
    f = spec.family
    if f == "hard_core":
        return [p["a"]]
    if f == "square_well":
        return [p["R"], p["R"] + p["delta"]]
    if f == "ruelle":
        return [p["R"] - p["delta"], p["R"] + p["delta"]]
    if f == "lj_type":
        return [p["a"]]
    if f == "lennard_jones":
        s = p["sigma"]
        return [s * 2 ** (-1 / 6), s, 2 * s]
    if f == "step_table":
        return list(p["radii"])
    if f == "custom":
        return [p["support"]] if p["support"] else [1.0]
    raise AssertionError(f)


def _tail(spec: PairPotentialSpec) -> tuple[float, float] | None:
    """(decay power, coefficient) of |V| ~ coeff * r^-power, or None if the
    potential vanishes beyond the last breakpoint."""
    f = spec.family
    p = spec.p
    if f in ("hard_core", "square_well", "ruelle", "step_table"):
        return None
    if f == "lj_type":
        return (spec.dimension + p["eps"], p["c2"])
    if f == "lennard_jones":
        return (6.0, 2.0 * p["epsilon"] * p["sigma"] ** 6)
    if f == "custom":
        return None if p["support"] else (0.0, INF)
    raise AssertionError(f)


def sphere_surface(d: int) -> float:
    """Surface area of the unit sphere in R^d."""
    return 2.0 * math.pi ** (d / 2) / math.gamma(d / 2)


def configuration_energy(spec: PairPotentialSpec, points: np.ndarray, beta: float = 1.0) -> float:
    """Total pair energy beta * sum V(|x_i - x_j|) of a configuration."""
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            v = potential_eval(spec, float(np.linalg.norm(pts[i] - pts[j])))
            if v == INF:
                return INF
            total += v
    return beta * total


@dataclass
class StabilityReport:
    """Certified lower bound on B_n with the witness that achieves it."""

    n: int
    estimate: float
    witness: np.ndarray | None
    iterations: int
    seed: int
    budget: int

    @property
    def bbar_estimate(self) -> float:
        """The (n-1)-normalised variant n/(n-1) * B_n, never below B_n."""
        return self.n / (self.n - 1) * self.estimate

    def recomputed(self, spec: PairPotentialSpec) -> float:
        if self.witness is None:
            return 0.0
        return -configuration_energy(spec, self.witness) / self.n


def stability_estimate(spec: PairPotentialSpec, n: int, budget: int = 40,
                       seed: int = 0, sweeps: int = 40) -> StabilityReport:
    """Lower bound on B_n = sup over configurations of -U/n.

    Multistart random placement in a box of side four length scales followed
    by coordinate descent; never more than a lower bound.  For nonnegative
    potentials the exact value 0 is returned.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if is_nonnegative(spec):
        return StabilityReport(n, 0.0, None, 0, seed, budget)
    d = spec.dimension
    scale = length_scale(spec)
    side = 4.0 * scale
    children = np.random.SeedSequence(seed).spawn(budget)
    best = -INF
    best_pts = None
    total_iters = 0

    def energy(pts):
        return configuration_energy(spec, pts)

    steps = [scale * f for f in (0.6, 0.25, 0.1, 0.04, 0.015, 0.005, 0.002)]
    for k in range(budget):
        rng = np.random.default_rng(children[k])
        pts = rng.uniform(0.0, side, size=(n, d))
        u = energy(pts)
        tries = 0
        while u == INF and tries < 50:
            pts = rng.uniform(0.0, side, size=(n, d))
            u = energy(pts)
            tries += 1
        if u == INF:
            continue
        # greedy global contraction toward the centroid; cheap and decisive
        # for collapse-type minima, harmless otherwise
        for f in (0.85, 0.7, 0.55, 0.4, 0.3, 0.2, 0.12, 0.06, 0.03):
            center = pts.mean(axis=0)
            trial = center + (pts - center) * f
            ut = energy(trial)
            if ut < u:
                pts, u = trial, ut
        for sweep in range(sweeps):
            improved = False
            for i in range(n):
                for axis in range(d):
                    for step in steps:
                        for sgn in (+1.0, -1.0):
                            trial = pts.copy()
                            trial[i, axis] += sgn * step
                            ut = energy(trial)
                            if ut < u:
                                pts, u = trial, ut
                                improved = True
            total_iters += 1
            if not improved:
                break
        val = -u / n
        if val > best:
            best, best_pts = val, pts
    best = max(best, 0.0)
    if best == 0.0:
        best_pts = None
    return StabilityReport(n, best, best_pts, total_iters, seed, budget)


# ---------------------------------------------------------------------------
# Close-packed witness and the divergence it drives


@dataclass
class FccWitness:
    points: np.ndarray
    bond_count: int
    n: int
    shells: int


def fcc_points(shells: int) -> np.ndarray:
    """Face-centred-cubic sites with nearest-neighbour distance 1 inside a
    ball of radius ``shells``."""
    if shells == 0:
        return np.zeros((1, 3))
    m = int(math.ceil(shells * math.sqrt(2.0))) + 1
    axis = np.arange(-m, m + 1)
    I, J, K = np.meshgrid(axis, axis, axis, indexing="ij")
    pts = np.stack([I.ravel(), J.ravel(), K.ravel()], axis=1)
    pts = pts[(pts.sum(axis=1) % 2) == 0] / math.sqrt(2.0)
    keep = np.linalg.norm(pts, axis=1) <= shells + 1e-9
    return pts[keep]


def fcc_witness(shells: int) -> FccWitness:
    """Close-packed cluster and its count of distance-1 bonds.

    bond_count / n tends to 6 from below as the ball grows; a cluster with
    bond_count > 11 n / 2 witnesses the instability of the barrier-11 step
    potential.
    """
    if shells < 0:
        raise ValueError("need shells >= 0")
    pts = fcc_points(shells)
    if len(pts) < 2:
        return FccWitness(pts, 0, len(pts), shells)
    tree = cKDTree(pts)
    bonds = tree.query_pairs(1.0 + 1e-9)
    return FccWitness(pts, len(bonds), len(pts), shells)


def fcc_instability_sweep(max_shells: int = 14) -> tuple[list[FccWitness], FccWitness | None]:
    """Witnesses for shells 1..max_shells and the first with bond_count > 11n/2."""
    records = []
    first = None
    for s in range(1, max_shells + 1):
        w = fcc_witness(s)
        records.append(w)
        if first is None and 2 * w.bond_count > 11 * w.n:
            first = w
    return records, first


def ruelle_certificate(max_shells: int = 14) -> tuple[int, float]:
    """(n, eps) with a close-packed n-cluster holding more than 11n/2 + eps bonds."""
    _, first = fcc_instability_sweep(max_shells)
    if first is None:
        raise RuntimeError(
            f"no instability certificate up to {max_shells} shells: "
            "no cluster with bond_count > 11 n / 2"
        )
    return first.n, first.bond_count - 5.5 * first.n


@dataclass
class RuelleDivergence:
    ratios: list[float]
    log_terms: list[float]
    n: int
    eps: float

    @property
    def last_ratio(self) -> float:
        return self.ratios[-1]


def ruelle_divergence_witness(lam: float, beta: float, n_fixed: int | None = None,
                              s_max: int = 200, eps: float | None = None,
                              delta: float = 0.5, max_shells: int = 14) -> RuelleDivergence:
    """Consecutive ratios of the divergent minorant of the step-potential
    partition function.

    The s-th term is a_s = [lam V_delta e^(11 beta / 2)]^(s n) / (s n)! times
    e^(beta eps s^2), evaluated in log space; V_delta is the volume of the
    ball of radius delta/2.  With eps > 0 the ratios eventually grow without
    bound; with eps = 0 the factorial wins and they decay to zero.

    If ``eps`` (and ``n_fixed``) are omitted they are derived from the
    close-packed sweep; failure to certify raises.
    """
    if eps is None or n_fixed is None:
        n_cert, eps_cert = ruelle_certificate(max_shells)
        n_fixed = n_cert if n_fixed is None else n_fixed
        eps = eps_cert if eps is None else eps
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if lam <= 0 or beta <= 0 or n_fixed < 1 or s_max < 2:
        raise ValueError("need lam > 0, beta > 0, n >= 1, s_max >= 2")
    v_delta = sphere_volume(3, delta / 2.0)
    base = math.log(lam * v_delta) + 11.0 * beta / 2.0
    log_terms = []
    for s in range(1, s_max + 1):
        log_terms.append(s * n_fixed * base - math.lgamma(s * n_fixed + 1) + beta * eps * s * s)
    ratios = [math.exp(min(log_terms[k + 1] - log_terms[k], 700.0))
              for k in range(len(log_terms) - 1)]
    return RuelleDivergence(ratios, log_terms, n_fixed, eps)


def sphere_volume(n: int, R: float) -> float:
    """Volume of the n-ball of radius R: pi^(n/2) / Gamma(n/2 + 1) * R^n."""
    if n < 1:
        raise ValueError("need n >= 1")
    if R < 0:
        raise ValueError("need R >= 0")
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1) * R**n


# ---------------------------------------------------------------------------
# Regularity integrals


@dataclass
class RegularityIntegrals:
    c: float        # integral of |e^(-beta V) - 1|
    c_tilde: float  # integral of |e^(-beta |V|) - 1|
    beta: float
    dimension: int


def regularity_integrals(spec: PairPotentialSpec, beta: float,
                         d: int | None = None, abs_tol: float = 1e-8) -> RegularityIntegrals:
    """The two f-function integrals over R^d by radial adaptive quadrature.

    c_tilde <= c always, with equality exactly for nonnegative potentials.
    Raises DivergentTailError when the tail is not absolutely integrable.
    """
    d = spec.dimension if d is None else d
    if d not in (1, 2, 3):
        raise ValueError("dimension must be 1, 2 or 3")
    surf = sphere_surface(d)
    tail = _tail(spec)
    pts = sorted(set(b for b in _breakpoints(spec) if b and b > 0))
    if tail is None:
        r_max = pts[-1] if pts else length_scale(spec)
        segments = [0.0] + pts
        infinite_tail = False
    else:
        power, coeff = tail
        if coeff == INF or power <= d:
            raise DivergentTailError(
                f"tail decay r^-{power} is not absolutely integrable in d={d}"
            )
        # cut where the linearised tail contribution drops below target
        r_cut = max(pts[-1] if pts else 1.0,
                    (4.0 * beta * coeff * surf / ((power - d) * 1e-12)) ** (1.0 / (power - d)))
        segments = [0.0] + pts + [10.0 * (pts[-1] if pts else 1.0), r_cut]
        segments = sorted(set(segments))
        infinite_tail = True

    def integrate(f) -> float:
        total = 0.0
        for a, b in zip(segments[:-1], segments[1:]):
            val, _ = quad(f, a, b, limit=400, epsabs=abs_tol * 1e-3, epsrel=1e-12)
            total += val
        if infinite_tail:
            val, _ = quad(f, segments[-1], np.inf, limit=400, epsabs=abs_tol * 1e-3)
            total += val
        return total

    def f_c(r: float) -> float:
        v = beta * potential_eval(spec, r)
        base = 1.0 if v == INF else abs(math.expm1(-v))
        return base * r ** (d - 1)

    def f_ct(r: float) -> float:
        v = beta * potential_eval(spec, r)
        base = 1.0 if v == INF else -math.expm1(-abs(v))
        return base * r ** (d - 1)

    c = surf * integrate(f_c)
    ct = surf * integrate(f_ct)
    return RegularityIntegrals(c=c, c_tilde=min(ct, c), beta=beta, dimension=d)


# ---------------------------------------------------------------------------
# Basuev-style classification


@dataclass
class BasuevClassification:
    verdict: str  # "strongly_basuev" | "basuev" | "not_basuev"
    a: float
    v_a: float
    mu_hat: float
    c_d: float | None
    kissing_used: bool
    degenerate: bool = False
    note: str = ""

    def sound(self) -> bool:
        """Positive verdicts are certified (mu_hat >= mu); the negative one
        is only advisory."""
        return self.verdict in ("strongly_basuev", "basuev")


def negative_part_envelope_integral(spec: PairPotentialSpec) -> float:
    """Integral over R^d of the monotone decreasing envelope of V^- = max(-V, 0)."""
    d = spec.dimension
    surf = sphere_surface(d)
    p = spec.p
    f = spec.family
    if is_nonnegative(spec):
        return 0.0
    if f == "square_well":
        return sphere_volume(d, p["R"] + p["delta"])
    if f == "ruelle":
        return sphere_volume(d, p["R"] + p["delta"])
    if f == "step_table":
        # envelope at r: max depth at radii >= r
        radii, values = p["radii"], p["values"]
        env = 0.0
        prev = 0.0
        depth_beyond = [0.0] * (len(radii) + 1)
        for k in range(len(radii) - 1, -1, -1):
            depth_beyond[k] = max(depth_beyond[k + 1], max(-values[k], 0.0))
        for k, rk in enumerate(radii):
            env += depth_beyond[k] * (sphere_volume(d, rk) - sphere_volume(d, prev))
            prev = rk
        return env
    if f == "lj_type":
        power = d + p["eps"]
        a0, c2 = p["a"], p["c2"]
        head = c2 / a0**power * sphere_volume(d, a0)
        tail_int, _ = quad(lambda r: c2 * r ** (-power) * r ** (d - 1), a0, np.inf, limit=200)
        return head + surf * tail_int
    if f == "lennard_jones":
        epsv, s = p["epsilon"], p["sigma"]
        head = epsv * sphere_volume(d, s)  # depth is eps, attained at sigma
        tail_int, _ = quad(
            lambda r: abs(min(potential_eval(spec, r), 0.0)) * r ** (d - 1),
            s, np.inf, limit=400,
        )
        return head + surf * tail_int
    raise ValueError(f"no envelope integral for family {f!r}")


def _negative_support(spec: PairPotentialSpec) -> tuple[float, float] | None:
    """(inner, outer) radius of the region where V < 0, for shell-shaped wells."""
    p = spec.p
    f = spec.family
    if f == "square_well":
        return (p["R"], p["R"] + p["delta"])
    if f == "ruelle":
        return (p["R"] - p["delta"], p["R"] + p["delta"])
    return None


def basuev_classify(spec: PairPotentialSpec, a: float,
                    kissing_shell_tol: float = 0.05) -> BasuevClassification:
    """Classify by comparing V(a) with the computable bound mu_hat(a).

    mu_hat(a) = C_d / a^d with C_d = (4d)^(d/2) * integral of the monotone
    envelope of the negative part (cube packing of points at mutual distance
    > a).  For d = 3 wells supported in a thin shell [a, a(1+tol)] the
    12-point kissing bound mu_hat = 12 * depth is used when smaller.
    V(a) >= 2 mu_hat certifies "strongly_basuev", V(a) >= mu_hat certifies
    "basuev"; "not_basuev" is advisory only since mu_hat >= mu.
    """
    if a <= 0:
        raise ValueError("need a > 0")
    d = spec.dimension
    v_a = potential_eval(spec, a)
    # Monotonicity precondition: V(r) >= V(a) on (0, a]
    for r in np.linspace(a * 1e-3, a, 64):
        if potential_eval(spec, float(r)) < v_a - 1e-12:
            raise ValueError(f"V({r}) < V({a}): 'a' is outside the monotone core region")
    if is_nonnegative(spec):
        return BasuevClassification("strongly_basuev", a, v_a, 0.0, None, False,
                                    note="nonnegative potential: mu = 0")
    if v_a == INF:
        return BasuevClassification("strongly_basuev", a, v_a, 0.0, None, False,
                                    degenerate=True, note="hard core at a: trivially satisfied")
    if v_a <= 0:
        raise ValueError("need V(a) > 0 for the classification")
    c_d = (4 * d) ** (d / 2) * negative_part_envelope_integral(spec)
    mu_hat = c_d / a**d
    kissing = False
    support = _negative_support(spec)
    if d == 3 and support is not None:
        inner, outer = support
        if inner >= a - 1e-12 and outer <= a * (1.0 + kissing_shell_tol) + 1e-12:
            depth = 1.0  # both shell families have well depth 1
            kiss = 12.0 * depth
            if kiss < mu_hat:
                mu_hat, kissing = kiss, True
    if v_a >= 2.0 * mu_hat:
        verdict = "strongly_basuev"
    elif v_a >= mu_hat:
        verdict = "basuev"
    else:
        verdict = "not_basuev"
    return BasuevClassification(verdict, a, v_a, mu_hat, c_d, kissing)


def strongly_basuev_core_radius(spec: PairPotentialSpec) -> float:
    """For the power-law family: the radius a* where the core value crosses
    2 mu_hat(a); any a below it classifies strongly_basuev."""
    if spec.family != "lj_type":
        raise ValueError("closed-form core radius is defined for the lj_type family")
    p = spec.p
    d = spec.dimension
    c_d = (4 * d) ** (d / 2) * negative_part_envelope_integral(spec)
    # c1 a^-(d+eps) = 2 c_d / a^d  =>  a = (c1 / (2 c_d))^(1/eps)
    a_star = (p["c1"] / (2.0 * c_d)) ** (1.0 / p["eps"])
    return min(a_star, p["a"])


@dataclass
class BasuevSplit:
    v_a: Callable[[float], float]
    k_a: Callable[[float], float]
    a: float
    degenerate: bool


def basuev_decompose(spec: PairPotentialSpec, a: float) -> BasuevSplit:
    """Split V = V_a + K_a: V_a clamps the core to V(a); K_a >= 0 lives on [0, a].

    A hard core at a (V(a) = +inf) is degenerate: the split returns (V, 0)
    with the flag set, avoiding inf - inf.
    """
    if a <= 0:
        raise ValueError("need a > 0")
    va_val = potential_eval(spec, a)
    if va_val == INF:
        return BasuevSplit(lambda r: potential_eval(spec, r), lambda r: 0.0, a, True)

    def v_clamped(r: float) -> float:
        return va_val if r <= a else potential_eval(spec, r)

    def k_core(r: float) -> float:
        if r > a:
            return 0.0
        v = potential_eval(spec, r)
        return v - va_val if v != INF else INF

    return BasuevSplit(v_clamped, k_core, a, False)
