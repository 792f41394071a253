"""Identity suites runnable from the command line: every deep identity in the
package checked against its independent brute-force oracle at desk scale.

Each check returns a (name, ok, detail) triple; the CLI turns failures into a
nonzero exit status.  Random inputs are drawn from a seeded generator so any
reported failure is replayable from the echoed configuration.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import graphs as G
from . import ursell as U


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _random_matrix(n: int, rng: random.Random, p_inf: float = 0.2) -> U.InteractionMatrix:
    vals = {}
    for p in G.vertex_pairs(n):
        r = rng.random()
        vals[p] = U.INF if r < p_inf else rng.uniform(-1.5, 3.0)
    return U.InteractionMatrix(n, vals)


def _random_hardcore(n: int, rng: random.Random) -> U.InteractionMatrix:
    vals = {p: (U.INF if rng.random() < 0.5 else 0.0) for p in G.vertex_pairs(n)}
    return U.InteractionMatrix(n, vals)


def identity_suite(max_n: int = 5, trials: int = 40, seed: int = 0,
                   rel_tol: float = 1e-10) -> list[CheckResult]:
    """Agreement of the three Ursell routes on random matrices, exact in the
    hard-core case, plus the tree-bound dominance property."""
    rng = random.Random(seed)
    results = []
    for n in range(2, max_n + 1):
        worst = 0.0
        for _ in range(trials):
            V = _random_matrix(n, rng)
            a = U.ursell_graph_sum(V)
            b = U.ursell_partition_formula(V)
            c = U.ursell_tree_identity(V, "penrose")
            d = U.ursell_tree_identity(V, "kruskal")
            scale = max(abs(a), 1e-30)
            worst = max(worst, abs(a - b) / scale, abs(a - c) / scale, abs(a - d) / scale)
        results.append(CheckResult(
            f"ursell-identities-n{n}", worst <= rel_tol,
            f"worst relative spread {worst:.3e} over {trials} random matrices",
        ))
        exact_ok = True
        for _ in range(trials):
            V = _random_hardcore(n, rng)
            a = U.ursell_graph_sum(V)
            if not (a == U.ursell_partition_formula(V) == U.ursell_tree_identity(V)
                    == U.ursell_tree_identity(V, "kruskal")):
                exact_ok = False
        results.append(CheckResult(
            f"ursell-hardcore-exact-n{n}", exact_ok, f"{trials} random 0/inf matrices, bit-exact",
        ))
        bound_ok = True
        for _ in range(max(trials // 4, 5)):
            vals = {p: rng.uniform(-0.4, 2.0) for p in G.vertex_pairs(n)}
            V = U.InteractionMatrix(n, vals)
            b_vec = [max(0.0, -min(vals.values())) * n] * n  # crude but valid certificate
            try:
                bound = U.tree_graph_bound(V, b_vec)
            except U.StabilityCertificateError:
                continue
            if abs(U.ursell_graph_sum(V)) > bound * (1 + 1e-12):
                bound_ok = False
        results.append(CheckResult(f"tree-bound-dominance-n{n}", bound_ok))
    return results


def combinatorics_suite(max_n: int = 5, seed: int = 0, scheme_trials: int = 5) -> list[CheckResult]:
    """Tree counts, the alternating connected sum, and both partition schemes."""
    rng = random.Random(seed)
    results = []
    for n in range(2, max_n + 1):
        count = sum(1 for _ in G.enumerate_trees(n))
        results.append(CheckResult(
            f"cayley-count-n{n}", count == n ** max(n - 2, 0),
            f"{count} trees",
        ))
        s = G.alternating_connected_sum(n)
        expect = (-1) ** (n - 1) * math.factorial(n - 1)
        results.append(CheckResult(f"alternating-sum-n{n}", s == expect, f"{s}"))
        rep = G.verify_partition_scheme(n, G.penrose_closure)
        results.append(CheckResult(f"penrose-scheme-n{n}", bool(rep), rep.reason))
        ok = True
        for _ in range(scheme_trials):
            w = {p: rng.random() for p in G.vertex_pairs(n)}
            order = G.EdgeOrder.from_weights(n, w)
            if not G.verify_partition_scheme(n, lambda t: G.kruskal_closure(t, order)):
                ok = False
        results.append(CheckResult(f"kruskal-scheme-n{n}", ok, f"{scheme_trials} random weightings"))
    return results


def _identity_chunk(args: tuple[int, int, int]) -> list[CheckResult]:
    max_n, trials, seed = args
    return identity_suite(max_n=max_n, trials=trials, seed=seed)


def run_suite(which: str, max_n: int = 5, trials: int = 40, seed: int = 0,
              jobs: int = 1) -> list[CheckResult]:
    """Run a named suite; ``jobs`` > 1 splits the random trials across workers."""
    if which == "all":
        out = []
        for name in ("identities", "combinatorics"):
            out.extend(run_suite(name, max_n=max_n, trials=trials, seed=seed, jobs=jobs))
        return out
    if which == "identities":
        if jobs <= 1:
            return identity_suite(max_n=max_n, trials=trials, seed=seed)
        per = max(1, trials // jobs)
        chunks = [(max_n, per, seed + 1000 * k) for k in range(jobs)]
        merged: dict[str, CheckResult] = {}
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for results in pool.map(_identity_chunk, chunks):
                for r in results:
                    prev = merged.get(r.name)
                    if prev is None or (prev.ok and not r.ok):
                        merged[r.name] = r
        return list(merged.values())
    if which == "combinatorics":
        return combinatorics_suite(max_n=max_n, seed=seed)
    raise ValueError(f"unknown suite {which!r}; known: identities, combinatorics, all")
