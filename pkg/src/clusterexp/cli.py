"""Command-line entry point.

Subcommands mirror the library modules: graphs, ursell, potentials, mayer,
polymer, ising, hardsphere, plus a verify mode running the identity suites.
Every artifact echoes its full input configuration (seed included) so a run
can be reproduced from its own output; floats are emitted with 17 significant
digits.  Exit status: 0 on success, 1 when a verify-mode invariant fails,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import __version__, graphs, hardsphere, ising, mayer, polymer, potentials, ursell, verify

SCHEMA = "clusterexp/1"


def _fmt_float(x) -> str:
    return format(float(x), ".17g")


def _jsonable(obj):
    if isinstance(obj, float):
        return float(_fmt_float(obj)) if math.isfinite(obj) else repr(obj)
    if isinstance(obj, (np.floating, np.integer)):
        return _jsonable(obj.item())
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (frozenset, set)):
        return sorted((str(v) for v in obj))
    if hasattr(obj, "__dataclass_fields__"):
        return {k: _jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__}
    return obj


def _emit(args, payload: dict, rows: list[dict] | None = None) -> None:
    payload = {"schema": SCHEMA, "version": __version__, **payload}
    out = sys.stdout
    close = False
    if args.output:
        out = open(args.output, "w")
        close = True
    try:
        if args.format == "json":
            json.dump(_jsonable(payload), out, indent=2)
            out.write("\n")
        elif args.format == "csv":
            if rows is None:
                raise SystemExit("this subcommand has no tabular form; use --format json")
            writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            for row in rows:
                writer.writerow({k: (_fmt_float(v) if isinstance(v, float) else v)
                                 for k, v in row.items()})
        else:  # table
            _print_table(out, payload, rows)
    finally:
        if close:
            out.close()


def _print_table(out, payload: dict, rows) -> None:
    for k, v in payload.items():
        if k in ("schema", "version", "rows"):
            continue
        if isinstance(v, dict):
            out.write(f"{k}:\n")
            for kk, vv in v.items():
                out.write(f"  {kk} = {_fmt_float(vv) if isinstance(vv, float) else vv}\n")
        else:
            out.write(f"{k} = {_fmt_float(v) if isinstance(v, float) else v}\n")
    if rows:
        cols = list(rows[0].keys())
        out.write("\t".join(cols) + "\n")
        for row in rows:
            out.write("\t".join(
                _fmt_float(row[c]) if isinstance(row[c], float) else str(row[c]) for c in cols
            ) + "\n")


def _spec_from_args(args) -> potentials.PairPotentialSpec:
    if args.spec_file:
        with open(args.spec_file) as fh:
            return potentials.spec_from_text(fh.read())
    fam = args.family
    p = dict(kv.split("=") for kv in (args.params or []))
    p = {k: float(v) for k, v in p.items()}
    builders = {
        "hard_core": lambda: potentials.hard_core(p.get("a", 1.0), dimension=args.dimension),
        "square_well": lambda: potentials.square_well(p.get("A", 2.0), p.get("R", 1.0),
                                                      p.get("delta", 0.25), dimension=args.dimension),
        "ruelle": lambda: potentials.ruelle(p.get("R", 1.0), p.get("delta", 0.5),
                                            dimension=args.dimension),
        "lj_type": lambda: potentials.lj_type(p.get("c1", 1.0), p.get("c2", 1.0),
                                              p.get("eps", 1.0), p.get("a", 1.0),
                                              dimension=args.dimension),
        "lennard_jones": lambda: potentials.lennard_jones(p.get("epsilon", 1.0),
                                                          p.get("sigma", 1.0),
                                                          dimension=args.dimension),
    }
    if fam not in builders:
        raise SystemExit(f"unknown family {fam!r}")
    return builders[fam]()


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_graphs(args) -> int:
    n = args.n
    payload: dict = {"command": "graphs", "n": n}
    if args.action == "count":
        payload.update(
            graphs=2 ** graphs.num_pairs(n),
            connected=graphs.count_connected(n, cap=args.cap),
            trees=n ** max(n - 2, 0),
            alternating_sum=graphs.alternating_connected_sum(n, cap=args.cap),
        )
    elif args.action == "verify-scheme":
        if args.scheme == "penrose":
            closure = graphs.penrose_closure
        else:
            import random as _random

            rng = _random.Random(args.seed)
            w = {p: rng.random() for p in graphs.vertex_pairs(n)}
            order = graphs.EdgeOrder.from_weights(n, w)
            closure = lambda t: graphs.kruskal_closure(t, order)
        rep = graphs.verify_partition_scheme(n, closure, cap=args.cap)
        payload.update(scheme=args.scheme, seed=args.seed, ok=bool(rep), reason=rep.reason,
                       intervals=rep.interval_count)
        if rep.counterexample is not None:
            payload["counterexample"] = rep.counterexample.to_text()
        _emit(args, payload)
        return 0 if rep else 1
    _emit(args, payload)
    return 0


def _cmd_ursell(args) -> int:
    if args.matrix_file:
        with open(args.matrix_file) as fh:
            V = ursell.InteractionMatrix.from_text(fh.read())
    elif args.matrix:
        V = ursell.InteractionMatrix.from_text(args.matrix)
    else:
        raise SystemExit("need --matrix or --matrix-file")
    a = ursell.ursell_graph_sum(V)
    b = ursell.ursell_partition_formula(V)
    c = ursell.ursell_tree_identity(V, "penrose")
    d = ursell.ursell_tree_identity(V, "kruskal")
    scale = max(abs(float(a)), 1e-30)
    payload = {
        "command": "ursell",
        "n": V.n,
        "hard_core": V.is_hard_core,
        "graph_sum": float(a),
        "partition_formula": float(b),
        "tree_identity_penrose": float(c),
        "tree_identity_kruskal": float(d),
        "max_relative_spread": max(abs(float(a - b)), abs(float(a - c)), abs(float(a - d))) / scale,
    }
    _emit(args, payload)
    return 0


def _cmd_potentials(args) -> int:
    spec = _spec_from_args(args)
    payload: dict = {
        "command": "potentials", "action": args.action,
        "spec": {"family": spec.family, "dimension": spec.dimension,
                 **{k: v for k, v in spec.params if not callable(v)}},
    }
    if args.action == "eval":
        payload.update(r=args.r, value=potentials.potential_eval(spec, args.r))
    elif args.action == "stability":
        rep = potentials.stability_estimate(spec, args.n, budget=args.budget, seed=args.seed)
        payload.update(n=rep.n, estimate=rep.estimate, seed=rep.seed, budget=rep.budget,
                       iterations=rep.iterations,
                       witness=None if rep.witness is None else rep.witness.tolist())
    elif args.action == "integrals":
        ri = potentials.regularity_integrals(spec, args.beta)
        payload.update(beta=args.beta, c=ri.c, c_tilde=ri.c_tilde)
    elif args.action == "classify":
        cls = potentials.basuev_classify(spec, args.a)
        payload.update(a=args.a, verdict=cls.verdict, v_a=cls.v_a, mu_hat=cls.mu_hat,
                       kissing_used=cls.kissing_used, degenerate=cls.degenerate, sound=cls.sound())
    elif args.action == "fcc":
        w = potentials.fcc_witness(args.shells)
        payload.update(shells=args.shells, n=w.n, bond_count=w.bond_count,
                       ratio=w.bond_count / max(w.n, 1),
                       exceeds_11n_over_2=2 * w.bond_count > 11 * w.n)
    elif args.action == "ruelle-ratios":
        div = potentials.ruelle_divergence_witness(args.lam, args.beta, args.n,
                                                   s_max=args.s_max, eps=args.eps)
        payload.update(lam=args.lam, beta=args.beta, n=div.n, eps=div.eps,
                       s_max=args.s_max, last_ratio=div.last_ratio,
                       growing=div.ratios[-1] > div.ratios[-2] > div.ratios[-3])
    _emit(args, payload)
    return 0


def _cmd_mayer(args) -> int:
    if args.action == "coefficients":
        if args.grid:
            w, h = (int(x) for x in args.grid.split("x"))
            vol = mayer.DiscreteVolume.grid(w, h)
        else:
            vol = mayer.DiscreteVolume.path(args.path)
        spec = _spec_from_args(args)
        recs = mayer.mayer_coefficients(vol, spec, args.beta, args.n_max, B=args.B, Bbar=args.Bbar)
        rows = [
            {"n": r.n, "C_n": float(r.value),
             "PR": "" if r.bound_pr is None else float(r.bound_pr),
             "PY": "" if r.bound_py is None else float(r.bound_py),
             "Basuev": "" if r.bound_basuev is None else float(r.bound_basuev)}
            for r in recs
        ]
        payload = {"command": "mayer", "action": "coefficients", "volume_size": vol.size,
                   "beta": args.beta, "inputs": recs[0].inputs, "rows": rows}
        _emit(args, payload, rows=rows)
        return 0
    if args.action == "ks":
        table = mayer.ks_recursion(args.m_max, args.beta, args.B or 0.0, args.C)
        worst = max(
            abs(v - mayer.ks_closed_form(n, l, args.beta, args.B or 0.0, args.C))
            / abs(mayer.ks_closed_form(n, l, args.beta, args.B or 0.0, args.C))
            for (n, l), v in table.items()
        )
        payload = {"command": "mayer", "action": "ks", "m_max": args.m_max, "beta": args.beta,
                   "B": args.B or 0.0, "C": args.C, "entries": len(table),
                   "worst_relative_error_vs_closed_form": worst}
        _emit(args, payload)
        return 0
    if args.action == "radii":
        rb = mayer.radius_bounds(args.beta, args.B or 0.0, args.Bbar, args.C, args.Ctilde)
        payload = {"command": "mayer", "action": "radii", "beta": args.beta, "B": args.B or 0.0,
                   "C": args.C, "Ctilde": args.Ctilde, "r_pr": rb.r_pr, "r_star": rb.r_star,
                   "ratio": rb.ratio, "log_ratio": rb.log_ratio}
        _emit(args, payload)
        return 0
    if args.action == "virial":
        tools = mayer.virial_tools(args.beta, args.Bbar or 0.0, args.Ctilde)
        w, val = tools.max_point()
        payload = {"command": "mayer", "action": "virial", "beta": args.beta,
                   "Bbar": args.Bbar or 0.0, "Ctilde": args.Ctilde,
                   "virial_radius": tools.virial_radius, "max_w": w, "max_value": val}
        _emit(args, payload)
        return 0
    raise SystemExit(f"unknown mayer action {args.action!r}")


def _build_model(name: str, rho: float) -> tuple[polymer.PolymerSystem, object]:
    if name == "domino":
        sys_ = polymer.domino_system(5, 5, rho)
        return sys_, polymer.domino_center(sys_)
    if name == "triangular":
        sys_ = polymer.triangular_window(2, rho)
        return sys_, (0, 0)
    if name.startswith("delta:"):
        delta = int(name.split(":", 1)[1])
        sys_ = polymer.delta_regular_system(delta, rho)
        return sys_, "c"
    raise SystemExit(f"unknown model {name!r} (domino, triangular, delta:<k>)")


def _cmd_polymer(args) -> int:
    if args.action == "criteria":
        sys_, center = _build_model(args.model, 1.0)
        out = {}
        for which in ("kp", "dob", "fp"):
            mu, val = polymer.optimize_constant_mu(sys_, center, which)
            out[which] = {"radius": val, "mu": mu}
        payload = {"command": "polymer", "action": "criteria", "model": args.model,
                   "kp": out["kp"], "dob": out["dob"], "fp": out["fp"]}
        _emit(args, payload)
        return 0
    if args.action == "partition":
        with open(args.system_file) as fh:
            sys_ = polymer.system_from_adjacency_text(fh.read())
        xi = polymer.partition_function(sys_)
        payload = {"command": "polymer", "action": "partition",
                   "polymers": len(sys_), "xi": float(abs(xi)) if isinstance(xi, complex) else float(xi)}
        _emit(args, payload)
        return 0
    if args.action == "subset-check":
        import random as _random

        rng = _random.Random(args.seed)
        sys_ = polymer.random_subset_gas(list(range(args.vertices)), args.polymers,
                                         args.max_size, rng, a=args.a)
        rep = polymer.subset_gas_check(sys_, a=args.a)
        payload = {"command": "polymer", "action": "subset-check", "seed": args.seed,
                   "vertices": args.vertices, "a": args.a,
                   "condition_value": rep.condition.value,
                   "condition_threshold": rep.condition.threshold,
                   "condition_satisfied": rep.condition.satisfied,
                   "induction_verified": rep.verified,
                   "max_pinned_sum": rep.max_pinned_sum}
        _emit(args, payload)
        return 0 if rep else 1
    if args.action == "catalog":
        params = {k: float(v) for k, v in (kv.split("=") for kv in args.params or [])}
        if "d" in params:
            params["d"] = int(params["d"])
        rep = polymer.bounds_catalog(args.which, **params)
        payload = {"command": "polymer", "action": "catalog", "which": args.which,
                   "formula": rep.formula, "inputs": rep.inputs, "threshold": rep.threshold,
                   "value": rep.value, "satisfied": rep.satisfied, "margin": rep.margin}
        _emit(args, payload)
        return 0
    raise SystemExit(f"unknown polymer action {args.action!r}")


def _cmd_ising(args) -> int:
    if args.action == "z":
        rows = []
        for beta in args.beta:
            zb = ising.brute_force_Z(args.L, beta, boundary=args.boundary, cap=args.cap)
            xi_h, z_h = ising.high_T_polymer_Z(args.L, beta)
            low = ising.low_T_contour_Z(args.L, beta, cap=args.cap)
            zbp = ising.brute_force_Z(args.L, beta, boundary="plus", cap=args.cap)
            mag = ising.magnetization(args.L, beta, boundary=args.boundary, cap=args.cap)
            mplus = ising.magnetization(args.L, beta, boundary="plus", cap=args.cap)
            rows.append({
                "beta": beta, "Z_brute": zb, "Z_highT": z_h, "Xi_highT": xi_h,
                "Z_lowT": low.z_reconstructed, "Xi_lowT": low.xi_contour,
                "Z_brute_plus": zbp, "M": mag.mean,
                "highT_rel_err": abs(z_h - zb) / zb,
                "lowT_rel_err": abs(low.z_reconstructed - zbp) / zbp,
                "M_plus_bound_margin": ("" if mplus.low_t_bound is None
                                        else mplus.mean - mplus.low_t_bound),
            })
        payload = {"command": "ising", "action": "z", "L": args.L,
                   "boundary": args.boundary, "rows": rows}
        _emit(args, payload, rows=rows)
        return 0
    if args.action == "duality":
        rep = ising.duality_check(args.L, args.beta[0] if args.beta else 0.3)
        payload = {"command": "ising", "action": "duality", "L": args.L, **_jsonable(rep)}
        payload.pop("xi_high", None)
        payload.update(xi_high=rep.xi_high, xi_low_at_dual=rep.xi_low_at_dual,
                       xi_equal=abs(rep.xi_high - rep.xi_low_at_dual) <= 1e-12 * rep.xi_high)
        _emit(args, payload)
        return 0
    if args.action == "magnetization":
        beta = args.beta[0] if args.beta else 2.0
        rep = ising.magnetization(args.L, beta, boundary=args.boundary, cap=args.cap)
        payload = {"command": "ising", "action": "magnetization", "L": args.L, "beta": beta,
                   "boundary": args.boundary, "M": rep.mean,
                   "low_t_bound": rep.low_t_bound, "low_t_bound_ok": rep.low_t_bound_ok,
                   "high_t_site_bounds_ok": rep.high_t_site_bounds_ok,
                   "per_site": rep.per_site.tolist()}
        _emit(args, payload)
        return 0
    if args.action == "thresholds":
        rep = ising.animal_counts_and_thresholds()
        payload = {"command": "ising", "action": "thresholds", "a": rep.a,
                   "activity_root": rep.activity_root,
                   "beta0": rep.beta0, "beta1": rep.beta1,
                   "beta0_prime": rep.beta0_prime, "beta1_prime": rep.beta1_prime,
                   "g_root_x": rep.g_root_x,
                   "animal_counts": {str(k): v for k, v in sorted(rep.counts.items())}}
        _emit(args, payload)
        return 0
    raise SystemExit(f"unknown ising action {args.action!r}")


def _cmd_hardsphere(args) -> int:
    if args.action == "gtilde":
        est = hardsphere.gtilde(args.d, args.k, samples=args.samples, seed=args.seed)
        payload = {"command": "hardsphere", "action": "gtilde", **_jsonable(est)}
        cf = hardsphere.gtilde_closed_form(args.d, args.k)
        if cf is not None:
            payload["closed_form"] = cf
        _emit(args, payload)
        return 0
    if args.action == "radius":
        r = hardsphere.improved_radius()
        payload = {"command": "hardsphere", "action": "radius", "mu_star": r.mu_star,
                   "coefficient": r.coefficient, "classical": r.classical, "gain": r.gain,
                   "gtable": list(r.gtable)}
        _emit(args, payload)
        return 0
    if args.action == "volume":
        payload = {"command": "hardsphere", "action": "volume", "n": args.n, "r": args.r,
                   "value": hardsphere.sphere_volume(args.n, args.r)}
        _emit(args, payload)
        return 0
    raise SystemExit(f"unknown hardsphere action {args.action!r}")


def _cmd_verify(args) -> int:
    results = verify.run_suite(args.suite, max_n=args.max_n, trials=args.trials,
                               seed=args.seed, jobs=args.jobs)
    rows = [{"check": r.name, "ok": r.ok, "detail": r.detail} for r in results]
    ok = all(r.ok for r in results)
    payload = {"command": "verify", "suite": args.suite, "max_n": args.max_n,
               "trials": args.trials, "seed": args.seed, "ok": ok, "rows": rows}
    _emit(args, payload, rows=rows)
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--output", default=None, help="write the artifact to this path")


def _add_spec_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", default="hard_core",
                   choices=("hard_core", "square_well", "ruelle", "lj_type", "lennard_jones"))
    p.add_argument("--params", nargs="*", metavar="k=v")
    p.add_argument("--dimension", type=int, default=3)
    p.add_argument("--spec-file", default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="clusterexp",
                                 description="cluster-expansion toolbox with brute-force cross-checks")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graphs", help="counts and partition-scheme verification")
    p.add_argument("action", choices=("count", "verify-scheme"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, default=graphs.GRAPH_CAP)
    p.add_argument("--scheme", choices=("penrose", "kruskal"), default="penrose")
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(fn=_cmd_graphs)

    p = sub.add_parser("ursell", help="three-way coefficient evaluation")
    p.add_argument("--matrix", default=None, help='text form "n; i j v; ..."')
    p.add_argument("--matrix-file", default=None)
    _add_common(p)
    p.set_defaults(fn=_cmd_ursell)

    p = sub.add_parser("potentials", help="pair potentials and stability")
    p.add_argument("action", choices=("eval", "stability", "integrals", "classify",
                                      "fcc", "ruelle-ratios"))
    _add_spec_args(p)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--budget", type=int, default=40)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--shells", type=int, default=1)
    p.add_argument("--lam", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--s-max", type=int, default=200)
    _add_common(p)
    p.set_defaults(fn=_cmd_potentials)

    p = sub.add_parser("mayer", help="coefficients, bounds, recursion, virial")
    p.add_argument("action", choices=("coefficients", "ks", "radii", "virial"))
    _add_spec_args(p)
    p.add_argument("--grid", default=None, help="WxH site grid")
    p.add_argument("--path", type=int, default=4, help="path volume length")
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--B", type=float, default=None)
    p.add_argument("--Bbar", type=float, default=None)
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--Ctilde", type=float, default=1.0)
    p.add_argument("--m-max", type=int, default=20)
    _add_common(p)
    p.set_defaults(fn=_cmd_mayer)

    p = sub.add_parser("polymer", help="polymer-gas criteria and bound catalog")
    p.add_argument("action", choices=("criteria", "partition", "subset-check", "catalog"))
    p.add_argument("--model", default="domino")
    p.add_argument("--system-file", default=None)
    p.add_argument("--vertices", type=int, default=8)
    p.add_argument("--polymers", type=int, default=10)
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--a", type=float, default=math.log(2.0))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--which", default="bounded_spin")
    p.add_argument("--params", nargs="*", metavar="k=v")
    _add_common(p)
    p.set_defaults(fn=_cmd_polymer)

    p = sub.add_parser("ising", help="exact 2D sums, expansions, duality, thresholds")
    p.add_argument("action", choices=("z", "duality", "magnetization", "thresholds"))
    p.add_argument("--L", type=int, default=3)
    p.add_argument("--beta", type=float, nargs="*", default=[0.3])
    p.add_argument("--boundary", choices=("free", "plus", "minus"), default="free")
    p.add_argument("--cap", type=int, default=ising.BRUTE_CAP)
    _add_common(p)
    p.set_defaults(fn=_cmd_ising)

    p = sub.add_parser("hardsphere", help="overlap factors and the d=2 radius")
    p.add_argument("action", choices=("gtilde", "radius", "volume"))
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--r", type=float, default=1.0)
    _add_common(p)
    p.set_defaults(fn=_cmd_hardsphere)

    p = sub.add_parser("verify", help="run the identity suites")
    p.add_argument("--suite", choices=("identities", "combinatorics", "all"), default="all")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--trials", type=int, default=40)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p)
    p.set_defaults(fn=_cmd_verify)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
