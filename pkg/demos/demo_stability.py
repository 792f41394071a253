#!/usr/bin/env python3
"""Stability, instability, and how to certify either direction.

A pair potential is stable when no configuration can reach energy below
-B n.  This script probes both sides: a collapse search that finds the
catastrophic clusters of an attractive well, the close-packed witness that
breaks the bounded barrier-11 step potential, and the envelope bound that
certifies a power-law core as strongly stable.
"""

from clusterexp import potentials as P

print("=" * 72)
print("1. A bounded well with no core collapses")
print("=" * 72)
well = P.attractive_well(b=2.0, delta=0.5)
for n in (4, 6, 8):
    rep = P.stability_estimate(well, n, budget=8, seed=0)
    print(f"  n={n}: B_n >= {rep.estimate:.4f}   (collapse predicts b(n-1)/2 = {(n - 1):.0f})")

print()
print("=" * 72)
print("2. The barrier-11 step potential: stable-looking, yet unstable")
print("=" * 72)
print("  Close-packed clusters at the shell distance collect ~6 bonds per site;")
print("  the grand-canonical sum diverges once bonds exceed 11n/2.")
records, first = P.fcc_instability_sweep(max_shells=11)
for w in records[::2]:
    marker = "  <-- exceeds 11n/2" if 2 * w.bond_count > 11 * w.n else ""
    print(f"  shells={w.shells:2d}: n={w.n:5d}  bonds={w.bond_count:6d}  bonds/n={w.bond_count / w.n:.4f}{marker}")
print(f"  first witness: n = {first.n} with {first.bond_count} bonds")

div = P.ruelle_divergence_witness(1.0, 1.0, n_fixed=13, s_max=200, eps=0.5)
print(f"  divergent minorant ratio a_(s+1)/a_s at s_max: {div.last_ratio:.3e} (growing)")

print()
print("=" * 72)
print("3. Certifying stability for a power-law core")
print("=" * 72)
spec = P.lj_type()
a_star = P.strongly_basuev_core_radius(spec)
cls = P.basuev_classify(spec, 0.9 * a_star)
print(f"  core-value crossing at a* = {a_star:.3e}")
print(f"  at a = 0.9 a*: verdict = {cls.verdict} (mu_hat = {cls.mu_hat:.3e}, sound = {cls.sound()})")
split = P.basuev_decompose(spec, 0.9 * a_star)
r = 0.5 * a_star
print(f"  split V = V_a + K_a at r = {r:.2e}: V_a = {split.v_a(r):.3e}, K_a = {split.k_a(r):.3e} >= 0")

print()
print("=" * 72)
print("4. The regularity integrals behind every radius bound")
print("=" * 72)
for beta in (1.0, 2.0):
    ri = P.regularity_integrals(P.lennard_jones(), beta)
    print(f"  12-6 potential, beta={beta}: C = {ri.c:.4f}, C~ = {ri.c_tilde:.4f} (C~ <= C)")
sw = P.square_well(12.0, 1.0, 0.01)
cls = P.basuev_classify(sw, 1.0)
print(f"  thin-shell square well, A=12: verdict = {cls.verdict}"
      f" via the 12-point kissing bound (mu_hat = {cls.mu_hat})")
