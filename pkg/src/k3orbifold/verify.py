"""Self-check suites run by ``k3orbifold verify``."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from . import lattice as lt
from .classification import K3_EULER, Shape, admissible_pairs, fixed_locus
from .orbifold import (
    STAGES,
    build_report,
    is_gorenstein,
    quotient_inventory,
)

# chi(X) by m, as printed in the published table
PUBLISHED_CHI_X = {1: 219, 2: 198, 3: 177, 4: 156, 5: 135, 6: 114, 7: 93, 8: 72, 9: 51, 10: 30}

SNF_SAMPLES = 200
SNF_SEED = 20261015


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str
    # a known discrepancy; only fatal under --strict
    finding: bool = False


def classification_suite() -> SuiteResult:
    bad = []
    pairs = admissible_pairs()
    for p in pairs:
        f = fixed_locus(p)
        if (p.m + p.a) % 2:
            bad.append(f"{p}: m+a odd")
        if f.chi != K3_EULER - 3 * p.m:
            bad.append(f"{p}: chi {f.chi}")
        if f.shape is Shape.GENERIC:
            if min(f.n, f.k, f.g) < 0:
                bad.append(f"{p}: negative count")
            if f.n + 2 * f.k + 2 - 2 * f.g != 24 - 3 * p.m:
                bad.append(f"{p}: n+2k+2-2g != 24-3m")
        elif f.n != 3:
            bad.append(f"{p}: special shape with {f.n} points")
    ok = len(pairs) == 24 and not bad
    return SuiteResult("classification", ok, f"{len(pairs) - len(bad)}/{len(pairs)} pairs consistent" + _tail(bad))


def _minor_gcds(a, k):
    rows, cols = len(a), len(a[0])
    g = 0
    for rs in itertools.combinations(range(rows), k):
        for cs in itertools.combinations(range(cols), k):
            g = math.gcd(g, lt.determinant([[a[i][j] for j in cs] for i in rs]))
    return g


def _matmul(x, y):
    return [[sum(x[i][t] * y[t][j] for t in range(len(y))) for j in range(len(y[0]))] for i in range(len(x))]


def snf_cross_check(a) -> list[str]:
    """Problems found when checking one Smith form against gcds of minors."""
    snf = lt.smith_normal_form(a)
    errs = []
    if [list(r) for r in snf.d] != _matmul(_matmul(snf.u, a), snf.v):
        errs.append("u*A*v != d")
    if abs(lt.determinant(snf.u)) != 1 or abs(lt.determinant(snf.v)) != 1:
        errs.append("transform not unimodular")
    rows, cols = len(a), len(a[0])
    if any(snf.d[i][j] for i in range(rows) for j in range(cols) if i != j):
        errs.append("d not diagonal")
    diag = snf.invariant_factors
    if any(e % d for d, e in zip(diag, diag[1:])) or any(x < 0 for x in diag):
        errs.append("divisibility chain broken")
    prod = 1
    for k in range(1, min(rows, cols) + 1):
        prod = prod * snf.diagonal[k - 1]
        if prod != _minor_gcds(a, k):
            errs.append(f"d1..d{k} != gcd of {k}x{k} minors")
            break
    return errs


def lattice_suite() -> SuiteResult:
    bad = []
    k3 = lt.k3_lattice()
    if k3.rank != 22:
        bad.append("K3 rank")
    if lt.inertia(k3).as_tuple() != (3, 19, 0):
        bad.append("K3 inertia")
    if not lt.discriminant_group(k3).is_trivial:
        bad.append("K3 not unimodular")
    h3 = lt.fixed_lattice_invariants(lt.rescale(lt.hyperbolic_plane(), 3))
    if (h3.m, h3.a) != (10, 2) or h3.discriminant.invariant_factors != (3, 3):
        bad.append(f"H(3) reading ({h3.m},{h3.a})")
    rng = random.Random(SNF_SEED)
    for i in range(SNF_SAMPLES):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        a = [[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)]
        for e in snf_cross_check(a):
            bad.append(f"SNF sample {i}: {e}")
    return SuiteResult(
        "lattice", not bad, f"K3, H(3) and {SNF_SAMPLES} random Smith forms checked" + _tail(bad)
    )


def gorenstein_suite() -> SuiteResult:
    bad = []
    for w in itertools.product(range(3), repeat=3):
        det_is_one = (sum(w) % 3) == 0  # zeta^(a+b+c) == 1
        if is_gorenstein(w) != det_is_one:
            bad.append(f"weights {w}")
    # a fixed locus with both points and curves shows all four types
    inv = quotient_inventory(fixed_locus((1, 1)))
    types = {e.type for e in inv.at_zero} | {e.type for e in inv.at_infinity}
    zero_ok = all(e.type.gorenstein for e in inv.at_zero)
    inf_ok = not any(e.type.gorenstein for e in inv.at_infinity)
    classified = sum(1 for t in types if t.gorenstein) == 2 and len(types) == 4 and zero_ok and inf_ok
    if not classified:
        bad.append("quotient types not split 2/2")
    n_ok = 4 if classified else 0
    return SuiteResult("gorenstein", not bad, f"27 weight triples; {n_ok}/4 quotient types classified" + _tail(bad))


def table_suite() -> SuiteResult:
    pairs = admissible_pairs()
    bad = [p for p in pairs if build_report(p).closed_form.chi_X != PUBLISHED_CHI_X[p.m]]
    return SuiteResult("table", not bad, f"{len(pairs) - len(bad)}/{len(pairs)} rows match" + _tail(map(str, bad)))


def chain_suite() -> SuiteResult:
    bad = []
    for p in admissible_pairs():
        r = build_report(p)
        for st in (r.closed_form, r.first_principles):
            if st.chi_X0 != st.chi_Z + 2 * (24 - 3 * p.m):
                bad.append(f"{p} {st.mode.value}: X0 chain")
            if st.chi_X != 3 * st.chi_X0 - 48:
                bad.append(f"{p} {st.mode.value}: X chain")
    return SuiteResult("chain-identities", not bad, "both modes checked for 24 pairs" + _tail(bad))


def crosscheck_suite() -> SuiteResult:
    pairs = admissible_pairs()
    mismatched = [p for p in pairs if any(build_report(p).mismatch_flags.values())]
    stages = [s for s in STAGES if all(build_report(p).mismatch_flags[s] for p in pairs)]
    return SuiteResult(
        "closed-vs-first-principles",
        not mismatched,
        f"mismatch for {len(mismatched)}/{len(pairs)} pairs; stages always differing: {','.join(stages) or 'none'}",
        finding=True,
    )


def run_all() -> list[SuiteResult]:
    return [
        classification_suite(),
        lattice_suite(),
        gorenstein_suite(),
        table_suite(),
        chain_suite(),
        crosscheck_suite(),
    ]


def _tail(bad) -> str:
    bad = list(bad)
    return "" if not bad else " | failures: " + "; ".join(bad[:5])
