"""Exit criteria. Each test records one PASS/FAIL line, summarised at the end
of the pytest run. All criteria are exact (zero tolerance)."""

import itertools
import json
import random
import subprocess
import sys
import time
from pathlib import Path

from k3orbifold import lattice as lt
from k3orbifold.classification import Shape, admissible_pairs, fixed_locus
from k3orbifold.cli import main
from k3orbifold.orbifold import Carrier, SingularityType, build_report, is_gorenstein, quotient_inventory

from oracles import invariant_factors_by_minors, laplace_det, matmul

DATA = Path(__file__).resolve().parents[1] / "data"

# chi(X) per m, transcribed from the published table
PUBLISHED = {1: 219, 2: 198, 3: 177, 4: 156, 5: 135, 6: 114, 7: 93, 8: 72, 9: 51, 10: 30}
PUBLISHED_GROUPS = {
    1: [(1, 1)],
    2: [(2, 0), (2, 2)],
    3: [(3, 1), (3, 3)],
    4: [(4, 2), (4, 4)],
    5: [(5, 1), (5, 3), (5, 5)],
    6: [(6, 0), (6, 2), (6, 4), (6, 6)],
    7: [(7, 1), (7, 3), (7, 5), (7, 7)],
    8: [(8, 2), (8, 4)],
    9: [(9, 1), (9, 3)],
    10: [(10, 0), (10, 2)],
}


def _cli(capsys, *argv):
    code = main(list(argv))
    out, _ = capsys.readouterr()
    return code, out


def test_1_table_reproduction(capsys, criterion):
    t0 = time.perf_counter()
    code, out = _cli(capsys, "table", "--mode", "closed", "--format", "json")
    elapsed = time.perf_counter() - t0
    doc = json.loads(out)
    rows = doc["payload"]["rows"]
    got = {(r["m"], r["a"]): r["closed_form"]["chi_X"] for r in rows}
    want = {p: PUBLISHED[m] for m, ps in PUBLISHED_GROUPS.items() for p in ps}
    groups = {g["m"]: [tuple(p) for p in g["pairs"]] for g in doc["payload"]["groups"]}

    _, text = _cli(capsys, "table", "--mode", "closed")
    text_rows = {}
    for line in text.splitlines():
        if "|" in line and line[:1] == "(" and line[1:2].isdigit():
            pairs, chi = line.split("|")
            text_rows[pairs.strip()] = int(chi)
    want_text = {",".join(f"({m},{a})" for m, a in ps): PUBLISHED[m] for m, ps in PUBLISHED_GROUPS.items()}

    ok = code == 0 and got == want and groups == PUBLISHED_GROUPS and text_rows == want_text and elapsed < 1.0
    matches = sum(got.get(p) == v for p, v in want.items())
    criterion(1, "table reproduction", ok, f"{matches}/24 rows exact, {elapsed:.3f}s")


def test_2_classification_suite(criterion):
    bad = []
    pairs = admissible_pairs()
    for p in pairs:
        f = fixed_locus(p)
        if (p.m + p.a) % 2:
            bad.append(p)
        if p == (7, 7):
            if f.shape is not Shape.THREE_ISOLATED_POINTS or f.chi != 24 - 3 * 7:
                bad.append(p)
            continue
        if min(f.n, f.k, f.g) < 0 or f.n + 2 * f.k + 2 - 2 * f.g != 24 - 3 * p.m:
            bad.append(p)
    criterion(2, "classification suite", len(pairs) == 24 and not bad, f"{24 - len(bad)}/24 pairs")


def test_3_lattice_suite(criterion):
    k3 = lt.k3_lattice()
    k3_ok = (
        k3.rank == 22
        and lt.inertia(k3).as_tuple() == (3, 19, 0)
        and lt.discriminant_group(k3).is_trivial
    )
    h3 = lt.fixed_lattice_invariants(lt.rescale(lt.hyperbolic_plane(), 3))
    h3_ok = (h3.m, h3.a) == (10, 2) and h3.three_elementary and h3.discriminant.invariant_factors == (3, 3)

    rng = random.Random(3)
    good = 0
    for _ in range(200):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        a = [[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)]
        snf = lt.smith_normal_form(a)
        fs = list(snf.invariant_factors)
        if (
            [list(x) for x in snf.d] == matmul(matmul(snf.u, a), snf.v)
            and abs(laplace_det([list(x) for x in snf.u])) == 1
            and abs(laplace_det([list(x) for x in snf.v])) == 1
            and all(snf.d[i][j] == 0 for i in range(r) for j in range(c) if i != j)
            and all(y % x == 0 for x, y in zip(fs, fs[1:]))
            and fs == invariant_factors_by_minors(a)
        ):
            good += 1
    ok = k3_ok and h3_ok and good == 200
    criterion(3, "lattice suite", ok, f"K3 {'ok' if k3_ok else 'bad'}, H(3) {'ok' if h3_ok else 'bad'}, SNF {good}/200")


def test_4_gorenstein_suite(criterion):
    agree = sum(is_gorenstein(w) == (sum(w) % 3 == 0) for w in itertools.product(range(3), repeat=3))
    four = {
        SingularityType((2, 2, 2), Carrier.ISOLATED_POINT): True,
        SingularityType((1, 0, 2), Carrier.CURVE): True,
        SingularityType((2, 2, 1), Carrier.ISOLATED_POINT): False,
        SingularityType((1, 0, 1), Carrier.CURVE): False,
    }
    classified = sum(t.gorenstein == want for t, want in four.items())
    inv = quotient_inventory(fixed_locus((1, 1)))
    placed = {e.type for e in inv.at_zero} == {t for t, g in four.items() if g} and {
        e.type for e in inv.at_infinity
    } == {t for t, g in four.items() if not g}
    ok = agree == 27 and classified == 4 and placed
    criterion(4, "Gorenstein suite", ok, f"{agree}/27 triples, {classified}/4 quotient types, placement {placed}")


def test_5_cross_check_finding(criterion):
    bad = []
    for p in admissible_pairs():
        m = p.m
        r = build_report(p)
        fp = r.first_principles
        # hand evaluation of the quotient formula: (48 + 2*2*(24 - 3m)) / 3
        if (fp.chi_Z, fp.chi_X0, fp.chi_X) != (48 - 4 * m, 96 - 10 * m, 240 - 30 * m):
            bad.append(f"{p} values")
        if not (r.mismatch_flags["Z"] and r.mismatch_flags["X0"] and r.mismatch_flags["X"]):
            bad.append(f"{p} flags")
        if not {"mismatch.Z", "mismatch.X0", "mismatch.X"} <= {n.code for n in r.notes}:
            bad.append(f"{p} notes")
    criterion(5, "cross-check finding", not bad, f"{24 - len({b.split()[0] for b in bad})}/24 pairs" + (f" {bad[:3]}" if bad else ""))


def test_6_chain_identities(criterion):
    bad = []
    for p in admissible_pairs():
        r = build_report(p)
        for st in (r.closed_form, r.first_principles):
            if st.chi_X0 != st.chi_Z + 2 * (24 - 3 * p.m) or st.chi_X != 3 * st.chi_X0 - 48:
                bad.append((p, st.mode.value))
    criterion(6, "mode-internal chain identities", not bad, f"{48 - len(bad)}/48 pair-modes")


def test_7_determinism(criterion):
    commands = [
        ["table", "--mode", "closed"],
        ["table", "--mode", "first"],
        ["table", "--mode", "both"],
        ["pair", "1", "1"],
        ["pair", "7", "7"],
        ["lattice", str(DATA / "k3.json")],
        ["verify"],
    ]
    diffs = []
    for argv in commands:
        for fmt in ("text", "json"):
            outs = [
                subprocess.run(
                    [sys.executable, "-m", "k3orbifold", *argv, "--format", fmt], capture_output=True
                ).stdout
                for _ in range(2)
            ]
            if outs[0] != outs[1] or not outs[0]:
                diffs.append((argv[0], fmt))
    n = 2 * len(commands)
    criterion(7, "determinism", not diffs, f"{n - len(diffs)}/{n} command-format combinations byte-identical")
