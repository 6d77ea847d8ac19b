"""Command line interface.

    k3orbifold table [--mode closed|first|both] [--format text|json]
    k3orbifold pair M A [--format text|json]
    k3orbifold lattice FILE [--format text|json]
    k3orbifold verify [--strict] [--format text|json]

Errors go to stderr as a single line ``error[<code>]: <reason>`` and exit
nonzero.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from . import lattice as lt
from . import verify as vf
from .classification import InadmissiblePairError, admissible_pairs, nearest_admissible
from .orbifold import STAGES, ConstructionReport, EulerStage, SingularityInventory, build_report

SCHEMA_VERSION = "1.0"

EXIT_FAILURE = 1
EXIT_USAGE = 2

MODES = {"closed": "closed", "first": "first", "first-principles": "first", "both": "both"}


class CliError(Exception):
    def __init__(self, code: str, message: str, exit_code: int = EXIT_FAILURE):
        super().__init__(message)
        self.code = code
        self.exit_code = exit_code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message, EXIT_USAGE)


# -- payload builders -------------------------------------------------------


def _stages(st: EulerStage) -> dict:
    return {"chi_product": st.chi_product, "chi_Z": st.chi_Z, "chi_X0": st.chi_X0, "chi_X": st.chi_X}


def _fixed_locus(f) -> dict:
    return {"shape": f.shape.value, "n": f.n, "k": f.k, "g": f.g, "chi": f.chi}


def _inventory(inv: SingularityInventory) -> dict:
    def side(entries):
        return [
            {
                "type": e.type.label,
                "written": "1/3({},{},{})".format(*e.type.written),
                "carrier": e.type.carrier.value,
                "count": e.count,
                "genus": e.genus,
                "gorenstein": e.type.gorenstein,
            }
            for e in entries
        ]

    return {"at_zero": side(inv.at_zero), "at_infinity": side(inv.at_infinity)}


def report_payload(r: ConstructionReport) -> dict:
    return {
        "pair": {"m": r.pair.m, "a": r.pair.a},
        "fixed_locus": _fixed_locus(r.fixed_locus),
        "inventory": _inventory(r.inventory),
        "closed_form": _stages(r.closed_form),
        "first_principles": _stages(r.first_principles),
        "mismatch_flags": dict(r.mismatch_flags),
    }


def _notes(r: ConstructionReport) -> list[dict]:
    return [{"code": n.code, "message": n.message} for n in r.notes]


def _document(command: str, payload, warnings=()) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "payload": payload,
        "warnings": list(warnings),
    }


def _dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- commands ---------------------------------------------------------------


def cmd_table(mode: str = "closed", fmt: str = "text") -> tuple[str, int]:
    mode = MODES[mode]
    reports = [build_report(p) for p in admissible_pairs()]
    rows = []
    for r in reports:
        f = r.fixed_locus
        row = {"m": r.pair.m, "a": r.pair.a, "n": f.n, "k": f.k, "g": f.g, "shape": f.shape.value}
        if mode in ("closed", "both"):
            row["closed_form"] = _stages(r.closed_form)
        if mode in ("first", "both"):
            row["first_principles"] = _stages(r.first_principles)
        if mode == "both":
            row["mismatch"] = any(r.mismatch_flags.values())
            row["mismatch_flags"] = dict(r.mismatch_flags)
        rows.append(row)
    groups = [
        {"m": m, "pairs": [[r.pair.m, r.pair.a] for r in grp]}
        for m, grp in itertools.groupby(reports, key=lambda r: r.pair.m)
    ]
    warnings = []
    if mode == "both":
        n_bad = sum(1 for row in rows if row["mismatch"])
        if n_bad:
            warnings.append({"code": "mismatch", "message": f"closed form and first principles differ for {n_bad} pairs"})
    payload = {"mode": mode, "rows": rows, "groups": groups}
    if fmt == "json":
        return _dump(_document("table", payload, warnings)), 0
    return _table_text(reports, mode, warnings), 0


def _table_text(reports, mode, warnings) -> str:
    out = []
    heads = {"closed": "closed form", "first": "first principles", "both": "closed / first principles"}
    out.append(f"Euler characteristics ({heads[mode]})")
    out.append("")

    def chi_x(r):
        if mode == "closed":
            return str(r.closed_form.chi_X)
        if mode == "first":
            return str(r.first_principles.chi_X)
        return f"{r.closed_form.chi_X} / {r.first_principles.chi_X}"

    out.append(f"{'(m,a)':<32}| chi(X)")
    out.append("-" * 32 + "+" + "-" * 12)
    for _, grp in itertools.groupby(reports, key=lambda r: r.pair.m):
        grp = list(grp)
        pairs = ",".join(str(r.pair) for r in grp)
        out.append(f"{pairs:<32}| {chi_x(grp[0])}")
    out.append("")

    cols = ["(m,a)", "n", "k", "g"]
    if mode in ("closed", "both"):
        cols += ["Z", "X0", "X"]
    if mode in ("first", "both"):
        cols += ["Z'", "X0'", "X'"]
    if mode == "both":
        cols += ["mismatch"]
    lines = [cols]
    for r in reports:
        f = r.fixed_locus
        row = [str(r.pair), str(f.n), str(f.k), "-" if f.g is None else str(f.g)]
        if mode in ("closed", "both"):
            row += [str(r.closed_form.chi_Z), str(r.closed_form.chi_X0), str(r.closed_form.chi_X)]
        if mode in ("first", "both"):
            st = r.first_principles
            row += [str(st.chi_Z), str(st.chi_X0), str(st.chi_X)]
        if mode == "both":
            row += ["yes" if any(r.mismatch_flags.values()) else "no"]
        lines.append(row)
    widths = [max(len(line[i]) for line in lines) for i in range(len(cols))]
    for line in lines:
        out.append("  ".join(s.rjust(w) for s, w in zip(line, widths)).rstrip())
    if mode != "closed":
        out.append("")
        out.append("primed columns: first-principles evaluation")
    for w in warnings:
        out.append(f"warning[{w['code']}]: {w['message']}")
    return "\n".join(out) + "\n"


def cmd_pair(m: int, a: int, fmt: str = "text") -> tuple[str, int]:
    try:
        r = build_report((m, a))
    except InadmissiblePairError as exc:
        near = ", ".join(str(p) for p in nearest_admissible((m, a)))
        raise CliError("inadmissible-pair", f"{exc}; nearest admissible: {near}") from None
    if fmt == "json":
        return _dump(_document("pair", report_payload(r), _notes(r))), 0
    return _pair_text(r), 0


def _pair_text(r: ConstructionReport) -> str:
    f = r.fixed_locus
    out = [f"(m,a) = {r.pair}", ""]
    if f.g is None:
        out.append(f"fixed locus: {f.shape.value}, {f.n} isolated points, chi = {f.chi}")
    else:
        out.append(
            f"fixed locus: {f.shape.value}, n = {f.n} points, k = {f.k} rational curves, "
            f"one curve of genus g = {f.g}, chi = {f.chi}"
        )
    out.append("")
    for side, entries in (("z = 0", r.inventory.at_zero), ("z = inf", r.inventory.at_infinity)):
        out.append(f"singularities over {side}:")
        for e in entries:
            where = "points" if e.genus is None else f"curves of genus {e.genus}"
            gor = "Gorenstein" if e.type.gorenstein else "not Gorenstein"
            written = "1/3({},{},{})".format(*e.type.written)
            out.append(f"  {e.count:>3} x {e.type.label:<11} (as {written})  along {where:<18} {gor}")
    out.append("")
    out.append(f"{'stage':<14}{'closed':>8}{'first':>8}  mismatch")
    for s in STAGES:
        c, p = r.closed_form.value(s), r.first_principles.value(s)
        out.append(f"{'chi(' + s + ')':<14}{c:>8}{p:>8}  {'yes' if r.mismatch_flags[s] else 'no'}")
    out.append("")
    for n in r.notes:
        out.append(f"note[{n.code}]: {n.message}")
    return "\n".join(out) + "\n"


def cmd_lattice(path: str | Path, fmt: str = "text") -> tuple[str, int]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError("io", f"{path}: {exc.strerror}") from None
    try:
        lat = lt.parse_gram_json(text)
    except lt.GramParseError as exc:
        raise CliError("parse", f"{path}: {exc}") from None

    det = lat.determinant()
    inert = lt.inertia(lat)
    payload = {
        "rank": lat.rank,
        "determinant": det,
        "inertia": {"positive": inert.positive, "negative": inert.negative, "null": inert.null},
        "degenerate": det == 0,
    }
    warnings = []
    if det == 0:
        warnings.append({"code": "degenerate", "message": "Gram matrix is degenerate; discriminant group omitted"})
    else:
        disc = lt.discriminant_group(lat)
        payload["discriminant_group"] = list(disc.invariant_factors)
        payload["discriminant_order"] = disc.order
        payload["unimodular"] = disc.is_trivial
        payload["three_elementary"] = disc.is_elementary(3)
        if lat.rank % 2 == 0 and lat.rank <= lt.K3_RANK:
            reading = lt.fixed_lattice_invariants(lat)
            payload["invariants"] = {
                "m": reading.m,
                "a": reading.a,
                "admissible": reading.admissible,
                "interpretation": lt.M_INTERPRETATION,
            }
            warnings += [{"code": "fixed-lattice", "message": w} for w in reading.warnings]
        else:
            warnings.append({"code": "fixed-lattice", "message": f"rank {lat.rank} admits no (m, a) reading"})

    if fmt == "json":
        return _dump(_document("lattice", payload, warnings)), 0
    out = [
        f"rank: {payload['rank']}",
        f"determinant: {det}",
        "inertia: ({positive}, {negative}, {null})".format(**payload["inertia"]),
    ]
    if "discriminant_group" in payload:
        disc = lt.DiscriminantGroup(tuple(payload["discriminant_group"]))
        out.append(f"discriminant group: {disc} (order {disc.order})")
        out.append(f"3-elementary: {'yes' if payload['three_elementary'] else 'no'}")
    if "invariants" in payload:
        inv = payload["invariants"]
        out.append(f"(m, a) = ({inv['m']}, {inv['a']}): {'admissible' if inv['admissible'] else 'not admissible'}")
        out.append(f"  ({inv['interpretation']})")
    out += [f"warning[{w['code']}]: {w['message']}" for w in warnings]
    return "\n".join(out) + "\n", 0


def cmd_verify(strict: bool = False, fmt: str = "text") -> tuple[str, int]:
    results = vf.run_all()

    def status(res):
        if res.passed:
            return "pass"
        return "fail" if (strict or not res.finding) else "finding"

    failed = [res for res in results if status(res) == "fail"]
    code = EXIT_FAILURE if failed else 0
    if fmt == "json":
        payload = {
            "strict": strict,
            "ok": not failed,
            "suites": [{"name": r.name, "status": status(r), "detail": r.detail} for r in results],
        }
        warnings = [
            {"code": "expected-finding", "message": f"{r.name}: {r.detail}"}
            for r in results
            if status(r) == "finding"
        ]
        return _dump(_document("verify", payload, warnings)), code
    out = [f"{status(r).upper():<8} {r.name}: {r.detail}" for r in results]
    out.append("")
    out.append("OK" if not failed else f"FAILED: {', '.join(r.name for r in failed)}")
    return "\n".join(out) + "\n", code


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="k3orbifold", description="Invariants of Calabi-Yau orbifolds built from K3 surfaces with order-3 automorphisms.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p):
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("table", help="Euler characteristics for all admissible pairs")
    p.add_argument("--mode", choices=sorted(MODES), default="closed")
    fmt(p)

    p = sub.add_parser("pair", help="construction report for one pair")
    p.add_argument("m", type=int)
    p.add_argument("a", type=int)
    fmt(p)

    p = sub.add_parser("lattice", help="invariants of a Gram matrix file")
    p.add_argument("file")
    fmt(p)

    p = sub.add_parser("verify", help="run the self-check suites")
    p.add_argument("--strict", action="store_true", help="treat the closed-form mismatch as a failure")
    fmt(p)
    return parser


def run(argv=None) -> tuple[str, int]:
    """Parse ``argv`` and return (stdout text, exit code); raises CliError."""
    args = build_parser().parse_args(argv)
    if args.command == "table":
        return cmd_table(args.mode, args.format)
    if args.command == "pair":
        return cmd_pair(args.m, args.a, args.format)
    if args.command == "lattice":
        return cmd_lattice(args.file, args.format)
    return cmd_verify(args.strict, args.format)


def main(argv=None) -> int:
    try:
        text, code = run(argv)
    except CliError as exc:
        print(f"error[{exc.code}]: {' '.join(str(exc).split())}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
