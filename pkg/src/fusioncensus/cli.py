"""Command-line front end.

Every subcommand builds a JSON-able report first; the exit code is derived
from the report's ``status`` field alone, and the human text is rendered
from the same report.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .catalog import BudgetExceeded, CatalogSpec, build, catalog_specs
from .cyclo import ParseError, format_cyclo, format_numeric, parse_cyclo
from .gauge import (
    GaugeTransform,
    MonomialSyntaxError,
    apply_gauge,
    apply_permutation,
    random_gauge,
)
from .invariant import (
    VacuumError,
    bundled_census,
    bundled_census_names,
    census_from_json,
    evaluate_item,
    format_value,
    item_from_json,
    match_census,
    numeric_value,
    value_to_json,
)
from .ring import RingError, automorphisms, format_permutation, parse_permutation, ring_from_json
from .skeleton import (
    DataError,
    InvalidDataError,
    NotApplicableError,
    PreconditionError,
    bundled_ring,
    bundled_ring_names,
    check_hexagon,
    check_pentagon,
    check_pivotal,
    check_vacuum,
    classify_properties,
    data_from_json,
    data_to_json,
    quantum_dims,
    s_matrix,
)
from .matrix import det

EXIT_CODES = {"ok": 0, "failed": 1, "parse-error": 2, "not-found": 3, "ambiguous": 4}

CHECKS = ("vacuum", "pentagon", "hexagon", "pivotal")


class _ParseFailure(Exception):
    def __init__(self, report: dict) -> None:
        self.report = report


def exit_code(report: dict) -> int:
    return EXIT_CODES[report["status"]]


# -- input helpers ------------------------------------------------------------


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise _ParseFailure({"status": "parse-error", "file": path, "error": str(exc), "offset": exc.pos}) from None
    except OSError as exc:
        raise _ParseFailure({"status": "parse-error", "file": path, "error": str(exc)}) from None


def _parse_guard(path: str, fn):
    try:
        return fn()
    except (ParseError, MonomialSyntaxError) as exc:
        raise _ParseFailure(
            {"status": "parse-error", "file": path, "error": str(exc), "offset": exc.offset}
        ) from None
    except (DataError, RingError, InvalidDataError, KeyError, TypeError, ValueError) as exc:
        raise _ParseFailure({"status": "parse-error", "file": path, "error": str(exc)}) from None


def _load_data(path: str):
    obj = _read_json(path)
    return _parse_guard(path, lambda: data_from_json(obj))


def _load_ring(ref: str):
    if ref in bundled_ring_names():
        return bundled_ring(ref)
    obj = _read_json(ref)
    return _parse_guard(ref, lambda: ring_from_json(obj))


def _load_census(ref: str):
    if ref in bundled_census_names():
        return bundled_census(ref)
    obj = _read_json(ref)
    return _parse_guard(ref, lambda: census_from_json(obj))


def _ring_ref(ring):
    return ring.name if ring.name in bundled_ring_names() else None


def _dumps(obj) -> str:
    # one symbol per line keeps data files diffable
    if isinstance(obj, dict) and "F" in obj:
        parts = []
        for k, v in obj.items():
            if isinstance(v, list):
                body = ",\n  ".join(json.dumps(e, ensure_ascii=False) for e in v)
                parts.append(f" {json.dumps(k)}: [\n  {body}\n ]")
            else:
                parts.append(f" {json.dumps(k)}: {json.dumps(v, ensure_ascii=False)}")
        return "{\n" + ",\n".join(parts) + "\n}"
    return json.dumps(obj, indent=1, ensure_ascii=False)


def _write_json(obj, path: Optional[str]) -> None:
    text = _dumps(obj) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# -- commands -----------------------------------------------------------------


def run_verify(data_path: str, checks=CHECKS) -> dict:
    data = _load_data(data_path)
    runners = {
        "vacuum": check_vacuum,
        "pentagon": check_pentagon,
        "hexagon": check_hexagon,
        "pivotal": check_pivotal,
    }
    reports = []
    for name in CHECKS:
        if name not in checks:
            continue
        if name == "hexagon" and data.R is None:
            reports.append({"check": name, "pass": None, "note": "no R-symbols"})
            continue
        if name == "pivotal" and data.P is None:
            reports.append({"check": name, "pass": None, "note": "no pivotal coefficients"})
            continue
        try:
            reports.append(runners[name](data).to_json())
        except PreconditionError as exc:
            reports.append({"check": name, "pass": False, "note": str(exc), "counterexamples": []})
    ok = all(r["pass"] is not False for r in reports)
    return {"command": "verify", "status": "ok" if ok else "failed", "checks": reports}


def run_identify(data_path: str, census_ref: Optional[str] = None, gauge_seed: Optional[int] = None) -> dict:
    data = _load_data(data_path)
    if census_ref is None:
        if data.ring.name not in bundled_census_names():
            return {"command": "identify", "status": "not-found", "error": "no bundled census for this ring"}
        census_ref = data.ring.name
    table = _load_census(census_ref)
    if gauge_seed is not None:
        data = apply_gauge(data, random_gauge(data.ring, gauge_seed))
    try:
        names = match_census(data, table)
    except VacuumError as exc:
        return {"command": "identify", "status": "failed", "error": str(exc)}
    except ValueError as exc:
        return {"command": "identify", "status": "failed", "error": str(exc)}
    status = "ok" if len(names) == 1 else ("not-found" if not names else "ambiguous")
    return {"command": "identify", "status": status, "matches": names}


def run_report(data_path: str, digits: int = 3) -> dict:
    data = _load_data(data_path)
    flags = classify_properties(data)
    out: dict = {"command": "report", "status": "ok", "flags": flags.to_json()}
    if not check_pentagon(data).passed:
        out["status"] = "failed"
    if flags.pivotal:
        dims = quantum_dims(data)
        out["dims"] = {
            str(a): {"exact": format_cyclo(v), "numeric": format_numeric(v, digits)} for a, v in sorted(dims.items())
        }
    else:
        out["dims"] = "not-applicable"
    if flags.ribbon:
        S = s_matrix(data)
        out["S"] = {
            "exact": [[format_cyclo(x) for x in row] for row in S],
            "numeric": [[format_numeric(x, digits) for x in row] for row in S],
            "det": format_cyclo(det(S)),
        }
    else:
        out["S"] = "not-applicable"
    return out


def run_autos(ring_ref: str) -> dict:
    ring = _load_ring(ring_ref)
    autos = automorphisms(ring)
    return {
        "command": "autos",
        "status": "ok",
        "count": len(autos),
        "automorphisms": [format_permutation(p) for p in autos],
    }


def _transform_from_json(obj, ring, path: str) -> GaugeTransform:
    def go():
        vals = {}
        for entry in obj["g"]:
            vals[tuple(entry["i"])] = parse_cyclo(entry["v"])
        return GaugeTransform(ring, vals)

    return _parse_guard(path, go)


def run_gauge(data_path: str, seed: Optional[int] = None, transform_path: Optional[str] = None, max_order: int = 24):
    data = _load_data(data_path)
    if transform_path is not None:
        g = _transform_from_json(_read_json(transform_path), data.ring, transform_path)
    else:
        g = random_gauge(data.ring, 0 if seed is None else seed, max_order=max_order)
    new = apply_gauge(data, g)
    return {"command": "gauge", "status": "ok", "data": data_to_json(new, _ring_ref(data.ring))}


def run_perm(data_path: str, perm: str) -> dict:
    data = _load_data(data_path)
    sigma = _parse_guard(perm, lambda: parse_permutation(perm, data.ring.rank))
    try:
        new = apply_permutation(data, sigma)
    except ValueError as exc:
        return {"command": "perm", "status": "failed", "error": str(exc)}
    return {"command": "perm", "status": "ok", "data": data_to_json(new, _ring_ref(data.ring))}


def _spec_items(obj) -> list[tuple[str, object]]:
    cols = obj["columns"] if isinstance(obj, dict) else obj
    out = []
    for i, c in enumerate(cols):
        if isinstance(c, dict) and "item" in c:
            out.append((c.get("name", f"X_{i + 1}"), item_from_json(c["item"])))
        else:
            out.append((f"X_{i + 1}", item_from_json(c)))
    return out


def run_invariants(data_path: str, spec_path: str, digits: int = 3) -> dict:
    data = _load_data(data_path)
    spec = _read_json(spec_path)
    items = _parse_guard(spec_path, lambda: _spec_items(spec))
    group = automorphisms(data.ring)
    rows = []
    for name, item in items:
        try:
            v = evaluate_item(item, data, group)
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            return {"command": "invariants", "status": "failed", "error": f"{name}: {exc}"}
        rows.append(
            {
                "name": name,
                "exact": value_to_json(v),
                "numeric": numeric_value(v, digits),
                "text": format_value(v),
                "text_numeric": format_value(v, digits),
            }
        )
    return {"command": "invariants", "status": "ok", "values": rows}


def run_catalog_build(family: str, params: list[int], braiding: Optional[int], pivotal: Optional[int]) -> dict:
    spec = CatalogSpec(family, tuple(params), braiding, pivotal)
    try:
        data = build(spec)
    except (ValueError, TypeError, BudgetExceeded) as exc:
        return {"command": "catalog", "status": "failed", "error": str(exc)}
    return {"command": "catalog", "status": "ok", "data": data_to_json(data, _ring_ref(data.ring))}


def run_catalog_list(ring_name: str) -> dict:
    try:
        specs = catalog_specs(ring_name)
    except KeyError:
        return {"command": "catalog", "status": "not-found", "error": f"no catalog for ring {ring_name!r}"}
    return {
        "command": "catalog",
        "status": "ok",
        "specs": [
            {"family": s.family, "params": list(s.params), "braiding": s.braiding, "pivotal": s.pivotal}
            for s in specs
        ],
    }


# -- rendering ----------------------------------------------------------------


def render(report: dict) -> str:
    status = report["status"]
    if status == "parse-error":
        where = f" (byte {report['offset']})" if "offset" in report else ""
        return f"parse error in {report.get('file', '?')}{where}: {report['error']}"
    if "error" in report:
        return f"{status}: {report['error']}"
    cmd = report.get("command")
    lines: list[str] = []
    if cmd == "verify":
        for r in report["checks"]:
            verdict = {True: "ok", False: "FAILED", None: "skipped"}[r["pass"]]
            line = f"{r['check']}: {verdict}"
            if r.get("note"):
                line += f" ({r['note']})"
            lines.append(line)
            for c in r.get("counterexamples", [])[:5]:
                lines.append(f"  {c['equation']} {c['index']}: lhs={c['lhs']} rhs={c['rhs']}")
    elif cmd == "identify":
        if status == "ok":
            lines.append(report["matches"][0])
        elif status == "ambiguous":
            lines.append("ambiguous: " + ", ".join(report["matches"]))
        else:
            lines.append("no matching census row")
    elif cmd == "report":
        flags = report["flags"]
        lines.append("flags: " + ", ".join(k for k in ("pivotal", "braided", "spherical", "ribbon", "modular") if flags[k]))
        lines.append(f"unitary: {flags['unitary']}")
        if isinstance(report["dims"], dict):
            for a, d in report["dims"].items():
                lines.append(f"d_{a} = {d['exact']}  ~ {d['numeric']}")
        else:
            lines.append("dims: not applicable")
        if isinstance(report["S"], dict):
            lines.append("S =")
            for row in report["S"]["numeric"]:
                lines.append("  [" + ", ".join(row) + "]")
            lines.append(f"det S = {report['S']['det']}")
    elif cmd == "autos":
        lines.append(f"{report['count']} automorphism(s)")
        lines.extend(report["automorphisms"])
    elif cmd == "invariants":
        for r in report["values"]:
            lines.append(f"{r['name']} = {r['text']}  ~ {r['text_numeric']}")
    elif cmd == "catalog" and "specs" in report:
        for s in report["specs"]:
            p = " ".join(map(str, s["params"]))
            lines.append(f"{s['family']} {p} --braiding {s['braiding'] or 0} --pivotal {s['pivotal'] or 0}")
    return "\n".join(lines)


# -- argument parsing -----------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fusioncensus", description="Verify, classify and identify fusion category data.")
    p.add_argument("--json", action="store_true", help="print the machine-readable report")
    p.add_argument("--digits", type=int, default=3, help="decimal digits for numeric output")
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="check vacuum, pentagon, hexagon and pivotal equations")
    v.add_argument("data")
    v.add_argument("--checks", default=",".join(CHECKS))

    i = sub.add_parser("identify", help="look a datum up in a census table")
    i.add_argument("data")
    i.add_argument("census", nargs="?", help="census file or bundled name (default: by ring)")
    i.add_argument("--gauge-seed", type=int)

    r = sub.add_parser("report", help="property flags, quantum dimensions and S")
    r.add_argument("data")

    a = sub.add_parser("autos", help="list ring automorphisms")
    a.add_argument("ring", help="ring file or bundled name")

    g = sub.add_parser("gauge", help="apply a random or explicit gauge transform")
    g.add_argument("data")
    g.add_argument("--gauge-seed", type=int)
    g.add_argument("--transform", help='JSON file {"g": [{"i": [a,b,c], "v": "..."}]}')
    g.add_argument("--max-order", type=int, default=24)
    g.add_argument("-o", "--output")

    pm = sub.add_parser("perm", help="relabel by a ring automorphism")
    pm.add_argument("data")
    pm.add_argument("permutation", help="cycle notation, e.g. '(2 3)'")
    pm.add_argument("-o", "--output")

    iv = sub.add_parser("invariants", help="evaluate the items of a spec file")
    iv.add_argument("data")
    iv.add_argument("spec")

    c = sub.add_parser("catalog", help="build or list catalog data")
    csub = c.add_subparsers(dest="catcmd", required=True)
    cb = csub.add_parser("build")
    cb.add_argument("family", choices=["trivial", "pointed", "fib", "ising", "ty"])
    cb.add_argument("params", nargs="*", type=int)
    cb.add_argument("--braiding", type=int)
    cb.add_argument("--pivotal", type=int)
    cb.add_argument("-o", "--output")
    cl = csub.add_parser("list")
    cl.add_argument("ring")
    return p


def _dispatch(args) -> tuple[dict, Optional[str]]:
    """The report plus, for data-emitting commands, the output path."""
    if args.cmd == "verify":
        checks = [x.strip() for x in args.checks.split(",") if x.strip()]
        bad = [x for x in checks if x not in CHECKS]
        if bad:
            return {"status": "parse-error", "file": "--checks", "error": f"unknown check {bad[0]!r}"}, None
        return run_verify(args.data, checks), None
    if args.cmd == "identify":
        return run_identify(args.data, args.census, args.gauge_seed), None
    if args.cmd == "report":
        return run_report(args.data, args.digits), None
    if args.cmd == "autos":
        return run_autos(args.ring), None
    if args.cmd == "gauge":
        return run_gauge(args.data, args.gauge_seed, args.transform, args.max_order), args.output or "-"
    if args.cmd == "perm":
        return run_perm(args.data, args.permutation), args.output or "-"
    if args.cmd == "invariants":
        return run_invariants(args.data, args.spec, args.digits), None
    if args.catcmd == "build":
        return run_catalog_build(args.family, args.params, args.braiding, args.pivotal), args.output or "-"
    return run_catalog_list(args.ring), None


def main(argv: Optional[list[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        report, out = _dispatch(args)
    except _ParseFailure as exc:
        report, out = exc.report, None
    except NotApplicableError as exc:
        report, out = {"status": "failed", "error": str(exc)}, None
    code = exit_code(report)
    if out is not None and report["status"] == "ok":
        _write_json(report["data"], out)
        if args.json and out != "-":
            _write_json({k: v for k, v in report.items() if k != "data"}, None)
    elif args.json:
        _write_json(report, None)
    else:
        text = render(report)
        if text:
            print(text, file=sys.stdout if code == 0 else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
