"""Command-line front end.

Exit codes: 0 success or affirmative verdict, 2 negative verdict,
3 precondition failure, 4 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .covering import covered_sets, graph_to_dot
from .delta_complex import (
    additive_faces,
    face_type,
    is_diagonally_constrained,
    is_forced_face,
    maximal_additive_faces,
)
from .errors import (
    FNotVertex,
    NotDiagonallyConstrained,
    NotGenuinely2D,
    NotMinimal,
    PwlExtError,
)
from .extremality import assemble_system, decide_extreme
from .minimality import check_minimal
from .pwl import SCHEMA_VERSION, dump_function, load_function
from .render import render_svg

EXIT_OK = 0
EXIT_NEGATIVE = 2
EXIT_PRECONDITION = 3
EXIT_IO = 4


def _face_dict(face) -> dict:
    norm = face.normalized()
    return {"kind": norm.kind.value, "anchor": list(norm.anchor)}


def _write_json(doc: dict, path: str | None) -> None:
    text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _violation_dict(v) -> dict:
    return {
        "kind": v.kind.value,
        "witness": [[str(p.x), str(p.y)] for p in v.witness],
        "value": str(v.value),
    }


def cmd_check_minimal(args) -> int:
    pi = load_function(args.input)
    report = check_minimal(pi, max_violations=args.max_violations)
    doc = {
        "schema": SCHEMA_VERSION,
        "minimal": report.verdict,
        "violations": [_violation_dict(v) for v in report.violations],
        "truncated": report.truncated,
    }
    _write_json(doc, args.output)
    return EXIT_OK if report.verdict else EXIT_NEGATIVE


def cmd_check_diag(args) -> int:
    pi = load_function(args.input)
    report = check_minimal(pi)
    if not report:
        _write_json({"schema": SCHEMA_VERSION, "error": "not_minimal"}, args.output)
        return EXIT_PRECONDITION
    ok, bad = is_diagonally_constrained(pi)
    doc = {"schema": SCHEMA_VERSION, "diagonally_constrained": ok}
    if bad is not None:
        doc["offending_face"] = {
            "p1": _face_dict(bad.p1),
            "p2": _face_dict(bad.p2),
            "p3": _face_dict(bad.p3),
        }
    _write_json(doc, args.output)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_emax(args) -> int:
    pi = load_function(args.input)
    report = check_minimal(pi)
    if not report:
        _write_json({"schema": SCHEMA_VERSION, "error": "not_minimal"}, args.output)
        return EXIT_PRECONDITION
    faces = maximal_additive_faces(pi)
    include_sym = args.include_symmetry_faces and not args.no_symmetry
    if not include_sym:
        faces = [f for f in faces if not is_forced_face(f, pi)]
    entries = []
    for f in faces:
        try:
            ftype = face_type(f).value
        except PwlExtError:
            ftype = None
        entries.append({
            "type": ftype,
            "p1": _face_dict(f.p1),
            "p2": _face_dict(f.p2),
            "p3": _face_dict(f.p3),
        })
    _write_json({"schema": SCHEMA_VERSION, "count": len(entries), "faces": entries},
                args.output)
    return EXIT_OK


def _certificate_dict(cert) -> dict:
    return {
        "flavor": cert.perturbation.flavor.value,
        "m": cert.perturbation.m,
        "epsilon": str(cert.epsilon),
        "region": [{"kind": c.kind.value, "anchor": list(c.anchor)}
                   for c in sorted(cert.perturbation.region,
                                   key=lambda c: (c.kind.value, c.anchor))],
    }


def _write_certificate_files(cert, out_dir: str) -> None:
    os.makedirs(out_dir, exist_ok=True)
    hi, lo = cert.split
    dump_function(hi, os.path.join(out_dir, "pi1.json"))
    dump_function(lo, os.path.join(out_dir, "pi2.json"))
    record = dict(_certificate_dict(cert), schema=SCHEMA_VERSION)
    _write_json(record, os.path.join(out_dir, "certificate.json"))


def cmd_decide(args) -> int:
    pi = load_function(args.input)
    try:
        verdict = decide_extreme(pi, m=args.m)
    except (NotDiagonallyConstrained, NotGenuinely2D) as exc:
        doc = {
            "schema": SCHEMA_VERSION,
            "verdict": "undecided",
            "m": args.m,
            "kernel_dim": exc.kernel_dim,
            "reason": type(exc).__name__,
            "certificate": None,
        }
        _write_json(doc, args.output)
        return EXIT_PRECONDITION
    doc = {
        "schema": SCHEMA_VERSION,
        "verdict": "extreme" if verdict.extreme else "not_extreme",
        "m": verdict.m,
        "kernel_dim": verdict.kernel_dim,
        "certificate": _certificate_dict(verdict.certificate) if verdict.certificate else None,
    }
    if args.graph_dot:
        ok, _ = is_diagonally_constrained(pi)
        if ok:
            with open(args.graph_dot, "w", encoding="utf-8") as fh:
                fh.write(graph_to_dot(covered_sets(pi)))
    _write_json(doc, args.output)
    if verdict.certificate and args.cert_dir:
        _write_certificate_files(verdict.certificate, args.cert_dir)
    return EXIT_OK if verdict.extreme else EXIT_NEGATIVE


def cmd_perturb(args) -> int:
    pi = load_function(args.input)
    verdict = decide_extreme(pi, m=args.m)
    if verdict.extreme:
        _write_json({"schema": SCHEMA_VERSION, "verdict": "extreme",
                     "certificate": None}, args.output)
        return EXIT_NEGATIVE
    _write_certificate_files(verdict.certificate, args.out_dir)
    _write_json(dict(_certificate_dict(verdict.certificate),
                     schema=SCHEMA_VERSION, verdict="not_extreme"), args.output)
    return EXIT_OK


def cmd_plot(args) -> int:
    pi = load_function(args.input)
    svg = render_svg(pi)
    out = args.output or (os.path.splitext(args.input)[0] + ".svg")
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return EXIT_OK


def cmd_system_dump(args) -> int:
    pi = load_function(args.input)
    n = args.n if args.n else args.m * pi.q
    sys_ = assemble_system(pi, n)
    doc = {
        "schema": SCHEMA_VERSION,
        "n": sys_.n,
        "num_vars": sys_.num_vars,
        "rows": [{"vars": list(idxs), "coefs": list(coefs), "rhs": str(b)}
                 for (idxs, coefs), b in zip(sys_.rows, sys_.rhs)],
    }
    _write_json(doc, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pwlext",
        description="Exact minimality/extremality certification for piecewise "
                    "linear functions on the standard triangulation.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("input", help="function JSON file")
        p.add_argument("-o", "--output", help="output path (default: stdout)")

    p = sub.add_parser("check-minimal", help="run the finite minimality test")
    common(p)
    p.add_argument("--max-violations", type=int, default=10)
    p.set_defaults(func=cmd_check_minimal)

    p = sub.add_parser("check-diag", help="test the diagonally-constrained property")
    common(p)
    p.set_defaults(func=cmd_check_diag)

    p = sub.add_parser("emax", help="list maximal additive faces")
    common(p)
    p.add_argument("--include-symmetry-faces", action="store_true")
    p.add_argument("--no-symmetry", action="store_true",
                   help="filter symmetry faces (the default)")
    p.set_defaults(func=cmd_emax)

    p = sub.add_parser("decide", help="decide extremality with certificates")
    common(p)
    p.add_argument("--m", type=int, default=3, help="refinement factor (>= 3)")
    p.add_argument("--cert-dir", help="directory for certificate files")
    p.add_argument("--graph-dot", help="write the covering graph in DOT format")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("perturb", help="produce a non-extremality certificate")
    common(p)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--out-dir", default=".", help="directory for certificate files")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("plot", help="render the function as SVG")
    common(p)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("system-dump", help="dump the additivity linear system")
    common(p)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--n", type=int, help="explicit grid resolution")
    p.set_defaults(func=cmd_system_dump)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    threads = os.environ.get("PWLEXT_THREADS")
    if threads is not None:
        try:
            if int(threads) < 1:
                raise ValueError
        except ValueError:
            print(f"error: PWLEXT_THREADS must be a positive integer, got {threads!r}",
                  file=sys.stderr)
            return EXIT_IO
        # accepted for forward compatibility; the scans currently run in a
        # single process
    try:
        return args.func(args)
    except (FNotVertex, NotMinimal, NotDiagonallyConstrained, NotGenuinely2D) as exc:
        print(f"precondition failure: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
