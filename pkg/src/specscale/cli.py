"""Command-line surface.

Ingests a tuple from the JSON block schema, runs one analysis, and
emits CSV/JSON/OBJ either to stdout or into an output directory
(written atomically).  Exit codes: 0 success, 1 usage, 2 malformed
input JSON, 3 non-self-adjoint input, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

from . import algebra, faces, sampling, scale, spectral, structure
from .errors import (
    HermitianError,
    IngestError,
    InvariantViolation,
    SpecScaleError,
)
from .spectral import SpectralPair

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BAD_JSON = 2
EXIT_NOT_HERMITIAN = 3
EXIT_INVARIANT = 4

COMMANDS = ("support", "extremes", "faces", "slice", "corners", "center", "abelian")


def _f17(x):
    return format(float(x), ".17g")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser():
    parser = _Parser(prog="specscale", description=__doc__)
    sub = parser.add_subparsers(dest="command")
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="tuple JSON file")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--samples", type=int, default=256)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cluster-tol", type=float, default=None)
        p.add_argument("--eig-eq-tol", type=float, default=None)
        p.add_argument("--iso-radius", type=float, default=None)
        p.add_argument("--level", type=float, default=0.5)
        p.add_argument(
            "--format", choices=("csv", "json", "obj"), default=None
        )
    return parser


def _write_atomic(out_dir, name, text):
    os.makedirs(out_dir, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=out_dir, prefix=f".{name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, os.path.join(out_dir, name))
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return os.path.join(out_dir, name)


def _emit(args, name, text):
    if args.out:
        path = _write_atomic(args.out, name, text)
        print(f"wrote {path}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _sweep_pairs(optuple, samples, cluster_tol):
    """Direction parts with their full eigenvalue sweep levels."""
    for t in scale._cloud_t_directions(optuple.n, samples):
        b_t = algebra.linear_combination(optuple, t)
        info = spectral.decompose(optuple.algebra, b_t, cluster_tol=cluster_tol)
        yield t, sampling.eigenvalue_sweep(info.values)


def cmd_support(optuple, args):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    n = optuple.n
    writer.writerow(
        ["s"]
        + [f"t{i + 1}" for i in range(n)]
        + ["alpha", "trace_p_minus", "trace_p_plus", "face_dim"]
    )
    alg = optuple.algebra
    for t, levels in _sweep_pairs(optuple, args.samples, args.cluster_tol):
        for s in levels:
            pair = SpectralPair(s=s, t=t)
            face = scale.exposed_face(
                optuple,
                pair,
                cluster_tol=args.cluster_tol,
                eig_eq_tol=args.eig_eq_tol,
            )
            writer.writerow(
                [_f17(s)]
                + [_f17(x) for x in t]
                + [
                    _f17(face.alpha),
                    _f17(alg.trace(face.interval.lower)),
                    _f17(alg.trace(face.interval.upper)),
                    face.dimension,
                ]
            )
    _emit(args, "support.csv", buf.getvalue())


def cmd_extremes(optuple, args):
    cloud = scale.extreme_point_cloud(
        optuple,
        args.samples,
        cluster_tol=args.cluster_tol,
        eig_eq_tol=args.eig_eq_tol,
    )
    if args.format == "obj":
        buf = io.StringIO()
        scale.export_hull_obj(
            optuple, buf, samples=max(args.samples, 1024), seed=args.seed
        )
        _emit(args, "hull.obj", buf.getvalue())
        return
    buf = io.StringIO()
    scale.export_extremes_csv(cloud, buf)
    _emit(args, "extremes.csv", buf.getvalue())
    stats = {"points": len(cloud), "directions": args.samples}
    print(json.dumps(stats), file=sys.stderr)


def _distinct_faces(optuple, args, vertices_only=False):
    """Deduplicated exposed faces from the sweep, as (pair, face) rows."""
    seen = []
    out = []
    alg = optuple.algebra
    for t, levels in _sweep_pairs(optuple, args.samples, args.cluster_tol):
        for s in levels:
            face = scale.exposed_face(
                optuple,
                SpectralPair(s=s, t=t),
                cluster_tol=args.cluster_tol,
                eig_eq_tol=args.eig_eq_tol,
            )
            if vertices_only and not face.interval.is_point():
                continue
            key = (face.interval.lower, face.interval.upper)
            if any(
                algebra.max_norm(key[0] - a) <= 1e-8
                and algebra.max_norm(key[1] - b) <= 1e-8
                for a, b in seen
            ):
                continue
            seen.append(key)
            out.append(face)
    return out


def cmd_faces(optuple, args):
    reports = []
    alg = optuple.algebra
    for face in _distinct_faces(optuple, args):
        proper = faces._is_proper(optuple, face.interval)
        entry = {
            "pair": {
                "s": float(_f17(face.pair.s)),
                "t": [float(_f17(x)) for x in face.pair.t],
            },
            "alpha": float(_f17(face.alpha)),
            "trace_lower": float(_f17(alg.trace(face.interval.lower))),
            "trace_upper": float(_f17(alg.trace(face.interval.upper))),
            "dimension": face.dimension,
        }
        if proper:
            cone = faces.normal_cone(optuple, face.interval, args.samples)
            chain = faces.minimal_exposed_chain(
                optuple, face.interval, args.samples
            )
            entry.update(
                degree=cone.degree,
                degree_exact=cone.exact,
                sharp=cone.degree >= 2,
                chain_length=len(chain),
            )
        reports.append(entry)
    _emit(args, "faces.json", json.dumps(reports, indent=2) + "\n")


def cmd_slice(optuple, args):
    sl = scale.isotrace_slice(
        optuple, args.level, resolution=max(args.samples, 3)
    )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"x{i + 1}" for i in range(optuple.n)])
    for row in sl.points:
        writer.writerow([_f17(x) for x in row])
    _emit(args, "slice.csv", buf.getvalue())


def cmd_corners(optuple, args):
    sharp_list = []
    gap_reports = []
    for face in _distinct_faces(optuple, args):
        if not faces._is_proper(optuple, face.interval):
            continue
        cone = faces.normal_cone(optuple, face.interval, args.samples)
        handle = faces.FaceHandle(face.interval)
        if cone.degree >= 2:
            sharp_list.append(
                {
                    "trace_lower": float(
                        _f17(optuple.algebra.trace(face.interval.lower))
                    ),
                    "trace_upper": float(
                        _f17(optuple.algebra.trace(face.interval.upper))
                    ),
                    "dimension": face.dimension,
                    "degree": cone.degree,
                }
            )
        gap_reports.extend(
            structure.detect_gap(optuple, handle, cone, eig_eq_tol=args.eig_eq_tol)
        )
    payload = structure.report_json(gap_reports=gap_reports)
    payload["sharp_faces"] = sharp_list
    del payload["central_projections"]
    _emit(args, "corners.json", json.dumps(payload, indent=2) + "\n")


def cmd_center(optuple, args):
    reports = []
    for face in _distinct_faces(optuple, args):
        if not faces._is_proper(optuple, face.interval):
            continue
        cone = faces.normal_cone(optuple, face.interval, args.samples)
        handle = faces.FaceHandle(face.interval)
        reports.append(structure.detect_central(optuple, handle, cone))
    payload = structure.report_json(central_reports=reports)
    del payload["gaps"]
    cloud = scale.extreme_point_cloud(optuple, args.samples)
    isolated = structure.isolated_extremes_to_center(
        optuple, cloud, iso_radius=args.iso_radius
    )
    payload["isolated_extreme_points"] = [
        {
            "point": [float(_f17(x)) for x in rep.point],
            "central": rep.is_central,
        }
        for rep in isolated
    ]
    _emit(args, "center.json", json.dumps(payload, indent=2) + "\n")


def cmd_abelian(optuple, args):
    verdict = structure.abelian_verdict(optuple, directions=args.samples)
    payload = structure.report_json(verdict=verdict)
    del payload["central_projections"]
    del payload["gaps"]
    _emit(args, "abelian.json", json.dumps(payload, indent=2) + "\n")


HANDLERS = {
    "support": cmd_support,
    "extremes": cmd_extremes,
    "faces": cmd_faces,
    "slice": cmd_slice,
    "corners": cmd_corners,
    "center": cmd_center,
    "abelian": cmd_abelian,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            optuple = algebra.tuple_from_json(fh.read())
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_JSON
    except IngestError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_BAD_JSON
    except HermitianError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_NOT_HERMITIAN
    try:
        HANDLERS[args.command](optuple, args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (SpecScaleError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
