"""Command line interface.

Verbs:
  classify        type-T classification of one singularity
  check           admissibility of an orbifold spec at a given degree
  enumerate       allowed singularity lists per degree
  invariants      glued-manifold invariants of an orbifold spec (CSV/JSON)
  curvature-scan  pointwise curvature diagnostics of a chart (CSV)
  glue-scan       neck convergence scan of the spliced family (CSV)
  norm            weighted norms of radial test fields (JSON)
  indicial        flat-model kernel battery (JSON)

Exit codes: 0 success; 1 verdict failure under --strict; 2 unparseable
input; 3 parseable input outside the mathematical domain.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import admiss, gluelab, serde, singgroup, topocalc
from .geomkit import (
    ChartDomainError,
    builtin_chart,
    chart_from_config,
    curvature_at,
)

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3


class _ParseFailure(Exception):
    pass


class _DomainFailure(Exception):
    pass


def _load_json_file(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise _ParseFailure(f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise _ParseFailure(f"invalid JSON in {path}: {e}")


def _emit(args, text: str):
    path = serde.resolve_output_path(args.output)
    written = serde.emit(text, path)
    if written is not None:
        print(f"wrote {written}")


# -- exact-side verbs -------------------------------------------------------

def _parse_singularity_or_fail(text: str):
    # "cannot parse" marks a syntax failure; anything else (e.g. a weight
    # pattern that is not free on the 3-sphere) is valid syntax naming an
    # object outside the domain
    try:
        return singgroup.parse_singularity(text)
    except ValueError as e:
        if str(e).startswith("cannot parse"):
            raise _ParseFailure(str(e))
        raise _DomainFailure(str(e))


def _cmd_classify(args) -> int:
    g = _parse_singularity_or_fail(args.singularity)
    verdict = singgroup.is_type_t(g)
    doc = serde.json_document(
        "classification",
        {
            "singularity": singgroup.format_singularity(g),
            "order": g.order,
            "in_su2": singgroup.is_subgroup_su2(g),
            "verdict": verdict.to_json_dict(),
        },
    )
    _emit(args, serde.render_json(doc))
    if args.strict and not verdict.is_type_t:
        return EXIT_VERDICT
    return EXIT_OK


def _spec_from_file(path: str) -> topocalc.OrbifoldSpec:
    d = _load_json_file(path)
    try:
        return topocalc.OrbifoldSpec.from_json_dict(d)
    except (KeyError, TypeError) as e:
        raise _ParseFailure(f"orbifold spec is missing fields: {e}")
    except ValueError as e:
        if str(e).startswith("cannot parse"):
            raise _ParseFailure(str(e))
        raise _DomainFailure(str(e))


def _cmd_check(args) -> int:
    x = _spec_from_file(args.spec)
    try:
        verdict = admiss.check_orbifold(x, args.degree)
    except ValueError as e:
        raise _DomainFailure(str(e))
    doc = serde.json_document(
        "admissibility",
        {"orbifold": x.to_json_dict(), "degree": args.degree, "verdict": verdict.to_json_dict()},
    )
    _emit(args, serde.render_json(doc))
    if args.strict and not verdict.overall:
        return EXIT_VERDICT
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    try:
        groups = admiss.enumerate_allowed(args.degree)
    except ValueError as e:
        raise _DomainFailure(str(e))
    doc = serde.json_document(
        "allowed-singularities",
        {
            "degree": args.degree,
            "order_bound": str(admiss.order_bound(args.degree)),
            "singularities": [
                {
                    "label": admiss.display_label(g),
                    "canonical": singgroup.format_singularity(g.canonical_form()),
                    "order": g.order,
                }
                for g in groups
            ],
        },
    )
    _emit(args, serde.render_json(doc))
    return EXIT_OK


def _cmd_invariants(args) -> int:
    x = _spec_from_file(args.spec)
    try:
        assignment = {lab: topocalc.bubble_for(g) for lab, g in x.singularities}
        inv = topocalc.glue_invariants(x, assignment, recognize=not args.no_recognize)
    except ValueError as e:
        raise _DomainFailure(str(e))
    if args.format == "json":
        doc = serde.json_document("glue-invariants", {"result": inv.to_json_dict()})
        _emit(args, serde.render_json(doc))
    else:
        _emit(args, topocalc.invariants_table_csv([inv]))
    return EXIT_OK


# -- numerical verbs --------------------------------------------------------

def _chart_from_args(args):
    if args.config:
        cfg = _load_json_file(args.config)
        try:
            return chart_from_config(cfg)
        except (KeyError, TypeError) as e:
            raise _ParseFailure(f"bad chart config: {e}")
        except ValueError as e:
            raise _DomainFailure(str(e))
    try:
        return builtin_chart(args.chart)
    except ValueError as e:
        raise _DomainFailure(str(e))


def _scan_points(m, n, seed, box):
    rng = np.random.default_rng(seed)
    pts = []
    tries = 0
    while len(pts) < n and tries < 1000 * n:
        p = rng.uniform(-box, box, size=4)
        tries += 1
        if m.domain is not None and not m.in_domain(p):
            continue
        # keep the whole stencil inside, not just the center
        try:
            from .geomkit.curvature import metric_jets

            metric_jets(m, p)
        except ChartDomainError:
            continue
        pts.append(p)
    if len(pts) < n:
        raise _DomainFailure(
            f"could not place {n} sample points inside the domain of {m.name!r}"
        )
    return pts


def _cmd_curvature_scan(args) -> int:
    m = _chart_from_args(args)
    pts = _scan_points(m, args.points, args.seed, args.box)
    rows = []
    for p in pts:
        dec = curvature_at(m, p)
        lam = np.sort(np.linalg.eigvalsh(dec.weyl_plus))
        if args.einstein_constant is None:
            const = dec.scalar / 4.0
        else:
            const = args.einstein_constant
        resid = dec.ricci - const * dec.metric
        rn = float(np.abs(np.linalg.eigvalsh(dec.frame @ resid @ dec.frame.T)).max())
        rows.append(
            [
                float(p[0]),
                float(p[1]),
                float(p[2]),
                float(p[3]),
                float(dec.scalar),
                float(lam[0]),
                float(lam[1]),
                float(lam[2]),
                float(np.linalg.det(dec.weyl_plus)),
                rn,
            ]
        )
    header = [
        "x0", "x1", "x2", "x3", "s",
        "lam1", "lam2", "lam3", "det_wplus", "einstein_residual",
    ]
    _emit(args, serde.render_csv(header, rows))
    return EXIT_OK


def _cmd_glue_scan(args) -> int:
    try:
        res = gluelab.neck_scan(
            t_values=tuple(args.t), ring_c=args.ring_c, seed=args.seed
        )
    except ValueError as e:
        raise _DomainFailure(str(e))
    rows = [
        [r.t, r.ring_c, r.sup_metric_dev] + list(r.weyl_plus_spectrum)
        for r in res.rings
    ]
    header = ["t", "ring_c", "sup_metric_dev", "lam1", "lam2", "lam3"]
    _emit(args, serde.render_csv(header, rows))
    summary = serde.json_document(
        "neck-scan-summary",
        {
            "decay_exponent": res.decay_exponent,
            "deviation_monotone": res.deviation_monotone,
            "curvature_monotone": res.curvature_monotone,
        },
    )
    print(serde.render_json(summary), end="")
    if args.strict and not (
        res.decay_exponent >= 0.9 and res.deviation_monotone and res.curvature_monotone
    ):
        return EXIT_VERDICT
    return EXIT_OK


def _cmd_norm(args) -> int:
    try:
        code = compile(args.field, "<field>", "eval")
        allowed = {"rho": None, "cos": np.cos, "sin": np.sin, "exp": np.exp, "log": np.log}

        def field(x):
            allowed["rho"] = float(np.linalg.norm(x))
            return eval(code, {"__builtins__": {}}, allowed)

        field(np.array([0.5, 0.0, 0.0, 0.0]))
    except (SyntaxError, NameError) as e:
        raise _ParseFailure(f"bad field expression: {e}")
    try:
        if args.starred or args.double_starred:
            fn = gluelab.double_starred_norm if args.double_starred else gluelab.starred_norm
            # carry the scalar profile on a unit trace-free matrix so the
            # obstruction projection can see it (the identity would project
            # to zero); this matrix is basis element 6 of the projection,
            # so the scalar coefficient reappears at coefficients[6]
            carrier = gluelab.TRACE_FREE_BASIS[6]

            def tensor_field(x):
                return field(x) * carrier

            res = fn(
                tensor_field,
                beta=args.beta,
                annulus=tuple(args.annulus),
                mode=args.mode,
                alpha=args.alpha,
                seed=args.seed,
            )
            payload = res.to_json_dict()
        else:
            value = gluelab.weighted_holder_norm(
                field,
                beta=args.beta,
                annulus=tuple(args.annulus),
                mode=args.mode,
                alpha=args.alpha,
                seed=args.seed,
            )
            payload = {"value": value}
    except ValueError as e:
        raise _DomainFailure(str(e))
    payload.update(
        {
            "field": args.field,
            "beta": args.beta,
            "alpha": args.alpha,
            "mode": args.mode,
            "annulus": list(args.annulus),
        }
    )
    _emit(args, serde.render_json(serde.json_document("weighted-norm", payload)))
    return EXIT_OK


def _cmd_indicial(args) -> int:
    try:
        quad = gluelab.sphere_quadrature(*args.quad)
        rep = gluelab.indicial_report(radius=args.radius, quad=quad)
    except ValueError as e:
        raise _DomainFailure(str(e))
    doc = serde.json_document("indicial-battery", rep.to_json_dict())
    _emit(args, serde.render_json(doc))
    ok = all(r < 1e-6 for _, _, r in rep.kernel_residuals) and all(
        abs(v) < 1e-6 for _, _, v in rep.pairings
    ) and all(r > 1e-3 for _, r in rep.control_residuals)
    if args.strict and not ok:
        return EXIT_VERDICT
    return EXIT_OK


# -- wiring -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="orbikit",
        description="Orbifold singularities, desingularization bookkeeping, "
        "and numerical curvature checks.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--output", "-o", default=None, help="write to this file "
                       "(relative paths land in $ORBIKIT_OUTPUT_DIR when set); default stdout")
        p.add_argument("--strict", action="store_true",
                       help="exit with status 1 when the verdict is negative")

    p = sub.add_parser("classify", help="type-T classification of one singularity")
    p.add_argument("singularity", help="e.g. '1/9(1,2)', 'A4', 'D5', 'E8'")
    add_common(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("check", help="admissibility of an orbifold spec")
    p.add_argument("spec", help="orbifold spec JSON file")
    p.add_argument("--degree", type=int, required=True, help="degree c1^2 in 1..9")
    add_common(p)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("enumerate", help="allowed singularity list for a degree")
    p.add_argument("--degree", type=int, required=True)
    add_common(p)
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("invariants", help="glued-manifold invariants of a spec")
    p.add_argument("spec", help="orbifold spec JSON file")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--no-recognize", action="store_true",
                   help="skip matching the result against standard diffeotypes")
    add_common(p)
    p.set_defaults(fn=_cmd_invariants)

    p = sub.add_parser("curvature-scan", help="pointwise curvature diagnostics")
    p.add_argument("--chart", default="fubini_study",
                   help="builtin chart name (see docs); ignored with --config")
    p.add_argument("--config", default=None, help="custom chart config JSON file")
    p.add_argument("--points", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--box", type=float, default=0.5, help="sample cube half-width")
    p.add_argument("--einstein-constant", type=float, default=None,
                   help="lambda for the residual column; default s/4 pointwise")
    add_common(p)
    p.set_defaults(fn=_cmd_curvature_scan)

    p = sub.add_parser("glue-scan", help="neck convergence scan")
    p.add_argument("--t", type=float, nargs="+", default=list(gluelab.DEFAULT_T_VALUES))
    p.add_argument("--ring-c", type=float, default=1.5)
    p.add_argument("--seed", type=int, default=0)
    add_common(p)
    p.set_defaults(fn=_cmd_glue_scan)

    p = sub.add_parser("norm", help="weighted norm of a radial test field")
    p.add_argument("--field", default="rho**1.5", help="expression in rho")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--mode", choices=["orbifold", "ale"], default="orbifold")
    p.add_argument("--annulus", type=float, nargs=2, default=[0.1, 1.0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--starred", action="store_true")
    p.add_argument("--double-starred", action="store_true")
    add_common(p)
    p.set_defaults(fn=_cmd_norm)

    p = sub.add_parser("indicial", help="flat-model kernel battery")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--quad", type=int, nargs=3, default=[8, 8, 10],
                   metavar=("NPSI", "NTHETA", "NPHI"))
    add_common(p)
    p.set_defaults(fn=_cmd_indicial)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _ParseFailure as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except _DomainFailure as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except ChartDomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
