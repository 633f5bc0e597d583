"""Command-line interface: JSON on stdout, logs on stderr.

Exit codes: 0 affirmative/successful verdict, 1 negative verdict,
2 error (with machine-readable {"error", "detail"} JSON).
"""

from __future__ import annotations

import argparse
import json
import sys

from .classify import are_isomorphic, automorphism_group, canonical_form
from .coalgebra import (
    CoalgebraMap,
    SubCoalgebra,
    diamond_basis,
    map_path,
    path_element,
    separability_check,
    verify_covering,
)
from .comodules import decide_discrete, enumerate_indecomposables
from .errors import (
    AxiomFailure,
    Disconnected,
    InvalidMorphism,
    NotDiscreteParams,
    PathcoalgError,
)
from .hopf import validate_params, verify_hopf_axioms
from .quiver import Quiver, QuiverMorphism, check_homogeneous, find_nondynkin_cover, graph_class


def _log(message):
    print(message, file=sys.stderr)


def _add_param_flags(sub, suffix=""):
    sub.add_argument(f"-m{suffix}" if suffix else "-m", type=int, required=True)
    sub.add_argument(f"-n{suffix}" if suffix else "-n", type=int, required=True)
    sub.add_argument(f"--lambda{suffix}", dest=f"lam{suffix}", default="1")
    sub.add_argument(f"--s{suffix}", default="0")
    sub.add_argument(f"--t{suffix}", default="0")
    sub.add_argument(f"--k{suffix}", default="0")


def _params_from(args, suffix=""):
    return validate_params(
        getattr(args, f"m{suffix}"),
        getattr(args, f"n{suffix}"),
        getattr(args, f"lam{suffix}"),
        getattr(args, f"s{suffix}"),
        getattr(args, f"t{suffix}"),
        getattr(args, f"k{suffix}"),
    )


def cmd_verify_hopf(args):
    params = _params_from(args)
    _log(f"verifying Hopf axioms for {params} at radius {args.radius}")
    try:
        report = verify_hopf_axioms(
            params, args.radius, product_pairs=args.pairs, seed=args.seed
        )
    except AxiomFailure as exc:
        return {"ok": False, "detail": exc.detail, "witness": exc.witness}, False
    report["params"] = params.to_json()
    return report, bool(report["ok"])


def cmd_classify(args):
    params = _params_from(args)
    _log(f"classifying {params}")
    tag, canonical, witness = canonical_form(params)
    family = tag
    if tag == "5":
        family = "5A" if canonical.k.is_zero() else "5B"
    return {
        "family": family,
        "canonical_params": canonical.to_json(),
        "witness": witness.to_json(),
    }, True


def cmd_iso(args):
    p1 = _params_from(args)
    p2 = _params_from(args, "2")
    _log(f"testing isomorphism {p1} vs {p2}")
    witness = are_isomorphic(p1, p2)
    if witness is None:
        return {"isomorphic": False}, False
    return {"isomorphic": True, "witness": witness.to_json()}, True


def cmd_aut(args):
    params = _params_from(args)
    _log(f"computing automorphism group of {params}")
    return automorphism_group(params).to_json(), True


def cmd_enumerate(args):
    params = _params_from(args)
    _log(
        f"enumerating indecomposables for {params}, radius {args.radius}, "
        f"max dimension {args.max_dim}"
    )
    try:
        found = enumerate_indecomposables(params, args.radius, args.max_dim)
    except NotDiscreteParams:
        verdict = decide_discrete(params)
        return {"discrete": False, "witness": verdict["witness"]}, False
    modules = [
        {
            "kind": item["kind"],
            "dimension": item["module"].dim,
            "labels": item["module"].labels,
            "dimension_vector": {
                v: str(c) for v, c in item["module"].dimension_vector().items()
            },
        }
        for item in found
    ]
    return {"discrete": True, "count": len(modules), "modules": modules}, True


def _load_quiver(path):
    with open(path) as handle:
        text = handle.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return Quiver.from_json(json.loads(text))
    return Quiver.from_text(text)


def cmd_quiver(args):
    quiver = _load_quiver(args.quiver_file)
    _log(f"analyzing quiver with {len(quiver.vertices)} vertices")
    try:
        gclass = str(graph_class(quiver))
    except Disconnected:
        gclass = "Disconnected"
    homo = check_homogeneous(quiver)
    cover = find_nondynkin_cover(quiver, args.bound)
    result = {
        "graph_class": gclass,
        "is_homogeneous": homo["is_homogeneous"],
        "degrees": homo["per_vertex"],
        "nondynkin_cover": None,
        "verdict": "no obstruction found",
    }
    if cover is not None:
        cq, morphism = cover
        result["nondynkin_cover"] = {
            "quiver": cq.to_json(),
            "graph_class": str(graph_class(cq)),
            "morphism": morphism.to_json(),
        }
        result["verdict"] = "infinite type"
    return result, True


def _load_coalgebra(path):
    with open(path) as handle:
        return SubCoalgebra.from_json(json.load(handle))


def cmd_covering(args):
    dom = _load_coalgebra(args.domain)
    cod = _load_coalgebra(args.codomain)
    with open(args.map_file) as handle:
        raw = json.load(handle)
    fold = QuiverMorphism(
        dom.quiver, cod.quiver, raw["vertex_map"], raw["arrow_map"]
    )
    if not fold.is_valid():
        raise InvalidMorphism("the map file does not define a quiver morphism")
    _log(f"checking covering {dom!r} -> {cod!r}")
    images = []
    for b in dom.basis:
        img = None
        for p, coeff in sorted(b.terms.items()):
            term = path_element(cod.quiver, map_path(fold, p), coeff)
            img = term if img is None else img + term
        images.append(img)
    pi = CoalgebraMap(dom, cod, images)
    ok, report = verify_covering(pi, diamond_basis(dom), diamond_basis(cod))
    result = {"covering": ok, "report": report}
    overall = ok
    if args.separability and ok:
        sep = separability_check(pi, capacity=args.capacity)
        result["separability"] = sep
        overall = overall and sep
    return result, overall


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pathcoalg",
        description="Exact computations with grid-window path coalgebras",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("verify-hopf", help="run the Hopf-axiom suite")
    _add_param_flags(p)
    p.add_argument("-N", dest="radius", type=int, default=2)
    p.add_argument("--pairs", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_hopf)

    p = subs.add_parser("classify", help="canonical form and family tag")
    _add_param_flags(p)
    p.set_defaults(func=cmd_classify)

    p = subs.add_parser("iso", help="isomorphism test between two parameter sets")
    _add_param_flags(p)
    _add_param_flags(p, "2")
    p.set_defaults(func=cmd_iso)

    p = subs.add_parser("aut", help="automorphism group of a canonical form")
    _add_param_flags(p)
    p.set_defaults(func=cmd_aut)

    p = subs.add_parser("enumerate", help="indecomposable comodule inventory")
    _add_param_flags(p)
    p.add_argument("-N", dest="radius", type=int, default=2)
    p.add_argument("--max-dim", dest="max_dim", type=int, default=6)
    p.set_defaults(func=cmd_enumerate)

    p = subs.add_parser("quiver", help="graph class, homogeneity, cover search")
    p.add_argument("quiver_file")
    p.add_argument("--bound", type=int, default=6)
    p.set_defaults(func=cmd_quiver)

    p = subs.add_parser("covering", help="verify a coalgebra covering map")
    p.add_argument("domain")
    p.add_argument("codomain")
    p.add_argument("map_file")
    p.add_argument("--separability", action="store_true")
    p.add_argument("--capacity", type=int, default=40)
    p.set_defaults(func=cmd_covering)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result, ok = args.func(args)
    except PathcoalgError as exc:
        print(json.dumps({"error": exc.code, "detail": exc.detail}, sort_keys=True))
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": "InputError", "detail": str(exc)}, sort_keys=True))
        return 2
    print(json.dumps(result, sort_keys=True, indent=2))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
