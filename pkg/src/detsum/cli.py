"""Command-line front end with JSON input/output.

Every subcommand writes one report object to stdout:

    {"subcommand": ..., "inputs": <sha256 of the resolved inputs>,
     "result": ..., "status": ..., "elapsed_ms": ...}

status is one of holds/found/none (exit 0), error (exit 1, bad usage or
input), violated (exit 2, a guaranteed contract failed -- never expected
on correct builds).  Reports are byte-identical for identical argv and
seed; elapsed_ms stays null unless --timing is given, so timing noise
never breaks reproducibility.  --threads is accepted for interface
compatibility and validated, but evaluation is sequential either way;
exact arithmetic gains nothing from thread fan-out in CPython and the
output may not depend on it.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from typing import Any, Callable

from . import fuzz as fuzz_suites
from .errors import ContractViolation, DetsumError
from .identities import (
    alternating_subset_det_sum,
    check_alternating_det_identity,
    check_alternating_product_identity,
    det_expansion_certificate,
    find_perturbing_subset,
    homogeneous_alternating_sum,
    perturbation_identity_residual,
    simplex_centroid_check,
)
from .jsonio import (
    SchemaError,
    chain_to_json,
    element_to_json,
    identity_report_to_json,
    instance_from_json,
    instance_to_json,
    mask_to_json,
    matrices_from_json,
    matrices_to_json,
    ring_from_json,
    simplex_report_to_json,
    value_from_json,
    value_to_json,
)
from .matrices import DET_ALGORITHMS, SquareMatrix, det, is_invertible, subset_sum
from .rings import PrimeField, RingElement, SparsePoly
from .search import (
    embed_product_to_matrices,
    find_invertible_subsum,
    ideal_chain,
    local_counterexample_matrices,
    mixed_char_counterexample_search,
    semilocal_counterexample_instances,
    semilocal_find_unit_subsum,
)
from .subsets import SubsetMask, masks_in_search_order

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2

SEED_ENV_VAR = "DETSUM_SEED"

_EXIT_BY_STATUS = {"holds": EXIT_OK, "found": EXIT_OK, "none": EXIT_OK,
                   "error": EXIT_USAGE, "violated": EXIT_VIOLATION}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract wants 1
        raise _UsageError(message)


def _load_document(text: str) -> Any:
    """Parse --input as inline JSON when it looks like JSON, else as a path."""
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        return json.loads(stripped)
    with open(text, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _divides(d: int, x: int) -> bool:
    return x == 0 if d == 0 else x % d == 0


# -- subcommand handlers ----------------------------------------------------
# Each returns (status, result, params); params feeds the input digest.

def _cmd_verify_lemma3(args, seed):
    report = check_alternating_product_identity(args.m, args.n)
    status = "holds" if report.holds else "violated"
    return status, identity_report_to_json(report), {"m": args.m, "n": args.n}


def _cmd_verify_lemma2(args, seed):
    report = check_alternating_det_identity(args.m, args.n)
    status = "holds" if report.holds else "violated"
    return status, identity_report_to_json(report), {"m": args.m, "n": args.n}


def _cmd_alt_sum(args, seed):
    doc = _load_document(args.input)
    matrices = matrices_from_json(doc)
    m, n = len(matrices), matrices[0].n
    value = alternating_subset_det_sum(matrices, args.algorithm)
    zero = value.is_zero()
    if m > n:
        status = "holds" if zero else "violated"
    else:
        status = "holds" if zero else "none"  # no contract when m <= n
    result = {
        "m": m,
        "n": n,
        "term_count": 1 << m,
        "residual": element_to_json(value),
        "is_zero": zero,
        "contract_applies": m > n,
    }
    return status, result, {"document": doc, "algorithm": args.algorithm}


def _cmd_certificate(args, seed):
    terms = det_expansion_certificate(args.m, args.n)
    result = {
        "m": args.m,
        "n": args.n,
        "terms": [
            {"mask": mask_to_json(mask), "coefficient": coeff} for mask, coeff in terms
        ],
        "verified": True,
    }
    return "holds", result, {"m": args.m, "n": args.n}


def _cmd_perturb(args, seed):
    doc = _load_document(args.input)
    matrices = matrices_from_json(doc)
    if len(matrices) < 2:
        raise SchemaError("perturb needs n family matrices plus the perturbation")
    family, perturbation = matrices[:-1], matrices[-1]
    residual = perturbation_identity_residual(family, perturbation)
    witness = find_perturbing_subset(family, perturbation)
    perturbation_det = det(perturbation)
    violated = not residual.is_zero() or (
        not perturbation_det.is_zero() and witness is None
    )
    result = {
        "n": perturbation.n,
        "residual": element_to_json(residual),
        "residual_is_zero": residual.is_zero(),
        "perturbation_det": element_to_json(perturbation_det),
        "witness": mask_to_json(witness),
    }
    if violated:
        status = "violated"
    else:
        status = "found" if witness is not None else "none"
    return status, result, {"document": doc}


def _cmd_homogeneous(args, seed):
    doc = _load_document(args.input)
    if not isinstance(doc, dict):
        raise SchemaError("expected an object with ring/var_count/poly/vectors")
    ring = ring_from_json(doc.get("ring"), "ring")
    var_count = doc.get("var_count")
    if not isinstance(var_count, int) or var_count < 1:
        raise SchemaError("var_count: expected a positive integer")
    poly_doc = doc.get("poly")
    if not isinstance(poly_doc, dict) or "terms" not in poly_doc:
        raise SchemaError("poly: expected {\"terms\": [[exponents, coeff], ...]}")
    terms = []
    for i, pair in enumerate(poly_doc["terms"]):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError(f"poly.terms[{i}]: expected [exponents, coeff]")
        terms.append((tuple(pair[0]), int(pair[1])))
    poly = SparsePoly(var_count, terms)
    vec_docs = doc.get("vectors")
    if not isinstance(vec_docs, list) or not vec_docs:
        raise SchemaError("vectors: expected a nonempty array")
    vectors = []
    for vi, vec in enumerate(vec_docs):
        if not isinstance(vec, list) or len(vec) != var_count:
            raise SchemaError(f"vectors[{vi}]: expected {var_count} coordinates")
        vectors.append(
            [
                RingElement(ring, value_from_json(ring, e, f"vectors[{vi}][{ci}]"), _normalized=True)
                for ci, e in enumerate(vec)
            ]
        )
    degree = poly.homogeneous_degree()
    value = homogeneous_alternating_sum(poly, vectors)
    zero = value.is_zero()
    m = len(vectors)
    contract = degree is not None and m > degree
    if contract:
        status = "holds" if zero else "violated"
    else:
        status = "holds" if zero else "none"
    result = {
        "degree": degree,
        "m": m,
        "term_count": 1 << m,
        "value": element_to_json(value),
        "is_zero": zero,
        "contract_applies": contract,
    }
    return status, result, {"document": doc}


def _cmd_simplex(args, seed):
    doc = _load_document(args.input)
    points = matrices_from_json(doc)
    report = simplex_centroid_check(points)
    status = (
        "violated"
        if report.premise_holds and not report.centroid_singular
        else "holds"
    )
    return status, simplex_report_to_json(report), {"document": doc}


def _cmd_search_subsum(args, seed):
    doc = _load_document(args.input)
    matrices = matrices_from_json(doc)
    witness = find_invertible_subsum(matrices, args.bound)
    result = {"m": len(matrices), "bound": args.bound, "witness": mask_to_json(witness)}
    return ("found" if witness is not None else "none"), result, {
        "document": doc,
        "bound": args.bound,
    }


def _cmd_local_counterexample(args, seed):
    family = local_counterexample_matrices(args.modulus, args.m1, args.m2, args.n)
    # Exhaustive re-check of the construction's guarantee.
    defeated = find_invertible_subsum(family, bound=args.n) is None
    total = subset_sum(family, SubsetMask.full(len(family)))
    total_is_identity = total == SquareMatrix.identity(family[0].ring, args.n)
    status = "holds" if defeated and total_is_identity else "violated"
    result = {
        "family": matrices_to_json(family),
        "bound_defeated": defeated,
        "total_is_identity": total_is_identity,
        "subset_determinants": sorted(
            {
                str(det(subset_sum(family, SubsetMask(bits, len(family)))).value)
                for bits in masks_in_search_order(len(family))
            }
        ),
    }
    params = {"modulus": args.modulus, "m1": args.m1, "m2": args.m2, "n": args.n}
    return status, result, params


def _cmd_ideal_chain(args, seed):
    doc = _load_document(args.input)
    matrices = matrices_from_json(doc)
    chain = ideal_chain(matrices)
    n = matrices[0].n
    m = len(matrices)
    gens = chain.generators
    descending = all(_divides(gens[j + 1], gens[j]) for j in range(m))
    stabilized = all(g == gens[n] for g in gens[n:]) if m >= n else True
    status = "holds" if descending and stabilized else "violated"
    result = {
        "chain": chain_to_json(chain),
        "n": n,
        "stabilized_at_n": stabilized,
        "chain_ascends": descending,
    }
    return status, result, {"document": doc}


def _cmd_semilocal_search(args, seed):
    doc = _load_document(args.input)
    instance = instance_from_json(doc)
    witness = semilocal_find_unit_subsum(instance, args.bound)
    result = {
        "m": len(instance.elements),
        "n_components": instance.n_components,
        "bound": args.bound,
        "witness": mask_to_json(witness),
    }
    return ("found" if witness is not None else "none"), result, {
        "document": doc,
        "bound": args.bound,
    }


def _cmd_embed(args, seed):
    doc = _load_document(args.input)
    instance = instance_from_json(doc)
    matrices = embed_product_to_matrices(instance)
    sound = all(
        el.is_unit() == is_invertible(mat)
        for el, mat in zip(instance.elements, matrices)
    )
    result = {"matrices": matrices_to_json(matrices), "unit_detection_matches": sound}
    return ("holds" if sound else "violated"), result, {"document": doc}


def _cmd_example8(args, seed):
    instance_a, instance_b = semilocal_counterexample_instances()
    result = {
        "instance_a": instance_to_json(instance_a),
        "instance_b": instance_to_json(instance_b),
        "verified": True,
    }
    return "holds", result, {}


def _cmd_mine_mixed_char(args, seed):
    try:
        primes = [int(tok) for tok in args.fields.split(",") if tok.strip()]
    except ValueError:
        raise _UsageError(f"--fields must be comma-separated primes, got {args.fields!r}")
    if not primes:
        raise _UsageError("--fields must name at least one prime")
    try:
        fields = [PrimeField(p) for p in primes]
    except ValueError as exc:
        raise _UsageError(str(exc))
    instances = mixed_char_counterexample_search(fields, args.m, args.bound)
    result = {
        "fields": primes,
        "m": args.m,
        "bound": args.bound,
        "count": len(instances),
        "instances": [instance_to_json(inst) for inst in instances],
    }
    params = {"fields": primes, "m": args.m, "bound": args.bound}
    return ("found" if instances else "none"), result, params


def _cmd_fuzz(args, seed):
    names = None
    if args.suites:
        names = [tok.strip() for tok in args.suites.split(",") if tok.strip()]
    try:
        results = fuzz_suites.run_suites(names, seed=seed, trials=args.trials)
    except KeyError as exc:
        raise _UsageError(str(exc.args[0]))
    payload = [
        {
            "suite": r.name,
            "checks": r.checks,
            "failures": r.failures,
            "first_failure": r.first_failure,
        }
        for r in results
    ]
    failed = sum(r.failures for r in results)
    result = {"seed": seed, "suites": payload, "total_failures": failed}
    params = {"suites": names, "trials": args.trials, "seed": seed}
    return ("holds" if failed == 0 else "violated"), result, params


_HANDLERS: dict[str, Callable] = {
    "verify-lemma3": _cmd_verify_lemma3,
    "verify-lemma2": _cmd_verify_lemma2,
    "alt-sum": _cmd_alt_sum,
    "certificate": _cmd_certificate,
    "perturb": _cmd_perturb,
    "homogeneous": _cmd_homogeneous,
    "simplex": _cmd_simplex,
    "search-subsum": _cmd_search_subsum,
    "local-counterexample": _cmd_local_counterexample,
    "ideal-chain": _cmd_ideal_chain,
    "semilocal-search": _cmd_semilocal_search,
    "embed": _cmd_embed,
    "example8": _cmd_example8,
    "mine-mixed-char": _cmd_mine_mixed_char,
    "fuzz": _cmd_fuzz,
}


def build_parser() -> _Parser:
    parser = _Parser(prog="detsum", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help=f"64-bit seed for randomized runs (default: ${SEED_ENV_VAR} or 0)")
    common.add_argument("--output", choices=("json", "text"), default="json")
    common.add_argument("--threads", type=int, default=1,
                        help="accepted and validated; execution is sequential")
    common.add_argument("--timing", action="store_true",
                        help="fill elapsed_ms (off by default to keep reports byte-stable)")

    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("verify-lemma3", parents=[common],
                       help="symbolic alternating product identity over m*n variables")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("verify-lemma2", parents=[common],
                       help="symbolic alternating determinant identity on generic matrices")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("alt-sum", parents=[common],
                       help="evaluate the alternating subset det sum of a matrix family")
    p.add_argument("--input", required=True, help="matrix document (path or inline JSON)")
    p.add_argument("--algorithm", choices=DET_ALGORITHMS, default="auto")

    p = sub.add_parser("certificate", parents=[common],
                       help="expand the full-family determinant into small-subset terms")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("perturb", parents=[common],
                       help="perturbation residual and minimal moving subset "
                            "(last matrix in the input is the perturbation)")
    p.add_argument("--input", required=True)

    p = sub.add_parser("homogeneous", parents=[common],
                       help="alternating sum of a homogeneous polynomial over vector subsets")
    p.add_argument("--input", required=True,
                   help='{"ring":..., "var_count":..., "poly":..., "vectors":...}')

    p = sub.add_parser("simplex", parents=[common],
                       help="singular-simplex centroid check over the rationals")
    p.add_argument("--input", required=True)

    p = sub.add_parser("search-subsum", parents=[common],
                       help="first invertible subset sum within a cardinality bound")
    p.add_argument("--input", required=True)
    p.add_argument("--bound", type=int, required=True)

    p = sub.add_parser("local-counterexample", parents=[common],
                       help="family over Z/N defeating the bound-n search")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--m1", type=int, required=True)
    p.add_argument("--m2", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("ideal-chain", parents=[common],
                       help="gcd generators of the subset-sum determinant ideals")
    p.add_argument("--input", required=True)

    p = sub.add_parser("semilocal-search", parents=[common],
                       help="first unit subset sum in a product of prime fields")
    p.add_argument("--input", required=True)
    p.add_argument("--bound", type=int, required=True)

    p = sub.add_parser("embed", parents=[common],
                       help="diagonal matrix embedding of a product-ring instance")
    p.add_argument("--input", required=True)

    sub.add_parser("example8", parents=[common],
                   help="the built-in mixed-characteristic counterexample instances")

    p = sub.add_parser("mine-mixed-char", parents=[common],
                       help="exhaustively mine counterexample families over a product of prime fields")
    p.add_argument("--fields", required=True, help="comma-separated primes, e.g. 2,3,5")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)

    p = sub.add_parser("fuzz", parents=[common],
                       help="run the seeded randomized property suites")
    p.add_argument("--trials", type=int, default=None,
                   help="override the per-suite trial counts")
    p.add_argument("--suites", default=None,
                   help="comma-separated suite names (default: all)")

    return parser


def _resolve_seed(args) -> int:
    if args.seed is not None:
        seed = args.seed
    else:
        raw = os.environ.get(SEED_ENV_VAR, "0")
        try:
            seed = int(raw, 10)
        except ValueError:
            raise _UsageError(f"{SEED_ENV_VAR}={raw!r} is not an integer")
    if not 0 <= seed < 1 << 64:
        raise _UsageError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def _digest(subcommand: str, seed: int, params: dict) -> str:
    canonical = json.dumps(
        {"subcommand": subcommand, "seed": seed, "params": params},
        sort_keys=True,
        separators=(",", ":"),
        default=str,
    )
    return "sha256:" + hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _emit_text(report: dict, stream) -> None:
    print(f"subcommand: {report['subcommand']}", file=stream)
    print(f"status: {report['status']}", file=stream)
    print(f"inputs: {report['inputs']}", file=stream)
    if report["elapsed_ms"] is not None:
        print(f"elapsed_ms: {report['elapsed_ms']}", file=stream)
    print("result:", file=stream)
    print(json.dumps(report["result"], indent=2), file=stream)


def main(argv=None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        seed = _resolve_seed(args)
        if args.threads < 1:
            raise _UsageError(f"--threads must be positive, got {args.threads}")
    except _UsageError as exc:
        print(f"detsum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    started = time.perf_counter()
    params: dict = {}
    try:
        status, result, params = _HANDLERS[args.subcommand](args, seed)
    except _UsageError as exc:
        print(f"detsum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ContractViolation as exc:
        status, result = "violated", {"error": str(exc)}
    except json.JSONDecodeError as exc:
        status = "error"
        result = {"error": f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"}
    except (SchemaError, DetsumError, OSError, ValueError) as exc:
        status, result = "error", {"error": f"{type(exc).__name__}: {exc}"}
    elapsed_ms = round((time.perf_counter() - started) * 1e3)

    report = {
        "subcommand": args.subcommand,
        "inputs": _digest(args.subcommand, seed, params),
        "result": result,
        "status": status,
        "elapsed_ms": elapsed_ms if args.timing else None,
    }
    if args.output == "json":
        print(json.dumps(report, indent=2))
    else:
        _emit_text(report, sys.stdout)
    return _EXIT_BY_STATUS[status]


if __name__ == "__main__":
    sys.exit(main())
