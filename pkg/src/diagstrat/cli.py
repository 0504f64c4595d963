"""Command-line entry point.

Every command reads a JSON configuration (``--config``), computes, and
writes deterministic JSON to stdout or ``--output``.  Exit status is 0 on
success, 1 when a verification report contains a failing check and 2 on
usage or configuration errors.
"""

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from . import cache
from .errors import DiagstratError
from .params import Content, GF, QParam, make_config, morita_predicate, semisimple_predicate

log = logging.getLogger("diagstrat")


class VerificationFailed(Exception):
    pass


# serialization ------------------------------------------------------------------

def jsonable(x):
    from .combinatorics import Multipartition
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)
    if isinstance(x, GF):
        return str(x.v)
    if isinstance(x, QParam):
        return str(x)
    if isinstance(x, Multipartition):
        return x.to_list()
    if isinstance(x, Content):
        return x.label()
    if isinstance(x, float):
        return x
    raise TypeError("cannot serialize %r" % (x,))


def dumps(obj):
    return json.dumps(jsonable(obj), sort_keys=True, ensure_ascii=False) + "\n"


def _cell(v):
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, ensure_ascii=False)
    if v is True:
        return "yes"
    if v is False:
        return "NO"
    return "" if v is None else str(v)


def _table(rows):
    keys = []
    for r in rows:
        for k in r:
            if k not in keys:
                keys.append(k)
    cells = [[_cell(r.get(k)) for k in keys] for r in rows]
    widths = [max([len(k)] + [len(c[i]) for c in cells]) for i, k in enumerate(keys)]
    lines = ["  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for c in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(c, widths)).rstrip())
    return "\n".join(lines)


def pretty(obj):
    obj = jsonable(obj)
    if isinstance(obj, list) and obj and all(isinstance(r, dict) for r in obj):
        return _table(obj) + "\n"
    if isinstance(obj, dict):
        out = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, list) and v and all(isinstance(r, dict) for r in v):
                out.append("%s:" % k)
                out.append(_table(v))
            else:
                out.append("%s: %s" % (k, _cell(v)))
        return "\n".join(out) + "\n"
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# configuration --------------------------------------------------------------------

def load_config(args):
    src = args.config
    if src is None:
        raise DiagstratError("INVALID_CONFIG", "--config is required for this command")
    if src.lstrip().startswith("{"):
        try:
            raw = json.loads(src)
        except ValueError as exc:
            raise DiagstratError("INVALID_CONFIG", "inline configuration is not valid JSON: %s" % exc)
    else:
        try:
            with open(src, encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise DiagstratError("INVALID_CONFIG", "cannot read %s: %s" % (src, exc))
        except ValueError as exc:
            raise DiagstratError("INVALID_CONFIG", "%s is not valid JSON: %s" % (src, exc))
    if getattr(args, "max_object", None) is not None:
        raw = dict(raw)
        raw.pop("truncation_N", None)
        raw["N"] = args.max_object
    return make_config(raw)


def _read_json(path):
    """A JSON file, or inline JSON when the argument starts with { or [."""
    if path.lstrip()[:1] in ("{", "["):
        try:
            return json.loads(path)
        except ValueError as exc:
            raise DiagstratError("INVALID_INPUT", "inline JSON is not valid: %s" % exc)
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, ValueError) as exc:
        raise DiagstratError("INVALID_INPUT", "cannot read %s: %s" % (path, exc))


def _lambda(text, cfg):
    from .combinatorics import Multipartition
    try:
        return Multipartition.parse(json.loads(text), cfg.m)
    except ValueError as exc:
        raise DiagstratError("UNKNOWN_LABEL", "bad --lambda %r: %s" % (text, exc))


def _checked(report):
    """Return the report, flagging a failing verification for exit status 1."""
    ok = report.get("pass", True) if isinstance(report, dict) else all(
        r.get("pass", True) for r in report)
    if not ok:
        raise VerificationFailed(report)
    return report


# commands ----------------------------------------------------------------------------

def cmd_basis(args):
    from .diagram import diagram_to_json, enumerate_basis
    cfg = load_config(args)
    basis = enumerate_basis(args.a, args.b, cfg)
    return {"bottom": args.a, "top": args.b, "count": len(basis),
            "basis": [diagram_to_json(d) for d in basis]}


def _load_morphism(path, cfg):
    from .diagram import LinearCombination, diagram_from_json, lc_from_json
    obj = _read_json(path)
    if isinstance(obj, dict):
        return LinearCombination.of(diagram_from_json(obj, cfg))
    return lc_from_json(obj, cfg.field, cfg=cfg)


def cmd_compose(args):
    from .diagram import compose, lc_to_json
    cfg = load_config(args)
    g = _load_morphism(args.g, cfg)
    f = _load_morphism(args.f, cfg)
    return lc_to_json(compose(g, f, cfg), cfg.field)


def cmd_algebra(args):
    from .algebra import category_algebra, endomorphism_algebra, radical
    cfg = load_config(args)
    if args.a is not None:
        A = endomorphism_algebra(args.a, cfg)
    else:
        A = category_algebra(cfg, cfg.N)
    out = A.to_json()
    out["name"] = A.name
    out["dim"] = A.dim
    if args.radical:
        out["radical"] = radical(A)
        out["semisimple"] = not out["radical"]
    return out


def cmd_verify_decomposition(args):
    from .stratification import verify_wt_axioms
    cfg = load_config(args)
    return _checked(verify_wt_axioms(cfg, cfg.N, probes=args.probes, seed=args.seed))


def cmd_verify_assumptions(args):
    from .stratification import verify_A_assumptions
    cfg = load_config(args)
    return _checked(verify_A_assumptions(cfg, cfg.N))


def cmd_gram(args):
    from .linalg import rank
    from .stratification import standard_module
    cfg = load_config(args)
    lam = _lambda(args.lam, cfg)
    M = standard_module(lam, cfg, cfg.N)
    b = lam.size() if args.grade is None else args.grade
    G = M.gram(b)
    return {"lambda": lam, "grade": b, "gram": G, "rank": rank(G) if G else 0}


def cmd_decomposition(args):
    from .cellular import decomposition_table, hecke_decomposition, solve_bgg_system
    cfg = load_config(args)
    layers = [args.layer] if args.layer is not None else list(range(cfg.N + 1))
    if args.hecke:
        tables = {a: hecke_decomposition(a, cfg) for a in layers}
    else:
        tables = {a: decomposition_table(a, cfg) for a in layers}
    out = {"tables": [tables[a].to_json() for a in layers],
           "unitriangular": all(t.is_unitriangular() for t in tables.values())}
    if args.bgg:
        if args.hecke:
            raise DiagstratError("INVALID_INPUT", "--bgg needs the A_a tables, not --hecke")
        bgg = solve_bgg_system(tables, cfg.N, cfg)
        out["bgg"] = [{"projective": lam, "standard": nu, "multiplicity": v}
                      for lam in sorted(bgg, key=lambda l: l.sort_key())
                      for nu, v in sorted(bgg[lam].items(), key=lambda t: t[0].sort_key())]
    return out


def cmd_blocks(args):
    from .cellular import cell_link_blocks
    cfg = load_config(args)
    blocks = cell_link_blocks(cfg, cfg.N)
    if not all(b["single_fiber"] for b in blocks):
        raise VerificationFailed(blocks)
    return [{"component": b["component"], "wtbar": b["wtbar"]} for b in blocks]


def cmd_character(args):
    from .fock import module_character
    cfg = load_config(args)
    lam = _lambda(args.lam, cfg)
    ch = module_character(lam, args.length, cfg, cfg.N, source=args.source)
    rows = [{"word": [c.label() for c in w], "count": n} for w, n in ch.items()]
    rows.sort(key=lambda r: (r["word"], r["count"]))
    return rows


def cmd_crystal(args):
    from .combinatorics import enumerate_restricted
    cfg = load_config(args)
    labels = enumerate_restricted(args.n, cfg)
    return {"n": args.n, "count": len(labels), "restricted": [l.to_list() for l in labels]}


def cmd_fock(args):
    from .fock import FockVector, e_tilde_act, generate_highest_weight, verify_cartan
    cfg = load_config(args)
    out = {}
    if args.generate:
        out["highest_weight"] = generate_highest_weight(cfg, args.degree)
    if args.apply is not None:
        if args.lam is None:
            raise DiagstratError("INVALID_INPUT", "--apply needs --lambda")
        v = FockVector.basis(_lambda(args.lam, cfg), cfg.m)
        out["e_tilde"] = {"i": args.apply, "lambda": v.items()[0][0],
                          "result": e_tilde_act(args.apply, v, cfg).to_json()}
    if args.cartan:
        out["cartan"] = _checked(verify_cartan(cfg, args.degree))
    if not out:
        raise DiagstratError("INVALID_INPUT", "choose at least one of --generate, --apply, --cartan")
    return out


def cmd_verify_ses(args):
    from .combinatorics import multipartitions
    from .fock import touching_contents, verify_ses_character
    cfg = load_config(args)
    grid = []
    for k in range(args.max_size + 1):
        for lam in multipartitions(k, cfg.m):
            for i in touching_contents(lam, cfg):
                r = verify_ses_character(lam, i, cfg, cfg.N, source=args.source)
                grid.append({"lambda": r["lambda"], "i": r["i"], "removed": r["removed"],
                             "added": r["added"], "pass": r["pass"]})
    return _checked({"grid": grid, "pass": all(g["pass"] for g in grid)})


def cmd_criteria(args):
    cfg = load_config(args)
    return {"semisimple": semisimple_predicate(cfg), "morita": morita_predicate(cfg)}


def cmd_accept(args):
    from .acceptance import CRITERIA, run_all, summary_line
    if args.only:
        try:
            ids = sorted({int(x) for x in args.only.split(",")})
        except ValueError:
            raise DiagstratError("INVALID_INPUT", "--only takes comma separated criterion numbers")
        unknown = [k for k in ids if k not in CRITERIA]
        if unknown:
            raise DiagstratError("INVALID_INPUT", "no criterion %s" % unknown)
    elif args.all:
        ids = sorted(CRITERIA)
    else:
        raise DiagstratError("INVALID_INPUT", "use --all or --only")
    results = run_all(ids, threads=args.threads)
    for r in results:
        print(summary_line(r), file=sys.stderr)
    # timings vary run to run, so they stay out of the JSON
    report = [{k: v for k, v in r.items() if k != "seconds"} for r in results]
    return _checked(report)


# parser -------------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON configuration file (or an inline JSON object)")
    common.add_argument("--max-object", type=int, dest="max_object",
                        help="override the truncation N of the configuration")
    common.add_argument("--output", "-o", help="write the result here instead of stdout")
    common.add_argument("--pretty", action="store_true", help="human readable tables")
    common.add_argument("--threads", type=int, default=1, help="cap on worker processes")
    common.add_argument("--verbose", "-v", action="store_true")

    p = argparse.ArgumentParser(prog="diagstrat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("basis", cmd_basis, "normally ordered diagram basis of Hom(a, b)")
    sp.add_argument("--a", required=True, help="bottom object (integer, or u/d word)")
    sp.add_argument("--b", required=True, help="top object")

    sp = add("compose", cmd_compose, "compose two morphisms given as JSON (g after f)")
    sp.add_argument("--g", required=True, help="diagram or linear combination: JSON file or inline JSON")
    sp.add_argument("--f", required=True, help="applied first; same format as --g")

    sp = add("algebra", cmd_algebra, "structure constants of End(a) or of the truncated category")
    sp.add_argument("--a", default=None, help="object; omit for all objects up to N")
    sp.add_argument("--radical", action="store_true", help="also report the Jacobson radical")

    sp = add("verify-decomposition", cmd_verify_decomposition,
             "order vanishing and triple-basis rank checks for the weakly triangular decomposition")
    sp.add_argument("--probes", type=int, default=12)
    sp.add_argument("--seed", type=int, default=0)

    add("verify-assumptions", cmd_verify_assumptions, "tau-stability, H factorization and Y splitting checks")

    sp = add("gram", cmd_gram, "invariant form on a standard module")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--grade", type=int, default=None)

    sp = add("decomposition", cmd_decomposition, "decomposition numbers by layer")
    sp.add_argument("--layer", type=int, default=None)
    sp.add_argument("--hecke", action="store_true", help="tables of the Hecke quotients instead")
    sp.add_argument("--bgg", action="store_true", help="also solve for standard filtrations")

    add("blocks", cmd_blocks, "cell-link components with their weight invariants")

    sp = add("character", cmd_character, "character of a standard module")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--length", type=int, required=True)
    sp.add_argument("--source", choices=["paths", "module"], default="paths")

    sp = add("crystal", cmd_crystal, "restricted multipartitions via good nodes")
    sp.add_argument("--n", type=int, required=True)

    sp = add("fock", cmd_fock, "Fock space computations")
    sp.add_argument("--generate", action="store_true")
    sp.add_argument("--degree", type=int, default=4)
    sp.add_argument("--apply", default=None, help="content i for e~_i")
    sp.add_argument("--lambda", dest="lam", default=None)
    sp.add_argument("--cartan", action="store_true", help="check the Cartan relations")

    sp = add("verify-ses", cmd_verify_ses, "character-level short exact sequence grid")
    sp.add_argument("--max-size", type=int, default=2)
    sp.add_argument("--source", choices=["paths", "module"], default="module")

    add("criteria", cmd_criteria, "semisimplicity and Morita predicates")

    sp = add("accept", cmd_accept, "run the acceptance suite")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--only", default=None, help="comma separated criterion numbers")
    return p


def _emit(args, result):
    text = pretty(result) if args.pretty else dumps(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        result = args.fn(args)
    except VerificationFailed as exc:
        _emit(args, exc.args[0])
        return 1
    except DiagstratError as exc:
        print(json.dumps({"error": exc.code, "message": exc.message}, sort_keys=True),
              file=sys.stderr)
        return 2
    _emit(args, result)
    if args.verbose:
        log.info("cache %s at %s", cache.stats, os.path.abspath(cache.cache_dir()))
    return 0


if __name__ == "__main__":
    sys.exit(main())
