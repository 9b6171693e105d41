"""Command-line front end and the on-disk branching-matrix cache.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
3 work or size budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from .branching import (
    BranchingMatrix,
    StateInfo,
    build_branching,
    c_tuples,
    cp_via_branching,
    cp_via_lescot,
    lump,
)
from .catalog import build, metadata, parse
from .errors import BudgetError, CacheError, CommProbError, InputError, SizeCapError
from .feitfine import feit_fine_pairs
from .formulas import render_table, report_json, verify_suite
from .groups import centralizer, conjugacy_classes, z_classes
from .oracle import (
    commuting_pairs_matrix_algebra,
    commuting_tuples_count,
    simultaneous_classes_count,
)

CACHE_FORMAT_VERSION = 1
CACHE_ENV_VAR = "COMMPROB_CACHE"


# ---------------------------------------------------------------------------
# branching-matrix cache
# ---------------------------------------------------------------------------

def cache_dir() -> str:
    override = os.environ.get(CACHE_ENV_VAR)
    if override:
        return override
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(
        os.path.expanduser("~"), ".cache")
    return os.path.join(base, "commprob")


def _cache_path(descriptor: str) -> str:
    digest = hashlib.sha256(descriptor.encode("utf-8")).hexdigest()[:24]
    return os.path.join(cache_dir(), f"bm-v{CACHE_FORMAT_VERSION}-{digest}.json")


def _matrix_record(descriptor: str, order: int, bm: BranchingMatrix) -> dict:
    return {
        "version": CACHE_FORMAT_VERSION,
        "descriptor": descriptor,
        "order": order,
        "root_index": bm.root,
        "states": [
            {
                "label": st.label,
                "order": st.order,
                "class_count": st.class_count,
                "abelian": st.abelian,
            }
            for st in bm.states
        ],
        "matrix": [str(c) for row in bm.counts for c in row],
    }


def _record_matrix(record: dict) -> BranchingMatrix:
    if record.get("version") != CACHE_FORMAT_VERSION:
        raise CacheError("cache record has a different format version")
    states = [
        StateInfo(
            label=s["label"],
            order=int(s["order"]),
            class_count=int(s["class_count"]),
            abelian=bool(s["abelian"]),
        )
        for s in record["states"]
    ]
    size = len(states)
    flat = [int(c) for c in record["matrix"]]
    if len(flat) != size * size:
        raise CacheError("cache matrix is not square")
    counts = [flat[i * size:(i + 1) * size] for i in range(size)]
    root = int(record["root_index"])
    if not 0 <= root < size:
        raise CacheError("cache root index out of range")
    if states[root].order != int(record["order"]):
        raise CacheError("cache root order disagrees with the group order")
    bm = BranchingMatrix(states=states, counts=counts, root=root)
    sums = bm.column_sums()
    for i, st in enumerate(states):
        if any(c < 0 for c in counts[i]):
            raise CacheError("cache matrix has negative entries")
        if sums[i] != st.class_count:
            raise CacheError("cache column sums disagree with class counts")
        if st.abelian and counts[i][i] != st.order:
            raise CacheError("cache abelian state is not absorbing")
    return bm


def cache_store(descriptor: str, order: int, bm: BranchingMatrix) -> bool:
    """Persist a branching matrix; returns False (with a warning) when
    the cache directory is unusable."""
    path = _cache_path(descriptor)
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(_matrix_record(descriptor, order, bm), fh, indent=1)
            fh.write("\n")
        os.replace(tmp, path)
        return True
    except OSError as exc:
        print(f"warning: cache unavailable ({exc}); continuing without it",
              file=sys.stderr)
        return False


def cache_load(descriptor: str, order: int):
    """Load and validate a cached branching matrix, or None on miss.
    Corrupted records are reported and ignored."""
    path = _cache_path(descriptor)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            record = json.load(fh)
    except FileNotFoundError:
        return None
    except (OSError, json.JSONDecodeError) as exc:
        print(f"warning: ignoring unreadable cache file {path} ({exc})",
              file=sys.stderr)
        return None
    try:
        if record.get("descriptor") != descriptor or int(record.get("order", -1)) != order:
            raise CacheError("cache record is for a different group")
        return _record_matrix(record)
    except (CacheError, KeyError, TypeError, ValueError) as exc:
        print(f"warning: ignoring invalid cache file {path} ({exc})",
              file=sys.stderr)
        return None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _frac(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _emit(payload: dict, as_json: bool, human_lines):
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        for line in human_lines:
            print(line)


def _cmd_info(args) -> int:
    desc = parse(args.descriptor)
    meta = metadata(desc)
    G = build(desc)
    cd = conjugacy_classes(G.full())
    zc = len(z_classes(G.full()))
    payload = {
        "descriptor": str(desc),
        "order": G.order,
        "abelian": meta.abelian,
        "class_count": cd.k,
        "z_class_count": zc,
    }
    _emit(payload, args.json, [
        f"descriptor:    {desc}",
        f"order:         {G.order}",
        f"abelian:       {'yes' if meta.abelian else 'no'}",
        f"classes:       {cd.k}",
        f"z-classes:     {zc}",
    ])
    return 0


def _cmd_classes(args) -> int:
    desc = parse(args.descriptor)
    G = build(desc)
    full = G.full()
    cd = conjugacy_classes(full)
    rows = [
        {"rep_id": c.rep, "size": c.size,
         "centralizer_order": centralizer(full, c.rep).order}
        for c in cd.classes
    ]
    payload = {"descriptor": str(desc), "order": G.order, "classes": rows}
    lines = [f"{'rep':>6}  {'size':>6}  {'|centralizer|':>13}"]
    for r in rows:
        lines.append(f"{r['rep_id']:>6}  {r['size']:>6}  {r['centralizer_order']:>13}")
    _emit(payload, args.json, lines)
    return 0


def _obtain_branching(desc, use_cache: bool):
    descriptor = str(desc)
    order = None
    if use_cache:
        from .catalog import order_formula

        order = order_formula(desc)
        bm = cache_load(descriptor, order)
        if bm is not None:
            return bm, True
    G = build(desc)
    bm = build_branching(G)
    if use_cache:
        cache_store(descriptor, G.order, bm)
    return bm, False


def _cmd_branching(args) -> int:
    desc = parse(args.descriptor)
    bm, from_cache = _obtain_branching(desc, not args.no_cache)
    payload = {
        "descriptor": str(desc),
        "dimension": bm.dimension,
        "root_index": bm.root,
        "class_count": bm.class_count,
        "column_sums": bm.column_sums(),
        "from_cache": from_cache,
        "states": [
            {"label": st.label, "order": st.order,
             "class_count": st.class_count, "abelian": st.abelian}
            for st in bm.states
        ],
    }
    lines = [
        f"descriptor:   {desc}",
        f"states:       {bm.dimension} (root index {bm.root})",
        f"k(G):         {bm.class_count}",
        f"column sums:  {bm.column_sums()}",
        f"from cache:   {'yes' if from_cache else 'no'}",
    ]
    if args.lump:
        tp = lump(bm)
        payload["lumped"] = {
            "dimension": tp.dimension,
            "root_block": tp.root_block,
            "blocks": tp.blocks,
            "quotient": tp.quotient,
        }
        lines.append(f"lumped dim:   {tp.dimension} (root block {tp.root_block})")
        for j, row in enumerate(tp.quotient):
            lines.append(f"  quotient[{j}]: {row}")
    _emit(payload, args.json, lines)
    return 0


def _cmd_cp(args) -> int:
    desc = parse(args.descriptor)
    n = args.n
    if n < 2:
        raise InputError("--n must be at least 2")
    G = build(desc)
    if args.method == "branching":
        value = cp_via_branching(G, n)
    elif args.method == "lescot":
        value = cp_via_lescot(G, n)
    else:
        value = Fraction(commuting_tuples_count(G, n), G.order ** n)
    payload = {"descriptor": str(desc), "n": n, "method": args.method,
               "value": _frac(value)}
    _emit(payload, args.json, [_frac(value)])
    return 0


def _cmd_ctuples(args) -> int:
    desc = parse(args.descriptor)
    G = build(desc)
    bm = build_branching(G)
    value = c_tuples(bm, args.n)
    payload = {"descriptor": str(desc), "n": args.n, "value": str(value)}
    lines = [str(value)]
    if args.oracle:
        report = simultaneous_classes_count(G, args.n)
        payload["oracle"] = {
            "tuple_count": str(report.tuple_count),
            "orbit_count": str(report.orbit_count),
            "burnside_count": str(report.burnside_count),
        }
        agree = report.orbit_count == value
        payload["oracle_match"] = agree
        lines.append(f"oracle orbits: {report.orbit_count} "
                     f"(burnside {report.burnside_count}, "
                     f"tuples {report.tuple_count})")
        _emit(payload, args.json, lines)
        return 0 if agree else 1
    _emit(payload, args.json, lines)
    return 0


def _cmd_feitfine(args) -> int:
    value = feit_fine_pairs(args.d, args.q)
    payload = {"d": args.d, "q": args.q, "pairs": str(value)}
    lines = [str(value)]
    if args.oracle:
        brute = commuting_pairs_matrix_algebra(args.d, args.q)
        payload["oracle"] = str(brute)
        payload["oracle_match"] = brute == value
        lines.append(f"oracle scan: {brute}")
        _emit(payload, args.json, lines)
        return 0 if brute == value else 1
    _emit(payload, args.json, lines)
    return 0


def _cmd_verify(args) -> int:
    rows, ok = verify_suite(args.grid, threads=args.threads)
    if args.json_path:
        text = report_json(rows)
        if args.json_path == "-":
            sys.stdout.write(text)
        else:
            with open(args.json_path, "w", encoding="utf-8") as fh:
                fh.write(text)
    sys.stdout.write(render_table(rows))
    mismatches = sum(1 for r in rows if not r["match"])
    print(f"rows: {len(rows)}  mismatches: {mismatches}")
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="commprob",
        description="Exact commuting probabilities and branching matrices "
                    "of finite groups.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, descriptor=True):
        if descriptor:
            p.add_argument("descriptor", help="group descriptor, e.g. 'GL(2,3)'")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--threads", type=int, default=1,
                       help="worker thread cap (outputs are thread-count independent)")

    p = sub.add_parser("info", help="order, abelian flag, class and z-class counts")
    common(p)
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("classes", help="conjugacy class table")
    common(p)
    p.set_defaults(func=_cmd_classes)

    p = sub.add_parser("branching", help="build or load the branching matrix")
    common(p)
    p.add_argument("--lump", action="store_true", help="also print the lumped quotient")
    p.add_argument("--no-cache", action="store_true", help="skip the on-disk cache")
    p.set_defaults(func=_cmd_branching)

    p = sub.add_parser("cp", help="exact commuting probability cp_n")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("branching", "lescot", "oracle"),
                   default="branching")
    p.set_defaults(func=_cmd_cp)

    p = sub.add_parser("ctuples", help="count simultaneous conjugacy classes "
                                       "of commuting n-tuples")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--oracle", action="store_true",
                   help="cross-check by explicit orbit enumeration")
    p.set_defaults(func=_cmd_ctuples)

    p = sub.add_parser("feitfine", help="closed-form commuting matrix-pair count")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--oracle", action="store_true",
                   help="cross-check by brute-force pair scan")
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_feitfine)

    p = sub.add_parser("verify", help="run the verification grid")
    p.add_argument("--grid", choices=("default", "full"), default="default")
    p.add_argument("--json", dest="json_path", metavar="PATH",
                   help="write the JSON report to PATH ('-' for stdout)")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_verify)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SizeCapError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CommProbError as exc:  # pragma: no cover
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
