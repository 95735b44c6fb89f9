"""Command-line interface: ``gtm <command> GRAPH [options]``.

Exit status: 0 success, 1 bad vertex set / ground subset, 2 unreadable or
malformed graph file, 3 enumeration limit exceeded, 4 verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import census, oracle
from .graph import (
    GraphError,
    GraphParseError,
    LimitExceededError,
    Multigraph,
    default_limit,
    edges_meeting,
    induced_subgraph,
    orientation_count,
    read_graph,
)
from .labeling import INF, max_height
from .matroid import alpha_of, parse_subset, perfect_subset, transversal_matroid

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE, EXIT_LIMIT, EXIT_VERIFY = 0, 1, 2, 3, 4

COMMANDS = ("info", "rank", "independent", "basis", "count-bases", "classes", "table", "verify")

VERIFY_AXIOM_LIMIT = 12
VERIFY_SAMPLES = 200


class _InputError(Exception):
    pass


def _parse_w(g: Multigraph, text: str | None) -> frozenset[int]:
    if not text:
        return frozenset()
    try:
        vs = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise GraphError(f"--w expects comma-separated vertex numbers, got {text!r}") from None
    return g.check_vertices(vs)


def _load(path: str) -> Multigraph:
    try:
        return read_graph(path)
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror or exc}") from None
    except GraphParseError as exc:
        raise _InputError(f"{path}: {exc}") from None


def _labeling_json(phi) -> dict[str, object]:
    return {str(i): ("inf" if lab is INF else lab) for i, lab in enumerate(phi)}


def _cmd_info(args, g, w):
    m = transversal_matroid(g, w)
    doc = {
        "vertices": g.n,
        "edges": g.m,
        "loops": g.loop_count,
        "degrees": [g.degrees[v] for v in g.vertices],
        "deleted": sorted(w),
        "ground_size": len(m.ground),
        "rank": m.full_rank,
        "rank_of_S(W)": transversal_matroid(g).rank(perfect_subset(g, w)),
        "edges_meeting_W": len(edges_meeting(g, w)),
    }
    text = "\n".join(f"{k}: {v}" for k, v in doc.items())
    return doc, text, EXIT_OK


def _subset_arg(args, m):
    return m.check_subset(parse_subset(args.x or ""))


def _cmd_rank(args, g, w):
    m = transversal_matroid(g, w)
    x = _subset_arg(args, m)
    r, phi = max_height(g, alpha_of(g, x))
    doc = {"rank": r}
    if args.witness:
        doc["labeling"] = _labeling_json(phi)
    text = f"rank {r}"
    if args.witness:
        text += "\nlabeling " + " ".join(f"{k}->{v}" for k, v in doc["labeling"].items())
    return doc, text, EXIT_OK


def _cmd_independent(args, g, w):
    m = transversal_matroid(g, w)
    ok = m.is_independent(_subset_arg(args, m))
    return {"independent": ok}, f"independent {str(ok).lower()}", EXIT_OK


def _cmd_basis(args, g, w):
    m = transversal_matroid(g, w)
    ok = m.is_basis(_subset_arg(args, m))
    return {"basis": ok}, f"basis {str(ok).lower()}", EXIT_OK


def _cmd_count(args, g, w):
    n = census.count_bases(g, w, limit=args.limit)
    return {"bases": str(n)}, f"bases {n}", EXIT_OK


def _cmd_classes(args, g, w):
    keep = tuple(v for v in g.vertices if v not in w)
    h = induced_subgraph(g, keep)
    classes = census.enumerate_classes(h, args.limit)
    doc = {
        "vertices": list(keep),
        "classes": [{"a": list(c.vector), "mult": c.multiplicity} for c in classes],
        "totals": {"orientations": str(orientation_count(h)), "classes": len(classes)},
    }
    lines = ["(" + ",".join(map(str, c.vector)) + f")  {c.multiplicity}" for c in classes]
    lines.append(f"orientations {orientation_count(h)}  classes {len(classes)}")
    return doc, "\n".join(lines), EXIT_OK


def _cmd_table(args, g, w):
    alt = _load(args.alt) if args.alt else None
    report = census.table_report(g, w, alt, limit=args.limit)
    return report.to_dict(), report.to_text().rstrip("\n"), EXIT_OK


def _verdict_doc(v: oracle.Verdict, timings: bool) -> dict:
    d = v.to_dict()
    if not timings:
        d.pop("elapsed_ms", None)
    return d


def verify(g: Multigraph, w: frozenset[int], instance: str = "") -> list[oracle.Verdict]:
    """Run the whole consistency battery on one instance."""
    verdicts = [oracle.cross_validate(g, w, instance)]
    m = transversal_matroid(g, w)
    if len(m.ground) <= VERIFY_AXIOM_LIMIT:
        verdicts.append(oracle.check_rank_axioms(m.rank, m.ground, instance, limit=VERIFY_AXIOM_LIMIT))
    else:
        verdicts.append(oracle.Verdict("rank_axioms", instance, True,
                                       details={"skipped": f"ground size {len(m.ground)} > {VERIFY_AXIOM_LIMIT}"}))
    expected = len(edges_meeting(g, w))
    got = transversal_matroid(g).rank(perfect_subset(g, w))
    verdicts.append(oracle.Verdict("rank_of_perfect_subset", instance, got == expected,
                                   None if got == expected else {"rank": got, "edges_meeting_W": expected},
                                   details={"rank": got, "edges_meeting_W": expected}))
    if not w:
        full = transversal_matroid(g)
        if len(full.ground) <= 16:
            ok = full.check_self_dual()
            mode = "exhaustive"
        else:
            ok = full.check_self_dual(samples=VERIFY_SAMPLES)
            mode = f"{VERIFY_SAMPLES} samples"
        verdicts.append(oracle.Verdict("self_dual", instance, ok, details={"mode": mode}))
    return verdicts


def _cmd_verify(args, g, w):
    verdicts = verify(g, w, instance=args.graph + (f" W={sorted(w)}" if w else ""))
    ok = all(v.passed for v in verdicts)
    doc = {"pass": ok, "checks": [_verdict_doc(v, args.timings) for v in verdicts]}
    lines = []
    for v in verdicts:
        extra = ", ".join(f"{k}={val}" for k, val in v.details.items())
        lines.append(f"{'PASS' if v.passed else 'FAIL'} {v.check}" + (f" ({extra})" if extra else ""))
        if v.witness is not None:
            lines.append(f"  witness: {json.dumps(v.witness)}")
    lines.append("verify: " + ("pass" if ok else "FAIL"))
    return doc, "\n".join(lines), EXIT_OK if ok else EXIT_VERIFY


HANDLERS = {
    "info": _cmd_info,
    "rank": _cmd_rank,
    "independent": _cmd_independent,
    "basis": _cmd_basis,
    "count-bases": _cmd_count,
    "classes": _cmd_classes,
    "table": _cmd_table,
    "verify": _cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gtm",
        description="Graphical transversal matroids TM(G, W): rank, bases, out-degree classes, verification.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("graph", help="edge-list file: 'n m' header then m lines 'u w'")
    p.add_argument("--w", default="", help="deleted vertices W, comma-separated 1-based ids")
    p.add_argument("--x", default=None, help="ground subset as comma-separated v:i tokens ('' is empty)")
    p.add_argument("--alt", default=None, help="second graph whose degrees give the alt_weight column")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--limit", type=int, default=None,
                   help="edge cap for orientation enumeration (default $GTM_LIMIT or 24)")
    p.add_argument("--witness", action="store_true", help="rank: also print a maximum labeling")
    p.add_argument("--timings", action="store_true", help="verify: include elapsed_ms in JSON")
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.limit is None:
            args.limit = default_limit()
        g = _load(args.graph)
        w = _parse_w(g, args.w)
        if args.command in ("independent", "basis") and args.x is None:
            raise GraphError(f"{args.command} needs --x")
        doc, text, code = HANDLERS[args.command](args, g, w)
    except _InputError as exc:
        print(f"gtm: {exc}", file=err)
        return EXIT_PARSE
    except LimitExceededError as exc:
        print(f"gtm: {exc}", file=err)
        return EXIT_LIMIT
    except (GraphError, ValueError) as exc:
        print(f"gtm: {exc}", file=err)
        return EXIT_DOMAIN
    if args.format == "json":
        print(json.dumps(doc), file=out)
    else:
        print(text, file=out)
    if code == EXIT_VERIFY:
        print("gtm: verification failed: "
              + ", ".join(v["check"] for v in doc["checks"] if not v["pass"]), file=err)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
