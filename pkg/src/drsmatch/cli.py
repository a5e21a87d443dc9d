"""Command-line interface.

Subcommands: score, translations, stats, sweep, spar, amr2drs.  All reports
come in aligned text (default) or JSON (``--json``); numbers agree between
the two to printed precision (percentages 1 decimal, fractions 4).  Reports
are byte-reproducible for identical flags: wall-clock timing only appears
when ``--timings`` is passed.

Exit codes: 0 success, 2 parse error, 3 pairing error, 4 limits exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .amr import SKIP, default_dictionary, load_dictionary, amr_to_drs, parse_penman_corpus
from .clausefile import CorpusDocument, form_to_json_obj, parse_corpus, serialize_form
from .errors import (
    BudgetExceeded,
    CorpusTooSmall,
    DrsMatchError,
    DuplicateDocId,
    PairingError,
    ParseError,
    TooLarge,
    UnmappedRelation,
)
from .exact import OracleLimits, optimal_match
from .matching import MatchConfig, match_forms
from .metrics import CLAUSE_CATEGORIES, aggregate, clause_type_stats, sweep_report
from .spar import spar_rank

log = logging.getLogger("drsmatch")

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PAIRING = 3
EXIT_LIMITS = 4


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _frac(x: float) -> float:
    return round(x, 4)


def _pct(x: float) -> float:
    return round(_frac(x) * 100.0, 1)


def _pmap(fn, items, workers: int):
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _emit(payload: dict, lines: list[str], args) -> None:
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        for line in lines:
            print(line)


def _config_from(args) -> MatchConfig:
    return MatchConfig(
        restarts=args.restarts,
        rng_seed=args.seed,
        keep_refs=args.keep_refs,
    )


def _pair_documents(
    sys_docs: list[CorpusDocument], gold_docs: list[CorpusDocument]
) -> list[tuple[str, CorpusDocument, CorpusDocument]]:
    """Pair by id when both sides carry matching explicit ids, else by position."""
    both_explicit = (
        sys_docs
        and gold_docs
        and all(d.explicit_id for d in sys_docs)
        and all(d.explicit_id for d in gold_docs)
    )
    if both_explicit:
        gold_by_id = {d.doc_id: d for d in gold_docs}
        if {d.doc_id for d in sys_docs} == set(gold_by_id):
            return [(d.doc_id, d, gold_by_id[d.doc_id]) for d in sys_docs]
        log.warning("document ids do not correspond; pairing by position")
    if len(sys_docs) != len(gold_docs):
        raise PairingError(
            f"document counts differ: {len(sys_docs)} system vs {len(gold_docs)} gold"
        )
    return [(s.doc_id, s, g) for s, g in zip(sys_docs, gold_docs)]


def cmd_score(args) -> int:
    started = time.perf_counter()
    sys_docs = parse_corpus(_read(args.system), args.system)
    gold_docs = parse_corpus(_read(args.gold), args.gold)
    paired = _pair_documents(sys_docs, gold_docs)
    config = _config_from(args)

    if args.oracle:
        limits = OracleLimits(max_nodes=args.max_nodes)

        def run(item):
            _, s, g = item
            return optimal_match(s.form, g.form, limits, keep_refs=args.keep_refs)

    else:

        def run(item):
            _, s, g = item
            return match_forms(s.form, g.form, config)

    results = _pmap(run, paired, args.parallel)
    score = aggregate(results, [doc_id for doc_id, _, _ in paired])
    elapsed = time.perf_counter() - started

    per_doc = []
    for doc_id, result in score.per_doc:
        entry = {
            "doc_id": doc_id,
            "matched": result.matched,
            "size_sys": result.size_sys,
            "size_gold": result.size_gold,
            "precision": _frac(result.precision),
            "recall": _frac(result.recall),
            "f1": _frac(result.f1),
        }
        if args.print_mapping:
            entry["mapping"] = dict(sorted(result.best_mapping.items()))
        per_doc.append(entry)

    payload = {
        "command": "score",
        "config": {
            "restarts": args.restarts,
            "seed": args.seed,
            "keep_refs": args.keep_refs,
            "oracle": args.oracle,
            "parallel": args.parallel,
        },
        "documents": len(paired),
        "micro": {
            "precision": _frac(score.micro[0]),
            "recall": _frac(score.micro[1]),
            "f1": _frac(score.micro[2]),
        },
        "macro_f1": _frac(score.macro_f1),
        "per_doc": per_doc,
        "seconds": round(elapsed, 3) if args.timings else None,
    }

    mode = "oracle" if args.oracle else f"restarts={args.restarts} seed={args.seed}"
    lines = [
        f"score: {len(paired)} document pair(s), {mode}, keep_refs={'yes' if args.keep_refs else 'no'}",
        f"micro: P={_pct(score.micro[0])}%  R={_pct(score.micro[1])}%  F1={_pct(score.micro[2])}%",
        f"macro F1: {_pct(score.macro_f1)}%",
    ]
    for entry in per_doc:
        lines.append(
            f"doc {entry['doc_id']}: matched={entry['matched']} sys={entry['size_sys']} "
            f"gold={entry['size_gold']} P={_pct(entry['precision'])}% "
            f"R={_pct(entry['recall'])}% F1={_pct(entry['f1'])}%"
        )
        if args.print_mapping:
            rendered = " ".join(f"{s}->{t}" for s, t in entry["mapping"].items()) or "(empty)"
            lines.append(f"  mapping: {rendered}")
    if args.timings:
        lines.append(f"elapsed: {payload['seconds']}s")
    _emit(payload, lines, args)
    return EXIT_OK


def cmd_translations(args) -> int:
    started = time.perf_counter()
    a_docs = parse_corpus(_read(args.side_a), args.side_a)
    b_docs = parse_corpus(_read(args.side_b), args.side_b)
    config = _config_from(args)

    b_by_id = {d.doc_id: d for d in b_docs}
    paired = [(d.doc_id, d, b_by_id[d.doc_id]) for d in a_docs if d.doc_id in b_by_id]
    skipped = (len(a_docs) - len(paired)) + (len(b_docs) - len(paired))
    for doc in a_docs:
        if doc.doc_id not in b_by_id:
            log.warning("unpaired document %s (only in %s)", doc.doc_id, args.side_a)
    paired_ids = {doc_id for doc_id, _, _ in paired}
    for doc in b_docs:
        if doc.doc_id not in paired_ids:
            log.warning("unpaired document %s (only in %s)", doc.doc_id, args.side_b)

    results = _pmap(
        lambda item: match_forms(item[1].form, item[2].form, config), paired, args.parallel
    )
    mean_f1 = sum(r.f1 for r in results) / len(results) if results else 0.0
    flagged = [doc_id for (doc_id, _, _), r in zip(paired, results) if r.f1 < 1.0]
    pct_below = 100.0 * len(flagged) / len(results) if results else 0.0
    elapsed = time.perf_counter() - started

    payload = {
        "command": "translations",
        "config": {"restarts": args.restarts, "seed": args.seed, "keep_refs": args.keep_refs},
        "documents": len(results),
        "skipped": skipped,
        "mean_f1": _frac(mean_f1),
        "below_one": len(flagged),
        "below_one_pct": round(pct_below, 1),
        "pairs": [
            {"doc_id": doc_id, "f1": _frac(r.f1)} for (doc_id, _, _), r in zip(paired, results)
        ],
        "seconds": round(elapsed, 3) if args.timings else None,
    }
    if args.list:
        payload["flagged"] = flagged

    lines = [
        f"translations: {len(results)} paired document(s), {skipped} skipped",
        f"mean F1: {_pct(mean_f1)}%",
        f"F<1.0: {len(flagged)} of {len(results)} ({round(pct_below, 1)}%)",
    ]
    if args.list:
        lines.extend(f"  {doc_id}" for doc_id in flagged)
    if args.timings:
        lines.append(f"elapsed: {payload['seconds']}s")
    _emit(payload, lines, args)
    return EXIT_OK


def cmd_stats(args) -> int:
    started = time.perf_counter()
    docs = parse_corpus(_read(args.path), args.path)
    stats = clause_type_stats([d.form for d in docs])
    elapsed = time.perf_counter() - started

    payload = {
        "command": "stats",
        "documents": len(docs),
        "counts": {name: stats.counts[name] for name in CLAUSE_CATEGORIES},
        "total": stats.total,
        "seconds": round(elapsed, 3) if args.timings else None,
    }
    width = max(len(name) for name in CLAUSE_CATEGORIES)
    lines = [f"stats: {len(docs)} document(s)"]
    lines.extend(f"{name:<{width}}  {stats.counts[name]:>7}" for name in CLAUSE_CATEGORIES)
    lines.append(f"{'Total':<{width}}  {stats.total:>7}")
    if args.timings:
        lines.append(f"elapsed: {payload['seconds']}s")
    _emit(payload, lines, args)
    return EXIT_OK


def cmd_sweep(args) -> int:
    sys_docs = parse_corpus(_read(args.system), args.system)
    gold_docs = parse_corpus(_read(args.gold), args.gold)
    paired = _pair_documents(sys_docs, gold_docs)
    try:
        restart_list = [int(tok) for tok in args.restart_list.split(",") if tok.strip()]
    except ValueError as exc:
        raise ParseError(f"bad --restart-list: {exc}") from exc
    config = _config_from(args)
    report = sweep_report(
        [(s.form, g.form) for _, s, g in paired], restart_list, config
    )

    rows_json = [
        {
            "restarts": row.restarts,
            "precision": _frac(row.precision),
            "recall": _frac(row.recall),
            "f1": _frac(row.f1),
            "seconds": round(row.seconds, 3) if args.timings else None,
        }
        for row in report.rows
    ]
    payload = {
        "command": "sweep",
        "config": {"seed": args.seed, "keep_refs": args.keep_refs},
        "documents": len(paired),
        "rows": rows_json,
    }
    lines = [f"sweep: {len(paired)} document pair(s)"]
    lines.append(f"{'restarts':>8}  {'P%':>6}  {'R%':>6}  {'F1%':>6}  {'seconds':>8}")
    for row, row_json in zip(report.rows, rows_json):
        seconds = f"{row_json['seconds']:.3f}" if args.timings else "-"
        lines.append(
            f"{row.restarts:>8}  {_pct(row.precision):>6}  {_pct(row.recall):>6}  "
            f"{_pct(row.f1):>6}  {seconds:>8}"
        )
    _emit(payload, lines, args)
    return EXIT_OK


def cmd_spar(args) -> int:
    docs = parse_corpus(_read(args.corpus), args.corpus)
    forms = [d.form for d in docs]
    config = _config_from(args)
    means = spar_rank(forms, config)
    best = max(range(len(forms)), key=lambda i: (means[i], -i))
    doc_id = docs[best].doc_id

    if args.emit:
        print(serialize_form(forms[best]), end="")
        return EXIT_OK
    if args.apply is not None:
        blocks = [serialize_form(forms[best])] * args.apply
        print("\n".join(blocks), end="")
        return EXIT_OK

    payload = {
        "command": "spar",
        "config": {"restarts": args.restarts, "seed": args.seed, "keep_refs": args.keep_refs},
        "documents": len(forms),
        "selected": doc_id,
        "mean_f1": _frac(means[best]),
        "per_doc": [
            {"doc_id": d.doc_id, "mean_f1": _frac(m)} for d, m in zip(docs, means)
        ],
    }
    lines = [
        f"spar: selected doc {doc_id} of {len(forms)} (mean F1 {_pct(means[best])}%)",
    ]
    lines.extend(
        f"doc {d.doc_id}: mean F1 {_pct(m)}%" for d, m in zip(docs, means)
    )
    _emit(payload, lines, args)
    return EXIT_OK


def cmd_amr2drs(args) -> int:
    graphs = parse_penman_corpus(_read(args.penman))
    dictionary = default_dictionary()
    if args.dictionary:
        dictionary = load_dictionary(_read(args.dictionary), dictionary)
    forms = [
        amr_to_drs(graph, dictionary, on_unmapped=args.on_unmapped, doc_id=str(i + 1))
        for i, graph in enumerate(graphs)
    ]
    if args.json:
        print(json.dumps([form_to_json_obj(f) for f in forms], ensure_ascii=False, indent=2))
        return EXIT_OK
    chunks = [f"% id: {form.doc_id}\n{serialize_form(form)}" for form in forms]
    print("\n".join(chunks), end="")
    return EXIT_OK


def _add_match_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--restarts", type=int, default=20, help="hill-climb restarts (default 20)")
    parser.add_argument("--seed", type=int, default=42, help="rng seed (default 42)")
    parser.add_argument(
        "--keep-refs", action="store_true", help="keep redundant REF clauses when matching"
    )


def _add_report_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    parser.add_argument(
        "--timings", action="store_true",
        help="include wall-clock seconds (off by default so reports are reproducible)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drsmatch",
        description="Compare, validate, convert and analyse DRS clausal forms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="score a system corpus against a gold corpus")
    p.add_argument("system", help="system clausal-form file ('-' for stdin)")
    p.add_argument("gold", help="gold clausal-form file")
    _add_match_flags(p)
    _add_report_flags(p)
    p.add_argument("--print-mapping", action="store_true", help="show the best variable mapping")
    p.add_argument("--parallel", type=int, default=1, metavar="K", help="concurrent documents")
    p.add_argument("--oracle", action="store_true", help="exact search (small inputs only)")
    p.add_argument("--max-nodes", type=int, default=2_000_000, help="oracle node budget")
    p.set_defaults(handler=cmd_score)

    p = sub.add_parser("translations", help="compare two translations of one corpus by id")
    p.add_argument("side_a")
    p.add_argument("side_b")
    _add_match_flags(p)
    _add_report_flags(p)
    p.add_argument("--list", action="store_true", help="list ids of pairs with F1 < 1.0")
    p.add_argument("--parallel", type=int, default=1, metavar="K")
    p.set_defaults(handler=cmd_translations)

    p = sub.add_parser("stats", help="clause-type distribution of a corpus")
    p.add_argument("path")
    _add_report_flags(p)
    p.set_defaults(handler=cmd_stats)

    p = sub.add_parser("sweep", help="score at several restart counts")
    p.add_argument("system")
    p.add_argument("gold")
    p.add_argument("--restart-list", required=True, help="ascending counts, e.g. 1,5,10")
    _add_match_flags(p)
    _add_report_flags(p)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("spar", help="select the most corpus-similar document")
    p.add_argument("corpus")
    _add_match_flags(p)
    _add_report_flags(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--emit", action="store_true", help="print the selected form")
    group.add_argument("--apply", type=int, metavar="N", help="print the selected form N times")
    p.set_defaults(handler=cmd_spar)

    p = sub.add_parser("amr2drs", help="convert PENMAN AMR blocks to clausal forms")
    p.add_argument("penman")
    p.add_argument("--dict", dest="dictionary", help="tab-separated dictionary file")
    p.add_argument(
        "--on-unmapped", choices=(SKIP, "fail"), default=SKIP,
        help="policy for relations missing from the dictionary",
    )
    p.add_argument("--json", action="store_true", help="emit forms as JSON token arrays")
    p.set_defaults(handler=cmd_amr2drs)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(format="%(levelname)s: %(message)s", level=logging.INFO, stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ParseError, DuplicateDocId, UnmappedRelation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PairingError, CorpusTooSmall) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PAIRING
    except (TooLarge, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMITS
    except DrsMatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
