"""Command-line entry point.

Exit status: 0 on success, 2 for usage or input errors, 3 when an external
compressor fails.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .bench import BenchConfig, bench_scaling
from .cdm import BackendError, OffsetError, cdm, make_backend
from .classify import (
    CdmMethod,
    accuracy_table,
    build_groups,
    classify_cdm,
    classify_infoq,
    ComposerGroup,
    leave_one_out,
)
from .codec import ScoreError, encode_score, parse_score_file, read_encoded
from .corpus import ManifestError, load_corpus
from .report import format_accuracy, format_mcnemar, format_records, format_value
from .significance import ContingencyTable, build_contingency, mcnemar
from .suffix_index import read_index
from .synthetic import DEFAULT_SEED

log = logging.getLogger("scoreinfo")

EXIT_USAGE = 2
EXIT_BACKEND = 3


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _backend(args):
    if args.backend == "external" and not args.external_cmd:
        raise UsageError("--backend external needs --external-cmd")
    return make_backend(args.backend, args.offset, args.external_cmd)


def _read_query(path: str) -> str:
    try:
        text = read_encoded(Path(path).read_bytes(), Path(path).stem)
    except ScoreError as exc:
        raise UsageError(f"{path}: not a 0/1 string or score document ({exc})") from exc
    if not text:
        raise UsageError(f"{path}: empty query")
    return text


def _load_groups(args) -> list[ComposerGroup]:
    if args.index_dir:
        groups = []
        for file in sorted(Path(args.index_dir).glob("*.sqix")):
            groups.append(ComposerGroup(file.stem, [], read_index(file)))
        if not groups:
            raise UsageError(f"no .sqix files in {args.index_dir}")
        return groups
    if not args.manifest:
        raise UsageError("give a manifest or --index-dir")
    return build_groups(load_corpus(args.manifest))


def cmd_encode(args) -> int:
    path = Path(args.score)
    encoded = encode_score(parse_score_file(path.read_bytes(), path.stem))
    out = Path(args.out) if args.out else path.with_suffix(".bits")
    out.write_text(encoded + "\n", encoding="ascii")
    print(len(encoded))
    return 0


def cmd_index(args) -> int:
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    for group in build_groups(load_corpus(args.manifest)):
        group.index.save(out / f"{group.label}.sqix")
        print(f"{group.label} {group.size} {group.index.length}")
    return 0


def cmd_infoq(args) -> int:
    query = _read_query(args.query)
    outcome = classify_infoq(query, _load_groups(args), Path(args.query).stem)
    lines = [f"{label} {format_value(v, args.paper_style)}" for label, v in outcome.per_class]
    lines.append(f"predicted {outcome.predicted}" + (" (tie)" if outcome.tie else ""))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_cdm(args) -> int:
    x, y = _read_query(args.x), _read_query(args.y)
    _emit(f"{cdm(_backend(args), x, y):.6f}\n", args.out)
    return 0


def cmd_classify(args) -> int:
    query = _read_query(args.query)
    qid = Path(args.query).stem
    if args.method == "cdm":
        if not args.manifest:
            raise UsageError("--method cdm needs a manifest")
        corpus = load_corpus(args.manifest)
        outcome = classify_cdm(query, [(s.label, s.text) for s in corpus], _backend(args), args.k, qid)
    else:
        outcome = classify_infoq(query, _load_groups(args), qid)
    _emit(f"{qid} {outcome.predicted}" + (" tie" if outcome.tie else "") + "\n", args.out)
    return 0


def cmd_evaluate(args) -> int:
    corpus = load_corpus(args.manifest)
    methods = args.method or ["infoq"]
    if len(set(methods)) != len(methods):
        raise UsageError("each --method may be given once")
    parts, runs = [], []
    for name in methods:
        method = "infoq" if name == "infoq" else CdmMethod(_backend(args), args.k)
        try:
            records = leave_one_out(corpus, method, jobs=args.jobs)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        runs.append(records)
        parts.append(format_records(records, name, args.paper_style and name == "infoq"))
        parts.append(format_accuracy(accuracy_table(records), name))
    if len(runs) == 2:
        table = build_contingency(*runs)
        parts.append(format_mcnemar(table, mcnemar(table), tuple(methods)))
    _emit("".join(parts), args.out)
    return 0


def cmd_mcnemar(args) -> int:
    table = ContingencyTable(args.a, args.b, args.c, args.d)
    _emit(format_mcnemar(table, mcnemar(table), ("A", "B")), args.out)
    return 0


def cmd_bench(args) -> int:
    try:
        g_values = [int(x) for x in args.g.split(",") if x]
    except ValueError:
        raise UsageError(f"bad --g list {args.g!r}") from None
    if not g_values or min(g_values) < 1:
        raise UsageError("--g needs positive integers")
    try:
        config = BenchConfig(l=args.l, c=args.c, g=g_values[0], n=args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = bench_scaling(config, g_values, seed=args.seed, backend=_backend(args), k=args.k)
    _emit(report.format(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scoreinfo", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--paper-style", action="store_true",
                        help="truncate information quantities to integers")

    backend = argparse.ArgumentParser(add_help=False)
    backend.add_argument("--backend", choices=["identity", "lzw", "external"], default="lzw")
    backend.add_argument("--external-cmd", help="compressor command, '{in}' is the input file")
    backend.add_argument("--offset", type=int, default=0, help="bytes subtracted from each size")
    backend.add_argument("--k", type=int, default=1, help="neighbours for k-NN")

    def query_and_groups(p):
        p.add_argument("query")
        p.add_argument("manifest", nargs="?")
        p.add_argument("--index-dir", help="directory of .sqix files from 'index'")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", parents=[common], help="score document -> 0/1 string")
    p.add_argument("score")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("index", parents=[common], help="build and save one index per composer")
    p.add_argument("manifest")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("infoq", parents=[common], help="information quantity per composer")
    query_and_groups(p)
    p.set_defaults(func=cmd_infoq)

    p = sub.add_parser("cdm", parents=[common, backend], help="CDM of two strings")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_cdm)

    p = sub.add_parser("classify", parents=[common, backend], help="predict a composer")
    query_and_groups(p)
    p.add_argument("--method", choices=["infoq", "cdm"], default="infoq")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("evaluate", parents=[common, backend], help="leave-one-out evaluation")
    p.add_argument("manifest")
    p.add_argument("--method", choices=["infoq", "cdm"], action="append")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("mcnemar", parents=[common], help="McNemar test on a 2x2 table")
    for cell in "abcd":
        p.add_argument(cell, type=int)
    p.set_defaults(func=cmd_mcnemar)

    p = sub.add_parser("bench", parents=[common, backend], help="per-query timing vs group size")
    p.add_argument("--l", type=int, default=2000)
    p.add_argument("--c", type=int, default=5)
    p.add_argument("--g", default="5,10,20", help="comma-separated group sizes")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except BackendError as exc:
        print(f"scoreinfo: backend failure: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    except (UsageError, ScoreError, ManifestError, OffsetError, ValueError, OSError) as exc:
        print(f"scoreinfo: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
