"""Command-line driver: build, verify and classify Latin-square corpora.

Exit status is 0 on pass, 1 on a failed verification, 2 on usage or
parameter errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Sequence

from . import constructions as cons
from . import verify as ver
from .corpus import CorpusError, MatrixCorpus, read_corpus, render_corpus
from .perm_core import Matrix, PermError, is_group, line_seqs
from .ring import RingError

log = logging.getLogger("latinpack")

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    parameters: dict[str, Any]
    matrix_count: int
    distinct_lines: int | None
    expected_lines: int | None
    verdict: str
    elapsed: float = 0.0
    violations: list[dict] = field(default_factory=list)
    checks: dict[str, bool] = field(default_factory=dict)
    details: list[dict] = field(default_factory=list)

    def settle(self) -> None:
        if self.verdict == "unverified":
            return
        ok = self.distinct_lines == self.expected_lines and all(self.checks.values())
        self.verdict = "pass" if ok else "fail"

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    def to_text(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.parameters.items())
        out = [
            f"command: {self.command}",
            f"parameters: {params}",
            f"matrix_count: {self.matrix_count}",
            f"distinct_lines: {self.distinct_lines}",
            f"expected_lines: {self.expected_lines}",
        ]
        for name, ok in self.checks.items():
            out.append(f"check {name}: {'pass' if ok else 'FAIL'}")
        for d in self.details:
            out.append("  " + " ".join(f"{k}={v}" for k, v in d.items()))
        out.append(f"violations: {len(self.violations)}")
        for v in self.violations:
            d = v["duplicate_of"]
            out.append(f"  matrix {v['matrix']} {v['kind']} {v['index']} repeats "
                       f"matrix {d['matrix']} {d['kind']} {d['index']}")
        out.append(f"verdict: {self.verdict}")
        out.append(f"elapsed: {self.elapsed:.3f}s")
        return "\n".join(out)


def _rng(args) -> random.Random | None:
    return random.Random(args.seed) if args.pairing == "seeded" else None


def _cap(args, default: int) -> int:
    return default if args.cap is None else args.cap


def _packing_checks(report: RunReport, mats: Sequence[Matrix]) -> ver.PackingReport:
    pr = ver.verify_packing(mats)
    report.distinct_lines = pr.distinct_lines
    report.checks.update(latin=pr.all_latin,
                         strongly_asymmetric=pr.all_strongly_asymmetric,
                         packing=pr.is_packing)
    report.violations = [v.as_dict() for v in pr.violations]
    return pr


def _group_check(report: RunReport, mats: Sequence[Matrix]) -> None:
    closed, _ = ver.lines_form_group(mats)
    report.checks["lines_form_group"] = closed


# Each builder returns (matrices, expected distinct lines, extra checks).
def _build_pack_odd(args):
    n = args.n
    return cons.pack_odd(n, _cap(args, cons.PACK_ODD_CAP), _rng(args)).matrices, math.factorial(n), None


def _build_pack_even(args):
    n = args.n
    return cons.pack_even(n, _cap(args, cons.PACK_EVEN_CAP), _rng(args)).matrices, math.factorial(n), None


def _build_pack_subgroup(args):
    n = args.n
    mats = cons.pack_even_subgroup(n, _cap(args, cons.PACK_EVEN_CAP), _rng(args)).matrices

    def extra(report):
        _group_check(report, mats)
        report.checks["partition_preserving"] = all(
            cons.partition_preserving(s) for m in mats for s in line_seqs(m))
    return mats, cons.expected_subgroup_order(n), extra


def _build_pack_single(args):
    mats = [cons.pack_single(args.n)]
    return mats, 4 * args.n, lambda report: _group_check(report, mats)


def _build_mols(args):
    p = args.n
    mats = cons.mols_packed(p, _cap(args, cons.MOLS_CAP)).matrices

    def extra(report):
        _group_check(report, mats)
        report.checks["mutually_orthogonal"] = ver.verify_mols(mats)
        report.checks["affine_lines"] = all(ver.is_affine(s, p) for s in ver.line_set(mats))
    return mats, p * (p - 1), extra


PACKING_BUILDERS: dict[str, Callable] = {
    "pack-odd": _build_pack_odd,
    "pack-even": _build_pack_even,
    "pack-subgroup": _build_pack_subgroup,
    "pack-single": _build_pack_single,
    "mols": _build_mols,
}


def _emit_corpus(args, corpus_text: str) -> None:
    if args.out is None:
        return
    if args.out == "-":
        sys.stdout.write(corpus_text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(corpus_text)


def _source(args) -> str:
    return f"latinpack {args.command} {args.n}"


def cmd_packing(args) -> RunReport:
    mats, expected, extra = PACKING_BUILDERS[args.command](args)
    report = RunReport(args.command, {"n": args.n}, len(mats), None, expected, "unverified")
    if args.pairing == "seeded" and args.command in ("pack-odd", "pack-even", "pack-subgroup"):
        report.parameters.update(pairing="seeded", seed=args.seed)
    _emit_corpus(args, render_corpus(MatrixCorpus(list(mats), _source(args))))
    if args.verify:
        report.verdict = ""
        _packing_checks(report, mats)
        if extra:
            extra(report)
    return report


def cmd_min_lines(args) -> RunReport:
    n = args.n
    m = cons.min_lines_square(n)
    expected = ver.theoretical_min_lines(n)
    report = RunReport("min-lines", {"n": n}, 1, None, expected, "unverified")
    _emit_corpus(args, render_corpus(MatrixCorpus([m], _source(args))))
    if args.verify:
        report.verdict = ""
        sym = ver.classify_symmetry(m)
        report.distinct_lines = sym.distinct_lines
        report.checks["latin"] = ver.is_latin(m)
        if n % 2:
            report.checks["symmetric_or_hankel"] = sym.symmetric or sym.hankel_symmetric
        else:
            report.checks["symmetric"] = sym.symmetric
            report.checks["centrosymmetric"] = sym.centrosymmetric
            report.checks["hankel_symmetric"] = sym.hankel_symmetric
    return report


def cmd_subgroup_4n(args) -> RunReport:
    n = args.n
    g = cons.subgroup_4n(n)
    report = RunReport("subgroup-4n", {"n": n}, 0, None, 4 * n, "unverified")
    if args.out is not None:
        text = f"# source: {_source(args)}\n# subgroup of order {g.order} in S_{n}\n" + "".join(
            " ".join(map(str, p)) + "\n" for p in g)
        _emit_corpus(args, text)
    if args.verify:
        report.verdict = ""
        report.distinct_lines = g.order
        report.checks["closed"] = is_group(g.elements, n)
    return report


def cmd_enumerate(args) -> RunReport:
    n = args.n
    cap = _cap(args, ver.ENUMERATE_CAP)
    report = RunReport("enumerate", {"n": n}, 0, None, ver.theoretical_min_lines(n), "")
    if args.out is not None:
        mats = list(ver.enumerate_latin_squares(n, cap=cap))
        _emit_corpus(args, render_corpus(MatrixCorpus(mats, _source(args))))
    res = ver.sweep(n, workers=args.workers, cap=cap)
    report.matrix_count = res.squares
    report.distinct_lines = res.min_distinct_lines
    report.checks["classification"] = not res.counterexamples
    report.details = [{"distinct_lines": k, "squares": v} for k, v in sorted(res.line_histogram.items())]
    return report


def cmd_verify(args) -> RunReport:
    corpus = read_corpus(args.file)
    if not corpus.matrices:
        raise UsageError(f"{args.file}: corpus contains no matrices")
    mats = corpus.matrices
    n = len(mats[0])
    report = RunReport("verify", {"file": args.file}, len(mats), None, 4 * n * len(mats), "")
    _packing_checks(report, mats)
    return report


def cmd_classify(args) -> RunReport:
    corpus = read_corpus(args.file)
    report = RunReport("classify", {"file": args.file}, len(corpus.matrices), None, None, "")
    coherent = True
    for k, m in enumerate(corpus.matrices, 1):
        sym = ver.classify_symmetry(m)
        coherent = coherent and sym.coherent()
        report.details.append({"matrix": k, **asdict(sym)})
    report.checks["flags_coherent"] = coherent
    return report


COMMANDS: dict[str, Callable] = {
    **{name: cmd_packing for name in PACKING_BUILDERS},
    "min-lines": cmd_min_lines,
    "subgroup-4n": cmd_subgroup_4n,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "classify": cmd_classify,
}

HELP = {
    "pack-odd": "pack S_N (N odd >= 5) into (N-1)!/4 addition squares",
    "pack-even": "pack S_N (N even >= 6) into composite squares",
    "pack-subgroup": "pack the pair-preserving subgroup of S_N (N even >= 6)",
    "pack-single": "pack a group of order 4N into one Latin square",
    "mols": "packed mutually orthogonal Latin squares for a prime P = 1 mod 4",
    "min-lines": "a Latin square of order N with the fewest distinct lines",
    "subgroup-4n": "an explicit subgroup of order 4N in S_N (N even >= 6)",
    "enumerate": "sweep all Latin squares of order N <= 5 and check the line bounds",
    "verify": "check whether the squares in FILE form a packing",
    "classify": "report symmetry flags and line counts per square in FILE",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="write the matrix corpus here ('-' for stdout)")
    common.add_argument("--report", choices=("text", "json"), default="text")
    common.add_argument("--cap", type=int, metavar="K", help="override the order cap")
    common.add_argument("--pairing", choices=("canonical", "seeded"), default="canonical")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True,
                        help="self-check after construction (default: on)")
    common.add_argument("--workers", type=int, default=1, help="processes for the enumerate sweep")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="latinpack", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=HELP[name])
        if name in ("verify", "classify"):
            sp.add_argument("file", metavar="FILE")
        else:
            sp.add_argument("n", type=int, metavar="P" if name == "mols" else "N")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    start = time.perf_counter()
    try:
        report = COMMANDS[args.command](args)
    except (cons.ConstructionError, RingError, PermError, ver.VerifyError, UsageError) as exc:
        print(f"latinpack {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CorpusError as exc:
        print(f"latinpack {args.command}: malformed corpus {args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"latinpack {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.settle()
    report.elapsed = round(time.perf_counter() - start, 6)
    log.info("%s finished in %.3fs", args.command, report.elapsed)
    text = report.to_json() if args.report == "json" else report.to_text()
    # keep stdout a clean corpus when the corpus itself goes there
    print(text, file=sys.stderr if args.out == "-" else sys.stdout)
    return EXIT_FAIL if report.verdict == "fail" else EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
