"""
Monores Command Line
Parse a monomial problem, run a resolution strategy and emit trees, tables or reports
"""

import argparse
import sys
from pathlib import Path
from typing import List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from . import config
from .combinatorics import (
    BoundReport,
    catalan,
    catalan_partial_sum,
    format_table,
    propagation_table,
)
from .errors import MonoresError
from .explorer import explore, largest_branch, principalize, toric_reduce
from .export import (
    branch_to_dot,
    branch_to_json,
    branch_to_text,
    dumps,
    tree_to_dot,
    tree_to_json,
    tree_to_text,
)
from .monomial import ChartState, build_state, singular_locus
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TRUNCATED = 2
EXIT_VERIFY_FAILED = 3

Mode = Literal["resolve", "largest-branch", "principalize", "toric"]
Format = Literal["text", "json", "dot"]


# ============================================================================
# Models
# ============================================================================


class ProblemSpec(BaseModel):
    """A monomial problem X^a with critical value c."""

    exponents: List[int] = Field(..., min_length=1, description="Exponents a_1..a_n")
    critical: int = Field(..., ge=1, description="Critical value c")
    exceptional: Union[Literal["none", "all"], List[int]] = Field(
        "none", description="Variables starting as exceptional divisors"
    )
    mode: Mode = Field("resolve", description="Strategy to run")

    @field_validator("exponents")
    @classmethod
    def positive_exponents(cls, value: List[int]) -> List[int]:
        if any(a < 1 for a in value):
            raise ValueError("every exponent must be >= 1")
        return value

    @model_validator(mode="after")
    def exceptional_in_range(self) -> "ProblemSpec":
        if isinstance(self.exceptional, list):
            n = len(self.exponents)
            bad = [v for v in self.exceptional if not 1 <= v <= n]
            if bad:
                raise ValueError(f"exceptional variables {bad} outside 1..{n}")
        return self

    def exceptional_vars(self) -> Tuple[int, ...]:
        if self.exceptional == "none":
            return ()
        if self.exceptional == "all":
            return tuple(range(1, len(self.exponents) + 1))
        return tuple(self.exceptional)

    def state(self) -> ChartState:
        if self.mode == "toric":
            return toric_reduce(self.critical, self.exponents)
        return build_state(self.exponents, self.critical, self.exceptional_vars())


class OutputOptions(BaseModel):
    format: Format = "text"
    max_depth: Optional[int] = Field(None, ge=1)
    out: Optional[str] = None
    jobs: int = Field(1, ge=1)
    memoize: bool = True


# ============================================================================
# Parsing
# ============================================================================


class UsageParser(argparse.ArgumentParser):
    """argparse with exit status 1 on usage errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(raw: str) -> List[int]:
    try:
        return [int(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {raw!r}")


def _exceptional(raw: str) -> Union[str, List[int]]:
    if raw in ("none", "all"):
        return raw
    return _int_list(raw)


def build_parser() -> argparse.ArgumentParser:
    parser = UsageParser(prog="monores", description="Monomial resolution simulator and bound verifier")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=UsageParser)

    def problem_flags(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--exponents", type=_int_list, required=True, help="e.g. 5,4,1")
        sub.add_argument("--critical", type=int, required=True, help="critical value c")
        sub.add_argument("--exceptional", type=_exceptional, default="none", help="none | all | 1,2")

    def output_flags(sub: argparse.ArgumentParser, formats: Sequence[str]) -> None:
        sub.add_argument("--format", choices=formats, default="text")
        sub.add_argument("--out", help="write here instead of standard output")

    resolve = commands.add_parser("resolve", help="explore or follow resolution trees")
    problem_flags(resolve)
    resolve.add_argument(
        "--mode", choices=["resolve", "largest-branch", "principalize", "toric"], default="resolve"
    )
    resolve.add_argument("--max-depth", type=int, default=None, help="depth guard")
    resolve.add_argument("--jobs", type=int, default=config.JOBS)
    resolve.add_argument("--no-memo", dest="memoize", action="store_false", default=config.MEMOIZE)
    output_flags(resolve, ["text", "json", "dot"])

    bounds = commands.add_parser("bounds", help="closed-form bounds for a problem")
    problem_flags(bounds)
    bounds.add_argument("--toric", action="store_true", help="read the input as Z^c - x^a")
    output_flags(bounds, ["text", "json"])

    verify = commands.add_parser("verify", help="run a verification suite")
    verify.add_argument("--suite", choices=SUITES, required=True)
    verify.add_argument("--n-max", type=int, default=None)
    verify.add_argument("--d-max", type=int, default=8)
    output_flags(verify, ["text", "json"])

    table = commands.add_parser("table", help="propagation and bound table")
    table.add_argument("--n-max", type=int, default=4)
    output_flags(table, ["text", "json"])
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> Tuple[argparse.Namespace, Optional[ProblemSpec], OutputOptions]:
    """
    Parse the command line.

    Returns:
        (namespace, ProblemSpec or None for verify/table, OutputOptions)

    Raises:
        SystemExit: With status 1 on malformed flags
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = None
        if args.command in ("resolve", "bounds"):
            spec = ProblemSpec(
                exponents=args.exponents,
                critical=args.critical,
                exceptional=args.exceptional,
                mode=getattr(args, "mode", "resolve"),
            )
        options = OutputOptions(
            format=args.format,
            max_depth=getattr(args, "max_depth", None),
            out=args.out,
            jobs=getattr(args, "jobs", 1),
            memoize=getattr(args, "memoize", True),
        )
    except ValidationError as e:
        parser.error(str(e).replace("\n", " "))
    return args, spec, options


# ============================================================================
# Running
# ============================================================================


def _sing_empty(state: ChartState, options: OutputOptions) -> str:
    message = f"Sing empty: d={state.total_degree} < c={state.critical}"
    if options.format == "json":
        return dumps({"root": state.to_json(), "sing_empty": True})
    if options.format == "dot":
        return f'digraph resolution {{\n\t"0" [label="depth:0 t:- J:{state.exponents.monomial()}"];\n}}\n'
    return message + "\n"


def run(spec: ProblemSpec, options: OutputOptions) -> Tuple[int, str]:
    """
    Dispatch a problem to its strategy.

    Returns:
        (exit status, rendered artifact)
    """
    state = spec.state()
    if not singular_locus(state):
        return EXIT_OK, _sing_empty(state, options)

    if spec.mode == "largest-branch":
        branch = largest_branch(state)
        render = {"text": branch_to_text, "json": lambda r, b: dumps(branch_to_json(r, b)), "dot": branch_to_dot}
        return EXIT_OK, render[options.format](state, branch)

    if spec.mode == "principalize":
        trees = principalize(state, options.max_depth, options.memoize, options.jobs)
        status = EXIT_TRUNCATED if any(t.truncated for t in trees) else EXIT_OK
        if options.format == "json":
            return status, dumps({"trees": [tree_to_json(t) for t in trees]})
        if options.format == "dot":
            return status, "".join(tree_to_dot(t) for t in trees)
        sections = [f"# round {i} (c={t.root.critical})\n{tree_to_text(t)}" for i, t in enumerate(trees, start=1)]
        return status, "\n".join(sections)

    tree = explore(state, options.max_depth, options.memoize, options.jobs)
    status = EXIT_TRUNCATED if tree.truncated else EXIT_OK
    if options.format == "json":
        return status, dumps(tree_to_json(tree))
    if options.format == "dot":
        return status, tree_to_dot(tree)
    return status, tree_to_text(tree)


def run_bounds(spec: ProblemSpec, options: OutputOptions, toric: bool = False) -> Tuple[int, str]:
    report = BoundReport.for_problem(spec.exponents, spec.critical, toric=toric)
    if options.format == "json":
        return EXIT_OK, dumps(report.to_json())
    lines = [f"{key}: {value}" for key, value in report.to_json().items() if key != "measured"]
    return EXIT_OK, "\n".join(lines) + "\n"


def run_table(n_max: int, options: OutputOptions) -> Tuple[int, str]:
    if options.format == "json":
        rows = [
            {
                "n": n,
                "catalan": str(catalan(n)),
                "partial_sum": str(catalan_partial_sum(n)),
                "order_factor": str(2 ** catalan_partial_sum(n) - 1),
            }
            for n in range(1, n_max + 1)
        ]
        table = {f"{i},{j}": str(v) for (i, j), v in sorted(propagation_table(n_max + 1).items())}
        return EXIT_OK, dumps({"propagation": table, "bounds": rows})
    return EXIT_OK, format_table(n_max) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        print(f"📝 Wrote {out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args, spec, options = parse_args(argv)
    try:
        if args.command == "resolve":
            status, text = run(spec, options)
        elif args.command == "bounds":
            status, text = run_bounds(spec, options, toric=args.toric)
        elif args.command == "verify":
            n_max = args.n_max if args.n_max is not None else (20 if args.suite == "catalan" else 3)
            report = run_suite(args.suite, n_max, args.d_max)
            text = dumps(report.to_json()) if options.format == "json" else report.to_text()
            status = EXIT_OK if report.passed else EXIT_VERIFY_FAILED
        else:
            status, text = run_table(args.n_max, options)
    except MonoresError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    _emit(text, options.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
