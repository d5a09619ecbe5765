"""Batch command-line front end.

Verbs: lambda, dual, poset, strata, ring, ext, kgroup-check, enumerate.
Inputs are inline JSON, file paths, or identity expressions; outputs are
JSON (compact, key-order deterministic), plain tables, or DOT.  Exit codes:
0 success, 1 domain error (message names the violated precondition),
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .errors import StrataKitError
from .kgroup import (
    DerivativeExpr,
    ProductExpr,
    SumExpr,
    ZClass,
    check_identity,
)
from .multisegments import (
    DEFAULT_SUPPORT_BOUND,
    DEFAULT_NODE_BOUND,
    Multisegment,
    downset,
    enumerate_with_support,
    inertial_class,
    lambda_of,
    mw_dual,
)
from .segments import CuspidalLabel, Segment
from .strata import (
    BlockSpec,
    components,
    ext_dimensions,
    ring_presentation,
)

DEFAULT_LINE_ID = "r"
BUDGET_ENV_VAR = "STRATAKIT_BUDGET"


class ExpressionSyntaxError(StrataKitError):
    """Syntax error in a K-group expression, with 1-based position info."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"syntax error at line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class _Parser:
    """Recursive-descent parser for the K-group expression grammar.

    expr := sum; sum := prod ('+' prod)*; prod := atom ('*' atom)*;
    atom := 'Z[' int ',' int (';' ident)? ']' | 'Z{' mseg '}'
          | 'D^' int '(' expr ')' | '(' expr ')'.
    """

    def __init__(self, src: str) -> None:
        self.src = src
        self.pos = 0

    def _position(self, pos: int) -> tuple[int, int]:
        line = self.src.count("\n", 0, pos) + 1
        last_nl = self.src.rfind("\n", 0, pos)
        return line, pos - last_nl

    def _fail(self, message: str) -> None:
        line, col = self._position(self.pos)
        raise ExpressionSyntaxError(message, line, col)

    def _skip_ws(self) -> None:
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def _expect(self, token: str) -> None:
        self._skip_ws()
        if not self.src.startswith(token, self.pos):
            self._fail(f"expected {token!r}")
        self.pos += len(token)

    def _int(self) -> int:
        self._skip_ws()
        start = self.pos
        if self._peek() == "-":
            self.pos += 1
        while self.pos < len(self.src) and self.src[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.src[start:self.pos] == "-":
            self.pos = start
            self._fail("expected an integer")
        return int(self.src[start : self.pos])

    def _ident(self) -> str:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.src) and (
            self.src[self.pos].isalnum() or self.src[self.pos] == "_"
        ):
            self.pos += 1
        if self.pos == start:
            self._fail("expected an identifier")
        return self.src[start : self.pos]

    def _segment(self) -> Segment:
        self._expect("[")
        a = self._int()
        self._expect(",")
        b = self._int()
        line_id = DEFAULT_LINE_ID
        if self._peek() == ";":
            self._expect(";")
            line_id = self._ident()
        self._expect("]")
        try:
            return Segment(CuspidalLabel(line_id), a, b)
        except StrataKitError as exc:
            self._fail(str(exc))
            raise  # unreachable

    def _atom(self):
        ch = self._peek()
        if ch == "(":
            self._expect("(")
            inner = self.expression()
            self._expect(")")
            return inner
        if ch == "D":
            self._expect("D")
            self._expect("^")
            degree = self._int()
            self._expect("(")
            inner = self.expression()
            self._expect(")")
            return DerivativeExpr(degree, inner)
        if ch == "Z":
            self._expect("Z")
            ch = self._peek()
            if ch == "[":
                return ZClass(Multisegment.of(self._segment()))
            if ch == "{":
                self._expect("{")
                segs: list[Segment] = []
                if self._peek() != "}":
                    segs.append(self._segment())
                    while self._peek() == ",":
                        self._expect(",")
                        segs.append(self._segment())
                self._expect("}")
                return ZClass(Multisegment.of(*segs))
            self._fail("expected '[' or '{' after 'Z'")
        self._fail("expected an atom")

    def _product(self):
        factors = [self._atom()]
        while self._peek() == "*":
            self._expect("*")
            factors.append(self._atom())
        return factors[0] if len(factors) == 1 else ProductExpr(tuple(factors))

    def expression(self):
        terms = [self._product()]
        while self._peek() == "+":
            self._expect("+")
            terms.append(self._product())
        return terms[0] if len(terms) == 1 else SumExpr(tuple(terms))

    def parse(self):
        tree = self.expression()
        self._skip_ws()
        if self.pos != len(self.src):
            self._fail("unexpected trailing input")
        return tree


def parse_expression(src: str):
    """Parse a K-group expression string into an expression tree."""
    return _Parser(src).parse()


def _dumps(value) -> str:
    return json.dumps(value, separators=(",", ":"), sort_keys=False)


def _read_input(arg: str) -> str:
    """Treat the argument as a file path when one exists, else as inline text."""
    if os.path.isfile(arg):
        with open(arg, "r", encoding="utf-8") as fh:
            return fh.read()
    return arg


def _load_json(arg: str):
    text = _read_input(arg)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _UsageError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


class _UsageError(Exception):
    pass


def _load_multisegment(arg: str) -> Multisegment:
    data = _load_json(arg)
    if not isinstance(data, dict) or "segments" not in data:
        raise _UsageError('expected a multisegment object {"segments": [...]}')
    return Multisegment.from_json(data)


def _budget(args, fallback: int) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise _UsageError(f"{BUDGET_ENV_VAR} must be an integer") from exc
    return fallback


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    out_path: Optional[str] = getattr(args, "out", None)
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table_lines(value, indent: str = "") -> list[str]:
    if isinstance(value, dict):
        lines = []
        for key, sub in value.items():
            if isinstance(sub, (dict, list)):
                lines.append(f"{indent}{key}:")
                lines.extend(_table_lines(sub, indent + "  "))
            else:
                lines.append(f"{indent}{key}: {sub}")
        return lines
    if isinstance(value, list):
        if all(not isinstance(x, (dict, list)) for x in value):
            return [indent + " ".join(str(x) for x in value)]
        lines = []
        for x in value:
            lines.append(f"{indent}-")
            lines.extend(_table_lines(x, indent + "  "))
        return lines
    return [f"{indent}{value}"]


def _render(args, payload) -> str:
    if getattr(args, "format", "json") == "table":
        return "\n".join(_table_lines(payload))
    return _dumps(payload)


def _cmd_lambda(args) -> None:
    m = _load_multisegment(args.input)
    _emit(args, _render(args, lambda_of(m).to_json()))


def _cmd_dual(args) -> None:
    m = _load_multisegment(args.input)
    _emit(args, _render(args, mw_dual(m).to_json()))


def _cmd_poset(args) -> None:
    m = _load_multisegment(args.input)
    poset = downset(m, node_bound=_budget(args, DEFAULT_NODE_BOUND))
    if args.dot or args.format == "dot":
        _emit(args, poset.to_dot())
    else:
        _emit(args, _render(args, poset.to_json()))


def _cmd_strata(args) -> None:
    block = BlockSpec.from_json(_load_json(args.block))
    lam_data = _load_json(args.lam)
    from .partitions import Partition

    report = components(
        block, Partition.from_json(lam_data), bound=_budget(args, 10000)
    )
    _emit(args, _render(args, report.to_json()))


def _cmd_ring(args) -> None:
    data = _load_json(args.cls)
    if isinstance(data, dict) and "representative" in data:
        m = Multisegment.from_json(data["representative"])
    elif isinstance(data, dict) and "segments" in data:
        m = Multisegment.from_json(data)
    else:
        raise _UsageError("expected an inertial class or multisegment object")
    _emit(args, _render(args, ring_presentation(inertial_class(m)).to_json()))


def _cmd_ext(args) -> None:
    if args.r is not None:
        dims = ext_dimensions(args.r)
    else:
        dims = ext_dimensions(_load_multisegment(args.mseg))
    _emit(args, _render(args, dims))


def _cmd_kgroup_check(args) -> None:
    src = _read_input(args.identity)
    if src.count("=") != 1:
        raise _UsageError("identity must contain exactly one '='")
    lhs_src, rhs_src = src.split("=")
    verdict = check_identity(parse_expression(lhs_src), parse_expression(rhs_src))
    _emit(args, str(verdict))


def _cmd_enumerate(args) -> None:
    data = _load_json(args.support)
    if not isinstance(data, list):
        raise _UsageError("expected a JSON array of support points")
    points = []
    for entry in data:
        if isinstance(entry, dict):
            points.append(
                CuspidalLabel(
                    entry["line"],
                    entry.get("dim", 1),
                    entry.get("period"),
                    entry["twist"],
                )
            )
        elif isinstance(entry, list) and len(entry) == 2:
            points.append(CuspidalLabel(entry[0], 1, None, entry[1]))
        else:
            raise _UsageError(
                'support points must be {"line":...,"twist":...} or [line, twist]'
            )
    out = enumerate_with_support(points, bound=_budget(args, DEFAULT_SUPPORT_BOUND))
    _emit(args, _render(args, [m.to_json() for m in out]))


def _add_common(sub: argparse.ArgumentParser, formats=("json", "table")) -> None:
    sub.add_argument("--format", choices=formats, default="json")
    sub.add_argument("--out", help="write output to this path instead of stdout")
    sub.add_argument("--budget", type=int, help="override the enumeration bound")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strata-kit",
        description="Exact combinatorics of segments, multisegments, and strata.",
    )
    subs = parser.add_subparsers(dest="verb", required=True)

    p = subs.add_parser("lambda", help="highest derivative partition of a multisegment")
    p.add_argument("input", help="multisegment JSON or a path to it")
    _add_common(p)
    p.set_defaults(func=_cmd_lambda)

    p = subs.add_parser("dual", help="Zelevinsky-dual multisegment")
    p.add_argument("input")
    _add_common(p)
    p.set_defaults(func=_cmd_dual)

    p = subs.add_parser("poset", help="elementary-reduction poset below a multisegment")
    p.add_argument("input")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    _add_common(p, formats=("json", "table", "dot"))
    p.set_defaults(func=_cmd_poset)

    p = subs.add_parser("strata", help="inertial components of a stratum")
    p.add_argument("--block", required=True, help="block JSON or a path to it")
    p.add_argument("--lambda", dest="lam", required=True, help="partition JSON")
    _add_common(p)
    p.set_defaults(func=_cmd_strata)

    p = subs.add_parser("ring", help="invariant-ring presentation of a component")
    p.add_argument("--class", dest="cls", required=True, help="class or multisegment JSON")
    _add_common(p)
    p.set_defaults(func=_cmd_ring)

    p = subs.add_parser("ext", help="Ext dimensions [C(r,i)]")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--r", type=int, help="number of segments")
    group.add_argument("--mseg", help="multisegment JSON or a path to it")
    _add_common(p)
    p.set_defaults(func=_cmd_ext)

    p = subs.add_parser("kgroup-check", help="check a Grothendieck-group identity")
    p.add_argument("identity", help="expression of the form 'lhs = rhs'")
    _add_common(p)
    p.set_defaults(func=_cmd_kgroup_check)

    p = subs.add_parser("enumerate", help="all multisegments with a given support")
    p.add_argument("--support", required=True, help="JSON array of support points")
    _add_common(p)
    p.set_defaults(func=_cmd_enumerate)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except (_UsageError, ExpressionSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except StrataKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
