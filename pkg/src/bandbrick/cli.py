"""Command-line front end.

Every subcommand builds a JSON-ready dict; ``--format table`` renders the
same dict as aligned text.  Exit codes: 0 success, 2 parse error or bad
usage, 3 invalid input, 4 failed internal check.
"""

from __future__ import annotations

import argparse
import io
import json
import re
import sys
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .brauer import bga_presentation, check_presentation, decide_tau_finite_bg, parse_brauer_graph
from .errors import (
    BandBrickError,
    CheckFailed,
    InvalidInput,
    NotSpecialBiserial,
    ParseError,
    ZeroLambda,
)
from .linalg import build_band_module, build_string_module, hom_dim, is_brick_oracle
from .quiver import Presentation, check_admissible, is_special_biserial, parse_presentation
from .tau import (
    advisory_brick_band,
    brick_family_bt1,
    brick_family_bt2,
    decide_tau_finite_sb,
    default_band_bound,
    torsion_witnesses,
)
from .words import (
    Band,
    band_endo_pairs,
    band_hom_dim,
    band_hom_pairs,
    canonical_band,
    enumerate_bands,
    is_band_brick,
    is_string_brick,
    make_band,
    make_string,
    mixed_hom_pairs,
    string_hom_pairs,
    top_socle,
)

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_CHECK = 0, 2, 3, 4

_LAMBDA_RE = re.compile(r"^-?\d+(/\d+)?$")


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    stdout: str
    stderr: str


def parse_lambda(text: str) -> Fraction:
    text = text.strip()
    if not _LAMBDA_RE.match(text):
        raise ParseError(f"scalar {text!r} must be an integer or p/q")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError(f"scalar {text!r} has zero denominator") from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidInput(f"cannot read {path}: {e.strerror}") from None


def _load(path: str) -> Presentation:
    return parse_presentation(_read(path))


def _require_sb(pres: Presentation) -> None:
    report = is_special_biserial(pres)
    if not report:
        raise NotSpecialBiserial(report.violation)


# -- module specs for `hom` ---------------------------------------------------


@dataclass(frozen=True)
class ModuleSpec:
    text: str
    word: object  # StringWord or Band
    lam: Optional[Fraction] = None
    n: int = 1

    @property
    def is_band(self) -> bool:
        return isinstance(self.word, Band)

    def representation(self, pres: Presentation):
        if self.is_band:
            return build_band_module(pres, self.word, self.lam, self.n)
        return build_string_module(pres, self.word)

    def to_json(self) -> dict:
        if self.is_band:
            return {"band": str(self.word), "lambda": str(self.lam), "n": self.n}
        return {"string": str(self.word)}


def parse_module_spec(pres: Presentation, text: str) -> ModuleSpec:
    """``WORD`` for a string module, ``band:WORD[:lambda[:n]]`` for a band module."""
    if text.startswith("band:"):
        parts = text[len("band:"):].split(":")
        if len(parts) > 3 or not parts[0].strip():
            raise ParseError(f"band spec {text!r} must be band:WORD[:lambda[:n]]")
        band = make_band(pres, parts[0])
        lam = parse_lambda(parts[1]) if len(parts) > 1 else Fraction(1)
        try:
            n = int(parts[2]) if len(parts) > 2 else 1
        except ValueError:
            raise ParseError(f"band size in {text!r} must be an integer") from None
        if n < 1:
            raise InvalidInput("band size n must be positive")
        if lam == 0:
            raise ZeroLambda("lambda must be non-zero")
        return ModuleSpec(text, band, lam, n)
    return ModuleSpec(text, make_string(pres, text))


def _combinatorial_hom(src: ModuleSpec, tgt: ModuleSpec) -> Optional[tuple[int, list]]:
    if (src.is_band and src.n > 1) or (tgt.is_band and tgt.n > 1):
        return None
    if not src.is_band and not tgt.is_band:
        pairs = string_hom_pairs(src.word, tgt.word)
        return len(pairs), pairs
    if src.is_band and tgt.is_band:
        pairs = band_hom_pairs(src.word, tgt.word)
        return band_hom_dim(src.word, src.lam, tgt.word, tgt.lam), pairs
    pairs = mixed_hom_pairs(src.word, tgt.word)
    return len(pairs), pairs


# -- subcommands --------------------------------------------------------------


def cmd_check(args) -> dict:
    pres = _load(args.file)
    return {
        "vertices": list(pres.quiver.vertices),
        "arrows": len(pres.quiver.arrows),
        "relations": [" ".join(r) for r in pres.relations],
        "nilpotency": pres.nilpotency,
        "admissible": check_admissible(pres).to_json(),
        "special_biserial": is_special_biserial(pres).to_json(),
    }


def cmd_bands(args) -> dict:
    pres = _load(args.file)
    if args.bricks:
        _require_sb(pres)
    rows = []
    for b in enumerate_bands(pres, args.max_len):
        row = {"band": str(b), "length": len(b)}
        if args.bricks:
            row["brick"] = is_band_brick(b)
        rows.append(row)
    return {"max_len": args.max_len, "count": len(rows), "bands": rows}


def cmd_brick(args) -> dict:
    pres = _load(args.file)
    _require_sb(pres)
    if args.string is not None:
        w = make_string(pres, args.string)
        pairs = string_hom_pairs(w, w)
        brick = is_string_brick(w)
        out = {"string": str(w), "brick": brick, "end_dim": len(pairs),
               "hom_pairs": [p.to_json() for p in pairs]}
        verified = ["combinatorial"]
        if args.oracle:
            if is_brick_oracle(pres, build_string_module(pres, w)) != brick:
                raise CheckFailed(f"oracle disagrees on brickness of string {w}")
            verified.append("oracle")
        out["verified_by"] = verified
        return out
    b = make_band(pres, args.band)
    pairs = band_endo_pairs(b)
    brick = is_band_brick(b)
    ts = top_socle(b)
    out = {"band": str(b), "canonical": str(canonical_band(b)), "length": len(b),
           "brick": brick, "end_dim": 1 + len(pairs),
           "endo_pairs": [p.to_json() for p in pairs],
           "top_socle": ts.to_json()}
    verified = ["combinatorial"]
    if args.oracle:
        if is_brick_oracle(pres, build_band_module(pres, b, 1, 1)) != brick:
            raise CheckFailed(f"oracle disagrees on brickness of band {b}")
        verified.append("oracle")
    out["verified_by"] = verified
    return out


def cmd_hom(args) -> dict:
    pres = _load(args.file)
    src, tgt = parse_module_spec(pres, args.source), parse_module_spec(pres, args.target)
    comb = _combinatorial_hom(src, tgt) if is_special_biserial(pres) else None
    out = {"source": src.to_json(), "target": tgt.to_json()}
    verified = []
    if comb is not None:
        dim, pairs = comb
        verified.append("combinatorial")
        out["hom_dim"] = dim
        out["graph_maps"] = [p.word for p in pairs]
    if comb is None or args.oracle:
        odim = hom_dim(pres, src.representation(pres), tgt.representation(pres))
        if comb is not None and odim != comb[0]:
            raise CheckFailed(f"oracle hom dimension {odim} differs from graph-map count {comb[0]}")
        out["hom_dim"] = odim
        verified.append("oracle")
    out["verified_by"] = verified
    return out


def cmd_tau_finite(args) -> dict:
    pres = _load(args.file)
    if not is_special_biserial(pres):
        if not args.advisory:
            _require_sb(pres)
        bound = default_band_bound(pres) if args.max_band_len is None else args.max_band_len
        b = advisory_brick_band(pres, bound)
        return {"verdict": "advisory", "special_biserial": False, "bound": bound,
                "brick_band": str(b) if b is not None else None,
                "implies": "tau-infinite" if b is not None else None,
                "verified_by": ["oracle"]}
    return decide_tau_finite_sb(pres, args.max_band_len, oracle=args.oracle).to_json()


def cmd_brauer(args) -> dict:
    g = parse_brauer_graph(_read(args.file))
    pres = check_presentation(g, bga_presentation(g))
    out = decide_tau_finite_bg(g).to_json()
    if args.cross_check:
        sb = decide_tau_finite_sb(pres)
        agrees = (sb.verdict == "tau-infinite") == (out["verdict"] == "tau-infinite")
        if not agrees:
            raise CheckFailed(f"band search says {sb.verdict}, cycle criterion says {out['verdict']}")
        out["band_search"] = sb.to_json()
    if args.emit_presentation:
        try:
            Path(args.emit_presentation).write_text(pres.to_text(), encoding="utf-8")
        except OSError as e:
            raise InvalidInput(f"cannot write {args.emit_presentation}: {e.strerror}") from None
        out["presentation"] = args.emit_presentation
    return out


def cmd_evidence(args) -> dict:
    pres = _load(args.file)
    _require_sb(pres)
    b = make_band(pres, args.band)
    out: dict = {"band": str(b)}
    if args.bt1 is not None:
        out["bt1"] = [m.to_json() for m in brick_family_bt1(b, args.bt1, oracle=args.oracle)]
    if args.bt2 is not None:
        lams = [parse_lambda(t) for t in args.bt2.split(",") if t.strip()]
        out["bt2"] = brick_family_bt2(b, lams)
    if args.torsion:
        lams = [parse_lambda(t) for t in args.torsion_lambdas.split(",") if t.strip()]
        out["torsion"] = torsion_witnesses(b, lams)
    return out


# -- output -------------------------------------------------------------------


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _is_scalar(v) -> bool:
    return v is None or isinstance(v, (str, int, float, bool))


def to_table(obj, indent: int = 0) -> list[str]:
    """Text rendering of a JSON-ready value."""
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if _is_scalar(v):
                lines.append(f"{pad}{k}: {_scalar(v)}")
            elif isinstance(v, list) and all(_is_scalar(x) for x in v):
                lines.append(f"{pad}{k}: {', '.join(_scalar(x) for x in v) if v else '-'}")
            else:
                lines.append(f"{pad}{k}:")
                lines += to_table(v, indent + 1)
        return lines
    if isinstance(obj, list):
        if obj and all(isinstance(x, dict) and all(_is_scalar(y) for y in x.values()) for x in obj):
            cols = list(dict.fromkeys(k for row in obj for k in row))
            cells = [[_scalar(row.get(c)) for c in cols] for row in obj]
            widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
            lines.append(pad + "  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
            for r in cells:
                lines.append(pad + "  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
            return lines
        for i, x in enumerate(obj):
            lines.append(f"{pad}[{i}]")
            lines += to_table(x, indent + 1)
        return lines
    return [pad + _scalar(obj)]


def render(obj: dict, fmt: str) -> str:
    if fmt == "table":
        return "\n".join(to_table(obj)) + "\n"
    return json.dumps(obj, indent=2) + "\n"


# -- parser -------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    p = _Parser(prog="bandbrick", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("check", parents=[common], help="validate a presentation")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("bands", parents=[common], help="enumerate canonical bands")
    s.add_argument("file")
    s.add_argument("--max-len", type=int, required=True)
    s.add_argument("--bricks", action="store_true", help="also report brickness")
    s.set_defaults(func=cmd_bands)

    s = sub.add_parser("brick", parents=[common], help="brick verdict for a band or string")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--band")
    g.add_argument("--string")
    s.add_argument("--oracle", action="store_true")
    s.set_defaults(func=cmd_brick)

    s = sub.add_parser("hom", parents=[common], help="hom dimension between two modules")
    s.add_argument("file")
    s.add_argument("--source", required=True, help="WORD or band:WORD:lambda:n")
    s.add_argument("--target", required=True, help="WORD or band:WORD:lambda:n")
    s.add_argument("--oracle", action="store_true")
    s.set_defaults(func=cmd_hom)

    s = sub.add_parser("tau-finite", parents=[common], help="tau-tilting finiteness by band search")
    s.add_argument("file")
    s.add_argument("--max-band-len", type=int)
    s.add_argument("--oracle", action="store_true")
    s.add_argument("--advisory", action="store_true",
                   help="for non special biserial input, search for a brick band with the oracle")
    s.set_defaults(func=cmd_tau_finite)

    s = sub.add_parser("brauer", parents=[common], help="decision for a Brauer graph algebra")
    s.add_argument("file")
    s.add_argument("--emit-presentation", metavar="PATH")
    s.add_argument("--cross-check", action="store_true",
                   help="also run the bounded band search on the presentation")
    s.set_defaults(func=cmd_brauer)

    s = sub.add_parser("evidence", parents=[common], help="brick families from a brick band")
    s.add_argument("file")
    s.add_argument("--band", required=True)
    s.add_argument("--bt1", type=int, metavar="K")
    s.add_argument("--bt2", metavar="LAMBDAS")
    s.add_argument("--torsion", action="store_true")
    s.add_argument("--torsion-lambdas", default="1,2")
    s.add_argument("--oracle", action="store_true")
    s.set_defaults(func=cmd_evidence)
    return p


def run(argv: Sequence[str]) -> CommandResult:
    out, err = io.StringIO(), io.StringIO()
    code = EXIT_OK
    try:
        with redirect_stdout(out), redirect_stderr(err):
            args = build_parser().parse_args(list(argv))
        if args.command is None:
            raise ParseError("missing command")
        out.write(render(args.func(args), args.format))
    except SystemExit as e:  # --help
        code = int(e.code or 0)
    except ParseError as e:
        code = EXIT_PARSE
        err.write(f"error: ParseError: {e}\n")
    except CheckFailed as e:
        code = EXIT_CHECK
        err.write(f"error: CheckFailed: {e}\n")
    except BandBrickError as e:
        code = EXIT_INVALID
        err.write(f"error: {type(e).__name__}: {e}\n")
    if code != EXIT_OK:
        return CommandResult(code, "", err.getvalue())
    return CommandResult(code, out.getvalue(), err.getvalue())


def main(argv: Optional[Sequence[str]] = None) -> int:
    result = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(result.stdout)
    sys.stderr.write(result.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
