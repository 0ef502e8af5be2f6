"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .coefficients import TorusCoefficient, specialize_one
from .combinatorics import Degree, TildeIndex, enumerate_wp, i_set, normalize
from .formats import (
    ParseError, coefficient_to_json, dumps, element_to_json, parse_element, parse_index,
)
from .gromov_witten import (
    DEFAULT_CUTOFF, gamma_opposite, gamma_schubert, gw_divisor_closed,
    gw_divisor_qclassical, psi, three_point,
)
from .projective import project
from .qkring import (
    AlgorithmDepthError, NegativeDegreeError, QKElement, chevalley_mult,
    classical_divisor_mult, divisor_polynomial, dual_expand, lr_mult, mult,
)
from .suites import SUITES, run_suite

log = logging.getLogger("qkincidence")


class UsageError(Exception):
    pass


def _degree(text: str) -> Degree:
    try:
        return Degree.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _n(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--n expects an integer, got {text!r}") from None
    if n < 3:
        raise argparse.ArgumentTypeError(f"--n must be at least 3, got {n}")
    return n


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # The same flags are accepted before or after the subcommand; on the
    # subparsers they default to SUPPRESS so they only override when given.
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--n", type=_n, default=d(None), help="rank parameter (n >= 3)")
    parser.add_argument("--cutoff", type=_degree, default=d(None),
                        help="degree cutoff d1,d2 (psi: 3,3; verify: per-suite default)")
    parser.add_argument("--equivariant", action=argparse.BooleanOptionalAction,
                        default=d(None), help="keep torus weights where meaningful")
    parser.add_argument("--format", choices=("text", "json"), default=d("text"))
    parser.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qkincidence",
        description="Exact quantum K-theory of the flag variety Fl(1,n-1;n).")
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def cmd(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help, description=help)
        _global_flags(sp, suppress=True)
        return sp

    sp = cmd("mult", "quantum product of two elements")
    sp.add_argument("a")
    sp.add_argument("b")
    for name, help in (("chev", "quantum product with the divisor O^[k]"),
                       ("classical", "ordinary K-theory product with the divisor O^[k]")):
        sp = cmd(name, help)
        sp.add_argument("element")
        sp.add_argument("--k", type=int, choices=(1, 2), required=True)
    sp = cmd("lr", "non-equivariant product of two classes by the closed LR rule")
    sp.add_argument("u")
    sp.add_argument("v")
    sp = cmd("invariant", "non-equivariant 3-point invariant I_d(O^u, O^v, O_w)")
    sp.add_argument("u")
    sp.add_argument("v")
    sp.add_argument("w")
    sp.add_argument("--d", type=_degree, required=True)
    sp = cmd("gwdiv", "divisor invariant I(O^u, O^[k]; O_w) for an extended label w")
    sp.add_argument("u")
    sp.add_argument("w")
    sp.add_argument("--k", type=int, choices=(1, 2), required=True)
    sp.add_argument("--mode", choices=("closed", "qclassical"), default="closed")
    sp = cmd("nbhd", "curve neighbourhood of a (opposite) Schubert variety")
    sp.add_argument("u")
    sp.add_argument("--side", choices=("schubert", "opposite"), required=True)
    sp.add_argument("--d", type=_degree, required=True)
    sp = cmd("iset", "the set I(v)")
    sp.add_argument("v")
    sp = cmd("dual", "dual class of O_v as a signed sum of Schubert classes")
    sp.add_argument("v")
    sp = cmd("psi", "Psi of an element, truncated at --cutoff")
    sp.add_argument("element")
    sp = cmd("project", "image in QK(P^{n-1})")
    sp.add_argument("element")
    sp = cmd("poly", "the class O^u as a polynomial in the divisor operators M1, M2")
    sp.add_argument("u")
    cmd("table", "multiplication table of all Schubert classes")
    sp = cmd("verify", "run an exhaustive verification suite")
    sp.add_argument("suite", choices=list(SUITES), metavar="suite",
                    help="one of: " + ", ".join(SUITES))
    sp.add_argument("--out", type=Path, help="also write the report to this file")
    sp.add_argument("--timing", action="store_true", help="print elapsed time to stderr")
    return p


# -- helpers ------------------------------------------------------------------

def _wp_label(text: str, n: int) -> TildeIndex:
    w = parse_index(text, n)
    if not w.is_wp:
        raise UsageError(f"{w} is not in W^P (entries must lie in 1..{n})")
    return w


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(dumps(data))
    else:
        print(text)


def _emit_element(args, e: QKElement) -> None:
    _emit(args, str(e), element_to_json(e))


def _label_json(w: TildeIndex) -> list[int]:
    return [w.i, w.j]


# -- commands -----------------------------------------------------------------

def _run(args) -> int:
    n = args.n
    if n is None:
        raise UsageError("--n is required")
    eq = bool(args.equivariant)
    c = args.command

    if c == "mult":
        a, b = parse_element(args.a, n), parse_element(args.b, n)
        _emit_element(args, mult(a, b, eq))
    elif c in ("chev", "classical"):
        e = parse_element(args.element, n)
        if not eq:
            e = e.specialize()
        f = chevalley_mult if c == "chev" else classical_divisor_mult
        _emit_element(args, f(e, args.k, eq))
    elif c == "lr":
        _emit_element(args, lr_mult(parse_index(args.u, n), parse_index(args.v, n)))
    elif c == "invariant":
        u, v, w = (_wp_label(x, n) for x in (args.u, args.v, args.w))
        _degree_ok(args.d)
        val = three_point(u, v, w, args.d)
        _emit(args, str(val), {"value": str(val)})
    elif c == "gwdiv":
        u = _wp_label(args.u, n)
        w = parse_index(args.w, n)
        if args.mode == "closed":
            val = gw_divisor_closed(u, args.k, w)
        else:
            wb, d = normalize(w)
            if not d.is_effective:
                raise UsageError(f"{w} has negative degree; qclassical needs d(w) >= 0")
            val = gw_divisor_qclassical(QKElement.basis(u), args.k, wb, d)
        if not eq:
            val = TorusCoefficient.constant(n - 1, specialize_one(val))
        _emit(args, str(val), {"value": coefficient_to_json(val)})
    elif c == "nbhd":
        u = _wp_label(args.u, n)
        _degree_ok(args.d)
        f = gamma_schubert if args.side == "schubert" else gamma_opposite
        z = f(u, args.d)
        _emit(args, str(z), {"label": _label_json(z)})
    elif c == "iset":
        labels = sorted(i_set(_wp_label(args.v, n)), key=lambda x: (x.i, x.j))
        _emit(args, " ".join(str(x) for x in labels),
              {"labels": [_label_json(x) for x in labels]})
    elif c == "dual":
        terms = sorted(dual_expand(_wp_label(args.v, n)).items(),
                       key=lambda t: (t[0].i, t[0].j))
        text = ""
        for u, s in terms:
            body = f"O_{u}"
            text += (body if s > 0 else f"-{body}") if not text else (
                f" + {body}" if s > 0 else f" - {body}")
        _emit(args, text, {"terms": [{"label": _label_json(u), "sign": s} for u, s in terms]})
    elif c == "psi":
        cutoff = args.cutoff or DEFAULT_CUTOFF
        _degree_ok(cutoff)
        e = parse_element(args.element, n)
        s = psi(e, cutoff)
        data = element_to_json(s.element)
        data["cutoff"] = [cutoff.d1, cutoff.d2]
        _emit(args, str(s.element), data)
    elif c == "project":
        pe = project(parse_element(args.element, n))
        _emit(args, str(pe), {"n": n, "terms": [
            {"k": k, "coeff": coefficient_to_json(pe.terms[k])} for k in sorted(pe.terms)]})
    elif c == "poly":
        poly = divisor_polynomial(_wp_label(args.u, n))
        if not eq:
            poly = poly.specialize()
        _emit(args, str(poly), {"polynomial": str(poly)})
    elif c == "table":
        W = enumerate_wp(n)
        lines, rows = [], []
        for u in W:
            for v in W:
                prod = mult(QKElement.basis(u), QKElement.basis(v), eq)
                lines.append(f"O{u} * O{v} = {prod}")
                rows.append({"u": _label_json(u), "v": _label_json(v),
                             "product": element_to_json(prod)})
        _emit(args, "\n".join(lines), {"n": n, "equivariant": eq, "table": rows})
    elif c == "verify":
        report = run_suite(args.suite, n, args.cutoff, args.equivariant)
        text = report.render() if args.format == "text" else dumps(report.to_json()) + "\n"
        sys.stdout.write(text)
        if args.out:
            args.out.write_text(text)
        if args.timing:
            print(f"elapsed: {report.elapsed:.3f}s", file=sys.stderr)
        return 0 if report.passed or report.report_only else 1
    return 0


def _degree_ok(d: Degree) -> None:
    if not d.is_effective:
        raise UsageError(f"degree {d.d1},{d.d2} is not effective")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _run(args)
    except (UsageError, ParseError, ValueError) as exc:
        print(f"qkincidence: error: {exc}", file=sys.stderr)
        return 2
    except (AlgorithmDepthError, NegativeDegreeError, AssertionError) as exc:
        print(f"qkincidence: internal error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:
        log.debug("unexpected failure", exc_info=True)
        print(f"qkincidence: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
