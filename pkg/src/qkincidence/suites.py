"""
Exhaustive verification suites.

Each suite sweeps every relevant tuple of labels for one value of n and
compares two independent computations of the same quantity.  Sweeps are
deterministic: labels are visited in :func:`enumerate_wp` order, so the
rendered report for a given (suite, n, cutoff, mode) is byte-for-byte stable.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

from .coefficients import NotInPositivityCone, to_positivity_basis
from .combinatorics import (
    Degree, TildeIndex, bar, bruhat_leq, chi, effective_degrees, enumerate_wp,
    i_set, length, q_shift,
)
from .gromov_witten import (
    _three_point_from_series, gw_divisor_closed, gw_divisor_qclassical,
    odot_divisor, psi, psi_inverse, q_degree_set, q_interval_check,
)
from .oracle import PermutationOracle, sn_bruhat_leq
from .projective import ProjElement, proj_mult, project
from .qkring import QKElement, chevalley_mult, lr_mult, mult, phi_map

__all__ = ["SUITES", "REPORT_ONLY", "VerificationReport", "run_suite"]


@dataclass
class VerificationReport:
    suite: str
    n: int
    cutoff: Degree | None
    mode: str
    cases_run: int = 0
    failures: list[tuple[str, str, str]] = field(default_factory=list)
    observations: list[str] = field(default_factory=list)
    report_only: bool = False
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, inputs: str, expected, actual) -> bool:
        self.cases_run += 1
        if expected == actual:
            return True
        self.failures.append((inputs, str(expected), str(actual)))
        return False

    def _cutoff_text(self) -> str:
        return "-" if self.cutoff is None else f"{self.cutoff.d1},{self.cutoff.d2}"

    def render(self) -> str:
        """Text form; excludes the elapsed time so that it is reproducible."""
        status = "PASS" if self.passed else "FAIL"
        if self.report_only:
            status += " (report only)"
        lines = [
            f"suite: {self.suite}",
            f"n: {self.n}",
            f"cutoff: {self._cutoff_text()}",
            f"mode: {self.mode}",
            f"cases: {self.cases_run}",
            f"result: {status}",
        ]
        for inputs, expected, actual in self.failures:
            lines.append(f"FAIL {inputs}: expected {expected}; got {actual}")
        lines.extend(f"note: {obs}" for obs in self.observations)
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "cutoff": None if self.cutoff is None else [self.cutoff.d1, self.cutoff.d2],
            "mode": self.mode,
            "cases_run": self.cases_run,
            "passed": self.passed,
            "report_only": self.report_only,
            "failures": [{"inputs": a, "expected": b, "actual": c}
                         for a, b, c in self.failures],
            "observations": list(self.observations),
        }


def _basis(u: TildeIndex) -> QKElement:
    return QKElement.basis(u)


# -- suite bodies ---------------------------------------------------------------

def _associativity(r: VerificationReport, equivariant: bool) -> None:
    W = enumerate_wp(r.n)
    B = {u: _basis(u) for u in W}
    for u in W:
        for v in W:
            uv = mult(B[u], B[v], equivariant)
            for w in W:
                r.check(f"u={u} v={v} w={w}",
                        mult(uv, B[w], equivariant),
                        mult(B[u], mult(B[v], B[w], equivariant), equivariant))


def _lr_vs_algorithm(r: VerificationReport, equivariant: bool) -> None:
    W = enumerate_wp(r.n)
    for u in W:
        for v in W:
            r.check(f"u={u} v={v}", lr_mult(u, v),
                    mult(_basis(u), _basis(v), equivariant).specialize())


def _sign_positive(c) -> str | None:
    """None if c lies in N[z_r - 1], otherwise a short reason."""
    try:
        p = to_positivity_basis(c)
    except NotInPositivityCone:
        return "negative exponent"
    return None if p.is_nonnegative() else f"negative coefficient in {p.format('y')}"


def _chevalley_positivity(r: VerificationReport, equivariant: bool) -> None:
    for u in enumerate_wp(r.n):
        for k in (1, 2):
            for w, c in chevalley_mult(_basis(u), k).sorted_terms():
                sign = (-1) ** ((length(u) + 1 + length(w)) % 2)
                r.check(f"u={u} k={k} w={w} N={c}", None, _sign_positive(c * sign))


def _lr_positivity(r: VerificationReport, equivariant: bool) -> None:
    W = enumerate_wp(r.n)
    for u in W:
        for v in W:
            for w, c in lr_mult(u, v).sorted_terms():
                s = (-1) ** ((length(u) + length(v) + length(w)) % 2) * c.constant_value()
                r.check(f"u={u} v={v} w={w}", True, s >= 0)


def _phi_symmetry(r: VerificationReport, equivariant: bool) -> None:
    for u in enumerate_wp(r.n):
        e = _basis(u)
        r.check(f"u={u} k=1", chevalley_mult(phi_map(e), 2), phi_map(chevalley_mult(e, 1)))
        r.check(f"u={u} k=2", chevalley_mult(phi_map(e), 1), phi_map(chevalley_mult(e, 2)))


def _quantum_classical(r: VerificationReport, equivariant: bool) -> None:
    W = enumerate_wp(r.n)
    for u in W:
        e = _basis(u)
        for k in (1, 2):
            for d in effective_degrees(r.cutoff):
                for v in W:
                    w = q_shift(v, d)
                    r.check(f"u={u} k={k} w={w}", gw_divisor_closed(u, k, w),
                            gw_divisor_qclassical(e, k, v, d))


def _psi_roundtrip(r: VerificationReport, equivariant: bool) -> None:
    for d in effective_degrees(r.cutoff):
        for v in enumerate_wp(r.n):
            u = q_shift(v, d)
            e = _basis(u)
            s = psi(e, r.cutoff)
            lowest = s.element.truncate(d)
            r.cases_run += 1
            if lowest != e:
                r.failures.append((f"u={u} (unitriangular)", str(e), str(lowest)))
            r.check(f"u={u}", e, psi_inverse(s))


def _odot_check(r: VerificationReport, equivariant: bool) -> None:
    for u in enumerate_wp(r.n):
        for k in (1, 2):
            r.check(f"u={u} k={k}", psi(chevalley_mult(_basis(u), k), r.cutoff).element,
                    odot_divisor(u, k, r.cutoff).element)


def _genus_zero(r: VerificationReport, equivariant: bool) -> None:
    W = enumerate_wp(r.n)
    degrees = list(effective_degrees(r.cutoff))
    values = Counter()
    for u in W:
        for v in W:
            series = psi(lr_mult(u, v), r.cutoff).element
            for w in W:
                for d in degrees:
                    val = _three_point_from_series(series, w, d)
                    values[val] += 1
                    r.check(f"u={u} v={v} w={w} d={d.d1},{d.d2}", True, val in (0, 1))
    r.observations.append(
        "values: " + ", ".join(f"{k}: {values[k]}" for k in sorted(values)))


def _q_interval(r: VerificationReport, equivariant: bool) -> None:
    W = enumerate_wp(r.n)
    shapes: Counter = Counter()
    examples: dict = {}
    for u in W:
        for v in W:
            degs = q_degree_set(u, v)
            lo = Degree(min(d.d1 for d in degs), min(d.d2 for d in degs))
            shape = tuple((d.d1 - lo.d1, d.d2 - lo.d2) for d in degs)
            shapes[shape] += 1
            examples.setdefault(shape, (u, v, degs))
            r.check(f"u={u} v={v} degrees={[tuple(d) for d in degs]}",
                    True, q_interval_check(u, v))
    for shape in sorted(shapes):
        u, v, degs = examples[shape]
        r.observations.append(
            f"shape {list(shape)}: {shapes[shape]} pairs, e.g. u={u} v={v} "
            f"degrees {[tuple(d) for d in degs]}")


def _projection_hom(r: VerificationReport, equivariant: bool) -> None:
    n = r.n
    W = enumerate_wp(n)
    for u in W:
        for v in W:
            r.check(f"u={u} v={v}", proj_mult(project(_basis(u)), project(_basis(v))),
                    project(lr_mult(u, v)))
    hyper = ProjElement.basis(1, n)
    for u in W:
        e = _basis(u)
        r.check(f"u={u} (divisor, equivariant)",
                proj_mult(project(e), hyper, equivariant=True),
                project(chevalley_mult(e, 1)))
    for a in range(2 * n):
        for b in range(2 * n):
            r.check(f"a={a} b={b}", ProjElement.basis(a + b, n),
                    proj_mult(ProjElement.basis(a, n), ProjElement.basis(b, n)))


def _iset_oracle(r: VerificationReport, equivariant: bool) -> None:
    oracle = PermutationOracle(r.n)
    for v in enumerate_wp(r.n):
        r.check(f"v={v}", _label_set(oracle.i_set(v)), _label_set(i_set(v)))


def _label_set(labels) -> str:
    return "{" + ",".join(str(x) for x in sorted(labels, key=lambda x: (x.i, x.j))) + "}"


def _bruhat_oracle(r: VerificationReport, equivariant: bool) -> None:
    oracle = PermutationOracle(r.n)
    W = enumerate_wp(r.n)
    for u in W:
        for v in W:
            r.check(f"u={u} v={v}",
                    sn_bruhat_leq(oracle, oracle.permutation(u), oracle.permutation(v)),
                    bruhat_leq(u, v))


def _lemma_chi(r: VerificationReport, equivariant: bool) -> None:
    n = r.n
    for w in enumerate_wp(n):
        a, b = w.i, w.j
        if (a + 1 - b) % n:
            holds = (-n < a - b - n * chi(a > b) < -1
                     and bar(a + 1, n) - n * chi(bar(a + 1, n) > b) == a + 1 - n * chi(a > b))
        else:
            a1, a2, b1 = bar(a + 1, n), bar(a + 2, n), bar(b - 1, n)
            holds = (a + 1 - b == n * chi(a > b)
                     and a1 - b1 + n - 1 == n * chi(a1 > b1)
                     and a2 - b + n - 1 == n * chi(a2 > b)
                     and a2 - b1 + n - 2 == n * chi(a2 > b1))
        r.check(f"[a,b]={w}", True, holds)


def _positivity_conjecture(r: VerificationReport, equivariant: bool) -> None:
    # report-only: violations become observations, never failures
    W = enumerate_wp(r.n)
    violations = []
    for u in W:
        for v in W:
            for w, c in mult(_basis(u), _basis(v)).sorted_terms():
                r.cases_run += 1
                sign = (-1) ** ((length(u) + length(v) + length(w)) % 2)
                reason = _sign_positive(c * sign)
                if reason is not None:
                    violations.append(f"u={u} v={v} w={w} N={c}: {reason}")
    r.observations.append(f"violations: {len(violations)} of {r.cases_run} coefficients")
    r.observations.extend(violations)


_Suite = Callable[[VerificationReport, bool], None]

# name -> (body, uses a cutoff, default cutoff)
SUITES: dict[str, tuple[_Suite, bool, Degree | None]] = {
    "associativity": (_associativity, False, None),
    "lr-vs-algorithm": (_lr_vs_algorithm, False, None),
    "chevalley-positivity": (_chevalley_positivity, False, None),
    "lr-positivity": (_lr_positivity, False, None),
    "phi-symmetry": (_phi_symmetry, False, None),
    "quantum-classical": (_quantum_classical, True, Degree(2, 2)),
    "psi-roundtrip": (_psi_roundtrip, True, Degree(3, 3)),
    "odot-check": (_odot_check, True, Degree(3, 3)),
    "genus-zero": (_genus_zero, True, Degree(3, 3)),
    "q-interval": (_q_interval, False, None),
    "projection-hom": (_projection_hom, False, None),
    "iset-oracle": (_iset_oracle, False, None),
    "bruhat-oracle": (_bruhat_oracle, False, None),
    "lemma-chi": (_lemma_chi, False, None),
    "equivariant-positivity-conjecture": (_positivity_conjecture, False, None),
}

REPORT_ONLY = frozenset({"equivariant-positivity-conjecture"})

# suites whose comparison can run with or without torus weights
_MODE_DEPENDENT = frozenset({"associativity", "lr-vs-algorithm"})


def _mode(name: str, n: int, equivariant: bool | None) -> tuple[str, bool]:
    if name in _MODE_DEPENDENT:
        if equivariant is None:
            equivariant = name != "associativity" or n <= 4
        return ("equivariant" if equivariant else "non-equivariant"), equivariant
    fixed = {
        "chevalley-positivity": "equivariant",
        "phi-symmetry": "equivariant",
        "quantum-classical": "equivariant",
        "psi-roundtrip": "equivariant",
        "odot-check": "equivariant",
        "equivariant-positivity-conjecture": "equivariant",
        "projection-hom": "mixed",
    }.get(name, "non-equivariant")
    return fixed, fixed == "equivariant"


def run_suite(name: str, n: int, cutoff: Degree | None = None,
              equivariant: bool | None = None) -> VerificationReport:
    """Run one suite exhaustively.

    ``cutoff`` defaults per suite and is ignored by suites that do not use
    one; ``equivariant`` only affects associativity (default: equivariant
    for n <= 4) and lr-vs-algorithm (default: equivariant).

    >>> r = run_suite("iset-oracle", 3)
    >>> r.passed, r.cases_run
    (True, 6)
    """
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if n < 3:
        raise ValueError(f"rank parameter n must be >= 3, got {n}")
    body, uses_cutoff, default_cutoff = SUITES[name]
    if uses_cutoff:
        cutoff = default_cutoff if cutoff is None else cutoff
        if not cutoff.is_effective:
            raise ValueError(f"cutoff {tuple(cutoff)} is not effective")
    else:
        cutoff = None
    mode, eq = _mode(name, n, equivariant)
    report = VerificationReport(name, n, cutoff, mode, report_only=name in REPORT_ONLY)
    start = time.perf_counter()
    body(report, eq)
    report.elapsed = time.perf_counter() - start
    return report
