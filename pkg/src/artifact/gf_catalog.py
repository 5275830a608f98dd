"""Registry of closed-form generating functions for 35 avoidance classes.

Every registered series is stored as a small expression tree over exact
series primitives (polynomials, the Catalan series, field operations,
square roots, composition, and shifts), not as hand-expanded
coefficients.  Evaluating a tree truncates at a requested order, so a
single wrong polynomial coefficient surfaces as an oracle mismatch.

Each case carries the main counting series for its pattern triple,
optional auxiliary series paired with the oracle filter that recounts
them, and optional cross-check builders that must reproduce the main
series through an independent mechanism.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Mapping

from .enumerate import (CountTable, FilterSpec, count_avoiders,
                        count_filtered)
from .perm_core import PatternSet
from .series import DEFAULT_ORDER, Series, catalan


class Expr:
    """Node of a series expression tree; evaluates to a Series."""

    def eval(self, order: int) -> Series:
        raise NotImplementedError

    def __add__(self, other):
        return Op("+", self, _wrap(other))

    def __radd__(self, other):
        return Op("+", _wrap(other), self)

    def __sub__(self, other):
        return Op("-", self, _wrap(other))

    def __rsub__(self, other):
        return Op("-", _wrap(other), self)

    def __mul__(self, other):
        return Op("*", self, _wrap(other))

    def __rmul__(self, other):
        return Op("*", _wrap(other), self)

    def __truediv__(self, other):
        return Op("/", self, _wrap(other))

    def __rtruediv__(self, other):
        return Op("/", _wrap(other), self)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 1:
            raise ValueError("exponent must be a positive integer")
        out = self
        for _ in range(e - 1):
            out = Op("*", out, self)
        return out


def _wrap(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly((Fraction(value),))
    raise TypeError(f"cannot use {value!r} in a series expression")


@dataclass(frozen=True)
class Poly(Expr):
    """Polynomial with ascending coefficients (c0, c1, ...)."""

    coeffs: tuple

    def eval(self, order: int) -> Series:
        return Series(self.coeffs, order)


@dataclass(frozen=True)
class Cat(Expr):
    """The Catalan series C with C = 1 + x C^2."""

    def eval(self, order: int) -> Series:
        return catalan(order)


@dataclass(frozen=True)
class Op(Expr):
    op: str
    left: Expr
    right: Expr

    def eval(self, order: int) -> Series:
        a = self.left.eval(order)
        b = self.right.eval(order)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if self.op == "/":
            return a / b
        raise ValueError(f"unknown operator {self.op!r}")


@dataclass(frozen=True)
class Sqrt(Expr):
    arg: Expr

    def eval(self, order: int) -> Series:
        return self.arg.eval(order).sqrt()


@dataclass(frozen=True)
class ShiftDown(Expr):
    """Division by x^k; the argument is evaluated k orders deeper."""

    arg: Expr
    k: int = 1

    def eval(self, order: int) -> Series:
        return self.arg.eval(order + self.k).shift_down(self.k)


@dataclass(frozen=True)
class Compose(Expr):
    """outer(inner); inner must have zero constant term."""

    outer: Expr
    inner: Expr

    def eval(self, order: int) -> Series:
        return self.outer.eval(order).compose(self.inner.eval(order))


@dataclass(frozen=True)
class EngineSeries(Expr):
    """Series produced by a named recurrence engine (lazy import)."""

    engine: str

    def eval(self, order: int) -> Series:
        from . import recurrences
        if self.engine == "fixed_point_242":
            return recurrences.case242_fixed_point(order)
        if self.engine == "binomial_sum_242":
            return Series([recurrences.case242_sum(n) for n in range(order)],
                          order)
        raise ValueError(f"unknown engine {self.engine!r}")


def P(*coeffs) -> Poly:
    return Poly(tuple(Fraction(c) for c in coeffs))


C = Cat()
X = P(0, 1)


@dataclass(frozen=True)
class Auxiliary:
    """A closed-form refinement plus the filter that recounts it."""

    expr: Expr
    filter: FilterSpec


@dataclass(frozen=True)
class CaseSpec:
    case_id: int
    patterns: PatternSet
    main: Expr
    auxiliaries: Mapping[str, Auxiliary] = None
    cross_checks: Mapping[str, Expr] = None

    def __post_init__(self):
        object.__setattr__(self, "auxiliaries", dict(self.auxiliaries or {}))
        object.__setattr__(self, "cross_checks", dict(self.cross_checks or {}))


def _aux(expr: Expr, filter_text: str) -> Auxiliary:
    return Auxiliary(expr, FilterSpec.parse(filter_text))


def build_registry() -> dict[int, CaseSpec]:
    """Fresh registry mapping case id to its specification."""
    reg: dict[int, CaseSpec] = {}

    def add(case_id, patterns, main, auxiliaries=None, cross_checks=None):
        reg[case_id] = CaseSpec(case_id, PatternSet.from_string(patterns),
                                main, auxiliaries, cross_checks)

    f77 = (P(1, -11, 53, -145, 248, -274, 192, -80, 17)
           / (P(1, -1) ** 6 * P(1, -2) ** 3))
    h77 = P(0, 0, 1, -4, 5) / P(1, -2) ** 3
    j77 = (P(0, 0, 0, 1, -4, 9, -11, 6, -2)
           / (P(1, -1) ** 5 * P(1, -2) ** 2))
    g2_77 = (P(0, 0, 1, -8, 29, -58, 66, -43, 15, -1)
             / (P(1, -2) ** 3 * P(1, -1) ** 5))
    add(77, "1243,2314,3412", f77, {
        "H": _aux(h77, "value_from_start:1==n-1"),
        "J": _aux(j77, "lr_max_count==2,value_from_start:1<=n-2"),
        "G2": _aux(g2_77, "lr_max_count==2"),
        "G3": _aux(P(0, 0, 0, 1) * P(1, -1) ** 2 / P(1, -2) ** 3,
                   "lr_max_count==3"),
    }, cross_checks={"G2_split": h77 + j77 - g2_77 + f77})

    add(90, "1243,2431,3412",
        P(1, -11, 51, -129, 195, -183, 104, -30, 3)
        / (P(1, -1) ** 4 * P(1, -2) * P(1, -3, 1) ** 2), {
            "H_sum": _aux(
                P(0, 0, 0, 1, -2) / P(1, -3, 1) ** 2,
                "lr_max_top_interval==1,lr_max_count>=2,last_is_max==0"),
        })

    f103 = (P(1, -9, 35, -77, 107, -97, 55, -17, 1)
            / (P(1, -1) ** 5 * P(1, -4, 5, -3)) * C)
    add(103, "1423,2341,3124", f103, {
        "G2": _aux((X * C - X) * f103, "lr_max_count==2"),
        "G3": _aux(P(0, 0, 0, 1) / P(1, -1) ** 5, "lr_max_count==3"),
    })

    f106 = (P(1, -2) * P(1, -6, 12, -9, 4)
            / (P(1, -1) ** 3 * P(1, -3) * P(1, -3, 1)))
    h106 = P(0, 0, 1) * (P(0, 0, 1) + P(1, -1) ** 3 * f106) / P(1, -1) ** 4
    j106 = P(0, 0, 1, -2) / (P(1, -1) * P(1, -3))
    add(106, "1342,2143,3412", f106, {
        "H": _aux(h106, "value_from_start:1==n-1"),
        "J": _aux(j106, "value_from_start:2==n"),
        "G2": _aux(h106 + j106 - P(0, 0, 1) / P(1, -1), "lr_max_count==2"),
    })

    add(118, "1234,1423,3412",
        P(1, -12, 64, -198, 393, -521, 463, -269, 95, -17)
        / (P(1, -1) ** 7 * P(1, -2) ** 3))

    add(130, "1342,3124,3412",
        P(1, -9, 32, -58, 58, -33, 8)
        / (P(1, -1) ** 4 * P(1, -2) * P(1, -4, 2)), {
            "H": _aux(P(0, 0, 1, -3, 1) / (P(1, -1) * P(1, -4, 2)),
                      "value_from_start:2==n"),
        })

    add(131, "1423,2134,2341",
        P(1, -4, 7, -6, 1, 2) / (P(1, -2) * P(1, -1) ** 3) * C
        - P(0, 1, -2, 1, -1, 2) / (P(1, -2) * P(1, -1) ** 4))

    add(133, "1342,2143,2314",
        P(1, -2) * P(1, -3, 1) / P(1, -6, 11, -7))

    f159 = (P(1, -11, 48, -104, 115, -61, 13)
            / (P(1, -1) * P(1, -2) * P(1, -3) * P(1, -3, 1) ** 2))
    add(159, "1243,1342,3412", f159, {
        "J": _aux(P(0, 0, 1, -2) / (P(1, -1) * P(1, -3)),
                  "value_from_start:2==n"),
        "G2": _aux(P(0, 0, 0, 1, -4, 3, 1)
                   / (P(1, -1) ** 2 * P(1, -2) * P(1, -3) * P(1, -3, 1))
                   + P(0, 0, 1) / P(1, -1) * f159,
                   "lr_max_count==2"),
    })

    f162 = (P(1, -7, 18, -21, 11)
            / (P(1, -2) * P(1, -6, 12, -11, 3)))
    add(162, "1423,2341,3412", f162, {
        "G2": _aux(P(0, 0, 0, 0, 0, 0, 1) / (P(1, -2) ** 2 * P(1, -1) ** 4)
                   + P(0, 0, 1, -3, 4, -1)
                   / (P(1, -2) * P(1, -1) ** 3) * f162,
                   "lr_max_count==2"),
    })

    g2_163 = (P(0, 1) * (P(1, -4, 7, -7, 4) * C - P(1, -4, 8, -9, 4))
              / (P(1, -1) ** 4 * P(1, -2)))
    add(163, "1342,2314,3412",
        (P(1, -3, 3) ** 2 * C - P(0, 1, -1) * P(1, -3, 5, -4))
        / (P(1, -1) ** 5 * P(1, -2)), {
            "G2": _aux(g2_163, "lr_max_count==2"),
        })

    add(164, "1432,2431,3214",
        (P(1, -1) ** 4 * P(1, -2) * C - P(0, 1, -4, 6, -5))
        / (P(1, -1) * P(1, -2) * P(1, -4, 5, -3)))

    add(165, "1342,2314,3421",
        (P(1, -2) * P(1, -1) ** 4 * C - P(0, 1, -4, 6, -5, 1))
        / (P(1, -1) ** 4 * P(1, -3, 1)))

    add(175, "1423,2341,3142",
        P(1, -6, 12, -11, 5) / P(1, -7, 17, -20, 12, -2))

    f176 = (ShiftDown(P(1, -1) ** 2 * P(1, -4, 6, -5, 1) * C
                      - P(1, -6, 14, -15, 8, -1), 1)
            / (P(1, -3, 1) * P(1, -1, 0, 1)))
    add(176, "1342,2431,3412", f176)

    # Assembled from the left-right-maxima decomposition: F = 1 - x + 2xF
    # + x(C-1)^2 + x^4 C^5 (C-1) + x^3 (F-1)/(1-2x) + x^3 C^4, solved for F.
    f178 = ((1 - X + X * (C - 1) ** 2 + P(0, 0, 0, 0, 1) * C ** 5 * (C - 1)
             - P(0, 0, 0, 1) / P(1, -2) + P(0, 0, 0, 1) * C ** 4)
            / (P(1, -2) - P(0, 0, 0, 1) / P(1, -2)))
    add(178, "1342,2314,2431", f178)

    f182 = ((1 + P(0, 0, 1, -1) * C ** 4)
            / (1 - P(0, 1, -2) * C ** 2))
    add(182, "2314,2431,3412", f182, {
        "H": _aux(X * C - X, "value_from_start:1==n-1"),
        "G2": _aux(X * C - X + P(0, 0, 1) * C * (f182 - 1)
                   + P(0, 0, 0, 1) * C ** 2 / P(1, -1) * (f182 - 1),
                   "lr_max_count==2"),
    })

    add(190, "1423,2314,3142",
        P(1, -2) * P(1, -3, 1) ** 2
        / (P(1, -1) * P(1, -8, 22, -24, 8, -1)))

    add(192, "1243,1342,2431",
        ShiftDown(P(1, -5, 9, -6) * (C - 1) - P(0, 0, 0, 1), 1)
        / (P(1, -2) * P(1, -1) ** 2))

    add(194, "1243,3124,4123",
        ShiftDown(P(1, -5, 9, -8, 4) * C - P(1, -5, 9, -6, 1), 1)
        / P(1, -2) ** 2)

    add(197, "2134,2413,3241",
        (P(1, -5, 9, -7, 1) + P(1, -5, 9, -9, 3) * Sqrt(P(1, -4)))
        / (P(1, -1) * (P(1, -6, 12, -11, 3)
                       + P(1, -4, 6, -5, 1) * Sqrt(P(1, -4)))))

    add(198, "1234,1423,2341",
        ShiftDown(P(1, -7, 18, -19, 6) * C - P(1, -6, 12, -8, 1), 2)
        / (P(1, -1) * P(1, -2)))

    add(199, "1243,1423,2341",
        (P(0, 1) * P(1, -2, 1) * P(-1, 2) * C + P(1, -5, 9, -7, 3))
        / ((P(0, 1) * C - P(1, -2, 1)) * P(1, -2, 1) * P(-1, 2)))

    add(204, "1243,1423,2314",
        (P(0, 1, -2, 2) * C - P(1, -3, 3))
        / (P(0, 1, -2, 2) * C - P(1, -1) * P(1, -3, 3)))

    add(208, "1234,1342,3124",
        (P(1, -2) * P(1, -6, 12, -10, 2) - P(0, 0, 1) * P(1, -2, 2) ** 2 * C)
        / P(1, -9, 30, -49, 38, -8, -4))

    f214 = (ShiftDown(P(1, -2) * (P(1, -5, 9, -6) * Sqrt(P(1, -4))
                                  - P(1, -9, 29, -38, 18)), 1)
            / (P(2) * P(1, -1) ** 2 * P(1, -7, 14, -9)))
    add(214, "1342,2341,3412", f214, {
        "G2": _aux(P(0, 0, 1) * f214 * C
                   + P(0, 0, 0, 1) * C ** 2 * (f214 - 1) / P(1, -2)
                   + P(0, 0, 0, 1) * C ** 2 / P(1, -2)
                   - P(0, 0, 0, 1) * C ** 2 / P(1, -1) ** 2
                   + P(0, 0, 0, 1) * C
                   / (P(1, -1) * (P(1, -1) - P(0, 1) * C)),
                   "lr_max_count==2"),
    })

    add(217, "1243,1342,4132",
        ShiftDown(P(1, -1) * P(1, -3, 1) * Sqrt(P(1, -4))
                  - P(1, -8, 20, -15, 4), 1)
        / (P(2) * P(1, -1) * P(1, -5, 4, -1)))

    add(219, "1342,2413,3412",
        1 + P(0, 1) * P(1, -1) ** 2 * P(1, -2)
        / (P(1, -3, 1) * P(1, -2, 2) - P(0, 1, -2) * P(1, -1) * C))

    add(220, "2314,2431,3142",
        1 + P(0, 1) * P(1, -1) ** 2 * P(1, -2)
        / (P(1, -3) * P(1, -1) ** 3 - P(0, 1, -2) * P(1, -1, 1) * (C - 1)))

    add(222, "1342,3412,3421",
        (P(2, -11, 13, -6) + P(0, 1, -1) * P(1, -6, 4) / Sqrt(P(1, -4)))
        / P(2, -12, 16, -8))

    add(223, "1243,1342,2413",
        ShiftDown(P(1, -2) * (P(1, -2) - Sqrt(P(1, -8, 20, -20, 4))), 1)
        / (P(2) * P(1, -4, 5, -1)))

    add(224, "1342,1423,4132",
        (P(2, -10, 9, -3) + P(0, 1) * P(1, -1) * P(2, -1) * Sqrt(P(1, -4)))
        / P(2, -10, 8, 0, -2))

    f226 = (ShiftDown(P(1, -3, 1)
                      - Sqrt(P(1, -7, 13, -8) * P(1, -3, 1)), 1)
            / (P(2) * P(1, -1) * P(1, -2)))
    k226 = P(1, -2) / P(1, -3, 1)
    add(226, "1342,2143,2413", f226, {
        "H_sum": _aux(
            X * (f226 - 1)
            * Compose(C, X + P(0, 0, 1) / P(1, -1) * (k226 - 1)),
            "lr_max_top_interval==1,lr_max_count>=2"),
    })

    add(232, "1234,1342,2341",
        ShiftDown(P(1, -4, 2) - P(1, -6, 9) * C, 1) / P(1, -4))

    f242 = EngineSeries("fixed_point_242")
    add(242, "2341,2431,3241", f242, {
        "G2": _aux(P(0, 0, 1) * f242 ** 3, "lr_max_count==2"),
        "G3": _aux(P(0, 0, 0, 1) * f242 ** 5, "lr_max_count==3"),
    }, cross_checks={"binomial_sum": EngineSeries("binomial_sum_242")})

    return reg


REGISTRY: dict[int, CaseSpec] = build_registry()

CASE_IDS = tuple(sorted(REGISTRY))


def case_for_patterns(t: PatternSet,
                      registry: Mapping[int, CaseSpec] | None = None
                      ) -> CaseSpec | None:
    registry = REGISTRY if registry is None else registry
    for spec in registry.values():
        if spec.patterns == t:
            return spec
    return None


def evaluate_case(case_id: int, order: int = DEFAULT_ORDER,
                  registry: Mapping[int, CaseSpec] | None = None) -> Series:
    registry = REGISTRY if registry is None else registry
    if case_id not in registry:
        raise KeyError(f"unknown case id: {case_id}")
    return registry[case_id].main.eval(order)


def evaluate_auxiliary(case_id: int, name: str, order: int = DEFAULT_ORDER,
                       registry: Mapping[int, CaseSpec] | None = None
                       ) -> Series:
    registry = REGISTRY if registry is None else registry
    aux = registry[case_id].auxiliaries[name]
    return aux.expr.eval(order)


def verify_case(case_id: int, n_max: int = 9,
                registry: Mapping[int, CaseSpec] | None = None) -> dict:
    """Check a case's series (and refinements) against the brute-force tree.

    Returns a JSON-ready report; failures are report rows, not errors.
    """
    registry = REGISTRY if registry is None else registry
    spec = registry[case_id]
    order = n_max + 1
    report = {
        "case_id": case_id,
        "patterns": str(spec.patterns),
        "n_max": n_max,
        "main": [],
        "auxiliaries": {},
        "cross_checks": {},
        "verdict": "pass",
    }

    def fail():
        report["verdict"] = "fail"

    oracle = count_avoiders(spec.patterns, n_max)
    try:
        got = evaluate_case(case_id, order, registry).integer_coefficients()
    except ValueError as exc:
        report["main"] = [{"error": f"non-integer coefficient: {exc}"}]
        fail()
        got = None
    if got is not None:
        for n in range(n_max + 1):
            ok = got[n] == oracle[n]
            report["main"].append({"n": n, "expected": str(oracle[n]),
                                   "got": str(got[n]), "ok": ok})
            if not ok:
                fail()

    for name, aux in spec.auxiliaries.items():
        rows = []
        expected = count_filtered(spec.patterns, n_max, aux.filter)
        series = aux.expr.eval(order)
        for n in sorted(expected.counts):
            coeff = series[n]
            ok = coeff.denominator == 1 and coeff.numerator == expected[n]
            rows.append({"n": n, "expected": str(expected[n]),
                         "got": str(coeff), "ok": ok})
            if not ok:
                fail()
        report["auxiliaries"][name] = {"filter": str(aux.filter),
                                       "rows": rows}

    for name, expr in spec.cross_checks.items():
        ok = expr.eval(order) == spec.main.eval(order)
        report["cross_checks"][name] = {"ok": ok}
        if not ok:
            fail()

    return report


def verify_all(n_max: int = 9,
               registry: Mapping[int, CaseSpec] | None = None) -> dict:
    registry = REGISTRY if registry is None else registry
    reports = [verify_case(case_id, n_max, registry)
               for case_id in sorted(registry)]
    verdict = "pass" if all(r["verdict"] == "pass" for r in reports) else "fail"
    return {"n_max": n_max, "verdict": verdict, "cases": reports}


def _corrupt_expr(expr: Expr, delta: Fraction) -> tuple[Expr, bool]:
    """Return a copy of expr with its first polynomial coefficient bumped."""
    if isinstance(expr, Poly):
        coeffs = list(expr.coeffs)
        index = 1 if len(coeffs) > 1 else 0
        coeffs[index] += delta
        return Poly(tuple(coeffs)), True
    for field_name in ("left", "right", "arg", "outer", "inner"):
        child = getattr(expr, field_name, None)
        if isinstance(child, Expr):
            new_child, done = _corrupt_expr(child, delta)
            if done:
                return replace(expr, **{field_name: new_child}), True
    return expr, False


def corrupted_registry(case_id: int, delta: int = 1,
                       registry: Mapping[int, CaseSpec] | None = None
                       ) -> dict[int, CaseSpec]:
    """Fresh registry with one polynomial coefficient of one case altered.

    Used as a negative control: verification must fail for exactly the
    altered case and pass for every other one.
    """
    registry = REGISTRY if registry is None else registry
    out = dict(registry)
    spec = out[case_id]
    new_main, done = _corrupt_expr(spec.main, Fraction(delta))
    if not done:
        raise ValueError(f"case {case_id} has no polynomial node to corrupt")
    out[case_id] = replace(spec, main=new_main)
    return out
