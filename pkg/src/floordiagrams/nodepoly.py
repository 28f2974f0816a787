"""Template calculus for Severi degrees at fixed cogenus.

A template is what remains of a diagram (extended by one auxiliary top
vertex absorbing the sinks) after deleting its weight-1 unit-span edges.
Severi degrees decompose into ordered sequences of non-overlapping
templates with integer offsets; each template contributes a polynomial
counting the orderings of its chunk.  Iterating exact discrete summation
over the offsets yields the node polynomials, of degree twice the
cogenus, valid from the threshold onward.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

from .core import DiagramError


@dataclass(frozen=True)
class RatPolynomial:
    """Single-variable polynomial with exact rational coefficients."""

    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        """Degree with the convention that the zero polynomial has degree -1."""
        return len(self.coefficients) - 1

    def __add__(self, other: "RatPolynomial") -> "RatPolynomial":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPolynomial(tuple(out))

    def __sub__(self, other: "RatPolynomial") -> "RatPolynomial":
        return self + other.scale(-1)

    def __mul__(self, other: "RatPolynomial") -> "RatPolynomial":
        if not self.coefficients or not other.coefficients:
            return RatPolynomial(())
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return RatPolynomial(tuple(out))

    def scale(self, factor) -> "RatPolynomial":
        return RatPolynomial(tuple(Fraction(factor) * c for c in self.coefficients))

    def __call__(self, x) -> Fraction:
        value = Fraction(0)
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    def eval_int(self, x: int) -> int:
        value = self(x)
        if value.denominator != 1:
            raise AssertionError(f"expected integer value, got {value}")
        return int(value)

    def shift_argument(self, c) -> "RatPolynomial":
        """Return p(x + c)."""
        result = RatPolynomial(())
        xc = RatPolynomial((Fraction(c), Fraction(1)))
        power = RatPolynomial((Fraction(1),))
        for coeff in self.coefficients:
            result = result + power.scale(coeff)
            power = power * xc
        return result

    def format(self, var: str = "x") -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if not c:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*{var}" if c != 1 else var)
            else:
                terms.append(f"{c}*{var}^{i}" if c != 1 else f"{var}^{i}")
        return " + ".join(terms).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.format()

    @staticmethod
    def constant(value) -> "RatPolynomial":
        return RatPolynomial((Fraction(value),))

    @staticmethod
    def identity() -> "RatPolynomial":
        return RatPolynomial((Fraction(0), Fraction(1)))


def _binom_poly(shift: int, choose: int) -> RatPolynomial:
    """C(x + shift, choose) as a RatPolynomial in x."""
    poly = RatPolynomial.constant(Fraction(1, factorial(choose)))
    for t in range(choose):
        poly = poly * RatPolynomial((Fraction(shift - t), Fraction(1)))
    return poly


def to_binomial_basis(p: RatPolynomial) -> list[Fraction]:
    """Coefficients b with p(k) = sum b_m C(k, m), via forward differences."""
    values = [p(i) for i in range(p.degree + 1 if p.degree >= 0 else 1)]
    out = []
    while values:
        out.append(values[0])
        values = [values[i + 1] - values[i] for i in range(len(values) - 1)]
    return out


def discrete_sum(p: RatPolynomial, a: int, shift: int) -> RatPolynomial:
    """q with q(n) = sum_{k=a}^{n-shift} p(k) for all n >= a + shift.

    Works in the binomial-coefficient basis: partial sums of C(k, m) shift
    the lower index (hockey stick), then the argument is shifted back.
    The empty sum at n = a + shift - 1 evaluates to zero.
    """
    basis = to_binomial_basis(p)
    # S(t) = sum_{k=0}^{t} p(k) = sum_m b_m C(t+1, m+1)
    s_poly = RatPolynomial(())
    for m, b in enumerate(basis):
        if b:
            s_poly = s_poly + _binom_poly(1, m + 1).scale(b)
    q = s_poly.shift_argument(-shift) - RatPolynomial.constant(s_poly(a - 1))
    return q


@dataclass(frozen=True)
class Template:
    """Weighted edge collection over vertices v_0 < ... < v_ell with no
    weight-1 unit-span edges and every interior vertex straddled."""

    edges: tuple[tuple[int, int, int], ...]  # (i, j, weight) with i < j

    def __post_init__(self):
        edges = tuple(sorted(tuple(int(x) for x in e) for e in self.edges))
        object.__setattr__(self, "edges", edges)
        if not edges:
            raise DiagramError("a template needs at least one edge")
        for i, j, w in edges:
            if i >= j:
                raise DiagramError(f"template edge ({i},{j},{w}) must go forward")
            if w < 1:
                raise DiagramError(f"template edge ({i},{j},{w}) needs positive weight")
            if j - i == 1 and w == 1:
                raise DiagramError("templates contain no weight-1 unit-span edges")
        if min(i for i, _, _ in edges) != 0:
            raise DiagramError("template vertices must start at v_0")
        ell = max(j for _, j, _ in edges)
        for mid in range(1, ell):
            if not any(i < mid < j for i, j, _ in edges):
                raise DiagramError(f"no template edge straddles vertex v_{mid}")

    @property
    def length(self) -> int:
        return max(j for _, j, _ in self.edges)

    @property
    def cogenus(self) -> int:
        return sum((j - i) * w - 1 for i, j, w in self.edges)

    @property
    def multiplicity(self) -> int:
        return prod(w * w for _, _, w in self.edges)

    @property
    def epsilon(self) -> int:
        ell = self.length
        return 1 if all(w == 1 for _, j, w in self.edges if j == ell) else 0

    @property
    def kappa(self) -> tuple[int, ...]:
        ell = self.length
        return tuple(
            sum(w for i, j, w in self.edges if i < g <= j) for g in range(1, ell + 1)
        )

    @property
    def k_min(self) -> int:
        return max(k - g for g, k in enumerate(self.kappa))

    def stats(self) -> tuple[int, int, int, tuple[int, ...], int]:
        return (self.length, self.multiplicity, self.epsilon, self.kappa, self.k_min)


@lru_cache(maxsize=None)
def enumerate_templates(delta: int) -> tuple[Template, ...]:
    """All templates of cogenus exactly delta, in canonical order."""
    if delta < 0:
        raise DiagramError(f"cogenus must be nonnegative, got {delta}")
    if delta == 0:
        return ()
    span_cap = delta + 1
    candidates = []
    for i in range(0, span_cap):
        for j in range(i + 1, span_cap + 1):
            span = j - i
            for w in range(1, delta + 1 + 1):
                cost = span * w - 1
                if 1 <= cost <= delta:
                    candidates.append(((i, j, w), cost))
    candidates.sort()
    found: set[tuple] = set()

    def rec(idx: int, left: int, acc: list):
        if left == 0:
            try:
                found.add(Template(tuple(acc)).edges)
            except DiagramError:
                pass
            return
        for pos in range(idx, len(candidates)):
            edge, cost = candidates[pos]
            if cost <= left:
                acc.append(edge)
                rec(pos, left - cost, acc)
                acc.pop()

    rec(0, delta, [])
    templates = [Template(e) for e in found]
    templates.sort(key=lambda t: (t.length, t.edges))
    return tuple(templates)


@lru_cache(maxsize=None)
def extension_polynomial(template: Template) -> RatPolynomial:
    """P(template, k): orderings of the template chunk with offset k.

    The chunk places k+g-1-kappa_g short-edge midpoints in gap g; template
    edge midpoints are distributed over the gaps they span, ordered within
    gaps, and shuffled against the short midpoints via binomials.  Parallel
    equal-weight template edges are interchangeable, so the raw sum is
    divided by the product of their factorials.
    """
    ell = template.length
    kappa = template.kappa
    mids = list(range(len(template.edges)))
    windows = [(i + 1, j) for i, j, _ in template.edges]

    total = RatPolynomial(())
    assignment: list[int] = []

    def place(idx: int):
        nonlocal total
        if idx == len(mids):
            poly = RatPolynomial.constant(1)
            for g in range(1, ell + 1):
                b = assignment.count(g)
                if b:
                    # b! * C(s_g + b, b) with s_g = k + g - 1 - kappa_g
                    for t in range(1, b + 1):
                        poly = poly * RatPolynomial(
                            (Fraction(g - 1 - kappa[g - 1] + t), Fraction(1))
                        )
            total = total + poly
            return
        lo, hi = windows[idx]
        for g in range(lo, hi + 1):
            assignment.append(g)
            place(idx + 1)
            assignment.pop()

    place(0)
    sym = 1
    seen: dict = {}
    for e in template.edges:
        seen[e] = seen.get(e, 0) + 1
    for cnt in seen.values():
        sym *= factorial(cnt)
    return total.scale(Fraction(1, sym))


def _sequences(delta: int):
    """Ordered tuples of templates with cogenera summing to delta."""

    def rec(left: int):
        if left == 0:
            yield ()
            return
        for first in range(1, left + 1):
            for head in enumerate_templates(first):
                for tail in rec(left - first):
                    yield (head, *tail)

    yield from rec(delta)


def severi_numeric(d: int, delta: int) -> int:
    """Severi degree via the template master sum with explicit offsets."""
    if d < 1 or delta < 1:
        raise DiagramError(f"need d >= 1 and delta >= 1, got d={d}, delta={delta}")
    total = 0
    for seq in _sequences(delta):
        polys = [extension_polynomial(t) for t in seq]
        mu = prod(t.multiplicity for t in seq)
        m = len(seq)

        def offsets(i: int, k_floor: int, acc: int):
            nonlocal total
            if i == m:
                total += mu * acc
                return
            t = seq[i]
            lo = max(t.k_min, k_floor)
            if i == m - 1:
                hi = d + t.epsilon - t.length
            else:
                # leave room for the remaining templates
                room = sum(s.length for s in seq[i + 1 :])
                hi = d + seq[-1].epsilon - t.length - room
            for k in range(lo, hi + 1):
                value = polys[i].eval_int(k)
                if value:
                    offsets(i + 1, k + t.length, acc * value)

        offsets(0, 1, 1)
    return total


def node_polynomial(delta: int) -> tuple[RatPolynomial, int]:
    """Symbolic Severi-degree polynomial in d and its validity threshold.

    Iterated discrete summation over template-sequence offsets; per the
    polynomiality theorem the returned threshold is twice the cogenus,
    and the internally tracked threshold is asserted not to exceed it.
    """
    if delta < 0:
        raise DiagramError(f"cogenus must be nonnegative, got {delta}")
    if delta == 0:
        return RatPolynomial.constant(1), 0
    total = RatPolynomial(())
    worst = 0
    for seq in _sequences(delta):
        poly = RatPolynomial.constant(1)
        threshold = None
        for t in seq:
            summand = extension_polynomial(t) * poly
            a = t.k_min if threshold is None else max(t.k_min, threshold)
            poly = discrete_sum(summand, a, t.length)
            threshold = a + t.length - 1
        eps = seq[-1].epsilon
        contribution = poly.shift_argument(eps).scale(
            prod(t.multiplicity for t in seq)
        )
        total = total + contribution
        worst = max(worst, threshold - eps)
    if worst > 2 * delta:
        raise AssertionError(
            f"validity threshold {worst} exceeds 2*delta = {2 * delta}"
        )
    return total, 2 * delta


def aj_polynomials(delta_max: int) -> list[RatPolynomial]:
    """Quadratic-looking coefficients of the log of the node-polynomial series.

    A_j(d) = j * [t^j] log(sum_delta N_delta(d) t^delta), exact in Q[d].
    """
    if delta_max < 1:
        raise DiagramError(f"need delta_max >= 1, got {delta_max}")
    series = [node_polynomial(delta)[0] for delta in range(delta_max + 1)]
    logs: list[RatPolynomial] = []
    for j in range(1, delta_max + 1):
        acc = series[j].scale(j)
        for i in range(1, j):
            acc = acc - logs[i - 1].scale(i) * series[j - i]
        logs.append(acc.scale(Fraction(1, j)))
    return [logs[j - 1].scale(j) for j in range(1, delta_max + 1)]


def exp_series(aj: list[RatPolynomial]) -> list[RatPolynomial]:
    """Rebuild the node-polynomial series from A_j data (round-trip check).

    With L_j = A_j / j, the series F = exp(sum L_j t^j) satisfies
    j F_j = sum_{i=1}^{j} i L_i F_{j-i}.
    """
    n = len(aj)
    ls = [aj[j].scale(Fraction(1, j + 1)) for j in range(n)]
    out = [RatPolynomial.constant(1)]
    for j in range(1, n + 1):
        acc = RatPolynomial(())
        for i in range(1, j + 1):
            acc = acc + ls[i - 1].scale(i) * out[j - i]
        out.append(acc.scale(Fraction(1, j)))
    return out
