"""Counting markings of labeled floor diagrams.

A marking decorates a diagram with sink vertices (one per unit of unused
divergence budget, weighted by the partition rho), optional tangency
vertices fed by single edges whose weights form lambda, and a midpoint on
every original edge, then linearly orders everything compatibly with the
floor chain.  Markings are counted modulo automorphisms that fix the
floors, which on this structure means: permutations of equal-weight sinks
at the same floor and of midpoints of parallel equal-weight edges.

Two independent ordering counters are provided: a polynomial-time DP over
the gaps of the floor chain (the production path) and a one-element-at-a-
time sequential DP (the safety net), plus a fully explicit brute force
that enumerates decorated graphs, orders, and automorphism orbits.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, prod

from .core import DiagramError, FloorDiagram, Partition

BRUTE_FORCE_LIMIT = 14


@dataclass(frozen=True)
class Distribution:
    """Placement of the new edges of a (lambda, rho)-marking.

    lambda_sources[i] is the floor emitting the single weight-lambda_i edge
    to the i-th tangency vertex; rho_sinks[v-1] is the sorted multiset of
    sink weights hanging from floor v.
    """

    lambda_sources: tuple[int, ...]
    rho_sinks: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class MarkingPoset:
    """Derived ordered structure whose constrained linear orders are counted.

    Element inventory: floors 1..d (pinned in order), one midpoint per
    original edge, sinks per the distribution, and lambda vertices pinned
    to the top positions.  ``symmetry`` is the order of the automorphism
    group fixing the floors.
    """

    d: int
    midpoints: tuple[tuple[int, int, int, int], ...]  # (src, tgt, weight, copy)
    sinks: tuple[tuple[int, int, int], ...]  # (floor, weight, copy)
    lambda_vertices: tuple[tuple[int, int, int], ...]  # (index, source floor, weight)
    symmetry: int

    @property
    def element_count(self) -> int:
        return self.d + len(self.midpoints) + len(self.sinks) + len(self.lambda_vertices)

    def windows(self) -> tuple[tuple[int, int], ...]:
        """Admissible gap interval for each non-floor, non-lambda element.

        Gap j sits between floor j and floor j+1 (gap d is after floor d).
        A midpoint of edge (s, t) may occupy gaps s..t-1; a sink of floor v
        may occupy gaps v..d.
        """
        wins = [(s, t - 1) for s, t, _, _ in self.midpoints]
        wins += [(v, self.d) for v, _, _ in self.sinks]
        return tuple(sorted(wins))

    def element_labels(self) -> tuple[str, ...]:
        labels = [f"v{v}" for v in range(1, self.d + 1)]
        labels += [f"e{s}-{t}w{w}#{c}" for s, t, w, c in self.midpoints]
        labels += [f"s{v}w{w}#{c}" for v, w, c in self.sinks]
        labels += [f"L{i}" for i, _, _ in self.lambda_vertices]
        return tuple(labels)


def _budgets(diag: FloorDiagram) -> list[int]:
    return [1 - diag.divergence(v) for v in range(1, diag.d + 1)]


def enumerate_distributions(diag: FloorDiagram, lam: Partition, rho: Partition):
    """Yield every distribution of new edges, each exactly once.

    Sink placements are multisets per floor; the assignment of lambda
    indices to source floors is ordered (feeding a different tangency
    vertex is a different distribution).  Emission order is lexicographic
    on (lambda_sources, per-floor sink multisets).
    """
    d = diag.d
    if lam.size + rho.size != d:
        raise DiagramError(
            f"|lambda| + |rho| must equal d: {lam.size} + {rho.size} != {d}"
        )
    budgets = _budgets(diag)

    def assign_lambda(i: int, remaining: list[int], chosen: list[int]):
        if i == lam.length:
            yield tuple(chosen), tuple(remaining)
            return
        for v in range(1, d + 1):
            if remaining[v - 1] >= lam.parts[i]:
                remaining[v - 1] -= lam.parts[i]
                chosen.append(v)
                yield from assign_lambda(i + 1, remaining, chosen)
                chosen.pop()
                remaining[v - 1] += lam.parts[i]

    def sink_splits(v: int, pool: Counter, residual: tuple[int, ...], acc: list):
        if v > d:
            if not +pool:
                yield tuple(acc)
            return
        need = residual[v - 1]
        parts = sorted(+pool)

        def pick(idx: int, left: int, take: list[int]):
            if left == 0:
                for p in take:
                    pool[p] -= 1
                acc.append(tuple(sorted(take)))
                yield from sink_splits(v + 1, pool, residual, acc)
                acc.pop()
                for p in take:
                    pool[p] += 1
                return
            if idx == len(parts) or parts[idx] > left:
                return
            p = parts[idx]
            avail = pool[p] - sum(1 for q in take if q == p)
            if avail > 0:
                take.append(p)
                yield from pick(idx, left - p, take)
                take.pop()
            yield from pick(idx + 1, left, take)

        yield from pick(0, need, [])

    for sources, residual in assign_lambda(0, list(budgets), []):
        pool = Counter(rho.parts)
        for sinks in sink_splits(1, pool, residual, []):
            yield Distribution(sources, sinks)


def build_poset(diag: FloorDiagram, dist: Distribution, lam: Partition) -> MarkingPoset:
    """Assemble the marking poset for one distribution."""
    mid_counts: Counter = Counter()
    midpoints = []
    for s, t, w in diag.edges:
        midpoints.append((s, t, w, mid_counts[(s, t, w)]))
        mid_counts[(s, t, w)] += 1
    sink_counts: Counter = Counter()
    sinks = []
    for v, weights in enumerate(dist.rho_sinks, start=1):
        for w in weights:
            sinks.append((v, w, sink_counts[(v, w)]))
            sink_counts[(v, w)] += 1
    lam_vertices = tuple(
        (i + 1, dist.lambda_sources[i], lam.parts[i]) for i in range(lam.length)
    )
    symmetry = prod(factorial(c) for c in mid_counts.values()) * prod(
        factorial(c) for c in sink_counts.values()
    )
    return MarkingPoset(diag.d, tuple(midpoints), tuple(sinks), lam_vertices, symmetry)


# -- ordering counters ----------------------------------------------------


@lru_cache(maxsize=200_000)
def _gap_dp(d: int, windows: tuple[tuple[int, int], ...]) -> int:
    """Number of linear orders: items assigned to gaps within their windows,
    summed over assignments with a factorial per within-gap arrangement.

    DP over gaps; multi-gap items pending in the state are keyed only by
    their deadline gap (items of equal deadline are interchangeable, which
    the binomial factors account for).
    """
    forced = [0] * (d + 1)
    arrivals: dict[int, list[int]] = {}
    for lo, hi in windows:
        if lo == hi:
            forced[lo] += 1
        else:
            arrivals.setdefault(lo, []).append(hi)

    states: dict[tuple[tuple[int, int], ...], int] = {(): 1}
    for j in range(1, d + 1):
        new_states: dict[tuple[tuple[int, int], ...], int] = {}
        arriving = arrivals.get(j, ())
        for pend, coeff in states.items():
            pools = Counter(dict(pend))
            for h in arriving:
                pools[h] += 1
            mandatory = pools.pop(j, 0) + forced[j]
            opts = sorted(pools.items())

            def choose(idx: int, taken: int, mult: int, rest: list):
                if idx == len(opts):
                    key = tuple((h, c) for h, c in rest if c)
                    val = coeff * mult * factorial(mandatory + taken)
                    new_states[key] = new_states.get(key, 0) + val
                    return
                h, c = opts[idx]
                for k in range(c + 1):
                    rest.append((h, c - k))
                    choose(idx + 1, taken + k, mult * comb(c, k), rest)
                    rest.pop()

            choose(0, 0, 1, [])
        states = new_states
    assert set(states) <= {()}
    return states.get((), 0)


def count_orderings(poset: MarkingPoset) -> int:
    """Linear extensions of the marking poset, all elements distinguishable,
    lambda vertices pinned to the top block in their fixed order."""
    return _gap_dp(poset.d, poset.windows())


def count_orderings_downset(poset: MarkingPoset) -> int:
    """Independent sequential counter used as a safety net for the gap DP."""
    d = poset.d
    classes = sorted(Counter(poset.windows()).items())
    counts = tuple(c for _, c in classes)

    @lru_cache(maxsize=None)
    def rec(f: int, placed: tuple[int, ...]) -> int:
        if f == d and placed == counts:
            return 1
        total = 0
        if f < d and all(
            placed[i] == counts[i] for i, ((lo, hi), _) in enumerate(classes) if hi <= f
        ):
            total += rec(f + 1, placed)
        for i, ((lo, hi), c) in enumerate(classes):
            if lo <= f <= hi and placed[i] < c:
                nxt = placed[:i] + (placed[i] + 1,) + placed[i + 1 :]
                total += (c - placed[i]) * rec(f, nxt)
        return total

    # everything left of floor 1 is empty: start after placing floor 1
    result = rec(1, (0,) * len(classes))
    rec.cache_clear()
    return result


def count_relative_markings(diag: FloorDiagram, lam: Partition, rho: Partition) -> int:
    """nu_{lambda,rho}: sum over distributions of orderings / symmetry."""
    total = 0
    for dist in enumerate_distributions(diag, lam, rho):
        poset = build_poset(diag, dist, lam)
        raw = count_orderings(poset)
        if raw % poset.symmetry:
            raise AssertionError(
                f"symmetry {poset.symmetry} does not divide ordering count {raw}"
            )
        total += raw // poset.symmetry
    return total


def count_markings(diag: FloorDiagram) -> int:
    """nu: ordinary marking count (lambda empty, rho all ones)."""
    return count_relative_markings(diag, Partition(()), Partition.ones(diag.d))


# -- explicit brute force --------------------------------------------------


def _poset_elements(poset: MarkingPoset):
    """Element ids plus strict order constraints (a must precede b)."""
    floors = [("F", v) for v in range(1, poset.d + 1)]
    mids = [("M", s, t, w, c) for s, t, w, c in poset.midpoints]
    sinks = [("S", v, w, c) for v, w, c in poset.sinks]
    lams = [("L", i) for i, _, _ in poset.lambda_vertices]
    elements = floors + mids + sinks + lams
    constraints = []
    for v in range(1, poset.d):
        constraints.append((("F", v), ("F", v + 1)))
    for s, t, w, c in poset.midpoints:
        constraints.append((("F", s), ("M", s, t, w, c)))
        constraints.append((("M", s, t, w, c), ("F", t)))
    for v, w, c in poset.sinks:
        constraints.append((("F", v), ("S", v, w, c)))
    non_lambda = floors + mids + sinks
    for i, _, _ in poset.lambda_vertices:
        for e in non_lambda:
            constraints.append((e, ("L", i)))
    for (i, _, _), (j, _, _) in zip(poset.lambda_vertices, poset.lambda_vertices[1:]):
        constraints.append((("L", j), ("L", i)))  # v_1 is maximal, v_2 next, ...
    return elements, constraints


def _decorated_edges(poset: MarkingPoset):
    """Weighted edge list of the decorated graph, for automorphism checks."""
    edges = []
    for s, t, w, c in poset.midpoints:
        m = ("M", s, t, w, c)
        edges.append((("F", s), m, w))
        edges.append((m, ("F", t), w))
    for v, w, c in poset.sinks:
        edges.append((("F", v), ("S", v, w, c), w))
    for i, src, w in poset.lambda_vertices:
        edges.append((("F", src), ("L", i), w))
    return edges


def _automorphisms(poset: MarkingPoset):
    """All decorated-graph automorphisms fixing floors and lambda vertices.

    Candidates are products of permutations within same-floor equal-weight
    sink classes and parallel-edge midpoint classes; each candidate is
    verified to preserve the weighted edge multiset.
    """
    sink_classes: dict[tuple[int, int], list] = {}
    for v, w, c in poset.sinks:
        sink_classes.setdefault((v, w), []).append(("S", v, w, c))
    mid_classes: dict[tuple[int, int, int], list] = {}
    for s, t, w, c in poset.midpoints:
        mid_classes.setdefault((s, t, w), []).append(("M", s, t, w, c))
    groups = [g for g in list(sink_classes.values()) + list(mid_classes.values())]
    base_edges = Counter(_decorated_edges(poset))
    autos = []
    for perms in itertools.product(*(itertools.permutations(g) for g in groups)):
        mapping = {}
        for group, perm in zip(groups, perms):
            for a, b in zip(group, perm):
                mapping[a] = b
        mapped = Counter(
            (mapping.get(a, a), mapping.get(b, b), w) for a, b, w in base_edges.elements()
        )
        if mapped == base_edges:
            autos.append(mapping)
    return autos


def _linear_extensions(elements, constraints):
    succ: dict = {e: set() for e in elements}
    indeg: dict = {e: 0 for e in elements}
    for a, b in constraints:
        if b not in succ[a]:
            succ[a].add(b)
            indeg[b] += 1
    order: list = []

    def rec():
        if len(order) == len(elements):
            yield tuple(order)
            return
        for e in elements:
            if indeg[e] == 0 and e not in placed:
                placed.add(e)
                order.append(e)
                for s in succ[e]:
                    indeg[s] -= 1
                yield from rec()
                for s in succ[e]:
                    indeg[s] += 1
                order.pop()
                placed.discard(e)

    placed: set = set()
    yield from rec()


def brute_force_markings(diag: FloorDiagram, lam: Partition, rho: Partition) -> int:
    """Count markings by explicit orbit enumeration; independent oracle.

    Refuses posets with more than BRUTE_FORCE_LIMIT elements.
    """
    n_elements = (
        diag.d + len(diag.edges) + lam.length + rho.length
    )
    if n_elements > BRUTE_FORCE_LIMIT:
        raise DiagramError(
            f"brute force limited to {BRUTE_FORCE_LIMIT} elements, got {n_elements}"
        )
    total = 0
    for dist in enumerate_distributions(diag, lam, rho):
        poset = build_poset(diag, dist, lam)
        elements, constraints = _poset_elements(poset)
        autos = _automorphisms(poset)
        seen = set()
        for ext in _linear_extensions(elements, constraints):
            canon = min(tuple(a.get(e, e) for e in ext) for a in autos)
            seen.add(canon)
        total += len(seen)
    return total


def list_markings(diag: FloorDiagram, lam: Partition, rho: Partition) -> list[tuple[str, ...]]:
    """Canonical representatives of every marking, as label sequences.

    Intended for small-d inspection, gallery rendering and the CLI --list
    flag; sizes are capped like the brute force.
    """
    n_elements = diag.d + len(diag.edges) + lam.length + rho.length
    if n_elements > BRUTE_FORCE_LIMIT:
        raise DiagramError(
            f"marking listing limited to {BRUTE_FORCE_LIMIT} elements, got {n_elements}"
        )

    def label(e) -> str:
        kind = e[0]
        if kind == "F":
            return f"v{e[1]}"
        if kind == "M":
            return f"e{e[1]}-{e[2]}w{e[3]}#{e[4]}"
        if kind == "S":
            return f"s{e[1]}w{e[2]}#{e[3]}"
        return f"L{e[1]}"

    reps: list[tuple[str, ...]] = []
    for dist in enumerate_distributions(diag, lam, rho):
        poset = build_poset(diag, dist, lam)
        elements, constraints = _poset_elements(poset)
        autos = _automorphisms(poset)
        seen = set()
        for ext in _linear_extensions(elements, constraints):
            canon = min(tuple(a.get(e, e) for e in ext) for a in autos)
            seen.add(canon)
        reps.extend(tuple(label(e) for e in canon) for canon in sorted(seen))
    return reps


def ordering_count_with_pinned_sinks(diag: FloorDiagram, floor: int, k: int) -> int:
    """Orderings of the ordinary poset with k weight-1 sinks of ``floor``
    removed and pinned above everything, divided by the reduced symmetry.

    Counts ordinary markings whose top k elements are sinks of ``floor``.
    """
    dist = next(enumerate_distributions(diag, Partition(()), Partition.ones(diag.d)))
    poset = build_poset(diag, dist, Partition(()))
    b = sum(1 for v, w, _ in poset.sinks if v == floor and w == 1)
    if b < k:
        return 0
    kept = tuple(
        s for s in poset.sinks if not (s[0] == floor and s[1] == 1 and s[2] >= b - k)
    )
    reduced = MarkingPoset(
        poset.d,
        poset.midpoints,
        kept,
        poset.lambda_vertices,
        poset.symmetry // (factorial(b) // factorial(b - k)),
    )
    raw = count_orderings(reduced)
    if raw % reduced.symmetry:
        raise AssertionError("symmetry must divide the pinned ordering count")
    return raw // reduced.symmetry
