"""Reconstruction of plane tropical curves from marked floor diagrams.

Given a vertically stretched configuration and a marking, each floor is a
piecewise-linear graph rebuilt by a right-to-left scan (slope 1 at the
right end, changing by the elevator weight at every black point, slope 0
at the left end), anchored through its white point; elevators are the
vertical segments and rays through the black points.  All geometry is in
exact rationals, so every verification check is an equality check.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .core import DiagramError, FloorDiagram, Partition
from .markings import build_poset, enumerate_distributions


@dataclass(frozen=True)
class StretchedConfig:
    """Points ascending in both coordinates, with vertical gaps dominating
    horizontal spread by the factor d^3 + d."""

    d: int
    g: int
    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        pts = tuple((Fraction(x), Fraction(y)) for x, y in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) != 3 * self.d - 1 + self.g:
            raise DiagramError(
                f"a ({self.d},{self.g})-configuration needs {3 * self.d - 1 + self.g} points"
            )
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise DiagramError("x coordinates must increase strictly")
        if any(a >= b for a, b in zip(ys, ys[1:])):
            raise DiagramError("y coordinates must increase strictly")
        if len(pts) > 1:
            min_dy = min(b - a for a, b in zip(ys, ys[1:]))
            max_dx = xs[-1] - xs[0]
            factor = self.d**3 + self.d
            if not min_dy > factor * max_dx:
                raise DiagramError("configuration is not vertically stretched")


def _lcg(seed: int):
    state = (seed * 6364136223846793005 + 1442695040888963407) % 2**64
    while True:
        state = (state * 6364136223846793005 + 1442695040888963407) % 2**64
        yield state >> 33


def stretched_config(d: int, g: int, seed: int = 0) -> StretchedConfig:
    """Deterministic vertically stretched (d, g)-configuration."""
    if d < 1 or g < 0:
        raise DiagramError(f"need d >= 1 and g >= 0, got d={d}, g={g}")
    n = 3 * d - 1 + g
    rng = _lcg(seed)
    gap = (d**3 + d) * (n + 2) + 1
    points = []
    for i in range(1, n + 1):
        jx = Fraction(next(rng) % 1000, 2000)
        jy = Fraction(next(rng) % 1000, 2000)
        points.append((i + jx, i * gap + jy))
    return StretchedConfig(d, g, tuple(points))


@dataclass(frozen=True)
class FloorCurve:
    """Graph of one floor: breakpoints left to right and the slope sequence
    (one more slope than breakpoints; 0 at the far left, 1 at the far right)."""

    vertex: int
    anchor: tuple[Fraction, Fraction]
    breakpoints: tuple[tuple[Fraction, Fraction], ...]
    slopes: tuple[Fraction, ...]

    def height(self, x: Fraction) -> Fraction:
        if not self.breakpoints:
            return self.anchor[1] + self.slopes[0] * (x - self.anchor[0])
        for i, (bx, by) in enumerate(self.breakpoints):
            if x <= bx:
                return by + self.slopes[i] * (x - bx)
        bx, by = self.breakpoints[-1]
        return by + self.slopes[-1] * (x - bx)


@dataclass(frozen=True)
class Elevator:
    label: str
    x: Fraction
    weight: int
    upper_floor: int
    lower_floor: Optional[int]  # None for a ground elevator
    top: Fraction
    bottom: Optional[Fraction]
    point: tuple[Fraction, Fraction]


@dataclass(frozen=True)
class TropicalCurveSketch:
    d: int
    g: int
    floors: tuple[FloorCurve, ...]
    elevators: tuple[Elevator, ...]
    marking: tuple[str, ...]


@dataclass(frozen=True)
class CurveCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class CurveReport:
    checks: tuple[CurveCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[CurveCheck]:
        return [c for c in self.checks if not c.ok]


def _ordinary_labels(diag: FloorDiagram) -> tuple[set[str], dict[str, tuple]]:
    dist = next(
        enumerate_distributions(diag, Partition(()), Partition.ones(diag.d))
    )
    poset = build_poset(diag, dist, Partition(()))
    kinds: dict[str, tuple] = {}
    for v in range(1, diag.d + 1):
        kinds[f"v{v}"] = ("F", v)
    for s, t, w, c in poset.midpoints:
        kinds[f"e{s}-{t}w{w}#{c}"] = ("M", s, t, w, c)
    for v, w, c in poset.sinks:
        kinds[f"s{v}w{w}#{c}"] = ("S", v, w, c)
    return set(kinds), kinds


def canonical_marking(diag: FloorDiagram, order: tuple[str, ...]) -> tuple[str, ...]:
    """Relabel interchangeable copies in order of appearance."""
    counters: dict[tuple, int] = {}
    out = []
    for label in order:
        base, _, _ = label.partition("#")
        if "#" in label:
            idx = counters.get(base, 0)
            counters[base] = idx + 1
            out.append(f"{base}#{idx}")
        else:
            out.append(label)
    return tuple(out)


def validate_marking(diag: FloorDiagram, order: tuple[str, ...]) -> tuple[str, ...]:
    """Check the order is a constrained linear extension; return it canonicalized."""
    labels, kinds = _ordinary_labels(diag)
    order = canonical_marking(diag, tuple(order))
    if set(order) != labels or len(order) != len(labels):
        raise DiagramError(
            f"marking must be a permutation of {sorted(labels)}, got {list(order)}"
        )
    pos = {label: i for i, label in enumerate(order)}
    for label in order:
        kind = kinds[label]
        if kind[0] == "M":
            _, s, t, _, _ = kind
            if not pos[f"v{s}"] < pos[label] < pos[f"v{t}"]:
                raise DiagramError(f"midpoint {label} must sit between floors {s} and {t}")
        elif kind[0] == "S":
            _, v, _, _ = kind
            if pos[label] < pos[f"v{v}"]:
                raise DiagramError(f"sink {label} must come after floor {v}")
    for v in range(1, diag.d):
        if pos[f"v{v}"] > pos[f"v{v+1}"]:
            raise DiagramError("floors must appear in increasing order")
    return order


def reconstruct(
    diag: FloorDiagram, order: tuple[str, ...], config: StretchedConfig
) -> TropicalCurveSketch:
    """Build the unique tropical curve through the configuration realizing
    the given marking (highest point corresponds to the smallest element)."""
    shape = diag.classify()
    if (config.d, config.g) != (diag.d, shape.genus):
        raise DiagramError(
            f"configuration is for (d,g)=({config.d},{config.g}), "
            f"diagram has ({diag.d},{shape.genus})"
        )
    order = validate_marking(diag, order)
    _, kinds = _ordinary_labels(diag)
    n = len(order)
    pos = {label: i for i, label in enumerate(order)}
    point_of = {label: config.points[n - 1 - pos[label]] for label in order}

    # black neighbors per floor: (position, label, signed weight); sign +w for
    # an elevator from above (incoming edge), -w from below (outgoing or sink)
    neighbors: dict[int, list[tuple[int, str, int]]] = {v: [] for v in range(1, diag.d + 1)}
    for label, kind in kinds.items():
        if kind[0] == "M":
            _, s, t, w, _ = kind
            neighbors[t].append((pos[label], label, +w))
            neighbors[s].append((pos[label], label, -w))
        elif kind[0] == "S":
            _, v, w, _ = kind
            neighbors[v].append((pos[label], label, -w))

    floors: list[FloorCurve] = []
    for v in range(1, diag.d + 1):
        nbrs = sorted(neighbors[v])  # ascending position = right to left
        slope = Fraction(1)
        right_to_left = []  # (x, slope left of this breakpoint)
        for _, label, signed in nbrs:
            slope += signed
            right_to_left.append((point_of[label][0], slope))
        if slope != 0:
            raise AssertionError(f"floor {v} does not end with slope 0")
        breaks_x = [x for x, _ in reversed(right_to_left)]
        slopes = [s for _, s in reversed(right_to_left)] + [Fraction(1)]
        ax, ay = point_of[f"v{v}"]
        region = sum(1 for x in breaks_x if x < ax)
        ys: list[Optional[Fraction]] = [None] * len(breaks_x)
        y = ay
        x_cur = ax
        for i in range(region - 1, -1, -1):  # walk left from the anchor
            y = y + slopes[i + 1] * (breaks_x[i] - x_cur)
            x_cur = breaks_x[i]
            ys[i] = y
        y = ay
        x_cur = ax
        for i in range(region, len(breaks_x)):  # walk right
            y = y + slopes[i] * (breaks_x[i] - x_cur)
            x_cur = breaks_x[i]
            ys[i] = y
        floors.append(
            FloorCurve(
                v,
                (ax, ay),
                tuple((x, yy) for x, yy in zip(breaks_x, ys)),
                tuple(slopes),
            )
        )

    floor_by_vertex = {f.vertex: f for f in floors}
    elevators = []
    for label in order:
        kind = kinds[label]
        if kind[0] == "M":
            _, s, t, w, _ = kind
            x, y = point_of[label]
            top = floor_by_vertex[s].height(x)
            bottom = floor_by_vertex[t].height(x)
            if not bottom < y < top:
                raise AssertionError(
                    f"black point of {label} must lie on its elevator"
                )
            elevators.append(Elevator(label, x, w, s, t, top, bottom, (x, y)))
        elif kind[0] == "S":
            _, v, w, _ = kind
            x, y = point_of[label]
            top = floor_by_vertex[v].height(x)
            if not y < top:
                raise AssertionError(
                    f"black point of {label} must lie below floor {v}"
                )
            elevators.append(Elevator(label, x, w, v, None, top, None, (x, y)))
    return TropicalCurveSketch(diag.d, shape.genus, tuple(floors), tuple(elevators), order)


def verify_curve(sketch: TropicalCurveSketch, d: int, g: int) -> CurveReport:
    """Balancing, endpoint slopes, unbounded-direction census, degree, genus."""
    checks: list[CurveCheck] = []
    for floor in sketch.floors:
        ok = floor.slopes[0] == 0 and floor.slopes[-1] == 1
        checks.append(
            CurveCheck(
                f"floor {floor.vertex} end slopes",
                ok,
                f"left {floor.slopes[0]}, right {floor.slopes[-1]}",
            )
        )
        bound_ok = all(abs(s) <= d for s in floor.slopes)
        checks.append(CurveCheck(f"floor {floor.vertex} slope bound", bound_ok))
    for floor in sketch.floors:
        for i, (bx, _) in enumerate(floor.breakpoints):
            s_left, s_right = floor.slopes[i], floor.slopes[i + 1]
            hit = [
                e
                for e in sketch.elevators
                if e.x == bx and floor.vertex in (e.upper_floor, e.lower_floor)
            ]
            if len(hit) != 1:
                checks.append(
                    CurveCheck(
                        f"floor {floor.vertex} breakpoint at x={bx}",
                        False,
                        f"{len(hit)} elevators meet it",
                    )
                )
                continue
            e = hit[0]
            vertical = e.weight if e.lower_floor == floor.vertex else -e.weight
            balanced = (s_right - s_left + vertical) == 0
            checks.append(
                CurveCheck(
                    f"balancing at floor {floor.vertex}, x={bx}",
                    balanced,
                    f"slopes {s_left}->{s_right}, elevator {e.label} ({vertical:+})",
                )
            )
    left_rays = len(sketch.floors)
    right_rays = len(sketch.floors)
    ground_weight = sum(e.weight for e in sketch.elevators if e.lower_floor is None)
    checks.append(
        CurveCheck("census (-1,0)", left_rays == d, f"{left_rays} of {d}")
    )
    checks.append(
        CurveCheck("census (1,1)", right_rays == d, f"{right_rays} of {d}")
    )
    checks.append(
        CurveCheck("census (0,-1)", ground_weight == d, f"weight {ground_weight} of {d}")
    )
    checks.append(CurveCheck("degree", right_rays == d, f"{right_rays}"))
    bounded = [e for e in sketch.elevators if e.lower_floor is not None]
    parent = {f.vertex: f.vertex for f in sketch.floors}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in bounded:
        ra, rb = find(e.upper_floor), find(e.lower_floor)
        if ra != rb:
            parent[rb] = ra
    comps = len({find(v) for v in parent})
    betti = len(bounded) - len(sketch.floors) + comps
    checks.append(CurveCheck("genus", betti == g, f"betti {betti} of {g}"))
    return CurveReport(tuple(checks))


def perturb_elevator(sketch: TropicalCurveSketch, index: int, delta: int) -> TropicalCurveSketch:
    """Return a sketch with one elevator weight changed (for fault-injection tests)."""
    elevators = list(sketch.elevators)
    elevators[index] = replace(elevators[index], weight=elevators[index].weight + delta)
    return replace(sketch, elevators=tuple(elevators))


def extract_marking(sketch: TropicalCurveSketch) -> tuple[FloorDiagram, tuple[str, ...]]:
    """Recover the diagram and marking order from a sketch (round trip)."""
    floors = sorted(sketch.floors, key=lambda f: -f.anchor[1])
    vertex_of = {f.vertex: i + 1 for i, f in enumerate(floors)}
    edges = []
    for e in sketch.elevators:
        if e.lower_floor is not None:
            edges.append((vertex_of[e.upper_floor], vertex_of[e.lower_floor], e.weight))
    diag = FloorDiagram(len(floors), tuple(sorted(edges)))
    entries: list[tuple[Fraction, str]] = []
    for f in floors:
        entries.append((f.anchor[1], f"v{vertex_of[f.vertex]}"))
    for e in sketch.elevators:
        if e.lower_floor is None:
            entries.append((e.point[1], f"s{vertex_of[e.upper_floor]}w{e.weight}#0"))
        else:
            entries.append(
                (
                    e.point[1],
                    f"e{vertex_of[e.upper_floor]}-{vertex_of[e.lower_floor]}w{e.weight}#0",
                )
            )
    entries.sort(key=lambda t: -t[0])
    return diag, canonical_marking(diag, tuple(label for _, label in entries))
