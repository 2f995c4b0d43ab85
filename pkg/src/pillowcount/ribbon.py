"""Connected genus-0 ribbon graphs with labelled faces, exact lattice counts
of half-integer metrics, Laplace transforms, and the leading-term fit.

Darts are numbered 0..3m+n-1. The vertex rotation sigma is fixed once and for
all: dart triples (3i, 3i+1, 3i+2) form the trivalent vertex i, and dart
3m+j is the univalent vertex j. A graph is then a fixed-point-free involution
alpha pairing the darts, together with a labelling of the faces, which are
the cycles of d -> sigma(alpha(d)).

Two labelled graphs are isomorphic when a dart relabelling preserving sigma
carries one to the other. With vertex labels kept (full mode) the relabelling
can only rotate each trivalent triple; dropping vertex labels (faces-only
mode) additionally permutes trivalent triples among themselves and univalent
darts among themselves. Face labels are preserved in both modes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import gcd
from typing import Iterator, Sequence

from .layers import LayerSignature
from .polynomials import Polynomial, RationalFunction, rf_add, rf_equal, rf_mul, rf_partial, rf_scale
from .rationals import factorial

__all__ = [
    "RibbonGraph",
    "enumerate_graphs",
    "exact_lattice_count",
    "laplace_transform",
    "hat_F",
    "verify_pole_recurrence",
    "leading_part_fit",
]


def _sigma(m: int, n: int) -> tuple[int, ...]:
    out = []
    for i in range(m):
        out.extend((3 * i + 1, 3 * i + 2, 3 * i))
    out.extend(range(3 * m, 3 * m + n))
    return tuple(out)


@dataclass(frozen=True)
class RibbonGraph:
    """One labelled connected genus-0 ribbon graph."""

    m: int
    n: int
    alpha: tuple[int, ...]
    face_of_dart: tuple[int, ...]

    @property
    def darts(self) -> int:
        return 3 * self.m + self.n

    @property
    def faces(self) -> int:
        return LayerSignature(self.m, self.n).faces

    @property
    def sigma(self) -> tuple[int, ...]:
        return _sigma(self.m, self.n)

    def edges(self) -> list[tuple[int, int]]:
        """Dart pairs (d, alpha(d)) with d < alpha(d), sorted."""
        return sorted((d, a) for d, a in enumerate(self.alpha) if d < a)

    def vertex_of_dart(self, d: int) -> int:
        """Trivalent darts map to 0..m-1, univalent darts to m..m+n-1."""
        return d // 3 if d < 3 * self.m else self.m + (d - 3 * self.m)

    def face_cycles(self) -> list[list[int]]:
        sig = self.sigma
        seen = [False] * self.darts
        cycles = []
        for start in range(self.darts):
            if seen[start]:
                continue
            cyc = []
            d = start
            while not seen[d]:
                seen[d] = True
                cyc.append(d)
                d = sig[self.alpha[d]]
            cycles.append(cyc)
        return cycles

    def to_json_dict(self) -> dict:
        return {
            "darts": self.darts,
            "sigma": list(self.sigma),
            "alpha": list(self.alpha),
            "labels": {
                "vertices": [self.vertex_of_dart(d) for d in range(self.darts)],
                "faces": list(self.face_of_dart),
            },
        }


def _pairings(darts: list[int]) -> Iterator[tuple[tuple[int, int], ...]]:
    """All perfect matchings of the dart list."""
    if not darts:
        yield ()
        return
    first, rest = darts[0], darts[1:]
    for i, other in enumerate(rest):
        head = (first, other)
        for tail in _pairings(rest[:i] + rest[i + 1:]):
            yield (head,) + tail


def _connected(m: int, n: int, alpha: Sequence[int]) -> bool:
    d = 3 * m + n
    parent = list(range(d))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        parent[find(a)] = find(b)

    for i in range(m):
        union(3 * i, 3 * i + 1)
        union(3 * i, 3 * i + 2)
    for x in range(d):
        union(x, alpha[x])
    return len({find(x) for x in range(d)}) == 1


def _face_partition(m: int, n: int, alpha: Sequence[int]) -> list[list[int]]:
    sig = _sigma(m, n)
    seen = [False] * len(alpha)
    cycles = []
    for start in range(len(alpha)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = sig[alpha[d]]
        cycles.append(cyc)
    return cycles


def _gauge_maps(m: int, n: int, full_labels: bool) -> list[tuple[int, ...]]:
    """Dart relabellings that preserve sigma and the chosen vertex labels."""
    rotations: list[list[tuple[int, int, int]]] = []
    for i in range(m):
        base = (3 * i, 3 * i + 1, 3 * i + 2)
        rotations.append([base, (base[1], base[2], base[0]), (base[2], base[0], base[1])])
    block_perms = [tuple(range(m))] if full_labels else list(permutations(range(m)))
    uni_perms = [tuple(range(n))] if full_labels else list(permutations(range(n)))
    maps = []
    d = 3 * m + n

    def build(block_perm, rots, uni_perm) -> tuple[int, ...]:
        tau = [0] * d
        for i in range(m):
            target = block_perm[i]
            images = rots[i]
            for off in range(3):
                tau[3 * i + off] = 3 * target + (images[off] - 3 * i)
        for j in range(n):
            tau[3 * m + j] = 3 * m + uni_perm[j]
        return tuple(tau)

    def rot_choices(i: int):
        if i == m:
            yield []
            return
        for r in rotations[i]:
            for rest in rot_choices(i + 1):
                yield [r] + rest

    for block_perm in block_perms:
        for rots in rot_choices(0):
            for uni_perm in uni_perms:
                maps.append(build(block_perm, rots, uni_perm))
    return maps


def _apply_gauge(tau: Sequence[int], alpha: Sequence[int], labels: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    d = len(alpha)
    new_alpha = [0] * d
    new_labels = [0] * d
    for x in range(d):
        new_alpha[tau[x]] = tau[alpha[x]]
        new_labels[tau[x]] = labels[x]
    return tuple(new_alpha), tuple(new_labels)


def enumerate_graphs(m: int, n: int, label_mode: str = "faces-only") -> list[RibbonGraph]:
    """All isomorphism classes of connected genus-0 graphs with labelled faces.

    label_mode "full" keeps vertex labels as well; "faces-only" drops them.
    """
    if label_mode not in ("faces-only", "full"):
        raise ValueError(f"unknown label mode {label_mode!r}")
    sig = LayerSignature(m, n)
    l = sig.faces
    d = 3 * m + n
    gauge = _gauge_maps(m, n, label_mode == "full")
    found: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    for pairing in _pairings(list(range(d))):
        alpha = [0] * d
        for a, b in pairing:
            alpha[a], alpha[b] = b, a
        alpha = tuple(alpha)
        if not _connected(m, n, alpha):
            continue
        cycles = _face_partition(m, n, alpha)
        if len(cycles) != l:
            continue
        cycles.sort(key=lambda c: c[0])
        for perm in permutations(range(l)):
            labels = [0] * d
            for ci, cyc in enumerate(cycles):
                for dart in cyc:
                    labels[dart] = perm[ci]
            labels = tuple(labels)
            key = min(_apply_gauge(tau, alpha, labels) for tau in gauge)
            found.add(key)
    return [RibbonGraph(m, n, a, f) for a, f in sorted(found)]


def exact_lattice_count(g: RibbonGraph, widths: Sequence[int]) -> int:
    """Number of positive half-integer edge metrics realizing the face widths.

    Works in doubled units: each edge length l_e = x_e/2 with x_e a positive
    integer, and each face imposes sum of x over its boundary darts = 2 w_i.
    """
    l = g.faces
    if len(widths) != l:
        raise ValueError(f"expected {l} widths, got {len(widths)}")
    if any(w <= 0 for w in widths):
        raise ValueError("widths must be positive")
    edges = g.edges()
    eindex = {}
    for i, (a, b) in enumerate(edges):
        eindex[a] = i
        eindex[b] = i
    nfaces = l
    # incidence[f][e] = how many darts of face f lie on edge e
    incidence = [[0] * len(edges) for _ in range(nfaces)]
    for dart, face in enumerate(g.face_of_dart):
        incidence[face][eindex[dart]] += 1
    remaining = [2 * w for w in widths]
    unset = [sum(row) for row in incidence]
    touched = [[f for f in range(nfaces) if incidence[f][e]] for e in range(len(edges))]
    unassigned = set(range(len(edges)))

    def bounds(e: int) -> tuple[int, int]:
        """Feasible value range for edge e; forced to a point when e is the
        last unassigned incidence of one of its faces."""
        lo, hi = 1, None
        for f in touched[e]:
            inc = incidence[f][e]
            slack = remaining[f] - (unset[f] - inc)
            c = slack // inc
            hi = c if hi is None else min(hi, c)
            if unset[f] == inc:
                if remaining[f] % inc != 0:
                    return 1, 0
                v = remaining[f] // inc
                lo, hi = max(lo, v), min(hi, v)
        return lo, hi

    count = 0

    def recurse() -> None:
        nonlocal count
        if not unassigned:
            if all(r == 0 for r in remaining):
                count += 1
            return
        best, best_span = None, None
        for e in unassigned:
            lo, hi = bounds(e)
            if hi < lo:
                return
            if best_span is None or hi - lo < best_span:
                best, best_span, best_lo, best_hi = e, hi - lo, lo, hi
        e = best
        unassigned.remove(e)
        for f in touched[e]:
            unset[f] -= incidence[f][e]
        for x in range(best_lo, best_hi + 1):
            ok = True
            for f in touched[e]:
                remaining[f] -= incidence[f][e] * x
                if remaining[f] < unset[f]:
                    ok = False
            if ok:
                recurse()
            for f in touched[e]:
                remaining[f] += incidence[f][e] * x
        for f in touched[e]:
            unset[f] += incidence[f][e]
        unassigned.add(e)

    recurse()
    return count


def _edge_forms(g: RibbonGraph) -> list[tuple[int, ...]]:
    """Per edge, the face-coefficient vector of the pole sum lambda~(e)."""
    l = g.faces
    forms = []
    for a, b in g.edges():
        vec = [0] * l
        vec[g.face_of_dart[a]] += 1
        vec[g.face_of_dart[b]] += 1
        forms.append(tuple(vec))
    return forms


def _factored_transform(g: RibbonGraph) -> tuple[Fraction, dict[tuple[int, ...], int]]:
    """Transform as coefficient / product of primitive linear forms."""
    coeff = Fraction(2 ** (g.m + g.n - 1))
    denom: dict[tuple[int, ...], int] = {}
    for vec in _edge_forms(g):
        content = gcd(*vec) if len(vec) > 1 else vec[0]
        prim = tuple(v // content for v in vec)
        coeff /= content
        denom[prim] = denom.get(prim, 0) + 1
    return coeff, denom


def _linear_poly(vec: tuple[int, ...]) -> Polynomial:
    terms = {}
    for i, c in enumerate(vec):
        if c:
            terms[(0,) * i + (1,)] = c
    return Polynomial(terms)


def laplace_transform(g: RibbonGraph) -> RationalFunction:
    """2^{m+n-1} times the product over edges of 1/(sum of the two bordering
    face poles), a face bordering an edge twice counting twice."""
    den = Polynomial.one()
    for vec in _edge_forms(g):
        den = den * _linear_poly(vec)
    return RationalFunction(Polynomial.constant(2 ** (g.m + g.n - 1)), den)


def hat_F(m: int, n: int) -> RationalFunction:
    """Sum of the transforms over the fully labelled enumeration."""
    graphs = enumerate_graphs(m, n, "full")
    parts = [_factored_transform(g) for g in graphs]
    common: dict[tuple[int, ...], int] = {}
    for _, denom in parts:
        for form, mult in denom.items():
            common[form] = max(common.get(form, 0), mult)
    num = Polynomial.zero()
    for coeff, denom in parts:
        term = Polynomial.constant(coeff)
        for form, mult in common.items():
            for _ in range(mult - denom.get(form, 0)):
                term = term * _linear_poly(form)
        num = num + term
    den = Polynomial.one()
    for form, mult in common.items():
        for _ in range(mult):
            den = den * _linear_poly(form)
    return RationalFunction(num, den)


def verify_pole_recurrence(m: int, n: int) -> bool:
    """Check hat_F_{m+1,n+1} = 2(m+1) sum_i (-1/lambda_i) d/dlambda_i hat_F_{m,n}."""
    lhs = hat_F(m + 1, n + 1)
    base = hat_F(m, n)
    l = LayerSignature(m, n).faces
    rhs = None
    for i in range(l):
        term = rf_mul(
            RationalFunction(Polynomial.constant(-1), Polynomial.variable(i)),
            rf_partial(base, i),
        )
        rhs = term if rhs is None else rf_add(rhs, term)
    rhs = rf_scale(rhs, 2 * (m + 1))
    return rf_equal(lhs, rhs)


# -- leading-term interpolation ----------------------------------------


def _wall_normals(graphs: Sequence[RibbonGraph], l: int) -> set[tuple[int, ...]]:
    """Normals of the cone walls where any graph's count changes regime.

    Walls of a vector partition function are spanned by subsets of incidence
    columns of rank l-1; for l <= 3 these come from single columns (l = 2)
    or pairs of columns (l = 3).
    """
    normals: set[tuple[int, ...]] = set()
    if l == 1:
        return normals
    for g in graphs:
        edges = g.edges()
        cols = []
        for a, b in edges:
            vec = [0] * l
            vec[g.face_of_dart[a]] += 1
            vec[g.face_of_dart[b]] += 1
            cols.append(tuple(vec))
        cols = list(set(cols))
        if l == 2:
            for (c1, c2) in cols:
                nu = (c2, -c1)
                normals.add(_primitive(nu))
        elif l == 3:
            for i in range(len(cols)):
                for j in range(i + 1, len(cols)):
                    a, b = cols[i], cols[j]
                    nu = (
                        a[1] * b[2] - a[2] * b[1],
                        a[2] * b[0] - a[0] * b[2],
                        a[0] * b[1] - a[1] * b[0],
                    )
                    if any(nu):
                        normals.add(_primitive(nu))
        else:
            raise ValueError("leading-term fit supports at most 3 faces")
    return normals


def _primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for v in vec:
        g = gcd(g, abs(v))
    out = tuple(v // g for v in vec)
    for v in out:
        if v:
            return out if v > 0 else tuple(-x for x in out)
    return out


def _directions(l: int, radius: int) -> Iterator[tuple[int, ...]]:
    """Positive primitive integer directions with entries <= radius,
    graded by coordinate sum."""
    for total in range(l, l * radius + 1):
        for u in _bounded_compositions(total, l, radius):
            if gcd(*u) == 1:
                yield u


def _bounded_compositions(total: int, parts: int, radius: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        if 1 <= total <= radius:
            yield (total,)
        return
    for first in range(1, min(radius, total - parts + 1) + 1):
        for rest in _bounded_compositions(total - first, parts - 1, radius):
            yield (first,) + rest


def _lagrange_leading(points: list[tuple[int, int]]) -> Fraction:
    """Leading coefficient of the interpolating polynomial through the points."""
    lead = Fraction(0)
    for i, (xi, yi) in enumerate(points):
        denom = 1
        for j, (xj, _) in enumerate(points):
            if i != j:
                denom *= xi - xj
        lead += Fraction(yi, denom)
    return lead


def _interpolate_value(points: list[tuple[int, int]], x: Fraction) -> Fraction:
    total = Fraction(0)
    for i, (xi, yi) in enumerate(points):
        term = Fraction(yi)
        for j, (xj, _) in enumerate(points):
            if i != j:
                term *= Fraction(x - xj, xi - xj)
        total += term
    return total


def leading_part_fit(m: int, n: int, sample_radius: int = 4) -> Polynomial:
    """Recover the top homogeneous part of the labelled lattice count.

    Sampling runs along rays t*u for off-wall positive directions u; on a ray
    the count is a polynomial of degree 2a in t whose leading coefficient is
    the value of the degree-2a part at u. Fitting those values against the
    even-exponent monomial basis recovers the polynomial exactly.
    """
    sig = LayerSignature(m, n)
    a, l = sig.half_degree, sig.faces
    graphs = enumerate_graphs(m, n, "full")
    if not graphs:
        raise ValueError(f"no graphs for signature ({m},{n})")
    walls = _wall_normals(graphs, l)

    def total_count(widths: tuple[int, ...]) -> int:
        return sum(exact_lattice_count(g, widths) for g in graphs)

    def leading_along(u: tuple[int, ...]) -> Fraction:
        npoints = 2 * a + 1
        base_t0 = max(2, (3 * m + n) // 2)
        for stride in (2, 4, 6, 12):
            for t0 in (base_t0, base_t0 + 1, base_t0 + 5):
                ts = [t0 + stride * i for i in range(npoints + 2)]
                vals = [total_count(tuple(t * ui for ui in u)) for t in ts]
                pts = list(zip(ts[:npoints], vals[:npoints]))
                ok = all(
                    _interpolate_value(pts, Fraction(t)) == v
                    for t, v in zip(ts[npoints:], vals[npoints:])
                )
                if ok:
                    return _lagrange_leading(pts)
        raise ValueError(f"could not stabilize ray interpolation along {u}")

    basis = [tuple(2 * b for b in comp) for comp in _comps(a, l)]
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    needed = len(basis) + 2
    for u in _directions(l, sample_radius):
        if any(sum(ui * vi for ui, vi in zip(u, nu)) == 0 for nu in walls):
            continue
        rows.append([Fraction(_eval_mono(exps, u)) for exps in basis])
        rhs.append(leading_along(u))
        if len(rows) >= needed:
            break
    if len(rows) < len(basis):
        raise ValueError("insufficient off-wall sample directions; raise sample_radius")
    coeffs = _solve_exact(rows, rhs, len(basis))
    return Polynomial({exps: c for exps, c in zip(basis, coeffs) if c})


def _comps(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _comps(total - first, parts - 1):
            yield (first,) + rest


def _eval_mono(exps: tuple[int, ...], point: tuple[int, ...]) -> int:
    out = 1
    for e, p in zip(exps, point):
        out *= p**e
    return out


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction], unknowns: int) -> list[Fraction]:
    """Gaussian elimination; raises if the system is inconsistent or deficient."""
    aug = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(unknowns):
        pivot = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if r < unknowns:
        raise ValueError("sample directions do not determine the fit")
    for i in range(r, len(aug)):
        if aug[i][unknowns] != 0:
            raise ValueError("inconsistent samples: count is not a degree-2a polynomial")
    sol = [Fraction(0)] * unknowns
    for i, c in enumerate(pivots):
        sol[c] = aug[i][unknowns]
    return sol
