"""Counting pillowcase covers with symmetric-group characters.

A degree-N cover of the pillowcase orbifold is encoded by four permutations
(g1, g2, g3, g4) in S_N with g1 g2 g3 g4 = 1, the monodromies around the four
corner points.  The weighted number of such tuples (each counted with factor
1/N!) is the classical character sum

    (|C1| |C2| |C3| |C4| / N!^2) * sum_chi  chi(C1) chi(C2) chi(C3) chi(C4)
                                            / dim(chi)^2

over the irreducible characters of S_N, with the gi constrained to conjugacy
classes C1..C4.  Character values come from the Murnaghan-Nakayama rule.

A cycle of length c in a corner monodromy sits over that corner as a point
where the induced quadratic differential has order c - 2: fixed points are
simple poles, 2-cycles are regular points, 3-cycles are simple zeros.  The
covers counted here therefore have corner classes with parts in {1, 2, 3},
and a cover belongs to the stratum with K simple zeros and K + 4 simple
poles exactly when the total number of 3-cycles over the four corners is K
and the total number of fixed points is K + 4.  Connected covers are
extracted from all covers through the logarithm of the counting series.
"""

from __future__ import annotations

import itertools
import math
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Partition = tuple[int, ...]
Profile = tuple[Partition, Partition, Partition, Partition]


@dataclass(frozen=True)
class CoverProfile:
    """Cycle types of the four corner monodromies of a pillowcase cover.

    All parts are 1, 2, or 3: fixed points sit over a corner as simple
    poles, 2-cycles as regular points, 3-cycles as simple zeros.
    """

    corner_types: Profile

    def __post_init__(self) -> None:
        if len(self.corner_types) != 4:
            raise ValueError("a cover profile has exactly four corners")
        sizes = {sum(cls) for cls in self.corner_types}
        if len(sizes) != 1:
            raise ValueError("corner classes label different symmetric groups")
        for cls in self.corner_types:
            if any(part not in (1, 2, 3) for part in cls):
                raise ValueError("corner cycle types must have parts in {1, 2, 3}")
            if tuple(sorted(cls, reverse=True)) != tuple(cls):
                raise ValueError("corner cycle types must be sorted decreasingly")

    @property
    def degree(self) -> int:
        return sum(self.corner_types[0])

    @property
    def zeros(self) -> int:
        return sum(1 for cls in self.corner_types for part in cls if part == 3)

    @property
    def poles(self) -> int:
        return sum(1 for cls in self.corner_types for part in cls if part == 1)


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Yield the partitions of n in decreasing-part form."""
    if n < 0:
        return
    if n == 0:
        yield ()
        return
    if max_part is None or max_part > n:
        max_part = n
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def class_size(cycle_type: Partition) -> int:
    """Number of permutations of the given cycle type, |C| = N!/z."""
    n = sum(cycle_type)
    z = 1
    mult: dict[int, int] = {}
    for part in cycle_type:
        mult[part] = mult.get(part, 0) + 1
    for part, m in mult.items():
        z *= part**m * math.factorial(m)
    return math.factorial(n) // z


@lru_cache(maxsize=None)
def hook_product(shape: Partition) -> int:
    """Product of hook lengths of the Young diagram of shape."""
    cols = [0] * (shape[0] if shape else 0)
    for row in shape:
        for j in range(row):
            cols[j] += 1
    prod = 1
    for i, row in enumerate(shape):
        for j in range(row):
            arm = row - j - 1
            leg = cols[j] - i - 1
            prod *= arm + leg + 1
    return prod


def dimension(shape: Partition) -> int:
    """Dimension of the irreducible S_N representation labelled by shape."""
    return math.factorial(sum(shape)) // hook_product(shape)


class CharacterCache:
    """Optional on-disk store for symmetric-group character values.

    The file format is line based: a header line ``pillowchar v1`` followed
    by records ``N|irrep|class|value`` with comma-separated partition parts.
    A file that fails to parse is discarded rather than trusted.  The
    location defaults to ``~/.cache/pillowcount/characters.txt`` and the
    directory can be overridden with the PILLOW_CACHE_DIR environment
    variable.
    """

    HEADER = "pillowchar v1"

    def __init__(self, path: str | None = None) -> None:
        if path is None:
            base = os.environ.get("PILLOW_CACHE_DIR")
            if base is None:
                base = os.path.join(os.path.expanduser("~"), ".cache", "pillowcount")
            path = os.path.join(base, "characters.txt")
        self.path = path
        self._values: dict[tuple[Partition, Partition], int] = {}
        self._dirty = False
        self._load()

    def _load(self) -> None:
        try:
            with open(self.path, "r", encoding="ascii") as fh:
                lines = fh.read().splitlines()
        except OSError:
            return
        if not lines or lines[0] != self.HEADER:
            return
        parsed: dict[tuple[Partition, Partition], int] = {}
        try:
            for line in lines[1:]:
                if not line:
                    continue
                n_text, irrep_text, cls_text, val_text = line.split("|")
                irrep = tuple(int(p) for p in irrep_text.split(",") if p)
                cls = tuple(int(p) for p in cls_text.split(",") if p)
                if sum(irrep) != int(n_text) or sum(cls) != int(n_text):
                    return
                parsed[(irrep, cls)] = int(val_text)
        except ValueError:
            return
        self._values = parsed

    def get(self, irrep: Partition, cls: Partition) -> int | None:
        return self._values.get((irrep, cls))

    def put(self, irrep: Partition, cls: Partition, value: int) -> None:
        key = (irrep, cls)
        if self._values.get(key) != value:
            self._values[key] = value
            self._dirty = True

    def flush(self) -> None:
        if not self._dirty:
            return
        directory = os.path.dirname(self.path) or "."
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="ascii") as fh:
                fh.write(self.HEADER + "\n")
                for (irrep, cls), value in sorted(self._values.items()):
                    fh.write(
                        "%d|%s|%s|%d\n"
                        % (
                            sum(irrep),
                            ",".join(str(p) for p in irrep),
                            ",".join(str(p) for p in cls),
                            value,
                        )
                    )
            os.replace(tmp, self.path)
        except OSError:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            return
        self._dirty = False


def _strip_border(shape: Partition, length: int) -> Iterator[tuple[int, Partition]]:
    """Yield (sign, smaller shape) for each border strip of the given length
    removable from shape, via the beta-number encoding."""
    rows = len(shape)
    beta = [shape[i] + (rows - 1 - i) for i in range(rows)]
    beta_set = set(beta)
    for b in beta:
        nb = b - length
        if nb < 0 or nb in beta_set:
            continue
        # the strip height is the number of beta entries jumped over
        passed = sum(1 for c in beta if nb < c < b)
        sign = -1 if passed % 2 else 1
        new_beta = sorted((beta_set - {b}) | {nb}, reverse=True)
        new_shape = tuple(new_beta[j] - (rows - 1 - j) for j in range(rows))
        while new_shape and new_shape[-1] == 0:
            new_shape = new_shape[:-1]
        yield sign, new_shape


_MN_MEMO: dict[tuple[Partition, Partition], int] = {}
_MN_MEMO_LIMIT = 400_000


def _mn_value(shape: Partition, parts: Partition) -> int:
    if not parts:
        return 1
    if parts[0] == 1:
        # remaining cycles are all fixed points
        return dimension(shape)
    key = (shape, parts)
    hit = _MN_MEMO.get(key)
    if hit is not None:
        return hit
    length, rest = parts[0], parts[1:]
    total = 0
    for sign, smaller in _strip_border(shape, length):
        total += sign * _mn_value(smaller, rest)
    _MN_MEMO[key] = total
    return total


def character(irrep: Partition, cls: Partition, cache: CharacterCache | None = None) -> int:
    """Character value of the irreducible representation labelled by irrep on
    the class of cycle type cls, by Murnaghan-Nakayama recursion (largest
    cycle consumed first)."""
    irrep = tuple(sorted(irrep, reverse=True))
    cls = tuple(sorted(cls, reverse=True))
    if sum(irrep) != sum(cls):
        raise ValueError("irrep and class label different symmetric groups")
    if cache is not None:
        hit = cache.get(irrep, cls)
        if hit is not None:
            return hit
    if len(_MN_MEMO) > _MN_MEMO_LIMIT:
        _MN_MEMO.clear()
    value = _mn_value(irrep, cls)
    if cache is not None:
        cache.put(irrep, cls, value)
    return value


def frobenius_count(classes: Sequence[Partition], cache: CharacterCache | None = None) -> Fraction:
    """Weighted number of tuples (g1, ..., gr) with product 1 and gi in the
    i-th class: (1/N!) * #tuples, via the character sum
    (prod |C_i| / N!^2) * sum_chi prod_i chi(C_i) / dim(chi)^(r-2)."""
    if len(classes) < 2:
        raise ValueError("need at least two conjugacy classes")
    n = sum(classes[0])
    for cls in classes:
        if sum(cls) != n:
            raise ValueError("conjugacy classes label different symmetric groups")
    normalized = [tuple(sorted(cls, reverse=True)) for cls in classes]
    sizes = 1
    for cls in normalized:
        sizes *= class_size(cls)
    r = len(normalized)
    # dim = N!/hook turns the sum into an integer accumulation:
    # sum_chi prod chi / dim^(r-2) = sum_shape prod chi * hook^(r-2) / N!^(r-2)
    total = 0
    for shape in partitions(n):
        prod = 1
        for cls in normalized:
            prod *= character(shape, cls, cache)
            if prod == 0:
                break
        if prod == 0:
            continue
        total += prod * hook_product(shape) ** (r - 2)
    return Fraction(sizes * total, math.factorial(n) ** r)


def corner_types(n: int, max_threes: int, max_ones: int) -> list[Partition]:
    """Cycle types 3^a 2^c 1^b with 3a + 2c + b = n, a <= max_threes and
    b <= max_ones, in decreasing-part form."""
    out = []
    for a in range(min(max_threes, n // 3) + 1):
        rest = n - 3 * a
        for b in range(min(max_ones, rest) + 1):
            if (rest - b) % 2:
                continue
            c = (rest - b) // 2
            out.append((3,) * a + (2,) * c + (1,) * b)
    return out


def _threes_and_ones(cls: Partition) -> tuple[int, int]:
    threes = sum(1 for p in cls if p == 3)
    ones = sum(1 for p in cls if p == 1)
    return threes, ones


def cover_profiles(n: int, max_threes: int, max_ones: int) -> Iterator[CoverProfile]:
    """Ordered assignments of corner classes for degree n with the total
    number of 3-cycles bounded by max_threes and of fixed points by
    max_ones."""
    types = corner_types(n, max_threes, max_ones)
    for profile in itertools.product(types, repeat=4):
        threes = sum(_threes_and_ones(c)[0] for c in profile)
        ones = sum(_threes_and_ones(c)[1] for c in profile)
        if threes <= max_threes and ones <= max_ones:
            yield CoverProfile(profile)  # type: ignore[arg-type]


def genus(classes: Sequence[Partition]) -> int:
    """Genus of a connected cover of the sphere with the given four (or more)
    branch classes: 2 - 2g = -(r - 2) N + sum_i #cycles(g_i)."""
    n = sum(classes[0])
    r = len(classes)
    euler = sum(len(cls) for cls in classes) - (r - 2) * n
    if euler % 2:
        raise ValueError("branching data has odd Euler characteristic")
    return (2 - euler) // 2


def _ordered_arrangements(multiset: tuple[Partition, ...]) -> int:
    mult: dict[Partition, int] = {}
    for item in multiset:
        mult[item] = mult.get(item, 0) + 1
    count = math.factorial(len(multiset))
    for m in mult.values():
        count //= math.factorial(m)
    return count


def _multiset_values(
    n: int, max_threes: int, max_ones: int, cache: CharacterCache | None
) -> dict[tuple[Partition, ...], Fraction]:
    """Frobenius counts of degree n, indexed by the (sorted) multiset of the
    four corner classes.  The character sum is symmetric in the classes, so
    evaluating once per multiset saves the bulk of the work."""
    types = corner_types(n, max_threes, max_ones)
    if not types:
        return {}
    shapes = list(partitions(n))
    hooks2 = [hook_product(s) ** 2 for s in shapes]
    vectors = {t: [character(s, t, cache) for s in shapes] for t in types}
    sizes = {t: class_size(t) for t in types}
    nfact4 = math.factorial(n) ** 4
    out: dict[tuple[Partition, ...], Fraction] = {}
    for combo in itertools.combinations_with_replacement(types, 4):
        threes = sum(_threes_and_ones(c)[0] for c in combo)
        ones = sum(_threes_and_ones(c)[1] for c in combo)
        if threes > max_threes or ones > max_ones:
            continue
        v1, v2, v3, v4 = (vectors[c] for c in combo)
        total = 0
        for i in range(len(shapes)):
            a = v1[i]
            if not a:
                continue
            b = v2[i]
            if not b:
                continue
            c = v3[i]
            if not c:
                continue
            d = v4[i]
            if not d:
                continue
            total += a * b * c * d * hooks2[i]
        if not total:
            continue
        size = sizes[combo[0]] * sizes[combo[1]] * sizes[combo[2]] * sizes[combo[3]]
        out[combo] = Fraction(size * total, nfact4)
    return out


def connected_counts(
    k: int, max_degree: int, cache: CharacterCache | None = None
) -> dict[tuple[int, int, int], Fraction]:
    """Connected cover counts graded by (degree, 3-cycles, fixed points).

    Maps (N, z, p) to the weighted count of connected covers of degree N
    whose corner monodromies contain z three-cycles and p fixed points in
    total, truncated to z <= k and p <= k + 4.  The truncation commutes with
    the logarithm because components contribute both gradings additively.
    """
    max_ones = k + 4
    all_counts: dict[tuple[int, int, int], Fraction] = {}
    for n in range(1, max_degree + 1):
        for combo, value in _multiset_values(n, k, max_ones, cache).items():
            threes = sum(_threes_and_ones(c)[0] for c in combo)
            ones = sum(_threes_and_ones(c)[1] for c in combo)
            key = (n, threes, ones)
            weighted = _ordered_arrangements(combo) * value
            all_counts[key] = all_counts.get(key, Fraction(0)) + weighted
    if cache is not None:
        cache.flush()
    # C = log(1 + A) in the algebra graded by (degree, z, p), truncated at
    # degree <= max_degree, z <= k, p <= k + 4
    result: dict[tuple[int, int, int], Fraction] = {}
    current = dict(all_counts)
    sign, j = 1, 1
    while current:
        for key, value in current.items():
            result[key] = result.get(key, Fraction(0)) + Fraction(sign, j) * value
        nxt: dict[tuple[int, int, int], Fraction] = {}
        for (n1, z1, p1), v1 in current.items():
            for (n2, z2, p2), v2 in all_counts.items():
                n, z, p = n1 + n2, z1 + z2, p1 + p2
                if n > max_degree or z > k or p > max_ones:
                    continue
                key = (n, z, p)
                nxt[key] = nxt.get(key, Fraction(0)) + v1 * v2
        current = nxt
        sign = -sign
        j += 1
    return {key: value for key, value in result.items() if value != 0}


def _merge_profile(p1: Profile, p2: Profile) -> Profile:
    return tuple(
        tuple(sorted(a + b, reverse=True)) for a, b in zip(p1, p2)
    )  # type: ignore[return-value]


def profile_connected_counts(
    max_degree: int, cache: CharacterCache | None = None
) -> dict[Profile, Fraction]:
    """Connected cover counts for every individual branching profile (with
    corner parts in {1, 2, 3}) up to max_degree.

    The disconnected counts A are inverted profile by profile: with the
    series graded by the full 4-tuple of corner cycle types, a disjoint
    union merges the profiles corner by corner, so C = log(1 + A) holds in
    that graded algebra as well.
    """
    all_counts: dict[Profile, Fraction] = {}
    for n in range(1, max_degree + 1):
        for combo, value in _multiset_values(n, max_degree, 4 * max_degree, cache).items():
            for profile in set(itertools.permutations(combo)):
                all_counts[profile] = value  # type: ignore[index]
    if cache is not None:
        cache.flush()
    by_degree: dict[int, dict[Profile, Fraction]] = {}
    for profile, value in all_counts.items():
        by_degree.setdefault(sum(profile[0]), {})[profile] = value
    result: dict[Profile, Fraction] = {}
    current = dict(all_counts)
    sign, j = 1, 1
    while current:
        for profile, value in current.items():
            result[profile] = result.get(profile, Fraction(0)) + Fraction(sign, j) * value
        nxt: dict[Profile, Fraction] = {}
        for profile, value in current.items():
            deg = sum(profile[0])
            for n2 in range(1, max_degree - deg + 1):
                for p2, v2 in by_degree.get(n2, {}).items():
                    merged = _merge_profile(profile, p2)
                    nxt[merged] = nxt.get(merged, Fraction(0)) + value * v2
        current = nxt
        sign = -sign
        j += 1
    return {profile: value for profile, value in result.items() if value != 0}


def sq_count(k: int, n_max: int, cache: CharacterCache | None = None) -> Fraction:
    """Weighted number of lattice surfaces of degree at most n_max in the
    stratum with k labelled simple zeros and k + 4 labelled simple poles.

    The monodromy quadruples count covering maps, and the four half-lattice
    translations of the pillowcase act on maps (permuting the corners) with
    free generic orbits, so each surface corresponds to four quadruple
    classes.  Hence the count is k! (k+4)! / 4 times the cumulative
    connected counts at grading (z, p) = (k, k+4)."""
    counts = connected_counts(k, n_max, cache)
    total = sum(
        (counts.get((n, k, k + 4), Fraction(0)) for n in range(1, n_max + 1)),
        Fraction(0),
    )
    return Fraction(math.factorial(k) * math.factorial(k + 4), 4) * total


def cover_ratios(
    k: int, degrees: Iterable[int], cache: CharacterCache | None = None
) -> dict[int, float]:
    """Normalized surface counts r_N = 2 dim * sq_count(k, N) / (Vol N^dim).

    dim = 2k + 2 is the complex dimension of the stratum and Vol its total
    volume pi^(2k+2)/2^(k-1); the counting function grows like Vol N^dim /
    (2 dim), so r_N -> 1 as the degree bound grows.  All requested degrees
    are served from a single pass up to the largest one.
    """
    wanted = sorted(set(int(n) for n in degrees))
    if not wanted or wanted[0] < 1:
        raise ValueError("degrees must be positive integers")
    counts = connected_counts(k, wanted[-1], cache)
    dim = 2 * k + 2
    label = Fraction(math.factorial(k) * math.factorial(k + 4), 4)
    out: dict[int, float] = {}
    total = Fraction(0)
    done = 0
    for n in wanted:
        for d in range(done + 1, n + 1):
            total += counts.get((d, k, k + 4), Fraction(0))
        done = n
        sq = label * total
        out[n] = float(2 * dim * sq) * 2.0 ** (k - 1) / (math.pi ** (2 * k + 2) * n**dim)
    return out


def naive_enumerate(classes: Sequence[Partition], connected_only: bool = False) -> Fraction:
    """Directly count tuples with product 1 and gi in the prescribed classes,
    weighted by 1/N!.  Exponential in N; an independent oracle for N <= 5.

    The first factor is pinned to a single representative and reweighted by
    |C1|, which is valid because conjugation acts on the solution set.
    """
    if not classes:
        return Fraction(0)
    n = sum(classes[0])
    if n > 5:
        raise ValueError("degree too large for direct enumeration")
    for cls in classes:
        if sum(cls) != n:
            raise ValueError("conjugacy classes label different symmetric groups")
    if len(classes) != 4:
        raise ValueError("the direct enumeration handles exactly four classes")
    normalized = [tuple(sorted(cls, reverse=True)) for cls in classes]

    def cycle_type(perm: tuple[int, ...]) -> Partition:
        seen = [False] * n
        parts = []
        for i in range(n):
            if seen[i]:
                continue
            length, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            parts.append(length)
        return tuple(sorted(parts, reverse=True))

    def rep_of_type(cls: Partition) -> tuple[int, ...]:
        perm = list(range(n))
        pos = 0
        for part in cls:
            for i in range(part):
                perm[pos + i] = pos + (i + 1) % part
            pos += part
        return tuple(perm)

    def compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
        # (p q)(x) = p(q(x))
        return tuple(p[q[x]] for x in range(n))

    def inverse(p: tuple[int, ...]) -> tuple[int, ...]:
        inv = [0] * n
        for i, v in enumerate(p):
            inv[v] = i
        return tuple(inv)

    def transitive(perms: Sequence[tuple[int, ...]]) -> bool:
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for p in perms:
            for i in range(n):
                ri, rj = find(i), find(p[i])
                if ri != rj:
                    parent[ri] = rj
        return len({find(i) for i in range(n)}) == 1

    all_perms = list(itertools.permutations(range(n)))
    in_class = {
        cls: [p for p in all_perms if cycle_type(p) == cls] for cls in set(normalized)
    }
    g1 = rep_of_type(normalized[0])
    weight = class_size(normalized[0])
    target = normalized[3]
    count = 0
    for g2 in in_class[normalized[1]]:
        h = compose(g1, g2)
        for g3 in in_class[normalized[2]]:
            g4 = inverse(compose(h, g3))
            if cycle_type(g4) != target:
                continue
            if connected_only and not transitive((g1, g2, g3, g4)):
                continue
            count += 1
    return Fraction(weight * count, math.factorial(n))
