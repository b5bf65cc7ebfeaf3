"""The projective line PG(1, p) and the PSL(2, p) action on its 3-subsets.

Points are integers ``0..p``; the value ``p`` stands for infinity, which
matches the coordinate order of the extended QR code (cyclic positions
``0..p-1`` followed by the parity coordinate).

3-subsets are ranked in colex order: ``{a < b < c}`` has rank
``C(c, 3) + C(b, 2) + C(a, 1)``, with infinity ordered last as point ``p``.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .codes import INF_LABEL, dual, extended_qr_code, permute, same_code
from .gf2 import is_prime, quadratic_residues, smallest_primitive_root


def point_from_label(p: int, label) -> int:
    if label == INF_LABEL or label == "∞":
        return p
    x = int(label)
    if not 0 <= x < p:
        raise ValueError(f"point {label!r} is not on PG(1, {p})")
    return x


def point_label(p: int, x: int):
    return INF_LABEL if x == p else x


def _check_p(p: int, mod8: Iterable[int] = (1,)) -> None:
    mod8 = tuple(mod8)
    if p == 2 or not is_prime(p) or p % 8 not in mod8:
        allowed = " or ".join(str(r) for r in mod8)
        raise ValueError(f"p = {p} must be a prime congruent to {allowed} mod 8")


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@dataclass(frozen=True)
class MobiusMap:
    """x -> (a x + b) / (c x + d) over F_p, scaled so the first nonzero entry is 1."""

    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self):
        p = self.p
        entries = [v % p for v in (self.a, self.b, self.c, self.d)]
        if (entries[0] * entries[3] - entries[1] * entries[2]) % p == 0:
            raise ValueError("singular matrix")
        lead = next(v for v in entries if v)
        inv = pow(lead, -1, p)
        for name, v in zip("abcd", entries):
            object.__setattr__(self, name, v * inv % p)

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    def in_psl(self) -> bool:
        # scaling by s multiplies det by s^2, so squareness is well defined
        return legendre(self.det, self.p) == 1

    def __call__(self, x: int) -> int:
        return apply_mobius(self, x)

    def permutation(self) -> tuple[int, ...]:
        return tuple(apply_mobius(self, x) for x in range(self.p + 1))


def apply_mobius(m: MobiusMap, x: int) -> int:
    p = m.p
    if x == p:
        return p if m.c == 0 else m.a * pow(m.c, -1, p) % p
    den = (m.c * x + m.d) % p
    if den == 0:
        return p
    return (m.a * x + m.b) * pow(den, -1, p) % p


def psl2_generators(p: int) -> list[tuple[int, ...]]:
    """Permutations of 0..p induced by x+1, s^2 x and -1/x (s a primitive root)."""
    _check_p(p, (1, 7))
    s = smallest_primitive_root(p)
    maps = [MobiusMap(1, 1, 0, 1, p), MobiusMap(s * s, 0, 0, 1, p), MobiusMap(0, -1, 1, 0, p)]
    return [m.permutation() for m in maps]


def compose(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    """The permutation x -> f(g(x))."""
    return tuple(f[x] for x in g)


def group_order(generators: Sequence[Sequence[int]], limit: int = 10**6) -> int:
    """Size of the permutation group generated, by breadth-first closure."""
    ident = tuple(range(len(generators[0])))
    seen = {ident}
    queue = deque([ident])
    while queue:
        h = queue.popleft()
        for g in generators:
            gh = compose(g, h)
            if gh not in seen:
                seen.add(gh)
                if len(seen) > limit:
                    raise RuntimeError("group closure exceeded limit")
                queue.append(gh)
    return len(seen)


def colex_rank(triple: Sequence[int]) -> int:
    a, b, c = sorted(triple)
    return comb(c, 3) + comb(b, 2) + a


def colex_unrank(n_points: int) -> list[tuple[int, int, int]]:
    """All 3-subsets of range(n_points), listed by colex rank."""
    out = [None] * comb(n_points, 3)
    for t in combinations(range(n_points), 3):
        out[colex_rank(t)] = t
    return out


def triple_orbit_label(p: int, triple: Sequence[int]) -> int:
    """1 if the triple lies in the PSL(2, p)-orbit of {0, 1, inf}, else 2.

    The map sending 0, 1, inf to x, y, z has determinant
    (y - x)(z - y)(z - x) up to a square; factors involving a point at
    infinity are dropped.  With one infinite point:
      x = inf: z - y,   y = inf: z - x,   z = inf: y - x.
    Since -1 is a square for p = 1 mod 4 the ordering does not matter.
    """
    _check_p(p)
    x, y, z = triple
    if len({x, y, z}) != 3:
        raise ValueError("triple points must be distinct")
    det = 1
    for u, v in ((x, y), (y, z), (x, z)):
        if u != p and v != p:
            det *= v - u
    return 1 if legendre(det, p) == 1 else 2


@dataclass(frozen=True)
class OrbitPartition:
    p: int
    labels: np.ndarray  # uint8, indexed by colex rank
    representatives: tuple[tuple[int, int, int], tuple[int, int, int]]
    sizes: tuple[int, int]
    generator: int  # primitive root used for the orbit-2 representative

    @property
    def n_points(self) -> int:
        return self.p + 1

    def label(self, triple: Sequence[int]) -> int:
        return int(self.labels[colex_rank(triple)])

    def triples(self, orbit: int) -> list[tuple[int, int, int]]:
        return [t for t, lab in zip(colex_unrank(self.n_points), self.labels) if lab == orbit]

    def pair_incidence(self) -> tuple[int, int]:
        """Number of orbit-1 and orbit-2 triples through any fixed pair."""
        pairs = comb(self.n_points, 2)
        k1, r1 = divmod(3 * self.sizes[0], pairs)
        k2, r2 = divmod(3 * self.sizes[1], pairs)
        if r1 or r2:
            raise ArithmeticError("orbit sizes incompatible with 2-transitivity")
        return k1, k2

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "representatives": [[point_label(self.p, x) for x in t] for t in self.representatives],
            "sizes": list(self.sizes),
            "ranking": "colex over points 0..p with inf = p",
            "labels": self.labels.tolist(),
        }


def _closure(start: tuple[int, ...], generators, p: int) -> set[int]:
    seen = {colex_rank(start)}
    queue = deque([tuple(sorted(start))])
    while queue:
        t = queue.popleft()
        for g in generators:
            img = tuple(sorted(g[x] for x in t))
            r = colex_rank(img)
            if r not in seen:
                seen.add(r)
                queue.append(img)
    return seen


def orbit_partition(p: int, verify: bool = True) -> OrbitPartition:
    """Label every 3-subset of PG(1, p) with its PSL(2, p) orbit.

    With ``verify`` the determinant labelling is checked against the orbit
    closure of {0, 1, inf} under ``psl2_generators``.
    """
    _check_p(p)
    triples = colex_unrank(p + 1)
    labels = np.array([triple_orbit_label(p, t) for t in triples], dtype=np.uint8)
    a = smallest_primitive_root(p)
    reps = ((0, 1, p), (0, a, p))
    if verify:
        orbit1 = _closure(reps[0], psl2_generators(p), p)
        expected = np.full(len(triples), 2, dtype=np.uint8)
        expected[list(orbit1)] = 1
        if not np.array_equal(expected, labels):
            raise ArithmeticError("orbit labels disagree with generator closure")
        if labels[colex_rank(reps[1])] != 2:
            raise ArithmeticError("{0, a, inf} is not in the second orbit")
    labels.setflags(write=False)
    sizes = (int(np.count_nonzero(labels == 1)), int(np.count_nonzero(labels == 2)))
    return OrbitPartition(p, labels, reps, sizes, a)


def image_of_triples(perm: Sequence[int], triples: Iterable[Sequence[int]]) -> set[tuple]:
    return {tuple(sorted(perm[x] for x in t)) for t in triples}


def duality_permutation(p: int, code=None, dual_code=None) -> tuple[int, ...]:
    """A coordinate permutation taking the extended QR code onto its dual.

    x -> a x (a the smallest primitive root, inf fixed) is tried first, then
    every x -> c x and x -> c / x with c a non-residue.  Each candidate is
    verified with ``same_code``.
    """
    _check_p(p)
    if code is None:
        code = extended_qr_code(p)
    if dual_code is None:
        dual_code = dual(code)
    a = smallest_primitive_root(p)
    nonres = [c for c in range(1, p) if c not in quadratic_residues(p)]
    candidates = [MobiusMap(a, 0, 0, 1, p)]
    candidates += [MobiusMap(c, 0, 0, 1, p) for c in nonres if c != a]
    candidates += [MobiusMap(0, c, 1, 0, p) for c in nonres]
    for m in candidates:
        sigma = m.permutation()
        if same_code(permute(code, sigma), dual_code):
            return sigma
    raise ArithmeticError(f"no duality permutation found for p = {p}")
