"""Permutations and permutation groups.

Permutations are tuples in one-line notation (p[i] is the image of i) and
compose like functions: compose(s, t) performs t, then s. Groups are stored as
generator lists; stabilizer chains built here use the fixed base 0, 1, ..., n-1
(levels with trivial orbits are omitted), which makes every derived quantity
deterministic for a given generator list and makes the coset-canonical element
the lexicographic minimum in one-line notation.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Perm = Tuple[int, ...]


class DegreeMismatch(ValueError):
    pass


class NotInGroup(ValueError):
    pass


def identity(n: int) -> Perm:
    return tuple(range(n))


def as_perm(images: Iterable[int]) -> Perm:
    p = tuple(images)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation: {p!r}")
    return p


def compose(s: Perm, t: Perm) -> Perm:
    """The permutation performing t, then s."""
    if len(s) != len(t):
        raise DegreeMismatch(f"degrees {len(s)} and {len(t)} differ")
    return tuple(s[x] for x in t)


def inverse(s: Perm) -> Perm:
    inv = [0] * len(s)
    for i, x in enumerate(s):
        inv[x] = i
    return tuple(inv)


def is_identity(s: Perm) -> bool:
    return all(i == x for i, x in enumerate(s))


def smallest_moved(s: Perm) -> Optional[int]:
    for i, x in enumerate(s):
        if i != x:
            return i
    return None


@dataclass(frozen=True)
class PermGroup:
    """A permutation group given by its degree and a generator list."""

    degree: int
    generators: Tuple[Perm, ...]

    def __post_init__(self):
        for g in self.generators:
            if len(g) != self.degree:
                raise DegreeMismatch(
                    f"generator degree {len(g)} != group degree {self.degree}"
                )
            as_perm(g)

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, ())

    @classmethod
    def symmetric(cls, degree: int) -> "PermGroup":
        if degree < 2:
            return cls.trivial(degree)
        swap = (1, 0) + tuple(range(2, degree))
        cycle = tuple(range(1, degree)) + (0,)
        return cls(degree, (swap, cycle))


def orbit_of(group: PermGroup, point: int) -> frozenset:
    """The orbit of a point under the generated group (breadth-first closure)."""
    if not 0 <= point < group.degree:
        raise ValueError(f"point {point} outside [0, {group.degree})")
    seen = {point}
    frontier = [point]
    while frontier:
        nxt = []
        for w in sorted(frontier):
            for g in group.generators:
                img = g[w]
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return frozenset(seen)


class ChainLevel:
    """One level of a stabilizer chain: a base point, its orbit under the
    current stabilizer subgroup, and a Schreier-tree transversal."""

    __slots__ = ("point", "gens", "orbit", "_index", "_tree", "_reps")

    def __init__(
        self,
        point: int,
        degree: int,
        gens: Sequence[Perm],
        tree: Dict[int, Tuple[int, Perm]],
    ):
        self.point = point
        self.gens = tuple(gens)
        self.orbit = tuple(sorted(tree))
        self._index = {w: i for i, w in enumerate(self.orbit)}
        self._tree = tree
        self._reps: Dict[int, Perm] = {point: identity(degree)}

    def orbit_index(self, point: int) -> Optional[int]:
        return self._index.get(point)

    def rep(self, point: int) -> Perm:
        """Coset representative u with u(base) = point, by tree walk with
        path compression."""
        r = self._reps.get(point)
        if r is None:
            parent, gen = self._tree[point]
            r = compose(gen, self.rep(parent))
            self._reps[point] = r
        return r


@dataclass(frozen=True)
class StabilizerChain:
    """Stabilizer chain with base points in increasing order; levels with
    trivial orbits are omitted. The terminal subgroup is trivial."""

    degree: int
    levels: Tuple[ChainLevel, ...]


def _bfs_tree(point: int, gens: Sequence[Perm]) -> Dict[int, Tuple[int, Perm]]:
    tree: Dict[int, Tuple[int, Perm]] = {point: None}  # type: ignore[dict-item]
    frontier = [point]
    while frontier:
        nxt = []
        for w in sorted(frontier):
            for g in gens:
                img = g[w]
                if img not in tree:
                    tree[img] = (w, g)
                    nxt.append(img)
        frontier = nxt
    return tree


class _BuildLevel:
    __slots__ = ("point", "gens", "tree", "reps")

    def __init__(self, point: int, degree: int):
        self.point = point
        self.gens: List[Perm] = []
        self.tree: Dict[int, Tuple[int, Perm]] = {point: None}  # type: ignore[dict-item]
        self.reps: Dict[int, Perm] = {point: identity(degree)}


def schreier_sims(group: PermGroup) -> StabilizerChain:
    """Deterministic Schreier-Sims relative to the fixed base 0..n-1.

    Level k holds the strong generators whose smallest moved point is the
    level's base point; the orbit at a level is the closure under all
    generators at that level and below.
    """
    n = group.degree
    e = identity(n)
    levels: List[_BuildLevel] = []  # ascending by point

    def strong_gens(idx: int) -> List[Perm]:
        return [g for lvl in levels[idx:] for g in lvl.gens]

    def recompute(idx: int) -> None:
        lvl = levels[idx]
        lvl.tree = _bfs_tree(lvl.point, strong_gens(idx))
        lvl.reps = {lvl.point: e}

    def rep(idx: int, point: int) -> Perm:
        lvl = levels[idx]
        r = lvl.reps.get(point)
        if r is None:
            parent, gen = lvl.tree[point]
            r = compose(gen, rep(idx, parent))
            lvl.reps[point] = r
        return r

    def sift(g: Perm, start_idx: int) -> Perm:
        for idx in range(start_idx, len(levels)):
            lvl = levels[idx]
            img = g[lvl.point]
            if img == lvl.point:
                continue
            if img not in lvl.tree:
                return g
            g = compose(inverse(rep(idx, img)), g)
        return g

    def install(g: Perm) -> int:
        mp = smallest_moved(g)
        assert mp is not None
        points = [lvl.point for lvl in levels]
        idx = bisect.bisect_left(points, mp)
        if idx == len(levels) or levels[idx].point != mp:
            levels.insert(idx, _BuildLevel(mp, n))
        levels[idx].gens.append(g)
        for k in range(idx + 1):
            recompute(k)
        return idx

    def first_open_residue(idx: int) -> Optional[Perm]:
        recompute(idx)
        lvl = levels[idx]
        gens = strong_gens(idx)
        for w in sorted(lvl.tree):
            uw = rep(idx, w)
            for g in gens:
                sch = compose(inverse(rep(idx, g[w])), compose(g, uw))
                if is_identity(sch):
                    continue
                residue = sift(sch, idx + 1)
                if not is_identity(residue):
                    return residue
        return None

    for g in group.generators:
        residue = sift(as_perm(g), 0)
        if not is_identity(residue):
            install(residue)

    idx = len(levels) - 1
    while idx >= 0:
        residue = first_open_residue(idx)
        if residue is None:
            idx -= 1
        else:
            idx = install(residue)

    frozen = []
    for k, lvl in enumerate(levels):
        gens = strong_gens(k)
        frozen.append(ChainLevel(lvl.point, n, gens, _bfs_tree(lvl.point, gens)))
    return StabilizerChain(n, tuple(frozen))


def group_order(chain: StabilizerChain) -> int:
    order = 1
    for lvl in chain.levels:
        order *= len(lvl.orbit)
    return order


def chain_elements(chain: StabilizerChain):
    """Iterate all group elements (for testing; order can be huge)."""
    n = chain.degree

    def walk(idx: int, acc: Perm):
        if idx == len(chain.levels):
            yield acc
            return
        lvl = chain.levels[idx]
        for w in lvl.orbit:
            yield from walk(idx + 1, compose(acc, lvl.rep(w)))

    yield from walk(0, identity(n))


def _check_degree(chain: StabilizerChain, s: Perm) -> None:
    if len(s) != chain.degree:
        raise DegreeMismatch(f"degrees {len(s)} and {chain.degree} differ")


def coset_canon(chain: StabilizerChain, s: Perm) -> Perm:
    """Lexicographically smallest one-line vector in the left coset s*H.

    Descends the stabilizer chain: at each level the base point's image is
    minimized over the orbit, which is globally optimal because the base is
    increasing and points between base points have trivial orbits.
    """
    _check_degree(chain, s)
    cur = s
    for lvl in chain.levels:
        best = min(lvl.orbit, key=lambda w: cur[w])
        cur = compose(cur, lvl.rep(best))
    return cur


def element_rank(chain: StabilizerChain, h: Perm) -> Tuple[int, ...]:
    """Orbit-index tuple of a group member under the chain's transversal
    factorization h = u_0 * u_1 * ... Raises NotInGroup for non-members."""
    _check_degree(chain, h)
    cur = h
    indices = []
    for lvl in chain.levels:
        img = cur[lvl.point]
        idx = lvl.orbit_index(img)
        if idx is None:
            raise NotInGroup(f"image {img} of base point {lvl.point} outside orbit")
        indices.append(idx)
        cur = compose(inverse(lvl.rep(img)), cur)
    if not is_identity(cur):
        raise NotInGroup("nontrivial residue after sifting")
    return tuple(indices)


def element_unrank(chain: StabilizerChain, indices: Sequence[int]) -> Perm:
    """Inverse of element_rank."""
    if len(indices) != len(chain.levels):
        raise ValueError(
            f"expected {len(chain.levels)} indices, got {len(indices)}"
        )
    h = identity(chain.degree)
    for lvl, idx in zip(chain.levels, indices):
        if not 0 <= idx < len(lvl.orbit):
            raise ValueError(f"index {idx} outside orbit of size {len(lvl.orbit)}")
        h = compose(h, lvl.rep(lvl.orbit[idx]))
    return h
