"""Concrete finite groups as permutation groups.

Composition is left-to-right: (p * q) maps x to q(p(x)), so evaluating a word
multiplies the assigned permutations in reading order, and right-regular
representations are homomorphisms.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable, Optional, Sequence, TypeVar

from .errors import DegreeTooLarge, SpecValidationError, UnknownGenerator
from .words import Presentation, Word

DEFAULT_ELEMENT_DEGREE_LIMIT = 12
DEFAULT_HOM_DEGREE_LIMIT = 7

T = TypeVar("T")


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., n-1} stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise SpecValidationError(f"not a bijection of 0..{len(self.images) - 1}: {self.images}")

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(tuple(range(degree)))

    @staticmethod
    def from_cycles(degree: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        images = list(range(degree))
        for cycle in cycles:
            for i, point in enumerate(cycle):
                images[point] = cycle[(i + 1) % len(cycle)]
        return Permutation(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Apply self first, then other."""
        if other.degree != self.degree:
            raise SpecValidationError("cannot compose permutations of different degrees")
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        seen = [False] * self.degree
        result = 1
        for start in range(self.degree):
            if seen[start]:
                continue
            length = 0
            point = start
            while not seen[point]:
                seen[point] = True
                point = self.images[point]
                length += 1
            result = math.lcm(result, length)
        return result


class PermutationGroup:
    """A permutation group given by generators; elements are enumerated
    lazily and cached, after which the value is read-only and shareable."""

    def __init__(self, degree: int, generators: Sequence[Permutation], name: str = ""):
        if degree < 1:
            raise SpecValidationError("degree must be >= 1")
        for g in generators:
            if g.degree != degree:
                raise SpecValidationError("generator degree mismatch")
        self.degree = degree
        self.generators = tuple(generators)
        self.name = name
        self._elements: Optional[tuple[Permutation, ...]] = None

    def __repr__(self) -> str:
        label = self.name or f"degree {self.degree}, {len(self.generators)} generators"
        return f"PermutationGroup({label})"

    def order(self, limit: int = DEFAULT_ELEMENT_DEGREE_LIMIT) -> int:
        return len(enumerate_elements(self, limit=limit))


def enumerate_elements(
    group: PermutationGroup, limit: int = DEFAULT_ELEMENT_DEGREE_LIMIT
) -> tuple[Permutation, ...]:
    """Full element set by breadth-first closure, in deterministic order.

    The identity comes first; after that, discovery order under repeated
    right multiplication by the generators.
    """
    if group._elements is not None:
        return group._elements
    if group.degree > limit:
        raise DegreeTooLarge(f"degree {group.degree} exceeds limit {limit}")
    identity = Permutation.identity(group.degree)
    seen = {identity}
    ordered = [identity]
    frontier = [identity]
    while frontier:
        nxt = []
        for element in frontier:
            for gen in group.generators:
                candidate = element * gen
                if candidate not in seen:
                    seen.add(candidate)
                    ordered.append(candidate)
                    nxt.append(candidate)
        frontier = nxt
    group._elements = tuple(ordered)
    return group._elements


def symmetric_group(degree: int) -> PermutationGroup:
    if degree == 1:
        return PermutationGroup(1, [], name="S1")
    gens = [Permutation.from_cycles(degree, [(0, 1)])]
    if degree > 2:
        gens.append(Permutation.from_cycles(degree, [tuple(range(degree))]))
    return PermutationGroup(degree, gens, name=f"S{degree}")


@dataclass(frozen=True)
class GroupHomomorphism:
    """Assignment of a permutation to each generator of a finitely presented
    group, under which every relator maps to the identity."""

    source: Presentation
    target: PermutationGroup
    assignment: tuple[Permutation, ...]  # indexed by generator id

    def __post_init__(self) -> None:
        if len(self.assignment) != self.source.rank:
            raise SpecValidationError("assignment must cover every generator")
        for rel in self.source.relators:
            if not evaluate_word(rel, self).is_identity():
                raise SpecValidationError(f"relator {self.source.word_str(rel)} not satisfied")

    def image_of(self, gen_id: int) -> Permutation:
        if gen_id >= len(self.assignment):
            raise UnknownGenerator(f"no image assigned for generator id {gen_id}")
        return self.assignment[gen_id]


def evaluate_word(w: Word, hom: GroupHomomorphism) -> Permutation:
    """Product of assigned permutations in reading order, respecting signs."""
    degree = hom.target.degree
    current = tuple(range(degree))
    for gen, sign in w.letters:
        if gen >= len(hom.assignment):
            raise UnknownGenerator(f"no image assigned for generator id {gen}")
        perm = hom.assignment[gen]
        images = perm.images if sign > 0 else perm.inverse().images
        current = tuple(images[i] for i in current)
    return Permutation(current)


def _compose_images(current: tuple[int, ...], images: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(images[i] for i in current)


def enumerate_homomorphisms(
    p: Presentation, degree: int, limit: int = DEFAULT_HOM_DEGREE_LIMIT
) -> list[GroupHomomorphism]:
    """Every generator assignment into S_degree satisfying all relators.

    Complete and duplicate-free; assignments are produced in lexicographic
    order of the image tuples.  Generators are assigned one at a time and a
    relator is checked as soon as all its generators have images.
    """
    if degree > limit:
        raise DegreeTooLarge(f"degree {degree} exceeds limit {limit}")
    if degree < 1:
        raise SpecValidationError("degree must be >= 1")
    target = symmetric_group(degree)
    perms = [Permutation(images) for images in itertools.permutations(range(degree))]
    inverses = {perm: perm.inverse() for perm in perms}
    nrank = p.rank
    relators_by_last: dict[int, list[Word]] = {g: [] for g in range(nrank)}
    for rel in p.relators:
        if rel.letters:
            relators_by_last[max(g for g, _ in rel.letters)].append(rel)
    identity = tuple(range(degree))

    def relator_holds(rel: Word, chosen: list[Permutation]) -> bool:
        current = identity
        for gen, sign in rel.letters:
            perm = chosen[gen]
            images = perm.images if sign > 0 else inverses[perm].images
            current = _compose_images(current, images)
        return current == identity

    results: list[GroupHomomorphism] = []
    chosen: list[Permutation] = []

    def extend(gen_id: int) -> None:
        if gen_id == nrank:
            results.append(GroupHomomorphism(p, target, tuple(chosen)))
            return
        for perm in perms:
            chosen.append(perm)
            if all(relator_holds(rel, chosen) for rel in relators_by_last[gen_id]):
                extend(gen_id + 1)
            chosen.pop()

    if nrank == 0:
        results.append(GroupHomomorphism(p, target, ()))
    else:
        extend(0)
    return results


def _prime_powers(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def sylow_all_cyclic(
    group: PermutationGroup, limit: int = DEFAULT_ELEMENT_DEGREE_LIMIT
) -> bool:
    """True iff every Sylow subgroup is cyclic.

    A Sylow p-subgroup of order p^e is cyclic iff the group has an element of
    order p^e (such an element generates a full Sylow subgroup, and Sylow
    subgroups are conjugate), so an element-order census suffices.
    """
    elements = enumerate_elements(group, limit=limit)
    orders = {perm.order() for perm in elements}
    n = len(elements)
    for prime, e in _prime_powers(n).items():
        if prime**e not in orders:
            return False
    return True


# --- constructions used by the catalog and the manifold module ---------------


def regular_representation(
    elements: Sequence[T],
    multiply: Callable[[T, T], T],
    generators: Sequence[T],
    name: str = "",
) -> PermutationGroup:
    """Right-regular permutation representation of an abstract finite group.

    Point i is the i-th element; the permutation for g sends i to index(e_i g),
    which composes correctly under left-to-right permutation products.
    """
    index = {e: i for i, e in enumerate(elements)}
    perms = [
        Permutation(tuple(index[multiply(e, g)] for e in elements)) for g in generators
    ]
    return PermutationGroup(len(elements), perms, name=name)


def cyclic_group_perm(k: int) -> PermutationGroup:
    if k == 1:
        return PermutationGroup(1, [Permutation.identity(1)], name="Z1")
    gen = Permutation.from_cycles(k, [tuple(range(k))])
    return PermutationGroup(k, [gen], name=f"Z{k}")


def quaternion_group() -> PermutationGroup:
    """Q8 = {+-1, +-i, +-j, +-k} as its right-regular representation."""
    units = ["1", "i", "j", "k"]
    mul_units = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elements = [(s, u) for u in units for s in (1, -1)]

    def multiply(x, y):
        sign, unit = mul_units[(x[1], y[1])]
        return (x[0] * y[0] * sign, unit)

    return regular_representation(elements, multiply, [(1, "i"), (1, "j")], name="Q8")


def dicyclic_prism_group(m: int, two_power: int = 4, name: str = "") -> PermutationGroup:
    """Right-regular representation of <a, b : a b a b^-1, a^m, b^q> with
    q = two_power, i.e. the semidirect product Z_m x| Z_q with b inverting a.

    two_power = 4 gives the binary prism (dicyclic) groups of order 4m for odd
    m; two_power = 2^k gives their 2^k analogues of order 2^k m.
    """
    if m < 1 or two_power < 2:
        raise SpecValidationError("need m >= 1 and two_power >= 2")
    elements = [(i, j) for i in range(m) for j in range(two_power)]

    def multiply(x, y):
        i1, j1 = x
        i2, j2 = y
        flip = -1 if j1 % 2 else 1
        return ((i1 + flip * i2) % m, (j1 + j2) % two_power)

    return regular_representation(
        elements, multiply, [(1 % m, 0), (0, 1)], name=name or f"Dstar{4 * m}"
    )


def direct_product(
    left: PermutationGroup, right: PermutationGroup, name: str = ""
) -> PermutationGroup:
    """Faithful product action on the disjoint union of the point sets.

    Generators are the two generator lists acting on their own block, so the
    generator list of the product is left.generators + right.generators.
    """
    degree = left.degree + right.degree
    gens: list[Permutation] = []
    for g in left.generators:
        gens.append(Permutation(tuple(g.images) + tuple(range(left.degree, degree))))
    for g in right.generators:
        gens.append(
            Permutation(tuple(range(left.degree)) + tuple(i + left.degree for i in g.images))
        )
    return PermutationGroup(degree, gens, name=name)


@lru_cache(maxsize=1)
def load_group_catalog() -> dict[str, PermutationGroup]:
    """Named finite groups shipped with the package (degree + generator
    permutations, JSON)."""
    text = resources.files("mcg3").joinpath("data/finite_groups.json").read_text()
    data = json.loads(text)
    catalog: dict[str, PermutationGroup] = {}
    for entry in data["groups"]:
        gens = [Permutation(tuple(images)) for images in entry["generators"]]
        catalog[entry["name"]] = PermutationGroup(entry["degree"], gens, name=entry["name"])
    return catalog
