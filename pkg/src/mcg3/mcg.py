"""Mapping-class generators for connected sums and the particle-group algebra.

Generator enumeration follows the automorphism-generator catalog for free
products: internal generators per irreducible prime, a spin per handle, an
exchange per unordered pair of diffeomorphic primes, conjugation slides of
irreducible primes, one-sided slides of handle ends, and the twist generators
spanning the kernel of the action on the fundamental group.

Slides of a prime through itself are excluded: conjugating a factor by its own
element is an internal automorphism, and one-sided multiplication of a handle
generator by its own inverse is not an automorphism at all.

Full relation synthesis is not attempted; presentations are cataloged per
case (the general relation list lives outside this package and its published
versions are known to need corrections).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .decider import t1_trivial_search
from .errors import (
    IncompatiblePresentation,
    MismatchedStructure,
    Mcg3Error,
    NotCataloged,
    UnsupportedSum,
)
from .manifolds import (
    ConnectedSum,
    Generic,
    Handle,
    Lens,
    LensMcg,
    fundamental_group,
    is_spinorial,
    lens_mcg,
)
from .permgroups import Permutation
from .words import (
    Presentation,
    Word,
    cyclic_factor_orders,
    free_product_normal_form,
    free_reduce,
    presentation,
)


@dataclass(frozen=True)
class Internal:
    """A generator of the mapping class group of one irreducible prime."""

    prime_index: int
    generator_index: int


@dataclass(frozen=True)
class Spin:
    """Inverts the handle's fundamental-group generator (end exchange)."""

    handle_index: int


@dataclass(frozen=True)
class Exchange:
    """Swaps two diffeomorphic primes, identifying generators slotwise."""

    i: int
    k: int


@dataclass(frozen=True)
class SlideIrreducible:
    """Slides irreducible prime k through prime i along the j-th generator:
    acts on factor k by conjugation."""

    i: int
    j: int
    k: int


@dataclass(frozen=True)
class SlideHandleLeft:
    """Slides the left end of handle k through prime i: left multiplication."""

    i: int
    j: int
    k: int


@dataclass(frozen=True)
class SlideHandleRight:
    """Slides the right end of handle k through prime i: right multiplication."""

    i: int
    j: int
    k: int


@dataclass(frozen=True)
class NeckTwist:
    """Rotation parallel to the connecting sphere of a spinorial prime; lies
    in the kernel of the action on the fundamental group."""

    prime_index: int


@dataclass(frozen=True)
class HandleTwist:
    """Rotation parallel to two meridian spheres of a handle; also acts
    trivially on the fundamental group."""

    handle_index: int


MCGGenerator = Union[
    Internal,
    Spin,
    Exchange,
    SlideIrreducible,
    SlideHandleLeft,
    SlideHandleRight,
    NeckTwist,
    HandleTwist,
]

_VARIANT_NAMES = {
    Internal: "internal",
    Spin: "spin",
    Exchange: "exchange",
    SlideIrreducible: "slide_irreducible",
    SlideHandleLeft: "slide_handle_left",
    SlideHandleRight: "slide_handle_right",
    NeckTwist: "neck_twist",
    HandleTwist: "handle_twist",
}


@dataclass(frozen=True)
class MCGGeneratorSet:
    source: ConnectedSum
    generators: tuple[MCGGenerator, ...]
    internal_unknown: tuple[int, ...]  # primes whose internal catalog is absent

    @property
    def counts(self) -> dict[str, int]:
        out = {name: 0 for name in _VARIANT_NAMES.values()}
        for gen in self.generators:
            out[_VARIANT_NAMES[type(gen)]] += 1
        out["total"] = len(self.generators)
        return out


_LENS_MCG_ORDERS = {
    LensMcg.TRIVIAL: (),
    LensMcg.Z2: (2,),
    LensMcg.Z4: (4,),
    LensMcg.Z2xZ2: (2, 2),
}


def _direct_product_orders(p: Presentation) -> Optional[tuple[int, ...]]:
    """Orders of the cyclic factors when p literally has the shape
    <g0,...,gn | g0^k0, ..., gn^kn, all pairwise commutators>, else None."""
    powers: dict[int, int] = {}
    commutators: set[tuple[int, int]] = set()
    for rel in p.relators:
        red = free_reduce(rel)
        gens = [g for g, _ in red.letters]
        signs = [sign for _, sign in red.letters]
        if len(set(gens)) == 1 and len(set(signs)) == 1:
            if gens[0] in powers:
                return None
            powers[gens[0]] = len(red.letters)
        elif len(red.letters) == 4 and signs in ([1, 1, -1, -1], [-1, -1, 1, 1]):
            a, b = gens[0], gens[1]
            if gens == [a, b, a, b] and a != b:
                commutators.add((min(a, b), max(a, b)))
            else:
                return None
        else:
            return None
    ids = [g.id for g in p.generators]
    expected = {(a, b) for i, a in enumerate(ids) for b in ids[i + 1 :]}
    if set(powers) != set(ids) or commutators != expected:
        return None
    return tuple(powers[i] for i in ids)


def internal_group_orders(pr) -> Optional[tuple[int, ...]]:
    """Cyclic-factor orders of the prime's mapping class group, when the
    catalog knows it as a direct product of cyclic groups.

    Lens spaces follow the square-residue table; the handle contributes its
    twist and spin.  The prism families carry mcg = unknown here (the source
    table is cited, not reproduced), as do flat forms and undeclared Generic
    entries."""
    if isinstance(pr, Lens):
        return _LENS_MCG_ORDERS[lens_mcg(pr.p, pr.q)]
    if isinstance(pr, Handle):
        return (2, 2)
    if isinstance(pr, Generic) and pr.mcg is not None:
        return _direct_product_orders(pr.mcg)
    return None


def enumerate_generators(s: ConnectedSum) -> MCGGeneratorSet:
    """Complete, duplicate-free mapping-class generator list for the sum."""
    ranks = [fundamental_group(pr).rank for pr in s.primes]
    handles = [i for i, pr in enumerate(s.primes) if isinstance(pr, Handle)]
    irreducibles = [i for i, pr in enumerate(s.primes) if not isinstance(pr, Handle)]
    generators: list[MCGGenerator] = []
    internal_unknown: list[int] = []

    for i in irreducibles:
        orders = internal_group_orders(s.primes[i])
        if orders is None:
            internal_unknown.append(i)
        else:
            generators.extend(Internal(i, j) for j in range(len(orders)))
    generators.extend(Spin(i) for i in handles)
    for group in s.species:
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                generators.append(Exchange(group[a], group[b]))
    for i in range(s.total):
        for j in range(ranks[i]):
            for k in irreducibles:
                if k != i:
                    generators.append(SlideIrreducible(i, j, k))
    for i in range(s.total):
        for j in range(ranks[i]):
            for k in handles:
                if k != i:
                    generators.append(SlideHandleLeft(i, j, k))
    for i in range(s.total):
        for j in range(ranks[i]):
            for k in handles:
                if k != i:
                    generators.append(SlideHandleRight(i, j, k))
    generators.extend(NeckTwist(i) for i in irreducibles if is_spinorial(s.primes[i]))
    generators.extend(HandleTwist(i) for i in handles)
    return MCGGeneratorSet(s, tuple(generators), tuple(internal_unknown))


def generator_label(gen: MCGGenerator, s: ConnectedSum) -> str:
    """Human-readable 1-based label; the along-generator index is dropped for
    single-generator primes."""
    ranks = [fundamental_group(pr).rank for pr in s.primes]

    def along(i: int, j: int) -> str:
        return f"{i + 1}" if ranks[i] == 1 else f"{i + 1}.{j + 1}"

    if isinstance(gen, Internal):
        return f"int({gen.prime_index + 1},{gen.generator_index + 1})"
    if isinstance(gen, Spin):
        return f"spin({gen.handle_index + 1})"
    if isinstance(gen, Exchange):
        return f"omega({gen.i + 1},{gen.k + 1})"
    if isinstance(gen, SlideIrreducible):
        return f"mu({along(gen.i, gen.j)},{gen.k + 1})"
    if isinstance(gen, SlideHandleLeft):
        return f"lambda({along(gen.i, gen.j)},{gen.k + 1})"
    if isinstance(gen, SlideHandleRight):
        return f"rho({along(gen.i, gen.j)},{gen.k + 1})"
    if isinstance(gen, NeckTwist):
        return f"neck({gen.prime_index + 1})"
    if isinstance(gen, HandleTwist):
        return f"twist({gen.handle_index + 1})"
    raise NotCataloged(f"unknown generator {gen!r}")


GeneratorAction = dict[int, Word]


def apply_action(action: GeneratorAction, w: Word) -> Word:
    """Substitute each letter by its image word and freely reduce."""
    letters: list[tuple[int, int]] = []
    for gen, sign in w.letters:
        image = action[gen]
        letters.extend(image.letters if sign > 0 else image.inverse().letters)
    return free_reduce(Word(tuple(letters)))


def compose_actions(outer: GeneratorAction, inner: GeneratorAction) -> GeneratorAction:
    """(outer o inner)(g) = outer(inner(g))."""
    return {g: apply_action(outer, w) for g, w in inner.items()}


def _certify_trivial(p: Presentation, w: Word) -> bool:
    reduced = free_reduce(w)
    if not reduced.letters:
        return True
    if cyclic_factor_orders(p) is not None:
        return free_product_normal_form(p, reduced).is_identity()
    return t1_trivial_search(p, reduced, depth=2, max_steps=200_000) is not None


def induced_automorphism(gen: MCGGenerator, p: Presentation) -> GeneratorAction:
    """Action of one mapping-class generator on the generators of the sum's
    fundamental group, as a total map generator id -> word.

    Requires p = fundamental_group_sum(source sum), whose factor structure
    locates each prime's generators.  The twist generators return the identity
    map.  The returned map is certified to send every relator to a trivial
    word before it is handed back.
    """
    if p.factor_structure is None:
        raise IncompatiblePresentation("presentation lacks free-product factor structure")
    factors = p.factor_structure
    action: GeneratorAction = {
        g.id: Word.from_pairs([(g.id, 1)]) for g in p.generators
    }

    def factor_gens(index: int) -> tuple[int, ...]:
        if index >= len(factors):
            raise IncompatiblePresentation(f"no factor {index} in the presentation")
        return factors[index].generator_ids

    if isinstance(gen, (NeckTwist, HandleTwist)):
        pass
    elif isinstance(gen, Spin):
        (handle_gen,) = factor_gens(gen.handle_index)
        action[handle_gen] = Word.from_pairs([(handle_gen, -1)])
    elif isinstance(gen, Exchange):
        left = factor_gens(gen.i)
        right = factor_gens(gen.k)
        if len(left) != len(right):
            raise IncompatiblePresentation("exchanged factors must have equal rank")
        for a, b in zip(left, right):
            action[a] = Word.from_pairs([(b, 1)])
            action[b] = Word.from_pairs([(a, 1)])
    elif isinstance(gen, SlideIrreducible):
        along = factor_gens(gen.i)[gen.j]
        for target in factor_gens(gen.k):
            action[target] = Word.from_pairs([(along, -1), (target, 1), (along, 1)])
    elif isinstance(gen, SlideHandleLeft):
        along = factor_gens(gen.i)[gen.j]
        (handle_gen,) = factor_gens(gen.k)
        action[handle_gen] = Word.from_pairs([(along, -1), (handle_gen, 1)])
    elif isinstance(gen, SlideHandleRight):
        along = factor_gens(gen.i)[gen.j]
        (handle_gen,) = factor_gens(gen.k)
        action[handle_gen] = Word.from_pairs([(handle_gen, 1), (along, 1)])
    elif isinstance(gen, Internal):
        raise NotCataloged(
            "internal automorphism actions are not cataloged for this prime"
        )
    else:
        raise NotCataloged(f"unknown generator {gen!r}")

    for rel in p.relators:
        if not _certify_trivial(p, apply_action(action, rel)):
            raise Mcg3Error(
                f"induced map fails to send relator {p.word_str(rel)} to a trivial word"
            )
    return action


# --- particle group -----------------------------------------------------------


@dataclass(frozen=True)
class ParticleStructure:
    """Species partition plus the per-prime internal-group shape (orders of
    the cyclic factors of each prime's mapping class group)."""

    species: tuple[tuple[int, ...], ...]
    internal_orders: tuple[tuple[int, ...], ...]  # aligned with prime indices

    @property
    def prime_count(self) -> int:
        return sum(len(group) for group in self.species)

    def order(self) -> int:
        import math

        total = 1
        for orders in self.internal_orders:
            for k in orders:
                total *= k
        for group in self.species:
            total *= math.factorial(len(group))
        return total


def particle_structure(s: ConnectedSum) -> ParticleStructure:
    orders = []
    for i, pr in enumerate(s.primes):
        entry = internal_group_orders(pr)
        if entry is None:
            raise NotCataloged(
                f"primes[{i}]: internal mapping class group is not cataloged"
            )
        orders.append(entry)
    return ParticleStructure(s.species, tuple(orders))


@dataclass(frozen=True)
class ParticleGroupElement:
    """Internal part: per-prime exponent vectors in the cyclic factors of that
    prime's mapping class group (the normal-form word g0^e0 g1^e1 ...);
    external part: one permutation per species, permuting that species' slots.
    """

    structure: ParticleStructure
    internal: tuple[tuple[int, ...], ...]
    external: tuple[Permutation, ...]

    def internal_word(self, prime_index: int) -> Word:
        exponents = self.internal[prime_index]
        letters = []
        for gen, e in enumerate(exponents):
            letters.extend((gen, 1) for _ in range(e))
        return Word(tuple(letters))


def particle_identity(structure: ParticleStructure) -> ParticleGroupElement:
    internal = tuple(tuple(0 for _ in orders) for orders in structure.internal_orders)
    external = tuple(Permutation.identity(len(group)) for group in structure.species)
    return ParticleGroupElement(structure, internal, external)


def _check_same_structure(x: ParticleGroupElement, y: ParticleGroupElement) -> None:
    if x.structure != y.structure:
        raise MismatchedStructure("elements live over different particle structures")


def particle_group_multiply(
    x: ParticleGroupElement, y: ParticleGroupElement
) -> ParticleGroupElement:
    """Semidirect multiplication: the external part of x permutes y's internal
    slots within each species before the slotwise internal product; external
    parts compose."""
    _check_same_structure(x, y)
    structure = x.structure
    internal = [list(v) for v in x.internal]
    for r, group in enumerate(structure.species):
        sigma = x.external[r]
        for slot, prime in enumerate(group):
            other = group[sigma(slot)]
            orders = structure.internal_orders[prime]
            for axis, k in enumerate(orders):
                internal[prime][axis] = (
                    x.internal[prime][axis] + y.internal[other][axis]
                ) % k
    external = tuple(x.external[r] * y.external[r] for r in range(len(structure.species)))
    return ParticleGroupElement(structure, tuple(tuple(v) for v in internal), external)


def particle_inverse(x: ParticleGroupElement) -> ParticleGroupElement:
    structure = x.structure
    internal = [list(v) for v in x.internal]
    for r, group in enumerate(structure.species):
        sigma_inv = x.external[r].inverse()
        for slot, prime in enumerate(group):
            source = group[sigma_inv(slot)]
            orders = structure.internal_orders[prime]
            for axis, k in enumerate(orders):
                internal[prime][axis] = (-x.internal[source][axis]) % k
    external = tuple(sigma.inverse() for sigma in x.external)
    return ParticleGroupElement(structure, tuple(tuple(v) for v in internal), external)


def enumerate_particle_group(structure: ParticleStructure) -> list[ParticleGroupElement]:
    """All elements, for small structures (used for table matching)."""
    import itertools

    axes = []
    for orders in structure.internal_orders:
        axes.append(list(itertools.product(*(range(k) for k in orders))))
    perm_choices = []
    for group in structure.species:
        perm_choices.append(
            [Permutation(images) for images in itertools.permutations(range(len(group)))]
        )
    out = []
    for internal in itertools.product(*axes):
        for external in itertools.product(*perm_choices):
            out.append(ParticleGroupElement(structure, tuple(internal), tuple(external)))
    return out


# --- cataloged presentations ---------------------------------------------------


def _presentation_for_orders(orders: tuple[int, ...], labels: tuple[str, ...]) -> Presentation:
    texts = []
    for label, k in zip(labels, orders):
        texts.append(" ".join([label] * k))
    for a in range(len(orders)):
        for b in range(a + 1, len(orders)):
            texts.append(f"{labels[a]} {labels[b]} {labels[a]}^-1 {labels[b]}^-1")
    return presentation(list(labels[: len(orders)]), texts)


def _is_two_rp3(s: ConnectedSum) -> bool:
    return s.total == 2 and all(isinstance(pr, Lens) and pr.p == 2 for pr in s.primes)


def mcg_presentation(s: ConnectedSum) -> Presentation:
    """Cataloged mapping-class presentation: single lens space, single handle,
    the double projective-space sum, or a Generic prime carrying its own."""
    if _is_two_rp3(s):
        return presentation(["omega", "mu"], ["omega omega", "mu mu"])
    if s.total == 1:
        pr = s.primes[0]
        if isinstance(pr, Lens):
            orders = _LENS_MCG_ORDERS[lens_mcg(pr.p, pr.q)]
            return _presentation_for_orders(orders, ("t", "s"))
        if isinstance(pr, Handle):
            return _presentation_for_orders((2, 2), ("t", "s"))
        if isinstance(pr, Generic) and pr.mcg is not None:
            return pr.mcg
    raise UnsupportedSum(
        "no cataloged mapping-class presentation for this sum; general relation "
        "synthesis is out of scope"
    )


def two_rp3_three_generator_presentation() -> Presentation:
    """Redundant three-generator form with both slides explicit and the
    exchange conjugating one slide to the other."""
    return presentation(
        ["omega", "mu12", "mu21"],
        [
            "omega omega",
            "mu12 mu12",
            "mu21 mu21",
            "omega mu12 omega^-1 mu21^-1",
        ],
    )


@dataclass(frozen=True)
class SemidirectReport:
    splits: bool
    slide_generators: tuple[MCGGenerator, ...]
    particle_generators: tuple[MCGGenerator, ...]
    particle_group_order: Optional[int]


def decompose_semidirect(s: ConnectedSum) -> SemidirectReport:
    """Split the generator set into the slide side and the particle side; the
    semidirect decomposition holds exactly when the sum has no handles."""
    gens = enumerate_generators(s)
    slides = tuple(
        g
        for g in gens.generators
        if isinstance(g, (SlideIrreducible, SlideHandleLeft, SlideHandleRight))
    )
    particle = tuple(
        g for g in gens.generators if isinstance(g, (Internal, Spin, Exchange))
    )
    try:
        order = particle_structure(s).order()
    except NotCataloged:
        order = None
    return SemidirectReport(
        splits=s.handle_count == 0,
        slide_generators=slides,
        particle_generators=particle,
        particle_group_order=order,
    )
