"""Symbolic catalog of prime 3-manifolds and their connected sums.

The catalog ships the primes whose structure the supported results pin down
exactly: lens spaces L(p,q), the handle, the two families of prism-type
spherical space forms with non-cyclic fundamental group, the 3-torus, and a
Generic escape hatch that carries its own presentation and flags.  Chiral
primes with reversed orientation are distinct catalog entries; give the
orientation-reversed Generic a distinct name (conventionally a ``-rev``
suffix).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

from .errors import (
    AssumptionViolated,
    BadParameters,
    NotCataloged,
    SpecParseError,
    SpecValidationError,
)
from .permgroups import (
    PermutationGroup,
    cyclic_group_perm,
    dicyclic_prism_group,
    direct_product,
    load_group_catalog,
    sylow_all_cyclic,
)
from .words import FreeFactor, GeneratorSymbol, Presentation, Word, presentation

# realizations larger than this are refused rather than enumerated
MAX_REALIZATION_ORDER = 5000


@dataclass(frozen=True)
class Lens:
    """L(p, q): the quotient of the 3-sphere by the standard cyclic action of
    order p with twisting parameter q coprime to p."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 1:
            raise BadParameters(f"lens space needs p >= 1, got {self.p}")
        if math.gcd(self.p, self.q) != 1:
            raise BadParameters(f"lens space needs gcd(p, q) = 1, got ({self.p}, {self.q})")
        object.__setattr__(self, "q", self.q % self.p if self.p > 1 else 0)


@dataclass(frozen=True)
class Handle:
    """The unique non-irreducible prime."""


@dataclass(frozen=True)
class PrismSpinor:
    """Spherical space form with fundamental group the binary prism group of
    order 4m (m odd) times Z_p, with 4m coprime to p."""

    m: int
    p: int = 1

    def __post_init__(self) -> None:
        if self.m < 3 or self.m % 2 == 0:
            raise BadParameters(f"prism parameter m must be odd and >= 3, got {self.m}")
        if self.p < 1 or math.gcd(4 * self.m, self.p) != 1:
            raise BadParameters(f"need p >= 1 coprime to 4m, got p={self.p}, m={self.m}")


@dataclass(frozen=True)
class PrismPrimePrime:
    """Spherical space form whose group is the 2^k analogue of the binary
    prism group (order 2^k m, k >= 4, m odd) times Z_p."""

    k: int
    m: int
    p: int = 1

    def __post_init__(self) -> None:
        if self.k < 4:
            raise BadParameters(f"exponent k must be >= 4, got {self.k}")
        if self.m < 1 or self.m % 2 == 0:
            raise BadParameters(f"m must be odd and >= 1, got {self.m}")
        if self.p < 1 or math.gcd((2**self.k) * self.m, self.p) != 1:
            raise BadParameters(f"need p >= 1 coprime to 2^k m, got p={self.p}")


@dataclass(frozen=True)
class FlatForm:
    """One of the six orientable flat space forms; index 1 is the 3-torus and
    the only one shipped with a presentation."""

    index: int

    def __post_init__(self) -> None:
        if not 1 <= self.index <= 6:
            raise BadParameters(f"flat form index must be 1..6, got {self.index}")


@dataclass(frozen=True)
class Generic:
    """Catalog escape hatch for a prime supplied by the caller.

    ``finite_pi1_name`` may point at a named group in the finite-group catalog
    so membership tests can run; ``homotopy_implies_isotopy`` must be set to
    True before twist-kernel counting is allowed.
    """

    name: str
    pi1: Presentation
    spinorial: bool = True
    mcg: Optional[Presentation] = None
    finite_pi1_name: Optional[str] = None
    homotopy_implies_isotopy: Optional[bool] = None
    hendriks: Optional[bool] = None
    chiral: Optional[bool] = None


Prime = Union[Lens, Handle, PrismSpinor, PrismPrimePrime, FlatForm, Generic]


class LensMcg(enum.Enum):
    TRIVIAL = "Trivial"
    Z2 = "Z2"
    Z4 = "Z4"
    Z2xZ2 = "Z2xZ2"


class ExtensionVerdict(enum.Enum):
    """Whether the frame-fixing mapping class group equals the point-fixing
    one or is a central Z2 extension of it."""

    ISOMORPHIC = "isomorphic"
    CENTRAL_Z2_EXTENSION = "central_z2_extension"


def _check_lens_args(p: int, *qs: int) -> None:
    if p < 1:
        raise BadParameters(f"need p >= 1, got {p}")
    for q in qs:
        if math.gcd(p, q) != 1:
            raise BadParameters(f"need gcd(p, q) = 1, got ({p}, {q})")


def lens_homeomorphic(p: int, q: int, q2: int) -> bool:
    """L(p,q) and L(p,q') are homeomorphic iff q' = +-q or q q' = +-1 mod p."""
    _check_lens_args(p, q, q2)
    return (q2 - q) % p == 0 or (q2 + q) % p == 0 or (q * q2 - 1) % p == 0 or (q * q2 + 1) % p == 0


def lens_homotopy_equivalent(p: int, q: int, q2: int) -> bool:
    """Homotopy equivalent iff q q' = +-n^2 mod p for some integer n."""
    _check_lens_args(p, q, q2)
    product = (q * q2) % p
    return any((product - n * n) % p == 0 or (product + n * n) % p == 0 for n in range(p))


def lens_mcg(p: int, q: int) -> LensMcg:
    """Frame-fixing mapping class group of L(p,q).

    The three-case square-residue table applies for p > 2; the 3-sphere and
    projective space are special-cased to the trivial group, which the table
    would otherwise misclassify at p = 2.
    """
    _check_lens_args(p, q)
    if p <= 2:
        return LensMcg.TRIVIAL
    if (q * q - 1) % p == 0 and (q - 1) % p != 0 and (q + 1) % p != 0:
        return LensMcg.Z2xZ2
    if (q * q + 1) % p == 0:
        return LensMcg.Z4
    return LensMcg.Z2


@dataclass(frozen=True)
class ConnectedSum:
    """Ordered connected sum of catalog primes with derived bookkeeping."""

    primes: tuple[Prime, ...]

    def __post_init__(self) -> None:
        if not self.primes:
            raise SpecValidationError("a connected sum needs at least one prime")

    @property
    def total(self) -> int:
        return len(self.primes)

    @property
    def handle_count(self) -> int:
        return sum(1 for pr in self.primes if isinstance(pr, Handle))

    @property
    def irreducible_count(self) -> int:
        return self.total - self.handle_count

    @property
    def spinorial_count(self) -> int:
        return sum(1 for pr in self.primes if is_spinorial(pr))

    @property
    def species(self) -> tuple[tuple[int, ...], ...]:
        """Indices of the primes grouped by diffeomorphism class, in order of
        first appearance."""
        groups: list[list[int]] = []
        for i, pr in enumerate(self.primes):
            for group in groups:
                if same_prime_class(self.primes[group[0]], pr):
                    group.append(i)
                    break
            else:
                groups.append([i])
        return tuple(tuple(g) for g in groups)

    @property
    def species_sizes(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.species)


def same_prime_class(a: Prime, b: Prime) -> bool:
    """Diffeomorphism-class equality: structural equality of descriptors, with
    the homeomorphism criterion deciding lens pairs."""
    if type(a) is not type(b):
        return False
    if isinstance(a, Lens):
        return a.p == b.p and lens_homeomorphic(a.p, a.q, b.q)
    return a == b


def is_spinorial(pr: Prime) -> bool:
    """Every prime except lens spaces and handles is spinorial; Generic
    entries declare themselves."""
    if isinstance(pr, (Lens, Handle)):
        return False
    if isinstance(pr, Generic):
        return pr.spinorial
    return True


def is_spinorial_sum(s: ConnectedSum) -> bool:
    """A sum is spinorial iff it contains at least one spinorial prime."""
    return any(is_spinorial(pr) for pr in s.primes)


def extension_type(s: ConnectedSum) -> ExtensionVerdict:
    if is_spinorial_sum(s):
        return ExtensionVerdict.CENTRAL_Z2_EXTENSION
    return ExtensionVerdict.ISOMORPHIC


def kernel_rank(s: ConnectedSum) -> int:
    """Rank of the elementary-abelian twist kernel: one Z2 per handle plus one
    per spinorial prime.  Requires the homotopy-implies-isotopy property,
    which holds for every built-in prime and must be declared on Generic."""
    for i, pr in enumerate(s.primes):
        if isinstance(pr, Generic) and pr.homotopy_implies_isotopy is not True:
            raise AssumptionViolated(
                f"primes[{i}] ({pr.name}): homotopy-implies-isotopy flag not set"
            )
    return s.handle_count + s.spinorial_count


def _prism_presentation(labels: tuple[str, str, str], m: int, b_order: int, p: int) -> Presentation:
    a, b, z = labels
    return presentation(
        [a, b, z],
        [
            f"{a} {b} {a} {b}^-1",  # b conjugates a to its inverse
            " ".join([a] * m),
            " ".join([b] * b_order),
            " ".join([z] * p),
            f"{z} {a} {z}^-1 {a}^-1",
            f"{z} {b} {z}^-1 {b}^-1",
        ],
    )


def fundamental_group(pr: Prime) -> Presentation:
    """Presentation of the fundamental group of a cataloged prime."""
    if isinstance(pr, Lens):
        return presentation(["a"], [" ".join(["a"] * pr.p)])
    if isinstance(pr, Handle):
        return presentation(["a"])
    if isinstance(pr, PrismSpinor):
        return _prism_presentation(("a", "b", "z"), pr.m, 4, pr.p)
    if isinstance(pr, PrismPrimePrime):
        return _prism_presentation(("a", "b", "z"), pr.m, 2**pr.k, pr.p)
    if isinstance(pr, FlatForm):
        if pr.index != 1:
            raise NotCataloged(f"flat form {pr.index} ships without a presentation")
        return presentation(
            ["x", "y", "z"],
            ["x y x^-1 y^-1", "x z x^-1 z^-1", "y z y^-1 z^-1"],
        )
    if isinstance(pr, Generic):
        return pr.pi1
    raise NotCataloged(f"unknown prime {pr!r}")


_SUM_LABELS = "abcdefghijklmnopqrstuvwxyz"


def fundamental_group_sum(s: ConnectedSum) -> Presentation:
    """Free product of the factors' fundamental groups: disjoint generators,
    union of relators, factor structure recorded."""
    gens: list[GeneratorSymbol] = []
    relators: list[Word] = []
    factors: list[FreeFactor] = []
    for pr in s.primes:
        part = fundamental_group(pr)
        offset = len(gens)
        for g in part.generators:
            idx = len(gens)
            label = _SUM_LABELS[idx] if idx < len(_SUM_LABELS) else f"g{idx}"
            gens.append(GeneratorSymbol(idx, label))
        shifted = tuple(
            Word(tuple((g + offset, sign) for g, sign in rel.letters)) for rel in part.relators
        )
        relators.extend(shifted)
        factors.append(
            FreeFactor(tuple(range(offset, offset + part.rank)), shifted)
        )
    return Presentation(tuple(gens), tuple(relators), tuple(factors))


def pi1_permutation_group(pr: Prime) -> PermutationGroup:
    """Faithful permutation realization of a finite fundamental group.

    Generators correspond positionally to the generators of
    fundamental_group(pr)."""
    if isinstance(pr, Lens):
        if pr.p > MAX_REALIZATION_ORDER:
            raise NotCataloged(f"group order {pr.p} exceeds realization bound")
        return cyclic_group_perm(pr.p)
    if isinstance(pr, (PrismSpinor, PrismPrimePrime)):
        b_order = 4 if isinstance(pr, PrismSpinor) else 2**pr.k
        order = b_order * pr.m * pr.p
        if order > MAX_REALIZATION_ORDER:
            raise NotCataloged(f"group order {order} exceeds realization bound")
        return direct_product(
            dicyclic_prism_group(pr.m, b_order),
            cyclic_group_perm(pr.p),
            name=f"pi1({pr})",
        )
    if isinstance(pr, Generic) and pr.finite_pi1_name:
        catalog = load_group_catalog()
        if pr.finite_pi1_name not in catalog:
            raise NotCataloged(f"no catalog group named {pr.finite_pi1_name!r}")
        return catalog[pr.finite_pi1_name]
    raise NotCataloged(f"no finite realization for {pr!r}")


def in_hendriks_list(pr: Prime) -> bool:
    """Membership in the homotopy-triviality list: handles belong, spherical
    space forms belong iff all Sylow subgroups of the fundamental group are
    cyclic, and primes with infinite fundamental group do not unless a Generic
    entry declares otherwise."""
    if isinstance(pr, Handle):
        return True
    if isinstance(pr, Lens):
        return True  # cyclic groups have cyclic Sylow subgroups
    if isinstance(pr, (PrismSpinor, PrismPrimePrime)):
        group = pi1_permutation_group(pr)
        return sylow_all_cyclic(group, limit=group.degree)
    if isinstance(pr, Generic):
        if pr.hendriks is not None:
            return pr.hendriks
        if pr.finite_pi1_name:
            group = pi1_permutation_group(pr)
            return sylow_all_cyclic(group, limit=group.degree)
        return False
    return False  # flat forms: infinite fundamental group


# --- manifold spec JSON -------------------------------------------------------


def prime_to_json(pr: Prime) -> dict:
    if isinstance(pr, Lens):
        return {"kind": "lens", "p": pr.p, "q": pr.q}
    if isinstance(pr, Handle):
        return {"kind": "handle"}
    if isinstance(pr, PrismSpinor):
        return {"kind": "prism_spinor", "m": pr.m, "p": pr.p}
    if isinstance(pr, PrismPrimePrime):
        return {"kind": "prism_prime_prime", "k": pr.k, "m": pr.m, "p": pr.p}
    if isinstance(pr, FlatForm):
        return {"kind": "flat", "index": pr.index}
    raise NotCataloged(f"cannot serialize {pr!r}")


def sum_to_json(s: ConnectedSum) -> dict:
    return {"primes": [prime_to_json(pr) for pr in s.primes]}


def _require_int(obj: dict, key: str, where: str) -> int:
    value = obj.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise SpecParseError(f"{where}: field {key!r} must be an integer")
    return value


def prime_from_json(obj: dict, where: str = "prime") -> Prime:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SpecParseError(f'{where}: expected an object with a "kind" field')
    kind = obj["kind"]
    try:
        if kind == "lens":
            return Lens(_require_int(obj, "p", where), _require_int(obj, "q", where))
        if kind == "handle":
            return Handle()
        if kind == "prism_spinor":
            return PrismSpinor(_require_int(obj, "m", where), _require_int(obj, "p", where))
        if kind == "prism_prime_prime":
            return PrismPrimePrime(
                _require_int(obj, "k", where),
                _require_int(obj, "m", where),
                _require_int(obj, "p", where),
            )
        if kind == "flat":
            return FlatForm(_require_int(obj, "index", where))
    except BadParameters as exc:
        raise SpecValidationError(f"{where}: {exc}") from exc
    raise SpecParseError(f"{where}: unknown prime kind {kind!r}")


def sum_from_json(data: dict) -> ConnectedSum:
    if not isinstance(data, dict) or not isinstance(data.get("primes"), list):
        raise SpecParseError('manifold spec must be an object with a "primes" list')
    primes = [
        prime_from_json(obj, where=f"primes[{i}]") for i, obj in enumerate(data["primes"])
    ]
    if not primes:
        raise SpecValidationError("empty sum: at least one prime is required")
    return ConnectedSum(tuple(primes))
