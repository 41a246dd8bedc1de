"""Free words, finitely presented groups, free-product normal forms, and
abelianization.

Everything here is exact integer arithmetic on immutable values.  Words are
sequences of (generator id, sign) letters with sign +1 or -1; run-length
compression is never part of the public representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import SpecParseError, SpecValidationError, UnsupportedPresentation

Letter = tuple[int, int]


@dataclass(frozen=True)
class GeneratorSymbol:
    """A named generator. Ids within one presentation run 0, 1, 2, ..."""

    id: int
    label: str

    def __post_init__(self) -> None:
        if self.id < 0:
            raise SpecValidationError(f"generator id must be >= 0, got {self.id}")
        if not self.label:
            raise SpecValidationError("generator label must be nonempty")


@dataclass(frozen=True)
class Word:
    """A word over signed generators; the empty word is the identity."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        for gen, sign in self.letters:
            if sign not in (1, -1):
                raise SpecValidationError(f"letter sign must be +-1, got {sign}")
            if gen < 0:
                raise SpecValidationError(f"letter generator id must be >= 0, got {gen}")

    @staticmethod
    def identity() -> "Word":
        return Word(())

    @staticmethod
    def from_pairs(pairs: Iterable[tuple[int, int]]) -> "Word":
        return Word(tuple((g, s) for g, s in pairs))

    @staticmethod
    def power(gen: int, exponent: int) -> "Word":
        """g^exponent written out letter by letter."""
        sign = 1 if exponent >= 0 else -1
        return Word(tuple((gen, sign) for _ in range(abs(exponent))))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        """Concatenation followed by free reduction."""
        return _wrap_letters(_reduce_letters(self.letters + other.letters))

    def inverse(self) -> "Word":
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    def is_identity(self) -> bool:
        return not self.letters

    def is_freely_reduced(self) -> bool:
        return all(
            not (a[0] == b[0] and a[1] == -b[1])
            for a, b in zip(self.letters, self.letters[1:])
        )


def _wrap_letters(letters: tuple[Letter, ...]) -> Word:
    # construction path for letters already known valid (hot loops)
    word = object.__new__(Word)
    object.__setattr__(word, "letters", letters)
    return word


def _reduce_letters(letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for letter in letters:
        if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def free_reduce(w: Word) -> Word:
    """The unique freely reduced word equal to w in the free group.

    Stack scan, O(len(w)); idempotent and never length-increasing.
    """
    reduced = _reduce_letters(w.letters)
    if len(reduced) == len(w.letters):
        return w
    return _wrap_letters(reduced)


@dataclass(frozen=True)
class FreeFactor:
    """One factor of a free-product decomposition: its generators and the
    relators that live entirely inside it."""

    generator_ids: tuple[int, ...]
    relators: tuple[Word, ...] = ()


@dataclass(frozen=True)
class Presentation:
    """Finitely presented group: generators plus relator words.

    ``factor_structure``, when present, partitions the generators into
    free-product factors; every relator must then lie inside one factor.
    """

    generators: tuple[GeneratorSymbol, ...]
    relators: tuple[Word, ...] = ()
    factor_structure: Optional[tuple[FreeFactor, ...]] = None

    def __post_init__(self) -> None:
        ids = [g.id for g in self.generators]
        if ids != list(range(len(ids))):
            raise SpecValidationError("generator ids must be distinct and contiguous from 0")
        if len({g.label for g in self.generators}) != len(self.generators):
            raise SpecValidationError("generator labels must be distinct")
        valid = set(ids)
        for rel in self.relators:
            for gen, _ in rel.letters:
                if gen not in valid:
                    raise SpecValidationError(f"relator uses undeclared generator id {gen}")
        if self.factor_structure is not None:
            seen: set[int] = set()
            for factor in self.factor_structure:
                for gid in factor.generator_ids:
                    if gid in seen or gid not in valid:
                        raise SpecValidationError("factor structure must partition the generators")
                    seen.add(gid)
                inside = set(factor.generator_ids)
                for rel in factor.relators:
                    if any(gen not in inside for gen, _ in rel.letters):
                        raise SpecValidationError("factor relator leaves its factor")
            if seen != valid:
                raise SpecValidationError("factor structure must cover all generators")
            flat = set()
            for factor in self.factor_structure:
                flat.update(factor.relators)
            if flat != set(self.relators):
                raise SpecValidationError("factor relators must match the relator list")

    def __hash__(self) -> int:
        # memoized: presentations key several per-word caches in hot loops
        cached = self.__dict__.get("_hash")
        if cached is None:
            cached = hash((self.generators, self.relators, self.factor_structure))
            object.__setattr__(self, "_hash", cached)
        return cached

    @property
    def rank(self) -> int:
        return len(self.generators)

    def label_of(self, gen_id: int) -> str:
        return self.generators[gen_id].label

    def id_of(self, label: str) -> int:
        for g in self.generators:
            if g.label == label:
                return g.id
        raise SpecValidationError(f"unknown generator label {label!r}")

    def word_str(self, w: Word) -> str:
        """Render a word as space-separated tokens, inverses as 'a^-1'."""
        if not w.letters:
            return ""
        return " ".join(
            self.label_of(g) if s > 0 else f"{self.label_of(g)}^-1" for g, s in w.letters
        )

    def parse_word(self, text: str) -> Word:
        """Parse 'a b a^-1' style token strings."""
        letters: list[Letter] = []
        for token in text.split():
            if token.endswith("^-1"):
                letters.append((self.id_of(token[:-3]), -1))
            elif "^" in token:
                raise SpecParseError(f"bad word token {token!r}; only '^-1' is supported")
            else:
                letters.append((self.id_of(token), 1))
        return Word(tuple(letters))


def presentation(labels: Sequence[str], relator_texts: Sequence[str] = ()) -> Presentation:
    """Convenience constructor from labels and token strings."""
    gens = tuple(GeneratorSymbol(i, lab) for i, lab in enumerate(labels))
    p = Presentation(gens)
    rels = tuple(p.parse_word(t) for t in relator_texts)
    return Presentation(gens, rels)


def presentation_to_json(p: Presentation) -> dict:
    """JSON form: {"generators": ["a","b"], "relators": [["a","a"],["b","b"]]}.

    Inverse letters are written "a^-1".
    """
    return {
        "generators": [g.label for g in p.generators],
        "relators": [
            [p.label_of(g) if s > 0 else f"{p.label_of(g)}^-1" for g, s in rel.letters]
            for rel in p.relators
        ],
    }


def presentation_from_json(data: dict) -> Presentation:
    if not isinstance(data, dict):
        raise SpecParseError("presentation JSON must be an object")
    labels = data.get("generators")
    relators = data.get("relators", [])
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise SpecParseError('"generators" must be a list of strings')
    if not isinstance(relators, list):
        raise SpecParseError('"relators" must be a list of letter lists')
    gens = tuple(GeneratorSymbol(i, lab) for i, lab in enumerate(labels))
    base = Presentation(gens)
    rels = []
    for rel in relators:
        if not isinstance(rel, list) or not all(isinstance(x, str) for x in rel):
            raise SpecParseError("each relator must be a list of letter strings")
        rels.append(base.parse_word(" ".join(rel)))
    return Presentation(gens, tuple(rels))


@lru_cache(maxsize=256)
def cyclic_factor_orders(p: Presentation) -> Optional[dict[int, Optional[int]]]:
    """Map generator id -> cyclic order (None for infinite) when p is a free
    product of cyclic factors, else None.

    Accepts either an explicit factor_structure whose factors are single
    generators with at most one pure-power relator, or a flat presentation of
    that same shape (each relator a pure power, at most one per generator).
    """
    orders: dict[int, Optional[int]] = {g.id: None for g in p.generators}
    for rel in p.relators:
        red = free_reduce(rel)
        if not red.letters:
            continue
        gens = {g for g, _ in red.letters}
        signs = {s for _, s in red.letters}
        if len(gens) != 1 or len(signs) != 1:
            return None
        gid = next(iter(gens))
        if orders[gid] is not None:
            return None
        orders[gid] = len(red.letters)
    return orders


def free_product_normal_form(p: Presentation, w: Word) -> Word:
    """Alternating-syllable normal form in a free product of cyclic factors.

    Each syllable is a power of one generator with exponent reduced modulo the
    factor order (kept nonzero); adjacent syllables come from distinct
    factors.  The output is empty iff w is the identity of the group.
    Finite-order syllables are emitted with positive exponents.
    """
    orders = cyclic_factor_orders(p)
    if orders is None:
        raise UnsupportedPresentation(
            "normal form requires a free product of cyclic factors"
        )
    stack: list[list[int]] = []  # [generator id, exponent sum]
    for gen, sign in w.letters:
        if gen not in orders:
            raise SpecValidationError(f"word uses undeclared generator id {gen}")
        if stack and stack[-1][0] == gen:
            stack[-1][1] += sign
        else:
            stack.append([gen, sign])
        k = orders[gen]
        exp = stack[-1][1]
        if exp == 0 or (k is not None and exp % k == 0):
            # popping keeps the stack alternating, so no further merges arise
            stack.pop()
    letters: list[Letter] = []
    for gen, exp in stack:
        k = orders[gen]
        if k is not None:
            exp %= k  # now in 1..k-1
            letters.extend((gen, 1) for _ in range(exp))
        else:
            sign = 1 if exp > 0 else -1
            letters.extend((gen, sign) for _ in range(abs(exp)))
    return _wrap_letters(tuple(letters))


@dataclass(frozen=True)
class AbelianGroupStructure:
    """Invariant factor decomposition Z^free_rank + Z_{d1} + ... with d_i | d_{i+1}."""

    free_rank: int
    torsion_factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise SpecValidationError("free rank must be >= 0")
        for a, b in zip(self.torsion_factors, self.torsion_factors[1:]):
            if b % a != 0:
                raise SpecValidationError("torsion factors must be in divisibility order")
        if any(d < 2 for d in self.torsion_factors):
            raise SpecValidationError("torsion factors must be >= 2")

    def direct_sum(self, other: "AbelianGroupStructure") -> "AbelianGroupStructure":
        """Invariant factors of the direct sum, via primary decomposition."""
        primary: dict[int, list[int]] = {}
        for d in self.torsion_factors + other.torsion_factors:
            for prime, e in _factorize(d).items():
                primary.setdefault(prime, []).append(prime**e)
        chains = [sorted(v) for v in primary.values()]
        depth = max((len(c) for c in chains), default=0)
        factors = []
        for i in range(depth):
            d = 1
            for c in chains:
                if len(c) >= depth - i:
                    d *= c[len(c) - (depth - i)]
            factors.append(d)
        return AbelianGroupStructure(self.free_rank + other.free_rank, tuple(factors))


def _factorize(n: int) -> dict[int, int]:
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


def smith_diagonal(rows: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix.

    Exact arbitrary-precision arithmetic throughout; returns nonnegative
    entries d1 | d2 | ... (including any zeros).
    """
    mat = [list(map(int, row)) for row in rows]
    if not mat or not mat[0]:
        return []
    nrows, ncols = len(mat), len(mat[0])
    diag: list[int] = []
    t = 0
    while t < min(nrows, ncols):
        pivot = None
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = abs(mat[i][j])
                if v and (best is None or v < best):
                    best, pivot = v, (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        mat[t], mat[pi] = mat[pi], mat[t]
        for row in mat:
            row[t], row[pj] = row[pj], row[t]
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, nrows):
                if mat[i][t]:
                    q = mat[i][t] // mat[t][t]
                    for j in range(ncols):
                        mat[i][j] -= q * mat[t][j]
                    if mat[i][t]:
                        mat[t], mat[i] = mat[i], mat[t]
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, ncols):
                if mat[t][j]:
                    q = mat[t][j] // mat[t][t]
                    for i in range(nrows):
                        mat[i][j] -= q * mat[i][t]
                    if mat[t][j]:
                        for i in range(nrows):
                            mat[i][t], mat[i][j] = mat[i][j], mat[i][t]
                        dirty = True
            if not dirty:
                break
        # enforce divisibility of every remaining entry by the pivot
        offender = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if mat[i][j] % mat[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(ncols):
                mat[t][j] += mat[offender][j]
            continue  # redo this pivot position
        diag.append(abs(mat[t][t]))
        t += 1
    while len(diag) < min(nrows, ncols):
        diag.append(0)
    return diag


def abelianization(p: Presentation) -> AbelianGroupStructure:
    """Invariant factors of the abelianized group via exact Smith reduction."""
    n = p.rank
    if n == 0:
        return AbelianGroupStructure(0, ())
    rows = []
    for rel in p.relators:
        row = [0] * n
        for gen, sign in rel.letters:
            row[gen] += sign
        rows.append(row)
    if not rows:
        return AbelianGroupStructure(n, ())
    diag = smith_diagonal(rows)
    rank = sum(1 for d in diag if d != 0)
    torsion = tuple(d for d in diag if d > 1)
    return AbelianGroupStructure(n - rank, torsion)


def all_freely_reduced_words(num_generators: int, max_length: int) -> Iterable[Word]:
    """Every freely reduced word of length <= max_length, shortest first."""
    yield Word(())
    frontier: list[tuple[Letter, ...]] = [()]
    alphabet = [(g, s) for g in range(num_generators) for s in (1, -1)]
    for _ in range(max_length):
        nxt: list[tuple[Letter, ...]] = []
        for prefix in frontier:
            for letter in alphabet:
                if prefix and prefix[-1][0] == letter[0] and prefix[-1][1] == -letter[1]:
                    continue
                extended = prefix + (letter,)
                nxt.append(extended)
                yield Word(extended)
        frontier = nxt
