"""Word-problem decider for finitely presented residually finite groups.

Two semi-decision procedures run in fair alternation: a triviality search that
inserts cyclic conjugates of relators (T1) and a non-triviality search over
homomorphisms into symmetric groups (T2).  Either side that succeeds returns a
certificate; exhausting both within the budget is a normal outcome, not an
error.  On groups that are not residually finite the procedure may exhaust
every budget; the classic two-generator group with the single relation
a^-1 b b a b^-1 b^-1 b^-1 is shipped in the test suite as a stress input.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .errors import SpecValidationError
from .permgroups import (
    GroupHomomorphism,
    Permutation,
    enumerate_homomorphisms,
    DEFAULT_HOM_DEGREE_LIMIT,
)
from .words import (
    Presentation,
    Word,
    _reduce_letters,
    cyclic_factor_orders,
    free_reduce,
)

T2_FIRST_DEGREE = 2


@dataclass(frozen=True)
class Budget:
    """Caps for one decide() run.

    max_t1_depth bounds relator insertions, max_t2_degree the largest
    symmetric group searched, max_steps the total work units (T1 node
    expansions plus T2 assignments checked).
    """

    max_t1_depth: int = 8
    max_t2_degree: int = 5
    max_steps: int = 2_000_000

    def __post_init__(self) -> None:
        if min(self.max_t1_depth, self.max_t2_degree, self.max_steps) < 0:
            raise SpecValidationError("budget fields must be >= 0")


@dataclass(frozen=True)
class DerivationStep:
    """Insert `inserted` (a cyclic conjugate of a relator or of a relator
    inverse) at letter index `position`, then freely reduce."""

    position: int
    inserted: Word


@dataclass(frozen=True)
class BudgetUsage:
    t1_depth: int
    t2_degree: int
    steps: int


@dataclass(frozen=True)
class Trivial:
    derivation: tuple[DerivationStep, ...]


@dataclass(frozen=True)
class Nontrivial:
    witness: GroupHomomorphism
    image: Permutation


@dataclass(frozen=True)
class Exhausted:
    budget_used: BudgetUsage


Verdict = Union[Trivial, Nontrivial, Exhausted]


def replay_derivation(w: Word, derivation: tuple[DerivationStep, ...]) -> Word:
    """Apply the recorded insertions; a valid triviality certificate ends at
    the empty word."""
    current = free_reduce(w)
    for step in derivation:
        if not 0 <= step.position <= len(current.letters):
            raise SpecValidationError(f"derivation step position {step.position} out of range")
        letters = (
            current.letters[: step.position]
            + step.inserted.letters
            + current.letters[step.position :]
        )
        current = free_reduce(Word(letters))
    return current


def _insertable_words(p: Presentation) -> tuple[Word, ...]:
    """Freely reduced cyclic conjugates of every relator and relator inverse,
    deduplicated, in a fixed order."""
    out: list[Word] = []
    seen: set[Word] = set()
    for rel in p.relators:
        for base in (free_reduce(rel), free_reduce(rel).inverse()):
            n = len(base.letters)
            for shift in range(max(n, 1)):
                rotated = free_reduce(Word(base.letters[shift:] + base.letters[:shift]))
                if rotated.letters and rotated not in seen:
                    seen.add(rotated)
                    out.append(rotated)
    return tuple(out)


class _T1Bfs:
    """Layer-by-layer breadth-first search over relator insertions, with a
    seen set keyed on the freely reduced word."""

    def __init__(self, p: Presentation, w: Word, max_depth: int):
        self.insertables = _insertable_words(p)
        self.max_depth = max_depth
        start = free_reduce(w)
        self.start = start
        self.parents: dict[Word, tuple[Optional[Word], Optional[DerivationStep]]] = {
            start: (None, None)
        }
        self.frontier: list[Word] = [start]
        self.depth = 0
        self.done = not self.insertables or max_depth == 0

    def _derivation(self, end: Word) -> tuple[DerivationStep, ...]:
        steps: list[DerivationStep] = []
        node: Optional[Word] = end
        while node is not None:
            parent, step = self.parents[node]
            if step is not None:
                steps.append(step)
            node = parent
        return tuple(reversed(steps))

    def expand_layer(self, step_allowance: int) -> tuple[Optional[tuple[DerivationStep, ...]], int]:
        """Expand one BFS layer.  Returns (derivation or None, steps spent);
        marks itself done if the allowance ran out mid-layer."""
        if self.done:
            return None, 0
        spent = 0
        nxt: list[Word] = []
        empty = Word.identity()
        for node in self.frontier:
            letters = node.letters
            for inserted in self.insertables:
                for position in range(len(letters) + 1):
                    spent += 1
                    child = free_reduce(
                        Word(letters[:position] + inserted.letters + letters[position:])
                    )
                    if child in self.parents:
                        continue
                    step = DerivationStep(position, inserted)
                    self.parents[child] = (node, step)
                    if child == empty:
                        self.depth += 1
                        return self._derivation(child), spent
                    nxt.append(child)
                    if spent >= step_allowance:
                        self.done = True  # cannot finish this layer within budget
                        return None, spent
        self.frontier = nxt
        self.depth += 1
        if self.depth >= self.max_depth or not nxt:
            self.done = True
        return None, spent


def t1_trivial_search(
    p: Presentation, w: Word, depth: int, max_steps: int = 50_000_000
) -> Optional[tuple[DerivationStep, ...]]:
    """Search for a triviality derivation of at most `depth` insertions.

    Breadth-first over the words reachable from w by inserting any cyclic
    conjugate of any relator or its inverse at any position, freely reducing
    after each insertion.  Returns the step sequence iff the empty word is
    reached; absence within the depth bound is a normal outcome.
    """
    if not free_reduce(w).letters:
        return ()
    bfs = _T1Bfs(p, w, depth)
    remaining = max_steps
    while not bfs.done and remaining > 0:
        derivation, spent = bfs.expand_layer(remaining)
        remaining -= spent
        if derivation is not None:
            return derivation
    return None


@lru_cache(maxsize=128)
def _cached_homs(p: Presentation, degree: int) -> tuple[GroupHomomorphism, ...]:
    return tuple(
        enumerate_homomorphisms(p, degree, limit=max(degree, DEFAULT_HOM_DEGREE_LIMIT))
    )


@lru_cache(maxsize=16)
def _perm_index_tables(degree: int) -> tuple[tuple, dict, tuple]:
    """Index every element of S_degree and tabulate its multiplication, so a
    word image can be folded with integer lookups."""
    perms = tuple(itertools.permutations(range(degree)))
    index = {perm: i for i, perm in enumerate(perms)}
    mul = tuple(
        tuple(index[tuple(q[x] for x in p)] for q in perms) for p in perms
    )
    return perms, index, mul


@lru_cache(maxsize=128)
def _hom_index_tables(p: Presentation, degree: int) -> tuple:
    """Per homomorphism: a tuple over generator ids of (index of the image,
    index of its inverse) in the S_degree element table."""
    _, index, _ = _perm_index_tables(degree)
    return tuple(
        tuple(
            (index[perm.images], index[perm.inverse().images])
            for perm in hom.assignment
        )
        for hom in _cached_homs(p, degree)
    )


_MUL_TABLE_MAX_DEGREE = 5  # the table is |S_n| x |S_n|; beyond 5! it is too big


@lru_cache(maxsize=128)
def _hom_image_tables(p: Presentation, degree: int) -> tuple:
    """Per homomorphism: a tuple over generator ids of (image tuple, inverse
    image tuple), for degrees where the multiplication table is impractical."""
    return tuple(
        tuple((perm.images, perm.inverse().images) for perm in hom.assignment)
        for hom in _cached_homs(p, degree)
    )


def _t2_search_degree(
    p: Presentation, letters: tuple, degree: int, step_allowance: int
) -> tuple[Optional[tuple[GroupHomomorphism, Permutation]], int, bool]:
    """Scan all homomorphisms into S_degree for one whose image of the word is
    not the identity.  Returns (hit, steps spent, completed)."""
    slots = tuple((gen, 0 if sign > 0 else 1) for gen, sign in letters)
    spent = 0
    if degree <= _MUL_TABLE_MAX_DEGREE:
        tables = _hom_index_tables(p, degree)
        perms, _, mul = _perm_index_tables(degree)
        for index, table in enumerate(tables):
            if spent >= step_allowance:
                return None, spent, False
            spent += 1
            current = 0  # identity comes first in lexicographic order
            for gen, slot in slots:
                current = mul[current][table[gen][slot]]
            if current:
                hom = _cached_homs(p, degree)[index]
                return (hom, Permutation(perms[current])), spent, True
        return None, spent, True
    identity = tuple(range(degree))
    for index, table in enumerate(_hom_image_tables(p, degree)):
        if spent >= step_allowance:
            return None, spent, False
        spent += 1
        current = identity
        for gen, slot in slots:
            images = table[gen][slot]
            current = tuple(images[i] for i in current)
        if current != identity:
            hom = _cached_homs(p, degree)[index]
            return (hom, Permutation(current)), spent, True
    return None, spent, True


def t2_nontrivial_search(
    p: Presentation, w: Word, max_degree: int, max_steps: int = 50_000_000
) -> Optional[tuple[GroupHomomorphism, Permutation]]:
    """First homomorphism into S_2, S_3, ..., S_max_degree (in enumeration
    order) under which w has a non-identity image, or None."""
    letters = free_reduce(w).letters
    remaining = max_steps
    for degree in range(T2_FIRST_DEGREE, max_degree + 1):
        hit, spent, completed = _t2_search_degree(p, letters, degree, remaining)
        remaining -= spent
        if hit is not None:
            return hit
        if not completed:
            return None
    return None


def _greedy_shrink(
    p: Presentation, w: Word, max_depth: int
) -> tuple[Optional[tuple[DerivationStep, ...]], bool]:
    """Fast T1 path for free products of cyclic factors.

    Repeatedly finds a same-sign run of length >= the factor order and cancels
    it by inserting the matching relator power.  On this presentation class a
    nonempty trivial word always contains such a run, each insertion is a
    maximal-cancellation move, and the rewriting is confluent, so the search
    is complete: (derivation, True) for trivial words reachable within
    max_depth, (None, True) when the word is certified nontrivial, and
    (None, False) when the class does not apply or the depth ran out.
    """
    orders = cyclic_factor_orders(p)
    if orders is None:
        return None, False
    letters = _reduce_letters(w.letters)
    steps: list[DerivationStep] = []
    while letters:
        n = len(letters)
        found = None
        run_start = 0
        while run_start < n:
            gen, sign = letters[run_start]
            run_end = run_start
            while run_end < n and letters[run_end] == (gen, sign):
                run_end += 1
            k = orders.get(gen)
            if k is not None and run_end - run_start >= k:
                found = (run_start, gen, sign, k)
                break
            run_start = run_end
        if found is None:
            return None, True  # no trivial word lacks a full run: certified nontrivial
        if len(steps) >= max_depth:
            return None, False  # trivial but not certifiable within this depth
        start, gen, sign, k = found
        inserted = tuple((gen, -sign) for _ in range(k))
        steps.append(DerivationStep(start + k, Word(inserted)))
        letters = _reduce_letters(letters[: start + k] + inserted + letters[start + k :])
    return tuple(steps), True


def decide(p: Presentation, w: Word, budget: Budget = Budget()) -> Verdict:
    """Fair alternation of the two semi-decision procedures.

    Iteration k advances T1 by one increment (a complete shrink pass on free
    products of cyclic factors, otherwise one BFS layer) and then runs T2 at
    degree k+1.  The first certificate wins; consuming the whole budget yields
    Exhausted.  Deterministic for a fixed budget, and enlarging the budget can
    only turn Exhausted into a certificate, never flip a certificate.
    """
    steps_used = 0
    current = free_reduce(w)
    if not current.letters:
        return Trivial(())

    t1_bfs: Optional[_T1Bfs] = None
    t1_open = budget.max_t1_depth > 0
    if t1_open:
        derivation, complete = _greedy_shrink(p, current, budget.max_t1_depth)
        if derivation is not None:
            return Trivial(derivation)
        if complete:
            t1_open = False  # certified: no derivation exists at any depth
        else:
            t1_bfs = _T1Bfs(p, current, budget.max_t1_depth)

    letters = current.letters
    t1_depth_reached = 0
    t2_degree_reached = T2_FIRST_DEGREE - 1
    degree = T2_FIRST_DEGREE
    while True:
        progressed = False
        if t1_open and t1_bfs is not None and not t1_bfs.done:
            allowance = budget.max_steps - steps_used
            if allowance <= 0:
                break
            derivation, spent = t1_bfs.expand_layer(allowance)
            steps_used += spent
            t1_depth_reached = t1_bfs.depth
            if derivation is not None:
                return Trivial(derivation)
            progressed = True
        if degree <= budget.max_t2_degree:
            allowance = budget.max_steps - steps_used
            if allowance <= 0:
                break
            hit, spent, completed = _t2_search_degree(p, letters, degree, allowance)
            steps_used += spent
            if hit is not None:
                return Nontrivial(*hit)
            if not completed:
                break
            t2_degree_reached = degree
            degree += 1
            progressed = True
        if not progressed:
            break
    return Exhausted(BudgetUsage(t1_depth_reached, t2_degree_reached, steps_used))
