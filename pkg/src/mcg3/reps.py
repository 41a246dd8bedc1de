"""Finite-dimensional unitary representation analysis.

Built for the mapping-class group of the double projective-space sum, whose
presentation is the free product of two order-two groups: relation checking,
commutant-based irreducibility, the central element formed by the symmetrized
product of the two involutions, the full unitary-dual catalog, and
exchange-sector labeling.

The catalog covers the four one-dimensional representations and the
one-parameter two-dimensional family on the open angle interval (0, pi).  At
the endpoints the family degenerates: the commutant dimension jumps to 2 and
the representation splits into two of the one-dimensional entries (which pair
is a gauge choice; this module reports the computed decomposition and makes no
further claim).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import (
    DimensionMismatch,
    NotInvolution,
    SpecValidationError,
    UnknownGenerator,
    WrongPresentation,
)
from .words import Presentation, Word, presentation

DEFAULT_TOLERANCE = 1e-9


@dataclass
class MatrixRep:
    """Unitary matrix per generator id, with a comparison tolerance."""

    dimension: int
    assignment: tuple[np.ndarray, ...]
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self) -> None:
        if self.tolerance < 0:
            raise SpecValidationError("tolerance must be >= 0")
        frozen = []
        eye = np.eye(self.dimension)
        for index, matrix in enumerate(self.assignment):
            arr = np.asarray(matrix, dtype=complex)
            if arr.shape != (self.dimension, self.dimension):
                raise DimensionMismatch(
                    f"matrix {index} has shape {arr.shape}, expected "
                    f"({self.dimension}, {self.dimension})"
                )
            if not np.allclose(arr.conj().T @ arr, eye, atol=max(self.tolerance, 1e-12)):
                raise SpecValidationError(f"matrix {index} is not unitary within tolerance")
            arr.flags.writeable = False
            frozen.append(arr)
        self.assignment = tuple(frozen)

    def image_of(self, gen_id: int) -> np.ndarray:
        if gen_id >= len(self.assignment):
            raise UnknownGenerator(f"no matrix assigned for generator id {gen_id}")
        return self.assignment[gen_id]

    def word_image(self, w: Word) -> np.ndarray:
        out = np.eye(self.dimension, dtype=complex)
        for gen, sign in w.letters:
            matrix = self.image_of(gen)
            out = out @ (matrix if sign > 0 else matrix.conj().T)
        return out


class SectorLabel(enum.Enum):
    BOSONIC = "bosonic"
    FERMIONIC = "fermionic"
    MIXED = "mixed"


def verify_relations(r: MatrixRep, p: Presentation) -> bool:
    """True iff every relator's matrix product is the identity within the
    representation's tolerance."""
    if len(r.assignment) < p.rank:
        raise UnknownGenerator("assignment does not cover every generator")
    eye = np.eye(r.dimension)
    return all(
        np.allclose(r.word_image(rel), eye, atol=max(r.tolerance, 1e-12))
        for rel in p.relators
    )


def commutant_dimension(r: MatrixRep) -> int:
    """Dimension of {X : XA = AX for every assigned A}, via the singular
    values of the stacked Sylvester operators.  1 means irreducible."""
    d = r.dimension
    eye = np.eye(d)
    blocks = [np.kron(a.T, eye) - np.kron(eye, a) for a in r.assignment]
    if not blocks:
        return d * d
    stacked = np.vstack(blocks)
    singular = np.linalg.svd(stacked, compute_uv=False)
    threshold = max(r.tolerance, 1e-12) * max(1.0, float(singular.max(initial=0.0)))
    return int(np.sum(singular < threshold))


def _is_two_involution_presentation(p: Presentation) -> bool:
    if p.rank != 2 or len(p.relators) != 2:
        return False
    squared = set()
    for rel in p.relators:
        gens = {g for g, _ in rel.letters}
        signs = {s for _, s in rel.letters}
        if len(rel.letters) != 2 or len(gens) != 1 or len(signs) != 1:
            return False
        squared.add(next(iter(gens)))
    return squared == {0, 1}


def central_element_scalar(r: MatrixRep, p: Presentation) -> Optional[complex]:
    """Scalar of the central element wm + mw for the free product of two
    order-two groups (w, m the two generator images).

    Returns the scalar when the element is a multiple of the identity within
    tolerance, None otherwise; a non-scalar value certifies reducibility.
    """
    if not _is_two_involution_presentation(p):
        raise WrongPresentation("expected exactly <x, y : x^2 = y^2 = 1>")
    if not verify_relations(r, p):
        raise SpecValidationError("representation does not satisfy the relators")
    w, m = r.assignment[0], r.assignment[1]
    central = w @ m + m @ w
    scalar = complex(np.trace(central)) / r.dimension
    if np.allclose(central, scalar * np.eye(r.dimension), atol=max(r.tolerance, 1e-12)):
        return scalar
    return None


def sector_analysis(r: MatrixRep, exchange_generator: int) -> SectorLabel:
    """Eigenvalue structure of the exchange image: all +1 bosonic, all -1
    fermionic, both mixed."""
    matrix = r.image_of(exchange_generator)
    tol = max(r.tolerance, 1e-12)
    if not np.allclose(matrix @ matrix, np.eye(r.dimension), atol=tol):
        raise NotInvolution("exchange image does not square to the identity")
    eigenvalues = np.linalg.eigvals(matrix)
    plus = np.isclose(eigenvalues, 1.0, atol=1e-6)
    minus = np.isclose(eigenvalues, -1.0, atol=1e-6)
    if not np.all(plus | minus):
        raise NotInvolution("involution image must have eigenvalues +-1")
    if np.all(plus):
        return SectorLabel.BOSONIC
    if np.all(minus):
        return SectorLabel.FERMIONIC
    return SectorLabel.MIXED


@dataclass(frozen=True)
class UIRCatalogEntry:
    """One unitary irreducible representation, or a parameterized family."""

    name: str
    dimension: int
    build: Callable[..., MatrixRep] = field(compare=False)
    parameter_domain: Optional[tuple[float, float]] = None  # open interval

    def construct(self, parameter: Optional[float] = None) -> MatrixRep:
        if self.parameter_domain is None:
            return self.build()
        if parameter is None:
            raise SpecValidationError(f"{self.name} needs a parameter")
        low, high = self.parameter_domain
        if not low < parameter < high:
            raise SpecValidationError(
                f"{self.name} parameter must lie in the open interval ({low}, {high})"
            )
        return self.build(parameter)


def exchange_slide_presentation() -> Presentation:
    """<omega, mu : omega^2 = mu^2 = 1>, the group the catalog is built for."""
    return presentation(["omega", "mu"], ["omega omega", "mu mu"])


def _one_dim(eps_omega: int, eps_mu: int) -> Callable[[], MatrixRep]:
    def build() -> MatrixRep:
        return MatrixRep(
            1,
            (
                np.array([[eps_omega]], dtype=complex),
                np.array([[eps_mu]], dtype=complex),
            ),
        )

    return build


def angle_family_rep(tau: float, tolerance: float = DEFAULT_TOLERANCE) -> MatrixRep:
    """Two-dimensional member at angle tau: the exchange image is diag(1,-1)
    and the slide image is the reflection at angle tau."""
    omega = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    mu = np.array(
        [[math.cos(tau), math.sin(tau)], [math.sin(tau), -math.cos(tau)]], dtype=complex
    )
    return MatrixRep(2, (omega, mu), tolerance=tolerance)


def classify_uirs_z2_star_z2() -> list[UIRCatalogEntry]:
    """The full unitary dual of the free product of two order-two groups:
    four one-dimensional entries and the reflection family on (0, pi).

    Inequivalent family members are separated by the conjugation-invariant
    trace of the product of the two images (twice the cosine of the angle).
    The boundary angles are excluded: there the family is reducible.
    """
    entries = [
        UIRCatalogEntry("rho1", 1, _one_dim(1, 1)),
        UIRCatalogEntry("rho2", 1, _one_dim(1, -1)),
        UIRCatalogEntry("rho3", 1, _one_dim(-1, 1)),
        UIRCatalogEntry("rho4", 1, _one_dim(-1, -1)),
        UIRCatalogEntry("rho_tau", 2, angle_family_rep, parameter_domain=(0.0, math.pi)),
    ]
    return entries


def one_dimensional_scan() -> list[MatrixRep]:
    """Every one-dimensional unitary representation, found exhaustively.

    A unit-modulus scalar squaring to one is +1 or -1 exactly, so the scan
    assembles all sign pairs and keeps those passing the relation check."""
    pres = exchange_slide_presentation()
    reps = []
    for eps_omega in (1, -1):
        for eps_mu in (1, -1):
            rep = MatrixRep(
                1,
                (
                    np.array([[eps_omega]], dtype=complex),
                    np.array([[eps_mu]], dtype=complex),
                ),
            )
            if verify_relations(rep, pres):
                reps.append(rep)
    return reps
