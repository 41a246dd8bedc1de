"""Endpoint handlers: one function per analysis command.

The FastAPI routes and the CLI both call these directly, so every consumer
sees identical payloads.  Domain errors propagate as package exceptions; the
transport layers translate them (HTTP 422, CLI exit status 2).
"""

from __future__ import annotations

import random

import numpy as np

from .. import decider, manifolds, mcg, reps
from ..errors import Mcg3Error, NotCataloged, SpecValidationError
from ..permgroups import enumerate_homomorphisms
from ..words import Presentation, abelianization, presentation_from_json, presentation_to_json
from . import schemas


def classify_lens(req: schemas.LensClassifyRequest) -> schemas.LensClassifyResponse:
    mcg_names = [manifolds.lens_mcg(req.p, req.q).value]
    homeo = homotopy = None
    if req.q_prime is not None:
        mcg_names.append(manifolds.lens_mcg(req.p, req.q_prime).value)
        homeo = manifolds.lens_homeomorphic(req.p, req.q, req.q_prime)
        homotopy = manifolds.lens_homotopy_equivalent(req.p, req.q, req.q_prime)
    return schemas.LensClassifyResponse(
        p=req.p,
        q=req.q,
        q_prime=req.q_prime,
        mcg=mcg_names,
        homeomorphic=homeo,
        homotopy_equivalent=homotopy,
    )


def _parse_sum(primes: list[dict]) -> manifolds.ConnectedSum:
    return manifolds.sum_from_json({"primes": primes})


def analyze_manifold(req: schemas.ManifoldRequest) -> schemas.ManifoldAnalysis:
    s = _parse_sum(req.primes)
    pres = manifolds.fundamental_group_sum(s)
    warnings: list[str] = []
    hendriks: list[bool | None] = []
    for i, pr in enumerate(s.primes):
        try:
            hendriks.append(manifolds.in_hendriks_list(pr))
        except NotCataloged as exc:
            hendriks.append(None)
            warnings.append(f"primes[{i}]: {exc}")
    abelian = abelianization(pres)
    return schemas.ManifoldAnalysis(
        counts={
            "total": s.total,
            "irreducible": s.irreducible_count,
            "handles": s.handle_count,
            "spinorial": s.spinorial_count,
        },
        species=[list(group) for group in s.species],
        pi1=presentation_to_json(pres),
        abelianization=schemas.AbelianizationOut(
            free_rank=abelian.free_rank, torsion_factors=list(abelian.torsion_factors)
        ),
        spinorial=manifolds.is_spinorial_sum(s),
        extension=manifolds.extension_type(s).value,
        kernel_rank=manifolds.kernel_rank(s),
        hendriks_per_prime=hendriks,
        hendriks_all=(None if any(h is None for h in hendriks) else all(hendriks)),
        warnings=warnings,
    )


def _generator_out(gen, s) -> schemas.GeneratorOut:
    kind = mcg._VARIANT_NAMES[type(gen)]
    indices = {k: v for k, v in gen.__dict__.items()}
    return schemas.GeneratorOut(
        kind=kind, label=mcg.generator_label(gen, s), indices=indices
    )


def build_mcg(req: schemas.BuildMcgRequest) -> schemas.BuildMcgResponse:
    s = _parse_sum(req.primes)
    pres = manifolds.fundamental_group_sum(s)
    gens = mcg.enumerate_generators(s)
    warnings = [
        f"primes[{i}]: internal mapping class group not cataloged; "
        "internal generators omitted"
        for i in gens.internal_unknown
    ]
    report = mcg.decompose_semidirect(s)
    automorphisms = None
    if req.emit_automorphisms:
        automorphisms = {}
        for gen in gens.generators:
            label = mcg.generator_label(gen, s)
            try:
                action = mcg.induced_automorphism(gen, pres)
            except NotCataloged as exc:
                warnings.append(f"{label}: {exc}")
                continue
            automorphisms[label] = {
                pres.label_of(g): pres.word_str(w) or "1" for g, w in sorted(action.items())
            }
    presentation_json = None
    three_gen = None
    if req.emit_presentation:
        try:
            presentation_json = presentation_to_json(mcg.mcg_presentation(s))
        except (Mcg3Error, NotCataloged) as exc:
            warnings.append(f"presentation: {exc}")
        if mcg._is_two_rp3(s):
            three_gen = presentation_to_json(mcg.two_rp3_three_generator_presentation())
    return schemas.BuildMcgResponse(
        generators=[_generator_out(g, s) for g in gens.generators],
        counts=gens.counts,
        internal_unknown=list(gens.internal_unknown),
        kernel_rank=manifolds.kernel_rank(s),
        extension=manifolds.extension_type(s).value,
        semidirect=schemas.SemidirectOut(
            splits=report.splits,
            slide_generators=[mcg.generator_label(g, s) for g in report.slide_generators],
            particle_generators=[
                mcg.generator_label(g, s) for g in report.particle_generators
            ],
            particle_group_order=report.particle_group_order,
        ),
        pi1=presentation_to_json(pres),
        automorphisms=automorphisms,
        presentation=presentation_json,
        three_generator_presentation=three_gen,
        warnings=warnings,
    )


def decide_word(req: schemas.DecideWordRequest) -> schemas.DecideWordResponse:
    pres = presentation_from_json(req.presentation)
    word = pres.parse_word(req.word)
    budget = decider.Budget(
        max_t1_depth=req.depth, max_t2_degree=req.degree, max_steps=req.max_steps
    )
    verdict = decider.decide(pres, word, budget)
    if isinstance(verdict, decider.Trivial):
        return schemas.DecideWordResponse(
            verdict="trivial",
            word=req.word,
            derivation=[
                schemas.DerivationStepOut(
                    position=step.position,
                    insert=[
                        pres.label_of(g) if sign > 0 else f"{pres.label_of(g)}^-1"
                        for g, sign in step.inserted.letters
                    ],
                )
                for step in verdict.derivation
            ],
        )
    if isinstance(verdict, decider.Nontrivial):
        hom = verdict.witness
        return schemas.DecideWordResponse(
            verdict="nontrivial",
            word=req.word,
            witness=schemas.WitnessOut(
                degree=hom.target.degree,
                assignment={
                    pres.label_of(g.id): list(hom.assignment[g.id].images)
                    for g in pres.generators
                },
                image=list(verdict.image.images),
                image_order=verdict.image.order(),
            ),
        )
    usage = verdict.budget_used
    return schemas.DecideWordResponse(
        verdict="exhausted",
        word=req.word,
        budget_used=schemas.BudgetUsedOut(
            t1_depth=usage.t1_depth, t2_degree=usage.t2_degree, steps=usage.steps
        ),
    )


def enumerate_homs(req: schemas.EnumerateHomsRequest) -> schemas.EnumerateHomsResponse:
    pres = presentation_from_json(req.presentation)
    homs = enumerate_homomorphisms(pres, req.degree)
    return schemas.EnumerateHomsResponse(
        degree=req.degree,
        count=len(homs),
        homomorphisms=[
            {
                pres.label_of(g.id): list(hom.assignment[g.id].images)
                for g in pres.generators
            }
            for hom in homs
        ],
    )


def _complex_out(value: complex) -> list[float]:
    return [float(value.real), float(value.imag)]


def _matrix_out(matrix: np.ndarray) -> list:
    return [[_complex_out(complex(entry)) for entry in row] for row in matrix]


def _entry_out(
    name: str,
    rep: reps.MatrixRep,
    pres: Presentation,
    parameter: float | None = None,
) -> schemas.RepEntryOut:
    verified = reps.verify_relations(rep, pres)
    return schemas.RepEntryOut(
        name=name,
        dimension=rep.dimension,
        parameter=parameter,
        matrices={
            pres.label_of(i): _matrix_out(m) for i, m in enumerate(rep.assignment)
        },
        sector=reps.sector_analysis(rep, 0).value,
        central_scalar=(
            _complex_out(value)
            if (value := reps.central_element_scalar(rep, pres)) is not None
            else None
        ),
        commutant_dimension=reps.commutant_dimension(rep),
        verified=verified,
    )


def classify_reps(req: schemas.ClassifyRepsRequest) -> schemas.ClassifyRepsResponse:
    if req.target != "rp3-sum":
        raise SpecValidationError(
            f"unknown representation target {req.target!r}; only 'rp3-sum' is cataloged"
        )
    if req.samples < 1:
        raise SpecValidationError("samples must be >= 1")
    pres = reps.exchange_slide_presentation()
    rng = random.Random(req.seed)
    entries: list[schemas.RepEntryOut] = []
    one_dim = 0
    for entry in reps.classify_uirs_z2_star_z2():
        if entry.parameter_domain is None:
            one_dim += 1
            rep = entry.construct()
            rep.tolerance = req.tolerance
            entries.append(_entry_out(entry.name, rep, pres))
        else:
            low, high = entry.parameter_domain
            width = high - low
            taus = sorted(
                low + width * (0.02 + 0.96 * rng.random()) for _ in range(req.samples)
            )
            for tau in taus:
                rep = entry.construct(tau)
                rep.tolerance = req.tolerance
                entries.append(_entry_out(f"{entry.name}", rep, pres, parameter=tau))
    return schemas.ClassifyRepsResponse(
        target=req.target,
        group=presentation_to_json(pres),
        one_dimensional_count=one_dim,
        entries=entries,
    )
