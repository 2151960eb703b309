"""Differential tests of the engine against slow reference procedures."""

from __future__ import annotations

import logging
import random
from typing import Callable

from .algebra import (
    Letter,
    NCPolynomial,
    Presentation,
    differential,
    hom_violations,
    normal_order,
    normal_order_naive,
    validate_hom,
)
from .catalog import (
    build_c4_theta,
    build_forms_c4,
    build_s7_theta,
    build_sl2h,
    build_sp1,
    j_map,
)
from .coaction import delta_l_images
from .errors import HomomorphismError
from .hopf import antipode_images, coproduct_images, corris_images, counit_images, pi_j_images
from .phase import LAMBDA, MU, MUBAR, ONE, PhaseCoefficient
from .report import CheckRecorder, CheckResult, RunOptions
from .rewriting import RewriteSystem, all_normal_forms

logger = logging.getLogger(__name__)

MAX_WORD = 12
COEFFICIENTS = (ONE, -ONE, MU, MUBAR, LAMBDA, PhaseCoefficient.monomial(0, 2))


def random_word(p: Presentation, rng: random.Random, max_length: int = MAX_WORD) -> list[int]:
    return [rng.randrange(p.size) for _ in range(rng.randint(0, max_length))]


def random_polynomial(
    p: Presentation, rng: random.Random, terms: int = 3, max_degree: int = 3
) -> NCPolynomial:
    f = NCPolynomial.of(p, 0)
    for _ in range(terms):
        word = random_word(p, rng, max_degree)
        f = f + normal_order(p, word, rng.choice(COEFFICIENTS))
    return f  # type: ignore[return-value]


def small_presentations() -> list[Presentation]:
    """Three-letter test algebras: commutative and twisted."""
    letters = [Letter(n) for n in ("x", "y", "z")]
    return [
        Presentation("tri", letters),
        Presentation("tri-twisted", letters, {("x", "y"): 1, ("y", "z"): -2}),
    ]


def random_rules(
    p: Presentation, rng: random.Random, count: int = 3, completion_limit: int = 200
) -> RewriteSystem:
    """Random monomial rules, plus binomials when the algebra is commutative.

    Monomial rules over a twisted algebra are normal, not central.
    """
    commutative = all(not p.phase_exponent(i, j) for i in range(p.size) for j in range(p.size))
    relations = []
    for _ in range(count):
        lead = normal_order(p, random_word(p, rng, 3) or [0])
        if commutative and rng.random() < 0.7:
            relations.append(lead - normal_order(p, random_word(p, rng, 2)))
        else:
            relations.append(lead)
    return RewriteSystem(
        p,
        relations,  # type: ignore[arg-type]
        name=f"random:{p.name}",
        completion_limit=completion_limit,
        allow_normal=not commutative,
    )


def catalog_maps() -> list[tuple[str, Presentation, dict, dict]]:
    """``(name, source, images, flags)`` for every map the suites rely on."""
    sl = build_sl2h()
    return [
        ("coproduct", sl, coproduct_images(sl), {}),
        ("counit", sl, counit_images(sl), {}),
        ("antipode", sl, antipode_images(sl), {"anti": True}),
        ("coaction.c4", build_c4_theta(), delta_l_images(build_c4_theta(), sl), {}),
        ("coaction.forms", build_forms_c4(), delta_l_images(build_forms_c4(), sl), {}),
        ("j", build_c4_theta(), j_map(build_c4_theta()), {"antilinear": True, "anti": True}),
        ("pi_J", sl, pi_j_images(), {}),
        ("corris", sl, corris_images(), {}),
    ]


def check_engine_integrity(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("oracle", options)
    rng = random.Random(options.seed)
    presentations = [build_c4_theta(), build_forms_c4(), build_sl2h(), build_sp1()]
    rec.start()

    for p in presentations:
        mismatches = []
        for _ in range(options.samples):
            word = random_word(p, rng)
            if normal_order(p, word) != normal_order_naive(p, word):
                mismatches.append(" ".join(p.letters[i].name for i in word))
        rec.truth(
            f"oracle.normal-order.{p.name}",
            "exponent-vector normal ordering agrees with adjacent transpositions",
            "normal ordering",
            not mismatches,
            mismatches[0] if mismatches else None,
            samples=options.samples,
            mismatches=len(mismatches),
        )

    for p in presentations:
        anti, assoc = {}, {}
        for k in range(options.samples // 20):
            f, g, h = (random_polynomial(p, rng) for _ in range(3))
            anti[str(k)] = (f * g).star() - g.star() * f.star()
            assoc[str(k)] = (f * g) * h - f * (g * h)
        rec.zeros(
            f"oracle.star.{p.name}",
            "(f g)* = g* f*",
            "star structure",
            anti,
        )
        rec.zeros(
            f"oracle.associative.{p.name}",
            "(f g) h = f (g h)",
            "polynomial arithmetic",
            assoc,
        )

    forms = build_forms_c4()
    leibniz, square = {}, {}
    for k in range(options.samples // 20):
        square[str(k)] = differential(differential(random_polynomial(forms, rng)))
        a, b = (normal_order(forms, random_word(forms, rng, 3)) for _ in range(2))
        parity = _parity(a)
        if parity is None:
            continue
        sign = -1 if parity else 1
        expected = differential(a) * b + (a * differential(b)).scale(sign)
        leibniz[str(k)] = differential(a * b) - expected
    rec.zeros("oracle.differential.square", "d d = 0", "differential calculus", square)
    rec.zeros(
        "oracle.differential.leibniz",
        "d(f g) = d(f) g + (-1)^|f| f d(g)",
        "differential calculus",
        leibniz,
    )

    accepted = {}
    for name, source, images, flags in catalog_maps():
        violations = hom_violations(source, images, **flags)
        accepted[name] = violations[0].residual if violations else ONE - ONE
    rec.zeros(
        "oracle.homomorphism.accept",
        "validation accepts every catalog map",
        "homomorphism validation",
        accepted,
    )
    rec.truth(
        "oracle.homomorphism.reject",
        "validation rejects a corrupted coproduct",
        "homomorphism validation",
        _rejects(lambda: _corrupted_coproduct()),
    )

    sphere = build_s7_theta().rules
    c4 = build_c4_theta()
    idempotent, unique = {}, {}
    for k in range(options.samples // 50):
        f = random_polynomial(c4, rng, terms=2, max_degree=4)
        once = sphere.reduce(f)
        idempotent[str(k)] = sphere.reduce(once) - once
        forms_found = all_normal_forms(f, sphere)  # type: ignore[arg-type]
        if len(forms_found) != 1 or forms_found[0] != once:
            unique[str(k)] = f
    rec.zeros("oracle.reduce.idempotent", "reduce(reduce f) = reduce f", "rewriting", idempotent)
    rec.truth(
        "oracle.reduce.sphere",
        "every rewriting order on the sphere rule ends in the same normal form",
        "rewriting",
        not unique,
        next(iter(unique.values())).to_text() if unique else None,
    )

    for p in small_presentations():
        failures: list[str] = []
        with rec.guard(
            f"oracle.complete.{p.name}",
            "completed random systems reduce independently of rule order",
            "rewriting",
        ):
            for _ in range(options.samples // 100 or 1):
                completed = random_rules(
                    p, rng, completion_limit=options.completion_limit
                ).complete()
                for _ in range(5):
                    f = random_polynomial(p, rng, terms=2, max_degree=4)
                    found = all_normal_forms(f, completed)  # type: ignore[arg-type]
                    if len(found) != 1 or found[0] != completed.reduce(f):
                        failures.append(f"{' ; '.join(completed.describe())} | {f.to_text()}")
            rec.truth(
                f"oracle.complete.{p.name}",
                "completed random systems reduce independently of rule order",
                "rewriting",
                not failures,
                failures[0] if failures else None,
            )
    logger.debug("oracle suite recorded %d checks", len(rec.results))
    return rec.results


def _parity(f: NCPolynomial) -> int | None:
    p = f.presentation
    found = {p.monomial_parity(m) for m, _ in f.monomials()}
    return found.pop() if len(found) == 1 else None


def _corrupted_coproduct() -> None:
    sl = build_sl2h()
    images = dict(coproduct_images(sl))
    images["a1"], images["b1"] = images["b1"], images["a1"]
    validate_hom(sl, images)


def _rejects(action: Callable[[], None]) -> bool:
    try:
        action()
    except HomomorphismError:
        return True
    return False
