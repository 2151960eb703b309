"""Basic instanton, the coacted family of projections and the parameter space.

Every statement about ``P = u~ rho^-2 u~*`` and ``V = rho^-1 A (x) p`` is
checked in denominator-cleared form: ``P' = u~ u~*`` and ``V' = A (x). p``.
"""

from __future__ import annotations

import logging
from functools import cache

from .algebra import (
    NCPolynomial,
    TensorPolynomial,
    commutator,
    differential,
    gens,
    linear_combination,
    phase_between,
)
from .catalog import (
    Z_NAMES,
    build_a,
    build_c4_theta,
    build_forms_c4,
    build_forms_sphere,
    build_p,
    build_s4_generators,
    build_s7_theta,
    build_sl2h,
    build_u,
    eta,
)
from .coaction import delta_l, inflated_generators
from .fixtures import load_fixture
from .hopf import (
    BlockFactorization,
    det_rules,
    determinant,
    gram_matrix,
    sp_unitarity_substitution,
)
from .matrix import AlgebraMatrix
from .parser import parse_expression
from .phase import HALF, LAMBDA
from .report import CheckRecorder, CheckResult, RunOptions
from .rewriting import reduce_with_completion

logger = logging.getLogger(__name__)

BLOCK_NAMES = ("m", "n", "g1", "g2")


# ============================================================================
# Basic instanton
# ============================================================================


@cache
def basic_one_form() -> AlgebraMatrix:
    """``omega_ab = 1/2 sum_k ((u*)_ak d u_kb - d(u*)_ak u_kb)`` over the forms algebra."""
    forms = build_forms_c4()
    u = build_u(forms)
    ustar = u.star()
    du = u.map(differential)
    dustar = ustar.map(differential)
    return AlgebraMatrix.build(
        2,
        2,
        lambda a, b: linear_combination(
            (forms,),
            [(HALF, ustar.at(a, k) * du.at(k, b)) for k in range(1, 5)]
            + [(-HALF, dustar.at(a, k) * u.at(k, b)) for k in range(1, 5)],
        ),
    )


def check_basic_instanton(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("instanton", options)
    c4 = build_c4_theta()
    u = build_u(c4)
    p = build_p(c4)
    sphere = build_s7_theta().rules
    rec.start()

    unitarity = u.star() @ u
    rec.zero(
        "instanton.unitarity.offdiagonal",
        "(u*u)_12 = 0 without the sphere relation",
        "isometry u",
        unitarity.at(1, 2),
        recheck=sphere,
    )
    rec.zeros(
        "instanton.unitarity",
        "u*u = 1 on the 7-sphere",
        "isometry u",
        {
            f"{a}{b}": unitarity.at(a, b) - (1 if a == b else 0)
            for a in (1, 2)
            for b in (1, 2)
        },
        modulo=sphere,
    )
    rec.equalities(
        "instanton.projection.self-adjoint",
        "p* = p",
        "basic projection",
        {f"{i}{j}": (e, p.at(i, j)) for i, j, e in p.star().entries()},
        recheck=sphere,
    )
    square = p @ p
    rec.zeros(
        "instanton.projection.idempotent",
        "p^2 = p on the 7-sphere",
        "basic projection",
        {f"{i}{j}": e for i, j, e in (square - p).entries()},
        modulo=sphere,
    )
    fixture = load_fixture("projection")
    symbols = build_s4_generators(c4)
    rec.equalities(
        "instanton.projection.display",
        "p in terms of r, x, alpha, beta",
        "basic projection",
        {
            f"{i}{j}": (e, parse_expression(fixture[f"p{i}{j}"], c4, symbols))
            for i, j, e in p.entries()
        },
        recheck=sphere,
    )

    omega = basic_one_form()
    rec.equalities(
        "instanton.connection.skew",
        "omega_ab = -(omega_ba)*",
        "basic connection",
        {
            f"{a}{b}": (omega.at(a, b), -omega.at(b, a).star())
            for a in (1, 2)
            for b in (1, 2)
        },
        recheck=build_forms_sphere(),
    )
    trace = omega.trace()
    with rec.guard(
        "instanton.connection.traceless",
        "sum_a omega_aa = 0 modulo the sphere relation and its differential",
        "basic connection",
    ):
        _, rules = reduce_with_completion(
            trace, build_forms_sphere().with_limit(options.completion_limit)
        )
        rec.zero(
            "instanton.connection.traceless",
            "sum_a omega_aa = 0 modulo the sphere relation and its differential",
            "basic connection",
            trace,
            modulo=rules,
        )
    rec.skipped(
        "instanton.curvature.self-dual",
        "the curvature of the Grassmann connection is anti-self-dual",
        "basic connection",
        "needs a Hodge operator on forms",
    )
    rec.skipped(
        "instanton.charge",
        "the instanton has charge 1",
        "basic connection",
        "index pairing argument",
    )
    return rec.results


# ============================================================================
# The coacted family
# ============================================================================


@cache
def transformed_u() -> AlgebraMatrix:
    """``u~ = A (x). u``."""
    return build_a(build_sl2h()).tensor_dot(build_u(build_c4_theta()))


@cache
def family_projection() -> AlgebraMatrix:
    """``P' = u~ u~*``, the family projection times ``rho^2``."""
    ut = transformed_u()
    return ut @ ut.star()


def check_family_projection(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("family", options)
    sl = build_sl2h()
    c4 = build_c4_theta()
    inflated = inflated_generators()
    rho2 = inflated.rho2
    ut = transformed_u()
    pp = family_projection()
    sphere = build_s7_theta().rules
    rec.start()

    norm = ut.star() @ ut
    rec.equalities(
        "family.utnorm",
        "u~* u~ = rho^2 1",
        "normalisation of the transformed isometry",
        {
            f"{a}{b}": (norm.at(a, b), rho2 if a == b else TensorPolynomial.zero((sl, c4)))
            for a in (1, 2)
            for b in (1, 2)
        },
        recheck=sphere,
        leg=1,
    )
    rec.equalities(
        "family.rho.commutes-with-u",
        "[rho^2, u~_ia] = 0",
        "normalisation of the transformed isometry",
        {f"{i}{a}": (rho2 * e, e * rho2) for i, a, e in ut.entries()},
        recheck=sphere,
        leg=1,
    )
    rec.equalities(
        "family.pprime.self-adjoint",
        "P'* = P'",
        "family of projections",
        {f"{i}{j}": (e, pp.at(i, j)) for i, j, e in pp.star().entries()},
        recheck=sphere,
        leg=1,
    )
    square = pp @ pp
    rec.equalities(
        "family.pprime.idempotent",
        "P'^2 = rho^2 P'",
        "family of projections",
        {f"{i}{j}": (square.at(i, j), rho2 * e) for i, j, e in pp.entries()},
        recheck=sphere,
        leg=1,
    )
    fixture = load_fixture("family")
    symbols = inflated.symbols()
    rec.equalities(
        "family.pprime.display",
        "P' in terms of rho^2, x~, alpha~, beta~",
        "family of projections",
        {
            f"{i}{j}": (e, parse_expression(fixture[f"P{i}{j}"], (sl, c4), symbols))
            for i, j, e in pp.entries()
        },
        recheck=sphere,
        leg=1,
    )
    rec.equal(
        "family.pprime.trace",
        "tr P' = 2 rho^2",
        "family of projections",
        pp.trace(),
        rho2.scale(2),
        recheck=sphere,
        leg=1,
    )
    return rec.results


@cache
def partial_isometry() -> AlgebraMatrix:
    """``V'_ik = sum_j A_ij (x) p_jk``."""
    return build_a(build_sl2h()).tensor_dot(build_p(build_c4_theta()))


def check_mvn_equivalence(options: RunOptions) -> list[CheckResult]:
    """Murray-von Neumann equivalence of ``P'`` and ``rho^2 (1 (x) p)``.

    ``mvn.left`` is the identity as displayed, ``V'* V' = rho^2 (1 (x) p)``
    modulo the sphere relation. It needs ``rho^2`` to commute with every
    ``1 (x) z_k``, which ``mvn.rho.commutation`` reports on. ``mvn.left.ordered``
    keeps ``rho^2`` between the two factors of ``p = u u*``.
    """
    rec = CheckRecorder("mvn", options)
    sl = build_sl2h()
    c4 = build_c4_theta()
    rho2 = inflated_generators().rho2
    u = build_u(c4)
    p = build_p(c4)
    one = NCPolynomial.of(sl, 1)
    sphere = build_s7_theta().rules
    v = partial_isometry()
    pp = family_projection()
    rec.start()

    z = gens(c4)
    commutators = {name: commutator(rho2, one @ z[name]) for name in Z_NAMES}
    noncommuting = sorted(name for name, r in commutators.items() if r)
    logger.debug("rho^2 fails to commute with %s", noncommuting)

    left = v.star() @ v
    rec.equalities(
        "mvn.left",
        "V'* V' = rho^2 (1 (x) p) on the 7-sphere",
        "Murray-von Neumann equivalence",
        {f"{k}{l}": (e, rho2 * (one @ p.at(k, l))) for k, l, e in left.entries()},
        modulo=sphere,
        leg=1,
        noncommuting=noncommuting,
    )
    ordered = {}
    for k, l, e in left.entries():
        sandwich = linear_combination(
            (sl, c4),
            ((1, (one @ u.at(k, a)) * rho2 * (one @ u.star().at(a, l))) for a in (1, 2)),
        )
        ordered[f"{k}{l}"] = (e, sandwich)
    rec.equalities(
        "mvn.left.ordered",
        "V'* V' = (1 (x) u) rho^2 (1 (x) u*), mvn.left with rho^2 kept in place",
        "Murray-von Neumann equivalence",
        ordered,
        recheck=sphere,
        leg=1,
        see="mvn.rho.commutation",
    )

    right = v @ v.star()
    rec.equalities(
        "mvn.right",
        "V' V'* = P' on the 7-sphere",
        "Murray-von Neumann equivalence",
        {f"{i}{j}": (e, pp.at(i, j)) for i, j, e in right.entries()},
        modulo=sphere,
        leg=1,
    )
    rec.truth(
        "mvn.rho.commutation",
        "[rho^2, 1 (x) z_k] computed for k = 1..4",
        "Murray-von Neumann equivalence",
        True,
        None,
        commutes_with=[n for n in Z_NAMES if n not in noncommuting],
        noncommuting=noncommuting,
    )
    return rec.results


# ============================================================================
# Sp(2) invariance of the connection
# ============================================================================


def check_omega_invariance(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("family", options)
    sl = build_sl2h()
    forms = build_forms_c4()
    omega = basic_one_form()
    u = build_u(forms)
    ustar = u.star()
    du = u.map(differential)
    dustar = ustar.map(differential)
    one = NCPolynomial.of(sl, 1)
    rec.start()

    transformed = AlgebraMatrix.build(2, 2, lambda a, b: delta_l(omega.at(a, b)))
    factorized, substituted = {}, {}
    for a, b, e in transformed.entries():
        form = BlockFactorization(
            {
                (i, j): ustar.at(a, i) * du.at(j, b) - dustar.at(a, i) * u.at(j, b)
                for i in range(1, 5)
                for j in range(1, 5)
            },
            HALF,
        )
        factorized[f"{a}{b}"] = (e, form.expand())
        substituted[f"{a}{b}"] = (sp_unitarity_substitution(form), one @ omega.at(a, b))
    rec.equalities(
        "family.omega.factorization",
        "Delta_L(omega_ab) = 1/2 sum_ij (A*A)_ij (x) ((u*)_ai du_jb - d(u*)_ai u_jb)",
        "invariance of the basic connection",
        factorized,
    )
    rec.equalities(
        "family.omega.symplectic",
        "with (A*A)_ij -> delta_ij, Delta_L(omega_ab) = 1 (x) omega_ab",
        "invariance of the basic connection",
        substituted,
    )
    rec.equalities(
        "family.omega.skew",
        "omega~_ab = -(omega~_ba)*",
        "invariance of the basic connection",
        {f"{a}{b}": (e, -transformed.at(b, a).star()) for a, b, e in transformed.entries()},
    )
    rec.zero(
        "family.omega.traceless",
        "sum_a omega~_aa = 0 modulo the differential sphere ideal",
        "invariance of the basic connection",
        transformed.trace(),
        modulo=build_forms_sphere(),
        leg=1,
    )
    return rec.results


# ============================================================================
# Parameter space M_theta
# ============================================================================


@cache
def block_generators() -> dict[str, TensorPolynomial]:
    """``m``, ``n``, ``g1``, ``g2`` read from the reference display."""
    sl = build_sl2h()
    fixture = load_fixture("mtheta")
    return {name: parse_expression(fixture[name], sl) for name in BLOCK_NAMES}


@cache
def m_matrix() -> AlgebraMatrix:
    """``M = A* A``."""
    return gram_matrix()


def check_m_theta(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("mtheta", options)
    sl = build_sl2h()
    c4 = build_c4_theta()
    blocks = block_generators()
    m, n, g1, g2 = (blocks[k] for k in BLOCK_NAMES)
    mm = m_matrix()
    det = determinant(sl)
    rec.start()

    fixture = load_fixture("mtheta")
    rec.zeros(
        "mtheta.matrix",
        "A*A has the block pattern (m, 0, g1, g2*; 0, m, -mubar g2, mu g1*; ...)",
        "parameter space",
        {
            f"{i}{j}": e - parse_expression(fixture[f"M{i}{j}"], sl, blocks)
            for i, j, e in mm.entries()
        },
    )
    rec.zeros(
        "mtheta.generators",
        "m = M11, n = M33, g1 = M13, g2 = M41",
        "parameter space",
        {
            "m": m - mm.at(1, 1),
            "n": n - mm.at(3, 3),
            "g1": g1 - mm.at(1, 3),
            "g2": g2 - mm.at(4, 1),
        },
    )
    rec.zeros(
        "mtheta.hermitian",
        "m = m*, n = n*",
        "parameter space",
        {"m": m - m.star(), "n": n - n.star()},
    )

    subalgebra = {"m": m, "n": n, "g1": g1, "g2": g2, "g1*": g1.star(), "g2*": g2.star()}
    central = {}
    for name, c in (("m", m), ("n", n)):
        for other, x in subalgebra.items():
            central[f"[{name},{other}]"] = commutator(c, x)
    rec.zeros(
        "mtheta.central",
        "m and n commute with m, n, g1, g2 and their stars",
        "parameter space",
        central,
    )
    rec.zeros(
        "mtheta.normal",
        "g1 and g2 are normal",
        "parameter space",
        {"g1": commutator(g1, g1.star()), "g2": commutator(g2, g2.star())},
    )
    rec.zeros(
        "mtheta.relations",
        "g1 g2 = mu^2 g2 g1 and g1 g2* = mubar^2 g2* g1",
        "parameter space",
        {
            "g1g2": g1 * g2 - (g2 * g1).scale(LAMBDA),
            "g1g2*": g1 * g2.star() - (g2.star() * g1).scale(LAMBDA.conj()),
        },
    )
    norm = g1.star() * g1 + g2.star() * g2
    rec.zeros(
        "mtheta.norm.central",
        "g1* g1 + g2* g2 commutes with m, n, g1, g2 and their stars",
        "parameter space",
        {name: commutator(norm, x) for name, x in subalgebra.items()},
    )
    hyperboloid = m * n - norm
    rec.equal(
        "mtheta.hyperboloid",
        "m n - (g1* g1 + g2* g2) = det",
        "hyperboloid relation",
        hyperboloid,
        det,
    )
    rec.zero(
        "mtheta.hyperboloid.reduced",
        "m n - (g1* g1 + g2* g2) = 1 modulo det - 1",
        "hyperboloid relation",
        hyperboloid - 1,
        modulo=det_rules(),
    )

    p = build_p(c4)
    pairing = linear_combination(
        (sl, c4),
        (
            (HALF * eta(i, j), mm.at(i, j) @ p.at(j, i))
            for i in range(1, 5)
            for j in range(1, 5)
        ),
    )
    rec.equal(
        "mtheta.rho.pairing",
        "rho^2 = 1/2 sum_ij eta_ij M_ij (x) p_ji",
        "inflated radius",
        inflated_generators().rho2,
        pairing,
    )
    return rec.results


def check_boundary(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("boundary", options)
    c4 = build_c4_theta()
    blocks = block_generators()
    m, n, g1, g2 = (blocks[k] for k in BLOCK_NAMES)
    det = determinant()
    w = (m + n).scale(HALF)
    y = (m - n).scale(HALF)
    norm = g1.star() * g1 + g2.star() * g2
    rec.start()

    rec.equal(
        "boundary.squares",
        "w^2 - y^2 = m n",
        "boundary of the parameter space",
        w * w - y * y,
        m * n,
    )
    relation = w * w - (y * y + norm)
    rec.equal(
        "boundary.hyperboloid",
        "w^2 - (y^2 + g1* g1 + g2* g2) = det",
        "boundary of the parameter space",
        relation,
        det,
    )
    rec.zero(
        "boundary.hyperboloid.reduced",
        "w^2 - (y^2 + g1* g1 + g2* g2) = 1 modulo det - 1",
        "boundary of the parameter space",
        relation - 1,
        modulo=det_rules(),
    )

    s4 = build_s4_generators(c4)
    boundary = {"y": y, "g1": g1, "g1*": g1.star(), "g2": g2, "g2*": g2.star()}
    sphere = {
        "y": s4["x"],
        "g1": s4["alpha"],
        "g1*": s4["alpha"].star(),
        "g2": s4["beta"],
        "g2*": s4["beta"].star(),
    }
    names = list(boundary)
    table = {}
    mismatches = []
    for k, left in enumerate(names):
        for right in names[k + 1 :]:
            found = phase_between(boundary[left], boundary[right])
            expected = phase_between(sphere[left], sphere[right])
            table[f"{left},{right}"] = found.to_text() if found is not None else None
            if found is None or found != expected:
                mismatches.append(f"{left},{right}")
    rec.truth(
        "boundary.phases",
        "(y, g1, g2) carry the commutation phases of (x, alpha, beta)",
        "boundary of the parameter space",
        not mismatches,
        ", ".join(mismatches),
        phases=table,
    )
    rec.truth(
        "boundary.phases.example",
        "g1 g2 = lambda g2 g1, as alpha beta = lambda beta alpha",
        "boundary of the parameter space",
        phase_between(g1, g2) == LAMBDA == phase_between(s4["alpha"], s4["beta"]),
    )
    rec.skipped(
        "boundary.stereographic",
        "Y^2 + G1* G1 + G2* G2 = 1 for Y = y/w, G = g/w",
        "boundary of the parameter space",
        "sphere relation modulo the central symbol w^-2; no localisation is performed",
    )
    return rec.results


__all__ = [
    "basic_one_form",
    "block_generators",
    "check_basic_instanton",
    "check_boundary",
    "check_family_projection",
    "check_m_theta",
    "check_mvn_equivalence",
    "check_omega_invariance",
    "family_projection",
    "m_matrix",
    "partial_isometry",
    "transformed_u",
]
