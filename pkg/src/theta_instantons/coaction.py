"""Left coaction of deformed SL(2,H) on C^4, the spheres and their forms.

The coaction is ``u -> A (x). u`` on the matrix ``u`` of sphere
coordinates. The quadratic elements ``X = (r, x, alpha, alpha*, beta, beta*)``
transform through the 6x6 matrix ``C`` which lands in the SO(5,1) layer.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, lru_cache
from itertools import product
from typing import Optional

import sympy

from .algebra import (
    NCPolynomial,
    Presentation,
    TensorPolynomial,
    apply_hom,
    commutator,
    differential,
    gens,
    hom_violations,
    leg_collect,
    linear_combination,
    phase_between,
)
from .catalog import (
    U_ENTRIES,
    Z_NAMES,
    build_a,
    build_c4_theta,
    build_forms_c4,
    build_s4_generators,
    build_s7_theta,
    build_sl2h,
    build_sl2h_free,
    build_u,
    eta,
    j_map,
    position_of,
)
from .fixtures import load_fixture
from .hopf import BlockFactorization, det_rules, determinant, sp_unitarity_substitution
from .matrix import AlgebraMatrix
from .parser import Evaluator, Node, parse_expression, parse_tree
from .phase import HALF, LAMBDA, MU, MUBAR, ONE, ZERO, PhaseCoefficient
from .report import CheckRecorder, CheckResult, RunOptions

logger = logging.getLogger(__name__)

MU_SYMBOL = sympy.Symbol("mu")

X_NAMES = ("r", "x", "alpha", "alpha*", "beta", "beta*")

# Capital index I -> minor (i, j) of u.
MINOR_INDEX = ((1, 2), (3, 4), (1, 4), (2, 3), (1, 3), (2, 4))

# 2 * g, the metric of signature (5,1) on X.
G_UPPER = (
    (-2, 0, 0, 0, 0, 0),
    (0, 2, 0, 0, 0, 0),
    (0, 0, 0, 1, 0, 0),
    (0, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 1),
    (0, 0, 0, 0, 1, 0),
)

# 2 * h, the metric on the minors Y.
H_UPPER = (
    (ZERO, ONE, ZERO, ZERO, ZERO, ZERO),
    (ONE, ZERO, ZERO, ZERO, ZERO, ZERO),
    (ZERO, ZERO, ZERO, MU, ZERO, ZERO),
    (ZERO, ZERO, MU, ZERO, ZERO, ZERO),
    (ZERO, ZERO, ZERO, ZERO, ZERO, -MUBAR),
    (ZERO, ZERO, ZERO, ZERO, -MUBAR, ZERO),
)

# X = T Y
T_MATRIX = (
    (1, 1, 0, 0, 0, 0),
    (1, -1, 0, 0, 0, 0),
    (0, 0, 2, 0, 0, 0),
    (0, 0, 0, MU * -2, 0, 0),
    (0, 0, 0, 0, -2, 0),
    (0, 0, 0, 0, 0, MUBAR * -2),
)

# nu_ij = 1 except these entries.
NU_ENTRIES = {
    (3, 5): LAMBDA,
    (4, 6): LAMBDA,
    (5, 4): LAMBDA,
    (6, 3): LAMBDA,
    (3, 6): LAMBDA.conj(),
    (4, 5): LAMBDA.conj(),
    (5, 3): LAMBDA.conj(),
    (6, 4): LAMBDA.conj(),
}


# X slot of the star of X_j.
_STAR_SLOT = {1: 1, 2: 2, 3: 4, 4: 3, 5: 6, 6: 5}


def nu(i: int, j: int) -> PhaseCoefficient:
    return NU_ENTRIES.get((i, j), ONE)


# ============================================================================
# The coaction
# ============================================================================


@lru_cache(maxsize=None)
def delta_l_images(target: Presentation, sl: Presentation) -> dict[str, TensorPolynomial]:
    """Images of the coordinate letters of ``target`` over ``(sl, target)``.

    On a presentation of forms the ``d`` letters map to ``(id (x) d)`` of
    the image of the coordinate they differentiate.
    """
    a = build_a(sl)
    u = build_u(target)
    images: dict[str, TensorPolynomial] = {}
    for name in (*Z_NAMES, *(f"{n}*" for n in Z_NAMES)):
        i, col, sign = position_of(U_ENTRIES, name)
        images[name] = linear_combination(
            (sl, target), ((sign, a.at(i, k) @ u.at(k, col)) for k in range(1, 5))
        )
    if target.d_map:
        for source, image in list(images.items()):
            d_letter = target.letters[target.d_map[target.index(source)]].name
            images[d_letter] = differential(image, 1)
    return images


def delta_l(
    f: TensorPolynomial,
    leg: int = 0,
    *,
    sl: Optional[Presentation] = None,
    sphere: bool = False,
) -> TensorPolynomial:
    """Coact on leg ``leg`` of ``f``; ``sphere`` reduces the new coordinate leg on S^7."""
    sl = sl if sl is not None else build_sl2h()
    result = apply_hom(f, delta_l_images(f.legs[leg], sl), leg)
    if sphere:
        result = build_s7_theta().rules.reduce(result, leg + 1)  # type: ignore[arg-type]
    return result  # type: ignore[return-value]


def minor(u: AlgebraMatrix, i: int, j: int) -> TensorPolynomial:
    """``pi_ij = u_i1 u_j2 - u_i2 u_j1``."""
    return u.at(i, 1) * u.at(j, 2) - u.at(i, 2) * u.at(j, 1)


def a_minor(a: AlgebraMatrix, i: int, j: int, l: int, s: int) -> TensorPolynomial:
    """``m_ij^ls = A_il A_js - eta_ls A_is A_jl``."""
    return a.at(i, l) * a.at(j, s) - (a.at(i, s) * a.at(j, l)).scale(eta(l, s))


# ============================================================================
# Inflated spheres and SO(5,1) data
# ============================================================================


@dataclass(frozen=True)
class InflatedGenerators:
    w: dict[str, TensorPolynomial]
    xt: TensorPolynomial
    at: TensorPolynomial
    bt: TensorPolynomial
    rho2: TensorPolynomial

    def symbols(self) -> dict[str, TensorPolynomial]:
        return {"xt": self.xt, "at": self.at, "bt": self.bt, "rho2": self.rho2, **self.w}


@cache
def inflated_generators() -> InflatedGenerators:
    c4 = build_c4_theta()
    z = gens(c4)
    s4 = build_s4_generators(c4)
    w = {name: delta_l(z[name]) for name in (*Z_NAMES, *(f"{n}*" for n in Z_NAMES))}
    radius = sum((z[f"{n}*"] * z[n] for n in Z_NAMES), NCPolynomial.of(c4, 0))
    rho2 = delta_l(radius)
    logger.debug("inflated radius has %d terms", len(rho2))
    return InflatedGenerators(
        w=w,
        xt=delta_l(s4["x"]),
        at=delta_l(s4["alpha"]),
        bt=delta_l(s4["beta"]),
        rho2=rho2,
    )


def _scalar(value) -> PhaseCoefficient:
    return PhaseCoefficient.coerce(value)


def _to_sympy(rows) -> sympy.Matrix:
    return sympy.Matrix([[_scalar(v).to_sympy(MU_SYMBOL) for v in row] for row in rows])


def _from_sympy(matrix: sympy.Matrix) -> tuple[tuple[PhaseCoefficient, ...], ...]:
    return tuple(
        tuple(PhaseCoefficient.from_sympy(matrix[i, j], MU_SYMBOL) for j in range(matrix.cols))
        for i in range(matrix.rows)
    )


@dataclass(frozen=True)
class So51Data:
    """Quadratic elements, metrics and the transformation matrix ``C``."""

    x: tuple[NCPolynomial, ...]
    y: tuple[NCPolynomial, ...]
    minors: AlgebraMatrix
    t: tuple[tuple[PhaseCoefficient, ...], ...]
    t_inverse: tuple[tuple[PhaseCoefficient, ...], ...]
    c: AlgebraMatrix


@cache
def so51_data() -> So51Data:
    c4 = build_c4_theta()
    sl = build_sl2h()
    s4 = build_s4_generators(c4)
    x = (s4["r"], s4["x"], s4["alpha"], s4["alpha"].star(), s4["beta"], s4["beta"].star())
    u = build_u(c4)
    y = tuple(minor(u, i, j) for i, j in MINOR_INDEX)
    a = build_a(sl)
    minors = AlgebraMatrix.build(
        6, 6, lambda i, k: a_minor(a, *MINOR_INDEX[i - 1], *MINOR_INDEX[k - 1])
    )
    t = tuple(tuple(_scalar(v) for v in row) for row in T_MATRIX)
    t_inverse = _from_sympy(_to_sympy(T_MATRIX).inv())
    logger.debug("expanding the C matrix over %d minors", len(MINOR_INDEX) ** 2)
    c = AlgebraMatrix.build(
        6,
        6,
        lambda i, j: linear_combination(
            (sl,),
            (
                (t[i - 1][k] * t_inverse[l][j - 1], minors[k, l])
                for k in range(6)
                for l in range(6)
                if t[i - 1][k] and t_inverse[l][j - 1]
            ),
        ),
    )
    return So51Data(x, y, minors, t, t_inverse, c)  # type: ignore[arg-type]


def _x_slot(node: Node) -> int:
    if node.kind == "name":
        return X_NAMES.index(str(node.value)) + 1
    if node.kind == "star" and node.children[0].kind == "name":
        return X_NAMES.index(f"{node.children[0].value}*") + 1
    raise ValueError("coaction fixture terms must end in one of r, x, alpha, beta or a star")


def fixture_row(key: str, scale: int = 1) -> dict[int, NCPolynomial]:
    """One row of ``C`` read from a transcribed coaction display."""
    sl = build_sl2h()
    text = load_fixture("coaction")[key]
    tree = parse_tree(text)
    evaluator = Evaluator((sl,), None, text)
    terms = tree.children if tree.kind == "sum" else [tree]
    signs = tree.value if tree.kind == "sum" else [1]
    row: dict[int, NCPolynomial] = {}
    for sign, term in zip(signs, terms):  # type: ignore[arg-type]
        coefficient = evaluator.evaluate(term.children[0])
        if isinstance(coefficient, PhaseCoefficient):
            coefficient = NCPolynomial.of(sl, coefficient)
        row[_x_slot(term.children[1])] = coefficient.scale(  # type: ignore[assignment]
            PhaseCoefficient.monomial(0, Fraction(sign, scale))
        )
    return row


def coaction_symbols() -> dict[str, NCPolynomial]:
    return build_s4_generators(build_c4_theta())


# ============================================================================
# Checks
# ============================================================================


def check_coaction_maps(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("coaction", options)
    sl = build_sl2h()
    c4 = build_c4_theta()
    forms = build_forms_c4()
    rec.start()
    for label, target in (("c4", c4), ("forms", forms)):
        violations = hom_violations(target, delta_l_images(target, sl))
        first = violations[0] if violations else None
        rec.truth(
            f"coaction.{label}.homomorphism",
            f"the coaction respects every relation of {target.name}",
            "coaction on the coordinate algebra",
            not violations,
            f"{first.relation}" if first else None,
            violations=len(violations),
        )

    z = gens(c4)
    j = j_map(c4)
    residuals = {}
    for name in Z_NAMES:
        lhs = apply_hom(delta_l(z[name]), j, 1, antilinear=True, anti=True)
        rhs = delta_l(j[name])
        residuals[name] = lhs - rhs  # type: ignore[operator]
    rec.zeros(
        "coaction.j-compatibility",
        "(id (x) j) Delta_L = Delta_L j on z1, z2, z3, z4",
        "quaternionic structure",
        residuals,
    )

    dz = gens(forms)
    d_images = {}
    for name in Z_NAMES:
        d_images[name] = delta_l(dz[f"d{name}"]) - differential(delta_l(dz[name]), 1)
    rec.zeros(
        "coaction.forms.d",
        "Delta_L(dz) = (id (x) d) Delta_L(z)",
        "coaction on forms",
        d_images,
    )
    return rec.results


def check_top_form(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("determinant", options)
    forms = build_forms_c4()
    sl = build_sl2h()
    g = gens(forms)
    top = g["dz1"] * g["dz2*"] * g["dz3"] * g["dz4*"]
    rec.start()
    image = delta_l(top)
    rec.equal(
        "determinant.top-form",
        "Delta_L(dz1 dz2* dz3 dz4*) = det (x) dz1 dz2* dz3 dz4*",
        "determinant through the coaction on top forms",
        image,
        determinant(sl) @ top,
        collected_keys=len(leg_collect(image, 1)),
    )
    return rec.results


def check_bialgebra_relations(options: RunOptions) -> list[CheckResult]:
    """Relations forced on a free first leg by the coaction being an algebra map."""
    rec = CheckRecorder("coaction", options)
    sl = build_sl2h()
    free = build_sl2h_free()
    c4 = build_c4_theta()
    rec.start()
    violations = hom_violations(c4, delta_l_images(c4, free))
    forced: list[NCPolynomial] = []
    for v in violations:
        for coefficient in leg_collect(v.residual, 1).values():  # type: ignore[arg-type]
            forced.append(coefficient)  # type: ignore[arg-type]
    quotient = {letter.name: NCPolynomial.gen(sl, letter.name) for letter in free.letters}
    unsound = [f for f in forced if apply_hom(f, quotient)]
    rec.truth(
        "coaction.derive.sound",
        "every relation forced on the free bialgebra holds in deformed SL(2,H)",
        "universal transformation bialgebra",
        not unsound,
        unsound[0].to_text() if unsound else None,
        forced=len(forced),
    )

    derived: dict[tuple[str, str], PhaseCoefficient] = {}
    conflicts = []
    for f in forced:
        if len(f) != 2:
            continue
        (w1, c1), (w2, c2) = f.monomials()
        word1, word2 = free.word(w1), free.word(w2)
        if len(word1) != 2 or word1 != tuple(reversed(word2)) or word1[0] == word1[1]:
            continue
        x, y = sorted(word1)
        c_xy = c1 if word1 == (x, y) else c2
        c_yx = c2 if word1 == (x, y) else c1
        ratio = (-c_yx).exact_quotient(c_xy)
        pair = (free.letters[x].name, free.letters[y].name)
        if ratio is None or (pair in derived and derived[pair] != ratio):
            conflicts.append(pair)
            continue
        derived[pair] = ratio
    expected = {
        (sl.letters[x].name, sl.letters[y].name): sl.relation(x, y)
        for x in range(sl.size)
        for y in range(x + 1, sl.size)
    }
    mismatched = sorted(k for k in expected if derived.get(k) != expected[k])
    rec.truth(
        "coaction.derive.complete",
        "the forced binomial relations are exactly the commutation table of A_theta",
        "universal transformation bialgebra",
        not mismatched and not conflicts,
        f"pairs not recovered: {mismatched[:4]} conflicts: {conflicts[:4]}",
        pairs=len(derived),
        expected=len(expected),
    )

    g = gens(c4)
    radius = sum((g[f"{n}*"] * g[n] for n in Z_NAMES), NCPolynomial.of(c4, 0))
    one_sl = NCPolynomial.of(sl, 1)
    rec.truth(
        "coaction.radius.not-invariant",
        "Delta_L(sum z* z) differs from 1 (x) sum z* z",
        "inflated sphere",
        bool(delta_l(radius) - one_sl @ radius),
    )

    u = build_u(c4)
    ustar = u.star()
    unitarity = ustar @ u
    factorized, substituted = {}, {}
    for ai in (1, 2):
        for bi in (1, 2):
            form = BlockFactorization(
                {
                    (k, l): ustar.at(ai, k) * u.at(l, bi)
                    for k in range(1, 5)
                    for l in range(1, 5)
                }
            )
            factorized[f"{ai}{bi}"] = (delta_l(unitarity.at(ai, bi)), form.expand())
            substituted[f"{ai}{bi}"] = (
                sp_unitarity_substitution(form),
                one_sl @ unitarity.at(ai, bi),
            )
    rec.equalities(
        "coaction.unitarity.factorization",
        "Delta_L((u*u)_ab) = sum_kl (A*A)_kl (x) (u*)_ak u_lb",
        "coaction on u*u",
        factorized,
    )
    rec.equalities(
        "coaction.unitarity.symplectic",
        "with (A*A)_kl -> delta_kl the image is 1 (x) (u*u)_ab",
        "coaction on u*u",
        substituted,
    )
    return rec.results


def check_inflated_sphere(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("coaction", options)
    sl = build_sl2h()
    c4 = build_c4_theta()
    inflated = inflated_generators()
    s4 = build_s4_generators(c4)
    rec.start()
    xt, at, bt, rho2 = inflated.xt, inflated.at, inflated.bt, inflated.rho2
    rec.equal(
        "coaction.infradius",
        "alpha~* alpha~ + beta~* beta~ + x~^2 = rho^4",
        "inflated sphere",
        at.star() * at + bt.star() * bt + xt * xt,
        rho2 * rho2,
    )
    w = inflated.w
    rho_from_w = sum((w[f"{n}*"] * w[n] for n in Z_NAMES), TensorPolynomial.zero((sl, c4)))
    rec.equal("coaction.rho.from-w", "rho^2 = sum w* w", "inflated sphere", rho2, rho_from_w)
    rec.equal("coaction.rho.self-adjoint", "rho^2* = rho^2", "inflated sphere", rho2.star(), rho2)

    tilde = {"x": xt, "alpha": at, "alpha*": at.star(), "beta": bt, "beta*": bt.star()}
    plain = {
        "x": s4["x"],
        "alpha": s4["alpha"],
        "alpha*": s4["alpha"].star(),
        "beta": s4["beta"],
        "beta*": s4["beta"].star(),
    }
    mismatches = []
    names = list(tilde)
    for k, p_name in enumerate(names):
        for q_name in names[k + 1 :]:
            expected = phase_between(plain[p_name], plain[q_name])
            found = phase_between(tilde[p_name], tilde[q_name])
            if expected is None or found != expected:
                mismatches.append(f"{p_name},{q_name}")
    example = phase_between(at, bt)
    rec.truth(
        "coaction.inflated.phases",
        "x~, alpha~, beta~ carry the commutation phases of x, alpha, beta",
        "inflated sphere",
        not mismatches,
        ", ".join(mismatches),
        alpha_beta=example.to_text() if example is not None else None,
    )
    rec.zeros(
        "coaction.rho.central",
        "[rho^2, w] = 0 for every w and w*",
        "inflated sphere",
        {name: commutator(rho2, wj) for name, wj in w.items()},
    )

    u = build_u(c4)
    ustar = u.star()
    radius_form = BlockFactorization(
        {
            (k, l): linear_combination(
                (c4,), ((1, ustar.at(ai, k) * u.at(l, ai)) for ai in (1, 2))
            )
            for k in range(1, 5)
            for l in range(1, 5)
        },
        HALF,
    )
    rec.equal(
        "coaction.rho.factorization",
        "rho^2 = 1/2 sum_a sum_kl (A*A)_kl (x) (u*)_ak u_la",
        "inflated sphere",
        rho2,
        radius_form.expand(),
    )
    rec.equal(
        "coaction.rho.symplectic",
        "with (A*A)_kl -> delta_kl, rho^2 = 1 (x) 1 on the 7-sphere",
        "inflated sphere",
        sp_unitarity_substitution(radius_form),
        TensorPolynomial.constant((sl, c4), 1),
        modulo=build_s7_theta().rules,
        leg=1,
    )
    return rec.results


def check_transf4_fixtures(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("coaction", options)
    sl = build_sl2h()
    c4 = build_c4_theta()
    inflated = inflated_generators()
    symbols = coaction_symbols()
    fixtures = load_fixture("coaction")
    rec.start()

    def parsed(key: str, extra=None) -> TensorPolynomial:
        return parse_expression(fixtures[key], (sl, c4), {**symbols, **(extra or {})})

    for suffix, statement, computed, key in (
        ("x", "2 Delta_L(x) matches its display", inflated.xt.scale(2), "x2"),
        ("alpha", "Delta_L(alpha) matches its display", inflated.at, "alpha"),
        ("beta", "Delta_L(beta) matches its display", inflated.bt, "beta"),
        ("rho", "2 rho^2 matches its display", inflated.rho2.scale(2), "rho2x2"),
    ):
        rec.equal(
            f"coaction.transf4.{suffix}",
            statement,
            "coaction on the 4-sphere",
            computed,
            parsed(key),
        )

    blocks = load_fixture("mtheta")
    block_symbols = {name: parse_expression(blocks[name], sl) for name in ("m", "n", "g1", "g2")}
    rec.equal(
        "coaction.rho.blocks",
        "rho^2 = 1/2 ((m+n) (x) r + (m-n) (x) x + ...) through the Hermitian blocks",
        "inflated radius",
        inflated.rho2,
        parsed("rho2_blocks", block_symbols),
    )
    return rec.results


def check_so51(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("so51", options)
    sl = build_sl2h()
    c4 = build_c4_theta()
    data = so51_data()
    x, y = data.x, data.y
    rec.start()

    quadric = linear_combination(
        (c4,), ((G_UPPER[i][j], x[i] * x[j]) for i in range(6) for j in range(6) if G_UPPER[i][j])
    )
    rec.zero("so51.quadric.x", "sum g^ij X_i X_j = 0", "metric of signature (5,1)", quadric)

    y_quadric = linear_combination(
        (c4,), ((H_UPPER[i][j], y[i] * y[j]) for i in range(6) for j in range(6) if H_UPPER[i][j])
    )
    rec.zero("so51.quadric.y", "sum h^IJ Y_I Y_J = 0", "metric on the minors", y_quadric)

    plucker = y[0] * y[1] + (y[2] * y[3]).scale(MU) - (y[4] * y[5]).scale(MUBAR)
    rec.zero(
        "coaction.plucker",
        "pi12 pi34 + mu pi14 pi23 - mubar pi13 pi24 = 0",
        "Plucker quadric",
        plucker,
    )

    change = {
        X_NAMES[i]: x[i]
        - linear_combination((c4,), ((data.t[i][k], y[k]) for k in range(6) if data.t[i][k]))
        for i in range(6)
    }
    rec.zeros("so51.change-of-basis", "X = T Y", "minors of u", change)

    g_sym = _to_sympy(G_UPPER) / 2
    h_sym = _to_sympy(H_UPPER) / 2
    t_sym = _to_sympy(T_MATRIX)
    diff = sympy.simplify(t_sym.T * g_sym * t_sym + 4 * h_sym)
    rec.truth(
        "so51.metric.change",
        "T^t g T = -4 h",
        "metric on the minors",
        diff == sympy.zeros(6, 6),
        str(diff),
    )

    a = build_a(sl)
    antisym = {}
    for i, j in MINOR_INDEX:
        for l in range(1, 5):
            for s in range(1, 5):
                if l != s:
                    flipped = a_minor(a, i, j, s, l).scale(eta(l, s))
                    antisym[f"{i}{j}^{l}{s}"] = a_minor(a, i, j, l, s) + flipped
    rec.zeros(
        "so51.minors.antisymmetry",
        "m_ij^kl = -eta_kl m_ij^lk",
        "minors of A_theta",
        antisym,
    )
    rec.equal(
        "so51.minors.example",
        "m_12^12 = a1 a1* + a2 a2*",
        "minors of A_theta",
        data.minors.at(1, 1),
        parse_expression("a1*a1' + a2*a2'", sl),
    )

    u = build_u(c4)
    coaction = {}
    for big_i, (i, j) in enumerate(MINOR_INDEX, start=1):
        expected = linear_combination(
            (sl, c4), ((1, data.minors.at(big_i, big_k) @ y[big_k - 1]) for big_k in range(1, 7))
        )
        coaction[f"pi{i}{j}"] = delta_l(minor(u, i, j)) - expected
    rec.zeros(
        "so51.minors.coaction",
        "Delta_L(pi_ij) = sum_{l<s} m_ij^ls (x) pi_ls",
        "minors of u",
        coaction,
    )

    det = determinant(sl)
    for big_k in range(1, 7):
        for big_l in range(1, 7):
            lhs = linear_combination(
                (sl,),
                (
                    (H_UPPER[i][j], data.minors.at(i + 1, big_k) * data.minors.at(j + 1, big_l))
                    for i in range(6)
                    for j in range(6)
                    if H_UPPER[i][j]
                ),
            )
            rec.equal(
                f"so51.metric.{big_k}.{big_l}",
                f"sum_IJ h^IJ m_I^{big_k} m_J^{big_l} = h^{big_k}{big_l} det",
                "invariance of the metric on the minors",
                lhs,
                det.scale(H_UPPER[big_k - 1][big_l - 1]),
            )

    extraction = {}
    for i in range(1, 7):
        rhs = linear_combination((sl, c4), ((1, data.c.at(i, j) @ x[j - 1]) for j in range(1, 7)))
        extraction[X_NAMES[i - 1]] = delta_l(x[i - 1]) - rhs
    rec.zeros(
        "so51.c-matrix.extraction",
        "Delta_L(X_i) = sum_j C_ij (x) X_j",
        "SO(5,1) matrix",
        extraction,
    )

    rows = {
        1: fixture_row("rho2x2", 2),
        2: fixture_row("x2", 2),
        3: fixture_row("alpha"),
        5: fixture_row("beta"),
    }
    rows[4] = {_STAR_SLOT[j]: c.star() for j, c in rows[3].items()}  # type: ignore[misc]
    rows[6] = {_STAR_SLOT[j]: c.star() for j, c in rows[5].items()}  # type: ignore[misc]
    fixture_diff = {}
    for i, row in rows.items():
        for j in range(1, 7):
            entry = row.get(j, NCPolynomial.of(sl, 0))
            fixture_diff[f"{i}{j}"] = data.c.at(i, j) - entry
    rec.zeros(
        "so51.c-matrix.fixture",
        "C read from the transcribed coaction displays equals T m T^-1",
        "SO(5,1) matrix",
        fixture_diff,
    )

    failures = []
    for i, j, l, m in product(range(1, 7), repeat=4):
        left = data.c.at(i, l) * data.c.at(j, m)
        right = data.c.at(j, m) * data.c.at(i, l)
        if left != right.scale(nu(i, j) * nu(m, l)):
            found = phase_between(data.c.at(i, l), data.c.at(j, m))
            failures.append(f"C{i}{l} C{j}{m}: phase {found.to_text() if found else 'none'}")
    rec.truth(
        "so51.c-matrix.nu",
        "C_il C_jm = nu_ij nu_ml C_jm C_il",
        "SO(5,1) matrix",
        not failures,
        "; ".join(failures[:3]),
        tuples=6**4,
        failing=len(failures),
    )

    ctgc_free, ctgc_reduced = {}, {}
    rules = det_rules()
    for l in range(1, 7):
        for m in range(1, 7):
            entry = linear_combination(
                (sl,),
                (
                    (
                        Fraction(G_UPPER[i][j], 2),
                        data.c.at(i + 1, l) * data.c.at(j + 1, m),
                    )
                    for i in range(6)
                    for j in range(6)
                    if G_UPPER[i][j]
                ),
            )
            g_lm = Fraction(G_UPPER[l - 1][m - 1], 2)
            ctgc_free[f"{l}{m}"] = entry - det.scale(g_lm)
            ctgc_reduced[f"{l}{m}"] = entry - g_lm
    rec.zeros("so51.c-matrix.metric", "C^t g C = g det", "SO(5,1) matrix", ctgc_free)
    rec.zeros(
        "so51.c-matrix.metric.reduced",
        "C^t g C = g modulo det - 1",
        "SO(5,1) matrix",
        ctgc_reduced,
        modulo=rules,
    )
    rec.skipped(
        "so51.c-matrix.det",
        "det(C) = 1",
        "SO(5,1) matrix",
        "follows from the undeformed top form on R^(5,1); not machine-checked",
    )
    return rec.results
