"""Determinant, algebraic complements and the Hopf structure of deformed SL(2,H).

Also holds the Hopf ideal of the symplectic subgroup, the two quotient
maps onto block subgroups used for the homogeneous spaces and the
substitution ``A*A -> 1`` applied to factorized coaction formulas.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cache, lru_cache
from itertools import permutations
from typing import Callable, Mapping, Optional, Sequence, Union

import sympy

from .algebra import (
    NCPolynomial,
    Presentation,
    TensorPolynomial,
    apply_hom,
    commutator,
    gens,
    hom_violations,
    linear_combination,
    validate_hom,
)
from .catalog import (
    A_ENTRIES,
    SL_NAMES,
    block_unitarity_rules,
    build_a,
    build_c4_theta,
    build_sl2h,
    build_sp1,
    eta,
    position_of,
)
from .errors import PresentationError
from .fixtures import load_fixture
from .matrix import AlgebraMatrix
from .parser import parse_expression
from .phase import MU, MUBAR, ONE, PhaseCoefficient, Scalar
from .report import CheckRecorder, CheckResult, RunOptions
from .rewriting import RewriteSystem

logger = logging.getLogger(__name__)

EPSILON_MU = frozenset({(1, 3, 2, 4), (3, 2, 4, 1), (2, 4, 1, 3), (4, 1, 3, 2)})
EPSILON_MUBAR = frozenset({(1, 4, 2, 3), (4, 2, 3, 1), (2, 3, 1, 4), (3, 1, 4, 2)})


def epsilon(perm: Sequence[int]) -> PhaseCoefficient:
    perm = tuple(perm)
    if perm in EPSILON_MU:
        return MU
    if perm in EPSILON_MUBAR:
        return MUBAR
    return ONE


def epsilon_bar(perm: Sequence[int]) -> PhaseCoefficient:
    return epsilon(perm).conj()


def permutation_sign(seq: Sequence[int]) -> int:
    inversions = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inversions % 2 else 1


def _sl(p: Optional[Presentation]) -> Presentation:
    return p if p is not None else build_sl2h()


@lru_cache(maxsize=None)
def a_matrix(p: Presentation) -> AlgebraMatrix:
    return build_a(p)


def _product(factors: Sequence[TensorPolynomial]) -> TensorPolynomial:
    result = factors[0]
    for f in factors[1:]:
        result = result * f
    return result


# ============================================================================
# Determinant and complements
# ============================================================================


@lru_cache(maxsize=None)
def determinant(p: Optional[Presentation] = None) -> NCPolynomial:
    """Row expansion with the deformed epsilon tensor."""
    p = _sl(p)
    a = a_matrix(p)
    det = linear_combination(
        (p,),
        (
            (
                epsilon(perm) * permutation_sign(perm),
                _product([a.at(r, perm[r - 1]) for r in range(1, 5)]),
            )
            for perm in permutations(range(1, 5))
        ),
    )
    logger.debug("determinant over %s has %d terms", p.name, len(det))
    return det  # type: ignore[return-value]


def determinant_columns(p: Optional[Presentation] = None) -> NCPolynomial:
    """Column expansion with the conjugate epsilon tensor."""
    p = _sl(p)
    a = a_matrix(p)
    return linear_combination(
        (p,),
        (
            (
                epsilon_bar(perm) * permutation_sign(perm),
                _product([a.at(perm[c - 1], c) for c in range(1, 5)]),
            )
            for perm in permutations(range(1, 5))
        ),
    )  # type: ignore[return-value]


@lru_cache(maxsize=None)
def algebraic_complement(i: int, l: int, p: Optional[Presentation] = None) -> NCPolynomial:
    """Deformed cofactor of ``A_il``."""
    p = _sl(p)
    a = a_matrix(p)
    rows = [r for r in range(1, 5) if r != i]
    cols = [c for c in range(1, 5) if c != l]
    pairs = []
    for sigma in permutations(cols):
        full = [0] * 4
        full[i - 1] = l
        for r, c in zip(rows, sigma):
            full[r - 1] = c
        coeff = epsilon(full) * permutation_sign(sigma)
        for k in range(1, i):
            coeff = coeff * eta(full[k - 1], l)
        pairs.append((coeff, _product([a.at(r, full[r - 1]) for r in rows])))
    return linear_combination((p,), pairs)  # type: ignore[return-value]


def laplace_row(i: int, p: Optional[Presentation] = None) -> NCPolynomial:
    p = _sl(p)
    a = a_matrix(p)
    return linear_combination(
        (p,), (((-1) ** (i + l), a.at(i, l) * algebraic_complement(i, l, p)) for l in range(1, 5))
    )  # type: ignore[return-value]


def laplace_column(i: int, p: Optional[Presentation] = None) -> NCPolynomial:
    p = _sl(p)
    a = a_matrix(p)
    return linear_combination(
        (p,), (((-1) ** (i + l), a.at(l, i) * algebraic_complement(l, i, p)) for l in range(1, 5))
    )  # type: ignore[return-value]


@cache
def det_rules() -> RewriteSystem:
    return RewriteSystem(build_sl2h(), [determinant() - 1], name="det=1")  # type: ignore[list-item]


# ============================================================================
# Hopf structure maps
# ============================================================================


@lru_cache(maxsize=None)
def coproduct_images(p: Presentation) -> dict[str, TensorPolynomial]:
    a = a_matrix(p)
    images = {}
    for letter in p.letters:
        i, j, sign = position_of(A_ENTRIES, letter.name)
        images[letter.name] = linear_combination(
            (p, p), ((sign, a.at(i, k) @ a.at(k, j)) for k in range(1, 5))
        )
    return images


@lru_cache(maxsize=None)
def counit_images(p: Presentation) -> dict[str, PhaseCoefficient]:
    images = {}
    for letter in p.letters:
        i, j, sign = position_of(A_ENTRIES, letter.name)
        images[letter.name] = PhaseCoefficient.coerce(sign if i == j else 0)
    return images


@lru_cache(maxsize=None)
def antipode_images(p: Presentation) -> dict[str, NCPolynomial]:
    images = {}
    for letter in p.letters:
        i, j, sign = position_of(A_ENTRIES, letter.name)
        images[letter.name] = algebraic_complement(j, i, p).scale(sign * (-1) ** (i + j))
    return images  # type: ignore[return-value]


def coproduct(f: TensorPolynomial, leg: int = 0) -> TensorPolynomial:
    return apply_hom(f, coproduct_images(f.legs[leg]), leg)  # type: ignore[return-value]


def counit(f: TensorPolynomial, leg: int = 0) -> Union[TensorPolynomial, PhaseCoefficient]:
    return apply_hom(f, counit_images(f.legs[leg]), leg)


def antipode(f: TensorPolynomial, leg: int = 0) -> TensorPolynomial:
    return apply_hom(f, antipode_images(f.legs[leg]), leg, anti=True)  # type: ignore[return-value]


# ============================================================================
# Symplectic ideal and quotient maps
# ============================================================================


def sp_generator(i: int, j: int, p: Optional[Presentation] = None) -> NCPolynomial:
    """``g_ij = sum_k A_ki* A_kj - delta_ij``."""
    p = _sl(p)
    a = a_matrix(p)
    total = linear_combination((p,), ((1, a.at(k, i).star() * a.at(k, j)) for k in range(1, 5)))
    return (total - (1 if i == j else 0))  # type: ignore[return-value]


def pi_i_images() -> dict[str, Union[int, NCPolynomial]]:
    """Quotient onto the block ``diag(1, 1, d)``."""
    sp1 = build_sp1()
    images: dict[str, Union[int, NCPolynomial]] = {}
    for name in SL_NAMES:
        for n in (name, f"{name}*"):
            if name == "a1":
                images[n] = 1
            elif name.startswith("d"):
                images[n] = NCPolynomial.gen(sp1, n)
            else:
                images[n] = 0
    return images


def pi_j_images() -> dict[str, Union[int, NCPolynomial]]:
    """Quotient onto the diagonal blocks: ``b`` and ``c`` go to zero."""
    sl = build_sl2h()
    images: dict[str, Union[int, NCPolynomial]] = {}
    for name in SL_NAMES:
        for n in (name, f"{name}*"):
            images[n] = 0 if name[0] in "bc" else NCPolynomial.gen(sl, n)
    return images


CORRIS = {"a1": "z1", "a2": "z2", "c1": "z3", "c2": "z4"}


def corris_images() -> dict[str, NCPolynomial]:
    c4 = build_c4_theta()
    images: dict[str, NCPolynomial] = {}
    for source, target in CORRIS.items():
        images[source] = NCPolynomial.gen(c4, target)
        images[f"{source}*"] = NCPolynomial.gen(c4, f"{target}*")
    return images


@cache
def gram_matrix() -> AlgebraMatrix:
    """``A* A`` over the deformed SL(2,H)."""
    a = build_a(build_sl2h())
    return a.star() @ a


@dataclass(frozen=True)
class BlockFactorization:
    """``sum_ij scale * (A*A)_ij (x) X_ij`` with the ``A*A`` factors kept apart."""

    factors: Mapping[tuple[int, int], TensorPolynomial]
    scale: Scalar = 1

    @property
    def legs(self) -> tuple[Presentation, ...]:
        return (build_sl2h(),) + next(iter(self.factors.values())).legs

    def expand(self) -> TensorPolynomial:
        m = gram_matrix()
        return linear_combination(
            self.legs, ((self.scale, m.at(i, j) @ x) for (i, j), x in self.factors.items())
        )


def sp_unitarity_substitution(form: BlockFactorization) -> TensorPolynomial:
    """Image on the Sp(2) quotient, where ``A*A = 1``: each ``(A*A)_ij`` becomes ``delta_ij``."""
    one = NCPolynomial.of(build_sl2h(), 1)
    return linear_combination(
        form.legs, ((form.scale, one @ x) for (i, j), x in form.factors.items() if i == j)
    )


QUOTIENT_MAPS = ("pi_I_theta", "pi_J_theta", "sp_unitarity_substitution")


def quotient_map(name: str) -> Callable:
    """Handle for a named quotient; generator maps are validated before use."""
    if name == "sp_unitarity_substitution":
        return sp_unitarity_substitution
    builders = {"pi_I_theta": pi_i_images, "pi_J_theta": pi_j_images}
    if name not in builders:
        raise PresentationError(
            f"unknown quotient map {name!r}", [f"available: {', '.join(QUOTIENT_MAPS)}"]
        )
    images = builders[name]()
    validate_hom(build_sl2h(), images)
    return lambda f, leg=0: apply_hom(f, images, leg)


# ============================================================================
# Classical limit
# ============================================================================


def classical_symbols(p: Presentation) -> dict[int, sympy.Symbol]:
    return {i: sympy.Symbol(letter.name.replace("*", "_s")) for i, letter in enumerate(p.letters)}


def classical_image(f: NCPolynomial, symbols: Mapping[int, sympy.Symbol]) -> sympy.Expr:
    """Commutative image at ``mu = 1``."""
    p = f.presentation
    total = sympy.Integer(0)
    for m, c in f.monomials():
        value = c.classical()
        term = sympy.Rational(value.numerator, value.denominator)
        for i, e in enumerate(m):
            if e:
                term *= symbols[i] ** e
        total += term
    return sympy.expand(total)


def classical_matrix(p: Presentation, symbols: Mapping[int, sympy.Symbol]) -> sympy.Matrix:
    rows = []
    for i in range(1, 5):
        row = []
        for j in range(1, 5):
            sign, name = A_ENTRIES[(i, j)]
            row.append(sign * symbols[p.index(name)])
        rows.append(row)
    return sympy.Matrix(rows)


# ============================================================================
# Checks
# ============================================================================


def _fixture(name: str, key: str, p: Presentation, symbols=None) -> TensorPolynomial:
    return parse_expression(load_fixture(name)[key], p, symbols)


def check_determinant(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("determinant", options)
    p = build_sl2h()
    det = determinant()
    rec.start()
    rec.equal(
        "determinant.expansions",
        "row expansion with epsilon equals column expansion with epsilon-bar",
        "epsilon-tensor determinant",
        det,
        determinant_columns(),
        det_terms=len(det),
    )
    for i in range(1, 5):
        rec.equal(
            f"determinant.laplace.row.{i}",
            f"sum_l (-1)^(i+l) A_il A^_il = det for i = {i}",
            "Laplace expansion by rows",
            laplace_row(i),
            det,
        )
    for i in range(1, 5):
        rec.equal(
            f"determinant.laplace.column.{i}",
            f"sum_l (-1)^(i+l) A_li A^_li = det for i = {i}",
            "Laplace expansion by columns",
            laplace_column(i),
            det,
        )
    rec.equal(
        "determinant.display",
        "first-row expanded display equals det",
        "expanded determinant",
        _fixture("determinant", "det", p),
        det,
    )
    rec.equal(
        "determinant.hyperboloid-expansion",
        "m n - (g1* g1 + g2* g2) written out equals det",
        "determinant through Hermitian blocks",
        _fixture("determinant", "hyperboloid", p),
        det,
    )
    residuals = {name: commutator(det, g) for name, g in gens(p).items()}
    for name, residual in residuals.items():
        rec.zero(
            f"determinant.central.{name}",
            f"[det, {name}] = 0",
            "centrality of the determinant",
            residual,
        )
    symbols = classical_symbols(p)
    classical = classical_matrix(p, symbols)
    diff = sympy.expand(classical_image(det, symbols) - classical.det())
    rec.truth(
        "determinant.classical",
        "det at mu = 1 is the commutative determinant",
        "classical limit",
        diff == 0,
        str(diff),
    )
    return rec.results


def check_complements(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("complements", options)
    p = build_sl2h()
    a = a_matrix(p)
    rec.start()
    rec.zeros(
        "complements.commute",
        "A_il A^_il = A^_il A_il for all i, l",
        "algebraic complements",
        {
            f"{i}{l}": commutator(a.at(i, l), algebraic_complement(i, l))
            for i in range(1, 5)
            for l in range(1, 5)
        },
    )
    symbols = classical_symbols(p)
    classical = classical_matrix(p, symbols)
    mismatches = []
    for i in range(1, 5):
        for l in range(1, 5):
            diff = sympy.expand(
                classical_image(algebraic_complement(i, l), symbols) - classical.minor(i - 1, l - 1)
            )
            if diff != 0:
                mismatches.append(f"{i}{l}: {diff}")
    rec.truth(
        "complements.classical",
        "A^_il at mu = 1 is the classical minor",
        "classical limit",
        not mismatches,
        "; ".join(mismatches[:3]),
        cases=16,
    )
    return rec.results


def _violation_witness(violations) -> Optional[str]:
    if not violations:
        return None
    first = violations[0]
    residual = first.residual
    text = residual.to_text() if hasattr(residual, "to_text") else str(residual)
    return f"{first.relation}: residual {text}"


def check_hopf_axioms(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("hopf", options)
    p = build_sl2h()
    a = a_matrix(p)
    letters = gens(p)
    det = determinant()
    rules = det_rules()
    rec.start()

    for label, images, anti in (
        ("coproduct", coproduct_images(p), False),
        ("counit", counit_images(p), False),
        ("antipode", antipode_images(p), True),
    ):
        violations = hom_violations(p, images, anti=anti)
        rec.truth(
            f"hopf.{label}.relations",
            f"{label} respects every commutation relation"
            + (" as an anti-homomorphism" if anti else ""),
            "Hopf structure maps",
            not violations,
            _violation_witness(violations),
            relations=p.size * (p.size - 1) // 2,
        )

    coassoc = {}
    left_counit = {}
    right_counit = {}
    for name, g in letters.items():
        d = coproduct(g)
        coassoc[name] = coproduct(d, 0) - coproduct(d, 1)
        left_counit[name] = counit(d, 0) - g  # type: ignore[operator]
        right_counit[name] = counit(d, 1) - g  # type: ignore[operator]
    rec.zeros(
        "hopf.coassociativity",
        "(D (x) id) D = (id (x) D) D on generators",
        "Hopf algebra",
        coassoc,
    )
    rec.zeros("hopf.counit.left", "(e (x) id) D = id on generators", "Hopf algebra", left_counit)
    rec.zeros("hopf.counit.right", "(id (x) e) D = id on generators", "Hopf algebra", right_counit)

    s = {(i, j): antipode(a.at(i, j)) for i in range(1, 5) for j in range(1, 5)}
    right_free, left_free, right_reduced, left_reduced = {}, {}, {}, {}
    for i in range(1, 5):
        for j in range(1, 5):
            right = linear_combination((p,), ((1, a.at(i, l) * s[(l, j)]) for l in range(1, 5)))
            left = linear_combination((p,), ((1, s[(i, l)] * a.at(l, j)) for l in range(1, 5)))
            delta = 1 if i == j else 0
            right_free[f"{i}{j}"] = right - det.scale(delta)
            left_free[f"{i}{j}"] = left - det.scale(delta)
            right_reduced[f"{i}{j}"] = right - delta
            left_reduced[f"{i}{j}"] = left - delta
    for suffix, statement, residuals, modulo in (
        ("right.free", "sum_l A_il S(A_lj) = delta_ij det", right_free, None),
        ("left.free", "sum_l S(A_il) A_lj = delta_ij det", left_free, None),
        ("right.reduced", "sum_l A_il S(A_lj) = delta_ij modulo det - 1", right_reduced, rules),
        ("left.reduced", "sum_l S(A_il) A_lj = delta_ij modulo det - 1", left_reduced, rules),
    ):
        rec.zeros(f"hopf.antipode.{suffix}", statement, "antipode", residuals, modulo=modulo)

    rec.equal(
        "hopf.coproduct.det",
        "D(det) = det (x) det",
        "group-like determinant",
        coproduct(det),
        det @ det,
    )
    counit_det = counit(det) - 1  # type: ignore[operator]
    rec.zero("hopf.counit.det", "e(det) = 1", "group-like determinant", counit_det)

    if options.stretch:
        squares = {}
        stars = {}
        for name, g in letters.items():
            squares[name] = antipode(antipode(g)) - g
            stars[name] = antipode(g.star()) - antipode(g).star()
        rec.zeros(
            "hopf.antipode.square",
            "S^2 = id modulo det - 1",
            "antipode",
            squares,
            modulo=rules,
        )
        rec.zeros("hopf.antipode.star", "S(x*) = S(x)* on generators", "antipode", stars)
    return rec.results


def check_epsilon(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("epsilon", options)
    rec.start()
    eps_failures = []
    bar_failures = []
    for perm in permutations(range(1, 5)):
        i, j, k, l = perm
        base = epsilon(perm)
        for other, factor in (
            ((j, i, k, l), eta(j, i)),
            ((i, j, l, k), eta(l, k)),
            ((i, k, j, l), eta(k, j)),
        ):
            if base != factor * epsilon(other):
                eps_failures.append("".join(map(str, perm)))
        base_bar = epsilon_bar(perm)
        for other, factor in (
            ((j, i, k, l), eta(i, j)),
            ((i, j, l, k), eta(k, l)),
            ((i, k, j, l), eta(j, k)),
        ):
            if base_bar != factor * epsilon_bar(other):
                bar_failures.append("".join(map(str, perm)))
    rec.truth(
        "epsilon.relations",
        "eps^ijkl = eta_ji eps^jikl = eta_lk eps^ijlk = eta_kj eps^ikjl",
        "deformed epsilon tensor",
        not eps_failures,
        ", ".join(eps_failures[:4]),
        permutations=24,
    )
    rec.truth(
        "epsilon.bar-relations",
        "epsbar^ijkl = eta_ij epsbar^jikl = eta_kl epsbar^ijlk = eta_jk epsbar^ikjl",
        "deformed epsilon tensor",
        not bar_failures,
        ", ".join(bar_failures[:4]),
        permutations=24,
    )
    return rec.results


def check_sp_ideal(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("sp-ideal", options)
    p = build_sl2h()
    a = a_matrix(p)
    rec.start()
    g = {(i, j): sp_generator(i, j) for i in range(1, 5) for j in range(1, 5)}
    one = NCPolynomial.of(p, 1)
    expansions = {}
    counits = {}
    for i in range(1, 5):
        for j in range(1, 5):
            expected = linear_combination(
                (p, p),
                [
                    (1, g[(m, n)] @ (a.at(m, i).star() * a.at(n, j)))
                    for m in range(1, 5)
                    for n in range(1, 5)
                ]
                + [(1, one @ g[(i, j)])],
            )
            expansions[f"{i}{j}"] = coproduct(g[(i, j)]) - expected
            counits[f"{i}{j}"] = counit(g[(i, j)])  # type: ignore[assignment]
    rec.zeros(
        "sp-ideal.coproduct",
        "D(g_ij) = sum_mn g_mn (x) A_mi* A_nj + 1 (x) g_ij",
        "Hopf ideal of the symplectic subgroup",
        expansions,
    )
    rec.zeros("sp-ideal.counit", "e(g_ij) = 0", "Hopf ideal of the symplectic subgroup", counits)
    rec.skipped(
        "sp-ideal.antipode",
        "S(I) is contained in I",
        "Hopf ideal of the symplectic subgroup",
        "ideal membership of antipode images is structural and not decided by reduction here",
    )
    return rec.results


def check_homogeneous_spaces(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("homogeneous", options)
    p = build_sl2h()
    letters = gens(p)
    sp1 = build_sp1()
    rec.start()

    pi_i = pi_i_images()
    violations = hom_violations(p, pi_i)
    d2_letters = {"d2", "d2*"}
    only_d2 = all({v.left, v.right} & d2_letters for v in violations)
    classical_zero = all(
        all(c.classical() == 0 for c in v.residual.terms.values())  # type: ignore[union-attr]
        for v in violations
    )
    rec.truth(
        "homogeneous.pi_I.obstruction",
        "a1 -> 1 breaks only the a1/d2 relations and only by terms vanishing at mu = 1",
        "quotient onto Sp(1)",
        bool(violations) and only_d2 and classical_zero,
        _violation_witness(violations),
        violations=len(violations),
        relations=[v.relation for v in violations],
    )
    coinvariant = {}
    for name in ("a1", "a2", "c1", "c2"):
        image = apply_hom(coproduct(letters[name]), pi_i, 1)
        expected = letters[name] @ NCPolynomial.of(sp1, 1)
        coinvariant[name] = image - expected  # type: ignore[operator]
    rec.zeros(
        "homogeneous.pi_I.coinvariants",
        "(id (x) pi_I) D(x) = x (x) 1 for x in a1, a2, c1, c2",
        "coinvariants of the 7-sphere",
        coinvariant,
    )

    pi_j = pi_j_images()
    violations = hom_violations(p, pi_j)
    rec.truth(
        "homogeneous.pi_J.homomorphism",
        "b, c -> 0 respects every commutation relation",
        "quotient onto Sp(1) x Sp(1)",
        not violations,
        _violation_witness(violations),
    )
    twisted = [
        (x, y, p.relation(x, y).to_text())
        for x in ("a1", "a2", "a1*", "a2*")
        for y in ("d1", "d2", "d1*", "d2*")
        if p.relation(x, y) != ONE
    ]
    rec.truth(
        "homogeneous.pi_J.noncommutative",
        "the block quotient keeps non-trivial a/d commutation phases",
        "quotient onto Sp(1) x Sp(1)",
        bool(twisted),
        None,
        example=list(twisted[0]) if twisted else None,
        twisted_pairs=len(twisted),
    )
    g = letters
    targets = {
        "(aa*)11": g["a1"] * g["a1*"] + g["a2"] * g["a2*"],
        "(ca*)11": g["c1"] * g["a1*"] + g["c2"] * g["a2*"],
        "(ca*)12": g["c2"] * g["a1"] - g["c1"] * g["a2"],
    }
    units = block_unitarity_rules()
    residuals = {}
    for label, f in targets.items():
        image = apply_hom(coproduct(f), pi_j, 1)
        residuals[label] = image - f @ NCPolynomial.of(p, 1)
    rec.zeros(
        "homogeneous.pi_J.coinvariants",
        "(id (x) pi_J) D(x) = x (x) 1 modulo block unitarity",
        "coinvariants of the 4-sphere",
        residuals,
        modulo=units,
        leg=1,
    )

    corris = corris_images()
    violations = hom_violations(p, corris)
    rec.truth(
        "homogeneous.corris.homomorphism",
        "a1, a2, c1, c2 -> z1, z2, z3, z4 preserves their commutation phases",
        "identification with the 7-sphere",
        not violations,
        _violation_witness(violations),
    )
    a = a_matrix(p)
    column = linear_combination((p,), ((1, a.at(k, 1).star() * a.at(k, 1)) for k in range(1, 5)))
    c4 = build_c4_theta()
    z = gens(c4)
    radius = sum((z[f"z{k}*"] * z[f"z{k}"] for k in range(1, 5)), NCPolynomial.of(c4, 0))
    rec.equal(
        "homogeneous.corris.radius",
        "(A*A)_11 maps to sum z* z",
        "identification with the 7-sphere",
        apply_hom(column, corris),  # type: ignore[arg-type]
        radius,
    )
    return rec.results
