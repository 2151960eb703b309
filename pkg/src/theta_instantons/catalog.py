"""Concrete presentations, generators and fixed maps.

Commutation exponents are never typed in by hand: the sphere coordinates
inherit theirs from the isometry ``u`` and the deformed ``SL(2,H)``
letters from the matrix ``A``, both through the phase matrix ``eta``.
"""

from __future__ import annotations

import logging
from functools import cache
from pathlib import Path
from typing import NamedTuple, Optional, Union

from .algebra import (
    FreePresentation,
    Letter,
    NCPolynomial,
    Presentation,
    TensorPolynomial,
    differential,
    free_copy,
    gens,
)
from .degrees import DegreeVector, commutation_phase, letter_degree, solve_letter_degrees
from .errors import PresentationError
from .fixtures import load_rows
from .matrix import AlgebraMatrix
from .phase import PhaseCoefficient
from .report import CheckRecorder, CheckResult, RunOptions
from .rewriting import RewriteSystem

logger = logging.getLogger(__name__)

# eta_ij = mu^ETA_EXPONENTS[i-1][j-1]
ETA_EXPONENTS = (
    (0, 0, -1, 1),
    (0, 0, 1, -1),
    (1, -1, 0, 0),
    (-1, 1, 0, 0),
)

Z_NAMES = ("z1", "z2", "z3", "z4")

# u_ia as (sign, letter)
U_ENTRIES: dict[tuple[int, int], tuple[int, str]] = {
    (1, 1): (1, "z1"),
    (1, 2): (1, "z2"),
    (2, 1): (-1, "z2*"),
    (2, 2): (1, "z1*"),
    (3, 1): (1, "z3"),
    (3, 2): (1, "z4"),
    (4, 1): (-1, "z4*"),
    (4, 2): (1, "z3*"),
}

SL_NAMES = ("a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2")

# A_ij as (sign, letter)
A_ENTRIES: dict[tuple[int, int], tuple[int, str]] = {
    (1, 1): (1, "a1"),
    (1, 2): (1, "a2"),
    (1, 3): (1, "b1"),
    (1, 4): (1, "b2"),
    (2, 1): (-1, "a2*"),
    (2, 2): (1, "a1*"),
    (2, 3): (-1, "b2*"),
    (2, 4): (1, "b1*"),
    (3, 1): (1, "c1"),
    (3, 2): (1, "c2"),
    (3, 3): (1, "d1"),
    (3, 4): (1, "d2"),
    (4, 1): (-1, "c2*"),
    (4, 2): (1, "c1*"),
    (4, 3): (-1, "d2*"),
    (4, 4): (1, "d1*"),
}

# Degrees the sphere generators must carry.
S4_ANCHORS = {"alpha": (1, 0), "beta": (0, 1)}

# Torus weights of the rows of A before lifting to the double cover.
ROW_WEIGHTS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def eta(i: int, j: int) -> PhaseCoefficient:
    return PhaseCoefficient.monomial(ETA_EXPONENTS[i - 1][j - 1])


def eta_exponent(i: int, j: int) -> int:
    return ETA_EXPONENTS[i - 1][j - 1]


def _starred(names: tuple[str, ...]) -> list[str]:
    return list(names) + [f"{n}*" for n in names]


def _partner(name: str) -> str:
    return name[:-1] if name.endswith("*") else f"{name}*"


def position_of(entries: dict[tuple[int, int], tuple[int, str]], name: str) -> tuple[int, int, int]:
    for (i, j), (sign, letter) in entries.items():
        if letter == name:
            return i, j, sign
    raise PresentationError(f"letter {name} does not occur in the matrix")


# ============================================================================
# Sphere coordinates
# ============================================================================


def _u_phases() -> dict[tuple[str, str], int]:
    phases: dict[tuple[str, str], int] = {}
    for (i, _a), (_, x) in U_ENTRIES.items():
        for (j, _b), (_, y) in U_ENTRIES.items():
            if x < y:
                phases[(x, y)] = eta_exponent(j, i)
    return phases


def _z_letters(degrees: Optional[dict[str, DegreeVector]]) -> list[Letter]:
    return [
        Letter(n, 0, _partner(n), degrees[n].doubled if degrees else None)
        for n in _starred(Z_NAMES)
    ]


@cache
def build_c4_theta() -> Presentation:
    """The deformed coordinate algebra of C^4 with solved torus degrees."""
    provisional = Presentation("c4", _z_letters(None), _u_phases())
    degrees = solve_letter_degrees(provisional, S4_ANCHORS, build_s4_generators(provisional))
    return Presentation("c4", _z_letters(degrees), _u_phases())


@cache
def build_c4_free() -> FreePresentation:
    return free_copy(build_c4_theta(), "c4-free")


def z_degrees() -> dict[str, DegreeVector]:
    p = build_c4_theta()
    return {
        letter.name: DegreeVector(letter.degree)  # type: ignore[arg-type]
        for letter in p.letters
    }


class Sphere(NamedTuple):
    presentation: Presentation
    rules: RewriteSystem


def sphere_relation(p: Presentation) -> NCPolynomial:
    z = gens(p)
    norm = sum((z[f"{n}*"] * z[n] for n in Z_NAMES), NCPolynomial.of(p, 0))
    return norm - 1  # type: ignore[return-value]


@cache
def build_s7_theta() -> Sphere:
    p = build_c4_theta()
    return Sphere(p, RewriteSystem(p, [sphere_relation(p)], name="sphere"))


def build_s4_generators(p: Presentation) -> dict[str, NCPolynomial]:
    """``x``, ``alpha``, ``beta`` and the radius ``r`` over any presentation with z letters."""
    z = gens(p)
    z1, z2, z3, z4 = (z[n] for n in Z_NAMES)
    s1, s2, s3, s4 = (z[f"{n}*"] for n in Z_NAMES)
    return {
        "r": z1 * s1 + z2 * s2 + z3 * s3 + z4 * s4,
        "x": z1 * s1 + z2 * s2 - z3 * s3 - z4 * s4,
        "alpha": (z1 * s3 + z2 * s4) * 2,
        "beta": (z2 * z3 - z1 * z4) * 2,
    }  # type: ignore[dict-item]


def build_u(p: Presentation) -> AlgebraMatrix:
    def entry(i: int, a: int) -> TensorPolynomial:
        sign, name = U_ENTRIES[(i, a)]
        return NCPolynomial.gen(p, name).scale(sign)

    return AlgebraMatrix.build(4, 2, entry)


def build_p(p: Presentation) -> AlgebraMatrix:
    u = build_u(p)
    return u @ u.star()


# ============================================================================
# Differential forms
# ============================================================================


@cache
def build_forms_c4() -> Presentation:
    """Sphere coordinates and their differentials; ``dz`` letters are odd."""
    base = build_c4_theta()
    names = _starred(Z_NAMES)
    letters = [Letter(letter.name, 0, letter.star, letter.degree) for letter in base.letters]
    letters += [
        Letter(f"d{n}", 1, f"d{_partner(n)}", base.letters[base.index(n)].degree) for n in names
    ]
    phases: dict[tuple[str, str], int] = {}
    for x in names:
        for y in names:
            k = base.phase_exponent(base.index(x), base.index(y))
            if not k:
                continue
            phases[(x, y)] = k
            phases[(f"d{x}", y)] = k
            phases[(x, f"d{y}")] = k
            phases[(f"d{x}", f"d{y}")] = k
    d_map = {n: f"d{n}" for n in names}
    return Presentation("forms", letters, phases, d_map)


@cache
def build_forms_sphere() -> RewriteSystem:
    """Sphere relation and its differential on the forms presentation."""
    p = build_forms_c4()
    s = sphere_relation(p)
    return RewriteSystem(
        p, [s, differential(s)], name="sphere+d(sphere)"  # type: ignore[list-item]
    )


# ============================================================================
# Deformed SL(2,H)
# ============================================================================


def _sl_phases() -> dict[tuple[str, str], int]:
    phases: dict[tuple[str, str], int] = {}
    for (i, j), (_, x) in A_ENTRIES.items():
        for (k, l), (_, y) in A_ENTRIES.items():
            if x < y:
                phases[(x, y)] = eta_exponent(k, i) + eta_exponent(j, l)
    return phases


def row_degrees() -> dict[int, DegreeVector]:
    """Degree of the i-th row of ``u``, shared by both columns."""
    degrees = z_degrees()
    out: dict[int, DegreeVector] = {}
    for i in range(1, 5):
        found = set()
        for a in (1, 2):
            sign, name = U_ENTRIES[(i, a)]
            found.add(degrees[name])
        if len(found) != 1:
            raise PresentationError(f"row {i} of u is not homogeneous")
        out[i] = found.pop()
    return out


def sl_degree(i: int, j: int) -> DegreeVector:
    """``deg A_ij = D_i (+) swap(D_j)``."""
    rows = row_degrees()
    return rows[i].direct_sum(rows[j].swapped())


@cache
def build_sl2h() -> Presentation:
    letters = []
    for name in _starred(SL_NAMES):
        i, j, _ = position_of(A_ENTRIES, name)
        letters.append(Letter(name, 0, _partner(name), sl_degree(i, j).doubled))
    return Presentation("sl2h", letters, _sl_phases())


@cache
def build_sl2h_free() -> FreePresentation:
    return free_copy(build_sl2h(), "sl2h-free")


def build_a(p: Presentation) -> AlgebraMatrix:
    def entry(i: int, j: int) -> TensorPolynomial:
        sign, name = A_ENTRIES[(i, j)]
        return NCPolynomial.gen(p, name).scale(sign)

    return AlgebraMatrix.build(4, 4, entry)


@cache
def block_unitarity_rules() -> RewriteSystem:
    """``a a* = 1`` and ``d d* = 1`` on the diagonal blocks."""
    p = build_sl2h()
    g = gens(p)
    return RewriteSystem(
        p,
        [
            g["a1"] * g["a1*"] + g["a2"] * g["a2*"] - 1,  # type: ignore[list-item]
            g["d1"] * g["d1*"] + g["d2"] * g["d2*"] - 1,  # type: ignore[list-item]
        ],
        name="block-unitarity",
    )


@cache
def build_sp1() -> Presentation:
    """Commutative target holding one unitary block ``d``."""
    names = ("d1", "d2")
    return Presentation("sp1", [Letter(n, 0, _partner(n)) for n in _starred(names)], {})


# ============================================================================
# Relation tables and the quaternionic structure
# ============================================================================


def relation_table(p: Presentation) -> list[tuple[str, str, PhaseCoefficient]]:
    """Every pair ``x < y`` with its coefficient ``c`` in ``x y = c y x``."""
    rows = []
    for i in range(p.size):
        for j in range(i + 1, p.size):
            rows.append((p.letters[i].name, p.letters[j].name, p.relation(i, j)))
    return rows


def format_relation_table(p: Presentation, fmt: str = "tsv", nontrivial: bool = False) -> str:
    rows = [r for r in relation_table(p) if not nontrivial or r[2] != PhaseCoefficient.coerce(1)]
    if fmt == "tsv":
        return "\n".join(f"{x}\t{y}\t{c.to_text()}" for x, y, c in rows) + "\n"
    width = max(len(x) for x, _, _ in rows) if rows else 0
    lines = (f"{x.ljust(width)} {y.ljust(width)} = {c.to_text()}" for x, y, c in rows)
    return "\n".join(lines) + "\n"


J_BASE = {"z1": (1, "z2"), "z2": (-1, "z1"), "z3": (1, "z4"), "z4": (-1, "z3")}


def j_map(p: Presentation) -> dict[str, NCPolynomial]:
    """Images of the quaternionic structure; apply antilinearly and anti-multiplicatively."""
    images: dict[str, NCPolynomial] = {}
    for name, (sign, target) in J_BASE.items():
        image = NCPolynomial.gen(p, target).scale(sign)
        images[name] = image  # type: ignore[assignment]
        images[f"{name}*"] = image.star()  # type: ignore[assignment]
    return images


# ============================================================================
# Presentation files
# ============================================================================


def dump_presentation(p: Presentation) -> str:
    lines = [f"name {p.name}"]
    for letter in p.letters:
        degree = ",".join(str(v) for v in letter.degree) if letter.degree else "-"
        lines.append(
            f"letter {letter.name} {'odd' if letter.parity else 'even'} "
            f"{letter.star or '-'} {degree}"
        )
    for i in range(p.size):
        for j in range(i + 1, p.size):
            k = p.phase_exponent(i, j)
            if k:
                lines.append(f"phase {p.letters[i].name} {p.letters[j].name} {k}")
    for a, b in sorted(p.d_map.items()):
        lines.append(f"d {p.letters[a].name} {p.letters[b].name}")
    return "\n".join(lines) + "\n"


def parse_presentation(text: str, *, free: bool = False) -> Presentation:
    """Read the ``name`` / ``letter`` / ``phase`` / ``d`` line format."""
    name = "custom"
    letters: list[Letter] = []
    phases: dict[tuple[str, str], int] = {}
    d_map: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            if fields[0] == "name":
                name = fields[1]
            elif fields[0] == "letter":
                parity = {"even": 0, "odd": 1}[fields[2]]
                star = None if len(fields) < 4 or fields[3] == "-" else fields[3]
                degree = None
                if len(fields) > 4 and fields[4] != "-":
                    degree = tuple(int(v) for v in fields[4].split(","))
                letters.append(Letter(fields[1], parity, star, degree))
            elif fields[0] == "phase":
                phases[(fields[1], fields[2])] = int(fields[3])
            elif fields[0] == "d":
                d_map[fields[1]] = fields[2]
            else:
                raise PresentationError(f"line {lineno}: unknown directive {fields[0]!r}")
        except (IndexError, KeyError, ValueError):
            raise PresentationError(f"line {lineno}: malformed entry {raw.strip()!r}") from None
    cls = FreePresentation if free else Presentation
    return cls(name, letters, phases, d_map)


def load_presentation(path: Union[str, Path], *, free: bool = False) -> Presentation:
    logger.debug("loading presentation from %s", path)
    return parse_presentation(Path(path).read_text(encoding="utf-8"), free=free)


BUILTIN_PRESENTATIONS = {
    "c4": build_c4_theta,
    "c4-free": build_c4_free,
    "forms": build_forms_c4,
    "sl2h": build_sl2h,
    "sl2h-free": build_sl2h_free,
    "sp1": build_sp1,
}


def resolve_presentation(name: str) -> Presentation:
    """A built-in presentation by name, or a presentation file path."""
    builder = BUILTIN_PRESENTATIONS.get(name)
    if builder is not None:
        return builder()
    path = Path(name)
    if path.exists():
        return load_presentation(path)
    raise PresentationError(
        f"unknown algebra {name!r}",
        [f"built-in algebras: {', '.join(BUILTIN_PRESENTATIONS)}", "or pass a presentation file"],
    )


def standard_symbols(p: Presentation) -> dict[str, NCPolynomial]:
    """Named generators usable in expressions over ``p``."""
    if all(p.has_letter(n) for n in Z_NAMES):
        return build_s4_generators(p)
    return {}


# ============================================================================
# Checks
# ============================================================================


def _derived_witnesses(
    p: Presentation,
    entries: dict[tuple[int, int], tuple[int, str]],
    expected,
) -> dict[str, PhaseCoefficient]:
    """Residual ``relation(x, y) - expected`` for every pair of matrix positions."""
    residuals = {}
    for pos1, (_, x) in entries.items():
        for pos2, (_, y) in entries.items():
            if x == y:
                continue
            label = f"{x},{y}@{pos1}{pos2}"
            residuals[label] = p.relation(x, y) - expected(pos1, pos2)
    return residuals


def check_relation_table(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("appendix-a", options)
    sl = build_sl2h()
    c4 = build_c4_theta()
    rec.start()

    rows = load_rows("sl2h_relations")
    fixture_residuals = {}
    conjugate_residuals = {}
    listed = set()
    for x, y, text in rows:
        c = PhaseCoefficient.parse(text)
        fixture_residuals[f"{x},{y}"] = sl.relation(x, y) - c
        xs, ys = _partner(x), _partner(y)
        conjugate_residuals[f"{xs},{ys}"] = sl.relation(xs, ys) - c
        listed |= {frozenset((x, y)), frozenset((xs, ys))}
    unlisted = [
        f"{x},{y}"
        for x, y, c in relation_table(sl)
        if c != PhaseCoefficient.coerce(1) and frozenset((x, y)) not in listed
    ]
    rec.zeros(
        "appendix-a.fixture",
        "derived SL relations equal the transcribed table",
        "commutation relations of the twisted SL(2,H) generators",
        fixture_residuals,
        unlisted_nontrivial=unlisted,
    )
    rec.zeros(
        "appendix-a.conjugates",
        "x* y* = c y* x* for every listed x y = c y x",
        "commutation relations of the twisted SL(2,H) generators",
        conjugate_residuals,
    )
    star_closed = {}
    for p in (c4, sl, build_forms_c4()):
        for x, y, c in relation_table(p):
            star_closed[f"{p.name}:{x},{y}"] = p.relation(_partner(x), _partner(y)) - c
    rec.zeros(
        "appendix-a.star-closed",
        "Lambda(a*, b*) = Lambda(a, b) in every catalog presentation",
        "star structure",
        star_closed,
    )
    rec.zeros(
        "appendix-a.witnesses.c4",
        "z phases agree for every pair of positions u_ia, u_jb",
        "commutation of the entries of u",
        _derived_witnesses(c4, U_ENTRIES, lambda ia, jb: eta(jb[0], ia[0])),
    )
    rec.zeros(
        "appendix-a.witnesses.sl2h",
        "A_ij A_kl = eta_ki eta_jl A_kl A_ij for every pair of positions",
        "commutation of the entries of A",
        _derived_witnesses(sl, A_ENTRIES, lambda ij, kl: eta(kl[0], ij[0]) * eta(ij[1], kl[1])),
    )
    rec.truth(
        "appendix-a.c4.audit",
        "derived z phase table",
        "commutation of the entries of u",
        True,
        None,
        table=[f"{x} {y} {c.to_text()}" for x, y, c in relation_table(c4)],
    )

    classical = {}
    for p in (c4, sl, build_forms_c4()):
        for x, y, c in relation_table(p):
            odd = p.parities[p.index(x)] and p.parities[p.index(y)]
            classical[f"{p.name}:{x},{y}"] = PhaseCoefficient.coerce(
                c.classical() - (-1 if odd else 1)
            )
    rec.zeros(
        "appendix-a.classical",
        "every commutation coefficient is 1 (-1 between odd letters) at mu = 1",
        "classical limit",
        classical,
    )

    roundtrip = []
    for p in (c4, sl, build_forms_c4()):
        again = parse_presentation(dump_presentation(p))
        same = again.letters == p.letters and all(
            again.phase_exponent(i, j) == p.phase_exponent(i, j)
            for i in range(p.size)
            for j in range(p.size)
        )
        if not same or again.d_map != p.d_map:
            roundtrip.append(p.name)
    rec.truth(
        "appendix-a.presentation-file",
        "dumped presentations load back unchanged",
        "presentation files",
        not roundtrip,
        ", ".join(roundtrip),
    )
    return rec.results


def covering_image(d: DegreeVector) -> tuple[int, int]:
    """Image of a double-cover degree ``(x, y)`` under ``(x, y) -> (x + y, y - x)``."""
    x, y = d.values
    image = (x + y, y - x)
    return int(image[0]), int(image[1])


def check_star_consistency(options: RunOptions) -> list[CheckResult]:
    rec = CheckRecorder("star-consistency", options)
    sl = build_sl2h()
    c4 = build_c4_theta()
    rec.start()

    sl_pairs = {}
    for x in sl.letter_names():
        for y in sl.letter_names():
            predicted = commutation_phase(letter_degree(sl, x), letter_degree(sl, y))
            sl_pairs[f"{x},{y}"] = predicted - sl.relation(x, y)
    rec.zeros(
        "star-consistency.sl2h",
        "lambda^<deg x, deg y> equals the eta phase for all generator pairs",
        "torus degrees of the SL(2,H) generators",
        sl_pairs,
    )
    z_pairs = {}
    for x in c4.letter_names():
        for y in c4.letter_names():
            predicted = commutation_phase(letter_degree(c4, x), letter_degree(c4, y))
            z_pairs[f"{x},{y}"] = predicted - c4.relation(x, y)
    rec.zeros(
        "star-consistency.c4",
        "solved half-integer z degrees reproduce the z phase table",
        "torus degrees of the sphere coordinates",
        z_pairs,
        degrees={name: str(d) for name, d in z_degrees().items()},
    )
    negated = {}
    for p in (c4, sl):
        for x in p.letter_names():
            d, ds = letter_degree(p, x), letter_degree(p, _partner(x))
            if d != -ds:
                negated[f"{p.name}:{x}"] = PhaseCoefficient.coerce(1)
    rec.zeros(
        "star-consistency.star-degree",
        "deg x* = -deg x",
        "torus degrees",
        negated,
    )

    rows = row_degrees()
    lift = [i for i in range(1, 5) if covering_image(rows[i]) != ROW_WEIGHTS[i - 1]]
    rec.truth(
        "star-consistency.lift",
        "row degrees of u cover the row weights of A",
        "double cover of the torus",
        not lift,
        ", ".join(f"row {i}: {rows[i]}" for i in lift),
    )

    def literal(name: str) -> DegreeVector:
        i, j, _ = position_of(A_ENTRIES, name)
        row, column = DegreeVector.of(*ROW_WEIGHTS[i - 1]), DegreeVector.of(*ROW_WEIGHTS[j - 1])
        return row.direct_sum(-column)

    matches = sum(
        commutation_phase(literal(x), literal(y)) == sl.relation(x, y)
        for x in sl.letter_names()
        for y in sl.letter_names()
    )
    rec.truth(
        "star-consistency.literal-orientation",
        "phases predicted by deg A_ij = Lambda_i (+) (-Lambda_j)",
        "torus degrees of the SL(2,H) generators",
        True,
        None,
        literal_matches=matches,
        pairs=sl.size * sl.size,
    )
    return rec.results
