"""Leading-monomial rewriting modulo central relations.

A relation ``R`` is turned into the rule ``L -> L - R/c`` where ``c*L`` is
its leading term under the graded reverse-lexicographic order of the
presentation. A term ``m`` divisible by ``L`` is rewritten through
``m = phi * L * q`` where ``q`` is the exponent difference and ``phi`` the
phase of the product, so the replacement is always a right multiple of
``R`` and stays inside the two-sided ideal. Relations are checked for
centrality against every letter; normal ones pass only with ``allow_normal``.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .algebra import Monomial, NCPolynomial, Presentation, TensorPolynomial, phase_between
from .errors import CompletionError, CompletionLimitExceeded, PresentationError
from .phase import ONE, PhaseCoefficient

logger = logging.getLogger(__name__)

DEFAULT_COMPLETION_LIMIT = 200
DEFAULT_STEP_LIMIT = 2_000_000


@dataclass(frozen=True)
class RewriteRule:
    """``lead`` may be replaced by ``tail``; ``relation = lead - tail``."""

    lead: Monomial
    tail: NCPolynomial
    relation: NCPolynomial

    def describe(self) -> str:
        p = self.relation.presentation
        return f"{p.format_monomial(self.lead)} -> {self.tail.to_text()}"


def _make_rule(relation: NCPolynomial) -> RewriteRule:
    lead, c = relation.leading()
    if not c.is_unit():
        raise CompletionError(
            f"leading coefficient {c.to_text()} of {relation.to_text()} is not a unit",
            ["reorder the alphabet or supply the relation with a unit leading term"],
        )
    normalized = relation.scale(c.inverse())
    p = relation.presentation
    tail = NCPolynomial.from_monomial(p, lead) - normalized
    return RewriteRule(lead, tail, normalized)  # type: ignore[arg-type]


class RewriteSystem:
    """Finite set of rewrite rules over one presentation."""

    def __init__(
        self,
        presentation: Presentation,
        relations: Iterable[NCPolynomial],
        *,
        name: str = "",
        completion_limit: int = DEFAULT_COMPLETION_LIMIT,
        allow_normal: bool = False,
    ):
        if presentation.free:
            raise PresentationError(f"cannot rewrite over free presentation {presentation.name}")
        self.presentation = presentation
        self.name = name or presentation.name
        self.completion_limit = completion_limit
        self.allow_normal = allow_normal
        self.rules: list[RewriteRule] = []
        for relation in relations:
            if relation.legs != (presentation,):
                raise PresentationError("relation lives over a different presentation")
            if not relation:
                continue
            self._require_central(relation)
            self.rules.append(_make_rule(relation))

    @classmethod
    def from_rules(
        cls, presentation: Presentation, rules: Sequence[RewriteRule], **kwargs
    ) -> RewriteSystem:
        system = cls(presentation, (), **kwargs)
        system.rules = list(rules)
        return system

    def with_limit(self, completion_limit: int) -> RewriteSystem:
        return RewriteSystem.from_rules(
            self.presentation,
            self.rules,
            name=self.name,
            completion_limit=completion_limit,
            allow_normal=self.allow_normal,
        )

    def _require_central(self, relation: NCPolynomial) -> None:
        """Each letter must commute with ``relation`` up to its Koszul sign.

        With ``allow_normal`` any unit phase is accepted instead.
        """
        p = self.presentation
        parities = {p.monomial_parity(m) for m, _ in relation.monomials()}
        if len(parities) != 1:
            raise PresentationError(
                f"relation {relation.to_text()} mixes even and odd terms",
                ["split the relation into its even and odd parts"],
            )
        (parity,) = parities
        for i in range(p.size):
            x = NCPolynomial.gen(p, i)
            c = phase_between(x, relation)
            name = p.letters[i].name
            if c is None:
                raise PresentationError(
                    f"relation {relation.to_text()} is not normal: no unit c with "
                    f"{name}*R = c*R*{name}",
                    ["only central relations generate the ideal from one side"],
                )
            expected = -ONE if p.parities[i] and parity else ONE
            if c != expected and not self.allow_normal:
                raise PresentationError(
                    f"relation {relation.to_text()} is not central: "
                    f"{name}*R = {c.to_text()}*R*{name}",
                    ["pass allow_normal=True for normal relations such as monomial rules"],
                )

    @property
    def relations(self) -> list[NCPolynomial]:
        return [rule.relation for rule in self.rules]

    def describe(self) -> list[str]:
        return [rule.describe() for rule in self.rules]

    def __len__(self) -> int:
        return len(self.rules)

    # ------------------------------------------------------------------
    # Reduction
    # ------------------------------------------------------------------

    def _find_rule(self, m: Monomial) -> Optional[tuple[RewriteRule, Monomial]]:
        p = self.presentation
        for rule in self.rules:
            quotient = p.divides(rule.lead, m)
            if quotient is not None:
                return rule, quotient
        return None

    def _reduce_terms(
        self, terms: dict[Monomial, PhaseCoefficient], step_limit: int
    ) -> dict[Monomial, PhaseCoefficient]:
        p = self.presentation
        todo = dict(terms)
        heap: list[tuple] = []
        queued: set[Monomial] = set()

        def push(m: Monomial) -> None:
            if m not in queued:
                queued.add(m)
                deg, rev = p.order_key(m)
                heapq.heappush(heap, ((-deg, tuple(-e for e in rev)), m))

        for m in todo:
            push(m)
        done: dict[Monomial, PhaseCoefficient] = {}
        steps = 0
        while heap:
            _, m = heapq.heappop(heap)
            queued.discard(m)
            c = todo.pop(m, None)
            if c is None or not c:
                continue
            hit = self._find_rule(m)
            if hit is None:
                done[m] = c
                continue
            steps += 1
            if steps > step_limit:
                raise CompletionLimitExceeded(
                    f"reduction modulo {self.name} did not finish in {step_limit} steps", step_limit
                )
            rule, q = hit
            exp, sign, _ = p.multiply(rule.lead, q)
            factor = c * PhaseCoefficient.monomial(-exp, sign)
            for (tm,), tc in rule.tail.terms.items():
                product = p.multiply(tm, q)
                if product is None:
                    continue
                e2, s2, m2 = product
                value = factor * tc.shift(e2) * s2
                current = todo.get(m2)
                value = value if current is None else current + value
                if value:
                    todo[m2] = value
                    push(m2)
                else:
                    todo.pop(m2, None)
        return done

    def reduce(
        self, f: TensorPolynomial, leg: int = 0, *, step_limit: int = DEFAULT_STEP_LIMIT
    ) -> TensorPolynomial:
        if f.legs[leg] is not self.presentation:
            raise PresentationError(
                f"leg {leg + 1} is {f.legs[leg].name}, rules are over {self.presentation.name}"
            )
        slices: dict[tuple, dict[Monomial, PhaseCoefficient]] = {}
        for key, c in f.terms.items():
            rest = key[:leg] + key[leg + 1 :]
            slices.setdefault(rest, {})[key[leg]] = c
        terms: dict[tuple, PhaseCoefficient] = {}
        for rest, sliced in slices.items():
            for m, c in self._reduce_terms(sliced, step_limit).items():
                key = rest[:leg] + (m,) + rest[leg:]
                terms[key] = c
        return TensorPolynomial._new(f.legs, terms)

    def is_reduced(self, f: TensorPolynomial, leg: int = 0) -> bool:
        return all(self._find_rule(key[leg]) is None for key in f.terms)

    # ------------------------------------------------------------------
    # Completion
    # ------------------------------------------------------------------

    def _overlap(self, r1: RewriteRule, r2: RewriteRule) -> Optional[NCPolynomial]:
        p = self.presentation
        if not p.shares_letters(r1.lead, r2.lead):
            return None
        lcm = p.lcm(r1.lead, r2.lead)
        if not p.is_valid(lcm):
            return None
        q1 = tuple(a - b for a, b in zip(lcm, r1.lead))
        q2 = tuple(a - b for a, b in zip(lcm, r2.lead))
        e1, s1, _ = p.multiply(r1.lead, q1)
        e2, s2, _ = p.multiply(r2.lead, q2)
        left = r1.relation * NCPolynomial.from_monomial(p, q1, PhaseCoefficient.monomial(-e1, s1))
        right = r2.relation * NCPolynomial.from_monomial(p, q2, PhaseCoefficient.monomial(-e2, s2))
        return left - right  # type: ignore[return-value]

    def _critical_elements(
        self, rule: RewriteRule, others: Sequence[RewriteRule]
    ) -> list[NCPolynomial]:
        p = self.presentation
        out: list[NCPolynomial] = []
        for other in others:
            if other is rule:
                continue
            s = self._overlap(rule, other)
            if s is not None:
                out.append(s)
        for i in range(p.size):
            x = NCPolynomial.gen(p, i)
            out.append(x * rule.relation)  # type: ignore[arg-type]
            if p.parities[i] and rule.lead[i]:
                out.append(rule.relation * x)  # type: ignore[arg-type]
        return out

    def complete(self) -> RewriteSystem:
        """Bounded completion: add reduced critical elements until none survive."""
        p = self.presentation
        system = RewriteSystem.from_rules(
            p,
            self.rules,
            name=self.name,
            completion_limit=self.completion_limit,
            allow_normal=self.allow_normal,
        )
        pending: list[NCPolynomial] = []
        for rule in system.rules:
            pending.extend(system._critical_elements(rule, system.rules))
        added = 0
        while pending:
            s = pending.pop(0)
            r = system.reduce(s)
            if not r:
                continue
            added += 1
            if added > self.completion_limit:
                raise CompletionLimitExceeded(
                    f"completion of {self.name} exceeded {self.completion_limit} new rules",
                    self.completion_limit,
                )
            rule = _make_rule(r)  # type: ignore[arg-type]
            logger.debug("completion of %s adds %s", self.name, rule.describe())
            system.rules.append(rule)
            pending.extend(system._critical_elements(rule, system.rules))
        if added:
            system = system.interreduce()
        return system

    def interreduce(self) -> RewriteSystem:
        """Drop rules whose lead is divisible by another lead; reduce the tails."""
        p = self.presentation
        kept: list[RewriteRule] = []
        for rule in sorted(self.rules, key=lambda r: p.order_key(r.lead)):
            if any(p.divides(k.lead, rule.lead) is not None for k in kept):
                continue
            kept.append(rule)
        system = RewriteSystem.from_rules(
            p,
            kept,
            name=self.name,
            completion_limit=self.completion_limit,
            allow_normal=self.allow_normal,
        )
        final: list[RewriteRule] = []
        for rule in kept:
            others = RewriteSystem.from_rules(
                p, [k for k in kept if k is not rule], name=self.name
            )
            tail = others.reduce(rule.tail)
            relation = NCPolynomial.from_monomial(p, rule.lead) - tail
            final.append(RewriteRule(rule.lead, tail, relation))  # type: ignore[arg-type]
        system.rules = final
        return system


def reduce(f: TensorPolynomial, rules: RewriteSystem, leg: int = 0) -> TensorPolynomial:
    return rules.reduce(f, leg)


def complete(rules: RewriteSystem) -> RewriteSystem:
    return rules.complete()


def reduce_with_completion(
    f: TensorPolynomial, rules: RewriteSystem, leg: int = 0
) -> tuple[TensorPolynomial, RewriteSystem]:
    """Reduce; if the remainder is not zero, complete and reduce again."""
    r = rules.reduce(f, leg)
    if not r:
        return r, rules
    completed = rules.complete()
    return completed.reduce(f, leg), completed


# ============================================================================
# All-orders oracle
# ============================================================================


def _poly_key(terms: dict[Monomial, PhaseCoefficient]) -> tuple:
    return tuple(sorted((m, c.terms) for m, c in terms.items()))


def all_normal_forms(
    f: NCPolynomial, rules: RewriteSystem, *, max_states: int = 20_000
) -> list[NCPolynomial]:
    """Every irreducible result reachable by rewriting any term with any rule.

    Exponential; meant for small inputs in consistency checks.
    """
    p = rules.presentation
    start = {key[0]: c for key, c in f.terms.items()}
    seen = {_poly_key(start)}
    stack = [start]
    finals: dict[tuple, dict[Monomial, PhaseCoefficient]] = {}
    while stack:
        current = stack.pop()
        successors = []
        for m, c in current.items():
            for rule in rules.rules:
                q = p.divides(rule.lead, m)
                if q is None:
                    continue
                exp, sign, _ = p.multiply(rule.lead, q)
                factor = c * PhaseCoefficient.monomial(-exp, sign)
                nxt = dict(current)
                del nxt[m]
                for (tm,), tc in rule.tail.terms.items():
                    product = p.multiply(tm, q)
                    if product is None:
                        continue
                    e2, s2, m2 = product
                    value = factor * tc.shift(e2) * s2
                    if m2 in nxt:
                        value = nxt[m2] + value
                    if value:
                        nxt[m2] = value
                    else:
                        nxt.pop(m2, None)
                successors.append(nxt)
        if not successors:
            finals[_poly_key(current)] = current
            continue
        for nxt in successors:
            key = _poly_key(nxt)
            if key not in seen:
                seen.add(key)
                if len(seen) > max_states:
                    raise CompletionLimitExceeded(
                        "all-orders rewriting exceeded its state bound", max_states
                    )
                stack.append(nxt)
    return [
        NCPolynomial((p,), {(m,): c for m, c in terms.items()})
        for _, terms in sorted(finals.items())
    ]


def scalar_multiple(a: TensorPolynomial, b: TensorPolynomial) -> Optional[Fraction]:
    """The rational ``k`` with ``a = k * b`` when one exists."""
    if not a:
        return Fraction(0)
    if not b:
        return None
    key = b.sorted_keys()[0]
    k = a.coefficient(key).exact_quotient(b.coefficient(key))
    phase = k.as_phase() if k is not None else None
    if phase is None or phase[0] != 0:
        return None
    return phase[1] if a == b.scale(phase[1]) else None
