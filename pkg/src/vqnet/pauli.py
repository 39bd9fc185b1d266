"""Real-weighted sums of Pauli tensor-product terms.

A term is a mapping qubit-index -> axis in {X, Y, Z}; the empty mapping is
the identity.  Operators are normalized on construction: like terms merge
and coefficients below ``COEFF_TOL`` are dropped.  Instances are immutable
and hashable.

Text grammar (one term per entry, ``#`` starts a comment):

    coefficient : token token ...

where a token is ``X<i>``/``Y<i>``/``Z<i>`` or the single token ``I``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import PauliParseError

__all__ = ["PauliTerm", "PauliOperator", "parse", "render", "combine", "max_qubit"]

COEFF_TOL = 1e-12

# factors are stored canonically as a tuple of (qubit, axis) sorted by qubit
FactorKey = tuple

_TOKEN_RE = re.compile(r"([XYZ])(\d+)$")


@dataclass(frozen=True)
class PauliTerm:
    factors: FactorKey
    coefficient: float

    @property
    def is_identity(self) -> bool:
        return not self.factors

    def qubits(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.factors)

    def axes(self) -> tuple[str, ...]:
        return tuple(ax for _, ax in self.factors)


def _parse_word(text: str, where: str) -> FactorKey:
    tokens = text.split()
    if not tokens:
        raise PauliParseError(f"{where}: missing Pauli term")
    if tokens == ["I"]:
        return ()
    factors: dict[int, str] = {}
    for tok in tokens:
        m = _TOKEN_RE.match(tok)
        if m is None:
            raise PauliParseError(f"{where}: malformed token {tok!r}")
        axis, qubit = m.group(1), int(m.group(2))
        if qubit in factors:
            raise PauliParseError(f"{where}: duplicate qubit {qubit} in one term")
        factors[qubit] = axis
    return tuple(sorted(factors.items()))


class PauliOperator:
    """Normalized sum of Pauli terms with real coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable | None = None):
        merged: dict[FactorKey, float] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for word, coeff in items:
                key = _parse_word(word, f"term {word!r}") if isinstance(word, str) else tuple(word)
                merged[key] = merged.get(key, 0.0) + float(coeff)
        self._terms = {k: c for k, c in merged.items() if abs(c) >= COEFF_TOL}
        self._hash = hash(frozenset(self._terms.items()))

    @property
    def terms(self) -> list[PauliTerm]:
        return [PauliTerm(k, c) for k, c in sorted(self._terms.items())]

    @property
    def is_empty(self) -> bool:
        return not self._terms

    def coefficient(self, factors: FactorKey) -> float:
        return self._terms.get(tuple(factors), 0.0)

    def max_qubit(self) -> int:
        qubits = [q for key in self._terms for q, _ in key]
        return max(qubits) if qubits else -1

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, PauliOperator) and self._terms == other._terms

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: "PauliOperator") -> "PauliOperator":
        return combine(self, other, 1.0)

    def __sub__(self, other: "PauliOperator") -> "PauliOperator":
        return combine(self, other, -1.0)

    def __mul__(self, scale: float) -> "PauliOperator":
        return PauliOperator([(k, c * scale) for k, c in self._terms.items()])

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if self.is_empty:
            return "PauliOperator()"
        return f"PauliOperator({render(self)!r})"


def parse(text: str) -> PauliOperator:
    """Parse the line-oriented Hamiltonian grammar into an operator."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise PauliParseError(f"line {lineno}: expected 'coefficient : term'")
        coeff_text, word = line.split(":", 1)
        try:
            coeff = float(coeff_text.strip())
        except ValueError:
            raise PauliParseError(
                f"line {lineno}: non-numeric coefficient {coeff_text.strip()!r}"
            ) from None
        entries.append((_parse_word(word, f"line {lineno}"), coeff))
    return PauliOperator(entries)


def render(op: PauliOperator) -> str:
    """Canonical text form; ``parse(render(op)) == op``."""
    lines = []
    for term in op.terms:
        word = "I" if term.is_identity else " ".join(f"{ax}{q}" for q, ax in term.factors)
        lines.append(f"{term.coefficient!r} : {word}")
    return "\n".join(lines)


def combine(a: PauliOperator, b: PauliOperator, scale_b: float = 1.0) -> PauliOperator:
    """Normalized ``a + scale_b * b``."""
    merged = dict(a._terms)
    for key, coeff in b._terms.items():
        merged[key] = merged.get(key, 0.0) + scale_b * coeff
    return PauliOperator(list(merged.items()))


def max_qubit(op: PauliOperator) -> int:
    return op.max_qubit()
