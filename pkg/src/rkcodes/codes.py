"""Linear codes over R_k, quasitwisted constructions, and their binary Gray images.

A code is handled through an explicit F2 basis of its module span: the
R_k-span of generator rows equals the F2-span of all monomial multiples
u_A * row, so row-reducing those (flattened to int bitsets, 2^k bits per
coordinate) gives exact size and enumeration whether or not the module is
free.  Binary images apply the Gray map to that F2 basis and row-reduce
again.

Quasitwisted codewords use the interleaved coordinate layout: the vector
position of coefficient i of block b is i*ell + b.  Under this layout the
global twisted shift T_lambda^ell acts as per-block multiplication by x,
so codes built from twistulant generators are literally T_lambda^ell
invariant and their binary images are literally (image_len * ell)-QC when
lambda = 1.  qt_generator_matrix returns the block-concatenated display
form, which differs from the span rows by the perfect-shuffle column
permutation only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from rkcodes.gf2 import F2Span, rotate_bits, span_iter
from rkcodes.graymap import GrayMap
from rkcodes.polyqt import (
    Polynomial,
    RingVec,
    divides_modulus,
    format_generator,
    parse_element,
    parse_generator,
    poly_degree,
    shift,
    shift_n,
)
from rkcodes.ring import RingElement, format_element, gamma, one

DEFAULT_BUDGET_LOG2 = 24


class BudgetError(RuntimeError):
    """An enumeration would exceed the configured 2^budget codeword cap."""


def _check_budget(rank: int, budget: int) -> None:
    if rank > budget:
        raise BudgetError(f"span has 2^{rank} words, over the 2^{budget} budget")


def flatten_vec(vec: Sequence[RingElement]) -> int:
    """Pack a ring vector into an int, 2^k bits per coordinate."""
    bits = 1 << vec[0].k
    out = 0
    for i, e in enumerate(vec):
        out |= e.coeffs << (i * bits)
    return out


def unflatten_vec(flat: int, k: int, n: int) -> RingVec:
    bits = 1 << k
    mask = (1 << bits) - 1
    return tuple(RingElement(k, (flat >> (i * bits)) & mask) for i in range(n))


@dataclass(frozen=True)
class ModuleSpan:
    """Canonical F2 basis of a code's flattened codewords."""

    k: int
    n: int
    basis: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def _span(self) -> F2Span:
        return F2Span(self.basis)

    def contains(self, vec: Sequence[RingElement]) -> bool:
        return flatten_vec(vec) in self._span if vec else True

    def iter_flat(self, budget: int = DEFAULT_BUDGET_LOG2) -> Iterator[int]:
        _check_budget(self.rank, budget)
        return span_iter(self.basis)

    def codewords(self, budget: int = DEFAULT_BUDGET_LOG2) -> Iterator[RingVec]:
        for flat in self.iter_flat(budget):
            yield unflatten_vec(flat, self.k, self.n)


def module_span(rows: Sequence[Sequence[RingElement]]) -> ModuleSpan:
    """F2 basis of the R_k-module generated by the rows."""
    if not rows:
        raise ValueError("need at least one generator row")
    k = rows[0][0].k
    n = len(rows[0])
    span = F2Span()
    for row in rows:
        if len(row) != n:
            raise ValueError("generator rows have mixed lengths")
        for mask in range(1 << k):
            scalar = RingElement(k, 1 << mask)  # the monomial u_A
            span.add(flatten_vec([scalar * e for e in row]))
    return ModuleSpan(k, n, span.basis())


@dataclass(frozen=True)
class QTCode:
    """A (lambda, ell)-quasitwisted code of length ell*m given by generator tuples."""

    lam: RingElement
    ell: int
    m: int
    generators: tuple[tuple[RingVec, ...], ...]

    def __post_init__(self) -> None:
        if not self.lam.is_unit:
            raise ValueError("twist lambda must be a unit")
        if self.ell < 1 or self.m < 1:
            raise ValueError("index and coindex must be positive")
        if not self.generators:
            raise ValueError("need at least one generator tuple")
        for gen in self.generators:
            if len(gen) != self.ell:
                raise ValueError(f"generator has {len(gen)} blocks, expected ell={self.ell}")
            for block in gen:
                if len(block) != self.m:
                    raise ValueError(f"block length {len(block)} != coindex m={self.m}")
                if any(e.k != self.lam.k for e in block):
                    raise ValueError("generator entries from the wrong ring")

    @property
    def k(self) -> int:
        return self.lam.k

    @property
    def n(self) -> int:
        return self.ell * self.m

    @classmethod
    def from_strings(
        cls,
        k: int,
        generators: Sequence[str],
        *,
        lam: str | RingElement = "1",
        ell: int | None = None,
        m: int | None = None,
        notation: str | None = None,
    ) -> "QTCode":
        lam_elem = lam if isinstance(lam, RingElement) else parse_element(lam, k, notation)
        gens = tuple(parse_generator(g, k, notation) for g in generators)
        ell_seen = len(gens[0])
        m_seen = len(gens[0][0])
        if ell is not None and ell != ell_seen:
            raise ValueError(f"generator has {ell_seen} blocks but ell={ell} was given")
        if m is not None and m != m_seen:
            raise ValueError(f"blocks have length {m_seen} but m={m} was given")
        return cls(lam_elem, ell_seen, m_seen, gens)

    def generator_strings(self, notation: str | None = None) -> list[str]:
        return [format_generator(gen, notation) for gen in self.generators]


def interleave(blocks: Sequence[Sequence[RingElement]]) -> RingVec:
    """Blockwise tuple -> codeword layout: position i*ell + b holds block b, coeff i."""
    ell = len(blocks)
    return tuple(blocks[j % ell][j // ell] for j in range(ell * len(blocks[0])))


def deinterleave(vec: Sequence[RingElement], ell: int) -> tuple[RingVec, ...]:
    m = len(vec) // ell
    return tuple(tuple(vec[i * ell + b] for i in range(m)) for b in range(ell))


def spanning_rows(code: QTCode) -> tuple[RingVec, ...]:
    """m interleaved rows per generator tuple: x^i times the generator."""
    rows = []
    for gen in code.generators:
        blocks = tuple(tuple(b) for b in gen)
        for _ in range(code.m):
            rows.append(interleave(blocks))
            blocks = tuple(shift(b, code.lam) for b in blocks)
    return tuple(rows)


def qt_generator_matrix(code: QTCode) -> tuple[RingVec, ...]:
    """Display form [G_1 | G_2 | ... | G_ell] with twistulant blocks."""
    rows = []
    for gen in code.generators:
        blocks = tuple(tuple(b) for b in gen)
        for _ in range(code.m):
            row: tuple[RingElement, ...] = ()
            for b in blocks:
                row += b
            rows.append(row)
            blocks = tuple(shift(b, code.lam) for b in blocks)
    return tuple(rows)


def code_span(code: QTCode) -> ModuleSpan:
    return module_span(spanning_rows(code))


def enumerate_codewords(code: QTCode, budget: int = DEFAULT_BUDGET_LOG2) -> Iterator[RingVec]:
    return code_span(code).codewords(budget)


def rows_shift_invariant(
    rows: Sequence[Sequence[RingElement]],
    lam: RingElement,
    ell: int,
    budget: int = DEFAULT_BUDGET_LOG2,
) -> bool:
    """True iff T_lambda^ell maps the module span of the rows into itself."""
    span = module_span(rows)
    _check_budget(span.rank, budget)
    return all(span.contains(shift_n(row, lam, ell)) for row in rows)


def is_qt_invariant(code: QTCode, budget: int = DEFAULT_BUDGET_LOG2) -> bool:
    return rows_shift_invariant(spanning_rows(code), code.lam, code.ell, budget)


class WeightEnumerator:
    """Sparse weight -> count map, shared by homogeneous and Hamming distributions."""

    def __init__(self, counts: Mapping[int, int]):
        self._counts = {int(w): int(c) for w, c in counts.items() if c}

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[int]]) -> "WeightEnumerator":
        return cls({w: c for w, c in pairs})

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self._counts.items()))

    def __getitem__(self, weight: int) -> int:
        return self._counts.get(weight, 0)

    def total(self) -> int:
        return sum(self._counts.values())

    def min_nonzero(self) -> int | None:
        nz = [w for w in self._counts if w > 0]
        return min(nz) if nz else None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, WeightEnumerator):
            return self._counts == other._counts
        return NotImplemented

    def __repr__(self) -> str:
        return f"WeightEnumerator({dict(self.pairs())})"

    def __str__(self) -> str:
        terms = []
        for w, c in self.pairs():
            if w == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(f"z^{w}")
            else:
                terms.append(f"{c}z^{w}")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class BinaryCode:
    """Binary linear code held as a canonical row-reduced generator basis."""

    length: int
    rows: tuple[int, ...]

    @classmethod
    def from_rows(cls, length: int, rows: Sequence[int]) -> "BinaryCode":
        return cls(length, F2Span(rows).basis())

    @property
    def rank(self) -> int:
        return len(self.rows)

    @cached_property
    def _weight_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for word in span_iter(self.rows):
            w = word.bit_count()
            counts[w] = counts.get(w, 0) + 1
        return counts

    def weight_enumerator(self, budget: int = DEFAULT_BUDGET_LOG2) -> WeightEnumerator:
        _check_budget(self.rank, budget)
        return WeightEnumerator(self._weight_counts)

    def min_distance(self, budget: int = DEFAULT_BUDGET_LOG2) -> int:
        _check_budget(self.rank, budget)
        if self.rank == 0:
            raise ValueError("the zero code has no minimum distance")
        return min(w for w in self._weight_counts if w > 0)

    def is_self_orthogonal(self) -> bool:
        rows = self.rows
        return all(
            ((rows[i] & rows[j]).bit_count() & 1) == 0
            for i in range(len(rows))
            for j in range(i, len(rows))
        )

    def is_self_dual(self) -> bool:
        return 2 * self.rank == self.length and self.is_self_orthogonal()

    def qc_index_check(self, s: int) -> bool:
        """True iff every generator row shifted by s positions stays in the code."""
        if s <= 0 or self.length % s:
            raise ValueError(f"shift {s} does not divide length {self.length}")
        span = F2Span(self.rows)
        return all(rotate_bits(row, s, self.length) in span for row in self.rows)

    def codewords(self, budget: int = DEFAULT_BUDGET_LOG2) -> Iterator[int]:
        _check_budget(self.rank, budget)
        return span_iter(self.rows)


def binary_image_of_span(span: ModuleSpan, gray: GrayMap | None = None) -> BinaryCode:
    gray = gray or GrayMap(span.k)
    n_bits = 1 << span.k
    mask = (1 << n_bits) - 1
    rows = []
    for flat in span.basis:
        img = 0
        for i in range(span.n):
            e = RingElement(span.k, (flat >> (i * n_bits)) & mask)
            img |= gray.element_image(e) << (i * gray.image_len)
        rows.append(img)
    return BinaryCode.from_rows(span.n * gray.image_len, F2Span(rows).basis())


def binary_image(
    code: QTCode, budget: int = DEFAULT_BUDGET_LOG2, gray: GrayMap | None = None
) -> BinaryCode:
    span = code_span(code)
    _check_budget(span.rank, budget)
    return binary_image_of_span(span, gray)


def hom_weight_enumerator(code: QTCode, budget: int = DEFAULT_BUDGET_LOG2) -> WeightEnumerator:
    """Homogeneous weight distribution, computed on the ring side."""
    span = code_span(code)
    _check_budget(span.rank, budget)
    k = span.k
    n_bits = 1 << k
    mask = (1 << n_bits) - 1
    top = 1 << (n_bits - 1)
    g = gamma(k)
    wt = [0] * (1 << n_bits)
    for c in range(1, 1 << n_bits):
        wt[c] = 2 * g if c == top else g
    counts: dict[int, int] = {}
    for flat in span.iter_flat(budget):
        w = 0
        for i in range(span.n):
            w += wt[(flat >> (i * n_bits)) & mask]
        counts[w] = counts.get(w, 0) + 1
    return WeightEnumerator(counts)


def residue_code(code: QTCode, budget: int = DEFAULT_BUDGET_LOG2) -> BinaryCode:
    """Binary projection of the code under reduction mod the maximal ideal."""
    span = code_span(code)
    _check_budget(span.rank, budget)
    n_bits = 1 << span.k
    rows = []
    for flat in span.basis:
        row = 0
        for i in range(span.n):
            if (flat >> (i * n_bits)) & 1:
                row |= 1 << i
        rows.append(row)
    return BinaryCode.from_rows(span.n, rows)


def free_rank_check(g: Polynomial) -> tuple[bool, int | None]:
    """Divisibility test for freeness of the constacyclic code <g(x)>.

    Returns (is_free, rank) with rank = m - deg g when g | x^m - lambda,
    else (False, None).  The matching image-dimension consequence
    (2^k * rank) is verified empirically by the callers.
    """
    if poly_degree(g.coeffs) < 0:
        raise ValueError("zero polynomial")
    trimmed = list(g.coeffs[: poly_degree(g.coeffs) + 1])
    if divides_modulus(trimmed, g.m, g.lam):
        return True, g.m - g.degree()
    return False, None


def grade_scaled(vec: Sequence[RingElement], lam: RingElement, ell: int) -> RingVec:
    """Scale coordinate j by lam^(j // ell): the coefficient-substitution map."""
    return tuple(e if (j // ell) % 2 == 0 else lam * e for j, e in enumerate(vec))


def qc_equivalent(code: QTCode) -> QTCode:
    """The ell-QC code corresponding to a QT code of odd coindex.

    Applies the substitution x -> lambda*x blockwise to the generators; for
    odd m the codeword set of the result is exactly the grade-scaled image
    of the original code.
    """
    if code.m % 2 == 0:
        raise ValueError("QT/QC correspondence requires odd coindex")
    gens = tuple(
        tuple(
            tuple(c if i % 2 == 0 else code.lam * c for i, c in enumerate(block))
            for block in gen
        )
        for gen in code.generators
    )
    return QTCode(one(code.k), code.ell, code.m, gens)


def code_record(
    code: QTCode,
    budget: int = DEFAULT_BUDGET_LOG2,
    notation: str | None = None,
    gray: GrayMap | None = None,
) -> dict:
    """JSON-ready summary of a code and its binary image."""
    img = binary_image(code, budget, gray)
    enum = img.weight_enumerator(budget) if img.rank <= budget else None
    qc_index = None
    if code.lam.coeffs == 1:
        s = (1 << ((1 << code.k) - 1)) * code.ell
        if img.length % s == 0 and img.qc_index_check(s):
            qc_index = s
    return {
        "k": code.k,
        "lambda": format_element(code.lam, notation),
        "ell": code.ell,
        "m": code.m,
        "generators": code.generator_strings(notation),
        "image": {
            "length": img.length,
            "dimension": img.rank,
            "min_distance": img.min_distance(budget) if img.rank else None,
            "weight_enumerator": [list(p) for p in enum.pairs()] if enum else None,
        },
        "flags": {
            "self_orthogonal": img.is_self_orthogonal(),
            "qc_index": qc_index,
        },
    }
