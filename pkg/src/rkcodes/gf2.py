"""Small GF(2) linear algebra over int bitsets (bit i = coordinate i)."""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


class F2Span:
    """Row space over GF(2), kept as a fully reduced (RREF) basis.

    Pivot of a row is its lowest set bit; rows are back-eliminated so no row
    contains another's pivot.  basis() is therefore a canonical form of the
    row space: two spans are equal iff their bases are equal.
    """

    def __init__(self, rows: Iterable[int] = ()):
        self._rows: dict[int, int] = {}  # pivot bit -> reduced row
        for r in rows:
            self.add(r)

    def reduce(self, v: int) -> int:
        """Residual of v after elimination against the basis."""
        for pivot, row in self._rows.items():
            if (v >> pivot) & 1:
                v ^= row
        return v

    def add(self, v: int) -> bool:
        """Insert v; returns True if the rank grew."""
        v = self.reduce(v)
        if v == 0:
            return False
        pivot = (v & -v).bit_length() - 1
        for p in self._rows:
            if (self._rows[p] >> pivot) & 1:
                self._rows[p] ^= v
        self._rows[pivot] = v
        return True

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    @property
    def rank(self) -> int:
        return len(self._rows)

    def basis(self) -> tuple[int, ...]:
        """Canonical RREF basis, sorted by pivot position."""
        return tuple(self._rows[p] for p in sorted(self._rows))


def gf2_rank(rows: Iterable[int]) -> int:
    return F2Span(rows).rank


def span_iter(basis: Sequence[int]) -> Iterator[int]:
    """All XOR-combinations of basis rows in Gray-code order, starting at 0.

    Consecutive words differ by exactly one basis row, so callers get
    incremental enumeration for free.
    """
    cur = 0
    yield cur
    for i in range(1, 1 << len(basis)):
        cur ^= basis[(i & -i).bit_length() - 1]
        yield cur


def rotate_bits(v: int, s: int, length: int) -> int:
    """Cyclic shift by s positions: new coordinate c+s gets old coordinate c."""
    s %= length
    if s == 0:
        return v
    mask = (1 << length) - 1
    return ((v << s) | (v >> (length - s))) & mask


def bits_to_str(v: int, length: int) -> str:
    """'0'/'1' string, coordinate 0 leftmost."""
    return "".join("1" if (v >> i) & 1 else "0" for i in range(length))


def str_to_bits(s: str) -> tuple[int, int]:
    """Inverse of bits_to_str; returns (value, length)."""
    s = s.strip()
    if not s or any(c not in "01" for c in s):
        raise ValueError(f"bad binary string {s!r}")
    v = 0
    for i, c in enumerate(s):
        if c == "1":
            v |= 1 << i
    return v, len(s)
