"""The homogeneous-weight Gray map from R_k to binary 2^(2^k-1)-tuples.

Basis monomials of R_k go to generators of the first-order Reed-Muller code
RM(1, m) with m = 2^k - 1: the top monomial u_1...u_k to the all-ones word,
the rest to (complemented) coordinate-bit evaluation vectors.  Any such
assignment turns the homogeneous weight into the Hamming weight, because
RM(1, m) has exactly one word of full weight and all other nonzero words of
weight 2^(m-1) = gamma.

The k = 1 and k = 2 tables are pinned to the published displays

    psi_1(1) = 01   psi_1(u) = 11
    psi_2(1) = 10101010   psi_2(u) = 11110000
    psi_2(v) = 11001100   psi_2(uv) = 11111111

(strings are coordinate 0 first); for k >= 3 the monomial with subset
index a maps to the evaluation vector "bit a of the coordinate index".
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

from rkcodes.gf2 import F2Span, bits_to_str
from rkcodes.ring import K_MAX, RingElement

RingVec = tuple[RingElement, ...]

_PINNED_ROWS = {
    1: (0b10, 0b11),  # 1, u
    2: (0x55, 0x0F, 0x33, 0xFF),  # 1, u, v, uv
}


class NotInImageError(ValueError):
    """A binary block lies outside RM(1, 2^k - 1)."""


class PermutationNotFoundError(RuntimeError):
    """No affine coordinate permutation realizes multiplication by the unit.

    Reaching this would contradict the permutation-equivalence of psi(a)
    and psi(lambda * a); it indicates a corrupted basis table.
    """


def _bit_slice_rows(k: int) -> tuple[int, ...]:
    n_points = 1 << ((1 << k) - 1)
    rows = []
    for a in range((1 << k) - 1):
        row = 0
        for s in range(n_points):
            if (s >> a) & 1:
                row |= 1 << s
        rows.append(row)
    rows.append((1 << n_points) - 1)  # top monomial -> all-ones
    return tuple(rows)


class GrayMap:
    """Immutable per-k table mapping R_k vectors to binary words and back."""

    def __init__(self, k: int, *, allow_above_k_max: bool = False):
        if k < 1:
            raise ValueError("k must be >= 1")
        if k > K_MAX and not allow_above_k_max:
            raise ValueError(
                f"Gray images for k={k} exceed K_MAX={K_MAX}; "
                "pass allow_above_k_max=True to force"
            )
        self.k = k
        self.image_len = 1 << ((1 << k) - 1)
        self.basis_rows = _PINNED_ROWS.get(k) or _bit_slice_rows(k)
        self._element_cache: dict[int, int] = {}
        # Decoder: reduced rows with the basis combination that produced them.
        reduced: list[tuple[int, int, int]] = []  # (pivot, row, combination)
        for idx, row in enumerate(self.basis_rows):
            comb = 1 << idx
            for pivot, r, c in reduced:
                if (row >> pivot) & 1:
                    row ^= r
                    comb ^= c
            if row == 0:
                raise AssertionError("basis table rows are not independent")
            reduced.append(((row & -row).bit_length() - 1, row, comb))
        self._decoder = tuple(reduced)

    def element_image(self, e: RingElement) -> int:
        if e.k != self.k:
            raise ValueError(f"element of R_{e.k} fed to a k={self.k} Gray map")
        cached = self._element_cache.get(e.coeffs)
        if cached is not None:
            return cached
        img = 0
        c = e.coeffs
        while c:
            bit = c & -c
            c ^= bit
            img ^= self.basis_rows[bit.bit_length() - 1]
        self._element_cache[e.coeffs] = img
        return img

    def image(self, vec: Sequence[RingElement]) -> int:
        """Componentwise image; block i occupies bits [i*image_len, (i+1)*image_len)."""
        out = 0
        for i, e in enumerate(vec):
            out |= self.element_image(e) << (i * self.image_len)
        return out

    def image_str(self, vec: Sequence[RingElement]) -> str:
        return bits_to_str(self.image(vec), len(vec) * self.image_len)

    def element_preimage(self, block: int) -> RingElement:
        if not 0 <= block < 1 << self.image_len:
            raise NotInImageError("block does not fit the image length")
        comb = 0
        for pivot, row, c in self._decoder:
            if (block >> pivot) & 1:
                block ^= row
                comb ^= c
        if block:
            raise NotInImageError("binary block lies outside RM(1, 2^k - 1)")
        return RingElement(self.k, comb)

    def preimage(self, bits: int, n_blocks: int) -> RingVec:
        """Unique preimage of a valid n_blocks * image_len word."""
        mask = (1 << self.image_len) - 1
        return tuple(
            self.element_preimage((bits >> (i * self.image_len)) & mask)
            for i in range(n_blocks)
        )

    def unit_mul_permutation(self, lam: RingElement) -> tuple[int, ...]:
        """Coordinate permutation P with psi(lam*a) = P applied to psi(a) for all a.

        P is returned as a tuple: new coordinate P[c] gets old coordinate c.
        Searches affine maps on the coordinate index (the RM(1, m)
        automorphisms) and verifies the candidate over the whole ring before
        returning, so a successful return is a proof for this table.
        """
        if lam.k != self.k:
            raise ValueError("unit from the wrong ring")
        if not lam.is_unit:
            raise ValueError("lambda must be a unit")
        if self.k > 2:
            raise ValueError("affine permutation search is only supported for k <= 2")
        m = (1 << self.k) - 1
        pairs = [
            (self.element_image(e), self.element_image(lam * e))
            for e in (RingElement(self.k, c) for c in range(1 << (1 << self.k)))
        ]

        def verified(perm: tuple[int, ...]) -> bool:
            return all(apply_permutation(perm, src, self.image_len) == dst
                       for src, dst in pairs)

        identity = tuple(range(self.image_len))
        if verified(identity):
            return identity
        for cols in product(range(1, 1 << m), repeat=m):
            if F2Span(cols).rank < m:
                continue
            for t in range(1 << m):
                perm = []
                for p in range(self.image_len):
                    q = t
                    for j in range(m):
                        if (p >> j) & 1:
                            q ^= cols[j]
                    perm.append(q)
                cand = tuple(perm)
                if verified(cand):
                    return cand
        raise PermutationNotFoundError(
            f"no affine permutation realizes multiplication by {lam}"
        )


def apply_permutation(perm: Sequence[int], bits: int, length: int) -> int:
    out = 0
    for c in range(length):
        if (bits >> c) & 1:
            out |= 1 << perm[c]
    return out
