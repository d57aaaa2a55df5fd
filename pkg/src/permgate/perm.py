"""Permutations on basis indices and their matrix realization.

An n-qubit gate that sends every computational basis state to a basis state
is fully described by a permutation of the 2**n basis indices, so the whole
package works on plain permutations of {0, ..., M-1}.  Dimension M is
arbitrary (M = 2**n only in gate contexts).

Text form is the classical one-line notation "(k,l,...,n)" with 1-based
entries: the entry k at 1-based position i means input index k-1 is sent to
output index i-1.  Internally ``images[j]`` is the 0-based output index for
input index j, so parsing "(2,1,3,4)" gives images (1, 0, 2, 3).
"""

from __future__ import annotations

from typing import Iterable, Iterator

import itertools

import numpy as np

from .errors import CapExceeded, DimensionError, NotationError

# 12! is about 4.8e8; anything above that is refused without an override.
ENUMERATION_CAP = 12


class Permutation:
    """An immutable bijection on {0, ..., size-1}.

    Composition uses the "apply rightmost first" convention:
    ``(p * q)(x) == p(q(x))``.
    """

    __slots__ = ("_images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(images)
        if not imgs:
            raise DimensionError("permutation dimension must be at least 1")
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a bijection on 0..{len(imgs) - 1}: {list(imgs)}")
        self._images = imgs

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        if size < 1:
            raise DimensionError(f"invalid dimension {size}; must be >= 1")
        return cls(range(size))

    @classmethod
    def from_one_line(cls, text: str) -> "Permutation":
        """Parse one-line notation such as "(2,1,3,4)".

        Whitespace around entries is tolerated.  Raises NotationError naming
        the offending token on duplicates, out-of-range entries, or syntax
        errors.
        """
        s = text.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise NotationError(f"expected parenthesized list, got {text!r}")
        body = s[1:-1]
        tokens = [t.strip() for t in body.split(",")]
        if tokens == [""]:
            raise NotationError("empty one-line notation '()'")
        size = len(tokens)
        images = [-1] * size
        seen = set()
        for pos, tok in enumerate(tokens):
            if not tok.isdigit():
                raise NotationError(f"expected positive integer, got {tok!r}")
            entry = int(tok)
            if not 1 <= entry <= size:
                raise NotationError(f"entry {tok!r} out of range 1..{size}")
            if entry in seen:
                raise NotationError(f"duplicate entry {tok!r}")
            seen.add(entry)
            # entry k at 1-based position i: input k-1 goes to output i-1
            images[entry - 1] = pos
        return cls(images)

    @property
    def images(self) -> tuple[int, ...]:
        return self._images

    @property
    def size(self) -> int:
        return len(self._images)

    def one_line(self) -> str:
        """Render as 1-based one-line notation, no spaces."""
        inv = self.inverse()._images
        return "(" + ",".join(str(i + 1) for i in inv) + ")"

    def __call__(self, index: int) -> int:
        return self._images[index]

    def __len__(self) -> int:
        return len(self._images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Compose: (p * q)(x) = p(q(x)), i.e. q is applied first."""
        if not isinstance(other, Permutation):
            return NotImplemented
        if self.size != other.size:
            raise DimensionError(
                f"dimension mismatch: {self.size} vs {other.size}"
            )
        return Permutation(self._images[j] for j in other._images)

    def compose(self, other: "Permutation") -> "Permutation":
        return self * other

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._images)
        for j, img in enumerate(self._images):
            inv[img] = j
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(img == j for j, img in enumerate(self._images))

    def is_involution(self) -> bool:
        """True iff p composed with itself is the identity (p == p^-1)."""
        imgs = self._images
        return all(imgs[img] == j for j, img in enumerate(imgs))

    def matrix(self) -> np.ndarray:
        """0/1 permutation matrix with entry[i][j] = 1 iff images[j] = i.

        The result is orthogonal: m @ m.T is the identity, and m is
        symmetric exactly when the permutation is an involution.
        """
        m = np.zeros((self.size, self.size), dtype=np.uint8)
        for j, img in enumerate(self._images):
            m[img, j] = 1
        return m

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._images == other._images

    def __lt__(self, other: "Permutation") -> bool:
        return self._images < other._images

    def __hash__(self) -> int:
        return hash(self._images)

    def __repr__(self) -> str:
        return f"Permutation({list(self._images)})"

    def __str__(self) -> str:
        return self.one_line()


def check_enumeration_cap(size: int, force: bool = False) -> None:
    """Refuse size > ENUMERATION_CAP (12! and beyond is past desk scale)
    unless force is set."""
    if size < 1:
        raise DimensionError(f"invalid dimension {size}; must be >= 1")
    if size > ENUMERATION_CAP and not force:
        raise CapExceeded(
            f"enumeration of S_{size} refused: cap is {ENUMERATION_CAP} "
            f"({ENUMERATION_CAP}! permutations); pass force=True to override"
        )


def enumerate_permutations(size: int, force: bool = False) -> Iterator[Permutation]:
    """Yield all size! permutations in lexicographic order of their images."""
    check_enumeration_cap(size, force)
    for images in itertools.permutations(range(size)):
        yield Permutation(images)
