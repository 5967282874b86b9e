"""Involution alphabets and immutable strands.

Symbols are small integers stored in a ``bytes`` buffer, so strands are
hashable, cheap to slice and can be handed to the compiled search kernels
without copying.  Every public index is 1-based and ranges are inclusive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np


class AlphabetError(ValueError):
    """Raised for malformed alphabets or symbols outside an alphabet."""


class ParseError(ValueError):
    """Raised when strand text cannot be decoded."""


@dataclass(frozen=True)
class InvolutionAlphabet:
    """An alphabet with a fixed-point-free involution ``inv``.

    ``chars[k]`` is the one-character text encoding of symbol ``k``.
    """

    name: str
    inv: tuple[int, ...]
    chars: str
    _table: bytes = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.inv)
        if len(self.chars) != n or len(set(self.chars)) != n:
            raise AlphabetError("need one distinct character per symbol")
        for s, t in enumerate(self.inv):
            if not 0 <= t < n:
                raise AlphabetError(f"inv({s}) = {t} is not a symbol")
            if t == s:
                raise AlphabetError(f"inv has a fixed point at {s}")
            if self.inv[t] != s:
                raise AlphabetError(f"inv is not an involution at {s}")
        object.__setattr__(self, "_table", bytes(self.inv) + bytes(range(n, 256)))

    @property
    def symbols(self) -> range:
        return range(len(self.inv))

    def __len__(self) -> int:
        return len(self.inv)

    def complement_of(self, sigma: int) -> int:
        return self.inv[sigma]

    def inv_array(self) -> np.ndarray:
        return np.frombuffer(bytes(self.inv), dtype=np.uint8)

    def encode(self, text: str) -> bytes:
        try:
            return bytes(self.chars.index(c) for c in text)
        except ValueError:
            bad = next(c for c in text if c not in self.chars)
            raise ParseError(f"{bad!r} is not a {self.name} symbol") from None

    def decode(self, data: bytes) -> str:
        return "".join(self.chars[b] for b in data)


BINARY = InvolutionAlphabet("binary", (1, 0), "01")
# symbol 3 is the complement of 2 and prints as '3'
QUAD = InvolutionAlphabet("quad", (1, 0, 3, 2), "0123")

ALPHABETS = {"binary": BINARY, "quad": QUAD}


@dataclass(frozen=True)
class Strand:
    """An immutable sequence over an :class:`InvolutionAlphabet`."""

    alphabet: InvolutionAlphabet
    data: bytes

    def __post_init__(self) -> None:
        if self.data and max(self.data) >= len(self.alphabet):
            raise AlphabetError(f"symbol {max(self.data)} not in {self.alphabet.name}")

    @classmethod
    def from_text(cls, text: str, alphabet: InvolutionAlphabet = BINARY) -> Strand:
        return cls(alphabet, alphabet.encode(text))

    @classmethod
    def from_symbols(cls, symbols: Iterable[int], alphabet: InvolutionAlphabet = BINARY) -> Strand:
        return cls(alphabet, bytes(symbols))

    def __len__(self) -> int:
        return len(self.data)

    def __iter__(self) -> Iterator[int]:
        return iter(self.data)

    def __str__(self) -> str:
        return self.alphabet.decode(self.data)

    def __repr__(self) -> str:
        text = str(self)
        if len(text) > 40:
            text = f"{text[:18]}...{text[-18:]}"
        return f"Strand({self.alphabet.name}, {text!r}, len={len(self)})"

    def __add__(self, other: Strand) -> Strand:
        _same_alphabet(self, other)
        return Strand(self.alphabet, self.data + other.data)

    def __mul__(self, k: int) -> Strand:
        return Strand(self.alphabet, self.data * k)

    def at(self, k: int) -> int:
        """Symbol at 1-based position ``k``."""
        if not 1 <= k <= len(self.data):
            raise IndexError(f"position {k} outside [1..{len(self.data)}]")
        return self.data[k - 1]

    def sub(self, i: int, j: int) -> Strand:
        """The substring ``s[i..j]`` (1-based, inclusive); empty when ``j < i``."""
        if j < i:
            return Strand(self.alphabet, b"")
        if i < 1 or j > len(self.data):
            raise IndexError(f"range [{i}..{j}] outside [1..{len(self.data)}]")
        return Strand(self.alphabet, self.data[i - 1 : j])

    def as_array(self) -> np.ndarray:
        return np.frombuffer(self.data, dtype=np.uint8)


def _same_alphabet(a: Strand, b: Strand) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetError(f"alphabet mismatch: {a.alphabet.name} vs {b.alphabet.name}")


def concat(parts: Sequence[Strand], alphabet: InvolutionAlphabet = BINARY) -> Strand:
    for p in parts:
        if p.alphabet != alphabet:
            raise AlphabetError(f"alphabet mismatch: {p.alphabet.name} vs {alphabet.name}")
    return Strand(alphabet, b"".join(p.data for p in parts))


def complement(s: Strand) -> Strand:
    return Strand(s.alphabet, s.data.translate(s.alphabet._table))


def reverse_complement(s: Strand) -> Strand:
    return Strand(s.alphabet, s.data.translate(s.alphabet._table)[::-1])


def count_symbol(s: Strand, sigma: int) -> int:
    if sigma not in s.alphabet.symbols:
        raise AlphabetError(f"symbol {sigma} not in {s.alphabet.name}")
    return s.data.count(sigma)


def find_occurrences(haystack: Strand, needle: Strand) -> list[int]:
    """1-based start positions of every (possibly overlapping) occurrence."""
    _same_alphabet(haystack, needle)
    if not needle.data:
        return list(range(1, len(haystack) + 2))
    hits = []
    k = haystack.data.find(needle.data)
    while k >= 0:
        hits.append(k + 1)
        k = haystack.data.find(needle.data, k + 1)
    return hits


def parse_strand_text(text: str, alphabet: InvolutionAlphabet | None = None) -> Strand:
    """Decode strand file contents.

    Lines starting with ``#`` are metadata and skipped; whitespace is ignored.
    With ``alphabet=None`` the alphabet is QUAD if a '2' or '3' appears,
    otherwise BINARY.
    """
    body = "".join(
        line.strip() for line in text.splitlines() if not line.lstrip().startswith("#")
    )
    body = "".join(body.split())
    if alphabet is None:
        alphabet = QUAD if ("2" in body or "3" in body) else BINARY
    return Strand.from_text(body, alphabet)


def format_strand_text(s: Strand) -> str:
    return str(s) + "\n"
