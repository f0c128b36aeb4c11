"""
Sign-respecting permutations of the 2n literal points (elements of W_n).

A Permutation stores its image array over points 0..2n-1 (see core's
point encoding). Composition follows the left-to-right convention
``x^(fg) = (x^f)^g``: f acts first.

Cycle notation:
    "(1 3 4)(2 5)"      cycles of signed integers, whitespace or commas
    "(1 -1)(2 -2)"      a flip of variables 1 and 2
    "()"                the identity
Parsing completes every cycle with its sign dual; formatting prints each
cycle once, starting at its smallest point, and suppresses dual cycles.
"""

import math
import re
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

import numpy as np

from .core import Clause, lit_to_point, point_to_lit
from .errors import NotBijective, ParseError, WnConflict, ZapError

_TOKEN = re.compile(r"\s+|,|\(|\)|[-−¬]?\d+")


class Permutation:
    """An element of W_n given by its image array over the 2n points."""

    __slots__ = ("n", "_img", "_key")

    def __init__(self, n: int, images: Union[Sequence[int], np.ndarray, None] = None):
        if n < 0:
            raise ZapError(f"Variable count must be nonnegative, got {n}")
        if images is None:
            arr = np.arange(2 * n, dtype=np.int32)
        else:
            arr = np.array(images, dtype=np.int32)
            _validate(n, arr)
        arr.setflags(write=False)
        self.n = n
        self._img = arr
        self._key = arr.tobytes()

    @classmethod
    def _raw(cls, n: int, arr: np.ndarray) -> "Permutation":
        """Wrap an image array known to be a valid W_n element (no checks)."""
        perm = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.int32)
        arr.setflags(write=False)
        perm.n = n
        perm._img = arr
        perm._key = arr.tobytes()
        return perm

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(n)

    @classmethod
    def from_literal_map(cls, n: int, mapping: Mapping[int, int]) -> "Permutation":
        """
        Build the permutation with the given literal images, completing each
        l -> m with -l -> -m and fixing every point left unmapped.
        """
        size = 2 * n
        img = np.full(size, -1, dtype=np.int64)
        for src, dst in mapping.items():
            for a, b in ((src, dst), (-src, -dst)):
                if a == 0 or b == 0 or abs(a) > n or abs(b) > n:
                    raise ZapError(f"Literal pair {src}->{dst} outside {n} variables")
                pa, pb = lit_to_point(a, n), lit_to_point(b, n)
                if img[pa] != -1 and img[pa] != pb:
                    raise WnConflict(
                        f"Image of {a} is forced to {point_to_lit(int(img[pa]), n)} "
                        f"but {b} was given"
                    )
                img[pa] = pb
        unmapped = img == -1
        img[unmapped] = np.nonzero(unmapped)[0]
        if len(np.unique(img)) != size:
            raise NotBijective(f"Literal map {dict(mapping)} is not a bijection")
        return cls._raw(n, img)

    @classmethod
    def from_variable_map(cls, n: int, mapping: Mapping[int, int]) -> "Permutation":
        """Sign-preserving permutation sending variable v to mapping[v]."""
        return cls.from_literal_map(n, {v: w for v, w in mapping.items()})

    @property
    def images(self) -> np.ndarray:
        return self._img

    def apply(self, x):
        """Image of a literal, a Clause, or a set of literals."""
        if isinstance(x, Clause):
            return Clause(self._lit(lit) for lit in x)
        if isinstance(x, (set, frozenset)):
            return frozenset(self._lit(lit) for lit in x)
        return self._lit(x)

    def _lit(self, lit: int) -> int:
        if lit == 0 or abs(lit) > self.n:
            raise ZapError(f"Literal {lit} outside {self.n} variables")
        return point_to_lit(int(self._img[lit_to_point(lit, self.n)]), self.n)

    __call__ = apply

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else inverse(self)
        k = abs(k)
        result = Permutation.identity(self.n)
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.n == other.n and self._key == other._key

    def __hash__(self) -> int:
        return hash((self.n, self._key))

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._img, np.arange(2 * self.n)))

    def support(self) -> frozenset:
        """Literals moved by the permutation."""
        moved = np.nonzero(self._img != np.arange(2 * self.n))[0]
        return frozenset(point_to_lit(int(p), self.n) for p in moved)

    def moved_variables(self) -> frozenset:
        return frozenset(abs(lit) for lit in self.support())

    def cycles(self) -> List[Tuple[int, ...]]:
        """All nontrivial cycles as literal tuples, each from its smallest point."""
        return [
            tuple(point_to_lit(p, self.n) for p in cyc)
            for cyc in _point_cycles(self._img)
        ]

    def order(self) -> int:
        return math.lcm(*(len(c) for c in _point_cycles(self._img))) if self._moves() else 1

    def extend(self, n_new: int) -> "Permutation":
        """The same permutation in a space of n_new >= n variables."""
        if n_new < self.n:
            raise ZapError(f"Cannot shrink a permutation from {self.n} to {n_new} variables")
        mapping = {
            point_to_lit(p, self.n): point_to_lit(int(q), self.n)
            for p, q in enumerate(self._img[: self.n])
        }
        return Permutation.from_literal_map(n_new, mapping)

    def _moves(self) -> bool:
        return not self.is_identity()

    def __repr__(self) -> str:
        return f"Permutation({self.n}, '{format_cycles(self)}')"

    def __str__(self) -> str:
        return format_cycles(self)


def _validate(n: int, arr: np.ndarray) -> None:
    size = 2 * n
    if arr.shape != (size,):
        raise NotBijective(f"Image array must have length {size}, got shape {arr.shape}")
    if size == 0:
        return
    if arr.min() < 0 or arr.max() >= size or len(np.unique(arr)) != size:
        raise NotBijective("Image array is not a bijection on the literal points")
    mate = (np.arange(size) + n) % size
    if not np.array_equal(arr[mate], (arr + n) % size):
        bad = int(np.nonzero(arr[mate] != (arr + n) % size)[0][0])
        raise WnConflict(
            f"Literal {point_to_lit(bad, n)} breaks sign-respect"
        )


def _point_cycles(img: np.ndarray) -> List[List[int]]:
    seen = np.zeros(len(img), dtype=bool)
    cycles = []
    for start in range(len(img)):
        if seen[start] or img[start] == start:
            seen[start] = True
            continue
        cyc = []
        p = start
        while not seen[p]:
            seen[p] = True
            cyc.append(p)
            p = int(img[p])
        cycles.append(cyc)
    return cycles


def compose(f: Permutation, g: Permutation) -> Permutation:
    """The product fg: apply f, then g."""
    if f.n != g.n:
        raise ZapError(f"Cannot compose permutations over {f.n} and {g.n} variables")
    return Permutation._raw(f.n, g._img[f._img])


def inverse(f: Permutation) -> Permutation:
    inv = np.empty_like(f._img)
    inv[f._img] = np.arange(len(f._img), dtype=np.int32)
    return Permutation._raw(f.n, inv)


def apply(f: Permutation, x):
    return f.apply(x)


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation over signed literals of an n-variable space."""
    cycles: List[List[int]] = []
    current = None
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ParseError(f"Unexpected character {text[pos]!r}", column=pos + 1)
        token = match.group(0)
        column = pos + 1
        pos = match.end()
        if token.isspace() or token == ",":
            continue
        if token == "(":
            if current is not None:
                raise ParseError("Nested '('", column=column)
            current = []
        elif token == ")":
            if current is None:
                raise ParseError("Unbalanced ')'", column=column)
            cycles.append(current)
            current = None
        else:
            if current is None:
                raise ParseError(f"Literal {token} outside a cycle", column=column)
            lit = int(token.replace("−", "-").replace("¬", "-"))
            if lit == 0:
                raise ParseError("Literal 0 in cycle", column=column)
            if abs(lit) > n:
                raise ParseError(f"Literal {lit} exceeds {n} variables", column=column)
            current.append(lit)
    if current is not None:
        raise ParseError("Unclosed '('", column=len(text) + 1)
    if not cycles:
        raise ParseError("No cycles found; write '()' for the identity", column=1)

    mapping: Dict[int, int] = {}
    seen = set()
    for cyc in cycles:
        for lit in cyc:
            if lit in seen:
                raise NotBijective(f"Literal {lit} appears more than once")
            seen.add(lit)
        for i, lit in enumerate(cyc):
            mapping[lit] = cyc[(i + 1) % len(cyc)]

    # explicit images first, so a clash with a completed dual is a WnConflict
    img: Dict[int, int] = dict(mapping)
    for src, dst in mapping.items():
        if -src in img and img[-src] != -dst:
            raise WnConflict(
                f"Image of {-src} must be {-dst} (dual of {src} -> {dst}), "
                f"but {img[-src]} was given"
            )
        img[-src] = -dst
    return Permutation.from_literal_map(n, img)


def _printed_cycles(f: Permutation) -> List[Tuple[int, ...]]:
    printed = []
    printed_sets = set()
    for cyc in f.cycles():
        dual = frozenset(-lit for lit in cyc)
        if dual in printed_sets:
            continue
        printed_sets.add(frozenset(cyc))
        printed.append(cyc)
    return printed


def format_cycles(f: Permutation) -> str:
    """Canonical cycle text: dual cycles suppressed, '()' for the identity."""
    cycles = _printed_cycles(f)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(lit) for lit in cyc) + ")" for cyc in cycles)


def cycle_size(f: Permutation) -> int:
    """Total length of the printed cycles."""
    return sum(len(cyc) for cyc in _printed_cycles(f))


def representation_size(generators: Iterable[Permutation]) -> Tuple[int, int]:
    """(generator count, total printed cycle length) of a generator list."""
    gens = [g for g in generators if not g.is_identity()]
    return len(gens), sum(cycle_size(g) for g in gens)
