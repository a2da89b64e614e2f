"""Boolean functions on {0,1}^n as dense truth tables packed into Python ints.

Encoding, fixed once for the whole package and for the truth-table file
format: a point x = (x_1, ..., x_n) has index k = sum_i x_i * 2^(i-1)
(coordinate 1 is the least significant bit of the index), and bit k of the
table integer is f(x).  All kernels below are plain int operations, so the
hot paths (restrictions, monotonicity tests, boundary extraction) run at
C speed on whole tables at once.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence, Union

#: Largest supported dimension; a table is then 2^24 bits = 2 MiB.
MAX_DIMENSION = 24


class HypothesisError(ValueError):
    """A check's hypotheses do not hold, as opposed to its conclusion failing."""


# ---------------------------------------------------------------------------
# bitset kernels
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def table_mask(n: int) -> int:
    """All-ones mask over the 2^n table bits."""
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=None)
def low_half_mask(n: int, bit: int) -> int:
    """Mask of point indices k in [0, 2^n) whose index bit `bit` is 0.

    These are the lower endpoints of the edges in coordinate bit+1.
    """
    piece = (1 << (1 << bit)) - 1
    width = 1 << (bit + 1)
    size = 1 << n
    while width < size:
        piece |= piece << width
        width <<= 1
    return piece


@lru_cache(maxsize=None)
def popcount_class_masks(n: int) -> tuple[int, ...]:
    """Masks W_0..W_n with W_w selecting the indices of Hamming weight w.

    (table & W_w).bit_count() counts the weight-w points of a family, which
    is all that exact measures and layer sizes need.
    """
    if n == 0:
        return (1,)
    prev = popcount_class_masks(n - 1)
    shift = 1 << (n - 1)
    out = []
    for w in range(n + 1):
        m = prev[w] if w < len(prev) else 0
        if w >= 1:
            m |= prev[w - 1] << shift
        out.append(m)
    return tuple(out)


def reverse_table(table: int, n: int) -> int:
    """Reverse the order of the 2^n table bits (index k -> 2^n - 1 - k)."""
    for bit in range(n):
        w = 1 << bit
        mask = low_half_mask(n, bit)
        table = ((table >> w) & mask) | ((table & mask) << w)
    return table


def iter_set_bits(value: int) -> Iterator[int]:
    """Indices of the set bits of a nonnegative int, ascending."""
    while value:
        lsb = value & -value
        yield lsb.bit_length() - 1
        value ^= lsb


# ---------------------------------------------------------------------------
# Boolean functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BooleanFunction:
    """A function {0,1}^n -> {0,1} stored as a 2^n-bit truth table."""

    n: int
    table: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_DIMENSION:
            raise ValueError(f"dimension must be in [1, {MAX_DIMENSION}], got {self.n}")
        if not 0 <= self.table <= table_mask(self.n):
            raise ValueError("table does not fit in 2^n bits")

    def value(self, point: int) -> int:
        """f at the point with index `point`."""
        return (self.table >> point) & 1

    @property
    def count(self) -> int:
        """Number of 1-points."""
        return self.table.bit_count()

    def points(self) -> Iterator[int]:
        """Indices of the 1-points, ascending."""
        return iter_set_bits(self.table)


def make_function(n: int, table: Union[str, Sequence[int]]) -> BooleanFunction:
    """Build a BooleanFunction from an explicit bit vector.

    `table` lists f at point index 0, 1, ..., 2^n - 1; a string like "0110"
    is read the same way.  Rejects wrong lengths and out-of-range dimensions.
    """
    if not 1 <= n <= MAX_DIMENSION:
        raise ValueError(f"dimension must be in [1, {MAX_DIMENSION}], got {n}")
    bits = [int(b) for b in table]
    if len(bits) != 1 << n:
        raise ValueError(f"table length {len(bits)} != 2^{n}")
    if any(b not in (0, 1) for b in bits):
        raise ValueError("table entries must be 0 or 1")
    mask = 0
    for k, b in enumerate(bits):
        mask |= b << k
    return BooleanFunction(n, mask)


def restrict(f: BooleanFunction, i: int, b: int) -> BooleanFunction:
    """Fix coordinate i to b; coordinates above i shift down by one."""
    if f.n < 2:
        raise ValueError("cannot restrict a 1-dimensional function")
    if not 1 <= i <= f.n:
        raise ValueError(f"coordinate {i} out of range [1, {f.n}]")
    if b not in (0, 1):
        raise ValueError("restriction value must be 0 or 1")
    half = 1 << (i - 1)
    step = half << 1
    ones = (1 << half) - 1
    src = f.table >> (b * half)
    out = 0
    for blk in range(1 << (f.n - i)):
        out |= ((src >> (blk * step)) & ones) << (blk * half)
    return BooleanFunction(f.n - 1, out)


def complement(f: BooleanFunction) -> BooleanFunction:
    """Pointwise complement: x -> 1 - f(x)."""
    return BooleanFunction(f.n, f.table ^ table_mask(f.n))


def dual(f: BooleanFunction) -> BooleanFunction:
    """The dual x -> 1 - f(x-bar), with x-bar flipping every coordinate."""
    return BooleanFunction(f.n, reverse_table(f.table, f.n) ^ table_mask(f.n))


def is_monotone(f: BooleanFunction) -> bool:
    """True iff raising any coordinate from 0 to 1 never decreases f."""
    t = f.table
    for bit in range(f.n):
        if t & ~(t >> (1 << bit)) & low_half_mask(f.n, bit):
            return False
    return True


# ---------------------------------------------------------------------------
# subcubes
# ---------------------------------------------------------------------------

class Sym(IntEnum):
    """Per-coordinate subcube symbol; the order ZERO < ONE < FREE is the
    tie-breaking order used by pattern comparisons."""

    ZERO = 0
    ONE = 1
    FREE = 2


_SYM_CHARS = {Sym.ZERO: "0", Sym.ONE: "1", Sym.FREE: "*"}
_CHAR_SYMS = {v: k for k, v in _SYM_CHARS.items()}


@dataclass(frozen=True)
class Subcube:
    """Points agreeing with a fixed 0/1 pattern on the non-FREE coordinates."""

    n: int
    pattern: tuple[Sym, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_DIMENSION:
            raise ValueError(f"dimension must be in [1, {MAX_DIMENSION}], got {self.n}")
        if len(self.pattern) != self.n:
            raise ValueError("pattern length must equal n")
        object.__setattr__(self, "pattern", tuple(Sym(s) for s in self.pattern))

    @classmethod
    def from_string(cls, s: str) -> "Subcube":
        """Parse a pattern like "01*" (coordinate 1 first)."""
        try:
            pattern = tuple(_CHAR_SYMS[c] for c in s)
        except KeyError as exc:
            raise ValueError(f"bad pattern character {exc.args[0]!r}") from None
        return cls(len(s), pattern)

    def __str__(self) -> str:
        return "".join(_SYM_CHARS[s] for s in self.pattern)

    @property
    def fixed_count(self) -> int:
        return sum(1 for s in self.pattern if s != Sym.FREE)

    @property
    def ones_count(self) -> int:
        return sum(1 for s in self.pattern if s == Sym.ONE)

    @property
    def zeros_count(self) -> int:
        return sum(1 for s in self.pattern if s == Sym.ZERO)

    def is_monotone_increasing(self) -> bool:
        """A subcube is monotone increasing iff its pattern fixes only 1s."""
        return self.zeros_count == 0


def subcube_indicator(c: Subcube) -> BooleanFunction:
    """Indicator function of the subcube."""
    want = 0
    free_bits = []
    for pos, s in enumerate(c.pattern):
        if s == Sym.ONE:
            want |= 1 << pos
        elif s == Sym.FREE:
            free_bits.append(pos)
    table = 0
    for choice in range(1 << len(free_bits)):
        point = want
        for j, pos in enumerate(free_bits):
            if (choice >> j) & 1:
                point |= 1 << pos
        table |= 1 << point
    return BooleanFunction(c.n, table)


def enumerate_subcubes(n: int) -> Iterator[Subcube]:
    """All 3^n subcubes, in lexicographic pattern order (ZERO < ONE < FREE)."""
    for pattern in product((Sym.ZERO, Sym.ONE, Sym.FREE), repeat=n):
        yield Subcube(n, pattern)


# ---------------------------------------------------------------------------
# families of functions
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def monotone_tables(n: int) -> tuple[int, ...]:
    """Truth tables of all monotone increasing functions on n coordinates.

    Recursion on the top coordinate: f is monotone iff both halves are and
    the lower half is pointwise <= the upper half.  Counts follow the
    Dedekind numbers (2, 3, 6, 20, 168, 7581, ...); n <= 5 stays instant,
    n = 6 is out of desk range and is refused.
    """
    if n > 5:
        raise ValueError("monotone enumeration supported only for n <= 5")
    if n == 0:
        return (0, 1)
    prev = monotone_tables(n - 1)
    shift = 1 << (n - 1)
    out = []
    for g1 in prev:
        for g0 in prev:
            if g0 & ~g1 == 0:
                out.append(g0 | (g1 << shift))
    return tuple(out)


# ---------------------------------------------------------------------------
# truth-table file format
# ---------------------------------------------------------------------------
# line 1: "n=<int>"
# line 2: ceil(2^n / 4) hex digits, least significant digit first, so that
#         bit k of the table is bit k of the hex value.

def format_table(f: BooleanFunction) -> str:
    """Serialize to the two-line truth-table format (with trailing newline)."""
    ndigits = -(-(1 << f.n) // 4)
    big_endian = format(f.table, f"0{ndigits}x")
    return f"n={f.n}\n{big_endian[::-1]}\n"


def parse_table(text: str) -> BooleanFunction:
    """Parse the two-line truth-table format; raises ValueError when malformed."""
    lines = text.splitlines()
    if len(lines) < 2:
        raise ValueError("truth-table file needs two lines: n=<int> and hex digits")
    head = lines[0].strip()
    if not head.startswith("n="):
        raise ValueError("first line must look like n=<int>")
    try:
        n = int(head[2:])
    except ValueError:
        raise ValueError("first line must look like n=<int>") from None
    if not 1 <= n <= MAX_DIMENSION:
        raise ValueError(f"dimension must be in [1, {MAX_DIMENSION}], got {n}")
    digits = lines[1].strip()
    ndigits = -(-(1 << n) // 4)
    if len(digits) != ndigits:
        raise ValueError(f"expected {ndigits} hex digits, got {len(digits)}")
    try:
        table = int(digits[::-1], 16)
    except ValueError:
        raise ValueError("second line must be hex digits") from None
    if table > table_mask(n):
        raise ValueError("table value does not fit in 2^n bits")
    return BooleanFunction(n, table)


def save_function(f: BooleanFunction, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_table(f))


def load_function(path) -> BooleanFunction:
    with open(path, "r", encoding="ascii") as fh:
        return parse_table(fh.read())
