"""Binary linear codes: construction, duals, permutations and enumeration.

Codewords are Python integers; bit ``i`` is the coordinate at position ``i``.
Generator rows are kept in reduced row-echelon form with pivots at the lowest
possible positions, so two codes are equal exactly when their row tuples are.

Exhaustive enumeration walks the message space in binary-reflected Gray code
order.  The vectorised path packs codewords into ``uint64`` and therefore
needs ``n <= 64``; the per-word visitor path has no length limit.
"""

from __future__ import annotations

import os
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .gf2 import Gf2Poly, qr_generator_polynomial

DEFAULT_MAX_DIMENSION = 25
BUDGET_ENV = "QRDESIGNS_MAX_DIM"
INF_LABEL = "inf"


class EnumerationBudgetError(RuntimeError):
    """Raised instead of starting an enumeration that is too large."""

    def __init__(self, k: int, budget: int):
        self.required = k
        self.budget = budget
        super().__init__(
            f"enumeration needs 2^{k} codewords but the budget allows k <= {budget}; "
            f"raise it with --budget or {BUDGET_ENV}={k}"
        )


def default_budget() -> int:
    return int(os.environ.get(BUDGET_ENV, DEFAULT_MAX_DIMENSION))


def check_budget(k: int, budget: int | None = None) -> None:
    budget = default_budget() if budget is None else budget
    if k > budget:
        raise EnumerationBudgetError(k, budget)


def popcount(x: int) -> int:
    return bin(x).count("1")


def rref(rows: Sequence[int]) -> tuple[int, ...]:
    """Row-reduce GF(2) vectors; zero rows are dropped, rows sorted by pivot."""
    pivots: dict[int, int] = {}
    for r in rows:
        for piv, pr in pivots.items():
            if (r >> piv) & 1:
                r ^= pr
        if not r:
            continue
        piv = (r & -r).bit_length() - 1
        for q in pivots:
            if (pivots[q] >> piv) & 1:
                pivots[q] ^= r
        pivots[piv] = r
    return tuple(pivots[q] for q in sorted(pivots))


def pivot_positions(rows: Sequence[int]) -> list[int]:
    return [(r & -r).bit_length() - 1 for r in rows]


@dataclass(frozen=True)
class LinearCode:
    n: int
    rows: tuple[int, ...]
    labels: tuple = field(default=None, compare=False)

    def __post_init__(self):
        canon = rref(self.rows)
        if len(canon) != len(self.rows):
            raise ValueError("generator rows are linearly dependent")
        if any(r >> self.n for r in canon):
            raise ValueError("generator row longer than the code length")
        object.__setattr__(self, "rows", canon)
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(range(self.n)))
        elif len(self.labels) != self.n:
            raise ValueError("need one label per coordinate")
        else:
            object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_rows(cls, n: int, rows: Sequence[int], labels=None) -> LinearCode:
        return cls(n, rref(rows), labels)

    @property
    def k(self) -> int:
        return len(self.rows)

    def __repr__(self):
        return f"LinearCode(n={self.n}, k={self.k})"

    def __contains__(self, word: int) -> bool:
        for r, piv in zip(self.rows, pivot_positions(self.rows)):
            if (word >> piv) & 1:
                word ^= r
        return word == 0

    def position(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown coordinate label {label!r}") from None

    def mask(self, labels) -> int:
        m = 0
        for lab in labels:
            m |= 1 << self.position(lab)
        return m

    def support(self, word: int) -> tuple:
        return tuple(self.labels[i] for i in range(self.n) if (word >> i) & 1)

    def matrix(self) -> np.ndarray:
        out = np.zeros((self.k, self.n), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.n):
                out[i, j] = (r >> j) & 1
        return out

    def to_text(self) -> str:
        lines = [f"{self.n} {self.k}"]
        for r in self.rows:
            lines.append("".join("1" if (r >> j) & 1 else "0" for j in range(self.n)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, labels=None) -> LinearCode:
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        n, k = map(int, lines[0].split())
        body = lines[1:]
        if len(body) != k:
            raise ValueError(f"header says k={k} but found {len(body)} rows")
        rows = []
        for ln in body:
            if len(ln) != n or set(ln) - {"0", "1"}:
                raise ValueError(f"bad generator row {ln!r}")
            rows.append(int(ln[::-1], 2))
        return cls.from_rows(n, rows, labels)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "labels": [str(lab) for lab in self.labels],
            "rows": self.to_text().splitlines()[1:],
        }

    @classmethod
    def from_json(cls, data: dict) -> LinearCode:
        labels = [INF_LABEL if s == INF_LABEL else int(s) for s in data["labels"]]
        text = f"{data['n']} {data['k']}\n" + "\n".join(data["rows"])
        return cls.from_text(text, labels)


def cyclic_code(g: Gf2Poly, p: int) -> LinearCode:
    """Cyclic code of length ``p`` generated by ``g``."""
    if (Gf2Poly((1 << p) | 1) % g).value:
        raise ValueError("generator polynomial must divide x^p - 1")
    k = p - g.degree
    return LinearCode.from_rows(p, [g.value << i for i in range(k)])


def qr_code(p: int) -> LinearCode:
    """Binary quadratic residue code of prime length p = +-1 mod 8."""
    return cyclic_code(qr_generator_polynomial(p), p)


def extended_qr_code(p: int) -> LinearCode:
    """QR code with a parity coordinate; positions carry labels 0..p-1, inf."""
    return extend_parity(qr_code(p))


def extend_parity(code: LinearCode) -> LinearCode:
    """Append an overall parity coordinate labelled ``inf``."""
    rows = [r | ((popcount(r) & 1) << code.n) for r in code.rows]
    return LinearCode.from_rows(code.n + 1, rows, code.labels + (INF_LABEL,))


def dual(code: LinearCode) -> LinearCode:
    pivots = pivot_positions(code.rows)
    free = [j for j in range(code.n) if j not in set(pivots)]
    out = []
    for f in free:
        v = 1 << f
        for r, piv in zip(code.rows, pivots):
            if (r >> f) & 1:
                v |= 1 << piv
        out.append(v)
    return LinearCode.from_rows(code.n, out, code.labels)


def intersection(a: LinearCode, b: LinearCode) -> LinearCode:
    """a ∩ b, computed as the dual of a^⊥ + b^⊥."""
    _same_length(a, b)
    both = LinearCode.from_rows(a.n, dual(a).rows + dual(b).rows, a.labels)
    return dual(both)


def _same_length(a: LinearCode, b: LinearCode) -> None:
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} vs {b.n}")


def same_code(a: LinearCode, b: LinearCode) -> bool:
    _same_length(a, b)
    return a.rows == b.rows


def permute_word(word: int, perm: Sequence[int]) -> int:
    out = 0
    for i, j in enumerate(perm):
        if (word >> i) & 1:
            out |= 1 << j
    return out


def permute(code: LinearCode, perm: Sequence[int]) -> LinearCode:
    """Move coordinate ``i`` to position ``perm[i]``; labels stay in place."""
    if len(perm) != code.n or sorted(perm) != list(range(code.n)):
        raise ValueError("perm must be a permutation of the code positions")
    return LinearCode.from_rows(code.n, [permute_word(r, perm) for r in code.rows], code.labels)


# -- enumeration -------------------------------------------------------------

def gray(i: int) -> int:
    return i ^ (i >> 1)


def enumerate_codewords(code: LinearCode, visitor: Callable[[int, int], None],
                        budget: int | None = None) -> None:
    """Call ``visitor(word, weight)`` once per codeword, in Gray-code order.

    Consecutive words differ by exactly one generator row.
    """
    check_budget(code.k, budget)
    word = 0
    visitor(word, 0)
    for i in range(1, 1 << code.k):
        # index of the bit that flips between gray(i-1) and gray(i)
        word ^= code.rows[(i & -i).bit_length() - 1]
        visitor(word, popcount(word))


def _span_table(rows: Sequence[int]) -> np.ndarray:
    table = np.zeros(1, dtype=np.uint64)
    for r in rows:
        table = np.concatenate([table, table ^ np.uint64(r)])
    return table


class CodewordBlocks:
    """Vectorised Gray-order codeword generator for codes of length <= 64.

    Index ``i`` maps to the message ``gray(i)``; the codeword is assembled
    from two precomputed span tables (low and high generator rows).
    """

    LOW_BITS = 16

    def __init__(self, code: LinearCode, budget: int | None = None):
        check_budget(code.k, budget)
        if code.n > 64:
            raise ValueError("vectorised enumeration needs n <= 64")
        self.code = code
        self.size = 1 << code.k
        self.low_bits = min(self.LOW_BITS, code.k)
        self.low = _span_table(code.rows[: self.low_bits])
        self.high = _span_table(code.rows[self.low_bits:])

    def words(self, start: int, stop: int) -> np.ndarray:
        i = np.arange(start, stop, dtype=np.uint64)
        g = i ^ (i >> np.uint64(1))
        lo = g & np.uint64((1 << self.low_bits) - 1)
        hi = g >> np.uint64(self.low_bits)
        return self.low[lo] ^ self.high[hi]

    def chunks(self, start: int = 0, stop: int | None = None,
               chunk: int = 1 << 16) -> Iterator[np.ndarray]:
        stop = self.size if stop is None else stop
        for a in range(start, stop, chunk):
            yield self.words(a, min(a + chunk, stop))


def partition_ranges(k: int, parts: int) -> list[tuple[int, int]]:
    """Split [0, 2^k) into 2^b equal ranges, 2^b the largest power <= parts.

    Each range fixes the top b bits of the Gray index and is enumerated
    independently.
    """
    b = 0
    while (1 << (b + 1)) <= max(parts, 1) and b + 1 <= k:
        b += 1
    step = 1 << (k - b)
    return [(r * step, (r + 1) * step) for r in range(1 << b)]


def default_threads() -> int:
    return os.cpu_count() or 1


def map_codewords(code: LinearCode, accumulate: Callable[[np.ndarray], object],
                  merge: Callable[[object, object], object], threads: int | None = None,
                  budget: int | None = None, chunk: int = 1 << 16):
    """Fold ``accumulate`` over codeword chunks and combine results with ``merge``.

    ``accumulate`` must be a pure function of its chunk; partial results are
    merged in range order, so the outcome does not depend on ``threads``.
    """
    blocks = CodewordBlocks(code, budget)
    threads = default_threads() if threads is None else max(1, threads)
    ranges = partition_ranges(code.k, threads)

    def run(rng):
        acc = None
        for words in blocks.chunks(rng[0], rng[1], chunk):
            part = accumulate(words)
            acc = part if acc is None else merge(acc, part)
        return acc

    if threads == 1 or len(ranges) == 1:
        results = [run(r) for r in ranges]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, ranges))
    total = results[0]
    for part in results[1:]:
        total = merge(total, part)
    return total


def weight_distribution(code: LinearCode, threads: int | None = None,
                        budget: int | None = None) -> np.ndarray:
    """counts[l] = number of codewords of weight l, for l = 0..n."""
    n = code.n
    return map_codewords(
        code,
        lambda w: np.bincount(np.bitwise_count(w), minlength=n + 1).astype(np.int64),
        np.add, threads, budget,
    )


def shell_words(code: LinearCode, weight: int, threads: int | None = None,
                budget: int | None = None) -> np.ndarray:
    """All codewords of the given weight as a sorted uint64 array."""
    words = map_codewords(
        code,
        lambda w: w[np.bitwise_count(w) == weight],
        lambda a, b: np.concatenate([a, b]), threads, budget,
    )
    return np.sort(words)


def shell(code: LinearCode, weight: int, threads: int | None = None,
          budget: int | None = None) -> list[tuple]:
    """Supports of the weight-``weight`` codewords, as label tuples."""
    return [code.support(int(w)) for w in shell_words(code, weight, threads, budget)]
