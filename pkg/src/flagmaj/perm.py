"""Signed permutations of rank n and their statistics.

Elements of B_n are stored in window notation, ``(sigma(1), ..., sigma(n))``,
with ``sigma(-a) = -sigma(a)`` implied. ``SignedPermutation`` is a tuple, so
every statistic below also accepts a bare tuple of ints; the hot loops in
``classes`` rely on that.
"""
from __future__ import annotations

import enum
from collections import deque
from itertools import permutations, product
from typing import Iterator, Sequence


class InvalidWindow(ValueError):
    """Raised by :func:`make`. ``reason`` is one of 'zero', 'range', 'duplicate'."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


class RankMismatch(ValueError):
    pass


class NotInD(ValueError):
    pass


class RankTooLarge(ValueError):
    pass


class GroupKind(enum.Enum):
    TYPE_A = "A"
    TYPE_B = "B"
    TYPE_D = "D"


class StatKind(enum.Enum):
    INV = "inv"
    DES_A = "des_A"
    MAJ_A = "maj_A"
    NEG = "neg"
    FMAJ = "fmaj"
    FMAJ_ALT = "fmaj_alt"
    LEN_B = "len_B"
    LEN_B_DOUBLED = "len_B_doubled"
    DES_B_COUNT = "des_B"
    FMAJ_D = "fmaj_D"
    LEN_D_BFS = "len_D_bfs"
    LEN_B_BFS = "len_B_bfs"

    @classmethod
    def lookup(cls, name: str) -> "StatKind":
        """Accept either the member name (``LEN_B``) or its value (``len_B``)."""
        key = name.strip()
        for kind in cls:
            if key.upper() == kind.name or key == kind.value:
                return kind
        raise KeyError(f"unknown statistic {name!r}")


class SignedPermutation(tuple):
    """Window ``(sigma(1), ..., sigma(n))`` of an element of B_n.

    The constructor does not validate; use :func:`make` for untrusted input.
    """

    __slots__ = ()

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, a: int) -> int:
        if a == 0:
            return 0
        return self[a - 1] if a > 0 else -self[-a - 1]

    def __repr__(self) -> str:
        return f"SignedPermutation({list(self)})"

    def __str__(self) -> str:
        return format_window(self)

    @classmethod
    def parse(cls, text: str) -> "SignedPermutation":
        return parse_window(text)


def make(window: Sequence[int]) -> SignedPermutation:
    w = tuple(int(a) for a in window)
    n = len(w)
    seen = set()
    for pos, a in enumerate(w, 1):
        if a == 0:
            raise InvalidWindow("zero", f"entry at position {pos} is zero")
        if abs(a) > n:
            raise InvalidWindow("range", f"entry {a} at position {pos} exceeds rank {n}")
        if abs(a) in seen:
            raise InvalidWindow("duplicate", f"absolute value {abs(a)} repeated at position {pos}")
        seen.add(abs(a))
    return SignedPermutation(w)


def parse_window(text: str) -> SignedPermutation:
    text = text.strip().strip("[]")
    if not text:
        return SignedPermutation(())
    try:
        entries = [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise InvalidWindow("syntax", f"cannot parse window {text!r}") from exc
    return make(entries)


def format_window(sigma: Sequence[int]) -> str:
    return ",".join(str(a) for a in sigma)


def identity(n: int) -> SignedPermutation:
    return SignedPermutation(range(1, n + 1))


def generator(n: int, i: int) -> SignedPermutation:
    """Coxeter generator s_i of B_n: s_0 negates 1, s_i swaps i and i+1."""
    if not 0 <= i < n:
        raise ValueError(f"no generator s_{i} in B_{n}")
    w = list(range(1, n + 1))
    if i == 0:
        w[0] = -1
    else:
        w[i - 1], w[i] = w[i], w[i - 1]
    return SignedPermutation(w)


def inverse(sigma: Sequence[int]) -> SignedPermutation:
    inv = [0] * len(sigma)
    for pos, a in enumerate(sigma, 1):
        if a > 0:
            inv[a - 1] = pos
        else:
            inv[-a - 1] = -pos
    return SignedPermutation(inv)


def compose(sigma: Sequence[int], tau: Sequence[int]) -> SignedPermutation:
    """Window of ``sigma o tau`` (tau applied first)."""
    if len(sigma) != len(tau):
        raise RankMismatch(f"ranks differ: {len(sigma)} vs {len(tau)}")
    return SignedPermutation(sigma[a - 1] if a > 0 else -sigma[-a - 1] for a in tau)


def window_inv(sigma: Sequence[int]) -> int:
    n = len(sigma)
    return sum(1 for i in range(n) for j in range(i + 1, n) if sigma[i] > sigma[j])


def descent_data_A(sigma: Sequence[int]) -> tuple[frozenset, int, int]:
    des = frozenset(i for i in range(1, len(sigma)) if sigma[i - 1] > sigma[i])
    return des, len(des), sum(des)


def negatives(sigma: Sequence[int]) -> tuple[frozenset, int]:
    neg = frozenset(pos for pos, a in enumerate(sigma, 1) if a < 0)
    return neg, len(neg)


def _maj(seq: Sequence) -> int:
    return sum(i for i in range(1, len(seq)) if seq[i - 1] > seq[i])


def flag_major(sigma: Sequence[int]) -> int:
    # ordinary integer order is -n < ... < -1 < 1 < ... < n
    return 2 * _maj(sigma) + sum(1 for a in sigma if a < 0)


def flag_major_alt(sigma: Sequence[int]) -> int:
    """Flag-major index under the order -1 < -2 < ... < -n < 1 < ... < n."""
    n = len(sigma)
    keys = [a if a > 0 else -a - n - 1 for a in sigma]
    return 2 * _maj(keys) + sum(1 for a in sigma if a < 0)


def length_B(sigma: Sequence[int]) -> int:
    return window_inv(sigma) + sum(-a for a in sigma if a < 0)


def doubled_window(sigma: Sequence[int]) -> tuple:
    """``(sigma(-n), ..., sigma(-1), sigma(1), ..., sigma(n))``."""
    return tuple(-a for a in reversed(sigma)) + tuple(sigma)


def length_B_doubled(sigma: Sequence[int]) -> int:
    total = window_inv(doubled_window(sigma)) + sum(1 for a in sigma if a < 0)
    assert total % 2 == 0
    return total // 2


def descent_set_B(sigma: Sequence[int]) -> frozenset:
    ext = (0, *sigma)
    return frozenset(i for i in range(len(sigma)) if ext[i] > ext[i + 1])


def descent_mask_B(sigma: Sequence[int]) -> int:
    """``descent_set_B`` packed as a bitmask (bit i set iff i is a descent)."""
    mask = 0
    prev = 0
    for i, a in enumerate(sigma):
        if prev > a:
            mask |= 1 << i
        prev = a
    return mask


def flag_major_D(sigma: Sequence[int]) -> int:
    if sum(1 for a in sigma if a < 0) % 2:
        raise NotInD(f"{format_window(sigma)} has an odd number of negative entries")
    if not sigma:
        return 0
    return flag_major((*sigma[:-1], abs(sigma[-1])))


def _signed_windows(n: int) -> Iterator[tuple]:
    # lexicographic under ordinary integer order
    values = [v for v in range(-n, n + 1) if v]
    used = [False] * (n + 1)
    w = [0] * n

    def rec(pos):
        if pos == n:
            yield tuple(w)
            return
        for v in values:
            if not used[abs(v)]:
                used[abs(v)] = True
                w[pos] = v
                yield from rec(pos + 1)
                used[abs(v)] = False

    yield from rec(0)


def enumerate_group(n: int, kind: GroupKind = GroupKind.TYPE_B) -> Iterator[SignedPermutation]:
    """Yield every element of the group once, lexicographically by window."""
    if n < 0:
        raise ValueError("rank must be non-negative")
    if kind is GroupKind.TYPE_A:
        for p in permutations(range(1, n + 1)):
            yield SignedPermutation(p)
        return
    for w in _signed_windows(n):
        if kind is GroupKind.TYPE_D and sum(1 for a in w if a < 0) % 2:
            continue
        yield SignedPermutation(w)


def iter_windows_unordered(n: int) -> Iterator[tuple]:
    """All windows of B_n as plain tuples, in no particular order. Faster than
    :func:`enumerate_group` for aggregation where order does not matter."""
    signs = list(product((1, -1), repeat=n))
    for p in permutations(range(1, n + 1)):
        for s in signs:
            yield tuple(a * e for a, e in zip(p, s))


BFS_MAX_RANK = {GroupKind.TYPE_A: 9, GroupKind.TYPE_B: 7, GroupKind.TYPE_D: 7}


def _right_generators(n: int, kind: GroupKind):
    """Right multiplication by each standard generator, as window maps."""
    moves = []
    if kind is GroupKind.TYPE_B and n >= 1:
        moves.append(lambda w: (-w[0],) + w[1:])
    if kind is GroupKind.TYPE_D and n >= 2:
        # 1 -> -2, 2 -> -1
        moves.append(lambda w: (-w[1], -w[0]) + w[2:])
    for i in range(1, n):
        moves.append(lambda w, i=i: w[: i - 1] + (w[i], w[i - 1]) + w[i + 1:])
    return moves


def coxeter_length_table_bfs(n: int, kind: GroupKind = GroupKind.TYPE_B) -> dict:
    """Cayley-graph distance from the identity for every group element."""
    if n > BFS_MAX_RANK[kind]:
        raise RankTooLarge(f"BFS over {kind.value}_{n} exceeds bound n <= {BFS_MAX_RANK[kind]}")
    moves = _right_generators(n, kind)
    start = identity(n)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        d = dist[w] + 1
        for move in moves:
            v = move(w)
            if v not in dist:
                dist[SignedPermutation(v)] = d
                queue.append(v)
    return dist


_BFS_CACHE: dict = {}


def _bfs_length(kind: GroupKind, sigma: Sequence[int]) -> int:
    key = (len(sigma), kind)
    if key not in _BFS_CACHE:
        _BFS_CACHE[key] = coxeter_length_table_bfs(len(sigma), kind)
    try:
        return _BFS_CACHE[key][tuple(sigma)]
    except KeyError:
        raise NotInD(f"{format_window(sigma)} is not in {kind.value}_{len(sigma)}") from None


STAT_FUNCS = {
    StatKind.INV: window_inv,
    StatKind.DES_A: lambda s: descent_data_A(s)[1],
    StatKind.MAJ_A: _maj,
    StatKind.NEG: lambda s: sum(1 for a in s if a < 0),
    StatKind.FMAJ: flag_major,
    StatKind.FMAJ_ALT: flag_major_alt,
    StatKind.LEN_B: length_B,
    StatKind.LEN_B_DOUBLED: length_B_doubled,
    StatKind.DES_B_COUNT: lambda s: len(descent_set_B(s)),
    StatKind.FMAJ_D: flag_major_D,
    StatKind.LEN_D_BFS: lambda s: _bfs_length(GroupKind.TYPE_D, s),
    StatKind.LEN_B_BFS: lambda s: _bfs_length(GroupKind.TYPE_B, s),
}


def stat_value(kind: StatKind, sigma: Sequence[int]) -> int:
    return STAT_FUNCS[kind](sigma)
