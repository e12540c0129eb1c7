"""Inverse descent classes of S_n and B_n.

Two independent ways to produce a class are kept side by side:

* constructively, as shuffles of increasing blocks (one block family per
  admissible r-vector), and
* by filtering the whole group on the descent set of the inverse.

For sweeps over every subset M at once, :func:`group_tallies` makes a single
pass over the group keyed by the exact descent set, and
:func:`zeta_transform` turns exact-class tallies into subset-class ones.
"""
from __future__ import annotations

import enum
import os
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Mapping, Optional, Sequence

from .perm import (
    GroupKind,
    SignedPermutation,
    StatKind,
    STAT_FUNCS,
    descent_mask_B,
    descent_set_B,
    enumerate_group,
    inverse,
)
from .qseries import BadSet, LaurentPolynomial, ZERO


class OverlappingBlocks(ValueError):
    pass


class MissingSubset(KeyError):
    pass


class Mode(enum.Enum):
    SUBSET = "subset"
    EQUAL = "equal"


@dataclass(frozen=True)
class ClassSpec:
    n: int
    M: frozenset
    mode: Mode = Mode.SUBSET
    last: Optional[int] = None
    group: GroupKind = GroupKind.TYPE_B

    def __post_init__(self):
        object.__setattr__(self, "M", frozenset(self.M))
        if self.n < 0:
            raise ValueError("rank must be non-negative")
        lo = 1 if self.group is GroupKind.TYPE_A else 0
        if any(not lo <= m < self.n for m in self.M):
            raise BadSet(f"M={sorted(self.M)} is not inside [{lo}, {self.n - 1}]")
        if self.last is not None and not (self.last != 0 and abs(self.last) <= self.n):
            raise ValueError(f"last={self.last} is not in [-{self.n}, {self.n}] minus 0")
        if self.group is GroupKind.TYPE_A and self.last is not None and self.last < 0:
            raise ValueError("S_n classes take positive last values only")

    def __str__(self):
        text = f"n={self.n} M={{{','.join(str(m) for m in sorted(self.M))}}} mode={self.mode.value}"
        if self.last is not None:
            text += f" last={self.last}"
        if self.group is not GroupKind.TYPE_B:
            text += f" group={self.group.value}"
        return text

    @classmethod
    def parse(cls, text: str) -> "ClassSpec":
        """Parse ``"n=2 M={0} mode=subset last=-1"``; mode, last, group optional."""
        fields = dict(re.findall(r"(\w+)=(\{[^}]*\}|\S+)", text))
        leftover = re.sub(r"(\w+)=(\{[^}]*\}|\S+)", "", text).strip()
        if leftover or "n" not in fields or "M" not in fields:
            raise ValueError(f"cannot parse class spec {text!r}")
        unknown = set(fields) - {"n", "M", "mode", "last", "group"}
        if unknown:
            raise ValueError(f"unknown class spec field(s) {sorted(unknown)}")
        body = fields["M"].strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ValueError(f"M must be written in braces, got {body!r}")
        inner = body[1:-1].strip()
        M = frozenset(int(x) for x in inner.split(",")) if inner else frozenset()
        group = {"A": GroupKind.TYPE_A, "B": GroupKind.TYPE_B, "D": GroupKind.TYPE_D}[
            fields.get("group", "B").upper()
        ]
        if group is GroupKind.TYPE_D:
            raise ValueError("descent classes of D_n are not supported")
        last = int(fields["last"]) if "last" in fields else None
        return cls(int(fields["n"]), M, Mode(fields.get("mode", "subset").lower()), last, group)


def admissible_r_vectors(n: int, M) -> Iterator[tuple]:
    """All (r_1..r_t) with m_i <= r_i <= m_{i+1}, where m_{t+1} = n."""
    ms = sorted(M)
    bounds = [*ms, n]
    ranges = [range(bounds[i], bounds[i + 1] + 1) for i in range(len(ms))]
    return product(*ranges)


def shuffle_stream(blocks: Sequence[Sequence[int]]) -> Iterator[list]:
    """Every interleaving of ``blocks`` that keeps each block in order.

    Output is lexicographic in the sequence of block labels read left to
    right; callers must not rely on it.
    """
    blocks = [list(b) for b in blocks]
    seen: set = set()
    for b in blocks:
        if seen.intersection(b) or len(set(b)) != len(b):
            raise OverlappingBlocks(f"blocks are not pairwise disjoint: {blocks}")
        seen.update(b)
    blocks = [b for b in blocks if b]
    total = sum(len(b) for b in blocks)
    heads = [0] * len(blocks)
    out = [0] * total

    def rec(pos):
        if pos == total:
            yield list(out)
            return
        for k, b in enumerate(blocks):
            h = heads[k]
            if h < len(b):
                out[pos] = b[h]
                heads[k] = h + 1
                yield from rec(pos + 1)
                heads[k] = h

    yield from rec(0)


def shuffle_blocks(n: int, M, r: Sequence[int]) -> list[list[int]]:
    """The 2t+1 increasing blocks for one r-vector (empty blocks kept)."""
    ms = sorted(M)
    bounds = [*ms, n]
    blocks = [list(range(1, ms[0] + 1)) if ms else list(range(1, n + 1))]
    for i, ri in enumerate(r):
        blocks.append(list(range(-ri, -ms[i])))
        blocks.append(list(range(ri + 1, bounds[i + 1] + 1)))
    return blocks


def last_value_support(n: int, M) -> frozenset:
    """Values sigma(n) can take in the class {Des_B(sigma^-1) subset of M}."""
    ms = sorted(M)
    if not ms:
        return frozenset({n} if n else ())
    return frozenset([*ms, n] + [-(m + 1) for m in ms]) - {0}


def _inverse_descent_mask(w) -> int:
    return descent_mask_B(inverse(w))


def _mask(M) -> int:
    return sum(1 << m for m in M)


def class_members(spec: ClassSpec) -> Iterator[SignedPermutation]:
    """Members of a B_n class, built from shuffles (filtered for EQUAL mode)."""
    if spec.group is not GroupKind.TYPE_B:
        raise ValueError("class_members handles B_n; use sn_inverse_descent_class for S_n")
    n, M = spec.n, spec.M
    if spec.last is not None and spec.last not in last_value_support(n, M):
        return
    target = _mask(M)
    for r in admissible_r_vectors(n, M):
        blocks = shuffle_blocks(n, M, r)
        if spec.last is not None and not any(b and b[-1] == spec.last for b in blocks):
            continue
        for w in shuffle_stream(blocks):
            if spec.last is not None and w[-1] != spec.last:
                continue
            if spec.mode is Mode.EQUAL and _inverse_descent_mask(w) != target:
                continue
            yield SignedPermutation(w)


def brute_class_members(spec: ClassSpec) -> Iterator[SignedPermutation]:
    """Members of a class by filtering the whole group."""
    target = _mask(spec.M)
    for w in enumerate_group(spec.n, spec.group):
        if spec.last is not None and w[-1] != spec.last:
            continue
        mask = _inverse_descent_mask(w)
        if spec.mode is Mode.EQUAL and mask != target:
            continue
        if spec.mode is Mode.SUBSET and mask & ~target:
            continue
        yield w


def sn_inverse_descent_class(n: int, M, mode: Mode = Mode.SUBSET) -> Iterator[SignedPermutation]:
    ms = sorted(M)
    if any(not 1 <= m < n for m in ms):
        raise BadSet(f"M={ms} is not inside [1, {n - 1}]")
    bounds = [0, *ms, n]
    blocks = [list(range(a + 1, b + 1)) for a, b in zip(bounds, bounds[1:])]
    target = frozenset(ms)
    for w in shuffle_stream(blocks):
        if mode is Mode.EQUAL and descent_set_B(inverse(w)) != target:
            continue
        yield SignedPermutation(w)


def members(spec: ClassSpec, method: str = "shuffle") -> Iterator[SignedPermutation]:
    if method == "brute":
        return brute_class_members(spec)
    if method != "shuffle":
        raise ValueError(f"unknown method {method!r}")
    if spec.group is GroupKind.TYPE_A:
        it = sn_inverse_descent_class(spec.n, spec.M, spec.mode)
        if spec.last is None:
            return it
        return (w for w in it if w[-1] == spec.last)
    return class_members(spec)


def distribution(spec: ClassSpec, stat: StatKind, method: str = "shuffle") -> LaurentPolynomial:
    """Sum of q^stat over the class; zero polynomial for an empty class."""
    f = STAT_FUNCS[stat]
    return LaurentPolynomial.from_exponents(f(w) for w in members(spec, method))


def equality_from_subset(M, f: Mapping) -> LaurentPolynomial:
    """Inclusion-exclusion: sum over K subset of M of (-1)^|M-K| f(K)."""
    ms = sorted(M)
    total = ZERO
    for bits in range(1 << len(ms)):
        K = frozenset(m for k, m in enumerate(ms) if bits >> k & 1)
        try:
            val = f[K]
        except KeyError:
            raise MissingSubset(f"no value for subset {sorted(K)}") from None
        total = total + (val if (len(ms) - len(K)) % 2 == 0 else -val)
    return total


def zeta_transform(values: Mapping[int, LaurentPolynomial], bits: int) -> dict:
    """F[S] = sum of values[T] over T subset of S, for every mask S < 2**bits."""
    F = [values.get(s, ZERO) for s in range(1 << bits)]
    for b in range(bits):
        bit = 1 << b
        for s in range(1 << bits):
            if s & bit:
                F[s] = F[s] + F[s ^ bit]
    return dict(enumerate(F))


def moebius_transform(values: Mapping[int, LaurentPolynomial], bits: int) -> dict:
    """Inverse of :func:`zeta_transform`."""
    F = [values.get(s, ZERO) for s in range(1 << bits)]
    for b in range(bits):
        bit = 1 << b
        for s in range(1 << bits):
            if s & bit:
                F[s] = F[s] - F[s ^ bit]
    return dict(enumerate(F))


def mask_to_set(mask: int) -> frozenset:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def _windows_with_first(n: int, kind: GroupKind, first: int):
    rest = [v for v in range(1, n + 1) if v != abs(first)]
    if kind is GroupKind.TYPE_A:
        for p in permutations(rest):
            yield (first, *p)
        return
    signs = list(product((1, -1), repeat=n - 1))
    want_even = kind is GroupKind.TYPE_D
    for p in permutations(rest):
        for s in signs:
            w = (first, *(a * e for a, e in zip(p, s)))
            if want_even and sum(1 for a in w if a < 0) % 2:
                continue
            yield w


def _tally_part(args):
    n, kind, first, stats, by_last = args
    funcs = [STAT_FUNCS[s] for s in stats]
    counters = [Counter() for _ in stats]
    for w in _windows_with_first(n, kind, first):
        inv = [0] * n
        for pos, a in enumerate(w, 1):
            if a > 0:
                inv[a - 1] = pos
            else:
                inv[-a - 1] = -pos
        mask = 0
        prev = 0
        for i, a in enumerate(inv):
            if prev > a:
                mask |= 1 << i
            prev = a
        key = (mask, w[-1]) if by_last else (mask, None)
        for f, c in zip(funcs, counters):
            c[key + (f(w),)] += 1
    return counters


def group_tallies(n: int, stats: Sequence[StatKind], kind: GroupKind = GroupKind.TYPE_B,
                  by_last: bool = False, workers: int = 1) -> dict:
    """One pass over the group, bucketed by the exact descent set of the inverse.

    Returns ``{stat: {(mask, last): polynomial}}``; ``last`` is None unless
    ``by_last``. Work is split by the first window entry, so the result does
    not depend on ``workers``.
    """
    stats = list(stats)
    if n == 0:
        key = (0, None)
        return {s: {key: LaurentPolynomial.monomial(0)} for s in stats}
    firsts = [v for v in range(-n, n + 1) if v and (kind is not GroupKind.TYPE_A or v > 0)]
    jobs = [(n, kind, v, stats, by_last) for v in firsts]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_tally_part, jobs))
    else:
        parts = [_tally_part(job) for job in jobs]
    out = {}
    for k, s in enumerate(stats):
        merged: dict = {}
        for part in parts:
            for (mask, last, val), cnt in part[k].items():
                merged.setdefault((mask, last), Counter())[val] += cnt
        out[s] = {key: LaurentPolynomial.from_exponents(c) for key, c in merged.items()}
    return out


def subset_distributions(n: int, stat: StatKind, kind: GroupKind = GroupKind.TYPE_B,
                         workers: int = 1, tallies=None) -> dict:
    """``{mask: distribution over Des(sigma^-1) subset of mask}`` for every mask."""
    exact = equal_distributions(n, stat, kind, workers, tallies)
    return zeta_transform(exact, n)


def equal_distributions(n: int, stat: StatKind, kind: GroupKind = GroupKind.TYPE_B,
                        workers: int = 1, tallies=None) -> dict:
    if tallies is None:
        tallies = group_tallies(n, [stat], kind, workers=workers)
    exact: dict = {}
    for (mask, _last), poly in tallies[stat].items():
        exact[mask] = exact.get(mask, ZERO) + poly
    return exact
