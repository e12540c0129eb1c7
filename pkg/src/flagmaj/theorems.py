"""Closed-form generating functions and the identity/conjecture checkers.

Every checker compares a brute-force or constructive computation with a
closed form (or two statistics with each other) exactly, over a whole
parameter range, and returns a :class:`VerificationReport`.
"""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Optional

from .classes import (
    ClassSpec,
    Mode,
    admissible_r_vectors,
    brute_class_members,
    class_members,
    equal_distributions,
    equality_from_subset,
    group_tallies,
    mask_to_set,
    sn_inverse_descent_class,
    zeta_transform,
)
from .perm import BFS_MAX_RANK, STAT_FUNCS, GroupKind, StatKind, coxeter_length_table_bfs
from .qseries import (
    BadSet,
    LaurentPolynomial,
    ONE,
    ZERO,
    delta_multinomial,
    exact_div,
    one_plus_q_product,
    q_binomial,
    q_factorial,
    q_int,
    q_multinomial,
    shape,
    substitute_power,
)

mono = LaurentPolynomial.monomial


class EmptyM(ValueError):
    pass


class UnknownTheorem(KeyError):
    pass


class RangeTooLarge(ValueError):
    pass


@dataclass
class VerificationReport:
    theorem_id: str
    params: str
    status: str
    witnesses: list = field(default_factory=list)
    elapsed: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def to_json(self, timing: bool = True) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "params": self.params,
            "status": self.status,
            "witnesses": list(self.witnesses),
            "notes": list(self.notes),
            "elapsed_ms": round(self.elapsed * 1000) if timing else 0,
        }


def _check_M(n: int, M) -> list:
    ms = sorted(set(M))
    if any(not 0 <= m < n for m in ms):
        raise BadSet(f"M={ms} is not inside [0, {n - 1}]")
    return ms


def _fmt_set(M) -> str:
    return "{" + ",".join(str(m) for m in sorted(M)) + "}"


# closed forms ---------------------------------------------------------------

def alpha(n: int, M, i: int) -> LaurentPolynomial:
    ms = _check_M(n, M)
    if not ms:
        raise EmptyM("alpha is defined for nonempty M only")
    if not (i != 0 and abs(i) <= n):
        raise ValueError(f"i={i} is not in [-{n}, {n}] minus 0")
    bounds = [*ms, n]
    if i == ms[0] and i > 0:
        return mono(i) - mono(-i)
    for s in range(1, len(ms) + 1):
        if i == bounds[s]:
            return mono(-bounds[s - 1]) - mono(-bounds[s])
        if i == -(bounds[s - 1] + 1):
            return mono(bounds[s]) - mono(bounds[s - 1])
    return ZERO


def rhs_subFSB(n: int, M) -> LaurentPolynomial:
    ms = _check_M(n, M)
    m1 = ms[0] if ms else n
    return delta_multinomial(n, ms) * one_plus_q_product(m1 + 1, n)


def rhs_t51(n: int, M, i: int) -> LaurentPolynomial:
    """Closed form of the fmaj (and length) distribution over the class with sigma(n) = i."""
    ms = _check_M(n, M)
    if not ms:
        # the class is {identity}
        return ONE if i == n else ZERO
    a = alpha(n, ms, i)
    if not a:
        return ZERO
    return exact_div(a * rhs_subFSB(n, ms), mono(n) - mono(-n))


def poincare_B(n: int) -> LaurentPolynomial:
    if n < 1:
        raise ValueError("poincare_B needs n >= 1")
    result = ONE
    for j in range(1, n + 1):
        result = result * q_int(2 * j)
    return result


def poincare_D(n: int) -> LaurentPolynomial:
    if n < 1:
        raise ValueError("poincare_D needs n >= 1")
    result = q_int(n)
    for j in range(1, n):
        result = result * q_int(2 * j)
    return result


def rhs_d_positive_last(n: int) -> LaurentPolynomial:
    if n < 1:
        raise ValueError("rhs_d_positive_last needs n >= 1")
    full = range(n)
    return sum((rhs_t51(n, full, i) for i in range(1, n + 1)), ZERO)


def _appendix_route(n: int, M, base_power: int, weight: Callable) -> LaurentPolynomial:
    """Sum over admissible r of multinomial(M_r)(q^base_power) * q^(sum_i weight(m_i, r_i)).

    The r_i are summed one block at a time; terms are merged by the multiset
    of nonzero parts (the multinomial only depends on it) and the exponent.
    """
    ms = _check_M(n, M)
    bounds = [*ms, n]
    first = ms[0] if ms else n
    states = Counter({((first,) if first else (), 0): 1})
    for k, mk in enumerate(ms):
        nxt: Counter = Counter()
        for (parts, exp), cnt in states.items():
            for rk in range(mk, bounds[k + 1] + 1):
                new = parts + tuple(p for p in (rk - mk, bounds[k + 1] - rk) if p)
                nxt[(tuple(sorted(new)), exp + weight(mk, rk))] += cnt
        states = nxt
    by_parts: dict = {}
    for (parts, exp), cnt in states.items():
        by_parts.setdefault(parts, Counter())[exp] += cnt
    total = ZERO
    for parts, exps in by_parts.items():
        total = total + _multinomial_at_power(parts, base_power) * LaurentPolynomial.from_exponents(exps)
    return total


@lru_cache(maxsize=None)
def _multinomial_at_power(parts: tuple, k: int) -> LaurentPolynomial:
    return substitute_power(q_multinomial(parts), k)


def appendix_fmaj_route(n: int, M) -> LaurentPolynomial:
    """Sum over r of the q^2-multinomial of M_r times q^(sum r_i - m_i)."""
    return _appendix_route(n, M, 2, lambda m, r: r - m)


def appendix_length_route(n: int, M) -> LaurentPolynomial:
    """Sum over r of the q-multinomial of M_r times q^(negative-entry weight)."""
    return _appendix_route(
        n, M, 1, lambda m, r: (r - m) * (r + m + 1) // 2
    )


# checkers -------------------------------------------------------------------

def _all_masks(n: int, type_a: bool = False):
    return [s for s in range(1 << n) if not (type_a and s & 1)]


def _check_mm(n, workers):
    wit = []
    T = group_tallies(n, [StatKind.INV, StatKind.MAJ_A], GroupKind.TYPE_A, workers=workers)
    target = q_factorial(n)
    for stat in (StatKind.INV, StatKind.MAJ_A):
        total = sum(T[stat].values(), ZERO)
        if total != target:
            wit.append(f"n={n} {stat.value} over S_n: {total} != [n]_q! = {target}")
    return wit


def _check_fs(n, workers):
    wit = []
    T = group_tallies(n, [StatKind.INV, StatKind.MAJ_A], GroupKind.TYPE_A, workers=workers)
    for mask in _all_masks(n, type_a=True):
        a = T[StatKind.INV].get((mask, None), ZERO)
        b = T[StatKind.MAJ_A].get((mask, None), ZERO)
        if a != b:
            wit.append(f"n={n} M={_fmt_set(mask_to_set(mask))} mode=equal group=A: inv {a} != maj {b}")
    return wit


def _check_fs1(tstat: Callable[[int], int], label: str):
    def check(n, workers):
        T = group_tallies(n, [StatKind.INV, StatKind.MAJ_A], GroupKind.TYPE_A, workers=workers)
        sides = []
        for stat in (StatKind.INV, StatKind.MAJ_A):
            by_t: dict = {}
            for (mask, _), poly in T[stat].items():
                t = tstat(mask)
                by_t[t] = by_t.get(t, ZERO) + poly
            sides.append(by_t)
        wit = []
        for t in sorted(set(sides[0]) | set(sides[1])):
            a, b = sides[0].get(t, ZERO), sides[1].get(t, ZERO)
            if a != b:
                wit.append(f"n={n} t^{t} ({label} of inverse): inv {a} != maj {b}")
        return wit
    return check


def _check_sn_subset(stat: StatKind):
    def check(n, workers):
        wit = []
        sub = zeta_transform(equal_distributions(n, stat, GroupKind.TYPE_A, workers), n)
        for mask in _all_masks(n, type_a=True):
            M = mask_to_set(mask)
            target = delta_multinomial(n, M)
            if sub[mask] != target:
                wit.append(f"n={n} M={_fmt_set(M)} group=A: brute {stat.value} {sub[mask]} != {target}")
            if n <= 7:
                f = STAT_FUNCS[stat]
                built = LaurentPolynomial.from_exponents(f(w) for w in sn_inverse_descent_class(n, M))
                if built != target:
                    wit.append(f"n={n} M={_fmt_set(M)} group=A: shuffle {stat.value} {built} != {target}")
        return wit
    return check


def _b_by_last(n, workers):
    T = group_tallies(n, [StatKind.LEN_B, StatKind.FMAJ], by_last=True, workers=workers)
    lasts = [i for i in range(-n, n + 1) if i]
    out = {}
    for stat, table in T.items():
        per_last = {}
        for i in lasts:
            exact = {mask: p for (mask, last), p in table.items() if last == i}
            per_last[i] = zeta_transform(exact, n)
        out[stat] = per_last
    return out, lasts


def _check_t31(n, workers):
    sub, lasts = _b_by_last(n, workers)
    wit = []
    for mask in _all_masks(n):
        for i in lasts:
            a = sub[StatKind.LEN_B][i][mask]
            b = sub[StatKind.FMAJ][i][mask]
            if a != b:
                wit.append(f"n={n} M={_fmt_set(mask_to_set(mask))} mode=subset last={i}: len_B {a} != fmaj {b}")
    return wit


def _check_t5x(stat: StatKind):
    def check(n, workers):
        sub, lasts = _b_by_last(n, workers)
        wit = []
        for mask in _all_masks(n):
            if not mask:
                continue
            M = mask_to_set(mask)
            for i in lasts:
                closed = rhs_t51(n, M, i)
                brute = sub[stat][i][mask]
                if closed != brute:
                    wit.append(f"n={n} M={_fmt_set(M)} mode=subset last={i}: "
                               f"brute {stat.value} {brute} != closed {closed}")
        return wit
    return check


def _check_t32(n, workers):
    T = group_tallies(n, [StatKind.LEN_B, StatKind.FMAJ], workers=workers)
    wit = []
    for stat in (StatKind.LEN_B, StatKind.FMAJ):
        sub = zeta_transform(equal_distributions(n, stat, tallies=T), n)
        for mask in _all_masks(n):
            M = mask_to_set(mask)
            closed = rhs_subFSB(n, M)
            if sub[mask] != closed:
                wit.append(f"n={n} M={_fmt_set(M)} mode=subset: brute {stat.value} {sub[mask]} != closed {closed}")
    return wit


def _check_t33(n, workers):
    T = group_tallies(n, [StatKind.LEN_B, StatKind.FMAJ], workers=workers)
    eq_len = equal_distributions(n, StatKind.LEN_B, tallies=T)
    eq_fmaj = equal_distributions(n, StatKind.FMAJ, tallies=T)
    closed_sub = {mask_to_set(s): rhs_subFSB(n, mask_to_set(s)) for s in _all_masks(n)}
    wit = []
    for mask in _all_masks(n):
        M = mask_to_set(mask)
        a, b = eq_len.get(mask, ZERO), eq_fmaj.get(mask, ZERO)
        ie = equality_from_subset(M, closed_sub)
        if a != b:
            wit.append(f"n={n} M={_fmt_set(M)} mode=equal: len_B {a} != fmaj {b}")
        if ie != a:
            wit.append(f"n={n} M={_fmt_set(M)} mode=equal: inclusion-exclusion {ie} != brute {a}")
    return wit


def _check_alphasum(n, workers):
    wit = []
    target = mono(n) - mono(-n)
    for mask in _all_masks(n):
        if not mask:
            continue
        ms = sorted(mask_to_set(mask))
        vals = {j: alpha(n, ms, j) for j in range(-n, n + 1) if j}
        total = sum(vals.values(), ZERO)
        if total != target:
            wit.append(f"n={n} M={_fmt_set(ms)}: sum of alpha {total} != {target}")
        bounds = [*ms, n]

        def tail(i):
            return sum((v for j, v in vals.items() if j > i), ZERO)

        for s in range(len(bounds)):
            got, want = tail(bounds[s]), mono(-bounds[s]) - mono(-n)
            if got != want:
                wit.append(f"n={n} M={_fmt_set(ms)} i={bounds[s]}: tail {got} != {want}")
        for s in range(len(ms)):
            i = -(ms[s] + 1)
            got, want = tail(i), mono(ms[s]) - mono(-n)
            if got != want:
                wit.append(f"n={n} M={_fmt_set(ms)} i={i}: tail {got} != {want}")
    return wit


def _check_dprop(n, workers):
    wit = []
    T = group_tallies(n, [StatKind.LEN_B], by_last=True, workers=workers)
    brute = sum((p for (_, last), p in T[StatKind.LEN_B].items() if last > 0), ZERO)
    target = poincare_D(n)
    closed = rhs_d_positive_last(n)
    if closed != target:
        wit.append(f"n={n}: closed positive-last sum {closed} != Poincare_D {target}")
    if brute != target:
        wit.append(f"n={n}: brute positive-last len_B sum {brute} != Poincare_D {target}")
    if n <= BFS_MAX_RANK[GroupKind.TYPE_D]:
        table = coxeter_length_table_bfs(n, GroupKind.TYPE_D)
        bfs = LaurentPolynomial.from_exponents(table.values())
        if bfs != target:
            wit.append(f"n={n}: BFS length polynomial of D_n {bfs} != Poincare_D {target}")
    return wit


def _check_dcor(n, workers):
    wit = []
    TD = group_tallies(n, [StatKind.FMAJ_D], GroupKind.TYPE_D, workers=workers)
    fmaj_d = sum(TD[StatKind.FMAJ_D].values(), ZERO)
    TB = group_tallies(n, [StatKind.FMAJ], by_last=True, workers=workers)
    positive = sum((p for (_, last), p in TB[StatKind.FMAJ].items() if last > 0), ZERO)
    target = poincare_D(n)
    if fmaj_d != positive:
        wit.append(f"n={n}: fmaj_D over D_n {fmaj_d} != fmaj over sigma(n)>0 {positive}")
    if fmaj_d != target:
        wit.append(f"n={n}: fmaj_D over D_n {fmaj_d} != Poincare_D {target}")
    return wit


def _check_l41(n, workers):
    wit = []
    for mask in _all_masks(n):
        spec = ClassSpec(n, mask_to_set(mask), Mode.SUBSET)
        built = list(class_members(spec))
        if len(built) != len(set(built)):
            wit.append(f"{spec}: shuffle construction produced duplicates")
        if set(built) != set(brute_class_members(spec)):
            wit.append(f"{spec}: shuffle construction differs from filtered group")
    return wit


def _check_l61(n, workers):
    lhs = sum((substitute_power(q_binomial(n, k), 2).shift(k) for k in range(n + 1)), ZERO)
    rhs = one_plus_q_product(1, n)
    return [] if lhs == rhs else [f"n={n}: {lhs} != {rhs}"]


def _check_l62(n, workers):
    wit = []
    for mask in _all_masks(n):
        M = mask_to_set(mask)
        closed = rhs_subFSB(n, M)
        a = appendix_fmaj_route(n, M)
        if a != closed:
            wit.append(f"n={n} M={_fmt_set(M)}: q^2-multinomial sum {a} != {closed}")
    return wit


def _check_t63(n, workers):
    # coefficient of x^k on the left, built by multiplying in (1 + q^i x)
    left = [ONE]
    for i in range(1, n + 1):
        left = [(left[k] if k < len(left) else ZERO) + (left[k - 1].shift(i) if k else ZERO)
                for k in range(len(left) + 1)]
    wit = []
    for k in range(n + 1):
        right = q_binomial(n, k).shift(k * (k + 1) // 2)
        if left[k] != right:
            wit.append(f"n={n} x^{k}: {left[k]} != {right}")
    return wit


def _check_pascal(n, workers):
    wit = []
    for k in range(1, n):
        lhs = q_binomial(n, k)
        rhs = q_binomial(n - 1, k) + q_binomial(n - 1, k - 1).shift(n - k)
        if lhs != rhs:
            wit.append(f"n={n} k={k}: {lhs} != {rhs}")
    return wit


def _check_qeval(n, workers):
    wit = []
    if q_factorial(n)(1) != factorial(n):
        wit.append(f"n={n}: [n]_q!(1) != n!")
    for k in range(n + 1):
        if q_binomial(n, k)(1) != comb(n, k):
            wit.append(f"n={n} k={k}: q-binomial at q=1 != C(n,k)")
    if n >= 1:
        if poincare_B(n)(1) != 2 ** n * factorial(n):
            wit.append(f"n={n}: Poincare_B(1) != 2^n n!")
        if poincare_D(n)(1) != 2 ** (n - 1) * factorial(n):
            wit.append(f"n={n}: Poincare_D(1) != 2^(n-1) n!")
    return wit


def _masks_in_search_order(n):
    return sorted(_all_masks(n), key=lambda s: (bin(s).count("1"), sorted(mask_to_set(s))))


def _altneg(n_min, n_max, workers):
    for n in range(n_min, n_max + 1):
        T = group_tallies(n, [StatKind.LEN_B, StatKind.FMAJ_ALT], workers=workers)
        eq_len = equal_distributions(n, StatKind.LEN_B, tallies=T)
        eq_alt = equal_distributions(n, StatKind.FMAJ_ALT, tallies=T)
        for mask in _masks_in_search_order(n):
            a, b = eq_alt.get(mask, ZERO), eq_len.get(mask, ZERO)
            if a != b:
                return f"n={n} M={_fmt_set(mask_to_set(mask))} mode=equal: fmaj_alt {a} != len_B {b}"
    return None


@dataclass(frozen=True)
class Entry:
    check: Optional[Callable]
    max_n: int
    min_n: int
    statement: str


BRUTE_MAX = 8

REGISTRY = {
    "MM": Entry(_check_mm, 9, 0, "inv and maj over S_n both equal [n]_q!"),
    "FS": Entry(_check_fs, 9, 1, "inv and maj agree on every inverse descent class of S_n"),
    "FS1A": Entry(_check_fs1(lambda m: bin(m).count("1"), "des"), 9, 1,
                  "bivariate (q^inv | q^maj) t^des(inverse) identity on S_n"),
    "FS1B": Entry(_check_fs1(lambda m: sum(mask_to_set(m)), "maj"), 9, 1,
                  "bivariate (q^inv | q^maj) t^maj(inverse) identity on S_n"),
    "FACT3": Entry(_check_sn_subset(StatKind.INV), 9, 1, "inv over Des(pi^-1) in M equals the Delta-M multinomial"),
    "GG": Entry(_check_sn_subset(StatKind.MAJ_A), 9, 1, "maj over Des(pi^-1) in M equals the Delta-M multinomial"),
    "T31": Entry(_check_t31, BRUTE_MAX, 1, "len_B and fmaj agree on every (M, sigma(n)=i) subset class of B_n"),
    "T32": Entry(_check_t32, BRUTE_MAX, 1, "len_B and fmaj over subset classes equal the closed product"),
    "T33": Entry(_check_t33, BRUTE_MAX, 1, "len_B and fmaj agree on every exact inverse descent class of B_n"),
    "T42": Entry(_check_t5x(StatKind.FMAJ), BRUTE_MAX, 1, "fmaj over (M, sigma(n)=i) classes equals the alpha formula"),
    "T43": Entry(_check_t5x(StatKind.LEN_B), BRUTE_MAX, 1, "len_B over (M, sigma(n)=i) classes equals the alpha formula"),
    "ALPHASUM": Entry(_check_alphasum, 14, 1, "total and tail sums of the alpha coefficients"),
    "DPROP": Entry(_check_dprop, 7, 1, "len_B over sigma(n)>0 equals the D_n Poincare polynomial"),
    "DCOR": Entry(_check_dcor, BRUTE_MAX, 1, "fmaj_D over D_n equals the D_n Poincare polynomial"),
    "L41": Entry(_check_l41, 6, 0, "shuffle construction of subset classes matches filtering, no duplicates"),
    "L61": Entry(_check_l61, 60, 1, "sum_k [n,k]_{q^2} q^k = prod (1+q^i)"),
    "L62": Entry(_check_l62, 12, 1, "multinomial extension: r-sum of q^2-multinomials equals the closed product"),
    "T63": Entry(_check_t63, 60, 0, "q-binomial theorem, coefficientwise in x"),
    "PASCAL": Entry(_check_pascal, 60, 1, "q-Pascal recurrence"),
    "QEVAL": Entry(_check_qeval, 30, 0, "q=1 evaluations match integer counts"),
    "ALTNEG": Entry(None, 6, 1, "alternative flag-major order breaks exact-class equidistribution"),
}


def verify(theorem_id: str, n_max: int, n_min: Optional[int] = None, workers: int = 1) -> VerificationReport:
    key = theorem_id.upper()
    if key not in REGISTRY:
        raise UnknownTheorem(theorem_id)
    entry = REGISTRY[key]
    lo = entry.min_n if n_min is None else max(n_min, entry.min_n)
    if n_max > entry.max_n:
        raise RangeTooLarge(f"{key} is bounded by n <= {entry.max_n}, asked for {n_max}")
    params = f"n={lo}..{n_max}"
    start = time.perf_counter()
    if key == "ALTNEG":
        found = _altneg(lo, n_max, workers)
        elapsed = time.perf_counter() - start
        if found:
            return VerificationReport(key, params, "PASS", [found], elapsed)
        return VerificationReport(key, params, "FAIL", [f"no distinguishing M for {params}"], elapsed)
    wit: list = []
    for n in range(lo, n_max + 1):
        wit.extend(entry.check(n, workers))
    elapsed = time.perf_counter() - start
    return VerificationReport(key, params, "FAIL" if wit else "PASS", wit, elapsed)


CF2_MAX = 40


def conjecture_cf2(n_max: int) -> VerificationReport:
    """Symmetry and unimodality of [n,k]_q * prod_{j=k+1}^n (1+q^j), 0 <= k < n <= n_max."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if n_max > CF2_MAX:
        raise RangeTooLarge(f"cf2 sweep is bounded by n <= {CF2_MAX}")
    start = time.perf_counter()
    wit = []
    for n in range(1, n_max + 1):
        for k in range(n):
            p = q_binomial(n, k) * one_plus_q_product(k + 1, n)
            sym, uni = shape(p)
            if not (sym and uni):
                wit.append(f"n={n} k={k}: symmetric={sym} unimodal={uni} poly={p}")
    return VerificationReport("CF2", f"0<=k<n<={n_max}", "FAIL" if wit else "PASS", wit,
                              time.perf_counter() - start)


CLASSES_MAX = 6


def conjecture_equal_classes(n_max: int, workers: int = 1) -> VerificationReport:
    """Unimodality of exact-class distributions, with and without sigma(n) fixed.

    Non-symmetric instances are listed in ``notes`` (they are expected).
    """
    if n_max > CLASSES_MAX:
        raise RangeTooLarge(f"class sweep is bounded by n <= {CLASSES_MAX}")
    start = time.perf_counter()
    wit, notes = [], []
    for n in range(1, n_max + 1):
        T = group_tallies(n, [StatKind.LEN_B, StatKind.FMAJ], by_last=True, workers=workers)
        asym = []
        for mask in _masks_in_search_order(n):
            M = _fmt_set(mask_to_set(mask))
            polys = {}
            for stat in (StatKind.LEN_B, StatKind.FMAJ):
                rows = {k[1]: p for k, p in T[stat].items() if k[0] == mask}
                polys[stat] = {None: sum(rows.values(), ZERO), **rows}
            for last in sorted(polys[StatKind.LEN_B], key=lambda x: (x is not None, x or 0)):
                label = f"n={n} M={M} mode=equal" + (f" last={last}" if last is not None else "")
                p = polys[StatKind.LEN_B][last]
                if p != polys[StatKind.FMAJ].get(last, ZERO):
                    wit.append(f"{label}: len_B {p} != fmaj {polys[StatKind.FMAJ].get(last, ZERO)}")
                if not p:
                    continue
                sym, uni = shape(p)
                if not uni:
                    wit.append(f"{label}: not unimodal: {p}")
                if not sym:
                    asym.append(f"{label}: not symmetric: {p}")
        if asym:
            notes.append(f"n={n}: {len(asym)} non-symmetric distributions, first {asym[0]}")
    return VerificationReport("CLASSES", f"n=1..{n_max}", "FAIL" if wit else "PASS", wit,
                              time.perf_counter() - start, notes)
