# pyfabgupta/seqcomb.py

"""
Index and exponent sequences of normal words, and the set I of words
whose length is additive over the sections at every level.

For w = t_{c1}^{g1} ... t_{cn}^{gn} a^tau:
    c(w) = (c1, ..., cn)   index sequence
    g(w) = (g1, ..., gn)   exponent sequence

S     = finite factors of the two-sided pattern ...021021 0 120120... and its
        two translates (equivalently: steps are all +-1, a run of -1 steps
        followed by a run of +1 steps).
dS    = sequences over {1, 2} of the form 1...1 2...2.
AdS   = sequences whose Sigma-transform lies in S (entries 2..n form a dS word).
m, dm = pivot positions (1-based) on S and AdS.
"""

import logging
import random
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DomainError
from .tree_group import (
    NormalWord,
    Syllable,
    decompose,
    format_word,
    key,
    rotate_indices,
    section_closure,
)

logger = logging.getLogger(__name__)

IndexSeq = Tuple[int, ...]
ExpSeq = Tuple[int, ...]


class PivotKind(Enum):
    LEFT_END = "left-end"
    INTERIOR = "interior"
    RIGHT_END = "right-end"


@dataclass(frozen=True)
class PivotInfo:
    position: int
    kind: PivotKind


# ---------------------------------------------------------------------------
# Sequences
# ---------------------------------------------------------------------------

def index_seq(w: NormalWord) -> IndexSeq:
    return tuple(syl.index for syl in w.syllables)


def exp_seq(w: NormalWord) -> ExpSeq:
    return tuple(syl.exp for syl in w.syllables)


@lru_cache(maxsize=256)
def _pattern_windows(length: int) -> Tuple[str, ...]:
    """The pattern and its translates, wide enough to contain every factor of `length`."""
    reps = length // 3 + 2
    base = [int(x) for x in "021" * reps + "0" + "120" * reps]
    return tuple("".join(str((x + s) % 3) for x in base) for s in range(3))


def in_S(c: Sequence[int]) -> bool:
    """Membership in S by factor search in the translated patterns."""
    if any(x not in (0, 1, 2) for x in c):
        return False
    if len(c) <= 1:
        return True
    needle = "".join(str(x) for x in c)
    return any(needle in window for window in _pattern_windows(len(c)))


def in_dS(g: Sequence[int]) -> bool:
    """1...1 2...2 (either run may be empty)."""
    if any(x not in (1, 2) for x in g):
        return False
    return all(g[i] <= g[i + 1] for i in range(len(g) - 1))


def sigma_transform(s: Sequence[int]) -> IndexSeq:
    """Sigma(s)_k = -(s_1 + ... + s_k) mod 3."""
    out = []
    total = 0
    for x in s:
        total += x
        out.append((-total) % 3)
    return tuple(out)


def in_AdS(s: Sequence[int]) -> bool:
    return in_S(sigma_transform(s))


# ---------------------------------------------------------------------------
# Pivots
# ---------------------------------------------------------------------------

def _kind(position: int, n: int) -> PivotKind:
    if position <= 1:
        return PivotKind.LEFT_END
    if position >= n:
        return PivotKind.RIGHT_END
    return PivotKind.INTERIOR


def pivot_m(c: Sequence[int]) -> PivotInfo:
    """
    1 if c only steps up, n if c only steps down, otherwise the k with
    c_{k-1} = c_{k+1}. The empty sequence has position 0 (left-end).
    """
    if not in_S(c):
        raise DomainError(f"pivot_m needs a sequence in S, got {tuple(c)}", payload=tuple(c))
    n = len(c)
    if n == 0:
        return PivotInfo(0, PivotKind.LEFT_END)
    steps = [(c[i + 1] - c[i]) % 3 for i in range(n - 1)]
    if all(s == 1 for s in steps):
        return PivotInfo(1, PivotKind.LEFT_END)
    if all(s == 2 for s in steps):
        return PivotInfo(n, PivotKind.RIGHT_END)
    for k in range(2, n):
        if c[k - 2] == c[k]:
            return PivotInfo(k, PivotKind.INTERIOR)
    raise AssertionError("unreachable: S word with mixed steps has a turning point")


def pivot_dm(g: Sequence[int]) -> PivotInfo:
    """
    On dS: 1 if g is all 2s, n if all 1s, else the k with g_k = 1, g_{k+1} = 2.
    Extended to AdS as m(Sigma(g)); the two agree on dS.
    """
    g = tuple(g)
    n = len(g)
    if in_dS(g):
        if n == 0:
            return PivotInfo(0, PivotKind.LEFT_END)
        if all(x == 2 for x in g):
            return PivotInfo(1, PivotKind.LEFT_END)
        if all(x == 1 for x in g):
            return PivotInfo(n, _kind(n, n))
        k = g.index(2)
        return PivotInfo(k, _kind(k, n))
    if in_AdS(g):
        return pivot_m(sigma_transform(g))
    raise DomainError(f"pivot_dm needs a sequence in AdS, got {g}", payload=g)


def tilde_exp_seq(w: NormalWord) -> ExpSeq:
    """
    Exponents g_j of the syllables with c_j = c_m + 1, in order; when
    2 < m < n - 1 the entries at m - 1 and m + 1 are merged (sum mod 3).
    """
    c = index_seq(w)
    g = exp_seq(w)
    m = pivot_m(c).position
    n = len(c)
    if n == 0:
        return ()
    target = (c[m - 1] + 1) % 3
    merge = 2 < m < n - 1
    out = []
    j = 1
    while j <= n:
        if c[j - 1] == target:
            if merge and j == m - 1:
                out.append((g[m - 2] + g[m]) % 3)
                j = m + 2
                continue
            out.append(g[j - 1])
        j += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# Syntactic I_n
# ---------------------------------------------------------------------------

def syntactic_I1(w: NormalWord) -> bool:
    """c(w) in S, and around an interior pivot the neighbouring exponents agree."""
    c = index_seq(w)
    if not in_S(c):
        return False
    n = len(c)
    m = pivot_m(c).position
    if 2 < m < n - 1:
        g = exp_seq(w)
        return g[m - 2] == g[m]
    return True


def syntactic_In(w: NormalWord, n: int) -> bool:
    """Section syllable counts add up to |w| at every level down to n."""
    if n < 0:
        raise DomainError(f"level must be >= 0, got {n}")
    memo: Dict[Tuple[NormalWord, int], bool] = {}

    def check(u: NormalWord, level: int) -> bool:
        if level == 0:
            return True
        hit = memo.get((u, level))
        if hit is not None:
            return hit
        d = decompose(u)
        ok = sum(len(s) for s in d.sections) == len(u) and all(
            check(s, level - 1) for s in d.sections
        )
        memo[(u, level)] = ok
        return ok

    return check(w, n)


def syntactic_failure_level(w: NormalWord, max_level: int) -> Optional[int]:
    """Smallest level <= max_level at which w leaves syntactic I_n, else None."""
    for level in range(1, max_level + 1):
        if not syntactic_In(w, level):
            return level
    return None


# ---------------------------------------------------------------------------
# Semantic I_n (true lengths from an exhausted ball)
# ---------------------------------------------------------------------------

def semantic_I1(w: NormalWord, table, memo: Optional[Dict] = None) -> bool:
    """l(g) = l(g_0) + l(g_1) + l(g_2) with true minimal lengths."""
    k = key(w)
    if memo is not None and ("I1", k) in memo:
        return memo[("I1", k)]
    total = table.lookup(w).minlen
    ok = sum(table.lookup(s).minlen for s in decompose(w).sections) == total
    if memo is not None:
        memo[("I1", k)] = ok
    return ok


def semantic_In(w: NormalWord, n: int, table, memo: Optional[Dict] = None) -> bool:
    """
    Length additivity at every level down to n; OutOfRangeError when some
    section is missing from the table.
    """
    if n < 0:
        raise DomainError(f"level must be >= 0, got {n}")
    memo = {} if memo is None else memo
    if n == 0:
        table.lookup(w)
        return True
    k = key(w)
    hit = memo.get(("In", k, n))
    if hit is not None:
        return hit
    ok = semantic_I1(w, table, memo) and all(
        semantic_In(s, n - 1, table, memo) for s in decompose(w).sections
    )
    memo[("In", k, n)] = ok
    return ok


def semantic_in_I(w: NormalWord, table, memo: Optional[Dict] = None) -> bool:
    """Membership in I = intersection of all I_n: every state of w is in I_1."""
    memo = {} if memo is None else memo
    k = key(w)
    hit = memo.get(("I", k))
    if hit is not None:
        return hit
    states, _ = section_closure(w)
    ok = all(semantic_I1(s, table, memo) for s in states)
    memo[("I", k)] = ok
    return ok


# ---------------------------------------------------------------------------
# Frames and the words-not-in-I family
# ---------------------------------------------------------------------------

def frame_word(n: int, m: int, exps: Sequence[int], sigma: int = 0, tail: int = 0) -> NormalWord:
    """
    The word with c_i = sigma + |i - m| (mod 3), i = 1..n, and the given
    exponents: an S word pivoting at m.
    """
    if not 1 <= m <= n:
        raise DomainError(f"pivot {m} outside 1..{n}")
    if len(exps) != n or any(e not in (1, 2) for e in exps):
        raise DomainError(f"need {n} exponents in {{1, 2}}, got {tuple(exps)}")
    syls = tuple(Syllable((sigma + abs(i - m)) % 3, e) for i, e in zip(range(1, n + 1), exps))
    return NormalWord(syls, tail % 3)


def family_member(n: int, m: int, ones: int, sigma: int = 0, tail: int = 0) -> NormalWord:
    """Frame word pivoting at m with exponents 1^ones 2^(n - ones)."""
    if not 0 <= ones <= n:
        raise DomainError(f"switch {ones} outside 0..{n}")
    return frame_word(n, m, [1] * ones + [2] * (n - ones), sigma, tail)


def not_in_I_family(n: int, count: int, seed: int = 0) -> List[NormalWord]:
    """
    Seeded sample of words with c in S, interior pivot 10 < m < n - 10 and
    exponent sequence in dS. Empty when n leaves no room for such a pivot.
    """
    if n - 10 - 10 < 2:
        return []
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        m = rng.randint(11, n - 11)
        ones = rng.randint(0, n)
        out.append(family_member(n, m, ones, sigma=rng.randrange(3), tail=rng.randrange(3)))
    return out


# ---------------------------------------------------------------------------
# Pivot relations between a word and its sections
# ---------------------------------------------------------------------------

@dataclass
class RelationCheck:
    """Outcome of the three pivot relations for one word (None = not applicable)."""

    word: str
    applicable: bool
    relations: Tuple[Optional[bool], Optional[bool], Optional[bool]] = (None, None, None)

    @property
    def violated(self) -> bool:
        return any(r is False for r in self.relations)


def _interior(c: Sequence[int]) -> Optional[int]:
    if not in_S(c):
        return None
    p = pivot_m(c)
    return p.position if p.kind is PivotKind.INTERIOR else None


def rel_123(w: NormalWord) -> RelationCheck:
    """
    For an I_1 word with interior pivot 2 < m < n - 1 and c_1 = c_m + 1,
    rotated so that c_m = 0, with sections g0, g1, g2:

        dm(g(g1)) + 1 = m(c(g2))
        dm(g(g2)) + 1 = m(c(g0))
        dm(g~(w))     = m(c(g1))

    Each relation is checked when its exponent sequence lies in AdS and the
    section's pivot is interior.
    """
    word = format_word(w)
    c = index_seq(w)
    n = len(c)
    if not syntactic_I1(w):
        return RelationCheck(word, False)
    m = pivot_m(c).position
    if not 2 < m < n - 1 or c[0] != (c[m - 1] + 1) % 3:
        return RelationCheck(word, False)

    framed = rotate_indices(w, -c[m - 1])
    g0, g1, g2 = decompose(framed).sections
    pairs = (
        (exp_seq(g1), index_seq(g2), 1),
        (exp_seq(g2), index_seq(g0), 1),
        (tilde_exp_seq(framed), index_seq(g1), 0),
    )
    results = []
    for gamma, target, offset in pairs:
        pos = _interior(target)
        if pos is None or not in_AdS(gamma):
            results.append(None)
            continue
        results.append(pivot_dm(gamma).position + offset == pos)

    return RelationCheck(word, any(r is not None for r in results), tuple(results))
