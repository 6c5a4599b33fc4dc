# pyfabgupta/lemmas.py

"""
Check suites for the combinatorial statements about index/exponent
sequences and the set I. Each suite returns a LemmaReport; an empty
`violations` list means the statement held on everything tested.

Suites needing true lengths take an exhausted BallTable (mot-sans-red also
needs every minimal representative, i.e. a table built with alternates).
"""

import itertools
import logging
import random
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional

from tqdm import tqdm

from .errors import DomainError
from .metric_enum import BallTable
from .seqcomb import (
    frame_word,
    in_AdS,
    in_dS,
    in_S,
    index_seq,
    not_in_I_family,
    pivot_dm,
    pivot_m,
    rel_123,
    semantic_I1,
    semantic_in_I,
    semantic_In,
    sigma_transform,
    syntactic_failure_level,
    syntactic_I1,
)
from .tree_group import (
    NormalWord,
    decompose,
    format_word,
    random_word,
    rotate_indices,
    section,
    vertices,
)

logger = logging.getLogger(__name__)


@dataclass
class LemmaReport:
    lemma: str
    parameters: Dict[str, Any]
    tested: int = 0
    violations: List[Dict[str, str]] = field(default_factory=list)
    notes: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def violation(self, word: str, detail: str) -> None:
        self.violations.append({"word": word, "detail": detail})

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _bar(it, desc: str, progress: bool, total: Optional[int] = None):
    return tqdm(it, desc=desc, total=total, unit="item", disable=not progress)


# ---------------------------------------------------------------------------
# Sequence-level suites
# ---------------------------------------------------------------------------

def check_equiv_suites(max_len: int = 12, progress: bool = False) -> LemmaReport:
    """
    Over every sequence in {1, 2}^n, n <= max_len:
    dS words map into S under Sigma with dm = m(Sigma), and AdS is exactly
    the set of sequences whose entries 2..n form a dS word.
    """
    report = LemmaReport("equiv-suites", {"max_len": max_len})
    seqs = itertools.chain.from_iterable(
        itertools.product((1, 2), repeat=n) for n in range(max_len + 1)
    )
    for s in _bar(seqs, "Sequences", progress, total=2 ** (max_len + 1) - 1):
        report.tested += 1
        word = "".join(map(str, s))
        sig = sigma_transform(s)
        if in_dS(s):
            if not in_S(sig):
                report.violation(word, "dS sequence with Sigma outside S")
                continue
            if pivot_dm(s).position != pivot_m(sig).position:
                report.violation(
                    word, f"dm={pivot_dm(s).position} but m(Sigma)={pivot_m(sig).position}"
                )
        if in_AdS(s) != in_dS(s[1:]):
            report.violation(word, "AdS membership disagrees with the dS tail")
    return report


def check_permut(samples: int = 1000, seed: int = 0, max_len: int = 12) -> LemmaReport:
    """Translating every index by sigma permutes the sections: (s_sigma)_x = s_(x - sigma)."""
    report = LemmaReport("permut", {"samples": samples, "seed": seed, "max_len": max_len})
    rng = random.Random(seed)
    for _ in range(samples):
        w = random_word(rng, max_len)
        base = decompose(w)
        for sigma in (1, 2):
            report.tested += 1
            rotated = decompose(rotate_indices(w, sigma))
            for x in range(3):
                if rotated.sections[x] != base.sections[(x - sigma) % 3]:
                    report.violation(format_word(w), f"sigma={sigma}: section {x} differs")
            if rotated.root != base.root:
                report.violation(format_word(w), f"sigma={sigma}: root changed")
    return report


def _sample_frame(rng: random.Random) -> NormalWord:
    n = rng.randint(8, 40)
    pivots = [m for m in range(5, n - 1) if m % 3 == 2]
    m = rng.choice(pivots)
    if rng.random() < 0.5:
        ones = rng.randint(0, n)
        exps = [1] * ones + [2] * (n - ones)
        # keep condition (b) of I_1 around the pivot
        exps[m] = exps[m - 2]
    else:
        exps = [rng.choice((1, 2)) for _ in range(n)]
        exps[m] = exps[m - 2]
    return frame_word(n, m, exps, sigma=rng.randrange(3), tail=rng.randrange(3))


def check_rel_123(samples: int = 1000, seed: int = 0, max_attempts: int = 50) -> LemmaReport:
    """
    The three pivot relations on `samples` seeded frame words where at least
    one relation applies (at most samples * max_attempts draws).
    """
    report = LemmaReport("rel-123", {"samples": samples, "seed": seed})
    rng = random.Random(seed)
    checked = [0, 0, 0]
    draws = 0
    while report.tested < samples and draws < samples * max_attempts:
        draws += 1
        w = _sample_frame(rng)
        result = rel_123(w)
        if not result.applicable:
            continue
        report.tested += 1
        for i, r in enumerate(result.relations):
            if r is None:
                continue
            checked[i] += 1
            if r is False:
                report.violation(result.word, f"relation {i + 1} fails")
    report.notes = {"draws": draws, "checked_per_relation": checked}
    return report


def check_words_not_in_I(
    count: int = 100, n_min: int = 23, n_max: int = 40, seed: int = 0, max_level: int = 2
) -> LemmaReport:
    """Every sampled family word leaves syntactic I_n by `max_level`; failure levels go to notes."""
    report = LemmaReport(
        "words-not-in-I",
        {"count": count, "n_min": n_min, "n_max": n_max, "seed": seed, "max_level": max_level},
    )
    levels: Dict[int, int] = {}
    for n in range(n_min, n_max + 1):
        for w in not_in_I_family(n, count, seed + n):
            report.tested += 1
            level = syntactic_failure_level(w, max_level)
            if level is None:
                report.violation(format_word(w), f"still in syntactic I_{max_level}")
            else:
                levels[level] = levels.get(level, 0) + 1
    report.notes = {"failure_levels": levels}
    return report


# ---------------------------------------------------------------------------
# Table-level suites
# ---------------------------------------------------------------------------

def check_mot_sans_red(table: BallTable, progress: bool = False) -> LemmaReport:
    """
    g in I_1 (true lengths) iff some minimal representative has c in S and
    agreeing exponents around an interior pivot.
    """
    if table.alternates is None:
        raise DomainError("mot-sans-red needs a table enumerated with alternates")
    report = LemmaReport("mot-sans-red", {"radius": table.radius})
    memo: Dict = {}
    for k, entry in _bar(table.entries.items(), "Elements", progress, total=len(table)):
        report.tested += 1
        reps = table.alternates[k]
        semantic = semantic_I1(entry.rep, table, memo)
        passing = [r for r in reps if syntactic_I1(r)]
        if semantic and len(passing) != len(reps):
            bad = next(r for r in reps if not syntactic_I1(r))
            report.violation(format_word(bad), "element in I_1 with a failing minimal representative")
        elif not semantic and passing:
            report.violation(format_word(passing[0]), "passing representative of an element outside I_1")
    return report


def check_cara_I(table: BallTable, depth: int = 3, progress: bool = False) -> LemmaReport:
    """
    g in I  implies  c(g_x) in S for the minimal representatives of every
    section down to `depth`. The converse is counted in notes.
    """
    report = LemmaReport("cara-I", {"radius": table.radius, "depth": depth})
    memo: Dict = {}
    converse_only = 0
    for entry in _bar(table.entries.values(), "Elements", progress, total=len(table)):
        report.tested += 1
        g = entry.rep
        semantic = semantic_in_I(g, table, memo)
        syntactic = True
        failing = None
        for level in range(depth + 1):
            for v in vertices(level):
                reps = table.minimal_reps(section(g, v))
                if not any(in_S(index_seq(r)) for r in reps):
                    syntactic = False
                    failing = v
                    break
            if not syntactic:
                break
        if semantic and not syntactic:
            report.violation(format_word(g), f"in I but c(g_x) not in S at x={list(failing)}")
        elif syntactic and not semantic:
            converse_only += 1
    report.notes = {"syntactic_not_in_I": converse_only}
    return report


def small_n_bound(delta: List[int], cutoff: int = 5) -> Dict[str, Any]:
    """Compare delta(n) for n > cutoff against the largest delta(n), 1 <= n <= cutoff."""
    bound = max(delta[1 : cutoff + 1] or [0])
    exceeding = next((n for n in range(cutoff + 1, len(delta)) if delta[n] > bound), None)
    return {
        "max_delta_n_le_5": bound,
        "bounded_by_small_n": exceeding is None,
        "first_exceeding_n": exceeding,
    }


def check_structure_I(table: BallTable, progress: bool = False) -> LemmaReport:
    """I_3 implies I_6 on the ball; sphere counts of I are reported in notes."""
    report = LemmaReport("structure-I", {"radius": table.radius})
    memo: Dict = {}
    delta = [0] * (table.radius + 1)
    for entry in _bar(table.entries.values(), "Elements", progress, total=len(table)):
        g = entry.rep
        if semantic_in_I(g, table, memo):
            delta[entry.minlen] += 1
        if not semantic_In(g, 3, table, memo):
            continue
        report.tested += 1
        if not semantic_In(g, 6, table, memo):
            report.violation(format_word(g), "in I_3 but not in I_6")
    report.notes = {
        "delta": delta,
        "observed_constant": max(delta[1:] or [0]),
        **small_n_bound(delta),
    }
    if not report.notes["bounded_by_small_n"]:
        logger.info(
            "delta(%d) exceeds the n <= 5 maximum %d",
            report.notes["first_exceeding_n"],
            report.notes["max_delta_n_le_5"],
        )
    return report


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

TableProvider = Callable[[int, bool], BallTable]

LEMMAS = (
    "mot-sans-red",
    "cara-I",
    "permut",
    "words-not-in-I",
    "structure-I",
    "equiv-suites",
    "rel-123",
)


def run_lemma(
    name: str,
    max_len: int = 6,
    seed: int = 0,
    depth: int = 3,
    table_provider: Optional[TableProvider] = None,
    progress: bool = False,
) -> LemmaReport:
    """Run one suite by name; table suites ask `table_provider(radius, alternates)` for a ball."""
    if name not in LEMMAS:
        raise DomainError(f"unknown lemma {name!r}; expected one of {', '.join(LEMMAS)}")
    logger.info("Running lemma suite %s", name)

    if name == "equiv-suites":
        return check_equiv_suites(progress=progress)
    if name == "permut":
        return check_permut(seed=seed)
    if name == "rel-123":
        return check_rel_123(seed=seed)
    if name == "words-not-in-I":
        return check_words_not_in_I(seed=seed)

    if table_provider is None:
        raise DomainError(f"lemma {name!r} needs a ball table")
    table = table_provider(max_len, name == "mot-sans-red")
    if name == "mot-sans-red":
        return check_mot_sans_red(table, progress=progress)
    if name == "cara-I":
        return check_cara_I(table, depth=depth, progress=progress)
    return check_structure_I(table, progress=progress)
