# pyfabgupta/metric_enum.py

"""
Weighted word metric and ball enumeration for the Fabrykowski-Gupta group.

Supports:
    • Weighted length (t-letters count 1, a-letters count 0)
    • Exhaustive ball enumeration with canonical-key dedup (optionally sharded
      across worker processes, merged in candidate order)
    • Minimal-length lookups against an exhausted BallTable
    • Growth series gamma(n), beta(n), delta(n) and their CSV rows
    • The lower-bound injection (g1, g2, g3) -> psi(g1) psi(g2)^a psi(g3)^(a^2)
    • Length-additive factorizations into I (measured #W< / #W>)
    • Versioned on-disk ball caches (magic FGBALL)

Candidates are generated by syllable count, then lexicographically on
(index, exponent, ..., tail); the first candidate reaching a key fixes its
minimal length and representative.
"""

import itertools
import logging
import os
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from tqdm import tqdm

from .bounds import lower_bound
from .errors import CacheFormatError, DomainError, EnumerationLimitError, OutOfRangeError
from .tree_group import (
    IDENTITY_KEY,
    ElementKey,
    NormalWord,
    Syllable,
    action_signature,
    conjugate,
    equal,
    format_word,
    in_commutator_subgroup,
    inverse,
    key,
    multiply,
    normalize,
    psi,
)

logger = logging.getLogger(__name__)

CACHE_MAGIC = b"FGBALL"
CACHE_VERSION = 1
CACHE_ENV = "FG_CACHE_DIR"

_HEADER = struct.Struct(">6sHII")
_KEY_LEN = struct.Struct(">I")
_ENTRY = struct.Struct(">HH")

_CHUNK = 2048


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

class Entry(NamedTuple):
    minlen: int
    rep: NormalWord


@dataclass
class BallTable:
    """
    Every element of weighted length <= radius, exactly once, keyed by its
    ElementKey. `alternates` (when collected) lists every minimal-length
    candidate word of each element, in candidate order.
    """

    radius: int
    entries: Dict[ElementKey, Entry] = field(default_factory=dict)
    alternates: Optional[Dict[ElementKey, List[NormalWord]]] = None
    candidates: int = 0

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, k: ElementKey) -> bool:
        return k in self.entries

    def lookup(self, g: NormalWord) -> Entry:
        """Entry of the element g; OutOfRangeError if g lies outside the radius."""
        entry = self.entries.get(key(g))
        if entry is None:
            raise OutOfRangeError(
                f"{format_word(g)!r} has weighted length > {self.radius} "
                f"(outside the exhausted ball)",
                payload=format_word(g),
            )
        return entry

    def minimal_reps(self, g: NormalWord) -> List[NormalWord]:
        k = key(g)
        if k not in self.entries:
            self.lookup(g)
        if self.alternates is not None:
            return list(self.alternates[k])
        return [self.entries[k].rep]

    def sphere(self, n: int) -> List[Tuple[ElementKey, Entry]]:
        return [(k, e) for k, e in self.entries.items() if e.minlen == n]

    def restrict(self, radius: int) -> "BallTable":
        if radius > self.radius:
            raise OutOfRangeError(f"cannot restrict a radius-{self.radius} table to {radius}")
        entries = {k: e for k, e in self.entries.items() if e.minlen <= radius}
        alternates = None
        if self.alternates is not None:
            alternates = {k: self.alternates[k] for k in entries}
        return BallTable(radius, entries, alternates, self.candidates)


@dataclass
class GrowthSeries:
    """
    gamma(n) = #ball, beta(n) = #(ball ∩ G') \\ {1}, delta(n) = #(sphere ∩ I).
    """

    L: int
    gamma: List[int]
    beta: List[int]
    delta: List[int]
    beta_with_identity: List[int] = field(default_factory=list)
    provenance: Dict[str, Any] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Metric
# ---------------------------------------------------------------------------

def weighted_len(w: NormalWord) -> int:
    return len(w.syllables)


def minimal_length(g: NormalWord, table: BallTable) -> int:
    """True weighted length of g; never falls back to the word's own length."""
    return table.lookup(g).minlen


# ---------------------------------------------------------------------------
# Candidates
# ---------------------------------------------------------------------------

def _syllable_sequences(n: int, prev: Optional[int] = None) -> Iterator[Tuple[Syllable, ...]]:
    if n == 0:
        yield ()
        return
    for c in range(3):
        if c == prev:
            continue
        for e in (1, 2):
            for rest in _syllable_sequences(n - 1, c):
                yield (Syllable(c, e),) + rest


def iter_candidates(n: int) -> Iterator[NormalWord]:
    """Every word of exactly n syllables, lexicographic in (syllables, tail)."""
    for syls in _syllable_sequences(n):
        for tail in range(3):
            yield NormalWord(syls, tail)


def candidate_count(n: int) -> int:
    return 3 if n == 0 else 3 * 6 * 4 ** (n - 1)


def _chunks(it: Iterable[NormalWord], size: int) -> Iterator[List[NormalWord]]:
    it = iter(it)
    while True:
        chunk = list(itertools.islice(it, size))
        if not chunk:
            return
        yield chunk


def _keys_for_chunk(words: List[NormalWord]) -> List[ElementKey]:
    return [key(w) for w in words]


def enumerate_ball(
    L: int,
    workers: int = 1,
    max_candidates: Optional[int] = None,
    collect_alternates: bool = False,
    progress: bool = False,
) -> BallTable:
    """
    Exhaust the ball of weighted radius L.

    Raises EnumerationLimitError (payload: the table complete up to the last
    finished radius) when the candidate budget would be exceeded.
    """
    if L < 0:
        raise DomainError(f"radius must be >= 0, got {L}")

    table = BallTable(-1, {}, {} if collect_alternates else None)
    executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None

    try:
        for n in range(L + 1):
            count = candidate_count(n)
            if max_candidates is not None and table.candidates + count > max_candidates:
                logger.warning(
                    "Candidate budget %d exhausted before radius %d", max_candidates, n
                )
                raise EnumerationLimitError(
                    f"enumeration budget of {max_candidates} candidates exceeded at radius {n}; "
                    f"table complete up to radius {table.radius}",
                    payload=table,
                )

            logger.info("Enumerating radius %d (%d candidates)", n, count)
            chunks = _chunks(iter_candidates(n), _CHUNK)
            if executor is None:
                keyed = ((c, _keys_for_chunk(c)) for c in chunks)
            else:
                chunk_list = list(chunks)
                keyed = zip(chunk_list, executor.map(_keys_for_chunk, chunk_list))

            with tqdm(total=count, desc=f"Radius {n}", unit="word", disable=not progress) as pbar:
                for words, keys in keyed:
                    for w, k in zip(words, keys):
                        entry = table.entries.get(k)
                        if entry is None:
                            table.entries[k] = Entry(n, w)
                            if collect_alternates:
                                table.alternates[k] = [w]
                        elif collect_alternates and entry.minlen == n:
                            table.alternates[k].append(w)
                    pbar.update(len(words))

            table.candidates += count
            table.radius = n
    finally:
        if executor is not None:
            executor.shutdown()

    logger.info("Ball of radius %d has %d elements", L, len(table))
    return table


def naive_gamma(L: int, signature_depth: int = 6) -> List[int]:
    """
    Independent recount of gamma(0..L): action-signature buckets with
    bisimulation confirmation, no canonical keys.
    """
    buckets: Dict[Tuple, List[NormalWord]] = {}
    sphere = [0] * (L + 1)
    for n in range(L + 1):
        for w in iter_candidates(n):
            bucket = buckets.setdefault(action_signature(w, signature_depth), [])
            if any(equal(r, w) for r in bucket):
                continue
            bucket.append(w)
            sphere[n] += 1
    return list(itertools.accumulate(sphere))


# ---------------------------------------------------------------------------
# Growth
# ---------------------------------------------------------------------------

def growth(table: BallTable, memo: Optional[Dict] = None) -> GrowthSeries:
    """gamma, beta (non-trivial G' elements) and delta (I-sphere sizes) up to the radius."""
    from .seqcomb import semantic_in_I

    L = table.radius
    sphere = [0] * (L + 1)
    beta_sphere = [0] * (L + 1)
    delta = [0] * (L + 1)
    memo = {} if memo is None else memo

    for k, entry in table.entries.items():
        sphere[entry.minlen] += 1
        if in_commutator_subgroup(entry.rep):
            beta_sphere[entry.minlen] += 1
        if semantic_in_I(entry.rep, table, memo):
            delta[entry.minlen] += 1

    gamma = list(itertools.accumulate(sphere))
    beta_id = list(itertools.accumulate(beta_sphere))
    return GrowthSeries(
        L=L,
        gamma=gamma,
        beta=[b - 1 for b in beta_id],
        delta=delta,
        beta_with_identity=beta_id,
        provenance={"radius": L, "candidates": table.candidates, "elements": len(table)},
    )


GROWTH_HEADER = ["n", "gamma", "beta", "delta", "lower_bound"]
OVERLAY_HEADER = ["upper_F", "lower_bound", "w_less", "w_greater"]


def growth_rows(
    series: GrowthSeries, overlay: Optional[Dict[int, Dict[str, Any]]] = None
) -> List[Dict[str, Any]]:
    """One CSV row per n; bounds overlay columns appended when given."""
    rows = []
    for n in range(series.L + 1):
        row = {
            "n": n,
            "gamma": series.gamma[n],
            "beta": series.beta[n],
            "delta": series.delta[n],
            "lower_bound": f"{lower_bound(n):.6g}" if n >= 2 else "",
        }
        if overlay is not None:
            extra = overlay.get(n, {})
            for col in OVERLAY_HEADER:
                if col != "lower_bound":
                    row[col] = extra.get(col, "")
        rows.append(row)
    return rows


def sphere_consistency_violations(table: BallTable) -> List[str]:
    """Elements of minlen n >= 1 without a neighbour of minlen n - 1."""
    bad = []
    for entry in table.entries.values():
        if entry.minlen == 0:
            continue
        prefix = NormalWord(entry.rep.syllables[:-1], 0)
        if table.lookup(prefix).minlen != entry.minlen - 1:
            bad.append(format_word(entry.rep))
    return bad


# ---------------------------------------------------------------------------
# Lower-bound injection
# ---------------------------------------------------------------------------

def triple_inject(g1: NormalWord, g2: NormalWord, g3: NormalWord) -> NormalWord:
    """psi(g1) · psi(g2)^a · psi(g3)^(a^2); its level-1 sections are (g1, g2, g3)."""
    for g in (g1, g2, g3):
        if not in_commutator_subgroup(g):
            raise DomainError(f"triple_inject needs G' inputs; {format_word(g)!r} is not in G'")
    return multiply(multiply(psi(g1), conjugate(psi(g2), 1)), conjugate(psi(g3), 2))


def commutator_ball(table: BallTable, n: int) -> List[NormalWord]:
    """Representatives of the non-trivial elements of B(n) ∩ G', in table order."""
    if n > table.radius:
        raise OutOfRangeError(f"B({n}) needs a table of radius >= {n}, got {table.radius}")
    return [
        e.rep
        for k, e in table.entries.items()
        if e.minlen <= n and k != IDENTITY_KEY and in_commutator_subgroup(e.rep)
    ]


def inject_report(table: BallTable, n: int = 2, progress: bool = False) -> Dict[str, Any]:
    """
    Apply triple_inject to every triple of non-trivial B(n) ∩ G' elements and
    report distinctness, G' membership and the weighted lengths reached.
    """
    elements = commutator_ball(table, n)
    images = [(psi(g), conjugate(psi(g), 1), conjugate(psi(g), 2)) for g in elements]

    seen: Dict[ElementKey, Tuple[int, int, int]] = {}
    violations = []
    max_len = 0
    within = 0
    triples = list(itertools.product(range(len(elements)), repeat=3))
    for i, j, k in tqdm(triples, desc="Injecting triples", unit="triple", disable=not progress):
        img = multiply(multiply(images[i][0], images[j][1]), images[k][2])
        max_len = max(max_len, weighted_len(img))
        if weighted_len(img) <= 6 * n:
            within += 1
        if not in_commutator_subgroup(img):
            violations.append({"word": format_word(img), "detail": "image not in G'"})
        ik = key(img)
        if ik in seen:
            a, b, c = seen[ik]
            violations.append(
                {
                    "word": format_word(img),
                    "detail": f"collision of triples {(i, j, k)} and {(a, b, c)}",
                }
            )
        else:
            seen[ik] = (i, j, k)

    verified = within == len(triples)
    if not verified:
        logger.info(
            "%d of %d images exceed %d syllables; their minimal length is not certified",
            len(triples) - within, len(triples), 6 * n,
        )
    return {
        "n": n,
        "elements": len(elements),
        "triples": len(triples),
        "distinct_images": len(seen),
        "max_weighted_length": max_len,
        "within_6n": within,
        "length_bound": 6 * n,
        "length_bound_verified": verified,
        "length_note": (
            "weighted lengths are syllable counts of the image words, an upper bound "
            "on minimal length; images above length_bound are left unverified"
        ),
        "violations": violations,
    }


# ---------------------------------------------------------------------------
# Factorizations into I
# ---------------------------------------------------------------------------

def factor_numbers(table: BallTable, memo: Optional[Dict] = None) -> Dict[ElementKey, Optional[int]]:
    """
    N(g): least k with g = g_1 ... g_k, g_i in I and sum of lengths = l(g)
    (length-0 factors absorbed). None when no such factorization exists.
    """
    from .seqcomb import semantic_in_I

    memo = {} if memo is None else memo
    in_I = [e for e in table.entries.values() if e.minlen > 0 and semantic_in_I(e.rep, table, memo)]
    inverses = [(e.minlen, inverse(e.rep)) for e in in_I]

    numbers: Dict[ElementKey, Optional[int]] = {}
    for k, entry in sorted(table.entries.items(), key=lambda kv: kv[1].minlen):
        if entry.minlen == 0:
            numbers[k] = 0
            continue
        if semantic_in_I(entry.rep, table, memo):
            numbers[k] = 1
            continue
        best = None
        for h_len, h_inv in inverses:
            if h_len >= entry.minlen:
                continue
            rest = multiply(h_inv, entry.rep)
            rest_key = key(rest)
            rest_entry = table.entries.get(rest_key)
            if rest_entry is None or rest_entry.minlen != entry.minlen - h_len:
                continue
            sub = numbers.get(rest_key)
            if sub is not None and (best is None or sub + 1 < best):
                best = sub + 1
        numbers[k] = best
    return numbers


def factorization_counts(table: BallTable, lam: int, memo: Optional[Dict] = None) -> Dict[int, Dict[str, int]]:
    """Measured #W^<_lam(n) (N(g) <= lam) and #W^>_lam(n) per sphere n >= 1."""
    numbers = factor_numbers(table, memo)
    counts = {n: {"w_less": 0, "w_greater": 0} for n in range(1, table.radius + 1)}
    for k, entry in table.entries.items():
        if entry.minlen == 0:
            continue
        nk = numbers[k]
        bucket = "w_less" if nk is not None and nk <= lam else "w_greater"
        counts[entry.minlen][bucket] += 1
    return counts


# ---------------------------------------------------------------------------
# Persistence
# ---------------------------------------------------------------------------

def save_table(table: BallTable, path) -> Path:
    """Write a versioned FGBALL container (atomically, via a temp file)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    chunks = [_HEADER.pack(CACHE_MAGIC, CACHE_VERSION, table.radius, len(table.entries))]
    for k, entry in table.entries.items():
        rep = format_word(entry.rep).encode("ascii")
        chunks.append(_KEY_LEN.pack(len(k.encoding)))
        chunks.append(k.encoding)
        chunks.append(_ENTRY.pack(entry.minlen, len(rep)))
        chunks.append(rep)

    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(b"".join(chunks))
    tmp.replace(path)
    logger.info("Saved radius-%d ball (%d elements) to %s", table.radius, len(table), path)
    return path


def load_table(path) -> BallTable:
    """Read a file produced by save_table; CacheFormatError on any inconsistency."""
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise CacheFormatError(f"cannot read ball cache {path}: {exc}") from exc

    try:
        magic, version, radius, count = _HEADER.unpack_from(data, 0)
    except struct.error as exc:
        raise CacheFormatError(f"truncated ball cache header in {path}") from exc
    if magic != CACHE_MAGIC:
        raise CacheFormatError(f"{path} is not a ball cache (bad magic {magic!r})")
    if version != CACHE_VERSION:
        raise CacheFormatError(
            f"ball cache version {version} in {path}; this build reads version {CACHE_VERSION}"
        )

    entries: Dict[ElementKey, Entry] = {}
    offset = _HEADER.size
    try:
        for _ in range(count):
            (klen,) = _KEY_LEN.unpack_from(data, offset)
            offset += _KEY_LEN.size
            encoding = data[offset : offset + klen]
            if len(encoding) != klen:
                raise struct.error("short key")
            offset += klen
            minlen, rlen = _ENTRY.unpack_from(data, offset)
            offset += _ENTRY.size
            rep_bytes = data[offset : offset + rlen]
            if len(rep_bytes) != rlen:
                raise struct.error("short representative")
            offset += rlen
            entries[ElementKey(encoding)] = Entry(minlen, normalize(rep_bytes.decode("ascii")))
    except (struct.error, UnicodeDecodeError) as exc:
        raise CacheFormatError(f"corrupt or truncated ball cache {path}: {exc}") from exc
    except Exception as exc:  # a malformed representative word
        raise CacheFormatError(f"corrupt ball cache {path}: {exc}") from exc

    if offset != len(data):
        raise CacheFormatError(f"trailing bytes in ball cache {path}")
    return BallTable(radius, entries)


def default_cache_dir(cache_dir=None) -> Optional[Path]:
    if cache_dir:
        return Path(cache_dir)
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else None


def cache_file(cache_dir, radius: int) -> Path:
    return Path(cache_dir) / f"ball_r{radius}.fgball"


def cached_radii(cache_dir) -> List[int]:
    cache_dir = Path(cache_dir)
    if not cache_dir.is_dir():
        return []
    radii = []
    for p in cache_dir.glob("ball_r*.fgball"):
        try:
            radii.append(int(p.stem[len("ball_r"):]))
        except ValueError:
            continue
    return sorted(radii)


def load_or_build(
    radius: int,
    cache_dir=None,
    workers: int = 1,
    max_candidates: Optional[int] = None,
    collect_alternates: bool = False,
    progress: bool = False,
) -> BallTable:
    """
    Reuse the smallest cached ball of radius >= `radius`, else enumerate and
    (when a cache directory is known) persist the result. Alternates are
    never cached, so requesting them always enumerates.
    """
    cache_dir = default_cache_dir(cache_dir)
    if cache_dir is not None and not collect_alternates:
        for r in cached_radii(cache_dir):
            if r >= radius:
                logger.info("Loading cached radius-%d ball from %s", r, cache_dir)
                return load_table(cache_file(cache_dir, r)).restrict(radius)

    table = enumerate_ball(
        radius,
        workers=workers,
        max_candidates=max_candidates,
        collect_alternates=collect_alternates,
        progress=progress,
    )
    if cache_dir is not None:
        save_table(table, cache_file(cache_dir, radius))
    return table
