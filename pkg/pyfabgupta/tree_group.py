# pyfabgupta/tree_group.py

"""
Fabrykowski-Gupta group core.

Elements of G = <a, t> acting on the ternary rooted tree A* (A = Z/3Z),
with t = <a, 1, t> and a the cyclic rotation of the first level.

Supports:
    • Normal words t_{c1}^{e1} ... t_{cn}^{en} a^tau (the universal element type)
    • Multiplication, inverses, conjugation by powers of a
    • Wreath decomposition, sections and the action on vertices
    • Exact equality (bisimulation) and canonical ElementKeys
    • The endomorphism psi of G' and commutator-subgroup membership
    • Portraits and their DOT export

Conventions:
    Automorphisms act on the right. g = <g0, g1, g2> sigma sends the vertex
    x.w to (x + sigma).(w^{g_x}), so (gh)_x = g_x h_{x + sigma_g}.
    t^a = a^-1 t a, hence t_c = a^-c t a^c and a^k t_c a^-k = t_{c-k}.
    With these, t_1 = <t, a, 1> and t_2 = <1, t, a>.

All values are immutable; decompositions are memoised with a bounded,
thread-safe lru_cache.
"""

import itertools
import logging
import struct
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import graphviz

from .errors import DomainError, WordSyntaxError

logger = logging.getLogger(__name__)

# Element of A = Z/3Z; always stored reduced to {0, 1, 2}.
Rot = int

# A vertex of A*: a tuple of letters in {0, 1, 2}; () is the root.
Vertex = Tuple[int, ...]

LETTERS = {"a": ("a", 1), "A": ("a", -1), "t": ("t", 1), "T": ("t", -1)}


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

class Syllable(NamedTuple):
    """t_c^e with c in A and e in {1, 2}."""

    index: int
    exp: int


@dataclass(frozen=True)
class NormalWord:
    """
    t_{c1}^{e1} ... t_{cn}^{en} a^tail with c_i != c_{i+1} and e_i in {1, 2}.

    Two NormalWords may represent the same element; use equal() or key()
    for element identity, never ==.
    """

    syllables: Tuple[Syllable, ...] = ()
    tail: Rot = 0

    def __len__(self) -> int:
        return len(self.syllables)

    def __str__(self) -> str:
        return format_word(self)

    @property
    def is_trivial_word(self) -> bool:
        return not self.syllables and self.tail == 0


@dataclass(frozen=True)
class WreathDecomp:
    """One level of the wreath recursion: <sections[0], sections[1], sections[2]> root."""

    sections: Tuple[NormalWord, NormalWord, NormalWord]
    root: Rot


@dataclass(frozen=True)
class ElementKey:
    """
    Canonical identifier of a group element: the serialised minimal
    automaton of its sections, states in breadth-first discovery order.
    """

    encoding: bytes

    def hex(self) -> str:
        return self.encoding.hex()

    @property
    def state_count(self) -> int:
        return len(self.encoding) // _STATE_RECORD.size


@dataclass(frozen=True)
class Portrait:
    """Root label of the section at a vertex, with the portraits below it."""

    label: Rot
    children: Tuple["Portrait", ...] = ()

    def labels(self, prefix: Vertex = ()) -> Dict[Vertex, Rot]:
        out = {prefix: self.label}
        for x, child in enumerate(self.children):
            out.update(child.labels(prefix + (x,)))
        return out


_STATE_RECORD = struct.Struct(">B3I")


# ---------------------------------------------------------------------------
# Construction helpers
# ---------------------------------------------------------------------------

def _push(stack: List[Syllable], index: int, exp: int) -> None:
    """Append t_index^exp to a syllable stack, merging with the top."""
    exp %= 3
    if exp == 0:
        return
    if stack and stack[-1].index == index:
        merged = (stack[-1].exp + exp) % 3
        stack.pop()
        if merged:
            stack.append(Syllable(index, merged))
    else:
        stack.append(Syllable(index, exp))


def _from_tokens(tokens: Iterable[Tuple[str, int]]) -> NormalWord:
    """
    Normalize a sequence of (generator, exponent) tokens, generator in {"a", "t"}.

    A t read at running a-offset k becomes t_{-k}: a^k t = t_{-k} a^k.
    """
    stack: List[Syllable] = []
    offset = 0
    for gen, exp in tokens:
        if gen == "a":
            offset += exp
        else:
            _push(stack, (-offset) % 3, exp)
    return NormalWord(tuple(stack), offset % 3)


def normalize(raw: Union[str, Iterable[str]]) -> NormalWord:
    """
    Normalize a raw word over {a, A, t, T} (uppercase = inverse).

    Raises WordSyntaxError with the 0-based position of the first bad letter.
    """
    tokens = []
    for pos, letter in enumerate(raw):
        try:
            tokens.append(LETTERS[letter])
        except (KeyError, TypeError):
            raise WordSyntaxError(
                f"Unrecognized letter {letter!r} at position {pos}; expected one of a, A, t, T",
                position=pos,
                payload=letter,
            )
    return _from_tokens(tokens)


parse_word = normalize


def identity() -> NormalWord:
    return NormalWord()


def a_power(k: int) -> NormalWord:
    return NormalWord((), k % 3)


def syllable_word(index: int, exp: int = 1, tail: int = 0) -> NormalWord:
    """The element t_index^exp a^tail."""
    stack: List[Syllable] = []
    _push(stack, index % 3, exp)
    return NormalWord(tuple(stack), tail % 3)


def from_syllables(pairs: Iterable[Tuple[int, int]], tail: int = 0) -> NormalWord:
    """Build (and renormalize) a word from (index, exponent) pairs."""
    stack: List[Syllable] = []
    for index, exp in pairs:
        _push(stack, index % 3, exp)
    return NormalWord(tuple(stack), tail % 3)


def generators() -> List[NormalWord]:
    """The six syllables t_c^e followed by a and a^2."""
    gens = [syllable_word(c, e) for c in range(3) for e in (1, 2)]
    return gens + [a_power(1), a_power(2)]


def _a_letters(k: int) -> str:
    return ("", "a", "A")[k % 3]


def format_word(w: NormalWord) -> str:
    """
    Raw-letter spelling of w (a^2 written as A), expanding
    t_c^e = a^-c t^e a^c and merging adjacent a-runs.
    """
    out = []
    offset = 0
    for syl in w.syllables:
        out.append(_a_letters(-syl.index - offset))
        out.append("t" if syl.exp == 1 else "T")
        offset = -syl.index
    out.append(_a_letters(w.tail - offset))
    return "".join(out)


def random_word(rng, max_len: int, min_len: int = 0) -> NormalWord:
    """A uniformly built random normal word with min_len..max_len syllables."""
    n = rng.randint(min_len, max_len)
    stack: List[Syllable] = []
    prev = None
    for _ in range(n):
        choices = [c for c in range(3) if c != prev]
        prev = rng.choice(choices)
        stack.append(Syllable(prev, rng.choice((1, 2))))
    return NormalWord(tuple(stack), rng.randrange(3))


# ---------------------------------------------------------------------------
# Group operations
# ---------------------------------------------------------------------------

def multiply(u: NormalWord, v: NormalWord) -> NormalWord:
    """u·v: move u's tail through v's syllables (a^tau t_c = t_{c-tau} a^tau)."""
    stack = list(u.syllables)
    shift = u.tail
    for syl in v.syllables:
        _push(stack, (syl.index - shift) % 3, syl.exp)
    return NormalWord(tuple(stack), (u.tail + v.tail) % 3)


def product(words: Iterable[NormalWord]) -> NormalWord:
    acc = identity()
    for w in words:
        acc = multiply(acc, w)
    return acc


def inverse(w: NormalWord) -> NormalWord:
    """Reverse the syllables, negate exponents, shift indices by tau, negate tau."""
    stack: List[Syllable] = []
    for syl in reversed(w.syllables):
        _push(stack, (syl.index + w.tail) % 3, -syl.exp)
    return NormalWord(tuple(stack), (-w.tail) % 3)


def power(w: NormalWord, k: int) -> NormalWord:
    if k < 0:
        return power(inverse(w), -k)
    acc = identity()
    base = w
    while k:
        if k & 1:
            acc = multiply(acc, base)
        base = multiply(base, base)
        k >>= 1
    return acc


def conjugate(w: NormalWord, k: int) -> NormalWord:
    """w^(a^k) = a^-k w a^k."""
    return multiply(multiply(a_power(-k), w), a_power(k))


def rotate_indices(w: NormalWord, sigma: int) -> NormalWord:
    """s_sigma: every syllable index translated by sigma, tail kept."""
    return NormalWord(
        tuple(Syllable((syl.index + sigma) % 3, syl.exp) for syl in w.syllables),
        w.tail,
    )


def commutator(u: NormalWord, v: NormalWord) -> NormalWord:
    """[u, v] = u^-1 v^-1 u v."""
    return product((inverse(u), inverse(v), u, v))


# ---------------------------------------------------------------------------
# Wreath recursion
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1 << 18)
def decompose(w: NormalWord) -> WreathDecomp:
    """
    First-level decomposition. Syllables stabilise level 1, so each section
    is the product of the syllable sections, where (t_c^e)_c = a^e,
    (t_c^e)_{c+2} = t^e and the third section is trivial.
    """
    tokens: Tuple[List[Tuple[str, int]], ...] = ([], [], [])
    for syl in w.syllables:
        tokens[syl.index].append(("a", syl.exp))
        tokens[(syl.index + 2) % 3].append(("t", syl.exp))
    sections = tuple(_from_tokens(tok) for tok in tokens)
    return WreathDecomp(sections, w.tail)


def section(w: NormalWord, v: Sequence[int]) -> NormalWord:
    """The state of w at vertex v (w itself at the root)."""
    for x in v:
        w = decompose(w).sections[x]
    return w


def act(w: NormalWord, v: Sequence[int]) -> Vertex:
    """Image of vertex v under w."""
    out = []
    for x in v:
        d = decompose(w)
        out.append((x + d.root) % 3)
        w = d.sections[x]
    return tuple(out)


def vertices(depth: int) -> Iterable[Vertex]:
    return itertools.product(range(3), repeat=depth)


def action_signature(w: NormalWord, depth: int) -> Tuple[Vertex, ...]:
    """Images of every depth-`depth` vertex, in lexicographic vertex order."""
    return tuple(act(w, v) for v in vertices(depth))


def level_permutation(w: NormalWord, depth: int) -> Tuple[int, ...]:
    """The permutation induced on level `depth`, vertices numbered base 3."""
    out = []
    for image in action_signature(w, depth):
        n = 0
        for x in image:
            n = 3 * n + x
        out.append(n)
    return tuple(out)


def section_closure(w: NormalWord) -> Tuple[List[NormalWord], List[Tuple[Rot, int, int, int]]]:
    """
    All words reachable from w by taking sections (w first), with the
    transition table (root, child0, child1, child2) over their indices.

    Finite because a section never has more syllables than its parent.
    """
    states = [w]
    index = {w: 0}
    table = []
    i = 0
    while i < len(states):
        d = decompose(states[i])
        row = [d.root]
        for child in d.sections:
            j = index.get(child)
            if j is None:
                j = len(states)
                index[child] = j
                states.append(child)
            row.append(j)
        table.append(tuple(row))
        i += 1
    return states, table


# ---------------------------------------------------------------------------
# Equality and canonical keys
# ---------------------------------------------------------------------------

def equal(u: NormalWord, v: NormalWord) -> bool:
    """
    Coinductive bisimulation check: roots agree and all section pairs are
    equal, pairs already under examination counting as equal.
    """
    if u == v:
        return True
    seen = set()
    stack = [(u, v)]
    while stack:
        x, y = stack.pop()
        if x == y or (x, y) in seen:
            continue
        seen.add((x, y))
        dx, dy = decompose(x), decompose(y)
        if dx.root != dy.root:
            return False
        stack.extend(zip(dx.sections, dy.sections))
    return True


def is_identity(w: NormalWord) -> bool:
    return equal(w, identity())


def _minimize(table: List[Tuple[Rot, int, int, int]]) -> List[int]:
    """Moore partition refinement; returns the block of every state."""
    block = [row[0] for row in table]
    count = len(set(block))
    while True:
        relabel: Dict[Tuple[int, int, int, int], int] = {}
        new_block = []
        for s, row in enumerate(table):
            sig = (block[s], block[row[1]], block[row[2]], block[row[3]])
            new_block.append(relabel.setdefault(sig, len(relabel)))
        if len(relabel) == count:
            return new_block
        block, count = new_block, len(relabel)


def key(w: NormalWord) -> ElementKey:
    """
    Canonical key: section closure, partition refinement, then states
    renumbered in breadth-first order from w (children in order 0, 1, 2).
    """
    _, table = section_closure(w)
    block = _minimize(table)

    representative: Dict[int, int] = {}
    for s, b in enumerate(block):
        representative.setdefault(b, s)

    order = {block[0]: 0}
    queue = [block[0]]
    records = []
    for b in queue:
        row = table[representative[b]]
        children = []
        for child in row[1:]:
            cb = block[child]
            if cb not in order:
                order[cb] = len(order)
                queue.append(cb)
            children.append(order[cb])
        records.append(_STATE_RECORD.pack(row[0], *children))
    return ElementKey(b"".join(records))


IDENTITY_KEY = key(NormalWord())


# ---------------------------------------------------------------------------
# Commutator subgroup and psi
# ---------------------------------------------------------------------------

def abelianization(w: NormalWord) -> Tuple[int, int]:
    """Image in (Z/3)^2: (a-exponent sum, t-exponent sum)."""
    return w.tail % 3, sum(syl.exp for syl in w.syllables) % 3


def in_commutator_subgroup(w: NormalWord) -> bool:
    return abelianization(w) == (0, 0)


def psi(w: NormalWord) -> NormalWord:
    """
    The endomorphism of G' induced by a -> t, t -> t^a, applied to the
    expansion t_c^e = a^-c t^e a^c. For g in G', psi(g) = <g, 1, 1>.
    """
    if not in_commutator_subgroup(w):
        raise DomainError(f"psi is only defined on G'; {format_word(w)!r} is not in G'", payload=w)

    tokens: List[Tuple[str, int]] = []
    for syl in w.syllables:
        tokens.append(("t", -syl.index))
        tokens.extend((("a", -1), ("t", syl.exp), ("a", 1)))
        tokens.append(("t", syl.index))
    tokens.append(("t", w.tail))
    return _from_tokens(tokens)


# ---------------------------------------------------------------------------
# Portraits
# ---------------------------------------------------------------------------

def portrait(w: NormalWord, depth: int) -> Portrait:
    if depth < 0:
        raise DomainError(f"portrait depth must be >= 0, got {depth}")
    d = decompose(w)
    if depth == 0:
        return Portrait(d.root)
    return Portrait(d.root, tuple(portrait(s, depth - 1) for s in d.sections))


def _vertex_name(v: Vertex) -> str:
    return "".join(str(x) for x in v) or "ε"


def portrait_dot(p: Portrait, name: Optional[str] = None) -> str:
    """DOT digraph: node name = vertex path, label = rotation value."""
    dot = graphviz.Digraph(name=name or "portrait")
    labels = p.labels()
    for v in sorted(labels, key=lambda v: (len(v), v)):
        dot.node(_vertex_name(v), str(labels[v]))
        if v:
            dot.edge(_vertex_name(v[:-1]), _vertex_name(v))
    return dot.source
