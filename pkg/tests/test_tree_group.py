import random
import re

import pytest

from pyfabgupta.errors import DomainError, WordSyntaxError
from pyfabgupta.tree_group import (
    IDENTITY_KEY,
    NormalWord,
    Syllable,
    a_power,
    act,
    commutator,
    conjugate,
    decompose,
    equal,
    format_word,
    from_syllables,
    generators,
    identity,
    in_commutator_subgroup,
    inverse,
    is_identity,
    key,
    level_permutation,
    multiply,
    normalize,
    portrait,
    portrait_dot,
    power,
    psi,
    random_word,
    rotate_indices,
    section,
    syllable_word,
)

T0 = syllable_word(0)
T1 = syllable_word(1)
T2 = syllable_word(2)
A = a_power(1)


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------

def test_normalize_basic_words():
    assert normalize("") == NormalWord()
    assert normalize("t") == NormalWord((Syllable(0, 1),), 0)
    assert normalize("ataa") == T2
    assert normalize("Ata") == T1
    assert normalize("T") == syllable_word(0, 2)


def test_normalize_collapses_powers_of_t():
    assert normalize("ttt").is_trivial_word
    assert normalize("tttt") == T0
    assert normalize("aaa").is_trivial_word


def test_normalize_reports_position_of_bad_letter():
    with pytest.raises(WordSyntaxError) as exc:
        normalize("atx")
    assert exc.value.position == 2
    assert exc.value.exit_code == 2


def test_format_word_spells_a_runs():
    assert format_word(T0) == "t"
    assert format_word(T2) == "atA"
    assert format_word(A) == "a"
    assert format_word(identity()) == ""


def test_format_word_is_reparsed_to_the_same_normal_form():
    rng = random.Random(7)
    for _ in range(50):
        w = random_word(rng, 8)
        assert normalize(format_word(w)) == w


# ---------------------------------------------------------------------------
# Group operations
# ---------------------------------------------------------------------------

def test_multiply_examples():
    assert multiply(T0, syllable_word(0, 2)).is_trivial_word
    assert multiply(identity(), T1) == T1
    # a · t = t_2 · a with t_c = a^-c t a^c
    left = NormalWord((Syllable(0, 1),), 1)
    assert multiply(left, T0) == NormalWord((Syllable(0, 1), Syllable(2, 1)), 1)


def test_inverse_cancels():
    assert inverse(identity()) == identity()
    assert inverse(T0) == syllable_word(0, 2)
    w = from_syllables([(0, 1), (1, 1)], 2)
    assert multiply(w, inverse(w)).is_trivial_word
    assert multiply(inverse(w), w).is_trivial_word


def test_power_and_order_three_generators():
    for g in generators():
        assert power(g, 3).is_trivial_word
    w = from_syllables([(0, 1), (2, 2)], 1)
    assert power(w, -1) == inverse(w)


def test_conjugate_moves_indices():
    # a^-k t_c a^k = t_{c+k}
    assert conjugate(T0, 1) == T1
    assert conjugate(T0, 2) == T2
    assert conjugate(T2, 1) == T0


# ---------------------------------------------------------------------------
# Wreath recursion
# ---------------------------------------------------------------------------

def test_decompose_generators():
    d = decompose(T0)
    assert d.root == 0
    assert d.sections == (A, identity(), T0)

    assert decompose(T1).sections == (T0, A, identity())
    assert decompose(T2).sections == (identity(), T0, A)


def test_decompose_product():
    d = decompose(multiply(T0, T1))
    assert equal(d.sections[0], normalize("at"))
    assert equal(d.sections[1], A)
    assert equal(d.sections[2], T0)


def test_section_along_paths():
    assert section(T0, (2,)) == T0
    assert section(T0, (2, 2, 2)) == T0
    assert section(identity(), (0, 1, 2)) == identity()


def test_act_on_vertices():
    assert act(A, (0,)) == (1,)
    assert act(identity(), (1, 2)) == (1, 2)
    assert act(T0, (0, 0)) == (0, 1)
    assert act(T0, (2, 0)) == (2, 0)
    assert level_permutation(A, 1) == (1, 2, 0)


def test_cube_of_at_has_at_as_a_section():
    at = normalize("at")
    d = decompose(power(at, 3))
    assert d.root == 0
    assert equal(d.sections[0], normalize("ta"))
    assert equal(d.sections[1], normalize("ta"))
    assert equal(d.sections[2], at)


def test_rotate_indices_permutes_sections():
    rng = random.Random(3)
    for _ in range(20):
        w = random_word(rng, 6)
        base = decompose(w)
        rotated = decompose(rotate_indices(w, 1))
        for x in range(3):
            assert rotated.sections[x] == base.sections[(x - 1) % 3]


# ---------------------------------------------------------------------------
# Equality and keys
# ---------------------------------------------------------------------------

def test_equal_examples():
    assert equal(normalize("ttt"), identity())
    w = from_syllables([(1, 2), (0, 1)], 1)
    assert equal(w, w)
    assert not equal(T0, T1)
    assert is_identity(multiply(T2, inverse(T2)))


def test_key_examples():
    assert key(normalize("ttt")) == IDENTITY_KEY
    assert key(T0) != key(syllable_word(0, 2))
    w = from_syllables([(0, 1), (1, 2), (2, 1)], 2)
    assert key(multiply(w, identity())) == key(w)


def test_key_agrees_with_bisimulation():
    rng = random.Random(11)
    words = [random_word(rng, 3) for _ in range(40)]
    for u in words[:20]:
        for v in words[20:]:
            assert (key(u) == key(v)) == equal(u, v)


def test_generators_are_distinct_elements():
    keys = {key(g) for g in generators()}
    assert len(keys) == 8


# ---------------------------------------------------------------------------
# Commutator subgroup and psi
# ---------------------------------------------------------------------------

def test_in_commutator_subgroup():
    assert in_commutator_subgroup(identity())
    assert not in_commutator_subgroup(T0)
    assert in_commutator_subgroup(from_syllables([(0, 1), (1, 2)]))
    assert not in_commutator_subgroup(A)


def test_psi_of_identity():
    assert psi(identity()).is_trivial_word


def test_psi_puts_the_element_at_vertex_zero():
    for w in (normalize("tattaa"), commutator(A, T0), from_syllables([(1, 1), (2, 2)])):
        d = decompose(psi(w))
        assert d.root == 0
        assert equal(d.sections[0], w)
        assert is_identity(d.sections[1])
        assert is_identity(d.sections[2])


def test_psi_conjugates_move_the_element():
    w = from_syllables([(0, 2), (2, 1)])
    d1 = decompose(conjugate(psi(w), 1))
    assert equal(d1.sections[1], w)
    assert is_identity(d1.sections[0]) and is_identity(d1.sections[2])
    d2 = decompose(conjugate(psi(w), 2))
    assert equal(d2.sections[2], w)


def test_psi_rejects_elements_outside_commutator_subgroup():
    with pytest.raises(DomainError):
        psi(T0)


# ---------------------------------------------------------------------------
# Portraits
# ---------------------------------------------------------------------------

def test_portrait_of_t():
    p = portrait(T0, 1)
    assert p.labels() == {(): 0, (0,): 1, (1,): 0, (2,): 0}


def test_portrait_negative_depth():
    with pytest.raises(DomainError):
        portrait(T0, -1)


def test_portrait_dot_export():
    dot = portrait_dot(portrait(T0, 1), name="t")
    assert re.match(r'digraph "?t"? \{', dot)
    assert re.search(r'"?0"? \[label="?1"?\]', dot)
    assert re.search(r'"?2"? \[label="?0"?\]', dot)
    assert re.search(r'"ε" -> "?2"?', dot)
    assert len(re.findall(r"->", dot)) == 3
    assert dot.rstrip().endswith("}")


def test_portrait_dot_default_name():
    dot = portrait_dot(portrait(A, 0))
    assert re.match(r'digraph "?portrait"? \{', dot)
    assert "->" not in dot


# ---------------------------------------------------------------------------
# Tree action
# ---------------------------------------------------------------------------

def _rotation_labels(w, depth, memo):
    """Nested rotation labels down to `depth`; they fix the action on level depth + 1."""
    k = (w, depth)
    if k not in memo:
        d = decompose(w)
        if depth == 0:
            memo[k] = d.root
        else:
            memo[k] = (d.root,) + tuple(_rotation_labels(s, depth - 1, memo) for s in d.sections)
    return memo[k]


@pytest.mark.parametrize("depth", range(1, 7))
def test_act_is_a_bijection_on_each_level(depth):
    rng = random.Random(100 + depth)
    for _ in range(12):
        w = random_word(rng, 6)
        assert sorted(level_permutation(w, depth)) == list(range(3 ** depth))


def test_bisimulation_matches_depth_eight_action_on_ball(ball4):
    table = ball4.restrict(3)
    memo = {}
    signatures = {}
    for k, reps in table.alternates.items():
        sigs = {_rotation_labels(w, 7, memo) for w in reps}
        assert len(sigs) == 1
        signatures[k] = sigs.pop()
    assert len(signatures) == 381
    assert len(set(signatures.values())) == len(signatures)


def test_psi_on_seeded_commutator_words():
    rng = random.Random(2024)
    checked = 0
    while checked < 100:
        w = commutator(random_word(rng, 3), random_word(rng, 3))
        if rng.random() < 0.5:
            w = multiply(w, commutator(random_word(rng, 2), T0))
        assert in_commutator_subgroup(w)
        d = decompose(psi(w))
        assert d.root == 0
        assert equal(d.sections[0], w)
        assert is_identity(d.sections[1])
        assert is_identity(d.sections[2])
        checked += 1
