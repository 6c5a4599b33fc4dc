import random

import pytest

from pyfabgupta.errors import DomainError
from pyfabgupta.torsion import (
    Certificate,
    OrderKind,
    infinite_order_certificate,
    order,
    root_order,
)
from pyfabgupta.tree_group import (
    a_power,
    generators,
    identity,
    inverse,
    is_identity,
    multiply,
    normalize,
    random_word,
    syllable_word,
)


def test_generators_have_order_three():
    for g in generators():
        result = order(g)
        assert result.kind is OrderKind.FINITE
        assert result.order == 3


def test_identity_has_order_one():
    assert order(identity()).order == 1


def test_root_order():
    assert root_order(normalize("t")) == 1
    assert root_order(a_power(2)) == 3


def test_at_has_infinite_order():
    at = normalize("at")
    result = order(at, kmax=27)
    assert result.kind is OrderKind.INFINITE
    cert = result.certificate
    assert (cert.k, cert.vertex, cert.j) == (3, (2,), 1)
    assert cert.verify(at)


def test_inverse_of_at_has_a_certificate():
    w = inverse(normalize("at"))
    cert = infinite_order_certificate(w)
    assert cert is not None
    assert cert.verify(w)


def test_bad_certificates_do_not_verify():
    at = normalize("at")
    assert not Certificate(3, (2,), 2).verify(at)
    assert not Certificate(3, (0,), 1).verify(at)
    assert not Certificate(3, (2,), 3).verify(at)
    assert not Certificate(1, (2,), 1).verify(at)


def test_t_has_no_certificate():
    assert infinite_order_certificate(syllable_word(0)) is None
    with pytest.raises(DomainError):
        infinite_order_certificate(identity())


def test_exceeds_bound():
    result = order(syllable_word(0), kmax=2)
    assert result.kind is OrderKind.EXCEEDS_BOUND
    assert result.bound == 2
    assert result.to_dict() == {"kind": "exceeds-bound", "bound": 2}


def test_kmax_must_be_positive():
    with pytest.raises(DomainError):
        order(identity(), kmax=0)


def test_order_result_serialization():
    at = normalize("at")
    data = order(at, kmax=27).to_dict(at)
    assert data["kind"] == "infinite"
    assert data["certificate"]["k"] == 3
    assert data["certificate"]["vertex"] == [2]
    facts = data["certificate"]["facts"]
    assert facts["root_order"] == 3
    assert facts["stabilizes_level_1"] is True


def test_inverse_has_the_same_order():
    rng = random.Random(5)
    for _ in range(20):
        w = random_word(rng, 5)
        a = order(w, kmax=27)
        b = order(inverse(w), kmax=27)
        assert a.kind is b.kind
        assert a.order == b.order


def test_powers_of_at_stay_nontrivial_up_to_one_hundred():
    at = normalize("at")
    p = identity()
    for _ in range(100):
        p = multiply(p, at)
        assert not is_identity(p)
    assert order(at, kmax=100).kind is OrderKind.INFINITE
