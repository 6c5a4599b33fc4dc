# pyfabgupta/torsion.py

"""
Element orders and infinite-order certificates.

A Certificate (k, vertex, j) for g records three facts:
    1. k is the exact order of the root permutation of g,
    2. g^k fixes the first level,
    3. the section of g^k at `vertex` equals g^j with 1 <= j < k.
If g had finite order n then k | n and (g^k)^(n/k) = 1 would force
(g^j)^(n/k) = 1, i.e. n | jn/k, impossible for j < k.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional

from .errors import DomainError
from .tree_group import (
    IDENTITY_KEY,
    NormalWord,
    Vertex,
    decompose,
    equal,
    format_word,
    is_identity,
    key,
    multiply,
    power,
    section,
)

logger = logging.getLogger(__name__)


class OrderKind(Enum):
    FINITE = "finite"
    EXCEEDS_BOUND = "exceeds-bound"
    INFINITE = "infinite"


@dataclass(frozen=True)
class Certificate:
    k: int
    vertex: Vertex
    j: int

    def facts(self, w: NormalWord) -> Dict[str, Any]:
        wk = power(w, self.k)
        return {
            "root_order": root_order(w),
            "stabilizes_level_1": decompose(wk).root == 0,
            "section": format_word(section(wk, self.vertex)),
            "power": format_word(power(w, self.j)),
        }

    def verify(self, w: NormalWord) -> bool:
        """Recompute all three facts from scratch."""
        if not 1 <= self.j < self.k or len(self.vertex) != 1:
            return False
        if root_order(w) != self.k:
            return False
        wk = power(w, self.k)
        if decompose(wk).root != 0:
            return False
        return equal(section(wk, self.vertex), power(w, self.j))

    def to_dict(self) -> Dict[str, Any]:
        return {"k": self.k, "vertex": list(self.vertex), "j": self.j}


@dataclass(frozen=True)
class OrderResult:
    kind: OrderKind
    order: Optional[int] = None
    bound: Optional[int] = None
    certificate: Optional[Certificate] = None

    def to_dict(self, w: Optional[NormalWord] = None) -> Dict[str, Any]:
        out: Dict[str, Any] = {"kind": self.kind.value}
        if self.order is not None:
            out["order"] = self.order
        if self.bound is not None:
            out["bound"] = self.bound
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
            if w is not None:
                out["certificate"]["facts"] = self.certificate.facts(w)
        return out


def root_order(w: NormalWord) -> int:
    """Order of the rotation a^tail on the first level (1 or 3)."""
    return 1 if w.tail == 0 else 3


def infinite_order_certificate(w: NormalWord, kmax: int = 100) -> Optional[Certificate]:
    """
    Look for a depth-1 section of w^k (k = root order) equal to w^j, j < k.
    None proves nothing.
    """
    if is_identity(w):
        raise DomainError("the identity has no infinite-order certificate")
    k = root_order(w)
    if k > kmax:
        return None
    wk = power(w, k)
    if decompose(wk).root != 0:
        return None
    for j in range(1, k):
        wj = power(w, j)
        for x in range(3):
            cert = Certificate(k, (x,), j)
            if equal(section(wk, (x,)), wj) and cert.verify(w):
                logger.debug("Certificate %s for %s", cert, format_word(w))
                return cert
    return None


def order(w: NormalWord, kmax: int = 100) -> OrderResult:
    """Finite(d) at the first power hitting the identity, else a certificate, else ExceedsBound."""
    if kmax < 1:
        raise DomainError(f"kmax must be >= 1, got {kmax}")
    acc = w
    for d in range(1, kmax + 1):
        if key(acc) == IDENTITY_KEY:
            return OrderResult(OrderKind.FINITE, order=d)
        acc = multiply(acc, w)

    cert = infinite_order_certificate(w, kmax)
    if cert is not None:
        return OrderResult(OrderKind.INFINITE, certificate=cert)
    return OrderResult(OrderKind.EXCEEDS_BOUND, bound=kmax)
