# pyfabgupta/bounds.py

"""
Numeric side of the growth bounds.

Supports:
    • lambda(n) = n loglog n / log n and the auxiliary function f(n)
      (two independent codings) with a sampled search for N where f <= 1
    • Concave majorants log G >= log F of subexponential functions, plus
      their property checks (domination, concavity, product inequality)
    • The two-branch upper function F(n) = exp(A + B n (loglog n)^2 / log n)
    • The W< / W> majorants and the constant M
    • The closed-form lower bound 12^((t/2)^(log 3 / log 6))

Natural logarithms and float64 throughout. Every "for all n" claim is only
checked on an explicit sampling grid, which is reported with the result.
"""

import logging
import math
import random
from bisect import bisect_right
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, List, Mapping, Optional

import numpy as np

from .errors import BoundsError, DomainError

logger = logging.getLogger(__name__)

LOWER_EXPONENT = math.log(3) / math.log(6)
C_THRESHOLD = math.exp(math.e ** 2)

FIND_N_SAMPLES = 10_000
FIND_N_WINDOW = 1_000
_MAX_ROUNDS = 200


@dataclass(frozen=True)
class BoundParams:
    """
    d: tree arity, m: level with I_m = I, A/B: exponent constants of F,
    M: W> constant, K: per-factor constant of p(n), index: [G : Stab(m)].
    """

    d: int = 3
    m: int = 3
    A: float = 0.0
    B: float = 1.0
    M: float = 0.0
    K: float = 1.0
    index: float = 1.0

    def __post_init__(self):
        if self.d < 2 or self.m < 1:
            raise DomainError(f"need d >= 2 and m >= 1, got d={self.d}, m={self.m}")
        if min(self.A, self.B, self.M) < 0:
            raise DomainError("A, B and M must be >= 0")

    @property
    def c(self) -> float:
        return C_THRESHOLD

    @property
    def dm(self) -> int:
        return self.d ** self.m

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out["c"] = self.c
        return out


def _exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


# ---------------------------------------------------------------------------
# lambda and f
# ---------------------------------------------------------------------------

def lambda_fn(n: float) -> float:
    if n <= math.e:
        raise DomainError(f"lambda(n) needs n > e, got {n}")
    ln = math.log(n)
    return n * math.log(ln) / ln


def _f_defined(n: float, dm: int) -> bool:
    if n <= math.e ** math.e:
        return False
    return (n - lambda_fn(n)) / dm > math.e


def _f_array(n: np.ndarray, dm: int) -> np.ndarray:
    ln = np.log(n)
    ll = np.log(ln)
    rest = n - n * ll / ln
    lq = np.log(rest / dm)
    return (
        ln / (n * ll ** 2)
        + dm * ln ** 2 / (n * ll ** 2)
        + rest / n * ln / lq * (np.log(lq) / ll) ** 2
    )


def f_lf(n: float, p: BoundParams) -> float:
    """The three-term sum, term by term as displayed."""
    if not _f_defined(n, p.dm):
        raise DomainError(f"f(n) undefined at n={n} for d^m={p.dm} (some logarithm is not positive)")
    return float(_f_array(np.float64(n), p.dm))


def f_lf_refactored(n: float, p: BoundParams) -> float:
    """
    f written with A = d^m and n' = (n - lambda)/A:
    (log n / n)(1 + A log n) / (loglog n)^2 + (loglog n' / loglog n)^2 A n' log n / (n log n').
    """
    if not _f_defined(n, p.dm):
        raise DomainError(f"f(n) undefined at n={n} for d^m={p.dm} (some logarithm is not positive)")
    A = p.dm
    ln = math.log(n)
    ll = math.log(ln)
    n1 = (n - lambda_fn(n)) / A
    ln1 = math.log(n1)
    return (ln / n) * (1 + A * ln) / ll ** 2 + (math.log(ln1) / ll) ** 2 * A * n1 * ln / (n * ln1)


def _f_or_inf(n: float, dm: int) -> float:
    if not _f_defined(n, dm):
        return math.inf
    return float(_f_array(np.float64(n), dm))


def _domain_start(dm: int) -> int:
    """Smallest integer where f is defined."""
    hi = 16
    while not _f_defined(hi, dm):
        hi *= 2
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _f_defined(mid, dm):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass
class FindNResult:
    N: int
    limit: float
    samples: int
    window: int
    boundary: Optional[float]
    policy: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _crossing(a: float, b: float, dm: int) -> int:
    """Bisect integers in (a, b] for a point where f drops to <= 1."""
    lo, hi = int(math.floor(a)), int(math.ceil(b))
    if _f_or_inf(hi, dm) > 1:
        return hi + 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _f_or_inf(mid, dm) <= 1:
            hi = mid
        else:
            lo = mid
    return hi


def find_N(
    p: BoundParams,
    limit: float = 1e12,
    samples: int = FIND_N_SAMPLES,
    window: int = FIND_N_WINDOW,
) -> FindNResult:
    """
    Smallest sampled N with f(n) <= 1 on `samples` log-spaced points of
    [N, limit] and on every integer of [N, N + window].
    """
    if limit <= 1e3:
        raise DomainError(f"limit must exceed 10^3, got {limit}")

    dm = p.dm
    N = _domain_start(dm)
    for _ in range(_MAX_ROUNDS):
        if N >= limit:
            break
        grid = np.geomspace(N, limit, samples)
        bad = np.flatnonzero(_f_array(grid, dm) > 1)
        if bad.size:
            i = int(bad[-1])
            if i == grid.size - 1:
                break
            N = max(N + 1, _crossing(grid[i], grid[i + 1], dm))
            continue

        ints = np.arange(N, N + window + 1, dtype=np.float64)
        bad = np.flatnonzero(_f_array(ints, dm) > 1)
        if bad.size:
            N = int(ints[bad[-1]]) + 1
            continue

        boundary = _f_or_inf(N - 1, dm)
        logger.info("f(n) <= 1 on the sampled range [%d, %g]", N, limit)
        return FindNResult(
            N=N,
            limit=limit,
            samples=samples,
            window=window,
            boundary=None if math.isinf(boundary) else boundary,
            policy=f"{samples} log-spaced samples of [N, {limit:g}] and every integer of [N, N+{window}]",
        )

    raise BoundsError(f"no N <= {limit:g} with f(n) <= 1 on the sampled range (d={p.d}, m={p.m})")


# ---------------------------------------------------------------------------
# Concave majorant
# ---------------------------------------------------------------------------

@dataclass
class ConcaveMajorant:
    """log G(n) = eps_i n + delta_i on [n_i, n_{i+1}]; the outer pieces extend linearly."""

    breakpoints: List[float]
    eps: List[float]
    deltas: List[float]

    def log_value(self, n):
        i = max(bisect_right(self.breakpoints, n) - 1, 0)
        return self.eps[i] * n + self.deltas[i]

    def log_values(self, ns) -> np.ndarray:
        ns = np.asarray(ns, dtype=np.float64)
        idx = np.clip(np.searchsorted(self.breakpoints, ns, side="right") - 1, 0, None)
        return np.asarray(self.eps)[idx] * ns + np.asarray(self.deltas)[idx]

    def value(self, n) -> float:
        return _exp(self.log_value(n))


def concave_majorant(samples: Mapping[float, float], log_values: bool = False) -> ConcaveMajorant:
    """
    Build log G from sampled F (or log F when `log_values`): eps_i are the
    strictly decreasing values of the tail maximum of log F(n)/n, n_i where
    they drop, delta_1 = 0 and delta_i = (eps_{i-1} - eps_i) n_i + delta_{i-1}.
    """
    if not samples:
        raise BoundsError("concave_majorant needs at least one sample")
    xs = np.array(sorted(samples), dtype=np.float64)
    if xs[0] <= 0:
        raise BoundsError("samples must be taken at n > 0")
    vals = np.array([samples[x] for x in sorted(samples)], dtype=np.float64)
    if not log_values:
        with np.errstate(divide="ignore"):
            vals = np.log(vals)
    if not np.all(np.isfinite(vals)):
        raise BoundsError("F must be positive and finite on every sample")

    ratio = vals / xs
    tail = np.maximum.accumulate(ratio[::-1])[::-1]
    if tail[-1] > 0 and tail[-1] >= tail[0]:
        raise BoundsError("log F(n)/n does not decrease on the sampled tail (not subexponential)")

    breakpoints = [float(xs[0])]
    eps = [float(tail[0])]
    deltas = [0.0]
    for x, e in zip(xs[1:], tail[1:]):
        if e < eps[-1]:
            deltas.append((eps[-1] - e) * x + deltas[-1])
            breakpoints.append(float(x))
            eps.append(float(e))
    logger.debug("Concave majorant with %d pieces", len(breakpoints))
    return ConcaveMajorant(breakpoints, eps, deltas)


def check_concave_majorant(
    g: ConcaveMajorant,
    log_samples: Mapping[float, float],
    tuples: int = 100,
    seed: int = 0,
    rtol: float = 1e-9,
) -> List[Dict[str, Any]]:
    """Domination, discrete concavity and the product inequality; returns violations."""
    violations = []
    for x, lf in log_samples.items():
        lg = g.log_value(x)
        if lg < lf - rtol * max(1.0, abs(lf)):
            violations.append({"check": "domination", "n": x, "log_G": lg, "log_F": lf})

    lo, hi = min(log_samples), max(log_samples)
    grid = np.linspace(lo, hi, 4001)
    vals = g.log_values(grid)
    second = np.diff(vals, 2)
    scale = rtol * np.maximum(1.0, np.abs(vals[1:-1]))
    for i in np.flatnonzero(second > scale):
        violations.append({"check": "concavity", "n": float(grid[i + 1]), "second_difference": float(second[i])})

    rng = random.Random(seed)
    for _ in range(tuples):
        k = rng.randint(2, 10)
        ns = [rng.uniform(lo, hi) for _ in range(k)]
        lhs = sum(g.log_value(n) for n in ns)
        rhs = k * g.log_value(sum(ns) / k)
        if lhs > rhs + rtol * max(1.0, abs(rhs)):
            violations.append({"check": "product", "n": ns, "lhs": lhs, "rhs": rhs})
    return violations


# ---------------------------------------------------------------------------
# F and the W bounds
# ---------------------------------------------------------------------------

def _growth_exponent(n: float) -> float:
    ln = math.log(n)
    return n * math.log(ln) ** 2 / ln


def log_F_upper(n: float, p: BoundParams) -> float:
    if n < 0:
        raise DomainError(f"F(n) needs n >= 0, got {n}")
    return p.A + p.B * _growth_exponent(max(n, p.c))


def F_upper(n: float, p: BoundParams) -> float:
    """exp(A + B n (loglog n)^2 / log n) for n >= c, constant below c."""
    return _exp(log_F_upper(n, p))


def log_F_second_derivative(n: float, B: float = 1.0) -> float:
    """(log F)'' for n >= c, as the closed form in log n and loglog n."""
    if n <= math.e:
        raise DomainError(f"needs n > e, got {n}")
    x = math.log(n)
    y = math.log(x)
    return B * (-x * y ** 2 + 2 * x * y + 2 * y ** 2 - 6 * y + 2) / (n * x ** 3)


def _check_lam(n: float, lam: float) -> None:
    if not 0 < lam <= n / 2:
        raise DomainError(f"need 0 < lambda <= n/2, got lambda={lam}, n={n}")


def w_less_bound(n: float, lam: float, delta_at: Callable[[float], float]) -> float:
    """e^lam (n/lam)^(lam-1) delta(n/lam)^lam."""
    _check_lam(n, lam)
    d = delta_at(n / lam)
    if d <= 0:
        return 0.0
    return _exp(lam + (lam - 1) * math.log(n / lam) + lam * math.log(d))


def binom_real(x: float, k: int) -> float:
    """Generalised binomial coefficient; 0 when fewer than k items remain."""
    if x < k:
        return 0.0
    return _exp(math.lgamma(x + 1) - math.lgamma(k + 1) - math.lgamma(x - k + 1))


def p_poly(n: float, lam: float, p: BoundParams) -> float:
    """(d^m + 1) [G : Stab(m)] K^(d^m) binom(n - lam, d^m)."""
    return (p.dm + 1) * p.index * p.K ** p.dm * binom_real(n - lam, p.dm)


def w_greater_bound(n: float, lam: float, p: BoundParams, rate: float) -> float:
    """p(n) rate^(n - lam)."""
    _check_lam(n, lam)
    base = p_poly(n, lam, p)
    if base == 0.0:
        return 0.0
    return _exp(math.log(base) + (n - lam) * math.log(rate))


def compute_M(p: BoundParams, index: float, gamma_c: float) -> float:
    """(d^m + 1) [G : Stab(m)] gamma(c)^(d^m) (e / d^m)^(d^m)."""
    dm = p.dm
    return _exp(
        math.log(dm + 1) + math.log(index) + dm * math.log(gamma_c) + dm * (1 - math.log(dm))
    )


def induction_lhs(n: float, p: BoundParams) -> float:
    """
    Left side of the inductive step M n^(d^m) F((n - lam)/d^m)^(d^m) <= F(n)/2,
    divided through by B n (loglog n)^2 / log n.
    """
    if p.M <= 0 or p.B <= 0:
        raise DomainError("induction_lhs needs M > 0 and B > 0")
    if not _f_defined(n, p.dm):
        raise DomainError(f"undefined at n={n} for d^m={p.dm}")
    dm = p.dm
    ln = math.log(n)
    ll = math.log(ln)
    rest = n - lambda_fn(n)
    lq = math.log(rest / dm)
    head = (math.log(p.M) + (dm - 1) * p.A + math.log(2)) * ln / (p.B * n * ll ** 2)
    return head + dm * ln ** 2 / (p.B * n * ll ** 2) + rest / n * ln / lq * (math.log(lq) / ll) ** 2


def lower_bound(t: float) -> float:
    """12^((t/2)^(log 3 / log 6)); valid from t = 2."""
    if t < 2:
        raise DomainError(f"lower_bound needs t >= 2, got {t}")
    return 12.0 ** ((t / 2) ** LOWER_EXPONENT)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def step_delta(delta: List[int]) -> Callable[[float], float]:
    """delta(x) as the running maximum of a measured sphere-count series (at least 1)."""
    running = list(np.maximum.accumulate(np.asarray(delta or [1], dtype=np.float64)))

    def at(x: float) -> float:
        i = min(max(int(math.floor(x)), 0), len(running) - 1)
        return max(running[i], 1.0)

    return at


def bounds_overlay(series, p: BoundParams, lam: float = 2.0, rate: float = 3.0) -> Dict[int, Dict[str, Any]]:
    """Per-n overlay columns for the growth CSV; blank where lam > n/2."""
    delta_at = step_delta(series.delta)
    out = {}
    for n in range(series.L + 1):
        row: Dict[str, Any] = {"upper_F": f"{F_upper(n, p):.6g}", "w_less": "", "w_greater": ""}
        if 0 < lam <= n / 2:
            row["w_less"] = f"{w_less_bound(n, lam, delta_at):.6g}"
            row["w_greater"] = f"{w_greater_bound(n, lam, p, rate):.6g}"
        out[n] = row
    return out


def f_samples(p: BoundParams, start: float, limit: float, count: int = 20) -> List[Dict[str, float]]:
    grid = np.geomspace(start, limit, count)
    return [{"n": float(x), "f": float(v)} for x, v in zip(grid, _f_array(grid, p.dm))]


def bounds_report(p: BoundParams, limit: float = 1e12, samples: int = FIND_N_SAMPLES) -> Dict[str, Any]:
    """{params, N, samples, violations}: N search, both codings of f and log-concavity of F."""
    result = find_N(p, limit, samples)
    violations: List[Dict[str, Any]] = []

    for row in f_samples(p, result.N, limit, 200):
        n = row["n"]
        other = f_lf_refactored(n, p)
        if abs(other - row["f"]) > 1e-12 * max(1.0, abs(row["f"])):
            violations.append({"check": "f-codings", "n": n, "f": row["f"], "refactored": other})

    grid = np.geomspace(C_THRESHOLD, 1e6, 2000)
    for n in grid:
        if log_F_second_derivative(float(n), p.B) > 0:
            violations.append({"check": "log-F-concavity", "n": float(n)})

    return {
        "params": p.to_dict(),
        "N": result.N,
        "search": result.to_dict(),
        "lower_exponent": LOWER_EXPONENT,
        "samples": f_samples(p, result.N, limit),
        "violations": violations,
    }
