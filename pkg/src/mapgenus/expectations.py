"""Exact and asymptotic expectation formulas for the configuration model.

Closed forms for the number of configurations, the probability that a
configuration contains a fixed edge set, expected k-cycle counts, the
normalized cycle weights a_k, and the lower/upper bound sums for the expected
face count of a random oriented map.

Scalar functions evaluate falling factorials and gamma ratios as explicit
products (with binary-exponent renormalization where magnitudes demand it),
which keeps them accurate to ~k ulps; the large-n bound sums go through
vectorized log-gamma instead.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln

_PRODUCT_CUTOFF = 100_000  # largest l evaluated by explicit product
_SUM_CHUNK = 65_536
_SUM_RTOL = 1e-15


def log_gamma(x: float) -> float:
    """log(Gamma(x)) for x > 0."""
    if x <= 0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


class ConfigurationCount(NamedTuple):
    log: float
    exact: int | None  # provided for m <= 20


def configuration_count(m: int) -> ConfigurationCount:
    """Number of configurations on 2m darts: (2m-1)!! = (2m)! / (2^m m!)."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    log = log_gamma(2 * m + 1) - m * math.log(2) - log_gamma(m + 1)
    exact = None
    if m <= 20:
        exact = math.factorial(2 * m) // (2**m * math.factorial(m))
    return ConfigurationCount(log, exact)


def edge_set_probability(m: int, l: int) -> float:
    """Probability that a configuration on m edges contains l given disjoint
    pairs: 1 / ((2m-1)(2m-3)...(2m-2l+1)).

    Explicit product for l up to 100000, log-gamma form beyond; may underflow
    to 0.0 when the true value is below float range.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if not 0 <= l <= m:
        raise ValueError(f"need 0 <= l <= m, got l={l}, m={m}")
    if l <= _PRODUCT_CUTOFF:
        p = 1.0
        for i in range(l):
            p /= 2 * m - 2 * i - 1
        return p
    return math.exp(-l * math.log(2) + math.lgamma(m - l + 0.5) - math.lgamma(m + 0.5))


def potential_cycle_count(n: int, d: int, k: int) -> int:
    """Number of dart-pair sets that can form a k-cycle:
    (1/2k) * n!/(n-k)! * (d(d-1))^k, an exact integer."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if d < 3:
        raise ValueError(f"need d >= 3, got {d}")
    if k > n:
        return 0
    falling = 1
    for i in range(k):
        falling *= n - i
    num = falling * (d * (d - 1)) ** k
    assert num % (2 * k) == 0
    return num // (2 * k)


def _scaled_product(factors) -> tuple[float, int]:
    """Product of floats as (mantissa, base-2 exponent), immune to overflow."""
    mant, exp = 1.0, 0
    for f in factors:
        mant *= f
        if mant != 0.0 and not 2.0**-512 < abs(mant) < 2.0**512:
            mant, e = math.frexp(mant)
            exp += e
    return mant, exp


def a_k_exact(n: int, d: int, k: int) -> float:
    """The weight a_k = (d/2)^k * n!/(n-k)! * Gamma(m-k+1/2)/Gamma(m+1/2),
    with m = nd/2; satisfies a_k = 2k E(X_k) / (d-1)^k and a_0 = 1."""
    if d < 3:
        raise ValueError(f"need d >= 3, got {d}")
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    if k > n:
        return 0.0
    # a_k = prod_{i<k} (d/2)(n-i) / (m-i-1/2); every factor is near 1
    m2 = n * d  # 2m
    a = 1.0
    for i in range(k):
        a *= d * (n - i) / (m2 - 2 * i - 1)
    return a


def a_k_asymptotic(n: int, d: int, k: int) -> float:
    """Gaussian approximation exp(-(d-2) k^2 / (2nd)), valid for k = o(n^(2/3))."""
    if d < 3:
        raise ValueError(f"need d >= 3, got {d}")
    return math.exp(-(d - 2) * k * k / (2.0 * n * d))


def expected_k_cycles_exact(n: int, d: int, k: int) -> float:
    """Expected number of k-cycles of a uniform configuration:
    E(X_k) = a_k (d-1)^k / (2k). Returns 0.0 for k > n, inf past float range."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if d < 3:
        raise ValueError(f"need d >= 3, got {d}")
    if k > n:
        return 0.0
    m2 = n * d
    mant, exp = _scaled_product(
        d * (d - 1) * (n - i) / (m2 - 2 * i - 1) for i in range(k)
    )
    try:
        return math.ldexp(mant / (2 * k), exp)
    except OverflowError:
        return math.inf


def _log_a_k_array(n: int, d: int, ks: np.ndarray) -> np.ndarray:
    """log a_k for an array of k values, via vectorized log-gamma."""
    m = n * d / 2.0
    ks = ks.astype(np.float64)
    return (
        ks * math.log(d / 2.0)
        + gammaln(n + 1.0)
        - gammaln(n + 1.0 - ks)
        + gammaln(m + 0.5 - ks)
        - gammaln(m + 0.5)
    )


def lower_bound_sum(n: int, d: int) -> float:
    """The simple-face lower bound on the expected face count:
    sum_{k=3}^{min(m,n)} a_k / k, asymptotically (log m)/2 for d = 3."""
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    if d < 3:
        raise ValueError(f"need d >= 3, got {d}")
    k_top = min(n * d // 2, n)
    total = 0.0
    for lo in range(3, k_top + 1, _SUM_CHUNK):
        ks = np.arange(lo, min(lo + _SUM_CHUNK, k_top + 1))
        terms = np.exp(_log_a_k_array(n, d, ks)) / ks
        total += float(terms.sum())
        if terms.max() < _SUM_RTOL * total:
            break
    return total


@dataclass(frozen=True)
class SmallFaceBound:
    """Upper-bound pieces for the expected face count."""

    small_face_sum: float   # sum_{k=3}^{ceil(sqrt(m))} (k+1)/(d-1)^k E(X_k)
    large_face_bound: float  # 3 sqrt(n): every face longer than sqrt(n) shares 3n dart sides
    gaussian_cap: float      # sqrt(nd) * sqrt(pi/2), analytic cap on sum a_k

    @property
    def total(self) -> float:
        return self.small_face_sum + self.large_face_bound


def small_face_upper_bound(n: int, d: int) -> SmallFaceBound:
    """Root-counting upper bound on the expected number of short faces,
    (1/2) sum a_k + (1/2) sum a_k/k over 3 <= k <= ceil(sqrt(m)), plus the
    3 sqrt(n) cap on the number of long faces."""
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    if d < 3:
        raise ValueError(f"need d >= 3, got {d}")
    m = n * d // 2
    k_top = min(math.ceil(math.sqrt(m)), n)
    ks = np.arange(3, k_top + 1)
    if ks.size:
        a = np.exp(_log_a_k_array(n, d, ks))
        small = float(0.5 * a.sum() + 0.5 * (a / ks).sum())
    else:
        small = 0.0
    return SmallFaceBound(
        small_face_sum=small,
        large_face_bound=3.0 * math.sqrt(n),
        gaussian_cap=math.sqrt(n * d) * math.sqrt(math.pi / 2.0),
    )


def simple_probability_asymptotic(d: int) -> float:
    """Limiting probability that a configuration is simple: exp((1-d^2)/4)."""
    if d < 3:
        raise ValueError(f"need d >= 3, got {d}")
    return math.exp((1 - d * d) / 4.0)


@dataclass(frozen=True)
class ExpectationTable:
    """Row-per-k table of exact and asymptotic cycle expectations, with the
    derived face-count bound scalars for the same (n, d)."""

    n: int
    d: int
    m: int
    ks: tuple[int, ...]
    e_xk_exact: tuple[float, ...]
    a_k_exact: tuple[float, ...]
    a_k_asymptotic: tuple[float, ...]
    lower_bound_sum: float
    small_face_upper_bound: float
    large_face_bound: float
    p_simple_asymptotic: float

    def to_csv(self) -> str:
        lines = ["k,E_Xk_exact,a_k_exact,a_k_asymptotic"]
        for k, e, a, aa in zip(self.ks, self.e_xk_exact, self.a_k_exact, self.a_k_asymptotic):
            lines.append(f"{k},{e:.17g},{a:.17g},{aa:.17g}")
        lines.append("")
        lines.append(f"lower_bound_sum,{self.lower_bound_sum:.17g}")
        lines.append(f"small_face_upper_bound,{self.small_face_upper_bound:.17g}")
        lines.append(f"large_face_bound,{self.large_face_bound:.17g}")
        lines.append(f"p_simple_asymptotic,{self.p_simple_asymptotic:.17g}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "m": self.m,
            "rows": [
                {"k": k, "E_Xk_exact": e, "a_k_exact": a, "a_k_asymptotic": aa}
                for k, e, a, aa in zip(
                    self.ks, self.e_xk_exact, self.a_k_exact, self.a_k_asymptotic
                )
            ],
            "scalars": {
                "lower_bound_sum": self.lower_bound_sum,
                "small_face_upper_bound": self.small_face_upper_bound,
                "large_face_bound": self.large_face_bound,
                "p_simple_asymptotic": self.p_simple_asymptotic,
            },
        }


def expectation_table(n: int, d: int, k_max: int) -> ExpectationTable:
    if k_max < 1:
        raise ValueError(f"need k_max >= 1, got {k_max}")
    ks = tuple(range(1, k_max + 1))
    bound = small_face_upper_bound(n, d) if n >= 4 else None
    return ExpectationTable(
        n=n,
        d=d,
        m=n * d // 2,
        ks=ks,
        e_xk_exact=tuple(expected_k_cycles_exact(n, d, k) for k in ks),
        a_k_exact=tuple(a_k_exact(n, d, k) for k in ks),
        a_k_asymptotic=tuple(a_k_asymptotic(n, d, k) for k in ks),
        lower_bound_sum=lower_bound_sum(n, d) if n >= 4 else math.nan,
        small_face_upper_bound=bound.small_face_sum if bound else math.nan,
        large_face_bound=bound.large_face_bound if bound else math.nan,
        p_simple_asymptotic=simple_probability_asymptotic(d),
    )
