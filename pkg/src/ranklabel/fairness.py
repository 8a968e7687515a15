"""Statistical parity tests for rankings over a binary sensitive attribute.

Three measures, each yielding a verdict at significance level alpha:

* a prefix test that requires every prefix of the top-k to contain at least
  a binomially derived minimum number of protected members, run at an
  adjusted per-prefix level so the family-wise failure probability under a
  Bernoulli(p) generative model stays at alpha;
* a one-sample z-test comparing the protected proportion of the top-k
  against the population proportion p;
* a pairwise preference test: the probability that a protected member
  outranks a non-protected one, referred to its rank-sum null distribution.

Group membership is resolved against the dataset: a row is protected iff
its sensitive value equals the protected value; rows with a missing
sensitive value belong to neither group (the ranking pipeline drops them
up front, so they normally never reach these tests).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from scipy.special import bdtr

from .dataset import Dataset
from .errors import (
    DegeneratePopulation,
    EmptyGroup,
    InvalidArgument,
    NonBinaryAttribute,
)
from .scoring import Ranking

DEFAULT_ALPHA = 0.05
ADJUST_TOLERANCE = 1e-6

FA_IR = "fa_ir"
PROPORTION = "proportion"
PAIRWISE = "pairwise"

UNDER = "under"
OVER = "over"
NONE = "none"


@dataclass(frozen=True)
class ProtectedFeature:
    """One value of a binary sensitive attribute; its holders form the group."""

    attribute: str
    protected_value: str


@dataclass(frozen=True)
class FairnessConfig:
    """Shared test configuration.

    ``p`` overrides the protected proportion (estimated from retained rows
    when None); ``k`` is the prefix size, clamped to the ranking length.
    """

    alpha: float = DEFAULT_ALPHA
    p: Optional[float] = None
    k: int = 10

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise InvalidArgument("alpha must be in (0, 1)")
        if self.p is not None and not 0 < self.p < 1:
            raise InvalidArgument("p must be in (0, 1)")
        if self.k < 1:
            raise InvalidArgument("k must be >= 1")


@dataclass(frozen=True)
class FairnessResult:
    measure: str
    feature: ProtectedFeature
    statistic: float
    p_value: Optional[float]
    fair: bool
    direction: str
    details: dict


def binomial_cdf(t: int, n: int, p: float) -> float:
    """P[X <= t] for X ~ Binomial(n, p), via the regularized incomplete beta."""
    if n < 1:
        raise InvalidArgument("n must be >= 1")
    if not 0 <= t <= n:
        raise InvalidArgument("t must be in [0, n]")
    if not 0 < p < 1:
        raise InvalidArgument("p must be in (0, 1)")
    return float(bdtr(float(t), n, p))


def fair_min_table(k: int, p: float, alpha: float) -> list[int]:
    """Minimum protected counts m[1..k]: a prefix of length i passes iff it
    holds at least m[i] protected members.

    m[i] is the smallest t with P[Binomial(i, p) <= t] > alpha, so each
    individual prefix fails with probability at most alpha.
    """
    if k < 1:
        raise InvalidArgument("k must be >= 1")
    if not 0 < alpha < 1:
        raise InvalidArgument("alpha must be in (0, 1)")
    table = []
    t = 0
    for i in range(1, k + 1):
        while binomial_cdf(t, i, p) <= alpha:
            t += 1
        table.append(t)
    return table


def _prefix_fail_probability(table: list[int], p: float) -> float:
    """Probability that k iid Bernoulli(p) positions fail some prefix test.

    Dynamic program over (prefix length, protected count), dropping states
    that already failed; the fail probability is one minus the surviving mass.
    """
    survive = [1.0]
    for i, minimum in enumerate(table, start=1):
        nxt = [0.0] * (i + 1)
        for c, mass in enumerate(survive):
            if mass == 0.0:
                continue
            nxt[c + 1] += mass * p
            nxt[c] += mass * (1 - p)
        for c in range(min(minimum, i + 1)):
            nxt[c] = 0.0
        survive = nxt
    return 1.0 - math.fsum(survive)


def adjust_significance(
    k: int, p: float, alpha: float, tolerance: float = ADJUST_TOLERANCE
) -> float:
    """Largest per-prefix level alpha_c in (0, alpha] whose family of prefix
    tests fails a Bernoulli(p)-generated ranking with probability <= alpha.

    The fail probability g(a) is exact (dynamic program, no sampling) and
    nondecreasing in a, so a binary search to ``tolerance`` suffices. Since
    each prefix alone fails with probability <= a, g(a) <= k*a and the
    search bracket always closes above alpha/k.
    """
    if not 0 < alpha < 1:
        raise InvalidArgument("alpha must be in (0, 1)")
    if not 0 < p < 1:
        raise InvalidArgument("p must be in (0, 1)")
    if k < 1:
        raise InvalidArgument("k must be >= 1")

    def fails(a: float) -> float:
        return _prefix_fail_probability(fair_min_table(k, p, a), p)

    if fails(alpha) <= alpha:
        return alpha
    lo, hi = 0.0, alpha
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        if fails(mid) <= alpha:
            lo = mid
        else:
            hi = mid
    return lo


def _membership(dataset: Dataset, ranking: Ranking, feature: ProtectedFeature) -> list[bool]:
    """Protected flags aligned with ranking.order; checks the binary invariant."""
    col = dataset.categorical_column(feature.attribute)
    domain = sorted({v for v in col.values if v is not None})
    if len(domain) != 2:
        raise NonBinaryAttribute(
            f"attribute {feature.attribute!r} has {len(domain)} values, expected 2"
        )
    if feature.protected_value not in domain:
        raise InvalidArgument(
            f"value {feature.protected_value!r} not in attribute {feature.attribute!r}"
        )
    return [col.values[i] == feature.protected_value for i in ranking.order]


def _group_sizes(dataset: Dataset, ranking: Ranking, feature: ProtectedFeature) -> tuple[list[bool], int, int]:
    flags = _membership(dataset, ranking, feature)
    col = dataset.column(feature.attribute)
    n1 = sum(flags)
    n2 = sum(
        1
        for i in ranking.order
        if col.values[i] is not None and col.values[i] != feature.protected_value
    )
    if n1 == 0 or n2 == 0:
        raise EmptyGroup(
            f"both groups of {feature.attribute!r} must appear among retained rows"
        )
    return flags, n1, n2


def _resolve_p(config: FairnessConfig, n_protected: int, n_retained: int) -> tuple[float, str]:
    if config.p is not None:
        return config.p, "override"
    return n_protected / n_retained, "estimated"


def _normal_two_sided(z: float) -> float:
    return math.erfc(abs(z) / math.sqrt(2.0))


def fa_ir_test(
    ranking: Ranking,
    dataset: Dataset,
    feature: ProtectedFeature,
    config: FairnessConfig,
) -> FairnessResult:
    """Adjusted prefix test: fair iff every prefix i <= k holds at least
    m[i] protected members, with m computed at the adjusted level alpha_c.

    The statistic is the worst-prefix binomial CDF value, a diagnostic
    rather than a calibrated p-value (none is defined for the family), so
    ``p_value`` is None and the verdict comes from the prefix test itself.
    """
    flags, n1, _ = _group_sizes(dataset, ranking, feature)
    k = min(config.k, len(ranking))
    p_used, p_source = _resolve_p(config, n1, len(ranking))
    alpha_c = adjust_significance(k, p_used, config.alpha)
    table = fair_min_table(k, p_used, alpha_c)
    prefix_counts = []
    count = 0
    for i in range(k):
        count += flags[i]
        prefix_counts.append(count)
    first_failing = None
    for i, (tau, minimum) in enumerate(zip(prefix_counts, table), start=1):
        if tau < minimum:
            first_failing = i
            break
    fair = first_failing is None
    statistic = min(
        binomial_cdf(tau, i, p_used)
        for i, tau in enumerate(prefix_counts, start=1)
    )
    details = {
        "alpha_c": alpha_c,
        "min_counts": table,
        "protected_prefix_counts": prefix_counts,
        "first_failing_prefix": first_failing,
        "k": k,
        "p": p_used,
        "p_source": p_source,
        "cross_feature_correction": False,
    }
    return FairnessResult(
        measure=FA_IR,
        feature=feature,
        statistic=statistic,
        p_value=None,
        fair=fair,
        direction=NONE if fair else UNDER,
        details=details,
    )


def proportion_test(
    ranking: Ranking,
    dataset: Dataset,
    feature: ProtectedFeature,
    config: FairnessConfig,
) -> FairnessResult:
    """One-sample z-test of the top-k protected proportion against p."""
    flags, n1, _ = _group_sizes(dataset, ranking, feature)
    k = min(config.k, len(ranking))
    p_used, p_source = _resolve_p(config, n1, len(ranking))
    if not 0 < p_used < 1:
        raise DegeneratePopulation("population proportion must be in (0, 1)")
    p_hat = sum(flags[:k]) / k
    z = (p_hat - p_used) / math.sqrt(p_used * (1 - p_used) / k)
    p_value = _normal_two_sided(z)
    fair = p_value >= config.alpha
    if fair or p_hat == p_used:
        direction = NONE
    else:
        direction = UNDER if p_hat < p_used else OVER
    details = {
        "proportion_topk": p_hat,
        "z": z,
        "k": k,
        "p": p_used,
        "p_source": p_source,
    }
    return FairnessResult(
        measure=PROPORTION,
        feature=feature,
        statistic=p_hat,
        p_value=p_value,
        fair=fair,
        direction=direction,
        details=details,
    )


def pairwise_statistic(
    ranking: Ranking, dataset: Dataset, feature: ProtectedFeature
) -> float:
    """Fraction of (protected, non-protected) pairs where the protected member
    ranks strictly better. One pass over the order; equals full pair
    enumeration because the ranking is a total order.
    """
    flags, n1, n2 = _group_sizes(dataset, ranking, feature)
    col = dataset.column(feature.attribute)
    preferred = 0
    protected_seen = 0
    for idx, flag in zip(ranking.order, flags):
        if flag:
            protected_seen += 1
        elif col.values[idx] is not None:
            preferred += protected_seen
    return preferred / (n1 * n2)


def pairwise_test(
    ranking: Ranking,
    dataset: Dataset,
    feature: ProtectedFeature,
    config: FairnessConfig,
) -> FairnessResult:
    """Rank-sum test of the pairwise preference probability against 1/2.

    U is the count of protected-preferred pairs; under exchangeable ranks
    U has mean n1*n2/2 and variance n1*n2*(n1+n2+1)/12. The normal
    approximation is used without continuity correction.
    """
    _, n1, n2 = _group_sizes(dataset, ranking, feature)
    statistic = pairwise_statistic(ranking, dataset, feature)
    u = statistic * n1 * n2
    mean = n1 * n2 / 2.0
    sd = math.sqrt(n1 * n2 * (n1 + n2 + 1) / 12.0)
    z = (u - mean) / sd
    p_value = _normal_two_sided(z)
    fair = p_value >= config.alpha
    if fair or z == 0.0:
        direction = NONE
    else:
        direction = OVER if z > 0 else UNDER
    details = {
        "protected_count": n1,
        "non_protected_count": n2,
        "pairs_preferred": u,
        "u_mean": mean,
        "u_std": sd,
        "z": z,
        "continuity_correction": False,
    }
    return FairnessResult(
        measure=PAIRWISE,
        feature=feature,
        statistic=statistic,
        p_value=p_value,
        fair=fair,
        direction=direction,
        details=details,
    )


def fairness_suite(
    ranking: Ranking,
    dataset: Dataset,
    sensitive_attribute: str,
    config: FairnessConfig,
) -> list[FairnessResult]:
    """All three measures, with each of the attribute's two values treated in
    turn as the protected feature (six results).

    Values are ordered by first appearance in the column. The protected
    proportion is re-estimated per feature; a config.p override applies to
    the first value and 1-p to the second.
    """
    col = dataset.categorical_column(sensitive_attribute)
    values = []
    for v in col.values:
        if v is not None and v not in values:
            values.append(v)
    if len(values) != 2:
        raise NonBinaryAttribute(
            f"attribute {sensitive_attribute!r} has {len(values)} values, expected 2"
        )
    results = []
    for position, value in enumerate(values):
        if config.p is None:
            feature_config = config
        else:
            feature_config = replace(config, p=config.p if position == 0 else 1 - config.p)
        feature = ProtectedFeature(sensitive_attribute, value)
        results.append(fa_ir_test(ranking, dataset, feature, feature_config))
        results.append(proportion_test(ranking, dataset, feature, feature_config))
        results.append(pairwise_test(ranking, dataset, feature, feature_config))
    return results
