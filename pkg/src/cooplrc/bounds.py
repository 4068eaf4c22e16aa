"""Parameter bounds for codes with cooperative locality.

Given (n, k, r, ell), a code whose every ell erasures are repairable from at
most r other symbols obeys:

* minimum distance d <= n - k + 1 - ell * floor((k - ell) / r), and when
  r >= ell the sharper d <= n - k + 1 - ell * (ceil(k / r) - 1);
* rate k/n <= r/(r + ell) + ell^2/(r n), and k/n <= r/(r + ell) when
  r >= ell;
* an alphabet-dependent dimension bound
  k <= min_t [r t + log_q A_q(n - t(r + ell), d)], reported here with A_q
  replaced by its Singleton upper bound q^(n' - d + 1), which makes the
  result alphabet-free but weaker (flagged as advisory).

Rates are exact rationals (fractions.Fraction); no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor


@dataclass
class BoundReport:
    """Distance/rate/dimension bounds implied by (r, ell)-cooperative locality."""

    n: int
    k: int
    r: int
    ell: int
    dmin_bound_general: int
    dmin_bound_r_ge_ell: int | None
    rate_bound_general: Fraction
    rate_bound_r_ge_ell: Fraction | None
    alphabet_bound_k: int
    alphabet_bound_advisory: bool = True


def dmin_bound(n: int, k: int, r: int, ell: int, d: int | None = None) -> BoundReport:
    """Evaluate all parameter bounds for an (n, k) code with (r, ell) locality.

    ``d`` is the distance plugged into the alphabet-dependent k-bound; it
    defaults to the best distance bound computed here (self-consistent).
    """
    if not 0 < k <= n:
        raise ValueError(f"need 0 < k <= n, got k={k}, n={n}")
    if r < 1 or ell < 1:
        raise ValueError(f"need r >= 1 and ell >= 1, got r={r}, ell={ell}")
    d_general = n - k + 1 - ell * floor((k - ell) / r)
    d_strong = None
    if r >= ell:
        d_strong = n - k + 1 - ell * (ceil(k / r) - 1)
    rate_general = Fraction(r, r + ell) + Fraction(ell * ell, r * n)
    rate_strong = Fraction(r, r + ell) if r >= ell else None
    if d is None:
        d = d_general if d_strong is None else min(d_general, d_strong)
    # k <= r t + (n - t(r + ell) - d + 1) over t >= 0 while the shortened
    # length n - t(r + ell) still accommodates distance d
    best = None
    t = 0
    while n - t * (r + ell) - d + 1 >= 0:
        val = r * t + (n - t * (r + ell) - d + 1)
        if best is None or val < best:
            best = val
        t += 1
    if best is None:
        best = k  # d exceeds n + 1: bound vacuous
    return BoundReport(
        n=n,
        k=k,
        r=r,
        ell=ell,
        dmin_bound_general=d_general,
        dmin_bound_r_ge_ell=d_strong,
        rate_bound_general=rate_general,
        rate_bound_r_ge_ell=rate_strong,
        alphabet_bound_k=best,
        alphabet_bound_advisory=True,
    )
