"""Distance-bound witness via iterative subcode fixing.

Starting from the full code, each round picks the ell lowest-index
coordinates not yet forced to a constant, obtains a repair set for them from
``repair_fn``, and restricts to the subcode vanishing on that repair set
(for a linear code the zero value is a most-frequent choice on every
restriction, so each round is a shortening).  Fixing the repair set also
fixes the ell chosen coordinates, so every round freezes at most r + ell new
coordinates while cutting the subcode size by at most q^ell.  Counting rounds
yields the distance bound n - k + 1 - ell * floor((k - ell)/r): the trace
records enough to re-derive it and to run the final Singleton step on the
code punctured to the unfixed coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import floor

import numpy as np

from .code import LinearCode, min_distance_oracle, repair_set_check
from .errors import CoopLRCError
from .matrix import MatrixGF, mat_mul, null_space, rref


@dataclass
class WitnessTrace:
    """Round-by-round record of the subcode construction."""

    rounds: list  # dicts: chosen, repair_set, newly_fixed, a_j
    t: int
    fixed: list  # final set of frozen coordinates
    punctured_dim: int  # log_q of the surviving subcode size
    singleton_check: bool
    dmin_punctured: int | None = None
    details: dict = dc_field(default_factory=dict)


def _message_basis(code: LinearCode, constraints) -> MatrixGF:
    """Basis of messages whose codewords vanish on the constraint coords."""
    if not constraints:
        return MatrixGF.identity(code.field, code.k)
    sub = MatrixGF(code.field, code.G.data[:, sorted(constraints)].T)
    return null_space(sub)


def _zero_coords(code: LinearCode, basis: MatrixGF) -> set[int]:
    """Coordinates on which every codeword of the subcode is zero."""
    if basis.rows == 0:
        return set(range(code.n))
    sub_G = mat_mul(code.field, basis.data, code.G.data)
    return {j for j in range(code.n) if not np.any(sub_G[:, j])}


def subcode_witness(code: LinearCode, ell: int, repair_fn, r: int | None = None) -> WitnessTrace:
    """Run the iterative fixing loop and the closing Singleton check.

    ``repair_fn(S)`` must return a repair set for the coordinate set S
    (validated against the rank test).  ``r`` is the claimed locality used
    for the round-count check t >= floor((k - ell)/r); when omitted the check
    uses the largest repair set seen.
    """
    if not 1 <= ell < code.n:
        raise ValueError(f"ell must be in [1, n), got {ell}")
    f = code.field
    constraints: set[int] = set()
    basis = _message_basis(code, constraints)
    fixed = _zero_coords(code, basis)
    rounds = []
    max_repair = 0
    while basis.rows > ell:
        unfixed = [j for j in range(code.n) if j not in fixed]
        chosen = unfixed[:ell]
        gamma = sorted(set(repair_fn(chosen)))
        if not repair_set_check(code, chosen, gamma):
            raise CoopLRCError(f"repair_fn returned invalid repair set {gamma} for {chosen}")
        max_repair = max(max_repair, len(gamma))
        trial = constraints | set(gamma)
        new_basis = _message_basis(code, trial)
        if new_basis.rows == 0:
            # restricting to zero on all of gamma kills the subcode; keep a
            # maximal (lexicographically first) subset that leaves it alive
            kept: set[int] = set(constraints)
            for g in gamma:
                cand = kept | {g}
                if _message_basis(code, cand).rows >= 1:
                    kept = cand
            trial = kept
            new_basis = _message_basis(code, trial)
        constraints = trial
        basis = new_basis
        new_fixed = _zero_coords(code, basis)
        newly = sorted(new_fixed - fixed)
        rounds.append(
            {
                "chosen": list(chosen),
                "repair_set": gamma,
                "newly_fixed": newly,
                "a_j": len(newly),
            }
        )
        fixed = new_fixed
        if 1 <= basis.rows <= ell:
            break
    t = len(rounds)
    unfixed = [j for j in range(code.n) if j not in fixed]
    dim = basis.rows
    dmin_p = None
    singleton_ok = True
    if dim > 0 and unfixed:
        punct = mat_mul(f, basis.data, code.G.data)[:, unfixed]
        # reduce to an independent generator of the punctured subcode
        R, rk, _ = rref(MatrixGF(f, punct))
        if rk > 0:
            sub = LinearCode.from_generator(f, MatrixGF(f, R.data[:rk]))
            dmin_p = min_distance_oracle(sub)
            singleton_ok = dmin_p <= len(unfixed) - dim + 1
    r_eff = r if r is not None else max(max_repair, 1)
    details = {
        "t_lower_bound": floor((code.k - ell) / r_eff),
        "round_check": t >= floor((code.k - ell) / r_eff),
        "distance_bound": len(unfixed) - dim + 1 if unfixed else None,
    }
    return WitnessTrace(
        rounds=rounds,
        t=t,
        fixed=sorted(fixed),
        punctured_dim=dim,
        singleton_check=singleton_ok,
        dmin_punctured=dmin_p,
        details=details,
    )
