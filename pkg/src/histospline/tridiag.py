"""Tridiagonal systems and the Thomas (LU without pivoting) solver.

All systems assembled in this package are diagonally dominant by
construction, which is what makes elimination without pivoting safe; the
solver checks the property instead of assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotDominantError, ZeroPivotError

#: slack allowed when checking |diag| >= |sub| + |sup| (weak dominance is fine)
DOMINANCE_TOL = 1e-14


@dataclass(frozen=True)
class TridiagonalSystem:
    """System with n+1 unknowns: sub/sup hold the n off-diagonal entries.

    Row j reads  sub[j-1]*x[j-1] + diag[j]*x[j] + sup[j]*x[j+1] = rhs[j],
    with the sub/sup terms absent on the first/last row.
    """

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        for name in ("sub", "diag", "sup", "rhs"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        n = len(self.diag)
        if len(self.rhs) != n or len(self.sub) != n - 1 or len(self.sup) != n - 1:
            raise ValueError(
                f"inconsistent lengths: diag/rhs must be n+1={n}, sub/sup n={n - 1}")

    @property
    def size(self) -> int:
        return len(self.diag)

    def dominance_margins(self) -> np.ndarray:
        """|diag| - |sub| - |sup| per row (zero entries for missing couplings)."""
        off = np.zeros_like(self.diag)
        off[1:] += np.abs(self.sub)
        off[:-1] += np.abs(self.sup)
        return np.abs(self.diag) - off

    def matvec(self, x: np.ndarray) -> np.ndarray:
        y = self.diag * x
        y[1:] += self.sub * x[:-1]
        y[:-1] += self.sup * x[1:]
        return y

    def dense(self) -> np.ndarray:
        a = np.diag(self.diag)
        a += np.diag(self.sub, -1)
        a += np.diag(self.sup, 1)
        return a


def solve(system: TridiagonalSystem) -> np.ndarray:
    """Solve by forward elimination / back substitution (no pivoting).

    Raises NotDominantError when a row violates weak diagonal dominance by
    more than DOMINANCE_TOL (relative to the row's magnitude) -- for the
    systems built here that signals a caller bug -- and ZeroPivotError when
    elimination produces a vanishing pivot.
    """
    margins = system.dominance_margins()
    scale = np.maximum(1.0, np.abs(system.diag))
    if np.any(margins < -DOMINANCE_TOL * scale):
        row = int(np.argmin(margins / scale))
        raise NotDominantError(
            f"row {row} violates diagonal dominance (margin {margins[row]:.3e})")

    sub, diag, sup, rhs = system.sub, system.diag, system.sup, system.rhs
    n = system.size
    cp = np.empty(n - 1)
    dp = np.empty(n)
    if diag[0] == 0.0:
        raise ZeroPivotError("zero pivot on row 0")
    cp[0] = sup[0] / diag[0]
    dp[0] = rhs[0] / diag[0]
    for j in range(1, n):
        den = diag[j] - sub[j - 1] * cp[j - 1]
        if den == 0.0:
            raise ZeroPivotError(f"zero pivot on row {j}")
        if j < n - 1:
            cp[j] = sup[j] / den
        dp[j] = (rhs[j] - sub[j - 1] * dp[j - 1]) / den
    x = np.empty(n)
    x[-1] = dp[-1]
    for j in range(n - 2, -1, -1):
        x[j] = dp[j] - cp[j] * x[j + 1]
    return x
