"""Eigenvalue counting and Weyl leading terms for flat tori and the round sphere."""

import csv
import math
from dataclasses import dataclass
from fractions import Fraction

from semiclab.lattice import count_in_ball


@dataclass(frozen=True)
class SpectrumModel:
    """tag "torus-n" (flat T^n, eigenvalues |k|^2 with shell multiplicity)
    or "sphere-2" (round S^2, eigenvalues l(l+1) with multiplicity 2l+1)."""

    tag: str
    dimension: int = 2

    def __post_init__(self):
        if self.tag not in ("torus-n", "sphere-2"):
            raise ValueError(f"unknown model tag {self.tag!r}")
        if self.tag == "sphere-2" and self.dimension != 2:
            raise ValueError("sphere-2 is two-dimensional")
        if self.dimension < 1:
            raise ValueError("need dimension >= 1")


def counting_function(model, lam):
    """N(lam): eigenvalues (with multiplicity) whose square root is <= lam; exact."""
    if lam < 0:
        raise ValueError("need lam >= 0")
    if model.tag == "torus-n":
        return count_in_ball(lam, model.dimension)
    # sphere: largest L with L(L+1) <= lam^2, compared exactly; count is (L+1)^2
    lam2 = Fraction(lam) ** 2
    L = int(math.isqrt(math.floor(lam2)))
    while (L + 1) * (L + 2) <= lam2:
        L += 1
    while L * (L + 1) > lam2:
        L -= 1
    return (L + 1) ** 2


def weyl_leading_term(model, lam):
    """Leading Weyl term: volume of the unit n-ball times lam^n (torus), lam^2 (sphere)."""
    if lam <= 0:
        raise ValueError("need lam > 0")
    if model.tag == "torus-n":
        n = model.dimension
        unit_ball = math.pi ** (n / 2) / math.gamma(n / 2 + 1)
        return unit_ball * lam**n
    return lam * lam


def weyl_table(model, lams):
    """Rows (lam, exact count, leading term, remainder) for a grid of lam values."""
    rows = []
    for lam in lams:
        nc = counting_function(model, lam)
        lead = weyl_leading_term(model, lam)
        rows.append((lam, nc, lead, nc - lead))
    return rows


def write_weyl_csv(path, model, lams):
    rows = weyl_table(model, lams)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["lambda", "count", "leading", "remainder"])
        for lam, nc, lead, rem in rows:
            w.writerow([repr(float(lam)), nc, repr(lead), repr(rem)])
    return rows
