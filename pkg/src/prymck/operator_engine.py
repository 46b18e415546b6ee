"""Index-shift operator calculus for the Pfaffian entry series.

Matrix entries are built by letting series of commuting index-raising
operators act on products of two one-variable classes. Writing T_i for the
operator raising the index of the first factor and R = T_i / T_j for the
paired raise/lower, each entry is

    interaction(R, T_i) * prefactor(T_i) * prefactor(T_j) * d(base_i) d(base_j)

where the prefactor attached to one index with exponent s is

    (1 - beta*T)^s / (2 - beta*T)

and the pairwise interaction is

    (1 - R) / (1 + R - beta*T_i).

Both series are expanded here into shift monomials with exact rational (or
beta-polynomial) coefficients, truncated by the total degree cap of the
target ring. Three coefficient modes are supported: the two anchored
specializations beta = 0 and beta = -1, whose expansions are written
directly in their classical forms, and a symbolic mode that keeps beta as
a polynomial variable. The symbolic mode uses the same plain-T convention
as the specializations (no index-dependent sign twist on T); outputs built
from it are flagged as using the engine convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_arith import abel_coefficient, binom_gen, factorial
from .series_ring import BetaPoly, ThetaPoly

__all__ = [
    "SYMBOLIC",
    "ShiftMonomial",
    "ShiftOperatorPoly",
    "apply_pair_operator",
    "interaction_expansion",
    "prefactor_expansion",
]

SYMBOLIC = "symbolic"
_BETA_MODES = (0, -1, SYMBOLIC)


def _check_mode(beta_mode):
    if beta_mode not in _BETA_MODES:
        raise ValueError(f"beta_mode must be one of {_BETA_MODES}, got {beta_mode!r}")


@dataclass(frozen=True)
class ShiftMonomial:
    """coeff * T_i^raise_i * T_j^(-lower_j): total raise on i, lowering on j."""

    coeff: object  # Fraction, or BetaPoly in symbolic mode
    raise_i: int
    lower_j: int


@dataclass(frozen=True)
class ShiftOperatorPoly:
    """Formal sum of shift monomials; at most one term per (raise, lower) pair."""

    terms: tuple

    def __post_init__(self):
        seen = set()
        for t in self.terms:
            key = (t.raise_i, t.lower_j)
            if key in seen:
                raise ValueError(f"ShiftOperatorPoly: duplicate term at {key}")
            seen.add(key)

    def coefficient(self, raise_i: int, lower_j: int):
        for t in self.terms:
            if t.raise_i == raise_i and t.lower_j == lower_j:
                return t.coeff
        return 0


@lru_cache(maxsize=None)
def prefactor_expansion(s: int, cap: int, beta_mode) -> tuple:
    """T^0..T^cap coefficients of (1 - beta*T)^s / (2 - beta*T).

    At beta = -1 the v-th coefficient is abel_coefficient(s, v); at beta = 0
    only the constant 1/2 survives; in symbolic mode the v-th coefficient is
    beta^v times sum_{j=0}^{v} (-1)^j binom_gen(s, j) / 2^(v+1-j).
    """
    _check_mode(beta_mode)
    if cap < 0:
        raise ValueError(f"prefactor_expansion: cap must be nonnegative, got {cap}")
    if beta_mode == 0:
        return (Fraction(1, 2),) + (Fraction(0),) * cap
    if beta_mode == -1:
        return tuple(abel_coefficient(s, v) for v in range(cap + 1))
    out = []
    for v in range(cap + 1):
        c = Fraction(0)
        for j in range(v + 1):
            term = Fraction(binom_gen(s, j), 2 ** (v + 1 - j))
            c += -term if j % 2 else term
        out.append(BetaPoly({v: c}))
    return tuple(out)


@lru_cache(maxsize=None)
def interaction_expansion(cap: int, beta_mode) -> ShiftOperatorPoly:
    """Shift-monomial expansion of (1 - R) / (1 + R - beta*T_i).

    Writing a for the total raise on the first index and b for the lowering
    on the second (b <= a; other coefficients vanish), the general
    coefficient is

        (-1)^b * (binom(a, b) + binom(a-1, b-1)) * beta^(a-b)

    with the binom(a-1, b-1) term absent at b = 0. At beta = -1 this is the
    alternating classical unfolding; at beta = 0 only the diagonal a == b
    survives: 1 at (0, 0) and 2*(-1)^a at (a, a).
    """
    _check_mode(beta_mode)
    if cap < 0:
        raise ValueError(f"interaction_expansion: cap must be nonnegative, got {cap}")
    terms = []
    for a in range(cap + 1):
        for b in range(a + 1):
            base = binom_gen(a, b)
            if b >= 1:
                base += binom_gen(a - 1, b - 1)
            if base == 0:
                continue
            if beta_mode == 0:
                if a != b:
                    continue
                coeff = Fraction(base if a % 2 == 0 else -base)
            elif beta_mode == -1:
                coeff = Fraction(base if a % 2 == 0 else -base)
            else:
                coeff = BetaPoly({a - b: Fraction(base if b % 2 == 0 else -base)})
            terms.append(ShiftMonomial(coeff, a, b))
    return ShiftOperatorPoly(tuple(terms))


def apply_pair_operator(op: ShiftOperatorPoly, base, prefactors_i, prefactors_j, cap: int) -> ThetaPoly:
    """Act with the operator and both prefactor series on d(base_i) d(base_j).

    base is the pair of starting indices. Each combination of prefactor
    shifts (v_i, v_j) and an operator term contributes

        pre_i[v_i] * pre_j[v_j] * coeff * d(base_i + v_i + raise) * d(base_j + v_j - lower)

    where shifted second indices below zero contribute exactly 0 and total
    degrees above the cap are discarded.
    """
    li, lj = base
    if li < 0 or lj < 0:
        raise ValueError(f"apply_pair_operator: negative base indices ({li}, {lj})")
    out = [0] * (cap + 1)
    for vi, pi in enumerate(prefactors_i):
        if vi > cap or not pi:
            continue
        for vj, pj in enumerate(prefactors_j):
            if vj > cap or not pj:
                continue
            pij = pi * pj
            for t in op.terms:
                ii = li + vi + t.raise_i
                jj = lj + vj - t.lower_j
                if jj < 0:
                    continue
                d = ii + jj
                if d > cap:
                    continue
                out[d] = out[d] + pij * t.coeff * Fraction(1, factorial(ii) * factorial(jj))
    return ThetaPoly(cap, out)
