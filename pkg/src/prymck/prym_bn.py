"""Pointed Brill-Noether loci on Prym varieties.

A problem is the genus g of the base curve together with a strictly
increasing vanishing sequence a at the marked point of the double cover.
Reading a backwards and dropping a zero entry gives a strict partition; its
size is the expected codimension of the locus inside the Prym variety,
whose dimension is g - 1.

Class computations:

* chow_class_closed / chow_class_pfaffian give the rational multiple gamma
  of (2*xi)^|lambda| expressing the cohomology class, by a closed product
  and by a Pfaffian of binomial sums; the routes must agree exactly.
* ch_k_class gives the Chern character expansion of the structure-sheaf
  class as a polynomial in the restricted theta class theta' = 2*xi,
  truncated at degree g - 1.
* ck_class interpolates both through the connective deformation parameter
  (0 recovers the cohomology class, -1 the Chern character route).

The holomorphic Euler characteristic is computed by two independent
routes. euler_oracle integrates the top coefficient of ch_k_class against
the theta polarization. euler_theorem evaluates the closed summation
formula over shift sequences, permutations and degree distributions; only
terms whose total degree equals g - 1 survive integration, and the
divergent alternating prefactor sums are taken in Abel-summed form. The
two routes must agree exactly, which the test suite and the command line
verification switch enforce.

Problems whose codimension exceeds g - 1 are computed rather than
rejected: every route consistently returns 0 for them, and the problem
record carries an expected_empty flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import comb

from .exact_arith import abel_coefficient, factorial
from .operator_engine import (
    SYMBOLIC,
    apply_pair_operator,
    interaction_expansion,
    prefactor_expansion,
)
from .pfaffian import SkewMatrix, augment_odd, perm_sign, pfaffian_matchings
from .series_ring import ThetaPoly, d_value

__all__ = [
    "ClassResult",
    "GTable",
    "PrymProblem",
    "ValidationError",
    "build_problem",
    "ch_k_class",
    "chow_class_closed",
    "chow_class_pfaffian",
    "ck_class",
    "class_result",
    "classical_coefficient",
    "enumerate_f",
    "euler_oracle",
    "euler_theorem",
    "g_coeff",
    "problem_from_partition",
    "strict_partitions",
]


class ValidationError(ValueError):
    """Input data violates an admissibility bound."""


@dataclass(frozen=True)
class PrymProblem:
    """Validated problem record with all derived partition data."""

    g: int
    r: int
    a: tuple
    lam: tuple  # nonzero parts, strictly decreasing
    ell: int  # number of nonzero parts
    s: tuple  # shift exponents, one per nonzero part
    dim_prym: int  # g - 1
    parity: str  # "+" for odd r, "-" for even r
    expected_empty: bool  # codim exceeds dim_prym

    @property
    def codim(self) -> int:
        return sum(self.lam)

    @property
    def rho(self) -> int:
        """Expected dimension of the locus (may be negative)."""
        return self.dim_prym - self.codim


def build_problem(g: int, r: int, a) -> PrymProblem:
    """Validate (g, r, a) and derive the partition data.

    Bounds: g >= 2, r >= 0, a has r + 1 entries with
    0 <= a_0 < a_1 < ... < a_r <= 2g - 2.
    """
    g = int(g)
    r = int(r)
    a = tuple(int(x) for x in a)
    if g < 2:
        raise ValidationError(f"genus must be at least 2 (got g={g})")
    if r < 0:
        raise ValidationError(f"r must be nonnegative (got r={r})")
    if len(a) != r + 1:
        raise ValidationError(
            f"vanishing sequence must have r+1={r + 1} entries (got {len(a)})"
        )
    if a[0] < 0:
        raise ValidationError(f"a_0 must be nonnegative (got {a[0]})")
    if any(a[i] >= a[i + 1] for i in range(r)):
        raise ValidationError("vanishing sequence must be strictly increasing")
    if a[-1] > 2 * g - 2:
        raise ValidationError(f"a_r exceeds 2g-2 (a_r={a[-1]}, 2g-2={2 * g - 2})")
    lam = tuple(p for p in reversed(a) if p > 0)
    ell = len(lam)
    s = tuple(ell - i - lam[i] for i in range(ell))
    return PrymProblem(
        g=g,
        r=r,
        a=a,
        lam=lam,
        ell=ell,
        s=s,
        dim_prym=g - 1,
        parity="+" if r % 2 else "-",
        expected_empty=sum(lam) > g - 1,
    )


def problem_from_partition(g: int, lam) -> PrymProblem:
    """Problem for a strict partition, using the minimal vanishing sequence.

    The empty partition maps to a = (0,); otherwise a lists the parts in
    increasing order with r = len(lam) - 1.
    """
    lam = tuple(lam)
    if not lam:
        return build_problem(g, 0, (0,))
    a = tuple(sorted(lam))
    return build_problem(g, len(a) - 1, a)


def strict_partitions(max_size: int, max_len: int, max_part: int):
    """All strict partitions with sum <= max_size, length <= max_len and
    parts <= max_part, the empty partition included; sorted by (sum, parts).
    """
    acc = [()]

    def extend(prefix, total):
        last = prefix[-1] if prefix else max_part + 1
        for p in range(min(last - 1, max_size - total, max_part), 0, -1):
            cur = prefix + (p,)
            acc.append(cur)
            if len(cur) < max_len:
                extend(cur, total + p)

    if max_len > 0:
        extend((), 0)
    acc.sort(key=lambda t: (sum(t), t))
    return acc


def _validated_strict(lam) -> tuple:
    lam = tuple(int(p) for p in lam)
    if any(p <= 0 for p in lam):
        raise ValueError(f"partition parts must be positive, got {lam}")
    if any(lam[i] <= lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"partition must be strictly decreasing, got {lam}")
    return lam


def chow_class_closed(lam) -> Fraction:
    """Coefficient gamma of the cohomology class gamma * (2*xi)^|lambda|.

    Closed product form: (1/2^l) * prod 1/part! * prod_{i<j} (pi-pj)/(pi+pj).
    """
    lam = _validated_strict(lam)
    gamma = Fraction(1, 2 ** len(lam))
    for p in lam:
        gamma /= factorial(p)
    for i, pi in enumerate(lam):
        for pj in lam[i + 1 :]:
            gamma *= Fraction(pi - pj, pi + pj)
    return gamma


def chow_class_pfaffian(lam) -> Fraction:
    """Same coefficient gamma, by the Pfaffian of binomial-sum entries.

    The (i, j) entry is (1/4) / (pi+pj)! times
    binom(pi+pj, pi) + 2 * sum_{u=1}^{pj} (-1)^u binom(pi+pj, pi+u);
    for an odd number of parts the matrix is augmented with the boundary
    row (1/2) / pj! (the single prefactor contributes the extra 1/2).
    Must equal chow_class_closed.
    """
    lam = _validated_strict(lam)
    ell = len(lam)
    if ell == 0:
        return Fraction(1)

    def entry(i, j):
        pi, pj = lam[i], lam[j]
        tail = sum((-1) ** u * comb(pi + pj, pi + u) for u in range(1, pj + 1))
        return Fraction(comb(pi + pj, pi) + 2 * tail, 4 * factorial(pi + pj))

    m = SkewMatrix.from_upper(ell, entry)
    if ell % 2:
        m = augment_odd(m, [Fraction(1, 2 * factorial(p)) for p in lam])
    return pfaffian_matchings(m)


def _boundary_entry(lj: int, prefactors, cap: int) -> ThetaPoly:
    acc = ThetaPoly.zero(cap)
    for v, c in enumerate(prefactors):
        if c and lj + v <= cap:
            acc = acc + d_value(lj + v, cap) * c
    return acc


def _class_pfaffian(problem: PrymProblem, beta_mode) -> ThetaPoly:
    cap = problem.g - 1
    ell = problem.ell
    if ell == 0:
        return ThetaPoly.one(cap)
    lam, s = problem.lam, problem.s
    pre = [prefactor_expansion(s[i], cap, beta_mode) for i in range(ell)]
    inter = interaction_expansion(cap, beta_mode)

    def entry(i, j):
        return apply_pair_operator(inter, (lam[i], lam[j]), pre[i], pre[j], cap)

    m = SkewMatrix.from_upper(ell, entry)
    if ell % 2:
        m = augment_odd(m, [_boundary_entry(lam[j], pre[j], cap) for j in range(ell)])
    return pfaffian_matchings(m)


def ck_class(problem: PrymProblem, beta_mode) -> ThetaPoly:
    """Connective class as a truncated theta' polynomial.

    beta_mode 0 gives the cohomology class (a single monomial of degree
    |lambda|), -1 the Chern character expansion; "symbolic" keeps the
    parameter as a polynomial variable in every coefficient. Symbolic
    output uses the engine convention and is flagged as such downstream.
    """
    return _class_pfaffian(problem, beta_mode)


def ch_k_class(problem: PrymProblem) -> ThetaPoly:
    """Chern character of the structure-sheaf class, truncated at g - 1.

    The lowest-degree coefficient (degree |lambda|) equals
    chow_class_closed(lam); problems with |lambda| > g - 1 give 0.
    """
    return _class_pfaffian(problem, -1)


def euler_oracle(problem: PrymProblem) -> Fraction:
    """Euler characteristic by integrating the expanded class.

    The integral of theta'^(g-1) = (2*xi)^(g-1) over the (g-1)-dimensional
    Prym variety is 2^(g-1) * (g-1)!, so only the top coefficient of
    ch_k_class contributes.
    """
    cap = problem.g - 1
    top = ch_k_class(problem).coeff(cap)
    return top * Fraction(2**cap * factorial(cap))


def g_coeff(m: int, i: int, j: int, lam, v) -> Fraction:
    """Degree-m coefficient of the pair expansion for indices (i, j).

    Indices are 1-based into the partition, with 0 the boundary index used
    for an odd number of parts. Antisymmetric in (i, j); boundary row has
    1/(lam_j + v_j)! at m = 0 and 0 for m > 0. Terms whose lowered index
    would drop below zero are 0, so the inner sum runs to lam_j + v_j.
    """
    lam = tuple(lam)
    v = tuple(v)
    ell = len(lam)
    if len(v) != ell:
        raise ValueError(f"g_coeff: shift sequence has length {len(v)}, expected {ell}")
    if m < 0:
        raise ValueError(f"g_coeff: m must be nonnegative, got {m}")
    if not (0 <= i <= ell and 0 <= j <= ell):
        raise ValueError(f"g_coeff: indices ({i}, {j}) out of range 0..{ell}")
    if i == j:
        return Fraction(0)
    if i > j:
        return -g_coeff(m, j, i, lam, v)
    if i == 0:
        if m == 0:
            return Fraction(1, factorial(lam[j - 1] + v[j - 1]))
        return Fraction(0)
    ni = lam[i - 1] + v[i - 1]
    nj = lam[j - 1] + v[j - 1]
    if m == 0:
        total = Fraction(1, factorial(ni) * factorial(nj))
        for el in range(1, nj + 1):
            term = Fraction(2, factorial(ni + el) * factorial(nj - el))
            total += -term if el % 2 else term
        return total
    total = Fraction(1, factorial(ni + m) * factorial(nj))
    for el in range(1, nj + 1):
        weight = comb(el + m - 1, m) + comb(el + m, m)
        term = Fraction(weight, factorial(ni + el + m) * factorial(nj - el))
        total += -term if el % 2 else term
    return total if m % 2 == 0 else -total


class GTable:
    """Memoized antisymmetric table of g_coeff values for one (lam, v)."""

    def __init__(self, lam, v):
        self.lam = tuple(lam)
        self.v = tuple(v)
        self._cache = {}

    def value(self, m: int, i: int, j: int) -> Fraction:
        key = (m, i, j)
        if key not in self._cache:
            self._cache[key] = g_coeff(m, i, j, self.lam, self.v)
        return self._cache[key]


def enumerate_f(sigma, k: int, n_pairs: int):
    """Distributions of k over the pair slots of the arrangement sigma.

    Slot b collects indices (sigma[2b], sigma[2b+1]); slots touching the
    boundary index 0 only admit 0, so k > 0 with no free slot gives no
    assignments at all.
    """
    if k < 0:
        raise ValueError(f"enumerate_f: k must be nonnegative, got {k}")
    sigma = tuple(sigma)
    free = [b for b in range(n_pairs) if sigma[2 * b] != 0 and sigma[2 * b + 1] != 0]
    out = []
    for comp in _compositions(k, len(free)):
        f = [0] * n_pairs
        for b, val in zip(free, comp):
            f[b] = val
        out.append(tuple(f))
    return out


def _compositions(total, slots):
    if slots == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def _bounded_sequences(length, max_sum):
    if length == 0:
        yield ()
        return
    for first in range(max_sum + 1):
        for rest in _bounded_sequences(length - 1, max_sum - first):
            yield (first,) + rest


def euler_theorem(problem: PrymProblem) -> Fraction:
    """Euler characteristic by the closed summation formula.

    Sums over shift sequences v, permutations of the (possibly augmented)
    index set paired off in order, and distributions f of the interaction
    degree k over the pairs. Integration kills every total degree except
    g - 1, so the sum is restricted to |lambda| + |v| + k = g - 1; each
    surviving term carries the weight h! / (2^(n/2 - h) (n/2)!) with
    h = g - 1 and n the (augmented) matrix size. The alternating u-sums
    are evaluated as abel_coefficient(s_i, v_i).

    Must equal euler_oracle exactly.
    """
    g, lam, ell, s = problem.g, problem.lam, problem.ell, problem.s
    h = g - 1
    budget = h - sum(lam)
    if budget < 0:
        return Fraction(0)
    indices = tuple(range(1, ell + 1)) if ell % 2 == 0 else tuple(range(ell + 1))
    half = len(indices) // 2
    weight = Fraction(factorial(h) * 2**h, 2**half * factorial(half))
    total = Fraction(0)
    for v in _bounded_sequences(ell, budget):
        k = budget - sum(v)
        pre = Fraction(1)
        for i in range(ell):
            pre *= abel_coefficient(s[i], v[i])
        if not pre:
            continue
        table = GTable(lam, v)
        inner = Fraction(0)
        for sigma in permutations(indices):
            sign = perm_sign(sigma)
            pairs = tuple((sigma[2 * b], sigma[2 * b + 1]) for b in range(half))
            for f in enumerate_f(sigma, k, half):
                prod = Fraction(1)
                for (pi, pj), fm in zip(pairs, f):
                    val = table.value(fm, pi, pj)
                    if not val:
                        prod = Fraction(0)
                        break
                    prod *= val
                if prod:
                    inner += prod if sign > 0 else -prod
        total += pre * inner * weight
    return total


def classical_coefficient(r: int) -> Fraction:
    """Class coefficient for the staircase vanishing sequence (0, 1, ..., r).

    Evaluated by the two equivalent product expansions, over the parts
    (r, ..., 1) and over (r, ..., 1, 0); the branches must agree (the zero
    part contributes empty factors) and the common value is returned.
    """
    if r < 0:
        raise ValueError(f"classical_coefficient: r must be nonnegative, got {r}")
    branch_a = Fraction(1, 2**r)
    for i in range(1, r + 1):
        branch_a /= factorial(i)
    for i in range(1, r + 1):
        for j in range(1, i):
            branch_a *= Fraction(i - j, i + j)
    branch_b = Fraction(1, 2**r)
    for i in range(0, r + 1):
        branch_b /= factorial(i)
    for i in range(0, r + 1):
        for j in range(0, i):
            branch_b *= Fraction(i - j, i + j)
    if branch_a != branch_b:
        raise ArithmeticError(
            f"classical_coefficient: branch disagreement at r={r}: "
            f"{branch_a} vs {branch_b}"
        )
    return branch_a


@dataclass(frozen=True)
class ClassResult:
    """Computed class with its problem echo and convention metadata."""

    kind: str  # cohomology | chern_character_K | connective
    problem: PrymProblem
    beta: object  # 0, -1 or "symbolic"
    gamma: object = None  # Fraction, cohomology kind only
    exponent: object = None  # int, cohomology kind only
    poly: object = None  # ThetaPoly, other kinds
    flags: tuple = ()


def class_result(problem: PrymProblem, beta_mode) -> ClassResult:
    """Dispatch a class computation by coefficient mode."""
    if beta_mode == 0:
        return ClassResult(
            kind="cohomology",
            problem=problem,
            beta=0,
            gamma=chow_class_closed(problem.lam),
            exponent=problem.codim,
        )
    if beta_mode == -1:
        return ClassResult(
            kind="chern_character_K",
            problem=problem,
            beta=-1,
            poly=ch_k_class(problem),
        )
    if beta_mode == SYMBOLIC:
        return ClassResult(
            kind="connective",
            problem=problem,
            beta=SYMBOLIC,
            poly=ck_class(problem, SYMBOLIC),
            flags=("engine-convention-symbolic-beta",),
        )
    raise ValueError(f"unknown beta mode {beta_mode!r}")
