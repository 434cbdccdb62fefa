"""Counting polynomials for essentially irreducible maps with even face degrees.

The pipeline solves a fixed-point equation for a fundamental series R in a
graded ring (deformation variable t = weight of the smallest admissible face
degree, one nilpotent marker per labeled face), builds moment series out of
it, assembles the genus-1 and genus-2 free energies, and extracts the
counting polynomial as the coefficient of t^0 * e_1 ... e_n.  Genus 0 has a
closed integral formula and skips the graded ring entirely.

Everything is symbolic in the irreducibility parameter b and the face
half-degrees l1..ln, with exact rational coefficients.  Numeric evaluations
(exact counts, girth counts, the independent finite-variable crosscheck) sit
on top of the symbolic polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import comb, factorial

from .families import (ConsistencyError, power_one_plus_r, qpoly_table, series_I,
                       series_J, series_J_inverse)
from .ring import GradedSeries, MultiPoly, Series

SUPPORTED_GENERA = (0, 1, 2)

#: largest moment index used anywhere (3g - 3 for g = 2)
MAX_MOMENT = 3


class DomainError(ValueError):
    """Inadmissible (genus, faces, b, degrees) combination."""


class UnsupportedGenusError(DomainError):
    """Genus outside the range covered by the implemented free energies."""


class InvariantViolation(RuntimeError):
    """A structural invariant (symmetry, evenness) failed to hold."""


def face_generators(n: int) -> tuple[str, ...]:
    return ("b",) + tuple(f"l{i}" for i in range(1, n + 1))


@dataclass(frozen=True)
class PipelineContext:
    """Index data for one symbolic run: genus, labeled faces, grading cap."""

    genus: int
    nfaces: int
    gens: tuple[str, ...]
    cap: int


def make_context(genus: int, nfaces: int, cap: int | None = None) -> PipelineContext:
    if nfaces < 0:
        raise DomainError("number of faces must be nonnegative")
    if cap is None:
        cap = max(nfaces, 1)
    return PipelineContext(genus, nfaces, face_generators(nfaces), cap)


# ============================================================
# The fundamental series R and the moment series
# ============================================================


def solve_R_hat(ctx: PipelineContext) -> GradedSeries:
    """Solve J(b; R) = t + sum_i e_i I(b, l_i; R) for R in the graded ring.

    Fixed-point iteration R <- J^{-1}(b; t + sum_i e_i I(b, l_i; R)) starting
    from 0 gains one exact grading degree per round, so it stabilizes within
    cap + 1 rounds; non-stabilization is an internal error.
    """
    gens, cap, n = ctx.gens, ctx.cap, ctx.nfaces
    jinv = series_J_inverse(max(cap, 1), gens)
    eyes = [series_I(cap, gens, ell=f"l{i}") for i in range(1, n + 1)]
    t = GradedSeries.t_var(gens, cap)
    eps = [GradedSeries.marker(gens, cap, i) for i in range(1, n + 1)]
    R = GradedSeries(gens, cap)
    for _ in range(cap + 3):
        X = t
        for e_i, I_i in zip(eps, eyes):
            X = X + e_i * I_i.compose(R)
        R_next = jinv.compose(X)
        if R_next == R:
            return R
        R = R_next
    raise ConsistencyError("fixed point for R did not stabilize")


def _zhat_series(ctx: PipelineContext, order: int) -> Series:
    """The series J(b; r) - t - sum_i e_i I(b, l_i; r) in r, graded coefficients."""
    gens, cap, n = ctx.gens, ctx.cap, ctx.nfaces
    jser = series_J(max(order, 1), gens)
    eyes = [series_I(order, gens, ell=f"l{i}") for i in range(1, n + 1)]
    t = GradedSeries.t_var(gens, cap)
    eps = [GradedSeries.marker(gens, cap, i) for i in range(1, n + 1)]
    coeffs = []
    for k in range(order + 1):
        c = GradedSeries.constant(gens, cap, jser[k] if k <= jser.order else MultiPoly(gens))
        if k == 0:
            c = c - t
        for e_i, I_i in zip(eps, eyes):
            c = c - e_i * I_i[k]
        coeffs.append(c)
    return Series(coeffs, order, GradedSeries(gens, cap))


def _apply_q_operator(p: int, w: Series, gens, order: int) -> Series:
    """Apply Q_p(b, (1+r) d/dr) to an r-series with ring coefficients."""
    by_j = {e: c.with_context(gens)
            for e, c in qpoly_table(max(p, MAX_MOMENT))[p].coefficients_in("j").items()}
    one_plus = power_one_plus_r(1, 0, order, gens)
    acc = None
    cur = w
    for e in range(max(by_j) + 1):
        if e > 0:
            cur = cur.derivative() * one_plus.truncate(cur.order - 1)
        if e in by_j and not by_j[e].is_zero():
            term = cur * by_j[e]
            acc = term if acc is None else acc + term
    return acc


def moment_hat(ctx: PipelineContext, p: int, rhat: GradedSeries) -> GradedSeries:
    """Moment series: Q_p(b, (1+r) d/dr) (1+r)^(-b) Z(r), evaluated at r = R.

    Exact to the context cap; the intermediate r-order is raised by p + 1
    because each application of (1+r) d/dr consumes one order.
    """
    if p > qpoly_table().p_max:
        raise DomainError(f"moment index {p} beyond the available Q table")
    gens, cap = ctx.gens, ctx.cap
    order = cap + p + 1
    w = _zhat_series(ctx, order) * power_one_plus_r(0, -1, order, gens)
    m = _apply_q_operator(p, w, gens, order)
    return m.compose(rhat)


# Moment weights T_p: fixed data, homogeneous of degree 2p in
# (r_0, ..., r_{p+1}) with polynomial coefficients in b.  The tests certify
# every coefficient against an independent derivation (operator commutation,
# Stirling expansion of ((1+r) d/dr)^k, inverse-function derivatives).


def t_weight(p: int, b, r: list):
    """Evaluate T_p(b, r_0, ..., r_{p+1}) in any commutative ring."""
    one = r[0] ** 0
    if p == 0:
        return one
    r0, r1 = r[0], r[1]
    if p == 1:
        r2 = r[2]
        return r1 * r1 * (b * (b - 1)) * Fraction(2, 3) - r0 * r2 * Fraction(2, 3)
    if p == 2:
        r2, r3 = r[2], r[3]
        return (r1 ** 4) * ((2 * b + 1) * b * (b - 1) * (2 * b - 3)) * Fraction(1, 30) \
            - (r0 * r1 * r1 * r2) * (8 * b * b - 16 * b + 5) * Fraction(1, 30) \
            + (r0 * r0 * r2 * r2) * Fraction(4, 5) \
            - (r0 * r0 * r1 * r3) * Fraction(4, 15)
    if p == 3:
        r2, r3, r4 = r[2], r[3], r[4]
        return (r1 ** 6) * ((b - 2) * (b - 1) * b * (b + 1) * (2 * b - 3) * (2 * b + 1)) * Fraction(1, 315) \
            - (r0 * r2 * r1 ** 4) * ((b - 2) * b * (2 * b * b - 4 * b + 1)) * Fraction(2, 105) \
            + (r0 ** 2 * r1 ** 2 * r2 ** 2) * (4 * b * b - 12 * b + 7) * Fraction(2, 35) \
            - (r0 ** 2 * r1 ** 3 * r3) * (4 * b * b - 12 * b + 7) * Fraction(2, 105) \
            - (r0 ** 3 * r2 ** 3) * Fraction(8, 7) \
            + (r0 ** 3 * r1 * r2 * r3) * Fraction(16, 21) \
            - (r0 ** 3 * r1 ** 2 * r4) * Fraction(8, 105)
    raise DomainError(f"T_{p} is not available (moment weights stop at p = 3)")


def moment_hat_via_T(ctx: PipelineContext, p: int) -> GradedSeries:
    """Independent route to the moment series via t-derivatives of R.

    Computes (1+R)^(1-b) (dR/dt)^(-(2p+1)) T_p(b, 1+R, dR/dt, ..., d^{p+1}R/dt^{p+1})
    with the grading cap raised by p + 1 to absorb the derivatives, then
    truncated back to the context cap.
    """
    if p > 3:
        raise DomainError(f"moment index {p} beyond the available T weights")
    gens, cap = ctx.gens, ctx.cap
    raised = make_context(ctx.genus, ctx.nfaces, cap + p + 1)
    R = solve_R_hat(raised)
    derivs = [R]
    for _ in range(p + 1):
        derivs.append(derivs[-1].t_derivative())
    rs = [(derivs[0] + 1).truncate(cap)] + [d.truncate(cap) for d in derivs[1:]]
    bpol = MultiPoly.variable(gens, "b")
    T = t_weight(p, bpol, rs)
    pref = power_one_plus_r(1, -1, cap, gens).compose(derivs[0].truncate(cap))
    dinv = power_one_plus_r(-(2 * p + 1), 0, cap, gens).compose(rs[1] - 1)
    out = pref * dinv
    if not isinstance(T, GradedSeries):
        return out * T
    return out * T


# ============================================================
# Free energies and counting polynomials
# ============================================================


def _log_unit(u, cap: int):
    """log of a ring element with constant term 1, via the Mercator series."""
    v = u - 1
    acc = v * 0
    pk = v ** 0
    for k in range(1, cap + 1):
        pk = pk * v
        acc = acc + pk * Fraction((-1) ** (k + 1), k)
    return acc


def _inv_unit(u, cap: int):
    """1/u for a ring element with constant term 1, via the geometric series."""
    v = (u - 1) * Fraction(-1)
    acc = v ** 0
    pk = v ** 0
    for _ in range(1, cap + 1):
        pk = pk * v
        acc = acc + pk
    return acc


def genus2_combination(inv0, m1, m2, m3):
    """The universal genus-2 free energy in terms of moment ratios."""
    inner = (m1 ** 3) * 2016 + (m1 * m1) * 1086 - (m2 * m1) * 3480 \
        + m1 * 407 - m2 * 860 + m3 * 1400 + 128
    return inv0 * inv0 * inner * Fraction(-1, 30720) + Fraction(1, 240)


def free_energy(genus: int, moments: list, cap: int):
    """Assemble the genus-1 or genus-2 free energy from moment series."""
    m0 = moments[0]
    if genus == 1:
        return _log_unit(m0, cap) * Fraction(-1, 12)
    if genus == 2:
        inv0 = _inv_unit(m0, cap)
        m1, m2, m3 = (m * inv0 for m in moments[1:4])
        return genus2_combination(inv0, m1, m2, m3)
    raise UnsupportedGenusError(f"no free energy available for genus {genus}")


@dataclass(frozen=True)
class CountPolynomial:
    """A finished counting polynomial with its index data."""

    genus: int
    nfaces: int
    gens: tuple[str, ...]
    poly: MultiPoly

    def evaluate(self, b, degrees) -> Fraction:
        if len(degrees) != self.nfaces:
            raise DomainError(f"expected {self.nfaces} degrees, got {len(degrees)}")
        assign = {"b": b}
        assign.update({f"l{i}": d for i, d in enumerate(degrees, start=1)})
        return self.poly.evaluate(assign).as_fraction()

    def m_basis(self) -> dict[tuple[int, ...], MultiPoly]:
        return to_m_basis(self)


def nhat_genus0(n: int) -> CountPolynomial:
    """Planar counting polynomial from the closed integral formula.

    (n-2)! [z^(n-2)] of the antiderivative of prod_i I(b, l_i; r) (1+r)^(-2b-1)
    composed with J^{-1}(b; z).
    """
    if n < 3:
        raise DomainError("the planar family needs at least 3 faces")
    gens = face_generators(n)
    order = n - 3
    integrand = power_one_plus_r(-1, -2, order, gens)
    for i in range(1, n + 1):
        integrand = integrand * series_I(order, gens, ell=f"l{i}")
    anti = integrand.antiderivative()
    composed = anti.compose(series_J_inverse(n - 2, gens))
    poly = composed[n - 2] * factorial(n - 2)
    return CountPolynomial(0, n, gens, poly)


def nhat_higher_genus(genus: int, n: int) -> CountPolynomial:
    """Counting polynomial for genus 1 or 2 from the graded-ring pipeline."""
    if genus not in (1, 2):
        raise UnsupportedGenusError(f"genus {genus} is not supported here")
    if n < 1:
        raise DomainError("need at least one face")
    ctx = make_context(genus, n)
    R = solve_R_hat(ctx)
    moments = [moment_hat(ctx, p, R) for p in range(3 * genus - 2)]
    F = free_energy(genus, moments, ctx.cap)
    poly = F.coefficient(0, frozenset(range(1, n + 1)))
    return CountPolynomial(genus, n, ctx.gens, poly)


_NHAT_CACHE: dict[tuple[int, int], CountPolynomial] = {}


def nhat(genus: int, n: int) -> CountPolynomial:
    """The counting polynomial for (genus, n), cached."""
    if genus not in SUPPORTED_GENERA:
        raise UnsupportedGenusError(f"genus {genus} is not supported")
    key = (genus, n)
    if key not in _NHAT_CACHE:
        _NHAT_CACHE[key] = nhat_genus0(n) if genus == 0 else nhat_higher_genus(genus, n)
    return _NHAT_CACHE[key]


# ============================================================
# Monomial symmetric basis
# ============================================================


def m_lambda_poly(partition, n: int, gens) -> MultiPoly:
    """The monomial symmetric polynomial m_lambda in the squared generators.

    m_(a1..ap)(l1..ln) = sum over distinct permutations beta of the padded
    partition of prod_i l_i^(2 beta_i).
    """
    partition = tuple(partition)
    if len(partition) > n:
        raise DomainError(f"partition {partition} has more parts than faces")
    padded = partition + (0,) * (n - len(partition))
    gens = tuple(gens)
    offset = gens.index("l1")
    terms = {}
    for beta in set(permutations(padded)):
        exps = [0] * len(gens)
        for i, e in enumerate(beta):
            exps[offset + i] = 2 * e
        terms[tuple(exps)] = Fraction(1)
    return MultiPoly(gens, terms)


def to_m_basis(count: CountPolynomial) -> dict[tuple[int, ...], MultiPoly]:
    """Decompose into the monomial symmetric basis of squared half-degrees.

    Returns a map from partitions (tuples, weakly decreasing, no zeros) to
    coefficient polynomials in b alone.  Raises InvariantViolation if the
    polynomial is not even and symmetric in the face generators.
    """
    n, gens, poly = count.nfaces, count.gens, count.poly
    offset = gens.index("l1") if n else len(gens)
    groups: dict[tuple[int, ...], dict[tuple[int, ...], MultiPoly]] = {}
    for exps, _ in poly.terms.items():
        lpart = exps[offset:offset + n]
        if any(e % 2 for e in lpart):
            raise InvariantViolation(f"odd power of a face generator in {count.genus=} {n=}")
    by_l = {}
    for exps, c in poly.terms.items():
        lpart = exps[offset:offset + n]
        bexps = exps[:offset]
        by_l.setdefault(lpart, {})[bexps] = c
    bgens = gens[:offset]
    for lpart, bterms in by_l.items():
        halves = tuple(sorted((e // 2 for e in lpart), reverse=True))
        lam = tuple(e for e in halves if e)
        beta = tuple(e // 2 for e in lpart)
        groups.setdefault(lam, {})[beta] = MultiPoly(bgens, bterms)
    out: dict[tuple[int, ...], MultiPoly] = {}
    for lam, betas in groups.items():
        padded = lam + (0,) * (n - len(lam))
        expected = set(permutations(padded))
        if set(betas) != expected:
            raise InvariantViolation(f"partition {lam}: orbit incomplete, not symmetric")
        ref = next(iter(betas.values()))
        if any(v != ref for v in betas.values()):
            raise InvariantViolation(f"partition {lam}: coefficients differ across the orbit")
        out[lam] = ref.with_context(("b",))
    return out


# ============================================================
# Exact counts, the tree transform, and girth counts
# ============================================================


def a_transform_coeff(b: int, ell: int, p: int) -> Fraction:
    """Weight for regrowing trees in the corners: face of degree 2p -> 2ell."""
    val = Fraction(0)
    if ell == p == b:
        val += 1
    if ell >= p > b:
        val += Fraction(p * comb(2 * ell, ell - p), ell)
    return val

def b_transform_coeff(b: int, p: int, ell: int) -> Fraction:
    """Inverse weight of the tree transform."""
    val = Fraction(0)
    if p == ell == b:
        val += 1
    if p >= ell > b:
        val += Fraction((-1) ** (p - ell) * comb(p + ell - 1, p - ell))
    return val


def planar_correction(genus: int, n: int, b: int, degrees) -> Fraction:
    """Correction to the polynomial count when all planar faces have degree 2b."""
    if genus == 0 and n >= 4 and all(d == b for d in degrees):
        return Fraction(factorial(n - 1) * (-1) ** n, 2)
    return Fraction(0)


def _check_admissible(genus: int, n: int, b: int, degrees, minimum: int) -> None:
    if genus not in SUPPORTED_GENERA:
        raise UnsupportedGenusError(f"genus {genus} is not supported")
    if b < 0:
        raise DomainError("b must be nonnegative")
    if genus == 0 and n < 3:
        raise DomainError("planar counts need at least 3 faces")
    if n < 1 or len(degrees) != n:
        raise DomainError(f"expected {n} face degrees, got {len(degrees)}")
    if any(d < minimum for d in degrees):
        raise DomainError(f"face half-degrees must all be at least {minimum}")


def count_exact(genus: int, n: int, b: int, degrees,
                allow_degree_one: bool = False) -> Fraction:
    """Exact weighted count of essentially 2b-irreducible maps.

    Without degree-one vertices this is the counting polynomial plus the
    planar all-degrees-equal correction; with them it is the nested
    tree-transform sum over smaller half-degrees.
    """
    degrees = tuple(degrees)
    _check_admissible(genus, n, b, degrees, max(b, 1))
    poly = nhat(genus, n)
    if not allow_degree_one:
        return poly.evaluate(b, degrees) + planar_correction(genus, n, b, degrees)
    total = Fraction(0)
    ranges = [range(b, d + 1) for d in degrees]
    for ptuple in product(*ranges):
        w = Fraction(1)
        for ell, p in zip(degrees, ptuple):
            w *= a_transform_coeff(b, ell, p)
            if w == 0:
                break
        if w == 0:
            continue
        total += w * (poly.evaluate(b, ptuple) + planar_correction(genus, n, b, ptuple))
    return total


def girth_count(genus: int, n: int, b: int, degrees, mode: str = "at-least") -> Fraction:
    """Count of maps (no degree-one vertices) by essential girth.

    mode "at-least": essential girth >= 2b (requires half-degrees >= b);
    mode "exactly": essential girth exactly 2b (requires half-degrees > b).
    """
    degrees = tuple(degrees)
    if b < 1:
        raise DomainError("girth counts need b >= 1")
    if mode == "at-least":
        _check_admissible(genus, n, b, degrees, max(b, 1))
        return nhat(genus, n).evaluate(b - 1, degrees)
    if mode == "exactly":
        _check_admissible(genus, n, b, degrees, b + 1)
        return nhat(genus, n).evaluate(b - 1, degrees) - nhat(genus, n).evaluate(b, degrees)
    raise DomainError(f"unknown girth mode {mode!r}")


# ============================================================
# Independent finite-variable crosscheck (numeric b)
# ============================================================


class TruncatedPoly:
    """Multivariate series in x_lo..x_D truncated by total degree."""

    __slots__ = ("poly", "cap")

    def __init__(self, poly: MultiPoly, cap: int):
        terms = {e: c for e, c in poly.terms.items() if sum(e) <= cap}
        p = MultiPoly(poly.gens)
        p.terms = terms
        self.poly = p
        self.cap = cap

    def _wrap(self, poly: MultiPoly) -> "TruncatedPoly":
        return TruncatedPoly(poly, self.cap)

    def _coerce(self, other):
        if isinstance(other, TruncatedPoly):
            return other.poly
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.poly.gens, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.poly + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.poly - o)

    def __rsub__(self, other):
        return (self - other) * Fraction(-1)

    def __neg__(self):
        return self._wrap(-self.poly)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._wrap(self.poly * other)
        if isinstance(other, TruncatedPoly):
            return self._wrap(self.poly * other.poly)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int):
        acc = TruncatedPoly(MultiPoly.constant(self.poly.gens, 1), self.cap)
        for _ in range(k):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if isinstance(other, TruncatedPoly):
            return self.poly == other.poly
        return NotImplemented

    __hash__ = None

    def coefficient(self, exps) -> Fraction:
        return self.poly.terms.get(tuple(exps), Fraction(0))

    def valuation_positive(self) -> bool:
        return (0,) * len(self.poly.gens) not in self.poly.terms

    def derivative_in(self, name: str) -> "TruncatedPoly":
        i = self.poly.gens.index(name)
        terms = {}
        for exps, c in self.poly.terms.items():
            if exps[i]:
                key = list(exps)
                key[i] -= 1
                terms[tuple(key)] = c * exps[i]
        p = MultiPoly(self.poly.gens)
        p.terms = terms
        return TruncatedPoly(p, self.cap - 1)


def _numeric_series(sym: Series, assign) -> Series:
    return Series([c.evaluate(assign).as_fraction() for c in sym.coeffs],
                  sym.order, Fraction(0))


def _numeric_setup(b: int, max_degree: int, cap: int):
    lo = max(b, 1)
    gens = tuple(f"x{l}" for l in range(lo, max_degree + 1))
    zero = TruncatedPoly(MultiPoly(gens), cap)
    xs = {l: TruncatedPoly(MultiPoly.variable(gens, f"x{l}"), cap)
          for l in range(lo, max_degree + 1)}
    return lo, gens, zero, xs


def _numeric_R(b: int, max_degree: int, cap: int):
    """Solve the defining equation in the truncated finite-variable ring."""
    lo, gens, zero, xs = _numeric_setup(b, max_degree, cap)
    jinv = _numeric_series(series_J_inverse(max(cap, 1), ("b",)), {"b": b})
    eyes = {l: _numeric_series(series_I(cap, ("b", "l")), {"b": b, "l": l})
            for l in range(lo, max_degree + 1)}
    R = zero
    for _ in range(cap + 3):
        X = zero
        for l in range(lo, max_degree + 1):
            X = X + eyes[l].compose(R) * xs[l]
        R_next = jinv.compose(X)
        if R_next == R:
            return R, xs, eyes
        R = R_next
    raise ConsistencyError("numeric fixed point did not stabilize")


def numeric_defining_residual(b: int, ell: int, max_degree: int, cap: int) -> TruncatedPoly:
    """Residual dR/dx_ell - I(b, ell; R) dR/dx_b of the defining identity."""
    if b < 1:
        raise DomainError("the residual check needs b >= 1")
    if ell > max_degree:
        raise DomainError("ell exceeds the variable range")
    R, xs, eyes = _numeric_R(b, max_degree, cap)
    lhs = R.derivative_in(f"x{ell}")
    rhs = eyes[ell].compose(R) * R.derivative_in(f"x{b}")
    return lhs - rhs


def numeric_series_crosscheck(genus: int, n: int, b: int, degrees,
                              max_degree: int | None = None,
                              order: int | None = None) -> Fraction:
    """Evaluate the counting polynomial from scratch in a finite-variable ring.

    Solves the defining equation over x_max(b,1)..x_D with numeric b,
    assembles the free energy (genus >= 1) or the two-face integral formula
    (genus 0), and reads off the coefficient of the requested face monomial.
    Shares no code path with the symbolic marker ring, so agreement with
    ``count_exact`` (minus the planar correction) is a real crosscheck.
    """
    degrees = tuple(degrees)
    _check_admissible(genus, n, b, degrees, max(b, 1))
    D = max_degree if max_degree is not None else max(degrees)
    if D < max(degrees):
        raise DomainError("max_degree too small for the requested degrees")

    if genus == 0:
        cap = n - 2 if order is None else order
        lo, gens, zero, xs = _numeric_setup(b, D, cap)
        R, _, _ = _numeric_R(b, D, cap)
        rest = sorted(degrees)[:-2] if n > 2 else []
        l1, l2 = sorted(degrees)[-2:]
        rod = max(cap, n - 3 + 1, 1)
        integrand = _numeric_series(power_one_plus_r(-1, -2, rod, ("b",)), {"b": b})
        integrand = integrand * _numeric_series(series_I(rod, ("b", "l")), {"b": b, "l": l1})
        integrand = integrand * _numeric_series(series_I(rod, ("b", "l")), {"b": b, "l": l2})
        cylinder = integrand.antiderivative().truncate(rod).compose(R)
        exps = [0] * len(gens)
        for d in rest:
            exps[gens.index(f"x{d}")] += 1
        mults = {d: rest.count(d) for d in set(rest)}
        scale = 1
        for m in mults.values():
            scale *= factorial(m)
        return cylinder.coefficient(exps) * scale

    cap = n if order is None else order
    lo, gens, zero, xs = _numeric_setup(b, D, cap)
    R, _, eyes = _numeric_R(b, D, cap)
    qt = qpoly_table()
    moments = []
    for p in range(3 * genus - 2):
        rod = cap + p + 1
        jser = _numeric_series(series_J(max(rod, 1), ("b",)), {"b": b})
        pw = _numeric_series(power_one_plus_r(0, -1, rod, ("b",)), {"b": b})
        eyes_hi = {l: _numeric_series(series_I(rod, ("b", "l")), {"b": b, "l": l})
                   for l in range(lo, D + 1)}
        coeffs = []
        for k in range(rod + 1):
            c = zero + (jser[k] if k <= jser.order else Fraction(0))
            for l in range(lo, D + 1):
                c = c - xs[l] * eyes_hi[l][k]
            coeffs.append(c)
        w = Series(coeffs, rod, zero) * pw
        qp = qt[p].evaluate({"b": b})
        by_j = {e: c.as_fraction() for e, c in qp.coefficients_in("j").items()}
        one_plus = _numeric_series(power_one_plus_r(1, 0, rod, ("b",)), {"b": b})
        acc, cur = None, w
        for e in range(max(by_j) + 1):
            if e > 0:
                cur = cur.derivative() * one_plus.truncate(cur.order - 1)
            if by_j.get(e):
                term = cur * by_j[e]
                acc = term if acc is None else acc + term
        moments.append(acc.compose(R))
    F = free_energy(genus, moments, cap)
    exps = [0] * len(gens)
    for d in degrees:
        exps[gens.index(f"x{d}")] += 1
    mults = {d: degrees.count(d) for d in set(degrees)}
    scale = 1
    for m in mults.values():
        scale *= factorial(m)
    return F.coefficient(exps) * scale
