"""Group-like elements, formal group-like sequences, and the exponential.

A p-order group-like element is a truncated series g(ν) with Δg ≡ g⊗g
mod ν^{p+1} and ε(g) = 1.  A formal group-like sequence is a tower
(g_p)_p of those, tied together by g_{p+1} ≡ α(g_p) mod ν^{p+1}, with a
uniform invertibility-index bound; the set of such sequences forms a
Hom-group whose product is termwise grafting and whose inverse is the
antipode.

Everything here runs over an "ambient" quotient handle: the
one-generator algebra (exact, decidable equality) or an enveloping
algebra U𝔤 (level-bounded equality — checks that cannot be settled at
the level cap raise OracleInconclusive rather than guessing).

The sequence's truncation cap P is part of the value: every statement
in scope is per-order, so a finite prefix is the whole story.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional

from . import freehom
from . import ueg
from .homlie import HomLieAlgebra, load_algebra
from .linalg import LinComb, RowSpace, TruncSeries, frac, series_multiply
from .trees import is_unit, leaf_count, parse


class OracleInconclusive(RuntimeError):
    """A bounded oracle could neither confirm nor refute a required identity."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class FreeAmbient:
    """The one-generator quotient 𝕋/I: every check here is decidable."""

    name = "free"
    exact = True

    def unit(self):
        return LinComb.single("1")

    def zero(self):
        return LinComb.zero()

    def graft(self, a, b):
        return freehom.graft_poly(a, b)

    def alpha(self, a):
        return freehom.alpha_poly(a)

    def antipode(self, a):
        return freehom.antipode(a)

    def coproduct(self, a):
        return freehom.coproduct(a)

    def counit(self, a):
        return freehom.counit(a)

    def tensor_defect(self, t):
        return freehom.reduce_tensor(t)

    def equal(self, a, b) -> bool:
        return freehom.equal_mod_I(a, b).equal

    def invertibility_index(self, series_or_poly, max_k):
        return freehom.invertibility_index(series_or_poly, max_k=max_k)

    def power_product(self, i, p):
        return freehom.nary_product(i, p)

    def parse(self, text):
        return freehom.parse_poly(text)

    def __eq__(self, other):
        return isinstance(other, FreeAmbient)

    def __hash__(self):
        return hash("free-ambient")


class UEAmbient:
    """U𝔤 of a fixed Hom-Lie algebra: equality is a level-bounded semi-decision."""

    exact = False

    def __init__(self, g: HomLieAlgebra, x=None, slack: int = ueg.DEFAULT_SLACK,
                 escalation_cap: int = ueg.DEFAULT_ESCALATION_CAP):
        self.g = g
        self.x = tuple(x) if x is not None else None  # default exp direction
        self.slack = slack
        self.escalation_cap = escalation_cap
        self.name = "U(%s)" % g.name

    def unit(self):
        return ueg.unit_upoly()

    def zero(self):
        return LinComb.zero()

    def graft(self, a, b):
        return ueg.graft_U(self.g, a, b)

    def alpha(self, a):
        return ueg.alpha_U(self.g, a)

    def antipode(self, a):
        return ueg.antipode_U(a)

    def coproduct(self, a):
        return ueg.coproduct_U(self.g, a)

    def counit(self, a):
        return ueg.counit_U(a)

    def tensor_defect(self, t):
        worst = 1
        for (lk, rk) in t.terms:
            for key in (lk, rk):
                tree = parse(key)
                if not is_unit(tree):
                    worst = max(worst, leaf_count(tree))
        return ueg.reduce_tensor_U(self.g, t, worst + self.slack)

    def equal(self, a, b) -> bool:
        if a == b:
            return True
        verdict = ueg.equal_mod_U_auto(self.g, a, b, slack=self.slack,
                                       escalation_cap=self.escalation_cap)
        if verdict.equal:
            return True
        raise OracleInconclusive(
            "not provably equal at level %d" % verdict.level, verdict)

    def invertibility_index(self, series_or_poly, max_k):
        return ueg.invertibility_index_U(self.g, series_or_poly, max_k=max_k,
                                         slack=self.slack)

    def power_product(self, i, p):
        if self.x is None:
            raise ValueError("this ambient has no exponential direction; pass x")
        return ueg.u_power_product(self.g, self.x, i, p)

    def parse(self, text):
        return ueg.parse_u_poly(self.g, text)

    def __eq__(self, other):
        return (isinstance(other, UEAmbient) and other.g == self.g
                and other.x == self.x)

    def __hash__(self):
        return hash((self.g, self.x))


@dataclass
class SeriesElement:
    """A truncated ν-series of quotient elements with its ambient handle."""

    ambient: object
    series: TruncSeries

    @property
    def order(self) -> int:
        return self.series.order

    def coeff(self, i: int):
        return self.series.coeffs[i]


@dataclass
class GroupLikeResult:
    yes: bool
    order: Optional[int] = None
    check: Optional[str] = None  # "counit" | "coproduct"
    residual: Optional[LinComb] = None


def is_grouplike_order_p(elem: SeriesElement, p: int) -> GroupLikeResult:
    """Δ(g) = g⊗g mod ν^{p+1} and ε(g) = 1, checked order by order."""
    if elem.order < p:
        raise ValueError("series truncated at order %d, below p=%d" % (elem.order, p))
    ambient = elem.ambient
    coeffs = elem.series.coeffs
    for m in range(p + 1):
        expected = frac(1) if m == 0 else frac(0)
        if ambient.counit(coeffs[m]) != expected:
            return GroupLikeResult(False, m, "counit")
    for m in range(p + 1):
        diff = ambient.coproduct(coeffs[m])
        for i in range(m + 1):
            for lk, lc in coeffs[i].items():
                for rk, rc in coeffs[m - i].items():
                    diff = diff - LinComb({(lk, rk): lc * rc})
        defect = ambient.tensor_defect(diff)
        if defect:
            if not ambient.exact:
                raise OracleInconclusive(
                    "group-like defect at order %d not provably zero" % m, defect)
            return GroupLikeResult(False, m, "coproduct", defect)
    return GroupLikeResult(True)


@dataclass
class GroupLikeSequence:
    """Prefix g_0..g_P, the invertibility bound, and the truncation cap."""

    ambient: object
    terms: tuple  # terms[p] is a TruncSeries of order exactly p
    bound: int
    cap: int

    def __post_init__(self):
        if len(self.terms) != self.cap + 1:
            raise ValueError("expected %d series, got %d" % (self.cap + 1, len(self.terms)))
        for p, series in enumerate(self.terms):
            if series.order != p:
                raise ValueError("series %d truncated at order %d, want %d"
                                 % (p, series.order, p))

    def element(self, p: int) -> SeriesElement:
        return SeriesElement(self.ambient, self.terms[p])


@dataclass
class SequenceValidation:
    ok: bool
    clause: Optional[str] = None  # "a" | "b" | "c"
    index: Optional[int] = None
    detail: Optional[object] = None


def validate_sequence(seq: GroupLikeSequence) -> SequenceValidation:
    """Clause a: each g_p is p-order group-like (and g_0 is the unit itself);
    clause b: g_{p+1} = α(g_p) mod ν^{p+1}; clause c: indices stay ≤ bound."""
    ambient = seq.ambient
    if not ambient.equal(seq.terms[0].coeffs[0], ambient.unit()):
        return SequenceValidation(False, "a", 0, "g_0 is not the unit")
    for p in range(seq.cap + 1):
        result = is_grouplike_order_p(seq.element(p), p)
        if not result.yes:
            return SequenceValidation(False, "a", p, result)
    for p in range(seq.cap):
        shifted = seq.terms[p].map(ambient.alpha)
        for m in range(p + 1):
            if not ambient.equal(seq.terms[p + 1].coeffs[m], shifted.coeffs[m]):
                return SequenceValidation(False, "b", p,
                                          "order-%d coefficient differs" % m)
    for p in range(seq.cap + 1):
        found = ambient.invertibility_index(seq.terms[p], max_k=seq.bound)
        if not found.found or found.index > seq.bound:
            return SequenceValidation(False, "c", p, found)
    return SequenceValidation(True)


def unit_sequence(ambient, cap: int) -> GroupLikeSequence:
    terms = tuple(
        TruncSeries([ambient.unit()] + [ambient.zero()] * p) for p in range(cap + 1)
    )
    return GroupLikeSequence(ambient, terms, 0, cap)


def homgroup_product(a: GroupLikeSequence, b: GroupLikeSequence,
                     revalidate: bool = False) -> GroupLikeSequence:
    """Termwise graft; the index bound k_a + k_b + 1 is recorded, not re-searched."""
    if a.ambient != b.ambient:
        raise ValueError("sequences live over different ambients")
    if a.cap != b.cap:
        raise ValueError("sequences have different caps (%d vs %d)" % (a.cap, b.cap))
    terms = tuple(
        series_multiply(a.terms[p], b.terms[p], a.ambient.graft)
        for p in range(a.cap + 1)
    )
    product = GroupLikeSequence(a.ambient, terms, a.bound + b.bound + 1, a.cap)
    if revalidate:
        outcome = validate_sequence(product)
        if not outcome.ok:
            raise OracleInconclusive("product failed revalidation", outcome)
    return product


def homgroup_inverse(a: GroupLikeSequence) -> GroupLikeSequence:
    """S coefficientwise, then confirm α^k(a ∨ S a) = 𝟙 = α^k(S a ∨ a), k ≤ bound."""
    ambient = a.ambient
    inverse = GroupLikeSequence(
        ambient, tuple(series.map(ambient.antipode) for series in a.terms),
        a.bound, a.cap)
    for p in range(a.cap + 1):
        left = series_multiply(a.terms[p], inverse.terms[p], ambient.graft)
        right = series_multiply(inverse.terms[p], a.terms[p], ambient.graft)
        if not _unit_after_alpha_power(ambient, left, a.bound) or \
           not _unit_after_alpha_power(ambient, right, a.bound):
            raise OracleInconclusive(
                "inverse law not confirmed within the stored bound %d at p=%d"
                % (a.bound, p))
    return inverse


def _unit_after_alpha_power(ambient, series: TruncSeries, bound: int) -> bool:
    unit = ambient.unit()
    zero = ambient.zero()
    for k in range(bound + 1):
        try:
            flat = all(
                ambient.equal(coeff, unit if m == 0 else zero)
                for m, coeff in enumerate(series.coeffs)
            )
        except OracleInconclusive:
            flat = False
        if flat:
            return True
        series = series.map(ambient.alpha)
    return False


def exp_sequence(s, cap: int, ambient=None) -> GroupLikeSequence:
    """g_p = 𝟙 + Σ_{i≤p} (s^i/i!) ν^i ⌊x^i⌋_p; the free ambient has x implicit."""
    if cap < 0:
        raise ValueError("cap must be non-negative")
    if ambient is None:
        ambient = FreeAmbient()
    s = frac(s)
    terms = []
    for p in range(cap + 1):
        coeffs = [ambient.unit()]
        for i in range(1, p + 1):
            coeffs.append((s ** i / factorial(i)) * ambient.power_product(i, p))
        terms.append(TruncSeries(coeffs))
    return GroupLikeSequence(ambient, tuple(terms), 0, cap)


def exp_injectivity_check(g: HomLieAlgebra, s) -> bool:
    """x ↦ exp̂(sx) is injective: the order-1 coefficient of g_1 is s·leaf(x)."""
    s = frac(s)
    if not s:
        raise ValueError("injectivity requires s != 0")
    seen = {}
    for i in range(g.dim):
        seq = exp_sequence(s, 1, UEAmbient(g, g.basis_vector(i)))
        coeff = seq.terms[1].coeffs[1]
        key = tuple(sorted(coeff.items()))
        if key in seen:
            return False
        seen[key] = g.basis[i]
    # the order-1 coefficient is s times the undecorated generator leaf,
    # so distinct elements always separate when s is non-zero
    return True


# ------------------------------------------------------------- order-2 solver


def _interleavings(left: tuple, right: tuple):
    if not left:
        yield right
        return
    if not right:
        yield left
        return
    for rest in _interleavings(left[1:], right):
        yield (left[0],) + rest
    for rest in _interleavings(left, right[1:]):
        yield (right[0],) + rest


@dataclass
class Order2Completion:
    feasible: bool
    completion: Optional[LinComb] = None
    candidate_classes: tuple = ()
    residual: Optional[LinComb] = None


def complete_order2(elem: SeriesElement) -> Order2Completion:
    """Solve Δc − c⊗𝟙 − 𝟙⊗c = q⊗q for the ν² coefficient c, q the ν¹ one.

    Restriction preserves per-leaf s-values, so any contribution to the
    class pair (s₁, s₂) must come from trees whose signature interleaves
    s₁ and s₂; the system is therefore finite and its infeasibility is a
    proof.  Only the exact one-generator ambient supports this.
    """
    ambient = elem.ambient
    if not getattr(ambient, "exact", False):
        raise ValueError("the completion solver needs the exact ambient")
    if elem.order < 1:
        raise ValueError("need the series at least to order 1")
    q = elem.series.coeffs[1]
    target = LinComb(
        (((lk, rk), lc * rc)) for lk, lc in q.items() for rk, rc in q.items()
    )
    target = freehom.reduce_tensor(target)
    classes = set()
    for lk in q.terms:
        n1, s1 = freehom.class_of(lk)
        for rk in q.terms:
            n2, s2 = freehom.class_of(rk)
            for merged in _interleavings(s1, s2):
                classes.add((n1 + n2, merged))
    classes = tuple(sorted(classes))
    from .trees import enumerate_class, to_text

    candidates = []
    for n, signature in classes:
        candidates.extend(to_text(t) for t in enumerate_class(n, signature))
    rows = []
    for text in candidates:
        poly = LinComb.single(text)
        cross = freehom.coproduct(poly) - LinComb({(text, "1"): 1, ("1", text): 1})
        rows.append(freehom.reduce_tensor(cross))
    space = RowSpace(rows)
    if not target:
        return Order2Completion(True, LinComb.zero(), classes)
    answer = space.membership(target)
    if not answer.inside:
        return Order2Completion(False, None, classes, answer.residual)
    completion = LinComb.zero()
    for idx, coeff in answer.certificate.items():
        completion = completion + coeff * LinComb.single(candidates[idx])
    return Order2Completion(True, completion, classes)


# ------------------------------------------------------------- sequence files


def load_sequence(source) -> GroupLikeSequence:
    """JSON sequence fixture: {"bound": k, "orders": [[expr, ...], ...]}.

    orders[p] lists the ν^0..ν^p coefficient expressions of g_p.  An
    optional "algebra" object (same schema as the algebra loader) moves
    the sequence into U𝔤; expressions then use decorated-leaf syntax.
    """
    if isinstance(source, str):
        with open(source, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    else:
        data = source
    if not isinstance(data, dict) or "orders" not in data:
        raise ValueError("sequence file needs an 'orders' array")
    if "algebra" in data:
        ambient = UEAmbient(load_algebra(data["algebra"]))
    else:
        ambient = FreeAmbient()
    bound = int(data.get("bound", 0))
    orders = data["orders"]
    if not orders:
        raise ValueError("sequence file has no orders")
    terms = []
    for p, exprs in enumerate(orders):
        if len(exprs) != p + 1:
            raise ValueError("g_%d needs %d coefficients, got %d" % (p, p + 1, len(exprs)))
        terms.append(TruncSeries([ambient.parse(e) for e in exprs]))
    return GroupLikeSequence(ambient, tuple(terms), bound, len(orders) - 1)
