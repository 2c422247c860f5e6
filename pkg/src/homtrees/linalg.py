"""Exact sparse linear algebra over the rationals.

Everything downstream (ideal membership, quotient normal forms, tensor
reductions) is built on three small exact structures:

* LinComb      -- finite formal linear combination of basis keys
* RowSpace     -- fully reduced row echelon span with membership certificates
* TruncSeries  -- formal series truncated modulo nu^(order+1)

No floating point is used anywhere; coefficients are fractions.Fraction.
Basis keys can be anything hashable that sorts against the other keys of
the same space (codec strings, pairs of strings for tensors, integer
coordinates for plain vectors).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable


def frac(x) -> Fraction:
    """Coerce ints, strings like '-3/2' and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not allowed: %r" % (x,))
    return Fraction(x)


class LinComb:
    """A finite map from basis keys to nonzero rational coefficients.

    The empty combination is the canonical zero.  Instances are treated
    as immutable: no method mutates self, and the term dict must not be
    modified after construction.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, coeff in items:
                coeff = frac(coeff)
                if not coeff:
                    continue
                acc = data.get(key)
                if acc is None:
                    data[key] = coeff
                else:
                    acc = acc + coeff
                    if acc:
                        data[key] = acc
                    else:
                        del data[key]
        self.terms = data

    @staticmethod
    def zero() -> "LinComb":
        return LinComb()

    @staticmethod
    def single(key, coeff=1) -> "LinComb":
        return LinComb({key: coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def support(self) -> list:
        return sorted(self.terms)

    def items(self):
        return self.terms.items()

    def __add__(self, other: "LinComb") -> "LinComb":
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = out.get(key, 0) + coeff
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        result = LinComb()
        result.terms = out
        return result

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-1) * other

    def __neg__(self) -> "LinComb":
        return (-1) * self

    def __rmul__(self, scalar) -> "LinComb":
        scalar = frac(scalar)
        if not scalar:
            return LinComb()
        out = LinComb()
        out.terms = {key: scalar * coeff for key, coeff in self.terms.items()}
        return out

    def map_keys(self, fn: Callable) -> "LinComb":
        """Apply fn to every key, merging coefficients of collided images."""
        return LinComb((fn(key), coeff) for key, coeff in self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "LinComb(0)"
        body = " + ".join("%s*%r" % (coeff, key) for key, coeff in sorted(self.terms.items(), key=lambda kv: _sort_token(kv[0])))
        return "LinComb(%s)" % body


def _sort_token(key):
    # keys of one space are homogeneous; repr only needs a stable order
    return repr(key)


def lincomb_combine(a: LinComb, b: LinComb, s, t) -> LinComb:
    """Return s*a + t*b with zero coefficients pruned."""
    return frac(s) * a + frac(t) * b


@dataclass
class Membership:
    """Answer of a row-space membership query.

    When inside, certificate is a LinComb over *input row indices* whose
    combination reproduces the query exactly.  Otherwise residual is the
    fully reduced nonzero remainder.
    """

    inside: bool
    certificate: LinComb | None
    residual: LinComb | None


class RowSpace:
    """Fully reduced row echelon span of a sequence of LinComb rows.

    Pivot selection takes the smallest basis key of a row in the ambient
    total order, so the reduced basis is deterministic given the input
    order.  Each stored row has pivot coefficient 1 and is zero in every
    other pivot column.  Treat instances as immutable once built.
    """

    def __init__(self, rows: Iterable[LinComb] = (), track: bool = True):
        self._rows: dict = {}      # pivot key -> reduced row
        self._history: dict = {}   # pivot key -> LinComb over input indices
        self._track = track
        self.n_inputs = 0
        for row in rows:
            self._insert(row)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivots(self) -> list:
        return sorted(self._rows)

    def rows(self) -> list[LinComb]:
        """Reduced rows ordered by increasing pivot key."""
        return [self._rows[p] for p in sorted(self._rows)]

    def _insert(self, row: LinComb) -> None:
        index = self.n_inputs
        self.n_inputs += 1
        residual, combo = self._split(row)
        if not residual:
            return
        pivot = min(residual.terms)
        lead = residual.terms[pivot]
        normalized = (1 / lead) * residual
        if self._track:
            hist = LinComb.single(index)
            for pkey, coeff in combo.items():
                hist = hist - coeff * self._history[pkey]
            hist = (1 / lead) * hist
        # keep the reduced invariant: clear the new pivot column everywhere
        for pkey in list(self._rows):
            existing = self._rows[pkey]
            coeff = existing.terms.get(pivot)
            if coeff:
                self._rows[pkey] = existing - coeff * normalized
                if self._track:
                    self._history[pkey] = self._history[pkey] - coeff * hist
        self._rows[pivot] = normalized
        if self._track:
            self._history[pivot] = hist

    def _split(self, v: LinComb):
        """Reduce v against the stored rows.

        Returns (residual, combo) where combo maps pivot keys to the
        coefficients used, so v == residual + sum(combo[p] * row[p]).
        A single pass is enough because stored rows are fully reduced.
        """
        combo: dict = {}
        out = dict(v.terms)
        for key in [k for k in v.terms if k in self._rows]:
            coeff = out.get(key)
            if not coeff:
                combo.setdefault(key, Fraction(0))
                continue
            combo[key] = coeff
            for rkey, rcoeff in self._rows[key].terms.items():
                acc = out.get(rkey, 0) - coeff * rcoeff
                if acc:
                    out[rkey] = acc
                else:
                    out.pop(rkey, None)
        residual = LinComb()
        residual.terms = out
        return residual, combo

    def reduce(self, v: LinComb) -> LinComb:
        """Normal form of v modulo the span (the reduced residual)."""
        return self._split(v)[0]

    def membership(self, v: LinComb) -> Membership:
        residual, combo = self._split(v)
        if residual:
            return Membership(False, None, residual)
        if not self._track:
            return Membership(True, None, None)
        certificate = LinComb.zero()
        for pkey, coeff in combo.items():
            certificate = certificate + coeff * self._history[pkey]
        return Membership(True, certificate, None)


def row_reduce(rows: Iterable[LinComb], track: bool = True) -> RowSpace:
    """Deterministic exact reduced row echelon form of the given rows."""
    return RowSpace(rows, track=track)


class OrderMismatch(ValueError):
    """Raised when combining truncated series of different orders."""


class TruncSeries:
    """Coefficients c_0..c_p of a formal series, arithmetic mod nu^(p+1).

    The coefficient type only needs + and scalar * for the generic
    operations used here; products are formed through an explicit
    bilinear callback.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a truncated series needs at least the order-0 coefficient")
        self.coeffs = coeffs

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return "TruncSeries(%r)" % (self.coeffs,)

    def map(self, fn: Callable) -> "TruncSeries":
        return TruncSeries(fn(c) for c in self.coeffs)

    def zip_with(self, other: "TruncSeries", fn: Callable) -> "TruncSeries":
        if self.order != other.order:
            raise OrderMismatch("series orders differ: %d vs %d" % (self.order, other.order))
        return TruncSeries(fn(a, b) for a, b in zip(self.coeffs, other.coeffs))

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise OrderMismatch("cannot extend order %d to %d" % (self.order, order))
        return TruncSeries(self.coeffs[: order + 1])


def series_multiply(a: TruncSeries, b: TruncSeries, mul: Callable) -> TruncSeries:
    """Cauchy product truncated at the common order.

    mul(x, y) must be bilinear in the coefficient space; sums are taken
    with the coefficients' own + operator.
    """
    if a.order != b.order:
        raise OrderMismatch("series orders differ: %d vs %d" % (a.order, b.order))
    out = []
    for n in range(a.order + 1):
        terms = [mul(a.coeffs[i], b.coeffs[n - i]) for i in range(n + 1)]
        total = terms[0]
        for t in terms[1:]:
            total = total + t
        out.append(total)
    return TruncSeries(out)
