"""The free Hom-associative algebra on one generator.

The ambient space 𝕋 is spanned by the unit 𝟙 and all leaf-weighted
trees; grafting is the product and adding one to every weight is the
structure map α.  Dividing by the two-sided ideal I generated by

    (φ∨ψ)∨α(χ) − α(φ)∨(ψ∨χ)

yields the free Hom-associative algebra with one generator.  This
module implements the Hom-Hopf structure on 𝕋 (coproduct by leaf-subset
restriction, counit, antipode by signed mirror) and a complete equality
oracle for the quotient.

The oracle rests on a grading.  Assign each leaf the value s_i =
weight_i + depth_i.  Both sides of the ideal generator have the same
per-leaf s-values, and every grafting context and every application of
α preserves that homogeneity, so I splits as a direct sum over the
classes (leaf count, s-signature).  Each class is finite dimensional:
its basis trees are the shapes whose depths fit under the signature,
with the weights then forced.  Membership of a class component in the
span of the in-class relation rows is therefore a complete decision
procedure, no escalation involved.

The relation rows themselves are the single-node rewrites: for a basis
tree t and an internal node carrying (A∨B)∨C with every weight of C at
least 1, the row is t minus the tree where that subtree is replaced by
α(A)∨(B∨C↓), C↓ lowering each weight by one.  Spanning the whole ideal
with these rows is exactly the statement that contexts map generator
instances to such pairs and that α maps generator instances to
generator instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from .linalg import LinComb, RowSpace, TruncSeries, frac
from .trees import (
    UNIT,
    Leaf,
    Node,
    alpha_shift,
    enumerate_class,
    graft,
    is_unit,
    leaf_count,
    mirror,
    parse,
    restrict,
    s_signature,
    to_text,
    weights_of,
)

# A TreePoly is a LinComb whose keys are canonical codec strings.
TreePoly = LinComb


class DomainError(ValueError):
    """An argument outside the defined domain of an algebraic operation."""


def unit_poly() -> TreePoly:
    return LinComb.single("1")


def tree_poly(element) -> TreePoly:
    """Wrap a single tree (or the unit, or a codec string) as a TreePoly."""
    if isinstance(element, str):
        return LinComb.single(to_text(parse(element)))
    return LinComb.single(to_text(element))


def graft_poly(a: TreePoly, b: TreePoly) -> TreePoly:
    """Bilinear extension of grafting; keys that collide merge."""
    out = []
    for ka, ca in a.items():
        ta = parse(ka)
        for kb, cb in b.items():
            out.append((to_text(graft(ta, parse(kb))), ca * cb))
    return LinComb(out)


def alpha_poly(p: TreePoly, k: int = 1) -> TreePoly:
    return p.map_keys(lambda key: to_text(alpha_shift(parse(key), k)))


def coproduct(p: TreePoly) -> LinComb:
    """Δ as a LinComb over (left text, right text) pairs.

    On a basis tree the coproduct is the sum over all ways to split the
    leaf set: Δφ = Σ φ_I ⊗ φ_J with J the complement of I.  Restriction
    shifts surviving weights through the unit rule, so the terms are
    again basis elements.  Δ𝟙 = 𝟙⊗𝟙.
    """
    out = []
    for key, coeff in p.items():
        t = parse(key)
        if is_unit(t):
            out.append((("1", "1"), coeff))
            continue
        n = leaf_count(t)
        positions = range(1, n + 1)
        for mask in range(2 ** n):
            keep = [i for i in positions if mask & (1 << (i - 1))]
            left = restrict(t, keep)
            right = restrict(t, [i for i in positions if i not in set(keep)])
            out.append(((to_text(left), to_text(right)), coeff))
    return LinComb(out)


def counit(p: TreePoly) -> Fraction:
    return p.coeff("1")


def antipode(p: TreePoly) -> TreePoly:
    """S: 𝟙 fixed, a basis tree goes to (−1)^n times its mirror."""
    out = []
    for key, coeff in p.items():
        t = parse(key)
        if is_unit(t):
            out.append(("1", coeff))
        else:
            sign = (-1) ** leaf_count(t)
            out.append((to_text(mirror(t)), sign * coeff))
    return LinComb(out)


def class_of(key: str) -> tuple:
    """Grading key of a basis element: (leaf count, s-signature); 𝟙 ↦ (0, ())."""
    t = parse(key)
    if is_unit(t):
        return (0, ())
    return (leaf_count(t), s_signature(t))


def graded_decompose(p: TreePoly) -> dict:
    """Partition the terms of p by (leaf count, s-signature)."""
    buckets: dict = {}
    for key, coeff in p.items():
        cls = class_of(key)
        bucket = buckets.setdefault(cls, [])
        bucket.append((key, coeff))
    return {cls: LinComb(pairs) for cls, pairs in buckets.items()}


def _rewrites(t: Node) -> list:
    """All single-node Hom-associativity rewrites of t.

    A node carrying (A∨B)∨C with min weight of C ≥ 1 may be replaced by
    α(A)∨(B∨C↓).  Returns the full rewritten trees.
    """
    results = []

    def walk(node, rebuild):
        if isinstance(node, Leaf):
            return
        if isinstance(node.left, Node) and min(weights_of(node.right)) >= 1:
            a, b = node.left.left, node.left.right
            replacement = Node(alpha_shift(a), Node(b, alpha_shift(node.right, -1)))
            results.append(rebuild(replacement))
        walk(node.left, lambda r, node=node, rebuild=rebuild: rebuild(Node(r, node.right)))
        walk(node.right, lambda r, node=node, rebuild=rebuild: rebuild(Node(node.left, r)))

    walk(t, lambda r: r)
    return results


@dataclass
class GradedClassContext:
    """Everything needed to decide equality within one graded class."""

    n: int
    signature: tuple
    basis: tuple
    row_sources: tuple  # (tree text, rewritten text) per relation row, in input order
    space: RowSpace


@lru_cache(maxsize=None)
def class_context(n: int, signature: tuple) -> GradedClassContext:
    if n == 0:
        if signature != ():
            raise ValueError("the unit class has the empty signature")
        return GradedClassContext(0, (), ("1",), (), RowSpace())
    basis = tuple(to_text(t) for t in enumerate_class(n, signature))
    sources = []
    rows = []
    for text in basis:
        t = parse(text)
        for rewritten in _rewrites(t):
            rtext = to_text(rewritten)
            sources.append((text, rtext))
            rows.append(LinComb({text: 1, rtext: -1}))
    return GradedClassContext(n, tuple(signature), basis, tuple(sources), RowSpace(rows))


@lru_cache(maxsize=None)
def _nf_key(key: str) -> LinComb:
    cls = class_of(key)
    ctx = class_context(*cls)
    return ctx.space.reduce(LinComb.single(key))


def normal_form(p: TreePoly) -> TreePoly:
    """Canonical representative modulo I: per-class reduced residual."""
    out = LinComb.zero()
    for key, coeff in p.items():
        out = out + coeff * _nf_key(key)
    return out


class QuotientElement:
    """An element of the quotient, compared through class residuals."""

    def __init__(self, representative: TreePoly):
        self.representative = representative
        reduced = graded_decompose(normal_form(representative))
        self.residuals = {cls: comp for cls, comp in reduced.items() if comp}

    @property
    def normal_form(self) -> TreePoly:
        out = LinComb.zero()
        for comp in self.residuals.values():
            out = out + comp
        return out

    def __eq__(self, other):
        if not isinstance(other, QuotientElement):
            return NotImplemented
        return self.residuals == other.residuals

    def __hash__(self):
        return hash(frozenset((cls, comp) for cls, comp in self.residuals.items()))

    def __bool__(self):
        return bool(self.residuals)

    def __repr__(self):
        return "QuotientElement(%s)" % format_poly(self.normal_form)


@dataclass
class TreeEquality:
    """Verdict of the quotient oracle.

    When equal, certificates maps each graded class of the difference to
    a LinComb over that class's relation-row indices (see
    GradedClassContext.row_sources) recombining the component exactly.
    When not equal, witness_class and residual exhibit one class where
    the difference falls outside the relation span.
    """

    equal: bool
    certificates: Optional[dict] = None
    witness_class: Optional[tuple] = None
    residual: Optional[LinComb] = None


def equal_mod_I(a: TreePoly, b: TreePoly) -> TreeEquality:
    """Decide a = b in the quotient.  Complete: classes are finite."""
    certificates: dict = {}
    for cls, comp in sorted(graded_decompose(a - b).items()):
        ctx = class_context(*cls)
        answer = ctx.space.membership(comp)
        if not answer.inside:
            return TreeEquality(False, None, cls, answer.residual)
        certificates[cls] = answer.certificate
    return TreeEquality(True, certificates)


def is_zero_mod_I(p: TreePoly) -> bool:
    return not normal_form(p)


# --------------------------------------------------------------------------
# tensor square


def tensor(a: TreePoly, b: TreePoly) -> LinComb:
    return LinComb(
        (((ka, kb), ca * cb)) for ka, ca in a.items() for kb, cb in b.items()
    )


def tensor_graft(u: LinComb, v: LinComb) -> LinComb:
    """(x⊗y)∨(x'⊗y') = (x∨x')⊗(y∨y'), extended bilinearly."""
    out = []
    for (xa, ya), cu in u.items():
        ta, sa = parse(xa), parse(ya)
        for (xb, yb), cv in v.items():
            key = (to_text(graft(ta, parse(xb))), to_text(graft(sa, parse(yb))))
            out.append((key, cu * cv))
    return LinComb(out)


def reduce_tensor(t: LinComb) -> LinComb:
    """Normal form in (𝕋/I)⊗(𝕋/I): reduce both factors of every term.

    Exact because the tensor-square ideal is I⊗𝕋 + 𝕋⊗I, whose quotient
    is spanned by pairs of class normal forms.
    """
    out = []
    for (lk, rk), coeff in t.items():
        for la, ca in _nf_key(lk).items():
            for rb, cb in _nf_key(rk).items():
                out.append(((la, rb), coeff * ca * cb))
    return LinComb(out)


def is_primitive(p: TreePoly) -> bool:
    """Whether Δp = p⊗𝟙 + 𝟙⊗p holds modulo I⊗𝕋 + 𝕋⊗I."""
    d = coproduct(p)
    for key, coeff in p.items():
        d = d + LinComb([((key, "1"), -coeff), (("1", key), -coeff)])
    return not reduce_tensor(d)


# --------------------------------------------------------------------------
# k-weighted products and series realizations


def k_weighted(t, k: int) -> TreePoly:
    """φ[k]: put weight k−1−depth_i on leaf i.  Needs k > max depth."""
    if is_unit(t):
        return unit_poly()
    from .trees import depths, with_weights

    d = depths(t)
    if k - 1 < max(d):
        raise DomainError("k=%d is too small for a tree of depth %d" % (k, max(d)))
    return tree_poly(with_weights(t, [k - 1 - di for di in d]))


def right_fern(n: int) -> Node:
    if n < 2:
        raise ValueError("a fern needs at least 2 leaves")
    t = Leaf(0)
    for _ in range(n - 1):
        t = Node(Leaf(0), t)
    return t


def left_fern(n: int) -> Node:
    if n < 2:
        raise ValueError("a fern needs at least 2 leaves")
    t = Leaf(0)
    for _ in range(n - 1):
        t = Node(t, Leaf(0))
    return t


def nary_product(n: int, k: int) -> TreePoly:
    """⌊e^n⌋_k as its right-fern representative; ⌊e^0⌋_k is 𝟙.

    Every other n-tree weighted the same way is equal to it modulo I
    (the indifference property), so a single representative suffices.
    """
    if n < 0:
        raise DomainError("n must be non-negative, got %d" % n)
    if n > k:
        raise DomainError("the k-weighted n-ary product needs n <= k, got n=%d > k=%d" % (n, k))
    if n == 0:
        return unit_poly()
    if n == 1:
        return tree_poly(Leaf(k - 1))
    return k_weighted(right_fern(n), k)


def is_fern(t) -> bool:
    """Every internal node is adjacent to at least one leaf."""
    if is_unit(t) or isinstance(t, Leaf):
        return True
    if isinstance(t.left, Leaf) or isinstance(t.right, Leaf):
        return is_fern(t.left) and is_fern(t.right)
    return False


def realize_series(f: TruncSeries, p: int) -> TruncSeries:
    """f̂_p(ν) = a_0·𝟙 + Σ_{i≥1} a_i ν^i ⌊e^i⌋_p, as quotient elements."""
    if p < 1:
        raise DomainError("realization needs p >= 1, got %d" % p)
    if f.order > p:
        raise DomainError("series order %d exceeds the weight parameter p=%d" % (f.order, p))
    coeffs = []
    for i, a in enumerate(f.coeffs):
        coeffs.append(QuotientElement(frac(a) * nary_product(i, p)))
    return TruncSeries(coeffs)


def exp_taylor(s, order: int) -> TruncSeries:
    s = frac(s)
    return TruncSeries(s ** i / math.factorial(i) for i in range(order + 1))


def exp_hat(s, p: int) -> TruncSeries:
    """exp̂_p(s): the order-p realization of exp(sν)."""
    return realize_series(exp_taylor(s, p), p)


# --------------------------------------------------------------------------
# convolution and the invertibility index


def identity_op(p: TreePoly) -> TreePoly:
    return p


def eta_eps(p: TreePoly) -> TreePoly:
    return counit(p) * unit_poly()


def alpha_op(p: TreePoly) -> TreePoly:
    return alpha_poly(p)


def convolve(f: Callable, g: Callable) -> Callable:
    """f⋆g = ∨∘(f⊗g)∘Δ on linear endo-operators of 𝕋."""

    def star(p: TreePoly) -> TreePoly:
        out = LinComb.zero()
        for (lk, rk), coeff in coproduct(p).items():
            out = out + coeff * graft_poly(f(LinComb.single(lk)), g(LinComb.single(rk)))
        return out

    return star


def gamma_twist(f: Callable) -> Callable:
    """γ(f) = α∘f (the second twist slot is the identity here)."""

    def twisted(p: TreePoly) -> TreePoly:
        return alpha_poly(f(p))

    return twisted


@dataclass
class IndexSearch:
    """Result of the invertibility-index search."""

    found: bool
    index: Optional[int]
    searched_up_to: int


def _antipode_defects(p: TreePoly) -> tuple:
    """(S⋆id)(p) − ηε(p) and (id⋆S)(p) − ηε(p)."""
    target = eta_eps(p)
    left = convolve(antipode, identity_op)(p) - target
    right = convolve(identity_op, antipode)(p) - target
    return left, right


def invertibility_index(g, max_k: int = 8) -> IndexSearch:
    """Smallest k with α^k((S⋆id)x − ηε(x)) = 0 = α^k((id⋆S)x − ηε(x)) mod I.

    Accepts a TreePoly, a QuotientElement, or a TruncSeries of either;
    for a series the conditions are imposed per ν-coefficient, and the
    answer is the smallest uniform k (the per-coefficient condition is
    monotone in k because α maps the ideal into itself).
    """
    if isinstance(g, TruncSeries):
        polys = [c.representative if isinstance(c, QuotientElement) else c for c in g.coeffs]
    elif isinstance(g, QuotientElement):
        polys = [g.representative]
    else:
        polys = [g]
    defects = []
    for p in polys:
        defects.extend(_antipode_defects(p))
    best = 0
    for d in defects:
        k = 0
        while not is_zero_mod_I(d):
            if k >= max_k:
                return IndexSearch(False, None, max_k)
            d = alpha_poly(d)
            k += 1
        best = max(best, k)
    return IndexSearch(True, best, max_k)


def u_element() -> TreePoly:
    """A primitive element killed by α but itself nonzero in the quotient."""
    return LinComb({"((0 1) (1 0))": 1, "(1 ((0 0) 0))": -1})


# --------------------------------------------------------------------------
# linear-combination text format


def format_poly(p: TreePoly) -> str:
    """`coef*tree` terms joined by +/-; coefficient omitted when 1.

    The zero polynomial prints as "0*1" (a bare "0" already denotes the
    weight-0 one-leaf tree).
    """
    if not p:
        return "0*1"
    parts = []
    for key in p.support():
        coeff = p.coeff(key)
        mag = abs(coeff)
        body = key if mag == 1 else "%s*%s" % (mag, key)
        if not parts:
            parts.append(body if coeff > 0 else "-" + body)
        else:
            parts.append(("+ " if coeff > 0 else "- ") + body)
    return " ".join(parts)


def parse_poly(text: str) -> TreePoly:
    """Inverse of format_poly; accepts any +/- separated `coef*tree` list.

    Tree texts contain no '+', '-' or '*', so those characters split and
    scale terms unambiguously; a leading '-' negates the first term.
    """
    from .trees import ParseError

    terms = []
    i = 0
    first = True
    while i < len(text):
        while i < len(text) and text[i] == " ":
            i += 1
        if i >= len(text):
            break
        sign = 1
        if text[i] in "+-":
            if text[i] == "-":
                sign = -1
            i += 1
        elif not first:
            raise ParseError("expected '+' or '-' between terms", i)
        while i < len(text) and text[i] == " ":
            i += 1
        start = i
        while i < len(text) and text[i] not in "+-":
            i += 1
        chunk = text[start:i].strip()
        if not chunk:
            raise ParseError("missing term", start)
        if "*" in chunk:
            coef_text, _, tree_text = chunk.partition("*")
            try:
                coeff = Fraction(coef_text.strip())
            except (ValueError, ZeroDivisionError):
                raise ParseError("bad coefficient %r" % coef_text.strip(), start) from None
            tree_text = tree_text.strip()
        else:
            coeff = Fraction(1)
            tree_text = chunk
        element = parse(tree_text)
        terms.append((to_text(element), sign * coeff))
        first = False
    if first:
        raise ParseError("empty expression", 0)
    return LinComb(terms)
