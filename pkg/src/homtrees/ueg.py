"""Universal enveloping algebra of a Hom-Lie algebra.

Trees now carry decorations: each leaf names a basis element of a fixed
Hom-Lie algebra.  Weights never survive construction; a leaf of weight
w decorated by x is absorbed into weight 0 decorated by α^w(x),
expanded multilinearly over the algebra basis, so every stored key is a
zero-weight decorated tree (or the unit).

The enveloping quotient divides by two row families:

  R1 (Hom-associativity): for a basis tree t and an internal node whose
     left child is internal, carrying (A∨B)∨C, the row is
     t[v → (A∨B)∨C^α] − t[v → A^α∨(B∨C)], where X^α pushes every
     decoration of X through the α matrix.
  R2 (bracket): for a node with two leaf children decorated x and y,
     the row is t − t[v → leaves swapped] − t[v → leaf([x,y])], the
     bracket expanded in the basis.  These rows mix leaf counts.

Because R2 lowers leaf counts there is no finite grading, so equality
is a level-bounded semi-decision: membership of a difference in the row
span over all basis trees with at most N leaves.  A positive answer is
a proof (the certificate recombines the difference from relation rows);
a negative answer only says "not provable at level N" and callers may
escalate N within a cap.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Optional

from .homlie import HomLieAlgebra, HomLieMorphism, validate_morphism
from .linalg import LinComb, RowSpace, TruncSeries
from .trees import (
    Leaf,
    Node,
    decorations_of,
    enumerate_shapes,
    is_unit,
    leaf_count,
    mirror,
    parse,
    restrict,
    to_text,
    weights_of,
    with_weights,
)

UPoly = LinComb

DEFAULT_BASIS_CAP = 8000
DEFAULT_SLACK = 1
DEFAULT_ESCALATION_CAP = 6


class ResourceLimit(RuntimeError):
    """A level context would exceed the configured basis-size cap."""


class MorphismInvalid(ValueError):
    """ue_map requires a valid Hom-Lie morphism."""


def unit_upoly() -> UPoly:
    return LinComb.single("1")


def decorate_expand(g: HomLieAlgebra, t, vectors) -> UPoly:
    """Decorated tree from per-leaf coordinate vectors, weights absorbed.

    t is a tree whose shape is used; vectors is one coordinate tuple per
    leaf (left to right).  Each leaf of weight w contributes α^w of its
    vector, and the whole thing expands multilinearly into basis-named
    zero-weight trees.
    """
    if is_unit(t):
        return unit_upoly()
    ws = weights_of(t)
    if len(vectors) != len(ws):
        raise ValueError("expected %d leaf vectors, got %d" % (len(ws), len(vectors)))
    vecs = [g.apply_alpha(tuple(v), w) for v, w in zip(vectors, ws)]
    shape = t
    out = []
    for combo in product(*(range(g.dim) for _ in vecs)):
        coeff = Fraction(1)
        for vec, idx in zip(vecs, combo):
            coeff *= vec[idx]
            if not coeff:
                break
        if not coeff:
            continue
        decorated = with_weights(shape, [0] * len(ws), [g.basis[i] for i in combo])
        out.append((to_text(decorated), coeff))
    return LinComb(out)


def absorb_weights(g: HomLieAlgebra, t) -> UPoly:
    """Weighted decorated tree → UPoly with all weights pushed into α powers."""
    if is_unit(t):
        return unit_upoly()
    names = decorations_of(t)
    if any(n is None for n in names):
        raise ValueError("absorb_weights needs a decoration on every leaf")
    vectors = [g.basis_vector(g.index_of(n)) for n in names]
    return decorate_expand(g, t, vectors)


def absorb_poly(g: HomLieAlgebra, p: LinComb) -> UPoly:
    out = LinComb.zero()
    for key, coeff in p.items():
        out = out + coeff * absorb_weights(g, parse(key))
    return out


def alpha_U(g: HomLieAlgebra, p: UPoly) -> UPoly:
    """The structure map: every decoration through α (leaf counts kept)."""
    out = LinComb.zero()
    for key, coeff in p.items():
        t = parse(key)
        if is_unit(t):
            out = out + coeff * unit_upoly()
            continue
        vectors = [g.apply_alpha(g.basis_vector(g.index_of(n))) for n in decorations_of(t)]
        out = out + coeff * decorate_expand(g, t, vectors)
    return out


def graft_U(g: HomLieAlgebra, a: UPoly, b: UPoly) -> UPoly:
    """Bilinear grafting; unit factors act through α via weight absorption."""
    from .trees import graft

    out = LinComb.zero()
    for ka, ca in a.items():
        ta = parse(ka)
        for kb, cb in b.items():
            joined = graft(ta, parse(kb))
            piece = unit_upoly() if is_unit(joined) else absorb_weights(g, joined)
            out = out + (ca * cb) * piece
    return out


def coproduct_U(g: HomLieAlgebra, p: UPoly) -> LinComb:
    """Δ over (left text, right text) pairs; restriction weights absorbed."""
    out = LinComb.zero()
    for key, coeff in p.items():
        t = parse(key)
        if is_unit(t):
            out = out + LinComb({("1", "1"): coeff})
            continue
        n = leaf_count(t)
        for mask in range(2 ** n):
            keep = [i for i in range(1, n + 1) if mask & (1 << (i - 1))]
            drop = [i for i in range(1, n + 1) if not mask & (1 << (i - 1))]
            left = restrict(t, keep)
            right = restrict(t, drop)
            lp = absorb_weights(g, left) if not is_unit(left) else unit_upoly()
            rp = absorb_weights(g, right) if not is_unit(right) else unit_upoly()
            for lk, lc in lp.items():
                for rk, rc in rp.items():
                    out = out + LinComb({(lk, rk): coeff * lc * rc})
    return out


def counit_U(p: UPoly) -> Fraction:
    return p.coeff("1")


def antipode_U(p: UPoly) -> UPoly:
    """Signed mirror; decorations ride along, no α involved."""
    out = []
    for key, coeff in p.items():
        t = parse(key)
        if is_unit(t):
            out.append(("1", coeff))
        else:
            out.append((to_text(mirror(t)), (-1) ** leaf_count(t) * coeff))
    return LinComb(out)


def tensor_U(a: UPoly, b: UPoly) -> LinComb:
    return LinComb((((ka, kb), ca * cb)) for ka, ca in a.items() for kb, cb in b.items())


# --------------------------------------------------------------------------
# level contexts


def _all_decorated(g: HomLieAlgebra, n: int):
    for shape in enumerate_shapes(n):
        for combo in product(g.basis, repeat=n):
            yield with_weights(shape, [0] * n, combo)


def _nodes_with_paths(t):
    """Preorder list of (path, subtree) for internal nodes; path is a tuple of 0/1."""
    found = []

    def walk(node, path):
        if isinstance(node, Leaf):
            return
        found.append((path, node))
        walk(node.left, path + (0,))
        walk(node.right, path + (1,))

    walk(t, ())
    return found


def _replace(t, path, replacement):
    if not path:
        return replacement
    if path[0] == 0:
        return Node(_replace(t.left, path[1:], replacement), t.right)
    return Node(t.left, _replace(t.right, path[1:], replacement))


def _alpha_subtree(g: HomLieAlgebra, sub):
    """Subtree with α on all its decorations, as (tree, coefficient) pairs."""
    vectors = [g.apply_alpha(g.basis_vector(g.index_of(n))) for n in decorations_of(sub)]
    out = []
    for combo in product(*(range(g.dim) for _ in vectors)):
        coeff = Fraction(1)
        for vec, idx in zip(vectors, combo):
            coeff *= vec[idx]
            if not coeff:
                break
        if not coeff:
            continue
        out.append((with_weights(sub, [0] * len(vectors), [g.basis[i] for i in combo]), coeff))
    return out


@dataclass(frozen=True, eq=False)
class LevelContext:
    g: HomLieAlgebra
    level: int
    basis: tuple
    row_sources: tuple  # ("R1"|"R2", base tree text, node path) per row
    space: RowSpace

    def reduce(self, p: UPoly) -> UPoly:
        return self.space.reduce(p)

    def membership(self, p: UPoly):
        return self.space.membership(p)


def relation_rows_for(g: HomLieAlgebra, t):
    """All (row, source) relation instances anchored at nodes of one tree.

    Sources are ("R1"|"R2", tree text, node path) triples; feeding the
    same tree back in regenerates identical rows, which is what lets a
    membership certificate be replayed against its level context.
    """
    text = to_text(t)
    out = []
    for path, node in _nodes_with_paths(t):
        if isinstance(node.left, Node):
            # R1: (A v B) v C^alpha  =  A^alpha v (B v C)
            a = node.left.left
            b = node.left.right
            c = node.right
            row = LinComb.zero()
            for sub, coeff in _alpha_subtree(g, c):
                row = row + LinComb({to_text(_replace(t, path, Node(node.left, sub))): coeff})
            for sub, coeff in _alpha_subtree(g, a):
                row = row - LinComb({to_text(_replace(t, path, Node(sub, Node(b, c)))): coeff})
            if row:
                out.append((row, ("R1", text, path)))
        if isinstance(node.left, Leaf) and isinstance(node.right, Leaf):
            xi = g.index_of(node.left.name)
            yi = g.index_of(node.right.name)
            if xi >= yi:
                continue  # the swapped tree contributes the same row
            row = LinComb({text: 1, to_text(_replace(t, path, Node(node.right, node.left))): -1})
            bracket = g.brackets[xi][yi]
            for k, coeff in enumerate(bracket):
                if coeff:
                    row = row - coeff * LinComb({to_text(_replace(t, path, Leaf(0, g.basis[k]))): 1})
            out.append((row, ("R2", text, path)))
    return out


_level_cache: dict = {}
_level_cache_lock = threading.Lock()


def build_level(g: HomLieAlgebra, level: int, cap: int = DEFAULT_BASIS_CAP) -> LevelContext:
    """All relation rows over decorated trees with at most `level` leaves."""
    if level < 1:
        raise ValueError("level must be at least 1")
    with _level_cache_lock:
        cached = _level_cache.get((g, level, cap))
    if cached is not None:
        return cached
    size = sum(len(enumerate_shapes(n)) * g.dim ** n for n in range(1, level + 1))
    if size > cap:
        raise ResourceLimit(
            "level %d over a %d-dimensional algebra needs %d basis trees (cap %d)"
            % (level, g.dim, size, cap)
        )
    basis = []
    rows = []
    sources = []
    for n in range(1, level + 1):
        for t in _all_decorated(g, n):
            text = to_text(t)
            basis.append(text)
            for row, source in relation_rows_for(g, t):
                rows.append(row)
                sources.append(source)
    ctx = LevelContext(g, level, tuple(basis), tuple(sources), RowSpace(rows))
    with _level_cache_lock:
        _level_cache[(g, level, cap)] = ctx
    return ctx


@dataclass
class UEquality:
    """Level-stamped verdict: Equal is a proof, the negative is bounded."""

    equal: bool
    level: int
    certificate: Optional[LinComb] = None
    residual: Optional[LinComb] = None


def max_leaves(p: UPoly) -> int:
    worst = 0
    for key in p.terms:
        t = parse(key)
        if not is_unit(t):
            worst = max(worst, leaf_count(t))
    return worst


def equal_mod_U(g: HomLieAlgebra, a: UPoly, b: UPoly, level: int, cap: int = DEFAULT_BASIS_CAP) -> UEquality:
    diff = a - b
    need = max_leaves(diff)
    if need > level:
        raise ValueError("operands have %d-leaf terms, above level %d" % (need, level))
    ctx = build_level(g, level, cap)
    answer = ctx.membership(diff)
    if answer.inside:
        return UEquality(True, level, certificate=answer.certificate)
    return UEquality(False, level, residual=answer.residual)


def equal_mod_U_auto(
    g: HomLieAlgebra,
    a: UPoly,
    b: UPoly,
    slack: int = DEFAULT_SLACK,
    escalation_cap: int = DEFAULT_ESCALATION_CAP,
    cap: int = DEFAULT_BASIS_CAP,
) -> UEquality:
    """Start at (max leaf count + slack) and escalate on negative verdicts."""
    level = max(1, max_leaves(a - b)) + slack
    verdict = equal_mod_U(g, a, b, level, cap)
    while not verdict.equal and level < escalation_cap:
        level += 1
        verdict = equal_mod_U(g, a, b, level, cap)
    return verdict


def is_zero_mod_U(g: HomLieAlgebra, p: UPoly, level: int, cap: int = DEFAULT_BASIS_CAP) -> bool:
    if not p:
        return True
    return equal_mod_U(g, p, LinComb.zero(), level, cap).equal


# --------------------------------------------------------------------------
# convolution, primitives, index


def eta_eps_U(p: UPoly) -> UPoly:
    return counit_U(p) * unit_upoly()


def convolution(g: HomLieAlgebra, f: Callable, h: Callable, p: UPoly) -> UPoly:
    """(f⋆h)(p) = ∨∘(f⊗h)∘Δ(p), the second twist slot fixed to the identity."""
    out = LinComb.zero()
    for (lk, rk), coeff in coproduct_U(g, p).items():
        out = out + coeff * graft_U(g, f(LinComb.single(lk)), h(LinComb.single(rk)))
    return out


@dataclass
class IndexSearchU:
    found: bool
    index: Optional[int]
    searched_up_to: int
    level: int


def invertibility_index_U(
    g: HomLieAlgebra,
    p,
    max_k: int = 8,
    slack: int = DEFAULT_SLACK,
    cap: int = DEFAULT_BASIS_CAP,
) -> IndexSearchU:
    """Smallest k with α^k((S⋆id)x − ηε(x)) and the (id⋆S) twin provably zero.

    Accepts a UPoly or a TruncSeries of UPoly; for a series the
    conditions are imposed on every ν-coefficient.  The proof level is
    the defect's leaf count plus slack; a NotFound answer is therefore
    doubly bounded (by max_k and by the level).
    """
    polys = list(p.coeffs) if isinstance(p, TruncSeries) else [p]
    defects = []
    for q in polys:
        target = eta_eps_U(q)
        defects.append(convolution(g, antipode_U, lambda x: x, q) - target)
        defects.append(convolution(g, lambda x: x, antipode_U, q) - target)
    best = 0
    for d in defects:
        if not d:
            continue
        level = max(1, max_leaves(d)) + slack
        k = 0
        while not is_zero_mod_U(g, d, level, cap):
            if k >= max_k:
                return IndexSearchU(False, None, max_k, level)
            d = alpha_U(g, d)
            k += 1
        best = max(best, k)
    level = max((max(1, max_leaves(d)) + slack) for d in defects) if defects else 1
    return IndexSearchU(True, best, max_k, level)


def reduce_tensor_U(g: HomLieAlgebra, t: LinComb, level: int, cap: int = DEFAULT_BASIS_CAP) -> LinComb:
    """Componentwise reduction of a tensor over the level-N row span."""
    ctx = build_level(g, level, cap)
    nf_cache: dict = {}

    def nf(key: str) -> UPoly:
        hit = nf_cache.get(key)
        if hit is None:
            hit = ctx.reduce(LinComb.single(key))
            nf_cache[key] = hit
        return hit

    out = LinComb.zero()
    for (lk, rk), coeff in t.items():
        for la, ca in nf(lk).items():
            for rb, cb in nf(rk).items():
                out = out + LinComb({(la, rb): coeff * ca * cb})
    return out


def is_primitive_U(g: HomLieAlgebra, p: UPoly, level: Optional[int] = None, cap: int = DEFAULT_BASIS_CAP) -> bool:
    """Δp = p⊗𝟙 + 𝟙⊗p modulo (ideal)⊗𝕋 + 𝕋⊗(ideal) at the given level."""
    if level is None:
        level = max(1, max_leaves(p)) + DEFAULT_SLACK
    d = coproduct_U(g, p)
    for key, coeff in p.items():
        d = d + LinComb([((key, "1"), -coeff), (("1", key), -coeff)])
    return not reduce_tensor_U(g, d, level, cap)


def commutator_of_primitives(g: HomLieAlgebra, a: UPoly, b: UPoly) -> UPoly:
    return graft_U(g, a, b) - graft_U(g, b, a)


def hom_associator(g: HomLieAlgebra, a: UPoly, b: UPoly, c: UPoly) -> UPoly:
    return graft_U(g, graft_U(g, a, b), alpha_U(g, c)) - graft_U(g, alpha_U(g, a), graft_U(g, b, c))


# --------------------------------------------------------------------------
# functoriality and exponentials


def ue_map(m: HomLieMorphism) -> Callable:
    """Lift a Hom-Lie morphism to decorated trees: apply it to every leaf."""
    check = validate_morphism(m)
    if not check.ok:
        raise MorphismInvalid("not a Hom-Lie morphism: %s at %r" % (check.law, check.witness))
    target = m.target

    def mapped(p: UPoly) -> UPoly:
        out = LinComb.zero()
        for key, coeff in p.items():
            t = parse(key)
            if is_unit(t):
                out = out + coeff * unit_upoly()
                continue
            vectors = [m.matrix[m.source.index_of(n)] for n in decorations_of(t)]
            out = out + coeff * decorate_expand(target, t, vectors)
        return out

    return mapped


class _UExprParser:
    """Recursive descent for U𝔤 expressions.

    poly  := ['-'] term (('+'|'-') term)*
    term  := [RATIONAL '*'] tree
    tree  := '1' | WEIGHT ':' decoration | '(' tree ' '+ tree ')'
    decoration := NAME | '(' element ')'

    Decorations may be rational-linear combinations of basis names in
    parentheses; they are expanded multilinearly at parse time, and leaf
    weights are absorbed through α, so the result is a plain UPoly.
    """

    def __init__(self, g: HomLieAlgebra, text: str):
        self.g = g
        self.text = text
        self.pos = 0

    def error(self, message: str):
        from .trees import ParseError

        raise ParseError(message, self.pos)

    def skip_spaces(self):
        while self.pos < len(self.text) and self.text[self.pos] == " ":
            self.pos += 1

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def parse_poly(self) -> UPoly:
        total = LinComb.zero()
        first = True
        while True:
            self.skip_spaces()
            if self.at_end():
                break
            sign = 1
            c = self.text[self.pos]
            if c in "+-":
                if c == "-":
                    sign = -1
                self.pos += 1
            elif not first:
                self.error("expected '+' or '-' between terms")
            self.skip_spaces()
            total = total + sign * self.parse_term()
            first = False
        if first:
            self.error("empty expression")
        return total

    def parse_term(self) -> UPoly:
        coeff = Fraction(1)
        start = self.pos
        number = self._try_number()
        if number is not None:
            self.skip_spaces()
            if not self.at_end() and self.text[self.pos] == "*":
                self.pos += 1
                self.skip_spaces()
                coeff = number
            else:
                self.pos = start  # a leaf weight or the unit, not a coefficient
        if (not self.at_end() and self.text[self.pos] == "1"
                and (self.pos + 1 == len(self.text) or self.text[self.pos + 1] in " +-")):
            self.pos += 1
            return coeff * unit_upoly()
        tree, vectors = self.parse_tree()
        return coeff * decorate_expand(self.g, tree, vectors)

    def _try_number(self):
        start = self.pos
        end = self.pos
        text = self.text
        while end < len(text) and text[end].isdigit():
            end += 1
        if end == start:
            return None
        if end < len(text) and text[end] == "/":
            den_end = end + 1
            while den_end < len(text) and text[den_end].isdigit():
                den_end += 1
            if den_end == end + 1:
                self.pos = end + 1
                self.error("missing denominator")
            self.pos = den_end
            return Fraction(int(text[start:end]), int(text[end + 1:den_end]))
        self.pos = end
        return Fraction(int(text[start:end]))

    def parse_tree(self):
        self.skip_spaces()
        if self.at_end():
            self.error("expected a tree")
        c = self.text[self.pos]
        if c == "(":
            self.pos += 1
            left, lv = self.parse_tree()
            if self.at_end() or self.text[self.pos] != " ":
                self.error("expected a space between subtrees")
            right, rv = self.parse_tree()
            self.skip_spaces()
            if self.at_end() or self.text[self.pos] != ")":
                self.error("expected ')'")
            self.pos += 1
            return Node(left, right), lv + rv
        if c == "1" and (self.pos + 1 == len(self.text) or self.text[self.pos + 1] in " )+-"):
            self.error("the unit cannot appear inside a tree; write it as its own term")
        weight = self._try_number()
        if weight is None:
            self.error("expected '(', a weight, or the unit")
        if weight.denominator != 1:
            self.error("leaf weights are whole numbers")
        if self.at_end() or self.text[self.pos] != ":":
            self.error("expected ':' after a leaf weight")
        self.pos += 1
        return Leaf(int(weight)), [self.parse_decoration()]

    def parse_decoration(self):
        from .homlie import parse_element

        if self.at_end():
            self.error("expected a decoration")
        c = self.text[self.pos]
        if c == "(":
            close = self.text.find(")", self.pos)
            if close < 0:
                self.error("unclosed decoration")
            body = self.text[self.pos + 1:close]
            try:
                coords = parse_element(self.g, body)
            except (ValueError, KeyError) as exc:
                self.error("bad decoration: %s" % exc)
            self.pos = close + 1
            return coords
        start = self.pos
        if not (c.isalpha() or c == "_"):
            self.error("expected a basis name or a parenthesised element")
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        name = self.text[start:self.pos]
        try:
            return self.g.basis_vector(self.g.index_of(name))
        except KeyError:
            self.pos = start
            self.error("unknown basis symbol %r" % name)


def parse_u_poly(g: HomLieAlgebra, text: str) -> UPoly:
    """U𝔤 expression → UPoly, decorations expanded and weights absorbed."""
    parser = _UExprParser(g, text)
    return parser.parse_poly()


def u_power_product(g: HomLieAlgebra, x, i: int, p: int) -> UPoly:
    """⌊x^i⌋_p: the right fern with p-calibrated weights, every leaf x."""
    from .freehom import DomainError, right_fern
    from .trees import depths

    if i < 0:
        raise DomainError("power must be non-negative")
    if i > p:
        raise DomainError("the p-weighted power needs i <= p, got i=%d > p=%d" % (i, p))
    if i == 0:
        return unit_upoly()
    if i == 1:
        shape = Leaf(0)
    else:
        shape = right_fern(i)
    d = depths(shape)
    weighted = with_weights(shape, [p - 1 - di for di in d])
    return decorate_expand(g, weighted, [tuple(x)] * i)
