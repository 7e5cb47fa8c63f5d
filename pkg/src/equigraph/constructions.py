"""Parameterised builders for equal-energy graph pairs.

Each recipe takes two connected input graphs with the same vertex and edge
counts, a padding parameter p, and produces a pair of derived graphs whose
Laplacian (or signless-Laplacian) energies are predicted to coincide once a
threshold inequality on p holds.  The threshold compares the average degree
2m/(p+n) of the padded graph against a spectral gap of the inputs, so it is
monotone in p: once one p works, every larger p works, giving an infinite
sequence of derived pairs.

Recipes are stored as small expression trees so that the same definition
drives both graph construction (here) and rule-based spectrum prediction
(:mod:`equigraph.verify`).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from . import graphs as G
from .errors import (
    ConditionUnsatisfiable,
    Disconnected,
    MismatchedPair,
    NoClosedForm,
    NotEquienergeticInput,
    PreconditionFailed,
    TooFewPairs,
    TooFewVertices,
)
from .graphs import Graph
from .spectra import (
    ENERGY_TOL_PER_VERTEX,
    MatrixKind,
    laplacian_energy,
    laplacian_spectrum,
    signless_laplacian_spectrum,
)


class Recipe(enum.Enum):
    """Stable identifiers for the construction families."""

    UNION_EMPTY = "R1:union-empty"
    UNION_EMPTY_Q = "R2:union-empty-q"
    COMPLEMENT_JOIN_COMPLETE = "R3:complement-join-complete"
    JOIN_EMPTY = "R4:join-empty"
    JOIN_EMPTY_BIPARTITE_COMPLEMENT = "R5:join-empty-bipartite-complement"
    COMPLEMENT_UNION_COMPLETE = "R6:complement-union-complete"
    KN_MINUS_JOIN_COMPLETE = "R7:kn-minus-join-complete"
    KN_MINUS_UNION_COMPLETE = "R8:kn-minus-union-complete"
    CART_UNION_EMPTY = "R9:cart-union-empty"
    CART_UNION_EMPTY_Q = "R10:cart-union-empty-q"
    CART_UNION_EMPTY_BIPARTITE_Q = "R11:cart-union-empty-bipartite-q"
    CART_KN_MINUS_UNION = "R12:cart-kn-minus-union"
    CART_COMPLEMENT_UNION = "R13:cart-complement-union"
    CART_COMPLEMENT_JOIN = "R14:cart-complement-join"
    CART_KN_MINUS_JOIN = "R15:cart-kn-minus-join"
    CART_JOIN_EMPTY = "R16:cart-join-empty"
    JOIN_COMPLETE_UNION_EMPTY = "R17:join-complete-union-empty"
    DIRECT_CARTESIAN = "R18:direct-cartesian"
    KRON_JOIN_EMPTY = "R19:kron-join-empty"
    KRON_UNION_EMPTY = "R20:kron-union-empty"
    KRON_UNION_EMPTY_Q = "R21:kron-union-empty-q"
    JOIN_PAIRS = "R22:join-pairs"
    MULTI_JOIN = "R23:multi-join"

    @property
    def code(self) -> str:
        return self.value.split(":", 1)[0]

    @classmethod
    def from_id(cls, text: str) -> "Recipe":
        """Accept either the short code ('R9') or the full id string."""
        for recipe in cls:
            if text == recipe.value or text == recipe.code:
                return recipe
        raise ValueError(f"unknown recipe id {text!r}")


# --- expression trees ------------------------------------------------------
#
# Leaves: "g" (an input graph), "empty_p", "complete_p", "bipartite_pp".
# Nodes: ("union", a, b), ("join", a, b), ("cart", a, b), ("kron", a, b),
#        ("complement", a), ("kn_minus", a)   [host order = the ambient n]

_G = "g"
_EMPTY_P = "empty_p"
_COMPLETE_P = "complete_p"
_BIPARTITE_PP = "bipartite_pp"


def build_expression(expr, g: Graph, p: int, ambient: Optional[int]) -> Graph:
    """Evaluate an expression tree into a graph."""
    if expr == _G:
        return g
    if expr == _EMPTY_P:
        return G.empty_graph(p)
    if expr == _COMPLETE_P:
        return G.complete_graph(p)
    if expr == _BIPARTITE_PP:
        return G.complete_bipartite_graph(p, p)
    op, *args = expr
    if op == "union":
        return G.union(*(build_expression(a, g, p, ambient) for a in args))
    if op == "join":
        return G.join(*(build_expression(a, g, p, ambient) for a in args))
    if op == "cart":
        return G.cartesian_product(*(build_expression(a, g, p, ambient) for a in args))
    if op == "kron":
        return G.kronecker_product(*(build_expression(a, g, p, ambient) for a in args))
    if op == "complement":
        return G.complement(build_expression(args[0], g, p, ambient))
    if op == "kn_minus":
        return G.kn_minus_edges(ambient, build_expression(args[0], g, p, ambient))
    raise ValueError(f"unknown expression node {op!r}")


def expression_text(expr) -> str:
    """Human-readable rendering of an expression tree."""
    if expr == _G:
        return "G"
    if expr == _EMPTY_P:
        return "empty(p)"
    if expr == _COMPLETE_P:
        return "complete(p)"
    if expr == _BIPARTITE_PP:
        return "bipartite(p,p)"
    op, *args = expr
    name = {"cart": "cartesian", "kron": "kronecker", "kn_minus": "complete_minus"}.get(op, op)
    return f"{name}({', '.join(expression_text(a) for a in args)})"


# --- recipe registry --------------------------------------------------------

# Which input eigenvalue the threshold is compared against:
#   "l2": second-smallest Laplacian eigenvalue (the algebraic connectivity)
#   "q1": smallest signless-Laplacian eigenvalue
_GAP_L2 = "l2"
_GAP_Q1 = "q1"


@dataclass(frozen=True)
class _RecipeInfo:
    kind: MatrixKind
    expr: tuple | str
    gap: str
    gap_offset: int
    floor: Callable[[int, int], int]  # (input n, ambient n) -> minimum p
    uses_ambient: bool = False
    strict_threshold: bool = True
    fixed_threshold: bool = False  # threshold does not depend on p
    alt_expr: Optional[tuple] = None  # behind the assume_bar_typo flag


_L, _Q = MatrixKind.LAPLACIAN, MatrixKind.SIGNLESS_LAPLACIAN

_RECIPES: dict[Recipe, _RecipeInfo] = {
    Recipe.UNION_EMPTY: _RecipeInfo(_L, ("union", _G, _EMPTY_P), _GAP_L2, 0, lambda n, a: 1),
    # The sound bound here is the smallest signless eigenvalue: the energy
    # split needs every eigenvalue above the average degree, and there is no
    # structural zero in a signless spectrum.
    Recipe.UNION_EMPTY_Q: _RecipeInfo(_Q, ("union", _G, _EMPTY_P), _GAP_Q1, 0, lambda n, a: 1),
    Recipe.COMPLEMENT_JOIN_COMPLETE: _RecipeInfo(
        _L, ("join", ("complement", _G), _COMPLETE_P), _GAP_L2, 1, lambda n, a: 1
    ),
    Recipe.JOIN_EMPTY: _RecipeInfo(_L, ("join", _G, _EMPTY_P), _GAP_L2, 0, lambda n, a: n),
    Recipe.JOIN_EMPTY_BIPARTITE_COMPLEMENT: _RecipeInfo(
        _L,
        ("join", _G, ("complement", _BIPARTITE_PP)),
        _GAP_L2,
        0,
        lambda n, a: n,
        alt_expr=("join", _G, _BIPARTITE_PP),
    ),
    Recipe.COMPLEMENT_UNION_COMPLETE: _RecipeInfo(
        _L, ("union", ("complement", _G), _COMPLETE_P), _GAP_L2, 0, lambda n, a: n + 4
    ),
    Recipe.KN_MINUS_JOIN_COMPLETE: _RecipeInfo(
        _L, ("join", ("kn_minus", _G), _COMPLETE_P), _GAP_L2, 1, lambda n, a: 1, uses_ambient=True
    ),
    Recipe.KN_MINUS_UNION_COMPLETE: _RecipeInfo(
        _L, ("union", ("kn_minus", _G), _COMPLETE_P), _GAP_L2, 1, lambda n, a: a, uses_ambient=True
    ),
    Recipe.CART_UNION_EMPTY: _RecipeInfo(
        _L, ("cart", ("union", _G, _EMPTY_P), _COMPLETE_P), _GAP_L2, 0, lambda n, a: n + 1
    ),
    Recipe.CART_UNION_EMPTY_Q: _RecipeInfo(
        _Q, ("cart", ("union", _G, _EMPTY_P), _COMPLETE_P), _GAP_Q1, 1, lambda n, a: 1
    ),
    Recipe.CART_UNION_EMPTY_BIPARTITE_Q: _RecipeInfo(
        _Q, ("cart", ("union", _G, _EMPTY_P), _BIPARTITE_PP), _GAP_Q1, 0, lambda n, a: 2 * n
    ),
    # Stated with no minimum p, but the energy split changes sign for p below
    # the host order; p >= ambient restores a one-sided split.
    Recipe.CART_KN_MINUS_UNION: _RecipeInfo(
        _L,
        ("cart", ("union", ("kn_minus", _G), _COMPLETE_P), _COMPLETE_P),
        _GAP_L2,
        2,
        lambda n, a: a,
        uses_ambient=True,
    ),
    Recipe.CART_COMPLEMENT_UNION: _RecipeInfo(
        _L, ("cart", ("union", ("complement", _G), _COMPLETE_P), _COMPLETE_P), _GAP_L2, 0, lambda n, a: 2 * n
    ),
    Recipe.CART_COMPLEMENT_JOIN: _RecipeInfo(
        _L, ("cart", ("join", ("complement", _G), _COMPLETE_P), _COMPLETE_P), _GAP_L2, 2, lambda n, a: 1
    ),
    Recipe.CART_KN_MINUS_JOIN: _RecipeInfo(
        _L,
        ("cart", ("join", ("kn_minus", _G), _COMPLETE_P), _COMPLETE_P),
        _GAP_L2,
        2,
        lambda n, a: 1,
        uses_ambient=True,
    ),
    Recipe.CART_JOIN_EMPTY: _RecipeInfo(
        _L, ("cart", ("join", _G, _EMPTY_P), _COMPLETE_P), _GAP_L2, 0, lambda n, a: n + 4
    ),
    Recipe.JOIN_COMPLETE_UNION_EMPTY: _RecipeInfo(
        _L, ("union", ("join", _G, _COMPLETE_P), _EMPTY_P), _GAP_L2, 0, lambda n, a: n
    ),
    Recipe.DIRECT_CARTESIAN: _RecipeInfo(
        _L,
        ("cart", _G, _COMPLETE_P),
        _GAP_L2,
        0,
        lambda n, a: n + 1,
        strict_threshold=False,
        fixed_threshold=True,
    ),
    Recipe.KRON_JOIN_EMPTY: _RecipeInfo(
        _L, ("kron", ("join", _G, _EMPTY_P), _COMPLETE_P), _GAP_L2, 0, lambda n, a: n
    ),
    Recipe.KRON_UNION_EMPTY: _RecipeInfo(
        _L, ("kron", ("union", _G, _EMPTY_P), _COMPLETE_P), _GAP_L2, 0, lambda n, a: 1
    ),
    Recipe.KRON_UNION_EMPTY_Q: _RecipeInfo(
        _Q, ("kron", ("union", _G, _EMPTY_P), _COMPLETE_P), _GAP_Q1, 0, lambda n, a: n + 1
    ),
}

# Join-of-pairs recipes take four (or 2k) graphs and are handled by
# join_pairs / multi_join below rather than the (g1, g2, p) machinery.
_PAIRWISE_RECIPES = (Recipe.JOIN_PAIRS, Recipe.MULTI_JOIN)


def recipe_kind(recipe: Recipe) -> MatrixKind:
    if recipe in _PAIRWISE_RECIPES:
        return MatrixKind.LAPLACIAN
    return _RECIPES[recipe].kind


def recipe_expression(recipe: Recipe, assume_bar_typo: bool = False):
    info = _RECIPES[recipe]
    if assume_bar_typo and info.alt_expr is not None:
        return info.alt_expr
    return info.expr


def recipe_description(recipe: Recipe) -> str:
    if recipe is Recipe.JOIN_PAIRS:
        return "join(G1, G2) vs join(G1', G2') for equienergetic pairs"
    if recipe is Recipe.MULTI_JOIN:
        return "k-fold join over firsts vs seconds of equienergetic pairs"
    return expression_text(_RECIPES[recipe].expr)


def recipe_uses_ambient(recipe: Recipe) -> bool:
    return recipe not in _PAIRWISE_RECIPES and _RECIPES[recipe].uses_ambient


@dataclass(frozen=True)
class Precondition:
    """Evaluated threshold inequality of one recipe at one p."""

    threshold: float  # the p-dependent side (average degree of the padded graph)
    bound: float  # min over the two inputs of the gap term, offset applied
    p_floor: int
    satisfied: bool
    connectivity_ok: bool
    gap_offset: int


def _resolve_ambient(recipe: Recipe, g1: Graph, ambient_n: Optional[int]) -> int:
    info = _RECIPES[recipe]
    if not info.uses_ambient:
        return 0
    if ambient_n is None:
        # Smallest host making the input a proper subgraph.
        return g1.n + 1
    if ambient_n < g1.n:
        raise ValueError(f"ambient order {ambient_n} smaller than input order {g1.n}")
    return ambient_n


def _gap_value(recipe: Recipe, g: Graph) -> float:
    info = _RECIPES[recipe]
    if g.n < 2:
        raise TooFewVertices("recipes need inputs with at least 2 vertices")
    if info.gap == _GAP_L2:
        return laplacian_spectrum(g).values[-2]
    return signless_laplacian_spectrum(g).values[-1]


@dataclass(frozen=True)
class _PairState:
    """Everything about a recipe/input pair that does not depend on p."""

    n: int
    m: int
    ambient: int
    denom_n: int  # order entering the threshold denominator
    bound: float
    connectivity_ok: bool
    p_floor: int
    strict: bool
    fixed_threshold: bool
    gap_offset: int

    def threshold(self, p: int) -> float:
        if self.fixed_threshold:
            return (2 * self.m) / self.n + 1.0
        return (2 * self.m) / (p + self.denom_n)

    def satisfied(self, p: int) -> bool:
        if not self.connectivity_ok or p < self.p_floor:
            return False
        t = self.threshold(p)
        return t < self.bound if self.strict else t <= self.bound


def _pair_state(recipe: Recipe, g1: Graph, g2: Graph, ambient_n: Optional[int]) -> _PairState:
    if recipe in _PAIRWISE_RECIPES:
        raise ValueError(f"{recipe.value} takes pre-verified pairs; use join_pairs/multi_join")
    info = _RECIPES[recipe]
    if g1.n != g2.n or g1.m != g2.m:
        raise MismatchedPair(
            f"inputs must share vertex and edge counts, got ({g1.n},{g1.m}) vs ({g2.n},{g2.m})"
        )
    if not (G.is_connected(g1) and G.is_connected(g2)):
        raise Disconnected("recipes require connected input graphs")
    ambient = _resolve_ambient(recipe, g1, ambient_n)
    raw_gap = min(_gap_value(recipe, g1), _gap_value(recipe, g2))
    bound = raw_gap - info.gap_offset
    connectivity_ok = bound > 0.0
    denom = ambient if info.uses_ambient else g1.n
    return _PairState(
        n=g1.n,
        m=g1.m,
        ambient=ambient,
        denom_n=denom,
        bound=bound,
        connectivity_ok=connectivity_ok,
        p_floor=max(1, info.floor(g1.n, ambient)),
        strict=info.strict_threshold,
        fixed_threshold=info.fixed_threshold,
        gap_offset=info.gap_offset,
    )


def check_precondition(
    recipe: Recipe,
    g1: Graph,
    g2: Graph,
    p: int,
    ambient_n: Optional[int] = None,
) -> Precondition:
    """Evaluate the recipe's threshold inequality and p-floor at one p."""
    state = _pair_state(recipe, g1, g2, ambient_n)
    return Precondition(
        threshold=state.threshold(p),
        bound=state.bound,
        p_floor=state.p_floor,
        satisfied=state.satisfied(p),
        connectivity_ok=state.connectivity_ok,
        gap_offset=state.gap_offset,
    )


def minimal_p(recipe: Recipe, g1: Graph, g2: Graph, ambient_n: Optional[int] = None) -> int:
    """Smallest p satisfying the precondition; every larger p also satisfies it."""
    state = _pair_state(recipe, g1, g2, ambient_n)
    if not state.connectivity_ok:
        raise ConditionUnsatisfiable(
            f"gap bound {state.bound:.6g} is not positive (offset {state.gap_offset})"
        )
    if state.fixed_threshold:
        if not state.satisfied(state.p_floor):
            raise ConditionUnsatisfiable(
                f"gap bound {state.bound:.6g} below fixed threshold {state.threshold(1):.6g}"
            )
        return state.p_floor
    # 2m/(p + denom) < bound is monotone in p; solve, then nudge for float safety.
    candidate = max(state.p_floor, math.floor(2 * state.m / state.bound - state.denom_n) + 1, 1)
    while not state.satisfied(candidate):
        candidate += 1
    while candidate - 1 >= state.p_floor and state.satisfied(candidate - 1):
        candidate -= 1
    return candidate


def construct(
    recipe: Recipe,
    g1: Graph,
    g2: Graph,
    p: int,
    ambient_n: Optional[int] = None,
    assume_bar_typo: bool = False,
) -> tuple[Graph, Graph]:
    """Build the derived pair (H1, H2) at the given p.

    Raises:
        PreconditionFailed: the threshold inequality or p-floor fails at p.
    """
    state = _pair_state(recipe, g1, g2, ambient_n)
    if not state.satisfied(p):
        clauses = []
        if not state.connectivity_ok:
            clauses.append(f"gap bound {state.bound:.6g} not positive")
        if p < state.p_floor:
            clauses.append(f"p={p} below floor {state.p_floor}")
        t = state.threshold(p)
        if state.connectivity_ok and not (t < state.bound if state.strict else t <= state.bound):
            rel = "<" if state.strict else "<="
            clauses.append(f"threshold {t:.6g} {rel} bound {state.bound:.6g} fails")
        raise PreconditionFailed(f"{recipe.value} at p={p}: " + "; ".join(clauses))
    expr = recipe_expression(recipe, assume_bar_typo)
    ambient = state.ambient if _RECIPES[recipe].uses_ambient else None
    return (
        build_expression(expr, g1, p, ambient),
        build_expression(expr, g2, p, ambient),
    )


def sequence(
    recipe: Recipe,
    g1: Graph,
    g2: Graph,
    p_from: int,
    count: int,
    ambient_n: Optional[int] = None,
    assume_bar_typo: bool = False,
) -> list[tuple[int, Graph, Graph]]:
    """count consecutive constructions for p = p_from .. p_from+count-1."""
    out = []
    for p in range(p_from, p_from + count):
        h1, h2 = construct(recipe, g1, g2, p, ambient_n, assume_bar_typo)
        out.append((p, h1, h2))
    return out


# --- printed closed-form energies -------------------------------------------


@dataclass(frozen=True)
class ClosedForm:
    """A recipe's printed closed-form energy plus suspected-typo variants.

    ``formula_value`` evaluates the primary printed expression verbatim;
    ``variant_values`` hold re-derived alternates.  The verifier decides per
    instance which (if either) matches the eigensolver.
    """

    recipe: Recipe
    formula_value: float
    variant_values: tuple[float, ...]


def closed_form_energy(
    recipe: Recipe,
    n: int,
    m: int,
    p: int,
    input_energies: Optional[Sequence[float]] = None,
) -> ClosedForm:
    """Evaluate the printed closed-form energy of a recipe at (n, m, p).

    Only a handful of recipes carry printed closed forms; the others raise
    :class:`NoClosedForm`.  ``input_energies`` feeds the join-of-pairs
    formulas, which are written in terms of the input energies.
    """
    if recipe is Recipe.UNION_EMPTY:
        t = (2 * m) / (p + n)
        # primary constant (p-n-2); term-by-term re-derivation gives (p-n+2)
        return ClosedForm(recipe, 2 * m + (p - n - 2) * t, (2 * m + (p - n + 2) * t,))
    if recipe is Recipe.COMPLEMENT_JOIN_COMPLETE:
        t = (2 * m) / (p + n)
        avg = (p + n - 1) - t
        primary = (n - p) * avg + (p + n) * (p - n + 1)
        # re-derivation: the primary expression is short by the edge-sum term 2m
        return ClosedForm(recipe, primary, (primary + 2 * m,))
    if recipe is Recipe.JOIN_EMPTY:
        avg = (2 * m + 2 * p * n) / (p + n)
        return ClosedForm(recipe, (p - n) * avg + 2 * (m + n), ())
    if recipe is Recipe.DIRECT_CARTESIAN:
        primary = 2 * m * (p - 2) + n * (p - 2) * (1 - (2 * m) / n) + p * n
        variant = (p - 1) * (2 * (n - 1) + (4 * m) / n)
        return ClosedForm(recipe, primary, (variant,))
    if recipe is Recipe.JOIN_PAIRS:
        if input_energies is None or len(input_energies) != 2:
            raise ValueError("join-pairs closed form needs the two input energies")
        e1, e2 = input_energies
        return ClosedForm(recipe, 2 * n + e1 + e2 - (4 * m) / n, ())
    if recipe is Recipe.MULTI_JOIN:
        if not input_energies:
            raise ValueError("multi-join closed form needs the input energies")
        k = len(input_energies)
        value = sum(input_energies) + 2 * n * (k - 1) - (2 * k - 2) * ((2 * m) / n)
        return ClosedForm(recipe, value, ())
    raise NoClosedForm(f"{recipe.value} has no printed closed-form energy")


# --- joins of pre-verified equienergetic pairs -------------------------------


def _require_equienergetic(a: Graph, b: Graph, tol_per_vertex: float) -> None:
    if a.n != b.n or a.m != b.m:
        raise MismatchedPair("all graphs must share vertex and edge counts")
    ea, eb = laplacian_energy(a), laplacian_energy(b)
    if abs(ea - eb) > tol_per_vertex * a.n:
        raise NotEquienergeticInput(f"input energies differ: {ea!r} vs {eb!r}")


def join_pairs(
    g1: Graph,
    g2: Graph,
    g1p: Graph,
    g2p: Graph,
    tol_per_vertex: float = ENERGY_TOL_PER_VERTEX,
) -> tuple[Graph, Graph]:
    """(join(g1, g2), join(g1p, g2p)) for two verified equal-energy pairs.

    All four graphs must share (n, m); the pairs (g1, g1p) and (g2, g2p) must
    each have equal Laplacian energy within tol_per_vertex * n.
    """
    if not (g1.n == g2.n == g1p.n == g2p.n and g1.m == g2.m == g1p.m == g2p.m):
        raise MismatchedPair("all four graphs must share vertex and edge counts")
    _require_equienergetic(g1, g1p, tol_per_vertex)
    _require_equienergetic(g2, g2p, tol_per_vertex)
    return G.join(g1, g2), G.join(g1p, g2p)


def multi_join(
    pairs: Sequence[tuple[Graph, Graph]],
    k: Optional[int] = None,
    tol_per_vertex: float = ENERGY_TOL_PER_VERTEX,
) -> tuple[Graph, Graph]:
    """Left-fold join over the firsts vs the seconds of k equal-energy pairs."""
    if k is None:
        k = len(pairs)
    if k != len(pairs):
        raise ValueError(f"k={k} but {len(pairs)} pairs given")
    if k < 2:
        raise TooFewPairs("multi-join needs at least two pairs")
    first = pairs[0][0]
    for a, b in pairs:
        if a.n != first.n or a.m != first.m or b.n != first.n or b.m != first.m:
            raise MismatchedPair("all graphs must share vertex and edge counts")
        _require_equienergetic(a, b, tol_per_vertex)
    h1 = pairs[0][0]
    h2 = pairs[0][1]
    for a, b in pairs[1:]:
        h1 = G.join(h1, a)
        h2 = G.join(h2, b)
    return h1, h2
