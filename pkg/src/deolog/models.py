"""Worlds, propositions, models, and the denotation function.

A world is a named valuation: the set of variables true at it. A proposition
is a set of worlds. Models bundle worlds, a utility ranking, and a partial
selection table keyed by (world, proposition) pairs; selection cells are
keyed by proposition *value*, so syntactically distinct operands with equal
denotations share one cell.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .syntax import Formula, Var, Not, And, PrefWeak

MAX_UNIVERSE = 12


@dataclass(frozen=True, slots=True)
class World:
    """A named valuation. name is unique within a model; members is the set
    of variables true at the world."""
    name: str
    members: frozenset

    def __repr__(self):
        return f"World({self.name})"


def bitstring(universe, members) -> str:
    return "".join("1" if v in members else "0" for v in universe)


def world_from_members(universe, members) -> World:
    members = frozenset(members)
    return World(bitstring(universe, members), members)


def make_worlds(universe, valuations) -> tuple[World, ...]:
    """Build worlds from an iterable of valuations, disambiguating repeated
    valuations with a #k name suffix (basic models may repeat valuations)."""
    counts = {}
    out = []
    for val in valuations:
        val = frozenset(val)
        base = bitstring(universe, val)
        k = counts.get(base, 0)
        counts[base] = k + 1
        out.append(World(base if k == 0 else f"{base}#{k}", val))
    return tuple(out)


def powerset_worlds(universe) -> tuple[World, ...]:
    """All 2^n worlds over a variable universe, in bit-string counting order
    (sorted universe = bit positions, leftmost = first variable)."""
    universe = tuple(universe)
    if not universe:
        raise ValueError("universe must be nonempty")
    if len(universe) > MAX_UNIVERSE:
        raise ValueError(
            f"universe of {len(universe)} variables exceeds cap {MAX_UNIVERSE}")
    worlds = []
    for bits in itertools.product("01", repeat=len(universe)):
        members = frozenset(v for v, b in zip(universe, bits) if b == "1")
        worlds.append(World("".join(bits), members))
    return tuple(worlds)


def symmetric_difference(w0: World, w1: World) -> frozenset:
    return w0.members ^ w1.members


class MissingSelectionError(Exception):
    """Raised when evaluation needs an undefined selection cell."""

    def __init__(self, world, proposition):
        self.world = world
        self.proposition = proposition
        names = ",".join(sorted(w.name for w in proposition))
        super().__init__(
            f"no selection defined at world {world.name} "
            f"for proposition {{{names}}}")


@dataclass
class Model:
    """A model: worlds with utilities, truth by membership, and a partial
    selection table. mode is 'basic' or 'delta'; delta models range over the
    full power set of the universe with delta-based selection.

    Treat instances as immutable after validate(); evaluation never mutates
    the model.
    """
    universe: tuple
    worlds: tuple
    utility: dict          # World -> int rank
    selection: dict        # (World, frozenset[World]) -> World
    mode: str = "basic"
    weights: dict | None = None   # variable -> Fraction, optional

    def __post_init__(self):
        self.universe = tuple(self.universe)
        self.worlds = tuple(self.worlds)
        self._by_name = {w.name: w for w in self.worlds}

    @property
    def world_set(self):
        return frozenset(self.worlds)

    def world(self, name: str) -> World:
        return self._by_name[name]

    def truth(self, var: str) -> frozenset:
        return frozenset(w for w in self.worlds if var in w.members)

    def truth_assignment(self) -> dict:
        return {v: self.truth(v) for v in self.universe}

    def select(self, w: World, prop: frozenset) -> World:
        try:
            return self.selection[(w, prop)]
        except KeyError:
            raise MissingSelectionError(w, prop) from None


class Evaluator:
    """Shared-memo evaluator for core formulas over one model.

    selector, if given, is called as selector(world, proposition) to supply a
    pick for a missing cell; it may record its choice. Without a selector,
    missing cells raise MissingSelectionError.
    """

    def __init__(self, model: Model, selector=None):
        self.model = model
        self.selector = selector
        self._memo = {}

    def _select(self, w, prop):
        try:
            return self.model.selection[(w, prop)]
        except KeyError:
            if self.selector is None:
                raise MissingSelectionError(w, prop) from None
            return self.selector(w, prop)

    def holds_at(self, f: Formula, w: World) -> bool:
        if isinstance(f, Var):
            return f.name in w.members
        if isinstance(f, Not):
            return not self.holds_at(f.child, w)
        if isinstance(f, And):
            return self.holds_at(f.left, w) and self.holds_at(f.right, w)
        if isinstance(f, PrefWeak):
            a = self.denote(f.left)
            b = self.denote(f.right)
            if not a or not b:
                return False  # existential import
            if a == b:
                return True   # both sides read the same selection cell
            u = self.model.utility
            return u[self._select(w, a)] >= u[self._select(w, b)]
        raise TypeError(f"not a core formula: {f!r}")

    def denote(self, f: Formula) -> frozenset:
        got = self._memo.get(f)
        if got is None:
            got = frozenset(w for w in self.model.worlds
                            if self.holds_at(f, w))
            self._memo[f] = got
        return got


def denote(model: Model, f: Formula) -> frozenset:
    """The proposition expressed by core formula f in model."""
    return Evaluator(model).denote(f)


def holds_at(model: Model, f: Formula, w: World) -> bool:
    """Membership of w in the denotation of f; only consults selection cells
    reachable from w (plus all cells of nested preference operands)."""
    return Evaluator(model).holds_at(f, w)


def validate_model(model: Model) -> list[str]:
    """Check every model invariant; returns a list of violation messages
    (empty = ok)."""
    from .regimes import delta_minimal  # local import avoids a cycle

    problems = []
    if not model.worlds:
        problems.append("model has no worlds")
        return problems
    names = [w.name for w in model.worlds]
    if len(set(names)) != len(names):
        problems.append("world names are not unique")
    for w in model.worlds:
        if not w.members <= set(model.universe):
            problems.append(f"world {w.name} mentions undeclared variables")
    for w in model.worlds:
        if w not in model.utility:
            problems.append(f"no utility rank for world {w.name}")
    world_set = set(model.worlds)
    for (w, prop), pick in model.selection.items():
        if w not in world_set:
            problems.append(f"selection at unknown world {w.name}")
        if not prop:
            problems.append(f"selection cell at {w.name} has empty proposition")
            continue
        if not prop <= world_set:
            problems.append(
                f"selection cell at {w.name} mentions unknown worlds")
        if pick not in prop:
            problems.append(
                f"selection at {w.name} picks {pick.name}, which is outside "
                "the cell's proposition")
    if model.mode == "delta":
        expected = set(powerset_worlds(model.universe))
        if world_set != expected:
            problems.append(
                "delta model's worlds are not the full power set of the "
                "universe")
        for (w, prop), pick in model.selection.items():
            if pick in prop and pick not in delta_minimal(w, prop):
                problems.append(
                    f"selection at {w.name} is not delta-based: pick "
                    f"{pick.name} is not difference-minimal in its cell")
    elif model.mode != "basic":
        problems.append(f"unknown mode {model.mode!r}")
    return problems
