"""Entailment, validity and satisfiability in the three regimes, with
countermodel search.

A sequent premises |- conclusion is refuted by a model and a witness world
satisfying every premise but not the conclusion, so every decision reduces to
bounded satisfiability of the goal formula premises & ~conclusion. Two
backends find falsifying utilities: a rank-constraint solver (exact for
modal depth <= 1, where preference operands denote fixed propositions) and
exhaustive weak-order enumeration (any depth). Every countermodel is
re-verified by direct evaluation before it is reported.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import syntax
from .syntax import (And, Formula, Not, PrefWeak, Var, desugar, modal_depth,
                     parse, pref_atoms, top_variable, variables)
from .models import (Evaluator, MissingSelectionError, Model, World,
                     holds_at, make_worlds, powerset_worlds)
from .orders import ComparisonAtom, bruteforce_weak_orders, \
    solve_order_constraints
from .regimes import (BasicRegime, DeltaRegime, WeightClass, WeightedRegime,
                      delta_minimal, enumerate_weight_orders, forced_choice,
                      p_nearest)


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class Sequent:
    premises: tuple
    conclusion: Formula

    @classmethod
    def parse(cls, text: str) -> "Sequent":
        if "|-" not in text:
            raise ValueError("sequent must contain '|-'")
        left, right = text.split("|-", 1)
        premises = tuple(parse(p) for p in left.split(";") if p.strip())
        return cls(premises, parse(right))

    def goal(self, strict_def7=False) -> Formula:
        """Core formula satisfied exactly where the sequent is refuted."""
        top = top_variable(*self.premises, self.conclusion)
        parts = [desugar(p, top, strict_def7) for p in self.premises]
        parts.append(Not(desugar(self.conclusion, top, strict_def7)))
        return _fold_and(parts)

    def __str__(self):
        left = " ; ".join(syntax.pretty(p) for p in self.premises)
        return f"{left} |- {syntax.pretty(self.conclusion)}".strip()


def _fold_and(parts):
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


@dataclass
class EngineConfig:
    strict_def7: bool = False
    var_cap: int = 12
    oracle_world_cap: int = 6
    retry_extras: tuple = (1, 2)
    force_backend: str | None = None   # 'solver' | 'oracle' | None (auto)
    robust_samples: int = 50


DEFAULT_CONFIG = EngineConfig()


@dataclass
class Verdict:
    kind: str                  # valid | qualified-valid | invalid | sat | unsat | unknown
    fingerprint: dict
    countermodel: Model | None = None
    witness: World | None = None
    weight_robust: bool | None = None
    weighting: dict | None = None
    strategy: str | None = None
    detail: str | None = None

    @property
    def is_positive(self):
        return self.kind in ("valid", "qualified-valid", "sat")

    def exit_code(self):
        if self.kind in ("valid", "qualified-valid", "sat"):
            return 0
        if self.kind in ("invalid", "unsat"):
            return 1
        return 2


# --- Admissible-pick policies ------------------------------------------------

def _by_name(worlds):
    return tuple(sorted(worlds, key=lambda w: w.name))


def admissible_basic(w, prop):
    return _by_name(prop)


def admissible_delta(w, prop):
    return _by_name(delta_minimal(w, prop))


def admissible_weighted(weighting):
    def policy(w, prop):
        return _by_name(p_nearest(weighting, w, prop))
    return policy


def admissible_forced(w, prop):
    pick = forced_choice(w, prop)
    return (pick,) if pick is not None else ()


# --- Search over a fixed world frame -----------------------------------------

def _prop_eval(goal, atom_values, w):
    if isinstance(goal, Var):
        return goal.name in w.members
    if isinstance(goal, Not):
        return not _prop_eval(goal.child, atom_values, w)
    if isinstance(goal, And):
        return (_prop_eval(goal.left, atom_values, w)
                and _prop_eval(goal.right, atom_values, w))
    return atom_values[goal]


def _solver_search(universe, worlds, goal, admissible, mode, weights=None):
    """Depth <= 1 backend: preference operands denote fixed propositions, so
    a falsifying utility is a solution of rank comparisons among the picked
    worlds of the witness row."""
    empty_model = Model(universe, worlds, {w: 0 for w in worlds}, {}, mode)
    ev = Evaluator(empty_model)
    atoms = pref_atoms(goal)
    den = {}
    fixed = {}
    free = []
    for a in atoms:
        left, right = ev.denote(a.left), ev.denote(a.right)
        den[a] = (left, right)
        if not left or not right:
            fixed[a] = False      # existential import
        elif left == right:
            fixed[a] = True       # one cell on both sides
        else:
            free.append(a)
    for w in worlds:
        for bits in itertools.product((False, True), repeat=len(free)):
            values = dict(fixed)
            values.update(zip(free, bits))
            if not _prop_eval(goal, values, w):
                continue
            cells = []
            for a in free:
                for prop in den[a]:
                    if prop not in cells:
                        cells.append(prop)
            pick_lists = [admissible(w, prop) for prop in cells]
            if any(not picks for picks in pick_lists):
                continue
            for combo in itertools.product(*pick_lists):
                pick = dict(zip(cells, combo))
                constraints = []
                for a, value in zip(free, bits):
                    l, r = pick[den[a][0]], pick[den[a][1]]
                    if value:
                        constraints.append(ComparisonAtom(l, r, False))
                    else:
                        constraints.append(ComparisonAtom(r, l, True))
                ranks = solve_order_constraints(constraints)
                if ranks is None:
                    continue
                utility = {w2: ranks.get(w2, 0) for w2 in worlds}
                selection = {(w, prop): pk for prop, pk in pick.items()}
                model = Model(universe, worlds, utility, selection, mode,
                              weights)
                if holds_at(model, goal, w):
                    return model, w
    return None


def _eval_with(f, w, table):
    """Truth of a core formula at w given a truth table for pref atoms."""
    if isinstance(f, Var):
        return f.name in w.members
    if isinstance(f, Not):
        return not _eval_with(f.child, w, table)
    if isinstance(f, And):
        return (_eval_with(f.left, w, table)
                and _eval_with(f.right, w, table))
    return w in table[f]


def _oracle_search(universe, worlds, goal, admissible, mode, world_cap,
                   weights=None):
    """Any-depth backend: enumerate weak orders on the worlds, then resolve
    preference atoms stratum by stratum (innermost operands first), branching
    over admissible picks for each selection cell as it arises."""
    if len(worlds) > world_cap:
        raise BudgetExceeded(
            f"{len(worlds)} worlds exceeds oracle cap {world_cap}")
    atoms = pref_atoms(goal)   # innermost first, so operands resolve in order
    everything = frozenset(worlds)
    # whether any later atom can consume selection cells: atoms comparing a
    # formula with itself (the box/diamond shape) never pick from a cell
    later_cells = [any(a.left != a.right for a in atoms[i + 1:])
                   for i in range(len(atoms))]

    def finish(utility, table, selection):
        for w in worlds:
            if _eval_with(goal, w, table):
                model = Model(universe, worlds, utility, dict(selection),
                              mode, weights)
                if holds_at(model, goal, w):   # mandatory re-verification
                    return model, w
        return None

    def assign_atom(i, utility, table, selection):
        if i == len(atoms):
            return finish(utility, table, selection)
        atom = atoms[i]
        left = frozenset(w for w in worlds
                         if _eval_with(atom.left, w, table))
        right = frozenset(w for w in worlds
                          if _eval_with(atom.right, w, table))
        if not left or not right or left == right:
            # existential import, or one cell read on both sides
            table[atom] = everything if (left and left == right) else \
                frozenset()
            found = assign_atom(i + 1, utility, table, selection)
            del table[atom]
            return found

        def per_world(j, members):
            if j == len(worlds):
                table[atom] = frozenset(members)
                found = assign_atom(i + 1, utility, table, selection)
                del table[atom]
                return found
            w = worlds[j]
            picked = []
            for prop in (left, right):
                key = (w, prop)
                if key in selection:
                    picked.append(((selection[key],), False))
                else:
                    picked.append((admissible(w, prop), True))
            (lefts, new_l), (rights, new_r) = picked
            # equal-rank picks are interchangeable: dedupe branches by rank,
            # or by truth value alone once no later atom can reuse a cell
            seen = set()
            for xl in lefts:
                for xr in rights:
                    ranks = (utility[xl], utility[xr])
                    key = ranks if later_cells[i] else ranks[0] >= ranks[1]
                    if key in seen:
                        continue
                    seen.add(key)
                    if new_l:
                        selection[(w, left)] = xl
                    if new_r:
                        selection[(w, right)] = xr
                    if ranks[0] >= ranks[1]:
                        members.append(w)
                    found = per_world(j + 1, members)
                    if members and members[-1] is w:
                        members.pop()
                    if new_l:
                        del selection[(w, left)]
                    if new_r:
                        del selection[(w, right)]
                    if found:
                        return found
            return None

        return per_world(0, [])

    for utility in bruteforce_weak_orders(worlds):
        found = assign_atom(0, utility, {}, {})
        if found:
            return found
    return None


def _search_worlds(universe, worlds, goal, admissible, mode, config,
                   weights=None):
    backend = config.force_backend
    if backend is None:
        backend = "solver" if modal_depth(goal) <= 1 else "oracle"
    if backend == "solver":
        if modal_depth(goal) > 1:
            raise ValueError("solver backend requires modal depth <= 1")
        return _solver_search(universe, worlds, goal, admissible, mode,
                              weights)
    return _oracle_search(universe, worlds, goal, admissible, mode,
                          config.oracle_world_cap, weights)


# --- Regime searchers --------------------------------------------------------

def find_countermodel_basic(goal, max_worlds, config=DEFAULT_CONFIG):
    """Search basic models: any world multiset over the goal's variables (up
    to max_worlds worlds, valuations may repeat), any selection, any
    utility."""
    universe = tuple(variables(goal))
    valuations = [w.members for w in powerset_worlds(universe)]
    for count in range(1, max_worlds + 1):
        for combo in itertools.combinations_with_replacement(
                valuations, count):
            worlds = make_worlds(universe, combo)
            found = _search_worlds(universe, worlds, goal, admissible_basic,
                                   "basic", config)
            if found:
                return found
    return None


def _fresh_variables(base, count):
    out = []
    i = 0
    while len(out) < count:
        name = f"_x{i}"
        if name not in base:
            out.append(name)
        i += 1
    return out


def _delta_universe(base_vars, extra, config):
    universe = sorted(set(base_vars) | set(_fresh_variables(base_vars, extra)))
    if len(universe) > config.var_cap:
        raise BudgetExceeded(
            f"universe of {len(universe)} variables exceeds cap "
            f"{config.var_cap}")
    return tuple(universe)


def find_countermodel_delta(goal, extra_vars=0, config=DEFAULT_CONFIG,
                            admissible=admissible_delta, weights=None):
    """Search delta models over the goal's variables plus extra_vars fresh
    ones (power-set worlds, delta-based selection, free utility)."""
    universe = _delta_universe(variables(goal), extra_vars, config)
    worlds = powerset_worlds(universe)
    return _search_worlds(universe, worlds, goal, admissible, "delta",
                          config, weights)


def _delta_ladder(goal, base_extra, config, admissible, weights=None):
    """Countermodel search with the extra-variable retry ladder. Returns
    (found, extras_completed, budget_limited)."""
    extras = [base_extra] + [base_extra + k for k in config.retry_extras]
    completed = []
    limited = False
    for extra in extras:
        try:
            found = find_countermodel_delta(goal, extra, config, admissible,
                                            weights)
        except BudgetExceeded:
            limited = True
            continue
        completed.append(extra)
        if found:
            return found, completed, limited
    return None, completed, limited


# --- Verdict-producing operations --------------------------------------------

def check(sequent: Sequent, regime, config=DEFAULT_CONFIG) -> Verdict:
    """Decide the sequent in the given regime."""
    goal = sequent.goal(config.strict_def7)
    if isinstance(regime, BasicRegime):
        return _check_basic(goal, regime, config)
    if isinstance(regime, DeltaRegime):
        return _check_delta(goal, regime, config)
    if isinstance(regime, WeightedRegime):
        return _check_weighted(goal, regime, config)
    raise TypeError(f"unknown regime {regime!r}")


def _check_basic(goal, regime, config):
    fingerprint = {"regime": "basic", "max_worlds": regime.max_worlds}
    found = find_countermodel_basic(goal, regime.max_worlds, config)
    if found:
        model, w = found
        return Verdict("invalid", fingerprint, model, w)
    # no small-model bound is known for the basic regime, so exhaustion up
    # to the bound is reported as qualified validity
    return Verdict("qualified-valid", fingerprint)


def _check_delta(goal, regime, config):
    base = regime.extra_variables
    found, completed, limited = _delta_ladder(goal, base, config,
                                              admissible_delta)
    fingerprint = {"regime": "delta", "extra_vars": base,
                   "extras_searched": completed}
    if found:
        model, w = found
        return Verdict("invalid", fingerprint, model, w)
    if base not in completed:
        return Verdict("qualified-valid", fingerprint,
                       detail="budget exceeded before the base search")
    return Verdict("valid", fingerprint)


def _weighted_universe(goal, regime, config):
    base = set(variables(goal)) | regime.weight_class.variables()
    return _delta_universe(sorted(base), regime.extra_variables, config)


def _check_weighted(goal, regime, config):
    universe = _weighted_universe(goal, regime, config)
    weightings = enumerate_weight_orders(universe, regime.weight_class,
                                         regime.grid)
    if not weightings:
        raise ValueError("weight class unsatisfiable on the grid")
    fingerprint = {"regime": "weighted", "class": str(regime.weight_class),
                   "grid": list(regime.grid),
                   "extra_vars": regime.extra_variables,
                   "weightings": len(weightings)}
    # a forced-pick countermodel refutes the sequent under every weighting
    found, _, _ = _delta_ladder(goal, regime.extra_variables, config,
                                admissible_forced)
    if found:
        model, w = found
        return Verdict("invalid", fingerprint, model, w, weight_robust=True,
                       strategy="forced")
    worlds = powerset_worlds(universe)
    for weighting in weightings:
        found = _search_worlds(universe, worlds, goal,
                               admissible_weighted(weighting), "delta",
                               config, weights=weighting)
        if found:
            model, w = found
            return Verdict("invalid", fingerprint, model, w,
                           weight_robust=False, weighting=weighting,
                           strategy="per-weighting")
    return Verdict("valid", fingerprint)


def check_forall_weights_invalidity(sequent: Sequent, grid=None, extra_vars=0,
                                    config=DEFAULT_CONFIG) -> Verdict:
    """Decide whether the sequent fails under *every* weighting: first via a
    single forced-pick countermodel, then (fallback) one countermodel per
    enumerated weight-order representative."""
    from .regimes import DEFAULT_GRID
    grid = DEFAULT_GRID if grid is None else grid
    goal = sequent.goal(config.strict_def7)
    found, _, _ = _delta_ladder(goal, extra_vars, config, admissible_forced)
    fingerprint = {"regime": "forall-weights", "grid": list(grid),
                   "extra_vars": extra_vars}
    if found:
        model, w = found
        return Verdict("invalid", fingerprint, model, w, weight_robust=True,
                       strategy="forced")
    universe = _delta_universe(variables(goal), extra_vars, config)
    weightings = enumerate_weight_orders(universe, WeightClass(), grid)
    fingerprint["weightings"] = len(weightings)
    first = None
    for weighting in weightings:
        found, _, _ = _delta_ladder(goal, extra_vars, config,
                                    admissible_weighted(weighting), weighting)
        if not found:
            return Verdict("unknown", fingerprint,
                           detail="no countermodel found for weighting "
                                  f"{weighting}")
        if first is None:
            first = found
    model, w = first
    return Verdict("invalid", fingerprint, model, w, weight_robust=False,
                   strategy="per-weighting")


def satisfiable(formulas, regime, config=DEFAULT_CONFIG) -> Verdict:
    """Search for a model of the regime and a world satisfying every given
    surface formula."""
    top = top_variable(*formulas)
    goal = _fold_and([desugar(f, top, config.strict_def7) for f in formulas])
    if isinstance(regime, BasicRegime):
        fingerprint = {"regime": "basic", "max_worlds": regime.max_worlds}
        found = find_countermodel_basic(goal, regime.max_worlds, config)
    elif isinstance(regime, DeltaRegime):
        fingerprint = {"regime": "delta",
                       "extra_vars": regime.extra_variables}
        found = find_countermodel_delta(goal, regime.extra_variables, config)
    elif isinstance(regime, WeightedRegime):
        universe = _weighted_universe(goal, regime, config)
        weightings = enumerate_weight_orders(universe, regime.weight_class,
                                             regime.grid)
        if not weightings:
            raise ValueError("weight class unsatisfiable on the grid")
        fingerprint = {"regime": "weighted",
                       "class": str(regime.weight_class),
                       "grid": list(regime.grid)}
        worlds = powerset_worlds(universe)
        found = None
        for weighting in weightings:
            found = _search_worlds(universe, worlds, goal,
                                   admissible_weighted(weighting), "delta",
                                   config, weights=weighting)
            if found:
                break
    else:
        raise TypeError(f"unknown regime {regime!r}")
    if found:
        model, w = found
        return Verdict("sat", fingerprint, model, w)
    return Verdict("unsat", fingerprint)


def verify_weight_robust(model: Model, samples=50, seed=0) -> bool:
    """Randomized check that every defined selection cell stays admissible
    under random weightings (hence the model remains a countermodel)."""
    rng = random.Random(seed)
    for _ in range(samples):
        weighting = {v: rng.randint(1, 9) for v in model.universe}
        for (w, prop), pick in model.selection.items():
            if pick not in p_nearest(weighting, w, prop):
                return False
    return True
