"""Hilbert-style derivation checking for the preference logic.

The axiom base is a standard S5 presentation (propositional tautologies, K,
T, 5) over the defined box, plus three preference schemata: transitivity,
connectedness of possible operands, and substitution of necessary
equivalents. Theorems are closed under modus ponens and necessitation.
Only checking is supported, not proof search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .syntax import (And, Bot, Box, CondOblig, Diamond, Formula, Iff,
                     Implies, Not, Oblig, Or, Perm, PrefEq, PrefStrict,
                     PrefStrictRev, PrefWeak, PrefWeakRev, Top, Var, parse,
                     pretty)


@dataclass(frozen=True, slots=True)
class MetaVar(Formula):
    """Schema metavariable; stands for an arbitrary surface formula."""
    name: str


_PHI, _PSI, _THETA = MetaVar("phi"), MetaVar("psi"), MetaVar("theta")

# the preference schemata, plus a standard S5 base over the defined box
SCHEMAS = {
    "Ax1-trans": Implies(And(PrefWeak(_PHI, _PSI), PrefWeak(_PSI, _THETA)),
                         PrefWeak(_PHI, _THETA)),
    "Ax2-conn": Iff(And(Diamond(_PHI), Diamond(_PSI)),
                    Or(PrefWeak(_PHI, _PSI), PrefWeak(_PSI, _PHI))),
    "Ax3-subst": Implies(
        Box(Iff(_PHI, _PSI)),
        And(Iff(PrefWeak(_PHI, _THETA), PrefWeak(_PSI, _THETA)),
            Iff(PrefWeak(_THETA, _PHI), PrefWeak(_THETA, _PSI)))),
    "K": Implies(Box(Implies(_PHI, _PSI)),
                 Implies(Box(_PHI), Box(_PSI))),
    "T": Implies(Box(_PHI), _PHI),
    "Five": Implies(Diamond(_PHI), Box(Diamond(_PHI))),
    "PC-taut": None,   # checked by is_tautology_instance instead
}

_BINARY = (And, Or, Implies, Iff, PrefWeak, PrefStrict, PrefEq,
           PrefWeakRev, PrefStrictRev)
_UNARY = (Not, Box, Diamond, Oblig, Perm)


def _match(template, f, subst):
    if isinstance(template, MetaVar):
        bound = subst.get(template.name)
        if bound is None:
            subst[template.name] = f
            return True
        return bound == f
    if type(template) is not type(f):
        return False
    if isinstance(template, Var):
        return template.name == f.name
    if isinstance(template, (Top, Bot)):
        return True
    if isinstance(template, _UNARY):
        return _match(template.child, f.child, subst)
    if isinstance(template, _BINARY):
        return (_match(template.left, f.left, subst)
                and _match(template.right, f.right, subst))
    if isinstance(template, CondOblig):
        return (_match(template.condition, f.condition, subst)
                and _match(template.duty, f.duty, subst))
    raise TypeError(f"unexpected template node {template!r}")


def match_schema(schema_id: str, f: Formula) -> dict | None:
    """First-order match of f against the schema template; returns the
    metavariable substitution, or None. PC-taut matches iff f is a
    tautology instance."""
    template = SCHEMAS[schema_id]
    if template is None:
        return {} if is_tautology_instance(f) else None
    subst = {}
    return subst if _match(template, f, subst) else None


def apply_substitution(template: Formula, subst: dict) -> Formula:
    if isinstance(template, MetaVar):
        try:
            return subst[template.name]
        except KeyError:
            raise ValueError(f"unbound metavariable {template.name}") from None
    if isinstance(template, (Var, Top, Bot)):
        return template
    if isinstance(template, _UNARY):
        return type(template)(apply_substitution(template.child, subst))
    if isinstance(template, _BINARY):
        return type(template)(apply_substitution(template.left, subst),
                              apply_substitution(template.right, subst))
    if isinstance(template, CondOblig):
        return CondOblig(apply_substitution(template.condition, subst),
                         apply_substitution(template.duty, subst))
    raise TypeError(f"unexpected template node {template!r}")


def _abstract_atoms(f, atoms):
    """Collect the maximal non-truth-functional subformulas (plus plain
    variables), which act as propositional atoms."""
    if isinstance(f, (Top, Bot)):
        return
    if isinstance(f, Not):
        _abstract_atoms(f.child, atoms)
    elif isinstance(f, (And, Or, Implies, Iff)):
        _abstract_atoms(f.left, atoms)
        _abstract_atoms(f.right, atoms)
    elif f not in atoms:
        atoms.append(f)


def _taut_eval(f, value):
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        return not _taut_eval(f.child, value)
    if isinstance(f, And):
        return _taut_eval(f.left, value) and _taut_eval(f.right, value)
    if isinstance(f, Or):
        return _taut_eval(f.left, value) or _taut_eval(f.right, value)
    if isinstance(f, Implies):
        return (not _taut_eval(f.left, value)) or _taut_eval(f.right, value)
    if isinstance(f, Iff):
        return _taut_eval(f.left, value) == _taut_eval(f.right, value)
    return value[f]


def is_tautology_instance(f: Formula) -> bool:
    """True iff f is a truth-functional tautology once its maximal modal and
    preference subformulas are abstracted as atoms."""
    atoms = []
    _abstract_atoms(f, atoms)
    for bits in itertools.product((True, False), repeat=len(atoms)):
        if not _taut_eval(f, dict(zip(atoms, bits))):
            return False
    return True


@dataclass(frozen=True)
class Step:
    """One derivation line. kind is 'axiom' (schema + the instance formula),
    'mp' (refs = [implication line, antecedent line], 1-based), or 'nec'
    (ref = line derived under the box)."""
    kind: str
    formula: Formula | None = None
    schema: str | None = None
    refs: tuple = ()


@dataclass
class CheckResult:
    ok: bool
    theorem: Formula | None = None
    step: int | None = None      # 1-based index of the failing step
    reason: str | None = None


def step_from_dict(entry: dict) -> Step:
    kind = entry["kind"]
    if kind == "axiom":
        schema = entry["schema"]
        if schema not in SCHEMAS:
            raise ValueError(f"unknown schema {schema!r}")
        if "formula" in entry:
            formula = parse(entry["formula"])
        else:
            template = SCHEMAS[schema]
            if template is None:
                raise ValueError("PC-taut steps must give the formula")
            subst = {name: parse(text)
                     for name, text in entry["subst"].items()}
            formula = apply_substitution(template, subst)
        return Step("axiom", formula, schema)
    if kind == "mp":
        i, j = entry["refs"]
        return Step("mp", refs=(i, j))
    if kind == "nec":
        return Step("nec", refs=(entry["ref"],))
    raise ValueError(f"unknown step kind {kind!r}")


def check_derivation(steps) -> CheckResult:
    """Verify a derivation line by line; on success the theorem is the last
    line's formula."""
    derived = []
    for n, step in enumerate(steps, start=1):
        def fail(reason):
            return CheckResult(False, step=n, reason=reason)
        for ref in step.refs:
            if not 1 <= ref < n:
                return fail(f"reference {ref} is out of range")
        if step.kind == "axiom":
            if match_schema(step.schema, step.formula) is None:
                return fail(
                    f"{pretty(step.formula)} is not an instance of "
                    f"{step.schema}")
            derived.append(step.formula)
        elif step.kind == "mp":
            imp, ant = (derived[r - 1] for r in step.refs)
            if not isinstance(imp, Implies):
                return fail(f"line {step.refs[0]} is not an implication")
            if imp.left != ant:
                return fail(
                    f"line {step.refs[1]} does not match the antecedent of "
                    f"line {step.refs[0]}")
            derived.append(imp.right)
        elif step.kind == "nec":
            derived.append(Box(derived[step.refs[0] - 1]))
        else:
            return fail(f"unknown step kind {step.kind!r}")
    if not derived:
        return CheckResult(False, step=0, reason="empty derivation")
    return CheckResult(True, theorem=derived[-1])
