import random

import pytest

from deolog.syntax import Var, parse
from deolog.proofs import (SCHEMAS, MetaVar, Step, apply_substitution,
                           check_derivation, is_tautology_instance,
                           match_schema, step_from_dict)


class TestMatchSchema:
    def test_transitivity_instance(self):
        f = parse("((p >= q) & (q >= r)) -> (p >= r)")
        assert match_schema("Ax1-trans", f) == \
            {"phi": Var("p"), "psi": Var("q"), "theta": Var("r")}

    def test_transitivity_non_instance(self):
        assert match_schema("Ax1-trans", parse("(p >= q) -> (p >= r)")) \
            is None

    def test_substitution_instance(self):
        f = parse("[](p <-> q) -> "
                  "(((p >= r) <-> (q >= r)) & ((r >= p) <-> (r >= q)))")
        assert match_schema("Ax3-subst", f) == \
            {"phi": Var("p"), "psi": Var("q"), "theta": Var("r")}

    def test_connectedness_instance(self):
        f = parse("(<>p & <>(q & r)) <-> ((p >= q & r) | ((q & r) >= p))")
        got = match_schema("Ax2-conn", f)
        assert got == {"phi": Var("p"), "psi": parse("q & r")}

    def test_consistent_binding_required(self):
        # both box operands must instantiate one metavariable identically
        assert match_schema("T", parse("[]p -> q")) is None
        assert match_schema("T", parse("[](p & q) -> (p & q)")) is not None

    def test_random_substitution_recovery(self):
        rng = random.Random(21)
        pool = [parse(t) for t in
                ("p", "q & r", "O p", "~(p >= q)", "[]q", "p | ~r")]
        for schema_id, template in SCHEMAS.items():
            if template is None:
                continue
            for _ in range(30):
                subst = {"phi": rng.choice(pool), "psi": rng.choice(pool),
                         "theta": rng.choice(pool)}
                instance = apply_substitution(template, subst)
                got = match_schema(schema_id, instance)
                assert got is not None
                for name, f in got.items():
                    assert subst[name] == f


class TestTautologyInstance:
    def test_pref_identity(self):
        assert is_tautology_instance(parse("(p >= q) -> (p >= q)"))

    def test_excluded_middle(self):
        assert is_tautology_instance(parse("O p | ~O p"))

    def test_non_tautology(self):
        assert not is_tautology_instance(parse("(p >= q) -> (q >= p)"))

    def test_abstraction_is_maximal(self):
        # []p and p are distinct atoms after abstraction
        assert not is_tautology_instance(parse("[]p -> p"))
        assert is_tautology_instance(parse("[]p -> []p"))


class TestCheckDerivation:
    def test_single_axiom(self):
        step = step_from_dict({"kind": "axiom", "schema": "PC-taut",
                               "formula": "(p >= p) -> (p >= p)"})
        result = check_derivation([step])
        assert result.ok
        assert result.theorem == parse("(p >= p) -> (p >= p)")

    def test_axiom_from_substitution(self):
        step = step_from_dict({"kind": "axiom", "schema": "T",
                               "subst": {"phi": "p & q"}})
        result = check_derivation([step])
        assert result.ok
        assert result.theorem == parse("[](p & q) -> (p & q)")

    def test_modus_ponens_and_necessitation(self):
        steps = [
            step_from_dict({"kind": "axiom", "schema": "PC-taut",
                            "formula": "p -> (q -> p)"}),
            step_from_dict({"kind": "axiom", "schema": "PC-taut",
                            "formula": "p -> p"}),
            step_from_dict({"kind": "nec", "ref": 2}),
        ]
        result = check_derivation(steps)
        assert result.ok
        assert result.theorem == parse("[](p -> p)")

    def test_mp_not_an_implication(self):
        steps = [
            step_from_dict({"kind": "axiom", "schema": "PC-taut",
                            "formula": "p | ~p"}),
            step_from_dict({"kind": "axiom", "schema": "PC-taut",
                            "formula": "q | ~q"}),
            step_from_dict({"kind": "mp", "refs": [1, 2]}),
        ]
        result = check_derivation(steps)
        assert not result.ok
        assert result.step == 3
        assert "implication" in result.reason

    def test_mp_antecedent_mismatch(self):
        steps = [
            step_from_dict({"kind": "axiom", "schema": "PC-taut",
                            "formula": "p -> (p | q)"}),
            step_from_dict({"kind": "axiom", "schema": "PC-taut",
                            "formula": "q | ~q"}),
            step_from_dict({"kind": "mp", "refs": [1, 2]}),
        ]
        result = check_derivation(steps)
        assert not result.ok
        assert result.step == 3

    def test_forward_reference(self):
        steps = [step_from_dict({"kind": "nec", "ref": 1})]
        result = check_derivation(steps)
        assert not result.ok
        assert result.step == 1

    def test_bad_axiom_instance(self):
        steps = [step_from_dict({"kind": "axiom", "schema": "Ax1-trans",
                                 "formula": "(p >= q) -> (p >= r)"})]
        result = check_derivation(steps)
        assert not result.ok
        assert result.step == 1

    def test_empty_derivation(self):
        assert not check_derivation([]).ok


class TestStepFromDict:
    def test_unknown_schema(self):
        with pytest.raises(ValueError):
            step_from_dict({"kind": "axiom", "schema": "Ax9",
                            "formula": "p"})

    def test_pc_taut_requires_formula(self):
        with pytest.raises(ValueError):
            step_from_dict({"kind": "axiom", "schema": "PC-taut",
                            "subst": {"phi": "p"}})

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            step_from_dict({"kind": "lemma"})
