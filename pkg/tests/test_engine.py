import pytest

from deolog.syntax import parse
from deolog.models import holds_at
from deolog.regimes import BasicRegime, DeltaRegime, WeightClass, \
    WeightedRegime
from deolog.engine import (BudgetExceeded, EngineConfig, Sequent, check,
                           check_forall_weights_invalidity,
                           find_countermodel_basic, find_countermodel_delta,
                           satisfiable, verify_weight_robust)
from deolog.documents import model_to_doc

BASIC4 = BasicRegime(4)
DELTA0 = DeltaRegime(0)


def _refutes(verdict, text):
    goal = Sequent.parse(text).goal()
    return holds_at(verdict.countermodel, goal, verdict.witness)


class TestSequent:
    def test_parse(self):
        s = Sequent.parse("O p ; q |- O q")
        assert s.premises == (parse("O p"), parse("q"))
        assert s.conclusion == parse("O q")

    def test_parse_empty_left(self):
        assert Sequent.parse("|- O p").premises == ()

    def test_parse_requires_turnstile(self):
        with pytest.raises(ValueError):
            Sequent.parse("O p")

    def test_str_roundtrip(self):
        s = Sequent.parse("O p ; ~q |- p >= q")
        assert Sequent.parse(str(s)) == s


class TestCheck:
    def test_identity_every_regime(self):
        s = Sequent.parse("O p |- O p")
        assert check(s, DELTA0).kind == "valid"
        assert check(s, BASIC4).kind == "qualified-valid"
        assert check(s, WeightedRegime()).kind == "valid"

    def test_delta_validity_fingerprint(self):
        v = check(Sequent.parse("O p ; ~p > ~q |- O q"), DELTA0)
        assert v.kind == "valid"
        assert v.fingerprint["extra_vars"] == 0
        assert v.exit_code() == 0

    def test_delta_invalidity(self):
        text = "O p |- O(p & q) | O(p & ~q)"
        v = check(Sequent.parse(text), DELTA0)
        assert v.kind == "invalid"
        assert v.exit_code() == 1
        assert _refutes(v, text)

    def test_depth_two_invalidity(self):
        text = "O O p |- O p"
        v = check(Sequent.parse(text), DELTA0)
        assert v.kind == "invalid"
        assert _refutes(v, text)

    def test_basic_invalidity(self):
        v = check(Sequent.parse("|- p"), BASIC4)
        assert v.kind == "invalid"
        assert len(v.countermodel.worlds) == 1

    def test_weighted_validity_with_class(self):
        regime = WeightedRegime(WeightClass.parse("q>p,q>r"))
        v = check(Sequent.parse("O(p | q) ; ~q |- O p"), regime)
        assert v.kind == "valid"
        assert v.fingerprint["grid"] == list(range(1, 10))

    def test_weighted_invalid_without_class(self):
        # valid under the q-heavy class, falsifiable with a free weighting
        text = "O p |- O(p & q) | O(p & ~q)"
        heavy = WeightedRegime(WeightClass.parse("q>p,q>r"))
        assert check(Sequent.parse(text), heavy).kind == "valid"
        v = check(Sequent.parse(text), WeightedRegime())
        assert v.kind == "invalid"
        assert _refutes(v, text)

    def test_weight_robust_countermodel_shape(self):
        text = "O(p -> q) |- O p -> O q"
        v = check(Sequent.parse(text), WeightedRegime())
        assert v.kind == "invalid"
        assert v.weight_robust is True
        assert v.strategy == "forced"
        assert _refutes(v, text)
        m = v.countermodel
        u = lambda name: m.utility[m.world(name)]
        assert u("11") > u("01") > u("10")
        assert u("00") == max(u(w.name) for w in m.worlds)

    def test_determinism(self):
        text = "C(p,q) ; C(r,q) |- C(p | r, q)"
        a = check(Sequent.parse(text), DELTA0)
        b = check(Sequent.parse(text), DELTA0)
        assert model_to_doc(a.countermodel) == model_to_doc(b.countermodel)
        assert a.witness.name == b.witness.name

    def test_regime_monotonicity_spot(self):
        for text in ("O p ; ~p > ~q |- O q", "C(p,q) ; p |- O q",
                     "O p |- P p"):
            s = Sequent.parse(text)
            if check(s, DELTA0).kind == "valid":
                assert check(s, WeightedRegime()).kind != "invalid"
            if check(s, BASIC4).kind == "qualified-valid":
                assert check(s, DELTA0).kind != "invalid"


class TestForallWeights:
    def test_robust_item(self):
        text = "O(p & q) |- O q"
        v = check_forall_weights_invalidity(Sequent.parse(text))
        assert v.kind == "invalid"
        assert v.weight_robust is True
        assert verify_weight_robust(v.countermodel)
        assert _refutes(v, text)

    def test_validity_formula_item(self):
        v = check_forall_weights_invalidity(Sequent.parse("|- O(O p -> p)"))
        assert v.kind == "invalid"

    def test_nested_permission_item(self):
        v = check_forall_weights_invalidity(Sequent.parse("P p |- P O p"))
        assert v.kind == "invalid"


class TestSatisfiable:
    def test_chisholm(self):
        from deolog.syntax import desugar
        fs = [parse(t) for t in ("O g", "C(g,t)", "C(~g,~t)", "~g")]
        v = satisfiable(fs, DELTA0)
        assert v.kind == "sat"
        for f in fs:
            assert holds_at(v.countermodel, desugar(f, "g"), v.witness)

    def test_contradiction(self):
        v = satisfiable([parse("p & ~p")], DELTA0)
        assert v.kind == "unsat"
        assert v.exit_code() == 1

    def test_oblig_top(self):
        assert satisfiable([parse("O T")], DELTA0).kind == "unsat"
        assert satisfiable([parse("O T")], BASIC4).kind == "unsat"

    def test_perm_bot(self):
        assert satisfiable([parse("P F")], BASIC4).kind == "unsat"


class TestStrictDef7:
    def test_perm_top_flips(self):
        default = check(Sequent.parse("|- ~(P T)"), BASIC4)
        assert default.kind == "qualified-valid"
        strict = check(Sequent.parse("|- P T"), BASIC4,
                       EngineConfig(strict_def7=True))
        assert strict.kind == "qualified-valid"

    def test_contingent_operands_agree(self):
        # both readings of P coincide away from T/F operands
        s = Sequent.parse("O p |- P p")
        assert check(s, BASIC4).kind == "qualified-valid"
        assert check(s, BASIC4,
                     EngineConfig(strict_def7=True)).kind == "qualified-valid"


class TestBudgets:
    def test_variable_cap(self):
        config = EngineConfig(var_cap=2)
        v = check(Sequent.parse("O p ; q & r |- O p"), DELTA0, config)
        assert v.kind == "qualified-valid"
        assert v.detail is not None
        assert v.exit_code() == 0

    def test_oracle_world_cap(self):
        with pytest.raises(BudgetExceeded):
            find_countermodel_delta(
                Sequent.parse("O O p ; q & r |- O p").goal(), 0,
                EngineConfig(oracle_world_cap=6))

    def test_basic_search_none_when_valid(self):
        assert find_countermodel_basic(
            Sequent.parse("|- ~(O p & O ~p)").goal(), 4) is None
