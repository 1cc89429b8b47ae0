import random

import pytest

from deolog.syntax import (And, Bot, Box, CondOblig, Diamond, Iff, Implies,
                           Not, Oblig, Or, ParseError, Perm, PrefStrict,
                           PrefWeak, Top, Var, desugar, is_core, modal_depth,
                           parse, pref_atoms, pref_operands, pretty,
                           top_variable, variables)

P, Q, R = Var("p"), Var("q"), Var("r")


class TestParse:
    def test_cond_oblig(self):
        assert parse("C(p, q)") == CondOblig(P, Q)

    def test_nested_strict_needs_parens(self):
        assert parse("p > (q > r)") == PrefStrict(P, PrefStrict(Q, R))

    def test_precedence(self):
        assert parse("O p -> O (p | q)") == Implies(Oblig(P),
                                                    Oblig(Or(P, Q)))

    def test_truncated_input(self):
        with pytest.raises(ParseError) as exc:
            parse("p >")
        assert exc.value.offset == 3

    def test_pref_non_associative(self):
        with pytest.raises(ParseError):
            parse("p > q > r")

    def test_unexpected_character(self):
        with pytest.raises(ParseError) as exc:
            parse("p & $q")
        assert exc.value.offset == 4

    def test_expected_token_set(self):
        with pytest.raises(ParseError) as exc:
            parse("& p")
        assert exc.value.expected   # nonempty

    def test_unicode_connectives(self):
        assert parse("¬p ∧ (q ≽ r)") == parse("~p & (q >= r)")
        assert parse("□p → ◇q") == parse("[]p -> <>q")
        assert parse("⊤ ≻ ⊥") == parse("T > F")

    def test_implies_right_associative(self):
        assert parse("p -> q -> r") == Implies(P, Implies(Q, R))

    def test_and_or_left_associative(self):
        assert parse("p & q & r") == And(And(P, Q), R)
        assert parse("p | q | r") == Or(Or(P, Q), R)

    def test_unary_stack(self):
        assert parse("~[]<>O P p") == Not(Box(Diamond(Oblig(Perm(P)))))

    def test_whitespace_insensitive(self):
        assert parse(" O  p ") == parse("O p")

    def test_identifiers(self):
        f = parse("go_home2 >= stay")
        assert f == PrefWeak(Var("go_home2"), Var("stay"))


class TestPretty:
    def test_cond_oblig(self):
        assert pretty(CondOblig(P, Q)) == "C(p, q)"

    def test_pref_weak(self):
        assert pretty(PrefWeak(Not(P), Q)) == "~p >= q"

    def test_roundtrip_random(self):
        rng = random.Random(7)
        for _ in range(1000):
            f = _random_surface(rng, 4)
            assert parse(pretty(f)) == f

    def test_minimal_parens(self):
        assert pretty(parse("(p & q) | r")) == "p & q | r"
        assert pretty(parse("p & (q | r)")) == "p & (q | r)"


def _random_surface(rng, depth):
    if depth == 0:
        return rng.choice([P, Q, R, Top(), Bot()])
    kind = rng.randrange(12)
    sub = lambda: _random_surface(rng, depth - 1)
    if kind == 0:
        return rng.choice([P, Q, R])
    if kind == 1:
        return Not(sub())
    if kind == 2:
        return And(sub(), sub())
    if kind == 3:
        return Or(sub(), sub())
    if kind == 4:
        return Implies(sub(), sub())
    if kind == 5:
        return Iff(sub(), sub())
    if kind == 6:
        return PrefWeak(sub(), sub())
    if kind == 7:
        return PrefStrict(sub(), sub())
    if kind == 8:
        return Box(sub())
    if kind == 9:
        return Oblig(sub())
    if kind == 10:
        return Perm(sub())
    return CondOblig(sub(), sub())


class TestDesugar:
    def test_diamond(self):
        assert desugar(Diamond(P)) == PrefWeak(P, P)

    def test_oblig_shape(self):
        core = desugar(Oblig(P))
        # strict preference of T&p over T&~p: (a >= b) & ~(b >= a)
        assert isinstance(core, And)
        a_ge_b, neg = core.left, core.right
        assert isinstance(a_ge_b, PrefWeak)
        assert isinstance(neg, Not) and isinstance(neg.child, PrefWeak)
        assert neg.child == PrefWeak(a_ge_b.right, a_ge_b.left)
        assert a_ge_b.left == And(desugar(Top(), "p"), P)
        assert a_ge_b.right == And(desugar(Top(), "p"), Not(P))

    def test_perm_default_reading(self):
        assert desugar(Perm(P)) == PrefWeak(P, Not(P))

    def test_perm_strict_def7(self):
        core = desugar(Perm(P), strict_def7=True)
        assert core == Not(desugar(Oblig(Not(P))))

    def test_perm_bot(self):
        # P F lowers to a comparison with an empty left operand
        core = desugar(Perm(Bot()))
        assert isinstance(core, PrefWeak)
        assert core.left == desugar(Bot(), "_t")

    def test_core_output_is_core(self):
        rng = random.Random(9)
        for _ in range(300):
            f = _random_surface(rng, 3)
            assert is_core(desugar(f))

    def test_idempotent_on_core(self):
        rng = random.Random(10)
        for _ in range(300):
            core = desugar(_random_surface(rng, 3), "p")
            assert desugar(core, "p") == core

    def test_top_variable_shared(self):
        assert top_variable(parse("O q"), parse("r & z")) == "q"
        assert top_variable(parse("T")) == "_t"


class TestStructuralQueries:
    def test_variables(self):
        assert variables(desugar(Oblig(P))) == ["p"]
        assert variables(desugar(parse("p >= q"))) == ["p", "q"]
        assert variables(desugar(Top())) == ["_t"]

    def test_modal_depth(self):
        assert modal_depth(desugar(parse("p & ~q"))) == 0
        assert modal_depth(desugar(parse("O p"))) == 1
        assert modal_depth(desugar(parse("O O p"))) == 2

    def test_pref_operands_flat(self):
        assert pref_operands(desugar(parse("p >= q"))) == [P, Q]

    def test_pref_operands_oblig_dedup(self):
        ops = pref_operands(desugar(Oblig(P)))
        assert len(ops) == 2
        assert all(isinstance(op, And) for op in ops)

    def test_pref_operands_stratified(self):
        ops = pref_operands(desugar(parse("O O p")))
        has_pref = [modal_depth(op) > 0 for op in ops]
        # once an operand mentions an inner preference, all later ones do too
        assert has_pref == sorted(has_pref)

    def test_pref_atoms_innermost_first(self):
        atoms = pref_atoms(desugar(parse("O O p")))
        depths = [modal_depth(a) for a in atoms]
        assert depths == sorted(depths)
        assert len(atoms) == len(set(atoms))

    def test_modal_depth_sugared_always_positive(self):
        for text in ("p >= q", "p > q", "p ~~ q", "[]p", "<>p", "O p",
                     "P p", "C(p, q)"):
            assert modal_depth(desugar(parse(text))) >= 1
