from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from dynwfa import algebra
from dynwfa.algebra import (
    B,
    F2,
    Q,
    Z,
    ZMIN,
    Alphabet,
    Context,
    LetterSet,
    NullableSet,
    TupleLabelSet,
    TupleWeightSet,
    WordSet,
    join,
    make_valueset,
    parse_context_spec,
)
from dynwfa.errors import (
    ConversionError,
    JoinError,
    NotStarrable,
    ParseError,
    UnsupportedOperation,
)


def _sampler(ws, rng):
    if ws is B or ws is F2:
        return lambda: rng.random() < 0.5
    if ws is Z:
        return lambda: rng.randint(-20, 20)
    if ws is Q:
        return lambda: Fraction(rng.randint(-12, 12), rng.randint(1, 9))
    if ws is ZMIN:
        return lambda: math.inf if rng.random() < 0.15 else rng.randint(-10, 10)
    raise AssertionError(ws)


ALL_WEIGHTSETS = [B, F2, Z, Q, ZMIN]


# ---------- weightsets ----------


def test_boolean_one_plus_one_is_one():
    assert B.add(B.one(), B.one()) is True
    assert B.mul(True, False) is False
    assert B.print_value(True) == "1"
    assert B.parse("0") is False


def test_f2_one_plus_one_is_zero():
    assert F2.add(F2.one(), F2.one()) is False
    assert F2.add(True, False) is True
    assert F2.mul(True, True) is True


def test_zmin_min_plus_with_distinguished_infinity():
    assert ZMIN.zero() == math.inf
    assert not isinstance(ZMIN.zero(), int)
    assert ZMIN.add(3, 5) == 3
    assert ZMIN.mul(3, 5) == 8
    # annihilation holds by arithmetic, not by a sentinel test
    assert ZMIN.mul(ZMIN.zero(), -7) == math.inf
    assert ZMIN.print_value(ZMIN.zero()) == "oo"
    assert ZMIN.parse("oo") == math.inf
    assert ZMIN.parse("-4") == -4


def test_q_normalized_pairs():
    w = Q.parse("4/8")
    assert w == Fraction(1, 2)
    assert Q.print_value(w) == "1/2"
    assert Q.print_value(Q.parse("3")) == "3/1"
    assert Q.parse("-2/4") == Fraction(-1, 2)
    with pytest.raises(ParseError):
        Q.parse("1/0")


def test_z_parse_and_print():
    assert Z.parse("-17") == -17
    assert Z.print_value(42) == "42"
    with pytest.raises(ParseError):
        Z.parse("2.5")


def test_star_support_per_value():
    assert B.star(False) is True
    assert B.star(True) is True
    assert F2.star(False) is True
    assert Z.star(0) == 1
    assert Q.star(Fraction(1, 2)) == Fraction(2)
    assert Q.star(Fraction(-1, 3)) == Fraction(3, 4)
    assert ZMIN.star(0) == 0
    assert ZMIN.star(7) == 0
    assert ZMIN.star(math.inf) == 0
    for ws, w in [(F2, True), (Z, 1), (Z, -2), (Q, Fraction(3, 2)), (ZMIN, -1)]:
        with pytest.raises(NotStarrable) as err:
            ws.star(w)
        assert "not starrable" in str(err.value)
        assert ws.print_value(w) in str(err.value)


def test_semiring_axioms_on_random_triples():
    rng = random.Random(20240817)
    for ws in ALL_WEIGHTSETS:
        draw = _sampler(ws, rng)
        zero, one = ws.zero(), ws.one()
        for _ in range(100):
            a, b, c = draw(), draw(), draw()
            assert ws.equal_to(ws.add(a, b), ws.add(b, a))
            assert ws.equal_to(ws.add(ws.add(a, b), c), ws.add(a, ws.add(b, c)))
            assert ws.equal_to(ws.mul(ws.mul(a, b), c), ws.mul(a, ws.mul(b, c)))
            assert ws.equal_to(ws.add(a, zero), a)
            assert ws.equal_to(ws.mul(a, one), a)
            assert ws.equal_to(ws.mul(one, a), a)
            assert ws.equal_to(ws.mul(a, zero), zero)
            assert ws.equal_to(ws.mul(zero, a), zero)
            left = ws.mul(a, ws.add(b, c))
            assert ws.equal_to(left, ws.add(ws.mul(a, b), ws.mul(a, c)))
            right = ws.mul(ws.add(a, b), c)
            assert ws.equal_to(right, ws.add(ws.mul(a, c), ws.mul(b, c)))


def test_tuple_weightset_componentwise():
    tw = TupleWeightSet([Z, Q])
    assert tw.sname() == "tupleset<z, q>"
    assert tw.zero() == (0, Fraction(0))
    assert tw.mul((2, Fraction(1, 2)), (3, Fraction(2))) == (6, Fraction(1))
    assert tw.print_value((2, Fraction(1, 2))) == "(2, 1/2)"
    assert tw.parse("(2, 1/2)") == (2, Fraction(1, 2))
    assert tw.star((0, Fraction(1, 2))) == (1, Fraction(2))


# ---------- labelsets ----------


def test_letterset_is_free_without_empty_label():
    ls = LetterSet(Alphabet("ab"))
    assert ls.is_free and not ls.has_one
    with pytest.raises(UnsupportedOperation) as err:
        ls.one()
    assert "unsupported operation" in str(err.value)
    ls.validate("a")
    with pytest.raises(ParseError):
        ls.validate("c")
    with pytest.raises(ParseError):
        ls.validate("ab")


def test_wordset_monoid():
    ws = WordSet(Alphabet("ab"))
    assert not ws.is_free and ws.has_one
    assert ws.one() == ""
    assert ws.mul("ab", "ba") == "abba"
    assert ws.mul(ws.one(), "a") == "a"
    assert ws.print_value("") == "\\e"
    assert ws.parse("\\e") == ""
    assert ws.parse("abab") == "abab"


def test_nullableset_single_empty_value():
    ls = NullableSet(LetterSet(Alphabet("ab")))
    assert not ls.is_free and ls.has_one
    assert ls.one() == ""
    ls.validate("")
    ls.validate("b")
    with pytest.raises(ParseError):
        ls.validate("c")
    assert ls.print_value("") == "\\e"
    assert ls.is_one(ls.parse("\\e"))


def test_tuple_labelset():
    tl = TupleLabelSet([LetterSet(Alphabet("ab")), WordSet(Alphabet("xyz"))])
    assert not tl.is_free  # the wordset component is not free
    assert not tl.has_one  # the letterset component has no empty label
    tl.validate(("a", "xy"))
    assert tl.print_value(("a", "xy")) == "a|xy"
    assert tl.parse("b|\\e") == ("b", "")
    free = TupleLabelSet([LetterSet(Alphabet("ab")), LetterSet(Alphabet("cd"))])
    assert free.is_free


# ---------- join ----------


def test_join_alphabet_union_within_a_kind():
    a = LetterSet(Alphabet("ab"))
    b = LetterSet(Alphabet("bc"))
    j = join(a, b)
    assert isinstance(j, LetterSet)
    assert j.alphabet == Alphabet("abc")


def test_join_kind_ladder():
    lal = LetterSet(Alphabet("ab"))
    lan = NullableSet(LetterSet(Alphabet("bc")))
    law = WordSet(Alphabet("cd"))
    assert isinstance(join(lal, lan), NullableSet)
    assert join(lal, lan).alphabet == Alphabet("abc")
    assert isinstance(join(lal, law), WordSet)
    assert isinstance(join(lan, law), WordSet)
    assert join(lan, law).alphabet == Alphabet("bcd")


def test_join_weightsets():
    assert join(Z, Q) is Q
    assert join(Q, Z) is Q
    assert join(B, B) is B
    for bad in [(B, Z), (B, Q), (F2, ZMIN), (ZMIN, Z), (F2, B)]:
        with pytest.raises(JoinError) as err:
            join(*bad)
        assert bad[0].sname() in str(err.value)
        assert bad[1].sname() in str(err.value)


def test_join_contexts_componentwise():
    c1 = parse_context_spec("lal_char(ab), z")
    c2 = parse_context_spec("law_char(bc), q")
    j = join(c1, c2)
    assert j.vname() == "context<wordset<char_letters(abc)>, q>"


def test_join_context_with_non_context_is_rejected():
    ctx = parse_context_spec("lal_char(ab), z")
    for other in (Z, make_valueset("letterset<char_letters(ab)>")):
        with pytest.raises(JoinError, match="no join for"):
            join(ctx, other)
        with pytest.raises(JoinError, match="no join for"):
            join(other, ctx)


def test_join_properties_idempotent_commutative_associative():
    rng = random.Random(7)
    family = [
        LetterSet(Alphabet("ab")),
        LetterSet(Alphabet("cd")),
        NullableSet(LetterSet(Alphabet("bc"))),
        WordSet(Alphabet("ad")),
    ]
    for vs in family:
        assert join(vs, vs) == vs
    for _ in range(50):
        x, y, z = (rng.choice(family) for _ in range(3))
        assert join(x, y) == join(y, x)
        assert join(join(x, y), z) == join(x, join(y, z))


# ---------- conv ----------


def test_conv_z_into_q():
    w = Q.conv(Z, 2)
    assert w == Fraction(2)
    assert Q.print_value(w) == "2/1"


def test_conv_is_a_homomorphism():
    rng = random.Random(99)
    for _ in range(100):
        a, b = rng.randint(-30, 30), rng.randint(-30, 30)
        assert Q.conv(Z, a + b) == Q.add(Q.conv(Z, a), Q.conv(Z, b))
        assert Q.conv(Z, a * b) == Q.mul(Q.conv(Z, a), Q.conv(Z, b))
    assert Q.conv(Z, Z.zero()) == Q.zero()
    assert Q.conv(Z, Z.one()) == Q.one()


def test_conv_labels_along_the_ladder():
    lal = LetterSet(Alphabet("a"))
    lan = NullableSet(LetterSet(Alphabet("ab")))
    law = WordSet(Alphabet("abc"))
    assert lan.conv(lal, "a") == "a"
    assert law.conv(lan, "") == ""
    assert law.conv(lal, "a") == "a"
    # chain composition equals the direct conversion
    assert law.conv(lan, lan.conv(lal, "a")) == law.conv(lal, "a")
    # the empty word is preserved, concatenation is preserved
    assert law.conv(lan, lan.one()) == law.one()


def test_conv_outside_the_lattice_errors():
    with pytest.raises(ConversionError) as err:
        Q.conv(B, True)
    assert "b" in str(err.value) and "q" in str(err.value)
    with pytest.raises(ConversionError):
        Z.conv(Q, Fraction(1, 2))
    small = LetterSet(Alphabet("ab"))
    big = LetterSet(Alphabet("abc"))
    with pytest.raises(ConversionError):
        small.conv(big, "c")


# ---------- names and the grammar ----------


def test_vname_and_sname_exact_forms():
    ctx = parse_context_spec("lal_char(abc), b")
    assert ctx.vname() == "context<letterset<char_letters(abc)>, b>"
    assert ctx.sname() == "context<letterset<char_letters>, b>"
    lan = Context(NullableSet(LetterSet(Alphabet("ab"))), Z)
    assert lan.vname() == "context<nullableset<letterset<char_letters(ab)>>, z>"
    assert lan.sname() == "context<nullableset<letterset<char_letters>>, z>"
    two = Context(
        TupleLabelSet([LetterSet(Alphabet("ab")), WordSet(Alphabet("xyz"))]),
        Q,
    )
    assert (
        two.vname()
        == "context<tupleset<letterset<char_letters(ab)>, wordset<char_letters(xyz)>>, q>"
    )
    assert (
        two.sname()
        == "context<tupleset<letterset<char_letters>, wordset<char_letters>>, q>"
    )


def test_sname_is_vname_without_letter_segments():
    for spec in [
        "lal_char(abc), b",
        "law_char(ab), q",
        "context<nullableset<letterset<char_letters(xy)>>, zmin>",
    ]:
        ctx = parse_context_spec(spec)
        stripped = ctx.vname()
        while "(" in stripped:
            start = stripped.index("(")
            end = stripped.index(")", start)
            stripped = stripped[:start] + stripped[end + 1 :]
        assert stripped == ctx.sname()


def test_make_valueset_round_trip():
    for text in [
        "context<letterset<char_letters(abc)>, b>",
        "context<wordset<char_letters(ab)>, q>",
        "context<nullableset<letterset<char_letters(ab)>>, zmin>",
        "context<tupleset<letterset<char_letters(ab)>, wordset<char_letters(xy)>>, q>",
        "letterset<char_letters(ab)>",
        "wordset<char_letters(z)>",
        "tupleset<z, q>",
        "zmin",
        "b",
    ]:
        vs = make_valueset(text)
        assert vs.vname() == text
        assert make_valueset(vs.vname()) == vs


def test_aliases_are_input_only():
    ctx = make_valueset("context<letterset<char_letters(abc)>, b>")
    assert parse_context_spec("lal_char(abc), b") == ctx
    assert "lal_char" not in ctx.vname()
    law = parse_context_spec("law_char(ab), b")
    assert law.vname() == "context<wordset<char_letters(ab)>, b>"


def test_alphabet_letters_are_sorted_and_deduplicated():
    ctx = parse_context_spec("lal_char(cabba), b")
    assert ctx.vname() == "context<letterset<char_letters(abc)>, b>"


def test_vname_escaping_round_trip():
    ls = LetterSet(Alphabet([")", "a", "\\"]))
    name = ls.vname()
    assert "\\)" in name and "\\\\" in name
    assert make_valueset(name) == ls


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        make_valueset("context<letterset<char_letters(ab)>; b>")
    assert err.value.position == 35
    with pytest.raises(ParseError) as err:
        make_valueset("context<letterset<char_letters(ab)>, w>")
    assert err.value.position == 37
    with pytest.raises(ParseError) as err:
        make_valueset("b junk")
    assert "trailing" in str(err.value)


def test_sname_parses_to_type_only_valueset():
    kind = make_valueset("context<letterset<char_letters>, q>")
    assert kind.is_kind_only
    assert kind.labelset.is_free
    assert kind.sname() == kind.vname()
    with pytest.raises(UnsupportedOperation):
        kind.labelset.validate("a")


def test_context_nullable_and_freed_siblings():
    ctx = parse_context_spec("lal_char(ab), z")
    lan = ctx.nullable()
    assert lan.sname() == "context<nullableset<letterset<char_letters>>, z>"
    assert lan.nullable() == lan
    assert lan.freed() == ctx
    assert ctx.freed() == ctx
    law = parse_context_spec("law_char(ab), b")
    assert law.nullable() == law
    assert law.freed() == law
