#!/usr/bin/env python3
"""
diskernel - smn and Recursion Theorem Tests

Run with:
    pytest tests/test_smn_rec.py -v
"""

import pytest

from diskernel.baire_core import (
    compatible,
    constant_stream,
    interleave,
    interleave_words,
    ramp_stream,
    word_stream,
)
from diskernel.phi_machine import (
    Compose,
    ConstWord,
    Delay,
    EvenPart,
    Identity,
    InterleaveSection,
    MachineName,
    OddPart,
    Pairing,
    Prepend,
    SmnMachine,
    Stutter,
    Universal,
    encode_machine,
    eval_name,
    fuel_for,
    universal,
)
from diskernel.smn_rec import (
    NameTransformer,
    TotalityError,
    const_section,
    const_section_transformer,
    fixpoint,
    fixpoint_transformer,
    param_fixpoint,
    smn_transform,
)

STOCK_F = [
    EvenPart(),
    OddPart(),
    Identity(),
    ConstWord((3, 1)),
    Pairing(OddPart(), EvenPart()),
    Compose(Prepend((2,)), OddPart()),
    Universal(),
]

# Machines g for the constant family Φ_p(r) = name of g
FAMILY_MACHINES = [
    Identity(),
    Prepend((1,)),
    ConstWord((2, 5)),
    EvenPart(),
    OddPart(),
    Stutter(2),
    Delay(1),
    Compose(Prepend((4,)), OddPart()),
    Pairing(Identity(), ConstWord((9,))),
    Compose(Stutter(2), EvenPart()),
]


def random_word(rng, length, alphabet=4):
    return tuple(rng.randrange(alphabet) for _ in range(length))


def constant_family(g):
    """p with Φ_p(r) = a name of g for every r"""
    return encode_machine(Compose(EvenPart(), InterleaveSection(encode_machine(g))))


class TestNameTransformer:
    """Test suite for NameTransformer streams"""

    def test_modulus_path(self):
        """Each output digit is read from modulus(n) input digits"""
        T = NameTransformer(Stutter(2), modulus=lambda n: (n + 1) // 2, label="stutter")
        assert T(ramp_stream()).prefix(5) == (0, 0, 1, 1, 2)

    def test_search_path(self):
        """Without a modulus the input window doubles until the digit appears"""
        T = NameTransformer(Delay(3), label="delay")
        assert T(ramp_stream()).prefix(4) == (0, 1, 2, 3)

    def test_search_cap(self):
        T = NameTransformer(ConstWord(()), label="silent", search_cap=16)
        with pytest.raises(TotalityError):
            T(ramp_stream()).digit(0)

    def test_then_identity_keeps_transformer(self):
        S = smn_transform(EvenPart())
        assert S.then(Identity()) is S

    def test_then_composes_word_map(self):
        S = smn_transform(EvenPart())
        T = S.then(OddPart(), label="odd∘smn")
        q = ramp_stream(2)
        assert T.approximate(q, 6) == OddPart()(S.approximate(q, 6))
        assert T(q).prefix(3) == S(q).prefix(6)[1::2]

    def test_to_expr(self):
        expr = smn_transform(EvenPart()).to_expr()
        assert expr["transformer"] == "smn"
        assert expr["word_map"]["op"] == "smn"


class TestSmn:
    """Test suite for the smn theorem"""

    def test_section_semantics(self):
        """F = even part: Φ_{S(q)}(p) begins with q"""
        S = smn_transform(EvenPart())
        q = ramp_stream(3)
        out = eval_name(S(q), (1, 2), fuel_for((1, 2))).output
        assert out == (3, 4)

    def test_section_of_odd_part_ignores_parameter(self):
        S = smn_transform(OddPart())
        out = eval_name(S(ramp_stream(3)), (8, 9), fuel_for((8, 9))).output
        assert out == (8, 9)

    def test_stream_is_encoded_name(self):
        assert isinstance(smn_transform(EvenPart())(ramp_stream()), MachineName)

    @pytest.mark.parametrize("start", range(10))
    def test_word_map_matches_stream(self, start):
        """The word map and the name agree on the digits a prefix determines"""
        S = smn_transform(EvenPart())
        q = ramp_stream(start)
        assert S.approximate(q, 20) == S(q).prefix(20)

    def test_total_on_every_parameter(self):
        """Every parameter prefix of length m yields m name digits"""
        S = smn_transform(OddPart())
        for m in range(12):
            assert len(S.approximate(constant_stream(1), m)) == m

    def test_sections_at_depth_16(self, rng):
        """Φ_{S(q)}(p) = F⟨q,p⟩ on 100 sampled (F, q, p)"""
        for i in range(100):
            F = STOCK_F[i % len(STOCK_F)]
            q = word_stream(random_word(rng, 16))
            p = random_word(rng, 16)
            out = eval_name(smn_transform(F)(q), p, fuel_for(p)).output
            assert out == F(interleave_words(q.prefix(16), p))

    def test_even_section_certifies_parameter(self, rng):
        S = smn_transform(EvenPart())
        for _ in range(10):
            q = word_stream(random_word(rng, 16))
            p = random_word(rng, 16)
            assert eval_name(S(q), p, fuel_for(p)).output == q.prefix(16)


class TestConstSection:
    """Test suite for the constant-section transformer"""

    def test_constant_map(self):
        """Φ_{R(p)}(q) = U(p) whatever q is"""
        p = interleave(encode_machine(ConstWord((7,))), word_stream())
        name = const_section(p)
        assert eval_name(name, (0, 0), fuel_for((0, 0))).output == (7,)
        assert eval_name(name, (3, 9), fuel_for((3, 9))).output == (7,)

    def test_singleton(self):
        assert const_section_transformer() is const_section_transformer()


class TestFixpoint:
    """Test suite for the recursion theorem"""

    @pytest.mark.parametrize("machine", [Identity(), ConstWord((0,)), Stutter(2)])
    def test_total(self, machine):
        """T(p) is computable digit by digit"""
        p = encode_machine(machine)
        assert len(fixpoint(p).prefix(5)) == 5

    def test_word_map_matches_stream(self):
        p = encode_machine(Identity())
        assert fixpoint_transformer().approximate(p, 5) == fixpoint(p).prefix(5)

    @pytest.mark.parametrize("g", FAMILY_MACHINES)
    def test_constant_family(self, g, rng):
        """Φ_p(r) names g for every r, so Φ_{T(p)}(x) = g(x) three digits behind"""
        t = fixpoint(constant_family(g))
        for length in (8, 12, 19):
            x = random_word(rng, length, alphabet=3)
            out = eval_name(t, x, fuel_for(x)).output
            assert out == g(x[:length - 3])

    @pytest.mark.parametrize("g", FAMILY_MACHINES[:5])
    def test_constant_family_matches_named_value(self, g, rng):
        """Φ_{T(p)} is compatible with Φ_{Φ_p T(p)}"""
        p = constant_family(g)
        t = fixpoint(p)
        key = t.prefix(8)
        value_name = eval_name(p, key, fuel_for(key)).output
        assert len(value_name) == 8
        x = random_word(rng, 10, alphabet=3)
        left = eval_name(t, x, fuel_for(x)).output
        right = eval_name(value_name, x, len(value_name)).output
        assert left
        assert compatible(left, right)

    @pytest.mark.parametrize("F", STOCK_F[:5])
    def test_smn_family(self, F, rng):
        """Φ_p(r) names F⟨r,·⟩, so Φ_{T(p)}(x) = F⟨T(p), x⟩ three digits behind"""
        t = fixpoint(encode_machine(SmnMachine(F)))
        for length in (8, 19):
            x = random_word(rng, length, alphabet=3)
            m = length - 3
            out = eval_name(t, x, fuel_for(x)).output
            assert out == F(interleave_words(t.prefix(m), x[:m]))

    def test_quine(self, rng):
        """With Φ_p(r) a name of x ↦ r, T(p) prints its own name"""
        t = fixpoint(encode_machine(SmnMachine(EvenPart())))
        for _ in range(3):
            x = random_word(rng, 19, alphabet=3)
            assert eval_name(t, x, fuel_for(x)).output == t.prefix(16)


class TestParamFixpoint:
    """Test suite for the parameterized recursion theorem"""

    def test_modulus(self):
        """m parameter digits determine 2m digits of R(q)"""
        R = param_fixpoint(EvenPart())
        q = word_stream()
        assert R.approximate(q, 3) == R(q).prefix(6)

    def test_parameter_on_odd_digits(self):
        R = param_fixpoint(EvenPart())
        q = ramp_stream(5)
        assert R(q).prefix(8)[1::2] == (5, 6, 7, 8)

    @pytest.mark.slow
    def test_contract_at_depth_16(self, rng):
        """U R(q) = F⟨q, R(q)⟩ for every stock F over 50 sampled q"""
        for i in range(50):
            F = STOCK_F[i % len(STOCK_F)]
            q = word_stream(random_word(rng, 17))
            r = param_fixpoint(F)(q)
            key = q.prefix(17)
            out = universal(r, fuel_for(key)).output
            assert out == F(interleave_words(key, r.prefix(17)))

    @pytest.mark.parametrize("digit", range(4))
    def test_even_part_certifies_parameter(self, digit):
        """F = even part: U R(q) = q, read to depth 16"""
        q = constant_stream(digit)
        r = param_fixpoint(EvenPart())(q)
        out = universal(r, fuel_for(q.prefix(17))).output
        assert out == q.prefix(17)

    @pytest.mark.parametrize("listed, certified", [(2, 0), (3, 1), (4, 3), (5, 5), (8, 8)])
    def test_short_keys(self, listed, certified):
        """With the key q|m listed, U R(q) is certified to m digits once m ≥ 5"""
        q = ramp_stream(1)
        r = param_fixpoint(EvenPart())(q)
        out = universal(r, fuel_for(q.prefix(listed))).output
        assert out == q.prefix(certified)
