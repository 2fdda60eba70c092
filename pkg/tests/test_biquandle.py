import itertools

import pytest

from bqlinks import FiniteBiquandle, FormatError, Permutation, admissible_automorphisms, automorphisms, is_homomorphism
from bqlinks.biquandle import is_admissible
from bqlinks.errors import ContractError
from conftest import SWAP3_ROWS, LATIN4_ROWS, ORDER3_ROWS, alexander5, dihedral3, swap3
from oracles import axioms_ok, brute_automorphisms


def zero_based(b):
    return [[v - 1 for v in r] for r in b.star], [[v - 1 for v in r] for r in b.circ]


@pytest.mark.parametrize("maker", [swap3, dihedral3, alexander5, lambda: FiniteBiquandle.trivial(3),
                                   lambda: FiniteBiquandle.from_matrix(ORDER3_ROWS),
                                   lambda: FiniteBiquandle.from_matrix(LATIN4_ROWS)])
def test_known_biquandles_are_valid(maker):
    b = maker()
    assert b.check_axioms().valid
    assert axioms_ok(*zero_based(b)) == set()


def test_mutation_breaking_axiom_one_has_witness():
    rows = [r[:] for r in SWAP3_ROWS]
    rows[0][0] = 1
    rep = FiniteBiquandle.from_matrix(rows).check_axioms()
    assert not rep.valid
    assert any(v.axiom == 1 and v.witness == (1,) for v in rep.violations)


def test_every_single_entry_mutation_agrees_with_oracle():
    for i, j in itertools.product(range(3), range(6)):
        for v in (1, 2, 3):
            if SWAP3_ROWS[i][j] == v:
                continue
            rows = [r[:] for r in SWAP3_ROWS]
            rows[i][j] = v
            b = FiniteBiquandle.from_matrix(rows)
            assert b.check_axioms().failed_axioms == axioms_ok(*zero_based(b))


def test_out_of_range_entry_is_a_format_error():
    rows = [r[:] for r in SWAP3_ROWS]
    rows[1][2] = 4
    with pytest.raises(FormatError):
        FiniteBiquandle.from_matrix(rows)


def test_parse_round_trip():
    b = swap3()
    assert FiniteBiquandle.parse(b.to_text()) == b
    with pytest.raises(FormatError):
        FiniteBiquandle.parse("3\n1 2 3\n")


def test_s_map_and_inverse():
    b = swap3()
    assert b.s_map(1, 1) == (2, 2)
    assert b.s_inverse(2, 2) == (1, 1)
    for x, y in itertools.product(b.elements, repeat=2):
        assert b.s_inverse(*b.s_map(x, y)) == (x, y)
    t = FiniteBiquandle.trivial(3)
    assert all(t.s_map(x, y) == (y, x) for x, y in itertools.product(t.elements, repeat=2))


def test_automorphisms_match_brute_force():
    for b in (swap3(), dihedral3(), FiniteBiquandle.trivial(3), FiniteBiquandle.from_matrix(ORDER3_ROWS)):
        got = [p.images for p in automorphisms(b)]
        assert got == brute_automorphisms(*zero_based(b))


def test_automorphisms_form_a_group():
    auts = automorphisms(FiniteBiquandle.trivial(3))
    s = set(auts)
    assert all(a.compose(b) in s and a.inverse() in s for a in auts for b in auts)


def test_example_automorphisms_and_admissible():
    b = swap3()
    want = [Permutation.parse("1 2 3"), Permutation.parse("2 1 3")]
    assert automorphisms(b) == want
    assert admissible_automorphisms(b) == want
    assert is_homomorphism(b, b, [2, 1, 3])


def test_trivial_quandle_every_permutation_admissible():
    assert len(admissible_automorphisms(FiniteBiquandle.trivial(3))) == 6


def test_admissible_properties_hold():
    for b in (swap3(), FiniteBiquandle.from_matrix(ORDER3_ROWS), FiniteBiquandle.trivial(4)):
        for f in admissible_automorphisms(b):
            for x, y in itertools.product(b.elements, repeat=2):
                assert f(b.op_star(x, y)) == b.op_star(f(x), f(y))
                assert f(b.op_circ(x, y)) == b.op_circ(f(x), f(y))
                assert b.op_star(x, y) == b.op_circ(x, f(y))


def test_dihedral_has_no_admissible_automorphism():
    b = dihedral3()
    assert admissible_automorphisms(b) == []
    assert not is_admissible(b, Permutation.identity(3))


def test_is_homomorphism_rejects_bad_map():
    with pytest.raises(FormatError):
        is_homomorphism(swap3(), swap3(), [1, 2, 4])


def test_latin_class():
    assert dihedral3().latin_class().kind == "semi_latin"
    assert dihedral3().latin_class().family == "star"
    assert FiniteBiquandle.trivial(1).latin_class().kind == "latin"
    assert swap3().latin_class().kind == "neither"
    assert FiniteBiquandle.from_matrix(LATIN4_ROWS).latin_class().kind == "latin"


def test_permutation_helpers():
    f = Permutation.from_cycles(5, (1, 2, 3), (4, 5))
    assert f.images == (2, 3, 1, 5, 4)
    assert sorted(map(len, f.orbits())) == [2, 3]
    assert f.power(6) == Permutation.identity(5)
    with pytest.raises(FormatError):
        Permutation.parse("1 1 2")


def test_s_inverse_needs_valid_structure():
    b = FiniteBiquandle.from_functions(2, lambda x, y: 1, lambda x, y: 1)
    with pytest.raises(ContractError):
        b.s_inverse(1, 1)
