"""Pair validation, signatures, cusp splits, and the mirror operation."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modmaps.perm_core import (
    Permutation,
    compose,
    conjugate,
    cycle_type,
    identity,
    inverse,
    parse_cycles,
)
from modmaps.subgroup_model import (
    CosetPair,
    CuspSplit,
    DegreeMismatch,
    NonIntegralGenus,
    NotInvolution,
    NotOrderThree,
    NotTransitive,
    PairError,
    Signature,
    cusp_split,
    genus_from_counts,
    is_genus,
    is_torsion_free,
    mirror,
    signature,
    validate,
)

perms6 = st.permutations(list(range(6))).map(Permutation)


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

class TestValidate:
    def test_accepts_valid_pair(self, pair_all_width_two):
        assert pair_all_width_two.mu == 6

    def test_not_involution(self):
        with pytest.raises(NotInvolution):
            validate(parse_cycles("(0 1 2)", 3), identity(3))

    def test_not_order_three(self):
        with pytest.raises(NotOrderThree):
            validate(parse_cycles("(0 1)", 2), parse_cycles("(0 1)", 2))

    def test_not_transitive(self):
        with pytest.raises(NotTransitive):
            validate(parse_cycles("(0 1)(2 3)", 4), identity(4))

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            validate(identity(2), identity(3))

    def test_errors_are_pair_errors(self):
        for exc in (DegreeMismatch, NotInvolution, NotOrderThree, NotTransitive):
            assert issubclass(exc, PairError)
        assert issubclass(PairError, ValueError)

    def test_identity_phi_allowed_if_transitive(self):
        pair = validate(identity(3), parse_cycles("(0 1 2)", 3))
        assert pair.mu == 3


# ---------------------------------------------------------------------------
# Signature / genus relation
# ---------------------------------------------------------------------------

class TestGenusFromCounts:
    def test_all_width_two_values(self):
        assert genus_from_counts(6, 0, 0, 3) == 0

    def test_torus_values(self):
        assert genus_from_counts(6, 0, 0, 1) == 1

    def test_full_modular_group_values(self):
        # index 1: e2 = e3 = h = 1
        assert genus_from_counts(1, 1, 1, 1) == 0

    def test_non_integral_raises(self):
        with pytest.raises(NonIntegralGenus):
            genus_from_counts(6, 1, 0, 3)

    def test_negative_raises(self):
        with pytest.raises(NonIntegralGenus):
            genus_from_counts(6, 0, 0, 5)

    def test_torsion_free_genus_zero_index_relation(self):
        # mu = 6(h - 2) for torsion-free genus 0
        for h in range(3, 13):
            assert genus_from_counts(6 * (h - 2), 0, 0, h) == 0

    def test_torsion_free_genus_one_index_relation(self):
        # mu = 6h for torsion-free genus 1
        for h in range(1, 11):
            assert genus_from_counts(6 * h, 0, 0, h) == 1


class TestSignature:
    def test_all_width_two_pair(self, pair_all_width_two):
        assert signature(pair_all_width_two) == Signature(6, 0, 0, 0, 3)
        assert cusp_split(pair_all_width_two).widths == (2, 2, 2)

    def test_width_four_pair(self, pair_width_four):
        assert signature(pair_width_four) == Signature(6, 0, 0, 0, 3)
        assert cusp_split(pair_width_four).widths == (4, 1, 1)

    def test_torus_pair(self, pair_torus):
        assert signature(pair_torus) == Signature(6, 1, 0, 0, 1)
        assert cusp_split(pair_torus).widths == (6,)

    def test_torsion_counts(self, pair_with_torsion):
        sig = signature(pair_with_torsion)
        assert (sig.e2, sig.e3) == (2, 1)

    def test_inconsistent_signature_rejected(self):
        with pytest.raises(ValueError):
            Signature(6, 1, 0, 0, 3)

    @given(lam=perms6)
    def test_conjugation_invariance(self, lam):
        pair = validate(
            parse_cycles("(0 1)(2 3)(4 5)", 6), parse_cycles("(0 1 2)(3 4 5)", 6)
        )
        conj = CosetPair(
            6, conjugate(pair.phi, lam), conjugate(pair.psi, lam)
        )
        assert signature(conj) == signature(pair)
        assert cusp_split(conj) == cusp_split(pair)


class TestStructuralCounts:
    """e2 + 2*(2-cycles of phi) = mu and e3 + 3*(3-cycles of psi) = mu."""

    def test_on_fixtures(self, pair_all_width_two, pair_with_torsion):
        for pair in (pair_all_width_two, pair_with_torsion):
            types_phi = cycle_type(pair.phi)
            types_psi = cycle_type(pair.psi)
            e2 = types_phi.count(1)
            e3 = types_psi.count(1)
            assert e2 + 2 * types_phi.count(2) == pair.mu
            assert e3 + 3 * types_psi.count(3) == pair.mu


# ---------------------------------------------------------------------------
# CuspSplit
# ---------------------------------------------------------------------------

class TestCuspSplit:
    def test_sorted_descending_enforced(self):
        with pytest.raises(ValueError):
            CuspSplit((1, 4, 1))

    def test_positive_widths_enforced(self):
        with pytest.raises(ValueError):
            CuspSplit((4, 0))

    def test_of_sorts(self):
        split = CuspSplit.of([1, 4, 1])
        assert split.widths == (4, 1, 1)
        assert split.mu == 6
        assert split.h == 3

    def test_str_form(self):
        assert str(CuspSplit((14, 1, 1, 1, 1))) == "14-1-1-1-1"

    def test_split_sums_to_mu(self, pair_width_four):
        split = cusp_split(pair_width_four)
        assert split.mu == pair_width_four.mu
        assert split.h == signature(pair_width_four).h


# ---------------------------------------------------------------------------
# Predicates and mirror
# ---------------------------------------------------------------------------

class TestPredicates:
    def test_torsion_free_fixtures(self, pair_all_width_two, pair_with_torsion):
        assert is_torsion_free(pair_all_width_two)
        assert not is_torsion_free(pair_with_torsion)

    def test_genus_predicate(self, pair_all_width_two, pair_torus):
        assert is_genus(pair_all_width_two, 0)
        assert not is_genus(pair_all_width_two, 1)
        assert is_genus(pair_torus, 1)


class TestMirror:
    def test_involution_on_raw_data(self, pair_width_four, pair_torus):
        for pair in (pair_width_four, pair_torus):
            twice = mirror(mirror(pair))
            assert twice.phi == pair.phi and twice.psi == pair.psi

    def test_psi_inverted(self, pair_all_width_two):
        m = mirror(pair_all_width_two)
        assert m.phi == pair_all_width_two.phi
        assert m.psi == inverse(pair_all_width_two.psi)

    def test_preserves_cusp_split(self, pair_all_width_two, pair_width_four,
                                  pair_torus, pair_with_torsion):
        for pair in (pair_all_width_two, pair_width_four, pair_torus,
                     pair_with_torsion):
            assert cusp_split(mirror(pair)) == cusp_split(pair)

    def test_preserves_signature(self, pair_with_torsion):
        assert signature(mirror(pair_with_torsion)) == signature(pair_with_torsion)


# ---------------------------------------------------------------------------
# Genus relation on exhaustively generated small pairs
# ---------------------------------------------------------------------------

def test_genus_relation_integral_on_all_pairs_of_degree_up_to_five():
    """The genus relation must come out a nonnegative integer for every
    valid pair, including ones with torsion; degrees 1..5 exhaustively."""
    from conftest import labeled_pairs_brute

    seen = 0
    for mu in range(1, 6):
        for pair in labeled_pairs_brute(mu, torsion_free=False):
            sig = signature(pair)  # raises NonIntegralGenus on failure
            assert sig.g >= 0
            assert compose(pair.phi, pair.psi).degree == mu
            seen += 1
    assert seen > 0
