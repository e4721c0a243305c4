# tests/test_mat2.py - 2x2 矩陣與 E2 / GE2 / GL2 測試
import pytest
from hypothesis import given, settings, strategies as st

from staudt.algebra.mat2 import (
    GeneratedGroup,
    Mat2,
    algebra_of,
    alpha_double_star,
    alpha_star,
    determinant,
    elementary,
    enumerate_GL2,
    eval_word,
    generate_E2,
    generate_GE2,
    is_GE2_ring,
    is_invertible,
    left_module_span,
    mat_identity,
    mat_mul,
    mat_transpose,
    row_times,
    verify_alpha_double_star_homomorphism,
    verify_alpha_star_homomorphism,
    verify_glrstar_factorization,
)
from staudt.algebra.ring_core import (
    JordanMap,
    catalog,
    enumerate_jordan_homomorphisms,
    identity_map,
    is_antihomomorphism,
    is_ring_homomorphism,
    ring_from_spec,
)
from staudt.utils.errors import PreconditionError, ResourceCapError, RingMismatchError


class TestMatrixArithmetic:
    """矩陣運算"""

    def test_e1_cubed_is_minus_identity(self, z7):
        """Z/7 上 E(1)^3 = -I"""
        e1 = elementary(z7, 1)
        assert e1 @ e1 @ e1 == Mat2(z7, 6, 0, 0, 6)
        assert eval_word(z7, (1, 1, 1)) == Mat2(z7, 6, 0, 0, 6)

    def test_empty_word_is_identity(self, z4):
        assert eval_word(z4, ()) == mat_identity(z4)

    @pytest.mark.parametrize("spec", catalog())
    def test_elementary_inverse(self, spec):
        """E(t)^-1 = E(0)E(-t)E(0)"""
        ring = ring_from_spec(spec)
        for t in ring.elements():
            inverse = eval_word(ring, (0, ring.neg[t], 0))
            assert elementary(ring, t) @ inverse == mat_identity(ring)
            assert inverse @ elementary(ring, t) == mat_identity(ring)
            assert is_invertible(elementary(ring, t)) == inverse

    def test_ring_mismatch(self, z3, z4):
        with pytest.raises(RingMismatchError):
            mat_mul(mat_identity(z3), mat_identity(z4))

    def test_determinant(self, z7, t2z2):
        assert determinant(Mat2(z7, 2, 3, 4, 5)) == (10 - 12) % 7
        with pytest.raises(PreconditionError):
            determinant(mat_identity(t2z2))

    def test_transpose_and_row_action(self, z7):
        x = Mat2(z7, 1, 2, 3, 4)
        assert mat_transpose(x) == Mat2(z7, 1, 3, 2, 4)
        assert row_times((1, 0), x) == (1, 2)
        assert row_times((0, 1), x) == (3, 4)

    def test_left_module_span(self, z4):
        assert left_module_span(z4, (2, 0)) == {(0, 0), (2, 0)}
        assert len(left_module_span(z4, (1, 2))) == 4

    def test_singular_matrix(self, z4):
        assert is_invertible(Mat2(z4, 2, 0, 0, 1)) is None
        assert is_invertible(Mat2(z4, 3, 0, 0, 1)) == Mat2(z4, 3, 0, 0, 1)

    def test_noncommutative_inverse_is_two_sided(self, t2z2):
        """非交換環上反矩陣為雙邊反矩陣"""
        alg = algebra_of(t2z2)
        for key in enumerate_GL2(t2z2):
            x = alg.unkey(key)
            inverse = alg.inverse(x)
            assert alg.mul(x, inverse) == alg.identity
            assert alg.mul(inverse, x) == alg.identity

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.integers(0, 3), min_size=12, max_size=12))
    def test_associativity(self, entries):
        """GF(4) 上矩陣乘法滿足結合律"""
        gf4 = ring_from_spec("GF(2,2)")
        x, y, z = (Mat2.of(gf4, entries[i : i + 4]) for i in (0, 4, 8))
        assert (x @ y) @ z == x @ (y @ z)


class TestFactorization:
    """((x,1),(y,1)) 可逆 ⇔ x-y 為單位，以及三因子分解"""

    @pytest.mark.parametrize("spec", catalog())
    def test_catalog(self, spec):
        ring = ring_from_spec(spec)
        report = verify_glrstar_factorization(ring)
        assert report.passed
        assert report.pairs == ring.size**2

    def test_count(self, z7):
        """Z/7 上恰有 7·6 對 (x, y) 使矩陣可逆"""
        assert verify_glrstar_factorization(z7).invertible == 42


class TestGeneratedGroups:
    """E2、GE2 與 GL2"""

    def test_gl2_orders(self, z2, z7):
        assert len(enumerate_GL2(z2)) == 6
        assert len(enumerate_GL2(z7)) == 2016

    def test_gl2_cap(self, gf9):
        with pytest.raises(ResourceCapError):
            enumerate_GL2(gf9, cap=4)

    def test_e2_over_field_is_sl2(self, z7):
        """域上 E2 = SL2"""
        group = generate_E2(z7)
        assert group.size == 336
        for x in group.matrices():
            assert determinant(x) == 1

    def test_witness_reconstructs_element(self, z7):
        """見證字的求值回到原元素"""
        group = generate_E2(z7)
        alg = algebra_of(z7)
        for key in group.order[::17]:
            assert eval_word(z7, group.witness(key)).entries == alg.unkey(key)

    def test_witness_is_shortest(self, z7):
        """E(1)^3 = -I 的見證字長度不超過 3"""
        alg = algebra_of(z7)
        key = alg.key((6, 0, 0, 6))
        assert len(generate_E2(z7).witness(key)) <= 3

    def test_e2_cap(self, z7):
        with pytest.raises(ResourceCapError):
            generate_E2(z7, cap=10)

    @pytest.mark.parametrize("spec", ["Z/2", "Z/4", "Z/6", "GF(2,2)", "T2(Z/2)"])
    def test_ge2_rings(self, spec):
        """局部環與半局部環都是 GE2 環"""
        assert is_GE2_ring(ring_from_spec(spec))

    def test_ge2_contains_e2(self, z4):
        assert generate_E2(z4).members <= generate_GE2(z4).members

    def test_payload_round_trip(self, z4):
        group = generate_E2(z4)
        restored = GeneratedGroup.from_payload(z4, group.to_payload())
        assert restored.order == group.order
        assert restored.witness(group.order[-1]) == group.witness(group.order[-1])


class TestAlphaStar:
    """X^{α*} 與 X^{α**}"""

    def test_identity_hom(self, z7):
        alpha = identity_map(z7)
        x = Mat2(z7, 1, 2, 3, 4)
        assert alpha_star(x, alpha) == x
        sample = list(generate_E2(z7).matrices())[:40]
        assert verify_alpha_star_homomorphism(alpha, sample) is None

    def test_star_is_group_hom_for_homs(self, gf4):
        for alpha in enumerate_jordan_homomorphisms(gf4, gf4):
            assert is_ring_homomorphism(alpha)
            assert verify_alpha_star_homomorphism(alpha) is None

    def test_double_star_for_antihom(self, t2z2):
        """反同態的 α** 是群同態"""
        antihoms = [
            m for m in enumerate_jordan_homomorphisms(t2z2, t2z2)
            if is_antihomomorphism(m) and not is_ring_homomorphism(m)
        ]
        assert antihoms
        alg = algebra_of(t2z2)
        sample = [Mat2.of(t2z2, alg.unkey(key)) for key in sorted(enumerate_GL2(t2z2))[::12]]
        for alpha in antihoms:
            assert verify_alpha_double_star_homomorphism(alpha, sample) is None

    @pytest.mark.parametrize(("spec", "image"), [("Z/7", tuple(range(7))), ("GF(3,2)", (0, 1, 2, 6, 7, 8, 3, 4, 5))])
    def test_det_relation_over_field(self, spec, image):
        """交換目標環上 (det X^{α*})·X^{α**} = X^{α*}，走遍整個 GL2"""
        ring = ring_from_spec(spec)
        alpha = JordanMap(ring, ring, image)
        alg = algebra_of(ring)
        for key in sorted(enumerate_GL2(ring)):
            x = Mat2.of(ring, alg.unkey(key))
            star = alpha_star(x, alpha)
            double = alpha_double_star(x, alpha)
            d = determinant(star)
            assert tuple(ring.mul[d][e] for e in double.entries) == star.entries

    def test_t2z3_flip_is_antiautomorphism(self, t2z3_flip):
        assert is_antihomomorphism(t2z3_flip)
        assert not is_ring_homomorphism(t2z3_flip)

    def test_double_star_on_elementary(self, t2z3, t2z3_flip):
        """反同態的 α** 把 E(t) 映至 E(t^α)"""
        for t in t2z3.elements():
            assert alpha_double_star(elementary(t2z3, t), t2z3_flip) == elementary(t2z3, t2z3_flip(t))

    @pytest.mark.slow
    def test_star_on_elementary(self, t2z3):
        """同態的 α* 把 E(t) 映至 E(t^α)"""
        homs = [a for a in enumerate_jordan_homomorphisms(t2z3, t2z3) if is_ring_homomorphism(a)]
        assert homs
        for alpha in homs:
            for t in t2z3.elements():
                assert alpha_star(elementary(t2z3, t), alpha) == elementary(t2z3, alpha(t))

    def test_double_star_singular(self, z4):
        with pytest.raises(PreconditionError):
            alpha_double_star(Mat2(z4, 2, 0, 0, 1), identity_map(z4))
