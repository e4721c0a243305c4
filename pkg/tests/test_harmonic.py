# tests/test_harmonic.py - 調和四元組測試
import itertools
import random

import pytest

from staudt.algebra.harmonic import (
    check_distant_consequences,
    enumerate_harmonic_quadruples,
    fourth_harmonic,
    harmonic_completions,
    harmonic_set,
    harmonic_set_via_G,
    is_harmonic,
    is_harmonic_via_G,
    third_harmonic,
)
from staudt.algebra.projline import build_distant_graph, enumerate_points
from staudt.algebra.ring_core import catalog, ring_from_spec
from staudt.utils.errors import PreconditionError


class TestEnumeration:
    """調和四元組的列舉"""

    @pytest.mark.parametrize(("spec", "count"), [("Z/3", 24), ("Z/7", 336), ("Z/5", 120)])
    def test_counts(self, spec, count):
        assert len(enumerate_harmonic_quadruples(enumerate_points(ring_from_spec(spec)))) == count

    def test_sorted(self, line_z7):
        quads = enumerate_harmonic_quadruples(line_z7)
        assert quads == sorted(quads)

    def test_member_check_agrees_with_set(self, line_z4):
        quads = harmonic_set(line_z4)
        for quad in itertools.product(range(line_z4.size), repeat=4):
            assert is_harmonic(line_z4, quad) == (quad in quads)


class TestOracle:
    """與 GL2 窮舉神諭比較"""

    @pytest.mark.parametrize("spec", ["Z/2", "Z/3", "Z/4", "Z/5", "GF(2,2)"])
    def test_exhaustive_small_rings(self, spec):
        """|R| <= 5 時逐一比較所有四元組"""
        line = enumerate_points(ring_from_spec(spec))
        graph = build_distant_graph(line)
        for quad in itertools.product(range(line.size), repeat=4):
            assert is_harmonic(line, quad, graph) == is_harmonic_via_G(line, quad)

    @pytest.mark.parametrize("spec", ["Z/7", "GF(3,2)", "T2(Z/2)"])
    def test_sets_equal(self, spec):
        line = enumerate_points(ring_from_spec(spec))
        assert harmonic_set(line) == harmonic_set_via_G(line)

    def test_random_quadruples(self, line_z7):
        """隨機四元組（固定種子），一半取自調和集合本身"""
        rng = random.Random(0)
        graph = build_distant_graph(line_z7)
        quads = enumerate_harmonic_quadruples(line_z7)
        for _ in range(2000):
            quad = rng.choice(quads) if rng.random() < 0.5 else tuple(rng.randrange(line_z7.size) for _ in range(4))
            assert is_harmonic(line_z7, quad, graph) == is_harmonic_via_G(line_z7, quad)


class TestCompletion:
    """第四與第三調和點"""

    def test_fourth_and_third_unique(self, line_z7, graph_z7):
        """每個兩兩遠離的三元組恰有一個完成點"""
        n = line_z7.size
        for p0, p1, p2 in itertools.permutations(range(n), 3):
            p3 = fourth_harmonic(line_z7, p0, p1, p2)
            assert is_harmonic(line_z7, (p0, p1, p2, p3), graph_z7)
            assert third_harmonic(line_z7, p0, p1, p3) == p2

    def test_lookup_tables(self, line_gf9):
        fourth, third = harmonic_completions(line_gf9)
        assert len(fourth) == len(third) == 10 * 9 * 8
        for (p0, p1, p2), p3 in fourth.items():
            assert third[(p0, p1, p3)] == p2

    def test_char_two_fixes_third_point(self):
        """特徵 2 時 p3 = p2"""
        line = enumerate_points(ring_from_spec("GF(2,3)"))
        assert fourth_harmonic(line, 0, 1, 2) == 2

    def test_requires_mutually_distant(self, line_z4):
        graph = build_distant_graph(line_z4)
        p0 = 0
        far = min(graph.neighbors[p0])
        near = next(q for q in range(line_z4.size) if q != p0 and not graph.distant(p0, q))
        with pytest.raises(PreconditionError):
            fourth_harmonic(line_z4, p0, far, near)
        with pytest.raises(PreconditionError):
            fourth_harmonic(line_z4, p0, p0, far)


class TestDistantConsequences:
    """調和四元組的遠離性推論"""

    @pytest.mark.parametrize("spec", [s for s in catalog() if s != "T2(Z/3)"])
    def test_catalog(self, spec):
        report = check_distant_consequences(enumerate_points(ring_from_spec(spec)))
        assert report.passed
        assert report.all_p2_p3_distant == report.two_is_unit

    @pytest.mark.parametrize("spec", ["Z/2", "GF(2,2)", "T2(Z/2)", "M2(Z/2)"])
    def test_char_two(self, spec):
        report = check_distant_consequences(enumerate_points(ring_from_spec(spec)))
        assert not report.minus_one_neq_one
        assert report.all_p2_p3_equal

    @pytest.mark.slow
    def test_t2z3(self, t2z3):
        assert check_distant_consequences(enumerate_points(t2z3)).passed
