# tests/conftest.py - 測試配置檔案
import os

import pytest
from loguru import logger

# 設定測試環境變數
os.environ.setdefault("STAUDT_ENVIRONMENT", "test")
os.environ.setdefault("STAUDT_LOG_LEVEL", "WARNING")

from staudt.algebra.projline import ProjectiveLine, build_distant_graph, enumerate_points  # noqa: E402
from staudt.algebra.ring_core import FiniteRing, JordanMap, ring_from_spec  # noqa: E402


@pytest.fixture(autouse=True)
def _reset_loguru():
    """每個測試結束後移除 loguru sink，避免寫入已關閉的 capsys 串流"""
    yield
    logger.remove()


@pytest.fixture(scope="session")
def z2() -> FiniteRing:
    return ring_from_spec("Z/2")


@pytest.fixture(scope="session")
def z3() -> FiniteRing:
    return ring_from_spec("Z/3")


@pytest.fixture(scope="session")
def z4() -> FiniteRing:
    return ring_from_spec("Z/4")


@pytest.fixture(scope="session")
def z6() -> FiniteRing:
    return ring_from_spec("Z/6")


@pytest.fixture(scope="session")
def z7() -> FiniteRing:
    return ring_from_spec("Z/7")


@pytest.fixture(scope="session")
def gf4() -> FiniteRing:
    return ring_from_spec("GF(2,2)")


@pytest.fixture(scope="session")
def gf9() -> FiniteRing:
    return ring_from_spec("GF(3,2)")


@pytest.fixture(scope="session")
def t2z2() -> FiniteRing:
    return ring_from_spec("T2(Z/2)")


@pytest.fixture(scope="session")
def t2z3() -> FiniteRing:
    return ring_from_spec("T2(Z/3)")


@pytest.fixture(scope="session")
def line_z4(z4) -> ProjectiveLine:
    return enumerate_points(z4)


@pytest.fixture(scope="session")
def line_z7(z7) -> ProjectiveLine:
    return enumerate_points(z7)


@pytest.fixture(scope="session")
def line_gf9(gf9) -> ProjectiveLine:
    return enumerate_points(gf9)


@pytest.fixture(scope="session")
def graph_z7(line_z7):
    return build_distant_graph(line_z7)


@pytest.fixture(scope="session")
def t2z3_flip(t2z3) -> JordanMap:
    """T2(Z/3) 的反自同構 (a,b,c) -> (c,b,a)"""
    index = {name: i for i, name in enumerate(t2z3.names)}
    image = []
    for name in t2z3.names:
        a, b, c = name[1:-1].split(",")
        image.append(index[f"({c},{b},{a})"])
    return JordanMap(t2z3, t2z3, tuple(image))
