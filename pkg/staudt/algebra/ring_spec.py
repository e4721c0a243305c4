# staudt/algebra/ring_spec.py - 環規格字串的語法樹與剖析器
"""
環規格文法::

    expr := atom ("x" atom)*
    atom := "Z/" INT
          | "GF(" INT "," INT ["," POLY] ")"
          | "M2(" expr ")" | "T2(" expr ")" | "DUAL(" expr ")"
          | "(" expr ")"
    POLY := "[" INT ("," INT)* "]"     # 由常數項到最高次項

空白不具意義，"x" 為左結合。省略 POLY 時採用內建的預設不可約多項式。
"""
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from staudt.settings import settings
from staudt.utils.errors import ResourceCapError, RingSpecSemanticError, RingSpecSyntaxError

# 整數字面值的最大位數，與 CPython 預設的 int 轉換上限一致
MAX_INT_DIGITS = 4300

# 預設不可約多項式，涵蓋 (p, k) <= (7, 3)
DEFAULT_POLYNOMIALS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (0, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 1): (0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 1): (0, 1),
    (5, 2): (2, 0, 1),
    (5, 3): (1, 1, 0, 1),
    (7, 1): (0, 1),
    (7, 2): (1, 0, 1),
    (7, 3): (2, 0, 0, 1),
}


def is_prime(n: int) -> bool:
    """以試除法判斷質數（只用於小的 p）"""
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    """多項式 num 除以首一多項式 den 的餘式，係數由低次到高次"""
    rem = [c % p for c in num]
    d = len(den) - 1
    while len(rem) - 1 >= d and any(rem):
        if rem[-1] == 0:
            rem.pop()
            continue
        shift = len(rem) - 1 - d
        factor = rem[-1]
        for i, c in enumerate(den):
            rem[shift + i] = (rem[shift + i] - factor * c) % p
        rem.pop()
    return rem


def _monic_polys(degree: int, p: int):
    """列舉 GF(p) 上所有給定次數的首一多項式"""
    for code in range(p**degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(code % p)
            code //= p
        yield [*coeffs, 1]


def is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """
    判斷多項式在 GF(p) 上是否不可約

    以次數不超過 k/2 的所有首一多項式試除。

    Args:
        coeffs: 係數，由常數項到最高次項
        p: 質數

    Returns:
        bool: 不可約時為 True
    """
    k = len(coeffs) - 1
    if k < 1 or coeffs[-1] % p == 0:
        return False
    for degree in range(1, k // 2 + 1):
        for divisor in _monic_polys(degree, p):
            if not any(_poly_mod(list(coeffs), divisor, p)):
                return False
    return True


class _Expr(BaseModel):
    """語法樹節點基底"""

    model_config = ConfigDict(frozen=True)

    def to_spec(self) -> str:
        raise NotImplementedError

    def size(self) -> int:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.to_spec()


class ZmodExpr(_Expr):
    """Z/n"""

    kind: Literal["zmod"] = "zmod"
    n: int = Field(..., ge=2, description="模數")

    def to_spec(self) -> str:
        return f"Z/{self.n}"

    def size(self) -> int:
        return self.n


class GFExpr(_Expr):
    """GF(p, k)，以不可約多項式的商環實現"""

    kind: Literal["gf"] = "gf"
    p: int = Field(..., description="特徵值（質數）")
    k: int = Field(..., ge=1, description="擴張次數")
    poly: tuple[int, ...] = Field(..., description="不可約多項式係數，由常數項到最高次項")

    @field_validator("p")
    @classmethod
    def validate_prime(cls, v: int) -> int:
        """驗證 p 為質數"""
        if not is_prime(v):
            raise ValueError(f"p={v} 不是質數")
        return v

    @model_validator(mode="after")
    def validate_poly(self) -> "GFExpr":
        """驗證多項式次數等於 k 且在 GF(p) 上不可約"""
        if len(self.poly) - 1 != self.k:
            raise ValueError(f"多項式次數 {len(self.poly) - 1} 與 k={self.k} 不符")
        if self.poly[-1] % self.p == 0:
            raise ValueError("多項式最高次係數為 0")
        if not is_irreducible(self.poly, self.p):
            raise ValueError(f"多項式 {list(self.poly)} 在 GF({self.p}) 上可約")
        return self

    def to_spec(self) -> str:
        coeffs = ",".join(str(c) for c in self.poly)
        return f"GF({self.p},{self.k},[{coeffs}])"

    def size(self) -> int:
        return self.p**self.k


class Mat2RingExpr(_Expr):
    """M2(S)：2x2 全矩陣環"""

    kind: Literal["mat2"] = "mat2"
    inner: "RingExpr"

    def to_spec(self) -> str:
        return f"M2({self.inner.to_spec()})"

    def size(self) -> int:
        return self.inner.size() ** 4


class UpperTri2Expr(_Expr):
    """T2(S)：2x2 上三角矩陣環"""

    kind: Literal["tri2"] = "tri2"
    inner: "RingExpr"

    def to_spec(self) -> str:
        return f"T2({self.inner.to_spec()})"

    def size(self) -> int:
        return self.inner.size() ** 3


class DualExpr(_Expr):
    """DUAL(S)：S[e]/(e^2)"""

    kind: Literal["dual"] = "dual"
    inner: "RingExpr"

    def to_spec(self) -> str:
        return f"DUAL({self.inner.to_spec()})"

    def size(self) -> int:
        return self.inner.size() ** 2


class ProductExpr(_Expr):
    """A x B：直積"""

    kind: Literal["product"] = "product"
    left: "RingExpr"
    right: "RingExpr"

    def to_spec(self) -> str:
        right = self.right.to_spec()
        if isinstance(self.right, ProductExpr):
            right = f"({right})"
        return f"{self.left.to_spec()}x{right}"

    def size(self) -> int:
        return self.left.size() * self.right.size()


RingExpr = Annotated[
    Union[ZmodExpr, GFExpr, Mat2RingExpr, UpperTri2Expr, DualExpr, ProductExpr],
    Field(discriminator="kind"),
]

for _model in (Mat2RingExpr, UpperTri2Expr, DualExpr, ProductExpr):
    _model.model_rebuild()


def _check_field_size(p: int, k: int) -> None:
    """
    不可約性試除之前先確認 p^k 不超過環大小上限

    Raises:
        ResourceCapError: p 或 p^k 超過 settings.ring_size_cap
    """
    cap = settings.ring_size_cap
    size = p
    if size <= cap:
        for _ in range(k - 1):
            size *= p
            if size > cap:
                break
    if size > cap:
        raise ResourceCapError("ring size", cap, size)


class _Parser:
    """遞迴下降剖析器，位置以原始字串索引回報"""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self, token: str) -> bool:
        self._skip()
        return self.text.startswith(token, self.pos)

    def _expect(self, token: str) -> None:
        if not self._peek(token):
            found = self.text[self.pos : self.pos + len(token)] or "字串結尾"
            raise RingSpecSyntaxError(f"預期 '{token}'，但讀到 '{found}'", self.pos)
        self.pos += len(token)

    def _int(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise RingSpecSyntaxError("預期整數", start)
        digits = self.pos - start
        if digits > MAX_INT_DIGITS:
            raise RingSpecSyntaxError(f"整數過長（{digits} 位數）", start)
        try:
            return int(self.text[start : self.pos])
        except ValueError:
            raise RingSpecSyntaxError(f"無法轉換的整數（{digits} 位數）", start) from None

    def _poly(self) -> tuple[int, ...]:
        self._expect("[")
        coeffs = [self._int()]
        while self._peek(","):
            self._expect(",")
            coeffs.append(self._int())
        self._expect("]")
        return tuple(coeffs)

    def _semantic(self, factory, start: int, **fields):
        try:
            return factory(**fields)
        except ValidationError as exc:
            messages = "; ".join(err["msg"] for err in exc.errors())
            raise RingSpecSemanticError(f"{messages} (位置 {start})") from exc

    def parse(self):
        expr = self.expr()
        self._skip()
        if self.pos != len(self.text):
            raise RingSpecSyntaxError(f"多餘的字元 '{self.text[self.pos]}'", self.pos)
        return expr

    def expr(self):
        left = self.atom()
        while self._peek("x"):
            self._expect("x")
            right = self.atom()
            left = ProductExpr(left=left, right=right)
        return left

    def atom(self):
        self._skip()
        start = self.pos
        if self._peek("Z/"):
            self._expect("Z/")
            return self._semantic(ZmodExpr, start, n=self._int())
        if self._peek("GF("):
            self._expect("GF(")
            p = self._int()
            self._expect(",")
            k = self._int()
            poly: Optional[tuple[int, ...]] = None
            if self._peek(","):
                self._expect(",")
                poly = self._poly()
            self._expect(")")
            if poly is None:
                if (p, k) not in DEFAULT_POLYNOMIALS:
                    raise RingSpecSemanticError(f"GF({p},{k}) 沒有預設多項式，請明確指定 (位置 {start})")
                poly = DEFAULT_POLYNOMIALS[(p, k)]
            _check_field_size(p, k)
            return self._semantic(GFExpr, start, p=p, k=k, poly=poly)
        for keyword, node in (("M2(", Mat2RingExpr), ("T2(", UpperTri2Expr), ("DUAL(", DualExpr)):
            if self._peek(keyword):
                self._expect(keyword)
                inner = self.expr()
                self._expect(")")
                return node(inner=inner)
        if self._peek("("):
            self._expect("(")
            inner = self.expr()
            self._expect(")")
            return inner
        found = self.text[start : start + 1] or "字串結尾"
        raise RingSpecSyntaxError(f"無法辨識的環建構子 '{found}'", start)


def parse_ring_spec(text: str) -> RingExpr:
    """
    剖析環規格字串

    Args:
        text: 規格字串，例如 "Z/7"、"GF(3,2,[1,0,1])"、"T2(Z/3)"

    Returns:
        RingExpr: 語法樹；``expr.to_spec()`` 可再被剖析回相同的語法樹

    Raises:
        RingSpecSyntaxError: 語法錯誤（附位置）
        RingSpecSemanticError: 非質數的 p、可約多項式、n < 2
        ResourceCapError: GF(p,k) 的大小超過 settings.ring_size_cap
    """
    return _Parser(text).parse()
