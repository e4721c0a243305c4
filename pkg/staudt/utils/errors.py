# staudt/utils/errors.py - 例外類別
from typing import Any, Optional


class StaudtError(Exception):
    """所有領域錯誤的基底類別，exit_code 對應 CLI 的結束碼"""

    exit_code: int = 2


class RingSpecError(StaudtError):
    """環規格字串錯誤"""


class RingSpecSyntaxError(RingSpecError):
    """
    語法錯誤

    Args:
        message: 錯誤訊息
        position: 出錯字元在原始字串中的位置
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (位置 {position})")
        self.position = position


class RingSpecSemanticError(RingSpecError):
    """語意錯誤：非質數的 p、可約多項式、n < 2 等"""


class RingMismatchError(StaudtError):
    """運算元屬於不同的環"""


class PreconditionError(StaudtError):
    """操作的前置條件不成立"""


class NotAdmissibleError(PreconditionError):
    """座標對不是 admissible，無法生成點"""


class MapValidationError(StaudtError):
    """映射表不滿足宣稱的性質（加法、保單位、Jordan、同態）"""


class ResourceCapError(StaudtError):
    """
    超過設定的資源上限

    Args:
        resource: 資源名稱
        limit: 上限
        requested: 實際需求量
    """

    exit_code = 3

    def __init__(self, resource: str, limit: int, requested: int):
        super().__init__(f"{resource} 超過上限: 需要 {requested}，上限 {limit}")
        self.resource = resource
        self.limit = limit
        self.requested = requested


class FalsificationError(StaudtError):
    """
    定理層級的斷言失敗（唯一性、良定義性、選擇無關性）

    Args:
        message: 錯誤訊息
        witness: 反例
    """

    exit_code = 1

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness
