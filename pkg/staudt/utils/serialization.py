# staudt/utils/serialization.py - 報表的 JSON 序列化
import ujson
from pydantic import BaseModel


def dump_json(model: BaseModel) -> str:
    """
    以排序後的鍵輸出 JSON

    相同的模型內容必定得到逐位元組相同的輸出。
    """
    return ujson.dumps(model.model_dump(mode="json"), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
