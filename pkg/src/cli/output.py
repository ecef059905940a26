"""
命令行输出
========
阈值表和 (x, f, g) 轨迹的 CSV / JSON 渲染。

说明：
- CSV：`,` 分隔、`.` 小数点、必须有表头（pandas.DataFrame.to_csv）
- JSON：行对象数组（标准库 json）
- 两种格式的浮点数都使用最短往返十进制表示，同一次运行的数值完全一致
"""
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

import pandas as pd

from src.utils.errors import DomainError

OUTPUT_FORMATS = ('csv', 'json')

# 阈值表列名（顺序固定）
TABLE_COLUMNS = ('p', 't_lower', 't_upper', 'gap')
EMPIRICAL_TABLE_COLUMNS = ('p', 't_lower', 't_upper', 'empirical_t_lower', 'empirical_t_upper', 'gap')

# 轨迹列名
TRACE_COLUMNS = ('x', 'f', 'g')


@dataclass
class OutputRecord:
    """一组按列名组织的数值行"""
    columns: Sequence[str]
    format: str = 'csv'
    rows: List[Dict[str, float]] = field(default_factory=list)

    def __post_init__(self):
        if self.format not in OUTPUT_FORMATS:
            raise DomainError(f"不支持的输出格式: {self.format!r}")

    def add_row(self, **values: float):
        """追加一行，列名必须与 columns 完全一致"""
        if set(values) != set(self.columns):
            raise ValueError(f"列名不匹配: {sorted(values)} != {sorted(self.columns)}")
        self.rows.append({name: float(values[name]) for name in self.columns})

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=list(self.columns))

    def to_csv(self) -> str:
        return self.to_frame().to_csv(index=False, lineterminator="\n")

    def to_json(self) -> str:
        return json.dumps(self.rows)

    def render(self) -> str:
        """按 format 渲染为文本"""
        if self.format == 'json':
            return self.to_json()
        return self.to_csv().rstrip("\n")


def render_json(payload: Any) -> str:
    """证书等嵌套结构的 JSON 渲染"""
    return json.dumps(payload, ensure_ascii=False, indent=2)
