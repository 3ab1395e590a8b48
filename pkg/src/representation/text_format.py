"""
加群テキスト形式の読み書き

    module over lambda4.alg
    dims: 1 0 2 0
    arrow a1: [[0,1],[0,0]]

行列は行優先（行数 = 終点の次元、列数 = 始点の次元）、成分は mod p。
書かれていない矢印は零写像。
"""
import json
from pathlib import Path as FilePath
from typing import Dict, Optional

import numpy as np

from src.algebra.bound_algebra import BoundQuiverAlgebra
from src.representation.module import Representation
from src.utils.exceptions import InputError, ParseError


def _integer_matrix(value, line_no: int, column: int) -> np.ndarray:
    """JSON の値が整数成分の長方形行列であることを確かめて配列にする"""
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        raise ParseError("行列は整数のリストのリストで指定してください", line_no, column)
    if any(len(row) != len(value[0]) for row in value):
        raise ParseError("行列の各行の長さが揃っていません", line_no, column)
    for row in value:
        for entry in row:
            if isinstance(entry, bool) or not isinstance(entry, int):
                raise ParseError(f"行列の成分は整数で指定してください（{entry!r}）", line_no, column)
    return np.array(value, dtype=np.int64)


def parse_module(text: str, algebra: BoundQuiverAlgebra, name: str = "") -> Representation:
    """
    テキストから加群を構成

    Args:
        text: 加群テキスト
        algebra: 代数（"module over" 行の参照先は呼び出し側で解決する）
        name: 表示名

    Returns:
        Representation
    """
    dims: Optional[Dict[str, int]] = None
    action: Dict[str, np.ndarray] = {}
    lines: Dict[str, int] = {}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        stripped = line.strip()
        if stripped.startswith("module over"):
            continue
        head, sep, rest = stripped.partition(":")
        rest_column = indent + len(head) + 2
        if head.strip() == "dims" and sep:
            values = rest.split()
            if len(values) != len(algebra.vertices):
                raise ParseError(
                    f"dims の個数 {len(values)} が頂点数 {len(algebra.vertices)} と一致しません",
                    line_no, rest_column
                )
            if not all(v.isdigit() for v in values):
                raise ParseError("dims は非負整数で指定してください", line_no, rest_column)
            dims = dict(zip(algebra.vertices, (int(v) for v in values)))
        elif head.startswith("arrow") and sep:
            label = head[len("arrow"):].strip()
            if not algebra.quiver.has_arrow(label):
                raise ParseError(f"未定義の矢印 '{label}'", line_no, indent + len("arrow") + 2)
            try:
                matrix = json.loads(rest.strip())
            except json.JSONDecodeError as e:
                raise ParseError(f"行列を解析できません: {e.msg}", line_no, rest_column + e.colno)
            action[label] = _integer_matrix(matrix, line_no, rest_column + 1)
            lines[label] = line_no
        else:
            raise ParseError(f"不明な行 '{head.strip()}'", line_no, indent + 1)

    if dims is None:
        raise ParseError("dims の宣言がありません", 1, 1)

    for label, matrix in list(action.items()):
        arrow = algebra.quiver.arrow(label)
        shape = (dims[arrow.target], dims[arrow.source])
        if matrix.size == 0:
            action[label] = np.zeros(shape, dtype=np.int64)
        elif matrix.shape != shape:
            raise ParseError(f"矢印 {label} の行列の形 {matrix.shape} が {shape} と一致しません", lines[label], 1)
    try:
        return Representation(algebra, dims, action, name=name)
    except ValueError as e:
        raise InputError(str(e))


def load_module(path: str, algebra: BoundQuiverAlgebra) -> Representation:
    """加群ファイルを読み込む"""
    file_path = FilePath(path)
    if not file_path.exists():
        raise InputError(f"加群ファイルが見つかりません: {path}")
    return parse_module(file_path.read_text(encoding="utf-8"), algebra, name=file_path.stem)


def format_module(module: Representation, algebra_reference: str = "") -> str:
    """加群をテキスト形式で書き出す"""
    lines = [f"module over {algebra_reference or module.algebra.name}"]
    lines.append("dims: " + " ".join(str(d) for d in module.dimension_vector))
    for label, matrix in module.action.items():
        if matrix.size:
            lines.append(f"arrow {label}: {json.dumps(matrix.tolist(), separators=(',', ':'))}")
    return "\n".join(lines) + "\n"
