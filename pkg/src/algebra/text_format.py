"""
箙代数テキスト形式の読み書き

    vertices: 1 2 3 4
    arrow a1: 1 -> 2
    relations: a1*a2, a4*a1 + 2*a3*a4
    char: 2

'#' 以降はコメント。構文エラーは行・列を付けて ParseError を送出する。
"""
import re
from pathlib import Path as FilePath
from typing import Dict, List, Optional, Tuple

from src.algebra.bound_algebra import (
    DEFAULT_CHARACTERISTIC,
    DEFAULT_LENGTH_CAP,
    DEFAULT_PATH_CAP,
    BoundQuiverAlgebra,
    build_algebra,
)
from src.algebra.quiver import Path, PathElement, Quiver
from src.utils.exceptions import InputError, ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(\S))")
_ARROW_LINE = re.compile(r"^arrow\s+(\S+?)\s*:\s*(\S+)\s*->\s*(\S+)\s*$")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _tokenize(text: str, line_no: int, offset: int) -> List[Tuple[str, str, int]]:
    """(種類, 値, 列) のトークン列"""
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN.match(text, position)
        number, word, symbol = match.groups()
        column = offset + match.start(match.lastindex) + 1
        if number is not None:
            tokens.append(("int", number, column))
        elif word is not None:
            tokens.append(("word", word, column))
        elif symbol in "*+-,":
            tokens.append(("op", symbol, column))
        else:
            raise ParseError(f"不正な文字 '{symbol}'", line_no, column)
        position = match.end()
    return tokens


def _parse_relations(quiver: Quiver, text: str, line_no: int, offset: int) -> List[PathElement]:
    """関係式の並び（カンマ区切り）を解析"""
    tokens = _tokenize(text, line_no, offset)
    relations: List[PathElement] = []
    terms: Dict[Path, int] = {}
    sign = 1
    index = 0
    end_column = offset + len(text) + 1

    def expect_term(at: int) -> int:
        nonlocal terms
        coefficient = sign
        kind, value, column = tokens[at] if at < len(tokens) else ("end", "", end_column)
        if kind == "int":
            coefficient *= int(value)
            at += 1
            if at < len(tokens) and tokens[at][1] == "*":
                at += 1
            kind, value, column = tokens[at] if at < len(tokens) else ("end", "", end_column)
        if kind != "word":
            raise ParseError("矢印ラベルが必要です", line_no, column)
        labels = []
        start_column = column
        while True:
            kind, value, column = tokens[at]
            if kind != "word":
                raise ParseError("矢印ラベルが必要です", line_no, column)
            if not quiver.has_arrow(value):
                raise ParseError(f"未定義の矢印 '{value}'", line_no, column)
            labels.append(value)
            at += 1
            if at < len(tokens) and tokens[at][1] == "*":
                at += 1
                if at >= len(tokens):
                    raise ParseError("'*' の後に矢印ラベルが必要です", line_no, end_column)
                continue
            break
        try:
            path = quiver.path(labels)
        except InputError as e:
            raise ParseError(str(e), line_no, start_column)
        terms[path] = terms.get(path, 0) + coefficient
        return at

    while index < len(tokens) or terms:
        index = expect_term(index)
        if index >= len(tokens):
            relations.append(PathElement.of(terms))
            break
        kind, value, column = tokens[index]
        if value in "+-":
            sign = 1 if value == "+" else -1
            index += 1
        elif value == ",":
            relations.append(PathElement.of(terms))
            terms = {}
            sign = 1
            index += 1
        else:
            raise ParseError(f"'+', '-', ',' のいずれかが必要です（'{value}'）", line_no, column)
    return relations


def parse_algebra(
    text: str,
    characteristic: Optional[int] = None,
    default_characteristic: Optional[int] = None,
    length_cap: int = DEFAULT_LENGTH_CAP,
    path_cap: int = DEFAULT_PATH_CAP,
    name: Optional[str] = None
) -> BoundQuiverAlgebra:
    """
    テキストから代数を構成

    Args:
        text: 箙代数テキスト
        characteristic: 標数（指定時はファイルの char: より優先）
        default_characteristic: characteristic も char: もないときの標数
        length_cap: パス長上限
        path_cap: パス数上限
        name: 表示名

    Returns:
        BoundQuiverAlgebra
    """
    vertices: Optional[List[str]] = None
    arrows: List[Tuple[str, str, str]] = []
    relation_lines: List[Tuple[int, int, str]] = []
    file_char: Optional[int] = None
    declared_name: Optional[str] = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        stripped = line.strip()
        head, sep, rest = stripped.partition(":")
        keyword = head.strip()
        rest_offset = indent + len(head) + 1
        if keyword == "vertices" and sep:
            if vertices is not None:
                raise ParseError("vertices が二度宣言されています", line_no, indent + 1)
            vertices = rest.replace(",", " ").split()
            if not vertices:
                raise ParseError("頂点がありません", line_no, rest_offset + 1)
        elif keyword.startswith("arrow"):
            match = _ARROW_LINE.match(stripped)
            if not match:
                raise ParseError("'arrow <label>: <source> -> <target>' の形式が必要です", line_no, indent + 1)
            if vertices is None:
                raise ParseError("arrow より前に vertices が必要です", line_no, indent + 1)
            label, source, target = match.groups()
            for end, group in ((source, 2), (target, 3)):
                if end not in vertices:
                    raise ParseError(f"未定義の頂点 '{end}'", line_no, indent + match.start(group) + 1)
            arrows.append((label, source, target))
        elif keyword == "relations" and sep:
            relation_lines.append((line_no, rest_offset, rest))
        elif keyword == "char" and sep:
            value = rest.strip()
            if not value.isdigit():
                raise ParseError(f"標数は整数で指定してください（'{value}'）", line_no, rest_offset + 2)
            file_char = int(value)
        elif keyword == "name" and sep:
            declared_name = rest.strip()
        else:
            raise ParseError(f"不明な行 '{keyword}'", line_no, indent + 1)

    if vertices is None:
        raise ParseError("vertices の宣言がありません", 1, 1)
    try:
        quiver = Quiver(vertices, arrows)
    except InputError as e:
        raise ParseError(str(e), 1, 1)

    relations: List[PathElement] = []
    for line_no, offset, rest in relation_lines:
        relations.extend(_parse_relations(quiver, rest, line_no, offset))

    p = characteristic or file_char or default_characteristic or DEFAULT_CHARACTERISTIC
    return build_algebra(
        quiver, relations, p,
        length_cap=length_cap, path_cap=path_cap,
        name=name or declared_name,
    )


def load_algebra(path: str, **kwargs) -> BoundQuiverAlgebra:
    """代数ファイルを読み込む"""
    file_path = FilePath(path)
    if not file_path.exists():
        raise InputError(f"代数ファイルが見つかりません: {path}")
    kwargs.setdefault("name", file_path.stem)
    return parse_algebra(file_path.read_text(encoding="utf-8"), **kwargs)


def format_algebra(algebra: BoundQuiverAlgebra) -> str:
    """代数をテキスト形式で書き出す"""
    lines = [f"name: {algebra.name}", f"vertices: {' '.join(algebra.vertices)}"]
    for arrow in algebra.quiver.arrows:
        lines.append(f"arrow {arrow.label}: {arrow.source} -> {arrow.target}")
    if algebra.relations:
        lines.append("relations: " + ", ".join(str(r) for r in algebra.relations))
    lines.append(f"char: {algebra.characteristic}")
    return "\n".join(lines) + "\n"
