"""
箙・パス・パスの一次結合

パスは左から右へ読む（"a then b" を a*b と書く）。
"""
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from src.utils.exceptions import UnknownVertex, InputError


@dataclass(frozen=True)
class Arrow:
    """矢印 label: source -> target"""

    label: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """
    箙のパス

    arrows が空のとき頂点 source の自明なパス e_source を表す。
    """

    source: str
    target: str
    arrows: Tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def concat(self, other: "Path") -> Optional["Path"]:
        """self の後に other をたどるパス（合成できなければ None）"""
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def reversed(self) -> "Path":
        """反対箙でのパス"""
        return Path(self.target, self.source, tuple(reversed(self.arrows)))

    def __str__(self) -> str:
        if self.is_trivial:
            return f"e{self.source}"
        return "*".join(self.arrows)


class Quiver:
    """箙クラス（頂点の順序付き集合と矢印のリスト）"""

    def __init__(self, vertices: Iterable, arrows: Iterable[Tuple]):
        """
        初期化

        Args:
            vertices: 頂点IDの列（文字列に正規化する）
            arrows: (label, source, target) の列。多重辺・ループを許す
        """
        self.vertices: Tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError(f"頂点が重複しています: {self.vertices}")

        self.arrows: Tuple[Arrow, ...] = tuple(
            Arrow(str(label), str(source), str(target)) for label, source, target in arrows
        )
        self._by_label: Dict[str, Arrow] = {}
        for arrow in self.arrows:
            if arrow.label in self._by_label:
                raise InputError(f"矢印ラベルが重複しています: {arrow.label}")
            for end in (arrow.source, arrow.target):
                if end not in self.vertices:
                    raise UnknownVertex(f"矢印 {arrow.label} の端点 {end} は頂点ではありません")
            self._by_label[arrow.label] = arrow
        self._index = {v: i for i, v in enumerate(self.vertices)}

    def vertex_index(self, vertex) -> int:
        vertex = str(vertex)
        if vertex not in self._index:
            raise UnknownVertex(f"頂点 {vertex} は箙に存在しません")
        return self._index[vertex]

    def arrow(self, label: str) -> Arrow:
        if label not in self._by_label:
            raise InputError(f"矢印 {label} は箙に存在しません")
        return self._by_label[label]

    def has_arrow(self, label: str) -> bool:
        return label in self._by_label

    def arrows_from(self, vertex: str) -> List[Arrow]:
        return [a for a in self.arrows if a.source == vertex]

    def arrows_into(self, vertex: str) -> List[Arrow]:
        return [a for a in self.arrows if a.target == vertex]

    def trivial_path(self, vertex) -> Path:
        vertex = str(vertex)
        self.vertex_index(vertex)
        return Path(vertex, vertex)

    def path(self, labels: Sequence[str]) -> Path:
        """
        矢印ラベル列からパスを作る

        Raises:
            InputError: 矢印が合成できない場合
        """
        if not labels:
            raise InputError("空のパスには頂点を指定してください")
        first = self.arrow(labels[0])
        current = first.target
        for label in labels[1:]:
            arrow = self.arrow(label)
            if arrow.source != current:
                raise InputError(f"{'*'.join(labels)} は合成できません（{label} の始点は {arrow.source}）")
            current = arrow.target
        return Path(first.source, current, tuple(labels))

    def paths_by_length(self, max_length: int) -> Iterator[List[Path]]:
        """長さ 0, 1, 2, ... のパスの層を順に返す"""
        layer = [Path(v, v) for v in self.vertices]
        yield layer
        for _ in range(max_length):
            layer = [
                Path(path.source, arrow.target, path.arrows + (arrow.label,))
                for path in layer
                for arrow in self.arrows_from(path.target)
            ]
            yield layer

    def opposite(self) -> "Quiver":
        """全ての矢印を逆向きにした箙"""
        return Quiver(self.vertices, [(a.label, a.target, a.source) for a in self.arrows])

    def key(self) -> Tuple:
        return (self.vertices, self.arrows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Quiver) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Quiver(vertices={list(self.vertices)}, arrows={len(self.arrows)})"


@dataclass(frozen=True)
class PathElement:
    """
    パスの一次結合（係数は整数、標数での簡約は reduced で行う）

    terms はパスの並び順で正規化された (path, coefficient) のタプル。
    """

    terms: Tuple[Tuple[Path, int], ...] = ()

    @classmethod
    def of(cls, coefficients: Dict[Path, int]) -> "PathElement":
        items = sorted(
            ((path, c) for path, c in coefficients.items() if c != 0),
            key=lambda item: (item[0].length, item[0].arrows, item[0].source),
        )
        return cls(tuple(items))

    @classmethod
    def from_path(cls, path: Path, coefficient: int = 1) -> "PathElement":
        return cls.of({path: coefficient})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def paths(self) -> List[Path]:
        return [path for path, _ in self.terms]

    @property
    def min_length(self) -> int:
        return min(path.length for path in self.paths)

    @property
    def endpoints(self) -> set:
        return {(path.source, path.target) for path in self.paths}

    def reduced(self, p: int) -> "PathElement":
        return PathElement.of({path: c % p for path, c in self.terms})

    def reversed(self) -> "PathElement":
        return PathElement.of({path.reversed(): c for path, c in self.terms})

    def __add__(self, other: "PathElement") -> "PathElement":
        merged = dict(self.terms)
        for path, c in other.terms:
            merged[path] = merged.get(path, 0) + c
        return PathElement.of(merged)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for path, c in self.terms:
            parts.append(str(path) if c == 1 else f"{c}*{path}")
        return " + ".join(parts)
