"""
箙の表現としての加群と準同型

矢印 a: u -> w の作用行列は dims[w] x dims[u]。パス a1*...*ak の行列は
M_ak ... M_a1（左から右に読む規約）。
"""
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.algebra.bound_algebra import BoundQuiverAlgebra
from src.algebra.quiver import Path
from src.utils import modp
from src.utils.exceptions import AlgebraMismatch

Spans = Dict[str, np.ndarray]


class Representation:
    """有限生成加群（束縛箙の表現）"""

    def __init__(
        self,
        algebra: BoundQuiverAlgebra,
        dims: Dict,
        action: Optional[Dict[str, np.ndarray]] = None,
        name: str = "",
        check: bool = True
    ):
        """
        初期化

        Args:
            algebra: 代数
            dims: 頂点 -> 次元（省略した頂点は 0）
            action: 矢印ラベル -> 作用行列（省略した矢印は零写像）
            name: 表示名
            check: 行列の形と関係式を検証するか

        Raises:
            ValueError: 行列の形が合わない、または関係式を満たさない場合
        """
        self.algebra = algebra
        self.p = algebra.characteristic
        self.name = name
        self.dims: Dict[str, int] = {v: 0 for v in algebra.vertices}
        for vertex, dim in dims.items():
            algebra.quiver.vertex_index(vertex)
            if int(dim) < 0:
                raise ValueError(f"次元は非負でなければなりません: {vertex} -> {dim}")
            self.dims[str(vertex)] = int(dim)

        action = action or {}
        self.action: Dict[str, np.ndarray] = {}
        for arrow in algebra.quiver.arrows:
            shape = (self.dims[arrow.target], self.dims[arrow.source])
            matrix = action.get(arrow.label)
            if matrix is None:
                self.action[arrow.label] = modp.zeros(*shape)
                continue
            matrix = modp.as_matrix(matrix, self.p, shape)
            if matrix.shape != shape:
                raise ValueError(f"矢印 {arrow.label} の行列の形 {matrix.shape} が {shape} と一致しません")
            self.action[arrow.label] = matrix
        unknown = set(action) - set(self.action)
        if unknown:
            raise ValueError(f"未定義の矢印: {sorted(unknown)}")

        self._path_cache: Dict[Path, np.ndarray] = {}
        self._resolution = None
        if check and not self.satisfies_relations():
            raise ValueError("作用行列が代数の関係式を満たしません")

    @property
    def dimension_vector(self) -> Tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def is_zero(self) -> bool:
        return self.total_dim == 0

    @property
    def label(self) -> str:
        return self.name or f"M{self.dimension_vector}"

    def path_matrix(self, path: Path) -> np.ndarray:
        """パスの作用行列（dims[target] x dims[source]）"""
        if path not in self._path_cache:
            matrix = modp.identity(self.dims[path.source])
            for label in path.arrows:
                matrix = modp.matmul(self.action[label], matrix, self.p)
            self._path_cache[path] = matrix
        return self._path_cache[path]

    def element_matrix(self, element: np.ndarray, source: str, target: str) -> np.ndarray:
        """代数の元の (source -> target) 成分の作用行列"""
        matrix = modp.zeros(self.dims[target], self.dims[source])
        for k in self.algebra.basis_between(source, target):
            if element[k] % self.p:
                matrix = (matrix + int(element[k]) * self.path_matrix(self.algebra.basis[k])) % self.p
        return matrix

    def satisfies_relations(self) -> bool:
        for relation in self.algebra.relations:
            (source, target), = relation.endpoints
            total = modp.zeros(self.dims[target], self.dims[source])
            for path, c in relation.terms:
                total = (total + c * self.path_matrix(path)) % self.p
            if np.any(total):
                return False
        return True

    def __repr__(self) -> str:
        return f"Representation({self.label}, dims={self.dimension_vector})"


class ProjectiveSum(Representation):
    """
    直既約射影加群の直和 ⊕ P(v_g)

    頂点 w の基底は (生成元番号 g, v_g から w への基底パス番号) の並び。
    矢印は基底パスの後ろに付け足す（後合成）ことで作用する。
    """

    def __init__(self, algebra: BoundQuiverAlgebra, generators: Sequence, name: str = ""):
        self.generators: Tuple[str, ...] = tuple(str(v) for v in generators)
        self.layout: Dict[str, List[Tuple[int, int]]] = {
            w: [(g, k) for g, v in enumerate(self.generators) for k in algebra.basis_between(v, w)]
            for w in algebra.vertices
        }
        self._position = {
            w: {entry: i for i, entry in enumerate(entries)} for w, entries in self.layout.items()
        }
        action = {}
        for arrow in algebra.quiver.arrows:
            arrow_index = algebra.basis_index(Path(arrow.source, arrow.target, (arrow.label,)))
            matrix = modp.zeros(len(self.layout[arrow.target]), len(self.layout[arrow.source]))
            for column, (g, k) in enumerate(self.layout[arrow.source]):
                for k2, c in algebra.basis_product(k, arrow_index).items():
                    matrix[self._position[arrow.target][(g, k2)], column] = c
            action[arrow.label] = matrix
        dims = {w: len(entries) for w, entries in self.layout.items()}
        super().__init__(algebra, dims, action, name=name, check=False)

    def position(self, vertex: str, generator: int, basis_index: int) -> int:
        return self._position[vertex][(generator, basis_index)]

    def generator_position(self, generator: int) -> int:
        """生成元 e_{v_g} の（頂点 v_g における）基底番号"""
        vertex = self.generators[generator]
        trivial = self.algebra.basis_index(Path(vertex, vertex))
        return self._position[vertex][(generator, trivial)]

    def element_of(self, vertex: str, vector: np.ndarray) -> Dict[int, np.ndarray]:
        """頂点 vertex のベクトルを、生成元ごとの代数の元（基底座標）に分解"""
        parts: Dict[int, np.ndarray] = {}
        for i, (g, k) in enumerate(self.layout[vertex]):
            if vector[i] % self.p:
                parts.setdefault(g, np.zeros(self.algebra.dim, dtype=np.int64))[k] = vector[i] % self.p
        return parts


class Morphism:
    """加群の準同型（頂点ごとの行列）"""

    def __init__(self, source: Representation, target: Representation, blocks: Dict[str, np.ndarray], check: bool = True):
        """
        初期化

        Args:
            source: 始域
            target: 終域
            blocks: 頂点 -> 行列（target.dims[v] x source.dims[v]）
            check: 形と可換図式を検証するか

        Raises:
            AlgebraMismatch: 代数が異なる場合
            ValueError: 可換図式が成り立たない場合
        """
        ensure_same_algebra(source, target)
        self.source = source
        self.target = target
        self.p = source.p
        self.blocks: Dict[str, np.ndarray] = {}
        for v in source.algebra.vertices:
            shape = (target.dims[v], source.dims[v])
            block = blocks.get(v)
            self.blocks[v] = modp.zeros(*shape) if block is None else modp.as_matrix(block, self.p, shape)
            if self.blocks[v].shape != shape:
                raise ValueError(f"頂点 {v} の行列の形 {self.blocks[v].shape} が {shape} と一致しません")
        if check and not self.commutes():
            raise ValueError("可換図式が成り立たないため準同型ではありません")

    def commutes(self) -> bool:
        for arrow in self.source.algebra.quiver.arrows:
            left = modp.matmul(self.target.action[arrow.label], self.blocks[arrow.source], self.p)
            right = modp.matmul(self.blocks[arrow.target], self.source.action[arrow.label], self.p)
            if not np.array_equal(left, right):
                return False
        return True

    def compose(self, other: "Morphism") -> "Morphism":
        """self ∘ other"""
        blocks = {v: modp.matmul(self.blocks[v], other.blocks[v], self.p) for v in self.blocks}
        return Morphism(other.source, self.target, blocks, check=False)

    def flatten(self) -> np.ndarray:
        parts = [self.blocks[v].reshape(-1) for v in self.source.algebra.vertices]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    @property
    def rank(self) -> int:
        return sum(modp.rank(block, self.p) for block in self.blocks.values())

    @property
    def is_zero(self) -> bool:
        return not any(np.any(block) for block in self.blocks.values())

    def is_identity(self) -> bool:
        return all(
            np.array_equal(block, modp.identity(block.shape[0])) if block.shape[0] == block.shape[1] else False
            for block in self.blocks.values()
        )

    def __repr__(self) -> str:
        return f"Morphism({self.source.label} -> {self.target.label}, rank={self.rank})"


def ensure_same_algebra(*modules: Representation):
    """同じ代数上の加群であることを確認"""
    first = modules[0].algebra
    for module in modules[1:]:
        if module.algebra != first:
            raise AlgebraMismatch(f"{first.name} 上と {module.algebra.name} 上の加群は組み合わせられません")


def morphism_from_flat(source: Representation, target: Representation, vector: np.ndarray) -> Morphism:
    blocks = {}
    offset = 0
    for v in source.algebra.vertices:
        size = target.dims[v] * source.dims[v]
        blocks[v] = vector[offset:offset + size].reshape(target.dims[v], source.dims[v])
        offset += size
    return Morphism(source, target, blocks, check=False)


def identity_morphism(module: Representation) -> Morphism:
    return Morphism(module, module, {v: modp.identity(d) for v, d in module.dims.items()}, check=False)


def zero_module(algebra: BoundQuiverAlgebra) -> Representation:
    return Representation(algebra, {}, name="0")


def simple_module(algebra: BoundQuiverAlgebra, vertex) -> Representation:
    """頂点 vertex の単純加群 S(vertex)"""
    algebra.quiver.vertex_index(vertex)
    return Representation(algebra, {str(vertex): 1}, name=f"S({vertex})")


@lru_cache(maxsize=None)
def projective_module(algebra: BoundQuiverAlgebra, vertex) -> ProjectiveSum:
    """直既約射影加群 P(vertex) = Λe_vertex（基底は vertex を始点とする剰余パス）"""
    algebra.quiver.vertex_index(vertex)
    return ProjectiveSum(algebra, [str(vertex)], name=f"P({vertex})")


def regular_module(algebra: BoundQuiverAlgebra, side: str = "left") -> ProjectiveSum:
    """
    正則加群

    Args:
        algebra: 代数
        side: "left" または "right"（右加群は反対代数上の左加群として実現）
    """
    if side == "left":
        return ProjectiveSum(algebra, algebra.vertices, name=f"{algebra.name}")
    if side == "right":
        op = algebra.opposite()
        return ProjectiveSum(op, op.vertices, name=f"{op.name}")
    raise ValueError(f"side は left か right です: {side}")


def direct_sum(*modules: Representation) -> Representation:
    """直和（ブロック対角）"""
    ensure_same_algebra(*modules)
    algebra = modules[0].algebra
    dims = {v: sum(m.dims[v] for m in modules) for v in algebra.vertices}
    action = {}
    for arrow in algebra.quiver.arrows:
        matrix = modp.zeros(dims[arrow.target], dims[arrow.source])
        row = col = 0
        for m in modules:
            block = m.action[arrow.label]
            matrix[row:row + block.shape[0], col:col + block.shape[1]] = block
            row += block.shape[0]
            col += block.shape[1]
        action[arrow.label] = matrix
    name = " ⊕ ".join(m.label for m in modules)
    return Representation(algebra, dims, action, name=name, check=False)


def subrepresentation(module: Representation, spans: Spans, name: str = "") -> Tuple[Representation, Morphism]:
    """
    部分加群と包含写像

    Args:
        module: 加群
        spans: 頂点 -> 部分空間の基底（列、一次独立）

    Returns:
        (部分加群, 包含写像)
    """
    algebra = module.algebra
    p = module.p
    dims = {v: spans[v].shape[1] for v in algebra.vertices}
    action = {}
    for arrow in algebra.quiver.arrows:
        image = modp.matmul(module.action[arrow.label], spans[arrow.source], p)
        action[arrow.label] = modp.solve(spans[arrow.target], image, p)
    sub = Representation(algebra, dims, action, name=name, check=False)
    return sub, Morphism(sub, module, dict(spans), check=False)


def quotient(module: Representation, spans: Spans, name: str = "") -> Tuple[Representation, Morphism]:
    """
    商加群と射影

    Args:
        module: 加群
        spans: 頂点 -> 部分加群の生成ベクトル（列）

    Returns:
        (商加群, 射影)
    """
    algebra = module.algebra
    p = module.p
    maps = {v: modp.quotient_maps(spans[v], module.dims[v], p) for v in algebra.vertices}
    dims = {v: maps[v][0].shape[0] for v in algebra.vertices}
    action = {}
    for arrow in algebra.quiver.arrows:
        projection = maps[arrow.target][0]
        section = maps[arrow.source][1]
        action[arrow.label] = modp.matmul(modp.matmul(projection, module.action[arrow.label], p), section, p)
    result = Representation(algebra, dims, action, name=name, check=False)
    return result, Morphism(module, result, {v: maps[v][0] for v in algebra.vertices}, check=False)


def kernel(morphism: Morphism, name: str = "") -> Tuple[Representation, Morphism]:
    spans = {v: modp.nullspace(block, morphism.p) for v, block in morphism.blocks.items()}
    return subrepresentation(morphism.source, spans, name=name)


def cokernel(morphism: Morphism, name: str = "") -> Tuple[Representation, Morphism]:
    spans = {v: modp.column_basis(block, morphism.p) for v, block in morphism.blocks.items()}
    return quotient(morphism.target, spans, name=name)


def radical_spans(module: Representation, spans: Optional[Spans] = None) -> Spans:
    """
    rad(N) = Σ 矢印の像 の各頂点の基底

    Args:
        module: 加群
        spans: 部分加群 N の基底（省略時は module 全体）
    """
    p = module.p
    result = {}
    for w in module.algebra.vertices:
        images = [
            modp.matmul(
                module.action[a.label],
                spans[a.source] if spans is not None else modp.identity(module.dims[a.source]),
                p,
            )
            for a in module.algebra.quiver.arrows_into(w)
        ]
        stacked = np.hstack(images) if images else modp.zeros(module.dims[w], 0)
        result[w] = modp.column_basis(stacked, p)
    return result


def top_dims(module: Representation) -> Dict[str, int]:
    """top(M) = M/rad M の次元ベクトル"""
    radical = radical_spans(module)
    return {v: module.dims[v] - radical[v].shape[1] for v in module.algebra.vertices}


def radical_filtration(module: Representation) -> List[Spans]:
    """
    M ⊇ rad M ⊇ rad^2 M ⊇ ... ⊇ 0 の各段の基底

    Returns:
        rad^0 から最初に 0 になる段までのリスト
    """
    current = {v: modp.identity(d) for v, d in module.dims.items()}
    filtration = [current]
    while any(span.shape[1] for span in current.values()):
        current = radical_spans(module, current)
        filtration.append(current)
    return filtration


def radical_layers(module: Representation) -> List[Dict[str, int]]:
    """rad^k M / rad^{k+1} M の次元ベクトル（k = 0, 1, ...）"""
    filtration = radical_filtration(module)
    return [
        {v: upper[v].shape[1] - lower[v].shape[1] for v in module.algebra.vertices}
        for upper, lower in zip(filtration, filtration[1:])
    ]


def loewy_length(module: Representation) -> int:
    return len(radical_filtration(module)) - 1
