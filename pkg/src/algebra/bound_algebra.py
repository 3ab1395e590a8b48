"""
束縛箙代数 Λ = kQ/I（k = F_p）の構成

剰余パス基底は長さの小さい順にパスを列挙し、切り詰めたイデアルを
(始点, 終点) ブロックごとのガウス消去で簡約して求める。
長さ L の層がすべてイデアルに入った時点で列挙を終える（rad^L ⊆ I）。
"""
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime

from src.algebra.quiver import Path, PathElement, Quiver
from src.utils import modp
from src.utils.exceptions import InputError, NotAdmissible, NotPrime
from src.utils.logger import Logger

DEFAULT_CHARACTERISTIC = 2
DEFAULT_LENGTH_CAP = 64
DEFAULT_PATH_CAP = 20000

logger = Logger("algebra").get_logger()

Sparse = Dict[int, int]


class BoundQuiverAlgebra:
    """束縛箙代数クラス（構成後は不変）"""

    def __init__(
        self,
        quiver: Quiver,
        relations: Tuple[PathElement, ...],
        characteristic: int,
        basis: List[Path],
        normal_forms: Dict[Path, Sparse],
        nilpotency: int,
        length_cap: int = DEFAULT_LENGTH_CAP,
        path_cap: int = DEFAULT_PATH_CAP,
        name: Optional[str] = None
    ):
        """
        初期化（通常は build_algebra から呼ぶ）

        Args:
            quiver: 箙
            relations: 標数で簡約済みの関係式
            characteristic: 素数 p
            basis: 剰余パス基底（(長さ, ラベル列) の昇順）
            normal_forms: 基底でないパスの基底座標での表示
            nilpotency: 長さ nilpotency 以上のパスはすべて 0
            length_cap: 構成時のパス長上限
            path_cap: 構成時のパス数上限
            name: 表示名
        """
        self.quiver = quiver
        self.relations = relations
        self.characteristic = characteristic
        self.basis = basis
        self.nilpotency = nilpotency
        self.length_cap = length_cap
        self.path_cap = path_cap
        self.name = name or "Lambda"
        self._normal_forms = normal_forms
        self._index = {path: i for i, path in enumerate(basis)}
        self._opposite: Optional["BoundQuiverAlgebra"] = None

        # 合成可能な基底の組の積（疎ベクトル）
        self._products: Dict[Tuple[int, int], Sparse] = {}
        for i, left in enumerate(basis):
            for j, right in enumerate(basis):
                path = left.concat(right)
                if path is not None:
                    product = self.reduce_path(path)
                    if product:
                        self._products[(i, j)] = product

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self.quiver.vertices

    @property
    def p(self) -> int:
        return self.characteristic

    def basis_index(self, path: Path) -> int:
        return self._index[path]

    def basis_between(self, source: str, target: str) -> List[int]:
        """source から target への基底パスの番号（e_source Λ e_target の基底）"""
        return [i for i, path in enumerate(self.basis) if path.source == source and path.target == target]

    def basis_from(self, source: str) -> List[int]:
        return [i for i, path in enumerate(self.basis) if path.source == source]

    def reduce_path(self, path: Path) -> Sparse:
        """パスの剰余類を基底座標（疎）で返す"""
        if path.length >= self.nilpotency:
            return {}
        if path in self._index:
            return {self._index[path]: 1}
        if path in self._normal_forms:
            return dict(self._normal_forms[path])
        raise InputError(f"パス {path} は箙のパスではありません")

    def reduce(self, element: PathElement) -> np.ndarray:
        """パスの一次結合を基底座標に簡約"""
        vector = np.zeros(self.dim, dtype=np.int64)
        for path, coefficient in element.terms:
            for index, c in self.reduce_path(path).items():
                vector[index] += coefficient * c
        return vector % self.p

    def unit(self, index: int) -> np.ndarray:
        vector = np.zeros(self.dim, dtype=np.int64)
        vector[index] = 1
        return vector

    def idempotent(self, vertex) -> np.ndarray:
        return self.unit(self._index[self.quiver.trivial_path(vertex)])

    def one(self) -> np.ndarray:
        return sum((self.idempotent(v) for v in self.vertices), np.zeros(self.dim, dtype=np.int64)) % self.p

    def basis_product(self, i: int, j: int) -> Sparse:
        return self._products.get((i, j), {})

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """
        基底座標で与えた元の積

        Args:
            x: 左の元（x の後に y をたどる）
            y: 右の元

        Returns:
            積の基底座標
        """
        result = np.zeros(self.dim, dtype=np.int64)
        for i in np.nonzero(x % self.p)[0]:
            for j in np.nonzero(y % self.p)[0]:
                for k, c in self._products.get((int(i), int(j)), {}).items():
                    result[k] += int(x[i]) * int(y[j]) * c
        return result % self.p

    def opposite(self) -> "BoundQuiverAlgebra":
        """反対代数（結果はキャッシュし、op(op(Λ)) は Λ 自身を返す）"""
        if self._opposite is None:
            name = self.name[:-3] if self.name.endswith("^op") else f"{self.name}^op"
            op = build_algebra(
                self.quiver.opposite(),
                [r.reversed() for r in self.relations],
                self.characteristic,
                length_cap=self.length_cap,
                path_cap=self.path_cap,
                name=name,
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    def key(self) -> Tuple:
        return (self.quiver.key(), self.relations, self.characteristic)

    def __eq__(self, other) -> bool:
        return isinstance(other, BoundQuiverAlgebra) and (other is self or self.key() == other.key())

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"BoundQuiverAlgebra({self.name}, dim={self.dim}, p={self.characteristic})"


def _sort_key(quiver: Quiver):
    return lambda path: (path.length, path.arrows, quiver.vertex_index(path.source))


def _validate_relations(quiver: Quiver, relations: Iterable[PathElement], p: int) -> Tuple[PathElement, ...]:
    """関係式を簡約し、許容性の下界（rad^2 ⊆ I を生成）と端点の一様性を確認"""
    checked = []
    for relation in relations:
        relation = relation.reduced(p)
        if relation.is_zero:
            continue
        for path in relation.paths:
            if not path.is_trivial:
                quiver.path(list(path.arrows))
        if relation.min_length < 2:
            raise NotAdmissible(f"関係式 {relation} に長さ2未満のパスが含まれています")
        if len(relation.endpoints) != 1:
            raise NotAdmissible(f"関係式 {relation} の項の始点・終点が一致しません")
        checked.append(relation)
    return tuple(dict.fromkeys(checked))


def _reduce_truncated(
    quiver: Quiver,
    relations: Sequence[PathElement],
    layers: List[List[Path]],
    length: int,
    p: int
) -> Tuple[set, Dict[Path, Sparse], List[Path]]:
    """
    kQ / (I + rad^{length+1}) をブロックごとのガウス消去で計算

    Returns:
        (ピボットになったパスの集合, ピボットパス -> 非ピボット列の係数, 非ピボットパス一覧)
    """
    key = _sort_key(quiver)
    ending_at: Dict[str, List[Path]] = {v: [] for v in quiver.vertices}
    starting_at: Dict[str, List[Path]] = {v: [] for v in quiver.vertices}
    blocks: Dict[Tuple[str, str], List[Path]] = {}
    for layer in layers[: length + 1]:
        for path in layer:
            ending_at[path.target].append(path)
            starting_at[path.source].append(path)
            blocks.setdefault((path.source, path.target), []).append(path)

    rows: Dict[Tuple[str, str], List[Dict[Path, int]]] = {}
    for relation in relations:
        (source, target), = relation.endpoints
        budget = length - relation.min_length
        for left in ending_at[source]:
            if left.length > budget:
                continue
            for right in starting_at[target]:
                if left.length + right.length > budget:
                    continue
                row = {}
                for path, c in relation.terms:
                    if left.length + path.length + right.length <= length:
                        full = left.concat(path).concat(right)
                        row[full] = (row.get(full, 0) + c) % p
                row = {path: c for path, c in row.items() if c}
                if row:
                    rows.setdefault((left.source, right.target), []).append(row)

    pivot_paths: set = set()
    normal_forms: Dict[Path, Sparse] = {}
    survivors: List[Path] = []
    for block, paths in blocks.items():
        # 列は降順：大きいパスが先頭（先導項）になる
        columns = sorted(paths, key=key, reverse=True)
        block_rows = rows.get(block, [])
        if not block_rows:
            survivors.extend(columns)
            continue
        position = {path: c for c, path in enumerate(columns)}
        matrix = np.zeros((len(block_rows), len(columns)), dtype=np.int64)
        for r, row in enumerate(block_rows):
            for path, c in row.items():
                matrix[r, position[path]] = c
        reduced, pivots = modp.row_reduce(matrix, p)
        pivot_set = set(pivots)
        for c, path in enumerate(columns):
            if c not in pivot_set:
                survivors.append(path)
        for r, c in enumerate(pivots):
            pivot_paths.add(columns[c])
            normal_forms[columns[c]] = {
                columns[j]: int(-reduced[r, j] % p)
                for j in range(len(columns))
                if j not in pivot_set and reduced[r, j] % p
            }
    return pivot_paths, normal_forms, survivors


def build_algebra(
    quiver: Quiver,
    relations: Iterable[PathElement],
    p: int = DEFAULT_CHARACTERISTIC,
    length_cap: int = DEFAULT_LENGTH_CAP,
    path_cap: int = DEFAULT_PATH_CAP,
    name: Optional[str] = None
) -> BoundQuiverAlgebra:
    """
    箙と関係式から束縛箙代数を構成

    Args:
        quiver: 箙
        relations: 関係式（長さ2以上のパスの一次結合）
        p: 標数（素数）
        length_cap: 零層を探すパス長の上限
        path_cap: 列挙するパス数の上限
        name: 表示名

    Returns:
        BoundQuiverAlgebra

    Raises:
        NotPrime: p が素数でない場合
        NotAdmissible: 関係式が許容的でない、または上限内に零層が見つからない場合
    """
    if not isinstance(p, int) or not isprime(p):
        raise NotPrime(f"標数 {p} は素数ではありません")
    checked = _validate_relations(quiver, relations, p)

    layers: List[List[Path]] = []
    generator = quiver.paths_by_length(length_cap)
    layers.append(next(generator))
    total = len(layers[0])
    for length in range(1, length_cap + 1):
        layers.append(next(generator))
        total += len(layers[length])
        if total > path_cap:
            raise NotAdmissible(f"パス数が上限 {path_cap} を超えました（長さ {length}）")

        pivot_paths, normal_forms, survivors = _reduce_truncated(quiver, checked, layers, length, p)
        if all(path in pivot_paths for path in layers[length]):
            basis = sorted(survivors, key=_sort_key(quiver))
            # 正規形の係数をパスから基底番号に付け替える
            index = {path: i for i, path in enumerate(basis)}
            forms = {
                path: {index[q]: c for q, c in form.items()}
                for path, form in normal_forms.items()
            }
            algebra = BoundQuiverAlgebra(
                quiver, checked, p, basis, forms, length,
                length_cap=length_cap, path_cap=path_cap, name=name
            )
            logger.debug(f"代数 {algebra.name} を構成しました: dim={algebra.dim}, 冪零指数={length}")
            return algebra

    raise NotAdmissible(f"長さ {length_cap} 以内に零になるパスの層が見つかりません")


def is_relabeling(
    first: BoundQuiverAlgebra,
    second: BoundQuiverAlgebra,
    vertex_map: Dict[str, str],
    arrow_map: Dict[str, str]
) -> bool:
    """
    頂点・矢印の付け替えが first の基底と乗積表を second に移すか判定

    Args:
        first: 元の代数
        second: 比較先の代数
        vertex_map: 頂点の対応
        arrow_map: 矢印ラベルの対応

    Returns:
        付け替えが代数同型を与えるなら True
    """
    if first.dim != second.dim or first.p != second.p:
        return False
    image = np.zeros((first.dim, second.dim), dtype=np.int64)
    for i, path in enumerate(first.basis):
        if path.is_trivial:
            mapped = second.quiver.trivial_path(vertex_map[path.source])
        else:
            try:
                mapped = second.quiver.path([arrow_map[a] for a in path.arrows])
            except (InputError, KeyError):
                return False
        for k, c in second.reduce_path(mapped).items():
            image[i, k] = c
    if not modp.is_invertible(image, first.p):
        return False
    for i in range(first.dim):
        for j in range(first.dim):
            product = np.zeros(first.dim, dtype=np.int64)
            for k, c in first.basis_product(i, j).items():
                product[k] = c
            left = (product @ image) % first.p
            right = second.multiply(image[i], image[j])
            if not np.array_equal(left, right):
                return False
    return True
