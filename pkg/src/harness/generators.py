"""
検証用の代数の生成
"""
from typing import Dict, List, Sequence, Tuple

from src.algebra.bound_algebra import DEFAULT_CHARACTERISTIC, BoundQuiverAlgebra, build_algebra
from src.algebra.quiver import PathElement, Quiver
from src.utils.exceptions import PreconditionError


def cyclic_quiver(n: int) -> Quiver:
    """頂点 1..n、矢印 a_i: i -> i+1（a_n: n -> 1）の巡回箙"""
    return Quiver(
        range(1, n + 1),
        [(f"a{i}", i, i % n + 1) for i in range(1, n + 1)],
    )


def linear_quiver(n: int) -> Quiver:
    """頂点 1..n、矢印 a_i: i -> i+1（i < n）の線形箙"""
    return Quiver(range(1, n + 1), [(f"a{i}", i, i + 1) for i in range(1, n)])


def monomial_relation(quiver: Quiver, start_arrow: int, length: int) -> PathElement:
    """
    a_{start} から始まる長さ length の単項関係式

    Args:
        quiver: 巡回箙または線形箙
        start_arrow: 最初の矢印の番号（1 始まり）
        length: パスの長さ
    """
    count = len(quiver.arrows)
    labels = [quiver.arrows[(start_arrow - 1 + k) % count].label for k in range(length)]
    return PathElement.from_path(quiver.path(labels))


def example_2_5(n: int, p: int = DEFAULT_CHARACTERISTIC) -> BoundQuiverAlgebra:
    """
    長さ 2 のパスをすべて消した巡回中山代数 Λ(n)

    関係式は a_i*a_{i+1}（i < n）と a_n*a_1。dim Λ(n) = 2n。

    Raises:
        PreconditionError: n < 3 の場合
    """
    if n < 3:
        raise PreconditionError(f"n は 3 以上です: {n}")
    quiver = cyclic_quiver(n)
    relations = [monomial_relation(quiver, i, 2) for i in range(1, n + 1)]
    return build_algebra(quiver, relations, p, name=f"lambda{n}")


def lambda_opposite_relabeling(n: int) -> Tuple[Dict[str, str], Dict[str, str]]:
    """
    Λ(n)^op から Λ(n) への付け替え（頂点 j ↦ n+1-j）

    反対矢印 a_i: i+1 -> i は a_{n-i}（i < n）に、a_n: 1 -> n は a_n に移る。
    """
    vertex_map = {str(j): str(n + 1 - j) for j in range(1, n + 1)}
    arrow_map = {f"a{i}": f"a{n - i}" for i in range(1, n)}
    arrow_map[f"a{n}"] = f"a{n}"
    return vertex_map, arrow_map


def a2_algebra(p: int = DEFAULT_CHARACTERISTIC) -> BoundQuiverAlgebra:
    """A2 型の道代数 1 -> 2"""
    return build_algebra(Quiver([1, 2], [("a", 1, 2)]), [], p, name="a2")


def semisimple_algebra(n: int, p: int = DEFAULT_CHARACTERISTIC) -> BoundQuiverAlgebra:
    """矢印のない n 頂点の代数"""
    if n < 1:
        raise PreconditionError(f"頂点数は 1 以上です: {n}")
    return build_algebra(Quiver(range(1, n + 1), []), [], p, name=f"semisimple{n}")


def kronecker_algebra(p: int = DEFAULT_CHARACTERISTIC) -> BoundQuiverAlgebra:
    """平行な二本の矢印を持つ Kronecker 代数"""
    return build_algebra(Quiver([1, 2], [("a", 1, 2), ("b", 1, 2)]), [], p, name="kronecker")


def loop_algebra(p: int = DEFAULT_CHARACTERISTIC) -> BoundQuiverAlgebra:
    """k[x]/(x^2)"""
    quiver = Quiver([1], [("x", 1, 1)])
    return build_algebra(quiver, [PathElement.from_path(quiver.path(["x", "x"]))], p, name="loop")


def nakayama_algebra(
    cyclic: bool,
    n: int,
    relations: Sequence[Tuple[int, int]],
    p: int = DEFAULT_CHARACTERISTIC,
    name: str = ""
) -> BoundQuiverAlgebra:
    """
    単項関係式で定まる中山代数

    Args:
        cyclic: 巡回箙なら True、線形箙なら False
        n: 頂点数
        relations: (最初の矢印の番号, 長さ) の列
        p: 標数
        name: 表示名
    """
    quiver = cyclic_quiver(n) if cyclic else linear_quiver(n)
    elements: List[PathElement] = [monomial_relation(quiver, start, length) for start, length in relations]
    return build_algebra(quiver, elements, p, name=name or None)
