"""
中山代数の判定と直既約加群の列挙
"""
from typing import List

from src.algebra.bound_algebra import BoundQuiverAlgebra
from src.representation.module import (
    Representation,
    projective_module,
    quotient,
    radical_filtration,
    radical_layers,
)
from src.utils.exceptions import NotNakayama
from src.utils.logger import Logger

logger = Logger("nakayama").get_logger()


def is_uniserial(module: Representation) -> bool:
    """Loewy層の全次元がすべて 1 以下なら一列加群"""
    return all(sum(layer.values()) <= 1 for layer in radical_layers(module))


def is_nakayama(algebra: BoundQuiverAlgebra) -> bool:
    """
    中山代数か判定

    左右の直既約射影加群（右は反対代数上の左加群）がすべて一列加群なら True。
    """
    for side in (algebra, algebra.opposite()):
        for vertex in side.vertices:
            if not is_uniserial(projective_module(side, vertex)):
                return False
    return True


def enumerate_indecomposables_nakayama(algebra: BoundQuiverAlgebra) -> List[Representation]:
    """
    直既約加群 P(i)/rad^k P(i)（1 ≤ k ≤ P(i) の Loewy 長）をすべて列挙

    Args:
        algebra: 中山代数

    Returns:
        互いに非同型な直既約加群のリスト（頂点順、各頂点で長さの昇順）

    Raises:
        NotNakayama: 中山代数でない場合
    """
    if not is_nakayama(algebra):
        raise NotNakayama(f"{algebra.name} は中山代数ではありません")

    modules: List[Representation] = []
    for vertex in algebra.vertices:
        projective = projective_module(algebra, vertex)
        filtration = radical_filtration(projective)
        length = len(filtration) - 1
        for k in range(1, length + 1):
            if k == length:
                name = f"P({vertex})"
            elif k == 1:
                name = f"S({vertex})"
            else:
                name = f"P({vertex})/rad^{k}"
            module, _ = quotient(projective, filtration[k], name=name)
            modules.append(module)

    logger.debug(f"{algebra.name}: 直既約加群 {len(modules)} 個を列挙しました")
    return modules
