"""
Hom空間と同型判定

同型判定は可逆な準同型（証人）を見つけた場合にのみ YES を返す。
"""
import itertools
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

import numpy as np

from src.representation.module import (
    Morphism,
    Representation,
    ensure_same_algebra,
    morphism_from_flat,
    radical_layers,
    top_dims,
)
from src.utils import modp
from src.utils.logger import Logger

logger = Logger("hom").get_logger()


def hom_space(source: Representation, target: Representation) -> List[Morphism]:
    """
    Hom(source, target) の基底

    未知数は頂点ごとの行列 f_v（行優先で平坦化）。矢印 a: u -> w ごとに
    N_a f_u - f_w M_a = 0 を課した連立方程式の零空間を求める。

    Args:
        source: 始域 M
        target: 終域 N

    Returns:
        準同型の基底のリスト

    Raises:
        AlgebraMismatch: 代数が異なる場合
    """
    ensure_same_algebra(source, target)
    algebra = source.algebra
    p = source.p
    offsets = {}
    total = 0
    for v in algebra.vertices:
        offsets[v] = total
        total += target.dims[v] * source.dims[v]
    if total == 0:
        return []

    blocks = []
    for arrow in algebra.quiver.arrows:
        u, w = arrow.source, arrow.target
        m_u, m_w = source.dims[u], source.dims[w]
        n_u, n_w = target.dims[u], target.dims[w]
        if n_w * m_u == 0:
            continue
        rows = np.zeros((n_w * m_u, total), dtype=np.int64)
        if n_u * m_u:
            rows[:, offsets[u]:offsets[u] + n_u * m_u] += np.kron(target.action[arrow.label], modp.identity(m_u))
        if n_w * m_w:
            rows[:, offsets[w]:offsets[w] + n_w * m_w] -= np.kron(modp.identity(n_w), source.action[arrow.label].T)
        blocks.append(rows % p)

    system = np.vstack(blocks) if blocks else np.zeros((0, total), dtype=np.int64)
    solutions = modp.nullspace(system, p)
    return [morphism_from_flat(source, target, solutions[:, j]) for j in range(solutions.shape[1])]


def hom_dim(source: Representation, target: Representation) -> int:
    return len(hom_space(source, target))


def span_rank(morphisms: List[Morphism]) -> int:
    """準同型の集合が張る空間の次元"""
    if not morphisms:
        return 0
    return modp.rank(np.vstack([f.flatten() for f in morphisms]), morphisms[0].p)


class IsoOutcome(str, Enum):
    """同型判定の三値結果"""

    YES = "yes"
    NO = "no"
    UNDETERMINED = "undetermined"


@dataclass
class IsoResult:
    """同型判定の結果（YES のときは検証済みの証人と逆写像を持つ）"""

    outcome: IsoOutcome
    witness: Optional[Morphism] = None
    inverse: Optional[Morphism] = None
    reason: str = ""

    @property
    def is_yes(self) -> bool:
        return self.outcome == IsoOutcome.YES


@dataclass(frozen=True)
class IsoSearchSettings:
    """
    可逆元探索の設定

    Attributes:
        exhaustive_limit: p^k がこれ以下なら全数探索（既定 2^16）
        random_trials: ランダム試行回数
        seed: 乱数シード
    """

    exhaustive_limit: int = 2 ** 16
    random_trials: int = 256
    seed: int = 0


def _invertible_inverse(candidate: Morphism) -> Optional[Morphism]:
    """全ての頂点で可逆なら逆写像を返す（可換性も検証する）"""
    blocks = {}
    for v, block in candidate.blocks.items():
        if block.shape[0] == 0:
            blocks[v] = block
            continue
        if not modp.is_invertible(block, candidate.p):
            return None
        blocks[v] = modp.inverse(block, candidate.p)
    inverse = Morphism(candidate.target, candidate.source, blocks, check=False)
    if not inverse.commutes():
        return None
    if not inverse.compose(candidate).is_identity() or not candidate.compose(inverse).is_identity():
        return None
    return inverse


def _combination(basis_matrix: np.ndarray, coefficients, source, target, p) -> Morphism:
    vector = (np.asarray(coefficients, dtype=np.int64) @ basis_matrix) % p
    return morphism_from_flat(source, target, vector)


def is_isomorphic(
    first: Representation,
    second: Representation,
    settings: Optional[IsoSearchSettings] = None
) -> IsoResult:
    """
    同型判定

    次元ベクトル・top・Loewy層・Hom次元の不一致で NO を返し、それ以外は
    Hom(first, second) から可逆元を探す（ランダム試行の後、可能なら全数探索）。

    Args:
        first: 加群 M
        second: 加群 N
        settings: 探索設定

    Returns:
        IsoResult
    """
    ensure_same_algebra(first, second)
    settings = settings or IsoSearchSettings()
    p = first.p

    if first.dimension_vector != second.dimension_vector:
        return IsoResult(IsoOutcome.NO, reason="次元ベクトルが異なる")
    if first.is_zero:
        zero = Morphism(first, second, {}, check=False)
        return IsoResult(IsoOutcome.YES, zero, Morphism(second, first, {}, check=False), "零加群")
    if top_dims(first) != top_dims(second) or radical_layers(first) != radical_layers(second):
        return IsoResult(IsoOutcome.NO, reason="Loewy層が異なる")

    forward = hom_space(first, second)
    if not forward:
        return IsoResult(IsoOutcome.NO, reason="Hom(M,N) = 0")
    if hom_dim(second, first) != len(forward):
        return IsoResult(IsoOutcome.NO, reason="dim Hom(M,N) != dim Hom(N,M)")
    if hom_dim(first, first) != hom_dim(second, second):
        return IsoResult(IsoOutcome.NO, reason="dim End が異なる")

    k = len(forward)
    basis_matrix = np.vstack([f.flatten() for f in forward])
    rng = np.random.default_rng(settings.seed)
    # 探索空間が試行回数より小さければ直接全数探索する
    trials = 0 if p ** k <= settings.random_trials else settings.random_trials
    for _ in range(trials):
        coefficients = rng.integers(0, p, size=k)
        candidate = _combination(basis_matrix, coefficients, first, second, p)
        inverse = _invertible_inverse(candidate)
        if inverse is not None:
            return IsoResult(IsoOutcome.YES, candidate, inverse, "ランダム探索")

    if p ** k <= settings.exhaustive_limit:
        for coefficients in itertools.product(range(p), repeat=k):
            if not any(coefficients):
                continue
            candidate = _combination(basis_matrix, coefficients, first, second, p)
            inverse = _invertible_inverse(candidate)
            if inverse is not None:
                return IsoResult(IsoOutcome.YES, candidate, inverse, "全数探索")
        return IsoResult(IsoOutcome.NO, reason="Hom(M,N) に可逆元がない（全数探索）")

    logger.warning(
        f"同型判定が決着しません: {first.label} / {second.label} "
        f"(dim Hom = {k}, 試行 {settings.random_trials} 回)"
    )
    return IsoResult(IsoOutcome.UNDETERMINED, reason="全数探索不能かつランダム探索失敗")
