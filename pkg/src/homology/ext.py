"""
Ext 次元と安定 Hom 次元
"""
from typing import Dict, List

import numpy as np

from src.homology.resolution import Resolution, get_resolution, projective_cover
from src.representation.hom import hom_dim, hom_space, span_rank
from src.representation.module import Representation, ensure_same_algebra
from src.utils import modp
from src.utils.exceptions import PreconditionError


class HomComplex:
    """
    余鎖複体 Hom(P_•, N)

    Hom(P_j, N) は生成元ごとの N_{v_g} の直和と同一視する。
    δ_j: Hom(P_j, N) -> Hom(P_{j+1}, N) は φ ↦ φ∘d_{j+1}。
    """

    def __init__(self, resolution: Resolution, target: Representation):
        """
        初期化

        Args:
            resolution: M の極小射影分解
            target: 係数加群 N
        """
        ensure_same_algebra(resolution.module, target)
        self.resolution = resolution
        self.target = target
        self._ranks: Dict[int, int] = {}

    def cochain_dim(self, j: int) -> int:
        """dim Hom(P_j, N)"""
        term = self.resolution.term(j)
        return sum(self.target.dims[v] for v in term.generators)

    def coboundary(self, j: int) -> np.ndarray:
        """δ_j の行列（行: P_{j+1} の生成元ごとの N_v、列: P_j の生成元ごとの N_v）"""
        source = self.resolution.term(j)
        target_term = self.resolution.term(j + 1)
        differential = self.resolution.differential(j + 1)
        coefficients = self.target
        column_offsets = np.cumsum([0] + [coefficients.dims[v] for v in source.generators])
        row_offsets = np.cumsum([0] + [coefficients.dims[v] for v in target_term.generators])
        matrix = modp.zeros(int(row_offsets[-1]), int(column_offsets[-1]))
        for g2, v2 in enumerate(target_term.generators):
            image = differential.blocks[v2][:, target_term.generator_position(g2)]
            for g, element in source.element_of(v2, image).items():
                block = coefficients.element_matrix(element, source.generators[g], v2)
                matrix[row_offsets[g2]:row_offsets[g2 + 1], column_offsets[g]:column_offsets[g + 1]] = block
        return matrix

    def coboundary_rank(self, j: int) -> int:
        if j < 0:
            return 0
        if j not in self._ranks:
            self._ranks[j] = modp.rank(self.coboundary(j), self.target.p)
        return self._ranks[j]

    def cohomology_dim(self, i: int) -> int:
        """H^i = ker δ_i / im δ_{i-1} の次元"""
        if i < 0:
            raise PreconditionError(f"Ext の次数は非負です: {i}")
        return self.cochain_dim(i) - self.coboundary_rank(i) - self.coboundary_rank(i - 1)


def ext_dim(module: Representation, target: Representation, i: int) -> int:
    """
    dim Ext^i(M, N)

    Args:
        module: M
        target: N
        i: 次数（i = 0 のときは dim Hom(M, N)）

    Returns:
        次元

    Raises:
        AlgebraMismatch: 代数が異なる場合
    """
    return HomComplex(get_resolution(module), target).cohomology_dim(i)


def ext_table(module: Representation, target: Representation, upto: int) -> List[int]:
    """[dim Ext^1(M, N), ..., dim Ext^upto(M, N)]"""
    complex_ = HomComplex(get_resolution(module), target)
    return [complex_.cohomology_dim(i) for i in range(1, upto + 1)]


def ext_dim_by_shift(module: Representation, target: Representation, i: int) -> int:
    """
    短完全列 0 -> Ω^i M -> P_{i-1} -> Ω^{i-1} M -> 0 から求めた dim Ext^i(M, N)

    dim Hom(Ω^i M, N) - dim Hom(P_{i-1}, N) + dim Hom(Ω^{i-1} M, N)。
    ext_dim とは独立な計算経路。
    """
    if i < 1:
        raise PreconditionError(f"次数は 1 以上です: {i}")
    resolution = get_resolution(module)
    return (
        hom_dim(resolution.syzygy(i), target)
        - hom_dim(resolution.term(i - 1), target)
        + hom_dim(resolution.syzygy(i - 1), target)
    )


def stable_hom_dim(module: Representation, target: Representation) -> int:
    """
    dim Hom(M, N) から射影加群を経由する準同型の次元を引いたもの

    射影加群を経由する写像は N の射影被覆 π: P -> N を経由するので、
    {π∘h : h ∈ Hom(M, P)} の次元を引く。
    """
    ensure_same_algebra(module, target)
    cover, epi = projective_cover(target)
    factoring = [epi.compose(h) for h in hom_space(module, cover)]
    return hom_dim(module, target) - span_rank(factoring)
