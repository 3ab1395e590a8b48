"""
射影被覆と極小射影分解
"""
from typing import List, Optional, Tuple

import numpy as np

from src.algebra.bound_algebra import BoundQuiverAlgebra
from src.representation.module import (
    Morphism,
    ProjectiveSum,
    Representation,
    kernel,
    radical_spans,
    simple_module,
    top_dims,
)
from src.utils import modp
from src.utils.exceptions import PreconditionError
from src.utils.logger import Logger

logger = Logger("resolution").get_logger()


def projective_cover(module: Representation) -> Tuple[ProjectiveSum, Morphism]:
    """
    射影被覆 P -> M

    各頂点で rad M の補空間の基底を生成元に選び、生成元 g を
    P(v_g) の e_{v_g} に対応させる。

    Args:
        module: 加群 M

    Returns:
        (P, 全射 P -> M)。M = 0 なら零加群と零写像
    """
    algebra = module.algebra
    p = module.p
    radical = radical_spans(module)
    generator_vertices: List[str] = []
    generator_vectors: List[np.ndarray] = []
    for v in algebra.vertices:
        chosen = modp.complement_basis(radical[v], module.dims[v], p)
        for j in range(chosen.shape[1]):
            generator_vertices.append(v)
            generator_vectors.append(chosen[:, j])

    cover = ProjectiveSum(algebra, generator_vertices, name=f"P({module.label})")
    blocks = {}
    for w in algebra.vertices:
        block = modp.zeros(module.dims[w], cover.dims[w])
        for column, (g, k) in enumerate(cover.layout[w]):
            path = algebra.basis[k]
            block[:, column] = modp.matmul(
                module.path_matrix(path), generator_vectors[g].reshape(-1, 1), p
            ).reshape(-1)
        blocks[w] = block
    return cover, Morphism(cover, module, blocks, check=False)


class Resolution:
    """
    極小射影分解 ... -> P_1 -> P_0 -> M -> 0 の先頭部分

    必要な長さまで遅延的に延長する（追記のみ）。同じインスタンスを
    複数スレッドから同時に延長してはならない。
    """

    def __init__(self, module: Representation):
        """
        初期化

        Args:
            module: 分解する加群 M
        """
        self.module = module
        self.terms: List[ProjectiveSum] = []
        self.covers: List[Morphism] = []
        self.syzygies: List[Representation] = [module]
        self.inclusions: List[Morphism] = []

    @property
    def length(self) -> int:
        """計算済みの射影加群の個数"""
        return len(self.terms)

    def extend(self, length: int):
        """P_0 .. P_{length-1} と Ω^length M まで計算する"""
        while len(self.terms) < length:
            i = len(self.terms)
            current = self.syzygies[i]
            cover, epi = projective_cover(current)
            inner, inclusion = kernel(epi, name=f"Ω^{i + 1}({self.module.label})")
            self.terms.append(cover)
            self.covers.append(epi)
            self.syzygies.append(inner)
            self.inclusions.append(inclusion)
            logger.debug(
                f"{self.module.label}: P_{i} の生成元 {list(cover.generators)}, "
                f"Ω^{i + 1} の次元ベクトル {inner.dimension_vector}"
            )

    def term(self, i: int) -> ProjectiveSum:
        self.extend(i + 1)
        return self.terms[i]

    def syzygy(self, i: int) -> Representation:
        if i < 0:
            raise PreconditionError(f"シジジーの次数は非負です: {i}")
        self.extend(i)
        return self.syzygies[i]

    def differential(self, i: int) -> Morphism:
        """
        d_i: P_i -> P_{i-1}（i = 0 のときは増大写像 P_0 -> M）
        """
        self.extend(i + 1)
        if i == 0:
            return self.covers[0]
        return self.inclusions[i - 1].compose(self.covers[i])

    def is_exact_at(self, i: int) -> bool:
        """P_i で im d_{i+1} = ker d_i が成り立つか（階数で判定）"""
        outgoing = self.differential(i)
        incoming = self.differential(i + 1)
        if not outgoing.compose(incoming).is_zero:
            return False
        return incoming.rank == self.terms[i].total_dim - outgoing.rank

    def is_minimal_at(self, i: int) -> bool:
        """top(P_i) と top(Ω^i M) の次元ベクトルが一致するか"""
        return top_dims(self.term(i)) == top_dims(self.syzygies[i])

    def __repr__(self) -> str:
        return f"Resolution({self.module.label}, length={self.length})"


def get_resolution(module: Representation) -> Resolution:
    """加群に付随する分解（加群ごとに一つをキャッシュする）"""
    if module._resolution is None:
        module._resolution = Resolution(module)
    return module._resolution


def syzygy(module: Representation, i: int) -> Representation:
    """i 次シジジー Ω^i M（Ω^0 M = M）"""
    return get_resolution(module).syzygy(i)


def is_projective(module: Representation) -> bool:
    """Ω^1 M = 0 なら射影的（零加群も射影的）"""
    return syzygy(module, 1).is_zero


def projective_dimension(module: Representation, bound: int) -> Optional[int]:
    """
    射影次元

    Args:
        module: 加群
        bound: 調べるシジジーの上限

    Returns:
        Ω^{d+1} M = 0 となる最小の d。bound 以内で見つからなければ None
    """
    for i in range(bound + 1):
        if syzygy(module, i + 1).is_zero:
            return i
    return None


def global_dimension(algebra: BoundQuiverAlgebra, bound: int) -> Optional[int]:
    """単純加群の射影次元の最大値（いずれかが bound を超えれば None）"""
    result = 0
    for v in algebra.vertices:
        dimension = projective_dimension(simple_module(algebra, v), bound)
        if dimension is None:
            return None
        result = max(result, dimension)
    return result
