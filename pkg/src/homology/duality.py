"""
双対と転置

右加群はすべて反対代数上の左加群として実現する。
P(v)* = Hom(P(v), Λ) は反対代数の P(v) と同一視する（パス q を q の逆向きに対応）。
"""
from typing import Dict, List, Optional, Sequence

import numpy as np

from src.algebra.bound_algebra import BoundQuiverAlgebra
from src.algebra.quiver import PathElement
from src.homology.resolution import get_resolution, is_projective
from src.representation.hom import hom_space
from src.representation.module import (
    Morphism,
    ProjectiveSum,
    Representation,
    cokernel,
    projective_module,
    regular_module,
)
from src.utils import modp
from src.utils.logger import Logger

logger = Logger("duality").get_logger()

# 生成元 g -> {行き先の生成元 h: 代数の元（v_h から v_g へのパスの一次結合）}
GeneratorImages = Dict[int, Dict[int, np.ndarray]]


def projective_morphism(source: ProjectiveSum, target: ProjectiveSum, images: GeneratorImages) -> Morphism:
    """
    生成元の行き先から射影加群の間の準同型を作る

    f(e_g) = Σ_h e_h・x_{gh} のとき、基底 e_g・q は Σ_h e_h・(x_{gh} q) に移る。

    Args:
        source: 始域 ⊕ P(v_g)
        target: 終域 ⊕ P(v_h)
        images: 生成元の行き先

    Returns:
        Morphism
    """
    algebra = source.algebra
    p = source.p
    blocks = {w: modp.zeros(target.dims[w], source.dims[w]) for w in algebra.vertices}
    for w in algebra.vertices:
        for column, (g, k) in enumerate(source.layout[w]):
            for h, element in images.get(g, {}).items():
                product = algebra.multiply(element, algebra.unit(k))
                for k2 in np.nonzero(product)[0]:
                    row = target.position(w, h, int(k2))
                    blocks[w][row, column] = (blocks[w][row, column] + product[k2]) % p
    return Morphism(source, target, blocks, check=False)


def _to_opposite(algebra: BoundQuiverAlgebra, element: np.ndarray) -> np.ndarray:
    """代数の元を反対代数の基底座標に移す（各パスを逆向きにする）"""
    op = algebra.opposite()
    terms = {algebra.basis[k].reversed(): int(element[k]) for k in np.nonzero(element)[0]}
    return op.reduce(PathElement.of(terms))


def transpose(module: Representation) -> Representation:
    """
    Auslander 転置 Tr M

    極小表示 P_1 -> P_0 -> M -> 0 に Hom(-, Λ) を施した
    P_0* -> P_1* の余核。反対代数上の加群を返す（M が射影的なら 0）。
    """
    algebra = module.algebra
    op = algebra.opposite()
    resolution = get_resolution(module)
    first = resolution.term(0)
    second = resolution.term(1)
    differential = resolution.differential(1)

    # d_1(e_{g'}) = Σ_g e_g x_{g'g} を d_1*(ε_g) = Σ_{g'} e_{g'} x_{g'g}^op に書き換える
    images: GeneratorImages = {}
    for g2, v2 in enumerate(second.generators):
        image = differential.blocks[v2][:, second.generator_position(g2)]
        for g, element in first.element_of(v2, image).items():
            images.setdefault(g, {})[g2] = _to_opposite(algebra, element)

    dual_first = ProjectiveSum(op, first.generators)
    dual_second = ProjectiveSum(op, second.generators)
    dual_differential = projective_morphism(dual_first, dual_second, images)
    result, _ = cokernel(dual_differential, name=f"Tr({module.label})")
    return result


class StarDual(Representation):
    """
    M* = Hom(M, Λ)（反対代数上の加群）

    頂点 x の基底は Hom(M, P(x)) の基底。反対矢印 a^op（a: u -> w）は
    f ↦ φ_a∘f で作用する（φ_a: P(w) -> P(u), e_w ↦ a）。
    """

    def __init__(self, module: Representation, name: str = ""):
        """
        初期化

        Args:
            module: 加群 M
            name: 表示名
        """
        algebra = module.algebra
        op = algebra.opposite()
        p = module.p
        self.p = p
        self.source_module = module
        self.bases: Dict[str, List[Morphism]] = {
            x: hom_space(module, projective_module(algebra, x)) for x in algebra.vertices
        }
        self._matrices: Dict[str, np.ndarray] = {
            x: self._basis_matrix(basis, module, projective_module(algebra, x))
            for x, basis in self.bases.items()
        }

        action = {}
        for arrow in algebra.quiver.arrows:
            u, w = arrow.source, arrow.target
            arrow_index = algebra.basis_index(algebra.quiver.path([arrow.label]))
            phi = projective_morphism(
                projective_module(algebra, w),
                projective_module(algebra, u),
                {0: {0: algebra.unit(arrow_index)}},
            )
            columns = [phi.compose(f).flatten() for f in self.bases[w]]
            if columns:
                action[arrow.label] = self.coordinates(u, np.vstack(columns).T)
            else:
                action[arrow.label] = modp.zeros(len(self.bases[u]), 0)

        dims = {x: len(basis) for x, basis in self.bases.items()}
        super().__init__(op, dims, action, name=name or f"({module.label})*", check=False)

    @staticmethod
    def _basis_matrix(basis: List[Morphism], module: Representation, target: Representation) -> np.ndarray:
        if not basis:
            size = sum(target.dims[v] * module.dims[v] for v in module.algebra.vertices)
            return modp.zeros(size, 0)
        return np.vstack([f.flatten() for f in basis]).T

    def coordinates(self, vertex: str, flattened: np.ndarray) -> np.ndarray:
        """平坦化した準同型（列）を Hom(M, P(vertex)) の基底座標に直す"""
        return modp.solve(self._matrices[vertex], flattened % self.p, self.p)


def dual_star(module: Representation) -> StarDual:
    """M* = Hom(M, Λ)"""
    return StarDual(module)


def dual_star_map(
    morphism: Morphism,
    source_dual: Optional[StarDual] = None,
    target_dual: Optional[StarDual] = None
) -> Morphism:
    """
    h: M -> N に対する h*: N* -> M*（g ↦ g∘h）

    Args:
        morphism: h
        source_dual: M*（省略時は計算する）
        target_dual: N*（省略時は計算する）
    """
    source_dual = source_dual or dual_star(morphism.source)
    target_dual = target_dual or dual_star(morphism.target)
    blocks = {}
    for x, basis in target_dual.bases.items():
        columns = [g.compose(morphism).flatten() for g in basis]
        if columns:
            blocks[x] = source_dual.coordinates(x, np.vstack(columns).T)
        else:
            blocks[x] = modp.zeros(source_dual.dims[x], 0)
    return Morphism(target_dual, source_dual, blocks, check=False)


def vs_dual(module: Representation) -> Representation:
    """
    線形双対 D(M) = Hom_k(M, k)

    次元はそのままで、矢印 a の作用行列を転置して反対矢印に載せる。
    """
    op = module.algebra.opposite()
    action = {label: matrix.T.copy() for label, matrix in module.action.items()}
    return Representation(op, dict(module.dims), action, name=f"D({module.label})", check=False)


def injective_module(algebra: BoundQuiverAlgebra, vertex) -> Representation:
    """直既約入射加群 I(vertex) = D(反対代数の P(vertex))"""
    injective = vs_dual(projective_module(algebra.opposite(), vertex))
    injective.name = f"I({vertex})"
    return injective


def is_self_injective(algebra: BoundQuiverAlgebra) -> bool:
    """D(右正則加群) が射影的なら自己入射的"""
    return is_projective(vs_dual(regular_module(algebra, "right")))
