"""
シジジー軌道の周期性による Ext 消滅の証明書

Ω^a M ≅ Ω^b M（a < b）と Ext^i(M, N) = 0（1 ≤ i ≤ b）が揃えば、
次元シフト Ext^i(M, N) ≅ Ext^{i-a}(Ω^a M, N) により全ての i ≥ 1 で消滅する。
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from src.homology.duality import transpose
from src.homology.ext import HomComplex
from src.homology.resolution import get_resolution
from src.representation.hom import IsoOutcome, IsoSearchSettings, is_isomorphic
from src.representation.module import Morphism, Representation, ensure_same_algebra, regular_module
from src.utils.exceptions import PreconditionError, UndeterminedIsomorphism
from src.utils.logger import Logger

DEFAULT_BOUND = 64

logger = Logger("certificate").get_logger()


class CertificateKind(str, Enum):
    CERTIFIED_VANISHING = "certified_vanishing"
    NONZERO_AT = "nonzero_at"
    UNKNOWN_BEYOND = "unknown_beyond"


@dataclass
class Certificate:
    """
    Ext 消滅判定の証明書

    Attributes:
        kind: 判定の種類
        context: 対象の Ext 族（例 "Ext(S(1), Λ)"）
        bound: 探索上限 B
        ext_dims: 計算済みの dim Ext^i（i = 1, 2, ...）
        period: 周期の組 (a, b)（CERTIFIED_VANISHING のとき）
        witness: Ω^a M -> Ω^b M の同型（Ω^b M = 0 による場合は None）
        degree: 最初に消えなかった次数（NONZERO_AT のとき）
        dimension: その次数での次元
    """

    kind: CertificateKind
    context: str
    bound: int
    ext_dims: List[int] = field(default_factory=list)
    period: Optional[Tuple[int, int]] = None
    witness: Optional[Morphism] = None
    degree: Optional[int] = None
    dimension: Optional[int] = None

    @property
    def is_certified(self) -> bool:
        return self.kind == CertificateKind.CERTIFIED_VANISHING

    @property
    def is_nonzero(self) -> bool:
        return self.kind == CertificateKind.NONZERO_AT

    @property
    def is_unknown(self) -> bool:
        return self.kind == CertificateKind.UNKNOWN_BEYOND

    @property
    def checked_range(self) -> Tuple[int, int]:
        return (1, len(self.ext_dims))

    def to_dict(self, verbose: bool = False) -> dict:
        """JSON レポート用の辞書"""
        record = {
            "kind": self.kind.value,
            "context": self.context,
            "bound": self.bound,
            "ext_dims": [int(d) for d in self.ext_dims],
            "summary": self.summary(),
        }
        if self.period is not None:
            record["period"] = [int(self.period[0]), int(self.period[1])]
        if self.degree is not None:
            record["degree"] = int(self.degree)
            record["dimension"] = int(self.dimension)
        if verbose and self.witness is not None:
            record["witness"] = {
                v: block.tolist() for v, block in self.witness.blocks.items()
            }
        return record

    def summary(self) -> str:
        """表に載せる短い判定（例: 消滅(周期 0->4)）"""
        if self.is_certified:
            return f"消滅(周期 {self.period[0]}->{self.period[1]})"
        if self.is_nonzero:
            return f"非零(i={self.degree}, dim={self.dimension})"
        return f"不明(B={self.bound})"


def ext_vanishing_certificate(
    module: Representation,
    target: Representation,
    bound: int = DEFAULT_BOUND,
    context: str = "",
    settings: Optional[IsoSearchSettings] = None
) -> Certificate:
    """
    Ext^i(M, N) = 0（全ての i ≥ 1）を判定する

    b = 1..B の順に dim Ext^b(M, N) を計算し、非零なら NONZERO_AT。
    消えていれば Ω^b M を Ω^0 M..Ω^{b-1} M と比較し、同型が見つかれば
    CERTIFIED_VANISHING。B まで決着しなければ UNKNOWN_BEYOND。

    Args:
        module: M
        target: N
        bound: 探索上限 B
        context: 証明書に記録する説明
        settings: 同型探索の設定

    Returns:
        Certificate

    Raises:
        AlgebraMismatch: 代数が異なる場合
        UndeterminedIsomorphism: 軌道探索中に同型判定が決着しなかった場合
    """
    ensure_same_algebra(module, target)
    if bound < 1:
        raise PreconditionError(f"探索上限は 1 以上です: {bound}")
    context = context or f"Ext({module.label}, {target.label})"

    if module.is_zero:
        return Certificate(CertificateKind.CERTIFIED_VANISHING, context, bound, [0], period=(0, 1))

    resolution = get_resolution(module)
    complex_ = HomComplex(resolution, target)
    ext_dims: List[int] = []
    for b in range(1, bound + 1):
        dimension = complex_.cohomology_dim(b)
        ext_dims.append(dimension)
        if dimension > 0:
            logger.debug(f"{context}: i={b} で dim={dimension}")
            return Certificate(
                CertificateKind.NONZERO_AT, context, bound, ext_dims, degree=b, dimension=dimension
            )

        current = resolution.syzygy(b)
        if current.is_zero:
            # Ω^b M = 0 なので次数 b+1 以降も 0
            ext_dims.append(0)
            return Certificate(CertificateKind.CERTIFIED_VANISHING, context, bound, ext_dims, period=(b, b + 1))

        for a in range(b):
            earlier = resolution.syzygy(a)
            if earlier.dimension_vector != current.dimension_vector:
                continue
            result = is_isomorphic(earlier, current, settings)
            if result.outcome == IsoOutcome.UNDETERMINED:
                raise UndeterminedIsomorphism(
                    f"{context}: Ω^{a} と Ω^{b} の同型判定が決着しません（{result.reason}）"
                )
            if result.is_yes:
                logger.debug(f"{context}: Ω^{a} ≅ Ω^{b} により消滅を証明")
                return Certificate(
                    CertificateKind.CERTIFIED_VANISHING, context, bound, ext_dims,
                    period=(a, b), witness=result.witness,
                )

    logger.warning(f"{context}: B={bound} までに決着しませんでした")
    return Certificate(CertificateKind.UNKNOWN_BEYOND, context, bound, ext_dims)


@dataclass
class GorensteinVerdict:
    """
    Gorenstein 射影性の判定

    Attributes:
        verdict: "gp" / "not_gp" / "unknown"
        against_algebra: Ext(M, Λ) の証明書
        against_transpose: Ext(Tr M, Λ) の証明書（反対代数上）
    """

    verdict: str
    against_algebra: Certificate
    against_transpose: Certificate

    @property
    def is_gp(self) -> bool:
        return self.verdict == "gp"

    @property
    def is_decisive(self) -> bool:
        return self.verdict != "unknown"

    def to_dict(self, verbose: bool = False) -> dict:
        return {
            "verdict": self.verdict,
            "ext_against_algebra": self.against_algebra.to_dict(verbose),
            "ext_of_transpose": self.against_transpose.to_dict(verbose),
        }


def is_gorenstein_projective(
    module: Representation,
    bound: int = DEFAULT_BOUND,
    settings: Optional[IsoSearchSettings] = None
) -> GorensteinVerdict:
    """
    Ext^i(M, Λ) = 0 かつ Ext^i(Tr M, Λ) = 0（i ≥ 1）を証明書で判定

    両方 CERTIFIED_VANISHING なら "gp"、どちらかが NONZERO_AT なら "not_gp"、
    それ以外は "unknown"。
    """
    algebra = module.algebra
    first = ext_vanishing_certificate(
        module, regular_module(algebra, "left"), bound,
        context=f"Ext({module.label}, {algebra.name})", settings=settings,
    )
    transposed = transpose(module)
    second = ext_vanishing_certificate(
        transposed, regular_module(algebra, "right"), bound,
        context=f"Ext({transposed.label}, {algebra.opposite().name})", settings=settings,
    )
    if first.is_certified and second.is_certified:
        verdict = "gp"
    elif first.is_nonzero or second.is_nonzero:
        verdict = "not_gp"
    else:
        verdict = "unknown"
    return GorensteinVerdict(verdict, first, second)


def is_self_orthogonal(
    module: Representation,
    bound: int = DEFAULT_BOUND,
    settings: Optional[IsoSearchSettings] = None
) -> Certificate:
    """Ext^i(M, M) = 0（i ≥ 1）の証明書"""
    return ext_vanishing_certificate(
        module, module, bound, context=f"Ext({module.label}, {module.label})", settings=settings
    )
