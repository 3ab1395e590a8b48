"""
定理の検証

中山代数の直既約加群を全て列挙し、各加群の証明書から定理の主張を確かめる。
判定 pass は、寄与する証明書がすべて決着している場合にのみ出す。
"""
from typing import Dict, Iterable, List, Optional

import numpy as np

from src.algebra.bound_algebra import BoundQuiverAlgebra, is_relabeling
from src.harness.generators import example_2_5, lambda_opposite_relabeling
from src.harness.report import Verdict, VerificationReport, combine_verdicts
from src.homology.certificate import (
    DEFAULT_BOUND,
    Certificate,
    GorensteinVerdict,
    ext_vanishing_certificate,
    is_gorenstein_projective,
    is_self_orthogonal,
)
from src.homology.duality import dual_star, is_self_injective, transpose
from src.homology.ext import ext_dim, ext_dim_by_shift, ext_table, stable_hom_dim
from src.homology.resolution import global_dimension, is_projective, syzygy
from src.representation.hom import IsoOutcome, IsoSearchSettings, is_isomorphic
from src.representation.module import Representation, direct_sum, regular_module
from src.representation.nakayama import enumerate_indecomposables_nakayama, is_nakayama
from src.utils.exceptions import NotNakayama, PreconditionError, UndeterminedIsomorphism
from src.utils.logger import Logger


class TheoremVerifier:
    """中山代数上の定理検証クラス"""

    def __init__(
        self,
        algebra: BoundQuiverAlgebra,
        bound: int = DEFAULT_BOUND,
        settings: Optional[IsoSearchSettings] = None,
        ext_degrees: int = 6,
        syzygy_depth: int = 4,
        verbose: bool = False
    ):
        """
        初期化

        Args:
            algebra: 検証する代数（中山代数）
            bound: 証明書の探索上限 B
            settings: 同型探索の設定
            ext_degrees: Ext 次元表の次数の上限
            syzygy_depth: シジジーを調べる深さ
            verbose: 同型の証人をレポートに含めるか

        Raises:
            NotNakayama: 中山代数でない場合
        """
        if not is_nakayama(algebra):
            raise NotNakayama(f"{algebra.name} は中山代数ではないため定理検証の対象外です")
        self.algebra = algebra
        self.bound = bound
        self.settings = settings or IsoSearchSettings()
        self.ext_degrees = ext_degrees
        self.syzygy_depth = syzygy_depth
        self.verbose = verbose
        self.logger = Logger("checks").get_logger()

        self.modules: List[Representation] = enumerate_indecomposables_nakayama(algebra)
        self._gp: Dict[int, GorensteinVerdict] = {}
        self._self_orthogonal: Dict[int, Certificate] = {}
        self._opposite: Optional["TheoremVerifier"] = None

    # 加群ごとの証明書（番号でキャッシュする）

    def gp(self, index: int) -> GorensteinVerdict:
        if index not in self._gp:
            self._gp[index] = is_gorenstein_projective(self.modules[index], self.bound, self.settings)
        return self._gp[index]

    def self_orthogonal(self, index: int) -> Certificate:
        if index not in self._self_orthogonal:
            self._self_orthogonal[index] = is_self_orthogonal(self.modules[index], self.bound, self.settings)
        return self._self_orthogonal[index]

    def against_algebra(self, index: int) -> Certificate:
        """Ext(M, Λ) の証明書（Gorenstein 判定の前半と共有する）"""
        return self.gp(index).against_algebra

    def opposite(self) -> "TheoremVerifier":
        if self._opposite is None:
            self._opposite = TheoremVerifier(
                self.algebra.opposite(), self.bound, self.settings,
                self.ext_degrees, self.syzygy_depth, self.verbose,
            )
            self._opposite._opposite = self
        return self._opposite

    def gp_indices(self) -> List[int]:
        return [i for i in range(len(self.modules)) if self.gp(i).is_gp]

    def module_record(self, index: int) -> dict:
        """レポート用の加群の記録"""
        module = self.modules[index]
        gp = self.gp(index)
        orthogonal = self.self_orthogonal(index)
        record = {
            "name": module.label,
            "dims": [int(d) for d in module.dimension_vector],
            "projective": is_projective(module),
            "gp": gp.verdict,
            "self_orthogonal": orthogonal.to_dict(self.verbose),
            "syzygy_orbit": self.syzygy_orbit(module, orthogonal),
        }
        if self.verbose:
            record["gp_certificates"] = gp.to_dict(self.verbose)
        return record

    def syzygy_orbit(self, module: Representation, certificate: Certificate) -> List[List[int]]:
        """Ω^0 M から周期の終わり（なければ syzygy_depth）までの次元ベクトル"""
        last = certificate.period[1] if certificate.period else self.syzygy_depth
        return [[int(d) for d in syzygy(module, i).dimension_vector] for i in range(last + 1)]

    def add_module_records(self, report: VerificationReport):
        for index in range(len(self.modules)):
            report.add_module(self.module_record(index))

    def run_check(self, report: VerificationReport, name: str, body) -> Verdict:
        """
        検査を実行して結果を記録

        同型判定が決着しなかった場合は判定不能として記録する。
        """
        with report.phase(name):
            try:
                verdict, witnesses = body()
            except UndeterminedIsomorphism as e:
                self.logger.warning(f"{name}: {e}")
                verdict, witnesses = Verdict.INCONCLUSIVE, {"undetermined": str(e)}
        log = self.logger.info if verdict == Verdict.PASS else self.logger.warning
        log(f"{self.algebra.name} {name}: {verdict.value}")
        report.set_theorem(name, verdict, witnesses)
        return verdict

    # 各検査

    def _gpc(self):
        gp_modules, orthogonal, violations, unknown = [], [], [], []
        for i, module in enumerate(self.modules):
            gp = self.gp(i)
            if not gp.is_decisive:
                unknown.append(module.label)
                continue
            if not gp.is_gp:
                continue
            gp_modules.append(module.label)
            certificate = self.self_orthogonal(i)
            if certificate.is_unknown:
                unknown.append(module.label)
            elif certificate.is_certified:
                orthogonal.append(module.label)
                if not is_projective(module):
                    violations.append(module.label)
        witnesses = {
            "indecomposables": len(self.modules),
            "gorenstein_projective": len(gp_modules),
            "gp_self_orthogonal": orthogonal,
            "global_dimension": global_dimension(self.algebra, self.bound),
            "violations": violations,
            "unknown": unknown,
        }
        if violations:
            return Verdict.FAIL, witnesses
        return (Verdict.INCONCLUSIVE if unknown else Verdict.PASS), witnesses

    def gpc_check(self, report: Optional[VerificationReport] = None) -> VerificationReport:
        """
        Gorenstein 射影的かつ自己直交な直既約加群がすべて射影的であることを確認
        （Gorenstein 射影的な直既約加群の個数も報告する）
        """
        report = report or VerificationReport(self.algebra)
        self.run_check(report, "gpc_check", self._gpc)
        return report

    def gpc_verdict(self) -> Verdict:
        return self.gpc_check().verdict

    def _symmetry(self):
        mismatches, table_mismatches, unknown = [], [], []
        tables = {}
        for i in self.gp_indices():
            module = self.modules[i]
            star = dual_star(module)
            own = self.self_orthogonal(i)
            dual = is_self_orthogonal(star, self.bound, self.settings)
            if own.is_unknown or dual.is_unknown:
                unknown.append(module.label)
            elif own.is_certified != dual.is_certified:
                mismatches.append(module.label)
            left = ext_table(module, module, self.ext_degrees)
            right = ext_table(star, star, self.ext_degrees)
            tables[module.label] = left
            if left != right:
                table_mismatches.append({"module": module.label, "ext": left, "ext_of_dual": right})

        own_gpc = self.gpc_verdict()
        opposite_gpc = self.opposite().gpc_verdict()
        witnesses = {
            "self_orthogonality_mismatches": mismatches,
            "ext_table_mismatches": table_mismatches,
            "ext_tables": tables,
            "gpc": own_gpc.value,
            "gpc_opposite": opposite_gpc.value,
            "unknown": unknown,
        }
        if mismatches or table_mismatches or own_gpc != opposite_gpc:
            return Verdict.FAIL, witnesses
        return combine_verdicts([own_gpc, opposite_gpc, Verdict.INCONCLUSIVE if unknown else Verdict.PASS]), witnesses

    def symmetry_check(self, report: Optional[VerificationReport] = None) -> VerificationReport:
        """M と M* の自己直交性と Ext 次元表、Λ と Λ^op の gpc 判定が一致することを確認"""
        report = report or VerificationReport(self.algebra)
        self.run_check(report, "symmetry_check", self._symmetry)
        return report

    def _syzygies_and_transpose(self):
        failures, unknown, transpose_mismatches = [], [], []
        checked = 0
        for i in self.gp_indices():
            module = self.modules[i]
            transposed = transpose(module)
            dual_second = dual_star(syzygy(module, 2))
            outcome = is_isomorphic(transposed, dual_second, self.settings).outcome
            if outcome == IsoOutcome.UNDETERMINED:
                unknown.append(f"Tr({module.label})")
            elif outcome == IsoOutcome.NO:
                transpose_mismatches.append(module.label)

            if not self.self_orthogonal(i).is_certified:
                continue
            checked += 1
            candidates = [syzygy(module, k) for k in range(1, self.syzygy_depth + 1)] + [transposed]
            for candidate in candidates:
                certificate = is_self_orthogonal(candidate, self.bound, self.settings)
                if certificate.is_nonzero:
                    failures.append(candidate.label)
                elif certificate.is_unknown:
                    unknown.append(candidate.label)
        witnesses = {
            "checked": checked,
            "failures": failures,
            "transpose_mismatches": transpose_mismatches,
            "unknown": unknown,
        }
        if failures or transpose_mismatches:
            return Verdict.FAIL, witnesses
        return (Verdict.INCONCLUSIVE if unknown else Verdict.PASS), witnesses

    def prop_3_4_check(self, report: Optional[VerificationReport] = None) -> VerificationReport:
        """
        Gorenstein 射影的で自己直交な M について、Ω^i M（i ≤ syzygy_depth）と
        Tr M が自己直交であること、Tr M ≅ (Ω^2 M)* であることを確認
        """
        report = report or VerificationReport(self.algebra)
        self.run_check(report, "prop_3_4_check", self._syzygies_and_transpose)
        return report

    def _vanishing_against_algebra(self):
        qualifying, violations, unknown = [], [], []
        for i, module in enumerate(self.modules):
            against = self.against_algebra(i)
            if against.is_unknown:
                unknown.append(module.label)
                continue
            if not against.is_certified:
                continue
            orthogonal = self.self_orthogonal(i)
            if orthogonal.is_unknown:
                unknown.append(module.label)
            elif orthogonal.is_certified:
                qualifying.append(module.label)
                if not is_projective(module):
                    violations.append(module.label)
        witnesses = {"qualifying": qualifying, "violations": violations, "unknown": unknown}
        if violations:
            return Verdict.FAIL, witnesses
        return (Verdict.INCONCLUSIVE if unknown else Verdict.PASS), witnesses

    def prop_3_5_check(self, report: Optional[VerificationReport] = None) -> VerificationReport:
        """Ext(M, Λ) と Ext(M, M) が消える直既約加群がすべて射影的であることを確認"""
        report = report or VerificationReport(self.algebra)
        self.run_check(report, "prop_3_5_check", self._vanishing_against_algebra)
        return report

    def _projective_iff_gp(self):
        qualifying, violations, unknown = [], [], []
        regular = regular_module(self.algebra, "left")
        for i, module in enumerate(self.modules):
            certificate = ext_vanishing_certificate(
                module, direct_sum(module, regular), self.bound,
                context=f"Ext({module.label}, {module.label} ⊕ {self.algebra.name})",
                settings=self.settings,
            )
            if certificate.is_unknown:
                unknown.append(module.label)
                continue
            if not certificate.is_certified:
                continue
            gp = self.gp(i)
            if not gp.is_decisive:
                unknown.append(module.label)
                continue
            qualifying.append(module.label)
            if is_projective(module) != gp.is_gp:
                violations.append(module.label)
        witnesses = {"qualifying": qualifying, "violations": violations, "unknown": unknown}
        if violations:
            return Verdict.FAIL, witnesses
        return (Verdict.INCONCLUSIVE if unknown else Verdict.PASS), witnesses

    def prop_3_7_check(self, report: Optional[VerificationReport] = None) -> VerificationReport:
        """Ext(M, M ⊕ Λ) が消える直既約加群について、射影的 ⇔ Gorenstein 射影的 を確認"""
        report = report or VerificationReport(self.algebra)
        self.run_check(report, "prop_3_7_check", self._projective_iff_gp)
        return report

    def _stable_equivalence(self):
        stable_mismatches, double_dual_failures, unknown = [], [], []
        indices = self.gp_indices()
        for i in indices:
            for j in indices:
                first, second = self.modules[i], self.modules[j]
                before = stable_hom_dim(first, second)
                after = stable_hom_dim(syzygy(first, 1), syzygy(second, 1))
                if before != after:
                    stable_mismatches.append({"pair": [first.label, second.label], "dims": [before, after]})
        for i in indices:
            module = self.modules[i]
            outcome = is_isomorphic(dual_star(dual_star(module)), module, self.settings).outcome
            if outcome == IsoOutcome.UNDETERMINED:
                unknown.append(module.label)
            elif outcome == IsoOutcome.NO:
                double_dual_failures.append(module.label)
        witnesses = {
            "gorenstein_projective": len(indices),
            "stable_hom_mismatches": stable_mismatches,
            "double_dual_failures": double_dual_failures,
            "unknown": unknown,
        }
        if stable_mismatches or double_dual_failures:
            return Verdict.FAIL, witnesses
        return (Verdict.INCONCLUSIVE if unknown else Verdict.PASS), witnesses

    def prop_2_2_check(self, report: Optional[VerificationReport] = None) -> VerificationReport:
        """Gorenstein 射影的な加群で Ω が安定 Hom を保ち、M** ≅ M となることを確認"""
        report = report or VerificationReport(self.algebra)
        self.run_check(report, "prop_2_2_check", self._stable_equivalence)
        return report

    def _ext_as_stable_hom(self):
        mismatches, unknown = [], []
        compared = 0
        for i, module in enumerate(self.modules):
            against = self.against_algebra(i)
            if against.is_unknown:
                unknown.append(module.label)
                continue
            if not against.is_certified:
                continue
            for target in self.modules:
                for degree in range(1, self.ext_degrees + 1):
                    left = ext_dim(module, target, degree)
                    right = stable_hom_dim(syzygy(module, degree), target)
                    compared += 1
                    if left != right:
                        mismatches.append({
                            "module": module.label, "target": target.label,
                            "degree": degree, "ext": left, "stable_hom": right,
                        })
        witnesses = {"compared": compared, "mismatches": mismatches, "unknown": unknown}
        if mismatches:
            return Verdict.FAIL, witnesses
        return (Verdict.INCONCLUSIVE if unknown else Verdict.PASS), witnesses

    def lemma_3_3_check(self, report: Optional[VerificationReport] = None) -> VerificationReport:
        """Ext(M, Λ) が消える M で dim Ext^i(M, N) = dim 安定Hom(Ω^i M, N) を確認"""
        report = report or VerificationReport(self.algebra)
        self.run_check(report, "lemma_3_3_check", self._ext_as_stable_hom)
        return report

    def certified_pairs(self) -> List[tuple]:
        """監査用：(M, N, 証明書) のうち CERTIFIED_VANISHING のもの"""
        regular = regular_module(self.algebra, "left")
        pairs = []
        for module in self.modules:
            for target in self.modules + [regular]:
                certificate = ext_vanishing_certificate(module, target, self.bound, settings=self.settings)
                if certificate.is_certified:
                    pairs.append((module, target, certificate))
        return pairs


def verify_example_2_5(
    n: int,
    t: Optional[int] = None,
    p: int = 2,
    bound: int = DEFAULT_BOUND,
    settings: Optional[IsoSearchSettings] = None,
    verbose: bool = False
) -> VerificationReport:
    """
    Λ(n) の各単純加群 S(j) が Gorenstein 射影的・非射影的で、
    1 ≤ i ≤ t で Ext^i(S(j), S(j)) = 0、最初の非零次数が n（次元 1）であることを確認

    Args:
        n: 頂点数
        t: 消滅範囲（省略時は n - 2）
        p: 標数
        bound: 証明書の探索上限
        settings: 同型探索の設定
        verbose: 同型の証人をレポートに含めるか

    Raises:
        PreconditionError: n > t + 1 ≥ 2 を満たさない場合
    """
    t = n - 2 if t is None else t
    if not (t >= 1 and n > t + 1):
        raise PreconditionError(f"n > t + 1 ≥ 2 が必要です: n={n}, t={t}")
    algebra = example_2_5(n, p)
    logger = Logger("checks").get_logger()
    effective_bound = max(bound, n + 1)
    if effective_bound != bound:
        # 軌道は n 段で閉じるので B ≥ n + 1 が必要
        logger.warning(f"探索上限 B={bound} は Λ({n}) には小さいため B={effective_bound} で検証します")
    verifier = TheoremVerifier(algebra, effective_bound, settings, ext_degrees=t, verbose=verbose)
    report = VerificationReport(algebra)

    def body():
        vertex_map, arrow_map = lambda_opposite_relabeling(n)
        structure = {
            "dim": algebra.dim,
            "nakayama": is_nakayama(algebra),
            "self_injective": is_self_injective(algebra),
            "opposite_relabeling": is_relabeling(algebra.opposite(), algebra, vertex_map, arrow_map),
        }
        failures = [key for key, value in structure.items() if value is False]
        if structure["dim"] != 2 * n:
            failures.append("dim")
        unknown = []
        simples = []
        for index, module in enumerate(verifier.modules):
            if module.total_dim != 1:
                continue
            vertex = next(v for v in algebra.vertices if module.dims[v])
            gp = verifier.gp(index)
            orthogonal = verifier.self_orthogonal(index)
            vanishing = ext_table(module, module, t)
            record = {
                "vertex": vertex,
                "gp": gp.verdict,
                "projective": is_projective(module),
                "ext_upto_t": vanishing,
                "first_nonzero_degree": orthogonal.degree,
                "first_nonzero_dim": orthogonal.dimension,
            }
            if orthogonal.degree is not None:
                record["first_nonzero_dim_by_shift"] = ext_dim_by_shift(module, module, orthogonal.degree)
            simples.append(record)
            report.add_module(verifier.module_record(index))
            if not gp.is_decisive or orthogonal.is_unknown:
                unknown.append(module.label)
                continue
            if (
                not gp.is_gp
                or record["projective"]
                or any(vanishing)
                or orthogonal.degree != n
                or orthogonal.dimension != 1
                or record.get("first_nonzero_dim_by_shift") != 1
            ):
                failures.append(module.label)
        witnesses = {
            "n": n, "t": t, "bound": effective_bound, "structure": structure, "simples": simples,
            "failures": failures, "unknown": unknown,
        }
        if failures:
            return Verdict.FAIL, witnesses
        return (Verdict.INCONCLUSIVE if unknown else Verdict.PASS), witnesses

    verifier.run_check(report, "example_2_5", body)
    logger.debug(f"Λ({n}) の検証を終了しました（t={t}）")
    return report


def certificate_audit(
    verifiers: Iterable[TheoremVerifier],
    samples: int = 50,
    seed: int = 0,
    report: Optional[VerificationReport] = None
) -> VerificationReport:
    """
    CERTIFIED_VANISHING の証明書を抽出し、周期の後の 3 次数で Ext が 0 かを再計算

    Args:
        verifiers: 対象の代数ごとの検証器
        samples: 抽出する証明書の数
        seed: 抽出の乱数シード
        report: 追記先のレポート
    """
    report = report or VerificationReport()
    pool = []
    for verifier in verifiers:
        pool.extend(verifier.certified_pairs())
    rng = np.random.default_rng(seed)
    chosen = sorted(rng.choice(len(pool), size=min(samples, len(pool)), replace=False).tolist()) if pool else []
    failures = []
    for k in chosen:
        module, target, certificate = pool[k]
        last = certificate.period[1]
        for degree in range(last + 1, last + 4):
            if ext_dim(module, target, degree) != 0:
                failures.append({"context": certificate.context, "degree": degree})
    witnesses = {"pool": len(pool), "sampled": len(chosen), "failures": failures}
    report.set_theorem("certificate_audit", Verdict.FAIL if failures else Verdict.PASS, witnesses)
    return report
