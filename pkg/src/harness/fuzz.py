"""
中山代数のランダム生成による反例探索

シードから決定的に巡回または線形の箙と単項関係式を選び、gpc_check を実行する。
違反が見つかった場合は代数ファイルと加群ファイルを書き出す（再現用）。
"""
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from src.algebra.bound_algebra import BoundQuiverAlgebra
from src.algebra.text_format import format_algebra
from src.harness.checks import TheoremVerifier
from src.harness.generators import nakayama_algebra
from src.harness.report import Verdict, VerificationReport, combine_verdicts
from src.homology.certificate import DEFAULT_BOUND
from src.representation.hom import IsoSearchSettings
from src.representation.text_format import format_module
from src.utils.exceptions import GenerationExhausted, NotAdmissible, PreconditionError
from src.utils.logger import Logger


class NakayamaFuzzer:
    """中山代数ファザー"""

    def __init__(
        self,
        seed: int = 1,
        max_vertices: int = 6,
        max_relation_length: int = 4,
        max_retries: int = 50,
        bound: int = DEFAULT_BOUND,
        p: int = 2,
        settings: Optional[IsoSearchSettings] = None,
        output_dir: Optional[str] = None
    ):
        """
        初期化

        Args:
            seed: 乱数シード
            max_vertices: 頂点数の上限
            max_relation_length: 単項関係式の長さの上限（2 以上）
            max_retries: 退化した生成の再試行上限
            bound: 証明書の探索上限
            p: 標数
            settings: 同型探索の設定
            output_dir: 反例の出力先（None なら書き出さない）
        """
        if max_vertices < 1 or max_relation_length < 2:
            raise PreconditionError(
                f"max_vertices ≥ 1 かつ max_relation_length ≥ 2 が必要です: "
                f"{max_vertices}, {max_relation_length}"
            )
        self.seed = seed
        self.max_vertices = max_vertices
        self.max_relation_length = max_relation_length
        self.max_retries = max_retries
        self.bound = bound
        self.p = p
        self.settings = settings
        self.output_dir = Path(output_dir) if output_dir else None
        self.rng = np.random.default_rng(seed)
        self.logger = Logger("fuzz").get_logger()

    def _random_relations(self, cyclic: bool, n: int) -> List[Tuple[int, int]]:
        """(最初の矢印の番号, 長さ) の列"""
        arrows = n if cyclic else n - 1
        if arrows == 0:
            return []
        count = int(self.rng.integers(1 if cyclic else 0, arrows + 1))
        relations = []
        for _ in range(count):
            start = int(self.rng.integers(1, arrows + 1))
            longest = self.max_relation_length if cyclic else min(self.max_relation_length, arrows - start + 1)
            if longest < 2:
                continue
            relations.append((start, int(self.rng.integers(2, longest + 1))))
        return sorted(set(relations))

    def generate(self, name: str) -> Tuple[BoundQuiverAlgebra, dict]:
        """
        中山代数を一つ生成

        Returns:
            (代数, 生成パラメータ)

        Raises:
            GenerationExhausted: 再試行上限に達した場合
        """
        for attempt in range(self.max_retries):
            n = int(self.rng.integers(1, self.max_vertices + 1))
            cyclic = bool(self.rng.integers(0, 2))
            relations = self._random_relations(cyclic, n)
            # 巡回箙は関係式がないと有限次元にならない
            if cyclic and not relations:
                continue
            try:
                algebra = nakayama_algebra(cyclic, n, relations, self.p, name=name)
            except NotAdmissible as e:
                self.logger.debug(f"{name}: 生成をやり直します（{e}）")
                continue
            parameters = {
                "name": name,
                "cyclic": cyclic,
                "vertices": n,
                "relations": [list(r) for r in relations],
                "dim": algebra.dim,
            }
            return algebra, parameters
        raise GenerationExhausted(f"{name}: {self.max_retries} 回の再試行で代数を生成できませんでした")

    def _write_violation(self, algebra: BoundQuiverAlgebra, verifier: TheoremVerifier, labels: List[str]) -> dict:
        """反例の代数ファイルと加群ファイルを書き出す"""
        record = {"algebra": algebra.name, "modules": labels}
        if self.output_dir is None:
            return record
        self.output_dir.mkdir(parents=True, exist_ok=True)
        algebra_file = self.output_dir / f"{algebra.name}.alg"
        algebra_file.write_text(format_algebra(algebra), encoding="utf-8")
        record["algebra_file"] = str(algebra_file)
        record["module_files"] = []
        for module in verifier.modules:
            if module.label in labels:
                stem = module.label.replace("(", "_").replace(")", "").replace("/", "_").replace("^", "")
                module_file = self.output_dir / f"{algebra.name}_{stem}.mod"
                module_file.write_text(format_module(module, algebra_file.name), encoding="utf-8")
                record["module_files"].append(str(module_file))
        self.logger.error(f"{algebra.name}: 違反を書き出しました {record}")
        return record

    def run(self, count: int) -> VerificationReport:
        """
        count 個の代数で gpc_check を実行

        Args:
            count: 生成する代数の数

        Returns:
            VerificationReport（theorems["fuzz"] に集計）
        """
        if count < 1:
            raise PreconditionError(f"count は 1 以上です: {count}")
        report = VerificationReport()
        generated, violations, inconclusive, verdicts = [], [], [], []
        for k in range(count):
            name = f"fuzz{self.seed}_{k}"
            with report.phase("generate"):
                algebra, parameters = self.generate(name)
            verifier = TheoremVerifier(algebra, self.bound, self.settings)
            single = VerificationReport(algebra)
            with report.phase("gpc_check"):
                verdict = verifier.gpc_check(single).verdict
            parameters["verdict"] = verdict.value
            generated.append(parameters)
            verdicts.append(verdict)
            witnesses = single.theorems["gpc_check"]["witnesses"]
            if verdict == Verdict.FAIL:
                violations.append(self._write_violation(algebra, verifier, witnesses["violations"]))
            elif verdict == Verdict.INCONCLUSIVE:
                inconclusive.append(name)

        self.logger.info(f"ファザー終了: {count} 個中 違反 {len(violations)}, 判定不能 {len(inconclusive)}")
        report.set_theorem("fuzz", combine_verdicts(verdicts), {
            "seed": self.seed,
            "count": count,
            "algebras": generated,
            "violations": violations,
            "inconclusive": inconclusive,
        })
        return report
