"""
検証レポート
"""
import json
import time
from contextlib import contextmanager
from enum import Enum
from typing import Dict, List, Optional

import pandas as pd

from src.algebra.bound_algebra import BoundQuiverAlgebra


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


def combine_verdicts(verdicts) -> Verdict:
    """一つでも FAIL なら FAIL、次に INCONCLUSIVE、すべて PASS なら PASS"""
    verdicts = list(verdicts)
    if Verdict.FAIL in verdicts:
        return Verdict.FAIL
    if Verdict.INCONCLUSIVE in verdicts:
        return Verdict.INCONCLUSIVE
    return Verdict.PASS


def describe_algebra(algebra: BoundQuiverAlgebra) -> dict:
    """レポート用の代数の説明"""
    return {
        "name": algebra.name,
        "characteristic": int(algebra.characteristic),
        "vertices": list(algebra.vertices),
        "arrows": [[a.label, a.source, a.target] for a in algebra.quiver.arrows],
        "relations": [str(r) for r in algebra.relations],
        "dim": int(algebra.dim),
        "nilpotency": int(algebra.nilpotency),
    }


class VerificationReport:
    """
    検証レポート

    JSON のトップレベルキーは algebra, modules, theorems, timing。
    """

    def __init__(self, algebra: Optional[BoundQuiverAlgebra] = None):
        """
        初期化

        Args:
            algebra: 対象の代数（ファザーのように複数の場合は None）
        """
        self.algebra: dict = describe_algebra(algebra) if algebra is not None else {}
        self.modules: List[dict] = []
        self.theorems: Dict[str, dict] = {}
        self.timing: Dict[str, float] = {}

    def add_module(self, record: dict):
        self.modules.append(record)

    def set_theorem(self, name: str, verdict: Verdict, witnesses: Optional[dict] = None):
        """
        定理の判定を記録

        Args:
            name: 検査名
            verdict: 判定
            witnesses: 件数や反例などの根拠
        """
        self.theorems[name] = {"verdict": verdict.value, "witnesses": witnesses or {}}

    @contextmanager
    def phase(self, name: str):
        """処理段階の経過時間を計測"""
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timing[name] = self.timing.get(name, 0.0) + time.perf_counter() - start

    @property
    def verdict(self) -> Verdict:
        return combine_verdicts(Verdict(t["verdict"]) for t in self.theorems.values())

    @property
    def exit_code(self) -> int:
        """0: 全て合格、1: 不合格あり、2: 判定不能あり"""
        return {Verdict.PASS: 0, Verdict.FAIL: 1, Verdict.INCONCLUSIVE: 2}[self.verdict]

    def to_dict(self, include_timing: bool = False) -> dict:
        return {
            "algebra": self.algebra,
            "modules": self.modules,
            "theorems": self.theorems,
            "timing": {k: round(v, 6) for k, v in sorted(self.timing.items())} if include_timing else {},
        }

    def to_json(self, include_timing: bool = False) -> str:
        """決定的な JSON（キーは整列、timing は指定時のみ）"""
        return json.dumps(self.to_dict(include_timing), ensure_ascii=False, sort_keys=True, indent=2)

    @staticmethod
    def _certificate_cell(certificate: dict) -> Optional[str]:
        return certificate.get("summary", certificate.get("kind"))

    def module_table(self) -> pd.DataFrame:
        """加群ごとの記録を表にする"""
        rows = []
        for record in self.modules:
            rows.append({
                "module": record.get("name"),
                "dims": " ".join(str(d) for d in record.get("dims", [])),
                "projective": record.get("projective"),
                "gp": record.get("gp"),
                "self_orthogonal": self._certificate_cell(record.get("self_orthogonal", {})),
            })
        return pd.DataFrame(rows, columns=["module", "dims", "projective", "gp", "self_orthogonal"])

    def theorem_table(self) -> pd.DataFrame:
        rows = [
            {"check": name, "verdict": body["verdict"]}
            for name, body in self.theorems.items()
        ]
        return pd.DataFrame(rows, columns=["check", "verdict"])

    def to_text(self, include_timing: bool = False) -> str:
        """人が読むための表形式"""
        lines = []
        if self.algebra:
            lines.append(
                f"代数: {self.algebra['name']}  dim={self.algebra['dim']}  "
                f"p={self.algebra['characteristic']}"
            )
        if self.modules:
            lines.append(self.module_table().to_string(index=False))
        if self.theorems:
            lines.append(self.theorem_table().to_string(index=False))
            for name, body in self.theorems.items():
                for key, value in body["witnesses"].items():
                    lines.append(f"  {name}.{key}: {value}")
        if include_timing and self.timing:
            for phase, seconds in sorted(self.timing.items()):
                lines.append(f"  時間 {phase}: {seconds:.3f}s")
        return "\n".join(lines)
