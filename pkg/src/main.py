"""
Gorenstein 射影加群の計算・定理検証 メインファイル

終了コード: 0 = 全て合格（決着）、1 = 検査不合格（反例候補）、
2 = 判定不能（不明・同型未決着）、3 = 入力エラー
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

# プロジェクトルートをパスに追加
project_root = Path(__file__).parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from src.algebra.text_format import format_algebra
from src.harness.checks import TheoremVerifier, certificate_audit, verify_example_2_5
from src.harness.fuzz import NakayamaFuzzer
from src.harness.inputs import resolve_algebra, resolve_module
from src.harness.report import Verdict, VerificationReport
from src.homology.certificate import is_gorenstein_projective, is_self_orthogonal
from src.homology.duality import dual_star, is_self_injective, transpose
from src.homology.ext import ext_table
from src.homology.resolution import get_resolution, global_dimension, is_projective
from src.representation.hom import IsoSearchSettings
from src.representation.nakayama import is_nakayama
from src.representation.text_format import format_module
from src.utils.config_loader import ConfigLoader
from src.utils.exceptions import InputError, UndeterminedIsomorphism
from src.utils.logger import Logger

EXIT_INPUT_ERROR = 3
EXIT_INCONCLUSIVE = 2

SWEEPS = {
    "gpc-check": "gpc_check",
    "symmetry": "symmetry_check",
    "prop34": "prop_3_4_check",
    "prop35": "prop_3_5_check",
    "prop37": "prop_3_7_check",
    "prop22": "prop_2_2_check",
    "lemma33": "lemma_3_3_check",
}


class ArgumentParser(argparse.ArgumentParser):
    """引数エラーを終了コード 3 の InputError にする"""

    def error(self, message):
        raise InputError(f"引数エラー: {message}")


def build_parser() -> ArgumentParser:
    """コマンドライン引数の定義"""
    common = ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--char", type=int, help="標数 p（既定 2）")
    common.add_argument("--bound", type=int, help="証明書の探索上限 B（既定 64）")
    common.add_argument("--json", action="store_true", help="JSON レポートを出力")
    common.add_argument("--verbose", action="store_true", help="同型の証人をレポートに含める")
    common.add_argument("--timing", action="store_true", help="処理時間をレポートに含める")
    common.add_argument("--config", help="設定ファイルのパス")

    parser = ArgumentParser(prog="gpc", description="Gorenstein 射影加群の計算と定理検証", parents=[common])
    commands = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str):
        return commands.add_parser(name, help=help_text, parents=[common])

    add("build", "代数を構成して基本情報を表示").add_argument("algebra")

    resolve = add("resolve", "極小射影分解")
    resolve.add_argument("algebra")
    resolve.add_argument("module")
    resolve.add_argument("--length", type=int, default=4)

    ext = add("ext", "Ext 次元表")
    ext.add_argument("algebra")
    ext.add_argument("module")
    ext.add_argument("target")
    ext.add_argument("--upto", type=int, default=6)

    for name, help_text in (
        ("gp", "Gorenstein 射影性の判定"),
        ("selforth", "自己直交性の判定"),
        ("transpose", "Auslander 転置"),
        ("star", "双対 Hom(-, Λ)"),
    ):
        sub = add(name, help_text)
        sub.add_argument("algebra")
        sub.add_argument("module")

    example = add("example25", "巡回中山代数 Λ(n) の検証")
    example.add_argument("--n", type=int, required=True)
    example.add_argument("--t", type=int, default=None)

    for name in SWEEPS:
        add(name, "中山代数の直既約加群の全数検査").add_argument("algebra")

    audit = add("audit", "証明書の再計算による監査")
    audit.add_argument("algebras", nargs="+")
    audit.add_argument("--samples", type=int, default=None)
    audit.add_argument("--seed", type=int, default=0)

    fuzz = add("fuzz", "ランダムな中山代数での反例探索")
    fuzz.add_argument("--seed", type=int, default=None)
    fuzz.add_argument("--count", type=int, default=None)
    fuzz.add_argument("--max-vertices", type=int, default=None)
    fuzz.add_argument("--out", default=None, help="反例の出力先")
    return parser


class GPCApplication:
    """CLI アプリケーションクラス"""

    def __init__(self, args: argparse.Namespace):
        """
        初期化

        Args:
            args: 解析済みの引数
        """
        self.args = args
        self.config = ConfigLoader(getattr(args, "config", None))
        if hasattr(args, "char"):
            self.config.set("algebra.characteristic", args.char)
        if hasattr(args, "bound"):
            self.config.set("homology.bound", args.bound)

        Logger.configure(
            self.config.get("logging.level", "INFO"),
            self.config.get("logging.log_dir"),
        )
        self.logger = Logger("main").get_logger()

        self.p = self.config.get("algebra.characteristic", 2)
        self.bound = self.config.get("homology.bound", 64)
        self.verbose = getattr(args, "verbose", False)
        self.settings = IsoSearchSettings(
            exhaustive_limit=self.config.get("homology.iso_exhaustive_limit", 2 ** 16),
            random_trials=self.config.get("homology.iso_random_trials", 256),
            seed=self.config.get("homology.iso_seed", 0),
        )

    def algebra(self, spec: Optional[str] = None):
        return resolve_algebra(
            spec or self.args.algebra,
            self.p,
            length_cap=self.config.get("algebra.length_cap", 64),
            path_cap=self.config.get("algebra.path_cap", 20000),
            explicit=self.config.is_overridden("algebra.characteristic"),
        )

    def verifier(self, algebra) -> TheoremVerifier:
        return TheoremVerifier(
            algebra, self.bound, self.settings,
            ext_degrees=self.config.get("harness.ext_degrees", 6),
            syzygy_depth=self.config.get("harness.syzygy_depth", 4),
            verbose=self.verbose,
        )

    def run(self) -> VerificationReport:
        """サブコマンドを実行してレポートを返す"""
        command = self.args.command
        self.logger.info(f"コマンド {command} を実行します")
        if command in SWEEPS:
            return self.sweep(SWEEPS[command])
        handler = getattr(self, f"cmd_{command.replace('-', '_')}")
        return handler()

    def cmd_build(self) -> VerificationReport:
        algebra = self.algebra()
        report = VerificationReport(algebra)
        nakayama = is_nakayama(algebra)
        report.algebra.update({
            "basis": [str(path) for path in algebra.basis],
            "nakayama": nakayama,
            "self_injective": is_self_injective(algebra),
            "global_dimension": global_dimension(algebra, self.bound),
        })
        return report

    def cmd_resolve(self) -> VerificationReport:
        algebra = self.algebra()
        module = resolve_module(self.args.module, algebra)
        resolution = get_resolution(module)
        report = VerificationReport(algebra)
        for i in range(self.args.length + 1):
            term = resolution.term(i)
            report.add_module({
                "name": f"P_{i}",
                "generators": list(term.generators),
                "dims": [int(d) for d in term.dimension_vector],
                "syzygy_dims": [int(d) for d in resolution.syzygy(i + 1).dimension_vector],
                "exact": resolution.is_exact_at(i),
                "minimal": resolution.is_minimal_at(i),
            })
        return report

    def cmd_ext(self) -> VerificationReport:
        algebra = self.algebra()
        module = resolve_module(self.args.module, algebra)
        target = resolve_module(self.args.target, algebra)
        report = VerificationReport(algebra)
        report.add_module({
            "name": f"Ext({module.label}, {target.label})",
            "dims": [int(d) for d in module.dimension_vector],
            "ext": ext_table(module, target, self.args.upto),
        })
        return report

    def _single_module(self, name: str, certificate_dict: dict, decisive: bool, module) -> VerificationReport:
        report = VerificationReport(module.algebra)
        record = {
            "name": module.label,
            "dims": [int(d) for d in module.dimension_vector],
            "projective": is_projective(module),
        }
        record.update(certificate_dict)
        report.add_module(record)
        report.set_theorem(name, Verdict.PASS if decisive else Verdict.INCONCLUSIVE, certificate_dict)
        return report

    def cmd_gp(self) -> VerificationReport:
        algebra = self.algebra()
        module = resolve_module(self.args.module, algebra)
        verdict = is_gorenstein_projective(module, self.bound, self.settings)
        return self._single_module("gp", {"gp": verdict.verdict, **verdict.to_dict(self.verbose)}, verdict.is_decisive, module)

    def cmd_selforth(self) -> VerificationReport:
        algebra = self.algebra()
        module = resolve_module(self.args.module, algebra)
        certificate = is_self_orthogonal(module, self.bound, self.settings)
        return self._single_module(
            "selforth", {"self_orthogonal": certificate.to_dict(self.verbose)}, not certificate.is_unknown, module
        )

    def _dual_output(self, result, module) -> VerificationReport:
        report = VerificationReport(module.algebra)
        report.add_module({
            "name": result.label,
            "dims": [int(d) for d in result.dimension_vector],
            "algebra_text": format_algebra(result.algebra),
            "module_text": format_module(result),
        })
        return report

    def cmd_transpose(self) -> VerificationReport:
        algebra = self.algebra()
        module = resolve_module(self.args.module, algebra)
        return self._dual_output(transpose(module), module)

    def cmd_star(self) -> VerificationReport:
        algebra = self.algebra()
        module = resolve_module(self.args.module, algebra)
        return self._dual_output(dual_star(module), module)

    def cmd_example25(self) -> VerificationReport:
        return verify_example_2_5(
            self.args.n, self.args.t, self.p, self.bound, self.settings, verbose=self.verbose
        )

    def sweep(self, check: str) -> VerificationReport:
        verifier = self.verifier(self.algebra())
        report = VerificationReport(verifier.algebra)
        getattr(verifier, check)(report)
        if check == "gpc_check":
            with report.phase("records"):
                verifier.add_module_records(report)
        return report

    def cmd_audit(self) -> VerificationReport:
        verifiers = [self.verifier(self.algebra(spec)) for spec in self.args.algebras]
        samples = self.args.samples or self.config.get("harness.audit_samples", 50)
        report = VerificationReport(verifiers[0].algebra)
        with report.phase("audit"):
            certificate_audit(verifiers, samples, self.args.seed, report)
        return report

    def cmd_fuzz(self) -> VerificationReport:
        fuzz_config = self.config.get("fuzz", {})
        args = self.args
        fuzzer = NakayamaFuzzer(
            seed=args.seed if args.seed is not None else fuzz_config.get("seed", 1),
            max_vertices=args.max_vertices or fuzz_config.get("max_vertices", 6),
            max_relation_length=fuzz_config.get("max_relation_length", 4),
            max_retries=fuzz_config.get("max_retries", 50),
            bound=self.bound,
            p=self.p,
            settings=self.settings,
            output_dir=args.out or fuzz_config.get("output_dir"),
        )
        return fuzzer.run(args.count or fuzz_config.get("count", 100))

    def emit(self, report: VerificationReport):
        """レポートを標準出力へ"""
        timing = getattr(self.args, "timing", False)
        if getattr(self.args, "json", False):
            print(report.to_json(include_timing=timing))
            return
        print(report.to_text(include_timing=timing))
        for record in report.modules:
            if "module_text" in record:
                print(record["algebra_text"])
                print(record["module_text"])


def main(argv: Optional[List[str]] = None) -> int:
    """メイン関数"""
    logger = Logger("main").get_logger()
    try:
        args = build_parser().parse_args(argv)
        app = GPCApplication(args)
        report = app.run()
        app.emit(report)
        return report.exit_code

    except (InputError, FileNotFoundError, ValueError) as e:
        logger.error(f"入力エラー: {e}")
        return EXIT_INPUT_ERROR
    except UndeterminedIsomorphism as e:
        logger.warning(f"判定不能: {e}")
        return EXIT_INCONCLUSIVE
    except KeyboardInterrupt:
        print("\nプログラムを中断しました", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
