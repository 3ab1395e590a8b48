"""
ログ機能ユーティリティ
"""
import logging
from pathlib import Path
from datetime import datetime
from logging.handlers import RotatingFileHandler
from typing import Optional

ROOT_LOGGER_NAME = "gpc"


class Logger:
    """ログ管理クラス

    各コンポーネントのロガーは "gpc" ロガーの子として作られ、
    ハンドラーは親ロガーにのみ設定する。
    """

    _configured = False

    def __init__(self, name: str = ROOT_LOGGER_NAME, log_dir: Optional[str] = None, level: Optional[str] = None):
        """
        初期化

        Args:
            name: ロガー名（コンポーネント名）
            log_dir: ログディレクトリ（指定時は親ロガーを再設定する）
            level: ログレベル（指定時は親ロガーを再設定する）
        """
        if not Logger._configured or log_dir is not None or level is not None:
            Logger.configure(level or "WARNING", log_dir)

        if name == ROOT_LOGGER_NAME:
            self.logger = logging.getLogger(ROOT_LOGGER_NAME)
        else:
            self.logger = logging.getLogger(f"{ROOT_LOGGER_NAME}.{name}")

    @classmethod
    def configure(cls, level: str = "INFO", log_dir: Optional[str] = None):
        """
        親ロガーのハンドラーとレベルを設定

        Args:
            level: ログレベル
            log_dir: ログディレクトリ（None の場合はファイル出力なし）
        """
        root = logging.getLogger(ROOT_LOGGER_NAME)
        root.setLevel(getattr(logging, level.upper()))
        root.propagate = False

        # 既存のハンドラーをクリア
        for handler in list(root.handlers):
            handler.close()
        root.handlers.clear()

        # コンソールハンドラー（標準出力はレポート専用なので標準エラーへ）
        console_handler = logging.StreamHandler()
        console_handler.setLevel(getattr(logging, level.upper()))
        console_format = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )
        console_handler.setFormatter(console_format)
        root.addHandler(console_handler)

        # ファイルハンドラー（ローテーション）
        if log_dir:
            directory = Path(log_dir)
            directory.mkdir(parents=True, exist_ok=True)
            log_file = directory / f"{ROOT_LOGGER_NAME}_{datetime.now().strftime('%Y%m%d')}.log"
            file_handler = RotatingFileHandler(
                log_file,
                maxBytes=10*1024*1024,  # 10MB
                backupCount=5,
                encoding='utf-8'
            )
            file_handler.setLevel(getattr(logging, level.upper()))
            file_format = logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s',
                datefmt='%Y-%m-%d %H:%M:%S'
            )
            file_handler.setFormatter(file_format)
            root.addHandler(file_handler)

        cls._configured = True

    def get_logger(self) -> logging.Logger:
        """ロガーインスタンスを取得"""
        return self.logger
