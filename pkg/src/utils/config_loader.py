"""
設定ファイル読み込みユーティリティ
"""
import os
import yaml
from pathlib import Path
from typing import Optional
from dotenv import load_dotenv

PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent
DEFAULT_CONFIG_PATH = PROJECT_ROOT / "config" / "config.yaml"

# 環境変数名 -> (設定キー, 型)
ENV_OVERRIDES = {
    'GPC_CHAR': ('algebra.characteristic', int),
    'GPC_BOUND': ('homology.bound', int),
    'GPC_LOG_LEVEL': ('logging.level', str),
    'GPC_LOG_DIR': ('logging.log_dir', str),
}


class ConfigLoader:
    """設定ファイルを読み込むクラス"""

    def __init__(self, config_path: Optional[str] = None):
        """
        初期化

        Args:
            config_path: 設定ファイルのパス（省略時は config/config.yaml）
        """
        self.config_path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
        self.config = {}
        # 環境変数・CLI で明示的に上書きされたキー
        self.overrides = set()
        self._load_config()
        self._load_env()

    def _load_config(self):
        """YAML設定ファイルを読み込む"""
        if not self.config_path.exists():
            raise FileNotFoundError(f"設定ファイルが見つかりません: {self.config_path}")

        with open(self.config_path, 'r', encoding='utf-8') as f:
            self.config = yaml.safe_load(f) or {}

    def _load_env(self):
        """環境変数（.env を含む）による上書きを読み込む"""
        load_dotenv()

        for env_name, (key_path, cast) in ENV_OVERRIDES.items():
            raw = os.getenv(env_name)
            if raw:
                self.set(key_path, cast(raw))

    def get(self, key_path: str, default=None):
        """
        設定値を取得

        Args:
            key_path: ドット区切りのキーパス（例: 'homology.bound'）
            default: デフォルト値

        Returns:
            設定値
        """
        keys = key_path.split('.')
        value = self.config

        for key in keys:
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default

        return value

    def set(self, key_path: str, value):
        """
        設定値を上書き（CLI引数・環境変数用）

        Args:
            key_path: ドット区切りのキーパス
            value: 設定値
        """
        keys = key_path.split('.')
        node = self.config
        for key in keys[:-1]:
            node = node.setdefault(key, {})
        node[keys[-1]] = value
        self.overrides.add(key_path)

    def is_overridden(self, key_path: str) -> bool:
        """キーが環境変数または CLI 引数で明示的に指定されたか"""
        return key_path in self.overrides
