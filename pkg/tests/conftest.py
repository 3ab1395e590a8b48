"""
共通フィクスチャ
"""
import pytest

from src.harness.generators import (
    a2_algebra,
    example_2_5,
    kronecker_algebra,
    loop_algebra,
    semisimple_algebra,
)


@pytest.fixture(scope="session")
def lambda4():
    return example_2_5(4)


@pytest.fixture(scope="session")
def lambda5():
    return example_2_5(5)


@pytest.fixture(scope="session")
def a2():
    return a2_algebra()


@pytest.fixture(scope="session")
def semisimple3():
    return semisimple_algebra(3)


@pytest.fixture(scope="session")
def kronecker():
    return kronecker_algebra()


@pytest.fixture(scope="session")
def loop():
    return loop_algebra()


@pytest.fixture(autouse=True)
def log_dir(tmp_path, monkeypatch):
    """CLI のログファイルをテスト用ディレクトリへ"""
    monkeypatch.setenv("GPC_LOG_DIR", str(tmp_path / "logs"))
    return tmp_path / "logs"
