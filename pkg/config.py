import os

from dotenv import load_dotenv

from errors import ConfigError

# .env があれば読み込む（既存の環境変数は上書きしない）
load_dotenv()

# ============================================
# 設定のデフォルト値
# ============================================
DEFAULT_ORACLE_CAP = 14
DEFAULT_ORACLE_BUDGET = 2_000_000
DEFAULT_FIXTURE_DIR = 'fixtures'
DEFAULT_WORKERS = 1


def _positive_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f'{name} must be an integer, got {raw!r}') from None
    if value < 1:
        raise ConfigError(f'{name} must be positive, got {value}')
    return value


def oracle_cap() -> int:
    """厳密解オラクルが受け付ける最大頂点数 (BURNLAB_ORACLE_CAP)"""
    return _positive_int('BURNLAB_ORACLE_CAP', DEFAULT_ORACLE_CAP)


def oracle_budget() -> int:
    """厳密探索の展開ノード上限 (BURNLAB_ORACLE_BUDGET)"""
    return _positive_int('BURNLAB_ORACLE_BUDGET', DEFAULT_ORACLE_BUDGET)


def fixture_dir() -> str:
    return os.environ.get('BURNLAB_FIXTURE_DIR', DEFAULT_FIXTURE_DIR)


def default_workers() -> int:
    return _positive_int('BURNLAB_WORKERS', DEFAULT_WORKERS)
