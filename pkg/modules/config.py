"""設定ファイル（config.json）の読み込み

ファイルが無ければ既定値で動く。暗黙の書き込みはしない。
"""

import json
import os

import psutil

from modules.utils.logwriter import log_debug, log_warning
from modules.utils.path_utils import get_config_path

DEFAULT_CONFIG = {
    'search_budget': 10_000_000,
    'workers': None,  # None = 物理コア数
    'chunk_size': 4096,
    'allow_small_characteristic': False,
    'findings_dir': 'findings',
    'log_to_file': False,
    'log_level': 'INFO',
}

BUDGET_ENV = 'ANTIFLEX_BUDGET'


def load_config(path=None):
    path = path or get_config_path()
    try:
        with open(path, 'r', encoding='utf-8') as f:
            loaded = json.load(f)
        log_debug(f"設定ファイルを読み込みました: {path}")
    except FileNotFoundError:
        loaded = {}
    except json.JSONDecodeError as e:
        log_warning(f"設定ファイルを解析できません（既定値を使用）: {path}: {e}")
        loaded = {}

    config = dict(DEFAULT_CONFIG)

    # 古い設定項目からのマイグレーション
    if 'budget' in loaded:
        old_value = loaded.pop('budget')
        loaded.setdefault('search_budget', old_value)

    for key, value in loaded.items():
        if key.startswith('_'):
            continue  # 説明用の項目
        if key not in DEFAULT_CONFIG:
            log_warning(f"未知の設定項目 '{key}' を無視します")
            continue
        config[key] = value

    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            config['search_budget'] = int(env)
        except ValueError:
            log_warning(f"{BUDGET_ENV}={env!r} は整数ではありません。無視します")
    return config


def resolve_budget(config, override=None):
    """--budget > 環境変数 > 設定ファイル の順"""
    if override is not None:
        return int(override)
    return int(config.get('search_budget', DEFAULT_CONFIG['search_budget']))


def resolve_workers(config, override=None):
    workers = override if override is not None else config.get('workers')
    if workers is None:
        workers = psutil.cpu_count(logical=False) or 1
    return max(1, int(workers))
