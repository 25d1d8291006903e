"""antiflex のログ

標準出力は JSON レポート専用。コンソールへのログはすべて標準エラーに書き、
ファイルへのログ（logs/YYYY-MM-DD.log）は log_to_file を有効にしたときだけ作る。
"""

import logging
import os
import sys
import tempfile
from datetime import datetime

from modules.utils.path_utils import get_app_dir

LOGGER_NAME = 'antiflex'
LOG_FORMAT = '%(asctime)s [%(levelname)s] %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'
LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


def _candidate_log_dirs():
    yield os.path.join(get_app_dir(), 'logs')
    yield os.path.join(os.path.expanduser('~'), 'Antiflex', 'logs')
    yield os.path.join(tempfile.gettempdir(), 'Antiflex', 'logs')


def get_log_directory():
    """書き込めるログディレクトリ（アプリ → ホーム → 一時ディレクトリ の順）"""
    for log_dir in _candidate_log_dirs():
        try:
            os.makedirs(log_dir, exist_ok=True)
            if os.access(log_dir, os.W_OK):
                return log_dir
        except OSError:
            continue
    raise OSError("no writable log directory")


def _console_level(level):
    name = str(level or 'INFO').upper()
    if name not in LEVELS:
        print(f"不明なログレベル {level!r}。INFO を使います", file=sys.stderr)
        name = 'INFO'
    return getattr(logging, name)


class AntiflexLogger:
    def __init__(self, log_dir=None, enable_console=True, enable_file=False, level='INFO'):
        self.log_dir = log_dir
        self.log_path = None
        self.logger = logging.getLogger(LOGGER_NAME)
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

        # 作り直すたびにハンドラーを入れ替える
        for handler in list(self.logger.handlers):
            handler.close()
            self.logger.removeHandler(handler)

        formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)
        if enable_file:
            self._add_file_handler(formatter)
        if enable_console:
            console = logging.StreamHandler(sys.stderr)
            console.setLevel(_console_level(level))
            console.setFormatter(formatter)
            self.logger.addHandler(console)

    def _add_file_handler(self, formatter):
        try:
            self.log_dir = self.log_dir or get_log_directory()
            os.makedirs(self.log_dir, exist_ok=True)
            self.log_path = os.path.join(self.log_dir, f'{datetime.now():%Y-%m-%d}.log')
            handler = logging.FileHandler(self.log_path, encoding='utf-8')
        except OSError as e:
            print(f"ログファイル作成エラー: {e}", file=sys.stderr)
            self.log_path = None
            return
        handler.setLevel(logging.DEBUG)
        handler.setFormatter(formatter)
        self.logger.addHandler(handler)
        self.logger.debug(f"ログファイル: {self.log_path}")

    def log(self, level, message):
        self.logger.log(level, str(message))


_global_logger = None


def get_logger(log_dir=None, enable_console=True, enable_file=False, level='INFO'):
    """プロセス全体で共有するロガー（未作成なら作る）"""
    global _global_logger
    if _global_logger is None:
        _global_logger = AntiflexLogger(log_dir, enable_console, enable_file, level)
    return _global_logger


def setup_logging(log_dir=None, enable_console=True, enable_file=False, level='INFO'):
    """設定ファイルを読んだ後に作り直す"""
    global _global_logger
    _global_logger = AntiflexLogger(log_dir, enable_console, enable_file, level)
    return _global_logger


def log_debug(message):
    get_logger().log(logging.DEBUG, message)


def log_info(message):
    get_logger().log(logging.INFO, message)


def log_warning(message):
    get_logger().log(logging.WARNING, message)


def log_error(message):
    get_logger().log(logging.ERROR, message)
