import os
import sys


def is_subpath(path, directory):
    """path が directory 自身かその配下にあるか（名前による脱出の検出用）"""
    path, directory = os.path.abspath(path), os.path.abspath(directory)
    return os.path.commonpath([path, directory]) == directory


def get_app_dir():
    """アプリケーションのディレクトリを取得"""
    try:
        # PyInstallerの場合、実行ファイルのディレクトリを取得
        if hasattr(sys, '_MEIPASS'):
            return os.path.dirname(sys.executable)
        # 開発環境ではリポジトリのルート
        return os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    except Exception:
        return os.path.abspath(".")


def get_resource_path(relative_path):
    """Get absolute path to resource, works for dev and for PyInstaller"""
    try:
        # PyInstaller creates a temp folder and stores path in _MEIPASS
        base_path = sys._MEIPASS
    except Exception:
        base_path = get_app_dir()
    return os.path.join(base_path, relative_path)


def get_config_path():
    """config.json は _MEIPASS ではなく実行ファイルの隣に置く"""
    return os.path.join(get_app_dir(), 'config.json')


def get_fixtures_dir():
    return get_resource_path('fixtures')


def get_findings_dir(findings_dir='findings'):
    """相対パスはアプリケーションのディレクトリ基準"""
    if os.path.isabs(findings_dir):
        return findings_dir
    return os.path.join(get_app_dir(), findings_dir)
