import sys

from modules.cli import EXIT_USAGE
from modules.cli import main as cli_main
from modules.utils.logwriter import get_logger, log_debug, log_error, log_info


# ログシステムを初期化（設定ファイル読込後に cli 側で再設定される）
logger = get_logger(enable_console=True, enable_file=False)


def main(argv=None):
    try:
        return cli_main(argv)
    except KeyboardInterrupt:
        log_info("キーボード割り込みで終了")
        return 130
    except Exception as e:
        log_error(f"メインエラー: {e}")
        log_debug(f"{type(e).__name__}: {e!r}")
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
