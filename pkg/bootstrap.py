import logging
import signal
import sys

from bnsim.cli import main
from bnsim.utils.config import load_config

logger = logging.getLogger("bnsim")

# 读取主配置文件
config = load_config("bnsim.toml")


# 注册信号处理程序，中断长时间的实验时记录日志后退出
def handle_shutdown(sig, frame):
    logger.warning(f"收到信号 {sig}，正在退出...")
    sys.exit(128 + sig if sig else 1)


if __name__ == "__main__":
    signal.signal(signal.SIGINT, handle_shutdown)
    signal.signal(signal.SIGTERM, handle_shutdown)

    try:
        sys.exit(main(sys.argv[1:], config=config))
    except KeyboardInterrupt:
        handle_shutdown(None, None)
