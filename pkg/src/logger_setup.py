"""
Configurazione del sistema di logging
"""

import logging
import logging.handlers
import sys
from pathlib import Path

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

# librerie che a INFO producono solo rumore
QUIET_LOGGERS = ('sympy', 'asyncio')

# moduli con le eliminazioni più lunghe: DEBUG solo se LOG_LEVEL=DEBUG
SOLVER_LOGGERS = ('src.pbw', 'src.morita', 'src.sra')


def _file_handler(config, level: int) -> logging.Handler:
    handler = logging.handlers.RotatingFileHandler(
        config.LOG_FILE,
        maxBytes=config.LOG_MAX_SIZE,
        backupCount=config.LOG_BACKUP_COUNT,
        encoding='utf-8',
    )
    handler.setLevel(level)
    return handler


def _console_handler(config, level: int) -> logging.Handler:
    # stdout è riservato al report
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(logging.INFO if config.is_test_mode() else level)
    return handler


def setup_logging(config):
    """Configura il root logger con file a rotazione e console su stderr"""
    Path(config.LOG_FILE).parent.mkdir(parents=True, exist_ok=True)
    level_name = config.LOG_LEVEL.upper()
    level = getattr(logging, level_name)

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)
    for handler in (_file_handler(config, level), _console_handler(config, level)):
        handler.setFormatter(formatter)
        root_logger.addHandler(handler)

    for name in QUIET_LOGGERS:
        logging.getLogger(name).setLevel(logging.WARNING)
    solver_level = logging.DEBUG if level_name == 'DEBUG' else logging.INFO
    for name in SOLVER_LOGGERS:
        logging.getLogger(name).setLevel(solver_level)

    logging.info(f"Logging configurato - Livello: {config.LOG_LEVEL} - File: {config.LOG_FILE}")
