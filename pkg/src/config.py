"""
Modulo di configurazione per wreathpbw
"""

import os
from pathlib import Path
from dotenv import load_dotenv

from .scalars import WreathPbwError

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


class ConfigurationError(WreathPbwError, ValueError):
    """Variabile di configurazione non valida"""


class Config:
    def __init__(self, env_file=None):
        # Carica file .env
        if env_file is None:
            env_file = Path(__file__).parent.parent / '.env'

        load_dotenv(env_file)

        # Configurazione generale
        self.ENVIRONMENT = os.getenv('ENVIRONMENT', 'production')  # test or production

        # Configurazione logging
        self.LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO').upper()
        self.LOG_FILE = os.getenv('LOG_FILE', 'logs/wreathpbw.log')
        self.LOG_MAX_SIZE = self._int('LOG_MAX_SIZE', '10485760')  # 10MB
        self.LOG_BACKUP_COUNT = self._int('LOG_BACKUP_COUNT', '5')

        # Calcolo
        self.WORKERS = self._int('WREATHPBW_THREADS', '1')
        self.DEFAULT_SEED = self._int('DEFAULT_SEED', '20240601')

        # Archivio dei report
        self.REPORT_DIR = Path(os.getenv('REPORT_DIR', 'reports'))
        self.ARCHIVE_REPORTS = os.getenv('ARCHIVE_REPORTS', 'false').lower() == 'true'
        self.MAX_ARCHIVED_REPORTS = self._int('MAX_ARCHIVED_REPORTS', '1000')

        # Validazione configurazione
        self._validate_config()

    @staticmethod
    def _int(name, default):
        value = os.getenv(name, default)
        try:
            return int(value)
        except ValueError:
            raise ConfigurationError(f"Variabile di configurazione non intera: {name}={value}")

    def _validate_config(self):
        """Valida la configurazione"""
        if self.ENVIRONMENT not in ['test', 'production']:
            raise ConfigurationError("ENVIRONMENT deve essere 'test' o 'production'")

        if self.LOG_LEVEL not in LOG_LEVELS:
            raise ConfigurationError(f"Variabile di configurazione non valida: LOG_LEVEL={self.LOG_LEVEL}")

        for var in ['WORKERS', 'LOG_MAX_SIZE', 'MAX_ARCHIVED_REPORTS']:
            if getattr(self, var) < 1:
                label = 'WREATHPBW_THREADS' if var == 'WORKERS' else var
                raise ConfigurationError(f"Variabile di configurazione non positiva: {label}")

        # Crea directory necessarie
        Path(self.LOG_FILE).parent.mkdir(parents=True, exist_ok=True)
        self.REPORT_DIR.mkdir(parents=True, exist_ok=True)

    @property
    def REPORT_FILE(self) -> Path:
        return self.REPORT_DIR / 'reports.json'

    def is_test_mode(self):
        """Verifica se siamo in modalità test"""
        return self.ENVIRONMENT == 'test'

    def to_dict(self):
        """Converte la configurazione in dizionario per debug"""
        return {k: (str(v) if isinstance(v, Path) else v) for k, v in self.__dict__.items() if not k.startswith('_')}
