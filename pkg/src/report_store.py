"""
Archivio locale dei report emessi dalla CLI
"""

import asyncio
import logging
import json
import aiofiles
from typing import List, Dict, Any, Optional
from datetime import datetime

SCHEMA_VERSION = 1


class ReportStore:
    def __init__(self, config):
        self.config = config
        self.logger = logging.getLogger(__name__)
        self.lock = asyncio.Lock()

        # File dell'archivio
        self.report_file = self.config.REPORT_FILE

        # Cache in memoria dei report
        self._reports_cache: List[Dict[str, Any]] = []
        self._cache_loaded = False

    async def initialize(self):
        """Inizializza l'archivio dei report"""
        try:
            self.report_file.parent.mkdir(parents=True, exist_ok=True)
            await self._load_reports()
            self.logger.info(f"Archivio report inizializzato con {len(self._reports_cache)} report")
        except Exception as e:
            self.logger.error(f"Errore nell'inizializzazione archivio report: {e}")
            raise

    async def append(self, subcommand: str, report: Dict[str, Any], exit_code: int,
                     timestamp: Optional[str] = None) -> Dict[str, Any]:
        """Archivia un report con sottocomando, esito e timestamp"""
        entry = {
            'timestamp': timestamp or datetime.now().isoformat(),
            'subcommand': subcommand,
            'exit_code': exit_code,
            'passed': exit_code == 0,
            'schema': SCHEMA_VERSION,
            'report': report,
        }
        async with self.lock:
            if not self._cache_loaded:
                await self._load_reports()
            self._reports_cache.append(entry)

            # Limita la dimensione dell'archivio
            limit = self.config.MAX_ARCHIVED_REPORTS
            if len(self._reports_cache) > limit:
                self._reports_cache = self._reports_cache[-limit:]
                self.logger.warning(f"Rimossi report più vecchi, mantenuti ultimi {limit}")

            await self._persist_reports()
        self.logger.debug(f"Report archiviato: {subcommand} (uscita {exit_code})")
        return entry

    async def _load_reports(self):
        """Carica i report dal file"""
        try:
            if self.report_file.exists():
                async with aiofiles.open(self.report_file, 'r', encoding='utf-8') as f:
                    content = await f.read()
                    self._reports_cache = json.loads(content) if content.strip() else []
            else:
                self._reports_cache = []
            self._cache_loaded = True
        except (OSError, json.JSONDecodeError) as e:
            self.logger.error(f"Errore nel caricamento archivio report: {e}")
            self._reports_cache = []
            self._cache_loaded = True

    async def _persist_reports(self):
        """Persiste i report su file"""
        try:
            async with aiofiles.open(self.report_file, 'w', encoding='utf-8') as f:
                await f.write(json.dumps(self._reports_cache, indent=2, ensure_ascii=False))
        except OSError as e:
            self.logger.error(f"Errore nel salvataggio archivio report: {e}")

    async def get_reports(self) -> List[Dict[str, Any]]:
        """Restituisce tutti i report archiviati"""
        async with self.lock:
            if not self._cache_loaded:
                await self._load_reports()
            return list(self._reports_cache)

    async def clear(self):
        """Svuota l'archivio"""
        async with self.lock:
            self._reports_cache = []
            self._cache_loaded = True
            await self._persist_reports()
            self.logger.info("Archivio report svuotato")

    async def export(self, subcommand: str = None, start_date: str = None,
                     end_date: str = None) -> List[Dict[str, Any]]:
        """Esporta i report filtrati per sottocomando e intervallo di timestamp"""
        reports = await self.get_reports()
        selected = []
        for entry in reports:
            stamp = entry.get('timestamp', '')
            if subcommand and entry.get('subcommand') != subcommand:
                continue
            if start_date and stamp < start_date:
                continue
            if end_date and stamp > end_date:
                continue
            selected.append(entry)
        return selected

    async def get_stats(self) -> Dict[str, Any]:
        """Conteggi per sottocomando ed esito"""
        reports = await self.get_reports()
        stats = {
            'total_reports': len(reports),
            'passed_count': 0,
            'failed_count': 0,
            'subcommands': {},
            'oldest_report': None,
            'newest_report': None,
        }
        if reports:
            stamps = sorted(entry.get('timestamp', '') for entry in reports)
            stats['oldest_report'] = stamps[0]
            stats['newest_report'] = stamps[-1]
        for entry in reports:
            if entry.get('passed'):
                stats['passed_count'] += 1
            else:
                stats['failed_count'] += 1
            counts = stats['subcommands'].setdefault(entry.get('subcommand', '?'), {'passed': 0, 'failed': 0})
            counts['passed' if entry.get('passed') else 'failed'] += 1
        return stats
