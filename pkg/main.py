#!/usr/bin/env python3
"""
wreathpbw: certificati esatti per deformazioni PBW di prodotti intrecciati
e per l'isomorfismo di Morita con le algebre di riflessioni simplettiche
"""

import asyncio
import logging
import signal
import sys

from src.cli import EXIT_INVALID, config_from_args, error_report, render, run_async
from src.config import Config
from src.logger_setup import setup_logging

class WreathPbwApp:
    def __init__(self, argv=None):
        self.argv = argv
        self.config = None
        self.task = None

    async def start(self) -> int:
        """Configura logging, esegue il sottocomando e stampa il report su stdout"""
        try:
            self.config = Config()
        except ValueError as e:
            print(render(error_report(e)))
            return EXIT_INVALID
        setup_logging(self.config)
        run_config = config_from_args(self.argv)
        logging.info(f"Avvio '{run_config.subcommand}' (seme {run_config.seed or self.config.DEFAULT_SEED})")

        # Gestione segnali per interruzione pulita
        signal.signal(signal.SIGINT, self._signal_handler)
        signal.signal(signal.SIGTERM, self._signal_handler)

        self.task = asyncio.ensure_future(run_async(run_config, self.config))
        try:
            code, report = await self.task
        except asyncio.CancelledError:
            logging.warning("Esecuzione interrotta")
            return 130
        print(render(report, run_config.output))
        return code

    def _signal_handler(self, signum, frame):
        """Gestisce i segnali di arresto"""
        logging.info(f"Ricevuto segnale {signum}, interruzione...")
        if self.task and not self.task.done():
            self.task.cancel()

async def main():
    """Funzione principale"""
    app = WreathPbwApp()
    return await app.start()

if __name__ == "__main__":
    sys.exit(asyncio.run(main()))
