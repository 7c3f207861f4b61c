"""Fixture condivise: quiver, gruppi, generatore casuale con seme fisso, configurazione temporanea"""

import random

import pytest

from src.config import Config
from src.groups import cyclic_group
from src.quiver import affine_quiver, double


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def affine_a1():
    return double(affine_quiver('A', 1))


@pytest.fixture
def affine_a2():
    return double(affine_quiver('A', 2))


@pytest.fixture
def jordan():
    return double(affine_quiver('A', 0))


@pytest.fixture(scope='session')
def z2():
    return cyclic_group(2)


@pytest.fixture(scope='session')
def z3():
    return cyclic_group(3)


@pytest.fixture
def app_config(tmp_path, monkeypatch):
    """Config costruita da un .env temporaneo, con log e report sotto tmp_path"""
    env_file = tmp_path / '.env'
    env_file.write_text(
        "ENVIRONMENT=test\n"
        "LOG_LEVEL=INFO\n"
        f"LOG_FILE={tmp_path / 'logs' / 'wreathpbw.log'}\n"
        f"REPORT_DIR={tmp_path / 'reports'}\n"
        "WREATHPBW_THREADS=2\n"
        "DEFAULT_SEED=11\n"
        "ARCHIVE_REPORTS=false\n"
        "MAX_ARCHIVED_REPORTS=3\n",
        encoding='utf-8',
    )
    # variabili azzerate: i valori arrivano dal .env e spariscono a fine test
    for name in ('ENVIRONMENT', 'LOG_LEVEL', 'LOG_FILE', 'REPORT_DIR', 'WREATHPBW_THREADS',
                 'DEFAULT_SEED', 'ARCHIVE_REPORTS', 'MAX_ARCHIVED_REPORTS'):
        monkeypatch.setenv(name, '')
        monkeypatch.delenv(name)
    return Config(env_file=env_file)
