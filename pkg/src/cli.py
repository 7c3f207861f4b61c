"""
Interfaccia a riga di comando: sottocomandi, semi riproducibili, report JSON
"""

import argparse
import asyncio
import json
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .config import Config
from .fixtures import parse_group, parse_lambda, parse_quiver, params_from_strings
from .groups import GroupError, MatrixUnits, mckay_matrix, mckay_quiver, verify_idempotent_resolution
from .morita import (MoritaError, cherednik_dictionary_check, corner_identify, solve_theta_phi,
                     verify_morita_async)
from .pbw import IntersectionMismatchError, check_params, koszul_check, necessity_check, solve_admissible_async
from .quiver import affine_quiver, double, doubled_isomorphic, null_root, preprojective_hilbert_dims, QuiverError
from .report_store import SCHEMA_VERSION, ReportStore
from .scalars import Scalar, WreathPbwError
from .sra import SraAlgebra, omega_tables_check, parse_word, random_params, reflection_summary
from .wreathalg import graded_dimension, relations_A

logger = logging.getLogger(__name__)

SUBCOMMANDS = ('quiver show', 'dims', 'pbw solve', 'pbw check', 'mckay', 'sra nf', 'sra reflections',
               'sra pbw', 'morita verify', 'morita cherednik', 'reports stats', 'reports export',
               'reports clear')

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2


@dataclass
class RunConfig:
    """Parametri di una singola invocazione; i razionali restano stringhe fino al parsing esatto"""
    subcommand: str
    quiver: Optional[str] = None
    group: Optional[str] = None
    n: int = 1
    degree: int = 2
    t: str = '0'
    k: str = '0'
    cprime: Optional[str] = None
    lam: Optional[str] = None
    nu: str = '0'
    word: Optional[str] = None
    seed: Optional[int] = None
    samples: int = 10
    random_params: bool = False
    include_basis: bool = False
    koszul: bool = False
    output: str = 'json'
    since: Optional[str] = None
    until: Optional[str] = None
    filter_subcommand: Optional[str] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    def require(self, name: str):
        if getattr(self, name) in (None, ''):
            raise ValueError(f"Il sottocomando '{self.subcommand}' richiede --{name.replace('_', '-')}")
        return getattr(self, name)


def identify_affine(quiver) -> Optional[str]:
    """Tipo affine ADE del quiver, confrontando i doppi"""
    rank = quiver.num_vertices - 1
    for family in 'ADE':
        try:
            candidate = affine_quiver(family, rank)
        except QuiverError:
            continue
        if doubled_isomorphic(quiver, candidate):
            return f"affine{family}{rank}"
    return None


# Sottocomandi

def _quiver_show(cfg: RunConfig, app: Config) -> Tuple[int, Dict]:
    quiver = parse_quiver(cfg.require('quiver'))
    qbar = double(quiver)
    report = {
        'quiver': quiver.name or cfg.quiver,
        'spec': quiver.to_spec(),
        'connected': quiver.is_connected(),
        'has_loops': quiver.has_loops(),
        'letters': [{'letter': qbar.letter_name(x), 'tail': qbar.tail(x), 'head': qbar.head(x)}
                    for x in qbar.letters],
        'adjacency': qbar.adjacency_matrix(),
        'affine_type': identify_affine(quiver),
    }
    try:
        report['null_root'] = null_root(quiver)
    except QuiverError:
        report['null_root'] = None
    return EXIT_OK, report


def _dims(cfg: RunConfig, app: Config) -> Tuple[int, Dict]:
    quiver = parse_quiver(cfg.require('quiver'))
    qbar = double(quiver)
    dims = graded_dimension(qbar, cfg.n, relations_A(qbar, cfg.n), cfg.degree)
    report: Dict[str, Any] = {'quiver': quiver.name or cfg.quiver, 'n': cfg.n, 'degree': cfg.degree, 'dims': dims}
    code = EXIT_OK
    if cfg.n == 1 and quiver.is_connected() and identify_affine(quiver):
        oracle = [sum(sum(row) for row in block) for block in preprojective_hilbert_dims(quiver, cfg.degree)]
        report['oracle_dims'] = oracle
        report['oracle_match'] = oracle == dims
        code = EXIT_OK if oracle == dims else EXIT_FAILED
    if cfg.koszul:
        report['koszul'] = koszul_check(qbar, cfg.n, min(cfg.degree, 3) or 1)
        if not report['koszul']['passed']:
            code = EXIT_FAILED
    return code, report


async def _pbw_solve(cfg: RunConfig, app: Config, executor) -> Tuple[int, Dict]:
    quiver = parse_quiver(cfg.require('quiver'))
    result = await solve_admissible_async(double(quiver), cfg.n, executor)
    return (EXIT_OK if result.certified else EXIT_FAILED), result.to_dict(include_basis=cfg.include_basis)


async def _pbw_check(cfg: RunConfig, app: Config, executor) -> Tuple[int, Dict]:
    quiver = parse_quiver(cfg.require('quiver'))
    qbar = double(quiver)
    lam = parse_lambda(cfg.lam, quiver.num_vertices)
    nu = Scalar.parse(cfg.nu)
    loop = asyncio.get_running_loop()
    rng = random.Random(cfg.seed)
    params, necessity = await asyncio.gather(
        loop.run_in_executor(executor, check_params, qbar, cfg.n, lam, nu),
        loop.run_in_executor(executor, necessity_check, qbar, cfg.n, rng, cfg.samples),
    )
    report = dict(params)
    report['necessity'] = necessity
    report['seed'] = cfg.seed
    passed = params['certified'] and necessity['passed']
    return (EXIT_OK if passed else EXIT_FAILED), report


def _mckay(cfg: RunConfig, app: Config) -> Tuple[int, Dict]:
    group = parse_group(cfg.require('group'))
    quiver, delta, _ = mckay_quiver(group)
    matrix = mckay_matrix(group)
    balanced = all(2 * delta[j] == sum(matrix[i][j] * delta[i] for i in range(len(delta)))
                   for j in range(len(delta)))
    report = {
        'group': group.name,
        'order': group.order,
        'irreps': [rep.label for rep in group.irreps],
        'delta': delta,
        'mckay_matrix': matrix,
        'edges': [list(e) for e in quiver.edges],
        'affine_type': identify_affine(quiver),
        'delta_balanced': balanced,
    }
    if cfg.extra.get('corner'):
        report['corner'] = corner_identify(group, cfg.n)
        report['idempotent_resolution'] = verify_idempotent_resolution(MatrixUnits(group), cfg.n)
        report['theta_phi'] = solve_theta_phi(group).verify()
    return (EXIT_OK if balanced and report['affine_type'] else EXIT_FAILED), report


def _sra_params(cfg: RunConfig, group, rng: random.Random):
    if cfg.random_params:
        return random_params(group, rng)
    return params_from_strings(group, cfg.t, cfg.k, cfg.cprime)


def _sra_nf(cfg: RunConfig, app: Config) -> Tuple[int, Dict]:
    group = parse_group(cfg.require('group'))
    params = _sra_params(cfg, group, random.Random(cfg.seed))
    sra = SraAlgebra(group, cfg.n, params)
    word = parse_word(cfg.require('word'), cfg.n)
    nf = sra.normal_form(sra.word(word))
    report = {'group': group.name, 'n': cfg.n, 'params': params.to_dict(), 'word': cfg.word,
              'normal_form': sra.to_json_terms(nf), 'terms': len(nf.terms)}
    return EXIT_OK, report


def _sra_reflections(cfg: RunConfig, app: Config) -> Tuple[int, Dict]:
    group = parse_group(cfg.require('group'))
    report = reflection_summary(group, cfg.n)
    report['omega_tables'] = omega_tables_check(group, cfg.n)
    report['group'] = group.name
    report['n'] = cfg.n
    return EXIT_OK, report


def _sra_pbw(cfg: RunConfig, app: Config) -> Tuple[int, Dict]:
    group = parse_group(cfg.require('group'))
    params = _sra_params(cfg, group, random.Random(cfg.seed))
    sra = SraAlgebra(group, cfg.n, params)
    dims = sra.filtered_dimension(cfg.degree)
    report = {'group': group.name, 'n': cfg.n, 'degree': cfg.degree, 'params': params.to_dict(),
              'seed': cfg.seed, **dims, 'pbw': dims['computed'] == dims['expected']}
    return (EXIT_OK if report['pbw'] else EXIT_FAILED), report


async def _morita_verify(cfg: RunConfig, app: Config, executor) -> Tuple[int, Dict]:
    group = parse_group(cfg.require('group'))
    rng = random.Random(cfg.seed)
    params = _sra_params(cfg, group, rng)
    result = await verify_morita_async(group, cfg.n, params, cfg.degree, executor, rng, min(cfg.samples, 5))
    report = result.to_dict()
    report['seed'] = cfg.seed
    return (EXIT_OK if result.passed else EXIT_FAILED), report


def _morita_cherednik(cfg: RunConfig, app: Config) -> Tuple[int, Dict]:
    report = cherednik_dictionary_check(cfg.n, Scalar.parse(cfg.t), Scalar.parse(cfg.k))
    return (EXIT_OK if report['bijective'] else EXIT_FAILED), report


async def _reports(cfg: RunConfig, app: Config) -> Tuple[int, Dict]:
    store = ReportStore(app)
    await store.initialize()
    if cfg.subcommand == 'reports stats':
        return EXIT_OK, await store.get_stats()
    if cfg.subcommand == 'reports clear':
        removed = len(await store.get_reports())
        await store.clear()
        return EXIT_OK, {'cleared': removed}
    entries = await store.export(cfg.filter_subcommand, cfg.since, cfg.until)
    return EXIT_OK, {'count': len(entries), 'reports': entries}


_SYNC = {
    'quiver show': _quiver_show,
    'dims': _dims,
    'mckay': _mckay,
    'sra nf': _sra_nf,
    'sra reflections': _sra_reflections,
    'sra pbw': _sra_pbw,
    'morita cherednik': _morita_cherednik,
}
_ASYNC = {
    'pbw solve': _pbw_solve,
    'pbw check': _pbw_check,
    'morita verify': _morita_verify,
}


def error_report(error: Exception) -> Dict:
    return {'error': type(error).__name__, 'message': str(error), 'schema': SCHEMA_VERSION}


def exit_code_for(error: Exception) -> int:
    """1 per un certificato fallito, 2 per errori di input o ipotesi violate"""
    if isinstance(error, (MoritaError, IntersectionMismatchError, GroupError)):
        return EXIT_FAILED
    return EXIT_INVALID


async def run_async(cfg: RunConfig, app: Optional[Config] = None) -> Tuple[int, Dict]:
    """Esegue il sottocomando; restituisce (codice di uscita, report)"""
    app = app or Config()
    if cfg.seed is None:
        cfg.seed = app.DEFAULT_SEED
    try:
        if cfg.subcommand not in SUBCOMMANDS:
            raise ValueError(f"Sottocomando sconosciuto: {cfg.subcommand!r}")
        if cfg.n < 1 or cfg.degree < 0:
            raise ValueError(f"Valori non validi: n={cfg.n}, degree={cfg.degree}")
        if cfg.subcommand.startswith('reports'):
            return await _reports(cfg, app)
        loop = asyncio.get_running_loop()
        with ThreadPoolExecutor(max_workers=app.WORKERS) as executor:
            if cfg.subcommand in _ASYNC:
                code, report = await _ASYNC[cfg.subcommand](cfg, app, executor)
            else:
                code, report = await loop.run_in_executor(executor, _SYNC[cfg.subcommand], cfg, app)
    except (WreathPbwError, ValueError) as e:
        code = exit_code_for(e)
        logger.error(f"Errore in '{cfg.subcommand}': {e}")
        return code, error_report(e)
    report['schema'] = SCHEMA_VERSION
    if app.ARCHIVE_REPORTS:
        store = ReportStore(app)
        await store.append(cfg.subcommand, report, code)
    logger.info(f"'{cfg.subcommand}' completato con codice {code}")
    return code, report


def run(cfg: RunConfig, app: Optional[Config] = None) -> Tuple[int, Dict]:
    return asyncio.run(run_async(cfg, app))


# Parsing degli argomenti

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='wreathpbw',
                                     description="Deformazioni PBW di prodotti intrecciati e algebre di riflessioni simplettiche")
    parser.add_argument('--output', choices=['json', 'table'], default='json')
    commands = parser.add_subparsers(dest='command', required=True)

    def common(p, quiver=False, group=False, n=True, degree=False, params=False):
        if quiver:
            p.add_argument('--quiver', required=True, help="affineA:k, affineD:k, affineE:k, jordan, JSON o file")
        if group:
            p.add_argument('--group', required=True, help="cyclic:l oppure bindihedral:l")
        if n:
            p.add_argument('--n', type=int, default=1)
        if degree:
            p.add_argument('--degree', type=int, default=2)
        if params:
            p.add_argument('--t', default='0')
            p.add_argument('--k', default='0')
            p.add_argument('--cprime', default=None, help="valori di c′ per classe non banale, separati da virgole")
            p.add_argument('--random-params', action='store_true')
        p.add_argument('--seed', type=int, default=None)

    quiver = commands.add_parser('quiver').add_subparsers(dest='action', required=True)
    common(quiver.add_parser('show'), quiver=True, n=False)

    dims = commands.add_parser('dims')
    common(dims, quiver=True, degree=True)
    dims.add_argument('--koszul', action='store_true')

    pbw = commands.add_parser('pbw').add_subparsers(dest='action', required=True)
    solve = pbw.add_parser('solve')
    common(solve, quiver=True)
    solve.add_argument('--include-basis', action='store_true')
    check = pbw.add_parser('check')
    common(check, quiver=True)
    check.add_argument('--lambda', dest='lam', default=None)
    check.add_argument('--nu', default='0')
    check.add_argument('--samples', type=int, default=10)

    mckay = commands.add_parser('mckay')
    common(mckay, group=True)
    mckay.add_argument('--corner', action='store_true')

    sra = commands.add_parser('sra').add_subparsers(dest='action', required=True)
    nf = sra.add_parser('nf')
    common(nf, group=True, params=True)
    nf.add_argument('--word', '--expr', dest='word', required=True)
    filtered = sra.add_parser('pbw')
    common(filtered, group=True, degree=True, params=True)
    common(sra.add_parser('reflections'), group=True)

    morita = commands.add_parser('morita').add_subparsers(dest='action', required=True)
    verify = morita.add_parser('verify')
    common(verify, group=True, degree=True, params=True)
    verify.add_argument('--samples', type=int, default=5)
    cherednik = morita.add_parser('cherednik')
    common(cherednik, params=True)

    reports = commands.add_parser('reports').add_subparsers(dest='action', required=True)
    reports.add_parser('stats')
    reports.add_parser('clear')
    export = reports.add_parser('export')
    export.add_argument('--subcommand', dest='filter_subcommand', default=None)
    export.add_argument('--since', default=None)
    export.add_argument('--until', default=None)
    return parser


def config_from_args(argv: Optional[List[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    values = vars(args)
    subcommand = args.command if not values.get('action') else f"{args.command} {args.action}"
    known = {name for name in RunConfig.__dataclass_fields__ if name not in ('subcommand', 'extra')}
    cfg = RunConfig(subcommand, **{k: v for k, v in values.items() if k in known and v is not None})
    if values.get('corner'):
        cfg.extra['corner'] = True
    return cfg


def render(report: Dict, output: str = 'json') -> str:
    if output == 'table':
        width = max((len(str(k)) for k in report), default=0)
        return '\n'.join(f"{str(k).ljust(width)}  {json.dumps(v, ensure_ascii=False)}" for k, v in report.items())
    return json.dumps(report, indent=2, ensure_ascii=False)
