import json

import pytest

from src.cli import (EXIT_FAILED, EXIT_INVALID, EXIT_OK, RunConfig, config_from_args, exit_code_for, render, run)
from src.morita import MoritaError
from src.pbw import PbwError


def test_config_from_args_pbw_check():
    cfg = config_from_args(['pbw', 'check', '--quiver', 'affineA:1', '--n', '2', '--lambda', '1,2',
                            '--nu', '1/3', '--seed', '7'])
    assert cfg.subcommand == 'pbw check'
    assert (cfg.quiver, cfg.n, cfg.lam, cfg.nu, cfg.seed) == ('affineA:1', 2, '1,2', '1/3', 7)


def test_config_from_args_flags():
    cfg = config_from_args(['--output', 'table', 'mckay', '--group', 'cyclic:3', '--corner'])
    assert cfg.subcommand == 'mckay'
    assert cfg.output == 'table'
    assert cfg.extra == {'corner': True}
    cfg = config_from_args(['reports', 'export', '--subcommand', 'dims', '--since', '2024-01-01'])
    assert (cfg.subcommand, cfg.filter_subcommand, cfg.since) == ('reports export', 'dims', '2024-01-01')
    assert config_from_args(['reports', 'clear']).subcommand == 'reports clear'


def test_config_from_args_rejects_missing_quiver():
    with pytest.raises(SystemExit):
        config_from_args(['dims'])


def test_pbw_solve(app_config):
    code, report = run(RunConfig('pbw solve', quiver='affineA:2', n=2), app_config)
    assert code == EXIT_OK
    assert report['solution_dim'] == 4
    assert report['certified']
    assert report['schema'] == 1
    assert 'basis' not in report


def test_pbw_solve_with_basis_is_serializable(app_config):
    code, report = run(RunConfig('pbw solve', quiver='affineA:1', n=2, include_basis=True), app_config)
    assert code == EXIT_OK
    assert len(report['basis']) == 3
    assert json.loads(render(report))['solution_dim'] == 3


def test_pbw_solve_requires_two_slots(app_config):
    code, report = run(RunConfig('pbw solve', quiver='affineA:2', n=1), app_config)
    assert code == EXIT_INVALID
    assert report['error'] == PbwError.__name__


def test_pbw_check_uses_default_seed(app_config):
    code, report = run(RunConfig('pbw check', quiver='affineA:1', n=2, lam='1,-2', nu='3', samples=2), app_config)
    assert code == EXIT_OK
    assert report['seed'] == 11
    assert report['necessity']['passed']
    assert report['lambda'] == ['1', '-2']


def test_unknown_quiver_is_invalid(app_config):
    code, report = run(RunConfig('dims', quiver='affineF:4'), app_config)
    assert code == EXIT_INVALID
    assert report['error'] == 'FixtureError'


def test_invalid_n(app_config):
    code, report = run(RunConfig('dims', quiver='affineA:1', n=0), app_config)
    assert code == EXIT_INVALID
    assert report['error'] == 'ValueError'


def test_dims_with_oracle(app_config):
    code, report = run(RunConfig('dims', quiver='affineA:1', degree=3), app_config)
    assert code == EXIT_OK
    assert report['dims'] == [2, 4, 6, 8]
    assert report['oracle_match']


def test_dims_with_koszul(app_config):
    code, report = run(RunConfig('dims', quiver='affineA:1', degree=3, koszul=True), app_config)
    assert code == EXIT_OK
    assert report['koszul']['dual_dims'] == [2, 4, 2, 0]


def test_mckay(app_config):
    code, report = run(RunConfig('mckay', group='cyclic:4'), app_config)
    assert code == EXIT_OK
    assert report['affine_type'] == 'affineA3'
    assert report['delta'] == [1, 1, 1, 1]
    assert report['delta_balanced']


def test_mckay_binary_dihedral(app_config):
    code, report = run(RunConfig('mckay', group='bindihedral:2'), app_config)
    assert code == EXIT_OK
    assert report['affine_type'] == 'affineD4'
    assert sorted(report['delta']) == [1, 1, 1, 1, 2]


def test_mckay_with_corner(app_config):
    code, report = run(RunConfig('mckay', group='cyclic:3', extra={'corner': True}), app_config)
    assert code == EXIT_OK
    assert report['corner']['b_dim'] == 3
    assert report['idempotent_resolution']
    assert report['theta_phi'] == {'equivariance': [], 'pairing': [], 'mesh': []}


def test_quiver_show_jordan(app_config):
    code, report = run(RunConfig('quiver show', quiver='jordan'), app_config)
    assert code == EXIT_OK
    assert report['has_loops']
    assert len(report['letters']) == 2
    assert report['affine_type'] == 'affineA0'


def test_sra_nf(app_config):
    code, report = run(RunConfig('sra nf', group='cyclic:2', t='1', word='y1*x1'), app_config)
    assert code == EXIT_OK
    assert report['terms'] == 2
    assert {term['word'] for term in report['normal_form']} == {'1', 'x1*y1'}


def test_sra_nf_rejects_wrong_cprime_count(app_config):
    code, report = run(RunConfig('sra nf', group='cyclic:3', t='1', cprime='1', word='x1'), app_config)
    assert code == EXIT_INVALID
    assert report['error'] == 'FixtureError'


def test_sra_reflections(app_config):
    code, report = run(RunConfig('sra reflections', group='cyclic:3', n=2), app_config)
    assert code == EXIT_OK
    assert report['count'] == 7
    assert report['omega_tables']['pairs_checked'] == 7 * 16


def test_sra_pbw(app_config):
    code, report = run(RunConfig('sra pbw', group='cyclic:2', n=1, degree=2, t='1', k='0', cprime='3/2'), app_config)
    assert code == EXIT_OK
    assert report['computed'] == report['expected'] == 12


def test_config_from_args_expr_alias():
    cfg = config_from_args(['sra', 'nf', '--group', 'cyclic:2', '--expr', 'y1*x1'])
    assert (cfg.subcommand, cfg.word) == ('sra nf', 'y1*x1')


def test_morita_verify(app_config):
    code, report = run(RunConfig('morita verify', group='cyclic:2', n=1, degree=2, random_params=True), app_config)
    assert code == EXIT_OK
    assert report['pass']
    assert report['seed'] == 11


def test_morita_cherednik(app_config):
    code, report = run(RunConfig('morita cherednik', n=2, t='1', k='2'), app_config)
    assert code == EXIT_OK
    assert report['bijective']
    assert report['nu'] == '1'


def test_reports_are_archived(app_config):
    app_config.ARCHIVE_REPORTS = True
    run(RunConfig('mckay', group='cyclic:3'), app_config)
    run(RunConfig('mckay', group='cyclic:2'), app_config)
    code, stats = run(RunConfig('reports stats'), app_config)
    assert code == EXIT_OK
    assert stats['total_reports'] == 2
    assert stats['subcommands']['mckay'] == {'passed': 2, 'failed': 0}
    code, exported = run(RunConfig('reports export', filter_subcommand='dims'), app_config)
    assert exported['count'] == 0
    code, cleared = run(RunConfig('reports clear'), app_config)
    assert (code, cleared['cleared']) == (EXIT_OK, 2)
    _, stats = run(RunConfig('reports stats'), app_config)
    assert stats['total_reports'] == 0


def test_exit_codes():
    assert exit_code_for(MoritaError("angolo")) == EXIT_FAILED
    assert exit_code_for(PbwError("n")) == EXIT_INVALID
    assert exit_code_for(ValueError("x")) == EXIT_INVALID


def test_render_table():
    text = render({'quiver': 'affineA1', 'dims': [2, 4]}, 'table')
    assert text.splitlines() == ['quiver  "affineA1"', 'dims    [2, 4]']
