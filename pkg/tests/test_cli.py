"""
测试命令行
"""
import csv
import io
import json
import math

import pytest
from click.testing import CliRunner

from src.business.lemma_kernels import eval_h
from src.cli import cli
from src.models.certificate import Verdict
from src.models.threshold import ClassicalBounds
from src.utils.errors import InconsistencyError, IndeterminateScanError


@pytest.fixture
def runner():
    return CliRunner()


def parse_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    return [{k: float(v) for k, v in row.items()} for row in rows]


class TestEvalCommand:
    """测试 eval 命令"""

    def test_seiffert(self, runner):
        result = runner.invoke(cli, ['eval', 'T', '3', '1'])
        assert result.exit_code == 0
        assert float(result.stdout) == pytest.approx(2.156810, abs=1e-6)

    def test_contraharmonic(self, runner):
        result = runner.invoke(cli, ['eval', 'C', '3', '1'])
        assert result.stdout.strip() == '2.5'

    def test_q_family(self, runner):
        result = runner.invoke(cli, ['eval', 'Q', '3', '1', '--t', '0.75', '--p', '1'])
        assert result.exit_code == 0
        assert result.stdout.strip() == '2.125'

    def test_all_means(self, runner):
        result = runner.invoke(cli, ['eval', 'ALL', '3', '1'])
        lines = dict(line.split('=') for line in result.stdout.strip().splitlines())
        assert list(lines) == ['A', 'T', 'S', 'C']
        assert float(lines['A']) == 2.0
        assert float(lines['S']) == pytest.approx(math.sqrt(5.0))

    def test_unknown_mean(self, runner):
        assert runner.invoke(cli, ['eval', 'H', '3', '1']).exit_code == 64

    def test_q_requires_t_and_p(self, runner):
        assert runner.invoke(cli, ['eval', 'Q', '3', '1', '--t', '0.75']).exit_code == 64

    def test_domain_error(self, runner):
        result = runner.invoke(cli, ['eval', 'T', '0', '1'])
        assert result.exit_code == 2

    def test_unknown_command(self, runner):
        assert runner.invoke(cli, ['plot']).exit_code == 64

    def test_help_uses_configured_description(self, runner):
        result = runner.invoke(cli, ['--help'])
        assert result.exit_code == 0
        assert '精确阈值计算和数值验证' in result.stdout

    def test_version(self, runner):
        result = runner.invoke(cli, ['--version'])
        assert result.exit_code == 0
        assert '1.0.0' in result.stdout


class TestTableCommand:
    """测试 table 命令"""

    def test_corner_rows(self, runner):
        result = runner.invoke(cli, ['table', '--p-min', '0.5', '--p-max', '1', '--steps', '2'])
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == 'p,t_lower,t_upper,gap'
        rows = parse_csv(result.stdout)
        assert rows[0]['p'] == 0.5
        assert rows[0]['t_lower'] == pytest.approx(0.8940618, abs=1e-7)
        assert rows[0]['t_upper'] == pytest.approx(0.9082483, abs=1e-7)
        assert rows[1]['p'] == 1.0
        assert rows[1]['t_lower'] == pytest.approx(0.7613616, abs=1e-7)
        assert rows[1]['t_upper'] == pytest.approx(0.7886751, abs=1e-7)

    def test_default_table(self, runner):
        rows = parse_csv(runner.invoke(cli, ['table']).stdout)
        assert len(rows) == 20
        assert all(row['gap'] > 0 for row in rows)
        assert rows[-1]['p'] == 10.0

    def test_csv_and_json_agree(self, runner):
        args = ['table', '--p-min', '0.5', '--p-max', '7', '--steps', '9']
        csv_rows = parse_csv(runner.invoke(cli, args).stdout)
        json_rows = json.loads(runner.invoke(cli, args + ['--json']).stdout)
        assert csv_rows == json_rows

    def test_empirical_columns(self, runner):
        result = runner.invoke(cli, ['table', '--p-min', '1', '--p-max', '2', '--steps', '2',
                                     '--empirical', '--grid-size', '1024'])
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == 'p,t_lower,t_upper,empirical_t_lower,empirical_t_upper,gap'
        for row in parse_csv(result.stdout):
            assert abs(row['empirical_t_lower'] - row['t_lower']) < 1e-5
            assert abs(row['empirical_t_upper'] - row['t_upper']) < 1e-5

    @pytest.mark.parametrize("args", [
        ['--p-min', '0.4'],
        ['--p-min', '2', '--p-max', '1'],
        ['--steps', '1'],
    ])
    def test_range_errors(self, runner, args):
        assert runner.invoke(cli, ['table'] + args).exit_code == 2


class TestCertifyCommand:
    """测试 certify 命令"""

    def test_full_suite(self, runner):
        result = runner.invoke(cli, ['certify', '--p', '1', '--samples', '500'])
        assert result.exit_code == 0
        assert result.stdout.strip().endswith('PASS')

    def test_full_suite_json(self, runner):
        result = runner.invoke(cli, ['certify', '--p', '1', '--samples', '200', '--seed', '4', '--json'])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data['passed'] is True
        assert data['lower_error'] < 1e-6
        assert data['upper_error'] < 1e-6
        assert data['cross_check']['samples'] == 200
        assert data['cross_check']['seed'] == 4

    def test_seed_from_environment(self, runner, monkeypatch):
        monkeypatch.setenv('SEIFFERT_SEED', '42')
        result = runner.invoke(cli, ['certify', '--p', '2', '--samples', '50', '--json'])
        assert json.loads(result.stdout)['cross_check']['seed'] == 42

    def test_single_weight_in_band(self, runner):
        result = runner.invoke(cli, ['certify', '--p', '1', '--t', '0.77'])
        assert result.exit_code == 0
        assert 'verdict: MIXED' in result.stdout
        assert 'negative witness' in result.stdout
        assert 'positive witness' in result.stdout

    def test_single_weight_json(self, runner):
        result = runner.invoke(cli, ['certify', '--p', '1', '--t', '0.77', '--json'])
        data = json.loads(result.stdout)
        assert data['verdict'] == 'MIXED'
        assert data['negative_witness']['value'] < 0 < data['positive_witness']['value']
        assert data['passed'] is True

    def test_domain_error(self, runner):
        assert runner.invoke(cli, ['certify', '--p', '0.4']).exit_code == 2

    def test_classical_bounds(self, runner):
        result = runner.invoke(cli, ['certify', '--classical', '--samples', '1000', '--seed', '9'])
        assert result.exit_code == 0
        assert result.stdout.strip().endswith('PASS')

    def test_classical_bounds_json(self, runner):
        args = ['certify', '--classical', '--samples', '500', '--seed', '3', '--json']
        data = json.loads(runner.invoke(cli, args).stdout)
        assert data['passed'] is True
        assert data['counterexamples'] == {'S': [], 'C': []}
        assert data['bounds']['mu'] == pytest.approx((3 + math.sqrt(3)) / 6, rel=1e-15)
        assert data['samples'] == 500

    def test_classical_counterexample_exits_one(self, runner, monkeypatch):
        monkeypatch.setattr('src.cli.commands.classical_bounds',
                            lambda: ClassicalBounds(alpha=0.95, beta=0.96, lam=0.9, mu=0.91))
        monkeypatch.setattr('src.services.verifier.classical_bounds',
                            lambda: ClassicalBounds(alpha=0.95, beta=0.96, lam=0.9, mu=0.91))
        result = runner.invoke(cli, ['certify', '--classical', '--samples', '300'])
        assert result.exit_code == 1
        assert 'FAIL' in result.stdout

    @pytest.mark.parametrize("args", [
        ['--classical', '--p', '1'],
        ['--t', '0.77'],
    ])
    def test_classical_usage_errors(self, runner, args):
        assert runner.invoke(cli, ['certify'] + args).exit_code == 64

    def test_contradiction(self, runner, monkeypatch):
        monkeypatch.setattr('src.cli.commands.predicted_verdict', lambda t, p: Verdict.ALL_POSITIVE)
        result = runner.invoke(cli, ['certify', '--p', '1', '--t', '0.77'])
        assert result.exit_code == 1

    def test_inconsistency_is_logged(self, runner, monkeypatch):
        class BrokenVerifier:
            def certify_theorem(self, p, cfg):
                raise InconsistencyError("两条路径不一致")

        monkeypatch.setattr('src.cli.commands.get_verifier', lambda: BrokenVerifier())
        result = runner.invoke(cli, ['certify', '--p', '1'])
        assert result.exit_code == 1
        assert '数值结果自相矛盾' in result.stderr
        assert '两条路径不一致' in result.stderr
        assert result.stdout == ''

    def test_indeterminate(self, runner, monkeypatch):
        class StuckVerifier:
            def scan_sign(self, params, cfg):
                raise IndeterminateScanError("无法分类", u=params.u, p=params.p, grid={'size': 16})

        monkeypatch.setattr('src.cli.commands.get_verifier', lambda: StuckVerifier())
        result = runner.invoke(cli, ['certify', '--p', '1', '--t', '0.77'])
        assert result.exit_code == 3


class TestTraceCommand:
    """测试 trace 命令"""

    def test_mixed_trace(self, runner):
        result = runner.invoke(cli, ['trace', '--p', '1', '--u', '0.3', '--n', '100'])
        assert result.exit_code == 0
        rows = parse_csv(result.stdout)
        assert len(rows) == 100
        assert rows[0]['f'] < 0
        assert rows[-1]['f'] == pytest.approx(eval_h(1.0, 0.3), abs=1e-7)
        assert all(a['g'] > b['g'] for a, b in zip(rows, rows[1:]))

    def test_u_zero(self, runner):
        args = ['trace', '--p', '2', '--u', '0', '--x-min', '0.05', '--n', '50']
        rows = parse_csv(runner.invoke(cli, args).stdout)
        assert all(row['f'] < 0 for row in rows)
        assert all(row['f'] == pytest.approx(math.log(math.atan(row['x']) / row['x']), rel=1e-9)
                   for row in rows)

    def test_weight_and_u_agree(self, runner):
        by_t = runner.invoke(cli, ['trace', '--p', '1', '--t', '0.75', '--n', '20']).stdout
        by_u = runner.invoke(cli, ['trace', '--p', '1', '--u', '0.25', '--n', '20']).stdout
        assert by_t == by_u

    def test_json(self, runner):
        result = runner.invoke(cli, ['trace', '--p', '1', '--u', '0.3', '--n', '5', '--json'])
        rows = json.loads(result.stdout)
        assert [set(row) for row in rows] == [{'x', 'f', 'g'}] * 5

    @pytest.mark.parametrize("args", [
        ['--p', '1'],
        ['--p', '1', '--u', '0.3', '--t', '0.75'],
    ])
    def test_u_or_t_required(self, runner, args):
        assert runner.invoke(cli, ['trace'] + args).exit_code == 64

    @pytest.mark.parametrize("args", [
        ['--x-min', '0'],
        ['--x-max', '1'],
        ['--x-min', '0.5', '--x-max', '0.4'],
        ['--n', '1'],
    ])
    def test_range_errors(self, runner, args):
        assert runner.invoke(cli, ['trace', '--p', '1', '--u', '0.3'] + args).exit_code == 2
