"""
命令行命令
========
seiffert 命令组：eval / table / certify / trace。

退出码：
- 0：全部通过
- 1：与定理矛盾或核函数不一致
- 2：定义域错误（参数越界、非正输入等）
- 3：网格扫描无法分类
- 64：用法错误（未知命令、未知均值名、缺少必需参数）

stdout 只输出数据，诊断信息和日志写 stderr。
"""
import functools
from typing import Optional

import click
import numpy as np

from src.business.lemma_kernels import eval_f_grid, eval_g_grid
from src.business.means_core import means_table, q_family
from src.business.thresholds import classical_bounds, predicted_verdict, threshold_pair, u_from_t
from src.cli.output import (
    EMPIRICAL_TABLE_COLUMNS,
    TABLE_COLUMNS,
    TRACE_COLUMNS,
    OutputRecord,
    render_json,
)
from src.config import get_config
from src.models.certificate import CertificateReport, ScanConfig
from src.models.kernel import KernelParams, KernelPoint
from src.models.means import ExponentParam, PositivePair, WeightParam
from src.services.verifier import DEFAULT_SEARCH_SAMPLES, get_verifier
from src.utils.errors import DomainError, InconsistencyError, IndeterminateScanError
from src.utils.logger import get_logger, log_exception, setup_logger

logger = get_logger(__name__)

EXIT_CONTRADICTION = 1
EXIT_DOMAIN = 2
EXIT_INDETERMINATE = 3
EXIT_USAGE = 64

MEAN_NAMES = ('A', 'T', 'S', 'C', 'Q', 'ALL')


class DomainCliError(click.ClickException):
    exit_code = EXIT_DOMAIN


class ContradictionCliError(click.ClickException):
    exit_code = EXIT_CONTRADICTION


class IndeterminateCliError(click.ClickException):
    exit_code = EXIT_INDETERMINATE


class SeiffertGroup(click.Group):
    """把 click 的用法错误映射到退出码 64"""

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as e:
            e.exit_code = EXIT_USAGE
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = EXIT_USAGE
            raise


def handle_errors(func):
    """把领域异常转换为带退出码的 ClickException"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except DomainError as e:
            raise DomainCliError(str(e))
        except IndeterminateScanError as e:
            raise IndeterminateCliError(str(e))
        except InconsistencyError as e:
            log_exception(logger, e, "数值结果自相矛盾")
            raise ContradictionCliError(str(e))
    return wrapper


def _output_format(as_json: bool) -> str:
    return 'json' if as_json else get_config().default_output_format


def _scan_config(grid_size: Optional[int]) -> ScanConfig:
    return ScanConfig.from_config(grid_size=grid_size)


@click.group(cls=SeiffertGroup, help=get_config().app_description)
@click.version_option(version=get_config().app_version, prog_name=get_config().app_name)
@click.option('--log-level', default=None,
              type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False),
              help='日志级别（默认读取配置）')
@click.option('--log-json', is_flag=True, default=None, help='日志输出为 JSON 行')
def cli(log_level, log_json):
    setup_logger("src", level=log_level, json_format=log_json or None)


@cli.command('eval')
@click.argument('mean_name', metavar='MEAN', type=click.Choice(MEAN_NAMES, case_sensitive=False))
@click.argument('a', type=float)
@click.argument('b', type=float)
@click.option('--t', 't', type=float, default=None, help='权重 t ∈ [1/2, 1]（Q 必需）')
@click.option('--p', 'p', type=float, default=None, help='幂次 p ≥ 1/2（Q 必需）')
@handle_errors
def eval_command(mean_name, a, b, t, p):
    """计算 A、T、S、C、Q 或全部（ALL）均值"""
    mean_name = mean_name.upper()
    pair = PositivePair(a, b)

    if mean_name == 'Q':
        if t is None or p is None:
            raise click.UsageError("Q 需要同时给出 --t 和 --p")
        click.echo(repr(q_family(pair, WeightParam(t), ExponentParam(p))))
        return

    values = means_table(pair)
    if mean_name == 'ALL':
        for name, value in values.items():
            click.echo(f"{name}={value!r}")
    else:
        click.echo(repr(values[mean_name]))


@cli.command('table')
@click.option('--p-min', type=float, default=0.5, show_default=True, help='p 的下限')
@click.option('--p-max', type=float, default=10.0, show_default=True, help='p 的上限')
@click.option('--steps', type=int, default=20, show_default=True, help='对数等距的 p 个数')
@click.option('--empirical', is_flag=True, help='附加网格二分得到的经验阈值')
@click.option('--grid-size', type=int, default=None, help='经验阈值使用的网格大小')
@click.option('--json', 'as_json', is_flag=True, help='输出 JSON')
@handle_errors
def table_command(p_min, p_max, steps, empirical, grid_size, as_json):
    """输出 (p, t_lower, t_upper, gap) 阈值表"""
    p_min = ExponentParam(p_min).p
    if not p_min < p_max:
        raise DomainError(f"需要 p_min < p_max，实际为 {p_min!r}, {p_max!r}")
    if steps < 2:
        raise DomainError(f"steps 必须 ≥ 2，实际为 {steps!r}")

    columns = EMPIRICAL_TABLE_COLUMNS if empirical else TABLE_COLUMNS
    record = OutputRecord(columns=columns, format=_output_format(as_json))
    verifier = get_verifier() if empirical else None
    cfg = _scan_config(grid_size) if empirical else None

    for p in np.geomspace(p_min, p_max, steps):
        p = float(p)
        pair = threshold_pair(p)
        row = {'p': p, 't_lower': pair.t_lower, 't_upper': pair.t_upper, 'gap': pair.gap}
        if verifier is not None:
            row['empirical_t_lower'] = verifier.empirical_t_lower(p, cfg)
            row['empirical_t_upper'] = verifier.empirical_t_upper(p, cfg)
        record.add_row(**row)

    click.echo(record.render())


def _echo_report(report: CertificateReport):
    click.echo(f"verdict: {report.verdict.value}")
    click.echo(f"u={report.u!r} p={report.p!r} h_p(u)={report.endpoint_value!r}")
    for label, witness in (('negative', report.negative_witness), ('positive', report.positive_witness)):
        if witness is not None:
            suffix = " (x→1 极限)" if witness.is_limit else ""
            click.echo(f"{label} witness: x={witness.x!r} f={witness.value!r}{suffix}")
    if report.extremum_x0 is not None:
        click.echo(f"x0={report.extremum_x0!r}")
    click.echo(f"grid: {report.grid_points} 点, [{report.x_min!r}, {report.x_max!r}]")


def _certify_classical(as_json: bool, seed: Optional[int], samples: Optional[int]):
    """S 均值（p=1/2）与 C 均值（p=1）两组经典常数的反例搜索"""
    seed = get_config().random_seed if seed is None else seed
    samples = DEFAULT_SEARCH_SAMPLES if samples is None else samples
    bounds = classical_bounds()
    found = get_verifier().certify_classical_bounds(samples=samples, seed=seed)
    passed = not any(found.values())

    if as_json:
        click.echo(render_json({
            'bounds': bounds.to_dict(),
            'samples': samples,
            'seed': seed,
            'counterexamples': {name: [c.to_dict() for c in items] for name, items in found.items()},
            'passed': passed,
        }))
    else:
        click.echo(f"S (p=1/2): alpha={bounds.alpha!r} beta={bounds.beta!r} 反例 {len(found['S'])} 个")
        click.echo(f"C (p=1): lambda={bounds.lam!r} mu={bounds.mu!r} 反例 {len(found['C'])} 个")
        click.echo(f"samples: {samples}, seed: {seed}")
        click.echo("PASS" if passed else "FAIL")

    if not passed:
        raise ContradictionCliError("经典常数出现反例")


@cli.command('certify')
@click.option('--p', 'p', type=float, default=None, help='幂次 p ≥ 1/2（--classical 时不需要）')
@click.option('--t', 't', type=float, default=None, help='只扫描这一个权重 t')
@click.option('--classical', is_flag=True, help='改为检查 p=1/2 与 p=1 的经典常数 α、β、λ、μ')
@click.option('--grid-size', type=int, default=None, help='网格大小（默认读取配置）')
@click.option('--json', 'as_json', is_flag=True, help='输出 JSON')
@click.option('--seed', type=int, default=None, help='随机种子（默认读取配置，SEIFFERT_SEED 可覆盖）')
@click.option('--samples', type=int, default=None, help='随机样本数（默认读取配置）')
@handle_errors
def certify_command(p, t, classical, grid_size, as_json, seed, samples):
    """验证定理：单个 t 的符号扫描，完整的阈值/锐性/交叉校验，或经典常数的反例搜索"""
    if classical:
        if p is not None or t is not None:
            raise click.UsageError("--classical 不能与 --p / --t 同时使用")
        _certify_classical(as_json, seed, samples)
        return
    if p is None:
        raise click.UsageError("缺少 --p")

    exponent = ExponentParam(p)
    cfg = _scan_config(grid_size)
    verifier = get_verifier()

    if t is not None:
        expected = predicted_verdict(WeightParam(t).t, exponent.p)
        report = verifier.scan_sign(KernelParams(u_from_t(t), exponent.p), cfg)
        consistent = report.verdict == expected
        if as_json:
            payload = report.to_dict()
            payload.update({'t': t, 'predicted_verdict': expected.value, 'passed': consistent})
            click.echo(render_json(payload))
        else:
            _echo_report(report)
            click.echo(f"predicted: {expected.value}")
            click.echo("PASS" if consistent else "FAIL")
        if not consistent:
            raise ContradictionCliError(f"扫描判定 {report.verdict.value} 与预测 {expected.value} 不符")
        return

    certificate = verifier.certify_theorem(exponent.p, cfg)
    seed = get_config().random_seed if seed is None else seed
    summary = verifier.cross_check(samples=samples, seed=seed)

    if as_json:
        payload = certificate.to_dict()
        payload['cross_check'] = summary.to_dict()
        click.echo(render_json(payload))
    else:
        click.echo(f"p={certificate.p!r}")
        click.echo(f"t_lower={certificate.thresholds.t_lower!r} "
                   f"empirical={certificate.empirical_t_lower!r} |diff|={certificate.lower_error:.3e}")
        click.echo(f"t_upper={certificate.thresholds.t_upper!r} "
                   f"empirical={certificate.empirical_t_upper!r} |diff|={certificate.upper_error:.3e}")
        click.echo(f"t_lower+δ: {certificate.lower_sharpness.verdict.value}")
        click.echo(f"t_upper−δ: {certificate.upper_sharpness.verdict.value}")
        click.echo(f"band midpoint: {certificate.band.verdict.value}")
        click.echo(f"cross-check: {summary.samples} samples, max deviation {summary.max_deviation:.3e}")
        for note in certificate.notes:
            click.echo(f"note: {note}")
        click.echo("PASS" if certificate.passed else "FAIL")

    if not certificate.passed:
        raise ContradictionCliError("; ".join(certificate.failures()))


@cli.command('trace')
@click.option('--p', 'p', type=float, required=True, help='幂次 p ≥ 1/2')
@click.option('--u', 'u', type=float, default=None, help='核参数 u ∈ [0, 1]')
@click.option('--t', 't', type=float, default=None, help='权重 t ∈ [1/2, 1]（与 --u 二选一）')
@click.option('--x-min', type=float, default=None, help='x 下限（默认读取配置）')
@click.option('--x-max', type=float, default=None, help='x 上限（默认读取配置）')
@click.option('--n', 'n', type=int, default=100, show_default=True, help='点数')
@click.option('--json', 'as_json', is_flag=True, help='输出 JSON')
@handle_errors
def trace_command(p, u, t, x_min, x_max, n, as_json):
    """输出 (x, f, g) 绘图数据"""
    if (u is None) == (t is None):
        raise click.UsageError("--u 与 --t 必须且只能给出一个")
    config = get_config()
    x_min = config.scan_x_min if x_min is None else x_min
    x_max = config.scan_x_max if x_max is None else x_max
    x_min = KernelPoint(x_min).x
    x_max = KernelPoint(x_max).x
    if not x_min < x_max:
        raise DomainError(f"需要 x_min < x_max，实际为 {x_min!r}, {x_max!r}")
    if n < 2:
        raise DomainError(f"n 必须 ≥ 2，实际为 {n!r}")

    params = KernelParams(u_from_t(t) if u is None else u, ExponentParam(p).p)
    xs = np.linspace(x_min, x_max, n)
    fs = eval_f_grid(params.u, params.p, xs)
    gs = eval_g_grid(params.p, xs)

    record = OutputRecord(columns=TRACE_COLUMNS, format=_output_format(as_json))
    for x, f, g in zip(xs, fs, gs):
        record.add_row(x=x, f=f, g=g)
    click.echo(record.render())
