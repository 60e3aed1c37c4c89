"""命令行入口。

    python -m bnsim exact --network data/cancer.json --evidence data/cancer_evidence.json
    python -m bnsim compare --network data/cancer.json --evidence data/cancer_evidence.json \\
        --trials-list 100,200,500,1000,2000 --runs 100 --seed 1 --out results.csv
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__
from .errors import BnsimError, CapacityError, ImpossibleEvidenceError, ValidationError
from .harness import compare_report, generate_extremal_network, run_algorithm, state_nodes
from .inference import (
    RandomStream,
    exact_inference,
    integrate_evidence,
    reverse_arc_step,
)
from .models.results import ReversalPlan
from .network import validate_network
from .utils.config import Config, load_config
from .utils.constants import Algorithm, ExitCode, ExtremalLayout, IntegrationMode
from .utils.data_processor import (
    comparison_records,
    estimate_records,
    exact_records,
    load_evidence,
    load_network,
    load_network_unchecked,
    records_frame,
    serialize_evidence,
    serialize_network,
    write_csv,
)
from .utils.log import setup_logging

logger = logging.getLogger(__name__)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"需要正整数: {text}")
    return value


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError(f"种子必须在 [0, 2^64) 内: {text}")
    return value


def _int_list(text: str) -> List[int]:
    try:
        return [_positive_int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"需要逗号分隔的正整数: {text}") from None


def _algorithm_list(text: str) -> List[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    unknown = [n for n in names if n not in Algorithm.ALL]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"未知算法 {unknown}，可选: {', '.join(Algorithm.ALL)}"
        )
    return names


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info(f"已写入 {path}")
    else:
        sys.stdout.write(text)


def _emit_frame(frame, out: Optional[str]) -> None:
    if out:
        write_csv(frame, out)
        logger.info(f"已写入 {out}")
    else:
        write_csv(frame, sys.stdout)


def cmd_validate(args: argparse.Namespace, config: Config) -> int:
    net = load_network_unchecked(args.network)
    violations = validate_network(net)
    for v in violations:
        print(v)
    if violations:
        logger.error(f"{args.network}: {len(violations)} 条违规")
        return ExitCode.VALIDATION_ERROR
    print(f"{args.network}: 合法，{len(net.ids)} 个节点")
    return ExitCode.OK


def cmd_exact(args: argparse.Namespace, config: Config) -> int:
    net = load_network(args.network)
    evidence = load_evidence(args.evidence, net)
    result = exact_inference(net, evidence, state_cap=config.state_cap)
    logger.info(f"P(E) = {result.evidence_probability:.12g}")
    _emit_frame(records_frame(exact_records(net, result)), args.out)
    return ExitCode.OK


def cmd_sample(args: argparse.Namespace, config: Config) -> int:
    net = load_network(args.network)
    evidence = load_evidence(args.evidence, net)
    try:
        truth = exact_inference(net, evidence, state_cap=config.state_cap)
    except (CapacityError, ImpossibleEvidenceError) as e:
        # 没有精确对照时照常采样，估计无定义由采样结果报告
        logger.info(f"跳过精确对照: {e}")
        truth = None

    estimate = run_algorithm(
        net,
        evidence,
        args.algorithm,
        args.trials,
        RandomStream(args.seed),
        burn_in=args.burn_in,
        burn_in_fraction=config.burn_in_fraction,
        init_retries=config.gibbs_init_retries,
    )
    records = estimate_records(
        net, estimate, args.seed, truth, nodes=state_nodes(net, evidence)
    )
    _emit_frame(records_frame(records), args.out)
    return ExitCode.OK


def cmd_compare(args: argparse.Namespace, config: Config) -> int:
    net = load_network(args.network)
    evidence = load_evidence(args.evidence, net)
    seed = args.seed if args.seed is not None else config.master_seed
    report = compare_report(
        net,
        evidence,
        args.algorithms or list(Algorithm.ALL),
        args.trials_list or config.trials_list,
        args.runs or config.runs,
        seed,
        parallel=args.parallel or config.parallel,
        timing_runs=args.timing_runs or config.timing_runs,
        burn_in_fraction=config.burn_in_fraction,
        init_retries=config.gibbs_init_retries,
        state_cap=config.state_cap,
    )
    _emit_frame(records_frame(comparison_records(net, report)), args.out)
    if args.plot_out:
        write_csv(report.plot_frame(), args.plot_out)
        logger.info(f"已写入 {args.plot_out}")
    if args.out:
        print(report.render())
    failed = [c for c in report.cells if not c.ok]
    if failed:
        logger.warning(f"{len(failed)} 个格子失败")
    return ExitCode.OK


def _emit_plan(plan: ReversalPlan, out: Optional[str]) -> None:
    if plan.flagged:
        rows = sum(s.uniform_rows for s in plan.steps)
        logger.warning(f"反转计划中有 {rows} 行分母为 0，已以均匀分布填充")
    text = json.dumps(plan.to_dict(), indent=2, ensure_ascii=False) + "\n"
    if out:
        _emit(text, out)
    else:
        sys.stderr.write(text)


def cmd_reverse_arc(args: argparse.Namespace, config: Config) -> int:
    net = load_network(args.network)
    reversed_net, step = reverse_arc_step(net, args.from_id, args.to_id)
    _emit(serialize_network(reversed_net), args.out)
    _emit_plan(ReversalPlan(mode="single", steps=[step]), args.plan_out)
    return ExitCode.OK


def cmd_integrate(args: argparse.Namespace, config: Config) -> int:
    net = load_network(args.network)
    evidence = load_evidence(args.evidence, net)
    integrated, plan = integrate_evidence(net, evidence, args.mode)
    _emit(serialize_network(integrated), args.out)
    _emit_plan(plan, args.plan_out)
    return ExitCode.OK


def cmd_gen_extremal(args: argparse.Namespace, config: Config) -> int:
    net, evidence = generate_extremal_network(args.parents, args.epsilon, args.layout)
    _emit(serialize_network(net), args.out)
    if args.evidence_out:
        _emit(serialize_evidence(net, evidence), args.evidence_out)
    else:
        sys.stderr.write(serialize_evidence(net, evidence))
    return ExitCode.OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bnsim", description="贝叶斯网络随机模拟推理与基准测试")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="配置文件路径（默认 ./bnsim.toml）")
    parser.add_argument("--log-level", help="覆盖配置中的日志级别")
    commands = parser.add_subparsers(dest="command", required=True)

    def network_args(p, evidence=True):
        p.add_argument("--network", required=True, help="网络 JSON 文档")
        if evidence:
            p.add_argument("--evidence", help="证据 JSON 文档（缺省为空证据）")

    p = commands.add_parser("validate", help="校验网络文档")
    network_args(p, evidence=False)
    p.set_defaults(handler=cmd_validate)

    p = commands.add_parser("exact", help="穷举精确推理")
    network_args(p)
    p.add_argument("--out", help="CSV 输出路径（缺省为标准输出）")
    p.set_defaults(handler=cmd_exact)

    p = commands.add_parser("sample", help="运行一次模拟")
    network_args(p)
    p.add_argument("--algorithm", required=True, choices=Algorithm.ALL)
    p.add_argument("--trials", required=True, type=_positive_int)
    p.add_argument("--seed", required=True, type=_seed)
    p.add_argument("--burn-in", type=int, help="Gibbs 丢弃轮数")
    p.add_argument("--out", help="CSV 输出路径（缺省为标准输出）")
    p.set_defaults(handler=cmd_sample)

    p = commands.add_parser("compare", help="算法比较网格")
    network_args(p)
    p.add_argument("--algorithms", type=_algorithm_list, help="逗号分隔，缺省为全部")
    p.add_argument("--trials-list", type=_int_list, help="逗号分隔的试验数")
    p.add_argument("--runs", type=_positive_int)
    p.add_argument("--seed", type=_seed)
    p.add_argument("--parallel", type=_positive_int)
    p.add_argument("--timing-runs", type=_positive_int)
    p.add_argument("--out", help="结果 CSV 路径（缺省为标准输出）")
    p.add_argument("--plot-out", help="长格式画图数据 CSV 路径")
    p.set_defaults(handler=cmd_compare)

    p = commands.add_parser("transform", help="网络变换")
    transforms = p.add_subparsers(dest="transform", required=True)
    t = transforms.add_parser("reverse-arc", help="反转一条弧")
    network_args(t, evidence=False)
    t.add_argument("--from", dest="from_id", required=True)
    t.add_argument("--to", dest="to_id", required=True)
    t.add_argument("--out")
    t.add_argument("--plan-out")
    t.set_defaults(handler=cmd_reverse_arc)
    t = transforms.add_parser("integrate", help="证据集成")
    network_args(t)
    t.add_argument("--mode", choices=IntegrationMode.ALL, default=IntegrationMode.FULL)
    t.add_argument("--out")
    t.add_argument("--plan-out")
    t.set_defaults(handler=cmd_integrate)

    p = commands.add_parser("gen", help="生成网络")
    generators = p.add_subparsers(dest="generator", required=True)
    g = generators.add_parser("extremal", help="极端似然网络")
    g.add_argument("--parents", required=True, type=_positive_int)
    g.add_argument("--epsilon", required=True, type=float)
    g.add_argument("--layout", choices=ExtremalLayout.ALL, default=ExtremalLayout.CHAINED)
    g.add_argument("--out")
    g.add_argument("--evidence-out")
    g.set_defaults(handler=cmd_gen_extremal)

    return parser


def main(argv: Optional[Sequence[str]] = None, config: Optional[Config] = None) -> int:
    """解析参数并执行命令，返回退出码"""
    args = build_parser().parse_args(argv)
    if config is None:
        config = load_config(args.config)
    setup_logging(config, args.log_level)

    try:
        return args.handler(args, config)
    except ValidationError as e:
        for v in e.violations:
            logger.error(str(v))
        return e.exit_code
    except BnsimError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
