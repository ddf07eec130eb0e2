"""burnlab コマンドラインエントリポイント

    python app.py generate --class cactus --n 300 --seed 1
    python app.py burn fixtures/cactus/n300_s1.graph --alg cactus275
    python app.py exact graph.graph
    python app.py verify graph.graph schedule.txt
    python app.py bench --classes cactus --sizes 10,12,14 --seeds 0,1 --algs cactus275,baseline3

終了コード: 0 成功 / 1 検証・保証の失敗 / 2 使い方・クラス不一致 / 3 入出力・形式エラー
"""
import argparse
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import pandas as pd

import config
from burn_engine import ApproxResult, BurningSchedule, ceil_range, validate
from cactus_burn import approx_cactus
from ditree_burn import approx_arborescence, approx_polytree
from errors import (BudgetExceededError, BurnlabError, ConfigError, GenSpecError, GraphFormatError,
                    InfeasibleScheduleError, InvalidInputError, OracleCapError, ScheduleError)
from gen import DEFAULT_CYCLE_FRACTION, GRAPH_CLASSES, GenSpec, fixture_path, generate_instance
from graph_core import classify_ditree, is_cactus, is_connected, read_graph, write_graph
from oracles import baseline_3approx, exact_burning_number

logger = logging.getLogger('burnlab')

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

BENCH_COLUMNS = ['name', 'class', 'V', 'E', 'alg', 'estimate', 'b_star', 'ms', 'seed',
                 'exact', 'ratio', 'bound', 'error']

# ============================================
# アルゴリズム登録
# ============================================

# アルゴリズム名 -> (関数, 受け付けるグラフクラス)
ALGORITHMS = {
    'cactus275': (approx_cactus, ('cactus',)),
    'poly3': (approx_polytree, ('polytree', 'arborescence')),
    'arb2': (approx_polytree, ('arborescence',)),
    'arb1905': (approx_arborescence, ('arborescence',)),
    'baseline3': (baseline_3approx, ('cactus', 'graph')),
}


def guarantee(alg: str, b: int) -> int:
    """厳密な燃焼数 b に対する各アルゴリズムの長さの上限"""
    if alg == 'cactus275':
        return ceil_range(b, 2.75)
    if alg == 'arb2':
        return 2 * b
    if alg == 'arb1905':
        return ceil_range(b, 1.905) + 1
    return 3 * b


def graph_class_of(g) -> str:
    if g.directed:
        return classify_ditree(g).value
    if not is_connected(g):
        return 'invalid'
    return 'cactus' if is_cactus(g) else 'graph'


def run_algorithm(alg: str, g, seed=None) -> ApproxResult:
    """クラスを確認してアルゴリズムを実行し、結果の系列を再検証する"""
    fn, classes = ALGORITHMS[alg]
    kind = graph_class_of(g)
    if kind not in classes:
        raise InvalidInputError(f'algorithm {alg} needs {"/".join(classes)} input, got {kind}')
    result = fn(g, seed=seed) if alg == 'cactus275' else fn(g)
    verdict = validate(g, result.schedule, g.directed)
    if not verdict:
        raise ScheduleError(f'{alg} produced an invalid schedule: {verdict.reason}')
    return result


def _int_list(text: str) -> list:
    try:
        return [int(tok) for tok in text.split(',') if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected comma-separated integers, got {text!r}') from None


def _name_list(text: str) -> list:
    return [tok.strip() for tok in text.split(',') if tok.strip()]


# ============================================
# generate
# ============================================

def cmd_generate(args) -> int:
    sizes = [args.n] if args.n is not None else args.n_list
    if not sizes:
        print("❌ サイズが指定されていません (--n / --n-list)", file=sys.stderr)
        return EXIT_USAGE
    out_dir = Path(args.out or config.fixture_dir())
    for n in sizes:
        spec = GenSpec(args.graph_class, n, args.seed, args.cycle_fraction, args.max_out_degree)
        g = generate_instance(spec)
        path = write_graph(fixture_path(out_dir, spec), g)
        print(f"💾 {path} (V={g.n}, E={g.edge_count})")
    return EXIT_OK


# ============================================
# burn / exact / verify
# ============================================

def cmd_burn(args) -> int:
    g = read_graph(args.graph)
    result = run_algorithm(args.alg, g, seed=args.seed)
    print("=" * 60)
    print(f"🔥 {args.alg}: {args.graph} (V={g.n}, E={g.edge_count})")
    print("=" * 60)
    print(f"📊 b_star: {result.b_star}")
    print(f"📊 length: {result.length} (bound {result.bound})")
    print(f"📝 schedule: {result.schedule.to_line()}")
    if args.out:
        Path(args.out).write_text(result.schedule.to_line() + '\n', encoding='utf-8')
        print(f"💾 {args.out}")
    print("✅ 検証済み")
    return EXIT_OK


def cmd_exact(args) -> int:
    g = read_graph(args.graph)
    result = exact_burning_number(g, g.directed)
    print("=" * 60)
    print(f"🔍 exact: {args.graph} (V={g.n}, E={g.edge_count})")
    print("=" * 60)
    print(f"📊 b: {result.b}")
    print(f"📝 schedule: {result.witness.to_line()}")
    return EXIT_OK


def cmd_verify(args) -> int:
    g = read_graph(args.graph)
    try:
        schedule = BurningSchedule.from_line(Path(args.schedule).read_text(encoding='utf-8'))
    except ScheduleError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_IO
    verdict = validate(g, schedule, g.directed)
    if verdict:
        print(f"✅ accept: length {schedule.length}, covered after round {verdict.rounds_to_cover}")
        return EXIT_OK
    print(f"❌ reject: {verdict.reason}")
    return EXIT_FAILED


# ============================================
# bench
# ============================================

def _bench_instance(task) -> list:
    """1 インスタンス分の行を作る（プロセスプールから呼ばれる）"""
    graph_class, n, seed, algs, timing, cycle_fraction, cap = task
    spec = GenSpec(graph_class, n, seed, cycle_fraction)
    g = generate_instance(spec)
    exact = None
    if g.n <= cap:
        try:
            exact = exact_burning_number(g, g.directed, cap=cap).b
        except BudgetExceededError as e:
            logger.warning('%s: %s', spec.name, e)
    rows = []
    for alg in algs:
        row = dict.fromkeys(BENCH_COLUMNS)
        row.update({'name': spec.name, 'class': graph_class, 'V': g.n, 'E': g.edge_count,
                    'alg': alg, 'seed': seed, 'exact': exact})
        try:
            started = time.perf_counter()
            result = run_algorithm(alg, g)
            elapsed_ms = (time.perf_counter() - started) * 1000
            row.update({'estimate': result.length, 'b_star': result.b_star, 'bound': result.bound})
            if timing:
                row['ms'] = round(elapsed_ms, 3)
            if exact is not None:
                row['ratio'] = round(result.length / exact, 4)
                if result.length > guarantee(alg, exact):
                    row['error'] = 'guarantee_violated'
        except BurnlabError as e:
            row['error'] = f'{type(e).__name__}: {e}'
        except Exception as e:
            # 想定外の例外でもベンチ全体は止めず、その行だけ失敗として残す
            logger.exception('%s %s: unexpected failure', spec.name, alg)
            row['error'] = f'unexpected {type(e).__name__}: {e}'
        rows.append(row)
    return rows


def bench_rows(classes, sizes, seeds, algs, timing=False, workers=1,
               cycle_fraction=DEFAULT_CYCLE_FRACTION) -> list:
    cap = config.oracle_cap()
    tasks = []
    for graph_class in classes:
        compatible = [a for a in algs if graph_class in ALGORITHMS[a][1]]
        if not compatible:
            continue
        for n in sizes:
            for seed in seeds:
                tasks.append((graph_class, n, seed, compatible, timing, cycle_fraction, cap))
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_bench_instance, tasks))
    else:
        chunks = [_bench_instance(task) for task in tasks]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r['class'], r['V'], r['seed'], r['alg']))
    return rows


def format_bench(rows: list, fmt: str) -> str:
    df = pd.DataFrame(rows, columns=BENCH_COLUMNS, dtype=object)
    if fmt == 'json':
        return df.to_json(orient='records', indent=2) + '\n'
    return df.to_csv(index=False, lineterminator='\n')


def cmd_bench(args) -> int:
    if not args.sizes:
        print("❌ --sizes には 1 つ以上のサイズが必要です", file=sys.stderr)
        return EXIT_USAGE
    unknown = [c for c in args.classes if c not in GRAPH_CLASSES]
    unknown += [a for a in args.algs if a not in ALGORITHMS]
    if unknown or not args.classes or not args.algs:
        print(f"❌ 不明なクラス/アルゴリズム: {', '.join(unknown) or '(empty)'}", file=sys.stderr)
        return EXIT_USAGE

    rows = bench_rows(args.classes, args.sizes, args.seeds, args.algs, args.timing,
                      args.workers or config.default_workers(), args.cycle_fraction)
    text = format_bench(rows, args.format)
    if args.out:
        Path(args.out).write_text(text, encoding='utf-8')
        print(f"💾 {args.out} ({len(rows)} rows)")
    else:
        sys.stdout.write(text)
    failed = [r for r in rows if r['error']]
    for r in failed:
        logger.warning('%s %s: %s', r['name'], r['alg'], r['error'])
    return EXIT_FAILED if failed else EXIT_OK


# ============================================
# 引数解析
# ============================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='burnlab', description='graph burning approximations')
    parser.add_argument('-v', '--verbose', action='store_true', help='DEBUG ログを出力する')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('generate', help='ランダムインスタンスを生成する')
    p.add_argument('--class', dest='graph_class', required=True, choices=GRAPH_CLASSES)
    size = p.add_mutually_exclusive_group(required=True)
    size.add_argument('--n', type=int)
    size.add_argument('--n-list', type=_int_list)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--cycle-fraction', type=float, default=DEFAULT_CYCLE_FRACTION)
    p.add_argument('--max-out-degree', type=int)
    p.add_argument('--out', help='出力ディレクトリ（既定: BURNLAB_FIXTURE_DIR）')
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser('burn', help='近似アルゴリズムで燃焼系列を求める')
    p.add_argument('graph')
    p.add_argument('--alg', required=True, choices=sorted(ALGORITHMS))
    p.add_argument('--seed', type=int, help='cactus275 の根をランダムに選ぶ')
    p.add_argument('--out', help='系列を書き出すファイル')
    p.set_defaults(func=cmd_burn)

    p = sub.add_parser('exact', help='厳密な燃焼数を求める')
    p.add_argument('graph')
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser('verify', help='燃焼系列を検証する')
    p.add_argument('graph')
    p.add_argument('schedule')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('bench', help='ベンチマーク表を出力する')
    p.add_argument('--classes', type=_name_list, default=['cactus'])
    p.add_argument('--sizes', type=_int_list, required=True)
    p.add_argument('--seeds', type=_int_list, default=[0])
    p.add_argument('--algs', type=_name_list, default=['cactus275', 'baseline3'])
    p.add_argument('--format', choices=('csv', 'json'), default='csv')
    p.add_argument('--cycle-fraction', type=float, default=DEFAULT_CYCLE_FRACTION)
    p.add_argument('--workers', type=int)
    p.add_argument('--timing', action='store_true', help='ms 列に実行時間を入れる')
    p.add_argument('--out')
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (GraphFormatError, OSError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_IO
    except (InvalidInputError, GenSpecError, OracleCapError, BudgetExceededError, ConfigError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ScheduleError, InfeasibleScheduleError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
