"""コマンドライン: antiflex check / check-op / derive / search / demo

標準出力には JSON だけを書く。ログは標準エラー。
終了コード: 0 成功, 1 判定失敗, 2 入力・前提の誤り, 3 探索空間が予算超過。
"""

import argparse
import sys
import time

from modules import concordance
from modules.algcore import (
    Algebra,
    CheckReport,
    LinearMap,
    commutator_algebra,
    compare_products,
    first_failure,
    opposite,
)
from modules.config import load_config, resolve_budget, resolve_workers
from modules.errors import AntiflexError, InputFormatError, SearchSpaceTooLarge
from modules.exactfield import FieldSpec
from modules.fileio import (
    dumps_canonical,
    dumps_line,
    load_algebra,
    load_bimodule,
    load_form,
    load_json,
    load_pair,
    map_from_json,
    map_to_json,
    map_weight,
    object_to_json,
)
from modules.fixtures import build_fixture
from modules.identities import (
    check_dendriform,
    check_identity,
    check_pre_anti_flexible,
    identity_name,
    left_sym_from_pre,
    right_sym_from_pre,
    sum_algebra,
)
from modules.nijenhuis import (
    check_nijenhuis,
    check_nj_condition,
    lie_double_with_complex_structure,
    nj_induced_product,
    nj_left_symmetric,
    nj_power_suite,
    nj_pre_anti_flexible,
    nj_rb_bridge,
)
from modules.omod import (
    LiftVariant,
    adjoint_bimodule,
    check_bimodule,
    check_o_operator,
    dual_bimodule,
    extended_bimodule,
    lift_nijenhuis_from_o,
    lift_rb_from_o,
    o_graph_check,
    o_induced_module_algebra,
    o_left_symmetric,
    o_pre_anti_flexible,
    o_right_symmetric,
    semidirect_product,
)
from modules.rota import (
    WeightedOperator,
    check_lie_rota_baxter,
    check_rota_baxter,
    check_weight_condition,
    rb_converse_report,
    rb_graph_check,
    rb_induced_product,
    rb_left_symmetric,
    rb_power_suite,
    rb_pre_anti_flexible,
    rb_right_symmetric,
)
from modules.search import (
    SearchStats,
    enumerate_algebras,
    enumerate_o_operators,
    enumerate_operators,
)
from modules.symplectic import check_cyclic_form, pre_lie_from_symplectic
from modules.utils.logwriter import log_debug, log_error, log_info, setup_logging

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

PAIR_IDENTITIES = ("pre_anti_flexible", "dendriform")


class UsageError(AntiflexError):
    """引数の組み合わせが不正"""


# ----------------------------------------------------------------------
# 出力
# ----------------------------------------------------------------------
def _emit(obj, out=None):
    text = dumps_canonical(obj)
    if out:
        with open(out, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _emit_report(report, out=None):
    _emit(report.to_json(), out)
    return EXIT_PASS if report.passed else EXIT_FAIL


# ----------------------------------------------------------------------
# 入力
# ----------------------------------------------------------------------
def _require(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise UsageError(f"missing required option(s): {flags}")


def _algebra(args):
    if args.algebra is None:
        raise UsageError("an algebra file is required")
    return load_algebra(args.algebra, args.allow_small)


def _map(args, field):
    _require(args, "operator")
    data = load_json(args.operator)
    M = map_from_json(data, args.allow_small)
    if M.field != field:
        raise InputFormatError(f"operator is over {M.field}, algebra over {field}")
    return M, map_weight(data, field)


def _weighted(args, A):
    M, stored = _map(args, A.field)
    if args.weight is not None:
        weight = A.field.parse(args.weight)
    else:
        weight = stored if stored is not None else 0
    return WeightedOperator(M, weight)


def _bimodule(args):
    _require(args, "bimodule")
    return load_bimodule(args.bimodule, args.allow_small)


# ----------------------------------------------------------------------
# check
# ----------------------------------------------------------------------
def cmd_check(args):
    name = args.identity.strip().lower().replace("-", "_")
    if name in PAIR_IDENTITIES:
        P = load_pair(args.algebra, args.allow_small)
        report = check_pre_anti_flexible(P) if name == "pre_anti_flexible" else check_dendriform(P)
    elif name == "bimodule":
        report = check_bimodule(load_bimodule(args.algebra, args.allow_small))
    elif name == "cyclic_form":
        _require(args, "form")
        A = _algebra(args)
        report = check_cyclic_form(A, load_form(args.form, args.allow_small))
    else:
        report = check_identity(_algebra(args), identity_name(name))
    log_debug(f"check {name}: {'pass' if report.passed else 'fail'}")
    return _emit_report(report, args.output)


# ----------------------------------------------------------------------
# check-op
# ----------------------------------------------------------------------
def cmd_check_op(args):
    kind = args.kind
    if kind == "o-operator":
        B = _bimodule(args)
        T, _ = _map(args, B.field)
        report = check_o_operator(B, T)
        if args.graph:
            report = first_failure("o_operator", [report, o_graph_check(B, T)])
        return _emit_report(report, args.output)

    A = _algebra(args)
    if kind == "rb":
        R = _weighted(args, A)
        reports = [check_rota_baxter(A, R)]
        if args.graph:
            reports.append(rb_graph_check(A, R))
        return _emit_report(first_failure("rota_baxter", reports), args.output)
    if kind == "lie-rb":
        return _emit_report(check_lie_rota_baxter(A, _weighted(args, A)), args.output)
    if kind == "weight-condition":
        return _emit_report(check_weight_condition(A, _weighted(args, A)), args.output)
    if kind == "rb-converse":
        report = rb_converse_report(A, _weighted(args, A))
        _emit(report.to_json(), args.output)
        return EXIT_PASS if report.agrees else EXIT_FAIL

    N, _ = _map(args, A.field)
    if kind == "nijenhuis":
        return _emit_report(check_nijenhuis(A, N), args.output)
    if kind == "nj-condition":
        return _emit_report(check_nj_condition(A, N), args.output)
    if kind == "nj-rb-bridge":
        report = nj_rb_bridge(A, N)
        _emit(report.to_json(), args.output)
        return EXIT_PASS if report.agrees else EXIT_FAIL
    raise UsageError(f"unknown operator kind {kind!r}")


# ----------------------------------------------------------------------
# derive
# ----------------------------------------------------------------------
def _derive_algebra(args, construction):
    A = _algebra(args)
    if construction == "opposite":
        return opposite(A)
    if construction == "commutator":
        return commutator_algebra(A)
    if construction == "dual-bimodule":
        return dual_bimodule(A)
    if construction == "adjoint-bimodule":
        return adjoint_bimodule(A)
    if construction == "symplectic-prelie":
        _require(args, "form")
        return pre_lie_from_symplectic(A, load_form(args.form, args.allow_small),
                                       skip_ambient_check=args.skip_ambient_check)
    if construction == "nj-double":
        double, J, report = lie_double_with_complex_structure(A)
        return {"double": object_to_json(double), "complex_structure": object_to_json(J),
                "report": report.to_json()}
    if construction.startswith("rb-"):
        R = _weighted(args, A)
        builders = {
            "rb-product": rb_induced_product,
            "rb-pre": rb_pre_anti_flexible,
            "rb-lsym": rb_left_symmetric,
            "rb-rsym": rb_right_symmetric,
            "rb-powers": lambda A, R: rb_power_suite(A, R, args.maxpq),
        }
        if construction in builders:
            return builders[construction](A, R)
    if construction.startswith("nj-"):
        N, _ = _map(args, A.field)
        builders = {
            "nj-product": nj_induced_product,
            "nj-pre": nj_pre_anti_flexible,
            "nj-lsym": nj_left_symmetric,
            "nj-powers": lambda A, N: nj_power_suite(A, N, args.maxpq),
        }
        if construction in builders:
            return builders[construction](A, N)
    if construction in ("pre-sum", "pre-lsym", "pre-rsym"):
        raise UsageError(f"{construction} takes a pair file via --pair")
    raise UsageError(f"unknown construction {construction!r}")


def _derive_bimodule(args, construction):
    B = _bimodule(args)
    if construction == "semidirect":
        return semidirect_product(B)
    T, _ = _map(args, B.field)
    if construction == "o-pre":
        return o_pre_anti_flexible(B, T)
    if construction == "o-product":
        return o_induced_module_algebra(B, T)
    if construction == "o-lsym":
        return o_left_symmetric(B, T)
    if construction == "o-rsym":
        return o_right_symmetric(B, T)
    if construction == "extend-bimodule":
        return extended_bimodule(B, T)
    if construction == "lift-rb":
        weight = B.field.parse(args.weight) if args.weight is not None else 0
        return lift_rb_from_o(B, T, weight)
    if construction == "lift-nj":
        return lift_nijenhuis_from_o(B, T, args.variant)
    raise UsageError(f"unknown construction {construction!r}")


def _derive_pair(args, construction):
    P = load_pair(args.pair, args.allow_small)
    builders = {"pre-sum": sum_algebra, "pre-lsym": left_sym_from_pre, "pre-rsym": right_sym_from_pre}
    if construction not in builders:
        raise UsageError(f"unknown construction {construction!r}")
    return builders[construction](P)


BIMODULE_CONSTRUCTIONS = ("semidirect", "o-pre", "o-product", "o-lsym", "o-rsym",
                          "extend-bimodule", "lift-rb", "lift-nj")


def cmd_derive(args):
    construction = args.construction
    if args.pair is not None:
        result = _derive_pair(args, construction)
    elif construction in BIMODULE_CONSTRUCTIONS:
        result = _derive_bimodule(args, construction)
    else:
        result = _derive_algebra(args, construction)
    if isinstance(result, dict):
        _emit(result, args.output)
    elif hasattr(result, "verdicts"):
        _emit(result.to_json(), args.output)
    else:
        _emit(object_to_json(result), args.output)
    return EXIT_PASS


# ----------------------------------------------------------------------
# search
# ----------------------------------------------------------------------
def cmd_search(args, config):
    budget = resolve_budget(config, args.budget)
    workers = resolve_workers(config, args.workers)
    chunk = config.get("chunk_size")
    stats = SearchStats()
    options = {"budget": budget, "workers": workers, "chunk_size": chunk, "stats": stats}

    if args.kind == "algebras":
        _require(args, "p", "dim")
        field = FieldSpec.prime(args.p, allow_small=args.allow_small)
        hits = (object_to_json(A) for A in enumerate_algebras(field, args.dim, args.filter, **options))
    elif args.kind == "o-operator":
        B = _bimodule(args)
        hits = (map_to_json(T.map) for T in enumerate_o_operators(B, **options))
    else:
        A = _algebra(args)
        if args.kind == "rb":
            weight = A.field.parse(args.weight) if args.weight is not None else 0
            hits = (map_to_json(M, weight)
                    for M in enumerate_operators(A, "rb", weight, **options))
        else:
            hits = (map_to_json(M) for M in enumerate_operators(A, "nijenhuis", **options))

    out = open(args.output, 'w', encoding='utf-8', newline='\n') if args.output else sys.stdout
    try:
        for record in hits:
            out.write(dumps_line(record) + "\n")
        out.write(dumps_line(stats.to_json(timing=args.timing)) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    log_info(f"探索結果: {stats.count} 件 / {stats.scanned} 件")
    return EXIT_PASS


# ----------------------------------------------------------------------
# demo
# ----------------------------------------------------------------------
def _expect(name, report, expected=True):
    return {"name": name, "expected": "pass" if expected else "fail",
            "ok": report.passed == expected, "report": report.to_json()}


def _agree(name, first, second):
    ok = first.passed == second.passed
    return {"name": name, "expected": "agree", "ok": ok,
            "report": {"first": first.to_json(), "second": second.to_json()}}


def walkthrough():
    """ℚ 上の例題で各構成を一通り確かめる"""
    E, E_op, D, Z = (build_fixture(n) for n in ("E", "E_op", "D", "Z"))
    R = build_fixture("D_rb")
    omega = build_fixture("omega_std")
    N = R.map
    field = D.field

    steps = [
        _expect("E_anti_flexible", check_identity(E, "anti_flexible")),
        _expect("E_op_anti_flexible", check_identity(E_op, "anti_flexible")),
        _expect("E_associative", check_identity(E, "associative"), expected=False),
        _expect("E_commutator_lie", check_identity(commutator_algebra(E), "lie")),
        _expect("D_rota_baxter", check_rota_baxter(D, R)),
        _expect("D_rb_product_anti_flexible", check_identity(rb_induced_product(D, R), "anti_flexible")),
        _expect("D_rb_graph", rb_graph_check(D, R)),
    ]
    pair = rb_pre_anti_flexible(D, R)
    steps += [
        _expect("D_rb_pre_anti_flexible", check_pre_anti_flexible(pair)),
        _expect("D_weight_condition", check_weight_condition(D, R)),
        _expect("D_rb_pre_left_symmetric", check_identity(left_sym_from_pre(pair), "left_symmetric")),
        _expect("D_rb_pre_right_symmetric", check_identity(right_sym_from_pre(pair), "right_symmetric")),
        _expect("Z_rb_converse_identity",
                check_rota_baxter(Z, WeightedOperator(LinearMap.identity(field, 2), 0)),
                expected=False),
        _expect("Z_rb_pair_identity",
                check_pre_anti_flexible(rb_pre_anti_flexible(Z, WeightedOperator(LinearMap.identity(field, 2), 0)))),
    ]
    for label, B in (("D_adjoint", adjoint_bimodule(D)), ("E_dual", dual_bimodule(E))):
        steps += [
            _expect(f"{label}_bimodule", check_bimodule(B)),
            _expect(f"{label}_semidirect_anti_flexible",
                    check_identity(semidirect_product(B), "anti_flexible")),
        ]
    B = adjoint_bimodule(D)
    o_pair = o_pre_anti_flexible(B, N)
    steps += [
        _expect("D_adjoint_o_operator", check_o_operator(B, N)),
        _expect("D_adjoint_o_pre_anti_flexible", check_pre_anti_flexible(o_pair)),
        _expect("D_adjoint_extended_bimodule", check_bimodule(extended_bimodule(B, N))),
        _expect("D_adjoint_o_pre_matches_rb_pre", first_failure("o_pre_matches_rb_pre", [
            compare_products("prec", o_pair.prec_algebra(), pair.prec_algebra()),
            compare_products("succ", o_pair.succ_algebra(), pair.succ_algebra()),
        ])),
        _expect("D_adjoint_lift_rb", check_rota_baxter(semidirect_product(B), lift_rb_from_o(B, N, 1))),
        _expect("D_adjoint_lift_nj", check_nijenhuis(semidirect_product(B),
                                                     lift_nijenhuis_from_o(B, N, LiftVariant.NILPOTENT))),
    ]
    steps += [
        _expect("D_nijenhuis", check_nijenhuis(D, N)),
        _expect("D_nj_product_anti_flexible", check_identity(nj_induced_product(D, N), "anti_flexible")),
        _agree("D_nj_pre_iff_condition", check_pre_anti_flexible(nj_pre_anti_flexible(D, N)),
               check_nj_condition(D, N)),
        _expect("D_nj_rb_bridge",
                CheckReport(nj_rb_bridge(D, N).agrees, "nj_rb_bridge")),
        _expect("D_lie_double_complex_structure", lie_double_with_complex_structure(D)[2]),
        _expect("zero_cyclic_form", check_cyclic_form(Algebra.zero(field, 2), omega)),
        _expect("zero_symplectic_prelie",
                check_identity(pre_lie_from_symplectic(Algebra.zero(field, 2), omega), "left_symmetric")),
    ]
    return steps


def cmd_demo(args, config):
    opts = concordance.SweepOptions(
        stride=args.stride,
        limit=None if args.full else args.limit,
        workers=resolve_workers(config, args.workers),
        budget=resolve_budget(config, args.budget),
    )
    started = time.perf_counter()
    steps = walkthrough()
    log_info("例題の確認が終わりました。コーパス照合を開始します")
    sweeps = concordance.run_all(opts)

    bad = [s["name"] for s in steps if not s["ok"]]
    for results in sweeps.values():
        bad += [c.claim for c in concordance.violations(results)]

    report = {
        "walkthrough": steps,
        "concordance": {name: concordance.report_json(r) for name, r in sweeps.items()},
        "reported_claims": sorted(concordance.REPORTED),
        "result": "pass" if not bad else "fail",
    }
    if bad:
        report["failures"] = bad

    if args.findings:
        findings_dir = config.get("findings_dir")
        found = concordance.demo_power_findings(args.maxpq, opts)
        report["findings"] = {
            name.removesuffix(".json"): concordance.write_findings(findings, name, findings_dir)
            for name, findings in found.items()
        }
    if args.timing:
        report["elapsed"] = round(time.perf_counter() - started, 6)
    _emit(report, args.output)
    return EXIT_PASS if not bad else EXIT_FAIL


# ----------------------------------------------------------------------
# 引数
# ----------------------------------------------------------------------
def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--allow-small-char", dest="allow_small", action="store_true",
                        help="F_2 と F_3 を許可する")
    common.add_argument("--config", help="設定ファイル（既定: config.json）")
    common.add_argument("--log-level", help="コンソールのログレベル")
    common.add_argument("-o", "--output", help="出力ファイル（既定: 標準出力）")

    parser = argparse.ArgumentParser(prog="antiflex",
                                     description="anti-flexible 代数の厳密計算ツール")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="恒等式を判定する")
    p.add_argument("algebra", help="代数（または対・双加群）の JSON")
    p.add_argument("--identity", default="anti-flexible")
    p.add_argument("--form", help="cyclic-form 用の双線形形式")

    p = sub.add_parser("check-op", parents=[common], help="作用素を判定する")
    p.add_argument("algebra", nargs="?")
    p.add_argument("--operator")
    p.add_argument("--kind", required=True,
                   choices=["rb", "lie-rb", "weight-condition", "rb-converse", "nijenhuis",
                            "nj-condition", "nj-rb-bridge", "o-operator"])
    p.add_argument("--weight")
    p.add_argument("--bimodule")
    p.add_argument("--graph", action="store_true", help="グラフ部分代数の判定も行う")

    p = sub.add_parser("derive", parents=[common], help="誘導構造を計算する")
    p.add_argument("algebra", nargs="?")
    p.add_argument("--construction", required=True)
    p.add_argument("--operator")
    p.add_argument("--weight")
    p.add_argument("--form")
    p.add_argument("--bimodule")
    p.add_argument("--pair")
    p.add_argument("--variant", default=LiftVariant.NILPOTENT,
                   choices=[LiftVariant.NILPOTENT, LiftVariant.IDEMPOTENT])
    p.add_argument("--maxpq", type=int, default=3)
    p.add_argument("--skip-ambient-check", action="store_true")

    p = sub.add_parser("search", parents=[common], help="有限体上の全数探索")
    p.add_argument("--kind", required=True, choices=["algebras", "rb", "nijenhuis", "o-operator"])
    p.add_argument("--algebra")
    p.add_argument("--bimodule")
    p.add_argument("--weight")
    p.add_argument("--p", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--filter")
    p.add_argument("--budget", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--timing", action="store_true")

    p = sub.add_parser("demo", parents=[common], help="例題とコーパス照合をまとめて実行")
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--limit", type=int, default=4)
    p.add_argument("--full", action="store_true", help="コーパスを全件使う")
    p.add_argument("--findings", action="store_true", help="冪の性質の調査結果を書き出す")
    p.add_argument("--maxpq", type=int, default=3)
    p.add_argument("--budget", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--timing", action="store_true")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    config = load_config(args.config)
    setup_logging(enable_file=bool(config.get("log_to_file")),
                  level=args.log_level or config.get("log_level", "INFO"))
    args.allow_small = args.allow_small or bool(config.get("allow_small_characteristic"))
    log_debug(f"コマンド: {args.command}")

    commands = {
        "check": lambda: cmd_check(args),
        "check-op": lambda: cmd_check_op(args),
        "derive": lambda: cmd_derive(args),
        "search": lambda: cmd_search(args, config),
        "demo": lambda: cmd_demo(args, config),
    }
    try:
        return commands[args.command]()
    except SearchSpaceTooLarge as e:
        log_error(f"探索空間が大きすぎます: {e}")
        _emit({"error": type(e).__name__, "message": str(e), "size": e.size, "budget": e.budget})
        return EXIT_BUDGET
    except (AntiflexError, ValueError, KeyError) as e:
        log_error(f"入力エラー: {e}")
        _emit({"error": type(e).__name__, "message": str(e)})
        return EXIT_USAGE
