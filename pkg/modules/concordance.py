"""有限体上のコーパスで「主張」と実際の判定が一致するかを数える

各 sweep_* は {主張名: Concordance} を返す。REPORTED に含まれる主張は
成り立つとは限らないもので、反例が見つかっても不具合ではなく記録として扱う。
コーパスは search の辞書式順の列挙を stride 個おきに limit 個まで使う。
"""

from dataclasses import dataclass, field as dc_field
from itertools import islice
import os

import numpy as np

from modules.algcore import (
    BilinearForm,
    LinearMap,
    commutator_algebra,
    compare_products,
    opposite,
)
from modules.errors import CharacteristicObstruction, InputFormatError
from modules.exactfield import FieldSpec
from modules.fileio import algebra_to_json, bimodule_to_json, map_to_json, write_json
from modules.fixtures import build_fixture
from modules.identities import (
    check,
    check_dendriform,
    check_homomorphism,
    check_identity,
    check_pair_morphism,
    check_pre_anti_flexible,
    left_sym_from_pre,
    right_sym_from_pre,
    sum_algebra,
)
from modules.nijenhuis import (
    NJ_EXPANSION,
    check_nijenhuis,
    check_nj_condition,
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
    check_o_morphism,
    check_o_operator,
    dual_bimodule,
    extended_bimodule,
    lift_nijenhuis_from_o,
    lift_rb_from_o,
    o_graph_check,
    o_induced_module_algebra,
    o_left_symmetric,
    o_morphism_graph_check,
    o_pre_anti_flexible,
    o_right_symmetric,
    semidirect_product,
    zero_bimodule,
)
from modules.rota import (
    WeightedOperator,
    check_lie_rota_baxter,
    check_rb_morphism,
    check_rota_baxter,
    check_weight_condition,
    rb_converse_report,
    rb_expansion_identity,
    rb_graph_check,
    rb_induced_product,
    rb_left_symmetric,
    rb_morphism_graph_check,
    rb_power_suite,
    rb_pre_anti_flexible,
    rb_right_symmetric,
)
from modules.search import OperatorKind, enumerate_algebras, enumerate_maps, enumerate_operators
from modules.symplectic import (
    check_cyclic_form,
    check_symplectic_lie,
    pre_lie_from_symplectic,
    symplectic_residual,
)
from modules.utils.logwriter import log_info
from modules.utils.path_utils import get_findings_dir, is_subpath


@dataclass
class Concordance:
    claim: str
    checked: int = 0
    agreed: int = 0
    counterexample: dict | None = None

    @property
    def holds(self):
        return self.checked == self.agreed

    def record(self, ok, example):
        """example は反例を JSON 化する関数（最初の反例でだけ呼ぶ）"""
        self.checked += 1
        if ok:
            self.agreed += 1
        elif self.counterexample is None:
            self.counterexample = example()

    def to_json(self):
        out = {"claim": self.claim, "checked": self.checked, "agreed": self.agreed,
               "holds": self.holds}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class SweepOptions:
    stride: int = 1
    limit: int | None = None
    workers: int = 1
    budget: int | None = None


class _Ledger(dict):
    def record(self, claim, ok, example):
        self.setdefault(claim, Concordance(claim)).record(ok, example)


REPORTED = frozenset({
    "rb_pair_implies_operator",
    "rb_left_right_symmetric_converse",
    "rb_morphism_graph",
    "rb_pair_morphism",
    "rb_pre_lie_induced",
    "nj_left_symmetric_converse",
    "nj_pre_lie_induced",
    "o_induced_anti_flexible_converse",
    "o_right_symmetric_stated",
})


def is_reported(claim):
    return claim in REPORTED


def violations(results):
    """記録扱いでない主張のうち反例があるもの"""
    return [c for name, c in sorted(results.items()) if not c.holds and not is_reported(name)]


def report_json(results):
    return {name: results[name].to_json() for name in sorted(results)}


def _corpus(field, dim, which, opts):
    stream = enumerate_algebras(field, dim, which, budget=opts.budget, workers=opts.workers)
    return islice(islice(stream, None, None, opts.stride), opts.limit)


def _maps(field, rows, cols, opts):
    return list(enumerate_maps(field, rows, cols, budget=opts.budget, workers=opts.workers))


def _key(M):
    return tuple(int(v) for v in np.asarray(M.matrix).ravel())


def _rb_example(A, R, report=None):
    def build():
        out = {"algebra": algebra_to_json(A), "operator": map_to_json(R.map, R.weight)}
        if report is not None:
            out["report"] = report.to_json()
        return out
    return build


def _map_example(A, M, report=None):
    def build():
        out = {"algebra": algebra_to_json(A), "operator": map_to_json(M)}
        if report is not None:
            out["report"] = report.to_json()
        return out
    return build


def _o_example(B, T, report=None):
    def build():
        out = {"bimodule": bimodule_to_json(B), "operator": map_to_json(T)}
        if report is not None:
            out["report"] = report.to_json()
        return out
    return build


# ----------------------------------------------------------------------
# 代数そのもの
# ----------------------------------------------------------------------
def sweep_opposite_commutator(field, dim=2, opts=None):
    """反対代数と交換子代数"""
    opts = opts or SweepOptions()
    ledger = _Ledger()
    for A in _corpus(field, dim, None, opts):
        af = check_identity(A, "anti_flexible")
        op = check_identity(opposite(A), "anti_flexible")
        ledger.record("opposite_anti_flexible", af.passed == op.passed,
                      lambda: {"algebra": algebra_to_json(A)})
        if af.passed:
            lie = check_identity(commutator_algebra(A), "lie")
            ledger.record("commutator_lie", lie.passed,
                          lambda: {"algebra": algebra_to_json(A), "report": lie.to_json()})
            assoc = check_identity(A, "associative")
            if assoc.passed:
                ledger.record("associative_flexible", check_identity(A, "flexible").passed,
                              lambda: {"algebra": algebra_to_json(A)})
    return dict(ledger)


# ----------------------------------------------------------------------
# Rota-Baxter
# ----------------------------------------------------------------------
def sweep_rota_baxter(field, dim=2, weights=None, opts=None, graph=True):
    opts = opts or SweepOptions()
    weights = field.elements() if weights is None else weights
    ledger = _Ledger()
    maps = _maps(field, dim, dim, opts) if graph else []
    for A in _corpus(field, dim, "anti_flexible", opts):
        cyclic = check_identity(A, "cyclic_condition").passed
        for lam in weights:
            hits = list(enumerate_operators(A, OperatorKind.RB, lam,
                                            budget=opts.budget, workers=opts.workers))
            hit_keys = {_key(M) for M in hits}
            for M in maps:
                R = WeightedOperator(M, lam)
                closed = rb_graph_check(A, R)
                ledger.record("rb_graph", closed.passed == (_key(M) in hit_keys),
                              _rb_example(A, R, closed))
                if cyclic:
                    try:
                        conv = rb_converse_report(A, R)
                    except CharacteristicObstruction:
                        continue
                    ledger.record("rb_pair_implies_operator",
                                  (not conv.pair.passed) or conv.operator.passed,
                                  _rb_example(A, R, conv.pair))
            for M in hits:
                _record_rb_hit(ledger, A, WeightedOperator(M, lam))
    return dict(ledger)


def _record_rb_hit(ledger, A, R):
    f = A.field
    induced = rb_induced_product(A, R)
    ledger.record("rb_induced_anti_flexible",
                  check_identity(induced, "anti_flexible").passed, _rb_example(A, R))
    expansion = check(rb_expansion_identity(R.weight),
                      {"mul": A.c, "ind": induced.c, "R": R.matrix}, (A.dim,) * 3, f)
    ledger.record("rb_associator_expansion", expansion.passed, _rb_example(A, R, expansion))
    ledger.record("rb_lie", check_lie_rota_baxter(A, R).passed, _rb_example(A, R))
    ledger.record("rb_induced_homomorphism",
                  check_homomorphism(induced, A, R.map).passed, _rb_example(A, R))

    morphism = check_rb_morphism((induced, R), (A, R), R.map)
    if morphism.passed:
        ledger.record("rb_morphism_graph",
                      rb_morphism_graph_check((induced, R), (A, R), R.map).passed,
                      _rb_example(A, R))

    condition = check_weight_condition(A, R)
    try:
        pair = rb_pre_anti_flexible(A, R)
    except CharacteristicObstruction:
        return
    pair_ok = check_pre_anti_flexible(pair).passed
    ledger.record("rb_pre_anti_flexible_iff", pair_ok == condition.passed,
                  _rb_example(A, R, condition))
    if pair_ok:
        ledger.record("pre_anti_flexible_sum",
                      check_identity(sum_algebra(pair), "anti_flexible").passed,
                      _rb_example(A, R))
        ledger.record("pre_anti_flexible_left_symmetric",
                      check_identity(left_sym_from_pre(pair), "left_symmetric").passed,
                      _rb_example(A, R))
        ledger.record("pre_anti_flexible_right_symmetric",
                      check_identity(right_sym_from_pre(pair), "right_symmetric").passed,
                      _rb_example(A, R))
    if check_dendriform(pair).passed:
        ledger.record("dendriform_pre_anti_flexible", pair_ok, _rb_example(A, R))
    if morphism.passed and pair_ok:
        ledger.record("rb_pair_morphism",
                      check_pair_morphism(rb_pre_anti_flexible(induced, R), pair, R.map).passed,
                      _rb_example(A, R))

    lsym = check_identity(rb_left_symmetric(A, R), "left_symmetric").passed
    rsym = check_identity(rb_right_symmetric(A, R), "right_symmetric").passed
    if condition.passed:
        ledger.record("rb_left_right_symmetric", lsym and rsym, _rb_example(A, R))
    if lsym and rsym:
        ledger.record("rb_left_right_symmetric_converse", condition.passed,
                      _rb_example(A, R, condition))


# ----------------------------------------------------------------------
# Nijenhuis
# ----------------------------------------------------------------------
def sweep_nijenhuis(field, dim=2, opts=None, bridge=True):
    opts = opts or SweepOptions()
    ledger = _Ledger()
    maps = _maps(field, dim, dim, opts) if bridge else []
    for A in _corpus(field, dim, "anti_flexible", opts):
        for N in maps:
            report = nj_rb_bridge(A, N)
            if report.applicable:
                ledger.record("nj_rb_bridge", report.agrees,
                              lambda: dict(_map_example(A, N)(), bridge=report.to_json()))
        for N in enumerate_operators(A, OperatorKind.NIJENHUIS,
                                     budget=opts.budget, workers=opts.workers):
            _record_nj_hit(ledger, A, N)
    return dict(ledger)


def _record_nj_hit(ledger, A, N):
    f = A.field
    induced = nj_induced_product(A, N)
    ledger.record("nj_induced_anti_flexible",
                  check_identity(induced, "anti_flexible").passed, _map_example(A, N))
    expansion = check(NJ_EXPANSION, {"mul": A.c, "ind": induced.c, "N": N.matrix},
                      (A.dim,) * 3, f)
    ledger.record("nj_associator_expansion", expansion.passed, _map_example(A, N, expansion))
    ledger.record("nj_induced_homomorphism",
                  check_homomorphism(induced, A, N).passed, _map_example(A, N))
    try:
        pair = nj_pre_anti_flexible(A, N)
        lsym_algebra = nj_left_symmetric(A, N)
    except CharacteristicObstruction:
        return
    condition = check_nj_condition(A, N)
    pair_ok = check_pre_anti_flexible(pair).passed
    if f.characteristic != 3:
        ledger.record("nj_pre_anti_flexible_iff", pair_ok == condition.passed,
                      _map_example(A, N, condition))
    lsym = check_identity(lsym_algebra, "left_symmetric").passed
    if pair_ok:
        ledger.record("nj_left_symmetric", lsym, _map_example(A, N))
    if lsym:
        ledger.record("nj_left_symmetric_converse", condition.passed,
                      _map_example(A, N, condition))


# ----------------------------------------------------------------------
# pre-Lie 代数上の変形
# ----------------------------------------------------------------------
def sweep_pre_lie_variants(field, dim=2, weights=(0,), opts=None):
    """左対称代数上の Rota-Baxter / Nijenhuis 作用素の誘導積も左対称か"""
    opts = opts or SweepOptions()
    ledger = _Ledger()
    for A in _corpus(field, dim, "left_symmetric", opts):
        for lam in weights:
            for M in enumerate_operators(A, OperatorKind.RB, lam,
                                         budget=opts.budget, workers=opts.workers):
                R = WeightedOperator(M, lam)
                ledger.record("rb_pre_lie_induced",
                              check_identity(rb_induced_product(A, R), "left_symmetric").passed,
                              _rb_example(A, R))
        for N in enumerate_operators(A, OperatorKind.NIJENHUIS,
                                     budget=opts.budget, workers=opts.workers):
            ledger.record("nj_pre_lie_induced",
                          check_identity(nj_induced_product(A, N), "left_symmetric").passed,
                          _map_example(A, N))
    return dict(ledger)


# ----------------------------------------------------------------------
# 双加群と O-作用素
# ----------------------------------------------------------------------
def corpus_bimodules(A):
    """各代数に付随する双加群（随伴・双対・零作用）"""
    return (("adjoint", adjoint_bimodule(A)), ("dual", dual_bimodule(A)),
            ("zero", zero_bimodule(A, A.dim)))


def sweep_o_operators(field, dim=2, weights=None, opts=None):
    opts = opts or SweepOptions()
    weights = field.elements() if weights is None else weights
    ledger = _Ledger()
    maps = _maps(field, dim, dim, opts)
    for A in _corpus(field, dim, "anti_flexible", opts):
        for kind, B in corpus_bimodules(A):
            valid = check_bimodule(B)
            if kind in ("adjoint", "dual"):
                ledger.record(f"{kind}_bimodule", valid.passed,
                              lambda: {"bimodule": bimodule_to_json(B), "report": valid.to_json()})
            if not valid.passed:
                continue
            ledger.record("semidirect_anti_flexible",
                          check_identity(semidirect_product(B), "anti_flexible").passed,
                          lambda: {"bimodule": bimodule_to_json(B)})
            for T in maps:
                _record_o_candidate(ledger, kind, B, T, weights)
    return dict(ledger)


def _record_o_candidate(ledger, kind, B, T, weights):
    o = check_o_operator(B, T).passed
    example = _o_example(B, T)
    induced_af = check_identity(o_induced_module_algebra(B, T), "anti_flexible").passed
    if o:
        ledger.record("o_induced_anti_flexible", induced_af, example)
    if induced_af:
        ledger.record("o_induced_anti_flexible_converse", o, example)
    ledger.record("o_graph", o_graph_check(B, T).passed == o, example)
    if kind == "adjoint":
        rb = check_rota_baxter(B.algebra, WeightedOperator(T, 0)).passed
        ledger.record("adjoint_o_operator_rota_baxter", rb == o, example)
    S = semidirect_product(B)
    for lam in weights:
        lifted = check_rota_baxter(S, lift_rb_from_o(B, T, lam)).passed
        ledger.record("o_lift_rota_baxter", lifted == o, example)
    for variant in (LiftVariant.NILPOTENT, LiftVariant.IDEMPOTENT):
        lifted = check_nijenhuis(S, lift_nijenhuis_from_o(B, T, variant)).passed
        ledger.record("o_lift_nijenhuis", lifted == o, example)
    if not o:
        return

    pair = o_pre_anti_flexible(B, T)
    ledger.record("o_pre_anti_flexible", check_pre_anti_flexible(pair).passed, example)
    star = o_left_symmetric(B, T)
    ledger.record("o_left_symmetric", check_identity(star, "left_symmetric").passed, example)
    ledger.record("o_left_symmetric_from_pair",
                  compare_products("o_left_symmetric_from_pair", left_sym_from_pre(pair), star).passed,
                  example)
    ledger.record("o_right_symmetric_from_pair",
                  check_identity(right_sym_from_pre(pair), "right_symmetric").passed, example)
    negated = o_right_symmetric(B, T)
    ledger.record("o_right_symmetric_negation",
                  bool(np.all(negated.c == B.field.reduce(-star.c))), example)
    ledger.record("o_right_symmetric_stated",
                  check_identity(negated, "right_symmetric").passed, example)

    extended = check_bimodule(extended_bimodule(B, T))
    ledger.record("extended_bimodule", extended.passed, _o_example(B, T, extended))

    f = B.field
    ident_A = LinearMap.identity(f, B.dim)
    ident_M = LinearMap.identity(f, B.moddim)
    if check_o_morphism((B, T), (B, T), ident_A, ident_M).passed:
        ledger.record("o_morphism_graph",
                      o_morphism_graph_check((B, T), (B, T), ident_A, ident_M).passed, example)
        ledger.record("o_pair_morphism", check_pair_morphism(pair, pair, ident_M).passed, example)


# ----------------------------------------------------------------------
# シンプレクティック形式
# ----------------------------------------------------------------------
def sweep_symplectic(field, form, dim=2, opts=None):
    opts = opts or SweepOptions()
    ledger = _Ledger()
    for A in _corpus(field, dim, "anti_flexible", opts):
        if not check_cyclic_form(A, form).passed:
            continue
        example = lambda: {"algebra": algebra_to_json(A)}
        ledger.record("symplectic_lie", check_symplectic_lie(A, form).passed, example)
        P = pre_lie_from_symplectic(A, form)
        ledger.record("symplectic_pre_lie", check_identity(P, "left_symmetric").passed, example)
        ledger.record("symplectic_residual", symplectic_residual(A, form, P).passed, example)
    return dict(ledger)


# ----------------------------------------------------------------------
# 冪の性質（記録のみ）
# ----------------------------------------------------------------------
@dataclass
class PowerFindings:
    kind: str
    maxpq: int
    cases: list = dc_field(default_factory=list)

    def add(self, case, suite):
        self.cases.append({"case": case, "suite": suite.to_json()})

    @property
    def counterexamples(self):
        return [c for c in self.cases if c["suite"]["result"] == "fail"]

    def to_json(self):
        return {
            "kind": self.kind,
            "maxpq": self.maxpq,
            "checked": len(self.cases),
            "failed": len(self.counterexamples),
            "counterexamples": self.counterexamples,
        }


def rb_power_findings(maxpq=3, fixtures=(), field=None, weights=(0, 1), opts=None):
    """fixtures は (名前, A, R) の列。加えて field 上の RB 作用素を列挙して使う"""
    opts = opts or SweepOptions()
    findings = PowerFindings("rota_baxter", maxpq)
    for name, A, R in fixtures:
        findings.add({"fixture": name}, rb_power_suite(A, R, maxpq))
    if field is not None:
        for A in _corpus(field, 2, "anti_flexible", opts):
            for lam in weights:
                for M in enumerate_operators(A, OperatorKind.RB, lam, budget=opts.budget):
                    R = WeightedOperator(M, lam)
                    findings.add(_rb_example(A, R)(), rb_power_suite(A, R, maxpq))
    return findings


def nj_power_findings(maxpq=3, fixtures=(), field=None, opts=None):
    opts = opts or SweepOptions()
    findings = PowerFindings("nijenhuis", maxpq)
    for name, A, N in fixtures:
        findings.add({"fixture": name}, nj_power_suite(A, N, maxpq))
    if field is not None:
        for A in _corpus(field, 2, "anti_flexible", opts):
            for N in enumerate_operators(A, OperatorKind.NIJENHUIS, budget=opts.budget):
                findings.add(_map_example(A, N)(), nj_power_suite(A, N, maxpq))
    return findings


def write_findings(findings, name, findings_dir=None):
    directory = get_findings_dir(findings_dir or "findings")
    path = os.path.join(directory, name)
    if not is_subpath(path, directory):
        raise InputFormatError(f"findings name escapes the findings directory: {name!r}")
    os.makedirs(directory, exist_ok=True)
    write_json(path, findings.to_json())
    log_info(f"調査結果を書き出しました: {path} (反例 {len(findings.counterexamples)} 件)")
    return path


def demo_power_findings(maxpq=3, opts=None):
    """demo --findings で書き出すもの（ファイル名 → PowerFindings）

    例題 D とその Rota-Baxter 作用素に、F_3 上のコーパスの作用素を加える。
    """
    F3 = small_field(3)
    D, R = build_fixture("D"), build_fixture("D_rb")
    return {
        "rota_baxter_powers.json": rb_power_findings(maxpq, [("D", D, R)], F3, opts=opts),
        "nijenhuis_powers.json": nj_power_findings(maxpq, [("D", D, R.map)], F3, opts=opts),
    }


# ----------------------------------------------------------------------
# まとめて実行
# ----------------------------------------------------------------------
def small_field(p):
    return FieldSpec.prime(p, allow_small=True)


def run_all(opts=None):
    """demo から使う既定の組み合わせ"""
    opts = opts or SweepOptions()
    F2, F3, F5 = small_field(2), small_field(3), FieldSpec.prime(5)
    sweeps = {
        "algebras": lambda: sweep_opposite_commutator(F2, 2, opts),
        "rota_baxter": lambda: sweep_rota_baxter(F3, 2, opts=opts),
        "rota_baxter_f5": lambda: sweep_rota_baxter(F5, 2, weights=(0, 1), opts=opts, graph=False),
        "nijenhuis": lambda: sweep_nijenhuis(F5, 2, opts),
        "pre_lie": lambda: sweep_pre_lie_variants(F3, 2, opts=opts),
        "o_operators": lambda: sweep_o_operators(F2, 2, opts=opts),
        "symplectic": lambda: sweep_symplectic(F5, BilinearForm.standard_symplectic(F5, 2), 2, opts),
    }
    out = {}
    for name, run in sweeps.items():
        log_info(f"照合中: {name}")
        out[name] = run()
    return out
