"""有限体上の全数探索

候補は平坦化したテンソルの成分を p 進数の桁とみなした辞書式順で並べ、
chunk_size 個ずつまとめて恒等式エンジンで判定する。チャンクはスレッドで
並列に評価するが、結果は常にチャンク順に流す。
"""

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import time

import numpy as np

from modules.algcore import Algebra, LinearMap
from modules.errors import InvalidField, SearchSpaceTooLarge
from modules.identities import IDENTITIES, holds, identity_name
from modules.nijenhuis import NIJENHUIS
from modules.omod import O_OPERATOR, ModuleOperator
from modules.rota import rota_baxter_identity
from modules.utils.logwriter import log_debug

DEFAULT_BUDGET = 10_000_000
DEFAULT_CHUNK = 4096
INDEX_LIMIT = np.iinfo(np.int64).max


class OperatorKind:
    RB = "rb"
    NIJENHUIS = "nijenhuis"


@dataclass
class SearchStats:
    """探索の集計。ジェネレータを最後まで回すと確定する"""

    scanned: int = 0
    count: int = 0
    elapsed: float = 0.0

    def to_json(self, timing=False):
        out = {"summary": True, "count": self.count, "scanned": self.scanned}
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def search_space_size(field, entries):
    return field.p ** entries


def _require_prime(field):
    if not field.is_prime:
        raise InvalidField("exhaustive search needs a prime field")


def _candidates(p, shape, start, stop):
    """添字 start..stop-1 の候補テンソル（先頭成分が最上位桁）"""
    entries = int(np.prod(shape, dtype=np.int64))
    rest = np.arange(start, stop, dtype=np.int64)
    digits = np.zeros((len(rest), entries), dtype=np.int64)
    # 最下位桁から割っていくので途中の値は添字を超えない
    for k in range(entries - 1, -1, -1):
        rest, digits[:, k] = np.divmod(rest, p)
    return digits.reshape((len(digits),) + tuple(shape))


def _emit(stats, result):
    scanned, hits = result
    stats.scanned += scanned
    for hit in hits:
        stats.count += 1
        yield hit


def _scan(field, shape, accept, budget=None, workers=1, chunk_size=None, stats=None, label=""):
    """全候補を走査し、accept を満たすものを辞書式順に返す

    並列時に同時に投入するチャンクは 2 × workers 個まで。
    """
    _require_prime(field)
    budget = DEFAULT_BUDGET if budget is None else budget
    chunk_size = chunk_size or DEFAULT_CHUNK
    entries = int(np.prod(shape, dtype=np.int64))
    total = search_space_size(field, entries)
    # 候補の添字は int64 で持つ
    if total > min(budget, INDEX_LIMIT):
        raise SearchSpaceTooLarge(total, budget)
    stats = stats if stats is not None else SearchStats()
    log_debug(f"探索開始: {label} 候補数 {total} (並列数 {workers})")
    started = time.perf_counter()

    def run(bounds):
        start, stop = bounds
        batch = _candidates(field.p, shape, start, stop)
        mask = accept(batch)
        return stop - start, batch[np.asarray(mask, dtype=bool)]

    bounds = ((s, min(s + chunk_size, total)) for s in range(0, total, chunk_size))
    try:
        if workers <= 1:
            for b in bounds:
                yield from _emit(stats, run(b))
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                pending = deque()
                try:
                    for b in bounds:
                        pending.append(pool.submit(run, b))
                        if len(pending) >= 2 * workers:
                            yield from _emit(stats, pending.popleft().result())
                    while pending:
                        yield from _emit(stats, pending.popleft().result())
                finally:
                    for future in pending:
                        future.cancel()
    finally:
        stats.elapsed = time.perf_counter() - started
        log_debug(f"探索終了: {label} 走査 {stats.scanned} 件, 該当 {stats.count} 件")


def enumerate_algebras(field, dim, filter=None, *, budget=None, workers=1, chunk_size=None,
                       stats=None):
    """構造定数テンソルを全列挙し、filter の恒等式を満たすものを返す"""
    n = dim
    clauses = IDENTITIES[identity_name(filter)] if filter else ()

    def accept(batch):
        mask = np.ones(len(batch), dtype=bool)
        for ident in clauses:
            mask &= holds(ident, {"mul": batch}, (n,) * ident.arity, field)
        return mask

    for c in _scan(field, (n, n, n), accept, budget, workers, chunk_size, stats,
                   label=f"algebras dim={n} filter={filter}"):
        yield Algebra(field, c)


def enumerate_operators(A, kind, weight=0, *, budget=None, workers=1, chunk_size=None,
                        stats=None):
    """A 上の n×n 行列のうち Rota-Baxter（重み weight）または Nijenhuis のもの"""
    field = A.field
    n = A.dim
    if kind == OperatorKind.RB:
        ident, opname = rota_baxter_identity(field.element(weight)), "R"
    elif kind == OperatorKind.NIJENHUIS:
        ident, opname = NIJENHUIS, "N"
    else:
        raise ValueError(f"unknown operator kind {kind!r}")
    log_debug(f"演算子探索: kind={kind} weight={weight}")

    def accept(batch):
        return holds(ident, {"mul": A.c, opname: batch}, (n, n), field)

    for matrix in _scan(field, (n, n), accept, budget, workers, chunk_size, stats,
                        label=f"{kind} operators dim={n}"):
        yield LinearMap(field, matrix)


def enumerate_o_operators(B, *, budget=None, workers=1, chunk_size=None, stats=None):
    field = B.field
    n, m = B.dim, B.moddim

    def accept(batch):
        return holds(O_OPERATOR, dict(B.ops, T=batch), (m, m), field)

    for matrix in _scan(field, (n, m), accept, budget, workers, chunk_size, stats,
                        label=f"O-operators {n}x{m}"):
        yield ModuleOperator(LinearMap(field, matrix))


def enumerate_maps(field, rows, cols, *, budget=None, workers=1, chunk_size=None, stats=None):
    """rows×cols 行列を条件なしで全列挙"""
    def accept(batch):
        return np.ones(len(batch), dtype=bool)

    for matrix in _scan(field, (rows, cols), accept, budget, workers, chunk_size, stats,
                        label=f"maps {rows}x{cols}"):
        yield LinearMap(field, matrix)
