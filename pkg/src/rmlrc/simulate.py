"""Seeded failure/repair simulation with bandwidth accounting."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParams, RankDeficient
from .lrc import CodeParams, LocallyRepairableCode


@dataclass(frozen=True)
class SimConfig:
    params: CodeParams
    rounds: int
    failures: str = "fixed:1"  # fixed:K | poisson:LAM | bernoulli:P
    seed: int = 0
    policy: str = "local-first"
    inject: dict[int, tuple[int, ...]] = field(default_factory=dict)


def _failure_sampler(spec: str):
    kind, _, arg = spec.partition(":")
    try:
        val = float(arg)
    except ValueError:
        raise InvalidParams(f"bad failure distribution {spec!r}") from None
    if kind == "fixed" and val >= 0 and val == int(val):
        return lambda rng, alive: min(int(val), alive)
    if kind == "poisson" and val >= 0:
        return lambda rng, alive: min(int(rng.poisson(val)), alive)
    if kind == "bernoulli" and 0 <= val <= 1:
        return lambda rng, alive: int(rng.binomial(alive, val))
    raise InvalidParams(f"bad failure distribution {spec!r}")


def simulate(cfg: SimConfig) -> dict:
    if cfg.policy != "local-first":
        raise InvalidParams(f"unknown repair policy {cfg.policy!r}")
    if cfg.rounds < 0:
        raise InvalidParams("rounds must be non-negative")
    draw = _failure_sampler(cfg.failures)
    code = LocallyRepairableCode(cfg.params)
    p = cfg.params
    rng = np.random.default_rng(cfg.seed)
    file = code.field.random(rng, p.M)
    original = code.encode(file)
    store = original.available()

    stats = dict(rounds=cfg.rounds, failures_injected=0, local_repairs=0,
                 global_reconstructs=0, loss_events=0, patterns_beyond_dmin=0,
                 symbols_downloaded=0, local_symbols_downloaded=0,
                 global_symbols_downloaded=0, local_nodes_contacted=0)
    losses = []
    for rnd in range(cfg.rounds):
        forced = [v for v in cfg.inject.get(rnd, ()) if v in store]
        alive = [i for i in sorted(store) if i not in forced]
        k = draw(rng, len(alive))
        victims = set(forced)
        if k:
            victims |= {int(v) for v in rng.choice(alive, size=k, replace=False)}
        for v in victims:
            del store[v]
        stats["failures_injected"] += len(victims)
        if not victims:
            continue
        if len(victims) >= p.dmin:
            stats["patterns_beyond_dmin"] += 1

        pending = []
        for v in sorted(victims):
            g = code.group_of(v)
            if sum(1 for nid in g.nodes if nid not in store) <= p.delta - 1:
                res = code.local_repair(store, v)
                assert np.array_equal(res.block.symbols, original.shares[v].symbols)
                store[v] = res.block
                stats["local_repairs"] += 1
                stats["local_nodes_contacted"] += len(res.contacted)
                stats["local_symbols_downloaded"] += res.symbols_downloaded
            else:
                pending.append(v)
        if not pending:
            continue
        try:
            recovered = code.reconstruct(store)
        except RankDeficient:
            stats["loss_events"] += 1
            losses.append({"round": rnd, "failed": sorted(pending)})
            store = original.available()  # restore from backup and carry on
            continue
        assert np.array_equal(recovered, file)
        stats["global_reconstructs"] += 1
        stats["global_symbols_downloaded"] += len(store) * p.alpha
        fresh = code.encode(recovered)
        for v in pending:
            store[v] = fresh.shares[v]

    stats["symbols_downloaded"] = stats["local_symbols_downloaded"] + stats["global_symbols_downloaded"]
    stats["mean_nodes_contacted_per_local_repair"] = (
        stats["local_nodes_contacted"] / stats["local_repairs"] if stats["local_repairs"] else 0.0)
    stats["loss_log"] = losses
    stats["final_integrity"] = all(
        np.array_equal(store[b.node_id].symbols, b.symbols) for b in original.shares)
    stats["config"] = {"params": p.to_dict(), "failures": cfg.failures, "seed": cfg.seed,
                       "policy": cfg.policy,
                       "inject": {str(k): list(v) for k, v in sorted(cfg.inject.items())}}
    return stats
