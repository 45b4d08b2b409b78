"""In-process simulation of the one-shot protocol: d encoder machines and a central learner.

Every machine sees only its own column and the shared config, sends exactly one
message of ``m * R`` bits over an error-free channel, and the center runs the
Chow-Liu pipeline that matches the encoding scheme.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .chowliu import EstimatedTree, kruskal_mwst, weights_from_persym, weights_from_signs
from .errors import DataError, ParameterError
from .estimators import sample_corr
from .ggm import ShardSet, check_covariance, sample_gaussian
from .quantizers import MAX_RATE, QuantizedShard, build_codebook, decode, persym_encode, sign_encode
from .trials import trial_seed

COMM_CSV_HEADER = ("scheme", "R", "n", "m", "d", "bits_per_machine", "total_bits")


@dataclass(frozen=True)
class ProtocolConfig:
    scheme: str = "sign"
    R: int = 1
    budget_bits: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.scheme not in ("sign", "persym"):
            raise ParameterError(f"scheme must be 'sign' or 'persym', got {self.scheme!r}")
        if self.scheme == "sign" and self.R != 1:
            raise ParameterError("the sign scheme sends exactly 1 bit per sample")
        if not isinstance(self.R, (int, np.integer)) or not 1 <= self.R <= MAX_RATE:
            raise ParameterError(f"R must be an integer in [1, {MAX_RATE}], got {self.R!r}")
        if self.budget_bits is not None and self.budget_bits < 0:
            raise ParameterError(f"budget_bits must be >= 0, got {self.budget_bits}")

    def samples_sent(self, n: int) -> int:
        """How many leading samples fit in the per-machine bit budget."""
        m = n if self.budget_bits is None else min(n, self.budget_bits // self.R)
        if m < 1:
            raise ParameterError(
                f"budget of {self.budget_bits} bits cannot carry one {self.R}-bit sample"
            )
        return m


@dataclass(frozen=True)
class Message:
    """One machine's transmission: ``m`` bin indices packed at ``R`` bits each."""

    machine_id: int
    scheme: str
    R: int
    m: int
    payload: bytes

    @property
    def bits(self) -> int:
        return self.m * self.R

    @classmethod
    def pack(cls, q: QuantizedShard) -> Message:
        zero_based = (q.indices - 1).astype(">u2")
        bits = np.unpackbits(zero_based.view(np.uint8)).reshape(-1, 16)[:, 16 - q.R :]
        return cls(q.machine_id, q.scheme, q.R, q.n, np.packbits(bits.ravel()).tobytes())

    def unpack(self) -> QuantizedShard:
        bits = np.unpackbits(np.frombuffer(self.payload, dtype=np.uint8))[: self.m * self.R]
        full = np.zeros((self.m, 16), dtype=np.uint8)
        full[:, 16 - self.R :] = bits.reshape(self.m, self.R)
        idx = np.packbits(full, axis=1).view(">u2").ravel().astype(np.int64) + 1
        return QuantizedShard(self.machine_id, self.R, idx, scheme=self.scheme)


@dataclass(frozen=True)
class CommReport:
    scheme: str
    R: int
    n: int
    samples_transmitted: int
    machines: int
    bits_per_machine: int
    total_bits: int

    def csv_row(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow(
            (self.scheme, self.R, self.n, self.samples_transmitted, self.machines,
             self.bits_per_machine, self.total_bits)
        )
        return buf.getvalue()


class Machine:
    """Encoder for one column; holds nothing else."""

    def __init__(self, machine_id: int, column):
        self.machine_id = machine_id
        self._column = np.asarray(column, dtype=float)

    def encode(self, cfg: ProtocolConfig) -> Message:
        x = self._column[: cfg.samples_sent(len(self._column))]
        if cfg.scheme == "sign":
            q = sign_encode(x, self.machine_id)
        else:
            q = persym_encode(x, build_codebook(cfg.R), self.machine_id)
        return Message.pack(q)


class Center:
    def __init__(self, cfg: ProtocolConfig, d: int):
        self.cfg = cfg
        self.d = d
        self.inbox: dict[int, QuantizedShard] = {}

    def receive(self, msg: Message):
        if msg.machine_id in self.inbox:
            raise DataError(f"machine {msg.machine_id} already sent its message")
        if msg.scheme != self.cfg.scheme or msg.R != self.cfg.R:
            raise DataError(f"machine {msg.machine_id} used a different encoder")
        self.inbox[msg.machine_id] = msg.unpack()

    def shards(self) -> list[QuantizedShard]:
        if sorted(self.inbox) != list(range(self.d)):
            raise DataError("messages missing from some machines")
        return [self.inbox[j] for j in range(self.d)]

    def learn(self) -> EstimatedTree:
        shards = self.shards()
        if self.cfg.scheme == "sign":
            return kruskal_mwst(weights_from_signs(shards))
        return kruskal_mwst(weights_from_persym(shards, build_codebook(self.cfg.R)))


def run_protocol(shards: ShardSet, cfg: ProtocolConfig) -> tuple[EstimatedTree, CommReport]:
    machines = [Machine(j, col) for j, col in enumerate(shards)]
    center = Center(cfg, shards.d)
    sent = 0
    for machine in machines:
        msg = machine.encode(cfg)
        sent += msg.bits
        center.receive(msg)
    m = cfg.samples_sent(shards.n)
    report = CommReport(cfg.scheme, cfg.R, shards.n, m, shards.d, m * cfg.R, sent)
    return center.learn(), report


@dataclass(frozen=True)
class BudgetRow:
    R: int
    m: int
    err_est: float
    stderr: float


def budget_sweep(cov, n: int, K: int, R_list, trials: int, seed: int = 0,
                 pair: tuple[int, int] = (0, 1)) -> list[BudgetRow]:
    """Mean |rho - rho_bar_q| for a fixed per-machine budget of ``K`` bits.

    Each trial draws ``n`` fresh samples from N(0, cov) and reuses them for every
    rate, so rates are compared on common random numbers.
    """
    R_list = [int(R) for R in R_list]
    if not R_list:
        raise ParameterError("R_list is empty")
    if K < max(R_list):
        raise ParameterError(f"budget K={K} is smaller than max rate {max(R_list)}")
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    cov = check_covariance(cov)
    j, k = pair
    rho = cov[j, k]
    sub = cov[np.ix_([j, k], [j, k])]
    cfgs = [ProtocolConfig("persym", R, budget_bits=K, seed=seed) for R in R_list]
    errs = np.empty((trials, len(R_list)))
    for t in range(trials):
        x = sample_gaussian(sub, n, trial_seed(seed, t))
        a, b = Machine(j, x[:, 0]), Machine(k, x[:, 1])
        for c, cfg in enumerate(cfgs):
            cb = build_codebook(cfg.R)
            ua = decode(a.encode(cfg).unpack(), cb)
            ub = decode(b.encode(cfg).unpack(), cb)
            errs[t, c] = abs(rho - sample_corr(ua, ub))
    means = errs.mean(axis=0)
    ses = errs.std(axis=0, ddof=1) / np.sqrt(trials) if trials > 1 else np.zeros(len(R_list))
    return [
        BudgetRow(cfg.R, cfg.samples_sent(n), float(mu), float(se))
        for cfg, mu, se in zip(cfgs, means, ses)
    ]
