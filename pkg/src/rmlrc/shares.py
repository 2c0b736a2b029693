"""Binary share files and the byte <-> symbol bridge.

Layout of ``node_<id>.lrc`` (all integers little-endian)::

    magic            4s   b"LRC1"
    version          u8   1
    n M r delta alpha s m N            8 x u32
    node_id group_id                   2 x u32
    is_parity        u8
    original_length  u64  bytes of input carried by this codeword
    payload          alpha elements, ceil(s*m/8) bytes each

A symbol carries floor(s*m/8) bytes of input, so every byte string maps
injectively into F_{q^m}; the serialized element is ceil(s*m/8) bytes wide.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidParams, LRCError, NotOptimalConfiguration
from .gf import ExtField
from .lrc import CodeParams, LocallyRepairableCode, derive_params
from .mds import NodeBlock

MAGIC = b"LRC1"
VERSION = 1
HEADER = struct.Struct("<4sB8I2IBQ")


class ShareFormatError(LRCError):
    pass


@dataclass(frozen=True)
class ShareHeader:
    n: int
    M: int
    r: int
    delta: int
    alpha: int
    s: int
    m: int
    N: int
    node_id: int
    group_id: int
    is_parity: bool
    original_length: int

    def code_key(self) -> tuple:
        return (self.n, self.M, self.r, self.delta, self.alpha, self.s, self.m, self.N,
                self.original_length)


def share_name(node_id: int) -> str:
    return f"node_{node_id}.lrc"


def payload_bytes_per_symbol(field: ExtField) -> int:
    pb = (field.s * field.m) // 8
    if pb < 1:
        raise InvalidParams(f"GF({field.q}^{field.m}) holds fewer than 8 bits per symbol")
    return pb


def bytes_to_symbols(field: ExtField, data: bytes, count: int) -> np.ndarray:
    pb = payload_bytes_per_symbol(field)
    if len(data) > pb * count:
        raise ValueError(f"{len(data)} bytes do not fit in {count} symbols of {pb} bytes")
    data = data.ljust(pb * count, b"\0")
    return np.stack([field.from_int(int.from_bytes(data[i * pb:(i + 1) * pb], "little"))
                     for i in range(count)]) if count else field.zeros(0)


def symbols_to_bytes(field: ExtField, symbols: np.ndarray, length: int) -> bytes:
    pb = payload_bytes_per_symbol(field)
    out = b"".join(field.to_int(s).to_bytes(pb, "little") for s in symbols)
    return out[:length]


def encode_share(code: LocallyRepairableCode, block: NodeBlock, original_length: int) -> bytes:
    p, F = code.params, code.field
    head = HEADER.pack(MAGIC, VERSION, p.n, p.M, p.r, p.delta, p.alpha, p.s, p.m, p.N,
                       block.node_id, block.group_id, int(block.is_parity), original_length)
    return head + b"".join(F.to_bytes(sym) for sym in block.symbols)


def decode_share(raw: bytes) -> tuple[ShareHeader, bytes]:
    if len(raw) < HEADER.size:
        raise ShareFormatError("share file is truncated")
    magic, version, *rest = HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise ShareFormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise ShareFormatError(f"unsupported share version {version}")
    rest[10] = bool(rest[10])
    return ShareHeader(*rest), raw[HEADER.size:]


def params_from_header(h: ShareHeader) -> CodeParams:
    args = (h.n, h.M, h.r, h.delta, h.alpha, 1 << h.s)
    try:
        p = derive_params(*args, m=h.m)
    except NotOptimalConfiguration:
        p = derive_params(*args, m=h.m, force=True)
    if p.N != h.N:
        raise ShareFormatError(f"header N={h.N} disagrees with derived N={p.N}")
    return p


def block_from_payload(code: LocallyRepairableCode, h: ShareHeader, payload: bytes) -> NodeBlock:
    F, a = code.field, code.params.alpha
    w = F.nbytes
    if len(payload) != a * w:
        raise ShareFormatError(f"payload is {len(payload)} bytes, expected {a * w}")
    syms = np.stack([F.from_bytes(payload[i * w:(i + 1) * w]) for i in range(a)])
    if h.group_id != code.group_of(h.node_id).index or h.is_parity != code.is_parity(h.node_id):
        raise ShareFormatError(f"node {h.node_id} metadata does not match the code layout")
    return NodeBlock(h.node_id, h.group_id, h.is_parity, syms)


def write_share(path: Path, code: LocallyRepairableCode, block: NodeBlock, original_length: int) -> None:
    Path(path).write_bytes(encode_share(code, block, original_length))


@dataclass
class Stripe:
    """Shares of one codeword found in a directory."""

    path: Path
    code: LocallyRepairableCode
    original_length: int
    blocks: dict[int, NodeBlock]


_code_cache: dict[tuple, LocallyRepairableCode] = {}


def _code_for(h: ShareHeader) -> LocallyRepairableCode:
    key = h.code_key()[:-1]
    if key not in _code_cache:
        _code_cache[key] = LocallyRepairableCode(params_from_header(h))
    return _code_cache[key]


def load_stripe(path: Path) -> Stripe:
    path = Path(path)
    headers, blocks = [], {}
    for f in sorted(path.glob("node_*.lrc")):
        h, payload = decode_share(f.read_bytes())
        if f.name != share_name(h.node_id):
            raise ShareFormatError(f"{f.name} holds node {h.node_id}")
        headers.append((h, payload))
    if not headers:
        raise ShareFormatError(f"no shares found in {path}")
    key = headers[0][0].code_key()
    for h, _ in headers:
        if h.code_key() != key:
            raise ShareFormatError(f"share headers in {path} disagree")
    code = _code_for(headers[0][0])
    for h, payload in headers:
        blocks[h.node_id] = block_from_payload(code, h, payload)
    return Stripe(path, code, headers[0][0].original_length, blocks)


def stripe_dirs(root: Path) -> list[Path]:
    """Stripe directories under ``root``; ``root`` itself if it holds shares."""
    root = Path(root)
    if any(root.glob("node_*.lrc")):
        return [root]
    dirs = sorted(d for d in root.glob("stripe_*") if d.is_dir())
    if not dirs:
        raise ShareFormatError(f"no stripes or shares under {root}")
    return dirs
