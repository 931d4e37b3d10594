"""Deterministic per-trial seeds."""

import hashlib
import struct

_MASK = (1 << 64) - 1


def derive_trial_seed(master_seed: int, r: int, K: int, trial_index: int) -> int:
    """Mix four integers into one 64-bit seed.

    Each input is reduced mod 2**64 and packed as little-endian uint64; the
    seed is the first 8 bytes (little-endian) of the BLAKE2b-64 digest of
    that 32-byte string under the key ``b"rcga-trial"``.  This mapping is
    part of the reproducibility contract and must not change.
    """
    data = struct.pack("<4Q", *(v & _MASK for v in (master_seed, r, K, trial_index)))
    digest = hashlib.blake2b(data, digest_size=8, key=b"rcga-trial").digest()
    return int.from_bytes(digest, "little")
