"""Named, independent random substreams derived from one master seed.

Each pipeline stage draws from its own stream so that changing how many
numbers one stage consumes never shifts another stage's draws.
"""

import zlib

import numpy as np


def _word(name: str) -> int:
    return zlib.crc32(name.encode("utf-8"))


def substream(seed: int, *names: str) -> np.random.Generator:
    """Generator for the stream ``seed/names[0]/names[1]/...``."""
    key = tuple(_word(n) for n in names)
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=key)
    return np.random.Generator(np.random.PCG64(ss))
