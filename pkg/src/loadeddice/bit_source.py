"""Fair-bit sources with exact accounting of bits and generator calls."""

import numpy as np

WORD_BITS = 64
MASK64 = (1 << 64) - 1
DEFAULT_SEED = 0

_GAMMA = 0x9E3779B97F4A7C15


class ReplayExhausted(RuntimeError):
    """A scripted bit source ran out of bits."""


class BitSource:
    """Lazily drawn unbiased bits, buffered one 64-bit word at a time.

    Words come from SplitMix64 seeded with ``seed`` (seed 0 is the library
    default stream). Bits leave the buffered word most-significant first.
    ``bits_consumed`` counts flips, ``prng_calls`` counts word refills.
    """

    supports_kernels = True

    def __init__(self, seed=DEFAULT_SEED):
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = seed
        self._state = seed
        self.buffer = 0
        self.buffer_pos = 0
        self.bits_consumed = 0
        self.prng_calls = 0

    def next_word(self):
        """Advance the generator and return its next 64-bit output."""
        self._state = (self._state + _GAMMA) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def flip(self):
        if self.buffer_pos == 0:
            self.buffer = self.next_word()
            self.buffer_pos = WORD_BITS
            self.prng_calls += 1
        self.buffer_pos -= 1
        self.bits_consumed += 1
        return (self.buffer >> self.buffer_pos) & 1

    def flips(self, k):
        """Return the integer formed by ``k`` flips, first flip most significant."""
        w = 0
        for _ in range(k):
            w = 2 * w + self.flip()
        return w

    def reset_counters(self):
        self.bits_consumed = 0
        self.prng_calls = 0

    def export_state(self):
        return np.array(
            [self._state, self.buffer, self.buffer_pos, self.bits_consumed, self.prng_calls],
            dtype=np.uint64,
        )

    def import_state(self, st):
        self._state, self.buffer, self.buffer_pos, self.bits_consumed, self.prng_calls = (
            int(x) for x in st
        )

    def __repr__(self):
        return (
            f"{type(self).__name__}(seed={self.seed}, bits_consumed={self.bits_consumed}, "
            f"prng_calls={self.prng_calls})"
        )


class ReplayBitSource(BitSource):
    """Replays a fixed bit script; running past its end raises ReplayExhausted.

    There is no generator behind a replay, so ``prng_calls`` stays 0.
    """

    supports_kernels = False

    def __init__(self, bits):
        super().__init__()
        self.script = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in self.script):
            raise ValueError("replay script may only contain 0 and 1")
        self.cursor = 0

    @classmethod
    def from_text(cls, text):
        """Parse ASCII '0'/'1' characters, ignoring whitespace."""
        bits = []
        for ch in text:
            if ch.isspace():
                continue
            if ch not in "01":
                raise ValueError(f"invalid character {ch!r} in bit file")
            bits.append(int(ch))
        return cls(bits)

    @classmethod
    def from_file(cls, path):
        with open(path) as f:
            return cls.from_text(f.read())

    @property
    def remaining(self):
        return len(self.script) - self.cursor

    def next_word(self):
        raise TypeError("ReplayBitSource has no underlying generator")

    def flip(self):
        if self.cursor >= len(self.script):
            raise ReplayExhausted(f"replay script exhausted after {self.cursor} bits")
        b = self.script[self.cursor]
        self.cursor += 1
        self.bits_consumed += 1
        return b

    def export_state(self):
        raise TypeError("ReplayBitSource cannot run batch kernels")
