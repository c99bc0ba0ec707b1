# BrightStego 🚀 AGPL-3.0 License
"""Payload framing: byte messages <-> length-prefixed MSB-first bit streams consumed in fixed-size chunks."""

import struct
from dataclasses import dataclass

import numpy as np

from utils import StegoError

HEADER_BITS = 32  # big-endian byte count
MAX_MESSAGE_BYTES = 2**32 - 1
CHUNK_BITS = 3


class MessageTooLarge(StegoError):
    """The message length does not fit the 32-bit length header."""


class CorruptFrame(StegoError):
    """The bit stream is shorter than its length header demands."""


@dataclass(frozen=True, eq=False)
class BitStream:
    """Immutable ordered sequence of 0/1 values, iterated as 3-bit MSB-first chunks with a zero-padded tail."""

    bits: np.ndarray

    def __post_init__(self):
        """Coerces `bits` to a read-only flat uint8 array of zeros and ones."""
        b = np.array(self.bits, dtype=np.uint8).ravel()
        if b.size and b.max() > 1:
            raise ValueError("bit stream values must be 0 or 1")
        b.flags.writeable = False
        object.__setattr__(self, "bits", b)

    @classmethod
    def from_bytes(cls, data):
        """Unpacks `data` MSB-first, 8 bits per byte."""
        return cls(np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8)))

    @classmethod
    def from_chunks(cls, chunks, n=CHUNK_BITS):
        """Concatenates the low `n` bits of every chunk value, MSB-first."""
        c = np.asarray(chunks, dtype=np.uint8).reshape(-1, 1)
        shifts = np.arange(n - 1, -1, -1, dtype=np.uint8)
        return cls(((c >> shifts) & 1).ravel())

    @property
    def length(self):
        """Bit count."""
        return int(self.bits.size)

    def __len__(self):
        """Bit count."""
        return self.length

    def chunks(self, n=CHUNK_BITS):
        """
        Returns the stream as an array of `n`-bit integers, MSB-first, last chunk zero-padded.

        Example:
            >>> BitStream([1, 0, 1, 1]).chunks().tolist()
            [5, 4]
        """
        pad = -self.length % n
        b = np.concatenate((self.bits, np.zeros(pad, dtype=np.uint8))).reshape(-1, n)
        weights = (1 << np.arange(n - 1, -1, -1)).astype(np.uint16)
        return (b.astype(np.uint16) @ weights).astype(np.uint8)

    def __iter__(self):
        """Yields 3-bit chunks as Python ints."""
        return iter(self.chunks().tolist())

    def tobytes(self):
        """Packs the stream MSB-first into bytes, zero-padding the final byte."""
        return np.packbits(self.bits).tobytes()

    def __add__(self, other):
        """Concatenation."""
        return BitStream(np.concatenate((self.bits, other.bits)))

    def __getitem__(self, item):
        """Slicing returns a BitStream, integer indexing a bit."""
        if isinstance(item, slice):
            return BitStream(self.bits[item])
        return int(self.bits[item])

    def __eq__(self, other):
        """Streams are equal when they hold the same bits."""
        if not isinstance(other, BitStream):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    __hash__ = None

    def __repr__(self):
        """Short bit-string representation."""
        s = "".join(map(str, self.bits[:64].tolist()))
        return f"BitStream({self.length} bits: {s}{'...' if self.length > 64 else ''})"


def frame(message):
    """
    Frames `message` as a 32-bit big-endian byte count followed by its bytes, each byte MSB-first.

    Example:
        >>> len(frame(b"Hi"))
        48
        >>> "".join(map(str, frame(b"H").bits[32:].tolist()))
        '01001000'
    """
    message = bytes(message)
    if len(message) > MAX_MESSAGE_BYTES:
        raise MessageTooLarge(f"message of {len(message)} bytes exceeds the {MAX_MESSAGE_BYTES}-byte frame limit")
    return BitStream.from_bytes(struct.pack(">I", len(message)) + message)


def deframe(bits: BitStream):
    """
    Returns the message declared by the 32-bit header of `bits`; trailing bits are ignored.

    Example:
        >>> deframe(frame(b"Hi"))
        b'Hi'
    """
    if bits.length < HEADER_BITS:
        raise CorruptFrame(f"stream of {bits.length} bits is shorter than the {HEADER_BITS}-bit length header")
    (n,) = struct.unpack(">I", bits[:HEADER_BITS].tobytes())
    need = HEADER_BITS + 8 * n
    if bits.length < need:
        raise CorruptFrame(f"header declares {n} bytes ({need} bits), stream holds only {bits.length} bits")
    return bits[HEADER_BITS:need].tobytes()
