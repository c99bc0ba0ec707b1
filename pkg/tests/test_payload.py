# BrightStego 🚀 AGPL-3.0 License
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from utils.payload import HEADER_BITS, BitStream, CorruptFrame, deframe, frame


def bitstring(bits):
    return "".join(map(str, bits.bits.tolist()))


def test_frame_hi():
    bits = frame(b"Hi")
    assert bits.length == 48
    assert bitstring(bits) == f"{2:032b}" + "01001000" + "01101001"


def test_frame_empty():
    bits = frame(b"")
    assert bits.length == 32
    assert bitstring(bits) == "0" * 32


def test_frame_letter_h():
    assert bitstring(frame(b"H")) == f"{1:032b}" + "01001000"


def test_deframe():
    assert deframe(frame(b"Hi")) == b"\x48\x69"
    assert deframe(BitStream(np.zeros(32))) == b""


def test_deframe_ignores_trailing_padding():
    bits = frame(b"Hi") + BitStream([1, 0, 1])
    assert deframe(bits) == b"Hi"


def test_corrupt_frame():
    header = BitStream.from_bytes((100).to_bytes(4, "big"))
    with pytest.raises(CorruptFrame, match="100 bytes"):
        deframe(header + BitStream(np.zeros(8)))
    with pytest.raises(CorruptFrame):
        deframe(BitStream([0] * 31))


def test_chunks_msb_first_zero_padded():
    bits = BitStream([1, 1, 0, 0, 0, 1, 1])
    assert bits.chunks().tolist() == [0b110, 0b001, 0b100]
    assert list(bits) == [6, 1, 4]
    assert BitStream([]).chunks().tolist() == []


def test_bitstream_rejects_non_bits():
    with pytest.raises(ValueError):
        BitStream([0, 2])


@given(st.binary(max_size=512))
def test_frame_round_trip(message):
    bits = frame(message)
    assert bits.length == HEADER_BITS + 8 * len(message)
    assert deframe(bits) == message


@given(st.lists(st.integers(0, 1), max_size=200), st.integers(1, 8))
def test_chunk_reassembly(bits, n):
    stream = BitStream(bits)
    again = BitStream.from_chunks(stream.chunks(n), n)
    assert again.length == -(-len(bits) // n) * n
    assert again[: len(bits)] == stream
    assert not again.bits[len(bits) :].any()


@settings(max_examples=50)
@given(st.binary(max_size=64))
def test_from_bytes_tobytes(data):
    assert BitStream.from_bytes(data).tobytes() == data
