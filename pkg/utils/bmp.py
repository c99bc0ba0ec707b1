# BrightStego 🚀 AGPL-3.0 License
"""
Uncompressed 24-bit BMP codec.

Decodes BMP files into a top-left-origin RGB pixel grid and encodes the grid back into the canonical form written by
this module: 54-byte header (14-byte file header + 40-byte info header), bottom-up rows, each row zero-padded to a
multiple of 4 bytes, B,G,R byte order on disk, 2835 pixels/metre resolution and no palette.
"""

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from utils import StegoError

FILE_HEADER = struct.Struct("<2sIHHI")  # magic, file size, reserved1, reserved2, pixel data offset
INFO_HEADER = struct.Struct("<IiiHHIIiiII")  # size, width, height, planes, bpp, compression, image size, ppm x/y, colors
HEADER_SIZE = FILE_HEADER.size + INFO_HEADER.size  # 54
PIXELS_PER_METRE = 2835  # 72 DPI
BI_RGB = 0  # no compression


class BmpError(StegoError):
    """Raised when a byte sequence cannot be decoded as a 24-bit uncompressed BMP."""


class BadMagic(BmpError):
    """The input does not start with the 'BM' signature."""


class UnsupportedFormat(BmpError):
    """The input is a BMP, but not one this codec handles (bpp, compression, orientation, header version)."""


class Truncated(BmpError):
    """The input holds fewer bytes than its headers promise."""


def row_stride(width):
    """
    Returns the on-disk size in bytes of one 24-bit pixel row, padded to a multiple of 4.

    Example:
        >>> row_stride(1), row_stride(2), row_stride(4), row_stride(1024)
        (4, 8, 12, 3072)
    """
    return (width * 3 + 3) & ~3


def bmp_file_size(width, height):
    """
    Returns the size of the canonical BMP file for a `width` x `height` image.

    Example:
        >>> bmp_file_size(1024, 768)
        2359350
        >>> bmp_file_size(2, 2)
        70
    """
    return HEADER_SIZE + row_stride(width) * height


@dataclass(frozen=True, eq=False)
class RawImage:
    """
    Decoded pixel grid: `data` has shape (height, width, 3), dtype uint8, rows from the top, channels R,G,B.

    The array is stored read-only; transformations return new instances.
    """

    width: int
    height: int
    data: np.ndarray

    def __post_init__(self):
        """Validates dimensions and coerces `data` to a read-only (height, width, 3) uint8 array."""
        if self.width < 1 or self.height < 1:
            raise ValueError(f"image dimensions must be positive, got {self.width}x{self.height}")
        a = np.asarray(self.data)
        if a.size != self.width * self.height * 3:
            raise ValueError(f"pixel data holds {a.size} bytes, expected {self.width}x{self.height}x3")
        if a.dtype != np.uint8:
            if a.size and (a.min() < 0 or a.max() > 255):
                raise ValueError("pixel bytes must lie in [0, 255]")
            a = a.astype(np.uint8)
        a = np.array(a.reshape(self.height, self.width, 3), dtype=np.uint8, order="C")  # private copy
        a.flags.writeable = False
        object.__setattr__(self, "data", a)

    @classmethod
    def from_bytes(cls, width, height, data):
        """Builds an image from a flat row-major R,G,B byte sequence of length width*height*3."""
        return cls(width, height, np.frombuffer(bytes(data), dtype=np.uint8))

    @classmethod
    def filled(cls, width, height, value=0):
        """Returns a `width` x `height` image whose every byte equals `value` (int or per-channel (r, g, b))."""
        return cls(width, height, np.broadcast_to(np.asarray(value, dtype=np.uint8), (height, width, 3)))

    def with_data(self, data):
        """Returns a new image of the same size holding `data`."""
        return RawImage(self.width, self.height, data)

    def tobytes(self):
        """Returns the flat row-major R,G,B byte sequence."""
        return self.data.tobytes()

    def pixel(self, x, y):
        """Returns the (R, G, B) tuple at zero-based coordinates (x rightward, y downward)."""
        return tuple(int(v) for v in self.data[y, x])

    def __len__(self):
        """Number of data bytes, width*height*3."""
        return self.data.size

    def __eq__(self, other):
        """Images are equal when their sizes and every pixel byte match."""
        if not isinstance(other, RawImage):
            return NotImplemented
        return self.width == other.width and self.height == other.height and np.array_equal(self.data, other.data)

    __hash__ = None


@dataclass(frozen=True)
class BmpFileInfo:
    """Header fields of a BMP file that matter for 24-bit decoding."""

    file_size: int
    data_offset: int
    header_size: int
    width: int
    height: int
    planes: int
    bits_per_pixel: int
    compression: int

    @property
    def row_stride(self):
        """Padded on-disk row size in bytes."""
        return row_stride(self.width)

    @property
    def pixel_bytes(self):
        """Number of pixel bytes on disk, padding included."""
        return self.row_stride * abs(self.height)

    @property
    def canonical(self):
        """True when the headers describe the canonical 54-byte layout this module writes."""
        return self.data_offset == HEADER_SIZE and self.header_size == INFO_HEADER.size and (
            self.file_size == self.data_offset + self.pixel_bytes
        )


def read_info(file_bytes):
    """Parses and returns the BmpFileInfo of `file_bytes` without validating the pixel format."""
    file_bytes = memoryview(file_bytes)
    if len(file_bytes) < 2 or bytes(file_bytes[:2]) != b"BM":
        raise BadMagic("not a BMP file: missing 'BM' signature")
    if len(file_bytes) < HEADER_SIZE:
        raise Truncated(f"BMP header needs {HEADER_SIZE} bytes, got {len(file_bytes)}")
    _, file_size, _, _, data_offset = FILE_HEADER.unpack_from(file_bytes, 0)
    header_size, width, height, planes, bpp, compression, *_ = INFO_HEADER.unpack_from(file_bytes, FILE_HEADER.size)
    return BmpFileInfo(file_size, data_offset, header_size, width, height, planes, bpp, compression)


def decode_bmp(file_bytes):
    """
    Decodes a 24-bit uncompressed bottom-up BMP into a RawImage with top-left origin and R,G,B channel order.

    Larger info headers and gaps before the pixel array are accepted; they are not retained.
    """
    info = read_info(file_bytes)
    if info.header_size < INFO_HEADER.size:
        raise UnsupportedFormat(f"info header of {info.header_size} bytes is not supported, need >= {INFO_HEADER.size}")
    if info.bits_per_pixel != 24:
        raise UnsupportedFormat(f"bits_per_pixel={info.bits_per_pixel}, only 24-bit BMPs are supported")
    if info.compression != BI_RGB:
        raise UnsupportedFormat(f"compression={info.compression}, only uncompressed BMPs are supported")
    if info.planes != 1:
        raise UnsupportedFormat(f"planes={info.planes}, expected 1")
    if info.width < 1 or info.height == 0:
        raise UnsupportedFormat(f"image dimensions must be positive, got {info.width}x{info.height}")
    if info.height < 0:
        raise UnsupportedFormat("top-down BMPs (negative height) are not supported")
    if info.data_offset < FILE_HEADER.size + info.header_size:
        raise UnsupportedFormat(f"pixel data offset {info.data_offset} overlaps the headers")
    end = info.data_offset + info.pixel_bytes
    if len(file_bytes) < end:
        raise Truncated(f"BMP pixel data needs {end} bytes, got {len(file_bytes)}")

    rows = np.frombuffer(file_bytes, dtype=np.uint8, count=info.pixel_bytes, offset=info.data_offset)
    rows = rows.reshape(info.height, info.row_stride)[::-1, : info.width * 3]  # bottom-up to top-down, drop padding
    bgr = rows.reshape(info.height, info.width, 3)
    return RawImage(info.width, info.height, bgr[..., ::-1])  # BGR to RGB


def encode_bmp(image: RawImage):
    """
    Encodes `image` as a canonical 24-bit BMP and returns the file bytes.

    Example:
        >>> len(encode_bmp(RawImage.filled(1, 1)))
        58
    """
    w, h = image.width, image.height
    stride = row_stride(w)
    pixels = np.zeros((h, stride), dtype=np.uint8)  # zero padding
    pixels[:, : w * 3] = image.data[::-1, :, ::-1].reshape(h, w * 3)  # top-down RGB to bottom-up BGR
    size = HEADER_SIZE + pixels.size
    header = FILE_HEADER.pack(b"BM", size, 0, 0, HEADER_SIZE) + INFO_HEADER.pack(
        INFO_HEADER.size, w, h, 1, 24, BI_RGB, pixels.size, PIXELS_PER_METRE, PIXELS_PER_METRE, 0, 0
    )
    return header + pixels.tobytes()


def load_bmp(path):
    """Reads and decodes the BMP file at `path`."""
    return decode_bmp(Path(path).read_bytes())


def save_bmp(image, path):
    """Encodes `image` and writes it to `path`, returning the number of bytes written."""
    data = encode_bmp(image)
    Path(path).write_bytes(data)
    return len(data)
