"""Fixed-length bit sets over record indices, packed into machine words."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:  # pragma: no cover - types only
    from collections.abc import Iterable

    from numpy.typing import ArrayLike, NDArray

# Block size w (bits per word) -> word dtype
WORD_DTYPES: dict[int, type[np.unsignedinteger]] = {
    8: np.uint8,
    16: np.uint16,
    32: np.uint32,
    64: np.uint64,
}


def word_dtype(block_size: int) -> np.dtype:
    """Return the unsigned word dtype for block size ``block_size``.

    Raises:
        ValueError: If the block size is not 8, 16, 32 or 64.
    """
    try:
        return np.dtype(WORD_DTYPES[block_size])
    except KeyError:
        msg = f"Block size must be one of {sorted(WORD_DTYPES)}, got {block_size}."
        raise ValueError(msg) from None


def block_count(length: int, block_size: int) -> int:
    """Return ``ceil(length / block_size)``."""
    return -(-length // block_size)


def pack_masks(masks: ArrayLike, block_size: int = 64) -> NDArray[np.unsignedinteger]:
    """Pack boolean rows into word blocks.

    Args:
        masks: Boolean array of shape ``(m, n)`` (or ``(n,)`` for one set).
        block_size: Bits per word ``w``.

    Returns:
        Array of shape ``(m, ceil(n / w))`` (or ``(ceil(n / w),)``). Bit ``i`` of
        a row is set when record ``i`` is a member; padding bits are zero.
    """
    dtype = word_dtype(block_size)
    arr = np.asarray(masks, dtype=bool)
    squeeze = arr.ndim == 1
    arr = np.atleast_2d(arr)
    n = arr.shape[1]
    packed = np.packbits(arr, axis=1, bitorder="little")
    width = block_count(n, block_size) * dtype.itemsize
    if packed.shape[1] < width:
        packed = np.pad(packed, ((0, 0), (0, width - packed.shape[1])))
    words = np.ascontiguousarray(packed).view(dtype)
    return words[0] if squeeze else words


def unpack_blocks(
    blocks: NDArray[np.unsignedinteger], length: int
) -> NDArray[np.bool_]:
    """Return the boolean membership mask of one packed row."""
    raw = np.ascontiguousarray(blocks).view(np.uint8)
    return np.unpackbits(raw, bitorder="little", count=length).astype(bool)


def popcount(blocks: NDArray[np.unsignedinteger], axis: int = -1) -> NDArray[np.int64]:
    """Return the number of set bits along ``axis``."""
    return np.bitwise_count(blocks).sum(axis=axis, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class BitSetVector:
    """Set of record indices in ``[0, length)`` held as ``ceil(length / w)`` words."""

    blocks: NDArray[np.unsignedinteger]
    length: int

    @classmethod
    def from_mask(
        cls: type[BitSetVector], mask: ArrayLike, block_size: int = 64
    ) -> BitSetVector:
        """Build from a boolean membership mask."""
        arr = np.asarray(mask, dtype=bool)
        return cls(blocks=pack_masks(arr, block_size), length=len(arr))

    @classmethod
    def from_indices(
        cls: type[BitSetVector],
        indices: Iterable[int],
        length: int,
        block_size: int = 64,
    ) -> BitSetVector:
        """Build from member record indices."""
        mask = np.zeros(length, dtype=bool)
        mask[np.fromiter(indices, dtype=np.intp)] = True
        return cls.from_mask(mask, block_size)

    @property
    def block_size(self: BitSetVector) -> int:
        """Return the word width ``w`` in bits."""
        return self.blocks.dtype.itemsize * 8

    def popcount(self: BitSetVector) -> int:
        """Return the number of members."""
        return int(popcount(self.blocks))

    def to_mask(self: BitSetVector) -> NDArray[np.bool_]:
        """Return the boolean membership mask of length ``length``."""
        return unpack_blocks(self.blocks, self.length)

    def to_indices(self: BitSetVector) -> NDArray[np.intp]:
        """Return member record indices in ascending order."""
        return np.flatnonzero(self.to_mask())

    def _check(self: BitSetVector, other: BitSetVector) -> None:
        if other.length != self.length or other.blocks.dtype != self.blocks.dtype:
            msg = "Bit sets differ in length or block size."
            raise ValueError(msg)

    def __and__(self: BitSetVector, other: BitSetVector) -> BitSetVector:
        """Return the intersection."""
        self._check(other)
        return BitSetVector(self.blocks & other.blocks, self.length)

    def __or__(self: BitSetVector, other: BitSetVector) -> BitSetVector:
        """Return the union."""
        self._check(other)
        return BitSetVector(self.blocks | other.blocks, self.length)

    def __contains__(self: BitSetVector, index: object) -> bool:
        """Return True if record ``index`` is a member."""
        if not isinstance(index, int | np.integer) or not 0 <= index < self.length:
            return False
        word, bit = divmod(int(index), self.block_size)
        return bool(unpack_blocks(self.blocks[word : word + 1], self.block_size)[bit])

    def __eq__(self: BitSetVector, other: object) -> bool:
        """Return True for equal length, width and membership."""
        if not isinstance(other, BitSetVector):
            return NotImplemented
        return (
            self.length == other.length
            and self.blocks.dtype == other.blocks.dtype
            and bool(np.array_equal(self.blocks, other.blocks))
        )

    __hash__ = None  # type: ignore[assignment]
