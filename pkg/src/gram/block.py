"""
Block matrices of 2x2 blocks

Block (m, n) occupies rows 2m..2m+1 and columns 2n..2n+1 of the flattened
view, so a block matrix whose blocks are all b * Id flattens to kron(B, Id).
"""

import numpy as np

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))
from errors import StructureError


class BlockMatrix:
    """(K x K) array of 2x2 blocks, K = N + 1"""

    def __init__(self, blocks):
        blocks = np.array(blocks, dtype=float)
        if blocks.ndim != 4 or blocks.shape[0] != blocks.shape[1] or blocks.shape[2:] != (2, 2):
            raise StructureError(f"blocks of shape {blocks.shape} are not (K, K, 2, 2)")
        self.blocks = blocks

    @classmethod
    def from_flat(cls, flat) -> "BlockMatrix":
        flat = np.asarray(flat, dtype=float)
        size = flat.shape[0]
        if flat.shape != (size, size) or size % 2:
            raise StructureError(f"flat matrix of shape {flat.shape} is not 2K x 2K")
        order = size // 2
        return cls(flat.reshape(order, 2, order, 2).transpose(0, 2, 1, 3))

    @classmethod
    def zeros(cls, order: int) -> "BlockMatrix":
        return cls(np.zeros((order, order, 2, 2)))

    @classmethod
    def identity(cls, order: int) -> "BlockMatrix":
        return cls.from_flat(np.eye(2 * order))

    @classmethod
    def block_diagonal(cls, block, order: int) -> "BlockMatrix":
        """The same 2x2 block repeated on the diagonal"""
        result = cls.zeros(order)
        result.blocks[np.arange(order), np.arange(order)] = np.asarray(block, dtype=float)
        return result

    @property
    def order(self) -> int:
        return self.blocks.shape[0]

    @property
    def flat(self) -> np.ndarray:
        order = self.order
        return self.blocks.transpose(0, 2, 1, 3).reshape(2 * order, 2 * order)

    def block(self, m: int, n: int) -> np.ndarray:
        return self.blocks[m, n]

    def transpose(self) -> "BlockMatrix":
        """Transpose of the flattened view"""
        return BlockMatrix(np.swapaxes(np.swapaxes(self.blocks, 0, 1), 2, 3))

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.blocks))

    def _check_same_order(self, other: "BlockMatrix"):
        if not isinstance(other, BlockMatrix) or other.order != self.order:
            raise StructureError(
                f"block matrix orders differ: {self.order} vs "
                f"{getattr(other, 'order', type(other).__name__)}"
            )

    def __matmul__(self, other: "BlockMatrix") -> "BlockMatrix":
        self._check_same_order(other)
        return BlockMatrix(np.einsum("mkij,knjl->mnil", self.blocks, other.blocks))

    def __add__(self, other: "BlockMatrix") -> "BlockMatrix":
        self._check_same_order(other)
        return BlockMatrix(self.blocks + other.blocks)

    def __sub__(self, other: "BlockMatrix") -> "BlockMatrix":
        self._check_same_order(other)
        return BlockMatrix(self.blocks - other.blocks)

    def __mul__(self, scalar: float) -> "BlockMatrix":
        return BlockMatrix(self.blocks * float(scalar))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"BlockMatrix(order={self.order})"
