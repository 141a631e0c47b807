"""Gram layer: truncated inner product and the block Gram matrix M"""
