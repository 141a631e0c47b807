"""Time-band layer: kernel, integral operator S and the commuting operator D-tilde"""
