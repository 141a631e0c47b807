"""Spectral layer: sector splitting and prolate eigencomputation"""
