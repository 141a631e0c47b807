"""Command layer: verification suite and CSV/JSON exports"""
