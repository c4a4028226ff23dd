"""Combinatorial games over finite posets, with Reverse Hex board analysis."""
import os

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def data_path(name: str) -> str:
    """Path of a bundled board, region or manifest file."""
    return os.path.join(DATA_DIR, name)
