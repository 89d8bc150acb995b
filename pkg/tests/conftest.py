"""Shared fixtures: benchmark graphs and random-graph helpers."""

from __future__ import annotations

import pathlib
import random

import pytest

from commspread import Graph, load_edge_list

DATA_DIR = pathlib.Path(__file__).resolve().parent.parent / "data"


def load_dataset(name: str) -> Graph:
    path = DATA_DIR / f"{name}.txt"
    if not path.exists():
        pytest.skip(f"dataset {name} not present; run scripts/fetch_datasets.py")
    with path.open("r", encoding="utf-8") as fh:
        return load_edge_list(fh)


@pytest.fixture(scope="session")
def karate() -> Graph:
    return load_dataset("karate")


@pytest.fixture(scope="session")
def lesmis() -> Graph:
    return load_dataset("lesmis")


@pytest.fixture(scope="session")
def walkthrough() -> Graph:
    return load_dataset("walkthrough13")


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    """Erdos-Renyi style simple graph on ``n`` labeled nodes."""
    edges = [
        (str(u), str(v))
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]
    return Graph.from_edges(edges, extra_nodes=[str(v) for v in range(n)])


def random_partition(rng: random.Random, n: int, k: int) -> list[int]:
    return [rng.randrange(k) for _ in range(n)]
