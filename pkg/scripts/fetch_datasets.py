#!/usr/bin/env python3
"""Materialize the benchmark edge lists into data/.

Karate and Les Miserables ship with networkx and are written directly.
Dolphins and Football are distributed as GML archives on Mark Newman's site
and are downloaded when the network allows it; otherwise a note is printed
and the corresponding tests skip.
"""

from __future__ import annotations

import io
import pathlib
import sys
import urllib.request
import zipfile

DATA_DIR = pathlib.Path(__file__).resolve().parent.parent / "data"

REMOTE = {
    "dolphins": "https://websites.umich.edu/~mejn/netdata/dolphins.zip",
    "football": "https://websites.umich.edu/~mejn/netdata/football.zip",
}


def write_edges(name: str, edges) -> None:
    path = DATA_DIR / f"{name}.txt"
    with path.open("w", encoding="utf-8") as fh:
        for u, v in edges:
            fh.write(f"{u} {v}\n")
    print(f"wrote {path}")


def builtin_datasets() -> None:
    import networkx as nx

    karate = nx.karate_club_graph()
    # 1-indexed labels, matching the classic distribution of the edge list.
    write_edges("karate", ((u + 1, v + 1) for u, v in karate.edges()))

    lesmis = nx.les_miserables_graph()
    write_edges("lesmis", ((u.replace(" ", "_"), v.replace(" ", "_")) for u, v in lesmis.edges()))


def fetch_remote(name: str, url: str) -> None:
    import networkx as nx

    try:
        payload = urllib.request.urlopen(url, timeout=30).read()
    except OSError as exc:
        print(f"skipping {name}: cannot download {url} ({exc})")
        return
    with zipfile.ZipFile(io.BytesIO(payload)) as archive:
        gml_name = next(n for n in archive.namelist() if n.endswith(".gml"))
        gml = archive.read(gml_name).decode("utf-8")
    graph = nx.parse_gml(gml, label="id")
    write_edges(name, graph.edges())


def main() -> int:
    DATA_DIR.mkdir(exist_ok=True)
    builtin_datasets()
    for name, url in REMOTE.items():
        if (DATA_DIR / f"{name}.txt").exists():
            print(f"{name}.txt already present")
        else:
            fetch_remote(name, url)
    return 0


if __name__ == "__main__":
    sys.exit(main())
