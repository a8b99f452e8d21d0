"""Regenerate the synthetic CSV fixtures bundled under src/gbmst/data/."""
from pathlib import Path

from gbmst.data_io import GeneratorSpec, generate, write_csv

OUT = Path(__file__).resolve().parents[1] / "src" / "gbmst" / "data"

FIXTURES = {
    "blobs": GeneratorSpec("blobs", 100, 0.0, 0.1, 7, n_clusters=2),
    "moons_noisy": GeneratorSpec("moons", 1000, 0.05, 0.05, 7),
    "two_rings_noisy": GeneratorSpec("rings", 1000, 0.05, 0.05, 7, radii=[1.0, 3.0]),
    "spirals": GeneratorSpec("spirals", 600, 0.0, 0.01, 7, arms=2, turns=1.0),
}


def main():
    for name, spec in FIXTURES.items():
        write_csv(generate(spec), OUT / f"{name}.csv")
        (OUT / f"{name}.json").write_text(spec.to_json(), encoding="utf-8")
        print(f"wrote {name}.csv")


if __name__ == "__main__":
    main()
