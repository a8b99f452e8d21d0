"""Score GBMST, Normal_MST and k-means on the bundled Iris and Wine data."""
import argparse
import time

from gbmst.cli import run_algorithm
from gbmst.data_io import load_fixture
from gbmst.metrics import evaluate


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0, help="k-means seed")
    args = parser.parse_args()
    print(f"{'dataset':8} {'algorithm':11} {'ACC':>7} {'NMI':>7} {'ARI':>7} {'seconds':>8}")
    for name in ("iris", "wine"):
        ds = load_fixture(name)
        for algo in ("gbmst", "normal-mst", "kmeans"):
            t0 = time.perf_counter()
            result = run_algorithm(ds, algo, 3, seed=args.seed)
            dt = time.perf_counter() - t0
            m = evaluate(result.point_labels, ds.labels)
            print(f"{name:8} {algo:11} {m.acc:7.4f} {m.nmi:7.4f} {m.ari:7.4f} {dt:8.4f}")


if __name__ == "__main__":
    main()
