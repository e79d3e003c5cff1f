"""Command-line front end.

Subcommands: knn (build and serialize a neighbor graph), cluster (label a
point file or a saved graph), eval (score two label files), synth (planted
mixture experiment), bench (k-sweep benchmark table).  Machine-readable
artifacts go to files; stdout stays human-readable.  All randomness flows
from --seed.  Exit codes: 0 ok, 2 usage or missing input, 1 runtime error.
"""

import argparse
import json
import sys
import time

import numpy as np

from . import community, data, dane, density, knngraph, scores, synthetic
from .descent import nndescent_knn
from .knngraph import build_graph, exact_knn
from .metrics import METRICS


def _load_points(args):
    fmt = args.format
    if fmt == "auto":
        fmt = data.sniff_format(args.data)
    return data.load_points(args.data, fmt=fmt)


def _build_lists(ps, args, k=None, seed=None):
    k = args.k if k is None else k
    seed = args.seed if seed is None else seed
    if args.backend == "exact":
        return exact_knn(ps, k, args.metric, n_jobs=args.threads)
    return nndescent_knn(
        ps, k, args.metric, n_trees=args.trees, n_iters=args.iters,
        leaf_size=args.leaf_size, seed=seed, n_jobs=args.threads,
    )


def _add_build_flags(p, with_k=True):
    p.add_argument("--data", required=True, help="point file")
    p.add_argument("--format", default="auto",
                   choices=("auto",) + data.FORMATS)
    p.add_argument("--metric", default="l2", choices=METRICS)
    if with_k:
        p.add_argument("--k", type=int, required=True)
    p.add_argument("--backend", default="exact", choices=("exact", "nndescent"))
    p.add_argument("--trees", type=int, default=8)
    p.add_argument("--iters", type=int, default=5)
    p.add_argument("--leaf-size", type=int, default=50)
    p.add_argument("--mode", default="symmetric", choices=knngraph.MODES)


def _add_common(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)


def cmd_knn(args):
    ps = _load_points(args)
    t0 = time.perf_counter()
    lists = _build_lists(ps, args)
    g = build_graph(lists, args.mode, metric=args.metric)
    build_seconds = time.perf_counter() - t0
    knngraph.save_graph(g, args.out)
    recall = None
    if args.backend == "exact":
        recall = 1.0
    elif args.check_recall:
        exact = exact_knn(ps, args.k, args.metric, n_jobs=args.threads)
        recall = knngraph.knn_recall(lists, exact)
    timing = {"buildSeconds": build_seconds, "recallIfExactAvailable": recall}
    timing_path = args.timing_out or (args.out + ".timing.json")
    with open(timing_path, "w", encoding="utf-8") as f:
        json.dump(timing, f, indent=2)
        f.write("\n")
    print(f"graph: n={g.n} k={g.k} mode={g.mode} metric={args.metric} "
          f"edges={g.num_edges}")
    print(f"build seconds: {build_seconds:.3f}"
          + (f"  recall: {recall:.4f}" if recall is not None else ""))
    print(f"wrote {args.out} and {timing_path}")


def _transform_from(args):
    return community.SimilarityTransform(kind=args.transform, scale=args.scale)


def cmd_cluster(args):
    if (args.data is None) == (args.graph is None):
        print("cluster: exactly one of --data or --graph is required",
              file=sys.stderr)
        return 2
    t0 = time.perf_counter()
    if args.graph is not None:
        g = knngraph.load_graph(args.graph)
        lists = knngraph.lists_from_graph(g) if args.algorithm == "dane" else None
    else:
        ps = _load_points(args)
        lists = _build_lists(ps, args)
        g = build_graph(lists, args.mode, metric=args.metric)
    graph_seconds = time.perf_counter() - t0

    t1 = time.perf_counter()
    seed_ids = None
    if args.algorithm == "dane":
        result = dane.expand(g, lists, density.density_order(g))
        seed_ids = result.seed_ids.tolist()
    elif args.algorithm == "components":
        if args.density_quantile < 1.0:
            order = density.density_order(g)
            m = max(1, int(np.ceil(args.density_quantile * g.n)))
            keep = np.zeros(g.n, dtype=bool)
            keep[order.order[:m]] = True
            labels = knngraph.connected_components(g, node_mask=keep)
            result = None
        else:
            labels = knngraph.connected_components(g)
            result = dane.Clustering(
                labels=labels, num_clusters=int(labels.max()) + 1
            )
    else:
        wg = community.to_weighted(g, _transform_from(args))
        if args.algorithm == "louvain":
            result = community.louvain(wg, seed=args.seed,
                                       resolution=args.resolution)
        else:
            result = community.lpa(wg, seed=args.seed, max_iters=args.max_iters)
    propagation_seconds = time.perf_counter() - t1

    if result is not None:
        labels = result.labels
        num_clusters = result.num_clusters
        sizes = np.bincount(labels, minlength=num_clusters).tolist()
    else:  # filtered components: -1 marks dropped points
        num_clusters = int(labels.max()) + 1
        sizes = np.bincount(labels[labels >= 0], minlength=num_clusters).tolist()
    data.save_labels(labels, args.labels_out)
    summary = {
        "numClusters": num_clusters,
        "clusterSizes": sizes,
        "seedIds": seed_ids,
        "graphSeconds": graph_seconds,
        "propagationSeconds": propagation_seconds,
    }
    if args.summary_out:
        with open(args.summary_out, "w", encoding="utf-8") as f:
            json.dump(summary, f, indent=2)
            f.write("\n")
    print(f"algorithm: {args.algorithm}  clusters: {num_clusters}")
    print(f"graph seconds: {graph_seconds:.3f}  "
          f"propagation seconds: {propagation_seconds:.3f}")
    print(f"wrote {args.labels_out}"
          + (f" and {args.summary_out}" if args.summary_out else ""))


def cmd_eval(args):
    u = data.load_labels(args.labels_u)
    v = data.load_labels(args.labels_v)
    report = scores.evaluate_labels(u, v)
    text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    print(text)


def cmd_synth(args):
    means = np.asarray(
        [[float(x) for x in c.split(",")] for c in args.centers.split(";")]
    )
    ncomp = means.shape[0]
    sigmas = [float(s) for s in args.sigmas.split(",")]
    if len(sigmas) == 1:
        sigmas = sigmas * ncomp
    if args.weights:
        weights = [float(w) for w in args.weights.split(",")]
    else:
        weights = [1.0 / ncomp] * ncomp
    spec = synthetic.MixtureSpec(
        means=means, stds=np.asarray(sigmas), weights=np.asarray(weights),
        n=args.n, seed=args.seed,
    )
    if args.dump_points or args.dump_labels:
        ps = synthetic.sample_mixture(spec)
        if args.dump_points:
            data.save_points_csv(ps, args.dump_points)
        if args.dump_labels:
            data.save_labels(ps.true_labels, args.dump_labels)
    report = synthetic.connectivity_experiment(
        spec, k=args.k, density_quantile=args.quantile,
        trials=args.trials, c=args.c, metric=args.metric,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            json.dump(report, f, indent=2)
            f.write("\n")
    print(f"trials: {report['trials']}  exact-recovery rate: "
          f"{report['passRate']:.3f}  mean ARI: {report['meanAri']:.4f}")


_BENCH_ALGOS = ("dane", "louvain", "lpa")


def _parse_ks(text):
    if ":" in text:
        parts = [int(x) for x in text.split(":")]
        if len(parts) != 3:
            raise ValueError("range syntax is start:stop:step (stop inclusive)")
        start, stop, step = parts
        return list(range(start, stop + 1, step))
    return [int(x) for x in text.split(",")]


def cmd_bench(args):
    ps = _load_points(args)
    true = data.load_labels(args.labels)
    if true.shape[0] != ps.n:
        print(f"bench: {true.shape[0]} labels for {ps.n} points", file=sys.stderr)
        return 1
    ks = _parse_ks(args.ks)
    algos = [a.strip() for a in args.algorithms.split(",")]
    for a in algos:
        if a not in _BENCH_ALGOS:
            print(f"bench: unknown algorithm {a!r}", file=sys.stderr)
            return 2
    shared = None
    if args.backend == "exact":
        t0 = time.perf_counter()
        shared = exact_knn(ps, max(ks), args.metric, n_jobs=args.threads)
        print(f"exact kNN at k={max(ks)}: {time.perf_counter() - t0:.2f}s "
              f"(prefix-sliced per k)")
    rows = []
    for k in ks:
        t0 = time.perf_counter()
        if shared is not None:
            lists = knngraph.prefix_lists(shared, k)
        else:
            lists = _build_lists(ps, args, k=k, seed=_derive_seed(args.seed, k))
        g = build_graph(lists, args.mode, metric=args.metric)
        graph_s = time.perf_counter() - t0
        wg = None
        order = None
        for algo in algos:
            t1 = time.perf_counter()
            if algo == "dane":
                if order is None:
                    order = density.density_order(g)
                labels = dane.expand(g, lists, order).labels
            else:
                if wg is None:
                    wg = community.to_weighted(g, _transform_from(args))
                if algo == "louvain":
                    labels = community.louvain(
                        wg, seed=args.seed, resolution=args.resolution
                    ).labels
                else:
                    labels = community.lpa(
                        wg, seed=args.seed, max_iters=args.max_iters
                    ).labels
            seconds = graph_s + (time.perf_counter() - t1)
            rep = scores.evaluate_labels(true, labels)
            rows.append({
                "k": k, "algorithm": algo, "ami": rep["ami"], "nmi": rep["nmi"],
                "ari": rep["ari"], "numClusters": rep["numClustersV"],
                "seconds": seconds,
            })
    for algo in algos:
        sub = [r for r in rows if r["algorithm"] == algo]
        best = max(sub, key=lambda r: r["ami"])
        rows.append({**best, "k": "best"})
    _write_bench_csv(rows, args.out)
    _print_bench_table(rows)
    print(f"wrote {args.out}")


def _derive_seed(seed, k):
    return int(np.random.SeedSequence(entropy=(seed, k)).generate_state(1)[0])


def _write_bench_csv(rows, path):
    cols = ("k", "algorithm", "ami", "nmi", "ari", "numClusters", "seconds")
    with open(path, "w", encoding="utf-8") as f:
        f.write(",".join(cols) + "\n")
        for r in rows:
            f.write(",".join(_cell(r[c]) for c in cols) + "\n")


def _cell(v):
    if isinstance(v, float):
        return "%.6f" % v
    return str(v)


def _print_bench_table(rows):
    cols = ("k", "algorithm", "ami", "nmi", "ari", "numClusters", "seconds")
    widths = {c: max(len(c), 9) for c in cols}
    print("  ".join(c.rjust(widths[c]) for c in cols))
    for r in rows:
        print("  ".join(_cell(r[c]).rjust(widths[c]) for c in cols))


def build_parser():
    ap = argparse.ArgumentParser(
        prog="propclust",
        description="kNN-graph construction and propagation clustering",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("knn", help="build a neighbor graph and serialize it")
    _add_build_flags(p)
    p.add_argument("--out", required=True, help="graph file to write")
    p.add_argument("--timing-out", default=None)
    p.add_argument("--check-recall", action="store_true",
                   help="compare nndescent lists against exact (costly)")
    _add_common(p)
    p.set_defaults(func=cmd_knn)

    p = sub.add_parser("cluster", help="cluster a point file or saved graph")
    p.add_argument("--data", default=None)
    p.add_argument("--graph", default=None)
    p.add_argument("--format", default="auto", choices=("auto",) + data.FORMATS)
    p.add_argument("--metric", default="l2", choices=METRICS)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--backend", default="exact", choices=("exact", "nndescent"))
    p.add_argument("--trees", type=int, default=8)
    p.add_argument("--iters", type=int, default=5)
    p.add_argument("--leaf-size", type=int, default=50)
    p.add_argument("--mode", default="symmetric", choices=knngraph.MODES)
    p.add_argument("--algorithm", required=True,
                   choices=("dane", "louvain", "lpa", "components"))
    p.add_argument("--transform", default="gaussian",
                   choices=community.TRANSFORMS)
    p.add_argument("--scale", type=float, default=None)
    p.add_argument("--resolution", type=float, default=1.0)
    p.add_argument("--max-iters", type=int, default=100)
    p.add_argument("--density-quantile", type=float, default=1.0,
                   help="components only: keep this fraction of densest points")
    p.add_argument("--labels-out", required=True)
    p.add_argument("--summary-out", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("eval", help="score two label files")
    p.add_argument("labels_u")
    p.add_argument("labels_v")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("synth", help="planted mixture recovery experiment")
    p.add_argument("--centers", required=True,
                   help="semicolon-separated component means, e.g. '0,0;20,0'")
    p.add_argument("--sigmas", default="1.0")
    p.add_argument("--weights", default=None)
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--metric", default="l2", choices=METRICS)
    p.add_argument("--k", type=int, default=1,
                   help="floor for k; the experiment uses max(k, ceil(c ln n))")
    p.add_argument("--c", type=float, default=2.0)
    p.add_argument("--quantile", type=float, default=0.9)
    p.add_argument("--trials", type=int, default=40)
    p.add_argument("--out", default=None)
    p.add_argument("--dump-points", default=None)
    p.add_argument("--dump-labels", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("bench", help="k-sweep benchmark against true labels")
    _add_build_flags(p, with_k=False)
    p.add_argument("--labels", required=True)
    p.add_argument("--ks", required=True,
                   help="comma list '4,6,8' or inclusive range '4:20:2'")
    p.add_argument("--algorithms", default="dane,louvain,lpa")
    p.add_argument("--transform", default="gaussian",
                   choices=community.TRANSFORMS)
    p.add_argument("--scale", type=float, default=None)
    p.add_argument("--resolution", type=float, default=1.0)
    p.add_argument("--max-iters", type=int, default=100)
    p.add_argument("--out", required=True, help="CSV file to write")
    _add_common(p)
    p.set_defaults(func=cmd_bench)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        rc = args.func(args)
    except FileNotFoundError as e:
        print(f"{ap.prog}: file not found: {e.filename}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"{ap.prog}: {e}", file=sys.stderr)
        return 1
    return 0 if rc is None else rc


if __name__ == "__main__":
    sys.exit(main())
