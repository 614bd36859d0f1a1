"""Command-line surface: run the pipeline, score chains, run the baseline.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal invariant
violation (the chains stopped partitioning the mention set).
"""
import argparse
import concurrent.futures
import json
import sys

from .baseline import lemma_baseline
from .config import config_echo, load_config
from .corpus import load_corpus
from .errors import PartitionError, XCorefError
from .scoring import ChainSet, MetricResult, conll_f1, gold_chain_set, score_all
from .sieves import chain_key_sets, run_pipeline
from .vectors import load_vectors

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INVARIANT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class UsageError(Exception):
    pass


def build_parser():
    parser = _Parser(prog="xcoref", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the sieve pipeline")
    run.add_argument("--corpus", nargs="+", required=True)
    run.add_argument("--vectors", required=True)
    run.add_argument("--config")
    run.add_argument("--out", required=True)
    run.add_argument("--trace")
    run.add_argument("--jobs", type=int, default=1)

    score = sub.add_parser("score", help="score a chains file against gold")
    score.add_argument("--gold", nargs="+", required=True)
    score.add_argument("--system", required=True)
    score.add_argument("--aggregate", choices=("pooled", "macro"))

    base = sub.add_parser("baseline", help="run the lemma baseline")
    base.add_argument("--corpus", nargs="+", required=True)
    base.add_argument("--out", required=True)

    everything = sub.add_parser("all", help="pipeline + baseline + report")
    everything.add_argument("--corpus", nargs="+", required=True)
    everything.add_argument("--vectors", required=True)
    everything.add_argument("--config")
    everything.add_argument("--out")
    everything.add_argument("--trace")
    everything.add_argument("--aggregate", choices=("pooled", "macro"))
    everything.add_argument("--jobs", type=int, default=1)
    return parser


def _keys_to_records(keys):
    return [{"doc": d, "sent": s, "start": a, "end": b} for d, s, a, b in keys]


def _records_to_keys(records):
    return [(r["doc"], r["sent"], r["start"], r["end"]) for r in records]


def _write_chains(path, topics):
    payload = {"topics": [
        {"topic_id": topic_id,
         "chains": [{"chain_id": cid, "mentions": _keys_to_records(keys)}
                    for cid, keys in chains]}
        for topic_id, chains in topics
    ]}
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(json.dumps(payload, sort_keys=True, separators=(",", ":")))
        handle.write("\n")


def _read_chains(path):
    with open(path, encoding="utf-8") as handle:
        payload = json.load(handle)
    return [(t["topic_id"],
             [(c["chain_id"], _records_to_keys(c["mentions"])) for c in t["chains"]])
            for t in payload["topics"]]


def _run_topic(path, config, store):
    bundle = load_corpus(path)
    state = run_pipeline(bundle, config, store)
    return bundle, state


def _run_corpora(paths, config, store, jobs):
    if jobs > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda p: _run_topic(p, config, store), paths))
    return [_run_topic(path, config, store) for path in paths]


def _pool_keys(topic_id, keys):
    return [("%s/%s" % (topic_id, doc), sent, start, end)
            for doc, sent, start, end in keys]


def _aggregate_scores(pairs, mode):
    """pairs: list of (topic_id, gold key lists, system key lists)."""
    if mode == "macro":
        per_topic = []
        for topic_id, gold, system in pairs:
            results, f1 = score_all(ChainSet(gold), ChainSet(system))
            per_topic.append((topic_id, results, f1))
        n = len(per_topic)
        if n == 0:
            empty = (MetricResult(0.0, 0.0, 0.0),) * 3
            return per_topic, empty, 0.0
        mean = tuple(MetricResult(
            recall=sum(t[1][m].recall for t in per_topic) / n,
            precision=sum(t[1][m].precision for t in per_topic) / n,
            f1=sum(t[1][m].f1 for t in per_topic) / n) for m in range(3))
        return per_topic, mean, conll_f1(mean)
    gold_pool = []
    system_pool = []
    per_topic = []
    for topic_id, gold, system in pairs:
        results, f1 = score_all(ChainSet(gold), ChainSet(system))
        per_topic.append((topic_id, results, f1))
        gold_pool.extend(_pool_keys(topic_id, keys) for keys in gold)
        system_pool.extend(_pool_keys(topic_id, keys) for keys in system)
    results, f1 = score_all(ChainSet(gold_pool), ChainSet(system_pool))
    return per_topic, results, f1


def _report_row(name, results, f1):
    cells = []
    for result in results:
        cells.extend(["%6.1f" % (100 * result.recall),
                      "%6.1f" % (100 * result.precision),
                      "%6.1f" % (100 * result.f1)])
    return "%-12s %s  %6.1f" % (name, " ".join(cells), 100 * f1)


def _report_header():
    head = "%-12s %s  %s" % (
        "Method",
        " ".join("%6s" % c for c in
                 ["MUC-R", "MUC-P", "MUC-F", "B3-R", "B3-P", "B3-F",
                  "CEAF-R", "CEAF-P", "CEAF-F"]),
        "CoNLL")
    return head


def cmd_run(args):
    config = load_config(args.config)
    store = load_vectors(args.vectors, oov_seed=config.oov_seed)
    runs = _run_corpora(args.corpus, config, store, args.jobs)
    topics = [(bundle.topic_id, chain_key_sets(state)) for bundle, state in runs]
    _write_chains(args.out, topics)
    trace_path = args.trace or args.out + ".trace.jsonl"
    with open(trace_path, "w", encoding="utf-8") as handle:
        for bundle, state in runs:
            for event in state.trace:
                record = {"topic": bundle.topic_id}
                record.update(event.to_record())
                handle.write(json.dumps(record, sort_keys=True))
                handle.write("\n")
    print("wrote %s (%d topics), trace %s" % (args.out, len(topics), trace_path))
    return 0


def cmd_score(args):
    system = dict(_read_chains(args.system))
    pairs = []
    for path in args.gold:
        bundle = load_corpus(path)
        if bundle.topic_id not in system:
            raise XCorefError("system file has no topic %s" % bundle.topic_id)
        gold = [sorted(chain) for chain in gold_chain_set(bundle).chains]
        pairs.append((bundle.topic_id,
                      gold,
                      [keys for _cid, keys in system[bundle.topic_id]]))
    mode = args.aggregate or "pooled"
    per_topic, results, f1 = _aggregate_scores(pairs, mode)
    print(_report_header())
    if len(per_topic) > 1:
        for topic_id, topic_results, topic_f1 in per_topic:
            print(_report_row(topic_id, topic_results, topic_f1))
    print(_report_row("%s" % mode, results, f1))
    print("F1_CoNLL %.3f" % f1)
    return 0


def cmd_baseline(args):
    topics = []
    for path in args.corpus:
        bundle = load_corpus(path)
        topics.append((bundle.topic_id, lemma_baseline(bundle)))
    _write_chains(args.out, topics)
    print("wrote %s (%d topics)" % (args.out, len(topics)))
    return 0


def cmd_all(args):
    config = load_config(args.config)
    store = load_vectors(args.vectors, oov_seed=config.oov_seed)
    runs = _run_corpora(args.corpus, config, store, args.jobs)
    mode = args.aggregate or config.aggregate
    rows = []
    for name, chains_of in (
            ("lemma", lambda bundle, state: lemma_baseline(bundle)),
            ("xcoref", lambda bundle, state: chain_key_sets(state))):
        pairs = []
        for bundle, state in runs:
            gold = [sorted(chain) for chain in gold_chain_set(bundle).chains]
            pairs.append((bundle.topic_id, gold,
                          [keys for _cid, keys in chains_of(bundle, state)]))
        _per_topic, results, f1 = _aggregate_scores(pairs, mode)
        rows.append(_report_row(name, results, f1))
    if args.out:
        _write_chains(args.out, [(b.topic_id, chain_key_sets(s)) for b, s in runs])
    total_chains = sum(len(s.chains) for _b, s in runs)
    singletons = sum(1 for _b, s in runs for c in s.chains.values()
                     if len(c.mention_ids) == 1)
    print(_report_header())
    for row in rows:
        print(row)
    print("chains %d  singletons %d  aggregate %s" % (total_chains, singletons, mode))
    print("config %s" % json.dumps(config_echo(config), sort_keys=True))
    return 0


COMMANDS = {"run": cmd_run, "score": cmd_score, "baseline": cmd_baseline,
            "all": cmd_all}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except PartitionError as exc:
        print("invariant violation: %s" % exc, file=sys.stderr)
        return EXIT_INVARIANT
    except (XCorefError, OSError, json.JSONDecodeError, KeyError) as exc:
        print("data error: %s" % exc, file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
