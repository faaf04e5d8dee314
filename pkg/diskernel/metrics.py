"""
diskernel - Prometheus counters

Counters live in a dedicated registry; nothing is served over HTTP. Set
DISKERNEL_METRICS_FILE to have the CLI write the text exposition after a run.
"""

from prometheus_client import CollectorRegistry, Counter, write_to_textfile

REGISTRY = CollectorRegistry(auto_describe=True)

METRIC_NAME_EVALUATIONS_TOTAL = Counter(
    'diskernel_name_evaluations_total',
    'Total fuel-bounded name evaluations',
    registry=REGISTRY,
)

METRIC_PAIRS_DECODED_TOTAL = Counter(
    'diskernel_pairs_decoded_total',
    'Total graph pairs decoded by scanning evaluations',
    registry=REGISTRY,
)

METRIC_INCONSISTENT_NAMES_TOTAL = Counter(
    'diskernel_inconsistent_names_total',
    'Total evaluations that stopped on an inconsistent name',
    registry=REGISTRY,
)

METRIC_INDEXED_READS_TOTAL = Counter(
    'diskernel_indexed_reads_total',
    'Total word-level U reads answered from an encoded name by index',
    registry=REGISTRY,
)

METRIC_VERDICTS_TOTAL = Counter(
    'diskernel_verdicts_total',
    'Total graph verdicts recorded by reduction verification',
    ['problem', 'verdict'],
    registry=REGISTRY,
)

METRIC_REFUTATIONS_TOTAL = Counter(
    'diskernel_refutations_total',
    'Total witnesses refuted by verification',
    registry=REGISTRY,
)

METRIC_GAME_VERDICTS_TOTAL = Counter(
    'diskernel_game_verdicts_total',
    'Total adjudicated game runs',
    ['engine', 'verdict'],
    registry=REGISTRY,
)


def write_metrics(path: str) -> None:
    """Write the text exposition of all diskernel counters to `path`."""
    write_to_textfile(path, REGISTRY)


def sample_value(name: str, labels=None) -> float:
    """Current value of a sample, 0.0 when it has not been recorded yet."""
    value = REGISTRY.get_sample_value(name, labels or {})
    return 0.0 if value is None else value
