"""molmine: mine directed co-authorship rules and decompose the resulting
association graphs into molecular communities, cluster them, and track
pattern lifecycles across yearly snapshots."""

from ._version import __version__
from .cluster import Dendrogram, cut, distance, hcluster, newick
from .corpus import CorpusProfile, generate_corpus
from .decompose import (
    Arity,
    AttributeVector,
    Community,
    MotifClass,
    Role,
    attribute_vector,
    attributes_csv,
    attributes_from_csv,
    classify_motif,
    communities,
    communities_json_dict,
    community_arity,
    roles,
    star_arity,
)
from .dot import to_dot
from .errors import ConfigError, InputError
from .graph import AssocGraph, GraphError, build_graph, parse_edge_list
from .ingest import (
    ParseResult,
    Publication,
    YearBuckets,
    bucket_by_year,
    parse_csv,
    parse_dblp_xml,
    parse_jsonl,
    write_jsonl,
)
from .pipeline import PipelineConfig, RunManifest, run_pipeline
from .rules import (
    PairCounts,
    Rule,
    Thresholds,
    confidence,
    count_pairs,
    lift,
    mine_rules,
    rules_from_csv,
    rules_to_csv,
    sample_transactions,
    support,
)
from .temporal import (
    Lifecycle,
    PatternTimeline,
    Signature,
    classify_lifecycle,
    match_across_years,
    noise_fraction,
    noise_series_csv,
    signature,
    timelines_to_json_dict,
)

__all__ = [
    "__version__",
    "Arity",
    "AssocGraph",
    "AttributeVector",
    "Community",
    "ConfigError",
    "CorpusProfile",
    "Dendrogram",
    "GraphError",
    "InputError",
    "Lifecycle",
    "MotifClass",
    "PairCounts",
    "ParseResult",
    "PatternTimeline",
    "PipelineConfig",
    "Publication",
    "Role",
    "Rule",
    "RunManifest",
    "Signature",
    "Thresholds",
    "YearBuckets",
    "attribute_vector",
    "attributes_csv",
    "attributes_from_csv",
    "bucket_by_year",
    "build_graph",
    "classify_lifecycle",
    "classify_motif",
    "communities",
    "communities_json_dict",
    "community_arity",
    "confidence",
    "count_pairs",
    "cut",
    "distance",
    "generate_corpus",
    "hcluster",
    "lift",
    "match_across_years",
    "mine_rules",
    "newick",
    "noise_fraction",
    "noise_series_csv",
    "parse_csv",
    "parse_dblp_xml",
    "parse_edge_list",
    "parse_jsonl",
    "roles",
    "rules_from_csv",
    "rules_to_csv",
    "run_pipeline",
    "sample_transactions",
    "signature",
    "star_arity",
    "support",
    "timelines_to_json_dict",
    "to_dot",
    "write_jsonl",
]
