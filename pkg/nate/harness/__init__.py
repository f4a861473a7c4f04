from .baseline import baseline_first_error, baseline_random, run_baseline
from .blame import DEFAULT_K, BlameEntry, BlameReport, blame, model_abstraction, rank
from .corpus import CorpusRecord, decode_line, encode_pair, iter_corpus, read_corpus, write_corpus
from .crossval import assign_folds, cross_validate
from .errors import AbstractionMismatch, CorpusFormatError, HarnessError, TooFewPrograms
from .generate import CATALOG, CorpusSpec, Mutation, ProgramGenerator, generate_corpus, generate_pair, mutate
from .metrics import RecallStats, Scoring, hit_rank, recall, recall_stats, top_k_accuracy
from .pipeline import PipelineConfig, Prepared, PreparedCorpus, prepare, prepare_pair, run_pipeline
from .report import EvalReport, FoldReport, ScoreRow

__all__ = [
    "CATALOG",
    "DEFAULT_K",
    "AbstractionMismatch",
    "BlameEntry",
    "BlameReport",
    "CorpusFormatError",
    "CorpusRecord",
    "CorpusSpec",
    "EvalReport",
    "FoldReport",
    "HarnessError",
    "Mutation",
    "PipelineConfig",
    "Prepared",
    "PreparedCorpus",
    "ProgramGenerator",
    "RecallStats",
    "ScoreRow",
    "Scoring",
    "TooFewPrograms",
    "assign_folds",
    "baseline_first_error",
    "baseline_random",
    "blame",
    "cross_validate",
    "decode_line",
    "encode_pair",
    "generate_corpus",
    "generate_pair",
    "hit_rank",
    "iter_corpus",
    "model_abstraction",
    "mutate",
    "prepare",
    "prepare_pair",
    "rank",
    "read_corpus",
    "recall",
    "recall_stats",
    "run_baseline",
    "run_pipeline",
    "top_k_accuracy",
    "write_corpus",
]
