"""Knowledge-graph-enhanced zero-shot diagnosis prediction pipeline.

Thin Python surface over the C++ core: entity-candidate generation, polarity
classification, verdict parsing, evaluation metrics, synthetic cohorts and the
offline replay pipeline.
"""

from _kerap import (
    KgStore,
    classify_polarity,
    cosine,
    fingerprint,
    format_mean_std,
    hash_embed,
    parse_verdict,
    replay_evaluate,
    score,
    stage1_prompt,
    synth_cohort,
    top_candidates,
)

__all__ = [
    "KgStore",
    "classify_polarity",
    "cosine",
    "fingerprint",
    "format_mean_std",
    "hash_embed",
    "parse_verdict",
    "replay_evaluate",
    "score",
    "stage1_prompt",
    "synth_cohort",
    "top_candidates",
]
