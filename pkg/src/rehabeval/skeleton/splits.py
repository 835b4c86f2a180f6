"""Support/test splitting for k-shot prompting."""

from __future__ import annotations

import random
from enum import Enum

from ..errors import CapacityError
from .types import Label, RepetitionSample


class SplitPolicy(Enum):
    SUBJECT_DISJOINT = "subject_disjoint"
    ANY = "any"


def _sort_key(s: RepetitionSample):
    return (s.exercise_id, s.subject_id, s.repetition_index, s.label.value)


def split_support_and_test(
    samples: list[RepetitionSample],
    k: int,
    seed: int,
    policy: SplitPolicy = SplitPolicy.ANY,
) -> tuple[list[RepetitionSample], list[RepetitionSample]]:
    """Pick k support samples per class deterministically; the rest is the test set.

    The choice depends only on the sample set, k and seed (input order does
    not matter). Under SUBJECT_DISJOINT the test set keeps only subjects that
    contributed nothing to the support set, so no subject appears in both.

    Raises:
        CapacityError: fewer than k samples in either class, or (subject-disjoint)
            no subject can be held out.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    ordered = sorted(samples, key=_sort_key)
    if k == 0:
        return [], ordered

    rng = random.Random(seed)
    corrects = [s for s in ordered if s.label is Label.CORRECT]
    incorrects = [s for s in ordered if s.label is Label.INCORRECT]

    if policy is SplitPolicy.ANY:
        if len(corrects) < k or len(incorrects) < k:
            raise CapacityError(
                f"need {k} per class, have {len(corrects)} correct / {len(incorrects)} incorrect"
            )
        support = rng.sample(corrects, k) + rng.sample(incorrects, k)
        chosen = {id(s) for s in support}
        test = [s for s in ordered if id(s) not in chosen]
        return support, test

    subjects = sorted({s.subject_id for s in ordered})
    shuffled = subjects[:]
    rng.shuffle(shuffled)

    pool_c: list[RepetitionSample] = []
    pool_i: list[RepetitionSample] = []
    support_subjects: set[str] = set()
    for subject in shuffled:
        if len(pool_c) >= k and len(pool_i) >= k:
            break
        support_subjects.add(subject)
        pool_c.extend(s for s in corrects if s.subject_id == subject)
        pool_i.extend(s for s in incorrects if s.subject_id == subject)
    if len(pool_c) < k or len(pool_i) < k:
        raise CapacityError(
            f"subject-disjoint split cannot reach {k} per class "
            f"({len(pool_c)} correct / {len(pool_i)} incorrect pooled)"
        )
    if len(support_subjects) >= len(subjects):
        raise CapacityError("subject-disjoint split leaves no subject for the test set")

    support = rng.sample(sorted(pool_c, key=_sort_key), k) + rng.sample(
        sorted(pool_i, key=_sort_key), k
    )
    test = [s for s in ordered if s.subject_id not in support_subjects]
    return support, test
