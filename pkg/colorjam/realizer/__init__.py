from .realizer import (
    ProblemDocument,
    RealizationProblem,
    RealizerCertificate,
    RealizerFailure,
    RealizerLimits,
    SearchExhausted,
    certificate_payload,
    deserialize_problem,
    load_realizer,
    problem_from_data,
    problem_payload,
    read_problem,
    search_realizer,
    serialize_problem,
    verify_realizer,
)

__all__ = [
    'ProblemDocument',
    'RealizationProblem',
    'RealizerCertificate',
    'RealizerFailure',
    'RealizerLimits',
    'SearchExhausted',
    'certificate_payload',
    'deserialize_problem',
    'load_realizer',
    'problem_from_data',
    'problem_payload',
    'read_problem',
    'search_realizer',
    'serialize_problem',
    'verify_realizer',
]
