from .forge import (
    GadgetInstance,
    apex_names,
    encoder_pieces,
    encoder_terminals,
    f_copy,
    f_copy_plus,
    f_enc,
    f_enc_plus,
    f_enc_plus_trace,
    piece_f1,
    piece_fr,
    piece_fs,
)
from .oracle import (
    ConformanceMismatch,
    check_conformance,
    copy_spec,
    enc_spec,
    f1_spec,
    fr_spec,
    fs_spec,
    oracle_for,
)

__all__ = [
    'ConformanceMismatch',
    'GadgetInstance',
    'apex_names',
    'check_conformance',
    'copy_spec',
    'enc_spec',
    'encoder_pieces',
    'encoder_terminals',
    'f1_spec',
    'f_copy',
    'f_copy_plus',
    'f_enc',
    'f_enc_plus',
    'f_enc_plus_trace',
    'fr_spec',
    'fs_spec',
    'oracle_for',
    'piece_f1',
    'piece_fr',
    'piece_fs',
]
