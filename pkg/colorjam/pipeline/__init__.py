from .audit import (
    audit_minor_freeness,
    verify_direct_minor,
    verify_realizes,
    verify_rooted_freeness,
)
from .construction import (
    AssembledInstance,
    InstanceSpec,
    assemble,
    build_g1,
    build_g2,
    compute_cf,
    compute_cprime,
    instance_from_data,
    read_instance,
    read_spec,
    realization_problem,
    serialize_instance,
    serialize_spec,
    spec_from_data,
)
from .report import Check, Report, dump_reports

__all__ = [
    'AssembledInstance',
    'Check',
    'InstanceSpec',
    'Report',
    'assemble',
    'audit_minor_freeness',
    'build_g1',
    'build_g2',
    'compute_cf',
    'compute_cprime',
    'dump_reports',
    'instance_from_data',
    'read_instance',
    'read_spec',
    'realization_problem',
    'serialize_instance',
    'serialize_spec',
    'spec_from_data',
    'verify_direct_minor',
    'verify_realizes',
    'verify_rooted_freeness',
]
