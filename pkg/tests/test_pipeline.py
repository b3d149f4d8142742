from itertools import combinations, product
from pathlib import Path

import pytest

from colorjam import exception as exc
from colorjam.coloring import (
    ColoringFamily,
    PartialColoring,
    all_colorings,
    empty_family,
    enumerate_closed_families,
    extends,
    family_from_predicate,
    read_family,
)
from colorjam.graph import build_graph, replay, replay_difference
from colorjam.graph.document import parse_text
from colorjam.graph.trace import BasePlanePiece, ConstructionTrace
from colorjam.pipeline import (
    AssembledInstance,
    InstanceSpec,
    assemble,
    audit_minor_freeness,
    build_g1,
    build_g2,
    compute_cf,
    compute_cprime,
    instance_from_data,
    read_spec,
    realization_problem,
    serialize_instance,
    serialize_spec,
    spec_from_data,
    verify_direct_minor,
    verify_realizes,
    verify_rooted_freeness,
)
from colorjam.pipeline.construction import obtain_realizer, x_ids
from colorjam.planar import boundary
from colorjam.realizer import (
    RealizationProblem,
    RealizerCertificate,
    RealizerLimits,
    cache,
    load_realizer,
    verify_realizer,
)

FAST = RealizerLimits(max_internal=2, budget_secs=60)
EXAMPLES = Path(__file__).parent.parent / 'example'
REALIZERS = EXAMPLES / 'realizers'


def spec_of(m: int, k: int, predicate=None) -> InstanceSpec:
    if predicate is None:
        family = all_colorings(x_ids(m), k)
    else:
        family = family_from_predicate(x_ids(m), k, predicate)
    return InstanceSpec(m=m, k=k, family=family)


def assemble_or_skip(spec: InstanceSpec, **kwargs) -> AssembledInstance:
    try:
        return assemble(spec, limits=FAST, **kwargs)
    except exc.RealizerUnavailableException as e:
        pytest.skip(str(e))


def test_compute_cf():
    assert compute_cf(PartialColoring.of(4, x1=2), 1, 4).members == ((2, 2),)
    high = compute_cf(PartialColoring.of(4, x1=4), 1, 4)
    assert len(high) == 6
    assert all(a != b for a, b in high.members)
    assert len(compute_cf(PartialColoring.of(4, x1=1, x2=4), 2, 4)) == 6
    # s = 4 of five colors splits the chain after z_i3
    five = compute_cf(PartialColoring.of(5, x1=4), 1, 5)
    assert all(a != b == c for a, b, c in five.members)
    five = compute_cf(PartialColoring.of(5, x1=5), 1, 5)
    assert all(a == b != c for a, b, c in five.members)


def test_compute_cf_errors():
    with pytest.raises(exc.PipelineParameterException):
        compute_cf(PartialColoring.of(3, x1=1), 1, 3)
    with pytest.raises(exc.PipelineParameterException):
        compute_cf(PartialColoring.of(4, x1=1), 2, 4)


def test_compute_cprime():
    assert len(compute_cprime(spec_of(2, 4))) == 81
    assert len(compute_cprime(spec_of(1, 4))) == 9
    nothing = InstanceSpec(m=2, k=4, family=empty_family(x_ids(2), 4))
    assert len(compute_cprime(nothing)) == 0
    equal = compute_cprime(spec_of(2, 4, lambda t: t[0] == t[1]))
    # one color on all of Z, or a split in both chains
    assert len(equal) == 3 + 36


def test_instance_spec_checks():
    with pytest.raises(exc.FamilyNotClosedException):
        InstanceSpec(
            m=1, k=4, family=ColoringFamily(domain=('x1',), k=4, members=((1,),))
        )
    with pytest.raises(exc.PipelineParameterException):
        InstanceSpec(m=2, k=4, family=all_colorings(['x1'], 4))
    with pytest.raises(exc.PipelineParameterException):
        InstanceSpec(m=1, k=4, family=all_colorings(['x1'], 5))


def test_spec_documents():
    spec = spec_of(2, 4, lambda t: t[0] == t[1])
    assert spec_from_data(parse_text(serialize_spec(spec))) == spec
    with pytest.raises(exc.FamilyNotClosedException):
        spec_from_data(
            {'m': 1, 'k': 4, 'family': {'domain': ['x1'], 'k': 4, 'members': [[1]]}}
        )
    with pytest.raises(exc.DocumentSchemaException):
        spec_from_data(
            {'m': 2, 'k': 4, 'family': {'domain': ['x1'], 'k': 4, 'members': []}}
        )
    with pytest.raises(exc.DocumentSchemaException):
        spec_from_data({'m': 1, 'k': 4})


def test_build_g1_size():
    g1, joins = build_g1(1, 4)
    # x1, z13, z14, y4, x14, three copy internals and seven encoder internals
    assert len(g1) == 15
    assert g1.ids_with_role('X') == ['x1']
    assert [step.kind for step in joins.steps] == ['clique_sum', 'clique_sum']
    with pytest.raises(exc.PipelineParameterException):
        build_g1(1, 3)


def test_build_g1_namespace():
    g1, _ = build_g1(1, 4, namespace='left/')
    internal = g1.ids_with_role('internal')
    assert 'x1_4' in internal
    assert all(vid.startswith('left/') for vid in internal if vid != 'x1_4')
    assert 'z1_3' in g1 and 'y4' in g1


@pytest.mark.parametrize('k', [4, 5])
def test_build_g1_encodes_the_colors_of_x(k):
    g1, _ = build_g1(1, k)
    zs = [f'z1_{j}' for j in range(3, k + 1)]
    ys = {f'y{j}': j for j in range(4, k + 1)}
    for color in range(1, k + 1):
        wanted = compute_cf(PartialColoring.of(k, x1=color), 1, k)
        for chain in product(range(1, 4), repeat=k - 2):
            f = PartialColoring.of(k, x1=color, **dict(zip(zs, chain)), **ys)
            assert extends(g1, f) == (chain in wanted), (color, chain)


def test_build_g2():
    problem = RealizationProblem.of(all_colorings(['z1_3', 'z1_4'], 3))
    cert = verify_realizer(build_graph(['z1_3', 'z1_4']), problem)
    g2, trace = build_g2(cert, 5)
    # each of y4 and y5 sees both z, plus the edge y4-y5
    assert len(g2.edges) == 5
    assert g2.ids_with_role('Z') == ['z1_3', 'z1_4']
    assert replay(trace) == g2
    unverified = RealizerCertificate(
        graph=cert.graph, boundary=cert.boundary, family=cert.family
    )
    with pytest.raises(exc.UnverifiedCertificateException):
        build_g2(unverified, 4)


def test_obtain_realizer_uses_the_cache(tmp_path):
    problem = realization_problem(spec_of(1, 4))
    cert = obtain_realizer(problem, limits=FAST, use_cache=True, cache_dir=tmp_path)
    assert cert.internal_count == 0
    assert cache.lookup(problem, FAST, tmp_path) is not None


def test_obtain_realizer_skips_search_on_a_cache_hit(tmp_path, mocker):
    problem = realization_problem(spec_of(1, 4))
    obtain_realizer(problem, limits=FAST, use_cache=True, cache_dir=tmp_path)
    search = mocker.patch('colorjam.pipeline.construction.search_realizer')
    cert = obtain_realizer(problem, limits=FAST, use_cache=True, cache_dir=tmp_path)
    assert cert.verified
    search.assert_not_called()


def test_empty_family_needs_a_non_colorable_realizer():
    inst = assemble_or_skip(InstanceSpec(m=1, k=4, family=empty_family(['x1'], 4)))
    assert inst.certificate.internal_count == 2
    report = verify_realizes(inst)
    assert report.passed
    assert report.facts['extending'] == 0


def test_obtain_realizer_unavailable():
    problem = realization_problem(
        InstanceSpec(m=1, k=4, family=empty_family(['x1'], 4))
    )
    with pytest.raises(exc.RealizerUnavailableException):
        obtain_realizer(problem, limits=RealizerLimits(max_internal=1))


# members -> the shipped realizer of its z chain; the others are searched
BUNDLED = {4: 'm2k4-equal', 12: 'm2k4-unequal'}


@pytest.mark.parametrize(
    'family',
    list(enumerate_closed_families(x_ids(2), 4)),
    ids=lambda family: f'{len(family)}-members',
)
def test_every_closed_family_on_two_roots(family):
    spec = InstanceSpec(m=2, k=4, family=family)
    if len(family) in BUNDLED:
        path = REALIZERS / f'{BUNDLED[len(family)]}.yaml'
        inst = assemble(spec, realizer_path=path)
    else:
        inst = assemble(spec, limits=FAST)
    assert replay_difference(inst.trace, inst.graph) == (0, 0, '')
    assert inst.graph.ids_with_role('X') == ['x1', 'x2']
    report = verify_realizes(inst)
    assert report.passed, report.payload()
    assert report.facts['colorings'] == 16
    assert report.facts['extending'] == len(family)


@pytest.mark.parametrize('name', ['m2k4-equal', 'm2k4-unequal', 'm1k5-all'])
def test_bundled_realizers(name):
    spec = read_spec(EXAMPLES / f'{name}.yaml')
    problem = realization_problem(spec)
    cert = load_realizer(REALIZERS / f'{name}.yaml', problem)
    assert cert.verified
    assert cert.family == problem.family


def test_bundled_realizer_of_another_family_is_rejected():
    problem = realization_problem(read_spec(EXAMPLES / 'm2k4-unequal.yaml'))
    with pytest.raises(exc.RealizerVerificationException):
        load_realizer(REALIZERS / 'm2k4-equal.yaml', problem)


def test_k3_route():
    inst = assemble(spec_of(4, 3))
    assert inst.certificate.internal_count == 0
    assert len(inst.trace.steps) == 1
    assert verify_realizes(inst).passed
    audit = audit_minor_freeness(inst)
    assert audit.passed
    assert audit.facts == {'K_t-free': 5, 'rooted K_r-free': 4}
    # four roots, four needed: this one is searched
    rooted = verify_rooted_freeness(inst)
    assert rooted.passed and not rooted.checks[0].trivial


def tampered_k3() -> AssembledInstance:
    good = assemble(spec_of(4, 3))
    xs = x_ids(4)
    k4 = build_graph([(x, 'X') for x in xs], combinations(xs, 2), name='K4')
    trace = ConstructionTrace(
        steps=(BasePlanePiece(graph=k4, boundary=boundary(xs)),)
    )
    return AssembledInstance(
        spec=good.spec, graph=k4, trace=trace, certificate=good.certificate
    )


def test_tampered_instance_fails():
    inst = tampered_k3()
    realizes = verify_realizes(inst)
    assert realizes.verdict == 'FAIL'
    assert len(realizes.counterexamples) == 81
    assert realizes.counterexamples[0]['extends'] is False
    assert audit_minor_freeness(inst).verdict == 'FAIL'
    rooted = verify_rooted_freeness(inst)
    assert rooted.verdict == 'FAIL' and rooted.counterexamples


def test_replay_mismatch_is_an_error():
    good = assemble(spec_of(4, 3))
    inst = AssembledInstance(
        spec=good.spec,
        graph=tampered_k3().graph,
        trace=good.trace,
        certificate=good.certificate,
    )
    with pytest.raises(exc.ReplayMismatchException):
        audit_minor_freeness(inst)


def test_rooted_check_is_trivial_with_few_roots():
    inst = assemble_or_skip(spec_of(1, 4))
    report = verify_rooted_freeness(inst)
    assert report.passed
    assert report.checks[0].trivial


def test_instance_document_round_trip():
    inst = assemble_or_skip(spec_of(1, 4))
    again = instance_from_data(parse_text(serialize_instance(inst)))
    assert again.graph == inst.graph
    assert again.spec == inst.spec
    assert again.certificate.verified
    assert replay(again.trace) == replay(inst.trace)


@pytest.mark.slow
def test_audit_certifies_bounds():
    inst = assemble_or_skip(spec_of(2, 4))
    report = audit_minor_freeness(inst, budget_secs=300)
    assert report.passed, report.payload()
    assert report.facts == {'K_t-free': 6, 'rooted K_r-free': 5}


def test_audit_certifies_bounds_for_five_colors():
    spec = read_spec(EXAMPLES / 'm1k5-all.yaml')
    inst = assemble(spec, realizer_path=REALIZERS / 'm1k5-all.yaml')
    assert inst.certificate.internal_count == 4
    assert replay_difference(inst.trace, inst.graph) == (0, 0, '')
    realizes = verify_realizes(inst)
    assert realizes.passed, realizes.payload()
    assert realizes.facts['extending'] == 5
    report = audit_minor_freeness(inst, budget_secs=300)
    assert report.passed, report.payload()
    assert report.facts == {'K_t-free': 7, 'rooted K_r-free': 6}
    # plane pieces of the encoders count as K5-free, not as K7-free
    assert any(c.detail == 'planar' for c in report.checks)


@pytest.mark.slow
def test_audit_rejects_a_bad_join():
    inst = assemble_or_skip(spec_of(1, 4))
    steps = list(inst.trace.steps)
    n, join = next((n, s) for n, s in enumerate(steps) if s.kind == 'clique_sum')
    steps[n] = join.model_copy(update={'shared': (join.shared[0],)})
    bad = AssembledInstance(
        spec=inst.spec,
        graph=inst.graph,
        trace=ConstructionTrace(steps=tuple(steps)),
        certificate=inst.certificate,
    )
    report = audit_minor_freeness(bad, budget_secs=300)
    assert report.verdict == 'FAIL'
    assert any('clique' in c.name and c.verdict == 'FAIL' for c in report.checks)


@pytest.mark.slow
def test_direct_minor_search():
    inst = assemble_or_skip(spec_of(1, 4))
    assert verify_direct_minor(inst, budget_secs=600).passed


@pytest.mark.parametrize(
    'name',
    ['m2k4-all', 'm2k4-none', 'm2k4-equal', 'm2k4-unequal', 'm1k5-all', 'm3k3-rainbow'],
)
def test_example_specs_load(name):
    spec = read_spec(EXAMPLES / f'{name}.yaml')
    assert spec.family.domain == tuple(x_ids(spec.m))


def test_rainbow_example_is_a_triangle():
    inst = assemble(read_spec(EXAMPLES / 'm3k3-rainbow.yaml'))
    assert len(inst.graph.edges) == 3
    assert verify_realizes(inst).passed


def test_open_example_family():
    with pytest.raises(exc.FamilyNotClosedException):
        InstanceSpec(m=2, k=4, family=read_family(EXAMPLES / 'open-family.yaml'))
