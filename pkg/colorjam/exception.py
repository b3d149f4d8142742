from collections.abc import Iterable


class ColorJamException(Exception):
    """Base exception for ColorJam."""

    pass


class GraphException(ColorJamException):
    """Exception for graph construction and composition."""

    pass


class DuplicateIdException(GraphException):
    """Exception for when a vertex id is declared twice."""

    def __init__(self, *, vertex_id: str):
        self.vertex_id = vertex_id
        super().__init__(f'Vertex id "{vertex_id}" is declared more than once.')


class UnknownEndpointException(GraphException):
    """Exception for when an edge endpoint is not a declared vertex."""

    def __init__(self, *, edge: tuple[str, str], vertex_id: str):
        self.edge = edge
        self.vertex_id = vertex_id
        super().__init__(
            f'Edge {edge[0]}-{edge[1]} uses undeclared vertex "{vertex_id}".'
        )


class LoopEdgeException(GraphException):
    """Exception for when an edge joins a vertex to itself."""

    def __init__(self, *, vertex_id: str):
        self.vertex_id = vertex_id
        super().__init__(f'Loop edge on vertex "{vertex_id}" is not allowed.')


class RoleConflictException(GraphException):
    """Exception for when glued graphs disagree on the role of a shared vertex."""

    def __init__(self, *, vertex_id: str, left: str, right: str):
        self.vertex_id = vertex_id
        super().__init__(
            f'Vertex "{vertex_id}" has role {left} in one graph and {right} '
            'in the other.'
        )


class IdCollisionException(GraphException):
    """Exception for when a new vertex id is already taken."""

    def __init__(self, *, vertex_id: str):
        self.vertex_id = vertex_id
        super().__init__(f'Vertex id "{vertex_id}" already exists in the graph.')


class UnknownIdException(GraphException):
    """Exception for when an id does not name a vertex of the graph."""

    def __init__(self, *, vertex_ids: Iterable[str], context: str = 'graph'):
        self.vertex_ids = sorted(vertex_ids)
        super().__init__(
            f'Unknown vertex id(s) in {context}: {", ".join(self.vertex_ids)}.'
        )


class UnknownTargetException(UnknownIdException):
    """Exception for when a universal-vertex target is not in the graph."""

    def __init__(self, *, vertex_ids: Iterable[str]):
        super().__init__(vertex_ids=vertex_ids, context='universal targets')


class DocumentException(ColorJamException):
    """Exception for reading ColorJam documents."""

    pass


class DocumentParseException(DocumentException):
    """Exception for documents that are not well-formed YAML or JSON."""

    def __init__(self, *, source: str, message: str, line: int | None = None):
        self.source = source
        self.line = line
        where = f'{source}:{line}' if line is not None else source
        super().__init__(f'Cannot parse {where}: {message}')


class DocumentSchemaException(DocumentException):
    """Exception for documents that parse but violate the schema."""

    def __init__(self, *, source: str, problems: list[str]):
        self.source = source
        self.problems = problems
        super().__init__(
            f'Schema violation in {source}:\n' + '\n'.join(f'  {p}' for p in problems)
        )


class ReplayMismatchException(GraphException):
    """Exception for a construction trace that does not replay to its graph."""

    def __init__(self, *, missing: int, extra: int, detail: str = ''):
        self.missing = missing
        self.extra = extra
        super().__init__(
            f'Trace replay differs from the graph ({missing} missing, {extra} extra '
            f'items){": " + detail if detail else ""}.'
        )


class ColoringException(ColorJamException):
    """Exception for colorings and coloring families."""

    pass


class UnknownVertexException(ColoringException):
    """Exception for a colored or boundary vertex that is not in the graph."""

    def __init__(self, *, vertex_ids: Iterable[str]):
        self.vertex_ids = sorted(vertex_ids)
        super().__init__(f'Unknown vertex id(s): {", ".join(self.vertex_ids)}.')


class ColorOutOfRangeException(ColoringException):
    """Exception for a color outside 1..k."""

    def __init__(self, *, vertex_id: str, color: int, k: int):
        self.vertex_id = vertex_id
        self.color = color
        self.k = k
        super().__init__(f'Color {color} of "{vertex_id}" is outside 1..{k}.')


class DuplicateBoundaryIdException(ColoringException):
    """Exception for a boundary that lists a vertex twice."""

    def __init__(self, *, vertex_id: str):
        self.vertex_id = vertex_id
        super().__init__(f'Boundary lists "{vertex_id}" more than once.')


class FamilyNotClosedException(ColoringException):
    """Exception for a family that is not closed under color permutations."""

    def __init__(self, *, missing: tuple[int, ...] | None = None):
        self.missing = missing
        hint = f' (e.g. {missing} is missing)' if missing is not None else ''
        super().__init__(
            f'The coloring family is not closed under permutations of colors{hint}; '
            'apply close_under_permutations (`colorjam close`) first.'
        )


class GadgetException(ColorJamException):
    """Exception for gadget construction and gadget oracles."""

    pass


class GadgetParameterException(GadgetException):
    """Exception for gadget parameters outside their admissible range."""

    def __init__(self, *, message: str):
        super().__init__(f'Bad gadget parameter: {message}')


class NotRainbowException(GadgetException):
    """Exception for an encoder query whose apex colors are not f(y_i)=i."""

    def __init__(self, *, vertex_id: str, color: int | None, expected: int):
        self.vertex_id = vertex_id
        super().__init__(
            f'Assignment is not rainbow: {vertex_id} has color {color}, '
            f'expected {expected}.'
        )


class MissingTerminalException(GadgetException):
    """Exception for an oracle query that does not color every terminal."""

    def __init__(self, *, terminal: str):
        self.terminal = terminal
        super().__init__(f'Terminal "{terminal}" is not colored.')


class MinorException(ColorJamException):
    """Exception for minor search."""

    pass


class MinorSearchTimeoutException(MinorException):
    """Exception for a minor search that exceeded its time budget."""

    def __init__(self, *, budget_secs: float, nodes: int):
        self.budget_secs = budget_secs
        self.nodes = nodes
        super().__init__(
            f'Minor search exceeded its budget of {budget_secs:g}s after {nodes} '
            'nodes; no answer was obtained.'
        )


class RealizerException(ColorJamException):
    """Exception for planar 3-coloring realizers."""

    pass


class RealizerSearchTimeoutException(RealizerException):
    """Exception for a realizer search that exceeded its time budget."""

    def __init__(self, *, budget_secs: float, candidates: int):
        self.budget_secs = budget_secs
        self.candidates = candidates
        super().__init__(
            f'Realizer search exceeded its budget of {budget_secs:g}s after '
            f'{candidates} candidates.'
        )


class RealizerVerificationException(RealizerException):
    """Exception for a realizer graph that fails verification."""

    def __init__(self, *, reason: str):
        self.reason = reason
        super().__init__(f'Realizer failed verification: {reason}')


class PipelineException(ColorJamException):
    """Exception for the realization pipeline."""

    pass


class PipelineParameterException(PipelineException):
    """Exception for instance parameters outside their admissible range."""

    def __init__(self, *, message: str):
        super().__init__(f'Bad instance parameter: {message}')


class UnverifiedCertificateException(PipelineException):
    """Exception for a realizer certificate that was never verified."""

    def __init__(self):
        super().__init__('The realizer certificate has not been verified.')


class RealizerUnavailableException(PipelineException):
    """Exception for when no realizer could be searched or loaded."""

    def __init__(self, *, reason: str):
        self.reason = reason
        super().__init__(f'No realizer available for G\'_2: {reason}')
