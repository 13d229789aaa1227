"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the CLI reports
alongside the message.
"""


class JMobiusError(Exception):
    code = "error"


class CycleError(JMobiusError, ValueError):
    code = "cycle"


class OrderError(JMobiusError, ValueError):
    code = "order"


class RankError(JMobiusError, ValueError):
    code = "rank"


class NotALatticeError(JMobiusError, ValueError):
    code = "not-a-lattice"


class NoBoundsError(JMobiusError, ValueError):
    code = "no-bounds"


class PosetMismatchError(JMobiusError, ValueError):
    code = "poset-mismatch"


class InvalidCrossCutError(JMobiusError, ValueError):
    code = "invalid-crosscut"


class BadElementError(JMobiusError, ValueError):
    code = "bad-element"


class HypothesisError(JMobiusError, ValueError):
    """A theorem's structural hypothesis does not hold for the input."""
    code = "hypothesis"


class ExchangeAxiomError(JMobiusError, ValueError):
    code = "exchange-axiom"


class ArityError(JMobiusError, ValueError):
    code = "arity"


class SizeBoundError(JMobiusError, ValueError):
    code = "size-bound"


class FixtureError(JMobiusError, ValueError):
    code = "fixture"
