"""Exception hierarchy shared by every module.

Each class carries a ``kind`` string; the CLI reports it verbatim as
``error.kind`` and maps cap-type failures to exit code 3.
"""


class AswlabError(Exception):
    kind = "error"


class InputError(AswlabError, ValueError):
    kind = "input_error"


class ParseError(InputError):
    kind = "parse_error"


class DivisionByZero(AswlabError, ZeroDivisionError):
    kind = "division_by_zero"


class FieldMismatch(InputError):
    kind = "field_mismatch"


class RingMismatch(InputError):
    kind = "ring_mismatch"


class CompositeP(InputError):
    kind = "composite_p"


class NotSquarefreeSplit(InputError):
    kind = "not_squarefree_split"


class LengthMismatch(InputError):
    kind = "length_mismatch"


class NotInWindow(AswlabError):
    kind = "not_in_window"


class CapExceeded(AswlabError):
    kind = "cap_exceeded"


class OrderCapExceeded(CapExceeded):
    kind = "order_cap_exceeded"


class NotSubgroup(InputError):
    kind = "not_subgroup"


class NotNormal(InputError):
    kind = "not_normal"


class ActionNotHomomorphic(InputError):
    kind = "action_not_homomorphic"


class NotSurjectiveOnGp(InputError):
    kind = "not_surjective_on_gp"


class NotMinimalNormal(InputError):
    kind = "not_minimal_normal"


class GroupMismatch(InputError):
    kind = "group_mismatch"


class NonIntegralGenus(InputError):
    kind = "non_integral_genus"


class WildRamification(InputError):
    kind = "wild_ramification"
