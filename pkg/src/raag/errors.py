class ValidationError(ValueError):
    """Malformed input: bad alphabet, unknown letter, broken grammar."""


class ContractError(ValueError):
    """An operation was called outside its documented precondition."""


class ResourceError(RuntimeError):
    """The reference backend refused to materialize a word beyond its guard."""
