"""jsonargparse setup for the workbench CLI."""

from fractions import Fraction

from jsonargparse.typing import register_type

_initialized = False


def init_jsonargparse() -> None:
    """Register the custom types used in workflow signatures."""
    global _initialized
    if _initialized:
        return
    register_type(Fraction, serializer=str, deserializer=Fraction)
    _initialized = True
