import importlib
from functools import lru_cache


@lru_cache(maxsize=None)
def get_attr(method_string: str):
    """Resolve a dotted path such as ``tempcause.synthesis.pipelines.synthesize``."""
    module_name, _, attr = method_string.rpartition(".")
    return getattr(importlib.import_module(module_name), attr)
