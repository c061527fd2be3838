import logging

from tempcause.config import get_settings

_ROOT = "tempcause"
_configured = False


def _configure():
    global _configured
    root = logging.getLogger(_ROOT)
    if not root.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(
            logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s")
        )
        root.addHandler(handler)
    root.setLevel(get_settings().log_level)
    _configured = True


def logger(module=None):
    """
    Get a named logger under the ``tempcause`` namespace.

    Args:
        module (str, optional): Sub-logger name, e.g. ``"synthesis"``.

    Returns:
        logging.Logger
    """
    if not _configured:
        _configure()
    return logging.getLogger(f"{_ROOT}.{module}" if module else _ROOT)


def set_level(level):
    logging.getLogger(_ROOT).setLevel(level)
