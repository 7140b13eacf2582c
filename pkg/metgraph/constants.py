import math

from .config import DEFAULT_OUTPUT_SETTINGS

DELIMITER = "=" * 40
TITLE_DELIM = "=" * 5

NAME_PATTERN = r"[A-Za-z0-9_]+"
MAX_POLY_DEGREE = 4


def title_block(title: str) -> str:
    """
    Format a title surrounded by title delimiters.

    Parameters
    ----------
    title : str
        The title text

    Returns
    -------
    str
        Title formatted as ``===== Title =====``
    """
    return f"{TITLE_DELIM} {title} {TITLE_DELIM}"


def format_number(
    value: float,
    digits: int = DEFAULT_OUTPUT_SETTINGS.significant_digits,
) -> str:
    """
    Format a float with a fixed number of significant digits.

    Values that round to zero print as ``0`` (never ``-0``) and infinities as
    ``inf``, so repeated runs produce byte-identical text.

    Parameters
    ----------
    value : float
        Number to format
    digits : int, optional
        Significant digits. Default is 12.

    Returns
    -------
    str

    Examples
    --------
    >>> format_number(0.49999999999999994)
    '0.5'
    >>> format_number(-1e-17)
    '0'
    """
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    text = f"{value:.{digits}g}"
    if float(text) == 0.0 or abs(value) < 10.0 ** (-digits):
        return "0"
    return text


def verdict(passed: bool) -> str:
    """Return ``PASS`` or ``FAIL``."""
    return "PASS" if passed else "FAIL"
