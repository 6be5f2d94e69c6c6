""" Non-HDF5 utility functions: exact numbers and name filtering """
import math as _math
from fractions import Fraction as _Fraction
from numbers import Rational as _Rational

from .config import DefaultConfig

__all__ = ['as_fraction', 'fraction_str', 'decimal_str', 'parse_fraction',
           'common_denominator', 'filterlist']


def as_fraction(value):
    """
    Convert an exact number to a Fraction.

    Parameters
    ----------
    value : int, Fraction, str
        Integers, rationals and strings such as '3/4' are accepted. Floats are
        rejected since weights must stay exact.

    Returns
    -------
    Fraction
    """
    if isinstance(value, bool):
        raise TypeError('bool is not a weight')
    if isinstance(value, _Fraction):
        return value
    if isinstance(value, _Rational):
        return _Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_fraction(value)
    err_str1 = 'Weights must be exact (int, Fraction or str); '
    raise TypeError(err_str1 + 'got {}'.format(type(value)))


def parse_fraction(text):
    """ Parse 'n' or 'n/d' into a Fraction """
    text = text.strip()
    if not text:
        raise ValueError('empty number')
    return _Fraction(text)


def fraction_str(value):
    """ 'n' for integers, 'n/d' otherwise """
    value = as_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return '{}/{}'.format(value.numerator, value.denominator)


def decimal_str(value, digits=None):
    """
    Fixed-point decimal text of an exact number, or of a float.

    Parameters
    ----------
    value : Fraction, int or float

    digits : int
        Digits after the decimal point. Default from DefaultConfig.
    """
    if digits is None:
        digits = DefaultConfig().decimal_digits
    return '{:.{}f}'.format(float(value), digits)


def common_denominator(values):
    """ Least common multiple of the denominators of values """
    den = 1
    for val in values:
        val = as_fraction(val)
        den = den * val.denominator // _math.gcd(den, val.denominator)
    return den


def filterlist(in_list, filters, keep_filtered_items=True, exclusive=True):
    """
    Parameters
    ----------
    in_list : list
        List of names (e.g. catalog entries) to filter

    filters : str, list, tuple
        Find filters (or entries of filters) in in_list

    keep_filtered_items : bool
        Returns entries from in_list that DO have filters (INCLUDE filter).
        If False, EXCLUDE filter

    exclusive : bool
        Filter is exclusive, i.e. includes/excludes in_list entries that
        have ALL filters. Otherwise any entry with A filter is
        included/excluded.

    Returns
    -------
        list : filtered list, order of in_list preserved
    """
    if isinstance(filters, (tuple, list)):
        filter_list = list(filters)
    elif isinstance(filters, str):
        filter_list = [filters]
    else:
        raise TypeError('filters must be of type str, tuple, or list')

    def hit(entry, filt):
        return (filt in entry) == keep_filtered_items

    if exclusive:
        return [entry for entry in in_list
                if all(hit(entry, filt) for filt in filter_list)]
    return [entry for entry in in_list
            if any(hit(entry, filt) for filt in filter_list)]
