""" Test non-HDF-related utilities """
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lazytt.nonh5utils import (filterlist, as_fraction, parse_fraction, fraction_str,
                               decimal_str, common_denominator)

def test_filter_list():
    """ Test filtering of lists """
    list_to_filter = ['s04-twist', 's05-a', 's12-a', 's20-a', 's05-b']

    # Keep, filter=str, exclusive
    filters = 's05'
    out_list = filterlist(list_to_filter, filters, keep_filtered_items=True,
                          exclusive=True)
    assert out_list == ['s05-a', 's05-b']

    # Exclude, filter=str, exclusive
    filters = '-a'
    out_list = filterlist(list_to_filter, filters, keep_filtered_items=False,
                          exclusive=True)
    assert out_list == ['s04-twist', 's05-b']

    # Keep, filter=list, exclusive
    filters = ['s05', 'a']
    out_list = filterlist(list_to_filter, filters, keep_filtered_items=True,
                          exclusive=True)
    assert out_list == ['s05-a']

    # Keep, filter=list, NOT-exclusive
    filters = ['s05', 'twist']
    out_list = filterlist(list_to_filter, filters, keep_filtered_items=True,
                          exclusive=False)
    assert out_list == ['s04-twist', 's05-a', 's05-b']

    # Exclude, filter=tuple, NON-exclusive
    filters = ('s05', '-a')
    out_list = filterlist(list_to_filter, filters, keep_filtered_items=False,
                          exclusive=False)
    assert out_list == ['s04-twist', 's12-a', 's20-a', 's05-b']

    with pytest.raises(TypeError):
        filterlist(list_to_filter, 5)

def test_as_fraction():
    """ Exact conversions only """
    assert as_fraction(3) == Fraction(3)
    assert as_fraction('3/4') == Fraction(3, 4)
    assert as_fraction(Fraction(1, 2)) is not None

    with pytest.raises(TypeError):
        as_fraction(0.5)

    with pytest.raises(TypeError):
        as_fraction(True)

    with pytest.raises(ValueError):
        parse_fraction('  ')

def test_number_strings():
    """ Fraction and decimal text """
    assert fraction_str(Fraction(6, 3)) == '2'
    assert fraction_str('4/6') == '2/3'
    assert decimal_str(Fraction(1, 3), digits=3) == '0.333'
    assert decimal_str(2 ** 0.5, digits=2) == '1.41'
    assert len(decimal_str(Fraction(1, 7)).split('.')[1]) == 6

def test_common_denominator():
    """ LCM of denominators """
    assert common_denominator([Fraction(1, 4), Fraction(5, 6), 2]) == 12
    assert common_denominator([]) == 1

@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(), min_size=1, max_size=8))
def test_common_denominator_clears(values):
    """ Scaling by the common denominator leaves integers """
    den = common_denominator(values)
    assert all((v * den).denominator == 1 for v in values)
    assert all(parse_fraction(fraction_str(v)) == v for v in values)
